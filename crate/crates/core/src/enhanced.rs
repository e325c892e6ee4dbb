//! Z/4-enhanced spaces `(V, ·, e)` and the Brown invariant.
//!
//! The enhancement satisfies `e(x + y) = e(x) + e(y) + 2(x·y)` mod 4, which
//! forces `e(x) ≡ x·x` mod 2. The Brown invariant lives in Z/8 and is
//! computed two ways: from the signs of `(e₀ − e₂, e₁ − e₃)` via the compass
//! table, and from the argument of the Gauss sum `Σ i^{e(x)}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::f2::{kernel_basis, F2Matrix, F2Vector};
use crate::quad::{check_cap, ArfValue, QuadraticSpace, DEFAULT_ENUM_CAP};

/// The Brown invariant: a residue mod 8, or `Infinity` for an improper space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BrownValue {
    Finite(u8),
    Infinity,
}

impl BrownValue {
    /// Reduces `k` modulo 8.
    pub fn new(k: i64) -> Self {
        BrownValue::Finite(k.rem_euclid(8) as u8)
    }

    pub fn value(self) -> Option<u8> {
        match self {
            BrownValue::Finite(k) => Some(k),
            BrownValue::Infinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, BrownValue::Finite(_))
    }

    /// `4·Arf`, with `Infinity` preserved.
    pub fn from_arf(arf: ArfValue) -> Self {
        match arf.as_bit() {
            Some(bit) => BrownValue::Finite(4 * bit),
            None => BrownValue::Infinity,
        }
    }
}

impl std::ops::Add for BrownValue {
    type Output = BrownValue;

    fn add(self, rhs: BrownValue) -> BrownValue {
        match (self, rhs) {
            (BrownValue::Finite(a), BrownValue::Finite(b)) => BrownValue::Finite((a + b) % 8),
            _ => BrownValue::Infinity,
        }
    }
}

impl fmt::Display for BrownValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrownValue::Finite(k) => write!(f, "{k}"),
            BrownValue::Infinity => write!(f, "∞"),
        }
    }
}

/// Occurrence counts `[e₀, e₁, e₂, e₃]` of each value of `e`.
pub type ValueCounts = [u64; 4];

/// An exact Gaussian integer `re + im·i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussSum {
    pub re: i64,
    pub im: i64,
}

impl GaussSum {
    pub fn norm_sq(self) -> i128 {
        i128::from(self.re) * i128::from(self.re) + i128::from(self.im) * i128::from(self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EnhancedSpace {
    gram: F2Matrix,
    evals: Vec<u8>,
}

impl fmt::Debug for EnhancedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnhancedSpace")
            .field("gram", &self.gram)
            .field("evals", &self.evals)
            .finish()
    }
}

impl EnhancedSpace {
    /// Checks symmetry, `evals ⊂ Z/4`, and `gram_ii ≡ evals_i` mod 2.
    pub fn new(gram: F2Matrix, evals: Vec<u8>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape(format!(
                "gram matrix is {}x{}, expected square",
                gram.nrows(),
                gram.ncols()
            )));
        }
        if evals.len() != gram.nrows() {
            return Err(Error::DimensionMismatch {
                expected: gram.nrows(),
                found: evals.len(),
            });
        }
        if let Some((i, j)) = gram.asymmetry() {
            return Err(Error::NotSymmetric { i, j });
        }
        if let Some((index, &v)) = evals.iter().enumerate().find(|(_, &v)| v > 3) {
            return Err(Error::OutOfRange {
                what: "Z/4 enhancement",
                index,
                value: v.to_string(),
            });
        }
        if let Some(index) = (0..evals.len()).find(|&i| gram.get(i, i) != (evals[i] & 1 == 1)) {
            return Err(Error::DiagonalParity { index });
        }
        Ok(Self { gram, evals })
    }

    pub fn from_u8s(gram: &[Vec<u8>], evals: &[u8]) -> Result<Self> {
        Self::new(F2Matrix::from_rows(gram)?, evals.to_vec())
    }

    pub fn empty() -> Self {
        Self {
            gram: F2Matrix::zeros(0, 0),
            evals: Vec::new(),
        }
    }

    /// The one-dimensional space spanned by a Möbius band core with
    /// framing `e(a) = value` (odd).
    pub fn mobius(value: u8) -> Result<Self> {
        Self::from_u8s(&[vec![1]], &[value])
    }

    /// The enhanced space `(V, ·, 2q)`.
    pub fn from_quadratic(s: &QuadraticSpace) -> Self {
        Self {
            gram: s.gram().clone(),
            evals: s.qvals().bits().map(|b| 2 * u8::from(b)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.evals.len()
    }

    pub fn gram(&self) -> &F2Matrix {
        &self.gram
    }

    pub fn evals(&self) -> &[u8] {
        &self.evals
    }

    /// `e(Σ x_i e_i) = Σ x_i e(e_i) + 2 Σ_{i<j} x_i x_j (e_i·e_j)` mod 4.
    pub fn evaluate_e(&self, x: &F2Vector) -> Result<u8> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        let support: Vec<usize> = x.support().collect();
        let mut value: u32 = support.iter().map(|&i| u32::from(self.evals[i])).sum();
        for (k, &i) in support.iter().enumerate() {
            for &j in &support[k + 1..] {
                value += 2 * u32::from(self.gram.get(i, j));
            }
        }
        Ok((value % 4) as u8)
    }

    pub fn radical(&self) -> Vec<F2Vector> {
        kernel_basis(&self.gram)
    }

    /// `e` vanishes on the radical. On `R` the cross term `2(r·r')` is zero, so
    /// `e|_R` is additive and checking generators and their pairwise sums
    /// suffices.
    pub fn is_proper(&self) -> bool {
        let radical = self.radical();
        let e = |v: &F2Vector| self.evaluate_e(v).expect("radical vector has space dimension");
        radical.iter().all(|r| e(r) == 0)
            && radical.iter().enumerate().all(|(k, r)| {
                radical[k + 1..].iter().all(|s| e(&r.add(s)) == 0)
            })
    }

    /// Histogram of `e` over all `2^dim` vectors.
    pub fn value_counts(&self, cap: usize) -> Result<ValueCounts> {
        let n = self.dim();
        check_cap(n, cap)?;
        let mut counts = [0u64; 4];
        self.walk(|e| counts[e as usize] += 1);
        Ok(counts)
    }

    /// `Σ_x i^{e(x)}`, summed vector by vector.
    pub fn gauss_sum(&self, cap: usize) -> Result<GaussSum> {
        check_cap(self.dim(), cap)?;
        let mut sum = GaussSum { re: 0, im: 0 };
        self.walk(|e| match e {
            0 => sum.re += 1,
            1 => sum.im += 1,
            2 => sum.re -= 1,
            _ => sum.im -= 1,
        });
        Ok(sum)
    }

    /// Visits `e(x)` for every `x` in Gray-code order.
    fn walk(&self, mut visit: impl FnMut(u8)) {
        let n = self.dim();
        let rows: Vec<u64> = self
            .gram
            .rows()
            .iter()
            .enumerate()
            .map(|(i, r)| r.to_mask() & !(1u64 << i))
            .collect();
        let mut x = 0u64;
        let mut value = 0u8;
        visit(0);
        for step in 1..(1u64 << n) {
            let i = step.trailing_zeros() as usize;
            let cross = ((rows[i] & x).count_ones() & 1) as u8;
            let bit = 1u64 << i;
            // Adding e_i contributes e(e_i) + 2(x·e_i); removing it
            // subtracts the same amount, and -2c ≡ 2c mod 4.
            let ev = self.evals[i];
            let delta = if x & bit == 0 { ev } else { (4 - ev) % 4 };
            value = (value + delta + 2 * cross) % 4;
            x ^= bit;
            visit(value);
        }
    }

    pub fn brown_compass(&self) -> Result<BrownValue> {
        self.brown_compass_capped(DEFAULT_ENUM_CAP)
    }

    pub fn brown_compass_capped(&self, cap: usize) -> Result<BrownValue> {
        check_cap(self.dim(), cap)?;
        if !self.is_proper() {
            return Ok(BrownValue::Infinity);
        }
        Ok(compass(self.value_counts(cap)?))
    }

    pub fn brown_gauss(&self) -> Result<BrownValue> {
        self.brown_gauss_capped(DEFAULT_ENUM_CAP)
    }

    pub fn brown_gauss_capped(&self, cap: usize) -> Result<BrownValue> {
        check_cap(self.dim(), cap)?;
        if !self.is_proper() {
            return Ok(BrownValue::Infinity);
        }
        gauss_argument(self.gauss_sum(cap)?)
    }

    pub fn direct_sum(&self, other: &EnhancedSpace) -> EnhancedSpace {
        EnhancedSpace {
            gram: F2Matrix::block_diag(&self.gram, &other.gram),
            evals: self.evals.iter().chain(&other.evals).copied().collect(),
        }
    }
}

/// Reads β off the quadrant of `(sign(e₀ − e₂), sign(e₁ − e₃))`.
pub fn compass(counts: ValueCounts) -> BrownValue {
    use std::cmp::Ordering::{Equal as Z, Greater as P, Less as N};
    let [e0, e1, e2, e3] = counts;
    let k = match (e0.cmp(&e2), e1.cmp(&e3)) {
        (P, Z) => 0,
        (P, P) => 1,
        (Z, P) => 2,
        (N, P) => 3,
        (N, Z) => 4,
        (N, N) => 5,
        (Z, N) => 6,
        (P, N) => 7,
        (Z, Z) => return BrownValue::Infinity,
    };
    BrownValue::Finite(k)
}

/// Unit directions `exp(iπk/4)` scaled to integer points.
const DIRECTIONS: [(i64, i64); 8] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];

/// The `k` with `S / |S| = exp(iπk/4)`, found by rotating `S` back by each
/// direction and testing for a positive real result.
pub fn gauss_argument(sum: GaussSum) -> Result<BrownValue> {
    if sum.is_zero() {
        return Ok(BrownValue::Infinity);
    }
    let GaussSum { re, im } = sum;
    if re != 0 && im != 0 && re.abs() != im.abs() {
        return Err(Error::Internal(format!(
            "Gauss sum {re}{im:+}i is not a multiple of an eighth root of unity"
        )));
    }
    for (k, &(c, d)) in DIRECTIONS.iter().enumerate() {
        // (re + im i)(c − d i)
        let real = re * c + im * d;
        let imag = im * c - re * d;
        if imag == 0 && real > 0 {
            return Ok(BrownValue::Finite(k as u8));
        }
    }
    unreachable!("every nonzero lattice point on an axis or diagonal has a direction")
}

pub fn from_quadratic(s: &QuadraticSpace) -> EnhancedSpace {
    EnhancedSpace::from_quadratic(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyperbolic(e: [u8; 2]) -> EnhancedSpace {
        EnhancedSpace::from_u8s(&[vec![0, 1], vec![1, 0]], &e).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let s = hyperbolic([2, 2]);
        assert_eq!(s.evaluate_e(&F2Vector::zeros(2)).unwrap(), 0);
        assert_eq!(s.evaluate_e(&F2Vector::from_u8s(&[1, 1])).unwrap(), 2);
        let m = EnhancedSpace::mobius(1).unwrap();
        assert_eq!(m.evaluate_e(&F2Vector::from_u8s(&[1])).unwrap(), 1);
    }

    #[test]
    fn properness_examples() {
        assert!(hyperbolic([0, 2]).is_proper());
        assert!(!EnhancedSpace::from_u8s(&[vec![0]], &[2]).unwrap().is_proper());
        assert!(EnhancedSpace::from_u8s(&[vec![0]], &[0]).unwrap().is_proper());
    }

    #[test]
    fn compass_table() {
        // e0 = e2 and e1 > e3
        assert_eq!(compass([3, 5, 3, 1]), BrownValue::Finite(2));
        assert_eq!(compass([2, 1, 2, 1]), BrownValue::Infinity);
        assert_eq!(EnhancedSpace::mobius(1).unwrap().brown_compass().unwrap(), BrownValue::Finite(1));
        assert_eq!(EnhancedSpace::mobius(1).unwrap().value_counts(24).unwrap(), [1, 1, 0, 0]);
        assert_eq!(EnhancedSpace::mobius(3).unwrap().value_counts(24).unwrap(), [1, 0, 0, 1]);
        assert_eq!(EnhancedSpace::mobius(3).unwrap().brown_compass().unwrap(), BrownValue::Finite(7));
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(EnhancedSpace::empty().gauss_sum(24).unwrap(), GaussSum { re: 1, im: 0 });
        assert_eq!(EnhancedSpace::empty().brown_gauss().unwrap(), BrownValue::Finite(0));
        let h = hyperbolic([2, 2]);
        assert_eq!(h.gauss_sum(24).unwrap(), GaussSum { re: -2, im: 0 });
        assert_eq!(h.brown_gauss().unwrap(), BrownValue::Finite(4));
        let bad = EnhancedSpace::from_u8s(&[vec![0]], &[2]).unwrap();
        assert!(bad.gauss_sum(24).unwrap().is_zero());
        assert_eq!(bad.brown_gauss().unwrap(), BrownValue::Infinity);
        assert_eq!(bad.brown_compass().unwrap(), BrownValue::Infinity);
    }

    #[test]
    fn gauss_argument_rejects_off_lattice_sums() {
        assert!(matches!(
            gauss_argument(GaussSum { re: 2, im: 1 }),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn from_quadratic_examples() {
        let b11 = EnhancedSpace::from_quadratic(&QuadraticSpace::hyperbolic(true, true));
        assert_eq!(b11.evals(), &[2, 2]);
        assert_eq!(b11.brown_gauss().unwrap(), BrownValue::Finite(4));
        let b00 = EnhancedSpace::from_quadratic(&QuadraticSpace::hyperbolic(false, false));
        assert_eq!(b00.brown_compass().unwrap(), BrownValue::Finite(0));
        let improper = EnhancedSpace::from_quadratic(&QuadraticSpace::line(true));
        assert!(!improper.is_proper());
    }

    #[test]
    fn direct_sum_examples() {
        let m = EnhancedSpace::mobius(1).unwrap();
        assert_eq!(m.direct_sum(&EnhancedSpace::empty()), m);
        assert_eq!(m.direct_sum(&m).brown_gauss().unwrap(), BrownValue::Finite(2));
        let eight = (0..8).fold(EnhancedSpace::empty(), |acc, _| acc.direct_sum(&m));
        assert_eq!(eight.brown_gauss().unwrap(), BrownValue::Finite(0));
        assert_eq!(eight.brown_compass().unwrap(), BrownValue::Finite(0));
    }

    #[test]
    fn constructor_checks() {
        assert_eq!(
            EnhancedSpace::from_u8s(&[vec![0]], &[1]),
            Err(Error::DiagonalParity { index: 0 })
        );
        assert!(matches!(
            EnhancedSpace::from_u8s(&[vec![0]], &[4]),
            Err(Error::OutOfRange { .. })
        ));
        assert_eq!(
            EnhancedSpace::from_u8s(&[vec![0, 1], vec![0, 0]], &[0, 0]),
            Err(Error::NotSymmetric { i: 0, j: 1 })
        );
    }

    #[test]
    fn brown_respects_cap() {
        let m = EnhancedSpace::mobius(1).unwrap();
        let big = (0..5).fold(EnhancedSpace::empty(), |acc, _| acc.direct_sum(&m));
        assert!(matches!(big.brown_gauss_capped(4), Err(Error::TooLarge { .. })));
        assert!(matches!(big.brown_compass_capped(4), Err(Error::TooLarge { .. })));
    }
}
