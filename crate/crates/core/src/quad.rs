//! Quadratic spaces `(V, ·, q)` over F2 whose bilinear form may be degenerate.
//!
//! A space is stored as its Gram matrix together with the values of `q` on
//! the standard basis; `q` extends to all of `V` through
//! `q(x + y) = q(x) + q(y) + x·y`.

use std::fmt;

use crate::error::{Error, Result};
use crate::f2::{kernel_basis, symplectic_basis, F2Matrix, F2Vector};

/// Default cap on the dimension of spaces whose vectors get enumerated.
pub const DEFAULT_ENUM_CAP: usize = 24;

/// Hard ceiling for any enumeration cap; enumeration uses 64-bit masks.
pub const MAX_ENUM_CAP: usize = 62;

/// The Arf invariant, with `Infinity` marking an improper space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArfValue {
    Zero,
    One,
    Infinity,
}

impl ArfValue {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            ArfValue::One
        } else {
            ArfValue::Zero
        }
    }

    /// `Some(0)` / `Some(1)`, or `None` for `Infinity`.
    pub fn as_bit(self) -> Option<u8> {
        match self {
            ArfValue::Zero => Some(0),
            ArfValue::One => Some(1),
            ArfValue::Infinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        self != ArfValue::Infinity
    }
}

impl std::ops::Add for ArfValue {
    type Output = ArfValue;

    fn add(self, rhs: ArfValue) -> ArfValue {
        match (self.as_bit(), rhs.as_bit()) {
            (Some(a), Some(b)) => ArfValue::from_bit((a ^ b) == 1),
            _ => ArfValue::Infinity,
        }
    }
}

impl fmt::Display for ArfValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArfValue::Zero => write!(f, "0"),
            ArfValue::One => write!(f, "1"),
            ArfValue::Infinity => write!(f, "∞"),
        }
    }
}

/// Isomorphism class of a quadratic space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadClass {
    pub dim: usize,
    pub rad_dim: usize,
    pub arf: ArfValue,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSpace {
    gram: F2Matrix,
    qvals: F2Vector,
}

impl fmt::Debug for QuadraticSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuadraticSpace")
            .field("gram", &self.gram)
            .field("qvals", &self.qvals)
            .finish()
    }
}

impl QuadraticSpace {
    /// Rejects non-square, non-symmetric, or nonzero-diagonal Gram matrices.
    pub fn new(gram: F2Matrix, qvals: F2Vector) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape(format!(
                "gram matrix is {}x{}, expected square",
                gram.nrows(),
                gram.ncols()
            )));
        }
        if qvals.len() != gram.nrows() {
            return Err(Error::DimensionMismatch {
                expected: gram.nrows(),
                found: qvals.len(),
            });
        }
        if let Some((i, j)) = gram.asymmetry() {
            return Err(Error::NotSymmetric { i, j });
        }
        if let Some(index) = gram.diagonal().leading_index() {
            return Err(Error::NotAlternating { index });
        }
        Ok(Self { gram, qvals })
    }

    /// Convenience constructor from `0/1` rows and values.
    pub fn from_u8s(gram: &[Vec<u8>], qvals: &[u8]) -> Result<Self> {
        Self::new(F2Matrix::from_rows(gram)?, F2Vector::from_u8s(qvals))
    }

    /// The 0-dimensional space.
    pub fn empty() -> Self {
        Self {
            gram: F2Matrix::zeros(0, 0),
            qvals: F2Vector::zeros(0),
        }
    }

    /// Two-dimensional hyperbolic plane with `q(a) = qa`, `q(b) = qb`.
    pub fn hyperbolic(qa: bool, qb: bool) -> Self {
        let mut gram = F2Matrix::zeros(2, 2);
        gram.set(0, 1, true);
        gram.set(1, 0, true);
        Self {
            gram,
            qvals: F2Vector::from_bits([qa, qb]),
        }
    }

    /// One-dimensional space with zero form.
    pub fn line(q: bool) -> Self {
        Self {
            gram: F2Matrix::zeros(1, 1),
            qvals: F2Vector::from_bits([q]),
        }
    }

    pub fn dim(&self) -> usize {
        self.qvals.len()
    }

    pub fn gram(&self) -> &F2Matrix {
        &self.gram
    }

    pub fn qvals(&self) -> &F2Vector {
        &self.qvals
    }

    /// `q(Σ x_i e_i) = Σ x_i q(e_i) + Σ_{i<j} x_i x_j (e_i·e_j)`.
    pub fn evaluate_q(&self, x: &F2Vector) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        let mut value = x.dot(&self.qvals);
        let support: Vec<usize> = x.support().collect();
        for (k, &i) in support.iter().enumerate() {
            for &j in &support[k + 1..] {
                value ^= self.gram.get(i, j);
            }
        }
        Ok(value)
    }

    /// Basis of the radical, the kernel of the Gram matrix.
    pub fn radical(&self) -> Vec<F2Vector> {
        kernel_basis(&self.gram)
    }

    /// `q` is linear on the radical, so vanishing on a basis suffices.
    pub fn is_proper(&self) -> bool {
        self.radical()
            .iter()
            .all(|r| !self.evaluate_q(r).expect("radical vector has space dimension"))
    }

    /// Arf invariant via a symplectic basis of `V/R`.
    ///
    /// The quotient is realised by the coordinate subspace on the pivot
    /// columns of the Gram matrix, which is a complement to the radical.
    pub fn arf_symplectic(&self) -> ArfValue {
        if !self.is_proper() {
            return ArfValue::Infinity;
        }
        let (_, pivots) = self.gram.rref();
        let reduced = self.gram.submatrix(&pivots);
        let pairs = symplectic_basis(&reduced)
            .expect("pivot complement of the radical is nondegenerate and alternating");
        let lift = |v: &F2Vector| {
            let mut x = F2Vector::zeros(self.dim());
            for k in v.support() {
                x.set(pivots[k], true);
            }
            x
        };
        let sum = pairs.iter().fold(false, |acc, (a, b)| {
            let qa = self.evaluate_q(&lift(a)).expect("lifted vector");
            let qb = self.evaluate_q(&lift(b)).expect("lifted vector");
            acc ^ (qa & qb)
        });
        ArfValue::from_bit(sum)
    }

    /// Counts `(|q⁻¹(0)|, |q⁻¹(1)|)` over all `2^dim` vectors.
    pub fn value_counts(&self, cap: usize) -> Result<(u64, u64)> {
        let n = self.dim();
        check_cap(n, cap)?;
        let rows: Vec<u64> = self.gram.rows().iter().map(F2Vector::to_mask).collect();
        let qmask = self.qvals.to_mask();
        // Gray-code walk: flipping coordinate i changes q by q(e_i) + x·e_i,
        // where x excludes i and the diagonal of the Gram matrix is zero.
        let mut x = 0u64;
        let mut value = false;
        let mut ones = 0u64;
        let total = 1u64 << n;
        for step in 1..total {
            let i = step.trailing_zeros() as usize;
            let cross = (rows[i] & x).count_ones() & 1 == 1;
            value ^= ((qmask >> i) & 1 == 1) ^ cross;
            x ^= 1 << i;
            ones += u64::from(value);
        }
        Ok((total - ones, ones))
    }

    /// Arf invariant by majority vote over `q`'s values.
    pub fn arf_democratic(&self) -> Result<ArfValue> {
        self.arf_democratic_capped(DEFAULT_ENUM_CAP)
    }

    pub fn arf_democratic_capped(&self, cap: usize) -> Result<ArfValue> {
        let (zeros, ones) = self.value_counts(cap)?;
        Ok(match zeros.cmp(&ones) {
            std::cmp::Ordering::Greater => ArfValue::Zero,
            std::cmp::Ordering::Less => ArfValue::One,
            std::cmp::Ordering::Equal => ArfValue::Infinity,
        })
    }

    /// Orthogonal direct sum with block-diagonal Gram matrix.
    pub fn direct_sum(&self, other: &QuadraticSpace) -> QuadraticSpace {
        QuadraticSpace {
            gram: F2Matrix::block_diag(&self.gram, &other.gram),
            qvals: self.qvals.concat(&other.qvals),
        }
    }

    pub fn classify(&self) -> QuadClass {
        QuadClass {
            dim: self.dim(),
            rad_dim: self.radical().len(),
            arf: self.arf_symplectic(),
        }
    }

    pub fn is_isomorphic(&self, other: &QuadraticSpace) -> bool {
        self.classify() == other.classify()
    }

    /// The space expressed in a new basis; row `k` of `basis` is the new
    /// `k`-th basis vector in old coordinates.
    pub fn change_basis(&self, basis: &F2Matrix) -> Result<QuadraticSpace> {
        if basis.nrows() != self.dim() || basis.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: basis.nrows(),
            });
        }
        let gram = basis.mul(&self.gram)?.mul(&basis.transpose())?;
        let qvals = F2Vector::from_bits(
            basis
                .rows()
                .iter()
                .map(|row| self.evaluate_q(row))
                .collect::<Result<Vec<_>>>()?,
        );
        QuadraticSpace::new(gram, qvals)
    }
}

pub(crate) fn check_cap(dim: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_ENUM_CAP);
    if dim > cap {
        return Err(Error::TooLarge {
            what: "enumeration dimension",
            size: dim,
            cap,
        });
    }
    Ok(())
}

pub fn arf_symplectic(s: &QuadraticSpace) -> ArfValue {
    s.arf_symplectic()
}

pub fn arf_democratic(s: &QuadraticSpace) -> Result<ArfValue> {
    s.arf_democratic()
}
