//! Symmetric integer bilinear forms.
//!
//! Signatures come from congruence diagonalization over the rationals and
//! determinants from fraction-free (Bareiss) elimination; no floating point
//! is involved anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::f2::{solve, F2Matrix, F2Vector};

/// A square matrix of arbitrary-precision integers.
pub type IntMatrix = Vec<Vec<BigInt>>;

pub(crate) fn check_square(m: &IntMatrix, what: &str) -> Result<usize> {
    let n = m.len();
    if let Some((r, row)) = m.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(Error::Shape(format!(
            "{what} row {r} has {} entries, expected {n}",
            row.len()
        )));
    }
    Ok(n)
}

pub(crate) fn first_asymmetry(m: &IntMatrix) -> Option<(usize, usize)> {
    let n = m.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| m[i][j] != m[j][i])
}

pub(crate) fn is_odd(x: &BigInt) -> bool {
    x.is_odd()
}

/// Integer matrix entries reduced modulo 2.
pub fn reduce_mod2(m: &IntMatrix) -> F2Matrix {
    let rows: Vec<Vec<u8>> = m
        .iter()
        .map(|row| row.iter().map(|x| u8::from(is_odd(x))).collect())
        .collect();
    F2Matrix::from_rows(&rows).expect("square integer matrix reduces to a valid F2 matrix")
}

/// Fraction-free determinant of a square integer matrix.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// A symmetric integer bilinear form on `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntLattice {
    q: IntMatrix,
}

/// A characteristic vector with `{0,1}` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharVector {
    pub xi: Vec<BigInt>,
}

impl CharVector {
    pub fn from_i64s(entries: &[i64]) -> Self {
        Self {
            xi: entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }
}

impl IntLattice {
    pub fn new(q: IntMatrix) -> Result<Self> {
        check_square(&q, "lattice")?;
        if let Some((i, j)) = first_asymmetry(&q) {
            return Err(Error::NotSymmetric { i, j });
        }
        Ok(Self { q })
    }

    pub fn from_i64s(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let q = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigInt::from(if i == j { entries[i] } else { 0 }))
                    .collect()
            })
            .collect();
        Self { q }
    }

    /// The positive-definite E8 form (Cartan matrix of the E8 root system).
    pub fn e8() -> Self {
        const EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        let mut q = vec![vec![0i64; 8]; 8];
        for (i, row) in q.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in EDGES {
            q[i][j] = -1;
            q[j][i] = -1;
        }
        Self::from_i64s(&q).expect("E8 Cartan matrix is symmetric")
    }

    /// The hyperbolic plane `[[0,1],[1,0]]`.
    pub fn hyperbolic() -> Self {
        Self::from_i64s(&[vec![0, 1], vec![1, 0]]).expect("symmetric")
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.q
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.q[i][j]
    }

    pub fn direct_sum(&self, other: &IntLattice) -> IntLattice {
        let (n, m) = (self.rank(), other.rank());
        let q = (0..n + m)
            .map(|i| {
                (0..n + m)
                    .map(|j| match (i < n, j < n) {
                        (true, true) => self.q[i][j].clone(),
                        (false, false) => other.q[i - n][j - n].clone(),
                        _ => BigInt::zero(),
                    })
                    .collect()
            })
            .collect();
        IntLattice { q }
    }

    /// `Bᵀ Q B`.
    pub fn congruent(&self, b: &IntMatrix) -> Result<IntLattice> {
        let n = self.rank();
        if check_square(b, "change of basis")? != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.len(),
            });
        }
        let qb: IntMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &self.q[i][k] * &b[k][j]).sum())
                    .collect()
            })
            .collect();
        let q = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &b[k][i] * &qb[k][j]).sum())
                    .collect()
            })
            .collect();
        Ok(IntLattice { q })
    }

    /// `xᵀ Q y`.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        let n = self.rank();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        Ok((0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| &x[i] * &self.q[i][j] * &y[j])
            .sum())
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.q)
    }

    /// Positive minus negative inertia, by symmetric Gaussian elimination.
    ///
    /// When every remaining diagonal entry is zero but some `a_ij` is not,
    /// row and column `j` are added to row and column `i`, making the new
    /// `a_ii = 2 a_ij` nonzero.
    pub fn signature(&self) -> Result<i64> {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .q
            .iter()
            .map(|row| row.iter().map(|x| BigRational::from(x.clone())).collect())
            .collect();
        let mut sig = 0i64;
        for k in 0..n {
            let pivot = match (k..n).find(|&i| !a[i][i].is_zero()) {
                Some(p) => p,
                None => {
                    let Some((i, j)) = (k..n)
                        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                        .find(|&(i, j)| !a[i][j].is_zero())
                    else {
                        return Err(Error::Degenerate);
                    };
                    for c in 0..n {
                        let v = a[j][c].clone();
                        a[i][c] += v;
                    }
                    for r in 0..n {
                        let v = a[r][j].clone();
                        a[r][i] += v;
                    }
                    i
                }
            };
            a.swap(k, pivot);
            for row in a.iter_mut() {
                row.swap(k, pivot);
            }
            let p = a[k][k].clone();
            sig += if p.is_positive() { 1 } else { -1 };
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &p;
                for c in k..n {
                    let v = &factor * &a[k][c];
                    a[i][c] -= v;
                }
                for r in k..n {
                    let v = &factor * &a[r][k];
                    a[r][i] -= v;
                }
            }
        }
        Ok(sig)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn is_even(&self) -> bool {
        self.first_odd_diagonal().is_none()
    }

    pub(crate) fn first_odd_diagonal(&self) -> Option<usize> {
        (0..self.rank()).find(|&i| is_odd(&self.q[i][i]))
    }

    /// Solves `Q ξ ≡ diag(Q)` over F2 and lifts the solution to `{0,1}`.
    pub fn characteristic_vector(&self) -> Result<CharVector> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular {
                det: self.determinant().to_string(),
            });
        }
        let m = reduce_mod2(&self.q);
        let target = m.diagonal();
        let x = solve(&m, &target)?
            .ok_or_else(|| Error::Internal("unimodular form has no characteristic vector mod 2".into()))?;
        Ok(CharVector {
            xi: x.bits().map(|b| BigInt::from(u8::from(b))).collect(),
        })
    }

    /// First basis vector `e_i` with `ξ·e_i ≢ e_i·e_i` mod 2, if any.
    pub fn characteristic_failure(&self, xi: &CharVector) -> Result<Option<usize>> {
        let n = self.rank();
        if xi.xi.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: xi.xi.len(),
            });
        }
        Ok((0..n).find(|&i| {
            let dot: BigInt = (0..n).map(|j| &self.q[i][j] * &xi.xi[j]).sum();
            is_odd(&dot) != is_odd(&self.q[i][i])
        }))
    }

    /// `ξᵀ Q ξ ≡ σ` mod 8.
    pub fn check_van_der_blij(&self, xi: &CharVector) -> Result<bool> {
        if let Some(index) = self.characteristic_failure(xi)? {
            return Err(Error::NotCharacteristic { index });
        }
        let square = self.pair(&xi.xi, &xi.xi)?;
        let sigma = BigInt::from(self.signature()?);
        Ok((square - sigma).mod_floor(&BigInt::from(8)).is_zero())
    }
}

/// `ξ` as an F2 vector.
pub fn char_vector_mod2(xi: &CharVector) -> F2Vector {
    F2Vector::from_bits(xi.xi.iter().map(is_odd))
}
