//! Dense linear algebra over the two-element field.
//!
//! Vectors are packed into 64-bit words; matrices are stored as a list of
//! row vectors. Every operation is a pure function of its inputs, and every
//! elimination uses the lowest available index as its pivot so that results
//! (kernel bases, symplectic bases, particular solutions) are reproducible.

use std::fmt;

use crate::error::{Error, Result};

/// Largest row or column count accepted by [`F2Matrix`] constructors.
pub const MAX_DIM: usize = 4096;

const WORD: usize = 64;

/// A vector over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    words: Vec<u64>,
    len: usize,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    /// The `i`-th standard basis vector of F2^len.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from integer entries, reducing each modulo 2.
    pub fn from_u8s(entries: &[u8]) -> Self {
        Self::from_bits(entries.iter().map(|&e| e & 1 == 1))
    }

    /// The low `len` bits of `mask` as a vector (bit `i` is coordinate `i`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "mask vectors are limited to {WORD} coordinates");
        let mut v = Self::zeros(len);
        if len > 0 {
            let keep = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = mask & keep;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Lowest index with a nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn add_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn add(&self, other: &F2Vector) -> F2Vector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Standard dot product `Σ x_i y_i mod 2`.
    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn concat(&self, other: &F2Vector) -> F2Vector {
        F2Vector::from_bits(self.bits().chain(other.bits()))
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Coordinates as `0`/`1` bytes.
    pub fn to_u8s(&self) -> Vec<u8> {
        self.bits().map(u8::from).collect()
    }

    /// The vector as a bit mask; only valid for `len <= 64`.
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= WORD, "mask vectors are limited to {WORD} coordinates");
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.bits().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(b))?;
        }
        write!(f, ")")
    }
}

/// A dense matrix over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: Vec<F2Vector>,
    cols: usize,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![F2Vector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| F2Vector::unit(n, i)).collect(),
            cols: n,
        }
    }

    /// Builds a matrix from rows of integers reduced modulo 2.
    ///
    /// An empty slice is the 0×0 matrix.
    pub fn from_rows(entries: &[Vec<u8>]) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        let rows: Vec<F2Vector> = entries
            .iter()
            .enumerate()
            .map(|(r, row)| {
                if row.len() != cols {
                    return Err(Error::Shape(format!(
                        "row {r} has {} entries, expected {cols}",
                        row.len()
                    )));
                }
                Ok(F2Vector::from_u8s(row))
            })
            .collect::<Result<_>>()?;
        Self::from_row_vectors(rows, cols)
    }

    pub fn from_row_vectors(rows: Vec<F2Vector>, cols: usize) -> Result<Self> {
        if rows.len() > MAX_DIM || cols > MAX_DIM {
            return Err(Error::TooLarge {
                what: "matrix dimension",
                size: rows.len().max(cols),
                cap: MAX_DIM,
            });
        }
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != cols) {
            return Err(Error::Shape(format!(
                "row {r} has {} entries, expected {cols}",
                row.len()
            )));
        }
        Ok(Self { rows, cols })
    }

    /// Block-diagonal sum `a ⊕ b`.
    pub fn block_diag(a: &F2Matrix, b: &F2Matrix) -> F2Matrix {
        let cols = a.cols + b.cols;
        let mut rows = Vec::with_capacity(a.nrows() + b.nrows());
        for row in &a.rows {
            rows.push(row.concat(&F2Vector::zeros(b.cols)));
        }
        for row in &b.rows {
            rows.push(F2Vector::zeros(a.cols).concat(row));
        }
        F2Matrix { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &F2Vector {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn to_u8_rows(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(F2Vector::to_u8s).collect()
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.support() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// First `(i, j)` with `self[i][j] != self[j][i]`, scanning rows in order.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.nrows())
            .flat_map(|i| (i + 1..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    pub fn diagonal(&self) -> F2Vector {
        F2Vector::from_bits((0..self.nrows().min(self.cols)).map(|i| self.get(i, i)))
    }

    pub fn mul_vec(&self, x: &F2Vector) -> Result<F2Vector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok(F2Vector::from_bits(self.rows.iter().map(|row| row.dot(x))))
    }

    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.nrows(),
            });
        }
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|row| F2Vector::from_bits(t.rows.iter().map(|col| row.dot(col))))
            .collect();
        Ok(F2Matrix {
            rows,
            cols: other.cols,
        })
    }

    /// The bilinear pairing `xᵀ M y`.
    pub fn pair(&self, x: &F2Vector, y: &F2Vector) -> bool {
        x.dot(&self.mul_vec(y).expect("pairing dimension mismatch"))
    }

    /// Restriction to the rows and columns listed in `idx`, in that order.
    pub fn submatrix(&self, idx: &[usize]) -> F2Matrix {
        let rows = idx
            .iter()
            .map(|&r| F2Vector::from_bits(idx.iter().map(|&c| self.get(r, c))))
            .collect();
        F2Matrix {
            rows,
            cols: idx.len(),
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            let Some(p) = (lead..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(lead, p);
            let pivot_row = rows[lead].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != lead && row.get(c) {
                    row.add_assign(&pivot_row);
                }
            }
            pivots.push(c);
            lead += 1;
            if lead == rows.len() {
                break;
            }
        }
        (
            F2Matrix {
                rows,
                cols: self.cols,
            },
            pivots,
        )
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

pub fn rank(m: &F2Matrix) -> usize {
    m.rref().1.len()
}

/// Basis of `{x : m·x = 0}`, one vector per free column in ascending order.
pub fn kernel_basis(m: &F2Matrix) -> Vec<F2Vector> {
    let (r, pivots) = m.rref();
    let n = m.ncols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = F2Vector::unit(n, free);
            for (row, &p) in pivots.iter().enumerate() {
                if r.get(row, free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Some `x` with `m·x = b`, or `None` when the system is inconsistent.
///
/// Free variables are set to zero.
pub fn solve(m: &F2Matrix, b: &F2Vector) -> Result<Option<F2Vector>> {
    if b.len() != m.nrows() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: b.len(),
        });
    }
    let n = m.ncols();
    let augmented = F2Matrix {
        rows: m
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| row.concat(&F2Vector::from_bits([b.get(i)])))
            .collect(),
        cols: n + 1,
    };
    let (r, pivots) = augmented.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = F2Vector::zeros(n);
    for (row, &p) in pivots.iter().enumerate() {
        if r.get(row, n) {
            x.set(p, true);
        }
    }
    Ok(Some(x))
}

/// A hyperbolic pair `(a, b)` with `a·b = 1`.
pub type HyperbolicPair = (F2Vector, F2Vector);

/// Symplectic basis of a nondegenerate alternating form.
///
/// Greedy reduction: take the lowest-index remaining vector, pair it with the
/// lowest-index remaining partner, project every other remaining vector onto
/// the orthogonal complement of the pair, and repeat.
pub fn symplectic_basis(gram: &F2Matrix) -> Result<Vec<HyperbolicPair>> {
    if !gram.is_square() {
        return Err(Error::Shape(format!(
            "gram matrix is {}x{}, expected square",
            gram.nrows(),
            gram.ncols()
        )));
    }
    if let Some((i, j)) = gram.asymmetry() {
        return Err(Error::NotSymmetric { i, j });
    }
    if let Some(i) = gram.diagonal().leading_index() {
        return Err(Error::NotAlternating { index: i });
    }
    let n = gram.nrows();
    let mut remaining: Vec<F2Vector> = (0..n).map(|i| F2Vector::unit(n, i)).collect();
    let mut pairs = Vec::with_capacity(n / 2);
    while !remaining.is_empty() {
        let a = remaining.remove(0);
        let Some(k) = remaining.iter().position(|w| gram.pair(&a, w)) else {
            return Err(Error::Degenerate);
        };
        let b = remaining.remove(k);
        for u in &mut remaining {
            let ub = gram.pair(u, &b);
            let ua = gram.pair(u, &a);
            if ub {
                u.add_assign(&a);
            }
            if ua {
                u.add_assign(&b);
            }
        }
        pairs.push((a, b));
    }
    Ok(pairs)
}
