//! Random generators for spaces, Seifert matrices, and lattices.
//!
//! Seifert matrices are drawn as `V = S + U` where `S` is a random symmetric
//! integer matrix and `U` is the strictly upper part of the standard
//! intersection form `J_g ⊕ 0`: hyperbolic pairs for the genus and a zero
//! block spanned by all but one boundary component. The linking numbers of
//! the boundary components are read off the boundary block, so the linking
//! matrix is always consistent with the Seifert form.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::enhanced::EnhancedSpace;
use crate::f2::{F2Matrix, F2Vector};
use crate::lattice::{IntLattice, IntMatrix};
use crate::quad::QuadraticSpace;
use crate::seifert::SeifertData;

/// A random symmetric zero-diagonal Gram matrix over F2.
pub fn alternating_gram<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> F2Matrix {
    let mut m = F2Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i + 1..dim {
            let bit = rng.gen_bool(0.5);
            m.set(i, j, bit);
            m.set(j, i, bit);
        }
    }
    m
}

pub fn quadratic_space<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> QuadraticSpace {
    let gram = alternating_gram(rng, dim);
    let qvals = F2Vector::from_bits((0..dim).map(|_| rng.gen_bool(0.5)));
    QuadraticSpace::new(gram, qvals).expect("alternating gram")
}

/// A random enhanced space; the Gram diagonal is arbitrary and the
/// enhancement values respect its parity.
pub fn enhanced_space<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> EnhancedSpace {
    let mut gram = alternating_gram(rng, dim);
    let evals = (0..dim)
        .map(|i| {
            let v: u8 = rng.gen_range(0..4);
            gram.set(i, i, v & 1 == 1);
            v
        })
        .collect();
    EnhancedSpace::new(gram, evals).expect("diagonal parity matches")
}

/// Seifert matrix of a genus-`genus` surface with `components` boundary
/// components; entries of the symmetric part lie in `[-bound, bound]`.
pub fn seifert<R: Rng + ?Sized>(rng: &mut R, genus: usize, components: usize, bound: i64) -> SeifertData {
    assert!(components >= 1);
    let n = 2 * genus + components - 1;
    let mut v = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-bound..=bound);
            v[i][j] = x;
            v[j][i] = x;
        }
    }
    for k in 0..genus {
        v[2 * k][2 * k + 1] += 1;
    }
    let matrix: IntMatrix = v
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    if components == 1 {
        return SeifertData::new(matrix, 1, None).expect("knot Seifert matrix");
    }
    let c = components;
    let boundary = |i: usize| 2 * genus + i;
    let mut lk = vec![vec![BigInt::zero(); c]; c];
    for i in 0..c - 1 {
        for j in 0..c - 1 {
            if i != j {
                lk[i][j] = BigInt::from(v[boundary(i)][boundary(j)]);
            }
        }
        // The last boundary class is minus the sum of the others.
        let last: i64 = -(0..c - 1).map(|j| v[boundary(i)][boundary(j)]).sum::<i64>();
        lk[i][c - 1] = BigInt::from(last);
        lk[c - 1][i] = BigInt::from(last);
    }
    SeifertData::new(matrix, c, Some(lk)).expect("consistent link data")
}

/// A random knot Seifert matrix of size at most `max_size` (even, ≥ 2).
pub fn knot<R: Rng + ?Sized>(rng: &mut R, max_size: usize, bound: i64) -> SeifertData {
    let genus = rng.gen_range(1..=max_size / 2);
    seifert(rng, genus, 1, bound)
}

/// A random integer matrix with determinant ±1, built from elementary row
/// operations with multipliers in `{-1, 1}`.
pub fn unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut b: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if n >= 2 {
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            match rng.gen_range(0..4) {
                0 => b.swap(i, j),
                1 => b[i].iter_mut().for_each(|x| *x = -*x),
                _ => {
                    let k = if rng.gen_bool(0.5) { 1 } else { -1 };
                    let src = b[j].clone();
                    for (x, s) in b[i].iter_mut().zip(src) {
                        *x += k * s;
                    }
                }
            }
        }
    }
    b.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Building blocks of unimodular forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    PlusOne,
    MinusOne,
    E8,
    MinusE8,
    Hyperbolic,
}

impl Block {
    pub fn lattice(self) -> IntLattice {
        match self {
            Block::PlusOne => IntLattice::diagonal(&[1]),
            Block::MinusOne => IntLattice::diagonal(&[-1]),
            Block::E8 => IntLattice::e8(),
            Block::MinusE8 => negate(&IntLattice::e8()),
            Block::Hyperbolic => IntLattice::hyperbolic(),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Block::PlusOne | Block::MinusOne => 1,
            Block::E8 | Block::MinusE8 => 8,
            Block::Hyperbolic => 2,
        }
    }

    pub fn signature(self) -> i64 {
        match self {
            Block::PlusOne => 1,
            Block::MinusOne => -1,
            Block::E8 => 8,
            Block::MinusE8 => -8,
            Block::Hyperbolic => 0,
        }
    }
}

pub fn negate(l: &IntLattice) -> IntLattice {
    IntLattice::new(l.matrix().iter().map(|r| r.iter().map(|x| -x).collect()).collect())
        .expect("negation keeps symmetry")
}

/// Random blocks whose ranks sum to at most `max_rank`, drawn from `pool`.
pub fn blocks<R: Rng + ?Sized>(rng: &mut R, pool: &[Block], max_rank: usize) -> Vec<Block> {
    let mut out = Vec::new();
    let mut rank = 0;
    let count = rng.gen_range(1..=4);
    for _ in 0..count {
        let b = pool[rng.gen_range(0..pool.len())];
        if rank + b.rank() <= max_rank {
            rank += b.rank();
            out.push(b);
        }
    }
    out
}

pub fn block_sum(blocks: &[Block]) -> IntLattice {
    blocks
        .iter()
        .fold(IntLattice::diagonal(&[]), |acc, b| acc.direct_sum(&b.lattice()))
}

/// `Bᵀ D B` for random blocks `D` and random unimodular `B`.
pub fn unimodular_lattice<R: Rng + ?Sized>(rng: &mut R, max_rank: usize) -> (IntLattice, Vec<Block>) {
    const ALL: [Block; 5] = [
        Block::PlusOne,
        Block::MinusOne,
        Block::E8,
        Block::MinusE8,
        Block::Hyperbolic,
    ];
    let bl = blocks(rng, &ALL, max_rank);
    let d = block_sum(&bl);
    let n = d.rank();
    let b = unimodular(rng, n, 2 * n);
    (d.congruent(&b).expect("square change of basis"), bl)
}
