//! Link invariants from spanning-surface data.
//!
//! Oriented surfaces are described by a Seifert matrix `V` with
//! `V_ij = lk(c_i, c_j⁺)`; the mod-2 intersection form is `V + Vᵀ` and
//! `q(c_i) = V_ii`. Arbitrary (possibly nonorientable) surfaces are described
//! by [`SurfaceData`]: the Z/4 framings of a basis of band cores, their mod-2
//! intersections, and the sum of the framings the surface induces on the
//! boundary components.
//!
//! The framing values in [`SurfaceData`] are taken on trust. Nothing here
//! can check that they come from an actual embedded surface.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::enhanced::{BrownValue, EnhancedSpace};
use crate::error::{Error, Result};
use crate::f2::{rank, F2Matrix};
use crate::lattice::{check_square, first_asymmetry, is_odd, reduce_mod2, IntMatrix};
use crate::quad::{ArfValue, QuadraticSpace, DEFAULT_ENUM_CAP};

/// A Seifert matrix with optional component linking numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertData {
    matrix: IntMatrix,
    components: usize,
    lk: Option<IntMatrix>,
}

impl SeifertData {
    pub fn new(matrix: IntMatrix, components: usize, lk: Option<IntMatrix>) -> Result<Self> {
        let n = check_square(&matrix, "Seifert matrix")?;
        if components == 0 {
            return Err(Error::Shape("a link has at least one component".into()));
        }
        if let Some(lk) = &lk {
            let c = check_square(lk, "linking matrix")?;
            if c != components {
                return Err(Error::Shape(format!(
                    "linking matrix is {c}x{c} but the link has {components} components"
                )));
            }
            if let Some((i, j)) = first_asymmetry(lk) {
                return Err(Error::NotSymmetric { i, j });
            }
            if let Some(i) = (0..c).find(|&i| !lk[i][i].is_zero()) {
                return Err(Error::InconsistentLinking(format!(
                    "diagonal entry lk[{i}][{i}] must be zero"
                )));
            }
        }
        let data = Self {
            matrix,
            components,
            lk,
        };
        if components == 1 && rank(&data.symmetrized_mod2()) != n {
            return Err(Error::EvenKnotDeterminant);
        }
        Ok(data)
    }

    pub fn knot_from_i64s(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(to_big(rows), 1, None)
    }

    pub fn link_from_i64s(rows: &[Vec<i64>], lk: &[Vec<i64>]) -> Result<Self> {
        Self::new(to_big(rows), lk.len(), Some(to_big(lk)))
    }

    /// The unknot, bounding a disk.
    pub fn unknot() -> Self {
        Self::knot_from_i64s(&[]).expect("empty Seifert matrix is valid")
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn lk(&self) -> Option<&IntMatrix> {
        self.lk.as_ref()
    }

    /// `V + Vᵀ` over the integers.
    pub fn symmetrized(&self) -> IntMatrix {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| &self.matrix[i][j] + &self.matrix[j][i]).collect())
            .collect()
    }

    fn symmetrized_mod2(&self) -> F2Matrix {
        reduce_mod2(&self.symmetrized())
    }

    /// `(H₁(S; Z/2), ·, q_S)` with `q_S(c_i) = V_ii`.
    pub fn quadratic_space(&self) -> QuadraticSpace {
        let n = self.size();
        let qvals: Vec<u8> = (0..n).map(|i| u8::from(is_odd(&self.matrix[i][i]))).collect();
        let mut gram = self.symmetrized_mod2();
        for i in 0..n {
            gram.set(i, i, false);
        }
        QuadraticSpace::new(gram, crate::f2::F2Vector::from_u8s(&qvals))
            .expect("V + Vᵀ is symmetric with even diagonal")
    }

    pub fn arf(&self) -> ArfValue {
        self.quadratic_space().arf_symplectic()
    }

    /// Intrinsic properness, cross-checked against the parity of each row
    /// sum of the linking matrix when one is supplied.
    pub fn properness(&self) -> Result<bool> {
        let intrinsic = self.quadratic_space().is_proper();
        if let Some(lk) = &self.lk {
            let odd_row = lk
                .iter()
                .position(|row| is_odd(&row.iter().sum::<BigInt>()));
            let from_lk = odd_row.is_none();
            if from_lk != intrinsic {
                let detail = match odd_row {
                    Some(i) => format!(
                        "component {i} links the rest oddly, but the Seifert form is proper"
                    ),
                    None => "every component links the rest evenly, but the Seifert form is improper"
                        .to_string(),
                };
                return Err(Error::InconsistentLinking(detail));
            }
        }
        Ok(intrinsic)
    }

    /// Sum of the pairwise linking numbers `Σ_{i<j} lk_ij`.
    pub fn lk_total(&self) -> Result<BigInt> {
        if self.components == 1 {
            return Ok(BigInt::zero());
        }
        let lk = self.lk.as_ref().ok_or(Error::MissingLinking)?;
        let n = lk.len();
        Ok((0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| lk[i][j].clone())
            .sum())
    }

    /// The Seifert surface viewed as a (possibly nonorientable) spanning
    /// surface: `e = 2q`, and component `i` gets surface framing
    /// `−Σ_{j≠i} lk_ij`, so the boundary framings sum to `−2·lk(L)`.
    pub fn orientable_surface(&self) -> Result<SurfaceData> {
        let lk_total = self.lk_total()?;
        let enhanced = EnhancedSpace::from_quadratic(&self.quadratic_space());
        SurfaceData::new(
            enhanced.gram().clone(),
            enhanced.evals().to_vec(),
            -2 * lk_total,
        )
    }

    /// Adds a tube: two new generators `a, b` with `V(a,a) = V(b,b) = 0`,
    /// `V(a,b) = 1`, `V(b,a) = 0`, orthogonal to the old ones.
    pub fn stabilize(&self) -> SeifertData {
        let n = self.size();
        let mut m: IntMatrix = self
            .matrix
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.extend([BigInt::zero(), BigInt::zero()]);
                r
            })
            .collect();
        let mut a = vec![BigInt::zero(); n + 2];
        a[n + 1] = BigInt::from(1);
        m.push(a);
        m.push(vec![BigInt::zero(); n + 2]);
        SeifertData {
            matrix: m,
            components: self.components,
            lk: self.lk.clone(),
        }
    }
}

fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Band data of a spanning surface, orientable or not.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceData {
    gram: F2Matrix,
    evals: Vec<u8>,
    boundary_framing_sum: BigInt,
}

impl SurfaceData {
    pub fn new(gram: F2Matrix, evals: Vec<u8>, boundary_framing_sum: BigInt) -> Result<Self> {
        EnhancedSpace::new(gram.clone(), evals.clone())?;
        if is_odd(&boundary_framing_sum) {
            return Err(Error::OddFramingSum(boundary_framing_sum.to_string()));
        }
        Ok(Self {
            gram,
            evals,
            boundary_framing_sum,
        })
    }

    pub fn from_u8s(gram: &[Vec<u8>], evals: &[u8], boundary_framing_sum: i64) -> Result<Self> {
        Self::new(
            F2Matrix::from_rows(gram)?,
            evals.to_vec(),
            BigInt::from(boundary_framing_sum),
        )
    }

    pub fn gram(&self) -> &F2Matrix {
        &self.gram
    }

    pub fn evals(&self) -> &[u8] {
        &self.evals
    }

    pub fn boundary_framing_sum(&self) -> &BigInt {
        &self.boundary_framing_sum
    }

    /// `φ(S)`, half the boundary framing sum.
    pub fn phi(&self) -> BigInt {
        &self.boundary_framing_sum / 2
    }

    pub fn enhanced_space(&self) -> EnhancedSpace {
        EnhancedSpace::new(self.gram.clone(), self.evals.clone()).expect("validated at construction")
    }

    /// `β(S)`.
    pub fn beta_surface(&self, cap: usize) -> Result<BrownValue> {
        self.enhanced_space().brown_gauss_capped(cap)
    }

    /// `β(L) = β(S) − φ(S)`, or `Infinity` when the link is not proper.
    pub fn beta_of_link(&self) -> Result<BrownValue> {
        self.beta_of_link_capped(DEFAULT_ENUM_CAP)
    }

    pub fn beta_of_link_capped(&self, cap: usize) -> Result<BrownValue> {
        match self.beta_surface(cap)? {
            BrownValue::Infinity => Ok(BrownValue::Infinity),
            BrownValue::Finite(b) => {
                let phi = self.phi().mod_floor(&BigInt::from(8)).to_i64().expect("residue");
                Ok(BrownValue::new(i64::from(b) - phi))
            }
        }
    }
}

/// Invariants of a link computed from one Seifert matrix and one spanning
/// surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkInvariants {
    pub arf: ArfValue,
    pub proper: bool,
    pub lk_total: Option<BigInt>,
    pub beta: Option<BrownValue>,
}

impl LinkInvariants {
    pub fn of(sd: &SeifertData, surf: Option<&SurfaceData>) -> Result<Self> {
        let proper = sd.properness()?;
        let arf = sd.arf();
        let lk_total = match sd.lk_total() {
            Ok(v) => Some(v),
            Err(Error::MissingLinking) => None,
            Err(e) => return Err(e),
        };
        let beta = surf.map(SurfaceData::beta_of_link).transpose()?;
        Ok(Self {
            arf,
            proper,
            lk_total,
            beta,
        })
    }
}

/// Checks `β(L) ≡ 4·Arf(L) + lk(L)` mod 8.
pub fn arf_beta_relation_check(sd: &SeifertData, surf: &SurfaceData) -> Result<bool> {
    arf_beta_relation_check_capped(sd, surf, DEFAULT_ENUM_CAP)
}

pub fn arf_beta_relation_check_capped(sd: &SeifertData, surf: &SurfaceData, cap: usize) -> Result<bool> {
    let lk_total = sd.lk_total()?;
    match (sd.arf().as_bit(), surf.beta_of_link_capped(cap)?) {
        (None, BrownValue::Infinity) => Ok(true),
        (Some(arf), BrownValue::Finite(beta)) => {
            let lhs = BigInt::from(beta) - BigInt::from(4 * arf) - lk_total;
            Ok(lhs.mod_floor(&BigInt::from(8)).is_zero())
        }
        (None, BrownValue::Finite(_)) => Err(Error::Inconsistent(
            "Seifert data describes an improper link but the surface gives a finite Brown invariant"
                .into(),
        )),
        (Some(_), BrownValue::Infinity) => Err(Error::Inconsistent(
            "Seifert data describes a proper link but the surface gives an infinite Brown invariant"
                .into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> SeifertData {
        SeifertData::knot_from_i64s(&[vec![-1, 1], vec![0, -1]]).unwrap()
    }

    fn hopf() -> SeifertData {
        SeifertData::link_from_i64s(&[vec![-1]], &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn quadratic_space_examples() {
        assert_eq!(SeifertData::unknot().quadratic_space().dim(), 0);
        assert_eq!(trefoil().quadratic_space(), QuadraticSpace::hyperbolic(true, true));
        let h = hopf().quadratic_space();
        assert_eq!(h, QuadraticSpace::line(true));
        assert!(!h.is_proper());
    }

    #[test]
    fn arf_examples() {
        assert_eq!(SeifertData::unknot().arf(), ArfValue::Zero);
        assert_eq!(trefoil().arf(), ArfValue::One);
        assert_eq!(hopf().arf(), ArfValue::Infinity);
    }

    #[test]
    fn properness_examples() {
        assert!(trefoil().properness().unwrap());
        assert!(!hopf().properness().unwrap());
        let unlink = SeifertData::link_from_i64s(
            &[vec![0, 0], vec![0, 0]],
            &[vec![0, 0], vec![0, 0]],
        )
        .unwrap();
        assert!(unlink.properness().unwrap());
    }

    #[test]
    fn properness_rejects_inconsistent_lk() {
        let bad = SeifertData::link_from_i64s(&[vec![-1]], &[vec![0, 2], vec![2, 0]]).unwrap();
        assert!(matches!(bad.properness(), Err(Error::InconsistentLinking(_))));
    }

    #[test]
    fn lk_total_examples() {
        assert_eq!(trefoil().lk_total().unwrap(), BigInt::zero());
        assert_eq!(hopf().lk_total().unwrap(), BigInt::from(1));
        let no_lk = SeifertData::new(vec![vec![BigInt::from(-1)]], 2, None).unwrap();
        assert_eq!(no_lk.lk_total(), Err(Error::MissingLinking));
    }

    #[test]
    fn knot_with_even_determinant_is_rejected() {
        assert_eq!(
            SeifertData::knot_from_i64s(&[vec![1, 1], vec![1, 1]]),
            Err(Error::EvenKnotDeterminant)
        );
    }

    #[test]
    fn linking_matrix_validation() {
        assert!(matches!(
            SeifertData::link_from_i64s(&[vec![0]], &[vec![1, 0], vec![0, 0]]),
            Err(Error::InconsistentLinking(_))
        ));
        assert!(matches!(
            SeifertData::link_from_i64s(&[vec![0]], &[vec![0, 1], vec![2, 0]]),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn enhanced_space_examples() {
        let pos = SurfaceData::from_u8s(&[vec![1]], &[1], 2).unwrap();
        assert_eq!(pos.beta_surface(24).unwrap(), BrownValue::Finite(1));
        let neg = SurfaceData::from_u8s(&[vec![1]], &[3], -2).unwrap();
        assert_eq!(neg.beta_surface(24).unwrap(), BrownValue::Finite(7));
        let torus = SurfaceData::from_u8s(&[vec![0, 1], vec![1, 0]], &[2, 2], 0).unwrap();
        assert_eq!(torus.beta_surface(24).unwrap(), BrownValue::Finite(4));
        assert_eq!(
            SurfaceData::from_u8s(&[vec![0]], &[1], 0),
            Err(Error::DiagonalParity { index: 0 })
        );
        assert!(matches!(
            SurfaceData::from_u8s(&[vec![1]], &[1], 1),
            Err(Error::OddFramingSum(_))
        ));
    }

    #[test]
    fn beta_of_link_examples() {
        let disk = SurfaceData::from_u8s(&[], &[], 0).unwrap();
        assert_eq!(disk.beta_of_link().unwrap(), BrownValue::Finite(0));
        let mobius = SurfaceData::from_u8s(&[vec![1]], &[1], 2).unwrap();
        assert_eq!(mobius.beta_of_link().unwrap(), BrownValue::Finite(0));
        let neg = SurfaceData::from_u8s(&[vec![1]], &[3], -2).unwrap();
        assert_eq!(neg.beta_of_link().unwrap(), BrownValue::Finite(0));
        let hopf_annulus = hopf().orientable_surface().unwrap();
        assert_eq!(hopf_annulus.beta_of_link().unwrap(), BrownValue::Infinity);
    }

    #[test]
    fn relation_examples() {
        let unknot = SeifertData::unknot();
        assert!(arf_beta_relation_check(&unknot, &unknot.orientable_surface().unwrap()).unwrap());
        let t = trefoil();
        let surf = t.orientable_surface().unwrap();
        assert_eq!(surf.beta_of_link().unwrap(), BrownValue::Finite(4));
        assert!(arf_beta_relation_check(&t, &surf).unwrap());
        let h = hopf();
        assert!(arf_beta_relation_check(&h, &h.orientable_surface().unwrap()).unwrap());
        let disk = SurfaceData::from_u8s(&[], &[], 0).unwrap();
        assert!(matches!(
            arf_beta_relation_check(&h, &disk),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn stabilization_keeps_arf() {
        let t = trefoil();
        assert_eq!(t.stabilize().size(), 4);
        assert_eq!(t.stabilize().arf(), ArfValue::One);
        assert_eq!(SeifertData::unknot().stabilize().arf(), ArfValue::Zero);
    }
}
