//! Rochlin invariants and the congruences relating signatures, surface
//! self-intersections, and Arf/Brown invariants.
//!
//! The verifiers consume bundles of invariants, not manifolds. Whether a
//! bundle comes from an actual characteristic surface in a 4-manifold with
//! homology-sphere boundary is the caller's responsibility. A divisibility
//! failure is reported as an [`Error::Divisibility`] (the data cannot be
//! realised); a congruence failure on otherwise valid data is a [`Residual`]
//! that does not hold.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::enhanced::BrownValue;
use crate::error::{Error, Result};
use crate::lattice::IntLattice;
use crate::quad::ArfValue;
use crate::seifert::SeifertData;

/// Linking matrix of an even framed link presenting a homology sphere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvenPresentation {
    lambda: IntLattice,
}

impl EvenPresentation {
    pub fn new(lambda: IntLattice) -> Result<Self> {
        if let Some(index) = lambda.first_odd_diagonal() {
            return Err(Error::NotEven { index });
        }
        if !lambda.is_unimodular() {
            return Err(Error::NotUnimodular {
                det: lambda.determinant().to_string(),
            });
        }
        Ok(Self { lambda })
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lambda
    }

    /// `μ(Σ) = σ(λ)/8` mod 2.
    pub fn mu(&self) -> Result<u8> {
        let sigma = self.lambda.signature()?;
        if sigma.rem_euclid(8) != 0 {
            return Err(Error::Internal(format!(
                "even unimodular form has signature {sigma}, not divisible by 8"
            )));
        }
        Ok((sigma / 8).rem_euclid(2) as u8)
    }
}

pub fn mu_from_presentation(p: &EvenPresentation) -> Result<u8> {
    p.mu()
}

/// `μ(S³(K; α)) = α·Arf(K)` mod 2.
pub fn mu_from_surgery(k: &SeifertData, alpha: &BigInt) -> Result<u8> {
    if k.components() != 1 {
        return Err(Error::NotAKnot {
            components: k.components(),
        });
    }
    let arf = k
        .arf()
        .as_bit()
        .ok_or_else(|| Error::Internal("knot Seifert form is improper".into()))?;
    Ok(u8::from(alpha.is_odd()) * arf)
}

/// Outcome of checking a congruence: the residue and whether it vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residual {
    pub value: u8,
    pub modulus: u8,
    pub holds: bool,
}

impl Residual {
    fn new(value: &BigInt, modulus: u8) -> Self {
        let r = value
            .mod_floor(&BigInt::from(modulus))
            .to_u8()
            .expect("residue below modulus");
        Self {
            value: r,
            modulus,
            holds: r == 0,
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds { "holds" } else { "fails" };
        write!(f, "{verdict} (residual {} mod {})", self.value, self.modulus)
    }
}

fn bit(value: u8, what: &'static str) -> Result<BigInt> {
    if value > 1 {
        return Err(Error::OutOfRange {
            what,
            index: 0,
            value: value.to_string(),
        });
    }
    Ok(BigInt::from(value))
}

fn divide_by_8(value: BigInt, what: &'static str) -> Result<BigInt> {
    let (q, r) = value.div_mod_floor(&BigInt::from(8));
    if !r.is_zero() {
        return Err(Error::Divisibility {
            what,
            value: value.to_string(),
            modulus: 8,
        });
    }
    Ok(q)
}

fn finite_arf(arf: ArfValue, what: &'static str) -> Result<BigInt> {
    arf.as_bit().map(BigInt::from).ok_or(Error::Infinite(what))
}

fn finite_beta(beta: BrownValue, what: &'static str) -> Result<BigInt> {
    beta.value().map(BigInt::from).ok_or(Error::Infinite(what))
}

/// `Arf(ξ) ≡ KS + (σ − ξ·ξ)/8` mod 2 for a closed manifold.
pub fn verify_closed(sigma: &BigInt, xi_square: &BigInt, arf_xi: ArfValue, ks: u8) -> Result<Residual> {
    let eighth = divide_by_8(sigma - xi_square, "σ − ξ·ξ")?;
    let arf = finite_arf(arf_xi, "Arf of the characteristic surface")?;
    let ks = bit(ks, "Kirby–Siebenmann invariant")?;
    Ok(Residual::new(&(arf - ks - eighth), 2))
}

/// `σ ≡ F·F + 2β(F) + 8·KS` mod 16 for a closed manifold.
pub fn verify_closed_brown(sigma: &BigInt, f_dot_f: &BigInt, beta_f: BrownValue, ks: u8) -> Result<Residual> {
    let beta = finite_beta(beta_f, "Brown invariant of the characteristic surface")?;
    let ks = bit(ks, "Kirby–Siebenmann invariant")?;
    Ok(Residual::new(&(sigma - f_dot_f - 2 * beta - 8 * ks), 16))
}

/// Surface invariants of a relative scenario, tagged by orientability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceInvariants {
    Orientable { arf_f: ArfValue, arf_boundary: ArfValue },
    Nonorientable { beta_f: BrownValue, beta_boundary: BrownValue },
}

/// A characteristic surface `F` properly embedded in `X` with `∂F` in the
/// homology sphere `∂X`, summarised by its invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelativeScenario {
    pub sigma_x: BigInt,
    /// `[F]²` (or `F·F`), computed with the 0-framing on `∂F`.
    pub f_square: BigInt,
    pub invariants: SurfaceInvariants,
    pub mu_boundary: u8,
    pub ks: u8,
}

impl RelativeScenario {
    /// Rejects infinite invariants and out-of-range bits.
    pub fn new(
        sigma_x: BigInt,
        f_square: BigInt,
        invariants: SurfaceInvariants,
        mu_boundary: u8,
        ks: u8,
    ) -> Result<Self> {
        match invariants {
            SurfaceInvariants::Orientable { arf_f, arf_boundary } => {
                finite_arf(arf_f, "Arf(F)")?;
                finite_arf(arf_boundary, "Arf(∂F)")?;
            }
            SurfaceInvariants::Nonorientable {
                beta_f,
                beta_boundary,
            } => {
                finite_beta(beta_f, "β(F)")?;
                finite_beta(beta_boundary, "β(∂F)")?;
            }
        }
        bit(mu_boundary, "Rochlin invariant of the boundary")?;
        bit(ks, "Kirby–Siebenmann invariant")?;
        Ok(Self {
            sigma_x,
            f_square,
            invariants,
            mu_boundary,
            ks,
        })
    }

    pub fn orientable(sigma_x: i64, f_square: i64, arf_f: ArfValue, arf_boundary: ArfValue, mu_boundary: u8, ks: u8) -> Result<Self> {
        Self::new(
            BigInt::from(sigma_x),
            BigInt::from(f_square),
            SurfaceInvariants::Orientable { arf_f, arf_boundary },
            mu_boundary,
            ks,
        )
    }

    pub fn nonorientable(sigma_x: i64, f_square: i64, beta_f: BrownValue, beta_boundary: BrownValue, mu_boundary: u8, ks: u8) -> Result<Self> {
        Self::new(
            BigInt::from(sigma_x),
            BigInt::from(f_square),
            SurfaceInvariants::Nonorientable {
                beta_f,
                beta_boundary,
            },
            mu_boundary,
            ks,
        )
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self.invariants, SurfaceInvariants::Orientable { .. })
    }

    /// The same scenario with `β = 4·Arf` on both surfaces.
    pub fn to_brown(&self) -> RelativeScenario {
        let invariants = match self.invariants {
            SurfaceInvariants::Orientable { arf_f, arf_boundary } => SurfaceInvariants::Nonorientable {
                beta_f: BrownValue::from_arf(arf_f),
                beta_boundary: BrownValue::from_arf(arf_boundary),
            },
            other => other,
        };
        RelativeScenario {
            invariants,
            ..self.clone()
        }
    }
}

/// Orientable: `Arf(F) + Arf(∂F) ≡ (σ − [F]²)/8 + μ(∂X) + KS` mod 2.
/// Nonorientable: `2β(F) + 2β(∂F) ≡ σ − F·F + 8μ(∂X) + 8KS` mod 16.
pub fn verify_relative(s: &RelativeScenario) -> Result<Residual> {
    let mu = bit(s.mu_boundary, "Rochlin invariant of the boundary")?;
    let ks = bit(s.ks, "Kirby–Siebenmann invariant")?;
    match s.invariants {
        SurfaceInvariants::Orientable { arf_f, arf_boundary } => {
            let eighth = divide_by_8(&s.sigma_x - &s.f_square, "σ(X) − [F]²")?;
            let f = finite_arf(arf_f, "Arf(F)")?;
            let b = finite_arf(arf_boundary, "Arf(∂F)")?;
            Ok(Residual::new(&(f + b - eighth - mu - ks), 2))
        }
        SurfaceInvariants::Nonorientable {
            beta_f,
            beta_boundary,
        } => {
            let f = finite_beta(beta_f, "β(F)")?;
            let b = finite_beta(beta_boundary, "β(∂F)")?;
            let lhs = 2 * f + 2 * b - &s.sigma_x + &s.f_square - 8 * mu - 8 * ks;
            Ok(Residual::new(&lhs, 16))
        }
    }
}

/// The mirror of `K` capped off by the core of a 2-handle attached to `B⁴`
/// along `K` with framing `α = ±1`. Then `σ(X) = [F]² = α`, `Arf(F) = 0`,
/// `∂F` is the mirror of `K` in `∂X = S³(K; α)`, and `μ(∂X)` is whatever
/// value makes the relative congruence hold.
pub fn build_surgery_scenario(k: &SeifertData, alpha: i64) -> Result<RelativeScenario> {
    if alpha.abs() != 1 {
        return Err(Error::OutOfRange {
            what: "surgery coefficient (must be ±1)",
            index: 0,
            value: alpha.to_string(),
        });
    }
    if k.components() != 1 {
        return Err(Error::NotAKnot {
            components: k.components(),
        });
    }
    // Arf is insensitive to mirroring.
    let arf_k = k.arf();
    let mut scenario = RelativeScenario::orientable(alpha, alpha, ArfValue::Zero, arf_k, 0, 0)?;
    let residual = verify_relative(&scenario)?;
    scenario.mu_boundary = residual.value;
    let check = mu_from_surgery(k, &BigInt::from(alpha))?;
    if check != scenario.mu_boundary {
        return Err(Error::Internal(format!(
            "relative congruence gives μ = {} but the surgery formula gives {check}",
            scenario.mu_boundary
        )));
    }
    Ok(scenario)
}
