//! Per-document command evaluation.

use arfkit_core::enhanced::compass;
use arfkit_core::rochlin::{
    build_surgery_scenario, verify_closed, verify_closed_brown, verify_relative,
};
use arfkit_core::seifert::arf_beta_relation_check_capped;
use arfkit_core::{
    ArfValue, BrownValue, EnhancedSpace, Error as CoreError, EvenPresentation, IntLattice,
    QuadraticSpace, Residual, SeifertData, SurfaceData, SurfaceInvariants,
};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Map, Value};

use crate::document::{arf_json, big, brown_json, InputDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Fails = 1,
    InputError = 2,
}

/// The result of one command on one document.
#[derive(Debug, Clone)]
pub struct Report {
    pub status: Status,
    pub lines: Vec<String>,
    pub fields: Map<String, Value>,
}

impl Report {
    fn new(kind: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("kind".into(), Value::from(kind));
        Self {
            status: Status::Ok,
            lines: Vec::new(),
            fields,
        }
    }

    fn put(&mut self, key: &str, value: Value) {
        self.fields.insert(key.into(), value);
    }

    fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    fn verdict(&mut self, key: &str, residual: Residual) {
        self.put(
            key,
            json!({ "holds": residual.holds, "residual": residual.value, "modulus": residual.modulus }),
        );
        if !residual.holds {
            self.status = Status::Fails;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandError {
    WrongKind {
        command: &'static str,
        found: &'static str,
        expected: &'static str,
    },
    Core(CoreError),
    Usage(String),
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CommandError::WrongKind {
                command,
                found,
                expected,
            } => write!(f, "`{command}` does not accept `{found}` documents (expected {expected})"),
            CommandError::Core(CoreError::TooLarge { what, size, cap }) => write!(
                f,
                "{what} {size} exceeds the cap of {cap} (raise ARFKIT_ENUM_CAP to allow it)"
            ),
            CommandError::Core(e) => write!(f, "{e}"),
            CommandError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<CoreError> for CommandError {
    fn from(e: CoreError) -> Self {
        CommandError::Core(e)
    }
}

type Outcome = Result<Report, CommandError>;

fn wrong(command: &'static str, doc: &InputDocument, expected: &'static str) -> CommandError {
    CommandError::WrongKind {
        command,
        found: doc.kind(),
        expected,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn arf_line(arf: ArfValue, what: &str) -> String {
    match arf {
        ArfValue::Infinity => format!("Arf = ∞ ({what} not proper)"),
        a => format!("Arf = {a}"),
    }
}

fn brown_line(name: &str, beta: BrownValue, what: &str) -> String {
    match beta {
        BrownValue::Infinity => format!("{name} = ∞ ({what} not proper)"),
        b => format!("{name} = {b}"),
    }
}

fn quadratic_summary(r: &mut Report, s: &QuadraticSpace) {
    let class = s.classify();
    r.put("dim", Value::from(class.dim));
    r.put("radical_dim", Value::from(class.rad_dim));
    r.put("proper", Value::from(class.arf.is_finite()));
    r.put("arf", arf_json(class.arf));
    r.line(format!("dim = {}", class.dim));
    r.line(format!("radical dim = {}", class.rad_dim));
    r.line(format!("proper = {}", yes_no(class.arf.is_finite())));
}

fn seifert_summary(r: &mut Report, sd: &SeifertData) -> Result<ArfValue, CommandError> {
    let proper = sd.properness()?;
    let arf = sd.arf();
    r.put("size", Value::from(sd.size()));
    r.put("components", Value::from(sd.components()));
    r.put("proper", Value::from(proper));
    r.put("arf", arf_json(arf));
    r.line(format!("Seifert matrix size = {}", sd.size()));
    r.line(format!("components = {}", sd.components()));
    r.line(format!("proper = {}", yes_no(proper)));
    Ok(arf)
}

pub fn arf(doc: &InputDocument) -> Outcome {
    let mut r = Report::new(doc.kind());
    match doc {
        InputDocument::QuadraticSpace(s) => {
            quadratic_summary(&mut r, s);
            r.line(arf_line(s.arf_symplectic(), "space"));
        }
        InputDocument::Seifert(sd) => {
            let a = seifert_summary(&mut r, sd)?;
            r.line(arf_line(a, "link"));
        }
        _ => return Err(wrong("arf", doc, "quadratic_space or seifert")),
    }
    Ok(r)
}

fn enhanced_summary(r: &mut Report, e: &EnhancedSpace, cap: usize) -> Result<BrownValue, CommandError> {
    let counts = e.value_counts(cap)?;
    let gauss = e.gauss_sum(cap)?;
    let by_compass = compass(counts);
    let by_gauss = e.brown_gauss_capped(cap)?;
    if by_compass != by_gauss {
        return Err(CoreError::Internal(format!(
            "compass gives {by_compass} but the Gauss sum gives {by_gauss}"
        ))
        .into());
    }
    r.put("dim", Value::from(e.dim()));
    r.put("radical_dim", Value::from(e.radical().len()));
    r.put("proper", Value::from(e.is_proper()));
    r.put("value_counts", json!(counts));
    r.put("gauss_sum", json!({ "re": gauss.re, "im": gauss.im }));
    r.line(format!("dim = {}", e.dim()));
    r.line(format!("radical dim = {}", e.radical().len()));
    r.line(format!(
        "value counts (e = 0, 1, 2, 3) = {}, {}, {}, {}",
        counts[0], counts[1], counts[2], counts[3]
    ));
    r.line(format!("Gauss sum = {} + {}i", gauss.re, gauss.im));
    Ok(by_gauss)
}

pub fn brown(doc: &InputDocument, cap: usize) -> Outcome {
    let mut r = Report::new(doc.kind());
    match doc {
        InputDocument::EnhancedSpace(e) => {
            let beta = enhanced_summary(&mut r, e, cap)?;
            r.put("beta", brown_json(beta));
            r.line(brown_line("β", beta, "space"));
        }
        InputDocument::QuadraticSpace(s) => {
            let beta = enhanced_summary(&mut r, &EnhancedSpace::from_quadratic(s), cap)?;
            r.put("beta", brown_json(beta));
            r.line(brown_line("β(2q)", beta, "space"));
        }
        InputDocument::Surface(surf) => {
            let beta_s = enhanced_summary(&mut r, &surf.enhanced_space(), cap)?;
            let beta_l = surf.beta_of_link_capped(cap)?;
            r.put("beta_surface", brown_json(beta_s));
            r.put("phi", big(&surf.phi()));
            r.put("beta_link", brown_json(beta_l));
            r.line(brown_line("β(S)", beta_s, "surface"));
            r.line(format!("φ(S) = {}", surf.phi()));
            r.line(brown_line("β(L)", beta_l, "link"));
        }
        InputDocument::Seifert(sd) => {
            let surf = sd.orientable_surface()?;
            seifert_summary(&mut r, sd)?;
            let beta_l = surf.beta_of_link_capped(cap)?;
            r.put("beta_link", brown_json(beta_l));
            r.line(brown_line("β(L)", beta_l, "link"));
        }
        _ => return Err(wrong("brown", doc, "enhanced_space, quadratic_space, surface or seifert")),
    }
    Ok(r)
}

pub fn classify(doc: &InputDocument) -> Outcome {
    let mut r = Report::new(doc.kind());
    let space = match doc {
        InputDocument::QuadraticSpace(s) => s.clone(),
        InputDocument::Seifert(sd) => sd.quadratic_space(),
        _ => return Err(wrong("classify", doc, "quadratic_space or seifert")),
    };
    let class = space.classify();
    quadratic_summary(&mut r, &space);
    r.line(arf_line(class.arf, "space"));
    let name = match class.arf {
        ArfValue::Infinity => format!("improper, radical of dimension {}", class.rad_dim),
        a => format!(
            "{} nondegenerate part of rank {} plus radical of dimension {}",
            if a == ArfValue::Zero { "split" } else { "non-split" },
            class.dim - class.rad_dim,
            class.rad_dim
        ),
    };
    r.put("class", Value::from(name.clone()));
    r.line(format!("class: {name}"));
    Ok(r)
}

fn lattice_of<'a>(command: &'static str, doc: &'a InputDocument) -> Result<&'a IntLattice, CommandError> {
    match doc {
        InputDocument::Lattice(l) => Ok(l),
        InputDocument::EvenPresentation(p) => Ok(p.lattice()),
        _ => Err(wrong(command, doc, "lattice or even_presentation")),
    }
}

fn lattice_summary(r: &mut Report, l: &IntLattice) -> Result<i64, CommandError> {
    let sigma = l.signature()?;
    let det = l.determinant();
    r.put("rank", Value::from(l.rank()));
    r.put("signature", Value::from(sigma));
    r.put("determinant", big(&det));
    r.put("unimodular", Value::from(l.is_unimodular()));
    r.put("even", Value::from(l.is_even()));
    r.line(format!("rank = {}", l.rank()));
    r.line(format!("signature = {sigma}"));
    r.line(format!("determinant = {det}"));
    r.line(format!("unimodular = {}", yes_no(l.is_unimodular())));
    r.line(format!("even = {}", yes_no(l.is_even())));
    Ok(sigma)
}

pub fn signature(doc: &InputDocument) -> Outcome {
    let mut r = Report::new(doc.kind());
    lattice_summary(&mut r, lattice_of("signature", doc)?)?;
    Ok(r)
}

pub fn charvec(doc: &InputDocument) -> Outcome {
    let l = lattice_of("charvec", doc)?;
    let mut r = Report::new(doc.kind());
    lattice_summary(&mut r, l)?;
    let xi = l.characteristic_vector()?;
    let square = l.pair(&xi.xi, &xi.xi)?;
    let holds = l.check_van_der_blij(&xi)?;
    r.put("xi", Value::Array(xi.xi.iter().map(big).collect()));
    r.put("xi_square", big(&square));
    r.put("van_der_blij", Value::from(holds));
    let entries: Vec<String> = xi.xi.iter().map(BigInt::to_string).collect();
    r.line(format!("ξ = ({})", entries.join(", ")));
    r.line(format!("ξ·ξ = {square}"));
    r.line(format!(
        "ξ·ξ ≡ σ mod 8: {}",
        if holds { "holds" } else { "fails" }
    ));
    if !holds {
        r.status = Status::Fails;
    }
    Ok(r)
}

pub fn mu(doc: &InputDocument) -> Outcome {
    let l = lattice_of("mu", doc)?;
    let mut r = Report::new(doc.kind());
    lattice_summary(&mut r, l)?;
    let m = EvenPresentation::new(l.clone())?.mu()?;
    r.put("mu", Value::from(m));
    r.line(format!("μ = {m}"));
    Ok(r)
}

pub fn surgery_mu(doc: &InputDocument, alpha: &BigInt) -> Outcome {
    let InputDocument::Seifert(k) = doc else {
        return Err(wrong("surgery-mu", doc, "seifert (a knot)"));
    };
    let mut r = Report::new(doc.kind());
    let arf = seifert_summary(&mut r, k)?;
    let m = arfkit_core::rochlin::mu_from_surgery(k, alpha)?;
    r.line(arf_line(arf, "knot"));
    r.put("alpha", big(alpha));
    r.put("mu", Value::from(m));
    r.line(format!("α = {alpha}"));
    r.line(format!("μ(S³(K; α)) = {m}"));
    if alpha.abs().is_one() {
        let a = if alpha.is_positive() { 1 } else { -1 };
        let s = build_surgery_scenario(k, a)?;
        let res = verify_relative(&s)?;
        r.put("mu_from_relative", Value::from(s.mu_boundary));
        r.verdict("relative_check", res);
        r.line(format!("μ from the relative congruence = {}", s.mu_boundary));
        r.line(format!("relative congruence: {res}"));
    }
    Ok(r)
}

fn scenario_fields(r: &mut Report, s: &arfkit_core::RelativeScenario) {
    r.put(
        "orientation",
        Value::from(if s.is_orientable() { "orientable" } else { "nonorientable" }),
    );
    r.put("sigma_x", big(&s.sigma_x));
    r.put("f_square", big(&s.f_square));
    r.put("ks", Value::from(s.ks));
    match s.invariants {
        SurfaceInvariants::Orientable { arf_f, arf_boundary } => {
            r.put("arf_f", arf_json(arf_f));
            r.put("arf_boundary", arf_json(arf_boundary));
        }
        SurfaceInvariants::Nonorientable {
            beta_f,
            beta_boundary,
        } => {
            r.put("beta_f", brown_json(beta_f));
            r.put("beta_boundary", brown_json(beta_boundary));
        }
    }
    r.line(format!(
        "{} surface, σ(X) = {}, [F]² = {}, KS = {}",
        if s.is_orientable() { "orientable" } else { "nonorientable" },
        s.sigma_x,
        s.f_square,
        s.ks
    ));
}

pub fn verify_closed_cmd(doc: &InputDocument) -> Outcome {
    let InputDocument::Scenario(s) = doc else {
        return Err(wrong("verify-closed", doc, "scenario"));
    };
    let mut r = Report::new(doc.kind());
    let closed_boundary = s.mu_boundary == 0
        && match s.invariants {
            SurfaceInvariants::Orientable { arf_boundary, .. } => arf_boundary == ArfValue::Zero,
            SurfaceInvariants::Nonorientable { beta_boundary, .. } => {
                beta_boundary == BrownValue::Finite(0)
            }
        };
    if !closed_boundary {
        return Err(CommandError::Usage(
            "verify-closed needs a closed scenario (trivial boundary invariants); use verify-relative"
                .into(),
        ));
    }
    scenario_fields(&mut r, s);
    let res = match s.invariants {
        SurfaceInvariants::Orientable { arf_f, .. } => {
            r.line(format!("Arf(F) = {arf_f}"));
            verify_closed(&s.sigma_x, &s.f_square, arf_f, s.ks)?
        }
        SurfaceInvariants::Nonorientable { beta_f, .. } => {
            r.line(format!("β(F) = {beta_f}"));
            verify_closed_brown(&s.sigma_x, &s.f_square, beta_f, s.ks)?
        }
    };
    r.verdict("verdict", res);
    r.line(format!("closed congruence: {res}"));
    Ok(r)
}

pub fn verify_relative_cmd(doc: &InputDocument) -> Outcome {
    let InputDocument::Scenario(s) = doc else {
        return Err(wrong("verify-relative", doc, "scenario"));
    };
    let mut r = Report::new(doc.kind());
    scenario_fields(&mut r, s);
    r.put("mu_boundary", Value::from(s.mu_boundary));
    match s.invariants {
        SurfaceInvariants::Orientable { arf_f, arf_boundary } => {
            r.line(format!("Arf(F) = {arf_f}, Arf(∂F) = {arf_boundary}, μ(∂X) = {}", s.mu_boundary));
        }
        SurfaceInvariants::Nonorientable {
            beta_f,
            beta_boundary,
        } => {
            r.line(format!("β(F) = {beta_f}, β(∂F) = {beta_boundary}, μ(∂X) = {}", s.mu_boundary));
        }
    }
    let res = verify_relative(s)?;
    r.verdict("verdict", res);
    r.line(format!("relative congruence: {res}"));
    Ok(r)
}

pub fn relation_check(sd: &SeifertData, surf: Option<&SurfaceData>, cap: usize) -> Outcome {
    let mut r = Report::new("seifert");
    let arf = seifert_summary(&mut r, sd)?;
    let derived;
    let surf = match surf {
        Some(s) => s,
        None => {
            derived = sd.orientable_surface()?;
            &derived
        }
    };
    let lk = sd.lk_total()?;
    let beta = surf.beta_of_link_capped(cap)?;
    let holds = arf_beta_relation_check_capped(sd, surf, cap)?;
    r.put("lk_total", big(&lk));
    r.put("beta_link", brown_json(beta));
    r.put("holds", Value::from(holds));
    r.line(arf_line(arf, "link"));
    r.line(format!("lk(L) = {lk}"));
    r.line(brown_line("β(L)", beta, "link"));
    r.line(format!(
        "β(L) ≡ 4·Arf(L) + lk(L) mod 8: {}",
        if holds { "holds" } else { "fails" }
    ));
    if !holds {
        r.status = Status::Fails;
    }
    Ok(r)
}
