//! Browser demo bindings. Every export takes JSON text and returns JSON
//! text; failures come back as `{"error": "..."}`.

use arfkit_core::enhanced::compass;
use arfkit_core::seifert::arf_beta_relation_check;
use arfkit_core::{
    random, ArfValue, BrownValue, EnhancedSpace, EvenPresentation, IntLattice, SeifertData,
};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest space the demo will enumerate.
pub const DEMO_CAP: usize = 16;

fn arf_json(a: ArfValue) -> Value {
    a.as_bit().map_or_else(|| json!("inf"), |b| json!(b))
}

fn brown_json(b: BrownValue) -> Value {
    b.value().map_or_else(|| json!("inf"), |k| json!(k))
}

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn matrix(text: &str) -> Result<Vec<Vec<i64>>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    serde_json::from_str(text).map_err(|e| format!("matrix: {e}"))
}

fn enhanced_fields(e: &EnhancedSpace) -> Result<Value, String> {
    let counts = e.value_counts(DEMO_CAP).map_err(|e| e.to_string())?;
    let gauss = e.gauss_sum(DEMO_CAP).map_err(|e| e.to_string())?;
    Ok(json!({
        "dim": e.dim(),
        "radical_dim": e.radical().len(),
        "counts": counts,
        "x": counts[0] as i64 - counts[2] as i64,
        "y": counts[1] as i64 - counts[3] as i64,
        "gauss": { "re": gauss.re, "im": gauss.im },
        "beta": brown_json(compass(counts)),
    }))
}

/// Arf, β and the relation check for a Seifert matrix. `lk` may be empty
/// for knots.
pub fn seifert_report(matrix_text: &str, components: usize, lk_text: &str) -> Result<Value, String> {
    let big = |m: Vec<Vec<i64>>| -> Vec<Vec<BigInt>> {
        m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
    };
    let v = big(matrix(matrix_text)?);
    let lk = if lk_text.trim().is_empty() {
        None
    } else {
        Some(big(matrix(lk_text).map_err(|e| format!("lk {e}"))?))
    };
    let sd = SeifertData::new(v, components, lk).map_err(|e| e.to_string())?;
    let proper = sd.properness().map_err(|e| e.to_string())?;
    let surf = sd.orientable_surface().map_err(|e| e.to_string())?;
    let beta = surf.beta_of_link_capped(DEMO_CAP).map_err(|e| e.to_string())?;
    let holds = if sd.size() <= DEMO_CAP {
        arf_beta_relation_check(&sd, &surf).map_err(|e| e.to_string())?
    } else {
        false
    };
    Ok(json!({
        "size": sd.size(),
        "components": sd.components(),
        "proper": proper,
        "arf": arf_json(sd.arf()),
        "lk_total": sd.lk_total().map_err(|e| e.to_string())?.to_string(),
        "beta_link": brown_json(beta),
        "relation_holds": holds,
        "surface": enhanced_fields(&surf.enhanced_space())?,
    }))
}

/// Counts, Gauss sum and β for an enhanced space.
pub fn compass_report(gram_text: &str, evals_text: &str) -> Result<Value, String> {
    let gram: Vec<Vec<u8>> = if gram_text.trim().is_empty() {
        Vec::new()
    } else {
        serde_json::from_str(gram_text).map_err(|e| format!("gram: {e}"))?
    };
    let evals: Vec<u8> = if evals_text.trim().is_empty() {
        Vec::new()
    } else {
        serde_json::from_str(evals_text).map_err(|e| format!("evals: {e}"))?
    };
    let e = EnhancedSpace::from_u8s(&gram, &evals).map_err(|e| e.to_string())?;
    let mut fields = enhanced_fields(&e)?;
    let check = e.brown_gauss_capped(DEMO_CAP).map_err(|e| e.to_string())?;
    fields["beta_gauss"] = brown_json(check);
    Ok(fields)
}

/// Signature, characteristic vector and, for even unimodular forms, μ.
pub fn lattice_report(matrix_text: &str) -> Result<Value, String> {
    let l = IntLattice::from_i64s(&matrix(matrix_text)?).map_err(|e| e.to_string())?;
    let sigma = l.signature().map_err(|e| e.to_string())?;
    let mut out = json!({
        "rank": l.rank(),
        "signature": sigma,
        "determinant": l.determinant().to_string(),
        "unimodular": l.is_unimodular(),
        "even": l.is_even(),
    });
    if l.is_unimodular() {
        let xi = l.characteristic_vector().map_err(|e| e.to_string())?;
        let square = l.pair(&xi.xi, &xi.xi).map_err(|e| e.to_string())?;
        out["xi"] = json!(xi.xi.iter().map(BigInt::to_string).collect::<Vec<_>>());
        out["xi_square"] = json!(square.to_string());
        out["van_der_blij"] = json!(l.check_van_der_blij(&xi).map_err(|e| e.to_string())?);
        if l.is_even() {
            let mu = EvenPresentation::new(l).and_then(|p| p.mu()).map_err(|e| e.to_string())?;
            out["mu"] = json!(mu);
        }
    }
    Ok(out)
}

/// A random knot Seifert matrix, reproducible from `seed`.
pub fn random_knot_matrix(seed: u32, max_size: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(seed));
    let k = random::knot(&mut rng, max_size.clamp(2, DEMO_CAP), 3);
    k.matrix()
        .iter()
        .map(|r| r.iter().map(|x| i64::try_from(x).expect("entries are small")).collect())
        .collect()
}

#[wasm_bindgen]
pub fn seifert(matrix_text: &str, components: u32, lk_text: &str) -> String {
    respond(seifert_report(matrix_text, components as usize, lk_text))
}

#[wasm_bindgen]
pub fn brown_compass(gram_text: &str, evals_text: &str) -> String {
    respond(compass_report(gram_text, evals_text))
}

#[wasm_bindgen]
pub fn lattice(matrix_text: &str) -> String {
    respond(lattice_report(matrix_text))
}

#[wasm_bindgen]
pub fn random_knot(seed: u32, max_size: u32) -> String {
    json!(random_knot_matrix(seed, max_size as usize)).to_string()
}
