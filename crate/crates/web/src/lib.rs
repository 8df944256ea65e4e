//! Browser bindings. Each operation takes variables and ideals as plain text
//! (`"x1 x2 x3"`, `"x1^2, x1*x2"`) and returns a JSON document; the
//! `*_json` functions do the work and are what native tests call.

use serde_json::json;
use transverse::golod::{golod_poincare, verify_golod};
use transverse::ideal::transversality;
use transverse::obstruction::avramov_obstruction;
use transverse::resolution::{minimize_complex, taylor_complex, verify_resolution};
use transverse::{Field, Monomial, MonomialIdeal, Ring};
use wasm_bindgen::prelude::*;

/// Largest homological degree the page will expand a series to.
const MAX_TERMS: usize = 12;

fn tokens(s: &str) -> Vec<String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

fn ring(vars: &str) -> Result<Ring, String> {
    let names = tokens(vars);
    if names.is_empty() {
        return Err("no variables given".into());
    }
    Ring::new(names, Field::Rational).map_err(|e| e.to_string())
}

fn ideal(ring: &Ring, gens: &str, what: &str) -> Result<MonomialIdeal, String> {
    let gens = tokens(gens);
    if gens.is_empty() {
        return Err(format!("{what}: no generators given"));
    }
    MonomialIdeal::parse(ring, &gens).map_err(|e| format!("{what}: {e}"))
}

/// Star product of the minimal resolutions of `R/I` and `R/J`, verified
/// against `IJ`.
pub fn star_resolution_json(vars: &str, left: &str, right: &str) -> Result<String, String> {
    let r = ring(vars)?;
    let (i, j) = (ideal(&r, left, "I")?, ideal(&r, right, "J")?);
    let t = transversality(&i, &j).map_err(|e| e.to_string())?;
    let minimal = |q: &MonomialIdeal| taylor_complex(&r, q).and_then(|c| minimize_complex(&c));
    let star = minimal(&i)
        .and_then(|f| minimal(&j).and_then(|g| f.star_product(&g)))
        .map_err(|e| e.to_string())?;
    let ij = i.product(&j).map_err(|e| e.to_string())?;
    let cert = verify_resolution(&star, &ij, None).map_err(|e| e.to_string())?;
    let betti = star.betti_table().map_err(|e| e.to_string())?;
    let failure = [&cert.valid, &cert.exact, &cert.cokernel]
        .into_iter()
        .find_map(|c| c.detail.clone());
    let doc = json!({
        "product": ij.format(r.names()),
        "transverse": t.transverse,
        "witness": t.witness.map(|w| Monomial::new(w).format(r.names())),
        "totals": betti.totals(),
        "table": betti.render(),
        "resolves": cert.pass(),
        "failure": failure,
    });
    Ok(doc.to_string())
}

/// Poincaré series of `k` over `R/IJ` and the certified Golod ranks.
pub fn golod_series_json(
    vars: &str,
    left: &str,
    right: &str,
    terms: usize,
) -> Result<String, String> {
    let r = ring(vars)?;
    let (i, j) = (ideal(&r, left, "I")?, ideal(&r, right, "J")?);
    let n_max = terms.clamp(1, MAX_TERMS);
    let series = golod_poincare(&r, &i, &j, n_max).map_err(|e| e.to_string())?;
    // building the resolution itself grows quickly, so certify a short prefix
    let cert = verify_golod(&r, &i, &j, n_max.min(4)).map_err(|e| e.to_string())?;
    let doc = json!({
        "series": series.format(),
        "coefficients": series.coefficients,
        "certified_ranks": cert.ranks,
        "certified": cert.pass(),
    });
    Ok(doc.to_string())
}

/// Avramov obstruction table for `R/M` along the regular sequence generating `𝔞`.
pub fn obstruction_table_json(vars: &str, module: &str, sequence: &str) -> Result<String, String> {
    let r = ring(vars)?;
    let (m, a) = (ideal(&r, module, "M")?, ideal(&r, sequence, "a")?);
    let report = avramov_obstruction(&r, &a, &m, None).map_err(|e| e.to_string())?;
    let doc = json!({
        "table": report.render(),
        "rows": report.rows,
        "first_nonzero": report.first_nonzero().map(|row| row.i),
        "well_defined": report.well_defined(),
    });
    Ok(doc.to_string())
}

#[wasm_bindgen]
pub fn star_resolution(vars: &str, left: &str, right: &str) -> Result<String, JsValue> {
    star_resolution_json(vars, left, right).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn golod_series(vars: &str, left: &str, right: &str, terms: usize) -> Result<String, JsValue> {
    golod_series_json(vars, left, right, terms).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn obstruction_table(vars: &str, module: &str, sequence: &str) -> Result<String, JsValue> {
    obstruction_table_json(vars, module, sequence).map_err(|e| JsValue::from_str(&e))
}
