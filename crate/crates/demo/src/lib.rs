//! Browser bindings: factor a number and find its middle prime, sieve a small
//! range for the exact sum, and show the asymptotic constants next to it.

use std::cell::RefCell;
use std::collections::HashMap;

use midprime::expansion::{assemble_constants, predict_s, ExpansionReport};
use midprime::primes::primes_le;
use midprime::sieve::{factorize, isqrt, sum_log_middle, SieveSegment};
use midprime::{NuMode, PrecisionBudget};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest `x` the page will sieve.
pub const MAX_DEMO_X: u64 = 20_000_000;

thread_local! {
    static REPORTS: RefCell<HashMap<NuMode, ExpansionReport>> = RefCell::new(HashMap::new());
}

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn parse_mode(mode: &str) -> Result<NuMode, JsError> {
    mode.parse().map_err(js_err)
}

fn report(mode: NuMode) -> Result<ExpansionReport, JsError> {
    if let Some(r) = REPORTS.with(|m| m.borrow().get(&mode).cloned()) {
        return Ok(r);
    }
    let r = assemble_constants(mode, &PrecisionBudget::default()).map_err(js_err)?;
    REPORTS.with(|m| m.borrow_mut().insert(mode, r.clone()));
    Ok(r)
}

#[derive(Debug, Serialize)]
pub struct MiddleInfo {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
    pub omega: u32,
    pub big_omega: u32,
    pub middle: u64,
}

pub fn middle_info(n: u64, mode: NuMode) -> midprime::Result<MiddleInfo> {
    let base = primes_le(isqrt(n) + 1);
    let seg = SieveSegment::build(n, n + 1, &base)?;
    let f = factorize(n, &seg)?;
    Ok(MiddleInfo {
        n,
        factors: f.factors().to_vec(),
        omega: f.omega(),
        big_omega: f.big_omega(),
        middle: f.middle_prime(mode)?,
    })
}

#[derive(Debug, Serialize)]
pub struct SumComparison {
    pub x: u64,
    pub mode: &'static str,
    pub exact: f64,
    pub odd: f64,
    pub even: f64,
    pub j0: f64,
    pub j1: f64,
    pub ratio_j0: f64,
    pub ratio_j1: f64,
}

pub fn sum_comparison(x: u64, mode: NuMode, rep: &ExpansionReport) -> midprime::Result<SumComparison> {
    if x > MAX_DEMO_X {
        return Err(midprime::Error::Range(format!("the demo sieves at most {MAX_DEMO_X}, got {x}")));
    }
    let s = sum_log_middle(x, mode)?;
    let p = predict_s(x as f64, rep)?;
    Ok(SumComparison {
        x,
        mode: mode.name(),
        exact: s.total(),
        odd: s.odd(),
        even: s.even(),
        j0: p.j0,
        j1: p.j1,
        ratio_j0: s.total() / p.j0,
        ratio_j1: s.total() / p.j1,
    })
}

/// Factorization and middle prime of `n`, as JSON.
#[wasm_bindgen(js_name = middlePrime)]
pub fn middle_prime(n: f64, mode: &str) -> Result<String, JsError> {
    if !(n >= 2.0 && n.fract() == 0.0 && n <= 1e15) {
        return Err(JsError::new("n must be an integer in [2, 1e15]"));
    }
    let info = middle_info(n as u64, parse_mode(mode)?).map_err(js_err)?;
    serde_json::to_string(&info).map_err(js_err)
}

/// Exact `sum log p_m(n)` over `n <= x` against the leading predictions.
#[wasm_bindgen(js_name = sumLogMiddle)]
pub fn sum_log_middle_js(x: f64, mode: &str) -> Result<String, JsError> {
    if !(x >= 2.0 && x.fract() == 0.0) {
        return Err(JsError::new("x must be an integer >= 2"));
    }
    let mode = parse_mode(mode)?;
    let rep = report(mode)?;
    let cmp = sum_comparison(x as u64, mode, &rep).map_err(js_err)?;
    serde_json::to_string(&cmp).map_err(js_err)
}

/// First-order constants for one mode, as JSON.
#[wasm_bindgen]
pub fn constants(mode: &str) -> Result<String, JsError> {
    serde_json::to_string(&report(parse_mode(mode)?)?).map_err(js_err)
}
