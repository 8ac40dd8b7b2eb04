//! Browser bindings. Every export returns a JSON string; failures come
//! back as `{"error": "..."}` rather than a thrown exception.

use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

use montyhall_core::matrix::{eliminate_dominated, PayoffMatrix};
use montyhall_core::report::{self, ReductionReport};
use montyhall_core::simulation::{host_from_pure, simulate as run};
use montyhall_core::{BehavioralConie, BehavioralHost, ConiePure, MontePure, Result};

fn respond<T: serde::Serialize>(result: Result<T>) -> String {
    match result {
        Ok(value) => serde_json::to_string(&value).expect("reports serialize"),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn host(spec: &str) -> Result<BehavioralHost> {
    match spec.trim() {
        "crawl" => Ok(BehavioralHost::crawl()),
        s if s.contains(';') => BehavioralHost::parse(s),
        s => Ok(host_from_pure(s.parse::<MontePure>()?)),
    }
}

fn conie(spec: &str) -> Result<BehavioralConie> {
    match spec.trim() {
        s if s.contains(';') => BehavioralConie::parse(s),
        s => Ok(BehavioralConie::from_pure(s.parse::<ConiePure>()?)),
    }
}

/// Best responses and posteriors against a host given as `"crawl"`, a
/// Monte code, or `"π₁,π₂,π₃;λ₁,λ₂,λ₃"`.
#[wasm_bindgen]
pub fn bayes(host_spec: &str) -> String {
    respond(host(host_spec).and_then(|h| report::bayes_report(&h)))
}

/// The elimination trace down to the 3×3 core.
#[wasm_bindgen]
pub fn reduction() -> String {
    respond(Ok(ReductionReport::from(&eliminate_dominated(&PayoffMatrix::build()))))
}

/// `rounds` seeded plays of `host_spec` against `conie_spec` (a Conie code
/// or `"p₁,p₂,p₃;s*12,…,s*32"`).
#[wasm_bindgen]
pub fn simulate(host_spec: &str, conie_spec: &str, rounds: u32, seed: u32) -> String {
    respond((|| {
        let h = host(host_spec)?;
        let b = conie(conie_spec)?;
        let stats = run(&h, &b, u64::from(rounds), u64::from(seed))?;
        Ok(report::simulation_report(&h, &b, &stats))
    })())
}
