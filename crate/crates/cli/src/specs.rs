//! Strategy specs accepted on the command line.

use montyhall_core::mixed::{MixedConie, MixedMonte};
use montyhall_core::simulation::{host_from_pure, BehavioralConie};
use montyhall_core::solvers::{BehavioralHost, HostPayoffMatrix};
use montyhall_core::{ConiePure, MontePure, Result};

/// `crawl`, a Monte code like `12`, `mixed:w₁,…,w₆`, or
/// `[behavioral:]π₁,π₂,π₃;λ₁,λ₂,λ₃`.
pub fn host(spec: &str) -> Result<BehavioralHost> {
    let spec = spec.trim();
    if spec == "crawl" {
        return Ok(BehavioralHost::crawl());
    }
    if let Some(weights) = spec.strip_prefix("mixed:") {
        return Ok(BehavioralHost::from_mixed(&MixedMonte::parse(weights)?));
    }
    let spec = spec.strip_prefix("behavioral:").unwrap_or(spec);
    if spec.contains(';') {
        BehavioralHost::parse(spec)
    } else {
        Ok(host_from_pure(spec.parse::<MontePure>()?))
    }
}

/// `uniform` (every plan equally likely), a Conie code like `2sm`,
/// `mixed:w₁,…,w₁₂`, or `[behavioral:]p₁,p₂,p₃;s*12,…,s*32`.
pub fn conie(spec: &str) -> Result<BehavioralConie> {
    let spec = spec.trim();
    if spec == "uniform" {
        return Ok(BehavioralConie::from_mixed(&MixedConie::uniform()));
    }
    if let Some(weights) = spec.strip_prefix("mixed:") {
        return Ok(BehavioralConie::from_mixed(&MixedConie::parse(weights)?));
    }
    let spec = spec.strip_prefix("behavioral:").unwrap_or(spec);
    if spec.contains(';') {
        BehavioralConie::parse(spec)
    } else {
        Ok(BehavioralConie::from_pure(spec.parse::<ConiePure>()?))
    }
}

/// A named Monte payoff matrix.
pub fn preset(name: &str) -> Option<HostPayoffMatrix> {
    match name {
        "antagonistic" | "-C" => Some(HostPayoffMatrix::antagonistic()),
        "sympathetic" | "C" => Some(HostPayoffMatrix::sympathetic()),
        "indifferent" | "0" => Some(HostPayoffMatrix::indifferent()),
        _ => None,
    }
}
