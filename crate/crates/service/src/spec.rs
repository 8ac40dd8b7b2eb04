//! Decoding of host and matrix specifications in request bodies.
//!
//! Rationals may be sent as `"a/b"` strings, decimal strings or JSON
//! numbers.

use serde_json::Value;

use montyhall_core::mixed::MixedMonte;
use montyhall_core::rational::{self, Rational};
use montyhall_core::simulation::host_from_pure;
use montyhall_core::solvers::{BehavioralHost, HostPayoffMatrix};
use montyhall_core::MontePure;

use crate::error::ApiError;

pub fn rational_of(value: &Value) -> Result<Rational, ApiError> {
    match value {
        Value::String(s) => Ok(rational::parse(s)?),
        Value::Number(n) => Ok(rational::parse(&n.to_string())?),
        other => Err(ApiError::parse(format!("expected a rational, found {other}"))),
    }
}

pub fn rationals_of(value: &Value, what: &str) -> Result<Vec<Rational>, ApiError> {
    match value {
        Value::Array(items) => items.iter().map(rational_of).collect(),
        Value::String(s) => Ok(rational::parse_list(s)?),
        _ => Err(ApiError::parse(format!("{what} must be a list of rationals"))),
    }
}

/// A host given as one of
///
/// * `"crawl"`, a Monte code such as `"12"`, or `"π₁,π₂,π₃;λ₁,λ₂,λ₃"`;
/// * `{"pi": [...], "lambda": [...]}`;
/// * `{"mixed": [six weights]}` or `{"pure": "12"}`.
pub fn host_of(value: &Value) -> Result<BehavioralHost, ApiError> {
    match value {
        Value::String(s) => {
            let s = s.trim();
            if s == "crawl" {
                Ok(BehavioralHost::crawl())
            } else if s.contains(';') {
                Ok(BehavioralHost::parse(s)?)
            } else {
                Ok(host_from_pure(s.parse::<MontePure>()?))
            }
        }
        Value::Object(fields) => {
            if let Some(pi) = fields.get("pi") {
                let lambda = fields
                    .get("lambda")
                    .ok_or_else(|| ApiError::invalid_distribution("a host with pi needs lambda"))?;
                Ok(BehavioralHost::from_vecs(
                    rationals_of(pi, "pi")?,
                    rationals_of(lambda, "lambda")?,
                )?)
            } else if let Some(mixed) = fields.get("mixed") {
                let q = MixedMonte::new(rationals_of(mixed, "mixed")?)?;
                Ok(BehavioralHost::from_mixed(&q))
            } else if let Some(Value::String(code)) = fields.get("pure") {
                Ok(host_from_pure(code.parse::<MontePure>()?))
            } else {
                Err(ApiError::parse("host needs pi and lambda, mixed, or pure"))
            }
        }
        other => Err(ApiError::parse(format!("unrecognized host {other}"))),
    }
}

/// Monte's payoff matrix: a preset name (`"antagonistic"`, `"sympathetic"`,
/// `"indifferent"`), a text table, a structured document or a bare grid.
pub fn host_matrix_of(value: &Value) -> Result<HostPayoffMatrix, ApiError> {
    match value {
        Value::String(s) => match s.trim() {
            "antagonistic" | "-C" => Ok(HostPayoffMatrix::antagonistic()),
            "sympathetic" | "C" => Ok(HostPayoffMatrix::sympathetic()),
            "indifferent" | "0" => Ok(HostPayoffMatrix::indifferent()),
            text => Ok(HostPayoffMatrix::parse(text)?),
        },
        Value::Array(_) | Value::Object(_) => Ok(HostPayoffMatrix::from_json(&value.to_string())?),
        other => Err(ApiError::parse(format!("unrecognized payoff matrix {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use montyhall_core::rational::ratio;
    use serde_json::json;

    #[test]
    fn hosts_in_every_form() {
        assert!(host_of(&json!("crawl")).unwrap().is_crawl());
        let h = host_of(&json!({"pi": ["1/2", 0.3, "1/5"], "lambda": [1, 1, 1]})).unwrap();
        assert_eq!(h.pi()[1], ratio(3, 10));
        let h = host_of(&json!("1/3,1/3,1/3;1/2,1/2,1/2")).unwrap();
        assert_eq!(h.lambda()[0], ratio(1, 2));
        let h = host_of(&json!({"pure": "23"})).unwrap();
        assert_eq!(h.pi()[1], ratio(1, 1));
        let h = host_of(&json!({"mixed": "1/3,0,1/3,0,1/3,0"})).unwrap();
        assert!(h.is_crawl());
    }

    #[test]
    fn bad_hosts_carry_codes() {
        let e = host_of(&json!({"pi": [0.3, 0.3, 0.3], "lambda": [0.5, 0.5, 0.5]})).unwrap_err();
        assert_eq!(e.code, "invalid-distribution");
        let e = host_of(&json!({"pi": ["1/x", 0, 0], "lambda": [0, 0, 0]})).unwrap_err();
        assert_eq!(e.code, "parse-error");
        assert_eq!(host_of(&json!(3)).unwrap_err().code, "parse-error");
    }

    #[test]
    fn matrices_in_every_form() {
        let c = HostPayoffMatrix::sympathetic();
        assert_eq!(host_matrix_of(&json!("C")).unwrap(), c);
        assert_eq!(host_matrix_of(&json!(c.to_table())).unwrap(), c);
        assert_eq!(host_matrix_of(&serde_json::to_value(c.to_document()).unwrap()).unwrap(), c);
        assert_eq!(host_matrix_of(&json!("0 0")).unwrap_err().code, "parse-error");
    }
}
