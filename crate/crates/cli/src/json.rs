//! Deterministic JSON for the domain types, and the inverse parsers.
//!
//! Rationals are strings `"p/q"` (or `"p"`), Gaussian rationals `{"re","im"}`,
//! `τ`-polynomials columnar `{"tau_exp":[..],"re":[..],"im":[..]}` in ascending
//! exponent order, series `{"valuation","order","coeffs"}` with coefficients
//! from the valuation upward, partitions arrays of parts.

use std::str::FromStr;

use hodge_core::algebra::{GaussianRational, LambdaSeries, TauPoly};
use hodge_core::report::{Failure, Report};
use hodge_core::Partition;
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub what: &'static str,
    pub detail: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid {}: {}", self.what, self.detail)
    }
}

impl std::error::Error for ParseError {}

fn err(what: &'static str, v: &Value) -> ParseError {
    ParseError { what, detail: v.to_string() }
}

pub fn rational(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

pub fn gaussian(c: &GaussianRational) -> Value {
    json!({ "re": rational(&c.re), "im": rational(&c.im) })
}

pub fn tau_poly(p: &TauPoly) -> Value {
    let terms: Vec<(i32, &GaussianRational)> = p.terms().collect();
    json!({
        "tau_exp": terms.iter().map(|(e, _)| *e).collect::<Vec<_>>(),
        "re": terms.iter().map(|(_, c)| rational(&c.re)).collect::<Vec<_>>(),
        "im": terms.iter().map(|(_, c)| rational(&c.im)).collect::<Vec<_>>(),
    })
}

pub fn series(s: &LambdaSeries) -> Value {
    json!({
        "valuation": s.valuation().unwrap_or(0),
        "order": s.order(),
        "coeffs": s.raw_coeffs().iter().map(tau_poly).collect::<Vec<_>>(),
    })
}

pub fn partition(p: &Partition) -> Value {
    json!(p.parts())
}

fn failure(f: &Failure) -> Value {
    json!({
        "key": f.key,
        "lambda_exp": f.lambda_exp,
        "tau_exp": f.tau_exp,
        "expected": f.expected,
        "actual": f.actual,
    })
}

pub fn report(r: &Report) -> Value {
    json!({
        "name": r.name,
        "passed": r.passed(),
        "checks": r.checks,
        "failed": r.failure_count,
        "first_failure": r.first_failure().map(failure),
        "failures": r.failures.iter().map(failure).collect::<Vec<_>>(),
        "skipped": r.skipped.iter().map(|(k, why)| json!({ "key": k, "reason": why })).collect::<Vec<_>>(),
    })
}

pub fn parse_rational(v: &Value) -> Result<BigRational, ParseError> {
    v.as_str()
        .and_then(|s| BigRational::from_str(s).ok())
        .ok_or_else(|| err("rational", v))
}

pub fn parse_gaussian(v: &Value) -> Result<GaussianRational, ParseError> {
    let re = parse_rational(v.get("re").ok_or_else(|| err("gaussian rational", v))?)?;
    let im = parse_rational(v.get("im").ok_or_else(|| err("gaussian rational", v))?)?;
    Ok(GaussianRational::new(re, im))
}

fn array<'a>(v: &'a Value, key: &str, what: &'static str) -> Result<&'a Vec<Value>, ParseError> {
    v.get(key).and_then(Value::as_array).ok_or_else(|| err(what, v))
}

pub fn parse_tau_poly(v: &Value) -> Result<TauPoly, ParseError> {
    let exps = array(v, "tau_exp", "tau polynomial")?;
    let re = array(v, "re", "tau polynomial")?;
    let im = array(v, "im", "tau polynomial")?;
    if exps.len() != re.len() || exps.len() != im.len() {
        return Err(err("tau polynomial", v));
    }
    let mut terms = Vec::with_capacity(exps.len());
    for ((e, r), i) in exps.iter().zip(re).zip(im) {
        let e = e.as_i64().and_then(|e| i32::try_from(e).ok()).ok_or_else(|| err("tau exponent", e))?;
        terms.push((e, GaussianRational::new(parse_rational(r)?, parse_rational(i)?)));
    }
    Ok(TauPoly::from_terms(terms))
}

fn int_field(v: &Value, key: &str) -> Result<i32, ParseError> {
    v.get(key)
        .and_then(Value::as_i64)
        .and_then(|x| i32::try_from(x).ok())
        .ok_or_else(|| err("series", v))
}

pub fn parse_series(v: &Value) -> Result<LambdaSeries, ParseError> {
    let valuation = int_field(v, "valuation")?;
    let order = int_field(v, "order")?;
    let coeffs = array(v, "coeffs", "series")?.iter().map(parse_tau_poly).collect::<Result<Vec<_>, _>>()?;
    Ok(LambdaSeries::from_coeffs(valuation, coeffs, order))
}

pub fn parse_partition(v: &Value) -> Result<Partition, ParseError> {
    let parts = v
        .as_array()
        .ok_or_else(|| err("partition", v))?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| err("partition part", x)))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(parts).map_err(|e| ParseError { what: "partition", detail: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hodge_core::algebra::rat;

    #[test]
    fn scalars() {
        assert_eq!(rational(&rat(1, 2)), json!("1/2"));
        assert_eq!(rational(&rat(-3, 1)), json!("-3"));
        assert_eq!(partition(&"2,1".parse().unwrap()), json!([2, 1]));
        assert_eq!(partition(&Partition::empty()), json!([]));
        assert_eq!(gaussian(&GaussianRational::i()), json!({"re": "0", "im": "1"}));
    }

    #[test]
    fn zero_series() {
        let z = series(&LambdaSeries::zero(8));
        assert_eq!(z.to_string(), r#"{"valuation":0,"order":8,"coeffs":[]}"#);
        assert_eq!(parse_series(&z).unwrap(), LambdaSeries::zero(8));
    }

    #[test]
    fn columnar_tau_poly() {
        let p = TauPoly::from_terms([(0, GaussianRational::imag(rat(1, 4))), (1, GaussianRational::imag(rat(1, 2)))]);
        let v = tau_poly(&p);
        assert_eq!(v.to_string(), r#"{"tau_exp":[0,1],"re":["0","0"],"im":["1/4","1/2"]}"#);
        assert_eq!(parse_tau_poly(&v).unwrap(), p);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational(&json!(0.5)).is_err());
        assert!(parse_partition(&json!([2, 0])).is_err());
        assert!(parse_tau_poly(&json!({"tau_exp": [0], "re": [], "im": []})).is_err());
        assert!(parse_series(&json!({"valuation": 0})).is_err());
    }
}
