//! Text rendering and JSON interchange for series.
//!
//! Text output lists terms in ascending canonical (lexicographic) order —
//! for a two-variable series that is ascending `t`-degree, then ascending
//! `q`-degree — with `1*` and `^1` elided, e.g. `1 + 2*t^2*q + 8*t^5*q^4`.
//!
//! The JSON form records the variable set, the truncation order, and the
//! term list with decimal-string coefficients:
//! `{"vars":["t","q"],"qmax":7,"terms":[{"e":{"t":2,"q":1},"c":"3"}]}`.
//! Per-variable caps are a computation artifact and are deliberately not
//! serialized; deserialized series therefore carry cap-less specs.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use super::{Coeff, ExpVec, Series, TruncationSpec, Var};
use crate::error::{Error, Result};

/// Renders a bare monomial like `t^2*q` (empty exponents give `1`).
pub(crate) fn monomial_string(e: &ExpVec) -> String {
    let mut parts = Vec::new();
    for (v, k) in e.nonzero() {
        if k == 1 {
            parts.push(v.name().to_string());
        } else {
            parts.push(format!("{}^{}", v.name(), k));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            let mono = monomial_string(&e);
            if mono == "1" {
                write!(f, "{mag}")?;
            } else if num_traits::One::is_one(&mag) {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Series {
    /// Serializes to the JSON interchange form (canonical key order,
    /// decimal-string coefficients, caps dropped).
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\"vars\":[");
        for (i, v) in self.spec().vars().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('"');
            out.push_str(v.name());
            out.push('"');
        }
        out.push_str("],\"qmax\":");
        out.push_str(&self.spec().qmax().to_string());
        out.push_str(",\"terms\":[");
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("{\"e\":{");
            for (j, (v, k)) in e.nonzero().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push('"');
                out.push_str(v.name());
                out.push_str("\":");
                out.push_str(&k.to_string());
            }
            out.push_str("},\"c\":\"");
            out.push_str(&c.to_string());
            out.push_str("\"}");
        }
        out.push_str("]}");
        out
    }

    /// Parses the JSON interchange form produced by [`Series::to_json`].
    /// Terms beyond the recorded truncation are dropped, matching ordinary
    /// truncation semantics.
    pub fn from_json(text: &str) -> Result<Series> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Malformed("expected a JSON object".into()))?;
        let vars_json = obj
            .get("vars")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Malformed("missing \"vars\" array".into()))?;
        let mut vars = Vec::new();
        for v in vars_json {
            let name = v
                .as_str()
                .ok_or_else(|| Error::Malformed("variable names must be strings".into()))?;
            let var = Var::parse(name)
                .ok_or_else(|| Error::Malformed(format!("unknown variable {name:?}")))?;
            vars.push(var);
        }
        let qmax = obj
            .get("qmax")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Malformed("missing integer \"qmax\"".into()))?;
        let spec = TruncationSpec::new(qmax as u32, &vars);
        let terms_json = obj
            .get("terms")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Malformed("missing \"terms\" array".into()))?;
        let mut terms = Vec::new();
        for term in terms_json {
            let term = term
                .as_object()
                .ok_or_else(|| Error::Malformed("terms must be objects".into()))?;
            let exps = term
                .get("e")
                .and_then(|v| v.as_object())
                .ok_or_else(|| Error::Malformed("term missing \"e\" object".into()))?;
            let mut e = ExpVec::ZERO;
            for (name, k) in exps {
                let var = Var::parse(name)
                    .ok_or_else(|| Error::Malformed(format!("unknown variable {name:?}")))?;
                let k = k
                    .as_i64()
                    .ok_or_else(|| Error::Malformed("exponents must be integers".into()))?;
                e = e.with(var, k as i32);
            }
            let c = term
                .get("c")
                .and_then(|v| v.as_str())
                .ok_or_else(|| Error::Malformed("term missing string \"c\"".into()))?;
            let c = Coeff::from_str(c)
                .map_err(|_| Error::Malformed(format!("bad coefficient {c:?}")))?;
            terms.push((e, c));
        }
        Series::from_terms(&spec, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_elides_units_and_orders_terms() {
        let spec = TruncationSpec::new(6, &[Var::T]);
        let f = Series::from_terms(
            &spec,
            [
                (ExpVec::of(&[(Var::T, 5), (Var::Q, 4)]), Coeff::from(8)),
                (ExpVec::of(&[(Var::T, 1)]), Coeff::from(1)),
                (ExpVec::of(&[(Var::T, 2), (Var::Q, 1)]), Coeff::from(-3)),
            ],
        )
        .unwrap();
        assert_eq!(f.to_string(), "t - 3*t^2*q + 8*t^5*q^4");
        assert_eq!(Series::zero(&spec).to_string(), "0");
    }

    #[test]
    fn json_round_trips_and_keeps_canonical_order() {
        let spec = TruncationSpec::new(7, &[Var::T]);
        let f = Series::from_terms(
            &spec,
            [
                (ExpVec::of(&[(Var::T, 2), (Var::Q, 1)]), Coeff::from(3)),
                (ExpVec::ZERO, Coeff::from(1)),
            ],
        )
        .unwrap();
        let json = f.to_json();
        assert_eq!(
            json,
            "{\"vars\":[\"t\",\"q\"],\"qmax\":7,\"terms\":[{\"e\":{},\"c\":\"1\"},{\"e\":{\"t\":2,\"q\":1},\"c\":\"3\"}]}"
        );
        let back = Series::from_json(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn json_reports_malformed_input() {
        assert!(Series::from_json("{").is_err());
        assert!(Series::from_json("{\"vars\":[\"b\"],\"qmax\":2,\"terms\":[]}").is_err());
    }
}
