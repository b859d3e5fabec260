//! Field spec files: `{"name", "f", "sigmas", "order"?}`.

use nrhw::arith::IntPoly;
use nrhw::numfield::{build_field, cyclotomic_data, quadratic_data};
use nrhw::tensor::TensorSquare;
use nrhw::Int;
use serde::{Deserialize, Serialize};

/// A field spec as read from JSON. `f` lists coefficients constant term
/// first; `sigmas[i]` lists the θ-coordinates of `σ_i(θ)`; `order` is a
/// permutation of `1..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpecFile {
    pub name: String,
    pub f: Vec<i64>,
    pub sigmas: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
}

/// Malformed input, with a location when one is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub source: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{}:{}:{}: {}", self.source, l, c, self.message),
            _ => write!(f, "{}: {}", self.source, self.message),
        }
    }
}

impl FieldSpecFile {
    pub fn parse(source: &str, text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError {
            source: source.to_string(),
            line: Some(e.line()),
            column: Some(e.column()),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Builds the tensor square, applying `order` (1-based) if present.
    pub fn build(&self, source: &str) -> Result<TensorSquare, SpecError> {
        let err = |message: String| SpecError { source: source.to_string(), line: None, column: None, message };
        let f = IntPoly::from_i64s(&self.f);
        let sigmas: Vec<Vec<Int>> = self.sigmas.iter().map(|s| s.iter().map(|&c| Int::from(c)).collect()).collect();
        let gr = build_field(f, &sigmas).map_err(|e| err(e.to_string()))?;
        match &self.order {
            None => Ok(TensorSquare::new(gr)),
            Some(order) => {
                if order.contains(&0) {
                    return Err(err("order entries are 1-based".into()));
                }
                let omega = order.iter().map(|&k| k - 1).collect();
                TensorSquare::with_order(gr, omega).map_err(|e| err(e.to_string()))
            }
        }
    }
}

fn small(c: &Int) -> i64 {
    i64::try_from(c).expect("example coefficients fit in i64")
}

fn from_data(name: String, f: IntPoly, sigmas: Vec<Vec<Int>>) -> FieldSpecFile {
    FieldSpecFile {
        name,
        f: f.coeffs().iter().map(small).collect(),
        sigmas: sigmas.iter().map(|s| s.iter().map(small).collect()).collect(),
        order: None,
    }
}

/// `Z[√d]`; `d` must be squarefree and `2` or `3` mod 4.
pub fn quadratic_spec(d: i64) -> Result<FieldSpecFile, String> {
    nrhw::numfield::quadratic(d).map_err(|e| e.to_string())?;
    let (f, s) = quadratic_data(d);
    Ok(from_data(format!("Z[sqrt({d})]"), f, s))
}

/// `Z[ζ_p]` for an odd prime `p`.
pub fn cyclotomic_spec(p: usize) -> Result<FieldSpecFile, String> {
    nrhw::numfield::cyclotomic(p).map_err(|e| e.to_string())?;
    let (f, s) = cyclotomic_data(p);
    Ok(from_data(format!("Z[zeta_{p}]"), f, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_round_trip() {
        for spec in [quadratic_spec(2).unwrap(), quadratic_spec(-1).unwrap(), cyclotomic_spec(5).unwrap()] {
            let again = FieldSpecFile::parse("x", &spec.to_json()).unwrap();
            assert_eq!(again, spec);
            assert!(again.build("x").is_ok());
        }
        assert!(quadratic_spec(5).is_err());
    }

    #[test]
    fn diagnostics_have_locations() {
        let e = FieldSpecFile::parse("in.json", "{\"name\": \"a\",\n \"f\": [1, x]}").unwrap_err();
        assert_eq!(e.line, Some(2));
        assert!(e.to_string().starts_with("in.json:2:"));
    }

    #[test]
    fn bad_order_is_rejected() {
        let mut s = quadratic_spec(2).unwrap();
        s.order = Some(vec![1, 1]);
        assert!(s.build("x").is_err());
        s.order = Some(vec![2, 1]);
        assert_eq!(s.build("x").unwrap().omega(), &[1, 0]);
    }
}
