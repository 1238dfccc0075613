//! The JSON algebra definition file.
//!
//! ```json
//! {
//!   "dim": 4,
//!   "ring": "Q",
//!   "params": { "a": "0", "n11": "1" },
//!   "B": [["1", "a", "n11", "0"], ["0", "-1", "0", "0"], ["0", "0", "1", "a"], ["0", "0", "0", "-1"]],
//!   "elements": { "f": "1/2 + 2/5*e1 + 3/10*e1^e2" }
//! }
//! ```
//!
//! Matrix entries are rational strings, parameter names (optionally prefixed by
//! `-`), or `{"re": .., "im": ..}` objects in `Q(i)` mode. A `car` block
//! `{"n": 2, "A": [[..]]}` replaces `B` by the index-doubled form.

use std::collections::BTreeMap;
use std::path::Path;

use qcliff::forms::split_form_with_limit;
use qcliff::reps::{build_car, CarContext};
use qcliff::text::parse_in_dim;
use qcliff::{Error, FormContext, Multivector, Ring, Scalar};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Text(String),
    Complex { re: String, im: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarBlock {
    pub n: usize,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<Entry>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default = "default_ring")]
    pub ring: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, Entry>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub car: Option<CarBlock>,
}

fn default_ring() -> String {
    "Q".into()
}

impl AlgebraSpecFile {
    pub fn from_json(src: &str) -> Result<Self, CliError> {
        serde_json::from_str(src).map_err(|e| CliError::Input(format!("spec file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&src)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files serialize")
    }

    pub fn ring(&self) -> Result<Ring, CliError> {
        match self.ring.as_str() {
            "Q" => Ok(Ring::Rational),
            "Q(i)" => Ok(Ring::GaussianRational),
            other => Err(CliError::Input(format!(
                "ring must be \"Q\" or \"Q(i)\", got {other:?}"
            ))),
        }
    }

    fn scalar(&self, entry: &Entry) -> Result<Scalar, CliError> {
        match entry {
            Entry::Text(s) => self.text_value(s),
            Entry::Complex { re, im } => {
                let re = self.text_value(re)?;
                let im = self.text_value(im)?;
                Ok(&re + &(&im * &Scalar::i()))
            }
        }
    }

    fn text_value(&self, s: &str) -> Result<Scalar, CliError> {
        let t = s.trim();
        let (negate, name) = match t.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, t),
        };
        if let Some(entry) = self.params.get(name) {
            if matches!(entry, Entry::Text(v) if v.trim() == name) {
                return Err(CliError::Input(format!("parameter {name} refers to itself")));
            }
            let v = self.scalar(entry)?;
            return Ok(if negate { -v } else { v });
        }
        t.parse::<Scalar>().map_err(CliError::from)
    }

    fn matrix(&self, rows: &[Vec<Entry>]) -> Result<Vec<Vec<Scalar>>, CliError> {
        rows.iter()
            .map(|row| row.iter().map(|e| self.scalar(e)).collect())
            .collect()
    }

    /// Overrides (or adds) a parameter value.
    pub fn with_param(&self, name: &str, value: &Scalar) -> Self {
        let mut out = self.clone();
        let entry = if value.is_real() {
            Entry::Text(value.to_text())
        } else {
            Entry::Complex {
                re: Scalar::from_rational(value.re().clone()).to_text(),
                im: Scalar::from_rational(value.im().clone()).to_text(),
            }
        };
        out.params.insert(name.to_string(), entry);
        out
    }

    pub fn load(&self, max_dim: usize) -> Result<Algebra, CliError> {
        let ring = self.ring()?;
        let (ctx, car) = match (&self.car, &self.b) {
            (Some(_), Some(_)) => {
                return Err(CliError::Input("give either B or a car block, not both".into()))
            }
            (None, None) => return Err(CliError::Input("missing B".into())),
            (None, Some(b)) => {
                let m = self.matrix(b)?;
                (split_form_with_limit(m, ring, max_dim)?, None)
            }
            (Some(block), None) => {
                let dim = 2 * block.n;
                if dim > max_dim {
                    return Err(Error::DimensionTooLarge { dim, max: max_dim }.into());
                }
                let a = match &block.a {
                    Some(rows) => self.matrix(rows)?,
                    None => qcliff::linalg::zeros(dim, dim),
                };
                let car = build_car(block.n, &a)?;
                (car.ctx().clone(), Some(car))
            }
        };
        if let Some(d) = self.dim {
            if d != ctx.dim() {
                return Err(CliError::Input(format!(
                    "dim is {d} but the form is {}x{}",
                    ctx.dim(),
                    ctx.dim()
                )));
            }
        }
        let mut elements = BTreeMap::new();
        for (name, src) in &self.elements {
            let u = parse_in_dim(src, ctx.dim())?;
            ctx.check_fits(&u)?;
            elements.insert(name.clone(), u);
        }
        Ok(Algebra { ctx, car, elements })
    }
}

/// A loaded spec file.
pub struct Algebra {
    pub ctx: FormContext,
    pub car: Option<CarContext>,
    pub elements: BTreeMap<String, Multivector>,
}

impl Algebra {
    /// A named element of the spec file, or multivector text.
    pub fn element(&self, arg: &str) -> Result<Multivector, CliError> {
        if let Some(u) = self.elements.get(arg.trim()) {
            return Ok(u.clone());
        }
        let u = parse_in_dim(arg, self.ctx.dim())?;
        self.ctx.check_fits(&u)?;
        Ok(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BLOCK: &str = r#"{
        "dim": 4,
        "params": {"a": "0", "n11": "1"},
        "B": [["1", "a", "n11", "0"], ["0", "-1", "0", "0"], ["0", "0", "1", "a"], ["0", "0", "0", "-1"]],
        "elements": {"f": "1/2 + 2/5*e1 + 3/10*e1^e2"}
    }"#;

    #[test]
    fn parse_print_parse() {
        let spec = AlgebraSpecFile::from_json(BLOCK).unwrap();
        let again = AlgebraSpecFile::from_json(&spec.to_json()).unwrap();
        assert_eq!(spec, again);
    }

    #[test]
    fn params_and_negation() {
        let spec = AlgebraSpecFile::from_json(BLOCK).unwrap();
        let alg = spec.load(12).unwrap();
        assert_eq!(alg.ctx.b()[0][2], Scalar::from_int(1));
        let spec = spec.with_param("a", &Scalar::frac(-1, 2));
        let alg = spec.load(12).unwrap();
        assert_eq!(alg.ctx.b()[0][1], Scalar::frac(-1, 2));
        assert_eq!(alg.element("f").unwrap().len(), 3);
        assert_eq!(alg.element("e1 + e4").unwrap().len(), 2);
        assert!(alg.element("e5").is_err());
    }

    #[test]
    fn complex_entries_need_gaussian_ring() {
        let src = r#"{"B": [["1", {"re": "0", "im": "1/2"}], [{"re": "0", "im": "-1/2"}, "-1"]]}"#;
        assert!(AlgebraSpecFile::from_json(src).unwrap().load(12).is_err());
        let src = src.replacen('{', r#"{"ring": "Q(i)", "#, 1);
        let alg = AlgebraSpecFile::from_json(&src).unwrap().load(12).unwrap();
        assert_eq!(alg.ctx.a()[0][1], Scalar::frac(1, 2) * Scalar::i());
    }

    #[test]
    fn malformed_input() {
        assert!(AlgebraSpecFile::from_json(r#"{"B": [["1/0"]]}"#).unwrap().load(12).is_err());
        assert!(AlgebraSpecFile::from_json(r#"{"B": [["x"]]}"#).unwrap().load(12).is_err());
        assert!(AlgebraSpecFile::from_json(r#"{"B": [["1"]], "extra": 1}"#).is_err());
        let big = AlgebraSpecFile::from_json(r#"{"car": {"n": 7}}"#).unwrap();
        assert!(matches!(big.load(12), Err(CliError::Input(_))));
    }
}
