//! Scenario files: which suites to run, at what size, with which forms.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use lcourant::serial::FormRecord;
use lcourant::{AtiyahForm, SampleParams, INF};
use serde::Deserialize;

use crate::suites::SUITES;

/// A scenario exactly as written on disk.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub n: usize,
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_max_degree")]
    pub max_degree: u32,
    #[serde(default = "default_coeff_bound")]
    pub coeff_bound: i64,
    #[serde(default)]
    pub forms: BTreeMap<String, FormRecord>,
    #[serde(default)]
    pub sabotage: Sabotage,
}

fn default_samples() -> usize {
    10
}

fn default_max_degree() -> u32 {
    1
}

fn default_coeff_bound() -> i64 {
    3
}

/// Deliberate breakage used to confirm that a suite can fail.
#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Sabotage {
    /// Replace `l3` of the two-term algebras by zero.
    #[serde(default)]
    pub drop_l3: bool,
    /// Replace `φ2` of the morphisms by zero.
    #[serde(default)]
    pub drop_phi2: bool,
}

/// A validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub n: usize,
    pub suites: Vec<String>,
    pub samples: usize,
    pub seed: u64,
    pub max_degree: u32,
    pub coeff_bound: i64,
    pub forms: BTreeMap<String, AtiyahForm>,
    pub sabotage: Sabotage,
}

/// A rejected scenario, naming the offending field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl InputError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.field, self.message)
        }
    }
}

impl std::error::Error for InputError {}

/// Upper bound on `n`; beyond it a single case can take minutes.
pub const MAX_VARS: usize = 4;

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError::new("", format!("cannot read {}: {e}", path.display())))?;
        Scenario::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ScenarioFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner().to_string();
            // A missing field is reported by name, one level below the path.
            let named = inner.split('`').nth(1).filter(|_| inner.contains("field ")).map(str::to_string);
            let field = match (path.as_str(), named) {
                (".", Some(f)) => f,
                (p, Some(f)) if inner.starts_with("missing") => format!("{p}.{f}"),
                (".", None) => String::new(),
                (p, _) => p.to_string(),
            };
            InputError::new(field, inner)
        })?;
        Scenario::validate(file)
    }

    pub fn validate(file: ScenarioFile) -> Result<Self, InputError> {
        if file.n == 0 || file.n > MAX_VARS {
            return Err(InputError::new("n", format!("expected 1..={MAX_VARS}, got {}", file.n)));
        }
        if file.suites.is_empty() {
            return Err(InputError::new("suites", "no suites"));
        }
        for name in &file.suites {
            let Some(spec) = SUITES.iter().find(|s| s.name == name) else {
                return Err(InputError::new("suites", format!("unknown suite {name:?}")));
            };
            if file.n < spec.min_vars || file.n > spec.max_vars {
                return Err(InputError::new(
                    "n",
                    format!("suite {name:?} needs {} <= n <= {}, got {}", spec.min_vars, spec.max_vars, file.n),
                ));
            }
        }
        if file.samples == 0 {
            return Err(InputError::new("samples", "must be positive"));
        }
        if file.max_degree > 4 {
            return Err(InputError::new("max_degree", format!("expected 0..=4, got {}", file.max_degree)));
        }
        if file.coeff_bound < 1 {
            return Err(InputError::new("coeff_bound", "must be positive"));
        }

        let mut forms = BTreeMap::new();
        for (name, rec) in &file.forms {
            let field = format!("forms.{name}");
            let w = rec.decode(file.n).map_err(|e| InputError::new(&field, e.to_string()))?;
            match name.as_str() {
                "omega" if w.degree() != 3 => return Err(InputError::new(field, "expected a 3-form")),
                "B" | "theta" if w.degree() != 2 => return Err(InputError::new(field, "expected a 2-form")),
                _ => {}
            }
            forms.insert(name.clone(), w);
        }

        Ok(Scenario {
            n: file.n,
            suites: file.suites,
            samples: file.samples,
            seed: file.seed,
            max_degree: file.max_degree,
            coeff_bound: file.coeff_bound,
            forms,
            sabotage: file.sabotage,
        })
    }

    pub fn params(&self) -> SampleParams {
        SampleParams::new(self.n, self.max_degree, self.coeff_bound)
    }

    /// The twisting 3-form: `forms.omega`, else `ε^{12∞}` when `n ≥ 2`.
    /// An open `forms.omega` is accepted; the suites then report the
    /// identities it breaks.
    pub fn omega(&self) -> Option<AtiyahForm> {
        if let Some(w) = self.forms.get("omega") {
            return Some(w.clone());
        }
        (self.n >= 2).then(|| AtiyahForm::eps(self.n, &[1, 2, INF]).expect("valid indices"))
    }

    /// A user-supplied 2-form, if any.
    pub fn form(&self, name: &str) -> Option<&AtiyahForm> {
        self.forms.get(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_scenario_gets_defaults() {
        let s = Scenario::parse(r#"{"n": 2, "suites": ["jacobi"]}"#).unwrap();
        assert_eq!(s.samples, 10);
        assert_eq!(s.seed, 0);
        assert_eq!(s.max_degree, 1);
        assert_eq!(s.omega(), Some(AtiyahForm::eps(2, &[1, 2, INF]).unwrap()));
        let s = Scenario::parse(r#"{"n": 1, "suites": ["jacobi"]}"#).unwrap();
        assert_eq!(s.omega(), None);
    }

    #[test]
    fn rejections_name_the_field() {
        let cases = [
            (r#"{"n": 2, "suites": []}"#, "suites"),
            (r#"{"n": 2}"#, "suites"),
            (r#"{"n": 2, "suites": ["nope"]}"#, "suites"),
            (r#"{"n": 0, "suites": ["jacobi"]}"#, "n"),
            (r#"{"n": 1, "suites": ["dg-leibniz"]}"#, "n"),
            (r#"{"n": 3, "suites": ["morphism-5-9"]}"#, "n"),
            (r#"{"n": 2, "suites": ["jacobi"], "samples": 0}"#, "samples"),
            (r#"{"n": 2, "suites": ["jacobi"], "colour": 1}"#, "colour"),
            (
                r#"{"n": 2, "suites": ["jacobi"], "forms": {"omega": {"degree": 2, "coeffs": []}}}"#,
                "forms.omega",
            ),
        ];
        for (text, field) in cases {
            let err = Scenario::parse(text).unwrap_err();
            assert_eq!(err.field, field, "{text}: {err}");
        }
        let err = Scenario::parse(r#"{"n": 2, "suites": []}"#).unwrap_err();
        assert_eq!(err.to_string(), "suites: no suites");
    }

    #[test]
    fn forms_are_decoded_with_the_scenario_size() {
        let text = r#"{"n": 3, "suites": ["lcourant-axioms"], "forms": {"omega": {"degree": 3, "coeffs": [
            {"indices": [2, 3, "inf"], "value": {"numerator": [{"num": "1", "den": "1", "exps": [1, 0, 0]}]}}
        ]}}}"#;
        let s = Scenario::parse(text).unwrap();
        let expected = AtiyahForm::term(3, &[2, 3, INF], lcourant::Scalar::var(3, 1).unwrap()).unwrap();
        assert_eq!(s.omega(), Some(expected));
    }
}
