//! The `primitive` command: a closed form and its canonical primitive.

use lcourant::serial::FormRecord;
use lcourant::Error;
use serde::Deserialize;

use crate::scenario::InputError;

/// Input file: `{"n": 2, "form": {...}}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub n: usize,
    pub form: FormRecord,
}

#[derive(Debug)]
pub enum Outcome {
    /// The primitive and the text/JSON to print.
    Found { text: String, json: FormRecord },
    /// The form is not closed, so it has no primitive.
    NotClosed(String),
}

pub fn compute(text: &str) -> Result<Outcome, InputError> {
    let file: FormFile = serde_json::from_str(text).map_err(|e| InputError::new("", e.to_string()))?;
    let w = file.form.decode(file.n).map_err(|e| InputError::new("form", e.to_string()))?;
    match w.primitive() {
        Ok(p) => Ok(Outcome::Found {
            text: format!("primitive({w}) = {p}"),
            json: FormRecord::encode(&p),
        }),
        Err(e @ Error::NotClosed { .. }) => Ok(Outcome::NotClosed(format!("{w}: {e}"))),
        Err(e) => Err(InputError::new("form", e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_form() {
        let text = r#"{"n": 2, "form": {"degree": 3, "coeffs": [
            {"indices": [1, 2, "inf"], "value": {"numerator": [{"num": "1", "den": "1", "exps": [0, 0]}]}}
        ]}}"#;
        match compute(text).unwrap() {
            Outcome::Found { text, .. } => assert_eq!(text, "primitive(ε^12∞) = ε^12"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn open_and_malformed_forms() {
        let open = r#"{"n": 3, "form": {"degree": 3, "coeffs": [
            {"indices": [2, 3, "inf"], "value": {"numerator": [{"num": "1", "den": "1", "exps": [1, 0, 0]}]}}
        ]}}"#;
        assert!(matches!(compute(open).unwrap(), Outcome::NotClosed(_)));
        let zero_degree = r#"{"n": 1, "form": {"degree": 0, "coeffs": []}}"#;
        assert_eq!(compute(zero_degree).unwrap_err().field, "form");
        assert!(compute("{").is_err());
    }
}
