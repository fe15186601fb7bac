//! JSON-friendly records for every value type.
//!
//! Records mirror the on-disk format: polynomials are term lists with decimal
//! string coefficients, form coefficients are keyed by index lists using
//! `"inf"` for the unit direction. Decoding takes the variable count from the
//! caller because an empty term list does not determine it.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::atiyah::{AtiyahForm, INF};
use crate::dcourant::DSection;
use crate::error::{Error, Result};
use crate::gauge::Derivation;
use crate::poly::{Monomial, Poly, Rational};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub num: String,
    pub den: String,
    pub exps: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarRecord {
    pub numerator: Vec<TermRecord>,
    #[serde(default)]
    pub denominator: Option<Vec<TermRecord>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivationRecord {
    pub symbol: Vec<ScalarRecord>,
    pub endo: ScalarRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexRecord {
    Var(usize),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub indices: Vec<IndexRecord>,
    pub value: ScalarRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormRecord {
    pub degree: usize,
    #[serde(default)]
    pub coeffs: Vec<CoeffRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DSectionRecord {
    pub der: DerivationRecord,
    pub form: FormRecord,
    pub p: usize,
}

fn poly_record(p: &Poly) -> Vec<TermRecord> {
    p.terms()
        .iter()
        .map(|(m, c)| TermRecord {
            num: c.numer().to_string(),
            den: c.denom().to_string(),
            exps: m.exps().to_vec(),
        })
        .collect()
}

fn parse_int(s: &str, what: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::Malformed(format!("{what}: not an integer: {s:?}")))
}

fn poly_from_record(terms: &[TermRecord], nvars: usize) -> Result<Poly> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exps.len() != nvars {
            return Err(Error::Malformed(format!(
                "exps: expected {nvars} exponents, got {}",
                t.exps.len()
            )));
        }
        let num = parse_int(&t.num, "num")?;
        let den = parse_int(&t.den, "den")?;
        if den == BigInt::from(0) {
            return Err(Error::Malformed("den: zero denominator in coefficient".into()));
        }
        out.push((Monomial::from_exps(&t.exps), Rational::new(num, den)));
    }
    Ok(Poly::from_terms(nvars, out))
}

impl ScalarRecord {
    pub fn encode(s: &Scalar) -> Self {
        ScalarRecord {
            numerator: poly_record(s.numerator()),
            denominator: Some(poly_record(s.denominator())),
        }
    }

    pub fn decode(&self, nvars: usize) -> Result<Scalar> {
        let num = poly_from_record(&self.numerator, nvars)?;
        let den = match &self.denominator {
            Some(d) => poly_from_record(d, nvars)?,
            None => Poly::one(nvars),
        };
        Scalar::from_fraction(num, den)
            .map_err(|_| Error::Malformed("denominator: zero polynomial".into()))
    }
}

impl DerivationRecord {
    pub fn encode(d: &Derivation) -> Self {
        DerivationRecord {
            symbol: d.symbol().iter().map(ScalarRecord::encode).collect(),
            endo: ScalarRecord::encode(d.endo()),
        }
    }

    pub fn decode(&self, nvars: usize) -> Result<Derivation> {
        if self.symbol.len() != nvars {
            return Err(Error::Malformed(format!(
                "symbol: expected {nvars} coefficients, got {}",
                self.symbol.len()
            )));
        }
        let symbol = self
            .symbol
            .iter()
            .map(|s| s.decode(nvars))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(symbol, self.endo.decode(nvars)?)
    }
}

impl FormRecord {
    pub fn encode(w: &AtiyahForm) -> Self {
        FormRecord {
            degree: w.degree(),
            coeffs: w
                .terms()
                .into_iter()
                .map(|(idx, c)| CoeffRecord {
                    indices: idx
                        .into_iter()
                        .map(|i| {
                            if i == INF {
                                IndexRecord::Named("inf".into())
                            } else {
                                IndexRecord::Var(i)
                            }
                        })
                        .collect(),
                    value: ScalarRecord::encode(&c),
                })
                .collect(),
        }
    }

    /// Decodes a form; repeated coefficient entries for the same index set add up.
    pub fn decode(&self, nvars: usize) -> Result<AtiyahForm> {
        let mut form = AtiyahForm::zero(nvars, self.degree);
        for c in &self.coeffs {
            if c.indices.len() != self.degree {
                return Err(Error::Malformed(format!(
                    "indices: expected {} indices for a degree-{} form, got {}",
                    self.degree,
                    self.degree,
                    c.indices.len()
                )));
            }
            let idx = c
                .indices
                .iter()
                .map(|i| match i {
                    IndexRecord::Var(v) => Ok(*v),
                    IndexRecord::Named(s) if s == "inf" || s == "∞" => Ok(INF),
                    IndexRecord::Named(s) => Err(Error::Malformed(format!("indices: unknown index {s:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let value = c.value.decode(nvars)?;
            let term = AtiyahForm::term(nvars, &idx, value).map_err(|e| match e {
                Error::IndexOutOfRange { index, nvars } => {
                    Error::Malformed(format!("indices: index {index} outside 1..={nvars}"))
                }
                other => other,
            })?;
            form = form.add(&term);
        }
        Ok(form)
    }
}

impl DSectionRecord {
    pub fn encode(e: &DSection) -> Self {
        DSectionRecord {
            der: DerivationRecord::encode(e.der()),
            form: FormRecord::encode(e.form()),
            p: e.p(),
        }
    }

    pub fn decode(&self, nvars: usize) -> Result<DSection> {
        if self.form.degree != self.p {
            return Err(Error::Malformed(format!(
                "form: degree {} does not match p = {}",
                self.form.degree, self.p
            )));
        }
        Ok(DSection::new(self.der.decode(nvars)?, self.form.decode(nvars)?))
    }
}

/// Convenience JSON encoders used by report witnesses.
pub mod json {
    use serde_json::{json, Value};

    use super::*;

    pub fn scalar(s: &Scalar) -> Value {
        json!({ "text": s.to_string(), "value": ScalarRecord::encode(s) })
    }

    pub fn derivation(d: &Derivation) -> Value {
        json!({ "text": d.to_string(), "value": DerivationRecord::encode(d) })
    }

    pub fn form(w: &AtiyahForm) -> Value {
        json!({ "text": w.to_string(), "value": FormRecord::encode(w) })
    }

    pub fn section(e: &DSection) -> Value {
        json!({ "text": e.to_string(), "value": DSectionRecord::encode(e) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::random_scalar;

    #[test]
    fn scalar_round_trip() {
        let s = random_scalar(3, 2, 2, 5)
            .div(&Scalar::var(2, 1).unwrap().add(&Scalar::from_int(2, 3)))
            .unwrap();
        let rec = ScalarRecord::encode(&s);
        let text = serde_json::to_string(&rec).unwrap();
        let back: ScalarRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back.decode(2).unwrap(), s);
    }

    #[test]
    fn non_canonical_input_is_normalized() {
        let text = r#"{"numerator":[{"num":"2","den":"1","exps":[2]},{"num":"-2","den":"1","exps":[0]}],
                       "denominator":[{"num":"2","den":"1","exps":[1]},{"num":"-2","den":"1","exps":[0]}]}"#;
        let rec: ScalarRecord = serde_json::from_str(text).unwrap();
        let x = Scalar::var(1, 1).unwrap();
        assert_eq!(rec.decode(1).unwrap(), x.add(&Scalar::one(1)));
    }

    #[test]
    fn form_round_trip_uses_inf() {
        let w = AtiyahForm::eps(2, &[1, 2, INF]).unwrap();
        let rec = FormRecord::encode(&w);
        let text = serde_json::to_string(&rec).unwrap();
        assert!(text.contains(r#"[1,2,"inf"]"#));
        let back: FormRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back.decode(2).unwrap(), w);
    }

    #[test]
    fn malformed_inputs_name_the_field() {
        let rec = FormRecord {
            degree: 1,
            coeffs: vec![CoeffRecord {
                indices: vec![IndexRecord::Var(5)],
                value: ScalarRecord::encode(&Scalar::one(2)),
            }],
        };
        let err = rec.decode(2).unwrap_err().to_string();
        assert!(err.contains("indices"), "{err}");
        let bad = ScalarRecord {
            numerator: vec![TermRecord { num: "x".into(), den: "1".into(), exps: vec![0] }],
            denominator: None,
        };
        assert!(bad.decode(1).unwrap_err().to_string().contains("num"));
    }
}
