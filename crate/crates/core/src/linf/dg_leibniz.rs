//! The dg Leibniz algebra of a closed nondegenerate form.

use std::sync::Arc;

use serde_json::json;

use super::constructions::{build_graph_linf, graph_ham_sampler, observable_element, observable_form, HamSampler};
use super::{GradedElement, LInfinityStructure};
use crate::atiyah::AtiyahForm;
use crate::error::{Error, Result};
use crate::observables::{HamiltonianForm, Subbundle};
use crate::report::CheckOutcome;
use crate::sample::{SampleParams, Sampler};

/// The complex `ΓL → Ω^1 → ⋯ → Ω^{p−1}_Ham` of `Gr(ω)` with differential
/// `δ = d` (zero on degree 0) and bracket `[α, β] = L_{Δ_α} β` when `α`
/// has degree 0, and zero otherwise.
#[derive(Clone)]
pub struct DgLeibniz {
    xi: Subbundle,
    complex: LInfinityStructure,
    ham: Arc<HamSampler>,
}

impl DgLeibniz {
    /// Requires `dω = 0` and `Δ ↦ i_Δ ω` injective over rational functions.
    pub fn new(omega: &AtiyahForm) -> Result<Self> {
        let complex = build_graph_linf(omega)?;
        let xi = Subbundle::graph(omega)?;
        let amb = xi.hamiltonian_ambiguity();
        if !amb.is_empty() {
            return Err(Error::Degenerate {
                rank: xi.rank() - amb.len(),
                expected: xi.rank(),
            });
        }
        let ham = graph_ham_sampler(xi.clone());
        Ok(DgLeibniz { xi, complex, ham })
    }

    pub fn subbundle(&self) -> &Subbundle {
        &self.xi
    }

    pub fn p(&self) -> usize {
        self.xi.p()
    }

    pub fn top_degree(&self) -> usize {
        self.p() - 1
    }

    pub fn nvars(&self) -> usize {
        self.xi.nvars()
    }

    pub fn delta(&self, a: &GradedElement) -> Result<GradedElement> {
        if a.degree() == 0 || a.is_zero() {
            return Ok(GradedElement::zero(a.degree().saturating_sub(1)));
        }
        self.complex.bracket(std::slice::from_ref(a))
    }

    pub fn bracket(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        let out = a.degree() + b.degree();
        if a.degree() > 0 || a.is_zero() || b.is_zero() || out > self.top_degree() {
            return Ok(GradedElement::zero(out));
        }
        let h = a
            .as_ham()
            .ok_or_else(|| Error::Malformed(format!("expected a Hamiltonian form, got {a}")))?;
        let lie = observable_form(b)?.lie_derivative(h.der());
        if b.degree() == 0 {
            let hb = b
                .as_ham()
                .ok_or_else(|| Error::Malformed(format!("expected a Hamiltonian form, got {b}")))?;
            return Ok(GradedElement::ham(
                0,
                HamiltonianForm::new_unchecked(lie, h.der().commutator(hb.der())),
            ));
        }
        Ok(observable_element(b.degree(), lie))
    }

    pub fn sample(&self, s: &mut Sampler, degree: usize) -> GradedElement {
        if degree == 0 {
            GradedElement::ham(0, (self.ham)(s))
        } else {
            self.complex.sample(s, degree)
        }
    }

    /// The derivation rule, the graded Leibniz identity, and the
    /// Hamiltonian property of brackets in degree 0, over every degree
    /// combination. Checks are named `derivation-rule`, `graded-leibniz`,
    /// and `closure`.
    pub fn checks(&self, samples: usize, seed: u64, params: SampleParams) -> Result<Vec<CheckOutcome>> {
        let mut out = Vec::new();
        for case in 0..samples {
            out.extend(self.case(case, seed, params)?);
        }
        Ok(out)
    }

    pub fn case(&self, case: usize, seed: u64, params: SampleParams) -> Result<Vec<CheckOutcome>> {
        let mut s = Sampler::for_case(params, seed, "dg-leibniz", case);
        let top = self.top_degree();
        let mut out = Vec::new();
        let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
        let w = |inputs: &[&GradedElement], r: &GradedElement| {
            json!({
                "inputs": inputs.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
                "residual": r.to_json(),
            })
        };

        for da in 0..=top {
            for db in 0..=top - da {
                let a = self.sample(&mut s, da);
                let b = self.sample(&mut s, db);
                let r = self
                    .delta(&self.bracket(&a, &b)?)?
                    .sub(&self.bracket(&self.delta(&a)?, &b)?)?
                    .sub(&self.bracket(&a, &self.delta(&b)?)?.signed(sign(da)))?;
                out.push(CheckOutcome::new("derivation-rule", case, r.is_zero(), || w(&[&a, &b], &r)));
            }
        }

        for da in 0..=top {
            for db in 0..=top - da {
                for dc in 0..=top - da - db {
                    let (a, b, c) = (self.sample(&mut s, da), self.sample(&mut s, db), self.sample(&mut s, dc));
                    let r = self
                        .bracket(&a, &self.bracket(&b, &c)?)?
                        .sub(&self.bracket(&self.bracket(&a, &b)?, &c)?)?
                        .sub(&self.bracket(&b, &self.bracket(&a, &c)?)?.signed(sign(da * db)))?;
                    out.push(CheckOutcome::new("graded-leibniz", case, r.is_zero(), || w(&[&a, &b, &c], &r)));
                }
            }
        }

        let (a, b) = (self.sample(&mut s, 0), self.sample(&mut s, 0));
        let ab = self.bracket(&a, &b)?;
        let closed = match ab.as_ham() {
            Some(h) => {
                let section = crate::dcourant::DSection::new(h.der().clone(), h.alpha().differential());
                self.xi.contains(&section)
            }
            None => ab.is_zero(),
        };
        out.push(CheckOutcome::new("closure", case, closed, || w(&[&a, &b], &ab)));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atiyah::INF;
    use crate::report::first_failure;
    use crate::gauge::Derivation;
    use crate::scalar::Scalar;

    fn eps(n: usize, idx: &[usize]) -> AtiyahForm {
        AtiyahForm::eps(n, idx).unwrap()
    }

    #[test]
    fn bracket_example() {
        let dg = DgLeibniz::new(&eps(2, &[1, 2, INF])).unwrap();
        let alpha = AtiyahForm::term(2, &[1], Scalar::var(2, 2).unwrap()).unwrap();
        let a = HamiltonianForm::solve(alpha, dg.subbundle()).unwrap();
        let expected_der =
            Derivation::new(vec![Scalar::zero(2), Scalar::var(2, 2).unwrap()], Scalar::from_int(2, -1)).unwrap();
        assert_eq!(a.der(), &expected_der);
        let b = HamiltonianForm::solve(eps(2, &[INF]), dg.subbundle()).unwrap();
        let out = dg.bracket(&GradedElement::ham(0, a), &GradedElement::ham(0, b)).unwrap();
        assert_eq!(out.as_form().unwrap(), &eps(2, &[INF]).neg());
    }

    #[test]
    fn positive_degree_brackets_vanish() {
        let dg = DgLeibniz::new(&eps(2, &[1, 2, INF])).unwrap();
        let mut s = Sampler::new(SampleParams::new(2, 2, 3), 40);
        let (a, b) = (dg.sample(&mut s, 1), dg.sample(&mut s, 0));
        assert!(dg.bracket(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn axioms_hold() {
        let dg = DgLeibniz::new(&eps(2, &[1, 2, INF])).unwrap();
        let out = dg.checks(3, 41, SampleParams::new(2, 1, 2)).unwrap();
        assert!(first_failure(&out).is_none(), "{:?}", first_failure(&out));
        let dg3 = DgLeibniz::new(&eps(3, &[1, 2, 3, INF])).unwrap();
        let out = dg3.checks(1, 42, SampleParams::new(3, 1, 1)).unwrap();
        assert!(first_failure(&out).is_none(), "{:?}", first_failure(&out));
    }

    #[test]
    fn rejects_bad_forms() {
        assert!(matches!(DgLeibniz::new(&eps(3, &[1, 2, INF])), Err(Error::Degenerate { rank: 3, expected: 4 })));
        let open = AtiyahForm::term(3, &[2, 3, INF], Scalar::var(3, 1).unwrap()).unwrap();
        assert!(matches!(DgLeibniz::new(&open), Err(Error::NotClosed { .. })));
    }
}
