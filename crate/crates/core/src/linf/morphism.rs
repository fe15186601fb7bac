//! Morphisms of 2-term `L∞`-algebras and the concrete morphisms between
//! the algebras of this crate.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::json;

use super::constructions::{graph_ham_sampler, observable_element, observable_form};
use super::{degree_patterns, GradedElement, LInfinityStructure};
use crate::atiyah::AtiyahForm;
use crate::dcourant::{gauge_auto, DSection};
use crate::error::{Error, Result};
use crate::observables::{HamiltonianForm, Subbundle};
use crate::poly::Rational;
use crate::report::CheckOutcome;
use crate::sample::{SampleParams, Sampler};
use crate::scalar::Scalar;

pub type ChainFn = dyn Fn(&GradedElement) -> Result<GradedElement> + Send + Sync;
pub type HomotopyFn = dyn Fn(&GradedElement, &GradedElement) -> Result<GradedElement> + Send + Sync;

/// A morphism of 2-term algebras: a degree-preserving chain map (`φ0` in
/// degree 0, `φ1` in degree 1, and so on) and a skew map `φ2 : A_0 × A_0 → A'_1`.
#[derive(Clone)]
pub struct LInfMorphism {
    name: String,
    chain: Arc<ChainFn>,
    phi2: Arc<HomotopyFn>,
}

impl fmt::Debug for LInfMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LInfMorphism").field("name", &self.name).finish_non_exhaustive()
    }
}

impl LInfMorphism {
    pub fn new(
        name: impl Into<String>,
        chain: impl Fn(&GradedElement) -> Result<GradedElement> + Send + Sync + 'static,
        phi2: impl Fn(&GradedElement, &GradedElement) -> Result<GradedElement> + Send + Sync + 'static,
    ) -> Self {
        LInfMorphism {
            name: name.into(),
            chain: Arc::new(chain),
            phi2: Arc::new(phi2),
        }
    }

    /// A morphism with `φ2 = 0`.
    pub fn strict(
        name: impl Into<String>,
        chain: impl Fn(&GradedElement) -> Result<GradedElement> + Send + Sync + 'static,
    ) -> Self {
        LInfMorphism::new(name, chain, |_, _| Ok(GradedElement::zero(1)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The same chain map with `φ2` replaced by zero.
    pub fn without_phi2(&self) -> Self {
        LInfMorphism {
            name: format!("{} without φ2", self.name),
            chain: self.chain.clone(),
            phi2: Arc::new(|_, _| Ok(GradedElement::zero(1))),
        }
    }

    /// `φ_k` on an element of degree `k`; zero maps to zero.
    pub fn apply(&self, x: &GradedElement) -> Result<GradedElement> {
        if x.is_zero() {
            return Ok(GradedElement::zero(x.degree()));
        }
        (self.chain)(x)
    }

    pub fn phi2(&self, x: &GradedElement, y: &GradedElement) -> Result<GradedElement> {
        if x.is_zero() || y.is_zero() {
            return Ok(GradedElement::zero(1));
        }
        (self.phi2)(x, y)
    }
}

/// The conditions for a morphism `A ⇝ A'` of 2-term algebras on random
/// `x, y, z ∈ A_0`, `h ∈ A_1`. Checks are named `chain`, `phi2-skew`,
/// `binary`, `mixed`, and `ternary`.
pub fn morphism_residuals(
    phi: &LInfMorphism,
    a: &LInfinityStructure,
    b: &LInfinityStructure,
    samples: usize,
    seed: u64,
    params: SampleParams,
) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for case in 0..samples {
        out.extend(morphism_case(phi, a, b, case, seed, params)?);
    }
    Ok(out)
}

/// The morphism outcomes of a single case.
pub fn morphism_case(
    phi: &LInfMorphism,
    a: &LInfinityStructure,
    b: &LInfinityStructure,
    case: usize,
    seed: u64,
    params: SampleParams,
) -> Result<Vec<CheckOutcome>> {
    let mut s = Sampler::for_case(params, seed, &format!("morphism/{}", phi.name()), case);
    let (x, y, z) = (a.sample(&mut s, 0), a.sample(&mut s, 0), a.sample(&mut s, 0));
    let h = a.sample(&mut s, 1);
    let f = |e: &GradedElement| phi.apply(e);
    let l = |args: &[GradedElement]| a.bracket(args);
    let m = |args: &[GradedElement]| b.bracket(args);
    let witness = |r: &GradedElement| {
        json!({
            "morphism": phi.name(),
            "x": x.to_json(), "y": y.to_json(), "z": z.to_json(), "h": h.to_json(),
            "residual": r.to_json(),
        })
    };
    let mut out = Vec::new();
    let mut push = |name: &str, r: GradedElement| {
        out.push(CheckOutcome::new(name, case, r.is_zero(), || witness(&r)));
    };

    push("chain", f(&l(&[h.clone()])?)?.sub(&m(&[f(&h)?])?)?);
    push("phi2-skew", phi.phi2(&x, &y)?.add(&phi.phi2(&y, &x)?)?);

    let (fx, fy, fz) = (f(&x)?, f(&y)?, f(&z)?);
    let binary = m(&[fx.clone(), fy.clone()])?
        .sub(&f(&l(&[x.clone(), y.clone()])?)?)?
        .sub(&m(&[phi.phi2(&x, &y)?])?)?;
    push("binary", binary);

    let mixed = m(&[fx.clone(), f(&h)?])?
        .sub(&f(&l(&[x.clone(), h.clone()])?)?)?
        .sub(&phi.phi2(&x, &l(&[h.clone()])?)?)?;
    push("mixed", mixed);

    let mut ternary = m(&[fx.clone(), fy.clone(), fz.clone()])?.sub(&f(&l(&[x.clone(), y.clone(), z.clone()])?)?)?;
    for (p, q, r, fp) in [(&x, &y, &z, &fx), (&y, &z, &x, &fy), (&z, &x, &y, &fz)] {
        ternary = ternary
            .sub(&phi.phi2(p, &l(&[q.clone(), r.clone()])?)?)?
            .sub(&m(&[fp.clone(), phi.phi2(q, r)?])?)?;
    }
    push("ternary", ternary);
    Ok(out)
}

/// `f(l_k(a)) = l'_k(f(a_1), …, f(a_k))` for a degree-preserving map and
/// every `k ≤ max_k`, on random tuples of every degree pattern. Checks are
/// named `strict-l{k}`.
pub fn strict_residuals(
    phi: &LInfMorphism,
    a: &LInfinityStructure,
    b: &LInfinityStructure,
    max_k: usize,
    samples: usize,
    seed: u64,
    params: SampleParams,
) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for case in 0..samples {
        let mut s = Sampler::for_case(params, seed, &format!("strict/{}", phi.name()), case);
        for k in 1..=max_k.min(a.arity_bound()) {
            for pattern in degree_patterns(a, k + 1) {
                let elems: Vec<GradedElement> = pattern[..k].iter().map(|&d| a.sample(&mut s, d)).collect();
                let lhs = phi.apply(&a.bracket(&elems)?)?;
                let images = elems.iter().map(|e| phi.apply(e)).collect::<Result<Vec<_>>>()?;
                let r = lhs.sub(&b.bracket(&images)?)?;
                out.push(CheckOutcome::new(format!("strict-l{k}"), case, r.is_zero(), || {
                    json!({
                        "morphism": phi.name(),
                        "inputs": elems.iter().map(GradedElement::to_json).collect::<Vec<_>>(),
                        "residual": r.to_json(),
                    })
                }));
            }
        }
    }
    Ok(out)
}

fn section_of(e: &GradedElement) -> Result<&DSection> {
    e.as_section()
        .ok_or_else(|| Error::Malformed(format!("expected a section, got {e}")))
}

fn ham_of(e: &GradedElement) -> Result<&HamiltonianForm> {
    e.as_ham()
        .ok_or_else(|| Error::Malformed(format!("expected a Hamiltonian form, got {e}")))
}

/// The morphism `(0 → Γ(𝔻L)^0, [-,-]_B) ⇝ (ΓL → Γ𝔻L)` with
/// `φ0(Δ, s) = (Δ, ds)` and `φ2((Δ,s), (∇,t)) = −½(Δ(t) − ∇(s)) − B(Δ,∇)`.
pub fn theorem_dl0_morphism(b: &AtiyahForm) -> LInfMorphism {
    let bb = b.clone();
    LInfMorphism::new(
        "dl0-to-omni",
        |e| {
            let x = section_of(e)?;
            Ok(GradedElement::section(0, DSection::new(x.der().clone(), x.form().differential())))
        },
        move |e1, e2| {
            let (x, y) = (section_of(e1)?, section_of(e2)?);
            let s = x.form().as_scalar().expect("order-0 section");
            let t = y.form().as_scalar().expect("order-0 section");
            let twist = bb.evaluate(&[x.der().clone(), y.der().clone()])?;
            let value = x.der().apply(t).sub(&y.der().apply(s)).half().neg().sub(&twist);
            Ok(GradedElement::scalar(1, value))
        },
    )
}

/// The strict isomorphism from the algebra of `(𝔻L)_ω` to that of
/// `(𝔻L)_{ω + dB}`: `φ0(Δ, α) = (Δ, α + i_Δ B)`, `φ1 = id`.
pub fn cohomologous_iso(b: &AtiyahForm) -> Result<LInfMorphism> {
    if b.degree() != 2 {
        return Err(Error::InvalidDegree {
            degree: b.degree(),
            reason: "the gauge form has degree 2",
        });
    }
    let bb = b.clone();
    Ok(LInfMorphism::strict(format!("gauge by {b}"), move |e| match e.degree() {
        0 => Ok(GradedElement::section(0, gauge_auto(&bb, section_of(e)?)?)),
        _ => Ok(e.clone()),
    }))
}

/// The embedding of the observables of `Gr(ω)` (for a nondegenerate
/// closed 3-form) into the algebra of `(𝔻L)_ω`: `φ0(α) = (Δ_α, −α)`,
/// `φ1(s) = −s`, `φ2(α, β) = −½(β(Δ_α) − α(Δ_β))`.
pub fn graph_embedding(omega: &AtiyahForm) -> Result<LInfMorphism> {
    if omega.degree() != 3 {
        return Err(Error::InvalidDegree {
            degree: omega.degree(),
            reason: "the embedding is defined for 3-forms",
        });
    }
    let xi = Subbundle::graph(omega)?;
    let amb = xi.hamiltonian_ambiguity();
    if !amb.is_empty() {
        return Err(Error::Degenerate {
            rank: xi.rank() - amb.len(),
            expected: xi.rank(),
        });
    }
    Ok(LInfMorphism::new(
        "graph-embedding",
        |e| match e.degree() {
            0 => {
                let h = ham_of(e)?;
                Ok(GradedElement::section(0, DSection::new(h.der().clone(), h.alpha().neg())))
            }
            _ => Ok(e.neg()),
        },
        |e1, e2| {
            let (a, b) = (ham_of(e1)?, ham_of(e2)?);
            let ba = b.alpha().contract(a.der());
            let ab = a.alpha().contract(b.der());
            let v = ba.sub(&ab).half().neg();
            Ok(GradedElement::scalar(1, v.as_scalar().expect("degree zero").clone()))
        },
    ))
}

/// `m_λ(ξ)` together with the strict isomorphism given by multiplication by
/// `λ` in every degree, keeping Hamiltonian derivations.
pub fn rescale_iso(lambda: &Rational, xi: &Subbundle) -> Result<(Subbundle, LInfMorphism)> {
    if lambda.is_zero() {
        return Err(Error::ZeroScale);
    }
    let target = xi.rescale(lambda)?;
    let l = lambda.clone();
    let nvars = xi.nvars();
    let map = LInfMorphism::strict(format!("rescale by {lambda}"), move |e| {
        if let Some(h) = e.as_ham() {
            let alpha = h.alpha().scale_rational(&l);
            return Ok(GradedElement::ham(0, HamiltonianForm::new_unchecked(alpha, h.der().clone())));
        }
        let w = observable_form(e)?;
        Ok(observable_element(e.degree(), w.scale(&Scalar::from_rational(nvars, l.clone()))))
    });
    Ok((target, map))
}

/// Hamiltonian sampler for graphs, re-exported for scenario code.
pub fn graph_sampler(xi: &Subbundle) -> Arc<super::constructions::HamSampler> {
    graph_ham_sampler(xi.clone())
}

#[cfg(test)]
mod tests {
    use super::super::constructions::{build_dl0, build_graph_linf, build_observables, build_two_term, TwoTermOptions};
    use super::*;
    use crate::atiyah::INF;
    use crate::dcourant::OmniLie;
    use crate::report::first_failure;
    use num_bigint::BigInt;

    fn eps(n: usize, idx: &[usize]) -> AtiyahForm {
        AtiyahForm::eps(n, idx).unwrap()
    }

    fn params(n: usize) -> SampleParams {
        SampleParams::new(n, 1, 2)
    }

    fn assert_green(out: &[CheckOutcome]) {
        if let Some(f) = first_failure(out) {
            panic!("{} failed: {}", f.check, f.witness.as_ref().unwrap());
        }
    }

    #[test]
    fn dl0_morphism_holds() {
        let mut s = Sampler::new(params(2), 30);
        let b = s.closed_form(2);
        let a = build_dl0(&b).unwrap();
        let t = build_two_term(&OmniLie::untwisted(2), TwoTermOptions::default());
        assert_green(&morphism_residuals(&theorem_dl0_morphism(&b), &a, &t, 3, 31, params(2)).unwrap());
    }

    #[test]
    fn cohomologous_iso_holds() {
        let w = eps(2, &[1, 2, INF]);
        let b = AtiyahForm::term(2, &[2, INF], Scalar::var(2, 1).unwrap()).unwrap();
        let src = build_two_term(&OmniLie::twisted(w.clone()).unwrap(), TwoTermOptions::default());
        let dst = build_two_term(&OmniLie::twisted(w.add(&b.differential())).unwrap(), TwoTermOptions::default());
        let phi = cohomologous_iso(&b).unwrap();
        assert_green(&morphism_residuals(&phi, &src, &dst, 3, 32, params(2)).unwrap());
        assert_green(&strict_residuals(&phi, &src, &dst, 3, 2, 33, params(2)).unwrap());

        let back = cohomologous_iso(&b.neg()).unwrap();
        let mut s = Sampler::new(params(2), 34);
        let e = src.sample(&mut s, 0);
        assert_eq!(back.apply(&phi.apply(&e).unwrap()).unwrap(), e);
        let zero = cohomologous_iso(&AtiyahForm::zero(2, 2)).unwrap();
        assert_eq!(zero.apply(&e).unwrap(), e);
    }

    #[test]
    fn graph_embedding_holds_and_needs_phi2() {
        let w = eps(2, &[1, 2, INF]);
        let a = build_graph_linf(&w).unwrap();
        let t = build_two_term(&OmniLie::twisted(w.clone()).unwrap(), TwoTermOptions::default());
        let phi = graph_embedding(&w).unwrap();
        assert_green(&morphism_residuals(&phi, &a, &t, 4, 35, params(2)).unwrap());
        let broken = morphism_residuals(&phi.without_phi2(), &a, &t, 4, 35, params(2)).unwrap();
        let bad = first_failure(&broken).expect("dropping φ2 must fail");
        assert!(bad.witness.is_some());
        let degenerate = eps(3, &[1, 2, INF]);
        assert!(matches!(graph_embedding(&degenerate), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn rescaling_is_a_strict_iso() {
        let w = eps(2, &[1, 2, INF]);
        let xi = Subbundle::graph(&w).unwrap();
        let lambda = Rational::new(BigInt::from(-3), BigInt::from(2));
        let (target, phi) = rescale_iso(&lambda, &xi).unwrap();
        assert_eq!(target, Subbundle::graph(&w.scale_rational(&lambda)).unwrap());
        let a = build_observables("source", &xi, graph_sampler(&xi)).unwrap();
        let b = build_observables("target", &target, graph_sampler(&target)).unwrap();
        assert_green(&strict_residuals(&phi, &a, &b, 3, 2, 36, params(2)).unwrap());
        assert_green(&morphism_residuals(&phi, &a, &b, 2, 37, params(2)).unwrap());
        assert_eq!(rescale_iso(&Rational::from_integer(0.into()), &xi).unwrap_err(), Error::ZeroScale);
        let (same, _) = rescale_iso(&Rational::from_integer(1.into()), &xi).unwrap();
        assert_eq!(same, xi);
    }
}
