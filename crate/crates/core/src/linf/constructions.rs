//! The concrete `L∞`-algebras: the 2- and 3-term algebras of an
//! `L`-Courant algebroid, the semidirect product of a representation up to
//! homotopy, the Lie algebroid `(𝔻L)^0` with a closed 2-form, and the
//! algebras of observables of isotropic involutive subbundles.

use std::sync::Arc;

use serde_json::json;

use super::{GradedElement, LInfinityStructure, SpaceKind};
use crate::atiyah::AtiyahForm;
use crate::dcourant::{DSection, OmniLie};
use crate::error::{Error, Result};
use crate::gauge::Derivation;
use crate::observables::{contract_chain, HamiltonianForm, Subbundle};
use crate::report::CheckOutcome;
use crate::sample::{SampleParams, Sampler};
use crate::scalar::Scalar;
use crate::serial::json as js;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TwoTermOptions {
    /// Replace `l3` by zero. The result is no longer an `L∞`-algebra unless
    /// `T` vanishes; used to show that the checker notices.
    pub drop_l3: bool,
}

fn section_of(e: &GradedElement) -> Result<&DSection> {
    e.as_section()
        .ok_or_else(|| Error::Malformed(format!("expected a section, got {e}")))
}

fn scalar_of(e: &GradedElement) -> Result<&Scalar> {
    e.as_scalar()
        .ok_or_else(|| Error::Malformed(format!("expected a scalar, got {e}")))
}

fn ham_of(e: &GradedElement) -> Result<&HamiltonianForm> {
    e.as_ham()
        .ok_or_else(|| Error::Malformed(format!("expected a Hamiltonian form, got {e}")))
}

/// Brackets of the `L`-Courant algebras on `ΓL → Γ𝔻L` (and the padded
/// 3-term version); `args` are nonzero and the output lies in the complex.
fn courant_brackets(c: &OmniLie, opts: TwoTermOptions, args: &[GradedElement]) -> Result<GradedElement> {
    let degrees: Vec<usize> = args.iter().map(GradedElement::degree).collect();
    let out = degrees.iter().sum::<usize>() + args.len() - 2;
    match degrees.as_slice() {
        [1] => Ok(GradedElement::section(0, c.script_d(scalar_of(&args[0])?))),
        [0, 0] => Ok(GradedElement::section(
            0,
            c.skew_bracket(section_of(&args[0])?, section_of(&args[1])?),
        )),
        [0, 1] => {
            let ds = c.script_d(scalar_of(&args[1])?);
            Ok(GradedElement::scalar(1, c.pairing(section_of(&args[0])?, &ds).half()))
        }
        [1, 0] => {
            let ds = c.script_d(scalar_of(&args[0])?);
            Ok(GradedElement::scalar(1, c.pairing(section_of(&args[1])?, &ds).half().neg()))
        }
        [0, 0, 0] if !opts.drop_l3 => {
            let t = c.t_form(section_of(&args[0])?, section_of(&args[1])?, section_of(&args[2])?);
            Ok(GradedElement::scalar(1, t.neg()))
        }
        _ => Ok(GradedElement::zero(out)),
    }
}

fn courant_sampler(s: &mut Sampler, degree: usize) -> GradedElement {
    match degree {
        0 => GradedElement::section(0, s.section(1)),
        1 => GradedElement::scalar(1, s.scalar()),
        _ => GradedElement::zero(degree),
    }
}

/// The 2-term algebra `ΓL → Γ𝔻L` of the (possibly twisted) omni-Lie
/// algebroid: `l1 = 𝒟`, `l2 = ⟦-,-⟧` and `±½⟨e, 𝒟s⟩`, `l3 = −T`.
pub fn build_two_term(c: &OmniLie, opts: TwoTermOptions) -> LInfinityStructure {
    let name = if opts.drop_l3 {
        format!("two-term({}, no l3)", c.name())
    } else {
        format!("two-term({})", c.name())
    };
    let cc = c.clone();
    LInfinityStructure::new(
        name,
        vec![SpaceKind::Sections(1), SpaceKind::Scalars],
        3,
        move |args| courant_brackets(&cc, opts, args),
        courant_sampler,
    )
}

/// The 3-term algebra `ker 𝒟 → ΓL → Γ𝔻L`. Since `s = i_𝟙 ds`, the kernel
/// of `𝒟` is zero, so this is the 2-term algebra padded by the zero space.
pub fn build_three_term(c: &OmniLie) -> LInfinityStructure {
    let cc = c.clone();
    LInfinityStructure::new(
        format!("three-term({})", c.name()),
        vec![SpaceKind::Sections(1), SpaceKind::Scalars, SpaceKind::Zero],
        4,
        move |args| courant_brackets(&cc, TwoTermOptions::default(), args),
        courant_sampler,
    )
}

/// The representation up to homotopy of `Γ(DL)` on `ΓL → Γ(J¹L)` given by
/// `μ0(Δ)α = L_Δα − ½ d(α(Δ))`, `μ1(Δ)s = ½ (ds)(Δ)`, and
/// `ν(Δ, ∇)α = T((Δ,0), (∇,0), (0,α))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepHomotopy {
    omni: OmniLie,
}

impl RepHomotopy {
    pub fn new(nvars: usize) -> Self {
        RepHomotopy {
            omni: OmniLie::untwisted(nvars),
        }
    }

    pub fn nvars(&self) -> usize {
        self.omni.nvars()
    }

    pub fn d(&self, s: &Scalar) -> AtiyahForm {
        AtiyahForm::scalar(s.clone()).differential()
    }

    pub fn mu0(&self, x: &Derivation, alpha: &AtiyahForm) -> AtiyahForm {
        let pairing = alpha.contract(x);
        alpha.lie_derivative(x).sub(&pairing.differential().half())
    }

    pub fn mu1(&self, x: &Derivation, s: &Scalar) -> Scalar {
        self.d(s).contract(x).as_scalar().expect("degree zero").half()
    }

    pub fn nu(&self, x: &Derivation, y: &Derivation, alpha: &AtiyahForm) -> Scalar {
        let p = |d: &Derivation| DSection::from_der(d.clone(), 1);
        self.omni.t_form(&p(x), &p(y), &DSection::from_form(alpha.clone()))
    }

    /// `(dν)(X, Y, Z)(α)` in the Chevalley–Eilenberg complex with values in
    /// `Hom(V0, V1)`, where `X · φ = μ1(X) ∘ φ − φ ∘ μ0(X)`.
    pub fn d_nu(&self, x: &Derivation, y: &Derivation, z: &Derivation, alpha: &AtiyahForm) -> Scalar {
        let term = |a: &Derivation, b: &Derivation, c: &Derivation| {
            self.mu1(a, &self.nu(b, c, alpha))
                .sub(&self.nu(b, c, &self.mu0(a, alpha)))
                .sub(&self.nu(&a.commutator(b), c, alpha))
        };
        term(x, y, z).add(&term(y, z, x)).add(&term(z, x, y))
    }
}

/// The chain-map condition and axioms (i)–(iii) on random inputs. Checks
/// are named `chain`, `rep-i`, `rep-ii`, `rep-iii`.
pub fn rep_homotopy_checks(rep: &RepHomotopy, samples: usize, seed: u64, params: SampleParams) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for case in 0..samples {
        let mut s = Sampler::for_case(params, seed, "rep-homotopy", case);
        let (x, y, z) = (s.derivation(), s.derivation(), s.derivation());
        let alpha = s.form(1);
        let f = s.scalar();
        let w = |r: serde_json::Value| {
            json!({
                "X": js::derivation(&x), "Y": js::derivation(&y), "Z": js::derivation(&z),
                "alpha": js::form(&alpha), "s": js::scalar(&f), "residual": r,
            })
        };
        let chain = rep.d(&rep.mu1(&x, &f)).sub(&rep.mu0(&x, &rep.d(&f)));
        out.push(CheckOutcome::new("chain", case, chain.is_zero(), || w(js::form(&chain))));

        let xy = x.commutator(&y);
        let r1 = rep
            .mu0(&xy, &alpha)
            .sub(&rep.mu0(&x, &rep.mu0(&y, &alpha)))
            .add(&rep.mu0(&y, &rep.mu0(&x, &alpha)))
            .sub(&rep.d(&rep.nu(&x, &y, &alpha)));
        out.push(CheckOutcome::new("rep-i", case, r1.is_zero(), || w(js::form(&r1))));

        let r2 = rep
            .mu1(&xy, &f)
            .sub(&rep.mu1(&x, &rep.mu1(&y, &f)))
            .add(&rep.mu1(&y, &rep.mu1(&x, &f)))
            .sub(&rep.nu(&x, &y, &rep.d(&f)));
        out.push(CheckOutcome::new("rep-ii", case, r2.is_zero(), || w(js::scalar(&r2))));

        let r3 = rep.d_nu(&x, &y, &z, &alpha);
        out.push(CheckOutcome::new("rep-iii", case, r3.is_zero(), || w(js::scalar(&r3))));
    }
    out
}

/// The semidirect product algebra on `ΓL → Γ(DL ⊕ J¹L)` of a
/// representation up to homotopy.
pub fn build_semidirect(rep: &RepHomotopy) -> LInfinityStructure {
    let r = rep.clone();
    let brackets = move |args: &[GradedElement]| -> Result<GradedElement> {
        let degrees: Vec<usize> = args.iter().map(GradedElement::degree).collect();
        let out = degrees.iter().sum::<usize>() + args.len() - 2;
        match degrees.as_slice() {
            [1] => Ok(GradedElement::section(0, DSection::from_form(r.d(scalar_of(&args[0])?)))),
            [0, 0] => {
                let (a, b) = (section_of(&args[0])?, section_of(&args[1])?);
                let form = r.mu0(a.der(), b.form()).sub(&r.mu0(b.der(), a.form()));
                Ok(GradedElement::section(0, DSection::new(a.der().commutator(b.der()), form)))
            }
            [0, 1] => Ok(GradedElement::scalar(1, r.mu1(section_of(&args[0])?.der(), scalar_of(&args[1])?))),
            [1, 0] => Ok(GradedElement::scalar(
                1,
                r.mu1(section_of(&args[1])?.der(), scalar_of(&args[0])?).neg(),
            )),
            [0, 0, 0] => {
                let (a, b, c) = (section_of(&args[0])?, section_of(&args[1])?, section_of(&args[2])?);
                let sum = r
                    .nu(a.der(), b.der(), c.form())
                    .add(&r.nu(b.der(), c.der(), a.form()))
                    .add(&r.nu(c.der(), a.der(), b.form()));
                Ok(GradedElement::scalar(1, sum.neg()))
            }
            _ => Ok(GradedElement::zero(out)),
        }
    };
    LInfinityStructure::new(
        "semidirect",
        vec![SpaceKind::Sections(1), SpaceKind::Scalars],
        3,
        brackets,
        courant_sampler,
    )
}

/// The Lie algebroid `(𝔻L)^0 = DL ⊕ L` with bracket
/// `[(Δ,s), (∇,t)]_B = ([Δ,∇], Δ(t) − ∇(s) + B(Δ,∇))`, seen as a 2-term
/// algebra `0 → Γ(𝔻L)^0`. Elements are sections whose form part has degree 0.
pub fn build_dl0(b: &AtiyahForm) -> Result<LInfinityStructure> {
    if b.degree() != 2 {
        return Err(Error::InvalidDegree {
            degree: b.degree(),
            reason: "the twisting form of (𝔻L)^0 has degree 2",
        });
    }
    if !b.differential().is_zero() {
        return Err(Error::NotClosed { degree: 2 });
    }
    let bb = b.clone();
    let brackets = move |args: &[GradedElement]| -> Result<GradedElement> {
        let degrees: Vec<usize> = args.iter().map(GradedElement::degree).collect();
        let out = degrees.iter().sum::<usize>() + args.len() - 2;
        match degrees.as_slice() {
            [0, 0] => Ok(GradedElement::section(0, dl0_bracket(&bb, section_of(&args[0])?, section_of(&args[1])?))),
            _ => Ok(GradedElement::zero(out)),
        }
    };
    Ok(LInfinityStructure::new(
        "dl0",
        vec![SpaceKind::Sections(0), SpaceKind::Zero],
        3,
        brackets,
        |s, degree| match degree {
            0 => GradedElement::section(0, s.section(0)),
            _ => GradedElement::zero(degree),
        },
    ))
}

/// `[(Δ,s), (∇,t)]_B`.
pub(crate) fn dl0_bracket(b: &AtiyahForm, x: &DSection, y: &DSection) -> DSection {
    let (d1, d2) = (x.der(), y.der());
    let s = x.form().as_scalar().expect("order-0 section");
    let t = y.form().as_scalar().expect("order-0 section");
    let twist = b.evaluate(&[d1.clone(), d2.clone()]).expect("degree 2");
    let value = d1.apply(t).sub(&d2.apply(s)).add(&twist);
    DSection::new(d1.commutator(d2), AtiyahForm::scalar(value))
}

/// `κ(k) = (−1)^{k/2 + 1}` for even `k` and `(−1)^{(k−1)/2}` for odd `k`.
pub fn kappa(k: usize) -> i64 {
    let e = if k % 2 == 0 { k / 2 + 1 } else { (k - 1) / 2 };
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Wraps a form living in degree `k` of an algebra of observables.
pub(crate) fn observable_element(k: usize, w: AtiyahForm) -> GradedElement {
    if k > 0 && w.degree() == 0 {
        GradedElement::scalar(k, w.as_scalar().expect("degree zero").clone())
    } else {
        GradedElement::form(k, w)
    }
}

/// The form carried by an element of an algebra of observables.
pub(crate) fn observable_form(e: &GradedElement) -> Result<AtiyahForm> {
    if let Some(s) = e.as_scalar() {
        return Ok(AtiyahForm::scalar(s.clone()));
    }
    e.as_form()
        .cloned()
        .ok_or_else(|| Error::Malformed(format!("expected a form, got {e}")))
}

/// `A_0 = Ω^{p−1}_Ham`, `A_k = Ω^{p−1−k}` (with `Ω^0 = ΓL`).
pub(crate) fn observable_spaces(p: usize) -> Vec<SpaceKind> {
    (0..p)
        .map(|k| match (k, p - 1 - k) {
            (0, d) => SpaceKind::Hamiltonian(d),
            (_, 0) => SpaceKind::Scalars,
            (_, d) => SpaceKind::Forms(d),
        })
        .collect()
}

pub type HamSampler = dyn Fn(&mut Sampler) -> HamiltonianForm + Send + Sync;

/// The `p`-term algebra of observables of an isotropic involutive
/// subbundle `ξ ⊂ (𝔻L)^p`: `l1 = d` and
/// `l_k(α_1, …, α_k) = κ(k) i_{Δ_k} ⋯ i_{Δ_3} {α_1, α_2}` on degree 0.
/// `ham_sampler` draws random Hamiltonian forms of `ξ`.
pub fn build_observables(
    name: impl Into<String>,
    xi: &Subbundle,
    ham_sampler: Arc<HamSampler>,
) -> Result<LInfinityStructure> {
    let p = xi.p();
    if p == 0 {
        return Err(Error::InvalidDegree {
            degree: 0,
            reason: "observables need p >= 1",
        });
    }
    let nvars = xi.nvars();
    let brackets = move |args: &[GradedElement]| -> Result<GradedElement> {
        let k = args.len();
        if k == 1 {
            let a = &args[0];
            let dw = observable_form(a)?.differential();
            return Ok(if a.degree() == 1 {
                GradedElement::ham(0, HamiltonianForm::new_unchecked(dw, Derivation::zero(nvars)))
            } else {
                observable_element(a.degree() - 1, dw)
            });
        }
        let out: usize = args.iter().map(GradedElement::degree).sum::<usize>() + k - 2;
        if args.iter().any(|a| a.degree() > 0) {
            return Ok(GradedElement::zero(out));
        }
        let hams = args.iter().map(ham_of).collect::<Result<Vec<_>>>()?;
        if k == 2 {
            return Ok(GradedElement::ham(0, hams[0].bracket_hamiltonian(hams[1])));
        }
        let inner = hams[0].bracket(hams[1]);
        let chained = contract_chain(&inner, hams[2..].iter().map(|h| h.der())).expect("output degree checked");
        let signed = if kappa(k) > 0 { chained } else { chained.neg() };
        Ok(observable_element(out, signed))
    };
    let sampler = move |s: &mut Sampler, degree: usize| {
        if degree == 0 {
            GradedElement::ham(0, ham_sampler(s))
        } else {
            observable_element(degree, s.form(p - 1 - degree))
        }
    };
    Ok(LInfinityStructure::new(name, observable_spaces(p), p + 1, brackets, sampler))
}

/// Draws random Hamiltonian forms of a graph by solving for a random form.
/// When a draw is not Hamiltonian (only possible for degenerate `ω`), falls
/// back to an exact form, or to zero when `p = 1`.
pub(crate) fn graph_ham_sampler(xi: Subbundle) -> Arc<HamSampler> {
    Arc::new(move |s: &mut Sampler| {
        let p = xi.p();
        match HamiltonianForm::solve(s.form(p - 1), &xi) {
            Ok(h) => h,
            Err(_) if p >= 2 => {
                HamiltonianForm::new_unchecked(s.form(p - 2).differential(), Derivation::zero(xi.nvars()))
            }
            Err(_) => HamiltonianForm::new_unchecked(AtiyahForm::zero(xi.nvars(), 0), Derivation::zero(xi.nvars())),
        }
    })
}

/// The algebra of observables of `Gr(ω)` for a closed form `ω` of degree `p + 1`.
pub fn build_graph_linf(omega: &AtiyahForm) -> Result<LInfinityStructure> {
    if !omega.differential().is_zero() {
        return Err(Error::NotClosed {
            degree: omega.degree(),
        });
    }
    let xi = Subbundle::graph(omega)?;
    build_observables(format!("observables(Gr {omega})"), &xi, graph_ham_sampler(xi.clone()))
}

#[cfg(test)]
mod tests {
    use super::super::{jacobi_checks, jacobi_residual, skew_checks};
    use super::*;
    use crate::atiyah::INF;
    use crate::report::{all_zero, first_failure};

    fn eps(n: usize, idx: &[usize]) -> AtiyahForm {
        AtiyahForm::eps(n, idx).unwrap()
    }

    fn x(n: usize, i: usize) -> Scalar {
        Scalar::var(n, i).unwrap()
    }

    fn dx(n: usize, i: usize) -> Derivation {
        Derivation::partial(n, i).unwrap()
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
    fn kappa_table() {
        assert_eq!([kappa(2), kappa(3), kappa(4), kappa(5)], [1, -1, -1, 1]);
    }

    #[test]
    fn two_term_examples() {
        let s = build_two_term(&OmniLie::untwisted(1), TwoTermOptions::default());
        let e = GradedElement::section(0, DSection::from_der(dx(1, 1), 1));
        let f = GradedElement::section(0, DSection::from_form(AtiyahForm::term(1, &[INF], x(1, 1)).unwrap()));
        let out = s.bracket(&[e.clone(), f]).unwrap();
        assert_eq!(out.as_section().unwrap(), &DSection::from_form(eps(1, &[INF])));

        let unit = GradedElement::section(0, DSection::from_der(Derivation::unit(1), 1));
        let one = GradedElement::scalar(1, Scalar::one(1));
        assert_eq!(s.bracket(&[unit.clone(), one]).unwrap().as_scalar().unwrap(), &Scalar::ratio(1, 1, 2));
        assert!(s.bracket(&[e.clone(), e, unit]).unwrap().is_zero());
        assert_eq!(s.complex_description(), "ΓL → Γ(𝔻L)^1");
    }

    #[test]
    fn two_term_oracle() {
        for c in [OmniLie::untwisted(2), OmniLie::twisted(eps(2, &[1, 2, INF])).unwrap()] {
            let s = build_two_term(&c, TwoTermOptions::default());
            assert_green(&jacobi_checks(&s, 4, 2, 11, params(2)).unwrap());
            assert_green(&skew_checks(&s, 3, 2, 12, params(2)).unwrap());
        }
    }

    #[test]
    fn dropping_l3_breaks_jacobi() {
        let c = OmniLie::twisted(eps(2, &[1, 2, INF])).unwrap();
        let s = build_two_term(&c, TwoTermOptions { drop_l3: true });
        let out = jacobi_checks(&s, 3, 2, 13, params(2)).unwrap();
        let bad = out.iter().find(|o| !o.passed()).expect("a failing case");
        assert_eq!(bad.check, "jacobi-n3");
        assert!(bad.witness.is_some());
    }

    #[test]
    fn arity_bound_is_enforced() {
        let s = build_two_term(&OmniLie::untwisted(1), TwoTermOptions::default());
        let elems = vec![GradedElement::scalar(1, Scalar::one(1)); 5];
        assert_eq!(jacobi_residual(&s, &elems), Err(Error::ArityError { n: 5, bound: 3 }));
    }

    #[test]
    fn three_term_matches_two_term() {
        let c = OmniLie::untwisted(2);
        let three = build_three_term(&c);
        assert_eq!(three.spaces()[2], SpaceKind::Zero);
        assert_green(&jacobi_checks(&three, 5, 2, 14, params(2)).unwrap());
        let two = build_two_term(&c, TwoTermOptions::default());
        let mut s = Sampler::new(params(2), 15);
        let (a, b) = (two.sample(&mut s, 0), two.sample(&mut s, 0));
        assert_eq!(two.bracket(&[a.clone(), b.clone()]), three.bracket(&[a, b]));
    }

    #[test]
    fn rep_homotopy_examples() {
        let rep = RepHomotopy::new(1);
        assert_eq!(rep.mu1(&Derivation::unit(1), &x(1, 1)), x(1, 1).half());
        let a = AtiyahForm::term(1, &[INF], x(1, 1)).unwrap();
        assert_eq!(rep.mu0(&dx(1, 1), &a), eps(1, &[INF]));
        let mut s = Sampler::new(params(2), 16);
        let (d, w) = (s.derivation(), s.form(1));
        assert!(RepHomotopy::new(2).nu(&d, &d, &w).is_zero());
        assert_green(&rep_homotopy_checks(&RepHomotopy::new(2), 3, 17, params(2)));
    }

    #[test]
    fn semidirect_agrees_with_two_term() {
        let rep = RepHomotopy::new(2);
        let semi = build_semidirect(&rep);
        let two = build_two_term(&OmniLie::untwisted(2), TwoTermOptions::default());
        let mut s = Sampler::new(params(2), 18);
        for _ in 0..3 {
            let (a, b, c) = (two.sample(&mut s, 0), two.sample(&mut s, 0), two.sample(&mut s, 0));
            let f = two.sample(&mut s, 1);
            assert_eq!(semi.bracket(&[a.clone(), b.clone()]), two.bracket(&[a.clone(), b.clone()]));
            assert_eq!(semi.bracket(&[a.clone(), f.clone()]), two.bracket(&[a.clone(), f.clone()]));
            assert_eq!(semi.bracket(&[f.clone(), a.clone()]), two.bracket(&[f, a.clone()]));
            assert_eq!(semi.bracket(&[a.clone(), b.clone(), c.clone()]), two.bracket(&[a, b, c]));
        }
        let unit = GradedElement::section(0, DSection::from_der(Derivation::unit(1), 1));
        let xs = GradedElement::scalar(1, x(1, 1));
        let out = build_semidirect(&RepHomotopy::new(1)).bracket(&[unit, xs]).unwrap();
        assert_eq!(out.as_scalar().unwrap(), &x(1, 1).half());
    }

    #[test]
    fn dl0_is_a_lie_algebroid() {
        let mut s = Sampler::new(params(2), 19);
        let b = s.closed_form(2);
        let dl0 = build_dl0(&b).unwrap();
        assert_green(&jacobi_checks(&dl0, 4, 2, 20, params(2)).unwrap());
        assert_eq!(
            build_dl0(&AtiyahForm::term(2, &[1, 2], x(2, 1)).unwrap()).unwrap_err(),
            Error::NotClosed { degree: 2 }
        );
    }

    #[test]
    fn graph_linf_examples() {
        let w = eps(2, &[1, 2, INF]);
        let s = build_graph_linf(&w).unwrap();
        assert_eq!(s.arity_bound(), 3);
        let xi = Subbundle::graph(&w).unwrap();
        let a = HamiltonianForm::solve(AtiyahForm::term(2, &[1], x(2, 2)).unwrap(), &xi).unwrap();
        let b = HamiltonianForm::solve(eps(2, &[INF]), &xi).unwrap();
        let out = s.bracket(&[GradedElement::ham(0, a), GradedElement::ham(0, b)]).unwrap();
        assert!(out.is_zero());
        assert_eq!(
            build_graph_linf(&AtiyahForm::term(3, &[2, 3, INF], x(3, 1)).unwrap()).unwrap_err(),
            Error::NotClosed { degree: 3 }
        );
    }

    #[test]
    fn graph_linf_oracle() {
        let s = build_graph_linf(&eps(2, &[1, 2, INF])).unwrap();
        assert_green(&jacobi_checks(&s, 4, 2, 21, params(2)).unwrap());
        assert_green(&skew_checks(&s, 3, 2, 22, params(2)).unwrap());
        let s1 = build_graph_linf(&eps(1, &[1, INF])).unwrap();
        assert_green(&jacobi_checks(&s1, 3, 3, 23, SampleParams::new(1, 2, 2)).unwrap());
    }

    #[test]
    fn graph_linf_oracle_three_terms() {
        let s = build_graph_linf(&eps(3, &[1, 2, 3, INF])).unwrap();
        assert_eq!(s.spaces().len(), 3);
        let out = jacobi_checks(&s, 5, 1, 24, SampleParams::new(3, 1, 1)).unwrap();
        assert!(all_zero(&out), "{:?}", first_failure(&out));
    }
}
