//! Isotropic involutive subbundles of `(𝔻L)^p` and their Hamiltonian forms.
//!
//! A subbundle is given by generators that are linearly independent over the
//! field of rational functions. Membership, Hamiltonian derivations, and the
//! ambiguity space `ξ ∩ (DL ⊕ 0)` are all computed by exact linear algebra
//! over that field.

use serde_json::json;

use crate::atiyah::AtiyahForm;
use crate::dcourant::{dorfman, gauge_auto, pairing, DSection};
use crate::error::{Error, Result};
use crate::gauge::Derivation;
use crate::linalg;
use crate::poly::Rational;
use crate::report::{CheckOutcome, Verdict};
use crate::sample::{SampleParams, Sampler};
use crate::scalar::Scalar;
use crate::serial::json as js;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subbundle {
    nvars: usize,
    p: usize,
    generators: Vec<DSection>,
}

impl Subbundle {
    /// The module spanned by `generators`, which must be independent.
    pub fn new(nvars: usize, p: usize, generators: Vec<DSection>) -> Result<Self> {
        for g in &generators {
            if g.p() != p {
                return Err(Error::OrderMismatch { left: p, right: g.p() });
            }
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    left: nvars,
                    right: g.nvars(),
                });
            }
        }
        let rows: linalg::Matrix = generators.iter().map(DSection::coordinates).collect();
        let width = rows.first().map(Vec::len).unwrap_or(0);
        let rank = linalg::rank(&rows, width);
        if rank < generators.len() {
            return Err(Error::DependentGenerators {
                rank,
                count: generators.len(),
            });
        }
        Ok(Subbundle {
            nvars,
            p,
            generators,
        })
    }

    /// `Gr(ω) = {(Δ, i_Δ ω)}` inside `(𝔻L)^p`, where `ω` has degree `p + 1`.
    pub fn graph(omega: &AtiyahForm) -> Result<Self> {
        if omega.degree() == 0 {
            return Err(Error::InvalidDegree {
                degree: 0,
                reason: "a graph needs a form of degree p + 1 >= 1",
            });
        }
        let n = omega.nvars();
        let gens = (0..=n)
            .map(|k| {
                let d = Derivation::basis(n, k);
                let w = omega.contract(&d);
                DSection::new(d, w)
            })
            .collect();
        Subbundle::new(n, omega.degree() - 1, gens)
    }

    /// `DL ⊕ 0`.
    pub fn derivations(nvars: usize, p: usize) -> Self {
        Subbundle::graph(&AtiyahForm::zero(nvars, p + 1)).expect("p + 1 >= 1")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn generators(&self) -> &[DSection] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Coefficients `c` with `Σ c_i g_i = e`, if `e` lies in the span.
    pub fn coefficients_of(&self, e: &DSection) -> Option<Vec<Scalar>> {
        let cols: Vec<Vec<Scalar>> = self.generators.iter().map(DSection::coordinates).collect();
        linalg::solve_columns(&cols, &e.coordinates())
    }

    pub fn contains(&self, e: &DSection) -> bool {
        e.is_zero() || self.coefficients_of(e).is_some()
    }

    /// A module combination `Σ f_i g_i`.
    pub fn combination(&self, coeffs: &[Scalar]) -> DSection {
        self.generators
            .iter()
            .zip(coeffs)
            .fold(DSection::zero(self.nvars, self.p), |acc, (g, f)| acc.add(&g.scale(f)))
    }

    /// The pairing vanishes on all generator pairs (sufficient by bilinearity).
    pub fn is_isotropic(&self) -> Verdict {
        if self.p == 0 {
            return Verdict::yes();
        }
        for (i, a) in self.generators.iter().enumerate() {
            for (j, b) in self.generators.iter().enumerate().skip(i) {
                let v = pairing(a, b).expect("same order");
                if !v.is_zero() {
                    return Verdict::no(json!({
                        "generators": [i, j],
                        "pairing": js::form(&v),
                    }));
                }
            }
        }
        Verdict::yes()
    }

    /// Dorfman brackets of all generator pairs lie in the span. For isotropic
    /// subbundles this implies closure on all sections, by the Leibniz rule.
    pub fn is_involutive(&self) -> Verdict {
        self.is_involutive_in(None).expect("untwisted bracket")
    }

    /// Involutivity for the bracket twisted by a degree-3 form (only for `p = 1`).
    pub fn is_involutive_in(&self, twist: Option<&AtiyahForm>) -> Result<Verdict> {
        for (i, a) in self.generators.iter().enumerate() {
            for (j, b) in self.generators.iter().enumerate() {
                let br = dorfman(a, b, twist)?;
                if !self.contains(&br) {
                    return Ok(Verdict::no(json!({
                        "generators": [i, j],
                        "bracket": js::section(&br),
                    })));
                }
            }
        }
        Ok(Verdict::yes())
    }

    /// Form parts of the generators, as columns.
    fn form_columns(&self) -> Vec<Vec<Scalar>> {
        self.generators
            .iter()
            .map(|g| g.form().coeff_vector().to_vec())
            .collect()
    }

    /// A derivation `Δ` with `(Δ, dα) ∈ ξ`: the least-pivot solution with all
    /// free coefficients zero.
    pub fn hamiltonian_derivation(&self, alpha: &AtiyahForm) -> Result<Derivation> {
        if alpha.degree() + 1 != self.p {
            return Err(Error::InvalidDegree {
                degree: alpha.degree(),
                reason: "Hamiltonian forms have degree p - 1",
            });
        }
        let target = alpha.differential();
        let c = linalg::solve_columns(&self.form_columns(), target.coeff_vector())
            .ok_or(Error::NotHamiltonian)?;
        Ok(self.combination(&c).der().clone())
    }

    /// A basis of `ξ ∩ (DL ⊕ 0)` over the rational functions.
    pub fn hamiltonian_ambiguity(&self) -> Vec<Derivation> {
        let rows = crate::atiyah::AtiyahForm::zero(self.nvars, self.p).dimension();
        linalg::kernel_columns(&self.form_columns(), rows, self.nvars)
            .into_iter()
            .map(|c| self.combination(&c).der().clone())
            .collect()
    }

    /// `m_λ(ξ) = {(Δ, λα)}`.
    pub fn rescale(&self, lambda: &Rational) -> Result<Subbundle> {
        use num_traits::Zero;
        if lambda.is_zero() {
            return Err(Error::ZeroScale);
        }
        let gens = self
            .generators
            .iter()
            .map(|g| DSection::new(g.der().clone(), g.form().scale_rational(lambda)))
            .collect();
        Subbundle::new(self.nvars, self.p, gens)
    }

    /// The gauge transform `τ_B(ξ) = {(Δ, α + i_Δ B)}` for closed `B` of degree `p + 1`.
    pub fn gauge(&self, b: &AtiyahForm) -> Result<Subbundle> {
        if !b.differential().is_zero() {
            return Err(Error::NotClosed { degree: b.degree() });
        }
        let gens = self
            .generators
            .iter()
            .map(|g| gauge_auto(b, g))
            .collect::<Result<Vec<_>>>()?;
        Subbundle::new(self.nvars, self.p, gens)
    }

    /// Random section `Σ f_i g_i` with random polynomial coefficients.
    pub fn random_section(&self, s: &mut Sampler) -> DSection {
        let coeffs: Vec<Scalar> = (0..self.rank()).map(|_| s.scalar()).collect();
        self.combination(&coeffs)
    }

    /// Lie algebroid axioms for `(ξ, [-,-], σ ∘ pr1)` on random sections:
    /// closure, skew-symmetry, Jacobi identity, and the Leibniz rule.
    pub fn induced_algebroid_checks(&self, samples: usize, seed: u64, params: SampleParams) -> Vec<CheckOutcome> {
        let mut out = Vec::new();
        for case in 0..samples {
            let mut s = Sampler::for_case(params, seed, "induced-algebroid", case);
            let (e1, e2, e3) = (self.random_section(&mut s), self.random_section(&mut s), self.random_section(&mut s));
            let f = s.scalar();
            let b = |x: &DSection, y: &DSection| dorfman(x, y, None).expect("same order");
            let w = |r: serde_json::Value| {
                json!({"e1": js::section(&e1), "e2": js::section(&e2), "e3": js::section(&e3), "residual": r})
            };
            let e12 = b(&e1, &e2);
            out.push(CheckOutcome::new("closure", case, self.contains(&e12), || w(js::section(&e12))));
            let skew = e12.add(&b(&e2, &e1));
            out.push(CheckOutcome::new("skew", case, skew.is_zero(), || w(js::section(&skew))));
            let jac = b(&e1, &b(&e2, &e3)).sub(&b(&e12, &e3)).sub(&b(&e2, &b(&e1, &e3)));
            out.push(CheckOutcome::new("jacobi", case, jac.is_zero(), || w(js::section(&jac))));
            let leib = b(&e1, &e2.scale(&f))
                .sub(&e12.scale(&f))
                .sub(&e2.scale(&e1.der().symbol_apply(&f)));
            out.push(CheckOutcome::new("leibniz", case, leib.is_zero(), || w(js::section(&leib))));
        }
        out
    }
}

/// A Hamiltonian form together with a chosen Hamiltonian derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianForm {
    alpha: AtiyahForm,
    der: Derivation,
}

impl HamiltonianForm {
    /// Solves for the canonical Hamiltonian derivation.
    pub fn solve(alpha: AtiyahForm, xi: &Subbundle) -> Result<Self> {
        let der = xi.hamiltonian_derivation(&alpha)?;
        Ok(HamiltonianForm { alpha, der })
    }

    /// Uses the given derivation after checking `(Δ, dα) ∈ ξ`.
    pub fn with_derivation(alpha: AtiyahForm, der: Derivation, xi: &Subbundle) -> Result<Self> {
        if alpha.degree() + 1 != xi.p() {
            return Err(Error::InvalidDegree {
                degree: alpha.degree(),
                reason: "Hamiltonian forms have degree p - 1",
            });
        }
        if !xi.contains(&DSection::new(der.clone(), alpha.differential())) {
            return Err(Error::NotHamiltonian);
        }
        Ok(HamiltonianForm { alpha, der })
    }

    /// Pairs a form with a derivation without checking membership.
    pub fn new_unchecked(alpha: AtiyahForm, der: Derivation) -> Self {
        HamiltonianForm { alpha, der }
    }

    pub fn alpha(&self) -> &AtiyahForm {
        &self.alpha
    }

    pub fn der(&self) -> &Derivation {
        &self.der
    }

    /// `{α, β} = i_{Δ_α} dβ`.
    pub fn bracket(&self, other: &HamiltonianForm) -> AtiyahForm {
        self.bracket_form(&other.alpha)
    }

    /// `i_{Δ_α} dβ` for an arbitrary form `β` of the same degree.
    pub fn bracket_form(&self, beta: &AtiyahForm) -> AtiyahForm {
        beta.differential().contract(&self.der)
    }

    /// `{α, β}` together with its Hamiltonian derivation `[Δ_α, Δ_β]`.
    pub fn bracket_hamiltonian(&self, other: &HamiltonianForm) -> HamiltonianForm {
        HamiltonianForm {
            alpha: self.bracket(other),
            der: self.der.commutator(&other.der),
        }
    }

    pub fn add(&self, other: &HamiltonianForm) -> HamiltonianForm {
        HamiltonianForm {
            alpha: self.alpha.add(&other.alpha),
            der: self.der.add(&other.der),
        }
    }

    pub fn neg(&self) -> HamiltonianForm {
        HamiltonianForm {
            alpha: self.alpha.neg(),
            der: self.der.neg(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> HamiltonianForm {
        HamiltonianForm {
            alpha: self.alpha.scale_rational(q),
            der: self.der.scale(&Scalar::from_rational(self.der.nvars(), q.clone())),
        }
    }
}

/// `{α, β} = i_{Δ_α} dβ`.
pub fn observable_bracket(alpha: &HamiltonianForm, beta: &HamiltonianForm) -> AtiyahForm {
    alpha.bracket(beta)
}

/// Applies `i_{Δ_1}`, then `i_{Δ_2}`, … to `form`; `None` when the chain is
/// longer than the degree (the result lives in negative degree and is zero).
pub fn contract_chain<'a>(form: &AtiyahForm, ders: impl IntoIterator<Item = &'a Derivation>) -> Option<AtiyahForm> {
    let mut out = form.clone();
    for d in ders {
        if out.degree() == 0 {
            return None;
        }
        out = out.contract(d);
    }
    Some(out)
}

/// `d(i_Δ ω)`, taken as zero in degree `deg ω` when `ω` has degree zero.
fn d_contract(d: &Derivation, w: &AtiyahForm) -> AtiyahForm {
    if w.degree() == 0 {
        AtiyahForm::zero(w.nvars(), 0)
    } else {
        w.contract(d).differential()
    }
}

/// `{α,{β,γ}} + {β,{γ,α}} + {γ,{α,β}} + d(i_{Δ_α}{β,γ})`, zero for
/// Hamiltonian forms of an isotropic involutive subbundle.
pub fn jacobiator_residual(a: &HamiltonianForm, b: &HamiltonianForm, c: &HamiltonianForm) -> AtiyahForm {
    a.bracket_form(&b.bracket(c))
        .add(&b.bracket_form(&c.bracket(a)))
        .add(&c.bracket_form(&a.bracket(b)))
        .add(&d_contract(a.der(), &b.bracket(c)))
}

/// Left side minus right side of the identity relating
/// `(−1)^{n+1} d(i_{Δ_n} ⋯ i_{Δ_3}{α_1, α_2})` to the nested brackets
/// `{{α_i, α_j}, α_k}` contracted with the remaining derivations.
pub fn useful_lemma_residual(alphas: &[HamiltonianForm], p: usize) -> Result<AtiyahForm> {
    let n = alphas.len();
    if n < 3 {
        return Err(Error::ArityMismatch { expected: 3, got: n });
    }
    let nvars = alphas[0].alpha().nvars();
    let target = p as i64 - n as i64 + 2;
    if target < 0 {
        return Ok(AtiyahForm::zero(nvars, 0));
    }
    let target = target as usize;
    let mut acc = AtiyahForm::zero(nvars, target);
    let der = |k: usize| alphas[k - 1].der();
    let al = |k: usize| &alphas[k - 1];
    let nested = |i: usize, j: usize, k: usize| {
        // {{α_i, α_j}, α_k} with Δ of {α_i, α_j} equal to [Δ_i, Δ_j].
        al(i).bracket_hamiltonian(al(j)).bracket(al(k))
    };
    let mut add = |sign: i64, form: Option<AtiyahForm>| {
        if let Some(w) = form {
            acc = if sign > 0 { acc.add(&w) } else { acc.sub(&w) };
        }
    };

    // Left side: (−1)^{n+1} d(i_{Δ_n} ⋯ i_{Δ_3}{α_1, α_2}).
    let inner = contract_chain(&al(1).bracket(al(2)), (3..=n).map(der));
    let lhs = inner.map(|w| w.differential());
    add(if (n + 1) % 2 == 0 { 1 } else { -1 }, lhs);

    // Right side, subtracted.
    for i in 2..=n {
        for j in i + 1..=n {
            let chain = (2..=n).filter(|&k| k != i && k != j).map(der);
            let sign = if (i + j - 1) % 2 == 0 { 1 } else { -1 };
            add(-sign, contract_chain(&nested(i, j, 1), chain));
        }
    }
    for j in 3..=n {
        let chain = (3..=n).filter(|&k| k != j).map(der);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        add(-sign, contract_chain(&nested(1, j, 2), chain));
    }
    add(-1, contract_chain(&nested(1, 2, 3), (4..=n).map(der)));
    Ok(acc)
}

/// `B(α, β) = ½(i_{Δ_α} β − i_{Δ_β} α)` for Hamiltonian 1-forms.
pub fn half_pairing(a: &HamiltonianForm, b: &HamiltonianForm) -> AtiyahForm {
    b.alpha().contract(a.der()).sub(&a.alpha().contract(b.der())).half()
}

/// Residuals of the identities relating Lie derivatives, brackets, and `ω`
/// for Hamiltonian 1-forms of `Gr(ω)` with `ω` a closed 3-form:
///
/// * `lie-bracket`: `L_{Δ_α} β − {α, β} − d i_{Δ_α} β`
/// * `lie-difference`: `L_{Δ_α} β − L_{Δ_β} α − 2({α, β} + d B(α, β))`
/// * `omega-bracket`: `{α, β} − i_{Δ_α} i_{Δ_β} ω`
/// * `cyclic-contraction`: `i_{[Δ_α, Δ_β]} γ + c.p. − 3 i_{Δ_α} i_{Δ_β} i_{Δ_γ} ω − 2 (i_{Δ_α} d B(β, γ) + c.p.)`
pub fn graph_identity_residuals(
    omega: &AtiyahForm,
    a: &HamiltonianForm,
    b: &HamiltonianForm,
    c: &HamiltonianForm,
) -> Vec<(&'static str, AtiyahForm)> {
    let lie = |x: &HamiltonianForm, y: &HamiltonianForm| y.alpha().lie_derivative(x.der());
    let lie_bracket = lie(a, b).sub(&a.bracket(b)).sub(&b.alpha().contract(a.der()).differential());
    let two = Scalar::from_int(a.alpha().nvars(), 2);
    let lie_difference = lie(a, b)
        .sub(&lie(b, a))
        .sub(&a.bracket(b).add(&half_pairing(a, b).differential()).scale(&two));
    let omega_bracket = a.bracket(b).sub(&omega.contract(b.der()).contract(a.der()));

    let cyc = |x: &HamiltonianForm, y: &HamiltonianForm, z: &HamiltonianForm| {
        z.alpha().contract(&x.der().commutator(y.der()))
    };
    let triple = omega.contract(c.der()).contract(b.der()).contract(a.der());
    let db = |x: &HamiltonianForm, y: &HamiltonianForm, z: &HamiltonianForm| {
        half_pairing(y, z).differential().contract(x.der())
    };
    let cyclic = cyc(a, b, c)
        .add(&cyc(b, c, a))
        .add(&cyc(c, a, b))
        .sub(&triple.scale(&Scalar::from_int(a.alpha().nvars(), 3)))
        .sub(&db(a, b, c).add(&db(b, c, a)).add(&db(c, a, b)).scale(&two));
    vec![
        ("lie-bracket", lie_bracket),
        ("lie-difference", lie_difference),
        ("omega-bracket", omega_bracket),
        ("cyclic-contraction", cyclic),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atiyah::INF;
    use num_bigint::BigInt;

    fn eps(n: usize, idx: &[usize]) -> AtiyahForm {
        AtiyahForm::eps(n, idx).unwrap()
    }

    fn x(n: usize, i: usize) -> Scalar {
        Scalar::var(n, i).unwrap()
    }

    fn dx(n: usize, i: usize) -> Derivation {
        Derivation::partial(n, i).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn graph_examples() {
        let dl = Subbundle::graph(&AtiyahForm::zero(2, 2)).unwrap();
        assert_eq!(dl, Subbundle::derivations(2, 1));
        assert!(dl.generators().iter().all(|g| g.form().is_zero()));

        let g = Subbundle::graph(&eps(2, &[1, 2, INF])).unwrap();
        assert_eq!(
            g.generators(),
            &[
                DSection::new(dx(2, 1), eps(2, &[2, INF])),
                DSection::new(dx(2, 2), eps(2, &[1, INF]).neg()),
                DSection::new(Derivation::unit(2), eps(2, &[1, 2])),
            ]
        );

        let g = Subbundle::graph(&eps(1, &[1, INF])).unwrap();
        assert_eq!(g.generators()[0].form(), &eps(1, &[INF]));
        assert_eq!(g.generators()[1].form(), &eps(1, &[1]).neg());
    }

    #[test]
    fn isotropy_examples() {
        let mut s = Sampler::new(SampleParams::new(2, 2, 3), 1);
        assert!(Subbundle::graph(&s.form(3)).unwrap().is_isotropic().holds);
        assert!(Subbundle::derivations(2, 2).is_isotropic().holds);
        let bad = Subbundle::new(2, 2, vec![DSection::new(dx(2, 1), eps(2, &[1, 2]))]).unwrap();
        let v = bad.is_isotropic();
        assert!(!v.holds);
        let expected = js::form(&eps(2, &[2]).scale(&Scalar::from_int(2, 2)));
        assert_eq!(v.witness.unwrap()["pairing"], expected);
    }

    #[test]
    fn involutivity_examples() {
        assert!(Subbundle::graph(&eps(2, &[1, 2, INF])).unwrap().is_involutive().holds);
        let w = AtiyahForm::term(3, &[1, 2, INF], x(3, 3)).unwrap();
        let v = Subbundle::graph(&w).unwrap().is_involutive();
        assert!(!v.holds);
        assert!(v.witness.is_some());
        assert!(Subbundle::derivations(3, 2).is_involutive().holds);
    }

    #[test]
    fn dependent_generators_are_rejected() {
        let e = DSection::new(dx(2, 1), eps(2, &[INF]));
        let err = Subbundle::new(2, 1, vec![e.clone(), e.scale(&x(2, 2))]).unwrap_err();
        assert_eq!(err, Error::DependentGenerators { rank: 1, count: 2 });
    }

    #[test]
    fn hamiltonian_derivation_examples() {
        let g = Subbundle::graph(&eps(2, &[1, 2, INF])).unwrap();
        assert!(g.hamiltonian_derivation(&eps(2, &[INF])).unwrap().is_zero());

        let alpha = AtiyahForm::term(2, &[1], x(2, 2)).unwrap();
        let expected = Derivation::new(vec![Scalar::zero(2), x(2, 2)], Scalar::from_int(2, -1)).unwrap();
        assert_eq!(g.hamiltonian_derivation(&alpha).unwrap(), expected);

        let unit_only = Subbundle::new(1, 1, vec![DSection::from_der(Derivation::unit(1), 1)]).unwrap();
        assert_eq!(
            unit_only.hamiltonian_derivation(&AtiyahForm::scalar(x(1, 1))),
            Err(Error::NotHamiltonian)
        );
        let unit_only2 = Subbundle::new(1, 2, vec![DSection::from_der(Derivation::unit(1), 2)]).unwrap();
        assert_eq!(
            unit_only2.hamiltonian_derivation(&eps(1, &[1])),
            Err(Error::NotHamiltonian)
        );
    }

    #[test]
    fn ambiguity_examples() {
        assert!(Subbundle::graph(&eps(2, &[1, 2, INF])).unwrap().hamiltonian_ambiguity().is_empty());
        let unit_only = Subbundle::new(2, 1, vec![DSection::from_der(Derivation::unit(2), 1)]).unwrap();
        assert_eq!(unit_only.hamiltonian_ambiguity(), vec![Derivation::unit(2)]);
        let amb = Subbundle::derivations(2, 1).hamiltonian_ambiguity();
        let basis: Vec<_> = (0..=2).map(|k| Derivation::basis(2, k)).collect();
        assert_eq!(amb, basis);
    }

    #[test]
    fn observable_bracket_examples() {
        let g = Subbundle::graph(&eps(1, &[1, INF])).unwrap();
        let xs = HamiltonianForm::solve(AtiyahForm::scalar(x(1, 1)), &g).unwrap();
        let one = HamiltonianForm::solve(AtiyahForm::scalar(Scalar::one(1)), &g).unwrap();
        assert_eq!(xs.bracket(&one), AtiyahForm::scalar(Scalar::from_int(1, -1)));
        let mut s = Sampler::new(SampleParams::new(1, 2, 3), 2);
        for _ in 0..5 {
            let a = HamiltonianForm::solve(AtiyahForm::scalar(s.scalar()), &g).unwrap();
            assert!(a.bracket(&a).is_zero());
        }
    }

    #[test]
    fn rescaling() {
        let w = eps(2, &[1, 2, INF]);
        let g = Subbundle::graph(&w).unwrap();
        assert_eq!(g.rescale(&q(1, 1)).unwrap(), g);
        let lam = q(-3, 2);
        assert_eq!(g.rescale(&lam).unwrap(), Subbundle::graph(&w.scale_rational(&lam)).unwrap());
        assert_eq!(g.rescale(&q(0, 1)), Err(Error::ZeroScale));
    }

    fn random_hamiltonian(s: &mut Sampler, xi: &Subbundle) -> HamiltonianForm {
        HamiltonianForm::solve(s.form(xi.p() - 1), xi).unwrap()
    }

    #[test]
    fn lemma_identities_for_nondegenerate_graphs() {
        let params = SampleParams::new(2, 2, 2);
        let g = Subbundle::graph(&eps(2, &[1, 2, INF])).unwrap();
        let mut s = Sampler::new(params, 3);
        for _ in 0..4 {
            let (a, b, c) = (random_hamiltonian(&mut s, &g), random_hamiltonian(&mut s, &g), random_hamiltonian(&mut s, &g));
            assert!(a.bracket(&b).add(&b.bracket(&a)).is_zero());
            assert!(jacobiator_residual(&a, &b, &c).is_zero());
            assert!(g.contains(&DSection::new(a.der().commutator(b.der()), a.bracket(&b).differential())));
            assert!(useful_lemma_residual(&[a, b, c], 2).unwrap().is_zero());
        }
    }

    #[test]
    fn graph_identities_hold() {
        let w = eps(2, &[1, 2, INF]);
        let g = Subbundle::graph(&w).unwrap();
        let mut s = Sampler::new(SampleParams::new(2, 2, 2), 8);
        for _ in 0..4 {
            let (a, b, c) = (random_hamiltonian(&mut s, &g), random_hamiltonian(&mut s, &g), random_hamiltonian(&mut s, &g));
            for (name, r) in graph_identity_residuals(&w, &a, &b, &c) {
                assert!(r.is_zero(), "{name}: {r}");
            }
        }
    }

    #[test]
    fn useful_lemma_at_order_three() {
        let params = SampleParams::new(3, 1, 2);
        let g = Subbundle::graph(&eps(3, &[1, 2, 3, INF])).unwrap();
        assert!(g.hamiltonian_ambiguity().is_empty());
        let mut s = Sampler::new(params, 4);
        for _ in 0..2 {
            let hs: Vec<_> = (0..4).map(|_| random_hamiltonian(&mut s, &g)).collect();
            assert!(useful_lemma_residual(&hs[..3], 3).unwrap().is_zero());
            assert!(useful_lemma_residual(&hs, 3).unwrap().is_zero());
        }
    }

    #[test]
    fn useful_lemma_terms_are_not_trivially_zero() {
        let g = Subbundle::graph(&eps(2, &[1, 2, INF])).unwrap();
        let mut s = Sampler::new(SampleParams::new(2, 2, 2), 6);
        let hs: Vec<_> = (0..3).map(|_| random_hamiltonian(&mut s, &g)).collect();
        let lhs = contract_chain(&hs[0].bracket(&hs[1]), [hs[2].der()]).unwrap().differential();
        assert!(!lhs.is_zero());
        let mut flipped = hs.clone();
        flipped.swap(0, 1);
        let skew = useful_lemma_residual(&flipped, 2).unwrap();
        assert!(skew.is_zero());
    }

    /// `Gr(ε^{12∞})` with three variables: the ambiguity is spanned by `∂3`.
    fn degenerate_hamiltonian(s: &mut Sampler, xi: &Subbundle) -> HamiltonianForm {
        let zero = Rational::from_integer(0.into());
        let mut alpha = AtiyahForm::zero(3, 1);
        for idx in [1, 2, INF] {
            let f = s.scalar().eval_var(3, &zero).unwrap();
            alpha = alpha.add(&AtiyahForm::term(3, &[idx], f).unwrap());
        }
        alpha = alpha.add(&AtiyahForm::scalar(s.scalar()).differential());
        HamiltonianForm::solve(alpha, xi).unwrap()
    }

    #[test]
    fn degenerate_bracket_is_representative_independent() {
        let g = Subbundle::graph(&eps(3, &[1, 2, INF])).unwrap();
        assert_eq!(g.p(), 2);
        assert_eq!(g.hamiltonian_ambiguity(), vec![dx(3, 3)]);
        let mut s = Sampler::new(SampleParams::new(3, 1, 2), 7);
        for _ in 0..3 {
            let a = degenerate_hamiltonian(&mut s, &g);
            let b = degenerate_hamiltonian(&mut s, &g);
            let shift = dx(3, 3).scale(&s.scalar());
            let moved = HamiltonianForm::with_derivation(a.alpha().clone(), a.der().add(&shift), &g).unwrap();
            assert_eq!(a.bracket(&b), moved.bracket(&b));
            assert!(a.bracket(&b).add(&b.bracket(&a)).is_zero());
            let c = degenerate_hamiltonian(&mut s, &g);
            assert!(jacobiator_residual(&a, &b, &c).is_zero());
        }
    }

    #[test]
    fn induced_algebroid_on_graph() {
        let g = Subbundle::graph(&eps(2, &[1, 2, INF])).unwrap();
        let out = g.induced_algebroid_checks(3, 5, SampleParams::new(2, 1, 2));
        assert!(crate::report::all_zero(&out));
    }
}
