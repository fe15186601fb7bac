//! The bundles `(𝔻L)^p = DL ⊕ (Λ^p(DL)* ⊗ L)`, their brackets, and the
//! `L`-Courant structure of the omni-Lie algebroid `𝔻L = (𝔻L)^1`.

use std::fmt;

use serde_json::json;

use crate::atiyah::AtiyahForm;
use crate::error::{Error, Result};
use crate::gauge::Derivation;
use crate::report::CheckOutcome;
use crate::sample::{SampleParams, Sampler};
use crate::scalar::Scalar;
use crate::serial::json as js;

/// A section `(Δ, α)` of `(𝔻L)^p`, where `p` is the degree of `α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DSection {
    der: Derivation,
    form: AtiyahForm,
}

impl DSection {
    pub fn new(der: Derivation, form: AtiyahForm) -> Self {
        assert_eq!(der.nvars(), form.nvars(), "variable counts must agree");
        DSection { der, form }
    }

    pub fn zero(nvars: usize, p: usize) -> Self {
        DSection::new(Derivation::zero(nvars), AtiyahForm::zero(nvars, p))
    }

    /// `(Δ, 0)`.
    pub fn from_der(der: Derivation, p: usize) -> Self {
        let n = der.nvars();
        DSection::new(der, AtiyahForm::zero(n, p))
    }

    /// `(0, α)`.
    pub fn from_form(form: AtiyahForm) -> Self {
        DSection::new(Derivation::zero(form.nvars()), form)
    }

    pub fn der(&self) -> &Derivation {
        &self.der
    }

    pub fn form(&self) -> &AtiyahForm {
        &self.form
    }

    pub fn p(&self) -> usize {
        self.form.degree()
    }

    pub fn nvars(&self) -> usize {
        self.der.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.der.is_zero() && self.form.is_zero()
    }

    pub fn add(&self, other: &DSection) -> DSection {
        DSection::new(self.der.add(&other.der), self.form.add(&other.form))
    }

    pub fn sub(&self, other: &DSection) -> DSection {
        DSection::new(self.der.sub(&other.der), self.form.sub(&other.form))
    }

    pub fn neg(&self) -> DSection {
        DSection::new(self.der.neg(), self.form.neg())
    }

    pub fn scale(&self, f: &Scalar) -> DSection {
        DSection::new(self.der.scale(f), self.form.scale(f))
    }

    pub fn half(&self) -> DSection {
        DSection::new(self.der.scale(&Scalar::ratio(self.nvars(), 1, 2)), self.form.half())
    }

    /// Coordinates in the free basis: derivation components, then form coefficients.
    pub fn coordinates(&self) -> Vec<Scalar> {
        self.der
            .components()
            .chain(self.form.coeff_vector())
            .cloned()
            .collect()
    }

    pub fn from_coordinates(nvars: usize, p: usize, coords: &[Scalar]) -> DSection {
        let (d, w) = coords.split_at(nvars + 1);
        DSection::new(
            Derivation::from_components(d.to_vec()),
            AtiyahForm::from_coeffs(nvars, p, w.to_vec()),
        )
    }
}

impl fmt::Display for DSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.der, self.form)
    }
}

fn check_orders(e1: &DSection, e2: &DSection) -> Result<()> {
    if e1.p() != e2.p() {
        return Err(Error::OrderMismatch {
            left: e1.p(),
            right: e2.p(),
        });
    }
    Ok(())
}

fn check_twist(p: usize, twist: Option<&AtiyahForm>) -> Result<()> {
    match twist {
        Some(w) if w.degree() != 3 || p != 1 => Err(Error::TwistArityError {
            form_degree: w.degree(),
            order: p,
        }),
        _ => Ok(()),
    }
}

/// `⟨(Δ, α), (∇, β)⟩ = i_Δ β + i_∇ α`, a form of degree `p − 1`.
pub fn pairing(e1: &DSection, e2: &DSection) -> Result<AtiyahForm> {
    check_orders(e1, e2)?;
    if e1.p() == 0 {
        return Err(Error::InvalidDegree {
            degree: 0,
            reason: "the pairing is defined for p >= 1",
        });
    }
    Ok(e2.form.contract(&e1.der).add(&e1.form.contract(&e2.der)))
}

/// The Dorfman-Jacobi bracket
/// `([Δ, ∇], L_Δ β − i_∇ dα − i_∇ i_Δ ω)`, with `ω` the optional twist.
pub fn dorfman(e1: &DSection, e2: &DSection, twist: Option<&AtiyahForm>) -> Result<DSection> {
    check_orders(e1, e2)?;
    check_twist(e1.p(), twist)?;
    let mut form = e2
        .form
        .lie_derivative(&e1.der)
        .sub(&e1.form.differential().contract(&e2.der));
    if let Some(w) = twist {
        form = form.sub(&w.contract(&e1.der).contract(&e2.der));
    }
    Ok(DSection::new(e1.der.commutator(&e2.der), form))
}

/// The skew-symmetric Courant-Jacobi bracket `[e1, e2] − ½ (0, d⟨e1, e2⟩)`.
pub fn courant(e1: &DSection, e2: &DSection, twist: Option<&AtiyahForm>) -> Result<DSection> {
    let d = dorfman(e1, e2, twist)?;
    let corr = pairing(e1, e2)?.differential().half();
    Ok(DSection::new(d.der, d.form.sub(&corr)))
}

/// `𝒟 s = (0, d s)`.
pub fn script_d(s: &Scalar) -> DSection {
    DSection::from_form(AtiyahForm::scalar(s.clone()).differential())
}

/// The gauge transformation `(Δ, α) ↦ (Δ, α + i_Δ B)`; `B` has degree `p + 1`.
pub fn gauge_auto(b: &AtiyahForm, e: &DSection) -> Result<DSection> {
    if b.degree() != e.p() + 1 {
        return Err(Error::InvalidDegree {
            degree: b.degree(),
            reason: "the gauge form must have degree p + 1",
        });
    }
    Ok(DSection::new(e.der.clone(), e.form.add(&b.contract(&e.der))))
}

/// The omni-Lie algebroid `𝔻L`, optionally twisted by a degree-3 form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniLie {
    nvars: usize,
    twist: Option<AtiyahForm>,
}

impl OmniLie {
    pub fn untwisted(nvars: usize) -> Self {
        OmniLie { nvars, twist: None }
    }

    pub fn twisted(omega: AtiyahForm) -> Result<Self> {
        check_twist(1, Some(&omega))?;
        Ok(OmniLie {
            nvars: omega.nvars(),
            twist: Some(omega),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn twist(&self) -> Option<&AtiyahForm> {
        self.twist.as_ref()
    }

    /// Name of the structure as used in scenario descriptors.
    pub fn name(&self) -> &'static str {
        if self.twist.is_some() {
            "twisted"
        } else {
            "omni"
        }
    }

    pub fn bracket(&self, e1: &DSection, e2: &DSection) -> DSection {
        dorfman(e1, e2, self.twist.as_ref()).expect("order-1 sections")
    }

    pub fn skew_bracket(&self, e1: &DSection, e2: &DSection) -> DSection {
        courant(e1, e2, self.twist.as_ref()).expect("order-1 sections")
    }

    pub fn pairing(&self, e1: &DSection, e2: &DSection) -> Scalar {
        pairing(e1, e2)
            .expect("order-1 sections")
            .as_scalar()
            .expect("degree zero")
            .clone()
    }

    pub fn anchor<'a>(&self, e: &'a DSection) -> &'a Derivation {
        e.der()
    }

    pub fn script_d(&self, s: &Scalar) -> DSection {
        script_d(s)
    }

    /// `T(e1, e2, e3) = 1/6 ⟨⟦e1, e2⟧, e3⟩ + c.p.`
    pub fn t_form(&self, e1: &DSection, e2: &DSection, e3: &DSection) -> Scalar {
        let term = |a: &DSection, b: &DSection, c: &DSection| self.pairing(&self.skew_bracket(a, b), c);
        term(e1, e2, e3)
            .add(&term(e2, e3, e1))
            .add(&term(e3, e1, e2))
            .scale(&crate::poly::Rational::new(1.into(), 6.into()))
    }

    /// Evaluates (LC1)–(LC5) on `samples` random inputs. Each axiom gets one
    /// outcome per case, named `LC1` … `LC5`.
    pub fn lcourant_axioms(&self, samples: usize, seed: u64, params: SampleParams) -> Vec<CheckOutcome> {
        let mut out = Vec::with_capacity(5 * samples);
        for case in 0..samples {
            out.extend(self.lcourant_case(case, seed, params));
        }
        out
    }

    /// The five axiom outcomes for a single case.
    pub fn lcourant_case(&self, case: usize, seed: u64, params: SampleParams) -> Vec<CheckOutcome> {
        let mut s = Sampler::for_case(params, seed, "lcourant-axioms", case);
        let (e1, e2, e3) = (s.section(1), s.section(1), s.section(1));
        let f = s.scalar();
        let b = |x: &DSection, y: &DSection| self.bracket(x, y);
        let inputs = || {
            json!({
                "e1": js::section(&e1), "e2": js::section(&e2), "e3": js::section(&e3),
                "f": js::scalar(&f), "structure": self.name(),
            })
        };
        let witness = |r: serde_json::Value| {
            let mut w = inputs();
            w["residual"] = r;
            w
        };

        let lc1 = b(&e1, &b(&e2, &e3))
            .sub(&b(&b(&e1, &e2), &e3))
            .sub(&b(&e2, &b(&e1, &e3)));
        let lc2 = b(&e1, &e2.scale(&f))
            .sub(&b(&e1, &e2).scale(&f))
            .sub(&e2.scale(&e1.der().symbol_apply(&f)));
        let lc3 = b(&e1, &e2).der().sub(&e1.der().commutator(e2.der()));
        let lc4 = b(&e1, &e1).sub(&self.script_d(&self.pairing(&e1, &e1)).half());
        let lc5 = e1
            .der()
            .apply(&self.pairing(&e2, &e3))
            .sub(&self.pairing(&b(&e1, &e2), &e3))
            .sub(&self.pairing(&e2, &b(&e1, &e3)));

        vec![
            CheckOutcome::new("LC1", case, lc1.is_zero(), || witness(js::section(&lc1))),
            CheckOutcome::new("LC2", case, lc2.is_zero(), || witness(js::section(&lc2))),
            CheckOutcome::new("LC3", case, lc3.is_zero(), || witness(js::derivation(&lc3))),
            CheckOutcome::new("LC4", case, lc4.is_zero(), || witness(js::section(&lc4))),
            CheckOutcome::new("LC5", case, lc5.is_zero(), || witness(js::scalar(&lc5))),
        ]
    }
}

/// An isotropic splitting `Δ ↦ (Δ, i_Δ β)` of an exact `L`-Courant algebroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    beta: AtiyahForm,
}

impl Connection {
    pub fn new(beta: AtiyahForm) -> Result<Self> {
        if beta.degree() != 2 {
            return Err(Error::InvalidDegree {
                degree: beta.degree(),
                reason: "a connection is encoded by an Atiyah 2-form",
            });
        }
        Ok(Connection { beta })
    }

    /// The splitting `Δ ↦ (Δ, 0)`.
    pub fn trivial(nvars: usize) -> Self {
        Connection {
            beta: AtiyahForm::zero(nvars, 2),
        }
    }

    pub fn beta(&self) -> &AtiyahForm {
        &self.beta
    }

    pub fn apply(&self, d: &Derivation) -> DSection {
        DSection::new(d.clone(), self.beta.contract(d))
    }

    /// `(A + θ)(Δ) = A(Δ) + ρ*(i_Δ θ)`; in `𝔻L`, `ρ*(α) = (0, α)`.
    pub fn shifted(&self, theta: &AtiyahForm) -> Result<Connection> {
        Connection::new(self.beta.add(theta))
    }

    /// `H(Δ, ∇, □) = −⟨⟦AΔ, A∇⟧, A□⟩`, assembled from its values on basis triples.
    pub fn curvature(&self, structure: &OmniLie) -> AtiyahForm {
        let n = structure.nvars();
        let lifts: Vec<DSection> = (0..=n).map(|k| self.apply(&Derivation::basis(n, k))).collect();
        AtiyahForm::from_fn(n, 3, |mask| {
            let idx: Vec<usize> = crate::atiyah::bits(mask).collect();
            let br = structure.skew_bracket(&lifts[idx[0]], &lifts[idx[1]]);
            structure.pairing(&br, &lifts[idx[2]]).neg()
        })
    }

    /// Curvature calculus of `structure` on `samples` random connections
    /// `β` and shifts `θ`: `zero-splitting` (the trivial connection has
    /// curvature equal to the twist), `closed` (`dH = 0`), `shift-law`
    /// (`H_{A+θ} = H_A − dθ`), and `primitive` (`d(i_𝟙 H) = H`).
    pub fn curvature_checks(structure: &OmniLie, samples: usize, seed: u64, params: SampleParams) -> Vec<CheckOutcome> {
        let n = structure.nvars();
        let twist = structure.twist().cloned().unwrap_or_else(|| AtiyahForm::zero(n, 3));
        let h0 = Connection::trivial(n).curvature(structure);
        let r0 = h0.sub(&twist);
        let mut out = vec![CheckOutcome::new("zero-splitting", 0, r0.is_zero(), || {
            json!({"structure": structure.name(), "curvature": js::form(&h0), "residual": js::form(&r0)})
        })];
        for case in 0..samples {
            let mut s = Sampler::for_case(params, seed, "exact-curvature", case);
            let a = Connection { beta: s.form(2) };
            let theta = s.form(2);
            let h = a.curvature(structure);
            let shifted = a.shifted(&theta).expect("degree 2").curvature(structure);
            let w = |r: &AtiyahForm| {
                json!({
                    "beta": js::form(&a.beta), "theta": js::form(&theta),
                    "curvature": js::form(&h), "residual": js::form(r),
                })
            };
            let closed = h.differential();
            let shift = shifted.sub(&h).add(&theta.differential());
            let prim = h.primitive().map(|p| p.differential().sub(&h));
            out.push(CheckOutcome::new("closed", case, closed.is_zero(), || w(&closed)));
            out.push(CheckOutcome::new("shift-law", case, shift.is_zero(), || w(&shift)));
            match prim {
                Ok(r) => out.push(CheckOutcome::new("primitive", case, r.is_zero(), || w(&r))),
                Err(e) => out.push(CheckOutcome::new("primitive", case, false, || json!({"error": e.to_string()}))),
            }
        }
        out
    }

    /// `ρ ∘ A = id` and `⟨AΔ, A∇⟩ = 0` on the basis.
    pub fn is_isotropic_splitting(&self, structure: &OmniLie) -> bool {
        let n = structure.nvars();
        let lifts: Vec<DSection> = (0..=n).map(|k| self.apply(&Derivation::basis(n, k))).collect();
        lifts
            .iter()
            .enumerate()
            .all(|(k, a)| a.der() == &Derivation::basis(n, k))
            && lifts
                .iter()
                .all(|a| lifts.iter().all(|b| structure.pairing(a, b).is_zero()))
    }
}
