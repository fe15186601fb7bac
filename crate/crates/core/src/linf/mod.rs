//! `L∞`-algebras given by explicit brackets, and an exact checker for the
//! higher Jacobi identities.
//!
//! An [`LInfinityStructure`] is a graded space (a list of [`SpaceKind`]s, one
//! per degree), an arity bound, a single bracket function covering every
//! `l_k`, and a sampler for random elements of each degree. The degree
//! convention is homological: `l_k` has degree `k − 2`, so `l_1` lowers
//! degree by one.

mod constructions;
mod dg_leibniz;
mod morphism;
pub mod signs;

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::atiyah::AtiyahForm;
use crate::dcourant::DSection;
use crate::error::{Error, Result};
use crate::observables::HamiltonianForm;
use crate::report::CheckOutcome;
use crate::sample::{SampleParams, Sampler};
use crate::scalar::Scalar;
use crate::serial::json as js;

pub use constructions::{
    build_dl0, build_graph_linf, build_observables, build_semidirect, build_three_term, build_two_term,
    kappa, rep_homotopy_checks, HamSampler, RepHomotopy, TwoTermOptions,
};
pub use dg_leibniz::DgLeibniz;
pub use morphism::{
    cohomologous_iso, graph_embedding, graph_sampler, morphism_case, morphism_residuals, rescale_iso, strict_residuals, theorem_dl0_morphism,
    LInfMorphism,
};

/// The module sitting in one degree of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    /// The zero space.
    Zero,
    /// Sections of `L`.
    Scalars,
    /// Atiyah forms of the given degree.
    Forms(usize),
    /// Hamiltonian forms of the given degree for some subbundle.
    Hamiltonian(usize),
    /// Sections of `(𝔻L)^p`.
    Sections(usize),
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Zero => write!(f, "0"),
            SpaceKind::Scalars => write!(f, "ΓL"),
            SpaceKind::Forms(k) => write!(f, "Ω^{k}"),
            SpaceKind::Hamiltonian(k) => write!(f, "Ω^{k}_Ham"),
            SpaceKind::Sections(p) => write!(f, "Γ(𝔻L)^{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Zero,
    Scalar(Scalar),
    Form(AtiyahForm),
    Section(DSection),
    /// A Hamiltonian form carrying its chosen Hamiltonian derivation.
    Ham(HamiltonianForm),
}

/// A homogeneous element of a graded space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    degree: usize,
    payload: Payload,
}

impl GradedElement {
    pub fn zero(degree: usize) -> Self {
        GradedElement {
            degree,
            payload: Payload::Zero,
        }
    }

    pub fn scalar(degree: usize, s: Scalar) -> Self {
        GradedElement {
            degree,
            payload: Payload::Scalar(s),
        }
    }

    pub fn form(degree: usize, w: AtiyahForm) -> Self {
        GradedElement {
            degree,
            payload: Payload::Form(w),
        }
    }

    pub fn section(degree: usize, e: DSection) -> Self {
        GradedElement {
            degree,
            payload: Payload::Section(e),
        }
    }

    pub fn ham(degree: usize, h: HamiltonianForm) -> Self {
        GradedElement {
            degree,
            payload: Payload::Ham(h),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    /// Zero test. A Hamiltonian payload is zero when its form is zero,
    /// whatever derivation it carries.
    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Zero => true,
            Payload::Scalar(s) => s.is_zero(),
            Payload::Form(w) => w.is_zero(),
            Payload::Section(e) => e.is_zero(),
            Payload::Ham(h) => h.alpha().is_zero(),
        }
    }

    pub fn as_scalar(&self) -> Option<&Scalar> {
        match &self.payload {
            Payload::Scalar(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_form(&self) -> Option<&AtiyahForm> {
        match &self.payload {
            Payload::Form(w) => Some(w),
            Payload::Ham(h) => Some(h.alpha()),
            _ => None,
        }
    }

    pub fn as_section(&self) -> Option<&DSection> {
        match &self.payload {
            Payload::Section(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_ham(&self) -> Option<&HamiltonianForm> {
        match &self.payload {
            Payload::Ham(h) => Some(h),
            _ => None,
        }
    }

    pub fn add(&self, other: &GradedElement) -> Result<GradedElement> {
        use Payload::*;
        let payload = match (&self.payload, &other.payload) {
            (Zero, Zero) => return Ok(self.clone()),
            (Zero, _) => return Ok(other.clone()),
            (_, Zero) => return Ok(self.clone()),
            _ if self.degree != other.degree => {
                return Err(Error::Malformed(format!(
                    "cannot add elements of degrees {} and {}",
                    self.degree, other.degree
                )))
            }
            (Scalar(a), Scalar(b)) => Scalar(a.add(b)),
            (Form(a), Form(b)) => Form(a.add(b)),
            (Section(a), Section(b)) => Section(a.add(b)),
            (Ham(a), Ham(b)) => Ham(a.add(b)),
            (Ham(a), Form(b)) | (Form(b), Ham(a)) => Form(a.alpha().add(b)),
            _ => {
                return Err(Error::Malformed(format!(
                    "cannot add {} and {} in degree {}",
                    self.kind_name(),
                    other.kind_name(),
                    self.degree
                )))
            }
        };
        Ok(GradedElement {
            degree: self.degree,
            payload,
        })
    }

    pub fn neg(&self) -> GradedElement {
        let payload = match &self.payload {
            Payload::Zero => Payload::Zero,
            Payload::Scalar(s) => Payload::Scalar(s.neg()),
            Payload::Form(w) => Payload::Form(w.neg()),
            Payload::Section(e) => Payload::Section(e.neg()),
            Payload::Ham(h) => Payload::Ham(h.neg()),
        };
        GradedElement {
            degree: self.degree,
            payload,
        }
    }

    /// Multiplies by `±1`.
    pub fn signed(&self, sign: i64) -> GradedElement {
        if sign < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn sub(&self, other: &GradedElement) -> Result<GradedElement> {
        self.add(&other.neg())
    }

    fn kind_name(&self) -> &'static str {
        match &self.payload {
            Payload::Zero => "zero",
            Payload::Scalar(_) => "scalar",
            Payload::Form(_) => "form",
            Payload::Section(_) => "section",
            Payload::Ham(_) => "hamiltonian",
        }
    }

    pub fn to_json(&self) -> Value {
        let value = match &self.payload {
            Payload::Zero => json!(0),
            Payload::Scalar(s) => js::scalar(s),
            Payload::Form(w) => js::form(w),
            Payload::Section(e) => js::section(e),
            Payload::Ham(h) => json!({"form": js::form(h.alpha()), "derivation": js::derivation(h.der())}),
        };
        json!({"degree": self.degree, "kind": self.kind_name(), "value": value})
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Zero => write!(f, "0"),
            Payload::Scalar(s) => write!(f, "{s}"),
            Payload::Form(w) => write!(f, "{w}"),
            Payload::Section(e) => write!(f, "{e}"),
            Payload::Ham(h) => write!(f, "{} [Δ = {}]", h.alpha(), h.der()),
        }
    }
}

pub type BracketFn = dyn Fn(&[GradedElement]) -> Result<GradedElement> + Send + Sync;
pub type SampleFn = dyn Fn(&mut Sampler, usize) -> GradedElement + Send + Sync;

/// An `L∞`-algebra with finitely many nonzero brackets.
#[derive(Clone)]
pub struct LInfinityStructure {
    name: String,
    spaces: Vec<SpaceKind>,
    arity_bound: usize,
    brackets: Arc<BracketFn>,
    sampler: Arc<SampleFn>,
}

impl fmt::Debug for LInfinityStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LInfinityStructure")
            .field("name", &self.name)
            .field("spaces", &self.spaces)
            .field("arity_bound", &self.arity_bound)
            .finish_non_exhaustive()
    }
}

impl LInfinityStructure {
    /// `brackets` receives `k ≤ arity_bound` nonzero arguments of valid
    /// degrees and returns `l_k` of them; `sampler` draws a random element of
    /// a given degree.
    pub fn new(
        name: impl Into<String>,
        spaces: Vec<SpaceKind>,
        arity_bound: usize,
        brackets: impl Fn(&[GradedElement]) -> Result<GradedElement> + Send + Sync + 'static,
        sampler: impl Fn(&mut Sampler, usize) -> GradedElement + Send + Sync + 'static,
    ) -> Self {
        LInfinityStructure {
            name: name.into(),
            spaces,
            arity_bound,
            brackets: Arc::new(brackets),
            sampler: Arc::new(sampler),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spaces(&self) -> &[SpaceKind] {
        &self.spaces
    }

    pub fn top_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    /// Replaces the bracket function, keeping everything else.
    pub fn with_brackets(
        &self,
        name: impl Into<String>,
        brackets: impl Fn(&[GradedElement]) -> Result<GradedElement> + Send + Sync + 'static,
    ) -> Self {
        LInfinityStructure {
            name: name.into(),
            brackets: Arc::new(brackets),
            ..self.clone()
        }
    }

    /// A description such as `ΓL → Γ(𝔻L)^1`, highest degree first.
    pub fn complex_description(&self) -> String {
        let parts: Vec<String> = self.spaces.iter().rev().map(ToString::to_string).collect();
        parts.join(" → ")
    }

    /// `l_k(args)` with `k = args.len()`. Brackets above the arity bound,
    /// outputs outside the complex, and brackets with a zero argument are zero.
    pub fn bracket(&self, args: &[GradedElement]) -> Result<GradedElement> {
        let k = args.len();
        if k == 0 {
            return Err(Error::ArityMismatch { expected: 1, got: 0 });
        }
        for a in args {
            if a.degree() > self.top_degree() {
                return Err(Error::InvalidDegree {
                    degree: a.degree(),
                    reason: "element degree exceeds the top of the complex",
                });
            }
        }
        let total: usize = args.iter().map(GradedElement::degree).sum::<usize>() + k;
        if total < 2 || total - 2 > self.top_degree() {
            return Ok(GradedElement::zero(total.saturating_sub(2)));
        }
        let out = total - 2;
        if k > self.arity_bound || args.iter().any(GradedElement::is_zero) {
            return Ok(GradedElement::zero(out));
        }
        (self.brackets)(args)
    }

    pub fn sample(&self, s: &mut Sampler, degree: usize) -> GradedElement {
        if degree > self.top_degree() || self.spaces[degree] == SpaceKind::Zero {
            return GradedElement::zero(degree);
        }
        (self.sampler)(s, degree)
    }
}

/// The left side of the `n`-th higher Jacobi identity
/// `Σ_{i+j=n+1} Σ_σ sgn(σ) ε(σ) (−1)^{i(j−1)} l_j(l_i(a_σ(1), …, a_σ(i)), a_σ(i+1), …, a_σ(n))`,
/// with `σ` running over `(i, n − i)` unshuffles.
pub fn jacobi_residual(s: &LInfinityStructure, elems: &[GradedElement]) -> Result<GradedElement> {
    let n = elems.len();
    if n == 0 {
        return Err(Error::ArityMismatch { expected: 1, got: 0 });
    }
    if n > s.arity_bound() + 1 {
        return Err(Error::ArityError {
            n,
            bound: s.arity_bound(),
        });
    }
    let degrees: Vec<usize> = elems.iter().map(GradedElement::degree).collect();
    let out = (degrees.iter().sum::<usize>() + n).saturating_sub(3);
    let mut acc = GradedElement::zero(out);
    for i in 1..=n {
        let j = n + 1 - i;
        let outer_sign = if (i * (j - 1)) % 2 == 0 { 1 } else { -1 };
        for sigma in signs::unshuffles(i, n) {
            let sign = signs::signature(&sigma) * signs::koszul_sign(&sigma, &degrees) * outer_sign;
            let inner_args: Vec<GradedElement> = sigma[..i].iter().map(|&k| elems[k].clone()).collect();
            let inner = s.bracket(&inner_args)?;
            if inner.is_zero() {
                continue;
            }
            let mut outer_args = vec![inner];
            outer_args.extend(sigma[i..].iter().map(|&k| elems[k].clone()));
            let term = s.bracket(&outer_args)?;
            acc = acc.add(&term.signed(sign))?;
        }
    }
    Ok(acc)
}

/// `l_k(a_σ) − sgn(σ) ε(σ) l_k(a)`; zero for graded skew-symmetric brackets.
pub fn skew_residual(s: &LInfinityStructure, elems: &[GradedElement], perm: &[usize]) -> Result<GradedElement> {
    let degrees: Vec<usize> = elems.iter().map(GradedElement::degree).collect();
    let permuted: Vec<GradedElement> = perm.iter().map(|&k| elems[k].clone()).collect();
    let sign = signs::signature(perm) * signs::koszul_sign(perm, &degrees);
    s.bracket(&permuted)?.sub(&s.bracket(elems)?.signed(sign))
}

/// Nondecreasing degree tuples of length `n` whose Jacobi residual can be
/// nonzero (its degree `Σ deg + n − 3` lies inside the complex).
pub fn degree_patterns(s: &LInfinityStructure, n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, min: usize, top: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for d in min..=top {
            cur.push(d);
            go(n, d, top, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    go(n, 0, s.top_degree(), &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|d| d.iter().sum::<usize>() + n <= s.top_degree() + 3)
        .filter(|d| d.iter().all(|&k| s.spaces()[k] != SpaceKind::Zero))
        .collect()
}

/// Higher Jacobi residuals for `n = 1..=max_n` on random tuples of every
/// relevant degree pattern. Checks are named `jacobi-n{n}`.
pub fn jacobi_checks(
    s: &LInfinityStructure,
    max_n: usize,
    samples: usize,
    seed: u64,
    params: SampleParams,
) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for case in 0..samples {
        out.extend(jacobi_case(s, max_n, case, seed, params)?);
    }
    Ok(out)
}

/// The Jacobi outcomes of a single case.
pub fn jacobi_case(
    s: &LInfinityStructure,
    max_n: usize,
    case: usize,
    seed: u64,
    params: SampleParams,
) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let mut sampler = Sampler::for_case(params, seed, &format!("jacobi/{}", s.name()), case);
    for n in 1..=max_n {
        for pattern in degree_patterns(s, n) {
            let elems: Vec<GradedElement> = pattern.iter().map(|&d| s.sample(&mut sampler, d)).collect();
            let r = jacobi_residual(s, &elems)?;
            out.push(CheckOutcome::new(format!("jacobi-n{n}"), case, r.is_zero(), || {
                json!({
                    "structure": s.name(),
                    "degrees": pattern,
                    "inputs": elems.iter().map(GradedElement::to_json).collect::<Vec<_>>(),
                    "residual": r.to_json(),
                })
            }));
        }
    }
    Ok(out)
}

/// Graded skew-symmetry of `l_k` (for `2 ≤ k ≤ max_k`) under random
/// permutations of random tuples. Checks are named `skew-l{k}`.
pub fn skew_checks(
    s: &LInfinityStructure,
    max_k: usize,
    samples: usize,
    seed: u64,
    params: SampleParams,
) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for case in 0..samples {
        let mut sampler = Sampler::for_case(params, seed, &format!("skew/{}", s.name()), case);
        for k in 2..=max_k.min(s.arity_bound()) {
            let perms = signs::permutations(k);
            for pattern in degree_patterns(s, k) {
                let elems: Vec<GradedElement> = pattern.iter().map(|&d| s.sample(&mut sampler, d)).collect();
                let idx = sampler.small_int(1_000_000).unsigned_abs() as usize % perms.len();
                let perm = &perms[idx];
                let r = skew_residual(s, &elems, perm)?;
                out.push(CheckOutcome::new(format!("skew-l{k}"), case, r.is_zero(), || {
                    json!({
                        "structure": s.name(),
                        "permutation": perm,
                        "inputs": elems.iter().map(GradedElement::to_json).collect::<Vec<_>>(),
                        "residual": r.to_json(),
                    })
                }));
            }
        }
    }
    Ok(out)
}
