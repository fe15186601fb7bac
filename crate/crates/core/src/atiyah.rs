//! Atiyah forms: alternating `L`-valued forms on the gauge algebroid.
//!
//! A form of degree `k` is stored densely by its values on the basis
//! `∂_1, …, ∂_n, 𝟙`, one [`Scalar`] per increasing `k`-subset of the index set
//! `{1, …, n, ∞}`. Index sets are written with one-based variable indices and
//! the constant [`INF`] for the unit direction, so `ε^{12∞}` is
//! `AtiyahForm::eps(2, &[1, 2, INF])`.
//!
//! All basis brackets vanish (`[∂_i, ∂_j] = 0`, `𝟙` is central), so the
//! differential reduces to `(dω)_S = Σ_a (−1)^a e_{s_a}(ω_{S∖s_a})`, where `∂_j`
//! acts by differentiation and `𝟙` by the identity.

use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::gauge::Derivation;
use crate::report::CheckOutcome;
use crate::sample::{SampleParams, Sampler};
use crate::scalar::Scalar;
use crate::serial::json as js;

/// The unit (`𝟙`, written `∞`) direction in index lists.
pub const INF: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AtiyahForm {
    nvars: usize,
    degree: usize,
    coeffs: Vec<Scalar>,
}

/// Bit masks of all `k`-subsets of `{0, …, m−1}` in increasing numeric order.
pub(crate) fn subsets(m: usize, k: usize) -> Vec<u32> {
    if k > m {
        return Vec::new();
    }
    (0u32..(1u32 << m))
        .filter(|mask| mask.count_ones() as usize == k)
        .collect()
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of `mask` in [`subsets`] (combinatorial number system).
fn rank(mask: u32) -> usize {
    bits(mask)
        .enumerate()
        .map(|(i, pos)| binom(pos, i + 1))
        .sum()
}

pub(crate) fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| mask & (1 << b) != 0)
}

/// `(−1)^{#{t ∈ mask : t < j}}`.
fn below_sign(mask: u32, j: usize) -> bool {
    (mask & ((1u32 << j) - 1)).count_ones() % 2 == 1
}

impl AtiyahForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        AtiyahForm {
            nvars,
            degree,
            coeffs: vec![Scalar::zero(nvars); binom(nvars + 1, degree)],
        }
    }

    /// A section of `L` seen as a form of degree zero.
    pub fn scalar(s: Scalar) -> Self {
        AtiyahForm {
            nvars: s.nvars(),
            degree: 0,
            coeffs: vec![s],
        }
    }

    /// `coeff · ε^{indices}`; unsorted indices contribute the sign of the
    /// sorting permutation and repeated indices give zero.
    pub fn term(nvars: usize, indices: &[usize], coeff: Scalar) -> Result<Self> {
        let mut slots = Vec::with_capacity(indices.len());
        for &i in indices {
            slots.push(slot(nvars, i)?);
        }
        let mut form = AtiyahForm::zero(nvars, indices.len());
        let mut mask = 0u32;
        let mut odd = false;
        for (a, &s) in slots.iter().enumerate() {
            if mask & (1 << s) != 0 {
                return Ok(form);
            }
            odd ^= slots[..a].iter().filter(|&&t| t > s).count() % 2 == 1;
            mask |= 1 << s;
        }
        form.coeffs[rank(mask)] = if odd { coeff.neg() } else { coeff };
        Ok(form)
    }

    /// The basis form `ε^{indices}`.
    pub fn eps(nvars: usize, indices: &[usize]) -> Result<Self> {
        AtiyahForm::term(nvars, indices, Scalar::one(nvars))
    }

    /// Builds a form from the values on each basis subset, in the order of
    /// [`AtiyahForm::basis_masks`].
    pub(crate) fn from_coeffs(nvars: usize, degree: usize, coeffs: Vec<Scalar>) -> Self {
        debug_assert_eq!(coeffs.len(), binom(nvars + 1, degree));
        AtiyahForm {
            nvars,
            degree,
            coeffs,
        }
    }

    pub(crate) fn from_fn(nvars: usize, degree: usize, mut f: impl FnMut(u32) -> Scalar) -> Self {
        let coeffs = subsets(nvars + 1, degree).into_iter().map(&mut f).collect();
        AtiyahForm {
            nvars,
            degree,
            coeffs,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of basis coefficients, `C(n+1, k)`.
    pub fn dimension(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff_vector(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub(crate) fn basis_masks(&self) -> Vec<u32> {
        subsets(self.nvars + 1, self.degree)
    }

    pub(crate) fn at(&self, mask: u32) -> &Scalar {
        &self.coeffs[rank(mask)]
    }

    /// Value on the basis elements listed by `indices` (one-based, [`INF`] for `𝟙`).
    pub fn coeff(&self, indices: &[usize]) -> Result<Scalar> {
        if indices.len() != self.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                got: indices.len(),
            });
        }
        let args = indices
            .iter()
            .map(|&i| Ok(Derivation::basis(self.nvars, slot(self.nvars, i)?)))
            .collect::<Result<Vec<_>>>()?;
        self.evaluate(&args)
    }

    /// Nonzero coefficients as (sorted index list, value) pairs, [`INF`] last.
    pub fn terms(&self) -> Vec<(Vec<usize>, Scalar)> {
        self.basis_masks()
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(mask, c)| {
                let idx = bits(mask)
                    .map(|b| if b == self.nvars { INF } else { b + 1 })
                    .collect();
                (idx, c.clone())
            })
            .collect()
    }

    /// The section of `L` held by a degree-zero form.
    pub fn as_scalar(&self) -> Option<&Scalar> {
        (self.degree == 0).then(|| &self.coeffs[0])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &AtiyahForm) -> AtiyahForm {
        self.zip_with(other, Scalar::add)
    }

    pub fn sub(&self, other: &AtiyahForm) -> AtiyahForm {
        self.zip_with(other, Scalar::sub)
    }

    pub fn neg(&self) -> AtiyahForm {
        self.map(Scalar::neg)
    }

    /// Multiplication by a function.
    pub fn scale(&self, f: &Scalar) -> AtiyahForm {
        self.map(|c| c.mul(f))
    }

    pub fn scale_rational(&self, q: &crate::poly::Rational) -> AtiyahForm {
        self.map(|c| c.scale(q))
    }

    pub fn half(&self) -> AtiyahForm {
        self.map(Scalar::half)
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> AtiyahForm {
        AtiyahForm {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn zip_with(&self, other: &AtiyahForm, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> AtiyahForm {
        assert_eq!(
            (self.nvars, self.degree),
            (other.nvars, other.degree),
            "forms must share variable count and degree"
        );
        AtiyahForm {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// `ω(Δ_1, …, Δ_k)`.
    pub fn evaluate(&self, args: &[Derivation]) -> Result<Scalar> {
        if args.len() != self.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                got: args.len(),
            });
        }
        let mut form = self.clone();
        for d in args {
            form = form.contract(d);
        }
        Ok(form.coeffs[0].clone())
    }

    /// The Atiyah differential `d_{DL}`.
    pub fn differential(&self) -> AtiyahForm {
        let unit = self.nvars;
        AtiyahForm::from_fn(self.nvars, self.degree + 1, |mask| {
            let mut acc = Scalar::zero(self.nvars);
            for (a, s) in bits(mask).enumerate() {
                let c = self.at(mask & !(1 << s));
                if c.is_zero() {
                    continue;
                }
                let term = if s == unit { c.clone() } else { c.partial(s) };
                acc = if a % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        })
    }

    /// Contraction `i_Δ ω`, inserting `Δ` into the first slot. Zero on degree 0.
    pub fn contract(&self, d: &Derivation) -> AtiyahForm {
        if self.degree == 0 {
            return AtiyahForm::zero(self.nvars, 0);
        }
        let m = self.nvars + 1;
        AtiyahForm::from_fn(self.nvars, self.degree - 1, |mask| {
            let mut acc = Scalar::zero(self.nvars);
            for j in (0..m).filter(|j| mask & (1 << j) == 0) {
                let dj = d.component(j);
                if dj.is_zero() {
                    continue;
                }
                let c = self.at(mask | (1 << j));
                if c.is_zero() {
                    continue;
                }
                let term = dj.mul(c);
                acc = if below_sign(mask, j) { acc.sub(&term) } else { acc.add(&term) };
            }
            acc
        })
    }

    /// Lie derivative `L_Δ ω`, computed from its defining formula
    /// `(L_Δω)(e_S) = Δ(ω(e_S)) − Σ_a ω(…, [Δ, e_{s_a}], …)`.
    pub fn lie_derivative(&self, d: &Derivation) -> AtiyahForm {
        let n = self.nvars;
        // [Δ, ∂_j] = −(∂_j X, ∂_j f); [Δ, 𝟙] = 0.
        let brackets: Vec<Derivation> = (0..n)
            .map(|j| Derivation::from_components(d.components().map(|c| c.partial(j).neg()).collect()))
            .collect();
        AtiyahForm::from_fn(n, self.degree, |mask| {
            let mut acc = d.apply(self.at(mask));
            for (a, s) in bits(mask).enumerate() {
                if s == n || brackets[s].is_zero() {
                    continue;
                }
                // ω(…, V at slot a, …) = (−1)^a (i_V ω)(e_{S∖s_a}).
                let rest = mask & !(1 << s);
                let v = &brackets[s];
                let mut val = Scalar::zero(n);
                for j in (0..=n).filter(|j| rest & (1 << j) == 0) {
                    let vj = v.component(j);
                    if vj.is_zero() {
                        continue;
                    }
                    let term = vj.mul(self.at(rest | (1 << j)));
                    val = if below_sign(rest, j) { val.sub(&term) } else { val.add(&term) };
                }
                acc = if a % 2 == 0 { acc.sub(&val) } else { acc.add(&val) };
            }
            acc
        })
    }

    /// The canonical primitive `i_𝟙 ω` of a closed form of positive degree.
    pub fn primitive(&self) -> Result<AtiyahForm> {
        if self.degree == 0 {
            return Err(Error::InvalidDegree {
                degree: 0,
                reason: "closed forms of degree zero are zero and have no primitive of lower degree",
            });
        }
        if !self.differential().is_zero() {
            return Err(Error::NotClosed {
                degree: self.degree,
            });
        }
        Ok(self.contract(&Derivation::unit(self.nvars)))
    }
}

/// `d(i_Δ ω)`, reading `i_Δ` of a degree-0 form as zero.
fn d_contract(w: &AtiyahForm, d: &Derivation) -> AtiyahForm {
    if w.degree == 0 {
        AtiyahForm::zero(w.nvars, 0)
    } else {
        w.contract(d).differential()
    }
}

/// The Cartan calculus identities on one random form of degree
/// `case mod (n + 2)` and two random derivations: `d-squared` (`d² = 0`),
/// `cartan` (`L_Δ = d i_Δ + i_Δ d`), `lie-contraction`
/// (`[L_Δ, i_∇] = i_{[Δ,∇]}`), and `unit-homotopy` (`d i_𝟙 + i_𝟙 d = id`).
pub fn calculus_case(params: SampleParams, seed: u64, case: usize) -> Vec<CheckOutcome> {
    let mut s = Sampler::for_case(params, seed, "atiyah-calculus", case);
    let n = params.nvars;
    let k = case % (n + 2);
    let w = s.form(k);
    let (a, b) = (s.derivation(), s.derivation());
    let witness = |r: &AtiyahForm| {
        json!({
            "form": js::form(&w), "delta": js::derivation(&a), "nabla": js::derivation(&b),
            "residual": js::form(r),
        })
    };
    let dd = w.differential().differential();
    let cartan = w.lie_derivative(&a).sub(&d_contract(&w, &a)).sub(&w.differential().contract(&a));
    let lie = w
        .contract(&b)
        .lie_derivative(&a)
        .sub(&w.lie_derivative(&a).contract(&b))
        .sub(&w.contract(&a.commutator(&b)));
    let unit = Derivation::unit(n);
    let homotopy = d_contract(&w, &unit).add(&w.differential().contract(&unit)).sub(&w);
    [("d-squared", dd), ("cartan", cartan), ("lie-contraction", lie), ("unit-homotopy", homotopy)]
        .into_iter()
        .map(|(name, r)| CheckOutcome::new(name, case, r.is_zero(), || witness(&r)))
        .collect()
}

/// [`calculus_case`] for `samples` cases.
pub fn calculus_checks(params: SampleParams, seed: u64, samples: usize) -> Vec<CheckOutcome> {
    (0..samples).flat_map(|c| calculus_case(params, seed, c)).collect()
}

/// Zero-based slot of a one-based index or [`INF`].
fn slot(nvars: usize, i: usize) -> Result<usize> {
    match i {
        INF => Ok(nvars),
        i if i >= 1 && i <= nvars => Ok(i - 1),
        i => Err(Error::IndexOutOfRange { index: i, nvars }),
    }
}

/// Human-readable name of an index set, e.g. `12∞`.
pub fn index_label(nvars: usize, indices: &[usize]) -> String {
    let parts: Vec<String> = indices
        .iter()
        .map(|&i| if i == INF { "∞".to_string() } else { i.to_string() })
        .collect();
    if nvars < 10 {
        parts.concat()
    } else {
        parts.join(",")
    }
}

impl fmt::Display for AtiyahForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let label = index_label(self.nvars, idx);
            if c.is_one() {
                write!(f, "ε^{label}")?;
            } else {
                write!(f, "({c})·ε^{label}")?;
            }
        }
        Ok(())
    }
}
