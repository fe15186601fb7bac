//! Jacobi biderivations `J : Λ²J¹L → L`, their graphs, twisted Jacobi
//! structures, and gauge transformations.
//!
//! A biderivation is stored as an antisymmetric `(n+1) × (n+1)` matrix
//! `J_ab = J(ε^a, ε^b)` over the dual basis `ε^1, …, ε^n, ε^∞`, with `ε^∞`
//! in the last row and column.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::atiyah::{AtiyahForm, INF};
use crate::dcourant::DSection;
use crate::error::{Error, Result};
use crate::gauge::Derivation;
use crate::linalg::{self, Matrix};
use crate::observables::Subbundle;
use crate::report::{CheckOutcome, Verdict};
use crate::sample::{SampleParams, Sampler};
use crate::scalar::Scalar;
use crate::serial::{json as js, ScalarRecord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiBiderivation {
    nvars: usize,
    matrix: Matrix,
}

/// Position of a basis index (`1..=n` or [`INF`]) in the matrix.
fn slot(nvars: usize, index: usize) -> Result<usize> {
    match index {
        INF => Ok(nvars),
        i if (1..=nvars).contains(&i) => Ok(i - 1),
        i => Err(Error::IndexOutOfRange { index: i, nvars }),
    }
}

impl JacobiBiderivation {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let m = matrix.len();
        if m == 0 {
            return Err(Error::Malformed("a biderivation needs at least the ε^∞ row".into()));
        }
        let nvars = m - 1;
        for (a, row) in matrix.iter().enumerate() {
            if row.len() != m {
                return Err(Error::DimensionMismatch { left: m, right: row.len() });
            }
            for (b, x) in row.iter().enumerate() {
                if x.nvars() != nvars {
                    return Err(Error::DimensionMismatch {
                        left: nvars,
                        right: x.nvars(),
                    });
                }
                if !x.add(&matrix[b][a]).is_zero() {
                    return Err(Error::Malformed(format!("matrix is not antisymmetric at ({a}, {b})")));
                }
            }
        }
        Ok(JacobiBiderivation { nvars, matrix })
    }

    pub fn zero(nvars: usize) -> Self {
        JacobiBiderivation {
            nvars,
            matrix: vec![vec![Scalar::zero(nvars); nvars + 1]; nvars + 1],
        }
    }

    /// The biderivation with `{s, t} = i_{Δ_s} dt`, where `i_{Δ_s} ω = ds`,
    /// for a 2-form `ω` with `Δ ↦ i_Δ ω` invertible.
    pub fn from_nondegenerate_form(omega: &AtiyahForm) -> Result<Self> {
        if omega.degree() != 2 {
            return Err(Error::InvalidDegree {
                degree: omega.degree(),
                reason: "a Jacobi structure comes from a 2-form",
            });
        }
        let n = omega.nvars();
        // Column k of the flat map holds the coefficients of i_{e_k} ω.
        let flat: Matrix = (0..=n)
            .map(|a| {
                (0..=n)
                    .map(|k| omega.contract(&Derivation::basis(n, k)).coeff_vector()[a].clone())
                    .collect()
            })
            .collect();
        let det = linalg::determinant(&flat);
        if det.is_zero() {
            let rank = linalg::rank(&flat, n + 1);
            return Err(Error::Degenerate { rank, expected: n + 1 });
        }
        // Column a of the inverse is the derivation Δ with i_Δ ω = ε^a;
        // J(ε^a, ε^b) = ε^b(Δ_a) is its b-th component.
        let inv = linalg::inverse(&flat)?;
        let matrix = (0..=n).map(|a| (0..=n).map(|b| inv[b][a].clone()).collect()).collect();
        JacobiBiderivation::new(matrix)
    }

    /// A random antisymmetric matrix of sampled scalars.
    pub fn random(s: &mut Sampler) -> Self {
        let n = s.nvars();
        let mut matrix = vec![vec![Scalar::zero(n); n + 1]; n + 1];
        for a in 0..=n {
            for b in a + 1..=n {
                let x = s.scalar();
                matrix[b][a] = x.neg();
                matrix[a][b] = x;
            }
        }
        JacobiBiderivation { nvars: n, matrix }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `J(ε^a, ε^b)` for basis indices in `1..=n` or [`INF`].
    pub fn entry(&self, a: usize, b: usize) -> Result<&Scalar> {
        Ok(&self.matrix[slot(self.nvars, a)?][slot(self.nvars, b)?])
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Scalar::is_zero)
    }

    /// `J(α, β)` for 1-forms.
    pub fn evaluate(&self, alpha: &AtiyahForm, beta: &AtiyahForm) -> Scalar {
        let (a, b) = (alpha.coeff_vector(), beta.coeff_vector());
        let mut acc = Scalar::zero(self.nvars);
        for (i, row) in self.matrix.iter().enumerate() {
            if a[i].is_zero() {
                continue;
            }
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() && !b[j].is_zero() {
                    acc = acc.add(&a[i].mul(x).mul(&b[j]));
                }
            }
        }
        acc
    }

    /// `{s, t} = J(ds, dt)`.
    pub fn bracket(&self, s: &Scalar, t: &Scalar) -> Scalar {
        self.evaluate(&d(s), &d(t))
    }

    /// `J^♯(α)`, the derivation with `J^♯(α)(s) = J(α, ds)`.
    pub fn sharp(&self, alpha: &AtiyahForm) -> Derivation {
        let a = alpha.coeff_vector();
        let comps = (0..=self.nvars)
            .map(|b| {
                (0..=self.nvars).fold(Scalar::zero(self.nvars), |acc, i| {
                    if a[i].is_zero() || self.matrix[i][b].is_zero() {
                        acc
                    } else {
                        acc.add(&a[i].mul(&self.matrix[i][b]))
                    }
                })
            })
            .collect();
        Derivation::from_components(comps)
    }

    /// `Δ_s = {s, −} = J^♯(ds)`.
    pub fn hamiltonian(&self, s: &Scalar) -> Derivation {
        self.sharp(&d(s))
    }

    /// `Gr(J^♯) = span{(J^♯ ε^a, ε^a)}`.
    pub fn graph(&self) -> Subbundle {
        let n = self.nvars;
        let gens = (0..=n)
            .map(|k| {
                let idx = if k == n { INF } else { k + 1 };
                let e = AtiyahForm::eps(n, &[idx]).expect("valid index");
                DSection::new(self.sharp(&e), e)
            })
            .collect();
        Subbundle::new(n, 1, gens).expect("form parts are a basis")
    }

    /// `{s1, {s2, s3}} + c.p.`
    pub fn jacobiator(&self, s1: &Scalar, s2: &Scalar, s3: &Scalar) -> Scalar {
        let b = |x: &Scalar, y: &Scalar| self.bracket(x, y);
        b(s1, &b(s2, s3)).add(&b(s2, &b(s3, s1))).add(&b(s3, &b(s1, s2)))
    }

    /// `{s1, {s2, s3}} + c.p. − ω(Δ_{s1}, Δ_{s2}, Δ_{s3})`.
    pub fn twisted_jacobi_residual(&self, omega: &AtiyahForm, s1: &Scalar, s2: &Scalar, s3: &Scalar) -> Result<Scalar> {
        check_closed_3(omega)?;
        let ders = [self.hamiltonian(s1), self.hamiltonian(s2), self.hamiltonian(s3)];
        Ok(self.jacobiator(s1, s2, s3).sub(&omega.evaluate(&ders)?))
    }

    /// The twisted residual on every triple from `{1, x_1, …, x_n}`, which
    /// determines it since both sides are derivations in each argument.
    /// Returns the first nonzero triple as a witness.
    pub fn twisted_jacobi_on_spanning_family(&self, omega: &AtiyahForm) -> Result<Verdict> {
        let n = self.nvars;
        let mut family = vec![Scalar::one(n)];
        family.extend((1..=n).map(|i| Scalar::var(n, i).expect("valid variable")));
        for (i, a) in family.iter().enumerate() {
            for (j, b) in family.iter().enumerate().skip(i + 1) {
                for c in family.iter().skip(j + 1) {
                    let r = self.twisted_jacobi_residual(omega, a, b, c)?;
                    if !r.is_zero() {
                        return Ok(Verdict::no(json!({
                            "s1": js::scalar(a), "s2": js::scalar(b), "s3": js::scalar(c),
                            "residual": js::scalar(&r),
                        })));
                    }
                }
            }
        }
        Ok(Verdict::yes())
    }

    /// The Jacobi identity on random triples (`jacobi-identity`, one per
    /// case) and involutivity of `Gr(J^♯)` (`graph-involutive`, case 0).
    ///
    /// Triples have degree at least 2: on affine functions the Jacobiator
    /// reduces to a multiple of a determinant, which small random
    /// coefficients make vanish too often.
    pub fn jacobi_checks(&self, samples: usize, seed: u64, params: SampleParams) -> Vec<CheckOutcome> {
        let params = SampleParams::new(params.nvars, params.max_degree.max(2), params.coeff_bound.max(3));
        let mut out = Vec::new();
        for case in 0..samples {
            let mut s = Sampler::for_case(params, seed, "jacobi-identity", case);
            let (a, b, c) = (s.scalar(), s.scalar(), s.scalar());
            let r = self.jacobiator(&a, &b, &c);
            out.push(CheckOutcome::new("jacobi-identity", case, r.is_zero(), || {
                json!({
                    "s1": js::scalar(&a), "s2": js::scalar(&b), "s3": js::scalar(&c),
                    "residual": js::scalar(&r),
                })
            }));
        }
        let v = self.graph().is_involutive();
        out.push(CheckOutcome::new("graph-involutive", 0, v.holds, || {
            v.witness.clone().unwrap_or_default()
        }));
        out
    }

    /// Both Jacobi tests must pass.
    pub fn is_jacobi(&self, samples: usize, seed: u64, params: SampleParams) -> Verdict {
        let out = self.jacobi_checks(samples, seed, params);
        match out.iter().find(|o| !o.passed()) {
            None => Verdict::yes(),
            Some(o) => Verdict::no(json!({"check": o.check, "witness": o.witness})),
        }
    }

    /// `⟦α, β⟧_ω = L_{J^♯α} β − i_{J^♯β} dα − i_{J^♯β} i_{J^♯α} ω` on 1-forms.
    pub fn jet_bracket(&self, omega: Option<&AtiyahForm>, alpha: &AtiyahForm, beta: &AtiyahForm) -> AtiyahForm {
        let (da, db) = (self.sharp(alpha), self.sharp(beta));
        let mut out = beta.lie_derivative(&da).sub(&alpha.differential().contract(&db));
        if let Some(w) = omega {
            out = out.sub(&w.contract(&da).contract(&db));
        }
        out
    }

    /// Lie algebroid axioms for `(J¹L, ⟦-,-⟧_ω, σ ∘ J^♯)` on random 1-forms:
    /// `skew`, `jacobi`, `leibniz`, and `anchor` (the anchor preserves brackets).
    pub fn jet_algebroid_checks(
        &self,
        omega: Option<&AtiyahForm>,
        samples: usize,
        seed: u64,
        params: SampleParams,
    ) -> Vec<CheckOutcome> {
        let mut out = Vec::new();
        for case in 0..samples {
            let mut s = Sampler::for_case(params, seed, "jet-algebroid", case);
            let (a, b, c) = (s.form(1), s.form(1), s.form(1));
            let f = s.scalar();
            let br = |x: &AtiyahForm, y: &AtiyahForm| self.jet_bracket(omega, x, y);
            let w = |r: serde_json::Value| {
                json!({"alpha": js::form(&a), "beta": js::form(&b), "gamma": js::form(&c), "f": js::scalar(&f), "residual": r})
            };
            let ab = br(&a, &b);
            let skew = ab.add(&br(&b, &a));
            out.push(CheckOutcome::new("skew", case, skew.is_zero(), || w(js::form(&skew))));
            let jac = br(&a, &br(&b, &c)).sub(&br(&ab, &c)).sub(&br(&b, &br(&a, &c)));
            out.push(CheckOutcome::new("jacobi", case, jac.is_zero(), || w(js::form(&jac))));
            let anchor_a = self.sharp(&a);
            let leib = br(&a, &b.scale(&f))
                .sub(&ab.scale(&f))
                .sub(&b.scale(&anchor_a.symbol_apply(&f)));
            out.push(CheckOutcome::new("leibniz", case, leib.is_zero(), || w(js::form(&leib))));
            let sym = |d: &Derivation| Derivation::new(d.symbol().to_vec(), Scalar::zero(self.nvars)).expect("same size");
            let anchor = sym(&self.sharp(&ab)).sub(&sym(&anchor_a).commutator(&sym(&self.sharp(&b))));
            out.push(CheckOutcome::new("anchor", case, anchor.is_zero(), || w(js::derivation(&anchor))));
        }
        out
    }

    /// `τ_B(J)`, with `τ_B(J)^♯ = J^♯ (Id + B̃ J^♯)^{-1}`; in matrix terms
    /// `(I + J B)^{-1} J` with `B_bc = B(e_b, e_c)`.
    pub fn gauge(&self, b: &AtiyahForm) -> Result<JacobiBiderivation> {
        if b.degree() != 2 {
            return Err(Error::InvalidDegree {
                degree: b.degree(),
                reason: "gauge transformations use a 2-form",
            });
        }
        check_closed(b)?;
        self.gauge_unchecked(b)
    }

    fn gauge_unchecked(&self, b: &AtiyahForm) -> Result<JacobiBiderivation> {
        let n = self.nvars;
        let basis: Vec<Derivation> = (0..=n).map(|k| Derivation::basis(n, k)).collect();
        let bm: Matrix = basis
            .iter()
            .map(|x| basis.iter().map(|y| b.evaluate(&[x.clone(), y.clone()]).expect("degree 2")).collect())
            .collect();
        let mut m = linalg::mat_mul(&self.matrix, &bm);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = row[i].add(&Scalar::one(n));
        }
        let inv = linalg::inverse(&m)?;
        JacobiBiderivation::new(linalg::mat_mul(&inv, &self.matrix))
    }
}

fn d(s: &Scalar) -> AtiyahForm {
    AtiyahForm::scalar(s.clone()).differential()
}

fn check_closed(w: &AtiyahForm) -> Result<()> {
    if w.differential().is_zero() {
        Ok(())
    } else {
        Err(Error::NotClosed { degree: w.degree() })
    }
}

fn check_closed_3(w: &AtiyahForm) -> Result<()> {
    if w.degree() != 3 {
        return Err(Error::InvalidDegree {
            degree: w.degree(),
            reason: "the twisting form has degree 3",
        });
    }
    check_closed(w)
}

/// Bounded search for a biderivation on two variables that is not Jacobi:
/// entries of degree at most 1 with coefficients in `−2..=2`, drawn from
/// a fixed seed.
pub fn search_non_jacobi(seed: u64, attempts: usize) -> Option<JacobiBiderivation> {
    let params = SampleParams::new(2, 1, 2);
    let mut s = Sampler::new(params, seed);
    (0..attempts)
        .map(|_| JacobiBiderivation::random(&mut s))
        .find(|j| !j.is_jacobi(2, seed, params).holds)
}

/// `(J, B)` on one variable with `Id + B̃ J^♯` singular: `J` comes from
/// `ε^{1∞}` and `B = −ε^{1∞}`.
pub fn non_invertible_gauge_pair() -> (JacobiBiderivation, AtiyahForm) {
    let w = AtiyahForm::eps(1, &[1, INF]).expect("valid indices");
    let j = JacobiBiderivation::from_nondegenerate_form(&w).expect("nondegenerate");
    (j, w.neg())
}

/// `τ_B(ξ) = {(Δ, α + i_Δ B)}` for a Dirac-Jacobi structure `ξ ⊂ 𝔻L`.
pub fn dirac_gauge(xi: &Subbundle, b: &AtiyahForm) -> Result<Subbundle> {
    if xi.p() != 1 {
        return Err(Error::InvalidDegree {
            degree: xi.p(),
            reason: "Dirac-Jacobi structures live in order 1",
        });
    }
    xi.gauge(b)
}

/// Two subbundles with the same span.
pub fn same_span(a: &Subbundle, b: &Subbundle) -> bool {
    a.rank() == b.rank() && a.generators().iter().all(|g| b.contains(g))
}

/// Serialized form `{n, matrix}` with row-major scalar entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JacobiRecord {
    pub n: usize,
    pub matrix: Vec<Vec<ScalarRecord>>,
}

impl JacobiRecord {
    pub fn encode(j: &JacobiBiderivation) -> Self {
        JacobiRecord {
            n: j.nvars,
            matrix: j.matrix.iter().map(|r| r.iter().map(ScalarRecord::encode).collect()).collect(),
        }
    }

    pub fn decode(&self) -> Result<JacobiBiderivation> {
        if self.matrix.len() != self.n + 1 {
            return Err(Error::Malformed(format!(
                "matrix: expected {} rows, got {}",
                self.n + 1,
                self.matrix.len()
            )));
        }
        let m = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|x| x.decode(self.n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Matrix>>()?;
        JacobiBiderivation::new(m)
    }
}
