//! The named suites. Each suite expands a scenario into independent jobs;
//! a job yields the outcomes of one case (or of one structural check).

use std::sync::Arc;

use lcourant::atiyah::calculus_case;
use lcourant::jacobi::{dirac_gauge, non_invertible_gauge_pair, same_span, search_non_jacobi};
use lcourant::linalg::{self, Matrix};
use lcourant::linf::{
    build_dl0, build_graph_linf, build_observables, build_semidirect, build_three_term, build_two_term,
    cohomologous_iso, graph_embedding, graph_sampler, jacobi_case, kappa, morphism_case, rescale_iso, skew_checks,
    strict_residuals, theorem_dl0_morphism, DgLeibniz, GradedElement, LInfMorphism, LInfinityStructure,
    RepHomotopy, TwoTermOptions,
};
use lcourant::observables::{graph_identity_residuals, jacobiator_residual, useful_lemma_residual};
use lcourant::observables::{HamiltonianForm, Subbundle};
use lcourant::report::Verdict;
use lcourant::sample::case_seed;
use lcourant::serial::json as js;
use lcourant::{
    AtiyahForm, CheckOutcome, Connection, DSection, Derivation, Error, JacobiBiderivation, OmniLie, Result,
    SampleParams, Sampler, Scalar, INF,
};
use serde_json::json;

use crate::scenario::Scenario;

pub type Job = Box<dyn Fn() -> Result<Vec<CheckOutcome>> + Send + Sync>;

pub struct SuiteSpec {
    pub name: &'static str,
    pub min_vars: usize,
    pub max_vars: usize,
    pub about: &'static str,
    build: fn(&Scenario) -> Result<Vec<Job>>,
}

impl SuiteSpec {
    pub fn jobs(&self, scenario: &Scenario) -> Result<Vec<Job>> {
        (self.build)(scenario)
    }
}

pub static SUITES: &[SuiteSpec] = &[
    SuiteSpec {
        name: "atiyah-calculus",
        min_vars: 1,
        max_vars: crate::scenario::MAX_VARS,
        about: "d² = 0, Cartan formula, [L, i] = i_[,], unit homotopy",
        build: atiyah_calculus,
    },
    SuiteSpec {
        name: "lcourant-axioms",
        min_vars: 1,
        max_vars: crate::scenario::MAX_VARS,
        about: "LC1-LC5 for 𝔻L and its twist by ω",
        build: lcourant_axioms,
    },
    SuiteSpec {
        name: "linf-oracle",
        min_vars: 1,
        max_vars: crate::scenario::MAX_VARS,
        about: "higher Jacobi identities of the Courant L∞-algebras",
        build: linf_oracle,
    },
    SuiteSpec {
        name: "semidirect-agreement",
        min_vars: 1,
        max_vars: crate::scenario::MAX_VARS,
        about: "the 2-term algebra of 𝔻L is a semidirect product",
        build: semidirect_agreement,
    },
    SuiteSpec {
        name: "morphism-3-9",
        min_vars: 1,
        max_vars: crate::scenario::MAX_VARS,
        about: "(𝔻L)^0 with a closed B maps into the algebra of 𝔻L",
        build: morphism_dl0,
    },
    SuiteSpec {
        name: "morphism-5-9",
        min_vars: 2,
        max_vars: 2,
        about: "observables of Gr(ω) embed into the algebra of (𝔻L)_ω",
        build: morphism_graph,
    },
    SuiteSpec {
        name: "cohomologous-iso",
        min_vars: 1,
        max_vars: crate::scenario::MAX_VARS,
        about: "gauging by B is a strict isomorphism onto the dB-shifted twist",
        build: cohomologous,
    },
    SuiteSpec {
        name: "exact-curvature",
        min_vars: 1,
        max_vars: crate::scenario::MAX_VARS,
        about: "curvature of splittings: twist, closedness, shift law, primitive",
        build: exact_curvature,
    },
    SuiteSpec {
        name: "observables",
        min_vars: 2,
        max_vars: crate::scenario::MAX_VARS,
        about: "observable bracket of Gr(ω) and its L∞-algebra",
        build: observables,
    },
    SuiteSpec {
        name: "useful-lemma",
        min_vars: 2,
        max_vars: crate::scenario::MAX_VARS,
        about: "contracted-bracket identity on 3 and 4 Hamiltonian forms",
        build: useful_lemma,
    },
    SuiteSpec {
        name: "dg-leibniz",
        min_vars: 2,
        max_vars: crate::scenario::MAX_VARS,
        about: "dg Leibniz algebra of Gr(ω)",
        build: dg_leibniz,
    },
    SuiteSpec {
        name: "jacobi",
        min_vars: 1,
        max_vars: crate::scenario::MAX_VARS,
        about: "Jacobi biderivations: bracket test vs graph test, jet algebroid",
        build: jacobi,
    },
    SuiteSpec {
        name: "twisted-jacobi",
        min_vars: 1,
        max_vars: crate::scenario::MAX_VARS,
        about: "twisted Jacobi residual vs twisted graph involutivity",
        build: twisted_jacobi,
    },
    SuiteSpec {
        name: "gauge",
        min_vars: 1,
        max_vars: crate::scenario::MAX_VARS,
        about: "gauge transformations of Jacobi and Dirac-Jacobi structures",
        build: gauge,
    },
];

pub fn find(name: &str) -> Option<&'static SuiteSpec> {
    SUITES.iter().find(|s| s.name == name)
}

fn per_case<F>(samples: usize, f: F) -> Vec<Job>
where
    F: Fn(usize) -> Result<Vec<CheckOutcome>> + Send + Sync + 'static,
{
    let f = Arc::new(f);
    (0..samples)
        .map(|case| {
            let f = Arc::clone(&f);
            Box::new(move || f(case)) as Job
        })
        .collect()
}

fn once<F>(f: F) -> Job
where
    F: Fn() -> Result<Vec<CheckOutcome>> + Send + Sync + 'static,
{
    Box::new(f)
}

fn prefixed(prefix: &str, outs: Vec<CheckOutcome>) -> Vec<CheckOutcome> {
    outs.into_iter()
        .map(|mut o| {
            o.check = format!("{prefix}/{}", o.check);
            o
        })
        .collect()
}

fn verdict(check: &str, case: usize, v: Verdict) -> CheckOutcome {
    let Verdict { holds, witness } = v;
    CheckOutcome::new(check, case, holds, || witness.unwrap_or_default())
}

fn at_case(case: usize, outs: Vec<CheckOutcome>) -> Vec<CheckOutcome> {
    outs.into_iter()
        .map(|mut o| {
            o.case_index = case;
            o
        })
        .collect()
}

fn two_term(c: &OmniLie, scenario: &Scenario) -> LInfinityStructure {
    build_two_term(
        c,
        TwoTermOptions {
            drop_l3: scenario.sabotage.drop_l3,
        },
    )
}

fn sabotaged(phi: LInfMorphism, scenario: &Scenario) -> LInfMorphism {
    if scenario.sabotage.drop_phi2 {
        phi.without_phi2()
    } else {
        phi
    }
}

/// The twisted structures a scenario asks for: `(𝔻L)_ω` when ω is known.
fn structures(scenario: &Scenario) -> Result<Vec<OmniLie>> {
    let mut out = vec![OmniLie::untwisted(scenario.n)];
    if let Some(w) = scenario.omega() {
        out.push(OmniLie::twisted(w)?);
    }
    Ok(out)
}

fn require_omega(scenario: &Scenario) -> Result<AtiyahForm> {
    scenario
        .omega()
        .ok_or_else(|| Error::Malformed("this suite needs a twisting 3-form".into()))
}

fn atiyah_calculus(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed) = (sc.params(), sc.seed);
    Ok(per_case(sc.samples, move |case| Ok(calculus_case(params, seed, case))))
}

fn lcourant_axioms(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed) = (sc.params(), sc.seed);
    let all = structures(sc)?;
    Ok(per_case(sc.samples, move |case| {
        Ok(all
            .iter()
            .flat_map(|c| prefixed(c.name(), c.lcourant_case(case, seed, params)))
            .collect())
    }))
}

fn linf_oracle(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed) = (sc.params(), sc.seed);
    let mut algebras = Vec::new();
    for c in structures(sc)? {
        algebras.push((c.name().to_string(), two_term(&c, sc)));
    }
    algebras.push(("three-term".to_string(), build_three_term(&OmniLie::untwisted(sc.n))));
    let algebras = Arc::new(algebras);
    let mut jobs = Vec::new();
    let a = Arc::clone(&algebras);
    jobs.extend(per_case(sc.samples, move |case| {
        let mut out = Vec::new();
        for (name, s) in a.iter() {
            out.extend(prefixed(name, jacobi_case(s, 4, case, seed, params)?));
        }
        Ok(out)
    }));
    let samples = sc.samples;
    jobs.push(once(move || {
        let mut out = Vec::new();
        for (name, s) in algebras.iter() {
            out.extend(prefixed(name, skew_checks(s, 3, samples, seed, params)?));
        }
        Ok(out)
    }));
    Ok(jobs)
}

fn semidirect_agreement(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed, n) = (sc.params(), sc.seed, sc.n);
    let rep = RepHomotopy::new(n);
    let semi = build_semidirect(&rep);
    let two = two_term(&OmniLie::untwisted(n), sc);
    let mut jobs = per_case(sc.samples, move |case| {
        let mut s = Sampler::for_case(params, seed, "semidirect-agreement", case);
        let (a, b, c) = (two.sample(&mut s, 0), two.sample(&mut s, 0), two.sample(&mut s, 0));
        let f = two.sample(&mut s, 1);
        let tuples: [(&str, Vec<GradedElement>); 5] = [
            ("l1", vec![f.clone()]),
            ("l2", vec![a.clone(), b.clone()]),
            ("l2-mixed", vec![a.clone(), f.clone()]),
            ("l2-mixed", vec![f.clone(), a.clone()]),
            ("l3", vec![a, b, c]),
        ];
        let mut out = Vec::new();
        for (name, args) in tuples {
            let r = semi.bracket(&args)?.sub(&two.bracket(&args)?)?;
            out.push(CheckOutcome::new(name, case, r.is_zero(), || {
                json!({
                    "inputs": args.iter().map(GradedElement::to_json).collect::<Vec<_>>(),
                    "residual": r.to_json(),
                })
            }));
        }
        Ok(out)
    });
    let samples = sc.samples;
    jobs.push(once(move || {
        Ok(prefixed("rep", lcourant::linf::rep_homotopy_checks(&rep, samples, seed, params)))
    }));
    Ok(jobs)
}

fn morphism_dl0(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed, n) = (sc.params(), sc.seed, sc.n);
    let fixed = sc.form("B").cloned();
    let target = Arc::new(two_term(&OmniLie::untwisted(n), sc));
    let drop_phi2 = sc.sabotage.drop_phi2;
    Ok(per_case(sc.samples, move |case| {
        let b = match &fixed {
            Some(b) => b.clone(),
            None => Sampler::for_case(params, seed, "morphism-3-9/B", case).closed_form(2),
        };
        let source = build_dl0(&b)?;
        let mut phi = theorem_dl0_morphism(&b);
        if drop_phi2 {
            phi = phi.without_phi2();
        }
        let mut out = morphism_case(&phi, &source, &target, case, seed, params)?;

        // φ0(Δ, s) = (Δ, ds) has the left inverse (Δ, α) ↦ (Δ, i_𝟙 α).
        let mut s = Sampler::for_case(params, seed, "morphism-3-9/injective", case);
        let x = source.sample(&mut s, 0);
        let image = phi.apply(&x)?;
        let y = image.as_section().expect("sections map to sections");
        let back = DSection::new(y.der().clone(), y.form().contract(&Derivation::unit(n)));
        let ok = Some(&back) == x.as_section();
        out.push(CheckOutcome::new("phi0-left-inverse", case, ok, || {
            json!({"input": x.to_json(), "image": image.to_json(), "recovered": js::section(&back)})
        }));
        Ok(out)
    }))
}

/// Columns are the coordinates of `φ0(ε^a)` for the basis 1-forms; an empty
/// kernel certifies injectivity of the (function-linear) map.
fn graph_embedding_kernels(omega: &AtiyahForm, phi: &LInfMorphism) -> Result<Vec<CheckOutcome>> {
    let n = omega.nvars();
    let xi = Subbundle::graph(omega)?;
    let mut cols = Vec::new();
    for a in (1..=n).chain([INF]) {
        let h = HamiltonianForm::solve(AtiyahForm::eps(n, &[a])?, &xi)?;
        let image = phi.apply(&GradedElement::ham(0, h))?;
        let e = image.as_section().expect("degree 0 maps to sections");
        cols.push(e.coordinates());
    }
    let rows = cols[0].len();
    let k0 = linalg::kernel_columns(&cols, rows, n);
    let one = phi.apply(&GradedElement::scalar(1, Scalar::one(n)))?;
    let col1 = vec![one.as_scalar().cloned().unwrap_or_else(|| Scalar::zero(n))];
    let k1 = linalg::kernel_columns(&[col1], 1, n);
    let witness = |k: &[Vec<Scalar>]| json!({"kernel": k.iter().map(|v| v.iter().map(js::scalar).collect::<Vec<_>>()).collect::<Vec<_>>()});
    Ok(vec![
        CheckOutcome::new("phi0-kernel", 0, k0.is_empty(), || witness(&k0)),
        CheckOutcome::new("phi1-kernel", 0, k1.is_empty(), || witness(&k1)),
    ])
}

fn morphism_graph(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed) = (sc.params(), sc.seed);
    let omega = require_omega(sc)?;
    let source = Arc::new(build_graph_linf(&omega)?);
    let target = Arc::new(two_term(&OmniLie::twisted(omega.clone())?, sc));
    let phi = Arc::new(sabotaged(graph_embedding(&omega)?, sc));
    let p = Arc::clone(&phi);
    let mut jobs = per_case(sc.samples, move |case| morphism_case(&p, &source, &target, case, seed, params));
    jobs.push(once(move || graph_embedding_kernels(&omega, &phi)));
    Ok(jobs)
}

fn cohomologous(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed, n) = (sc.params(), sc.seed, sc.n);
    let base = sc.omega().unwrap_or_else(|| AtiyahForm::zero(n, 3));
    let fixed = sc.form("B").cloned();
    let drop_phi2 = sc.sabotage.drop_phi2;
    let drop_l3 = sc.sabotage.drop_l3;
    Ok(per_case(sc.samples, move |case| {
        let b = match &fixed {
            Some(b) => b.clone(),
            None => Sampler::for_case(params, seed, "cohomologous-iso/B", case).form(2),
        };
        let opts = TwoTermOptions { drop_l3 };
        let source = build_two_term(&OmniLie::twisted(base.clone())?, opts);
        let target = build_two_term(&OmniLie::twisted(base.add(&b.differential()))?, opts);
        let mut phi = cohomologous_iso(&b)?;
        if drop_phi2 {
            phi = phi.without_phi2();
        }
        let sub_seed = case_seed(seed, "cohomologous-iso", case);
        let mut out = strict_residuals(&phi, &source, &target, 3, 1, sub_seed, params)?;
        out.extend(morphism_case(&phi, &source, &target, 0, sub_seed, params)?);
        Ok(at_case(case, out))
    }))
}

fn exact_curvature(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed, samples) = (sc.params(), sc.seed, sc.samples);
    let mut jobs = Vec::new();
    for c in structures(sc)? {
        let c2 = c.clone();
        jobs.push(once(move || {
            Ok(prefixed(c2.name(), Connection::curvature_checks(&c2, samples, seed, params)))
        }));
        if let Some(theta) = sc.form("theta").cloned() {
            jobs.push(once(move || {
                let a = Connection::trivial(c.nvars());
                let h = a.curvature(&c);
                let shifted = a.shifted(&theta)?.curvature(&c);
                let r = shifted.sub(&h).add(&theta.differential());
                Ok(vec![CheckOutcome::new(format!("{}/shift-law-theta", c.name()), 0, r.is_zero(), || {
                    json!({"theta": js::form(&theta), "residual": js::form(&r)})
                })])
            }));
        }
    }
    Ok(jobs)
}

/// A Hamiltonian 1-form of `Gr(ε^{12∞})` in `n ≥ 3` variables, whose
/// ambiguity is spanned by `∂3, …, ∂n`: coefficients independent of
/// `x3, …, xn` plus an exact part.
fn degenerate_hamiltonian(s: &mut Sampler, xi: &Subbundle) -> Result<HamiltonianForm> {
    let n = xi.nvars();
    let zero = lcourant::poly::Rational::from_integer(0.into());
    let mut alpha = AtiyahForm::zero(n, 1);
    for idx in [1, 2, INF] {
        let mut f = s.scalar();
        for v in 3..=n {
            f = f.eval_var(v, &zero)?;
        }
        alpha = alpha.add(&AtiyahForm::term(n, &[idx], f)?);
    }
    alpha = alpha.add(&AtiyahForm::scalar(s.scalar()).differential());
    HamiltonianForm::solve(alpha, xi)
}

fn observables(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed, n, samples) = (sc.params(), sc.seed, sc.n, sc.samples);
    let omega = require_omega(sc)?;
    let xi = Subbundle::graph(&omega)?;
    let ham = graph_sampler(&xi);
    let linf = Arc::new(build_graph_linf(&omega)?);
    let degenerate = if n >= 3 {
        Some(Subbundle::graph(&AtiyahForm::eps(n, &[1, 2, INF])?)?)
    } else {
        None
    };

    let (w, l) = (omega.clone(), Arc::clone(&linf));
    let mut jobs = per_case(samples, move |case| {
        let mut s = Sampler::for_case(params, seed, "observables", case);
        let (a, b, c) = (ham(&mut s), ham(&mut s), ham(&mut s));
        let inputs = |r: &AtiyahForm| {
            json!({
                "alpha": js::form(a.alpha()), "beta": js::form(b.alpha()), "gamma": js::form(c.alpha()),
                "residual": js::form(r),
            })
        };
        let mut out = Vec::new();
        let anti = a.bracket(&b).add(&b.bracket(&a));
        out.push(CheckOutcome::new("antisymmetry", case, anti.is_zero(), || inputs(&anti)));
        let jac = jacobiator_residual(&a, &b, &c);
        out.push(CheckOutcome::new("jacobiator", case, jac.is_zero(), || inputs(&jac)));
        if w.degree() == 3 {
            for (name, r) in graph_identity_residuals(&w, &a, &b, &c) {
                out.push(CheckOutcome::new(name, case, r.is_zero(), || inputs(&r)));
            }
        }

        if let Some(g) = &degenerate {
            let mut s = Sampler::for_case(params, seed, "observables/degenerate", case);
            let a = degenerate_hamiltonian(&mut s, g)?;
            let b = degenerate_hamiltonian(&mut s, g)?;
            let mut shift = Derivation::zero(n);
            for v in g.hamiltonian_ambiguity() {
                shift = shift.add(&v.scale(&s.scalar()));
            }
            let moved = HamiltonianForm::with_derivation(a.alpha().clone(), a.der().add(&shift), g)?;
            let r = a.bracket(&b).sub(&moved.bracket(&b));
            out.push(CheckOutcome::new("representative-independence", case, r.is_zero(), || {
                json!({
                    "alpha": js::form(a.alpha()), "beta": js::form(b.alpha()),
                    "shift": js::derivation(&shift), "residual": js::form(&r),
                })
            }));
        }

        out.extend(prefixed("linf", jacobi_case(&l, 4, case, seed, params)?));
        Ok(out)
    });

    jobs.push(once(|| {
        let expected = [1, -1, -1, 1, 1, -1, -1, 1];
        let got: Vec<i64> = (2..10).map(kappa).collect();
        let ok = got == expected;
        Ok(vec![CheckOutcome::new("kappa-table", 0, ok, || {
            json!({"k": (2..10).collect::<Vec<_>>(), "kappa": got, "expected": expected})
        })])
    }));

    let x = xi.clone();
    jobs.push(once(move || Ok(prefixed("induced-algebroid", x.induced_algebroid_checks(samples, seed, params)))));

    jobs.push(once(move || {
        let lambda = lcourant::poly::Rational::new((-3).into(), 2.into());
        let (target, phi) = rescale_iso(&lambda, &xi)?;
        let a = build_observables("source", &xi, graph_sampler(&xi))?;
        let b = build_observables("rescaled", &target, graph_sampler(&target))?;
        let mut out = strict_residuals(&phi, &a, &b, 3, samples, seed, params)?;
        if xi.p() == 2 {
            out.extend(lcourant::linf::morphism_residuals(&phi, &a, &b, samples, seed, params)?);
        }
        Ok(prefixed("rescale", out))
    }));
    Ok(jobs)
}

fn useful_lemma(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed) = (sc.params(), sc.seed);
    let omega = require_omega(sc)?;
    let xi = Subbundle::graph(&omega)?;
    let p = xi.p();
    let ham = graph_sampler(&xi);
    Ok(per_case(sc.samples, move |case| {
        let mut s = Sampler::for_case(params, seed, "useful-lemma", case);
        let alphas: Vec<HamiltonianForm> = (0..4).map(|_| ham(&mut s)).collect();
        let mut out = Vec::new();
        for k in [3, 4] {
            let r = useful_lemma_residual(&alphas[..k], p)?;
            out.push(CheckOutcome::new(format!("arity-{k}"), case, r.is_zero(), || {
                json!({
                    "alphas": alphas[..k].iter().map(|h| js::form(h.alpha())).collect::<Vec<_>>(),
                    "residual": js::form(&r),
                })
            }));
        }
        Ok(out)
    }))
}

fn dg_leibniz(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed) = (sc.params(), sc.seed);
    let omega = match sc.form("omega") {
        Some(w) => w.clone(),
        None => volume_form(sc.n)?,
    };
    let dg = DgLeibniz::new(&omega)?;
    Ok(per_case(sc.samples, move |case| {
        let mut out = dg.case(case, seed, params)?;
        let mut s = Sampler::for_case(params, seed, "dg-leibniz/positive", case);
        for da in 1..=dg.top_degree() {
            let a = dg.sample(&mut s, da);
            let b = dg.sample(&mut s, 0);
            let r = dg.bracket(&a, &b)?;
            out.push(CheckOutcome::new("positive-degree-vanishes", case, r.is_zero(), || {
                json!({"inputs": [a.to_json(), b.to_json()], "residual": r.to_json()})
            }));
        }
        Ok(out)
    }))
}

/// `ε^{1⋯n∞}`, nondegenerate in every dimension.
fn volume_form(n: usize) -> Result<AtiyahForm> {
    let idx: Vec<usize> = (1..=n).chain([INF]).collect();
    AtiyahForm::eps(n, &idx)
}

/// A Jacobi structure in `n` variables: the contact line for `n = 1`, the
/// constant Poisson bivector `∂1 ∧ ∂2` otherwise.
pub fn known_jacobi(n: usize) -> Result<JacobiBiderivation> {
    if n == 1 {
        return JacobiBiderivation::from_nondegenerate_form(&AtiyahForm::eps(1, &[1, INF])?);
    }
    let mut m: Matrix = vec![vec![Scalar::zero(n); n + 1]; n + 1];
    m[0][1] = Scalar::one(n);
    m[1][0] = Scalar::from_int(n, -1);
    JacobiBiderivation::new(m)
}

/// The Jacobi structure of the nondegenerate form `d(x1 ε^2 + ε^3)` in three
/// variables, whose rank is large enough for twists to matter.
pub fn theta_jacobi() -> Result<JacobiBiderivation> {
    let x1 = Scalar::var(3, 1)?;
    let theta = AtiyahForm::term(3, &[2], x1)?.add(&AtiyahForm::eps(3, &[3])?).differential();
    JacobiBiderivation::from_nondegenerate_form(&theta)
}

/// Runs both Jacobi tests on `j` and reports whether their verdicts agree.
fn agreement(check: &str, case: usize, j: &JacobiBiderivation, seed: u64, params: SampleParams) -> CheckOutcome {
    let out = j.jacobi_checks(3, seed, params);
    let bracket = out.iter().filter(|o| o.check == "jacobi-identity").all(CheckOutcome::passed);
    let graph = out.iter().filter(|o| o.check == "graph-involutive").all(CheckOutcome::passed);
    CheckOutcome::new(check, case, bracket == graph, || {
        json!({
            "matrix": lcourant::jacobi::JacobiRecord::encode(j),
            "bracket_test": bracket,
            "graph_test": graph,
        })
    })
}

fn jacobi(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed, n, samples) = (sc.params(), sc.seed, sc.n, sc.samples);
    let mut jobs = per_case(samples, move |case| {
        let mut s = Sampler::for_case(params, seed, "jacobi/random", case);
        let j = JacobiBiderivation::random(&mut s);
        Ok(vec![agreement("agreement", case, &j, case_seed(seed, "jacobi/test", case), params)])
    });
    let known = known_jacobi(n)?;
    let k = known.clone();
    jobs.push(once(move || {
        let mut out = vec![
            verdict("known/is-jacobi", 0, k.is_jacobi(samples, seed, params)),
            agreement("known/agreement", 0, &k, seed, params),
        ];
        out.extend(prefixed("jet-algebroid", k.jet_algebroid_checks(None, samples, seed, params)));
        Ok(out)
    }));
    jobs.push(once(move || {
        let found = search_non_jacobi(seed, 200);
        let ok = found.as_ref().is_some_and(|j| {
            let out = j.jacobi_checks(3, seed, SampleParams::new(2, 1, 2));
            out.iter().any(|o| o.check == "jacobi-identity" && !o.passed())
                && out.iter().any(|o| o.check == "graph-involutive" && !o.passed())
        });
        Ok(vec![CheckOutcome::new("non-jacobi-witness", 0, ok, || {
            json!({"search": {"n": 2, "max_degree": 1, "coeff_bound": 2, "attempts": 200, "seed": seed}})
        })])
    }));
    Ok(jobs)
}

fn twisted_jacobi(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed, n, samples) = (sc.params(), sc.seed, sc.n, sc.samples);
    let mut twists = vec![AtiyahForm::zero(n, 3)];
    twists.extend(sc.omega());
    let ts = twists.clone();
    let mut jobs = per_case(samples, move |case| {
        let mut s = Sampler::for_case(params, seed, "twisted-jacobi/random", case);
        let j = JacobiBiderivation::random(&mut s);
        let mut out = Vec::new();
        for (k, w) in ts.iter().enumerate() {
            let family = j.twisted_jacobi_on_spanning_family(w)?;
            let graph = j.graph().is_involutive_in(Some(w))?;
            let (a, b) = (family.holds, graph.holds);
            out.push(CheckOutcome::new(format!("agreement-{k}"), case, a == b, || {
                json!({
                    "matrix": lcourant::jacobi::JacobiRecord::encode(&j),
                    "omega": js::form(w),
                    "residual_test": family,
                    "graph_test": graph,
                })
            }));
        }
        Ok(out)
    });

    let known = known_jacobi(n)?;
    let omega = sc.omega();
    jobs.push(once(move || {
        let Some(w) = &omega else { return Ok(Vec::new()) };
        // Below rank 3 the twist term vanishes, so a Jacobi structure is
        // also twisted Jacobi for every ω.
        let mut out = vec![verdict("known/twisted", 0, known.twisted_jacobi_on_spanning_family(w)?)];
        out.push(verdict("known/twisted-graph", 0, known.graph().is_involutive_in(Some(w))?));
        out.extend(prefixed("jet-algebroid", known.jet_algebroid_checks(Some(w), samples, seed, params)));
        Ok(out)
    }));

    if n == 3 {
        jobs.push(once(move || {
            let j = theta_jacobi()?;
            let w = AtiyahForm::eps(3, &[1, 2, INF])?;
            let v = j.twisted_jacobi_on_spanning_family(&w)?;
            let g = j.graph().is_involutive_in(Some(&w))?;
            let ok = !v.holds && !g.holds && v.witness.is_some();
            Ok(vec![CheckOutcome::new("twist-detected", 0, ok, || {
                json!({"residual_test": v, "graph_test": g})
            })])
        }));
    }
    Ok(jobs)
}

const GAUGE_ATTEMPTS: usize = 16;

fn gauge(sc: &Scenario) -> Result<Vec<Job>> {
    let (params, seed, n) = (sc.params(), sc.seed, sc.n);
    let j = known_jacobi(n)?;
    let fixed = sc.form("B").cloned();
    let mut jobs = per_case(sc.samples, move |case| {
        let mut s = Sampler::for_case(params, seed, "gauge", case);
        // τ_B is only defined when Id + B̃ J^♯ is invertible; random pairs
        // that hit a singular matrix are redrawn.
        let mut attempt = 0;
        let (b1, b2, g1, lhs, rhs) = loop {
            let b1 = fixed.clone().unwrap_or_else(|| s.closed_form(2));
            let b2 = s.closed_form(2);
            let gauged = j.gauge(&b1).and_then(|g1| {
                let lhs = g1.gauge(&b2)?;
                let rhs = j.gauge(&b1.add(&b2))?;
                Ok((g1, lhs, rhs))
            });
            match gauged {
                Ok((g1, lhs, rhs)) => break (b1, b2, g1, lhs, rhs),
                Err(Error::NonInvertible { .. }) if attempt < GAUGE_ATTEMPTS => attempt += 1,
                Err(e) => return Err(e),
            }
        };
        let w = |r: serde_json::Value| json!({"B1": js::form(&b1), "B2": js::form(&b2), "detail": r});
        let mut out = Vec::new();

        let graph_law = same_span(&g1.graph(), &dirac_gauge(&j.graph(), &b1)?);
        out.push(CheckOutcome::new("graph-law", case, graph_law, || {
            w(json!({"gauged": lcourant::jacobi::JacobiRecord::encode(&g1)}))
        }));

        out.push(CheckOutcome::new("composition", case, lhs == rhs, || {
            w(json!({
                "composed": lcourant::jacobi::JacobiRecord::encode(&lhs),
                "direct": lcourant::jacobi::JacobiRecord::encode(&rhs),
            }))
        }));

        let xi = j.graph();
        let dl = dirac_gauge(&dirac_gauge(&xi, &b1)?, &b2)?;
        let dr = dirac_gauge(&xi, &b1.add(&b2))?;
        out.push(CheckOutcome::new("dirac-composition", case, dl == dr, || w(json!(null))));
        let gx = dirac_gauge(&xi, &b1)?;
        out.push(verdict("gauged-isotropic", case, gx.is_isotropic()));
        out.push(verdict("gauged-involutive", case, gx.is_involutive()));
        let sub = case_seed(seed, "gauge/jacobi", case);
        out.push(verdict("gauged-jacobi", case, g1.is_jacobi(2, sub, params)));
        Ok(out)
    });
    jobs.push(once(|| {
        let (j0, b0) = non_invertible_gauge_pair();
        let res = j0.gauge(&b0);
        let ok = matches!(res, Err(Error::NonInvertible { .. }));
        let msg = match &res {
            Err(e) => e.to_string(),
            Ok(g) => format!("unexpectedly invertible: {:?}", lcourant::jacobi::JacobiRecord::encode(g)),
        };
        // The witness is kept even on success: it is the point of the check.
        Ok(vec![CheckOutcome {
            check: "non-invertible-witness".into(),
            case_index: 0,
            residual_is_zero: ok,
            witness: Some(json!({
                "J": lcourant::jacobi::JacobiRecord::encode(&j0),
                "B": js::form(&b0),
                "outcome": msg,
            })),
        }])
    }));
    Ok(jobs)
}
