//! Acceptance criteria, each evaluated at its stated size with exact
//! arithmetic. Prints one PASS/FAIL line per criterion and exits nonzero if
//! any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use lcourant::atiyah::calculus_checks;
use lcourant::jacobi::{dirac_gauge, non_invertible_gauge_pair, same_span};
use lcourant::linalg;
use lcourant::linf::{
    build_dl0, build_graph_linf, build_semidirect, build_two_term, cohomologous_iso, graph_embedding, graph_sampler,
    jacobi_checks, kappa, morphism_residuals, strict_residuals, theorem_dl0_morphism, DgLeibniz, GradedElement,
    RepHomotopy, TwoTermOptions,
};
use lcourant::observables::{jacobiator_residual, useful_lemma_residual, HamiltonianForm, Subbundle};
use lcourant::poly::Rational;
use lcourant::report::first_failure;
use lcourant::{
    AtiyahForm, CheckOutcome, Connection, Derivation, Error, JacobiBiderivation, OmniLie, SampleParams, Sampler,
    Scalar, INF,
};

type Outcome = Result<String, String>;

fn eps(n: usize, idx: &[usize]) -> AtiyahForm {
    AtiyahForm::eps(n, idx).unwrap()
}

fn x(n: usize, i: usize) -> Scalar {
    Scalar::var(n, i).unwrap()
}

fn green(label: &str, out: &[CheckOutcome]) -> Result<usize, String> {
    match first_failure(out) {
        None => Ok(out.len()),
        Some(o) => Err(format!(
            "{label}: {} failed at case {}: {}",
            o.check,
            o.case_index,
            o.witness.as_ref().map(|w| w.to_string()).unwrap_or_default().chars().take(400).collect::<String>()
        )),
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Cartan calculus on at least 100 forms per size, all degrees.
fn atiyah_calculus() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for n in 1..=3 {
        let params = SampleParams::new(n, 2, 3);
        let out = calculus_checks(params, 100 + n as u64, 100);
        let degrees: std::collections::BTreeSet<usize> = (0..100).map(|c| c % (n + 2)).collect();
        ensure(degrees.len() == n + 2, format!("n = {n}: not every degree 0..=n+1 was sampled"))?;
        for check in ["d-squared", "cartan", "lie-contraction", "unit-homotopy"] {
            let count = out.iter().filter(|o| o.check == check).count();
            ensure(count >= 100, format!("n = {n}: only {count} {check} cases"))?;
        }
        total += green(&format!("n = {n}"), &out)?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), format!("took {elapsed:?}, budget 30s"))?;
    Ok(format!("{total} exact zeros for n = 1, 2, 3 in {:.1}s", elapsed.as_secs_f64()))
}

/// The five axioms for 𝔻L and (𝔻L)_ω, and an LC1 witness for an open ω.
fn lcourant_axioms() -> Outcome {
    let params = SampleParams::new(2, 2, 3);
    let omni = OmniLie::untwisted(2).lcourant_axioms(25, 201, params);
    let twisted = OmniLie::twisted(eps(2, &[1, 2, INF])).unwrap().lcourant_axioms(25, 202, params);
    let a = green("𝔻L", &omni)?;
    let b = green("(𝔻L)_ω", &twisted)?;
    for out in [&omni, &twisted] {
        for k in 1..=5 {
            let count = out.iter().filter(|o| o.check == format!("LC{k}")).count();
            ensure(count == 25, format!("LC{k}: {count} cases"))?;
        }
    }

    let open = AtiyahForm::term(3, &[1, 2, INF], x(3, 3)).unwrap();
    ensure(!open.differential().is_zero(), "witness form should be open")?;
    let out = OmniLie::twisted(open).unwrap().lcourant_axioms(5, 203, SampleParams::new(3, 1, 2));
    let witness = out.iter().find(|o| o.check == "LC1" && !o.passed());
    ensure(witness.is_some_and(|o| o.witness.is_some()), "open ω produced no LC1 failure witness")?;
    Ok(format!("{} zero residuals; open ω breaks LC1 with a witness", a + b))
}

/// Higher Jacobi identities up to arity 4 on both 2-term algebras, and the
/// sabotaged algebra failing at arity 3.
fn linf_oracle() -> Outcome {
    let params = SampleParams::new(2, 1, 3);
    let mut total = 0;
    for (label, c) in [
        ("untwisted", OmniLie::untwisted(2)),
        ("twisted", OmniLie::twisted(eps(2, &[1, 2, INF])).unwrap()),
    ] {
        let s = build_two_term(&c, TwoTermOptions::default());
        let out = jacobi_checks(&s, 4, 50, 301, params).map_err(|e| e.to_string())?;
        for k in 1..=4 {
            let count = out.iter().filter(|o| o.check == format!("jacobi-n{k}")).count();
            ensure(count >= 50, format!("{label}: only {count} arity-{k} tuples"))?;
        }
        total += green(label, &out)?;
    }
    let broken = build_two_term(&OmniLie::untwisted(2), TwoTermOptions { drop_l3: true });
    let out = jacobi_checks(&broken, 4, 10, 302, params).map_err(|e| e.to_string())?;
    ensure(
        out.iter().any(|o| o.check == "jacobi-n3" && !o.passed()),
        "dropping l3 was not detected at arity 3",
    )?;
    Ok(format!("{total} zero residuals; dropping l3 fails at arity 3"))
}

/// l2 and l3 of the 2-term algebra of 𝔻L coincide with the semidirect product.
fn semidirect_agreement() -> Outcome {
    let params = SampleParams::new(2, 2, 3);
    let semi = build_semidirect(&RepHomotopy::new(2));
    let two = build_two_term(&OmniLie::untwisted(2), TwoTermOptions::default());
    let mut s = Sampler::new(params, 401);
    for i in 0..200 {
        let (a, b, c) = (two.sample(&mut s, 0), two.sample(&mut s, 0), two.sample(&mut s, 0));
        let f = two.sample(&mut s, 1);
        let tuples = [
            vec![a.clone(), b.clone()],
            vec![a.clone(), f.clone()],
            vec![f, a.clone()],
            vec![a, b, c],
        ];
        for args in tuples {
            let lhs = semi.bracket(&args).map_err(|e| e.to_string())?;
            let rhs = two.bracket(&args).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, format!("input {i}: {lhs} != {rhs}"))?;
        }
    }
    Ok("200 inputs, l2 and l3 identical".into())
}

/// Coordinates of φ0 on the basis 1-forms, whose kernel must be trivial.
fn embedding_kernel(omega: &AtiyahForm) -> Result<(usize, usize), String> {
    let n = omega.nvars();
    let xi = Subbundle::graph(omega).map_err(|e| e.to_string())?;
    let phi = graph_embedding(omega).map_err(|e| e.to_string())?;
    let mut cols = Vec::new();
    for a in (1..=n).chain([INF]) {
        let h = HamiltonianForm::solve(eps(n, &[a]), &xi).map_err(|e| e.to_string())?;
        let image = phi.apply(&GradedElement::ham(0, h)).map_err(|e| e.to_string())?;
        cols.push(image.as_section().unwrap().coordinates());
    }
    let k0 = linalg::kernel_columns(&cols, cols[0].len(), n).len();
    let one = phi.apply(&GradedElement::scalar(1, Scalar::one(n))).map_err(|e| e.to_string())?;
    let k1 = linalg::kernel_columns(&[vec![one.as_scalar().unwrap().clone()]], 1, n).len();
    Ok((k0, k1))
}

/// The three morphisms, 50 cases each, and injectivity of the embedding.
fn morphisms() -> Outcome {
    let params = SampleParams::new(2, 1, 3);
    let omni = build_two_term(&OmniLie::untwisted(2), TwoTermOptions::default());
    let mut total = 0;

    for case in 0..50 {
        let b = Sampler::for_case(params, 501, "closed B", case).closed_form(2);
        let source = build_dl0(&b).map_err(|e| e.to_string())?;
        let phi = theorem_dl0_morphism(&b);
        let out = morphism_residuals(&phi, &source, &omni, 1, 502 + case as u64, params).map_err(|e| e.to_string())?;
        total += green("(𝔻L)^0 morphism", &out)?;
        let mut s = Sampler::for_case(params, 503, "injective", case);
        let e = source.sample(&mut s, 0);
        let image = phi.apply(&e).map_err(|e| e.to_string())?;
        let y = image.as_section().unwrap();
        let back = lcourant::DSection::new(y.der().clone(), y.form().contract(&Derivation::unit(2)));
        ensure(Some(&back) == e.as_section(), "φ0 of the (𝔻L)^0 morphism is not injective")?;
    }

    let w = eps(2, &[1, 2, INF]);
    for case in 0..50 {
        let b = Sampler::for_case(params, 504, "B", case).form(2);
        let a = build_two_term(&OmniLie::twisted(w.clone()).unwrap(), TwoTermOptions::default());
        let t = build_two_term(&OmniLie::twisted(w.add(&b.differential())).unwrap(), TwoTermOptions::default());
        let phi = cohomologous_iso(&b).map_err(|e| e.to_string())?;
        let out = strict_residuals(&phi, &a, &t, 3, 1, 505 + case as u64, params).map_err(|e| e.to_string())?;
        total += green("strict isomorphism", &out)?;
    }

    let a = build_graph_linf(&w).map_err(|e| e.to_string())?;
    let t = build_two_term(&OmniLie::twisted(w.clone()).unwrap(), TwoTermOptions::default());
    let phi = graph_embedding(&w).map_err(|e| e.to_string())?;
    let out = morphism_residuals(&phi, &a, &t, 50, 506, params).map_err(|e| e.to_string())?;
    total += green("graph embedding", &out)?;
    let (k0, k1) = embedding_kernel(&w)?;
    ensure(k0 == 0 && k1 == 0, format!("embedding kernels have dimensions {k0}, {k1}"))?;
    Ok(format!("{total} zero residuals over 3 × 50 cases; ker φ0 = ker φ1 = 0"))
}

/// Curvature of splittings of (𝔻L)_ω with the shift law `H_{A+θ} = H_A + dθ`.
fn exact_curvature() -> Outcome {
    let w = eps(2, &[1, 2, INF]);
    let c = OmniLie::twisted(w.clone()).unwrap();
    let h0 = Connection::trivial(2).curvature(&c);
    ensure(h0 == w, format!("zero splitting has curvature {h0}, expected {w}"))?;

    let params = SampleParams::new(2, 2, 3);
    let (mut plus_fail, mut minus_ok) = (0, 0);
    let mut first = None;
    for case in 0..25 {
        let mut s = Sampler::for_case(params, 601, "curvature", case);
        let a = Connection::new(s.form(2)).map_err(|e| e.to_string())?;
        let theta = s.form(2);
        let h = a.curvature(&c);
        ensure(h.differential().is_zero(), format!("case {case}: dH != 0"))?;
        let p = h.primitive().map_err(|e| e.to_string())?;
        ensure(p.differential() == h, format!("case {case}: d(primitive H) != H"))?;

        let shifted = a.shifted(&theta).map_err(|e| e.to_string())?.curvature(&c);
        let dtheta = theta.differential();
        if shifted != h.add(&dtheta) {
            plus_fail += 1;
            first.get_or_insert_with(|| format!("θ = {theta}, H_(A+θ) − H_A − dθ = {}", shifted.sub(&h).sub(&dtheta)));
        }
        if shifted == h.sub(&dtheta) {
            minus_ok += 1;
        }
    }
    if plus_fail > 0 {
        return Err(format!(
            "shift law H_(A+θ) = H_A + dθ fails on {plus_fail}/25 cases; H_(A+θ) = H_A − dθ holds on {minus_ok}/25; first: {}",
            first.unwrap_or_default().chars().take(300).collect::<String>()
        ));
    }
    Ok("zero splitting, closedness, shift law, and primitive exact on 25 cases".into())
}

/// `Gr(ε^{12∞})` with three variables: ambiguity spanned by `∂3`.
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

/// Antisymmetry and the Jacobiator identity on 50 triples, the contracted
/// identity for 3 and 4 arguments, and representative independence.
fn observables() -> Outcome {
    let w = eps(2, &[1, 2, INF]);
    let xi = Subbundle::graph(&w).map_err(|e| e.to_string())?;
    let ham = graph_sampler(&xi);
    let mut s = Sampler::new(SampleParams::new(2, 2, 3), 701);
    for i in 0..50 {
        let (a, b, c) = (ham(&mut s), ham(&mut s), ham(&mut s));
        ensure(a.bracket(&b).add(&b.bracket(&a)).is_zero(), format!("triple {i}: not antisymmetric"))?;
        let j = jacobiator_residual(&a, &b, &c);
        ensure(j.is_zero(), format!("triple {i}: Jacobiator residual {j}"))?;
        let d = ham(&mut s);
        let four = [a, b, c, d];
        for k in [3, 4] {
            let r = useful_lemma_residual(&four[..k], 2).map_err(|e| e.to_string())?;
            ensure(r.is_zero(), format!("triple {i}: contracted identity with {k} arguments: {r}"))?;
        }
    }

    let g = Subbundle::graph(&eps(3, &[1, 2, INF])).map_err(|e| e.to_string())?;
    let amb = g.hamiltonian_ambiguity();
    ensure(amb == vec![Derivation::partial(3, 3).unwrap()], "unexpected ambiguity")?;
    let mut s = Sampler::new(SampleParams::new(3, 1, 2), 702);
    for i in 0..10 {
        let a = degenerate_hamiltonian(&mut s, &g);
        let b = degenerate_hamiltonian(&mut s, &g);
        let shift = amb[0].scale(&s.scalar());
        let moved = HamiltonianForm::with_derivation(a.alpha().clone(), a.der().add(&shift), &g).map_err(|e| e.to_string())?;
        ensure(a.bracket(&b) == moved.bracket(&b), format!("degenerate pair {i}: bracket depends on Δ_α"))?;
    }
    Ok("50 triples exact; contracted identity at 3 and 4 arguments; degenerate ξ independent of representative".into())
}

/// The observable L∞-algebra of `Gr(ε^{12∞})` and the sign table.
fn graph_linf() -> Outcome {
    let w = eps(2, &[1, 2, INF]);
    let s = build_graph_linf(&w).map_err(|e| e.to_string())?;
    let out = jacobi_checks(&s, 4, 50, 801, SampleParams::new(2, 1, 3)).map_err(|e| e.to_string())?;
    let n = green("observables", &out)?;
    for k in 2..=12usize {
        let expected: i64 = if k % 2 == 0 { (-1i64).pow((k / 2 + 1) as u32) } else { (-1i64).pow(((k - 1) / 2) as u32) };
        ensure(kappa(k) == expected, format!("κ({k}) = {}, expected {expected}", kappa(k)))?;
    }
    ensure(kappa(2) == 1 && kappa(3) == -1, "κ(2), κ(3) should be +1, −1")?;
    Ok(format!("{n} zero residuals up to arity 4; κ(2..=12) matches"))
}

/// Derivation rule and graded Leibniz on 50 cases; positive-degree brackets vanish.
fn dg_leibniz() -> Outcome {
    let dg = DgLeibniz::new(&eps(2, &[1, 2, INF])).map_err(|e| e.to_string())?;
    let params = SampleParams::new(2, 1, 3);
    let out = dg.checks(50, 901, params).map_err(|e| e.to_string())?;
    for check in ["derivation-rule", "graded-leibniz"] {
        ensure(out.iter().filter(|o| o.check == check).count() >= 50, format!("too few {check} cases"))?;
    }
    let n = green("dg Leibniz", &out)?;
    let mut s = Sampler::new(params, 902);
    for i in 0..50 {
        let a = dg.sample(&mut s, 1);
        let b = dg.sample(&mut s, i % 2);
        ensure(dg.bracket(&a, &b).map_err(|e| e.to_string())?.is_zero(), format!("case {i}: [a, b] != 0 with deg a = 1"))?;
    }
    Ok(format!("{n} zero residuals; brackets with positive-degree first argument vanish"))
}

/// Both Jacobi tests agree; twisted tests agree; gauge laws; singular gauge.
fn jacobi_suites() -> Outcome {
    let params = SampleParams::new(2, 1, 2);
    let mut s = Sampler::new(params, 1001);
    let (mut jacobi, mut not) = (0, 0);
    for i in 0..50 {
        let j = JacobiBiderivation::random(&mut s);
        let out = j.jacobi_checks(3, 1002 + i, params);
        let bracket = out.iter().filter(|o| o.check == "jacobi-identity").all(CheckOutcome::passed);
        let graph = out.iter().filter(|o| o.check == "graph-involutive").all(CheckOutcome::passed);
        ensure(bracket == graph, format!("biderivation {i}: bracket test {bracket}, graph test {graph}"))?;
        if bracket {
            jacobi += 1;
        } else {
            not += 1;
        }
        for w in [AtiyahForm::zero(2, 3), eps(2, &[1, 2, INF])] {
            let family = j.twisted_jacobi_on_spanning_family(&w).map_err(|e| e.to_string())?.holds;
            let graph = j.graph().is_involutive_in(Some(&w)).map_err(|e| e.to_string())?.holds;
            ensure(family == graph, format!("biderivation {i}: twisted tests disagree for ω = {w}"))?;
        }
    }
    let theta = AtiyahForm::term(3, &[2], x(3, 1)).unwrap().add(&eps(3, &[3])).differential();
    let j3 = JacobiBiderivation::from_nondegenerate_form(&theta).map_err(|e| e.to_string())?;
    let w3 = eps(3, &[1, 2, INF]);
    let family = j3.twisted_jacobi_on_spanning_family(&w3).map_err(|e| e.to_string())?.holds;
    let graph = j3.graph().is_involutive_in(Some(&w3)).map_err(|e| e.to_string())?.holds;
    ensure(!family && !graph, "rank-4 structure should not be ε^12∞-twisted Jacobi")?;

    let contact = JacobiBiderivation::from_nondegenerate_form(&eps(1, &[1, INF])).map_err(|e| e.to_string())?;
    let mut s = Sampler::new(SampleParams::new(1, 1, 2), 1003);
    for i in 0..10 {
        let (b1, b2) = (s.closed_form(2), s.closed_form(2));
        let g1 = contact.gauge(&b1).map_err(|e| e.to_string())?;
        let law = same_span(&g1.graph(), &dirac_gauge(&contact.graph(), &b1).map_err(|e| e.to_string())?);
        ensure(law, format!("pair {i}: Gr(τ_B J) != τ_B Gr(J)"))?;
        let lhs = g1.gauge(&b2).map_err(|e| e.to_string())?;
        let rhs = contact.gauge(&b1.add(&b2)).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, format!("pair {i}: τ_B2 ∘ τ_B1 != τ_(B1+B2)"))?;
        let xi = contact.graph();
        let l = dirac_gauge(&dirac_gauge(&xi, &b1).map_err(|e| e.to_string())?, &b2).map_err(|e| e.to_string())?;
        let r = dirac_gauge(&xi, &b1.add(&b2)).map_err(|e| e.to_string())?;
        ensure(l == r, format!("pair {i}: Dirac gauges do not compose"))?;
    }
    let (j0, b0) = non_invertible_gauge_pair();
    let err = j0.gauge(&b0);
    ensure(matches!(err, Err(Error::NonInvertible { .. })), format!("expected NonInvertible, got {err:?}"))?;
    Ok(format!(
        "50 biderivations ({jacobi} Jacobi, {not} not), tests agree; twisted tests agree; gauge laws hold; NonInvertible witnessed"
    ))
}

/// The shipped scenario through the binary.
fn end_to_end() -> Outcome {
    let scenario = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/all-suites.json");
    let text = std::fs::read_to_string(scenario).map_err(|e| e.to_string())?;
    let sc = lcourant_cli::Scenario::parse(&text).map_err(|e| e.to_string())?;
    ensure(sc.n <= 2 && sc.max_degree <= 2, "scenario is larger than n = 2, max_degree = 2")?;
    ensure(sc.suites.len() == lcourant_cli::suites::SUITES.len(), "scenario does not name every suite")?;
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_lcourant"))
        .args(["verify", "--scenario", scenario])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(0), format!("exit {:?}: {}", out.status.code(), stdout.lines().last().unwrap_or("")))?;
    ensure(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    Ok(format!("exit 0 in {:.1}s; {}", elapsed.as_secs_f64(), stdout.lines().last().unwrap_or("")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("atiyah calculus", atiyah_calculus),
        ("L-Courant axioms", lcourant_axioms),
        ("L∞ oracle", linf_oracle),
        ("semidirect agreement", semidirect_agreement),
        ("morphisms", morphisms),
        ("exact curvature", exact_curvature),
        ("observables", observables),
        ("observable L∞-algebra", graph_linf),
        ("dg Leibniz", dg_leibniz),
        ("Jacobi structures", jacobi_suites),
        ("end to end", end_to_end),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS criterion {:>2} ({name}): {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}): {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
