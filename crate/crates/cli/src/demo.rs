//! Short printed walkthroughs of the canonical examples.

use std::fmt::Write as _;

use lcourant::linf::{build_graph_linf, kappa, GradedElement};
use lcourant::observables::{HamiltonianForm, Subbundle};
use lcourant::{AtiyahForm, JacobiBiderivation, Result, Scalar, INF};

pub const DEMOS: &[&str] = &["canonical-p1", "canonical-p2", "acyclicity"];

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DemoError {
    #[error("unknown demo {0:?}; expected one of canonical-p1, canonical-p2, acyclicity")]
    UnknownDemo(String),
    #[error(transparent)]
    Library(#[from] lcourant::Error),
}

pub fn run(name: &str) -> std::result::Result<String, DemoError> {
    match name {
        "canonical-p1" => Ok(canonical_p1()?),
        "canonical-p2" => Ok(canonical_p2()?),
        "acyclicity" => Ok(acyclicity()?),
        other => Err(DemoError::UnknownDemo(other.to_string())),
    }
}

fn canonical_p1() -> Result<String> {
    let mut out = String::new();
    let omega = AtiyahForm::eps(1, &[1, INF])?;
    let j = JacobiBiderivation::from_nondegenerate_form(&omega)?;
    let x = Scalar::var(1, 1)?;
    let family = [("1", Scalar::one(1)), ("x", x.clone()), ("x^2", x.mul(&x))];
    let _ = writeln!(out, "ω = {omega} on one variable; Gr(ω) ⊂ 𝔻L is a Jacobi structure on L");
    let _ = writeln!(out, "bracket {{s, t}} = i_{{Δ_s}} dt:");
    for (a, s) in &family {
        for (b, t) in &family {
            let _ = writeln!(out, "  {{{a}, {b}}} = {}", j.bracket(s, t));
        }
    }
    let _ = writeln!(out, "Hamiltonian derivations:");
    for (a, s) in &family {
        let _ = writeln!(out, "  Δ_{a} = {}", j.hamiltonian(s));
    }
    Ok(out)
}

fn canonical_p2() -> Result<String> {
    let mut out = String::new();
    let omega = AtiyahForm::eps(2, &[1, 2, INF])?;
    let xi = Subbundle::graph(&omega)?;
    let linf = build_graph_linf(&omega)?;
    let _ = writeln!(out, "ω = {omega} on two variables; Gr(ω) ⊂ (𝔻L)^2");
    let _ = writeln!(out, "complex: {}", linf.complex_description());
    let _ = writeln!(out, "nonzero brackets: l1 = d, l2, l3");
    for k in 2..=3 {
        let _ = writeln!(out, "κ({k}) = {:+}", kappa(k));
    }
    let basis: Vec<(&str, HamiltonianForm)> = [("ε^1", 1), ("ε^2", 2), ("ε^∞", INF)]
        .into_iter()
        .map(|(name, i)| Ok((name, HamiltonianForm::solve(AtiyahForm::eps(2, &[i])?, &xi)?)))
        .collect::<Result<_>>()?;
    let _ = writeln!(out, "Hamiltonian derivations:");
    for (name, h) in &basis {
        let _ = writeln!(out, "  Δ({name}) = {}", h.der());
    }
    let _ = writeln!(out, "l2 on basis forms:");
    for (i, (a, ha)) in basis.iter().enumerate() {
        for (b, hb) in basis.iter().skip(i + 1) {
            let _ = writeln!(out, "  l2({a}, {b}) = {}", ha.bracket(hb));
        }
    }
    let args: Vec<GradedElement> = basis.iter().map(|(_, h)| GradedElement::ham(0, h.clone())).collect();
    let l3 = linf.bracket(&args)?;
    let _ = writeln!(out, "l3(ε^1, ε^2, ε^∞) = {l3}");
    Ok(out)
}

fn acyclicity() -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "a closed form ω has the primitive i_𝟙 ω, because d i_𝟙 + i_𝟙 d = id");
    let cases = [AtiyahForm::eps(1, &[INF])?, AtiyahForm::eps(2, &[1, 2, INF])?];
    for w in &cases {
        let p = w.primitive()?;
        let back = p.differential();
        let _ = writeln!(out, "primitive({w}) = {p}; d(primitive) = {back}");
    }
    let open = AtiyahForm::eps(2, &[1, 2])?;
    let _ = writeln!(out, "{open} is not closed: d{open} = {}", open.differential());
    Ok(out)
}
