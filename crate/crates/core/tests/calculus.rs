use lcourant::sample::case_seed;
use lcourant::{AtiyahForm, Derivation, Error, SampleParams, Sampler, Scalar, INF};

fn sampler(n: usize, seed: u64) -> Sampler {
    Sampler::new(SampleParams::new(n, 2, 3), seed)
}

#[test]
fn differential_of_a_coordinate() {
    // d(x) = ε^1 + x ε^∞, since 𝟙 acts on sections as the identity.
    let x = Scalar::var(2, 1).unwrap();
    let dx = AtiyahForm::scalar(x.clone()).differential();
    assert_eq!(dx.coeff(&[1]).unwrap(), Scalar::one(2));
    assert_eq!(dx.coeff(&[2]).unwrap(), Scalar::zero(2));
    assert_eq!(dx.coeff(&[INF]).unwrap(), x);
}

#[test]
fn unit_section_is_the_primitive_of_eps_inf() {
    let w = AtiyahForm::eps(3, &[INF]).unwrap();
    let p = w.primitive().unwrap();
    assert_eq!(p.as_scalar(), Some(&Scalar::one(3)));
    assert_eq!(p.differential(), w);
}

#[test]
fn d_squared_vanishes_and_closed_forms_are_exact() {
    for n in 1..=3 {
        for case in 0..10 {
            let mut s = sampler(n, case_seed(11, "calculus", case));
            for degree in 0..=n {
                let w = s.form(degree);
                let dw = w.differential();
                assert!(dw.differential().is_zero(), "n={n} degree={degree}");
                let p = dw.primitive().unwrap();
                assert_eq!(p.differential(), dw);
            }
        }
    }
}

#[test]
fn unit_contraction_is_a_contracting_homotopy() {
    let unit = Derivation::unit(2);
    for case in 0..10 {
        let mut s = sampler(2, case);
        for degree in 1..=3 {
            let w = s.form(degree);
            let lhs = w.differential().contract(&unit).add(&w.contract(&unit).differential());
            assert_eq!(lhs, w);
        }
    }
}

#[test]
fn cartan_formula() {
    for case in 0..10 {
        let mut s = sampler(2, 100 + case);
        let d = s.derivation();
        let w = s.form(2);
        let rhs = w.differential().contract(&d).add(&w.contract(&d).differential());
        assert_eq!(w.lie_derivative(&d), rhs);
    }
}

#[test]
fn open_forms_have_no_primitive() {
    let w = AtiyahForm::eps(2, &[1, 2]).unwrap();
    assert_eq!(w.primitive(), Err(Error::NotClosed { degree: 2 }));
}
