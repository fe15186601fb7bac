use lcourant::report::all_zero;
use lcourant::{AtiyahForm, Connection, Error, OmniLie, SampleParams, INF};

#[test]
fn omni_lie_algebroids_satisfy_the_axioms() {
    let params = SampleParams::new(2, 2, 3);
    let untwisted = OmniLie::untwisted(2);
    assert!(all_zero(&untwisted.lcourant_axioms(10, 1, params)));
    let twisted = OmniLie::twisted(AtiyahForm::eps(2, &[1, 2, INF]).unwrap()).unwrap();
    assert!(all_zero(&twisted.lcourant_axioms(10, 1, params)));
}

#[test]
fn twists_are_three_forms_and_open_ones_break_leibniz() {
    assert!(matches!(
        OmniLie::twisted(AtiyahForm::eps(2, &[1, INF]).unwrap()),
        Err(Error::TwistArityError { .. })
    ));
    let open = OmniLie::twisted(AtiyahForm::eps(3, &[1, 2, 3]).unwrap()).unwrap();
    let outcomes = open.lcourant_axioms(10, 2, SampleParams::new(3, 1, 3));
    assert!(outcomes.iter().any(|o| o.check == "LC1" && !o.passed()));
}

#[test]
fn trivial_splitting_has_the_twist_as_curvature() {
    let omega = AtiyahForm::eps(2, &[1, 2, INF]).unwrap();
    let c = OmniLie::twisted(omega.clone()).unwrap();
    let a = Connection::trivial(2);
    assert!(a.is_isotropic_splitting(&c));
    assert_eq!(a.curvature(&c), omega);
}

#[test]
fn shifting_a_connection_subtracts_d_theta() {
    let c = OmniLie::untwisted(2);
    let theta = AtiyahForm::eps(2, &[1, 2]).unwrap();
    let shifted = Connection::trivial(2).shifted(&theta).unwrap();
    assert_eq!(shifted.curvature(&c), theta.differential().neg());
    assert!(all_zero(&Connection::curvature_checks(&c, 5, 3, SampleParams::new(2, 1, 3))));
}
