use qangmom::angmom::{build_angular, DeformationSpec};
use qangmom::expect::{commutator_expectation_scan, expectation, ExpectError, Quadrature, ScanPair};
use qangmom::opcalc::OperatorExpr;
use qangmom::qalg::{Assignment, SymScalar, Symbol};
use qangmom::spectral::SeparableState;

fn planar() -> DeformationSpec {
    DeformationSpec::diagonal()
        .planar_identified()
        .substitute(Symbol::EPS3, &SymScalar::zero())
}

#[test]
fn identity_has_unit_expectation() {
    let st = SeparableState::new(1.0, 2, 0.05, vec![1.0, -0.5]).with_envelope(1.5);
    let r = expectation("1", &OperatorExpr::identity(), &st, &Assignment::new(), &Quadrature::default()).unwrap();
    assert!((r.value - 1.0).abs() < 1e-14);
    assert!(r.error_estimate < 1e-12);
}

#[test]
fn ell3_expectation_is_deformed_eigenvalue() {
    let l = build_angular(&planar());
    let st = SeparableState::new(0.0, -2, 0.02, vec![0.3, 1.0]).with_envelope(1.0);
    let a = Assignment::new().with(Symbol::HBAR, 1.0).with(Symbol::EPS, 0.02);
    let r = expectation("ell3", &l[2], &st, &a, &Quadrature::default()).unwrap();
    assert!((r.value - (-2.0 * (1.0 + 0.02f64.powi(2)))).abs() < 1e-10, "{}", r.value);
}

#[test]
fn unenveloped_state_is_rejected() {
    let st = SeparableState::new(0.0, 0, 0.0, vec![1.0]);
    let e = expectation("1", &OperatorExpr::identity(), &st, &Assignment::new(), &Quadrature::default());
    assert!(matches!(e, Err(ExpectError::NotNormalizable(_))));
}

#[test]
fn scan_requires_decreasing_epsilons() {
    let st = SeparableState::new(0.0, 1, 0.0, vec![1.0, 1.0]).with_envelope(1.0);
    let r = commutator_expectation_scan(ScanPair::Ell2Plus, &st, &[0.01, 0.02], 1.0, &Quadrature::default());
    assert!(matches!(r, Err(ExpectError::ScanOrder)));
}

#[test]
fn scan_pair_names_round_trip() {
    for p in [ScanPair::Ell2Plus, ScanPair::Ell2Minus, ScanPair::Ell2Ell3] {
        assert_eq!(ScanPair::parse(p.as_str()), Some(p));
    }
    assert!(ScanPair::Ell2Ell3.operator().is_zero());
}
