use qangmom::spectral::{
    assoc_legendre, solve_perturbation, solve_perturbation_with_nodes, GaussLegendre,
    LegendreBasis, SpectralError,
};

#[test]
fn gauss_legendre_integrates_polynomials_exactly() {
    let q = GaussLegendre::new(8);
    for deg in 0..16 {
        let got: f64 = q.nodes.iter().zip(&q.weights).map(|(x, w)| w * x.powi(deg)).sum();
        let want = if deg % 2 == 0 { 2.0 / f64::from(deg + 1) } else { 0.0 };
        assert!((got - want).abs() < 1e-14, "degree {deg}");
    }
}

#[test]
fn legendre_orthogonality() {
    let q = GaussLegendre::new(40);
    for m in 0..4 {
        for l1 in m..8 {
            for l2 in m..8 {
                let ip: f64 = q
                    .nodes
                    .iter()
                    .zip(&q.weights)
                    .map(|(&u, w)| w * assoc_legendre(l1, m, u).unwrap() * assoc_legendre(l2, m, u).unwrap())
                    .sum();
                if l1 != l2 {
                    assert!(ip.abs() < 1e-10, "({l1},{l2},{m}) = {ip}");
                }
            }
        }
    }
}

#[test]
fn condon_shortley_phase() {
    let u: f64 = 0.3;
    let s = (1.0 - u * u).sqrt();
    assert!((assoc_legendre(1, 1, u).unwrap() + s).abs() < 1e-15);
    assert!((assoc_legendre(2, 1, u).unwrap() + 3.0 * u * s).abs() < 1e-15);
}

#[test]
fn projection_inverts_synthesis() {
    let b = LegendreBasis::new(2, 9, 30).unwrap();
    let f: Vec<f64> = (0..b.len()).map(|i| (i as f64 * 0.7).sin()).collect();
    let back = b.project(&b.synthesize(&f));
    for (x, y) in f.iter().zip(&back) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn solver_is_stable_in_truncation() {
    let a = solve_perturbation(2, 1, 0.0, 10).unwrap();
    let b = solve_perturbation_with_nodes(2, 1, 0.0, 16, 60).unwrap();
    assert!((a.kappa - 43.0 / 7.0).abs() < 1e-10);
    assert!((a.kappa - b.kappa).abs() < 1e-10);
    for (l, c) in &a.c {
        assert!((c - b.c[l]).abs() < 1e-10, "C{l}");
    }
}

#[test]
fn solver_rejects_bad_inputs() {
    assert!(matches!(solve_perturbation(1, 2, 0.0, 6), Err(SpectralError::Degree { .. })));
    assert!(matches!(solve_perturbation(3, 0, 0.0, 4), Err(SpectralError::MaxDegree { .. })));
}

#[test]
fn perturbed_function_matches_coefficients() {
    let s = solve_perturbation(1, 0, 0.0, 6).unwrap();
    let th: f64 = 0.8;
    let want = -0.04 * assoc_legendre(3, 0, th.cos()).unwrap();
    assert!((s.q(th) - want).abs() < 1e-12);
}
