//! Real-bracket expectation values.
//!
//! The density `½[Ψ†(ÔΨ) + Ψ(ÔΨ)†]` is integrated over `(r, cos θ, φ)` by
//! Gauss–Legendre quadrature. Separable states carry a Gaussian radial
//! envelope so that the radial integral converges; `φ` runs over `[0, 2π)`
//! without imposing periodicity on the deformed phase.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::angmom::{build_angular, build_ell2, build_position, AngmomError, DeformationSpec, Flavor};
use crate::opcalc::{commutator, OperatorExpr};
use crate::qalg::{Assignment, QuatF64, SymScalar, Symbol, Unit};
use crate::spectral::{
    apply_operator_numeric, eval_state, GaussLegendre, SeparableState, SpectralError, SphericalPoint,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExpectError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Angmom(#[from] AngmomError),
    #[error("state is not normalizable: {0}")]
    NotNormalizable(String),
    #[error("scan needs a strictly decreasing list of positive epsilons")]
    ScanOrder,
}

/// `½[ψ̄ φ + ψ φ̄]` as a full quaternion.
pub fn bracket_full(psi: &QuatF64, op_psi: &QuatF64) -> QuatF64 {
    let a = psi.conj().qmul(op_psi);
    let b = psi.qmul(&op_psi.conj());
    (&a + &b).scale(&0.5)
}

/// Scalar part of [`bracket_full`].
pub fn bracket(psi: &QuatF64, op_psi: &QuatF64) -> f64 {
    bracket_full(psi, op_psi).w
}

/// Node counts for the `(r, cos θ, φ)` product rule; `r ∈ [0, r_max σ]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Quadrature {
    pub nr: usize,
    pub nu: usize,
    pub nphi: usize,
    pub r_max: f64,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self { nr: 32, nu: 16, nphi: 24, r_max: 10.0 }
    }
}

impl Quadrature {
    fn coarser(&self) -> Self {
        Self { nr: self.nr * 3 / 4, nu: self.nu * 3 / 4, nphi: self.nphi * 3 / 4, ..*self }
    }

    /// Points and weights (including `r²`) for an envelope width `sigma`.
    pub fn grid(&self, sigma: f64) -> (Vec<SphericalPoint>, Vec<f64>) {
        let (rs, wr) = GaussLegendre::new(self.nr).on_interval(0.0, self.r_max * sigma);
        let gu = GaussLegendre::new(self.nu);
        let (ps, wp) = GaussLegendre::new(self.nphi).on_interval(0.0, 2.0 * PI);
        let mut pts = Vec::with_capacity(self.nr * self.nu * self.nphi);
        let mut w = Vec::with_capacity(pts.capacity());
        for (r, a) in rs.iter().zip(&wr) {
            for (u, b) in gu.nodes.iter().zip(&gu.weights) {
                for (phi, c) in ps.iter().zip(&wp) {
                    pts.push(SphericalPoint::new(*r, u.acos(), *phi));
                    w.push(a * b * c * r * r);
                }
            }
        }
        (pts, w)
    }
}

/// Deterministic pairwise sum.
fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectationResult {
    pub operator_id: String,
    pub state: SeparableState,
    pub epsilon: f64,
    pub value: f64,
    /// `|value − value on a 3/4-resolution grid|`.
    pub error_estimate: f64,
    pub norm: f64,
    pub quadrature: Quadrature,
    pub measure: String,
    /// `e^{2πmε} − 1`: the phase jump across `φ = 0`.
    pub phase_discontinuity: f64,
}

fn check_normalizable(state: &SeparableState) -> Result<f64, ExpectError> {
    let sigma = state
        .envelope
        .ok_or_else(|| ExpectError::NotNormalizable("no radial envelope attached".into()))?;
    if sigma <= 0.0 {
        return Err(ExpectError::NotNormalizable(format!("envelope width {sigma} is not positive")));
    }
    if state.k <= -1.5 {
        return Err(ExpectError::NotNormalizable(format!("r^{} is not square integrable at 0", state.k)));
    }
    if state.coeffs.iter().all(|c| *c == 0.0) {
        return Err(ExpectError::NotNormalizable("angular part vanishes".into()));
    }
    Ok(sigma)
}

fn quat_of(c: num_complex::Complex64) -> QuatF64 {
    QuatF64::from_complex(c)
}

/// `(∫{Ψ, ÔΨ}, ∫{Ψ, Ψ})` on one grid.
fn integrate(
    op: &OperatorExpr,
    state: &SeparableState,
    assignment: &Assignment,
    quad: &Quadrature,
    sigma: f64,
) -> Result<(f64, f64), ExpectError> {
    let (pts, w) = quad.grid(sigma);
    let op_psi = apply_operator_numeric(op, state, &pts, assignment)?;
    let mut num = Vec::with_capacity(pts.len());
    let mut den = Vec::with_capacity(pts.len());
    for ((p, w), o) in pts.iter().zip(&w).zip(&op_psi) {
        let psi = quat_of(eval_state(state, *p)?);
        num.push(w * bracket(&psi, o));
        den.push(w * psi.norm_sqr());
    }
    Ok((pairwise_sum(&num), pairwise_sum(&den)))
}

/// `∫{Ψ, ÔΨ} / ∫{Ψ, Ψ}` for a Gaussian-enveloped separable state.
pub fn expectation(
    operator_id: &str,
    op: &OperatorExpr,
    state: &SeparableState,
    assignment: &Assignment,
    quad: &Quadrature,
) -> Result<ExpectationResult, ExpectError> {
    let sigma = check_normalizable(state)?;
    let (num, den) = integrate(op, state, assignment, quad, sigma)?;
    if den <= 0.0 {
        return Err(ExpectError::NotNormalizable("zero norm on the grid".into()));
    }
    let (num2, den2) = integrate(op, state, assignment, &quad.coarser(), sigma)?;
    let value = num / den;
    Ok(ExpectationResult {
        operator_id: operator_id.to_string(),
        state: state.clone(),
        epsilon: state.eps,
        value,
        error_estimate: (value - num2 / den2).abs(),
        norm: den,
        quadrature: *quad,
        measure: format!("gaussian envelope sigma={sigma}, r in [0, {}], phi in [0, 2pi)", quad.r_max * sigma),
        phase_discontinuity: state.phase_discontinuity(),
    })
}

/// Expectation of `Ô` taken in the state `Âψ` instead of `ψ`.
pub fn expectation_in_image(
    op: &OperatorExpr,
    image: &OperatorExpr,
    state: &SeparableState,
    assignment: &Assignment,
    quad: &Quadrature,
) -> Result<f64, ExpectError> {
    let sigma = check_normalizable(state)?;
    let (pts, w) = quad.grid(sigma);
    let phi = apply_operator_numeric(image, state, &pts, assignment)?;
    let op_phi = apply_operator_numeric(&op.compose(image), state, &pts, assignment)?;
    let num: Vec<f64> = w.iter().zip(&phi).zip(&op_phi).map(|((w, a), b)| w * bracket(a, b)).collect();
    let den: Vec<f64> = w.iter().zip(&phi).map(|(w, a)| w * a.norm_sqr()).collect();
    Ok(pairwise_sum(&num) / pairwise_sum(&den))
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeRow {
    pub axis: usize,
    pub z: f64,
    pub r: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeReport {
    pub s: [String; 3],
    pub rows: Vec<GaugeRow>,
    pub max_deviation: f64,
}

/// `⟨ẑ_a⟩` against `⟨x_a⟩` for the complex position built from `spec`.
pub fn gauge_check(
    spec: &DeformationSpec,
    state: &SeparableState,
    assignment: &Assignment,
    quad: &Quadrature,
) -> Result<GaugeReport, ExpectError> {
    let z = build_position(&spec.with_flavor(Flavor::Complex));
    let mut rows = Vec::new();
    for (a, za) in z.iter().enumerate() {
        let ez = expectation("z", za, state, assignment, quad)?.value;
        let er = expectation("r", &OperatorExpr::coord(a), state, assignment, quad)?.value;
        rows.push(GaugeRow { axis: a, z: ez, r: er, deviation: (ez - er).abs() });
    }
    let max_deviation = rows.iter().fold(0.0f64, |m, r| m.max(r.deviation));
    Ok(GaugeReport { s: spec.s().each_ref().map(|e| e.to_string()), rows, max_deviation })
}

/// Commutators scanned in ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanPair {
    Ell2Plus,
    Ell2Minus,
    Ell2Ell3,
}

impl ScanPair {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanPair::Ell2Plus => "ell2_plus",
            ScanPair::Ell2Minus => "ell2_minus",
            ScanPair::Ell2Ell3 => "ell2_ell3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [ScanPair::Ell2Plus, ScanPair::Ell2Minus, ScanPair::Ell2Ell3]
            .into_iter()
            .find(|p| p.as_str() == s)
    }

    /// The commutator for `s = (εx, εy, 0)`, symbolic in `ε` and `ħ`.
    pub fn operator(self) -> OperatorExpr {
        let spec = DeformationSpec::diagonal().planar_identified().substitute(Symbol::EPS3, &SymScalar::zero());
        let l = build_angular(&spec);
        let l2 = build_ell2(&spec);
        let i = OperatorExpr::left_unit(Unit::I);
        let second = match self {
            ScanPair::Ell2Plus => &l[0] + &i.compose(&l[1]),
            ScanPair::Ell2Minus => &l[0] - &i.compose(&l[1]),
            ScanPair::Ell2Ell3 => l[2].clone(),
        };
        commutator(&l2, &second)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub epsilon: f64,
    pub value: f64,
    pub error_estimate: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub pair: ScanPair,
    pub rows: Vec<ScanRow>,
    /// Least-squares slope of `ln|value|` against `ln ε` over nonzero rows.
    pub exponent: Option<f64>,
}

/// `⟨[ℓ², ·]⟩` for each ε, with the state's own ε set to match.
pub fn commutator_expectation_scan(
    pair: ScanPair,
    state: &SeparableState,
    epsilons: &[f64],
    hbar: f64,
    quad: &Quadrature,
) -> Result<ScanReport, ExpectError> {
    if epsilons.is_empty() || epsilons.windows(2).any(|w| w[1] >= w[0]) || epsilons.iter().any(|e| *e < 0.0) {
        return Err(ExpectError::ScanOrder);
    }
    let op = pair.operator();
    let mut rows = Vec::new();
    for &eps in epsilons {
        let a = Assignment::new().with(Symbol::HBAR, hbar).with(Symbol::EPS, eps);
        let r = expectation(pair.as_str(), &op, &state.clone().with_eps(eps), &a, quad)?;
        rows.push(ScanRow { epsilon: eps, value: r.value, error_estimate: r.error_estimate });
    }
    Ok(ScanReport { pair, exponent: fit_exponent(&rows), rows })
}

fn fit_exponent(rows: &[ScanRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.epsilon > 0.0 && r.value != 0.0)
        .map(|r| (r.epsilon.ln(), r.value.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(w: f64, x: f64, y: f64, z: f64) -> QuatF64 {
        QuatF64::new(w, x, y, z)
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&q(1.0, 0.0, 0.0, 0.0), &q(0.0, 1.0, 0.0, 0.0)), 0.0);
        assert_eq!(bracket(&q(0.0, 0.0, 1.0, 0.0), &q(0.0, 0.0, 1.0, 0.0)), 1.0);
        let psi = q(0.3, -1.2, 0.0, 0.0);
        let v = bracket_full(&psi, &psi.scale(&2.5));
        assert!((v.w - 2.5 * psi.norm_sqr()).abs() < 1e-15 && v.vector_max_abs() < 1e-15);
    }

    #[test]
    fn complex_bracket_is_real() {
        let a = q(0.7, -0.2, 0.0, 0.0);
        let b = q(-1.1, 0.4, 0.0, 0.0);
        assert!(bracket_full(&a, &b).vector_max_abs() < 1e-15);
    }

    #[test]
    fn exponent_fit() {
        let rows: Vec<ScanRow> = [1e-2, 5e-3, 2.5e-3]
            .iter()
            .map(|&e| ScanRow { epsilon: e, value: 3.0 * e * e, error_estimate: 0.0 })
            .collect();
        assert!((fit_exponent(&rows).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_missing_envelope() {
        let s = SeparableState::legendre(1, 0, 0.0, 0.0).unwrap();
        let a = Assignment::new();
        assert!(matches!(
            expectation("id", &OperatorExpr::identity(), &s, &a, &Quadrature::default()),
            Err(ExpectError::NotNormalizable(_))
        ));
    }

    #[test]
    fn scan_order_enforced() {
        let s = SeparableState::legendre(1, 1, 0.0, 0.0).unwrap().with_envelope(1.0);
        let r = commutator_expectation_scan(ScanPair::Ell2Ell3, &s, &[1e-3, 2e-3], 1.0, &Quadrature::default());
        assert_eq!(r.unwrap_err(), ExpectError::ScanOrder);
    }
}
