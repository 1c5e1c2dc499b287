use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::basis::ell2_pointwise;
use super::jet::Jet;
use super::legendre::{assoc_legendre, taylor_in_u, theta_derivatives};
use super::SpectralError;
use crate::opcalc::OperatorExpr;
use crate::qalg::{quat_eval, Assignment, QuatF64};

/// Distance from the polar axis below which a point counts as singular.
const AXIS_TOL: f64 = 1e-12;

/// `ψ = r^k e^{m(i+ε)φ} f(θ)`, optionally times `exp(−r²/2σ²)`.
///
/// `coeffs[i]` multiplies `P_{|m|+i}^{|m|}(cos θ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparableState {
    pub k: f64,
    pub m: i32,
    pub eps: f64,
    pub coeffs: Vec<f64>,
    pub envelope: Option<f64>,
}

impl SeparableState {
    pub fn new(k: f64, m: i32, eps: f64, coeffs: Vec<f64>) -> Self {
        Self { k, m, eps, coeffs, envelope: None }
    }

    /// `f = P_λ^m`.
    pub fn legendre(lambda: i32, m: i32, k: f64, eps: f64) -> Result<Self, SpectralError> {
        if lambda < m.abs() {
            return Err(SpectralError::Degree { lambda, m });
        }
        let mut coeffs = vec![0.0; (lambda - m.abs() + 1) as usize];
        coeffs[(lambda - m.abs()) as usize] = 1.0;
        Ok(Self::new(k, m, eps, coeffs))
    }

    pub fn with_envelope(mut self, sigma: f64) -> Self {
        self.envelope = Some(sigma);
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    /// `f(θ)`.
    pub fn angular(&self, theta: f64) -> f64 {
        let u = theta.cos();
        let ma = self.m.abs();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * assoc_legendre(ma + i as i32, ma, u).unwrap_or(0.0))
            .sum()
    }

    /// `r^k` times the envelope.
    pub fn radial(&self, r: f64) -> f64 {
        let env = self.envelope.map_or(1.0, |s| (-r * r / (2.0 * s * s)).exp());
        r.powf(self.k) * env
    }

    /// `e^{m(i+ε)φ}`.
    pub fn phase(&self, phi: f64) -> Complex64 {
        (Complex64::new(self.eps, 1.0) * f64::from(self.m) * phi).exp()
    }

    /// `|e^{2πm(i+ε)}| − 1`, the jump across `φ = 0`.
    pub fn phase_discontinuity(&self) -> f64 {
        (2.0 * PI * f64::from(self.m) * self.eps).exp() - 1.0
    }
}

/// A point in spherical coordinates, `θ` from the `z` axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalPoint {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl SphericalPoint {
    pub fn new(r: f64, theta: f64, phi: f64) -> Self {
        Self { r, theta, phi }
    }

    pub fn cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [self.r * st * cp, self.r * st * sp, self.r * ct]
    }

    fn check(&self, m: i32) -> Result<(), SpectralError> {
        let bad = self.r <= 0.0 || (m != 0 && self.r * self.theta.sin() <= AXIS_TOL * self.r.max(1.0));
        if bad {
            Err(SpectralError::Singular { r: self.r, theta: self.theta })
        } else {
            Ok(())
        }
    }
}

/// `ψ` at a point; `φ` is used as given, without reduction to `[0, 2π)`.
pub fn eval_state(state: &SeparableState, p: SphericalPoint) -> Result<Complex64, SpectralError> {
    p.check(state.m)?;
    Ok(state.phase(p.phi) * state.radial(p.r) * state.angular(p.theta))
}

/// `ħ² r^k e^{m(i+ε)φ} [(1 + 2ε sin²θ) α̂ + ε β̂] f` at a point, the
/// first-order separable form of `ℓ²ψ`.
pub fn ell2_formula_value(state: &SeparableState, p: SphericalPoint, hbar: f64) -> Result<Complex64, SpectralError> {
    p.check(state.m)?;
    let d = theta_derivatives(&state.coeffs, state.m, p.theta);
    let ang = ell2_pointwise(p.theta, d, state.k, state.m, state.eps);
    Ok(state.phase(p.phi) * state.radial(p.r) * ang * hbar * hbar)
}

/// Taylor jet of `ψ` to `order` about `p`, with `φ` taken in `[0, 2π)`.
fn state_jet(state: &SeparableState, p: SphericalPoint, order: usize) -> Result<Jet, SpectralError> {
    p.check(state.m)?;
    let [x0, y0, z0] = p.cartesian();
    let x = Jet::variable(order, 0, x0);
    let y = Jet::variable(order, 1, y0);
    let z = Jet::variable(order, 2, z0);
    let r2 = &(&(&x * &x) + &(&y * &y)) + &(&z * &z);
    let u = &z * &r2.powf(-0.5);
    let u0 = u.value().re;
    let fu: Vec<Complex64> = taylor_in_u(&state.coeffs, state.m, u0, order)
        .into_iter()
        .map(Complex64::from)
        .collect();
    let mut psi = u.compose(&fu);
    if state.k != 0.0 {
        psi = &psi * &r2.powf(state.k / 2.0);
    }
    if state.m != 0 {
        let i = Complex64::i();
        let w = &x + &y.scale(i);
        let wbar = &x - &y.scale(i);
        // φ = φ0 + [ln w − ln w̄]/2i, φ0 = atan2(y, x) in [0, 2π)
        let dphi = (&w.log_increment() - &wbar.log_increment()).scale(-0.5 * i);
        let phi0 = y0.atan2(x0).rem_euclid(2.0 * PI);
        let mut phi = dphi;
        phi = &phi + &Jet::constant(order, phi0.into());
        let phase = phi.scale(Complex64::new(state.eps, 1.0) * f64::from(state.m)).exp();
        psi = &psi * &phase;
    }
    if let Some(sigma) = state.envelope {
        let env = r2.scale((-0.5 / (sigma * sigma)).into()).exp();
        psi = &psi * &env;
    }
    Ok(psi)
}

/// `expr(ψ)` at each point, by exact differentiation of the state.
///
/// Derivatives come from Taylor jets of `r`, `cos θ` and `φ` in the
/// Cartesian offsets; no finite differences are involved. Quaternion
/// coefficients and right units act on the complex value `ψ` embedded as
/// `Re ψ + i Im ψ`.
pub fn apply_operator_numeric(
    expr: &OperatorExpr,
    state: &SeparableState,
    points: &[SphericalPoint],
    assignment: &Assignment,
) -> Result<Vec<QuatF64>, SpectralError> {
    let order = expr.order() as usize;
    let terms = expr
        .terms()
        .map(|t| Ok((quat_eval(&t.coeff, assignment)?, t.mono.0, t.deriv.0, t.runit)))
        .collect::<Result<Vec<_>, SpectralError>>()?;
    points
        .par_iter()
        .map(|p| {
            let jet = state_jet(state, *p, order)?;
            let xyz = p.cartesian();
            let mut acc = QuatF64::zero();
            for (coeff, mono, deriv, runit) in &terms {
                let mv: f64 = (0..3).map(|a| xyz[a].powi(mono[a] as i32)).product();
                let d = jet.derivative(deriv.map(|n| n as usize));
                let v = coeff.scale(&mv).qmul(&QuatF64::from_complex(d)).mul_unit_right(*runit);
                acc = &acc + &v;
            }
            Ok(acc)
        })
        .collect()
}
