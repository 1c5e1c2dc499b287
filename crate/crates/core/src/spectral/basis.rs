use std::collections::BTreeMap;

use serde::Serialize;

use super::legendre::{assoc_legendre, norm_sqr, theta_derivatives};
use super::quadrature::GaussLegendre;
use super::state::SeparableState;
use super::SpectralError;

/// Tolerance for deciding that a projected function is not in the span.
const SPAN_TOL: f64 = 1e-10;
/// Tolerance for the projected defect of the perturbation equation.
const RESIDUAL_TOL: f64 = 1e-8;
/// Coefficients at or below this magnitude are dropped from solutions.
const CHOP: f64 = 1e-14;

/// `P_λ^{|m|}` for `|m| ≤ λ ≤ Λ` tabulated on Gauss–Legendre nodes in `u`.
///
/// Coefficient vectors are indexed by `λ − |m|`.
#[derive(Clone, Debug)]
pub struct LegendreBasis {
    m: i32,
    max_degree: i32,
    quad: GaussLegendre,
    values: Vec<Vec<f64>>,
    norms: Vec<f64>,
}

impl LegendreBasis {
    pub fn new(m: i32, max_degree: i32, nodes: usize) -> Result<Self, SpectralError> {
        if max_degree < m.abs() {
            return Err(SpectralError::Degree { lambda: max_degree, m });
        }
        let quad = GaussLegendre::new(nodes.max(1));
        let ma = m.abs();
        let values = (ma..=max_degree)
            .map(|l| {
                quad.nodes
                    .iter()
                    .map(|&u| assoc_legendre(l, ma, u))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let norms = (ma..=max_degree).map(|l| norm_sqr(l, ma)).collect();
        Ok(Self { m, max_degree, quad, values, norms })
    }

    /// Basis with enough nodes to integrate products of basis functions
    /// with degree-two multipliers exactly.
    pub fn with_default_nodes(m: i32, max_degree: i32) -> Result<Self, SpectralError> {
        Self::new(m, max_degree, (2 * max_degree.max(0) + 8) as usize)
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn max_degree(&self) -> i32 {
        self.max_degree
    }

    pub fn min_degree(&self) -> i32 {
        self.m.abs()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn quadrature(&self) -> &GaussLegendre {
        &self.quad
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.min_degree()..=self.max_degree
    }

    /// `θ` at each quadrature node.
    pub fn thetas(&self) -> Vec<f64> {
        self.quad.nodes.iter().map(|u| u.acos()).collect()
    }

    /// Exact `∫ P_λ² du` for the basis element at `index`.
    pub fn norm(&self, index: usize) -> f64 {
        self.norms[index]
    }

    /// `⟨P_a, P_b⟩` under the quadrature.
    pub fn gram(&self) -> Vec<Vec<f64>> {
        let w = &self.quad.weights;
        self.values
            .iter()
            .map(|a| {
                self.values
                    .iter()
                    .map(|b| a.iter().zip(b).zip(w).map(|((x, y), w)| w * x * y).sum())
                    .collect()
            })
            .collect()
    }

    fn check_len(&self, f: &[f64]) -> Result<(), SpectralError> {
        if f.len() > self.len() {
            return Err(SpectralError::Length { got: f.len(), expected: self.len() });
        }
        Ok(())
    }

    /// Values of `Σ f_λ P_λ` at the nodes.
    pub fn synthesize(&self, f: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.quad.len()];
        for (c, row) in f.iter().zip(&self.values) {
            if *c != 0.0 {
                for (o, p) in out.iter_mut().zip(row) {
                    *o += c * p;
                }
            }
        }
        out
    }

    /// Coefficients `⟨P_λ, g⟩/‖P_λ‖²` of node values `g`.
    pub fn project(&self, g: &[f64]) -> Vec<f64> {
        self.values
            .iter()
            .zip(&self.norms)
            .map(|(row, n)| {
                row.iter()
                    .zip(g)
                    .zip(&self.quad.weights)
                    .map(|((p, g), w)| w * p * g)
                    .sum::<f64>()
                    / n
            })
            .collect()
    }

    /// Largest pointwise mismatch between `g` and its projection, relative
    /// to the largest `|g|`.
    fn span_defect(&self, g: &[f64], coeffs: &[f64]) -> f64 {
        let back = self.synthesize(coeffs);
        let scale = g.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
        g.iter().zip(&back).fold(0.0f64, |a, (x, y)| a.max((x - y).abs())) / scale
    }

    /// Node values of a pointwise operator applied to `Σ f_λ P_λ`.
    fn pointwise(&self, f: &[f64], op: impl Fn(f64, [f64; 3]) -> f64) -> Vec<f64> {
        let m = self.m;
        self.thetas().into_iter().map(|th| op(th, theta_derivatives(f, m, th))).collect()
    }

    /// `α̂ f`, diagonal with eigenvalue `λ(λ+1)`.
    pub fn alpha_apply(&self, f: &[f64]) -> Result<Vec<f64>, SpectralError> {
        self.check_len(f)?;
        Ok(alpha_apply(f, self.m))
    }

    /// `α̂ f` from the differential form, projected. Used to verify the
    /// diagonal action.
    pub fn alpha_apply_projected(&self, f: &[f64]) -> Result<Vec<f64>, SpectralError> {
        self.check_len(f)?;
        let m2 = f64::from(self.m * self.m);
        let g = self.pointwise(f, |th, [v, d1, d2]| {
            let s = th.sin();
            -d2 - th.cos() / s * d1 + m2 / (s * s) * v
        });
        Ok(self.project(&g))
    }

    /// `β̂ f` projected onto this basis.
    ///
    /// Fails with [`SpectralError::BasisOverflow`] when the result has weight
    /// beyond `Λ` and with [`SpectralError::NotRepresentable`] when it leaves
    /// the span of `P^m` altogether.
    pub fn beta_apply(&self, f: &[f64], k: f64) -> Result<Vec<f64>, SpectralError> {
        self.check_len(f)?;
        let wide = self.widened(f.len())?;
        let g = wide.pointwise(f, |th, d| beta_pointwise(th, d, k, self.m));
        wide.fit(&g, self.max_degree)
    }

    /// `sin²θ f` projected onto this basis.
    pub fn sin2_apply(&self, f: &[f64]) -> Result<Vec<f64>, SpectralError> {
        self.check_len(f)?;
        let wide = self.widened(f.len())?;
        let g = wide.pointwise(f, |th, [v, _, _]| th.sin().powi(2) * v);
        wide.fit(&g, self.max_degree)
    }

    /// A basis two degrees above the support of an `n`-vector.
    fn widened(&self, n: usize) -> Result<LegendreBasis, SpectralError> {
        let top = self.min_degree() + n as i32 + 1;
        LegendreBasis::new(self.m, top, self.quad.len().max(top as usize + 4))
    }

    /// Projects `g`, checks it lies in the span, and truncates to `limit`.
    fn fit(&self, g: &[f64], limit: i32) -> Result<Vec<f64>, SpectralError> {
        let coeffs = self.project(g);
        let tail = self.span_defect(g, &coeffs);
        if tail > SPAN_TOL {
            return Err(SpectralError::NotRepresentable { m: self.m, tail });
        }
        let keep = (limit - self.min_degree() + 1).max(0) as usize;
        let scale = coeffs.iter().fold(0.0f64, |a, c| a.max(c.abs())).max(1.0);
        if let Some(pos) = coeffs.iter().rposition(|c| c.abs() > SPAN_TOL * scale) {
            if pos >= keep {
                return Err(SpectralError::BasisOverflow { required: self.min_degree() + pos as i32 });
            }
        }
        let mut out = coeffs;
        out.truncate(keep);
        Ok(out)
    }

    /// `[(1 + 2ε sin²θ) α̂ + ε β̂] f` scaled by `ħ²`, projected.
    pub fn ell2_apply(&self, f: &[f64], k: f64, eps: f64, hbar: f64) -> Result<Vec<f64>, SpectralError> {
        self.check_len(f)?;
        let wide = self.widened(f.len())?;
        let m = self.m;
        let g = wide.pointwise(f, |th, d| hbar * hbar * ell2_pointwise(th, d, k, m, eps));
        wide.fit(&g, self.max_degree)
    }
}

/// `β̂ f` at `θ` from `(f, f_θ, f_θθ)`.
pub(crate) fn beta_pointwise(theta: f64, [v, d1, _]: [f64; 3], k: f64, m: i32) -> f64 {
    let (s, c) = theta.sin_cos();
    let mf = f64::from(m);
    let cot = c / s;
    (2.0 * k + 5.0) * s * c * d1 + k * (1.0 - 3.0 * c * c) * v + mf * (2.0 * cot * cot - 1.0) * v
        - 2.0 * mf * mf * v
}

/// `α̂ f` at `θ` from `(f, f_θ, f_θθ)`.
pub(crate) fn alpha_pointwise(theta: f64, [v, d1, d2]: [f64; 3], m: i32) -> f64 {
    let (s, c) = theta.sin_cos();
    -d2 - c / s * d1 + f64::from(m * m) / (s * s) * v
}

/// `(1 + 2ε sin²θ) α̂ f + ε β̂ f` at `θ`.
pub(crate) fn ell2_pointwise(theta: f64, d: [f64; 3], k: f64, m: i32, eps: f64) -> f64 {
    let s = theta.sin();
    (1.0 + 2.0 * eps * s * s) * alpha_pointwise(theta, d, m) + eps * beta_pointwise(theta, d, k, m)
}

/// `α̂ f` on a coefficient vector for order `m`.
pub fn alpha_apply(f: &[f64], m: i32) -> Vec<f64> {
    let ma = m.abs();
    f.iter()
        .enumerate()
        .map(|(i, c)| {
            let l = f64::from(ma + i as i32);
            c * l * (l + 1.0)
        })
        .collect()
}

/// `β̂ f` on a coefficient vector, returned with two extra degrees.
pub fn beta_apply(f: &[f64], k: f64, m: i32) -> Result<Vec<f64>, SpectralError> {
    let top = m.abs() + f.len() as i32 + 1;
    LegendreBasis::with_default_nodes(m, top)?.beta_apply(f, k)
}

/// `ħ²[(1 + 2ε sin²θ) α̂ + ε β̂] f` for the state's `f`, with two extra
/// degrees.
pub fn ell2_separable(state: &SeparableState, hbar: f64) -> Result<Vec<f64>, SpectralError> {
    let top = state.m.abs() + state.coeffs.len() as i32 + 1;
    LegendreBasis::with_default_nodes(state.m, top)?.ell2_apply(&state.coeffs, state.k, state.eps, hbar)
}

/// First-order solution of `[α̂ − λ(λ+1)] Q = [κ − 2λ(λ+1) sin²θ − β̂] P_λ^m`.
#[derive(Clone, Debug, Serialize)]
pub struct PerturbationSolution {
    pub lambda: i32,
    pub m: i32,
    pub k: f64,
    pub kappa: f64,
    /// `λ' → C_λ'` over `|m| ≤ λ' ≤ Λ`, `λ' ≠ λ`, zeros dropped.
    pub c: BTreeMap<i32, f64>,
    /// Norm of the projected defect of the `Q` equation.
    pub residual_norm: f64,
    /// Relative weight of the right-hand side outside the basis.
    pub tail_norm: f64,
    pub max_degree: i32,
    pub nodes: usize,
}

impl PerturbationSolution {
    /// `Q(θ)` from the stored coefficients.
    pub fn q(&self, theta: f64) -> f64 {
        let u = theta.cos();
        self.c
            .iter()
            .map(|(l, c)| c * assoc_legendre(*l, self.m.abs(), u).unwrap_or(0.0))
            .sum()
    }
}

/// [`solve_perturbation_with_nodes`] with `2Λ + 8` nodes.
pub fn solve_perturbation(lambda: i32, m: i32, k: f64, lmax: i32) -> Result<PerturbationSolution, SpectralError> {
    solve_perturbation_with_nodes(lambda, m, k, lmax, (2 * lmax.max(0) + 8) as usize)
}

pub fn solve_perturbation_with_nodes(
    lambda: i32,
    m: i32,
    k: f64,
    lmax: i32,
    nodes: usize,
) -> Result<PerturbationSolution, SpectralError> {
    if lambda < m.abs() {
        return Err(SpectralError::Degree { lambda, m });
    }
    if lmax < lambda + 3 {
        return Err(SpectralError::MaxDegree { lmax, required: lambda + 3 });
    }
    let basis = LegendreBasis::new(m, lmax, nodes)?;
    let ll = f64::from(lambda * (lambda + 1));
    let mut p = vec![0.0; basis.len()];
    let idx = (lambda - m.abs()) as usize;
    p[idx] = 1.0;

    // S = [2λ(λ+1) sin²θ + β̂] P_λ at the nodes
    let s_nodes = basis.pointwise(&p, |th, d| 2.0 * ll * th.sin().powi(2) * d[0] + beta_pointwise(th, d, k, m));
    let s = basis.project(&s_nodes);
    let kappa = s[idx];
    let mut c = vec![0.0; basis.len()];
    for (i, l) in basis.degrees().enumerate() {
        if i != idx {
            let gap = f64::from(l * (l + 1)) - ll;
            c[i] = -s[i] / gap;
        }
    }

    // defect [α̂ − λ(λ+1)]Q − [κ − S], evaluated from the differential form
    let lhs = basis.pointwise(&c, |th, d| alpha_pointwise(th, d, m) - ll * d[0]);
    let p_nodes = basis.synthesize(&p);
    let defect: Vec<f64> = lhs
        .iter()
        .zip(&p_nodes)
        .zip(&s_nodes)
        .map(|((a, pv), sv)| a - (kappa * pv - sv))
        .collect();
    let residual_norm = weighted_norm(&basis, &basis.project(&defect));

    let rhs: Vec<f64> = p_nodes.iter().zip(&s_nodes).map(|(pv, sv)| kappa * pv - sv).collect();
    let rhs_proj = basis.synthesize(&basis.project(&rhs));
    let w = &basis.quad.weights;
    let total: f64 = rhs.iter().zip(w).map(|(r, w)| w * r * r).sum();
    let outside: f64 = rhs.iter().zip(&rhs_proj).zip(w).map(|((r, q), w)| w * (r - q).powi(2)).sum();
    let tail_norm = if total > 0.0 { (outside / total).sqrt() } else { 0.0 };

    if residual_norm > RESIDUAL_TOL {
        return Err(SpectralError::Residual { residual: residual_norm, lmax, nodes });
    }
    let scale = kappa.abs().max(1.0);
    let c = basis
        .degrees()
        .zip(c)
        .filter(|(l, v)| *l != lambda && v.abs() > CHOP * scale)
        .collect();
    Ok(PerturbationSolution {
        lambda,
        m,
        k,
        kappa,
        c,
        residual_norm,
        tail_norm,
        max_degree: lmax,
        nodes,
    })
}

/// `‖Σ c_λ P_λ‖` in `L²(du)`.
fn weighted_norm(basis: &LegendreBasis, c: &[f64]) -> f64 {
    c.iter().zip(&basis.norms).map(|(c, n)| c * c * n).sum::<f64>().sqrt()
}
