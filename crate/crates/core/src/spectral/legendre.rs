//! Associated Legendre functions with the Condon–Shortley phase.

use super::series::{binomial_series, compose, mul};
use super::SpectralError;

/// `P_λ^m(u)`, stable upward recurrence in `λ`. Negative `m` uses
/// `P_λ^{−m} = (−1)^m (λ−m)!/(λ+m)! P_λ^m`.
pub fn assoc_legendre(lambda: i32, m: i32, u: f64) -> Result<f64, SpectralError> {
    if lambda < m.abs() {
        return Err(SpectralError::Degree { lambda, m });
    }
    let ma = m.abs();
    let mut pmm = 1.0;
    if ma > 0 {
        let s = ((1.0 - u) * (1.0 + u)).max(0.0).sqrt();
        let mut fact = 1.0;
        for _ in 0..ma {
            pmm *= -fact * s;
            fact += 2.0;
        }
    }
    let value = if lambda == ma {
        pmm
    } else {
        let mut pm1 = u * (2 * ma + 1) as f64 * pmm;
        let mut pm0 = pmm;
        for l in (ma + 2)..=lambda {
            let p = (u * (2 * l - 1) as f64 * pm1 - (l + ma - 1) as f64 * pm0) / (l - ma) as f64;
            pm0 = pm1;
            pm1 = p;
        }
        pm1
    };
    if m >= 0 {
        Ok(value)
    } else {
        let ratio: f64 = ((lambda - ma + 1)..=(lambda + ma)).map(|t| 1.0 / t as f64).product();
        let sign = if ma % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * ratio * value)
    }
}

/// `∫_{−1}^{1} (P_λ^m)² du = 2/(2λ+1) · (λ+m)!/(λ−m)!` for `m ≥ 0`.
pub fn norm_sqr(lambda: i32, m: i32) -> f64 {
    let m = m.abs();
    let ratio: f64 = ((lambda - m + 1)..=(lambda + m)).map(|t| t as f64).product();
    2.0 / (2 * lambda + 1) as f64 * ratio
}

/// `table[j][n] = d^j P_n / du^j (u)` for `n ≤ nmax`, `j ≤ jmax`.
pub fn legendre_derivative_table(nmax: usize, jmax: usize, u: f64) -> Vec<Vec<f64>> {
    let mut t = vec![vec![0.0; nmax + 1]; jmax + 1];
    t[0][0] = 1.0;
    if nmax >= 1 {
        t[0][1] = u;
    }
    for n in 1..nmax {
        let nf = n as f64;
        t[0][n + 1] = ((2.0 * nf + 1.0) * u * t[0][n] - nf * t[0][n - 1]) / (nf + 1.0);
    }
    for j in 1..=jmax {
        if nmax >= 1 && j == 1 {
            t[1][1] = 1.0;
        }
        for n in 1..nmax {
            // P_{n+1}^{(j)} = P_{n−1}^{(j)} + (2n+1) P_n^{(j−1)}
            t[j][n + 1] = t[j][n - 1] + (2 * n + 1) as f64 * t[j - 1][n];
        }
    }
    t
}

/// Taylor coefficients in `δ` of `f(u0 + δ)` up to `δ^order`, where
/// `f = Σ_λ coeffs[λ − |m|] P_λ^{|m|}` and `sin θ0 = √(1 − u0²) > 0`.
pub fn taylor_in_u(coeffs: &[f64], m: i32, u0: f64, order: usize) -> Vec<f64> {
    let ma = m.unsigned_abs() as usize;
    let nmax = ma + coeffs.len().saturating_sub(1);
    let table = legendre_derivative_table(nmax.max(1), ma + order, u0);
    // polynomial part Σ c_λ P_λ^{(m)}(u0 + δ)
    let mut poly = vec![0.0; order + 1];
    let mut kfact = 1.0;
    for (k, slot) in poly.iter_mut().enumerate() {
        if k > 0 {
            kfact *= k as f64;
        }
        let mut acc = 0.0;
        for (i, c) in coeffs.iter().enumerate() {
            acc += c * table[ma + k][ma + i];
        }
        *slot = acc / kfact;
    }
    if ma == 0 {
        return poly;
    }
    // (1 − u²)^{m/2} = s0^{m/2} (1 + t)^{m/2}, t = (−2u0δ − δ²)/s0
    let s0 = (1.0 - u0) * (1.0 + u0);
    let mut t = vec![0.0; order + 1];
    if order >= 1 {
        t[1] = -2.0 * u0 / s0;
    }
    if order >= 2 {
        t[2] = -1.0 / s0;
    }
    let root = compose(&t, &binomial_series(ma as f64 / 2.0, order));
    let sign = if ma % 2 == 0 { 1.0 } else { -1.0 };
    let scale = sign * s0.powf(ma as f64 / 2.0);
    mul(&poly, &root).into_iter().map(|c| c * scale).collect()
}

/// `d^j f/du^j` at `u0` for `j ≤ order`.
pub fn derivatives_in_u(coeffs: &[f64], m: i32, u0: f64, order: usize) -> Vec<f64> {
    let mut f = 1.0;
    taylor_in_u(coeffs, m, u0, order)
        .into_iter()
        .enumerate()
        .map(|(j, c)| {
            if j > 0 {
                f *= j as f64;
            }
            c * f
        })
        .collect()
}

/// `(f, df/dθ, d²f/dθ²)` at `θ`.
pub fn theta_derivatives(coeffs: &[f64], m: i32, theta: f64) -> [f64; 3] {
    let (s, c) = theta.sin_cos();
    let d = derivatives_in_u(coeffs, m, c, 2);
    [d[0], -s * d[1], s * s * d[2] - c * d[1]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn closed_forms() {
        assert!(close(assoc_legendre(1, 0, 0.3).unwrap(), 0.3));
        assert!(close(assoc_legendre(2, 0, 0.5).unwrap(), -0.125));
        assert!(close(assoc_legendre(1, 1, 0.0).unwrap(), -1.0));
        let u: f64 = 0.4;
        let s = (1.0 - u * u).sqrt();
        assert!(close(assoc_legendre(2, 1, u).unwrap(), -3.0 * u * s));
        assert!(close(assoc_legendre(2, 2, u).unwrap(), 3.0 * s * s));
        assert!(close(assoc_legendre(3, 3, u).unwrap(), -15.0 * s * s * s));
        assert!(close(assoc_legendre(2, -1, u).unwrap(), 0.5 * u * s));
    }

    #[test]
    fn rejects_low_degree() {
        assert_eq!(
            assoc_legendre(1, 2, 0.1),
            Err(SpectralError::Degree { lambda: 1, m: 2 })
        );
    }

    #[test]
    fn derivative_table_matches_closed_forms() {
        let u = 0.3;
        let t = legendre_derivative_table(4, 3, u);
        // P_3 = (5u³ − 3u)/2, P_3' = (15u² − 3)/2, P_3'' = 15u, P_3''' = 15
        assert!(close(t[0][3], (5.0 * u * u * u - 3.0 * u) / 2.0));
        assert!(close(t[1][3], (15.0 * u * u - 3.0) / 2.0));
        assert!(close(t[2][3], 15.0 * u));
        assert!(close(t[3][3], 15.0));
        assert!(close(t[3][2], 0.0));
    }

    #[test]
    fn u_derivatives_of_associated_function() {
        // P_2^1 = −3u√(1−u²)
        let u: f64 = 0.35;
        let s = (1.0 - u * u).sqrt();
        let d = derivatives_in_u(&[0.0, 1.0], 1, u, 2);
        assert!(close(d[0], -3.0 * u * s));
        let d1 = -3.0 * s + 3.0 * u * u / s;
        assert!(close(d[1], d1));
        let h = 1e-5;
        let f = |x: f64| -3.0 * x * (1.0 - x * x).sqrt();
        let fd2 = (f(u + h) - 2.0 * f(u) + f(u - h)) / (h * h);
        assert!((d[2] - fd2).abs() < 1e-4);
    }

    #[test]
    fn theta_derivatives_satisfy_eigenrelation() {
        for (l, m) in [(3, 0), (3, 2), (4, 1), (5, 5)] {
            let mut c = vec![0.0; (l - m + 1) as usize];
            c[(l - m) as usize] = 1.0;
            let th = 0.77;
            let [f, f1, f2] = theta_derivatives(&c, m, th);
            let alpha = -f2 - f1 / th.tan() + (m * m) as f64 / th.sin().powi(2) * f;
            assert!(close(alpha, (l * (l + 1)) as f64 * f), "l={l} m={m}");
        }
    }
}
