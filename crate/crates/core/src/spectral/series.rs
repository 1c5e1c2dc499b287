//! Truncated univariate power series.

/// Product truncated to the length of the shorter input.
pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().min(b.len());
    let mut out = vec![0.0; n];
    for (i, x) in a.iter().take(n).enumerate() {
        for (j, y) in b.iter().take(n - i).enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `outer(inner(t))` for an `inner` series with zero constant term.
pub fn compose(inner: &[f64], outer: &[f64]) -> Vec<f64> {
    debug_assert!(inner.first().is_none_or(|c| *c == 0.0));
    let n = inner.len();
    let mut out = vec![0.0; n];
    for c in outer.iter().rev() {
        out = mul(&out, inner);
        out[0] += c;
    }
    out
}

/// Coefficients of `(1 + t)^a` up to `t^order`.
pub fn binomial_series(a: f64, order: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(order + 1);
    let mut c = 1.0;
    for n in 0..=order {
        out.push(c);
        c *= (a - n as f64) / (n as f64 + 1.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_squared() {
        let r = binomial_series(0.5, 5);
        let sq = mul(&r, &r);
        assert!((sq[0] - 1.0).abs() < 1e-15 && (sq[1] - 1.0).abs() < 1e-15);
        assert!(sq[2..].iter().all(|c| c.abs() < 1e-15));
    }

    #[test]
    fn composition_of_geometric_series() {
        // 1/(1 − t) with t = 2s gives Σ 2^n s^n
        let geo = vec![1.0; 6];
        let out = compose(&[0.0, 2.0, 0.0, 0.0, 0.0, 0.0], &geo);
        for (n, c) in out.iter().enumerate() {
            assert_eq!(*c, 2f64.powi(n as i32));
        }
    }
}
