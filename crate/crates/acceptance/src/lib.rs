//! Acceptance harness for `qangmom`: independent oracles, random
//! expression generation and the per-criterion report line.

use nalgebra::{DMatrix, DVector};
use qangmom::opcalc::{DerivIndex, Monomial, OperatorExpr, OperatorTerm};
use qangmom::qalg::{QuatScalar, SymScalar, Symbol, Unit};
use qangmom::spectral::{assoc_legendre, GaussLegendre};
use rand::Rng;

/// One acceptance criterion's verdict.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(id: u8, name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Self { id, name, pass, detail: detail.into() }
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {}: {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

/// Galerkin solution of the first-order angular equation assembled from
/// the weak form of `α̂` and first derivatives only.
#[derive(Clone, Debug)]
pub struct OracleSolution {
    pub kappa: f64,
    /// `(λ', C_λ')` for every `λ' ≠ λ` in the basis.
    pub c: Vec<(i32, f64)>,
}

/// `dP_l^m/du` from `(1 − u²) P_l^m' = (l + m) P_{l−1}^m − l u P_l^m`.
fn legendre_du(l: i32, m: i32, u: f64) -> f64 {
    let p = assoc_legendre(l, m, u).expect("l >= m");
    let prev = if l > m { assoc_legendre(l - 1, m, u).expect("l - 1 >= m") } else { 0.0 };
    (f64::from(l + m) * prev - f64::from(l) * u * p) / (1.0 - u * u)
}

/// Dense solve of `(A − λ(λ+1)G) c − κ G e_λ = −(2λ(λ+1) S + B) e_λ` with
/// `c_λ = 0`, on `nodes` Gauss–Legendre points.
pub fn galerkin_oracle(lambda: i32, m: i32, k: f64, lmax: i32, nodes: usize) -> OracleSolution {
    let m = m.abs();
    let degrees: Vec<i32> = (m..=lmax).collect();
    let n = degrees.len();
    let q = GaussLegendre::new(nodes);
    let vals: Vec<Vec<f64>> = degrees
        .iter()
        .map(|&l| q.nodes.iter().map(|&u| assoc_legendre(l, m, u).unwrap()).collect())
        .collect();
    let ders: Vec<Vec<f64>> = degrees
        .iter()
        .map(|&l| q.nodes.iter().map(|&u| legendre_du(l, m, u)).collect())
        .collect();
    let mf = f64::from(m);
    let ll = f64::from(lambda * (lambda + 1));
    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut g = DMatrix::<f64>::zeros(n, n);
    let mut s = DMatrix::<f64>::zeros(n, n);
    let mut b = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            for (t, (&u, &w)) in q.nodes.iter().zip(&q.weights).enumerate() {
                let (pi, pj, di, dj) = (vals[i][t], vals[j][t], ders[i][t], ders[j][t]);
                let s2 = 1.0 - u * u;
                a[(i, j)] += w * (s2 * di * dj + mf * mf / s2 * pi * pj);
                g[(i, j)] += w * pi * pj;
                s[(i, j)] += w * pi * s2 * pj;
                let beta = (2.0 * k + 5.0) * (-u * s2 * dj) + k * (1.0 - 3.0 * u * u) * pj
                    + mf * (2.0 * u * u / s2 - 1.0) * pj
                    - 2.0 * mf * mf * pj;
                b[(i, j)] += w * pi * beta;
            }
        }
    }
    let col = (lambda - m) as usize;
    let mut sys = &a - &g * ll;
    for i in 0..n {
        sys[(i, col)] = -g[(i, col)];
    }
    let rhs: DVector<f64> = -(&s * (2.0 * ll) + &b).column(col).into_owned();
    let x = sys.lu().solve(&rhs).expect("oracle system is nonsingular");
    let c = degrees
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != col)
        .map(|(i, &l)| (l, x[i]))
        .collect();
    OracleSolution { kappa: x[col], c }
}

fn small_scalar<R: Rng>(rng: &mut R) -> SymScalar {
    let c = SymScalar::from_int(rng.gen_range(-3..=3));
    match rng.gen_range(0..4) {
        0 => &c * &SymScalar::symbol(Symbol::HBAR),
        1 => &c * &SymScalar::symbol(Symbol::EPS),
        _ => c,
    }
}

/// A random expression with up to four terms, coordinate and derivative
/// exponents below 2, small coefficients and any right unit.
pub fn random_expr<R: Rng>(rng: &mut R) -> OperatorExpr {
    let n = rng.gen_range(1..=4);
    OperatorExpr::from_terms((0..n).map(|_| OperatorTerm {
        coeff: QuatScalar::new(small_scalar(rng), small_scalar(rng), small_scalar(rng), small_scalar(rng)),
        mono: Monomial([rng.gen_range(0..2), rng.gen_range(0..2), rng.gen_range(0..2)]),
        deriv: DerivIndex([rng.gen_range(0..2), rng.gen_range(0..2), rng.gen_range(0..2)]),
        runit: Unit::ALL[rng.gen_range(0..4)],
    }))
}
