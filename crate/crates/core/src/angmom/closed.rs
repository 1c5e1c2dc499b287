//! Deformation factors: definitional residuals and the closed forms they
//! are compared against.

use super::builders::{build_angular, build_standard_angular, hbar, int, levi, third, Triple};
use super::spec::{i_unit, DeformationSpec, Flavor};
use crate::opcalc::{commutator, OperatorExpr};
use crate::qalg::{SymScalar, Unit};

pub type Matrix = [[OperatorExpr; 3]; 3];

fn matrix(f: impl Fn(usize, usize) -> OperatorExpr) -> Matrix {
    std::array::from_fn(|a| std::array::from_fn(|b| f(a, b)))
}

/// `ħ ε_abc X_c` summed over `c`.
pub fn structure_term(a: usize, b: usize, x: &Triple) -> OperatorExpr {
    if a == b {
        return OperatorExpr::zero();
    }
    let c = third(a, b);
    hbar().compose(&x[c]).compose(&int(levi(a, b, c)))
}

/// The product that multiplies `ħ ε_abc` in each flavor's undeformed
/// algebra: `iℓ_c`, `ℓ_{L,c}∘i` or `(ℓ_{R,c}|i)`.
pub fn structure_operator(flavor: Flavor, l: &OperatorExpr) -> OperatorExpr {
    match flavor {
        Flavor::Complex => i_unit().compose(l),
        Flavor::QuatLeft => l.compose(&i_unit()),
        Flavor::QuatRight => OperatorExpr::right_unit(Unit::I).compose(l),
    }
}

/// The deformation as the commutator leaves it:
/// `[ℓ_a, ℓ_b] − ħ ε_abc S(ℓ_c)` with `S` from [`structure_operator`].
pub fn h_raw(spec: &DeformationSpec) -> Matrix {
    let l = build_angular(spec);
    let s: Triple = std::array::from_fn(|c| structure_operator(spec.flavor, &l[c]));
    matrix(|a, b| &commutator(&l[a], &l[b]) - &structure_term(a, b, &s))
}

/// `h_ab` defined through `[ℓ_a, ℓ_b] = iħ ε_abc ℓ_c + i h_ab` for the
/// complex flavor; equal to [`h_raw`] for the quaternionic ones.
pub fn h_definitional(spec: &DeformationSpec) -> Matrix {
    let raw = h_raw(spec);
    match spec.flavor {
        Flavor::Complex => {
            let minus_i = -&i_unit();
            matrix(|a, b| minus_i.compose(&raw[a][b]))
        }
        _ => raw,
    }
}

fn complex_ell(spec: &DeformationSpec) -> Triple {
    build_angular(&spec.with_flavor(Flavor::Complex))
}

fn momentum() -> Triple {
    super::builders::build_momentum(Flavor::Complex)
}

/// Index form: `[(ℓ_a ε_bmn − ℓ_b ε_amn) s_m] p_n`, with `ℓ` acting on
/// `s_m` as a function.
pub fn h_index_form(spec: &DeformationSpec) -> Matrix {
    let l = complex_ell(spec);
    let p = momentum();
    let s = spec.s();
    let ls: Matrix = matrix(|a, m| l[a].apply_to_function(&s[m]));
    matrix(|a, b| {
        let mut acc = OperatorExpr::zero();
        for m in 0..3 {
            for n in 0..3 {
                let f = &ls[a][m].compose(&int(levi(b, m, n))) - &ls[b][m].compose(&int(levi(a, m, n)));
                acc = &acc + &f.compose(&p[n]);
            }
        }
        acc
    })
}

/// `Σ_k (ℓ_k s_c) p_k`; with `undeformed` the inner `ℓ` is replaced by `l`.
pub fn ell_s_dot_p(spec: &DeformationSpec, c: usize, undeformed: bool) -> OperatorExpr {
    let l = if undeformed {
        build_standard_angular()
    } else {
        complex_ell(spec)
    };
    let p = momentum();
    (0..3)
        .map(|k| l[k].apply_to_function(&spec.s()[c]).compose(&p[k]))
        .sum()
}

/// The function `Σ_k ℓ_k s_k`.
pub fn ell_dot_s(spec: &DeformationSpec) -> OperatorExpr {
    let l = complex_ell(spec);
    (0..3).map(|k| l[k].apply_to_function(&spec.s()[k])).sum()
}

/// Cross-product form: `ε_abc [(ℓ s_c)·p − (ℓ·s) p_c]`.
pub fn h_cross_form(spec: &DeformationSpec) -> Matrix {
    let p = momentum();
    let dot = ell_dot_s(spec);
    let v: Triple = std::array::from_fn(|c| &ell_s_dot_p(spec, c, false) - &dot.compose(&p[c]));
    matrix(|a, b| {
        if a == b {
            OperatorExpr::zero()
        } else {
            let c = third(a, b);
            v[c].compose(&int(levi(a, b, c)))
        }
    })
}

/// How the sandwiching `i`s of the left closed form are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeftReading {
    /// Every `i` multiplies from the left.
    LeftFactors,
    /// The trailing `i` of each bracket acts on `Ψ` from the right.
    TrailingRightUnit,
}

fn quat_position(spec: &DeformationSpec) -> Triple {
    super::builders::build_position(&spec.with_flavor(Flavor::QuatLeft))
}

fn vector_part(f: &OperatorExpr) -> OperatorExpr {
    (f - &f.conj_function()).scale(&SymScalar::from_ratio(1, 2))
}

/// Double Levi-Cività sum `ε_amn ε_bkl T(m, n, k, l)`.
fn double_levi(a: usize, b: usize, t: impl Fn(usize, usize, usize, usize) -> OperatorExpr) -> OperatorExpr {
    let mut acc = OperatorExpr::zero();
    for m in 0..3 {
        for n in 0..3 {
            let e1 = levi(a, m, n);
            if e1 == 0 {
                continue;
            }
            for k in 0..3 {
                for l in 0..3 {
                    let e2 = levi(b, k, l);
                    if e2 == 0 {
                        continue;
                    }
                    acc = &acc + &t(m, n, k, l).compose(&int(e1 * e2));
                }
            }
        }
    }
    acc
}

fn hbar2() -> OperatorExpr {
    hbar().compose(&hbar())
}

/// Closed form offered for the left deformation factor:
/// `ħ² ε_amn ε_bkl [q_m ∂_n(i(q_k − q̄_k)i/2) ∂_l − q_k ∂_l(i(q_m − q̄_m)i/2) ∂_n
///  + (q_m i q_k − q_k i q_m) i ∂_n ∂_l]`.
///
/// A derivative in front of a bracket acts on the bracketed function only.
pub fn h_left_closed(spec: &DeformationSpec, reading: LeftReading) -> Matrix {
    let q = quat_position(spec);
    let i = i_unit();
    let d: Triple = std::array::from_fn(OperatorExpr::deriv);
    let trailing_i = |e: &OperatorExpr| -> OperatorExpr {
        match reading {
            LeftReading::LeftFactors => e.compose(&i),
            LeftReading::TrailingRightUnit => OperatorExpr::right_unit(Unit::I).compose(e),
        }
    };
    // ∂_n(i(f − f̄)i/2), the last i placed per the reading
    let sandwich = |n: usize, f: &OperatorExpr| -> OperatorExpr {
        trailing_i(&i.compose(&d[n].apply_to_function(&vector_part(f))))
    };
    matrix(|a, b| {
        let body = double_levi(a, b, |m, n, k, l| {
            let t1 = q[m].compose(&sandwich(n, &q[k])).compose(&d[l]);
            let t2 = q[k].compose(&sandwich(l, &q[m])).compose(&d[n]);
            let f = &q[m].compose(&i).compose(&q[k]) - &q[k].compose(&i).compose(&q[m]);
            let t3 = trailing_i(&f).compose(&d[n]).compose(&d[l]);
            &(&t1 - &t2) + &t3
        });
        hbar2().compose(&body)
    })
}

/// Closed form offered for the right deformation factor:
/// `ħ² ε_amn ε_bkl [q_k ∂_l((q_m − q̄_m)/2) ∂_n − q_m ∂_n((q_k − q̄_k)/2) ∂_l
///  + σ (q_m q_k − q_k q_m) ∂_n ∂_l]`
/// with `σ = second_order_sign` (the printed form has `σ = 1`).
pub fn h_right_closed(spec: &DeformationSpec, second_order_sign: i64) -> Matrix {
    let q = quat_position(spec);
    let d: Triple = std::array::from_fn(OperatorExpr::deriv);
    matrix(|a, b| {
        let body = double_levi(a, b, |m, n, k, l| {
            let t1 = q[k].compose(&d[l].apply_to_function(&vector_part(&q[m]))).compose(&d[n]);
            let t2 = q[m].compose(&d[n].apply_to_function(&vector_part(&q[k]))).compose(&d[l]);
            let t3 = (&q[m].compose(&q[k]) - &q[k].compose(&q[m]))
                .compose(&d[n])
                .compose(&d[l])
                .compose(&int(second_order_sign));
            &(&t1 - &t2) + &t3
        });
        hbar2().compose(&body)
    })
}

/// `ℓ + ħ k w̄ × ∇`, the expanded left angular momentum (`ij = k`).
pub fn left_ell_expanded(spec: &DeformationSpec) -> Triple {
    let l = complex_ell(&spec.without_w());
    let kwbar: Triple = std::array::from_fn(|a| {
        OperatorExpr::left_unit(Unit::K).compose(&spec.w()[a].conj_function())
    });
    let d: Triple = std::array::from_fn(OperatorExpr::deriv);
    let c = super::builders::cross(&kwbar, &d);
    std::array::from_fn(|a| &l[a] + &hbar().compose(&c[a]))
}
