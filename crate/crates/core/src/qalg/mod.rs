//! Exact scalars and quaternions.
//!
//! [`SymScalar`] is a sparse polynomial in a closed set of real constants
//! (`hbar`, the deformation parameters and the auxiliary constants used for
//! quaternionic position components) with arbitrary-precision rational
//! coefficients. [`QuatScalar`] is a quaternion over those polynomials. Every
//! algebraic identity in the crate is decided on these types, so equality is
//! exact.

mod quaternion;
mod scalar;

pub use quaternion::{qconj, qmul, QuatF64, QuatScalar, Quaternion, Ring, Unit};
pub use scalar::{Assignment, Exponents, SymScalar, Symbol, NSYM, SYMBOL_NAMES};

pub(crate) use scalar::fmt_rational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QalgError {
    #[error("symbol `{0}` has no value in the assignment")]
    UnassignedSymbol(String),
}

/// Evaluates a symbolic scalar at a numeric assignment.
pub fn sym_eval(s: &SymScalar, assignment: &Assignment) -> Result<f64, QalgError> {
    s.eval(assignment)
}

/// Evaluates every component of a symbolic quaternion.
pub fn quat_eval(q: &QuatScalar, assignment: &Assignment) -> Result<QuatF64, QalgError> {
    q.try_map(|c| c.eval(assignment))
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use proptest::prelude::*;

    /// Small random polynomials in the first few symbols.
    pub fn sym_scalar() -> impl Strategy<Value = SymScalar> {
        prop::collection::vec((0u8..3, 0u8..3, 0u8..2, -4i64..5, 1i64..4), 0..4).prop_map(
            |terms| {
                SymScalar::from_terms(terms.into_iter().map(|(a, b, c, n, d)| {
                    let mut e = [0; NSYM];
                    e[0] = a;
                    e[1] = b;
                    e[4] = c;
                    (
                        e,
                        num_rational::BigRational::new(n.into(), d.into()),
                    )
                }))
            },
        )
    }

    pub fn quat_scalar() -> impl Strategy<Value = QuatScalar> {
        (sym_scalar(), sym_scalar(), sym_scalar(), sym_scalar())
            .prop_map(|(w, x, y, z)| QuatScalar::new(w, x, y, z))
    }
}

#[cfg(test)]
mod tests {
    use super::strategies::*;
    use super::*;
    use proptest::prelude::*;

    fn point() -> Assignment {
        Assignment::new()
            .with(Symbol::HBAR, 0.7)
            .with(Symbol::EPS, -1.3)
            .with(Symbol::EPS3, 0.4)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in sym_scalar(), b in sym_scalar(), c in sym_scalar()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &SymScalar::one(), a.clone());
            prop_assert_eq!(&a + &SymScalar::zero(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in sym_scalar(), b in sym_scalar()) {
            let p = point();
            let ea = a.eval(&p).unwrap();
            let eb = b.eval(&p).unwrap();
            let prod = (&a * &b).eval(&p).unwrap();
            let sum = (&a + &b).eval(&p).unwrap();
            prop_assert!((prod - ea * eb).abs() <= 1e-9 * (1.0 + prod.abs()));
            prop_assert!((sum - ea - eb).abs() <= 1e-9 * (1.0 + sum.abs()));
        }

        #[test]
        fn quaternion_product_is_associative(
            a in quat_scalar(), b in quat_scalar(), c in quat_scalar()
        ) {
            prop_assert_eq!(qmul(&qmul(&a, &b), &c), qmul(&a, &qmul(&b, &c)));
        }

        #[test]
        fn conjugation_is_an_involutive_antihomomorphism(a in quat_scalar(), b in quat_scalar()) {
            prop_assert_eq!(qconj(&qconj(&a)), a.clone());
            prop_assert_eq!(qconj(&qmul(&a, &b)), qmul(&qconj(&b), &qconj(&a)));
            let n = qmul(&a, &qconj(&a));
            prop_assert!(n.x.is_zero() && n.y.is_zero() && n.z.is_zero());
        }
    }
}
