//! Deterministic rendering in the mini-language.

use num_traits::{One, Signed};

use super::{OperatorExpr, TermKey};
use crate::qalg::{fmt_rational, QuatScalar, SymScalar, Unit};

/// Signed monomial pieces of a quaternion, one per (unit, symbol monomial).
fn quat_pieces(q: &QuatScalar) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    for (u, s) in q.components() {
        for (e, c) in s.terms() {
            let mut parts = Vec::new();
            let has_syms = e.iter().any(|&p| p > 0);
            let a = c.abs();
            if !a.is_one() || (!has_syms && u == Unit::One) {
                parts.push(fmt_rational(&a));
            }
            if u != Unit::One {
                parts.push(u.symbol().to_string());
            }
            SymScalar::fmt_monomial(e, &mut parts);
            out.push((c.is_negative(), parts.join("*")));
        }
    }
    out
}

fn join_signed(pieces: &[(bool, String)]) -> String {
    if pieces.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (n, (neg, body)) in pieces.iter().enumerate() {
        match (n, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(body);
    }
    s
}

/// Renders a quaternion coefficient, e.g. `1 - 3/2*hbar + i*eps`.
pub fn format_quat(q: &QuatScalar) -> String {
    join_signed(&quat_pieces(q))
}

fn factors(key: &TermKey) -> Vec<String> {
    let mut f = Vec::new();
    for (ax, name) in ["x", "y", "z"].iter().enumerate() {
        for _ in 0..key.mono.0[ax] {
            f.push(name.to_string());
        }
    }
    for (ax, name) in ["Dx", "Dy", "Dz"].iter().enumerate() {
        for _ in 0..key.deriv.0[ax] {
            f.push(name.to_string());
        }
    }
    f
}

/// One term as `(negative, text)`, the sign pulled out when that is exact.
fn format_term(key: &TermKey, c: &QuatScalar) -> (bool, String) {
    let f = factors(key);
    let pieces = quat_pieces(c);
    let (neg, body) = if pieces.len() == 1 && f.is_empty() {
        (pieces[0].0, pieces[0].1.clone())
    } else if *c == QuatScalar::one() || *c == -&QuatScalar::one() {
        (pieces[0].0, f.join("*"))
    } else if f.is_empty() {
        (false, format!("({})", join_signed(&pieces)))
    } else {
        (false, format!("({})*{}", join_signed(&pieces), f.join("*")))
    };
    if key.runit == Unit::One {
        (neg, body)
    } else {
        let sign = if neg { "-" } else { "" };
        (false, format!("({sign}{body}|{})", key.runit.symbol()))
    }
}

/// Grammar-conformant rendering; `parse_expr(&pretty(e)) == e`.
pub fn pretty(e: &OperatorExpr) -> String {
    let terms: Vec<_> = e.raw_terms().map(|(k, c)| format_term(k, c)).collect();
    join_signed(&terms)
}

#[cfg(test)]
mod tests {
    use super::super::strategies::operator_expr;
    use super::super::parse_expr;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn l3_golden() {
        let l3 = parse_expr("(-i*hbar)*(x*Dy - y*Dx)").unwrap();
        assert_eq!(pretty(&l3), "(-i*hbar)*x*Dy + (i*hbar)*y*Dx");
    }

    #[test]
    fn zero_and_constants() {
        assert_eq!(pretty(&OperatorExpr::zero()), "0");
        assert_eq!(pretty(&parse_expr("x*Dx - 2").unwrap()), "-2 + x*Dx");
        assert_eq!(pretty(&parse_expr("(-hbar*Dx|i)").unwrap()), "((-hbar)*Dx|i)");
        assert_eq!(pretty(&parse_expr("(1|k)").unwrap()), "(1|k)");
    }

    #[test]
    fn quaternion_format() {
        let q = QuatScalar::new(
            SymScalar::one(),
            SymScalar::one(),
            SymScalar::one(),
            SymScalar::one(),
        );
        assert_eq!(format_quat(&q), "1 + i + j + k");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn round_trip(e in operator_expr()) {
            let text = pretty(&e);
            prop_assert_eq!(parse_expr(&text).unwrap(), e, "{}", text);
        }
    }
}
