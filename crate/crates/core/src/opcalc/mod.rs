//! Normal-ordered noncommutative operator calculus.
//!
//! Every operator is a finite sum of terms acting on a quaternion-valued
//! function `Ψ` as
//!
//! ```text
//! Ψ ↦ q · x^a y^b z^c · (∂x^α ∂y^β ∂z^γ Ψ) · e
//! ```
//!
//! with `q` a [`QuatScalar`] left coefficient and `e` one of the basis units
//! `1, i, j, k` acting from the right. Coordinate monomials and symbolic
//! scalars are real, hence central, so any right quaternion factor can be
//! expanded over the four units with its coefficients moved to the left.
//! The resulting term map is unique, which makes operator equality a plain
//! structural comparison.

pub mod parser;
pub mod pretty;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::qalg::{QuatScalar, SymScalar, Symbol, Unit};

pub use parser::{parse_expr, ParseError};
pub use pretty::pretty;

/// Powers of the coordinates `(x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

/// Orders of `(∂x, ∂y, ∂z)`. Partial derivatives commute, so the triple is
/// all there is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct DerivIndex(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn coordinate(axis: usize) -> Self {
        let mut e = [0; 3];
        e[axis] = 1;
        Monomial(e)
    }
}

impl DerivIndex {
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn axis(axis: usize) -> Self {
        let mut e = [0; 3];
        e[axis] = 1;
        DerivIndex(e)
    }
}

fn graded_cmp(a: &[u32; 3], b: &[u32; 3]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        graded_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DerivIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        graded_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for DerivIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical key of a term. Ordered by derivative, then monomial, then
/// right unit, each graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermKey {
    pub deriv: DerivIndex,
    pub mono: Monomial,
    pub runit: Unit,
}

/// One normal-ordered term; see the module docs for its action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTerm {
    pub coeff: QuatScalar,
    pub mono: Monomial,
    pub deriv: DerivIndex,
    pub runit: Unit,
}

/// Sum of normal-ordered terms with merged coefficients and no zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OperatorExpr {
    terms: BTreeMap<TermKey, QuatScalar>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(QuatScalar::one())
    }

    /// Left multiplication by a constant quaternion.
    pub fn scalar(q: QuatScalar) -> Self {
        Self::term(q, Monomial::default(), DerivIndex::default(), Unit::One)
    }

    pub fn sym(s: SymScalar) -> Self {
        Self::scalar(QuatScalar::real(s))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::sym(SymScalar::symbol(s))
    }

    pub fn int(n: i64) -> Self {
        Self::sym(SymScalar::from_int(n))
    }

    /// Left multiplication by a basis unit.
    pub fn left_unit(u: Unit) -> Self {
        Self::scalar(QuatScalar::unit(u))
    }

    /// `Ψ ↦ Ψ u`.
    pub fn right_unit(u: Unit) -> Self {
        Self::term(QuatScalar::one(), Monomial::default(), DerivIndex::default(), u)
    }

    /// Multiplication by the coordinate `x`, `y` or `z`.
    pub fn coord(axis: usize) -> Self {
        Self::term(
            QuatScalar::one(),
            Monomial::coordinate(axis),
            DerivIndex::default(),
            Unit::One,
        )
    }

    pub fn deriv(axis: usize) -> Self {
        Self::term(
            QuatScalar::one(),
            Monomial::default(),
            DerivIndex::axis(axis),
            Unit::One,
        )
    }

    pub fn term(coeff: QuatScalar, mono: Monomial, deriv: DerivIndex, runit: Unit) -> Self {
        let mut out = Self::zero();
        out.add_term(TermKey { deriv, mono, runit }, coeff);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = OperatorTerm>>(it: I) -> Self {
        let mut out = Self::zero();
        for t in it {
            out.add_term(
                TermKey {
                    deriv: t.deriv,
                    mono: t.mono,
                    runit: t.runit,
                },
                t.coeff,
            );
        }
        out
    }

    fn add_term(&mut self, key: TermKey, coeff: QuatScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c = &*c + &coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = OperatorTerm> + '_ {
        self.terms.iter().map(|(k, c)| OperatorTerm {
            coeff: c.clone(),
            mono: k.mono,
            deriv: k.deriv,
            runit: k.runit,
        })
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (&TermKey, &QuatScalar)> {
        self.terms.iter()
    }

    /// Highest derivative order present.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|k| k.deriv.order()).max().unwrap_or(0)
    }

    /// True when the expression is a multiplication operator by a
    /// polynomial function (no derivatives, no right units).
    pub fn is_function(&self) -> bool {
        self.terms
            .keys()
            .all(|k| k.deriv.order() == 0 && k.runit == Unit::One)
    }

    /// True when every term has a real left coefficient (no i, j, k parts).
    pub fn has_real_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn has_complex_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_complex())
    }

    /// Operator product `self ∘ rhs`, normal ordered with the Leibniz rule.
    ///
    /// Left coefficients multiply in order `q_self · q_rhs`; right units in
    /// reverse, `e_rhs · e_self`, because `(Ψ e_rhs) e_self = Ψ (e_rhs e_self)`.
    pub fn compose(&self, rhs: &OperatorExpr) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (ka, qa) in &self.terms {
            for (kb, qb) in &rhs.terms {
                let q = qa * qb;
                let (sign, runit) = kb.runit.mul(ka.runit);
                let alpha = ka.deriv.0;
                let b = kb.mono.0;
                for g0 in 0..=alpha[0].min(b[0]) {
                    for g1 in 0..=alpha[1].min(b[1]) {
                        for g2 in 0..=alpha[2].min(b[2]) {
                            let g = [g0, g1, g2];
                            let mut factor = BigInt::from(sign);
                            let mut mono = ka.mono.0;
                            let mut deriv = kb.deriv.0;
                            for ax in 0..3 {
                                factor *= binomial(alpha[ax], g[ax]) * falling(b[ax], g[ax]);
                                mono[ax] += b[ax] - g[ax];
                                deriv[ax] += alpha[ax] - g[ax];
                            }
                            let c = q.scale(&SymScalar::from_rational(BigRational::from_integer(
                                factor,
                            )));
                            out.add_term(
                                TermKey {
                                    deriv: DerivIndex(deriv),
                                    mono: Monomial(mono),
                                    runit,
                                },
                                c,
                            );
                        }
                    }
                }
            }
        }
        out
    }

    /// Left-multiplies every coefficient by `q`.
    pub fn scale_left(&self, q: &QuatScalar) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, q * c);
        }
        out
    }

    pub fn scale(&self, s: &SymScalar) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.scale(s));
        }
        out
    }

    /// Replaces a symbol in every coefficient.
    pub fn substitute(&self, sym: Symbol, value: &SymScalar) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.map(|s| s.substitute(sym, value)));
        }
        out
    }

    /// Sets each listed symbol to zero.
    pub fn set_zero(&self, syms: &[Symbol]) -> OperatorExpr {
        syms.iter()
            .fold(self.clone(), |acc, s| acc.substitute(*s, &SymScalar::zero()))
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Symbol> {
        let mut out = std::collections::BTreeSet::new();
        for c in self.terms.values() {
            for (_, s) in c.components() {
                out.extend(s.symbols());
            }
        }
        out
    }

    /// The function obtained by letting `self` act on the function `f`
    /// (a multiplication operator), returned as a multiplication operator.
    ///
    /// Right units acting on a function value become right factors of the
    /// coefficient: `q m e` is the function `(q e) m`.
    pub fn apply_to_function(&self, f: &OperatorExpr) -> OperatorExpr {
        debug_assert!(f.is_function());
        let prod = self.compose(f);
        let mut out = OperatorExpr::zero();
        for (k, c) in &prod.terms {
            if k.deriv.order() != 0 {
                continue;
            }
            out.add_term(
                TermKey {
                    deriv: DerivIndex::default(),
                    mono: k.mono,
                    runit: Unit::One,
                },
                c.mul_unit_right(k.runit),
            );
        }
        out
    }

    /// Pointwise quaternion conjugate of a function.
    pub fn conj_function(&self) -> OperatorExpr {
        debug_assert!(self.is_function());
        let mut out = OperatorExpr::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.conj());
        }
        out
    }

    /// Pointwise complex conjugate (negates the `i` part only).
    pub fn complex_conj_function(&self) -> OperatorExpr {
        debug_assert!(self.is_function());
        let mut out = OperatorExpr::zero();
        for (k, c) in &self.terms {
            let mut c = c.clone();
            c.x = -&c.x;
            out.add_term(*k, c);
        }
        out
    }

    /// The operator as it acts on complex-valued functions.
    ///
    /// For complex `Ψ` a right `i` commutes past everything real and lands
    /// next to the coefficient, so `q m ∂Ψ i = (q i) m ∂Ψ`. Returns `None`
    /// when a term carries a `j` or `k` right unit, which has no such
    /// reduction.
    pub fn restrict_to_complex(&self) -> Option<OperatorExpr> {
        let mut out = OperatorExpr::zero();
        for (k, c) in &self.terms {
            match k.runit {
                Unit::One | Unit::I => out.add_term(
                    TermKey {
                        runit: Unit::One,
                        ..*k
                    },
                    c.mul_unit_right(k.runit),
                ),
                Unit::J | Unit::K => return None,
            }
        }
        Some(out)
    }
}

pub fn compose(a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
    a.compose(b)
}

/// `[a, b] = a∘b − b∘a`.
pub fn commutator(a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
    &a.compose(b) - &b.compose(a)
}

/// `{a, b} = a∘b + b∘a`.
pub fn anticommutator(a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
    &a.compose(b) + &b.compose(a)
}

pub fn equal(a: &OperatorExpr, b: &OperatorExpr) -> bool {
    a == b
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::from(1);
    for t in 0..k {
        r = r * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    r
}

fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, t| acc * BigInt::from(n - t))
}

impl Add for &OperatorExpr {
    type Output = OperatorExpr;
    fn add(self, rhs: &OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, rhs: &OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Neg for &OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        OperatorExpr {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &OperatorExpr {
    type Output = OperatorExpr;
    fn mul(self, rhs: &OperatorExpr) -> OperatorExpr {
        self.compose(rhs)
    }
}

impl Add for OperatorExpr {
    type Output = OperatorExpr;
    fn add(self, rhs: OperatorExpr) -> OperatorExpr {
        &self + &rhs
    }
}

impl Sub for OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, rhs: OperatorExpr) -> OperatorExpr {
        &self - &rhs
    }
}

impl Mul for OperatorExpr {
    type Output = OperatorExpr;
    fn mul(self, rhs: OperatorExpr) -> OperatorExpr {
        self.compose(&rhs)
    }
}

impl Neg for OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        -&self
    }
}

impl std::iter::Sum for OperatorExpr {
    fn sum<I: Iterator<Item = OperatorExpr>>(iter: I) -> OperatorExpr {
        iter.fold(OperatorExpr::zero(), |acc, e| &acc + &e)
    }
}

impl serde::Serialize for OperatorExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&pretty(self))
    }
}

impl<'de> serde::Deserialize<'de> for OperatorExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_expr(&text).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty(self))
    }
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use crate::qalg::strategies::sym_scalar;
    use proptest::prelude::*;

    fn small_quat() -> impl Strategy<Value = QuatScalar> {
        (sym_scalar(), 0usize..4).prop_map(|(s, u)| QuatScalar::unit_scaled(Unit::ALL[u], s))
    }

    /// Random small expressions: a few terms, low degrees, all four right units.
    pub fn operator_expr() -> impl Strategy<Value = OperatorExpr> {
        prop::collection::vec(
            (
                small_quat(),
                prop::array::uniform3(0u32..2),
                prop::array::uniform3(0u32..2),
                0usize..4,
            ),
            0..4,
        )
        .prop_map(|ts| {
            OperatorExpr::from_terms(ts.into_iter().map(|(coeff, m, d, u)| OperatorTerm {
                coeff,
                mono: Monomial(m),
                deriv: DerivIndex(d),
                runit: Unit::ALL[u],
            }))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::strategies::operator_expr;
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> OperatorExpr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn leibniz_single_step() {
        assert_eq!(compose(&p("Dx"), &p("x")), p("x*Dx + 1"));
        assert_eq!(compose(&p("x*Dy"), &p("y*Dx")), p("x*Dx + x*y*Dy*Dx"));
    }

    #[test]
    fn higher_order_leibniz() {
        // Dx^2 x^2 = x^2 Dx^2 + 4 x Dx + 2
        assert_eq!(
            compose(&p("Dx*Dx"), &p("x*x")),
            p("x*x*Dx*Dx + 4*x*Dx + 2")
        );
    }

    #[test]
    fn right_units_compose_in_reverse() {
        assert_eq!(compose(&p("(1|i)"), &p("(1|j)")), p("(-1|k)"));
        assert_eq!(compose(&p("(1|j)"), &p("(1|i)")), p("(1|k)"));
    }

    #[test]
    fn left_coefficients_compose_in_order() {
        assert_eq!(compose(&p("i"), &p("j")), p("k"));
        assert_eq!(compose(&p("j"), &p("i")), p("-k"));
    }

    #[test]
    fn basic_brackets() {
        assert_eq!(commutator(&p("Dx"), &p("x")), OperatorExpr::identity());
        assert_eq!(anticommutator(&p("Dx"), &p("x")), p("2*x*Dx + 1"));
        let a = p("x*Dy + (i*hbar)*z");
        assert_eq!(anticommutator(&a, &a), compose(&a, &a).scale(&SymScalar::from_int(2)));
    }

    #[test]
    fn standard_angular_momentum_closes() {
        let l1 = p("(-i*hbar)*(y*Dz - z*Dy)");
        let l2 = p("(-i*hbar)*(z*Dx - x*Dz)");
        let l3 = p("(-i*hbar)*(x*Dy - y*Dx)");
        assert_eq!(commutator(&l1, &l2), compose(&p("i*hbar"), &l3));
    }

    #[test]
    fn equality_is_structural() {
        assert!(equal(&compose(&p("Dx"), &p("x")), &p("x*Dx + 1")));
        let a = p("y*Dz + 3*z");
        assert!(!equal(&a, &(&a + &p("x*Dx"))));
    }

    #[test]
    fn function_action() {
        // Dx applied to x^2 y is the function 2 x y
        let f = p("x*x*y");
        assert_eq!(p("Dx").apply_to_function(&f), p("2*x*y"));
        // right unit acting on a function value
        assert_eq!(p("(x|j)").apply_to_function(&p("i")), p("x*k"));
    }

    #[test]
    fn complex_restriction() {
        let r = p("(-hbar*Dx|i)").restrict_to_complex().unwrap();
        assert_eq!(r, p("(-i*hbar)*Dx"));
        assert!(p("(x|j)").restrict_to_complex().is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn composition_is_associative(a in operator_expr(), b in operator_expr(), c in operator_expr()) {
            prop_assert_eq!(compose(&a, &compose(&b, &c)), compose(&compose(&a, &b), &c));
        }

        #[test]
        fn jacobi_identity(a in operator_expr(), b in operator_expr(), c in operator_expr()) {
            let j = &(&commutator(&a, &commutator(&b, &c)) + &commutator(&b, &commutator(&c, &a)))
                + &commutator(&c, &commutator(&a, &b));
            prop_assert!(j.is_zero());
        }

        #[test]
        fn commutator_is_bilinear(a in operator_expr(), b in operator_expr(), c in operator_expr()) {
            prop_assert_eq!(commutator(&(&a + &b), &c), &commutator(&a, &c) + &commutator(&b, &c));
            prop_assert_eq!(commutator(&a, &(&b + &c)), &commutator(&a, &b) + &commutator(&a, &c));
            prop_assert!((&commutator(&a, &b) + &commutator(&b, &a)).is_zero());
        }

        #[test]
        fn normalizing_is_idempotent(a in operator_expr()) {
            let again = OperatorExpr::from_terms(a.terms());
            prop_assert_eq!(&again, &a);
            prop_assert!(a.raw_terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
