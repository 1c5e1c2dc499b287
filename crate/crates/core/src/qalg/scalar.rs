//! Exact multivariate polynomials over a fixed set of real constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QalgError;

/// Names of every real constant a [`SymScalar`] may contain.
///
/// The set is closed: exponent vectors have a fixed layout, which keeps the
/// canonical term keys unique.
pub const SYMBOL_NAMES: [&str; NSYM] = [
    "hbar", "eps", "eps1", "eps2", "eps3", "dx", "dy", "dz", "delta",
];

pub const NSYM: usize = 9;

pub type Exponents = [u8; NSYM];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

impl Symbol {
    pub const HBAR: Symbol = Symbol(0);
    pub const EPS: Symbol = Symbol(1);
    pub const EPS1: Symbol = Symbol(2);
    pub const EPS2: Symbol = Symbol(3);
    pub const EPS3: Symbol = Symbol(4);
    pub const DX: Symbol = Symbol(5);
    pub const DY: Symbol = Symbol(6);
    pub const DZ: Symbol = Symbol(7);
    pub const DELTA: Symbol = Symbol(8);

    pub fn from_name(name: &str) -> Option<Symbol> {
        SYMBOL_NAMES
            .iter()
            .position(|s| *s == name)
            .map(|i| Symbol(i as u8))
    }

    pub fn name(self) -> &'static str {
        SYMBOL_NAMES[self.0 as usize]
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = Symbol> {
        (0..NSYM as u8).map(Symbol)
    }

    /// The three deformation parameters of the diagonal gauge function.
    pub fn eps_component(axis: usize) -> Symbol {
        [Symbol::EPS1, Symbol::EPS2, Symbol::EPS3][axis]
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Numeric values for symbols, used by [`SymScalar::eval`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Assignment {
    values: [Option<f64>; NSYM],
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, sym: Symbol, value: f64) -> Self {
        self.set(sym, value);
        self
    }

    pub fn set(&mut self, sym: Symbol, value: f64) {
        self.values[sym.index()] = Some(value);
    }

    pub fn get(&self, sym: Symbol) -> Option<f64> {
        self.values[sym.index()]
    }
}

/// Polynomial in the symbols of [`SYMBOL_NAMES`] with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymScalar {
    terms: BTreeMap<Exponents, BigRational>,
}

impl SymScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert([0; NSYM], r);
        }
        SymScalar { terms }
    }

    pub fn symbol(sym: Symbol) -> Self {
        let mut exps = [0; NSYM];
        exps[sym.index()] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, BigRational::one());
        SymScalar { terms }
    }

    /// Builds from raw terms, dropping zero coefficients and merging repeats.
    pub fn from_terms<I>(it: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut out = SymScalar::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exps: Exponents, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// The value when the polynomial has no symbol dependence.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(e, _)| e.iter().all(|&p| p == 0))
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for e in self.terms.keys() {
            for s in Symbol::all() {
                if e[s.index()] > 0 {
                    out.insert(s);
                }
            }
        }
        out
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return SymScalar::zero();
        }
        SymScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = SymScalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `sym` everywhere by `value`.
    pub fn substitute(&self, sym: Symbol, value: &SymScalar) -> Self {
        let mut out = SymScalar::zero();
        for (e, c) in &self.terms {
            let p = e[sym.index()];
            if p == 0 {
                out.add_term(*e, c.clone());
                continue;
            }
            let mut rest = *e;
            rest[sym.index()] = 0;
            let base = SymScalar {
                terms: BTreeMap::from([(rest, c.clone())]),
            };
            out += &(&base * &value.pow(p as u32));
        }
        out
    }

    /// Evaluates at a numeric assignment; fails naming the first missing symbol.
    pub fn eval(&self, assignment: &Assignment) -> Result<f64, QalgError> {
        let mut total = 0.0;
        for (e, c) in &self.terms {
            let mut v = c.to_f64().unwrap_or(f64::NAN);
            for s in Symbol::all() {
                let p = e[s.index()];
                if p == 0 {
                    continue;
                }
                let x = assignment
                    .get(s)
                    .ok_or_else(|| QalgError::UnassignedSymbol(s.name().to_string()))?;
                v *= x.powi(p as i32);
            }
            total += v;
        }
        Ok(total)
    }

    /// Total degree of the highest term (0 for constants and zero).
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&p| p as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn fmt_monomial(exps: &Exponents, out: &mut Vec<String>) {
        for s in Symbol::all() {
            for _ in 0..exps[s.index()] {
                out.push(s.name().to_string());
            }
        }
    }
}

impl fmt::Display for SymScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut parts = Vec::new();
            let a = c.abs();
            let has_syms = e.iter().any(|&p| p > 0);
            if !a.is_one() || !has_syms {
                parts.push(fmt_rational(&a));
            }
            SymScalar::fmt_monomial(e, &mut parts);
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl<'a> Add<&'a SymScalar> for &'a SymScalar {
    type Output = SymScalar;
    fn add(self, rhs: &SymScalar) -> SymScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&SymScalar> for SymScalar {
    fn add_assign(&mut self, rhs: &SymScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a> Sub<&'a SymScalar> for &'a SymScalar {
    type Output = SymScalar;
    fn sub(self, rhs: &SymScalar) -> SymScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a SymScalar> for &'a SymScalar {
    type Output = SymScalar;
    fn mul(self, rhs: &SymScalar) -> SymScalar {
        let mut out = SymScalar::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (p, q) in e.iter_mut().zip(eb) {
                    *p = p
                        .checked_add(*q)
                        .expect("symbol exponent exceeds 255");
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &SymScalar {
    type Output = SymScalar;
    fn neg(self) -> SymScalar {
        SymScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<SymScalar> for SymScalar {
            type Output = SymScalar;
            fn $m(self, rhs: SymScalar) -> SymScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SymScalar {
    type Output = SymScalar;
    fn neg(self) -> SymScalar {
        -&self
    }
}

impl From<i64> for SymScalar {
    fn from(n: i64) -> Self {
        SymScalar::from_int(n)
    }
}

impl From<Symbol> for SymScalar {
    fn from(s: Symbol) -> Self {
        SymScalar::symbol(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: Symbol) -> SymScalar {
        SymScalar::symbol(s)
    }

    #[test]
    fn zero_terms_are_dropped() {
        let a = &sym(Symbol::EPS) - &sym(Symbol::EPS);
        assert!(a.is_zero());
        assert_eq!(a.num_terms(), 0);
    }

    #[test]
    fn eval_product() {
        let s = &sym(Symbol::HBAR) * &sym(Symbol::EPS);
        let a = Assignment::new()
            .with(Symbol::HBAR, 1.0)
            .with(Symbol::EPS, 0.1);
        assert!((s.eval(&a).unwrap() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn eval_symmetric_difference_vanishes() {
        let s = &sym(Symbol::EPS1) - &sym(Symbol::EPS2);
        for c in [-2.5, 0.0, 0.3, 17.0] {
            let a = Assignment::new()
                .with(Symbol::EPS1, c)
                .with(Symbol::EPS2, c);
            assert_eq!(s.eval(&a).unwrap(), 0.0);
        }
    }

    #[test]
    fn unassigned_symbol_is_named() {
        let s = &sym(Symbol::HBAR) * &sym(Symbol::EPS3);
        let a = Assignment::new().with(Symbol::HBAR, 1.0);
        match s.eval(&a) {
            Err(QalgError::UnassignedSymbol(name)) => assert_eq!(name, "eps3"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn substitute_expands_powers() {
        // (eps1 + 1)^2 with eps1 -> eps + 1  gives eps^2 + 4 eps + 4
        let p = (&sym(Symbol::EPS1) + &SymScalar::one()).pow(2);
        let q = p.substitute(Symbol::EPS1, &(&sym(Symbol::EPS) + &SymScalar::one()));
        let e = sym(Symbol::EPS);
        let want = &(&(&e * &e) + &(&SymScalar::from_int(4) * &e)) + &SymScalar::from_int(4);
        assert_eq!(q, want);
    }

    #[test]
    fn display_is_readable() {
        let s = &(&SymScalar::from_ratio(-3, 2) * &sym(Symbol::HBAR)) + &SymScalar::one();
        assert_eq!(s.to_string(), "1 - 3/2*hbar");
    }
}
