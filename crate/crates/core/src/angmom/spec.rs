use serde::{Deserialize, Serialize};

use super::AngmomError;
use crate::opcalc::{parse_expr, OperatorExpr};
use crate::qalg::{SymScalar, Symbol, Unit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Complex,
    QuatLeft,
    QuatRight,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Complex => "complex",
            Flavor::QuatLeft => "quat_left",
            Flavor::QuatRight => "quat_right",
        }
    }

    pub fn from_name(s: &str) -> Option<Flavor> {
        match s {
            "complex" => Some(Flavor::Complex),
            "quat_left" => Some(Flavor::QuatLeft),
            "quat_right" => Some(Flavor::QuatRight),
            _ => None,
        }
    }
}

/// Position deformation: `ẑ = r + i s` and, for quaternionic flavors,
/// `q = ẑ + w j`. `s` is real, `w` complex, both polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationSpec {
    pub flavor: Flavor,
    s: [OperatorExpr; 3],
    w: [OperatorExpr; 3],
}

impl DeformationSpec {
    pub fn new(flavor: Flavor, s: [OperatorExpr; 3], w: [OperatorExpr; 3]) -> Result<Self, AngmomError> {
        for (a, e) in s.iter().enumerate() {
            if !e.is_function() {
                return Err(AngmomError::NotPolynomial(format!("s[{a}] = {e}")));
            }
            if !e.has_real_coefficients() {
                return Err(AngmomError::NotReal(format!("s[{a}] = {e}")));
            }
        }
        for (a, e) in w.iter().enumerate() {
            if !e.is_function() {
                return Err(AngmomError::NotPolynomial(format!("w[{a}] = {e}")));
            }
            if !e.has_complex_coefficients() {
                return Err(AngmomError::NotComplex(format!("w[{a}] = {e}")));
            }
        }
        Ok(Self { flavor, s, w })
    }

    /// Parses comma-separated component lists such as `eps1*x,eps2*y,eps3*z`.
    /// An empty string means the zero vector.
    pub fn parse(flavor: Flavor, s: &str, w: &str) -> Result<Self, AngmomError> {
        Self::new(flavor, parse_triple(s)?, parse_triple(w)?)
    }

    /// `s = (ε₁x, ε₂y, ε₃z)` with `w = (dx·x, dy·y, dz·z)`.
    pub fn diagonal() -> Self {
        let s = std::array::from_fn(|a| {
            OperatorExpr::symbol(Symbol::eps_component(a)).compose(&OperatorExpr::coord(a))
        });
        let w = std::array::from_fn(|a| {
            OperatorExpr::symbol([Symbol::DX, Symbol::DY, Symbol::DZ][a])
                .compose(&OperatorExpr::coord(a))
        });
        Self::new(Flavor::Complex, s, w).expect("diagonal spec is valid")
    }

    pub fn undeformed() -> Self {
        Self::new(Flavor::Complex, Default::default(), Default::default()).expect("zero spec")
    }

    pub fn s(&self) -> &[OperatorExpr; 3] {
        &self.s
    }

    pub fn w(&self) -> &[OperatorExpr; 3] {
        &self.w
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Self {
        Self {
            flavor,
            ..self.clone()
        }
    }

    pub fn without_w(&self) -> Self {
        Self {
            w: Default::default(),
            ..self.clone()
        }
    }

    /// Applies a symbol substitution to every component.
    pub fn substitute(&self, sym: Symbol, value: &SymScalar) -> Self {
        Self {
            flavor: self.flavor,
            s: std::array::from_fn(|a| self.s[a].substitute(sym, value)),
            w: std::array::from_fn(|a| self.w[a].substitute(sym, value)),
        }
    }

    /// Sets every deformation symbol (all but ħ) to zero.
    pub fn undeformed_limit(&self) -> Self {
        Symbol::all()
            .filter(|s| *s != Symbol::HBAR)
            .fold(self.clone(), |acc, s| acc.substitute(s, &SymScalar::zero()))
    }

    /// `Some([c₁, c₂, c₃])` when `s_a = c_a x_a` with constant `c_a`.
    pub fn diagonal_coefficients(&self) -> Option<[SymScalar; 3]> {
        let mut out: [SymScalar; 3] = Default::default();
        for a in 0..3 {
            if self.s[a].is_zero() {
                continue;
            }
            let coord = OperatorExpr::coord(a);
            let mut terms = self.s[a].terms();
            let t = terms.next()?;
            if terms.next().is_some() || !t.coeff.is_real() {
                return None;
            }
            let c = t.coeff.w.clone();
            if OperatorExpr::sym(c.clone()).compose(&coord) != self.s[a] {
                return None;
            }
            out[a] = c;
        }
        Some(out)
    }

    /// Planar symbols identified (`ε₁ = ε₂ = ε`), the form the ladder
    /// identities need.
    pub fn planar_identified(&self) -> Self {
        let eps = SymScalar::symbol(Symbol::EPS);
        self.substitute(Symbol::EPS1, &eps).substitute(Symbol::EPS2, &eps)
    }
}

impl Default for DeformationSpec {
    fn default() -> Self {
        Self::diagonal()
    }
}

fn parse_triple(text: &str) -> Result<[OperatorExpr; 3], AngmomError> {
    if text.trim().is_empty() {
        return Ok(Default::default());
    }
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(AngmomError::Components(parts.len()));
    }
    let mut out: [OperatorExpr; 3] = Default::default();
    for (a, p) in parts.iter().enumerate() {
        out[a] = parse_expr(p)?;
    }
    Ok(out)
}

pub(crate) fn i_unit() -> OperatorExpr {
    OperatorExpr::left_unit(Unit::I)
}
