use super::spec::{i_unit, DeformationSpec, Flavor};
use super::AngmomError;
use crate::opcalc::{anticommutator, OperatorExpr};
use crate::qalg::{QuatScalar, SymScalar, Symbol, Unit};

pub type Triple = [OperatorExpr; 3];

/// Levi-Cività symbol on indices `0, 1, 2`.
pub fn levi(a: usize, b: usize, c: usize) -> i64 {
    if a == b || b == c || a == c {
        0
    } else if (a, b, c) == (0, 1, 2) || (a, b, c) == (1, 2, 0) || (a, b, c) == (2, 0, 1) {
        1
    } else {
        -1
    }
}

/// The remaining index of a pair of distinct indices.
pub fn third(a: usize, b: usize) -> usize {
    3 - a - b
}

pub fn hbar() -> OperatorExpr {
    OperatorExpr::symbol(Symbol::HBAR)
}

pub(crate) fn sym(s: &SymScalar) -> OperatorExpr {
    OperatorExpr::sym(s.clone())
}

pub(crate) fn int(n: i64) -> OperatorExpr {
    OperatorExpr::int(n)
}

/// `ẑ_a = x_a + i s_a`, plus `w_a j` for the quaternionic flavors.
pub fn build_position(spec: &DeformationSpec) -> Triple {
    std::array::from_fn(|a| {
        let z = &OperatorExpr::coord(a) + &i_unit().compose(&spec.s()[a]);
        match spec.flavor {
            Flavor::Complex => z,
            Flavor::QuatLeft | Flavor::QuatRight => {
                &z + &spec.w()[a].compose(&OperatorExpr::left_unit(Unit::J))
            }
        }
    })
}

/// `−iħ∂_a` for the complex and left flavors, `Ψ ↦ −ħ∂_aΨ i` for the right.
pub fn build_momentum(flavor: Flavor) -> Triple {
    std::array::from_fn(|a| {
        let d = OperatorExpr::deriv(a);
        match flavor {
            Flavor::Complex | Flavor::QuatLeft => {
                let c = QuatScalar::unit_scaled(Unit::I, -SymScalar::symbol(Symbol::HBAR));
                OperatorExpr::scalar(c).compose(&d)
            }
            Flavor::QuatRight => OperatorExpr::right_unit(Unit::I).compose(&(-&hbar()).compose(&d)),
        }
    })
}

/// Cross product `a × b` of operator triples, factors kept in order.
pub fn cross(a: &Triple, b: &Triple) -> Triple {
    std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        &a[j].compose(&b[k]) - &a[k].compose(&b[j])
    })
}

/// `ℓ = q × p` for the spec's flavor.
pub fn build_angular(spec: &DeformationSpec) -> Triple {
    cross(&build_position(spec), &build_momentum(spec.flavor))
}

/// The undeformed `l = r × p`.
pub fn build_standard_angular() -> Triple {
    build_angular(&DeformationSpec::undeformed())
}

/// `Σ_a ℓ_a ℓ_a`.
pub fn build_ell2(spec: &DeformationSpec) -> OperatorExpr {
    sum_of_squares(&build_angular(spec))
}

pub fn sum_of_squares(l: &Triple) -> OperatorExpr {
    l.iter().map(|c| c.compose(c)).sum()
}

/// Ladder pair with the planar and axial deformation constants.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub plus: OperatorExpr,
    pub minus: OperatorExpr,
    /// Common planar constant `ε`, with `s₁ = εx`, `s₂ = εy`.
    pub eps: SymScalar,
    /// Axial constant `ε₃`, with `s₃ = ε₃z` (zero allowed).
    pub eps3: SymScalar,
    pub ell: Triple,
}

impl Ladder {
    pub fn get(&self, sign: i8) -> &OperatorExpr {
        if sign > 0 {
            &self.plus
        } else {
            &self.minus
        }
    }

    /// `ħ(1 + iε)`, the deformed ladder step.
    pub fn step(&self) -> OperatorExpr {
        &hbar() + &hbar().compose(&i_unit()).compose(&sym(&self.eps))
    }
}

/// `ℓ± = ℓ₁ ± iℓ₂`. Requires a complex spec with `s = (εx, εy, ε₃z)`.
pub fn build_ladder(spec: &DeformationSpec) -> Result<Ladder, AngmomError> {
    if spec.flavor != Flavor::Complex {
        return Err(AngmomError::Incompatible(
            "ladder operators are built for the complex flavor".into(),
        ));
    }
    let c = spec.diagonal_coefficients().ok_or_else(|| {
        AngmomError::Incompatible("ladder operators need a diagonal s".into())
    })?;
    if c[0] != c[1] {
        return Err(AngmomError::Incompatible(format!(
            "ladder operators need equal planar constants, got {} and {}",
            c[0], c[1]
        )));
    }
    let ell = build_angular(spec);
    let il2 = i_unit().compose(&ell[1]);
    Ok(Ladder {
        plus: &ell[0] + &il2,
        minus: &ell[0] - &il2,
        eps: c[0].clone(),
        eps3: c[2].clone(),
        ell,
    })
}

/// `λ± = ħ(x ± iy)∂z`, so that `ℓ± = l± ∓ iελ±` when `ε₃ = 0`.
pub fn build_lambda(sign: i8) -> OperatorExpr {
    let iy = i_unit().compose(&OperatorExpr::coord(1));
    let planar = if sign > 0 {
        &OperatorExpr::coord(0) + &iy
    } else {
        &OperatorExpr::coord(0) - &iy
    };
    hbar().compose(&planar).compose(&OperatorExpr::deriv(2))
}

/// `{ℓ_b, ℓ_c}` shorthand.
pub(crate) fn anti(l: &Triple, b: usize, c: usize) -> OperatorExpr {
    anticommutator(&l[b], &l[c])
}
