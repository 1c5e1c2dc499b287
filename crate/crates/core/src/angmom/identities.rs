//! Registry of algebra identities, each verified by exact comparison.

use rayon::prelude::*;
use serde::Serialize;

use super::builders::{
    anti, build_angular, build_ladder, build_lambda, build_standard_angular, hbar, int, levi, sum_of_squares,
    sym, third, Ladder, Triple,
};
use super::closed::{
    ell_dot_s, ell_s_dot_p, h_cross_form, h_index_form, h_left_closed, h_raw, h_right_closed,
    left_ell_expanded, structure_operator, structure_term, LeftReading, Matrix,
};
use super::spec::{i_unit, DeformationSpec, Flavor};
use super::AngmomError;
use crate::opcalc::{commutator, OperatorExpr};
use crate::qalg::SymScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    DeformedGeneral,
    HTwoForms,
    DiagAlgebra,
    Ell2NonCasimir,
    Ell2General,
    LadderL3,
    LadderEll2,
    LadderShift,
    LeftAlgebra,
    LeftH,
    LeftEll2,
    RightAlgebra,
    RightH,
    RightEll2,
}

pub const IDENTITY_IDS: [IdentityId; 14] = [
    IdentityId::DeformedGeneral,
    IdentityId::HTwoForms,
    IdentityId::DiagAlgebra,
    IdentityId::Ell2NonCasimir,
    IdentityId::Ell2General,
    IdentityId::LadderL3,
    IdentityId::LadderEll2,
    IdentityId::LadderShift,
    IdentityId::LeftAlgebra,
    IdentityId::LeftH,
    IdentityId::LeftEll2,
    IdentityId::RightAlgebra,
    IdentityId::RightH,
    IdentityId::RightEll2,
];

impl IdentityId {
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::DeformedGeneral => "deformed_general",
            IdentityId::HTwoForms => "h_two_forms",
            IdentityId::DiagAlgebra => "diag_algebra",
            IdentityId::Ell2NonCasimir => "ell2_nonCasimir",
            IdentityId::Ell2General => "ell2_general",
            IdentityId::LadderL3 => "ladder_l3",
            IdentityId::LadderEll2 => "ladder_ell2",
            IdentityId::LadderShift => "ladder_shift",
            IdentityId::LeftAlgebra => "left_algebra",
            IdentityId::LeftH => "left_h",
            IdentityId::LeftEll2 => "left_ell2",
            IdentityId::RightAlgebra => "right_algebra",
            IdentityId::RightH => "right_h",
            IdentityId::RightEll2 => "right_ell2",
        }
    }

    pub fn parse(s: &str) -> Result<IdentityId, AngmomError> {
        IDENTITY_IDS
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| AngmomError::UnknownIdentity(s.to_string()))
    }

    /// What the identity asserts, in one line.
    pub fn description(self) -> &'static str {
        match self {
            IdentityId::DeformedGeneral => "[ℓa,ℓb] = iħ ε_abc ℓc + i h_ab with h_ab in closed form, any real s",
            IdentityId::HTwoForms => "index form and cross-product form of h_ab agree",
            IdentityId::DiagAlgebra => "diagonal s = (ε1 x, ε2 y, ε3 z): [ℓa,ℓb] = ε_abc ħ(i − εc) ℓc",
            IdentityId::Ell2NonCasimir => "diagonal s: [ℓ², ℓa] = ħ(εc − εb){ℓb, ℓc}, (a,b,c) cyclic",
            IdentityId::Ell2General => "[ℓ², ℓa] = i(ℓb h_ba + h_ba ℓb + ℓc h_ca + h_ca ℓc)",
            IdentityId::LadderL3 => "[ℓ3, ℓ±] = ±ħ(1 + iε) ℓ± and [ℓ², ℓ3] = 0 with ε1 = ε2 = ε",
            IdentityId::LadderEll2 => "[ℓ², ℓ±] against iħ(ε − ε3){ℓ±, ℓ3}, ladder products and ℓ² decomposition",
            IdentityId::LadderShift => "ℓ3 ℓ± = [ℓ3, ℓ±] + ℓ± ℓ3 = ℓ± (ℓ3 ± ħ(1 + iε))",
            IdentityId::LeftAlgebra => "left flavor: [ℓa,ℓb] − ħ ε_abc ℓc i, expanded ℓ_L, w → 0 limit",
            IdentityId::LeftH => "left flavor: definitional deformation against its closed form",
            IdentityId::LeftEll2 => "left flavor: [ℓ², ℓa] against the i-commutator plus h terms",
            IdentityId::RightAlgebra => "right flavor: [ℓa,ℓb] − ħ ε_abc (ℓc|i), w → 0 limit",
            IdentityId::RightH => "right flavor: definitional deformation against its closed form",
            IdentityId::RightEll2 => "right flavor: [ℓ², ℓa] = ℓb h_ba + h_ba ℓb + ℓc h_ca + h_ca ℓc",
        }
    }
}

impl Serialize for IdentityId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    ExactMatch,
    Mismatch,
    Skipped,
}

/// One `lhs = rhs` comparison. `must_pass` is false for comparisons that
/// are reported but never fail a run.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: OperatorExpr,
    pub rhs: OperatorExpr,
    pub residual: OperatorExpr,
    pub status: Status,
    pub must_pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: OperatorExpr, rhs: OperatorExpr, must_pass: bool) -> Self {
        let residual = &lhs - &rhs;
        let status = if residual.is_zero() {
            Status::ExactMatch
        } else {
            Status::Mismatch
        };
        Check {
            name: name.into(),
            lhs,
            rhs,
            residual,
            status,
            must_pass,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::ExactMatch
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity_id: IdentityId,
    pub description: &'static str,
    pub flavor: Flavor,
    pub status: Status,
    pub note: Option<String>,
    pub checks: Vec<Check>,
}

impl IdentityReport {
    fn from_checks(id: IdentityId, flavor: Flavor, checks: Vec<Check>) -> Self {
        let ok = checks.iter().filter(|c| c.must_pass).all(Check::passed);
        IdentityReport {
            identity_id: id,
            description: id.description(),
            flavor,
            status: if ok { Status::ExactMatch } else { Status::Mismatch },
            note: None,
            checks,
        }
    }

    fn skipped(id: IdentityId, flavor: Flavor, reason: String) -> Self {
        IdentityReport {
            identity_id: id,
            description: id.description(),
            flavor,
            status: Status::Skipped,
            note: Some(reason),
            checks: Vec::new(),
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Report-only checks that did not match.
    pub fn reported_mismatches(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.must_pass && !c.passed())
    }
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (2, 0)];

fn cyclic(a: usize) -> (usize, usize) {
    ((a + 1) % 3, (a + 2) % 3)
}

fn name2(tag: &str, a: usize, b: usize) -> String {
    format!("{tag}[{}{}]", a + 1, b + 1)
}

fn antisymmetry(l: &Triple, out: &mut Vec<Check>) {
    for (a, b) in PAIRS {
        out.push(Check::new(
            name2("antisymmetry", a, b),
            commutator(&l[a], &l[b]),
            -&commutator(&l[b], &l[a]),
            true,
        ));
    }
}

fn h_bilinear(l: &Triple, h: &Matrix, a: usize, i_factor: bool) -> OperatorExpr {
    let (b, c) = cyclic(a);
    let sum = [b, c]
        .iter()
        .map(|&x| &l[x].compose(&h[x][a]) + &h[x][a].compose(&l[x]))
        .sum::<OperatorExpr>();
    if i_factor {
        i_unit().compose(&sum)
    } else {
        sum
    }
}

fn deformed_general(spec: &DeformationSpec) -> Vec<Check> {
    let spec = spec.with_flavor(Flavor::Complex);
    let l = build_angular(&spec);
    let il: Triple = std::array::from_fn(|c| i_unit().compose(&l[c]));
    let hidx = h_index_form(&spec);
    let hcross = h_cross_form(&spec);
    let mut out = Vec::new();
    for (a, b) in PAIRS {
        let lhs = commutator(&l[a], &l[b]);
        let base = structure_term(a, b, &il);
        out.push(Check::new(
            name2("i*h convention, index form", a, b),
            lhs.clone(),
            &base + &i_unit().compose(&hidx[a][b]),
            true,
        ));
        out.push(Check::new(
            name2("i*h convention, cross form", a, b),
            lhs.clone(),
            &base + &i_unit().compose(&hcross[a][b]),
            true,
        ));
        out.push(Check::new(
            name2("bare h convention, index form", a, b),
            lhs,
            &base + &hidx[a][b],
            false,
        ));
    }
    antisymmetry(&l, &mut out);
    let l0 = build_standard_angular();
    let limit = spec.undeformed_limit();
    let lim = build_angular(&limit);
    let vanishes = limit.s().iter().all(OperatorExpr::is_zero);
    for a in (0..3).filter(|_| vanishes) {
        out.push(Check::new(
            format!("undeformed limit ℓ{} → l{}", a + 1, a + 1),
            lim[a].clone(),
            l0[a].clone(),
            true,
        ));
    }
    out
}

fn h_two_forms(spec: &DeformationSpec) -> Vec<Check> {
    let spec = spec.with_flavor(Flavor::Complex);
    let hidx = h_index_form(&spec);
    let hcross = h_cross_form(&spec);
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            out.push(Check::new(
                name2("index = cross", a, b),
                hidx[a][b].clone(),
                hcross[a][b].clone(),
                true,
            ));
        }
    }
    out
}

fn diagonal(spec: &DeformationSpec) -> Result<[SymScalar; 3], AngmomError> {
    spec.diagonal_coefficients()
        .ok_or_else(|| AngmomError::Incompatible("needs diagonal s = (c1 x, c2 y, c3 z)".into()))
}

fn diag_algebra(spec: &DeformationSpec) -> Result<Vec<Check>, AngmomError> {
    let spec = spec.with_flavor(Flavor::Complex);
    let eps = diagonal(&spec)?;
    let l = build_angular(&spec);
    let l0 = build_standard_angular();
    let ih = &i_unit().compose(&hbar());
    let mut out = Vec::new();
    for (a, b) in PAIRS {
        let c = third(a, b);
        let factor = &i_unit() - &sym(&eps[c]);
        let rhs = hbar().compose(&factor).compose(&l[c]).compose(&int(levi(a, b, c)));
        out.push(Check::new(name2("deformed", a, b), commutator(&l[a], &l[b]), rhs, true));
    }
    out.push(Check::new("ℓ·s = 0", ell_dot_s(&spec), OperatorExpr::zero(), true));
    for c in 0..3 {
        let rhs_def = ih.compose(&sym(&eps[c])).compose(&l[c]);
        let rhs_std = ih.compose(&sym(&eps[c])).compose(&l0[c]);
        out.push(Check::new(
            format!("(ℓ s{0})·p = iħ ε{0} ℓ{0}", c + 1),
            ell_s_dot_p(&spec, c, false),
            rhs_def,
            true,
        ));
        out.push(Check::new(
            format!("(l s{0})·p = iħ ε{0} l{0}", c + 1),
            ell_s_dot_p(&spec, c, true),
            rhs_std.clone(),
            true,
        ));
        out.push(Check::new(
            format!("(ℓ s{0})·p = iħ ε{0} l{0}", c + 1),
            ell_s_dot_p(&spec, c, false),
            rhs_std,
            false,
        ));
    }
    let l2 = sum_of_squares(&l0);
    for (a, b) in PAIRS {
        let c = third(a, b);
        out.push(Check::new(
            name2("undeformed", a, b),
            commutator(&l0[a], &l0[b]),
            ih.compose(&l0[c]).compose(&int(levi(a, b, c))),
            true,
        ));
    }
    for a in 0..3 {
        out.push(Check::new(
            format!("undeformed [l², l{}] = 0", a + 1),
            commutator(&l2, &l0[a]),
            OperatorExpr::zero(),
            true,
        ));
    }
    Ok(out)
}

fn ell2_non_casimir(spec: &DeformationSpec) -> Result<Vec<Check>, AngmomError> {
    let spec = spec.with_flavor(Flavor::Complex);
    let eps = diagonal(&spec)?;
    let l = build_angular(&spec);
    let l2 = sum_of_squares(&l);
    Ok((0..3)
        .map(|a| {
            let (b, c) = cyclic(a);
            let coeff = &eps[c] - &eps[b];
            Check::new(
                format!("[ℓ², ℓ{}]", a + 1),
                commutator(&l2, &l[a]),
                hbar().compose(&sym(&coeff)).compose(&anti(&l, b, c)),
                true,
            )
        })
        .collect())
}

fn ell2_general(spec: &DeformationSpec) -> Vec<Check> {
    let spec = spec.with_flavor(Flavor::Complex);
    let l = build_angular(&spec);
    let l2 = sum_of_squares(&l);
    let h = h_index_form(&spec);
    (0..3)
        .map(|a| {
            Check::new(
                format!("[ℓ², ℓ{}]", a + 1),
                commutator(&l2, &l[a]),
                h_bilinear(&l, &h, a, true),
                true,
            )
        })
        .collect()
}

/// Ladder variants: the spec with `ε₁ = ε₂` identified, and the same with
/// `s₃ = 0` when `s₃` is not already zero.
fn ladder_variants(spec: &DeformationSpec) -> Result<Vec<(String, Ladder)>, AngmomError> {
    let base = spec.with_flavor(Flavor::Complex).planar_identified();
    let full = build_ladder(&base)?;
    let mut out = Vec::new();
    if !full.eps3.is_zero() {
        let flat = DeformationSpec::new(
            Flavor::Complex,
            [base.s()[0].clone(), base.s()[1].clone(), OperatorExpr::zero()],
            base.w().clone(),
        )?;
        out.push(("ε3 = 0".to_string(), build_ladder(&flat)?));
        out.push((format!("ε3 = {}", full.eps3), full));
    } else {
        out.push(("ε3 = 0".to_string(), full));
    }
    Ok(out)
}

fn pm(sign: i8) -> &'static str {
    if sign > 0 {
        "+"
    } else {
        "-"
    }
}

fn signed(e: &OperatorExpr, sign: i8) -> OperatorExpr {
    if sign > 0 {
        e.clone()
    } else {
        -e
    }
}

fn ladder_l3(spec: &DeformationSpec) -> Result<Vec<Check>, AngmomError> {
    let mut out = Vec::new();
    let l0 = build_standard_angular();
    for (tag, lad) in ladder_variants(spec)? {
        let l3 = &lad.ell[2];
        for sign in [1i8, -1] {
            let lp = lad.get(sign);
            out.push(Check::new(
                format!("[ℓ3, ℓ{}] ({tag})", pm(sign)),
                commutator(l3, lp),
                signed(&lad.step().compose(lp), sign),
                true,
            ));
        }
        out.push(Check::new(
            format!("[ℓ², ℓ3] = 0 ({tag})"),
            commutator(&sum_of_squares(&lad.ell), l3),
            OperatorExpr::zero(),
            true,
        ));
        if lad.eps3.is_zero() {
            let il2 = i_unit().compose(&l0[1]);
            let ie = i_unit().compose(&sym(&lad.eps));
            let lplus = &l0[0] + &il2;
            let lminus = &l0[0] - &il2;
            out.push(Check::new(
                format!("ℓ+ = l+ − iε λ+ ({tag})"),
                lad.plus.clone(),
                &lplus - &ie.compose(&build_lambda(1)),
                true,
            ));
            out.push(Check::new(
                format!("ℓ- = l- + iε λ- ({tag})"),
                lad.minus.clone(),
                &lminus + &ie.compose(&build_lambda(-1)),
                true,
            ));
        }
    }
    Ok(out)
}

fn ladder_ell2(spec: &DeformationSpec) -> Result<Vec<Check>, AngmomError> {
    let mut out = Vec::new();
    let l0 = build_standard_angular();
    for (tag, lad) in ladder_variants(spec)? {
        let l3 = &lad.ell[2];
        let l2 = sum_of_squares(&lad.ell);
        let d = &sym(&lad.eps) - &sym(&lad.eps3);
        let ihd = i_unit().compose(&hbar()).compose(&d);
        for sign in [1i8, -1] {
            let lp = lad.get(sign);
            let lhs = commutator(&l2, lp);
            let ac = crate::opcalc::anticommutator(lp, l3);
            out.push(Check::new(
                format!("[ℓ², ℓ{0}] = iħ(ε − ε3){{ℓ{0}, ℓ3}} ({tag})", pm(sign)),
                lhs.clone(),
                ihd.compose(&ac),
                sign > 0,
            ));
            if sign < 0 {
                out.push(Check::new(
                    format!("[ℓ², ℓ-] = −iħ(ε − ε3){{ℓ-, ℓ3}} ({tag})"),
                    lhs,
                    -&ihd.compose(&ac),
                    true,
                ));
            }
        }
        let l33 = l3.compose(l3);
        let s3 = &hbar() + &hbar().compose(&i_unit()).compose(&sym(&lad.eps3));
        for sign in [1i8, -1] {
            let prod = lad.get(sign).compose(lad.get(-sign));
            out.push(Check::new(
                format!("ℓ{}ℓ{} = ℓ² − ℓ3² {} ħ(1 + iε3)ℓ3 ({tag})", pm(sign), pm(-sign), pm(sign)),
                prod,
                &(&l2 - &l33) + &signed(&s3.compose(l3), sign),
                true,
            ));
        }
        let decomposition = &(&lad.plus.compose(&lad.minus) + &l33) - &hbar().compose(l3);
        out.push(Check::new(
            format!("ℓ² = ℓ+ℓ- + ℓ3² − ħℓ3 ({tag})"),
            l2.clone(),
            decomposition,
            lad.eps3.is_zero(),
        ));
        if lad.eps3.is_zero() {
            let e = sym(&lad.eps);
            let ie = i_unit().compose(&e);
            let il2 = i_unit().compose(&l0[1]);
            let (lp, lm) = (&l0[0] + &il2, &l0[0] - &il2);
            let (kp, km) = (build_lambda(1), build_lambda(-1));
            let expanded = [
                lp.compose(&lm),
                ie.compose(&(&lp.compose(&km) - &kp.compose(&lm))),
                e.compose(&e).compose(&kp).compose(&km),
                l33.clone(),
                -&hbar().compose(l3),
            ]
            .into_iter()
            .sum::<OperatorExpr>();
            out.push(Check::new(
                format!("ℓ² in l±, λ± ({tag})"),
                l2,
                expanded,
                true,
            ));
        }
    }
    Ok(out)
}

fn ladder_shift(spec: &DeformationSpec) -> Result<Vec<Check>, AngmomError> {
    let mut out = Vec::new();
    for (tag, lad) in ladder_variants(spec)? {
        let l3 = &lad.ell[2];
        for sign in [1i8, -1] {
            let lp = lad.get(sign);
            let lhs = l3.compose(lp);
            out.push(Check::new(
                format!("ℓ3ℓ{0} = [ℓ3, ℓ{0}] + ℓ{0}ℓ3 ({tag})", pm(sign)),
                lhs.clone(),
                &commutator(l3, lp) + &lp.compose(l3),
                true,
            ));
            out.push(Check::new(
                format!("ℓ3ℓ{0} = ℓ{0}(ℓ3 {0} ħ(1 + iε)) ({tag})", pm(sign)),
                lhs,
                lp.compose(&(l3 + &signed(&lad.step(), sign))),
                true,
            ));
        }
    }
    Ok(out)
}

fn quaternionic_algebra(spec: &DeformationSpec, flavor: Flavor) -> Vec<Check> {
    let qspec = spec.with_flavor(flavor);
    let l = build_angular(&qspec);
    let raw = h_raw(&qspec);
    let s: Triple = std::array::from_fn(|c| structure_operator(flavor, &l[c]));
    let mut out = Vec::new();
    for (a, b) in PAIRS {
        out.push(Check::new(
            name2("[ℓa,ℓb] = ħ ε_abc S(ℓc) + h", a, b),
            commutator(&l[a], &l[b]),
            &structure_term(a, b, &s) + &raw[a][b],
            true,
        ));
    }
    antisymmetry(&l, &mut out);
    if flavor == Flavor::QuatLeft {
        let ex = left_ell_expanded(&qspec);
        for a in 0..3 {
            out.push(Check::new(
                format!("ℓL{0} = ℓ{0} + ħ (k w̄ × ∇){0}", a + 1),
                l[a].clone(),
                ex[a].clone(),
                true,
            ));
        }
    }
    // w → 0: the flavor acts on complex functions as the complex operators do
    let cspec = spec.without_w().with_flavor(Flavor::Complex);
    let lc = build_angular(&cspec);
    let lw = build_angular(&spec.without_w().with_flavor(flavor));
    let reduce = |e: &OperatorExpr| e.restrict_to_complex().unwrap_or_else(|| e.clone());
    for a in 0..3 {
        out.push(Check::new(
            format!("w → 0: ℓ{} on complex functions", a + 1),
            reduce(&lw[a]),
            lc[a].clone(),
            true,
        ));
    }
    for (a, b) in PAIRS {
        out.push(Check::new(
            name2("w → 0: commutator", a, b),
            reduce(&commutator(&lw[a], &lw[b])),
            commutator(&lc[a], &lc[b]),
            true,
        ));
    }
    out
}

fn matrix_checks(tag: &str, lhs: &Matrix, rhs: &Matrix, must_pass: bool) -> Vec<Check> {
    PAIRS
        .iter()
        .map(|&(a, b)| Check::new(name2(tag, a, b), lhs[a][b].clone(), rhs[a][b].clone(), must_pass))
        .collect()
}

fn left_h(spec: &DeformationSpec) -> Vec<Check> {
    let qspec = spec.with_flavor(Flavor::QuatLeft);
    let raw = h_raw(&qspec);
    let mut out = matrix_checks(
        "closed form, every i on the left",
        &raw,
        &h_left_closed(&qspec, LeftReading::LeftFactors),
        false,
    );
    out.extend(matrix_checks(
        "closed form, trailing i on the right",
        &raw,
        &h_left_closed(&qspec, LeftReading::TrailingRightUnit),
        false,
    ));
    out
}

fn right_h(spec: &DeformationSpec) -> Vec<Check> {
    let qspec = spec.with_flavor(Flavor::QuatRight);
    let raw = h_raw(&qspec);
    let mut out = matrix_checks("closed form as printed", &raw, &h_right_closed(&qspec, 1), false);
    out.extend(matrix_checks(
        "closed form, second-order sign reversed",
        &raw,
        &h_right_closed(&qspec, -1),
        false,
    ));
    out
}

fn left_ell2(spec: &DeformationSpec) -> Vec<Check> {
    let qspec = spec.with_flavor(Flavor::QuatLeft);
    let l = build_angular(&qspec);
    let l2 = sum_of_squares(&l);
    let raw = h_raw(&qspec);
    let i = i_unit();
    // [i, X] = iX − Xi
    let ic = |x: &OperatorExpr| commutator(&i, x);
    let mut out = Vec::new();
    for a in 0..3 {
        let (b, c) = cyclic(a);
        let (bc, cb) = (l[b].compose(&ic(&l[c])), l[c].compose(&ic(&l[b])));
        let hpart = h_bilinear(&l, &raw, a, false);
        let lhs = commutator(&l2, &l[a]);
        out.push(Check::new(
            format!("[ℓ², ℓ{}] as printed", a + 1),
            lhs.clone(),
            &hbar().compose(&(&bc + &cb)) + &hpart,
            false,
        ));
        out.push(Check::new(
            format!("[ℓ², ℓ{}] with the second bracket negated", a + 1),
            lhs,
            &hbar().compose(&(&bc - &cb)) + &hpart,
            false,
        ));
    }
    out
}

fn right_ell2(spec: &DeformationSpec) -> Vec<Check> {
    let qspec = spec.with_flavor(Flavor::QuatRight);
    let l = build_angular(&qspec);
    let l2 = sum_of_squares(&l);
    let raw = h_raw(&qspec);
    (0..3)
        .map(|a| {
            Check::new(
                format!("[ℓ², ℓ{}]", a + 1),
                commutator(&l2, &l[a]),
                h_bilinear(&l, &raw, a, false),
                false,
            )
        })
        .collect()
}

fn identity_flavor(id: IdentityId) -> Flavor {
    match id {
        IdentityId::LeftAlgebra | IdentityId::LeftH | IdentityId::LeftEll2 => Flavor::QuatLeft,
        IdentityId::RightAlgebra | IdentityId::RightH | IdentityId::RightEll2 => Flavor::QuatRight,
        _ => Flavor::Complex,
    }
}

/// Runs one identity. Complex identities use the spec's `s`; quaternionic
/// ones use its `s` and `w`, whatever the spec's own flavor.
pub fn run_identity(id: IdentityId, spec: &DeformationSpec) -> Result<IdentityReport, AngmomError> {
    let checks = match id {
        IdentityId::DeformedGeneral => deformed_general(spec),
        IdentityId::HTwoForms => h_two_forms(spec),
        IdentityId::DiagAlgebra => diag_algebra(spec)?,
        IdentityId::Ell2NonCasimir => ell2_non_casimir(spec)?,
        IdentityId::Ell2General => ell2_general(spec),
        IdentityId::LadderL3 => ladder_l3(spec)?,
        IdentityId::LadderEll2 => ladder_ell2(spec)?,
        IdentityId::LadderShift => ladder_shift(spec)?,
        IdentityId::LeftAlgebra => quaternionic_algebra(spec, Flavor::QuatLeft),
        IdentityId::LeftH => left_h(spec),
        IdentityId::LeftEll2 => left_ell2(spec),
        IdentityId::RightAlgebra => quaternionic_algebra(spec, Flavor::QuatRight),
        IdentityId::RightH => right_h(spec),
        IdentityId::RightEll2 => right_ell2(spec),
    };
    Ok(IdentityReport::from_checks(id, identity_flavor(id), checks))
}

/// Runs every registered identity concurrently. Identities whose
/// preconditions the spec does not meet are reported as skipped.
pub fn run_suite(spec: &DeformationSpec) -> Vec<IdentityReport> {
    IDENTITY_IDS
        .par_iter()
        .map(|&id| match run_identity(id, spec) {
            Ok(r) => r,
            Err(e) => IdentityReport::skipped(id, identity_flavor(id), e.to_string()),
        })
        .collect()
}
