use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::SymScalar;

/// Minimal commutative ring interface shared by exact and floating scalars.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for SymScalar {
    fn zero() -> Self {
        SymScalar::zero()
    }
    fn one() -> Self {
        SymScalar::one()
    }
    fn is_zero(&self) -> bool {
        SymScalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// The quaternion basis units, with Hamilton's convention `ij = k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unit {
    One,
    I,
    J,
    K,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::One, Unit::I, Unit::J, Unit::K];

    /// `self * rhs = sign * unit`.
    pub fn mul(self, rhs: Unit) -> (i8, Unit) {
        use Unit::*;
        match (self, rhs) {
            (One, u) | (u, One) => (1, u),
            (I, I) | (J, J) | (K, K) => (-1, One),
            (I, J) => (1, K),
            (J, I) => (-1, K),
            (J, K) => (1, I),
            (K, J) => (-1, I),
            (K, I) => (1, J),
            (I, K) => (-1, J),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Unit::One => "1",
            Unit::I => "i",
            Unit::J => "j",
            Unit::K => "k",
        }
    }
}

/// `w + x i + y j + z k` over a commutative ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

pub type QuatScalar = Quaternion<SymScalar>;
pub type QuatF64 = Quaternion<f64>;

impl<T: Ring> Quaternion<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::real(T::one())
    }

    pub fn real(w: T) -> Self {
        Self::new(w, T::zero(), T::zero(), T::zero())
    }

    pub fn unit(u: Unit) -> Self {
        Self::unit_scaled(u, T::one())
    }

    /// `c * u` for a basis unit `u`.
    pub fn unit_scaled(u: Unit, c: T) -> Self {
        let mut q = Self::zero();
        *q.component_mut(u) = c;
        q
    }

    /// `a + b i`.
    pub fn complex(re: T, im: T) -> Self {
        Self::new(re, im, T::zero(), T::zero())
    }

    pub fn component(&self, u: Unit) -> &T {
        match u {
            Unit::One => &self.w,
            Unit::I => &self.x,
            Unit::J => &self.y,
            Unit::K => &self.z,
        }
    }

    pub fn component_mut(&mut self, u: Unit) -> &mut T {
        match u {
            Unit::One => &mut self.w,
            Unit::I => &mut self.x,
            Unit::J => &mut self.y,
            Unit::K => &mut self.z,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// True when only the real and `i` parts are nonzero.
    pub fn is_complex(&self) -> bool {
        self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.is_complex()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w.clone(), self.x.neg(), self.y.neg(), self.z.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.w.mul(c), self.x.mul(c), self.y.mul(c), self.z.mul(c))
    }

    /// `self * u` for a basis unit on the right.
    pub fn mul_unit_right(&self, u: Unit) -> Self {
        let mut out = Self::zero();
        for a in Unit::ALL {
            let (s, e) = a.mul(u);
            let c = self.component(a);
            let v = if s < 0 { c.neg() } else { c.clone() };
            out.components_add(e, &v);
        }
        out
    }

    fn components_add(&mut self, u: Unit, v: &T) {
        let c = self.component_mut(u);
        *c = c.add(v);
    }

    /// Hamilton product.
    pub fn qmul(&self, rhs: &Self) -> Self {
        let (a1, b1, c1, d1) = (&self.w, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&rhs.w, &rhs.x, &rhs.y, &rhs.z);
        Self::new(
            a1.mul(a2).sub(&b1.mul(b2)).sub(&c1.mul(c2)).sub(&d1.mul(d2)),
            a1.mul(b2).add(&b1.mul(a2)).add(&c1.mul(d2)).sub(&d1.mul(c2)),
            a1.mul(c2).sub(&b1.mul(d2)).add(&c1.mul(a2)).add(&d1.mul(b2)),
            a1.mul(d2).add(&b1.mul(c2)).sub(&c1.mul(b2)).add(&d1.mul(a2)),
        )
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Quaternion<U> {
        Quaternion {
            w: f(&self.w),
            x: f(&self.x),
            y: f(&self.y),
            z: f(&self.z),
        }
    }

    pub fn try_map<U, E, F: Fn(&T) -> Result<U, E>>(&self, f: F) -> Result<Quaternion<U>, E> {
        Ok(Quaternion {
            w: f(&self.w)?,
            x: f(&self.x)?,
            y: f(&self.y)?,
            z: f(&self.z)?,
        })
    }

    pub fn components(&self) -> [(Unit, &T); 4] {
        [
            (Unit::One, &self.w),
            (Unit::I, &self.x),
            (Unit::J, &self.y),
            (Unit::K, &self.z),
        ]
    }
}

/// Hamilton product; `ij = k`, `ji = -k`.
pub fn qmul<T: Ring>(a: &Quaternion<T>, b: &Quaternion<T>) -> Quaternion<T> {
    a.qmul(b)
}

/// Quaternion conjugate.
pub fn qconj<T: Ring>(a: &Quaternion<T>) -> Quaternion<T> {
    a.conj()
}

impl<T: Ring> Add for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn add(self, rhs: Self) -> Quaternion<T> {
        Quaternion::new(
            self.w.add(&rhs.w),
            self.x.add(&rhs.x),
            self.y.add(&rhs.y),
            self.z.add(&rhs.z),
        )
    }
}

impl<T: Ring> Sub for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn sub(self, rhs: Self) -> Quaternion<T> {
        Quaternion::new(
            self.w.sub(&rhs.w),
            self.x.sub(&rhs.x),
            self.y.sub(&rhs.y),
            self.z.sub(&rhs.z),
        )
    }
}

impl<T: Ring> Mul for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn mul(self, rhs: Self) -> Quaternion<T> {
        self.qmul(rhs)
    }
}

impl<T: Ring> Neg for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn neg(self) -> Quaternion<T> {
        Quaternion::new(self.w.neg(), self.x.neg(), self.y.neg(), self.z.neg())
    }
}

impl<T: Ring> Add for Quaternion<T> {
    type Output = Quaternion<T>;
    fn add(self, rhs: Self) -> Quaternion<T> {
        &self + &rhs
    }
}

impl<T: Ring> Sub for Quaternion<T> {
    type Output = Quaternion<T>;
    fn sub(self, rhs: Self) -> Quaternion<T> {
        &self - &rhs
    }
}

impl<T: Ring> Mul for Quaternion<T> {
    type Output = Quaternion<T>;
    fn mul(self, rhs: Self) -> Quaternion<T> {
        self.qmul(&rhs)
    }
}

impl<T: Ring> Neg for Quaternion<T> {
    type Output = Quaternion<T>;
    fn neg(self) -> Quaternion<T> {
        -&self
    }
}

impl QuatF64 {
    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Largest absolute component of the non-real part.
    pub fn vector_max_abs(&self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn from_complex(c: num_complex::Complex64) -> Self {
        Quaternion::complex(c.re, c.im)
    }
}

impl fmt::Display for QuatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::opcalc::pretty::format_quat(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: Unit) -> QuatScalar {
        QuatScalar::unit(x)
    }

    #[test]
    fn hamilton_table() {
        assert_eq!(&u(Unit::I) * &u(Unit::J), u(Unit::K));
        assert_eq!(&u(Unit::J) * &u(Unit::I), -u(Unit::K));
        let anti = &(&u(Unit::I) * &u(Unit::J)) + &(&u(Unit::J) * &u(Unit::I));
        assert!(anti.is_zero());
        let minus_one = -QuatScalar::one();
        for x in [Unit::I, Unit::J, Unit::K] {
            assert_eq!(&u(x) * &u(x), minus_one);
        }
        let ijk = &(&u(Unit::I) * &u(Unit::J)) * &u(Unit::K);
        assert_eq!(ijk, minus_one);
    }

    #[test]
    fn expansion_of_one_plus_i_times_one_plus_j() {
        let a = &QuatScalar::one() + &u(Unit::I);
        let b = &QuatScalar::one() + &u(Unit::J);
        let want = QuatScalar::new(1.into(), 1.into(), 1.into(), 1.into());
        assert_eq!(&a * &b, want);
    }

    #[test]
    fn conjugation() {
        assert_eq!(qconj(&u(Unit::I)), -u(Unit::I));
        let q = QuatScalar::new(1.into(), 1.into(), 1.into(), 1.into());
        assert_eq!(&qconj(&q) * &q, QuatScalar::real(4.into()));
        let lhs = qconj(&(&u(Unit::I) * &u(Unit::J)));
        let rhs = &qconj(&u(Unit::J)) * &qconj(&u(Unit::I));
        assert_eq!(lhs, -u(Unit::K));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_table_matches_quaternion_product() {
        for a in Unit::ALL {
            for b in Unit::ALL {
                let (s, e) = a.mul(b);
                let want = QuatScalar::unit_scaled(e, SymScalar::from_int(s as i64));
                assert_eq!(&u(a) * &u(b), want, "{a:?}*{b:?}");
                assert_eq!(u(a).mul_unit_right(b), want);
            }
        }
    }
}
