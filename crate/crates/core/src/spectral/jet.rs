use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// Truncated Taylor expansion in three variables about a point.
///
/// Coefficients live on the dense cube `(N+1)³`; entries with total degree
/// above `N` stay zero. Multiplication drops terms beyond `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    order: usize,
    c: Vec<Complex64>,
}

impl Jet {
    fn side(&self) -> usize {
        self.order + 1
    }

    fn idx(order: usize, e: [usize; 3]) -> usize {
        let s = order + 1;
        (e[0] * s + e[1]) * s + e[2]
    }

    pub fn constant(order: usize, v: Complex64) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); (order + 1).pow(3)];
        c[0] = v;
        Self { order, c }
    }

    /// `value + δ_axis`.
    pub fn variable(order: usize, axis: usize, value: f64) -> Self {
        let mut j = Self::constant(order, value.into());
        if order > 0 {
            let mut e = [0; 3];
            e[axis] = 1;
            j.c[Self::idx(order, e)] = 1.0.into();
        }
        j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> Complex64 {
        self.c[0]
    }

    /// Taylor coefficient of `δ^e`.
    pub fn coefficient(&self, e: [usize; 3]) -> Complex64 {
        if e.iter().sum::<usize>() > self.order {
            return 0.0.into();
        }
        self.c[Self::idx(self.order, e)]
    }

    /// `∂^e` at the expansion point.
    pub fn derivative(&self, e: [usize; 3]) -> Complex64 {
        let fact: f64 = e.iter().map(|&n| (1..=n).product::<usize>() as f64).product();
        self.coefficient(e) * fact
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { order: self.order, c: self.c.iter().map(|v| v * s).collect() }
    }

    /// The jet minus its constant term.
    fn nilpotent(&self) -> Self {
        let mut j = self.clone();
        j.c[0] = 0.0.into();
        j
    }

    /// `Σ_n outer[n] t^n` with `t` the non-constant part of `self`.
    pub fn compose(&self, outer: &[Complex64]) -> Self {
        let t = self.nilpotent();
        let mut acc = Self::constant(self.order, 0.0.into());
        for a in outer.iter().take(self.order + 1).rev() {
            acc = &acc * &t;
            acc.c[0] += a;
        }
        acc
    }

    /// `self^a` for a constant term with positive real part on the
    /// principal branch.
    pub fn powf(&self, a: f64) -> Self {
        let v = self.value();
        let mut outer = Vec::with_capacity(self.order + 1);
        let mut coef = v.powf(a);
        for n in 0..=self.order {
            outer.push(coef);
            coef = coef * (a - n as f64) / ((n as f64 + 1.0) * v);
        }
        self.compose(&outer)
    }

    /// `ln(self) − ln(self(0))`: the logarithm without its constant term.
    pub fn log_increment(&self) -> Self {
        let v = self.value();
        let mut outer = vec![Complex64::new(0.0, 0.0)];
        let mut p = Complex64::new(1.0, 0.0);
        for n in 1..=self.order {
            p /= v;
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            outer.push(p * sign / n as f64);
        }
        self.compose(&outer)
    }

    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        let mut outer = Vec::with_capacity(self.order + 1);
        let mut f = 1.0;
        for n in 0..=self.order {
            if n > 0 {
                f *= n as f64;
            }
            outer.push(e / f);
        }
        self.compose(&outer)
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        Jet { order: self.order, c: self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        Jet { order: self.order, c: self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale((-1.0).into())
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.order;
        let s = self.side();
        let mut out = Jet::constant(n, 0.0.into());
        for a0 in 0..s {
            for a1 in 0..s - a0 {
                for a2 in 0..s - a0 - a1 {
                    let x = self.c[Jet::idx(n, [a0, a1, a2])];
                    if x == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let rest = n - a0 - a1 - a2;
                    for b0 in 0..=rest {
                        for b1 in 0..=rest - b0 {
                            for b2 in 0..=rest - b0 - b1 {
                                let y = rhs.c[Jet::idx(n, [b0, b1, b2])];
                                out.c[Jet::idx(n, [a0 + b0, a1 + b1, a2 + b2])] += x * y;
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
