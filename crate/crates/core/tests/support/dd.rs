//! Double-double complex arithmetic for reference values.
//!
//! Only addition, multiplication and division by an `f64` of `TwoFloat` are
//! used directly; `TwoFloat / TwoFloat` loses the low word, so quotients go
//! through a Newton-refined reciprocal instead.

#![allow(dead_code)]

use ratapprox::Complex;
use twofloat::TwoFloat;

#[derive(Debug, Clone, Copy)]
pub struct Cdd {
    pub re: TwoFloat,
    pub im: TwoFloat,
}

fn recip(b: TwoFloat) -> TwoFloat {
    let y0 = TwoFloat::from(1.0 / b.hi());
    let e = TwoFloat::from(1.0) - b * y0;
    y0 + y0 * e
}

impl Cdd {
    pub fn new(re: TwoFloat, im: TwoFloat) -> Self {
        Self { re, im }
    }

    pub fn from_c64(z: Complex<f64>) -> Self {
        Self::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
    }

    pub fn zero() -> Self {
        Self::from_c64(Complex::new(0.0, 0.0))
    }

    pub fn one() -> Self {
        Self::from_c64(Complex::new(1.0, 0.0))
    }

    pub fn to_c64(self) -> Complex<f64> {
        Complex::new(self.re.hi() + self.re.lo(), self.im.hi() + self.im.lo())
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }

    pub fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }

    pub fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }

    pub fn div(self, o: Self) -> Self {
        let inv = recip(o.re * o.re + o.im * o.im);
        let num = self.mul(Self::new(o.re, -o.im));
        Self::new(num.re * inv, num.im * inv)
    }

    pub fn div_f64(self, k: f64) -> Self {
        Self::new(self.re / k, self.im / k)
    }

    pub fn norm(self) -> f64 {
        self.to_c64().norm()
    }
}

/// `exp(z)` by its Taylor series; meant for `|z| <= 2`.
pub fn exp(z: Cdd) -> Cdd {
    let mut term = Cdd::one();
    let mut sum = Cdd::one();
    for k in 1..60 {
        term = term.mul(z).div_f64(k as f64);
        sum = sum.add(term);
    }
    sum
}

/// `tan(w)` from the sine and cosine series; meant for `|w| <= 2`.
pub fn tan(w: Cdd) -> Cdd {
    let w2 = w.mul(w);
    let (mut s, mut c) = (w, Cdd::one());
    let (mut ts, mut tc) = (w, Cdd::one());
    for k in 1..40 {
        let k = k as f64;
        ts = ts.mul(w2).div_f64(-(2.0 * k) * (2.0 * k + 1.0));
        tc = tc.mul(w2).div_f64(-(2.0 * k - 1.0) * (2.0 * k));
        s = s.add(ts);
        c = c.add(tc);
    }
    s.div(c)
}

/// Barycentric quotient with `f64` data evaluated in double-double.
pub fn barycentric(
    supports: &[Complex<f64>],
    values: &[Complex<f64>],
    weights: &[Complex<f64>],
    z: Complex<f64>,
) -> Cdd {
    let z = Cdd::from_c64(z);
    let (mut n, mut d) = (Cdd::zero(), Cdd::zero());
    for ((&s, &f), &w) in supports.iter().zip(values).zip(weights) {
        let c = Cdd::from_c64(w).div(z.sub(Cdd::from_c64(s)));
        n = n.add(c.mul(Cdd::from_c64(f)));
        d = d.add(c);
    }
    n.div(d)
}

/// `radius * exp(2 pi i j / n)` for `j = 0..n`, with the angle held in double-double.
pub fn circle_nodes(radius: f64, n: usize) -> Vec<Cdd> {
    let two_pi = twofloat::consts::PI * TwoFloat::from(2.0);
    (0..n)
        .map(|j| {
            let theta = two_pi * TwoFloat::from(j as f64) / (n as f64);
            let unit = exp(Cdd::new(TwoFloat::from(0.0), theta));
            Cdd::new(unit.re * TwoFloat::from(radius), unit.im * TwoFloat::from(radius))
        })
        .collect()
}
