//! Complex arithmetic over MPFR floats.
//!
//! `s = sigma + i tau` carries the precision of its components; binary
//! operations produce results at the larger operand precision. NaN and
//! infinity are error states, never values — callers check `is_finite`.

use super::Real;
use rug::ops::CompleteRound;
use rug::Float;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Cplx {
    pub re: Real,
    pub im: Real,
}

impl Cplx {
    pub fn new(re: Real, im: Real) -> Self {
        Cplx { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.prec();
        Cplx {
            re,
            im: Float::new(p),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Cplx {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Cplx {
            re: Float::with_val(prec, 1),
            im: Float::new(prec),
        }
    }

    /// The imaginary unit.
    pub fn i(prec: u32) -> Self {
        Cplx {
            re: Float::new(prec),
            im: Float::with_val(prec, 1),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Cplx {
        Cplx {
            re: self.re.clone(),
            im: (-&self.im).complete(self.im.prec()),
        }
    }

    pub fn abs(&self) -> Real {
        let p = self.prec();
        let h = self.re.clone().hypot(&self.im);
        if h.prec() == p {
            h
        } else {
            Float::with_val(p, h)
        }
    }

    /// |z|^2, cheaper than `abs` when only comparisons are needed.
    pub fn norm_sqr(&self) -> Real {
        let p = self.prec();
        let mut s = self.re.clone().square();
        s += Float::with_val(p, self.im.clone().square());
        s
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Real {
        self.im.clone().atan2(&self.re)
    }

    /// Principal natural logarithm.
    pub fn ln(&self) -> Cplx {
        let p = self.prec();
        let r = self.abs();
        Cplx {
            re: r.ln(),
            im: Float::with_val(p, self.arg()),
        }
    }

    pub fn exp(&self) -> Cplx {
        let p = self.prec();
        let m = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Cplx {
            re: (&m * &c).complete(p),
            im: (&m * &s).complete(p),
        }
    }

    /// z^w = exp(w ln z), principal branch.
    pub fn pow(&self, w: &Cplx) -> Cplx {
        (&self.ln() * w).exp()
    }

    pub fn sqrt(&self) -> Cplx {
        let p = self.prec();
        let half = Float::with_val(p, 0.5);
        let lg = self.ln();
        Cplx {
            re: (&lg.re * &half).complete(p),
            im: (&lg.im * &half).complete(p),
        }
        .exp()
    }

    pub fn scale(&self, c: &Real) -> Cplx {
        let p = self.prec().max(c.prec());
        Cplx {
            re: (&self.re * c).complete(p),
            im: (&self.im * c).complete(p),
        }
    }

    /// Multiply by i.
    pub fn mul_i(&self) -> Cplx {
        Cplx {
            re: (-&self.im).complete(self.im.prec()),
            im: self.re.clone(),
        }
    }

    pub fn recip(&self) -> Cplx {
        let p = self.prec();
        let d = self.norm_sqr();
        Cplx {
            re: (&self.re / &d).complete(p),
            im: -((&self.im / &d).complete(p)),
        }
    }

    /// Reinterpret at a given precision (rounding if lower).
    pub fn with_prec(&self, prec: u32) -> Cplx {
        Cplx {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }
}

impl fmt::Display for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{:e} - {:e}i", self.re, (-&self.im).complete(self.im.prec()))
        } else {
            write!(f, "{:e} + {:e}i", self.re, self.im)
        }
    }
}

impl Add for &Cplx {
    type Output = Cplx;
    fn add(self, rhs: &Cplx) -> Cplx {
        let p = self.prec().max(rhs.prec());
        Cplx {
            re: (&self.re + &rhs.re).complete(p),
            im: (&self.im + &rhs.im).complete(p),
        }
    }
}

impl Sub for &Cplx {
    type Output = Cplx;
    fn sub(self, rhs: &Cplx) -> Cplx {
        let p = self.prec().max(rhs.prec());
        Cplx {
            re: (&self.re - &rhs.re).complete(p),
            im: (&self.im - &rhs.im).complete(p),
        }
    }
}

impl Mul for &Cplx {
    type Output = Cplx;
    fn mul(self, rhs: &Cplx) -> Cplx {
        let p = self.prec().max(rhs.prec());
        let re = (&self.re * &rhs.re).complete(p) - (&self.im * &rhs.im).complete(p);
        let im = (&self.re * &rhs.im).complete(p) + (&self.im * &rhs.re).complete(p);
        Cplx { re, im }
    }
}

impl Div for &Cplx {
    type Output = Cplx;
    fn div(self, rhs: &Cplx) -> Cplx {
        let p = self.prec().max(rhs.prec());
        let d = rhs.norm_sqr();
        let re = ((&self.re * &rhs.re).complete(p) + (&self.im * &rhs.im).complete(p)) / &d;
        let im = ((&self.im * &rhs.re).complete(p) - (&self.re * &rhs.im).complete(p)) / &d;
        Cplx { re, im }
    }
}

impl Neg for &Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        let p = self.prec();
        Cplx {
            re: (-&self.re).complete(p),
            im: (-&self.im).complete(p),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Cplx {
            type Output = Cplx;
            fn $method(self, rhs: Cplx) -> Cplx {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cplx> for Cplx {
            type Output = Cplx;
            fn $method(self, rhs: &Cplx) -> Cplx {
                (&self).$method(rhs)
            }
        }
        impl $trait<Cplx> for &Cplx {
            type Output = Cplx;
            fn $method(self, rhs: Cplx) -> Cplx {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        -&self
    }
}

/// cos(z) for complex z, stable for moderate |Im z|.
pub fn cos(z: &Cplx) -> Cplx {
    let p = z.prec();
    let (sx, cx) = z.re.clone().sin_cos(Float::new(p));
    let (shy, chy) = z.im.clone().sinh_cosh(Float::new(p));
    Cplx {
        re: (&cx * &chy).complete(p),
        im: -((&sx * &shy).complete(p)),
    }
}

/// sin(z) for complex z, stable for moderate |Im z|.
pub fn sin(z: &Cplx) -> Cplx {
    let p = z.prec();
    let (sx, cx) = z.re.clone().sin_cos(Float::new(p));
    let (shy, chy) = z.im.clone().sinh_cosh(Float::new(p));
    Cplx {
        re: (&sx * &chy).complete(p),
        im: (&cx * &shy).complete(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(Float::with_val(128, re), Float::with_val(128, im))
    }

    #[test]
    fn field_ops() {
        let a = c(3.0, -2.0);
        let b = c(-1.5, 0.25);
        let prod = &a * &b;
        let back = &prod / &b;
        assert!((&back - &a).abs().to_f64() < 1e-35);
        let s = &a + &b;
        assert_eq!(s.re.to_f64(), 1.5);
    }

    #[test]
    fn exp_ln_roundtrip() {
        let a = c(0.7, 2.9);
        let r = a.ln().exp();
        assert!((&r - &a).abs().to_f64() < 1e-36);
    }

    #[test]
    fn principal_branch() {
        let a = c(-1.0, 1e-30);
        let l = a.ln();
        assert!(l.im.to_f64() > 3.14);
        let b = c(-1.0, -1e-30);
        assert!(b.ln().im.to_f64() < -3.14);
    }
}
