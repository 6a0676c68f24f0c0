//! Exact coefficients in ℚ(i, √2).
//!
//! Every element is `a + b√2` with `a, b` Gaussian rationals. This is closed
//! under the arithmetic generated by the Darboux generators together with
//! the complex frame vectors, whose expansion contributes one factor of
//! `1/√2 = (1/2)√2` per letter.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Gaussian rational `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn zero() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.re + &other.re, &self.im + &other.im)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

fn render_gauss(g: &GaussRat) -> String {
    if g.is_zero() {
        return "0".into();
    }
    if g.im.is_zero() {
        return format!("{}", g.re);
    }
    if g.re.is_zero() {
        return if g.im.is_one() {
            "i".into()
        } else if (-g.im.clone()).is_one() {
            "-i".into()
        } else {
            format!("{}i", g.im)
        };
    }
    let sign = if g.im.is_negative() { "-" } else { "+" };
    format!("({}{}{}i)", g.re, sign, g.im.abs())
}

/// Exact coefficient `rat + surd·√2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coeff {
    pub rat: GaussRat,
    pub surd: GaussRat,
}

impl Coeff {
    pub fn zero() -> Self {
        Self {
            rat: GaussRat::zero(),
            surd: GaussRat::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn i() -> Self {
        Self {
            rat: GaussRat::new(BigRational::zero(), BigRational::one()),
            surd: GaussRat::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `num/den · i`.
    pub fn imag_ratio(num: i64, den: i64) -> Self {
        Self {
            rat: GaussRat::new(
                BigRational::zero(),
                BigRational::new(BigInt::from(num), BigInt::from(den)),
            ),
            surd: GaussRat::zero(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self {
            rat: GaussRat::new(r, BigRational::zero()),
            surd: GaussRat::zero(),
        }
    }

    pub fn from_gauss(g: GaussRat) -> Self {
        Self {
            rat: g,
            surd: GaussRat::zero(),
        }
    }

    /// `1/√2 = (1/2)√2`.
    pub fn inv_sqrt2() -> Self {
        Self {
            rat: GaussRat::zero(),
            surd: GaussRat::new(
                BigRational::new(BigInt::from(1), BigInt::from(2)),
                BigRational::zero(),
            ),
        }
    }

    /// Lossless embedding of a float: every finite `f64` is rational.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self::from_rational)
    }

    pub fn from_c64_exact(z: Complex64) -> Option<Self> {
        let re = BigRational::from_float(z.re)?;
        let im = BigRational::from_float(z.im)?;
        Some(Self {
            rat: GaussRat::new(re, im),
            surd: GaussRat::zero(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            rat: self.rat.add(&other.rat),
            surd: self.surd.add(&other.surd),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            rat: self.rat.neg(),
            surd: self.surd.neg(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `(a₁ + b₁√2)(a₂ + b₂√2) = (a₁a₂ + 2b₁b₂) + (a₁b₂ + b₁a₂)√2`.
    pub fn mul(&self, other: &Self) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        Self {
            rat: self
                .rat
                .mul(&other.rat)
                .add(&self.surd.mul(&other.surd).scale_rational(&two)),
            surd: self.rat.mul(&other.surd).add(&self.surd.mul(&other.rat)),
        }
    }

    /// Complex conjugation; √2 is real so both parts conjugate.
    pub fn conj(&self) -> Self {
        Self {
            rat: self.rat.conj(),
            surd: self.surd.conj(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Self {
            rat: self.rat.scale_rational(r),
            surd: self.surd.scale_rational(r),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        self.rat.to_c64() + self.surd.to_c64() * std::f64::consts::SQRT_2
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.surd.is_zero() {
            return write!(f, "{}", render_gauss(&self.rat));
        }
        if self.rat.is_zero() {
            return write!(f, "{}*sqrt2", render_gauss(&self.surd));
        }
        write!(
            f,
            "{} + {}*sqrt2",
            render_gauss(&self.rat),
            render_gauss(&self.surd)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let s = Coeff::inv_sqrt2();
        // (1/√2)² = 1/2
        assert_eq!(s.mul(&s), Coeff::from_ratio(1, 2));
        // i² = −1
        assert_eq!(Coeff::i().mul(&Coeff::i()), Coeff::from_int(-1));
        // conj(i/√2) · (i/√2) = 1/2
        let z = Coeff::i().mul(&s);
        assert_eq!(z.conj().mul(&z), Coeff::from_ratio(1, 2));
    }

    #[test]
    fn float_embedding_is_lossless() {
        for x in [0.5, -0.375, 1.0 / 3.0, 0.6] {
            let c = Coeff::from_f64_exact(x).unwrap();
            assert_eq!(c.to_c64().re, x);
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(Coeff::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(Coeff::imag_ratio(-1, 2).to_string(), "-1/2i");
        assert_eq!(Coeff::i().to_string(), "i");
        assert_eq!(Coeff::inv_sqrt2().to_string(), "1/2*sqrt2");
        let mixed = Coeff::from_ratio(1, 3).add(&Coeff::imag_ratio(-2, 5));
        assert_eq!(mixed.to_string(), "(1/3-2/5i)");
    }
}
