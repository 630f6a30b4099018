use std::fmt;
use std::str::FromStr;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graded::C64;
use crate::numeric::to_f64;

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { re: &self.re * r, im: &self.im * r }
    }

    /// Exact quotient; `None` when dividing by zero.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let den = &other.re * &other.re + &other.im * &other.im;
        if den.is_zero() {
            return None;
        }
        let num = self * &other.conj();
        Some(Self { re: num.re / &den, im: num.im / &den })
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        &self + &o
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, o: &GaussRat) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        &self * &o
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -&self.re, im: -&self.im }
    }
}

fn fmt_rat(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Real numbers print as `p/q`, imaginary ones as `p/qi`, others as `(a+bi)`.
impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rat(f, &self.re);
        }
        if self.re.is_zero() {
            fmt_rat(f, &self.im)?;
            return write!(f, "i");
        }
        write!(f, "(")?;
        fmt_rat(f, &self.re)?;
        if !self.im.is_negative() {
            write!(f, "+")?;
        }
        fmt_rat(f, &self.im)?;
        write!(f, "i)")
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    s.parse::<BigRational>().map_err(|_| Error::Parse(format!("bad rational '{s}'")))
}

/// Inverse of the `Display` form.
impl FromStr for GaussRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let split = inner.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(k, _)| k).last();
            let k = split.ok_or_else(|| Error::Parse(format!("bad complex number '{s}'")))?;
            let im = inner[k..].strip_suffix('i').ok_or_else(|| Error::Parse(format!("bad complex number '{s}'")))?;
            return Ok(Self::new(parse_rat(&inner[..k])?, parse_rat(im)?));
        }
        match s.strip_suffix('i') {
            Some(im) => Ok(Self::new(BigRational::zero(), parse_rat(im)?)),
            None => Ok(Self::real(parse_rat(s)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = GaussRat::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer(3.into()));
        let b = GaussRat::i();
        assert_eq!(&b * &b, GaussRat::from_int(-1));
        assert_eq!(&a * &a.conj(), GaussRat::frac(37, 4));
        assert_eq!(a.checked_div(&a).unwrap(), GaussRat::one());
        assert!(a.checked_div(&GaussRat::zero()).is_none());
        assert_eq!(a.to_string(), "(1/2+3i)");
        assert_eq!(GaussRat::frac(-3, 6).to_string(), "-1/2");
        assert_eq!((-GaussRat::i()).to_string(), "-1i");
    }
}
