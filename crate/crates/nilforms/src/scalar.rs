//! Exact Gaussian-rational scalars: the coefficient field Q(i).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// An element a + b·i with a, b exact rationals of arbitrary precision.
///
/// All arithmetic is exact; there is no rounding anywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

pub type Q = GaussianRational;

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        GaussianRational { re: BigRational::one(), im: BigRational::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    /// i^k for any integer k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    /// num/den as a real rational; den must be nonzero.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// (a/b) + (c/d)i from four machine integers.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(b != 0 && d != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(a), BigInt::from(b)),
            im: BigRational::new(BigInt::from(c), BigInt::from(d)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Real and strictly positive.
    pub fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// z·conj(z); always real with nonnegative real part.
    pub fn norm_sqr(&self) -> Self {
        GaussianRational { re: &self.re * &self.re + &self.im * &self.im, im: BigRational::zero() }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = &self.re * &self.re + &self.im * &self.im;
        GaussianRational { re: &self.re / &n, im: -&self.im / &n }
    }

    /// Twice the real part of self, as a scalar. Handy for Hermitian brackets.
    pub fn two_re(&self) -> Self {
        GaussianRational {
            re: &self.re + &self.re,
            im: BigRational::zero(),
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: Self) -> GaussianRational {
        self * &rhs.inv()
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $fn:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $fn(self, rhs: Self) -> GaussianRational {
                (&self).$fn(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $fn(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$fn(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = (&*self) * rhs;
    }
}

fn rat_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical exact syntax: `a/b`, `a/b+c/d*i`, `a/b-c/d*i`, `c/d*i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rat_str(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", rat_str(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", rat_str(&self.re), rat_str(&-self.im.clone()))
        } else {
            write!(f, "{}+{}*i", rat_str(&self.re), rat_str(&self.im))
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

impl std::str::FromStr for GaussianRational {
    type Err = String;

    /// Accepts the display syntax plus pure-imaginary shorthands `i`, `-i`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty scalar".into());
        }
        if s == "i" {
            return Ok(Self::i());
        }
        if s == "-i" {
            return Ok(-Self::i());
        }
        // Pure imaginary: `c/d*i` or `c/d i`-free form ending in *i with no split point.
        let parse_im = |t: &str| -> Option<BigRational> {
            let t = t.trim();
            let core = t.strip_suffix("*i")?;
            parse_rat(core)
        };
        // Find a split '+'/'-' that is not leading and not inside a fraction.
        let bytes = s.as_bytes();
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && bytes[k - 1] as char != '/' && bytes[k - 1] as char != '*'
            {
                let (l, r) = s.split_at(k);
                let sign = if c == '+' { 1 } else { -1 };
                let rr = &r[1..];
                if let (Some(re), Some(im)) = (parse_rat(l), parse_im(rr)) {
                    let im = if sign < 0 { -im } else { im };
                    return Ok(GaussianRational { re, im });
                }
            }
        }
        if let Some(im) = parse_im(s) {
            return Ok(GaussianRational { re: BigRational::zero(), im });
        }
        parse_rat(s)
            .map(|re| GaussianRational { re, im: BigRational::zero() })
            .ok_or_else(|| format!("cannot parse scalar `{s}`"))
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Q {
        Q::from_parts(a, b, c, d)
    }

    #[test]
    fn field_axioms_on_sample_triples() {
        let samples = [
            q(1, 2, -3, 4),
            q(0, 1, 1, 1),
            q(-7, 3, 0, 1),
            q(5, 1, 5, 7),
            q(2, 9, -1, 9),
        ];
        for a in &samples {
            for b in &samples {
                for c in &samples {
                    assert_eq!((a + b) + c, a + &(b + c));
                    assert_eq!((a * b) * c, a * &(b * c));
                    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                }
            }
        }
        for a in &samples {
            if !a.is_zero() {
                assert_eq!(a * &a.inv(), Q::one());
            }
        }
    }

    #[test]
    fn conjugation_involution_and_norm() {
        let z = q(3, 5, -2, 7);
        assert_eq!(z.conj().conj(), z);
        let n = z.norm_sqr();
        assert!(n.is_real());
        assert!(n.re >= BigRational::zero());
        assert_eq!(z.clone() * z.conj(), n);
    }

    #[test]
    fn i_powers_cycle() {
        assert_eq!(Q::i_pow(0), Q::one());
        assert_eq!(Q::i_pow(1), Q::i());
        assert_eq!(Q::i_pow(2), -Q::one());
        assert_eq!(Q::i_pow(3), -Q::i());
        assert_eq!(Q::i_pow(4), Q::one());
        assert_eq!(Q::i_pow(-1), -Q::i());
        assert_eq!(Q::i() * Q::i(), -Q::one());
    }

    #[test]
    fn display_roundtrip() {
        let samples = [
            q(1, 2, -3, 4),
            q(0, 1, 1, 1),
            q(-7, 3, 0, 1),
            q(0, 1, -5, 7),
            Q::zero(),
            Q::i(),
        ];
        for z in &samples {
            let s = z.to_string();
            let back: Q = s.parse().unwrap();
            assert_eq!(&back, z, "roundtrip of `{s}`");
        }
    }
}
