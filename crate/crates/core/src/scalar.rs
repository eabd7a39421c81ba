//! Scalar fields: exact Gaussian rationals, exact circle points and a float
//! complex backend.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Shorthand for the exact complex scalar used by all decision procedures.
pub type C = GaussRat;

/// Field operations shared by every matrix and relation layer.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether equality on this field is decidable exactly.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }

    fn div(&self, other: &Self) -> Result<Self> {
        other
            .inv()
            .map(|o| self.clone() * o)
            .ok_or(Error::DivisionByZero)
    }
}

/// Marker for fields with exact arithmetic.
pub trait ExactField: Field {}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Field for Rational {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(n: i64) -> Self {
        qi(n)
    }
}

impl ExactField for Rational {}

/// Element of the Gaussian rationals `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRat { re, im: Zero::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::real(qi(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::real(q(n, d))
    }

    pub fn i() -> Self {
        GaussRat { re: Zero::zero(), im: One::one() }
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    /// Squared modulus `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn re_part(&self) -> GaussRat {
        GaussRat::real(self.re.clone())
    }

    pub fn im_part(&self) -> GaussRat {
        GaussRat::real(self.im.clone())
    }

    pub fn to_complex_f64(&self) -> FloatComplex {
        FloatComplex::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        GaussRat { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        GaussRat { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        if Zero::is_zero(&self.im) && Zero::is_zero(&o.im) {
            return GaussRat::real(self.re * o.re);
        }
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl From<Rational> for GaussRat {
    fn from(r: Rational) -> Self {
        GaussRat::real(r)
    }
}

impl Field for GaussRat {
    const EXACT: bool = true;
    fn zero() -> Self {
        GaussRat { re: Zero::zero(), im: Zero::zero() }
    }
    fn one() -> Self {
        GaussRat::int(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        if self.is_real() {
            return Some(GaussRat::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(GaussRat { re: &self.re / &n, im: -(&self.im / &n) })
    }
    fn from_i64(n: i64) -> Self {
        GaussRat::int(n)
    }
    fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }
}

impl ExactField for GaussRat {}

fn fmt_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// Canonical text form: `p/q+r/si`, dropping zero parts and unit
    /// imaginary coefficients (`3/5+4/5i`, `-1`, `2i`, `-i`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re0 = Zero::is_zero(&self.re);
        let im0 = Zero::is_zero(&self.im);
        if im0 {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let mut s = String::new();
        if !re0 {
            s.push_str(&fmt_rat(&self.re));
        }
        let neg = self.im.is_negative();
        let mag = self.im.abs();
        if neg {
            s.push('-');
        } else if !re0 {
            s.push('+');
        }
        if !One::is_one(&mag) {
            s.push_str(&fmt_rat(&mag));
        }
        s.push('i');
        write!(f, "{}", s)
    }
}

fn parse_rat(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational `{}`", s));
    if s.is_empty() {
        return Err(bad());
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let valid = |t: &str, signed: bool| {
        let t = if signed { t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t) } else { t };
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(n, true) || !valid(d, false) {
        return Err(bad());
    }
    let n: BigInt = n.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if Zero::is_zero(&d) {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

impl FromStr for GaussRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussRat::real(parse_rat(s)?));
        };
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re.is_empty() { Zero::zero() } else { parse_rat(re)? };
        let im = match im {
            "" | "+" => One::one(),
            "-" => -<Rational as One>::one(),
            t => parse_rat(t)?,
        };
        Ok(GaussRat { re, im })
    }
}

/// Exact point `(c, s)` on the unit circle, standing in for `(cos θ, sin θ)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CirclePoint {
    c: Rational,
    s: Rational,
}

impl CirclePoint {
    pub fn new(c: Rational, s: Rational) -> Result<Self> {
        if &c * &c + &s * &s != <Rational as One>::one() {
            return Err(Error::NotOnCircle);
        }
        Ok(CirclePoint { c, s })
    }

    /// Rational parametrization by the tangent of the half angle.
    pub fn from_tan_half(t: &Rational) -> Self {
        let t2 = t * t;
        let den = <Rational as One>::one() + &t2;
        CirclePoint {
            c: (<Rational as One>::one() - &t2) / &den,
            s: (t * qi(2)) / den,
        }
    }

    pub fn identity() -> Self {
        CirclePoint { c: One::one(), s: Zero::zero() }
    }

    pub fn cos(&self) -> &Rational {
        &self.c
    }

    pub fn sin(&self) -> &Rational {
        &self.s
    }

    /// Angle addition.
    pub fn compose(&self, o: &CirclePoint) -> CirclePoint {
        CirclePoint {
            c: &self.c * &o.c - &self.s * &o.s,
            s: &self.s * &o.c + &self.c * &o.s,
        }
    }

    pub fn inverse(&self) -> CirclePoint {
        CirclePoint { c: self.c.clone(), s: -self.s.clone() }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.c), rat_to_f64(&self.s))
    }
}

pub fn circle_from_tan_half(t: &Rational) -> CirclePoint {
    CirclePoint::from_tan_half(t)
}

/// Double precision complex number for genuine trigonometric parameters.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct FloatComplex {
    pub re: f64,
    pub im: f64,
}

/// Tolerance used by the float backend's zero test.
pub const FLOAT_EPS: f64 = 1e-12;

impl FloatComplex {
    pub fn new(re: f64, im: f64) -> Self {
        FloatComplex { re, im }
    }

    pub fn real(re: f64) -> Self {
        FloatComplex { re, im: 0.0 }
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Add for FloatComplex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        FloatComplex::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for FloatComplex {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        FloatComplex::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for FloatComplex {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        FloatComplex::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Neg for FloatComplex {
    type Output = Self;
    fn neg(self) -> Self {
        FloatComplex::new(-self.re, -self.im)
    }
}

impl fmt::Display for FloatComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Field for FloatComplex {
    const EXACT: bool = false;
    fn zero() -> Self {
        FloatComplex::default()
    }
    fn one() -> Self {
        FloatComplex::real(1.0)
    }
    fn is_zero(&self) -> bool {
        self.abs() <= FLOAT_EPS
    }
    fn inv(&self) -> Option<Self> {
        let n = self.re * self.re + self.im * self.im;
        if n == 0.0 {
            return None;
        }
        let r = FloatComplex::new(self.re / n, -self.im / n);
        r.is_finite().then_some(r)
    }
    fn from_i64(n: i64) -> Self {
        FloatComplex::real(n as f64)
    }
    fn conj(&self) -> Self {
        FloatComplex::new(self.re, -self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    #[test]
    fn circle_points_from_tangent() {
        let p = circle_from_tan_half(&q(1, 2));
        assert_eq!((p.cos(), p.sin()), (&q(3, 5), &q(4, 5)));
        assert_eq!(circle_from_tan_half(&qi(0)), CirclePoint::identity());
        let p = circle_from_tan_half(&qi(1));
        assert_eq!((p.cos(), p.sin()), (&qi(0), &qi(1)));
        assert!(CirclePoint::new(q(1, 2), q(1, 2)).is_err());
    }

    #[test]
    fn field_examples() {
        let z = c("3/2+1/3i");
        assert_eq!(z.conj().conj(), z);
        assert_eq!(c("2").inv().unwrap(), c("1/2"));
        assert_eq!(c("1+i") * c("1-i"), c("2"));
        assert_eq!(GaussRat::zero().inv(), None);
        assert!(matches!(GaussRat::one().div(&GaussRat::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn text_round_trip() {
        for s in ["3/5+4/5i", "-1", "2i", "-i", "i", "0", "-7/3-2/9i", "5-i", "1/2"] {
            assert_eq!(c(s).to_string(), s);
        }
        assert_eq!(c("1i"), GaussRat::i());
        assert_eq!(c("+3"), c("3"));
        assert_eq!(c("4/8"), c("1/2"));
        for bad in ["", "i i", "1/0", "x", "1//2", "2+", "3/-4"] {
            assert!(bad.parse::<GaussRat>().is_err(), "{bad}");
        }
    }

    #[test]
    fn float_inverse_is_finite() {
        let z = FloatComplex::new(3.0, 4.0);
        let w = z.inv().unwrap();
        assert!(((z * w) - FloatComplex::one()).is_zero());
        assert!(FloatComplex::zero().inv().is_none());
    }
}
