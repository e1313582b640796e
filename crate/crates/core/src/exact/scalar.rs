//! Gaussian rationals: `re + im·i` with both parts in `Q`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = BigRational;

/// Builds the rational `n/d`. Panics on a zero denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn imag(im: Rational) -> Self {
        Self { re: Rational::zero(), im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::real(ratio(n, d))
    }

    /// `re + im·i` from small integers.
    pub fn gauss(re: i64, im: i64) -> Self {
        Self::new(int(re), int(im))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::gauss(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> Self {
        Self::new(-self.im.clone(), self.re.clone())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl Scalar {
    /// Short form for human output: `-1`, `1/2`, `i`, `-3i`, `1+2i`.
    pub fn compact(&self) -> String {
        let r = |x: &Rational| {
            if x.denom().is_one() {
                x.numer().to_string()
            } else {
                format!("{}/{}", x.numer(), x.denom())
            }
        };
        if self.im.is_zero() {
            return r(&self.re);
        }
        let im = if self.im.is_one() {
            String::new()
        } else if (-self.im.clone()).is_one() {
            "-".to_string()
        } else {
            r(&self.im)
        };
        if self.re.is_zero() {
            format!("{im}i")
        } else if self.im.is_negative() {
            format!("{}{im}i", r(&self.re))
        } else {
            format!("{}+{im}i", r(&self.re))
        }
    }
}

/// Canonical text form: `<re>+<im>i` or `<re>-<|im|>i`, each part an
/// integer or a reduced `n/d`. Examples: `0+1i`, `-1/2+0i`, `3-2/5i`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.re)?;
        if self.im.is_negative() {
            f.write_str("-")?;
            write_rational(f, &-self.im.clone())?;
        } else {
            f.write_str("+")?;
            write_rational(f, &self.im)?;
        }
        f.write_str("i")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    if s.is_empty() {
        return None;
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let valid = |t: &str, signed: bool| {
        let t = if signed { t.strip_prefix(['+', '-']).unwrap_or(t) } else { t };
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(n, true) || !valid(d, false) {
        return None;
    }
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Parses an imaginary coefficient written before the trailing `i`
/// (the `i` already stripped). Empty or bare sign means magnitude one.
fn parse_imag_coeff(s: &str) -> Option<Rational> {
    match s {
        "" | "+" => Some(Rational::one()),
        "-" => Some(-Rational::one()),
        _ => parse_rational(s),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `a`, `a/b`, `bi`, `i`, `-i`, `a+bi`, `a-b/ci` (no spaces).
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || Error::ScalarSyntax(text.to_string());
        let s = text.trim();
        if s.is_empty() {
            return Err(bad());
        }
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(s).map(Scalar::real).ok_or_else(bad);
        };
        // split at the last sign that is not the leading character
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => {
                let re = parse_rational(&body[..k]).ok_or_else(bad)?;
                let im = parse_imag_coeff(&body[k..]).ok_or_else(bad)?;
                Ok(Scalar::new(re, im))
            }
            None => parse_imag_coeff(body).map(Scalar::imag).ok_or_else(bad),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_forms() {
        for (text, short) in [("-1", "-1"), ("1/2", "1/2"), ("i", "i"), ("-i", "-i"), ("-3i", "-3i"), ("1+2i", "1+2i"), ("1-i", "1-i")] {
            let s: Scalar = text.parse().unwrap();
            assert_eq!(s.compact(), short);
            assert_eq!(s.compact().parse::<Scalar>().unwrap(), s);
        }
    }

    #[test]
    fn canonical_text_forms() {
        assert_eq!(Scalar::i().to_string(), "0+1i");
        assert_eq!(Scalar::from_ratio(-1, 2).to_string(), "-1/2+0i");
        assert_eq!(Scalar::new(int(3), ratio(-2, 5)).to_string(), "3-2/5i");
    }

    #[test]
    fn parse_accepts_short_forms() {
        let p = |s: &str| s.parse::<Scalar>().unwrap();
        assert_eq!(p("i"), Scalar::i());
        assert_eq!(p("-i"), -Scalar::i());
        assert_eq!(p("3/4"), Scalar::from_ratio(3, 4));
        assert_eq!(p("-1/2+0i"), Scalar::from_ratio(-1, 2));
        assert_eq!(p("1-i"), Scalar::gauss(1, -1));
        assert_eq!(p("-2/6i"), Scalar::imag(ratio(-1, 3)));
        assert_eq!(p("+5"), Scalar::from_int(5));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a", "1+", "1//2", "2ii", "1 + i", "/3"] {
            assert!(s.parse::<Scalar>().is_err(), "{s:?} should fail");
        }
    }

    #[test]
    fn gaussian_field_ops() {
        let a = Scalar::gauss(1, 2);
        let b = Scalar::gauss(3, -1);
        assert_eq!(&a * &b, Scalar::gauss(5, 5));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(a.norm_sqr(), int(5));
        assert!(Scalar::zero().inv().is_none());
        assert_eq!(Scalar::i().times_i(), Scalar::from_int(-1));
    }

    #[test]
    fn sqrt_of_perfect_squares() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
    }
}
