//! Exact arithmetic in the Gaussian rationals ℚ(i).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element `re + im·i` of ℚ(i) with big-integer rational parts.
///
/// Both parts are kept in lowest terms with a positive denominator, so
/// structural equality is field equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    /// `num/den` as a real element. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `(num/den)·i`. Panics if `den == 0`.
    pub fn imag_ratio(num: i64, den: i64) -> Self {
        Self { re: BigRational::zero(), im: BigRational::new(num.into(), den.into()) }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero() && !self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.checked_inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { re: &self.re * r, im: &self.im * r }
    }

    /// Multiplication by `i`, without a full complex product.
    pub fn mul_i(&self) -> Self {
        Self { re: -&self.im, im: self.re.clone() }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        // Real-only operands dominate in practice; skip the cross terms.
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussianRational::from_rational(&self.re * &rhs.re),
            (true, false) => rhs.scale(&self.re),
            (false, true) => self.scale(&rhs.re),
            (false, false) => GaussianRational {
                re: &self.re * &rhs.re - &self.im * &rhs.im,
                im: &self.re * &rhs.im + &self.im * &rhs.re,
            },
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $f(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
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

/// Formats a rational as `p` or `p/q`.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` into a normalized rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", rational_to_string(&self.re)),
            (true, false) => write!(f, "{}i", rational_to_string(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({} {} {}i)", rational_to_string(&self.re), sign, rational_to_string(&self.im.abs()))
            }
        }
    }
}

/// Writes `Σ c·m` as `c*m - c*m ...`, dropping unit coefficients.
pub(crate) fn write_sum<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (String, &'a GaussianRational)>,
{
    let one = GaussianRational::from_int(1);
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let neg = (c.im.is_zero() && c.re.is_negative()) || (c.re.is_zero() && c.im.is_negative());
        let mag = if neg { -c } else { c.clone() };
        match (k, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if m == "1" {
            write!(f, "{mag}")?;
        } else if mag == one {
            f.write_str(&m)?;
        } else {
            write!(f, "{mag}*{m}")?;
        }
    }
    Ok(())
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `p/q`, `p/qi` or `p/q i`; general values go through [`GaussianRational::new`].
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_suffix('i') {
            Some(rest) => Ok(Self { re: BigRational::zero(), im: parse_rational(rest)? }),
            None => Ok(Self::from_rational(parse_rational(s)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
    }

    #[test]
    fn seed_product() {
        let a = GaussianRational::imag_ratio(-3, 2);
        let b = GaussianRational::imag_ratio(3, 2);
        assert_eq!(&a * &b, GaussianRational::ratio(9, 4));
    }

    #[test]
    fn thirds_sum_to_one() {
        let s = &GaussianRational::ratio(1, 3) + &GaussianRational::ratio(2, 3);
        assert_eq!(s, GaussianRational::one());
        assert!(s.re().denom().is_one());
    }

    #[test]
    fn zero_is_canonical() {
        let x = GaussianRational::new(BigRational::new(2.into(), 4.into()), BigRational::new(3.into(), 9.into()));
        let d = &x - &x;
        assert_eq!(d, GaussianRational::zero());
        assert!(d.re().denom().is_one() && d.im().denom().is_one());
    }

    #[test]
    fn division() {
        let a = GaussianRational::new(BigRational::from_integer(1.into()), BigRational::from_integer(2.into()));
        let q = a.checked_div(&a).unwrap();
        assert_eq!(q, GaussianRational::one());
        assert!(matches!(a.checked_div(&GaussianRational::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn parse_and_display() {
        let x: GaussianRational = "-380380/729".parse().unwrap();
        assert_eq!(x.to_string(), "-380380/729");
        let y: GaussianRational = "3/2i".parse().unwrap();
        assert_eq!(y, GaussianRational::imag_ratio(3, 2));
        assert_eq!(y.to_string(), "3/2i");
        assert!("1/0".parse::<GaussianRational>().is_err());
    }
}
