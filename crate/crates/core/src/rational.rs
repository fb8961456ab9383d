//! Exact rational scalars and the extended slope value used throughout the crate.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

/// An exact rational number with an `i128` numerator and positive denominator,
/// always stored in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));
    pub const HALF: Rational = Rational(Ratio::new_raw(1, 2));

    /// Builds `num/den` in lowest terms. Panics when `den == 0`.
    pub fn new(num: i128, den: i128) -> Rational {
        Rational(Ratio::new(num, den))
    }

    pub fn checked_new(num: i128, den: i128) -> Option<Rational> {
        if den == 0 {
            None
        } else {
            Some(Rational::new(num, den))
        }
    }

    pub const fn integer(n: i128) -> Rational {
        Rational(Ratio::new_raw(n, 1))
    }

    pub fn from_integer(n: i128) -> Rational {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.numer() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.numer() < 0
    }

    pub fn is_integer(&self) -> bool {
        self.denom() == 1
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> Rational {
        Rational(self.0.floor())
    }

    pub fn square(&self) -> Rational {
        *self * *self
    }

    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn checked_div(&self, rhs: Rational) -> Option<Rational> {
        rhs.recip().map(|r| *self * r)
    }

    /// The rational square root, when it exists.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rational::new(n, d))
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: Rational) -> Rational {
        (*self + other) * Rational::HALF
    }

    /// Decimal rendering rounded half away from zero to `places` digits.
    /// Display only; computed with integer arithmetic.
    pub fn to_decimal(&self, places: u32) -> String {
        use core::fmt::Write;
        let scale = 10i128.pow(places);
        let num = self.numer().abs();
        let den = self.denom();
        let scaled = num * scale;
        let mut q = scaled / den;
        if (scaled % den) * 2 >= den {
            q += 1;
        }
        let int_part = q / scale;
        let frac_part = q % scale;
        let mut out = String::new();
        if self.is_negative() && q != 0 {
            out.push('-');
        }
        let _ = write!(out, "{}", int_part);
        if places > 0 {
            let _ = write!(out, ".{:0width$}", frac_part, width = places as usize);
        }
        out
    }
}

fn exact_isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n as i128)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i128)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::from_integer(n as i128)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $tr_assign:ident, $method_assign:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(self.0, rhs.0))
            }
        }
        impl $tr_assign for Rational {
            #[inline]
            fn $method_assign(&mut self, rhs: Rational) {
                *self = $tr::$method(*self, rhs);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Div for Rational {
    type Output = Rational;

    /// Panics on division by zero; use [`Rational::checked_div`] where the
    /// divisor can vanish.
    fn div(self, rhs: Rational) -> Rational {
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl core::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError;

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected a rational of the form `p`, `p/q` or a finite decimal")
    }
}

impl core::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p`, `p/q` and finite decimals such as `-0.125`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        // Accept the unicode minus as well as '-'.
        let (negative, body) = if let Some(rest) = s.strip_prefix('\u{2212}') {
            (true, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (true, rest)
        } else {
            (false, s.strip_prefix('+').unwrap_or(s))
        };
        if body.is_empty() {
            return Err(ParseRationalError);
        }
        let value = if let Some((n, d)) = body.split_once('/') {
            let n: i128 = parse_digits(n)?;
            let d: i128 = parse_digits(d)?;
            Rational::checked_new(n, d).ok_or(ParseRationalError)?
        } else if let Some((int, frac)) = body.split_once('.') {
            if int.is_empty() && frac.is_empty() {
                return Err(ParseRationalError);
            }
            let int: i128 = if int.is_empty() { 0 } else { parse_digits(int)? };
            let frac_val: i128 = if frac.is_empty() { 0 } else { parse_digits(frac)? };
            let scale = 10i128
                .checked_pow(frac.len() as u32)
                .ok_or(ParseRationalError)?;
            Rational::from_integer(int) + Rational::new(frac_val, scale)
        } else {
            Rational::from_integer(parse_digits(body)?)
        };
        Ok(if negative { -value } else { value })
    }
}

fn parse_digits(s: &str) -> Result<i128, ParseRationalError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError);
    }
    s.parse().map_err(|_| ParseRationalError)
}

/// A slope value: a rational or the distinguished `+∞` used for rank-zero
/// characters and vertical walls.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Slope {
    Finite(Rational),
    Infinity,
}

impl Slope {
    /// `num / den`, or `Infinity` when `den == 0`.
    pub fn ratio(num: Rational, den: Rational) -> Slope {
        match num.checked_div(den) {
            Some(q) => Slope::Finite(q),
            None => Slope::Infinity,
        }
    }

    pub fn finite(self) -> Option<Rational> {
        match self {
            Slope::Finite(q) => Some(q),
            Slope::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Slope::Infinity)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(q) => fmt::Display::fmt(q, f),
            Slope::Infinity => f.write_str("+inf"),
        }
    }
}

/// Shorthand for `Rational::new`.
#[inline]
pub fn q(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn normalizes_and_displays() {
        assert_eq!(q(10, -4).to_string(), "-5/2");
        assert_eq!(q(6, 3).to_string(), "2");
        assert_eq!(q(0, 7).to_string(), "0");
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!("-1/2".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!("\u{2212}1/2".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), q(7, 1));
        assert_eq!("0.125".parse::<Rational>().unwrap(), q(1, 8));
        assert_eq!("-.5".parse::<Rational>().unwrap(), q(-1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn decimal_rendering_rounds_half_away() {
        assert_eq!(q(-1, 20).to_decimal(6), "-0.050000");
        assert_eq!(q(2, 3).to_decimal(6), "0.666667");
        assert_eq!(q(-2, 3).to_decimal(2), "-0.67");
        assert_eq!(q(7, 4).to_decimal(0), "2");
        assert_eq!(q(-1, 10_000_000).to_decimal(6), "0.000000");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(q(9, 25).sqrt_exact(), Some(q(3, 5)));
        assert_eq!(q(2, 1).sqrt_exact(), None);
        assert_eq!(q(-4, 1).sqrt_exact(), None);
    }

    #[test]
    fn floor_of_negatives() {
        assert_eq!(q(-1, 2).floor(), q(-1, 1));
        assert_eq!(q(3, 2).floor(), q(1, 1));
    }
}
