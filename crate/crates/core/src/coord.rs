//! Exact rational coordinates.
//!
//! Values that are integers small enough to fit in an `i128` are kept inline
//! and all arithmetic on them is checked; anything else (true fractions, or an
//! intermediate product that overflowed) is promoted to a heap-allocated
//! [`BigRational`]. Results are always normalized back to the inline form when
//! they are integral and fit, so two equal values have the same representation
//! and the derived `Eq`/`Hash` are sound.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coord(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Int(i128),
    Ratio(Box<BigRational>),
}

/// Error returned when a coordinate string is not an integer, a finite
/// decimal, or a `p/q` fraction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid exact number {0:?}")]
pub struct ParseCoordError(pub String);

impl Coord {
    pub const ZERO: Coord = Coord(Repr::Int(0));
    pub const ONE: Coord = Coord(Repr::Int(1));

    pub fn from_int(v: i128) -> Self {
        Coord(Repr::Int(v))
    }

    /// Builds `num / den` exactly. Panics if `den` is zero.
    pub fn from_fraction(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(r: BigRational) -> Self {
        if r.is_integer() {
            if let Some(v) = r.numer().to_i128() {
                return Coord(Repr::Int(v));
            }
        }
        Coord(Repr::Ratio(Box::new(r)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Int(v) => BigRational::from_integer(BigInt::from(*v)),
            Repr::Ratio(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Int(0))
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.0, Repr::Int(_))
    }

    /// The value as an `i128`, when it is an integer.
    pub fn as_int(&self) -> Option<i128> {
        match self.0 {
            Repr::Int(v) => Some(v),
            Repr::Ratio(_) => None,
        }
    }

    /// The value when it is an integer of magnitude at most `2^40`, small
    /// enough that degree-3 products fit in an `i128` without checks.
    #[inline]
    pub(crate) fn small(&self) -> Option<i128> {
        const LIMIT: i128 = 1 << 40;
        match self.0 {
            Repr::Int(v) if (-LIMIT..=LIMIT).contains(&v) => Some(v),
            _ => None,
        }
    }

    /// `(numerator, denominator)` with both of magnitude at most `2^40`.
    pub(crate) fn small_fraction(&self) -> Option<(i128, i128)> {
        const LIMIT: i128 = 1 << 40;
        match &self.0 {
            Repr::Int(_) => self.small().map(|v| (v, 1)),
            Repr::Ratio(r) => {
                let n = r.numer().to_i128().filter(|v| (-LIMIT..=LIMIT).contains(v))?;
                let d = r.denom().to_i128().filter(|v| *v <= LIMIT)?;
                Some((n, d))
            }
        }
    }

    pub fn signum(&self) -> Ordering {
        match &self.0 {
            Repr::Int(v) => v.cmp(&0),
            Repr::Ratio(r) => {
                if r.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn abs(&self) -> Coord {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Nearest `f64`; only for display purposes.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Int(v) => *v as f64,
            Repr::Ratio(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// The midpoint `(self + other) / 2`.
    pub fn midpoint(&self, other: &Coord) -> Coord {
        &(self + other) / &Coord::from_int(2)
    }

    /// Renders the value as a finite decimal when one exists.
    pub fn to_decimal_string(&self) -> Option<String> {
        match &self.0 {
            Repr::Int(v) => Some(v.to_string()),
            Repr::Ratio(r) => {
                let mut den = r.denom().clone();
                let two = BigInt::from(2);
                let five = BigInt::from(5);
                let mut twos = 0u32;
                let mut fives = 0u32;
                while den.is_even() {
                    den /= &two;
                    twos += 1;
                }
                while (&den % &five).is_zero() {
                    den /= &five;
                    fives += 1;
                }
                if !den.is_one() {
                    return None;
                }
                let digits = twos.max(fives);
                let scaled = r.as_ref() * BigRational::from_integer(BigInt::from(10).pow(digits));
                let int = scaled.to_integer();
                let neg = int.is_negative();
                let mut s = int.abs().to_string();
                let d = digits as usize;
                if s.len() <= d {
                    s = format!("{}{}", "0".repeat(d + 1 - s.len()), s);
                }
                let (whole, frac) = s.split_at(s.len() - d);
                Some(format!("{}{}.{}", if neg { "-" } else { "" }, whole, frac))
            }
        }
    }
}

impl Default for Coord {
    fn default() -> Self {
        Coord::ZERO
    }
}

impl From<i64> for Coord {
    fn from(v: i64) -> Self {
        Coord(Repr::Int(v as i128))
    }
}

impl From<i32> for Coord {
    fn from(v: i32) -> Self {
        Coord(Repr::Int(v as i128))
    }
}

impl From<i128> for Coord {
    fn from(v: i128) -> Self {
        Coord(Repr::Int(v))
    }
}

impl From<BigRational> for Coord {
    fn from(v: BigRational) -> Self {
        Coord::from_big(v)
    }
}

impl FromStr for Coord {
    type Err = ParseCoordError;

    /// Accepts `-12`, `3.250`, `.5`, `+7` and `5/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseCoordError(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = parse_integer(n.trim()).ok_or_else(err)?;
            let d: BigInt = parse_integer(d.trim()).ok_or_else(err)?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Coord::from_big(BigRational::new(n, d)));
        }
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
        if whole.is_empty() && frac.is_empty() {
            return Err(err());
        }
        if !whole.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{whole}{frac}");
        let mut num: BigInt = digits.parse().map_err(|_| err())?;
        if neg {
            num = -num;
        }
        let den = BigInt::from(10).pow(frac.len() as u32);
        Ok(Coord::from_big(BigRational::new(num, den)))
    }
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Int(v) => write!(f, "{v}"),
            Repr::Ratio(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident, $op:tt) => {
        impl $trait<&Coord> for &Coord {
            type Output = Coord;
            #[inline]
            fn $method(self, rhs: &Coord) -> Coord {
                if let (Repr::Int(a), Repr::Int(b)) = (&self.0, &rhs.0) {
                    if let Some(v) = a.$checked(*b) {
                        return Coord(Repr::Int(v));
                    }
                }
                Coord::from_big(self.to_big() $op rhs.to_big())
            }
        }
        impl $trait<Coord> for Coord {
            type Output = Coord;
            #[inline]
            fn $method(self, rhs: Coord) -> Coord {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Coord> for Coord {
            type Output = Coord;
            #[inline]
            fn $method(self, rhs: &Coord) -> Coord {
                (&self).$method(rhs)
            }
        }
        impl $trait<Coord> for &Coord {
            type Output = Coord;
            #[inline]
            fn $method(self, rhs: Coord) -> Coord {
                self.$method(&rhs)
            }
        }
    };
}

checked_binop!(Add, add, checked_add, +);
checked_binop!(Sub, sub, checked_sub, -);
checked_binop!(Mul, mul, checked_mul, *);

impl Div<&Coord> for &Coord {
    type Output = Coord;

    /// Exact division. Panics on division by zero.
    fn div(self, rhs: &Coord) -> Coord {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Repr::Int(a), Repr::Int(b)) = (&self.0, &rhs.0) {
            if let Some(r) = a.checked_rem(*b) {
                if r == 0 {
                    if let Some(q) = a.checked_div(*b) {
                        return Coord(Repr::Int(q));
                    }
                }
            }
        }
        Coord::from_big(self.to_big() / rhs.to_big())
    }
}

impl Div<Coord> for Coord {
    type Output = Coord;
    fn div(self, rhs: Coord) -> Coord {
        &self / &rhs
    }
}

impl Div<&Coord> for Coord {
    type Output = Coord;
    fn div(self, rhs: &Coord) -> Coord {
        &self / rhs
    }
}

impl Neg for &Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        match &self.0 {
            Repr::Int(v) => match v.checked_neg() {
                Some(n) => Coord(Repr::Int(n)),
                None => Coord::from_big(-self.to_big()),
            },
            Repr::Ratio(r) => Coord::from_big(-(**r).clone()),
        }
    }
}

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        -&self
    }
}
