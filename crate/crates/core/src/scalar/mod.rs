//! Exact scalars: big rationals and truncated series over the rationals.

mod series;
mod special;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use series::TruncatedSeries;
pub use special::{
    barnes_g, binomial, factorial_gamma, q_barnes, q_binomial, q_gamma, q_integer, q_pochhammer,
    series_arith, SeriesOp,
};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::schema("rational", format!("cannot parse {t:?} as p/q"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::schema("rational", format!("zero denominator in {t:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

/// Decimal rendering with `digits` places after the point, rounded half away
/// from zero. Presentation only.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + ratio(1, 2)).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
}

/// Either an exact rational or a truncated series in the formal parameter.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(Rational),
    Series(TruncatedSeries),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(rat(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::Rational(ratio(n, d))
    }

    /// The formal parameter `q` truncated at `order`.
    pub fn formal(order: usize) -> Self {
        Scalar::Series(TruncatedSeries::variable(order))
    }

    /// `1 − ε` as a series in ε, for q → 1 checks.
    pub fn one_minus_eps(order: usize) -> Self {
        Scalar::Series(TruncatedSeries::new(vec![rat(1), rat(-1)], order))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Series(s) => s.is_zero(),
        }
    }

    pub fn is_series(&self) -> bool {
        matches!(self, Scalar::Series(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Series(_) => None,
        }
    }

    pub fn as_series(&self) -> Option<&TruncatedSeries> {
        match self {
            Scalar::Series(s) => Some(s),
            Scalar::Rational(_) => None,
        }
    }

    /// Highest exactly known exponent; `None` for exact rationals.
    pub fn precision(&self) -> Option<i64> {
        self.as_series().map(|s| s.order())
    }

    /// Valuation in the formal parameter (0 for nonzero rationals).
    pub fn valuation(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) => (!r.is_zero()).then_some(0),
            Scalar::Series(s) => s.valuation(),
        }
    }

    /// Constant coefficient (the value itself for a rational).
    pub fn constant_term(&self) -> Rational {
        match self {
            Scalar::Rational(r) => r.clone(),
            Scalar::Series(s) => s.coeff(0),
        }
    }

    /// View as a series, promoting rationals to exact constants at `order`.
    pub fn to_series(&self, order: i64) -> TruncatedSeries {
        match self {
            Scalar::Rational(r) => TruncatedSeries::constant(r.clone(), order),
            Scalar::Series(s) => s.clone(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::NotInvertible("division by zero".into()))
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Series(s) => Ok(Scalar::Series(s.inverse()?)),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if n < 0 && r.is_zero() {
                    return Err(Error::NotInvertible("zero to a negative power".into()));
                }
                Ok(Scalar::Rational(r.pow(n as i32)))
            }
            Scalar::Series(s) => Ok(Scalar::Series(s.powi(n)?)),
        }
    }

    /// Agreement on every coefficient both sides know exactly.
    pub fn agrees(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Series(a), Scalar::Series(b)) => a.agrees_with(b),
            (Scalar::Rational(a), Scalar::Series(b)) | (Scalar::Series(b), Scalar::Rational(a)) => {
                b.agrees_with(&TruncatedSeries::constant(a.clone(), b.order()))
            }
        }
    }

    /// Like `agrees`, and additionally both sides are known to at least `order`.
    pub fn agrees_to(&self, other: &Scalar, order: i64) -> bool {
        let enough = |s: &Scalar| s.precision().is_none_or(|p| p >= order);
        enough(self) && enough(other) && self.agrees(other)
    }

    /// Machine-readable JSON form.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(r) => serde_json::Value::String(format_rational(r)),
            Scalar::Series(s) => {
                let lo = s.lowest_stored().min(0);
                let coeffs: Vec<serde_json::Value> = (lo..=s.order())
                    .map(|e| serde_json::Value::String(format_rational(&s.coeff(e))))
                    .collect();
                let mut obj = serde_json::Map::new();
                obj.insert("series".into(), serde_json::Value::Array(coeffs));
                obj.insert("order".into(), serde_json::Value::from(s.order()));
                if lo != 0 {
                    obj.insert("start".into(), serde_json::Value::from(lo));
                }
                serde_json::Value::Object(obj)
            }
        }
    }

    /// Parse `"p/q"` or `{"series":[…],"order":O[,"start":s]}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Scalar> {
        match v {
            serde_json::Value::String(s) => Ok(Scalar::Rational(parse_rational(s)?)),
            serde_json::Value::Number(n) => {
                let i = n.as_i64().ok_or_else(|| Error::schema("scalar", "numbers must be integers; use \"p/q\" strings"))?;
                Ok(Scalar::int(i))
            }
            serde_json::Value::Object(o) => {
                let arr = o
                    .get("series")
                    .and_then(|a| a.as_array())
                    .ok_or_else(|| Error::schema("scalar.series", "expected an array of rationals"))?;
                let order = o
                    .get("order")
                    .and_then(|x| x.as_i64())
                    .ok_or_else(|| Error::schema("scalar.order", "expected an integer"))?;
                let start = o.get("start").and_then(|x| x.as_i64()).unwrap_or(0);
                let coeffs = arr
                    .iter()
                    .map(|c| match c {
                        serde_json::Value::String(s) => parse_rational(s),
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(rat)
                            .ok_or_else(|| Error::schema("scalar.series", "non-integer number")),
                        _ => Err(Error::schema("scalar.series", "expected rational strings")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Scalar::Series(TruncatedSeries::from_laurent(start, coeffs, order)))
            }
            _ => Err(Error::schema("scalar", "expected \"p/q\" or a series object")),
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.as_rational().and_then(|r| r.to_f64())
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<TruncatedSeries> for Scalar {
    fn from(s: TruncatedSeries) -> Self {
        Scalar::Series(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

/// Coefficientwise agreement up to the common precision.
impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.agrees(other)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", format_rational(r)),
            Scalar::Series(s) => write!(f, "{s}"),
        }
    }
}

fn add_ref(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
        (Scalar::Series(x), Scalar::Series(y)) => Scalar::Series(x.add(y)),
        (Scalar::Series(s), Scalar::Rational(r)) | (Scalar::Rational(r), Scalar::Series(s)) => {
            Scalar::Series(s.add_constant(r))
        }
    }
}

fn mul_ref(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
        (Scalar::Series(x), Scalar::Series(y)) => Scalar::Series(x.mul(y)),
        (Scalar::Series(s), Scalar::Rational(r)) | (Scalar::Rational(r), Scalar::Series(s)) => {
            Scalar::Series(s.scale(r))
        }
    }
}

fn neg_ref(a: &Scalar) -> Scalar {
    match a {
        Scalar::Rational(x) => Scalar::Rational(-x),
        Scalar::Series(s) => Scalar::Series(s.neg()),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $f:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| add_ref(a, &neg_ref(b)));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_ref(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_ref(self)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}
