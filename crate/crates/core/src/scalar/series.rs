//! Truncated Laurent series in one formal parameter with absolute precision.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{format_rational, Rational};
use crate::error::{Error, Result};

/// A series `Σ c_e q^e` known exactly for every exponent `e <= order`.
///
/// Coefficients are stored densely from `lo` up to `order`; anything below
/// `lo` is zero. For series without negative powers `lo == 0` and the
/// coefficient vector has length `order + 1`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    lo: i64,
    coeffs: Vec<Rational>,
    order: i64,
}

impl TruncatedSeries {
    /// Series from coefficients of `q^0, q^1, …`, padded or cut to `order`.
    pub fn new(coeffs: Vec<Rational>, order: usize) -> Self {
        Self::from_laurent(0, coeffs, order as i64)
    }

    /// Series whose first listed coefficient belongs to `q^lo`.
    pub fn from_laurent(lo: i64, coeffs: Vec<Rational>, order: i64) -> Self {
        let mut s = TruncatedSeries { lo, coeffs, order };
        s.fit();
        s
    }

    pub fn constant(c: Rational, order: i64) -> Self {
        Self::from_laurent(0, vec![c], order)
    }

    pub fn zero(order: i64) -> Self {
        Self::from_laurent(0, Vec::new(), order)
    }

    /// The formal parameter `q` itself.
    pub fn variable(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order as i64)
    }

    pub fn monomial(c: Rational, e: i64, order: i64) -> Self {
        Self::from_laurent(e, vec![c], order)
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeff(&self, e: i64) -> Rational {
        if e < self.lo || e > self.order {
            return Rational::zero();
        }
        self.coeffs[(e - self.lo) as usize].clone()
    }

    /// Coefficients of `q^0..=q^order` (negative powers are not included).
    pub fn nonnegative_coeffs(&self) -> Vec<Rational> {
        (0..=self.order.max(-1)).map(|e| self.coeff(e)).collect()
    }

    pub fn lowest_stored(&self) -> i64 {
        self.lo
    }

    /// First exponent with a nonzero coefficient, `None` when the series is
    /// zero to its precision.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.lo + i as i64)
    }

    fn val_or_cap(&self) -> i64 {
        self.valuation().unwrap_or(self.order + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Reduce the precision to `order` (no-op when already lower).
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Self::from_laurent(self.lo, self.coeffs.clone(), order)
    }

    fn fit(&mut self) {
        let val = self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.lo + i as i64);
        let new_lo = match val {
            Some(v) => v.min(0),
            None => 0,
        }
        .min(self.order + 1);
        let mut out = Vec::with_capacity((self.order - new_lo + 1).max(0) as usize);
        for e in new_lo..=self.order {
            let idx = e - self.lo;
            if idx >= 0 && (idx as usize) < self.coeffs.len() {
                out.push(self.coeffs[idx as usize].clone());
            } else {
                out.push(Rational::zero());
            }
        }
        self.lo = new_lo;
        self.coeffs = out;
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let lo = self.lo.min(other.lo);
        let coeffs = (lo..=order).map(|e| self.coeff(e) + other.coeff(e)).collect();
        Self::from_laurent(lo, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_laurent(self.lo, self.coeffs.iter().map(|x| x * c).collect(), self.order)
    }

    pub fn add_constant(&self, c: &Rational) -> Self {
        self.add(&Self::constant(c.clone(), self.order))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let va = self.val_or_cap();
        let vb = other.val_or_cap();
        let order = (self.order + vb).min(other.order + va);
        let lo = (va + vb).min(0).min(order + 1);
        let mut out = vec![Rational::zero(); (order - lo + 1).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.lo + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = ea + other.lo + j as i64;
                if e > order {
                    break;
                }
                if e < lo || b.is_zero() {
                    continue;
                }
                out[(e - lo) as usize] += a * b;
            }
        }
        Self::from_laurent(lo, out, order)
    }

    /// Multiplicative inverse; the result is known to `order − 2·valuation`.
    pub fn inverse(&self) -> Result<Self> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::NotInvertible("series is zero to its precision".into()))?;
        let uorder = self.order - v;
        let u: Vec<Rational> = (0..=uorder).map(|e| self.coeff(e + v)).collect();
        let c0inv = u[0].recip();
        let mut inv = vec![Rational::zero(); u.len()];
        inv[0] = c0inv.clone();
        for n in 1..u.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !u[k].is_zero() {
                    acc += &u[k] * &inv[n - k];
                }
            }
            inv[n] = -acc * &c0inv;
        }
        Ok(Self::from_laurent(-v, inv, uorder - v))
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inverse()?.powi(-n);
        }
        if n == 0 {
            return Ok(Self::constant(Rational::one(), self.order));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut n = n;
        loop {
            if n & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = base.mul(&base);
        }
        Ok(result.expect("n > 0"))
    }

    /// Coefficientwise agreement on every exponent both operands know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        let lo = self.lo.min(other.lo);
        (lo..=order).all(|e| self.coeff(e) == other.coeff(e))
    }

    /// Exact structural equality (same precision, same coefficients).
    pub fn identical(&self, other: &Self) -> bool {
        self.order == other.order && self.agrees_with(other)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.lo + i as i64;
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let show_coeff = e == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}q", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}q^{}", if show_coeff { "*" } else { "" }, e)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}
