//! Univariate Laurent polynomials with `Scalar` coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::scalar::Scalar;

#[derive(Clone, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Scalar, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// Σ coeffs[i] z^{lo+i}.
    pub fn from_coeffs(lo: i64, coeffs: Vec<Scalar>) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term(lo + i as i64, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: Scalar) {
        let v = match self.terms.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn coeff(&self, e: i64) -> Scalar {
        self.terms.get(&e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// (lowest, highest) exponent, `None` for the zero polynomial.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (e, x) in self.terms() {
            out.add_term(e, x * c);
        }
        out
    }

    /// z ↦ z^{-1}.
    pub fn reflect(&self) -> Self {
        let mut out = Self::zero();
        for (e, x) in self.terms() {
            out.add_term(-e, x.clone());
        }
        out
    }

    pub fn eval(&self, z: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (e, c) in self.terms() {
            acc = &acc + &(c * &z.pow(e)?);
        }
        Ok(acc)
    }

    /// Exact equality of every coefficient (series up to common precision).
    pub fn agrees(&self, other: &Self) -> bool {
        let keys: std::collections::BTreeSet<i64> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.into_iter().all(|e| self.coeff(e).agrees(&other.coeff(e)))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| match e {
                0 => format!("({c})"),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
