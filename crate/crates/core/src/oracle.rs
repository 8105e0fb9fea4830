//! Brute-force constant-term evaluation of the Heine and Morris integrals.
//! Slow on purpose and independent of every determinant routine.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::partitions::Partition;
use crate::scalar::{factorial_gamma, Rational, Scalar};
use crate::symbols::{as_laurent, fourier_window, SymbolSpec};
use crate::tableaux::skew_schur_monomials;

/// Largest support width d_hi − d_lo the oracle accepts.
pub const MAX_SUPPORT_WIDTH: i64 = 12;

/// N cap, from `TM_MAX_ORACLE_N` (default 4).
pub fn oracle_cap() -> usize {
    std::env::var("TM_MAX_ORACLE_N").ok().and_then(|v| v.parse().ok()).unwrap_or(4)
}

/// Laurent polynomial in a fixed number of variables.
#[derive(Clone, Debug, Default)]
pub struct MultiLaurent {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl MultiLaurent {
    pub fn zero(nvars: usize) -> Self {
        MultiLaurent { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Scalar::one())
    }

    pub fn monomial(exps: Vec<i64>, c: Scalar) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Scalar) {
        debug_assert_eq!(exps.len(), self.nvars);
        let v = match self.terms.remove(&exps) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(exps, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let e = a.iter().zip(b).map(|(u, v)| u + v).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }
}

/// Coefficient of z^0.
pub fn constant_term(p: &MultiLaurent) -> Scalar {
    p.coeff(&vec![0; p.nvars()])
}

fn schur_poly(mu: &Partition, n: usize, sign: i64) -> MultiLaurent {
    let mut out = MultiLaurent::zero(n);
    for (content, count) in skew_schur_monomials(mu, &Partition::empty(), n) {
        out.add_term(content.iter().map(|&c| sign * c as i64).collect(), Scalar::int(count as i64));
    }
    out
}

/// ∏_{j<k} (z_j − z_k)(z_j^{-1} − z_k^{-1}).
fn vandermonde_density(n: usize) -> MultiLaurent {
    let mut acc = MultiLaurent::one(n);
    for j in 0..n {
        for k in j + 1..n {
            let unit = |i: usize, e: i64| {
                let mut v = vec![0; n];
                v[i] = e;
                v
            };
            let mut factor = MultiLaurent::zero(n);
            // (z_j − z_k)(1/z_j − 1/z_k) = 2 − z_j/z_k − z_k/z_j
            factor.add_term(vec![0; n], Scalar::int(2));
            let mut a = unit(j, 1);
            a[k] = -1;
            factor.add_term(a, Scalar::int(-1));
            let mut b = unit(k, 1);
            b[j] = -1;
            factor.add_term(b, Scalar::int(-1));
            acc = acc.mul(&factor);
        }
    }
    acc
}

fn finite_symbol(f: &SymbolSpec) -> Result<LaurentPoly> {
    let poly = as_laurent(f)?;
    if let Some((lo, hi)) = poly.support() {
        if hi - lo > MAX_SUPPORT_WIDTH {
            return Err(Error::OracleCap(format!("support width {} exceeds {MAX_SUPPORT_WIDTH}", hi - lo)));
        }
    }
    Ok(poly)
}

/// (1/N!)·CT[s_λ(z) s_μ(z^{-1}) ∏ f(z_j) ∏_{j<k}|z_j − z_k|²], with d_k the
/// coefficient of z^k. The Schur insertions sit in the orientation that
/// reproduces det(d_{j−λ_j−k+μ_k}).
pub fn heine_integral(f: &SymbolSpec, lambda: &Partition, mu: &Partition, n: usize) -> Result<Scalar> {
    let cap = oracle_cap();
    if n > cap {
        return Err(Error::OracleCap(format!("N = {n} exceeds the oracle cap {cap} (TM_MAX_ORACLE_N)")));
    }
    if lambda.len() > n || mu.len() > n {
        return Err(Error::domain(format!("partitions longer than N = {n}")));
    }
    let symbol = finite_symbol(f)?;
    if n == 0 {
        return Ok(Scalar::one());
    }
    let inner = schur_poly(lambda, n, 1).mul(&schur_poly(mu, n, -1)).mul(&vandermonde_density(n));
    // CT[A·∏f(z_j)] = Σ_e A_e ∏_j d_{−e_j}: only the matching monomial of the
    // symbol product contributes, so it is never expanded in full
    let mut total = Scalar::zero();
    for (e, c) in inner.terms() {
        let mut w = c.clone();
        for &x in e {
            w = &w * &symbol.coeff(-x);
            if w.is_zero() {
                break;
            }
        }
        total = &total + &w;
    }
    total.div(&Scalar::Rational(factorial_gamma(n as u64)))
}

/// The Heine integral for φ_{γ,δ}.
pub fn morris_integral(gamma: u32, delta: u32, lambda: &Partition, mu: &Partition, n: usize) -> Result<Rational> {
    let v = heine_integral(&SymbolSpec::PureFH { gamma, delta }, lambda, mu, n)?;
    v.as_rational().cloned().ok_or_else(|| Error::domain("expected a rational value"))
}

/// CT[p(z)·q(z^{-1})·f(z)] with p, q given by coefficient lists (constant
/// term first). Only d_{−deg p} … d_{deg q} can contribute, so the symbol is
/// read on that window alone.
pub fn pairing(f: &SymbolSpec, p: &[Scalar], q: &[Scalar]) -> Result<Scalar> {
    let (dp, dq) = (p.len().saturating_sub(1) as i64, q.len().saturating_sub(1) as i64);
    let window = fourier_window(f, -dp, dq)?;
    let sym = LaurentPoly::from_coeffs(-dp, window.coeffs);
    let pp = LaurentPoly::from_coeffs(0, p.to_vec());
    let qq = LaurentPoly::from_coeffs(0, q.to_vec()).reflect();
    Ok(pp.mul(&qq).mul(&sym).constant_term())
}
