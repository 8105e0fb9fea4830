//! Γ, Barnes G, binomials and their q-analogs at integer arguments.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Rational, Scalar, TruncatedSeries};
use crate::error::{Error, Result};

/// Γ(n+1) = n!.
pub fn factorial_gamma(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

/// Barnes G at a positive integer: G(1) = 1, G(n+1) = Γ(n)·G(n).
pub fn barnes_g(n: i64) -> Result<Rational> {
    if n < 1 {
        return Err(Error::domain(format!("barnes_g needs n >= 1, got {n}")));
    }
    let mut g = BigInt::one();
    let mut fact = BigInt::one();
    // G(n) = ∏_{j=1}^{n-2} j!
    for j in 1..=(n - 2).max(0) {
        fact *= j;
        g *= &fact;
    }
    Ok(Rational::from_integer(g))
}

/// Generalized binomial a(a−1)…(a−b+1)/b!; zero for b < 0.
pub fn binomial(a: i64, b: i64) -> Rational {
    if b < 0 {
        return Rational::zero();
    }
    let mut num = BigInt::one();
    for i in 0..b {
        num *= a - i;
    }
    Rational::new(num, factorial_gamma(b as u64).to_integer())
}

fn is_rational_one(q: &Scalar) -> bool {
    q.as_rational().is_some_and(|r| r.is_one())
}

fn reject_q_one(q: &Scalar, what: &str) -> Result<()> {
    if is_rational_one(q) {
        return Err(Error::domain(format!(
            "{what} at rational q = 1 is a pole of the normalization; use a q = 1 - eps series"
        )));
    }
    Ok(())
}

/// [j]_q = 1 + q + … + q^{j−1}.
pub fn q_integer(j: u64, q: &Scalar) -> Scalar {
    if j == 0 {
        return Scalar::zero();
    }
    let mut acc = Scalar::one();
    for _ in 1..j {
        acc = &acc * q + Scalar::one();
    }
    acc
}

/// (q;q)_k = ∏_{j=1}^{k} (1 − q^j).
pub fn q_pochhammer(k: u64, q: &Scalar) -> Scalar {
    let mut acc = Scalar::one();
    let mut qj = Scalar::one();
    for _ in 1..=k {
        qj = &qj * q;
        acc = &acc * &(Scalar::one() - &qj);
    }
    acc
}

/// Γ_q(n) = (q;q)_{n−1}/(1−q)^{n−1}, evaluated as ∏ [j]_q so that no division
/// by (1 − q) happens.
pub fn q_gamma(n: i64, q: &Scalar) -> Result<Scalar> {
    if n < 1 {
        return Err(Error::domain(format!("q_gamma needs n >= 1, got {n}")));
    }
    reject_q_one(q, "q_gamma")?;
    Ok((1..n as u64).map(|j| q_integer(j, q)).product())
}

/// G_q(k+1) = ∏_{j=1}^{k−1} Γ_q(j+1).
pub fn q_barnes(n: i64, q: &Scalar) -> Result<Scalar> {
    if n < 1 {
        return Err(Error::domain(format!("q_barnes needs n >= 1, got {n}")));
    }
    reject_q_one(q, "q_barnes")?;
    let mut acc = Scalar::one();
    let mut gamma = Scalar::one();
    // Γ_q(j+1) accumulated incrementally
    for j in 1..(n - 1).max(1) {
        gamma = &gamma * &q_integer(j as u64, q);
        acc = &acc * &gamma;
    }
    Ok(acc)
}

type GaussianCache = Mutex<HashMap<(u64, u64), Vec<BigInt>>>;

fn gaussian_poly(a: u64, b: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<GaussianCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache poisoned").get(&(a, b)) {
        return p.clone();
    }
    // rows[k] holds [n choose k]_q while n runs from 0 to a
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    rows.extend((1..=b).map(|_| Vec::new()));
    for _n in 1..=a {
        for k in (1..=b as usize).rev() {
            // [n,k] = [n-1,k-1] + q^k [n-1,k]
            let mut next = rows[k - 1].clone();
            let shifted = &rows[k];
            if next.len() < shifted.len() + k {
                next.resize(shifted.len() + k, BigInt::zero());
            }
            for (i, c) in shifted.iter().enumerate() {
                next[i + k] += c;
            }
            rows[k] = next;
        }
    }
    let p = rows[b as usize].clone();
    cache.lock().expect("cache poisoned").insert((a, b), p.clone());
    p
}

fn eval_poly(p: &[BigInt], q: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.iter().rev() {
        acc = &acc * q + Scalar::Rational(Rational::from_integer(c.clone()));
    }
    acc
}

/// q-binomial [a choose b]_q; zero for b < 0 or 0 <= a < b. Negative `a` uses
/// the q-analog of upper negation.
pub fn q_binomial(a: i64, b: i64, q: &Scalar) -> Result<Scalar> {
    reject_q_one(q, "q_binomial")?;
    if b < 0 || (a >= 0 && b > a) {
        return Ok(Scalar::zero());
    }
    if b == 0 {
        return Ok(Scalar::one());
    }
    if a >= 0 {
        return Ok(eval_poly(&gaussian_poly(a as u64, b as u64), q));
    }
    let sign = if b % 2 == 0 { 1 } else { -1 };
    let e = a * b - b * (b - 1) / 2;
    let inner = eval_poly(&gaussian_poly((b - a - 1) as u64, b as u64), q);
    Ok(&(&Scalar::int(sign) * &q.pow(e)?) * &inner)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    InvertA,
}

/// Strict series arithmetic: both operands must carry the same order.
pub fn series_arith(a: &TruncatedSeries, b: &TruncatedSeries, op: SeriesOp) -> Result<TruncatedSeries> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    let order = a.order();
    match op {
        SeriesOp::Add => Ok(a.add(b)),
        SeriesOp::Mul => Ok(a.mul(b).truncate(order)),
        SeriesOp::InvertA => {
            if a.coeff(0).is_zero() {
                return Err(Error::NotInvertible("constant term is zero".into()));
            }
            Ok(a.inverse()?.truncate(order))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn r(s: &Scalar) -> Rational {
        s.as_rational().unwrap().clone()
    }

    #[test]
    fn factorials_and_barnes() {
        assert_eq!(factorial_gamma(0), rat(1));
        assert_eq!(factorial_gamma(3), rat(6));
        let oracle: u64 = (1..=6).product();
        assert_eq!(factorial_gamma(6), rat(oracle as i64));
        assert_eq!(barnes_g(1).unwrap(), rat(1));
        assert_eq!(barnes_g(4).unwrap(), rat(2));
        assert_eq!(barnes_g(6).unwrap(), rat(288));
        assert!(barnes_g(0).is_err());
        for n in 1..12 {
            let ratio = barnes_g(n + 1).unwrap() / barnes_g(n).unwrap();
            assert_eq!(ratio, factorial_gamma((n - 1) as u64));
        }
    }

    #[test]
    fn q_functions_at_half() {
        let q = Scalar::frac(1, 2);
        assert_eq!(r(&q_pochhammer(0, &q)), rat(1));
        assert_eq!(r(&q_pochhammer(2, &q)), ratio(3, 8));
        assert_eq!(r(&q_gamma(1, &q).unwrap()), rat(1));
        assert_eq!(r(&q_gamma(3, &q).unwrap()), ratio(3, 2));
        assert_eq!(r(&q_gamma(4, &q).unwrap()), ratio(21, 8));
        assert_eq!(r(&q_barnes(2, &q).unwrap()), rat(1));
        assert_eq!(r(&q_barnes(3, &q).unwrap()), rat(1));
        assert_eq!(r(&q_barnes(4, &q).unwrap()), ratio(3, 2));
        assert_eq!(r(&q_binomial(5, 0, &q).unwrap()), rat(1));
        assert_eq!(r(&q_binomial(2, 1, &q).unwrap()), ratio(3, 2));
        // independent oracle: ∏ (1 − q^{a−i})/(1 − q^{i+1}) = (1+q²)(1+q+q²) = 35/16
        let oracle = ratio(15, 16) * ratio(7, 8) / (ratio(1, 2) * ratio(3, 4));
        assert_eq!(r(&q_binomial(4, 2, &q).unwrap()), oracle);
        assert_eq!(oracle, ratio(35, 16));
        assert_eq!(r(&q_binomial(4, 1, &q).unwrap()), ratio(15, 8));
        assert!(q_gamma(2, &Scalar::one()).is_err());
    }

    #[test]
    fn q_gamma_matches_definition() {
        // (q;q)_k/(1-q)^k with division, against the product of q-integers
        for q in [ratio(1, 2), ratio(1, 3), ratio(2, 3)] {
            let qs = Scalar::Rational(q.clone());
            for k in 0..8u64 {
                let direct = q_pochhammer(k, &qs).div(&(Scalar::one() - &qs).pow(k as i64).unwrap()).unwrap();
                assert_eq!(q_gamma(k as i64 + 1, &qs).unwrap(), direct);
            }
        }
    }

    #[test]
    fn pochhammer_formal() {
        let q = Scalar::formal(3);
        let p = q_pochhammer(2, &q);
        assert_eq!(p.as_series().unwrap().nonnegative_coeffs(), vec![rat(1), rat(-1), rat(-1), rat(1)]);
    }

    #[test]
    fn q_to_one_limits() {
        let eps = Scalar::one_minus_eps(4);
        for n in 1..=12 {
            let g = q_gamma(n, &eps).unwrap();
            assert_eq!(g.constant_term(), factorial_gamma((n - 1) as u64));
            let gb = q_barnes(n, &eps).unwrap();
            assert_eq!(gb.constant_term(), barnes_g(n).unwrap());
        }
        for a in 0..8 {
            for b in 0..=a {
                assert_eq!(q_binomial(a, b, &eps).unwrap().constant_term(), binomial(a, b));
            }
        }
    }

    #[test]
    fn q_binomial_symmetry_and_negation() {
        let q = Scalar::frac(2, 3);
        for a in 0..9 {
            for b in 0..=a {
                assert_eq!(q_binomial(a, b, &q).unwrap(), q_binomial(a, a - b, &q).unwrap());
            }
        }
        // negative upper index against the product definition
        for a in -4..0i64 {
            for b in 0..4i64 {
                let mut prod = Scalar::one();
                for i in 0..b {
                    let num = Scalar::one() - q.pow(a - i).unwrap();
                    let den = Scalar::one() - q.pow(i + 1).unwrap();
                    prod = &prod * &num.div(&den).unwrap();
                }
                assert_eq!(q_binomial(a, b, &q).unwrap(), prod, "a={a} b={b}");
            }
        }
        assert_eq!(q_binomial(3, 5, &q).unwrap(), Scalar::zero());
        assert_eq!(q_binomial(3, -1, &q).unwrap(), Scalar::zero());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), rat(10));
        assert_eq!(binomial(7, -1), rat(0));
        assert_eq!(binomial(-1, 2), rat(1));
        assert_eq!(binomial(-3, 2), rat(6));
        assert_eq!(binomial(2, 5), rat(0));
    }

    #[test]
    fn series_arith_examples() {
        let one_minus_q = TruncatedSeries::new(vec![rat(1), rat(-1)], 3);
        let inv = series_arith(&one_minus_q, &one_minus_q, SeriesOp::InvertA).unwrap();
        assert_eq!(inv.nonnegative_coeffs(), vec![rat(1); 4]);
        let one_plus_q = TruncatedSeries::new(vec![rat(1), rat(1)], 3);
        let m = series_arith(&one_plus_q, &one_minus_q, SeriesOp::Mul).unwrap();
        assert_eq!(m.nonnegative_coeffs(), vec![rat(1), rat(0), rat(-1), rat(0)]);
        let fib = TruncatedSeries::new(vec![rat(1), rat(-1), rat(-1)], 4);
        let inv = series_arith(&fib, &fib, SeriesOp::InvertA).unwrap();
        assert_eq!(inv.nonnegative_coeffs(), [1, 1, 2, 3, 5].map(rat).to_vec());
        let other = TruncatedSeries::new(vec![rat(1)], 5);
        assert!(matches!(series_arith(&fib, &other, SeriesOp::Add), Err(Error::OrderMismatch(4, 5))));
        let noinv = TruncatedSeries::new(vec![rat(0), rat(1)], 3);
        assert!(matches!(series_arith(&noinv, &noinv, SeriesOp::InvertA), Err(Error::NotInvertible(_))));
    }
}
