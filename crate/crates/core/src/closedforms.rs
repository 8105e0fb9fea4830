//! Explicit evaluations: tridiagonal/Chebyshev, pure Fisher–Hartwig, their
//! q-analogs, and the large-N forms.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::params::Params;
use crate::partitions::Partition;
use crate::scalar::{barnes_g, binomial, factorial_gamma, q_barnes, q_binomial, q_gamma, q_pochhammer, rat, Rational, Scalar};
use crate::symbols::SymbolSpec;
use crate::symfunc::{schur_at_ones, skew_schur, Basis, Specialization};
use crate::toeplitz::{exact_inverse, minor_determinant, toeplitz_determinant, toeplitz_matrix};

fn g(n: i64) -> Result<Rational> {
    barnes_g(n)
}

/// Γ(n) for a positive integer.
fn gamma(n: i64) -> Rational {
    factorial_gamma((n - 1) as u64)
}

fn q_pow(q: &Scalar, e: i64) -> Result<Scalar> {
    q.pow(e)
}

/// U_n(c) by the three-term recurrence.
pub fn chebyshev_u(n: usize, c: &Scalar) -> Scalar {
    let two_c = &Scalar::int(2) * c;
    let (mut prev, mut cur) = (Scalar::one(), two_c.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&two_c * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// S_m = Σ_{r=0}^{m} (xy)^r; zero for m < 0.
fn geometric(xy: &Scalar, m: i64) -> Scalar {
    let mut acc = Scalar::zero();
    let mut p = Scalar::one();
    for _ in 0..=m {
        acc = &acc + &p;
        p = &p * xy;
    }
    acc
}

/// D_N of the tridiagonal symbol E(y; z^{-1}) E(x; z).
pub fn tridiag_det(x: &Scalar, y: &Scalar, n: usize) -> Scalar {
    geometric(&(x * y), n as i64)
}

/// Radical-free inverse of the tridiagonal Toeplitz matrix.
pub fn tridiag_inverse(x: &Scalar, y: &Scalar, n: usize) -> Result<ExactMatrix> {
    let xy = x * y;
    let s_n = geometric(&xy, n as i64);
    if s_n.is_zero() {
        return Err(Error::Singular("0".into()));
    }
    let n = n as i64;
    ExactMatrix::try_from_fn(n as usize, n as usize, |a, b| {
        let (j, k) = (a as i64 + 1, b as i64 + 1);
        let sign = Scalar::int(if (j + k) % 2 == 0 { 1 } else { -1 });
        let (lo, hi, side) = if j <= k { (j, k, y.pow(k - j)?) } else { (k, j, x.pow(j - k)?) };
        let num = &(&sign * &side) * &(&geometric(&xy, lo - 1) * &geometric(&xy, n - hi));
        num.div(&s_n)
    })
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// The Chebyshev form of the inverse, available when xy is a nonzero
/// rational square. Used as a redundant check.
pub fn tridiag_inverse_chebyshev(x: &Rational, y: &Rational, n: usize) -> Result<Option<ExactMatrix>> {
    let xy = x * y;
    let s = match rational_sqrt(&xy) {
        Some(s) if !s.is_zero() => Scalar::Rational(s),
        _ => return Ok(None),
    };
    let c = (Scalar::one() + Scalar::Rational(xy)).div(&(&Scalar::int(2) * &s))?;
    let u_n = chebyshev_u(n, &c);
    if u_n.is_zero() {
        return Err(Error::Singular("0".into()));
    }
    let (xs, ys) = (Scalar::Rational(x.clone()), Scalar::Rational(y.clone()));
    let n = n as i64;
    let m = ExactMatrix::try_from_fn(n as usize, n as usize, |a, b| {
        let (j, k) = (a as i64 + 1, b as i64 + 1);
        let sign = Scalar::int(if (j + k) % 2 == 0 { 1 } else { -1 });
        let (lo, hi, side) = if j <= k { (j, k, ys.pow(k - j)?) } else { (k, j, xs.pow(j - k)?) };
        let scale = s.pow(hi - lo + 1)?;
        let us = &chebyshev_u((lo - 1) as usize, &c) * &chebyshev_u((n - hi) as usize, &c);
        (&(&sign * &side) * &us).div(&(&scale * &u_n))
    })?;
    Ok(Some(m))
}

/// s_{(N,j)/(k)}(x, 1/y) = x^{−k} y^{−(N+j)} S_{min(j,k)} Σ_{r=max(j,k)}^{N} (xy)^r.
pub fn two_row_skew(n: usize, j: usize, k: usize, x: &Scalar, y: &Scalar) -> Result<Scalar> {
    if y.is_zero() {
        return Err(Error::domain("y must be nonzero"));
    }
    if n < 1 || j > n || k > n {
        return Err(Error::domain(format!("need 0 <= j, k <= N and N >= 1, got N={n}, j={j}, k={k}")));
    }
    let xy = x * y;
    let (n, j, k) = (n as i64, j as i64, k as i64);
    let low = geometric(&xy, j.min(k));
    let high = &geometric(&xy, n) - &geometric(&xy, j.max(k) - 1);
    let pre = &x.pow(-k)? * &y.pow(-(n + j))?;
    Ok(&pre * &(&low * &high))
}

/// D_N of the pure Fisher–Hartwig symbol via Barnes G.
pub fn fh_determinant(gamma_: u32, delta: u32, n: usize) -> Result<Rational> {
    let (c, d, n) = (gamma_ as i64, delta as i64, n as i64);
    Ok(g(n + 1)? * g(c + d + n + 1)? / g(c + d + 1)? * g(c + 1)? / g(c + n + 1)? * g(d + 1)? / g(d + n + 1)?)
}

/// Entrywise inverse of T_N(φ_{γ,δ}).
pub fn dr_inverse(gamma_: u32, delta: u32, n: usize) -> Result<ExactMatrix> {
    if gamma_ == 0 || delta == 0 {
        return Err(Error::domain("dr_inverse needs positive gamma and delta"));
    }
    let (c, d, n) = (gamma_ as i64, delta as i64, n as i64);
    Ok(ExactMatrix::from_fn(n as usize, n as usize, |a, b| {
        let (j, k) = (a as i64 + 1, b as i64 + 1);
        let mut sum = rat(0);
        for r in j.max(k)..=n {
            sum += gamma(r) / gamma(c + d + r) * binomial(c + r - k - 1, r - k) * binomial(d + r - j - 1, r - j);
        }
        let v = gamma(c + j) * gamma(d + k) / (gamma(j) * gamma(k)) * sum;
        Scalar::Rational(if (j + k) % 2 == 0 { v } else { -v })
    }))
}

/// T_N((1−z)^γ) M_{γ+δ} T_N((1−z^{-1})^δ) against the scaled M_δ T_N(φ) M_γ.
/// The symbol is taken with signed coefficients (−1)^k d_k, i.e. the
/// diagonal-sign conjugate of the stored φ_{γ,δ}.
pub fn verify_duduchava_roch(gamma_: u32, delta: u32, n: usize) -> Result<bool> {
    if gamma_ == 0 || delta == 0 {
        return Err(Error::domain("verify_duduchava_roch needs positive gamma and delta"));
    }
    let (c, d) = (gamma_ as i64, delta as i64);
    let sign = |k: i64| if k.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
    let lower = ExactMatrix::from_fn(n, n, |j, k| {
        let m = j as i64 - k as i64;
        Scalar::Rational(sign(m) * binomial(c, m))
    });
    let upper = ExactMatrix::from_fn(n, n, |j, k| {
        let m = k as i64 - j as i64;
        Scalar::Rational(sign(m) * binomial(d, m))
    });
    let diag = |a: i64| ExactMatrix::from_fn(n, n, |j, k| {
        if j == k {
            Scalar::Rational(binomial(a + j as i64, j as i64))
        } else {
            Scalar::zero()
        }
    });
    let lhs = lower.mul(&diag(c + d))?.mul(&upper)?;
    let fh = toeplitz_matrix(&SymbolSpec::PureFH { gamma: gamma_, delta }, n)?;
    let signed = ExactMatrix::from_fn(n, n, |j, k| &Scalar::Rational(sign(j as i64 - k as i64)) * fh.get(j, k));
    let scale = gamma(c + 1) * gamma(d + 1) / gamma(c + d + 1);
    let rhs = diag(d).mul(&signed)?.mul(&diag(c))?.scale(&Scalar::Rational(scale));
    Ok(lhs.agrees(&rhs))
}

fn check_evskew_domain(n: usize, d: usize, j: usize, k: usize, m: usize) -> Result<()> {
    if j > n || k > n {
        return Err(Error::domain(format!("need j, k <= N, got N={n}, j={j}, k={k}")));
    }
    if !(m > d || (m == d && j == 0)) {
        return Err(Error::domain(format!("need M > d (or M >= d with j = 0), got M={m}, d={d}")));
    }
    Ok(())
}

/// s_{(N^d, j)/(k)}(1^M).
pub fn evskew_fh(n: usize, d: usize, j: usize, k: usize, m: usize) -> Result<Rational> {
    check_evskew_domain(n, d, j, k, m)?;
    let (n, d, j, k, m) = (n as i64, d as i64, j as i64, k as i64, m as i64);
    let pre = g(n + 2)? * g(m + n + 2)? / g(m + 1)? * g(m - d + 1)? / g(m - d + n + 2)? * g(d + 1)? / g(d + n + 2)?
        * gamma(m - d + j + 1)
        / gamma(j + 1)
        * gamma(d + k + 1)
        / gamma(k + 1);
    let mut sum = rat(0);
    for r in j.max(k)..=n {
        sum += gamma(r + 1) / gamma(m + r + 1) * binomial(m - d + r - k - 1, r - k) * binomial(d + r - j - 1, r - j);
    }
    Ok(pre * sum)
}

/// D_N^{∅,μ}(φ_{γ,δ}) from the single-polynomial product formula, M = l(μ).
pub fn fh_minor_single(mu: &Partition, gamma_: u32, delta: u32, n: usize) -> Result<Rational> {
    let m = mu.len();
    if m > n {
        return Err(Error::domain(format!("l(mu) = {m} exceeds N = {n}")));
    }
    let conj = mu.conjugate();
    // s_{μ'}(1^γ) vanishes once μ' has more than γ rows
    if conj.len() > gamma_ as usize {
        return Ok(rat(0));
    }
    let s = schur_at_ones(&conj, gamma_ as usize)?;
    let (d, n_, m_) = (delta as i64, n as i64, m as i64);
    let mut v = fh_determinant(gamma_, delta, n)? * g(n_ - m_ + 1)? / g(n_ + 1)? * g(d + n_ + 1)? / g(d + n_ - m_ + 1)? * s;
    for (k, &part) in mu.parts().iter().enumerate() {
        let a = part as i64 + n_ - (k as i64 + 1);
        v = v * gamma(a + 1) / gamma(d + a + 1);
    }
    Ok(v)
}

/// a(a−1)…(a−n+1).
fn falling(a: i64, n: i64) -> Rational {
    (0..n).fold(rat(1), |acc, i| acc * rat(a - i))
}

/// 1/Γ(n), which vanishes at the poles n ≤ 0.
fn rgamma(n: i64) -> Rational {
    if n <= 0 {
        rat(0)
    } else {
        rat(1) / gamma(n)
    }
}

/// The reduced matrix left after pulling the row factors
/// Γ(γ+δ+1)/Γ(γ−μ_N+N−j+1) and column factors 1/Γ(δ+μ_k+N−k+1) out of the
/// minor; every entry is a product of two falling factorials, so it stays
/// finite at integer γ. `mu` must have exactly N entries (zeros allowed).
pub fn detcomp_matrix(gamma_: i64, delta: i64, mu: &[usize]) -> ExactMatrix {
    let n = mu.len() as i64;
    let last = mu.last().copied().unwrap_or(0) as i64;
    ExactMatrix::from_fn(mu.len(), mu.len(), |a, b| {
        let (j, k) = (a as i64 + 1, b as i64 + 1);
        let mk = mu[b] as i64;
        Scalar::Rational(falling(gamma_ - last + n - j, n - k + mk - last) * falling(delta + mk + n - k, n - j))
    })
}

/// Column and row factors extracted after one reduction step.
fn step_factors(gamma_: i64, delta: i64, mu: &[usize]) -> (Vec<Rational>, Vec<Rational>) {
    let n = mu.len() as i64;
    let last = mu[mu.len() - 1] as i64;
    let prev = if mu.len() >= 2 { mu[mu.len() - 2] as i64 } else { last };
    let cols = (1..n).map(|k| rat(gamma_ + delta + 1) * rat(mu[(k - 1) as usize] as i64 - last + n - k)).collect();
    // the factor with index N−j lands on row j
    let rows = (1..n).map(|j| falling(gamma_ - last + n - j - 1, prev - last)).collect();
    (cols, rows)
}

/// One literal reduction step on the reduced matrix: subtract
/// (δ+μ_N−N+1+j)·row_{j+1} from row_j, check the last column becomes the unit
/// vector, and check the leading block equals the extracted factors times the
/// reduced matrix for (N−1, δ+1, μ without its last part).
pub fn recursion_step_holds(gamma_: i64, delta: i64, mu: &[usize]) -> Result<bool> {
    let n = mu.len();
    if n == 0 {
        return Err(Error::domain("the step needs N >= 1"));
    }
    let a = detcomp_matrix(gamma_, delta, mu);
    let last = mu[n - 1] as i64;
    let mut rows = a.to_rows();
    for j in 0..n.saturating_sub(1) {
        let factor = Scalar::int(delta + last - n as i64 + 1 + (j as i64 + 1));
        let below = rows[j + 1].clone();
        for (x, b) in rows[j].iter_mut().zip(&below) {
            *x = &*x - &(&factor * b);
        }
    }
    let unit = (0..n).all(|j| rows[j][n - 1] == if j == n - 1 { Scalar::one() } else { Scalar::zero() });
    if !unit {
        return Ok(false);
    }
    let next = detcomp_matrix(gamma_, delta + 1, &mu[..n - 1]);
    let (cols, rws) = step_factors(gamma_, delta, mu);
    for j in 0..n - 1 {
        for k in 0..n - 1 {
            let want = &Scalar::Rational(&cols[k] * &rws[j]) * next.get(j, k);
            if rows[j][k] != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn detcomp_by_recursion(gamma_: i64, delta: i64, mu: &[usize]) -> Rational {
    if mu.is_empty() {
        return rat(1);
    }
    let (cols, rows) = step_factors(gamma_, delta, mu);
    let f: Rational = cols.iter().chain(rows.iter()).fold(rat(1), |acc, x| acc * x);
    f * detcomp_by_recursion(gamma_, delta + 1, &mu[..mu.len() - 1])
}

/// D_N^{∅,μ}(φ_{γ,δ}) by the row-reduction recursion on the reduced matrix.
pub fn fh_minor_via_recursion(mu: &Partition, gamma_: u32, delta: u32, n: usize) -> Result<Rational> {
    if mu.len() > n {
        return Err(Error::domain(format!("l(mu) = {} exceeds N = {n}", mu.len())));
    }
    let parts = mu.padded(n);
    let (c, d, n_) = (gamma_ as i64, delta as i64, n as i64);
    let last = parts.last().copied().unwrap_or(0) as i64;
    let mut pre = rat(1);
    for j in 1..=n_ {
        pre *= gamma(c + d + 1) * rgamma(c - last + n_ - j + 1);
    }
    for (k, &p) in parts.iter().enumerate() {
        pre /= gamma(d + p as i64 + n_ - k as i64);
    }
    Ok(pre * detcomp_by_recursion(c, d, &parts))
}

/// D_N(Θ_{γ,δ}) via q-Barnes functions; N = 0 gives 1.
pub fn q_theta_determinant(gamma_: u32, delta: u32, n: usize, q: &Scalar) -> Result<Scalar> {
    if n == 0 {
        return Ok(Scalar::one());
    }
    let (c, d, n) = (gamma_ as i64, delta as i64, n as i64);
    let num = &(&(&q_barnes(n + 1, q)? * &q_barnes(d + c + n + 1, q)?) * &q_barnes(d + 1, q)?) * &q_barnes(c + 1, q)?;
    let den = &(&q_barnes(d + c + 1, q)? * &q_barnes(d + n + 1, q)?) * &q_barnes(c + n + 1, q)?;
    num.div(&den)
}

/// s_{(N^d, j)/(k)}(1, q, …, q^{M−1}).
pub fn q_evskew(n: usize, d: usize, j: usize, k: usize, m: usize, q: &Scalar) -> Result<Scalar> {
    check_evskew_domain(n, d, j, k, m)?;
    let (n, d, j, k, m) = (n as i64, d as i64, j as i64, k as i64, m as i64);
    let gq = |x: i64| q_barnes(x, q);
    let num = &(&(&gq(n + 2)? * &gq(m + n + 2)?) * &gq(m - d + 1)?) * &gq(d + 1)?;
    let den = &(&gq(m + 1)? * &gq(m - d + n + 2)?) * &gq(d + n + 2)?;
    let pre = &q_pow(q, (d - 1) * j - d * k + d * (d - 1) * n / 2)? * &num.div(&den)?;
    let outer = (&q_gamma(m - d + j + 1, q)? * &q_gamma(d + k + 1, q)?).div(&(&q_gamma(j + 1, q)? * &q_gamma(k + 1, q)?))?;
    let mut sum = Scalar::zero();
    for r in j.max(k)..=n {
        let t = (&q_pow(q, r)? * &q_gamma(r + 1, q)?).div(&q_gamma(m + r + 1, q)?)?;
        let b = &q_binomial(m - d + r - k - 1, r - k, q)? * &q_binomial(d + r - j - 1, r - j, q)?;
        sum = &sum + &(&t * &b);
    }
    Ok(&pre * &(&outer * &sum))
}

/// D_N(Θ_δ); the symbol is infinite, so q must be a series.
pub fn theta_d_determinant(delta: u32, n: usize, q: &Scalar) -> Result<Scalar> {
    if !q.is_series() {
        return Err(Error::domain("theta_d_determinant needs q as a truncated series"));
    }
    if n == 0 {
        return Ok(Scalar::one());
    }
    let (d, n) = (delta as i64, n as i64);
    let one_minus = Scalar::one() - q.clone();
    let num = &q_barnes(d + 1, q)? * &q_barnes(n + 1, q)?;
    (&num * &one_minus.pow(-d * n)?).div(&q_barnes(d + n + 1, q)?)
}

/// s_{(N^d, j)/(k)}(1, q, q², …).
pub fn infinite_q_skew(n: usize, d: usize, j: usize, k: usize, q: &Scalar) -> Result<Scalar> {
    if j > n || k > n {
        return Err(Error::domain(format!("need j, k <= N, got N={n}, j={j}, k={k}")));
    }
    let (n, d, j, k) = (n as i64, d as i64, j as i64, k as i64);
    let one_minus = Scalar::one() - q.clone();
    let pre = &q_pow(q, (d - 1) * j - d * k + d * (d - 1) * n / 2)? * &one_minus.pow(-d * (n + 1))?;
    let gs = (&q_barnes(n + 2, q)? * &q_barnes(d + 1, q)?).div(&q_barnes(d + n + 2, q)?)?;
    let poch = q_pochhammer((d + k) as u64, q).div(&q_pochhammer(j as u64, q))?;
    let mut sum = Scalar::zero();
    for r in j.max(k)..=n {
        let t = &(&q_pow(q, r)? * &q_binomial(r, r - k, q)?) * &q_binomial(d + r - j - 1, r - j, q)?;
        sum = &sum + &t;
    }
    Ok(&(&pre * &gs) * &(&poch * &sum))
}

/// (q;q)_∞ truncated at the precision of a series q with positive valuation.
pub fn euler_function(q: &Scalar) -> Result<Scalar> {
    let (order, val) = match (q.precision(), q.valuation()) {
        (Some(o), Some(v)) if v >= 1 => (o, v),
        _ => return Err(Error::domain("(q;q)_inf needs q as a series with positive valuation")),
    };
    Ok(q_pochhammer((order / val).max(0) as u64, q))
}

/// Which large-N form to evaluate.
#[derive(Clone, Debug)]
pub enum AsymptoticKind {
    Tridiag { x: Scalar, y: Scalar, j: usize, k: usize },
    Fh { d: usize, j: usize, k: usize, m: usize },
    QPrincipal { d: usize, j: usize, k: usize, m: usize, q: Scalar },
    QInfinite { d: usize, j: usize, k: usize, q: Scalar },
}

/// The N-dependent part of a large-N form.
#[derive(Clone, Debug)]
pub enum Prefactor {
    /// y^{−N} D_N(E(y; z^{-1}) E(x; z)).
    TridiagDeterminant { x: Scalar, y: Scalar },
    /// N^exponent.
    PowerOfN { exponent: u64 },
    /// q^{constant + per_n·N}.
    PowerOfQ { q: Scalar, constant: i64, per_n: i64 },
}

impl Prefactor {
    pub fn at(&self, n: usize) -> Result<Scalar> {
        match self {
            Prefactor::TridiagDeterminant { x, y } => Ok(&y.pow(-(n as i64))? * &tridiag_det(x, y, n)),
            Prefactor::PowerOfN { exponent } => Scalar::int(n as i64).pow(*exponent as i64),
            Prefactor::PowerOfQ { q, constant, per_n } => q.pow(constant + per_n * n as i64),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Prefactor::TridiagDeterminant { x, y } => {
                json!({"kind": "y^-N*D_N", "x": x.to_json(), "y": y.to_json()})
            }
            Prefactor::PowerOfN { exponent } => json!({"kind": "N^e", "exponent": exponent}),
            Prefactor::PowerOfQ { q, constant, per_n } => {
                json!({"kind": "q^(a+b*N)", "q": q.to_json(), "a": constant, "b": per_n})
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct AsymptoticForm {
    pub factor: Scalar,
    pub prefactor: Prefactor,
}

pub fn asymptotic_forms(kind: &AsymptoticKind) -> Result<AsymptoticForm> {
    match kind {
        AsymptoticKind::Tridiag { x, y, j, k } => {
            let xy = x * y;
            if xy.is_zero() {
                return Err(Error::domain("xy must be nonzero"));
            }
            let inv = xy.inv()?;
            let factor = &(&x.pow(*j as i64)? * &y.pow(*k as i64)?) * &geometric(&inv, (*j).min(*k) as i64);
            Ok(AsymptoticForm { factor, prefactor: Prefactor::TridiagDeterminant { x: x.clone(), y: y.clone() } })
        }
        AsymptoticKind::Fh { d, j, k, m } => {
            if m <= d {
                return Err(Error::domain("need M > d"));
            }
            let (d, j, k, m) = (*d as i64, *j as i64, *k as i64, *m as i64);
            let mut sum = rat(0);
            for r in 0..=j.min(k) {
                sum += binomial(m - d + j - r - 1, j - r) * binomial(d + k - r - 1, k - r);
            }
            let factor = g(d + 1)? * g(m - d + 1)? / g(m + 1)? * sum;
            Ok(AsymptoticForm { factor: Scalar::Rational(factor), prefactor: Prefactor::PowerOfN { exponent: (d * (m - d)) as u64 } })
        }
        AsymptoticKind::QPrincipal { d, j, k, m, q } => {
            if m <= d {
                return Err(Error::domain("need M > d"));
            }
            let (d, j, k, m) = (*d as i64, *j as i64, *k as i64, *m as i64);
            let gs = (&q_barnes(d + 1, q)? * &q_barnes(m - d + 1, q)?).div(&q_barnes(m + 1, q)?)?;
            let scale = gs.div(&(Scalar::one() - q.clone()).pow(d * (m - d))?)?;
            let mut sum = Scalar::zero();
            for r in 0..=j.min(k) {
                let t = &(&q_pow(q, -r)? * &q_binomial(m - d + j - r - 1, j - r, q)?) * &q_binomial(d + k - r - 1, k - r, q)?;
                sum = &sum + &t;
            }
            Ok(AsymptoticForm {
                factor: &scale * &sum,
                prefactor: Prefactor::PowerOfQ { q: q.clone(), constant: q_exponent(d, j, k), per_n: d * (d - 1) / 2 },
            })
        }
        AsymptoticKind::QInfinite { d, j, k, q } => {
            let (d, j, k) = (*d as i64, *j as i64, *k as i64);
            let euler = euler_function(q)?;
            let scale = (&(Scalar::one() - q.clone()).pow(d * (d - 1) / 2)? * &q_barnes(d + 1, q)?).div(&euler.pow(d)?)?;
            let mut sum = Scalar::zero();
            for r in 0..=j.min(k) {
                let t = q_pow(q, -r)?.div(&q_pochhammer((j - r) as u64, q))?;
                sum = &sum + &(&t * &q_binomial(d + k - r - 1, k - r, q)?);
            }
            Ok(AsymptoticForm {
                factor: &scale * &sum,
                prefactor: Prefactor::PowerOfQ { q: q.clone(), constant: q_exponent(d, j, k), per_n: d * (d - 1) / 2 },
            })
        }
    }
}

/// N-independent part of the q exponent in the large-N forms.
fn q_exponent(d: i64, j: i64, k: i64) -> i64 {
    d * j - (d - 1) * k
}

/// A matrix, scalar or boolean result of a named formula.
#[derive(Clone, Debug)]
pub enum ClosedFormValue {
    Scalar(Scalar),
    Matrix(ExactMatrix),
    Bool(bool),
    Asymptotic(AsymptoticForm),
}

impl ClosedFormValue {
    pub fn to_json(&self) -> Value {
        match self {
            ClosedFormValue::Scalar(s) => s.to_json(),
            ClosedFormValue::Matrix(m) => {
                Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(Scalar::to_json).collect())).collect())
            }
            ClosedFormValue::Bool(b) => Value::Bool(*b),
            ClosedFormValue::Asymptotic(a) => json!({"factor": a.factor.to_json(), "prefactor": a.prefactor.to_json()}),
        }
    }

    fn agrees(&self, other: &ClosedFormValue) -> bool {
        match (self, other) {
            (ClosedFormValue::Scalar(a), ClosedFormValue::Scalar(b)) => a.agrees(b),
            (ClosedFormValue::Matrix(a), ClosedFormValue::Matrix(b)) => a.agrees(b),
            (ClosedFormValue::Bool(a), ClosedFormValue::Bool(b)) => a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClosedFormResult {
    pub value: ClosedFormValue,
    pub formula_id: String,
    pub parameters: Value,
}

pub const FORMULA_IDS: &[&str] = &[
    "chebyshev_u",
    "tridiag_det",
    "tridiag_inverse",
    "two_row_skew",
    "fh_determinant",
    "dr_inverse",
    "verify_duduchava_roch",
    "evskew_fh",
    "fh_minor_single",
    "fh_minor_via_recursion",
    "q_theta_determinant",
    "q_evskew",
    "theta_d_determinant",
    "infinite_q_skew",
    "asymptotic_forms",
];

fn asymptotic_kind(p: &Params) -> Result<AsymptoticKind> {
    Ok(match p.str("kind")? {
        "tridiag" => AsymptoticKind::Tridiag { x: p.scalar("x")?, y: p.scalar("y")?, j: p.usize("j")?, k: p.usize("k")? },
        "fh" => AsymptoticKind::Fh { d: p.usize("d")?, j: p.usize("j")?, k: p.usize("k")?, m: p.usize("M")? },
        "q_principal" => AsymptoticKind::QPrincipal {
            d: p.usize("d")?,
            j: p.usize("j")?,
            k: p.usize("k")?,
            m: p.usize("M")?,
            q: p.scalar("q")?,
        },
        "q_infinite" => AsymptoticKind::QInfinite { d: p.usize("d")?, j: p.usize("j")?, k: p.usize("k")?, q: p.scalar("q")? },
        other => return Err(Error::schema("kind", format!("unknown asymptotic kind `{other}`"))),
    })
}

/// Evaluate a formula by id from a JSON parameter object.
pub fn evaluate(formula_id: &str, params: &Value) -> Result<ClosedFormResult> {
    let p = Params::new(params)?;
    let r = |x: Rational| ClosedFormValue::Scalar(Scalar::Rational(x));
    let value = match formula_id {
        "chebyshev_u" => ClosedFormValue::Scalar(chebyshev_u(p.usize("n")?, &p.scalar("c")?)),
        "tridiag_det" => ClosedFormValue::Scalar(tridiag_det(&p.scalar("x")?, &p.scalar("y")?, p.usize("N")?)),
        "tridiag_inverse" => ClosedFormValue::Matrix(tridiag_inverse(&p.scalar("x")?, &p.scalar("y")?, p.usize("N")?)?),
        "two_row_skew" => ClosedFormValue::Scalar(two_row_skew(
            p.usize("N")?,
            p.usize("j")?,
            p.usize("k")?,
            &p.scalar("x")?,
            &p.scalar("y")?,
        )?),
        "fh_determinant" => r(fh_determinant(p.u32("gamma")?, p.u32("delta")?, p.usize("N")?)?),
        "dr_inverse" => ClosedFormValue::Matrix(dr_inverse(p.u32("gamma")?, p.u32("delta")?, p.usize("N")?)?),
        "verify_duduchava_roch" => ClosedFormValue::Bool(verify_duduchava_roch(p.u32("gamma")?, p.u32("delta")?, p.usize("N")?)?),
        "evskew_fh" => r(evskew_fh(p.usize("N")?, p.usize("d")?, p.usize("j")?, p.usize("k")?, p.usize("M")?)?),
        "fh_minor_single" => r(fh_minor_single(&p.partition("mu")?, p.u32("gamma")?, p.u32("delta")?, p.usize("N")?)?),
        "fh_minor_via_recursion" => {
            r(fh_minor_via_recursion(&p.partition("mu")?, p.u32("gamma")?, p.u32("delta")?, p.usize("N")?)?)
        }
        "q_theta_determinant" => ClosedFormValue::Scalar(q_theta_determinant(
            p.u32("gamma")?,
            p.u32("delta")?,
            p.usize("N")?,
            &p.scalar("q")?,
        )?),
        "q_evskew" => ClosedFormValue::Scalar(q_evskew(
            p.usize("N")?,
            p.usize("d")?,
            p.usize("j")?,
            p.usize("k")?,
            p.usize("M")?,
            &p.scalar("q")?,
        )?),
        "theta_d_determinant" => ClosedFormValue::Scalar(theta_d_determinant(p.u32("delta")?, p.usize("N")?, &p.scalar("q")?)?),
        "infinite_q_skew" => ClosedFormValue::Scalar(infinite_q_skew(
            p.usize("N")?,
            p.usize("d")?,
            p.usize("j")?,
            p.usize("k")?,
            &p.scalar("q")?,
        )?),
        "asymptotic_forms" => ClosedFormValue::Asymptotic(asymptotic_forms(&asymptotic_kind(&p)?)?),
        other => return Err(Error::schema("formula_id", format!("unknown formula `{other}`"))),
    };
    Ok(ClosedFormResult { value, formula_id: formula_id.to_string(), parameters: params.clone() })
}

/// Evaluate the same quantity without the closed form (matrix elimination or
/// Jacobi–Trudi). `None` when no independent computation applies.
pub fn direct(formula_id: &str, params: &Value) -> Result<Option<ClosedFormValue>> {
    let p = Params::new(params)?;
    let sc = ClosedFormValue::Scalar;
    let two_row = |n: usize, j: usize, k: usize| -> Result<(Partition, Partition)> {
        Ok((Partition::new(vec![n, j])?, Partition::new(vec![k])?))
    };
    let tall = |n: usize, d: usize, j: usize, k: usize| -> Result<(Partition, Partition)> {
        let mut parts = vec![n; d];
        parts.push(j);
        Ok((Partition::new(parts)?, Partition::new(vec![k])?))
    };
    Ok(Some(match formula_id {
        "tridiag_det" => sc(toeplitz_determinant(&SymbolSpec::Tridiagonal { x: p.scalar("x")?, y: p.scalar("y")? }, p.usize("N")?)?),
        "tridiag_inverse" => ClosedFormValue::Matrix(exact_inverse(
            &SymbolSpec::Tridiagonal { x: p.scalar("x")?, y: p.scalar("y")? },
            p.usize("N")?,
        )?),
        "two_row_skew" => {
            let (outer, inner) = two_row(p.usize("N")?, p.usize("j")?, p.usize("k")?)?;
            let vars = Specialization::Finite(vec![p.scalar("x")?, p.scalar("y")?.inv()?]);
            sc(skew_schur(&outer, &inner, &vars, Basis::H)?)
        }
        "fh_determinant" => sc(toeplitz_determinant(&SymbolSpec::PureFH { gamma: p.u32("gamma")?, delta: p.u32("delta")? }, p.usize("N")?)?),
        "dr_inverse" => ClosedFormValue::Matrix(exact_inverse(
            &SymbolSpec::PureFH { gamma: p.u32("gamma")?, delta: p.u32("delta")? },
            p.usize("N")?,
        )?),
        "evskew_fh" => {
            let (outer, inner) = tall(p.usize("N")?, p.usize("d")?, p.usize("j")?, p.usize("k")?)?;
            sc(skew_schur(&outer, &inner, &Specialization::ones(p.usize("M")?), Basis::H)?)
        }
        "fh_minor_single" | "fh_minor_via_recursion" => sc(minor_determinant(
            &SymbolSpec::PureFH { gamma: p.u32("gamma")?, delta: p.u32("delta")? },
            p.usize("N")?,
            &Partition::empty(),
            &p.partition("mu")?,
        )?),
        "q_theta_determinant" => sc(toeplitz_determinant(
            &SymbolSpec::ThetaGD { gamma: p.u32("gamma")?, delta: p.u32("delta")?, q: p.scalar("q")? },
            p.usize("N")?,
        )?),
        "q_evskew" => {
            let (outer, inner) = tall(p.usize("N")?, p.usize("d")?, p.usize("j")?, p.usize("k")?)?;
            let vars = Specialization::Principal { q: p.scalar("q")?, count: p.usize("M")? };
            sc(skew_schur(&outer, &inner, &vars, Basis::H)?)
        }
        "theta_d_determinant" => {
            sc(toeplitz_determinant(&SymbolSpec::ThetaD { delta: p.u32("delta")?, q: p.scalar("q")? }, p.usize("N")?)?)
        }
        "infinite_q_skew" => {
            let (outer, inner) = tall(p.usize("N")?, p.usize("d")?, p.usize("j")?, p.usize("k")?)?;
            sc(skew_schur(&outer, &inner, &Specialization::PrincipalInfinite { q: p.scalar("q")? }, Basis::H)?)
        }
        _ => return Ok(None),
    }))
}

/// Closed form against the direct computation; `None` when there is nothing
/// to compare with.
pub fn cross_check(formula_id: &str, params: &Value) -> Result<Option<bool>> {
    let closed = evaluate(formula_id, params)?;
    Ok(direct(formula_id, params)?.map(|d| closed.value.agrees(&d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_up_to;
    use crate::scalar::ratio;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn half() -> Scalar {
        Scalar::frac(1, 2)
    }

    #[test]
    fn chebyshev() {
        assert_eq!(chebyshev_u(0, &Scalar::int(7)), Scalar::one());
        assert_eq!(chebyshev_u(2, &Scalar::one()), Scalar::int(3));
        assert_eq!(chebyshev_u(3, &Scalar::one()), Scalar::int(4));
        let c = Scalar::frac(2, 5);
        assert_eq!(chebyshev_u(2, &c), &(&Scalar::int(4) * &c) * &c - Scalar::one());
        for n in 0..10 {
            assert_eq!(chebyshev_u(n, &Scalar::one()), Scalar::int(n as i64 + 1));
        }
    }

    #[test]
    fn tridiagonal() {
        assert_eq!(tridiag_det(&Scalar::one(), &Scalar::one(), 2), Scalar::int(3));
        assert_eq!(tridiag_det(&Scalar::zero(), &Scalar::int(5), 4), Scalar::one());
        assert_eq!(tridiag_det(&half(), &Scalar::frac(1, 3), 2), Scalar::frac(43, 36));
        let m = tridiag_inverse(&Scalar::one(), &Scalar::one(), 2).unwrap();
        let want = ExactMatrix::from_rows(vec![
            vec![Scalar::frac(2, 3), Scalar::frac(-1, 3)],
            vec![Scalar::frac(-1, 3), Scalar::frac(2, 3)],
        ])
        .unwrap();
        assert!(m.agrees(&want));
        let x = Scalar::frac(3, 7);
        let y = Scalar::frac(-2, 5);
        let one = tridiag_inverse(&x, &y, 1).unwrap();
        assert_eq!(*one.get(0, 0), (Scalar::one() + &x * &y).inv().unwrap());
        let m = tridiag_inverse(&half(), &Scalar::frac(1, 3), 2).unwrap();
        assert_eq!(*m.get(0, 1), Scalar::frac(-12, 43));
        let vals = [rat(1), ratio(1, 2), ratio(2, 3), ratio(-3, 4), rat(2)];
        for a in &vals {
            for b in &vals {
                for n in 1..=5 {
                    let (xs, ys) = (Scalar::Rational(a.clone()), Scalar::Rational(b.clone()));
                    let f = SymbolSpec::Tridiagonal { x: xs.clone(), y: ys.clone() };
                    assert_eq!(tridiag_det(&xs, &ys, n), toeplitz_determinant(&f, n).unwrap());
                    let inv = tridiag_inverse(&xs, &ys, n).unwrap();
                    assert!(inv.agrees(&exact_inverse(&f, n).unwrap()));
                    if let Some(ch) = tridiag_inverse_chebyshev(a, b, n).unwrap() {
                        assert!(ch.agrees(&inv));
                    }
                }
            }
        }
        assert!(tridiag_inverse_chebyshev(&rat(2), &rat(2), 3).unwrap().is_some());
        assert!(tridiag_inverse_chebyshev(&rat(2), &rat(1), 3).unwrap().is_none());
        assert!(tridiag_inverse(&Scalar::int(-1), &Scalar::one(), 1).is_err());
    }

    #[test]
    fn two_row() {
        let one = Scalar::one();
        assert_eq!(two_row_skew(2, 1, 1, &one, &one).unwrap(), Scalar::int(4));
        assert_eq!(two_row_skew(3, 2, 1, &one, &one).unwrap(), Scalar::int(4));
        assert!(two_row_skew(2, 1, 1, &one, &Scalar::zero()).is_err());
        let vals = [Scalar::one(), half(), Scalar::frac(2, 3)];
        for x in &vals {
            for y in &vals {
                for n in 1..=5 {
                    for j in 0..=n {
                        for k in 0..=n {
                            let params = json!({"N": n, "j": j, "k": k, "x": x.to_json(), "y": y.to_json()});
                            assert_eq!(cross_check("two_row_skew", &params).unwrap(), Some(true), "{params}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fisher_hartwig_determinant() {
        assert_eq!(fh_determinant(1, 1, 2).unwrap(), rat(3));
        assert_eq!(fh_determinant(0, 3, 4).unwrap(), rat(1));
        assert_eq!(fh_determinant(2, 0, 4).unwrap(), rat(1));
        assert_eq!(fh_determinant(1, 2, 2).unwrap(), rat(6));
        for c in 0..=4 {
            for d in 0..=4 {
                for n in 1..=6 {
                    let direct = toeplitz_determinant(&SymbolSpec::PureFH { gamma: c, delta: d }, n).unwrap();
                    assert_eq!(Scalar::Rational(fh_determinant(c, d, n).unwrap()), direct);
                }
            }
        }
    }

    #[test]
    fn duduchava_roch_inverse() {
        let m = dr_inverse(1, 1, 2).unwrap();
        assert_eq!(*m.get(0, 0), Scalar::frac(2, 3));
        assert_eq!(*dr_inverse(1, 1, 1).unwrap().get(0, 0), half());
        for c in 1..=3 {
            for d in 1..=3 {
                for n in 1..=5 {
                    let direct = exact_inverse(&SymbolSpec::PureFH { gamma: c, delta: d }, n).unwrap();
                    assert!(dr_inverse(c, d, n).unwrap().agrees(&direct), "{c} {d} {n}");
                    assert!(verify_duduchava_roch(c, d, n).unwrap(), "{c} {d} {n}");
                }
            }
        }
        assert!(dr_inverse(0, 1, 2).is_err());
    }

    #[test]
    fn evskew_examples() {
        assert_eq!(evskew_fh(1, 1, 0, 0, 3).unwrap(), rat(3));
        assert_eq!(evskew_fh(2, 1, 1, 1, 2).unwrap(), rat(4));
        assert_eq!(evskew_fh(2, 1, 1, 0, 3).unwrap(), rat(8));
        assert!(evskew_fh(2, 2, 1, 0, 2).is_err());
        assert!(evskew_fh(2, 1, 3, 0, 3).is_err());
        assert_eq!(evskew_fh(2, 2, 0, 1, 2).unwrap(), rat(2));
    }

    #[test]
    fn evskew_grid() {
        for n in 0..=5usize {
            for d in 0..=2usize {
                for m in d..=5usize {
                    for j in 0..=n {
                        for k in 0..=n {
                            if m == d && j > 0 {
                                continue;
                            }
                            let params = json!({"N": n, "d": d, "j": j, "k": k, "M": m});
                            assert_eq!(cross_check("evskew_fh", &params).unwrap(), Some(true), "{params}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_minor_examples() {
        assert_eq!(fh_minor_single(&Partition::empty(), 2, 3, 4).unwrap(), fh_determinant(2, 3, 4).unwrap());
        assert_eq!(fh_minor_single(&p(&[1]), 1, 1, 1).unwrap(), rat(1));
        assert_eq!(fh_minor_single(&p(&[1]), 1, 1, 2).unwrap(), rat(2));
        assert_eq!(fh_minor_via_recursion(&p(&[1]), 1, 1, 2).unwrap(), rat(2));
        assert_eq!(fh_minor_via_recursion(&Partition::empty(), 3, 2, 4).unwrap(), fh_determinant(3, 2, 4).unwrap());
        let direct = minor_determinant(&SymbolSpec::PureFH { gamma: 2, delta: 1 }, 3, &Partition::empty(), &p(&[2, 1])).unwrap();
        assert_eq!(Scalar::Rational(fh_minor_via_recursion(&p(&[2, 1]), 2, 1, 3).unwrap()), direct);
        assert!(fh_minor_single(&p(&[1, 1, 1]), 1, 1, 2).is_err());
    }

    #[test]
    fn single_minor_grid() {
        for mu in partitions_up_to(5) {
            for n in mu.len().max(1)..=5 {
                for c in 0..=3u32 {
                    for d in 0..=3u32 {
                        let direct = minor_determinant(&SymbolSpec::PureFH { gamma: c, delta: d }, n, &Partition::empty(), &mu).unwrap();
                        let single = fh_minor_single(&mu, c, d, n).unwrap();
                        let rec = fh_minor_via_recursion(&mu, c, d, n).unwrap();
                        assert_eq!(Scalar::Rational(single.clone()), direct, "{mu} {n} {c} {d}");
                        assert_eq!(single, rec, "{mu} {n} {c} {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn literal_step() {
        for mu in partitions_up_to(5) {
            for n in mu.len().max(1)..=5 {
                for c in -2..=6i64 {
                    for d in 0..=3i64 {
                        assert!(recursion_step_holds(c, d, &mu.padded(n)).unwrap(), "{mu} {n} {c} {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn q_determinants() {
        let q = half();
        assert_eq!(q_theta_determinant(1, 1, 1, &q).unwrap(), Scalar::frac(3, 2));
        assert_eq!(q_theta_determinant(2, 2, 0, &q).unwrap(), Scalar::one());
        for c in 1..=3 {
            for d in 1..=3 {
                for n in 1..=4 {
                    let f = SymbolSpec::ThetaGD { gamma: c, delta: d, q: q.clone() };
                    assert_eq!(q_theta_determinant(c, d, n, &q).unwrap(), toeplitz_determinant(&f, n).unwrap());
                }
            }
        }
        assert!(q_theta_determinant(1, 1, 2, &Scalar::one()).is_err());
        let qs = Scalar::formal(8);
        let d11 = theta_d_determinant(1, 1, &qs).unwrap();
        assert!(d11.agrees(&(Scalar::one() - qs.clone()).inv().unwrap()));
        assert_eq!(theta_d_determinant(2, 0, &qs).unwrap(), Scalar::one());
        for d in 1..=3 {
            for n in 1..=4 {
                let f = SymbolSpec::ThetaD { delta: d, q: qs.clone() };
                assert!(theta_d_determinant(d, n, &qs).unwrap().agrees(&toeplitz_determinant(&f, n).unwrap()));
            }
        }
        assert!(theta_d_determinant(1, 2, &q).is_err());
    }

    #[test]
    fn q_evskew_examples() {
        let q = half();
        assert_eq!(q_evskew(1, 1, 0, 0, 3, &q).unwrap(), Scalar::frac(7, 4));
        let direct = skew_schur(&p(&[2, 1]), &p(&[1]), &Specialization::Principal { q: q.clone(), count: 2 }, Basis::H).unwrap();
        assert_eq!(q_evskew(2, 1, 1, 1, 2, &q).unwrap(), direct);
        assert!(q_evskew(1, 1, 0, 0, 3, &Scalar::one()).is_err());
    }

    #[test]
    fn q_evskew_grid() {
        for n in 0..=5usize {
            for d in 0..=2usize {
                for m in d..=5usize {
                    for j in 0..=n {
                        for k in 0..=n {
                            if m == d && j > 0 {
                                continue;
                            }
                            let params = json!({"N": n, "d": d, "j": j, "k": k, "M": m, "q": "1/2"});
                            assert_eq!(cross_check("q_evskew", &params).unwrap(), Some(true), "{params}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn q_to_one_limit() {
        let q = Scalar::one_minus_eps(4);
        for n in 0..=3usize {
            for d in 0..=2usize {
                for m in d..=4usize {
                    for j in 0..=n {
                        for k in 0..=n {
                            if m == d && j > 0 {
                                continue;
                            }
                            let v = q_evskew(n, d, j, k, m, &q).unwrap();
                            assert_eq!(v.constant_term(), evskew_fh(n, d, j, k, m).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn infinite_skew() {
        let q = Scalar::formal(8);
        for n in 0..=3usize {
            for d in 0..=2usize {
                for j in 0..=n {
                    for k in 0..=n {
                        let params = json!({"N": n, "d": d, "j": j, "k": k, "q": q.to_json()});
                        assert_eq!(cross_check("infinite_q_skew", &params).unwrap(), Some(true), "{params}");
                    }
                }
            }
        }
        // hook-content product for s_{(2,1)}(1, q, q², …) = q/((1−q)^2(1−q^3))
        let v = infinite_q_skew(2, 1, 1, 0, &q).unwrap();
        let one_minus = Scalar::one() - q.clone();
        let hook = q.div(&(&one_minus.pow(2).unwrap() * &(Scalar::one() - q.pow(3).unwrap()))).unwrap();
        assert!(v.agrees(&hook));
        let v = infinite_q_skew(1, 1, 0, 0, &q).unwrap();
        assert!(v.agrees(&one_minus.inv().unwrap()));
    }

    #[test]
    fn asymptotic_examples() {
        let fh = asymptotic_forms(&AsymptoticKind::Fh { d: 1, j: 1, k: 0, m: 2 }).unwrap();
        assert_eq!(fh.factor, Scalar::one());
        assert_eq!(fh.prefactor.at(7).unwrap(), Scalar::int(7));
        let tri = asymptotic_forms(&AsymptoticKind::Tridiag { x: half(), y: Scalar::int(3), j: 0, k: 0 }).unwrap();
        assert_eq!(tri.factor, Scalar::one());
        let q = Scalar::formal(10);
        let qi = asymptotic_forms(&AsymptoticKind::QInfinite { d: 1, j: 0, k: 0, q: q.clone() }).unwrap();
        assert!(qi.factor.agrees(&euler_function(&q).unwrap().inv().unwrap()));
        // partitions generating function 1, 1, 2, 3, 5, 7, 11, ...
        let want = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (e, c) in want.iter().enumerate() {
            assert_eq!(qi.factor.as_series().unwrap().coeff(e as i64), rat(*c));
        }
        assert!(euler_function(&half()).is_err());
    }

    #[test]
    fn fh_asymptotics_converge() {
        // D_N^{(1^k),(1^j)}/D_N against the factor normalized by its j = k = 0 value
        for m in 2..=4usize {
            for d in 1..m {
                let base = asymptotic_forms(&AsymptoticKind::Fh { d, j: 0, k: 0, m }).unwrap().factor;
                for j in 0..=2usize {
                    for k in 0..=2usize {
                        let form = asymptotic_forms(&AsymptoticKind::Fh { d, j, k, m }).unwrap();
                        let f = form.factor.div(&base).unwrap().as_rational().unwrap().clone();
                        let errs: Vec<Rational> = (3..=9)
                            .map(|n| (evskew_fh(n, d, j, k, m).unwrap() / evskew_fh(n, d, 0, 0, m).unwrap() - &f).abs())
                            .collect();
                        assert!(errs.windows(2).all(|w| w[1] < w[0] || w[1].is_zero()), "d={d} j={j} k={k} M={m}: {errs:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn tridiag_asymptotics_converge() {
        // |x|, |y| < 1: the symbol has a Wiener–Hopf factorization
        let (x, y) = (Scalar::frac(1, 2), Scalar::frac(1, 3));
        for j in 0..=2usize {
            for k in 0..=2usize {
                let form = asymptotic_forms(&AsymptoticKind::Tridiag { x: x.clone(), y: y.clone(), j, k }).unwrap();
                let f = form.factor.as_rational().unwrap().clone();
                let errs: Vec<Rational> = (3..=9)
                    .map(|n| {
                        let v = two_row_skew(n, j, k, &x, &y).unwrap();
                        (v.div(&form.prefactor.at(n).unwrap()).unwrap().as_rational().unwrap() - &f).abs()
                    })
                    .collect();
                assert!(errs.windows(2).all(|w| w[1] <= w[0]), "j={j} k={k}: {errs:?}");
                assert!(errs.last().unwrap() < &ratio(1, 100), "j={j} k={k}: {errs:?}");
            }
        }
    }

    #[test]
    fn q_asymptotics_converge() {
        let q = half();
        for m in 2..=4usize {
            for d in 1..m {
                for j in 0..=2usize {
                    for k in 0..=2usize {
                        let form = asymptotic_forms(&AsymptoticKind::QPrincipal { d, j, k, m, q: q.clone() }).unwrap();
                        let f = form.factor.as_rational().unwrap().clone();
                        let err = |n: usize| {
                            let v = q_evskew(n, d, j, k, m, &q).unwrap().div(&form.prefactor.at(n).unwrap()).unwrap();
                            (v.as_rational().unwrap() - &f).abs()
                        };
                        assert!(err(40) < ratio(1, 1_000_000), "d={d} j={j} k={k} M={m}: {}", err(40));
                    }
                }
            }
        }
    }

    #[test]
    fn q_infinite_asymptotics_stabilize() {
        let q = Scalar::formal(8);
        for d in 1..=2usize {
            for j in 0..=2usize {
                for k in 0..=2usize {
                    let form = asymptotic_forms(&AsymptoticKind::QInfinite { d, j, k, q: q.clone() }).unwrap();
                    let n = 12;
                    let v = infinite_q_skew(n, d, j, k, &q).unwrap().div(&form.prefactor.at(n).unwrap()).unwrap();
                    assert!(v.agrees(&form.factor), "d={d} j={j} k={k}: {:?} vs {:?}", v.to_json(), form.factor.to_json());
                }
            }
        }
    }

    #[test]
    fn dispatch() {
        let r = evaluate("fh_determinant", &json!({"gamma": 1, "delta": 1, "N": 2})).unwrap();
        assert_eq!(r.value.to_json(), json!("3"));
        assert_eq!(cross_check("fh_determinant", &json!({"gamma": 1, "delta": 2, "N": 3})).unwrap(), Some(true));
        assert_eq!(cross_check("chebyshev_u", &json!({"n": 2, "c": "1"})).unwrap(), None);
        assert!(evaluate("nope", &json!({})).unwrap_err().is_schema());
        assert!(evaluate("fh_determinant", &json!({"gamma": 1})).unwrap_err().is_schema());
        assert!(!evaluate("evskew_fh", &json!({"N": 1, "d": 2, "j": 1, "k": 0, "M": 2})).unwrap_err().is_schema());
        for id in FORMULA_IDS {
            assert!(evaluate(id, &json!({})).is_err());
        }
    }
}
