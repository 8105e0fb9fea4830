//! Large-N factors of Toeplitz minors: the character/Laguerre double sum,
//! the skew Schur sum, and exact convergence tables.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{centralizer_order, partitions_of, FrequencyForm, Partition};
use crate::scalar::{binomial, factorial_gamma, rat, to_decimal, Rational, Scalar};
use crate::symbols::{FactorKind, Orientation, SymbolSpec};
use crate::symfunc::{h_from_power_sums, skew_schur, skew_schur_from_h, Basis, CoefficientProfile, Specialization};
use crate::toeplitz::{minor_determinant, toeplitz_determinant};

type CharacterMemo = Mutex<HashMap<(Vec<usize>, Vec<usize>), i64>>;

fn character_memo() -> &'static CharacterMemo {
    static MEMO: OnceLock<CharacterMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn mn(lambda: &[usize], phi: &[usize]) -> i64 {
    if phi.is_empty() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.to_vec(), phi.to_vec());
    if let Some(&v) = character_memo().lock().expect("memo poisoned").get(&key) {
        return v;
    }
    let r = phi[0];
    let l = lambda.len();
    // beta numbers, strictly decreasing
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    let mut total = 0i64;
    for i in 0..l {
        if beta[i] < r {
            continue;
        }
        let b = beta[i] - r;
        if beta.contains(&b) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b && x < beta[i]).count();
        let mut nb = beta.clone();
        nb[i] = b;
        nb.sort_unstable_by(|a, c| c.cmp(a));
        let shape: Vec<usize> = nb.iter().enumerate().map(|(j, &x)| x - (l - 1 - j)).filter(|&p| p > 0).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&shape, &phi[1..]);
    }
    character_memo().lock().expect("memo poisoned").insert(key, total);
    total
}

/// χ^λ_φ by border-strip removal (largest part of φ first).
pub fn mn_character(lambda: &Partition, phi: &Partition) -> Result<Rational> {
    if lambda.weight() != phi.weight() {
        return Err(Error::domain(format!("|{lambda}| != |{phi}|")));
    }
    Ok(Rational::from_integer(BigInt::from(mn(lambda.parts(), phi.parts()))))
}

/// L_n^{(a)}(t) = Σ_r (−1)^r binom(n+a, n−r) t^r/r!.
pub fn laguerre(n: u64, a: i64, t: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    let mut tr = Scalar::one();
    for r in 0..=n {
        let c = binomial(n as i64 + a, (n - r) as i64) / factorial_gamma(r);
        let term = &tr * &Scalar::Rational(if r % 2 == 0 { c } else { -c });
        acc = &acc + &term;
        tr = &tr * t;
    }
    acc
}

/// Δ(f, φ, ψ): product over k of the two-case Laguerre expression.
pub fn delta_factor(profile: &CoefficientProfile, phi: &FrequencyForm, psi: &FrequencyForm) -> Result<Scalar> {
    let mut ks: Vec<usize> = phi.iter().map(|(k, _)| k).chain(psi.iter().map(|(k, _)| k)).collect();
    ks.sort_unstable();
    ks.dedup();
    let mut acc = Scalar::one();
    for k in ks {
        let (n, m) = (phi.multiplicity(k) as u64, psi.multiplicity(k) as u64);
        let ki = k as i64;
        let (cp, cm) = (profile.get(ki)?, profile.get(-ki)?);
        let arg = -(&(&Scalar::int(ki) * &cp) * &cm);
        let term = if n >= m {
            let pre = &Scalar::int(ki).pow(n as i64)? * &cm.pow((n - m) as i64)?;
            &(&pre * &Scalar::Rational(factorial_gamma(m))) * &laguerre(m, (n - m) as i64, &arg)
        } else {
            let pre = &Scalar::int(ki).pow(m as i64)? * &cp.pow((m - n) as i64)?;
            &(&pre * &Scalar::Rational(factorial_gamma(n))) * &laguerre(n, (m - n) as i64, &arg)
        };
        acc = &acc * &term;
    }
    Ok(acc)
}

/// Σ_{φ⊢|λ|} Σ_{ψ⊢|μ|} χ^λ_φ χ^μ_ψ z_φ^{-1} z_ψ^{-1} Δ(f, φ, ψ).
pub fn bd_sum(profile: &CoefficientProfile, lambda: &Partition, mu: &Partition) -> Result<Scalar> {
    let mut prof = profile.clone();
    prof.materialize(lambda.weight().max(mu.weight()) as i64)?;
    let phis = partitions_of(lambda.weight());
    let psis = partitions_of(mu.weight());
    let weights = |shape: &Partition, parts: &[Partition]| -> Result<Vec<(FrequencyForm, Rational)>> {
        parts
            .iter()
            .map(|p| Ok((p.frequency(), mn_character(shape, p)? / centralizer_order(&p.frequency()))))
            .filter(|r: &Result<(FrequencyForm, Rational)>| r.as_ref().map_or(true, |(_, w)| !w.is_zero()))
            .collect()
    };
    let wl = weights(lambda, &phis)?;
    let wm = weights(mu, &psis)?;
    let terms: Vec<Scalar> = wl
        .par_iter()
        .map(|(phi, a)| -> Result<Scalar> {
            let mut acc = Scalar::zero();
            for (psi, b) in &wm {
                let d = delta_factor(&prof, phi, psi)?;
                acc = &acc + &(&d * &Scalar::Rational(a * b));
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    Ok(terms.into_iter().sum())
}

/// Which generating function sits on each side of the symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideKinds {
    pub y: FactorKind,
    pub x: FactorKind,
}

impl Default for SideKinds {
    fn default() -> Self {
        SideKinds { y: FactorKind::H, x: FactorKind::H }
    }
}

fn basis(kind: FactorKind) -> Basis {
    match kind {
        FactorKind::H => Basis::H,
        FactorKind::E => Basis::E,
    }
}

/// Σ_{ν ⊆ λ∩μ} s_{λ/ν}(y) s_{μ/ν}(x), conjugating the indexing shapes on E sides.
pub fn skew_sum(lambda: &Partition, mu: &Partition, y: &Specialization, x: &Specialization, kinds: SideKinds) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for nu in lambda.subpartitions().into_iter().filter(|nu| mu.contains(nu)) {
        let a = skew_schur(lambda, &nu, y, basis(kinds.y))?;
        if a.is_zero() {
            continue;
        }
        acc = &acc + &(&a * &skew_schur(mu, &nu, x, basis(kinds.x))?);
    }
    Ok(acc)
}

/// The same sum evaluated from a c-profile alone: p_k(x) = k c_k,
/// p_k(y) = k c_{−k}, then h by Newton's identities.
pub fn skew_sum_from_profile(profile: &CoefficientProfile, lambda: &Partition, mu: &Partition) -> Result<Scalar> {
    let hx = h_table_from_profile(profile, mu.weight(), 1)?;
    let hy = h_table_from_profile(profile, lambda.weight(), -1)?;
    let mut acc = Scalar::zero();
    for nu in lambda.subpartitions().into_iter().filter(|nu| mu.contains(nu)) {
        let a = skew_schur_from_h(lambda, &nu, &hy, Basis::H)?;
        acc = &acc + &(&a * &skew_schur_from_h(mu, &nu, &hx, Basis::H)?);
    }
    Ok(acc)
}

fn h_table_from_profile(profile: &CoefficientProfile, max: usize, sign: i64) -> Result<Vec<Scalar>> {
    let p: Vec<Scalar> = (1..=max as i64)
        .map(|k| Ok(&profile.get(sign * k)? * &Scalar::int(k)))
        .collect::<Result<_>>()?;
    h_from_power_sums(&p, max)
}

/// bd_sum at the profile of (x, y) against the skew sum, exactly.
pub fn bd_equals_skew(lambda: &Partition, mu: &Partition, y: &Specialization, x: &Specialization) -> Result<bool> {
    let profile = CoefficientProfile::from_specializations(x.clone(), y.clone());
    let bd = bd_sum(&profile, lambda, mu)?;
    let sk = skew_sum(lambda, mu, y, x, SideKinds::default())?;
    Ok(bd.agrees(&sk))
}

/// Split a symbol into (y, x) variable sets with the kind of each side.
pub fn symbol_sides(f: &SymbolSpec) -> Result<(Specialization, Specialization, SideKinds)> {
    let factors = f
        .to_factors()
        .ok_or_else(|| Error::Unsupported("symbol has no finite factorization".into()))?;
    let side = |o: Orientation| -> Result<(Specialization, FactorKind)> {
        let fs: Vec<_> = factors.iter().filter(|fa| fa.orientation == o).collect();
        let kind = fs.first().map_or(FactorKind::H, |fa| fa.kind);
        if fs.iter().any(|fa| fa.kind != kind) {
            return Err(Error::Unsupported("mixed E and H factors on one side".into()));
        }
        let mut vals = Vec::new();
        for fa in fs {
            vals.extend(fa.spec.values()?);
        }
        Ok((Specialization::Finite(vals), kind))
    };
    let (y, ky) = side(Orientation::ZInv)?;
    let (x, kx) = side(Orientation::Z)?;
    Ok((y, x, SideKinds { y: ky, x: kx }))
}

/// Limit of D_N^{λ,μ}/D_N predicted by the skew sum for a factored symbol.
pub fn limit_target(f: &SymbolSpec, lambda: &Partition, mu: &Partition) -> Result<Scalar> {
    let (y, x, kinds) = symbol_sides(f)?;
    skew_sum(lambda, mu, &y, &x, kinds)
}

#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub n: usize,
    pub minor: Scalar,
    pub determinant: Scalar,
    /// `None` when D_N vanishes.
    pub ratio: Option<Scalar>,
    pub target: Scalar,
    pub abs_error: Option<Rational>,
}

pub fn convergence_table(
    f: &SymbolSpec,
    lambda: &Partition,
    mu: &Partition,
    ns: impl IntoIterator<Item = usize>,
) -> Result<Vec<ConvergenceRow>> {
    let target = limit_target(f, lambda, mu)?;
    let ns: Vec<usize> = ns.into_iter().collect();
    ns.par_iter()
        .map(|&n| {
            let minor = minor_determinant(f, n, lambda, mu)?;
            let determinant = toeplitz_determinant(f, n)?;
            let ratio = if determinant.is_zero() { None } else { Some(minor.div(&determinant)?) };
            let abs_error = match (&ratio, &target) {
                (Some(Scalar::Rational(r)), Scalar::Rational(t)) => Some((r - t).abs()),
                _ => None,
            };
            Ok(ConvergenceRow { n, minor, determinant, ratio, target: target.clone(), abs_error })
        })
        .collect()
}

fn cell(x: &Scalar) -> String {
    match x {
        Scalar::Rational(r) => crate::scalar::format_rational(r),
        s => s.to_json().to_string(),
    }
}

/// CSV with exact cells plus 12-digit decimal renderings.
pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("N,minor,determinant,ratio,target,abs_error,ratio_decimal,abs_error_decimal\n");
    for r in rows {
        let ratio = r.ratio.as_ref().map_or("NaN".to_string(), cell);
        let err = r.abs_error.as_ref().map_or(String::new(), crate::scalar::format_rational);
        let ratio_dec = match &r.ratio {
            Some(Scalar::Rational(x)) => to_decimal(x, 12),
            _ => String::new(),
        };
        let err_dec = r.abs_error.as_ref().map_or(String::new(), |e| to_decimal(e, 12));
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n,
            cell(&r.minor),
            cell(&r.determinant),
            ratio,
            cell(&r.target),
            err,
            ratio_dec,
            err_dec
        ));
    }
    out
}

/// The eight (λ, μ) shapes tabulated for the large-N factor.
pub fn table1_shapes() -> Vec<(Partition, Partition)> {
    let p = |v: &[usize]| Partition::new(v.to_vec()).expect("valid shape");
    vec![
        (p(&[]), p(&[1])),
        (p(&[]), p(&[2])),
        (p(&[]), p(&[1, 1])),
        (p(&[]), p(&[3])),
        (p(&[]), p(&[1, 1, 1])),
        (p(&[]), p(&[2, 2])),
        (p(&[1, 1]), p(&[1, 1])),
        (p(&[1]), p(&[3])),
    ]
}

#[derive(Clone, Debug)]
pub struct Table1Row {
    pub lambda: Partition,
    pub mu: Partition,
    pub bd: Scalar,
    pub skew: Scalar,
    pub equal: bool,
}

/// Every c_k with 1 ≤ k ≤ |μ| and c_{−k} with 1 ≤ k ≤ |λ| must be listed.
pub fn table1(profile: &CoefficientProfile) -> Result<Vec<Table1Row>> {
    table1_shapes()
        .into_iter()
        .map(|(lambda, mu)| {
            let needed = (1..=mu.weight() as i64).chain((1..=lambda.weight() as i64).map(|k| -k));
            for k in needed {
                if !profile.entries().contains_key(&k) {
                    return Err(Error::domain(format!("profile is missing c_{k}")));
                }
            }
            let bd = bd_sum(profile, &lambda, &mu)?;
            let skew = skew_sum_from_profile(profile, &lambda, &mu)?;
            let equal = bd.agrees(&skew);
            Ok(Table1Row { lambda, mu, bd, skew, equal })
        })
        .collect()
}

/// Σ_φ z_φ^{-1} χ^λ_φ χ^μ_φ, which is 1 when λ = μ and 0 otherwise.
pub fn character_inner_product(lambda: &Partition, mu: &Partition) -> Result<Rational> {
    if lambda.weight() != mu.weight() {
        return Ok(rat(0));
    }
    let mut acc = rat(0);
    for phi in partitions_of(lambda.weight()) {
        acc += mn_character(lambda, &phi)? * mn_character(mu, &phi)? / centralizer_order(&phi.frequency());
    }
    Ok(acc)
}
