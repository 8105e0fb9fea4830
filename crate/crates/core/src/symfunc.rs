//! Specializations of symmetric functions: h, e, p, Jacobi–Trudi skew Schur
//! evaluations and the c_k profile of a pair of variable sets.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::partitions::{partitions_up_to, Partition};
use crate::scalar::{barnes_g, format_rational, parse_rational, q_pochhammer, Rational, Scalar, TruncatedSeries};

/// A concrete (or formally graded) set of variables.
#[derive(Clone, Debug)]
pub enum Specialization {
    /// Explicit values x_1, …, x_n.
    Finite(Vec<Scalar>),
    /// (1, q, …, q^{count−1}).
    Principal { q: Scalar, count: usize },
    /// (q^start, …, q^{start+count−1}).
    PrincipalShifted { q: Scalar, start: i64, count: usize },
    /// (1, q, q², …).
    PrincipalInfinite { q: Scalar },
    /// x_i = a_i·t with t a series parameter known to t^order.
    Graded { weights: Vec<Rational>, order: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    H,
    E,
}

impl Specialization {
    pub fn empty() -> Self {
        Specialization::Finite(Vec::new())
    }

    pub fn rationals(values: &[Rational]) -> Self {
        Specialization::Finite(values.iter().cloned().map(Scalar::Rational).collect())
    }

    /// (1^n).
    pub fn ones(n: usize) -> Self {
        Specialization::Finite(vec![Scalar::one(); n])
    }

    pub fn graded(weights: Vec<Rational>, order: i64) -> Self {
        Specialization::Graded { weights, order }
    }

    /// The explicit list of values, when the set is finite.
    pub fn values(&self) -> Result<Vec<Scalar>> {
        match self {
            Specialization::Finite(v) => Ok(v.clone()),
            Specialization::Principal { q, count } => (0..*count as i64).map(|i| q.pow(i)).collect(),
            Specialization::PrincipalShifted { q, start, count } => {
                (0..*count as i64).map(|i| q.pow(start + i)).collect()
            }
            Specialization::Graded { weights, order } => {
                Ok(weights.iter().map(|a| Scalar::Series(TruncatedSeries::monomial(a.clone(), 1, *order))).collect())
            }
            Specialization::PrincipalInfinite { .. } => {
                Err(Error::Unsupported("infinite specialization has no finite value list".into()))
            }
        }
    }

    pub fn len(&self) -> Option<usize> {
        match self {
            Specialization::Finite(v) => Some(v.len()),
            Specialization::Principal { count, .. } | Specialization::PrincipalShifted { count, .. } => Some(*count),
            Specialization::Graded { weights, .. } => Some(weights.len()),
            Specialization::PrincipalInfinite { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Every variable carries at least one power of the grading parameter.
    pub fn is_graded(&self) -> bool {
        match self {
            Specialization::Graded { .. } => true,
            Specialization::Finite(v) => v
                .iter()
                .all(|x| x.is_zero() || (x.is_series() && x.valuation().is_some_and(|e| e >= 1))),
            _ => false,
        }
    }

    /// Lowest t-power any h_k or e_k with k ≥ 1 can carry, per unit of k.
    pub(crate) fn min_valuation(&self) -> Option<i64> {
        match self {
            Specialization::Finite(v) => v.iter().filter(|x| !x.is_zero()).map(|x| x.valuation().unwrap_or(0)).min(),
            Specialization::Graded { weights, .. } => weights.iter().any(|a| !a.is_zero()).then_some(1),
            Specialization::Principal { q, count } => {
                if *count == 0 {
                    None
                } else {
                    Some(0.min(q.valuation().unwrap_or(0) * (*count as i64 - 1)))
                }
            }
            Specialization::PrincipalShifted { q, start, count } => {
                let v = q.valuation().unwrap_or(0);
                if *count == 0 {
                    None
                } else {
                    Some((v * start).min(v * (start + *count as i64 - 1)))
                }
            }
            Specialization::PrincipalInfinite { .. } => Some(0),
        }
    }

    fn infinite_series_q(&self) -> Result<Scalar> {
        let Specialization::PrincipalInfinite { q } = self else {
            unreachable!("only called on infinite specializations")
        };
        match q {
            Scalar::Rational(_) => Err(Error::Unsupported(
                "h and e of an infinite principal specialization need q as a truncated series".into(),
            )),
            Scalar::Series(s) => {
                if s.valuation().is_none_or(|v| v < 1) {
                    return Err(Error::domain("infinite principal specialization needs q with valuation >= 1"));
                }
                Ok(q.clone())
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Specialization::Finite(v) => {
                json!({"kind": "finite", "values": v.iter().map(Scalar::to_json).collect::<Vec<_>>()})
            }
            Specialization::Principal { q, count } => json!({"kind": "principal", "q": q.to_json(), "count": count}),
            Specialization::PrincipalShifted { q, start, count } => {
                json!({"kind": "principal_shifted", "q": q.to_json(), "start": start, "count": count})
            }
            Specialization::PrincipalInfinite { q } => json!({"kind": "principal_infinite", "q": q.to_json()}),
            Specialization::Graded { weights, order } => json!({
                "kind": "graded",
                "weights": weights.iter().map(format_rational).collect::<Vec<_>>(),
                "order": order,
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::schema("spec.kind", "missing specialization kind"))?;
        let q = || -> Result<Scalar> {
            Scalar::from_json(v.get("q").ok_or_else(|| Error::schema("spec.q", "missing q"))?)
        };
        let count = || -> Result<usize> {
            v.get("count")
                .and_then(Value::as_u64)
                .map(|c| c as usize)
                .ok_or_else(|| Error::schema("spec.count", "expected a non-negative integer"))
        };
        match kind {
            "finite" => {
                let arr = v
                    .get("values")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::schema("spec.values", "expected an array"))?;
                Ok(Specialization::Finite(arr.iter().map(Scalar::from_json).collect::<Result<_>>()?))
            }
            "principal" => Ok(Specialization::Principal { q: q()?, count: count()? }),
            "principal_shifted" => {
                let start = v
                    .get("start")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| Error::schema("spec.start", "expected an integer"))?;
                Ok(Specialization::PrincipalShifted { q: q()?, start, count: count()? })
            }
            "principal_infinite" => Ok(Specialization::PrincipalInfinite { q: q()? }),
            "graded" => {
                let arr = v
                    .get("weights")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::schema("spec.weights", "expected an array"))?;
                let weights = arr
                    .iter()
                    .map(|w| match w {
                        Value::String(s) => parse_rational(s),
                        Value::Number(n) => n
                            .as_i64()
                            .map(|i| Rational::from_integer(i.into()))
                            .ok_or_else(|| Error::schema("spec.weights", "non-integer number")),
                        _ => Err(Error::schema("spec.weights", "expected rationals")),
                    })
                    .collect::<Result<_>>()?;
                let order = v
                    .get("order")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| Error::schema("spec.order", "expected an integer"))?;
                Ok(Specialization::Graded { weights, order })
            }
            other => Err(Error::schema("spec.kind", format!("unknown kind `{other}`"))),
        }
    }
}

/// h_0, …, h_max.
pub fn complete_h_table(x: &Specialization, max: usize) -> Result<Vec<Scalar>> {
    if let Specialization::PrincipalInfinite { .. } = x {
        let q = x.infinite_series_q()?;
        return (0..=max).map(|k| q_pochhammer(k as u64, &q).inv()).collect();
    }
    let mut h = vec![Scalar::zero(); max + 1];
    h[0] = Scalar::one();
    for xi in x.values()? {
        // h^{(j)}_k = h^{(j−1)}_k + x_j h^{(j)}_{k−1}
        for k in 1..=max {
            let add = &xi * &h[k - 1];
            h[k] = &h[k] + &add;
        }
    }
    Ok(h)
}

/// e_0, …, e_max.
pub fn elementary_e_table(x: &Specialization, max: usize) -> Result<Vec<Scalar>> {
    if let Specialization::PrincipalInfinite { .. } = x {
        let q = x.infinite_series_q()?;
        return (0..=max as i64)
            .map(|k| Ok(&q.pow(k * (k - 1) / 2)? * &q_pochhammer(k as u64, &q).inv()?))
            .collect();
    }
    let mut e = vec![Scalar::zero(); max + 1];
    e[0] = Scalar::one();
    for xi in x.values()? {
        for k in (1..=max).rev() {
            let add = &xi * &e[k - 1];
            e[k] = &e[k] + &add;
        }
    }
    Ok(e)
}

pub fn complete_h(k: i64, x: &Specialization) -> Result<Scalar> {
    if k < 0 {
        return Ok(Scalar::zero());
    }
    Ok(complete_h_table(x, k as usize)?.pop().expect("non-empty"))
}

pub fn elementary_e(k: i64, x: &Specialization) -> Result<Scalar> {
    if k < 0 {
        return Ok(Scalar::zero());
    }
    if x.len().is_some_and(|n| k as usize > n) {
        return Ok(Scalar::zero());
    }
    Ok(elementary_e_table(x, k as usize)?.pop().expect("non-empty"))
}

pub fn power_p(k: i64, x: &Specialization) -> Result<Scalar> {
    if k < 1 {
        return Err(Error::domain(format!("power sum index must be >= 1, got {k}")));
    }
    match x {
        Specialization::PrincipalInfinite { q } => {
            let qk = q.pow(k)?;
            if let Scalar::Rational(r) = q {
                if r.abs() >= Rational::one() {
                    return Err(Error::domain(format!("p_{k}(1, q, q^2, ...) diverges for q = {}", format_rational(r))));
                }
            } else if q.valuation().is_none_or(|v| v < 1) {
                return Err(Error::domain("infinite principal specialization needs q with valuation >= 1"));
            }
            (Scalar::one() - qk).inv()
        }
        _ => {
            let mut acc = Scalar::zero();
            for xi in x.values()? {
                acc = &acc + &xi.pow(k)?;
            }
            Ok(acc)
        }
    }
}

fn jacobi_trudi(mu: &Partition, lambda: &Partition, n: usize, table: &[Scalar]) -> Result<Scalar> {
    let entry = |i: usize, j: usize| -> Scalar {
        let idx = mu.get(i) as i64 - lambda.get(j) as i64 - i as i64 + j as i64;
        if idx < 0 {
            Scalar::zero()
        } else {
            table[idx as usize].clone()
        }
    };
    ExactMatrix::from_fn(n, n, entry).determinant()
}

/// s_{μ/λ}(x) (basis H) or s_{μ'/λ'}(x) (basis E), determinant size l(μ).
pub fn skew_schur(mu: &Partition, lambda: &Partition, x: &Specialization, basis: Basis) -> Result<Scalar> {
    skew_schur_n(mu, lambda, x, basis, mu.len())
}

/// As `skew_schur` with an explicit determinant size `n >= l(μ)`.
pub fn skew_schur_n(mu: &Partition, lambda: &Partition, x: &Specialization, basis: Basis, n: usize) -> Result<Scalar> {
    if n < mu.len() {
        return Err(Error::Precondition(format!("determinant size {n} is below l(mu) = {}", mu.len())));
    }
    if !mu.contains(lambda) {
        return Ok(Scalar::zero());
    }
    let max = mu.first() + n;
    let table = match basis {
        Basis::H => complete_h_table(x, max)?,
        Basis::E => elementary_e_table(x, max)?,
    };
    jacobi_trudi(mu, lambda, n, &table)
}

/// h_0..=h_max from power sums p_1..p_max via n·h_n = Σ_{i=1}^{n} p_i h_{n−i}.
/// `p[i]` holds p_{i+1}.
pub fn h_from_power_sums(p: &[Scalar], max: usize) -> Result<Vec<Scalar>> {
    if p.len() < max {
        return Err(Error::domain(format!("need p_1..p_{max}, got {} power sums", p.len())));
    }
    let mut h = vec![Scalar::one()];
    for n in 1..=max {
        let s: Scalar = (1..=n).map(|i| &p[i - 1] * &h[n - i]).sum();
        h.push(&s * &Scalar::frac(1, n as i64));
    }
    Ok(h)
}

/// s_{μ/λ} (basis H) or s_{μ'/λ'} (basis E) from a table of h_k values.
pub fn skew_schur_from_h(mu: &Partition, lambda: &Partition, h: &[Scalar], basis: Basis) -> Result<Scalar> {
    if !mu.contains(lambda) {
        return Ok(Scalar::zero());
    }
    match basis {
        Basis::H => {
            if h.len() < mu.weight() + 1 {
                return Err(Error::domain("h table too short"));
            }
            let table: Vec<Scalar> = (0..=mu.first() + mu.len()).map(|k| h.get(k).cloned().unwrap_or_else(Scalar::zero)).collect();
            jacobi_trudi(mu, lambda, mu.len(), &table)
        }
        Basis::E => skew_schur_from_h(&mu.conjugate(), &lambda.conjugate(), h, Basis::H),
    }
}

pub fn schur(mu: &Partition, x: &Specialization) -> Result<Scalar> {
    skew_schur(mu, &Partition::empty(), x, Basis::H)
}

/// s_μ(1^N) = ∏_{j<k}(μ_j − μ_k + k − j)/G(N+1).
pub fn schur_at_ones(mu: &Partition, n: usize) -> Result<Rational> {
    if mu.len() > n {
        return Err(Error::Precondition(format!("N = {n} is below l(mu) = {}", mu.len())));
    }
    let mut num = Rational::one();
    for j in 0..n {
        for k in j + 1..n {
            let v = mu.get(j) as i64 - mu.get(k) as i64 + (k - j) as i64;
            num *= Rational::from_integer(v.into());
        }
    }
    Ok(num / barnes_g(n as i64 + 1)?)
}

/// c_k = p_k(x)/k and c_{−k} = p_k(y)/k.
#[derive(Clone, Debug, Default)]
pub struct CoefficientProfile {
    entries: BTreeMap<i64, Scalar>,
    source: Option<(Specialization, Specialization)>,
}

impl CoefficientProfile {
    pub fn from_specializations(x: Specialization, y: Specialization) -> Self {
        CoefficientProfile { entries: BTreeMap::new(), source: Some((x, y)) }
    }

    /// Explicit values; unlisted indices read as zero.
    pub fn from_map(entries: BTreeMap<i64, Scalar>) -> Result<Self> {
        if entries.contains_key(&0) {
            return Err(Error::schema("profile", "c_0 is not part of a coefficient profile"));
        }
        Ok(CoefficientProfile { entries, source: None })
    }

    pub fn get(&self, k: i64) -> Result<Scalar> {
        if k == 0 {
            return Err(Error::domain("c_0 is not part of a coefficient profile"));
        }
        if let Some(v) = self.entries.get(&k) {
            return Ok(v.clone());
        }
        match &self.source {
            None => Ok(Scalar::zero()),
            Some((x, y)) => {
                let spec = if k > 0 { x } else { y };
                let p = power_p(k.abs(), spec)?;
                Ok(&p * &Scalar::frac(1, k.abs()))
            }
        }
    }

    /// Materialize c_{±1}, …, c_{±kmax}.
    pub fn materialize(&mut self, kmax: i64) -> Result<()> {
        for k in (-kmax..=kmax).filter(|&k| k != 0) {
            let v = self.get(k)?;
            self.entries.insert(k, v);
        }
        Ok(())
    }

    pub fn entries(&self) -> &BTreeMap<i64, Scalar> {
        &self.entries
    }
}

pub fn coefficient_profile(x: &Specialization, y: &Specialization, kmax: i64) -> Result<CoefficientProfile> {
    let mut p = CoefficientProfile::from_specializations(x.clone(), y.clone());
    p.materialize(kmax)?;
    Ok(p)
}

/// Cauchy identity and its dual, truncated at t-degree `d`.
pub fn cauchy_check(x: &Specialization, y: &Specialization, d: i64) -> Result<bool> {
    if !x.is_graded() || !y.is_graded() {
        return Err(Error::Precondition("cauchy_check needs graded specializations".into()));
    }
    let xs = x.values()?;
    let ys = y.values()?;
    let mut prod = Scalar::Series(TruncatedSeries::constant(Rational::one(), d));
    let mut dual = prod.clone();
    for a in &xs {
        for b in &ys {
            let ab = a * b;
            prod = &prod * &(Scalar::one() - ab.clone()).inv()?;
            dual = &dual * &(Scalar::one() + ab);
        }
    }
    let mut lhs = Scalar::Series(TruncatedSeries::zero(d));
    let mut lhs_dual = lhs.clone();
    for nu in partitions_up_to(d.max(0) as usize) {
        let sx = schur(&nu, x)?;
        lhs = &lhs + &(&sx * &schur(&nu, y)?);
        lhs_dual = &lhs_dual + &(&sx * &schur(&nu.conjugate(), y)?);
    }
    Ok(lhs.agrees_to(&prod, d) && lhs_dual.agrees_to(&dual, d))
}
