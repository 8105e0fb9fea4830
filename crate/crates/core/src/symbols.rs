//! Symbols on the unit circle as products of E/H generating functions, and
//! exact extraction of their Fourier coefficients.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::{binomial, q_binomial, q_pochhammer, Scalar};
use crate::symfunc::{complete_h_table, elementary_e_table, Specialization};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Z,
    ZInv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// E(x; w) = ∏(1 + x_j w).
    E,
    /// H(x; w) = ∏ 1/(1 − x_j w).
    H,
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub orientation: Orientation,
    pub kind: FactorKind,
    pub spec: Specialization,
}

impl Factor {
    pub fn new(orientation: Orientation, kind: FactorKind, spec: Specialization) -> Self {
        Factor { orientation, kind, spec }
    }
}

#[derive(Clone, Debug)]
pub enum SymbolSpec {
    Factors(Vec<Factor>),
    /// E(1^δ; z^{-1}) E(1^γ; z).
    PureFH { gamma: u32, delta: u32 },
    /// d_k = [δ+γ choose δ+k]_q q^{k(k+1)/2}.
    ThetaGD { gamma: u32, delta: u32, q: Scalar },
    /// d_k = q^{kδ+k(k−1)/2}/(q;q)_{δ+k}, k ≥ −δ.
    ThetaD { delta: u32, q: Scalar },
    /// E(y; z^{-1}) E(x; z).
    Tridiagonal { x: Scalar, y: Scalar },
}

/// Materialized d_lo..=d_hi.
#[derive(Clone, Debug)]
pub struct FourierWindow {
    pub lo: i64,
    pub hi: i64,
    pub coeffs: Vec<Scalar>,
}

impl FourierWindow {
    pub fn get(&self, k: i64) -> Option<&Scalar> {
        if k < self.lo || k > self.hi {
            return None;
        }
        self.coeffs.get((k - self.lo) as usize)
    }
}

impl SymbolSpec {
    /// H(y; z^{-1}) H(x; z).
    pub fn hh(x: Specialization, y: Specialization) -> Self {
        SymbolSpec::Factors(vec![
            Factor::new(Orientation::ZInv, FactorKind::H, y),
            Factor::new(Orientation::Z, FactorKind::H, x),
        ])
    }

    /// E(y; z^{-1}) E(x; z).
    pub fn ee(x: Specialization, y: Specialization) -> Self {
        SymbolSpec::Factors(vec![
            Factor::new(Orientation::ZInv, FactorKind::E, y),
            Factor::new(Orientation::Z, FactorKind::E, x),
        ])
    }

    /// Equivalent flat factor list, where one exists.
    pub fn to_factors(&self) -> Option<Vec<Factor>> {
        match self {
            SymbolSpec::Factors(f) => Some(f.clone()),
            SymbolSpec::PureFH { gamma, delta } => Some(vec![
                Factor::new(Orientation::ZInv, FactorKind::E, Specialization::ones(*delta as usize)),
                Factor::new(Orientation::Z, FactorKind::E, Specialization::ones(*gamma as usize)),
            ]),
            SymbolSpec::ThetaGD { gamma, delta, q } => Some(vec![
                Factor::new(
                    Orientation::ZInv,
                    FactorKind::E,
                    Specialization::PrincipalShifted { q: q.clone(), start: 0, count: *delta as usize },
                ),
                Factor::new(
                    Orientation::Z,
                    FactorKind::E,
                    Specialization::PrincipalShifted { q: q.clone(), start: 1, count: *gamma as usize },
                ),
            ]),
            SymbolSpec::Tridiagonal { x, y } => Some(vec![
                Factor::new(Orientation::ZInv, FactorKind::E, Specialization::Finite(vec![y.clone()])),
                Factor::new(Orientation::Z, FactorKind::E, Specialization::Finite(vec![x.clone()])),
            ]),
            SymbolSpec::ThetaD { .. } => None,
        }
    }

    /// Exact support [lo, hi] when it is finite (graded cutoffs included).
    pub fn support(&self) -> Result<Option<(i64, i64)>> {
        Ok(match self {
            SymbolSpec::PureFH { gamma, delta } | SymbolSpec::ThetaGD { gamma, delta, .. } => {
                Some((-(*delta as i64), *gamma as i64))
            }
            SymbolSpec::Tridiagonal { .. } => Some((-1, 1)),
            SymbolSpec::ThetaD { .. } => None,
            SymbolSpec::Factors(f) => {
                let z = side_plan(f, Orientation::Z)?;
                let zi = side_plan(f, Orientation::ZInv)?;
                match (z.bound, zi.bound) {
                    (Some(a), Some(b)) => Some((-(b as i64), a as i64)),
                    _ => None,
                }
            }
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            SymbolSpec::PureFH { gamma, delta } => json!({"builtin": "pure_fh", "gamma": gamma, "delta": delta}),
            SymbolSpec::ThetaGD { gamma, delta, q } => {
                json!({"builtin": "theta_gd", "gamma": gamma, "delta": delta, "q": q.to_json()})
            }
            SymbolSpec::ThetaD { delta, q } => json!({"builtin": "theta_d", "delta": delta, "q": q.to_json()}),
            SymbolSpec::Tridiagonal { x, y } => json!({"builtin": "tridiagonal", "x": x.to_json(), "y": y.to_json()}),
            SymbolSpec::Factors(f) => json!({
                "factors": f.iter().map(|fa| json!({
                    "orientation": match fa.orientation { Orientation::Z => "z", Orientation::ZInv => "zinv" },
                    "kind": match fa.kind { FactorKind::E => "E", FactorKind::H => "H" },
                    "spec": fa.spec.to_json(),
                })).collect::<Vec<_>>()
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let uint = |field: &str| -> Result<u32> {
            v.get(field)
                .and_then(Value::as_u64)
                .map(|x| x as u32)
                .ok_or_else(|| Error::schema(format!("symbol.{field}"), "expected a non-negative integer"))
        };
        let scalar = |field: &str| -> Result<Scalar> {
            Scalar::from_json(v.get(field).ok_or_else(|| Error::schema(format!("symbol.{field}"), "missing"))?)
        };
        if let Some(b) = v.get("builtin") {
            let name = b.as_str().ok_or_else(|| Error::schema("symbol.builtin", "expected a string"))?;
            return match name {
                "pure_fh" => Ok(SymbolSpec::PureFH { gamma: uint("gamma")?, delta: uint("delta")? }),
                "theta_gd" => {
                    let (gamma, delta) = (uint("gamma")?, uint("delta")?);
                    if gamma == 0 || delta == 0 {
                        return Err(Error::schema("symbol", "theta_gd needs positive gamma and delta"));
                    }
                    Ok(SymbolSpec::ThetaGD { gamma, delta, q: scalar("q")? })
                }
                "theta_d" => {
                    let delta = uint("delta")?;
                    if delta == 0 {
                        return Err(Error::schema("symbol.delta", "theta_d needs positive delta"));
                    }
                    Ok(SymbolSpec::ThetaD { delta, q: scalar("q")? })
                }
                "tridiagonal" => Ok(SymbolSpec::Tridiagonal { x: scalar("x")?, y: scalar("y")? }),
                other => Err(Error::schema("symbol.builtin", format!("unknown builtin `{other}`"))),
            };
        }
        let arr = v
            .get("factors")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::schema("symbol", "expected `builtin` or `factors`"))?;
        let factors = arr
            .iter()
            .map(|f| {
                let orientation = match f.get("orientation").and_then(Value::as_str) {
                    Some("z") => Orientation::Z,
                    Some("zinv") => Orientation::ZInv,
                    _ => return Err(Error::schema("factor.orientation", "expected \"z\" or \"zinv\"")),
                };
                let kind = match f.get("kind").and_then(Value::as_str) {
                    Some("E") | Some("e") => FactorKind::E,
                    Some("H") | Some("h") => FactorKind::H,
                    _ => return Err(Error::schema("factor.kind", "expected \"E\" or \"H\"")),
                };
                let spec = Specialization::from_json(f.get("spec").ok_or_else(|| Error::schema("factor.spec", "missing"))?)?;
                Ok(Factor { orientation, kind, spec })
            })
            .collect::<Result<_>>()?;
        Ok(SymbolSpec::Factors(factors))
    }
}

/// How far one side's coefficient sequence has to be materialized.
struct SidePlan {
    /// Last index that can be nonzero (to the working precision), `None`
    /// when the side is genuinely infinite.
    bound: Option<usize>,
    /// Precision every coefficient is truncated to when a cutoff was used.
    cutoff_order: Option<i64>,
}

/// Per-factor lower bound on the valuation of the n-th coefficient, or
/// `None` when that coefficient is identically zero.
enum FactorGrowth {
    Finite { degree: usize, v: i64 },
    Linear { v: i64 },
    /// e_n of an infinite principal set: n(n−1)/2·v.
    Triangular { v: i64 },
    Unbounded,
}

fn spec_precision(spec: &Specialization) -> Option<i64> {
    match spec {
        Specialization::Finite(vals) => vals.iter().filter_map(Scalar::precision).min(),
        Specialization::Graded { order, .. } => Some(*order),
        Specialization::Principal { q, .. }
        | Specialization::PrincipalShifted { q, .. }
        | Specialization::PrincipalInfinite { q } => q.precision(),
    }
}

fn growth(f: &Factor) -> FactorGrowth {
    let spec = &f.spec;
    if let Specialization::PrincipalInfinite { q } = spec {
        let v = q.valuation().unwrap_or(0);
        return match (f.kind, q.is_series() && v >= 1) {
            (FactorKind::E, true) => FactorGrowth::Triangular { v },
            _ => FactorGrowth::Unbounded,
        };
    }
    let nonzero = spec.values().map(|v| v.iter().filter(|x| !x.is_zero()).count()).unwrap_or(0);
    let v = spec.min_valuation().unwrap_or(0);
    match f.kind {
        FactorKind::E => FactorGrowth::Finite { degree: nonzero, v },
        FactorKind::H if nonzero == 0 => FactorGrowth::Finite { degree: 0, v: 0 },
        FactorKind::H if v >= 1 => FactorGrowth::Linear { v },
        FactorKind::H => FactorGrowth::Unbounded,
    }
}

fn side_plan(factors: &[Factor], side: Orientation) -> Result<SidePlan> {
    let fs: Vec<&Factor> = factors.iter().filter(|f| f.orientation == side).collect();
    let growths: Vec<FactorGrowth> = fs.iter().map(|f| growth(f)).collect();
    if growths.iter().any(|g| matches!(g, FactorGrowth::Unbounded)) {
        return Ok(SidePlan { bound: None, cutoff_order: None });
    }
    let finite_total: usize = growths
        .iter()
        .map(|g| if let FactorGrowth::Finite { degree, .. } = g { *degree } else { 0 })
        .sum();
    let infinite = growths.iter().filter(|g| !matches!(g, FactorGrowth::Finite { .. })).count();
    if infinite == 0 {
        return Ok(SidePlan { bound: Some(finite_total), cutoff_order: None });
    }
    if growths.iter().any(|g| matches!(g, FactorGrowth::Finite { v, .. } if *v < 0)) {
        return Ok(SidePlan { bound: None, cutoff_order: None });
    }
    let order = match fs.iter().filter_map(|f| spec_precision(&f.spec)).min() {
        Some(o) => o,
        None => return Ok(SidePlan { bound: None, cutoff_order: None }),
    };
    // min-plus convolution of the per-factor lower bounds
    let limit = finite_total + (order.max(0) as usize + 2) * infinite;
    const INF: i64 = i64::MAX / 4;
    let mut lb = vec![INF; limit + 1];
    lb[0] = 0;
    for g in &growths {
        let f_lb = |n: usize| -> i64 {
            match g {
                FactorGrowth::Finite { degree, v } => {
                    if n <= *degree {
                        n as i64 * v
                    } else {
                        INF
                    }
                }
                FactorGrowth::Linear { v } => n as i64 * v,
                FactorGrowth::Triangular { v } => (n as i64 * (n as i64 - 1) / 2) * v,
                FactorGrowth::Unbounded => 0,
            }
        };
        let mut next = vec![INF; limit + 1];
        for (a, &la) in lb.iter().enumerate() {
            if la >= INF {
                continue;
            }
            for (b, slot) in next.iter_mut().enumerate().skip(a) {
                let fb = f_lb(b - a);
                if fb >= INF {
                    continue;
                }
                *slot = (*slot).min(la + fb);
            }
        }
        lb = next;
    }
    let bound = (0..=limit).rev().find(|&n| lb[n] <= order).unwrap_or(0);
    Ok(SidePlan { bound: Some(bound), cutoff_order: Some(order) })
}

/// One side's coefficients A_0..=A_n as the convolution of its factors.
fn side_coefficients(factors: &[Factor], side: Orientation, n: usize) -> Result<Vec<Scalar>> {
    let mut acc = vec![Scalar::zero(); n + 1];
    acc[0] = Scalar::one();
    for f in factors.iter().filter(|f| f.orientation == side) {
        let table = match f.kind {
            FactorKind::E => elementary_e_table(&f.spec, n)?,
            FactorKind::H => complete_h_table(&f.spec, n)?,
        };
        let mut next = vec![Scalar::zero(); n + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in table.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                next[i + j] = &next[i + j] + &(a * b);
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn truncate_to(x: Scalar, order: Option<i64>) -> Scalar {
    match (x, order) {
        (Scalar::Series(s), Some(o)) => Scalar::Series(s.truncate(o)),
        (x, _) => x,
    }
}

/// A symbol with whatever tables it needs precomputed, answering d_k.
pub struct Coefficients {
    kind: Prepared,
}

enum Prepared {
    PureFH { gamma: i64, delta: i64 },
    ThetaGD { gamma: i64, delta: i64, q: Scalar },
    ThetaD { delta: i64, q: Scalar },
    Tridiagonal { x: Scalar, y: Scalar },
    Product { a: Vec<Scalar>, b: Vec<Scalar>, a_bounded: bool, b_bounded: bool, order: Option<i64> },
}

impl Coefficients {
    /// Prepare `f` for coefficients with |k| ≤ `reach` (only matters for
    /// products with one infinite side).
    pub fn new(f: &SymbolSpec, reach: usize) -> Result<Self> {
        let kind = match f {
            SymbolSpec::PureFH { gamma, delta } => Prepared::PureFH { gamma: *gamma as i64, delta: *delta as i64 },
            SymbolSpec::ThetaGD { gamma, delta, q } => {
                Prepared::ThetaGD { gamma: *gamma as i64, delta: *delta as i64, q: q.clone() }
            }
            SymbolSpec::ThetaD { delta, q } => Prepared::ThetaD { delta: *delta as i64, q: q.clone() },
            SymbolSpec::Tridiagonal { x, y } => Prepared::Tridiagonal { x: x.clone(), y: y.clone() },
            SymbolSpec::Factors(fs) => {
                let pa = side_plan(fs, Orientation::Z)?;
                let pb = side_plan(fs, Orientation::ZInv)?;
                let order = match (pa.cutoff_order, pb.cutoff_order) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                };
                match (pa.bound, pb.bound) {
                    (Some(na), Some(nb)) => Prepared::Product {
                        a: side_coefficients(fs, Orientation::Z, na)?,
                        b: side_coefficients(fs, Orientation::ZInv, nb)?,
                        a_bounded: true,
                        b_bounded: true,
                        order,
                    },
                    (None, Some(nb)) => Prepared::Product {
                        a: side_coefficients(fs, Orientation::Z, reach + nb)?,
                        b: side_coefficients(fs, Orientation::ZInv, nb)?,
                        a_bounded: false,
                        b_bounded: true,
                        order,
                    },
                    (Some(na), None) => Prepared::Product {
                        a: side_coefficients(fs, Orientation::Z, na)?,
                        b: side_coefficients(fs, Orientation::ZInv, reach + na)?,
                        a_bounded: true,
                        b_bounded: false,
                        order,
                    },
                    (None, None) => {
                        return Err(Error::Unsupported(
                            "both sides of the symbol are infinite; use graded variables so one side truncates".into(),
                        ))
                    }
                }
            }
        };
        Ok(Coefficients { kind })
    }

    pub fn get(&self, k: i64) -> Result<Scalar> {
        match &self.kind {
            Prepared::PureFH { gamma, delta } => Ok(Scalar::Rational(binomial(gamma + delta, delta + k))),
            Prepared::ThetaGD { gamma, delta, q } => {
                if k < -delta || k > *gamma {
                    return Ok(Scalar::zero());
                }
                Ok(&q_binomial(delta + gamma, delta + k, q)? * &q.pow(k * (k + 1) / 2)?)
            }
            Prepared::ThetaD { delta, q } => {
                if k < -delta {
                    return Ok(Scalar::zero());
                }
                let num = q.pow(k * delta + k * (k - 1) / 2)?;
                num.div(&q_pochhammer((delta + k) as u64, q))
            }
            Prepared::Tridiagonal { x, y } => Ok(match k {
                0 => Scalar::one() + x * y,
                1 => x.clone(),
                -1 => y.clone(),
                _ => Scalar::zero(),
            }),
            Prepared::Product { a, b, a_bounded, b_bounded, order } => {
                let get = |v: &Vec<Scalar>, i: i64| -> Result<Option<Scalar>> {
                    if i < 0 {
                        return Ok(Some(Scalar::zero()));
                    }
                    Ok(v.get(i as usize).cloned())
                };
                let mut acc = Scalar::zero();
                if *b_bounded {
                    for (j, bj) in b.iter().enumerate() {
                        match get(a, k + j as i64)? {
                            Some(ai) => acc = &acc + &(&ai * bj),
                            None if *a_bounded => {}
                            None => return Err(Error::domain(format!("coefficient d_{k} lies beyond the prepared range"))),
                        }
                    }
                } else {
                    debug_assert!(*a_bounded);
                    for (i, ai) in a.iter().enumerate() {
                        match get(b, i as i64 - k)? {
                            Some(bj) => acc = &acc + &(ai * &bj),
                            None => return Err(Error::domain(format!("coefficient d_{k} lies beyond the prepared range"))),
                        }
                    }
                }
                Ok(truncate_to(acc, *order))
            }
        }
    }
}

pub fn fourier_coefficient(f: &SymbolSpec, k: i64) -> Result<Scalar> {
    Coefficients::new(f, k.unsigned_abs() as usize)?.get(k)
}

pub fn fourier_window(f: &SymbolSpec, lo: i64, hi: i64) -> Result<FourierWindow> {
    if lo > hi {
        return Err(Error::domain(format!("empty window [{lo}, {hi}]")));
    }
    let reach = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
    let c = Coefficients::new(f, reach)?;
    let coeffs = (lo..=hi).map(|k| c.get(k)).collect::<Result<_>>()?;
    Ok(FourierWindow { lo, hi, coeffs })
}

/// Σ d_k z^k over the (finite) support.
pub fn as_laurent(f: &SymbolSpec) -> Result<LaurentPoly> {
    let (lo, hi) = f
        .support()?
        .ok_or_else(|| Error::Unsupported("symbol has infinite Fourier support".into()))?;
    let w = fourier_window(f, lo, hi)?;
    Ok(LaurentPoly::from_coeffs(lo, w.coeffs))
}
