//! Verification grids shared by the `verify` command and the acceptance run.
//!
//! A check is a list of grids; a grid passes when every cell in it does.
//! Grids run in parallel and are reported in declaration order.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::biorthogonal::{bordered_pair, closed_pair_theta, closed_pair_theta_d, kernel_closed_theta, kernel_closed_theta_d, kernel_coefficients};
use crate::closedforms::{
    dr_inverse, evskew_fh, fh_determinant, fh_minor_single, fh_minor_via_recursion, infinite_q_skew, q_evskew, q_theta_determinant,
    recursion_step_holds, theta_d_determinant, tridiag_det, tridiag_inverse, two_row_skew, verify_duduchava_roch,
};
use crate::error::{Error, Result};
use crate::oracle::{heine_integral, morris_integral, oracle_cap, pairing};
use crate::partitions::{partitions_up_to, Partition};
use crate::scalar::{ratio, Rational, Scalar};
use crate::symbols::SymbolSpec;
use crate::symfunc::{skew_schur, Basis, Specialization};
use crate::toeplitz::{exact_inverse, minor_determinant, toeplitz_determinant, verify_baxter, verify_case1_minor, verify_ee_schur, verify_gessel};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Gessel,
    Baxter,
    Dr,
    Biorth,
    Oracle,
    ClosedForms,
}

impl Suite {
    pub const NAMES: &'static [&'static str] = &["all", "gessel", "baxter", "dr", "biorth", "oracle", "closedforms"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "gessel" => Suite::Gessel,
            "baxter" => Suite::Baxter,
            "dr" => Suite::Dr,
            "biorth" => Suite::Biorth,
            "oracle" => Suite::Oracle,
            "closedforms" => Suite::ClosedForms,
            other => return Err(Error::schema("suite", format!("unknown suite `{other}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub quick: bool,
    pub seed: u64,
    /// Largest N for the constant-term oracle; capped by TM_MAX_ORACLE_N.
    pub oracle_n: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { quick: false, seed: DEFAULT_SEED, oracle_n: None }
    }
}

impl Budget {
    pub fn quick() -> Self {
        Budget { quick: true, ..Budget::default() }
    }

    fn pick(&self, full: usize, quick: usize) -> usize {
        if self.quick {
            quick
        } else {
            full
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub identity: String,
    pub label: String,
    pub passed: usize,
    pub total: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "label": self.label,
            "passed": self.passed,
            "total": self.total,
            "ok": self.ok(),
            "failures": self.failures,
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "OK" } else { "FAILED" };
        write!(f, "{}: {}/{} grids {}", self.identity, self.passed, self.total, status)
    }
}

type Cell = std::result::Result<(), String>;

pub struct Grid {
    label: String,
    run: Box<dyn Fn() -> Cell + Send + Sync>,
}

fn grid(label: impl Into<String>, run: impl Fn() -> Cell + Send + Sync + 'static) -> Grid {
    Grid { label: label.into(), run: Box::new(run) }
}

/// A cell passes on Ok(true); errors and Ok(false) name the cell.
fn ensure(outcome: Result<bool>, cell: impl FnOnce() -> String) -> Cell {
    match outcome {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("mismatch at {}", cell())),
        Err(e) => Err(format!("{} at {}", e, cell())),
    }
}

fn run_check(identity: &str, label: &str, grids: Vec<Grid>) -> CheckReport {
    let results: Vec<(String, Cell)> = grids.par_iter().map(|g| (g.label.clone(), (g.run)())).collect();
    let failures: Vec<String> = results
        .iter()
        .filter_map(|(l, r)| r.as_ref().err().map(|e| format!("{l}: {e}")))
        .collect();
    CheckReport {
        identity: identity.to_string(),
        label: label.to_string(),
        passed: results.len() - failures.len(),
        total: results.len(),
        failures,
    }
}

pub fn run_suite(suite: Suite, budget: &Budget) -> Vec<CheckReport> {
    match suite {
        Suite::All => [Suite::Gessel, Suite::Baxter, Suite::Dr, Suite::Biorth, Suite::Oracle, Suite::ClosedForms]
            .iter()
            .flat_map(|s| run_suite(*s, budget))
            .collect(),
        Suite::Gessel => vec![gessel(budget)],
        Suite::Baxter => vec![baxter(budget), case1_minor(budget), ee_schur(budget)],
        Suite::Dr => vec![duduchava_roch(budget)],
        Suite::Biorth => vec![biorthogonality(budget), kernel_inverse(budget), closed_pairs(budget), closed_kernels(budget)],
        Suite::Oracle => vec![heine(budget), morris(budget)],
        Suite::ClosedForms => vec![
            fh_determinants(budget),
            evskew(budget),
            q_evskew_principal(budget),
            q_evskew_near_one(budget),
            fh_minors(budget),
            recursion_steps(budget),
            tridiagonal(budget),
            q_theta(budget),
        ],
    }
}

/// Seeded rational weights p/q with 0 < |p| ≤ 3, 1 ≤ q ≤ 4.
pub fn seeded_weights(seed: u64, count: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut p: i64 = rng.gen_range(1..=3);
            if rng.gen_bool(0.5) {
                p = -p;
            }
            ratio(p, rng.gen_range(1..=4))
        })
        .collect()
}

fn graded_pairs(budget: &Budget) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let mut out = vec![
        (vec![ratio(1, 1)], vec![ratio(1, 1)]),
        (vec![ratio(1, 1), ratio(1, 2), ratio(-1, 3)], vec![ratio(2, 3), ratio(1, 1)]),
    ];
    let extra = budget.pick(2, 1);
    for i in 0..extra as u64 {
        let w = seeded_weights(budget.seed.wrapping_add(i), 4);
        out.push((w[..2].to_vec(), w[2..].to_vec()));
    }
    out
}

pub fn gessel(budget: &Budget) -> CheckReport {
    let order = 6;
    let nmax = budget.pick(4, 2);
    let grids = graded_pairs(budget)
        .into_iter()
        .map(|(xw, yw)| {
            let label = format!("x={} y={}", show(&xw), show(&yw));
            grid(label, move || {
                let x = Specialization::graded(xw.clone(), order);
                let y = Specialization::graded(yw.clone(), order);
                for n in 1..=nmax {
                    ensure(verify_gessel(&x, &y, n, order), || format!("N={n}"))?;
                }
                Ok(())
            })
        })
        .collect();
    run_check("gessel", "Gessel: D_N(H(y;1/z)H(x;z)) = sum over l(nu) <= N of s_nu(y)s_nu(x)", grids)
}

fn y_lists(budget: &Budget) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![ratio(1, 2)], vec![ratio(1, 2), ratio(-1, 3)]];
    if !budget.quick {
        out.push(seeded_weights(budget.seed ^ 0x5eed, 2));
    }
    out
}

pub fn baxter(budget: &Budget) -> CheckReport {
    let order = 6;
    let span = budget.pick(2, 1);
    let grids = y_lists(budget)
        .into_iter()
        .map(|y| {
            grid(format!("y={}", show(&y)), move || {
                let x = Specialization::graded(vec![ratio(1, 1), ratio(1, 3)], order);
                for n in y.len()..=y.len() + span {
                    ensure(verify_baxter(&y, &x, n, order), || format!("N={n}"))?;
                }
                Ok(())
            })
        })
        .collect();
    run_check("baxter", "Baxter: D_N equals the Cauchy product for every N >= d", grids)
}

pub fn case1_minor(budget: &Budget) -> CheckReport {
    let order = budget.pick(6, 4) as i64;
    let size = budget.pick(2, 1);
    let mut grids = Vec::new();
    for y in y_lists(budget) {
        for lambda in partitions_up_to(size) {
            let y = y.clone();
            grids.push(grid(format!("y={} lambda={lambda}", show(&y)), move || {
                let x = Specialization::graded(vec![ratio(1, 1), ratio(1, 2)], order);
                for mu in partitions_up_to(size) {
                    let n0 = y.len() + mu.len().max(lambda.len());
                    for n in n0..=n0 + 1 {
                        ensure(verify_case1_minor(&y, &x, &lambda, &mu, n, order), || format!("mu={mu} N={n}"))?;
                    }
                }
                Ok(())
            }));
        }
    }
    run_check("case1_minor", "stabilized minor formula for H(y;1/z)H(x;z)", grids)
}

pub fn ee_schur(budget: &Budget) -> CheckReport {
    let nmax = budget.pick(3, 2);
    let mut grids = Vec::new();
    for y in [vec![ratio(1, 1)], vec![ratio(1, 2), ratio(-2, 3)]] {
        for (xs, graded) in [(vec![ratio(1, 1)], false), (vec![ratio(1, 3), ratio(-1, 2)], false), (vec![ratio(1, 1), ratio(2, 3)], true)] {
            let (y, xs) = (y.clone(), xs.clone());
            let tag = if graded { "t" } else { "" };
            grids.push(grid(format!("y={} x={}{tag}", show(&y), show(&xs)), move || {
                // graded x = a·t, compared as t-polynomials to degree 6
                let x = if graded { Specialization::graded(xs.clone(), 6) } else { Specialization::rationals(&xs) };
                for lambda in partitions_up_to(2) {
                    for mu in partitions_up_to(2) {
                        for n in lambda.len().max(mu.len()).max(1)..=nmax {
                            ensure(verify_ee_schur(&y, &x, &lambda, &mu, n), || format!("lambda={lambda} mu={mu} N={n}"))?;
                        }
                    }
                }
                Ok(())
            }));
        }
    }
    run_check("ee_schur", "E(y;1/z)E(x;z) minors as a single skew Schur value", grids)
}

pub fn duduchava_roch(budget: &Budget) -> CheckReport {
    let nmax = budget.pick(5, 3);
    let mut grids = Vec::new();
    for g in 1..=3u32 {
        for d in 1..=3u32 {
            grids.push(grid(format!("gamma={g} delta={d}"), move || {
                let f = SymbolSpec::PureFH { gamma: g, delta: d };
                for n in 1..=nmax {
                    ensure(verify_duduchava_roch(g, d, n), || format!("identity N={n}"))?;
                    let same = dr_inverse(g, d, n).and_then(|a| Ok(a.agrees(&exact_inverse(&f, n)?)));
                    ensure(same, || format!("inverse N={n}"))?;
                }
                Ok(())
            }));
        }
    }
    run_check("duduchava_roch", "Duduchava-Roch factorization and the closed-form inverse", grids)
}

/// Built-in symbols with parameters at most 3 (Θ_δ as series to order 8).
pub fn builtin_symbols(budget: &Budget) -> Vec<(String, SymbolSpec)> {
    let top = budget.pick(3, 2) as u32;
    let half = Scalar::frac(1, 2);
    let mut out = Vec::new();
    for g in 0..=top {
        for d in 0..=top {
            out.push((format!("pure_fh({g},{d})"), SymbolSpec::PureFH { gamma: g, delta: d }));
            out.push((format!("theta_gd({g},{d},1/2)"), SymbolSpec::ThetaGD { gamma: g, delta: d, q: half.clone() }));
        }
    }
    for d in 0..=top {
        out.push((format!("theta_d({d},q+O(q^9))"), SymbolSpec::ThetaD { delta: d, q: Scalar::formal(8) }));
    }
    for x in 1..=top as i64 {
        for y in 1..=top as i64 {
            out.push((format!("tridiagonal({x},{y})"), SymbolSpec::Tridiagonal { x: Scalar::int(x), y: Scalar::int(y) }));
        }
    }
    out.push((
        "ee((1/3,2),(-1/2))".into(),
        SymbolSpec::ee(
            Specialization::rationals(&[ratio(1, 3), ratio(2, 1)]),
            Specialization::rationals(&[ratio(-1, 2)]),
        ),
    ));
    out
}

pub fn biorthogonality(budget: &Budget) -> CheckReport {
    let jmax = budget.pick(3, 2);
    let grids = builtin_symbols(budget)
        .into_iter()
        .map(|(name, f)| {
            grid(name, move || {
                let pairs = (0..=jmax)
                    .map(|j| bordered_pair(&f, j))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| e.to_string())?;
                for (j, a) in pairs.iter().enumerate() {
                    for (k, b) in pairs.iter().enumerate() {
                        let want = if j == k { a.norm2.clone() } else { Scalar::zero() };
                        ensure(pairing(&f, &a.p, &b.q).map(|v| v.agrees(&want)), || format!("j={j} k={k}"))?;
                    }
                }
                Ok(())
            })
        })
        .collect();
    run_check("biorthogonality", "bordered pairs are biorthogonal with norm D_{j+1}/D_j", grids)
}

pub fn kernel_inverse(budget: &Budget) -> CheckReport {
    let nmax = budget.pick(4, 2);
    let grids = builtin_symbols(budget)
        .into_iter()
        .map(|(name, f)| {
            grid(name, move || {
                for n in 1..=nmax {
                    let same = kernel_coefficients(&f, n).and_then(|k| Ok(k.c.agrees(&exact_inverse(&f, n)?)));
                    ensure(same, || format!("N={n}"))?;
                }
                Ok(())
            })
        })
        .collect();
    run_check("kernel_inverse", "kernel coefficients invert T_N", grids)
}

pub fn closed_pairs(budget: &Budget) -> CheckReport {
    let top = budget.pick(3, 2) as u32;
    let jmax = budget.pick(3, 2);
    let mut grids = Vec::new();
    for g in 1..=top {
        for d in 1..=top {
            grids.push(grid(format!("theta_gd({g},{d},1/2)"), move || {
                let q = Scalar::frac(1, 2);
                let f = SymbolSpec::ThetaGD { gamma: g, delta: d, q: q.clone() };
                for j in 0..=jmax {
                    let same = closed_pair_theta(g, d, j, &q).and_then(|c| Ok(c.agrees(&bordered_pair(&f, j)?)));
                    ensure(same, || format!("j={j}"))?;
                }
                Ok(())
            }));
        }
    }
    for d in 1..=top {
        grids.push(grid(format!("theta_d({d})"), move || {
            let q = Scalar::formal(8);
            let f = SymbolSpec::ThetaD { delta: d, q: q.clone() };
            for j in 0..=jmax {
                let same = closed_pair_theta_d(d, j, &q).and_then(|c| Ok(c.agrees(&bordered_pair(&f, j)?)));
                ensure(same, || format!("j={j}"))?;
            }
            Ok(())
        }));
    }
    run_check("closed_pairs", "explicit q-pairs equal the bordered determinants", grids)
}

pub fn closed_kernels(budget: &Budget) -> CheckReport {
    let top = budget.pick(3, 2) as u32;
    let nmax = budget.pick(4, 2);
    let mut grids = Vec::new();
    for g in 1..=top {
        for d in 1..=top {
            grids.push(grid(format!("theta_gd({g},{d},1/2)"), move || {
                let q = Scalar::frac(1, 2);
                let f = SymbolSpec::ThetaGD { gamma: g, delta: d, q: q.clone() };
                for n in 1..=nmax {
                    let same = kernel_closed_theta(g, d, n, &q).and_then(|k| Ok(k.c.agrees(&exact_inverse(&f, n)?)));
                    ensure(same, || format!("N={n}"))?;
                }
                Ok(())
            }));
        }
    }
    for d in 1..=top {
        grids.push(grid(format!("theta_d({d})"), move || {
            let q = Scalar::formal(8);
            let f = SymbolSpec::ThetaD { delta: d, q: q.clone() };
            for n in 1..=nmax.min(3) {
                let same = kernel_closed_theta_d(d, n, &q).and_then(|k| Ok(k.c.agrees(&exact_inverse(&f, n)?)));
                ensure(same, || format!("N={n}"))?;
            }
            Ok(())
        }));
    }
    run_check("closed_kernels", "explicit q-kernels equal T_N^{-1}", grids)
}

fn oracle_n(budget: &Budget) -> usize {
    budget.oracle_n.unwrap_or_else(|| budget.pick(3, 2).min(oracle_cap()))
}

pub fn heine(budget: &Budget) -> CheckReport {
    let nmax = oracle_n(budget);
    let mut symbols: Vec<(String, SymbolSpec)> = Vec::new();
    for g in 0..=2u32 {
        for d in 0..=2u32 {
            symbols.push((format!("pure_fh({g},{d})"), SymbolSpec::PureFH { gamma: g, delta: d }));
        }
    }
    symbols.push(("theta_gd(1,2,1/2)".into(), SymbolSpec::ThetaGD { gamma: 1, delta: 2, q: Scalar::frac(1, 2) }));
    symbols.push(("tridiagonal(2,-1/3)".into(), SymbolSpec::Tridiagonal { x: Scalar::int(2), y: Scalar::frac(-1, 3) }));
    let grids = symbols
        .into_iter()
        .map(|(name, f)| {
            grid(name, move || {
                for lambda in partitions_up_to(2) {
                    for mu in partitions_up_to(2) {
                        for n in lambda.len().max(mu.len()).max(1)..=nmax {
                            let same = heine_integral(&f, &lambda, &mu, n)
                                .and_then(|v| Ok(v.agrees(&minor_determinant(&f, n, &lambda, &mu)?)));
                            ensure(same, || format!("lambda={lambda} mu={mu} N={n}"))?;
                        }
                    }
                }
                Ok(())
            })
        })
        .collect();
    run_check("heine", "constant-term Heine integral equals the minor determinant", grids)
}

pub fn morris(budget: &Budget) -> CheckReport {
    let nmax = oracle_n(budget);
    let mut grids = Vec::new();
    for g in 0..=2u32 {
        for d in 0..=2u32 {
            grids.push(grid(format!("gamma={g} delta={d}"), move || {
                for lambda in partitions_up_to(2) {
                    for mu in partitions_up_to(2) {
                        for n in lambda.len().max(mu.len()).max(1)..=nmax {
                            let same = morris_integral(g, d, &lambda, &mu, n).and_then(|v| {
                                let outer = Partition::rectangle(d as usize, n).plus(&mu).conjugate();
                                let want = skew_schur(&outer, &lambda.conjugate(), &Specialization::ones((g + d) as usize), Basis::H)?;
                                Ok(Scalar::Rational(v).agrees(&want))
                            });
                            ensure(same, || format!("lambda={lambda} mu={mu} N={n}"))?;
                        }
                    }
                }
                Ok(())
            }));
        }
    }
    run_check("morris", "Morris integral as a skew Schur value at 1^(gamma+delta)", grids)
}

pub fn fh_determinants(budget: &Budget) -> CheckReport {
    let top = budget.pick(4, 2) as u32;
    let nmax = budget.pick(6, 4);
    let mut grids = Vec::new();
    for g in 0..=top {
        for d in 0..=top {
            grids.push(grid(format!("gamma={g} delta={d}"), move || {
                let f = SymbolSpec::PureFH { gamma: g, delta: d };
                for n in 0..=nmax {
                    let same = fh_determinant(g, d, n).and_then(|v| Ok(Scalar::Rational(v).agrees(&toeplitz_determinant(&f, n)?)));
                    ensure(same, || format!("N={n}"))?;
                }
                Ok(())
            }));
        }
    }
    run_check("fh_determinant", "Barnes G closed form of D_N(phi_{gamma,delta})", grids)
}

fn tall_shape(n: usize, d: usize, j: usize, k: usize) -> Result<(Partition, Partition)> {
    let mut parts = vec![n; d];
    parts.push(j);
    Ok((Partition::new(parts)?, Partition::new(vec![k])?))
}

fn evskew_cells(n_max: usize, d: usize, m: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        for j in 0..=n {
            for k in 0..=n {
                if m > d || (m == d && j == 0) {
                    out.push((n, j, k));
                }
            }
        }
    }
    out
}

pub fn evskew(budget: &Budget) -> CheckReport {
    let nmax = budget.pick(5, 3);
    let mut grids = Vec::new();
    for d in 0..=2 {
        for m in d.max(1)..=5 {
            grids.push(grid(format!("d={d} M={m}"), move || {
                for (n, j, k) in evskew_cells(nmax, d, m) {
                    let same = evskew_fh(n, d, j, k, m).and_then(|v| {
                        let (outer, inner) = tall_shape(n, d, j, k)?;
                        Ok(Scalar::Rational(v).agrees(&skew_schur(&outer, &inner, &Specialization::ones(m), Basis::H)?))
                    });
                    ensure(same, || format!("N={n} j={j} k={k}"))?;
                }
                Ok(())
            }));
        }
    }
    run_check("evskew_fh", "s_{(N^d,j)/(k)}(1^M) closed form", grids)
}

pub fn q_evskew_principal(budget: &Budget) -> CheckReport {
    let nmax = budget.pick(5, 3);
    let mut grids = Vec::new();
    for d in 0..=2 {
        for m in d.max(1)..=5 {
            grids.push(grid(format!("d={d} M={m}"), move || {
                let q = Scalar::frac(1, 2);
                for (n, j, k) in evskew_cells(nmax, d, m) {
                    let same = q_evskew(n, d, j, k, m, &q).and_then(|v| {
                        let (outer, inner) = tall_shape(n, d, j, k)?;
                        Ok(v.agrees(&skew_schur(&outer, &inner, &Specialization::Principal { q: q.clone(), count: m }, Basis::H)?))
                    });
                    ensure(same, || format!("N={n} j={j} k={k}"))?;
                }
                Ok(())
            }));
        }
    }
    run_check("q_evskew", "principal specialization (1,q,...,q^(M-1)) at q = 1/2", grids)
}

/// q = 1 − ε to order 4: the series matches Jacobi–Trudi and its constant
/// term is the q = 1 value.
pub fn q_evskew_near_one(budget: &Budget) -> CheckReport {
    let nmax = budget.pick(3, 2);
    let mut grids = Vec::new();
    for d in 1..=2 {
        for m in d..=budget.pick(4, 3) {
            grids.push(grid(format!("d={d} M={m}"), move || {
                let q = Scalar::one_minus_eps(4);
                for (n, j, k) in evskew_cells(nmax, d, m) {
                    let same = q_evskew(n, d, j, k, m, &q).and_then(|v| {
                        let (outer, inner) = tall_shape(n, d, j, k)?;
                        let jt = skew_schur(&outer, &inner, &Specialization::Principal { q: q.clone(), count: m }, Basis::H)?;
                        let at_one = evskew_fh(n, d, j, k, m)?;
                        Ok(v.agrees(&jt) && v.constant_term() == at_one)
                    });
                    ensure(same, || format!("N={n} j={j} k={k}"))?;
                }
                Ok(())
            }));
        }
    }
    run_check("q_evskew_q_to_1", "q-analog at q = 1 - eps reduces to the q = 1 value", grids)
}

pub fn fh_minors(budget: &Budget) -> CheckReport {
    let top = budget.pick(3, 2) as u32;
    let size = budget.pick(5, 3);
    let nmax = budget.pick(5, 3);
    let mut grids = Vec::new();
    for g in 0..=top {
        for d in 0..=top {
            grids.push(grid(format!("gamma={g} delta={d}"), move || {
                let f = SymbolSpec::PureFH { gamma: g, delta: d };
                for mu in partitions_up_to(size) {
                    for n in mu.len().max(1)..=nmax {
                        let same = fh_minor_single(&mu, g, d, n).and_then(|closed| {
                            let rec = fh_minor_via_recursion(&mu, g, d, n)?;
                            let det = minor_determinant(&f, n, &Partition::empty(), &mu)?;
                            Ok(closed == rec && Scalar::Rational(closed).agrees(&det))
                        });
                        ensure(same, || format!("mu={mu} N={n}"))?;
                    }
                }
                Ok(())
            }));
        }
    }
    run_check("fh_minor", "closed form = recursion = minor determinant for D_N^{0,mu}(phi)", grids)
}

pub fn recursion_steps(budget: &Budget) -> CheckReport {
    let size = budget.pick(5, 3);
    let grids = (-2..=6i64)
        .map(|g| {
            grid(format!("gamma={g}"), move || {
                for d in 0..=3i64 {
                    for mu in partitions_up_to(size) {
                        for n in mu.len().max(1)..=4 {
                            let padded = mu.padded(n);
                            ensure(recursion_step_holds(g, d, &padded), || format!("delta={d} mu={mu} N={n}"))?;
                        }
                    }
                }
                Ok(())
            })
        })
        .collect();
    run_check("detcomp_recursion", "one elimination step of the determinant recursion", grids)
}

pub fn tridiagonal(budget: &Budget) -> CheckReport {
    let nmax = budget.pick(5, 3);
    let values = [Scalar::one(), Scalar::frac(1, 2), Scalar::frac(2, 3), Scalar::int(-2)];
    let mut grids = Vec::new();
    for x in &values {
        for y in &values {
            let (x, y) = (x.clone(), y.clone());
            grids.push(grid(format!("x={} y={}", x, y), move || {
                let f = SymbolSpec::Tridiagonal { x: x.clone(), y: y.clone() };
                for n in 1..=nmax {
                    ensure(toeplitz_determinant(&f, n).map(|v| v.agrees(&tridiag_det(&x, &y, n))), || format!("det N={n}"))?;
                    let inv = tridiag_inverse(&x, &y, n).and_then(|a| Ok(a.agrees(&exact_inverse(&f, n)?)));
                    if !tridiag_det(&x, &y, n).is_zero() {
                        ensure(inv, || format!("inverse N={n}"))?;
                    }
                    for j in 0..=n {
                        for k in 0..=n {
                            let same = two_row_skew(n, j, k, &x, &y).and_then(|v| {
                                let outer = Partition::new(vec![n, j])?;
                                let inner = Partition::new(vec![k])?;
                                let vars = Specialization::Finite(vec![x.clone(), y.inv()?]);
                                Ok(v.agrees(&skew_schur(&outer, &inner, &vars, Basis::H)?))
                            });
                            ensure(same, || format!("two-row N={n} j={j} k={k}"))?;
                        }
                    }
                }
                Ok(())
            }));
        }
    }
    run_check("tridiagonal", "Chebyshev determinant, inverse and two-row skew Schur values", grids)
}

pub fn q_theta(budget: &Budget) -> CheckReport {
    let top = budget.pick(3, 2) as u32;
    let nmax = budget.pick(5, 3);
    let mut grids = Vec::new();
    for g in 1..=top {
        for d in 1..=top {
            grids.push(grid(format!("theta_gd({g},{d},1/2)"), move || {
                let q = Scalar::frac(1, 2);
                let f = SymbolSpec::ThetaGD { gamma: g, delta: d, q: q.clone() };
                for n in 0..=nmax {
                    let same = q_theta_determinant(g, d, n, &q).and_then(|v| Ok(v.agrees(&toeplitz_determinant(&f, n)?)));
                    ensure(same, || format!("N={n}"))?;
                }
                Ok(())
            }));
        }
    }
    for d in 1..=top {
        grids.push(grid(format!("theta_d({d})"), move || {
            let q = Scalar::formal(8);
            let f = SymbolSpec::ThetaD { delta: d, q: q.clone() };
            for n in 0..=nmax.min(4) {
                let same = theta_d_determinant(d, n, &q).and_then(|v| Ok(v.agrees(&toeplitz_determinant(&f, n)?)));
                ensure(same, || format!("N={n}"))?;
            }
            Ok(())
        }));
    }
    for d in 0..=2usize {
        grids.push(grid(format!("infinite principal d={d}"), move || {
            let q = Scalar::formal(8);
            for n in 0..=3 {
                for j in 0..=n {
                    for k in 0..=n {
                        let same = infinite_q_skew(n, d, j, k, &q).and_then(|v| {
                            let (outer, inner) = tall_shape(n, d, j, k)?;
                            Ok(v.agrees(&skew_schur(&outer, &inner, &Specialization::PrincipalInfinite { q: q.clone() }, Basis::H)?))
                        });
                        ensure(same, || format!("N={n} j={j} k={k}"))?;
                    }
                }
            }
            Ok(())
        }));
    }
    run_check("q_theta", "q-deformed determinants and the infinite principal specialization", grids)
}

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(crate::scalar::format_rational).collect();
    format!("({})", parts.join(","))
}
