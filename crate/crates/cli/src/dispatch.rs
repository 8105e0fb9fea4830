//! One library call per subcommand, driven by a JSON parameter object.
//!
//! | subcommand        | library entry point                                   |
//! |-------------------|-------------------------------------------------------|
//! | det               | toeplitz::toeplitz_determinant                        |
//! | minor             | toeplitz::minor_determinant (minor_matrix with matrix)|
//! | inverse           | toeplitz::exact_inverse                               |
//! | skewschur         | symfunc::skew_schur                                   |
//! | closedform        | closedforms::evaluate (cross_check with verify)       |
//! | biorth pair       | biorthogonal::bordered_pair / closed_pair_*           |
//! | biorth kernel     | biorthogonal::kernel_coefficients / kernel_closed_*   |
//! | oracle heine      | oracle::heine_integral                                |
//! | oracle morris     | oracle::morris_integral                               |
//! | table1            | asymptotics::table1                                   |
//! | converge          | asymptotics::convergence_table                        |
//! | verify            | suites::run_suite                                     |

use std::collections::BTreeMap;

use serde_json::{json, Value};
use tminors::asymptotics::{convergence_table, table1};
use tminors::biorthogonal::{
    bordered_pair, closed_pair_theta, closed_pair_theta_d, kernel_closed_theta, kernel_closed_theta_d, kernel_coefficients,
    BiorthogonalPair,
};
use tminors::closedforms::{cross_check, evaluate, ClosedFormValue};
use tminors::oracle::{heine_integral, morris_integral};
use tminors::params::Params;
use tminors::scalar::{format_rational, to_decimal, Scalar};
use tminors::suites::{run_suite, Budget, Suite, DEFAULT_SEED};
use tminors::symbols::SymbolSpec;
use tminors::symfunc::{skew_schur, Basis, CoefficientProfile};
use tminors::toeplitz::{exact_inverse, minor_determinant, minor_matrix, toeplitz_determinant};
use tminors::{Error, Result};

use crate::render::{Format, Output};

pub struct Response {
    pub output: Output,
    /// False when a requested check ran and failed.
    pub ok: bool,
    /// Format used when none was asked for.
    pub default_format: Format,
}

impl Response {
    fn new(output: Output) -> Self {
        Response { output, ok: true, default_format: Format::Text }
    }

    fn checked(output: Output, ok: bool) -> Self {
        Response { output, ok, default_format: Format::Text }
    }

    fn with_format(mut self, f: Format) -> Self {
        self.default_format = f;
        self
    }
}

fn flag(p: &Params, name: &str) -> Result<bool> {
    match p.raw(name) {
        None | Some(Value::Null) => Ok(false),
        Some(Value::Bool(b)) => Ok(*b),
        Some(_) => Err(Error::schema(name, "expected a boolean")),
    }
}

fn pair_record(pair: &BiorthogonalPair) -> Output {
    let list = |v: &[Scalar]| Value::Array(v.iter().map(Scalar::to_json).collect());
    Output::Record(vec![
        ("p".into(), list(&pair.p)),
        ("q".into(), list(&pair.q)),
        ("norm2".into(), pair.norm2.to_json()),
    ])
}

fn closed_value(v: ClosedFormValue) -> Output {
    match v {
        ClosedFormValue::Scalar(s) => Output::Scalar(s),
        ClosedFormValue::Matrix(m) => Output::Matrix(m),
        other => match other.to_json() {
            Value::Object(o) => Output::Record(o.into_iter().collect()),
            v => Output::Record(vec![("value".into(), v)]),
        },
    }
}

/// `{"1": "1/2", "-1": "3"}` or `[[1, "1/2"], [-1, "3"]]`.
fn profile(p: &Params) -> Result<CoefficientProfile> {
    let raw = p.raw("profile").ok_or_else(|| Error::schema("profile", "missing"))?;
    let bad = || Error::schema("profile", "expected {\"k\": rational} or [[k, rational], ...]");
    let mut entries = BTreeMap::new();
    match raw {
        Value::Object(o) => {
            for (k, v) in o {
                let k: i64 = k.parse().map_err(|_| bad())?;
                entries.insert(k, Scalar::from_json(v).map_err(|_| bad())?);
            }
        }
        Value::Array(a) => {
            for item in a {
                let pair = item.as_array().filter(|x| x.len() == 2).ok_or_else(bad)?;
                let k = pair[0].as_i64().ok_or_else(bad)?;
                entries.insert(k, Scalar::from_json(&pair[1]).map_err(|_| bad())?);
            }
        }
        _ => return Err(bad()),
    }
    if entries.contains_key(&0) {
        return Err(Error::schema("profile", "c_0 does not enter the table"));
    }
    CoefficientProfile::from_map(entries)
}

fn budget(p: &Params, seed: Option<u64>) -> Result<Budget> {
    let oracle_n = match p.raw("N") {
        Some(_) => Some(p.usize("N")?),
        None => None,
    };
    let seed = match (seed, p.raw("seed")) {
        (Some(s), _) => s,
        (None, Some(Value::Number(n))) => n.as_u64().ok_or_else(|| Error::schema("seed", "expected a non-negative integer"))?,
        (None, Some(_)) => return Err(Error::schema("seed", "expected a non-negative integer")),
        (None, None) => DEFAULT_SEED,
    };
    Ok(Budget { quick: flag(p, "quick")?, seed, oracle_n })
}

pub fn dispatch(command: &str, params: &Value, seed: Option<u64>) -> Result<Response> {
    let p = Params::new(params)?;
    Ok(match command {
        "det" => Response::new(Output::Scalar(toeplitz_determinant(&p.symbol("symbol")?, p.usize("N")?)?)),
        "minor" | "minor_det" => {
            let (f, n) = (p.symbol("symbol")?, p.usize("N")?);
            let (lambda, mu) = (p.partition_or_empty("lambda")?, p.partition_or_empty("mu")?);
            if flag(&p, "matrix")? {
                Response::new(Output::Matrix(minor_matrix(&f, n, &lambda, &mu)?))
            } else {
                Response::new(Output::Scalar(minor_determinant(&f, n, &lambda, &mu)?))
            }
        }
        "inverse" => Response::new(Output::Matrix(exact_inverse(&p.symbol("symbol")?, p.usize("N")?)?)),
        "skewschur" => {
            let basis = match p.raw("basis").map(|_| p.str("basis")).transpose()? {
                None | Some("h") | Some("H") => Basis::H,
                Some("e") | Some("E") => Basis::E,
                Some(other) => return Err(Error::schema("basis", format!("expected h or e, got `{other}`"))),
            };
            let v = skew_schur(&p.partition("mu")?, &p.partition_or_empty("lambda")?, &p.specialization("x")?, basis)?;
            Response::new(Output::Scalar(v))
        }
        "closedform" => {
            let id = p.str("formula_id")?;
            let inner = p.raw("params").cloned().unwrap_or_else(|| json!({}));
            let result = evaluate(id, &inner)?;
            if flag(&p, "verify")? {
                let check = cross_check(id, &inner)?;
                let status = match check {
                    Some(true) => "OK",
                    Some(false) => "MISMATCH",
                    None => "no independent computation",
                };
                let out = Output::Record(vec![
                    ("formula_id".into(), json!(id)),
                    ("value".into(), result.value.to_json()),
                    ("cross_check".into(), json!(status)),
                ]);
                Response::checked(out, check != Some(false))
            } else {
                Response::new(closed_value(result.value))
            }
        }
        "biorth" => {
            let f = p.symbol("symbol")?;
            let closed = flag(&p, "closed")?;
            match p.str("action")? {
                "pair" => {
                    let j = p.usize("j")?;
                    let pair = match (closed, &f) {
                        (false, _) => bordered_pair(&f, j)?,
                        (true, SymbolSpec::ThetaGD { gamma, delta, q }) => closed_pair_theta(*gamma, *delta, j, q)?,
                        (true, SymbolSpec::ThetaD { delta, q }) => closed_pair_theta_d(*delta, j, q)?,
                        (true, _) => return Err(Error::domain("closed pairs exist for theta_gd and theta_d only")),
                    };
                    Response::new(pair_record(&pair))
                }
                "kernel" => {
                    let n = p.usize("N")?;
                    let k = match (closed, &f) {
                        (false, _) => kernel_coefficients(&f, n)?,
                        (true, SymbolSpec::ThetaGD { gamma, delta, q }) => kernel_closed_theta(*gamma, *delta, n, q)?,
                        (true, SymbolSpec::ThetaD { delta, q }) => kernel_closed_theta_d(*delta, n, q)?,
                        (true, _) => return Err(Error::domain("closed kernels exist for theta_gd and theta_d only")),
                    };
                    if flag(&p, "verify_inverse")? {
                        let same = k.c.agrees(&exact_inverse(&f, n)?);
                        let rows: Vec<Value> = k.c.to_rows().iter().map(|r| Value::Array(r.iter().map(Scalar::to_json).collect())).collect();
                        let out = Output::Record(vec![
                            ("kernel".into(), Value::Array(rows)),
                            ("equals_inverse".into(), json!(same)),
                        ]);
                        Response::checked(out, same)
                    } else {
                        Response::new(Output::Matrix(k.c))
                    }
                }
                other => return Err(Error::schema("action", format!("expected pair or kernel, got `{other}`"))),
            }
        }
        "oracle" => {
            let n = p.usize("N")?;
            let (lambda, mu) = (p.partition_or_empty("lambda")?, p.partition_or_empty("mu")?);
            let (value, f) = match p.str("action")? {
                "heine" => {
                    let f = p.symbol("symbol")?;
                    (heine_integral(&f, &lambda, &mu, n)?, f)
                }
                "morris" => {
                    let (g, d) = (p.u32("gamma")?, p.u32("delta")?);
                    (Scalar::Rational(morris_integral(g, d, &lambda, &mu, n)?), SymbolSpec::PureFH { gamma: g, delta: d })
                }
                other => return Err(Error::schema("action", format!("expected heine or morris, got `{other}`"))),
            };
            if flag(&p, "compare")? {
                let det = minor_determinant(&f, n, &lambda, &mu)?;
                let same = det.agrees(&value);
                let out = Output::Record(vec![
                    ("integral".into(), value.to_json()),
                    ("determinant".into(), det.to_json()),
                    ("equal".into(), json!(same)),
                ]);
                Response::checked(out, same)
            } else {
                Response::new(Output::Scalar(value))
            }
        }
        "table1" => {
            let rows = table1(&profile(&p)?)?;
            let ok = rows.iter().all(|r| r.equal);
            let headers = ["lambda", "mu", "bd_sum", "skew_sum", "equal"].map(String::from).to_vec();
            let part = |x: &tminors::partitions::Partition| json!(x.parts());
            let rows = rows
                .iter()
                .map(|r| vec![part(&r.lambda), part(&r.mu), r.bd.to_json(), r.skew.to_json(), json!(r.equal)])
                .collect();
            Response::checked(Output::Table { headers, rows }, ok).with_format(Format::Markdown)
        }
        "converge" => {
            let f = p.symbol("symbol")?;
            let (lambda, mu) = (p.partition_or_empty("lambda")?, p.partition_or_empty("mu")?);
            // smallest N that fits both shapes unless asked otherwise
            let fits = lambda.len().max(mu.len()).max(1);
            let (lo, hi) = (p.usize_or("N_min", fits)?, p.usize("N_max")?);
            if lo > hi {
                return Err(Error::schema("N_min", "must not exceed N_max"));
            }
            let rows = convergence_table(&f, &lambda, &mu, lo..=hi)?;
            let headers = ["N", "minor", "determinant", "ratio", "target", "abs_error", "ratio_decimal", "abs_error_decimal"]
                .map(String::from)
                .to_vec();
            let dec = |s: &Option<Scalar>| match s {
                Some(Scalar::Rational(r)) => json!(to_decimal(r, 12)),
                _ => json!(""),
            };
            let rows = rows
                .iter()
                .map(|r| {
                    vec![
                        json!(r.n),
                        r.minor.to_json(),
                        r.determinant.to_json(),
                        r.ratio.as_ref().map_or(json!("NaN"), Scalar::to_json),
                        r.target.to_json(),
                        r.abs_error.as_ref().map_or(json!(""), |e| json!(format_rational(e))),
                        dec(&r.ratio),
                        dec(&r.abs_error.clone().map(Scalar::Rational)),
                    ]
                })
                .collect();
            Response::new(Output::Table { headers, rows }).with_format(Format::Csv)
        }
        "verify" => {
            let suite: Suite = p.str("suite")?.parse()?;
            let reports = run_suite(suite, &budget(&p, seed)?);
            let ok = reports.iter().all(|r| r.ok());
            Response::checked(Output::Report(reports), ok)
        }
        other => return Err(Error::schema("subcommand", format!("unknown subcommand `{other}`"))),
    })
}
