//! `tm`: exact Toeplitz determinants, minors and skew Schur values from the
//! command line. Exit codes: 0 ok, 1 a requested check failed, 2 schema
//! error, 3 domain error.

mod dispatch;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};
use tminors::Error;

use dispatch::dispatch;
use render::{render, Format};

#[derive(Parser)]
#[command(name = "tm", version, about = "Exact Toeplitz determinants, minors and skew Schur specializations")]
struct Cli {
    /// Output format (each subcommand has its own default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized verification profiles.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel grids.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Read the whole request from a JSON file: {"subcommand": ..., params...}.
    #[arg(long, global = true)]
    request: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Default)]
struct SymbolArgs {
    /// Symbol JSON, e.g. '{"builtin":"pure_fh","gamma":1,"delta":1}'.
    #[arg(long)]
    symbol: Option<String>,
    #[arg(long = "N")]
    n: Option<i64>,
}

#[derive(Args, Default)]
struct ShapeArgs {
    /// Partition JSON, e.g. '[2,1]'.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    mu: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// D_N(f).
    Det(SymbolArgs),
    /// D_N^{lambda,mu}(f).
    Minor {
        #[command(flatten)]
        sym: SymbolArgs,
        #[command(flatten)]
        shape: ShapeArgs,
        /// Print the minor matrix instead of its determinant.
        #[arg(long)]
        matrix: bool,
    },
    /// T_N(f)^{-1}.
    Inverse(SymbolArgs),
    /// s_{mu/lambda}(x).
    Skewschur {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Specialization JSON.
        #[arg(long)]
        x: Option<String>,
        /// h or e (Jacobi-Trudi basis).
        #[arg(long)]
        basis: Option<String>,
    },
    /// Evaluate a named closed form.
    Closedform {
        formula_id: Option<String>,
        /// Parameter JSON object.
        #[arg(long)]
        params: Option<String>,
        /// Also compute the quantity directly and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Biorthogonal pairs and the inverse kernel.
    Biorth {
        #[command(subcommand)]
        action: BiorthCmd,
    },
    /// Constant-term integrals.
    Oracle {
        #[command(subcommand)]
        action: OracleCmd,
    },
    /// The eight tabulated (lambda, mu) shapes at a c_k profile.
    Table1 {
        /// {"k": rational} or [[k, rational], ...].
        #[arg(long)]
        profile: Option<String>,
    },
    /// D_N^{lambda,mu}/D_N against its large-N target.
    Converge {
        #[arg(long)]
        symbol: Option<String>,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long = "N-min")]
        n_min: Option<i64>,
        #[arg(long = "N-max")]
        n_max: Option<i64>,
    },
    /// Run verification grids.
    Verify {
        /// all, gessel, baxter, dr, biorth, oracle or closedforms.
        suite: Option<String>,
        /// Smaller grids.
        #[arg(long)]
        quick: bool,
        /// Largest N for the oracle suite.
        #[arg(long = "N")]
        n: Option<i64>,
    },
}

#[derive(Subcommand)]
enum BiorthCmd {
    Pair {
        #[arg(long)]
        symbol: Option<String>,
        #[arg(long)]
        j: Option<i64>,
        /// Use the explicit q-formulas (theta_gd, theta_d).
        #[arg(long)]
        closed: bool,
    },
    Kernel {
        #[command(flatten)]
        sym: SymbolArgs,
        #[arg(long)]
        closed: bool,
        #[arg(long = "verify-inverse")]
        verify_inverse: bool,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    Heine {
        #[command(flatten)]
        sym: SymbolArgs,
        #[command(flatten)]
        shape: ShapeArgs,
        /// Also evaluate the minor determinant and compare.
        #[arg(long)]
        compare: bool,
    },
    Morris {
        #[arg(long)]
        gamma: Option<i64>,
        #[arg(long)]
        delta: Option<i64>,
        #[arg(long = "N")]
        n: Option<i64>,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        compare: bool,
    },
}

/// Flags collected into the JSON parameter object.
#[derive(Default)]
struct Builder(Map<String, Value>);

impl Builder {
    fn json(&mut self, name: &str, raw: Option<String>) -> Result<&mut Self, Error> {
        if let Some(s) = raw {
            let v = serde_json::from_str(&s).map_err(|e| Error::schema(name, format!("invalid JSON: {e}")))?;
            self.0.insert(name.into(), v);
        }
        Ok(self)
    }

    fn int(&mut self, name: &str, v: Option<i64>) -> &mut Self {
        if let Some(v) = v {
            self.0.insert(name.into(), v.into());
        }
        self
    }

    fn string(&mut self, name: &str, v: Option<String>) -> &mut Self {
        if let Some(v) = v {
            self.0.insert(name.into(), v.into());
        }
        self
    }

    fn flag(&mut self, name: &str, on: bool) -> &mut Self {
        if on {
            self.0.insert(name.into(), true.into());
        }
        self
    }

    fn symbol(&mut self, a: SymbolArgs) -> Result<&mut Self, Error> {
        self.json("symbol", a.symbol)?;
        Ok(self.int("N", a.n))
    }

    fn shape(&mut self, a: ShapeArgs) -> Result<&mut Self, Error> {
        self.json("lambda", a.lambda)?.json("mu", a.mu)
    }
}

fn from_flags(cmd: Command) -> Result<(String, Value), Error> {
    let mut b = Builder::default();
    let name = match cmd {
        Command::Det(a) => {
            b.symbol(a)?;
            "det"
        }
        Command::Minor { sym, shape, matrix } => {
            b.symbol(sym)?.shape(shape)?.flag("matrix", matrix);
            "minor"
        }
        Command::Inverse(a) => {
            b.symbol(a)?;
            "inverse"
        }
        Command::Skewschur { shape, x, basis } => {
            b.shape(shape)?.json("x", x)?.string("basis", basis);
            "skewschur"
        }
        Command::Closedform { formula_id, params, verify } => {
            b.string("formula_id", formula_id).json("params", params)?.flag("verify", verify);
            "closedform"
        }
        Command::Biorth { action } => {
            match action {
                BiorthCmd::Pair { symbol, j, closed } => {
                    b.string("action", Some("pair".into())).json("symbol", symbol)?.int("j", j).flag("closed", closed);
                }
                BiorthCmd::Kernel { sym, closed, verify_inverse } => {
                    b.string("action", Some("kernel".into()))
                        .symbol(sym)?
                        .flag("closed", closed)
                        .flag("verify_inverse", verify_inverse);
                }
            }
            "biorth"
        }
        Command::Oracle { action } => {
            match action {
                OracleCmd::Heine { sym, shape, compare } => {
                    b.string("action", Some("heine".into())).symbol(sym)?.shape(shape)?.flag("compare", compare);
                }
                OracleCmd::Morris { gamma, delta, n, shape, compare } => {
                    b.string("action", Some("morris".into()))
                        .int("gamma", gamma)
                        .int("delta", delta)
                        .int("N", n)
                        .shape(shape)?
                        .flag("compare", compare);
                }
            }
            "oracle"
        }
        Command::Table1 { profile } => {
            b.json("profile", profile)?;
            "table1"
        }
        Command::Converge { symbol, shape, n_min, n_max } => {
            b.json("symbol", symbol)?.shape(shape)?.int("N_min", n_min).int("N_max", n_max);
            "converge"
        }
        Command::Verify { suite, quick, n } => {
            b.string("suite", suite).flag("quick", quick).int("N", n);
            "verify"
        }
    };
    Ok((name.to_string(), Value::Object(b.0)))
}

fn from_file(path: &PathBuf) -> Result<(String, Value), Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::schema("request", format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::schema("request", format!("invalid JSON: {e}")))?;
    let mut obj = match v {
        Value::Object(o) => o,
        _ => return Err(Error::schema("request", "expected a JSON object")),
    };
    let cmd = obj
        .remove("subcommand")
        .or_else(|| obj.remove("op"))
        .and_then(|c| c.as_str().map(String::from))
        .ok_or_else(|| Error::schema("subcommand", "missing (or `op`)"))?;
    Ok((cmd, Value::Object(obj)))
}

fn exit_for(e: &Error) -> ExitCode {
    if e.is_schema() {
        ExitCode::from(2)
    } else {
        ExitCode::from(3)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("warning: --jobs ignored: {e}");
        }
    }
    let request = match (&cli.request, cli.command) {
        (Some(path), None) => from_file(path),
        (None, Some(cmd)) => from_flags(cmd),
        (Some(_), Some(_)) => Err(Error::schema("request", "give either --request or a subcommand, not both")),
        (None, None) => Err(Error::schema("subcommand", "missing; see --help")),
    };
    let result = request.and_then(|(cmd, params)| {
        let format = match (cli.format, params.get("format")) {
            (Some(f), _) => Some(f),
            (None, Some(Value::String(s))) => Some(Format::parse(s).ok_or_else(|| Error::schema("format", "expected text, json, csv or markdown"))?),
            _ => None,
        };
        let mut params = params;
        if let Value::Object(o) = &mut params {
            o.remove("format");
        }
        dispatch(&cmd, &params, cli.seed).map(|r| (r, format))
    });
    match result {
        Ok((resp, format)) => {
            print!("{}", render(&resp.output, format.unwrap_or(resp.default_format)));
            if resp.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}
