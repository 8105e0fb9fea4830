//! Output shapes and their text / json / csv / markdown renderings.

use clap::ValueEnum;
use serde_json::{json, Map, Value};
use tminors::matrix::ExactMatrix;
use tminors::scalar::Scalar;
use tminors::suites::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Markdown,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        <Format as ValueEnum>::from_str(s, true).ok()
    }
}

pub enum Output {
    Scalar(Scalar),
    Matrix(ExactMatrix),
    /// Ordered key/value pairs.
    Record(Vec<(String, Value)>),
    Table { headers: Vec<String>, rows: Vec<Vec<Value>> },
    Report(Vec<CheckReport>),
}

/// Plain rendering of a JSON cell: strings unquoted, arrays bracketed.
pub fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(plain).collect::<Vec<_>>().join(", ")),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn matrix_json(m: &ExactMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(Scalar::to_json).collect())).collect())
}

fn csv_of(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    if !headers.is_empty() {
        w.write_record(headers).expect("in-memory csv");
    }
    for r in rows {
        w.write_record(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
}

fn markdown_of(headers: &[String], rows: &[Vec<String>]) -> String {
    let esc = |s: &str| s.replace('|', "\\|");
    let mut out = format!("| {} |\n", headers.iter().map(|h| esc(h)).collect::<Vec<_>>().join(" | "));
    out.push_str(&format!("|{}\n", "---|".repeat(headers.len())));
    for r in rows {
        out.push_str(&format!("| {} |\n", r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | ")));
    }
    out
}

fn report_rows(reports: &[CheckReport]) -> (Vec<String>, Vec<Vec<String>>) {
    let headers = ["identity", "description", "passed", "total", "status"].map(String::from).to_vec();
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.identity.clone(),
                r.label.clone(),
                r.passed.to_string(),
                r.total.to_string(),
                if r.ok() { "OK" } else { "FAILED" }.to_string(),
            ]
        })
        .collect();
    (headers, rows)
}

pub fn render(out: &Output, format: Format) -> String {
    match (out, format) {
        (Output::Scalar(s), Format::Text) => format!("{s}\n"),
        (Output::Scalar(s), Format::Json) => format!("{}\n", json!({"value": s.to_json()})),
        (Output::Scalar(s), Format::Csv) => csv_of(&["value".into()], &[vec![plain(&s.to_json())]]),
        (Output::Scalar(s), Format::Markdown) => markdown_of(&["value".into()], &[vec![s.to_string()]]),

        (Output::Matrix(m), Format::Text) => m.to_string(),
        (Output::Matrix(m), Format::Json) => format!("{}\n", json!({"matrix": matrix_json(m)})),
        (Output::Matrix(m), f) => {
            let headers: Vec<String> = (0..m.cols()).map(|j| j.to_string()).collect();
            let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|x| plain(&x.to_json())).collect()).collect();
            if f == Format::Csv {
                csv_of(&[], &rows)
            } else {
                markdown_of(&headers, &rows)
            }
        }

        (Output::Record(kv), Format::Json) => {
            let obj: Map<String, Value> = kv.iter().cloned().collect();
            format!("{}\n", Value::Object(obj))
        }
        (Output::Record(kv), Format::Text) => kv.iter().map(|(k, v)| format!("{k}: {}\n", plain(v))).collect(),
        (Output::Record(kv), f) => {
            let headers = vec!["key".to_string(), "value".to_string()];
            let rows: Vec<Vec<String>> = kv.iter().map(|(k, v)| vec![k.clone(), plain(v)]).collect();
            if f == Format::Csv {
                csv_of(&headers, &rows)
            } else {
                markdown_of(&headers, &rows)
            }
        }

        (Output::Table { headers, rows }, Format::Json) => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(headers.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect();
            format!("{}\n", Value::Array(items))
        }
        (Output::Table { headers, rows }, f) => {
            let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(plain).collect()).collect();
            if f == Format::Csv {
                csv_of(headers, &cells)
            } else {
                markdown_of(headers, &cells)
            }
        }

        (Output::Report(reports), Format::Text) => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&format!("{r}\n"));
                for f in &r.failures {
                    s.push_str(&format!("  {f}\n"));
                }
            }
            s
        }
        (Output::Report(reports), Format::Json) => {
            let ok = reports.iter().all(CheckReport::ok);
            format!("{}\n", json!({"ok": ok, "checks": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>()}))
        }
        (Output::Report(reports), f) => {
            let (h, rows) = report_rows(reports);
            if f == Format::Csv {
                csv_of(&h, &rows)
            } else {
                markdown_of(&h, &rows)
            }
        }
    }
}
