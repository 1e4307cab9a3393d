//! Rendering of tables and reports as JSON, CSV or markdown.

use clap::ValueEnum;
use orbitcode::io;
use orbitcode::tables::{Table31, Table32};
use orbitcode::{CertReport, LinearizedPoly};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Serialize)]
pub struct SweepRow {
    pub theta: Vec<u32>,
    pub gamma: Vec<u32>,
    pub degree: u64,
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
}

fn markdown(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n", header.join(" | "));
    out.push_str(&format!("|{}\n", "---|".repeat(header.len())));
    for r in rows {
        out.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    out
}

fn mark(ok: bool) -> String {
    if ok { "yes" } else { "NO" }.to_string()
}

fn list(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn table31(t: &Table31, format: Format) -> String {
    let header = ["l", "a_l", "a_0", "polynomial", "N'", "reference", "matches"];
    let rows: Vec<Vec<String>> = t
        .rows
        .iter()
        .map(|r| {
            vec![
                r.l.to_string(),
                r.a_l.to_string(),
                r.a0.to_string(),
                r.polynomial.clone(),
                r.degree.to_string(),
                r.reference.to_string(),
                mark(r.matches),
            ]
        })
        .collect();
    match format {
        Format::Json => pretty(t),
        Format::Csv => csv_text(&header, &rows),
        Format::Markdown => {
            let mut out = markdown(&header, &rows);
            let mismatches = t.rows.iter().filter(|r| !r.matches).count();
            out.push_str(&format!(
                "\nminimal under divisibility: {} (reference {})\n",
                list(&t.minimal),
                list(&t.reference_minimal)
            ));
            if mismatches > 0 {
                out.push_str(&format!("rows differing from the reference: {mismatches}\n"));
            }
            out
        }
    }
}

pub fn table32(t: &Table32, format: Format) -> String {
    let header = ["l", "degrees", "N'_l", "reference", "matches"];
    let rows: Vec<Vec<String>> = t
        .rows
        .iter()
        .map(|r| {
            vec![
                r.l.to_string(),
                list(&r.degrees),
                r.lcm.to_string(),
                r.reference.to_string(),
                mark(r.matches),
            ]
        })
        .collect();
    match format {
        Format::Json => pretty(t),
        Format::Csv => csv_text(&header, &rows),
        Format::Markdown => {
            let mut out = format!(
                "field F_2[X]/({:?}), theta = {:?}\n\n",
                t.defining_poly, t.generator
            );
            out.push_str(&markdown(&header, &rows));
            if t.rows.iter().any(|r| !r.matches) {
                out.push_str("\nsome values differ from the reference for this presentation\n");
            }
            out
        }
    }
}

pub fn degree(f: &LinearizedPoly, degree: u64, format: Format) -> String {
    let poly = io::poly_to_json(f);
    match format {
        Format::Json => pretty(&json!({ "polynomial": poly, "splitting_degree": degree })),
        Format::Csv => csv_text(&["polynomial", "splitting_degree"], &[vec![f.to_string(), degree.to_string()]]),
        Format::Markdown => markdown(&["polynomial", "N'"], &[vec![f.to_string(), degree.to_string()]]),
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}

fn value_str(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn report(r: &CertReport, format: Format) -> String {
    if format == Format::Json {
        return pretty(r);
    }
    let v = serde_json::to_value(r).expect("plain data");
    let scalar_keys = [
        "mode",
        "verdict",
        "pairs_checked",
        "max_intersection_dim",
        "observed_size",
        "claimed_size",
        "observed_min_distance",
        "claimed_distance",
        "seed",
        "wall_ms",
    ];
    let mut fields: Vec<(String, String)> = scalar_keys
        .iter()
        .map(|k| {
            let s = match &v[*k] {
                Value::Null => String::new(),
                other => value_str(other),
            };
            (k.to_string(), s)
        })
        .collect();
    let detail = r
        .witness_detail
        .as_ref()
        .map(|d| format!("V_{} vs alpha*V_{}, alpha={:?}, dim={}", d.i, d.j, d.alpha, d.dim));
    fields.push(("witness".into(), opt(&detail)));
    match format {
        Format::Csv => {
            let header: Vec<&str> = fields.iter().map(|(k, _)| k.as_str()).collect();
            let row: Vec<String> = fields.iter().map(|(_, v)| v.clone()).collect();
            csv_text(&header, &[row])
        }
        _ => {
            let rows: Vec<Vec<String>> = fields.into_iter().map(|(k, v)| vec![k, v]).collect();
            markdown(&["field", "value"], &rows)
        }
    }
}

pub fn sweep_table(rows: &[SweepRow], format: Format) -> String {
    let header = ["theta", "gamma", "N'"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![format!("{:?}", r.theta), format!("{:?}", r.gamma), r.degree.to_string()])
        .collect();
    match format {
        Format::Json => pretty(&rows),
        Format::Csv => csv_text(&header, &cells),
        Format::Markdown => markdown(&header, &cells),
    }
}
