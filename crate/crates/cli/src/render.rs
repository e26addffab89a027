//! Text output: tables for people, tab-separated records for tools.

use std::collections::BTreeMap;
use std::fmt::Write;

use alea::dist::{Dist, Prob};
use alea::types::Type;
use alea::values::{exact_decimal, render_rational, Val};

/// Exact decimal when the expansion terminates; otherwise `≈` and 15
/// significant digits.
fn decimal_column(p: &Prob) -> String {
    exact_decimal(p).unwrap_or_else(|| format!("≈ {}", alea::values::approx_decimal(p, 15)))
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            if c + 1 == r.len() {
                line.push_str(cell);
            } else {
                let pad = widths[c] - cell.chars().count();
                write!(line, "{cell}{}  ", " ".repeat(pad)).unwrap();
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Total mass per tag, when every outcome is tagged.
fn by_case(d: &Dist) -> Option<BTreeMap<String, Prob>> {
    let mut out: BTreeMap<String, Prob> = BTreeMap::new();
    for (v, p) in d {
        let Val::Tag(c, _) = v else { return None };
        *out.entry(c.as_str().to_string())
            .or_insert_with(|| Prob::from_integer(0.into())) += p;
    }
    Some(out)
}

pub fn analysis(d: &Dist, ty: &Type) -> String {
    let mut out = format!("type: {ty}\n");
    let mut rows = vec![vec![
        "value".to_string(),
        "probability".to_string(),
        "decimal".to_string(),
    ]];
    for (v, p) in d {
        rows.push(vec![v.to_string(), p.to_string(), decimal_column(p)]);
    }
    out.push_str(&table(&rows));
    if let Some(cases) = by_case(d) {
        if cases.len() < d.len() {
            out.push_str("by case:\n");
            let rows: Vec<Vec<String>> = cases
                .iter()
                .map(|(c, p)| vec![format!("@{c}"), p.to_string(), decimal_column(p)])
                .collect();
            out.push_str(&table(&rows));
        }
    }
    if let Ok(Val::Num(m)) = d.mean() {
        let text = match m.as_rational() {
            Some(r) => render_rational(r),
            None => m.to_string(),
        };
        writeln!(out, "mean: {text}").unwrap();
    }
    out
}

/// One record per line: value, numerator and denominator, tab-separated.
pub fn record(v: &Val, p: &Prob) -> String {
    format!("{v}\t{}\t{}\n", p.numer(), p.denom())
}

pub fn analysis_records(d: &Dist) -> String {
    d.iter().map(|(v, p)| record(v, p)).collect()
}

/// Each trial as a record weighted `1/trials`.
pub fn trial_records(samples: &[Val]) -> String {
    let w = Prob::new(1.into(), (samples.len() as u64).into());
    samples.iter().map(|v| record(v, &w)).collect()
}

pub fn frequencies(samples: &[Val], ty: &Type) -> String {
    let mut counts: BTreeMap<&Val, u64> = BTreeMap::new();
    for v in samples {
        *counts.entry(v).or_default() += 1;
    }
    let n = samples.len() as u64;
    let mut out = format!("type: {ty}\ntrials: {n}\n");
    let mut rows = vec![vec![
        "value".into(),
        "count".into(),
        "frequency".into(),
        "decimal".into(),
    ]];
    for (v, k) in counts {
        let f = Prob::new(k.into(), n.into());
        rows.push(vec![
            v.to_string(),
            k.to_string(),
            f.to_string(),
            decimal_column(&f),
        ]);
    }
    out.push_str(&table(&rows));
    out
}
