//! CSV and JSON output.

use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::run::RunRecord;

#[derive(Serialize)]
struct Row<'a> {
    family: &'a str,
    n: usize,
    m: usize,
    structure: &'a str,
    comparisons: u64,
    #[serde(rename = "H")]
    h: f64,
    #[serde(rename = "H_m")]
    h_m: f64,
    lower_bound: f64,
    ratio: f64,
}

/// Sorts by family, structure, workload and `n`.
pub fn sort_records(records: &mut [RunRecord]) {
    records.sort_by(|a, b| {
        (a.family, a.structure, &a.workload, a.n, a.pseed)
            .cmp(&(b.family, b.structure, &b.workload, b.n, b.pseed))
    });
}

/// Writes the gate columns `family,n,m,structure,comparisons,H,H_m,lower_bound,ratio`.
pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(Row {
            family: r.family.name(),
            n: r.n,
            m: r.m,
            structure: r.structure.name(),
            comparisons: r.comparisons,
            h: r.h,
            h_m: r.h_m,
            lower_bound: r.lower_bound,
            ratio: r.ratio,
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(records: &[RunRecord], out: W) -> serde_json::Result<()> {
    serde_json::to_writer_pretty(out, records)
}

/// Reads every `*.json` file in `dir`; each holds one record or an array.
pub fn read_dir(dir: &Path) -> std::io::Result<Vec<RunRecord>> {
    let mut out = Vec::new();
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    for p in paths {
        let mut text = String::new();
        std::fs::File::open(&p)?.read_to_string(&mut text)?;
        let bad = |e: serde_json::Error| std::io::Error::new(std::io::ErrorKind::InvalidData, format!("{}: {e}", p.display()));
        if text.trim_start().starts_with('[') {
            out.extend(serde_json::from_str::<Vec<RunRecord>>(&text).map_err(bad)?);
        } else {
            out.push(serde_json::from_str(&text).map_err(bad)?);
        }
    }
    Ok(out)
}
