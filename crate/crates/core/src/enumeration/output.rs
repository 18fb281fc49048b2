//! Run artefacts: `run-<digest>/` holding a CSV row and a JSON line per
//! candidate plus a JSON summary. Nothing time- or machine-dependent is
//! written, so identical configs give byte-identical files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::{CandidateRecord, EnumerationConfig, EnumerationResult, QuadraticResult};
use crate::error::{Error, Result};
use crate::numerics::rational::fmt_short;
use crate::pcf::{PcfVerdict, Stage};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunFiles {
    pub dir: PathBuf,
    pub csv: PathBuf,
    pub jsonl: PathBuf,
    pub summary: PathBuf,
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

fn run_dir(base: &Path, config: &EnumerationConfig, degree: usize) -> Result<PathBuf> {
    let dir = base.join(format!("run-d{degree}-{}", config.digest()));
    fs::create_dir_all(&dir).map_err(io)?;
    Ok(dir)
}

fn iterations(r: &CandidateRecord) -> usize {
    match (&r.witness, &r.verdict) {
        (Some(w), _) => w.iterate,
        (None, Some(PcfVerdict::NotPcf { witness })) => witness.iterate,
        (None, Some(PcfVerdict::Undecided { iterations, .. })) => *iterations,
        (None, Some(v)) => v.orbit_len(),
        (None, None) => 0,
    }
}

/// The JSON-lines record of one candidate.
pub fn record_json(r: &CandidateRecord) -> Value {
    let mut v = json!({
        "a": r.a,
        "b": r.b,
        "A": fmt_short(&r.big_a),
        "B": fmt_short(&r.big_b),
        "stage": r.stage.label(),
        "verdict": r.verdict_label(),
        "iterations": iterations(r),
    });
    let witness = r.witness.as_ref().or(match &r.verdict {
        Some(PcfVerdict::NotPcf { witness }) => Some(witness),
        _ => None,
    });
    if let Some(w) = witness {
        v["witness"] = serde_json::to_value(w).expect("witness serializes");
    }
    if let Some(PcfVerdict::Pcf { orbits }) = &r.verdict {
        v["orbit"] = serde_json::to_value(orbits).expect("orbits serialize");
    }
    v
}

fn csv_witness(r: &CandidateRecord) -> String {
    match (&r.stage, &r.witness, &r.verdict) {
        (Stage::Integrality { place }, _, _) => format!("{place}"),
        (_, Some(w), _) => w.to_string(),
        (_, None, Some(PcfVerdict::NotPcf { witness })) => witness.to_string(),
        _ => String::new(),
    }
}

/// The config as recorded in summaries: `workers` is dropped, like in the
/// digest, so the thread count cannot change a single byte of output.
fn config_json(config: &EnumerationConfig) -> Value {
    let mut v = serde_json::to_value(config).expect("config serializes");
    if let Some(m) = v.as_object_mut() {
        m.remove("workers");
    }
    v
}

pub fn summary_json(result: &EnumerationResult) -> Value {
    let pairs = |xs: &[super::CubicPcf]| -> Vec<Value> {
        xs.iter()
            .map(|p| json!({"A": fmt_short(&p.a), "B": fmt_short(&p.b), "orbit_len": p.verdict.orbit_len()}))
            .collect()
    };
    json!({
        "degree": 3,
        "config": config_json(&result.config),
        "digest": result.config.digest(),
        "grid_size": result.grid_size,
        "stage_counts": result.stage_counts,
        "pcf": pairs(&result.pcf),
        "undecided": pairs(&result.undecided),
    })
}

pub fn write_cubic_run(result: &EnumerationResult, base: &Path) -> Result<RunFiles> {
    let dir = run_dir(base, &result.config, 3)?;
    let files = RunFiles {
        csv: dir.join("candidates.csv"),
        jsonl: dir.join("candidates.jsonl"),
        summary: dir.join("summary.json"),
        dir,
    };

    let mut w = csv::Writer::from_path(&files.csv).map_err(io)?;
    w.write_record(["a", "b", "A", "B", "stage", "verdict", "witness", "orbit_len"])
        .map_err(io)?;
    for r in &result.records {
        let orbit_len = r.verdict.as_ref().map_or(0, |v| v.orbit_len());
        w.write_record([
            r.a.to_string(),
            r.b.to_string(),
            fmt_short(&r.big_a),
            fmt_short(&r.big_b),
            r.stage.label(),
            r.verdict_label().to_string(),
            csv_witness(r),
            orbit_len.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(io)?;

    let mut out = fs::File::create(&files.jsonl).map_err(io)?;
    for r in &result.records {
        writeln!(out, "{}", record_json(r)).map_err(io)?;
    }
    let summary = serde_json::to_string_pretty(&summary_json(result)).map_err(io)?;
    fs::write(&files.summary, summary + "\n").map_err(io)?;
    Ok(files)
}

pub fn write_quadratic_run(result: &QuadraticResult, config: &EnumerationConfig, base: &Path) -> Result<RunFiles> {
    let dir = run_dir(base, config, 2)?;
    let files = RunFiles {
        csv: dir.join("candidates.csv"),
        jsonl: dir.join("candidates.jsonl"),
        summary: dir.join("summary.json"),
        dir,
    };
    let mut w = csv::Writer::from_path(&files.csv).map_err(io)?;
    w.write_record(["c", "verdict", "witness", "orbit_len"]).map_err(io)?;
    let mut out = fs::File::create(&files.jsonl).map_err(io)?;
    for r in &result.records {
        let witness = match &r.verdict {
            PcfVerdict::NotPcf { witness } => witness.to_string(),
            _ => String::new(),
        };
        w.write_record([fmt_short(&r.c), r.verdict.label().into(), witness, r.verdict.orbit_len().to_string()])
            .map_err(io)?;
        let mut v = json!({"c": fmt_short(&r.c), "verdict": r.verdict});
        v["verdict_label"] = r.verdict.label().into();
        writeln!(out, "{v}").map_err(io)?;
    }
    w.flush().map_err(io)?;
    let summary = json!({
        "degree": 2,
        "config": config_json(config),
        "digest": config.digest(),
        "grid_derivation": result.grid_derivation,
        "grid_size": result.records.len(),
        "pcf": result.pcf.iter().map(fmt_short).collect::<Vec<_>>(),
        "undecided": result.undecided.iter().map(fmt_short).collect::<Vec<_>>(),
    });
    fs::write(&files.summary, serde_json::to_string_pretty(&summary).map_err(io)? + "\n").map_err(io)?;
    Ok(files)
}
