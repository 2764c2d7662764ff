//! Benchmark harness and report formats.

use std::io::Write;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::heaphull_detailed;
use crate::par_reduce::{ReduceConfig, ReduceEngine};
use crate::pointgen::{generate, Distribution, GenSpec};

pub const DEFAULT_REPS: usize = 100;

/// One row per point count. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub n: usize,
    pub distribution: String,
    pub reps: usize,
    pub filter_ms: f64,
    pub hull_ms: f64,
    pub total_ms: f64,
    pub filter_rate: f64,
    pub hull_size: usize,
    pub threads: usize,
    pub chunk: usize,
}

pub const REPORT_FIELDS: [&str; 10] = [
    "n",
    "distribution",
    "reps",
    "filter_ms",
    "hull_ms",
    "total_ms",
    "filter_rate",
    "hull_size",
    "threads",
    "chunk",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!(
                "unknown report format '{other}' (expected json or csv)"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub distribution: Distribution,
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    pub distort_pct: f64,
    pub reduce: ReduceConfig,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Generates each size once, then times `reps` full pipeline runs on it.
pub fn run_bench(plan: &BenchPlan) -> Result<Vec<BenchReport>> {
    if plan.reps == 0 {
        return Err(Error::InvalidSpec("reps must be at least 1".into()));
    }
    if plan.sizes.is_empty() {
        return Err(Error::InvalidSpec("no point counts given".into()));
    }
    let engine = ReduceEngine::new(plan.reduce)?;
    let mut rows = Vec::with_capacity(plan.sizes.len());
    for &n in &plan.sizes {
        let spec = GenSpec {
            distribution: plan.distribution,
            n,
            seed: plan.seed,
            distort_pct: plan.distort_pct,
        };
        let points = generate(&spec)?;
        let (mut filter, mut hull, mut total, mut rate) = (0.0, 0.0, 0.0, 0.0);
        let mut hull_size = 0;
        for _ in 0..plan.reps {
            let run = heaphull_detailed(&points, &engine);
            filter += ms(run.timings.filter);
            hull += ms(run.timings.hull);
            total += ms(run.timings.total);
            rate += run.filter.filter_rate();
            hull_size = run.hull.h();
        }
        let reps = plan.reps as f64;
        rows.push(BenchReport {
            n,
            distribution: plan.distribution.name().to_string(),
            reps: plan.reps,
            filter_ms: filter / reps,
            hull_ms: hull / reps,
            total_ms: total / reps,
            filter_rate: rate / reps,
            hull_size,
            threads: plan.reduce.workers,
            chunk: plan.reduce.chunk_size,
        });
    }
    Ok(rows)
}

pub fn write_report<W: Write>(rows: &[BenchReport], format: ReportFormat, out: W) -> Result<()> {
    match format {
        ReportFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows)
                .map_err(|e| Error::Report(e.to_string()))?;
            writeln!(out).map_err(|e| Error::Report(e.to_string()))
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if rows.is_empty() {
                w.write_record(REPORT_FIELDS)
                    .map_err(|e| Error::Report(e.to_string()))?;
            }
            for row in rows {
                w.serialize(row).map_err(|e| Error::Report(e.to_string()))?;
            }
            w.flush().map_err(|e| Error::Report(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> BenchReport {
        BenchReport {
            n: 10,
            distribution: "normal".into(),
            reps: 2,
            filter_ms: 0.5,
            hull_ms: 0.25,
            total_ms: 0.75,
            filter_rate: 0.6,
            hull_size: 4,
            threads: 1,
            chunk: 32,
        }
    }

    #[test]
    fn csv_header_order() {
        let mut buf = Vec::new();
        write_report(&[row()], ReportFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), REPORT_FIELDS.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "10,normal,2,0.5,0.25,0.75,0.6,4,1,32"
        );
    }

    #[test]
    fn json_field_order() {
        let mut buf = Vec::new();
        write_report(&[row()], ReportFormat::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let positions: Vec<usize> = REPORT_FIELDS
            .iter()
            .map(|f| text.find(&format!("\"{f}\"")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(v[0]["hull_size"], 4);
    }

    #[test]
    fn empty_csv_still_has_header() {
        let mut buf = Vec::new();
        write_report(&[], ReportFormat::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap().trim(),
            REPORT_FIELDS.join(",")
        );
    }

    #[test]
    fn small_run_invariants() {
        let plan = BenchPlan {
            distribution: Distribution::UniformDisk,
            sizes: vec![100, 2000],
            reps: 3,
            seed: 5,
            distort_pct: 0.0,
            reduce: ReduceConfig::new(32, 2).unwrap(),
        };
        let rows = run_bench(&plan).unwrap();
        assert_eq!(rows.len(), 2);
        for r in &rows {
            assert!(r.total_ms >= r.filter_ms);
            assert!(r.filter_ms >= 0.0 && r.hull_ms >= 0.0);
            assert!((0.0..=1.0).contains(&r.filter_rate));
            assert_eq!(r.reps, 3);
            assert_eq!(r.distribution, "uniform_disk");
        }
    }

    #[test]
    fn rejects_zero_reps() {
        let plan = BenchPlan {
            distribution: Distribution::Normal,
            sizes: vec![10],
            reps: 0,
            seed: 0,
            distort_pct: 0.0,
            reduce: ReduceConfig::sequential(),
        };
        assert!(run_bench(&plan).is_err());
    }
}
