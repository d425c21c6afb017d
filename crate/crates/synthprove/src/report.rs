//! Per-problem results and the solved/median summary printed by `eval`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use synthprove_core::{SaturationStats, Status};

pub fn status_name(s: Status) -> &'static str {
    match s {
        Status::RefutationFound => "RefutationFound",
        Status::Saturated => "Saturated",
        Status::BudgetExhausted => "BudgetExhausted",
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub problem: String,
    pub cost: String,
    pub status: String,
    pub seconds: f64,
    pub generated: usize,
    pub processed: usize,
}

impl RunRow {
    pub fn new(problem: &str, cost: &str, status: Status, stats: &SaturationStats) -> Self {
        RunRow {
            problem: problem.into(),
            cost: cost.into(),
            status: status_name(status).into(),
            seconds: stats.elapsed_secs,
            generated: stats.generated_count,
            processed: stats.processed_count,
        }
    }

    pub fn solved(&self) -> bool {
        self.status == status_name(Status::RefutationFound)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CostSummary {
    pub cost: String,
    pub attempted: usize,
    pub solved: usize,
    pub total_generated: usize,
    /// Over solved problems; `None` when nothing was solved.
    pub median_seconds: Option<f64>,
    pub median_generated: Option<f64>,
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 { values[n / 2] } else { (values[n / 2 - 1] + values[n / 2]) / 2.0 })
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    pub rows: Vec<RunRow>,
}

impl RunReport {
    /// Cost specs in order of first appearance.
    pub fn costs(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.cost) {
                out.push(r.cost.clone());
            }
        }
        out
    }

    pub fn summary(&self) -> Vec<CostSummary> {
        self.costs()
            .into_iter()
            .map(|cost| {
                let rows: Vec<&RunRow> = self.rows.iter().filter(|r| r.cost == cost).collect();
                let solved: Vec<&RunRow> = rows.iter().copied().filter(|r| r.solved()).collect();
                CostSummary {
                    attempted: rows.len(),
                    solved: solved.len(),
                    total_generated: rows.iter().map(|r| r.generated).sum(),
                    median_seconds: median(&mut solved.iter().map(|r| r.seconds).collect::<Vec<_>>()),
                    median_generated: median(&mut solved.iter().map(|r| r.generated as f64).collect::<Vec<_>>()),
                    cost,
                }
            })
            .collect()
    }

    /// Median generated-clause counts of two cost specs over the problems
    /// both of them solved, with the number of such problems.
    pub fn common_medians(&self, a: &str, b: &str) -> Option<(f64, f64, usize)> {
        let solved = |cost: &str| -> BTreeMap<&str, usize> {
            self.rows.iter().filter(|r| r.cost == cost && r.solved()).map(|r| (r.problem.as_str(), r.generated)).collect()
        };
        let (sa, sb) = (solved(a), solved(b));
        let mut ga = Vec::new();
        let mut gb = Vec::new();
        for (p, g) in &sa {
            if let Some(h) = sb.get(p) {
                ga.push(*g as f64);
                gb.push(*h as f64);
            }
        }
        let n = ga.len();
        Some((median(&mut ga)?, median(&mut gb)?, n))
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<32} {:>8} {:>8} {:>12} {:>14}", "cost", "solved", "total", "median_s", "median_gen");
        for s in self.summary() {
            let _ = writeln!(
                out,
                "{:<32} {:>8} {:>8} {:>12} {:>14}",
                s.cost,
                s.solved,
                s.attempted,
                s.median_seconds.map_or("-".into(), |v| format!("{v:.4}")),
                s.median_generated.map_or("-".into(), |v| format!("{v:.1}")),
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> anyhow::Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        for r in &self.rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }
}
