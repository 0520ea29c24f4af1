//! Ordered parallel evaluation of parameter grids.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;

use kerr_optomech_core::{evaluate, Error, Evaluation, ParamGrid, Status};

use crate::output::RecordWriter;
use crate::recipes::Recipe;

/// Rows evaluated between two writes. Bounds memory on large grids.
const CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepSummary {
    pub rows: usize,
    pub counts: BTreeMap<&'static str, usize>,
    pub e_n_min: Option<f64>,
    pub e_n_max: Option<f64>,
    /// Rows whose covariance failed the uncertainty or symplectic checks.
    pub violations: usize,
}

impl SweepSummary {
    fn add(&mut self, ev: &Evaluation) {
        self.rows += 1;
        *self.counts.entry(ev.record.status.as_str()).or_default() += 1;
        if let Some(e) = ev.record.e_n {
            self.e_n_min = Some(self.e_n_min.map_or(e, |m| m.min(e)));
            self.e_n_max = Some(self.e_n_max.map_or(e, |m| m.max(e)));
        }
        if is_violation(ev) {
            self.violations += 1;
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.counts.get(status.as_str()).copied().unwrap_or(0)
    }

    pub fn report(&self) -> String {
        let mut s = format!("{} rows", self.rows);
        for status in Status::ALL {
            s.push_str(&format!(", {} {}", self.count(status), status.as_str()));
        }
        if let (Some(lo), Some(hi)) = (self.e_n_min, self.e_n_max) {
            s.push_str(&format!("; e_n in [{lo:.6e}, {hi:.6e}]"));
        }
        if self.violations > 0 {
            s.push_str(&format!("; {} invariant violations", self.violations));
        }
        s
    }
}

/// A covariance matrix that the physics forbids.
pub fn is_violation(ev: &Evaluation) -> bool {
    matches!(ev.error, Some(Error::Uncertainty(_)) | Some(Error::NumericalDomain(_)))
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("write failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

/// Evaluates rows `0..len` on `workers` threads and hands them to `sink` in
/// index order.
pub fn run_ordered<T, F, S>(len: usize, workers: usize, eval: F, mut sink: S) -> Result<(), SweepError>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
    S: FnMut(T) -> Result<(), SweepError>,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
    let mut start = 0;
    while start < len {
        let end = (start + CHUNK).min(len);
        let rows: Vec<T> = pool.install(|| (start..end).into_par_iter().map(&eval).collect());
        for row in rows {
            sink(row)?;
        }
        start = end;
    }
    Ok(())
}

/// Every grid point as a full record row.
pub fn run_sweep<W: Write>(grid: &ParamGrid, out: W, workers: usize) -> Result<SweepSummary, SweepError> {
    let mut writer = RecordWriter::full(out)?;
    let mut summary = SweepSummary::default();
    run_ordered(
        grid.len(),
        workers,
        |i| evaluate(&grid.point(i)),
        |ev| {
            summary.add(&ev);
            writer.write(&ev.record, None)?;
            Ok(())
        },
    )?;
    writer.finish()?;
    Ok(summary)
}

/// A figure recipe with its own column selection.
pub fn run_recipe<W: Write>(recipe: &Recipe, out: W, workers: usize) -> Result<SweepSummary, SweepError> {
    let mut writer = RecordWriter::recipe(out, recipe)?;
    let mut summary = SweepSummary::default();
    run_ordered(
        recipe.len(),
        workers,
        |i| {
            let (p, curve) = recipe.point(i);
            (evaluate(&p), curve)
        },
        |(ev, curve)| {
            summary.add(&ev);
            writer.write(&ev.record, curve)?;
            Ok(())
        },
    )?;
    writer.finish()?;
    Ok(summary)
}

/// Calls `f` on every evaluation of the recipe, in row order.
pub fn for_each_evaluation<F>(recipe: &Recipe, workers: usize, mut f: F) -> Result<(), SweepError>
where
    F: FnMut(usize, Evaluation),
{
    let mut i = 0;
    run_ordered(
        recipe.len(),
        workers,
        |i| evaluate(&recipe.point(i).0),
        |ev| {
            f(i, ev);
            i += 1;
            Ok(())
        },
    )
}
