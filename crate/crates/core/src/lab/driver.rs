//! Chunked, range-parallel execution with ordered merging, optional
//! checkpoint files and a wall-clock budget.

use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::{Error, Result};

/// Aggregation state of a scan: built per chunk, combined in range order.
pub(crate) trait Tally: Default + Send + Serialize + DeserializeOwned {
    fn merge(&mut self, later: Self);
}

#[derive(Serialize, Deserialize)]
struct Checkpoint<S> {
    stage: String,
    config: ExperimentConfig,
    completed_upto: u64,
    state: S,
}

pub(crate) struct DriveOutcome<S> {
    pub state: S,
    pub completed_upto: u64,
    /// Set when the budget ran out before `end`.
    pub stopped: Option<String>,
    pub resumed_from: Option<u64>,
}

/// Processes `[start, end]` in chunks of `config.checkpoint_every` integers.
/// Chunks run in parallel one batch at a time and are merged in ascending
/// order, so the result does not depend on the worker count.
pub(crate) fn drive<S, F>(config: &ExperimentConfig, stage: &str, start: u64, end: u64, work: F) -> Result<DriveOutcome<S>>
where
    S: Tally,
    F: Fn(u64, u64) -> Result<S> + Sync,
{
    let clock = Instant::now();
    let workers = config.run.effective_workers();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;

    let mut state = S::default();
    let mut completed = start.saturating_sub(1);
    let mut resumed_from = None;
    if let Some(path) = &config.run.checkpoint_path {
        if let Some(cp) = load_checkpoint::<S>(path, stage, config)? {
            completed = cp.completed_upto;
            state = cp.state;
            resumed_from = Some(completed);
        }
    }

    let chunk = config.checkpoint_every;
    let batch_len = (workers as u64 * 4).max(1);
    while completed < end {
        let mut bounds = Vec::new();
        let mut lo = completed + 1;
        while lo <= end && (bounds.len() as u64) < batch_len {
            let hi = lo.saturating_add(chunk - 1).min(end);
            bounds.push((lo, hi));
            lo = hi + 1;
        }
        let parts: Vec<Result<S>> = pool.install(|| bounds.par_iter().map(|&(lo, hi)| work(lo, hi)).collect());
        for part in parts {
            state.merge(part?);
        }
        completed = bounds.last().map_or(completed, |b| b.1);

        if let Some(path) = &config.run.checkpoint_path {
            save_checkpoint(path, stage, config, completed, &state)?;
        }
        if completed < end {
            if let Some(budget) = config.run.time_budget_secs {
                if clock.elapsed().as_secs_f64() > budget {
                    return Ok(DriveOutcome {
                        state,
                        completed_upto: completed,
                        stopped: Some(format!("time budget of {budget} s exhausted")),
                        resumed_from,
                    });
                }
            }
        }
    }
    Ok(DriveOutcome { state, completed_upto: completed, stopped: None, resumed_from })
}

fn load_checkpoint<S: DeserializeOwned>(path: &Path, stage: &str, config: &ExperimentConfig) -> Result<Option<Checkpoint<S>>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(source) => return Err(Error::Io { path: path.to_path_buf(), source }),
    };
    let cp: Checkpoint<S> = serde_json::from_str(&text).map_err(|e| Error::Config {
        path: path.to_path_buf(),
        message: format!("unreadable checkpoint: {e}"),
    })?;
    if cp.stage != stage {
        // a checkpoint from another stage of the same scan
        return Ok(None);
    }
    if cp.config != *config {
        return Err(Error::Config {
            path: path.to_path_buf(),
            message: "checkpoint was written for a different configuration".into(),
        });
    }
    Ok(Some(cp))
}

fn save_checkpoint<S: Serialize>(path: &Path, stage: &str, config: &ExperimentConfig, completed: u64, state: &S) -> Result<()> {
    let cp = Checkpoint { stage: stage.to_string(), config: config.clone(), completed_upto: completed, state };
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string(&cp).expect("checkpoint state serializes");
    fs::write(&tmp, text).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}
