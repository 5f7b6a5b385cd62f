//! Repeated attack trials over a grid of `(s, M)` points.

use std::io::Write;

use serde::{Deserialize, Serialize};
use thompson_core::{alice_token, KeyError, NormalWord, PrivateKey, ProtocolParams, SeededRng};

use crate::attack::{length_attack, AttackBudget, AttackReport, Outcome};
use crate::wire::{derive_key, derive_params};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridPoint {
    pub s: u64,
    #[serde(rename = "M")]
    pub m: usize,
}

/// A public base word, Alice's key and her token, all from one seed.
#[derive(Debug, Clone)]
pub struct Instance {
    pub params: ProtocolParams,
    pub key: PrivateKey,
    pub token: NormalWord,
}

impl Instance {
    pub fn generate(point: GridPoint, seed: u64) -> Result<Self, KeyError> {
        let params = derive_params(point.s, point.m, seed)?;
        let key = derive_key(&params, seed)?;
        let token = alice_token(&params, &key)?.u;
        Ok(Instance { params, key, token })
    }

    pub fn attack(&self, budget: AttackBudget) -> AttackReport {
        length_attack(self.params.base(), &self.token, self.params.s(), budget)
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub s: u64,
    #[serde(rename = "M")]
    pub m: usize,
    pub trial: usize,
    pub outcome: Outcome,
    pub nodes: u64,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSummary {
    pub s: u64,
    #[serde(rename = "M")]
    pub m: usize,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub median_nodes_to_success: Option<f64>,
    /// Median over trials of the log-log slope of vertices against expansions.
    pub growth_exponent: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub trials: Vec<TrialRow>,
    pub summary: Vec<PointSummary>,
}

impl SweepResult {
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        for row in &self.trials {
            writer.serialize(row)?;
        }
        if self.trials.is_empty() {
            writer.write_record(["s", "M", "trial", "outcome", "nodes", "seconds"])?;
        }
        writer.flush()?;
        Ok(())
    }
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    Some(if xs.len() % 2 == 1 { xs[mid] } else { (xs[mid - 1] + xs[mid]) / 2.0 })
}

/// Least-squares slope of `ln(vertices)` on `ln(expanded)`.
pub fn growth_exponent(report: &AttackReport) -> Option<f64> {
    let pts: Vec<(f64, f64)> = report
        .frontier_sizes
        .iter()
        .filter(|f| f.expanded > 0)
        .map(|f| ((f.expanded as f64).ln(), ((f.base_side + f.token_side) as f64).ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

struct Job {
    point: usize,
    trial: usize,
    seed: u64,
}

struct Done {
    row: TrialRow,
    growth: Option<f64>,
}

fn run_job(grid: &[GridPoint], job: &Job, budget: AttackBudget) -> Result<Done, KeyError> {
    let point = grid[job.point];
    let report = Instance::generate(point, job.seed)?.attack(budget);
    let row = TrialRow {
        s: point.s,
        m: point.m,
        trial: job.trial,
        outcome: report.outcome,
        nodes: report.nodes_expanded,
        seconds: report.wall_seconds,
    };
    Ok(Done { row, growth: growth_exponent(&report) })
}

/// Runs `trials` attacks per grid point. Trial seeds are drawn up front from
/// `seed`, so results do not depend on `parallel`.
pub fn attack_sweep(
    grid: &[GridPoint],
    trials: usize,
    budget: AttackBudget,
    seed: u64,
    parallel: usize,
) -> Result<SweepResult, KeyError> {
    let mut master = SeededRng::new(seed);
    let jobs: Vec<Job> = (0..grid.len())
        .flat_map(|point| (0..trials).map(move |trial| (point, trial)))
        .map(|(point, trial)| Job { point, trial, seed: master.next_u64() })
        .collect();

    let workers = parallel.max(1).min(jobs.len().max(1));
    let mut done: Vec<Option<Result<Done, KeyError>>> = (0..jobs.len()).map(|_| None).collect();
    if workers == 1 {
        for (slot, job) in done.iter_mut().zip(&jobs) {
            *slot = Some(run_job(grid, job, budget));
        }
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let results = std::sync::Mutex::new(&mut done);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    let Some(job) = jobs.get(i) else { break };
                    let r = run_job(grid, job, budget);
                    results.lock().expect("no worker panics while holding the lock")[i] = Some(r);
                });
            }
        });
    }

    let done = done.into_iter().map(|d| d.expect("every job ran")).collect::<Result<Vec<_>, _>>()?;
    let summary = grid
        .iter()
        .enumerate()
        .map(|(p, point)| {
            let mine: Vec<&Done> =
                done.iter().zip(&jobs).filter(|(_, j)| j.point == p).map(|(d, _)| d).collect();
            let wins: Vec<f64> = mine
                .iter()
                .filter(|d| d.row.outcome == Outcome::Success)
                .map(|d| d.row.nodes as f64)
                .collect();
            let successes = wins.len();
            PointSummary {
                s: point.s,
                m: point.m,
                trials,
                successes,
                success_rate: if trials == 0 { 0.0 } else { successes as f64 / trials as f64 },
                median_nodes_to_success: median(wins),
                growth_exponent: median(mine.iter().filter_map(|d| d.growth).collect()),
            }
        })
        .collect();
    Ok(SweepResult { trials: done.into_iter().map(|d| d.row).collect(), summary })
}
