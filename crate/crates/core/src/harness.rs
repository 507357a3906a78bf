//! Seeded experiment sweeps over RIS sizes, per-trial records, aggregation
//! and solver-only timing.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::baselines::{
    exhaustive_search, greedy_bitflip, random_best_of_k, DEFAULT_EXHAUSTIVE_LIMIT,
};
use crate::das::das_solve;
use crate::error::{Error, Result};
use crate::model::{generate_channel, snr_db, ChannelParams, ChannelRealization};

pub const TRIALS_HEADER: &str = "n,trial,method,power,snr_db,wall_time_s";
pub const AGGREGATE_HEADER: &str = "n,method,mean_snr_db,mean_power,total_time_s,optimality_rate";

/// Relative tolerance for counting a trial as matching the oracle.
pub const ORACLE_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Das,
    Exhaustive,
    Greedy,
    Random,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Das, Method::Exhaustive, Method::Greedy, Method::Random];

    pub fn name(self) -> &'static str {
        match self {
            Method::Das => "das",
            Method::Exhaustive => "exhaustive",
            Method::Greedy => "greedy",
            Method::Random => "random",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| format!("unknown method `{s}` (expected das, exhaustive, greedy or random)"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub base_seed: u64,
    pub methods: Vec<Method>,
    pub channel_params: ChannelParams,
    pub exhaustive_limit: usize,
    /// Draws for the random baseline; its winner also seeds the greedy search.
    pub random_k: usize,
    pub greedy_max_sweeps: usize,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        Self {
            n_values: vec![16],
            trials: 1000,
            base_seed: 0,
            methods: vec![Method::Das],
            channel_params: ChannelParams::default(),
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            random_k: 16,
            greedy_max_sweeps: 1000,
        }
    }
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidPlan("trials must be at least 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::InvalidPlan("at least one N is required".into()));
        }
        if self.n_values.contains(&0) {
            return Err(Error::InvalidPlan("every N must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidPlan("at least one method is required".into()));
        }
        if self.random_k == 0 || self.greedy_max_sweeps == 0 {
            return Err(Error::InvalidPlan("random_k and greedy_max_sweeps must be at least 1".into()));
        }
        if self.methods.contains(&Method::Exhaustive) {
            if let Some(&n) = self.n_values.iter().find(|&&n| n > self.exhaustive_limit || n >= 64) {
                return Err(Error::ExhaustiveLimit {
                    n,
                    limit: self.exhaustive_limit,
                });
            }
        }
        Ok(())
    }

    /// Methods in canonical order, without duplicates.
    pub fn ordered_methods(&self) -> Vec<Method> {
        let mut m = self.methods.clone();
        m.sort();
        m.dedup();
        m
    }
}

/// SplitMix64 finalizer.
fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of the channel drawn for `trial` at size `n`:
/// `mix(mix(mix(base_seed) ^ n) ^ trial)` with the SplitMix64 finalizer.
pub fn trial_seed(base_seed: u64, n: usize, trial: usize) -> u64 {
    mix64(mix64(mix64(base_seed) ^ n as u64) ^ trial as u64)
}

/// Seed of the random-sampling baseline, decorrelated from the channel draw.
pub fn sampler_seed(base_seed: u64, n: usize, trial: usize) -> u64 {
    mix64(trial_seed(base_seed, n, trial) ^ 0x5A5A_5A5A_5A5A_5A5A)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub n: usize,
    pub trial: usize,
    pub method: Method,
    pub power: f64,
    pub snr_db: f64,
    /// Solver time only, in seconds.
    pub wall_time: f64,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t0 = Instant::now();
    let out = f();
    (out, t0.elapsed().as_secs_f64())
}

fn run_trial(plan: &ExperimentPlan, methods: &[Method], n: usize, trial: usize) -> Result<Vec<TrialRecord>> {
    let ch = generate_channel(n, trial_seed(plan.base_seed, n, trial), &plan.channel_params)?;
    let s_seed = sampler_seed(plan.base_seed, n, trial);

    // Greedy always starts from the random winner, so draw it when either runs.
    let needs_random = methods.iter().any(|m| matches!(m, Method::Random | Method::Greedy));
    let random = if needs_random {
        let (r, t) = timed(|| random_best_of_k(&ch, plan.random_k, s_seed));
        Some((r?, t))
    } else {
        None
    };

    let mut out = Vec::with_capacity(methods.len());
    for &method in methods {
        let (power, wall_time) = match method {
            Method::Das => {
                let (sol, t) = timed(|| das_solve(&ch));
                (sol.power, t)
            }
            Method::Exhaustive => {
                let (r, t) = timed(|| exhaustive_search(&ch, plan.exhaustive_limit));
                (r?.power, t)
            }
            Method::Random => {
                let (r, t) = random.as_ref().expect("random drawn above");
                (r.power, *t)
            }
            Method::Greedy => {
                let (start, _) = random.as_ref().expect("random drawn above");
                let (r, t) = timed(|| greedy_bitflip(&ch, &start.config, plan.greedy_max_sweeps));
                (r?.power, t)
            }
        };
        out.push(record(&ch, n, trial, method, power, wall_time));
    }
    Ok(out)
}

fn record(ch: &ChannelRealization, n: usize, trial: usize, method: Method, power: f64, wall_time: f64) -> TrialRecord {
    TrialRecord {
        n,
        trial,
        method,
        power,
        snr_db: snr_db(power, ch.noise_power()),
        wall_time,
    }
}

/// Runs every `(N, trial, method)` triple once. Trials run in parallel;
/// records come back ordered by `N` (plan order), then trial, then method.
pub fn run_plan(plan: &ExperimentPlan) -> Result<Vec<TrialRecord>> {
    plan.validate()?;
    let methods = plan.ordered_methods();
    let jobs: Vec<(usize, usize)> = plan
        .n_values
        .iter()
        .flat_map(|&n| (0..plan.trials).map(move |t| (n, t)))
        .collect();
    let per_trial: Vec<Vec<TrialRecord>> = jobs
        .par_iter()
        .map(|&(n, t)| run_trial(plan, &methods, n, t))
        .collect::<Result<_>>()?;
    Ok(per_trial.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub n: usize,
    pub method: Method,
    pub mean_snr_db: f64,
    pub mean_power: f64,
    pub total_time: f64,
    /// Fraction of trials within [`ORACLE_REL_TOL`] of the exhaustive
    /// optimum; `None` when the oracle did not run.
    pub optimality_rate: Option<f64>,
    pub trials: usize,
}

/// Groups by `(N, method)`, ordered by `N` then method.
pub fn aggregate(records: &[TrialRecord]) -> Vec<AggregateRow> {
    let oracle: BTreeMap<(usize, usize), f64> = records
        .iter()
        .filter(|r| r.method == Method::Exhaustive)
        .map(|r| ((r.n, r.trial), r.power))
        .collect();

    let mut groups: BTreeMap<(usize, Method), Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.n, r.method)).or_default().push(r);
    }

    groups
        .into_iter()
        .map(|((n, method), rs)| {
            let count = rs.len() as f64;
            let mean_snr_db = rs.iter().map(|r| r.snr_db).sum::<f64>() / count;
            let mean_power = rs.iter().map(|r| r.power).sum::<f64>() / count;
            let total_time = rs.iter().map(|r| r.wall_time).sum();
            let matched: Vec<bool> = rs
                .iter()
                .filter_map(|r| {
                    oracle
                        .get(&(r.n, r.trial))
                        .map(|&best| (r.power - best).abs() <= ORACLE_REL_TOL * best.abs())
                })
                .collect();
            let optimality_rate = if matched.is_empty() {
                None
            } else {
                Some(matched.iter().filter(|&&m| m).count() as f64 / matched.len() as f64)
            };
            AggregateRow {
                n,
                method,
                mean_snr_db,
                mean_power,
                total_time,
                optimality_rate,
                trials: rs.len(),
            }
        })
        .collect()
}

/// Solver-only DaS time per `N`, summed over `plan.trials` channels.
///
/// Channels are generated up front; one untimed warm-up solve precedes each
/// size. Runs serially.
pub fn timing_scaling(plan: &ExperimentPlan) -> Result<Vec<(usize, f64)>> {
    plan.validate()?;
    if plan.ordered_methods() != [Method::Das] {
        return Err(Error::InvalidPlan("timing_scaling times the das method only".into()));
    }
    plan.n_values
        .iter()
        .map(|&n| {
            let channels = (0..plan.trials)
                .map(|t| generate_channel(n, trial_seed(plan.base_seed, n, t), &plan.channel_params))
                .collect::<Result<Vec<_>>>()?;
            std::hint::black_box(das_solve(&channels[0]));
            let total: f64 = channels
                .iter()
                .map(|ch| {
                    let (sol, t) = timed(|| das_solve(std::hint::black_box(ch)));
                    std::hint::black_box(sol);
                    t
                })
                .sum();
            Ok((n, total))
        })
        .collect()
}

pub fn write_trials_csv<W: Write>(records: &[TrialRecord], mut out: W) -> Result<()> {
    writeln!(out, "{TRIALS_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n, r.trial, r.method, r.power, r.snr_db, r.wall_time
        )?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_aggregate_csv<W: Write>(rows: &[AggregateRow], mut out: W) -> Result<()> {
    writeln!(out, "{AGGREGATE_HEADER}")?;
    for r in rows {
        let rate = r.optimality_rate.map(|x| x.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n, r.method, r.mean_snr_db, r.mean_power, r.total_time, rate
        )?;
    }
    out.flush()?;
    Ok(())
}
