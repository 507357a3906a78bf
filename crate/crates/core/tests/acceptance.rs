//! Exit criteria. Runs serially (custom harness) so the timing criterion is
//! not disturbed by concurrently running tests. One PASS/FAIL line each.

use std::fs;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ris_das::harness::trial_seed;
use ris_das::{
    build_candidates, composite_phi, continuous_upper_bound, das_solve, exhaustive_search, fold_angles,
    generate_channel, greedy_bitflip, maximize_rank_one, random_best_of_k, received_power, run_plan,
    sort_folded, timing_scaling, ChannelParams, ChannelRealization, ExperimentPlan, Method,
};

const REL_TOL: f64 = 1e-9;
const ORACLE_SIZES: std::ops::RangeInclusive<usize> = 1..=14;
const ORACLE_TRIALS: usize = 1000;
const DOMINANCE_SIZES: [usize; 3] = [16, 64, 256];
const DOMINANCE_TRIALS: usize = 1000;
const RANDOM_K: usize = 16;
const TIMING_RUNS: usize = 100;
const TIMING_RATIO_MAX: f64 = 3.0;
/// Independent repetitions of the timing sweep; the median total per size is used.
const TIMING_REPEATS: usize = 5;
const GAIN_TRIALS: usize = 1000;
const GAIN_RANGE: (f64, f64) = (3.0, 5.4);
const PROPERTY_CASES: usize = 1000;
const ROTATIONS: usize = 100;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * a.abs().max(b.abs())
}

/// The oracle instance set: half with a direct link, half without.
fn oracle_instance(n: usize, t: usize) -> ChannelRealization {
    let params = ChannelParams {
        los: t < ORACLE_TRIALS / 2,
        ..Default::default()
    };
    generate_channel(n, trial_seed(2024, n, t), &params).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let mut failures = Vec::new();
    let mut total = 0;
    for n in ORACLE_SIZES {
        let bad: Vec<usize> = (0..ORACLE_TRIALS)
            .into_par_iter()
            .filter(|&t| {
                let ch = oracle_instance(n, t);
                let d = das_solve(&ch);
                let e = exhaustive_search(&ch, 20).unwrap();
                !rel_close(d.power, e.power)
            })
            .collect();
        total += ORACLE_TRIALS;
        failures.extend(bad.into_iter().map(|t| (n, t)));
    }
    if failures.is_empty() {
        Ok(format!("{total}/{total} instances match the exhaustive optimum (N = 1..14, tol {REL_TOL:e})"))
    } else {
        Err(format!("{} mismatches, first {:?}", failures.len(), &failures[..failures.len().min(5)]))
    }
}

/// Signs on the support of `z`, normalized so the last supported entry is `+1`.
/// Entries with `z_n = 0` do not change `|w^T z|` and are masked out.
fn normalized_support(w_bar: &[i8], z: &[Complex64]) -> Vec<i8> {
    let anchor = z.iter().rposition(|x| x.norm() > 0.0).map_or(1, |i| w_bar[i]);
    w_bar
        .iter()
        .zip(z)
        .map(|(&w, x)| if x.norm() > 0.0 { w * anchor } else { 0 })
        .collect()
}

fn candidate_membership() -> Outcome {
    let mut misses = Vec::new();
    let mut total = 0;
    for n in ORACLE_SIZES {
        let bad: Vec<usize> = (0..ORACLE_TRIALS)
            .into_par_iter()
            .filter(|&t| {
                let ch = oracle_instance(n, t);
                let e = exhaustive_search(&ch, 20).unwrap();
                let mut opt = e.config.signs().to_vec();
                opt.push(1);
                let cp = composite_phi(&ch);
                let z = cp.z();
                let fr = fold_angles(z);
                let cands = build_candidates(&fr, &sort_folded(&fr)).unwrap();
                let target = normalized_support(&opt, z);
                cands.len() != n + 1 || !cands.columns().iter().any(|c| normalized_support(c, z) == target)
            })
            .collect();
        total += ORACLE_TRIALS;
        misses.extend(bad.into_iter().map(|t| (n, t)));
    }
    if misses.is_empty() {
        Ok(format!("exhaustive optimum found among the N+1 candidates in {total}/{total} instances"))
    } else {
        Err(format!("{} misses, first {:?}", misses.len(), &misses[..misses.len().min(5)]))
    }
}

fn dominance_chain() -> Outcome {
    let mut violations = Vec::new();
    let mut strict_gaps = 0usize;
    for n in DOMINANCE_SIZES {
        let rows: Vec<(usize, bool, bool)> = (0..DOMINANCE_TRIALS)
            .into_par_iter()
            .map(|t| {
                let seed = trial_seed(77, n, t);
                let ch = generate_channel(n, seed, &ChannelParams::default()).unwrap();
                let r = random_best_of_k(&ch, RANDOM_K, seed ^ 0xD1CE).unwrap();
                let g = greedy_bitflip(&ch, &r.config, 10_000).unwrap();
                let d = das_solve(&ch);
                let ub = continuous_upper_bound(&ch);
                let ok = r.power <= g.power && g.power <= d.power && d.power <= ub;
                (t, ok, g.power < d.power)
            })
            .collect();
        for (t, ok, strict) in rows {
            if !ok {
                violations.push((n, t));
            }
            strict_gaps += usize::from(strict);
        }
    }
    let total = DOMINANCE_SIZES.len() * DOMINANCE_TRIALS;
    if violations.is_empty() && strict_gaps > 0 {
        Ok(format!(
            "random <= greedy <= das <= bound on {total}/{total}; greedy strictly below das on {strict_gaps}"
        ))
    } else {
        Err(format!(
            "{} violations (first {:?}), {strict_gaps} strict greedy gaps",
            violations.len(),
            &violations[..violations.len().min(5)]
        ))
    }
}

fn complexity_scaling() -> Outcome {
    let plan = ExperimentPlan {
        n_values: vec![1000, 2000],
        trials: TIMING_RUNS,
        base_seed: 11,
        methods: vec![Method::Das],
        ..Default::default()
    };
    let mut t1000 = Vec::new();
    let mut t2000 = Vec::new();
    for _ in 0..TIMING_REPEATS {
        let t = timing_scaling(&plan).map_err(|e| e.to_string())?;
        t1000.push(t[0].1);
        t2000.push(t[1].1);
    }
    let median = |v: &mut Vec<f64>| {
        v.sort_by(f64::total_cmp);
        v[v.len() / 2]
    };
    let (a, b) = (median(&mut t1000), median(&mut t2000));
    let ratio = b / a;
    let msg = format!(
        "solver-only total for {TIMING_RUNS} runs: N=1000 {a:.4}s, N=2000 {b:.4}s, ratio {ratio:.3} (limit {TIMING_RATIO_MAX})"
    );
    if ratio <= TIMING_RATIO_MAX {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn coherent_gain() -> Outcome {
    let plan = ExperimentPlan {
        n_values: vec![100, 200],
        trials: GAIN_TRIALS,
        base_seed: 5,
        methods: vec![Method::Das],
        ..Default::default()
    };
    let records = run_plan(&plan).map_err(|e| e.to_string())?;
    let mean = |n: usize| {
        let p: Vec<f64> = records.iter().filter(|r| r.n == n).map(|r| r.power).collect();
        p.iter().sum::<f64>() / p.len() as f64
    };
    let ratio = mean(200) / mean(100);
    let msg = format!("mean power N=200 / N=100 = {ratio:.4} (range [{}, {}])", GAIN_RANGE.0, GAIN_RANGE.1);
    if (GAIN_RANGE.0..=GAIN_RANGE.1).contains(&ratio) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn power_and_snr_columns(csv: &str) -> Vec<String> {
    csv.lines()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            format!("{},{},{},{},{}", f[0], f[1], f[2], f[3], f[4])
        })
        .collect()
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut columns = Vec::new();
    for run in ["a", "b"] {
        let out = dir.path().join(run);
        let o = Command::new(env!("CARGO_BIN_EXE_ris-das"))
            .args(["bench", "--n", "10,100", "--trials", "50", "--seed", "7", "--methods", "das,greedy", "--out"])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        if !o.status.success() {
            return Err(format!("bench exited with {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr)));
        }
        let csv = fs::read_to_string(out.join("trials.csv")).map_err(|e| e.to_string())?;
        columns.push(power_and_snr_columns(&csv));
    }
    let rows = columns[0].len();
    if rows != 1 + 2 * 50 * 2 {
        return Err(format!("expected 201 CSV lines, found {rows}"));
    }
    if columns[0] == columns[1] {
        Ok(format!("{} trial rows with byte-identical power/snr_db columns across two runs", rows - 1))
    } else {
        Err("power/snr_db columns differ between runs".into())
    }
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    let mut failures: Vec<String> = Vec::new();
    let mut rotations = 0;

    for case in 0..PROPERTY_CASES {
        let n = rng.random_range(1..=64);
        let los = rng.random::<bool>();
        let params = ChannelParams { los, ..Default::default() };
        let ch = generate_channel(n, rng.random(), &params).unwrap();
        let cp = composite_phi(&ch);
        let (_, base) = maximize_rank_one(cp.z()).unwrap();

        // phase invariance
        for _ in 0..ROTATIONS {
            let alpha = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
            let rot = Complex64::from_polar(1.0, alpha);
            let z: Vec<Complex64> = cp.z().iter().map(|x| x * rot).collect();
            let (_, amp) = maximize_rank_one(&z).unwrap();
            rotations += 1;
            if !rel_close(base, amp) {
                failures.push(format!("rotation case {case}: {base} vs {amp}"));
                break;
            }
        }

        // global sign symmetry when the direct link is blocked
        let nlos = ChannelRealization::new(ch.g().to_vec(), ch.h_r().to_vec(), Complex64::new(0.0, 0.0), 1.0, 1.0)
            .unwrap();
        let d = das_solve(&nlos);
        let p = received_power(&nlos, &d.config).unwrap();
        let q = received_power(&nlos, &d.config.negated()).unwrap();
        if p != q || p != d.power {
            failures.push(format!("sign symmetry case {case}: {p} vs {q}"));
        }

        // zero-magnitude entry: z_{N+1} = 0 folds to angle 0, no flip, and the optimum is unchanged
        let fr = fold_angles(composite_phi(&nlos).z());
        if fr.folded_angles[n] != 0.0 || fr.flip_mask[n] || *d.w_bar.last().unwrap() != 1 {
            failures.push(format!("zero-entry fold case {case}"));
        }
        if n <= 12 {
            let e = exhaustive_search(&nlos, 20).unwrap();
            if !rel_close(e.power, d.power) {
                failures.push(format!("zero-entry optimum case {case}: {} vs {}", d.power, e.power));
            }
        }

        // scale equivariance; without a direct link w and -w tie exactly
        let c = rng.random_range(0.1..10.0);
        let d0 = das_solve(&ch);
        let d1 = das_solve(&ch.scaled(c));
        let same_argmax = d1.config == d0.config || (!los && d1.config == d0.config.negated());
        if !rel_close(d1.power, c * c * d0.power) || !same_argmax {
            failures.push(format!("scale case {case}: c = {c}"));
        }
    }

    if failures.is_empty() {
        Ok(format!(
            "{PROPERTY_CASES} cases each: phase invariance ({rotations} rotations), sign symmetry, zero-entry handling, scale equivariance"
        ))
    } else {
        Err(format!("{} failures, first: {}", failures.len(), failures[0]))
    }
}

fn main() -> ExitCode {
    // libtest-style flags (e.g. --nocapture, filters) are accepted and ignored.
    let criteria: [Criterion; 7] = [
        ("oracle equivalence", oracle_equivalence),
        ("candidate membership", candidate_membership),
        ("dominance chain", dominance_chain),
        ("complexity scaling", complexity_scaling),
        ("coherent-gain growth", coherent_gain),
        ("determinism", determinism),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
