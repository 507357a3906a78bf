// Solver-only running time of 100 solves per surface size.
//
// cargo run --release --example runtime_scaling

use ris_das::{timing_scaling, ExperimentPlan, Method};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let plan = ExperimentPlan {
        n_values: vec![100, 250, 500, 1000, 2000, 4000],
        trials: 100,
        base_seed: 1,
        methods: vec![Method::Das],
        ..Default::default()
    };
    let totals = timing_scaling(&plan)?;
    println!("{:>6} {:>12} {:>14}", "N", "total_s", "us_per_solve");
    for (n, t) in &totals {
        println!("{n:>6} {t:>12.6} {:>14.2}", t / plan.trials as f64 * 1e6);
    }
    for w in totals.windows(2) {
        println!("time({})/time({}) = {:.2}", w[1].0, w[0].0, w[1].1 / w[0].1);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
