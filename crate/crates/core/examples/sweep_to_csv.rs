// Run a seeded sweep and write the per-trial and aggregate CSV files.
//
// cargo run --release --example sweep_to_csv -- [output-dir]

use std::fs::File;
use std::path::PathBuf;

use ris_das::harness::{write_aggregate_csv, write_trials_csv};
use ris_das::{aggregate, run_plan, ExperimentPlan, Method};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("ris-das-sweep"));
    std::fs::create_dir_all(&dir)?;

    let plan = ExperimentPlan {
        n_values: vec![4, 8, 12],
        trials: 100,
        base_seed: 42,
        methods: vec![Method::Das, Method::Exhaustive, Method::Greedy, Method::Random],
        ..Default::default()
    };
    let records = run_plan(&plan)?;
    let rows = aggregate(&records);

    write_trials_csv(&records, File::create(dir.join("trials.csv"))?)?;
    write_aggregate_csv(&rows, File::create(dir.join("aggregate.csv"))?)?;
    write_aggregate_csv(&rows, std::io::stdout().lock())?;
    println!("wrote {} trial rows to {}", records.len(), dir.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
