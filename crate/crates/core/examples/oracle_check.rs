// Compare divide-and-sort with exhaustive enumeration on small surfaces.
//
// cargo run --release --example oracle_check

use ris_das::harness::trial_seed;
use ris_das::{das_solve, exhaustive_search, generate_channel, ChannelParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let trials = 200;
    println!("{:>3} {:>8} {:>12} {:>14}", "N", "matches", "das evals", "exhaustive evals");
    for n in 1..=12 {
        let mut matches = 0;
        let mut exhaustive_evals = 0;
        for t in 0..trials {
            let params = ChannelParams {
                los: t % 2 == 0,
                ..Default::default()
            };
            let ch = generate_channel(n, trial_seed(1, n, t), &params)?;
            let d = das_solve(&ch);
            let e = exhaustive_search(&ch, 20)?;
            exhaustive_evals += e.evaluations;
            if (d.power - e.power).abs() <= 1e-9 * e.power {
                matches += 1;
            }
        }
        println!(
            "{n:>3} {matches:>5}/{trials} {:>12} {:>14}",
            (n + 1) * trials,
            exhaustive_evals
        );
        assert_eq!(matches, trials);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
