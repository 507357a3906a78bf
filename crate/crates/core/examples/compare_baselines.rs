// Mean SNR of divide-and-sort against the heuristics and the continuous bound.
//
// cargo run --release --example compare_baselines

use ris_das::harness::{sampler_seed, trial_seed};
use ris_das::{
    continuous_upper_bound, das_solve, generate_channel, greedy_bitflip, random_best_of_k, snr_db, ChannelParams,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let trials = 200;
    let params = ChannelParams::default();
    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>10} {:>12}",
        "N", "random", "greedy", "das", "bound", "greedy<das"
    );
    for n in [16, 64, 256] {
        let mut sums = [0.0; 4];
        let mut gaps = 0;
        for t in 0..trials {
            let ch = generate_channel(n, trial_seed(9, n, t), &params)?;
            let r = random_best_of_k(&ch, 16, sampler_seed(9, n, t))?;
            let g = greedy_bitflip(&ch, &r.config, 1000)?;
            let d = das_solve(&ch);
            let ub = continuous_upper_bound(&ch);
            assert!(r.power <= g.power && g.power <= d.power && d.power <= ub);
            gaps += usize::from(g.power < d.power);
            for (s, p) in sums.iter_mut().zip([r.power, g.power, d.power, ub]) {
                *s += snr_db(p, ch.noise_power());
            }
        }
        let m = sums.map(|s| s / trials as f64);
        println!(
            "{n:>5} {:>10.3} {:>10.3} {:>10.3} {:>10.3} {gaps:>8}/{trials}",
            m[0], m[1], m[2], m[3]
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
