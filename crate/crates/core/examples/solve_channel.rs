// Draw a Rayleigh channel and find its optimal 1-bit configuration.
//
// cargo run --example solve_channel

use ris_das::{das_solve, generate_channel, snr_db, ChannelParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = ChannelParams {
        noise_power: 0.1,
        ..Default::default()
    };
    let ch = generate_channel(32, 2024, &params)?;
    let sol = das_solve(&ch);

    println!("N            {}", ch.len());
    println!("w_opt        {}", sol.config.to_sign_string());
    println!("lambda       {:.6}", sol.lambda);
    println!("|w_bar^T z|  {:.6}", sol.objective_amplitude);
    println!("power        {:.6}", sol.power);
    println!("snr          {:.3} dB", snr_db(sol.power, ch.noise_power()));
    let pi_count = sol.phases().iter().filter(|&&p| p > 0.0).count();
    println!("elements at pi: {pi_count} of {}", ch.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
