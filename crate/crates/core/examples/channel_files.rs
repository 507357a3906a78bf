// Write a channel to the plain-text format, read it back and solve it.
//
// cargo run --example channel_files

use ris_das::{channel_from_str, channel_to_string, das_solve, generate_channel, ChannelParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = ChannelParams {
        los: false,
        noise_power: 0.5,
        ..Default::default()
    };
    let ch = generate_channel(4, 5, &params)?;
    let text = channel_to_string(&ch);
    print!("{text}");

    let back = channel_from_str(&text)?;
    assert_eq!(back, ch);
    println!("round trip exact; w_opt = {}", das_solve(&back).config.to_sign_string());

    match channel_from_str("idx,g_re,g_im,hr_re,hr_im\n0,1,0,1,0\n") {
        Err(e) => println!("truncated file rejected: {e}"),
        Ok(_) => unreachable!("a file without footer must not parse"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
