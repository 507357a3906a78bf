// Step through divide-and-sort on a five-element surface: fold the phases,
// sort them, list the N+1 candidates and pick the best.
//
// cargo run --example walk_candidates

use ris_das::model::signed_sum;
use ris_das::{
    build_candidates, composite_phi, fold_angles, generate_channel, recover_config, select_best, sort_folded,
    ChannelParams,
};

fn signs(v: &[i8]) -> String {
    v.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ch = generate_channel(5, 3, &ChannelParams::default())?;
    let cp = composite_phi(&ch);
    let z = cp.z();

    let fr = fold_angles(z);
    println!("{:>3} {:>9} {:>9} {:>5}", "n", "|z_n|", "folded", "flip");
    for n in 0..fr.len() {
        println!(
            "{:>3} {:>9.4} {:>9.4} {:>5}",
            n, fr.magnitudes[n], fr.folded_angles[n], fr.flip_mask[n]
        );
    }

    let perm = sort_folded(&fr);
    println!("sorted order: {:?}", perm.forward);

    let cands = build_candidates(&fr, &perm)?;
    for (k, col) in cands.columns().iter().enumerate() {
        println!("u_{k}  {}  |u^T z| = {:.5}", signs(col), signed_sum(z, col)?.norm());
    }

    let (best, amp) = select_best(&cands, z)?;
    let (config, w_bar) = recover_config(&best)?;
    println!("best {} (amplitude {amp:.5}) -> w_bar {} -> w {}", signs(&best), signs(&w_bar), config.to_sign_string());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
