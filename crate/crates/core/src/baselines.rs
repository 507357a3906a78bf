//! Reference optimizers: exhaustive enumeration, greedy bit flipping,
//! best-of-k random sampling and the continuous-phase upper bound.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{composite_phi, received_power, ChannelRealization, PhaseConfig};

pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 20;

/// Minimum relative gain for the greedy search to accept a flip. Anything
/// smaller is indistinguishable from accumulated rounding in the running sum.
const GREEDY_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineResult {
    pub config: PhaseConfig,
    pub power: f64,
    /// Objective evaluations performed.
    pub evaluations: u64,
}

fn finish(ch: &ChannelRealization, config: PhaseConfig, evaluations: u64) -> BaselineResult {
    let power = received_power(ch, &config).expect("baseline configs match the channel length");
    BaselineResult {
        config,
        power,
        evaluations,
    }
}

/// Enumerates all `2^N` configurations (the homogenizing entry pinned to
/// `+1`). Ties keep the lowest mask, where bit `i` set means `w[i] = -1`.
pub fn exhaustive_search(ch: &ChannelRealization, limit: usize) -> Result<BaselineResult> {
    let n = ch.len();
    if n > limit || n >= 64 {
        return Err(Error::ExhaustiveLimit { n, limit });
    }
    let cp = composite_phi(ch);
    let phi = cp.phi();
    let base = cp.h_d_conj();

    let mut best_mask = 0u64;
    let mut best = f64::NEG_INFINITY;
    for mask in 0u64..(1u64 << n) {
        let mut s = base;
        for (i, p) in phi.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                s -= p;
            } else {
                s += p;
            }
        }
        let v = s.norm_sqr();
        if v > best {
            best = v;
            best_mask = mask;
        }
    }
    Ok(finish(ch, PhaseConfig::from_mask(best_mask, n), 1u64 << n))
}

/// Coordinate ascent: sweep `0..N`, flipping any bit that raises the power,
/// until a sweep makes no change or `max_sweeps` sweeps have run.
pub fn greedy_bitflip(
    ch: &ChannelRealization,
    start: &PhaseConfig,
    max_sweeps: usize,
) -> Result<BaselineResult> {
    if start.len() != ch.len() {
        return Err(Error::DimensionMismatch {
            expected: ch.len(),
            found: start.len(),
        });
    }
    let cp = composite_phi(ch);
    let phi = cp.phi();
    let sum_for = |w: &PhaseConfig| -> Complex64 {
        phi.iter().zip(w.signs()).map(|(p, &s)| p * f64::from(s)).sum::<Complex64>() + cp.h_d_conj()
    };

    let mut w = start.clone();
    let mut evaluations = 1u64;
    for _ in 0..max_sweeps {
        // Re-anchor the running sum each sweep so drift cannot build up.
        let mut s = sum_for(&w);
        let mut current = s.norm_sqr();
        let mut improved = false;
        for (i, p) in phi.iter().enumerate() {
            let candidate = s - p * (2.0 * f64::from(w.signs()[i]));
            let v = candidate.norm_sqr();
            evaluations += 1;
            if v > current * (1.0 + GREEDY_REL_TOL) {
                w.flip(i);
                s = candidate;
                current = v;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    Ok(finish(ch, w, evaluations))
}

/// Best of `k` uniformly drawn configurations. The first draw attaining the
/// maximum wins.
pub fn random_best_of_k(ch: &ChannelRealization, k: usize, seed: u64) -> Result<BaselineResult> {
    if k == 0 {
        return Err(Error::InvalidPlan("random_best_of_k needs k >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ch.len();
    let mut best: Option<(PhaseConfig, f64)> = None;
    for _ in 0..k {
        let cfg = PhaseConfig::new((0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect())
            .expect("draws are +1/-1");
        let p = received_power(ch, &cfg)?;
        if best.as_ref().is_none_or(|(_, b)| p > *b) {
            best = Some((cfg, p));
        }
    }
    let (config, power) = best.expect("k >= 1");
    Ok(BaselineResult {
        config,
        power,
        evaluations: k as u64,
    })
}

/// `(sum_n |phi_n| + |h_d|)^2 * tx_power`: the power with every reflected
/// path co-phased, which no 1-bit configuration can exceed.
pub fn continuous_upper_bound(ch: &ChannelRealization) -> f64 {
    let cp = composite_phi(ch);
    let amp: f64 = cp.phi_bar().iter().map(|x| x.norm()).sum();
    amp * amp * ch.tx_power()
}
