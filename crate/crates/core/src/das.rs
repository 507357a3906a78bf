//! Divide-and-sort maximization of `|w_bar^T z|` over `w_bar in {+1,-1}^(N+1)`.
//!
//! For a fixed direction `psi` the best signs are `sgn(cos(psi - theta_n))`.
//! Folding every phase into `[-pi/2, pi/2)` (remembering a sign flip for the
//! folded ones) and sorting the folded angles turns the set of sign vectors
//! reachable as `psi` sweeps a half turn into `N+1` step patterns over the
//! sorted order: `[+1 x k, -1 x (N+1-k)]`, `k = 1..=N+1`. One of them is the
//! global optimum, so the search costs a sort plus a linear prefix scan.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{composite_phi, received_power, signed_sum, ChannelRealization, PhaseConfig};

/// Phases of `z` folded into `[-pi/2, pi/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldResult {
    pub folded_angles: Vec<f64>,
    /// `true` where the canonical phase lies in `[pi/2, 3pi/2)` and was shifted by `-pi`.
    pub flip_mask: Vec<bool>,
    pub magnitudes: Vec<f64>,
}

impl FoldResult {
    pub fn len(&self) -> usize {
        self.folded_angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.folded_angles.is_empty()
    }
}

/// Phase of `x` in `[-pi/2, 3pi/2)`.
pub fn canonical_angle(x: Complex64) -> f64 {
    let a = x.arg();
    if a < -FRAC_PI_2 {
        a + 2.0 * PI
    } else {
        a
    }
}

pub fn fold_angles(z: &[Complex64]) -> FoldResult {
    let mut folded_angles = Vec::with_capacity(z.len());
    let mut flip_mask = Vec::with_capacity(z.len());
    let mut magnitudes = Vec::with_capacity(z.len());
    for &x in z {
        let mag = x.norm();
        magnitudes.push(mag);
        if mag == 0.0 {
            folded_angles.push(0.0);
            flip_mask.push(false);
            continue;
        }
        let theta = canonical_angle(x);
        if theta >= FRAC_PI_2 {
            // theta - pi can round up to exactly pi/2 only when theta is the
            // largest double below 3pi/2; clamp to keep the half-open range.
            let folded = theta - PI;
            folded_angles.push(if folded >= FRAC_PI_2 { -FRAC_PI_2 } else { folded });
            flip_mask.push(true);
        } else {
            folded_angles.push(theta);
            flip_mask.push(false);
        }
    }
    FoldResult {
        folded_angles,
        flip_mask,
        magnitudes,
    }
}

/// Sorting map over folded angles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortPermutation {
    /// Sorted position -> original index.
    pub forward: Vec<usize>,
    /// Original index -> sorted position.
    pub inverse: Vec<usize>,
}

/// Non-decreasing order of the folded angles; ties keep ascending index.
pub fn sort_folded(fr: &FoldResult) -> SortPermutation {
    let angles = &fr.folded_angles;
    let mut forward: Vec<usize> = (0..angles.len()).collect();
    forward.sort_by(|&a, &b| angles[a].total_cmp(&angles[b]).then(a.cmp(&b)));
    let mut inverse = vec![0; forward.len()];
    for (pos, &idx) in forward.iter().enumerate() {
        inverse[idx] = pos;
    }
    SortPermutation { forward, inverse }
}

/// The `N+1` candidate sign vectors, kept implicitly as a permutation plus
/// flip mask. Candidate `k` (0-based) is `+1` at the first `k+1` sorted
/// positions and `-1` elsewhere, mapped back to original index order and
/// negated on flipped entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    perm: SortPermutation,
    flip_mask: Vec<bool>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.flip_mask.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flip_mask.is_empty()
    }

    pub fn permutation(&self) -> &SortPermutation {
        &self.perm
    }

    pub fn flip_mask(&self) -> &[bool] {
        &self.flip_mask
    }

    /// Entry of candidate `k` at original index `n`.
    pub fn entry(&self, k: usize, n: usize) -> i8 {
        let step = if self.perm.inverse[n] <= k { 1 } else { -1 };
        if self.flip_mask[n] {
            -step
        } else {
            step
        }
    }

    /// Materializes candidate `k`; `O(N)`.
    pub fn column(&self, k: usize) -> Vec<i8> {
        assert!(k < self.len(), "candidate {k} out of range for {} candidates", self.len());
        (0..self.len()).map(|n| self.entry(k, n)).collect()
    }

    /// Materializes every candidate; `O(N^2)`, meant for inspection and tests.
    pub fn columns(&self) -> Vec<Vec<i8>> {
        (0..self.len()).map(|k| self.column(k)).collect()
    }
}

pub fn build_candidates(fr: &FoldResult, perm: &SortPermutation) -> Result<CandidateSet> {
    if perm.forward.len() != fr.len() || perm.inverse.len() != fr.len() {
        return Err(Error::DimensionMismatch {
            expected: fr.len(),
            found: perm.forward.len(),
        });
    }
    Ok(CandidateSet {
        perm: perm.clone(),
        flip_mask: fr.flip_mask.clone(),
    })
}

/// Best candidate for `|c^T z|`, scanned with prefix sums in `O(N)`.
///
/// Returns the winning sign vector and its amplitude (evaluated directly on
/// the winner). Ties go to the lowest candidate index.
pub fn select_best(cands: &CandidateSet, z: &[Complex64]) -> Result<(Vec<i8>, f64)> {
    if z.len() != cands.len() {
        return Err(Error::DimensionMismatch {
            expected: cands.len(),
            found: z.len(),
        });
    }
    if z.is_empty() {
        return Ok((Vec::new(), 0.0));
    }
    // Fold the sign flips into z, then walk the sorted order:
    // c_k^T z = 2 * prefix_k - total.
    let signed = |n: usize| if cands.flip_mask[n] { -z[n] } else { z[n] };
    let total: Complex64 = (0..z.len()).map(signed).sum();
    let mut prefix = Complex64::new(0.0, 0.0);
    let mut best_k = 0;
    let mut best = f64::NEG_INFINITY;
    for (k, &n) in cands.perm.forward.iter().enumerate() {
        prefix += signed(n);
        let amp = (prefix * 2.0 - total).norm();
        if amp > best {
            best = amp;
            best_k = k;
        }
    }
    let column = cands.column(best_k);
    let amplitude = signed_sum(z, &column)?.norm();
    Ok((column, amplitude))
}

/// Normalizes `w_bar` so its last entry is `+1` and splits off the RIS part.
pub fn recover_config(w_bar_raw: &[i8]) -> Result<(PhaseConfig, Vec<i8>)> {
    if w_bar_raw.len() < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: w_bar_raw.len(),
        });
    }
    let last = w_bar_raw[w_bar_raw.len() - 1];
    let w_bar: Vec<i8> = match last {
        1 => w_bar_raw.to_vec(),
        -1 => w_bar_raw.iter().map(|s| -s).collect(),
        value => {
            return Err(Error::InvalidSign {
                index: w_bar_raw.len() - 1,
                value,
            })
        }
    };
    let config = PhaseConfig::new(w_bar[..w_bar.len() - 1].to_vec())?;
    Ok((config, w_bar))
}

/// Maximizer of `|w_bar^T z|` over all sign vectors, for any complex `z`.
///
/// Returns `(w_bar, |w_bar^T z|)`; `w_bar` is not normalized.
pub fn maximize_rank_one(z: &[Complex64]) -> Result<(Vec<i8>, f64)> {
    let fr = fold_angles(z);
    let perm = sort_folded(&fr);
    let cands = build_candidates(&fr, &perm)?;
    select_best(&cands, z)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DasSolution {
    pub config: PhaseConfig,
    /// `[w; 1]`.
    pub w_bar: Vec<i8>,
    /// `|w_bar^T z|` with `z` the unit principal eigenvector.
    pub objective_amplitude: f64,
    /// Received power of `config`, transmit power applied.
    pub power: f64,
    /// `||phi_bar||^2`.
    pub lambda: f64,
}

impl DasSolution {
    /// Diagonal of `W(theta)`: `0` or `pi` per element.
    pub fn phases(&self) -> Vec<f64> {
        self.config.phases()
    }
}

/// Globally optimal 1-bit configuration for `ch` in `O(N log N)`.
pub fn das_solve(ch: &ChannelRealization) -> DasSolution {
    let cp = composite_phi(ch);
    let (raw, objective_amplitude) =
        maximize_rank_one(cp.z()).expect("composite vector and candidates share a length");
    let (config, w_bar) = recover_config(&raw).expect("candidates hold only +1/-1 entries");
    let power = received_power(ch, &config).expect("config length matches the channel");
    DasSolution {
        config,
        w_bar,
        objective_amplitude,
        power,
        lambda: cp.lambda(),
    }
}

/// `|c_k^T z|` for every candidate, each evaluated directly; `O(N^2)`.
pub fn candidate_amplitudes(cands: &CandidateSet, z: &[Complex64]) -> Result<Vec<f64>> {
    (0..cands.len())
        .map(|k| signed_sum(z, &cands.column(k)).map(|s| s.norm()))
        .collect()
}
