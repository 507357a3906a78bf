//! Channel and phase-configuration types, the received-power objective and
//! the seeded Rayleigh channel generator.
//!
//! A single-antenna base station reaches a single-antenna user through a
//! direct link `h_d` and through an `N`-element 1-bit RIS (`g` into the
//! surface, `h_r` out of it). With every element restricted to a phase of
//! `0` or `pi` the received power is
//!
//! ```text
//! P(w) = |sum_n conj(h_r[n]) * w[n] * g[n] + conj(h_d)|^2 * tx_power,   w in {+1,-1}^N
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// One draw of the propagation state: BS->RIS, RIS->user and direct links.
///
/// `h_r` holds the physical channel; the objective applies its conjugate.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    g: Vec<Complex64>,
    h_r: Vec<Complex64>,
    h_d: Complex64,
    noise_power: f64,
    tx_power: f64,
}

fn check_power(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidPower { name, value })
    }
}

impl ChannelRealization {
    pub fn new(
        g: Vec<Complex64>,
        h_r: Vec<Complex64>,
        h_d: Complex64,
        noise_power: f64,
        tx_power: f64,
    ) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::EmptyChannel);
        }
        if g.len() != h_r.len() {
            return Err(Error::DimensionMismatch {
                expected: g.len(),
                found: h_r.len(),
            });
        }
        check_power("noise_power", noise_power)?;
        check_power("tx_power", tx_power)?;
        Ok(Self {
            g,
            h_r,
            h_d,
            noise_power,
            tx_power,
        })
    }

    /// Builds a channel whose cascaded coefficients `conj(h_r[n]) * g[n]`
    /// equal `phi[n]` (with `h_r = 1`), and whose direct link satisfies
    /// `conj(h_d) = h_d_conj`. Unit noise and transmit power.
    pub fn from_cascade(phi: &[Complex64], h_d_conj: Complex64) -> Result<Self> {
        Self::new(
            phi.to_vec(),
            vec![Complex64::new(1.0, 0.0); phi.len()],
            h_d_conj.conj(),
            1.0,
            1.0,
        )
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    pub fn g(&self) -> &[Complex64] {
        &self.g
    }

    pub fn h_r(&self) -> &[Complex64] {
        &self.h_r
    }

    pub fn h_d(&self) -> Complex64 {
        self.h_d
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    pub fn tx_power(&self) -> f64 {
        self.tx_power
    }

    pub fn with_noise_power(mut self, noise_power: f64) -> Result<Self> {
        check_power("noise_power", noise_power)?;
        self.noise_power = noise_power;
        Ok(self)
    }

    pub fn with_tx_power(mut self, tx_power: f64) -> Result<Self> {
        check_power("tx_power", tx_power)?;
        self.tx_power = tx_power;
        Ok(self)
    }

    /// Multiplies every link by the real factor `c` (`g` and `h_d`; `h_r`
    /// is left alone so the cascade scales by `c` exactly once).
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            g: self.g.iter().map(|x| x * c).collect(),
            h_d: self.h_d * c,
            ..self.clone()
        }
    }
}

/// A 1-bit RIS configuration: `+1` is phase `0`, `-1` is phase `pi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhaseConfig {
    w: Vec<i8>,
}

impl PhaseConfig {
    pub fn new(w: Vec<i8>) -> Result<Self> {
        if let Some((index, &value)) = w.iter().enumerate().find(|(_, &v)| v != 1 && v != -1) {
            return Err(Error::InvalidSign { index, value });
        }
        Ok(Self { w })
    }

    pub fn all_positive(n: usize) -> Self {
        Self { w: vec![1; n] }
    }

    /// Decodes `mask` with bit `i` set meaning element `i` is `-1`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        let w = (0..n)
            .map(|i| if (mask >> i) & 1 == 1 { -1 } else { 1 })
            .collect();
        Self { w }
    }

    pub fn signs(&self) -> &[i8] {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self {
            w: self.w.iter().map(|s| -s).collect(),
        }
    }

    pub fn flip(&mut self, index: usize) {
        self.w[index] = -self.w[index];
    }

    /// Phase shifts `theta_n in {0, pi}`; the diagonal of `W(theta)`.
    pub fn phases(&self) -> Vec<f64> {
        self.w.iter().map(|&s| if s > 0 { 0.0 } else { PI }).collect()
    }

    /// `+`/`-` string, one character per element.
    pub fn to_sign_string(&self) -> String {
        self.w.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }
}

/// Homogenized cascade `phi_bar = [phi; conj(h_d)]` of the rank-one form
/// `R = phi_bar phi_bar^H = lambda z z^H`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositePhi {
    phi_bar: Vec<Complex64>,
    lambda: f64,
    z: Vec<Complex64>,
}

impl CompositePhi {
    /// Cascaded coefficients `phi[n] = conj(h_r[n]) * g[n]`.
    pub fn phi(&self) -> &[Complex64] {
        &self.phi_bar[..self.phi_bar.len() - 1]
    }

    pub fn h_d_conj(&self) -> Complex64 {
        self.phi_bar[self.phi_bar.len() - 1]
    }

    pub fn phi_bar(&self) -> &[Complex64] {
        &self.phi_bar
    }

    /// The only non-zero eigenvalue of `R`, `||phi_bar||^2`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Unit principal eigenvector of `R`.
    pub fn z(&self) -> &[Complex64] {
        &self.z
    }
}

pub fn composite_phi(ch: &ChannelRealization) -> CompositePhi {
    let mut phi_bar: Vec<Complex64> = ch
        .h_r
        .iter()
        .zip(&ch.g)
        .map(|(hr, g)| hr.conj() * g)
        .collect();
    phi_bar.push(ch.h_d.conj());

    let lambda: f64 = phi_bar.iter().map(|x| x.norm_sqr()).sum();
    let z = if lambda > 0.0 {
        let norm = lambda.sqrt();
        phi_bar.iter().map(|x| x / norm).collect()
    } else {
        let mut e1 = vec![Complex64::new(0.0, 0.0); phi_bar.len()];
        e1[0] = Complex64::new(1.0, 0.0);
        e1
    };
    CompositePhi { phi_bar, lambda, z }
}

/// Received signal power `|h_r^H W(theta) g + h_d^H|^2 * tx_power`.
pub fn received_power(ch: &ChannelRealization, cfg: &PhaseConfig) -> Result<f64> {
    if cfg.len() != ch.len() {
        return Err(Error::DimensionMismatch {
            expected: ch.len(),
            found: cfg.len(),
        });
    }
    let reflected: Complex64 = ch
        .h_r
        .iter()
        .zip(&ch.g)
        .zip(&cfg.w)
        .map(|((hr, g), &w)| hr.conj() * g * f64::from(w))
        .sum();
    Ok((reflected + ch.h_d.conj()).norm_sqr() * ch.tx_power)
}

/// `|w_bar^T v|^2` for a real sign vector `w_bar`.
pub fn homogeneous_form(v: &[Complex64], w_bar: &[i8]) -> Result<f64> {
    Ok(signed_sum(v, w_bar)?.norm_sqr())
}

/// `w_bar^T v` for a real sign vector `w_bar`.
pub fn signed_sum(v: &[Complex64], w_bar: &[i8]) -> Result<Complex64> {
    if v.len() != w_bar.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            found: w_bar.len(),
        });
    }
    Ok(v.iter().zip(w_bar).map(|(x, &s)| x * f64::from(s)).sum())
}

/// `10 log10(power / noise_power)`; zero power maps to `-inf`.
pub fn snr_db(power: f64, noise_power: f64) -> f64 {
    if power <= 0.0 {
        return f64::NEG_INFINITY;
    }
    10.0 * (power / noise_power).log10()
}

/// Per-link variances and scalar settings for [`generate_channel`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub beta_g: f64,
    pub beta_r: f64,
    pub beta_d: f64,
    /// `false` blocks the direct link (`h_d = 0` exactly).
    pub los: bool,
    pub noise_power: f64,
    pub tx_power: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            beta_g: 1.0,
            beta_r: 1.0,
            beta_d: 1.0,
            los: true,
            noise_power: 1.0,
            tx_power: 1.0,
        }
    }
}

fn cn(rng: &mut ChaCha8Rng, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re * s, im * s)
}

/// Draws i.i.d. circularly-symmetric complex Gaussian links.
///
/// The stream order is `g`, then `h_r`, then `h_d`; `h_d` is always drawn
/// so toggling `los` leaves `g` and `h_r` unchanged for the same seed.
pub fn generate_channel(n: usize, seed: u64, params: &ChannelParams) -> Result<ChannelRealization> {
    if n == 0 {
        return Err(Error::EmptyChannel);
    }
    for (name, v) in [
        ("beta_g", params.beta_g),
        ("beta_r", params.beta_r),
        ("beta_d", params.beta_d),
    ] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::InvalidPower { name, value: v });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = (0..n).map(|_| cn(&mut rng, params.beta_g)).collect();
    let h_r = (0..n).map(|_| cn(&mut rng, params.beta_r)).collect();
    let h_d = cn(&mut rng, params.beta_d);
    let h_d = if params.los { h_d } else { Complex64::new(0.0, 0.0) };
    ChannelRealization::new(g, h_r, h_d, params.noise_power, params.tx_power)
}
