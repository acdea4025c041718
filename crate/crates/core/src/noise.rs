//! Measurement-error model and trial-count analysis.
//!
//! A single experimental trial reads an intensity with relative error δ,
//! modeled as additive Gaussian noise of standard deviation δ·M on the exact
//! integer reading. Averaging `N` independent trials shrinks the error by
//! √N, so decoding stays reliable once δ·M/√N drops below the margin 1
//! separating the two legal intensities −M and −M+2 from their midpoint
//! threshold. With δ = 2^−k over an M = 2^n ensemble that condition is the
//! trial bound `N > 2^{2(n−k)}`; one trial suffices when k ≥ n.
//!
//! Noise draws come from counter-based per-(qubit, trial) streams derived
//! from the model seed, so results are bit-reproducible and independent of
//! how repetitions are scheduled across workers.
//!
//! [`crossover`] evaluates the database sizes at which the repeated-trial
//! query counts still undercut Grover's `(π/4)√N`: `N√N < δ^−2` for the
//! one-application search and `N√N·log₂N < δ^−2` for the bit-by-bit search.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NoiseError {
    #[error("single-trial error must lie in (0, 1], got {0}")]
    InvalidDelta(f64),
    #[error("trial count must be at least 1")]
    ZeroTrials,
    #[error("trial grid must not be empty")]
    EmptyGrid,
    #[error("repetition count must be at least 1")]
    ZeroRepetitions,
    #[error("{0} data bits exceed the supported intensity scale")]
    TooManyBits(u32),
}

/// Single-trial relative error δ, number of trials averaged per reading, and
/// the seed the per-(qubit, trial) noise streams derive from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseModel {
    delta: f64,
    trials: u64,
    seed: u64,
}

impl NoiseModel {
    pub fn new(delta: f64, trials: u64, seed: u64) -> Result<Self, NoiseError> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(NoiseError::InvalidDelta(delta));
        }
        if trials == 0 {
            return Err(NoiseError::ZeroTrials);
        }
        Ok(Self {
            delta,
            trials,
            seed,
        })
    }

    /// Model with δ = 2^−k.
    pub fn from_error_exponent(k: u32, trials: u64, seed: u64) -> Result<Self, NoiseError> {
        Self::new((-(k as f64)).exp2(), trials, seed)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

/// A noisy intensity reading averaged over the model's trials, decoded by
/// thresholding at −M+1 (ties toward bit 0). `correct` compares the decoded
/// bit against the noiseless decode of the true intensity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoisyReading {
    pub mean_intensity: f64,
    pub trial_std: f64,
    pub decoded_bit: u8,
    pub correct: bool,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn derive_stream(seed: u64, tags: &[u64]) -> u64 {
    let mut acc = splitmix64(seed ^ 0xA076_1D64_78BD_642F);
    for &tag in tags {
        acc = splitmix64(acc ^ tag.wrapping_mul(0x2545_F491_4F6C_DD1D));
    }
    acc
}

fn gaussian(stream: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    rng.sample(StandardNormal)
}

/// Average `trials` noisy samples of `true_intensity` and decode the result.
/// Each sample adds Gaussian noise of standard deviation δ·M drawn from the
/// stream keyed by (model seed, `qubit_index`, trial number).
pub fn noisy_measure(
    true_intensity: i64,
    multiplicity: u64,
    model: &NoiseModel,
    qubit_index: u32,
) -> NoisyReading {
    let trial_std = model.delta * multiplicity as f64;
    let mut sum = 0.0;
    for trial in 0..model.trials {
        let noise = gaussian(derive_stream(model.seed, &[u64::from(qubit_index), trial]));
        sum += true_intensity as f64 + trial_std * noise;
    }
    let mean = sum / model.trials as f64;
    let threshold = 1.0 - multiplicity as f64;
    let decoded_bit = u8::from(mean > threshold);
    let true_bit = u8::from(true_intensity as f64 > threshold);
    NoisyReading {
        mean_intensity: mean,
        trial_std,
        decoded_bit,
        correct: decoded_bit == true_bit,
    }
}

/// Smallest trial count satisfying the strict bound `N > 2^{2(n−k)}` for
/// δ = 2^−k over `n` data bits; 1 when the sensitivity already suffices
/// (k ≥ n). Saturates at `u64::MAX` for extreme `n − k`.
pub fn required_trials(data_bits: u32, error_exponent: u32) -> u64 {
    if error_exponent >= data_bits {
        return 1;
    }
    let shift = 2 * (data_bits - error_exponent);
    if shift >= 127 {
        return u64::MAX;
    }
    let bound: u128 = (1u128 << shift) + 1;
    u64::try_from(bound).unwrap_or(u64::MAX)
}

/// Generalization of [`required_trials`] to arbitrary δ and domain size:
/// the smallest integer strictly greater than (δ·N)², or 1 when δ·N ≤ 1.
pub fn required_trials_for(delta: f64, domain_size: u64) -> u128 {
    let scaled = delta * domain_size as f64;
    if scaled <= 1.0 {
        1
    } else {
        (scaled * scaled).floor() as u128 + 1
    }
}

/// Grover's analytic query count `⌈(π/4)√N⌉`.
pub fn grover_queries(domain_size: u64) -> u64 {
    (std::f64::consts::FRAC_PI_4 * (domain_size as f64).sqrt()).ceil() as u64
}

/// The two efficiency inequalities against Grover's algorithm at database
/// size `N` and measurement error δ, with the numeric sides they compare.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossoverRecord {
    pub domain_size: u64,
    /// `N·√N`, the one-application search side.
    pub one_query_side: f64,
    /// `N·√N·log₂N`, the bit-by-bit search side.
    pub bruschweiler_side: f64,
    /// `δ^−2`.
    pub error_side: f64,
    pub ours_beats_grover: bool,
    pub bruschweiler_beats_grover: bool,
}

/// Evaluate both crossover inequalities. Decreasing δ can only turn a false
/// verdict true.
pub fn crossover(domain_size: u64, delta: f64) -> Result<CrossoverRecord, NoiseError> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(NoiseError::InvalidDelta(delta));
    }
    let n = domain_size as f64;
    let one_query_side = n * n.sqrt();
    let bruschweiler_side = one_query_side * n.log2();
    let error_side = delta.powi(-2);
    Ok(CrossoverRecord {
        domain_size,
        one_query_side,
        bruschweiler_side,
        error_side,
        ours_beats_grover: one_query_side < error_side,
        bruschweiler_beats_grover: bruschweiler_side < error_side,
    })
}

/// One row of a Monte Carlo success curve: at `trials` averaged trials per
/// reading, the fraction of repetitions in which all data bits of a random
/// target decoded correctly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuccessPoint {
    pub trials: u64,
    pub repetitions: u64,
    pub successes: u64,
    pub success_rate: f64,
}

/// Estimate the all-bits decode success rate over a grid of trial counts.
///
/// Each repetition draws a random `data_bits`-wide target, computes the exact
/// per-ancilla intensities a one-application search would see, perturbs each
/// with the noise model at δ = 2^−`error_exponent`, and checks that every bit
/// decodes correctly. Repetitions run concurrently; the result is identical
/// for any worker count and bit-reproducible under a fixed seed.
pub fn success_curve(
    data_bits: u32,
    error_exponent: u32,
    trial_grid: &[u64],
    repetitions: u64,
    seed: u64,
) -> Result<Vec<SuccessPoint>, NoiseError> {
    if trial_grid.is_empty() {
        return Err(NoiseError::EmptyGrid);
    }
    if repetitions == 0 {
        return Err(NoiseError::ZeroRepetitions);
    }
    if data_bits == 0 || data_bits > 62 {
        return Err(NoiseError::TooManyBits(data_bits));
    }
    let delta = (-(error_exponent as f64)).exp2();
    if delta.is_nan() || delta <= 0.0 {
        return Err(NoiseError::InvalidDelta(delta));
    }
    for &trials in trial_grid {
        if trials == 0 {
            return Err(NoiseError::ZeroTrials);
        }
    }
    let multiplicity = 1u64 << data_bits;

    let success_counts = (0..repetitions)
        .into_par_iter()
        .map(|rep| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_stream(seed, &[rep, u64::MAX]));
            let target: u64 = rng.random_range(0..multiplicity);
            let rep_seed = derive_stream(seed, &[rep]);
            trial_grid
                .iter()
                .map(|&trials| {
                    let model = NoiseModel {
                        delta,
                        trials,
                        seed: rep_seed,
                    };
                    let all_correct = (1..=data_bits).all(|qubit| {
                        let bit = (target >> (data_bits - qubit)) & 1;
                        let true_intensity = -(multiplicity as i64) + 2 * bit as i64;
                        noisy_measure(true_intensity, multiplicity, &model, qubit).correct
                    });
                    u64::from(all_correct)
                })
                .collect::<Vec<u64>>()
        })
        .reduce(
            || vec![0u64; trial_grid.len()],
            |mut acc, part| {
                for (a, b) in acc.iter_mut().zip(part) {
                    *a += b;
                }
                acc
            },
        );

    Ok(trial_grid
        .iter()
        .zip(success_counts)
        .map(|(&trials, successes)| SuccessPoint {
            trials,
            repetitions,
            successes,
            success_rate: successes as f64 / repetitions as f64,
        })
        .collect())
}

/// CSV rendering of a success curve: header line, one row per grid point.
pub fn success_curve_csv(points: &[SuccessPoint]) -> String {
    let mut out = String::from("trials,repetitions,successes,success_rate\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{:.6}",
            p.trials, p.repetitions, p.successes, p.success_rate
        );
    }
    out
}

/// CSV rendering of crossover records: header line, one row per record.
pub fn crossover_csv(records: &[CrossoverRecord]) -> String {
    let mut out = String::from(
        "domain_size,one_query_side,bruschweiler_side,error_side,\
         ours_beats_grover,bruschweiler_beats_grover\n",
    );
    for r in records {
        let _ = writeln!(
            out,
            "{},{:.6e},{:.6e},{:.6e},{},{}",
            r.domain_size,
            r.one_query_side,
            r.bruschweiler_side,
            r.error_side,
            r.ours_beats_grover,
            r.bruschweiler_beats_grover
        );
    }
    out
}
