//! Deterministic synthetic series standing in for real data of three characters:
//! sparse tall peaks over a quiet floor, a slow oscillation with noise, and a
//! random walk.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Amplitude of the uniform background noise.
pub const NOISE_SCALE: f64 = 1.0;
pub const SPIKE_COUNT: usize = 5;
pub const MIN_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SyntheticKind {
    SpikeTrain,
    NoisySine,
    RandomWalk,
}

impl SyntheticKind {
    pub fn name(self) -> &'static str {
        match self {
            SyntheticKind::SpikeTrain => "spike-train",
            SyntheticKind::NoisySine => "noisy-sine",
            SyntheticKind::RandomWalk => "random-walk",
        }
    }
}

impl fmt::Display for SyntheticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SyntheticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spike-train" => Ok(SyntheticKind::SpikeTrain),
            "noisy-sine" => Ok(SyntheticKind::NoisySine),
            "random-walk" => Ok(SyntheticKind::RandomWalk),
            other => Err(Error::param(
                "kind",
                format!("unknown synthetic kind {other:?}"),
            )),
        }
    }
}

fn noise(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-NOISE_SCALE..=NOISE_SCALE)
}

/// A spike train together with the indices of its spikes, ascending.
pub fn spike_train(n: usize, seed: u64) -> Result<(TimeSeries, Vec<usize>)> {
    check_len(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values: Vec<f64> = (0..n).map(|_| noise(&mut rng)).collect();
    let mut spikes = sample(&mut rng, n, SPIKE_COUNT.min(n)).into_vec();
    spikes.sort_unstable();
    for &i in &spikes {
        values[i] += rng.gen_range(15.0..30.0) * NOISE_SCALE;
    }
    let series = TimeSeries::new(values)?.labeled(label(SyntheticKind::SpikeTrain, n, seed));
    Ok((series, spikes))
}

fn check_len(n: usize) -> Result<()> {
    if n < MIN_LEN {
        return Err(Error::param("n", format!("{n} < {MIN_LEN}")));
    }
    Ok(())
}

fn label(kind: SyntheticKind, n: usize, seed: u64) -> String {
    format!("{kind}-n{n}-s{seed}")
}

pub fn generate_synthetic(kind: SyntheticKind, n: usize, seed: u64) -> Result<TimeSeries> {
    check_len(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<f64> = match kind {
        SyntheticKind::SpikeTrain => return Ok(spike_train(n, seed)?.0),
        SyntheticKind::NoisySine => {
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            (0..n)
                .map(|i| {
                    let t = i as f64 / n as f64;
                    5.0 * NOISE_SCALE * (std::f64::consts::TAU * 3.0 * t + phase).sin()
                        + noise(&mut rng)
                })
                .collect()
        }
        SyntheticKind::RandomWalk => {
            let mut level = 0.0;
            (0..n)
                .map(|_| {
                    level += noise(&mut rng);
                    level
                })
                .collect()
        }
    };
    Ok(TimeSeries::new(values)?.labeled(label(kind, n, seed)))
}
