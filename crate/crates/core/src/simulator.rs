//! Monte Carlo frame-error rates of binary codes under BPSK-AWGN with
//! exhaustive ML decoding.
//!
//! Frame `f` at grid point `g` draws everything it needs from its own
//! counter-based stream keyed by `(seed, g, f)`. Frames are processed in
//! batches, and the stopping rule is applied afterwards in frame order, so
//! the result does not depend on how batches were scheduled.

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::error_prob::NoiseModel;
use crate::geometry::{bpsk_modulate, BipolarWord};
use crate::par::{map_range, Execution};
use crate::stream::{stream, DOMAIN_CHANNEL};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use std::io::Write;
use std::str::FromStr;

/// Largest code the exhaustive decoder accepts.
pub const DECODER_CAP: u64 = 1 << 20;
pub const DEFAULT_MAX_FRAMES: u64 = 10_000_000;
pub const DEFAULT_TARGET_ERRORS: u64 = 100;

const CHUNK: u64 = 1024;
const MAX_BATCH_CHUNKS: u64 = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum TxPolicy {
    #[default]
    AllZero,
    Random,
}

impl FromStr for TxPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-zero" => Ok(TxPolicy::AllZero),
            "random" => Ok(TxPolicy::Random),
            _ => Err(Error::Parse(format!("unknown transmit policy `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimConfig {
    pub sigmas: Vec<f64>,
    pub seed: u64,
    pub max_frames: u64,
    pub target_errors: u64,
    pub policy: TxPolicy,
}

impl SimConfig {
    pub fn new(sigmas: Vec<f64>, seed: u64) -> Self {
        SimConfig {
            sigmas,
            seed,
            max_frames: DEFAULT_MAX_FRAMES,
            target_errors: DEFAULT_TARGET_ERRORS,
            policy: TxPolicy::AllZero,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_frames == 0 {
            return Err(Error::InvalidArgument(
                "max frames must be at least 1".into(),
            ));
        }
        if self.target_errors == 0 {
            return Err(Error::InvalidArgument(
                "target errors must be at least 1".into(),
            ));
        }
        if self.sigmas.is_empty() {
            return Err(Error::InvalidArgument("empty noise grid".into()));
        }
        for &s in &self.sigmas {
            NoiseModel::new(s)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FerEstimate {
    pub sigma: f64,
    pub ebn0_db: f64,
    pub frames: u64,
    pub errors: u64,
    pub fer: f64,
    pub stderr: f64,
}

/// `y = s + z` with `z` iid `N(0, σ²)` drawn from `rng`.
pub fn awgn_channel<R: Rng + ?Sized>(s: &BipolarWord, noise: NoiseModel, rng: &mut R) -> Vec<f64> {
    s.signals
        .iter()
        .map(|&x| x + noise.sigma() * rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// Exhaustive maximum-correlation decoder over all bipolar codewords.
#[derive(Clone, Debug)]
pub struct MlDecoder {
    n: usize,
    images: Vec<f64>,
}

impl MlDecoder {
    pub fn new(code: &LinearCode) -> Result<Self> {
        if !code.is_binary() {
            return Err(Error::NonBinary(code.q()));
        }
        let words = code.enumerate_codewords_capped(DECODER_CAP)?;
        let mut images = Vec::with_capacity(words.len() * code.n());
        for w in &words {
            images.extend(bpsk_modulate(w)?.signals);
        }
        Ok(MlDecoder {
            n: code.n(),
            images,
        })
    }

    pub fn len(&self) -> usize {
        self.images.len() / self.n.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, index: u64) -> BipolarWord {
        let a = index as usize * self.n;
        BipolarWord {
            signals: self.images[a..a + self.n].to_vec(),
        }
    }

    /// Index of the codeword nearest to `y`; ties go to the lowest index.
    pub fn decode(&self, y: &[f64]) -> u64 {
        let mut best = (f64::NEG_INFINITY, 0u64);
        for (idx, img) in self.images.chunks_exact(self.n).enumerate() {
            let corr: f64 = img.iter().zip(y).map(|(a, b)| a * b).sum();
            if corr > best.0 {
                best = (corr, idx as u64);
            }
        }
        best.1
    }
}

fn simulate_frame(
    dec: &MlDecoder,
    noise: NoiseModel,
    policy: TxPolicy,
    seed: u64,
    point: u64,
    frame: u64,
) -> bool {
    let mut rng = stream(seed, DOMAIN_CHANNEL, point, frame);
    let tx = match policy {
        TxPolicy::AllZero => 0,
        TxPolicy::Random => rng.random_range(0..dec.len() as u64),
    };
    let base = tx as usize * dec.n;
    let y: Vec<f64> = dec.images[base..base + dec.n]
        .iter()
        .map(|&x| x + noise.sigma() * rng.sample::<f64, _>(StandardNormal))
        .collect();
    dec.decode(&y) != tx
}

fn simulate_point(
    dec: &MlDecoder,
    cfg: &SimConfig,
    point: usize,
    exec: Execution,
    code: &LinearCode,
) -> Result<FerEstimate> {
    let noise = NoiseModel::new(cfg.sigmas[point])?;
    let mut start = 0u64;
    let mut errors = 0u64;
    let mut batch = 1u64;
    let mut frames = cfg.max_frames;
    'outer: while start < cfg.max_frames {
        let span = (batch * CHUNK).min(cfg.max_frames - start);
        let chunks = span.div_ceil(CHUNK);
        let found = map_range(exec, 0..chunks, |c| {
            let lo = start + c * CHUNK;
            let hi = (lo + CHUNK).min(start + span);
            (lo..hi)
                .filter(|&f| simulate_frame(dec, noise, cfg.policy, cfg.seed, point as u64, f))
                .collect::<Vec<u64>>()
        });
        for f in found.into_iter().flatten() {
            errors += 1;
            if errors == cfg.target_errors {
                frames = f + 1;
                break 'outer;
            }
        }
        start += span;
        batch = (batch * 2).min(MAX_BATCH_CHUNKS);
    }
    let fer = errors as f64 / frames as f64;
    Ok(FerEstimate {
        sigma: noise.sigma(),
        ebn0_db: noise.ebn0_db(code.n(), code.k()),
        frames,
        errors,
        fer,
        stderr: (fer * (1.0 - fer) / frames as f64).sqrt(),
    })
}

/// Frame-error estimates at every grid point, stopping each point at
/// `target_errors` errors or `max_frames` frames, whichever comes first.
pub fn estimate_fer(code: &LinearCode, cfg: &SimConfig) -> Result<Vec<FerEstimate>> {
    estimate_fer_with(code, cfg, Execution::default())
}

pub fn estimate_fer_with(
    code: &LinearCode,
    cfg: &SimConfig,
    exec: Execution,
) -> Result<Vec<FerEstimate>> {
    cfg.validate()?;
    let dec = MlDecoder::new(code)?;
    (0..cfg.sigmas.len())
        .map(|p| simulate_point(&dec, cfg, p, exec, code))
        .collect()
}

#[derive(Serialize)]
struct SimRow {
    sigma: f64,
    ebn0_db: f64,
    frames: u64,
    errors: u64,
    fer: f64,
    stderr: f64,
}

/// CSV with columns `sigma, ebn0_db, frames, errors, fer, stderr`.
pub fn write_fer_csv<W: Write>(estimates: &[FerEstimate], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let fail = |e: csv::Error| Error::InvalidArgument(format!("csv output failed: {e}"));
    for e in estimates {
        w.serialize(SimRow {
            sigma: e.sigma,
            ebn0_db: e.ebn0_db,
            frames: e.frames,
            errors: e.errors,
            fer: e.fer,
            stderr: e.stderr,
        })
        .map_err(fail)?;
    }
    w.flush().map_err(|e| Error::InvalidArgument(e.to_string()))
}
