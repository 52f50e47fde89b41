//! Deterministic two-phase group-relative policy optimization on a
//! synthetic voxel-shape world.
//!
//! The pipeline: a procedural prompt describes a small colored voxel object;
//! an autoregressive linear-softmax policy first emits semantic reasoning
//! tokens and a coarse shape, then visual reasoning tokens and a refined
//! shape; step-specific reward ensembles score both against the target; and
//! group-relative advantages drive a clipped-surrogate policy update with
//! GRPO/DAPO/GSPO variants. A mesh-to-point-cloud sampler converts decoded
//! shapes into dense colored surface samples.
//!
//! Everything is a pure function of the run configuration and seed: rollout
//! sampling, reward scoring, and gradient reduction are bit-identical across
//! runs and thread counts.

pub mod env;
pub mod harness;
pub mod meshsample;
pub mod optim;
pub mod policy;
pub mod reward;
pub mod rng;
pub mod rollout;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(String),
    #[error("decode error: {0}")]
    Decode(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("reward error: {0}")]
    Reward(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
