//! Mixed distributed proximal policy optimization.
//!
//! This crate implements PPO together with two multi-policy variants:
//! MDPPO, where N independent policies each drive M agents and exchange
//! selected trajectories every iteration, and MDPPOSC, which additionally
//! replaces the per-policy critics with one centralized value function fed
//! td-error-filtered transitions from all agents.
//!
//! The pieces are deliberately self-contained:
//! - [`approximator`]: dense networks with a diagonal-Gaussian policy head,
//!   reverse-mode gradients on a small tape, and an Adam optimizer, all in f64.
//! - [`env`]: the built-in roller task (dense and sparse reward variants).
//! - [`rollout`]: parallel collection of trajectories from N×M agents.
//! - [`estimation`]: returns, td-errors, and generalized advantage estimates.
//! - [`objectives`]: the clipped surrogate, its ratio variants, and value loss.
//! - [`mixing`]: complete/auxiliary trajectory selection and batch assembly.
//! - [`trainer`]: the synchronous collect → estimate → mix → train loop.
//! - [`config`] / [`metrics`]: experiment description and per-iteration records.

pub mod approximator;
pub mod config;
pub mod env;
pub mod error;
pub mod estimation;
pub mod metrics;
pub mod mixing;
pub mod objectives;
pub mod rollout;
pub mod seeds;
pub mod trainer;

pub use error::{ConfigError, EnvError, TrainError};
