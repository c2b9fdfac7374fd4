//! Differentiable function approximation.
//!
//! A small fully-connected network with a diagonal-Gaussian policy head and a
//! scalar value head. Forward passes, reverse-mode gradients and the Adam
//! update all run in 64-bit arithmetic so analytic gradients can be checked
//! against central finite differences at tight tolerances.

mod adam;
mod checkpoint;
mod gaussian;
mod net;
mod tape;
mod tensor;

pub use adam::{optimizer_step, AdamConfig, AdamState};
pub use checkpoint::{load_checkpoint, save_checkpoint, Checkpoint, CHECKPOINT_VERSION};
pub use gaussian::{gaussian_entropy, gaussian_log_density, GaussianDist};
pub use net::{
    forward_policy, forward_value, Activation, Head, NetOutputs, NetSpec, DEFAULT_LOG_STD_MAX,
    DEFAULT_LOG_STD_MIN,
};
pub use tape::{gradient, Tape, Var};
pub use tensor::{NamedTensor, ParamSet};
