//! Network architecture: a dense trunk with a Gaussian-policy head, a scalar
//! value head, or both from one shared trunk.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianDist;
use super::tape::{rows_cols, Tape, Var};
use super::tensor::{NamedTensor, ParamSet};
use crate::error::ConfigError;

pub const DEFAULT_LOG_STD_MIN: f64 = -20.0;
pub const DEFAULT_LOG_STD_MAX: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Tanh,
    Relu,
}

/// What the network produces after the trunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Head {
    GaussianPolicy { action_dim: usize },
    ScalarValue,
    Shared { action_dim: usize },
}

impl Head {
    pub fn action_dim(&self) -> Option<usize> {
        match self {
            Head::GaussianPolicy { action_dim } | Head::Shared { action_dim } => Some(*action_dim),
            Head::ScalarValue => None,
        }
    }

    pub fn has_value(&self) -> bool {
        matches!(self, Head::ScalarValue | Head::Shared { .. })
    }
}

/// Architecture description. The parameter layout is a deterministic
/// function of this spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetSpec {
    pub input_dim: usize,
    pub hidden_layers: Vec<usize>,
    pub activation: Activation,
    pub head: Head,
    pub log_std_min: f64,
    pub log_std_max: f64,
}

impl NetSpec {
    pub fn new(input_dim: usize, hidden_layers: Vec<usize>, activation: Activation, head: Head) -> Self {
        NetSpec {
            input_dim,
            hidden_layers,
            activation,
            head,
            log_std_min: DEFAULT_LOG_STD_MIN,
            log_std_max: DEFAULT_LOG_STD_MAX,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.input_dim < 1 {
            return Err(ConfigError::invalid("input_dim", "must be at least 1"));
        }
        if let Some(a) = self.head.action_dim() {
            if a < 1 {
                return Err(ConfigError::invalid("action_dim", "must be at least 1"));
            }
        }
        if self.hidden_layers.iter().any(|&h| h == 0) {
            return Err(ConfigError::invalid("hidden_layers", "layer width 0"));
        }
        if !(self.log_std_min < self.log_std_max) {
            return Err(ConfigError::invalid(
                "log_std_min/log_std_max",
                "min must be below max",
            ));
        }
        Ok(())
    }

    fn trunk_dims(&self) -> Vec<(usize, usize)> {
        let mut dims = Vec::new();
        let mut prev = self.input_dim;
        for &h in &self.hidden_layers {
            dims.push((h, prev));
            prev = h;
        }
        dims
    }

    fn last_width(&self) -> usize {
        *self.hidden_layers.last().unwrap_or(&self.input_dim)
    }

    /// Named tensor layout: trunk layers, then policy head, then value head.
    pub fn param_layout(&self) -> Vec<(String, Vec<usize>)> {
        let mut layout = Vec::new();
        for (i, (out, inp)) in self.trunk_dims().into_iter().enumerate() {
            layout.push((format!("hidden{i}.weight"), vec![out, inp]));
            layout.push((format!("hidden{i}.bias"), vec![out]));
        }
        let last = self.last_width();
        if let Some(a) = self.head.action_dim() {
            layout.push(("mean.weight".into(), vec![a, last]));
            layout.push(("mean.bias".into(), vec![a]));
            layout.push(("log_std".into(), vec![a]));
        }
        if self.head.has_value() {
            layout.push(("value.weight".into(), vec![1, last]));
            layout.push(("value.bias".into(), vec![1]));
        }
        layout
    }

    /// Random initialization: scaled-normal hidden weights, a policy-mean
    /// layer shrunk by 0.01 so the initial policy is near zero-mean, zero
    /// biases, and a zero log-std vector (unit initial std).
    pub fn init_params<R: Rng>(&self, rng: &mut R) -> ParamSet {
        let tensors = self
            .param_layout()
            .into_iter()
            .map(|(name, shape)| {
                let n: usize = shape.iter().product();
                let values = if name.ends_with(".weight") {
                    let fan_in = shape[1] as f64;
                    let gain = if name.starts_with("mean.") {
                        0.01
                    } else if name.starts_with("hidden") {
                        std::f64::consts::SQRT_2
                    } else {
                        1.0
                    };
                    let std = gain / fan_in.sqrt();
                    (0..n)
                        .map(|_| {
                            let z: f64 = rng.sample(StandardNormal);
                            z * std
                        })
                        .collect()
                } else {
                    vec![0.0; n]
                };
                NamedTensor::new(name, shape, values)
            })
            .collect();
        ParamSet::new(tensors)
    }

    /// Records the network on a tape. `params` must be leaves created from a
    /// [`ParamSet`] with this spec's layout, and `states` a `(B, input_dim)`
    /// node. Returns the head outputs present for this spec, with `log_std`
    /// already clamped and broadcast to `(B, action_dim)`.
    pub fn graph_forward(
        &self,
        tape: &mut Tape,
        params: &[Var],
        states: Var,
    ) -> Result<NetOutputs, ConfigError> {
        if tape.cols(states) != self.input_dim {
            return Err(ConfigError::DimensionMismatch {
                context: "network input",
                expected: self.input_dim,
                actual: tape.cols(states),
            });
        }
        let expected_params = self.param_layout().len();
        if params.len() != expected_params {
            return Err(ConfigError::DimensionMismatch {
                context: "parameter leaf count",
                expected: expected_params,
                actual: params.len(),
            });
        }
        let batch = tape.rows(states);
        let mut idx = 0;
        let mut next = || {
            let v = params[idx];
            idx += 1;
            v
        };

        let mut x = states;
        for _ in 0..self.hidden_layers.len() {
            let w = next();
            let b = next();
            let y = tape.linear(x, w, b);
            x = match self.activation {
                Activation::Tanh => tape.tanh(y),
                Activation::Relu => tape.relu(y),
            };
        }

        let mut outputs = NetOutputs {
            mean: None,
            log_std: None,
            value: None,
        };
        if self.head.action_dim().is_some() {
            let w = next();
            let b = next();
            outputs.mean = Some(tape.linear(x, w, b));
            let ls = next();
            let clamped = tape.clip(ls, self.log_std_min, self.log_std_max);
            outputs.log_std = Some(tape.broadcast_rows(clamped, batch));
        }
        if self.head.has_value() {
            let w = next();
            let b = next();
            outputs.value = Some(tape.linear(x, w, b));
        }
        Ok(outputs)
    }
}

/// Head outputs of one tape forward pass.
#[derive(Debug, Clone, Copy)]
pub struct NetOutputs {
    /// `(B, action_dim)` policy mean.
    pub mean: Option<Var>,
    /// `(B, action_dim)` clamped log standard deviations.
    pub log_std: Option<Var>,
    /// `(B, 1)` state values.
    pub value: Option<Var>,
}

/// Creates parameter leaves on a tape in layout order.
pub(crate) fn param_leaves(tape: &mut Tape, params: &ParamSet) -> Vec<Var> {
    params
        .tensors()
        .iter()
        .map(|t| {
            let (r, c) = rows_cols(&t.shape);
            tape.leaf(r, c, t.values.clone())
        })
        .collect()
}

fn single_forward(
    spec: &NetSpec,
    params: &ParamSet,
    state: &[f64],
) -> Result<(Tape, NetOutputs), ConfigError> {
    if state.len() != spec.input_dim {
        return Err(ConfigError::DimensionMismatch {
            context: "state",
            expected: spec.input_dim,
            actual: state.len(),
        });
    }
    let mut tape = Tape::new();
    let leaves = param_leaves(&mut tape, params);
    let states = tape.leaf(1, state.len(), state.to_vec());
    let outputs = spec.graph_forward(&mut tape, &leaves, states)?;
    Ok((tape, outputs))
}

/// Evaluates the policy head for a single state.
pub fn forward_policy(
    spec: &NetSpec,
    params: &ParamSet,
    state: &[f64],
) -> Result<GaussianDist, ConfigError> {
    let (tape, outputs) = single_forward(spec, params, state)?;
    let (mean, log_std) = match (outputs.mean, outputs.log_std) {
        (Some(m), Some(ls)) => (m, ls),
        _ => {
            return Err(ConfigError::invalid(
                "head",
                "network has no policy head",
            ))
        }
    };
    Ok(GaussianDist::new(
        tape.value(mean).to_vec(),
        tape.value(log_std).to_vec(),
    ))
}

/// Evaluates the value head for a single state.
pub fn forward_value(spec: &NetSpec, params: &ParamSet, state: &[f64]) -> Result<f64, ConfigError> {
    let (tape, outputs) = single_forward(spec, params, state)?;
    let value = outputs
        .value
        .ok_or_else(|| ConfigError::invalid("head", "network has no value head"))?;
    Ok(tape.scalar(value))
}
