//! Adam-style first-order optimizer.

use serde::{Deserialize, Serialize};

use super::tensor::ParamSet;
use crate::error::TrainError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        AdamConfig {
            learning_rate: 3e-4,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

/// Optimizer moments, aligned index-for-index with a [`ParamSet`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdamState {
    pub step: u64,
    pub first_moment: Vec<Vec<f64>>,
    pub second_moment: Vec<Vec<f64>>,
}

impl AdamState {
    pub fn new(params: &ParamSet) -> Self {
        let zeros: Vec<Vec<f64>> = params
            .tensors()
            .iter()
            .map(|t| vec![0.0; t.len()])
            .collect();
        AdamState {
            step: 0,
            first_moment: zeros.clone(),
            second_moment: zeros,
        }
    }
}

/// One bias-corrected Adam update. Rejects non-finite gradients before
/// touching the parameters, and verifies the updated parameters are finite.
pub fn optimizer_step(
    params: &mut ParamSet,
    grads: &ParamSet,
    state: &mut AdamState,
    cfg: &AdamConfig,
) -> Result<(), TrainError> {
    assert_eq!(
        params.tensors().len(),
        grads.tensors().len(),
        "gradient tensor count mismatch"
    );
    for (t, g) in params.tensors().iter().zip(grads.tensors()) {
        assert_eq!(t.shape, g.shape, "gradient shape mismatch for {}", t.name);
        if g.values.iter().any(|v| !v.is_finite()) {
            return Err(TrainError::NonFiniteGradient {
                tensor: t.name.clone(),
                batch_id: "optimizer_step".into(),
            });
        }
    }

    state.step += 1;
    let t = state.step as i32;
    let bias1 = 1.0 - cfg.beta1.powi(t);
    let bias2 = 1.0 - cfg.beta2.powi(t);

    for (ti, tensor) in params.tensors_mut().iter_mut().enumerate() {
        let g = &grads.tensors()[ti].values;
        let m = &mut state.first_moment[ti];
        let v = &mut state.second_moment[ti];
        for k in 0..tensor.values.len() {
            m[k] = cfg.beta1 * m[k] + (1.0 - cfg.beta1) * g[k];
            v[k] = cfg.beta2 * v[k] + (1.0 - cfg.beta2) * g[k] * g[k];
            let m_hat = m[k] / bias1;
            let v_hat = v[k] / bias2;
            tensor.values[k] -= cfg.learning_rate * m_hat / (v_hat.sqrt() + cfg.epsilon);
        }
    }

    if let Some(name) = params.first_non_finite() {
        return Err(TrainError::NonFiniteParam {
            tensor: name.to_string(),
        });
    }
    Ok(())
}
