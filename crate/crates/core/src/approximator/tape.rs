//! Reverse-mode differentiation on a small operation tape.
//!
//! Values are dense row-major matrices of f64. Each operation evaluates
//! eagerly when it is recorded; `backward` then sweeps the tape in reverse,
//! accumulating gradients for every node. The primitive set is exactly what
//! the losses need: dense layers, tanh/relu, elementwise arithmetic, clip,
//! min, square, mean, and fused Gaussian log-density/entropy nodes.
//!
//! Subgradient conventions: `clip` has derivative 1 strictly inside the
//! interval and 0 outside (including at the bounds); `min` routes the
//! gradient to the attained branch, ties going to the first argument;
//! `relu` treats the kink at 0 as having derivative 0.

use super::gaussian::{gaussian_entropy, gaussian_log_density};
use super::tensor::ParamSet;
use crate::error::TrainError;

/// Handle to a node on a [`Tape`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Var(usize);

#[derive(Debug, Clone)]
enum Op {
    Leaf,
    Linear { x: usize, w: usize, b: usize },
    Tanh { x: usize },
    Relu { x: usize },
    Exp { x: usize },
    Neg { x: usize },
    Square { x: usize },
    Scale { x: usize, c: f64 },
    AddScalar { x: usize },
    Add { a: usize, b: usize },
    Sub { a: usize, b: usize },
    Mul { a: usize, b: usize },
    Clip { x: usize, lo: f64, hi: f64 },
    Min { a: usize, b: usize },
    RowSum { x: usize },
    Mean { x: usize },
    BroadcastRows { x: usize },
    GaussLogDensity { mean: usize, log_std: usize, action: usize },
    GaussEntropy { log_std: usize },
}

#[derive(Debug)]
struct Node {
    rows: usize,
    cols: usize,
    value: Vec<f64>,
    op: Op,
}

/// Raised when a loss evaluates to a non-finite value before backward.
#[derive(Debug, Clone, Copy)]
pub struct NonFiniteLoss(pub f64);

/// A Wengert list holding forward values and, after `backward`, gradients.
#[derive(Debug, Default)]
pub struct Tape {
    nodes: Vec<Node>,
    grads: Vec<Vec<f64>>,
}

impl Tape {
    pub fn new() -> Self {
        Tape::default()
    }

    fn push(&mut self, rows: usize, cols: usize, value: Vec<f64>, op: Op) -> Var {
        debug_assert_eq!(value.len(), rows * cols);
        self.nodes.push(Node {
            rows,
            cols,
            value,
            op,
        });
        Var(self.nodes.len() - 1)
    }

    pub fn rows(&self, v: Var) -> usize {
        self.nodes[v.0].rows
    }

    pub fn cols(&self, v: Var) -> usize {
        self.nodes[v.0].cols
    }

    pub fn value(&self, v: Var) -> &[f64] {
        &self.nodes[v.0].value
    }

    /// Scalar value of a 1×1 node.
    pub fn scalar(&self, v: Var) -> f64 {
        debug_assert_eq!(self.nodes[v.0].value.len(), 1);
        self.nodes[v.0].value[0]
    }

    /// Gradient of the last `backward` loss with respect to `v`.
    pub fn grad(&self, v: Var) -> &[f64] {
        &self.grads[v.0]
    }

    /// Records an input matrix. Gradients are accumulated for every leaf;
    /// the caller decides which ones to read.
    pub fn leaf(&mut self, rows: usize, cols: usize, values: Vec<f64>) -> Var {
        self.push(rows, cols, values, Op::Leaf)
    }

    /// Single-column leaf, one value per row.
    pub fn column(&mut self, values: Vec<f64>) -> Var {
        let rows = values.len();
        self.push(rows, 1, values, Op::Leaf)
    }

    /// `x·wᵀ + b` with `x: (B,I)`, `w: (O,I)`, `b: (1,O)`.
    pub fn linear(&mut self, x: Var, w: Var, b: Var) -> Var {
        let (bsz, in_dim) = (self.rows(x), self.cols(x));
        let (out_dim, w_in) = (self.rows(w), self.cols(w));
        assert_eq!(in_dim, w_in, "linear: input dim mismatch");
        assert_eq!(self.rows(b), 1, "linear: bias must be a row vector");
        assert_eq!(self.cols(b), out_dim, "linear: bias dim mismatch");
        let mut out = vec![0.0; bsz * out_dim];
        {
            let xv = &self.nodes[x.0].value;
            let wv = &self.nodes[w.0].value;
            let bv = &self.nodes[b.0].value;
            for r in 0..bsz {
                let xrow = &xv[r * in_dim..(r + 1) * in_dim];
                let orow = &mut out[r * out_dim..(r + 1) * out_dim];
                for o in 0..out_dim {
                    let wrow = &wv[o * in_dim..(o + 1) * in_dim];
                    let mut acc = 0.0;
                    for i in 0..in_dim {
                        acc += xrow[i] * wrow[i];
                    }
                    orow[o] = acc + bv[o];
                }
            }
        }
        self.push(bsz, out_dim, out, Op::Linear { x: x.0, w: w.0, b: b.0 })
    }

    pub fn tanh(&mut self, x: Var) -> Var {
        let (r, c) = (self.rows(x), self.cols(x));
        let out = self.nodes[x.0].value.iter().map(|v| v.tanh()).collect();
        self.push(r, c, out, Op::Tanh { x: x.0 })
    }

    pub fn relu(&mut self, x: Var) -> Var {
        let (r, c) = (self.rows(x), self.cols(x));
        let out = self.nodes[x.0].value.iter().map(|v| v.max(0.0)).collect();
        self.push(r, c, out, Op::Relu { x: x.0 })
    }

    pub fn exp(&mut self, x: Var) -> Var {
        let (r, c) = (self.rows(x), self.cols(x));
        let out = self.nodes[x.0].value.iter().map(|v| v.exp()).collect();
        self.push(r, c, out, Op::Exp { x: x.0 })
    }

    pub fn neg(&mut self, x: Var) -> Var {
        let (r, c) = (self.rows(x), self.cols(x));
        let out = self.nodes[x.0].value.iter().map(|v| -v).collect();
        self.push(r, c, out, Op::Neg { x: x.0 })
    }

    pub fn square(&mut self, x: Var) -> Var {
        let (r, c) = (self.rows(x), self.cols(x));
        let out = self.nodes[x.0].value.iter().map(|v| v * v).collect();
        self.push(r, c, out, Op::Square { x: x.0 })
    }

    pub fn scale(&mut self, x: Var, c: f64) -> Var {
        let (r, cc) = (self.rows(x), self.cols(x));
        let out = self.nodes[x.0].value.iter().map(|v| v * c).collect();
        self.push(r, cc, out, Op::Scale { x: x.0, c })
    }

    pub fn add_scalar(&mut self, x: Var, c: f64) -> Var {
        let (r, cc) = (self.rows(x), self.cols(x));
        let out = self.nodes[x.0].value.iter().map(|v| v + c).collect();
        self.push(r, cc, out, Op::AddScalar { x: x.0 })
    }

    fn assert_same_shape(&self, a: Var, b: Var, op: &str) {
        assert_eq!(self.rows(a), self.rows(b), "{op}: row mismatch");
        assert_eq!(self.cols(a), self.cols(b), "{op}: col mismatch");
    }

    pub fn add(&mut self, a: Var, b: Var) -> Var {
        self.assert_same_shape(a, b, "add");
        let (r, c) = (self.rows(a), self.cols(a));
        let out = self.nodes[a.0]
            .value
            .iter()
            .zip(&self.nodes[b.0].value)
            .map(|(x, y)| x + y)
            .collect();
        self.push(r, c, out, Op::Add { a: a.0, b: b.0 })
    }

    pub fn sub(&mut self, a: Var, b: Var) -> Var {
        self.assert_same_shape(a, b, "sub");
        let (r, c) = (self.rows(a), self.cols(a));
        let out = self.nodes[a.0]
            .value
            .iter()
            .zip(&self.nodes[b.0].value)
            .map(|(x, y)| x - y)
            .collect();
        self.push(r, c, out, Op::Sub { a: a.0, b: b.0 })
    }

    pub fn mul(&mut self, a: Var, b: Var) -> Var {
        self.assert_same_shape(a, b, "mul");
        let (r, c) = (self.rows(a), self.cols(a));
        let out = self.nodes[a.0]
            .value
            .iter()
            .zip(&self.nodes[b.0].value)
            .map(|(x, y)| x * y)
            .collect();
        self.push(r, c, out, Op::Mul { a: a.0, b: b.0 })
    }

    pub fn clip(&mut self, x: Var, lo: f64, hi: f64) -> Var {
        assert!(lo <= hi, "clip: lo must not exceed hi");
        let (r, c) = (self.rows(x), self.cols(x));
        let out = self.nodes[x.0]
            .value
            .iter()
            .map(|v| v.min(hi).max(lo))
            .collect();
        self.push(r, c, out, Op::Clip { x: x.0, lo, hi })
    }

    /// Elementwise minimum; ties route the gradient to `a`.
    pub fn min(&mut self, a: Var, b: Var) -> Var {
        self.assert_same_shape(a, b, "min");
        let (r, c) = (self.rows(a), self.cols(a));
        let out = self.nodes[a.0]
            .value
            .iter()
            .zip(&self.nodes[b.0].value)
            .map(|(&x, &y)| if x <= y { x } else { y })
            .collect();
        self.push(r, c, out, Op::Min { a: a.0, b: b.0 })
    }

    /// `(B,D) -> (B,1)` sum over columns.
    pub fn row_sum(&mut self, x: Var) -> Var {
        let (r, c) = (self.rows(x), self.cols(x));
        let xv = &self.nodes[x.0].value;
        let out = (0..r)
            .map(|i| xv[i * c..(i + 1) * c].iter().sum())
            .collect();
        self.push(r, 1, out, Op::RowSum { x: x.0 })
    }

    /// Mean over all elements, producing a 1×1 node.
    pub fn mean(&mut self, x: Var) -> Var {
        let n = self.nodes[x.0].value.len();
        assert!(n > 0, "mean of empty node");
        let s: f64 = self.nodes[x.0].value.iter().sum();
        self.push(1, 1, vec![s / n as f64], Op::Mean { x: x.0 })
    }

    /// Repeats a `(1,D)` row `rows` times.
    pub fn broadcast_rows(&mut self, x: Var, rows: usize) -> Var {
        assert_eq!(self.rows(x), 1, "broadcast_rows: input must be a row");
        let c = self.cols(x);
        let mut out = Vec::with_capacity(rows * c);
        for _ in 0..rows {
            out.extend_from_slice(&self.nodes[x.0].value);
        }
        self.push(rows, c, out, Op::BroadcastRows { x: x.0 })
    }

    /// Per-row diagonal-Gaussian log density, `(B,A)×3 -> (B,1)`.
    pub fn gaussian_log_density(&mut self, mean: Var, log_std: Var, action: Var) -> Var {
        self.assert_same_shape(mean, log_std, "gaussian_log_density");
        self.assert_same_shape(mean, action, "gaussian_log_density");
        let (r, c) = (self.rows(mean), self.cols(mean));
        let mv = &self.nodes[mean.0].value;
        let lv = &self.nodes[log_std.0].value;
        let av = &self.nodes[action.0].value;
        let out = (0..r)
            .map(|i| {
                gaussian_log_density(
                    &mv[i * c..(i + 1) * c],
                    &lv[i * c..(i + 1) * c],
                    &av[i * c..(i + 1) * c],
                )
            })
            .collect();
        self.push(
            r,
            1,
            out,
            Op::GaussLogDensity {
                mean: mean.0,
                log_std: log_std.0,
                action: action.0,
            },
        )
    }

    /// Per-row diagonal-Gaussian entropy, `(B,A) -> (B,1)`.
    pub fn gaussian_entropy(&mut self, log_std: Var) -> Var {
        let (r, c) = (self.rows(log_std), self.cols(log_std));
        let lv = &self.nodes[log_std.0].value;
        let out = (0..r)
            .map(|i| gaussian_entropy(&lv[i * c..(i + 1) * c]))
            .collect();
        self.push(r, 1, out, Op::GaussEntropy { log_std: log_std.0 })
    }

    /// Runs the reverse sweep from a 1×1 loss node, filling gradients for
    /// every node on the tape. Fails if the loss value is non-finite.
    pub fn backward(&mut self, loss: Var) -> Result<(), NonFiniteLoss> {
        let lv = self.scalar(loss);
        if !lv.is_finite() {
            return Err(NonFiniteLoss(lv));
        }
        self.grads = self.nodes.iter().map(|n| vec![0.0; n.value.len()]).collect();
        self.grads[loss.0][0] = 1.0;

        for i in (0..self.nodes.len()).rev() {
            let op = self.nodes[i].op.clone();
            let (gl, gr) = self.grads.split_at_mut(i);
            let g = &gr[0];
            match op {
                Op::Leaf => {}
                Op::Linear { x, w, b } => {
                    let bsz = self.nodes[x].rows;
                    let in_dim = self.nodes[x].cols;
                    let out_dim = self.nodes[w].rows;
                    let xv = &self.nodes[x].value;
                    let wv = &self.nodes[w].value;
                    for r in 0..bsz {
                        let grow = &g[r * out_dim..(r + 1) * out_dim];
                        let dxrow = &mut gl[x][r * in_dim..(r + 1) * in_dim];
                        for o in 0..out_dim {
                            let go = grow[o];
                            if go == 0.0 {
                                continue;
                            }
                            let wrow = &wv[o * in_dim..(o + 1) * in_dim];
                            for k in 0..in_dim {
                                dxrow[k] += go * wrow[k];
                            }
                        }
                    }
                    for r in 0..bsz {
                        let grow = &g[r * out_dim..(r + 1) * out_dim];
                        let xrow = &xv[r * in_dim..(r + 1) * in_dim];
                        for o in 0..out_dim {
                            let go = grow[o];
                            if go == 0.0 {
                                continue;
                            }
                            let dwrow = &mut gl[w][o * in_dim..(o + 1) * in_dim];
                            for k in 0..in_dim {
                                dwrow[k] += go * xrow[k];
                            }
                        }
                    }
                    for r in 0..bsz {
                        let grow = &g[r * out_dim..(r + 1) * out_dim];
                        for o in 0..out_dim {
                            gl[b][o] += grow[o];
                        }
                    }
                }
                Op::Tanh { x } => {
                    let yv = &self.nodes[i].value;
                    for (k, gk) in g.iter().enumerate() {
                        gl[x][k] += gk * (1.0 - yv[k] * yv[k]);
                    }
                }
                Op::Relu { x } => {
                    let xv = &self.nodes[x].value;
                    for (k, gk) in g.iter().enumerate() {
                        if xv[k] > 0.0 {
                            gl[x][k] += gk;
                        }
                    }
                }
                Op::Exp { x } => {
                    let yv = &self.nodes[i].value;
                    for (k, gk) in g.iter().enumerate() {
                        gl[x][k] += gk * yv[k];
                    }
                }
                Op::Neg { x } => {
                    for (k, gk) in g.iter().enumerate() {
                        gl[x][k] -= gk;
                    }
                }
                Op::Square { x } => {
                    let xv = &self.nodes[x].value;
                    for (k, gk) in g.iter().enumerate() {
                        gl[x][k] += gk * 2.0 * xv[k];
                    }
                }
                Op::Scale { x, c } => {
                    for (k, gk) in g.iter().enumerate() {
                        gl[x][k] += gk * c;
                    }
                }
                Op::AddScalar { x } => {
                    for (k, gk) in g.iter().enumerate() {
                        gl[x][k] += gk;
                    }
                }
                Op::Add { a, b } => {
                    for (k, gk) in g.iter().enumerate() {
                        gl[a][k] += gk;
                    }
                    for (k, gk) in g.iter().enumerate() {
                        gl[b][k] += gk;
                    }
                }
                Op::Sub { a, b } => {
                    for (k, gk) in g.iter().enumerate() {
                        gl[a][k] += gk;
                    }
                    for (k, gk) in g.iter().enumerate() {
                        gl[b][k] -= gk;
                    }
                }
                Op::Mul { a, b } => {
                    let av = &self.nodes[a].value;
                    let bv = &self.nodes[b].value;
                    for (k, gk) in g.iter().enumerate() {
                        gl[a][k] += gk * bv[k];
                    }
                    for (k, gk) in g.iter().enumerate() {
                        gl[b][k] += gk * av[k];
                    }
                }
                Op::Clip { x, lo, hi } => {
                    let xv = &self.nodes[x].value;
                    for (k, gk) in g.iter().enumerate() {
                        if xv[k] > lo && xv[k] < hi {
                            gl[x][k] += gk;
                        }
                    }
                }
                Op::Min { a, b } => {
                    let av = &self.nodes[a].value;
                    let bv = &self.nodes[b].value;
                    for (k, gk) in g.iter().enumerate() {
                        if av[k] <= bv[k] {
                            gl[a][k] += gk;
                        }
                    }
                    for (k, gk) in g.iter().enumerate() {
                        if av[k] > bv[k] {
                            gl[b][k] += gk;
                        }
                    }
                }
                Op::RowSum { x } => {
                    let c = self.nodes[x].cols;
                    for r in 0..self.nodes[x].rows {
                        let gr = g[r];
                        for k in 0..c {
                            gl[x][r * c + k] += gr;
                        }
                    }
                }
                Op::Mean { x } => {
                    let n = self.nodes[x].value.len() as f64;
                    let gm = g[0] / n;
                    for k in 0..self.nodes[x].value.len() {
                        gl[x][k] += gm;
                    }
                }
                Op::BroadcastRows { x } => {
                    let c = self.nodes[x].cols;
                    let rows = self.nodes[i].rows;
                    for r in 0..rows {
                        for k in 0..c {
                            gl[x][k] += g[r * c + k];
                        }
                    }
                }
                Op::GaussLogDensity {
                    mean,
                    log_std,
                    action,
                } => {
                    let c = self.nodes[mean].cols;
                    let mv = &self.nodes[mean].value;
                    let lv = &self.nodes[log_std].value;
                    let av = &self.nodes[action].value;
                    for r in 0..self.nodes[mean].rows {
                        let gr = g[r];
                        if gr == 0.0 {
                            continue;
                        }
                        for k in 0..c {
                            let idx = r * c + k;
                            let inv = (-lv[idx]).exp();
                            let z = (av[idx] - mv[idx]) * inv;
                            let dmu = gr * z * inv;
                            gl[mean][idx] += dmu;
                            gl[log_std][idx] += gr * (z * z - 1.0);
                            gl[action][idx] -= dmu;
                        }
                    }
                }
                Op::GaussEntropy { log_std } => {
                    let c = self.nodes[log_std].cols;
                    for r in 0..self.nodes[log_std].rows {
                        let gr = g[r];
                        for k in 0..c {
                            gl[log_std][r * c + k] += gr;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Computes the gradient of a scalar loss with respect to every tensor in
/// `params`. The closure receives the tape and one leaf per tensor, in
/// tensor order, and must return the 1×1 loss node.
pub fn gradient<F>(params: &ParamSet, loss_fn: F) -> Result<ParamSet, TrainError>
where
    F: FnOnce(&mut Tape, &[Var]) -> Var,
{
    let mut tape = Tape::new();
    let leaves: Vec<Var> = params
        .tensors()
        .iter()
        .map(|t| {
            let (rows, cols) = rows_cols(&t.shape);
            tape.leaf(rows, cols, t.values.clone())
        })
        .collect();
    let loss = loss_fn(&mut tape, &leaves);
    tape.backward(loss)
        .map_err(|NonFiniteLoss(v)| TrainError::NonFiniteLoss {
            batch_id: format!("gradient(loss={v})"),
        })?;
    let mut grads = params.zeros_like();
    for (tensor, leaf) in grads.tensors_mut().iter_mut().zip(&leaves) {
        tensor.values.copy_from_slice(tape.grad(*leaf));
    }
    Ok(grads)
}

/// Interprets a tensor shape as (rows, cols): vectors become a single row.
pub(crate) fn rows_cols(shape: &[usize]) -> (usize, usize) {
    match shape.len() {
        1 => (1, shape[0]),
        2 => (shape[0], shape[1]),
        n => panic!("unsupported tensor rank {n}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximator::tensor::NamedTensor;

    fn fd_check<F>(params: &ParamSet, build: F, h: f64, tol: f64)
    where
        F: Fn(&mut Tape, &[Var]) -> Var + Copy,
    {
        let grads = gradient(params, build).unwrap();
        let loss_at = |p: &ParamSet| {
            let mut tape = Tape::new();
            let leaves: Vec<Var> = p
                .tensors()
                .iter()
                .map(|t| {
                    let (r, c) = rows_cols(&t.shape);
                    tape.leaf(r, c, t.values.clone())
                })
                .collect();
            let loss = build(&mut tape, &leaves);
            tape.scalar(loss)
        };
        for ti in 0..params.tensors().len() {
            for vi in 0..params.tensors()[ti].values.len() {
                let mut plus = params.clone();
                plus.tensors_mut()[ti].values[vi] += h;
                let mut minus = params.clone();
                minus.tensors_mut()[ti].values[vi] -= h;
                let fd = (loss_at(&plus) - loss_at(&minus)) / (2.0 * h);
                let an = grads.tensors()[ti].values[vi];
                if an.abs() > 1e-6 {
                    let rel = (fd - an).abs() / an.abs();
                    assert!(rel < tol, "tensor {ti} coord {vi}: an={an} fd={fd} rel={rel}");
                }
            }
        }
    }

    #[test]
    fn gradient_of_sum_of_squares_is_two_theta() {
        let params = ParamSet::new(vec![NamedTensor::new(
            "w",
            vec![2, 2],
            vec![0.5, -1.0, 2.0, 0.0],
        )]);
        let grads = gradient(&params, |tape, leaves| {
            let sq = tape.square(leaves[0]);
            let m = tape.mean(sq);
            tape.scale(m, 4.0) // mean of 4 squares ×4 = Σθ²
        })
        .unwrap();
        assert_eq!(grads.tensors()[0].values, vec![1.0, -2.0, 4.0, 0.0]);
    }

    #[test]
    fn gradient_of_constant_loss_is_zero() {
        let params = ParamSet::new(vec![NamedTensor::new("w", vec![3], vec![1.0, 2.0, 3.0])]);
        let grads = gradient(&params, |tape, _| tape.leaf(1, 1, vec![7.0])).unwrap();
        assert!(grads.tensors()[0].values.iter().all(|&g| g == 0.0));
    }

    #[test]
    fn non_finite_loss_is_rejected() {
        let params = ParamSet::new(vec![NamedTensor::new("w", vec![1], vec![1.0])]);
        let err = gradient(&params, |tape, _| tape.leaf(1, 1, vec![f64::NAN]));
        assert!(matches!(err, Err(TrainError::NonFiniteLoss { .. })));
    }

    #[test]
    fn clip_subgradient_convention() {
        // d/dx clip(x, lo, hi) is 1 strictly inside, 0 outside (and at bounds).
        for (x, expect) in [(0.5, 1.0), (-1.0, 0.0), (2.0, 0.0), (-2.0, 0.0), (3.0, 0.0)] {
            let params = ParamSet::new(vec![NamedTensor::new("x", vec![1], vec![x])]);
            let grads = gradient(&params, |tape, leaves| {
                let c = tape.clip(leaves[0], -1.0, 2.0);
                tape.mean(c)
            })
            .unwrap();
            assert_eq!(grads.tensors()[0].values[0], expect, "x={x}");
        }
    }

    #[test]
    fn min_ties_break_to_first_argument() {
        let params = ParamSet::new(vec![
            NamedTensor::new("a", vec![1], vec![2.0]),
            NamedTensor::new("b", vec![1], vec![2.0]),
        ]);
        let grads = gradient(&params, |tape, leaves| {
            let m = tape.min(leaves[0], leaves[1]);
            tape.mean(m)
        })
        .unwrap();
        assert_eq!(grads.tensors()[0].values[0], 1.0);
        assert_eq!(grads.tensors()[1].values[0], 0.0);
    }

    #[test]
    fn linear_tanh_chain_matches_finite_differences() {
        let params = ParamSet::new(vec![
            NamedTensor::new("w", vec![3, 2], vec![0.3, -0.2, 0.5, 0.1, -0.7, 0.4]),
            NamedTensor::new("b", vec![3], vec![0.05, -0.1, 0.2]),
        ]);
        fd_check(
            &params,
            |tape, leaves| {
                let x = tape.leaf(2, 2, vec![0.4, -0.3, 0.9, 0.2]);
                let y = tape.linear(x, leaves[0], leaves[1]);
                let t = tape.tanh(y);
                let s = tape.square(t);
                tape.mean(s)
            },
            1e-5,
            1e-6,
        );
    }

    #[test]
    fn gaussian_nodes_match_finite_differences() {
        let params = ParamSet::new(vec![
            NamedTensor::new("mean", vec![2, 2], vec![0.1, -0.4, 0.8, 0.0]),
            NamedTensor::new("log_std", vec![2], vec![-0.3, 0.2]),
        ]);
        fd_check(
            &params,
            |tape, leaves| {
                let ls = tape.broadcast_rows(leaves[1], 2);
                let action = tape.leaf(2, 2, vec![0.3, -0.6, 0.2, 0.5]);
                let lp = tape.gaussian_log_density(leaves[0], ls, action);
                let ent = tape.gaussian_entropy(ls);
                let both = tape.add(lp, ent);
                tape.mean(both)
            },
            1e-5,
            1e-6,
        );
    }

    #[test]
    fn relu_exp_min_chain_matches_finite_differences() {
        let params = ParamSet::new(vec![NamedTensor::new(
            "x",
            vec![1, 4],
            vec![0.7, -0.3, 1.2, 0.4],
        )]);
        fd_check(
            &params,
            |tape, leaves| {
                let r = tape.relu(leaves[0]);
                let e = tape.exp(r);
                let other = tape.leaf(1, 4, vec![1.5, 0.2, 9.0, 1.0]);
                let m = tape.min(e, other);
                let c = tape.clip(m, 0.1, 5.0);
                tape.mean(c)
            },
            1e-5,
            1e-6,
        );
    }
}
