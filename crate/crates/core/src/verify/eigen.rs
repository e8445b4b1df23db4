//! Symmetric tridiagonal pencils `A - lambda M` with diagonal `M > 0`, solved by
//! Sturm counting and bisection.

use crate::error::{PctError, Result};
use crate::model::{CaseSpec, QuantumNumbers};
use crate::pct::effective_potential_q;

use super::grid::{Boundary, CoordinateMap, Grid};

/// `A` has diagonal `diag` and off-diagonal `off`; `M = diag(weight)`. On a
/// uniform Dirichlet grid `weight = 1`, `diag = 1/h^2 + W(q_i)` and
/// `off = -1/(2h^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub weight: Vec<f64>,
}

impl TridiagonalOperator {
    /// Standard operator with unit weights.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        let weight = vec![1.0; diag.len()];
        Self::with_weight(diag, off, weight)
    }

    pub fn with_weight(diag: Vec<f64>, off: Vec<f64>, weight: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() || weight.len() != diag.len() {
            return Err(PctError::validation("inconsistent tridiagonal dimensions"));
        }
        if weight.iter().any(|w| !(*w > 0.0)) {
            return Err(PctError::validation("weights must be positive"));
        }
        Ok(Self { diag, off, weight })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda`: the count of negative
    /// pivots in the `LDL^T` factorization of `A - lambda M`.
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut pivot = 1.0;
        for i in 0..self.diag.len() {
            let mut p = self.diag[i] - lambda * self.weight[i];
            if i > 0 {
                p -= self.off[i - 1] * self.off[i - 1] / pivot;
            }
            if p == 0.0 {
                p = -f64::EPSILON * (self.diag[i].abs() + lambda.abs() * self.weight[i]).max(f64::MIN_POSITIVE);
            }
            if p < 0.0 {
                count += 1;
            }
            pivot = p;
        }
        count
    }

    /// Gershgorin interval of `M^{-1/2} A M^{-1/2}`.
    fn bounds(&self) -> (f64, f64) {
        let n = self.len();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..n {
            let w = self.weight[i];
            let mut rad = 0.0;
            if i > 0 {
                rad += self.off[i - 1].abs() / (w * self.weight[i - 1]).sqrt();
            }
            if i + 1 < n {
                rad += self.off[i].abs() / (w * self.weight[i + 1]).sqrt();
            }
            lo = lo.min(self.diag[i] / w - rad);
            hi = hi.max(self.diag[i] / w + rad);
        }
        (lo, hi)
    }

    /// The `k`-th eigenvalue (0-based) by bisection to
    /// `1e-12 max(1, |lambda|)`.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.len() {
            return Err(PctError::validation(format!(
                "eigenvalue index {k} out of range for n = {}",
                self.len()
            )));
        }
        let (glo, ghi) = self.bounds();
        if !glo.is_finite() || !ghi.is_finite() {
            return Err(PctError::Numerical("operator has non-finite entries".into()));
        }
        let mut lo = glo;
        // grow the upper end from the low side; the Gershgorin top can be huge
        let mut step = 1.0f64.max(glo.abs());
        let mut hi = (glo + step).min(ghi);
        while self.sturm_count(hi) <= k && hi < ghi {
            lo = hi;
            step *= 2.0;
            hi = (hi + step).min(ghi);
        }
        if self.sturm_count(hi) <= k {
            hi = ghi + f64::EPSILON * ghi.abs().max(1.0);
        }
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 1e-12 * mid.abs().max(1.0) || mid == lo || mid == hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// The `k` smallest eigenvalues in ascending order.
pub fn eigen_lowest(op: &TridiagonalOperator, k: usize) -> Result<Vec<f64>> {
    if k == 0 || k > op.len() {
        return Err(PctError::validation(format!(
            "need 1 <= k <= n, got k = {k}, n = {}",
            op.len()
        )));
    }
    (0..k).map(|i| op.eigenvalue(i)).collect()
}

/// Discretizes `-phi''/2 + W phi` on a grid for an arbitrary potential.
///
/// Interior rows use second-order central differences in `x`. A Robin row is
/// the boundary half-cell of the Galerkin form with lumped mass, which keeps
/// the pencil symmetric.
pub fn discretize_with<F>(grid: &Grid, mut w: F) -> Result<TridiagonalOperator>
where
    F: FnMut(f64) -> Result<f64>,
{
    let n = grid.n;
    let h = grid.h;
    let ih2 = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(n);
    let mut weight = Vec::with_capacity(n);
    for i in 0..n {
        let x = grid.x(i);
        let q = grid.map.q(x);
        let g1 = grid.map.dq(x);
        let wq = w(q)?;
        if !wq.is_finite() {
            return Err(PctError::Numerical(format!(
                "W is not finite at node q = {q}; shift the grid"
            )));
        }
        let p = g1 * g1 * wq + grid.map.schwarzian_term(x);
        let robin = (i == 0 && grid.left == Boundary::Robin)
            || (i + 1 == n && grid.right == Boundary::Robin);
        if robin {
            let lam = robin_index(grid, q, wq)?;
            diag.push(0.5 * ih2 + 0.5 * p + 0.5 * lam / h);
            weight.push(0.5 * g1 * g1);
        } else {
            diag.push(ih2 + p);
            weight.push(g1 * g1);
        }
    }
    let off = vec![-0.5 * ih2; n - 1];
    TridiagonalOperator::with_weight(diag, off, weight)
}

const RADICAND_SLACK: f64 = 1e-8;

/// `Lambda = sqrt(2c + 1/4)` with `c = lim (q - a)^2 W` read off at the node.
fn robin_index(grid: &Grid, q: f64, wq: f64) -> Result<f64> {
    let wall = match grid.map {
        CoordinateMap::HalfLine { origin, .. } => origin,
        CoordinateMap::Interval { lo, len } => {
            if (q - lo).abs() < (lo + len - q).abs() {
                lo
            } else {
                lo + len
            }
        }
        CoordinateMap::Uniform => {
            return Err(PctError::Numerical("Robin end needs a mapped grid".into()))
        }
    };
    let c = (q - wall).powi(2) * wq;
    let rad = 2.0 * c + 0.25;
    // lower-order terms of W shift the node estimate of c by O(q - wall);
    // a radicand that small is the Lambda = 0 point itself
    if rad < 0.0 && rad > -RADICAND_SLACK {
        return Ok(0.0);
    }
    if rad < 0.0 {
        return Err(PctError::Numerical(format!(
            "W falls faster than -1/(8 q^2) at the wall (c = {c}); no self-adjoint limit"
        )));
    }
    Ok(rad.sqrt())
}

/// Discretizes the transformed equation of a case on a grid.
pub fn discretize(case: &CaseSpec, qn: &QuantumNumbers, grid: &Grid) -> Result<TridiagonalOperator> {
    discretize_with(grid, |q| effective_potential_q(case, qn, q))
}
