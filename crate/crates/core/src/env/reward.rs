//! Mean-reward functions with known Lipschitz constants, plus the
//! brute-force oracles used by instrumentation and tests. The learner
//! never touches the oracles; it only sees realized rewards for slots it
//! paid for.

use rand::Rng;

use crate::partition::{GridPartition, Point};

use super::table::GridTable;
use super::EnvError;

/// Ground-truth expected reward `mu(x, k) in [0,1]`, Lipschitz in the
/// context with constant `lipschitz_x` and in the arm with `lipschitz_a`
/// under the L-infinity metric.
#[derive(Debug, Clone)]
pub enum RewardModel {
    /// `mu(x, k) = max(0, 1 - slope * ||k - peak(x)||_inf)` where the peak
    /// tracks the context (`peak(x) = x` for matching dimensions, else the
    /// shared coordinates are copied and extra arm axes sit at 0.5). Both
    /// Lipschitz constants equal `slope`, and the optimum is exactly 1 at
    /// an attainable arm, which makes regret accounting exact.
    Pyramid {
        slope: f64,
        d_x: usize,
        d_a: usize,
    },
    /// Means multilinearly interpolated from a loaded grid table.
    Table(GridTable),
}

impl RewardModel {
    pub fn pyramid(slope: f64, d_x: usize, d_a: usize) -> Result<Self, EnvError> {
        if !(slope > 0.0) {
            return Err(EnvError::InvalidParameter(format!(
                "pyramid slope {slope} must be positive"
            )));
        }
        if d_x == 0 || d_a == 0 {
            return Err(EnvError::InvalidParameter(
                "pyramid dimensions must be at least 1".into(),
            ));
        }
        Ok(Self::Pyramid { slope, d_x, d_a })
    }

    pub fn d_x(&self) -> usize {
        match self {
            Self::Pyramid { d_x, .. } => *d_x,
            Self::Table(t) => t.d_x(),
        }
    }

    pub fn d_a(&self) -> usize {
        match self {
            Self::Pyramid { d_a, .. } => *d_a,
            Self::Table(t) => t.d_a(),
        }
    }

    pub fn lipschitz_x(&self) -> f64 {
        match self {
            Self::Pyramid { slope, .. } => *slope,
            Self::Table(t) => t.lipschitz_x(),
        }
    }

    pub fn lipschitz_a(&self) -> f64 {
        match self {
            Self::Pyramid { slope, .. } => *slope,
            Self::Table(t) => t.lipschitz_a(),
        }
    }

    fn check_dims(&self, x: &Point, k: &Point) -> Result<(), EnvError> {
        if x.dim() != self.d_x() {
            return Err(EnvError::DimensionMismatch {
                expected: self.d_x(),
                got: x.dim(),
            });
        }
        if k.dim() != self.d_a() {
            return Err(EnvError::DimensionMismatch {
                expected: self.d_a(),
                got: k.dim(),
            });
        }
        Ok(())
    }

    /// Arm coordinates of the pyramid peak for context `x`.
    fn peak_coords(x: &[f64], d_a: usize) -> Vec<f64> {
        (0..d_a)
            .map(|j| if j < x.len() { x[j] } else { 0.5 })
            .collect()
    }

    pub fn mean_reward(&self, x: &Point, k: &Point) -> Result<f64, EnvError> {
        self.check_dims(x, k)?;
        Ok(self.mean_unchecked(x.coords(), k.coords()))
    }

    fn mean_unchecked(&self, x: &[f64], k: &[f64]) -> f64 {
        match self {
            Self::Pyramid { slope, d_a, .. } => {
                let peak = Self::peak_coords(x, *d_a);
                let dist = k
                    .iter()
                    .zip(&peak)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                (1.0 - slope * dist).max(0.0)
            }
            Self::Table(t) => t.interpolate(x, k),
        }
    }

    /// One Bernoulli draw with success probability `mu(x, k)`.
    pub fn sample_reward<R: Rng>(
        &self,
        x: &Point,
        k: &Point,
        rng: &mut R,
    ) -> Result<f64, EnvError> {
        let mu = self.mean_reward(x, k)?;
        Ok(if rng.gen::<f64>() < mu { 1.0 } else { 0.0 })
    }

    /// The arm achieving the optimum, when known in closed form.
    pub fn best_arm(&self, x: &Point) -> Option<Point> {
        match self {
            Self::Pyramid { d_a, .. } => {
                Point::new(Self::peak_coords(x.coords(), *d_a)).ok()
            }
            Self::Table(_) => None,
        }
    }

    /// `sup_k mu(x, k)`: exact for the pyramid, brute force otherwise
    /// (`best_mean_grid` with the given resolution).
    pub fn best_mean(&self, x: &Point, grid_resolution: usize) -> Result<f64, EnvError> {
        match self {
            Self::Pyramid { .. } => {
                if x.dim() != self.d_x() {
                    return Err(EnvError::DimensionMismatch {
                        expected: self.d_x(),
                        got: x.dim(),
                    });
                }
                Ok(1.0)
            }
            Self::Table(_) => self.best_mean_grid(x, grid_resolution),
        }
    }

    /// Brute-force optimum over an arm grid of `resolution` cell centers
    /// per axis. Discretization error is at most
    /// `lipschitz_a / (2 * resolution)`.
    pub fn best_mean_grid(&self, x: &Point, resolution: usize) -> Result<f64, EnvError> {
        if x.dim() != self.d_x() {
            return Err(EnvError::DimensionMismatch {
                expected: self.d_x(),
                got: x.dim(),
            });
        }
        if resolution == 0 {
            return Err(EnvError::InvalidParameter(
                "oracle grid resolution must be at least 1".into(),
            ));
        }
        let d_a = self.d_a();
        let mut best = f64::NEG_INFINITY;
        let mut arm = vec![0.0; d_a];
        let mut idx = vec![0usize; d_a];
        loop {
            for (slot, &i) in arm.iter_mut().zip(&idx) {
                *slot = (i as f64 + 0.5) / resolution as f64;
            }
            best = best.max(self.mean_unchecked(x.coords(), &arm));
            if !advance(&mut idx, resolution) {
                break;
            }
        }
        Ok(best)
    }

    /// Discretization slack of `best_mean` for this model.
    pub fn best_mean_slack(&self, grid_resolution: usize) -> f64 {
        match self {
            Self::Pyramid { .. } => 0.0,
            Self::Table(_) => self.lipschitz_a() / (2.0 * grid_resolution as f64),
        }
    }

    /// Max mean reward over a context cell times an arm cell, brute forced
    /// on an inclusive sub-grid of `subgrid` points per axis per cell.
    /// Instrumentation-only; the learner never calls this.
    pub fn cluster_max_reward(
        &self,
        x_lo: &[f64],
        x_hi: &[f64],
        k_lo: &[f64],
        k_hi: &[f64],
        subgrid: usize,
    ) -> Result<f64, EnvError> {
        if x_lo.len() != self.d_x() || x_hi.len() != self.d_x() {
            return Err(EnvError::DimensionMismatch {
                expected: self.d_x(),
                got: x_lo.len(),
            });
        }
        if k_lo.len() != self.d_a() || k_hi.len() != self.d_a() {
            return Err(EnvError::DimensionMismatch {
                expected: self.d_a(),
                got: k_lo.len(),
            });
        }
        let n = subgrid.max(2);
        let xs = axis_grids(x_lo, x_hi, n);
        let ks = axis_grids(k_lo, k_hi, n);
        let mut best = f64::NEG_INFINITY;
        let mut x = vec![0.0; x_lo.len()];
        let mut xi = vec![0usize; x_lo.len()];
        loop {
            for (slot, (&i, axis)) in x.iter_mut().zip(xi.iter().zip(&xs)) {
                *slot = axis[i];
            }
            let mut k = vec![0.0; k_lo.len()];
            let mut ki = vec![0usize; k_lo.len()];
            loop {
                for (slot, (&i, axis)) in k.iter_mut().zip(ki.iter().zip(&ks)) {
                    *slot = axis[i];
                }
                best = best.max(self.mean_unchecked(&x, &k));
                if !advance(&mut ki, n) {
                    break;
                }
            }
            if !advance(&mut xi, n) {
                break;
            }
        }
        Ok(best)
    }

    /// Worst-case underestimate of `cluster_max_reward` from the sub-grid
    /// spacing of cells with the given sides.
    pub fn cluster_max_slack(&self, x_side: f64, k_side: f64, subgrid: usize) -> f64 {
        let n = subgrid.max(2) as f64;
        0.5 * (self.lipschitz_x() * x_side + self.lipschitz_a() * k_side) / (n - 1.0)
    }

    /// Suboptimality gaps of every arm cell against the best arm cell for
    /// one context cell: `gap[n] = max_n' mu(m,n') - mu(m,n)`.
    pub fn cluster_gaps(
        &self,
        context_partition: &GridPartition,
        context_cell: crate::partition::ClusterId,
        arm_partition: &GridPartition,
        subgrid: usize,
    ) -> Result<Vec<f64>, EnvError> {
        let (x_lo, x_hi) = context_partition
            .cell_bounds(context_cell)
            .map_err(|e| EnvError::InvalidParameter(e.to_string()))?;
        let mut rewards = Vec::with_capacity(arm_partition.cell_count());
        for id in arm_partition.ids() {
            let (k_lo, k_hi) = arm_partition
                .cell_bounds(id)
                .map_err(|e| EnvError::InvalidParameter(e.to_string()))?;
            rewards.push(self.cluster_max_reward(&x_lo, &x_hi, &k_lo, &k_hi, subgrid)?);
        }
        let best = rewards.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(rewards.iter().map(|&r| best - r).collect())
    }
}

/// Inclusive linspace per axis so cell boundaries are sampled exactly.
fn axis_grids(lo: &[f64], hi: &[f64], n: usize) -> Vec<Vec<f64>> {
    lo.iter()
        .zip(hi)
        .map(|(&l, &h)| {
            (0..n)
                .map(|i| l + (h - l) * i as f64 / (n - 1) as f64)
                .collect()
        })
        .collect()
}

/// Odometer increment over a mixed-radix index; false when wrapped.
fn advance(idx: &mut [usize], radix: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < radix {
            return true;
        }
        *slot = 0;
    }
    false
}
