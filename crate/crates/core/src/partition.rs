//! Uniform grid partitions of the unit hypercube.
//!
//! Each epoch rebuilds the context and arm partitions with a target cell
//! radius that shrinks as the epoch length grows. Cells are half-open
//! boxes `[j/c, (j+1)/c)` per axis (the last cell closed at 1.0), indexed
//! row-major by a flat id. Distances are L-infinity, so the radius of a
//! cell is half its side.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PartitionError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    InvalidAlpha(f64),
    #[error("epoch slot count must be at least 1")]
    ZeroSlots,
    #[error("dimension mismatch: partition has {expected}, point has {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate {0} outside [0,1]")]
    CoordOutOfRange(f64),
    #[error("cluster id {id} out of range for {count} cells")]
    InvalidClusterId { id: usize, count: usize },
    #[error("cell count overflows usize ({cells_per_dim}^{dim})")]
    TooManyCells { cells_per_dim: usize, dim: usize },
}

/// A location in `[0,1]^d`, used for both contexts and arms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, PartitionError> {
        if coords.is_empty() {
            return Err(PartitionError::ZeroDimension);
        }
        for &c in &coords {
            if !(0.0..=1.0).contains(&c) {
                return Err(PartitionError::CoordOutOfRange(c));
            }
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// L-infinity distance. Panics on dimension mismatch in debug builds.
    pub fn linf_distance(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Flat index of a grid cell, row-major over the per-axis multi-index.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct ClusterId(pub usize);

impl ClusterId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Uniform grid over `[0,1]^dim` whose cell radius (half side, under
/// L-infinity) is at most `target_radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPartition {
    dim: usize,
    cells_per_dim: usize,
    target_radius: f64,
    epoch_slots: u64,
}

impl GridPartition {
    /// Builds the partition for an epoch of `epoch_slots` slots with
    /// target radius `epoch_slots^-alpha`. The cell count per axis is the
    /// smallest integer `c` with `1/(2c) <= target_radius`.
    pub fn build(epoch_slots: u64, dim: usize, alpha: f64) -> Result<Self, PartitionError> {
        if dim == 0 {
            return Err(PartitionError::ZeroDimension);
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(PartitionError::InvalidAlpha(alpha));
        }
        if epoch_slots == 0 {
            return Err(PartitionError::ZeroSlots);
        }
        let target_radius = (epoch_slots as f64).powf(-alpha);
        let mut cells = (1.0 / (2.0 * target_radius)).ceil().max(1.0) as usize;
        // Float fixup: pick the minimal c with 1/(2c) <= target_radius as
        // evaluated in f64, so the radius invariant holds exactly.
        while cells > 1 && 1.0 / (2.0 * (cells - 1) as f64) <= target_radius {
            cells -= 1;
        }
        while 1.0 / (2.0 * cells as f64) > target_radius {
            cells += 1;
        }
        let partition = Self {
            dim,
            cells_per_dim: cells,
            target_radius,
            epoch_slots,
        };
        partition.checked_cell_count()?;
        Ok(partition)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells_per_dim(&self) -> usize {
        self.cells_per_dim
    }

    pub fn target_radius(&self) -> f64 {
        self.target_radius
    }

    pub fn epoch_slots(&self) -> u64 {
        self.epoch_slots
    }

    pub fn cell_side(&self) -> f64 {
        1.0 / self.cells_per_dim as f64
    }

    /// Half the maximum L-infinity distance between two points of a cell.
    pub fn cell_radius(&self) -> f64 {
        0.5 * self.cell_side()
    }

    fn checked_cell_count(&self) -> Result<usize, PartitionError> {
        let mut count: usize = 1;
        for _ in 0..self.dim {
            count = count
                .checked_mul(self.cells_per_dim)
                .ok_or(PartitionError::TooManyCells {
                    cells_per_dim: self.cells_per_dim,
                    dim: self.dim,
                })?;
        }
        Ok(count)
    }

    pub fn cell_count(&self) -> usize {
        // Overflow ruled out at construction.
        self.cells_per_dim.pow(self.dim as u32)
    }

    pub fn ids(&self) -> impl Iterator<Item = ClusterId> {
        (0..self.cell_count()).map(ClusterId)
    }

    /// Cell containing `p`. Interior boundaries belong to the higher cell;
    /// 1.0 clamps into the last cell.
    pub fn locate(&self, p: &Point) -> Result<ClusterId, PartitionError> {
        if p.dim() != self.dim {
            return Err(PartitionError::DimensionMismatch {
                expected: self.dim,
                got: p.dim(),
            });
        }
        let mut flat = 0usize;
        for &c in p.coords() {
            if !(0.0..=1.0).contains(&c) {
                return Err(PartitionError::CoordOutOfRange(c));
            }
            let idx = ((c * self.cells_per_dim as f64) as usize).min(self.cells_per_dim - 1);
            flat = flat * self.cells_per_dim + idx;
        }
        Ok(ClusterId(flat))
    }

    fn validate_id(&self, id: ClusterId) -> Result<(), PartitionError> {
        let count = self.cell_count();
        if id.0 >= count {
            return Err(PartitionError::InvalidClusterId { id: id.0, count });
        }
        Ok(())
    }

    pub fn multi_index(&self, id: ClusterId) -> Result<Vec<usize>, PartitionError> {
        self.validate_id(id)?;
        let mut rest = id.0;
        let mut idx = vec![0usize; self.dim];
        for slot in idx.iter_mut().rev() {
            *slot = rest % self.cells_per_dim;
            rest /= self.cells_per_dim;
        }
        Ok(idx)
    }

    /// Geometric center of the cell; `locate(center(id)) == id`.
    pub fn center(&self, id: ClusterId) -> Result<Point, PartitionError> {
        let idx = self.multi_index(id)?;
        let coords = idx
            .iter()
            .map(|&j| (j as f64 + 0.5) / self.cells_per_dim as f64)
            .collect();
        Point::new(coords)
    }

    /// Per-axis `[lo, hi]` bounds of the cell (closed box).
    pub fn cell_bounds(&self, id: ClusterId) -> Result<(Vec<f64>, Vec<f64>), PartitionError> {
        let idx = self.multi_index(id)?;
        let c = self.cells_per_dim as f64;
        let lo = idx.iter().map(|&j| j as f64 / c).collect();
        let hi = idx.iter().map(|&j| (j as f64 + 1.0) / c).collect();
        Ok((lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degenerate_epoch_is_single_cell() {
        let p = GridPartition::build(1, 2, 0.25).unwrap();
        assert_eq!(p.cells_per_dim(), 1);
        assert_eq!(p.cell_count(), 1);
        assert_eq!(p.target_radius(), 1.0);
        assert!(p.cell_radius() <= 1.0);
    }

    #[test]
    fn sixteen_slots_quarter_alpha_still_one_cell() {
        // rho = 16^-0.25 = 0.5, so ceil(1/(2*0.5)) = 1.
        let p = GridPartition::build(16, 1, 0.25).unwrap();
        assert_eq!(p.cells_per_dim(), 1);
    }

    #[test]
    fn two_by_two_partition() {
        let p = GridPartition::build(256, 2, 0.25).unwrap();
        assert_eq!(p.target_radius(), 0.25);
        assert_eq!(p.cells_per_dim(), 2);
        assert_eq!(p.cell_count(), 4);
        assert_eq!(p.cell_radius(), 0.25);
    }

    #[test]
    fn build_rejects_bad_arguments() {
        assert_eq!(
            GridPartition::build(16, 0, 0.25).unwrap_err(),
            PartitionError::ZeroDimension
        );
        assert!(matches!(
            GridPartition::build(16, 1, 0.0).unwrap_err(),
            PartitionError::InvalidAlpha(_)
        ));
        assert!(matches!(
            GridPartition::build(16, 1, 1.0).unwrap_err(),
            PartitionError::InvalidAlpha(_)
        ));
        assert_eq!(
            GridPartition::build(0, 1, 0.25).unwrap_err(),
            PartitionError::ZeroSlots
        );
    }

    #[test]
    fn locate_interior_and_boundaries() {
        let p = GridPartition::build(256, 2, 0.25).unwrap();
        let id = p.locate(&Point::new(vec![0.3, 0.7]).unwrap()).unwrap();
        assert_eq!(p.multi_index(id).unwrap(), vec![0, 1]);

        let p1 = GridPartition::build(256, 1, 0.25).unwrap();
        // 1.0 clamps into the last cell.
        assert_eq!(p1.locate(&Point::new(vec![1.0]).unwrap()).unwrap().0, 1);
        // Interior boundary belongs to the higher cell.
        assert_eq!(p1.locate(&Point::new(vec![0.5]).unwrap()).unwrap().0, 1);

        let single = GridPartition::build(1, 1, 0.25).unwrap();
        assert_eq!(single.locate(&Point::new(vec![0.99]).unwrap()).unwrap().0, 0);
    }

    #[test]
    fn locate_rejects_mismatch() {
        let p = GridPartition::build(256, 2, 0.25).unwrap();
        let q = Point::new(vec![0.5]).unwrap();
        assert!(matches!(
            p.locate(&q).unwrap_err(),
            PartitionError::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn centers_match_hand_values() {
        let p = GridPartition::build(256, 1, 0.25).unwrap();
        assert_eq!(p.center(ClusterId(0)).unwrap().coords(), &[0.25]);

        let single = GridPartition::build(1, 2, 0.25).unwrap();
        assert_eq!(single.center(ClusterId(0)).unwrap().coords(), &[0.5, 0.5]);

        // 4 cells per dim: cell 3 centered at (3+0.5)/4.
        let p4 = GridPartition {
            dim: 1,
            cells_per_dim: 4,
            target_radius: 0.125,
            epoch_slots: 4096,
        };
        assert_eq!(p4.center(ClusterId(3)).unwrap().coords(), &[0.875]);
    }

    #[test]
    fn center_rejects_invalid_id() {
        let p = GridPartition::build(256, 2, 0.25).unwrap();
        assert!(matches!(
            p.center(ClusterId(4)).unwrap_err(),
            PartitionError::InvalidClusterId { .. }
        ));
    }

    #[test]
    fn radius_and_count_laws_over_epochs() {
        for dim in 1..=3usize {
            for epoch in 0..=20u32 {
                let slots = 1u64 << epoch;
                let alpha = 0.25;
                let p = GridPartition::build(slots, dim, alpha).unwrap();
                let rho = (slots as f64).powf(-alpha);
                assert!(
                    p.cell_radius() <= rho,
                    "radius law broken at epoch {epoch} dim {dim}"
                );
                if rho <= 0.5 {
                    assert!(
                        (p.cell_count() as f64) <= rho.powi(-(dim as i32)) * (1.0 + 1e-9),
                        "count law broken at epoch {epoch} dim {dim}"
                    );
                }
            }
        }
    }

    #[test]
    fn round_trip_every_id_small_sizes() {
        for dim in 1..=3usize {
            for slots in [1u64, 16, 256, 4096, 65536] {
                let p = GridPartition::build(slots, dim, 0.25).unwrap();
                for id in p.ids() {
                    let c = p.center(id).unwrap();
                    assert_eq!(p.locate(&c).unwrap(), id);
                    let (lo, hi) = p.cell_bounds(id).unwrap();
                    for (l, h) in lo.iter().zip(&hi) {
                        assert!((h - l - p.cell_side()).abs() < 1e-15);
                    }
                }
            }
        }
    }

    proptest! {
        // Covering: every point lands in exactly one valid cell and lies
        // within half a side of that cell's center.
        #[test]
        fn covering_property(
            epoch in 0u32..18,
            dim in 1usize..4,
            coords in proptest::collection::vec(0.0f64..=1.0, 3),
        ) {
            let p = GridPartition::build(1u64 << epoch, dim, 0.25).unwrap();
            let point = Point::new(coords[..dim].to_vec()).unwrap();
            let id = p.locate(&point).unwrap();
            prop_assert!(id.0 < p.cell_count());
            let center = p.center(id).unwrap();
            prop_assert!(point.linf_distance(&center) <= p.cell_radius() + 1e-12);
        }
    }
}
