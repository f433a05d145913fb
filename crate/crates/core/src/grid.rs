//! Discretization of the momentum torus.
//!
//! Momenta are measured in torus units, k ∈ [0,1)^d, sampled on the regular
//! grid {j/N}. N is required to be even so that k ↦ -k maps grid points to
//! grid points and every involution-fixed momentum (all coordinates in
//! {0, 1/2}) is sampled.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Regular N^d grid on the torus [0,1)^d, iterated in lexicographic order
/// of the integer indices (j_1, ..., j_d) with the first axis slowest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentumGrid {
    dim: usize,
    points_per_axis: usize,
}

impl MomentumGrid {
    pub fn new(dim: usize, points_per_axis: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("grid dimension must be positive".into()));
        }
        if points_per_axis == 0 || !points_per_axis.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "points_per_axis must be a positive even integer, got {points_per_axis}"
            )));
        }
        Ok(Self { dim, points_per_axis })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    /// Total number of grid points N^d.
    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Integer indices (j_1, ..., j_d) of a flat index.
    pub fn indices(&self, flat: usize) -> Vec<usize> {
        let n = self.points_per_axis;
        let mut rem = flat;
        let mut out = vec![0; self.dim];
        for axis in (0..self.dim).rev() {
            out[axis] = rem % n;
            rem /= n;
        }
        out
    }

    /// Flat index of integer indices; inverse of [`indices`](Self::indices).
    pub fn flat(&self, indices: &[usize]) -> usize {
        debug_assert_eq!(indices.len(), self.dim);
        let n = self.points_per_axis;
        indices.iter().fold(0, |acc, &j| {
            debug_assert!(j < n);
            acc * n + j
        })
    }

    /// Torus coordinates (j_1/N, ..., j_d/N) of a flat index.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        let n = self.points_per_axis as f64;
        self.indices(flat).iter().map(|&j| j as f64 / n).collect()
    }

    /// Flat index of -k (mod 1); a bijection because N is even.
    pub fn negate(&self, flat: usize) -> usize {
        let n = self.points_per_axis;
        let neg: Vec<usize> = self.indices(flat).iter().map(|&j| (n - j) % n).collect();
        self.flat(&neg)
    }

    /// Flat indices of the 2^d involution-fixed momenta (all coordinates in
    /// {0, 1/2}).
    pub fn fixed_momenta(&self) -> Vec<usize> {
        let half = self.points_per_axis / 2;
        let mut out = Vec::with_capacity(1 << self.dim);
        for mask in 0..(1usize << self.dim) {
            let indices: Vec<usize> = (0..self.dim)
                .map(|axis| if mask >> axis & 1 == 1 { half } else { 0 })
                .collect();
            out.push(self.flat(&indices));
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_or_zero_n_and_zero_dim() {
        assert!(MomentumGrid::new(2, 7).is_err());
        assert!(MomentumGrid::new(2, 0).is_err());
        assert!(MomentumGrid::new(0, 4).is_err());
    }

    #[test]
    fn lexicographic_order_first_axis_slowest() {
        let g = MomentumGrid::new(2, 4).unwrap();
        assert_eq!(g.indices(0), vec![0, 0]);
        assert_eq!(g.indices(1), vec![0, 1]);
        assert_eq!(g.indices(4), vec![1, 0]);
        assert_eq!(g.flat(&[3, 2]), 14);
        for flat in 0..g.len() {
            assert_eq!(g.flat(&g.indices(flat)), flat);
        }
    }

    #[test]
    fn negation_is_an_involution_with_sampled_fixed_points() {
        let g = MomentumGrid::new(3, 6).unwrap();
        for flat in 0..g.len() {
            assert_eq!(g.negate(g.negate(flat)), flat);
        }
        let fixed = g.fixed_momenta();
        assert_eq!(fixed.len(), 8);
        for &f in &fixed {
            assert_eq!(g.negate(f), f);
            for c in g.point(f) {
                assert!(c == 0.0 || c == 0.5);
            }
        }
    }
}
