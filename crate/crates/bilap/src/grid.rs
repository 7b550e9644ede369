use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{BilapError, Result};

/// A uniform grid on the torus `[0, L)^d` with `N` points per axis.
///
/// `d = 1` models the line case; `d = 2` models the time-space plane,
/// with axis 0 playing the role of `t` and axis 1 the role of `x`.
/// The frequency lattice is `{2*pi*k/L : -N/2 <= k_i < N/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusGrid {
    dim: usize,
    points_per_axis: usize,
    period: f64,
}

impl TorusGrid {
    pub fn new(dim: usize, points_per_axis: usize, period: f64) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(BilapError::DomainError(format!("dim must be 1 or 2, got {dim}")));
        }
        if points_per_axis < 8 || !points_per_axis.is_power_of_two() {
            return Err(BilapError::DomainError(format!(
                "points_per_axis must be a power of two >= 8, got {points_per_axis}"
            )));
        }
        if !(period > 0.0) {
            return Err(BilapError::DomainError(format!("period must be positive, got {period}")));
        }
        Ok(TorusGrid { dim, points_per_axis, period })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Total number of grid points, `N^d`.
    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.points_per_axis as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Fundamental frequency `2*pi/L`.
    pub fn base_freq(&self) -> f64 {
        2.0 * PI / self.period
    }

    /// Signed integer wavenumber for a per-axis storage index (FFT order).
    pub fn wavenumber(&self, axis_index: usize) -> i64 {
        let n = self.points_per_axis as i64;
        let i = axis_index as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Per-axis storage index for a signed wavenumber, if representable.
    pub fn axis_index(&self, k: i64) -> Option<usize> {
        let n = self.points_per_axis as i64;
        if k >= -n / 2 && k < n / 2 {
            Some(k.rem_euclid(n) as usize)
        } else {
            None
        }
    }

    /// Decompose a flat row-major index into per-axis indices.
    pub fn axis_indices(&self, flat: usize) -> [usize; 2] {
        match self.dim {
            1 => [flat, 0],
            _ => [flat / self.points_per_axis, flat % self.points_per_axis],
        }
    }

    pub fn flat_index(&self, axes: [usize; 2]) -> usize {
        match self.dim {
            1 => axes[0],
            _ => axes[0] * self.points_per_axis + axes[1],
        }
    }

    /// Frequency index (integer wavenumbers and real frequencies) for a
    /// flat storage position in the spectrum.
    pub fn frequency(&self, flat: usize) -> FrequencyIndex {
        let axes = self.axis_indices(flat);
        let mut k = [0i64; 2];
        let mut xi = [0f64; 2];
        for a in 0..self.dim {
            k[a] = self.wavenumber(axes[a]);
            xi[a] = self.base_freq() * k[a] as f64;
        }
        FrequencyIndex { dim: self.dim, k, xi }
    }

    /// Spatial coordinates of a flat storage position.
    pub fn point(&self, flat: usize) -> [f64; 2] {
        let axes = self.axis_indices(flat);
        let h = self.spacing();
        [axes[0] as f64 * h, axes[1] as f64 * h]
    }

    /// Largest frequency magnitude on the lattice, `(2*pi/L) * (N/2) * sqrt(d)`.
    pub fn max_freq(&self) -> f64 {
        self.base_freq() * (self.points_per_axis as f64 / 2.0) * (self.dim as f64).sqrt()
    }

    /// Smallest nonzero frequency magnitude, `2*pi/L`.
    pub fn min_freq(&self) -> f64 {
        self.base_freq()
    }
}

/// A point on the frequency lattice: integer wavenumbers `k` and the
/// corresponding real frequencies `xi = 2*pi*k/L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyIndex {
    dim: usize,
    pub k: [i64; 2],
    pub xi: [f64; 2],
}

impl FrequencyIndex {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn xi_slice(&self) -> &[f64] {
        &self.xi[..self.dim]
    }

    /// Euclidean norm of the frequency vector.
    pub fn xi_norm(&self) -> f64 {
        match self.dim {
            1 => self.xi[0].abs(),
            _ => (self.xi[0] * self.xi[0] + self.xi[1] * self.xi[1]).sqrt(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.k[0] == 0 && self.k[1] == 0
    }
}

pub(crate) fn vec_norm(xi: &[f64]) -> f64 {
    xi.iter().map(|c| c * c).sum::<f64>().sqrt()
}
