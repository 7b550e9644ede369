//! Thin wrappers over rustfft for the 1-d and 2-d transforms used by
//! [`crate::field::SpectralField`].
//!
//! Convention: the forward transform divides by `N^d`, so a pure mode
//! `e^{i xi . x}` has coefficient exactly 1 at its lattice position.
//! The inverse is the plain unnormalized synthesis sum.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::grid::TorusGrid;

fn fft_axis0_inplace(data: &mut [Complex64], rows: usize, cols: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse { planner.plan_fft_inverse(rows) } else { planner.plan_fft_forward(rows) };
    let mut col = vec![Complex64::default(); rows];
    for c in 0..cols {
        for r in 0..rows {
            col[r] = data[r * cols + c];
        }
        fft.process(&mut col);
        for r in 0..rows {
            data[r * cols + c] = col[r];
        }
    }
}

fn fft_axis1_inplace(data: &mut [Complex64], rows: usize, cols: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse { planner.plan_fft_inverse(cols) } else { planner.plan_fft_forward(cols) };
    for r in 0..rows {
        fft.process(&mut data[r * cols..(r + 1) * cols]);
    }
}

/// Space samples -> normalized Fourier coefficients.
pub fn forward(grid: &TorusGrid, space: &[Complex64]) -> Vec<Complex64> {
    let n = grid.points_per_axis();
    let mut data = space.to_vec();
    match grid.dim() {
        1 => fft_axis1_inplace(&mut data, 1, n, false),
        _ => {
            fft_axis1_inplace(&mut data, n, n, false);
            fft_axis0_inplace(&mut data, n, n, false);
        }
    }
    let scale = 1.0 / grid.len() as f64;
    for v in &mut data {
        *v *= scale;
    }
    data
}

/// Normalized Fourier coefficients -> space samples.
pub fn inverse(grid: &TorusGrid, freq: &[Complex64]) -> Vec<Complex64> {
    let n = grid.points_per_axis();
    let mut data = freq.to_vec();
    match grid.dim() {
        1 => fft_axis1_inplace(&mut data, 1, n, true),
        _ => {
            fft_axis1_inplace(&mut data, n, n, true);
            fft_axis0_inplace(&mut data, n, n, true);
        }
    }
    data
}

/// Unnormalized forward DFT of a square array (used for frame synthesis
/// and symbol tabulation, where the caller owns the scaling).
pub fn raw_forward_2d(data: &mut [Complex64], rows: usize, cols: usize) {
    fft_axis1_inplace(data, rows, cols, false);
    fft_axis0_inplace(data, rows, cols, false);
}

/// Unnormalized forward DFT of a 1-d array.
pub fn raw_forward_1d(data: &mut [Complex64]) {
    let len = data.len();
    fft_axis1_inplace(data, 1, len, false);
}
