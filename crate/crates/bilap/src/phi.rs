//! Discrete frame transform over dyadic cubes (d = 2): analysis into
//! per-cube coefficients with the squares-normalized annulus profile,
//! exact synthesis back, the coefficient square function, and the
//! mixed-norm embedding ratio.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{BilapError, Result};
use crate::fft;
use crate::field::SpectralField;
use crate::grid::TorusGrid;
use crate::lp::{psi_hat_normalized, LPFamily};
use crate::norms::{hardy_mixed_norm, mixed_norm};

/// A dyadic cube: scale j (side 2^{-j}) and the integer corner index
/// on the scale-j corner lattice (L 2^j cubes per axis).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicCube {
    pub j: i32,
    pub corner: [usize; 2],
}

/// Coefficients of one dyadic scale: cubes_per_axis^2 complex values in
/// row-major corner order.
#[derive(Debug, Clone)]
pub struct ScaleCoefficients {
    pub j: i32,
    pub cubes_per_axis: usize,
    pub coeffs: Vec<Complex64>,
}

impl ScaleCoefficients {
    pub fn get(&self, corner: [usize; 2]) -> Complex64 {
        self.coeffs[corner[0] * self.cubes_per_axis + corner[1]]
    }
}

/// The full analysis output: one coefficient per dyadic cube across the
/// covered scale range.
#[derive(Debug, Clone)]
pub struct CoefficientTree {
    grid: TorusGrid,
    scales: Vec<ScaleCoefficients>,
}

impl CoefficientTree {
    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn scales(&self) -> &[ScaleCoefficients] {
        &self.scales
    }

    pub fn empty(grid: TorusGrid) -> Self {
        CoefficientTree { grid, scales: Vec::new() }
    }

    /// Tree holding a single cube coefficient.
    pub fn single(grid: TorusGrid, cube: DyadicCube, value: Complex64) -> Result<Self> {
        let m = cubes_per_axis(&grid, cube.j)?;
        assert!(cube.corner[0] < m && cube.corner[1] < m, "corner outside the scale lattice");
        let mut coeffs = vec![Complex64::default(); m * m];
        coeffs[cube.corner[0] * m + cube.corner[1]] = value;
        Ok(CoefficientTree {
            grid,
            scales: vec![ScaleCoefficients { j: cube.j, cubes_per_axis: m, coeffs }],
        })
    }

    /// Total squared coefficient mass (the frame identity compares this
    /// with the squared L^2 norm).
    pub fn energy(&self) -> f64 {
        self.scales
            .iter()
            .map(|s| s.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sum()
    }

    pub fn scale_by(&self, c: Complex64) -> CoefficientTree {
        CoefficientTree {
            grid: self.grid,
            scales: self
                .scales
                .iter()
                .map(|s| ScaleCoefficients {
                    j: s.j,
                    cubes_per_axis: s.cubes_per_axis,
                    coeffs: s.coeffs.iter().map(|v| v * c).collect(),
                })
                .collect(),
        }
    }

    /// CSV rows (j, corner_t, corner_x, re, im).
    pub fn export_csv(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| BilapError::io(path.display().to_string(), e))?;
        let mut w = BufWriter::new(file);
        let io = |e| BilapError::io(path.display().to_string(), e);
        writeln!(w, "j,corner_t,corner_x,re,im").map_err(io)?;
        for s in &self.scales {
            for (i, c) in s.coeffs.iter().enumerate() {
                let (a, b) = (i / s.cubes_per_axis, i % s.cubes_per_axis);
                writeln!(w, "{},{a},{b},{:.12e},{:.12e}", s.j, c.re, c.im).map_err(io)?;
            }
        }
        w.flush().map_err(io)
    }
}

/// Number of cubes per axis at scale j; errors unless it is a whole
/// power of two that the grid can sample exactly.
fn cubes_per_axis(grid: &TorusGrid, j: i32) -> Result<usize> {
    let m = grid.period() * 2.0f64.powi(j);
    if (m - m.round()).abs() > 1e-9 || m < 1.0 {
        return Err(BilapError::DomainError(format!(
            "scale {j} puts {m} cubes per axis on period {}; need a whole number (use a power-of-two period)",
            grid.period()
        )));
    }
    let m = m.round() as usize;
    if grid.points_per_axis() % m != 0 {
        return Err(BilapError::DomainError(format!(
            "scale {j}: {m} cubes per axis do not divide N = {}",
            grid.points_per_axis()
        )));
    }
    Ok(m)
}

/// Scale range for a grid: from the octave of the lowest nonzero
/// lattice frequency up to the sampling cap log2(N/L).
fn scale_range(grid: &TorusGrid) -> (i32, i32) {
    let j_min = grid.min_freq().log2().floor() as i32;
    let j_cap = (grid.points_per_axis() as f64 / grid.period()).log2().floor() as i32;
    (j_min, j_cap)
}

/// Highest frequency magnitude whose annulus coverage is complete
/// within the sampling-capped scale range.
pub fn covered_band(grid: &TorusGrid) -> f64 {
    let (_, j_cap) = scale_range(grid);
    2.0f64.powi(j_cap)
}

/// Project a field onto the band the frame covers (|xi| <= covered_band)
/// and remove the mean — the canonical preprocessing before analysis.
pub fn frame_band_limit(f: &SpectralField) -> SpectralField {
    let grid = *f.grid();
    let cap = covered_band(&grid);
    f.map_freq(|i, c| {
        let fr = grid.frequency(i);
        if fr.is_zero() || fr.xi_norm() > cap {
            Complex64::default()
        } else {
            c
        }
    })
}

fn check_coverage(f: &SpectralField) -> Result<()> {
    let grid = *f.grid();
    let cap = covered_band(&grid);
    let mut total = 0.0;
    let mut outside = 0.0;
    for (i, c) in f.freq_values().iter().enumerate() {
        let e = c.norm_sqr();
        total += e;
        if grid.frequency(i).xi_norm() > cap {
            outside += e;
        }
    }
    if total > 0.0 && outside / total > 1e-10 {
        return Err(BilapError::ScaleRangeError { fraction: outside / total, max_freq: cap });
    }
    Ok(())
}

/// Analysis: coefficient of cube Q at scale j is `|Q|^{1/2}` times the
/// normalized-profile piece of f sampled at the cube's corner.  The
/// corner sampling is exact (no interpolation) because cube corners at
/// every covered scale are grid points, and loses nothing because each
/// piece's spectrum fits the corner lattice's aliasing-free band.
pub fn analyze(f: &SpectralField, fam: &LPFamily) -> Result<CoefficientTree> {
    let grid = *f.grid();
    if grid.dim() != 2 {
        return Err(BilapError::DimensionError { required: 2, actual: grid.dim() });
    }
    assert_eq!(fam.grid(), &grid);
    check_coverage(f)?;
    let f = f.mean_project();
    let (j_min, j_cap) = scale_range(&grid);
    let n = grid.points_per_axis();
    let mut scales = Vec::new();
    for j in j_min..=j_cap {
        let m = cubes_per_axis(&grid, j)?;
        let stride = n / m;
        let sc = 2.0f64.powi(-j);
        let piece = f.map_freq(|i, c| c * psi_hat_normalized(sc * grid.frequency(i).xi_norm()));
        let side = 2.0f64.powi(-j); // |Q|^{1/2} for d = 2
        let vals = piece.space_values();
        let mut coeffs = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                coeffs.push(vals[(a * stride) * n + b * stride] * side);
            }
        }
        scales.push(ScaleCoefficients { j, cubes_per_axis: m, coeffs });
    }
    Ok(CoefficientTree { grid, scales })
}

/// Synthesis: the adjoint sum over cubes.  Per scale, the coefficient
/// array's DFT recovers the piece's spectrum on the corner lattice
/// exactly, so synthesize(analyze(f)) = f on mean-projected fields
/// inside the covered band.
pub fn synthesize(tree: &CoefficientTree) -> SpectralField {
    let grid = *tree.grid();
    let n = grid.points_per_axis();
    let mut out = vec![Complex64::default(); grid.len()];
    for s in &tree.scales {
        let m = s.cubes_per_axis;
        let mut data = s.coeffs.clone();
        fft::raw_forward_2d(&mut data, m, m);
        let gain = 2.0f64.powi(s.j) / (m * m) as f64;
        let sc = 2.0f64.powi(-s.j);
        for (i, slot) in out.iter_mut().enumerate() {
            let fr = grid.frequency(i);
            let w = psi_hat_normalized(sc * fr.xi_norm());
            if w == 0.0 {
                continue;
            }
            let kt = fr.k[0].rem_euclid(m as i64) as usize;
            let kx = fr.k[1].rem_euclid(m as i64) as usize;
            *slot += data[kt * m + kx] * (w * gain);
        }
        let _ = n;
    }
    SpectralField::from_freq(grid, out)
}

/// Pointwise coefficient square function:
/// `( sum_Q (|Q|^{-1/2} |c_Q|)^2 chi_Q )^{1/2}`.
pub fn discrete_square_function(tree: &CoefficientTree) -> SpectralField {
    let grid = *tree.grid();
    let n = grid.points_per_axis();
    let mut acc = vec![0.0f64; grid.len()];
    for s in &tree.scales {
        let m = s.cubes_per_axis;
        let stride = n / m;
        let inv_side = 2.0f64.powi(s.j); // |Q|^{-1/2}
        for (i, a) in acc.iter_mut().enumerate() {
            let (t, x) = (i / n, i % n);
            let c = s.coeffs[(t / stride) * m + x / stride];
            let v = inv_side * c.norm();
            *a += v * v;
        }
    }
    SpectralField::from_space(
        grid,
        acc.into_iter().map(|a| Complex64::new(a.sqrt(), 0.0)).collect(),
    )
}

/// Ratio of the plain mixed norm to the square-function (Hardy) mixed
/// norm — the embedding direction asserts this stays bounded.
pub fn embedding_ratio(f: &SpectralField, p: f64, q: f64, fam: &LPFamily) -> Result<f64> {
    if f.grid().dim() != 2 {
        return Err(BilapError::DimensionError { required: 2, actual: f.grid().dim() });
    }
    let hardy = hardy_mixed_norm(f, p, q, fam)?;
    if hardy < 1e-14 {
        return Err(BilapError::DegenerateInput(
            "square-function norm below 1e-14; embedding ratio undefined".into(),
        ));
    }
    Ok(mixed_norm(f, p, q)? / hardy)
}
