use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{BilapError, Result};
use crate::fft;
use crate::grid::TorusGrid;

/// Relative energy allowed above the `N/3` cutoff before a product or
/// bilinear application is refused as aliasing-prone.
pub const BAND_LIMIT_TOL: f64 = 1e-10;

/// A complex field on a [`TorusGrid`], carried simultaneously in space
/// and frequency form.  Whichever representation a constructor did not
/// receive is computed on first access and cached; fields are immutable
/// afterwards and safe to share across threads.
pub struct SpectralField {
    grid: TorusGrid,
    space: OnceLock<Vec<Complex64>>,
    freq: OnceLock<Vec<Complex64>>,
    mean_projected: bool,
}

impl Clone for SpectralField {
    fn clone(&self) -> Self {
        let f = SpectralField {
            grid: self.grid,
            space: OnceLock::new(),
            freq: OnceLock::new(),
            mean_projected: self.mean_projected,
        };
        if let Some(s) = self.space.get() {
            let _ = f.space.set(s.clone());
        }
        if let Some(c) = self.freq.get() {
            let _ = f.freq.set(c.clone());
        }
        f
    }
}

impl std::fmt::Debug for SpectralField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralField")
            .field("grid", &self.grid)
            .field("mean_projected", &self.mean_projected)
            .field("space_cached", &self.space.get().is_some())
            .field("freq_cached", &self.freq.get().is_some())
            .finish()
    }
}

impl SpectralField {
    pub fn from_space(grid: TorusGrid, values: Vec<Complex64>) -> Self {
        assert_eq!(values.len(), grid.len(), "space buffer must have N^d entries");
        let f = SpectralField { grid, space: OnceLock::new(), freq: OnceLock::new(), mean_projected: false };
        let _ = f.space.set(values);
        f
    }

    pub fn from_freq(grid: TorusGrid, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), grid.len(), "spectrum buffer must have N^d entries");
        let mean_projected = coeffs[0] == Complex64::new(0.0, 0.0);
        let f = SpectralField { grid, space: OnceLock::new(), freq: OnceLock::new(), mean_projected };
        let _ = f.freq.set(coeffs);
        f
    }

    pub fn zero(grid: TorusGrid) -> Self {
        Self::from_freq(grid, vec![Complex64::default(); grid.len()])
    }

    /// Sample a function of the spatial coordinates onto the grid.
    pub fn from_fn(grid: TorusGrid, mut f: impl FnMut(&[f64]) -> Complex64) -> Self {
        let values = (0..grid.len())
            .map(|i| {
                let p = grid.point(i);
                f(&p[..grid.dim()])
            })
            .collect();
        Self::from_space(grid, values)
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn mean_projected(&self) -> bool {
        self.mean_projected
    }

    /// Space samples; the inverse transform runs on first access.
    pub fn space_values(&self) -> &[Complex64] {
        self.space.get_or_init(|| {
            let coeffs = self.freq.get().expect("field must hold at least one representation");
            fft::inverse(&self.grid, coeffs)
        })
    }

    /// Normalized Fourier coefficients; the forward transform runs on
    /// first access.  A pure mode `e^{i xi . x}` yields coefficient 1.
    pub fn freq_values(&self) -> &[Complex64] {
        self.freq.get_or_init(|| {
            let space = self.space.get().expect("field must hold at least one representation");
            fft::forward(&self.grid, space)
        })
    }

    /// New field with the same samples and both representations synced.
    /// Idempotent: transforming twice changes nothing.
    pub fn forward_transform(&self) -> SpectralField {
        let f = self.clone();
        f.freq_values();
        f
    }

    pub fn inverse_transform(&self) -> SpectralField {
        let f = self.clone();
        f.space_values();
        f
    }

    /// New field with the zero-frequency coefficient removed (the
    /// concrete form of the "modulo polynomials" quotient).
    pub fn mean_project(&self) -> SpectralField {
        let mut coeffs = self.freq_values().to_vec();
        coeffs[0] = Complex64::default();
        let mut f = SpectralField::from_freq(self.grid, coeffs);
        f.mean_projected = true;
        f
    }

    /// New field with every coefficient at or above the `N/3` cutoff
    /// (per axis) removed.
    pub fn band_limit(&self) -> SpectralField {
        let cutoff = self.grid.points_per_axis() as i64 / 3;
        let coeffs = self
            .freq_values()
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let f = self.grid.frequency(i);
                let inside = (0..self.grid.dim()).all(|a| f.k[a].abs() < cutoff);
                if inside {
                    c
                } else {
                    Complex64::default()
                }
            })
            .collect();
        let mut out = SpectralField::from_freq(self.grid, coeffs);
        out.mean_projected = self.mean_projected;
        out
    }

    /// Fraction of the spectral energy at or above the `N/3` cutoff.
    pub fn band_excess(&self) -> f64 {
        let cutoff = self.grid.points_per_axis() as i64 / 3;
        let mut total = 0.0;
        let mut above = 0.0;
        for (i, c) in self.freq_values().iter().enumerate() {
            let e = c.norm_sqr();
            total += e;
            let f = self.grid.frequency(i);
            if (0..self.grid.dim()).any(|a| f.k[a].abs() >= cutoff) {
                above += e;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            above / total
        }
    }

    pub(crate) fn check_band_limit(&self) -> Result<()> {
        let fraction = self.band_excess();
        if fraction > BAND_LIMIT_TOL {
            Err(BilapError::BandLimitExceeded { fraction, limit: BAND_LIMIT_TOL })
        } else {
            Ok(())
        }
    }

    /// New field with the spectrum mapped pointwise; `f` receives the
    /// flat index and the current coefficient.
    pub fn map_freq(&self, mut f: impl FnMut(usize, Complex64) -> Complex64) -> SpectralField {
        let coeffs = self.freq_values().iter().enumerate().map(|(i, &c)| f(i, c)).collect();
        SpectralField::from_freq(self.grid, coeffs)
    }

    pub fn scale(&self, c: Complex64) -> SpectralField {
        self.map_freq(|_, v| v * c)
    }

    /// The same band-limited function sampled on a grid with twice the
    /// points per axis (spectrum zero-padded; coefficients unchanged).
    pub fn upsample(&self) -> SpectralField {
        let fine = TorusGrid::new(self.grid.dim(), 2 * self.grid.points_per_axis(), self.grid.period())
            .expect("doubling a valid grid stays valid");
        let mut coeffs = vec![Complex64::default(); fine.len()];
        for (i, &c) in self.freq_values().iter().enumerate() {
            if c == Complex64::default() {
                continue;
            }
            let fr = self.grid.frequency(i);
            let mut axes = [0usize; 2];
            for a in 0..fine.dim() {
                axes[a] = fine.axis_index(fr.k[a]).expect("coarse mode fits in fine grid");
            }
            coeffs[fine.flat_index(axes)] = c;
        }
        SpectralField::from_freq(fine, coeffs)
    }

    pub fn add(&self, other: &SpectralField) -> SpectralField {
        assert_eq!(self.grid, other.grid);
        let o = other.freq_values();
        self.map_freq(|i, v| v + o[i])
    }

    pub fn sub(&self, other: &SpectralField) -> SpectralField {
        assert_eq!(self.grid, other.grid);
        let o = other.freq_values();
        self.map_freq(|i, v| v - o[i])
    }

    /// Pointwise absolute value, as a real field.
    pub fn abs(&self) -> SpectralField {
        let values = self.space_values().iter().map(|v| Complex64::new(v.norm(), 0.0)).collect();
        SpectralField::from_space(self.grid, values)
    }

    /// Max over grid points of `|self - other|`.
    pub fn max_abs_diff(&self, other: &SpectralField) -> f64 {
        assert_eq!(self.grid, other.grid);
        self.space_values()
            .iter()
            .zip(other.space_values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.space_values().iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `L^2` norm, `(sum |f|^2 cell_volume)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.space_values().iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell_volume()).sqrt()
    }

    /// Write the self-describing binary format: magic `BLAP1`, u32 dim,
    /// u32 N, f64 L, then `N^d` little-endian (re, im) f64 pairs in
    /// row-major order.
    pub fn write_binary(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| BilapError::io(path.display().to_string(), e))?;
        let mut w = BufWriter::new(file);
        let io = |e| BilapError::io(path.display().to_string(), e);
        w.write_all(b"BLAP1").map_err(io)?;
        w.write_all(&(self.grid.dim() as u32).to_le_bytes()).map_err(io)?;
        w.write_all(&(self.grid.points_per_axis() as u32).to_le_bytes()).map_err(io)?;
        w.write_all(&self.grid.period().to_le_bytes()).map_err(io)?;
        for v in self.space_values() {
            w.write_all(&v.re.to_le_bytes()).map_err(io)?;
            w.write_all(&v.im.to_le_bytes()).map_err(io)?;
        }
        w.flush().map_err(io)
    }

    pub fn read_binary(path: &Path) -> Result<SpectralField> {
        let file = File::open(path).map_err(|e| BilapError::io(path.display().to_string(), e))?;
        let mut r = BufReader::new(file);
        let pd = path.display().to_string();
        let io = |e| BilapError::io(pd.clone(), e);
        let mut magic = [0u8; 5];
        r.read_exact(&mut magic).map_err(io)?;
        if &magic != b"BLAP1" {
            return Err(BilapError::FormatError { path: pd, message: "bad magic, expected BLAP1".into() });
        }
        let mut u4 = [0u8; 4];
        r.read_exact(&mut u4).map_err(io)?;
        let dim = u32::from_le_bytes(u4) as usize;
        r.read_exact(&mut u4).map_err(io)?;
        let n = u32::from_le_bytes(u4) as usize;
        let mut u8b = [0u8; 8];
        r.read_exact(&mut u8b).map_err(io)?;
        let period = f64::from_le_bytes(u8b);
        let grid = TorusGrid::new(dim, n, period)?;
        let mut values = Vec::with_capacity(grid.len());
        for _ in 0..grid.len() {
            r.read_exact(&mut u8b).map_err(io)?;
            let re = f64::from_le_bytes(u8b);
            r.read_exact(&mut u8b).map_err(io)?;
            let im = f64::from_le_bytes(u8b);
            values.push(Complex64::new(re, im));
        }
        Ok(SpectralField::from_space(grid, values))
    }

    /// CSV export of the space samples: index columns, then re, im.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| BilapError::io(path.display().to_string(), e))?;
        let mut w = BufWriter::new(file);
        let io = |e| BilapError::io(path.display().to_string(), e);
        if self.grid.dim() == 1 {
            writeln!(w, "i,re,im").map_err(io)?;
        } else {
            writeln!(w, "i,j,re,im").map_err(io)?;
        }
        for (flat, v) in self.space_values().iter().enumerate() {
            let axes = self.grid.axis_indices(flat);
            if self.grid.dim() == 1 {
                writeln!(w, "{},{:.17e},{:.17e}", axes[0], v.re, v.im).map_err(io)?;
            } else {
                writeln!(w, "{},{},{:.17e},{:.17e}", axes[0], axes[1], v.re, v.im).map_err(io)?;
            }
        }
        w.flush().map_err(io)
    }
}

/// Pointwise product with zero aliasing error: both spectra are padded
/// to a `2N` grid, multiplied in space there, and truncated back, so
/// the result's spectrum is the exact discrete convolution of the two
/// input spectra restricted to the representable lattice.
pub fn dealiased_product(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    assert_eq!(f.grid(), g.grid(), "operands must share a grid");
    f.check_band_limit()?;
    g.check_band_limit()?;
    let grid = *f.grid();
    let fine = TorusGrid::new(grid.dim(), grid.points_per_axis() * 2, grid.period())?;

    let pad = |field: &SpectralField| -> SpectralField {
        let mut coeffs = vec![Complex64::default(); fine.len()];
        for (i, &c) in field.freq_values().iter().enumerate() {
            let fr = grid.frequency(i);
            let axes = [
                fine.axis_index(fr.k[0]).expect("coarse mode fits fine lattice"),
                fine.axis_index(fr.k[1]).expect("coarse mode fits fine lattice"),
            ];
            coeffs[fine.flat_index(axes)] = c;
        }
        SpectralField::from_freq(fine, coeffs)
    };

    let pf = pad(f);
    let pg = pad(g);
    let prod: Vec<Complex64> =
        pf.space_values().iter().zip(pg.space_values()).map(|(a, b)| a * b).collect();
    let fine_prod = SpectralField::from_space(fine, prod);

    let mut coeffs = vec![Complex64::default(); grid.len()];
    for (i, slot) in coeffs.iter_mut().enumerate() {
        let fr = grid.frequency(i);
        let axes = [
            fine.axis_index(fr.k[0]).expect("coarse mode fits fine lattice"),
            fine.axis_index(fr.k[1]).expect("coarse mode fits fine lattice"),
        ];
        *slot = fine_prod.freq_values()[fine.flat_index(axes)];
    }
    Ok(SpectralField::from_freq(grid, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_field(grid: TorusGrid, seed: u64) -> SpectralField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..grid.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        SpectralField::from_space(grid, values)
    }

    #[test]
    fn upsample_agrees_on_shared_points() {
        for dim in [1usize, 2] {
            let grid = TorusGrid::new(dim, 16, 4.0).unwrap();
            let f = random_field(grid, 5).band_limit();
            let fine = f.upsample();
            assert_eq!(fine.grid().points_per_axis(), 32);
            for i in 0..grid.len() {
                let x = grid.point(i);
                let mut axes = [0usize; 2];
                for a in 0..dim {
                    // coarse point index i maps to 2i on the fine axis
                    axes[a] = 2 * grid.axis_indices(i)[a];
                }
                let v = fine.space_values()[fine.grid().flat_index(axes)];
                let w = f.space_values()[i];
                assert!((v - w).norm() < 1e-12, "dim {dim} point {x:?}");
            }
            assert!((fine.l2_norm() - f.l2_norm()).abs() < 1e-12);
        }
    }

    fn brute_dft_1d(grid: &TorusGrid, space: &[Complex64]) -> Vec<Complex64> {
        let n = grid.points_per_axis();
        (0..n)
            .map(|k| {
                let mut acc = Complex64::default();
                for (j, &v) in space.iter().enumerate() {
                    let phase = -2.0 * PI * (k * j) as f64 / n as f64;
                    acc += v * Complex64::from_polar(1.0, phase);
                }
                acc / n as f64
            })
            .collect()
    }

    #[test]
    fn pure_mode_has_unit_coefficient() {
        let grid = TorusGrid::new(1, 16, 4.0).unwrap();
        let f = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, grid.base_freq() * x[0]));
        let coeffs = f.freq_values();
        for (i, c) in coeffs.iter().enumerate() {
            let expect = if grid.frequency(i).k[0] == 1 { 1.0 } else { 0.0 };
            assert!((c - Complex64::new(expect, 0.0)).norm() < 1e-12, "index {i}: {c}");
        }
    }

    #[test]
    fn constant_field_is_zero_mode() {
        let grid = TorusGrid::new(2, 8, 1.0).unwrap();
        let f = SpectralField::from_fn(grid, |_| Complex64::new(1.0, 0.0));
        let coeffs = f.freq_values();
        assert!((coeffs[0] - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        assert!(coeffs[1..].iter().all(|c| c.norm() < 1e-13));
    }

    #[test]
    fn forward_matches_brute_force_dft() {
        let grid = TorusGrid::new(1, 16, 2.0 * PI).unwrap();
        let f = random_field(grid, 7);
        let brute = brute_dft_1d(&grid, f.space_values());
        for (a, b) in f.freq_values().iter().zip(&brute) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_matches_brute_force_synthesis() {
        let grid = TorusGrid::new(1, 16, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let coeffs: Vec<Complex64> = (0..16)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let f = SpectralField::from_freq(grid, coeffs.clone());
        for (j, v) in f.space_values().iter().enumerate() {
            let mut acc = Complex64::default();
            for (k, &c) in coeffs.iter().enumerate() {
                acc += c * Complex64::from_polar(1.0, 2.0 * PI * (j * k) as f64 / 16.0);
            }
            assert!((v - acc).norm() < 1e-12);
        }
    }

    #[test]
    fn round_trip_within_tolerance() {
        let grid = TorusGrid::new(2, 16, 3.0).unwrap();
        let f = random_field(grid, 11);
        let back = SpectralField::from_freq(grid, f.freq_values().to_vec());
        let scale = f.max_abs();
        assert!(f.max_abs_diff(&back) / scale < 1e-12);
    }

    #[test]
    fn parseval_holds() {
        for seed in 0..20 {
            let grid = TorusGrid::new(1, 32, 5.0).unwrap();
            let f = random_field(grid, seed);
            let space_energy: f64 =
                f.space_values().iter().map(|v| v.norm_sqr()).sum::<f64>() * grid.cell_volume();
            let freq_energy: f64 = f.freq_values().iter().map(|v| v.norm_sqr()).sum::<f64>()
                * grid.period().powi(grid.dim() as i32);
            assert!((space_energy - freq_energy).abs() / space_energy < 1e-10);
        }
    }

    #[test]
    fn dealiased_product_adds_modes() {
        let grid = TorusGrid::new(1, 32, 2.0 * PI).unwrap();
        let f = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, 3.0 * x[0]));
        let g = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, 4.0 * x[0]));
        let h = dealiased_product(&f, &g).unwrap();
        for (i, c) in h.freq_values().iter().enumerate() {
            let expect = if grid.frequency(i).k[0] == 7 { 1.0 } else { 0.0 };
            assert!((c - Complex64::new(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn product_with_one_is_identity() {
        let grid = TorusGrid::new(1, 32, 1.0).unwrap();
        let f = random_field(grid, 5).band_limit();
        let one = SpectralField::from_fn(grid, |_| Complex64::new(1.0, 0.0));
        let h = dealiased_product(&f, &one).unwrap();
        assert!(f.max_abs_diff(&h) < 1e-12);
    }

    #[test]
    fn product_matches_direct_convolution() {
        let grid = TorusGrid::new(1, 32, 1.0).unwrap();
        let f = random_field(grid, 1).band_limit();
        let g = random_field(grid, 2).band_limit();
        let h = dealiased_product(&f, &g).unwrap();
        let fv = f.freq_values();
        let gv = g.freq_values();
        let n = grid.points_per_axis() as i64;
        for (i, c) in h.freq_values().iter().enumerate() {
            let kz = grid.frequency(i).k[0];
            let mut acc = Complex64::default();
            for kx in -n / 2..n / 2 {
                let ky = kz - kx;
                if let (Some(ix), Some(iy)) = (grid.axis_index(kx), grid.axis_index(ky)) {
                    acc += fv[ix] * gv[iy];
                }
            }
            assert!((c - acc).norm() < 1e-12, "k={kz}: {c} vs {acc}");
        }
    }

    #[test]
    fn aliased_input_rejected() {
        let grid = TorusGrid::new(1, 32, 2.0 * PI).unwrap();
        // Mode at k=14 >= 32/3.
        let f = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, 14.0 * x[0]));
        let g = SpectralField::from_fn(grid, |_| Complex64::new(1.0, 0.0));
        match dealiased_product(&f, &g) {
            Err(BilapError::BandLimitExceeded { .. }) => {}
            other => panic!("expected BandLimitExceeded, got {other:?}"),
        }
    }

    #[test]
    fn binary_round_trip() {
        let dir = std::env::temp_dir().join("bilap_field_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("f.blap");
        let grid = TorusGrid::new(2, 8, 2.5).unwrap();
        let f = random_field(grid, 9);
        f.write_binary(&path).unwrap();
        let g = SpectralField::read_binary(&path).unwrap();
        assert_eq!(g.grid(), &grid);
        assert_eq!(f.space_values(), g.space_values());
    }

    #[test]
    fn mean_projection_zeroes_dc() {
        let grid = TorusGrid::new(1, 16, 1.0).unwrap();
        let f = random_field(grid, 4).mean_project();
        assert!(f.mean_projected());
        assert_eq!(f.freq_values()[0], Complex64::default());
    }
}
