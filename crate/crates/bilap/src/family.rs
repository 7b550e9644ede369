//! Deterministic test-function families: seeded generators for the
//! smooth, band-limited inputs the sweeps run over.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::field::SpectralField;
use crate::grid::TorusGrid;

/// Which family to generate; all outputs are band-limited below the
/// aliasing cutoff and reproducible from the seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFamilySpec {
    /// Modulated Gaussians with randomized center, width, and integer
    /// modulation up to `modulation` (0 gives nonnegative fields).
    Gaussian { count: usize, width: f64, modulation: i64 },
    /// Tensor products of compactly supported smooth bumps.
    BumpTensor { count: usize },
    /// Random spectra supported on |k_i| <= band * N/2 (capped at the
    /// aliasing cutoff), mean-projected.
    RandomBandLimited { count: usize, band: f64 },
    /// The deterministic pure-mode pair e^{i a x}, e^{i b x} (axis 0).
    ModePair { a: i64, b: i64 },
}

fn wrap(d: f64, l: f64) -> f64 {
    let d = d.rem_euclid(l);
    d.min(l - d)
}

/// exp(-1/(1-t^2)) bump, supported in |t| < 1, max value e^{-1}.
fn bump(t: f64) -> f64 {
    if t.abs() < 1.0 {
        (-1.0 / (1.0 - t * t)).exp()
    } else {
        0.0
    }
}

impl TestFamilySpec {
    pub fn count(&self) -> usize {
        match self {
            TestFamilySpec::Gaussian { count, .. }
            | TestFamilySpec::BumpTensor { count }
            | TestFamilySpec::RandomBandLimited { count, .. } => *count,
            TestFamilySpec::ModePair { .. } => 2,
        }
    }

    /// Fifty modulated Gaussians of unit width — the default sweep family.
    pub fn default_gaussian() -> Self {
        TestFamilySpec::Gaussian { count: 50, width: 1.0, modulation: 4 }
    }

    pub fn generate(&self, grid: TorusGrid, seed: u64) -> Vec<SpectralField> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let l = grid.period();
        let d = grid.dim();
        match self {
            TestFamilySpec::Gaussian { count, width, modulation } => (0..*count)
                .map(|_| {
                    let mut centers = [0.0f64; 2];
                    let mut widths = [1.0f64; 2];
                    let mut mods = [0i64; 2];
                    for a in 0..d {
                        centers[a] = rng.gen_range(0.25 * l..0.75 * l);
                        widths[a] = width * rng.gen_range(0.6..1.4);
                        mods[a] = if *modulation > 0 {
                            rng.gen_range(-*modulation..=*modulation)
                        } else {
                            0
                        };
                    }
                    SpectralField::from_fn(grid, move |x| {
                        let mut amp = 1.0;
                        let mut phase = 0.0;
                        for a in 0..d {
                            let dx = wrap(x[a] - centers[a], l);
                            amp *= (-(dx / widths[a]).powi(2)).exp();
                            phase += 2.0 * PI * mods[a] as f64 * x[a] / l;
                        }
                        Complex64::from_polar(amp, phase)
                    })
                    .band_limit()
                })
                .collect(),
            TestFamilySpec::BumpTensor { count } => (0..*count)
                .map(|_| {
                    let mut centers = [0.0f64; 2];
                    let mut radii = [1.0f64; 2];
                    for a in 0..d {
                        centers[a] = rng.gen_range(0.3 * l..0.7 * l);
                        radii[a] = rng.gen_range(0.15 * l..0.3 * l);
                    }
                    SpectralField::from_fn(grid, move |x| {
                        let mut amp = 1.0;
                        for a in 0..d {
                            let dx = wrap(x[a] - centers[a], l);
                            amp *= bump(dx / radii[a]) * std::f64::consts::E;
                        }
                        Complex64::new(amp, 0.0)
                    })
                    .band_limit()
                })
                .collect(),
            TestFamilySpec::RandomBandLimited { count, band } => {
                let n = grid.points_per_axis() as i64;
                let cap = ((band * n as f64 / 2.0) as i64).min(n / 3 - 1).max(1);
                (0..*count)
                    .map(|_| {
                        let mut coeffs = vec![Complex64::default(); grid.len()];
                        for (i, c) in coeffs.iter_mut().enumerate() {
                            let fr = grid.frequency(i);
                            let inside = (0..d).all(|a| fr.k[a].abs() <= cap);
                            if inside && !fr.is_zero() {
                                *c = Complex64::new(
                                    rng.gen_range(-1.0..1.0),
                                    rng.gen_range(-1.0..1.0),
                                );
                            }
                        }
                        SpectralField::from_freq(grid, coeffs)
                    })
                    .collect()
            }
            TestFamilySpec::ModePair { a, b } => {
                let base = grid.base_freq();
                let (ka, kb) = (*a as f64, *b as f64);
                vec![
                    SpectralField::from_fn(grid, move |x| {
                        Complex64::from_polar(1.0, base * ka * x[0])
                    }),
                    SpectralField::from_fn(grid, move |x| {
                        Complex64::from_polar(1.0, base * kb * x[0])
                    }),
                ]
            }
        }
    }
}
