//! Dyadic Littlewood-Paley machinery: the smooth generator profile,
//! frequency-localized pieces and their translated/modulated variants,
//! square functions, the low-high/high-low/high-high paraproduct split,
//! and the Fourier-series coefficients of the weighted profile.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{BilapError, Result};
use crate::fft;
use crate::field::SpectralField;
use crate::grid::{vec_norm, TorusGrid};
use crate::operators::BilinearSymbol;

/// C-infinity glue: h(t) = exp(-1/t) for t > 0, 0 otherwise.
fn h(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Smooth step: 0 for t <= 0, 1 for t >= 1, strictly increasing between.
fn smooth_step(t: f64) -> f64 {
    let a = h(t);
    let b = h(1.0 - t);
    if a == 0.0 {
        0.0
    } else {
        a / (a + b)
    }
}

/// Radial low-pass profile: 1 for r <= 1, 0 for r >= 2, C-infinity glue
/// in between.
pub fn phi_hat(r: f64) -> f64 {
    let r = r.abs();
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        0.0
    } else {
        smooth_step(2.0 - r)
    }
}

/// Annulus profile psi_hat(r) = phi_hat(r) - phi_hat(2r), supported in
/// [1/2, 2].
pub fn psi_hat(r: f64) -> f64 {
    phi_hat(r) - phi_hat(2.0 * r)
}

/// Widened profile: sum of psi_hat over neighbor scales |l| <= 2, equal
/// to 1 on the support of psi_hat.
pub fn tilde_psi_hat(r: f64) -> f64 {
    (-2..=2).map(|l| psi_hat(2.0f64.powi(l) * r)).sum()
}

/// psi_hat normalized so its squares telescope:
/// psi_hat_normalized(r) = psi_hat(r) / sqrt(sum_l psi_hat(2^-l r)^2).
/// The denominator is invariant under dyadic rescaling of r, so
/// sum_j psi_hat_normalized(2^-j r)^2 = 1 exactly for r > 0.
pub fn psi_hat_normalized(r: f64) -> f64 {
    let p = psi_hat(r);
    if p == 0.0 {
        return 0.0;
    }
    // Only scales within one octave of r contribute.
    let base = r.log2().floor() as i32;
    let mut sq = 0.0;
    for l in (base - 2)..=(base + 2) {
        sq += psi_hat(2.0f64.powi(-l) * r).powi(2);
    }
    p / sq.sqrt()
}

/// A Littlewood-Paley family: the annulus profile plus the dyadic scale
/// range covering every nonzero lattice frequency of a grid, with a
/// partition-of-unity certificate measured at construction.
#[derive(Debug, Clone)]
pub struct LPFamily {
    grid: TorusGrid,
    j_min: i32,
    j_max: i32,
    partition_certificate: f64,
}

impl LPFamily {
    /// Build the family for a grid: the scale range is chosen so that
    /// `2^{j_min} <= |xi| <= 2^{j_max}` holds for every nonzero lattice
    /// frequency, where the telescoping sum of the annulus profiles is
    /// exactly 1.
    pub fn new(grid: TorusGrid) -> Self {
        let j_min = grid.min_freq().log2().floor() as i32;
        let j_max = grid.max_freq().log2().ceil() as i32;
        let mut worst = 0.0f64;
        for i in 1..grid.len() {
            let f = grid.frequency(i);
            if f.is_zero() {
                continue;
            }
            let sum: f64 =
                (j_min..=j_max).map(|j| psi_hat(2.0f64.powi(-j) * f.xi_norm())).sum();
            worst = worst.max((sum - 1.0).abs());
        }
        LPFamily { grid, j_min, j_max, partition_certificate: worst }
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn j_min(&self) -> i32 {
        self.j_min
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    pub fn scales(&self) -> impl Iterator<Item = i32> {
        self.j_min..=self.j_max
    }

    /// Max deviation of the telescoped sum from 1 over all nonzero
    /// lattice frequencies, measured at construction.
    pub fn partition_certificate(&self) -> f64 {
        self.partition_certificate
    }

    /// Sample the annulus profile to CSV (r, psi_hat, psi_hat_normalized)
    /// for plotting.
    pub fn export_profile(&self, path: &Path, samples: usize) -> Result<()> {
        let file = File::create(path).map_err(|e| BilapError::io(path.display().to_string(), e))?;
        let mut w = BufWriter::new(file);
        let io = |e| BilapError::io(path.display().to_string(), e);
        writeln!(w, "r,psi_hat,psi_hat_normalized").map_err(io)?;
        for i in 0..=samples {
            let r = 2.5 * i as f64 / samples as f64;
            writeln!(w, "{r:.12e},{:.12e},{:.12e}", psi_hat(r), psi_hat_normalized(r))
                .map_err(io)?;
        }
        w.flush().map_err(io)
    }
}

/// Translation/modulation index for the translated pieces and the
/// Fourier-series box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslationIndex {
    pub m: [i64; 2],
    pub c0: f64,
}

impl TranslationIndex {
    pub fn new(m: [i64; 2], c0: f64) -> Self {
        TranslationIndex { m, c0 }
    }

    pub fn zero() -> Self {
        TranslationIndex { m: [0, 0], c0: 64.0 }
    }

    pub fn magnitude(&self) -> f64 {
        ((self.m[0] * self.m[0] + self.m[1] * self.m[1]) as f64).sqrt()
    }
}

/// Frequency localization to the dyadic annulus |xi| ~ 2^j.
pub fn lp_piece(f: &SpectralField, j: i32, fam: &LPFamily) -> SpectralField {
    assert_eq!(f.grid(), fam.grid());
    let grid = *f.grid();
    let scale = 2.0f64.powi(-j);
    f.map_freq(|i, c| c * psi_hat(scale * grid.frequency(i).xi_norm()))
}

/// Same with the squares-normalized profile (frame analysis).
pub fn lp_piece_normalized(f: &SpectralField, j: i32, fam: &LPFamily) -> SpectralField {
    assert_eq!(f.grid(), fam.grid());
    let grid = *f.grid();
    let scale = 2.0f64.powi(-j);
    f.map_freq(|i, c| c * psi_hat_normalized(scale * grid.frequency(i).xi_norm()))
}

/// Translated piece: the annulus localization modulated by
/// `e^{(2 pi i / c0) 2^{-j} xi . m}` (spatially, the annulus kernel
/// shifted by m box units at scale j).
pub fn translated_lp_piece(
    f: &SpectralField,
    j: i32,
    m: TranslationIndex,
    fam: &LPFamily,
) -> SpectralField {
    assert_eq!(f.grid(), fam.grid());
    let grid = *f.grid();
    let scale = 2.0f64.powi(-j);
    f.map_freq(|i, c| {
        let fr = grid.frequency(i);
        let w = psi_hat(scale * fr.xi_norm());
        if w == 0.0 {
            return Complex64::default();
        }
        let phase: f64 = (0..grid.dim())
            .map(|a| (2.0 * PI / m.c0) * scale * fr.xi[a] * m.m[a] as f64)
            .sum();
        c * w * Complex64::from_polar(1.0, phase)
    })
}

/// Pointwise weighted square function
/// `( sum_j (2^{js} |piece_j f|)^2 )^{1/2}` over the family's scales,
/// with the pieces translated by `m`.
pub fn square_function(
    f: &SpectralField,
    fam: &LPFamily,
    m: TranslationIndex,
    weight_s: f64,
) -> SpectralField {
    let grid = *f.grid();
    let mut acc = vec![0.0f64; grid.len()];
    for j in fam.scales() {
        let piece = translated_lp_piece(f, j, m, fam);
        let w = 2.0f64.powi(j).powf(weight_s);
        for (a, v) in acc.iter_mut().zip(piece.space_values()) {
            let t = w * v.norm();
            *a += t * t;
        }
    }
    SpectralField::from_space(
        grid,
        acc.into_iter().map(|a| Complex64::new(a.sqrt(), 0.0)).collect(),
    )
}

/// Low-high / high-low / high-high split of a weighted bilinear symbol.
///
/// With `w(zeta) = |zeta|^s` (continuously extended by 0 at zeta = 0
/// for s != 0), the three returned symbols are
///
///   m1(xi,eta) = m(xi,eta) w(xi+eta) |xi|^{nu-s}
///                  sum_j psi_hat(2^{-j}|xi|) phi_hat(2^{-j+3}|eta|)
///   m2 = m1 with the roles of xi and eta swapped,
///   m3(xi,eta) = m(xi,eta) w(xi+eta) |eta|^{nu-s}
///                  sum_j psi_hat(2^{-j}|xi|) tilde_psi_hat(2^{-j}|eta|)
///
/// and the exact algebraic identity on mean-projected band-limited
/// fields is: applying the fractional derivative of order s after the
/// original symbol equals the sum of the three split symbols applied
/// with the derivative of order s - nu moved onto one argument
/// (first argument for m1, second for m2 and m3).
pub fn paraproduct_split(
    m: &BilinearSymbol,
    s: f64,
    nu: f64,
    fam: &LPFamily,
) -> (BilinearSymbol, BilinearSymbol, BilinearSymbol) {
    // Scales where an annulus piece can meet the lattice; padded by the
    // cone offset so the telescoped low-pass tail is complete.
    let (j_lo, j_hi) = (fam.j_min() - 4, fam.j_max() + 4);

    let out_weight = move |xi: &[f64], eta: &[f64]| -> f64 {
        let mut z = [0.0f64; 2];
        for a in 0..xi.len() {
            z[a] = xi[a] + eta[a];
        }
        let r = vec_norm(&z[..xi.len()]);
        if r == 0.0 {
            if s == 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            r.powf(s)
        }
    };

    let base1 = m.clone();
    let m1 = BilinearSymbol::new(
        format!("{}|lowhigh[s={s},nu={nu}]", m.label()),
        m.order() + s - (s - nu),
        move |xi, eta| {
            let rx = vec_norm(xi);
            if rx == 0.0 {
                return Complex64::default();
            }
            let re = vec_norm(eta);
            let mut cone = 0.0;
            for j in j_lo..=j_hi {
                let sc = 2.0f64.powi(-j);
                cone += psi_hat(sc * rx) * phi_hat(sc * 8.0 * re);
            }
            if cone == 0.0 {
                return Complex64::default();
            }
            base1.eval(xi, eta) * out_weight(xi, eta) * rx.powf(nu - s) * cone
        },
    );

    let base2 = m.clone();
    let m2 = BilinearSymbol::new(
        format!("{}|highlow[s={s},nu={nu}]", m.label()),
        m.order() + s - (s - nu),
        move |xi, eta| {
            let re = vec_norm(eta);
            if re == 0.0 {
                return Complex64::default();
            }
            let rx = vec_norm(xi);
            let mut cone = 0.0;
            for j in j_lo..=j_hi {
                let sc = 2.0f64.powi(-j);
                cone += psi_hat(sc * re) * phi_hat(sc * 8.0 * rx);
            }
            if cone == 0.0 {
                return Complex64::default();
            }
            base2.eval(xi, eta) * out_weight(xi, eta) * re.powf(nu - s) * cone
        },
    );

    let base3 = m.clone();
    let m3 = BilinearSymbol::new(
        format!("{}|highhigh[s={s},nu={nu}]", m.label()),
        m.order() + s - (s - nu),
        move |xi, eta| {
            let re = vec_norm(eta);
            if re == 0.0 {
                return Complex64::default();
            }
            let rx = vec_norm(xi);
            let mut diag = 0.0;
            for j in j_lo..=j_hi {
                let sc = 2.0f64.powi(-j);
                diag += psi_hat(sc * rx) * tilde_psi_hat(sc * re);
            }
            if diag == 0.0 {
                return Complex64::default();
            }
            base3.eval(xi, eta) * out_weight(xi, eta) * re.powf(nu - s) * diag
        },
    );

    (m1, m2, m3)
}

/// Fourier-series coefficients of the weighted low-pass profile on the
/// box `[-c0/2, c0/2]^d` (d = 1 here): coefficients of
/// `phi_hat_s(2^{-4} zeta)` with `phi_hat_s(zeta) = |zeta|^s
/// phi_hat(|zeta|)`, indexed by the integer m of the series
/// `sum_m C_m e^{(2 pi i / c0) zeta m}`.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub s: f64,
    pub c0: f64,
    /// entries[i] = C_m for m = i - m_max (so m runs -m_max ..= m_max).
    entries: Vec<Complex64>,
    m_max: i64,
}

impl CoefficientTable {
    pub fn m_max(&self) -> i64 {
        self.m_max
    }

    pub fn get(&self, m: i64) -> Complex64 {
        assert!(m.abs() <= self.m_max);
        self.entries[(m + self.m_max) as usize]
    }

    /// Partial Fourier series at zeta.
    pub fn reconstruct(&self, zeta: f64) -> Complex64 {
        let mut acc = Complex64::default();
        for (i, &c) in self.entries.iter().enumerate() {
            let m = i as i64 - self.m_max;
            acc += c * Complex64::from_polar(1.0, 2.0 * PI * zeta * m as f64 / self.c0);
        }
        acc
    }

    /// The expanded function itself.
    pub fn target(&self, zeta: f64) -> f64 {
        let z = zeta.abs() / 16.0;
        if z == 0.0 {
            if self.s == 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            z.powf(self.s) * phi_hat(z)
        }
    }

    /// Least-squares slope of log|C_m| against log(1 + |m|) over
    /// 1 <= m <= m_max (decay-law fit).
    pub fn decay_slope(&self) -> f64 {
        let pts: Vec<(f64, f64)> = (1..=self.m_max)
            .filter_map(|m| {
                let a = self.get(m).norm();
                if a > 1e-300 {
                    Some(((1.0 + m as f64).ln(), a.ln()))
                } else {
                    None
                }
            })
            .collect();
        fit_slope(&pts)
    }

    pub fn export_csv(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| BilapError::io(path.display().to_string(), e))?;
        let mut w = BufWriter::new(file);
        let io = |e| BilapError::io(path.display().to_string(), e);
        writeln!(w, "m,re,im,abs_m").map_err(io)?;
        for (i, c) in self.entries.iter().enumerate() {
            let m = i as i64 - self.m_max;
            writeln!(w, "{m},{:.12e},{:.12e},{}", c.re, c.im, m.abs()).map_err(io)?;
        }
        w.flush().map_err(io)
    }
}

/// Least-squares slope through (x, y) points.
pub fn fit_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Compute the coefficient table by FFT quadrature on the box (d = 1).
/// The integrand is supported in |zeta| <= 32, so any c0 >= 64 box
/// contains it and the quadrature is spectrally accurate.
pub fn fourier_coefficients(s: f64, c0: f64, m_max: i64) -> Result<CoefficientTable> {
    if c0 < 64.0 {
        return Err(BilapError::DomainError(format!(
            "series box must contain the profile support |zeta| <= 32; need c0 >= 64, got {c0}"
        )));
    }
    let quad: usize = 8192;
    assert!(m_max < quad as i64 / 2, "quadrature resolution too small for m_max");
    // Sample on [-c0/2, c0/2) and push the offset into a per-m phase:
    // with zeta_n = -c0/2 + n c0/Q,
    //   C_m = (1/c0) integral phi_hat_s(2^-4 zeta) e^{-2 pi i zeta m / c0} dzeta
    //       ~ (1/Q) e^{i pi m} sum_n value_n e^{-2 pi i n m / Q}.
    let step = c0 / quad as f64;
    let mut data: Vec<Complex64> = (0..quad)
        .map(|n| {
            let zeta = -c0 / 2.0 + n as f64 * step;
            let z = zeta.abs() / 16.0;
            let v = if z == 0.0 {
                if s == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                z.powf(s) * phi_hat(z)
            };
            Complex64::new(v, 0.0)
        })
        .collect();
    fft::raw_forward_1d(&mut data);
    let mut entries = Vec::with_capacity((2 * m_max + 1) as usize);
    for m in -m_max..=m_max {
        let idx = m.rem_euclid(quad as i64) as usize;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        entries.push(data[idx] * sign / quad as f64);
    }
    Ok(CoefficientTable { s, c0, entries, m_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{apply_bilinear, apply_linear, RadialMultiplier};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_band_limited(grid: TorusGrid, seed: u64) -> SpectralField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..grid.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        SpectralField::from_space(grid, values).band_limit().mean_project()
    }

    #[test]
    fn profile_support_and_plateau() {
        assert_eq!(phi_hat(0.0), 1.0);
        assert_eq!(phi_hat(1.0), 1.0);
        assert_eq!(phi_hat(2.0), 0.0);
        assert_eq!(phi_hat(3.0), 0.0);
        assert!(phi_hat(1.5) > 0.0 && phi_hat(1.5) < 1.0);
        assert_eq!(psi_hat(0.4), 0.0);
        assert_eq!(psi_hat(3.0), 0.0);
        assert!(psi_hat(1.0) > 0.0);
    }

    #[test]
    fn partition_certificate_is_tiny() {
        for dim in [1usize, 2] {
            let grid = TorusGrid::new(dim, 32, 5.0).unwrap();
            let fam = LPFamily::new(grid);
            assert!(fam.partition_certificate() < 1e-12, "d = {dim}");
        }
    }

    #[test]
    fn partition_holds_on_random_radii() {
        // 10^4 random radii inside the covered band of a reference range.
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (j_min, j_max) = (-3i32, 9i32);
        for _ in 0..10_000 {
            let r = rng.gen_range(2.0f64.powi(j_min)..2.0f64.powi(j_max));
            let sum: f64 = (j_min..=j_max).map(|j| psi_hat(2.0f64.powi(-j) * r)).sum();
            assert!((sum - 1.0).abs() < 1e-12, "r = {r}");
        }
    }

    #[test]
    fn normalized_profile_squares_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let r = rng.gen_range(0.01f64..100.0);
            let sum: f64 =
                (-12..=12).map(|j| psi_hat_normalized(2.0f64.powi(-j) * r).powi(2)).sum();
            assert!((sum - 1.0).abs() < 1e-12, "r = {r}");
        }
    }

    #[test]
    fn pieces_reconstruct_mean_projected_fields() {
        let grid = TorusGrid::new(1, 64, 3.0).unwrap();
        let fam = LPFamily::new(grid);
        let f = random_band_limited(grid, 5);
        let mut sum = SpectralField::zero(grid);
        for j in fam.scales() {
            sum = sum.add(&lp_piece(&f, j, &fam));
        }
        assert!(sum.max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn distant_pieces_are_disjoint() {
        let grid = TorusGrid::new(1, 64, 2.0 * PI).unwrap();
        let fam = LPFamily::new(grid);
        let f = random_band_limited(grid, 6);
        let j = 3;
        let a = lp_piece(&lp_piece(&f, j, &fam), j + 2, &fam);
        assert!(a.max_abs() < 1e-14);
    }

    #[test]
    fn piece_on_single_mode_is_eigenrelation() {
        let grid = TorusGrid::new(1, 64, 2.0 * PI).unwrap();
        let fam = LPFamily::new(grid);
        let k = 4.0;
        let f = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, k * x[0]));
        let j = 2;
        let g = lp_piece(&f, j, &fam);
        let w = psi_hat(2.0f64.powi(-j) * k);
        assert!(g.max_abs_diff(&f.scale(Complex64::new(w, 0.0))) < 1e-12);
    }

    #[test]
    fn translation_preserves_piece_modulus() {
        let grid = TorusGrid::new(1, 64, 1.0).unwrap();
        let fam = LPFamily::new(grid);
        for seed in 0..20 {
            let f = random_band_limited(grid, seed);
            let m = TranslationIndex::new([17, 0], 64.0);
            for j in fam.scales() {
                let a = lp_piece(&f, j, &fam).l2_norm();
                let b = translated_lp_piece(&f, j, m, &fam).l2_norm();
                assert!((a - b).abs() < 1e-12 * (1.0 + a));
            }
        }
    }

    #[test]
    fn zero_translation_is_plain_piece() {
        let grid = TorusGrid::new(1, 32, 1.0).unwrap();
        let fam = LPFamily::new(grid);
        let f = random_band_limited(grid, 1);
        let m = TranslationIndex::new([0, 0], 64.0);
        for j in fam.scales() {
            let a = lp_piece(&f, j, &fam);
            let b = translated_lp_piece(&f, j, m, &fam);
            assert!(a.max_abs_diff(&b) < 1e-14);
        }
    }

    #[test]
    fn square_function_of_single_mode_is_constant() {
        let grid = TorusGrid::new(1, 64, 2.0 * PI).unwrap();
        let fam = LPFamily::new(grid);
        let k = 5.0;
        let f = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, k * x[0]));
        let sq = square_function(&f, &fam, TranslationIndex::zero(), 0.0);
        let expect: f64 = fam
            .scales()
            .map(|j| psi_hat(2.0f64.powi(-j) * k).powi(2))
            .sum::<f64>()
            .sqrt();
        for v in sq.space_values() {
            assert!((v.re - expect).abs() < 1e-12 && v.im == 0.0);
        }
    }

    #[test]
    fn square_function_of_zero_is_zero() {
        let grid = TorusGrid::new(1, 32, 1.0).unwrap();
        let fam = LPFamily::new(grid);
        let sq = square_function(&SpectralField::zero(grid), &fam, TranslationIndex::zero(), 0.0);
        assert!(sq.max_abs() == 0.0);
    }

    #[test]
    fn paraproduct_identity_trivial_symbol_s2() {
        // m = 1, nu = 0, s = 2: split of the second derivative of a product.
        paraproduct_identity_case(&BilinearSymbol::one(), 2.0, 0.0, 1e-10);
    }

    #[test]
    fn paraproduct_identity_fractional_symbol() {
        paraproduct_identity_case(&BilinearSymbol::cm_nu(0.5), 1.0, 0.5, 1e-10);
    }

    fn paraproduct_identity_case(m: &BilinearSymbol, s: f64, nu: f64, tol: f64) {
        let grid = TorusGrid::new(1, 32, 2.0 * PI).unwrap();
        let fam = LPFamily::new(grid);
        let (m1, m2, m3) = paraproduct_split(m, s, nu, &fam);
        for seed in 0..3 {
            let f = random_band_limited(grid, 2 * seed);
            let g = random_band_limited(grid, 2 * seed + 1);
            let ds = RadialMultiplier::FractionalDerivative(s);
            let dsm = RadialMultiplier::FractionalDerivative(s - nu);
            let lhs = apply_linear(ds, &apply_bilinear(m, &f, &g).unwrap());
            let rhs = apply_bilinear(&m1, &apply_linear(dsm, &f), &g)
                .unwrap()
                .add(&apply_bilinear(&m2, &f, &apply_linear(dsm, &g)).unwrap())
                .add(&apply_bilinear(&m3, &f, &apply_linear(dsm, &g)).unwrap());
            let err = lhs.max_abs_diff(&rhs);
            assert!(err < tol, "seed {seed}: err = {err:.3e}");
        }
    }

    #[test]
    fn cone_membership_on_separated_mode_pair() {
        // |a| >> 8|b|: only the low-high symbol is active.
        let grid = TorusGrid::new(1, 256, 2.0 * PI).unwrap();
        let fam = LPFamily::new(grid);
        let (m1, m2, m3) = paraproduct_split(&BilinearSymbol::one(), 1.0, 0.0, &fam);
        let (a, b) = ([64.0], [1.0]);
        assert!(m1.eval(&a, &b).norm() > 0.0);
        assert_eq!(m2.eval(&a, &b).norm(), 0.0);
        assert_eq!(m3.eval(&a, &b).norm(), 0.0);
    }

    #[test]
    fn coefficients_symmetric_for_even_profile() {
        let t = fourier_coefficients(0.0, 64.0, 64).unwrap();
        for m in 0..=64 {
            let a = t.get(m);
            let b = t.get(-m);
            assert!((a - b).norm() < 1e-12);
            assert!(a.im.abs() < 1e-12);
        }
    }

    #[test]
    fn coefficient_series_reconstructs_profile() {
        let t = fourier_coefficients(1.0, 64.0, 2048).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut sup = 0.0f64;
        for _ in 0..1000 {
            let zeta = rng.gen_range(-32.0f64..32.0);
            sup = sup.max((t.reconstruct(zeta) - Complex64::new(t.target(zeta), 0.0)).norm());
        }
        assert!(sup < 2e-3, "sup err {sup:.3e}");
        // Partial-sum error shrinks as the truncation grows.
        let t_small = fourier_coefficients(1.0, 64.0, 256).unwrap();
        let mut sup_small = 0.0f64;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let zeta = rng.gen_range(-32.0f64..32.0);
            sup_small = sup_small
                .max((t_small.reconstruct(zeta) - Complex64::new(t_small.target(zeta), 0.0)).norm());
        }
        assert!(sup < sup_small);
    }

    #[test]
    fn coefficient_decay_matches_weight_order() {
        for s in [0.5f64, 1.5] {
            let t = fourier_coefficients(s, 64.0, 512).unwrap();
            let slope = t.decay_slope();
            assert!(slope <= -(s + 1.0) + 0.3, "s = {s}: slope = {slope:.3}");
        }
    }
}
