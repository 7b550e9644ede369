//! Symbol regularity machinery (d = 1 symbols, so the frequency pair
//! (xi, eta) lives in the plane): dyadic rescaled pieces of a bilinear
//! symbol, weighted product Sobolev norms of their transforms,
//! derivative-bound class checks, resolution-refinement divergence
//! scans, and the pointwise maximal-domination ratio.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{BilapError, Result};
use crate::fft;
use crate::field::SpectralField;
use crate::lp::psi_hat;
use crate::norms::maximal_function;
use crate::operators::{apply_bilinear, BilinearSymbol};

/// Smooth window on the plane supported in the annulus
/// `1/2 <= |(xi, eta)| <= 2`, whose dyadic rescalings partition unity
/// off the origin (it is the annulus profile of the radius).
#[derive(Debug, Clone, Copy, Default)]
pub struct AnnulusWindow;

impl AnnulusWindow {
    pub fn eval(&self, xi: f64, eta: f64) -> f64 {
        psi_hat(xi.hypot(eta))
    }

    /// Max deviation of `sum_k Psi(2^{-k} .)` from 1 over sampled shells.
    pub fn partition_certificate(&self, samples: usize) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..samples {
            // radii spread geometrically over several octaves
            let r = 0.05 * 1.013f64.powi(i as i32);
            let sum: f64 = (-12..=12).map(|k| psi_hat(2.0f64.powi(-k) * r)).sum();
            worst = worst.max((sum - 1.0).abs());
        }
        worst
    }
}

/// One dyadic piece of a symbol, brought to unit scale:
/// `2^{k nu} m(2^k xi, 2^k eta) Psi(xi, eta)` tabulated on a uniform
/// res x res grid over the box `[-2, 2]^2`.
#[derive(Debug, Clone)]
pub struct RescaledPiece {
    pub k: i32,
    pub nu: f64,
    res: usize,
    values: Vec<Complex64>,
}

impl RescaledPiece {
    pub fn res(&self) -> usize {
        self.res
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Box coordinate of sample index.
    pub fn coord(&self, u: usize) -> f64 {
        -2.0 + 4.0 * u as f64 / self.res as f64
    }

    /// Bilinear interpolation inside the box, 0 outside.
    pub fn interp(&self, x: f64, y: f64) -> Complex64 {
        let n = self.res as f64;
        let fx = (x + 2.0) / 4.0 * n;
        let fy = (y + 2.0) / 4.0 * n;
        if fx < 0.0 || fy < 0.0 || fx > n - 1.0 || fy > n - 1.0 {
            return Complex64::default();
        }
        let (u0, v0) = (fx.floor() as usize, fy.floor() as usize);
        let (u1, v1) = ((u0 + 1).min(self.res - 1), (v0 + 1).min(self.res - 1));
        let (tx, ty) = (fx - u0 as f64, fy - v0 as f64);
        let at = |u: usize, v: usize| self.values[u * self.res + v];
        at(u0, v0) * (1.0 - tx) * (1.0 - ty)
            + at(u1, v0) * tx * (1.0 - ty)
            + at(u0, v1) * (1.0 - tx) * ty
            + at(u1, v1) * tx * ty
    }

    pub fn l2_norm(&self) -> f64 {
        let cell = (4.0 / self.res as f64).powi(2);
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * cell).sqrt()
    }

    pub fn max_abs_diff(&self, other: &RescaledPiece) -> f64 {
        assert_eq!(self.res, other.res);
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Tabulate the unit-scale piece of a symbol at dyadic level k.
pub fn rescaled_piece(
    m: &BilinearSymbol,
    nu: f64,
    k: i32,
    w: &AnnulusWindow,
    res: usize,
) -> RescaledPiece {
    assert!(res >= 32 && res.is_power_of_two(), "resolution must be a power of two >= 32");
    let scale = 2.0f64.powi(k);
    let gain = scale.powf(nu);
    let mut values = Vec::with_capacity(res * res);
    for u in 0..res {
        let x = -2.0 + 4.0 * u as f64 / res as f64;
        for v in 0..res {
            let y = -2.0 + 4.0 * v as f64 / res as f64;
            let win = w.eval(x, y);
            if win == 0.0 {
                values.push(Complex64::default());
            } else {
                values.push(m.eval(&[scale * x], &[scale * y]) * gain * win);
            }
        }
    }
    RescaledPiece { k, nu, res, values }
}

/// Construct a piece directly from tabulated values (for synthetic
/// window kernels in the domination check).
pub fn piece_from_fn(
    res: usize,
    mut f: impl FnMut(f64, f64) -> Complex64,
) -> RescaledPiece {
    let mut values = Vec::with_capacity(res * res);
    for u in 0..res {
        let x = -2.0 + 4.0 * u as f64 / res as f64;
        for v in 0..res {
            let y = -2.0 + 4.0 * v as f64 / res as f64;
            values.push(f(x, y));
        }
    }
    RescaledPiece { k: 0, nu: 0.0, res, values }
}

/// Weighted product Sobolev norm of a tabulated piece:
/// `( iint (1+x^2)^{r1} (1+y^2)^{r2} |h^(x,y)|^2 dx dy )^{1/2}`,
/// computed by treating the box as a period-4 torus.  At r1 = r2 = 0
/// this is the L^2 norm of the piece (Plancherel).
pub fn product_sobolev_norm(piece: &RescaledPiece, r1: f64, r2: f64) -> f64 {
    assert!(r1 >= 0.0 && r2 >= 0.0, "weight orders must be nonnegative");
    let res = piece.res;
    let mut data = piece.values.clone();
    fft::raw_forward_2d(&mut data, res, res);
    let cell = (4.0 / res as f64).powi(2); // converts raw DFT to transform samples
    let base = std::f64::consts::PI / 2.0; // frequency step 2 pi / 4
    let signed = |i: usize| -> f64 {
        let n = res as i64;
        let i = i as i64;
        base * (if i < n / 2 { i } else { i - n }) as f64
    };
    let mut acc = 0.0;
    for u in 0..res {
        let wa = (1.0 + signed(u).powi(2)).powf(r1);
        for v in 0..res {
            let wb = (1.0 + signed(v).powi(2)).powf(r2);
            acc += wa * wb * (data[u * res + v] * cell).norm_sqr();
        }
    }
    // d(xi) d(eta) measure and the 1/(2 pi)^2 Plancherel factor.
    (acc * base * base / (4.0 * std::f64::consts::PI * std::f64::consts::PI)).sqrt()
}

/// Sup over dyadic levels of the piece Sobolev norm, with a flag for
/// whether the sup is attained strictly inside the scanned range
/// (boundary attainment hints at divergence as the range grows).
#[derive(Debug, Clone, Serialize)]
pub struct RegularityScore {
    pub score: f64,
    pub attained_interior: bool,
    pub per_k: Vec<(i32, f64)>,
}

pub fn regularity_score(
    m: &BilinearSymbol,
    nu: f64,
    r: f64,
    k_range: std::ops::RangeInclusive<i32>,
    res: usize,
) -> RegularityScore {
    let w = AnnulusWindow;
    let per_k: Vec<(i32, f64)> = k_range
        .map(|k| (k, product_sobolev_norm(&rescaled_piece(m, nu, k, &w, res), r, r)))
        .collect();
    let (arg, score) = per_k
        .iter()
        .cloned()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("k range must be nonempty");
    let first = per_k.first().unwrap().0;
    let last = per_k.last().unwrap().0;
    RegularityScore {
        score,
        attained_interior: arg != first && arg != last || per_k.len() == 1,
        per_k,
    }
}

/// Piece Sobolev norms across doubling resolutions (divergence scan).
pub fn refinement_scan(
    m: &BilinearSymbol,
    nu: f64,
    k: i32,
    r: f64,
    resolutions: &[usize],
) -> Vec<f64> {
    let w = AnnulusWindow;
    resolutions
        .iter()
        .map(|&res| product_sobolev_norm(&rescaled_piece(m, nu, k, &w, res), r, r))
        .collect()
}

/// A rough symbol has a genuinely divergent weighted norm: flag growth
/// by more than 2x under resolution doubling, twice consecutively.
pub fn detect_divergence(norms: &[f64]) -> bool {
    norms
        .windows(3)
        .any(|w| w[1] > 2.0 * w[0] && w[2] > 2.0 * w[1])
}

/// Derivative-bound class check: for each mixed order (b, g) up to
/// max_order, estimate `sup |d^b_xi d^g_eta Phi^k(xi,eta)|
/// (|xi|+|eta|)^{b+g-nu}` over sample points of the level-k annulus by
/// central finite differences, and report whether the constants are
/// k-independent (variation < 20% across k).
#[derive(Debug, Clone, Serialize)]
pub struct ClassMnuReport {
    /// (b, g, per-k constants)
    pub constants: Vec<(usize, usize, Vec<f64>)>,
    pub k_independent: bool,
    pub max_variation: f64,
}

pub fn class_mnu_check(
    family: &[(i32, BilinearSymbol)],
    nu: f64,
    max_order: usize,
) -> ClassMnuReport {
    // Central-difference stencil for the n-th derivative.
    let stencil = |n: usize| -> Vec<(f64, f64)> {
        // offsets (n/2 - i) and signed binomial weights
        (0..=n)
            .map(|i| {
                let w = (0..n).fold(1.0, |acc, t| acc * (n - t) as f64 / (t + 1).max(1) as f64);
                let _ = w;
                let binom = {
                    let mut b = 1.0f64;
                    for t in 0..i {
                        b = b * (n - t) as f64 / (t + 1) as f64;
                    }
                    b
                };
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                (n as f64 / 2.0 - i as f64, sign * binom)
            })
            .collect()
    };

    let sample_dirs: Vec<(f64, f64)> = [0.3f64, 1.0, 2.0, 3.5, 5.0]
        .iter()
        .map(|t| (t.cos(), t.sin()))
        .collect();
    let radii = [0.8f64, 1.0, 1.25];

    let mut constants = Vec::new();
    let mut max_variation = 0.0f64;
    for b in 0..=max_order {
        for g in 0..=(max_order - b) {
            let sb = stencil(b);
            let sg = stencil(g);
            let mut per_k = Vec::new();
            for (k, phi) in family {
                let scale = 2.0f64.powi(*k);
                let h = scale / 256.0;
                let mut worst = 0.0f64;
                for &(cx, cy) in &sample_dirs {
                    for &rho in &radii {
                        let (x0, y0) = (scale * rho * cx, scale * rho * cy);
                        let mut acc = Complex64::default();
                        for &(ox, wx) in &sb {
                            for &(oy, wy) in &sg {
                                acc += phi.eval(&[x0 + ox * h], &[y0 + oy * h]) * wx * wy;
                            }
                        }
                        let deriv = acc.norm() / h.powi((b + g) as i32);
                        let weight = (x0.abs() + y0.abs()).powf((b + g) as f64 - nu);
                        worst = worst.max(deriv * weight);
                    }
                }
                per_k.push(worst);
            }
            let hi = per_k.iter().cloned().fold(f64::MIN, f64::max);
            let lo = per_k.iter().cloned().fold(f64::MAX, f64::min);
            let mean = per_k.iter().sum::<f64>() / per_k.len() as f64;
            if mean > 0.0 {
                max_variation = max_variation.max((hi - lo) / mean);
            }
            constants.push((b, g, per_k));
        }
    }
    ClassMnuReport { constants, k_independent: max_variation < 0.2, max_variation }
}

/// Pointwise domination ratio for the unit-scale window kernel at
/// dyadic level j: applies the bilinear operator with symbol
/// `sigma(2^{-j} xi, 2^{-j} eta)` (interpolated from the table) and
/// divides pointwise by
/// `||sigma||_{W^{(r,r),2}} (M|f|^l)^{1/l} (M|g|^l)^{1/l}`.
pub fn maximal_domination_check(
    sigma: &RescaledPiece,
    f: &SpectralField,
    g: &SpectralField,
    j: i32,
    l: f64,
    r: f64,
) -> Result<SpectralField> {
    let d = f.grid().dim() as f64;
    if !(l > (d / r).max(1.0) && l < 2.0) {
        return Err(BilapError::DomainError(format!(
            "exponent l = {l} must lie in (max(1, d/r), 2) = ({}, 2)",
            (d / r).max(1.0)
        )));
    }
    let table = sigma.clone();
    let scale = 2.0f64.powi(-j);
    let symbol = BilinearSymbol::new(format!("window@2^{j}"), 0.0, move |xi, eta| {
        table.interp(scale * xi[0], scale * eta[0])
    });
    let applied = apply_bilinear(&symbol, f, g)?;
    let norm = product_sobolev_norm(sigma, r, r);
    if norm < 1e-14 {
        return Err(BilapError::DegenerateInput("window kernel has zero weighted norm".into()));
    }
    let power = |field: &SpectralField| -> Vec<f64> {
        let p = SpectralField::from_space(
            *field.grid(),
            field
                .space_values()
                .iter()
                .map(|v| Complex64::new(v.norm().powf(l), 0.0))
                .collect(),
        );
        maximal_function(&p)
            .space_values()
            .iter()
            .map(|v| v.re.powf(1.0 / l))
            .collect()
    };
    let mf = power(f);
    let mg = power(g);
    let grid = *f.grid();
    let ratio = applied
        .space_values()
        .iter()
        .zip(mf.iter().zip(&mg))
        .map(|(v, (a, b))| {
            let den = norm * a * b;
            if den < 1e-300 {
                Complex64::default()
            } else {
                Complex64::new(v.norm() / den, 0.0)
            }
        })
        .collect();
    Ok(SpectralField::from_space(grid, ratio))
}
