//! (Quasi-)norms: Lebesgue, mixed time-space, homogeneous Sobolev,
//! Besov, Triebel-Lizorkin, the mixed Hardy norm, the discrete
//! Hardy-Littlewood maximal operator over centered dyadic cubes, and
//! the vector-valued maximal-inequality ratio check.

use serde::{Deserialize, Serialize};

use num_complex::Complex64;

use crate::error::{BilapError, Result};
use crate::field::SpectralField;
use crate::lp::{lp_piece, square_function, LPFamily, TranslationIndex};
use crate::operators::{apply_linear, RadialMultiplier};

/// Exponent/order bundle for an inequality sweep, with the Hölder and
/// smoothness-gate constraints checked at load.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentTuple {
    pub p: f64,
    pub q: f64,
    pub p1: f64,
    pub q1: f64,
    pub p2: f64,
    pub q2: f64,
    pub s: f64,
    pub nu: f64,
}

impl ExponentTuple {
    /// Check the Hölder relations 1/p = 1/p1 + 1/p2 (and the q version)
    /// and the smoothness gate: s an even natural number, or
    /// s > max(0, d/p - d) (plus the d/q - d term in mixed mode).
    pub fn validate(&self, d: usize, mixed: bool) -> Result<()> {
        for (name, v) in [
            ("p", self.p),
            ("q", self.q),
            ("p1", self.p1),
            ("q1", self.q1),
            ("p2", self.p2),
            ("q2", self.q2),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(BilapError::ConfigError(format!(
                    "exponent {name} must be finite and positive, got {v}"
                )));
            }
        }
        let holder_p = (1.0 / self.p - 1.0 / self.p1 - 1.0 / self.p2).abs();
        if holder_p > 1e-9 {
            return Err(BilapError::ConfigError(format!(
                "Hoelder relation violated: 1/{} != 1/{} + 1/{}",
                self.p, self.p1, self.p2
            )));
        }
        let holder_q = (1.0 / self.q - 1.0 / self.q1 - 1.0 / self.q2).abs();
        if holder_q > 1e-9 {
            return Err(BilapError::ConfigError(format!(
                "Hoelder relation violated: 1/{} != 1/{} + 1/{}",
                self.q, self.q1, self.q2
            )));
        }
        let even_natural = self.s >= 0.0
            && (self.s / 2.0 - (self.s / 2.0).round()).abs() < 1e-12;
        let d = d as f64;
        let mut gate = (d / self.p - d).max(0.0);
        if mixed {
            gate = gate.max(d / self.q - d);
        }
        if !even_natural && self.s <= gate {
            return Err(BilapError::ConfigError(format!(
                "smoothness gate violated: s = {} must exceed {gate}",
                self.s
            )));
        }
        Ok(())
    }
}

/// `(sum |f|^p cell_volume)^{1/p}`.
pub fn lebesgue_norm(f: &SpectralField, p: f64) -> f64 {
    assert!(p > 0.0, "Lebesgue exponent must be positive");
    let cell = f.grid().cell_volume();
    (f.space_values().iter().map(|v| v.norm().powf(p)).sum::<f64>() * cell).powf(1.0 / p)
}

/// Iterated norm on d = 2: inner q-sum over axis 1 (space) per row,
/// outer p-sum over axis 0 (time).
pub fn mixed_norm(f: &SpectralField, p: f64, q: f64) -> Result<f64> {
    if f.grid().dim() != 2 {
        return Err(BilapError::DimensionError { required: 2, actual: f.grid().dim() });
    }
    assert!(p > 0.0 && q > 0.0, "mixed exponents must be positive");
    let n = f.grid().points_per_axis();
    let h = f.grid().spacing();
    let vals = f.space_values();
    let mut outer = 0.0;
    for t in 0..n {
        let inner: f64 = vals[t * n..(t + 1) * n].iter().map(|v| v.norm().powf(q)).sum::<f64>() * h;
        outer += inner.powf(p / q);
    }
    Ok((outer * h).powf(1.0 / p))
}

/// Homogeneous Sobolev (quasi-)norm: Lebesgue norm of the fractional
/// derivative.
pub fn hom_sobolev_norm(f: &SpectralField, s: f64, p: f64) -> f64 {
    lebesgue_norm(&apply_linear(RadialMultiplier::FractionalDerivative(s), f), p)
}

/// Besov norm: `( sum_j (2^{js} ||piece_j f||_p)^q )^{1/q}` over the
/// family's scales.
pub fn besov_norm(f: &SpectralField, s: f64, p: f64, q: f64, fam: &LPFamily) -> f64 {
    let mut acc = 0.0;
    for j in fam.scales() {
        let t = 2.0f64.powi(j).powf(s) * lebesgue_norm(&lp_piece(f, j, fam), p);
        acc += t.powf(q);
    }
    acc.powf(1.0 / q)
}

/// Triebel-Lizorkin norm: Lebesgue p-norm of the pointwise weighted
/// dyadic q-sum.
pub fn triebel_lizorkin_norm(f: &SpectralField, s: f64, p: f64, q: f64, fam: &LPFamily) -> f64 {
    let grid = *f.grid();
    let mut acc = vec![0.0f64; grid.len()];
    for j in fam.scales() {
        let piece = lp_piece(f, j, fam);
        let w = 2.0f64.powi(j).powf(s);
        for (a, v) in acc.iter_mut().zip(piece.space_values()) {
            *a += (w * v.norm()).powf(q);
        }
    }
    let field = SpectralField::from_space(
        grid,
        acc.into_iter().map(|a| Complex64::new(a.powf(1.0 / q), 0.0)).collect(),
    );
    lebesgue_norm(&field, p)
}

/// Mixed Hardy (quasi-)norm: mixed norm of the Littlewood-Paley square
/// function.
pub fn hardy_mixed_norm(f: &SpectralField, p: f64, q: f64, fam: &LPFamily) -> Result<f64> {
    let sq = square_function(f, fam, TranslationIndex::zero(), 0.0);
    mixed_norm(&sq, p, q)
}

/// Sliding window sums of `|f|` over centered cubes with half-width
/// `2^r` cells, for r = 0 .. log2(N/2), via prefix sums on a 3x tiled
/// copy (periodic wrap).  Returns one real field per level.
fn cube_averages(f: &SpectralField) -> Vec<Vec<f64>> {
    let grid = *f.grid();
    let n = grid.points_per_axis();
    let levels = (n as f64 / 2.0).log2() as i32;
    let vals = f.space_values();
    match grid.dim() {
        1 => {
            let m = 3 * n;
            let mut prefix = vec![0.0f64; m + 1];
            for i in 0..m {
                prefix[i + 1] = prefix[i] + vals[i % n].norm();
            }
            (0..=levels)
                .map(|r| {
                    let h = 1usize << r;
                    let count = (2 * h + 1) as f64;
                    (0..n)
                        .map(|i| {
                            let c = i + n;
                            (prefix[c + h + 1] - prefix[c - h]) / count
                        })
                        .collect()
                })
                .collect()
        }
        _ => {
            let m = 3 * n;
            // prefix[(r)*(m+1) + c] = sum of the tiled |f| over [0,r) x [0,c).
            let mut prefix = vec![0.0f64; (m + 1) * (m + 1)];
            for r in 0..m {
                let mut row = 0.0;
                for c in 0..m {
                    row += vals[(r % n) * n + (c % n)].norm();
                    prefix[(r + 1) * (m + 1) + (c + 1)] = prefix[r * (m + 1) + (c + 1)] + row;
                }
            }
            let rect = |r0: usize, r1: usize, c0: usize, c1: usize| {
                prefix[r1 * (m + 1) + c1] - prefix[r0 * (m + 1) + c1] - prefix[r1 * (m + 1) + c0]
                    + prefix[r0 * (m + 1) + c0]
            };
            (0..=levels)
                .map(|lev| {
                    let h = 1usize << lev;
                    let count = ((2 * h + 1) * (2 * h + 1)) as f64;
                    let mut out = vec![0.0f64; n * n];
                    for r in 0..n {
                        for c in 0..n {
                            let (rr, cc) = (r + n, c + n);
                            out[r * n + c] =
                                rect(rr - h, rr + h + 1, cc - h, cc + h + 1) / count;
                        }
                    }
                    out
                })
                .collect()
        }
    }
}

/// Discrete Hardy-Littlewood maximal function: pointwise max over
/// centered cubes with dyadic half-widths `(L/N) 2^r`, `r = 0 ..
/// log2(N/2)`, of the cube average of `|f|` (periodic wrap).
pub fn maximal_function(f: &SpectralField) -> SpectralField {
    let grid = *f.grid();
    let levels = cube_averages(f);
    let mut best: Vec<f64> = f.space_values().iter().map(|v| v.norm()).collect();
    for level in &levels {
        for (b, &v) in best.iter_mut().zip(level) {
            *b = b.max(v);
        }
    }
    SpectralField::from_space(grid, best.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
}

/// Vector-valued maximal-inequality ratio on d = 2:
/// `|| (sum_j M(f_j)^r)^{1/r} ||_{L^p L^q} / || (sum_j |f_j|^r)^{1/r}
/// ||_{L^p L^q}`.
pub fn fefferman_stein_check(fs: &[SpectralField], p: f64, q: f64, r: f64) -> Result<f64> {
    for (name, v) in [("p", p), ("q", q), ("r", r)] {
        if !(v > 1.0 && v.is_finite()) {
            return Err(BilapError::DomainError(format!(
                "exponent {name} must lie in (1, inf), got {v}"
            )));
        }
    }
    let first = fs
        .first()
        .ok_or_else(|| BilapError::DegenerateInput("empty field vector".into()))?;
    let grid = *first.grid();
    if grid.dim() != 2 {
        return Err(BilapError::DimensionError { required: 2, actual: grid.dim() });
    }
    let mut num = vec![0.0f64; grid.len()];
    let mut den = vec![0.0f64; grid.len()];
    for f in fs {
        assert_eq!(f.grid(), &grid, "all fields must share a grid");
        let mf = maximal_function(f);
        for ((a, b), (mv, fv)) in
            num.iter_mut().zip(den.iter_mut()).zip(mf.space_values().iter().zip(f.space_values()))
        {
            *a += mv.norm().powf(r);
            *b += fv.norm().powf(r);
        }
    }
    let pack = |v: Vec<f64>| {
        SpectralField::from_space(
            grid,
            v.into_iter().map(|a| Complex64::new(a.powf(1.0 / r), 0.0)).collect(),
        )
    };
    let lhs = mixed_norm(&pack(num), p, q)?;
    let rhs = mixed_norm(&pack(den), p, q)?;
    if rhs < 1e-14 {
        return Err(BilapError::DegenerateInput("zero denominator norm".into()));
    }
    Ok(lhs / rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::TorusGrid;
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
    fn exponent_tuple_validation() {
        let good = ExponentTuple { p: 1.0, q: 1.0, p1: 2.0, q1: 2.0, p2: 2.0, q2: 2.0, s: 2.0, nu: 0.0 };
        assert!(good.validate(1, false).is_ok());
        let bad_holder = ExponentTuple { p: 1.0, q: 1.0, p1: 2.0, q1: 2.0, p2: 3.0, q2: 2.0, s: 2.0, nu: 0.0 };
        assert!(bad_holder.validate(1, false).is_err());
        // s = 0.1 with p = 0.5 (gate d/p - d = 1 for d = 1) fails; s = 1.5 passes.
        let gated = ExponentTuple { p: 0.5, q: 0.5, p1: 1.0, q1: 1.0, p2: 1.0, q2: 1.0, s: 0.1, nu: 0.0 };
        assert!(gated.validate(1, false).is_err());
        let open = ExponentTuple { s: 1.5, ..gated };
        assert!(open.validate(1, false).is_ok());
        // s = 2 is an even natural: always admissible.
        let even = ExponentTuple { s: 2.0, ..gated };
        assert!(even.validate(1, false).is_ok());
    }

    #[test]
    fn plateau_norm_is_measure_power() {
        let grid = TorusGrid::new(1, 64, 8.0).unwrap();
        // height 1 on [0, 2): measure 2.
        let f = SpectralField::from_fn(grid, |x| {
            Complex64::new(if x[0] < 2.0 { 1.0 } else { 0.0 }, 0.0)
        });
        for p in [0.5, 1.0, 2.0, 3.0] {
            assert!((lebesgue_norm(&f, p) - 2.0f64.powf(1.0 / p)).abs() < 1e-12);
        }
    }

    #[test]
    fn gaussian_l2_norm_closed_form() {
        let grid = TorusGrid::new(1, 256, 16.0).unwrap();
        let f = SpectralField::from_fn(grid, |x| {
            Complex64::new((-(x[0] - 8.0).powi(2)).exp(), 0.0)
        });
        let expect = (PI / 2.0).powf(0.25);
        assert!((lebesgue_norm(&f, 2.0) - expect).abs() < 1e-8);
    }

    #[test]
    fn norm_is_homogeneous() {
        let grid = TorusGrid::new(1, 32, 1.0).unwrap();
        let f = random_field(grid, 1);
        let c = Complex64::new(-2.5, 1.0);
        for p in [0.7, 1.0, 2.0] {
            let a = lebesgue_norm(&f.scale(c), p);
            let b = c.norm() * lebesgue_norm(&f, p);
            assert!((a - b).abs() < 1e-10 * b);
        }
    }

    #[test]
    fn r_triangle_inequality() {
        let grid = TorusGrid::new(1, 32, 1.0).unwrap();
        for seed in 0..20 {
            let f = random_field(grid, 2 * seed);
            let g = random_field(grid, 2 * seed + 1);
            for p in [0.5f64, 0.8, 1.0, 2.0] {
                let r = p.min(1.0);
                let lhs = lebesgue_norm(&f.add(&g), p).powf(r);
                let rhs = lebesgue_norm(&f, p).powf(r) + lebesgue_norm(&g, p).powf(r);
                assert!(lhs <= rhs * (1.0 + 1e-12), "p = {p} seed {seed}");
            }
        }
    }

    #[test]
    fn mixed_norm_gaussian_closed_form() {
        let grid = TorusGrid::new(2, 256, 16.0).unwrap();
        let f = SpectralField::from_fn(grid, |x| {
            Complex64::new((-(x[0] - 8.0).powi(2) - (x[1] - 8.0).powi(2)).exp(), 0.0)
        });
        for (p, q) in [(2.0, 3.0), (1.5, 1.5), (3.0, 0.75)] {
            let expect = (PI / q).powf(1.0 / (2.0 * q)) * (PI / p).powf(1.0 / (2.0 * p));
            let got = mixed_norm(&f, p, q).unwrap();
            assert!((got - expect).abs() < 1e-6, "(p,q)=({p},{q}): {got} vs {expect}");
        }
    }

    #[test]
    fn mixed_norm_collapses_when_exponents_match() {
        let grid = TorusGrid::new(2, 16, 2.0).unwrap();
        let f = random_field(grid, 3);
        for p in [0.75, 1.0, 2.0, 4.0] {
            let a = mixed_norm(&f, p, p).unwrap();
            let b = lebesgue_norm(&f, p);
            assert!((a - b).abs() < 1e-12 * (1.0 + b), "p = {p}");
        }
    }

    #[test]
    fn mixed_norm_single_row_support() {
        let grid = TorusGrid::new(2, 16, 2.0).unwrap();
        let n = grid.points_per_axis();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut vals = vec![Complex64::default(); grid.len()];
        for v in vals.iter_mut().take(2 * n).skip(n) {
            *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let f = SpectralField::from_space(grid, vals.clone());
        let (p, q) = (1.5, 3.0);
        let h = grid.spacing();
        let row_q = (vals[n..2 * n].iter().map(|v| v.norm().powf(q)).sum::<f64>() * h)
            .powf(1.0 / q);
        let expect = h.powf(1.0 / p) * row_q;
        assert!((mixed_norm(&f, p, q).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn mixed_norm_needs_two_axes() {
        let grid = TorusGrid::new(1, 16, 1.0).unwrap();
        let f = random_field(grid, 0);
        assert!(matches!(
            mixed_norm(&f, 2.0, 2.0),
            Err(BilapError::DimensionError { required: 2, .. })
        ));
    }

    #[test]
    fn sobolev_reduces_to_lebesgue_at_zero_order() {
        let grid = TorusGrid::new(1, 32, 1.0).unwrap();
        let f = random_field(grid, 5).mean_project();
        for p in [1.5, 2.0] {
            let a = hom_sobolev_norm(&f, 0.0, p);
            let b = lebesgue_norm(&f, p);
            assert!((a - b).abs() < 1e-12 * b);
        }
    }

    #[test]
    fn sobolev_single_mode_eigenvalue() {
        let grid = TorusGrid::new(1, 32, 2.0 * PI).unwrap();
        let f = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, 3.0 * x[0]));
        let (s, p) = (1.3, 2.5);
        let expect = 3.0f64.powf(s) * grid.period().powf(1.0 / p);
        assert!((hom_sobolev_norm(&f, s, p) - expect).abs() < 1e-10);
    }

    #[test]
    fn besov_equals_triebel_lizorkin_when_inner_exponents_match() {
        let grid = TorusGrid::new(1, 64, 3.0).unwrap();
        let fam = LPFamily::new(grid);
        let f = random_field(grid, 7).band_limit().mean_project();
        for (s, p) in [(0.5, 2.0), (1.0, 1.5)] {
            let a = besov_norm(&f, s, p, p, &fam);
            let b = triebel_lizorkin_norm(&f, s, p, p, &fam);
            assert!((a - b).abs() < 1e-12 * (1.0 + b), "(s,p)=({s},{p})");
        }
    }

    #[test]
    fn dyadic_norms_increase_with_order_above_unit_frequency() {
        let grid = TorusGrid::new(1, 64, 2.0 * PI).unwrap();
        let fam = LPFamily::new(grid);
        // Spectrum on |k| in [2, 10]: all above 1.
        let f = random_field(grid, 8)
            .map_freq(|i, c| {
                let k = grid.frequency(i).k[0].abs();
                if (2..=10).contains(&k) {
                    c
                } else {
                    Complex64::default()
                }
            });
        let mut last_b = 0.0;
        let mut last_t = 0.0;
        for s in [0.0, 0.5, 1.0, 1.5] {
            let b = besov_norm(&f, s, 2.0, 2.0, &fam);
            let t = triebel_lizorkin_norm(&f, s, 2.0, 1.5, &fam);
            assert!(b > last_b && t > last_t, "s = {s}");
            last_b = b;
            last_t = t;
        }
    }

    #[test]
    fn sobolev_comparable_to_triebel_lizorkin_q2() {
        let grid = TorusGrid::new(1, 128, 2.0 * PI).unwrap();
        let fam = LPFamily::new(grid);
        let s = 0.8;
        for p in [1.5, 2.0, 4.0] {
            for seed in 0..10 {
                let f = random_field(grid, 100 + seed).band_limit().mean_project();
                let a = hom_sobolev_norm(&f, s, p);
                let b = triebel_lizorkin_norm(&f, s, p, 2.0, &fam);
                let ratio = a / b;
                assert!(
                    (0.1..10.0).contains(&ratio),
                    "p = {p} seed {seed}: ratio {ratio}"
                );
            }
        }
    }

    #[test]
    fn maximal_of_constant_is_constant() {
        let grid = TorusGrid::new(2, 16, 2.0).unwrap();
        let f = SpectralField::from_fn(grid, |_| Complex64::new(3.0, 0.0));
        let m = maximal_function(&f);
        for v in m.space_values() {
            assert!((v.re - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn maximal_dominates_pointwise() {
        for dim in [1usize, 2] {
            let grid = TorusGrid::new(dim, 16, 1.0).unwrap();
            let f = random_field(grid, 9);
            let m = maximal_function(&f);
            for (a, b) in m.space_values().iter().zip(f.space_values()) {
                assert!(a.re >= b.norm() - 1e-12);
            }
        }
    }

    #[test]
    fn maximal_matches_brute_force() {
        for dim in [1usize, 2] {
            let grid = TorusGrid::new(dim, 32, 4.0).unwrap();
            let f = random_field(grid, 10);
            let m = maximal_function(&f);
            let n = grid.points_per_axis() as i64;
            let levels = (n as f64 / 2.0).log2() as i32;
            let vals = f.space_values();
            for flat in 0..grid.len() {
                let axes = grid.axis_indices(flat);
                let mut best = vals[flat].norm();
                for r in 0..=levels {
                    let h = 1i64 << r;
                    let mut sum = 0.0;
                    let mut count = 0.0;
                    for dt in -h..=h {
                        if dim == 1 {
                            let i = (axes[0] as i64 + dt).rem_euclid(n) as usize;
                            sum += vals[i].norm();
                            count += 1.0;
                        } else {
                            for dx in -h..=h {
                                let i = (axes[0] as i64 + dt).rem_euclid(n) as usize;
                                let j = (axes[1] as i64 + dx).rem_euclid(n) as usize;
                                sum += vals[i * n as usize + j].norm();
                                count += 1.0;
                            }
                        }
                    }
                    best = best.max(sum / count);
                }
                let got = m.space_values()[flat].re;
                assert!((got - best).abs() < 1e-12, "d={dim} flat={flat}: {got} vs {best}");
            }
        }
    }

    #[test]
    fn maximal_is_sublinear() {
        let grid = TorusGrid::new(1, 32, 1.0).unwrap();
        let f = random_field(grid, 11);
        let g = random_field(grid, 12);
        let mfg = maximal_function(&f.add(&g));
        let mf = maximal_function(&f);
        let mg = maximal_function(&g);
        for ((a, b), c) in mfg.space_values().iter().zip(mf.space_values()).zip(mg.space_values())
        {
            assert!(a.re <= b.re + c.re + 1e-12);
        }
    }

    #[test]
    fn spike_maximal_profile() {
        // Single spike: the cube average at distance delta is
        // height / count(r*) where r* is the smallest level reaching it.
        let grid = TorusGrid::new(1, 32, 1.0).unwrap();
        let mut vals = vec![Complex64::default(); grid.len()];
        vals[0] = Complex64::new(1.0, 0.0);
        let f = SpectralField::from_space(grid, vals);
        let m = maximal_function(&f);
        for i in 1..16usize {
            let delta = i.min(32 - i) as i64;
            let levels = 4; // log2(32/2)
            let mut best: f64 = 0.0;
            for r in 0..=levels {
                let h = 1i64 << r;
                if h >= delta {
                    best = best.max(1.0 / (2 * h + 1) as f64);
                }
            }
            assert!((m.space_values()[i].re - best).abs() < 1e-12, "i = {i}");
        }
    }

    #[test]
    fn fefferman_stein_constant_field_ratio_one() {
        let grid = TorusGrid::new(2, 16, 1.0).unwrap();
        let f = SpectralField::from_fn(grid, |_| Complex64::new(2.0, 0.0));
        let ratio = fefferman_stein_check(&[f], 2.0, 3.0, 2.0).unwrap();
        assert!((ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fefferman_stein_rejects_bad_exponents() {
        let grid = TorusGrid::new(2, 16, 1.0).unwrap();
        let f = random_field(grid, 13);
        assert!(fefferman_stein_check(&[f.clone()], 1.0, 2.0, 2.0).is_err());
        assert!(fefferman_stein_check(&[f], 2.0, 2.0, 0.5).is_err());
    }

    #[test]
    fn fefferman_stein_translation_invariance() {
        let grid = TorusGrid::new(2, 32, 8.0).unwrap();
        let wrap = |d: f64| {
            let l = grid.period();
            let d = d.rem_euclid(l);
            d.min(l - d)
        };
        let bump = |c: f64| {
            SpectralField::from_fn(grid, move |x| {
                Complex64::new((-wrap(x[0] - c).powi(2) - wrap(x[1] - c).powi(2)).exp(), 0.0)
            })
        };
        let a = fefferman_stein_check(&[bump(3.0)], 2.0, 3.0, 2.0).unwrap();
        let b = fefferman_stein_check(&[bump(5.0)], 2.0, 3.0, 2.0).unwrap();
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}
