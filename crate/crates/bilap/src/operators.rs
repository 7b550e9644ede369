//! Linear multiplier calculus (fractional derivative, Riesz potential,
//! inhomogeneous Bessel multiplier, Riesz transforms) and bilinear
//! multiplier application, including the bilinear fractional integral.

use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{BilapError, Result};
use crate::field::SpectralField;
use crate::grid::{vec_norm, TorusGrid};

/// A radial (or componentwise) Fourier multiplier acting on one field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialMultiplier {
    /// `|xi|^s`; zero mode zeroed (quotient modulo polynomials).
    FractionalDerivative(f64),
    /// `|xi|^{-nu}`; zero mode zeroed.
    RieszPotential(f64),
    /// `(1 + |xi|^2)^{s/2}`; zero mode kept.
    Inhomogeneous(f64),
    /// `i xi_j / |xi|`; zero mode zeroed.  (With synthesis convention
    /// `e^{+i x xi}` this is the operator whose multiplier reads
    /// `-i xi_j / |xi|` under the opposite sign convention; the sign is
    /// fixed so that it equals the spectral partial derivative of the
    /// order-1 potential.)
    RieszTransform(usize),
    /// `i xi_j` (spectral partial derivative); zero mode zeroed.
    Partial(usize),
}

impl RadialMultiplier {
    /// Multiplier value at a nonzero lattice frequency.
    fn symbol(&self, xi: &[f64]) -> Complex64 {
        match *self {
            RadialMultiplier::FractionalDerivative(s) => {
                Complex64::new(vec_norm(xi).powf(s), 0.0)
            }
            RadialMultiplier::RieszPotential(nu) => Complex64::new(vec_norm(xi).powf(-nu), 0.0),
            RadialMultiplier::Inhomogeneous(s) => {
                let w = xi.iter().map(|c| c * c).sum::<f64>();
                Complex64::new((1.0 + w).powf(s / 2.0), 0.0)
            }
            RadialMultiplier::RieszTransform(j) => {
                Complex64::new(0.0, xi[j] / vec_norm(xi))
            }
            RadialMultiplier::Partial(j) => Complex64::new(0.0, xi[j]),
        }
    }

    /// Whether the zero-frequency coefficient survives.
    pub fn keeps_zero_mode(&self) -> bool {
        matches!(self, RadialMultiplier::Inhomogeneous(_))
    }
}

/// Apply a linear multiplier on the frequency side.
pub fn apply_linear(mult: RadialMultiplier, f: &SpectralField) -> SpectralField {
    if let RadialMultiplier::RieszTransform(j) | RadialMultiplier::Partial(j) = mult {
        assert!(j < f.grid().dim(), "axis {j} out of range for d = {}", f.grid().dim());
    }
    let grid = *f.grid();
    f.map_freq(|i, c| {
        let fr = grid.frequency(i);
        if fr.is_zero() {
            if mult.keeps_zero_mode() {
                mult.symbol(fr.xi_slice()) * c
            } else {
                Complex64::default()
            }
        } else {
            mult.symbol(fr.xi_slice()) * c
        }
    })
}

type Evaluator = dyn Fn(&[f64], &[f64]) -> Complex64 + Send + Sync;

/// A bilinear multiplier m(xi, eta), rule-defined or tabulated, with
/// its homogeneity order (-nu) and a registry label.
#[derive(Clone)]
pub struct BilinearSymbol {
    evaluator: Arc<Evaluator>,
    order: f64,
    label: String,
}

impl std::fmt::Debug for BilinearSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BilinearSymbol")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl BilinearSymbol {
    pub fn new(
        label: impl Into<String>,
        order: f64,
        evaluator: impl Fn(&[f64], &[f64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        BilinearSymbol { evaluator: Arc::new(evaluator), order, label: label.into() }
    }

    pub fn eval(&self, xi: &[f64], eta: &[f64]) -> Complex64 {
        (self.evaluator)(xi, eta)
    }

    /// Homogeneity order, `-nu`.
    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The trivial symbol m = 1 (bilinear application degenerates to
    /// the pointwise product).
    pub fn one() -> Self {
        BilinearSymbol::new("one", 0.0, |_, _| Complex64::new(1.0, 0.0))
    }

    /// `(|xi|^2 + |eta|^2)^{-nu/2}`, the bilinear fractional-integral
    /// symbol; value 0 at the origin.
    pub fn cm_nu(nu: f64) -> Self {
        BilinearSymbol::new(format!("cm_nu:{nu}"), -nu, move |xi, eta| {
            let w = vec_norm(xi).powi(2) + vec_norm(eta).powi(2);
            if w == 0.0 {
                Complex64::default()
            } else {
                Complex64::new(w.powf(-nu / 2.0), 0.0)
            }
        })
    }

    /// `(|xi| + |eta|)^{-nu}`; value 0 at the origin.
    pub fn ks_frac(nu: f64) -> Self {
        BilinearSymbol::new(format!("ks_frac:{nu}"), -nu, move |xi, eta| {
            let w = vec_norm(xi) + vec_norm(eta);
            if w == 0.0 {
                Complex64::default()
            } else {
                Complex64::new(w.powf(-nu), 0.0)
            }
        })
    }

    /// Tabulated symbol on a (xi, eta) product grid stored in the field
    /// binary format: a dim-2 field whose axis 0 indexes xi and axis 1
    /// indexes eta on the same frequency lattice.  Evaluation looks up
    /// exact lattice frequencies; off-lattice arguments are rejected at
    /// lookup by rounding to the nearest lattice point.
    pub fn from_table(path: &Path) -> Result<Self> {
        let field = SpectralField::read_binary(path)?;
        if field.grid().dim() != 2 {
            return Err(BilapError::FormatError {
                path: path.display().to_string(),
                message: "symbol table must be a dim-2 product-grid field".into(),
            });
        }
        let grid = *field.grid();
        let values: Arc<Vec<Complex64>> = Arc::new(field.space_values().to_vec());
        let label = format!("table:{}", path.display());
        Ok(BilinearSymbol::new(label, 0.0, move |xi, eta| {
            let base = grid.base_freq();
            let kx = (xi[0] / base).round() as i64;
            let ke = (eta[0] / base).round() as i64;
            match (grid.axis_index(kx), grid.axis_index(ke)) {
                (Some(a), Some(b)) => values[grid.flat_index([a, b])],
                _ => Complex64::default(),
            }
        }))
    }

    /// Resolve a registry label: "one", "cm_nu:<nu>", "ks_frac:<nu>",
    /// "table:<path>".
    pub fn from_label(label: &str) -> Result<Self> {
        if label == "one" {
            return Ok(BilinearSymbol::one());
        }
        if let Some(rest) = label.strip_prefix("cm_nu:") {
            let nu: f64 = rest
                .parse()
                .map_err(|_| BilapError::ConfigError(format!("bad symbol label {label:?}")))?;
            return Ok(BilinearSymbol::cm_nu(nu));
        }
        if let Some(rest) = label.strip_prefix("ks_frac:") {
            let nu: f64 = rest
                .parse()
                .map_err(|_| BilapError::ConfigError(format!("bad symbol label {label:?}")))?;
            return Ok(BilinearSymbol::ks_frac(nu));
        }
        if let Some(rest) = label.strip_prefix("table:") {
            return BilinearSymbol::from_table(Path::new(rest));
        }
        Err(BilapError::ConfigError(format!("unknown symbol label {label:?}")))
    }

    /// Scan the lattice for the smallest C with
    /// `|m(xi,eta)| <= C (|xi|+|eta|)^{-nu}` (nu = -order), sampling a
    /// strided subset of frequency pairs.
    pub fn size_constant(&self, grid: &TorusGrid) -> f64 {
        let nu = -self.order;
        let stride = (grid.len() / 64).max(1);
        let mut c = 0.0f64;
        for i in (0..grid.len()).step_by(stride) {
            let fi = grid.frequency(i);
            for j in (0..grid.len()).step_by(stride) {
                let fj = grid.frequency(j);
                let w = fi.xi_norm() + fj.xi_norm();
                if w == 0.0 {
                    continue;
                }
                let v = self.eval(fi.xi_slice(), fj.xi_slice()).norm() * w.powf(nu);
                c = c.max(v);
            }
        }
        c
    }
}

/// Apply a bilinear multiplier: the output spectrum at zeta collects
/// `m(xi, eta) f^(xi) g^(eta)` over all lattice pairs with
/// `xi + eta = zeta` (no wraparound; pairs leaving the lattice are
/// dropped, exactly as in the dealiased product).  Cost is
/// O(|supp f^| * |supp g^|); exact spectral zeros are skipped.
pub fn apply_bilinear(
    m: &BilinearSymbol,
    f: &SpectralField,
    g: &SpectralField,
) -> Result<SpectralField> {
    assert_eq!(f.grid(), g.grid(), "operands must share a grid");
    f.check_band_limit()?;
    g.check_band_limit()?;
    let grid = *f.grid();

    let support = |field: &SpectralField| -> Vec<(usize, Complex64)> {
        field
            .freq_values()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() != 0.0)
            .map(|(i, &c)| (i, c))
            .collect()
    };
    let fs = support(f);
    let gs = support(g);

    let mut out = vec![Complex64::default(); grid.len()];
    for &(i, fc) in &fs {
        let fi = grid.frequency(i);
        for &(j, gc) in &gs {
            let fj = grid.frequency(j);
            let k0 = fi.k[0] + fj.k[0];
            let k1 = fi.k[1] + fj.k[1];
            let a0 = match grid.axis_index(k0) {
                Some(a) => a,
                None => continue,
            };
            let a1 = if grid.dim() == 2 {
                match grid.axis_index(k1) {
                    Some(a) => a,
                    None => continue,
                }
            } else {
                0
            };
            let w = m.eval(fi.xi_slice(), fj.xi_slice());
            if w.norm_sqr() == 0.0 {
                continue;
            }
            out[grid.flat_index([a0, a1])] += w * fc * gc;
        }
    }
    Ok(SpectralField::from_freq(grid, out))
}

/// Bilinear fractional integral: `apply_bilinear` with the symbol
/// `(|xi|^2 + |eta|^2)^{-nu/2}` and origin value 0.
pub fn bilinear_fractional(nu: f64, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    let bound = 2.0 * f.grid().dim() as f64;
    if !(nu > 0.0 && nu < bound) {
        return Err(BilapError::DomainError(format!(
            "smoothing order must lie in (0, {bound}), got {nu}"
        )));
    }
    apply_bilinear(&BilinearSymbol::cm_nu(nu), f, g)
}

/// Max grid deviations of the two commutation identities: fractional
/// derivative vs Riesz transform, and spectral partial of the order-1
/// potential vs Riesz transform.  Requires d = 2 (the transforms need
/// more than one axis to be nontrivial).
pub fn commutation_check(s: f64, j: usize, f: &SpectralField) -> Result<(f64, f64)> {
    if f.grid().dim() < 2 {
        return Err(BilapError::DimensionError { required: 2, actual: f.grid().dim() });
    }
    let ds = RadialMultiplier::FractionalDerivative(s);
    let rj = RadialMultiplier::RieszTransform(j);
    let lhs = apply_linear(ds, &apply_linear(rj, f));
    let rhs = apply_linear(rj, &apply_linear(ds, f));
    let dev_commute = lhs.max_abs_diff(&rhs);

    let i1 = RadialMultiplier::RieszPotential(1.0);
    let lhs2 = apply_linear(RadialMultiplier::Partial(j), &apply_linear(i1, f));
    let rhs2 = apply_linear(rj, f);
    let dev_gradient = lhs2.max_abs_diff(&rhs2);

    Ok((dev_commute, dev_gradient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::dealiased_product;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_band_limited(grid: TorusGrid, seed: u64) -> SpectralField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..grid.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        SpectralField::from_space(grid, values).band_limit()
    }

    #[test]
    fn unit_frequency_is_fixed_by_any_power() {
        let grid = TorusGrid::new(1, 32, 2.0 * PI).unwrap();
        let f = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, x[0]));
        for s in [0.5, 1.0, 2.7, -1.3] {
            let g = apply_linear(RadialMultiplier::FractionalDerivative(s), &f);
            assert!(f.max_abs_diff(&g) < 1e-12, "s = {s}");
        }
    }

    #[test]
    fn derivative_eigenvalue_on_single_mode() {
        let grid = TorusGrid::new(1, 32, 2.0 * PI).unwrap();
        let f = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, 2.0 * x[0]));
        let g = apply_linear(RadialMultiplier::FractionalDerivative(1.0), &f);
        let expect = f.scale(Complex64::new(2.0, 0.0));
        assert!(g.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn derivative_of_potential_lowers_order() {
        let grid = TorusGrid::new(1, 64, 3.0).unwrap();
        for seed in 0..10 {
            let f = random_band_limited(grid, seed).mean_project();
            let (s, nu) = (0.3, 0.8);
            let lhs = apply_linear(
                RadialMultiplier::FractionalDerivative(s),
                &apply_linear(RadialMultiplier::RieszPotential(nu), &f),
            );
            let rhs = apply_linear(RadialMultiplier::RieszPotential(nu - s), &f);
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn derivative_semigroup() {
        let grid = TorusGrid::new(1, 64, 1.0).unwrap();
        let f = random_band_limited(grid, 3).mean_project();
        let d = |s: f64, g: &SpectralField| {
            apply_linear(RadialMultiplier::FractionalDerivative(s), g)
        };
        let lhs = d(0.7, &d(1.1, &f));
        let rhs = d(1.8, &f);
        assert!(lhs.max_abs_diff(&rhs) / rhs.max_abs() < 1e-12);
    }

    #[test]
    fn commutation_identities_hold_in_2d() {
        let grid = TorusGrid::new(2, 16, 2.0).unwrap();
        for seed in 0..5 {
            let f = random_band_limited(grid, seed).mean_project();
            for j in 0..2 {
                let (a, b) = commutation_check(0.7, j, &f).unwrap();
                assert!(a < 1e-12 && b < 1e-12, "seed {seed} axis {j}: {a} {b}");
            }
        }
    }

    #[test]
    fn commutation_check_requires_two_axes() {
        let grid = TorusGrid::new(1, 16, 1.0).unwrap();
        let f = random_band_limited(grid, 0);
        assert!(matches!(
            commutation_check(1.0, 0, &f),
            Err(BilapError::DimensionError { required: 2, .. })
        ));
    }

    #[test]
    fn trivial_symbol_reproduces_product() {
        for dim in [1usize, 2] {
            let grid = TorusGrid::new(dim, 16, 2.0).unwrap();
            let f = random_band_limited(grid, 1);
            let g = random_band_limited(grid, 2);
            let h = apply_bilinear(&BilinearSymbol::one(), &f, &g).unwrap();
            let p = dealiased_product(&f, &g).unwrap();
            assert!(h.max_abs_diff(&p) < 1e-12, "d = {dim}");
        }
    }

    #[test]
    fn single_mode_pair_picks_up_symbol_value() {
        let grid = TorusGrid::new(1, 32, 2.0 * PI).unwrap();
        let f = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, 3.0 * x[0]));
        let g = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, 4.0 * x[0]));
        let m = BilinearSymbol::cm_nu(0.5);
        let h = apply_bilinear(&m, &f, &g).unwrap();
        let weight = (9.0f64 + 16.0).powf(-0.25);
        let expect = SpectralField::from_fn(grid, |x| {
            Complex64::from_polar(weight, 7.0 * x[0])
        });
        assert!(h.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn matches_brute_force_double_sum() {
        let grid = TorusGrid::new(1, 32, 2.0 * PI).unwrap();
        let f = random_band_limited(grid, 5);
        let g = random_band_limited(grid, 6);
        let m = BilinearSymbol::cm_nu(0.7);
        let h = apply_bilinear(&m, &f, &g).unwrap();
        // Naive sum over all lattice pairs, grouped nowhere.
        let n = grid.points_per_axis() as i64;
        let fv = f.freq_values();
        let gv = g.freq_values();
        let mut brute = vec![Complex64::default(); grid.len()];
        for kx in -n / 2..n / 2 {
            for ke in -n / 2..n / 2 {
                let kz = kx + ke;
                if let (Some(a), Some(b), Some(c)) =
                    (grid.axis_index(kx), grid.axis_index(ke), grid.axis_index(kz))
                {
                    let xi = [grid.base_freq() * kx as f64];
                    let eta = [grid.base_freq() * ke as f64];
                    brute[c] += m.eval(&xi, &eta) * fv[a] * gv[b];
                }
            }
        }
        let hb = SpectralField::from_freq(grid, brute);
        assert!(h.max_abs_diff(&hb) < 1e-12);
    }

    #[test]
    fn bilinear_is_bilinear_and_symmetric() {
        let grid = TorusGrid::new(1, 32, 1.0).unwrap();
        let f = random_band_limited(grid, 7);
        let g = random_band_limited(grid, 8);
        let h = random_band_limited(grid, 9);
        let m = BilinearSymbol::ks_frac(0.4);
        let a = Complex64::new(0.3, -1.2);

        let lhs = apply_bilinear(&m, &f.scale(a).add(&g), &h).unwrap();
        let rhs = apply_bilinear(&m, &f, &h).unwrap().scale(a).add(&apply_bilinear(&m, &g, &h).unwrap());
        assert!(lhs.max_abs_diff(&rhs) < 1e-11);

        // ks_frac is symmetric in (xi, eta).
        let ab = apply_bilinear(&m, &f, &g).unwrap();
        let ba = apply_bilinear(&m, &g, &f).unwrap();
        assert!(ab.max_abs_diff(&ba) < 1e-11);
    }

    #[test]
    fn fractional_integral_eigen_pair() {
        let grid = TorusGrid::new(1, 32, 2.0 * PI).unwrap();
        let f = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, 2.0 * x[0]));
        let g = SpectralField::from_fn(grid, |x| Complex64::from_polar(1.0, 3.0 * x[0]));
        let h = bilinear_fractional(1.0, &f, &g).unwrap();
        let weight = (4.0f64 + 9.0).powf(-0.5);
        let expect =
            SpectralField::from_fn(grid, |x| Complex64::from_polar(weight, 5.0 * x[0]));
        assert!(h.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn fractional_integral_order_range() {
        let grid = TorusGrid::new(1, 16, 1.0).unwrap();
        let f = random_band_limited(grid, 1);
        let g = random_band_limited(grid, 2);
        assert!(matches!(bilinear_fractional(0.0, &f, &g), Err(BilapError::DomainError(_))));
        assert!(matches!(bilinear_fractional(2.0, &f, &g), Err(BilapError::DomainError(_))));
        assert!(bilinear_fractional(1.9, &f, &g).is_ok());
    }

    #[test]
    fn fractional_integral_matches_tabulated_symbol() {
        let grid = TorusGrid::new(1, 16, 2.0).unwrap();
        let f = random_band_limited(grid, 11);
        let g = random_band_limited(grid, 12);
        let nu = 0.6;

        // Tabulate the symbol on the product grid and round-trip it
        // through the registry's table path.
        let table_grid = TorusGrid::new(2, 16, 2.0).unwrap();
        let m = BilinearSymbol::cm_nu(nu);
        let values: Vec<Complex64> = (0..table_grid.len())
            .map(|flat| {
                let axes = table_grid.axis_indices(flat);
                let xi = [grid.base_freq() * grid.wavenumber(axes[0]) as f64];
                let eta = [grid.base_freq() * grid.wavenumber(axes[1]) as f64];
                m.eval(&xi, &eta)
            })
            .collect();
        let dir = std::env::temp_dir().join("bilap_symbol_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cm.blap");
        SpectralField::from_space(table_grid, values).write_binary(&path).unwrap();

        let mt = BilinearSymbol::from_label(&format!("table:{}", path.display())).unwrap();
        let direct = bilinear_fractional(nu, &f, &g).unwrap();
        let tabulated = apply_bilinear(&mt, &f, &g).unwrap();
        assert!(direct.max_abs_diff(&tabulated) < 1e-14);
    }

    #[test]
    fn symbol_homogeneity_under_dyadic_scaling() {
        for m in [BilinearSymbol::cm_nu(0.8), BilinearSymbol::ks_frac(0.8)] {
            let (xi, eta) = ([1.3], [-0.7]);
            let a = m.eval(&[2.0 * xi[0]], &[2.0 * eta[0]]);
            let b = m.eval(&xi, &eta) * 2.0f64.powf(m.order());
            assert!((a - b).norm() < 1e-14, "{}", m.label());
        }
    }

    #[test]
    fn size_constant_is_finite_and_order_consistent() {
        let grid = TorusGrid::new(1, 64, 2.0 * PI).unwrap();
        let c = BilinearSymbol::cm_nu(0.5).size_constant(&grid);
        assert!(c.is_finite() && c > 0.0);
        // (|xi|^2+|eta|^2)^{-nu/2} <= (max(|xi|,|eta|)^2)^{-nu/2}
        //                          <= 2^nu (|xi|+|eta|)^{-nu}.
        assert!(c <= 2.0f64.powf(0.5) + 1e-12);
    }

    #[test]
    fn registry_labels_resolve() {
        assert_eq!(BilinearSymbol::from_label("one").unwrap().label(), "one");
        assert_eq!(BilinearSymbol::from_label("cm_nu:0.5").unwrap().order(), -0.5);
        assert_eq!(BilinearSymbol::from_label("ks_frac:1.25").unwrap().order(), -1.25);
        assert!(BilinearSymbol::from_label("nope").is_err());
        assert!(BilinearSymbol::from_label("cm_nu:abc").is_err());
    }
}
