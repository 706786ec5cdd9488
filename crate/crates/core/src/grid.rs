//! Radial discretization for dimension d ≥ 5: Bessel-zero collocation nodes,
//! quadrature weights for the measure ω_{d−1} r^{d−1} dr, and the
//! quasi-discrete Hankel transform realizing the unitary radial Fourier
//! transform û(ρ) = ρ^{1−d/2} ∫_0^∞ u(r) J_ν(rρ) r^{d/2} dr, ν = d/2 − 1.
//!
//! Nodes are r_k = j_{ν,k} R / j_{ν,N+1} and ρ_k = j_{ν,k} / R, so the
//! transform kernel J_ν(j_m j_k / S) is symmetric in (m,k) and the forward
//! and inverse maps are exact inverses of each other up to the O(1e−13)
//! truncation level of the Fourier–Bessel expansion.
//!
//! The raw Fourier–Bessel (Parseval) weights integrate band-limited decaying
//! fields to machine precision but miss non-decaying integrands (the constant
//! function) at O(1/N) because of the boundary mismatch of the Dirichlet-type
//! basis. A minimal-norm correction supported on the outermost nodes enforces
//! exactness of low-degree polynomial moments, which restores the ball-volume
//! integral without touching integrals of fields that decay before r_max.

use crate::quad::adaptive_quad;
use crate::special::{bessel_j, bessel_order, bessel_zeros, sphere_surface};
use crate::EngineError;
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use sha2::{Digest, Sha256};
use std::sync::Arc;

/// Number of Chebyshev moment conditions enforced on each weight set.
const MOMENT_DEGREES: usize = 16;

#[derive(Debug, Clone)]
pub struct RadialGrid {
    pub dimension: u32,
    pub order: f64,
    pub n_modes: usize,
    pub r_max: f64,
    /// j_{ν,N+1}: the space-bandwidth product S = r_max · rho_max.
    pub band_product: f64,
    pub r_nodes: Vec<f64>,
    pub rho_nodes: Vec<f64>,
    /// Weights for ∫_{ℝ^d} f dx = Σ phys_weights[k] f(r_k) (ω_{d−1} included).
    pub phys_weights: Vec<f64>,
    /// Weights for ∫_{ℝ^d} g dξ = Σ spec_weights[k] g(ρ_k).
    pub spec_weights: Vec<f64>,
    /// Parseval weights for ∫_0^R f(r) r dr (no surface factor, no r^{d−2});
    /// these pair exactly with the transform kernel.
    w_r: Vec<f64>,
    w_rho: Vec<f64>,
    fwd: Array2<f64>,
    inv: Array2<f64>,
    /// Spectral radial-derivative kernel: ∂_r u(r_m) = Σ deriv[m][k] û(ρ_k).
    deriv: Array2<f64>,
    pub transform_matrix_hash: String,
}

impl RadialGrid {
    pub fn surface(&self) -> f64 {
        sphere_surface(self.dimension)
    }

    pub fn rho_max(&self) -> f64 {
        self.band_product / self.r_max
    }

    /// Spacing of the collocation nodes near the origin.
    pub fn origin_spacing(&self) -> f64 {
        self.r_nodes[1] - self.r_nodes[0]
    }
}

pub fn make_grid(d: u32, n_modes: usize, r_max: f64) -> Result<Arc<RadialGrid>, EngineError> {
    if d < 5 {
        return Err(EngineError::Grid(format!(
            "dimension d = {d} rejected: the radial regime here is d >= 5"
        )));
    }
    if n_modes < 16 {
        return Err(EngineError::Grid(format!(
            "n_modes = {n_modes} rejected: need at least 16 modes"
        )));
    }
    if !(r_max > 0.0) || !r_max.is_finite() {
        return Err(EngineError::Grid(format!("r_max = {r_max} must be positive and finite")));
    }

    let nu = bessel_order(d);
    let zeros = bessel_zeros(nu, n_modes + 1);
    let s = zeros[n_modes];
    let n = n_modes;
    let omega = sphere_surface(d);

    let r_nodes: Vec<f64> = zeros[..n].iter().map(|&j| j * r_max / s).collect();
    let rho_nodes: Vec<f64> = zeros[..n].iter().map(|&j| j / r_max).collect();

    let j1: Vec<f64> = zeros[..n].iter().map(|&j| bessel_j(nu + 1.0, j)).collect();
    let w_r: Vec<f64> =
        j1.iter().map(|&v| 2.0 * r_max * r_max / (s * s * v * v)).collect();
    let w_rho: Vec<f64> = j1.iter().map(|&v| 2.0 / (r_max * r_max * v * v)).collect();

    let dm2 = d as f64 - 2.0;
    let raw_phys: Vec<f64> = w_r
        .iter()
        .zip(&r_nodes)
        .map(|(&w, &r)| omega * w * r.powf(dm2))
        .collect();
    let raw_spec: Vec<f64> = w_rho
        .iter()
        .zip(&rho_nodes)
        .map(|(&w, &p)| omega * w * p.powf(dm2))
        .collect();

    let phys_weights = moment_corrected_weights(d, &raw_phys, &r_nodes, r_max)?;
    let spec_weights = moment_corrected_weights(d, &raw_spec, &rho_nodes, s / r_max)?;

    // Transform kernels. fwd[m][k] maps u(r_k) -> û(ρ_m):
    //   û(ρ_m) = ρ_m^{−ν} Σ_k w_r[k] (u_k r_k^ν) J_ν(j_m j_k / S)
    let mut fwd = Array2::<f64>::zeros((n, n));
    let mut inv = Array2::<f64>::zeros((n, n));
    let mut deriv = Array2::<f64>::zeros((n, n));
    for m in 0..n {
        for k in 0..n {
            let jj = bessel_j(nu, zeros[m] * zeros[k] / s);
            fwd[[m, k]] = jj * w_r[k] * r_nodes[k].powf(nu) / rho_nodes[m].powf(nu);
            inv[[m, k]] = jj * w_rho[k] * rho_nodes[k].powf(nu) / r_nodes[m].powf(nu);
        }
    }
    // ∂_r u(r_m) = −r_m^{−ν} Σ_k w_rho[k] û_k ρ_k^{ν+1} J_{ν+1}(r_m ρ_k)
    for m in 0..n {
        for k in 0..n {
            let jj = bessel_j(nu + 1.0, zeros[m] * zeros[k] / s);
            deriv[[m, k]] =
                -jj * w_rho[k] * rho_nodes[k].powf(nu + 1.0) / r_nodes[m].powf(nu);
        }
    }

    let mut hasher = Sha256::new();
    for &x in r_nodes.iter().chain(&rho_nodes).chain(&phys_weights).chain(&spec_weights) {
        hasher.update(x.to_le_bytes());
    }
    let transform_matrix_hash = format!("{:x}", hasher.finalize());

    Ok(Arc::new(RadialGrid {
        dimension: d,
        order: nu,
        n_modes,
        r_max,
        band_product: s,
        r_nodes,
        rho_nodes,
        phys_weights,
        spec_weights,
        w_r,
        w_rho,
        fwd,
        inv,
        deriv,
        transform_matrix_hash,
    }))
}

/// Shifted Chebyshev T_j on [0,1], evaluated by recurrence.
fn cheb01(j: usize, x: f64) -> f64 {
    let t = 2.0 * x - 1.0;
    if j == 0 {
        return 1.0;
    }
    let (mut a, mut b) = (1.0, t);
    for _ in 1..j {
        let c = 2.0 * t * b - a;
        a = b;
        b = c;
    }
    b
}

/// Minimal-norm boundary-patch correction enforcing
/// Σ w p(x_k) = ω_{d−1} x_max^d ∫_0^1 p(t x_max) t^{d−1} dt for Chebyshev p.
fn moment_corrected_weights(
    d: u32,
    raw: &[f64],
    nodes: &[f64],
    x_max: f64,
) -> Result<Vec<f64>, EngineError> {
    let n = raw.len();
    let omega = sphere_surface(d);
    let mut ncorr = (3 * MOMENT_DEGREES).min(n / 2);
    loop {
        let mut a = vec![vec![0.0; ncorr]; MOMENT_DEGREES];
        let mut b = vec![0.0; MOMENT_DEGREES];
        for j in 0..MOMENT_DEGREES {
            let exact = omega
                * x_max.powi(d as i32)
                * adaptive_quad(&|t: f64| cheb01(j, t) * t.powi(d as i32 - 1), 0.0, 1.0, 1e-14, 40);
            let mut qsum = 0.0;
            for (k, &x) in nodes.iter().enumerate() {
                qsum += raw[k] * cheb01(j, x / x_max);
            }
            b[j] = exact - qsum;
            for c in 0..ncorr {
                let k = n - ncorr + c;
                a[j][c] = cheb01(j, nodes[k] / x_max) * raw[k];
            }
        }
        // minimal-norm solution delta = D A^T (A D A^T)^{-1} b with D = diag(raw^2)
        // absorbed into the scaled columns above
        let mut gram = vec![vec![0.0; MOMENT_DEGREES]; MOMENT_DEGREES];
        for i in 0..MOMENT_DEGREES {
            for j in 0..MOMENT_DEGREES {
                gram[i][j] = (0..ncorr).map(|c| a[i][c] * a[j][c]).sum();
            }
        }
        let y = solve_dense(&mut gram, &b).ok_or_else(|| {
            EngineError::Grid("weight moment system is singular".to_string())
        })?;
        let mut w = raw.to_vec();
        for c in 0..ncorr {
            let k = n - ncorr + c;
            let delta: f64 = (0..MOMENT_DEGREES).map(|j| a[j][c] * y[j]).sum();
            w[k] += raw[k] * delta;
        }
        if w.iter().all(|&x| x > 0.0) {
            return Ok(w);
        }
        ncorr *= 2;
        if ncorr > n {
            return Err(EngineError::Grid(
                "weight correction could not keep weights positive".to_string(),
            ));
        }
    }
}

/// Gaussian elimination with partial pivoting for the small moment systems.
fn solve_dense(a: &mut [Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        x.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for c in col..n {
                a[row][c] -= f * a[col][c];
            }
            x[row] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        x[col] /= a[col][col];
        for row in 0..col {
            x[row] -= a[row][col] * x[col];
        }
    }
    Some(x)
}

/// Complex radial profile sampled on the collocation nodes.
#[derive(Debug, Clone)]
pub struct PhysicalField {
    pub grid: Arc<RadialGrid>,
    pub values: Vec<Complex64>,
}

/// Complex radial profile sampled on the spectral nodes.
#[derive(Debug, Clone)]
pub struct SpectralField {
    pub grid: Arc<RadialGrid>,
    pub values: Vec<Complex64>,
}

impl PhysicalField {
    pub fn new(grid: Arc<RadialGrid>, values: Vec<Complex64>) -> Result<Self, EngineError> {
        if values.len() != grid.n_modes {
            return Err(EngineError::Shape {
                expected: grid.n_modes,
                got: values.len(),
            });
        }
        if !values.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            return Err(EngineError::NonFinite);
        }
        Ok(Self { grid, values })
    }

    pub fn from_profile(grid: &Arc<RadialGrid>, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.r_nodes.iter().map(|&r| f(r)).collect();
        Self { grid: grid.clone(), values }
    }

    pub fn from_real_profile(grid: &Arc<RadialGrid>, f: impl Fn(f64) -> f64) -> Self {
        Self::from_profile(grid, |r| Complex64::new(f(r), 0.0))
    }

    pub fn zeros(grid: &Arc<RadialGrid>) -> Self {
        Self { grid: grid.clone(), values: vec![Complex64::default(); grid.n_modes] }
    }

    pub fn scaled(&self, a: Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| a * v).collect(),
        }
    }

    pub fn conjugated(&self) -> Self {
        Self { grid: self.grid.clone(), values: self.values.iter().map(|v| v.conj()).collect() }
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn l2_norm(&self) -> f64 {
        integrate_radial_real(
            &self.values.iter().map(|v| v.norm_sqr()).collect::<Vec<_>>(),
            &self.grid,
            Side::Physical,
        )
        .sqrt()
    }
}

impl SpectralField {
    pub fn zeros(grid: &Arc<RadialGrid>) -> Self {
        Self { grid: grid.clone(), values: vec![Complex64::default(); grid.n_modes] }
    }

    pub fn l2_norm(&self) -> f64 {
        integrate_radial_real(
            &self.values.iter().map(|v| v.norm_sqr()).collect::<Vec<_>>(),
            &self.grid,
            Side::Spectral,
        )
        .sqrt()
    }
}

/// Which node set (and measure) an integrand lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Physical,
    Spectral,
}

/// ∫_{ℝ^d} f dx (or dξ) by the grid quadrature; `f` holds node samples.
pub fn integrate_radial(f: &[Complex64], grid: &RadialGrid, side: Side) -> Result<Complex64, EngineError> {
    if f.len() != grid.n_modes {
        return Err(EngineError::Shape { expected: grid.n_modes, got: f.len() });
    }
    let w = match side {
        Side::Physical => &grid.phys_weights,
        Side::Spectral => &grid.spec_weights,
    };
    let mut acc = Complex64::default();
    for (v, &wk) in f.iter().zip(w) {
        acc += v * wk;
    }
    Ok(acc)
}

/// Real-sample convenience wrapper over [`integrate_radial`].
pub fn integrate_radial_real(f: &[f64], grid: &RadialGrid, side: Side) -> f64 {
    let w = match side {
        Side::Physical => &grid.phys_weights,
        Side::Spectral => &grid.spec_weights,
    };
    debug_assert_eq!(f.len(), grid.n_modes);
    f.iter().zip(w).map(|(&v, &wk)| v * wk).sum()
}

fn apply_real_matrix(m: &Array2<f64>, v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len();
    let mut packed = Array2::<f64>::zeros((n, 2));
    for (i, z) in v.iter().enumerate() {
        packed[[i, 0]] = z.re;
        packed[[i, 1]] = z.im;
    }
    let out = m.dot(&packed);
    (0..n).map(|i| Complex64::new(out[[i, 0]], out[[i, 1]])).collect()
}

fn apply_real_matrix_real(m: &Array2<f64>, v: &[f64]) -> Vec<f64> {
    let arr = Array1::from(v.to_vec());
    m.dot(&arr).to_vec()
}

/// Discrete Hankel transform of order ν realizing the radial Fourier transform.
pub fn transform_forward(u: &PhysicalField) -> SpectralField {
    SpectralField {
        grid: u.grid.clone(),
        values: apply_real_matrix(&u.grid.fwd, &u.values),
    }
}

/// Inverse of [`transform_forward`] up to Fourier–Bessel truncation error.
pub fn transform_inverse(v: &SpectralField) -> PhysicalField {
    PhysicalField {
        grid: v.grid.clone(),
        values: apply_real_matrix(&v.grid.inv, &v.values),
    }
}

pub fn transform_forward_real(grid: &RadialGrid, u: &[f64]) -> Vec<f64> {
    apply_real_matrix_real(&grid.fwd, u)
}

pub fn transform_inverse_real(grid: &RadialGrid, v: &[f64]) -> Vec<f64> {
    apply_real_matrix_real(&grid.inv, v)
}

/// Radial derivative ∂_r u at the collocation nodes from spectral data.
pub fn radial_derivative(v: &SpectralField) -> PhysicalField {
    PhysicalField {
        grid: v.grid.clone(),
        values: apply_real_matrix(&v.grid.deriv, &v.values),
    }
}

pub fn radial_derivative_real(grid: &RadialGrid, vhat: &[f64]) -> Vec<f64> {
    apply_real_matrix_real(&grid.deriv, vhat)
}

/// Band-limited evaluation of a spectral representation at an arbitrary radius:
/// u(r) = r^{−ν} Σ_k w_ρ[k] û_k ρ_k^ν J_ν(r ρ_k).
pub fn eval_spectral_at(grid: &RadialGrid, vhat: &[f64], r: f64) -> f64 {
    let nu = grid.order;
    if r <= 0.0 {
        // J_ν(x)/x^ν → (ρ/2)^ν/Γ(ν+1); handled by tiny-radius evaluation instead
        return eval_spectral_at(grid, vhat, grid.r_nodes[0] * 1e-3);
    }
    let mut acc = 0.0;
    for k in 0..grid.n_modes {
        let p = grid.rho_nodes[k];
        acc += grid.w_rho[k] * vhat[k] * p.powf(nu) * bessel_j(nu, r * p);
    }
    acc / r.powf(nu)
}

/// Local 8-point Lagrange interpolation on the collocation nodes with even
/// extension across r = 0 and zero extension beyond r_max. Intended for
/// smooth, fast-decaying profiles (quadrature sources, oracle integrands).
pub fn interpolate_physical(grid: &RadialGrid, samples: &[f64], r: f64) -> f64 {
    const ORDER: usize = 8;
    let xs = &grid.r_nodes;
    let n = xs.len();
    if r > grid.r_max {
        return 0.0;
    }
    let j = xs.partition_point(|&x| x < r);
    if j < ORDER / 2 {
        // mirrored stencil around the origin
        let m = ORDER / 2;
        let mut xx = [0.0; ORDER];
        let mut yy = [0.0; ORDER];
        for i in 0..m {
            xx[i] = -xs[m - 1 - i];
            yy[i] = samples[m - 1 - i];
            xx[m + i] = xs[i];
            yy[m + i] = samples[i];
        }
        return lagrange(&xx, &yy, r);
    }
    let lo = (j - ORDER / 2).min(n - ORDER);
    let mut xx = [0.0; ORDER];
    let mut yy = [0.0; ORDER];
    xx.copy_from_slice(&xs[lo..lo + ORDER]);
    yy.copy_from_slice(&samples[lo..lo + ORDER]);
    lagrange(&xx, &yy, r)
}

fn lagrange(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for a in 0..xs.len() {
        let mut p = ys[a];
        for b in 0..xs.len() {
            if a != b {
                p *= (x - xs[b]) / (xs[a] - xs[b]);
            }
        }
        acc += p;
    }
    acc
}

/// Grid manifest for run artifacts.
#[derive(Debug, Clone, serde::Serialize)]
pub struct GridManifest {
    pub version: u32,
    pub dimension: u32,
    pub order: f64,
    pub n_modes: usize,
    pub r_max: f64,
    pub checksum: String,
}

impl From<&RadialGrid> for GridManifest {
    fn from(g: &RadialGrid) -> Self {
        GridManifest {
            version: 1,
            dimension: g.dimension,
            order: g.order,
            n_modes: g.n_modes,
            r_max: g.r_max,
            checksum: g.transform_matrix_hash.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn grid(n: usize, r_max: f64) -> Arc<RadialGrid> {
        make_grid(5, n, r_max).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_grid(4, 256, 40.0).is_err());
        assert!(make_grid(5, 8, 40.0).is_err());
        assert!(make_grid(5, 256, -1.0).is_err());
    }

    #[test]
    fn construction_contract() {
        let g = grid(256, 40.0);
        assert_eq!(g.order, 1.5);
        assert_eq!(g.n_modes, 256);
        assert!(g.r_nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(g.rho_nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(*g.r_nodes.last().unwrap() < g.r_max);
        assert!(*g.rho_nodes.last().unwrap() < g.rho_max());
        assert!(g.phys_weights.iter().all(|&w| w > 0.0));
        assert!(g.spec_weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn ball_volume_quadrature() {
        // ∫ 1 over the ball = ω_{d−1} r_max^d / d, ω_4 = 8π²/3
        for &(n, tol) in &[(256usize, 1e-8), (512, 1e-8)] {
            let g = grid(n, 40.0);
            let vol = g.surface() * g.r_max.powi(5) / 5.0;
            let q: f64 = g.phys_weights.iter().sum();
            assert!(
                (q - vol).abs() / vol < tol,
                "volume error {} at N={}",
                (q - vol).abs() / vol,
                n
            );
        }
    }

    #[test]
    fn gaussian_mass_and_moment() {
        // ∫ e^{−|x|²} dx = π^{5/2} and ∫ |x|² e^{−|x|²} dx = (5/2) π^{5/2}
        let g = grid(512, 40.0);
        let f: Vec<f64> = g.r_nodes.iter().map(|&r| (-r * r).exp()).collect();
        let mass = integrate_radial_real(&f, &g, Side::Physical);
        assert_relative_eq!(mass, PI.powf(2.5), max_relative = 1e-8);
        let m2: Vec<f64> = g.r_nodes.iter().map(|&r| r * r * (-r * r).exp()).collect();
        let mom = integrate_radial_real(&m2, &g, Side::Physical);
        assert_relative_eq!(mom, 2.5 * PI.powf(2.5), max_relative = 1e-8);
        // zero integrand
        let z = vec![Complex64::default(); g.n_modes];
        assert_eq!(integrate_radial(&z, &g, Side::Physical).unwrap(), Complex64::default());
    }

    #[test]
    fn integrate_rejects_mismatched_length() {
        let g = grid(64, 10.0);
        let bad = vec![Complex64::default(); 32];
        assert!(integrate_radial(&bad, &g, Side::Physical).is_err());
    }

    #[test]
    fn gaussian_is_transform_fixed_point() {
        let g = grid(512, 40.0);
        let u = PhysicalField::from_real_profile(&g, |r| (-r * r / 2.0).exp());
        let uh = transform_forward(&u);
        let mut err2 = 0.0;
        let mut ref2 = 0.0;
        for (k, &p) in g.rho_nodes.iter().enumerate() {
            let expect = (-p * p / 2.0).exp();
            err2 += g.spec_weights[k] * (uh.values[k].re - expect).powi(2);
            ref2 += g.spec_weights[k] * expect * expect;
        }
        assert!((err2 / ref2).sqrt() < 1e-9, "rel err {}", (err2 / ref2).sqrt());
    }

    #[test]
    fn round_trip_and_plancherel() {
        let g = grid(512, 40.0);
        let u = PhysicalField::from_profile(&g, |r| {
            Complex64::new((-r * r / 2.0).exp(), 0.4 * (-r * r / 3.0).exp())
        });
        let uh = transform_forward(&u);
        let back = transform_inverse(&uh);
        let mut diff2 = 0.0;
        let mut norm2 = 0.0;
        for k in 0..g.n_modes {
            diff2 += g.phys_weights[k] * (back.values[k] - u.values[k]).norm_sqr();
            norm2 += g.phys_weights[k] * u.values[k].norm_sqr();
        }
        assert!((diff2 / norm2).sqrt() < 1e-10);
        let spec2 = uh.l2_norm().powi(2);
        assert!((spec2 - norm2).abs() / norm2 < 1e-10);
    }

    #[test]
    fn zero_transforms_to_zero() {
        let g = grid(64, 10.0);
        let u = PhysicalField::zeros(&g);
        let uh = transform_forward(&u);
        assert!(uh.values.iter().all(|v| v.norm() == 0.0));
        let back = transform_inverse(&uh);
        assert!(back.values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn transform_matches_direct_bessel_quadrature() {
        // û(ρ) = ρ^{−3/2} ∫_0^∞ e^{−r²} J_{3/2}(rρ) r^{5/2} dr at sampled ρ,
        // against an adaptive quadrature of the same integral.
        let g = grid(512, 40.0);
        let u = PhysicalField::from_real_profile(&g, |r| (-r * r).exp());
        let uh = transform_forward(&u);
        for &k in &[3usize, 17, 40, 77, 120] {
            let p = g.rho_nodes[k];
            let exact = adaptive_quad(
                &|r: f64| (-r * r).exp() * bessel_j(1.5, r * p) * r.powf(2.5),
                0.0,
                12.0,
                1e-12,
                40,
            ) / p.powf(1.5);
            assert_relative_eq!(uh.values[k].re, exact, max_relative = 1e-7, epsilon = 1e-12);
        }
    }

    #[test]
    fn spectral_laplacian_consistency() {
        // ∫ ρ²|û|² = ‖∇u‖² = (5/2) π^{5/2} for u = e^{−r²/2}
        let g = grid(512, 40.0);
        let u = PhysicalField::from_real_profile(&g, |r| (-r * r / 2.0).exp());
        let uh = transform_forward(&u);
        let f: Vec<f64> = (0..g.n_modes)
            .map(|k| g.rho_nodes[k].powi(2) * uh.values[k].norm_sqr())
            .collect();
        let kin = integrate_radial_real(&f, &g, Side::Spectral);
        assert_relative_eq!(kin, 2.5 * PI.powf(2.5), max_relative = 1e-8);
    }

    #[test]
    fn linearity_of_forward() {
        let g = grid(128, 20.0);
        let u = PhysicalField::from_real_profile(&g, |r| (-r * r / 2.0).exp());
        let v = PhysicalField::from_real_profile(&g, |r| r * (-r * r).exp());
        let a = Complex64::new(1.3, -0.7);
        let b = Complex64::new(-0.2, 2.1);
        let mut comb = PhysicalField::zeros(&g);
        for k in 0..g.n_modes {
            comb.values[k] = a * u.values[k] + b * v.values[k];
        }
        let lhs = transform_forward(&comb);
        let (fu, fv) = (transform_forward(&u), transform_forward(&v));
        for k in 0..g.n_modes {
            let rhs = a * fu.values[k] + b * fv.values[k];
            assert!((lhs.values[k] - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn derivative_matches_analytic_gaussian() {
        let g = grid(512, 40.0);
        let u = PhysicalField::from_real_profile(&g, |r| (-r * r / 2.0).exp());
        let uh = transform_forward(&u);
        let du = radial_derivative(&uh);
        for &k in &[5usize, 50, 150, 300] {
            let r = g.r_nodes[k];
            let expect = -r * (-r * r / 2.0).exp();
            assert!((du.values[k].re - expect).abs() < 1e-9, "at r={r}");
        }
    }

    #[test]
    fn band_limited_evaluation_off_nodes() {
        let g = grid(256, 30.0);
        let u = PhysicalField::from_real_profile(&g, |r| (-r * r / 2.0).exp());
        let uh = transform_forward(&u);
        let vhat: Vec<f64> = uh.values.iter().map(|v| v.re).collect();
        for &r in &[0.37, 1.234, 5.5, 9.01] {
            let got = eval_spectral_at(&g, &vhat, r);
            assert!((got - (-r * r / 2.0_f64).exp()).abs() < 1e-9);
        }
    }

    #[test]
    fn physical_interpolation_accuracy() {
        let g = grid(512, 40.0);
        let samples: Vec<f64> = g.r_nodes.iter().map(|&r| (-r * r / 2.0).exp()).collect();
        for &r in &[0.01, 0.2, 1.7, 6.3, 12.0] {
            let got = interpolate_physical(&g, &samples, r);
            assert!((got - (-r * r / 2.0_f64).exp()).abs() < 1e-10, "r={r}");
        }
        assert_eq!(interpolate_physical(&g, &samples, 41.0), 0.0);
    }
}
