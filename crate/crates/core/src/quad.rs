//! Adaptive Gauss–Kronrod quadrature and the 2D radial–angular quadrature
//! used by the transform-free oracles (Hartree potential, virial kernel term).

/// 7-point Gauss / 15-point Kronrod nodes on [-1, 1] (positive half).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = 0.0;
    let mut gauss = 0.0;
    for i in 0..8 {
        let x = h * XGK[i];
        let (fl, fr) = (f(c - x), f(c + x));
        let s = if i == 7 { fl } else { fl + fr };
        kron += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kron * h, (kron - gauss).abs() * h)
}

/// Recursive bisection to absolute tolerance `tol` (scaled per panel).
pub fn adaptive_quad(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, max_depth: u32) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (val, err) = gk15(f, a, b);
        if err <= tol || depth == 0 || (b - a) < 1e-15 * (a.abs() + b.abs() + 1.0) {
            return val;
        }
        let c = 0.5 * (a + b);
        rec(f, a, c, tol * 0.5, depth - 1) + rec(f, c, b, tol * 0.5, depth - 1)
    }
    rec(f, a, b, tol, max_depth)
}

/// Same as [`adaptive_quad`] but also reports the achieved error estimate.
pub fn adaptive_quad_with_error(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> (f64, f64) {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> (f64, f64) {
        let (val, err) = gk15(f, a, b);
        if err <= tol || depth == 0 || (b - a) < 1e-15 * (a.abs() + b.abs() + 1.0) {
            return (val, err);
        }
        let c = 0.5 * (a + b);
        let (v1, e1) = rec(f, a, c, tol * 0.5, depth - 1);
        let (v2, e2) = rec(f, c, b, tol * 0.5, depth - 1);
        (v1 + v2, e1 + e2)
    }
    rec(f, a, b, tol, max_depth)
}

/// ∫_0^π g(cos θ) sin^{d−2}θ dθ, adaptively. The substitution w = 1 − cos θ
/// concentrates panels near θ = 0 where the interaction kernels peak.
pub fn angular_integral(d: u32, g: &dyn Fn(f64) -> f64, tol: f64) -> f64 {
    // ∫_0^2 g(1−w) (w(2−w))^{(d−3)/2} dw
    let p = (d as f64 - 3.0) / 2.0;
    let f = move |w: f64| {
        let s2 = w * (2.0 - w);
        if s2 <= 0.0 {
            return 0.0;
        }
        g(1.0 - w) * s2.powf(p)
    };
    adaptive_quad(&f, 0.0, 2.0, tol, 48)
}
