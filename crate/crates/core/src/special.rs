//! Bessel functions of the first kind for real order ν = d/2 − 1 (d ≥ 5),
//! their positive zeros, and the Γ values needed for the radial measure.
//!
//! The half-integer orders (odd d) reduce to spherical Bessel functions and
//! are evaluated in closed form; integer orders (even d) use the power series
//! at small argument, the 2π-periodic trapezoid form of Bessel's integral in
//! the midrange, and Hankel's asymptotic expansion at large argument. Zeros
//! come from McMahon's expansion refined by Newton iteration to ~1e-14.

use std::f64::consts::PI;

/// Γ(n/2) for positive integer n, exact recursion from Γ(1/2) = √π and Γ(1) = 1.
pub fn gamma_half_integer(n_halves: u32) -> f64 {
    assert!(n_halves > 0, "gamma_half_integer needs a positive argument");
    let mut x = n_halves as f64 / 2.0;
    let mut acc = 1.0;
    while x > 1.0 {
        x -= 1.0;
        acc *= x;
    }
    if (x - 0.5).abs() < 1e-12 {
        acc * PI.sqrt()
    } else {
        acc // x == 1
    }
}

/// Surface measure of the unit sphere S^{d-1}: ω_{d−1} = 2 π^{d/2} / Γ(d/2).
pub fn sphere_surface(d: u32) -> f64 {
    2.0 * PI.powf(d as f64 / 2.0) / gamma_half_integer(d)
}

/// Bessel order used by the radial transform in dimension d.
pub fn bessel_order(d: u32) -> f64 {
    d as f64 / 2.0 - 1.0
}

fn is_half_integer(nu: f64) -> bool {
    let twice = 2.0 * nu;
    (twice - twice.round()).abs() < 1e-12 && (twice.round() as i64) % 2 != 0
}

/// J_ν(x) for ν = d/2 − 1, d ≥ 5, x ≥ 0.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        return 0.0; // nu >= 3/2 here
    }
    if is_half_integer(nu) {
        return bessel_j_half(nu, x);
    }
    let n = nu.round() as u32;
    if x < 2.0 {
        bessel_j_series(nu, x)
    } else if x <= 30.0 {
        bessel_j_integral(n, x)
    } else {
        bessel_j_asymptotic(nu, x)
    }
}

/// dJ_ν/dx via J_ν'(x) = J_{ν−1}(x) − (ν/x) J_ν(x).
pub fn bessel_j_prime(nu: f64, x: f64) -> f64 {
    bessel_j_lower(nu, x) - nu / x * bessel_j(nu, x)
}

// J_{ν−1}; ν−1 may drop to 1/2 (d=5), which is sin(x)·√(2/πx).
fn bessel_j_lower(nu: f64, x: f64) -> f64 {
    let m = nu - 1.0;
    if (m - 0.5).abs() < 1e-12 {
        return (2.0 / (PI * x)).sqrt() * x.sin();
    }
    if is_half_integer(m) {
        return bessel_j_half(m, x);
    }
    if m.abs() < 1e-12 {
        // J_0
        return if x <= 30.0 {
            bessel_j_integral(0, x)
        } else {
            bessel_j_asymptotic(0.0, x)
        };
    }
    if x < 2.0 {
        bessel_j_series(m, x)
    } else if x <= 30.0 {
        bessel_j_integral(m.round() as u32, x)
    } else {
        bessel_j_asymptotic(m, x)
    }
}

/// Half-integer order: J_{n+1/2}(x) = √(2/(πx)) · S_n(x) with S_n from the
/// spherical-Bessel recursion. Downward (Miller) recursion keeps it stable
/// for x below the order.
fn bessel_j_half(nu: f64, x: f64) -> f64 {
    let n = (nu - 0.5).round() as i32; // spherical order
    let pref = (2.0 / (PI * x)).sqrt();
    if n == 0 {
        return pref * x.sin();
    }
    let j = spherical_jn(n as usize, x);
    pref * x * j
}

fn spherical_jn(n: usize, x: f64) -> f64 {
    let j0 = x.sin() / x;
    if n == 0 {
        return j0;
    }
    let j1 = x.sin() / (x * x) - x.cos() / x;
    if n == 1 {
        return j1;
    }
    if x > n as f64 {
        // upward recursion is stable here
        let (mut a, mut b) = (j0, j1);
        for k in 1..n {
            let c = (2 * k + 1) as f64 / x * b - a;
            a = b;
            b = c;
        }
        b
    } else {
        // Miller downward recursion
        let start = n + 16 + (x as usize);
        let (mut jp, mut jc) = (0.0_f64, 1e-300_f64);
        let mut out = 0.0;
        for k in (0..start).rev() {
            let jm = (2 * k + 3) as f64 / x * jc - jp;
            jp = jc;
            jc = jm;
            if k == n {
                out = jc;
            }
            if jc.abs() > 1e250 {
                jp /= 1e250;
                jc /= 1e250;
                out /= 1e250;
            }
        }
        out * j0 / jc
    }
}

/// Power series Σ (−1)^m (x/2)^{2m+ν} / (m! Γ(m+ν+1)); small x only.
fn bessel_j_series(nu: f64, x: f64) -> f64 {
    let half = x / 2.0;
    // Γ(ν+1) with ν integer or half-integer
    let mut gam = if is_half_integer(nu) {
        gamma_half_integer((2.0 * (nu + 1.0)).round() as u32)
    } else {
        let mut g = 1.0;
        for k in 2..=(nu.round() as u64) {
            g *= k as f64;
        }
        g
    };
    let mut term = half.powf(nu) / gam;
    let mut sum = term;
    let x2 = half * half;
    for m in 1..200 {
        gam = m as f64 * (m as f64 + nu);
        term *= -x2 / gam;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-280) {
            break;
        }
    }
    sum
}

/// Bessel's integral J_n(x) = (1/2π)∫_0^{2π} cos(nθ − x sinθ) dθ via the
/// trapezoid rule, geometrically convergent for entire periodic integrands.
fn bessel_j_integral(n: u32, x: f64) -> f64 {
    let m = 48 + (3.2 * x) as usize;
    let mut sum = 0.0;
    for k in 0..m {
        let th = 2.0 * PI * (k as f64 + 0.5) / m as f64;
        sum += (n as f64 * th - x * th.sin()).cos();
    }
    sum / m as f64
}

/// Hankel's expansion: J_ν(x) ≈ √(2/πx) [P cos χ − Q sin χ], χ = x − (ν/2 + 1/4)π.
fn bessel_j_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut k = 0u32;
    loop {
        // next odd factor goes to Q, next even to P
        let f1 = mu - ((2 * k + 1) as f64).powi(2);
        term *= f1 / (((2 * k + 1) as f64) * 8.0 * x);
        let tq = if k % 2 == 0 { term } else { -term };
        q += tq;
        let f2 = mu - ((2 * k + 2) as f64).powi(2);
        term *= f2 / (((2 * k + 2) as f64) * 8.0 * x);
        let tp = if k % 2 == 0 { -term } else { term };
        p += tp;
        k += 1;
        if term.abs() < 1e-18 || k > 30 {
            break;
        }
    }
    let chi = x - (nu / 2.0 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// First `n` positive zeros of J_ν, each to ~1e-13 relative accuracy.
pub fn bessel_zeros(nu: f64, n: usize) -> Vec<f64> {
    let mu = 4.0 * nu * nu;
    let mut zeros = Vec::with_capacity(n);
    for k in 1..=n {
        let beta = (k as f64 + nu / 2.0 - 0.25) * PI;
        // McMahon's expansion
        let mut x = beta - (mu - 1.0) / (8.0 * beta)
            - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * (8.0 * beta).powi(3));
        for _ in 0..60 {
            let f = bessel_j(nu, x);
            let fp = bessel_j_prime(nu, x);
            let dx = f / fp;
            x -= dx;
            if dx.abs() < 1e-15 * x {
                break;
            }
        }
        if let Some(&prev) = zeros.last() {
            assert!(x > prev, "bessel zeros must increase");
        }
        zeros.push(x);
    }
    zeros
}

/// Dawson's integral F(x) = e^{−x²} ∫_0^x e^{t²} dt by Rybicki's sampling
/// method; used by the closed-form Gaussian Hartree potential in d = 5.
pub fn dawson(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let sign = x.signum();
    let x = x.abs();
    if x > 60.0 {
        // asymptotic 1/(2x) + 1/(4x^3) + 3/(8x^5)
        let ix2 = 1.0 / (x * x);
        return sign * (0.5 / x) * (1.0 + 0.5 * ix2 * (1.0 + 1.5 * ix2));
    }
    let h = 0.2;
    // Rybicki: F(x) = (1/√π) Σ_{n odd} e^{−(x−nh)²}/n
    let n0 = {
        let r = (x / h).round() as i64;
        if r % 2 == 0 {
            r + 1
        } else {
            r
        }
    };
    let mut sum = 0.0;
    let mut m = -420i64;
    while m <= 420 {
        let n = n0 + m;
        let u = x - n as f64 * h;
        sum += (-u * u).exp() / n as f64;
        m += 2;
    }
    sign * sum / PI.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_half_integers() {
        assert_relative_eq!(gamma_half_integer(1), PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gamma_half_integer(2), 1.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_half_integer(5), 1.5 * 0.5 * PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gamma_half_integer(8), 6.0, max_relative = 1e-15);
    }

    #[test]
    fn omega4_closed_form() {
        // ω_4 = 8π²/3 in d = 5
        assert_relative_eq!(sphere_surface(5), 8.0 * PI * PI / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn j_three_halves_closed_form() {
        // J_{3/2}(x) = √(2/πx) (sin x / x − cos x)
        for &x in &[0.3, 1.0, 4.0, 11.5, 40.0, 123.4, 2000.0] {
            let expect = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
            assert_relative_eq!(bessel_j(1.5, x), expect, max_relative = 1e-12, epsilon = 1e-14);
        }
    }

    #[test]
    fn j_integer_matches_series_regime() {
        // J_2 at small x: series vs integral must agree
        for &x in &[0.5, 1.0, 1.9] {
            let a = bessel_j_series(2.0, x);
            let b = bessel_j_integral(2, x);
            assert_relative_eq!(a, b, max_relative = 1e-13);
        }
        // midrange vs asymptotic crossover consistency
        for &x in &[29.0, 30.0, 31.0] {
            let a = bessel_j_integral(2, x);
            let b = bessel_j_asymptotic(2.0, x);
            assert_relative_eq!(a, b, max_relative = 1e-11, epsilon = 1e-13);
        }
    }

    #[test]
    fn zeros_of_j_three_halves() {
        // zeros of J_{3/2} are roots of tan x = x
        let zs = bessel_zeros(1.5, 5);
        assert_relative_eq!(zs[0], 4.493409457909064, max_relative = 1e-12);
        for &z in &zs {
            assert!((z.tan() - z).abs() / (1.0 + z * z) < 1e-10);
            assert!(bessel_j(1.5, z).abs() < 1e-12);
        }
    }

    #[test]
    fn zeros_high_order_and_far() {
        for d in [5u32, 6, 7, 8, 11] {
            let nu = bessel_order(d);
            let zs = bessel_zeros(nu, 600);
            for &z in &zs {
                assert!(bessel_j(nu, z).abs() < 1e-11, "J_{nu}({z}) not small");
            }
            // asymptotic spacing approaches π
            assert!((zs[599] - zs[598] - PI).abs() < 1e-3);
        }
    }

    #[test]
    fn dawson_reference_values() {
        // reference values from the series/asymptotics of F
        assert_relative_eq!(dawson(0.5), 0.4244363835020223, max_relative = 1e-10);
        assert_relative_eq!(dawson(1.0), 0.5380795069127684, max_relative = 1e-10);
        assert_relative_eq!(dawson(2.0), 0.3013403889237920, max_relative = 1e-10);
        assert_relative_eq!(dawson(5.0), 0.1021340744242768, max_relative = 1e-10);
        assert_relative_eq!(dawson(10.0), 0.05025384718759854, max_relative = 1e-9);
    }
}
