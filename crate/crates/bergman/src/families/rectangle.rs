//! Rectangle modulus: the aspect-ratio equation and its local expansion.

use crate::elliptic::{complete_k, dk_dk, EllipticValues, Modulus};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Solved modulus data for a rectangle `(0, Re zeta) x (0, Im zeta)`.
#[derive(Debug, Clone, Copy)]
pub struct RectangleModulus {
    pub modulus: Modulus,
    pub big_k: f64,
    pub big_k_prime: f64,
    /// Schwarz-Christoffel scale `C = Re zeta / K(k)`.
    pub scale: f64,
}

/// Solves `K(k') / K(k) = Im zeta / Re zeta` for `k` by safeguarded
/// Newton iteration; the left side is strictly decreasing in `k`.
pub fn solve_modulus(zeta: Complex64) -> Result<RectangleModulus> {
    if !(zeta.re > 0.0 && zeta.im > 0.0) {
        return Err(Error::InadmissibleParameter(zeta, "rectangle"));
    }
    // residual g(k) = Im zeta K(k) - Re zeta K(k'), increasing in k
    let g = |k: f64| -> (f64, f64) {
        let m = Modulus::new(k).unwrap();
        let mc = m.complementary();
        let (kk, kp) = (complete_k(m), complete_k(mc));
        let res = zeta.im * kk - zeta.re * kp;
        // d/dk K(k') = -(k/k') dK/dk at k'
        let dres = zeta.im * dk_dk(m) + zeta.re * (k / m.k_prime()) * dk_dk(mc);
        (res, dres)
    };
    let mut lo = 1e-12;
    let mut hi = 1.0 - 1e-12;
    let mut k = FRAC_1_SQRT_2;
    let scale = zeta.norm();
    for iter in 0..200 {
        let (res, dres) = g(k);
        if res.abs() < 1e-15 * scale * 4.0 {
            let m = Modulus::new(k).unwrap();
            let big_k = complete_k(m);
            return Ok(RectangleModulus {
                modulus: m,
                big_k,
                big_k_prime: complete_k(m.complementary()),
                scale: zeta.re / big_k,
            });
        }
        if res > 0.0 {
            hi = k;
        } else {
            lo = k;
        }
        let step = res / dres;
        let mut next = k - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - k).abs() < 1e-17 && iter > 5 {
            // bisection interval exhausted at double precision
            let m = Modulus::new(k).unwrap();
            let big_k = complete_k(m);
            return Ok(RectangleModulus {
                modulus: m,
                big_k,
                big_k_prime: complete_k(m.complementary()),
                scale: zeta.re / big_k,
            });
        }
        k = next;
    }
    Err(Error::NoConvergence(200))
}

/// First- and second-order coefficient `a` of the modulus expansion at
/// `zeta = 1 + i`: `a = K / (4 sqrt(2) (2E - K))` with `K`, `E` at
/// `k = 1/sqrt(2)`.
pub fn rectangle_series_a() -> f64 {
    let m = Modulus::new(FRAC_1_SQRT_2).unwrap();
    let v = EllipticValues::compute(m);
    v.big_k / (4.0 * std::f64::consts::SQRT_2 * (2.0 * v.big_e - v.big_k))
}

/// Local expansion of the rectangle modulus around `zeta = 1 + i`:
/// `k(1+i+eps) = k0 + 2 Re((a+ib) eps) + 2 Re((c+id) eps^2) + 2 e |eps|^2`
/// with `k0 = 1/sqrt(2)`, `a = b`, `c = -a/2`, `d = e = -sqrt(2) a^2`.
pub fn modulus_series(epsilon: Complex64) -> f64 {
    let a = rectangle_series_a();
    let ab = Complex64::new(a, a);
    let cd = Complex64::new(-0.5 * a, -std::f64::consts::SQRT_2 * a * a);
    let e = -std::f64::consts::SQRT_2 * a * a;
    FRAC_1_SQRT_2
        + 2.0 * (ab * epsilon).re
        + 2.0 * (cd * epsilon * epsilon).re
        + 2.0 * e * epsilon.norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_gives_k0() {
        let rm = solve_modulus(Complex64::new(1.0, 1.0)).unwrap();
        assert!((rm.modulus.k() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((rm.scale - 1.0 / rm.big_k).abs() < 1e-14);
    }

    #[test]
    fn aspect_equation_residual() {
        for &(re, im) in &[(1.0, 1.0), (1.0, 2.0), (0.7, 0.4), (2.5, 1.3)] {
            let zeta = Complex64::new(re, im);
            let rm = solve_modulus(zeta).unwrap();
            let res = (zeta.im * rm.big_k - zeta.re * rm.big_k_prime).abs();
            assert!(res < 1e-12, "zeta={zeta} residual={res}");
        }
    }

    #[test]
    fn taller_rectangle_smaller_k() {
        // cross-checked against a pure-bisection solve of the same equation
        let rm = solve_modulus(Complex64::new(1.0, 2.0)).unwrap();
        assert!(rm.modulus.k() < FRAC_1_SQRT_2);
        let (mut lo, mut hi) = (1e-9, 1.0 - 1e-9);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            let m = Modulus::new(mid).unwrap();
            let res = 2.0 * complete_k(m) - complete_k(m.complementary());
            if res > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!((rm.modulus.k() - 0.5 * (lo + hi)).abs() < 1e-11);
    }

    #[test]
    fn swapped_aspect_is_complementary() {
        let a = solve_modulus(Complex64::new(0.8, 1.7)).unwrap().modulus.k();
        let b = solve_modulus(Complex64::new(1.7, 0.8)).unwrap().modulus.k();
        assert!((a * a + b * b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn series_constant_term() {
        assert_eq!(modulus_series(Complex64::new(0.0, 0.0)), FRAC_1_SQRT_2);
        let a = rectangle_series_a();
        assert!((a - 0.386_865_123).abs() < 1e-7, "a={a}");
    }

    #[test]
    fn series_matches_solver_to_third_order() {
        // |series(eps) - solve(1+i+eps)| should shrink like |eps|^3:
        // fit the log-log slope over a decade of eps
        let dir = Complex64::new(0.6, 0.8);
        let mut logs = Vec::new();
        for &e in &[1e-2, 3e-3, 1e-3, 3e-4, 1e-4] {
            let eps = dir * e;
            let k_solve = solve_modulus(Complex64::new(1.0, 1.0) + eps)
                .unwrap()
                .modulus
                .k();
            let diff = (modulus_series(eps) - k_solve).abs();
            logs.push((e.ln(), diff.max(1e-300).ln()));
        }
        let n = logs.len() as f64;
        let sx: f64 = logs.iter().map(|p| p.0).sum();
        let sy: f64 = logs.iter().map(|p| p.1).sum();
        let sxx: f64 = logs.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = logs.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!(slope >= 2.8, "slope={slope}");
    }
}
