//! Complete and incomplete elliptic integrals, Jacobi elliptic functions
//! for complex argument, and Weierstrass functions for rectangular lattices.
//!
//! Complete integrals use the arithmetic-geometric mean, which converges
//! quadratically and reaches full double accuracy in a handful of steps.
//! Independent quadrature versions of the same integrals live in
//! [`crate::oracles`] and are used only for cross-checks.

mod jacobi;
mod weierstrass;

pub use jacobi::{jacobi, jacobi_real, pole_distance, JacobiTriple};
pub use weierstrass::{robin_c, weierstrass_p, weierstrass_zeta, Lattice};

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

/// Default radius around poles inside which evaluation refuses to proceed.
pub const POLE_RADIUS: f64 = 1e-8;

/// Elliptic modulus `k` together with the complementary modulus `k' = sqrt(1 - k^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    k: f64,
    k_prime: f64,
}

impl Modulus {
    /// Builds a modulus from `k` in the open interval (0, 1).
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) || k == 0.0 || k == 1.0 || !k.is_finite() {
            return Err(Error::ModulusOutOfRange(k));
        }
        Ok(Modulus {
            k,
            k_prime: (1.0 - k * k).sqrt(),
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn k_prime(&self) -> f64 {
        self.k_prime
    }

    /// The complementary modulus as a `Modulus` in its own right.
    pub fn complementary(&self) -> Modulus {
        Modulus {
            k: self.k_prime,
            k_prime: self.k,
        }
    }
}

/// The complete integrals K(k), E(k) and K'(k) = K(k') for one modulus.
#[derive(Debug, Clone, Copy)]
pub struct EllipticValues {
    pub big_k: f64,
    pub big_e: f64,
    pub big_k_prime: f64,
}

impl EllipticValues {
    pub fn compute(m: Modulus) -> EllipticValues {
        EllipticValues {
            big_k: complete_k(m),
            big_e: complete_e(m),
            big_k_prime: complete_k(m.complementary()),
        }
    }
}

/// Complete elliptic integral of the first kind via the AGM:
/// `K(k) = pi / (2 agm(1, k'))`.
pub fn complete_k(m: Modulus) -> f64 {
    let (a, _, _) = agm(1.0, m.k_prime, m.k);
    FRAC_PI_2 / a
}

/// Complete elliptic integral of the second kind via the AGM,
/// `E = K (1 - sum 2^(n-1) c_n^2)` with `c_0 = k`.
pub fn complete_e(m: Modulus) -> f64 {
    let (a, _, c_sum) = agm(1.0, m.k_prime, m.k);
    FRAC_PI_2 / a * (1.0 - c_sum)
}

/// AGM iteration for `(a0, b0)` carrying `sum 2^(n-1) c_n^2` with `c_0` given.
fn agm(mut a: f64, mut b: f64, c0: f64) -> (f64, f64, f64) {
    let mut c_sum = 0.5 * c0 * c0;
    let mut pow2 = 1.0;
    for _ in 0..60 {
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        c_sum += pow2 * c * c;
        pow2 *= 2.0;
        if c.abs() < 1e-17 * a {
            break;
        }
    }
    (a, b, c_sum)
}

/// dK/dk = (E - (1-k^2) K) / (k (1-k^2)).
pub fn dk_dk(m: Modulus) -> f64 {
    let k = m.k;
    let kp2 = m.k_prime * m.k_prime;
    (complete_e(m) - kp2 * complete_k(m)) / (k * kp2)
}

/// dE/dk = (E - K) / k.
pub fn de_dk(m: Modulus) -> f64 {
    (complete_e(m) - complete_k(m)) / m.k
}

/// Incomplete elliptic integral of the first kind for complex `w`,
/// `F(w, k) = int_0^w dt / sqrt((1-t^2)(1-k^2 t^2))`.
///
/// Evaluated after the substitution `t = sin(theta)` as an integral of
/// `1/sqrt(1 - k^2 sin^2 theta)` along the straight segment from 0 to
/// `asin(w)`, which removes the endpoint singularity at `w = 1`.
pub fn incomplete_f(w: Complex64, m: Modulus) -> Result<Complex64> {
    let k = m.k;
    if w == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // t = 1 is regularized by the substitution; the remaining singular
    // endpoints are t = -1 and t = +-1/k.
    let singular = [
        Complex64::new(-1.0, 0.0),
        Complex64::new(1.0 / k, 0.0),
        Complex64::new(-1.0 / k, 0.0),
    ];
    if singular.iter().any(|s| (w - s).norm() < 1e-14) {
        return Err(Error::SingularEndpoint(w));
    }
    if (w - Complex64::new(1.0, 0.0)).norm() < 1e-14 {
        return Ok(Complex64::new(complete_k(m), 0.0));
    }
    let theta_end = w.asin();
    let k2 = Complex64::new(k * k, 0.0);
    let integrand = |theta: Complex64| {
        let s = theta.sin();
        (Complex64::new(1.0, 0.0) - k2 * s * s).sqrt().inv()
    };
    adaptive_segment(&integrand, Complex64::new(0.0, 0.0), theta_end, 1e-13, 0)
}

/// Adaptive Gauss-Legendre integration along a straight complex segment.
fn adaptive_segment(
    f: &dyn Fn(Complex64) -> Complex64,
    a: Complex64,
    b: Complex64,
    tol: f64,
    depth: usize,
) -> Result<Complex64> {
    let whole = gauss15(f, a, b);
    let mid = 0.5 * (a + b);
    let left = gauss15(f, a, mid);
    let right = gauss15(f, mid, b);
    let err = (left + right - whole).norm();
    if err < tol || (b - a).norm() < 1e-14 {
        return Ok(left + right);
    }
    if depth > 40 {
        return Err(Error::QuadratureFailure(tol));
    }
    let l = adaptive_segment(f, a, mid, 0.5 * tol, depth + 1)?;
    let r = adaptive_segment(f, mid, b, 0.5 * tol, depth + 1)?;
    Ok(l + r)
}

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
const GL15_X: [f64; 8] = [
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601700,
    0.8482065834104272,
    0.9372733924007059,
    0.9879925180204854,
];
const GL15_W: [f64; 8] = [
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
];

fn gauss15(f: &dyn Fn(Complex64) -> Complex64, a: Complex64, b: Complex64) -> Complex64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = GL15_W[0] * f(c);
    for i in 1..8 {
        let dx = h * GL15_X[i];
        acc += GL15_W[i] * (f(c + dx) + f(c - dx));
    }
    acc * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{quadrature_e, quadrature_k};

    #[test]
    fn modulus_invariant() {
        let m = Modulus::new(0.3).unwrap();
        assert!((m.k() * m.k() + m.k_prime() * m.k_prime() - 1.0).abs() < 1e-15);
        assert!(Modulus::new(0.0).is_err());
        assert!(Modulus::new(1.0).is_err());
        assert!(Modulus::new(-0.2).is_err());
        assert!(Modulus::new(f64::NAN).is_err());
    }

    #[test]
    fn complete_k_small_modulus_limit() {
        // K(0+) = pi/2
        let m = Modulus::new(1e-12).unwrap();
        assert!((complete_k(m) - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn complete_k_at_inverse_sqrt2() {
        // frozen from the quadrature oracle of the defining integral
        let m = Modulus::new(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        let k = complete_k(m);
        assert!((k - 1.854_074_677_301_372).abs() < 1e-13, "K = {k}");
        assert!((k - quadrature_k(m.k()).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn complete_k_matches_power_series() {
        // 50-term series oracle at k = 0.5
        let k = 0.5f64;
        let mut sum = 1.0;
        let mut coef: f64 = 1.0;
        for n in 1..=50u32 {
            let n = n as f64;
            coef *= (2.0 * n - 1.0) / (2.0 * n);
            sum += coef * coef * k.powi(2 * n as i32);
        }
        let series = FRAC_PI_2 * sum;
        let agm = complete_k(Modulus::new(k).unwrap());
        // truncation error of the 50-term series at k=0.5 is ~ (1/4)^50
        assert!((agm - series).abs() < 1e-14);
    }

    #[test]
    fn complete_e_limits_and_value() {
        let m = Modulus::new(1e-12).unwrap();
        assert!((complete_e(m) - FRAC_PI_2).abs() < 1e-12);
        let m = Modulus::new(1.0 - 1e-13).unwrap();
        assert!((complete_e(m) - 1.0).abs() < 1e-10);
        let m = Modulus::new(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        let e = complete_e(m);
        assert!((e - 1.350_643_881_047_675).abs() < 1e-13, "E = {e}");
        assert!((e - quadrature_e(m.k()).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn legendre_relation() {
        for k in [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9] {
            let m = Modulus::new(k).unwrap();
            let mc = m.complementary();
            let lhs = complete_e(m) * complete_k(mc) + complete_e(mc) * complete_k(m)
                - complete_k(m) * complete_k(mc);
            assert!((lhs - FRAC_PI_2).abs() < 1e-12, "k={k}: {lhs}");
        }
    }

    #[test]
    fn derivative_closed_forms_match_finite_differences() {
        let h = 1e-6;
        for k in [0.3, 0.5, 0.8] {
            let m = Modulus::new(k).unwrap();
            let fd_k = (complete_k(Modulus::new(k + h).unwrap())
                - complete_k(Modulus::new(k - h).unwrap()))
                / (2.0 * h);
            let fd_e = (complete_e(Modulus::new(k + h).unwrap())
                - complete_e(Modulus::new(k - h).unwrap()))
                / (2.0 * h);
            assert!(((dk_dk(m) - fd_k) / fd_k).abs() < 1e-7, "k={k}");
            assert!(((de_dk(m) - fd_e) / fd_e).abs() < 1e-7, "k={k}");
        }
    }

    #[test]
    fn de_dk_value_and_sign() {
        let m = Modulus::new(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        // sqrt(2) (E - K) at k = 1/sqrt(2)
        let expect = std::f64::consts::SQRT_2 * (complete_e(m) - complete_k(m));
        assert!((de_dk(m) - expect).abs() < 1e-12);
        assert!((de_dk(m) + 0.711_958_66).abs() < 1e-6);
        for i in 1..20 {
            let m = Modulus::new(i as f64 / 20.0).unwrap();
            assert!(de_dk(m) < 0.0);
        }
    }

    #[test]
    fn incomplete_f_trivial_and_complete() {
        let m = Modulus::new(0.6).unwrap();
        let zero = incomplete_f(Complex64::new(0.0, 0.0), m).unwrap();
        assert_eq!(zero, Complex64::new(0.0, 0.0));
        let at_one = incomplete_f(Complex64::new(1.0, 0.0), m).unwrap();
        assert!((at_one.re - complete_k(m)).abs() < 1e-13);
        assert!(incomplete_f(Complex64::new(-1.0, 0.0), m).is_err());
        assert!(incomplete_f(Complex64::new(1.0 / 0.6, 0.0), m).is_err());
    }

    #[test]
    fn e_le_k() {
        for i in 1..10 {
            let m = Modulus::new(i as f64 / 10.0).unwrap();
            let (kk, ee) = (complete_k(m), complete_e(m));
            assert!(kk > 0.0 && ee > 0.0 && ee <= kk);
        }
    }
}
