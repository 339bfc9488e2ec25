//! Weierstrass P and zeta for the rectangular lattice (2 omega_1, 2 pi i).
//!
//! Production evaluation uses the nome series with `q = exp(-pi^2/omega_1)`,
//! which for the annulus lattice is tiny and converges in a few terms. The
//! slowly converging direct lattice sums live in [`crate::oracles`].

use super::POLE_RADIUS;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Rectangular period lattice with half-periods `omega_1 > 0` and `i pi`.
#[derive(Debug, Clone, Copy)]
pub struct Lattice {
    omega1: f64,
}

impl Lattice {
    /// Lattice with half-periods `omega_1` (real, positive) and `i pi`.
    pub fn annulus(omega1: f64) -> Result<Lattice> {
        if !(omega1 > 0.0) || !omega1.is_finite() {
            return Err(Error::ModulusOutOfRange(omega1));
        }
        Ok(Lattice { omega1 })
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    /// Second half-period, fixed to `i pi`.
    pub fn omega2(&self) -> Complex64 {
        Complex64::new(0.0, PI)
    }

    /// Nome `q = exp(i pi tau)` with `tau = i pi / omega_1`.
    pub fn nome(&self) -> f64 {
        (-PI * PI / self.omega1).exp()
    }

    /// Distance from `z` to the nearest lattice point `2 m omega_1 + 2 n pi i`.
    pub fn lattice_distance(&self, z: Complex64) -> f64 {
        let px = 2.0 * self.omega1;
        let py = 2.0 * PI;
        let rx = z.re.rem_euclid(px);
        let dx = rx.min(px - rx);
        let ry = z.im.rem_euclid(py);
        let dy = ry.min(py - ry);
        dx.hypot(dy)
    }

    /// `eta_1 = zeta(omega_1)`, via the Eisenstein series of weight 2.
    pub fn eta1(&self) -> f64 {
        let q2 = self.nome() * self.nome();
        let mut s = 0.0;
        let mut q2n = q2;
        for n in 1..=200 {
            let term = n as f64 * q2n / (1.0 - q2n);
            s += term;
            if term < 1e-18 {
                break;
            }
            q2n *= q2;
        }
        PI * PI / (12.0 * self.omega1) * (1.0 - 24.0 * s)
    }
}

/// Weierstrass elliptic function P(z) on the lattice.
pub fn weierstrass_p(z: Complex64, lat: Lattice) -> Result<Complex64> {
    weierstrass_p_guarded(z, lat, POLE_RADIUS)
}

pub fn weierstrass_p_guarded(z: Complex64, lat: Lattice, pole_radius: f64) -> Result<Complex64> {
    if lat.lattice_distance(z) < pole_radius {
        return Err(Error::NearPole(z, pole_radius));
    }
    let w1 = lat.omega1();
    let v = z * PI / (2.0 * w1);
    let q2 = lat.nome() * lat.nome();
    let csc = v.sin().inv();
    let mut series = Complex64::new(0.0, 0.0);
    let mut q2n = q2;
    for n in 1..=200 {
        let nf = n as f64;
        let term = nf * q2n / (1.0 - q2n) * (2.0 * nf * v).cos();
        series += term;
        if term.norm() < 1e-18 * (1.0 + series.norm()) {
            break;
        }
        q2n *= q2;
    }
    let scale = PI / (2.0 * w1);
    Ok(-lat.eta1() / w1 + scale * scale * csc * csc - 2.0 * PI * PI / (w1 * w1) * series)
}

/// Weierstrass zeta function on the lattice.
pub fn weierstrass_zeta(z: Complex64, lat: Lattice) -> Result<Complex64> {
    weierstrass_zeta_guarded(z, lat, POLE_RADIUS)
}

pub fn weierstrass_zeta_guarded(z: Complex64, lat: Lattice, pole_radius: f64) -> Result<Complex64> {
    if lat.lattice_distance(z) < pole_radius {
        return Err(Error::NearPole(z, pole_radius));
    }
    let w1 = lat.omega1();
    let v = z * PI / (2.0 * w1);
    let q2 = lat.nome() * lat.nome();
    let mut series = Complex64::new(0.0, 0.0);
    let mut q2n = q2;
    for _n in 1..=200 {
        let n = _n as f64;
        let term = q2n / (1.0 - q2n) * (2.0 * n * v).sin();
        series += term;
        if term.norm() < 1e-18 * (1.0 + series.norm()) {
            break;
        }
        q2n *= q2;
    }
    Ok(lat.eta1() / w1 * z + PI / (2.0 * w1) * v.cos() / v.sin() + 2.0 * PI / w1 * series)
}

/// `c(omega_1) = zeta(omega_1) / omega_1`, the Robin-type constant in the
/// annulus kernel formula.
pub fn robin_c(omega1: f64) -> Result<f64> {
    let lat = Lattice::annulus(omega1)?;
    Ok(lat.eta1() / omega1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pole_expansion_near_zero() {
        let lat = Lattice::annulus(0.7).unwrap();
        let u = Complex64::new(1e-3, 0.0);
        let p = weierstrass_p(u, lat).unwrap();
        assert!((u * u * p - 1.0).norm() < 1e-5);
    }

    #[test]
    fn value_at_half_period() {
        // omega_1^2 P(omega_1) = pi^2/6 up to the exponentially small nome
        for w1 in [0.4, 0.7, 1.0] {
            let lat = Lattice::annulus(w1).unwrap();
            let p = weierstrass_p(Complex64::new(w1, 0.0), lat).unwrap();
            let val = w1 * w1 * p.re;
            assert!((val - PI * PI / 6.0).abs() < 1e-6, "w1={w1}: {val}");
            assert!(p.im.abs() < 1e-12);
        }
    }

    #[test]
    fn reflection_symmetry() {
        let w1 = 0.7;
        let lat = Lattice::annulus(w1).unwrap();
        let u = Complex64::new(0.3 * w1, 0.0);
        let a = weierstrass_p(u, lat).unwrap();
        let b = weierstrass_p(Complex64::new(2.0 * w1, 0.0) - u, lat).unwrap();
        assert!((a - b).norm() < 1e-11);
    }

    #[test]
    fn zeta_is_odd() {
        let lat = Lattice::annulus(0.9).unwrap();
        let u = Complex64::new(0.4, 0.1);
        let a = weierstrass_zeta(u, lat).unwrap();
        let b = weierstrass_zeta(-u, lat).unwrap();
        assert!((a + b).norm() < 1e-12);
    }

    #[test]
    fn zeta_derivative_is_minus_p() {
        let lat = Lattice::annulus(0.8).unwrap();
        let u = Complex64::new(0.5, 0.2);
        let h = 1e-5;
        let dz = (weierstrass_zeta(u + h, lat).unwrap() - weierstrass_zeta(u - h, lat).unwrap())
            / (2.0 * h);
        let p = weierstrass_p(u, lat).unwrap();
        assert!((dz + p).norm() < 1e-8);
    }

    #[test]
    fn pole_guard() {
        let lat = Lattice::annulus(0.7).unwrap();
        assert!(matches!(
            weierstrass_p(Complex64::new(1.4, 1e-10), lat),
            Err(Error::NearPole(_, _))
        ));
    }

    #[test]
    fn p_positive_on_real_interval_shifted_by_c() {
        let w1 = 0.7;
        let lat = Lattice::annulus(w1).unwrap();
        let c = robin_c(w1).unwrap();
        for i in 1..50 {
            let u = 2.0 * w1 * i as f64 / 50.0;
            let p = weierstrass_p(Complex64::new(u, 0.0), lat).unwrap();
            assert!(p.re > 0.0, "P({u}) = {}", p.re);
            assert!(p.re + c > 0.0);
        }
    }
}
