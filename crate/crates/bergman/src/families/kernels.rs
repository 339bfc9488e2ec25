//! Closed-form diagonal Bergman kernels of the five families.

use super::{boundary_distance, slit_map_inv, slit_map_inv_dz, Family, ThetaSpec, BOUNDARY_GUARD};
use crate::elliptic::{jacobi, robin_c, weierstrass_p, Lattice};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Transformation rule for diagonal kernels under a biholomorphic map `f`:
/// `K_Omega(z, z) = K_D(f(z), f(z)) |f'(z)|^2`.
pub fn transform_kernel(base_kernel_at_fz: f64, f_prime_at_z: Complex64) -> f64 {
    base_kernel_at_fz * f_prime_at_z.norm_sqr()
}

fn guard(family: Family, zeta: Complex64, z: Complex64, spec: &ThetaSpec) -> Result<()> {
    if !super::admissible_parameter(family, zeta) {
        return Err(Error::InadmissibleParameter(zeta, family.name()));
    }
    let d = boundary_distance(family, zeta, z, spec);
    if d <= 0.0 {
        return Err(Error::PointOutsideDomain { zeta, z });
    }
    if d < BOUNDARY_GUARD {
        return Err(Error::BoundaryGuard(BOUNDARY_GUARD));
    }
    Ok(())
}

/// Annulus `{ |zeta| < |z| < 1 }`:
/// `K(z, z) = (P(u) + c(omega_1)) / (pi |z|^2)` with `u = -2 log|z|`,
/// `omega_1 = -log|zeta|`, on the lattice `(2 omega_1, 2 pi i)`.
pub fn bergman_annulus(zeta: Complex64, z: Complex64) -> Result<f64> {
    guard(Family::Annulus, zeta, z, &ThetaSpec::default())?;
    let omega1 = -zeta.norm().ln();
    let u = -2.0 * z.norm().ln();
    let lat = Lattice::annulus(omega1)?;
    let p = weierstrass_p(Complex64::new(u, 0.0), lat)?;
    let c = robin_c(omega1)?;
    Ok((p.re + c) / (PI * z.norm_sqr()))
}

/// Disc family: the unit disc recentered at `-exp(i theta(zeta))`, so
/// `K(z, z) = 1 / (pi (1 - |z + exp(i theta)|^2)^2)`.
pub fn bergman_disc_family(zeta: Complex64, z: Complex64, spec: &ThetaSpec) -> Result<f64> {
    guard(Family::DiscFamily, zeta, z, spec)?;
    let w = z + Complex64::from_polar(1.0, spec.theta(zeta));
    let d = 1.0 - w.norm_sqr();
    Ok(1.0 / (PI * d * d))
}

/// Slit disc: pullback of the unit-disc kernel through the inverse slit map,
/// `K(z, z) = |(E^{-1})'(z)|^2 / (pi (1 - |E^{-1}(z)|^2)^2)`.
pub fn bergman_slit(zeta: Complex64, z: Complex64) -> Result<f64> {
    guard(Family::SlitDisc, zeta, z, &ThetaSpec::default())?;
    let w = slit_map_inv(zeta, z)?;
    let dw = slit_map_inv_dz(zeta, z)?;
    let d = 1.0 - w.norm_sqr();
    if d < 1e-12 {
        return Err(Error::BoundaryGuard(1e-12));
    }
    Ok(dw.norm_sqr() / (PI * d * d))
}

/// Rectangle `(0, Re zeta) x (0, Im zeta)`:
/// `K(z, z) = |sn u cn u dn u K(k)/Re zeta|^2 / (pi (Im sn^2 u)^2)` with
/// `u = K(k) z / Re zeta` and `k` from the aspect equation.
pub fn bergman_rectangle(zeta: Complex64, z: Complex64) -> Result<f64> {
    guard(Family::Rectangle, zeta, z, &ThetaSpec::default())?;
    let rm = super::solve_modulus(zeta)?;
    let u = rm.big_k * z / zeta.re;
    let t = jacobi(u, rm.modulus)?;
    let sn2 = t.sn * t.sn;
    let im = sn2.im;
    let num = (t.sn * t.cn * t.dn * (rm.big_k / zeta.re)).norm_sqr();
    Ok(num / (PI * im * im))
}

/// Half strip `{ 0 < Re z < Re zeta, Im z > 0 }`:
/// `K(z, z) = |pi/(2 Re zeta) sin u cos u|^2 / (pi (Im sin^2 u)^2)` with
/// `u = pi z / (2 Re zeta)`.
pub fn bergman_halfstrip(zeta: Complex64, z: Complex64) -> Result<f64> {
    guard(Family::HalfStrip, zeta, z, &ThetaSpec::default())?;
    let u = PI * z / (2.0 * zeta.re);
    let s = u.sin();
    let c = u.cos();
    let im = (s * s).im;
    let num = (PI / (2.0 * zeta.re) * s * c).norm_sqr();
    Ok(num / (PI * im * im))
}
