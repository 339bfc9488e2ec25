//! Koebe function and the conformal machinery of the slit-disc family.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Koebe function `K(w) = w / (1 + w)^2`, mapping the unit disc onto the
/// plane slit along `[1/4, inf)`.
pub fn koebe(w: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if (w + one).norm() < 1e-14 {
        return Err(Error::NearPole(w, 1e-14));
    }
    Ok(w / ((one + w) * (one + w)))
}

/// Derivative `K'(w) = (1 - w) / (1 + w)^3`.
pub fn koebe_deriv(w: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    (one - w) / ((one + w) * (one + w) * (one + w))
}

/// Inverse Koebe function on the slit plane, the branch with
/// `koebe_inv(koebe(w)) = w` for `w` in the disc and `koebe_inv(0) = 0`.
pub fn koebe_inv(omega: Complex64) -> Result<Complex64> {
    if omega.im == 0.0 && omega.re >= 0.25 {
        return Err(Error::BranchCut(omega));
    }
    if omega.norm() < 1e-100 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let one = Complex64::new(1.0, 0.0);
    let s = (one - 4.0 * omega).sqrt();
    let w = (one - 2.0 * omega - s) / (2.0 * omega);
    Ok(w)
}

/// Conformal slit parameters `(t, theta)` with
/// `zeta = exp(-i theta) koebe_inv(exp(-t)/4)` and `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitParams {
    /// Conformal slit-length parameter, positive; `t -> 0` shrinks the slit.
    pub t: f64,
    /// Slit direction, in `[0, 2 pi)`.
    pub theta: f64,
}

pub fn slit_params(zeta: Complex64) -> Result<SlitParams> {
    let r = zeta.norm();
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InadmissibleParameter(zeta, "slit"));
    }
    let theta = (-zeta.arg()).rem_euclid(TAU);
    // koebe(r) is real in (0, 1/4), so t > 0
    let t = -(4.0 * r / ((1.0 + r) * (1.0 + r))).ln();
    Ok(SlitParams { t, theta })
}

/// Inverse slit map `E_zeta^{-1}(z) = koebe_inv(e^t koebe(e^{i theta} z))`,
/// taking the slit disc into the unit disc.
pub fn slit_map_inv(zeta: Complex64, z: Complex64) -> Result<Complex64> {
    let p = slit_params(zeta)?;
    let rot = Complex64::from_polar(1.0, p.theta);
    let omega = p.t.exp() * koebe(rot * z)?;
    koebe_inv(omega)
}

/// Analytic derivative `d/dz E_zeta^{-1}(z)` by the chain rule through the
/// Koebe function and its inverse.
pub fn slit_map_inv_dz(zeta: Complex64, z: Complex64) -> Result<Complex64> {
    let p = slit_params(zeta)?;
    let rot = Complex64::from_polar(1.0, p.theta);
    let et = p.t.exp();
    let omega = et * koebe(rot * z)?;
    let w_out = koebe_inv(omega)?;
    Ok(rot * et * koebe_deriv(rot * z) / koebe_deriv(w_out))
}
