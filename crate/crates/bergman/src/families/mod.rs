//! The five parametrized domain families, their conformal maps and
//! diagonal Bergman kernels.

mod kernels;
mod koebe;
mod rectangle;

pub use kernels::{
    bergman_annulus, bergman_disc_family, bergman_halfstrip, bergman_rectangle, bergman_slit,
    transform_kernel,
};
pub use koebe::{koebe, koebe_inv, slit_map_inv, slit_map_inv_dz, slit_params, SlitParams};
pub use rectangle::{modulus_series, rectangle_series_a, solve_modulus, RectangleModulus};

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Distance below which kernel evaluators refuse a near-boundary point.
pub const BOUNDARY_GUARD: f64 = 1e-10;

/// Half-width of the band around the slit ray counted as "on the slit".
pub const SLIT_TOLERANCE: f64 = 1e-12;

/// The five domain families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `A_zeta = { |zeta| < |z| < 1 }`, parameter `0 < |zeta| < 1`.
    Annulus,
    /// Unit discs recentered at `-exp(i theta(zeta))`, parameter in the disc.
    DiscFamily,
    /// Unit disc minus the ray `{ s zeta : s >= 1 }`.
    SlitDisc,
    /// `(0, Re zeta) x (0, Im zeta)`.
    Rectangle,
    /// `{ 0 < Re z < Re zeta, Im z > 0 }`.
    HalfStrip,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Annulus => "annulus",
            Family::DiscFamily => "disc",
            Family::SlitDisc => "slit",
            Family::Rectangle => "rectangle",
            Family::HalfStrip => "halfstrip",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "annulus" => Some(Family::Annulus),
            "disc" => Some(Family::DiscFamily),
            "slit" => Some(Family::SlitDisc),
            "rectangle" => Some(Family::Rectangle),
            "halfstrip" => Some(Family::HalfStrip),
            _ => None,
        }
    }
}

/// Harmonic polynomial angle function `theta(zeta) = Re(sum_n a_n zeta^n)`
/// for the disc family. The constant term is fixed to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSpec {
    /// Coefficient of `zeta^(i+1)`.
    coeffs: Vec<Complex64>,
}

impl ThetaSpec {
    /// `theta(zeta) = Re(a_1 zeta + a_2 zeta^2 + ...)`.
    pub fn new(coeffs: Vec<Complex64>) -> ThetaSpec {
        ThetaSpec { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn theta(&self, zeta: Complex64) -> f64 {
        let mut pow = zeta;
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in &self.coeffs {
            acc += a * pow;
            pow *= zeta;
        }
        acc.re
    }

    /// Wirtinger derivative `theta_zeta = (1/2) sum_n n a_n zeta^(n-1)`.
    pub fn theta_dzeta(&self, zeta: Complex64) -> Complex64 {
        let mut pow = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &a) in self.coeffs.iter().enumerate() {
            acc += (i as f64 + 1.0) * a * pow;
            pow *= zeta;
        }
        0.5 * acc
    }
}

impl Default for ThetaSpec {
    /// `theta(zeta) = Re zeta`, so `theta_zeta = 1/2`.
    fn default() -> Self {
        ThetaSpec::new(vec![Complex64::new(1.0, 0.0)])
    }
}

/// A (family, parameter, evaluation point) triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyPoint {
    pub family: Family,
    pub zeta: Complex64,
    pub z: Complex64,
}

/// Checks the structural constraints on the family parameter.
pub fn admissible_parameter(family: Family, zeta: Complex64) -> bool {
    match family {
        Family::Annulus => zeta.norm() > 0.0 && zeta.norm() < 1.0,
        Family::DiscFamily => zeta.norm() < 1.0,
        Family::SlitDisc => zeta.norm() > 0.0 && zeta.norm() < 1.0,
        Family::Rectangle => zeta.re > 0.0 && zeta.im > 0.0,
        Family::HalfStrip => zeta.re > 0.0,
    }
}

/// Distance from `z` to the slit ray `{ s zeta : s >= 1 }`.
pub fn slit_distance(zeta: Complex64, z: Complex64) -> f64 {
    let dir = zeta / zeta.norm();
    let along = (z * dir.conj()).re;
    if along <= zeta.norm() {
        (z - zeta).norm()
    } else {
        (z - along * dir).norm()
    }
}

/// True iff `z` lies in the open slice domain `D_zeta`.
///
/// The disc family uses the recentered disc `|z + exp(i theta(zeta))| < 1`
/// and takes the default angle function unless one is supplied via
/// [`contains_with`].
pub fn contains(p: FamilyPoint) -> Result<bool> {
    contains_with(p, &ThetaSpec::default())
}

pub fn contains_with(p: FamilyPoint, spec: &ThetaSpec) -> Result<bool> {
    if !admissible_parameter(p.family, p.zeta) {
        return Err(Error::InadmissibleParameter(p.zeta, p.family.name()));
    }
    let FamilyPoint { zeta, z, .. } = p;
    Ok(match p.family {
        Family::Annulus => {
            let r = z.norm();
            zeta.norm() < r && r < 1.0
        }
        Family::DiscFamily => {
            let center = -Complex64::from_polar(1.0, spec.theta(zeta));
            (z - center).norm() < 1.0
        }
        Family::SlitDisc => z.norm() < 1.0 && slit_distance(zeta, z) >= SLIT_TOLERANCE,
        Family::Rectangle => z.re > 0.0 && z.re < zeta.re && z.im > 0.0 && z.im < zeta.im,
        Family::HalfStrip => z.re > 0.0 && z.re < zeta.re && z.im > 0.0,
    })
}

/// Distance from `z` to the boundary of the slice domain. Used by the
/// finite-difference Levi probes to keep stencils inside the moving domain.
pub fn boundary_distance(family: Family, zeta: Complex64, z: Complex64, spec: &ThetaSpec) -> f64 {
    match family {
        Family::Annulus => (1.0 - z.norm()).min(z.norm() - zeta.norm()),
        Family::DiscFamily => {
            let center = -Complex64::from_polar(1.0, spec.theta(zeta));
            1.0 - (z - center).norm()
        }
        Family::SlitDisc => (1.0 - z.norm()).min(slit_distance(zeta, z)),
        Family::Rectangle => z.re.min(zeta.re - z.re).min(z.im).min(zeta.im - z.im),
        Family::HalfStrip => z.re.min(zeta.re - z.re).min(z.im),
    }
}

/// Evaluates the diagonal Bergman kernel of the slice domain at `z`.
pub fn kernel(family: Family, zeta: Complex64, z: Complex64, spec: &ThetaSpec) -> Result<f64> {
    match family {
        Family::Annulus => bergman_annulus(zeta, z),
        Family::DiscFamily => bergman_disc_family(zeta, z, spec),
        Family::SlitDisc => bergman_slit(zeta, z),
        Family::Rectangle => bergman_rectangle(zeta, z),
        Family::HalfStrip => bergman_halfstrip(zeta, z),
    }
}
