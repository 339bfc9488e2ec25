//! Independent brute-force evaluators used only for verification.
//!
//! Each oracle deliberately takes a different algorithmic route from the
//! production code it validates: quadrature of the defining integrals
//! against the AGM, direct lattice sums against the nome series, a Laurent
//! basis sum against the Weierstrass-form annulus kernel, and monomial
//! orthonormalization against the elliptic rectangle kernel. Oracles never
//! feed production results.

use crate::elliptic::Lattice;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Truncation / quadrature configuration shared by the oracles.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Lattice or series cutoff.
    pub truncation: usize,
    /// Nodes per axis for tensor quadrature.
    pub quad_order: usize,
    /// Requested bound on the reported truncation tail.
    pub tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            truncation: 40,
            quad_order: 82,
            tolerance: 1e-9,
        }
    }
}

// ---------------------------------------------------------------------------
// quadrature elliptic integrals
// ---------------------------------------------------------------------------

/// K(k) by adaptive quadrature of `int_0^{pi/2} (1 - k^2 sin^2 t)^(-1/2) dt`.
pub fn quadrature_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::ModulusOutOfRange(k));
    }
    let k2 = k * k;
    adaptive_simpson(
        &|t: f64| 1.0 / (1.0 - k2 * t.sin().powi(2)).sqrt(),
        0.0,
        FRAC_PI_2,
        1e-13,
    )
}

/// E(k) by adaptive quadrature of `int_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt`.
pub fn quadrature_e(k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::ModulusOutOfRange(k));
    }
    let k2 = k * k;
    adaptive_simpson(
        &|t: f64| (1.0 - k2 * t.sin().powi(2)).sqrt(),
        0.0,
        FRAC_PI_2,
        1e-13,
    )
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        let err = left + right - whole;
        if err.abs() < 15.0 * tol {
            return Ok(left + right + err / 15.0);
        }
        if depth > 50 {
            return Err(Error::QuadratureFailure(tol));
        }
        Ok(rec(f, a, m, left, 0.5 * tol, depth + 1)? + rec(f, m, b, right, 0.5 * tol, depth + 1)?)
    }
    let whole = simpson(f, a, b);
    rec(f, a, b, whole, tol, 0)
}

// ---------------------------------------------------------------------------
// direct lattice sums for Weierstrass P and zeta
// ---------------------------------------------------------------------------

/// Direct truncated lattice sum for P(u), with symmetric pairing and two
/// Richardson steps in the cutoff to control the slowly decaying tail.
pub fn lattice_p(u: Complex64, lat: Lattice, cfg: &OracleConfig) -> Result<Complex64> {
    lattice_sum(u, lat, cfg, false)
}

/// Direct truncated lattice sum for the Weierstrass zeta function.
pub fn lattice_zeta(u: Complex64, lat: Lattice, cfg: &OracleConfig) -> Result<Complex64> {
    lattice_sum(u, lat, cfg, true)
}

fn lattice_sum(u: Complex64, lat: Lattice, cfg: &OracleConfig, zeta: bool) -> Result<Complex64> {
    if lat.lattice_distance(u) < 1e-12 {
        return Err(Error::NearPole(u, 1e-12));
    }
    let n = cfg.truncation.max(4);
    let s1 = lattice_sum_box(u, lat, n, zeta);
    let s2 = lattice_sum_box(u, lat, 2 * n, zeta);
    let s4 = lattice_sum_box(u, lat, 4 * n, zeta);
    // box tail decays like 1/N^2; one Richardson step leaves 1/N^4
    let r1 = (4.0 * s2 - s1) / 3.0;
    let r2 = (4.0 * s4 - s2) / 3.0;
    let extrap = (16.0 * r2 - r1) / 15.0;
    let bound = (r2 - r1).norm() / 15.0;
    if bound > cfg.tolerance {
        return Err(Error::TailBound {
            bound,
            tol: cfg.tolerance,
        });
    }
    Ok(extrap)
}

fn lattice_sum_box(u: Complex64, lat: Lattice, n: usize, zeta: bool) -> Complex64 {
    let w1 = lat.omega1();
    let n = n as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0); // Kahan correction
    let mut add = |t: Complex64| {
        let y = t - comp;
        let s = acc + y;
        comp = (s - acc) - y;
        acc = s;
    };
    // half lattice: m > 0 any n, plus m = 0 with n > 0; pair omega with -omega
    for m in 0..=n {
        let n_lo = if m == 0 { 1 } else { -n };
        for nn in n_lo..=n {
            if m == 0 && nn == 0 {
                continue;
            }
            let omega = Complex64::new(2.0 * m as f64 * w1, 2.0 * PI * nn as f64);
            if zeta {
                // (1/(u-w) + 1/w + u/w^2) + (w -> -w)
                let t = (u - omega).inv() + (u + omega).inv() + 2.0 * u / (omega * omega);
                add(t);
            } else {
                let a = (u - omega).inv();
                let b = (u + omega).inv();
                let t = a * a + b * b - 2.0 * (omega * omega).inv();
                add(t);
            }
        }
    }
    if zeta {
        acc + u.inv()
    } else {
        acc + (u * u).inv()
    }
}

// ---------------------------------------------------------------------------
// Laurent-series annulus kernel
// ---------------------------------------------------------------------------

/// Diagonal Bergman kernel of the annulus `A(r, 1)` from the orthonormal
/// Laurent monomial basis, truncated with an explicit geometric tail bound.
pub fn laurent_annulus_kernel(r: f64, z: Complex64, cfg: &OracleConfig) -> Result<f64> {
    if !(0.0 < r && r < 1.0) {
        return Err(Error::ModulusOutOfRange(r));
    }
    let az2 = z.norm_sqr();
    if !(r * r < az2 && az2 < 1.0) {
        return Err(Error::PointOutsideDomain {
            zeta: Complex64::new(r, 0.0),
            z,
        });
    }
    let x = az2; // ratio of the n >= 0 terms
    let y = r * r / az2; // ratio of the n <= -2 terms
    let r2 = r * r;

    // choose the cutoff from the geometric tail bounds
    let mut nmax = 16usize;
    loop {
        let tail_pos =
            (nmax as f64 + 2.0) * x.powi(nmax as i32 + 1) / (PI * (1.0 - r2) * (1.0 - x).powi(2));
        let tail_neg = (nmax as f64 + 2.0) * y.powi(nmax as i32 + 1)
            / (PI * az2 * (1.0 - r2) * (1.0 - y).powi(2));
        if tail_pos + tail_neg <= 0.5 * cfg.tolerance {
            break;
        }
        nmax *= 2;
        if nmax > 4_000_000 {
            return Err(Error::TailBound {
                bound: tail_pos + tail_neg,
                tol: cfg.tolerance,
            });
        }
    }

    let log_term = 1.0 / (2.0 * PI * (1.0 / r).ln() * az2);
    let mut sum = log_term;
    for n in 0..=nmax {
        let denom = 1.0 - r2.powi(n as i32 + 1);
        sum += (n as f64 + 1.0) * x.powi(n as i32) / (PI * denom);
    }
    for m in 1..=nmax {
        let denom = 1.0 - r2.powi(m as i32);
        sum += m as f64 * y.powi(m as i32) / (PI * az2 * denom);
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes and the Gram-Schmidt rectangle kernel
// ---------------------------------------------------------------------------

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // Chebyshev-based initial guess
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Quadrature rule: points with positive area weights.
struct Rule {
    points: Vec<Complex64>,
    weights: Vec<f64>,
}

fn rectangle_rule(width: f64, height: f64, q: usize) -> Rule {
    let (x, w) = gauss_legendre(q);
    let mut points = Vec::with_capacity(q * q);
    let mut weights = Vec::with_capacity(q * q);
    for (i, &xi) in x.iter().enumerate() {
        let px = 0.5 * width * (xi + 1.0);
        let wx = 0.5 * width * w[i];
        for (j, &xj) in x.iter().enumerate() {
            let py = 0.5 * height * (xj + 1.0);
            let wy = 0.5 * height * w[j];
            points.push(Complex64::new(px, py));
            weights.push(wx * wy);
        }
    }
    Rule { points, weights }
}

fn disc_rule(q: usize) -> Rule {
    // radial Gauss-Legendre on [0,1] with weight r, uniform trapezoid in angle
    let (x, w) = gauss_legendre(q);
    let ntheta = 4 * q;
    let dtheta = 2.0 * PI / ntheta as f64;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for (i, &xi) in x.iter().enumerate() {
        let r = 0.5 * (xi + 1.0);
        let wr = 0.5 * w[i] * r;
        for t in 0..ntheta {
            let theta = t as f64 * dtheta;
            points.push(Complex64::from_polar(r, theta));
            weights.push(wr * dtheta);
        }
    }
    Rule { points, weights }
}

/// Diagonal Bergman kernel of the rectangle `(0, Re zeta) x (0, Im zeta)`
/// from modified Gram-Schmidt on the monomials `1, z, ..., z^D` under
/// tensor Gauss-Legendre quadrature.
pub fn gram_schmidt_kernel(zeta: Complex64, z: Complex64, degree: usize, q: usize) -> Result<f64> {
    if degree > 60 {
        return Err(Error::IllConditioned(degree));
    }
    let q = q.max(2 * degree + 2);
    let rule = rectangle_rule(zeta.re, zeta.im, q);
    gram_schmidt_on_rule(&rule, z, degree)
}

/// Same machinery on the unit disc; serves as a calibration run against the
/// known disc kernel `1 / (pi (1 - |z|^2)^2)`.
pub fn gram_schmidt_kernel_disc(z: Complex64, degree: usize, q: usize) -> Result<f64> {
    let rule = disc_rule(q.max(2 * degree + 2));
    gram_schmidt_on_rule(&rule, z, degree)
}

fn gram_schmidt_on_rule(rule: &Rule, z: Complex64, degree: usize) -> Result<f64> {
    let npts = rule.points.len();
    let ncols = degree + 1;
    let sqrt_w: Vec<f64> = rule.weights.iter().map(|w| w.sqrt()).collect();

    // columns of monomial values scaled by sqrt(weight)
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(ncols);
    for j in 0..ncols {
        let col: Vec<Complex64> = rule
            .points
            .iter()
            .zip(&sqrt_w)
            .map(|(p, sw)| p.powu(j as u32) * sw)
            .collect();
        cols.push(col);
    }

    // recombination coefficients: phi_j(z) = sum_m coef[j][m] z^m
    let mut coefs: Vec<Vec<Complex64>> = (0..ncols)
        .map(|j| {
            let mut c = vec![Complex64::new(0.0, 0.0); ncols];
            c[j] = Complex64::new(1.0, 0.0);
            c
        })
        .collect();

    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..npts {
            s += a[i].conj() * b[i];
        }
        s
    };

    for j in 0..ncols {
        let norm_before = dot(&cols[j], &cols[j]).re.sqrt();
        // two projection passes ("twice is enough")
        for _pass in 0..2 {
            for i in 0..j {
                let (head, tail) = cols.split_at_mut(j);
                let proj = dot(&head[i], &tail[0]);
                for p in 0..npts {
                    let d = proj * head[i][p];
                    tail[0][p] -= d;
                }
                let (chead, ctail) = coefs.split_at_mut(j);
                for m in 0..ncols {
                    let d = proj * chead[i][m];
                    ctail[0][m] -= d;
                }
            }
        }
        let norm = dot(&cols[j], &cols[j]).re.sqrt();
        if norm < 1e-8 * norm_before || norm == 0.0 {
            return Err(Error::IllConditioned(j));
        }
        let inv = 1.0 / norm;
        for p in 0..npts {
            cols[j][p] *= inv;
        }
        for m in 0..ncols {
            coefs[j][m] *= inv;
        }
    }

    // kernel = sum_j |phi_j(z)|^2
    let powers: Vec<Complex64> = (0..ncols).map(|m| z.powu(m as u32)).collect();
    let mut kernel = 0.0;
    for j in 0..ncols {
        let mut val = Complex64::new(0.0, 0.0);
        for m in 0..=j {
            val += coefs[j][m] * powers[m];
        }
        kernel += val.norm_sqr();
    }
    Ok(kernel)
}
