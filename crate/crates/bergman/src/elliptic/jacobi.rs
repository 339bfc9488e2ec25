//! Jacobi elliptic functions sn, cn, dn.
//!
//! Real arguments are evaluated with the descending Landen (AGM) phase
//! recursion. Complex arguments are split as `u = x + iy` and recombined
//! through the addition theorem, which only needs real-argument values at
//! the modulus `k` (for `x`) and the complementary modulus `k'` (for `y`).

use super::{complete_k, Modulus, POLE_RADIUS};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Values of (sn, cn, dn) at one argument `u` for modulus `k`.
#[derive(Debug, Clone, Copy)]
pub struct JacobiTriple {
    pub sn: Complex64,
    pub cn: Complex64,
    pub dn: Complex64,
    pub u: Complex64,
    pub k: f64,
}

/// sn, cn, dn for real argument `u`.
pub fn jacobi_real(u: f64, m: Modulus) -> (f64, f64, f64) {
    let k = m.k();
    let big_k = complete_k(m);
    // reduce to |u| <= 2K using sn(u + 2K) = -sn u, cn(u + 2K) = -cn u
    let period = 4.0 * big_k;
    let mut ur = u.rem_euclid(period);
    let mut sign = 1.0;
    if ur > 2.0 * big_k {
        ur -= 2.0 * big_k;
        sign = -1.0;
    }
    if ur > big_k {
        // sn(2K - u) = sn u, cn(2K - u) = -cn u keeps the recursion argument small
        let (s, c, d) = jacobi_core(2.0 * big_k - ur, k);
        return (sign * s, -sign * c, d);
    }
    let (s, c, d) = jacobi_core(ur, k);
    (sign * s, sign * c, d)
}

fn jacobi_core(u: f64, k: f64) -> (f64, f64, f64) {
    // descending Landen: a_{n+1} = (a_n + b_n)/2, b_{n+1} = sqrt(a_n b_n)
    let mut a = [0.0f64; 32];
    let mut c = [0.0f64; 32];
    a[0] = 1.0;
    c[0] = k;
    let mut b = (1.0 - k * k).sqrt();
    let mut n = 0;
    while c[n].abs() > 1e-17 * a[n] && n < 31 {
        let an = 0.5 * (a[n] + b);
        let cn = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
        a[n] = an;
        c[n] = cn;
    }
    let mut phi = (1u64 << n) as f64 * a[n] * u;
    for i in (1..=n).rev() {
        phi = 0.5 * (phi + (c[i] / a[i] * phi.sin()).asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    let dn = (1.0 - k * k * sn * sn).sqrt();
    (sn, cn, dn)
}

/// Distance from `u` to the nearest pole of sn, at `2mK + (2n+1)iK'`.
pub fn pole_distance(u: Complex64, m: Modulus) -> f64 {
    let big_k = complete_k(m);
    let big_kp = complete_k(m.complementary());
    let rx = u.re.rem_euclid(2.0 * big_k);
    let dx = rx.min(2.0 * big_k - rx);
    let ry = u.im.rem_euclid(2.0 * big_kp);
    let dy = (ry - big_kp).abs();
    dx.hypot(dy)
}

/// sn, cn, dn at complex argument `u` for modulus `k`.
///
/// Fails with [`Error::NearPole`] when `u` is within `POLE_RADIUS` of a
/// pole of sn (congruent to `iK'` mod the period lattice).
pub fn jacobi(u: Complex64, m: Modulus) -> Result<JacobiTriple> {
    jacobi_guarded(u, m, POLE_RADIUS)
}

/// Same as [`jacobi`] with an explicit pole radius.
pub fn jacobi_guarded(u: Complex64, m: Modulus, pole_radius: f64) -> Result<JacobiTriple> {
    if pole_distance(u, m) < pole_radius {
        return Err(Error::NearPole(u, pole_radius));
    }
    let k = m.k();
    let (s, c, d) = jacobi_real(u.re, m);
    let (s1, c1, d1) = jacobi_real(u.im, m.complementary());
    let denom = c1 * c1 + k * k * s * s * s1 * s1;
    let sn = Complex64::new(s * d1, c * d * s1 * c1) / denom;
    let cn = Complex64::new(c * c1, -s * d * s1 * d1) / denom;
    let dn = Complex64::new(d * c1 * d1, -k * k * s * c * s1) / denom;
    Ok(JacobiTriple { sn, cn, dn, u, k })
}
