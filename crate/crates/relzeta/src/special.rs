//! Special functions: complex log-Gamma (Lanczos) and the Hurwitz zeta
//! function (Euler-Maclaurin), the two primitives behind Gamma-factor and
//! Dirichlet-L evaluation.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Lanczos coefficients, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_C: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// log Gamma(z), matching the analytic continuation from the positive real
/// axis (not the principal log of Gamma). For Re(z) < 0.5 the value is
/// walked up with log Gamma(z) = log Gamma(z+1) - log z, which preserves
/// that branch away from the negative real axis.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let mut shift = Complex64::new(0.0, 0.0);
        let mut w = z;
        while w.re < 0.5 {
            shift += w.ln();
            w += 1.0;
        }
        return ln_gamma(w) - shift;
    }
    let zm1 = z - 1.0;
    let mut a = Complex64::new(LANCZOS_C[0], 0.0);
    for (k, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        a += c / (zm1 + k as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    (zm1 + 0.5) * t.ln() - t + ((2.0 * PI).sqrt() * a).ln()
}

/// Gamma(z) via exp(log Gamma(z)).
pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// Even-index Bernoulli numbers B_2, B_4, ..., B_30.
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Hurwitz zeta zeta(s, a) for a > 0, s != 1, by Euler-Maclaurin:
///
///   zeta(s,a) = sum_{k<N} (k+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
///             + sum_j B_{2j}/(2j)! (s)_{2j-1} (N+a)^{-s-2j+1}.
///
/// N scales with |Im s| so the asymptotic tail converges; the size of the
/// last correction term is checked against `tol` and reported on failure.
pub fn hurwitz_zeta(s: Complex64, a: f64, tol: f64) -> Result<Complex64> {
    if (s - Complex64::new(1.0, 0.0)).norm() < 1e-10 {
        return Err(Error::PoleProximity(s));
    }
    hurwitz_zeta_impl(s, a, tol, false)
}

/// zeta(s, a) - 1/(s-1): entire in s, finite at s = 1 (where it equals
/// -digamma(a)). Characters with zero mean cancel the subtracted pole, so
/// Dirichlet L stays evaluable through s = 1.
pub fn hurwitz_zeta_deflated(s: Complex64, a: f64, tol: f64) -> Result<Complex64> {
    hurwitz_zeta_impl(s, a, tol, true)
}

fn hurwitz_zeta_impl(s: Complex64, a: f64, tol: f64, deflate: bool) -> Result<Complex64> {
    if a <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "hurwitz zeta needs a > 0, got {a}"
        )));
    }
    let n = (s.im.abs() * 0.8).max(25.0).ceil() as usize;
    let mut head = crate::kahan::KahanComplex::new();
    for k in 0..n {
        head.add((-s * Complex64::new(k as f64 + a, 0.0).ln()).exp());
    }
    let na = Complex64::new(n as f64 + a, 0.0);
    let ln_na = na.ln();
    let mut out = head.value();
    let w = (Complex64::new(1.0, 0.0) - s) * ln_na;
    if deflate {
        // ((N+a)^{1-s} - 1)/(s-1) = -ln(N+a) (e^w - 1)/w, stable at w = 0.
        let em1_over_w = if w.norm() < 1e-4 {
            Complex64::new(1.0, 0.0) + w / 2.0 + w * w / 6.0 + w * w * w / 24.0
        } else {
            (w.exp() - 1.0) / w
        };
        out -= ln_na * em1_over_w;
    } else {
        out += w.exp() / (s - 1.0);
    }
    out += 0.5 * (-s * ln_na).exp();

    // Correction sum. poch tracks (s)(s+1)...(s+2j-2); fact tracks (2j)!.
    let base = (-s * ln_na).exp();
    let inv_na2 = (na * na).inv();
    let mut poch = s; // (s)_1
    let mut fact = 2.0f64; // 2!
    let mut pw = base / na; // (N+a)^{-s-1}
    let mut last = f64::INFINITY;
    for (j, &b2j) in BERNOULLI_EVEN.iter().enumerate() {
        let term = pw * poch * (b2j / fact);
        out += term;
        last = term.norm();
        if last < tol * 0.01 {
            return Ok(out);
        }
        // Advance to j+1: multiply pochhammer by (s+2j-1)(s+2j),
        // factorial by (2j+1)(2j+2), power by (N+a)^{-2}.
        let jj = 2.0 * (j as f64 + 1.0);
        poch *= (s + (jj - 1.0)) * (s + jj);
        fact *= (jj + 1.0) * (jj + 2.0);
        pw *= inv_na2;
    }
    if last < tol {
        Ok(out)
    } else {
        Err(Error::PrecisionUnreachable {
            requested: tol,
            achieved: last,
        })
    }
}
