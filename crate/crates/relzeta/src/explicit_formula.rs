//! Both sides of the explicit formula linking zeros to prime powers, the
//! local explicit formula at a single prime, and the Gamma-factor lattice
//! sums.

use crate::error::{Error, Result};
use crate::euler::EulerProductSpec;
use crate::interpolation::InterpolationFn;
use crate::kahan::KahanComplex;
use crate::lfunctions::{archimedean_w, w_functional, GammaFactor, SelbergLFunction};
use crate::relations::zero_sum;
use crate::testfn::TestFunction;
use crate::zeros::ZeroStore;
use num_complex::Complex64;
use serde::Serialize;
use std::cell::RefCell;
use std::f64::consts::PI;

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Outcome of one explicit-formula balance check.
#[derive(Debug, Clone, Serialize)]
pub struct EFReport {
    pub label: String,
    pub spectral_re: f64,
    pub spectral_im: f64,
    pub arithmetic_re: f64,
    pub arithmetic_im: f64,
    pub discrepancy: f64,
    pub budget: f64,
    pub zeros_used: usize,
    pub t: f64,
    pub pass: bool,
}

/// Zero-count density dN/dt of the completed L-function at height t,
/// from the standard counting asymptotics.
fn zero_density(gf: &GammaFactor, t: f64) -> f64 {
    let t = t.max(10.0);
    (gf.degree() / (2.0 * PI)) * (t / (2.0 * PI)).ln() + gf.q().ln() / PI
}

/// Estimated absolute size of the zero sum beyond height T: integral of
/// |hhat(1/2 + it)| against the zero density over both signs of t.
pub fn spectral_tail_estimate(gf: &GammaFactor, h: &TestFunction, t_from: f64) -> Result<f64> {
    let mut tail = 0.0;
    let step = 10.0;
    let mut t = t_from;
    let mut last = f64::INFINITY;
    for _ in 0..60 {
        let mag = h.mellin(c64(0.5, t + 0.5 * step), 1e-13)?.value.norm();
        let chunk = 2.0 * mag * zero_density(gf, t + 0.5 * step) * step;
        tail += chunk;
        t += step;
        if chunk < 1e-16 && last < 1e-16 {
            return Ok(tail);
        }
        last = chunk;
    }
    // Close the remainder generously: decay was at least geometric in the
    // observed window.
    Ok(tail + last * 10.0)
}

/// m_L hhat(0) + m_L hhat(1) - sum over zeros |Im rho| <= T of hhat(rho).
///
/// The store holds positive ordinates only. For real-coefficient
/// L-functions the negative ordinates are their mirror; otherwise the
/// conjugate label's store supplies them (zeros of conj(L) at gamma are
/// zeros of L at -gamma).
pub fn spectral_side(
    lf: &SelbergLFunction,
    h: &TestFunction,
    store: &ZeroStore,
    t_top: f64,
    tol: f64,
) -> Result<(Complex64, f64, usize)> {
    let m = lf.gamma.pole_order() as f64;
    let mut acc = KahanComplex::new();
    let mut err = 0.0;
    if m > 0.0 {
        let h0 = h.mellin(c64(0.0, 0.0), tol)?;
        let h1 = h.mellin(c64(1.0, 0.0), tol)?;
        acc.add(m * (h0.value + h1.value));
        err += m * (h0.err + h1.err);
    }
    let self_dual = lf.conjugate_label.is_none();
    let positive = store.complete_below(&lf.label, t_top)?;
    let mut zeros_used = 0usize;
    for rec in positive {
        let mh = h.mellin(rec.rho, tol)?;
        let term = if self_dual {
            // mirror zero at conj(rho): hhat(conj rho) = conj(hhat(rho))
            mh.value + mh.value.conj()
        } else {
            mh.value
        };
        acc.add(-(rec.multiplicity as f64) * term);
        err += (rec.multiplicity as f64) * mh.err * if self_dual { 2.0 } else { 1.0 };
        zeros_used += rec.multiplicity as usize * if self_dual { 2 } else { 1 };
    }
    if let Some(conj_label) = &lf.conjugate_label {
        for rec in store.complete_below(conj_label, t_top)? {
            // zero of L at -gamma: rho = 1/2 - i gamma = conj(rec.rho),
            // and hhat(conj rho) = conj(hhat(rho)) for real h.
            let mh = h.mellin(rec.rho, tol)?;
            acc.add(-(rec.multiplicity as f64) * mh.value.conj());
            err += rec.multiplicity as f64 * mh.err;
            zeros_used += rec.multiplicity as usize;
        }
    }
    let tail = spectral_tail_estimate(&lf.gamma, h, t_top)?;
    Ok((acc.value(), err + tail, zeros_used))
}

/// Prime-power sums, the h(1) constant, and the archimedean functionals:
///
///   sum_n [Lambda_L(n) h(n) + conj(Lambda_L(n)) h*(n)]
///   + (-2 log Q + d C_E) h(1) + sum_j W_{lambda_j, mu_j}(h).
///
/// The sign of the log Q term is pinned by high-precision balance
/// measurements for two independent Gamma-data sets (see the crate tests);
/// d = 2 sum lambda_j and C_E is Euler's constant.
pub fn arithmetic_side(
    lf: &SelbergLFunction,
    h: &TestFunction,
    tol: f64,
) -> Result<(Complex64, f64)> {
    let (a, b) = h.support();
    let mut acc = KahanComplex::new();
    let mut err = 0.0;
    // Direct terms: n in [a, b].
    for n in (a.ceil() as u64).max(2)..=(b.floor() as u64) {
        let lam = lf.lambda(n)?;
        if lam.norm() != 0.0 {
            acc.add(lam * h.eval(n as f64));
        }
    }
    // Involution terms: h*(n) = (1/n) h(1/n) nonzero for n <= 1/a.
    if a < 0.5 {
        for n in 2..=(1.0 / a).floor() as u64 {
            let lam = lf.lambda(n)?;
            if lam.norm() != 0.0 {
                acc.add(lam.conj() * h.star_eval(n as f64));
            }
        }
    }
    let h1 = h.eval(1.0);
    if h1 != 0.0 {
        let constant = -2.0 * lf.gamma.q().ln() + lf.gamma.degree() * EULER_GAMMA;
        acc.add(c64(constant * h1, 0.0));
    }
    for &(lambda, mu) in lf.gamma.pairs() {
        acc.add(archimedean_w(lambda, mu, h, tol)?);
        err += tol;
    }
    Ok((acc.value(), err))
}

/// Balances the two sides, growing the truncation height until the
/// predicted zero-sum tail is well under the tolerance (bounded by the
/// store's certified completeness height).
pub fn verify(
    lf: &SelbergLFunction,
    h: &TestFunction,
    store: &ZeroStore,
    tolerance: f64,
) -> Result<EFReport> {
    let t_max = match &lf.conjugate_label {
        Some(conj) => store.t_complete(&lf.label).min(store.t_complete(conj)),
        None => store.t_complete(&lf.label),
    };
    if t_max <= 0.0 {
        return Err(Error::MissingZeros(lf.label.clone()));
    }
    let mut t = 100.0f64.min(t_max);
    loop {
        let tail = spectral_tail_estimate(&lf.gamma, h, t)?;
        if tail < 0.1 * tolerance || t >= t_max {
            break;
        }
        t = (t + 100.0).min(t_max);
    }
    // Floor the quadrature tolerance at what the integrator can certify;
    // an unattainably small `tolerance` then fails cleanly on the budget
    // instead of erroring inside the quadrature.
    let quad_tol = (tolerance * 1e-3).clamp(1e-13, 1e-11);
    let (spectral, spectral_err, zeros_used) = spectral_side(lf, h, store, t, quad_tol)?;
    let (arithmetic, arith_err) = arithmetic_side(lf, h, quad_tol)?;
    let discrepancy = (spectral - arithmetic).norm();
    let budget = spectral_err + arith_err;
    Ok(EFReport {
        label: lf.label.clone(),
        spectral_re: spectral.re,
        spectral_im: spectral.im,
        arithmetic_re: arithmetic.re,
        arithmetic_im: arithmetic.im,
        discrepancy,
        budget,
        zeros_used,
        t,
        pass: discrepancy <= budget.max(tolerance),
    })
}

/// Local prime sum of the explicit formula at p:
///
///   W(h, p) = sum_{m>=1} [Lambda(p^m) h(p^m)
///           + conj(Lambda(p^m)) p^{-m} h(p^{-m})].
pub fn local_w(spec: &EulerProductSpec, h: &TestFunction, p: u64) -> Result<Complex64> {
    let factor = spec.factor(p)?;
    let (a, b) = h.support();
    let logp = (p as f64).ln();
    let m_up = (b.ln() / logp).floor().max(0.0) as usize;
    let m_down = ((1.0 / a).ln() / logp).floor().max(0.0) as usize;
    let m_max = m_up.max(m_down);
    if m_max == 0 {
        return Ok(c64(0.0, 0.0));
    }
    let r = factor.power_sums(m_max);
    let mut acc = KahanComplex::new();
    for m in 1..=m_max {
        let pm = (p as f64).powi(m as i32);
        let lam = r[m - 1] * logp;
        let direct = h.eval(pm);
        if direct != 0.0 {
            acc.add(lam * direct);
        }
        let star = h.star_eval(pm);
        if star != 0.0 {
            acc.add(lam.conj() * star);
        }
    }
    Ok(acc.value())
}

/// The correction separating the local zero-lattice sum from local_w:
///
///   2 N log p h(1) + sum_{m>=1} [Lambda(p^m) p^m h(p^m)
///                              + conj(Lambda(p^m)) h(p^{-m})],
///
/// obtained by carrying the Poisson summation through both lattice pieces
/// (the m = 0 term and the reflected-side reweighting).
pub fn local_correction(spec: &EulerProductSpec, h: &TestFunction, p: u64) -> Result<Complex64> {
    let factor = spec.factor(p)?;
    let n = factor.degree() as f64;
    let (a, b) = h.support();
    let logp = (p as f64).ln();
    let m_up = (b.ln() / logp).floor().max(0.0) as usize;
    let m_down = ((1.0 / a).ln() / logp).floor().max(0.0) as usize;
    let m_max = m_up.max(m_down);
    let mut acc = KahanComplex::new();
    acc.add(c64(2.0 * n * logp * h.eval(1.0), 0.0));
    if m_max > 0 {
        let r = factor.power_sums(m_max);
        for m in 1..=m_max {
            let pm = (p as f64).powi(m as i32);
            let lam = r[m - 1] * logp;
            let direct = h.eval(pm);
            if direct != 0.0 {
                acc.add(lam * pm * direct);
            }
            let refl = h.eval(1.0 / pm);
            if refl != 0.0 {
                acc.add(lam.conj() * refl);
            }
        }
    }
    Ok(acc.value())
}

/// Truncated sum over the local zero lattice rho_{i,k} = (i theta_i + 2 pi
/// i k)/log p, |k| <= K, of hhat(rho) + hhat(1 - conj(rho)); requires all
/// roots on the unit circle. Returns the sum and a lattice-tail estimate.
pub fn local_zero_sum(
    spec: &EulerProductSpec,
    h: &TestFunction,
    p: u64,
    k_cut: i64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    let factor = spec.factor(p)?;
    let roots = factor.roots().ok_or(Error::MissingRoots(p))?;
    if !factor.roots_on_unit_circle(1e-9) {
        return Err(Error::NonUnitaryRoots(p));
    }
    let logp = (p as f64).ln();
    let mut acc = KahanComplex::new();
    let mut err = 0.0;
    let mut edge = 0.0f64;
    for root in roots {
        let theta = root.arg();
        for k in -k_cut..=k_cut {
            let rho = c64(0.0, (theta + 2.0 * PI * k as f64) / logp);
            let m1 = h.mellin(rho, tol)?;
            let m2 = h.mellin(Complex64::new(1.0, rho.im), tol)?;
            acc.add(m1.value + m2.value);
            err += m1.err + m2.err;
            if k == k_cut || k == -k_cut {
                edge = edge.max(m1.value.norm() + m2.value.norm());
            }
        }
    }
    // Lattice tail: the edge terms decay super-geometrically in k; a
    // conservative closure charges ten more rows at the edge magnitude.
    Ok((acc.value(), err + 10.0 * roots.len() as f64 * edge))
}

/// Sum of hhat over the Gamma-factor pole lattice s = -(n + mu_j)/lambda_j,
/// n >= 0. Demands supp h in (1, inf) so hhat decays along Re s -> -inf.
pub fn gamma_local_sum(gf: &GammaFactor, h: &TestFunction, tol: f64) -> Result<Complex64> {
    let (a, _) = h.support();
    if a <= 1.0 {
        return Err(Error::Support(format!(
            "Gamma lattice sum needs supp h in (1, inf); support starts at {a}"
        )));
    }
    let mut acc = KahanComplex::new();
    for &(lambda, mu) in gf.pairs() {
        let mut n = 0u32;
        loop {
            let s = -(c64(n as f64, 0.0) + mu) / lambda;
            let m = h.mellin(s, tol)?;
            acc.add(m.value);
            // Terms shrink like a^{Re s}; stop once safely below tolerance.
            if m.value.norm() < tol * 1e-3 && n > 2 {
                break;
            }
            n += 1;
            if n > 2000 {
                return Err(Error::SeriesTail(format!(
                    "Gamma lattice sum did not converge for (lambda, mu) = ({lambda}, {mu})"
                )));
            }
        }
    }
    Ok(acc.value())
}

/// int h(u) w(u) u^{s-1} du, falling back to the plain Mellin transform
/// when no weight is given.
fn weighted_mellin(
    h: &TestFunction,
    omega: Option<&InterpolationFn>,
    s: Complex64,
    tol: f64,
) -> Result<Complex64> {
    match omega {
        None => Ok(h.mellin(s, tol)?.value),
        Some(w) => {
            let captured: RefCell<Option<Error>> = RefCell::new(None);
            let f = |u: f64| match w.eval(u) {
                Ok(v) => v,
                Err(e) => {
                    captured.borrow_mut().get_or_insert(e);
                    c64(0.0, 0.0)
                }
            };
            let m = h.zero_sum_integral(1.0, s, Some(f), w.osc_rate(), tol)?;
            if let Some(e) = captured.into_inner() {
                return Err(e);
            }
            Ok(m.value)
        }
    }
}

/// Archimedean functionals of the weighted test function u -> h(u) w(u),
/// summed over the Gamma-factor pairs. A complex weight is handled by
/// applying the (real-linear) functional to the real and imaginary parts.
fn weighted_w_sum(
    gf: &GammaFactor,
    h: &TestFunction,
    omega: Option<&InterpolationFn>,
    tol: f64,
) -> Result<Complex64> {
    let mut acc = KahanComplex::new();
    match omega {
        None => {
            for &(lambda, mu) in gf.pairs() {
                acc.add(archimedean_w(lambda, mu, h, tol)?);
            }
        }
        Some(w) => {
            let captured: RefCell<Option<Error>> = RefCell::new(None);
            let weight = |u: f64| match w.eval(u) {
                Ok(v) => v,
                Err(e) => {
                    captured.borrow_mut().get_or_insert(e);
                    c64(0.0, 0.0)
                }
            };
            let re_part = |u: f64| h.eval(u) * weight(u).re;
            let im_part = |u: f64| h.eval(u) * weight(u).im;
            for &(lambda, mu) in gf.pairs() {
                let wr = w_functional(lambda, mu, &re_part, h.support(), tol)?;
                let wi = w_functional(lambda, mu, &im_part, h.support(), tol)?;
                acc.add(wr + Complex64::new(0.0, 1.0) * wi);
            }
            if let Some(e) = captured.into_inner() {
                return Err(e);
            }
        }
    }
    Ok(acc.value())
}

/// The weighted prime-power sum sum_n Lambda_L(n) w(n) h(n), recovered
/// entirely from the zeros and poles of L via its explicit formula applied
/// to the test function u -> h(u) w(u):
///
///   m_L (hhat_w(0) + hhat_w(1)) - sum_rho hhat_w(rho) - sum_j W_j(h w).
///
/// Requires supp h in (1, inf) so the reflected-side and u = 1 terms of
/// the formula vanish identically.
pub fn weighted_prime_sum_via_zeros(
    lf: &SelbergLFunction,
    h: &TestFunction,
    omega: Option<&InterpolationFn>,
    store: &ZeroStore,
    tol: f64,
) -> Result<Complex64> {
    let (a, _) = h.support();
    if a <= 1.0 {
        return Err(Error::Support(format!(
            "prime-sum recovery needs supp h in (1, inf); support starts at {a}"
        )));
    }
    let t_max = match &lf.conjugate_label {
        Some(conj) => store.t_complete(&lf.label).min(store.t_complete(conj)),
        None => store.t_complete(&lf.label),
    };
    if t_max <= 0.0 {
        return Err(Error::MissingZeros(lf.label.clone()));
    }
    let mut total = KahanComplex::new();
    let m = lf.gamma.pole_order() as f64;
    if m > 0.0 {
        let h0 = weighted_mellin(h, omega, c64(0.0, 0.0), tol)?;
        let h1 = weighted_mellin(h, omega, c64(1.0, 0.0), tol)?;
        total.add(m * (h0 + h1));
    }
    total.add(-zero_sum(h, 1.0, lf, store, omega, t_max, tol)?);
    total.add(-weighted_w_sum(&lf.gamma, h, omega, tol)?);
    Ok(total.value())
}

/// The same weighted prime-power sum evaluated directly from coefficients.
pub fn weighted_prime_sum_direct(
    lf: &SelbergLFunction,
    h: &TestFunction,
    omega: Option<&InterpolationFn>,
) -> Result<Complex64> {
    let (a, b) = h.support();
    let mut acc = KahanComplex::new();
    for n in (a.ceil() as u64).max(2)..=(b.floor() as u64) {
        let lam = lf.lambda(n)?;
        if lam.norm() != 0.0 {
            let w = match omega {
                None => c64(1.0, 0.0),
                Some(w) => w.eval(n as f64)?,
            };
            acc.add(lam * w * h.eval(n as f64));
        }
    }
    Ok(acc.value())
}

/// Two independent zero-sum recoveries of the same prime-power sum.
#[derive(Debug, Clone, Serialize)]
pub struct DualRouteReport {
    pub label: String,
    pub via_own_re: f64,
    pub via_own_im: f64,
    pub via_reference_re: f64,
    pub via_reference_im: f64,
    pub direct_re: f64,
    pub direct_im: f64,
    /// |own-zeros route - reference-zeros route|
    pub route_gap: f64,
    /// Largest deviation of either route from the direct coefficient sum.
    pub worst_direct_gap: f64,
}

/// Recovers sum_n Lambda_L(n) h(n) two ways: from the zeros of L itself,
/// and from the zeros of the reference function weighted by an interpolant
/// of the prime-power coefficients of L.
pub fn dual_route_prime_sum(
    lf: &SelbergLFunction,
    omega: &InterpolationFn,
    reference: &SelbergLFunction,
    h: &TestFunction,
    store: &ZeroStore,
    tol: f64,
) -> Result<DualRouteReport> {
    let own = weighted_prime_sum_via_zeros(lf, h, None, store, tol)?;
    let via_ref = weighted_prime_sum_via_zeros(reference, h, Some(omega), store, tol)?;
    let direct = weighted_prime_sum_direct(lf, h, None)?;
    Ok(DualRouteReport {
        label: lf.label.clone(),
        via_own_re: own.re,
        via_own_im: own.im,
        via_reference_re: via_ref.re,
        via_reference_im: via_ref.im,
        direct_re: direct.re,
        direct_im: direct.im,
        route_gap: (own - via_ref).norm(),
        worst_direct_gap: (own - direct).norm().max((via_ref - direct).norm()),
    })
}

/// Three independent zero-sum recoveries of a tensor prime-power sum.
#[derive(Debug, Clone, Serialize)]
pub struct TripleRouteReport {
    pub label: String,
    pub via_tensor_re: f64,
    pub via_tensor_im: f64,
    pub via_left_re: f64,
    pub via_left_im: f64,
    pub via_reference_re: f64,
    pub via_reference_im: f64,
    pub direct_re: f64,
    pub direct_im: f64,
    /// Largest pairwise gap among the three routes.
    pub route_gap: f64,
    pub worst_direct_gap: f64,
}

/// Recovers sum_n Lambda_{tensor}(n) h(n) three ways: from the tensor
/// L-function's own zeros, from the left factor's zeros weighted by an
/// interpolant of the right factor's coefficients, and from the reference
/// function's zeros weighted by the product of both interpolants.
///
/// Returns MissingZeros when no zeros of the tensor L-function are
/// available; callers report that case as skipped rather than failed.
pub fn triple_route_prime_sum(
    tensor_lf: &SelbergLFunction,
    left_lf: &SelbergLFunction,
    omega_left: &InterpolationFn,
    omega_right: &InterpolationFn,
    reference: &SelbergLFunction,
    h: &TestFunction,
    store: &ZeroStore,
    tol: f64,
) -> Result<TripleRouteReport> {
    let via_tensor = weighted_prime_sum_via_zeros(tensor_lf, h, None, store, tol)?;
    let via_left = weighted_prime_sum_via_zeros(left_lf, h, Some(omega_right), store, tol)?;
    let pair = omega_left.product(omega_right);
    let via_ref = weighted_prime_sum_via_zeros(reference, h, Some(&pair), store, tol)?;
    let direct = weighted_prime_sum_direct(tensor_lf, h, None)?;
    let route_gap = (via_tensor - via_left)
        .norm()
        .max((via_tensor - via_ref).norm())
        .max((via_left - via_ref).norm());
    let worst_direct_gap = (via_tensor - direct)
        .norm()
        .max((via_left - direct).norm())
        .max((via_ref - direct).norm());
    Ok(TripleRouteReport {
        label: tensor_lf.label.clone(),
        via_tensor_re: via_tensor.re,
        via_tensor_im: via_tensor.im,
        via_left_re: via_left.re,
        via_left_im: via_left.im,
        via_reference_re: via_ref.re,
        via_reference_im: via_ref.im,
        direct_re: direct.re,
        direct_im: direct.im,
        route_gap,
        worst_direct_gap,
    })
}
