//! L-function registry: Gamma-factor data, direct evaluation routes for
//! zeta and Dirichlet L, functional-equation residuals, and the
//! archimedean functional W_{lambda,mu}.

use crate::arithmetic::{gauss_sum, CoefficientStream, DirichletCharacter, Parity, PrimeTable};
use crate::error::{Error, Result};
use crate::euler::EulerProductSpec;
use crate::quad;
use crate::special::{hurwitz_zeta, ln_gamma};
use crate::testfn::TestFunction;
use num_complex::Complex64;
use std::f64::consts::PI;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The data of a completed L-function: Q^s prod_j Gamma(lambda_j s + mu_j),
/// root number omega, and the pole order at s = 1.
#[derive(Debug, Clone)]
pub struct GammaFactor {
    q: f64,
    pairs: Vec<(f64, Complex64)>,
    omega: Complex64,
    pole_order: u32,
}

impl GammaFactor {
    pub fn new(
        q: f64,
        pairs: Vec<(f64, Complex64)>,
        omega: Complex64,
        pole_order: u32,
    ) -> Result<Self> {
        if !(q > 0.0) {
            return Err(Error::InvalidArgument(format!("Q must be positive, got {q}")));
        }
        if (omega.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "root number must be unimodular, |omega| = {}",
                omega.norm()
            )));
        }
        for &(lambda, mu) in &pairs {
            if !(lambda > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "Gamma-factor lambda must be positive, got {lambda}"
                )));
            }
            if mu.re < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "Gamma-factor mu must have Re >= 0, got {mu}"
                )));
            }
        }
        Ok(Self {
            q,
            pairs,
            omega,
            pole_order,
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn pairs(&self) -> &[(f64, Complex64)] {
        &self.pairs
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn pole_order(&self) -> u32 {
        self.pole_order
    }

    /// Degree d = 2 sum_j lambda_j.
    pub fn degree(&self) -> f64 {
        2.0 * self.pairs.iter().map(|p| p.0).sum::<f64>()
    }

    /// log of Q^s prod Gamma(lambda_j s + mu_j), continued from the real
    /// axis.
    pub fn ln_eval(&self, s: Complex64) -> Complex64 {
        let mut out = s * self.q.ln();
        for &(lambda, mu) in &self.pairs {
            out += ln_gamma(lambda * s + mu);
        }
        out
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.ln_eval(s).exp()
    }

    /// Distance from s to the nearest pole of the Gamma-factor (the
    /// lattice lambda_j s + mu_j = -n).
    pub fn pole_distance(&self, s: Complex64) -> f64 {
        let mut dist = f64::INFINITY;
        for &(lambda, mu) in &self.pairs {
            let z = lambda * s + mu;
            if z.re < 0.5 {
                let n = (-z.re).round().max(0.0);
                dist = dist.min((z - c64(-n, 0.0)).norm() / lambda);
            }
        }
        dist
    }

    /// The unimodular rotation that makes omega^{-1/2} L*(1/2 + it) real:
    /// exp(i arg gamma(1/2+it)) / omega^{1/2}, evaluated without
    /// under/overflow.
    pub fn critical_phase(&self, t: f64) -> Complex64 {
        let s = c64(0.5, t);
        let arg = self.ln_eval(s).im;
        let half_log_omega = self.omega.ln() * 0.5;
        (c64(0.0, arg) - half_log_omega).exp()
    }

    /// zeta: Q = pi^{-1/2}, one factor Gamma(s/2), omega = 1, simple pole.
    pub fn zeta() -> Self {
        Self {
            q: 1.0 / PI.sqrt(),
            pairs: vec![(0.5, c64(0.0, 0.0))],
            omega: c64(1.0, 0.0),
            pole_order: 1,
        }
    }

    /// Primitive non-principal Dirichlet character: Q = sqrt(q/pi),
    /// Gamma((s + delta)/2), omega = tau(chi) / (i^delta sqrt(q)).
    pub fn dirichlet(chi: &DirichletCharacter) -> Result<Self> {
        if !chi.is_primitive() || chi.is_principal() {
            return Err(Error::InvalidArgument(format!(
                "Gamma data requires a primitive non-principal character, got modulus {} label {}",
                chi.modulus(),
                chi.label()
            )));
        }
        let q = chi.modulus() as f64;
        let delta = match chi.parity() {
            Parity::Even => 0.0,
            Parity::Odd => 1.0,
        };
        let tau = gauss_sum(chi);
        let omega = tau / (c64(0.0, 1.0).powf(delta) * q.sqrt());
        Self::new(
            (q / PI).sqrt(),
            vec![(0.5, c64(delta / 2.0, 0.0))],
            omega,
            0,
        )
    }

    /// Level-1 holomorphic cusp form of even weight k in the analytic
    /// normalization: Gamma-factor (2 pi)^{-s - (k-1)/2} Gamma(s + (k-1)/2)
    /// up to an s-independent constant, i.e. Q = 1/(2 pi), pair
    /// (1, (k-1)/2); omega = i^k = +1 for k = 0 mod 4, -1 for k = 2 mod 4.
    pub fn modular_level1(k: u32) -> Result<Self> {
        if k < 12 || k % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "weight must be even and >= 12, got {k}"
            )));
        }
        let omega = if k % 4 == 0 { 1.0 } else { -1.0 };
        Self::new(
            1.0 / (2.0 * PI),
            vec![(1.0, c64((k as f64 - 1.0) / 2.0, 0.0))],
            c64(omega, 0.0),
            0,
        )
    }

    /// Rankin-Selberg square of a level-1 weight-k form:
    /// (4 pi)^{-s-k+1} Gamma(s + k - 1) Gamma(s) shape, Q = 1/(4 pi),
    /// pairs (1, k-1) and (1, 0); simple pole.
    pub fn rankin_selberg_level1(k: u32) -> Result<Self> {
        if k < 12 || k % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "weight must be even and >= 12, got {k}"
            )));
        }
        Self::new(
            1.0 / (4.0 * PI),
            vec![(1.0, c64(k as f64 - 1.0, 0.0)), (1.0, c64(0.0, 0.0))],
            c64(1.0, 0.0),
            1,
        )
    }
}

/// How L(s) itself can be computed.
#[derive(Debug, Clone)]
pub enum EvalRoute {
    /// Riemann zeta via Hurwitz zeta at a = 1.
    Zeta,
    /// Dirichlet L via q^{-s} sum_a chi(a) zeta(s, a/q).
    Dirichlet(DirichletCharacter),
    /// No direct evaluation (participates via coefficients and ingested
    /// zeros only).
    None,
}

/// A registered L-function: coefficients, prime-power coefficients through
/// the Euler-product spec, Gamma data, and an optional evaluation route.
#[derive(Debug, Clone)]
pub struct SelbergLFunction {
    pub label: String,
    pub coeffs: CoefficientStream,
    pub spec: EulerProductSpec,
    pub gamma: GammaFactor,
    pub route: EvalRoute,
    /// For non-self-dual L-functions: the label under which the conjugate
    /// L-function's zeros are stored (its zeros at gamma are this one's at
    /// -gamma). `None` means the coefficients are real and the zero set is
    /// symmetric about the real axis.
    pub conjugate_label: Option<String>,
}

impl SelbergLFunction {
    pub fn zeta(primes: &PrimeTable) -> Self {
        Self {
            label: "zeta".into(),
            coeffs: CoefficientStream::ones(),
            spec: EulerProductSpec::zeta(primes),
            gamma: GammaFactor::zeta(),
            route: EvalRoute::Zeta,
            conjugate_label: None,
        }
    }

    pub fn dirichlet(chi: &DirichletCharacter, primes: &PrimeTable) -> Result<Self> {
        let gamma = GammaFactor::dirichlet(chi)?;
        let chi_stream = chi.clone();
        Ok(Self {
            label: format!("dirichlet-{}.{}", chi.modulus(), chi.label()),
            coeffs: CoefficientStream::new(
                format!("chi-{}.{}", chi.modulus(), chi.label()),
                crate::arithmetic::Growth::SubPolynomial,
                move |n| chi_stream.eval(n),
            ),
            spec: EulerProductSpec::character(chi, primes),
            gamma,
            route: EvalRoute::Dirichlet(chi.clone()),
            conjugate_label: if chi.is_real() {
                None
            } else {
                let bar = chi.conjugate();
                Some(format!("dirichlet-{}.{}", bar.modulus(), bar.label()))
            },
        })
    }

    /// The discriminant form Delta (weight 12, level 1) in the analytic
    /// normalization, coefficients to `coeff_limit`.
    pub fn delta(primes: &PrimeTable, coeff_limit: u64) -> Result<Self> {
        let tau = crate::arithmetic::ramanujan_tau_stream(coeff_limit)?;
        let shifted = tau.shifted(12)?;
        let spec = EulerProductSpec::modular(&shifted, primes)?;
        Ok(Self {
            label: "delta".into(),
            coeffs: shifted,
            spec,
            gamma: GammaFactor::modular_level1(12)?,
            route: EvalRoute::None,
            conjugate_label: None,
        })
    }

    /// Lambda_L(n): the prime-power coefficients of -L'/L.
    pub fn lambda(&self, n: u64) -> Result<Complex64> {
        self.spec.lambda(n)
    }

    /// L(s) by the direct route.
    pub fn eval(&self, s: Complex64, tol: f64) -> Result<Complex64> {
        match &self.route {
            EvalRoute::Zeta => hurwitz_zeta(s, 1.0, tol),
            EvalRoute::Dirichlet(chi) => eval_dirichlet_l(chi, s, tol),
            EvalRoute::None => Err(Error::InvalidArgument(format!(
                "no direct evaluation route for {}",
                self.label
            ))),
        }
    }

    /// L*(s) = Q^s prod Gamma(lambda_j s + mu_j) L(s).
    pub fn complete(&self, s: Complex64, tol: f64) -> Result<Complex64> {
        if self.gamma.pole_distance(s) < 1e-6 {
            return Err(Error::PoleProximity(s));
        }
        if self.gamma.pole_order > 0 {
            for pole in [c64(0.0, 0.0), c64(1.0, 0.0)] {
                if (s - pole).norm() < 1e-6 {
                    return Err(Error::PoleProximity(s));
                }
            }
        }
        Ok(self.gamma.eval(s) * self.eval(s, tol)?)
    }

    /// |L*(s) - omega conj(L*(1 - conj(s)))| / max(|L*(s)|, 1).
    pub fn functional_equation_residual(&self, s: Complex64, tol: f64) -> Result<f64> {
        let lhs = self.complete(s, tol)?;
        let refl = self.complete(c64(1.0 - s.re, s.im), tol)?;
        let rhs = self.gamma.omega * refl.conj();
        Ok((lhs - rhs).norm() / lhs.norm().max(1.0))
    }
}

/// L(s, chi) = q^{-s} sum_{a=1}^q chi(a) zeta(s, a/q).
pub fn eval_dirichlet_l(chi: &DirichletCharacter, s: Complex64, tol: f64) -> Result<Complex64> {
    let q = chi.modulus();
    let principal = chi.is_principal();
    if principal && (s - c64(1.0, 0.0)).norm() < 1e-10 {
        return Err(Error::PoleProximity(s));
    }
    let mut acc = crate::kahan::KahanComplex::new();
    for a in 1..=q {
        let v = chi.eval(a);
        if v.norm() == 0.0 {
            continue;
        }
        // Non-principal characters sum to zero, so the per-term pole
        // subtraction cancels; this keeps s = 1 evaluable.
        let z = if principal {
            hurwitz_zeta(s, a as f64 / q as f64, tol)?
        } else {
            crate::special::hurwitz_zeta_deflated(s, a as f64 / q as f64, tol)?
        };
        acc.add(v * z);
    }
    Ok(acc.value() * (-s * (q as f64).ln()).exp())
}

/// The archimedean functional of Weil's explicit formula:
///
///   W_{lambda,mu}(h) = int_1^inf [h_{lambda,mu}(u) + h*_{lambda,mu}(u)
///       - 2 h(1) u^{(Re mu - 1)/lambda}]
///       u^{(1 - Re mu)/lambda} / (u^{1/lambda} - 1) du/u.
///
/// The u -> 1 singularity is removable (the bracket vanishes there); the
/// constant-tail part beyond the support is integrated in closed form.
pub fn archimedean_w(lambda: f64, mu: Complex64, h: &TestFunction, tol: f64) -> Result<Complex64> {
    let (a, b) = h.support();
    w_functional(lambda, mu, &|u| h.eval(u), (a, b), tol)
}

/// Engine behind [`archimedean_w`], generic in the (real) test function.
pub fn w_functional(
    lambda: f64,
    mu: Complex64,
    h: &dyn Fn(f64) -> f64,
    support: (f64, f64),
    tol: f64,
) -> Result<Complex64> {
    if !(lambda > 0.0) || mu.re < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "need lambda > 0 and Re(mu) >= 0, got lambda={lambda}, mu={mu}"
        )));
    }
    let (a, b) = support;
    let h1 = h(1.0);
    let twist = mu.im / lambda;
    let re_exp = (1.0 - mu.re) / lambda;
    // Full integrand on (1, infinity); smooth, removable at u = 1.
    let integrand = |u: f64| -> Complex64 {
        let mut bracket = Complex64::new(0.0, 0.0);
        let hv = h(u);
        if hv != 0.0 {
            bracket += hv * c64(0.0, -twist * u.ln()).exp();
        }
        let hs = h(1.0 / u);
        if hs != 0.0 {
            // (h_{lambda,mu})^*(u) = (1/u) h(1/u) (1/u)^{-i twist}
            bracket += hs / u * c64(0.0, twist * u.ln()).exp();
        }
        if h1 != 0.0 {
            bracket -= 2.0 * h1 * u.powf((mu.re - 1.0) / lambda);
        }
        bracket * u.powf(re_exp - 1.0) / (u.powf(1.0 / lambda) - 1.0)
    };
    // Value at u = 1 by l'Hopital: bracket'(1) = -h(1) (1 + 2(Re mu - 1)/lambda)
    // (the h'(1) and twist contributions cancel between h and h*).
    let at_one = c64(-lambda * h1 * (1.0 + 2.0 * (mu.re - 1.0) / lambda), 0.0);

    let u_top = b.max(1.0 / a).max(1.0 + 1e-3);
    let delta = 1e-4;

    // [1, 1+delta]: Simpson with the exact limit value at the endpoint.
    let f0 = at_one;
    let f1 = integrand(1.0 + 0.5 * delta);
    let f2 = integrand(1.0 + delta);
    let head = (f0 + 4.0 * f1 + f2) * (delta / 6.0);

    // [1+delta, u_top]: adaptive, with breakpoints at the support edges.
    let mut breaks = vec![1.0 + delta];
    for &edge in &[a, b, 1.0 / b, 1.0 / a] {
        if edge > 1.0 + delta && edge < u_top {
            breaks.push(edge);
        }
    }
    breaks.push(u_top);
    breaks.sort_by(|x, y| x.partial_cmp(y).unwrap());
    breaks.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    let mid = quad::integrate_with_splits(integrand, &breaks, tol)?;

    // Tail beyond all supports: bracket = -2 h(1) u^{(Re mu - 1)/lambda}
    // exactly, and int_U^inf -2h(1) du / (u (u^{1/lambda} - 1)) =
    // 2 lambda h(1) ln(1 - U^{-1/lambda}).
    let tail = if h1 != 0.0 {
        2.0 * lambda * h1 * (1.0 - u_top.powf(-1.0 / lambda)).ln()
    } else {
        0.0
    };

    Ok(head + mid.value + tail)
}

/// W_{lambda,mu} applied to u -> h(xu), in the x-scaled integral form
///
///   x^{mu/lambda} int_x^inf h(v) v^{(1-mu)/lambda} / (v^{1/lambda} -
///   x^{1/lambda}) dv/v,
///
/// valid when the support of u -> h(xu) lies in (1, infinity), i.e.
/// x < inf support(h).
pub fn archimedean_w_scaled(
    lambda: f64,
    mu: Complex64,
    h: &TestFunction,
    x: f64,
    tol: f64,
) -> Result<Complex64> {
    let (a, b) = h.support();
    if !(x > 0.0) || x >= a {
        return Err(Error::Support(format!(
            "scaled W needs x < {a} so the scaled support stays in (1, inf); got x={x}"
        )));
    }
    let xl = x.powf(1.0 / lambda);
    let q = quad::integrate(
        |v| {
            let hv = h.eval(v);
            if hv == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            hv * (((c64(1.0, 0.0) - mu) / lambda) * v.ln()).exp()
                / (v.powf(1.0 / lambda) - xl)
                / v
        },
        a,
        b,
        tol,
    )?;
    Ok(((mu / lambda) * x.ln()).exp() * q.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::characters_mod;

    fn first_char(q: u64, pred: impl Fn(&DirichletCharacter) -> bool) -> DirichletCharacter {
        characters_mod(q).into_iter().find(|c| pred(c)).unwrap()
    }

    #[test]
    fn zeta_values() {
        let primes = PrimeTable::new(100);
        let z = SelbergLFunction::zeta(&primes);
        let v = z.eval(c64(2.0, 0.0), 1e-13).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-12);
        // direct-series oracle at s = 2
        let direct: f64 = (1..200_000u64).map(|n| 1.0 / (n * n) as f64).sum();
        assert!((v.re - direct).abs() < 1e-5);
    }

    #[test]
    fn dirichlet_l_at_one_chi4() {
        let chi = first_char(4, |c| !c.is_principal());
        let v = eval_dirichlet_l(&chi, c64(1.0, 0.0), 1e-13).unwrap();
        // Leibniz: L(1, chi_4) = pi/4
        assert!((v.re - PI / 4.0).abs() < 1e-12, "got {v}");
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn dirichlet_l_real_on_real_axis_for_real_chi() {
        let chi = first_char(3, |c| !c.is_principal());
        assert!(chi.is_real());
        for &sigma in &[0.3, 0.8, 1.5, 2.0] {
            let v = eval_dirichlet_l(&chi, c64(sigma, 0.0), 1e-12).unwrap();
            assert!(v.im.abs() < 1e-12, "sigma={sigma}: {v}");
        }
    }

    #[test]
    fn dirichlet_l_series_oracle() {
        // partial sums with Abel-style averaging are slow; use s = 2 where
        // the series converges absolutely.
        let chi = first_char(5, |c| c.is_primitive() && !c.is_real());
        let s = c64(2.0, 0.0);
        let v = eval_dirichlet_l(&chi, s, 1e-13).unwrap();
        let mut acc = crate::kahan::KahanComplex::new();
        for n in 1..100_000u64 {
            acc.add(chi.eval(n) / (n * n) as f64);
        }
        assert!((v - acc.value()).norm() < 1e-8);
    }

    #[test]
    fn gamma_factor_validation() {
        assert!(GammaFactor::new(1.0, vec![(0.5, c64(0.0, 0.0))], c64(1.0, 0.0), 0).is_ok());
        assert!(GammaFactor::new(-1.0, vec![], c64(1.0, 0.0), 0).is_err());
        assert!(GammaFactor::new(1.0, vec![(0.0, c64(0.0, 0.0))], c64(1.0, 0.0), 0).is_err());
        assert!(GammaFactor::new(1.0, vec![(0.5, c64(-0.1, 0.0))], c64(1.0, 0.0), 0).is_err());
        assert!(GammaFactor::new(1.0, vec![], c64(2.0, 0.0), 0).is_err());
        assert_eq!(GammaFactor::zeta().degree(), 1.0);
        assert_eq!(GammaFactor::rankin_selberg_level1(12).unwrap().degree(), 4.0);
    }

    #[test]
    fn fe_residual_zeta() {
        let primes = PrimeTable::new(100);
        let z = SelbergLFunction::zeta(&primes);
        for &s in &[c64(0.6, 5.0), c64(0.3, 12.0), c64(0.5, 7.7)] {
            let r = z.functional_equation_residual(s, 1e-13).unwrap();
            assert!(r < 1e-9, "s={s}: residual {r}");
        }
    }

    #[test]
    fn fe_residual_dirichlet() {
        let primes = PrimeTable::new(100);
        for q in [3u64, 4, 5, 7] {
            for chi in characters_mod(q) {
                if chi.is_principal() || !chi.is_primitive() {
                    continue;
                }
                let lf = SelbergLFunction::dirichlet(&chi, &primes).unwrap();
                for &s in &[c64(0.7, 3.0), c64(0.4, -6.0)] {
                    let r = lf.functional_equation_residual(s, 1e-13).unwrap();
                    assert!(r < 1e-9, "q={q} chi={} s={s}: residual {r}", chi.label());
                }
            }
        }
    }

    #[test]
    fn wrong_root_number_breaks_fe() {
        let primes = PrimeTable::new(100);
        let chi = first_char(4, |c| !c.is_principal());
        let mut lf = SelbergLFunction::dirichlet(&chi, &primes).unwrap();
        lf.gamma.omega = c64(-1.0, 0.0); // negative control
        let r = lf.functional_equation_residual(c64(0.7, 3.0), 1e-13).unwrap();
        assert!(r > 1e-3, "residual {r} should be large with wrong omega");
    }

    #[test]
    fn pole_guard() {
        let primes = PrimeTable::new(100);
        let z = SelbergLFunction::zeta(&primes);
        assert!(matches!(
            z.complete(c64(1.0, 0.0), 1e-10),
            Err(Error::PoleProximity(_))
        ));
        assert!(matches!(
            z.complete(c64(-2.0, 0.0), 1e-10),
            Err(Error::PoleProximity(_))
        ));
        assert!(z.complete(c64(0.5, 3.0), 1e-10).is_ok());
    }

    #[test]
    fn critical_phase_makes_z_real() {
        let primes = PrimeTable::new(100);
        let z = SelbergLFunction::zeta(&primes);
        for &t in &[5.0, 14.0, 30.0, 99.5] {
            let phase = z.gamma.critical_phase(t);
            assert!((phase.norm() - 1.0).abs() < 1e-10);
            let v = phase * z.eval(c64(0.5, t), 1e-12).unwrap();
            assert!(v.im.abs() < 1e-9 * v.norm().max(1e-6), "t={t}: {v}");
        }
        let chi = first_char(4, |c| !c.is_principal());
        let lf = SelbergLFunction::dirichlet(&chi, &primes).unwrap();
        for &t in &[2.0, 6.0, 25.0] {
            let v = lf.gamma.critical_phase(t) * lf.eval(c64(0.5, t), 1e-12).unwrap();
            assert!(v.im.abs() < 1e-9 * v.norm().max(1e-6), "t={t}: {v}");
        }
    }

    #[test]
    fn w_functional_support_reduction() {
        // h supported in [1.5, 2.5]: h(1) = 0 and h* vanishes on (1, inf),
        // so W is a single clean integral over the support.
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        let (lambda, mu) = (0.5, c64(0.0, 0.0));
        let w = archimedean_w(lambda, mu, &h, 1e-12).unwrap();
        let direct = quad::integrate(
            |u| {
                c64(
                    h.eval(u) * u.powf((1.0 - mu.re) / lambda - 1.0)
                        / (u.powf(1.0 / lambda) - 1.0),
                    0.0,
                )
            },
            1.5,
            2.5,
            1e-12,
        )
        .unwrap();
        assert!((w - direct.value).norm() < 1e-11, "w={w} direct={}", direct.value);
        assert!(w.im.abs() < 1e-12);
    }

    #[test]
    fn w_functional_dense_grid_oracle() {
        // Support straddling 1 exercises the singular panel and the
        // closed-form tail.
        let h = TestFunction::bump(1.1, 0.4).unwrap();
        let (lambda, mu) = (0.5, c64(0.0, 0.0));
        let w = archimedean_w(lambda, mu, &h, 1e-11).unwrap();
        // dense trapezoid on [1+e, 100] plus analytic tail, e small
        let h1 = h.eval(1.0);
        let f = |u: f64| {
            let bracket =
                h.eval(u) + h.eval(1.0 / u) / u - 2.0 * h1 * u.powf((mu.re - 1.0) / lambda);
            bracket * u.powf((1.0 - mu.re) / lambda - 1.0) / (u.powf(1.0 / lambda) - 1.0)
        };
        let (lo, hi) = (1.0 + 1e-7, 100.0);
        let n = 4_000_000usize;
        let mut acc = crate::kahan::KahanSum::new();
        let dx = (hi - lo) / n as f64;
        for i in 0..=n {
            let u = lo + i as f64 * dx;
            let wgt = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc.add(wgt * f(u));
        }
        let tail = 2.0 * lambda * h1 * (1.0 - hi.powf(-1.0 / lambda)).ln();
        let oracle = acc.value() * dx + tail;
        assert!(
            (w.re - oracle).abs() < 1e-5,
            "w={} oracle={oracle}",
            w.re
        );
    }

    #[test]
    fn w_functional_decreases_in_re_mu() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        let mut prev = f64::INFINITY;
        for &m in &[0.0, 1.0, 2.0, 4.0, 8.0] {
            let w = archimedean_w(0.5, c64(m, 0.0), &h, 1e-12).unwrap();
            assert!(w.re > 0.0 && w.re < prev, "mu={m}: {w}");
            prev = w.re;
        }
    }

    #[test]
    fn scaled_w_two_route() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        let (lambda, mu) = (0.5, c64(0.0, 0.0));
        for &x in &[0.01, 0.1] {
            let scaled = archimedean_w_scaled(lambda, mu, &h, x, 1e-11).unwrap();
            // direct Eq route on u -> h(xu)
            let (a, b) = h.support();
            let direct = w_functional(lambda, mu, &|u| h.eval(x * u), (a / x, b / x), 1e-11).unwrap();
            assert!(
                (scaled - direct).norm() < 1e-9 * scaled.norm().max(1.0),
                "x={x}: scaled={scaled} direct={direct}"
            );
        }
    }

    #[test]
    fn scaled_w_two_route_complex_mu() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        let (lambda, mu) = (0.5, c64(0.3, 0.7));
        let x = 0.05;
        let scaled = archimedean_w_scaled(lambda, mu, &h, x, 1e-11).unwrap();
        let (a, b) = h.support();
        let direct = w_functional(lambda, mu, &|u| h.eval(x * u), (a / x, b / x), 1e-11).unwrap();
        assert!(
            (scaled - direct).norm() < 1e-8 * scaled.norm().max(1.0),
            "scaled={scaled} direct={direct}"
        );
    }

    #[test]
    fn scaled_w_bounded_as_x_shrinks() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        let vals: Vec<f64> = [0.1, 0.01, 0.001]
            .iter()
            .map(|&x| archimedean_w_scaled(0.5, c64(0.0, 0.0), &h, x, 1e-11).unwrap().norm())
            .collect();
        let (mx, mn) = (
            vals.iter().cloned().fold(0.0f64, f64::max),
            vals.iter().cloned().fold(f64::INFINITY, f64::min),
        );
        assert!(mx / mn < 10.0, "vals={vals:?}");
    }

    #[test]
    fn scaled_w_rejects_large_x() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        assert!(matches!(
            archimedean_w_scaled(0.5, c64(0.0, 0.0), &h, 1.6, 1e-10),
            Err(Error::Support(_))
        ));
    }

    #[test]
    fn gamma_factor_nonvanishing_right_half_plane() {
        // ln_eval finite along sampled lines with Re s > 0 implies no
        // zeros/poles there.
        let g = GammaFactor::zeta();
        for &sigma in &[0.25, 0.5, 1.0, 2.0] {
            for i in 0..40 {
                let s = c64(sigma, i as f64 * 5.0);
                let v = g.ln_eval(s);
                assert!(v.re.is_finite() && v.im.is_finite());
                assert!(g.pole_distance(s) > 0.1, "s={s}");
            }
        }
    }
}
