//! Smooth functions on (0, inf) that agree with a coefficient sequence at
//! the positive integers: character exponential sums, Fourier-series
//! interpolants of a q-expansion, modular-form interpolants, and pointwise
//! products.

use crate::arithmetic::{gauss_sum, CoefficientStream, DirichletCharacter, Growth};
use crate::error::{Error, Result};
use crate::kahan::KahanComplex;
use crate::quad::integrate_oscillatory;
use crate::testfn::TestFunction;
use num_complex::Complex64;
use std::f64::consts::TAU;
use std::sync::Arc;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Below this decay rate (the effective y or 1/u of a q-expansion) the
/// series tail becomes too long to evaluate reliably. The floor admits
/// arguments u up to 125 in the diagonal-height variants, which the
/// zero-sum comparisons need for their smallest scale parameters; the
/// term count stays well under MAX_TERMS there.
const MIN_DECAY: f64 = 0.008;
/// Series terms stop once their bound falls below this fraction of the
/// running magnitude.
const TAIL_CUT: f64 = 1e-14;
const MAX_TERMS: u64 = 200_000;

/// A function on (0, inf) interpolating a coefficient stream at the
/// positive integers, with a declared growth class.
#[derive(Clone)]
pub struct InterpolationFn {
    pub label: String,
    target: CoefficientStream,
    growth: Growth,
    /// Upper bound on the local oscillation frequency d(arg)/du, used to
    /// size quadrature panels when the function appears as an integrand
    /// weight. Zero means "treat as smooth at the quadrature scale".
    osc_rate: f64,
    eval: Arc<dyn Fn(f64) -> Result<Complex64> + Send + Sync>,
}

impl std::fmt::Debug for InterpolationFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InterpolationFn")
            .field("label", &self.label)
            .field("growth", &self.growth)
            .finish()
    }
}

impl InterpolationFn {
    pub fn new(
        label: impl Into<String>,
        target: CoefficientStream,
        growth: Growth,
        eval: impl Fn(f64) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            target,
            growth,
            osc_rate: 0.0,
            eval: Arc::new(eval),
        }
    }

    pub fn with_osc_rate(mut self, rate: f64) -> Self {
        self.osc_rate = rate;
        self
    }

    pub fn osc_rate(&self) -> f64 {
        self.osc_rate
    }

    pub fn eval(&self, u: f64) -> Result<Complex64> {
        if u <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "interpolation argument must be positive, got {u}"
            )));
        }
        (self.eval)(u)
    }

    pub fn target(&self) -> &CoefficientStream {
        &self.target
    }

    pub fn growth(&self) -> Growth {
        self.growth
    }

    /// Verifies eval(n) = target(n) for 1 <= n <= n_max, with tolerance
    /// relative to max(1, |target(n)|).
    pub fn check_integers(&self, n_max: u64, tol: f64) -> Result<()> {
        for n in 1..=n_max {
            let got = self.eval(n as f64)?;
            let want = self.target.eval(n);
            if (got - want).norm() > tol * want.norm().max(1.0) {
                return Err(Error::InterpolationMismatch {
                    n,
                    got,
                    target: want,
                });
            }
        }
        Ok(())
    }

    /// Pointwise product, interpolating the termwise product sequence.
    pub fn product(&self, other: &InterpolationFn) -> InterpolationFn {
        let growth = match (self.growth, other.growth) {
            (Growth::Polynomial { kappa: k1 }, Growth::Polynomial { kappa: k2 }) => {
                Growth::Polynomial { kappa: k1 + k2 }
            }
            (Growth::SubPolynomial, g) | (g, Growth::SubPolynomial) => g,
            (Growth::Exponential { rate: r1 }, Growth::Exponential { rate: r2 }) => {
                Growth::Exponential { rate: r1 + r2 }
            }
            (Growth::Exponential { rate }, Growth::Polynomial { .. })
            | (Growth::Polynomial { .. }, Growth::Exponential { rate }) => {
                Growth::Exponential { rate }
            }
        };
        let t1 = self.target.clone();
        let t2 = other.target.clone();
        let e1 = self.eval.clone();
        let e2 = other.eval.clone();
        InterpolationFn {
            label: format!("({})*({})", self.label, other.label),
            target: CoefficientStream::new(
                format!("({})*({})", t1.label(), t2.label()),
                growth,
                move |n| t1.eval(n) * t2.eval(n),
            ),
            growth,
            osc_rate: self.osc_rate + other.osc_rate,
            eval: Arc::new(move |u| Ok(e1(u)? * e2(u)?)),
        }
    }
}

/// int_eta^{eta+1} e^{2 pi i w x} dx, exactly zero at nonzero integers and
/// exactly one at w = 0. The phase is reduced modulo 1 so integer w hits
/// the zero without rounding residue.
fn unit_interval_phase_integral(w: f64, eta: f64) -> Complex64 {
    let frac = w - w.round();
    if w.abs() < 1e-6 {
        // (e^z - 1)/z for z = 2 pi i w, by series.
        let z = c64(0.0, TAU * w);
        let f = c64(1.0, 0.0) + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
        return (c64(0.0, TAU * w * eta)).exp() * f;
    }
    let numer = c64(0.0, TAU * frac).exp() - 1.0;
    c64(0.0, TAU * w * eta).exp() * numer / c64(0.0, TAU * w)
}

/// The character exponential sum
/// phi(u) = (1 / tau(conj chi)) sum_a conj(chi)(a) e^{2 pi i a u / q},
/// which takes the value chi(n) at every positive integer n.
pub fn phi_chi(chi: &DirichletCharacter) -> Result<InterpolationFn> {
    if !chi.is_primitive() {
        return Err(Error::InvalidArgument(format!(
            "interpolation by character sums needs a primitive character; \
             modulus {} label {} is imprimitive",
            chi.modulus(),
            chi.label()
        )));
    }
    let bar = chi.conjugate();
    let tau = gauss_sum(&bar);
    let q = chi.modulus();
    let coeffs: Vec<Complex64> = (1..=q).map(|a| bar.eval(a)).collect();
    let chi_stream = chi.clone();
    let target = CoefficientStream::new(
        format!("chi-{}.{}", chi.modulus(), chi.label()),
        Growth::SubPolynomial,
        move |n| chi_stream.eval(n),
    );
    let label = format!("phi_chi-{}.{}", q, chi.label());
    Ok(InterpolationFn::new(
        label,
        target,
        Growth::Polynomial { kappa: 0.0 },
        move |u| {
            let mut acc = KahanComplex::new();
            for (a, &c) in coeffs.iter().enumerate() {
                if c.norm() == 0.0 {
                    continue;
                }
                let phase = TAU * (a as f64 + 1.0) * u / q as f64;
                acc.add(c * c64(0.0, phase).exp());
            }
            Ok(acc.value() / tau)
        },
    )
    // Frequencies are 2 pi a / q for a < q.
    .with_osc_rate(TAU))
}

/// Shared termwise evaluation of
/// e^{2 pi u y} int_eta^{eta+1} f_a(x + i y) e^{-2 pi i u x} dx
///  = e^{2 pi u y} sum_n a(n) e^{-2 pi n y} E(n - u),
/// where E is the unit-interval phase integral.
fn fourier_series_value(
    a: &CoefficientStream,
    y: f64,
    eta: f64,
    u: f64,
    weight: impl Fn(u64) -> f64,
) -> Result<Complex64> {
    if y < MIN_DECAY {
        return Err(Error::SeriesTail(format!(
            "q-expansion decay rate {y} is below {MIN_DECAY}; \
             choose a larger y (or smaller u)"
        )));
    }
    let mut acc = KahanComplex::new();
    let mut running: f64 = 0.0;
    let mut n = 1u64;
    loop {
        let coeff = a.eval(n) * weight(n);
        let decay = (-TAU * n as f64 * y).exp();
        let bound = coeff.norm() * decay;
        if n as f64 > u + 2.0 && bound < TAIL_CUT * running.max(1e-300) {
            break;
        }
        if bound != 0.0 {
            acc.add(coeff * decay * unit_interval_phase_integral(n as f64 - u, eta));
            running = running.max(acc.value().norm()).max(bound);
        }
        n += 1;
        if n > MAX_TERMS {
            return Err(Error::SeriesTail(format!(
                "q-expansion tail still above threshold after {MAX_TERMS} \
                 terms at decay rate {y}"
            )));
        }
    }
    Ok(acc.value() * (TAU * u * y).exp())
}

/// Fourier-series interpolation at a fixed imaginary part y:
/// A(u) = e^{2 pi u y} int_eta^{eta+1} f_a(x + i y) e^{-2 pi i u x} dx.
pub fn fourier_interp(a: &CoefficientStream, y: f64, eta: f64) -> Result<InterpolationFn> {
    if !(y > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "q-expansion height must be positive, got {y}"
        )));
    }
    if y < MIN_DECAY {
        return Err(Error::SeriesTail(format!(
            "height {y} is below the workable decay floor {MIN_DECAY}; \
             choose a larger y"
        )));
    }
    if let Growth::Exponential { .. } = a.growth() {
        return Err(Error::InvalidArgument(
            "q-expansion interpolation needs polynomial-order coefficients".into(),
        ));
    }
    let stream = a.clone();
    let target = a.clone();
    Ok(InterpolationFn::new(
        format!("fourier[{};y={y};eta={eta}]", a.label()),
        target,
        // Off the integers the e^{2 pi u y} prefactor survives.
        Growth::Exponential { rate: TAU * y },
        move |u| fourier_series_value(&stream, y, eta, u, |_| 1.0),
    )
    // The slowest-dying phase in u is e^{-2 pi i u x} for x in [eta, eta+1].
    .with_osc_rate(TAU * eta.abs().max((eta + 1.0).abs())))
}

/// The diagonal-height variant: y is tied to 1/u, fixing the prefactor at
/// e^{2 pi}:
/// A(u) = e^{2 pi} int_eta^{eta+1} f_a(x + i/u) e^{-2 pi i u x} dx.
pub fn fourier_interp_u(a: &CoefficientStream, eta: f64) -> Result<InterpolationFn> {
    if let Growth::Exponential { .. } = a.growth() {
        return Err(Error::InvalidArgument(
            "q-expansion interpolation needs polynomial-order coefficients".into(),
        ));
    }
    let stream = a.clone();
    let target = a.clone();
    let kappa = match a.growth() {
        Growth::SubPolynomial => 1.0,
        Growth::Polynomial { kappa } => kappa + 1.0,
        Growth::Exponential { .. } => unreachable!(),
    };
    Ok(InterpolationFn::new(
        format!("fourier_u[{};eta={eta}]", a.label()),
        target,
        Growth::Polynomial { kappa },
        move |u| fourier_series_value(&stream, 1.0 / u, eta, u, |_| 1.0),
    )
    .with_osc_rate(TAU * eta.abs().max((eta + 1.0).abs())))
}

/// Modular-form interpolation from the weight-shifted coefficient stream
/// a(n) = a_f(n) n^{-(k-1)/2}:
///
///   phi_f(u) = u^{-(k-1)/2} e^{2 pi}
///              sum_n a_f(n) e^{-2 pi n / u} int_1^2 e^{2 pi i (n - u) X} dX,
///
/// which equals a(n) at integers and grows like sqrt(u).
pub fn phi_f(a_shifted: &CoefficientStream, k: u32) -> Result<InterpolationFn> {
    if k % 2 != 0 || k < 12 {
        return Err(Error::InvalidArgument(format!(
            "modular interpolation needs an even weight >= 12, got {k}"
        )));
    }
    let stream = a_shifted.clone();
    let target = a_shifted.clone();
    let half_shift = (k as f64 - 1.0) / 2.0;
    Ok(InterpolationFn::new(
        format!("phi_f[{};k={k}]", a_shifted.label()),
        target,
        Growth::Polynomial { kappa: 0.5 },
        move |u| {
            let v = fourier_series_value(&stream, 1.0 / u, 1.0, u, |n| {
                (n as f64).powf(half_shift)
            })?;
            Ok(v * u.powf(-half_shift))
        },
    )
    // eta = 1: phases e^{-2 pi i u X} with X in [1, 2].
    .with_osc_rate(2.0 * TAU))
}

/// Two-route evaluation of int_0^infty h(xu) phi_chi(u) du: directly, and
/// through the integration-by-parts form
/// (-q / (2 pi i tau(conj chi))) sum_a (conj chi(a)/a)
///   int h'(v) e^{2 pi i a v/(q x)} dv,
/// which makes the O(1) behavior as x -> 0 manifest.
pub fn oscillation_integral(
    chi: &DirichletCharacter,
    h: &TestFunction,
    x: f64,
    tol: f64,
) -> Result<(Complex64, Complex64)> {
    if !chi.is_primitive() || chi.is_principal() {
        return Err(Error::InvalidArgument(
            "oscillation integral needs a primitive non-principal character".into(),
        ));
    }
    let q = chi.modulus();
    let bar = chi.conjugate();
    let tau = gauss_sum(&bar);
    let phi = phi_chi(chi)?;
    let (a_supp, b_supp) = h.support();

    // Direct route over u in supp(h)/x; the character sum oscillates with
    // |d phase/du| <= 2 pi.
    let direct = integrate_oscillatory(
        |u| h.eval(x * u) * phi.eval(u).expect("character sum is total"),
        a_supp / x,
        b_supp / x,
        TAU,
        tol,
    )?
    .value;

    // Integration-by-parts route.
    let mut acc = KahanComplex::new();
    for a in 1..=q {
        let c = bar.eval(a);
        if c.norm() == 0.0 {
            continue;
        }
        let omega = TAU * a as f64 / (q as f64 * x);
        let int = integrate_oscillatory(
            |v: f64| h.deriv(1, v) * c64(0.0, omega * v).exp(),
            a_supp,
            b_supp,
            omega,
            tol,
        )?;
        acc.add(c / a as f64 * int.value);
    }
    let by_parts = acc.value() * c64(-(q as f64), 0.0) / (c64(0.0, TAU) * tau);
    Ok((direct, by_parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::{characters_mod, ramanujan_tau, ramanujan_tau_stream};
    use crate::quad::integrate;

    fn primitive_chars(q: u64) -> Vec<DirichletCharacter> {
        characters_mod(q)
            .into_iter()
            .filter(|c| c.is_primitive())
            .collect()
    }

    #[test]
    fn phi_chi_integer_agreement() {
        for q in [3u64, 4, 5, 7] {
            for chi in primitive_chars(q) {
                let phi = phi_chi(&chi).unwrap();
                phi.check_integers(100, 1e-9)
                    .unwrap_or_else(|e| panic!("q={q} label={}: {e}", chi.label()));
            }
        }
    }

    #[test]
    fn phi_chi_bounded_by_sqrt_q() {
        for q in [3u64, 5, 7] {
            for chi in primitive_chars(q) {
                let phi = phi_chi(&chi).unwrap();
                let bound = (q as f64).sqrt() + 1e-9;
                let mut u = 0.1;
                while u < 1e4 {
                    assert!(
                        phi.eval(u).unwrap().norm() <= bound,
                        "q={q} u={u}: |phi| exceeds sqrt(q)"
                    );
                    u *= 1.37;
                }
            }
        }
    }

    #[test]
    fn phi_chi_rejects_imprimitive() {
        // The principal character mod 4 is induced by the modulus-1
        // character and is not primitive.
        let principal = characters_mod(4)
            .into_iter()
            .find(|c| c.is_principal())
            .unwrap();
        assert!(phi_chi(&principal).is_err());
    }

    #[test]
    fn fourier_interp_tau_integers() {
        let tau = ramanujan_tau_stream(400).unwrap();
        let interp = fourier_interp(&tau, 1.0, 0.0).unwrap();
        interp.check_integers(30, 1e-9).unwrap();
    }

    #[test]
    fn fourier_interp_zero_stream() {
        let zero = CoefficientStream::new("zero", Growth::SubPolynomial, |_| c64(0.0, 0.0));
        let interp = fourier_interp(&zero, 1.0, 0.0).unwrap();
        for u in [0.5, 1.0, 2.7, 10.0] {
            assert_eq!(interp.eval(u).unwrap(), c64(0.0, 0.0));
        }
    }

    #[test]
    fn fourier_variants_agree_at_integers_differ_off() {
        let tau = ramanujan_tau_stream(400).unwrap();
        let a1 = fourier_interp(&tau, 1.0, 0.0).unwrap();
        let a2 = fourier_interp(&tau, 0.7, 0.25).unwrap();
        for n in 1..=10u64 {
            let d = (a1.eval(n as f64).unwrap() - a2.eval(n as f64).unwrap()).norm();
            let scale = tau.eval(n).norm().max(1.0);
            assert!(d <= 1e-9 * scale, "n={n}: {d}");
        }
        let off = (a1.eval(1.5).unwrap() - a2.eval(1.5).unwrap()).norm();
        assert!(off > 1e-3, "variants should differ off the integers");
    }

    #[test]
    fn fourier_interp_u_tau_integers() {
        let tau = ramanujan_tau_stream(2000).unwrap();
        let interp = fourier_interp_u(&tau, 0.0).unwrap();
        interp.check_integers(30, 1e-9).unwrap();
    }

    #[test]
    fn fourier_interp_u_small_u_bounded() {
        let ones = CoefficientStream::ones();
        let interp = fourier_interp_u(&ones, 0.0).unwrap();
        for u in [0.1, 0.3, 0.9] {
            let v = interp.eval(u).unwrap().norm();
            assert!(v.is_finite() && v < 1e3, "u={u}: {v}");
        }
    }

    #[test]
    fn fourier_interp_rejects_bad_height() {
        let ones = CoefficientStream::ones();
        assert!(matches!(
            fourier_interp(&ones, 0.001, 0.0),
            Err(Error::SeriesTail(_))
        ));
        assert!(fourier_interp(&ones, -1.0, 0.0).is_err());
    }

    #[test]
    fn phi_delta_integer_agreement() {
        let tau = ramanujan_tau_stream(2000).unwrap();
        let shifted = tau.shifted(12).unwrap();
        let phi = phi_f(&shifted, 12).unwrap();
        let raw = ramanujan_tau(20).unwrap();
        for n in 1..=20u64 {
            let want = raw[(n - 1) as usize] as f64 * (n as f64).powf(-5.5);
            let got = phi.eval(n as f64).unwrap();
            assert!(
                (got - c64(want, 0.0)).norm() < 1e-8,
                "n={n}: {got} vs {want}"
            );
        }
        assert!((phi.eval(1.0).unwrap() - c64(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn phi_delta_sqrt_growth() {
        let tau = ramanujan_tau_stream(2000).unwrap();
        let shifted = tau.shifted(12).unwrap();
        let phi = phi_f(&shifted, 12).unwrap();
        let mut sup: f64 = 0.0;
        let mut u = 0.5;
        while u < 60.0 {
            sup = sup.max(phi.eval(u).unwrap().norm() / u.sqrt());
            u *= 1.21;
        }
        assert!(sup.is_finite() && sup < 100.0, "sup |phi|/sqrt(u) = {sup}");
    }

    #[test]
    fn phi_f_rejects_odd_weight() {
        let tau = ramanujan_tau_stream(100).unwrap();
        assert!(phi_f(&tau, 11).is_err());
        assert!(phi_f(&tau, 2).is_err());
    }

    #[test]
    fn product_interp_values_and_identity() {
        let tau = ramanujan_tau_stream(2000).unwrap();
        let shifted = tau.shifted(12).unwrap();
        let phi = phi_f(&shifted, 12).unwrap();
        let square = phi.product(&phi);
        let raw = ramanujan_tau(10).unwrap();
        for n in 1..=10u64 {
            let want = (raw[(n - 1) as usize] as f64).powi(2) * (n as f64).powf(-11.0);
            let got = square.eval(n as f64).unwrap();
            assert!(
                (got - c64(want, 0.0)).norm() < 1e-7 * want.abs().max(1.0),
                "n={n}"
            );
        }
        let one = InterpolationFn::new(
            "one",
            CoefficientStream::ones(),
            Growth::Polynomial { kappa: 0.0 },
            |_| Ok(c64(1.0, 0.0)),
        );
        let same = phi.product(&one);
        for u in [0.7, 2.3, 9.1] {
            assert!((same.eval(u).unwrap() - phi.eval(u).unwrap()).norm() < 1e-14);
        }
    }

    #[test]
    fn oscillation_two_routes_agree() {
        let chi = characters_mod(4)
            .into_iter()
            .find(|c| !c.is_principal())
            .unwrap();
        let h = TestFunction::bump(2.5, 1.0).unwrap();
        let (direct, by_parts) = oscillation_integral(&chi, &h, 0.01, 1e-11).unwrap();
        assert!(
            (direct - by_parts).norm() < 1e-8,
            "direct {direct} vs by-parts {by_parts}"
        );
    }

    #[test]
    fn oscillation_integral_bounded_in_x() {
        let chi = characters_mod(4)
            .into_iter()
            .find(|c| !c.is_principal())
            .unwrap();
        let h = TestFunction::bump(2.5, 1.0).unwrap();
        let mut values = Vec::new();
        for &x in &[0.1, 0.01, 0.001, 1e-4] {
            let (direct, _) = oscillation_integral(&chi, &h, x, 1e-8).unwrap();
            values.push(direct.norm());
        }
        let max = values.iter().cloned().fold(0.0f64, f64::max);
        // O(1): no growth as x shrinks three decades.
        assert!(max < 10.0, "values {values:?}");
    }

    #[test]
    fn constant_weight_scales_like_inverse_x() {
        // With phi = 1 the integral is x^{-1} hhat(1): a pure scaling law,
        // in contrast with the bounded character-weighted case.
        let h = TestFunction::bump(2.5, 1.0).unwrap();
        let hhat1 = h.mellin(c64(1.0, 0.0), 1e-12).unwrap().value;
        for &x in &[0.1, 0.01] {
            let v = integrate(|u| c64(h.eval(x * u), 0.0), 1.5 / x, 3.5 / x, 1e-11).unwrap();
            assert!(
                (v.value - hhat1 / x).norm() < 1e-8 / x,
                "x={x}: {} vs {}",
                v.value,
                hhat1.re / x
            );
        }
    }

    #[test]
    fn theta_stream_interpolation() {
        // Indicator of the squares, interpolated by the q-expansion route.
        let sq = CoefficientStream::squares_indicator();
        let interp = fourier_interp(&sq, 0.5, 0.0).unwrap();
        interp.check_integers(50, 1e-9).unwrap();
    }
}
