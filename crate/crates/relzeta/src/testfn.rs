//! Smooth compactly supported test functions and their weighted integrals:
//! Mellin transforms, the involution u -> h(1/u)/u, twisted variants, and
//! the substitution integrals appearing in zero sums.

use crate::error::{Error, Result};
use crate::quad;
use num_complex::Complex64;

/// A Mellin-transform evaluation with its quadrature error estimate.
#[derive(Debug, Clone, Copy)]
pub struct MellinValue {
    pub s: Complex64,
    pub value: Complex64,
    pub err: f64,
}

/// The classical bump h(u) = exp(-1/(1 - ((u-c)/r)^2)) on (c-r, c+r),
/// extended by zero. Smooth on all of (0, infinity); derivatives up to
/// order 4 are available in closed form.
#[derive(Debug, Clone)]
pub struct TestFunction {
    center: f64,
    radius: f64,
    /// Numerators N_k of h^(k) = h * N_k(t) / (1-t^2)^{2k} / r^k in the
    /// scaled variable t = (u-c)/r, k = 1..4.
    deriv_numer: Vec<Vec<f64>>,
}

/// Polynomial helpers on dense coefficient vectors (ascending powers).
fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    let mut out = vec![0.0; n];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

fn poly_diff(a: &[f64]) -> Vec<f64> {
    if a.len() <= 1 {
        return vec![0.0];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &x)| i as f64 * x)
        .collect()
}

fn poly_eval(a: &[f64], t: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

impl TestFunction {
    /// The bump centred at `center` with half-width `radius`; the support
    /// must sit inside (0, infinity).
    pub fn bump(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || center - radius <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "bump support [{}, {}] must lie in (0, inf)",
                center - radius,
                center + radius
            )));
        }
        // h = exp(g), g(t) = -1/(1-t^2). With D = 1 - t^2:
        //   (d/dt)^k h = h * N_k / D^{2k},
        //   N_1 = -2t,
        //   N_{k+1} = (N_k' D - 2k N_k D') D + N_k N_1.
        let d = vec![1.0, 0.0, -1.0]; // D
        let dprime = vec![0.0, -2.0]; // D'
        let n1 = vec![0.0, -2.0]; // N_1
        let mut numer = vec![n1.clone()];
        for k in 1..4usize {
            let nk = &numer[k - 1];
            let part = poly_add(
                &poly_mul(&poly_diff(nk), &d),
                &poly_mul(&[-2.0 * k as f64], &poly_mul(nk, &dprime)),
            );
            let next = poly_add(&poly_mul(&part, &d), &poly_mul(nk, &n1));
            numer.push(next);
        }
        Ok(Self {
            center,
            radius,
            deriv_numer: numer,
        })
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.radius, self.center + self.radius)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn eval(&self, u: f64) -> f64 {
        let t = (u - self.center) / self.radius;
        if t.abs() >= 1.0 {
            return 0.0;
        }
        (-1.0 / (1.0 - t * t)).exp()
    }

    /// k-th derivative with respect to u, k <= 4 (k = 0 is eval).
    pub fn deriv(&self, k: usize, u: f64) -> f64 {
        assert!(k <= 4, "derivatives provided up to order 4");
        if k == 0 {
            return self.eval(u);
        }
        let t = (u - self.center) / self.radius;
        if t.abs() >= 1.0 {
            return 0.0;
        }
        let dpow = (1.0 - t * t).powi(2 * k as i32);
        self.eval(u) * poly_eval(&self.deriv_numer[k - 1], t) / dpow / self.radius.powi(k as i32)
    }

    /// The involution h*(u) = (1/u) h(1/u); support maps to [1/b, 1/a].
    pub fn star_eval(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        self.eval(1.0 / u) / u
    }

    /// Twisted variant h_{lambda,mu}(u) = h(u) u^{-i Im(mu)/lambda}.
    pub fn twisted_eval(&self, lambda: f64, mu: Complex64, u: f64) -> Complex64 {
        assert!(lambda > 0.0);
        let h = self.eval(u);
        if h == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let phase = -mu.im / lambda * u.ln();
        h * Complex64::new(0.0, phase).exp()
    }

    /// Mellin transform hhat(s) = int h(u) u^{s-1} du over the support.
    pub fn mellin(&self, s: Complex64, tol: f64) -> Result<MellinValue> {
        let (a, b) = self.support();
        // The integrand oscillates like exp(i Im(s) ln u); the local
        // frequency in u is Im(s)/u, at worst Im(s)/a.
        let omega = s.im.abs() / a;
        let q = quad::integrate_oscillatory(
            |u| {
                let h = self.eval(u);
                if h == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    h * ((s - 1.0) * u.ln()).exp()
                }
            },
            a,
            b,
            omega,
            tol,
        )?;
        Ok(MellinValue {
            s,
            value: q.value,
            err: q.error,
        })
    }

    /// int_0^inf h(xu) w(u) u^{rho - 1} du with an optional smooth weight w;
    /// `omega_extra` declares the weight's own oscillation frequency in u.
    pub fn zero_sum_integral<W>(
        &self,
        x: f64,
        rho: Complex64,
        weight: Option<W>,
        omega_extra: f64,
        tol: f64,
    ) -> Result<MellinValue>
    where
        W: Fn(f64) -> Complex64,
    {
        if !(x > 0.0) {
            return Err(Error::InvalidArgument(format!("scale x must be positive, got {x}")));
        }
        let (a, b) = self.support();
        let (lo, hi) = (a / x, b / x);
        let omega = rho.im.abs() / lo + omega_extra;
        let q = quad::integrate_oscillatory(
            |u| {
                let h = self.eval(x * u);
                if h == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let w = match &weight {
                    Some(f) => f(u),
                    None => Complex64::new(1.0, 0.0),
                };
                h * w * ((rho - 1.0) * u.ln()).exp()
            },
            lo,
            hi,
            omega,
            tol,
        )?;
        Ok(MellinValue {
            s: rho,
            value: q.value,
            err: q.error,
        })
    }

    /// int_0^inf h(x u^2) u^{mu - 1} du; for mu = 1 this is
    /// (1/2) x^{-1/2} hhat(1/2) by the substitution v = x u^2.
    pub fn j_integral(&self, x: f64, mu: Complex64, tol: f64) -> Result<MellinValue> {
        if !(x > 0.0) {
            return Err(Error::InvalidArgument(format!("scale x must be positive, got {x}")));
        }
        let (a, b) = self.support();
        let (lo, hi) = ((a / x).sqrt(), (b / x).sqrt());
        let omega = mu.im.abs() / lo;
        let q = quad::integrate_oscillatory(
            |u| {
                let h = self.eval(x * u * u);
                if h == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                h * ((mu - 1.0) * u.ln()).exp()
            },
            lo,
            hi,
            omega,
            tol,
        )?;
        Ok(MellinValue {
            s: mu,
            value: q.value,
            err: q.error,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bump_basic_shape() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        assert_eq!(h.support(), (1.5, 2.5));
        assert!((h.eval(2.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(h.eval(1.5), 0.0);
        assert_eq!(h.eval(2.5), 0.0);
        assert_eq!(h.eval(0.1), 0.0);
        assert!(TestFunction::bump(0.5, 0.5).is_err());
        assert!(TestFunction::bump(0.3, 0.5).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        let step = 1e-5;
        for &u in &[1.7, 1.9, 2.0, 2.2, 2.4] {
            for k in 1..=4usize {
                // central difference of the (k-1)-th derivative
                let fd = (h.deriv(k - 1, u + step) - h.deriv(k - 1, u - step)) / (2.0 * step);
                let an = h.deriv(k, u);
                let scale = an.abs().max(1.0);
                assert!(
                    (fd - an).abs() < 1e-4 * scale,
                    "k={k} u={u}: fd={fd} analytic={an}"
                );
            }
        }
    }

    #[test]
    fn boundary_flatness() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        for k in 0..=4usize {
            for &u in &[1.5000001, 2.4999999] {
                assert!(h.deriv(k, u).abs() < 1e-10, "k={k} u={u}");
            }
        }
    }

    #[test]
    fn mellin_positive_at_zero() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        let m = h.mellin(c(0.0, 0.0), 1e-12).unwrap();
        assert!(m.value.re > 0.0);
        assert!(m.value.im.abs() < 1e-12);
        assert!(m.err <= 1e-12);
    }

    #[test]
    fn mellin_against_dense_trapezoid() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        let s = c(0.5, 100.0);
        let m = h.mellin(s, 1e-11).unwrap();
        // dense-grid oracle
        let n = 1_000_000usize;
        let (a, b) = h.support();
        let dx = (b - a) / n as f64;
        let mut acc = crate::kahan::KahanComplex::new();
        for i in 0..=n {
            let u = a + i as f64 * dx;
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc.add(w * h.eval(u) * ((s - 1.0) * u.ln()).exp());
        }
        let oracle = acc.value() * dx;
        assert!(
            (m.value - oracle).norm() < 1e-9,
            "diff={}",
            (m.value - oracle).norm()
        );
    }

    #[test]
    fn scaling_law_random() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        for _ in 0..100 {
            let x = 10f64.powf(rng.gen_range(-3.0..1.0));
            let rho = c(rng.gen_range(0.0..1.0), rng.gen_range(-30.0..30.0));
            let lhs = h
                .zero_sum_integral(x, rho, None::<fn(f64) -> Complex64>, 0.0, 1e-11)
                .unwrap()
                .value;
            let rhs = ((-rho) * Complex64::new(x.ln(), 0.0)).exp() * h.mellin(rho, 1e-11).unwrap().value;
            assert!(
                (lhs - rhs).norm() < 1e-9 * rhs.norm().max(1.0),
                "x={x} rho={rho}"
            );
        }
    }

    #[test]
    fn involution_properties() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        // support [1.5,2.5] -> [0.4, 2/3]
        assert_eq!(h.star_eval(0.39), 0.0);
        assert!(h.star_eval(0.5) > 0.0);
        assert_eq!(h.star_eval(0.67), 0.0);
        // (h*)* = h
        for &u in &[1.6, 2.0, 2.4] {
            let star_star = h.star_eval(1.0 / u) / u;
            assert!((star_star - h.eval(u)).abs() < 1e-14);
        }
        // Mellin reflection: int h*(u) u^{s-1} du = hhat(1-s)
        let s = c(0.3, 2.0);
        let lhs = quad::integrate(
            |u| h.star_eval(u) * ((s - 1.0) * u.ln()).exp(),
            0.39,
            0.68,
            1e-12,
        )
        .unwrap()
        .value;
        let rhs = h.mellin(Complex64::new(1.0, 0.0) - s, 1e-12).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn twisted_modulus_preserved() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        let mu = c(0.7, 1.3);
        assert!((h.twisted_eval(0.5, mu, 2.0).norm() - h.eval(2.0)).abs() < 1e-15);
        // real mu leaves h unchanged
        assert_eq!(h.twisted_eval(0.5, c(0.7, 0.0), 2.0), c(h.eval(2.0), 0.0));
        // lambda = 1/2, mu = i: h(u) u^{-2i}
        let u = 2.2;
        let expect = h.eval(u) * Complex64::new(0.0, -2.0 * u.ln()).exp();
        assert!((h.twisted_eval(0.5, c(0.0, 1.0), u) - expect).norm() < 1e-14);
    }

    #[test]
    fn j_integral_closed_forms() {
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        for &x in &[0.04, 0.3] {
            // mu = 1: (1/2) x^{-1/2} hhat(1/2)
            let j = h.j_integral(x, c(1.0, 0.0), 1e-12).unwrap().value;
            let expect = 0.5 / x.sqrt() * h.mellin(c(0.5, 0.0), 1e-12).unwrap().value;
            assert!((j - expect).norm() < 1e-10 * expect.norm());
            // mu = 2: (1/2) x^{-1} hhat(1)
            let j = h.j_integral(x, c(2.0, 0.0), 1e-12).unwrap().value;
            let expect = 0.5 / x * h.mellin(c(1.0, 0.0), 1e-12).unwrap().value;
            assert!((j - expect).norm() < 1e-10 * expect.norm());
        }
        // mu = 1/2 against a dense-grid oracle
        let x = 0.04;
        let j = h.j_integral(x, c(0.5, 0.0), 1e-12).unwrap().value;
        let (a, b) = h.support();
        let (lo, hi) = ((a / x).sqrt(), (b / x).sqrt());
        let n = 500_000usize;
        let dx = (hi - lo) / n as f64;
        let mut acc = crate::kahan::KahanSum::new();
        for i in 0..=n {
            let u = lo + i as f64 * dx;
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc.add(w * h.eval(x * u * u) * u.powf(-0.5));
        }
        let oracle = acc.value() * dx;
        assert!((j.re - oracle).abs() < 1e-8);
    }

    #[test]
    fn mellin_decay_supports_truncation() {
        // The zero-sum truncation at T = 500 leans on |hhat| being far
        // below the 1e-6 budget there and still falling fast. (The
        // asymptotic super-polynomial rate kicks in beyond desk heights;
        // what the budget uses is the measured decay below.)
        let h = TestFunction::bump(2.5, 1.0).unwrap();
        let mag = |t: f64| h.mellin(c(0.5, t), 1e-14).unwrap().value.norm();
        let (m125, m250, m500) = (mag(125.0), mag(250.0), mag(500.0));
        assert!(m500 < 1e-7, "|hhat(1/2+500i)| = {m500}");
        assert!(m500 < m250 && m250 < m125);
        assert!(m500 < 1e-3 * m125, "decay 125 -> 500 only {}", m500 / m125);
        for &sigma in &[0.0, 1.0] {
            let m = h.mellin(c(sigma, 500.0), 1e-14).unwrap();
            assert!(m.value.norm() < 1e-6, "sigma={sigma}");
        }
    }

    #[test]
    fn zero_sum_integral_with_weight_oracle() {
        // weight e^{2 pi i u / 4} (one character-sum mode), x = 0.01, rho = 1
        let h = TestFunction::bump(2.0, 0.5).unwrap();
        let x = 0.01;
        let rho = c(1.0, 0.0);
        let w = |u: f64| Complex64::new(0.0, std::f64::consts::TAU * u / 4.0).exp();
        let got = h
            .zero_sum_integral(x, rho, Some(w), std::f64::consts::TAU / 4.0, 1e-11)
            .unwrap()
            .value;
        let (a, b) = h.support();
        let (lo, hi) = (a / x, b / x);
        let n = 1_000_000usize;
        let dx = (hi - lo) / n as f64;
        let mut acc = crate::kahan::KahanComplex::new();
        for i in 0..=n {
            let u = lo + i as f64 * dx;
            let ww = if i == 0 || i == n { 0.5 } else { 1.0 };
            // u^{rho-1} = 1 for rho = 1
            acc.add(ww * h.eval(x * u) * w(u));
        }
        let oracle = acc.value() * dx;
        assert!((got - oracle).norm() < 1e-8, "diff={}", (got - oracle).norm());
    }
}
