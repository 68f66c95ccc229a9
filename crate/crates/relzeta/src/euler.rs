//! Euler-factor polynomial algebra.
//!
//! A local factor at p is the polynomial P_p(X) = 1 - c_1 X - ... - c_n X^n,
//! optionally with its root decomposition P_p(X) = prod_i (1 - alpha_i X).
//! This module converts between the polynomial coefficients c_l, the local
//! Dirichlet coefficients phi(p^m), the power-sum coefficients r_m, and the
//! Rankin-Selberg tensor construction on roots.

use crate::arithmetic::{factor_prime_power, DirichletCharacter, PrimeTable};
use crate::error::{Error, Result};
use crate::kahan::KahanComplex;
use num_complex::Complex64;
use std::collections::BTreeMap;

const ROOT_RESIDUAL_TOL: f64 = 1e-12;

/// Local Euler factor at a prime.
#[derive(Debug, Clone)]
pub struct LocalFactor {
    p: u64,
    /// c_1 .. c_{n_p}; the polynomial is 1 - sum_l c_l X^l.
    coeffs: Vec<Complex64>,
    roots: Option<Vec<Complex64>>,
}

impl LocalFactor {
    pub fn from_coeffs(p: u64, coeffs: Vec<Complex64>) -> Self {
        Self {
            p,
            coeffs,
            roots: None,
        }
    }

    /// Builds the factor from its roots: P(X) = prod (1 - alpha_i X), so
    /// c_l = (-1)^{l+1} e_l(alpha).
    pub fn from_roots(p: u64, roots: Vec<Complex64>) -> Self {
        let coeffs = coeffs_from_roots(&roots);
        Self {
            p,
            coeffs,
            roots: Some(roots),
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn roots(&self) -> Option<&[Complex64]> {
        self.roots.as_deref()
    }

    /// Ensures root data is present, solving the reversed monic polynomial
    /// Y^n - c_1 Y^{n-1} - ... - c_n by Durand-Kerner iteration.
    pub fn ensure_roots(&mut self) -> Result<&[Complex64]> {
        if self.roots.is_none() {
            let roots = durand_kerner(&self.coeffs, self.p)?;
            self.roots = Some(roots);
        }
        Ok(self.roots.as_deref().unwrap())
    }

    /// Local Dirichlet coefficients phi(p^0..p^{m_max}) by the forward
    /// recurrence phi(p^m) = sum_{l<=min(m,n)} c_l phi(p^{m-l}).
    pub fn dirichlet_coeffs(&self, m_max: usize) -> Vec<Complex64> {
        let n = self.coeffs.len();
        let mut phi = Vec::with_capacity(m_max + 1);
        phi.push(Complex64::new(1.0, 0.0));
        for m in 1..=m_max {
            let mut acc = KahanComplex::new();
            for l in 1..=m.min(n) {
                acc.add(self.coeffs[l - 1] * phi[m - l]);
            }
            phi.push(acc.value());
        }
        phi
    }

    /// Power-sum coefficients r_1..r_{m_max} of the logarithmic derivative:
    /// X d/dX log P(X)^{-1} = sum_m r_m X^m, computed as
    /// r_m = phi(p^m) + sum_{j=2}^{min(m,n)} (j-1) c_j phi(p^{m-j}).
    pub fn power_sums(&self, m_max: usize) -> Vec<Complex64> {
        let n = self.coeffs.len();
        let phi = self.dirichlet_coeffs(m_max);
        let mut out = Vec::with_capacity(m_max);
        for m in 1..=m_max {
            let mut acc = KahanComplex::new();
            acc.add(phi[m]);
            for j in 2..=m.min(n) {
                acc.add(Complex64::new((j - 1) as f64, 0.0) * self.coeffs[j - 1] * phi[m - j]);
            }
            out.push(acc.value());
        }
        out
    }

    /// True when every root lies on the unit circle within `tol`.
    pub fn roots_on_unit_circle(&self, tol: f64) -> bool {
        match &self.roots {
            Some(rs) => rs.iter().all(|r| (r.norm() - 1.0).abs() <= tol),
            None => false,
        }
    }
}

fn coeffs_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    // Expand prod (1 - alpha X) and read off 1 - sum c_l X^l.
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for &a in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (i, &coef) in poly.iter().enumerate() {
            next[i] += coef;
            next[i + 1] -= coef * a;
        }
        poly = next;
    }
    poly[1..].iter().map(|&c| -c).collect()
}

/// Roots of the reversed monic polynomial Y^n - c_1 Y^{n-1} - ... - c_n,
/// which are exactly the alpha_i of P(X) = prod (1 - alpha_i X).
fn durand_kerner(coeffs: &[Complex64], p: u64) -> Result<Vec<Complex64>> {
    let n = coeffs.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![coeffs[0]]);
    }
    // Monic polynomial m(y) = y^n - c_1 y^{n-1} - ... - c_n.
    let eval = |y: Complex64| -> Complex64 {
        let mut v = Complex64::new(1.0, 0.0);
        for &c in coeffs {
            v = v * y - c;
        }
        v
    };
    let radius = 1.0
        + coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.9, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..200 {
        let mut delta_max = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta_max = delta_max.max(step.norm());
        }
        if delta_max < 1e-14 {
            break;
        }
    }
    // Validate by re-expanding.
    let back = coeffs_from_roots(&roots);
    let residual = back
        .iter()
        .zip(coeffs)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    if residual > ROOT_RESIDUAL_TOL.max(1e-12 * radius.powi(n as i32)) {
        return Err(Error::InconsistentLocalData {
            m: p as u32,
            residual,
        });
    }
    roots.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(roots)
}

/// Recovers c_1..c_{n_p} from local Dirichlet coefficients phi(p^1..p^j)
/// with j >= n_p. Supplied coefficients beyond the degree must satisfy the
/// forward recurrence; violations are rejected with the residual.
pub fn local_from_dirichlet(p: u64, phis: &[Complex64], degree: usize) -> Result<LocalFactor> {
    if phis.len() < degree {
        return Err(Error::InvalidArgument(format!(
            "need at least {degree} local coefficients, got {}",
            phis.len()
        )));
    }
    // phi(p^0) = 1 implied.
    let mut full = Vec::with_capacity(phis.len() + 1);
    full.push(Complex64::new(1.0, 0.0));
    full.extend_from_slice(phis);
    let mut coeffs: Vec<Complex64> = Vec::with_capacity(degree);
    for m in 1..=degree {
        // c_m = phi(p^m) - sum_{l=1}^{m-1} c_l phi(p^{m-l})
        let mut acc = KahanComplex::new();
        acc.add(full[m]);
        for l in 1..m {
            acc.add(-coeffs[l - 1] * full[m - l]);
        }
        coeffs.push(acc.value());
    }
    let factor = LocalFactor::from_coeffs(p, coeffs);
    // Check consistency of any supplied coefficients beyond the degree.
    let predicted = factor.dirichlet_coeffs(phis.len());
    for m in degree + 1..=phis.len() {
        let residual = (predicted[m] - full[m]).norm();
        let scale = full[m].norm().max(1.0);
        if residual > 1e-9 * scale {
            return Err(Error::InconsistentLocalData {
                m: m as u32,
                residual,
            });
        }
    }
    Ok(factor)
}

/// Rankin-Selberg local tensor: roots multiply pairwise. Both factors must
/// carry root data and live at the same prime.
pub fn tensor_local(f: &LocalFactor, g: &LocalFactor) -> Result<LocalFactor> {
    if f.p != g.p {
        return Err(Error::InvalidArgument(format!(
            "tensor of factors at different primes {} and {}",
            f.p, g.p
        )));
    }
    let fr = f.roots().ok_or(Error::MissingRoots(f.p))?;
    let gr = g.roots().ok_or(Error::MissingRoots(g.p))?;
    let mut roots = Vec::with_capacity(fr.len() * gr.len());
    for &a in fr {
        for &b in gr {
            roots.push(a * b);
        }
    }
    Ok(LocalFactor::from_roots(f.p, roots))
}

/// A rank-N Euler product over a finite set of primes, with the exceptional
/// set of primes whose local degree drops below N.
#[derive(Debug, Clone)]
pub struct EulerProductSpec {
    rank: usize,
    factors: BTreeMap<u64, LocalFactor>,
}

impl EulerProductSpec {
    pub fn new(rank: usize, factors: BTreeMap<u64, LocalFactor>) -> Result<Self> {
        for (&p, f) in &factors {
            if f.prime() != p {
                return Err(Error::InvalidArgument(format!(
                    "factor registered at {p} carries prime {}",
                    f.prime()
                )));
            }
            if f.degree() > rank {
                return Err(Error::InvalidArgument(format!(
                    "factor at p={p} has degree {} above rank {rank}",
                    f.degree()
                )));
            }
        }
        Ok(Self { rank, factors })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factor(&self, p: u64) -> Result<&LocalFactor> {
        self.factors.get(&p).ok_or(Error::MissingPrime(p))
    }

    pub fn factors(&self) -> &BTreeMap<u64, LocalFactor> {
        &self.factors
    }

    /// Exceptional set S_L: primes where c_N(p) = 0 (including degree drop).
    pub fn exceptional_set(&self) -> Vec<u64> {
        self.factors
            .iter()
            .filter(|(_, f)| {
                f.degree() < self.rank || f.coeffs()[self.rank - 1].norm() == 0.0
            })
            .map(|(&p, _)| p)
            .collect()
    }

    pub fn is_exceptional(&self, p: u64) -> bool {
        match self.factors.get(&p) {
            Some(f) => f.degree() < self.rank || f.coeffs()[self.rank - 1].norm() == 0.0,
            None => false,
        }
    }

    /// Ensures every local factor carries root data.
    pub fn ensure_roots(&mut self) -> Result<()> {
        for f in self.factors.values_mut() {
            f.ensure_roots()?;
        }
        Ok(())
    }

    /// The zeta spec: rank 1, c_1(p) = 1 for all sieved primes.
    pub fn zeta(primes: &PrimeTable) -> Self {
        let factors = primes
            .primes()
            .iter()
            .map(|&p| {
                (
                    p,
                    LocalFactor::from_roots(p, vec![Complex64::new(1.0, 0.0)]),
                )
            })
            .collect();
        Self {
            rank: 1,
            factors,
        }
    }

    /// Rank-1 spec of a Dirichlet character: c_1(p) = chi(p). Primes
    /// dividing the modulus get c_1 = 0 and land in S_L.
    pub fn character(chi: &DirichletCharacter, primes: &PrimeTable) -> Self {
        let factors = primes
            .primes()
            .iter()
            .map(|&p| {
                let v = chi.eval(p);
                let f = if v.norm() == 0.0 {
                    // Degenerate local factor P_p(X) = 1.
                    LocalFactor::from_roots(p, vec![])
                } else {
                    LocalFactor::from_roots(p, vec![v])
                };
                (p, f)
            })
            .collect();
        Self {
            rank: 1,
            factors,
        }
    }

    /// Rank-2 level-1 modular spec from shifted coefficients: for each prime
    /// c_1 = a(p), c_2 = -1, with a(p) = a_f(p) p^{-(k-1)/2}.
    pub fn modular(
        shifted: &crate::arithmetic::CoefficientStream,
        primes: &PrimeTable,
    ) -> Result<Self> {
        let mut factors = BTreeMap::new();
        for &p in primes.primes() {
            let a = shifted.eval(p);
            let mut f = LocalFactor::from_coeffs(p, vec![a, Complex64::new(-1.0, 0.0)]);
            f.ensure_roots()?;
            factors.insert(p, f);
        }
        Self::new(2, factors)
    }

    /// Lambda_phi(n) = r_m(p) log p when n = p^m, else 0.
    pub fn lambda(&self, n: u64) -> Result<Complex64> {
        match factor_prime_power(n) {
            None => Ok(Complex64::new(0.0, 0.0)),
            Some((p, m)) => {
                let f = self.factor(p)?;
                let r = f.power_sums(m as usize);
                Ok(r[m as usize - 1] * (p as f64).ln())
            }
        }
    }

    /// omega_phi(n) = sum_i alpha(p,i)^m when n = p^m, else 0. Equals
    /// lambda(n)/log p off the exceptional set.
    pub fn omega(&self, n: u64) -> Result<Complex64> {
        match factor_prime_power(n) {
            None => Ok(Complex64::new(0.0, 0.0)),
            Some((p, m)) => {
                let f = self.factor(p)?;
                match f.roots() {
                    Some(rs) => Ok(rs.iter().map(|r| r.powu(m)).sum()),
                    None => {
                        let r = f.power_sums(m as usize);
                        Ok(r[m as usize - 1])
                    }
                }
            }
        }
    }
}

/// A Rankin-Selberg pair with optional explicit local data Q_p at
/// exceptional primes.
#[derive(Debug, Clone)]
pub struct TensorPair {
    pub phi: EulerProductSpec,
    pub psi: EulerProductSpec,
    /// Override local factors for p in S = S_phi union S_psi.
    pub overrides: BTreeMap<u64, LocalFactor>,
}

impl TensorPair {
    pub fn new(phi: EulerProductSpec, psi: EulerProductSpec) -> Self {
        Self {
            phi,
            psi,
            overrides: BTreeMap::new(),
        }
    }

    /// S = S_phi union S_psi.
    pub fn exceptional_set(&self) -> Vec<u64> {
        let mut s = self.phi.exceptional_set();
        s.extend(self.psi.exceptional_set());
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Local tensor factor at p, using root products off S and the
    /// supplied Q_p data on S.
    pub fn local(&self, p: u64) -> Result<LocalFactor> {
        if self.phi.is_exceptional(p) || self.psi.is_exceptional(p) {
            return self
                .overrides
                .get(&p)
                .cloned()
                .ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "prime {p} is exceptional and no Q_p override was supplied"
                    ))
                });
        }
        tensor_local(self.phi.factor(p)?, self.psi.factor(p)?)
    }

    /// Lambda_{phi (x) psi}(n) = (sum alpha^m)(sum gamma^m) log p for
    /// n = p^m off S; override data on S; 0 off prime powers.
    pub fn lambda(&self, n: u64) -> Result<Complex64> {
        match factor_prime_power(n) {
            None => Ok(Complex64::new(0.0, 0.0)),
            Some((p, m)) => {
                if self.phi.is_exceptional(p) || self.psi.is_exceptional(p) {
                    let f = self.overrides.get(&p).ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "prime {p} is exceptional and no Q_p override was supplied"
                        ))
                    })?;
                    let r = f.power_sums(m as usize);
                    return Ok(r[m as usize - 1] * (p as f64).ln());
                }
                let fa = self.phi.factor(p)?;
                let fb = self.psi.factor(p)?;
                let ra = fa.roots().ok_or(Error::MissingRoots(p))?;
                let rb = fb.roots().ok_or(Error::MissingRoots(p))?;
                let sa: Complex64 = ra.iter().map(|r| r.powu(m)).sum();
                let sb: Complex64 = rb.iter().map(|r| r.powu(m)).sum();
                Ok(sa * sb * (p as f64).ln())
            }
        }
    }
}
