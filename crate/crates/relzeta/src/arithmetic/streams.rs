use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

/// Declared growth class of a coefficient sequence or interpolation function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Growth {
    /// |a(n)| <= C n^epsilon for every epsilon > 0 (Ramanujan-Deligne class).
    SubPolynomial,
    /// |a(n)| <= C n^kappa.
    Polynomial { kappa: f64 },
    /// |a(u)| <= C e^{rate u}; honest declaration for Fourier-series
    /// interpolants evaluated off the integers.
    Exponential { rate: f64 },
}

/// A stream of Dirichlet coefficients n -> a(n), with provenance label and a
/// declared growth bound.
#[derive(Clone)]
pub struct CoefficientStream {
    eval: Arc<dyn Fn(u64) -> Complex64 + Send + Sync>,
    growth: Growth,
    label: String,
}

impl fmt::Debug for CoefficientStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientStream")
            .field("growth", &self.growth)
            .field("label", &self.label)
            .finish()
    }
}

impl CoefficientStream {
    pub fn new(
        label: impl Into<String>,
        growth: Growth,
        eval: impl Fn(u64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            growth,
            label: label.into(),
        }
    }

    pub fn eval(&self, n: u64) -> Complex64 {
        debug_assert!(n >= 1);
        (self.eval)(n)
    }

    pub fn growth(&self) -> Growth {
        self.growth
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Constant stream a(n) = 1 (the zeta coefficients).
    pub fn ones() -> Self {
        Self::new("ones", Growth::SubPolynomial, |_| Complex64::new(1.0, 0.0))
    }

    /// Indicator of perfect squares (theta-series coefficients).
    pub fn squares_indicator() -> Self {
        Self::new("squares", Growth::SubPolynomial, |n| {
            let r = (n as f64).sqrt().round() as u64;
            if r * r == n {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Weight shift n -> a(n) n^{-(k-1)/2} used to renormalise modular
    /// coefficients onto the critical strip of the analytic normalisation.
    pub fn shifted(&self, k: u32) -> Result<Self> {
        if k == 0 || k % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "weight must be even and positive, got {k}"
            )));
        }
        let inner = self.clone();
        let exp = -((k - 1) as f64) / 2.0;
        // Deligne: shifted Hecke-eigen coefficients are O(n^eps).
        Ok(Self::new(
            format!("{}<<shift k={k}", self.label),
            Growth::SubPolynomial,
            move |n| inner.eval(n) * (n as f64).powf(exp),
        ))
    }

    /// Loads a stream from a text file: one `n,re,im` record per line,
    /// `#`-comments ignored, n strictly increasing from 1.
    pub fn from_file(path: impl AsRef<Path>, growth: Growth) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        let mut coeffs: Vec<Complex64> = Vec::new();
        let mut expected = 1u64;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split(',').map(str::trim);
            let parse_err = |message: String| Error::Parse {
                line: idx + 1,
                message,
            };
            let n: u64 = parts
                .next()
                .ok_or_else(|| parse_err("missing n".into()))?
                .parse()
                .map_err(|e| parse_err(format!("bad n: {e}")))?;
            let re: f64 = parts
                .next()
                .ok_or_else(|| parse_err("missing re".into()))?
                .parse()
                .map_err(|e| parse_err(format!("bad re: {e}")))?;
            let im: f64 = parts
                .next()
                .ok_or_else(|| parse_err("missing im".into()))?
                .parse()
                .map_err(|e| parse_err(format!("bad im: {e}")))?;
            if n != expected {
                return Err(parse_err(format!(
                    "n must increase strictly from 1: expected {expected}, got {n}"
                )));
            }
            expected += 1;
            coeffs.push(Complex64::new(re, im));
        }
        let label = format!("file:{}", path.as_ref().display());
        Ok(Self::new(label, growth, move |n| {
            coeffs
                .get((n - 1) as usize)
                .copied()
                .unwrap_or(Complex64::new(0.0, 0.0))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn file_backed_roundtrip() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# comment line").unwrap();
        writeln!(f, "1, 1.0, 0.0").unwrap();
        writeln!(f, "2, -24.0, 0.5").unwrap();
        writeln!(f, "3, 252.0, 0.0").unwrap();
        let s = CoefficientStream::from_file(f.path(), Growth::Polynomial { kappa: 6.0 }).unwrap();
        assert_eq!(s.eval(1), Complex64::new(1.0, 0.0));
        assert_eq!(s.eval(2), Complex64::new(-24.0, 0.5));
        assert_eq!(s.eval(3), Complex64::new(252.0, 0.0));
        assert_eq!(s.eval(4), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn file_rejects_gap() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "1, 1.0, 0.0").unwrap();
        writeln!(f, "3, 2.0, 0.0").unwrap();
        let err = CoefficientStream::from_file(f.path(), Growth::SubPolynomial).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn shifted_rejects_odd_weight() {
        let s = CoefficientStream::ones();
        assert!(s.shifted(11).is_err());
        assert!(s.shifted(12).is_ok());
    }

    #[test]
    fn squares_indicator_values() {
        let s = CoefficientStream::squares_indicator();
        for n in 1..=100u64 {
            let is_sq = (1..=10).any(|r| r * r == n);
            assert_eq!(s.eval(n).re, if is_sq { 1.0 } else { 0.0 });
        }
    }
}
