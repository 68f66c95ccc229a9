//! Nontrivial-zero acquisition and storage: file ingestion, a sign-change
//! finder for zeta and Dirichlet L on the critical line, and
//! argument-principle counts certifying completeness.

use crate::error::{Error, Result};
use crate::lfunctions::{EvalRoute, SelbergLFunction};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

const DEDUP_TOL: f64 = 1e-9;
const ORDINATE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Ingested,
    Found,
}

/// One zero: ordinate gamma for rho = 1/2 + i gamma, or a full complex rho
/// for third-party data placed off the critical line.
#[derive(Debug, Clone, Copy)]
pub struct ZeroRecord {
    pub rho: Complex64,
    pub multiplicity: u32,
    pub source: Source,
}

impl ZeroRecord {
    pub fn on_line(gamma: f64, source: Source) -> Self {
        Self {
            rho: Complex64::new(0.5, gamma),
            multiplicity: 1,
            source,
        }
    }

    pub fn ordinate(&self) -> f64 {
        self.rho.im
    }
}

#[derive(Debug, Clone, Default)]
struct LabelStore {
    records: Vec<ZeroRecord>,
    t_complete: f64,
}

/// Ordered zero lists per L-function label, with a certified completeness
/// height each.
#[derive(Debug, Clone, Default)]
pub struct ZeroStore {
    labels: BTreeMap<String, LabelStore>,
}

impl ZeroStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reads a zero file (one ordinate per line, optional `# label:` header,
    /// `#` comments ignored) and merges it under `label` (or the header
    /// label when none is given). Returns the label's total count.
    pub fn ingest(&mut self, path: impl AsRef<Path>, label: Option<&str>) -> Result<usize> {
        let text = std::fs::read_to_string(path.as_ref())?;
        let mut file_label: Option<String> = None;
        let mut ordinates: Vec<f64> = Vec::new();
        let mut last: Option<(f64, usize)> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(l) = rest.trim().strip_prefix("label:") {
                    file_label = Some(l.trim().to_string());
                }
                continue;
            }
            let gamma: f64 = line.parse().map_err(|e| Error::Parse {
                line: idx + 1,
                message: format!("bad ordinate: {e}"),
            })?;
            if let Some((prev, _)) = last {
                if gamma <= prev {
                    return Err(Error::NonMonotone(idx + 1));
                }
            }
            last = Some((gamma, idx + 1));
            ordinates.push(gamma);
        }
        let label = match (label, file_label) {
            (Some(l), _) => l.to_string(),
            (None, Some(l)) => l,
            (None, None) => {
                return Err(Error::InvalidArgument(
                    "no label given and the file has no `# label:` header".into(),
                ))
            }
        };
        let entry = self.labels.entry(label).or_default();
        // An ingested file is a complete initial segment of the ordinate
        // list (enforced monotone above), so the store is complete up to
        // the last ordinate read.
        let mut top = entry.t_complete;
        for g in ordinates {
            top = top.max(g);
            merge_record(&mut entry.records, ZeroRecord::on_line(g, Source::Ingested));
        }
        entry.t_complete = top;
        Ok(entry.records.len())
    }

    /// Stores finder output and certifies completeness to T.
    pub fn insert_found(&mut self, label: &str, ordinates: &[f64], t_complete: f64) {
        let entry = self.labels.entry(label.to_string()).or_default();
        for &g in ordinates {
            merge_record(&mut entry.records, ZeroRecord::on_line(g, Source::Found));
        }
        entry.t_complete = entry.t_complete.max(t_complete);
    }

    pub fn records(&self, label: &str) -> Result<&[ZeroRecord]> {
        self.labels
            .get(label)
            .map(|l| l.records.as_slice())
            .ok_or_else(|| Error::MissingZeros(label.to_string()))
    }

    pub fn t_complete(&self, label: &str) -> f64 {
        self.labels.get(label).map(|l| l.t_complete).unwrap_or(0.0)
    }

    /// Records with ordinate in (0, T], requiring certified completeness.
    pub fn complete_below(&self, label: &str, t: f64) -> Result<&[ZeroRecord]> {
        let store = self
            .labels
            .get(label)
            .ok_or_else(|| Error::MissingZeros(label.to_string()))?;
        if store.t_complete + 1e-12 < t {
            return Err(Error::IncompleteStore {
                label: label.to_string(),
                requested: t,
                complete: store.t_complete,
            });
        }
        let end = store
            .records
            .partition_point(|r| r.ordinate() <= t);
        Ok(&store.records[..end])
    }

    pub fn in_range(&self, label: &str, lo: f64, hi: f64) -> Result<&[ZeroRecord]> {
        let records = self.records(label)?;
        let start = records.partition_point(|r| r.ordinate() < lo);
        let end = records.partition_point(|r| r.ordinate() <= hi);
        Ok(&records[start..end])
    }

    /// Writes the label's ordinates in the ingestion format.
    pub fn export(&self, label: &str, path: impl AsRef<Path>) -> Result<()> {
        let records = self.records(label)?;
        let mut out = String::new();
        out.push_str(&format!("# label: {label}\n"));
        for r in records {
            out.push_str(&format!("{:.15e}\n", r.ordinate()));
        }
        std::fs::write(path, out)?;
        Ok(())
    }
}

fn merge_record(records: &mut Vec<ZeroRecord>, rec: ZeroRecord) {
    let idx = records.partition_point(|r| r.ordinate() < rec.ordinate() - DEDUP_TOL);
    if idx < records.len() && (records[idx].ordinate() - rec.ordinate()).abs() <= DEDUP_TOL {
        return; // duplicate
    }
    records.insert(idx, rec);
}

/// The rotated critical-line value Re(omega^{-1/2} e^{i arg gamma(s)} L(s))
/// at s = 1/2 + it; real up to numerical noise, sign changes at zeros.
pub fn hardy_z(lf: &SelbergLFunction, t: f64) -> Result<f64> {
    let v = lf.gamma.critical_phase(t) * lf.eval(Complex64::new(0.5, t), 1e-12)?;
    Ok(v.re)
}

/// Winding-number count of zeros with eps < Im(rho) < T inside the strip
/// -0.1 < Re(rho) < 1.1, by phase tracking of the pole-cleared completed
/// function around the rectangle. The bottom edge sits at eps = 0.05 (no
/// zeros live that low for the supported labels).
pub fn count_by_argument_principle(lf: &SelbergLFunction, t_top: f64) -> Result<usize> {
    if matches!(lf.route, EvalRoute::None) {
        return Err(Error::InvalidArgument(format!(
            "no evaluation route for {}",
            lf.label
        )));
    }
    let eps = 0.05;
    // Accumulated argument of Q^s prod Gamma(lambda s + mu) L(s) times
    // (s(s-1)/2)^m, all in log form so huge Gamma moduli never materialize.
    let theta = |s: Complex64| -> Result<f64> {
        let mut arg = lf.gamma.ln_eval(s).im;
        let m = lf.gamma.pole_order() as f64;
        if m > 0.0 {
            arg += m * (s.ln().im + (s - 1.0).ln().im);
        }
        arg += lf.eval(s, 1e-11)?.arg();
        Ok(arg)
    };
    let corners = [
        Complex64::new(1.1, eps),
        Complex64::new(1.1, t_top),
        Complex64::new(-0.1, t_top),
        Complex64::new(-0.1, eps),
        Complex64::new(1.1, eps),
    ];
    let wrap = |d: f64| -> f64 {
        let mut d = d % (2.0 * PI);
        if d > PI {
            d -= 2.0 * PI;
        }
        if d < -PI {
            d += 2.0 * PI;
        }
        d
    };
    let mut total = 0.0f64;
    for w in corners.windows(2) {
        let (a, b) = (w[0], w[1]);
        // Pre-split the edge finely enough that the Gamma-factor phase
        // cannot alias across a step, then refine adaptively near spikes.
        let pieces = ((b - a).norm() / 0.1).ceil().max(1.0) as usize;
        let mut stack = Vec::with_capacity(pieces);
        let mut prev_t = 0.0f64;
        let mut prev_v = theta(a)?;
        for i in 1..=pieces {
            let t = i as f64 / pieces as f64;
            let v = theta(a + (b - a) * t)?;
            stack.push((prev_t, t, prev_v, v));
            prev_t = t;
            prev_v = v;
        }
        stack.reverse();
        let mut depth_guard = 0usize;
        while let Some((ta, tb, va, vb)) = stack.pop() {
            let d = wrap(vb - va);
            // Accept steps that clearly cannot hide a full turn.
            if d.abs() < 1.0 || (tb - ta) < 1e-9 {
                if d.abs() > 3.0 {
                    return Err(Error::PhaseJump(a + (b - a) * ta));
                }
                total += d;
                continue;
            }
            depth_guard += 1;
            if depth_guard > 200_000 {
                return Err(Error::PhaseJump(a + (b - a) * ta));
            }
            let tm = 0.5 * (ta + tb);
            let vm = theta(a + (b - a) * tm)?;
            stack.push((tm, tb, vm, vb));
            stack.push((ta, tm, va, vm));
        }
    }
    let winding = total / (2.0 * PI);
    let count = winding.round();
    if (winding - count).abs() > 0.05 || count < 0.0 {
        return Err(Error::PhaseJump(Complex64::new(winding, 0.0)));
    }
    Ok(count as usize)
}

/// All ordinates 0 < gamma <= T of the label's zeros on the critical line,
/// certified against the argument-principle count.
pub fn find_zeros(lf: &SelbergLFunction, t_top: f64) -> Result<Vec<f64>> {
    match &lf.route {
        EvalRoute::Zeta => {
            if t_top > 1e4 {
                return Err(Error::InvalidArgument(format!(
                    "zeta finder capped at T = 1e4, got {t_top}"
                )));
            }
        }
        EvalRoute::Dirichlet(chi) => {
            if chi.is_principal() || !chi.is_primitive() {
                return Err(Error::InvalidArgument(
                    "zero finder needs a primitive non-principal character".into(),
                ));
            }
            if chi.modulus() > 100 || t_top > 1e3 {
                return Err(Error::InvalidArgument(format!(
                    "Dirichlet finder capped at q <= 100, T <= 1e3; got q={}, T={t_top}",
                    chi.modulus()
                )));
            }
        }
        EvalRoute::None => {
            return Err(Error::InvalidArgument(format!(
                "no evaluation route for {}",
                lf.label
            )))
        }
    }
    let expected = count_by_argument_principle(lf, t_top)?;
    let mut step = 0.05;
    let t_lo = 0.05;
    for _ in 0..6 {
        let zeros = scan_sign_changes(lf, t_lo, t_top, step)?;
        if zeros.len() == expected {
            return Ok(zeros);
        }
        if zeros.len() > expected {
            break; // more sign changes than zeros cannot happen; bail to error
        }
        step *= 0.5;
    }
    let zeros = scan_sign_changes(lf, t_lo, t_top, step)?;
    // Identify the widest gap between consecutive found ordinates as the
    // likely location of the missed zeros.
    let mut gap = (t_lo, t_top);
    let mut width = 0.0;
    let mut prev = t_lo;
    for &z in zeros.iter().chain(std::iter::once(&t_top)) {
        if z - prev > width {
            width = z - prev;
            gap = (prev, z);
        }
        prev = z;
    }
    Err(Error::CountMismatch {
        label: lf.label.clone(),
        found: zeros.len(),
        expected,
        lo: gap.0,
        hi: gap.1,
    })
}

fn scan_sign_changes(lf: &SelbergLFunction, t_lo: f64, t_top: f64, step: f64) -> Result<Vec<f64>> {
    let n = ((t_top - t_lo) / step).ceil() as usize;
    let mut zeros = Vec::new();
    let mut prev_t = t_lo;
    let mut prev_v = hardy_z(lf, prev_t)?;
    for i in 1..=n {
        let t = (t_lo + i as f64 * step).min(t_top);
        let v = hardy_z(lf, t)?;
        if prev_v == 0.0 {
            zeros.push(prev_t);
        } else if v != 0.0 && prev_v.signum() != v.signum() {
            zeros.push(bisect_zero(lf, prev_t, t, prev_v)?);
        }
        prev_t = t;
        prev_v = v;
    }
    Ok(zeros)
}

fn bisect_zero(lf: &SelbergLFunction, mut lo: f64, mut hi: f64, v_lo: f64) -> Result<f64> {
    let mut sign_lo = v_lo.signum();
    while hi - lo > ORDINATE_TOL {
        let mid = 0.5 * (lo + hi);
        let v = hardy_z(lf, mid)?;
        if v == 0.0 {
            return Ok(mid);
        }
        if v.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        sign_lo = hardy_z(lf, lo)?.signum();
    }
    Ok(0.5 * (lo + hi))
}
