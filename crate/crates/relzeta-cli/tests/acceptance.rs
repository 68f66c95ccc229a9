//! Acceptance gate: one test per acceptance criterion, each printing a
//! single pass/fail line (run with `--nocapture` to see them). The two
//! relations that need external tensor-square zero data are exercised for
//! their SKIPPED contract rather than a numeric pass.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use relzeta::arithmetic::{characters_mod, ramanujan_tau_stream, CoefficientStream, Growth, PrimeTable};
use relzeta::euler::{local_from_dirichlet, EulerProductSpec, LocalFactor, TensorPair};
use relzeta::explicit_formula::{dual_route_prime_sum, local_correction, local_w, local_zero_sum, verify};
use relzeta::interpolation::{fourier_interp, phi_chi, phi_f, InterpolationFn};
use relzeta::lfunctions::SelbergLFunction;
use relzeta::relations::{
    linnik_compare, s_tilde_2, tensor_prime_sum, tensor_split_four, tensor_split_two,
    theorem1_compare,
};
use relzeta::testfn::TestFunction;
use relzeta::zeros::{count_by_argument_principle, find_zeros, ZeroStore};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../relzeta/tests/data/{name}"))
}

fn bump() -> TestFunction {
    TestFunction::bump(2.5, 1.0).unwrap()
}

fn pass(criterion: u32, detail: String) {
    println!("criterion {criterion}: PASS - {detail}");
}

#[test]
fn criterion_01_explicit_formula_balance() {
    let primes = PrimeTable::new(1000);
    let h = bump();
    let mut details = Vec::new();
    let mut lfs = vec![SelbergLFunction::zeta(&primes)];
    for q in [4u64, 5, 7] {
        let chi = characters_mod(q)
            .into_iter()
            .find(|c| !c.is_principal() && c.is_real() && c.is_primitive())
            .unwrap();
        lfs.push(SelbergLFunction::dirichlet(&chi, &primes).unwrap());
    }
    for lf in &lfs {
        let start = Instant::now();
        let mut store = ZeroStore::new();
        let zeros = find_zeros(lf, 500.0).unwrap();
        store.insert_found(&lf.label, &zeros, 500.0);
        let report = verify(lf, &h, &store, 1e-6).unwrap();
        let elapsed = start.elapsed().as_secs_f64();
        assert!(
            report.discrepancy <= 1e-6,
            "{}: discrepancy {}",
            lf.label,
            report.discrepancy
        );
        assert!(
            report.budget >= report.discrepancy,
            "{}: budget {} below discrepancy {}",
            lf.label,
            report.budget,
            report.discrepancy
        );
        assert!(elapsed <= 60.0, "{}: took {elapsed:.1}s", lf.label);
        details.push(format!("{} {:.1e} in {elapsed:.1}s", lf.label, report.discrepancy));
    }
    pass(1, details.join(", "));
}

#[test]
fn criterion_02_zero_finder_integrity() {
    let primes = PrimeTable::new(100);
    let zeta = SelbergLFunction::zeta(&primes);
    let found = find_zeros(&zeta, 100.0).unwrap();
    let counted = count_by_argument_principle(&zeta, 100.0).unwrap();
    assert_eq!(found.len(), counted, "count {} vs argument principle {counted}", found.len());
    // Reference table comparison.
    let text = std::fs::read_to_string(data("zeta_zeros_4000.txt")).unwrap();
    let reference: Vec<f64> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| l.trim().parse::<f64>().unwrap())
        .filter(|&t| t <= 100.0)
        .collect();
    assert_eq!(found.len(), reference.len());
    let mut worst = 0.0f64;
    for (a, b) in found.iter().zip(reference.iter()) {
        worst = worst.max((a - b).abs());
        assert!((a - b).abs() <= 1e-6, "ordinate {a} vs reference {b}");
    }
    pass(2, format!("{} ordinates to T=100, worst deviation {worst:.1e}", found.len()));
}

#[test]
fn criterion_03_euler_algebra_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for trial in 0..500 {
        let p = *[2u64, 3, 5, 7, 11, 13].choose(&mut rng).unwrap();
        let n = rng.gen_range(1..=5);
        let roots: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::from_polar(
                    rng.gen_range(0.5..1.5),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        let f = LocalFactor::from_roots(p, roots.clone());
        // Round trip: polynomial coefficients -> expansion -> recovered
        // coefficients.
        let phi = f.dirichlet_coeffs(n + 3);
        let back = local_from_dirichlet(p, &phi[1..], n).unwrap();
        for l in 0..n {
            let d = (back.coeffs()[l] - f.coeffs()[l]).norm();
            worst = worst.max(d);
            assert!(d <= 1e-10, "trial {trial}: coefficient round trip off by {d}");
        }
        // Newton identities: recursive power sums match direct root powers.
        let r = f.power_sums(n + 2);
        for (m, rm) in r.iter().enumerate() {
            let direct: Complex64 = roots.iter().map(|a| a.powu(m as u32 + 1)).sum();
            let d = (rm - direct).norm() / direct.norm().max(1.0);
            worst = worst.max(d);
            assert!(d <= 1e-10, "trial {trial}: power sum m={} off by {d}", m + 1);
        }
        // Square-coefficient recombination: r_2 = r_1^2 + 2 c_2.
        if n >= 2 {
            let d = (r[1] - (r[0] * r[0] + 2.0 * f.coeffs()[1])).norm();
            worst = worst.max(d);
            assert!(d <= 1e-10, "trial {trial}: square recombination off by {d}");
        }
    }
    pass(3, format!("500 random factors, worst residual {worst:.1e}"));
}

#[test]
fn criterion_04_local_explicit_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let h = bump();
    let mut worst = 0.0f64;
    for trial in 0..20 {
        let p = [2u64, 3, 5][trial % 3];
        let n = rng.gen_range(1..=3);
        let roots: Vec<Complex64> = (0..n)
            .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let f = LocalFactor::from_roots(p, roots);
        let spec = EulerProductSpec::new(n, BTreeMap::from([(p, f)])).unwrap();
        let (lattice, _) = local_zero_sum(&spec, &h, p, 200, 1e-12).unwrap();
        let two_route = local_w(&spec, &h, p).unwrap() + local_correction(&spec, &h, p).unwrap();
        let d = (lattice - two_route).norm();
        worst = worst.max(d);
        assert!(d <= 1e-8, "trial {trial} p={p}: routes differ by {d}");
    }
    pass(4, format!("20 random specs, worst two-route gap {worst:.1e}"));
}

#[test]
fn criterion_05_interpolation_contracts() {
    for q in [3u64, 4, 5, 7] {
        for chi in characters_mod(q)
            .into_iter()
            .filter(|c| !c.is_principal() && c.is_primitive())
        {
            phi_chi(&chi)
                .unwrap()
                .check_integers(100, 1e-9)
                .unwrap_or_else(|e| panic!("q={q} label={}: {e}", chi.label()));
        }
    }
    let tau = ramanujan_tau_stream(400).unwrap();
    fourier_interp(&tau, 1.0, 0.0)
        .unwrap()
        .check_integers(30, 1e-9)
        .unwrap();
    let shifted = ramanujan_tau_stream(2000).unwrap().shifted(12).unwrap();
    phi_f(&shifted, 12).unwrap().check_integers(20, 1e-8).unwrap();
    pass(5, "character, q-expansion and modular interpolants hit their integers".into());
}

#[test]
fn criterion_06_rank1_transfer() {
    let h = bump();
    let primes = PrimeTable::new(500);
    let chi = characters_mod(4)
        .into_iter()
        .find(|c| !c.is_principal())
        .unwrap();
    let lf_chi = SelbergLFunction::dirichlet(&chi, &primes).unwrap();
    let zeta = SelbergLFunction::zeta(&primes);
    let mut store = ZeroStore::new();
    store.ingest(data("zeta_zeros_4000.txt"), None).unwrap();
    store.insert_found(&lf_chi.label, &find_zeros(&lf_chi, 300.0).unwrap(), 300.0);
    let phi = phi_chi(&chi).unwrap();
    let grid = [0.1, 0.05, 0.02, 0.01];
    let report = theorem1_compare(&h, &lf_chi, &phi, &zeta, &store, &grid, 1e-9).unwrap();
    assert!(
        report.fitted_order <= 0.15,
        "fitted order {}",
        report.fitted_order
    );
    // Identity control: weighting the reference by 1 reproduces its own
    // zero sum.
    let one = InterpolationFn::new(
        "one",
        CoefficientStream::ones(),
        Growth::Polynomial { kappa: 0.0 },
        |_| Ok(c64(1.0, 0.0)),
    );
    let control = theorem1_compare(&h, &zeta, &one, &zeta, &store, &[0.1, 0.02], 1e-10).unwrap();
    for row in &control.rows {
        assert!(row.residual <= 1e-8, "control residual {} at x={}", row.residual, row.x);
    }
    pass(
        6,
        format!(
            "fitted order {:.2}, control residual {:.1e}",
            report.fitted_order,
            control.max_residual()
        ),
    );
}

#[test]
fn criterion_07_degree_two_tail() {
    let start = Instant::now();
    let h = bump();
    let primes = PrimeTable::new(200);
    let delta = SelbergLFunction::delta(&primes, 400).unwrap();
    let x = 1e-4;
    let s2 = s_tilde_2(&delta.spec, &h, x).unwrap();
    let target = -0.5 * h.mellin(c64(0.5, 0.0), 1e-12).unwrap().value;
    let rel = (s2 * x.sqrt() - target).norm() / target.norm();
    let elapsed = start.elapsed().as_secs_f64();
    assert!(rel < 0.05, "relative deviation {rel}");
    assert!(elapsed <= 120.0, "took {elapsed:.1}s");
    pass(7, format!("tail limit within {:.1}% in {elapsed:.1}s", rel * 100.0));
}

#[test]
fn criterion_08_tensor_decompositions() {
    let h = bump();
    let primes = PrimeTable::new(4000);
    let shifted = ramanujan_tau_stream(4000).unwrap().shifted(12).unwrap();
    let mut spec = EulerProductSpec::modular(&shifted, &primes).unwrap();
    spec.ensure_roots().unwrap();
    let pair = TensorPair::new(spec.clone(), spec.clone());
    let mut worst = 0.0f64;
    for &x in &[1e-2, 1e-3] {
        let total = tensor_prime_sum(&pair, &h, x).unwrap();
        let (s1, s2) = tensor_split_two(&pair, &h, x).unwrap();
        let (s5, s6, s7, s8) = tensor_split_four(&pair, &h, x).unwrap();
        let scale = total.norm().max(1.0);
        let r2 = (total - (s1 + s2)).norm() / scale;
        let r4 = (total - (s5 + s6 + s7 + s8)).norm() / scale;
        worst = worst.max(r2).max(r4);
        assert!(r2 <= 1e-10 && r4 <= 1e-10, "x={x}: residuals {r2} {r4}");
    }
    pass(8, format!("splits exact, worst relative residual {worst:.1e}"));
}

#[test]
fn criterion_09_dual_route_recovery() {
    let primes = PrimeTable::new(1000);
    let chi = characters_mod(4)
        .into_iter()
        .find(|c| !c.is_principal())
        .unwrap();
    let lf = SelbergLFunction::dirichlet(&chi, &primes).unwrap();
    let zeta = SelbergLFunction::zeta(&primes);
    let h = bump();
    let mut store = ZeroStore::new();
    store.insert_found("zeta", &find_zeros(&zeta, 300.0).unwrap(), 300.0);
    store.insert_found(&lf.label, &find_zeros(&lf, 300.0).unwrap(), 300.0);
    let omega = phi_chi(&chi).unwrap();
    let report = dual_route_prime_sum(&lf, &omega, &zeta, &h, &store, 1e-10).unwrap();
    assert!(report.route_gap <= 1e-5, "route gap {}", report.route_gap);
    assert!(
        report.worst_direct_gap <= 1e-5,
        "direct gap {}",
        report.worst_direct_gap
    );
    pass(9, format!("route gap {:.1e}", report.route_gap));
}

#[test]
fn criterion_10_shifted_zero_relation() {
    let primes = PrimeTable::new(100);
    let chi = characters_mod(4)
        .into_iter()
        .find(|c| !c.is_principal())
        .unwrap();
    let lf_chi = SelbergLFunction::dirichlet(&chi, &primes).unwrap();
    let zeta = SelbergLFunction::zeta(&primes);
    let mut store = ZeroStore::new();
    store.ingest(data("zeta_zeros_4000.txt"), None).unwrap();
    store.insert_found(&lf_chi.label, &find_zeros(&lf_chi, 60.0).unwrap(), 60.0);
    let grid = [0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001];
    let report = linnik_compare(&chi, &lf_chi, &zeta, &store, &grid, 5.0).unwrap();
    let worst_ratio = report
        .rows
        .iter()
        .map(|r| r.residual / r.x.ln().powi(2))
        .fold(0.0f64, f64::max);
    assert!(report.pass, "ratio bound violated: worst {worst_ratio}");
    pass(10, format!("worst residual/log^2(x) ratio {worst_ratio:.3}"));
}

#[test]
fn criterion_11_deterministic_reports() {
    let bin = env!("CARGO_BIN_EXE_relzeta");
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("run.conf");
    // Full-suite run on a coarse grid; all eleven report items execute.
    std::fs::write(
        &config,
        format!(
            "zeta_zeros = {}\ndelta_zeros = {}\nx_grid = 0.1, 0.05\n",
            data("zeta_zeros_4000.txt").display(),
            data("delta_zeros_100.txt").display(),
        ),
    )
    .unwrap();
    let mut contents = Vec::new();
    for run in 0..2 {
        let out = tmp.path().join(format!("run{run}"));
        let status = Command::new(bin)
            .args(["report", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert!(
            status.success(),
            "report run {run} exited with {:?}",
            status.code()
        );
        let mut files: Vec<_> = std::fs::read_dir(&out)
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        files.sort();
        let blob: Vec<(String, Vec<u8>)> = files
            .iter()
            .map(|p| {
                (
                    p.file_name().unwrap().to_string_lossy().into_owned(),
                    std::fs::read(p).unwrap(),
                )
            })
            .collect();
        contents.push(blob);
    }
    assert_eq!(
        contents[0].len(),
        contents[1].len(),
        "report runs produced different file sets"
    );
    for (a, b) in contents[0].iter().zip(contents[1].iter()) {
        assert_eq!(a.0, b.0, "file sets differ");
        assert_eq!(a.1, b.1, "file {} differs between runs", a.0);
    }
    pass(
        11,
        format!("{} report files byte-identical across runs", contents[0].len()),
    );
}

#[test]
fn tensor_zero_relations_report_skipped() {
    // The two relations needing external tensor-square zeros must exit 3
    // (SKIPPED), not fail; their coefficient content is covered by
    // criteria 3 and 8.
    let bin = env!("CARGO_BIN_EXE_relzeta");
    let tmp = tempfile::tempdir().unwrap();
    for name in ["thm6", "thm8"] {
        let status = Command::new(bin)
            .args(["relation", name, "--out"])
            .arg(tmp.path())
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(3), "{name} should report SKIPPED");
    }
    println!("tensor-square zero relations: SKIPPED (exit 3) as required");
}
