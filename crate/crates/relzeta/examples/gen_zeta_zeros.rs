//! Generates the frozen table of zeta zero ordinates used by the
//! slow-converging zero-sum comparisons, certified against the
//! argument-principle count during the scan.
use relzeta::arithmetic::PrimeTable;
use relzeta::lfunctions::SelbergLFunction;
use relzeta::zeros::{find_zeros, ZeroStore};

fn main() {
    let t_top: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4000.0);
    let out = std::env::args()
        .nth(2)
        .unwrap_or_else(|| "zeta_zeros.txt".into());
    let zeta = SelbergLFunction::zeta(&PrimeTable::new(100));
    let t0 = std::time::Instant::now();
    let zs = find_zeros(&zeta, t_top).expect("finder");
    eprintln!("{} zeros to T={t_top} in {:?}", zs.len(), t0.elapsed());
    let mut store = ZeroStore::new();
    store.insert_found("zeta", &zs, t_top);
    store.export("zeta", &out).expect("export");
}
