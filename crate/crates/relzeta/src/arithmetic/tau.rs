use crate::arithmetic::{CoefficientStream, Growth};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Ramanujan tau(n) for 1 <= n <= limit, from the eta-product expansion
/// q prod_{m>=1} (1 - q^m)^24 in exact integer arithmetic.
///
/// The Euler product is expanded with the pentagonal number theorem, then
/// raised to the 24th power by 24 sparse multiplications. All arithmetic is
/// checked; overflow reports instead of wrapping.
pub fn ramanujan_tau(limit: u64) -> Result<Vec<i128>> {
    assert!(limit >= 1);
    let n = limit as usize;
    // Pentagonal expansion of prod (1 - q^m): exponents k(3k-1)/2 for k in Z.
    let mut pentagonal: Vec<(usize, i128)> = vec![(0, 1)];
    let mut k = 1i64;
    loop {
        let e1 = k * (3 * k - 1) / 2;
        let e2 = k * (3 * k + 1) / 2;
        if e1 as usize >= n && e2 as usize >= n {
            break;
        }
        let sign = if k % 2 == 0 { 1i128 } else { -1i128 };
        if (e1 as usize) < n {
            pentagonal.push((e1 as usize, sign));
        }
        if (e2 as usize) < n {
            pentagonal.push((e2 as usize, sign));
        }
        k += 1;
    }
    pentagonal.sort_unstable_by_key(|&(e, _)| e);

    // acc holds the coefficients of prod(1-q^m)^j up to q^{n-1}.
    let mut acc = vec![0i128; n];
    acc[0] = 1;
    for _ in 0..24 {
        let mut next = vec![0i128; n];
        for &(e, s) in &pentagonal {
            for i in 0..n - e {
                if acc[i] == 0 {
                    continue;
                }
                let term = acc[i]
                    .checked_mul(s)
                    .ok_or_else(|| Error::Overflow("eta product term".into()))?;
                next[i + e] = next[i + e]
                    .checked_add(term)
                    .ok_or_else(|| Error::Overflow("eta product sum".into()))?;
            }
        }
        acc = next;
    }

    // Multiply by q: tau(m) is the coefficient of q^{m-1} in the 24th power.
    Ok(acc[..n].to_vec())
}

/// Tau as a coefficient stream truncated at `limit` (zero beyond).
pub fn ramanujan_tau_stream(limit: u64) -> Result<CoefficientStream> {
    let tau = ramanujan_tau(limit)?;
    Ok(CoefficientStream::new(
        format!("tau<={limit}"),
        Growth::Polynomial { kappa: 6.0 },
        move |n| {
            tau.get((n - 1) as usize)
                .map(|&t| Complex64::new(t as f64, 0.0))
                .unwrap_or(Complex64::new(0.0, 0.0))
        },
    ))
}
