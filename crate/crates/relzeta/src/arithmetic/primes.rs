/// Sieve of Eratosthenes up to a fixed limit.
///
/// Desk-scale limits stay well below 1e8, so a plain byte sieve is fine.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    is_prime: Vec<bool>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        let n = limit as usize;
        let mut sieve = vec![true; n + 1];
        if n >= 1 {
            sieve[0] = false;
            if n >= 1 {
                sieve[1] = false;
            }
        }
        let mut p = 2usize;
        while p * p <= n {
            if sieve[p] {
                let mut q = p * p;
                while q <= n {
                    sieve[q] = false;
                    q += p;
                }
            }
            p += 1;
        }
        let primes = sieve
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
            .collect();
        Self {
            limit,
            primes,
            is_prime: sieve,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> bool {
        debug_assert!(n <= self.limit);
        self.is_prime[n as usize]
    }

    /// Primes p with lo <= p <= hi (clamped to the table limit).
    pub fn primes_in(&self, lo: u64, hi: u64) -> &[u64] {
        let start = self.primes.partition_point(|&p| p < lo);
        let end = self.primes.partition_point(|&p| p <= hi.min(self.limit));
        &self.primes[start..end]
    }
}

/// Writes n = p^m if n is a prime power with m >= 1.
pub fn factor_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    // Extract the smallest prime factor by trial division, then check the
    // rest is a pure power of it.
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((n, 1)); // n itself is prime
    }
    let mut m = 0u32;
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest == 1 {
        Some((p, m))
    } else {
        None
    }
}

/// Von Mangoldt function: log p if n = p^m (m >= 1), else 0.
pub fn von_mangoldt(n: u64) -> f64 {
    match factor_prime_power(n) {
        Some((p, _)) => (p as f64).ln(),
        None => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn von_mangoldt_examples() {
        assert_eq!(von_mangoldt(8), 2.0f64.ln());
        assert_eq!(von_mangoldt(12), 0.0);
        assert_eq!(von_mangoldt(7), 7.0f64.ln());
        assert_eq!(von_mangoldt(1), 0.0);
    }

    #[test]
    fn sieve_against_trial_division() {
        let table = PrimeTable::new(10_000);
        let naive = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..=10_000u64 {
            assert_eq!(table.is_prime(n), naive(n), "n={n}");
        }
        // Ascending and complete.
        assert!(table.primes().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(table.primes().len(), 1229);
    }

    #[test]
    fn von_mangoldt_matches_factorization_oracle() {
        // Direct factorization oracle over the full range the spec names.
        let limit = 100_000u64;
        let table = PrimeTable::new(limit);
        for n in 1..=limit {
            let direct = {
                let mut m = n;
                let mut val = 0.0;
                for &p in table.primes() {
                    if p * p > n {
                        break;
                    }
                    if m % p == 0 {
                        while m % p == 0 {
                            m /= p;
                        }
                        val = if m == 1 { (p as f64).ln() } else { 0.0 };
                        break;
                    }
                }
                if m == n && table.is_prime(n) {
                    val = (n as f64).ln();
                }
                val
            };
            assert_eq!(von_mangoldt(n), direct, "n={n}");
        }
    }

    #[test]
    fn primes_in_range() {
        let table = PrimeTable::new(100);
        assert_eq!(table.primes_in(10, 30), &[11, 13, 17, 19, 23, 29]);
        assert_eq!(table.primes_in(90, 200), &[97]);
    }
}
