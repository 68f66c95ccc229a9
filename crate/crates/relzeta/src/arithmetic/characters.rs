use num_complex::Complex64;
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A Dirichlet character mod q stored as an explicit value table.
///
/// Moduli stay small (q up to a few hundred), so tables keep evaluation and
/// the orthogonality checks trivial.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    /// values[a] = chi(a) for 0 <= a < q.
    values: Vec<Complex64>,
    primitive: bool,
    parity: Parity,
    /// Residue label: chi is the image of this unit under the canonical
    /// pairing of (Z/q)* with its character group. The principal character
    /// gets label 1 and labels multiply: chi_m * chi_n = chi_{mn mod q}.
    label: u64,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn label(&self) -> u64 {
        self.label
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_principal(&self) -> bool {
        self.label == 1 % self.modulus.max(1) || self.modulus == 1
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn eval(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    pub fn eval_i64(&self, n: i64) -> Complex64 {
        let q = self.modulus as i64;
        self.values[(n.rem_euclid(q)) as usize]
    }

    /// True when every value is real (the character is quadratic or principal).
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im.abs() < 1e-12)
    }

    pub fn conjugate(&self) -> DirichletCharacter {
        let mut c = self.clone();
        c.values = self.values.iter().map(|v| v.conj()).collect();
        // Inverse label: chi-bar = chi^{-1} = chi_{n^{-1} mod q}.
        c.label = mod_inverse(self.label, self.modulus).unwrap_or(self.label);
        c
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (m as i64, (a % m) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i64) as u64)
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Cyclic component of (Z/q)*: a generator (lifted mod q) with its order,
/// plus the discrete-log table a -> exponent for the local factor.
struct CyclicComponent {
    order: u64,
    /// prime power p^k this component lives in
    pk: u64,
    /// dlog[a mod p^k] for units a; usize::MAX for non-units
    dlog: Vec<usize>,
}

fn primitive_root_mod_pk(p: u64, pk: u64) -> u64 {
    let phi = euler_phi(pk);
    // Factor phi to test candidate orders.
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    'outer: for g in 2..pk {
        if g % p == 0 {
            continue;
        }
        for &f in &factors {
            if mod_pow(g, phi / f, pk) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("primitive root exists for odd prime powers");
}

fn components_of(q: u64) -> Vec<CyclicComponent> {
    // Factor q into prime powers and emit the cyclic decomposition of each
    // local unit group.
    let mut comps = Vec::new();
    let mut m = q;
    let mut p = 2u64;
    let mut prime_powers = Vec::new();
    while p * p <= m {
        if m % p == 0 {
            let mut pk = 1;
            while m % p == 0 {
                m /= p;
                pk *= p;
            }
            prime_powers.push((p, pk));
        }
        p += 1;
    }
    if m > 1 {
        prime_powers.push((m, m));
    }

    for &(p, pk) in &prime_powers {
        let local_gens: Vec<(u64, u64)> = if p == 2 {
            match pk {
                2 => vec![],
                4 => vec![(3, 2)],
                _ => vec![(pk - 1, 2), (5, pk / 4)], // C2 x C_{2^{k-2}}
            }
        } else {
            vec![(primitive_root_mod_pk(p, pk), euler_phi(pk))]
        };
        for (g_local, order) in local_gens {
            let mut dlog = vec![usize::MAX; pk as usize];
            let mut x = 1u64;
            for e in 0..order {
                if dlog[x as usize] == usize::MAX {
                    dlog[x as usize] = e as usize;
                }
                x = x * g_local % pk;
            }
            comps.push(CyclicComponent {
                order,
                pk,
                dlog,
            });
        }
    }
    comps
}

/// Exponent tuple of a unit `a` against the component generators. Returns
/// None when gcd(a, q) > 1.
fn dlog_tuple(comps: &[CyclicComponent], a: u64, q: u64) -> Option<Vec<u64>> {
    if gcd(a % q.max(1), q) != 1 && q > 1 {
        return None;
    }
    let mut out = Vec::with_capacity(comps.len());
    // Components belonging to 2^k (k >= 3) interact: dlog there is with
    // respect to the pair (-1, 5). Resolve per prime power.
    let mut i = 0;
    while i < comps.len() {
        let pk = comps[i].pk;
        let local = a % pk;
        // count how many components share this pk
        let j = comps[i..].iter().take_while(|c| c.pk == pk).count();
        if j == 2 {
            // 2^k with k >= 3: a == (-1)^e0 * 5^e1 (mod 2^k)
            let half = comps[i + 1].order;
            let mut found = None;
            for e0 in 0..2u64 {
                let base = if e0 == 0 { local } else { (pk - local) % pk };
                if comps[i + 1].dlog[base as usize] != usize::MAX {
                    found = Some((e0, comps[i + 1].dlog[base as usize] as u64));
                    break;
                }
            }
            let (e0, e1) = found?;
            debug_assert!(e1 < half);
            out.push(e0);
            out.push(e1);
        } else {
            let e = comps[i].dlog[local as usize];
            if e == usize::MAX {
                return None;
            }
            out.push(e as u64);
        }
        i += j;
    }
    Some(out)
}

/// Enumerates all phi(q) Dirichlet characters mod q via the canonical
/// pairing of (Z/q)* with its dual.
pub fn characters_mod(q: u64) -> Vec<DirichletCharacter> {
    assert!(q >= 1, "modulus must be positive");
    let comps = components_of(q);
    // Precompute exponent tuples for every residue.
    let tuples: Vec<Option<Vec<u64>>> = (0..q).map(|a| dlog_tuple(&comps, a, q)).collect();
    let orders: Vec<u64> = comps.iter().map(|c| c.order).collect();

    let mut out = Vec::new();
    for n in 0..q.max(1) {
        let n = if q == 1 { 1 } else { n };
        let Some(ne) = (if q == 1 {
            Some(Vec::new())
        } else {
            tuples[n as usize].clone()
        }) else {
            continue;
        };
        let mut values = vec![Complex64::new(0.0, 0.0); q.max(1) as usize];
        for a in 0..q.max(1) {
            let t = if q == 1 {
                Some(Vec::new())
            } else {
                tuples[a as usize].clone()
            };
            if let Some(ae) = t {
                let mut phase = 0.0f64;
                for k in 0..orders.len() {
                    phase += (ne[k] * ae[k]) as f64 / orders[k] as f64;
                }
                values[a as usize] = Complex64::from_polar(1.0, TAU * phase.fract());
            }
        }
        if q == 1 {
            values[0] = Complex64::new(1.0, 0.0);
        }
        let parity = if q == 1 {
            Parity::Even
        } else {
            let v = values[((q - 1) % q) as usize];
            if (v - Complex64::new(1.0, 0.0)).norm() < 1e-9 {
                Parity::Even
            } else {
                Parity::Odd
            }
        };
        let mut chi = DirichletCharacter {
            modulus: q,
            values,
            primitive: false,
            parity,
            label: if q == 1 { 1 } else { n },
        };
        chi.primitive = is_primitive(&chi);
        out.push(chi);
        if q == 1 {
            break;
        }
    }
    out.sort_by_key(|c| c.label);
    out
}

/// Induced-character test: chi mod q is primitive iff for every prime p | q
/// it does not factor through (Z/(q/p))*.
fn is_primitive(chi: &DirichletCharacter) -> bool {
    let q = chi.modulus;
    if q == 1 {
        return true;
    }
    let mut divisors = Vec::new();
    let mut m = q;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            divisors.push(q / p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        divisors.push(q / m);
    }
    for d in divisors {
        // chi factors through mod d iff chi(a) = 1 for all a == 1 mod d
        // with gcd(a, q) = 1.
        let factors_through = (0..q / d)
            .map(|k| 1 + k * d)
            .filter(|&a| gcd(a % q, q) == 1)
            .all(|a| (chi.eval(a) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        if factors_through {
            return false;
        }
    }
    true
}

/// Ordinary Gauss sum tau(chi) = sum_{a=1}^{q} chi(a) e^{2 pi i a / q}.
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let q = chi.modulus;
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        acc += chi.eval(a) * Complex64::from_polar(1.0, TAU * a as f64 / q as f64);
    }
    acc
}
