fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `≡ 1 (mod modulus)` in increasing order, without bound.
pub fn primes_one_mod(modulus: u64) -> impl Iterator<Item = u64> {
    assert!(modulus >= 1);
    let start = if modulus == 1 { 2 } else { modulus + 1 };
    let step = if modulus == 1 { 1 } else { modulus };
    (0u64..).map(move |k| start + k * step).filter(|n| is_prime(*n))
}

/// The `count` lexicographically smallest triples of distinct primes `≡ 1 (mod modulus)`.
///
/// Infinitely many triples start with the two smallest such primes, so these
/// are exactly `(q0, q1, q_k)` for `k = 2, ..., count + 1`.
pub fn dirichlet_triples(modulus: u64, count: usize) -> Vec<[u64; 3]> {
    let primes: Vec<u64> = primes_one_mod(modulus).take(count + 2).collect();
    primes[2..].iter().map(|&r| [primes[0], primes[1], r]).collect()
}
