//! Prime sieve backing the natural and maximal modulus sets.

use crate::error::{Result, RnsError};

/// All primes strictly below `limit`, ascending.
pub fn primes_below(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(RnsError::EmptyDomain(format!("primes below {limit}")));
    }
    let n = limit as usize;
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for i in 2..n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j < n {
            composite[j] = true;
            j += i;
        }
    }
    Ok(primes)
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Result<Vec<u64>> {
    if count == 0 {
        return Err(RnsError::EmptyDomain("zero primes requested".into()));
    }
    // p_n < n (ln n + ln ln n) for n >= 6
    let n = count.max(6) as f64;
    let bound = (n * (n.ln() + n.ln().ln())).ceil() as u64 + 1;
    let mut primes = primes_below(bound)?;
    primes.truncate(count);
    Ok(primes)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation by trial division as `(prime, exponent)` pairs.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
