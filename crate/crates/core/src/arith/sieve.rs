use super::{FnId, FnTable};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

pub const MAX_SIEVE_LIMIT: u64 = 100_000_000;

/// Linear (smallest-prime-factor) sieve over `1..=limit`.
///
/// Returns the primes and, for each `n`, the sign value produced by
/// `step(prev, p_divides_cofactor)`: μ zeroes on a repeated prime, λ flips.
fn linear_sieve(limit: usize, repeated_prime_zeroes: bool) -> (Vec<u32>, Vec<i8>) {
    let mut sign = vec![0i8; limit + 1];
    let mut composite = vec![false; limit + 1];
    let mut primes: Vec<u32> = Vec::new();
    if limit >= 1 {
        sign[1] = 1;
    }
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u32);
            sign[i] = -1;
        }
        for &p in &primes {
            let p = p as usize;
            let ip = i * p;
            if ip > limit {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                sign[ip] = if repeated_prime_zeroes { 0 } else { -sign[i] };
                break;
            }
            sign[ip] = -sign[i];
        }
    }
    (primes, sign)
}

/// Sieves `fn_id` over `1..=limit`.
pub fn sieve<T: Real>(fn_id: FnId, limit: u64) -> Result<FnTable<T>> {
    if !(1..=MAX_SIEVE_LIMIT).contains(&limit) {
        return Err(Error::Resource(format!("sieve limit {limit} outside 1..={MAX_SIEVE_LIMIT}")));
    }
    let n = limit as usize;
    let table = match fn_id {
        FnId::Moebius | FnId::Liouville => {
            let (_, sign) = linear_sieve(n, fn_id == FnId::Moebius);
            let mut values: Vec<T> = sign.into_iter().map(|s| T::of(s as f64)).collect();
            values[0] = T::zero();
            FnTable::from_padded(fn_id, values, fn_id == FnId::Liouville)
        }
        FnId::VonMangoldt => {
            let (primes, _) = linear_sieve(n, true);
            let mut values = vec![T::zero(); n + 1];
            for p in primes {
                let log_p = T::of((p as f64).ln());
                let mut pk = p as u64;
                while pk <= limit {
                    values[pk as usize] = log_p;
                    pk *= p as u64;
                }
            }
            FnTable::from_padded(fn_id, values, false)
        }
        FnId::Unit => {
            let mut values = vec![T::one(); n + 1];
            values[0] = T::zero();
            FnTable::from_padded(fn_id, values, true)
        }
        FnId::Custom => return Err(domain("custom functions are read from CSV, not sieved")),
    };
    Ok(table)
}
