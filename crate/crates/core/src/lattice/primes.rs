use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

const TRIAL_DIVISION_BOUND: u64 = 10_000;
const RHO_SEED: u64 = 0x5eed_f00d;
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller–Rabin with the first twelve prime bases. Deterministic below
/// 3.3·10^24, which covers every value this crate produces in practice.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in &WITNESSES {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if n.is_multiple_of(&p) {
            return false;
        }
    }
    let n_minus_one: BigInt = n - 1;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; returns a nontrivial factor of the
/// composite `n`.
fn pollard_brent(n: &BigInt, rng: &mut ChaCha8Rng) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    loop {
        let mut y = rng.gen_bigint_range(&BigInt::one(), n);
        let c = rng.gen_bigint_range(&BigInt::one(), n);
        let m = 64u32;
        let mut g = BigInt::one();
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..(m as u64).min(r - k) {
                    y = (&y * &y + &c) % n;
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m as u64;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = (&ys * &ys + &c) % n;
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
}

fn largest_factor_of_cofactor(n: BigInt, rng: &mut ChaCha8Rng) -> BigInt {
    if n.is_one() {
        return BigInt::zero();
    }
    if is_prime(&n) {
        return n;
    }
    let f = pollard_brent(&n, rng);
    let other = &n / &f;
    largest_factor_of_cofactor(f, rng).max(largest_factor_of_cofactor(other, rng))
}

/// Largest prime dividing `n`, or 0 when `n = 1`.
///
/// Trial division handles small factors; any remaining composite cofactor is
/// split by Pollard rho driven by a fixed-seed generator, so results and run
/// time are reproducible.
pub fn largest_prime_factor(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut n = n.abs();
    let mut largest = BigInt::zero();
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        if n.is_multiple_of(&bp) {
            largest = bp.clone();
            while n.is_multiple_of(&bp) {
                n /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return Ok(largest);
    }
    if n.to_u64().is_some_and(|x| x < TRIAL_DIVISION_BOUND * TRIAL_DIVISION_BOUND) {
        // no factor up to sqrt(n) was found, so n is prime
        return Ok(largest.max(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RHO_SEED);
    Ok(largest.max(largest_factor_of_cofactor(n, &mut rng)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lpf(n: i64) -> i64 {
        largest_prime_factor(&BigInt::from(n)).unwrap().to_i64().unwrap()
    }

    fn naive_lpf(mut n: u64) -> u64 {
        let mut best = 0;
        let mut p = 2;
        while n > 1 {
            while n.is_multiple_of(p) {
                best = p;
                n /= p;
            }
            p += 1;
        }
        best
    }

    #[test]
    fn small_values() {
        assert_eq!(lpf(1), 0);
        assert_eq!(lpf(12), 3);
        assert_eq!(lpf(97), 97);
        assert!(matches!(largest_prime_factor(&BigInt::zero()), Err(Error::ZeroArgument)));
        for n in 1..2000u64 {
            assert_eq!(lpf(n as i64) as u64, naive_lpf(n), "n = {n}");
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..200).filter(|&n| naive_lpf(n) == n && n > 1).collect();
        for n in 0..200u64 {
            assert_eq!(is_prime(&BigInt::from(n)), primes.contains(&n), "n = {n}");
        }
        assert!(is_prime(&BigInt::from(1_000_000_007u64)));
        assert!(!is_prime(&BigInt::from(561u64)));
    }

    #[test]
    fn rho_fallback_splits_large_semiprimes() {
        // 1_000_003 and 1_000_033 are both prime and above the trial bound.
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64) * BigInt::from(6);
        assert_eq!(largest_prime_factor(&n).unwrap(), BigInt::from(1_000_033u64));
        let sq = BigInt::from(1_000_003u64).pow(2);
        assert_eq!(largest_prime_factor(&sq).unwrap(), BigInt::from(1_000_003u64));
    }
}
