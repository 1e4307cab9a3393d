//! Integer number theory used by the field layer: primality, factorization of
//! `p^m - 1`, Carmichael's function and multiplicative orders modulo `M`.
//!
//! Group orders such as `3^78 - 1` overflow 64 bits, so everything that
//! touches them works on [`BigUint`].

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Prime factorization as an ordered `prime -> exponent` map.
pub type Factorization = BTreeMap<BigUint, u32>;

const TRIAL_BOUND: u64 = 1 << 14;
const RHO_BUDGET: u64 = 1 << 24;
const MR_BASES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Deterministic primality test for machine-word integers (trial division).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Miller-Rabin with the first sixteen prime bases. Deterministic below
/// 3.3 * 10^24 and a probable-prime test above that.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < TRIAL_BOUND * TRIAL_BOUND {
            return is_prime_u64(small);
        }
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in MR_BASES.iter() {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho. Returns a nontrivial factor of the odd
/// composite `n`, or `None` once the iteration budget is spent.
fn pollard_brent(n: &BigUint, budget: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut spent = 0u64;
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g == one {
                ys = y.clone();
                let steps = 128.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += steps;
                spent += steps;
                if spent > budget {
                    return None;
                }
            }
            r *= 2;
        }
        if &g == n {
            // Batched product collapsed; replay one step at a time.
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn factor_into(n: BigUint, out: &mut Factorization) -> Result<()> {
    let one = BigUint::one();
    if n <= one {
        return Ok(());
    }
    let mut n = n;
    let mut d = 2u64;
    while d < TRIAL_BOUND {
        let dd = BigUint::from(d);
        if &dd * &dd > n {
            break;
        }
        while (&n % &dd).is_zero() {
            *out.entry(dd.clone()).or_insert(0) += 1;
            n /= &dd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n == one {
        return Ok(());
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == one {
            continue;
        }
        if is_probable_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let f = pollard_brent(&m, RHO_BUDGET).ok_or_else(|| Error::CapExceeded {
            what: "integer factorization".into(),
            cap: RHO_BUDGET,
            partial: format!("unfactored cofactor {m}"),
        })?;
        let cofactor = &m / &f;
        stack.push(f);
        stack.push(cofactor);
    }
    Ok(())
}

/// Full prime factorization of `n`.
pub fn factor(n: &BigUint) -> Result<Factorization> {
    let mut out = Factorization::new();
    factor_into(n.clone(), &mut out)?;
    Ok(out)
}

fn divisors_u32(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// Factorization of `p^m - 1`, split along the cyclotomic values `Phi_d(p)`
/// for `d | m` so that the pieces handed to rho stay small.
pub fn factor_pow_minus_one(p: u64, m: u32) -> Result<Factorization> {
    let p = BigUint::from(p);
    let divs = divisors_u32(m);
    let mut phi: BTreeMap<u32, BigUint> = BTreeMap::new();
    let mut out = Factorization::new();
    for &d in &divs {
        let mut value = p.pow(d) - BigUint::one();
        for (&e, pe) in phi.iter() {
            if d % e == 0 {
                value /= pe;
            }
        }
        factor_into(value.clone(), &mut out)?;
        phi.insert(d, value);
    }
    Ok(out)
}

/// Rebuild the integer from its factorization.
pub fn product(f: &Factorization) -> BigUint {
    f.iter()
        .fold(BigUint::one(), |acc, (p, &e)| acc * p.pow(e))
}

pub fn merge(a: &Factorization, b: &Factorization) -> Factorization {
    let mut out = a.clone();
    for (p, &e) in b {
        *out.entry(p.clone()).or_insert(0) += e;
    }
    out
}

/// Order of `g` in a cyclic group of order `n = product(order_factors)`,
/// given a predicate telling whether `g^e` is the identity.
pub fn order_by_descent<F>(order_factors: &Factorization, mut is_identity: F) -> BigUint
where
    F: FnMut(&BigUint) -> bool,
{
    let mut t = product(order_factors);
    for (prime, &exp) in order_factors {
        for _ in 0..exp {
            let candidate = &t / prime;
            if is_identity(&candidate) {
                t = candidate;
            } else {
                break;
            }
        }
    }
    t
}

/// Carmichael's function from a prime factorization.
pub fn carmichael(f: &Factorization) -> BigUint {
    let two = BigUint::from(2u32);
    f.iter().fold(BigUint::one(), |acc, (p, &e)| {
        let lambda = if *p == two {
            match e {
                1 => BigUint::one(),
                2 => two.clone(),
                _ => BigUint::one() << (e - 2),
            }
        } else {
            (p - BigUint::one()) * p.pow(e - 1)
        };
        acc.lcm(&lambda)
    })
}

/// Multiplicative order of `a` modulo `modulus`, where `modulus_factors` is
/// the factorization of the modulus. Requires `gcd(a, modulus) = 1`.
pub fn multiplicative_order_mod(
    a: &BigUint,
    modulus: &BigUint,
    modulus_factors: &Factorization,
) -> Result<BigUint> {
    if modulus.is_one() {
        return Ok(BigUint::one());
    }
    if !a.gcd(modulus).is_one() {
        return Err(Error::InvalidInput(format!(
            "{a} is not a unit modulo {modulus}"
        )));
    }
    let lambda = carmichael(modulus_factors);
    let lambda_factors = factor(&lambda)?;
    let one = BigUint::one();
    Ok(order_by_descent(&lambda_factors, |e| a.modpow(e, modulus) == one))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Returns `(p, e)` with `q = p^e` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_probable_prime(&big(65_537)));
        assert!(!is_probable_prime(&big(65_537 * 65_539)));
    }

    #[test]
    fn factors_3_pow_78_minus_one() {
        let f = factor_pow_minus_one(3, 78).unwrap();
        assert_eq!(product(&f), big(3).pow(78u32) - 1u32);
        assert!(f.keys().all(is_probable_prime));
        assert_eq!(f[&big(2)], 3);
        assert_eq!(f[&big(13)], 2);
    }

    #[test]
    fn factors_2_pow_75_minus_one() {
        let f = factor_pow_minus_one(2, 75).unwrap();
        assert_eq!(product(&f), big(2).pow(75u32) - 1u32);
        assert!(f.contains_key(&big(10_567_201)));
    }

    #[test]
    fn rho_splits_semiprime() {
        let n = big(1_000_003) * big(999_983);
        let f = factor(&n).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(product(&f), n);
    }

    #[test]
    fn order_of_three_mod_2662() {
        let m = big(11 * 242);
        let order = multiplicative_order_mod(&big(3), &m, &factor(&m).unwrap()).unwrap();
        assert_eq!(order, big(55));
    }

    #[test]
    fn carmichael_values() {
        for (n, lambda) in [(8u64, 2u64), (15, 4), (16, 4), (2662, 1210), (1, 1)] {
            assert_eq!(carmichael(&factor(&big(n)).unwrap()), big(lambda), "n = {n}");
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
