//! Dense polynomials over a prime field F_p, little-endian coefficient vectors.
//! Only what field construction needs: reduction, gcd, modular powers and
//! Rabin's irreducibility test.

use num_bigint::BigUint;

use crate::nt;

#[inline]
pub(crate) fn mulmod_p(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    powmod_p(a, p as u64 - 2, p)
}

pub(crate) fn powmod_p(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_p(r, a, p);
        }
        a = mulmod_p(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = acc.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `f`.
pub(crate) fn rem_monic(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let m = f.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > m {
        let top = r.len() - 1;
        let c = r[top];
        if c != 0 {
            let shift = top - m;
            for (j, &fj) in f.iter().enumerate() {
                let t = &mut r[shift + j];
                *t = (*t + p - mulmod_p(c, fj, p)) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// `(quotient, remainder)` of `a` by an arbitrary nonzero `b`.
pub(crate) fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod_p(b[db], p);
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = mulmod_p(r[top], lead_inv, p);
        let shift = top - db;
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate().take(db + 1) {
            let t = &mut r[shift + j];
            *t = (*t + p - mulmod_p(c, bj, p)) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    rem_monic(&mul(a, b, p), f, p)
}

pub(crate) fn powmod(base: &[u32], e: &BigUint, f: &[u32], p: u32) -> Vec<u32> {
    let mut result = rem_monic(&[1], f, p);
    let base = rem_monic(base, f, p);
    for bit in (0..e.bits()).rev() {
        result = mulmod(&result, &result, f, p);
        if e.bit(bit) {
            result = mulmod(&result, &base, f, p);
        }
    }
    result
}

/// Monic gcd.
pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod_p(lead, p);
        for c in a.iter_mut() {
            *c = mulmod_p(*c, inv, p);
        }
    }
    a
}

/// Inverse of `a` modulo the irreducible monic `f`, by extended Euclid.
pub(crate) fn inv_mod_poly(a: &[u32], f: &[u32], p: u32) -> Option<Vec<u32>> {
    let mut r0 = f.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Vec<u32> = Vec::new();
    let mut s1: Vec<u32> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is a nonzero constant when gcd(a, f) = 1.
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod_p(r0[0], p);
    let mut out: Vec<u32> = s0.iter().map(|&x| mulmod_p(x, c, p)).collect();
    out = rem_monic(&out, f, p);
    Some(out)
}

pub(crate) fn eval(a: &[u32], x: u32, p: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| (mulmod_p(acc, x, p) + c) % p)
}

/// Rabin's test: monic `f` of degree `m` is irreducible over F_p iff
/// `X^{p^m} = X (mod f)` and `gcd(X^{p^{m/r}} - X, f) = 1` for every prime `r | m`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(m) = degree(f) else { return false };
    if m == 0 || f[m] != 1 || f.len() != m + 1 {
        return false;
    }
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    if p <= 64 && (0..p).any(|x| eval(f, x, p) == 0) {
        return false;
    }
    let x = vec![0, 1];
    let p_big = BigUint::from(p);
    let mut powers = Vec::with_capacity(m);
    let mut h = x.clone();
    for _ in 0..m {
        h = powmod(&h, &p_big, f, p);
        powers.push(h.clone());
    }
    if powers[m - 1] != x {
        return false;
    }
    let m32 = m as u32;
    for r in (2..=m32).filter(|&r| m32 % r == 0 && nt::is_prime_u64(r as u64)) {
        let h = &powers[(m32 / r) as usize - 1];
        if gcd(&sub(h, &x, p), f, p) != [1] {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`
/// over F_p, comparing coefficients from the `X^{m-1}` term downwards.
pub(crate) fn smallest_irreducible(m: usize, p: u32) -> Vec<u32> {
    let mut f = vec![0u32; m + 1];
    f[m] = 1;
    loop {
        if is_irreducible(&f, p) {
            return f;
        }
        // Odometer increment with f[0] as the least significant digit.
        let mut i = 0;
        loop {
            assert!(i < m, "no irreducible polynomial of degree {m} over F_{p}");
            f[i] += 1;
            if f[i] == p {
                f[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial division by every monic polynomial of degree 1..=m/2.
    fn irreducible_by_trial_division(f: &[u32], p: u32) -> bool {
        let m = degree(f).unwrap();
        for d in 1..=m / 2 {
            let count = (p as usize).pow(d as u32);
            for idx in 0..count {
                let mut g = vec![0u32; d + 1];
                g[d] = 1;
                let mut t = idx;
                for c in g.iter_mut().take(d) {
                    *c = (t % p as usize) as u32;
                    t /= p as usize;
                }
                if divrem(f, &g, p).1.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_matches_trial_division() {
        for p in [2u32, 3] {
            for m in 1..=6usize {
                let total = (p as usize).pow(m as u32);
                for idx in 0..total {
                    let mut f = vec![0u32; m + 1];
                    f[m] = 1;
                    let mut t = idx;
                    for c in f.iter_mut().take(m) {
                        *c = (t % p as usize) as u32;
                        t /= p as usize;
                    }
                    assert_eq!(
                        is_irreducible(&f, p),
                        irreducible_by_trial_division(&f, p),
                        "p={p} f={f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn smallest_known_cases() {
        assert_eq!(smallest_irreducible(5, 2), vec![1, 0, 1, 0, 0, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 1, 0, 1]);
        assert_eq!(smallest_irreducible(2, 3), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(1, 7), vec![0, 1]);
    }

    #[test]
    fn inverse_mod_poly() {
        let f = vec![1, 0, 1, 0, 0, 1];
        for idx in 1..32u32 {
            let a: Vec<u32> = (0..5).map(|i| (idx >> i) & 1).collect();
            let inv = inv_mod_poly(&a, &f, 2).unwrap();
            assert_eq!(mulmod(&a, &inv, &f, 2), vec![1]);
        }
    }
}
