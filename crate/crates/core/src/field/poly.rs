//! Dense polynomials over a prime field GF(p), coefficients low degree first.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64 % p64;
    let mut b = base as u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

pub(crate) fn add(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = (0..len)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = (0..len)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut out: Poly = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn div_rem(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], p) as u64;
    let p64 = p as u64;
    let mut rem: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let mut quot = vec![0u64; a.len().saturating_sub(db).max(1)];
    while let Some(dr) = rem.iter().rposition(|&c| c != 0) {
        if dr < db {
            break;
        }
        let coef = rem[dr] * lead_inv % p64;
        let shift = dr - db;
        quot[shift] = coef;
        for (i, &bc) in b[..=db].iter().enumerate() {
            let sub = coef * bc as u64 % p64;
            rem[shift + i] = (rem[shift + i] + p64 - sub) % p64;
        }
    }
    let mut q: Poly = quot.into_iter().map(|c| c as u32).collect();
    let mut r: Poly = rem.into_iter().map(|c| c as u32).collect();
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

pub(crate) fn rem(a: &[u32], b: &[u32], p: u32) -> Poly {
    div_rem(a, b, p).1
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), modulus, p)
}

/// `base^exp mod modulus` by square-and-multiply.
pub(crate) fn pow_poly_mod(base: &[u32], mut exp: u64, modulus: &[u32], p: u32) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, modulus, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, modulus, p);
        }
        b = mul_mod(&b, &b, modulus, p);
        exp >>= 1;
    }
    rem(&acc, modulus, p)
}

/// Inverse of `a` modulo an irreducible `modulus` by the extended Euclidean algorithm.
pub(crate) fn inv_poly_mod(a: &[u32], modulus: &[u32], p: u32) -> Option<Poly> {
    let mut r0: Poly = modulus.to_vec();
    let mut r1: Poly = rem(a, modulus, p);
    let mut s0: Poly = Vec::new();
    let mut s1: Poly = vec![1];
    if r1.is_empty() {
        return None;
    }
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is a nonzero constant when gcd is 1.
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(rem(&mul(&s0, &[c], p), modulus, p))
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    for dd in 1..=d / 2 {
        let count = (p as u64).pow(dd as u32);
        for idx in 0..count {
            let mut g: Poly = digits(idx, p, dd);
            g.push(1);
            if rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Base-`p` digits of `x`, least significant first, padded to `len`.
pub(crate) fn digits(mut x: u64, p: u32, len: usize) -> Poly {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((x % p as u64) as u32);
        x /= p as u64;
    }
    out
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}
