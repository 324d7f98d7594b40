//! Exact arithmetic in GF(p^e).
//!
//! Elements are stored as [`Gf`] indices: the element with polynomial
//! representative `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` has index
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. Index 0 is zero and index 1 is one.
//! Multiplication goes through discrete-log tables and addition in odd
//! characteristic through Zech logarithms, so both are table lookups.
//! [`FieldElement`] offers the same operations computed directly on the
//! polynomial representatives modulo the field's modulus, with field checks.

pub(crate) mod poly;
mod tower;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::config::DEFAULT_MAX_FIELD_ORDER;
use crate::error::{Error, Result};

pub use tower::FieldTower;

/// Index of a field element inside its [`FieldSpec`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

const NONE: u32 = u32::MAX;

/// The finite field GF(p^e) with a fixed modulus and primitive element.
pub struct FieldSpec {
    p: u32,
    e: u32,
    order: u32,
    modulus: Vec<u32>,
    primitive: Gf,
    // exp[i] = primitive^i for 0 <= i < 2(order-1)
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    // zech[k] = log(1 + primitive^k), NONE when that sum is zero
    zech: Vec<u32>,
}

impl FieldSpec {
    /// GF(p^e) under the default order bound.
    pub fn new(p: u64, e: u32) -> Result<Arc<FieldSpec>> {
        Self::with_bound(p, e, DEFAULT_MAX_FIELD_ORDER)
    }

    /// Builds GF(p^e), choosing the lexicographically smallest (coefficients
    /// compared from the constant term upward) monic irreducible modulus of
    /// degree `e` whose root is primitive.
    pub fn with_bound(p: u64, e: u32, bound: u64) -> Result<Arc<FieldSpec>> {
        if !poly::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let bound = bound.min(u32::MAX as u64 / 2);
        let order = p
            .checked_pow(e)
            .filter(|&q| q <= bound)
            .ok_or(Error::OrderTooLarge { p, e, bound })?;
        let p = p as u32;
        let order32 = order as u32;
        let group = order - 1;
        let factors = poly::prime_factors(group);

        let (modulus, primitive_coeffs) = if e == 1 {
            let g = (1..p)
                .find(|&g| {
                    factors
                        .iter()
                        .all(|&r| poly::pow_mod(g, (group / r) as u32, p) != 1)
                })
                .unwrap_or(1);
            (vec![(p - g) % p, 1], vec![g])
        } else {
            let x: Vec<u32> = vec![0, 1];
            let mut found = None;
            // Enumerate (c_0, ..., c_{e-1}) with c_0 the most significant key.
            for idx in 0..order {
                let mut f: Vec<u32> = poly::digits(idx, p, e as usize);
                f.reverse();
                if f[0] == 0 {
                    continue;
                }
                f.push(1);
                if !poly::is_irreducible(&f, p) {
                    continue;
                }
                let primitive = factors
                    .iter()
                    .all(|&r| poly::pow_poly_mod(&x, group / r, &f, p) != vec![1]);
                if primitive {
                    found = Some(f);
                    break;
                }
            }
            let f = found.expect("a primitive polynomial exists for every degree");
            (f, x)
        };

        let to_index = |c: &[u32]| -> u32 {
            c.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64) as u32
        };

        let n1 = group as usize;
        let mut exp = vec![0u32; 2 * n1];
        let mut log = vec![NONE; order as usize];
        let mut cur: Vec<u32> = vec![1];
        for i in 0..n1 {
            let idx = to_index(&cur);
            debug_assert_eq!(log[idx as usize], NONE, "primitive element has short order");
            exp[i] = idx;
            exp[i + n1] = idx;
            log[idx as usize] = i as u32;
            cur = poly::mul_mod(&cur, &primitive_coeffs, &modulus, p);
        }
        debug_assert_eq!(cur, vec![1]);

        let neg: Vec<u32> = (0..order)
            .map(|a| {
                let d = poly::digits(a, p, e as usize);
                let n: Vec<u32> = d.iter().map(|&c| (p - c) % p).collect();
                to_index(&n)
            })
            .collect();

        let zech = if p == 2 {
            Vec::new()
        } else {
            (0..n1)
                .map(|k| {
                    let mut d = poly::digits(exp[k] as u64, p, e as usize);
                    d[0] = (d[0] + 1) % p;
                    let s = to_index(&d);
                    log[s as usize]
                })
                .collect()
        };

        Ok(Arc::new(FieldSpec {
            p,
            e,
            order: order32,
            modulus,
            primitive: Gf(to_index(&primitive_coeffs)),
            exp,
            log,
            neg,
            zech,
        }))
    }

    /// GF(q) for a prime power `q`.
    pub fn from_order(q: u64, bound: u64) -> Result<Arc<FieldSpec>> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
        }
        let factors = poly::prime_factors(q);
        if factors.len() != 1 {
            return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
        }
        let p = factors[0];
        let mut e = 0u32;
        let mut r = q;
        while r > 1 {
            r /= p;
            e += 1;
        }
        Self::with_bound(p, e, bound)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn order_big(&self) -> BigUint {
        BigUint::from(self.order)
    }

    /// Monic modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> Gf {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> + '_ {
        (0..self.order).map(Gf)
    }

    #[inline]
    pub fn contains(&self, a: Gf) -> bool {
        a.0 < self.order
    }

    /// Image of the integer `c` in the prime subfield.
    pub fn from_int(&self, c: u64) -> Gf {
        Gf((c % self.p as u64) as u32)
    }

    pub fn coeffs(&self, a: Gf) -> Vec<u32> {
        poly::digits(a.0 as u64, self.p, self.e as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Gf> {
        if coeffs.len() != self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::WrongField);
        }
        let idx = coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p as u64 + d as u64);
        Ok(Gf(idx as u32))
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        if self.p == 2 {
            return Gf(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n1 = self.order - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let k = if lb >= la { lb - la } else { lb + n1 - la };
        let z = self.zech[k as usize];
        if z == NONE {
            Gf::ZERO
        } else {
            Gf(self.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Gf) -> Gf {
        Gf(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        Gf(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    #[inline]
    pub fn inv(&self, a: Gf) -> Option<Gf> {
        if a.0 == 0 {
            return None;
        }
        let n1 = self.order - 1;
        let l = self.log[a.0 as usize];
        Some(Gf(self.exp[((n1 - l) % n1) as usize]))
    }

    pub fn div(&self, a: Gf, b: Gf) -> Option<Gf> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Gf, k: u64) -> Gf {
        if k == 0 {
            return Gf::ONE;
        }
        if a.0 == 0 {
            return Gf::ZERO;
        }
        let n1 = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Gf(self.exp[((l * (k % n1)) % n1) as usize])
    }

    /// `primitive^i`.
    pub fn exp(&self, i: u64) -> Gf {
        let n1 = (self.order - 1) as u64;
        Gf(self.exp[(i % n1) as usize])
    }

    pub fn log(&self, a: Gf) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    pub fn multiplicative_order(&self, a: Gf) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n1 = (self.order - 1) as u64;
        Some(n1 / num_integer::gcd(n1, l))
    }

    /// Checked handle on `a` for the polynomial-arithmetic API.
    pub fn element(&self, a: Gf) -> Result<FieldElement<'_>> {
        if !self.contains(a) {
            return Err(Error::WrongField);
        }
        Ok(FieldElement { field: self, value: a })
    }

    fn same_field(&self, other: &FieldSpec) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.e)
        }
    }
}

/// An element bound to its field. Arithmetic here works on polynomial
/// representatives directly (reduction modulo the modulus, extended gcd for
/// inverses, square-and-multiply for powers) and rejects mixed operands.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f FieldSpec,
    value: Gf,
}

impl<'f> FieldElement<'f> {
    pub fn field(&self) -> &'f FieldSpec {
        self.field
    }

    pub fn value(&self) -> Gf {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    fn poly(&self) -> Vec<u32> {
        let mut c = self.coeffs();
        poly::trim(&mut c);
        c
    }

    fn wrap(&self, mut c: Vec<u32>) -> FieldElement<'f> {
        c.resize(self.field.e as usize, 0);
        let value = self
            .field
            .from_coeffs(&c)
            .expect("reduced polynomial has in-range coefficients");
        FieldElement { field: self.field, value }
    }

    fn check(&self, other: &FieldElement<'_>) -> Result<()> {
        if self.field.same_field(other.field) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.check(other)?;
        Ok(self.wrap(poly::add(&self.poly(), &other.poly(), self.field.p)))
    }

    pub fn sub(&self, other: &FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.check(other)?;
        Ok(self.wrap(poly::sub(&self.poly(), &other.poly(), self.field.p)))
    }

    pub fn mul(&self, other: &FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.check(other)?;
        let f = self.field;
        Ok(self.wrap(poly::mul_mod(&self.poly(), &other.poly(), &f.modulus, f.p)))
    }

    pub fn inv(&self) -> Result<FieldElement<'f>> {
        let f = self.field;
        poly::inv_poly_mod(&self.poly(), &f.modulus, f.p)
            .map(|c| self.wrap(c))
            .ok_or(Error::ZeroInverse)
    }

    pub fn pow(&self, k: u64) -> FieldElement<'f> {
        let f = self.field;
        self.wrap(poly::pow_poly_mod(&self.poly(), k, &f.modulus, f.p))
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(other.field) && self.value == other.value
    }
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}
