use std::sync::Arc;

use super::{FieldElement, FieldSpec, Gf, NONE};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// GF(q) ⊂ GF(q^ℓ), both realized concretely, with an explicit embedding and
/// the power basis {1, β, ..., β^{ℓ-1}} of the top field over the base.
pub struct FieldTower {
    base: Arc<FieldSpec>,
    top: Arc<FieldSpec>,
    degree: u32,
    embed: Vec<Gf>,
    pullback: Vec<u32>,
    basis: Vec<Gf>,
    // Inverse of the GF(p)-matrix whose columns are embed(x^j) * basis[i].
    coord_inverse: Matrix,
}

impl FieldTower {
    pub fn new(base: Arc<FieldSpec>, degree: u32, bound: u64) -> Result<FieldTower> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let p = base.characteristic();
        let e = base.degree();
        let top_degree = e
            .checked_mul(degree)
            .ok_or(Error::OrderTooLarge { p: p as u64, e: u32::MAX, bound })?;
        let top = if degree == 1 {
            Arc::clone(&base)
        } else {
            FieldSpec::with_bound(p as u64, top_degree, bound)?
        };

        let q = base.order() as u64;
        let big_q = top.order() as u64;
        let cofactor = (big_q - 1) / (q - 1);
        let beta = top.primitive();
        let is_root = |g: Gf| {
            // Horner evaluation of the base modulus at g inside the top field.
            base.modulus()
                .iter()
                .rev()
                .fold(Gf::ZERO, |acc, &c| top.add(top.mul(acc, g), top.from_int(c as u64)))
                .is_zero()
        };
        let image = (1..q)
            .map(|s| top.pow(beta, cofactor * s))
            .find(|&g| is_root(g))
            .expect("the base modulus splits in the extension");

        let mut embed = vec![Gf::ZERO; q as usize];
        let mut cur = Gf::ONE;
        for i in 0..q - 1 {
            embed[base.exp(i).0 as usize] = cur;
            cur = top.mul(cur, image);
        }
        let mut pullback = vec![NONE; big_q as usize];
        for (a, &img) in embed.iter().enumerate() {
            pullback[img.0 as usize] = a as u32;
        }

        if q <= 256 {
            for a in base.elements() {
                for b in base.elements() {
                    assert_eq!(embed[base.add(a, b).0 as usize], top.add(embed[a.0 as usize], embed[b.0 as usize]));
                    assert_eq!(embed[base.mul(a, b).0 as usize], top.mul(embed[a.0 as usize], embed[b.0 as usize]));
                }
            }
        }

        let basis: Vec<Gf> = (0..degree as u64).map(|i| top.pow(beta, i)).collect();

        let prime = FieldSpec::with_bound(p as u64, 1, bound.max(p as u64))?;
        let dim = top_degree as usize;
        let mut cols: Vec<Vec<Gf>> = Vec::with_capacity(dim);
        for &b in &basis {
            for j in 0..e {
                let xj = Gf((p as u64).pow(j) as u32);
                let v = top.mul(embed[xj.0 as usize], b);
                cols.push(top.coeffs(v).into_iter().map(Gf).collect());
            }
        }
        let coord = Matrix::from_rows(Arc::clone(&prime), cols)?.transpose();
        let coord_inverse = coord.inverse().ok_or_else(|| {
            Error::InvalidParameter("tower basis is not linearly independent".into())
        })?;

        Ok(FieldTower {
            base,
            top,
            degree,
            embed,
            pullback,
            basis,
            coord_inverse,
        })
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn top(&self) -> &Arc<FieldSpec> {
        &self.top
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn embed(&self, a: Gf) -> Gf {
        self.embed[a.0 as usize]
    }

    pub fn embed_map(&self) -> &[Gf] {
        &self.embed
    }

    /// Preimage of a top-field element lying in the embedded base field.
    pub fn pullback(&self, a: Gf) -> Option<Gf> {
        match self.pullback.get(a.0 as usize) {
            Some(&x) if x != NONE => Some(Gf(x)),
            _ => None,
        }
    }

    pub fn basis(&self) -> &[Gf] {
        &self.basis
    }

    /// Base-field coordinates of `a` in the tower basis.
    pub fn coordinates(&self, a: Gf) -> Vec<Gf> {
        let e = self.base.degree() as usize;
        let digits: Vec<Gf> = self.top.coeffs(a).into_iter().map(Gf).collect();
        let x = self.coord_inverse.mul_vec(&digits);
        x.chunks(e)
            .map(|c| {
                let c: Vec<u32> = c.iter().map(|g| g.0).collect();
                self.base.from_coeffs(&c).expect("prime-field digits")
            })
            .collect()
    }

    /// `sum_i embed(coords[i]) * basis[i]`.
    pub fn combine(&self, coords: &[Gf]) -> Gf {
        coords
            .iter()
            .zip(&self.basis)
            .fold(Gf::ZERO, |acc, (&c, &b)| self.top.add(acc, self.top.mul(self.embed(c), b)))
    }

    /// Relative trace of a top-field element, returned as a base-field element.
    pub fn trace(&self, a: Gf) -> Gf {
        let q = self.base.order() as u64;
        let mut sum = Gf::ZERO;
        let mut cur = a;
        for _ in 0..self.degree {
            sum = self.top.add(sum, cur);
            cur = self.top.pow(cur, q);
        }
        self.pullback(sum).expect("trace lies in the base field")
    }

    pub fn rel_trace<'b>(&'b self, a: &FieldElement<'_>) -> Result<FieldElement<'b>> {
        if a.field() != &*self.top {
            return Err(Error::WrongField);
        }
        self.base.element(self.trace(a.value()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::DEFAULT_MAX_FIELD_ORDER as B;

    fn tower(q: u64, l: u32) -> FieldTower {
        FieldTower::new(FieldSpec::from_order(q, B).unwrap(), l, B).unwrap()
    }

    #[test]
    fn prime_subfield_embedding() {
        let t = tower(2, 2);
        assert_eq!(t.top().order(), 4);
        assert_eq!(t.embed(Gf::ZERO), Gf::ZERO);
        assert_eq!(t.embed(Gf::ONE), Gf::ONE);
    }

    #[test]
    fn degree_one_tower_is_identity() {
        let t = tower(4, 1);
        for a in t.base().elements() {
            assert_eq!(t.embed(a), a);
        }
        assert_eq!(t.basis(), &[Gf::ONE]);
    }

    #[test]
    fn gf3_in_gf27() {
        let t = tower(3, 3);
        let top = t.top();
        let img = t.embed(Gf(2));
        assert_ne!(img, Gf::ONE);
        assert_eq!(top.mul(img, img), Gf::ONE);
    }

    #[test]
    fn trace_small_values() {
        let t = tower(2, 2);
        assert_eq!(t.trace(Gf::ZERO), Gf::ZERO);
        assert_eq!(t.trace(Gf::ONE), Gf::ZERO);
        let t = tower(3, 2);
        let zeros = t.top().elements().filter(|&a| t.trace(a).is_zero()).count();
        assert_eq!(zeros, 3);
        let f = t.top().element(Gf(5)).unwrap();
        let other = FieldSpec::new(5, 1).unwrap();
        assert_eq!(t.rel_trace(&f).unwrap().value(), t.trace(Gf(5)));
        assert_eq!(t.rel_trace(&other.element(Gf(1)).unwrap()).unwrap_err(), Error::WrongField);
    }

    #[test]
    fn trace_is_linear() {
        for (q, l) in [(2, 2), (2, 3), (3, 2), (4, 2), (2, 6), (3, 4), (9, 2)] {
            let t = tower(q, l);
            let (base, top) = (t.base(), t.top());
            for lam in base.elements() {
                for a in top.elements().step_by(3) {
                    for b in top.elements().step_by(5) {
                        let lhs = t.trace(top.add(top.mul(t.embed(lam), a), b));
                        let rhs = base.add(base.mul(lam, t.trace(a)), t.trace(b));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_is_injective_and_multiplicative() {
        for (q, l) in [(2, 3), (4, 2), (8, 2), (16, 2), (3, 2), (5, 2), (256, 1)] {
            let t = tower(q, l);
            let mut seen = std::collections::HashSet::new();
            for a in t.base().elements() {
                assert!(seen.insert(t.embed(a)));
                assert_eq!(t.pullback(t.embed(a)), Some(a));
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        for (q, l) in [(2, 2), (4, 2), (3, 3), (2, 4), (4, 3)] {
            let t = tower(q, l);
            for a in t.top().elements() {
                let c = t.coordinates(a);
                assert_eq!(c.len(), l as usize);
                assert_eq!(t.combine(&c), a);
            }
        }
    }
}
