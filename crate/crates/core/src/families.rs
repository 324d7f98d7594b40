//! Simplex, Hamming, binary Reed-Muller and projective Reed-Muller codes.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::code::LinearCode;
use crate::combin::binomial_signed;
use crate::config::DEFAULT_MAX_FIELD_ORDER;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, FieldTower, Gf};
use crate::matrix::Matrix;

/// Longest code any constructor here will build.
pub const MAX_LENGTH: usize = 1 << 16;

/// `(q^m - 1)/(q - 1)`, checked against [`MAX_LENGTH`].
pub fn projective_length(q: u64, m: u32) -> Result<usize> {
    let qm = q
        .checked_pow(m)
        .filter(|&x| x < (MAX_LENGTH as u64) * q)
        .ok_or(Error::LengthTooLarge { n: usize::MAX, max: MAX_LENGTH })?;
    let n = ((qm - 1) / (q - 1)) as usize;
    if n > MAX_LENGTH {
        return Err(Error::LengthTooLarge { n, max: MAX_LENGTH });
    }
    Ok(n)
}

fn check_m(m: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m = {m}, need m >= 2")));
    }
    Ok(())
}

/// Normalized points of PG(m-1, q): first nonzero coordinate 1, listed in
/// lexicographic order (coordinate 0 most significant).
#[derive(Clone, Debug)]
pub struct ProjectivePointList {
    field: Arc<FieldSpec>,
    m: usize,
    points: Vec<Vec<Gf>>,
}

impl ProjectivePointList {
    pub fn new(field: Arc<FieldSpec>, m: u32) -> Result<ProjectivePointList> {
        if m == 0 {
            return Err(Error::InvalidParameter("m = 0".into()));
        }
        let q = field.order();
        let n = projective_length(q as u64, m)?;
        let m = m as usize;
        let mut points = Vec::with_capacity(n);
        for lead in 0..m {
            // zeros before `lead`, 1 at `lead`, anything after
            let free = m - lead - 1;
            let mut tail = vec![0u32; free];
            loop {
                let mut pt = vec![Gf::ZERO; m];
                pt[lead] = Gf::ONE;
                for (i, &t) in tail.iter().enumerate() {
                    pt[lead + 1 + i] = Gf(t);
                }
                points.push(pt);
                let mut i = free;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    tail[i] += 1;
                    if tail[i] < q {
                        break;
                    }
                    tail[i] = 0;
                }
                if tail.iter().all(|&t| t == 0) {
                    break;
                }
            }
        }
        // Leading position 0 comes first in the loop but sorts last
        // lexicographically, so sort once.
        points.sort();
        debug_assert_eq!(points.len(), n);
        Ok(ProjectivePointList { field, m, points })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> &[Vec<Gf>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Position of the point representing the nonzero vector `v`.
    pub fn index_of(&self, v: &[Gf]) -> Option<usize> {
        let lead = v.iter().position(|a| !a.is_zero())?;
        let s = self.field.inv(v[lead])?;
        let normal: Vec<Gf> = v.iter().map(|&a| self.field.mul(a, s)).collect();
        self.points.binary_search(&normal).ok()
    }
}

/// The `m x n` matrix whose columns are the normalized projective points.
pub fn simplex_generator(field: &Arc<FieldSpec>, m: u32) -> Result<Matrix> {
    check_m(m)?;
    let pts = ProjectivePointList::new(Arc::clone(field), m)?;
    let m = m as usize;
    let mut g = Matrix::zeros(Arc::clone(field), m, pts.len());
    for (j, p) in pts.points().iter().enumerate() {
        for (i, &a) in p.iter().enumerate() {
            g.set(i, j, a);
        }
    }
    Ok(g)
}

pub fn simplex(field: &Arc<FieldSpec>, m: u32) -> Result<LinearCode> {
    LinearCode::from_generator(&simplex_generator(field, m)?)
}

/// The Simplex code as the trace code `(Tr(a alpha^i))_i` over the tower
/// GF(q) ⊂ GF(q^m), with coset representatives `alpha^i`.
pub fn simplex_trace(field: &Arc<FieldSpec>, m: u32) -> Result<LinearCode> {
    check_m(m)?;
    let n = projective_length(field.order() as u64, m)?;
    let tower = FieldTower::new(Arc::clone(field), m, DEFAULT_MAX_FIELD_ORDER)?;
    let top = tower.top();
    let rows: Vec<Vec<Gf>> = (0..m as u64)
        .map(|j| (0..n as u64).map(|i| tower.trace(top.exp(i + j))).collect())
        .collect();
    LinearCode::from_generator(&Matrix::from_rows(Arc::clone(field), rows)?)
}

/// Dual of the Simplex code.
pub fn hamming(field: &Arc<FieldSpec>, m: u32) -> Result<LinearCode> {
    simplex(field, m)?.dual()
}

/// Sorted variable subsets of `{0..m}` of each size up to `r`, by size and
/// then lexicographically.
fn subsets_up_to(m: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for d in 1..=r {
        let mut c: Vec<usize> = (0..d).collect();
        loop {
            out.push(c.clone());
            let mut i = d;
            while i > 0 && c[i - 1] == m - d + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            c[i - 1] += 1;
            for j in i..d {
                c[j] = c[j - 1] + 1;
            }
        }
    }
    out
}

/// Binary Reed-Muller code RM(r, m). Points are the integers `0..2^m` with
/// bit `i` the value of variable `x_{i+1}`.
pub fn rm2(r: u32, m: u32) -> Result<LinearCode> {
    if r >= m {
        return Err(Error::InvalidParameter(format!("RM order r = {r} must be below m = {m}")));
    }
    if m > 16 {
        return Err(Error::LengthTooLarge { n: usize::MAX, max: MAX_LENGTH });
    }
    let n = 1usize << m;
    let field = FieldSpec::new(2, 1)?;
    let rows: Vec<Vec<Gf>> = subsets_up_to(m as usize, r as usize)
        .into_iter()
        .map(|vars| {
            let mask: usize = vars.iter().map(|&v| 1 << v).sum();
            (0..n).map(|x| Gf((x & mask == mask) as u32)).collect()
        })
        .collect();
    LinearCode::from_generator(&Matrix::from_rows(field, rows)?)
}

/// Exponent vectors of length `m` summing to `h`, lexicographically
/// descending (`x_1^h` first).
fn monomials(m: usize, h: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(m, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, h, &mut Vec::with_capacity(m), &mut out);
    out
}

fn check_prm(q: u64, m: u32, h: u32) -> Result<()> {
    check_m(m)?;
    let top = (m as u64 - 1) * (q - 1);
    if h == 0 || h as u64 > top {
        return Err(Error::InvalidParameter(format!("h = {h} outside 1..={top}")));
    }
    Ok(())
}

/// Evaluations of all degree-`h` monomials on the normalized projective points.
pub fn prm_evaluation_matrix(field: &Arc<FieldSpec>, m: u32, h: u32) -> Result<Matrix> {
    check_prm(field.order() as u64, m, h)?;
    let pts = ProjectivePointList::new(Arc::clone(field), m)?;
    let rows: Vec<Vec<Gf>> = monomials(m as usize, h as usize)
        .into_iter()
        .map(|exps| {
            pts.points()
                .iter()
                .map(|p| {
                    p.iter()
                        .zip(&exps)
                        .fold(Gf::ONE, |acc, (&x, &e)| field.mul(acc, field.pow(x, e as u64)))
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(Arc::clone(field), rows)
}

/// Projective Reed-Muller code PRM(q, m, h).
pub fn prm(field: &Arc<FieldSpec>, m: u32, h: u32) -> Result<LinearCode> {
    LinearCode::from_generator(&prm_evaluation_matrix(field, m, h)?)
}

pub fn prm_dimension(q: u64, m: u32, h: u32) -> Result<u64> {
    check_prm(q, m, h)?;
    let (qi, mi) = (q as i64, m as i64);
    let mut total = BigInt::from(0);
    let mut t = (h as i64 - 1) % (qi - 1) + 1;
    while t <= h as i64 {
        for j in 0..=mi {
            let term = binomial_signed(mi, j) * binomial_signed(t - j * qi + mi - 1, t - j * qi);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        t += qi - 1;
    }
    total
        .to_u64()
        .ok_or_else(|| Error::NonIntegral(format!("PRM dimension evaluated to {total}")))
}

pub fn prm_min_distance(q: u64, m: u32, h: u32) -> Result<u64> {
    check_prm(q, m, h)?;
    let u = (h as u64 - 1) / (q - 1);
    let v = (h as u64 - 1) % (q - 1);
    Ok((q - v) * q.pow(m - 2 - u as u32))
}
