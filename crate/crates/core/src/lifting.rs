//! Lifting a code over GF(q) to GF(q^ℓ), and counting lifted weights through
//! selector matrices `B` over the base field.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};
use rayon::prelude::*;

use crate::code::{LinearCode, Strategy, WeightDistribution};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::field::{FieldTower, Gf};
use crate::matrix::Matrix;

/// Largest table of base-codeword zero sets the selector count will build.
const MAX_ZERO_TABLE_WORDS: u64 = 1 << 24;

/// Lifted codes at or below this size get the scalar-multiple check in
/// [`check_ad_relation`].
pub const SCALAR_CHECK_LIMIT: u64 = 1 << 18;

#[derive(Clone)]
pub struct LiftedCode {
    base: LinearCode,
    tower: Arc<FieldTower>,
    code: LinearCode,
}

impl LiftedCode {
    pub fn base(&self) -> &LinearCode {
        &self.base
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn degree(&self) -> u32 {
        self.tower.degree()
    }
}

impl std::fmt::Debug for LiftedCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LiftedCode([{}, {}] over {} lifted to {})",
            self.base.length(),
            self.base.dimension(),
            self.tower.base(),
            self.tower.top()
        )
    }
}

/// The code over GF(q^ℓ) generated by the embedded generator of `code`.
pub fn lift(code: &LinearCode, degree: u32, cfg: &Config) -> Result<LiftedCode> {
    let tower = Arc::new(FieldTower::new(Arc::clone(code.field()), degree, cfg.max_field_order)?);
    let g = code
        .generator()
        .map_into(Arc::clone(tower.top()), |a| tower.embed(a));
    let lifted = LinearCode::from_generator(&g)?;
    assert_eq!(lifted.dimension(), code.dimension());
    Ok(LiftedCode {
        base: code.clone(),
        tower,
        code: lifted,
    })
}

/// An `ℓ x k` matrix over the base field indexing one lifted codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSelector {
    matrix: Matrix,
}

impl LiftSelector {
    pub fn new(lifted: &LiftedCode, matrix: Matrix) -> Result<LiftSelector> {
        let (l, k) = (lifted.degree() as usize, lifted.base.dimension());
        if matrix.rows() != l || matrix.cols() != k {
            return Err(Error::DimensionMismatch(format!(
                "selector is {}x{}, expected {l}x{k}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.field().as_ref() != lifted.base.field().as_ref() {
            return Err(Error::MixedFields);
        }
        Ok(LiftSelector { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

/// `n` minus the number of generator columns `g_j` (with multiplicity) with
/// `B g_j = 0`.
pub fn selector_weight(lifted: &LiftedCode, b: &LiftSelector) -> usize {
    let g = lifted.base.generator();
    let prod = b.matrix.mul(g).expect("shapes checked by LiftSelector::new");
    (0..g.cols()).filter(|&j| !prod.column(j).iter().all(|a| a.is_zero())).count()
}

/// The lifted codeword `sum_i beta_i * embed(b_i G)` for the tower basis
/// `beta_i` and the rows `b_i` of `B`.
pub fn codeword_from_selector(lifted: &LiftedCode, b: &LiftSelector) -> Vec<Gf> {
    let tower = &lifted.tower;
    let top = tower.top();
    let g = lifted.base.generator();
    let prod = b.matrix.mul(g).expect("shapes checked by LiftSelector::new");
    (0..g.cols())
        .map(|j| {
            tower
                .basis()
                .iter()
                .zip(prod.column(j))
                .fold(Gf::ZERO, |acc, (&beta, c)| top.add(acc, top.mul(beta, tower.embed(c))))
        })
        .collect()
}

/// Weight distribution of the lifted code from the selector count: every
/// `B` in GF(q)^{ℓ x k} contributes one codeword of weight `n - |{j : B g_j = 0}|`.
pub fn rank_spectrum_wd(lifted: &LiftedCode, cfg: &Config) -> Result<WeightDistribution> {
    let base = &lifted.base;
    let (n, k, l) = (base.length(), base.dimension(), lifted.degree() as usize);
    let q = base.field().order() as u64;
    let selectors: BigUint = Pow::pow(&BigUint::from(q), l * k);
    let too_big = || Error::BudgetExceeded {
        primal: selectors.clone(),
        dual: lifted.code.dual_size(),
        budget: cfg.enumeration_budget,
    };
    if selectors > BigUint::from(cfg.enumeration_budget) {
        return Err(too_big());
    }
    let rows = q.pow(k as u32);
    let words = n.div_ceil(64).max(1);
    if rows * words as u64 > MAX_ZERO_TABLE_WORDS {
        return Err(too_big());
    }

    // zero[r] = positions where the base codeword of message r vanishes.
    let mut zero = vec![0u64; rows as usize * words];
    let mut r = 0usize;
    base.for_each_codeword(|_, c| {
        let z = &mut zero[r * words..(r + 1) * words];
        for (j, a) in c.iter().enumerate() {
            if a.is_zero() {
                z[j / 64] |= 1 << (j % 64);
            }
        }
        r += 1;
    });

    fn walk(
        zero: &[u64],
        words: usize,
        rows: usize,
        depth: usize,
        acc: &mut [Vec<u64>],
        counts: &mut [u64],
        n: usize,
    ) {
        if depth == acc.len() {
            let z: u32 = acc[depth - 1].iter().map(|w| w.count_ones()).sum();
            counts[n - z as usize] += 1;
            return;
        }
        for r in 0..rows {
            let row = &zero[r * words..(r + 1) * words];
            let (prev, cur) = acc.split_at_mut(depth);
            for (o, (&a, &b)) in cur[0].iter_mut().zip(prev[depth - 1].iter().zip(row)) {
                *o = a & b;
            }
            walk(zero, words, rows, depth + 1, acc, counts, n);
        }
    }

    let count_from = |first: usize| {
        let mut acc = vec![vec![0u64; words]; l];
        acc[0].copy_from_slice(&zero[first * words..(first + 1) * words]);
        let mut counts = vec![0u64; n + 1];
        walk(&zero, words, rows as usize, 1, &mut acc, &mut counts, n);
        counts
    };
    let add = |mut a: Vec<u64>, b: Vec<u64>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    let counts = cfg.install(|| {
        (0..rows as usize)
            .into_par_iter()
            .map(count_from)
            .reduce(|| vec![0u64; n + 1], add)
    });
    Ok(WeightDistribution::from_u64(&counts))
}

/// Outcome of comparing minimum-weight counts of a code and its lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdReport {
    pub d: usize,
    pub base_count: BigUint,
    pub lifted_count: BigUint,
    /// `(q^ℓ - 1)/(q - 1)`.
    pub factor: BigUint,
    pub equal: bool,
    /// Whether every minimum-weight lifted codeword is a scalar multiple of
    /// an embedded base codeword; `None` when the lifted code is too large
    /// to check.
    pub scalar_multiples: Option<bool>,
}

pub fn check_ad_relation(code: &LinearCode, degree: u32, cfg: &Config) -> Result<AdReport> {
    let lifted = lift(code, degree, cfg)?;
    let base_wd = code.weight_distribution(Strategy::Auto, cfg)?;
    let lifted_wd = lifted.code.weight_distribution(Strategy::Auto, cfg)?;
    let d = base_wd.min_distance().expect("nonzero code");
    let q = code.field().order() as u64;
    let big_q = lifted.tower.top().order() as u64;
    let factor = BigUint::from((big_q - 1) / (q - 1));
    let base_count = base_wd.get(d);
    let lifted_count = lifted_wd.get(d);
    let equal = lifted_wd.min_distance() == Some(d) && lifted_count == &base_count * &factor;
    let scalar_multiples = match lifted.code.size().to_u64() {
        Some(s) if s <= SCALAR_CHECK_LIMIT => Some(min_words_are_scalar_multiples(&lifted, d)),
        _ => None,
    };
    Ok(AdReport {
        d,
        base_count,
        lifted_count,
        factor,
        equal,
        scalar_multiples,
    })
}

fn min_words_are_scalar_multiples(lifted: &LiftedCode, d: usize) -> bool {
    let tower = &lifted.tower;
    let top = tower.top();
    let mut ok = true;
    lifted.code.for_each_codeword(|_, c| {
        if !ok || c.iter().filter(|a| !a.is_zero()).count() != d {
            return;
        }
        let u = *c.iter().find(|a| !a.is_zero()).unwrap();
        let ui = top.inv(u).unwrap();
        let pulled: Option<Vec<Gf>> = c.iter().map(|&a| tower.pullback(top.mul(a, ui))).collect();
        ok = pulled.is_some_and(|v| lifted.base.contains(&v));
    });
    ok
}

/// Whether the dual of the lift equals the lift of the dual.
pub fn dual_lift_commutes(code: &LinearCode, degree: u32, cfg: &Config) -> Result<bool> {
    let lifted_dual = lift(&code.dual()?, degree, cfg)?;
    lift(code, degree, cfg)?.code.dual()?.same_code(&lifted_dual.code)
}
