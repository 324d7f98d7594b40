//! Linear codes, exact weight distributions and duality.

pub(crate) mod enumerate;
pub(crate) mod weights;

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Pow;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Gf};
use crate::matrix::Matrix;

pub use weights::{macwilliams, WeightDistribution};

/// How [`LinearCode::weight_distribution`] reaches its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Enumerate whichever of the code and its dual is smaller.
    #[default]
    Auto,
    /// Enumerate the code itself.
    Direct,
    /// Enumerate the dual code and apply the MacWilliams transform.
    ViaDual,
}

/// A `[n, k]` linear code, stored by the reduced row echelon form of a
/// full-rank generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    generator: Matrix,
}

impl LinearCode {
    /// The row space of `g`. Dependent and zero rows are dropped.
    pub fn from_generator(g: &Matrix) -> Result<LinearCode> {
        if g.rows() == 0 || g.is_zero() {
            return Err(Error::ZeroMatrix);
        }
        Ok(LinearCode {
            generator: g.row_basis(),
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.generator.field()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// Number of codewords, `Q^k`.
    pub fn size(&self) -> BigUint {
        Pow::pow(&self.field().order_big(), self.dimension())
    }

    /// Number of codewords of the dual, `Q^{n-k}`.
    pub fn dual_size(&self) -> BigUint {
        Pow::pow(&self.field().order_big(), self.length() - self.dimension())
    }

    /// Reduced row echelon generator of the dual code; empty when `k = n`.
    pub fn parity_check(&self) -> Matrix {
        let g = &self.generator;
        let f = g.field();
        let (k, n) = (g.rows(), g.cols());
        if n - k <= k {
            return self.kernel_rows().row_basis();
        }
        // Greedy information set from the right. Every other column is a
        // combination of chosen columns to its right, so the rows built
        // below come out already reduced.
        let mut echelon: Vec<(usize, Vec<Gf>)> = Vec::with_capacity(k);
        let mut info = Vec::with_capacity(k);
        for c in (0..n).rev() {
            if info.len() == k {
                break;
            }
            let mut v: Vec<Gf> = (0..k).map(|r| g.get(r, c)).collect();
            for (p, b) in &echelon {
                let x = v[*p];
                if x != Gf::ZERO {
                    for (vi, &bi) in v.iter_mut().zip(b) {
                        *vi = f.sub(*vi, f.mul(x, bi));
                    }
                }
            }
            if let Some(p) = v.iter().position(|&x| x != Gf::ZERO) {
                let inv = f.inv(v[p]).expect("nonzero");
                v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                echelon.push((p, v));
                info.push(c);
            }
        }
        info.reverse();
        let mut square = Matrix::zeros(Arc::clone(f), k, k);
        for r in 0..k {
            for (i, &c) in info.iter().enumerate() {
                square.set(r, i, g.get(r, c));
            }
        }
        let coords = square
            .inverse()
            .expect("information set columns are independent")
            .mul(g)
            .expect("shapes agree");
        let mut h = Matrix::zeros(Arc::clone(f), n - k, n);
        let mut in_info = vec![false; n];
        info.iter().for_each(|&c| in_info[c] = true);
        for (row, j) in (0..n).filter(|&j| !in_info[j]).enumerate() {
            h.set(row, j, Gf::ONE);
            for (i, &t) in info.iter().enumerate() {
                h.set(row, t, f.neg(coords.get(i, j)));
            }
        }
        h
    }

    /// `e_j - sum_i G[i][j] e_{p_i}` for each non-pivot column `j`.
    fn kernel_rows(&self) -> Matrix {
        let g = &self.generator;
        let f = g.field();
        let (k, n) = (g.rows(), g.cols());
        let pivots: Vec<usize> = (0..k)
            .map(|r| g.row(r).iter().position(|&x| x != Gf::ZERO).expect("full rank"))
            .collect();
        let mut is_pivot = vec![false; n];
        pivots.iter().for_each(|&c| is_pivot[c] = true);
        let mut h = Matrix::zeros(Arc::clone(f), n - k, n);
        for (row, j) in (0..n).filter(|&j| !is_pivot[j]).enumerate() {
            h.set(row, j, Gf::ONE);
            for (i, &p) in pivots.iter().enumerate() {
                h.set(row, p, f.neg(g.get(i, j)));
            }
        }
        h
    }

    pub fn dual(&self) -> Result<LinearCode> {
        if self.dimension() == self.length() {
            return Err(Error::DegenerateDual);
        }
        let h = self.parity_check();
        debug_assert!(self.generator.mul(&h.transpose())?.is_zero());
        Ok(LinearCode { generator: h })
    }

    /// Codeword for message `msg` (length k).
    pub fn encode(&self, msg: &[Gf]) -> Result<Vec<Gf>> {
        if msg.len() != self.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "message of length {} for dimension {}",
                msg.len(),
                self.dimension()
            )));
        }
        Ok(self.generator.transpose().mul_vec(msg))
    }

    pub fn contains(&self, word: &[Gf]) -> bool {
        if word.len() != self.length() || word.iter().any(|&a| !self.field().contains(a)) {
            return false;
        }
        self.kernel_rows().mul_vec(word).iter().all(|a| a.is_zero())
    }

    /// Same code (same row space over the same field).
    pub fn same_code(&self, other: &LinearCode) -> Result<bool> {
        self.generator.row_space_equal(&other.generator)
    }

    fn budget_error(&self, cfg: &Config) -> Error {
        Error::BudgetExceeded {
            primal: self.size(),
            dual: self.dual_size(),
            budget: cfg.enumeration_budget,
        }
    }

    fn within(&self, size: &BigUint, cfg: &Config) -> bool {
        *size <= BigUint::from(cfg.enumeration_budget)
    }

    pub fn weight_distribution(&self, strategy: Strategy, cfg: &Config) -> Result<WeightDistribution> {
        let primal = self.size();
        let dual = self.dual_size();
        let use_dual = match strategy {
            Strategy::Direct => false,
            Strategy::ViaDual => true,
            Strategy::Auto => dual < primal,
        };
        if use_dual {
            if !self.within(&dual, cfg) {
                return Err(self.budget_error(cfg));
            }
            let n = self.length();
            let dual_wd = if self.dimension() == n {
                WeightDistribution::zero_code(n)
            } else {
                let h = self.dual()?;
                WeightDistribution::from_u64(&enumerate::count_weights(h.generator(), cfg))
            };
            macwilliams(&dual_wd, self.field().order() as u64, n - self.dimension())
        } else {
            if !self.within(&primal, cfg) {
                return Err(self.budget_error(cfg));
            }
            Ok(WeightDistribution::from_u64(&enumerate::count_weights(
                &self.generator,
                cfg,
            )))
        }
    }

    pub fn min_distance(&self, cfg: &Config) -> Result<usize> {
        let wd = self.weight_distribution(Strategy::Auto, cfg)?;
        Ok(wd.min_distance().expect("a nonzero code has a nonzero codeword"))
    }

    /// Visits every codeword in lexicographic message order, handing over the
    /// message and the codeword. Sequential; intended for small codes.
    pub fn for_each_codeword(&self, f: impl FnMut(&[Gf], &[Gf])) {
        enumerate::for_each_codeword(&self.generator, f)
    }
}
