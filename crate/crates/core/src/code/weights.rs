use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// Exact counts `A_0, ..., A_n` of codewords by Hamming weight.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightDistribution {
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn new(counts: Vec<BigUint>) -> WeightDistribution {
        assert!(!counts.is_empty(), "a distribution covers weights 0..=n");
        WeightDistribution { counts }
    }

    pub fn from_u64(counts: &[u64]) -> WeightDistribution {
        Self::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// The distribution of the zero code `{0}` of length `n`.
    pub fn zero_code(n: usize) -> WeightDistribution {
        let mut counts = vec![BigUint::zero(); n + 1];
        counts[0] = BigUint::one();
        WeightDistribution { counts }
    }

    /// Builds a distribution from sparse `(weight, count)` pairs.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, BigUint)>) -> WeightDistribution {
        let mut counts = vec![BigUint::zero(); n + 1];
        for (w, c) in pairs {
            counts[w] += c;
        }
        WeightDistribution { counts }
    }

    pub fn length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, w: usize) -> BigUint {
        self.counts.get(w).cloned().unwrap_or_default()
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// `(weight, count)` for every nonzero count, ascending by weight.
    pub fn nonzero(&self) -> Vec<(usize, BigUint)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w, c.clone()))
            .collect()
    }

    /// Smallest positive weight present.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| !c.is_zero())
            .map(|(w, _)| w)
    }

    /// Nonzero weights other than 0.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        self.nonzero().into_iter().map(|(w, _)| w).filter(|&w| w > 0).collect()
    }
}

impl fmt::Debug for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeightDistribution {
    /// Renders the enumerator polynomial, e.g. `1 + 45z^8 + 210z^12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, c) in self.nonzero() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match w {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}z")?,
                _ => write!(f, "{c}z^{w}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `K_0(i), ..., K_n(i)`: the coefficients of `(1 + (Q-1)z)^{n-i} (1-z)^i`.
pub(crate) fn krawtchouk_column(n: usize, field_order: u64, i: usize) -> Vec<BigInt> {
    // (j+1) K_{j+1} = (j + (Q-1)(n-j) - Q i) K_j - (Q-1)(n-j+1) K_{j-1}
    let qq = BigInt::from(field_order);
    let qm1 = BigInt::from(field_order - 1);
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    let mut prev = BigInt::zero();
    for j in 0..n {
        let cur = &out[j];
        let lin = BigInt::from(j) + &qm1 * BigInt::from(n - j) - &qq * BigInt::from(i);
        let num = lin * cur - &qm1 * BigInt::from(n - j + 1) * &prev;
        prev = cur.clone();
        out.push(num / BigInt::from(j + 1));
    }
    out
}

/// Dual distribution of a code of dimension `dim` over a field of order
/// `field_order`: `Q^{-k} (1 + (Q-1)z)^n W((1-z)/(1+(Q-1)z))`.
pub fn macwilliams(w: &WeightDistribution, field_order: u64, dim: usize) -> Result<WeightDistribution> {
    if field_order < 2 {
        return Err(Error::InvalidParameter(format!("field order {field_order}")));
    }
    let n = w.length();
    if dim > n {
        return Err(Error::InconsistentDistribution(format!("dimension {dim} exceeds length {n}")));
    }
    let q = BigUint::from(field_order);
    let size = Pow::pow(&q, dim);
    if w.total() != size {
        return Err(Error::InconsistentDistribution(format!(
            "counts sum to {} but {field_order}^{dim} = {size}",
            w.total()
        )));
    }
    let mut acc = vec![BigInt::zero(); n + 1];
    for (i, a) in w.counts().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let a = BigInt::from_biguint(Sign::Plus, a.clone());
        for (slot, k) in acc.iter_mut().zip(krawtchouk_column(n, field_order, i)) {
            *slot += &a * k;
        }
    }

    let divisor = BigInt::from_biguint(Sign::Plus, size);
    let mut out = Vec::with_capacity(n + 1);
    for (j, v) in acc.into_iter().enumerate() {
        let (quot, rem) = v.div_rem(&divisor);
        if !rem.is_zero() || quot.sign() == Sign::Minus {
            return Err(Error::InconsistentDistribution(format!(
                "transformed coefficient of z^{j} is not a nonnegative integer"
            )));
        }
        out.push(quot.to_biguint().expect("checked nonnegative"));
    }
    Ok(WeightDistribution::new(out))
}
