//! Closed-form weight distributions for Hamming codes and for lifted
//! Simplex, Hamming and first/second-to-last order Reed-Muller codes.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed};

use crate::code::weights::krawtchouk_column;
use crate::code::{macwilliams, WeightDistribution};
use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::families::projective_length;

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn to_natural(x: BigRational, what: &str) -> Result<BigUint> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::NonIntegral(format!("{what} evaluated to {x}")));
    }
    Ok(x.to_integer().to_biguint().expect("nonnegative"))
}

/// Number of `ℓ x m` matrices of rank `r` over GF(q).
pub fn rank_count(q: u64, l: u32, m: u32, r: u32) -> Result<BigUint> {
    if r > l.min(m) {
        return Err(Error::InvalidParameter(format!("rank {r} exceeds min({l}, {m})")));
    }
    let qb = big(q);
    let ql: BigInt = Pow::pow(&qb, l);
    let qm: BigInt = Pow::pow(&qb, m);
    let mut acc = BigRational::one();
    for j in 1..=r {
        let qj1: BigInt = Pow::pow(&qb, j - 1);
        let qj: BigInt = Pow::pow(&qb, j);
        let num = (&ql - &qj1) * (&qm - &qj1);
        let den = qj1 * (qj - 1);
        acc *= BigRational::new(num, den);
    }
    to_natural(acc, "rank count")
}

/// `counts[r]` for `r = 0..=min(ℓ, m)`.
pub fn rank_count_table(q: u64, l: u32, m: u32) -> Result<Vec<BigUint>> {
    (0..=l.min(m)).map(|r| rank_count(q, l, m, r)).collect()
}

fn check_qm(q: u64, m: u32) -> Result<usize> {
    if q < 2 || m < 2 {
        return Err(Error::InvalidParameter(format!("q = {q}, m = {m}")));
    }
    projective_length(q, m)
}

/// Weight distribution of the Hamming code of redundancy `m` over GF(q).
pub fn hamming_wd_formula(q: u64, m: u32) -> Result<WeightDistribution> {
    let n = check_qm(q, m)?;
    let b = q.pow(m - 1) as usize;
    let qm = big(q.pow(m));
    let qm1 = big(q - 1);
    let kraw = krawtchouk_column(n, q, b);
    let mut power = BigInt::one();
    let mut choose = BigInt::one();
    let mut counts = Vec::with_capacity(n + 1);
    for (k, kk) in kraw.iter().enumerate() {
        let s = &power * &choose + (&qm - 1) * kk;
        counts.push(to_natural(BigRational::new(s, qm.clone()), "Hamming weight count")?);
        power *= &qm1;
        choose = choose * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    Ok(WeightDistribution::new(counts))
}

fn check_lift(m: u32, l: u32, min_m: u32) -> Result<()> {
    if m < min_m || l < 1 || l > m {
        return Err(Error::InvalidParameter(format!(
            "need m >= {min_m} and 1 <= ℓ <= m, got m = {m}, ℓ = {l}"
        )));
    }
    Ok(())
}

/// Lifted Simplex code over GF(q^ℓ): weight `q^{m-r}(q^r-1)/(q-1)` occurs
/// once per rank-`r` matrix in GF(q)^{ℓ x m}.
pub fn lifted_simplex_wd_formula(q: u64, m: u32, l: u32) -> Result<WeightDistribution> {
    let n = check_qm(q, m)?;
    check_lift(m, l, 2)?;
    let pairs = (0..=l)
        .map(|r| {
            let w = q.pow(m - r) * (q.pow(r) - 1) / (q - 1);
            Ok((w as usize, rank_count(q, l, m, r)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightDistribution::from_pairs(n, pairs))
}

/// MacWilliams transform of [`lifted_simplex_wd_formula`].
pub fn lifted_hamming_wd_formula(q: u64, m: u32, l: u32) -> Result<WeightDistribution> {
    let simplex = lifted_simplex_wd_formula(q, m, l)?;
    macwilliams(&simplex, q.pow(l), m as usize)
}

/// Lifted first-order binary Reed-Muller code RM(1, m) over GF(2^ℓ).
pub fn lifted_rm1_wd_formula(m: u32, l: u32) -> Result<WeightDistribution> {
    check_lift(m, l, 3)?;
    if m > 16 {
        return Err(Error::InvalidParameter(format!("m = {m} too large")));
    }
    let n = 1usize << m;
    let mut pairs = vec![(0usize, BigUint::one())];
    let mut rest: BigUint = Pow::pow(&BigUint::from(2u32), l as usize * (m as usize + 1)) - 1u32;
    for h in 1..=l {
        let a = BigUint::from(2u32).pow(h) * rank_count(2, l, m, h)?;
        rest -= &a;
        pairs.push((n - (n >> h), a));
    }
    pairs.push((n, rest));
    Ok(WeightDistribution::from_pairs(n, pairs))
}

/// MacWilliams transform of [`lifted_rm1_wd_formula`]: the lift of RM(m-2, m).
pub fn lifted_rm_m2_wd_formula(m: u32, l: u32) -> Result<WeightDistribution> {
    let rm1 = lifted_rm1_wd_formula(m, l)?;
    macwilliams(&rm1, 1u64 << l, m as usize + 1)
}

/// Lifted families with explicit two- or three-weight enumerators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FewWeightFamily {
    /// Simplex code lifted to GF(q^2).
    SimplexL2,
    /// Simplex code lifted to GF(q^3).
    SimplexL3,
    /// Binary RM(1, m) lifted to GF(4).
    Rm1L2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FewWeightReport {
    pub family: FewWeightFamily,
    pub q: u64,
    pub m: u32,
    /// Enumerator from the explicit expression.
    pub enumerator: WeightDistribution,
    /// Whether it equals the general formula specialized to this family.
    pub matches_general: bool,
    /// Number of distinct nonzero weights.
    pub weights: usize,
}

pub fn few_weight_report(family: FewWeightFamily, q: u64, m: u32) -> Result<FewWeightReport> {
    let (explicit, general) = match family {
        FewWeightFamily::SimplexL2 => {
            let n = check_qm(q, m)?;
            let qm = BigUint::from(q.pow(m));
            let (w1, w2) = (q.pow(m - 1), q.pow(m - 1) + q.pow(m - 2));
            let explicit = WeightDistribution::from_pairs(
                n,
                [
                    (0, BigUint::one()),
                    (w1 as usize, BigUint::from(q + 1) * (&qm - 1u32)),
                    (w2 as usize, (&qm - q) * (&qm - 1u32)),
                ],
            );
            (explicit, lifted_simplex_wd_formula(q, m, 2)?)
        }
        FewWeightFamily::SimplexL3 => {
            check_lift(m, 3, 3)?;
            let n = check_qm(q, m)?;
            let qm = BigUint::from(q.pow(m));
            let c = BigUint::from(q * q + q + 1);
            let w1 = q.pow(m - 1);
            let w2 = w1 + q.pow(m - 2);
            let w3 = w2 + q.pow(m - 3);
            let explicit = WeightDistribution::from_pairs(
                n,
                [
                    (0, BigUint::one()),
                    (w1 as usize, &c * (&qm - 1u32)),
                    (w2 as usize, &c * (&qm - 1u32) * (&qm - q)),
                    (w3 as usize, (&qm - 1u32) * (&qm - q) * (&qm - q * q)),
                ],
            );
            (explicit, lifted_simplex_wd_formula(q, m, 3)?)
        }
        FewWeightFamily::Rm1L2 => {
            if q != 2 {
                return Err(Error::InvalidParameter(format!("RM(1, m) is binary, got q = {q}")));
            }
            check_lift(m, 2, 3)?;
            let n = 1usize << m;
            let tm = BigUint::from(n);
            let explicit = WeightDistribution::from_pairs(
                n,
                [
                    (0, BigUint::one()),
                    (n / 2, BigUint::from(3u32) * (BigUint::from(2 * n) - 2u32)),
                    (3 * n / 4, BigUint::from(4u32) * (&tm - 1u32) * (&tm - 2u32)),
                    (n, BigUint::from(3u32) * (BigUint::from(2 * n) - 1u32)),
                ],
            );
            (explicit, lifted_rm1_wd_formula(m, 2)?)
        }
    };
    let weights = explicit.nonzero_weights().len();
    Ok(FewWeightReport {
        family,
        q,
        m,
        matches_general: explicit == general,
        enumerator: explicit,
        weights,
    })
}

/// λ predicted for the 3-design on the weight `3 * 2^{m-2}` codewords of RM(1, m)
/// lifted to GF(4): `2 C(3*2^{m-2}, 3) (2^m-1)(2^m-2) / (3 C(2^m, 3))`.
pub fn rm1_conjectured_lambda(m: u32) -> Result<BigUint> {
    if !(3..=20).contains(&m) {
        return Err(Error::InvalidParameter(format!("m = {m}")));
    }
    let n = 1u64 << m;
    let k = 3 * (n / 4);
    let num = BigInt::from(2u32) * BigInt::from(binomial(k as usize, 3)) * big(n - 1) * big(n - 2);
    let den = BigInt::from(3u32) * BigInt::from(binomial(n as usize, 3));
    to_natural(BigRational::new(num, den), "conjectured λ")
}
