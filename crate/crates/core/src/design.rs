//! Support designs of fixed-weight codewords, exhaustive t-design
//! verification and the Assmus-Mattson sufficient condition.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU32, Ordering};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::closed_forms::rm1_conjectured_lambda;
use crate::code::enumerate::{collect_supports, MAX_SUPPORT_LENGTH};
use crate::code::{LinearCode, Strategy, WeightDistribution};
use crate::combin::binomial;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::families::{hamming, rm2, simplex};
use crate::field::FieldSpec;
use crate::lifting::lift;

/// Distinct supports of the weight-`k` codewords, each a sorted point list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportDesign {
    v: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl SupportDesign {
    /// Sorts and deduplicates; every block must be a `k`-subset of `0..v`.
    pub fn new(v: usize, k: usize, blocks: impl IntoIterator<Item = Vec<usize>>) -> Result<SupportDesign> {
        let mut out = Vec::new();
        for mut b in blocks {
            b.sort_unstable();
            b.dedup();
            if b.len() != k || b.last().is_some_and(|&x| x >= v) {
                return Err(Error::InvalidParameter(format!("block {b:?} is not a {k}-subset of 0..{v}")));
            }
            out.push(b);
        }
        out.sort_unstable();
        out.dedup();
        Ok(SupportDesign { v, k, blocks: out })
    }

    fn from_masks(v: usize, k: usize, masks: impl IntoIterator<Item = u128>) -> SupportDesign {
        let mut blocks: Vec<Vec<usize>> = masks
            .into_iter()
            .map(|m| (0..v).filter(|&j| m >> j & 1 == 1).collect())
            .collect();
        blocks.sort_unstable();
        SupportDesign { v, k, blocks }
    }

    /// Every `k`-subset of `0..v`.
    pub fn complete(v: usize, k: usize) -> SupportDesign {
        let mut blocks = Vec::new();
        if k <= v {
            for_each_subset(v, k, |s| {
                blocks.push(s.to_vec());
                true
            });
        }
        SupportDesign { v, k, blocks }
    }

    pub fn points(&self) -> usize {
        self.v
    }

    pub fn block_size(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Calls `f` on the `k`-subsets of `0..v` in lexicographic order until it
/// returns `false`.
fn for_each_subset(v: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        if !f(&c) {
            return;
        }
        let mut i = k;
        while i > 0 && c[i - 1] == v - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Supports of weight-`w` codewords, with the number of such codewords.
pub fn supports(code: &LinearCode, w: usize, cfg: &Config) -> Result<(SupportDesign, BigUint)> {
    let mut map = supports_by_weight(code, &[w], cfg)?;
    let (d, count) = map.remove(&w).expect("requested weight");
    if d.is_empty() {
        return Err(Error::EmptyDesign(w));
    }
    Ok((d, count))
}

/// Support designs for several weights from one pass over the code. Weights
/// with no codewords map to an empty design.
pub fn supports_by_weight(
    code: &LinearCode,
    weights: &[usize],
    cfg: &Config,
) -> Result<BTreeMap<usize, (SupportDesign, BigUint)>> {
    let n = code.length();
    if n > MAX_SUPPORT_LENGTH {
        return Err(Error::LengthTooLarge { n, max: MAX_SUPPORT_LENGTH });
    }
    if code.size() > BigUint::from(cfg.enumeration_budget) {
        return Err(Error::BudgetExceeded {
            primal: code.size(),
            dual: code.dual_size(),
            budget: cfg.enumeration_budget,
        });
    }
    let mut wanted = vec![false; n + 1];
    for &w in weights {
        if w > n {
            return Err(Error::InvalidParameter(format!("weight {w} exceeds length {n}")));
        }
        wanted[w] = true;
    }
    let (sets, counts) = collect_supports(code.generator(), &wanted, cfg);
    Ok(weights
        .iter()
        .map(|&w| {
            let d = SupportDesign::from_masks(n, w, sets[w].iter().copied());
            (w, (d, BigUint::from(counts[w])))
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DesignStatus {
    Verified,
    NotADesign,
    CompleteDesign,
}

impl DesignStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            DesignStatus::Verified => "verified",
            DesignStatus::NotADesign => "not_a_design",
            DesignStatus::CompleteDesign => "complete_design",
        }
    }

    pub fn is_design(self) -> bool {
        self != DesignStatus::NotADesign
    }
}

/// Two t-subsets covered by different numbers of blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub first: Vec<usize>,
    pub first_count: u64,
    pub second: Vec<usize>,
    pub second_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignCertificate {
    pub t: usize,
    pub v: usize,
    pub k: usize,
    /// `None` when the blocks do not form a t-design.
    pub lambda: Option<u64>,
    pub b: usize,
    pub status: DesignStatus,
    pub witness: Option<Witness>,
}

impl std::fmt::Display for DesignCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.lambda {
            Some(l) => write!(f, "{}-({}, {}, {}) design, b = {}", self.t, self.v, self.k, l, self.b)?,
            None => write!(f, "not a {}-design (v = {}, k = {}, b = {})", self.t, self.v, self.k, self.b)?,
        }
        if self.status == DesignStatus::CompleteDesign {
            write!(f, ", complete")?;
        }
        Ok(())
    }
}

/// Colex rank of a sorted subset, via a table `binom[x][i] = C(x, i)`.
fn colex_rank(s: &[usize], binom: &[Vec<u64>]) -> usize {
    s.iter().enumerate().map(|(i, &x)| binom[x][i + 1]).sum::<u64>() as usize
}

fn binom_table(v: usize, t: usize) -> Vec<Vec<u64>> {
    let mut b = vec![vec![0u64; t + 1]; v + 1];
    for x in 0..=v {
        b[x][0] = 1;
        for i in 1..=t.min(x) {
            b[x][i] = b[x - 1][i - 1] + if i < x { b[x - 1][i] } else { 0 };
        }
    }
    b
}

/// Counts, for every t-subset of points, the blocks containing it.
pub fn verify_design(d: &SupportDesign, t: usize, cfg: &Config) -> Result<DesignCertificate> {
    let (v, k, b) = (d.v, d.k, d.blocks.len());
    if t == 0 || t > k || k > v {
        return Err(Error::InvalidParameter(format!("need 1 <= t <= k <= v, got t = {t}, k = {k}, v = {v}")));
    }
    let subsets = binomial(v, t);
    if subsets > BigUint::from(cfg.subset_budget) {
        return Err(Error::SubsetBudgetExceeded { needed: subsets, budget: cfg.subset_budget });
    }
    let size = subsets.to_usize().expect("within budget");
    let binom = binom_table(v, t);
    let counts: Vec<AtomicU32> = (0..size).map(|_| AtomicU32::new(0)).collect();
    cfg.install(|| {
        d.blocks.par_iter().for_each(|block| {
            let mut sub = vec![0usize; t];
            for_each_subset(k, t, |pos| {
                for (s, &p) in sub.iter_mut().zip(pos) {
                    *s = block[p];
                }
                counts[colex_rank(&sub, &binom)].fetch_add(1, Ordering::Relaxed);
                true
            });
        })
    });

    let mut first: Option<(Vec<usize>, u64)> = None;
    let mut witness = None;
    for_each_subset(v, t, |s| {
        let c = counts[colex_rank(s, &binom)].load(Ordering::Relaxed) as u64;
        match &first {
            None => {
                first = Some((s.to_vec(), c));
                true
            }
            Some((f, fc)) if *fc != c => {
                witness = Some(Witness {
                    first: f.clone(),
                    first_count: *fc,
                    second: s.to_vec(),
                    second_count: c,
                });
                false
            }
            Some(_) => true,
        }
    });
    if witness.is_some() {
        return Ok(DesignCertificate { t, v, k, lambda: None, b, status: DesignStatus::NotADesign, witness });
    }
    let lambda = first.expect("t <= v").1;
    assert_eq!(
        BigUint::from(lambda) * binomial(v, t),
        BigUint::from(b) * binomial(k, t),
        "double counting"
    );
    let status = if BigUint::from(b) == binomial(v, k) {
        DesignStatus::CompleteDesign
    } else {
        DesignStatus::Verified
    };
    Ok(DesignCertificate { t, v, k, lambda: Some(lambda), b, status, witness: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxStrength {
    /// Largest verified strength; 0 when not even a 1-design.
    pub t: usize,
    pub lambda: u64,
    /// The search stopped at the subset budget rather than at a failure or at `k`.
    pub capped: bool,
}

/// Tries t = 1, 2, ... until verification fails or t = k. A complete design
/// is reported as a k-design with λ = 1 without counting.
pub fn max_strength(d: &SupportDesign, cfg: &Config) -> Result<MaxStrength> {
    let mut best = MaxStrength { t: 0, lambda: d.len() as u64, capped: false };
    if d.is_empty() {
        return Ok(best);
    }
    if BigUint::from(d.len()) == binomial(d.v, d.k) {
        return Ok(MaxStrength { t: d.k, lambda: 1, capped: false });
    }
    for t in 1..=d.k {
        match verify_design(d, t, cfg) {
            Ok(c) => match c.lambda {
                Some(l) => best = MaxStrength { t, lambda: l, capped: false },
                None => break,
            },
            Err(Error::SubsetBudgetExceeded { .. }) if t > 1 => {
                best.capped = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}

/// Inputs and conclusions of the Assmus-Mattson condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmReport {
    pub t: usize,
    pub v: usize,
    pub q: u64,
    pub d: usize,
    /// `None` when the dual is the zero code.
    pub d_dual: Option<usize>,
    pub w: usize,
    pub w_dual: Option<usize>,
    /// Number of nonzero dual weights in `1..=v-t`.
    pub s: usize,
    pub applicable: bool,
    /// Weights whose supports are guaranteed t-designs; empty unless applicable.
    pub guaranteed_primal: Vec<usize>,
    pub guaranteed_dual: Vec<usize>,
    pub distribution: WeightDistribution,
    pub dual_distribution: WeightDistribution,
}

/// Largest `w <= v` with `w - floor((w + q - 2)/(q - 1)) < d`.
pub fn am_threshold(v: usize, q: u64, d: usize) -> usize {
    let q = q as usize;
    (0..=v)
        .rev()
        .find(|&w| w - (w + q - 2) / (q - 1) < d)
        .unwrap_or(0)
}

pub fn assmus_mattson(code: &LinearCode, t: usize, cfg: &Config) -> Result<AmReport> {
    let v = code.length();
    let q = code.field().order() as u64;
    let wd = code.weight_distribution(Strategy::Auto, cfg)?;
    let dual_wd = if code.dimension() == v {
        WeightDistribution::zero_code(v)
    } else {
        code.dual()?.weight_distribution(Strategy::Auto, cfg)?
    };
    let d = wd.min_distance().expect("nonzero code");
    let d_dual = dual_wd.min_distance();
    let w = am_threshold(v, q, d);
    let w_dual = d_dual.map(|dd| am_threshold(v, q, dd));
    let s = (1..=v.saturating_sub(t)).filter(|&i| !dual_wd.get(i).is_zero()).count();
    let applicable = t >= 1 && t < d && s <= d - t;
    let (mut gp, mut gd) = (Vec::new(), Vec::new());
    if applicable {
        gp = (d..=w).filter(|&i| !wd.get(i).is_zero()).collect();
        if let (Some(dd), Some(wdl)) = (d_dual, w_dual) {
            gd = (dd..=wdl.min(v - t)).filter(|&i| !dual_wd.get(i).is_zero()).collect();
        }
    }
    Ok(AmReport {
        t,
        v,
        q,
        d,
        d_dual,
        w,
        w_dual,
        s,
        applicable,
        guaranteed_primal: gp,
        guaranteed_dual: gd,
        distribution: wd,
        dual_distribution: dual_wd,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub m: u32,
    pub certificate: DesignCertificate,
    pub lambda_conjectured: BigUint,
    pub agree: bool,
}

/// Checks that the weight `3 * 2^{m-2}` supports of RM(1, m) lifted to GF(4)
/// form a 3-design with the predicted λ.
pub fn conjecture_rm1(m: u32, cfg: &Config) -> Result<ConjectureReport> {
    if !(3..=7).contains(&m) {
        return Err(Error::InvalidParameter(format!("m = {m} outside 3..=7")));
    }
    let lifted = lift(&rm2(1, m)?, 2, cfg)?;
    let k = 3 << (m - 2);
    let (d, _) = supports(lifted.code(), k, cfg)?;
    let certificate = verify_design(&d, 3, cfg)?;
    let lambda_conjectured = rm1_conjectured_lambda(m)?;
    let agree = certificate.lambda.map(BigUint::from) == Some(lambda_conjectured.clone());
    Ok(ConjectureReport { m, certificate, lambda_conjectured, agree })
}

/// Lifted families whose design λ values are computed here rather than
/// known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftedFamily {
    Simplex { q: u64, m: u32, l: u32 },
    Hamming { q: u64, m: u32, l: u32 },
    Rm1 { m: u32, l: u32 },
}

impl LiftedFamily {
    pub fn build(self, cfg: &Config) -> Result<LinearCode> {
        let (base, l) = match self {
            LiftedFamily::Simplex { q, m, l } => (simplex(&FieldSpec::from_order(q, cfg.max_field_order)?, m)?, l),
            LiftedFamily::Hamming { q, m, l } => (hamming(&FieldSpec::from_order(q, cfg.max_field_order)?, m)?, l),
            LiftedFamily::Rm1 { m, l } => (rm2(1, m)?, l),
        };
        Ok(lift(&base, l, cfg)?.code().clone())
    }
}

/// Certificate for the weight-`weight` support design of a lifted family member.
pub fn open_lambda(family: LiftedFamily, weight: usize, t: usize, cfg: &Config) -> Result<DesignCertificate> {
    let code = family.build(cfg)?;
    let (d, _) = supports(&code, weight, cfg)?;
    verify_design(&d, t, cfg)
}

/// Certificates for every nonzero weight of a lifted family member.
pub fn open_lambda_table(family: LiftedFamily, t: usize, cfg: &Config) -> Result<Vec<DesignCertificate>> {
    let code = family.build(cfg)?;
    let wd = code.weight_distribution(Strategy::Auto, cfg)?;
    let weights: Vec<usize> = wd.nonzero_weights().into_iter().filter(|&w| w >= t.max(1)).collect();
    let designs = supports_by_weight(&code, &weights, cfg)?;
    designs.values().map(|(d, _)| verify_design(d, t, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn gf(q: u64) -> Arc<FieldSpec> {
        FieldSpec::from_order(q, 1 << 20).unwrap()
    }

    fn cfg() -> Config {
        Config::default()
    }

    /// Brute force: count containing blocks for each t-subset directly.
    fn brute_lambda(d: &SupportDesign, t: usize) -> Option<u64> {
        let mut seen = None;
        let mut ok = true;
        for_each_subset(d.points(), t, |s| {
            let c = d.blocks().iter().filter(|b| s.iter().all(|x| b.contains(x))).count() as u64;
            match seen {
                None => seen = Some(c),
                Some(l) if l != c => ok = false,
                _ => {}
            }
            ok
        });
        if ok {
            seen
        } else {
            None
        }
    }

    #[test]
    fn subsets_in_order() {
        let mut all = Vec::new();
        for_each_subset(5, 3, |s| {
            all.push(s.to_vec());
            true
        });
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let binom = binom_table(5, 3);
        let mut ranks: Vec<usize> = all.iter().map(|s| colex_rank(s, &binom)).collect();
        ranks.sort();
        assert_eq!(ranks, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn fano_plane() {
        let h = hamming(&gf(2), 3).unwrap();
        let (d, count) = supports(&h, 3, &cfg()).unwrap();
        assert_eq!((d.len(), count), (7, 7u32.into()));
        let c = verify_design(&d, 2, &cfg()).unwrap();
        assert_eq!((c.lambda, c.b, c.status), (Some(1), 7, DesignStatus::Verified));
        let c3 = verify_design(&d, 3, &cfg()).unwrap();
        assert_eq!(c3.status, DesignStatus::NotADesign);
        let w = c3.witness.unwrap();
        assert_ne!(w.first_count, w.second_count);
        assert_eq!(max_strength(&d, &cfg()).unwrap(), MaxStrength { t: 2, lambda: 1, capped: false });
    }

    #[test]
    fn simplex_supports() {
        let s = simplex(&gf(2), 4).unwrap();
        let (d, _) = supports(&s, 8, &cfg()).unwrap();
        assert_eq!((d.len(), d.block_size(), d.points()), (15, 8, 15));
        let l = lift(&s, 2, &cfg()).unwrap();
        let (dl, count) = supports(l.code(), 8, &cfg()).unwrap();
        assert_eq!(count, 45u32.into());
        assert_eq!(dl, d);
        assert!(matches!(supports(&s, 5, &cfg()), Err(Error::EmptyDesign(5))));
    }

    #[test]
    fn complete_designs() {
        let d = SupportDesign::complete(4, 2);
        assert_eq!(max_strength(&d, &cfg()).unwrap(), MaxStrength { t: 2, lambda: 1, capped: false });
        let c = verify_design(&d, 1, &cfg()).unwrap();
        assert_eq!((c.lambda, c.status), (Some(3), DesignStatus::CompleteDesign));
    }

    #[test]
    fn counting_matches_brute_force() {
        let codes = [
            hamming(&gf(2), 4).unwrap(),
            hamming(&gf(3), 2).unwrap(),
            rm2(1, 4).unwrap(),
            rm2(2, 4).unwrap(),
            lift(&hamming(&gf(2), 3).unwrap(), 2, &cfg()).unwrap().code().clone(),
        ];
        for c in &codes {
            let wd = c.weight_distribution(Strategy::Auto, &cfg()).unwrap();
            for w in wd.nonzero_weights().into_iter().filter(|&w| w >= 3) {
                let (d, count) = supports(c, w, &cfg()).unwrap();
                assert!(BigUint::from(d.len()) <= count);
                for t in 1..=3 {
                    assert_eq!(verify_design(&d, t, &cfg()).unwrap().lambda, brute_lambda(&d, t), "w={w} t={t}");
                }
            }
        }
    }

    #[test]
    fn supports_agree_with_codeword_walk() {
        let c = lift(&hamming(&gf(3), 2).unwrap(), 2, &cfg()).unwrap().code().clone();
        let mut by_weight: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        c.for_each_codeword(|_, w| {
            let s: Vec<usize> = (0..w.len()).filter(|&j| !w[j].is_zero()).collect();
            by_weight.entry(s.len()).or_default().push(s);
        });
        for (w, blocks) in by_weight {
            if w == 0 {
                continue;
            }
            let expect = SupportDesign::new(4, w, blocks).unwrap();
            assert_eq!(supports(&c, w, &cfg().with_workers(3)).unwrap().0, expect);
        }
    }

    #[test]
    fn am_hamming() {
        let r = assmus_mattson(&hamming(&gf(2), 4).unwrap(), 2, &cfg()).unwrap();
        assert_eq!((r.d, r.d_dual, r.s, r.applicable), (3, Some(8), 1, true));
        assert_eq!(r.w, 15);
        assert_eq!(r.guaranteed_primal, vec![3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 15]);
        assert_eq!(r.guaranteed_dual, vec![8]);
        let r = assmus_mattson(&hamming(&gf(3), 3).unwrap(), 2, &cfg()).unwrap();
        assert!(r.applicable);
        assert_eq!(r.guaranteed_dual, vec![9]);
        let (d, _) = supports(&simplex(&gf(3), 3).unwrap(), 9, &cfg()).unwrap();
        assert_eq!(verify_design(&d, 2, &cfg()).unwrap().lambda, Some(6));
        let full = LinearCode::from_generator(&crate::Matrix::identity(gf(2), 5)).unwrap();
        let r = assmus_mattson(&full, 1, &cfg()).unwrap();
        assert!(!r.applicable);
        assert_eq!(r.d_dual, None);
    }

    #[test]
    fn am_guarantees_hold() {
        for c in [hamming(&gf(2), 3).unwrap(), hamming(&gf(3), 2).unwrap(), rm2(1, 4).unwrap(), hamming(&gf(2), 4).unwrap()] {
            for t in 1..=3 {
                let r = assmus_mattson(&c, t, &cfg()).unwrap();
                for &w in &r.guaranteed_primal {
                    let (d, _) = supports(&c, w, &cfg()).unwrap();
                    assert!(verify_design(&d, t, &cfg()).unwrap().status.is_design());
                }
                if !r.guaranteed_dual.is_empty() {
                    let dual = c.dual().unwrap();
                    for &w in &r.guaranteed_dual {
                        let (d, _) = supports(&dual, w, &cfg()).unwrap();
                        assert!(verify_design(&d, t, &cfg()).unwrap().status.is_design());
                    }
                }
            }
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(am_threshold(15, 2, 3), 15);
        // q = 3, d = 3: w - ceil(w/2) < 3 holds up to w = 5
        assert_eq!(am_threshold(13, 3, 3), 5);
    }

    #[test]
    fn conjecture_small() {
        let r = conjecture_rm1(3, &cfg()).unwrap();
        assert_eq!(r.lambda_conjectured, 10u32.into());
        assert!(r.agree);
    }

    #[test]
    fn subset_budget() {
        let d = SupportDesign::complete(10, 3);
        let cfg = Config { subset_budget: 10, ..Config::default() };
        assert!(verify_design(&d, 2, &cfg).unwrap_err().is_budget());
    }

    #[test]
    fn bad_blocks_rejected() {
        assert!(SupportDesign::new(4, 2, vec![vec![0, 5]]).is_err());
        assert!(SupportDesign::new(4, 2, vec![vec![0, 1, 2]]).is_err());
        let d = SupportDesign::new(4, 2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(d.len(), 1);
    }
}
