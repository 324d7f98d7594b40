//! Cross-module invariants checked on family instances.

use std::sync::Arc;

use liftlab_core::closed_forms::{
    hamming_wd_formula, lifted_hamming_wd_formula, lifted_rm1_wd_formula, lifted_rm_m2_wd_formula,
    lifted_simplex_wd_formula,
};
use liftlab_core::design::{max_strength, open_lambda, open_lambda_table, supports, LiftedFamily};
use liftlab_core::families::{hamming, rm2, simplex, simplex_trace};
use liftlab_core::lifting::{lift, rank_spectrum_wd};
use liftlab_core::{macwilliams, Config, FieldSpec, LinearCode, Strategy};
use num_bigint::BigUint;
use num_traits::Pow;

const LIMIT: u64 = 1 << 22;

fn gf(q: u64) -> Arc<FieldSpec> {
    FieldSpec::from_order(q, 1 << 20).unwrap()
}

fn cfg() -> Config {
    Config::default()
}

fn small_qm() -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16] {
        for m in 2..=12u32 {
            if q.pow(m) > 1 << 12 {
                break;
            }
            out.push((q, m));
        }
    }
    out
}

#[test]
fn simplex_constructions_agree() {
    for (q, m) in small_qm() {
        let a = simplex(&gf(q), m).unwrap();
        let b = simplex_trace(&gf(q), m).unwrap();
        assert_eq!((a.length(), a.dimension()), (b.length(), b.dimension()));
        let wa = a.weight_distribution(Strategy::Auto, &cfg()).unwrap();
        assert_eq!(wa, b.weight_distribution(Strategy::Auto, &cfg()).unwrap(), "q={q} m={m}");
        assert_eq!(wa.nonzero_weights(), vec![q.pow(m - 1) as usize]);
    }
}

#[test]
fn hamming_matches_closed_form() {
    for (q, m) in small_qm() {
        let h = hamming(&gf(q), m).unwrap();
        let w = h.weight_distribution(Strategy::Auto, &cfg()).unwrap();
        assert_eq!(w, hamming_wd_formula(q, m).unwrap(), "q={q} m={m}");
        assert_eq!(w.min_distance(), Some(3));
    }
}

#[test]
fn transform_matches_enumerated_dual() {
    let codes: Vec<LinearCode> = vec![
        simplex(&gf(2), 5).unwrap(),
        hamming(&gf(3), 3).unwrap(),
        simplex(&gf(4), 2).unwrap(),
        simplex(&gf(5), 2).unwrap(),
        rm2(2, 5).unwrap(),
        rm2(1, 5).unwrap(),
        lift(&hamming(&gf(2), 3).unwrap(), 3, &cfg()).unwrap().code().clone(),
    ];
    for c in codes {
        let q = c.field().order() as u64;
        let w = c.weight_distribution(Strategy::Direct, &cfg()).unwrap();
        let d = c.dual().unwrap().weight_distribution(Strategy::Direct, &cfg()).unwrap();
        assert_eq!(macwilliams(&w, q, c.dimension()).unwrap(), d);
    }
}

fn within(q: u64, l: u32, k: usize) -> bool {
    let size: BigUint = Pow::pow(&BigUint::from(q).pow(l), k);
    size <= BigUint::from(LIMIT)
}

#[test]
fn lifted_formulas_match_enumeration() {
    for q in [2u64, 3, 4, 5] {
        for m in 2..=5u32 {
            for l in 1..=m {
                if !within(q, l, m as usize) || q.pow(m) > 1 << 10 {
                    continue;
                }
                let s = simplex(&gf(q), m).unwrap();
                let ls = lift(&s, l, &cfg()).unwrap();
                let formula = lifted_simplex_wd_formula(q, m, l).unwrap();
                assert_eq!(ls.code().weight_distribution(Strategy::Direct, &cfg()).unwrap(), formula);
                assert_eq!(rank_spectrum_wd(&ls, &cfg()).unwrap(), formula);
                assert_eq!(formula.total(), BigUint::from(q).pow(l * m));

                let h = lift(&s.dual().unwrap(), l, &cfg()).unwrap();
                let hf = lifted_hamming_wd_formula(q, m, l).unwrap();
                assert_eq!(h.code().weight_distribution(Strategy::Auto, &cfg()).unwrap(), hf);
                let n = h.code().length();
                if within(q, l, n - m as usize) {
                    assert_eq!(h.code().weight_distribution(Strategy::Direct, &cfg()).unwrap(), hf);
                }
                assert_eq!(hf.total(), BigUint::from(q).pow(l * (n as u32 - m)));
            }
        }
    }
}

#[test]
fn lifted_rm_formulas_match_enumeration() {
    for m in 3..=5u32 {
        for l in 1..=m {
            if !within(2, l, m as usize + 1) {
                continue;
            }
            let r1 = lift(&rm2(1, m).unwrap(), l, &cfg()).unwrap();
            let f1 = lifted_rm1_wd_formula(m, l).unwrap();
            assert_eq!(r1.code().weight_distribution(Strategy::Direct, &cfg()).unwrap(), f1);
            assert_eq!(f1.total(), BigUint::from(2u32).pow(l * (m + 1)));
            let r2 = lift(&rm2(m - 2, m).unwrap(), l, &cfg()).unwrap();
            assert_eq!(
                r2.code().weight_distribution(Strategy::Auto, &cfg()).unwrap(),
                lifted_rm_m2_wd_formula(m, l).unwrap(),
                "m={m} l={l}"
            );
        }
    }
    // 4^11 codewords
    let r = lift(&rm2(2, 4).unwrap(), 2, &cfg()).unwrap();
    assert_eq!(
        r.code().weight_distribution(Strategy::Direct, &cfg()).unwrap(),
        lifted_rm_m2_wd_formula(4, 2).unwrap()
    );
}

#[test]
fn minimum_weight_designs_survive_lifting() {
    let cases: Vec<(LinearCode, u32)> = vec![
        (simplex(&gf(2), 4).unwrap(), 2),
        (simplex(&gf(2), 4).unwrap(), 3),
        (simplex(&gf(3), 3).unwrap(), 2),
        (rm2(1, 4).unwrap(), 2),
        (rm2(1, 5).unwrap(), 2),
    ];
    for (c, l) in cases {
        let d = c.min_distance(&cfg()).unwrap();
        let (base, base_count) = supports(&c, d, &cfg()).unwrap();
        let lifted = lift(&c, l, &cfg()).unwrap();
        let (up, count) = supports(lifted.code(), d, &cfg()).unwrap();
        assert_eq!(base, up);
        // every block carries the same number of codewords: the nonzero scalars
        let q = c.field().order() as u64;
        let big_q = lifted.code().field().order() as u64;
        assert_eq!(count, BigUint::from(up.len() as u64 * (big_q - 1)));
        assert_eq!(base_count, BigUint::from(base.len() as u64 * (q - 1)));
    }
}

#[test]
fn open_lambda_examples() {
    let c = open_lambda(LiftedFamily::Simplex { q: 2, m: 4, l: 2 }, 12, 2, &cfg()).unwrap();
    assert_eq!(c.lambda, Some(22));
    let c = open_lambda(LiftedFamily::Hamming { q: 2, m: 4, l: 2 }, 5, 2, &cfg()).unwrap();
    assert_eq!(c.lambda, Some(46));
    let c = open_lambda(LiftedFamily::Hamming { q: 2, m: 4, l: 2 }, 9, 2, &cfg()).unwrap();
    assert_eq!(c.b, 5005);
    assert!(c.status == liftlab_core::design::DesignStatus::CompleteDesign);
    let rows = open_lambda_table(LiftedFamily::Rm1 { m: 4, l: 2 }, 3, &cfg()).unwrap();
    let base = rm2(1, 4).unwrap();
    let lifted = lift(&base, 2, &cfg()).unwrap();
    for c in &rows {
        assert_eq!(c.lambda, brute_lambda(lifted.code(), c.k, 3), "weight {}", c.k);
    }
    let lambdas: Vec<_> = rows.iter().map(|c| (c.k, c.lambda)).collect();
    assert!(lambdas.contains(&(12, Some(55))));
    assert!(lambdas.contains(&(16, Some(1))));
}

/// Distinct supports of weight `w`, then the number of them through each
/// `t`-subset of points; `Some` when that number never varies.
fn brute_lambda(code: &LinearCode, w: usize, t: usize) -> Option<u64> {
    let n = code.length();
    let mut blocks = std::collections::BTreeSet::new();
    code.for_each_codeword(|_, word| {
        let support: Vec<usize> = (0..n).filter(|&i| !word[i].is_zero()).collect();
        if support.len() == w {
            blocks.insert(support);
        }
    });
    let mut seen = None;
    let mut subset: Vec<usize> = (0..t).collect();
    loop {
        let hits = blocks.iter().filter(|b| subset.iter().all(|p| b.contains(p))).count() as u64;
        match seen {
            None => seen = Some(hits),
            Some(x) if x != hits => return None,
            _ => {}
        }
        let Some(i) = (0..t).rev().find(|&i| subset[i] < n - t + i) else {
            return seen;
        };
        subset[i] += 1;
        for j in i + 1..t {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

#[test]
fn strengths_of_small_designs() {
    let h = hamming(&gf(2), 4).unwrap();
    let (d, _) = supports(&h, 3, &cfg()).unwrap();
    let s = max_strength(&d, &cfg()).unwrap();
    assert_eq!((s.t, s.lambda), (2, 1));
    let l = lift(&simplex(&gf(2), 4).unwrap(), 2, &cfg()).unwrap();
    let (d, _) = supports(l.code(), 12, &cfg()).unwrap();
    let s = max_strength(&d, &cfg()).unwrap();
    assert!(s.t >= 2);
}
