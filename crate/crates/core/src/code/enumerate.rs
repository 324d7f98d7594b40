//! Exhaustive codeword enumeration.
//!
//! Messages are walked in lexicographic order over the first `k - 1`
//! generator rows. For each prefix codeword `p`, the `Q` codewords
//! `p + a g` (with `g` the last row) are handled together: position `j` of
//! `p + a g` vanishes for exactly one `a` when `g_j != 0`, namely
//! `a = -p_j / g_j`, and for every `a` or none when `g_j = 0`. One pass over
//! the positions therefore yields the weights of all `Q` codewords.
//!
//! Work is split into units by a fixed number of leading message digits;
//! each unit produces a partial accumulator and partials merge by addition
//! or union, so results do not depend on the worker count.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::config::Config;
use crate::field::{FieldSpec, Gf};
use crate::matrix::Matrix;

pub(crate) const MAX_SUPPORT_LENGTH: usize = 128;

struct LastRow {
    n: usize,
    zero_cols: Vec<usize>,
    nz_cols: Vec<usize>,
    neg_inv: Vec<Gf>,
}

impl LastRow {
    fn new(field: &FieldSpec, row: &[Gf]) -> LastRow {
        let mut zero_cols = Vec::new();
        let mut nz_cols = Vec::new();
        let mut neg_inv = Vec::new();
        for (j, &g) in row.iter().enumerate() {
            if g.is_zero() {
                zero_cols.push(j);
            } else {
                nz_cols.push(j);
                neg_inv.push(field.neg(field.inv(g).expect("nonzero")));
            }
        }
        LastRow {
            n: row.len(),
            zero_cols,
            nz_cols,
            neg_inv,
        }
    }
}

/// Per-worker scratch space indexed by field element.
struct Scratch {
    cnt: Vec<u32>,
    mask: Vec<u128>,
    touched: Vec<u32>,
}

impl Scratch {
    fn new(q: usize, masks: bool) -> Scratch {
        Scratch {
            cnt: vec![0; q],
            mask: if masks { vec![0; q] } else { Vec::new() },
            touched: Vec::new(),
        }
    }
}

fn axpy(field: &FieldSpec, acc: &mut [Gf], base: &[Gf], a: Gf, row: &[Gf]) {
    if a.is_zero() {
        acc.copy_from_slice(base);
        return;
    }
    for ((o, &b), &r) in acc.iter_mut().zip(base).zip(row) {
        *o = field.add(b, field.mul(a, r));
    }
}

/// Number of leading digits fixed per work unit.
fn split_depth(q: u64, prefix_rows: usize, workers: usize) -> usize {
    if workers <= 1 {
        return 0;
    }
    let target = 8 * workers as u64;
    let mut s = 0;
    let mut units = 1u64;
    while s < prefix_rows && units < target {
        units = units.saturating_mul(q);
        s += 1;
    }
    s
}

/// Visits every prefix codeword (span of all rows but the last) in unit `u`.
fn walk_unit(
    field: &FieldSpec,
    rows: &Matrix,
    split: usize,
    unit: u64,
    visit: &mut impl FnMut(&[Gf]),
) {
    let k = rows.rows();
    let n = rows.cols();
    let q = field.order() as u64;
    let prefix_rows = k - 1;
    let mut levels: Vec<Vec<Gf>> = vec![vec![Gf::ZERO; n]; prefix_rows + 1];

    // Decode the unit's fixed digits, most significant first.
    let mut digits = vec![0u64; split];
    let mut x = unit;
    for d in digits.iter_mut().rev() {
        *d = x % q;
        x /= q;
    }
    for (i, &d) in digits.iter().enumerate() {
        let (lo, hi) = levels.split_at_mut(i + 1);
        axpy(field, &mut hi[0], &lo[i], Gf(d as u32), rows.row(i));
    }
    descend(field, rows, split, prefix_rows, &mut levels, visit);
}

fn descend(
    field: &FieldSpec,
    rows: &Matrix,
    depth: usize,
    prefix_rows: usize,
    levels: &mut [Vec<Gf>],
    visit: &mut impl FnMut(&[Gf]),
) {
    if depth == prefix_rows {
        visit(&levels[depth]);
        return;
    }
    for a in field.elements() {
        let (lo, hi) = levels.split_at_mut(depth + 1);
        axpy(field, &mut hi[0], &lo[depth], a, rows.row(depth));
        descend(field, rows, depth + 1, prefix_rows, levels, visit);
    }
}

fn run_units<A: Send>(
    field: &FieldSpec,
    rows: &Matrix,
    cfg: &Config,
    init: impl Fn() -> A + Sync + Send,
    visit: impl Fn(&mut A, &[Gf]) + Sync + Send,
    merge: impl Fn(A, A) -> A + Sync + Send,
) -> A {
    let q = field.order() as u64;
    let prefix_rows = rows.rows() - 1;
    let split = split_depth(q, prefix_rows, cfg.workers);
    let units = q.pow(split as u32);
    let work = |u: u64| {
        let mut acc = init();
        walk_unit(field, rows, split, u, &mut |p| visit(&mut acc, p));
        acc
    };
    if split == 0 {
        return work(0);
    }
    cfg.install(|| {
        (0..units)
            .into_par_iter()
            .map(work)
            .reduce(&init, &merge)
    })
}

/// `counts[w]` = number of codewords of weight `w` in the row space of `rows`
/// (which must have full row rank for the counts to be per-codeword).
pub(crate) fn count_weights(rows: &Matrix, cfg: &Config) -> Vec<u64> {
    let field = rows.field();
    let n = rows.cols();
    if rows.rows() == 0 {
        let mut c = vec![0u64; n + 1];
        c[0] = 1;
        return c;
    }
    let q = field.order() as usize;
    let last = LastRow::new(field, rows.row(rows.rows() - 1));
    let init = || (vec![0u64; n + 1], Scratch::new(q, false));
    let visit = |acc: &mut (Vec<u64>, Scratch), p: &[Gf]| {
        let (counts, s) = acc;
        let base_zero = last.zero_cols.iter().filter(|&&j| p[j].is_zero()).count();
        for (&j, &ni) in last.nz_cols.iter().zip(&last.neg_inv) {
            let a = field.mul(p[j], ni).0;
            if s.cnt[a as usize] == 0 {
                s.touched.push(a);
            }
            s.cnt[a as usize] += 1;
        }
        let full = last.n - base_zero;
        counts[full] += (q - s.touched.len()) as u64;
        for &a in &s.touched {
            counts[full - s.cnt[a as usize] as usize] += 1;
            s.cnt[a as usize] = 0;
        }
        s.touched.clear();
    };
    let merge = |mut a: (Vec<u64>, Scratch), b: (Vec<u64>, Scratch)| {
        for (x, y) in a.0.iter_mut().zip(b.0) {
            *x += y;
        }
        a
    };
    run_units(field, rows, cfg, init, visit, merge).0
}

/// Distinct supports (as bit masks) and codeword counts for each weight `w`
/// with `wanted[w]` set.
pub(crate) fn collect_supports(
    rows: &Matrix,
    wanted: &[bool],
    cfg: &Config,
) -> (Vec<HashSet<u128>>, Vec<u64>) {
    let field = rows.field();
    let n = rows.cols();
    assert!(n <= MAX_SUPPORT_LENGTH);
    assert_eq!(wanted.len(), n + 1);
    let empty = || (vec![HashSet::new(); n + 1], vec![0u64; n + 1]);
    if rows.rows() == 0 {
        let (mut sets, mut counts) = empty();
        if wanted[0] {
            sets[0].insert(0);
            counts[0] = 1;
        }
        return (sets, counts);
    }
    let q = field.order() as usize;
    let full_mask: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let last = LastRow::new(field, rows.row(rows.rows() - 1));
    type Acc = (Vec<HashSet<u128>>, Vec<u64>, Scratch);
    let init = || {
        let (s, c) = empty();
        (s, c, Scratch::new(q, true))
    };
    let visit = |acc: &mut Acc, p: &[Gf]| {
        let (sets, counts, s) = acc;
        let mut z0: u128 = 0;
        for &j in &last.zero_cols {
            if p[j].is_zero() {
                z0 |= 1u128 << j;
            }
        }
        for (&j, &ni) in last.nz_cols.iter().zip(&last.neg_inv) {
            let a = field.mul(p[j], ni).0 as usize;
            if s.cnt[a] == 0 {
                s.touched.push(a as u32);
            }
            s.cnt[a] += 1;
            s.mask[a] |= 1u128 << j;
        }
        let base_zero = z0.count_ones() as usize;
        let w_untouched = n - base_zero;
        let untouched = (q - s.touched.len()) as u64;
        if untouched > 0 && wanted[w_untouched] {
            sets[w_untouched].insert(full_mask & !z0);
            counts[w_untouched] += untouched;
        }
        for &a in &s.touched {
            let a = a as usize;
            let w = w_untouched - s.cnt[a] as usize;
            if wanted[w] {
                sets[w].insert(full_mask & !(z0 | s.mask[a]));
                counts[w] += 1;
            }
            s.cnt[a] = 0;
            s.mask[a] = 0;
        }
        s.touched.clear();
    };
    let merge = |mut a: Acc, b: Acc| {
        for (x, y) in a.0.iter_mut().zip(b.0) {
            if x.len() < y.len() {
                let small = std::mem::replace(x, y);
                x.extend(small);
            } else {
                x.extend(y);
            }
        }
        for (x, y) in a.1.iter_mut().zip(b.1) {
            *x += y;
        }
        a
    };
    let (sets, counts, _) = run_units(field, rows, cfg, init, visit, merge);
    (sets, counts)
}

/// Calls `f` on every codeword of the row space, sequentially, in
/// lexicographic message order. Meant for small exhaustive checks.
pub(crate) fn for_each_codeword(rows: &Matrix, mut f: impl FnMut(&[Gf], &[Gf])) {
    let field = rows.field();
    let k = rows.rows();
    let n = rows.cols();
    let q = field.order();
    let mut msg = vec![Gf::ZERO; k];
    let mut word = vec![Gf::ZERO; n];
    loop {
        for (c, w) in word.iter_mut().enumerate() {
            *w = msg
                .iter()
                .enumerate()
                .fold(Gf::ZERO, |acc, (r, &m)| field.add(acc, field.mul(m, rows.get(r, c))));
        }
        f(&msg, &word);
        // odometer, last digit fastest
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            msg[i] = Gf(msg[i].0 + 1);
            if msg[i].0 < q {
                break;
            }
            msg[i] = Gf::ZERO;
        }
    }
}
