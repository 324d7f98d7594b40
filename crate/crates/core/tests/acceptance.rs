//! Acceptance checks, one line per criterion. Expected values that are not
//! printed constants are recomputed here by brute force.

use std::process::{self, Command};
use std::sync::Arc;
use std::time::{Duration, Instant};

use liftlab_core::closed_forms::{
    hamming_wd_formula, lifted_hamming_wd_formula, lifted_rm1_wd_formula, lifted_simplex_wd_formula,
};
use liftlab_core::combin::binomial_u64;
use liftlab_core::design::{conjecture_rm1, supports_by_weight, verify_design, DesignStatus};
use liftlab_core::families::{hamming, prm, prm_dimension, prm_evaluation_matrix, prm_min_distance, rm2, simplex, simplex_trace};
use liftlab_core::lifting::{check_ad_relation, dual_lift_commutes, lift, rank_spectrum_wd};
use liftlab_core::{cli, macwilliams, Config, FieldSpec, Gf, LinearCode, Matrix, Strategy, WeightDistribution};
use num_bigint::BigUint;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn gf(q: u64) -> Arc<FieldSpec> {
    FieldSpec::from_order(q, 1 << 20).unwrap()
}

fn cfg() -> Config {
    Config::default()
}

fn wd(n: usize, pairs: &[(usize, u64)]) -> WeightDistribution {
    WeightDistribution::from_pairs(n, pairs.iter().map(|&(w, c)| (w, BigUint::from(c))))
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn same(label: &str, got: &WeightDistribution, want: &WeightDistribution) -> Result<(), String> {
    ensure!(got == want, "{label}: got {got}, expected {want}");
    Ok(())
}

fn c1() -> Check {
    let cases = [
        (2u64, 4u32, 2u32, wd(15, &[(0, 1), (8, 45), (12, 210)])),
        (3, 4, 3, wd(40, &[(0, 1), (27, 1040), (36, 81120), (39, 449280)])),
    ];
    for (q, m, l, want) in &cases {
        let lifted = lift(&simplex(&gf(*q), *m).unwrap(), *l, &cfg()).unwrap();
        same("formula", &lifted_simplex_wd_formula(*q, *m, *l).unwrap(), want)?;
        same("selector", &rank_spectrum_wd(&lifted, &cfg()).unwrap(), want)?;
        same("direct", &lifted.code().weight_distribution(Strategy::Direct, &cfg()).unwrap(), want)?;
    }
    Ok("(2,4,2) and (3,4,3) agree by formula, selector and direct enumeration".into())
}

fn c2() -> Check {
    let lifted = lift(&hamming(&gf(2), 4).unwrap(), 2, &cfg()).unwrap();
    ensure!(lifted.code().dimension() == 11, "dimension {}", lifted.code().dimension());
    let direct = lifted.code().weight_distribution(Strategy::Direct, &cfg()).unwrap();
    let formula = lifted_hamming_wd_formula(2, 4, 2).unwrap();
    same("direct vs formula", &direct, &formula)?;
    let printed = wd(
        15,
        &[
            (0, 1),
            (3, 105),
            (4, 315),
            (5, 2394),
            (6, 15750),
            (7, 54855),
            (8, 160695),
            (9, 391020),
            (10, 688212),
            (11, 949095),
            (12, 937965),
            (13, 659610),
            (14, 277830),
            (15, 56457),
        ],
    );
    same("printed", &direct, &printed)?;
    Ok("4^11 codewords enumerated, A3=105 A5=2394 A15=56457".into())
}

fn c3() -> Check {
    let h = hamming(&gf(2), 4).unwrap();
    let direct = h.weight_distribution(Strategy::Direct, &cfg()).unwrap();
    let via_dual = h.weight_distribution(Strategy::ViaDual, &cfg()).unwrap();
    let printed = wd(
        15,
        &[(0, 1), (3, 35), (4, 105), (5, 168), (6, 280), (7, 435), (8, 435), (9, 280), (10, 168), (11, 105), (12, 35), (15, 1)],
    );
    same("direct", &direct, &printed)?;
    same("via dual", &via_dual, &printed)?;
    same("closed form", &hamming_wd_formula(2, 4).unwrap(), &printed)?;
    Ok("H(2,4) enumerator matches closed form, MacWilliams (A9=280) and direct count".into())
}

fn c4() -> Check {
    let want = wd(16, &[(0, 1), (8, 90), (12, 840), (16, 93)]);
    let lifted = lift(&rm2(1, 4).unwrap(), 2, &cfg()).unwrap();
    same("formula", &lifted_rm1_wd_formula(4, 2).unwrap(), &want)?;
    same("selector", &rank_spectrum_wd(&lifted, &cfg()).unwrap(), &want)?;
    same("direct", &lifted.code().weight_distribution(Strategy::Direct, &cfg()).unwrap(), &want)?;
    Ok("1+90z^8+840z^12+93z^16 three ways".into())
}

/// (weight, t, v, k, λ, complete)
type Row = (usize, usize, usize, usize, u64, bool);

fn check_rows(label: &str, code: &LinearCode, rows: &[Row]) -> Result<usize, String> {
    let weights: Vec<usize> = rows.iter().map(|r| r.0).collect();
    let designs = supports_by_weight(code, &weights, &cfg()).map_err(|e| e.to_string())?;
    for &(w, t, v, k, lambda, complete) in rows {
        let (d, count) = &designs[&w];
        let c = verify_design(d, t, &cfg()).map_err(|e| e.to_string())?;
        let b = lambda * binomial_u64(v, t).unwrap() / binomial_u64(k, t).unwrap();
        let status = if complete { DesignStatus::CompleteDesign } else { DesignStatus::Verified };
        ensure!(
            (c.t, c.v, c.k, c.lambda, c.b as u64, c.status) == (t, v, k, Some(lambda), b, status),
            "{label} weight {w}: got {c}, expected {t}-({v}, {k}, {lambda}) with b = {b}"
        );
        ensure!(BigUint::from(c.b) <= *count, "{label} weight {w}: more blocks than codewords");
    }
    Ok(rows.len())
}

fn c5() -> Check {
    let mut n = 0;
    let h24 = hamming(&gf(2), 4).unwrap();
    let lambdas = [1u64, 6, 16, 40, 87, 116, 96, 72, 55, 22, 1];
    let weights = [3usize, 4, 5, 6, 7, 8, 9, 10, 11, 12, 15];
    let rows: Vec<Row> = weights.iter().zip(lambdas).map(|(&w, l)| (w, 2, 15, w, l, w == 15)).collect();
    n += check_rows("H(2,4)", &h24, &rows)?;

    let s242 = lift(&simplex(&gf(2), 4).unwrap(), 2, &cfg()).unwrap();
    n += check_rows("S(2,4) lifted", s242.code(), &[(8, 2, 15, 8, 4, false), (12, 2, 15, 12, 22, false)])?;

    let s343 = lift(&simplex(&gf(3), 4).unwrap(), 3, &cfg()).unwrap();
    n += check_rows(
        "S(3,4) lifted",
        s343.code(),
        &[(27, 2, 40, 27, 18, false), (36, 2, 40, 36, 105, false), (39, 2, 40, 39, 38, true)],
    )?;

    let h242 = lift(&h24, 2, &cfg()).unwrap();
    let mut rows: Vec<Row> = [(3usize, 1u64), (4, 6), (5, 46), (6, 355), (7, 1095), (8, 1684)]
        .iter()
        .map(|&(w, l)| (w, 2, 15, w, l, false))
        .collect();
    for w in 9..=15 {
        rows.push((w, 2, 15, w, binomial_u64(13, w - 2).unwrap(), true));
    }
    n += check_rows("H(2,4) lifted", h242.code(), &rows)?;

    let rm = lift(&rm2(1, 4).unwrap(), 2, &cfg()).unwrap();
    n += check_rows("RM(1,4) lifted", rm.code(), &[(12, 3, 16, 12, 55, false)])?;
    Ok(format!("{n} printed designs reproduced with exact λ and b"))
}

fn c6() -> Check {
    let mut seen = Vec::new();
    for m in 3..=5 {
        let r = conjecture_rm1(m, &cfg()).map_err(|e| e.to_string())?;
        ensure!(r.agree, "m = {m}: observed {:?}, predicted {}", r.certificate.lambda, r.lambda_conjectured);
        seen.push(format!("m={m} λ={}", r.lambda_conjectured));
    }
    ensure!(seen[1] == "m=4 λ=55", "m = 4 gave {}", seen[1]);
    Ok(seen.join(", "))
}

/// Every family instance of length at most 40.
fn family_instances() -> Vec<(String, LinearCode)> {
    let mut out = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37] {
        let f = gf(q);
        for m in 2..=6u32 {
            let n = (q.pow(m) - 1) / (q - 1);
            if n > 40 {
                break;
            }
            out.push((format!("simplex({q},{m})"), simplex(&f, m).unwrap()));
            out.push((format!("simplex-trace({q},{m})"), simplex_trace(&f, m).unwrap()));
            out.push((format!("hamming({q},{m})"), hamming(&f, m).unwrap()));
            for h in 1..=(m as u64 - 1) * (q - 1) {
                out.push((format!("prm({q},{m},{h})"), prm(&f, m, h as u32).unwrap()));
            }
        }
    }
    for m in 1..=5u32 {
        for r in 0..m {
            out.push((format!("rm({r},{m})"), rm2(r, m).unwrap()));
        }
    }
    out
}

fn c7() -> Check {
    let limit = BigUint::from(1u64 << 22);
    let mut checked = 0;
    for (name, code) in family_instances() {
        let q = code.field().order() as u64;
        for l in 1..=6u32 {
            let big_q = BigUint::from(q).pow(l);
            if big_q > BigUint::from(1u64 << 20) {
                break;
            }
            let primal: BigUint = Pow::pow(&big_q, code.dimension());
            let dual: BigUint = Pow::pow(&big_q, code.length() - code.dimension());
            if primal > limit || dual > limit {
                continue;
            }
            if code.dimension() < code.length() {
                ensure!(dual_lift_commutes(&code, l, &cfg()).unwrap(), "{name} ℓ={l}: dual of lift differs");
            }
            let r = check_ad_relation(&code, l, &cfg()).unwrap();
            ensure!(r.equal, "{name} ℓ={l}: A_d {} vs {} * {}", r.lifted_count, r.factor, r.base_count);
            ensure!(r.scalar_multiples != Some(false), "{name} ℓ={l}: minimum word not a scalar multiple");
            checked += 1;
        }
    }
    Ok(format!("{checked} (code, ℓ) instances"))
}

fn c8() -> Check {
    let mut checked = 0;
    for q in [3u64, 4] {
        for m in [2u32, 3] {
            let top = (m as u64 - 1) * (q - 1);
            for h in (1..=top).filter(|h| h % (q - 1) != 0) {
                let h = h as u32;
                let rank = prm_evaluation_matrix(&gf(q), m, h).unwrap().rank() as u64;
                ensure!(rank == prm_dimension(q, m, h).unwrap(), "PRM({q},{m},{h}) rank {rank}");
                let c = prm(&gf(q), m, h).unwrap();
                let partner = prm(&gf(q), m, (top - h as u64) as u32).unwrap();
                ensure!(c.dual().unwrap().same_code(&partner).unwrap(), "PRM({q},{m},{h}) duality");
                let d = c.min_distance(&cfg()).unwrap() as u64;
                ensure!(d == prm_min_distance(q, m, h).unwrap(), "PRM({q},{m},{h}) distance {d}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} PRM instances: dimension, duality, minimum distance"))
}

/// Weight counts by encoding every message with plain field arithmetic.
fn brute(c: &LinearCode) -> WeightDistribution {
    let f = c.field();
    let q = f.order() as u64;
    let (k, n) = (c.dimension(), c.length());
    let mut counts = vec![0u64; n + 1];
    for x in 0..q.pow(k as u32) {
        let mut y = x;
        let mut w = vec![Gf::ZERO; n];
        for r in 0..k {
            let a = Gf((y % q) as u32);
            y /= q;
            for (j, wj) in w.iter_mut().enumerate() {
                *wj = f.add(*wj, f.mul(a, c.generator().get(r, j)));
            }
        }
        counts[w.iter().filter(|a| !a.is_zero()).count()] += 1;
    }
    WeightDistribution::from_u64(&counts)
}

fn c9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut done = 0;
    while done < 200 {
        let q = [2u64, 3, 4][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=12usize);
        let k = rng.gen_range(1..=n);
        let rows: Vec<Vec<Gf>> = (0..k).map(|_| (0..n).map(|_| Gf(rng.gen_range(0..q as u32))).collect()).collect();
        let Ok(c) = LinearCode::from_generator(&Matrix::from_rows(gf(q), rows).unwrap()) else {
            continue;
        };
        let k = c.dimension();
        let w = if q.pow(k as u32) <= 1 << 16 { brute(&c) } else { c.weight_distribution(Strategy::Direct, &cfg()).unwrap() };
        ensure!(w.total() == BigUint::from(q).pow(k as u32), "sum {} != {q}^{k}", w.total());
        let dual = macwilliams(&w, q, k).unwrap();
        ensure!(dual.total() == BigUint::from(q).pow((n - k) as u32), "dual sum");
        ensure!(macwilliams(&dual, q, n - k).unwrap() == w, "involution failed for q={q} n={n} k={k}");
        if k < n {
            let direct_dual = c.dual().unwrap().weight_distribution(Strategy::Direct, &cfg()).unwrap();
            ensure!(direct_dual == dual, "transform differs from enumerated dual");
        }
        done += 1;
    }
    Ok("200 random codes".into())
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("liftlab").chain(args.iter().copied()), &mut out, &mut err);
    (code, out)
}

fn c10() -> Check {
    let commands: [&[&str]; 9] = [
        &["field", "--q", "9", "--lift", "2"],
        &["code", "--family", "prm", "--q", "4", "--m", "3", "--h", "2"],
        &["weights", "--family", "simplex", "--q", "3", "--m", "4", "--lift", "3"],
        &["weights", "--family", "hamming", "--q", "2", "--m", "4", "--lift", "2", "--method", "direct"],
        &["weights", "--family", "rm", "--m", "4", "--lift", "2", "--method", "selector"],
        &["design", "--family", "hamming", "--q", "2", "--m", "4", "--lift", "2", "--weight", "5", "--t", "2"],
        &["am", "--family", "hamming", "--q", "3", "--m", "3", "--t", "2"],
        &["conjecture", "rm1", "--m", "4"],
        &["table", "--family", "simplex", "--q", "3", "--m", "4", "--lift", "3", "--t", "2"],
    ];
    for args in commands {
        let mut outputs = Vec::new();
        for workers in ["1", "3", "8"] {
            let mut full = args.to_vec();
            full.extend(["--workers", workers]);
            let (code, out) = run_cli(&full);
            ensure!(code == 0, "{} exited with {code}", args.join(" "));
            outputs.push(out);
        }
        ensure!(outputs.windows(2).all(|w| w[0] == w[1]), "output of `{}` depends on workers", args.join(" "));
    }
    // and through the installed binary
    let bin = env!("CARGO_BIN_EXE_liftlab");
    let base = ["design", "--family", "rm", "--m", "4", "--lift", "2", "--weight", "12", "--t", "3"];
    let a = Command::new(bin).args(base).args(["--workers", "1"]).output().map_err(|e| e.to_string())?;
    let b = Command::new(bin).args(base).args(["--workers", "6"]).output().map_err(|e| e.to_string())?;
    ensure!(a.status.success() && b.status.success(), "binary failed");
    ensure!(a.stdout == b.stdout, "binary output depends on workers");
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    ensure!(v["design"]["lambda"].as_u64() == Some(55), "binary reported {}", v["design"]);
    Ok(format!("{} commands byte-identical across worker counts", commands.len() + 1))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("lifted Simplex enumerators", Duration::from_secs(30), c1),
        ("lifted Hamming H(2,4) over GF(4)", Duration::from_secs(300), c2),
        ("Hamming H(2,4) distribution", Duration::from_secs(10), c3),
        ("lifted RM(1,4) over GF(4)", Duration::from_secs(10), c4),
        ("printed design certificates", Duration::from_secs(600), c5),
        ("RM(1,m) 3-design λ for m = 3, 4, 5", Duration::from_secs(300), c6),
        ("dual-lift commutation and A_d ratio", Duration::from_secs(600), c7),
        ("PRM dimension and duality", Duration::from_secs(120), c8),
        ("MacWilliams involution on random codes", Duration::from_secs(60), c9),
        ("CLI determinism across worker counts", Duration::from_secs(600), c10),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > *limit => Err(format!("took {elapsed:.1?}, limit {limit:?}")),
            r => r,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        process::exit(1);
    }
}
