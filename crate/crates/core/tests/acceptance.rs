//! Acceptance battery: one test per criterion, each printing a single
//! pass/fail line. Numeric sweeps use a modest precision since every
//! tolerance here is far looser than the evaluator's error bounds.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tmzv::bigfloat::Ctx;
use tmzv::coeff::{parse_rat, rat_int, Rat};
use tmzv::genfun::{
    adz_check, appendix_b_identity, duality_check, ode_residual, phi0_series, theorem_sum_check, v0_case_check, w0_height_one, wronskian_check, x0_bruteforce,
    x_series_system_check, SumTriple,
};
use tmzv::maps::{s_map, sigma_map};
use tmzv::numerics::{eval_combination, eval_tmzv};
use tmzv::product::{product, ProductKind};
use tmzv::reg::RegKind;
use tmzv::relations::{
    admissible_indices, appendix_a_identity, cyclic_sum_relation, eds_relation, fds_relation,
    hoffman_relation, sum_formula_coefficient, sum_formula_relation, y_product_closed_form,
    Relation,
};
use tmzv::{Element, Index, Word};

const SEED: u64 = 1;
const PREC: usize = 192;
const EVAL_TOL: f64 = 1e-7;
const MAX_CUTOFF: u64 = 1 << 22;

fn report(n: u32, desc: &str, ok: bool) {
    println!("criterion {n} ({desc}): {}", if ok { "pass" } else { "fail" });
    assert!(ok, "criterion {n} ({desc}) failed");
}

fn t_samples() -> Vec<Rat> {
    ["0", "1", "1/2", "-1/3"]
        .iter()
        .map(|s| parse_rat(s).unwrap())
        .collect()
}

fn random_word(rng: &mut ChaCha8Rng, len: usize, h1: bool) -> Word {
    let mut s: String = (0..len - h1 as usize)
        .map(|_| if rng.gen::<bool>() { 'x' } else { 'y' })
        .collect();
    if h1 {
        s.push('y');
    }
    Word::parse(&s).unwrap()
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    const PRIMES: [i64; 5] = [5, 7, 11, 13, 17];
    let q = PRIMES[rng.gen_range(0..PRIMES.len())];
    let max_p = (q / 4).max(1);
    let p = rng.gen_range(1..=max_p) * if rng.gen::<bool>() { 1 } else { -1 };
    Rat::new(p.into(), q.into())
}

fn words_of_weight(weight: usize, h0: bool, h1: bool) -> Vec<Word> {
    let fixed = h0 as usize + (h0 || h1) as usize;
    if weight < fixed {
        return Vec::new();
    }
    let free = weight - fixed;
    (0u32..1 << free)
        .map(|mask| {
            let mut s = String::new();
            if h0 {
                s.push('x');
            }
            for b in 0..free {
                s.push(if mask >> b & 1 == 1 { 'x' } else { 'y' });
            }
            if h0 || h1 {
                s.push('y');
            }
            Word::parse(&s).unwrap()
        })
        .collect()
}

fn compositions_of(k: u32, n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    if (n as u32) > k {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=k - n as u32 + 1 {
        for mut rest in compositions_of(k - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Worst |residual| of the relations over the t grid and T values; the
/// symbolically-zero ones are skipped without evaluation.
fn sweep(rels: &[Relation], big_ts: &[Rat], ctx: &mut Ctx) -> f64 {
    let mut worst: f64 = 0.0;
    for rel in rels {
        let residual = rel.residual();
        if residual.is_zero() {
            continue;
        }
        for t in &t_samples() {
            for big_t in big_ts {
                let r = eval_combination(&residual, t, big_t, ctx, EVAL_TOL, MAX_CUTOFF)
                    .unwrap_or_else(|e| panic!("{}: {e}", rel.label));
                worst = worst.max(r.value_f64().abs());
            }
        }
    }
    worst
}

#[test]
fn criterion_01_exact_algebra() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let kinds = [
        ProductKind::Sh,
        ProductKind::TSh,
        ProductKind::St,
        ProductKind::TSt,
    ];
    let mut ok = true;
    for i in 0..200 {
        let kind = kinds[i % 4];
        let h1 = matches!(kind, ProductKind::St | ProductKind::TSt);
        let la = rng.gen_range(1..=4);
        let lb = rng.gen_range(1..=8 - la);
        let a = Element::from_word(random_word(&mut rng, la, h1));
        let b = Element::from_word(random_word(&mut rng, lb, h1));
        ok &= product(kind, &a, &b).unwrap() == product(kind, &b, &a).unwrap();
        if i % 4 == 0 {
            let lc = rng.gen_range(1..=2);
            let c = Element::from_word(random_word(&mut rng, lc, h1));
            let left = product(kind, &product(kind, &a, &b).unwrap(), &c).unwrap();
            let right = product(kind, &a, &product(kind, &b, &c).unwrap()).unwrap();
            ok &= left == right;
        }
        if !h1 {
            ok &= s_map(&product(ProductKind::TSh, &a, &b).unwrap(), false)
                == product(ProductKind::Sh, &s_map(&a, false), &s_map(&b, false)).unwrap();
            ok &= sigma_map(&product(ProductKind::Sh, &a, &b).unwrap(), false)
                == product(ProductKind::Sh, &sigma_map(&a, false), &sigma_map(&b, false))
                    .unwrap();
            ok &= product(ProductKind::TSh, &a, &b).unwrap().eval_t(&rat_int(0))
                == product(ProductKind::Sh, &a, &b).unwrap();
        } else {
            ok &= s_map(&product(ProductKind::TSt, &a, &b).unwrap(), false)
                == product(ProductKind::St, &s_map(&a, false), &s_map(&b, false)).unwrap();
            ok &= product(ProductKind::TSt, &a, &b).unwrap().eval_t(&rat_int(0))
                == product(ProductKind::St, &a, &b).unwrap();
        }
        ok &= s_map(&s_map(&a, false), true) == a;
        ok &= sigma_map(&sigma_map(&a, false), true) == a;
    }
    let x = Element::parse("x").unwrap();
    let y = Element::parse("y").unwrap();
    ok &= sigma_map(&x, false) == x;
    ok &= sigma_map(&y, false).sub(&sigma_map(&Element::parse("t*x").unwrap(), false)) == y;
    ok &= started.elapsed().as_secs() < 60;
    report(1, "exact algebra, 200 seeded pairs, weight <= 8", ok);
}

#[test]
fn criterion_02_y_product_closed_forms() {
    let y = Element::parse("y").unwrap();
    let mut ok = true;
    for weight in 1..=8u32 {
        for depth in 1..=weight as usize {
            for parts in compositions_of(weight, depth) {
                let idx = Index::new(parts).unwrap();
                let word = Element::from_word(idx.word());
                for (kind, pk) in [
                    (RegKind::Sh, ProductKind::TSh),
                    (RegKind::St, ProductKind::TSt),
                ] {
                    ok &= y_product_closed_form(&idx, kind)
                        == product(pk, &y, &word).unwrap();
                }
            }
        }
    }
    report(2, "y-z closed forms exact, weight <= 8, both products", ok);
}

#[test]
fn criterion_03_fds_numeric() {
    let mut ctx = Ctx::new(PREC);
    let mut rels = Vec::new();
    for u in 2..=5usize {
        for v in u..=7 - u {
            for a in words_of_weight(u, true, true) {
                for b in words_of_weight(v, true, true) {
                    rels.push(
                        fds_relation(&Element::from_word(a), &Element::from_word(b)).unwrap(),
                    );
                }
            }
        }
    }
    let worst = sweep(&rels, &[rat_int(0)], &mut ctx);
    report(3, "fds residual < 1e-5, combined weight <= 7", worst < 1e-5);
}

#[test]
fn criterion_04_eds_numeric() {
    let mut ctx = Ctx::new(PREC);
    let mut rels = Vec::new();
    for u in 1..=4usize {
        for v in 2..=6 - u {
            for a in words_of_weight(u, false, true) {
                for b in words_of_weight(v, true, true) {
                    for kind in [RegKind::Sh, RegKind::St] {
                        rels.push(
                            eds_relation(&Element::from_word(a), &Element::from_word(b), kind)
                                .unwrap(),
                        );
                    }
                }
            }
        }
    }
    let big_ts = [rat_int(0), parse_rat("7/10").unwrap()];
    let worst = sweep(&rels, &big_ts, &mut ctx);
    report(
        4,
        "eds residual < 1e-5, combined weight <= 6, both maps, T in {0, 0.7}",
        worst < 1e-5,
    );
}

#[test]
fn criterion_05_hoffman() {
    let mut ctx = Ctx::new(PREC);
    let mut rels = Vec::new();
    // hoffman_relation asserts internally that the closed form equals the
    // product difference, so constructing it is the exact half.
    for weight in 2..=7u32 {
        for depth in 1..=weight as usize {
            for idx in admissible_indices(weight, depth) {
                rels.push(hoffman_relation(&idx).unwrap());
            }
        }
    }
    let worst = sweep(&rels, &[rat_int(0)], &mut ctx);
    report(
        5,
        "hoffman exact construction + residual < 1e-5, weight <= 7",
        worst < 1e-5,
    );
}

#[test]
fn criterion_06_sum_formula() {
    let mut ctx = Ctx::new(PREC);
    let mut ok = true;
    let mut rels = Vec::new();
    for k in 2..=8u32 {
        for n in 1..k as usize {
            let (a, b) = sum_formula_coefficient(k, n);
            ok &= a == b;
            rels.push(sum_formula_relation(k, n).unwrap());
        }
    }
    let worst = sweep(&rels, &[rat_int(0)], &mut ctx);
    ok &= worst < 1e-5;
    for k in 2..=9u32 {
        for n in 1..k {
            let (lhs, rhs) = appendix_a_identity(k, n).unwrap();
            ok &= lhs == rhs;
        }
    }
    report(
        6,
        "sum formula coefficients + numeric k <= 8, appendix A exact k <= 9",
        ok,
    );
}

#[test]
fn criterion_07_cyclic_sum() {
    let mut ctx = Ctx::new(PREC);
    let mut rels = Vec::new();
    for weight in 2..=6u32 {
        for depth in 1..=weight as usize {
            for parts in compositions_of(weight, depth) {
                if parts.iter().any(|&p| p >= 2) {
                    rels.push(cyclic_sum_relation(&Index::new(parts).unwrap()).unwrap());
                }
            }
        }
    }
    let worst = sweep(&rels, &[rat_int(0)], &mut ctx);
    report(7, "cyclic sum residual < 1e-5, weight <= 6", worst < 1e-5);
}

#[test]
fn criterion_08_generating_function() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ctx = Ctx::new(PREC);
    let mut ok = true;

    for _ in 0..10 {
        let (u, v, w, t) = (
            random_rat(&mut rng),
            random_rat(&mut rng),
            random_rat(&mut rng),
            random_rat(&mut rng),
        );
        let res = ode_residual(&u, &v, &w, &t, 30).unwrap();
        ok &= res.iter().all(|c| num_traits::Zero::is_zero(c));
    }

    let phi = phi0_series(6);
    let mut worst: f64 = 0.0;
    for ((a, b, c), comb) in phi.iter() {
        let triple = SumTriple {
            k: (a + b + 2 * c + 2) as u32,
            n: b + c + 1,
            s: c + 1,
        };
        let target = x0_bruteforce(&triple).unwrap();
        let diff = comb.sub(&target);
        if diff.is_zero() {
            continue;
        }
        for t in &t_samples() {
            let r = eval_combination(&diff, t, &rat_int(0), &mut ctx, EVAL_TOL, MAX_CUTOFF)
                .unwrap();
            worst = worst.max(r.value_f64().abs());
        }
    }
    ok &= worst < 1e-5;

    ok &= x_series_system_check(5, 30).is_ok();

    let samples = [
        ("1/8", "1/8", "1/8", "1/2"),
        ("1/5", "1/7", "1/9", "1/3"),
        ("-1/8", "1/8", "1/8", "1/2"),
        ("1/7", "-1/7", "1/13", "2/5"),
        ("1/11", "1/5", "-1/7", "1/4"),
    ];
    let mut big_ctx = Ctx::new(768);
    for (u, v, w, t) in samples {
        let d = theorem_sum_check(
            &parse_rat(u).unwrap(),
            &parse_rat(v).unwrap(),
            &parse_rat(w).unwrap(),
            &parse_rat(t).unwrap(),
            &mut big_ctx,
            1e-10,
        )
        .unwrap();
        ok &= d < 1e-8;
    }
    report(
        8,
        "ode exact, phi0 vs bruteforce k <= 8, x-series weight <= 5, theorem sum 1e-8",
        ok,
    );
}

#[test]
fn criterion_09_special_cases() {
    let mut ctx = Ctx::new(PREC);
    let mut ok = true;
    for t in ["1/2", "-1/3"] {
        let d = v0_case_check(8, &parse_rat(t).unwrap(), &mut ctx, EVAL_TOL, MAX_CUTOFF)
            .unwrap();
        ok &= d < 1e-5;
    }
    for i in 1..6u32 {
        for j in 1..=6 - i {
            for t in ["1/2", "1"] {
                let t_val = parse_rat(t).unwrap();
                let mut parts = vec![i + 1];
                parts.extend(std::iter::repeat(1).take(j as usize - 1));
                let direct = eval_tmzv(
                    &Index::new(parts).unwrap(),
                    &t_val,
                    &mut ctx,
                    EVAL_TOL,
                    MAX_CUTOFF,
                )
                .unwrap();
                let formula = w0_height_one(i, j, &t_val, EVAL_TOL).unwrap();
                ok &= (direct.value_f64() - formula.value_f64()).abs() < 1e-5;
            }
        }
    }
    ok &= adz_check(7, &mut ctx, EVAL_TOL, MAX_CUTOFF).unwrap() < 1e-5;
    report(9, "v0 case k <= 8, height-one w0, a/dz check k <= 7", ok);
}

#[test]
fn criterion_10_hypergeometric_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ok = true;
    for n in 1..=6u32 {
        let mut done = 0;
        let mut attempts = 0;
        while done < 40 && attempts < 400 {
            attempts += 1;
            let (x, y1, y2) = (
                random_rat(&mut rng),
                random_rat(&mut rng),
                random_rat(&mut rng),
            );
            match appendix_b_identity(n, &x, &y1, &y2) {
                Ok(()) => done += 1,
                Err(tmzv::Error::Pole(_)) => {}
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        ok &= done == 40;
    }
    for _ in 0..5 {
        let a = random_rat(&mut rng);
        let mut b = random_rat(&mut rng);
        while b == a {
            b = random_rat(&mut rng);
        }
        let g1 = random_rat(&mut rng);
        let g2 = random_rat(&mut rng);
        ok &= wronskian_check(&a, &b, &g1, &g2, 25).is_ok();
        ok &= duality_check(&a, &b, &g1, &g2, 25).is_ok();
    }
    report(
        10,
        "appendix B exact, 40 samples per n <= 6; wronskian + duality to z^25",
        ok,
    );
}

#[test]
fn criterion_11_full_verify_run() {
    let started = Instant::now();
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_tmzv"))
        .args(["verify", "--suite", "all", "--max-weight", "6", "--seed", "1"])
        .stdout(std::process::Stdio::null())
        .stderr(std::process::Stdio::null())
        .status()
        .expect("failed to launch verifier");
    let ok = status.success() && started.elapsed().as_secs() < 600;
    report(11, "verify --suite all --max-weight 6 exits 0 in < 10 min", ok);
}
