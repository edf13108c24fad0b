//! Verification batteries behind `tmzv verify`: each check appends one
//! report record, and the whole run is deterministic for a fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tmzv::bigfloat::Ctx;
use tmzv::coeff::{parse_rat, rat_int, Rat};
use tmzv::genfun::{
    adz_check, appendix_b_identity, duality_check, ode_residual, phi0_series, sum_case_uv_w2,
    theorem_sum_check, v0_case_check, w0_height_one, wronskian_check, x0_bruteforce,
    x_series_system_check, SumTriple,
};
use tmzv::maps::{s_map, sigma_map};
use tmzv::numerics::{eval_combination, eval_tmzv};
use tmzv::product::{product, ProductKind};
use tmzv::reg::{reg_decompose, z_reg_eval, RegKind};
use tmzv::relations::{
    admissible_indices, appendix_a_identity, cyclic_sum_relation, eds_relation,
    euler_decomposition, fds_relation, hoffman_relation, sum_formula_relation,
    y_product_closed_form, Relation,
};
use tmzv::zeta::z_symbolic;
use tmzv::{Element, Index, Word};

use crate::{RunConfig, Suite};

pub struct Record {
    pub check: String,
    pub params: serde_json::Value,
    pub max_residual: Option<f64>,
    pub exact: bool,
    pub pass: bool,
}

impl Record {
    pub fn to_json(&self, seed: u64) -> serde_json::Value {
        serde_json::json!({
            "check": self.check,
            "params": self.params,
            "max_residual": match self.max_residual {
                Some(v) => format!("{v:.6e}"),
                None => "0".to_string(),
            },
            "exact": self.exact,
            "status": if self.pass { "pass" } else { "fail" },
            "seed": seed,
        })
    }

    pub fn to_text(&self) -> String {
        let residual = match self.max_residual {
            Some(v) => format!("{v:.3e}"),
            None => "exact".to_string(),
        };
        format!(
            "{}  {}  {}  {}",
            if self.pass { "pass" } else { "FAIL" },
            self.check,
            residual,
            self.params
        )
    }
}

fn exact(check: &str, params: serde_json::Value, ok: bool) -> Record {
    Record {
        check: check.to_string(),
        params,
        max_residual: None,
        exact: true,
        pass: ok,
    }
}

fn numeric(check: &str, params: serde_json::Value, residual: f64, bound: f64) -> Record {
    Record {
        check: check.to_string(),
        params,
        max_residual: Some(residual),
        exact: false,
        pass: residual.is_finite() && residual < bound,
    }
}

fn failure(check: &str, params: serde_json::Value, err: impl ToString) -> Record {
    Record {
        check: check.to_string(),
        params: serde_json::json!({ "input": params, "error": err.to_string() }),
        max_residual: None,
        exact: false,
        pass: false,
    }
}

fn t_samples() -> Vec<Rat> {
    ["0", "1", "1/2", "-1/3"]
        .iter()
        .map(|s| parse_rat(s).unwrap())
        .collect()
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    let s: String = (0..len)
        .map(|_| if rng.gen::<bool>() { 'x' } else { 'y' })
        .collect();
    Word::parse(&s).unwrap()
}

fn random_h1_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    assert!(len >= 1);
    let mut s: String = (0..len - 1)
        .map(|_| if rng.gen::<bool>() { 'x' } else { 'y' })
        .collect();
    s.push('y');
    Word::parse(&s).unwrap()
}

/// Random rational with a denominator from a fixed prime set and magnitude
/// at most 1/4, so integer-shifted denominators never vanish.
fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    const PRIMES: [i64; 5] = [5, 7, 11, 13, 17];
    let q = PRIMES[rng.gen_range(0..PRIMES.len())];
    let max_p = (q / 4).max(1);
    let p = rng.gen_range(1..=max_p) * if rng.gen::<bool>() { 1 } else { -1 };
    Rat::new(p.into(), q.into())
}

/// All words of the given length whose letters are fixed at the ends as
/// requested: h^0 words start with x and end with y, h^1 words end with y.
fn words_of_weight(weight: usize, h0: bool, h1: bool) -> Vec<Word> {
    let fixed_tail = (h0 || h1) as usize;
    let fixed_head = h0 as usize;
    if weight < fixed_head + fixed_tail {
        return Vec::new();
    }
    let free = weight - fixed_head - fixed_tail;
    let mut out = Vec::with_capacity(1 << free);
    for mask in 0u32..1 << free {
        let mut s = String::with_capacity(weight);
        if h0 {
            s.push('x');
        }
        for b in 0..free {
            s.push(if mask >> b & 1 == 1 { 'x' } else { 'y' });
        }
        if fixed_tail == 1 {
            s.push('y');
        }
        out.push(Word::parse(&s).unwrap());
    }
    out
}

fn residual_at(
    rel: &Relation,
    t: &Rat,
    big_t: &Rat,
    ctx: &mut Ctx,
    tol: f64,
    max_cutoff: u64,
) -> Result<f64, tmzv::Error> {
    let r = eval_combination(&rel.residual(), t, big_t, ctx, tol, max_cutoff)?;
    Ok(r.value_f64().abs())
}

/// Worst numeric residual of a batch of relations over the t-sample grid.
fn sweep_relations(
    check: &str,
    params: serde_json::Value,
    rels: &[Relation],
    big_ts: &[Rat],
    ctx: &mut Ctx,
    cfg: &RunConfig,
    bound: f64,
) -> Record {
    let tol = cfg.tol.min(bound / 10.0);
    let mut worst: f64 = 0.0;
    for rel in rels {
        for t in &t_samples() {
            for big_t in big_ts {
                match residual_at(rel, t, big_t, ctx, tol, cfg.max_cutoff) {
                    Ok(r) => worst = worst.max(r),
                    Err(e) => {
                        return failure(check, serde_json::json!({"relation": rel.label}), e)
                    }
                }
            }
        }
    }
    numeric(check, params, worst, bound)
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Vec<Record> {
    let mut records = Vec::new();
    let run_all = matches!(suite, Suite::All);
    if run_all || matches!(suite, Suite::Algebra) {
        algebra_suite(cfg, &mut records);
    }
    if run_all || matches!(suite, Suite::Regularization) {
        regularization_suite(cfg, &mut records);
    }
    if run_all || matches!(suite, Suite::Relations) {
        relations_suite(cfg, &mut records);
    }
    if run_all || matches!(suite, Suite::Genfun) {
        genfun_suite(cfg, &mut records);
    }
    if run_all || matches!(suite, Suite::Hyp) {
        hyp_suite(cfg, &mut records);
    }
    records
}

const KINDS: [ProductKind; 4] = [
    ProductKind::Sh,
    ProductKind::TSh,
    ProductKind::St,
    ProductKind::TSt,
];

fn is_harmonic(k: ProductKind) -> bool {
    matches!(k, ProductKind::St | ProductKind::TSt)
}

fn algebra_suite(cfg: &RunConfig, records: &mut Vec<Record>) {
    let w = cfg.max_weight.clamp(2, 8) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let zero = rat_int(0);

    let mut ok = true;
    for i in 0..200 {
        let kind = KINDS[i % 4];
        let la = rng.gen_range(1..=w / 2);
        let lb = rng.gen_range(1..=w - la.min(w - 1));
        let (a, b) = if is_harmonic(kind) {
            (random_h1_word(&mut rng, la), random_h1_word(&mut rng, lb))
        } else {
            (random_word(&mut rng, la), random_word(&mut rng, lb))
        };
        let (ea, eb) = (Element::from_word(a), Element::from_word(b));
        ok &= product(kind, &ea, &eb).unwrap() == product(kind, &eb, &ea).unwrap();
    }
    records.push(exact(
        "algebra/commutativity",
        serde_json::json!({"pairs": 200, "max_weight": w}),
        ok,
    ));

    let mut ok = true;
    for i in 0..60 {
        let kind = KINDS[i % 4];
        let lens: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=(w / 3).max(1))).collect();
        let els: Vec<Element> = lens
            .iter()
            .map(|&l| {
                Element::from_word(if is_harmonic(kind) {
                    random_h1_word(&mut rng, l)
                } else {
                    random_word(&mut rng, l)
                })
            })
            .collect();
        let left = product(kind, &product(kind, &els[0], &els[1]).unwrap(), &els[2]).unwrap();
        let right = product(kind, &els[0], &product(kind, &els[1], &els[2]).unwrap()).unwrap();
        ok &= left == right;
    }
    records.push(exact(
        "algebra/associativity",
        serde_json::json!({"triples": 60, "max_weight": w}),
        ok,
    ));

    let mut ok = true;
    for _ in 0..50 {
        let la = rng.gen_range(1..=w / 2);
        let lb = rng.gen_range(1..=w / 2);
        let a = Element::from_word(random_word(&mut rng, la));
        let b = Element::from_word(random_word(&mut rng, lb));
        ok &= s_map(&product(ProductKind::TSh, &a, &b).unwrap(), false)
            == product(ProductKind::Sh, &s_map(&a, false), &s_map(&b, false)).unwrap();
        ok &= sigma_map(&product(ProductKind::Sh, &a, &b).unwrap(), false)
            == product(
                ProductKind::Sh,
                &sigma_map(&a, false),
                &sigma_map(&b, false),
            )
            .unwrap();
        let a = Element::from_word(random_h1_word(&mut rng, la));
        let b = Element::from_word(random_h1_word(&mut rng, lb));
        ok &= s_map(&product(ProductKind::TSt, &a, &b).unwrap(), false)
            == product(ProductKind::St, &s_map(&a, false), &s_map(&b, false)).unwrap();
    }
    records.push(exact(
        "algebra/homomorphism",
        serde_json::json!({"pairs": 50, "max_weight": w}),
        ok,
    ));

    let mut ok = true;
    for _ in 0..50 {
        let len = rng.gen_range(1..=w);
        let e = Element::from_word(random_word(&mut rng, len));
        ok &= s_map(&s_map(&e, false), true) == e;
        ok &= sigma_map(&sigma_map(&e, false), true) == e;
    }
    let x = Element::parse("x").unwrap();
    let y = Element::parse("y").unwrap();
    let rho_y = Element::parse("t*x").unwrap();
    ok &= sigma_map(&x, false) == x;
    ok &= sigma_map(&y, false).sub(&sigma_map(&rho_y, false)) == y;
    records.push(exact(
        "algebra/inversion_sigma_rho",
        serde_json::json!({"words": 50, "max_weight": w}),
        ok,
    ));

    let mut ok = true;
    for _ in 0..50 {
        let la = rng.gen_range(1..=w / 2);
        let lb = rng.gen_range(1..=w / 2);
        let a = Element::from_word(random_word(&mut rng, la));
        let b = Element::from_word(random_word(&mut rng, lb));
        ok &= product(ProductKind::TSh, &a, &b).unwrap().eval_t(&zero)
            == product(ProductKind::Sh, &a, &b).unwrap();
        let a = Element::from_word(random_h1_word(&mut rng, la));
        let b = Element::from_word(random_h1_word(&mut rng, lb));
        ok &= product(ProductKind::TSt, &a, &b).unwrap().eval_t(&zero)
            == product(ProductKind::St, &a, &b).unwrap();
    }
    records.push(exact(
        "algebra/t0_specialization",
        serde_json::json!({"pairs": 50, "max_weight": w}),
        ok,
    ));
}

fn regularization_suite(cfg: &RunConfig, records: &mut Vec<Record>) {
    let w = cfg.max_weight.clamp(2, 7) as usize;

    let mut ok = true;
    let mut count = 0;
    for weight in 1..=w {
        for word in words_of_weight(weight, false, true) {
            let e = Element::from_word(word);
            for kind in [RegKind::Sh, RegKind::St] {
                let d = reg_decompose(kind, &e).unwrap();
                ok &= d.reconstruct() == e;
                count += 1;
            }
        }
    }
    records.push(exact(
        "regularization/round_trip",
        serde_json::json!({"cases": count, "max_weight": w}),
        ok,
    ));

    let mut ok = true;
    let mut count = 0;
    for weight in 2..=w {
        for word in words_of_weight(weight, true, true) {
            let e = Element::from_word(word);
            let sym = z_symbolic(&e).unwrap();
            for kind in [RegKind::Sh, RegKind::St] {
                let reg = z_reg_eval(kind, &e).unwrap();
                ok &= reg == sym;
                count += 1;
            }
        }
    }
    records.push(exact(
        "regularization/h0_agreement",
        serde_json::json!({"cases": count, "max_weight": w}),
        ok,
    ));

    let y = Element::parse("y").unwrap();
    let expected = tmzv::ZetaCombination::constant(tmzv::TtPoly::one()).mul_big_t_pow(1);
    let ok = z_reg_eval(RegKind::Sh, &y).unwrap() == expected
        && z_reg_eval(RegKind::St, &y).unwrap() == expected;
    records.push(exact(
        "regularization/z_of_y_is_T",
        serde_json::json!({}),
        ok,
    ));
}

fn relations_suite(cfg: &RunConfig, records: &mut Vec<Record>) {
    let w = cfg.max_weight.max(3);
    let mut ctx = Ctx::new(cfg.precision_bits);

    let mut ok = true;
    let mut count = 0;
    for weight in 1..=w.min(8) {
        for depth in 1..=weight as usize {
            for idx in compositions_of(weight, depth) {
                let idx = Index::new(idx).unwrap();
                let y = Element::parse("y").unwrap();
                let word = Element::from_word(idx.word());
                for (kind, product_kind) in
                    [(RegKind::Sh, ProductKind::TSh), (RegKind::St, ProductKind::TSt)]
                {
                    let closed = y_product_closed_form(&idx, kind);
                    let direct = product(product_kind, &y, &word).unwrap();
                    ok &= closed == direct;
                    count += 1;
                }
            }
        }
    }
    records.push(exact(
        "relations/y_product_closed_forms",
        serde_json::json!({"cases": count, "max_weight": w.min(8)}),
        ok,
    ));

    let mut rels = Vec::new();
    for k in 2..=w.min(8) {
        for l in k..=w.min(8) {
            if k + l <= w.min(8) + 2 {
                rels.push(euler_decomposition(k, l).unwrap());
            }
        }
    }
    let n = rels.len();
    records.push(sweep_relations(
        "relations/euler_decomposition",
        serde_json::json!({"cases": n}),
        &rels,
        &[rat_int(0)],
        &mut ctx,
        cfg,
        1e-5,
    ));

    let cap = w.min(7) as usize;
    let mut rels = Vec::new();
    for u in 2..=cap.saturating_sub(2) {
        for v in u..=cap - u {
            for a in words_of_weight(u, true, true) {
                for b in words_of_weight(v, true, true) {
                    rels.push(
                        fds_relation(&Element::from_word(a), &Element::from_word(b)).unwrap(),
                    );
                }
            }
        }
    }
    let n = rels.len();
    records.push(sweep_relations(
        "relations/fds",
        serde_json::json!({"pairs": n, "combined_weight": cap}),
        &rels,
        &[rat_int(0)],
        &mut ctx,
        cfg,
        1e-5,
    ));

    let cap = w.min(6) as usize;
    let mut rels = Vec::new();
    for u in 1..=cap.saturating_sub(2) {
        for v in 2..=cap - u {
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
    let n = rels.len();
    records.push(sweep_relations(
        "relations/eds",
        serde_json::json!({"pairs": n, "combined_weight": cap}),
        &rels,
        &[rat_int(0), parse_rat("7/10").unwrap()],
        &mut ctx,
        cfg,
        1e-5,
    ));

    let mut rels = Vec::new();
    for weight in 2..=w.min(7) {
        for depth in 1..=weight as usize {
            for idx in admissible_indices(weight, depth) {
                rels.push(hoffman_relation(&idx).unwrap());
            }
        }
    }
    let n = rels.len();
    records.push(sweep_relations(
        "relations/hoffman",
        serde_json::json!({"indices": n, "max_weight": w.min(7)}),
        &rels,
        &[rat_int(0)],
        &mut ctx,
        cfg,
        1e-5,
    ));

    let mut rels = Vec::new();
    for k in 2..=w.min(8) {
        for n in 1..k as usize {
            rels.push(sum_formula_relation(k, n).unwrap());
        }
    }
    let n = rels.len();
    records.push(sweep_relations(
        "relations/sum_formula",
        serde_json::json!({"cases": n, "max_weight": w.min(8)}),
        &rels,
        &[rat_int(0)],
        &mut ctx,
        cfg,
        1e-5,
    ));

    let mut ok = true;
    let mut count = 0;
    for k in 2..=w.min(9) {
        for n in 1..k {
            let (lhs, rhs) = appendix_a_identity(k, n).unwrap();
            ok &= lhs == rhs;
            count += 1;
        }
    }
    records.push(exact(
        "relations/appendix_a",
        serde_json::json!({"cases": count, "max_weight": w.min(9)}),
        ok,
    ));

    let mut rels = Vec::new();
    for weight in 2..=w.min(6) {
        for depth in 1..=weight as usize {
            for parts in compositions_of(weight, depth) {
                if parts.iter().any(|&p| p >= 2) {
                    rels.push(cyclic_sum_relation(&Index::new(parts).unwrap()).unwrap());
                }
            }
        }
    }
    let n = rels.len();
    records.push(sweep_relations(
        "relations/cyclic_sum",
        serde_json::json!({"indices": n, "max_weight": w.min(6)}),
        &rels,
        &[rat_int(0)],
        &mut ctx,
        cfg,
        1e-5,
    ));
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

fn genfun_suite(cfg: &RunConfig, records: &mut Vec<Record>) {
    let w = cfg.max_weight.max(3);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ctx = Ctx::new(cfg.precision_bits);
    let eval_tol = cfg.tol.min(1e-8);

    let mut ok = true;
    for _ in 0..10 {
        let (u, v, ww, t) = (
            random_rat(&mut rng),
            random_rat(&mut rng),
            random_rat(&mut rng),
            random_rat(&mut rng),
        );
        match ode_residual(&u, &v, &ww, &t, 30) {
            Ok(res) => ok &= res.iter().all(|c| num_traits::Zero::is_zero(c)),
            Err(_) => ok = false,
        }
    }
    records.push(exact(
        "genfun/ode_residual",
        serde_json::json!({"samples": 10, "order": 30}),
        ok,
    ));

    let wcap = w.min(5);
    let ok = x_series_system_check(wcap, 30).is_ok();
    records.push(exact(
        "genfun/x_series_system",
        serde_json::json!({"max_weight": wcap, "order": 30}),
        ok,
    ));

    let cap = (w.min(8) as usize).saturating_sub(2);
    let phi = phi0_series(cap);
    let mut worst: f64 = 0.0;
    let mut err: Option<String> = None;
    'phi: for ((a, b, c), comb) in phi.iter().map(|(k, v)| (*k, v)) {
        let triple = SumTriple {
            k: (a + b + 2 * c + 2) as u32,
            n: b + c + 1,
            s: c + 1,
        };
        let target = x0_bruteforce(&triple).unwrap();
        for t in &t_samples() {
            let zero = rat_int(0);
            let lhs = eval_combination(comb, t, &zero, &mut ctx, eval_tol, cfg.max_cutoff);
            let rhs = eval_combination(&target, t, &zero, &mut ctx, eval_tol, cfg.max_cutoff);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => worst = worst.max((l.value_f64() - r.value_f64()).abs()),
                (Err(e), _) | (_, Err(e)) => {
                    err = Some(e.to_string());
                    break 'phi;
                }
            }
        }
    }
    records.push(match err {
        Some(e) => failure("genfun/phi0_vs_bruteforce", serde_json::json!({"cap": cap}), e),
        None => numeric(
            "genfun/phi0_vs_bruteforce",
            serde_json::json!({"cap": cap, "max_weight": cap + 2}),
            worst,
            1e-5,
        ),
    });

    let samples = [
        ("1/8", "1/8", "1/8", "1/2"),
        ("1/5", "1/7", "1/9", "1/3"),
        ("-1/8", "1/8", "1/8", "1/2"),
        ("1/7", "-1/7", "1/13", "2/5"),
        ("1/11", "1/5", "-1/7", "1/4"),
    ];
    let mut worst: f64 = 0.0;
    let mut err: Option<String> = None;
    for (u, v, ww, t) in samples {
        let r = theorem_sum_check(
            &parse_rat(u).unwrap(),
            &parse_rat(v).unwrap(),
            &parse_rat(ww).unwrap(),
            &parse_rat(t).unwrap(),
            &mut ctx,
            cfg.tol.min(1e-10),
        );
        match r {
            Ok(d) => worst = worst.max(d),
            Err(e) => err = Some(format!("({u},{v},{ww},{t}): {e}")),
        }
    }
    records.push(match err {
        Some(e) => failure("genfun/theorem_sum", serde_json::json!({"samples": 5}), e),
        None => numeric(
            "genfun/theorem_sum",
            serde_json::json!({"samples": samples.len()}),
            worst,
            1e-8,
        ),
    });

    let mut ok = true;
    let mut count = 0;
    for k in 2..=w.min(8) {
        for n in 1..k as usize {
            let a = sum_case_uv_w2(k, n).unwrap();
            let b = sum_formula_relation(k, n).unwrap();
            ok &= a.combination.sub(&b.combination).is_zero();
            count += 1;
        }
    }
    records.push(exact(
        "genfun/uv_w2_sum_case",
        serde_json::json!({"cases": count, "max_weight": w.min(8)}),
        ok,
    ));

    let cap = w.min(8) as usize;
    let mut worst: f64 = 0.0;
    let mut err: Option<String> = None;
    for t in ["1/2", "-1/3"] {
        match v0_case_check(cap, &parse_rat(t).unwrap(), &mut ctx, eval_tol, cfg.max_cutoff) {
            Ok(d) => worst = worst.max(d),
            Err(e) => err = Some(format!("t={t}: {e}")),
        }
    }
    records.push(match err {
        Some(e) => failure("genfun/v0_case", serde_json::json!({"cap": cap}), e),
        None => numeric("genfun/v0_case", serde_json::json!({"cap": cap}), worst, 1e-5),
    });

    let cap = w.min(6);
    let mut worst: f64 = 0.0;
    let mut err: Option<String> = None;
    'w0: for i in 1..cap {
        for j in 1..=cap - i {
            for t in ["1/2", "1"] {
                let t_val = parse_rat(t).unwrap();
                let mut parts = vec![i + 1];
                parts.extend(std::iter::repeat(1).take(j as usize - 1));
                let direct =
                    eval_tmzv(&Index::new(parts).unwrap(), &t_val, &mut ctx, eval_tol, cfg.max_cutoff);
                let formula = w0_height_one(i, j, &t_val, eval_tol);
                match (direct, formula) {
                    (Ok(d), Ok(f)) => worst = worst.max((d.value_f64() - f.value_f64()).abs()),
                    (Err(e), _) | (_, Err(e)) => {
                        err = Some(format!("(i,j,t)=({i},{j},{t}): {e}"));
                        break 'w0;
                    }
                }
            }
        }
    }
    records.push(match err {
        Some(e) => failure("genfun/w0_height_one", serde_json::json!({"cap": cap}), e),
        None => numeric(
            "genfun/w0_height_one",
            serde_json::json!({"max_i_plus_j": cap}),
            worst,
            1e-5,
        ),
    });

    let cap = w.min(7) as usize;
    records.push(
        match adz_check(cap, &mut ctx, eval_tol, cfg.max_cutoff) {
            Ok(d) => numeric("genfun/adz", serde_json::json!({"cap": cap}), d, 1e-5),
            Err(e) => failure("genfun/adz", serde_json::json!({"cap": cap}), e),
        },
    );
}

fn hyp_suite(cfg: &RunConfig, records: &mut Vec<Record>) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut ok = true;
    let mut first_err = String::new();
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
                Err(e) => {
                    ok = false;
                    first_err = format!("n={n}, x={x}, y1={y1}, y2={y2}: {e}");
                    break;
                }
            }
        }
        ok &= done == 40;
    }
    records.push(exact(
        "hyp/appendix_b_identity",
        serde_json::json!({"samples_per_n": 40, "max_n": 6, "error": first_err}),
        ok,
    ));

    let mut ok = true;
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
    records.push(exact(
        "hyp/wronskian_duality",
        serde_json::json!({"samples": 5, "order": 25}),
        ok,
    ));
}
