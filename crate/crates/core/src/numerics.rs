//! High-precision numeric evaluation: Riemann zeta via Euler-Maclaurin,
//! MZVs via nested-sum dynamic programming with tail extrapolation, t-MZVs
//! and symbol combinations, exact polylogarithm series, and hypergeometric
//! series at and inside the unit disc.

use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::accel::{extrapolate, extrapolate_bf, geometric_nodes, BasisTerm};
use crate::bigfloat::{to_f64, Ctx, BF};
use crate::coeff::{binomial, rat_int, Rat, TPoly};
use crate::error::{Error, Result};
use crate::word::Index;
use crate::zeta::{tmzv_expand, ZetaCombination};

#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: BF,
    /// Heuristic convergence estimate, not a proven bound.
    pub error_bound: BF,
    pub cutoff_used: u64,
}

impl EvalResult {
    pub fn value_f64(&self) -> f64 {
        to_f64(&self.value)
    }

    pub fn error_f64(&self) -> f64 {
        to_f64(&self.error_bound)
    }
}

/// Exact Bernoulli numbers B_0..B_max via the defining recurrence.
pub fn bernoulli_numbers(max: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(max + 1);
    for m in 0..=max {
        if m == 0 {
            b.push(Rat::one());
            continue;
        }
        // sum_{j=0}^{m} binom(m+1, j) B_j = 0
        let mut acc = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += binomial((m + 1) as u64, j as u64) * bj;
        }
        b.push(-acc / binomial((m + 1) as u64, m as u64));
    }
    b
}

/// Riemann zeta via Euler-Maclaurin: tail corrections after an explicit
/// partial sum. Accuracy far exceeds every tolerance used downstream.
pub fn zeta_riemann(k: u32, ctx: &mut Ctx) -> Result<EvalResult> {
    if k < 2 {
        return Err(Error::Divergent(format!("zeta({k})")));
    }
    const N: u64 = 400;
    const P: usize = 24;
    static BERN: Lazy<Vec<Rat>> = Lazy::new(|| bernoulli_numbers(2 * P + 2));

    let mut sum = ctx.zero();
    for m in 1..=N {
        let term = ctx.recip(&ctx.powi(&ctx.from_i64(m as i64), k as usize));
        sum = ctx.add(&sum, &term);
    }
    let nf = ctx.from_i64(N as i64);
    // + N^{1-k}/(k-1) - N^{-k}/2
    let n_pow_k = ctx.powi(&nf, k as usize);
    let t1 = ctx.div(
        &ctx.div(&nf, &n_pow_k),
        &ctx.from_i64((k - 1) as i64),
    );
    sum = ctx.add(&sum, &t1);
    let t2 = ctx.div(&ctx.recip(&n_pow_k), &ctx.from_i64(2));
    sum = ctx.sub(&sum, &t2);
    // + sum_i B_{2i}/(2i)! (k)_{2i-1} N^{-k-2i+1}
    let mut last = ctx.zero();
    for i in 1..=P {
        let mut coeff = BERN[2 * i].clone();
        let mut fact = Rat::one();
        for j in 1..=2 * i {
            fact *= rat_int(j as i64);
        }
        coeff /= fact;
        for j in 0..2 * i - 1 {
            coeff *= rat_int((k as usize + j) as i64);
        }
        let pw = ctx.powi(&nf, k as usize + 2 * i - 1);
        last = ctx.div(&ctx.from_rat(&coeff), &pw);
        sum = ctx.add(&sum, &last);
    }
    Ok(EvalResult {
        value: sum,
        error_bound: ctx.abs(&last),
        cutoff_used: N,
    })
}

/// Partial sums of the nested MZV series at the requested cutoffs (sorted
/// ascending), via prefix-sum dynamic programming.
pub fn mzv_partial_sums(k: &Index, cutoffs: &[u64], ctx: &Ctx) -> Vec<BF> {
    let parts = k.parts();
    let depth = parts.len();
    let max = *cutoffs.last().expect("at least one cutoff");
    // prefix[i] = sum_{m' <= current m} B_i(m'), where B_i is the sum over
    // chains starting at level i with largest variable fixed.
    let mut prefix: Vec<BF> = vec![ctx.zero(); depth];
    let mut out = Vec::with_capacity(cutoffs.len());
    let mut next = 0;
    for m in 1..=max {
        let mf = ctx.from_i64(m as i64);
        let inv_pows: Vec<BF> = parts
            .iter()
            .map(|&p| ctx.recip(&ctx.powi(&mf, p as usize)))
            .collect();
        // compute new level values against the prefixes at m-1, deepest first
        let mut level_vals: Vec<BF> = vec![ctx.zero(); depth];
        for i in (0..depth).rev() {
            level_vals[i] = if i + 1 == depth {
                inv_pows[i].clone()
            } else {
                ctx.mul(&inv_pows[i], &prefix[i + 1])
            };
        }
        for i in 0..depth {
            prefix[i] = ctx.add(&prefix[i], &level_vals[i]);
        }
        while next < cutoffs.len() && cutoffs[next] == m {
            out.push(prefix[0].clone());
            next += 1;
        }
    }
    out
}

static MZV_CACHE: Lazy<Mutex<HashMap<(Vec<u32>, usize), (BF, BF, u64)>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// MZV evaluation: partial sums at geometrically spaced cutoffs, tail model
/// N^{-m} ln(N)^j fitted by extrapolation, the whole schedule doubled until
/// two successive extrapolated limits agree to tol/4.
pub fn eval_mzv(k: &Index, ctx: &mut Ctx, tol: f64, max_cutoff: u64) -> Result<EvalResult> {
    if !k.is_admissible() {
        return Err(Error::Divergent(k.to_string()));
    }
    let key = (k.parts().to_vec(), ctx.prec);
    if let Some((v, e, c)) = MZV_CACHE.lock().unwrap().get(&key) {
        return Ok(EvalResult {
            value: v.clone(),
            error_bound: e.clone(),
            cutoff_used: *c,
        });
    }
    let result = if k.depth() == 1 {
        zeta_riemann(k.parts()[0], ctx)?
    } else {
        eval_mzv_extrapolated(k, ctx, tol, max_cutoff)?
    };
    MZV_CACHE.lock().unwrap().insert(
        key,
        (
            result.value.clone(),
            result.error_bound.clone(),
            result.cutoff_used,
        ),
    );
    Ok(result)
}

fn mzv_basis(k: &Index, extra_orders: usize) -> Vec<BasisTerm> {
    let k1 = k.parts()[0] as i64;
    let depth = k.depth() as u32;
    let mut basis = vec![BasisTerm::constant()];
    for r in 0..=extra_orders as i64 {
        for j in 0..depth {
            basis.push(BasisTerm::log_pow(rat_int(-(k1 - 1 + r)), j));
        }
    }
    basis
}

fn eval_mzv_extrapolated(k: &Index, ctx: &mut Ctx, tol: f64, max_cutoff: u64) -> Result<EvalResult> {
    let basis = mzv_basis(k, 4);
    let quarter_tol = ctx.from_f64(tol / 4.0);
    let mut cutoff = 800u64.min(max_cutoff.max(64));
    let mut prev: Option<BF> = None;
    loop {
        let nodes_at = geometric_nodes(cutoff / 10, cutoff, basis.len());
        let sums = mzv_partial_sums(k, &nodes_at, ctx);
        let nodes: Vec<(u64, BF)> = nodes_at.into_iter().zip(sums).collect();
        let limit = extrapolate(ctx, &nodes, &basis)?;
        if let Some(p) = prev {
            let diff = ctx.abs(&ctx.sub(&limit, &p));
            if ctx.abs_lt(&diff, &quarter_tol) {
                return Ok(EvalResult {
                    value: limit,
                    error_bound: diff,
                    cutoff_used: cutoff,
                });
            }
        }
        if cutoff >= max_cutoff {
            return Err(Error::Convergence {
                last: to_f64(&limit),
            });
        }
        prev = Some(limit);
        cutoff = (cutoff * 2).min(max_cutoff);
    }
}

/// t-MZV evaluation through the box-filling expansion at t = t_val.
pub fn eval_tmzv(
    k: &Index,
    t_val: &Rat,
    ctx: &mut Ctx,
    tol: f64,
    max_cutoff: u64,
) -> Result<EvalResult> {
    let expansion = tmzv_expand(k)?;
    eval_combination(&expansion, t_val, &Rat::zero(), ctx, tol, max_cutoff)
}

/// Numeric value of a symbol combination at rational t and T.
pub fn eval_combination(
    c: &ZetaCombination,
    t_val: &Rat,
    big_t_val: &Rat,
    ctx: &mut Ctx,
    tol: f64,
    max_cutoff: u64,
) -> Result<EvalResult> {
    let mut value = ctx.zero();
    let mut bound = ctx.zero();
    let mut cutoff = 0;
    for (sym, coeff) in c.iter() {
        let weight = coeff.eval(t_val, big_t_val);
        if weight.is_zero() {
            continue;
        }
        let wf = ctx.from_rat(&weight);
        if sym.is_one() {
            value = ctx.add(&value, &wf);
            continue;
        }
        let idx = sym.index().unwrap();
        let ev = eval_mzv(&idx, ctx, tol, max_cutoff)?;
        value = ctx.add(&value, &ctx.mul(&wf, &ev.value));
        bound = ctx.add(&bound, &ctx.mul(&ctx.abs(&wf), &ev.error_bound));
        cutoff = cutoff.max(ev.cutoff_used);
    }
    Ok(EvalResult {
        value,
        error_bound: bound,
        cutoff_used: cutoff,
    })
}

/// Exact truncated z-expansion of the interpolated multiple polylogarithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolylogSeries {
    pub index: Index,
    /// Entry m = coefficient of z^m; entry 0 is zero.
    pub coeffs: Vec<TPoly>,
}

/// Coefficients of Li_k(t,z) through z^order: sum over box fillings p of
/// t^{n-dep(p)} times the z-coefficients of the plain multiple
/// polylogarithm of p. Admissibility is not required.
pub fn polylog_series(k: &Index, order: usize) -> PolylogSeries {
    assert!(order >= 1);
    let parts = k.parts();
    let n = parts.len();
    let mut coeffs = vec![TPoly::zero(); order + 1];
    for mask in 0u64..(1u64 << (n - 1)) {
        let mut merged: Vec<u32> = vec![parts[0]];
        for i in 1..n {
            if (mask >> (i - 1)) & 1 == 1 {
                *merged.last_mut().unwrap() += parts[i];
            } else {
                merged.push(parts[i]);
            }
        }
        let t_pow = n - merged.len();
        let plain = plain_polylog_coeffs(&merged, order);
        for (m, c) in plain.into_iter().enumerate() {
            if !c.is_zero() {
                coeffs[m] = coeffs[m].add(&TPoly::monomial(c, t_pow));
            }
        }
    }
    PolylogSeries {
        index: k.clone(),
        coeffs,
    }
}

/// z-coefficients of the plain multiple polylogarithm of an index, exact.
fn plain_polylog_coeffs(parts: &[u32], order: usize) -> Vec<Rat> {
    let depth = parts.len();
    // prefix[i][m] analog of the BF evaluator, exact over Q
    let mut prefix: Vec<Rat> = vec![Rat::zero(); depth];
    let mut out = vec![Rat::zero(); order + 1];
    for m in 1..=order {
        let mut level_vals: Vec<Rat> = vec![Rat::zero(); depth];
        for i in (0..depth).rev() {
            let inv = Rat::one() / Rat::from_integer(num_bigint::BigInt::from(m)).pow(parts[i] as i32);
            level_vals[i] = if i + 1 == depth {
                inv
            } else {
                &inv * &prefix[i + 1]
            };
        }
        for i in 0..depth {
            prefix[i] += level_vals[i].clone();
        }
        out[m] = level_vals[0].clone();
    }
    out
}

fn is_nonpositive_integer(r: &Rat) -> bool {
    r.is_integer() && !r.is_positive()
}

fn pochhammer_poly_degree(r: &Rat) -> Option<usize> {
    // (r)_n vanishes for n > -r when r is a nonpositive integer
    if is_nonpositive_integer(r) {
        (-r.numer().clone()).to_usize()
    } else {
        None
    }
}

/// Gauss hypergeometric F(a,b;c;z) for rational parameters: finite sum when
/// a or b is a nonpositive integer, direct summation for |z| < 1, and
/// tail-extrapolated summation at z = 1 when c - a - b > 0.
pub fn gauss_2f1(a: &Rat, b: &Rat, c: &Rat, z: &Rat, ctx: &mut Ctx, tol: f64) -> Result<EvalResult> {
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!("2F1 lower parameter {c}")));
    }
    if let Some(stop) = pochhammer_poly_degree(a).or_else(|| pochhammer_poly_degree(b)) {
        // polynomial case, exact
        let mut term = Rat::one();
        let mut sum = Rat::one();
        for n in 0..=stop {
            let nn = rat_int(n as i64);
            term = term * (a + &nn) * (b + &nn) * z / ((&nn + Rat::one()) * (c + &nn));
            sum += term.clone();
        }
        return Ok(EvalResult {
            value: ctx.from_rat(&sum),
            error_bound: ctx.zero(),
            cutoff_used: stop as u64 + 1,
        });
    }
    let abs_z = z.abs();
    if abs_z < Rat::one() {
        let zf = ctx.from_rat(z);
        let mut term = ctx.from_i64(1);
        let mut sum = ctx.from_i64(1);
        let params = 4.0 * (rat_f64(a).abs() + rat_f64(b).abs() + rat_f64(c).abs() + 10.0);
        let r = (1.0 + rat_f64(&abs_z)) / 2.0;
        let cut = ctx.from_f64(tol * (1.0 - r) / 2.0);
        let mut n = 0u64;
        loop {
            let nf = ctx.from_i64(n as i64);
            let num = ctx.mul(
                &ctx.add(&ctx.from_rat(a), &nf),
                &ctx.add(&ctx.from_rat(b), &nf),
            );
            let den = ctx.mul(
                &ctx.from_i64((n + 1) as i64),
                &ctx.add(&ctx.from_rat(c), &nf),
            );
            term = ctx.mul(&ctx.div(&ctx.mul(&term, &num), &den), &zf);
            sum = ctx.add(&sum, &term);
            n += 1;
            if n as f64 > params && ctx.abs_lt(&term, &cut) {
                break;
            }
            if n > 10_000_000 {
                return Err(Error::Convergence { last: to_f64(&sum) });
            }
        }
        let bound = ctx.div(
            &ctx.abs(&term),
            &ctx.from_f64(1.0 - r),
        );
        return Ok(EvalResult {
            value: sum,
            error_bound: bound,
            cutoff_used: n,
        });
    }
    if z.is_one() {
        let s = c - a - b;
        if !s.is_positive() {
            return Err(Error::Divergent(format!("2F1 at 1 with c-a-b = {s}")));
        }
        let terms = HypTerms::new(vec![a.clone(), b.clone()], vec![c.clone()], ctx);
        return sum_with_power_tail(terms, &(-s), ctx, tol);
    }
    Err(Error::Domain(format!("2F1 outside |z| < 1: z = {z}")))
}

/// 3F2 at z = 1 with rational parameters: converges when
/// s = b1 + b2 - a1 - a2 - a3 > 0.
pub fn f3f2_at1(
    a1: &Rat,
    a2: &Rat,
    a3: &Rat,
    b1: &Rat,
    b2: &Rat,
    ctx: &mut Ctx,
    tol: f64,
) -> Result<EvalResult> {
    for b in [b1, b2] {
        if is_nonpositive_integer(b) {
            return Err(Error::Pole(format!("3F2 lower parameter {b}")));
        }
    }
    if let Some(stop) = [a1, a2, a3].iter().find_map(|&a| pochhammer_poly_degree(a)) {
        let mut term = Rat::one();
        let mut sum = Rat::one();
        for n in 0..=stop {
            let nn = rat_int(n as i64);
            term = term * (a1 + &nn) * (a2 + &nn) * (a3 + &nn)
                / ((&nn + Rat::one()) * (b1 + &nn) * (b2 + &nn));
            sum += term.clone();
        }
        return Ok(EvalResult {
            value: ctx.from_rat(&sum),
            error_bound: ctx.zero(),
            cutoff_used: stop as u64 + 1,
        });
    }
    let s = b1 + b2 - a1 - a2 - a3;
    if !s.is_positive() {
        return Err(Error::Divergent(format!("3F2 at 1 with excess {s}")));
    }
    let terms = HypTerms::new(
        vec![a1.clone(), a2.clone(), a3.clone()],
        vec![b1.clone(), b2.clone()],
        ctx,
    );
    sum_with_power_tail(terms, &(-s), ctx, tol)
}

/// Term generator for a hypergeometric series at z = 1.
struct HypTerms {
    upper: Vec<BF>,
    lower: Vec<BF>,
    term: BF,
    n: u64,
}

impl HypTerms {
    fn new(upper: Vec<Rat>, lower: Vec<Rat>, ctx: &Ctx) -> HypTerms {
        HypTerms {
            upper: upper.iter().map(|r| ctx.from_rat(r)).collect(),
            lower: lower.iter().map(|r| ctx.from_rat(r)).collect(),
            term: ctx.from_i64(1),
            n: 0,
        }
    }

    /// Term for the current n, then advances.
    fn next_term(&mut self, ctx: &Ctx) -> BF {
        let current = self.term.clone();
        let nf = ctx.from_i64(self.n as i64);
        let mut num = ctx.from_i64(1);
        for a in &self.upper {
            num = ctx.mul(&num, &ctx.add(a, &nf));
        }
        let mut den = ctx.from_i64((self.n + 1) as i64);
        for b in &self.lower {
            den = ctx.mul(&den, &ctx.add(b, &nf));
        }
        self.term = ctx.div(&ctx.mul(&self.term, &num), &den);
        self.n += 1;
        current
    }
}

/// Sums Σ term_n where term_n ~ C n^{tail_exp - 1} (tail of the partial sum
/// then decays like N^{tail_exp}), using geometric nodes and a power-basis
/// tail fit. tail_exp must be negative.
fn sum_with_power_tail(
    mut terms: HypTerms,
    tail_exp: &Rat,
    ctx: &mut Ctx,
    tol: f64,
) -> Result<EvalResult> {
    let exponents: Vec<BF> = (0..6)
        .map(|r| ctx.from_rat(&(tail_exp - rat_int(r))))
        .collect();
    sum_with_tail_bf(ctx, &mut |c| terms.next_term(c), 1600, &exponents, tol)
}

/// Shared tail-fitted summation: accumulates `max` terms, fits the model
/// constant + Σ c_r N^{e_r} at geometric nodes, and probes the error with a
/// reduced fit on fewer nodes. Exponents may be irrational (given as BF).
pub(crate) fn sum_with_tail_bf(
    ctx: &mut Ctx,
    term: &mut dyn FnMut(&Ctx) -> BF,
    max: u64,
    exponents: &[BF],
    tol: f64,
) -> Result<EvalResult> {
    let mut basis: Vec<(BF, u32)> = vec![(ctx.zero(), 0)];
    basis.extend(exponents.iter().map(|e| (e.clone(), 0)));
    let node_points = geometric_nodes(max / 10, max, basis.len());
    let mut sum = ctx.zero();
    let mut nodes = Vec::new();
    let mut next = 0;
    for n in 0..max {
        let t = term(ctx);
        sum = ctx.add(&sum, &t);
        if next < node_points.len() && node_points[next] == n + 1 {
            nodes.push((n + 1, sum.clone()));
            next += 1;
        }
    }
    // reduced fit on the early nodes as the error probe
    let cut = nodes.len().saturating_sub(2).max(2);
    let limit = extrapolate_bf(ctx, &nodes, &basis, 0)?;
    let reduced = extrapolate_bf(ctx, &nodes[..cut], &basis[..cut], 0)?;
    let bound = ctx.abs(&ctx.sub(&limit, &reduced));
    let quarter = ctx.from_f64(tol / 4.0);
    if !ctx.abs_lt(&bound, &quarter) {
        return Err(Error::Convergence {
            last: to_f64(&limit),
        });
    }
    Ok(EvalResult {
        value: limit,
        error_bound: bound,
        cutoff_used: max,
    })
}

fn rat_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Lanczos approximation of Γ(x): a reference oracle used only by
/// cross-check tests, never inside the shipped evaluators.
pub fn gamma_f64(x: f64) -> f64 {
    const G: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma_f64(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut a = G[0];
        let t = x + 7.5;
        for (i, &g) in G.iter().enumerate().skip(1) {
            a += g / (x + i as f64);
        }
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::parse_rat;

    const TOL: f64 = 1e-6;
    const MAX: u64 = 1 << 20;

    fn idx(s: &str) -> Index {
        Index::parse(s).unwrap()
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[2], parse_rat("1/6").unwrap());
        assert_eq!(b[3], Rat::zero());
        assert_eq!(b[4], parse_rat("-1/30").unwrap());
        assert_eq!(b[8], parse_rat("-1/30").unwrap());
    }

    #[test]
    fn zeta_classics() {
        let mut ctx = Ctx::new(320);
        let z2 = zeta_riemann(2, &mut ctx).unwrap().value_f64();
        assert!((z2 - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
        let z4 = zeta_riemann(4, &mut ctx).unwrap().value_f64();
        assert!((z4 - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-14);
        let z3 = zeta_riemann(3, &mut ctx).unwrap().value_f64();
        assert!((z3 - 1.2020569031595942).abs() < 1e-14);
        assert!(zeta_riemann(1, &mut ctx).is_err());
    }

    #[test]
    fn mzv_two_one_is_zeta_three() {
        let mut ctx = Ctx::new(768);
        let v = eval_mzv(&idx("2,1"), &mut ctx, TOL, MAX).unwrap().value_f64();
        let z3 = zeta_riemann(3, &mut ctx).unwrap().value_f64();
        assert!((v - z3).abs() < 1e-9, "got {v}, want {z3}");
    }

    #[test]
    fn mzv_three_one() {
        let mut ctx = Ctx::new(768);
        let v = eval_mzv(&idx("3,1"), &mut ctx, TOL, MAX).unwrap().value_f64();
        let z4 = zeta_riemann(4, &mut ctx).unwrap().value_f64();
        assert!((v - z4 / 4.0).abs() < 1e-9, "got {v}, want {}", z4 / 4.0);
    }

    #[test]
    fn mzv_trailing_ones() {
        // zeta(2,1,1) = zeta(4)
        let mut ctx = Ctx::new(768);
        let v = eval_mzv(&idx("2,1,1"), &mut ctx, TOL, MAX).unwrap().value_f64();
        let z4 = zeta_riemann(4, &mut ctx).unwrap().value_f64();
        assert!((v - z4).abs() < 1e-8, "got {v}, want {z4}");
    }

    #[test]
    fn mzv_rejects_non_admissible() {
        let mut ctx = Ctx::new(256);
        assert!(eval_mzv(&idx("1,2"), &mut ctx, TOL, MAX).is_err());
    }

    #[test]
    fn tmzv_star_two_one() {
        // zeta^1(2,1) = 2 zeta(3)
        let mut ctx = Ctx::new(768);
        let v = eval_tmzv(&idx("2,1"), &Rat::one(), &mut ctx, TOL, MAX)
            .unwrap()
            .value_f64();
        let z3 = zeta_riemann(3, &mut ctx).unwrap().value_f64();
        assert!((v - 2.0 * z3).abs() < 1e-8);
    }

    #[test]
    fn polylog_li2_coeffs() {
        let s = polylog_series(&idx("2"), 3);
        assert_eq!(s.coeffs[1], TPoly::one());
        assert_eq!(s.coeffs[2], TPoly::constant(parse_rat("1/4").unwrap()));
        assert_eq!(s.coeffs[3], TPoly::constant(parse_rat("1/9").unwrap()));
    }

    #[test]
    fn polylog_one_one_coeffs() {
        // coefficient of z^3 in Li_{1,1}(t,z): (1/3)(1 + 1/2) + t/9
        let s = polylog_series(&idx("1,1"), 3);
        let expected = TPoly::from_coeffs(vec![
            parse_rat("1/2").unwrap(),
            parse_rat("1/9").unwrap(),
        ]);
        assert_eq!(s.coeffs[3], expected);
    }

    #[test]
    fn gauss_2f1_log_value() {
        let mut ctx = Ctx::new(320);
        let one = Rat::one();
        let two = rat_int(2);
        let half = parse_rat("1/2").unwrap();
        let v = gauss_2f1(&one, &one, &two, &half, &mut ctx, 1e-10)
            .unwrap()
            .value_f64();
        assert!((v - 2.0 * 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn gauss_2f1_polynomial_case() {
        let mut ctx = Ctx::new(192);
        let v = gauss_2f1(
            &Rat::zero(),
            &parse_rat("7/3").unwrap(),
            &parse_rat("1/2").unwrap(),
            &parse_rat("9/10").unwrap(),
            &mut ctx,
            1e-10,
        )
        .unwrap();
        assert_eq!(v.value_f64(), 1.0);
    }

    #[test]
    fn gauss_summation_at_one() {
        let mut ctx = Ctx::new(512);
        let a = parse_rat("1/3").unwrap();
        let b = parse_rat("1/5").unwrap();
        let c = parse_rat("3/2").unwrap();
        let v = gauss_2f1(&a, &b, &c, &Rat::one(), &mut ctx, 1e-10)
            .unwrap()
            .value_f64();
        let want = gamma_f64(1.5) * gamma_f64(1.5 - 1.0 / 3.0 - 0.2)
            / (gamma_f64(1.5 - 1.0 / 3.0) * gamma_f64(1.3));
        assert!((v - want).abs() < 1e-8, "got {v}, want {want}");
    }

    #[test]
    fn f3f2_collapses_to_2f1() {
        let mut ctx = Ctx::new(512);
        let a1 = parse_rat("1/3").unwrap();
        let a2 = parse_rat("1/5").unwrap();
        let b2 = parse_rat("3/2").unwrap();
        // a3 = b1 cancels
        let v3 = f3f2_at1(&a1, &a2, &parse_rat("4/7").unwrap(), &parse_rat("4/7").unwrap(), &b2, &mut ctx, 1e-9)
            .unwrap()
            .value_f64();
        let v2 = gauss_2f1(&a1, &a2, &b2, &Rat::one(), &mut ctx, 1e-10)
            .unwrap()
            .value_f64();
        assert!((v3 - v2).abs() < 1e-8, "got {v3}, want {v2}");
    }

    #[test]
    fn f3f2_zero_upper_parameter() {
        let mut ctx = Ctx::new(192);
        let v = f3f2_at1(
            &Rat::zero(),
            &parse_rat("1/3").unwrap(),
            &parse_rat("1/5").unwrap(),
            &parse_rat("7/2").unwrap(),
            &parse_rat("9/2").unwrap(),
            &mut ctx,
            1e-9,
        )
        .unwrap();
        assert_eq!(v.value_f64(), 1.0);
    }

    #[test]
    fn doubling_estimates_shrink() {
        let ctx = Ctx::new(320);
        let k = idx("2,1,1");
        let cutoffs = [256u64, 512, 1024, 2048];
        let sums = mzv_partial_sums(&k, &cutoffs, &ctx);
        let mut diffs = Vec::new();
        for w in sums.windows(2) {
            diffs.push(to_f64(&ctx.abs(&ctx.sub(&w[1], &w[0]))));
        }
        assert!(diffs.windows(2).all(|d| d[1] <= d[0]), "{diffs:?}");
    }
}
