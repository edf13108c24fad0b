//! The analytic layer for sums of fixed weight, depth and height: the
//! Fuchsian ODE and its power-series solution, brute-force sums, an exact
//! harmonic-sum reduction of the generating function, the 3F2 expression,
//! the uv=w^2 / v=0 / w=0 special cases, and the exact hypergeometric
//! identities behind the Wronskian computation.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::accel::BasisTerm;
use crate::bigfloat::{to_f64, Ctx, BF};
use crate::coeff::{binomial, rat_int, Rat, TPoly, TtPoly};
use crate::error::{Error, Result};
use crate::numerics::{
    eval_combination, polylog_series, sum_with_tail_bf, zeta_riemann, EvalResult,
};
use crate::relations::{Claim, Relation};
use crate::series::{MSeries, StElement};

use crate::word::{Element, Index, Word};
use crate::zeta::{tmzv_expand, ZetaCombination, ZetaSym};

/// Weight/depth/height triple addressing a sum of t-MZVs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SumTriple {
    pub k: u32,
    pub n: usize,
    pub s: usize,
}

impl SumTriple {
    pub fn new(k: u32, n: usize, s: usize) -> Result<SumTriple> {
        if s >= 1 && n >= s && k as usize >= n + s {
            Ok(SumTriple { k, n, s })
        } else {
            Err(Error::Domain(format!(
                "sum triple needs k >= n+s, n >= s >= 1, got ({k},{n},{s})"
            )))
        }
    }
}

fn compositions(k: u32, n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    if (n as u32) > k {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=k - n as u32 + 1 {
        for mut rest in compositions(k - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn height_of(parts: &[u32]) -> usize {
    parts.iter().filter(|&&p| p >= 2).count()
}

/// All indices (not necessarily admissible) of the given weight, depth and
/// height.
pub fn indices_of(k: u32, n: usize, s: usize, admissible_only: bool) -> Vec<Index> {
    compositions(k, n)
        .into_iter()
        .filter(|p| height_of(p) == s && (!admissible_only || p[0] >= 2))
        .map(|p| Index::new(p).unwrap())
        .collect()
}

/// X_0(k,n,s): the sum of expanded t-MZVs over all admissible indices of
/// weight k, depth n and height s.
pub fn x0_bruteforce(triple: &SumTriple) -> Result<ZetaCombination> {
    SumTriple::new(triple.k, triple.n, triple.s)?;
    let mut acc = ZetaCombination::zero();
    for idx in indices_of(triple.k, triple.n, triple.s, true) {
        acc = acc.add(&tmzv_expand(&idx)?);
    }
    Ok(acc)
}

fn an_denominator(m: u64, u: &Rat, v: &Rat, w2: &Rat, t: &Rat) -> Rat {
    let mf = rat_int(m as i64);
    (&mf - u) * (&mf - v * t) - t * w2
}

fn an_numerator(m: u64, u: &Rat, v: &Rat, w2: &Rat, t: &Rat) -> Rat {
    // factor carried from a_{m-1}: (m-1)(m-1-u+(1-t)v) - (1-t)(uv-W)
    let p = rat_int(m as i64 - 1);
    let one = Rat::one();
    &p * (&p - u + (&one - t) * v) - (&one - t) * (u * v - w2)
}

/// a_n of the power-series solution, evaluated at rational (u, v, W, t).
pub fn an_value(n: u64, u: &Rat, v: &Rat, w2: &Rat, t: &Rat) -> Result<Rat> {
    assert!(n >= 1);
    let mut a = Rat::one();
    for m in 1..=n {
        let den = an_denominator(m, u, v, w2, t);
        if den.is_zero() {
            return Err(Error::Pole(format!("a_n denominator vanishes at n = {m}")));
        }
        if m > 1 {
            a = a * an_numerator(m, u, v, w2, t);
        }
        a = a / den;
    }
    Ok(a)
}

/// Residual coefficients of z^1..z^order after substituting the recurrence
/// solution into the differential equation; all must vanish.
pub fn ode_residual(u: &Rat, v: &Rat, w: &Rat, t: &Rat, order: usize) -> Result<Vec<Rat>> {
    assert!(order >= 1);
    let w2 = w * w;
    let mut a = vec![Rat::zero(); order + 1];
    for m in 1..=order as u64 {
        let den = an_denominator(m, u, v, &w2, t);
        if den.is_zero() {
            return Err(Error::Pole(format!("degenerate exponent at n = {m}")));
        }
        a[m as usize] = if m == 1 {
            Rat::one() / den
        } else {
            &a[m as usize - 1] * an_numerator(m, u, v, &w2, t) / den
        };
    }
    let one = Rat::one();
    let phi0 = &one - u - v * t; // coefficient of f' z-part
    let uvw = u * v - &w2;
    let mut res = Vec::with_capacity(order);
    for m in 1..=order {
        let mf = rat_int(m as i64);
        let pf = rat_int(m as i64 - 1);
        let mut r = &a[m]
            * (&mf * (&mf - &one) + &phi0 * &mf + t * &uvw);
        r = r - &a[m - 1]
            * (&pf * (&pf - &one) + (&phi0 + v) * &pf - (&one - t) * &uvw);
        if m == 1 {
            r = r - &one;
        }
        res.push(r);
    }
    Ok(res)
}

fn scalar_el(p: TPoly) -> StElement {
    StElement(Element::term(Word::empty(), p))
}

type HSeries = MSeries<StElement>;

fn two_series<C: crate::series::SeriesCoeff>(like: &MSeries<C>) -> MSeries<C> {
    let mut s = like.sub(like);
    let nvars = like.nvars();
    s.add_term(vec![0; nvars], C::one().add(&C::one()));
    s
}

/// Power sums of a root pair given its elementary symmetric functions:
/// p_0 = 2, p_1 = e1, p_j = e1 p_{j-1} - e2 p_{j-2}.
fn newton_power_sums<C: crate::series::SeriesCoeff>(
    e1: &MSeries<C>,
    e2: &MSeries<C>,
    cap: usize,
) -> Vec<MSeries<C>> {
    let mut p: Vec<MSeries<C>> = Vec::with_capacity(cap + 1);
    p.push(two_series(e1));
    if cap >= 1 {
        p.push(e1.clone());
    }
    for j in 2..=cap {
        let a = e1.mul(&p[j - 1]);
        let b = e2.mul(&p[j - 2]);
        p.push(a.sub(&b));
    }
    p
}

/// Complete homogeneous symmetric functions h_r of a root pair:
/// h_0 = 1, h_1 = e1, h_r = e1 h_{r-1} - e2 h_{r-2}.
fn homogeneous_sums<C: crate::series::SeriesCoeff>(
    e1: &MSeries<C>,
    e2: &MSeries<C>,
    cap: usize,
) -> Vec<MSeries<C>> {
    let mut h: Vec<MSeries<C>> = Vec::with_capacity(cap + 1);
    let mut one = e1.sub(e1);
    one.add_term(vec![0; e1.nvars()], C::one());
    h.push(one);
    if cap >= 1 {
        h.push(e1.clone());
    }
    for r in 2..=cap {
        let a = e1.mul(&h[r - 1]);
        let b = e2.mul(&h[r - 2]);
        h.push(a.sub(&b));
    }
    h
}

/// The generating function of the X_0 sums as an exact object: the
/// coefficient of u^a v^b W^c is a combination of MZV symbols of weight
/// a + b + 2c + 2 with Q[t] coefficients.
pub struct Phi0Series {
    cap: usize,
    terms: BTreeMap<(usize, usize, usize), ZetaCombination>,
}

impl Phi0Series {
    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeff(&self, a: usize, b: usize, c: usize) -> ZetaCombination {
        self.terms
            .get(&(a, b, c))
            .cloned()
            .unwrap_or_else(ZetaCombination::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize), &ZetaCombination)> {
        self.terms.iter()
    }
}

/// Exact expansion of Σ a_n: writing
/// a_n = [Π_{m<n}(m+γ1)(m+γ2)] / [Π_{m<=n}(m-α)(m-β)]
///     = (1/((n-α)(n-β))) exp(Σ_j (q_j/j) H_j(n-1)),
/// with q_j = (-1)^{j+1} p_j(γ) + p_j(α,β), expanding the prefactor as
/// Σ_r h_r(α,β) n^{-2-r}, and multiplying harmonic sums by the stuffle
/// product, every monomial coefficient becomes an exact combination of MZV
/// symbols ζ(2+r, w).
pub fn phi0_series(cap: usize) -> Phi0Series {
    let wts = [1usize, 1, 2];
    let mono = |e: [usize; 3], p: TPoly| -> HSeries {
        MSeries::monomial(&wts, cap, e.to_vec(), scalar_el(p))
    };
    let t = TPoly::t();
    let one = TPoly::one();
    let tm1 = t.sub(&one); // t - 1
    // (α,β): e1 = u + tv, e2 = t(uv - W)
    let e1_ab = mono([1, 0, 0], one.clone()).add(&mono([0, 1, 0], t.clone()));
    let uv_w = mono([1, 1, 0], one.clone()).sub(&mono([0, 0, 1], one.clone()));
    let e2_ab = uv_w.scale_coeff(&scalar_el(t.clone()));
    // (γ1,γ2): e1 = -u - (t-1)v, e2 = (t-1)(uv - W)
    let e1_g = mono([1, 0, 0], one.neg()).add(&mono([0, 1, 0], tm1.neg()));
    let e2_g = uv_w.scale_coeff(&scalar_el(tm1));
    let p_ab = newton_power_sums(&e1_ab, &e2_ab, cap);
    let p_g = newton_power_sums(&e1_g, &e2_g, cap);

    let mut log_sum = HSeries::zero(&wts, cap);
    for j in 1..=cap {
        let q = if j % 2 == 1 {
            p_ab[j].add(&p_g[j])
        } else {
            p_ab[j].sub(&p_g[j])
        };
        let h_j = StElement(Element::from_word(
            Word::x_pow(j - 1).concat(&Word::y_pow(1)),
        ));
        log_sum = log_sum.add(&q.scale(&Rat::new(1.into(), (j as i64).into())).scale_coeff(&h_j));
    }
    let harmonic_exp = log_sum.exp();
    let h_r = homogeneous_sums(&e1_ab, &e2_ab, cap);

    let mut terms: BTreeMap<(usize, usize, usize), ZetaCombination> = BTreeMap::new();
    for (r, hr) in h_r.iter().enumerate() {
        let part = hr.mul(&harmonic_exp);
        for (expo, el) in part.iter() {
            let entry = terms
                .entry((expo[0], expo[1], expo[2]))
                .or_insert_with(ZetaCombination::zero);
            for (w, c) in el.0.iter() {
                let mut parts = vec![(2 + r) as u32];
                if !w.is_empty() {
                    parts.extend_from_slice(Index::from_word(w).unwrap().parts());
                }
                let sym = ZetaSym::from_index(&Index::new(parts).unwrap()).unwrap();
                entry.add_term(sym, TtPoly::from_tpoly(c.clone()));
            }
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Phi0Series { cap, terms }
}

type ZCoeffs = Vec<TPoly>;

fn zero_coeffs(order: usize) -> ZCoeffs {
    vec![TPoly::zero(); order + 1]
}

fn add_coeffs(acc: &mut ZCoeffs, inc: &[TPoly]) {
    for (a, b) in acc.iter_mut().zip(inc) {
        *a = a.add(b);
    }
}

/// Verifies the two derivative identities tying X and X_0 together, exactly
/// in Q[t] through z^order, for all triples of weight up to weight_cap.
pub fn x_series_system_check(weight_cap: u32, order: usize) -> Result<()> {
    let mut x: BTreeMap<(u32, usize, usize), ZCoeffs> = BTreeMap::new();
    let mut x0: BTreeMap<(u32, usize, usize), ZCoeffs> = BTreeMap::new();
    let mut one = zero_coeffs(order);
    one[0] = TPoly::one();
    x.insert((0, 0, 0), one);
    for k in 1..=weight_cap {
        for n in 1..=k as usize {
            for idx in compositions(k, n) {
                let s = height_of(&idx);
                let admissible = idx[0] >= 2;
                let series = polylog_series(&Index::new(idx).unwrap(), order);
                let entry = x.entry((k, n, s)).or_insert_with(|| zero_coeffs(order));
                add_coeffs(entry, &series.coeffs);
                if admissible {
                    let entry = x0.entry((k, n, s)).or_insert_with(|| zero_coeffs(order));
                    add_coeffs(entry, &series.coeffs);
                }
            }
        }
    }
    let zero = zero_coeffs(order);
    fn get<'a>(
        m: &'a BTreeMap<(u32, usize, usize), ZCoeffs>,
        zero: &'a ZCoeffs,
        k: i64,
        n: i64,
        s: i64,
    ) -> &'a ZCoeffs {
        if k < 0 || n < 0 || s < 0 {
            return zero;
        }
        m.get(&(k as u32, n as usize, s as usize)).unwrap_or(zero)
    }
    for k in 1..=weight_cap as i64 {
        for n in 0..=k {
            for s in 0..=n {
                if k < n + s {
                    continue;
                }
                if n >= 1 && s >= 1 {
                    // d/dz X0(k,n,s) = (1/z)(X(k-1,n,s-1) - X0(k-1,n,s-1) + X0(k-1,n,s))
                    let lhs = get(&x0, &zero, k, n, s);
                    let r1 = get(&x, &zero, k - 1, n, s - 1);
                    let r2 = get(&x0, &zero, k - 1, n, s - 1);
                    let r3 = get(&x0, &zero, k - 1, n, s);
                    for m in 0..order {
                        let l = lhs[m + 1].scale(&rat_int(m as i64 + 1));
                        let r = r1[m + 1].sub(&r2[m + 1]).add(&r3[m + 1]);
                        if l != r {
                            return Err(Error::Domain(format!(
                                "X0 derivative identity fails at (k,n,s)=({k},{n},{s}), z^{m}"
                            )));
                        }
                    }
                }
                if n >= 2 {
                    // d/dz (X - X0)(k,n,s) = (t/z + 1/(1-z)) X(k-1,n-1,s)
                    let xa = get(&x, &zero, k, n, s);
                    let xb = get(&x0, &zero, k, n, s);
                    let rr = get(&x, &zero, k - 1, n - 1, s);
                    let mut prefix = TPoly::zero();
                    for m in 0..order {
                        let l = xa[m + 1].sub(&xb[m + 1]).scale(&rat_int(m as i64 + 1));
                        prefix = prefix.add(&rr[m]);
                        let r = rr[m + 1].mul(&TPoly::t()).add(&prefix);
                        if l != r {
                            return Err(Error::Domain(format!(
                                "X-X0 derivative identity fails at (k,n,s)=({k},{n},{s}), z^{m}"
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Compares Σ a_n against the 3F2 expression at a rational sample,
/// returning the absolute difference. The sample must give real
/// characteristic roots below 1.
pub fn theorem_sum_check(
    u: &Rat,
    v: &Rat,
    w: &Rat,
    t: &Rat,
    ctx: &mut Ctx,
    tol: f64,
) -> Result<f64> {
    let w2 = w * w;
    let e1 = u + v * t;
    let e2 = t * (u * v - &w2);
    let disc = &e1 * &e1 - rat_int(4) * &e2;
    if disc.is_negative() {
        return Err(Error::Domain("complex characteristic roots".into()));
    }
    let max = 1600u64;
    for n in 1..=max {
        if an_denominator(n, u, v, &w2, t).is_zero() {
            return Err(Error::Pole(format!("a_n denominator vanishes at n = {n}")));
        }
    }
    let sqrt_disc = ctx.sqrt(&ctx.from_rat(&disc));
    let e1f = ctx.from_rat(&e1);
    let half = ctx.from_rat(&Rat::new(1.into(), 2.into()));
    let beta = ctx.mul(&ctx.sub(&e1f, &sqrt_disc), &half);
    let alpha = ctx.mul(&ctx.add(&e1f, &sqrt_disc), &half);
    if to_f64(&alpha) >= 1.0 || to_f64(&beta) >= 1.0 {
        return Err(Error::Domain("characteristic exponent not below 1".into()));
    }
    if v.is_one() {
        return Err(Error::Pole("v = 1".into()));
    }

    // left side: sum of a_n with tail ~ N^{v-1}
    let uf = ctx.from_rat(u);
    let vt = ctx.from_rat(&(v * t));
    let tw2 = ctx.from_rat(&(t * &w2));
    let u_rat = u.clone();
    let v_rat = v.clone();
    let w2_rat = w2.clone();
    let t_rat = t.clone();
    let mut a = ctx.zero();
    let mut n: u64 = 0;
    let mut lhs_term = move |c: &Ctx| -> BF {
        n += 1;
        let nf = c.from_i64(n as i64);
        let den = c.sub(&c.mul(&c.sub(&nf, &uf), &c.sub(&nf, &vt)), &tw2);
        if n == 1 {
            a = c.recip(&den);
        } else {
            let num = c.from_rat(&an_numerator(n, &u_rat, &v_rat, &w2_rat, &t_rat));
            a = c.div(&c.mul(&a, &num), &den);
        }
        a.clone()
    };
    let lhs_exps: Vec<BF> = (0..6)
        .map(|r| ctx.from_rat(&(v - rat_int(1 + r))))
        .collect();
    let lhs = sum_with_tail_bf(ctx, &mut lhs_term, max, &lhs_exps, tol)?;

    // right side: 1/((1-v)(1-β)) 3F2(1-γ1-β, 1-γ2-β, 1; 2-v, 2-β; 1),
    // the γ product taken symmetrically; term tail ~ n^{α-2}
    let g_e1 = ctx.from_rat(&(-u - (t - Rat::one()) * v));
    let g_e2 = ctx.from_rat(&((t - Rat::one()) * (u * v - &w2)));
    let two_minus_v = ctx.from_rat(&(rat_int(2) - v));
    let beta_c = beta.clone();
    let mut term = ctx.from_i64(1);
    let mut m: u64 = 0;
    let mut rhs_term = move |c: &Ctx| -> BF {
        let current = term.clone();
        let mf = c.from_i64(m as i64);
        // A = 1 + m - β; numerator (A - γ1)(A - γ2) = A² - e1 A + e2
        let a_val = c.sub(&c.add(&c.from_i64(1), &mf), &beta_c);
        let num = c.add(
            &c.sub(&c.mul(&a_val, &a_val), &c.mul(&g_e1, &a_val)),
            &g_e2,
        );
        let den = c.mul(
            &c.add(&two_minus_v, &mf),
            &c.sub(&c.add(&c.from_i64(2), &mf), &beta_c),
        );
        term = c.div(&c.mul(&term, &num), &den);
        m += 1;
        current
    };
    let one_f = ctx.from_i64(1);
    let rhs_exps: Vec<BF> = (0..6)
        .map(|r| ctx.sub(&alpha, &ctx.from_i64(1 + r)))
        .collect();
    let rhs_sum = sum_with_tail_bf(ctx, &mut rhs_term, max, &rhs_exps, tol)?;
    let prefactor = ctx.recip(&ctx.mul(
        &ctx.from_rat(&(Rat::one() - v)),
        &ctx.sub(&one_f, &beta),
    ));
    let rhs = ctx.mul(&prefactor, &rhs_sum.value);
    Ok(to_f64(&ctx.abs(&ctx.sub(&lhs.value, &rhs))))
}

/// The uv=w² reduction route to the sum formula; must coincide with the
/// direct sum-formula generator.
pub fn sum_case_uv_w2(k: u32, n: usize) -> Result<Relation> {
    if k <= n as u32 || n == 0 {
        return Err(Error::Domain(format!(
            "sum case needs k > n >= 1, got ({k},{n})"
        )));
    }
    let mut lhs = ZetaCombination::zero();
    for s in 1..=n {
        if k as usize >= n + s {
            lhs = lhs.add(&x0_bruteforce(&SumTriple { k, n, s })?);
        }
    }
    let mut coeff = TPoly::zero();
    for i in 0..n {
        coeff = coeff.add(&TPoly::monomial(
            binomial((k as usize - n + i - 1) as u64, i as u64),
            i,
        ));
    }
    let rhs = ZetaCombination::term(
        ZetaSym::from_index(&Index::new(vec![k])?)?,
        TtPoly::from_tpoly(coeff),
    );
    Ok(Relation {
        label: format!("sum_uv_w2({k},{n})"),
        combination: lhs.sub(&rhs),
        claim: Claim::Vanishes,
    })
}

/// Cor v=0: checks exp[Σ ζ(n)/n (p_n(α,β) - p_n(δ))] - 1 against the
/// brute-force X_0(k,s,s) values; returns the largest absolute deviation.
pub fn v0_case_check(
    cap: usize,
    t_val: &Rat,
    ctx: &mut Ctx,
    tol: f64,
    max_cutoff: u64,
) -> Result<f64> {
    assert!(cap >= 2);
    let wts = [1usize, 2];
    let u = MSeries::<Rat>::monomial(&wts, cap, vec![1, 0], Rat::one());
    let w_var = MSeries::<Rat>::monomial(&wts, cap, vec![0, 1], Rat::one());
    let e2_ab = w_var.scale(&-t_val.clone());
    let e2_d = w_var.scale(&(Rat::one() - t_val));
    let p_ab = newton_power_sums(&u, &e2_ab, cap);
    let p_d = newton_power_sums(&u, &e2_d, cap);
    let mut g = MSeries::<f64>::zero(&wts, cap);
    for m in 2..=cap {
        let zm = zeta_riemann(m as u32, ctx)?.value_f64() / m as f64;
        let d = p_ab[m].sub(&p_d[m]);
        for (e, c) in d.iter() {
            g.add_term(e.clone(), rat_to_f64(c) * zm);
        }
    }
    let f = g.exp();
    let mut max_diff: f64 = 0.0;
    for (e, c) in f.iter() {
        let (a, s) = (e[0], e[1]);
        if a == 0 && s == 0 {
            continue;
        }
        if s == 0 {
            max_diff = max_diff.max(c.abs());
            continue;
        }
        let target = x0_bruteforce(&SumTriple {
            k: (a + 2 * s) as u32,
            n: s,
            s,
        })?;
        let val = eval_combination(&target, t_val, &Rat::zero(), ctx, tol, max_cutoff)?;
        max_diff = max_diff.max((c - val.value_f64()).abs());
    }
    Ok(max_diff)
}

fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

/// Cor w=0 (t ≠ 0): evaluates the explicit double sum for the height-one
/// value ζ^t(i+1, 1^{j-1}) with tail extrapolation over the outer index.
pub fn w0_height_one(i: u32, j: u32, t_val: &Rat, tol: f64) -> Result<EvalResult> {
    assert!(i >= 1 && j >= 1);
    if t_val.is_zero() {
        return Err(Error::Domain("w=0 height-one formula needs t != 0".into()));
    }
    let c = (Rat::one() - t_val) / t_val;
    let c_f = rat_to_f64(&c).abs();
    let n_max: u64 = 480;
    let bits_per_n = ((1.0 + c_f) * (2.0 + c_f).log2()).ceil() as usize + 2;
    let mut ctx = Ctx::new(256 + n_max as usize * bits_per_n);
    let cf = ctx.from_rat(&c);
    let t_pow = ctx.powi(&ctx.from_rat(t_val), j as usize - 1);

    let mut basis = vec![BasisTerm::constant()];
    for r in 0..4i64 {
        for p in 0..=j {
            basis.push(BasisTerm::log_pow(rat_int(-(i as i64 + r)), p));
        }
    }
    let node_points = crate::accel::geometric_nodes(n_max / 10, n_max, basis.len());

    // prod[m] = Π_{l=1}^{n-1} (1 + c m / l), updated as n advances
    let mut prod: Vec<BF> = Vec::with_capacity(n_max as usize + 1);
    prod.push(ctx.from_i64(1)); // unused slot 0
    let mut sum = ctx.zero();
    let mut nodes = Vec::new();
    let mut next = 0;
    for n in 1..=n_max {
        if n >= 2 && !c.is_zero() {
            let lf = ctx.recip(&ctx.from_i64(n as i64 - 1));
            let step = ctx.mul(&cf, &lf);
            for m in 1..n {
                let factor = ctx.add(
                    &ctx.from_i64(1),
                    &ctx.mul(&step, &ctx.from_i64(m as i64)),
                );
                prod[m as usize] = ctx.mul(&prod[m as usize], &factor);
            }
        }
        // fresh product for m = n
        let mut pn = ctx.from_i64(1);
        if !c.is_zero() {
            for l in 1..n {
                let factor = ctx.add(
                    &ctx.from_i64(1),
                    &ctx.div(
                        &ctx.mul(&cf, &ctx.from_i64(n as i64)),
                        &ctx.from_i64(l as i64),
                    ),
                );
                pn = ctx.mul(&pn, &factor);
            }
        }
        prod.push(pn);

        let mut inner = ctx.zero();
        let mut binom_row = ctx.from_i64(1); // binom(n-1, m-1)
        for m in 1..=n {
            let mj = ctx.powi(&ctx.from_i64(m as i64), j as usize);
            let mut term = ctx.div(&ctx.mul(&binom_row, &prod[m as usize]), &mj);
            if m % 2 == 0 {
                term = term.neg();
            }
            inner = ctx.add(&inner, &term);
            // binom(n-1, m) = binom(n-1, m-1) (n-m)/m
            if m < n {
                binom_row = ctx.div(
                    &ctx.mul(&binom_row, &ctx.from_i64((n - m) as i64)),
                    &ctx.from_i64(m as i64),
                );
            }
        }
        let ni = ctx.powi(&ctx.from_i64(n as i64), i as usize);
        let term_n = ctx.div(&ctx.mul(&inner, &t_pow), &ni);
        sum = ctx.add(&sum, &term_n);
        if next < node_points.len() && node_points[next] == n {
            nodes.push((n, sum.clone()));
            next += 1;
        }
    }
    let cut = nodes.len().saturating_sub(2).max(2);
    let limit = crate::accel::extrapolate(&mut ctx, &nodes, &basis)?;
    let reduced = crate::accel::extrapolate(&mut ctx, &nodes[..cut], &basis[..cut])?;
    let bound = ctx.abs(&ctx.sub(&limit, &reduced));
    if !ctx.abs_lt(&bound, &ctx.from_f64(tol / 4.0)) {
        return Err(Error::Convergence {
            last: to_f64(&limit),
        });
    }
    Ok(EvalResult {
        value: limit,
        error_bound: bound,
        cutoff_used: n_max,
    })
}

/// Aomoto-Drinfel'd-Zagier: matches the exp-series coefficients against the
/// evaluated MZVs ζ(k-n+1, 1^{n-1}); returns the largest deviation.
pub fn adz_check(cap: usize, ctx: &mut Ctx, tol: f64, max_cutoff: u64) -> Result<f64> {
    assert!(cap >= 3);
    let wts = [1usize, 1];
    let mut g = MSeries::<f64>::zero(&wts, cap);
    for m in 2..=cap {
        let zm = zeta_riemann(m as u32, ctx)?.value_f64() / m as f64;
        // u^m + v^m - (u+v)^m = -Σ_{a=1}^{m-1} binom(m,a) u^a v^{m-a}
        for a in 1..m {
            let bc = rat_to_f64(&binomial(m as u64, a as u64));
            g.add_term(vec![a, m - a], -bc * zm);
        }
    }
    let f = g.exp();
    let mut max_diff: f64 = 0.0;
    for a in 1..cap {
        for b in 1..=cap - a {
            // coefficient of u^a v^b of 1 - exp(...) should be ζ(a+1, 1^{b-1})
            let lhs = -f.coeff(&[a, b]);
            let mut parts = vec![a as u32 + 1];
            parts.extend(std::iter::repeat(1).take(b - 1));
            let target = crate::numerics::eval_mzv(&Index::new(parts)?, ctx, tol, max_cutoff)?;
            max_diff = max_diff.max((lhs - target.value_f64()).abs());
        }
    }
    Ok(max_diff)
}

fn is_nonpositive_integer(r: &Rat) -> bool {
    r.is_integer() && !r.is_positive()
}

fn poch(r: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for m in 0..n {
        acc *= r + rat_int(m as i64);
    }
    acc
}

/// Coefficients of F(p,q;c;z) through z^len.
fn f21_coeffs(p: &Rat, q: &Rat, c: &Rat, len: usize) -> Result<Vec<Rat>> {
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!("2F1 lower parameter {c}")));
    }
    let mut out = Vec::with_capacity(len + 1);
    out.push(Rat::one());
    for m in 0..len {
        let mf = rat_int(m as i64);
        let next = &out[m] * (p + &mf) * (q + &mf)
            / ((&mf + Rat::one()) * (c + &mf));
        out.push(next);
    }
    Ok(out)
}

fn series_mul(a: &[Rat], b: &[Rat], len: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len + 1];
    for (i, ai) in a.iter().enumerate().take(len + 1) {
        if ai.is_zero() {
            continue;
        }
        for (jj, bj) in b.iter().enumerate().take(len + 1 - i) {
            out[i + jj] += ai * bj;
        }
    }
    out
}

fn series_derivative(a: &[Rat]) -> Vec<Rat> {
    (1..a.len()).map(|m| &a[m] * rat_int(m as i64)).collect()
}

/// Lemma on the Wronskian: with v = α+β+γ1+γ2,
/// (β-α)F1F2 + z(F1F2' - F1'F2) = (β-α)(1-z)^{-v}, exactly through z^order.
pub fn wronskian_check(
    alpha: &Rat,
    beta: &Rat,
    g1: &Rat,
    g2: &Rat,
    order: usize,
) -> Result<()> {
    let v = alpha + beta + g1 + g2;
    let c1 = alpha - beta + Rat::one();
    let c2 = beta - alpha + Rat::one();
    let f1 = f21_coeffs(&(g1 + alpha), &(g2 + alpha), &c1, order + 1)?;
    let f2 = f21_coeffs(&(g1 + beta), &(g2 + beta), &c2, order + 1)?;
    let d1 = series_derivative(&f1);
    let d2 = series_derivative(&f2);
    let ba = beta - alpha;
    let mut lhs = series_mul(&f1, &f2, order);
    for x in lhs.iter_mut() {
        *x *= &ba;
    }
    let cross = series_mul(&f1, &d2, order);
    let cross2 = series_mul(&d1, &f2, order);
    for m in 1..=order {
        lhs[m] += &cross[m - 1] - &cross2[m - 1];
    }
    for (m, l) in lhs.iter().enumerate() {
        // (1-z)^{-v}: coefficient (v)_m / m!
        let rhs = &ba * poch(&v, m as u32) / poch(&Rat::one(), m as u32);
        if *l != rhs {
            return Err(Error::Domain(format!(
                "Wronskian identity fails at z^{m}"
            )));
        }
    }
    Ok(())
}

/// The bilinear hypergeometric identity underlying the Wronskian: the
/// combination collapses to the constant β-α, exactly through z^order.
pub fn duality_check(
    alpha: &Rat,
    beta: &Rat,
    g1: &Rat,
    g2: &Rat,
    order: usize,
) -> Result<()> {
    let c1 = alpha - beta + Rat::one();
    let c2 = beta - alpha + Rat::one();
    let one = Rat::one();
    let p1 = series_mul(
        &f21_coeffs(&(g1 + alpha), &(g2 + alpha), &c1, order)?,
        &f21_coeffs(&(-g1 - alpha), &(&one - g2 - alpha), &c2, order)?,
        order,
    );
    let p2 = series_mul(
        &f21_coeffs(&(g1 + beta), &(g2 + beta), &c2, order)?,
        &f21_coeffs(&(-g1 - beta), &(&one - g2 - beta), &c1, order)?,
        order,
    );
    let ca = g1 + beta;
    let cb = g1 + alpha;
    for m in 0..=order {
        let val = &ca * &p1[m] - &cb * &p2[m];
        let expect = if m == 0 { beta - alpha } else { Rat::zero() };
        if val != expect {
            return Err(Error::Domain(format!(
                "duality identity fails at z^{m}"
            )));
        }
    }
    Ok(())
}

/// The explicit binomial/Pochhammer identity of the duality proof, checked
/// exactly at a pole-free rational sample.
pub fn appendix_b_identity(n: u32, x: &Rat, y1: &Rat, y2: &Rat) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("identity needs n >= 1".into()));
    }
    let mut lhs = Rat::zero();
    let mut rhs = Rat::zero();
    for jj in 0..=n {
        let jr = rat_int(jj as i64);
        let den = poch(&(x - &jr), n + 1);
        if den.is_zero() {
            return Err(Error::Pole(format!("(x-j)_(n+1) vanishes at j = {jj}")));
        }
        let den = den * poch(&Rat::one(), jj) * poch(&Rat::one(), n - jj);
        let sign = if jj % 2 == 0 { Rat::one() } else { -Rat::one() };
        let num_l = poch(&(y1 - &jr + Rat::one()), n - 1) * poch(&(y2 - &jr), n);
        lhs += &sign * num_l / &den;
        let shift = y1 - x - rat_int(n as i64) + &jr;
        let num_r = poch(&(&shift + Rat::one()), n - 1)
            * poch(&(y2 - x - rat_int(n as i64) + &jr), n);
        rhs += &sign * num_r / &den;
    }
    if lhs != rhs {
        return Err(Error::Domain(format!(
            "explicit hypergeometric identity fails at n = {n}, x = {x}, y1 = {y1}, y2 = {y2}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::parse_rat;
    use crate::relations::sum_formula_relation;

    fn r(s: &str) -> Rat {
        parse_rat(s).unwrap()
    }

    #[test]
    fn x0_matches_single_index_cases() {
        let a = x0_bruteforce(&SumTriple { k: 4, n: 2, s: 1 }).unwrap();
        let b = tmzv_expand(&Index::new(vec![3, 1]).unwrap()).unwrap();
        assert!(a.sub(&b).is_zero());
        let a = x0_bruteforce(&SumTriple { k: 4, n: 2, s: 2 }).unwrap();
        let b = tmzv_expand(&Index::new(vec![2, 2]).unwrap()).unwrap();
        assert!(a.sub(&b).is_zero());
        assert!(SumTriple::new(3, 2, 2).is_err());
    }

    #[test]
    fn recurrence_solves_the_ode() {
        let res = ode_residual(&r("1/5"), &r("1/7"), &r("1/3"), &r("1/2"), 20).unwrap();
        assert!(res.iter().all(|c| c.is_zero()));
        let res = ode_residual(&r("0"), &r("0"), &r("0"), &r("0"), 10).unwrap();
        assert!(res.iter().all(|c| c.is_zero()));
        let res = ode_residual(&r("-1/4"), &r("1/9"), &r("1/8"), &r("1"), 12).unwrap();
        assert!(res.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn an_pole_detected() {
        assert!(matches!(
            an_value(3, &r("1"), &r("0"), &r("0"), &r("1/2")),
            Err(Error::Pole(_))
        ));
        let a2 = an_value(2, &r("0"), &r("0"), &r("0"), &r("1/2")).unwrap();
        assert_eq!(a2, r("1/4"));
    }

    #[test]
    fn phi0_low_order_coefficients() {
        let phi = phi0_series(2);
        let z = |parts: Vec<u32>| ZetaSym::from_index(&Index::new(parts).unwrap()).unwrap();
        let c000 = phi.coeff(0, 0, 0);
        assert_eq!(c000.coeff(&z(vec![2])), TtPoly::one());
        assert_eq!(c000.num_terms(), 1);
        let c100 = phi.coeff(1, 0, 0);
        assert_eq!(c100.coeff(&z(vec![3])), TtPoly::one());
        assert_eq!(c100.num_terms(), 1);
        let c010 = phi.coeff(0, 1, 0);
        assert_eq!(c010.coeff(&z(vec![2, 1])), TtPoly::one());
        assert_eq!(c010.coeff(&z(vec![3])), TtPoly::from_tpoly(TPoly::t()));
        assert_eq!(c010.num_terms(), 2);
    }

    #[test]
    fn phi0_agrees_with_bruteforce_numerically() {
        let phi = phi0_series(3);
        let mut ctx = Ctx::new(320);
        let t = r("1/2");
        let big_t = Rat::zero();
        for ((a, b, c), comb) in phi.iter().map(|(k, v)| (*k, v)) {
            let k = (a + b + 2 * c + 2) as u32;
            let n = b + c + 1;
            let s = c + 1;
            let lhs = eval_combination(comb, &t, &big_t, &mut ctx, 1e-9, 1 << 22)
                .unwrap()
                .value_f64();
            let rhs = eval_combination(
                &x0_bruteforce(&SumTriple { k, n, s }).unwrap(),
                &t,
                &big_t,
                &mut ctx,
                1e-9,
                1 << 22,
            )
            .unwrap()
            .value_f64();
            assert!((lhs - rhs).abs() < 1e-8, "({a},{b},{c}): {lhs} vs {rhs}");
        }
    }

    #[test]
    fn x_series_identities_hold() {
        x_series_system_check(4, 20).unwrap();
    }

    #[test]
    fn theorem_sum_agrees() {
        let mut ctx = Ctx::new(384);
        let d = theorem_sum_check(&r("1/8"), &r("1/8"), &r("1/8"), &r("1/2"), &mut ctx, 1e-12)
            .unwrap();
        assert!(d < 1e-8, "difference {d}");
    }

    #[test]
    fn uv_w2_case_matches_sum_formula() {
        for (k, n) in [(4u32, 2usize), (5, 2), (5, 3), (6, 3)] {
            let a = sum_case_uv_w2(k, n).unwrap();
            let b = sum_formula_relation(k, n).unwrap();
            assert!(
                a.combination.sub(&b.combination).is_zero(),
                "({k},{n}) disagrees"
            );
        }
    }

    #[test]
    fn v0_case_small() {
        let mut ctx = Ctx::new(320);
        let d = v0_case_check(5, &r("1/2"), &mut ctx, 1e-8, 1 << 22).unwrap();
        assert!(d < 1e-6, "max deviation {d}");
    }

    #[test]
    fn w0_height_one_depth_one() {
        let mut ctx = Ctx::new(320);
        let z3 = zeta_riemann(3, &mut ctx).unwrap().value_f64();
        let a = w0_height_one(2, 1, &r("1"), 1e-8).unwrap();
        assert!((a.value_f64() - z3).abs() < 1e-6);
        let b = w0_height_one(2, 1, &r("1/2"), 1e-8).unwrap();
        assert!((b.value_f64() - z3).abs() < 1e-6);
        assert!(w0_height_one(2, 1, &r("0"), 1e-8).is_err());
    }

    #[test]
    fn adz_small() {
        let mut ctx = Ctx::new(320);
        let d = adz_check(5, &mut ctx, 1e-8, 1 << 22).unwrap();
        assert!(d < 1e-6, "max deviation {d}");
    }

    #[test]
    fn wronskian_and_duality_exact() {
        let (a, b, g1, g2) = (r("1/2"), r("1/3"), r("1/5"), r("1/7"));
        wronskian_check(&a, &b, &g1, &g2, 25).unwrap();
        duality_check(&a, &b, &g1, &g2, 25).unwrap();
        let (a, b, g1, g2) = (r("-1/4"), r("2/9"), r("1/11"), r("-3/13"));
        wronskian_check(&a, &b, &g1, &g2, 20).unwrap();
        duality_check(&a, &b, &g1, &g2, 20).unwrap();
    }

    #[test]
    fn appendix_b_samples() {
        appendix_b_identity(3, &r("1/2"), &r("1/3"), &r("2/7")).unwrap();
        appendix_b_identity(5, &r("-1/3"), &r("4/5"), &r("1/9")).unwrap();
        assert!(appendix_b_identity(2, &r("1"), &r("1/3"), &r("1/5")).is_err());
    }
}
