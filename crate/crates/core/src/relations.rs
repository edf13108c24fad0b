//! Relation families among t-MZVs, produced as symbolic combinations whose
//! numeric certification is delegated to the numerics layer.

use crate::coeff::{binomial, rat_int, TPoly, TtPoly};
use crate::error::{Error, Result};
use crate::product::{product, ProductKind};
use crate::reg::{z_reg_eval, RegKind};
use crate::word::{Element, Index, Letter, Word};
use crate::zeta::{tmzv_expand, z_classical, z_symbolic, ZetaCombination, ZetaSym};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Claim {
    Vanishes,
    Equals(ZetaCombination),
}

/// A named combination of MZV symbols together with what is asserted of it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    pub label: String,
    pub combination: ZetaCombination,
    pub claim: Claim,
}

impl Relation {
    fn vanishing(label: String, combination: ZetaCombination) -> Relation {
        Relation {
            label,
            combination,
            claim: Claim::Vanishes,
        }
    }

    /// The combination that must evaluate to zero.
    pub fn residual(&self) -> ZetaCombination {
        match &self.claim {
            Claim::Vanishes => self.combination.clone(),
            Claim::Equals(rhs) => self.combination.sub(rhs),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let claim = match &self.claim {
            Claim::Vanishes => serde_json::json!("vanishes"),
            Claim::Equals(rhs) => serde_json::json!({ "equals": rhs.to_json() }),
        };
        serde_json::json!({
            "label": self.label,
            "terms": self.combination.to_json(),
            "claim": claim,
        })
    }
}

fn z_elem(parts: &[u32]) -> Element {
    let mut w = Word::empty();
    for &k in parts {
        w = w.concat(&Word::x_pow(k as usize - 1));
        w = w.concat(&Word::single(Letter::Y));
    }
    Element::from_word(w)
}

fn expand_parts(parts: &[u32]) -> ZetaCombination {
    tmzv_expand(&Index::new(parts.to_vec()).unwrap()).unwrap()
}

/// The t-shuffle product z_k ⊔̃ z_l in closed form:
/// Σ_{i=1}^{k} binom(k+l−i−1, l−1) z_{k+l−i} z_i
/// + Σ_{i=1}^{l} binom(k+l−i−1, k−1) z_{k+l−i} z_i − binom(k+l, k) t z_{k+l}.
pub fn euler_word_identity(k: u32, l: u32) -> (Element, Element) {
    let lhs = product(
        ProductKind::TSh,
        &z_elem(&[k]),
        &z_elem(&[l]),
    )
    .unwrap();
    let mut rhs = Element::zero();
    for (upper, lower) in [(k, l), (l, k)] {
        for i in 1..=upper {
            let c = binomial((k + l - i - 1) as u64, (lower - 1) as u64);
            rhs = rhs.add(&z_elem(&[k + l - i, i]).scale_rat(&c));
        }
    }
    let t_coeff = TPoly::monomial(-binomial((k + l) as u64, k as u64), 1);
    rhs = rhs.add(&z_elem(&[k + l]).scale(&t_coeff));
    (lhs, rhs)
}

/// Euler's decomposition formula at the ζ-level:
/// ζ(k)ζ(l) = Σ binom ζ^t(k+l−i, i) − binom(k+l, k) t ζ(k+l).
/// The product ζ(k)ζ(l) is rewritten through the classical stuffle.
pub fn euler_decomposition(k: u32, l: u32) -> Result<Relation> {
    if k < 2 || l < 2 {
        return Err(Error::Domain(format!(
            "euler decomposition needs k,l >= 2, got ({k},{l})"
        )));
    }
    let (lhs_w, rhs_w) = euler_word_identity(k, l);
    assert_eq!(lhs_w, rhs_w, "euler word identity failed at ({k},{l})");

    let mut rhs = ZetaCombination::zero();
    for (upper, lower) in [(k, l), (l, k)] {
        for i in 1..=upper {
            let c = binomial((k + l - i - 1) as u64, (lower - 1) as u64);
            rhs = rhs.add(&expand_parts(&[k + l - i, i]).scale_rat(&c));
        }
    }
    let t_coeff = TPoly::monomial(-binomial((k + l) as u64, k as u64), 1);
    rhs = rhs.add(&ZetaCombination::term(
        ZetaSym::from_index(&Index::new(vec![k + l])?)?,
        TtPoly::from_tpoly(t_coeff),
    ));

    // ζ(k)ζ(l) through the classical stuffle of z_k and z_l.
    let lhs = z_classical(&product(ProductKind::St, &z_elem(&[k]), &z_elem(&[l]))?)?;

    Ok(Relation::vanishing(
        format!("euler_decomposition({k},{l})"),
        lhs.sub(&rhs),
    ))
}

/// Finite double shuffle: Z_t(w1 ⊔̃ w0 − w1 *̃ w0) = 0 for w1, w0 ∈ h^0.
pub fn fds_relation(w1: &Element, w0: &Element) -> Result<Relation> {
    if !w1.in_h0() || !w0.in_h0() {
        return Err(Error::NotInH0(format!("fds operands {w1}, {w0}")));
    }
    let diff = product(ProductKind::TSh, w1, w0)?.sub(&product(ProductKind::TSt, w1, w0)?);
    Ok(Relation::vanishing(
        format!("fds({w1}; {w0})"),
        z_symbolic(&diff)?,
    ))
}

/// Extended double shuffle: the regularized map kills the same difference
/// for w1 ∈ h^1, w0 ∈ h^0, coefficientwise in T.
pub fn eds_relation(w1: &Element, w0: &Element, kind: RegKind) -> Result<Relation> {
    if !w1.in_h1() {
        return Err(Error::NotInH1(w1.to_string()));
    }
    if !w0.in_h0() {
        return Err(Error::NotInH0(w0.to_string()));
    }
    let diff = product(ProductKind::TSh, w1, w0)?.sub(&product(ProductKind::TSt, w1, w0)?);
    Ok(Relation::vanishing(
        format!("eds({}; {w1}; {w0})", kind.name()),
        z_reg_eval(kind, &diff)?,
    ))
}

fn replace_part(parts: &[u32], i: usize, with: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(parts.len() + with.len());
    out.extend_from_slice(&parts[..i]);
    out.extend_from_slice(with);
    out.extend_from_slice(&parts[i + 1..]);
    out
}

/// Hoffman's relation at an admissible index:
/// Σ_i [1 + (k_i + δ_{ni} − 2) t] ζ^t(…, k_i+1, …)
///   = Σ_i Σ_{j=2}^{k_i} ζ^t(…, j, k_i+1−j, …)
///   + (t − t²) Σ_{i<n} ζ^t(…, k_i+k_{i+1}+1, …).
pub fn hoffman_relation(k: &Index) -> Result<Relation> {
    if !k.is_admissible() {
        return Err(Error::NotAdmissible(k.to_string()));
    }
    let parts = k.parts();
    let n = parts.len();

    let mut lhs = ZetaCombination::zero();
    for i in 0..n {
        let delta = (i == n - 1) as i64;
        let c = TPoly::from_coeffs(vec![rat_int(1), rat_int(parts[i] as i64 + delta - 2)]);
        let bumped = replace_part(parts, i, &[parts[i] + 1]);
        lhs = lhs.add(&expand_parts(&bumped).scale_tpoly(&c));
    }

    let mut rhs = ZetaCombination::zero();
    for i in 0..n {
        for j in 2..=parts[i] {
            let split = replace_part(parts, i, &[j, parts[i] + 1 - j]);
            rhs = rhs.add(&expand_parts(&split));
        }
    }
    let t_minus_t2 = TPoly::from_coeffs(vec![rat_int(0), rat_int(1), rat_int(-1)]);
    for i in 0..n.saturating_sub(1) {
        let mut merged = replace_part(parts, i, &[parts[i] + parts[i + 1] + 1]);
        merged.remove(i + 1);
        rhs = rhs.add(&expand_parts(&merged).scale_tpoly(&t_minus_t2));
    }

    let combination = lhs.sub(&rhs);

    // The same combination must fall out of the product difference: the
    // z_1-insertion terms of y ⊔̃ w and y *̃ w cancel pairwise, leaving an
    // h^0 element.
    let y = Element::from_word(Word::single(Letter::Y));
    let w = Element::from_word(k.word());
    let diff = product(ProductKind::TSt, &y, &w)?.sub(&product(ProductKind::TSh, &y, &w)?);
    assert!(diff.in_h0(), "hoffman difference left h^0 at {k}");
    assert_eq!(
        combination,
        z_symbolic(&diff)?,
        "hoffman closed form disagrees with the product difference at {k}"
    );

    Ok(Relation::vanishing(format!("hoffman({k})"), combination))
}

/// The closed form of y ⊔̃ z_{k_1}…z_{k_n} (kind sh) or y *̃ z_{k_1}…z_{k_n}
/// (kind st).
pub fn y_product_closed_form(k: &Index, kind: RegKind) -> Element {
    let parts = k.parts();
    let n = parts.len();
    let mut acc = Element::zero();

    // z_1 inserted in every gap, common to both products.
    for i in 0..=n {
        let mut v = parts.to_vec();
        v.insert(i, 1);
        acc = acc.add(&z_elem(&v));
    }

    match kind {
        RegKind::Sh => {
            for i in 0..n {
                for j in 2..=parts[i] {
                    acc = acc.add(&z_elem(&replace_part(parts, i, &[j, parts[i] + 1 - j])));
                }
            }
            for i in 0..n {
                let delta = (i == n - 1) as i64;
                let c = TPoly::monomial(rat_int(-(parts[i] as i64 + delta)), 1);
                acc = acc.add(&z_elem(&replace_part(parts, i, &[parts[i] + 1])).scale(&c));
            }
        }
        RegKind::St => {
            let one_minus_2t = TPoly::from_coeffs(vec![rat_int(1), rat_int(-2)]);
            for i in 0..n {
                acc = acc.add(
                    &z_elem(&replace_part(parts, i, &[parts[i] + 1])).scale(&one_minus_2t),
                );
            }
            let t2_minus_t = TPoly::from_coeffs(vec![rat_int(0), rat_int(-1), rat_int(1)]);
            for i in 0..n.saturating_sub(1) {
                let mut merged = replace_part(parts, i, &[parts[i] + parts[i + 1] + 1]);
                merged.remove(i + 1);
                acc = acc.add(&z_elem(&merged).scale(&t2_minus_t));
            }
        }
    }
    acc
}

/// All admissible indices of the given weight and depth, in lexicographic
/// order of parts.
pub fn admissible_indices(weight: u32, depth: usize) -> Vec<Index> {
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(depth);
    fn rec(out: &mut Vec<Index>, parts: &mut Vec<u32>, remaining: u32, slots: usize) {
        if slots == 0 {
            if remaining == 0 {
                out.push(Index::new(parts.clone()).unwrap());
            }
            return;
        }
        let min = if parts.is_empty() { 2 } else { 1 };
        if remaining < min + (slots as u32 - 1) {
            return;
        }
        for v in min..=remaining - (slots as u32 - 1) {
            parts.push(v);
            rec(out, parts, remaining - v, slots - 1);
            parts.pop();
        }
    }
    if depth > 0 {
        rec(&mut out, &mut parts, weight, depth);
    }
    out
}

/// Both closed forms of the sum-formula coefficient polynomial, which must
/// agree: Σ_i binom(k−1, i) t^i (1−t)^{n−1−i} = Σ_i binom(k−n+i−1, i) t^i.
pub fn sum_formula_coefficient(k: u32, n: usize) -> (TPoly, TPoly) {
    let one_minus_t = TPoly::from_coeffs(vec![rat_int(1), rat_int(-1)]);
    let mut first = TPoly::zero();
    for i in 0..n {
        let mut term = TPoly::monomial(binomial((k - 1) as u64, i as u64), i);
        for _ in 0..n - 1 - i {
            term = term.mul(&one_minus_t);
        }
        first = first.add(&term);
    }
    let mut second = TPoly::zero();
    for i in 0..n {
        second = second.add(&TPoly::monomial(
            binomial((k as usize - n + i - 1) as u64, i as u64),
            i,
        ));
    }
    (first, second)
}

/// Sum formula: the sum of ζ^t over all admissible indices of weight k and
/// depth n equals the coefficient polynomial times ζ(k).
pub fn sum_formula_relation(k: u32, n: usize) -> Result<Relation> {
    if k <= n as u32 || n == 0 {
        return Err(Error::Domain(format!("sum formula needs k > n >= 1, got ({k},{n})")));
    }
    let mut lhs = ZetaCombination::zero();
    for idx in admissible_indices(k, n) {
        lhs = lhs.add(&tmzv_expand(&idx)?);
    }
    let (first, second) = sum_formula_coefficient(k, n);
    assert_eq!(first, second, "sum formula coefficient forms disagree at ({k},{n})");
    let rhs = ZetaCombination::term(
        ZetaSym::from_index(&Index::new(vec![k])?)?,
        TtPoly::from_tpoly(first),
    );
    Ok(Relation::vanishing(
        format!("sum_formula({k},{n})"),
        lhs.sub(&rhs),
    ))
}

/// Cyclic sum formula:
/// Σ_i Σ_{j=1}^{k_i−1} ζ^t(k_i+1−j, k_{i+1}, …, k_{i−1}, j)
///   = (1−t) Σ_i ζ^t(k_i+1, k_{i+1}, …, k_{i−1}) + t^n k ζ(k+1).
pub fn cyclic_sum_relation(k: &Index) -> Result<Relation> {
    let parts = k.parts();
    let n = parts.len();
    if parts.iter().all(|&p| p == 1) {
        return Err(Error::Domain(format!(
            "cyclic sum needs a part greater than 1, got {k}"
        )));
    }
    let weight = k.weight();

    let rotate_after = |i: usize| -> Vec<u32> {
        let mut v = Vec::with_capacity(n - 1);
        v.extend_from_slice(&parts[i + 1..]);
        v.extend_from_slice(&parts[..i]);
        v
    };

    let mut lhs = ZetaCombination::zero();
    for i in 0..n {
        for j in 1..parts[i] {
            let mut idx = vec![parts[i] + 1 - j];
            idx.extend(rotate_after(i));
            idx.push(j);
            lhs = lhs.add(&expand_parts(&idx));
        }
    }

    let one_minus_t = TPoly::from_coeffs(vec![rat_int(1), rat_int(-1)]);
    let mut rhs = ZetaCombination::zero();
    for i in 0..n {
        let mut idx = vec![parts[i] + 1];
        idx.extend(rotate_after(i));
        rhs = rhs.add(&expand_parts(&idx).scale_tpoly(&one_minus_t));
    }
    rhs = rhs.add(&ZetaCombination::term(
        ZetaSym::from_index(&Index::new(vec![weight + 1])?)?,
        TtPoly::from_tpoly(TPoly::monomial(rat_int(weight as i64), n)),
    ));

    Ok(Relation::vanishing(
        format!("cyclic_sum({k})"),
        lhs.sub(&rhs),
    ))
}

/// The exact word-algebra identity behind the height-one generating function:
/// S_{−t}(x (x^{k−n−1} ⊔ y^{n−1}) y)
///   = Σ_{i=1}^{n} (−t)^{n−i} binom(k−i−1, n−i) x (x^{k−i−1} ⊔ y^{i−1}) y.
/// Returns the two sides for comparison.
pub fn appendix_a_identity(k: u32, n: u32) -> Result<(Element, Element)> {
    if k <= n || n == 0 {
        return Err(Error::Domain(format!(
            "identity needs k > n >= 1, got ({k},{n})"
        )));
    }
    let framed = |a: u32, b: u32| -> Element {
        // x (x^a ⊔ y^b) y
        let core = product(
            ProductKind::Sh,
            &Element::from_word(Word::x_pow(a as usize)),
            &Element::from_word(Word::y_pow(b as usize)),
        )
        .unwrap();
        let mut acc = Element::zero();
        for (w, c) in core.iter() {
            let framed = Word::single(Letter::X)
                .concat(w)
                .concat(&Word::single(Letter::Y));
            acc.add_term(framed, c.clone());
        }
        acc
    };
    let lhs = crate::maps::s_map(&framed(k - n - 1, n - 1), true);
    let mut rhs = Element::zero();
    for i in 1..=n {
        let mut c = TPoly::constant(binomial((k - i - 1) as u64, (n - i) as u64));
        for _ in 0..n - i {
            c = c.mul(&TPoly::monomial(rat_int(-1), 1));
        }
        rhs = rhs.add(&framed(k - i - 1, i - 1).scale(&c));
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> Element {
        Element::parse(s).unwrap()
    }

    fn idx(s: &str) -> Index {
        Index::parse(s).unwrap()
    }

    #[test]
    fn euler_words_2_2() {
        let (lhs, rhs) = euler_word_identity(2, 2);
        assert_eq!(lhs, rhs);
        assert_eq!(rhs, el("4*z3z1 + 2*z2z2 - 6t*z4"));
    }

    #[test]
    fn euler_word_identity_holds() {
        for k in 1..=4 {
            for l in 1..=4 {
                let (lhs, rhs) = euler_word_identity(k, l);
                assert_eq!(lhs, rhs, "({k},{l})");
            }
        }
    }

    #[test]
    fn euler_decomposition_2_2() {
        let r = euler_decomposition(2, 2).unwrap();
        // ζ(2)² − 4ζ^t(3,1) − 2ζ^t(2,2) + 6tζ(4) collapses to
        // ζ(4) + 2ζ(2,2) − 4ζ(3,1) − 2ζ(2,2) − 4tζ(4) − 2tζ(4) + 6tζ(4)
        // = ζ(4) − 4ζ(3,1), the classical identity.
        assert_eq!(r.residual().to_string(), "zeta(4) + (-4)*zeta(3,1)");
        assert!(euler_decomposition(1, 2).is_err());
    }

    #[test]
    fn fds_2_2() {
        let r = fds_relation(&el("xy"), &el("xy")).unwrap();
        assert_eq!(r.residual().to_string(), "(-1)*zeta(4) + (4)*zeta(3,1)");
        let r = fds_relation(&Element::one(), &el("xy")).unwrap();
        assert!(r.residual().is_zero());
        assert!(fds_relation(&el("y"), &el("xy")).is_err());
    }

    #[test]
    fn eds_reduces_to_fds_on_h0() {
        for kind in [RegKind::Sh, RegKind::St] {
            let e = eds_relation(&el("xy"), &el("xy"), kind).unwrap();
            let f = fds_relation(&el("xy"), &el("xy")).unwrap();
            assert_eq!(e.residual(), f.residual());
            assert_eq!(e.residual().big_t_degree().unwrap_or(0), 0);
        }
    }

    #[test]
    fn hoffman_depth_one() {
        let r = hoffman_relation(&idx("2")).unwrap();
        assert_eq!(r.residual().to_string(), "zeta(3) + (-1)*zeta(2,1)");
    }

    #[test]
    fn hoffman_constructs_deeper() {
        for s in ["2,1", "3", "2,2", "3,1,2"] {
            let r = hoffman_relation(&idx(s)).unwrap();
            assert!(!r.residual().is_zero());
        }
        assert!(hoffman_relation(&idx("1,2")).is_err());
    }

    #[test]
    fn closed_forms_match_products() {
        let y = Element::from_word(Word::single(Letter::Y));
        for w in 1..=6u32 {
            for d in 1..=w as usize {
                for idx in all_indices(w, d) {
                    let word = Element::from_word(idx.word());
                    let sh = product(ProductKind::TSh, &y, &word).unwrap();
                    assert_eq!(sh, y_product_closed_form(&idx, RegKind::Sh), "sh {idx}");
                    let st = product(ProductKind::TSt, &y, &word).unwrap();
                    assert_eq!(st, y_product_closed_form(&idx, RegKind::St), "st {idx}");
                }
            }
        }
    }

    fn all_indices(weight: u32, depth: usize) -> Vec<Index> {
        // like admissible_indices but with first part >= 1
        let mut out = Vec::new();
        fn rec(out: &mut Vec<Index>, parts: &mut Vec<u32>, remaining: u32, slots: usize) {
            if slots == 0 {
                if remaining == 0 {
                    out.push(Index::new(parts.clone()).unwrap());
                }
                return;
            }
            if remaining < slots as u32 {
                return;
            }
            for v in 1..=remaining - (slots as u32 - 1) {
                parts.push(v);
                rec(out, parts, remaining - v, slots - 1);
                parts.pop();
            }
        }
        let mut parts = Vec::new();
        rec(&mut out, &mut parts, weight, depth);
        out
    }

    #[test]
    fn sum_formula_small() {
        let r = sum_formula_relation(3, 2).unwrap();
        assert_eq!(r.residual().to_string(), "(-1)*zeta(3) + zeta(2,1)");
        let r = sum_formula_relation(4, 2).unwrap();
        // ζ^t(3,1) + ζ^t(2,2) − (1+2t)ζ(4)
        assert_eq!(
            r.residual().to_string(),
            "(-1)*zeta(4) + zeta(2,2) + zeta(3,1)"
        );
        assert!(sum_formula_relation(2, 2).is_err());
    }

    #[test]
    fn sum_formula_coefficients_agree() {
        for k in 2..=9u32 {
            for n in 1..k as usize {
                let (a, b) = sum_formula_coefficient(k, n);
                assert_eq!(a, b, "({k},{n})");
            }
        }
    }

    #[test]
    fn cyclic_sum_depth_one() {
        let r = cyclic_sum_relation(&idx("2")).unwrap();
        assert_eq!(r.residual().to_string(), "(-1)*zeta(3) + zeta(2,1)");
        assert!(cyclic_sum_relation(&Index::new(vec![1, 1]).unwrap()).is_err());
    }

    #[test]
    fn appendix_a_exact() {
        for (k, n) in [(3, 2), (4, 2), (5, 3), (6, 2), (7, 4)] {
            let (lhs, rhs) = appendix_a_identity(k, n).unwrap();
            assert_eq!(lhs, rhs, "({k},{n})");
        }
        // n = 1: no internal y, S_{-t} acts trivially
        let (lhs, rhs) = appendix_a_identity(5, 1).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, el("xxxxy"));
        assert!(appendix_a_identity(2, 2).is_err());
    }

    #[test]
    fn admissible_enumeration() {
        let v = admissible_indices(4, 2);
        let strs: Vec<String> = v.iter().map(|i| i.to_string()).collect();
        assert_eq!(strs, vec!["2,2", "3,1"]);
        assert!(admissible_indices(2, 2).is_empty());
    }
}
