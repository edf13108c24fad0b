//! Regularization: h^1 decomposes uniquely as h^0[y] under either classical
//! product, which extends the symbol map to non-admissible words with the
//! divergent part collected in powers of T.

use once_cell::sync::Lazy;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::coeff::{rat_int, Rat, TPoly};
use crate::error::{Error, Result};
use crate::maps::s_map;
use crate::product::{product, ProductKind};
use crate::word::{Element, Letter, Word};
use crate::zeta::{z_classical, z_symbolic, ZetaCombination};

/// Which classical product the decomposition is taken with respect to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RegKind {
    Sh,
    St,
}

impl RegKind {
    pub fn parse(s: &str) -> Result<RegKind> {
        Ok(match s {
            "sh" => RegKind::Sh,
            "st" => RegKind::St,
            _ => return Err(Error::Parse(format!("unknown regularization kind {s:?}"))),
        })
    }

    pub fn product_kind(self) -> ProductKind {
        match self {
            RegKind::Sh => ProductKind::Sh,
            RegKind::St => ProductKind::St,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RegKind::Sh => "sh",
            RegKind::St => "st",
        }
    }
}

/// An h^1 element written as a polynomial in y: parts[i] is the h^0
/// coefficient of the i-th product power of y.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegDecomposition {
    pub kind: RegKind,
    pub parts: Vec<Element>,
}

impl RegDecomposition {
    /// Recombines Σ_i parts[i] ⊛ y^{⊛i} under the matching product.
    pub fn reconstruct(&self) -> Element {
        let kind = self.kind.product_kind();
        let mut acc = Element::zero();
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            let yp = y_power(kind, i);
            acc = acc.add(&product(kind, part, &yp).unwrap());
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.name(),
            "parts": self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// y^{⊛i} under the given classical product (memoized through the word
/// product cache).
fn y_power(kind: ProductKind, i: usize) -> Element {
    let mut acc = Element::one();
    let y = Element::from_word(Word::single(Letter::Y));
    for _ in 0..i {
        acc = product(kind, &acc, &y).unwrap();
    }
    acc
}

/// Per-weight change of basis: coordinates of each weight-k h^1 word in the
/// spanning set { u ⊛ y^{⊛i} : u an h^0 word of weight k−i }.
struct WeightBasis {
    /// (u, i) labelling each basis element.
    columns: Vec<(Word, usize)>,
    /// Row per h^1 word of this weight, in canonical word order.
    coords: BTreeMap<Word, Vec<Rat>>,
}

static BASIS_MEMO: Lazy<Mutex<HashMap<(RegKind, usize), Arc<WeightBasis>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn h0_words_of_weight(m: usize) -> Vec<Word> {
    if m == 0 {
        return vec![Word::empty()];
    }
    if m == 1 {
        return vec![];
    }
    // x <middle> y over all 2^{m-2} middles, in canonical (lex) order.
    let mut out = Vec::with_capacity(1 << (m - 2));
    for mask in 0u64..(1u64 << (m - 2)) {
        let mut letters = vec![Letter::X];
        for b in (0..m - 2).rev() {
            letters.push(if (mask >> b) & 1 == 1 { Letter::Y } else { Letter::X });
        }
        letters.push(Letter::Y);
        out.push(Word::from_letters(&letters));
    }
    out
}

fn h1_words_of_weight(k: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(1 << (k - 1));
    for mask in 0u64..(1u64 << (k - 1)) {
        let mut letters = Vec::with_capacity(k);
        for b in (0..k - 1).rev() {
            letters.push(if (mask >> b) & 1 == 1 { Letter::Y } else { Letter::X });
        }
        letters.push(Letter::Y);
        out.push(Word::from_letters(&letters));
    }
    out.sort();
    out
}

/// The products of t-free words under sh/st have constant coefficients;
/// extract them as rationals.
fn constant_coeff(p: &TPoly) -> Rat {
    debug_assert!(p.degree().unwrap_or(0) == 0);
    p.coeff(0)
}

fn weight_basis(kind: RegKind, k: usize) -> Arc<WeightBasis> {
    if let Some(b) = BASIS_MEMO.lock().unwrap().get(&(kind, k)) {
        return b.clone();
    }
    let pk = kind.product_kind();
    let mut columns = Vec::new();
    for i in 0..=k {
        for u in h0_words_of_weight(k - i) {
            columns.push((u, i));
        }
    }
    let rows = h1_words_of_weight(k);
    let n = rows.len();
    assert_eq!(columns.len(), n);
    let row_of: HashMap<Word, usize> = rows.iter().enumerate().map(|(i, w)| (*w, i)).collect();

    // matrix[r][c] = coefficient of word r in column c's expansion
    let mut matrix = vec![vec![Rat::zero(); n]; n];
    for (c, (u, i)) in columns.iter().enumerate() {
        let expanded = product(pk, &Element::from_word(*u), &y_power(pk, *i)).unwrap();
        for (w, coeff) in expanded.iter() {
            matrix[row_of[w]][c] = constant_coeff(coeff);
        }
    }

    // Solve M X = I exactly; column r of X gives the coordinates of word r.
    let solved = solve_identity(matrix);
    let coords = rows
        .into_iter()
        .enumerate()
        .map(|(r, w)| (w, (0..n).map(|c| solved[c][r].clone()).collect()))
        .collect();

    let basis = Arc::new(WeightBasis { columns, coords });
    BASIS_MEMO
        .lock()
        .unwrap()
        .entry((kind, k))
        .or_insert(basis)
        .clone()
}

/// Exact Gauss-Jordan inversion over Q. Returns M^{-1} as rows.
fn solve_identity(mut m: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row = vec![Rat::zero(); n];
            row[i] = rat_int(1);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("decomposition system is singular");
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let d = f.clone() * m[col][j].clone();
                m[r][j] -= d;
                let d = f.clone() * inv[col][j].clone();
                inv[r][j] -= d;
            }
        }
    }
    inv
}

/// Unique decomposition of an h^1 element as Σ_i parts[i] ⊛ y^{⊛i} with
/// h^0 parts, with respect to the classical product of the given kind.
pub fn reg_decompose(kind: RegKind, e: &Element) -> Result<RegDecomposition> {
    if !e.in_h1() {
        return Err(Error::NotInH1(e.to_string()));
    }
    let y_degree = e
        .iter()
        .map(|(w, _)| w.letters().filter(|a| matches!(a, Letter::Y)).count())
        .max()
        .unwrap_or(0);
    let mut parts = vec![Element::zero(); y_degree + 1];
    for (w, c) in e.iter() {
        if w.is_empty() || w.starts_with_x() {
            parts[0].add_term(*w, c.clone());
            continue;
        }
        let basis = weight_basis(kind, w.len());
        let coords = &basis.coords[w];
        for ((u, i), coef) in basis.columns.iter().zip(coords) {
            if coef.is_zero() {
                continue;
            }
            parts[*i].add_term(*u, c.scale(coef));
        }
    }
    while parts.len() > 1 && parts.last().unwrap().is_zero() {
        parts.pop();
    }
    Ok(RegDecomposition { kind, parts })
}

/// The regularized symbol map Z_t^⊔ (kind sh) or Z_t^* (kind st): apply S_t,
/// decompose, and send each h^0 part through the plain symbol map times T^i.
pub fn z_reg_eval(kind: RegKind, e: &Element) -> Result<ZetaCombination> {
    if !e.in_h1() {
        return Err(Error::NotInH1(e.to_string()));
    }
    let shifted = s_map(e, false);
    let dec = reg_decompose(kind, &shifted)?;
    let mut acc = ZetaCombination::zero();
    for (i, part) in dec.parts.iter().enumerate() {
        if part.is_zero() {
            continue;
        }
        acc = acc.add(&z_classical(part)?.mul_big_t_pow(i));
    }
    if e.in_h0() {
        assert_eq!(acc.big_t_degree().unwrap_or(0), 0);
        debug_assert_eq!(acc, z_symbolic(e)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::word_product as wp;
    use crate::product::ProductKind;

    fn el(s: &str) -> Element {
        Element::parse(s).unwrap()
    }

    #[test]
    fn decompose_y() {
        let d = reg_decompose(RegKind::Sh, &el("y")).unwrap();
        assert_eq!(d.parts, vec![Element::zero(), Element::one()]);
        let d = reg_decompose(RegKind::St, &el("y")).unwrap();
        assert_eq!(d.parts, vec![Element::zero(), Element::one()]);
    }

    #[test]
    fn decompose_yxy() {
        let d = reg_decompose(RegKind::Sh, &el("yxy")).unwrap();
        assert_eq!(d.parts, vec![el("-2*xyy"), el("xy")]);
        let d = reg_decompose(RegKind::St, &el("yxy")).unwrap();
        assert_eq!(d.parts, vec![el("-xyy - xxy"), el("xy")]);
    }

    #[test]
    fn round_trip_small_weights() {
        for kind in [RegKind::Sh, RegKind::St] {
            for k in 1..=6 {
                for w in h1_words_of_weight(k) {
                    let e = Element::from_word(w);
                    let d = reg_decompose(kind, &e).unwrap();
                    assert_eq!(d.reconstruct(), e, "{kind:?} {w}");
                    for part in &d.parts {
                        assert!(part.in_h0());
                    }
                }
            }
        }
    }

    #[test]
    fn round_trip_with_t_coefficients() {
        let e = el("yxy + t*yy - 3*xy");
        for kind in [RegKind::Sh, RegKind::St] {
            let d = reg_decompose(kind, &e).unwrap();
            assert_eq!(d.reconstruct(), e);
        }
    }

    #[test]
    fn perturbed_parts_fail_round_trip() {
        let e = el("yxyy");
        for kind in [RegKind::Sh, RegKind::St] {
            let mut d = reg_decompose(kind, &e).unwrap();
            d.parts[0] = d.parts[0].add(&el("xxxy"));
            assert_ne!(d.reconstruct(), e);
        }
    }

    #[test]
    fn z_reg_examples() {
        let r = z_reg_eval(RegKind::Sh, &el("y")).unwrap();
        assert_eq!(r.to_string(), "T");
        let r = z_reg_eval(RegKind::St, &el("y")).unwrap();
        assert_eq!(r.to_string(), "T");
        let r = z_reg_eval(RegKind::Sh, &el("xy")).unwrap();
        assert_eq!(r.to_string(), "zeta(2)");
        // Z_t^sh(yxy) = t zeta(3) + T zeta(2) - 2 zeta(2,1)
        let r = z_reg_eval(RegKind::Sh, &el("yxy")).unwrap();
        assert_eq!(
            r.to_string(),
            "(T)*zeta(2) + (t)*zeta(3) + (-2)*zeta(2,1)"
        );
    }

    #[test]
    fn h0_agreement() {
        for s in ["xy", "xxyxy + 2*xyy", "t*xxxy"] {
            let e = el(s);
            for kind in [RegKind::Sh, RegKind::St] {
                assert_eq!(z_reg_eval(kind, &e).unwrap(), z_symbolic(&e).unwrap());
            }
        }
    }

    #[test]
    fn rejects_outside_h1() {
        assert!(reg_decompose(RegKind::Sh, &el("yx")).is_err());
        assert!(z_reg_eval(RegKind::St, &el("x")).is_err());
    }

    #[test]
    fn y_powers_match_word_products() {
        let y = Word::single(Letter::Y);
        let yy = wp(ProductKind::Sh, y, y);
        assert_eq!(y_power(ProductKind::Sh, 2), yy);
    }
}
