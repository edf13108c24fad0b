//! The four bilinear products on h_t (shuffle, t-shuffle, harmonic,
//! t-harmonic) plus plain concatenation.
//!
//! The recursive rules revisit subproblems heavily during sweeps, so word
//! products are memoized globally. The cache is insert-only: entries are
//! fully constructed before insertion and never mutated afterwards.

use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

use crate::coeff::{rat_int, TPoly};
use crate::error::{Error, Result};
use crate::word::{Element, Letter, Word};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ProductKind {
    /// Noncommutative concatenation.
    Concat,
    /// Classical shuffle (the t = 0 specialization of TSh).
    Sh,
    /// t-shuffle.
    TSh,
    /// Classical harmonic (stuffle) product, defined on h^1.
    St,
    /// t-harmonic product, defined on h_t^1.
    TSt,
}

impl ProductKind {
    pub fn parse(s: &str) -> Result<ProductKind> {
        Ok(match s {
            "concat" => ProductKind::Concat,
            "sh" => ProductKind::Sh,
            "t_sh" | "tsh" => ProductKind::TSh,
            "st" => ProductKind::St,
            "t_st" | "tst" => ProductKind::TSt,
            _ => return Err(Error::Parse(format!("unknown product kind {s:?}"))),
        })
    }

    fn needs_h1(self) -> bool {
        matches!(self, ProductKind::St | ProductKind::TSt)
    }
}

static MEMO: Lazy<Mutex<HashMap<(ProductKind, Word, Word), Element>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub fn word_product(kind: ProductKind, w1: Word, w2: Word) -> Element {
    if kind == ProductKind::Concat {
        return Element::from_word(w1.concat(&w2));
    }
    if w1.is_empty() {
        return Element::from_word(w2);
    }
    if w2.is_empty() {
        return Element::from_word(w1);
    }
    let key = (kind, w1, w2);
    if let Some(e) = MEMO.lock().unwrap().get(&key) {
        return e.clone();
    }
    let result = match kind {
        ProductKind::Concat => unreachable!(),
        ProductKind::Sh => shuffle_step(w1, w2, false),
        ProductKind::TSh => shuffle_step(w1, w2, true),
        ProductKind::St => harmonic_step(w1, w2, false),
        ProductKind::TSt => harmonic_step(w1, w2, true),
    };
    MEMO.lock().unwrap().insert(key, result.clone());
    result
}

/// (S2): aw1 * bw2 = a(w1 * bw2) + b(aw1 * w2)
///                   - d(w1) rho(a) b w2 - d(w2) rho(b) a w1
/// with rho(x) = 0, rho(y) = t x; the rho terms are dropped for the
/// classical shuffle.
fn shuffle_step(v1: Word, v2: Word, with_t: bool) -> Element {
    let (a, w1) = v1.split_first().unwrap();
    let (b, w2) = v2.split_first().unwrap();
    let mut acc = Element::zero();
    for (w, c) in word_product_dispatch(w1, v2, with_t).iter() {
        acc.add_term(Word::cons(a, *w), c.clone());
    }
    for (w, c) in word_product_dispatch(v1, w2, with_t).iter() {
        acc.add_term(Word::cons(b, *w), c.clone());
    }
    if with_t {
        let minus_t = TPoly::monomial(rat_int(-1), 1);
        if w1.is_empty() && matches!(a, Letter::Y) {
            acc.add_term(Word::cons(Letter::X, v2), minus_t.clone());
        }
        if w2.is_empty() && matches!(b, Letter::Y) {
            acc.add_term(Word::cons(Letter::X, v1), minus_t);
        }
    }
    acc
}

fn word_product_dispatch(w1: Word, w2: Word, with_t: bool) -> Element {
    let kind = if with_t { ProductKind::TSh } else { ProductKind::Sh };
    word_product(kind, w1, w2)
}

/// (H2): z_k w1 * z_l w2 = z_k(w1 * z_l w2) + z_l(z_k w1 * w2)
///                         + c_merge z_{k+l}(w1 * w2)
///                         + (1 - d(w1) d(w2)) c_x x^{k+l}(w1 * w2)
/// with c_merge = 1 - 2t, c_x = t^2 - t for the t-harmonic product, and
/// c_merge = 1, c_x = 0 classically. The x^{k+l} correction is present
/// whenever at least one of w1, w2 is nonempty.
fn harmonic_step(v1: Word, v2: Word, with_t: bool) -> Element {
    let kind = if with_t { ProductKind::TSt } else { ProductKind::St };
    let (k, w1) = v1
        .split_leading_z()
        .expect("harmonic product operand must be an h^1 word");
    let (l, w2) = v2
        .split_leading_z()
        .expect("harmonic product operand must be an h^1 word");
    let zk = z_word(k);
    let zl = z_word(l);
    let mut acc = Element::zero();
    for (w, c) in word_product(kind, w1, v2).iter() {
        acc.add_term(zk.concat(w), c.clone());
    }
    for (w, c) in word_product(kind, v1, w2).iter() {
        acc.add_term(zl.concat(w), c.clone());
    }
    let merge = if with_t {
        TPoly::from_coeffs(vec![rat_int(1), rat_int(-2)])
    } else {
        TPoly::one()
    };
    let zkl = z_word(k + l);
    for (w, c) in word_product(kind, w1, w2).iter() {
        acc.add_term(zkl.concat(w), c.mul(&merge));
    }
    if with_t && !(w1.is_empty() && w2.is_empty()) {
        let t2_minus_t = TPoly::from_coeffs(vec![rat_int(0), rat_int(-1), rat_int(1)]);
        let xkl = Word::x_pow((k + l) as usize);
        for (w, c) in word_product(kind, w1, w2).iter() {
            acc.add_term(xkl.concat(w), c.mul(&t2_minus_t));
        }
    }
    acc
}

fn z_word(k: u32) -> Word {
    Word::x_pow(k as usize - 1).concat(&Word::single(Letter::Y))
}

/// Bilinear extension to elements. The harmonic products require both
/// operands to lie in h^1.
pub fn product(kind: ProductKind, a: &Element, b: &Element) -> Result<Element> {
    if kind.needs_h1() {
        for (name, e) in [("left", a), ("right", b)] {
            if !e.in_h1() {
                return Err(Error::NotInH1(format!("{name} operand {e}")));
            }
        }
    }
    let mut acc = Element::zero();
    for (w1, c1) in a.iter() {
        for (w2, c2) in b.iter() {
            let c = c1.mul(c2);
            for (w, p) in word_product(kind, *w1, *w2).iter() {
                acc.add_term(*w, p.mul(&c));
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Index;

    fn el(s: &str) -> Element {
        Element::parse(s).unwrap()
    }

    #[test]
    fn t_shuffle_letters() {
        // x tsh y = xy + yx - t xx
        let p = product(ProductKind::TSh, &el("x"), &el("y")).unwrap();
        assert_eq!(p, el("xy + yx - t*xx"));
        // y tsh y = 2yy - 2t xy
        let p = product(ProductKind::TSh, &el("y"), &el("y")).unwrap();
        assert_eq!(p, el("2*yy - 2t*xy"));
        // classical specialization
        let p = product(ProductKind::Sh, &el("x"), &el("y")).unwrap();
        assert_eq!(p, el("xy + yx"));
    }

    #[test]
    fn unit_laws() {
        for kind in [ProductKind::Sh, ProductKind::TSh, ProductKind::St, ProductKind::TSt] {
            let w = el("xy");
            assert_eq!(product(kind, &Element::one(), &w).unwrap(), w);
            assert_eq!(product(kind, &w, &Element::one()).unwrap(), w);
        }
    }

    #[test]
    fn t_harmonic_z2_z3() {
        // z_k tst z_l = z_k z_l + z_l z_k + (1-2t) z_{k+l}
        let z2 = Element::from_word(Index::parse("2").unwrap().word());
        let z3 = Element::from_word(Index::parse("3").unwrap().word());
        let p = product(ProductKind::TSt, &z2, &z3).unwrap();
        assert_eq!(p, el("z2z3 + z3z2 + (1-2t)*z5"));
    }

    #[test]
    fn t_harmonic_z1_z1z1() {
        // z_1 tst z_1 z_1 = 3 z_1^3 + (1-2t)(z_1 z_2 + z_2 z_1) + (t^2-t) z_3
        let z1 = el("y");
        let z11 = el("yy");
        let p = product(ProductKind::TSt, &z1, &z11).unwrap();
        let expected = el("3*yyy + (1-2t)*yxy + (1-2t)*xyy").add(&Element::term(
            Word::parse("xxy").unwrap(),
            TPoly::from_coeffs(vec![rat_int(0), rat_int(-1), rat_int(1)]),
        ));
        assert_eq!(p, expected);
    }

    #[test]
    fn harmonic_rejects_non_h1() {
        assert!(product(ProductKind::TSt, &el("yx"), &el("xy")).is_err());
        assert!(product(ProductKind::St, &el("xy"), &el("x")).is_err());
    }

    #[test]
    fn h0_closure() {
        for kind in [ProductKind::Sh, ProductKind::TSh, ProductKind::St, ProductKind::TSt] {
            let p = product(kind, &el("xy"), &el("xxy")).unwrap();
            assert!(p.in_h0(), "{kind:?} left h^0");
        }
    }
}
