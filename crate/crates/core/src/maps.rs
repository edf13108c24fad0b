//! The substitution automorphism sigma_t (y -> tx + y) and its
//! last-letter-preserving variant S_t.

use crate::coeff::{rat_int, TPoly};
use crate::word::{Element, Letter, Word};

/// sigma_t(x) = x, sigma_t(y) = tx + y, extended multiplicatively over
/// concatenation and Q[t]-linearly. With `negate_t` the substitution is
/// y -> -tx + y (the inverse automorphism).
pub fn sigma_map(e: &Element, negate_t: bool) -> Element {
    let t = TPoly::monomial(rat_int(if negate_t { -1 } else { 1 }), 1);
    let mut acc = Element::zero();
    for (w, c) in e.iter() {
        let img = sigma_word(*w, &t);
        for (v, p) in img.iter() {
            acc.add_term(*v, p.mul(c));
        }
    }
    acc
}

fn sigma_word(w: Word, t: &TPoly) -> Element {
    // Build right-to-left: each y contributes (t x + y).
    let mut acc = Element::one();
    for a in w.letters().collect::<Vec<_>>().into_iter().rev() {
        let mut next = Element::zero();
        for (v, c) in acc.iter() {
            match a {
                Letter::X => next.add_term(Word::cons(Letter::X, *v), c.clone()),
                Letter::Y => {
                    next.add_term(Word::cons(Letter::Y, *v), c.clone());
                    next.add_term(Word::cons(Letter::X, *v), c.mul(t));
                }
            }
        }
        acc = next;
    }
    acc
}

/// S_t(1) = 1, S_t(wa) = sigma_t(w) a for a word wa with final letter a,
/// extended Q[t]-linearly. S_t^{-1} = S_{-t} (pass `negate_t`).
pub fn s_map(e: &Element, negate_t: bool) -> Element {
    let mut acc = Element::zero();
    for (w, c) in e.iter() {
        match w.split_last() {
            None => acc.add_term(Word::empty(), c.clone()),
            Some((head, a)) => {
                let img = sigma_map(&Element::from_word(head), negate_t);
                for (v, p) in img.iter() {
                    acc.add_term(v.concat(&Word::single(a)), p.mul(c));
                }
            }
        }
    }
    acc
}
