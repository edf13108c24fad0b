//! Words over the alphabet {x, y}, indices, and Q[t]-linear combinations
//! of words (the algebra h_t and its subalgebras h_t^1, h_t^0).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::{format_rat, Rat, TPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Letter {
    X,
    Y,
}

/// A word over {x, y}, stored as a bit sequence with x = 0, y = 1.
/// The first letter occupies the most significant used bit, so that for
/// equal lengths the numeric order of `bits` is the lexicographic order
/// with x < y.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    pub const MAX_LEN: usize = 63;

    pub fn empty() -> Self {
        Word { len: 0, bits: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn letter(&self, i: usize) -> Letter {
        debug_assert!(i < self.len());
        if (self.bits >> (self.len() - 1 - i)) & 1 == 1 {
            Letter::Y
        } else {
            Letter::X
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn single(a: Letter) -> Self {
        Word {
            len: 1,
            bits: match a {
                Letter::X => 0,
                Letter::Y => 1,
            },
        }
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        assert!(letters.len() <= Self::MAX_LEN);
        let mut bits = 0u64;
        for &a in letters {
            bits = (bits << 1) | matches!(a, Letter::Y) as u64;
        }
        Word {
            len: letters.len() as u8,
            bits,
        }
    }

    /// Prepend a letter.
    pub fn cons(a: Letter, w: Word) -> Self {
        assert!(w.len() < Self::MAX_LEN);
        Word {
            len: w.len + 1,
            bits: ((matches!(a, Letter::Y) as u64) << w.len()) | w.bits,
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        assert!(self.len() + other.len() <= Self::MAX_LEN);
        Word {
            len: self.len + other.len,
            bits: (self.bits << other.len()) | other.bits,
        }
    }

    /// Splits off the first letter: w = a v.
    pub fn split_first(&self) -> Option<(Letter, Word)> {
        if self.is_empty() {
            return None;
        }
        let a = self.letter(0);
        let rest = Word {
            len: self.len - 1,
            bits: self.bits & ((1u64 << (self.len() - 1)) - 1),
        };
        Some((a, rest))
    }

    /// Splits off the last letter: w = v a.
    pub fn split_last(&self) -> Option<(Word, Letter)> {
        if self.is_empty() {
            return None;
        }
        let a = self.letter(self.len() - 1);
        let head = Word {
            len: self.len - 1,
            bits: self.bits >> 1,
        };
        Some((head, a))
    }

    /// Splits a leading z_k = x^{k-1} y factor. Requires the word to start
    /// with a z-letter block, i.e. to contain a y.
    pub fn split_leading_z(&self) -> Option<(u32, Word)> {
        let mut k = 0u32;
        let mut rest = *self;
        loop {
            let (a, tail) = rest.split_first()?;
            k += 1;
            rest = tail;
            if matches!(a, Letter::Y) {
                return Some((k, rest));
            }
        }
    }

    pub fn starts_with_x(&self) -> bool {
        !self.is_empty() && matches!(self.letter(0), Letter::X)
    }

    pub fn ends_with_y(&self) -> bool {
        !self.is_empty() && matches!(self.letter(self.len() - 1), Letter::Y)
    }

    /// x^k
    pub fn x_pow(k: usize) -> Word {
        Word::from_letters(&vec![Letter::X; k])
    }

    /// y^k
    pub fn y_pow(k: usize) -> Word {
        Word::from_letters(&vec![Letter::Y; k])
    }

    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        if s.starts_with('z') || s.starts_with('Z') {
            return Self::parse_z_notation(s);
        }
        let mut letters = Vec::new();
        for c in s.chars() {
            match c {
                'x' => letters.push(Letter::X),
                'y' => letters.push(Letter::Y),
                c if c.is_whitespace() => {}
                _ => return Err(Error::Parse(format!("bad letter {c:?} in word {s:?}"))),
            }
        }
        Ok(Word::from_letters(&letters))
    }

    /// "z2z3", "z2 z3"
    fn parse_z_notation(s: &str) -> Result<Word> {
        let mut w = Word::empty();
        let mut it = s.chars().peekable();
        while let Some(c) = it.next() {
            if c.is_whitespace() {
                continue;
            }
            if c != 'z' && c != 'Z' {
                return Err(Error::Parse(format!("bad z-notation {s:?}")));
            }
            let mut digits = String::new();
            while it.peek().map_or(false, |d| d.is_ascii_digit()) {
                digits.push(it.next().unwrap());
            }
            let k: u32 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad z-notation {s:?}")))?;
            if k == 0 {
                return Err(Error::Parse("z_0 is not a letter".into()));
            }
            w = w.concat(&Index::new(vec![k])?.word());
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for a in self.letters() {
            write!(f, "{}", if matches!(a, Letter::X) { 'x' } else { 'y' })?;
        }
        Ok(())
    }
}

/// A composition (k_1, ..., k_n) of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Index {
    parts: Vec<u32>,
}

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Index> {
        if parts.is_empty() {
            return Err(Error::Parse("index must be nonempty".into()));
        }
        if parts.iter().any(|&k| k == 0) {
            return Err(Error::Parse("index parts must be positive".into()));
        }
        Ok(Index { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    pub fn height(&self) -> usize {
        self.parts.iter().filter(|&&k| k >= 2).count()
    }

    pub fn is_admissible(&self) -> bool {
        self.parts[0] >= 2
    }

    /// z_{k_1} ... z_{k_n}
    pub fn word(&self) -> Word {
        let mut w = Word::empty();
        for &k in &self.parts {
            w = w.concat(&Word::x_pow(k as usize - 1));
            w = w.concat(&Word::single(Letter::Y));
        }
        w
    }

    /// Inverse of the z-word encoding. Fails unless the word is a nonempty
    /// monomial of h^1 (ends in y).
    pub fn from_word(w: &Word) -> Result<Index> {
        if w.is_empty() || !w.ends_with_y() {
            return Err(Error::NotInH1(w.to_string()));
        }
        let mut parts = Vec::new();
        let mut rest = *w;
        while !rest.is_empty() {
            let (k, tail) = rest.split_leading_z().unwrap();
            parts.push(k);
            rest = tail;
        }
        Index::new(parts)
    }

    pub fn parse(s: &str) -> Result<Index> {
        let parts: Result<Vec<u32>> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad index {s:?}")))
            })
            .collect();
        Index::new(parts?)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubalgebraClass {
    H0,
    H1,
    Neither,
}

/// A finite Q[t]-linear combination of words; the working representation of
/// elements of h_t. Terms are kept in length-then-lexicographic order with
/// x < y, and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<Word, TPoly>,
}

impl Element {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Element::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Element::term(w, TPoly::one())
    }

    pub fn term(w: Word, c: TPoly) -> Self {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: TPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(TPoly::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &TPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> TPoly {
        self.terms.get(w).cloned().unwrap_or_else(TPoly::zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut r = self.clone();
        for (w, c) in other.iter() {
            r.add_term(*w, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(w, c)| (*w, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &TPoly) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        let mut r = Element::zero();
        for (w, a) in self.iter() {
            r.add_term(*w, a.mul(c));
        }
        r
    }

    pub fn scale_rat(&self, c: &Rat) -> Element {
        self.scale(&TPoly::constant(c.clone()))
    }

    /// Substitute `t -> -t` in every coefficient.
    pub fn negate_t(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(w, c)| (*w, c.negate_t())).collect(),
        }
    }

    /// Substitute a rational value for `t`.
    pub fn eval_t(&self, t: &Rat) -> Element {
        let mut r = Element::zero();
        for (w, c) in self.iter() {
            r.add_term(*w, TPoly::constant(c.eval(t)));
        }
        r
    }

    /// h0 if every monomial is 1 or starts with x and ends with y; h1 if
    /// every monomial is 1 or ends with y; the class of a sum is the weakest
    /// class among its monomials.
    pub fn subalgebra_class(&self) -> SubalgebraClass {
        let mut class = SubalgebraClass::H0;
        for w in self.terms.keys() {
            if w.is_empty() {
                continue;
            }
            if !w.ends_with_y() {
                return SubalgebraClass::Neither;
            }
            if !w.starts_with_x() {
                class = SubalgebraClass::H1;
            }
        }
        class
    }

    pub fn in_h1(&self) -> bool {
        !matches!(self.subalgebra_class(), SubalgebraClass::Neither)
    }

    pub fn in_h0(&self) -> bool {
        matches!(self.subalgebra_class(), SubalgebraClass::H0)
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Parses a linear combination such as "xy + yx - t*xx" or
    /// "z2z3 + z3z2 + (1-2t)*z5". Coefficients may be rationals, `t`
    /// monomials like `3t^2`, or parenthesised t-polynomials.
    pub fn parse(s: &str) -> Result<Element> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut e = Element::zero();
        for (sign, term) in split_signed_terms(s)? {
            let (coeff, word) = parse_term(term)?;
            let coeff = if sign < 0 { coeff.neg() } else { coeff };
            e.add_term(word, coeff);
        }
        Ok(e)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, as_z: bool) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.iter() {
            let (neg, cs) = format_coeff(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let ws = if as_z && !w.is_empty() {
                let idx = Index::from_word(w).expect("z-display requires h^1 words");
                idx.parts()
                    .iter()
                    .map(|k| format!("z{k}"))
                    .collect::<String>()
            } else {
                w.to_string()
            };
            match cs {
                None => write!(f, "{ws}")?,
                Some(cs) if w.is_empty() => write!(f, "{cs}")?,
                Some(cs) => write!(f, "{cs}*{ws}")?,
            }
        }
        Ok(())
    }

    /// Render with z-notation (requires every monomial to lie in h^1).
    pub fn display_z(&self) -> ZDisplay<'_> {
        ZDisplay(self)
    }
}

pub struct ZDisplay<'a>(&'a Element);

impl fmt::Display for ZDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, true)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

/// Returns (is_negative, Some(coefficient-string)) where None means the
/// coefficient is exactly 1 (after sign extraction).
fn format_coeff(c: &TPoly) -> (bool, Option<String>) {
    use num_traits::Signed;
    if let Some(0) = c.degree() {
        let v = c.coeff(0);
        let neg = v.is_negative();
        let mag = v.abs();
        if mag.is_one() {
            return (neg, None);
        }
        return (neg, Some(format_rat(&mag)));
    }
    // single monomial in t?
    let nonzero: Vec<usize> = (0..=c.degree().unwrap())
        .filter(|&i| !c.coeff(i).is_zero())
        .collect();
    if nonzero.len() == 1 {
        let i = nonzero[0];
        let v = c.coeff(i);
        let neg = v.is_negative();
        let mag = v.abs();
        let tpow = if i == 1 { "t".to_string() } else { format!("t^{i}") };
        let s = if mag.is_one() {
            tpow
        } else {
            format!("{}*{}", format_rat(&mag), tpow)
        };
        return (neg, Some(s));
    }
    (false, Some(format!("({c})")))
}

fn split_signed_terms(s: &str) -> Result<Vec<(i32, &str)>> {
    let mut terms = Vec::new();
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut sign = 1i32;
    let mut i = 0usize;
    while i < bytes.len() {
        match bytes[i] as char {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                let chunk = s[start..i].trim();
                if chunk.is_empty() {
                    if !terms.is_empty() || start != 0 {
                        // leading sign only allowed at the very start
                        if start != 0 {
                            return Err(Error::Parse(format!("dangling sign in {s:?}")));
                        }
                    }
                } else {
                    terms.push((sign, chunk));
                }
                sign = if bytes[i] as char == '-' { -1 } else { 1 };
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    let chunk = s[start..].trim();
    if chunk.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    terms.push((sign, chunk));
    Ok(terms)
}

fn parse_term(term: &str) -> Result<(TPoly, Word)> {
    let term = term.trim();
    // optional coefficient separated by '*'
    if let Some(pos) = find_top_level_star(term) {
        let coeff = parse_tpoly_atom(term[..pos].trim())?;
        let word = Word::parse(term[pos + 1..].trim())?;
        return Ok((coeff, word));
    }
    // bare word, bare coefficient (constant term), or juxtaposed "3t" etc.
    if term.starts_with(|c: char| c == 'x' || c == 'y' || c == 'z' || c == 'Z')
        && Word::parse(term).is_ok()
    {
        return Ok((TPoly::one(), Word::parse(term)?));
    }
    if term == "1" {
        return Ok((TPoly::one(), Word::empty()));
    }
    let coeff = parse_tpoly_atom(term)?;
    Ok((coeff, Word::empty()))
}

fn find_top_level_star(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Parses "3", "-1/2", "t", "t^2", "3t", "2/3*t^2" (star optional before t),
/// or a parenthesised polynomial "(1-2t)".
fn parse_tpoly_atom(s: &str) -> Result<TPoly> {
    let s = s.trim();
    if s.starts_with('(') && s.ends_with(')') {
        return parse_tpoly_sum(&s[1..s.len() - 1]);
    }
    parse_tpoly_monomial(s)
}

fn parse_tpoly_sum(s: &str) -> Result<TPoly> {
    let mut acc = TPoly::zero();
    for (sign, term) in split_signed_terms(s)? {
        let m = parse_tpoly_monomial(term)?;
        acc = if sign < 0 { acc.sub(&m) } else { acc.add(&m) };
    }
    Ok(acc)
}

fn parse_tpoly_monomial(s: &str) -> Result<TPoly> {
    let s = s.trim().replace(['*', ' '], "");
    if let Some(tpos) = s.find('t') {
        let coeff_str = &s[..tpos];
        let coeff = if coeff_str.is_empty() {
            crate::coeff::rat_int(1)
        } else if coeff_str == "-" {
            crate::coeff::rat_int(-1)
        } else {
            crate::coeff::parse_rat(coeff_str)?
        };
        let rest = &s[tpos + 1..];
        let pow: usize = if rest.is_empty() {
            1
        } else if let Some(p) = rest.strip_prefix('^') {
            p.parse()
                .map_err(|_| Error::Parse(format!("bad power in {s:?}")))?
        } else {
            return Err(Error::Parse(format!("bad monomial {s:?}")));
        };
        Ok(TPoly::monomial(coeff, pow))
    } else {
        Ok(TPoly::constant(crate::coeff::parse_rat(&s)?))
    }
}
