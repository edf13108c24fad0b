//! Symbolic Q[t,T]-combinations of admissible MZV symbols and the
//! expansion of t-MZVs into them.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Rat, TPoly, TtPoly};
use crate::error::{Error, Result};
use crate::maps::s_map;
use crate::word::{Element, Index};

/// Key for a zeta symbol: an admissible index, or the empty symbol standing
/// for the constant 1. Ordered graded-lexicographically by
/// (weight, depth, parts) for deterministic, diffable output.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZetaSym(Vec<u32>);

impl ZetaSym {
    pub fn one() -> Self {
        ZetaSym(vec![])
    }

    pub fn from_index(k: &Index) -> Result<Self> {
        if !k.is_admissible() {
            return Err(Error::NotAdmissible(k.to_string()));
        }
        Ok(ZetaSym(k.parts().to_vec()))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self) -> Option<Index> {
        if self.0.is_empty() {
            None
        } else {
            Some(Index::new(self.0.clone()).unwrap())
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    fn grade(&self) -> (u32, usize) {
        (self.0.iter().sum(), self.0.len())
    }
}

impl PartialOrd for ZetaSym {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ZetaSym {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for ZetaSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
            write!(f, "zeta({})", parts.join(","))
        }
    }
}

/// A finite Q[t,T]-linear combination of admissible MZV symbols; the
/// symbolic codomain of Z_t and its regularized extensions.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ZetaCombination {
    terms: BTreeMap<ZetaSym, TtPoly>,
}

impl ZetaCombination {
    pub fn zero() -> Self {
        ZetaCombination {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: TtPoly) -> Self {
        let mut z = ZetaCombination::zero();
        z.add_term(ZetaSym::one(), c);
        z
    }

    pub fn term(sym: ZetaSym, c: TtPoly) -> Self {
        let mut z = ZetaCombination::zero();
        z.add_term(sym, c);
        z
    }

    pub fn add_term(&mut self, sym: ZetaSym, c: TtPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(sym.clone()).or_insert_with(TtPoly::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&sym);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ZetaSym, &TtPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, sym: &ZetaSym) -> TtPoly {
        self.terms.get(sym).cloned().unwrap_or_else(TtPoly::zero)
    }

    pub fn add(&self, other: &ZetaCombination) -> ZetaCombination {
        let mut r = self.clone();
        for (s, c) in other.iter() {
            r.add_term(s.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &ZetaCombination) -> ZetaCombination {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ZetaCombination {
        ZetaCombination {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c.neg())).collect(),
        }
    }

    pub fn scale_tpoly(&self, p: &TPoly) -> ZetaCombination {
        let mut r = ZetaCombination::zero();
        for (s, c) in self.iter() {
            r.add_term(s.clone(), c.mul_tpoly(p));
        }
        r
    }

    pub fn scale_rat(&self, c: &Rat) -> ZetaCombination {
        let mut r = ZetaCombination::zero();
        for (s, v) in self.iter() {
            r.add_term(s.clone(), v.scale(c));
        }
        r
    }

    pub fn mul_big_t_pow(&self, i: usize) -> ZetaCombination {
        ZetaCombination {
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.clone(), c.mul_big_t_pow(i)))
                .collect(),
        }
    }

    pub fn big_t_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(|c| c.big_t_degree()).max()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(s, c)| {
                    serde_json::json!({
                        "index": s.parts(),
                        "coeff_tT": c.to_json(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for ZetaCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let one_coeff = *c == TtPoly::one();
            if s.is_one() {
                write!(f, "{c}")?;
            } else if one_coeff {
                write!(f, "{s}")?;
            } else {
                write!(f, "({c})*{s}")?;
            }
        }
        Ok(())
    }
}

/// Expands a t-MZV symbol over all 2^{n-1} comma/plus fillings: each filling
/// p contributes t^{n - dep(p)} zeta(p).
pub fn tmzv_expand(k: &Index) -> Result<ZetaCombination> {
    if !k.is_admissible() {
        return Err(Error::NotAdmissible(k.to_string()));
    }
    let parts = k.parts();
    let n = parts.len();
    let mut acc = ZetaCombination::zero();
    for mask in 0u64..(1u64 << (n - 1)) {
        // bit i set = the box between k_i and k_{i+1} is a plus
        let mut merged: Vec<u32> = vec![parts[0]];
        for i in 1..n {
            if (mask >> (i - 1)) & 1 == 1 {
                *merged.last_mut().unwrap() += parts[i];
            } else {
                merged.push(parts[i]);
            }
        }
        let t_pow = n - merged.len();
        let sym = ZetaSym::from_index(&Index::new(merged).unwrap())?;
        acc.add_term(sym, TtPoly::from_tpoly(TPoly::monomial(Rat::from_integer(1.into()), t_pow)));
    }
    Ok(acc)
}

/// The symbol map Z on plain MZV symbols: sends each h^0 monomial
/// z_{k_1}...z_{k_n} directly to zeta(k_1,...,k_n) with no box expansion.
/// Coefficients pass through unchanged.
pub fn z_classical(e: &Element) -> Result<ZetaCombination> {
    if !e.in_h0() {
        return Err(Error::NotInH0(e.to_string()));
    }
    let mut acc = ZetaCombination::zero();
    for (w, c) in e.iter() {
        let sym = if w.is_empty() {
            ZetaSym::one()
        } else {
            ZetaSym::from_index(&Index::from_word(w)?)?
        };
        acc.add_term(sym, TtPoly::from_tpoly(c.clone()));
    }
    Ok(acc)
}

/// The symbolic t-MZV map Z_t on h_t^0: linear extension of `tmzv_expand`
/// over the z-word decomposition. Agrees with z_classical after S_t.
pub fn z_symbolic(e: &Element) -> Result<ZetaCombination> {
    if !e.in_h0() {
        return Err(Error::NotInH0(e.to_string()));
    }
    let mut acc = ZetaCombination::zero();
    for (w, c) in e.iter() {
        if w.is_empty() {
            acc.add_term(ZetaSym::one(), TtPoly::from_tpoly(c.clone()));
            continue;
        }
        let expanded = tmzv_expand(&Index::from_word(w)?)?;
        for (s, p) in expanded.iter() {
            acc.add_term(s.clone(), p.mul_tpoly(c));
        }
    }
    Ok(acc)
}

/// Route equality Z_t = Z o S_t, usable as a self-check.
pub fn z_symbolic_via_s_map(e: &Element) -> Result<ZetaCombination> {
    z_classical(&s_map(e, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat_int;

    fn idx(s: &str) -> Index {
        Index::parse(s).unwrap()
    }

    #[test]
    fn expand_depth_one() {
        let z = tmzv_expand(&idx("2")).unwrap();
        assert_eq!(z.to_string(), "zeta(2)");
    }

    #[test]
    fn expand_two_one() {
        let z = tmzv_expand(&idx("2,1")).unwrap();
        assert_eq!(z.to_string(), "(t)*zeta(3) + zeta(2,1)");
    }

    #[test]
    fn expand_two_one_one() {
        // zeta(2,1,1) + t (zeta(3,1) + zeta(2,2)) + t^2 zeta(4)
        let z = tmzv_expand(&idx("2,1,1")).unwrap();
        assert_eq!(z.coeff(&ZetaSym::from_index(&idx("4")).unwrap()).eval(&rat_int(1), &rat_int(0)), rat_int(1));
        assert_eq!(z.coeff(&ZetaSym::from_index(&idx("4")).unwrap()), TtPoly::from_tpoly(TPoly::monomial(rat_int(1), 2)));
        assert_eq!(z.coeff(&ZetaSym::from_index(&idx("3,1")).unwrap()), TtPoly::from_tpoly(TPoly::t()));
        assert_eq!(z.coeff(&ZetaSym::from_index(&idx("2,2")).unwrap()), TtPoly::from_tpoly(TPoly::t()));
        assert_eq!(z.coeff(&ZetaSym::from_index(&idx("2,1,1")).unwrap()), TtPoly::one());
        assert_eq!(z.num_terms(), 4);
    }

    #[test]
    fn expand_rejects_non_admissible() {
        assert!(tmzv_expand(&idx("1,2")).is_err());
    }

    #[test]
    fn z_symbolic_matches_s_map_route() {
        for s in ["xy", "xyy", "xxyxy", "xyxyy"] {
            let e = Element::parse(s).unwrap();
            assert_eq!(z_symbolic(&e).unwrap(), z_symbolic_via_s_map(&e).unwrap(), "{s}");
        }
    }

    #[test]
    fn z_symbolic_rejects_outside_h0() {
        assert!(z_symbolic(&Element::parse("yx").unwrap()).is_err());
        assert!(z_symbolic(&Element::parse("y").unwrap()).is_err());
    }

    #[test]
    fn symbol_order_is_graded() {
        let a = ZetaSym::from_index(&idx("2,1")).unwrap();
        let b = ZetaSym::from_index(&idx("4")).unwrap();
        let c = ZetaSym::from_index(&idx("3")).unwrap();
        assert!(c < a); // weight 3 both, depth 1 < 2
        assert!(a < b); // weight 3 < 4
    }
}
