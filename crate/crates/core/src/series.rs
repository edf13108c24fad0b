//! Truncated multivariate power series with a weighted total-degree cap,
//! generic over the coefficient ring. Coefficients can be rationals, f64,
//! or elements of the harmonic word algebra (multiplied by the stuffle
//! product), which lets the same arithmetic drive exact symbolic reductions
//! and quick numeric checks.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};

use crate::coeff::Rat;
use crate::product::{product, ProductKind};
use crate::word::Element;

/// Coefficient ring for `MSeries`.
pub trait SeriesCoeff: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rat) -> Self;
}

impl SeriesCoeff for Rat {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
}

impl SeriesCoeff for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn scale(&self, r: &Rat) -> Self {
        self * (r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap())
    }
}

/// Element of the word algebra multiplied with the classical harmonic
/// (stuffle) product; models products of nested harmonic sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StElement(pub Element);

impl SeriesCoeff for StElement {
    fn zero() -> Self {
        StElement(Element::zero())
    }

    fn one() -> Self {
        StElement(Element::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        StElement(self.0.add(&other.0))
    }

    fn mul(&self, other: &Self) -> Self {
        StElement(product(ProductKind::St, &self.0, &other.0).expect("stuffle operands in h^1"))
    }

    fn neg(&self) -> Self {
        StElement(self.0.neg())
    }

    fn scale(&self, r: &Rat) -> Self {
        StElement(self.0.scale_rat(r))
    }
}

/// Multivariate series truncated at a weighted total degree: monomial
/// exponents `e` carry degree Σ e_i · weight_i, and any term beyond `cap`
/// is dropped on construction.
#[derive(Clone, Debug)]
pub struct MSeries<C: SeriesCoeff> {
    weights: Vec<usize>,
    cap: usize,
    terms: BTreeMap<Vec<usize>, C>,
}

impl<C: SeriesCoeff> MSeries<C> {
    pub fn zero(weights: &[usize], cap: usize) -> Self {
        assert!(weights.iter().all(|&w| w >= 1));
        MSeries {
            weights: weights.to_vec(),
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(weights: &[usize], cap: usize) -> Self {
        let mut s = MSeries::zero(weights, cap);
        s.add_term(vec![0; weights.len()], C::one());
        s
    }

    pub fn monomial(weights: &[usize], cap: usize, expo: Vec<usize>, c: C) -> Self {
        let mut s = MSeries::zero(weights, cap);
        s.add_term(expo, c);
        s
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn degree_of(&self, expo: &[usize]) -> usize {
        expo.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    pub fn add_term(&mut self, expo: Vec<usize>, c: C) {
        assert_eq!(expo.len(), self.weights.len());
        if c.is_zero() || self.degree_of(&expo) > self.cap {
            return;
        }
        match self.terms.get_mut(&expo) {
            Some(cur) => {
                *cur = cur.add(&c);
                if cur.is_zero() {
                    self.terms.remove(&expo);
                }
            }
            None => {
                self.terms.insert(expo, c);
            }
        }
    }

    pub fn coeff(&self, expo: &[usize]) -> C {
        self.terms.get(expo).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest weighted degree among stored terms.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.keys().map(|e| self.degree_of(e)).min()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.weights, other.weights);
        let mut r = self.clone();
        for (e, c) in other.iter() {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MSeries {
            weights: self.weights.clone(),
            cap: self.cap,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.weights, other.weights);
        let mut r = MSeries::zero(&self.weights, self.cap);
        for (e1, c1) in self.iter() {
            let d1 = self.degree_of(e1);
            for (e2, c2) in other.iter() {
                if d1 + other.degree_of(e2) > self.cap {
                    continue;
                }
                let e: Vec<usize> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        r
    }

    pub fn scale(&self, r: &Rat) -> Self {
        self.scale_coeff_with(|c| c.scale(r))
    }

    pub fn scale_coeff(&self, k: &C) -> Self {
        self.scale_coeff_with(|c| c.mul(k))
    }

    fn scale_coeff_with(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = MSeries::zero(&self.weights, self.cap);
        for (e, c) in self.iter() {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    /// exp of a series with zero constant term: Σ_k self^k / k!.
    pub fn exp(&self) -> Self {
        assert!(
            self.coeff(&vec![0; self.weights.len()]).is_zero(),
            "exp needs zero constant term"
        );
        let mut acc = MSeries::one(&self.weights, self.cap);
        let mut power = MSeries::one(&self.weights, self.cap);
        for k in 1..=self.cap {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            let inv_k = Rat::new(1.into(), (k as i64).into());
            power = power.scale(&inv_k);
            acc = acc.add(&power);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{parse_rat, rat_int};
    use crate::word::Word;

    #[test]
    fn exp_of_two_variables() {
        // exp(u + v): coefficient of u^a v^b is 1/(a! b!)
        let w = [1usize, 1];
        let u = MSeries::monomial(&w, 4, vec![1, 0], rat_int(1));
        let v = MSeries::monomial(&w, 4, vec![0, 1], rat_int(1));
        let e = u.add(&v).exp();
        assert_eq!(e.coeff(&[0, 0]), rat_int(1));
        assert_eq!(e.coeff(&[2, 1]), parse_rat("1/2").unwrap());
        assert_eq!(e.coeff(&[2, 2]), parse_rat("1/4").unwrap());
        assert_eq!(e.coeff(&[3, 1]), parse_rat("1/6").unwrap());
    }

    #[test]
    fn weighted_cap_truncates() {
        // W has weight 2: u^1 W^2 has degree 5 > cap 4 and is dropped
        let w = [1usize, 2];
        let a = MSeries::monomial(&w, 4, vec![1, 0], rat_int(1));
        let b = MSeries::monomial(&w, 4, vec![0, 1], rat_int(1));
        let q = a.add(&b).mul(&a.add(&b));
        assert_eq!(q.coeff(&[2, 0]), rat_int(1));
        assert_eq!(q.coeff(&[1, 1]), rat_int(2));
        assert_eq!(q.coeff(&[0, 2]), rat_int(1));
        let p = q.mul(&b);
        assert_eq!(p.coeff(&[2, 1]), rat_int(1));
        assert_eq!(p.coeff(&[1, 2]), rat_int(0));
        assert_eq!(p.coeff(&[0, 3]), rat_int(0));
    }

    #[test]
    fn harmonic_coefficients_multiply_by_stuffle() {
        // H_1 * H_1 = 2 H_{1,1} + H_2 as word algebra elements
        let h1 = StElement(Element::from_word(Word::parse("y").unwrap()));
        let sq = h1.mul(&h1);
        let h11 = Word::parse("yy").unwrap();
        let h2 = Word::parse("xy").unwrap();
        assert_eq!(sq.0.coeff(&h11), crate::coeff::TPoly::constant(rat_int(2)));
        assert_eq!(sq.0.coeff(&h2), crate::coeff::TPoly::one());
    }

    #[test]
    fn f64_series_exp() {
        let w = [1usize];
        let x = MSeries::monomial(&w, 6, vec![1], 1.0f64);
        let e = x.exp();
        assert!((e.coeff(&[4]) - 1.0 / 24.0).abs() < 1e-15);
    }
}
