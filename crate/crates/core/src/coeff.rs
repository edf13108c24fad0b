//! Coefficient arithmetic: big rationals, polynomials in `t`, and
//! bivariate polynomials in `t` and the regularization variable `T`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "3", "-2/5".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = d
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn binomial(n: u64, k: u64) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(acc)
}

/// Dense polynomial in `t` with rational coefficients. The coefficient of
/// `t^i` sits at position `i`; trailing zeros are stripped, the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TPoly {
    coeffs: Vec<Rat>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        TPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = TPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return TPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        TPoly { coeffs }
    }

    pub fn t() -> Self {
        TPoly::monomial(Rat::one(), 1)
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = TPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        TPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TPoly {
        TPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> TPoly {
        TPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Substitute `t -> -t`.
    pub fn negate_t(&self) -> TPoly {
        TPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(format_rat(c)))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("TPoly must be a JSON array".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for e in arr {
            let s = e
                .as_str()
                .ok_or_else(|| Error::Parse("TPoly entries must be strings".into()))?;
            coeffs.push(parse_rat(s)?);
        }
        Ok(TPoly::from_coeffs(coeffs))
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_mag = mag.is_one();
            if i == 0 || !unit_mag {
                write!(f, "{}", format_rat(&mag))?;
            }
            if i > 0 {
                if !unit_mag {
                    write!(f, "*")?;
                }
                if i == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// Polynomial in `t` and `T` with rational coefficients, stored as a vector
/// of `TPoly` indexed by the power of `T`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TtPoly {
    by_t_cap: Vec<TPoly>,
}

impl TtPoly {
    pub fn zero() -> Self {
        TtPoly { by_t_cap: vec![] }
    }

    pub fn from_tpoly(p: TPoly) -> Self {
        let mut r = TtPoly { by_t_cap: vec![p] };
        r.normalize();
        r
    }

    pub fn constant(c: Rat) -> Self {
        TtPoly::from_tpoly(TPoly::constant(c))
    }

    pub fn one() -> Self {
        TtPoly::constant(Rat::one())
    }

    fn normalize(&mut self) {
        while self.by_t_cap.last().map_or(false, |p| p.is_zero()) {
            self.by_t_cap.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.by_t_cap.is_empty()
    }

    pub fn big_t_degree(&self) -> Option<usize> {
        if self.by_t_cap.is_empty() {
            None
        } else {
            Some(self.by_t_cap.len() - 1)
        }
    }

    /// Coefficient of `T^i` as a polynomial in `t`.
    pub fn coeff_of_big_t(&self, i: usize) -> TPoly {
        self.by_t_cap.get(i).cloned().unwrap_or_else(TPoly::zero)
    }

    pub fn add(&self, other: &TtPoly) -> TtPoly {
        let n = self.by_t_cap.len().max(other.by_t_cap.len());
        let mut by_t_cap = Vec::with_capacity(n);
        for i in 0..n {
            by_t_cap.push(self.coeff_of_big_t(i).add(&other.coeff_of_big_t(i)));
        }
        let mut r = TtPoly { by_t_cap };
        r.normalize();
        r
    }

    pub fn sub(&self, other: &TtPoly) -> TtPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TtPoly {
        TtPoly {
            by_t_cap: self.by_t_cap.iter().map(|p| p.neg()).collect(),
        }
    }

    pub fn mul_tpoly(&self, p: &TPoly) -> TtPoly {
        let mut r = TtPoly {
            by_t_cap: self.by_t_cap.iter().map(|q| q.mul(p)).collect(),
        };
        r.normalize();
        r
    }

    pub fn mul_big_t_pow(&self, i: usize) -> TtPoly {
        if self.is_zero() {
            return TtPoly::zero();
        }
        let mut by_t_cap = vec![TPoly::zero(); i];
        by_t_cap.extend(self.by_t_cap.iter().cloned());
        TtPoly { by_t_cap }
    }

    pub fn scale(&self, c: &Rat) -> TtPoly {
        let mut r = TtPoly {
            by_t_cap: self.by_t_cap.iter().map(|p| p.scale(c)).collect(),
        };
        r.normalize();
        r
    }

    pub fn eval(&self, t: &Rat, big_t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for p in self.by_t_cap.iter().rev() {
            acc = acc * big_t + p.eval(t);
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.by_t_cap.iter().map(|p| p.to_json()).collect())
    }
}

impl fmt::Display for TtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, p) in self.by_t_cap.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{p}")?;
            } else {
                let pow = if i == 1 { "T".into() } else { format!("T^{i}") };
                if p.is_one() {
                    write!(f, "{pow}")?;
                } else {
                    write!(f, "({p})*{pow}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tpoly_arith() {
        // (1 - 2t)(1 + t) = 1 - t - 2t^2
        let a = TPoly::from_coeffs(vec![rat_int(1), rat_int(-2)]);
        let b = TPoly::from_coeffs(vec![rat_int(1), rat_int(1)]);
        let p = a.mul(&b);
        assert_eq!(
            p,
            TPoly::from_coeffs(vec![rat_int(1), rat_int(-1), rat_int(-2)])
        );
        assert_eq!(p.eval(&rat(1, 2)), rat(0, 1));
    }

    #[test]
    fn tpoly_json_round_trip() {
        let p = TPoly::from_coeffs(vec![rat_int(1), rat_int(-2), rat_int(0), rat(1, 3)]);
        let j = p.to_json();
        assert_eq!(j, serde_json::json!(["1", "-2", "0", "1/3"]));
        assert_eq!(TPoly::from_json(&j).unwrap(), p);
    }

    #[test]
    fn tt_poly_eval() {
        // T*zeta-like coefficient: t + 2*T
        let p = TtPoly::from_tpoly(TPoly::t()).add(&TtPoly::constant(rat_int(2)).mul_big_t_pow(1));
        assert_eq!(p.eval(&rat(1, 2), &rat_int(3)), rat(13, 2));
        assert_eq!(p.big_t_degree(), Some(1));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), rat_int(6));
        assert_eq!(binomial(5, 0), rat_int(1));
        assert_eq!(binomial(3, 5), rat_int(0));
    }
}
