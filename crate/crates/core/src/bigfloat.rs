//! Thin wrapper around astro-float: a context carrying the working binary
//! precision and the shared constants cache, plus conversions from exact
//! rationals and to f64.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;

use crate::coeff::Rat;

pub type BF = BigFloat;

/// Numeric context: all operations run at `prec` bits with round-to-even.
pub struct Ctx {
    pub prec: usize,
    rm: RoundingMode,
    cc: Consts,
}

impl Ctx {
    pub fn new(prec: usize) -> Ctx {
        assert!(prec >= 64, "working precision below 64 bits");
        Ctx {
            prec,
            rm: RoundingMode::ToEven,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn zero(&self) -> BF {
        BigFloat::from_i64(0, self.prec)
    }

    pub fn from_i64(&self, v: i64) -> BF {
        BigFloat::from_i64(v, self.prec)
    }

    pub fn from_f64(&self, v: f64) -> BF {
        BigFloat::from_f64(v, self.prec)
    }

    pub fn from_bigint(&self, v: &BigInt) -> BF {
        let (sign, digits) = v.to_u64_digits();
        let base = BigFloat::from_i128(1i128 << 64, self.prec);
        let mut acc = self.zero();
        for d in digits.iter().rev() {
            acc = acc
                .mul(&base, self.prec, self.rm)
                .add(&BigFloat::from_u64(*d, self.prec), self.prec, self.rm);
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        acc
    }

    pub fn from_rat(&self, r: &Rat) -> BF {
        let n = self.from_bigint(r.numer());
        let d = self.from_bigint(r.denom());
        n.div(&d, self.prec, self.rm)
    }

    pub fn add(&self, a: &BF, b: &BF) -> BF {
        a.add(b, self.prec, self.rm)
    }

    pub fn sub(&self, a: &BF, b: &BF) -> BF {
        a.sub(b, self.prec, self.rm)
    }

    pub fn mul(&self, a: &BF, b: &BF) -> BF {
        a.mul(b, self.prec, self.rm)
    }

    pub fn div(&self, a: &BF, b: &BF) -> BF {
        a.div(b, self.prec, self.rm)
    }

    pub fn recip(&self, a: &BF) -> BF {
        a.reciprocal(self.prec, self.rm)
    }

    pub fn powi(&self, a: &BF, n: usize) -> BF {
        a.powi(n, self.prec, self.rm)
    }

    pub fn sqrt(&mut self, a: &BF) -> BF {
        a.sqrt(self.prec, self.rm)
    }

    pub fn ln(&mut self, a: &BF) -> BF {
        a.ln(self.prec, self.rm, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BF) -> BF {
        a.exp(self.prec, self.rm, &mut self.cc)
    }

    /// a^x for real x, valid for a > 0.
    pub fn pow(&mut self, a: &BF, x: &BF) -> BF {
        a.pow(x, self.prec, self.rm, &mut self.cc)
    }

    pub fn abs(&self, a: &BF) -> BF {
        let mut r = a.clone();
        r.set_sign(Sign::Pos);
        if a.is_zero() {
            return self.zero();
        }
        r
    }

    pub fn is_lt(&self, a: &BF, b: &BF) -> bool {
        matches!(a.cmp(b), Some(c) if c < 0)
    }

    /// |a| < |b|. Not delegated to astro-float's `abs_cmp`, which compares
    /// signed values in the version pinned here.
    pub fn abs_lt(&self, a: &BF, b: &BF) -> bool {
        matches!(self.abs(a).cmp(&self.abs(b)), Some(c) if c < 0)
    }
}

/// Lossy conversion to f64 from the top mantissa bits.
pub fn to_f64(a: &BF) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    let Some((words, _len, sign, exp, _)) = a.as_raw_parts() else {
        return f64::NAN;
    };
    let mut f = 0.0f64;
    let mut used = 0i64;
    for w in words.iter().rev().take(2) {
        f = f * 1.8446744073709552e19 + *w as f64;
        used += 64;
    }
    let scaled = f * 2f64.powi(exp - used as i32);
    if sign == Sign::Neg {
        -scaled
    } else {
        scaled
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::parse_rat;

    #[test]
    fn rational_round_trip() {
        let ctx = Ctx::new(192);
        let r = parse_rat("-355/113").unwrap();
        let v = to_f64(&ctx.from_rat(&r));
        assert!((v + 355.0 / 113.0).abs() < 1e-15);
    }

    #[test]
    fn big_numerators() {
        let ctx = Ctx::new(256);
        let big: BigInt = BigInt::from(10).pow(40) + 7;
        let v = ctx.from_bigint(&big);
        let back = to_f64(&v);
        assert!((back / 1e40 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn elementary_functions() {
        let mut ctx = Ctx::new(192);
        let two = ctx.from_i64(2);
        assert!((to_f64(&ctx.sqrt(&two)) - 2f64.sqrt()).abs() < 1e-15);
        let l = ctx.ln(&two);
        assert!((to_f64(&l) - 2f64.ln()).abs() < 1e-15);
        let e = ctx.exp(&ctx.from_i64(1));
        assert!((to_f64(&e) - 1f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn comparisons() {
        let ctx = Ctx::new(128);
        let a = ctx.from_f64(-3.0);
        let b = ctx.from_f64(2.0);
        assert!(ctx.is_lt(&a, &b));
        assert!(!ctx.abs_lt(&a, &b));
        assert!(ctx.abs_lt(&b, &a));
        assert!((to_f64(&ctx.abs(&a)) - 3.0).abs() == 0.0);
    }
}
