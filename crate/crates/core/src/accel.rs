//! Convergence acceleration: fit tail models of the form
//! Σ c_j N^{e_j} ln(N)^{p_j} to partial sums at several cutoffs and read off
//! the constant term as the extrapolated limit.

use crate::bigfloat::{Ctx, BF};
use crate::coeff::Rat;
use crate::error::{Error, Result};

/// One tail-model basis function N^{exponent} ln(N)^{log_pow}. The constant
/// term of the model is (exponent = 0, log_pow = 0).
#[derive(Clone, Debug)]
pub struct BasisTerm {
    pub exponent: Rat,
    pub log_pow: u32,
}

impl BasisTerm {
    pub fn constant() -> BasisTerm {
        BasisTerm {
            exponent: Rat::from_integer(0.into()),
            log_pow: 0,
        }
    }

    pub fn pow(exponent: Rat) -> BasisTerm {
        BasisTerm {
            exponent,
            log_pow: 0,
        }
    }

    pub fn log_pow(exponent: Rat, log_pow: u32) -> BasisTerm {
        BasisTerm { exponent, log_pow }
    }

    fn is_constant(&self) -> bool {
        use num_traits::Zero;
        self.exponent.is_zero() && self.log_pow == 0
    }
}

/// Distinct integer cutoffs spread geometrically over [min, max].
pub fn geometric_nodes(min: u64, max: u64, count: usize) -> Vec<u64> {
    assert!(min >= 2 && max > min && count >= 2);
    let ratio = (max as f64 / min as f64).powf(1.0 / (count as f64 - 1.0));
    let mut nodes = Vec::with_capacity(count);
    let mut x = min as f64;
    for _ in 0..count {
        let mut n = x.round() as u64;
        if let Some(&last) = nodes.last() {
            if n <= last {
                n = last + 1;
            }
        }
        nodes.push(n.min(max));
        x *= ratio;
    }
    nodes.dedup();
    nodes
}

/// Solves the square interpolation system through the given (cutoff, partial
/// sum) nodes and returns the fitted constant term. The basis must contain
/// the constant term and exactly `nodes.len()` entries.
pub fn extrapolate(ctx: &mut Ctx, nodes: &[(u64, BF)], basis: &[BasisTerm]) -> Result<BF> {
    let bf_basis: Vec<(BF, u32)> = basis
        .iter()
        .map(|b| (ctx.from_rat(&b.exponent), b.log_pow))
        .collect();
    let const_pos = basis
        .iter()
        .position(|b| b.is_constant())
        .ok_or_else(|| Error::Domain("tail model lacks a constant term".into()))?;
    extrapolate_bf(ctx, nodes, &bf_basis, const_pos)
}

/// As `extrapolate`, with basis exponents given directly as floats (needed
/// when exponents are irrational). `const_pos` names the constant term.
pub fn extrapolate_bf(
    ctx: &mut Ctx,
    nodes: &[(u64, BF)],
    basis: &[(BF, u32)],
    const_pos: usize,
) -> Result<BF> {
    let n = nodes.len();
    if n != basis.len() {
        return Err(Error::Domain(format!(
            "extrapolation needs as many nodes as basis terms ({n} vs {})",
            basis.len()
        )));
    }
    if const_pos >= n || !basis[const_pos].0.is_zero() || basis[const_pos].1 != 0 {
        return Err(Error::Domain("tail model lacks a constant term".into()));
    }

    let mut a: Vec<Vec<BF>> = Vec::with_capacity(n);
    let mut rhs: Vec<BF> = Vec::with_capacity(n);
    for (node, value) in nodes {
        let nf = ctx.from_i64(*node as i64);
        let ln_n = ctx.ln(&nf);
        let mut row = Vec::with_capacity(n);
        for (e, log_pow) in basis {
            let mut cell = ctx.pow(&nf, e);
            for _ in 0..*log_pow {
                cell = ctx.mul(&cell, &ln_n);
            }
            row.push(cell);
        }
        a.push(row);
        rhs.push(value.clone());
    }

    solve(ctx, &mut a, &mut rhs)?;
    Ok(rhs[const_pos].clone())
}

/// In-place Gaussian elimination with partial pivoting; solution left in rhs.
fn solve(ctx: &Ctx, a: &mut [Vec<BF>], rhs: &mut [BF]) -> Result<()> {
    let n = rhs.len();
    for col in 0..n {
        let mut pivot = col;
        for r in col + 1..n {
            if ctx.abs_lt(&a[pivot][col], &a[r][col]) {
                pivot = r;
            }
        }
        if a[pivot][col].is_zero() {
            return Err(Error::Domain("singular extrapolation system".into()));
        }
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = ctx.div(&a[r][col], &a[col][col]);
            for j in col..n {
                let d = ctx.mul(&f, &a[col][j]);
                a[r][j] = ctx.sub(&a[r][j], &d);
            }
            let d = ctx.mul(&f, &rhs[col]);
            rhs[r] = ctx.sub(&rhs[r], &d);
        }
    }
    for col in (0..n).rev() {
        let mut acc = rhs[col].clone();
        for j in col + 1..n {
            let d = ctx.mul(&a[col][j], &rhs[j]);
            acc = ctx.sub(&acc, &d);
        }
        rhs[col] = ctx.div(&acc, &a[col][col]);
    }
    Ok(())
}
