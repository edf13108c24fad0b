//! Exact symbolic and high-precision numeric toolkit for interpolated
//! multiple zeta values: the t-deformed word algebra on {x, y}, its double
//! shuffle structure, regularization, relation generators, and the
//! hypergeometric generating-function layer for sums by weight, depth and
//! height.

pub mod accel;
pub mod bigfloat;
pub mod coeff;
pub mod error;
pub mod genfun;
pub mod maps;
pub mod numerics;
pub mod product;
pub mod reg;
pub mod relations;
pub mod series;
pub mod word;
pub mod zeta;

pub use coeff::{Rat, TPoly, TtPoly};
pub use error::{Error, Result};
pub use numerics::{eval_combination, eval_mzv, eval_tmzv, zeta_riemann, EvalResult};
pub use product::ProductKind;
pub use reg::{reg_decompose, z_reg_eval, RegDecomposition, RegKind};
pub use relations::{Claim, Relation};
pub use word::{Element, Index, Letter, Word};
pub use zeta::{tmzv_expand, z_symbolic, ZetaCombination, ZetaSym};
