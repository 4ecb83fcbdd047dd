//! Exact polynomial and rational-function arithmetic over ℚ.

mod poly;
mod ratfun;
mod shuffle;
mod symbol;
mod text;

use std::collections::HashMap;

pub use poly::{rat, Monomial, Poly, Rational};
pub use ratfun::RatFun;
pub use shuffle::{
    flag_pushforward, permutation_sign, permutations, shuffle_sum, shuffle_symmetrize, subsets, vandermonde,
    BlockPoly, ShuffleSplit, Symmetry,
};
pub use symbol::{Symbol, SymbolKind};
pub use text::{parse_poly, parse_ratfun};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn poly_arith(lhs: &RatFun, op: ArithOp, rhs: &RatFun) -> Result<RatFun> {
    Ok(match op {
        ArithOp::Add => lhs.add(rhs),
        ArithOp::Sub => lhs.sub(rhs),
        ArithOp::Mul => lhs.mul(rhs),
        ArithOp::Div => lhs.div(rhs)?,
    })
}

/// Substitutes symbols by polynomials (typically integer linear forms).
pub fn substitute(f: &RatFun, assignment: &HashMap<Symbol, Poly>) -> Result<RatFun> {
    f.substitute(assignment)
}
