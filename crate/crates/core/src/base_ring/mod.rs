//! Exact coefficient fields, weighted polynomial base rings and linear solving.

mod linsolve;
mod poly;
mod scalar;

pub use linsolve::{
    nullspace, rank, row_reduce, solve_linear, Echelon, LinearSolution, LinearSystem,
    SpanTracker, SparseMatrix, SparseVec,
};
pub use poly::{poly_arith, BasePoly, BaseRing, PolyOp};
pub use scalar::{Field, Scalar};

use num_bigint::BigInt;
use num_traits::One;

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
