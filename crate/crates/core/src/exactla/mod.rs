//! Exact arithmetic kernel: big-integer matrices with Smith/Hermite forms,
//! generic field linear algebra, and cyclotomic numbers.

pub mod cmatrix;
pub mod cyclotomic;
pub mod field;
pub mod intmat;
pub mod snf;

pub use cmatrix::CMatrix;
pub use cyclotomic::{cyclotomic_polynomial, parse_rational, rational_to_string, Cyclotomic};
pub use field::{Field, SparseEchelon};
pub use intmat::{IntMatrix, SparseIntMatrix};
pub use snf::{
    hermite_normal_form, integer_kernel, smith_invariants_sparse, smith_normal_form, solve_integer,
    HermiteDecomposition, SmithDecomposition, SmithWork,
};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qf(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}
