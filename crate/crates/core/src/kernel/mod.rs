//! Exact arithmetic, truncated h-series, sparse linear combinations and tensors.

pub mod lin;
pub mod perm;
pub mod rational;
pub mod series;
pub mod tensor;

pub use lin::{Lin, Module};
pub use perm::Perm;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use series::{series_exp, series_inverse, series_mul, HSeries, ORDER};
pub use tensor::{permute, SparseTensor};

/// A word in basis indices; used for PBW monomials and module basis vectors.
pub type Word = Vec<u8>;
