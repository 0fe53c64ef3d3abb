//! Exact-arithmetic quantization of finite-dimensional Lie bialgebras modulo h³.
//!
//! Everything is computed over ℚ with truncated power series in h. The pieces:
//! [`bialg`] for bialgebra data, [`manin`] for the double, [`pbw`] for enveloping
//! algebras, [`verma`] for Verma modules and the intertwiners ψ, [`assoc`] for the
//! truncated associator, [`ekq`] for the quantized structure maps, [`ybq`] for
//! r-matrices over associative algebras, and [`acyc`] for the acyclic tensor calculus.

pub mod acyc;
pub mod assoc;
pub mod bialg;
pub mod cli;
pub mod ekq;
pub mod error;
pub mod kernel;
pub mod lie;
pub mod manin;
pub mod par;
pub mod pbw;
pub mod report;
pub mod selftest;
pub mod serial;
pub mod verma;
pub mod ybq;

pub use error::{EkqError, Result};
