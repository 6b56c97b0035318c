//! Exact arithmetic: small finite fields, noncommutative Laurent words,
//! commutative multivariate polynomials and the t-elimination procedure.

pub mod fq;
pub mod ncword;
pub mod poly;

pub use fq::{Fq, FqError};
pub use ncword::{NcSum, NcWord, Sym};
pub use poly::{eliminate_t, ElimError, Poly, RatFn};
