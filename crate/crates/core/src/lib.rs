//! Multiplicative orders of integers and hyperbolic `SL2(Z)` matrices
//! modulo primes, prime powers and composites, and batch experiments that
//! measure how often those orders are close to maximal.
//!
//! Layers, bottom up: [`arith`] (sieve, primality, factorization, residue
//! symbols, orders in cyclic groups), [`quad`] (matrix classification and
//! real quadratic field data), [`order`] (the order engine), [`lab`]
//! (range scans and reports) and [`cli`].

pub mod arith;
pub mod cli;
pub mod error;
pub mod lab;
pub mod order;
pub mod quad;
mod serde_dec;

pub use error::{Error, Result};
