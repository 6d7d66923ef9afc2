//! Orders of hyperbolic matrices and integers modulo primes, prime powers
//! and composites; the torus index; Carmichael's lambda.

mod composite;
pub(crate) use composite::is_unramified;
mod integer;
mod prime;

pub use composite::{
    matrix_order_mod_n, matrix_order_mod_prime_power, prop11_bound, CompositeOrderRecord, PrimeFactorOrder,
};
pub use integer::{carmichael_lambda, integer_order_mod_n, integer_order_mod_p, IntegerOrderEngine};
pub use prime::{is_bad_order, matrix_order_mod_p, MatrixOrderEngine, PrimeOrderRecord};
