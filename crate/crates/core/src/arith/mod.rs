//! Exact integer primitives: sieving, primality, factorization, residue
//! symbols, modular square roots and orders in cyclic groups.

mod factor;
mod modular;
mod order;
mod prime;
mod residue;
mod sieve;

pub use factor::{factorize, factorize_with_budget, FactoredInteger, DEFAULT_RHO_BUDGET};
pub use modular::{gcd, inv_mod, lcm_checked, mul_mod, mul_mod_u128, pow_mod, pow_mod_u128};
pub use order::{crt_lcm_combine, element_order, minimal_order};
pub use prime::{is_prime, is_prime_u128};
pub use residue::{jacobi, kronecker, sqrt_mod};
pub use sieve::{sieve_primes, PrimeTable, SIEVE_LIMIT_MAX};
