//! Primes, the von Mangoldt function, Dirichlet characters, Gauss sums and
//! concrete coefficient streams.

mod characters;
mod primes;
mod streams;
mod tau;

pub use characters::{characters_mod, gauss_sum, DirichletCharacter, Parity};
pub use primes::{factor_prime_power, von_mangoldt, PrimeTable};
pub use streams::{CoefficientStream, Growth};
pub use tau::{ramanujan_tau, ramanujan_tau_stream};
