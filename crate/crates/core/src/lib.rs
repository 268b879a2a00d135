//! Exact weight distributions and minimum distances of the symmetric
//! determinantal codes `C_symm(t, m)` over finite fields of odd
//! characteristic.
//!
//! The crate has two independent halves. The formula side
//! ([`combinat`], [`krawtchouk`], [`qnumbers`], [`weights`]) evaluates the
//! closed forms for stratum sizes, generalized Krawtchouk polynomials,
//! Q-numbers of the symmetric-matrix association scheme and codeword
//! weights over arbitrary-precision integers. The enumeration side
//! ([`symmat`], [`code`], [`oracle`]) builds the actual matrices and codes
//! over `GF(q)` and counts everything by brute force, so each closed form
//! can be checked against ground truth at small parameters.
//!
//! ```
//! use symdet::{gf::Field, weights};
//!
//! let f = Field::new(3, 1).unwrap();
//! let d = weights::min_distance(&f, 2, 1).unwrap();
//! assert_eq!(d, 4u32.into());
//! ```

pub mod code;
pub mod combinat;
mod error;
pub mod gf;
mod guard;
pub mod krawtchouk;
pub mod oracle;
pub mod qnumbers;
pub mod symmat;
pub mod weights;

pub use error::{Error, Result};
pub use guard::Guard;

/// Arbitrary-precision nonnegative count.
pub type Count = num_bigint::BigUint;
/// Arbitrary-precision signed count (Krawtchouk values, Q-numbers).
pub type SignedCount = num_bigint::BigInt;
