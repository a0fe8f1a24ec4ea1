//! Exact computation of the cohomology characters `kappa(d, e)` of line
//! bundles on the incidence correspondence `z_1 w_1 + ... + z_n w_n = 0`
//! in characteristic `p`.
//!
//! The crate provides three independent routes to the same characters
//! (a finite-field linear-algebra oracle, a recurrence, and a closed-form
//! even-carry formula), plus the surrounding combinatorics: Schur and
//! truncated Schur functions, even-carry and Nim polynomials, primitive
//! cohomology extraction, and the tile model for primitive characters.

pub mod carry;
pub mod char_ring;
pub mod formulas;
pub mod fp;
pub mod oracle;
pub mod schur;
pub mod tiles;
pub mod verify;

pub use char_ring::{Character, Exp};

/// Errors surfaced by fallible operations. Arithmetic precondition
/// violations (mismatched variable counts and the like) panic instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("operation requires n = 3, got n = {0}")]
    RequiresN3(usize),
    #[error("partition has {got} parts but only {n} variables")]
    TooManyParts { got: usize, n: usize },
    #[error("digit {digit} out of range for base {p}")]
    DigitOutOfRange { digit: i64, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("base must be at least 2, got {0}")]
    BadBase(u64),
    #[error("no built-in tileset for n = {n}, p = {p}")]
    NoBuiltinTileset { n: usize, p: u64 },
    #[error("(d, e) = ({d}, {e}) is outside every window 2^k <= e <= d < 2^(k+1) with k >= 1")]
    OutsideDyadicWindow { d: i64, e: i64 },
    #[error("vector is not annihilated by multiplication by the incidence form")]
    NotInKernel,
    #[error("invalid tile data: {0}")]
    BadTile(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Trial-division primality test; inputs here are always small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}
