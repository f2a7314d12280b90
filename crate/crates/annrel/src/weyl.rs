//! Dimensions of irreducible finite-dimensional sl(n) modules from the
//! product formula over positive roots.

use crate::rat::{rat, Rat};
use num::bigint::BigInt;
use num::One;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeylError {
    #[error("expected {expected} fundamental-weight coordinates, got {got}")]
    WrongRank { expected: usize, got: usize },
}

/// Dimension of the irreducible sl(n) module with highest weight given by
/// nonnegative coordinates on the fundamental weights.
pub fn weyl_dim(n: usize, coords: &[u64]) -> Result<BigInt, WeylError> {
    let rank = n - 1;
    if coords.len() != rank {
        return Err(WeylError::WrongRank {
            expected: rank,
            got: coords.len(),
        });
    }
    let mut dim = Rat::one();
    for i in 1..=rank {
        for j in (i + 1)..=n {
            let num: i64 = (i..j).map(|s| coords[s - 1] as i64 + 1).sum();
            dim *= rat(num) / rat((j - i) as i64);
        }
    }
    debug_assert!(crate::rat::is_integer(&dim));
    Ok(dim.to_integer())
}
