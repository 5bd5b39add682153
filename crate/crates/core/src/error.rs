use num_bigint::BigInt;
use thiserror::Error;

use crate::cohomology::BasisClass;
use crate::key::{InvariantKey, Monomial};

/// Failures of the invariant engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("lower-degree value {key} is not in the store (degree {degree} requested before its predecessors)")]
    MissingValue { key: InvariantKey, degree: u32 },

    #[error("degree {degree}: {} unknown(s) not determined by the associativity equations: {}", unsolved.len(), list_keys(unsolved))]
    Underdetermined { degree: u32, unsolved: Vec<InvariantKey> },

    #[error("degree {degree}: equation {} at monomial {monomial} violated (residual {residual})", quad(quadruple))]
    Inconsistent {
        degree: u32,
        quadruple: [BasisClass; 4],
        monomial: Monomial,
        residual: BigInt,
    },

    #[error("value of {key} is not an integer ({value})")]
    NonIntegral { key: InvariantKey, value: String },

    #[error("value of {key} is negative ({value})")]
    Negative { key: InvariantKey, value: BigInt },

    #[error("cannot strip {t1_count} divisor insertion(s) from a degree-0 invariant")]
    ClassicalDivisor { t1_count: u32 },

    #[error("seed table inconsistent: {0}")]
    SeedMismatch(String),

    #[error("degree {requested} cannot be committed: the store holds degrees 1..={solved}")]
    OutOfOrder { requested: u32, solved: u32 },

    #[error(transparent)]
    Cache(#[from] crate::cache::CacheError),
}

/// Exit status used by the command-line driver.
impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Underdetermined { .. } => 3,
            _ => 2,
        }
    }
}

fn list_keys(keys: &[InvariantKey]) -> String {
    let shown: Vec<String> = keys.iter().take(12).map(ToString::to_string).collect();
    if keys.len() > shown.len() {
        format!("{}, ...", shown.join(", "))
    } else {
        shown.join(", ")
    }
}

fn quad(q: &[BasisClass; 4]) -> String {
    format!("({},{},{},{})", q[0], q[1], q[2], q[3])
}
