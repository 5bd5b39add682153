//! Exact genus-0 Gromov-Witten invariants of the Grassmannian G(2,4),
//! reconstructed from the classical ring and six degree-1 seeds through
//! the associativity equations of the quantum potential.
//!
//! The headline numbers are `Q_d = N(4d+1,0,0,0;d)`, the number of rational
//! ruled surfaces of degree `d` in P^3 through `4d+1` general points, and
//! the degrees `N_d = d^3 Q_d` of the corresponding surfaces.

pub mod cache;
pub mod cohomology;
pub mod engine;
pub mod equations;
pub mod error;
pub mod key;
pub mod report;
pub mod schubert;
pub mod seeds;
pub mod solver;
pub mod store;

pub use cohomology::{BasisClass, ClassCombination, ClassicalTripleTensor, PairingForm};
pub use engine::{verify_wdvv, Engine, RuledSurfaceDegree, VerifyReport, Violation};
pub use equations::{generate_equations, GenerationPolicy, WdvvEquation};
pub use error::Error;
pub use key::{dimension_valid, normalize, reduce_divisor, InvariantKey, Monomial};
pub use seeds::SeedSet;
pub use store::{DegreeStatus, InvariantStore};

/// `Q_d` for `d = 1..=9` as published alongside the Coray-Vainsencher `d = 3` count.
pub const GOLDEN_Q: [&str; 9] = [
    "0",
    "2",
    "504",
    "1044120",
    "5335687360",
    "67992124121040",
    "1743784747544391896",
    "82475300124495938244352",
    "6608238869716397977928547520",
];
