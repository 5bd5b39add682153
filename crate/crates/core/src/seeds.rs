//! Degree-1 input values for the recursion.
//!
//! Degree-1 curves in G(2,4) are the pencils `(p, h)` of lines through a
//! point `p` inside a plane `h ∋ p`. A pencil meets
//!
//! * `Ta(P)` iff `P ∈ h`,
//! * `Tb(H)` iff `p ∈ H`,
//! * `T3(P, H)` iff `P ∈ h` and `p ∈ H`,
//! * `T4(L)` iff `p ∈ L ⊂ h`.
//!
//! Each seed below is the number of pencils satisfying the stated
//! incidences for general choices of the cycles:
//!
//! | key | incidences | count |
//! |-----|------------|-------|
//! | `(0,0,1,1;1)` | `p ∈ L ∩ H`, `h = span(L, P)` | 1 |
//! | `(1,1,0,1;1)` | `p = L ∩ H`, `h = span(L, P)` | 1 |
//! | `(2,0,0,1;1)` | `h ⊃ L, P1, P2` | 0 |
//! | `(0,2,0,1;1)` | `p ∈ L ∩ H1 ∩ H2` | 0 |
//! | `(1,0,2,0;1)` | `h = span(P1, P2, P)`, `p = h ∩ H1 ∩ H2` | 1 |
//! | `(0,1,2,0;1)` | `p = H1 ∩ H2 ∩ H`, `h = span(P1, P2, p)` | 1 |
//!
//! The shipped set is over-complete: the degree-1 associativity equations
//! re-derive most of it, and the solver checks every equation against it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::key::InvariantKey;

pub const PROVENANCE: &str = "pencil-incidence counts of degree-1 curves (p, h), p in h; see the seeds module documentation";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSet {
    entries: BTreeMap<InvariantKey, BigInt>,
    provenance_note: String,
}

impl SeedSet {
    /// The six degree-1 seeds, in both `Ta <-> Tb` orientations where they differ.
    pub fn shipped() -> Self {
        let raw: [((u32, u32, u32, u32), i64); 6] = [
            ((0, 0, 1, 1), 1),
            ((1, 1, 0, 1), 1),
            ((2, 0, 0, 1), 0),
            ((0, 2, 0, 1), 0),
            ((1, 0, 2, 0), 1),
            ((0, 1, 2, 0), 1),
        ];
        let entries = raw
            .into_iter()
            .map(|((a, b, c, d), v)| (InvariantKey::new(a, b, c, d, 1), BigInt::from(v)))
            .collect();
        Self { entries, provenance_note: PROVENANCE.to_string() }
    }

    pub fn from_entries(entries: BTreeMap<InvariantKey, BigInt>, provenance_note: impl Into<String>) -> Self {
        Self { entries, provenance_note: provenance_note.into() }
    }

    pub fn entries(&self) -> &BTreeMap<InvariantKey, BigInt> {
        &self.entries
    }

    pub fn provenance_note(&self) -> &str {
        &self.provenance_note
    }

    pub fn get(&self, key: &InvariantKey) -> Option<&BigInt> {
        self.entries.get(key)
    }

    /// Copy without one entry (as given, not normalized).
    pub fn without(&self, key: &InvariantKey) -> Self {
        let mut entries = self.entries.clone();
        entries.remove(key);
        Self { entries, provenance_note: self.provenance_note.clone() }
    }

    /// Seed values on canonical keys. Mirrored entries must agree.
    pub fn canonical(&self) -> Result<BTreeMap<InvariantKey, BigInt>, Error> {
        let mut out: BTreeMap<InvariantKey, BigInt> = BTreeMap::new();
        for (k, v) in &self.entries {
            if !k.is_dimension_valid() {
                return Err(Error::SeedMismatch(format!("seed {k} is not dimension-valid")));
            }
            let n = k.normalized();
            if let Some(prev) = out.get(&n) {
                if prev != v {
                    return Err(Error::SeedMismatch(format!(
                        "seed {k} = {v} disagrees with its mirror ({prev})"
                    )));
                }
            }
            out.insert(n, v.clone());
        }
        Ok(out)
    }

    /// SHA-256 over the rendered entries, hex encoded.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for (k, v) in &self.entries {
            h.update(format!("{} {} {} {} {} {}\n", k.alpha, k.beta, k.gamma, k.delta, k.degree, v));
        }
        hex::encode(h.finalize())
    }
}

impl Default for SeedSet {
    fn default() -> Self {
        Self::shipped()
    }
}
