//! Indexing of the invariants `N(α,β,γ,δ;d)`: `α` insertions of `Ta`,
//! `β` of `Tb`, `γ` of `T3` and `δ` of `T4` on degree-`d` rational curves.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::cohomology::BasisClass;
use crate::error::Error;

/// Exponent vector `(α, β, γ, δ)` over the insertion classes `Ta, Tb, T3, T4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    /// Weights are `codim - 1` of `Ta, Tb, T3, T4`.
    pub const WEIGHTS: [u32; 4] = [1, 1, 2, 3];

    pub fn weight(&self) -> u32 {
        self.0.iter().zip(Self::WEIGHTS).map(|(e, w)| e * w).sum()
    }

    /// Exponent slot of an insertion class; `None` for `T0` and `T1`.
    pub fn slot(class: BasisClass) -> Option<usize> {
        match class {
            BasisClass::Ta => Some(0),
            BasisClass::Tb => Some(1),
            BasisClass::T3 => Some(2),
            BasisClass::T4 => Some(3),
            BasisClass::T0 | BasisClass::T1 => None,
        }
    }

    /// All exponent vectors of the given weight, ordered
    /// lexicographically on `(δ, γ, β, α)`.
    pub fn of_weight(weight: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for delta in 0..=weight / 3 {
            let r3 = weight - 3 * delta;
            for gamma in 0..=r3 / 2 {
                let r2 = r3 - 2 * gamma;
                for beta in 0..=r2 {
                    out.push(Monomial([r2 - beta, beta, gamma, delta]));
                }
            }
        }
        out
    }

    /// All exponent vectors with weight at most `max_weight`.
    pub fn up_to_weight(max_weight: u32) -> Vec<Monomial> {
        (0..=max_weight).flat_map(Monomial::of_weight).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Key `(α, β, γ, δ; d)` of the invariant `N(α,β,γ,δ;d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantKey {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub delta: u32,
    pub degree: u32,
}

impl InvariantKey {
    pub const fn new(alpha: u32, beta: u32, gamma: u32, delta: u32, degree: u32) -> Self {
        Self { alpha, beta, gamma, delta, degree }
    }

    pub fn from_monomial(m: Monomial, degree: u32) -> Self {
        let [alpha, beta, gamma, delta] = m.0;
        Self { alpha, beta, gamma, delta, degree }
    }

    pub fn monomial(&self) -> Monomial {
        Monomial([self.alpha, self.beta, self.gamma, self.delta])
    }

    /// The key counting rational curves of degree `d` through `4d+1` generic
    /// `Ta`-cycles.
    pub fn q_key(degree: u32) -> Self {
        Self::new(4 * degree + 1, 0, 0, 0, degree)
    }

    pub fn weight(&self) -> u32 {
        self.monomial().weight()
    }

    /// Number of marked points.
    pub fn insertions(&self) -> u32 {
        self.alpha + self.beta + self.gamma + self.delta
    }

    pub fn is_dimension_valid(&self) -> bool {
        dimension_valid(self)
    }

    pub fn is_canonical(&self) -> bool {
        self.alpha >= self.beta
    }

    pub fn normalized(&self) -> Self {
        normalize(self)
    }

    /// The `Ta <-> Tb` mirror key.
    pub fn mirrored(&self) -> Self {
        Self { alpha: self.beta, beta: self.alpha, ..*self }
    }

    /// Deterministic ordering: degree, then `(δ, γ, β, α)` lexicographically.
    pub fn sort_key(&self) -> (u32, u32, u32, u32, u32) {
        (self.degree, self.delta, self.gamma, self.beta, self.alpha)
    }

    /// Canonical dimension-valid keys of the given degree, in sort order.
    pub fn canonical_keys(degree: u32) -> Vec<InvariantKey> {
        if degree == 0 {
            return Vec::new();
        }
        Monomial::of_weight(4 * degree + 1)
            .into_iter()
            .map(|m| InvariantKey::from_monomial(m, degree))
            .filter(InvariantKey::is_canonical)
            .collect()
    }
}

impl Ord for InvariantKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for InvariantKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for InvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{};{})",
            self.alpha, self.beta, self.gamma, self.delta, self.degree
        )
    }
}

/// `α + β + 2γ + 3δ = 4d + 1` for `d >= 1`. Degree 0 has no quantum keys.
pub fn dimension_valid(key: &InvariantKey) -> bool {
    key.degree >= 1 && key.weight() == 4 * key.degree + 1
}

/// Swaps `α` and `β` when `α < β`.
pub fn normalize(key: &InvariantKey) -> InvariantKey {
    if key.alpha < key.beta {
        key.mirrored()
    } else {
        *key
    }
}

/// Removes `t1_count` divisor insertions `T1` at the cost of a factor `d` each.
pub fn reduce_divisor(t1_count: u32, key: &InvariantKey) -> Result<(BigInt, InvariantKey), Error> {
    if t1_count == 0 {
        return Ok((BigInt::one(), *key));
    }
    if key.degree == 0 {
        return Err(Error::ClassicalDivisor { t1_count });
    }
    Ok((BigInt::from(key.degree).pow(t1_count), *key))
}
