//! Independent Schubert calculus on partitions in the 2×2 box, used to
//! cross-check the cohomology tables and the degree-1 seeds.
//!
//! Classical products are computed by Pieri's rule for the special classes
//! `σ1`, `σ2` together with Giambelli's formula
//! `σ(a,b) = σa σb - σ(a+1) σ(b-1)`; nothing here reads the cup-product
//! table of [`crate::cohomology`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::cohomology::{BasisClass, ClassCombination};
use crate::error::Error;
use crate::key::InvariantKey;
use crate::seeds::SeedSet;

/// Partition `(λ1, λ2)` with `2 ≥ λ1 ≥ λ2 ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(u8, u8);

impl Partition {
    pub const EMPTY: Partition = Partition(0, 0);
    pub const ALL: [Partition; 6] = [
        Partition(0, 0),
        Partition(1, 0),
        Partition(2, 0),
        Partition(1, 1),
        Partition(2, 1),
        Partition(2, 2),
    ];

    pub fn new(l1: u8, l2: u8) -> Option<Self> {
        (l1 <= 2 && l2 <= l1).then_some(Partition(l1, l2))
    }

    pub fn parts(&self) -> (u8, u8) {
        (self.0, self.1)
    }

    pub fn size(&self) -> u32 {
        u32::from(self.0) + u32::from(self.1)
    }

    /// `σ2 = Ta` (lines through a point), `σ11 = Tb` (lines in a plane).
    pub fn to_basis(self) -> BasisClass {
        match (self.0, self.1) {
            (0, 0) => BasisClass::T0,
            (1, 0) => BasisClass::T1,
            (2, 0) => BasisClass::Ta,
            (1, 1) => BasisClass::Tb,
            (2, 1) => BasisClass::T3,
            (2, 2) => BasisClass::T4,
            _ => unreachable!("partition outside the 2x2 box"),
        }
    }

    pub fn from_basis(c: BasisClass) -> Self {
        match c {
            BasisClass::T0 => Partition(0, 0),
            BasisClass::T1 => Partition(1, 0),
            BasisClass::Ta => Partition(2, 0),
            BasisClass::Tb => Partition(1, 1),
            BasisClass::T3 => Partition(2, 1),
            BasisClass::T4 => Partition(2, 2),
        }
    }

    /// Complementary partition in the box.
    pub fn dual(self) -> Self {
        Partition(2 - self.1, 2 - self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.0, self.1) {
            (0, 0) => f.write_str("()"),
            (a, 0) => write!(f, "({a})"),
            (a, b) => write!(f, "({a},{b})"),
        }
    }
}

type Schubert = BTreeMap<Partition, i64>;

fn to_combination(s: &Schubert) -> ClassCombination {
    let mut c = ClassCombination::zero();
    for (p, &v) in s {
        c.add(p.to_basis(), v);
    }
    c
}

/// `σk · σλ` by Pieri: add `k` boxes, no two in the same column.
fn pieri_special(k: u8, lambda: Partition) -> Schubert {
    let mut out = Schubert::new();
    if k == 0 {
        out.insert(lambda, 1);
        return out;
    }
    let (l1, l2) = (lambda.0, lambda.1);
    for m1 in l1..=2 {
        // horizontal strip: l2 <= m2 <= l1
        for m2 in l2..=l1.min(m1) {
            if (m1 - l1) + (m2 - l2) == k {
                *out.entry(Partition(m1, m2)).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Giambelli expansion of `σλ` in `σ1, σ2` as `(coefficient, factors)`.
fn giambelli(lambda: Partition) -> Vec<(i64, Vec<u8>)> {
    let (a, b) = (lambda.0, lambda.1);
    if b == 0 {
        return vec![(1, if a == 0 { vec![] } else { vec![a] })];
    }
    // σa σb - σ(a+1) σ(b-1); σ3 vanishes on G(2,4)
    let mut terms = vec![(1, vec![a, b])];
    if a < 2 {
        let mut f = vec![a + 1];
        if b > 1 {
            f.push(b - 1);
        }
        terms.push((-1, f));
    }
    terms
}

fn multiply_by(lambda: Partition, s: &Schubert) -> Schubert {
    let mut out = Schubert::new();
    for (coeff, factors) in giambelli(lambda) {
        let mut acc = s.clone();
        for &k in &factors {
            let mut next = Schubert::new();
            for (p, &c) in &acc {
                for (q, m) in pieri_special(k, *p) {
                    *next.entry(q).or_insert(0) += c * m;
                }
            }
            acc = next;
        }
        for (p, c) in acc {
            *out.entry(p).or_insert(0) += coeff * c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `σ1 · σλ` in the classical ring.
pub fn classical_pieri(lambda: Partition) -> ClassCombination {
    to_combination(&pieri_special(1, lambda))
}

/// `∫ σ_{l1} σ_{l2} σ_{l3}`, zero unless the sizes add up to 4.
pub fn classical_triple_oracle(l1: Partition, l2: Partition, l3: Partition) -> i64 {
    if l1.size() + l2.size() + l3.size() != 4 {
        return 0;
    }
    let start: Schubert = [(l3, 1)].into_iter().collect();
    let prod = multiply_by(l1, &multiply_by(l2, &start));
    prod.get(&Partition(2, 2)).copied().unwrap_or(0)
}

/// An element `classical + q · quantum` of the small quantum ring.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuantumClassCombination {
    pub classical_part: ClassCombination,
    pub q_part: ClassCombination,
}

impl fmt::Display for QuantumClassCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + q·({})", self.classical_part, self.q_part)
    }
}

/// `σ1 * σλ` in the small quantum ring of G(2,4).
pub fn quantum_pieri(lambda: Partition) -> QuantumClassCombination {
    let q_part = match (lambda.0, lambda.1) {
        (2, 1) => ClassCombination::single(BasisClass::T0),
        (2, 2) => ClassCombination::single(BasisClass::T1),
        _ => ClassCombination::zero(),
    };
    QuantumClassCombination { classical_part: classical_pieri(lambda), q_part }
}

/// Degree-1 three-point invariant `⟨σλ, σμ, σν⟩_1` read from a table of
/// `N(α,β,γ,δ;1)` values; `T1` insertions are stripped with the divisor
/// axiom (factor `d = 1`) and `T0` insertions vanish.
fn three_point(table: &BTreeMap<InvariantKey, BigInt>, classes: [Partition; 3]) -> Option<i64> {
    let mut e = [0u32; 4];
    for p in classes {
        match p.to_basis() {
            BasisClass::T0 => return Some(0),
            BasisClass::T1 => {}
            BasisClass::Ta => e[0] += 1,
            BasisClass::Tb => e[1] += 1,
            BasisClass::T3 => e[2] += 1,
            BasisClass::T4 => e[3] += 1,
        }
    }
    let key = InvariantKey::new(e[0], e[1], e[2], e[3], 1);
    if !key.is_dimension_valid() {
        return Some(0);
    }
    let v = table.get(&key).or_else(|| table.get(&key.mirrored()))?;
    i64::try_from(v).ok()
}

/// `σx * σλ` for `x ∈ {(2), (1,1)}` and `|λ| = 4`, where only the degree-1
/// correction survives: `q Σ_ν ⟨σx, σλ, σν^∨⟩_1 σν` with `|ν| = 2`.
fn q_product_top(table: &BTreeMap<InvariantKey, BigInt>, x: Partition, lambda: Partition) -> Option<ClassCombination> {
    let mut out = ClassCombination::zero();
    for nu in [Partition(2, 0), Partition(1, 1)] {
        out.add(nu.to_basis(), three_point(table, [x, lambda, nu.dual()])?);
    }
    Some(out)
}

/// The q-part of `σ21 * σ21` two ways, factoring `σ21 = σ1 σx` with
/// `x = (2)` and with `x = (1,1)`:
/// `σ21 * σ21 = σx * (σ1 * σ21) = σx * σ22 + q σx`.
pub fn square_of_t3(table: &BTreeMap<InvariantKey, BigInt>) -> Option<[ClassCombination; 2]> {
    let s21 = quantum_pieri(Partition(2, 1));
    let mut routes = [ClassCombination::zero(), ClassCombination::zero()];
    for (route, x) in routes.iter_mut().zip([Partition(2, 0), Partition(1, 1)]) {
        // classical part of σ1 * σ21 is σ22, q-part is the unit
        debug_assert_eq!(s21.classical_part, ClassCombination::single(BasisClass::T4));
        route.add_scaled(&q_product_top(table, x, Partition(2, 2))?, 1);
        route.add(x.to_basis(), s21.q_part.coefficient(BasisClass::T0));
    }
    Some(routes)
}

/// The shipped degree-1 seeds, checked against the quantum Pieri table and
/// against the small-ring identity for `σ21 * σ21`.
pub fn seed_invariants() -> Result<SeedSet, Error> {
    let seeds = SeedSet::shipped();
    check_seeds(&seeds)?;
    Ok(seeds)
}

pub fn check_seeds(seeds: &SeedSet) -> Result<(), Error> {
    let table = seeds.canonical()?;
    let get = |k: InvariantKey| -> Result<i64, Error> {
        table
            .get(&k.normalized())
            .and_then(|v| i64::try_from(v).ok())
            .ok_or_else(|| Error::SeedMismatch(format!("seed {k} missing")))
    };

    // q-coefficient of σ() in σ1 * σ21 is ⟨T1, T3, T4⟩_1 = 1 · N(0,0,1,1;1)
    let pieri = quantum_pieri(Partition(2, 1)).q_part.coefficient(BasisClass::T0);
    let two_point = get(InvariantKey::new(0, 0, 1, 1, 1))?;
    if pieri != two_point {
        return Err(Error::SeedMismatch(format!(
            "quantum Pieri gives q-coefficient {pieri} for σ1*σ21, seed (0,0,1,1;1) = {two_point}"
        )));
    }
    let pieri = quantum_pieri(Partition(2, 2)).q_part.coefficient(BasisClass::T1);
    if pieri != two_point {
        return Err(Error::SeedMismatch(format!(
            "quantum Pieri gives q-coefficient {pieri} for σ1*σ22, seed (0,0,1,1;1) = {two_point}"
        )));
    }

    // ⟨T3, T3, σν^∨⟩_1 is the σν coefficient of σ21 * σ21
    let routes = square_of_t3(&table).ok_or_else(|| Error::SeedMismatch("seed table incomplete".into()))?;
    if routes[0] != routes[1] {
        return Err(Error::SeedMismatch(format!(
            "σ21*σ21 differs between factorizations: {} vs {}",
            routes[0], routes[1]
        )));
    }
    for (class, key) in [
        (BasisClass::Ta, InvariantKey::new(1, 0, 2, 0, 1)),
        (BasisClass::Tb, InvariantKey::new(0, 1, 2, 0, 1)),
    ] {
        let ring = routes[0].coefficient(class);
        let seed = get(key)?;
        if ring != seed {
            return Err(Error::SeedMismatch(format!(
                "σ21*σ21 has q-coefficient {ring} on {class}, seed {key} = {seed}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cup, triple, ClassicalTripleTensor};

    fn p(a: u8, b: u8) -> Partition {
        Partition::new(a, b).unwrap()
    }

    #[test]
    fn partitions_biject_with_basis() {
        for c in BasisClass::ALL {
            assert_eq!(Partition::from_basis(c).to_basis(), c);
            assert_eq!(Partition::from_basis(c).size(), c.codim());
            assert_eq!(Partition::from_basis(c).dual().to_basis(), c.poincare_dual());
        }
        assert!(Partition::new(1, 2).is_none());
        assert!(Partition::new(3, 0).is_none());
    }

    #[test]
    fn pieri_examples() {
        use BasisClass::*;
        assert_eq!(classical_pieri(p(1, 0)), ClassCombination::from_terms(&[(Ta, 1), (Tb, 1)]));
        assert!(classical_pieri(p(2, 2)).is_zero());
        assert_eq!(classical_pieri(p(2, 0)), ClassCombination::single(T3));
        assert_eq!(classical_pieri(p(1, 1)), ClassCombination::single(T3));
        assert_eq!(classical_pieri(p(2, 1)), ClassCombination::single(T4));
    }

    #[test]
    fn pieri_stays_in_box() {
        for lambda in Partition::ALL {
            for k in 0..=2 {
                for q in pieri_special(k, lambda).keys() {
                    assert!(q.0 <= 2 && q.1 <= q.0);
                    assert_eq!(q.size(), lambda.size() + u32::from(k));
                }
            }
        }
    }

    #[test]
    fn pieri_agrees_with_cup() {
        for lambda in Partition::ALL {
            assert_eq!(classical_pieri(lambda), cup(BasisClass::T1, lambda.to_basis()));
        }
    }

    #[test]
    fn triple_oracle_examples() {
        assert_eq!(classical_triple_oracle(p(1, 0), p(1, 0), p(2, 0)), 1);
        assert_eq!(classical_triple_oracle(p(2, 0), p(1, 1), p(0, 0)), 0);
        assert_eq!(classical_triple_oracle(p(2, 2), p(0, 0), p(0, 0)), 1);
        assert_eq!(classical_triple_oracle(p(2, 0), p(2, 0), p(0, 0)), 1);
        assert_eq!(classical_triple_oracle(p(1, 0), p(1, 0), p(1, 0)), 0);
    }

    #[test]
    fn oracle_agrees_with_tensor_on_all_216_triples() {
        let tensor = ClassicalTripleTensor::from_potential();
        let mut n = 0;
        for a in Partition::ALL {
            for b in Partition::ALL {
                for c in Partition::ALL {
                    let o = classical_triple_oracle(a, b, c);
                    let (x, y, z) = (a.to_basis(), b.to_basis(), c.to_basis());
                    assert_eq!(o, tensor.get(x, y, z), "{a}{b}{c}");
                    assert_eq!(o, triple(x, y, z));
                    n += 1;
                }
            }
        }
        assert_eq!(n, 216);
    }

    #[test]
    fn quantum_pieri_table() {
        use BasisClass::*;
        let s1 = quantum_pieri(p(1, 0));
        assert_eq!(s1.classical_part, ClassCombination::from_terms(&[(Ta, 1), (Tb, 1)]));
        assert!(s1.q_part.is_zero());
        let s21 = quantum_pieri(p(2, 1));
        assert_eq!(s21.classical_part, ClassCombination::single(T4));
        assert_eq!(s21.q_part, ClassCombination::single(T0));
        let s22 = quantum_pieri(p(2, 2));
        assert!(s22.classical_part.is_zero());
        assert_eq!(s22.q_part, ClassCombination::single(T1));
        for lambda in [p(0, 0), p(2, 0), p(1, 1)] {
            assert!(quantum_pieri(lambda).q_part.is_zero());
        }
    }

    #[test]
    fn quantum_pieri_grading() {
        for lambda in Partition::ALL {
            let qp = quantum_pieri(lambda);
            if let Some(c) = qp.classical_part.codim() {
                assert_eq!(c, lambda.size() + 1);
            }
            if let Some(c) = qp.q_part.codim() {
                assert_eq!(c + 4, lambda.size() + 1);
            }
        }
    }

    #[test]
    fn t3_square_both_ways() {
        use BasisClass::*;
        let table = SeedSet::shipped().canonical().unwrap();
        let [a, b] = square_of_t3(&table).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, ClassCombination::from_terms(&[(Ta, 1), (Tb, 1)]));
    }

    #[test]
    fn shipped_seeds_pass_cross_checks() {
        let s = seed_invariants().unwrap();
        assert_eq!(s.get(&InvariantKey::new(0, 0, 1, 1, 1)), Some(&BigInt::from(1)));
        assert_eq!(s.get(&InvariantKey::new(2, 0, 0, 1, 1)), Some(&BigInt::from(0)));
        assert_eq!(s.get(&InvariantKey::new(1, 0, 2, 0, 1)), Some(&BigInt::from(1)));
    }

    #[test]
    fn corrupted_seed_fails_cross_check() {
        let mut e = SeedSet::shipped().entries().clone();
        e.insert(InvariantKey::new(1, 0, 2, 0, 1), BigInt::from(2));
        assert!(check_seeds(&SeedSet::from_entries(e, "bad")).is_err());

        let mut e = SeedSet::shipped().entries().clone();
        e.insert(InvariantKey::new(0, 0, 1, 1, 1), BigInt::from(0));
        assert!(check_seeds(&SeedSet::from_entries(e, "bad")).is_err());
    }
}
