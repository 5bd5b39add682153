//! Associativity (WDVV) equations as linear relations among the
//! invariants of a single degree.
//!
//! With `F = f_cl + f` and `q = e^{y1}`, a third partial of the quantum
//! part `f` expands as
//!
//! ```text
//! ∂_i ∂_j ∂_k f = Σ_{n,d} d^{#T1} N(n + e_i + e_j + e_k; d) y^n/n! q^d
//! ```
//!
//! where `e_x` is the unit exponent of `y_x` for `x ∈ {a, b, 3, 4}`, a
//! `y1`-derivative contributes a factor `d`, and a `y0`-derivative kills the
//! term. The equation of quadruple `(i,j,k,l)` at target `(n; d)` is the
//! coefficient of `y^n/n! q^d` in
//!
//! ```text
//! Σ_{e,f} F_{ije} g^{ef} F_{fkl} - Σ_{e,f} F_{jke} g^{ef} F_{fil}.
//! ```
//!
//! Products of a classical and a degree-`d` factor give the unknown terms;
//! products of two quantum factors of degrees `d1 + d2 = d` form the
//! constant, weighted by the multinomial `n! / (m! (n-m)!)`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cohomology::{BasisClass, ClassicalTripleTensor};
use crate::error::Error;
use crate::key::{InvariantKey, Monomial};
use crate::store::{DegreeTable, InvariantStore};

/// Largest supported degree; keeps multinomial weights inside `u128`.
pub const MAX_DEGREE: u32 = 30;

/// One linear relation `Σ coefficient · N(key) + constant = 0` among
/// degree-`d` unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WdvvEquation {
    pub quadruple: [BasisClass; 4],
    pub monomial: Monomial,
    pub degree: u32,
    /// Canonical degree-`d` keys with nonzero coefficients, in key order.
    pub terms: Vec<(i64, InvariantKey)>,
    pub constant: BigInt,
}

impl WdvvEquation {
    /// `Σ coefficient · value + constant` against the store.
    pub fn residual(&self, store: &InvariantStore) -> Result<BigInt, Error> {
        let mut r = self.constant.clone();
        for (c, key) in &self.terms {
            r += store.get(key)? * *c;
        }
        Ok(r)
    }

    pub fn is_vacuous(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    pub fn unknowns(&self) -> impl Iterator<Item = &InvariantKey> {
        self.terms.iter().map(|(_, k)| k)
    }
}

/// Which target monomials to enumerate per quadruple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GenerationPolicy {
    /// Only the weight layer `4d - Σ (codim - 1)` on which a quadruple can
    /// touch dimension-valid keys.
    #[default]
    DimensionLayer,
    /// Every exponent vector of weight at most `4d + 1`; the extra
    /// equations are vacuous.
    WeightBox,
}

/// Insertion weight `codim - 1` of a derivative index; `T0` never appears.
fn index_weight(c: BasisClass) -> u32 {
    c.codim().saturating_sub(1)
}

fn pairing_of(a: BasisClass, b: BasisClass, c: BasisClass, d: BasisClass) -> [[BasisClass; 2]; 2] {
    let mut p = [sorted2(a, b), sorted2(c, d)];
    p.sort();
    p
}

fn sorted2(a: BasisClass, b: BasisClass) -> [BasisClass; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Representatives of the distinct nontrivial associativity relations.
///
/// Quadruples containing `T0` only restate the unit axiom and are skipped.
/// A quadruple `(i,j,k,l)` relates the pairings `(ij|kl)` and `(jk|il)`;
/// it is dropped when they coincide, and kept only for the first
/// quadruple (in basis order) producing a given unordered pair.
pub fn relation_quadruples() -> Vec<[BasisClass; 4]> {
    let classes = &BasisClass::ALL[1..];
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &i in classes {
        for &j in classes {
            for &k in classes {
                for &l in classes {
                    let p1 = pairing_of(i, j, k, l);
                    let p2 = pairing_of(j, k, i, l);
                    if p1 == p2 {
                        continue;
                    }
                    let key = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
                    if seen.insert(key) {
                        out.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    out
}

/// Target weight of the exponent vectors a quadruple constrains at degree `d`.
pub fn layer_weight(quadruple: &[BasisClass; 4], degree: u32) -> Option<u32> {
    let s: u32 = quadruple.iter().map(|&c| index_weight(c)).sum();
    if quadruple.contains(&BasisClass::T0) {
        return None;
    }
    (4 * degree).checked_sub(s)
}

/// Shape of a third partial `∂_a ∂_b ∂_c f`.
#[derive(Debug, Clone, Copy)]
struct Partial {
    shift: [u32; 4],
    divisors: u32,
    quantum: bool,
}

impl Partial {
    fn of(classes: [BasisClass; 3]) -> Self {
        let mut shift = [0u32; 4];
        let mut divisors = 0;
        let mut quantum = true;
        for c in classes {
            match c {
                BasisClass::T0 => quantum = false,
                BasisClass::T1 => divisors += 1,
                other => shift[Monomial::slot(other).expect("insertion class")] += 1,
            }
        }
        Self { shift, divisors, quantum }
    }

    fn shift_weight(&self) -> u32 {
        Monomial(self.shift).weight()
    }

    fn key(&self, n: Monomial, degree: u32) -> InvariantKey {
        InvariantKey::from_monomial(add(n, self.shift), degree)
    }
}

fn add(a: Monomial, b: [u32; 4]) -> Monomial {
    Monomial([a.0[0] + b[0], a.0[1] + b[1], a.0[2] + b[2], a.0[3] + b[3]])
}

/// One `e` in `Σ_{e,f} F_{.. e} g^{ef} F_{f ..}` (with `f` the dual of `e`).
#[derive(Debug, Clone, Copy)]
struct Channel {
    classical_left: i64,
    classical_right: i64,
    left: Partial,
    right: Partial,
}

/// `Σ_e F_{abe} F_{e' cd}`.
#[derive(Debug, Clone)]
struct PairingSum {
    channels: Vec<Channel>,
}

impl PairingSum {
    fn new(tensor: &ClassicalTripleTensor, a: BasisClass, b: BasisClass, c: BasisClass, d: BasisClass) -> Self {
        let channels = BasisClass::ALL
            .iter()
            .map(|&e| {
                let f = e.poincare_dual();
                Channel {
                    classical_left: tensor.get(a, b, e),
                    classical_right: tensor.get(f, c, d),
                    left: Partial::of([a, b, e]),
                    right: Partial::of([f, c, d]),
                }
            })
            .collect();
        Self { channels }
    }
}

/// Binomial coefficients `C(n, k)` for `n` up to `4 * MAX_DEGREE + 4`.
struct Binomials {
    rows: Vec<Vec<u128>>,
}

impl Binomials {
    fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = vec![1u128; n + 1];
            for k in 1..n {
                row[k] = rows[n - 1][k - 1] + rows[n - 1][k];
            }
            rows.push(row);
        }
        Self { rows }
    }

    #[inline]
    fn get(&self, n: u32, k: u32) -> u128 {
        self.rows[n as usize][k as usize]
    }
}

/// Exact sum with an `i128` fast path.
#[derive(Default)]
struct Accumulator {
    small: i128,
    big: Option<BigInt>,
}

impl Accumulator {
    #[inline]
    fn add_product(&mut self, weight: u128, x: &BigInt, xs: Option<i128>, y: &BigInt, ys: Option<i128>) {
        if let (Some(xs), Some(ys)) = (xs, ys) {
            let fast = i128::try_from(weight)
                .ok()
                .and_then(|w| xs.checked_mul(ys)?.checked_mul(w))
                .and_then(|p| self.small.checked_add(p));
            if let Some(s) = fast {
                self.small = s;
                return;
            }
        }
        let p = x * y * BigInt::from(weight);
        match &mut self.big {
            Some(b) => *b += p,
            None => self.big = Some(p),
        }
    }

    fn finish(self) -> BigInt {
        let small = BigInt::from(self.small);
        match self.big {
            Some(b) => b + small,
            None => small,
        }
    }
}

/// Equation generator for one degree over a read-only store snapshot.
pub struct EquationGenerator<'a> {
    store: &'a InvariantStore,
    degree: u32,
    binomials: Binomials,
    tensor: ClassicalTripleTensor,
}

impl<'a> EquationGenerator<'a> {
    /// Fails when some degree below `degree` is missing from the store.
    pub fn new(store: &'a InvariantStore, degree: u32) -> Result<Self, Error> {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds MAX_DEGREE");
        if degree > 1 && store.solved_degree() < degree - 1 {
            let missing = store.solved_degree() + 1;
            return Err(Error::MissingValue { key: InvariantKey::q_key(missing), degree: missing });
        }
        Ok(Self {
            store,
            degree,
            binomials: Binomials::new(4 * MAX_DEGREE as usize + 4),
            tensor: ClassicalTripleTensor::from_potential(),
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Target monomials for a quadruple.
    pub fn targets(&self, quadruple: &[BasisClass; 4], policy: GenerationPolicy) -> Vec<Monomial> {
        if self.degree == 0 || quadruple.contains(&BasisClass::T0) {
            return Vec::new();
        }
        match policy {
            GenerationPolicy::DimensionLayer => layer_weight(quadruple, self.degree)
                .map(Monomial::of_weight)
                .unwrap_or_default(),
            GenerationPolicy::WeightBox => Monomial::up_to_weight(4 * self.degree + 1),
        }
    }

    /// The equation of one quadruple at one target monomial.
    pub fn equation(&self, quadruple: [BasisClass; 4], monomial: Monomial) -> WdvvEquation {
        let [i, j, k, l] = quadruple;
        let lhs = PairingSum::new(&self.tensor, i, j, k, l);
        let rhs = PairingSum::new(&self.tensor, j, k, i, l);
        let mut terms: BTreeMap<InvariantKey, i64> = BTreeMap::new();
        let mut constant = BigInt::zero();
        for (side, sign) in [(&lhs, 1i64), (&rhs, -1i64)] {
            self.side_terms(side, monomial, sign, &mut terms);
            constant += self.side_constant(side, monomial) * sign;
        }
        let terms = terms.into_iter().filter(|&(_, c)| c != 0).map(|(k, c)| (c, k)).collect();
        WdvvEquation { quadruple, monomial, degree: self.degree, terms, constant }
    }

    fn side_terms(&self, side: &PairingSum, n: Monomial, sign: i64, terms: &mut BTreeMap<InvariantKey, i64>) {
        let d = self.degree;
        for ch in &side.channels {
            for (classical, partial) in [(ch.classical_left, ch.right), (ch.classical_right, ch.left)] {
                if classical == 0 || !partial.quantum {
                    continue;
                }
                let key = partial.key(n, d);
                if !key.is_dimension_valid() {
                    continue;
                }
                let coeff = sign * classical * i64::from(d).pow(partial.divisors);
                *terms.entry(key.normalized()).or_insert(0) += coeff;
            }
        }
    }

    fn side_constant(&self, side: &PairingSum, n: Monomial) -> BigInt {
        let mut total = BigInt::zero();
        for ch in &side.channels {
            if !(ch.left.quantum && ch.right.quantum) {
                continue;
            }
            for d1 in 1..self.degree {
                let d2 = self.degree - d1;
                let conv = self.convolve(&ch.left, d1, &ch.right, d2, n);
                if conv.is_zero() {
                    continue;
                }
                let scale = BigInt::from(d1).pow(ch.left.divisors) * BigInt::from(d2).pow(ch.right.divisors);
                total += conv * scale;
            }
        }
        total
    }

    /// `Σ_{m ≤ n} C(n, m) N(m + u; d1) N(n - m + v; d2)`, restricted to the
    /// splittings where both keys are dimension-valid.
    fn convolve(&self, left: &Partial, d1: u32, right: &Partial, d2: u32, n: Monomial) -> BigInt {
        let w1 = (4 * d1 + 1) as i64 - left.shift_weight() as i64;
        let w2 = (4 * d2 + 1) as i64 - right.shift_weight() as i64;
        if w1 < 0 || w2 < 0 || w1 + w2 != n.weight() as i64 {
            return BigInt::zero();
        }
        let (Some(t1), Some(t2)) = (self.store.table(d1), self.store.table(d2)) else {
            // checked by the constructor
            unreachable!("degrees {d1} and {d2} must be solved before degree {}", self.degree);
        };
        let [na, nb, nc, nd] = n.0;
        let mut acc = Accumulator::default();
        for dl in 0..=nd {
            let bd = self.binomials.get(nd, dl);
            for cl in 0..=nc {
                let rem = w1 - 2 * cl as i64 - 3 * dl as i64;
                if rem < 0 {
                    break;
                }
                let bdc = bd * self.binomials.get(nc, cl);
                let lo = (rem - na as i64).max(0) as u32;
                let hi = rem.min(nb as i64);
                if (lo as i64) > hi {
                    continue;
                }
                for bl in lo..=hi as u32 {
                    let al = rem as u32 - bl;
                    let m = Monomial([al, bl, cl, dl]);
                    let m2 = Monomial([na - al, nb - bl, nc - cl, nd - dl]);
                    let k1 = add(m, left.shift);
                    let k2 = add(m2, right.shift);
                    accumulate(&mut acc, t1, k1, t2, k2, || {
                        bdc * self.binomials.get(na, al) * self.binomials.get(nb, bl)
                    });
                }
            }
        }
        acc.finish()
    }

    /// Equations for every relation quadruple and target, in a fixed order.
    pub fn generate(&self, policy: GenerationPolicy) -> Vec<WdvvEquation> {
        let jobs: Vec<([BasisClass; 4], Monomial)> = relation_quadruples()
            .into_iter()
            .flat_map(|q| self.targets(&q, policy).into_iter().map(move |m| (q, m)))
            .collect();
        jobs.into_par_iter().map(|(q, m)| self.equation(q, m)).collect()
    }
}

#[inline]
fn accumulate(
    acc: &mut Accumulator,
    t1: &DegreeTable,
    k1: Monomial,
    t2: &DegreeTable,
    k2: Monomial,
    weight: impl FnOnce() -> u128,
) {
    let (Some(xs), Some(ys)) = (t1.get_small(k1), t2.get_small(k2)) else {
        return;
    };
    if xs == Some(0) || ys == Some(0) {
        return;
    }
    let x = t1.get(k1).expect("on layer");
    let y = t2.get(k2).expect("on layer");
    acc.add_product(weight(), x, xs, y, ys);
}

/// All equations for degree `d`; empty for `d = 0`.
pub fn generate_equations(
    store: &InvariantStore,
    degree: u32,
    policy: GenerationPolicy,
) -> Result<Vec<WdvvEquation>, Error> {
    if degree == 0 {
        return Ok(Vec::new());
    }
    Ok(EquationGenerator::new(store, degree)?.generate(policy))
}

/// Multinomial `n! / (m! (n-m)!)` over all four slots.
pub fn splitting_weight(n: Monomial, m: Monomial) -> BigInt {
    let mut w = BigInt::one();
    for s in 0..4 {
        w *= num_integer::binomial(BigInt::from(n.0[s]), BigInt::from(m.0[s]));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::BasisClass::*;
    use super::*;

    #[test]
    fn fifty_five_relations() {
        let quads = relation_quadruples();
        assert_eq!(quads.len(), 55);
        assert!(quads.iter().all(|q| !q.contains(&T0)));
        // no relation uses three divisor indices: its two pairings agree
        assert!(quads.iter().all(|q| q.iter().filter(|&&c| c == T1).count() <= 2));
    }

    #[test]
    fn degree_zero_is_empty() {
        let store = InvariantStore::new();
        assert!(generate_equations(&store, 0, GenerationPolicy::DimensionLayer).unwrap().is_empty());
    }

    #[test]
    fn missing_lower_degree_is_reported() {
        let store = InvariantStore::new();
        let err = generate_equations(&store, 3, GenerationPolicy::DimensionLayer).unwrap_err();
        match err {
            Error::MissingValue { key, degree } => {
                assert_eq!(degree, 1);
                assert_eq!(key, InvariantKey::q_key(1));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn degree_one_unknowns_have_degree_one() {
        let store = InvariantStore::new();
        let g = EquationGenerator::new(&store, 1).unwrap();
        let eqs: Vec<_> = g
            .targets(&[Ta, Ta, Tb, Tb], GenerationPolicy::DimensionLayer)
            .into_iter()
            .map(|m| g.equation([Ta, Ta, Tb, Tb], m))
            .collect();
        assert!(!eqs.is_empty());
        for e in &eqs {
            assert!(e.constant.is_zero());
            for k in e.unknowns() {
                assert_eq!(k.degree, 1);
                assert!(k.is_dimension_valid());
                assert!(k.is_canonical());
            }
        }
        assert!(eqs.iter().any(|e| !e.terms.is_empty()));
    }

    #[test]
    fn unit_quadruples_are_trivial() {
        let store = InvariantStore::new();
        let g = EquationGenerator::new(&store, 1).unwrap();
        for q in [[T0, T1, Ta, Tb], [Ta, T0, T3, T1], [T1, Ta, T0, T4], [Tb, T3, Ta, T0]] {
            for m in Monomial::up_to_weight(5) {
                let e = g.equation(q, m);
                assert!(e.is_vacuous(), "{q:?} {m}: {e:?}");
            }
        }
    }

    #[test]
    fn off_layer_targets_are_vacuous() {
        let store = InvariantStore::new();
        let g = EquationGenerator::new(&store, 1).unwrap();
        for q in relation_quadruples() {
            let layer = layer_weight(&q, 1);
            for m in g.targets(&q, GenerationPolicy::WeightBox) {
                if Some(m.weight()) != layer {
                    assert!(g.equation(q, m).is_vacuous());
                }
            }
        }
    }

    #[test]
    fn splitting_weights() {
        let n = Monomial([9, 0, 0, 0]);
        assert_eq!(splitting_weight(n, Monomial([4, 0, 0, 0])), BigInt::from(126));
        let b = Binomials::new(20);
        assert_eq!(b.get(9, 4), 126);
        assert_eq!(b.get(20, 10), 184756);
    }

    #[test]
    fn accumulator_overflows_into_bigint() {
        let mut acc = Accumulator::default();
        let x = BigInt::from(i128::MAX / 2);
        for _ in 0..4 {
            acc.add_product(1, &x, Some(i128::MAX / 2), &BigInt::one(), Some(1));
        }
        assert_eq!(acc.finish(), x * 4);
    }
}
