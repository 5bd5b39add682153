//! Memo table of solved invariants, committed one degree at a time.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::key::{dimension_valid, InvariantKey, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeStatus {
    Unsolved,
    Solved,
    Verified,
}

/// All values of one degree, with a dense lookup grid covering both
/// `Ta <-> Tb` orientations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTable {
    degree: u32,
    weight: u32,
    keys: Vec<InvariantKey>,
    values: Vec<BigInt>,
    dims: [usize; 3],
    dense: Vec<BigInt>,
    dense_small: Vec<Option<i128>>,
}

impl DegreeTable {
    fn build(degree: u32, values: &BTreeMap<InvariantKey, BigInt>) -> Result<Self, Error> {
        let keys = InvariantKey::canonical_keys(degree);
        let mut vals = Vec::with_capacity(keys.len());
        for key in &keys {
            let v = values
                .get(key)
                .ok_or(Error::MissingValue { key: *key, degree })?;
            if v.is_negative() {
                return Err(Error::Negative { key: *key, value: v.clone() });
            }
            vals.push(v.clone());
        }
        let weight = 4 * degree + 1;
        let dims = [weight as usize + 1, weight as usize / 2 + 1, weight as usize / 3 + 1];
        let cells = dims[0] * dims[1] * dims[2];
        let mut dense = vec![BigInt::zero(); cells];
        let mut dense_small = vec![Some(0i128); cells];
        for (key, v) in keys.iter().zip(&vals) {
            for k in [*key, key.mirrored()] {
                let idx = Self::index(&dims, k.monomial());
                dense[idx] = v.clone();
                dense_small[idx] = v.to_i128();
            }
        }
        Ok(Self { degree, weight, keys, values: vals, dims, dense, dense_small })
    }

    fn index(dims: &[usize; 3], m: Monomial) -> usize {
        let [_, b, c, d] = m.0;
        (d as usize * dims[1] + c as usize) * dims[0] + b as usize
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Canonical keys in sort order.
    pub fn keys(&self) -> &[InvariantKey] {
        &self.keys
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Value at an exponent vector of this degree; zero off the dimension layer.
    #[inline]
    pub fn get(&self, m: Monomial) -> Option<&BigInt> {
        (m.weight() == self.weight).then(|| &self.dense[Self::index(&self.dims, m)])
    }

    /// `Some(Some(v))` when the value fits in `i128`, `None` off the layer.
    #[inline]
    pub fn get_small(&self, m: Monomial) -> Option<Option<i128>> {
        (m.weight() == self.weight).then(|| self.dense_small[Self::index(&self.dims, m)])
    }
}

/// Exact nonnegative invariants for degrees `1..=solved_degree()`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvariantStore {
    tables: Vec<DegreeTable>,
    status: Vec<DegreeStatus>,
}

impl InvariantStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rebuilds a store from raw values, e.g. read back from a cache file.
    /// Keys may be given in either orientation; the set must cover every
    /// canonical key of degrees `1..=max` for some `max`.
    pub fn from_values(values: &BTreeMap<InvariantKey, BigInt>) -> Result<Self, Error> {
        let mut by_degree: BTreeMap<u32, BTreeMap<InvariantKey, BigInt>> = BTreeMap::new();
        for (k, v) in values {
            by_degree.entry(k.degree).or_default().insert(k.normalized(), v.clone());
        }
        let mut store = Self::new();
        for (&d, vals) in &by_degree {
            if d != store.solved_degree() + 1 {
                return Err(Error::OutOfOrder { requested: d, solved: store.solved_degree() });
            }
            store.commit(d, vals)?;
        }
        Ok(store)
    }

    /// Highest degree with committed values (0 when empty).
    pub fn solved_degree(&self) -> u32 {
        self.tables.len() as u32
    }

    pub fn commit(&mut self, degree: u32, values: &BTreeMap<InvariantKey, BigInt>) -> Result<(), Error> {
        if degree != self.solved_degree() + 1 {
            return Err(Error::OutOfOrder { requested: degree, solved: self.solved_degree() });
        }
        let table = DegreeTable::build(degree, values)?;
        self.tables.push(table);
        self.status.push(DegreeStatus::Solved);
        Ok(())
    }

    pub fn status(&self, degree: u32) -> DegreeStatus {
        match degree.checked_sub(1) {
            Some(i) => self.status.get(i as usize).copied().unwrap_or(DegreeStatus::Unsolved),
            None => DegreeStatus::Unsolved,
        }
    }

    pub fn mark_verified(&mut self, degree: u32) {
        if let Some(s) = degree.checked_sub(1).and_then(|i| self.status.get_mut(i as usize)) {
            *s = DegreeStatus::Verified;
        }
    }

    pub fn table(&self, degree: u32) -> Option<&DegreeTable> {
        degree.checked_sub(1).and_then(|i| self.tables.get(i as usize))
    }

    /// Stored value; dimension-invalid keys are zero by convention.
    pub fn get(&self, key: &InvariantKey) -> Result<BigInt, Error> {
        if !dimension_valid(key) {
            return Ok(BigInt::zero());
        }
        self.table(key.degree)
            .and_then(|t| t.get(key.monomial()))
            .cloned()
            .ok_or(Error::MissingValue { key: *key, degree: key.degree })
    }

    /// Canonical `(key, value)` pairs, ascending degree then key order.
    pub fn iter(&self) -> impl Iterator<Item = (&InvariantKey, &BigInt)> {
        self.tables.iter().flat_map(|t| t.keys.iter().zip(&t.values))
    }

    pub fn len(&self) -> usize {
        self.tables.iter().map(|t| t.keys.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// Canonical values as an ordered map.
    pub fn to_map(&self) -> BTreeMap<InvariantKey, BigInt> {
        self.iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    /// Drops all degrees above `degree`.
    pub fn truncate(&mut self, degree: u32) {
        self.tables.truncate(degree as usize);
        self.status.truncate(degree as usize);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degree_one() -> BTreeMap<InvariantKey, BigInt> {
        InvariantKey::canonical_keys(1)
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, BigInt::from(i)))
            .collect()
    }

    #[test]
    fn commit_and_lookup_both_orientations() {
        let mut store = InvariantStore::new();
        store.commit(1, &degree_one()).unwrap();
        assert_eq!(store.solved_degree(), 1);
        assert_eq!(store.status(1), DegreeStatus::Solved);
        for (k, v) in degree_one() {
            assert_eq!(store.get(&k).unwrap(), v);
            assert_eq!(store.get(&k.mirrored()).unwrap(), v);
        }
        assert_eq!(store.get(&InvariantKey::new(1, 0, 0, 0, 1)).unwrap(), BigInt::zero());
        assert!(matches!(
            store.get(&InvariantKey::new(9, 0, 0, 0, 2)),
            Err(Error::MissingValue { .. })
        ));
    }

    #[test]
    fn degrees_commit_in_order() {
        let mut store = InvariantStore::new();
        let err = store.commit(2, &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::OutOfOrder { requested: 2, solved: 0 }));
    }

    #[test]
    fn incomplete_or_negative_degree_rejected() {
        let mut vals = degree_one();
        let first = *vals.keys().next().unwrap();
        vals.remove(&first);
        assert!(matches!(InvariantStore::new().commit(1, &vals), Err(Error::MissingValue { .. })));

        let mut vals = degree_one();
        vals.insert(first, BigInt::from(-1));
        assert!(matches!(InvariantStore::new().commit(1, &vals), Err(Error::Negative { .. })));
    }

    #[test]
    fn from_values_accepts_mirrored_keys() {
        let vals: BTreeMap<_, _> = degree_one().into_iter().map(|(k, v)| (k.mirrored(), v)).collect();
        let store = InvariantStore::from_values(&vals).unwrap();
        assert_eq!(store.to_map(), degree_one());
    }
}
