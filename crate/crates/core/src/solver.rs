//! Exact solution of one degree's equation system: unit propagation, then
//! Gaussian elimination over the rationals for whatever is left.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::equations::WdvvEquation;
use crate::error::Error;
use crate::key::InvariantKey;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub degree: u32,
    pub equations: usize,
    pub unknowns: usize,
    pub given: usize,
    pub propagated: usize,
    pub eliminated: usize,
}

struct Row {
    terms: Vec<(i64, usize)>,
    residual: BigInt,
    open: usize,
}

/// Solves for every canonical degree-`degree` key, given `known` values
/// (seeds). Every equation, including the ones never used for
/// propagation, is checked against the result.
pub fn solve_system(
    degree: u32,
    equations: &[WdvvEquation],
    known: &BTreeMap<InvariantKey, BigInt>,
) -> Result<(BTreeMap<InvariantKey, BigInt>, SolveStats), Error> {
    let keys = InvariantKey::canonical_keys(degree);
    let index: HashMap<InvariantKey, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut values: Vec<Option<BigInt>> = vec![None; keys.len()];
    let mut stats = SolveStats { degree, equations: equations.len(), unknowns: keys.len(), ..Default::default() };

    let mut rows: Vec<Row> = equations
        .iter()
        .map(|e| Row {
            terms: e.terms.iter().map(|(c, k)| (*c, index[k])).collect(),
            residual: e.constant.clone(),
            open: e.terms.len(),
        })
        .collect();
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); keys.len()];
    for (r, row) in rows.iter().enumerate() {
        for &(_, v) in &row.terms {
            occurrences[v].push(r);
        }
    }

    let mut queue: VecDeque<usize> = VecDeque::new();
    let assign = |var: usize,
                  value: BigInt,
                  values: &mut Vec<Option<BigInt>>,
                  rows: &mut Vec<Row>,
                  queue: &mut VecDeque<usize>| {
        for &r in &occurrences[var] {
            let row = &mut rows[r];
            let c = row.terms.iter().find(|t| t.1 == var).map(|t| t.0).unwrap_or(0);
            row.residual += &value * c;
            row.open -= 1;
            if row.open == 1 {
                queue.push_back(r);
            }
        }
        values[var] = Some(value);
    };

    for (k, v) in known {
        if k.degree != degree {
            continue;
        }
        let var = index[&k.normalized()];
        if values[var].is_none() {
            assign(var, v.clone(), &mut values, &mut rows, &mut queue);
            stats.given += 1;
        }
    }
    for (r, row) in rows.iter().enumerate() {
        if row.open == 1 {
            queue.push_back(r);
        }
    }

    while let Some(r) = queue.pop_front() {
        if rows[r].open != 1 {
            continue;
        }
        let (c, var) = *rows[r]
            .terms
            .iter()
            .find(|t| values[t.1].is_none())
            .expect("one open term");
        let (q, rem) = (-&rows[r].residual).div_rem(&BigInt::from(c));
        if !rem.is_zero() {
            return Err(Error::NonIntegral {
                key: keys[var],
                value: format!("{}/{}", -&rows[r].residual, c),
            });
        }
        assign(var, q, &mut values, &mut rows, &mut queue);
        stats.propagated += 1;
    }

    let open: Vec<usize> = (0..keys.len()).filter(|&v| values[v].is_none()).collect();
    if !open.is_empty() {
        let solved = eliminate(degree, equations, &rows, &open, &keys)?;
        stats.eliminated = solved.len();
        for (var, v) in solved {
            values[var] = Some(v);
        }
    }

    let solution: BTreeMap<InvariantKey, BigInt> = keys
        .iter()
        .zip(values)
        .map(|(k, v)| (*k, v.expect("all unknowns determined")))
        .collect();

    for (k, v) in &solution {
        if v.is_negative() {
            return Err(Error::Negative { key: *k, value: v.clone() });
        }
    }
    check_all(&solution, equations)?;
    Ok((solution, stats))
}

/// Residual of every equation against a full degree solution.
pub fn check_all(solution: &BTreeMap<InvariantKey, BigInt>, equations: &[WdvvEquation]) -> Result<(), Error> {
    for e in equations {
        let mut r = e.constant.clone();
        for (c, k) in &e.terms {
            r += &solution[k] * *c;
        }
        if !r.is_zero() {
            return Err(Error::Inconsistent {
                degree: e.degree,
                quadruple: e.quadruple,
                monomial: e.monomial,
                residual: r,
            });
        }
    }
    Ok(())
}

/// Reduced row echelon form over the open columns.
fn eliminate(
    degree: u32,
    equations: &[WdvvEquation],
    rows: &[Row],
    open: &[usize],
    keys: &[InvariantKey],
) -> Result<Vec<(usize, BigInt)>, Error> {
    let ncols = open.len();
    let col_of: HashMap<usize, usize> = open.iter().enumerate().map(|(c, &v)| (v, c)).collect();
    // pivot column -> row with 1 at the pivot, last entry the right-hand side
    let mut pivots: BTreeMap<usize, Vec<BigRational>> = BTreeMap::new();

    for (r, row) in rows.iter().enumerate() {
        if row.open == 0 {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols + 1];
        for &(c, var) in &row.terms {
            if let Some(&col) = col_of.get(&var) {
                v[col] += BigRational::from_integer(BigInt::from(c));
            }
        }
        v[ncols] = BigRational::from_integer(-row.residual.clone());
        for (&pc, prow) in &pivots {
            if !v[pc].is_zero() {
                let f = v[pc].clone();
                for (x, p) in v.iter_mut().zip(prow) {
                    *x -= &f * p;
                }
            }
        }
        let Some(pc) = (0..ncols).find(|&c| !v[c].is_zero()) else {
            if !v[ncols].is_zero() {
                let e = &equations[r];
                return Err(Error::Inconsistent {
                    degree,
                    quadruple: e.quadruple,
                    monomial: e.monomial,
                    residual: -row.residual.clone(),
                });
            }
            continue;
        };
        let f = v[pc].clone();
        for x in v.iter_mut() {
            *x /= &f;
        }
        for prow in pivots.values_mut() {
            if !prow[pc].is_zero() {
                let g = prow[pc].clone();
                for (x, p) in prow.iter_mut().zip(&v) {
                    *x -= &g * p;
                }
            }
        }
        pivots.insert(pc, v);
        if pivots.len() == ncols {
            // remaining rows are checked afterwards by `check_all`
            break;
        }
    }

    let determined = |c: usize| -> bool {
        pivots
            .get(&c)
            .is_some_and(|row| (0..ncols).all(|j| j == c || row[j].is_zero()))
    };
    let unsolved: Vec<InvariantKey> = (0..ncols).filter(|&c| !determined(c)).map(|c| keys[open[c]]).collect();
    if !unsolved.is_empty() {
        return Err(Error::Underdetermined { degree, unsolved });
    }

    let mut out = Vec::with_capacity(ncols);
    for (c, &var) in open.iter().enumerate() {
        let value = &pivots[&c][ncols];
        if !value.denom().is_one() {
            return Err(Error::NonIntegral { key: keys[var], value: value.to_string() });
        }
        out.push((var, value.numer().clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::BasisClass;
    use crate::key::Monomial;

    fn eq(terms: &[(i64, InvariantKey)], constant: i64) -> WdvvEquation {
        WdvvEquation {
            quadruple: [BasisClass::T1; 4],
            monomial: Monomial::default(),
            degree: 1,
            terms: terms.to_vec(),
            constant: BigInt::from(constant),
        }
    }

    fn k(i: usize) -> InvariantKey {
        InvariantKey::canonical_keys(1)[i]
    }

    fn full_system() -> Vec<WdvvEquation> {
        // x_i = i + 1 for all nine degree-1 keys, chained
        let n = InvariantKey::canonical_keys(1).len();
        let mut eqs = vec![eq(&[(1, k(0))], -1)];
        for i in 1..n {
            eqs.push(eq(&[(2, k(i)), (-2, k(i - 1))], -2));
        }
        eqs
    }

    #[test]
    fn propagation_solves_chain() {
        let (sol, stats) = solve_system(1, &full_system(), &BTreeMap::new()).unwrap();
        for i in 0..9 {
            assert_eq!(sol[&k(i)], BigInt::from(i as i64 + 1));
        }
        assert_eq!(stats.propagated, 9);
        assert_eq!(stats.eliminated, 0);
    }

    #[test]
    fn elimination_fallback() {
        // couple the first two unknowns so no equation has a single unknown
        let mut eqs = full_system();
        eqs[0] = eq(&[(1, k(0)), (1, k(1))], -3);
        eqs[1] = eq(&[(1, k(0)), (-1, k(1))], 1);
        let (sol, stats) = solve_system(1, &eqs, &BTreeMap::new()).unwrap();
        assert_eq!(sol[&k(0)], BigInt::from(1));
        assert_eq!(sol[&k(8)], BigInt::from(9));
        assert!(stats.eliminated >= 2);
    }

    #[test]
    fn underdetermined_lists_keys() {
        let mut eqs = full_system();
        eqs.remove(0);
        match solve_system(1, &eqs, &BTreeMap::new()) {
            Err(Error::Underdetermined { degree: 1, unsolved }) => assert_eq!(unsolved.len(), 9),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn redundant_equation_is_checked() {
        let mut eqs = full_system();
        eqs.push(eq(&[(1, k(3))], -5));
        assert!(matches!(solve_system(1, &eqs, &BTreeMap::new()), Err(Error::Inconsistent { .. })));
    }

    #[test]
    fn non_integral_and_negative() {
        let mut eqs = full_system();
        eqs[0] = eq(&[(2, k(0))], -1);
        assert!(matches!(solve_system(1, &eqs, &BTreeMap::new()), Err(Error::NonIntegral { .. })));
        let mut eqs = full_system();
        eqs[0] = eq(&[(1, k(0))], 20);
        assert!(matches!(solve_system(1, &eqs, &BTreeMap::new()), Err(Error::Negative { .. })));
    }

    #[test]
    fn known_values_seed_propagation() {
        let mut eqs = full_system();
        eqs.remove(0);
        let known = [(k(0), BigInt::from(1))].into_iter().collect();
        let (sol, stats) = solve_system(1, &eqs, &known).unwrap();
        assert_eq!(sol[&k(8)], BigInt::from(9));
        assert_eq!(stats.given, 1);
    }
}
