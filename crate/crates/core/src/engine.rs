//! Degree-by-degree driver over the store: solve, look up, verify.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::ThreadPool;
use serde_json::json;

use crate::cohomology::BasisClass;
use crate::equations::{generate_equations, GenerationPolicy, WdvvEquation};
use crate::error::Error;
use crate::key::{dimension_valid, InvariantKey, Monomial};
use crate::seeds::SeedSet;
use crate::solver::{solve_system, SolveStats};
use crate::store::{DegreeStatus, InvariantStore};

/// Note attached to degrees where `Q_d` is not a plain surface count.
pub fn degree_caveat(degree: u32) -> Option<&'static str> {
    match degree {
        1 => Some("no rational ruled surface of degree 1 exists; Q_1 = 0"),
        2 => Some("Q_2 is twice the number of quadrics through 9 points (each quadric has two rulings)"),
        _ => None,
    }
}

/// `N_d = d^3 Q_d` with the low-degree caveat, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuledSurfaceDegree {
    pub degree: u32,
    pub value: BigInt,
    pub caveat: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub degree: u32,
    pub quadruple: [BasisClass; 4],
    pub monomial: Monomial,
    pub residual: BigInt,
}

impl Violation {
    fn from_equation(e: &WdvvEquation, residual: BigInt) -> Self {
        Self { degree: e.degree, quadruple: e.quadruple, monomial: e.monomial, residual }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "kind": "violation",
            "degree": self.degree,
            "quadruple": self.quadruple.iter().map(|c| c.label()).collect::<Vec<_>>(),
            "monomial": self.monomial.0,
            "residual": self.residual.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: u32,
    pub equations: usize,
    pub violations: usize,
}

/// Outcome of re-checking every generated equation against the store.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub max_degree: u32,
    pub degrees: Vec<DegreeCheck>,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn equations_checked(&self) -> usize {
        self.degrees.iter().map(|d| d.equations).sum()
    }
}

/// Checks every equation of every degree `1..=max_degree` against the store.
pub fn verify_wdvv(store: &InvariantStore, max_degree: u32, policy: GenerationPolicy) -> Result<VerifyReport, Error> {
    let mut report = VerifyReport { max_degree, ..Default::default() };
    for d in 1..=max_degree {
        if store.table(d).is_none() {
            return Err(Error::MissingValue { key: InvariantKey::q_key(d), degree: d });
        }
        let equations = generate_equations(store, d, policy)?;
        let mut violations = 0;
        for e in &equations {
            let r = e.residual(store)?;
            if !r.is_zero() {
                violations += 1;
                report.violations.push(Violation::from_equation(e, r));
            }
        }
        report.degrees.push(DegreeCheck { degree: d, equations: equations.len(), violations });
    }
    Ok(report)
}

/// Checks only the degree-`degree` equations in which `key` is an unknown.
pub fn verify_key(store: &InvariantStore, key: &InvariantKey, equations: &[WdvvEquation]) -> Result<Vec<Violation>, Error> {
    let key = key.normalized();
    let mut out = Vec::new();
    for e in equations.iter().filter(|e| e.unknowns().any(|k| *k == key)) {
        let r = e.residual(store)?;
        if !r.is_zero() {
            out.push(Violation::from_equation(e, r));
        }
    }
    Ok(out)
}

pub struct Engine {
    store: InvariantStore,
    seeds: SeedSet,
    policy: GenerationPolicy,
    pool: Option<ThreadPool>,
    stats: Vec<SolveStats>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Self::with_seeds(SeedSet::shipped())
    }

    pub fn with_seeds(seeds: SeedSet) -> Self {
        Self::from_store(InvariantStore::new(), seeds)
    }

    pub fn from_store(store: InvariantStore, seeds: SeedSet) -> Self {
        Self { store, seeds, policy: GenerationPolicy::DimensionLayer, pool: None, stats: Vec::new() }
    }

    /// Runs equation generation on a dedicated pool of `workers` threads.
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().ok();
        self
    }

    pub fn with_policy(mut self, policy: GenerationPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn store(&self) -> &InvariantStore {
        &self.store
    }

    pub fn into_store(self) -> InvariantStore {
        self.store
    }

    pub fn seeds(&self) -> &SeedSet {
        &self.seeds
    }

    pub fn policy(&self) -> GenerationPolicy {
        self.policy
    }

    /// Statistics of the degrees solved by this engine.
    pub fn stats(&self) -> &[SolveStats] {
        &self.stats
    }

    fn generate(&self, degree: u32) -> Result<Vec<WdvvEquation>, Error> {
        match &self.pool {
            Some(pool) => pool.install(|| generate_equations(&self.store, degree, self.policy)),
            None => generate_equations(&self.store, degree, self.policy),
        }
    }

    /// Solves and commits the next degree. Degree 1 starts from the seeds.
    pub fn solve_degree(&mut self, degree: u32) -> Result<BTreeMap<InvariantKey, BigInt>, Error> {
        let solved = self.store.solved_degree();
        if degree != solved + 1 {
            return Err(Error::OutOfOrder { requested: degree, solved });
        }
        let equations = self.generate(degree)?;
        let known = if degree == 1 { self.seeds.canonical()? } else { BTreeMap::new() };
        let (solution, stats) = solve_system(degree, &equations, &known)?;
        self.store.commit(degree, &solution)?;
        self.stats.push(stats);
        Ok(solution)
    }

    /// Solves every degree up to `degree` not yet in the store.
    pub fn solve_through(&mut self, degree: u32) -> Result<(), Error> {
        for d in self.store.solved_degree() + 1..=degree {
            self.solve_degree(d)?;
        }
        Ok(())
    }

    /// `N(α,β,γ,δ;d)`; zero off the dimension layer, solved on demand.
    pub fn invariant(&mut self, key: &InvariantKey) -> Result<BigInt, Error> {
        if !dimension_valid(key) {
            return Ok(BigInt::zero());
        }
        self.solve_through(key.degree)?;
        self.store.get(&key.normalized())
    }

    /// `Q_d = N(4d+1, 0, 0, 0; d)`.
    pub fn q_number(&mut self, degree: u32) -> Result<BigInt, Error> {
        self.invariant(&InvariantKey::q_key(degree))
    }

    /// `N_d = d^3 Q_d`, the degree of the surface swept by the lines.
    pub fn ruled_surface_degree(&mut self, degree: u32) -> Result<RuledSurfaceDegree, Error> {
        let q = self.q_number(degree)?;
        let (scale, _) = crate::key::reduce_divisor(3, &InvariantKey::q_key(degree))?;
        Ok(RuledSurfaceDegree { degree, value: scale * q, caveat: degree_caveat(degree) })
    }

    /// Re-checks every equation up to `max_degree`; marks clean degrees verified.
    pub fn verify_wdvv(&mut self, max_degree: u32) -> Result<VerifyReport, Error> {
        let report = match &self.pool {
            Some(pool) => pool.install(|| verify_wdvv(&self.store, max_degree, self.policy)),
            None => verify_wdvv(&self.store, max_degree, self.policy),
        }?;
        for check in report.degrees.iter().take_while(|c| c.violations == 0) {
            self.store.mark_verified(check.degree);
        }
        Ok(report)
    }

    pub fn status(&self, degree: u32) -> DegreeStatus {
        self.store.status(degree)
    }
}
