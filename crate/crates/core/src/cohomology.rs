//! Classical cohomology ring of the Grassmannian G(2,4) of lines in P^3.
//!
//! The ring has six Schubert basis classes. Products above codimension 4
//! vanish, the Poincare pairing is a permutation matrix (so it is its own
//! inverse), and the integrals of triple products are the third partial
//! derivatives of the classical potential
//!
//! ```text
//! f_cl = 1/2 y0 (y4 y0 + ya^2 + yb^2) + 1/2 y1^2 (ya + yb) + y0 y1 y3
//! ```

use std::collections::BTreeMap;
use std::fmt;

/// One of the six Schubert classes spanning `H^*(G(2,4))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisClass {
    /// Fundamental class (unit).
    T0,
    /// Lines meeting a given line.
    T1,
    /// Lines containing a given point.
    Ta,
    /// Lines contained in a given plane.
    Tb,
    /// Lines through a given point inside a given plane.
    T3,
    /// A fixed line (point class of the Grassmannian).
    T4,
}

impl BasisClass {
    pub const ALL: [BasisClass; 6] = [
        BasisClass::T0,
        BasisClass::T1,
        BasisClass::Ta,
        BasisClass::Tb,
        BasisClass::T3,
        BasisClass::T4,
    ];

    /// Position of the class in [`BasisClass::ALL`].
    pub const fn index(self) -> usize {
        self as usize
    }

    /// Complex codimension.
    pub const fn codim(self) -> u32 {
        match self {
            BasisClass::T0 => 0,
            BasisClass::T1 => 1,
            BasisClass::Ta | BasisClass::Tb => 2,
            BasisClass::T3 => 3,
            BasisClass::T4 => 4,
        }
    }

    /// The unique basis class pairing to 1 with `self`.
    pub const fn poincare_dual(self) -> BasisClass {
        match self {
            BasisClass::T0 => BasisClass::T4,
            BasisClass::T1 => BasisClass::T3,
            BasisClass::Ta => BasisClass::Ta,
            BasisClass::Tb => BasisClass::Tb,
            BasisClass::T3 => BasisClass::T1,
            BasisClass::T4 => BasisClass::T0,
        }
    }

    pub const fn label(self) -> &'static str {
        match self {
            BasisClass::T0 => "T0",
            BasisClass::T1 => "T1",
            BasisClass::Ta => "Ta",
            BasisClass::Tb => "Tb",
            BasisClass::T3 => "T3",
            BasisClass::T4 => "T4",
        }
    }

    /// Geometric description of the Schubert cycle.
    pub const fn description(self) -> &'static str {
        match self {
            BasisClass::T0 => "all lines",
            BasisClass::T1 => "lines meeting a given line",
            BasisClass::Ta => "lines containing a given point",
            BasisClass::Tb => "lines contained in a given plane",
            BasisClass::T3 => "lines through a given point inside a given plane",
            BasisClass::T4 => "a fixed line",
        }
    }
}

impl fmt::Display for BasisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Complex codimension of a basis class.
pub fn codim(c: BasisClass) -> u32 {
    c.codim()
}

/// Integer linear combination of basis classes.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct ClassCombination {
    coefficients: BTreeMap<BasisClass, i64>,
}

impl ClassCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(class: BasisClass) -> Self {
        let mut c = Self::zero();
        c.add(class, 1);
        c
    }

    pub fn from_terms(terms: &[(BasisClass, i64)]) -> Self {
        let mut c = Self::zero();
        for &(class, coeff) in terms {
            c.add(class, coeff);
        }
        c
    }

    /// Adds `coeff * class`, dropping entries that cancel to zero.
    pub fn add(&mut self, class: BasisClass, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.coefficients.entry(class).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coefficients.remove(&class);
        }
    }

    pub fn add_scaled(&mut self, other: &ClassCombination, scale: i64) {
        for (&class, &c) in &other.coefficients {
            self.add(class, c * scale);
        }
    }

    pub fn coefficient(&self, class: BasisClass) -> i64 {
        self.coefficients.get(&class).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisClass, i64)> + '_ {
        self.coefficients.iter().map(|(&c, &v)| (c, v))
    }

    /// Common codimension of the terms, `None` for the zero combination.
    pub fn codim(&self) -> Option<u32> {
        let mut it = self.coefficients.keys().map(|c| c.codim());
        let first = it.next()?;
        debug_assert!(it.all(|c| c == first), "inhomogeneous combination");
        Some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.coefficients.keys().map(|c| c.codim());
        match it.next() {
            None => true,
            Some(first) => it.all(|c| c == first),
        }
    }
}

impl fmt::Display for ClassCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (class, c)) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            match c.abs() {
                1 => write!(f, "{class}")?,
                a => write!(f, "{a}·{class}")?,
            }
        }
        Ok(())
    }
}

/// The intersection form `g_ij = ∫ T_i ∪ T_j` and its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingForm {
    g: [[i64; 6]; 6],
    g_inv: [[i64; 6]; 6],
}

impl PairingForm {
    pub fn new() -> Self {
        let mut g = [[0i64; 6]; 6];
        for c in BasisClass::ALL {
            g[c.index()][c.poincare_dual().index()] = 1;
        }
        // permutation matrix of an involution
        let g_inv = g;
        Self { g, g_inv }
    }

    pub fn get(&self, i: BasisClass, j: BasisClass) -> i64 {
        self.g[i.index()][j.index()]
    }

    pub fn inverse(&self, i: BasisClass, j: BasisClass) -> i64 {
        self.g_inv[i.index()][j.index()]
    }

    pub fn matrix(&self) -> &[[i64; 6]; 6] {
        &self.g
    }

    pub fn inverse_matrix(&self) -> &[[i64; 6]; 6] {
        &self.g_inv
    }
}

impl Default for PairingForm {
    fn default() -> Self {
        Self::new()
    }
}

/// `g_ij` on the Schubert basis.
pub fn pairing(i: BasisClass, j: BasisClass) -> i64 {
    i64::from(i.poincare_dual() == j)
}

pub fn poincare_dual(i: BasisClass) -> BasisClass {
    i.poincare_dual()
}

/// Classical cup product expanded in the Schubert basis.
pub fn cup(i: BasisClass, j: BasisClass) -> ClassCombination {
    use BasisClass::*;
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    match (lo, hi) {
        (T0, x) => ClassCombination::single(x),
        (T1, T1) => ClassCombination::from_terms(&[(Ta, 1), (Tb, 1)]),
        (T1, Ta) | (T1, Tb) => ClassCombination::single(T3),
        (T1, T3) | (Ta, Ta) | (Tb, Tb) => ClassCombination::single(T4),
        _ => ClassCombination::zero(),
    }
}

/// Totally symmetric tensor of classical triple intersections, the
/// third partials of the classical potential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalTripleTensor {
    a: [[[i64; 6]; 6]; 6],
}

impl ClassicalTripleTensor {
    /// Builds the tensor from the monomials of the classical potential.
    pub fn from_potential() -> Self {
        use BasisClass::*;
        // (coefficient, variables) for each monomial of f_cl
        let monomials: [(i64, [BasisClass; 3], i64); 6] = [
            // 1/2 y0^2 y4
            (1, [T0, T0, T4], 2),
            // 1/2 y0 ya^2
            (1, [T0, Ta, Ta], 2),
            (1, [T0, Tb, Tb], 2),
            // 1/2 y1^2 ya
            (1, [T1, T1, Ta], 2),
            (1, [T1, T1, Tb], 2),
            // y0 y1 y3
            (1, [T0, T1, T3], 1),
        ];
        let mut a = [[[0i64; 6]; 6]; 6];
        for (num, vars, den) in monomials {
            // third partial of (num/den) * y_u y_v y_w is num/den times the
            // number of orderings of (u,v,w), which is 6 / multiplicities!
            let mut counts = [0i64; 6];
            for v in vars {
                counts[v.index()] += 1;
            }
            let sym: i64 = counts.iter().map(|&c| factorial(c)).product();
            let value = num * sym / den;
            for p in permutations(vars) {
                a[p[0].index()][p[1].index()][p[2].index()] = value;
            }
        }
        Self { a }
    }

    pub fn get(&self, i: BasisClass, j: BasisClass, k: BasisClass) -> i64 {
        self.a[i.index()][j.index()][k.index()]
    }

    /// Nonzero entries with `i <= j <= k`.
    pub fn orbit_representatives(&self) -> Vec<([BasisClass; 3], i64)> {
        let mut out = Vec::new();
        for i in BasisClass::ALL {
            for j in BasisClass::ALL.into_iter().filter(|&j| j >= i) {
                for k in BasisClass::ALL.into_iter().filter(|&k| k >= j) {
                    let v = self.get(i, j, k);
                    if v != 0 {
                        out.push(([i, j, k], v));
                    }
                }
            }
        }
        out
    }
}

impl Default for ClassicalTripleTensor {
    fn default() -> Self {
        Self::from_potential()
    }
}

/// `∫ T_i ∪ T_j ∪ T_k`, computed from the cup product and the pairing.
pub fn triple(i: BasisClass, j: BasisClass, k: BasisClass) -> i64 {
    cup(i, j).iter().map(|(f, c)| c * pairing(f, k)).sum()
}

fn factorial(n: i64) -> i64 {
    (1..=n).product()
}

fn permutations(v: [BasisClass; 3]) -> [[BasisClass; 3]; 6] {
    let [a, b, c] = v;
    [
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ]
}

#[cfg(test)]
mod tests {
    use super::BasisClass::*;
    use super::*;

    #[test]
    fn codimensions() {
        assert_eq!(codim(T0), 0);
        assert_eq!(codim(T1), 1);
        assert_eq!(codim(Ta), 2);
        assert_eq!(codim(Tb), 2);
        assert_eq!(codim(T3), 3);
        assert_eq!(codim(T4), 4);
    }

    #[test]
    fn pairing_entries() {
        assert_eq!(pairing(Ta, Ta), 1);
        assert_eq!(pairing(T1, T3), 1);
        assert_eq!(pairing(Ta, Tb), 0);
        assert_eq!(pairing(T0, T4), 1);
        let form = PairingForm::new();
        let nonzero: usize = form.matrix().iter().flatten().filter(|&&x| x != 0).count();
        // g04, g40, gaa, gbb, g13, g31
        assert_eq!(nonzero, 6);
    }

    #[test]
    fn pairing_is_symmetric_and_self_inverse() {
        let form = PairingForm::new();
        for i in BasisClass::ALL {
            for j in BasisClass::ALL {
                assert_eq!(form.get(i, j), form.get(j, i));
                assert_eq!(form.get(i, j), pairing(i, j));
                let prod: i64 = BasisClass::ALL
                    .iter()
                    .map(|&k| form.get(i, k) * form.inverse(k, j))
                    .sum();
                assert_eq!(prod, i64::from(i == j));
            }
        }
        assert_eq!(form.matrix(), form.inverse_matrix());
    }

    #[test]
    fn duals() {
        assert_eq!(poincare_dual(T0), T4);
        assert_eq!(poincare_dual(Ta), Ta);
        assert_eq!(poincare_dual(T1), T3);
        for c in BasisClass::ALL {
            assert_eq!(c.poincare_dual().poincare_dual(), c);
            assert_eq!(c.codim() + c.poincare_dual().codim(), 4);
        }
    }

    #[test]
    fn cup_examples() {
        assert_eq!(cup(T1, T1), ClassCombination::from_terms(&[(Ta, 1), (Tb, 1)]));
        assert_eq!(cup(T0, T3), ClassCombination::single(T3));
        assert!(cup(Ta, Tb).is_zero());
        assert_eq!(cup(T1, Ta), ClassCombination::single(T3));
        assert_eq!(cup(Tb, T1), ClassCombination::single(T3));
        assert_eq!(cup(T3, T1), ClassCombination::single(T4));
        assert!(cup(T3, Ta).is_zero());
        assert!(cup(T4, T1).is_zero());
    }

    #[test]
    fn cup_is_graded() {
        for i in BasisClass::ALL {
            for j in BasisClass::ALL {
                let p = cup(i, j);
                assert!(p.is_homogeneous());
                if let Some(c) = p.codim() {
                    assert_eq!(c, i.codim() + j.codim());
                } else {
                    assert!(i.codim() + j.codim() > 4 || (i, j) == (Ta, Tb) || (i, j) == (Tb, Ta));
                }
            }
        }
    }

    fn cup_comb(x: &ClassCombination, y: &ClassCombination) -> ClassCombination {
        let mut out = ClassCombination::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&cup(a, b), ca * cb);
            }
        }
        out
    }

    #[test]
    fn cup_commutative_and_associative() {
        for i in BasisClass::ALL {
            for j in BasisClass::ALL {
                assert_eq!(cup(i, j), cup(j, i));
                for k in BasisClass::ALL {
                    let left = cup_comb(&cup(i, j), &ClassCombination::single(k));
                    let right = cup_comb(&ClassCombination::single(i), &cup(j, k));
                    assert_eq!(left, right, "({i}{j}){k} vs {i}({j}{k})");
                }
            }
        }
    }

    #[test]
    fn triple_examples() {
        assert_eq!(triple(T1, T1, Ta), 1);
        assert_eq!(triple(T0, T0, T4), 1);
        assert_eq!(triple(T1, Ta, Tb), 0);
    }

    #[test]
    fn tensor_matches_ring_on_all_triples() {
        let tensor = ClassicalTripleTensor::from_potential();
        for i in BasisClass::ALL {
            for j in BasisClass::ALL {
                for k in BasisClass::ALL {
                    let v = tensor.get(i, j, k);
                    assert_eq!(v, triple(i, j, k), "A({i},{j},{k})");
                    if i.codim() + j.codim() + k.codim() != 4 {
                        assert_eq!(v, 0);
                    }
                    assert_eq!(v, tensor.get(j, k, i));
                    assert_eq!(v, tensor.get(k, j, i));
                }
            }
        }
    }

    #[test]
    fn tensor_orbit_representatives() {
        let reps = ClassicalTripleTensor::from_potential().orbit_representatives();
        let expected = vec![
            ([T0, T0, T4], 1),
            ([T0, T1, T3], 1),
            ([T0, Ta, Ta], 1),
            ([T0, Tb, Tb], 1),
            ([T1, T1, Ta], 1),
            ([T1, T1, Tb], 1),
        ];
        assert_eq!(reps, expected);
    }

    #[test]
    fn combination_display() {
        assert_eq!(cup(T1, T1).to_string(), "Ta + Tb");
        assert_eq!(ClassCombination::zero().to_string(), "0");
        assert_eq!(ClassCombination::from_terms(&[(T3, 2), (T4, -1)]).to_string(), "2·T3 - T4");
    }
}
