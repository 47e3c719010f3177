//! The `q = 1` limit: a multiplication-only monoid `{0, 1}`, "vector" spaces
//! over it whose only nonzero vectors are scaled basis vectors, permutation
//! automorphisms, the N-point degenerate projective geometry, and the
//! classical one- and two-spin models.
//!
//! Addition of two nonzero monoid elements is not defined; attempting it is
//! the typed error [`crate::Error::AdditionForbidden`], which is exactly what
//! makes superposition impossible in these models. The geometry and counting
//! facts are cross-checked against the formal `q -> 1` limits of the q-analog
//! module by [`q1_consistency_report`].

use num_traits::ToPrimitive;

use crate::qcount::{gaussian_binomial, q_factorial, q_int};
use crate::rat::{rat, Rat};
use crate::{Error, Result};

/// An element of the multiplication-only monoid: zero or one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum F1Element {
    Zero,
    One,
}

/// Monoid multiplication: `1*1 = 1`, anything with zero is zero.
pub fn mul_f1(a: F1Element, b: F1Element) -> F1Element {
    match (a, b) {
        (F1Element::One, F1Element::One) => F1Element::One,
        _ => F1Element::Zero,
    }
}

/// Only addition of zero is allowed; `1 + 1` is a first-class error.
pub fn add_f1(a: F1Element, b: F1Element) -> Result<F1Element> {
    match (a, b) {
        (F1Element::Zero, x) | (x, F1Element::Zero) => Ok(x),
        (F1Element::One, F1Element::One) => Err(Error::AdditionForbidden),
    }
}

/// A vector with at most one unit entry: a basis vector `e_i` or zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F1Vector {
    dim: usize,
    support: Option<usize>,
}

/// A dual vector (row functional) with the same single-entry constraint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F1DualVector {
    dim: usize,
    support: Option<usize>,
}

impl F1Vector {
    pub fn basis(dim: usize, i: usize) -> Result<F1Vector> {
        if i >= dim {
            return Err(Error::BadIndex { index: i as u64, max: dim as u64 - 1 });
        }
        Ok(F1Vector { dim, support: Some(i) })
    }

    pub fn zero(dim: usize) -> F1Vector {
        F1Vector { dim, support: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> Option<usize> {
        self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_none()
    }

    /// Componentwise sum. Adding two nonzero vectors always fails: equal
    /// supports hit the scalar `1 + 1`, distinct supports would superpose
    /// basis vectors.
    pub fn add(&self, other: &F1Vector) -> Result<F1Vector> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.dim, other.dim)));
        }
        match (self.support, other.support) {
            (None, _) => Ok(other.clone()),
            (_, None) => Ok(self.clone()),
            (Some(_), Some(_)) => Err(Error::AdditionForbidden),
        }
    }

    pub fn entry(&self, i: usize) -> F1Element {
        if self.support == Some(i) {
            F1Element::One
        } else {
            F1Element::Zero
        }
    }
}

impl F1DualVector {
    pub fn basis(dim: usize, i: usize) -> Result<F1DualVector> {
        if i >= dim {
            return Err(Error::BadIndex { index: i as u64, max: dim as u64 - 1 });
        }
        Ok(F1DualVector { dim, support: Some(i) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> Option<usize> {
        self.support
    }
}

/// `<x|v>` in the monoid: one exactly when the supports coincide. The sum
/// defining the pairing has at most one nonzero term, so no forbidden
/// addition can occur.
pub fn bracket_f1(x: &F1DualVector, v: &F1Vector) -> Result<F1Element> {
    if x.dim != v.dim {
        return Err(Error::ShapeMismatch(format!("{} vs {}", x.dim, v.dim)));
    }
    match (x.support, v.support) {
        (Some(i), Some(j)) if i == j => Ok(F1Element::One),
        _ => Ok(F1Element::Zero),
    }
}

/// A linear map with at most one unit entry per row; row `i` records the
/// image of basis vector `e_i` (empty row sends it to zero). This is the
/// largest class of maps that can never force an addition of basis vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F1Matrix {
    dim: usize,
    rows: Vec<Option<usize>>,
}

impl F1Matrix {
    pub fn new(rows: Vec<Option<usize>>) -> Result<F1Matrix> {
        let dim = rows.len();
        for r in rows.iter().flatten() {
            if *r >= dim {
                return Err(Error::BadIndex { index: *r as u64, max: dim as u64 - 1 });
            }
        }
        Ok(F1Matrix { dim, rows })
    }

    pub fn identity(dim: usize) -> F1Matrix {
        F1Matrix { dim, rows: (0..dim).map(Some).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Option<usize>] {
        &self.rows
    }

    /// Nonsingular maps have exactly one unit per row and per column: the
    /// basis permutations.
    pub fn is_automorphism(&self) -> bool {
        let mut seen = vec![false; self.dim];
        for r in &self.rows {
            match r {
                Some(i) if !seen[*i] => seen[*i] = true,
                _ => return false,
            }
        }
        true
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &F1Matrix) -> Result<F1Matrix> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.dim, other.dim)));
        }
        let rows = self.rows.iter().map(|r| r.and_then(|i| other.rows[i])).collect();
        Ok(F1Matrix { dim: self.dim, rows })
    }

    /// Inverse permutation, when this map is an automorphism.
    pub fn inverse(&self) -> Option<F1Matrix> {
        if !self.is_automorphism() {
            return None;
        }
        let mut rows = vec![None; self.dim];
        for (i, r) in self.rows.iter().enumerate() {
            rows[r.unwrap()] = Some(i);
        }
        Some(F1Matrix { dim: self.dim, rows })
    }
}

/// Apply a map to a vector. The result always has at most one nonzero entry,
/// so this cannot raise [`crate::Error::AdditionForbidden`].
pub fn f1_apply(m: &F1Matrix, v: &F1Vector) -> Result<F1Vector> {
    if m.dim != v.dim {
        return Err(Error::ShapeMismatch(format!("{} vs {}", m.dim, v.dim)));
    }
    let support = v.support.and_then(|i| m.rows[i]);
    Ok(F1Vector { dim: v.dim, support })
}

/// Cap on `N!` enumeration.
pub const MAX_AUTOMORPHISM_DIM: usize = 9;

/// All `N!` automorphisms of the N-dimensional space, i.e. the permutation
/// matrices, in lexicographic order of their image tuples.
pub fn f1_automorphisms(n: usize) -> Result<Vec<F1Matrix>> {
    if n > MAX_AUTOMORPHISM_DIM {
        return Err(Error::TooLarge(format!("{n}! permutations exceed the enumeration cap")));
    }
    let mut out = Vec::new();
    let mut images: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, images: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<F1Matrix>) {
        if images.len() == n {
            out.push(F1Matrix { dim: n, rows: images.iter().copied().map(Some).collect() });
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                images.push(i);
                rec(n, images, used, out);
                images.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut images, &mut used, &mut out);
    Ok(out)
}

/// The N-point degenerate geometry: subsets of size `k + 1` are the
/// k-dimensional subspaces.
#[derive(Clone, Debug)]
pub struct F1Geometry {
    pub points: usize,
    /// `subspaces[k]` lists every k-dimensional subspace as a sorted subset.
    pub subspaces: Vec<Vec<Vec<usize>>>,
}

/// Build the geometry on `N` points.
pub fn pg_n_1(n: usize) -> Result<F1Geometry> {
    if n < 1 {
        return Err(Error::InvalidArgs("the geometry needs at least one point".into()));
    }
    let mut subspaces = Vec::with_capacity(n);
    for k in 0..n {
        subspaces.push(subsets_of_size(n, k + 1));
    }
    Ok(F1Geometry { points: n, subspaces })
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(n: usize, size: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, size, i + 1, current, out);
            current.pop();
        }
    }
    rec(n, size, 0, &mut current, &mut out);
    out
}

/// A classical observable: duals with distinct rational outcome values.
#[derive(Clone, Debug)]
pub struct Q1Observable {
    pub name: String,
    pub outcomes: Vec<(F1DualVector, Rat)>,
}

impl Q1Observable {
    /// Outcome probabilities on a state, in outcome order. Nonzero brackets
    /// share the weight equally, exactly as in the field-based models.
    pub fn distribution(&self, state: &F1Vector) -> Result<Vec<Rat>> {
        let brackets: Vec<u8> = self
            .outcomes
            .iter()
            .map(|(x, _)| bracket_f1(x, state).map(|b| (b == F1Element::One) as u8))
            .collect::<Result<_>>()?;
        let denom: i64 = brackets.iter().map(|&b| b as i64).sum();
        if denom == 0 {
            return Err(Error::InternalInvariantViolation("no outcome bracket fired"));
        }
        Ok(brackets.iter().map(|&b| Rat::new((b as i64).into(), denom.into())).collect())
    }

    pub fn expectation(&self, state: &F1Vector) -> Result<Rat> {
        let dist = self.distribution(state)?;
        Ok(self
            .outcomes
            .iter()
            .zip(dist)
            .map(|((_, v), p)| v * p)
            .sum())
    }

    /// True when exactly one outcome has probability one on this state.
    pub fn is_eigenstate(&self, state: &F1Vector) -> Result<bool> {
        let dist = self.distribution(state)?;
        Ok(dist.iter().filter(|p| **p == rat(1)).count() == 1)
    }
}

/// The classical one-spin model: two states, one observable, no
/// superposition.
#[derive(Clone, Debug)]
pub struct Q1SpinModel {
    /// `("up", e_0)` and `("down", e_1)`.
    pub states: Vec<(&'static str, F1Vector)>,
    /// The sole observable `A = { <up|: +1, <down|: -1 }`.
    pub observable: Q1Observable,
}

pub fn q1_spin_model() -> Q1SpinModel {
    let up = F1Vector::basis(2, 0).expect("dim 2");
    let down = F1Vector::basis(2, 1).expect("dim 2");
    // <up| = [1 0] pairs with |up>; <down| = [0 1] with |down>.
    let bra_up = F1DualVector::basis(2, 0).expect("dim 2");
    let bra_down = F1DualVector::basis(2, 1).expect("dim 2");
    Q1SpinModel {
        states: vec![("up", up), ("down", down)],
        observable: Q1Observable {
            name: "A".into(),
            outcomes: vec![(bra_up, rat(1)), (bra_down, rat(-1))],
        },
    }
}

impl Q1SpinModel {
    /// Try to superpose the two basis states; always the typed error.
    pub fn attempt_superposition(&self) -> Result<F1Vector> {
        self.states[0].1.add(&self.states[1].1)
    }
}

/// The classical two-spin model: the four product states and the sole
/// product observable `AA`.
#[derive(Clone, Debug)]
pub struct Q1TwoSpinModel {
    /// Product states in `index = 2i + j` order: up-up, up-down, down-up,
    /// down-down.
    pub states: Vec<(&'static str, F1Vector)>,
    /// `AA` with outcome values (+1,+1), (+1,-1), (-1,+1), (-1,-1) encoded as
    /// the product value and the pair label.
    pub observable: Q1Observable,
    /// Outcome pairs aligned with the observable's outcomes.
    pub outcome_pairs: Vec<(i64, i64)>,
}

pub fn q1_two_spin_model() -> Q1TwoSpinModel {
    let names = ["up-up", "up-down", "down-up", "down-down"];
    let states = names
        .iter()
        .enumerate()
        .map(|(i, name)| (*name, F1Vector::basis(4, i).expect("dim 4")))
        .collect();
    let pairs = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
    let outcomes = pairs
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| {
            (F1DualVector::basis(4, i).expect("dim 4"), rat(x * y))
        })
        .collect::<Vec<_>>();
    // Outcome VALUES of AA coincide pairwise (+1*+1 = -1*-1); distinguish the
    // four outcomes by slot, keeping the product value alongside the pair.
    Q1TwoSpinModel {
        states,
        observable: Q1Observable { name: "AA".into(), outcomes },
        outcome_pairs: pairs.to_vec(),
    }
}

impl Q1TwoSpinModel {
    /// The outcome pair obtained with certainty on a state.
    pub fn definite_outcome(&self, state: &F1Vector) -> Result<(i64, i64)> {
        let dist = self.observable.distribution(state)?;
        let pos = dist
            .iter()
            .position(|p| *p == rat(1))
            .ok_or(Error::InternalInvariantViolation("two-spin state not an eigenstate"))?;
        Ok(self.outcome_pairs[pos])
    }

    /// The CHSH combination collapses to `2 <AA>` because each side has a
    /// single observable; its maximum magnitude over the four states.
    pub fn chsh_bound(&self) -> Result<Rat> {
        let mut best = rat(0);
        for (_, state) in &self.states {
            let (x, y) = self.definite_outcome(state)?;
            let v = rat(2 * x * y);
            let v = if v < rat(0) { -v } else { v };
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }
}

/// One line of the consistency report.
#[derive(Clone, Debug)]
pub struct ConsistencyLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Cross-check the monoid constructions against the formal `q -> 1` limits
/// of the q-analog formulas.
pub fn q1_consistency_report(n: usize) -> Result<Vec<ConsistencyLine>> {
    if n < 2 {
        return Err(Error::InvalidArgs("consistency report needs N >= 2".into()));
    }
    let mut lines = Vec::new();
    let geometry = pg_n_1(n)?;

    let expected_points = q_int(n as u64, 1).to_usize().unwrap();
    lines.push(ConsistencyLine {
        name: format!("points(N={n})"),
        pass: geometry.points == expected_points,
        detail: format!("{} points vs [N]_1 = {expected_points}", geometry.points),
    });

    let autos = f1_automorphisms(n)?;
    let expected_order = q_factorial(n as u64, 1).to_usize().unwrap();
    lines.push(ConsistencyLine {
        name: format!("automorphisms(N={n})"),
        pass: autos.len() == expected_order && autos.iter().all(|m| m.is_automorphism()),
        detail: format!("{} permutation maps vs [N]_1! = {expected_order}", autos.len()),
    });

    let mut subspace_ok = true;
    let mut detail = Vec::new();
    for (k, subs) in geometry.subspaces.iter().enumerate() {
        let expected = gaussian_binomial(n as u64, k as u64 + 1, 1)?;
        let got = crate::qcount::QInt::from(subs.len() as u64);
        if got != expected {
            subspace_ok = false;
        }
        detail.push(format!("k={k}: {got}"));
        for s in subs {
            if s.len() != k + 1 {
                subspace_ok = false;
            }
        }
    }
    lines.push(ConsistencyLine {
        name: format!("subspace-counts(N={n})"),
        pass: subspace_ok,
        detail: detail.join(", "),
    });

    if n == 2 {
        let spin = q1_spin_model();
        let ok = spin.states.len() == 2
            && spin
                .states
                .iter()
                .all(|(_, s)| spin.observable.is_eigenstate(s).unwrap_or(false))
            && spin.attempt_superposition() == Err(Error::AdditionForbidden);
        lines.push(ConsistencyLine {
            name: "spin-model(q=1)".into(),
            pass: ok,
            detail: "2 states, both definite, superposition forbidden".into(),
        });
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn monoid_tables() {
        use F1Element::{One, Zero};
        assert_eq!(mul_f1(One, One), One);
        assert_eq!(mul_f1(Zero, One), Zero);
        assert_eq!(mul_f1(One, Zero), Zero);
        assert_eq!(mul_f1(Zero, Zero), Zero);
        assert_eq!(add_f1(Zero, One).unwrap(), One);
        assert_eq!(add_f1(One, Zero).unwrap(), One);
        assert_eq!(add_f1(Zero, Zero).unwrap(), Zero);
        assert_eq!(add_f1(One, One).unwrap_err(), Error::AdditionForbidden);
    }

    #[test]
    fn vector_addition_rules() {
        let e0 = F1Vector::basis(3, 0).unwrap();
        let e1 = F1Vector::basis(3, 1).unwrap();
        let z = F1Vector::zero(3);
        assert_eq!(z.add(&e0).unwrap(), e0);
        assert_eq!(e0.add(&z).unwrap(), e0);
        assert_eq!(e0.add(&e1).unwrap_err(), Error::AdditionForbidden);
        assert_eq!(e0.add(&e0).unwrap_err(), Error::AdditionForbidden);
    }

    #[test]
    fn apply_examples() {
        let e1 = F1Vector::basis(3, 1).unwrap();
        let id = F1Matrix::identity(3);
        assert_eq!(f1_apply(&id, &e1).unwrap(), e1);

        let swap01 = F1Matrix::new(vec![Some(1), Some(0), Some(2)]).unwrap();
        let e0 = F1Vector::basis(3, 0).unwrap();
        assert_eq!(f1_apply(&swap01, &e0).unwrap(), e1);

        let deficient = F1Matrix::new(vec![Some(1), None, Some(2)]).unwrap();
        assert!(f1_apply(&deficient, &e1).unwrap().is_zero());
        assert!(!deficient.is_automorphism());
    }

    #[test]
    fn automorphism_group_structure() {
        for n in 1..=6usize {
            let autos = f1_automorphisms(n).unwrap();
            let expected: usize = (1..=n).product();
            assert_eq!(autos.len(), expected);
            let id = F1Matrix::identity(n);
            assert!(autos.contains(&id));
            for a in &autos {
                assert!(a.is_automorphism());
                let inv = a.inverse().unwrap();
                assert!(autos.contains(&inv));
                assert_eq!(a.compose(&inv).unwrap(), id);
            }
            // closure: spot-check all pairs for n <= 4, sampled diagonals above
            if n <= 4 {
                for a in &autos {
                    for b in &autos {
                        assert!(autos.contains(&a.compose(b).unwrap()));
                    }
                }
            }
        }
        assert!(f1_automorphisms(MAX_AUTOMORPHISM_DIM + 1).is_err());
    }

    #[test]
    fn geometry_on_three_points() {
        let g = pg_n_1(3).unwrap();
        assert_eq!(g.points, 3);
        assert_eq!(g.subspaces[0], vec![vec![0], vec![1], vec![2]]);
        assert_eq!(g.subspaces[1], vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(g.subspaces[2], vec![vec![0, 1, 2]]);

        let g2 = pg_n_1(2).unwrap();
        assert_eq!(g2.points, 2);
        assert_eq!(g2.subspaces[1].len(), 1);
    }

    #[test]
    fn subspace_counts_match_binomials() {
        for n in 1..=6usize {
            let g = pg_n_1(n).unwrap();
            for (k, subs) in g.subspaces.iter().enumerate() {
                let expected = gaussian_binomial(n as u64, k as u64 + 1, 1).unwrap();
                assert_eq!(crate::qcount::QInt::from(subs.len() as u64), expected);
            }
        }
    }

    #[test]
    fn spin_model_is_classical() {
        let m = q1_spin_model();
        let up = &m.states[0].1;
        let down = &m.states[1].1;
        assert_eq!(m.observable.expectation(up).unwrap(), rat(1));
        assert_eq!(m.observable.expectation(down).unwrap(), rat(-1));
        assert!(m.observable.is_eigenstate(up).unwrap());
        assert!(m.observable.is_eigenstate(down).unwrap());
        assert_eq!(m.attempt_superposition().unwrap_err(), Error::AdditionForbidden);
    }

    #[test]
    fn two_spin_model_is_classical() {
        let m = q1_two_spin_model();
        assert_eq!(m.states.len(), 4);
        for (_, state) in &m.states {
            assert!(m.observable.is_eigenstate(state).unwrap());
        }
        // up-down measures (+, -) with certainty
        assert_eq!(m.definite_outcome(&m.states[1].1).unwrap(), (1, -1));
        assert_eq!(m.chsh_bound().unwrap(), rat(2));
    }

    #[test]
    fn consistency_report_passes() {
        for n in 2..=6usize {
            let lines = q1_consistency_report(n).unwrap();
            assert!(!lines.is_empty());
            for line in lines {
                assert!(line.pass, "check {} failed: {}", line.name, line.detail);
            }
        }
        assert!(q1_consistency_report(1).is_err());
    }

    proptest! {
        /// No expressible vector ever has more than one nonzero entry, and
        /// applying any row-constrained map preserves that.
        #[test]
        fn apply_never_superposes(
            dim in 1usize..6,
            rows in proptest::collection::vec(proptest::option::of(0usize..6), 1..6),
            support in proptest::option::of(0usize..6),
        ) {
            let rows: Vec<Option<usize>> =
                rows.iter().take(dim).map(|r| r.filter(|i| i < &dim)).collect();
            if rows.len() != dim {
                return Ok(());
            }
            let m = F1Matrix::new(rows).unwrap();
            let v = match support.filter(|i| i < &dim) {
                Some(i) => F1Vector::basis(dim, i).unwrap(),
                None => F1Vector::zero(dim),
            };
            let out = f1_apply(&m, &v).unwrap();
            let nonzero = (0..dim).filter(|&i| out.entry(i) == F1Element::One).count();
            prop_assert!(nonzero <= 1);
        }

        /// Composition of permutation maps is associative and stays within
        /// the automorphisms.
        #[test]
        fn composition_associates(a in 0usize..24, b in 0usize..24, c in 0usize..24) {
            let autos = f1_automorphisms(4).unwrap();
            let (a, b, c) = (&autos[a], &autos[b], &autos[c]);
            let lhs = a.compose(b).unwrap().compose(c).unwrap();
            let rhs = a.compose(&b.compose(c).unwrap()).unwrap();
            prop_assert_eq!(lhs.clone(), rhs);
            prop_assert!(autos.contains(&lhs));
        }
    }
}
