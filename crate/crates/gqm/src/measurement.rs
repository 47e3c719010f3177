//! Measurement rule: the 0/1 absolute value on brackets, observables as
//! outcome-labeled dual bases, outcome probabilities, expectations, and
//! eigenstate detection.
//!
//! The probability of outcome `<x|` on state `|psi>` under an observable is
//! `|<x|psi>|^2 / sum_y |<y|psi>|^2` with the sum over the observable's dual
//! basis. Because the absolute value is 0 or 1, every probability is an exact
//! rational with denominator at most the dimension, and all outcomes with
//! nonzero bracket carry equal weight.

use std::sync::Arc;

use crate::gf::{FieldCtx, FieldElement};
use crate::projective::{bra, is_dual_basis, bracket, DualVector, ProjVector, SpinIndex};
use crate::rat::{rat, Rat};
use crate::{Error, Result};

/// Result of the absolute-value map: zero or one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AbsValue {
    Zero,
    One,
}

impl AbsValue {
    pub fn as_u8(self) -> u8 {
        match self {
            AbsValue::Zero => 0,
            AbsValue::One => 1,
        }
    }

    pub fn as_rat(self) -> Rat {
        rat(self.as_u8() as i64)
    }
}

/// `|k|`: 0 for the zero element, 1 otherwise. The only assignment consistent
/// with `|kl| = |k||l|` on a cyclic multiplicative group.
pub fn abs_map(k: &FieldElement) -> AbsValue {
    if k.is_zero() {
        AbsValue::Zero
    } else {
        AbsValue::One
    }
}

/// An observable: an ordered dual basis with a distinct rational outcome
/// value attached to each dual vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Observable {
    ctx: Arc<FieldCtx>,
    outcomes: Vec<(DualVector, Rat)>,
    name: String,
}

impl std::fmt::Debug for Observable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Observable({})", self.name)
    }
}

impl Observable {
    /// Build an observable, validating that the duals form a basis and the
    /// outcome values are pairwise distinct.
    pub fn new(outcomes: Vec<(DualVector, Rat)>, name: impl Into<String>) -> Result<Observable> {
        let duals: Vec<DualVector> = outcomes.iter().map(|(d, _)| d.clone()).collect();
        if !is_dual_basis(&duals)? {
            return Err(Error::BadBasis("dual vectors are linearly dependent"));
        }
        for (i, (_, v)) in outcomes.iter().enumerate() {
            if outcomes[i + 1..].iter().any(|(_, w)| w == v) {
                return Err(Error::DuplicateOutcomeValue);
            }
        }
        let ctx = Arc::clone(outcomes[0].0.ctx());
        Ok(Observable { ctx, outcomes, name: name.into() })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn outcomes(&self) -> &[(DualVector, Rat)] {
        &self.outcomes
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// True for a two-outcome observable valued +1/-1 in that order.
    pub fn is_spin_like(&self) -> bool {
        self.outcomes.len() == 2 && self.outcomes[0].1 == rat(1) && self.outcomes[1].1 == rat(-1)
    }

    /// Brackets of every outcome dual against a state, in outcome order.
    fn brackets(&self, psi: &ProjVector) -> Result<Vec<AbsValue>> {
        self.outcomes
            .iter()
            .map(|(x, _)| Ok(abs_map(&bracket(x, psi)?)))
            .collect()
    }
}

/// The spin observable `A_rs = { <r|: +1, <s|: -1 }`, `r != s`.
/// Swapping the indices flips every outcome: `A_sr = -A_rs`.
pub fn spin_observable(r: SpinIndex, s: SpinIndex, ctx: &Arc<FieldCtx>) -> Result<Observable> {
    if r.0 == s.0 {
        return Err(Error::DegenerateObservable);
    }
    Observable::new(
        vec![(bra(r, ctx)?, rat(1)), (bra(s, ctx)?, rat(-1))],
        format!("A({},{})", r.0, s.0),
    )
}

/// Probability of the outcome represented by `x` when measuring `obs` on
/// `psi`. `x` must be one of the observable's duals, compared entrywise.
pub fn probability(x: &DualVector, obs: &Observable, psi: &ProjVector) -> Result<Rat> {
    let pos = obs
        .outcomes
        .iter()
        .position(|(d, _)| d == x)
        .ok_or(Error::OutcomeNotInObservable)?;
    let brackets = obs.brackets(psi)?;
    let denom: i64 = brackets.iter().map(|b| b.as_u8() as i64).sum();
    if denom == 0 {
        // A basis spans the dual space, so some bracket is nonzero.
        return Err(Error::InternalInvariantViolation("all basis brackets vanished"));
    }
    Ok(Rat::new((brackets[pos].as_u8() as i64).into(), denom.into()))
}

/// Expectation value: the probability-weighted sum of outcome values.
pub fn expectation(obs: &Observable, psi: &ProjVector) -> Result<Rat> {
    let brackets = obs.brackets(psi)?;
    let denom: i64 = brackets.iter().map(|b| b.as_u8() as i64).sum();
    if denom == 0 {
        return Err(Error::InternalInvariantViolation("all basis brackets vanished"));
    }
    let mut acc = rat(0);
    for ((_, value), b) in obs.outcomes.iter().zip(&brackets) {
        acc += value * Rat::new((b.as_u8() as i64).into(), denom.into());
    }
    Ok(acc)
}

/// The states among `states` on which exactly one outcome of `obs` has
/// probability 1, paired with that outcome's value.
pub fn eigenstates(
    obs: &Observable,
    states: &[ProjVector],
) -> Result<Vec<(ProjVector, Rat)>> {
    let mut out = Vec::new();
    for psi in states {
        let brackets = obs.brackets(psi)?;
        let nonzero: Vec<usize> = brackets
            .iter()
            .enumerate()
            .filter(|(_, b)| **b == AbsValue::One)
            .map(|(i, _)| i)
            .collect();
        if let [only] = nonzero[..] {
            out.push((psi.clone(), obs.outcomes[only].1.clone()));
        }
    }
    Ok(out)
}
