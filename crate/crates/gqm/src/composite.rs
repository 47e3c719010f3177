//! Two-particle systems on `GF(q)^2 (x) GF(q)^2 = GF(q)^4`: tensor products,
//! the product/entangled split, the singlet state, product observables,
//! joint probability tables, and CHSH correlator sweeps.
//!
//! Tensor components are ordered as `index = 2*i + j` for `|i> (x) |j>`.
//! A four-vector is a product state exactly when the determinant of its 2x2
//! reshape vanishes: `psi0*psi3 - psi1*psi2 = 0`.

use std::sync::Arc;

use crate::gf::{FieldCtx, FieldElement};
use crate::measurement::{abs_map, spin_observable, AbsValue, Observable};
use crate::projective::{bracket, enumerate_points, ket, DualVector, ProjVector, SpinIndex};
use crate::rat::{rat, Rat};
use crate::{Error, Result};

/// A state of the two-spin system with its entanglement classification
/// cached at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoSpinState {
    vector: ProjVector,
    entangled: bool,
}

impl TwoSpinState {
    /// Wrap a four-dimensional vector, classifying it.
    pub fn new(vector: ProjVector) -> Result<TwoSpinState> {
        if vector.dim() != 4 {
            return Err(Error::ShapeMismatch(format!(
                "two-spin states are four-dimensional, got {}",
                vector.dim()
            )));
        }
        let ctx = Arc::clone(vector.ctx());
        let e = vector.entries();
        let ad = ctx.mul(&e[0], &e[3])?;
        let bc = ctx.mul(&e[1], &e[2])?;
        let entangled = !ctx.sub(&ad, &bc)?.is_zero();
        Ok(TwoSpinState { vector, entangled })
    }

    pub fn vector(&self) -> &ProjVector {
        &self.vector
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.vector.ctx()
    }

    pub fn is_entangled(&self) -> bool {
        self.entangled
    }
}

/// Kronecker product of two states, canonicalized; always a product state.
pub fn tensor_ket(u: &ProjVector, v: &ProjVector) -> Result<TwoSpinState> {
    let entries = tensor_entries(u.ctx(), v.ctx(), u.entries(), v.entries())?;
    TwoSpinState::new(ProjVector::new(u.ctx(), entries)?.canonicalize())
}

/// Kronecker product of two dual vectors, kept in written (uncanonicalized)
/// form.
pub fn tensor_bra(x: &DualVector, y: &DualVector) -> Result<DualVector> {
    let entries = tensor_entries(x.ctx(), y.ctx(), x.entries(), y.entries())?;
    DualVector::new(x.ctx(), entries)
}

fn tensor_entries(
    actx: &Arc<FieldCtx>,
    bctx: &Arc<FieldCtx>,
    a: &[FieldElement],
    b: &[FieldElement],
) -> Result<Vec<FieldElement>> {
    if actx != bctx || a.len() != 2 || b.len() != 2 {
        return Err(Error::FieldMismatch);
    }
    let mut entries = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            entries.push(actx.mul(&a[i], &b[j])?);
        }
    }
    Ok(entries)
}

/// All inequivalent two-spin states, partitioned into product and entangled.
pub struct TwoSpinCensus {
    pub all: Vec<TwoSpinState>,
    pub product: Vec<TwoSpinState>,
    pub entangled: Vec<TwoSpinState>,
}

/// Enumerate `PG(3, q)` and classify every point. The counts obey
/// `|all| = q^3+q^2+q+1`, `|product| = (q+1)^2`, `|entangled| = q(q^2-1)`.
pub fn enumerate_two_spin_states(ctx: &Arc<FieldCtx>) -> Result<TwoSpinCensus> {
    let all: Vec<TwoSpinState> = enumerate_points(4, ctx)
        .into_iter()
        .map(TwoSpinState::new)
        .collect::<Result<_>>()?;
    let product = all.iter().filter(|s| !s.is_entangled()).cloned().collect();
    let entangled = all.iter().filter(|s| s.is_entangled()).cloned().collect();
    Ok(TwoSpinCensus { all, product, entangled })
}

/// The singlet analog `|S> = |r>(x)|s> - |s>(x)|r>`, `r != s`; the minus sign
/// turns into a plus automatically in characteristic two. Entangled for every
/// `q`, and projectively independent of the choice of `r, s`.
pub fn singlet(r: SpinIndex, s: SpinIndex, ctx: &Arc<FieldCtx>) -> Result<TwoSpinState> {
    if r.0 == s.0 {
        return Err(Error::DegenerateSinglet);
    }
    let kr = ket(r, ctx)?;
    let ks = ket(s, ctx)?;
    let mut entries = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            let fwd = ctx.mul(&kr.entries()[i], &ks.entries()[j])?;
            let bwd = ctx.mul(&ks.entries()[i], &kr.entries()[j])?;
            entries.push(ctx.sub(&fwd, &bwd)?);
        }
    }
    TwoSpinState::new(ProjVector::new(ctx, entries)?)
}

/// `|(<r| (x) <s|) |S>| = 1 - delta_rs`, the bracket identity behind the
/// correlation table.
pub fn singlet_bracket_rule(r: SpinIndex, s: SpinIndex, ctx: &Arc<FieldCtx>) -> Result<AbsValue> {
    let state = singlet(SpinIndex(0), SpinIndex(1), ctx)?;
    let dual = tensor_bra(&crate::projective::bra(r, ctx)?, &crate::projective::bra(s, ctx)?)?;
    Ok(abs_map(&bracket(&dual, state.vector())?))
}

/// Joint outcome labels for a product observable, in table order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutcomePair {
    PlusPlus,
    PlusMinus,
    MinusPlus,
    MinusMinus,
}

impl OutcomePair {
    pub const ALL: [OutcomePair; 4] =
        [OutcomePair::PlusPlus, OutcomePair::PlusMinus, OutcomePair::MinusPlus, OutcomePair::MinusMinus];

    pub fn index(self) -> usize {
        match self {
            OutcomePair::PlusPlus => 0,
            OutcomePair::PlusMinus => 1,
            OutcomePair::MinusPlus => 2,
            OutcomePair::MinusMinus => 3,
        }
    }

    /// The two +-1 outcome values.
    pub fn signs(self) -> (i64, i64) {
        match self {
            OutcomePair::PlusPlus => (1, 1),
            OutcomePair::PlusMinus => (1, -1),
            OutcomePair::MinusPlus => (-1, 1),
            OutcomePair::MinusMinus => (-1, -1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OutcomePair::PlusPlus => "++",
            OutcomePair::PlusMinus => "+-",
            OutcomePair::MinusPlus => "-+",
            OutcomePair::MinusMinus => "--",
        }
    }
}

/// Product of two spin observables: the four tensor duals represent the
/// outcomes `++`, `+-`, `-+`, `--` in that order.
#[derive(Clone, Debug)]
pub struct ProductObservable {
    ctx: Arc<FieldCtx>,
    duals: [DualVector; 4],
    name: String,
}

impl ProductObservable {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn duals(&self) -> &[DualVector; 4] {
        &self.duals
    }
}

/// Build `A (x) B` from two spin observables.
pub fn product_observable(a: &Observable, b: &Observable) -> Result<ProductObservable> {
    if !a.is_spin_like() || !b.is_spin_like() {
        return Err(Error::BadObservable);
    }
    if a.ctx() != b.ctx() {
        return Err(Error::FieldMismatch);
    }
    let (ap, am) = (&a.outcomes()[0].0, &a.outcomes()[1].0);
    let (bp, bm) = (&b.outcomes()[0].0, &b.outcomes()[1].0);
    let duals = [
        tensor_bra(ap, bp)?,
        tensor_bra(ap, bm)?,
        tensor_bra(am, bp)?,
        tensor_bra(am, bm)?,
    ];
    if !crate::projective::is_dual_basis(&duals)? {
        return Err(Error::InternalInvariantViolation("tensor duals failed to span"));
    }
    Ok(ProductObservable {
        ctx: Arc::clone(a.ctx()),
        duals,
        name: format!("{} {}", a.name(), b.name()),
    })
}

fn joint_brackets(po: &ProductObservable, psi: &TwoSpinState) -> Result<[u8; 4]> {
    let mut out = [0u8; 4];
    for (slot, dual) in out.iter_mut().zip(&po.duals) {
        *slot = abs_map(&bracket(dual, psi.vector())?).as_u8();
    }
    Ok(out)
}

/// Probability of one joint outcome on a two-spin state.
pub fn joint_probability(
    po: &ProductObservable,
    pair: OutcomePair,
    psi: &TwoSpinState,
) -> Result<Rat> {
    if po.ctx != *psi.ctx() {
        return Err(Error::FieldMismatch);
    }
    let brackets = joint_brackets(po, psi)?;
    let denom: i64 = brackets.iter().map(|&b| b as i64).sum();
    if denom == 0 {
        return Err(Error::InternalInvariantViolation("all joint brackets vanished"));
    }
    Ok(Rat::new((brackets[pair.index()] as i64).into(), denom.into()))
}

/// All four joint probabilities, in `++, +-, -+, --` order.
pub fn joint_distribution(po: &ProductObservable, psi: &TwoSpinState) -> Result<[Rat; 4]> {
    let brackets = joint_brackets(po, psi)?;
    let denom: i64 = brackets.iter().map(|&b| b as i64).sum();
    if denom == 0 {
        return Err(Error::InternalInvariantViolation("all joint brackets vanished"));
    }
    Ok(brackets.map(|b| Rat::new((b as i64).into(), denom.into())))
}

/// The correlation `<AB>`: expectation of the product of the two +-1 values.
pub fn correlation(po: &ProductObservable, psi: &TwoSpinState) -> Result<Rat> {
    let dist = joint_distribution(po, psi)?;
    let mut acc = rat(0);
    for (pair, p) in OutcomePair::ALL.iter().zip(dist) {
        let (x, y) = pair.signs();
        acc += rat(x * y) * p;
    }
    Ok(acc)
}

/// One row of the correlation table: the four joint probabilities of a
/// product-observable pattern on the singlet, plus its expectation value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationRow {
    pub label: String,
    pub probs: [Rat; 4],
    pub ev: Rat,
}

/// A table row, or the marker that the pattern needs more distinct indices
/// than this field admits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Table1Entry {
    Row(CorrelationRow),
    Skipped { pattern: String, reason: String },
}

/// Index patterns of the correlation table, in presentation order. Each
/// pattern maps a tuple of distinct spin indices to the two observables.
const TABLE1_PATTERNS: [(&str, usize); 4] =
    [("A_rs A_rs", 2), ("A_rs A_rt", 3), ("A_rs A_st", 3), ("A_rs A_tu", 4)];

fn pattern_observables(
    pattern: &str,
    idx: &[u64],
    ctx: &Arc<FieldCtx>,
) -> Result<(Observable, Observable)> {
    let o = |r: u64, s: u64| spin_observable(SpinIndex(r), SpinIndex(s), ctx);
    match pattern {
        "A_rs A_rs" => Ok((o(idx[0], idx[1])?, o(idx[0], idx[1])?)),
        "A_rs A_rt" => Ok((o(idx[0], idx[1])?, o(idx[0], idx[2])?)),
        "A_rs A_st" => Ok((o(idx[0], idx[1])?, o(idx[1], idx[2])?)),
        "A_rs A_tu" => Ok((o(idx[0], idx[1])?, o(idx[2], idx[3])?)),
        _ => Err(Error::InternalInvariantViolation("unknown table pattern")),
    }
}

fn distinct_tuples(pool: u64, len: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(pool: u64, len: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for v in 0..pool {
            if !current.contains(&v) {
                current.push(v);
                rec(pool, len, current, out);
                current.pop();
            }
        }
    }
    rec(pool, len, &mut current, &mut out);
    out
}

/// Direction index pairs of the two observables for one concrete assignment.
fn pattern_index_pairs(pattern: &str, idx: &[u64]) -> ((u64, u64), (u64, u64)) {
    match pattern {
        "A_rs A_rs" => ((idx[0], idx[1]), (idx[0], idx[1])),
        "A_rs A_rt" => ((idx[0], idx[1]), (idx[0], idx[2])),
        "A_rs A_st" => ((idx[0], idx[1]), (idx[1], idx[2])),
        "A_rs A_tu" => ((idx[0], idx[1]), (idx[2], idx[3])),
        _ => unreachable!("unknown table pattern"),
    }
}

/// Compute the correlation table on the singlet. For every pattern, all
/// concrete assignments of distinct indices are evaluated and must agree;
/// one row per pattern is emitted. Patterns needing more labels than `q + 1`
/// are reported as skipped rather than silently dropped.
///
/// The sweep evaluates each assignment through the singlet bracket identity:
/// against `|S> = |0>(x)|1> - |1>(x)|0>`, the bracket of `<x| (x) <y|` is the
/// 2x2 determinant `x0 y1 - x1 y0`, so a joint outcome is possible exactly
/// when its two bras are independent. The first assignment of every pattern
/// is additionally pushed through the full product-observable machinery and
/// must reproduce the shortcut's row.
pub fn table1(ctx: &Arc<FieldCtx>) -> Result<Vec<Table1Entry>> {
    let state = singlet(SpinIndex(0), SpinIndex(1), ctx)?;
    let labels = ctx.q() + 1;
    let bras: Vec<[u64; 2]> = crate::projective::spin_indices(ctx)
        .map(|r| {
            let b = crate::projective::bra(r, ctx)?;
            Ok([ctx.encode(&b.entries()[0]), ctx.encode(&b.entries()[1])])
        })
        .collect::<Result<_>>()?;
    let det_bit = |x: u64, y: u64| -> u8 {
        let (x, y) = (&bras[x as usize], &bras[y as usize]);
        let det = ctx.sub_enc(ctx.mul_enc(x[0], y[1]), ctx.mul_enc(x[1], y[0]));
        u8::from(det != 0)
    };

    let mut out = Vec::with_capacity(4);
    for (pattern, arity) in TABLE1_PATTERNS {
        if (labels as usize) < arity {
            out.push(Table1Entry::Skipped {
                pattern: pattern.to_string(),
                reason: format!("needs {arity} distinct indices, only {labels} available"),
            });
            continue;
        }
        let mut row: Option<(CorrelationRow, [u8; 4])> = None;
        for idx in distinct_tuples(labels, arity) {
            let ((ap, am), (bp, bm)) = pattern_index_pairs(pattern, &idx);
            let bits = [
                det_bit(ap, bp),
                det_bit(ap, bm),
                det_bit(am, bp),
                det_bit(am, bm),
            ];
            match &row {
                Some((_, prev_bits)) => {
                    if *prev_bits != bits {
                        return Err(Error::InternalInvariantViolation(
                            "table row depends on the concrete index assignment",
                        ));
                    }
                }
                None => {
                    let denom: i64 = bits.iter().map(|&b| b as i64).sum();
                    if denom == 0 {
                        return Err(Error::InternalInvariantViolation(
                            "all joint brackets vanished",
                        ));
                    }
                    let probs = bits
                        .map(|b| Rat::new((b as i64).into(), denom.into()));
                    let mut ev = rat(0);
                    for (pair, p) in OutcomePair::ALL.iter().zip(&probs) {
                        let (x, y) = pair.signs();
                        ev += rat(x * y) * p;
                    }
                    // cross-check the shortcut against the full machinery
                    let (a, b) = pattern_observables(pattern, &idx, ctx)?;
                    let po = product_observable(&a, &b)?;
                    if joint_distribution(&po, &state)? != probs
                        || correlation(&po, &state)? != ev
                    {
                        return Err(Error::InternalInvariantViolation(
                            "bracket identity disagrees with the measurement rule",
                        ));
                    }
                    row = Some((
                        CorrelationRow { label: pattern.to_string(), probs, ev },
                        bits,
                    ));
                }
            }
        }
        out.push(Table1Entry::Row(row.expect("at least one assignment").0));
    }
    Ok(out)
}

/// The CHSH combination `<AB> + <Ab> + <aB> - <ab>` on a state.
pub fn chsh_value(
    a: &Observable,
    a2: &Observable,
    b: &Observable,
    b2: &Observable,
    psi: &TwoSpinState,
) -> Result<Rat> {
    let c = |x: &Observable, y: &Observable| -> Result<Rat> {
        correlation(&product_observable(x, y)?, psi)
    };
    Ok(c(a, b)? + c(a, b2)? + c(a2, b)? - c(a2, b2)?)
}

/// Result of a CHSH sweep: the maximum of `|<A,a;B,b>|`, a witness quadruple
/// of observable direction labels, and the witness state's index in the
/// swept list.
#[derive(Clone, Debug)]
pub struct ChshMax {
    pub value: Rat,
    pub quadruple: [(u64, u64); 4],
    pub state_index: usize,
}

/// All ordered direction pairs `(r, s)`, `r != s`, in lexicographic order;
/// these label the spin observables of the sweep (both orientations of every
/// unordered pair).
pub fn observable_labels(ctx: &FieldCtx) -> Vec<(u64, u64)> {
    let mut labels = Vec::new();
    for r in 0..=ctx.q() {
        for s in 0..=ctx.q() {
            if r != s {
                labels.push((r, s));
            }
        }
    }
    labels
}

/// Maximize `|<A,a;B,b>|` over every ordered observable quadruple and every
/// given state. Ties break deterministically toward the earliest
/// `(state, A, a, B, b)` in enumeration order.
pub fn chsh_max(ctx: &Arc<FieldCtx>, states: &[TwoSpinState]) -> Result<ChshMax> {
    if states.is_empty() {
        return Err(Error::InvalidArgs("chsh sweep needs at least one state".into()));
    }
    let labels = observable_labels(ctx);
    let n = labels.len();
    let observables: Vec<Observable> = labels
        .iter()
        .map(|&(r, s)| spin_observable(SpinIndex(r), SpinIndex(s), ctx))
        .collect::<Result<_>>()?;

    let mut best: Option<(Rat, [usize; 4], usize)> = None;
    for (state_index, state) in states.iter().enumerate() {
        // Integer-scaled correlation matrix: every correlation is k/d with
        // d | 12, so scale by the lcm of the denominators.
        let mut corr = vec![vec![Rat::from_integer(0.into()); n]; n];
        for i in 0..n {
            for j in 0..n {
                let po = product_observable(&observables[i], &observables[j])?;
                corr[i][j] = correlation(&po, state)?;
            }
        }
        let mut lcm: i64 = 1;
        for row in &corr {
            for c in row {
                let d = i64::try_from(c.denom())
                    .map_err(|_| Error::InternalInvariantViolation("correlation denominator"))?;
                lcm = num_integer::lcm(lcm, d);
            }
        }
        let scaled: Vec<Vec<i64>> = corr
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        let v = c * Rat::from_integer(lcm.into());
                        i64::try_from(v.numer()).expect("scaled correlation fits i64")
                    })
                    .collect()
            })
            .collect();

        for ai in 0..n {
            for aj in 0..n {
                // value(B, b) = f(B) + g(b)
                let mut max_f = i64::MIN;
                let mut arg_max_f = 0;
                let mut min_f = i64::MAX;
                let mut arg_min_f = 0;
                let mut max_g = i64::MIN;
                let mut arg_max_g = 0;
                let mut min_g = i64::MAX;
                let mut arg_min_g = 0;
                for b in 0..n {
                    let f = scaled[ai][b] + scaled[aj][b];
                    if f > max_f {
                        max_f = f;
                        arg_max_f = b;
                    }
                    if f < min_f {
                        min_f = f;
                        arg_min_f = b;
                    }
                    let g = scaled[ai][b] - scaled[aj][b];
                    if g > max_g {
                        max_g = g;
                        arg_max_g = b;
                    }
                    if g < min_g {
                        min_g = g;
                        arg_min_g = b;
                    }
                }
                let hi = max_f + max_g;
                let lo = -(min_f + min_g);
                let (vabs, bi, bj) = match hi.cmp(&lo) {
                    std::cmp::Ordering::Greater => (hi, arg_max_f, arg_max_g),
                    std::cmp::Ordering::Less => (lo, arg_min_f, arg_min_g),
                    std::cmp::Ordering::Equal => {
                        // same magnitude from both routes: earliest (B, b)
                        if (arg_max_f, arg_max_g) <= (arg_min_f, arg_min_g) {
                            (hi, arg_max_f, arg_max_g)
                        } else {
                            (lo, arg_min_f, arg_min_g)
                        }
                    }
                };
                let value = Rat::new(vabs.into(), lcm.into());
                let better = match &best {
                    None => true,
                    Some((prev, _, _)) => value > *prev,
                };
                if better {
                    best = Some((value, [ai, aj, bi, bj], state_index));
                }
            }
        }
    }
    let (value, idx, state_index) = best.expect("nonempty state list");
    Ok(ChshMax { value, quadruple: idx.map(|i| labels[i]), state_index })
}
