//! Exact local-hidden-variable feasibility: decide whether a bipartite joint
//! outcome table is a convex combination of deterministic local strategies.
//!
//! Verdicts are exact and independently checkable by substitution. A feasible
//! verdict carries non-negative rational weights that reproduce every table
//! entry; an infeasible verdict carries a linear functional (a Bell-type
//! inequality) whose value on the table strictly exceeds its maximum over
//! all deterministic strategies.
//!
//! The decision runs as column generation over a phase-1 simplex in the
//! correlator parameterization (one-side marginals, other-side marginals,
//! pairwise correlators, normalization): the master problem only ever sees
//! the strategies the separation oracle proposes, so the `2^(m1+m2)` strategy
//! set is never materialized unless a verdict has to be verified.

mod simplex;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::composite::{
    joint_distribution, product_observable, singlet, TwoSpinState,
};
use crate::gf::FieldCtx;
use crate::measurement::spin_observable;
use crate::projective::SpinIndex;
use crate::rat::{rat, Rat};
use crate::{Error, Result};

use simplex::{PhaseOneOutcome, PhaseOneSimplex};

/// Measurement scenario: `m1` observables on side one, `m2` on side two,
/// outcomes fixed to +1/-1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Scenario {
    pub m1: usize,
    pub m2: usize,
}

/// Cap on `2^(m1+m2)` strategy enumeration.
pub const STRATEGY_CAP_BITS: usize = 20;

impl Scenario {
    pub fn new(m1: usize, m2: usize) -> Result<Scenario> {
        if m1 < 1 || m2 < 1 {
            return Err(Error::InvalidArgs("scenario needs at least one observable per side".into()));
        }
        if m1 + m2 > STRATEGY_CAP_BITS {
            return Err(Error::TooLarge(format!(
                "2^({m1}+{m2}) deterministic strategies exceed the 2^{STRATEGY_CAP_BITS} cap"
            )));
        }
        Ok(Scenario { m1, m2 })
    }
}

/// Joint probabilities for every observable pair, each pair holding the four
/// outcome probabilities in `++, +-, -+, --` order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JointTable {
    m1: usize,
    m2: usize,
    pairs: Vec<[Rat; 4]>,
}

impl JointTable {
    pub fn new(scenario: Scenario, pairs: Vec<[Rat; 4]>) -> Result<JointTable> {
        if pairs.len() != scenario.m1 * scenario.m2 {
            return Err(Error::BadTable(format!(
                "expected {} observable pairs, got {}",
                scenario.m1 * scenario.m2,
                pairs.len()
            )));
        }
        Ok(JointTable { m1: scenario.m1, m2: scenario.m2, pairs })
    }

    pub fn scenario(&self) -> Scenario {
        Scenario { m1: self.m1, m2: self.m2 }
    }

    pub fn pair(&self, i: usize, j: usize) -> &[Rat; 4] {
        &self.pairs[i * self.m2 + j]
    }

    pub fn pairs(&self) -> &[[Rat; 4]] {
        &self.pairs
    }

    /// Check the probability invariants: entries non-negative, each pair
    /// summing to one.
    pub fn validate(&self) -> Result<()> {
        for (idx, entry) in self.pairs.iter().enumerate() {
            let (i, j) = (idx / self.m2, idx % self.m2);
            if entry.iter().any(|p| p.is_negative()) {
                return Err(Error::BadTable(format!("negative probability at pair ({i},{j})")));
            }
            let total: Rat = entry.iter().cloned().sum();
            if total != rat(1) {
                return Err(Error::BadTable(format!(
                    "pair ({i},{j}) sums to {total}, expected 1"
                )));
            }
        }
        Ok(())
    }

    /// `<a_i> = (pp + pm) - (mp + mm)` read off pair `(i, j)`.
    fn marginal_a(&self, i: usize, j: usize) -> Rat {
        let t = self.pair(i, j);
        &t[0] + &t[1] - &t[2] - &t[3]
    }

    /// `<b_j> = (pp + mp) - (pm + mm)` read off pair `(i, j)`.
    fn marginal_b(&self, i: usize, j: usize) -> Rat {
        let t = self.pair(i, j);
        &t[0] - &t[1] + &t[2] - &t[3]
    }

    /// `<a_i b_j> = pp - pm - mp + mm`.
    fn correlator(&self, i: usize, j: usize) -> Rat {
        let t = self.pair(i, j);
        &t[0] - &t[1] - &t[2] + &t[3]
    }
}

/// A deterministic local strategy: one fixed +1/-1 outcome per observable per
/// side.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct DeterministicStrategy {
    pub a: Vec<i8>,
    pub b: Vec<i8>,
}

impl DeterministicStrategy {
    /// The strategy's behavior: probability one on its outcome pair for
    /// every observable pair.
    pub fn behavior(&self) -> JointTable {
        let mut pairs = Vec::with_capacity(self.a.len() * self.b.len());
        for &ai in &self.a {
            for &bj in &self.b {
                let mut entry = [rat(0), rat(0), rat(0), rat(0)];
                let slot = match (ai > 0, bj > 0) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                };
                entry[slot] = rat(1);
                pairs.push(entry);
            }
        }
        JointTable { m1: self.a.len(), m2: self.b.len(), pairs }
    }
}

impl std::fmt::Display for DeterministicStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &x in &self.a {
            write!(f, "{}", if x > 0 { '+' } else { '-' })?;
        }
        write!(f, "|")?;
        for &x in &self.b {
            write!(f, "{}", if x > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// Every deterministic strategy, side-one assignments cycling slowest; entry
/// +1 when the corresponding bit is unset.
pub fn deterministic_strategies(s: Scenario) -> Result<Vec<DeterministicStrategy>> {
    Scenario::new(s.m1, s.m2)?;
    let mut out = Vec::with_capacity(1usize << (s.m1 + s.m2));
    for mask_a in 0u64..(1 << s.m1) {
        let a: Vec<i8> = (0..s.m1).map(|i| if mask_a >> i & 1 == 0 { 1 } else { -1 }).collect();
        for mask_b in 0u64..(1 << s.m2) {
            let b: Vec<i8> =
                (0..s.m2).map(|j| if mask_b >> j & 1 == 0 { 1 } else { -1 }).collect();
            out.push(DeterministicStrategy { a: a.clone(), b });
        }
    }
    Ok(out)
}

/// A separating functional over raw table entries: `coeffs . table > bound`
/// while `coeffs . behavior(d) <= bound` for every deterministic strategy.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    /// Per observable pair, coefficients for the `++, +-, -+, --` entries.
    pub coeffs: Vec<[Rat; 4]>,
    pub bound: Rat,
}

impl Certificate {
    pub fn evaluate(&self, table: &JointTable) -> Rat {
        let mut acc = rat(0);
        for (c, t) in self.coeffs.iter().zip(table.pairs()) {
            for (ck, tk) in c.iter().zip(t) {
                acc += ck * tk;
            }
        }
        acc
    }

    /// Value on a deterministic strategy, by direct slot lookup.
    pub fn strategy_value(&self, s: &DeterministicStrategy) -> Rat {
        let m2 = s.b.len();
        let mut acc = rat(0);
        for (i, &ai) in s.a.iter().enumerate() {
            for (j, &bj) in s.b.iter().enumerate() {
                let slot = match (ai > 0, bj > 0) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                };
                acc += &self.coeffs[i * m2 + j][slot];
            }
        }
        acc
    }

    /// Exact maximum over all deterministic strategies. The value separates
    /// over the non-enumerated side once the other side is fixed, so only
    /// `2^min(m1, m2)` assignments are walked; the inner side is optimized
    /// pairwise in closed form.
    pub fn max_over_strategies(&self, scenario: Scenario) -> Result<Rat> {
        Scenario::new(scenario.m1, scenario.m2)?;
        if self.coeffs.len() != scenario.m1 * scenario.m2 {
            return Err(Error::ShapeMismatch(
                "certificate does not match the scenario".into(),
            ));
        }
        let slot = |ai: bool, bj: bool| match (ai, bj) {
            (true, true) => 0usize,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        let coeff = |i: usize, j: usize, ai: bool, bj: bool| -> &Rat {
            &self.coeffs[i * scenario.m2 + j][slot(ai, bj)]
        };
        let enumerate_a = scenario.m1 <= scenario.m2;
        let outer_len = scenario.m1.min(scenario.m2);
        let inner_len = scenario.m1.max(scenario.m2);
        let mut best: Option<Rat> = None;
        for mask in 0u64..(1 << outer_len) {
            let outer_plus = |k: usize| mask >> k & 1 == 0;
            let mut total = rat(0);
            for inner in 0..inner_len {
                // choose the free side's sign for this coordinate alone
                let mut plus = rat(0);
                let mut minus = rat(0);
                for outer in 0..outer_len {
                    if enumerate_a {
                        plus += coeff(outer, inner, outer_plus(outer), true);
                        minus += coeff(outer, inner, outer_plus(outer), false);
                    } else {
                        plus += coeff(inner, outer, true, outer_plus(outer));
                        minus += coeff(inner, outer, false, outer_plus(outer));
                    }
                }
                total += plus.max(minus);
            }
            if best.as_ref().is_none_or(|b| total > *b) {
                best = Some(total);
            }
        }
        best.ok_or(Error::InternalInvariantViolation("no strategies enumerated"))
    }

    /// Substitution check: strictly separates `table` from every strategy.
    pub fn verify(&self, scenario: Scenario, table: &JointTable) -> Result<bool> {
        let max = self.max_over_strategies(scenario)?;
        Ok(max <= self.bound && self.evaluate(table) > self.bound)
    }

    /// Scale so the first nonzero coefficient (pair-major, slot order) has
    /// absolute value one; dividing by a negative leading coefficient would
    /// flip the inequality, so only the magnitude is normalized.
    fn normalize(mut self) -> Certificate {
        let lead = self
            .coeffs
            .iter()
            .flat_map(|c| c.iter())
            .find(|c| !c.is_zero())
            .cloned();
        if let Some(lead) = lead {
            let scale = lead.abs();
            for c in self.coeffs.iter_mut() {
                for k in c.iter_mut() {
                    *k = &*k / &scale;
                }
            }
            self.bound = &self.bound / &scale;
        }
        self
    }
}

/// The verdict: either reproducing weights or a separating certificate.
#[derive(Clone, Debug)]
pub struct LhvVerdict {
    pub feasible: bool,
    pub weights: Option<Vec<(DeterministicStrategy, Rat)>>,
    pub certificate: Option<Certificate>,
}

impl LhvVerdict {
    /// Full substitution check of whichever witness is present.
    pub fn verify(&self, scenario: Scenario, table: &JointTable) -> Result<bool> {
        if self.feasible {
            let Some(weights) = &self.weights else { return Ok(false) };
            let mut total = rat(0);
            let m = scenario.m1 * scenario.m2;
            let mut mix = vec![[rat(0), rat(0), rat(0), rat(0)]; m];
            for (strategy, w) in weights {
                if w.is_negative() {
                    return Ok(false);
                }
                total += w;
                for (slot, entry) in strategy.behavior().pairs().iter().enumerate() {
                    for k in 0..4 {
                        mix[slot][k] += &entry[k] * w;
                    }
                }
            }
            Ok(total == rat(1) && mix.as_slice() == table.pairs())
        } else {
            let Some(cert) = &self.certificate else { return Ok(false) };
            cert.verify(scenario, table)
        }
    }
}

/// Reduced coordinates: `[<a_i>; <b_j>; <a_i b_j>; 1]`.
fn reduced_rows(s: Scenario) -> usize {
    s.m1 + s.m2 + s.m1 * s.m2 + 1
}

fn reduced_column(s: Scenario, strat: &DeterministicStrategy) -> Vec<i64> {
    let mut col = Vec::with_capacity(reduced_rows(s));
    col.extend(strat.a.iter().map(|&x| x as i64));
    col.extend(strat.b.iter().map(|&x| x as i64));
    for &ai in &strat.a {
        for &bj in &strat.b {
            col.push((ai * bj) as i64);
        }
    }
    col.push(1);
    col
}

fn reduced_target(s: Scenario, t: &JointTable) -> Vec<Rat> {
    let mut b = Vec::with_capacity(reduced_rows(s));
    for i in 0..s.m1 {
        b.push(t.marginal_a(i, 0));
    }
    for j in 0..s.m2 {
        b.push(t.marginal_b(0, j));
    }
    for i in 0..s.m1 {
        for j in 0..s.m2 {
            b.push(t.correlator(i, j));
        }
    }
    b.push(rat(1));
    b
}

/// How many violated strategies the separation oracle may hand to the master
/// per round. Batching shrinks the number of column-generation rounds without
/// affecting the verdict.
const SEPARATION_BATCH: usize = 8;

/// Maximize `ya . alpha + yb . beta + ye . (alpha x beta)` over deterministic
/// assignments, enumerating the smaller side and optimizing the other in
/// closed form. Exact: coefficients are cleared to integers first. Returns
/// the best strategies in descending value order (stable on ties), at most
/// [`SEPARATION_BATCH`] of them.
fn separation_max(s: Scenario, ya: &[Rat], yb: &[Rat], ye: &[Rat]) -> Vec<(Rat, DeterministicStrategy)> {
    // Clear denominators.
    let mut lcm = BigInt::one();
    for v in ya.iter().chain(yb).chain(ye) {
        lcm = num_integer::lcm(lcm, v.denom().clone());
    }
    let scale = |v: &Rat| -> BigInt { (v * Rat::from_integer(lcm.clone())).to_integer() };
    let ia: Vec<BigInt> = ya.iter().map(scale).collect();
    let ib: Vec<BigInt> = yb.iter().map(scale).collect();
    let ie: Vec<BigInt> = ye.iter().map(scale).collect();

    let enumerate_a = s.m1 <= s.m2;
    let (outer_len, inner_len) = if enumerate_a { (s.m1, s.m2) } else { (s.m2, s.m1) };
    let mut scored: Vec<(BigInt, DeterministicStrategy)> =
        Vec::with_capacity(1 << outer_len);
    for mask in 0u64..(1 << outer_len) {
        let outer: Vec<i8> =
            (0..outer_len).map(|i| if mask >> i & 1 == 0 { 1 } else { -1 }).collect();
        let mut total = BigInt::zero();
        let outer_coeffs = if enumerate_a { &ia } else { &ib };
        for (i, &x) in outer.iter().enumerate() {
            if x > 0 {
                total += &outer_coeffs[i];
            } else {
                total -= &outer_coeffs[i];
            }
        }
        let mut inner = Vec::with_capacity(inner_len);
        for j in 0..inner_len {
            // coefficient in front of the inner variable j
            let mut coef = if enumerate_a { ib[j].clone() } else { ia[j].clone() };
            for (i, &x) in outer.iter().enumerate() {
                let e = if enumerate_a { &ie[i * s.m2 + j] } else { &ie[j * s.m2 + i] };
                if x > 0 {
                    coef += e;
                } else {
                    coef -= e;
                }
            }
            if coef.is_negative() {
                inner.push(-1i8);
                total -= coef;
            } else {
                inner.push(1i8);
                total += coef;
            }
        }
        let candidate = if enumerate_a {
            DeterministicStrategy { a: outer.clone(), b: inner }
        } else {
            DeterministicStrategy { a: inner, b: outer.clone() }
        };
        scored.push((total, candidate));
    }
    scored.sort_by(|(u, _), (v, _)| v.cmp(u)); // stable: enumeration order on ties
    scored
        .into_iter()
        .take(SEPARATION_BATCH)
        .map(|(v, strat)| (Rat::new(v, lcm.clone()), strat))
        .collect()
}

/// Decide LHV feasibility of a joint table, returning a substitution-checkable
/// verdict either way.
pub fn lhv_feasible(s: Scenario, table: &JointTable) -> Result<LhvVerdict> {
    let s = Scenario::new(s.m1, s.m2)?;
    if table.scenario() != s {
        return Err(Error::BadTable("table shape does not match the scenario".into()));
    }
    table.validate()?;

    // Deterministic strategies are non-signaling, so a signaling table is
    // separated by a marginal-difference functional with strategy bound zero.
    for i in 0..s.m1 {
        for j in 1..s.m2 {
            let delta = table.marginal_a(i, j) - table.marginal_a(i, 0);
            if !delta.is_zero() {
                return Ok(signaling_certificate(s, table, i, j, true));
            }
        }
    }
    for j in 0..s.m2 {
        for i in 1..s.m1 {
            let delta = table.marginal_b(i, j) - table.marginal_b(0, j);
            if !delta.is_zero() {
                return Ok(signaling_certificate(s, table, i, j, false));
            }
        }
    }

    let target = reduced_target(s, table);
    let mut lp = PhaseOneSimplex::new(target);
    let mut generated: Vec<DeterministicStrategy> = Vec::new();
    let round_cap = (1usize << (s.m1 + s.m2)) + reduced_rows(s) + 1;
    for _ in 0..round_cap {
        match lp.solve()? {
            PhaseOneOutcome::Feasible => {
                let weights = lp
                    .column_weights()
                    .into_iter()
                    .map(|(j, w)| (generated[j].clone(), w))
                    .collect();
                return Ok(LhvVerdict {
                    feasible: true,
                    weights: Some(weights),
                    certificate: None,
                });
            }
            PhaseOneOutcome::Infeasible { y } => {
                let (ya, rest) = y.split_at(s.m1);
                let (yb, rest) = rest.split_at(s.m2);
                let (ye, gamma) = rest.split_at(s.m1 * s.m2);
                let threshold = -gamma[0].clone();
                let batch = separation_max(s, ya, yb, ye);
                let best_value = batch[0].0.clone();
                if best_value <= threshold {
                    // Farkas vector survives the full strategy set.
                    let cert =
                        certificate_from_functional(s, ya, yb, ye, best_value).normalize();
                    return Ok(LhvVerdict {
                        feasible: false,
                        weights: None,
                        certificate: Some(cert),
                    });
                }
                for (value, witness) in batch {
                    if value <= threshold {
                        break;
                    }
                    lp.add_column(reduced_column(s, &witness));
                    generated.push(witness);
                }
            }
        }
    }
    Err(Error::InternalInvariantViolation("column generation failed to converge"))
}

/// Map a functional in reduced coordinates back to raw table entries.
/// Marginal terms are attached to the pairs they were read from (`(i, 0)` and
/// `(0, j)`), so the value agrees on every non-signaling table and on every
/// deterministic behavior.
fn certificate_from_functional(
    s: Scenario,
    ya: &[Rat],
    yb: &[Rat],
    ye: &[Rat],
    bound: Rat,
) -> Certificate {
    let mut coeffs = vec![[rat(0), rat(0), rat(0), rat(0)]; s.m1 * s.m2];
    let sign_e = [1i64, -1, -1, 1];
    let sign_a = [1i64, 1, -1, -1];
    let sign_b = [1i64, -1, 1, -1];
    for i in 0..s.m1 {
        for j in 0..s.m2 {
            let slot = &mut coeffs[i * s.m2 + j];
            for k in 0..4 {
                slot[k] += &ye[i * s.m2 + j] * rat(sign_e[k]);
                if j == 0 {
                    slot[k] += &ya[i] * rat(sign_a[k]);
                }
                if i == 0 {
                    slot[k] += &yb[j] * rat(sign_b[k]);
                }
            }
        }
    }
    Certificate { coeffs, bound }
}

/// Certificate for a signaling table: the difference of one marginal read
/// from two different partner settings vanishes on every strategy.
fn signaling_certificate(
    s: Scenario,
    table: &JointTable,
    i: usize,
    j: usize,
    side_a: bool,
) -> LhvVerdict {
    let (pattern, here, base): ([i64; 4], usize, usize) = if side_a {
        ([1, 1, -1, -1], i * s.m2 + j, i * s.m2)
    } else {
        ([1, -1, 1, -1], i * s.m2 + j, j)
    };
    let delta = if side_a {
        table.marginal_a(i, j) - table.marginal_a(i, 0)
    } else {
        table.marginal_b(i, j) - table.marginal_b(0, j)
    };
    let orient = if delta.is_positive() { rat(1) } else { rat(-1) };
    let mut coeffs = vec![[rat(0), rat(0), rat(0), rat(0)]; s.m1 * s.m2];
    for k in 0..4 {
        coeffs[here][k] = &orient * rat(pattern[k]);
        coeffs[base][k] = -(&orient * rat(pattern[k]));
    }
    let cert = Certificate { coeffs, bound: rat(0) }.normalize();
    LhvVerdict { feasible: false, weights: None, certificate: Some(cert) }
}

/// Maximum of the CHSH combination over deterministic strategies in the
/// 2x2 scenario; exactly 2.
pub fn lhv_chsh_max(s: Scenario) -> Result<Rat> {
    if s.m1 != 2 || s.m2 != 2 {
        return Err(Error::InvalidArgs("the CHSH scenario has two observables per side".into()));
    }
    let mut best = rat(0);
    for strat in deterministic_strategies(s)? {
        let (a0, a1) = (strat.a[0] as i64, strat.a[1] as i64);
        let (b0, b1) = (strat.b[0] as i64, strat.b[1] as i64);
        let v = rat(a0 * b0 + a0 * b1 + a1 * b0 - a1 * b1).abs();
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// The observable set used for the field-model cross-checks: one orientation
/// per unordered direction pair (`r < s`, outcome +1 on the first bra), in
/// lexicographic order.
pub fn gqm_direction_pairs(ctx: &FieldCtx) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for r in 0..=ctx.q() {
        for s in r + 1..=ctx.q() {
            out.push((r, s));
        }
    }
    out
}

/// A built field-model table: the scenario, the table itself, and the
/// direction-pair labels of the observables (shared by both sides).
pub type GqmTable = (Scenario, JointTable, Vec<(u64, u64)>);

/// Joint table of a two-spin state over the fixed-orientation observable set,
/// same set on both sides.
pub fn gqm_joint_table(ctx: &Arc<FieldCtx>, state: &TwoSpinState) -> Result<GqmTable> {
    let dirs = gqm_direction_pairs(ctx);
    let m = dirs.len();
    let scenario = Scenario::new(m, m)?;
    let mut pairs = Vec::with_capacity(m * m);
    for &(r, s) in &dirs {
        let a = spin_observable(SpinIndex(r), SpinIndex(s), ctx)?;
        for &(t, u) in &dirs {
            let b = spin_observable(SpinIndex(t), SpinIndex(u), ctx)?;
            let po = product_observable(&a, &b)?;
            pairs.push(joint_distribution(&po, state)?);
        }
    }
    Ok((scenario, JointTable::new(scenario, pairs)?, dirs))
}

/// Joint table of the singlet over the fixed-orientation observable set.
pub fn gqm_singlet_table(ctx: &Arc<FieldCtx>) -> Result<GqmTable> {
    let state = singlet(SpinIndex(0), SpinIndex(1), ctx)?;
    gqm_joint_table(ctx, &state)
}

/// The PR-box table in the 2x2 scenario: perfect correlation on three setting
/// pairs, perfect anti-correlation on the fourth. CHSH value 4, far outside
/// the LHV polytope.
pub fn pr_box_table() -> JointTable {
    let half = crate::rat::ratio(1, 2);
    let corr = [half.clone(), rat(0), rat(0), half.clone()];
    let anti = [rat(0), half.clone(), half.clone(), rat(0)];
    JointTable {
        m1: 2,
        m2: 2,
        pairs: vec![corr.clone(), corr.clone(), corr, anti],
    }
}

#[derive(serde::Deserialize)]
struct JointTableFile {
    m1: usize,
    m2: usize,
    pairs: std::collections::BTreeMap<String, PairFile>,
}

#[derive(serde::Deserialize)]
struct PairFile {
    pp: String,
    pm: String,
    mp: String,
    mm: String,
}

/// Parse the wire form of a joint table:
/// `{"m1": 2, "m2": 2, "pairs": {"i,j": {"pp": "a/b", "pm": .., "mp": .., "mm": ..}}}`
/// with 0-based pair keys and rationals as `"num/den"` strings.
pub fn parse_table_json(raw: &str) -> Result<(Scenario, JointTable)> {
    let file: JointTableFile = serde_json::from_str(raw)
        .map_err(|e| Error::BadTable(format!("malformed joint-table JSON: {e}")))?;
    let scenario = Scenario::new(file.m1, file.m2)?;
    let mut pairs = Vec::with_capacity(file.m1 * file.m2);
    for i in 0..file.m1 {
        for j in 0..file.m2 {
            let key = format!("{i},{j}");
            let entry = file
                .pairs
                .get(&key)
                .ok_or_else(|| Error::BadTable(format!("missing pair \"{key}\"")))?;
            pairs.push([
                crate::rat::parse_rat(&entry.pp)?,
                crate::rat::parse_rat(&entry.pm)?,
                crate::rat::parse_rat(&entry.mp)?,
                crate::rat::parse_rat(&entry.mm)?,
            ]);
        }
    }
    if file.pairs.len() != file.m1 * file.m2 {
        return Err(Error::BadTable(format!(
            "expected {} pairs, file has {}",
            file.m1 * file.m2,
            file.pairs.len()
        )));
    }
    Ok((scenario, JointTable::new(scenario, pairs)?))
}

/// The uniform table: every outcome pair 1/4 for every setting pair.
pub fn uniform_table(s: Scenario) -> JointTable {
    let quarter = crate::rat::ratio(1, 4);
    JointTable {
        m1: s.m1,
        m2: s.m2,
        pairs: vec![
            [quarter.clone(), quarter.clone(), quarter.clone(), quarter.clone()];
            s.m1 * s.m2
        ],
    }
}
