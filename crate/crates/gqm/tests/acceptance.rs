//! Acceptance suite: one test per reproduction criterion, each printing a
//! pass/fail line (run with `--nocapture` to see them). Every assertion is
//! exact; the only tolerances are the stated wall-clock budgets.

use std::sync::Arc;
use std::time::Instant;

use gqm::composite::{
    chsh_max, enumerate_two_spin_states, singlet, singlet_bracket_rule, table1, tensor_ket,
    Table1Entry,
};
use gqm::fun_limit::{
    f1_automorphisms, q1_consistency_report, q1_spin_model, q1_two_spin_model, F1Matrix,
};
use gqm::gf::FieldCtx;
use gqm::lhv::{
    deterministic_strategies, gqm_joint_table, gqm_singlet_table, lhv_chsh_max, lhv_feasible,
    pr_box_table, uniform_table, Scenario,
};
use gqm::measurement::{abs_map, expectation, probability, spin_observable};
use gqm::projective::{enumerate_points, ket, spin_indices, SpinIndex};
use gqm::qcount::{brute_force_subspace_count, q_int, subspace_count, QInt};
use gqm::rat::{rat, ratio, Rat};
use gqm::Error;

fn field(q: u64) -> Arc<FieldCtx> {
    FieldCtx::for_order(q).unwrap()
}

fn criterion(n: u32, name: &str, pass: bool) {
    println!("criterion {n} ({name}): {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} ({name}) failed");
}

#[test]
fn criterion_1_table1_reproduction() {
    let expected: Vec<(&str, [Rat; 4], Rat)> = vec![
        ("A_rs A_rs", [rat(0), ratio(1, 2), ratio(1, 2), rat(0)], rat(-1)),
        ("A_rs A_rt", [rat(0), ratio(1, 3), ratio(1, 3), ratio(1, 3)], ratio(-1, 3)),
        ("A_rs A_st", [ratio(1, 3), ratio(1, 3), rat(0), ratio(1, 3)], ratio(1, 3)),
        ("A_rs A_tu", [ratio(1, 4), ratio(1, 4), ratio(1, 4), ratio(1, 4)], rat(0)),
    ];
    let mut ok = true;
    for q in [3u64, 4, 5, 7, 8, 9] {
        let ctx = field(q);
        let start = Instant::now();
        let entries = table1(&ctx).unwrap();
        let elapsed = start.elapsed();
        ok &= elapsed.as_secs_f64() < 1.0;
        ok &= entries.len() == 4;
        for (entry, (label, probs, ev)) in entries.iter().zip(&expected) {
            match entry {
                Table1Entry::Row(row) => {
                    ok &= row.label == *label && row.probs == *probs && row.ev == *ev;
                }
                Table1Entry::Skipped { .. } => ok = false,
            }
        }
    }
    // q = 2: the first three rows, the four-index pattern marked skipped
    let entries = table1(&field(2)).unwrap();
    ok &= entries.len() == 4;
    for (entry, (label, probs, ev)) in entries.iter().zip(&expected[..3]) {
        match entry {
            Table1Entry::Row(row) => {
                ok &= row.label == *label && row.probs == *probs && row.ev == *ev;
            }
            Table1Entry::Skipped { .. } => ok = false,
        }
    }
    ok &= matches!(&entries[3], Table1Entry::Skipped { pattern, .. } if pattern == "A_rs A_tu");
    criterion(1, "table1 reproduction", ok);
}

#[test]
fn criterion_2_chsh_bound() {
    let mut ok = true;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let ctx = field(q);
        let s = singlet(SpinIndex(0), SpinIndex(1), &ctx).unwrap();
        let result = chsh_max(&ctx, &[s]).unwrap();
        ok &= result.value == rat(2);
    }
    for q in [2u64, 3, 4] {
        let ctx = field(q);
        let census = enumerate_two_spin_states(&ctx).unwrap();
        let start = Instant::now();
        let result = chsh_max(&ctx, &census.entangled).unwrap();
        let elapsed = start.elapsed();
        ok &= result.value == rat(2);
        if q == 4 {
            ok &= elapsed.as_secs_f64() < 30.0;
        }
    }
    criterion(2, "chsh bound", ok);
}

#[test]
fn criterion_3_counting_formulas() {
    let mut ok = true;
    for q in [2u64, 3, 4, 5] {
        let ctx = field(q);
        ok &= enumerate_points(2, &ctx).len() as u64 == q + 1;
        let census = enumerate_two_spin_states(&ctx).unwrap();
        ok &= census.all.len() as u64 == q * q * q + q * q + q + 1;
        ok &= census.product.len() as u64 == (q + 1) * (q + 1);
        ok &= census.entangled.len() as u64 == q * (q * q - 1);
    }
    for q in [2u64, 3] {
        let ctx = field(q);
        for n in 1..=4usize {
            ok &= QInt::from(enumerate_points(n, &ctx).len() as u64) == q_int(n as u64, q);
            for k in -1..n as i64 {
                ok &= subspace_count(n as u64, k, q).unwrap()
                    == brute_force_subspace_count(n as u32, k, q).unwrap();
            }
        }
    }
    criterion(3, "counting formulas", ok);
}

#[test]
fn criterion_4_spin_model_probabilities() {
    let mut ok = true;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let ctx = field(q);
        let nonzero: Vec<_> =
            ctx.enumerate_elements().into_iter().filter(|c| !c.is_zero()).collect();
        for r in spin_indices(&ctx) {
            for s in spin_indices(&ctx) {
                if r.0 == s.0 {
                    continue;
                }
                let obs = spin_observable(r, s, &ctx).unwrap();
                let plus = obs.outcomes()[0].0.clone();
                let minus = obs.outcomes()[1].0.clone();
                for t in spin_indices(&ctx) {
                    let psi = ket(t, &ctx).unwrap();
                    let p_plus = probability(&plus, &obs, &psi).unwrap();
                    let p_minus = probability(&minus, &obs, &psi).unwrap();
                    let expected_plus = if t.0 == r.0 {
                        rat(0)
                    } else if t.0 == s.0 {
                        rat(1)
                    } else {
                        ratio(1, 2)
                    };
                    ok &= p_plus == expected_plus;
                    ok &= p_plus.clone() + p_minus == rat(1);
                    ok &= expectation(&obs, &psi).unwrap()
                        == if t.0 == r.0 {
                            rat(-1)
                        } else if t.0 == s.0 {
                            rat(1)
                        } else {
                            rat(0)
                        };
                    for c in &nonzero {
                        ok &= probability(&plus, &obs, &psi.scale(c).unwrap()).unwrap() == p_plus;
                    }
                }
            }
        }
    }
    criterion(4, "spin model probabilities", ok);
}

#[test]
fn criterion_5_singlet_bracket_identity() {
    let mut ok = true;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let ctx = field(q);
        for r in spin_indices(&ctx) {
            for s in spin_indices(&ctx) {
                let got = singlet_bracket_rule(r, s, &ctx).unwrap().as_u8();
                ok &= got == u8::from(r.0 != s.0);
            }
        }
    }
    criterion(5, "singlet bracket identity", ok);
}

#[test]
fn criterion_6_lhv_verdicts() {
    let mut ok = true;

    let s22 = Scenario::new(2, 2).unwrap();
    let uniform = uniform_table(s22);
    let verdict = lhv_feasible(s22, &uniform).unwrap();
    ok &= verdict.feasible && verdict.verify(s22, &uniform).unwrap();

    let pr = pr_box_table();
    let verdict = lhv_feasible(s22, &pr).unwrap();
    ok &= !verdict.feasible && verdict.verify(s22, &pr).unwrap();

    ok &= lhv_chsh_max(s22).unwrap() == rat(2);

    for q in [2u64, 3] {
        let ctx = field(q);
        let start = Instant::now();
        let (scenario, table, _) = gqm_singlet_table(&ctx).unwrap();
        let verdict = lhv_feasible(scenario, &table).unwrap();
        ok &= !verdict.feasible && verdict.verify(scenario, &table).unwrap();
        let census = enumerate_two_spin_states(&ctx).unwrap();
        for state in &census.product {
            let (scenario, table, _) = gqm_joint_table(&ctx, state).unwrap();
            let verdict = lhv_feasible(scenario, &table).unwrap();
            ok &= verdict.feasible && verdict.verify(scenario, &table).unwrap();
        }
        let elapsed = start.elapsed();
        if q == 3 {
            ok &= elapsed.as_secs_f64() < 60.0;
        }
    }
    criterion(6, "lhv verdicts", ok);
}

#[test]
fn criterion_7_f1_limit() {
    let mut ok = true;

    let spin = q1_spin_model();
    ok &= spin.states.len() == 2;
    ok &= spin.observable.expectation(&spin.states[0].1).unwrap() == rat(1);
    ok &= spin.observable.expectation(&spin.states[1].1).unwrap() == rat(-1);
    ok &= spin.states.iter().all(|(_, s)| spin.observable.is_eigenstate(s).unwrap());
    ok &= spin.attempt_superposition() == Err(Error::AdditionForbidden);

    let two = q1_two_spin_model();
    ok &= two.states.len() == 4;
    ok &= two.states.iter().all(|(_, s)| two.observable.is_eigenstate(s).unwrap());
    ok &= two.chsh_bound().unwrap() == rat(2);
    ok &= two.states[0].1.add(&two.states[3].1) == Err(Error::AdditionForbidden);

    for n in 2..=6usize {
        let autos = f1_automorphisms(n).unwrap();
        let expected: usize = (1..=n).product();
        ok &= autos.len() == expected;
        let id = F1Matrix::identity(n);
        ok &= autos.contains(&id);
        for a in &autos {
            let inv = a.inverse().unwrap();
            ok &= autos.contains(&inv) && a.compose(&inv).unwrap() == id;
        }
        // closure under composition (sampled fully for n <= 4)
        if n <= 4 {
            for a in &autos {
                for b in &autos {
                    ok &= autos.contains(&a.compose(b).unwrap());
                }
            }
        }
        ok &= q1_consistency_report(n).unwrap().iter().all(|line| line.pass);
    }
    criterion(7, "f1 limit", ok);
}

#[test]
fn criterion_8_property_suites() {
    let mut ok = true;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let ctx = field(q);
        let els = ctx.enumerate_elements();
        for x in &els {
            ok &= ctx.add(x, &ctx.neg(x).unwrap()).unwrap() == ctx.zero();
            if !x.is_zero() {
                ok &= ctx.mul(x, &ctx.inv(x).unwrap()).unwrap() == ctx.one();
            }
            for y in &els {
                ok &= ctx.add(x, y).unwrap() == ctx.add(y, x).unwrap();
                ok &= ctx.mul(x, y).unwrap() == ctx.mul(y, x).unwrap();
                ok &= abs_map(&ctx.mul(x, y).unwrap()).as_u8()
                    == abs_map(x).as_u8() * abs_map(y).as_u8();
                for z in &els {
                    ok &= ctx.add(&ctx.add(x, y).unwrap(), z).unwrap()
                        == ctx.add(x, &ctx.add(y, z).unwrap()).unwrap();
                    ok &= ctx.mul(&ctx.mul(x, y).unwrap(), z).unwrap()
                        == ctx.mul(x, &ctx.mul(y, z).unwrap()).unwrap();
                    ok &= ctx.mul(x, &ctx.add(y, z).unwrap()).unwrap()
                        == ctx.add(&ctx.mul(x, y).unwrap(), &ctx.mul(x, z).unwrap()).unwrap();
                }
            }
        }
    }

    // product-state factorization of joint probabilities
    for q in [2u64, 3] {
        let ctx = field(q);
        let labels = gqm::composite::observable_labels(&ctx);
        for r in spin_indices(&ctx) {
            for s in spin_indices(&ctx) {
                let u = ket(r, &ctx).unwrap();
                let v = ket(s, &ctx).unwrap();
                let state = tensor_ket(&u, &v).unwrap();
                for &(i, j) in &labels {
                    for &(k, l) in &labels {
                        let a = spin_observable(SpinIndex(i), SpinIndex(j), &ctx).unwrap();
                        let b = spin_observable(SpinIndex(k), SpinIndex(l), &ctx).unwrap();
                        let po = gqm::composite::product_observable(&a, &b).unwrap();
                        for pair in gqm::composite::OutcomePair::ALL {
                            let joint =
                                gqm::composite::joint_probability(&po, pair, &state).unwrap();
                            let (sa, sb) = pair.signs();
                            let xa = if sa > 0 { &a.outcomes()[0].0 } else { &a.outcomes()[1].0 };
                            let xb = if sb > 0 { &b.outcomes()[0].0 } else { &b.outcomes()[1].0 };
                            ok &= joint
                                == probability(xa, &a, &u).unwrap()
                                    * probability(xb, &b, &v).unwrap();
                        }
                    }
                }
            }
        }
    }

    // a deterministic-strategy sanity point for the LHV module
    let s = Scenario::new(2, 2).unwrap();
    ok &= deterministic_strategies(s).unwrap().len() == 16;

    criterion(8, "property suites", ok);
}
