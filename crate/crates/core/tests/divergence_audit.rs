//! Independent re-verification of reported theorem divergences.
//!
//! The theorem engine evaluates conditions through cached operator tables.
//! This audit recomputes every condition of the eight-way
//! characterization with the public one-shot operators (family scans and
//! bounded product enumeration, no caches) and checks that the engine's
//! vectors — including the divergent ones — reproduce exactly. A reported
//! divergence backed by two independent evaluation routes is a finding,
//! not an artifact.

use lftop_core::algebra::Elt;
use lftop_core::fuzzy::{all_sets, FuzzySet};
use lftop_core::harness::generate::{random_model, GenParams};
use lftop_core::harness::model::Model;
use lftop_core::harness::theorems::eval_theorem;
use lftop_core::mapclass::{self, MapClass};
use lftop_core::setclass;
use lftop_core::Caps;

fn condition_2(m: &Model, caps: &Caps) -> bool {
    let alg = &m.algebra;
    for u in all_sets(m.t1.space(), alg) {
        for r in alg.nonzero() {
            if !alg.leq(r, m.t1.degree(&u)) {
                continue;
            }
            let lhs = setclass::sp_closure(&m.t2, &m.map.image(&u), r, caps).unwrap();
            if !lhs.leq(&m.map.image(&m.t1.closure(&u, r))) {
                return false;
            }
        }
    }
    true
}

fn condition_3(m: &Model, caps: &Caps) -> bool {
    let alg = &m.algebra;
    for u in all_sets(m.t1.space(), alg) {
        for r in alg.nonzero() {
            if !setclass::is_regular_open(&m.t1, &u, r) {
                continue;
            }
            let lhs = setclass::sp_closure(&m.t2, &m.map.image(&u), r, caps).unwrap();
            if !lhs.leq(&m.map.image(&m.t1.closure(&u, r))) {
                return false;
            }
        }
    }
    true
}

/// Largest codomain set whose preimage stays below `c`.
fn lift(m: &Model, c: &FuzzySet) -> FuzzySet {
    let alg = &m.algebra;
    let mut grades = vec![alg.top(); m.t2.space().len()];
    for x in 0..m.t1.space().len() {
        let y = m.map.apply(x);
        grades[y] = alg.meet(grades[y], c.grade(x));
    }
    FuzzySet::from_grades(m.t2.space().clone(), alg.clone(), grades)
}

fn exists_sp_open_between(m: &Model, lo: &FuzzySet, hi: &FuzzySet, r: Elt) -> bool {
    all_sets(m.t2.space(), &m.algebra)
        .any(|w| lo.leq(&w) && w.leq(hi) && setclass::is_semi_preopen(&m.t2, &w, r))
}

fn condition_4(m: &Model, _caps: &Caps) -> bool {
    let alg = &m.algebra;
    for u in all_sets(m.t1.space(), alg) {
        for r in alg.nonzero() {
            if !alg.leq(r, m.t1.degree(&u)) {
                continue;
            }
            let bound = lift(m, &m.t1.closure(&u, r));
            for v in all_sets(m.t2.space(), alg) {
                if !m.map.preimage(&v).leq(&u) {
                    continue;
                }
                if !exists_sp_open_between(m, &v, &bound, r) {
                    return false;
                }
            }
        }
    }
    true
}

fn condition_5(m: &Model, _caps: &Caps) -> bool {
    let alg = &m.algebra;
    for y in 0..m.t2.space().len() {
        for &height in alg.coprimes() {
            let mut lo_grades = vec![alg.bottom(); m.t2.space().len()];
            lo_grades[y] = height;
            let lo = FuzzySet::from_grades(m.t2.space().clone(), alg.clone(), lo_grades);
            let pre = m.map.preimage(&lo);
            for u in all_sets(m.t1.space(), alg) {
                if !pre.leq(&u) {
                    continue;
                }
                for r in alg.nonzero() {
                    let bound = lift(m, &m.t1.closure(&u, r));
                    if !exists_sp_open_between(m, &lo, &bound, r) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn condition_6(m: &Model, caps: &Caps) -> bool {
    let alg = &m.algebra;
    for u in all_sets(m.t1.space(), alg) {
        for r in alg.nonzero() {
            let cl = m.t1.closure(&u, r);
            let int = m.t1.interior(&cl, r);
            let lhs = setclass::sp_closure(&m.t2, &m.map.image(&int), r, caps).unwrap();
            if !lhs.leq(&m.map.image(&cl)) {
                return false;
            }
        }
    }
    true
}

fn condition_7(m: &Model, caps: &Caps) -> bool {
    let alg = &m.algebra;
    for u in all_sets(m.t1.space(), alg) {
        for r in alg.nonzero() {
            let d = setclass::theta_closure(&m.t1, &u, r);
            let int = m.t1.interior(&d, r);
            let lhs = setclass::sp_closure(&m.t2, &m.map.image(&int), r, caps).unwrap();
            if !lhs.leq(&m.map.image(&d)) {
                return false;
            }
        }
    }
    true
}

fn condition_8(m: &Model, caps: &Caps) -> bool {
    let alg = &m.algebra;
    for u in all_sets(m.t1.space(), alg) {
        for r in alg.nonzero() {
            if !setclass::is_semi_preopen(&m.t1, &u, r) {
                continue;
            }
            let lhs = setclass::sp_closure(&m.t2, &m.map.image(&u), r, caps).unwrap();
            if !lhs.leq(&m.map.image(&m.t1.closure(&u, r))) {
                return false;
            }
        }
    }
    true
}

#[test]
fn engine_vectors_reproduce_under_direct_evaluation() {
    let caps = Caps::default();
    let params = GenParams::default();
    let mut audited_divergent = 0;
    let mut audited_agreeing = 0;
    for seed in 0..100 {
        let m = random_model(seed, &params);
        let rep = eval_theorem("wspc-char-8", &m, None, &caps).unwrap();
        // Audit every divergent model and a sample of agreeing ones.
        if rep.agreement && seed % 25 != 0 {
            continue;
        }
        let direct = [
            mapclass::evaluate(&m.map, &m.t1, &m.t2, MapClass::WeaklySemiPreclosed, &caps)
                .unwrap()
                .holds,
            condition_2(&m, &caps),
            condition_3(&m, &caps),
            condition_4(&m, &caps),
            condition_5(&m, &caps),
            condition_6(&m, &caps),
            condition_7(&m, &caps),
            condition_8(&m, &caps),
        ];
        let engine: Vec<bool> = rep.conditions.iter().map(|c| c.holds).collect();
        assert_eq!(engine, direct, "seed {seed}: engine and direct evaluation disagree");
        if rep.agreement {
            audited_agreeing += 1;
        } else {
            audited_divergent += 1;
        }
    }
    // The fixed seed range is known to contain genuine divergences; the
    // audit must actually have exercised them.
    assert!(audited_divergent >= 3, "expected several divergent models, got {audited_divergent}");
    assert!(audited_agreeing >= 3);
}
