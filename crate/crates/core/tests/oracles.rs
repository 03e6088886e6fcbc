//! Independent brute-force oracles for the operators.
//!
//! The implementations compute closure, interior, the semi-pre operators
//! and the theta operators by scanning the (small) open and closed
//! families. The oracles here ignore the families entirely and quantify
//! over the whole grid, straight from the defining formulas, so agreement
//! is a genuine two-route check. Expected values quoted in the fixed
//! assertions were produced by these oracles.

use lftop_core::algebra::{Algebra, Rational};
use lftop_core::fuzzy::{all_sets, FuzzySet, Space};
use lftop_core::harness::corpus;
use lftop_core::setclass;
use lftop_core::topology::FuzzyTopology;
use lftop_core::Caps;
use std::sync::Arc;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn set(space: &Arc<Space>, alg: &Arc<Algebra>, vals: &[Rational]) -> FuzzySet {
    let grades = vals.iter().map(|&v| alg.find_rational(v).unwrap()).collect();
    FuzzySet::from_grades(space.clone(), alg.clone(), grades)
}

/// Meet of every grid set above `u` whose complement has degree at least
/// `r`. Scans the full grid.
fn closure_oracle(top: &FuzzyTopology, u: &FuzzySet, r: lftop_core::Elt) -> FuzzySet {
    let alg = top.algebra();
    let mut acc = top.top_set();
    for v in all_sets(top.space(), alg) {
        if u.leq(&v) && alg.leq(r, top.degree(&v.complement())) {
            acc = acc.meet(&v);
        }
    }
    acc
}

/// Join of every grid set below `u` with degree at least `r`.
fn interior_oracle(top: &FuzzyTopology, u: &FuzzySet, r: lftop_core::Elt) -> FuzzySet {
    let alg = top.algebra();
    let mut acc = top.bottom_set();
    for v in all_sets(top.space(), alg) {
        if v.leq(u) && alg.leq(r, top.degree(&v)) {
            acc = acc.join(&v);
        }
    }
    acc
}

fn semi_preopen_oracle(top: &FuzzyTopology, u: &FuzzySet, r: lftop_core::Elt) -> bool {
    let c = closure_oracle(top, u, r);
    let ic = interior_oracle(top, &c, r);
    u.leq(&closure_oracle(top, &ic, r))
}

fn sp_interior_oracle(top: &FuzzyTopology, u: &FuzzySet, r: lftop_core::Elt) -> FuzzySet {
    let mut acc = top.bottom_set();
    for v in all_sets(top.space(), top.algebra()) {
        if v.leq(u) && semi_preopen_oracle(top, &v, r) {
            acc = acc.join(&v);
        }
    }
    acc
}

/// Meet formula for the theta closure, quantified over the whole grid.
fn theta_closure_oracle(top: &FuzzyTopology, u: &FuzzySet, r: lftop_core::Elt) -> FuzzySet {
    let alg = top.algebra();
    let mut acc = top.top_set();
    for v in all_sets(top.space(), alg) {
        if alg.leq(r, top.degree(&v.complement())) && u.leq(&interior_oracle(top, &v, r)) {
            acc = acc.meet(&v);
        }
    }
    acc
}

fn cx1_topologies() -> (Arc<Algebra>, FuzzyTopology, FuzzyTopology, FuzzySet) {
    let cx = corpus::cx1();
    let u = cx.model.t1.table()[0].0.clone();
    (cx.model.algebra.clone(), cx.model.t1, cx.model.t2, u)
}

#[test]
fn closure_of_the_single_open_frozen_value() {
    let (alg, t1, _, u) = cx1_topologies();
    let half = alg.find_rational(rat(1, 2)).unwrap();
    let expect = set(t1.space(), &alg, &[rat(1, 2), rat(7, 10), rat(4, 5)]);
    assert_eq!(closure_oracle(&t1, &u, half), expect);
    assert_eq!(t1.closure(&u, half), expect);
}

#[test]
fn interior_frozen_value_in_the_nested_codomain() {
    let (alg, _, t2, _) = cx1_topologies();
    let half = alg.find_rational(rat(1, 2)).unwrap();
    let target = set(t2.space(), &alg, &[rat(7, 10), rat(4, 5), rat(1, 2)]);
    assert!(interior_oracle(&t2, &target, half).is_bottom());
    assert!(t2.interior(&target, half).is_bottom());
}

#[test]
fn sp_interior_frozen_value_over_the_full_grid() {
    let (alg, _, t2, _) = cx1_topologies();
    let half = alg.find_rational(rat(1, 2)).unwrap();
    let target = set(t2.space(), &alg, &[rat(7, 10), rat(4, 5), rat(1, 2)]);
    // Brute force over all 11^3 candidate subsets.
    assert_eq!(sp_interior_oracle(&t2, &target, half), target);
    assert_eq!(
        setclass::sp_interior(&t2, &target, half, &Caps::default()).unwrap(),
        target
    );
}

#[test]
fn theta_closure_frozen_value_and_both_routes() {
    let (alg, t1, _, u) = cx1_topologies();
    let half = alg.find_rational(rat(1, 2)).unwrap();
    let expect = u.complement();
    assert_eq!(theta_closure_oracle(&t1, &u, half), expect);
    assert_eq!(setclass::theta_closure(&t1, &u, half), expect);
    assert_eq!(setclass::theta_closure_via_cluster_points(&t1, &u, half), expect);
}

#[test]
fn operators_match_their_oracles_on_every_set_of_small_models() {
    let models: Vec<(Arc<Algebra>, Arc<Space>)> = vec![
        (Algebra::chain([rat(1, 2)]), Space::new("X", ["p", "q"])),
        (Algebra::diamond(), Space::new("X", ["p", "q"])),
    ];
    for (alg, space) in models {
        let elts: Vec<_> = alg.elements().collect();
        let u = FuzzySet::from_grades(space.clone(), alg.clone(), vec![elts[1], alg.bottom()]);
        let v = FuzzySet::from_grades(space.clone(), alg.clone(), vec![elts[1], alg.top()]);
        let top = FuzzyTopology::new(
            space.clone(),
            alg.clone(),
            [(u, elts[1]), (v, alg.top())],
        );
        assert!(top.validate(&Caps::default()).ok);
        for r in alg.nonzero() {
            for s in all_sets(&space, &alg) {
                assert_eq!(top.closure(&s, r), closure_oracle(&top, &s, r));
                assert_eq!(top.interior(&s, r), interior_oracle(&top, &s, r));
                assert_eq!(
                    setclass::is_semi_preopen(&top, &s, r),
                    semi_preopen_oracle(&top, &s, r)
                );
                assert_eq!(
                    setclass::sp_interior(&top, &s, r, &Caps::default()).unwrap(),
                    sp_interior_oracle(&top, &s, r)
                );
                assert_eq!(setclass::theta_closure(&top, &s, r), theta_closure_oracle(&top, &s, r));
                assert_eq!(
                    setclass::theta_closure_via_cluster_points(&top, &s, r),
                    theta_closure_oracle(&top, &s, r)
                );
            }
        }
    }
}

#[test]
fn chain_construction_matches_set_arithmetic_oracle() {
    // Oracle: closure under complement plus the bounds, done by hand on a
    // BTreeSet of exact rationals.
    let inputs = [rat(1, 2), rat(3, 10), rat(1, 5), rat(1, 4), rat(9, 10), rat(1, 1), rat(7, 10)];
    let mut expect = std::collections::BTreeSet::new();
    expect.insert(rat(0, 1));
    expect.insert(rat(1, 1));
    for v in inputs {
        expect.insert(v);
        expect.insert(rat(1, 1) - v);
    }
    let alg = Algebra::chain(inputs);
    assert_eq!(alg.len(), expect.len());
    assert_eq!(alg.len(), 11);
    for (e, want) in alg.elements().zip(expect) {
        assert_eq!(alg.display(e), lftop_core::algebra::format_rational(want));
    }
}
