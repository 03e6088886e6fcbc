//! Openness classes of a set at a level, the semi-pre interior/closure
//! operators, Q-neighborhood families and the theta operators.
//!
//! The classes are defined by inequalities among compositions of the graded
//! closure `C` and interior `I` at a fixed nonzero level `r`:
//!
//! * preopen: `u <= I(C(u))`; preclosed: `C(I(u)) <= u`
//! * regular open: `u = I(C(u))`; regular closed: `u = C(I(u))`
//! * alpha-open: `u <= I(C(I(u)))`; alpha-closed: `C(I(C(u))) <= u`
//! * semi-preopen: `u <= C(I(C(u)))`; semi-preclosed: `I(C(I(u))) <= u`
//!
//! The semi-pre interior of `u` is the join of all semi-preopen sets below
//! `u`, quantified over the whole finite grid, not just the topology table;
//! dually for the semi-pre closure. The theta closure has two independent
//! routes: the join of theta-cluster points (every Q-neighborhood has a
//! closure quasi-coincident with the set) and the meet of closed sets whose
//! interior contains the set. Both are exposed; their agreement is a tested
//! property, never an assumption.

use crate::algebra::Elt;
use crate::fuzzy::{FuzzyPoint, FuzzySet};
use crate::topology::FuzzyTopology;
use crate::{Caps, CoreError};

/// Membership of one set in each openness class at a fixed level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetClassification {
    pub open: bool,
    pub closed: bool,
    pub preopen: bool,
    pub preclosed: bool,
    pub regular_open: bool,
    pub regular_closed: bool,
    pub alpha_open: bool,
    pub alpha_closed: bool,
    pub semi_preopen: bool,
    pub semi_preclosed: bool,
}

/// Evaluate every class flag directly from its defining inequality.
pub fn classify_set(top: &FuzzyTopology, u: &FuzzySet, r: Elt) -> SetClassification {
    let alg = top.algebra();
    let c = top.closure(u, r);
    let i = top.interior(u, r);
    let ic = top.interior(&c, r);
    let ci = top.closure(&i, r);
    let cic = top.closure(&ic, r);
    let ici = top.interior(&ci, r);
    SetClassification {
        open: alg.leq(r, top.degree(u)),
        closed: alg.leq(r, top.closed_degree(u)),
        preopen: u.leq(&ic),
        preclosed: ci.leq(u),
        regular_open: *u == ic,
        regular_closed: *u == ci,
        alpha_open: u.leq(&ici),
        alpha_closed: cic.leq(u),
        semi_preopen: u.leq(&cic),
        semi_preclosed: ici.leq(u),
    }
}

pub fn is_semi_preopen(top: &FuzzyTopology, u: &FuzzySet, r: Elt) -> bool {
    let c = top.closure(u, r);
    u.leq(&top.closure(&top.interior(&c, r), r))
}

pub fn is_semi_preclosed(top: &FuzzyTopology, u: &FuzzySet, r: Elt) -> bool {
    let i = top.interior(u, r);
    top.interior(&top.closure(&i, r), r).leq(u)
}

pub fn is_preopen(top: &FuzzyTopology, u: &FuzzySet, r: Elt) -> bool {
    u.leq(&top.interior(&top.closure(u, r), r))
}

pub fn is_regular_open(top: &FuzzyTopology, u: &FuzzySet, r: Elt) -> bool {
    *u == top.interior(&top.closure(u, r), r)
}

pub fn is_alpha_open(top: &FuzzyTopology, u: &FuzzySet, r: Elt) -> bool {
    u.leq(&top.interior(&top.closure(&top.interior(u, r), r), r))
}

pub fn is_alpha_closed(top: &FuzzyTopology, u: &FuzzySet, r: Elt) -> bool {
    top.closure(&top.interior(&top.closure(u, r), r), r).leq(u)
}

fn grid_size(top: &FuzzyTopology) -> u128 {
    (top.algebra().len() as u128).pow(top.space().len() as u32)
}

fn check_grid_cap(top: &FuzzyTopology, caps: &Caps) -> Result<(), CoreError> {
    let size = grid_size(top);
    if size > caps.grid as u128 {
        return Err(CoreError::GridCapExceeded { size, cap: caps.grid });
    }
    Ok(())
}

/// Enumerate all sets pointwise bounded by the given per-point candidate
/// lists, in ascending mixed-radix order (first point least significant).
fn product_sets<'a>(
    u: &'a FuzzySet,
    per_point: Vec<Vec<Elt>>,
) -> impl Iterator<Item = FuzzySet> + 'a {
    let mut counters = vec![0usize; per_point.len()];
    let mut done = per_point.iter().any(|c| c.is_empty());
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let grades: Vec<Elt> = counters
            .iter()
            .zip(&per_point)
            .map(|(&c, opts)| opts[c])
            .collect();
        let set = FuzzySet::from_grades(u.space().clone(), u.algebra().clone(), grades);
        let mut i = 0;
        loop {
            if i == counters.len() {
                done = true;
                break;
            }
            counters[i] += 1;
            if counters[i] < per_point[i].len() {
                break;
            }
            counters[i] = 0;
            i += 1;
        }
        Some(set)
    })
}

/// Join of every semi-preopen set below `u`. Quantifies over the whole
/// grid of sets below `u`; refuses when the ambient grid exceeds the cap.
pub fn sp_interior(
    top: &FuzzyTopology,
    u: &FuzzySet,
    r: Elt,
    caps: &Caps,
) -> Result<FuzzySet, CoreError> {
    check_grid_cap(top, caps)?;
    let alg = top.algebra();
    let candidates: Vec<Vec<Elt>> = u.grades().iter().map(|&g| alg.down_set(g)).collect();
    let mut acc = top.bottom_set();
    for v in product_sets(u, candidates) {
        if !v.leq(&acc) && is_semi_preopen(top, &v, r) {
            acc = acc.join(&v);
        }
        if acc == *u {
            break;
        }
    }
    Ok(acc)
}

/// Meet of every semi-preclosed set above `u`; the dual of [`sp_interior`].
pub fn sp_closure(
    top: &FuzzyTopology,
    u: &FuzzySet,
    r: Elt,
    caps: &Caps,
) -> Result<FuzzySet, CoreError> {
    check_grid_cap(top, caps)?;
    let alg = top.algebra();
    let candidates: Vec<Vec<Elt>> = u.grades().iter().map(|&g| alg.up_set(g)).collect();
    let mut acc = top.top_set();
    for v in product_sets(u, candidates) {
        if !acc.leq(&v) && is_semi_preclosed(top, &v, r) {
            acc = acc.meet(&v);
        }
        if acc == *u {
            break;
        }
    }
    Ok(acc)
}

/// Semi-pre interior with respect to a crisp level family instead of the
/// degree table: join of the family-semi-preopen sets below `u`.
pub fn level_sp_interior(
    lvl: &crate::topology::LevelTopology,
    u: &FuzzySet,
    caps: &Caps,
) -> Result<FuzzySet, CoreError> {
    let alg = u.algebra().clone();
    let size = crate::fuzzy::grid_size(u.space(), &alg);
    if size > caps.grid as u128 {
        return Err(CoreError::GridCapExceeded { size, cap: caps.grid });
    }
    let candidates: Vec<Vec<Elt>> = u.grades().iter().map(|&g| alg.down_set(g)).collect();
    let mut acc = FuzzySet::bottom(u.space().clone(), alg);
    for v in product_sets(u, candidates) {
        if !v.leq(&acc) && lvl.is_semi_preopen(&v) {
            acc = acc.join(&v);
        }
        if acc == *u {
            break;
        }
    }
    Ok(acc)
}

/// The r-open sets quasi-coincident with a fuzzy point: the point's
/// Q-neighborhoods at level `r`. The top constant always qualifies; members
/// are drawn from the table plus that constant.
#[derive(Clone, Debug)]
pub struct QNeighborhoodFamily {
    pub point: FuzzyPoint,
    pub level: Elt,
    pub members: Vec<FuzzySet>,
}

pub fn q_neighborhoods(top: &FuzzyTopology, point: &FuzzyPoint, r: Elt) -> QNeighborhoodFamily {
    debug_assert!(top.algebra().is_coprime(point.height()));
    let p = point.as_set();
    let members = top
        .open_family(r)
        .into_iter()
        .filter(|v| p.quasi_coincident(v))
        .collect();
    QNeighborhoodFamily { point: point.clone(), level: r, members }
}

/// Theta closure as the meet of the r-closed sets whose r-interior contains
/// `u`. This is the closed-family route.
pub fn theta_closure(top: &FuzzyTopology, u: &FuzzySet, r: Elt) -> FuzzySet {
    let mut acc = top.top_set();
    for v in top.closed_family(r) {
        if u.leq(&top.interior(&v, r)) {
            acc = acc.meet(&v);
        }
    }
    acc
}

/// Theta closure as the join of the theta-cluster points of `u`: the fuzzy
/// points all of whose Q-neighborhoods have closures quasi-coincident with
/// `u`. This is the cluster-point route; agreement with [`theta_closure`]
/// is a tested property.
pub fn theta_closure_via_cluster_points(top: &FuzzyTopology, u: &FuzzySet, r: Elt) -> FuzzySet {
    let alg = top.algebra().clone();
    let space = top.space().clone();
    let closures: Vec<FuzzySet> = top
        .open_family(r)
        .iter()
        .map(|v| top.closure(v, r))
        .collect();
    let opens = top.open_family(r);
    let mut grades = vec![alg.bottom(); space.len()];
    for (x, grade) in grades.iter_mut().enumerate() {
        for &height in alg.coprimes() {
            // x_height q V at the carrier only.
            let is_cluster = opens.iter().zip(&closures).all(|(v, cv)| {
                let q = !alg.leq(height, alg.complement(v.grade(x)));
                !q || cv.quasi_coincident(u)
            });
            if is_cluster {
                *grade = alg.join(*grade, height);
            }
        }
    }
    FuzzySet::from_grades(space, top.algebra().clone(), grades)
}

/// Theta interior: the join of the r-open sets whose closure stays inside
/// `u`.
pub fn theta_interior(top: &FuzzyTopology, u: &FuzzySet, r: Elt) -> FuzzySet {
    let mut acc = top.bottom_set();
    for v in top.open_family(r) {
        if top.closure(&v, r).leq(u) {
            acc = acc.join(&v);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Rational};
    use crate::fuzzy::Space;
    use std::sync::Arc;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn set(space: &Arc<Space>, alg: &Arc<Algebra>, vals: &[Rational]) -> FuzzySet {
        let grades = vals.iter().map(|&v| alg.find_rational(v).unwrap()).collect();
        FuzzySet::from_grades(space.clone(), alg.clone(), grades)
    }

    /// The two topologies of the first bundled counterexample.
    fn fixtures() -> (Arc<Algebra>, Arc<Space>, Arc<Space>, FuzzyTopology, FuzzyTopology, FuzzySet) {
        let alg = Algebra::chain([rat(1, 2), rat(3, 10), rat(1, 5), rat(1, 4), rat(9, 10), rat(7, 10)]);
        let x = Space::new("X", ["a", "b", "c"]);
        let y = Space::new("Y", ["x", "y", "z"]);
        let u = set(&x, &alg, &[rat(1, 2), rat(3, 10), rat(1, 5)]);
        let v = set(&y, &alg, &[rat(9, 10), rat(1, 1), rat(7, 10)]);
        let w = set(&y, &alg, &[rat(1, 5), rat(9, 10), rat(3, 10)]);
        let half = alg.find_rational(rat(1, 2)).unwrap();
        let quarter = alg.find_rational(rat(1, 4)).unwrap();
        let t1 = FuzzyTopology::new(x.clone(), alg.clone(), [(u.clone(), half)]);
        let t2 = FuzzyTopology::new(y.clone(), alg.clone(), [(v, half), (w, quarter)]);
        (alg, x, y, t1, t2, u)
    }

    #[test]
    fn image_of_the_single_open_is_semi_preopen_in_the_codomain() {
        let (alg, _, y, _, t2, _) = fixtures();
        let half = alg.find_rational(rat(1, 2)).unwrap();
        let g = set(&y, &alg, &[rat(3, 10), rat(1, 5), rat(1, 2)]);
        // Closure of g at 1/2 is the top constant, so the test passes.
        assert_eq!(t2.closure(&g, half), t2.top_set());
        assert!(is_semi_preopen(&t2, &g, half));
        assert!(classify_set(&t2, &g, half).semi_preopen);
    }

    #[test]
    fn complement_of_the_larger_open_is_not_semi_preopen() {
        let (alg, _, y, _, t2, _) = fixtures();
        let half = alg.find_rational(rat(1, 2)).unwrap();
        let vc = set(&y, &alg, &[rat(1, 10), rat(0, 1), rat(3, 10)]);
        assert!(!is_semi_preopen(&t2, &vc, half));
        assert!(t2.interior(&vc, half).is_bottom());
    }

    #[test]
    fn top_is_regular_open_everywhere() {
        let (alg, _, _, t1, t2, _) = fixtures();
        for r in alg.nonzero() {
            assert!(classify_set(&t1, &t1.top_set(), r).regular_open);
            assert!(classify_set(&t2, &t2.top_set(), r).regular_open);
        }
    }

    #[test]
    fn sp_interior_of_a_semi_preopen_set_is_itself() {
        let (alg, _, y, _, t2, _) = fixtures();
        let half = alg.find_rational(rat(1, 2)).unwrap();
        let m = set(&y, &alg, &[rat(7, 10), rat(4, 5), rat(1, 2)]);
        assert!(is_semi_preopen(&t2, &m, half));
        assert_eq!(sp_interior(&t2, &m, half, &Caps::default()).unwrap(), m);
    }

    #[test]
    fn sp_operators_fix_the_constants() {
        let (alg, _, _, t1, _, _) = fixtures();
        let caps = Caps::default();
        for r in alg.nonzero() {
            assert!(sp_interior(&t1, &t1.bottom_set(), r, &caps).unwrap().is_bottom());
            assert_eq!(sp_closure(&t1, &t1.top_set(), r, &caps).unwrap(), t1.top_set());
        }
    }

    #[test]
    fn sp_interior_refuses_oversized_grids() {
        let (_, _, _, t1, _, _) = fixtures();
        let caps = Caps { grid: 10, ..Caps::default() };
        let err = sp_interior(&t1, &t1.top_set(), t1.algebra().top(), &caps).unwrap_err();
        assert!(matches!(err, CoreError::GridCapExceeded { .. }));
    }

    #[test]
    fn q_neighborhoods_of_a_high_point_contain_the_open_and_top() {
        let (alg, x, _, t1, _, u) = fixtures();
        let half = alg.find_rational(rat(1, 2)).unwrap();
        let p = FuzzyPoint::new(x, alg.clone(), 0, alg.find_rational(rat(9, 10)).unwrap()).unwrap();
        let fam = q_neighborhoods(&t1, &p, half);
        assert_eq!(fam.members.len(), 2);
        assert!(fam.members.iter().any(|s| s.is_top()));
        assert!(fam.members.contains(&u));
    }

    #[test]
    fn q_neighborhoods_in_the_indiscrete_space_are_only_top() {
        let (alg, x, _, _, _, _) = fixtures();
        let t = FuzzyTopology::indiscrete(x.clone(), alg.clone());
        let p = FuzzyPoint::new(x, alg.clone(), 1, alg.top()).unwrap();
        for r in alg.nonzero() {
            let fam = q_neighborhoods(&t, &p, r);
            assert_eq!(fam.members.len(), 1);
            assert!(fam.members[0].is_top());
        }
    }

    #[test]
    fn theta_closure_of_an_open_set_equals_its_closure() {
        let (alg, _, _, t1, _, u) = fixtures();
        let half = alg.find_rational(rat(1, 2)).unwrap();
        let expect = t1.closure(&u, half);
        assert_eq!(theta_closure(&t1, &u, half), expect);
        assert_eq!(theta_closure_via_cluster_points(&t1, &u, half), expect);
        assert_eq!(expect, u.complement());
    }

    #[test]
    fn theta_closure_of_bottom_is_bottom() {
        let (alg, _, _, t1, t2, _) = fixtures();
        for t in [&t1, &t2] {
            for r in alg.nonzero() {
                assert!(theta_closure(t, &t.bottom_set(), r).is_bottom());
            }
        }
    }

    #[test]
    fn theta_interior_example_and_duality() {
        let (alg, _, _, t1, _, u) = fixtures();
        let half = alg.find_rational(rat(1, 2)).unwrap();
        let uc = u.complement();
        assert_eq!(theta_interior(&t1, &uc, half), u);
        assert_eq!(theta_interior(&t1, &t1.top_set(), half), t1.top_set());
        // Duality against the cluster route on a sample of sets.
        for s in [u.clone(), uc.clone(), t1.bottom_set(), t1.top_set()] {
            let dual = theta_closure(&t1, &s.complement(), half).complement();
            assert_eq!(theta_interior(&t1, &s, half), dual);
        }
    }
}
