//! Separation and connectedness predicates, and the two application
//! theorems that connect them to the map classes.

use super::cache::{any_in_interval, SpaceGrid, TopologyCache};
use super::model::Model;
use crate::algebra::Elt;
use crate::fuzzy::{FuzzyPoint, FuzzySet};
use crate::mapclass::{self, MapClass};
use crate::setclass;
use crate::{Caps, CoreError};
use std::sync::Arc;

/// Two sets are strongly separated at `r` when some pair of r-open sets
/// covers them with non-quasi-coincident closures. Exhaustive over pairs
/// from the open family.
pub fn strongly_separated(
    top: &crate::topology::FuzzyTopology,
    u: &FuzzySet,
    v: &FuzzySet,
    r: Elt,
) -> bool {
    let opens = top.open_family(r);
    let closures: Vec<FuzzySet> = opens.iter().map(|o| top.closure(o, r)).collect();
    for (h, ch) in opens.iter().zip(&closures) {
        if !u.leq(h) {
            continue;
        }
        for (n, cn) in opens.iter().zip(&closures) {
            if v.leq(n) && !ch.quasi_coincident(cn) {
                return true;
            }
        }
    }
    false
}

/// Witnessed verdict for the point-separation property.
#[derive(Clone, Debug)]
pub struct SeparationVerdict {
    pub holds: bool,
    /// On failure: the two points that no semi-preopen pair separates.
    pub witness: Option<(FuzzyPoint, FuzzyPoint)>,
}

/// Point separation by semi-preopen sets: every two fuzzy points with
/// distinct carriers admit semi-preopen `U`, `V` with the first point in
/// `U`, `U` below the complement of the second point, symmetrically for
/// `V`, and `U` not quasi-coincident with `V`. Existentials search the
/// full grid, restricted to the interval each condition already forces.
pub fn is_semi_pre_t2(
    top: &crate::topology::FuzzyTopology,
    r: Elt,
    caps: &Caps,
) -> Result<SeparationVerdict, CoreError> {
    let alg = top.algebra().clone();
    let space = top.space().clone();
    let grid = SpaceGrid::new(&space, &alg, caps)?;
    let mut cache = TopologyCache::new(top, Arc::new(grid));

    for p in 0..space.len() {
        for q in 0..space.len() {
            if p == q {
                continue;
            }
            for &l1 in alg.coprimes() {
                for &l2 in alg.coprimes() {
                    let p1 = FuzzyPoint::new(space.clone(), alg.clone(), p, l1).unwrap();
                    let p2 = FuzzyPoint::new(space.clone(), alg.clone(), q, l2).unwrap();
                    if !separated_points(&mut cache, &p1, &p2, r) {
                        return Ok(SeparationVerdict { holds: false, witness: Some((p1, p2)) });
                    }
                }
            }
        }
    }
    Ok(SeparationVerdict { holds: true, witness: None })
}

fn separated_points(
    cache: &mut TopologyCache,
    p1: &FuzzyPoint,
    p2: &FuzzyPoint,
    r: Elt,
) -> bool {
    let s1 = p1.as_set();
    let s2 = p2.as_set();
    let hi1 = s2.complement();
    let hi2 = s1.complement();
    cache.ensure_level(r);
    let grid = cache.grid().clone();
    let sp_open = cache.sp_open_slice(r);
    // U in [point1, point2'], V in [point2, point1'], both semi-preopen,
    // with V below U'.
    any_in_interval(&grid, s1.grades(), hi1.grades(), |u| {
        if !sp_open[u] {
            return false;
        }
        let bound_idx = grid.meet_idx(grid.index(&hi2), grid.complement_idx(u));
        let bound: Vec<Elt> = (0..grid.points()).map(|p| grid.grade(bound_idx, p)).collect();
        any_in_interval(&grid, s2.grades(), &bound, |v| sp_open[v])
    })
}

/// Two nonempty sets are r-separated when neither quasi-coincides with the
/// other's closure.
pub fn r_separated(
    top: &crate::topology::FuzzyTopology,
    u: &FuzzySet,
    v: &FuzzySet,
    r: Elt,
) -> Result<bool, CoreError> {
    if u.is_bottom() || v.is_bottom() {
        return Err(CoreError::EmptySeparand);
    }
    Ok(!u.quasi_coincident(&top.closure(v, r)) && !v.quasi_coincident(&top.closure(u, r)))
}

/// The two routes to semi-pre separation: via semi-pre closures, and via a
/// covering pair of semi-preopen sets. Agreement of the two is a tested
/// property of the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SemiPreSeparation {
    pub by_closures: bool,
    pub by_families: bool,
}

pub fn semi_preseparated(
    top: &crate::topology::FuzzyTopology,
    u: &FuzzySet,
    v: &FuzzySet,
    r: Elt,
    caps: &Caps,
) -> Result<SemiPreSeparation, CoreError> {
    if u.is_bottom() || v.is_bottom() {
        return Err(CoreError::EmptySeparand);
    }
    let spc_u = setclass::sp_closure(top, u, r, caps)?;
    let spc_v = setclass::sp_closure(top, v, r, caps)?;
    let by_closures =
        !u.quasi_coincident(&spc_v) && !v.quasi_coincident(&spc_u);

    // Existence of semi-preopen H in [u, v'] and N in [v, u'].
    let grid = SpaceGrid::new(top.space(), top.algebra(), caps)?;
    let mut cache = TopologyCache::new(top, Arc::new(grid));
    cache.ensure_level(r);
    let sp_open = cache.sp_open_slice(r);
    let grid = cache.grid();
    let h_exists = any_in_interval(grid, u.grades(), v.complement().grades(), |h| sp_open[h]);
    let n_exists = any_in_interval(grid, v.grades(), u.complement().grades(), |n| sp_open[n]);
    Ok(SemiPreSeparation { by_closures, by_families: h_exists && n_exists })
}

/// Connectedness verdict with the separating pair on failure.
#[derive(Clone, Debug)]
pub struct ConnectednessVerdict {
    pub connected: bool,
    pub witness: Option<(FuzzySet, FuzzySet)>,
}

/// Grid pair cap for the connectedness searches, over and above the
/// general grid cap.
const CONNECTEDNESS_GRID_CAP: u64 = 250;

fn connectedness_grid(
    top: &crate::topology::FuzzyTopology,
    caps: &Caps,
) -> Result<SpaceGrid, CoreError> {
    let tight = Caps { grid: caps.grid.min(CONNECTEDNESS_GRID_CAP), ..*caps };
    SpaceGrid::new(top.space(), top.algebra(), &tight)
}

/// A space is r-connected when the top constant is not the join of two
/// nonempty r-separated sets. Exhaustive over unordered grid pairs; the
/// witness pair is reported larger-first.
pub fn r_connected(
    top: &crate::topology::FuzzyTopology,
    r: Elt,
    caps: &Caps,
) -> Result<ConnectednessVerdict, CoreError> {
    let grid = connectedness_grid(top, caps)?;
    let closures: Vec<FuzzySet> = grid.sets().iter().map(|s| top.closure(s, r)).collect();
    for i in 1..grid.len() {
        for j in i..grid.len() {
            let (u, v) = (grid.set(i), grid.set(j));
            if !u.join(v).is_top() {
                continue;
            }
            if !u.quasi_coincident(&closures[j]) && !v.quasi_coincident(&closures[i]) {
                let (first, second) = if v.grades() > u.grades() { (v, u) } else { (u, v) };
                return Ok(ConnectednessVerdict {
                    connected: false,
                    witness: Some((first.clone(), second.clone())),
                });
            }
        }
    }
    Ok(ConnectednessVerdict { connected: true, witness: None })
}

/// Semi-pre connectedness: the same search with the semi-pre closure
/// separation.
pub fn semi_preconnected(
    top: &crate::topology::FuzzyTopology,
    r: Elt,
    caps: &Caps,
) -> Result<ConnectednessVerdict, CoreError> {
    let grid = connectedness_grid(top, caps)?;
    let mut cache = TopologyCache::new(top, Arc::new(grid));
    let n = cache.grid().len();
    let mut spc = Vec::with_capacity(n);
    for i in 0..n {
        spc.push(cache.sp_closure_idx(r, i));
    }
    let grid = cache.grid().clone();
    for i in 1..n {
        for j in i..n {
            let (u, v) = (grid.set(i), grid.set(j));
            if !u.join(v).is_top() {
                continue;
            }
            if !u.quasi_coincident(grid.set(spc[j])) && !v.quasi_coincident(grid.set(spc[i])) {
                let (first, second) = if v.grades() > u.grades() { (v, u) } else { (u, v) };
                return Ok(ConnectednessVerdict {
                    connected: false,
                    witness: Some((first.clone(), second.clone())),
                });
            }
        }
    }
    Ok(ConnectednessVerdict { connected: true, witness: None })
}

/// Outcome of one application-theorem check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremOutcome {
    /// Hypotheses held and the conclusion held.
    Pass,
    /// Hypotheses held but the conclusion failed; the witness explains.
    Fail(String),
    /// Some hypothesis failed; the conclusion is reported but not asserted.
    Vacuous(&'static str),
}

#[derive(Clone, Debug)]
pub struct ApplicationReport {
    pub hypotheses: Vec<(&'static str, bool)>,
    pub conclusion: bool,
    pub outcome: TheoremOutcome,
    pub notes: Vec<&'static str>,
}

/// Surjective weakly semi-preclosed maps with strongly separated point
/// preimages have a point-separated codomain. The conclusion is read on
/// the codomain space.
pub fn check_separation_theorem(
    m: &Model,
    r: Elt,
    caps: &Caps,
) -> Result<ApplicationReport, CoreError> {
    let wspc = mapclass::is_weakly_semi_preclosed(&m.map, &m.t1, &m.t2, caps)?.holds;
    let surjective = m.map.is_surjective();
    let alg = &m.algebra;
    let mut fibers_separated = true;
    'outer: for y1 in 0..m.t2.space().len() {
        for y2 in 0..m.t2.space().len() {
            if y1 == y2 {
                continue;
            }
            for &b1 in alg.coprimes() {
                for &b2 in alg.coprimes() {
                    let f1 = m.map.preimage(
                        &FuzzyPoint::new(m.t2.space().clone(), alg.clone(), y1, b1)
                            .unwrap()
                            .as_set(),
                    );
                    let f2 = m.map.preimage(
                        &FuzzyPoint::new(m.t2.space().clone(), alg.clone(), y2, b2)
                            .unwrap()
                            .as_set(),
                    );
                    if !strongly_separated(&m.t1, &f1, &f2, r) {
                        fibers_separated = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    let conclusion = is_semi_pre_t2(&m.t2, r, caps)?;
    let hypotheses = vec![
        ("weakly_semi_preclosed", wspc),
        ("surjective", surjective),
        ("fibers_strongly_separated", fibers_separated),
    ];
    let outcome = if !(wspc && surjective && fibers_separated) {
        TheoremOutcome::Vacuous("a hypothesis failed")
    } else if conclusion.holds {
        TheoremOutcome::Pass
    } else {
        let (p1, p2) = conclusion.witness.as_ref().unwrap();
        TheoremOutcome::Fail(format!("points {p1} and {p2} are not separated"))
    };
    Ok(ApplicationReport {
        hypotheses,
        conclusion: conclusion.holds,
        outcome,
        notes: vec!["conclusion read on the codomain space"],
    })
}

/// Injective weakly semi-preopen strongly continuous maps onto a semi-pre
/// connected codomain have a connected domain.
pub fn check_connectedness_theorem(
    m: &Model,
    r: Elt,
    caps: &Caps,
) -> Result<ApplicationReport, CoreError> {
    let injective = m.map.is_injective();
    let surjective = m.map.is_surjective();
    let wspo = mapclass::is_weakly_semi_preopen(&m.map, &m.t1, &m.t2, caps)?.holds;
    let strongly =
        mapclass::evaluate(&m.map, &m.t1, &m.t2, MapClass::StronglyContinuous, caps)?.holds;
    let codomain_connected = semi_preconnected(&m.t2, r, caps)?.connected;

    let conclusion = r_connected(&m.t1, r, caps)?;
    let hypotheses = vec![
        ("injective", injective),
        ("surjective", surjective),
        ("weakly_semi_preopen", wspo),
        ("strongly_continuous", strongly),
        ("codomain_semi_preconnected", codomain_connected),
    ];
    let all = injective && surjective && wspo && strongly && codomain_connected;
    let outcome = if !all {
        TheoremOutcome::Vacuous("a hypothesis failed")
    } else if conclusion.connected {
        TheoremOutcome::Pass
    } else {
        let (u, v) = conclusion.witness.as_ref().unwrap();
        TheoremOutcome::Fail(format!("separated cover {u} | {v}"))
    };
    Ok(ApplicationReport {
        hypotheses,
        conclusion: conclusion.connected,
        outcome,
        notes: vec![],
    })
}
