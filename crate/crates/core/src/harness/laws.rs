//! Exhaustive operator-law and implication suites over finite models.
//!
//! The closure laws (bottom fixed, extensive, join-distributive, monotone
//! in the level, idempotent), the interior laws (the complement duality,
//! top fixed, contractive, meet-distributive, antitone in the level,
//! idempotent, and the conditional regularity transfer), and the theta
//! items (the two routes agree, cluster membership matches, closure below
//! theta closure, agreement on opens and preopens, and the reinterpreted
//! regular-closed item) all run over every grid set and level. The
//! implication suites hard-assert the one-directional class implications.

use super::cache::{SpaceGrid, TopologyCache};
use super::model::Model;
use crate::mapclass::{self, MapClass};
use crate::setclass;
use crate::topology::FuzzyTopology;
use crate::{Caps, CoreError};
use std::sync::Arc;

/// One violated law with the data that violates it.
#[derive(Clone, Debug)]
pub struct LawFailure {
    pub law: &'static str,
    pub detail: String,
}

/// Counters plus the failures; `checks` counts individual law instances.
#[derive(Clone, Debug, Default)]
pub struct LawStats {
    pub checks: u64,
    pub failures: Vec<LawFailure>,
}

impl LawStats {
    fn check(&mut self, law: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(LawFailure { law, detail: detail() });
        }
    }

    pub fn merge(&mut self, other: LawStats) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// Closure/interior laws and theta items over one topology, exhaustively on
/// its grid. The reinterpreted theta item is flagged in the law name.
pub fn operator_laws(top: &FuzzyTopology, caps: &Caps) -> Result<LawStats, CoreError> {
    let alg = top.algebra().clone();
    let grid = Arc::new(SpaceGrid::new(top.space(), &alg, caps)?);
    let mut cache = TopologyCache::new(top, grid.clone());
    let mut stats = LawStats::default();
    let n = grid.len();
    let bottom_idx = 0;
    let top_idx = n - 1;

    let levels: Vec<_> = alg.nonzero().collect();
    for &r in &levels {
        let cl: Vec<usize> = (0..n).map(|i| cache.closure_idx(r, i)).collect();
        let int: Vec<usize> = (0..n).map(|i| cache.interior_idx(r, i)).collect();
        let compl: Vec<usize> = (0..n).map(|i| grid.complement_idx(i)).collect();

        stats.check("closure-bottom-fixed", cl[bottom_idx] == bottom_idx, || {
            format!("level {}", alg.display(r))
        });
        stats.check("interior-top-fixed", int[top_idx] == top_idx, || {
            format!("level {}", alg.display(r))
        });

        for i in 0..n {
            stats.check("closure-extensive", grid.leq_idx(i, cl[i]), || {
                format!("set {} at {}", grid.set(i), alg.display(r))
            });
            stats.check("interior-contractive", grid.leq_idx(int[i], i), || {
                format!("set {} at {}", grid.set(i), alg.display(r))
            });
            stats.check("closure-idempotent", cl[cl[i]] == cl[i], || {
                format!("set {} at {}", grid.set(i), alg.display(r))
            });
            stats.check("interior-idempotent", int[int[i]] == int[i], || {
                format!("set {} at {}", grid.set(i), alg.display(r))
            });
            stats.check("interior-closure-duality", int[compl[i]] == compl[cl[i]], || {
                format!("set {} at {}", grid.set(i), alg.display(r))
            });
            // Conditional regularity transfer: when the interior of the
            // closure recovers the set, the closure of the interior recovers
            // the complement.
            if int[cl[i]] == i {
                stats.check("regularity-transfer", cl[int[compl[i]]] == compl[i], || {
                    format!("set {} at {}", grid.set(i), alg.display(r))
                });
            }
        }

        // Binary distribution laws over unordered pairs.
        for i in 0..n {
            for j in i..n {
                let join_idx = grid.join_idx(i, j);
                let cl_join = grid.join_idx(cl[i], cl[j]);
                stats.check("closure-joins", cl[join_idx] == cl_join, || {
                    format!("sets {} | {} at {}", grid.set(i), grid.set(j), alg.display(r))
                });
                let meet_idx = grid.meet_idx(i, j);
                let int_meet = grid.meet_idx(int[i], int[j]);
                stats.check("interior-meets", int[meet_idx] == int_meet, || {
                    format!("sets {} & {} at {}", grid.set(i), grid.set(j), alg.display(r))
                });
            }
        }
    }

    // Monotonicity across levels.
    for &r in &levels {
        for &s in &levels {
            if !alg.leq(r, s) || r == s {
                continue;
            }
            for i in 0..n {
                let (cr, cs) = (cache.closure_idx(r, i), cache.closure_idx(s, i));
                stats.check("closure-grows-with-level", grid.leq_idx(cr, cs), || {
                    format!(
                        "set {} at {} <= {}",
                        grid.set(i),
                        alg.display(r),
                        alg.display(s)
                    )
                });
                let (ir, is) = (cache.interior_idx(r, i), cache.interior_idx(s, i));
                stats.check("interior-shrinks-with-level", grid.leq_idx(is, ir), || {
                    format!(
                        "set {} at {} <= {}",
                        grid.set(i),
                        alg.display(r),
                        alg.display(s)
                    )
                });
            }
        }
    }

    stats.merge(theta_laws(top, &mut cache)?);
    Ok(stats)
}

/// Just the two-route agreement of the theta closure, on every grid set
/// and level: the cluster-point join against the closed-family meet.
pub fn theta_agreement(top: &FuzzyTopology, caps: &Caps) -> Result<LawStats, CoreError> {
    let alg = top.algebra().clone();
    let grid = Arc::new(SpaceGrid::new(top.space(), &alg, caps)?);
    let mut cache = TopologyCache::new(top, grid.clone());
    let mut stats = LawStats::default();
    for r in alg.nonzero() {
        for i in 0..grid.len() {
            let u = grid.set(i);
            let via_clusters = setclass::theta_closure_via_cluster_points(top, u, r);
            let via_family = cache.theta_closure_idx(r, i);
            stats.check("theta-routes-agree", grid.index(&via_clusters) == via_family, || {
                format!(
                    "set {} at {}: clusters {} vs closed-family {}",
                    u,
                    alg.display(r),
                    via_clusters,
                    grid.set(via_family)
                )
            });
        }
    }
    Ok(stats)
}

/// The theta items, including the two-route agreement.
fn theta_laws(top: &FuzzyTopology, cache: &mut TopologyCache) -> Result<LawStats, CoreError> {
    let alg = top.algebra().clone();
    let grid = cache.grid().clone();
    let mut stats = LawStats::default();
    let n = grid.len();

    for r in alg.nonzero() {
        let theta: Vec<usize> = (0..n).map(|i| cache.theta_closure_idx(r, i)).collect();
        let cl: Vec<usize> = (0..n).map(|i| cache.closure_idx(r, i)).collect();
        let int: Vec<usize> = (0..n).map(|i| cache.interior_idx(r, i)).collect();
        let opens = top.open_family(r);
        let closures: Vec<_> = opens.iter().map(|v| top.closure(v, r)).collect();

        for i in 0..n {
            let u = grid.set(i);
            // (1) the closed-family route equals the cluster-point route.
            let via_clusters = setclass::theta_closure_via_cluster_points(top, u, r);
            stats.check("theta-routes-agree", grid.index(&via_clusters) == theta[i], || {
                format!(
                    "set {} at {}: clusters {} vs closed-family {}",
                    u,
                    alg.display(r),
                    via_clusters,
                    grid.set(theta[i])
                )
            });

            // (2) cluster membership matches the theta closure pointwise.
            for x in 0..top.space().len() {
                for &height in alg.coprimes() {
                    let is_cluster = opens.iter().zip(&closures).all(|(v, cv)| {
                        let q = !alg.leq(height, alg.complement(v.grade(x)));
                        !q || cv.quasi_coincident(u)
                    });
                    let in_theta = alg.leq(height, grid.set(theta[i]).grade(x));
                    stats.check("theta-cluster-membership", is_cluster == in_theta, || {
                        format!(
                            "set {} point {}@{} at {}",
                            u,
                            top.space().point(x),
                            alg.display(height),
                            alg.display(r)
                        )
                    });
                }
            }

            // (3) closure below theta closure.
            stats.check("closure-below-theta", grid.leq_idx(cl[i], theta[i]), || {
                format!("set {} at {}", u, alg.display(r))
            });

            // (4) equality on r-open sets.
            if alg.leq(r, top.degree(u)) {
                stats.check("theta-equals-closure-on-opens", theta[i] == cl[i], || {
                    format!("set {} at {}", u, alg.display(r))
                });
            }

            // (5) equality on preopen sets.
            if grid.leq_idx(i, int[cl[i]]) {
                stats.check("theta-equals-closure-on-preopens", theta[i] == cl[i], || {
                    format!("set {} at {}", u, alg.display(r))
                });
            }

            // (6, reinterpreted) preopen and regular closed force the theta
            // closure back onto the set.
            if grid.leq_idx(i, int[cl[i]]) && cl[int[i]] == i {
                stats.check("theta-fixes-preopen-regular-closed(reinterpreted)", theta[i] == i, || {
                    format!("set {} at {}", u, alg.display(r))
                });
            }

            // Theta interior duality against the closed-family route.
            let ti = cache.theta_interior_idx(r, i);
            let dual = cache.theta_closure_idx(r, grid.complement_idx(i));
            stats.check(
                "theta-interior-duality",
                ti == grid.complement_idx(dual),
                || format!("set {} at {}", u, alg.display(r)),
            );
        }
    }
    Ok(stats)
}

/// The openness-class implication chain on every grid set and level, and
/// the degree consequence of regular openness.
pub fn set_class_chain(top: &FuzzyTopology, caps: &Caps) -> Result<LawStats, CoreError> {
    let alg = top.algebra().clone();
    let grid = SpaceGrid::new(top.space(), &alg, caps)?;
    let mut stats = LawStats::default();
    for r in alg.nonzero() {
        for u in grid.sets() {
            let c = setclass::classify_set(top, u, r);
            let chain = [
                ("open-implies-alpha", !c.open || c.alpha_open),
                ("alpha-implies-preopen", !c.alpha_open || c.preopen),
                ("preopen-implies-semi-preopen", !c.preopen || c.semi_preopen),
                ("regular-open-implies-open", !c.regular_open || c.open),
                ("closed-implies-alpha-closed", !c.closed || c.alpha_closed),
                ("alpha-closed-implies-preclosed", !c.alpha_closed || c.preclosed),
                ("preclosed-implies-semi-preclosed", !c.preclosed || c.semi_preclosed),
                ("regular-closed-implies-closed", !c.regular_closed || c.closed),
            ];
            for (law, ok) in chain {
                stats.check(law, ok, || format!("set {} at {}", u, alg.display(r)));
            }
        }
    }
    Ok(stats)
}

/// The proven one-directional map-class implications, hard-asserted.
pub const MAP_IMPLICATIONS: &[(MapClass, MapClass)] = &[
    (MapClass::WeaklyOpen, MapClass::WeaklySemiPreopen),
    (MapClass::SemiPreopenMap, MapClass::WeaklySemiPreopen),
    (MapClass::WeaklyClosed, MapClass::WeaklySemiPreclosed),
    (MapClass::AlmostOpen, MapClass::WeaklySemiPreopen),
    (MapClass::ContraSemiPreclosed, MapClass::WeaklySemiPreopen),
    (MapClass::ContraSemiPreopen, MapClass::WeaklySemiPreclosed),
];

/// Map-class implications on one model: the six single implications plus
/// the composition rule (weakly semi-preopen and strongly continuous make
/// the map semi-preopen).
pub fn implication_suite(m: &Model, caps: &Caps) -> Result<LawStats, CoreError> {
    let classification = mapclass::classify(&m.map, &m.t1, &m.t2, caps)?;
    let mut stats = LawStats::default();
    for &(a, b) in MAP_IMPLICATIONS {
        stats.check("map-implication", !classification.holds(a) || classification.holds(b), || {
            format!("{}: {} holds but {} fails", m.name, a, b)
        });
    }
    let composed = classification.holds(MapClass::WeaklySemiPreopen)
        && classification.holds(MapClass::StronglyContinuous);
    stats.check(
        "composition-rule",
        !composed || classification.holds(MapClass::SemiPreopenMap),
        || format!("{}: weakly semi-preopen and strongly continuous but not semi-preopen", m.name),
    );
    Ok(stats)
}

/// Validation agrees with level-by-level crisp validity.
pub fn level_equivalence(top: &FuzzyTopology, caps: &Caps) -> Result<LawStats, CoreError> {
    let alg = top.algebra().clone();
    let mut stats = LawStats::default();
    let graded_ok = top.validate(caps).ok;
    let levels_ok = alg
        .coprimes()
        .iter()
        .all(|&a| top.level(a).validate().is_ok());
    stats.check("level-topology-equivalence", graded_ok == levels_ok, || {
        format!("graded {graded_ok} vs levels {levels_ok}")
    });
    Ok(stats)
}
