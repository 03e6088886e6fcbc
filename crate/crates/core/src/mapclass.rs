//! Function classes for maps between graded spaces.
//!
//! Every class is decided directly from its defining inequality, quantified
//! over the relevant domain: table opens (or closeds) plus the two constants
//! for the weak and contra classes, the full grid for the strongly
//! continuous and almost open classes, and the codomain table for
//! continuity. A failed class always carries a witness recording the set,
//! the level, and both sides of the violated inequality, so every negative
//! verdict is auditable.
//!
//! Witness selection is canonical and reproducible: sets are visited in
//! canonical order (constants, then the sorted table, or ascending grid
//! order for grid passes) and levels from the top of the algebra downward;
//! the first failure wins.

use crate::algebra::Elt;
use crate::fuzzy::{all_sets, FuzzyMap, FuzzySet};
use crate::setclass::{
    is_regular_open, is_semi_preclosed, is_semi_preopen, level_sp_interior, sp_closure,
    sp_interior,
};
use crate::topology::FuzzyTopology;
use crate::{Caps, CoreError};
use std::fmt;
use std::str::FromStr;

/// The function classes the classifier decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapClass {
    Continuous,
    SemiPreopenMap,
    SemiPreclosedMap,
    AlmostOpen,
    StronglyContinuous,
    WeaklyOpen,
    WeaklyClosed,
    WeaklySemiPreopen,
    WeaklySemiPreclosed,
    ContraSemiPreopen,
    ContraSemiPreclosed,
}

impl MapClass {
    pub const ALL: [MapClass; 11] = [
        MapClass::Continuous,
        MapClass::SemiPreopenMap,
        MapClass::SemiPreclosedMap,
        MapClass::AlmostOpen,
        MapClass::StronglyContinuous,
        MapClass::WeaklyOpen,
        MapClass::WeaklyClosed,
        MapClass::WeaklySemiPreopen,
        MapClass::WeaklySemiPreclosed,
        MapClass::ContraSemiPreopen,
        MapClass::ContraSemiPreclosed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapClass::Continuous => "continuous",
            MapClass::SemiPreopenMap => "semi_preopen_map",
            MapClass::SemiPreclosedMap => "semi_preclosed_map",
            MapClass::AlmostOpen => "almost_open",
            MapClass::StronglyContinuous => "strongly_continuous",
            MapClass::WeaklyOpen => "weakly_open",
            MapClass::WeaklyClosed => "weakly_closed",
            MapClass::WeaklySemiPreopen => "weakly_semi_preopen",
            MapClass::WeaklySemiPreclosed => "weakly_semi_preclosed",
            MapClass::ContraSemiPreopen => "contra_semi_preopen",
            MapClass::ContraSemiPreclosed => "contra_semi_preclosed",
        }
    }

    /// True for classes quantified over the full grid rather than the table.
    pub fn is_grid_quantified(self) -> bool {
        matches!(self, MapClass::AlmostOpen | MapClass::StronglyContinuous)
    }
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapClass {
    type Err = String;

    fn from_str(s: &str) -> Result<MapClass, String> {
        MapClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown map class `{s}`"))
    }
}

/// One side of a violated inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSide {
    Set(FuzzySet),
    Grade(String),
}

impl fmt::Display for WitnessSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessSide::Set(s) => write!(f, "{s}"),
            WitnessSide::Grade(g) => write!(f, "{g}"),
        }
    }
}

/// Where and how a class fails: the quantified set, the level, and the two
/// sides of the defining inequality at the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapWitness {
    pub set: FuzzySet,
    pub level: Option<Elt>,
    pub lhs: WitnessSide,
    pub rhs: WitnessSide,
}

impl MapWitness {
    pub fn level_label(&self) -> Option<String> {
        self.level.map(|r| self.set.algebra().display(r))
    }
}

impl fmt::Display for MapWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "set={}", self.set)?;
        if let Some(l) = self.level_label() {
            write!(f, " level={l}")?;
        }
        write!(f, " lhs={} rhs={}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub class: MapClass,
    pub holds: bool,
    pub witness: Option<MapWitness>,
}

impl ClassVerdict {
    fn pass(class: MapClass) -> ClassVerdict {
        ClassVerdict { class, holds: true, witness: None }
    }

    fn fail(class: MapClass, witness: MapWitness) -> ClassVerdict {
        ClassVerdict { class, holds: false, witness: Some(witness) }
    }
}

/// Verdicts for every class, in the canonical order of [`MapClass::ALL`].
#[derive(Clone, Debug)]
pub struct MapClassification {
    pub verdicts: Vec<ClassVerdict>,
}

impl MapClassification {
    pub fn get(&self, class: MapClass) -> &ClassVerdict {
        self.verdicts.iter().find(|v| v.class == class).expect("all classes evaluated")
    }

    pub fn holds(&self, class: MapClass) -> bool {
        self.get(class).holds
    }
}

/// One checked instance of a class's defining inequality.
#[derive(Clone, Debug)]
pub struct TrailEntry {
    pub set: FuzzySet,
    pub level: Elt,
    pub holds: bool,
    pub lhs: WitnessSide,
    pub rhs: WitnessSide,
}

/// Table opens plus the two constants, with their openness degrees, in
/// canonical order: bottom, top, then the sorted table.
pub(crate) fn opens_with_degree(t: &FuzzyTopology) -> Vec<(FuzzySet, Elt)> {
    let mut out = vec![
        (t.bottom_set(), t.degree(&t.bottom_set())),
        (t.top_set(), t.degree(&t.top_set())),
    ];
    for (s, d) in t.table() {
        if !s.is_bottom() && !s.is_top() {
            out.push((s.clone(), *d));
        }
    }
    out
}

/// Sets with a nonzero degree of closedness: complements of the opens,
/// paired with that closedness degree, in the order of [`opens_with_degree`].
pub(crate) fn closeds_with_degree(t: &FuzzyTopology) -> Vec<(FuzzySet, Elt)> {
    opens_with_degree(t)
        .into_iter()
        .map(|(s, d)| (s.complement(), d))
        .collect()
}

struct Quantified<'a> {
    map: &'a FuzzyMap,
    t1: &'a FuzzyTopology,
    t2: &'a FuzzyTopology,
    caps: Caps,
}

type CheckOutcome = Result<Option<(WitnessSide, WitnessSide)>, CoreError>;

impl<'a> Quantified<'a> {
    /// Run `check` over every (set, level) pair from `domain` whose degree
    /// clears the level; levels descend so the first failure is the one at
    /// the highest level.
    fn first_failure(
        &self,
        domain: &[(FuzzySet, Elt)],
        mut check: impl FnMut(&FuzzySet, Elt) -> CheckOutcome,
    ) -> Result<Option<MapWitness>, CoreError> {
        let alg = self.t1.algebra();
        for (u, d) in domain {
            for r in alg.nonzero_descending() {
                if !alg.leq(r, *d) {
                    continue;
                }
                if let Some((lhs, rhs)) = check(u, r)? {
                    return Ok(Some(MapWitness {
                        set: u.clone(),
                        level: Some(r),
                        lhs,
                        rhs,
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Run `check` over the full domain grid (ascending) and all nonzero
    /// levels (descending), with an optional per-(set, level) filter.
    fn first_grid_failure(
        &self,
        filter: impl Fn(&FuzzySet, Elt) -> bool,
        mut check: impl FnMut(&FuzzySet, Elt) -> CheckOutcome,
    ) -> Result<Option<MapWitness>, CoreError> {
        let alg = self.t1.algebra().clone();
        let size = crate::fuzzy::grid_size(self.t1.space(), &alg);
        if size > self.caps.grid as u128 {
            return Err(CoreError::GridCapExceeded { size, cap: self.caps.grid });
        }
        for u in all_sets(self.t1.space(), &alg) {
            for r in alg.nonzero_descending() {
                if !filter(&u, r) {
                    continue;
                }
                if let Some((lhs, rhs)) = check(&u, r)? {
                    return Ok(Some(MapWitness { set: u, level: Some(r), lhs, rhs }));
                }
            }
        }
        Ok(None)
    }

    fn run(&self, class: MapClass) -> Result<Option<MapWitness>, CoreError> {
        let (map, t1, t2) = (self.map, self.t1, self.t2);
        let alg = t1.algebra();
        match class {
            MapClass::Continuous => {
                for (v, need) in t2.table() {
                    let got = t1.degree(&map.preimage(v));
                    if !alg.leq(*need, got) {
                        return Ok(Some(MapWitness {
                            set: v.clone(),
                            level: None,
                            lhs: WitnessSide::Grade(alg.display(got)),
                            rhs: WitnessSide::Grade(alg.display(*need)),
                        }));
                    }
                }
                Ok(None)
            }
            MapClass::SemiPreopenMap => {
                self.first_failure(&opens_with_degree(t1), |u, r| {
                    let img = map.image(u);
                    if is_semi_preopen(t2, &img, r) {
                        Ok(None)
                    } else {
                        let cic = t2.closure(&t2.interior(&t2.closure(&img, r), r), r);
                        Ok(Some((WitnessSide::Set(img), WitnessSide::Set(cic))))
                    }
                })
            }
            MapClass::SemiPreclosedMap => {
                self.first_failure(&closeds_with_degree(t1), |u, r| {
                    let img = map.image(u);
                    if is_semi_preclosed(t2, &img, r) {
                        Ok(None)
                    } else {
                        let ici = t2.interior(&t2.closure(&t2.interior(&img, r), r), r);
                        Ok(Some((WitnessSide::Set(ici), WitnessSide::Set(img))))
                    }
                })
            }
            MapClass::AlmostOpen => self.first_grid_failure(
                |u, r| is_regular_open(t1, u, r),
                |u, r| {
                    let got = t2.degree(&map.image(u));
                    if alg.leq(r, got) {
                        Ok(None)
                    } else {
                        Ok(Some((
                            WitnessSide::Grade(alg.display(got)),
                            WitnessSide::Grade(alg.display(r)),
                        )))
                    }
                },
            ),
            MapClass::StronglyContinuous => self.first_grid_failure(
                |_, _| true,
                |u, r| {
                    let lhs = map.image(&t1.closure(u, r));
                    let rhs = map.image(u);
                    if lhs.leq(&rhs) {
                        Ok(None)
                    } else {
                        Ok(Some((WitnessSide::Set(lhs), WitnessSide::Set(rhs))))
                    }
                },
            ),
            MapClass::WeaklyOpen => {
                self.first_failure(&opens_with_degree(t1), |u, r| {
                    let lhs = map.image(u);
                    let rhs = t2.interior(&map.image(&t1.closure(u, r)), r);
                    if lhs.leq(&rhs) {
                        Ok(None)
                    } else {
                        Ok(Some((WitnessSide::Set(lhs), WitnessSide::Set(rhs))))
                    }
                })
            }
            MapClass::WeaklyClosed => {
                self.first_failure(&closeds_with_degree(t1), |u, r| {
                    let lhs = t2.closure(&map.image(&t1.interior(u, r)), r);
                    let rhs = map.image(u);
                    if lhs.leq(&rhs) {
                        Ok(None)
                    } else {
                        Ok(Some((WitnessSide::Set(lhs), WitnessSide::Set(rhs))))
                    }
                })
            }
            MapClass::WeaklySemiPreopen => {
                self.first_failure(&opens_with_degree(t1), |u, r| {
                    let lhs = map.image(u);
                    let rhs = sp_interior(t2, &map.image(&t1.closure(u, r)), r, &self.caps)?;
                    if lhs.leq(&rhs) {
                        Ok(None)
                    } else {
                        Ok(Some((WitnessSide::Set(lhs), WitnessSide::Set(rhs))))
                    }
                })
            }
            MapClass::WeaklySemiPreclosed => {
                self.first_failure(&closeds_with_degree(t1), |u, r| {
                    let lhs = sp_closure(t2, &map.image(&t1.interior(u, r)), r, &self.caps)?;
                    let rhs = map.image(u);
                    if lhs.leq(&rhs) {
                        Ok(None)
                    } else {
                        Ok(Some((WitnessSide::Set(lhs), WitnessSide::Set(rhs))))
                    }
                })
            }
            // Reading of the garbled printed definition: images of opens are
            // semi-preclosed, symmetric to the closed-to-semi-preopen twin.
            MapClass::ContraSemiPreopen => {
                self.first_failure(&opens_with_degree(t1), |u, r| {
                    let img = map.image(u);
                    if is_semi_preclosed(t2, &img, r) {
                        Ok(None)
                    } else {
                        let ici = t2.interior(&t2.closure(&t2.interior(&img, r), r), r);
                        Ok(Some((WitnessSide::Set(ici), WitnessSide::Set(img))))
                    }
                })
            }
            MapClass::ContraSemiPreclosed => {
                self.first_failure(&closeds_with_degree(t1), |u, r| {
                    let img = map.image(u);
                    if is_semi_preopen(t2, &img, r) {
                        Ok(None)
                    } else {
                        let cic = t2.closure(&t2.interior(&t2.closure(&img, r), r), r);
                        Ok(Some((WitnessSide::Set(img), WitnessSide::Set(cic))))
                    }
                })
            }
        }
    }
}

/// Decide one class.
pub fn evaluate(
    map: &FuzzyMap,
    t1: &FuzzyTopology,
    t2: &FuzzyTopology,
    class: MapClass,
    caps: &Caps,
) -> Result<ClassVerdict, CoreError> {
    check_spaces(map, t1, t2);
    let q = Quantified { map, t1, t2, caps: *caps };
    Ok(match q.run(class)? {
        None => ClassVerdict::pass(class),
        Some(w) => ClassVerdict::fail(class, w),
    })
}

/// Decide every class.
pub fn classify(
    map: &FuzzyMap,
    t1: &FuzzyTopology,
    t2: &FuzzyTopology,
    caps: &Caps,
) -> Result<MapClassification, CoreError> {
    let verdicts = MapClass::ALL
        .into_iter()
        .map(|c| evaluate(map, t1, t2, c, caps))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MapClassification { verdicts })
}

pub fn is_weakly_semi_preopen(
    map: &FuzzyMap,
    t1: &FuzzyTopology,
    t2: &FuzzyTopology,
    caps: &Caps,
) -> Result<ClassVerdict, CoreError> {
    evaluate(map, t1, t2, MapClass::WeaklySemiPreopen, caps)
}

pub fn is_weakly_semi_preclosed(
    map: &FuzzyMap,
    t1: &FuzzyTopology,
    t2: &FuzzyTopology,
    caps: &Caps,
) -> Result<ClassVerdict, CoreError> {
    evaluate(map, t1, t2, MapClass::WeaklySemiPreclosed, caps)
}

fn check_spaces(map: &FuzzyMap, t1: &FuzzyTopology, t2: &FuzzyTopology) {
    assert_eq!(map.source().name(), t1.space().name(), "domain topology on the wrong space");
    assert_eq!(map.target().name(), t2.space().name(), "codomain topology on the wrong space");
    assert_eq!(t1.algebra(), t2.algebra(), "topologies over different algebras");
}

/// Full audit trail for a table-quantified class: every checked (set, level)
/// instance with both sides of the inequality. Panics for the grid classes,
/// whose instance lists are the whole grid.
pub fn trail(
    map: &FuzzyMap,
    t1: &FuzzyTopology,
    t2: &FuzzyTopology,
    class: MapClass,
    caps: &Caps,
) -> Result<Vec<TrailEntry>, CoreError> {
    assert!(!class.is_grid_quantified(), "no trail for grid-quantified classes");
    check_spaces(map, t1, t2);
    let alg = t1.algebra();
    let mut entries = Vec::new();
    let domain = match class {
        MapClass::Continuous => {
            for (v, need) in t2.table() {
                let got = t1.degree(&map.preimage(v));
                entries.push(TrailEntry {
                    set: v.clone(),
                    level: *need,
                    holds: alg.leq(*need, got),
                    lhs: WitnessSide::Grade(alg.display(got)),
                    rhs: WitnessSide::Grade(alg.display(*need)),
                });
            }
            return Ok(entries);
        }
        MapClass::SemiPreopenMap
        | MapClass::WeaklyOpen
        | MapClass::WeaklySemiPreopen
        | MapClass::ContraSemiPreopen => opens_with_degree(t1),
        _ => closeds_with_degree(t1),
    };
    for (u, d) in &domain {
        for r in alg.nonzero_descending() {
            if !alg.leq(r, *d) {
                continue;
            }
            let (lhs, rhs) = match class {
                MapClass::SemiPreopenMap => {
                    let img = map.image(u);
                    let cic = t2.closure(&t2.interior(&t2.closure(&img, r), r), r);
                    (WitnessSide::Set(img), WitnessSide::Set(cic))
                }
                MapClass::SemiPreclosedMap => {
                    let img = map.image(u);
                    let ici = t2.interior(&t2.closure(&t2.interior(&img, r), r), r);
                    (WitnessSide::Set(ici), WitnessSide::Set(img))
                }
                MapClass::WeaklyOpen => (
                    WitnessSide::Set(map.image(u)),
                    WitnessSide::Set(t2.interior(&map.image(&t1.closure(u, r)), r)),
                ),
                MapClass::WeaklyClosed => (
                    WitnessSide::Set(t2.closure(&map.image(&t1.interior(u, r)), r)),
                    WitnessSide::Set(map.image(u)),
                ),
                MapClass::WeaklySemiPreopen => (
                    WitnessSide::Set(map.image(u)),
                    WitnessSide::Set(sp_interior(t2, &map.image(&t1.closure(u, r)), r, caps)?),
                ),
                MapClass::WeaklySemiPreclosed => (
                    WitnessSide::Set(sp_closure(t2, &map.image(&t1.interior(u, r)), r, caps)?),
                    WitnessSide::Set(map.image(u)),
                ),
                MapClass::ContraSemiPreopen => {
                    let img = map.image(u);
                    let ici = t2.interior(&t2.closure(&t2.interior(&img, r), r), r);
                    (WitnessSide::Set(ici), WitnessSide::Set(img))
                }
                MapClass::ContraSemiPreclosed => {
                    let img = map.image(u);
                    let cic = t2.closure(&t2.interior(&t2.closure(&img, r), r), r);
                    (WitnessSide::Set(img), WitnessSide::Set(cic))
                }
                _ => unreachable!(),
            };
            let holds = match (&lhs, &rhs) {
                (WitnessSide::Set(a), WitnessSide::Set(b)) => a.leq(b),
                _ => unreachable!(),
            };
            entries.push(TrailEntry { set: u.clone(), level: r, holds, lhs, rhs });
        }
    }
    Ok(entries)
}

/// Outcome of the level-by-level evaluation of weak semi-preopenness.
#[derive(Clone, Debug)]
pub struct LevelOutcome {
    pub level: Elt,
    pub holds: bool,
    pub witness: Option<MapWitness>,
}

/// Per-level (crisp) verdicts next to the graded verdict. Their agreement
/// is reported, not asserted.
#[derive(Clone, Debug)]
pub struct LevelsReport {
    pub graded: ClassVerdict,
    pub per_level: Vec<LevelOutcome>,
    pub all_levels_hold: bool,
    pub agrees: bool,
}

/// Evaluate weak semi-preopenness level by level: at each coprime level the
/// two crisp level topologies are formed and the defining inequality is
/// checked with family-based closure, interior and semi-pre interior.
pub fn levels_report(
    map: &FuzzyMap,
    t1: &FuzzyTopology,
    t2: &FuzzyTopology,
    caps: &Caps,
) -> Result<LevelsReport, CoreError> {
    check_spaces(map, t1, t2);
    let graded = is_weakly_semi_preopen(map, t1, t2, caps)?;
    let alg = t1.algebra().clone();
    let mut per_level = Vec::new();
    for &a in alg.coprimes() {
        let lvl1 = t1.level(a);
        let lvl2 = t2.level(a);
        let mut outcome = LevelOutcome { level: a, holds: true, witness: None };
        'level: for u in lvl1.opens() {
            let lhs = map.image(u);
            let rhs = level_sp_interior(&lvl2, &map.image(&lvl1.closure(u)), caps)?;
            if !lhs.leq(&rhs) {
                outcome.holds = false;
                outcome.witness = Some(MapWitness {
                    set: u.clone(),
                    level: Some(a),
                    lhs: WitnessSide::Set(lhs),
                    rhs: WitnessSide::Set(rhs),
                });
                break 'level;
            }
        }
        per_level.push(outcome);
    }
    let all_levels_hold = per_level.iter().all(|o| o.holds);
    let agrees = graded.holds == all_levels_hold;
    Ok(LevelsReport { graded, per_level, all_levels_hold, agrees })
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

    /// First bundled counterexample: three-point spaces, single-open domain,
    /// nested two-open codomain, the rotation map.
    fn cx1_like() -> (Arc<Algebra>, FuzzyMap, FuzzyTopology, FuzzyTopology, FuzzySet) {
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
        let f = FuzzyMap::new(x, y, vec![2, 0, 1]);
        (alg, f, t1, t2, u)
    }

    #[test]
    fn rotation_map_is_weakly_semi_preopen_but_not_weakly_open() {
        let (alg, f, t1, t2, u) = cx1_like();
        let caps = Caps::default();
        let wspo = is_weakly_semi_preopen(&f, &t1, &t2, &caps).unwrap();
        assert!(wspo.holds);

        let wo = evaluate(&f, &t1, &t2, MapClass::WeaklyOpen, &caps).unwrap();
        assert!(!wo.holds);
        let w = wo.witness.unwrap();
        assert_eq!(w.set, u);
        assert_eq!(w.level, alg.find_rational(rat(1, 2)));
        match &w.rhs {
            WitnessSide::Set(s) => assert!(s.is_bottom()),
            _ => panic!("expected a set witness"),
        }
    }

    #[test]
    fn witnesses_are_reproducible() {
        let (_, f, t1, t2, _) = cx1_like();
        let caps = Caps::default();
        let a = evaluate(&f, &t1, &t2, MapClass::WeaklyOpen, &caps).unwrap();
        let b = evaluate(&f, &t1, &t2, MapClass::WeaklyOpen, &caps).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn identity_is_weakly_semi_preopen_and_continuous() {
        let (_, _, t1, _, _) = cx1_like();
        let id = FuzzyMap::identity(t1.space().clone());
        let caps = Caps::default();
        assert!(is_weakly_semi_preopen(&id, &t1, &t1, &caps).unwrap().holds);
        assert!(is_weakly_semi_preclosed(&id, &t1, &t1, &caps).unwrap().holds);
        assert!(evaluate(&id, &t1, &t1, MapClass::Continuous, &caps).unwrap().holds);
    }

    #[test]
    fn any_map_into_an_indiscrete_space_is_weakly_semi_preopen() {
        let (alg, f, t1, _, _) = cx1_like();
        let indiscrete = FuzzyTopology::indiscrete(f.target().clone(), alg);
        let caps = Caps::default();
        assert!(is_weakly_semi_preopen(&f, &t1, &indiscrete, &caps).unwrap().holds);
        assert!(is_weakly_semi_preclosed(&f, &t1, &indiscrete, &caps).unwrap().holds);
    }

    #[test]
    fn identity_on_a_discrete_space_is_strongly_continuous() {
        // Two points over the Boolean chain with every crisp set fully open.
        let alg = Algebra::chain([]);
        let s = Space::new("S", ["p", "q"]);
        let chi_p = FuzzySet::from_grades(s.clone(), alg.clone(), vec![alg.top(), alg.bottom()]);
        let chi_q = FuzzySet::from_grades(s.clone(), alg.clone(), vec![alg.bottom(), alg.top()]);
        let t = FuzzyTopology::new(s.clone(), alg.clone(), [(chi_p, alg.top()), (chi_q, alg.top())]);
        let id = FuzzyMap::identity(s);
        let v = evaluate(&id, &t, &t, MapClass::StronglyContinuous, &Caps::default()).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn levels_all_hold_for_the_rotation_map() {
        let (_, f, t1, t2, _) = cx1_like();
        let report = levels_report(&f, &t1, &t2, &Caps::default()).unwrap();
        assert!(report.graded.holds);
        assert!(report.all_levels_hold);
        assert!(report.agrees);
        assert_eq!(report.per_level.len(), t1.algebra().coprimes().len());
    }

    #[test]
    fn trail_covers_every_applicable_pair() {
        let (alg, f, t1, t2, _) = cx1_like();
        let entries = trail(&f, &t1, &t2, MapClass::WeaklyOpen, &Caps::default()).unwrap();
        // Constants hold at every nonzero level; the single open holds only
        // where its degree clears the level.
        let nonzero = alg.nonzero().count();
        assert_eq!(entries.len(), 2 * nonzero + 5);
        assert!(entries.iter().any(|e| !e.holds));
    }

    #[test]
    fn class_names_round_trip() {
        for c in MapClass::ALL {
            assert_eq!(c.name().parse::<MapClass>().unwrap(), c);
        }
        assert!("no_such_class".parse::<MapClass>().is_err());
    }
}
