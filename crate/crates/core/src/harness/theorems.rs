//! Per-condition theorem evaluation.
//!
//! Every numbered condition of a catalogued theorem is evaluated
//! independently from its own formula; the report carries the full boolean
//! vector, an agreement flag, the first counterexample for each failing
//! condition, and a note for every clause that had to be reinterpreted to
//! be type-correct. Full equivalences are never asserted here: divergence
//! between conditions is a reported finding, which is the point of
//! evaluating them separately.
//!
//! Theorem ids are stable strings:
//!
//! * `wspo-char-5` — five characterizations of weak semi-preopenness via
//!   the theta operators and fuzzy points.
//! * `wspo-char-5b` — five characterizations via interiors of closures and
//!   the preopen/alpha-open classes.
//! * `wspc-char-8` — eight characterizations of weak semi-preclosedness.
//! * `wspc-char-3` — the semi-preclosed/alpha-closed variant.
//! * `bijective-3` — the three-way characterization for bijections.
//! * `levels` — the level-by-level (crisp) reading against the graded one.
//! * `sep-T2` — surjective weakly semi-preclosed maps with strongly
//!   separated fibers give a point-separated codomain (needs a level).
//! * `conn` — injective strongly continuous weakly semi-preopen maps onto
//!   a semi-preconnected codomain give a connected domain (needs a level).

use super::cache::{any_in_interval, SpaceGrid, TopologyCache};
use super::model::Model;
use super::separation::{self, TheoremOutcome};
use crate::algebra::Elt;
use crate::mapclass::{self, MapClass};
use crate::{Caps, CoreError};
use std::sync::Arc;

pub const THEOREM_IDS: &[&str] = &[
    "wspo-char-5",
    "wspo-char-5b",
    "wspc-char-8",
    "wspc-char-3",
    "bijective-3",
    "levels",
    "sep-T2",
    "conn",
];

/// Ids evaluable without a level argument (the equivalence theorems).
pub const EQUIVALENCE_THEOREM_IDS: &[&str] =
    &["wspo-char-5", "wspo-char-5b", "wspc-char-8", "wspc-char-3", "bijective-3", "levels"];

#[derive(Clone, Debug)]
pub struct Condition {
    pub label: String,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub id: String,
    pub model: String,
    /// Set when the theorem's precondition (bijectivity) is not met;
    /// conditions are then empty.
    pub precondition_failure: Option<String>,
    pub conditions: Vec<Condition>,
    /// All condition verdicts equal.
    pub agreement: bool,
    /// Pass/fail/vacuous outcome for the two application theorems.
    pub outcome: Option<TheoremOutcome>,
    pub notes: Vec<&'static str>,
}

impl TheoremReport {
    fn new(id: &str, model: &str) -> TheoremReport {
        TheoremReport {
            id: id.into(),
            model: model.into(),
            precondition_failure: None,
            conditions: Vec::new(),
            agreement: true,
            outcome: None,
            notes: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, holds: bool, witness: Option<String>) {
        self.conditions.push(Condition { label: label.into(), holds, witness });
    }

    fn finish(mut self) -> TheoremReport {
        self.agreement = self.conditions.windows(2).all(|w| w[0].holds == w[1].holds);
        self
    }
}

/// Reusable evaluation state for one model: cached operator tables on both
/// sides and the image/preimage index maps between the two grids. Running
/// several theorems through one engine shares every table.
pub struct TheoremEngine<'a> {
    m: &'a Model,
    caps: Caps,
    dom: TopologyCache,
    cod: TopologyCache,
    image: Vec<u32>,
    preimage: Vec<u32>,
}

fn exists_sp_open_between(cod: &mut TopologyCache, lo: &[Elt], hi: &[Elt], r: Elt) -> bool {
    cod.ensure_level(r);
    let bitmap = cod.sp_open_slice(r);
    any_in_interval(cod.grid(), lo, hi, |i| bitmap[i])
}

impl<'a> TheoremEngine<'a> {
    pub fn new(m: &'a Model, caps: &Caps) -> Result<TheoremEngine<'a>, CoreError> {
        let dom_grid = Arc::new(SpaceGrid::new(m.t1.space(), &m.algebra, caps)?);
        let cod_grid = Arc::new(SpaceGrid::new(m.t2.space(), &m.algebra, caps)?);
        let image = dom_grid
            .sets()
            .iter()
            .map(|s| cod_grid.index(&m.map.image(s)) as u32)
            .collect();
        let preimage = cod_grid
            .sets()
            .iter()
            .map(|s| dom_grid.index(&m.map.preimage(s)) as u32)
            .collect();
        Ok(TheoremEngine {
            m,
            caps: *caps,
            dom: TopologyCache::new(&m.t1, dom_grid),
            cod: TopologyCache::new(&m.t2, cod_grid),
            image,
            preimage,
        })
    }

    pub fn eval(&mut self, id: &str, level: Option<Elt>) -> Result<TheoremReport, CoreError> {
        match id {
            "wspo-char-5" => self.wspo_char_5(),
            "wspo-char-5b" => self.wspo_char_5b(),
            "wspc-char-8" => self.wspc_char_8(),
            "wspc-char-3" => self.wspc_char_3(),
            "bijective-3" => self.bijective_3(),
            "levels" => self.levels(),
            "sep-T2" => {
                let r = level.ok_or_else(|| CoreError::LevelRequired(id.into()))?;
                let app = separation::check_separation_theorem(self.m, r, &self.caps)?;
                Ok(application_report(id, self.m, app))
            }
            "conn" => {
                let r = level.ok_or_else(|| CoreError::LevelRequired(id.into()))?;
                let app = separation::check_connectedness_theorem(self.m, r, &self.caps)?;
                Ok(application_report(id, self.m, app))
            }
            _ => Err(CoreError::UnknownTheorem(id.into())),
        }
    }

    fn img(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    fn pre(&self, i: usize) -> usize {
        self.preimage[i] as usize
    }

    fn witness(
        &self,
        on_domain_side: bool,
        set: usize,
        r: Elt,
        lhs: usize,
        rhs: usize,
        compare_on_dom: bool,
    ) -> String {
        let side = if on_domain_side { self.dom.grid() } else { self.cod.grid() };
        let cmp = if compare_on_dom { self.dom.grid() } else { self.cod.grid() };
        format!(
            "set={} level={} lhs={} rhs={}",
            side.set(set),
            self.m.algebra.display(r),
            cmp.set(lhs),
            cmp.set(rhs)
        )
    }

    /// Table opens of the domain with their degrees (constants included).
    fn dom_opens(&self) -> Vec<(usize, Elt)> {
        mapclass::opens_with_degree(&self.m.t1)
            .into_iter()
            .map(|(s, d)| (self.dom.grid().index(&s), d))
            .collect()
    }

    /// Domain sets with a nonzero closedness degree.
    fn dom_closeds(&self) -> Vec<(usize, Elt)> {
        mapclass::closeds_with_degree(&self.m.t1)
            .into_iter()
            .map(|(s, d)| (self.dom.grid().index(&s), d))
            .collect()
    }

    /// Meet of the grades of domain grid set `c` over each fiber, lifted to
    /// codomain grades: the largest codomain set whose preimage stays below
    /// `c`.
    fn fiber_meet_lift(&self, c: usize) -> Vec<Elt> {
        let alg = &self.m.algebra;
        let mut grades = vec![alg.top(); self.m.t2.space().len()];
        for x in 0..self.m.t1.space().len() {
            let y = self.m.map.apply(x);
            grades[y] = alg.meet(grades[y], self.dom.grid().grade(c, x));
        }
        grades
    }

    fn class_condition(&self, class: MapClass) -> Result<(bool, Option<String>), CoreError> {
        let v = mapclass::evaluate(&self.m.map, &self.m.t1, &self.m.t2, class, &self.caps)?;
        Ok((v.holds, v.witness.map(|w| w.to_string())))
    }

    fn wspo_char_5(&mut self) -> Result<TheoremReport, CoreError> {
        let m = self.m;
        let alg = m.algebra.clone();
        let mut rep = TheoremReport::new("wspo-char-5", &m.name);
        rep.notes.push(
            "condition 5 reads the openness hypothesis on the containing set; as printed it binds the point height",
        );

        let (holds, witness) = self.class_condition(MapClass::WeaklySemiPreopen)?;
        rep.push("1 definition", holds, witness);

        // (2) image of the theta interior is below the semi-pre interior of
        // the image, for every domain set and level.
        {
            let mut failure = None;
            'scan: for i in 0..self.dom.grid().len() {
                for r in alg.nonzero_descending() {
                    let ti = self.dom.theta_interior_idx(r, i);
                    let lhs = self.img(ti);
                    let rhs = self.cod.sp_interior_idx(r, self.img(i));
                    if !self.cod.grid().leq_idx(lhs, rhs) {
                        failure = Some(self.witness(true, i, r, lhs, rhs, false));
                        break 'scan;
                    }
                }
            }
            rep.push("2 theta-interior image", failure.is_none(), failure);
        }

        // (3) theta interior of a preimage is below the preimage of the
        // semi-pre interior, for every codomain set and level.
        {
            let mut failure = None;
            'scan: for v in 0..self.cod.grid().len() {
                for r in alg.nonzero_descending() {
                    let lhs = self.dom.theta_interior_idx(r, self.pre(v));
                    let spi = self.cod.sp_interior_idx(r, v);
                    let rhs = self.pre(spi);
                    if !self.dom.grid().leq_idx(lhs, rhs) {
                        failure = Some(self.witness(false, v, r, lhs, rhs, true));
                        break 'scan;
                    }
                }
            }
            rep.push("3 preimage of sp-interior", failure.is_none(), failure);
        }

        // (4) preimage of the semi-pre closure is below the theta closure
        // of the preimage.
        {
            let mut failure = None;
            'scan: for v in 0..self.cod.grid().len() {
                for r in alg.nonzero_descending() {
                    let spc = self.cod.sp_closure_idx(r, v);
                    let lhs = self.pre(spc);
                    let rhs = self.dom.theta_closure_idx(r, self.pre(v));
                    if !self.dom.grid().leq_idx(lhs, rhs) {
                        failure = Some(self.witness(false, v, r, lhs, rhs, true));
                        break 'scan;
                    }
                }
            }
            rep.push("4 preimage of sp-closure", failure.is_none(), failure);
        }

        // (5) every fuzzy point below an r-open set maps into some codomain
        // semi-preopen set inside the image of the set's closure.
        {
            let mut failure = None;
            let opens = self.dom_opens();
            let cod_points = m.t2.space().len();
            'scan: for &(u, d) in &opens {
                for r in alg.nonzero_descending() {
                    if !alg.leq(r, d) {
                        continue;
                    }
                    let cl = self.dom.closure_idx(r, u);
                    let hi_idx = self.img(cl);
                    let hi: Vec<Elt> =
                        (0..cod_points).map(|p| self.cod.grid().grade(hi_idx, p)).collect();
                    for x in 0..m.t1.space().len() {
                        for &height in alg.coprimes() {
                            if !alg.leq(height, self.dom.grid().grade(u, x)) {
                                continue;
                            }
                            let mut lo = vec![alg.bottom(); cod_points];
                            lo[m.map.apply(x)] = height;
                            if !exists_sp_open_between(&mut self.cod, &lo, &hi, r) {
                                failure = Some(format!(
                                    "set={} level={} point={}@{} image-closure={}",
                                    self.dom.grid().set(u),
                                    alg.display(r),
                                    m.t1.space().point(x),
                                    alg.display(height),
                                    self.cod.grid().set(hi_idx)
                                ));
                                break 'scan;
                            }
                        }
                    }
                }
            }
            rep.push("5 pointwise selection", failure.is_none(), failure);
        }

        Ok(rep.finish())
    }

    fn wspo_char_5b(&mut self) -> Result<TheoremReport, CoreError> {
        let m = self.m;
        let alg = m.algebra.clone();
        let mut rep = TheoremReport::new("wspo-char-5b", &m.name);

        let (holds, witness) = self.class_condition(MapClass::WeaklySemiPreopen)?;
        rep.push("1 definition", holds, witness);

        // (2) over sets with a closedness degree: image of the interior is
        // below the semi-pre interior of the image.
        {
            let mut failure = None;
            'scan: for (b, d) in self.dom_closeds() {
                for r in alg.nonzero_descending() {
                    if !alg.leq(r, d) {
                        continue;
                    }
                    let int = self.dom.interior_idx(r, b);
                    let lhs = self.img(int);
                    let rhs = self.cod.sp_interior_idx(r, self.img(b));
                    if !self.cod.grid().leq_idx(lhs, rhs) {
                        failure = Some(self.witness(true, b, r, lhs, rhs, false));
                        break 'scan;
                    }
                }
            }
            rep.push("2 interiors of closed sets", failure.is_none(), failure);
        }

        // (3) over opens: image of interior-of-closure below the semi-pre
        // interior of the image of the closure.
        {
            let mut failure = None;
            'scan: for (u, d) in self.dom_opens() {
                for r in alg.nonzero_descending() {
                    if !alg.leq(r, d) {
                        continue;
                    }
                    let cl = self.dom.closure_idx(r, u);
                    let icl = self.dom.interior_idx(r, cl);
                    let lhs = self.img(icl);
                    let rhs = self.cod.sp_interior_idx(r, self.img(cl));
                    if !self.cod.grid().leq_idx(lhs, rhs) {
                        failure = Some(self.witness(true, u, r, lhs, rhs, false));
                        break 'scan;
                    }
                }
            }
            rep.push("3 interiors of closures of opens", failure.is_none(), failure);
        }

        // (4)/(5): the weak inequality over every preopen / alpha-open set.
        for (label, alpha) in [("4 preopen sets", false), ("5 alpha-open sets", true)] {
            let mut failure = None;
            'scan: for i in 0..self.dom.grid().len() {
                for r in alg.nonzero_descending() {
                    let passes = if alpha {
                        let int = self.dom.interior_idx(r, i);
                        let ci = self.dom.closure_idx(r, int);
                        let ici = self.dom.interior_idx(r, ci);
                        self.dom.grid().leq_idx(i, ici)
                    } else {
                        let cl = self.dom.closure_idx(r, i);
                        let ic = self.dom.interior_idx(r, cl);
                        self.dom.grid().leq_idx(i, ic)
                    };
                    if !passes {
                        continue;
                    }
                    let cl = self.dom.closure_idx(r, i);
                    let lhs = self.img(i);
                    let rhs = self.cod.sp_interior_idx(r, self.img(cl));
                    if !self.cod.grid().leq_idx(lhs, rhs) {
                        failure = Some(self.witness(true, i, r, lhs, rhs, false));
                        break 'scan;
                    }
                }
            }
            rep.push(label, failure.is_none(), failure);
        }

        Ok(rep.finish())
    }

    /// Semi-pre closure of the image below the image of the closure.
    fn spc_below_image_of_closure(&mut self, i: usize, r: Elt) -> Option<(usize, usize)> {
        let lhs = self.cod.sp_closure_idx(r, self.img(i));
        let cl = self.dom.closure_idx(r, i);
        let rhs = self.img(cl);
        if self.cod.grid().leq_idx(lhs, rhs) {
            None
        } else {
            Some((lhs, rhs))
        }
    }

    fn wspc_char_8(&mut self) -> Result<TheoremReport, CoreError> {
        let m = self.m;
        let alg = m.algebra.clone();
        let mut rep = TheoremReport::new("wspc-char-8", &m.name);
        rep.notes.push(
            "condition 4 bounds the preimage of the selected set, not of its lower bound, matching the type-correct reading",
        );

        let (holds, witness) = self.class_condition(MapClass::WeaklySemiPreclosed)?;
        rep.push("1 definition", holds, witness);

        // (2) over table opens.
        {
            let mut failure = None;
            'scan: for (u, d) in self.dom_opens() {
                for r in alg.nonzero_descending() {
                    if !alg.leq(r, d) {
                        continue;
                    }
                    if let Some((lhs, rhs)) = self.spc_below_image_of_closure(u, r) {
                        failure = Some(self.witness(true, u, r, lhs, rhs, false));
                        break 'scan;
                    }
                }
            }
            rep.push("2 open sets", failure.is_none(), failure);
        }

        // (3) over regular-open grid sets.
        {
            let mut failure = None;
            'scan: for i in 0..self.dom.grid().len() {
                for r in alg.nonzero_descending() {
                    let cl = self.dom.closure_idx(r, i);
                    let ic = self.dom.interior_idx(r, cl);
                    if ic != i {
                        continue;
                    }
                    if let Some((lhs, rhs)) = self.spc_below_image_of_closure(i, r) {
                        failure = Some(self.witness(true, i, r, lhs, rhs, false));
                        break 'scan;
                    }
                }
            }
            rep.push("3 regular-open sets", failure.is_none(), failure);
        }

        // (4) for every codomain set below an open preimage bound there is
        // a semi-preopen superset whose preimage stays inside the closure.
        {
            let mut failure = None;
            let cod_points = m.t2.space().len();
            'scan: for (u, d) in self.dom_opens() {
                for r in alg.nonzero_descending() {
                    if !alg.leq(r, d) {
                        continue;
                    }
                    let cl = self.dom.closure_idx(r, u);
                    let bound = self.fiber_meet_lift(cl);
                    for v in 0..self.cod.grid().len() {
                        if !self.dom.grid().leq_idx(self.pre(v), u) {
                            continue;
                        }
                        let lo: Vec<Elt> =
                            (0..cod_points).map(|p| self.cod.grid().grade(v, p)).collect();
                        if !exists_sp_open_between(&mut self.cod, &lo, &bound, r) {
                            failure = Some(format!(
                                "set={} level={} codomain-set={}",
                                self.dom.grid().set(u),
                                alg.display(r),
                                self.cod.grid().set(v),
                            ));
                            break 'scan;
                        }
                    }
                }
            }
            rep.push("4 covering selection", failure.is_none(), failure);
        }

        // (5) for every codomain point whose preimage fits in a set, a
        // semi-preopen superset of the point has preimage inside the
        // closure.
        {
            let mut failure = None;
            let cod_points = m.t2.space().len();
            'scan: for i in 0..self.dom.grid().len() {
                for r in alg.nonzero_descending() {
                    let cl = self.dom.closure_idx(r, i);
                    let bound = self.fiber_meet_lift(cl);
                    for y in 0..cod_points {
                        for &height in alg.coprimes() {
                            let fits = (0..m.t1.space().len()).all(|x| {
                                m.map.apply(x) != y
                                    || alg.leq(height, self.dom.grid().grade(i, x))
                            });
                            if !fits {
                                continue;
                            }
                            let mut lo = vec![alg.bottom(); cod_points];
                            lo[y] = height;
                            if !exists_sp_open_between(&mut self.cod, &lo, &bound, r) {
                                failure = Some(format!(
                                    "point={}@{} set={} level={}",
                                    m.t2.space().point(y),
                                    alg.display(height),
                                    self.dom.grid().set(i),
                                    alg.display(r)
                                ));
                                break 'scan;
                            }
                        }
                    }
                }
            }
            rep.push("5 pointwise selection", failure.is_none(), failure);
        }

        // (6) interiors of closures, every set and level.
        {
            let mut failure = None;
            'scan: for i in 0..self.dom.grid().len() {
                for r in alg.nonzero_descending() {
                    let cl = self.dom.closure_idx(r, i);
                    let int = self.dom.interior_idx(r, cl);
                    let lhs = self.cod.sp_closure_idx(r, self.img(int));
                    let rhs = self.img(cl);
                    if !self.cod.grid().leq_idx(lhs, rhs) {
                        failure = Some(self.witness(true, i, r, lhs, rhs, false));
                        break 'scan;
                    }
                }
            }
            rep.push("6 interiors of closures", failure.is_none(), failure);
        }

        // (7) interiors of theta closures, every set and level.
        {
            let mut failure = None;
            'scan: for i in 0..self.dom.grid().len() {
                for r in alg.nonzero_descending() {
                    let d = self.dom.theta_closure_idx(r, i);
                    let int = self.dom.interior_idx(r, d);
                    let lhs = self.cod.sp_closure_idx(r, self.img(int));
                    let rhs = self.img(d);
                    if !self.cod.grid().leq_idx(lhs, rhs) {
                        failure = Some(self.witness(true, i, r, lhs, rhs, false));
                        break 'scan;
                    }
                }
            }
            rep.push("7 interiors of theta-closures", failure.is_none(), failure);
        }

        // (8) over semi-preopen grid sets.
        {
            let mut failure = None;
            'scan: for i in 0..self.dom.grid().len() {
                for r in alg.nonzero_descending() {
                    if !self.dom.is_sp_open(r, i) {
                        continue;
                    }
                    if let Some((lhs, rhs)) = self.spc_below_image_of_closure(i, r) {
                        failure = Some(self.witness(true, i, r, lhs, rhs, false));
                        break 'scan;
                    }
                }
            }
            rep.push("8 semi-preopen sets", failure.is_none(), failure);
        }

        Ok(rep.finish())
    }

    fn wspc_char_3(&mut self) -> Result<TheoremReport, CoreError> {
        let m = self.m;
        let alg = m.algebra.clone();
        let mut rep = TheoremReport::new("wspc-char-3", &m.name);

        let (holds, witness) = self.class_condition(MapClass::WeaklySemiPreclosed)?;
        rep.push("1 definition", holds, witness);

        for (label, alpha) in [("2 semi-preclosed sets", false), ("3 alpha-closed sets", true)] {
            let mut failure = None;
            'scan: for i in 0..self.dom.grid().len() {
                for r in alg.nonzero_descending() {
                    let qualifies = if alpha {
                        let cl = self.dom.closure_idx(r, i);
                        let icl = self.dom.interior_idx(r, cl);
                        let cic = self.dom.closure_idx(r, icl);
                        self.dom.grid().leq_idx(cic, i)
                    } else {
                        self.dom.is_sp_closed(r, i)
                    };
                    if !qualifies {
                        continue;
                    }
                    let int = self.dom.interior_idx(r, i);
                    let lhs = self.cod.sp_closure_idx(r, self.img(int));
                    let rhs = self.img(i);
                    if !self.cod.grid().leq_idx(lhs, rhs) {
                        failure = Some(self.witness(true, i, r, lhs, rhs, false));
                        break 'scan;
                    }
                }
            }
            rep.push(label, failure.is_none(), failure);
        }

        Ok(rep.finish())
    }

    fn bijective_3(&mut self) -> Result<TheoremReport, CoreError> {
        let m = self.m;
        let mut rep = TheoremReport::new("bijective-3", &m.name);
        if !m.map.is_bijective() {
            rep.precondition_failure = Some("map is not bijective".into());
            return Ok(rep);
        }
        let alg = m.algebra.clone();

        let (holds, witness) = self.class_condition(MapClass::WeaklySemiPreopen)?;
        rep.push("1 weakly semi-preopen", holds, witness);

        {
            let mut failure = None;
            'scan: for (u, d) in self.dom_opens() {
                for r in alg.nonzero_descending() {
                    if !alg.leq(r, d) {
                        continue;
                    }
                    if let Some((lhs, rhs)) = self.spc_below_image_of_closure(u, r) {
                        failure = Some(self.witness(true, u, r, lhs, rhs, false));
                        break 'scan;
                    }
                }
            }
            rep.push("2 closures of opens", failure.is_none(), failure);
        }

        {
            let mut failure = None;
            'scan: for (b, d) in self.dom_closeds() {
                for r in alg.nonzero_descending() {
                    if !alg.leq(r, d) {
                        continue;
                    }
                    let int = self.dom.interior_idx(r, b);
                    let lhs = self.cod.sp_closure_idx(r, self.img(int));
                    let rhs = self.img(b);
                    if !self.cod.grid().leq_idx(lhs, rhs) {
                        failure = Some(self.witness(true, b, r, lhs, rhs, false));
                        break 'scan;
                    }
                }
            }
            rep.push("3 interiors of closed sets", failure.is_none(), failure);
        }

        Ok(rep.finish())
    }

    fn levels(&mut self) -> Result<TheoremReport, CoreError> {
        let m = self.m;
        let mut rep = TheoremReport::new("levels", &m.name);
        let lr = mapclass::levels_report(&m.map, &m.t1, &m.t2, &self.caps)?;
        rep.push(
            "graded",
            lr.graded.holds,
            lr.graded.witness.as_ref().map(|w| w.to_string()),
        );
        for lo in &lr.per_level {
            rep.push(
                format!("level {}", m.algebra.display(lo.level)),
                lo.holds,
                lo.witness.as_ref().map(|w| w.to_string()),
            );
        }
        // The claim under investigation is "graded iff every level", so a
        // map that is open at some levels only is not a divergence.
        rep.agreement = lr.agrees;
        Ok(rep)
    }
}

pub fn eval_theorem(
    id: &str,
    m: &Model,
    level: Option<Elt>,
    caps: &Caps,
) -> Result<TheoremReport, CoreError> {
    // The application theorems carry their own machinery; skip the engine
    // grids for them.
    if id == "sep-T2" || id == "conn" {
        let r = level.ok_or_else(|| CoreError::LevelRequired(id.into()))?;
        let app = if id == "sep-T2" {
            separation::check_separation_theorem(m, r, caps)?
        } else {
            separation::check_connectedness_theorem(m, r, caps)?
        };
        return Ok(application_report(id, m, app));
    }
    if !THEOREM_IDS.contains(&id) {
        return Err(CoreError::UnknownTheorem(id.into()));
    }
    TheoremEngine::new(m, caps)?.eval(id, level)
}

fn application_report(id: &str, m: &Model, app: separation::ApplicationReport) -> TheoremReport {
    let mut rep = TheoremReport::new(id, &m.name);
    for (label, holds) in &app.hypotheses {
        rep.push(format!("hypothesis {label}"), *holds, None);
    }
    let witness = match &app.outcome {
        TheoremOutcome::Fail(w) => Some(w.clone()),
        _ => None,
    };
    rep.push("conclusion", app.conclusion, witness);
    rep.agreement = !matches!(app.outcome, TheoremOutcome::Fail(_));
    rep.outcome = Some(app.outcome);
    rep.notes = app.notes;
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::fuzzy::{FuzzyMap, Space};
    use crate::harness::corpus;
    use crate::topology::FuzzyTopology;

    fn identity_indiscrete() -> Model {
        let alg = Algebra::chain([]);
        let s = Space::new("S", ["p", "q"]);
        let t = FuzzyTopology::indiscrete(s.clone(), alg.clone());
        let map = FuzzyMap::identity(s);
        Model::new("identity-indiscrete", alg, t.clone(), t, map)
    }

    #[test]
    fn every_equivalence_theorem_is_all_true_on_the_identity_indiscrete_model() {
        let m = identity_indiscrete();
        let caps = Caps::default();
        for id in EQUIVALENCE_THEOREM_IDS {
            let rep = eval_theorem(id, &m, None, &caps).unwrap();
            assert!(rep.precondition_failure.is_none(), "{id}");
            assert!(rep.agreement, "{id}: {:?}", rep.conditions);
            assert!(rep.conditions.iter().all(|c| c.holds), "{id}: {:?}", rep.conditions);
        }
    }

    #[test]
    fn five_condition_theorem_agrees_on_the_first_corpus_model() {
        let m = corpus::cx1().model;
        let rep = eval_theorem("wspo-char-5", &m, None, &Caps::default()).unwrap();
        assert!(rep.agreement, "{:?}", rep.conditions);
        assert!(rep.conditions.iter().all(|c| c.holds));
    }

    #[test]
    fn one_engine_serves_every_theorem() {
        let m = corpus::cx3().model;
        let caps = Caps::default();
        let mut engine = TheoremEngine::new(&m, &caps).unwrap();
        for id in EQUIVALENCE_THEOREM_IDS {
            let shared = engine.eval(id, None).unwrap();
            let fresh = eval_theorem(id, &m, None, &caps).unwrap();
            let a: Vec<bool> = shared.conditions.iter().map(|c| c.holds).collect();
            let b: Vec<bool> = fresh.conditions.iter().map(|c| c.holds).collect();
            assert_eq!(a, b, "{id}");
        }
    }

    #[test]
    fn bijective_theorem_needs_a_bijection() {
        let alg = Algebra::chain([]);
        let s = Space::new("S", ["p", "q"]);
        let t = FuzzyTopology::indiscrete(s.clone(), alg.clone());
        let map = FuzzyMap::new(s.clone(), s, vec![0, 0]);
        let m = Model::new("collapse", alg, t.clone(), t, map);
        let rep = eval_theorem("bijective-3", &m, None, &Caps::default()).unwrap();
        assert!(rep.precondition_failure.is_some());
        assert!(rep.conditions.is_empty());
    }

    #[test]
    fn unknown_ids_are_rejected() {
        let m = identity_indiscrete();
        let err = eval_theorem("nope", &m, None, &Caps::default()).unwrap_err();
        assert!(matches!(err, CoreError::UnknownTheorem(_)));
    }

    #[test]
    fn application_theorems_need_a_level() {
        let m = identity_indiscrete();
        let err = eval_theorem("sep-T2", &m, None, &Caps::default()).unwrap_err();
        assert!(matches!(err, CoreError::LevelRequired(_)));
        let rep =
            eval_theorem("sep-T2", &m, Some(m.algebra.top()), &Caps::default()).unwrap();
        assert!(rep.outcome.is_some());
    }
}
