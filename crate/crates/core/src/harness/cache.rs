//! Precomputed operator tables over a full grid.
//!
//! The law suites and theorem evaluators visit every set on a space many
//! times, so closure, interior, the theta operators, the semi-preopen
//! bitmap and the semi-pre interior/closure are computed once per
//! (topology, level) pair and then served as index lookups. Grid indices
//! follow the [`crate::fuzzy::all_sets`] mixed-radix order, and the grid
//! carries flat grade storage so meet, join, complement and order tests on
//! indices are plain integer arithmetic with no allocation.
//!
//! Everything here is a recomputation of the public operators; tests pin
//! the cached tables against the direct implementations.

use crate::algebra::{Algebra, Elt};
use crate::fuzzy::{all_sets, grid_index, grid_size, FuzzySet, Space};
use crate::topology::FuzzyTopology;
use crate::{Caps, CoreError};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Every fuzzy set on a space, in enumeration order, with index arithmetic.
pub struct SpaceGrid {
    algebra: Arc<Algebra>,
    points: usize,
    weights: Vec<usize>,
    grades: Vec<Elt>, // flat, row = set index
    sets: Vec<FuzzySet>,
}

impl SpaceGrid {
    pub fn new(
        space: &Arc<Space>,
        algebra: &Arc<Algebra>,
        caps: &Caps,
    ) -> Result<SpaceGrid, CoreError> {
        let size = grid_size(space, algebra);
        if size > caps.grid as u128 {
            return Err(CoreError::GridCapExceeded { size, cap: caps.grid });
        }
        let sets: Vec<FuzzySet> = all_sets(space, algebra).collect();
        let points = space.len();
        let mut grades = Vec::with_capacity(sets.len() * points);
        for s in &sets {
            grades.extend_from_slice(s.grades());
        }
        let weights = (0..points).map(|p| algebra.len().pow(p as u32)).collect();
        Ok(SpaceGrid { algebra: algebra.clone(), points, weights, grades, sets })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn set(&self, i: usize) -> &FuzzySet {
        &self.sets[i]
    }

    pub fn sets(&self) -> &[FuzzySet] {
        &self.sets
    }

    pub fn index(&self, set: &FuzzySet) -> usize {
        let i = grid_index(set);
        debug_assert_eq!(&self.sets[i], set);
        i
    }

    pub fn top_idx(&self) -> usize {
        self.len() - 1
    }

    pub fn grade(&self, i: usize, point: usize) -> Elt {
        self.grades[i * self.points + point]
    }

    pub fn index_of_grades(&self, grades: &[Elt]) -> usize {
        grades
            .iter()
            .zip(&self.weights)
            .map(|(g, w)| g.index() * w)
            .sum()
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        (0..self.points).all(|p| self.algebra.leq(self.grade(i, p), self.grade(j, p)))
    }

    pub fn meet_idx(&self, i: usize, j: usize) -> usize {
        (0..self.points)
            .map(|p| self.algebra.meet(self.grade(i, p), self.grade(j, p)).index() * self.weights[p])
            .sum()
    }

    pub fn join_idx(&self, i: usize, j: usize) -> usize {
        (0..self.points)
            .map(|p| self.algebra.join(self.grade(i, p), self.grade(j, p)).index() * self.weights[p])
            .sum()
    }

    pub fn complement_idx(&self, i: usize) -> usize {
        (0..self.points)
            .map(|p| self.algebra.complement(self.grade(i, p)).index() * self.weights[p])
            .sum()
    }
}

/// Walk the pointwise interval `[lo, hi]` as grid indices, calling `found`
/// until it returns true. Returns whether any candidate matched. Never
/// allocates per candidate.
pub fn any_in_interval(
    grid: &SpaceGrid,
    lo: &[Elt],
    hi: &[Elt],
    mut found: impl FnMut(usize) -> bool,
) -> bool {
    let alg = grid.algebra();
    let choices: Vec<Vec<Elt>> = lo
        .iter()
        .zip(hi)
        .map(|(&l, &h)| alg.interval(l, h))
        .collect();
    if choices.iter().any(|c| c.is_empty()) {
        return false;
    }
    let points = choices.len();
    let mut counters = vec![0usize; points];
    loop {
        let idx: usize = counters
            .iter()
            .enumerate()
            .map(|(p, &c)| choices[p][c].index() * grid.weights[p])
            .sum();
        if found(idx) {
            return true;
        }
        let mut p = 0;
        loop {
            if p == points {
                return false;
            }
            counters[p] += 1;
            if counters[p] < choices[p].len() {
                break;
            }
            counters[p] = 0;
            p += 1;
        }
    }
}

/// Every set in the pointwise interval `[lo, hi]`; empty when the bounds
/// are not ordered.
pub fn interval_sets(lo: &FuzzySet, hi: &FuzzySet) -> Vec<FuzzySet> {
    let alg = lo.algebra().clone();
    if !lo.leq(hi) {
        return Vec::new();
    }
    let mut out = vec![FuzzySet::from_grades(
        lo.space().clone(),
        alg.clone(),
        lo.grades().to_vec(),
    )];
    for point in 0..lo.space().len() {
        let choices = alg.interval(lo.grade(point), hi.grade(point));
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for base in &out {
            for &c in &choices {
                let mut grades = base.grades().to_vec();
                grades[point] = c;
                next.push(FuzzySet::from_grades(lo.space().clone(), alg.clone(), grades));
            }
        }
        out = next;
    }
    out
}

struct LevelTables {
    closure: Vec<u32>,
    interior: Vec<u32>,
    sp_open: Vec<bool>,
    sp_closed: Vec<bool>,
    sp_interior: Option<Vec<u32>>,
    sp_closure: Option<Vec<u32>>,
    theta_closure: Option<Vec<u32>>,
    theta_interior: Option<Vec<u32>>,
}

/// Cached operator tables for one topology over a shared grid.
pub struct TopologyCache {
    top: FuzzyTopology,
    grid: Arc<SpaceGrid>,
    levels: BTreeMap<Elt, LevelTables>,
}

impl TopologyCache {
    pub fn new(top: &FuzzyTopology, grid: Arc<SpaceGrid>) -> TopologyCache {
        TopologyCache { top: top.clone(), grid, levels: BTreeMap::new() }
    }

    pub fn topology(&self) -> &FuzzyTopology {
        &self.top
    }

    pub fn grid(&self) -> &Arc<SpaceGrid> {
        &self.grid
    }

    fn level(&mut self, r: Elt) -> &mut LevelTables {
        if !self.levels.contains_key(&r) {
            let n = self.grid.len();
            // Families as grid indices; the operators then reduce to index
            // meets and joins.
            let open_idx: Vec<usize> =
                self.top.open_family(r).iter().map(|s| self.grid.index(s)).collect();
            let closed_idx: Vec<usize> =
                open_idx.iter().map(|&i| self.grid.complement_idx(i)).collect();
            let mut closure = Vec::with_capacity(n);
            let mut interior = Vec::with_capacity(n);
            for i in 0..n {
                let mut cl = self.grid.top_idx();
                for &c in &closed_idx {
                    if self.grid.leq_idx(i, c) {
                        cl = self.grid.meet_idx(cl, c);
                    }
                }
                closure.push(cl as u32);
                let mut int = 0usize;
                for &o in &open_idx {
                    if self.grid.leq_idx(o, i) {
                        int = self.grid.join_idx(int, o);
                    }
                }
                interior.push(int as u32);
            }
            let mut sp_open = Vec::with_capacity(n);
            let mut sp_closed = Vec::with_capacity(n);
            for i in 0..n {
                let c = closure[i] as usize;
                let cic = closure[interior[c] as usize] as usize;
                sp_open.push(self.grid.leq_idx(i, cic));
                let ii = interior[i] as usize;
                let ici = interior[closure[ii] as usize] as usize;
                sp_closed.push(self.grid.leq_idx(ici, i));
            }
            self.levels.insert(
                r,
                LevelTables {
                    closure,
                    interior,
                    sp_open,
                    sp_closed,
                    sp_interior: None,
                    sp_closure: None,
                    theta_closure: None,
                    theta_interior: None,
                },
            );
        }
        self.levels.get_mut(&r).unwrap()
    }

    /// Build the basic tables for a level so the slice accessors work.
    pub fn ensure_level(&mut self, r: Elt) {
        let _ = self.level(r);
    }

    /// Semi-preopen bitmap for a level built by [`Self::ensure_level`].
    pub fn sp_open_slice(&self, r: Elt) -> &[bool] {
        &self.levels[&r].sp_open
    }

    pub fn closure_idx(&mut self, r: Elt, i: usize) -> usize {
        self.level(r).closure[i] as usize
    }

    pub fn interior_idx(&mut self, r: Elt, i: usize) -> usize {
        self.level(r).interior[i] as usize
    }

    pub fn is_sp_open(&mut self, r: Elt, i: usize) -> bool {
        self.level(r).sp_open[i]
    }

    pub fn is_sp_closed(&mut self, r: Elt, i: usize) -> bool {
        self.level(r).sp_closed[i]
    }

    pub fn sp_interior_idx(&mut self, r: Elt, i: usize) -> usize {
        if self.level(r).sp_interior.is_none() {
            let n = self.grid.len();
            let sp_open = self.level(r).sp_open.clone();
            let mut table = Vec::with_capacity(n);
            for u in 0..n {
                let mut acc = 0usize;
                for (v, &open) in sp_open.iter().enumerate() {
                    if open && self.grid.leq_idx(v, u) {
                        acc = self.grid.join_idx(acc, v);
                    }
                }
                table.push(acc as u32);
            }
            self.level(r).sp_interior = Some(table);
        }
        self.levels[&r].sp_interior.as_ref().unwrap()[i] as usize
    }

    pub fn sp_closure_idx(&mut self, r: Elt, i: usize) -> usize {
        if self.level(r).sp_closure.is_none() {
            let n = self.grid.len();
            let sp_closed = self.level(r).sp_closed.clone();
            let mut table = Vec::with_capacity(n);
            for u in 0..n {
                let mut acc = self.grid.top_idx();
                for (v, &closed) in sp_closed.iter().enumerate() {
                    if closed && self.grid.leq_idx(u, v) {
                        acc = self.grid.meet_idx(acc, v);
                    }
                }
                table.push(acc as u32);
            }
            self.level(r).sp_closure = Some(table);
        }
        self.levels[&r].sp_closure.as_ref().unwrap()[i] as usize
    }

    pub fn theta_closure_idx(&mut self, r: Elt, i: usize) -> usize {
        if self.level(r).theta_closure.is_none() {
            let n = self.grid.len();
            let closed: Vec<usize> = self
                .top
                .closed_family(r)
                .iter()
                .map(|s| self.grid.index(s))
                .collect();
            let interior = self.level(r).interior.clone();
            let mut table = Vec::with_capacity(n);
            for u in 0..n {
                let mut acc = self.grid.top_idx();
                for &v in &closed {
                    if self.grid.leq_idx(u, interior[v] as usize) {
                        acc = self.grid.meet_idx(acc, v);
                    }
                }
                table.push(acc as u32);
            }
            self.level(r).theta_closure = Some(table);
        }
        self.levels[&r].theta_closure.as_ref().unwrap()[i] as usize
    }

    pub fn theta_interior_idx(&mut self, r: Elt, i: usize) -> usize {
        if self.level(r).theta_interior.is_none() {
            let n = self.grid.len();
            let opens: Vec<usize> = self
                .top
                .open_family(r)
                .iter()
                .map(|s| self.grid.index(s))
                .collect();
            let closure = self.level(r).closure.clone();
            let mut table = Vec::with_capacity(n);
            for u in 0..n {
                let mut acc = 0usize;
                for &v in &opens {
                    if self.grid.leq_idx(closure[v] as usize, u) {
                        acc = self.grid.join_idx(acc, v);
                    }
                }
                table.push(acc as u32);
            }
            self.level(r).theta_interior = Some(table);
        }
        self.levels[&r].theta_interior.as_ref().unwrap()[i] as usize
    }

    /// Degree of openness by grid index.
    pub fn degree(&self, i: usize) -> Elt {
        self.top.degree(self.grid.set(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Rational};
    use crate::fuzzy::Space;
    use crate::setclass;

    #[test]
    fn cached_tables_match_direct_operators() {
        let alg = Algebra::chain([Rational::new(1, 2), Rational::new(1, 4)]);
        let x = Space::new("X", ["p", "q"]);
        let u = FuzzySet::from_grades(
            x.clone(),
            alg.clone(),
            vec![alg.find_rational(Rational::new(1, 2)).unwrap(), alg.bottom()],
        );
        let top = FuzzyTopology::new(
            x.clone(),
            alg.clone(),
            [(u, alg.find_rational(Rational::new(1, 4)).unwrap())],
        );
        let grid = Arc::new(SpaceGrid::new(&x, &alg, &Caps::default()).unwrap());
        let mut cache = TopologyCache::new(&top, grid.clone());
        for r in alg.nonzero() {
            for i in 0..grid.len() {
                let s = grid.set(i).clone();
                assert_eq!(grid.set(cache.closure_idx(r, i)), &top.closure(&s, r));
                assert_eq!(grid.set(cache.interior_idx(r, i)), &top.interior(&s, r));
                assert_eq!(cache.is_sp_open(r, i), setclass::is_semi_preopen(&top, &s, r));
                assert_eq!(
                    grid.set(cache.sp_interior_idx(r, i)),
                    &setclass::sp_interior(&top, &s, r, &Caps::default()).unwrap()
                );
                assert_eq!(
                    grid.set(cache.sp_closure_idx(r, i)),
                    &setclass::sp_closure(&top, &s, r, &Caps::default()).unwrap()
                );
                assert_eq!(
                    grid.set(cache.theta_closure_idx(r, i)),
                    &setclass::theta_closure(&top, &s, r)
                );
                assert_eq!(
                    grid.set(cache.theta_interior_idx(r, i)),
                    &setclass::theta_interior(&top, &s, r)
                );
            }
        }
    }

    #[test]
    fn index_arithmetic_matches_set_operations() {
        let alg = Algebra::diamond();
        let x = Space::new("X", ["p", "q"]);
        let grid = SpaceGrid::new(&x, &alg, &Caps::default()).unwrap();
        for i in 0..grid.len() {
            assert_eq!(grid.index(grid.set(i)), i);
            assert_eq!(
                grid.set(grid.complement_idx(i)),
                &grid.set(i).complement()
            );
            for j in 0..grid.len() {
                assert_eq!(grid.leq_idx(i, j), grid.set(i).leq(grid.set(j)));
                assert_eq!(grid.set(grid.meet_idx(i, j)), &grid.set(i).meet(grid.set(j)));
                assert_eq!(grid.set(grid.join_idx(i, j)), &grid.set(i).join(grid.set(j)));
            }
        }
        assert!(grid.set(0).is_bottom());
        assert!(grid.set(grid.top_idx()).is_top());
    }

    #[test]
    fn interval_walk_agrees_with_materialized_intervals() {
        let alg = Algebra::chain([Rational::new(1, 2)]);
        let x = Space::new("X", ["p", "q"]);
        let grid = SpaceGrid::new(&x, &alg, &Caps::default()).unwrap();
        for lo in grid.sets() {
            for hi in grid.sets() {
                let mut walked = Vec::new();
                any_in_interval(&grid, lo.grades(), hi.grades(), |i| {
                    walked.push(i);
                    false
                });
                let materialized: Vec<usize> =
                    interval_sets(lo, hi).iter().map(|s| grid.index(s)).collect();
                let mut sorted = walked.clone();
                sorted.sort_unstable();
                let mut expect = materialized.clone();
                expect.sort_unstable();
                assert_eq!(sorted, expect);
            }
        }
    }
}
