//! Lattice-valued sets, points and maps over finite point sets.
//!
//! A [`FuzzySet`] is a total assignment of algebra elements to the points of
//! a [`Space`]; all lattice structure is pointwise. A [`FuzzyPoint`] is the
//! set that takes a nonzero coprime height at one carrier point and bottom
//! elsewhere. A [`FuzzyMap`] is a crisp point function inducing forward
//! image (fiberwise join) and preimage (composition) on sets.
//!
//! Binary operations require both operands to live on the same space over
//! the same algebra and panic otherwise; recoverable name/value errors are
//! the concern of callers that construct these values from user input.

use crate::algebra::{Algebra, Elt};
use crate::CoreError;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A named finite point set.
#[derive(Debug, PartialEq, Eq)]
pub struct Space {
    name: String,
    points: Vec<String>,
}

impl Space {
    pub fn new(name: impl Into<String>, points: impl IntoIterator<Item = impl Into<String>>) -> Arc<Space> {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        assert!(!points.is_empty(), "a space needs at least one point");
        Arc::new(Space { name: name.into(), points })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn points(&self) -> impl Iterator<Item = &str> {
        self.points.iter().map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }
}

/// A total map from the points of a space into an algebra.
#[derive(Clone)]
pub struct FuzzySet {
    space: Arc<Space>,
    algebra: Arc<Algebra>,
    grades: Vec<Elt>,
}

impl FuzzySet {
    pub fn from_grades(space: Arc<Space>, algebra: Arc<Algebra>, grades: Vec<Elt>) -> FuzzySet {
        assert_eq!(grades.len(), space.len(), "membership must cover the point set exactly");
        FuzzySet { space, algebra, grades }
    }

    pub fn constant(space: Arc<Space>, algebra: Arc<Algebra>, value: Elt) -> FuzzySet {
        let grades = vec![value; space.len()];
        FuzzySet { space, algebra, grades }
    }

    /// The constant bottom set.
    pub fn bottom(space: Arc<Space>, algebra: Arc<Algebra>) -> FuzzySet {
        let b = algebra.bottom();
        FuzzySet::constant(space, algebra, b)
    }

    /// The constant top set.
    pub fn top(space: Arc<Space>, algebra: Arc<Algebra>) -> FuzzySet {
        let t = algebra.top();
        FuzzySet::constant(space, algebra, t)
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn grade(&self, point: usize) -> Elt {
        self.grades[point]
    }

    pub fn grades(&self) -> &[Elt] {
        &self.grades
    }

    pub fn is_bottom(&self) -> bool {
        self.grades.iter().all(|&g| g == self.algebra.bottom())
    }

    pub fn is_top(&self) -> bool {
        self.grades.iter().all(|&g| g == self.algebra.top())
    }

    pub fn is_constant(&self) -> bool {
        self.grades.iter().all(|&g| g == self.grades[0])
    }

    fn check_compat(&self, other: &FuzzySet) {
        assert!(
            Arc::ptr_eq(&self.space, &other.space) || self.space == other.space,
            "fuzzy sets live on different spaces: {} vs {}",
            self.space.name(),
            other.space.name()
        );
        assert!(
            Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra,
            "fuzzy sets use different algebras"
        );
    }

    pub fn meet(&self, other: &FuzzySet) -> FuzzySet {
        self.check_compat(other);
        let grades = self
            .grades
            .iter()
            .zip(&other.grades)
            .map(|(&a, &b)| self.algebra.meet(a, b))
            .collect();
        FuzzySet { space: self.space.clone(), algebra: self.algebra.clone(), grades }
    }

    pub fn join(&self, other: &FuzzySet) -> FuzzySet {
        self.check_compat(other);
        let grades = self
            .grades
            .iter()
            .zip(&other.grades)
            .map(|(&a, &b)| self.algebra.join(a, b))
            .collect();
        FuzzySet { space: self.space.clone(), algebra: self.algebra.clone(), grades }
    }

    /// Pointwise involution.
    pub fn complement(&self) -> FuzzySet {
        let grades = self.grades.iter().map(|&a| self.algebra.complement(a)).collect();
        FuzzySet { space: self.space.clone(), algebra: self.algebra.clone(), grades }
    }

    /// Pointwise order.
    pub fn leq(&self, other: &FuzzySet) -> bool {
        self.check_compat(other);
        self.grades
            .iter()
            .zip(&other.grades)
            .all(|(&a, &b)| self.algebra.leq(a, b))
    }

    /// Quasi-coincidence: some point where `self` is not below the
    /// complement of `other`.
    pub fn quasi_coincident(&self, other: &FuzzySet) -> bool {
        self.check_compat(other);
        self.grades
            .iter()
            .zip(&other.grades)
            .any(|(&a, &b)| !self.algebra.leq(a, self.algebra.complement(b)))
    }
}

impl PartialEq for FuzzySet {
    fn eq(&self, other: &FuzzySet) -> bool {
        self.grades == other.grades && self.space.name() == other.space.name()
    }
}

impl Eq for FuzzySet {}

impl PartialOrd for FuzzySet {
    fn partial_cmp(&self, other: &FuzzySet) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FuzzySet {
    /// Lexicographic on grade indices, then space name. This is the canonical
    /// table and witness order, not the pointwise lattice order.
    fn cmp(&self, other: &FuzzySet) -> Ordering {
        self.grades
            .cmp(&other.grades)
            .then_with(|| self.space.name().cmp(other.space.name()))
    }
}

impl Hash for FuzzySet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.space.name().hash(state);
        self.grades.hash(state);
    }
}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.grades.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", self.space.point(i), self.algebra.display(*g))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A fuzzy point: height at one carrier point, bottom elsewhere. The height
/// must be a nonzero coprime element of the algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FuzzyPoint {
    space: Arc<Space>,
    algebra: Arc<Algebra>,
    carrier: usize,
    height: Elt,
}

impl FuzzyPoint {
    pub fn new(
        space: Arc<Space>,
        algebra: Arc<Algebra>,
        carrier: usize,
        height: Elt,
    ) -> Result<FuzzyPoint, CoreError> {
        assert!(carrier < space.len(), "carrier out of range");
        if !algebra.is_coprime(height) {
            return Err(CoreError::HeightNotCoprime { height: algebra.display(height) });
        }
        Ok(FuzzyPoint { space, algebra, carrier, height })
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn height(&self) -> Elt {
        self.height
    }

    pub fn as_set(&self) -> FuzzySet {
        let mut grades = vec![self.algebra.bottom(); self.space.len()];
        grades[self.carrier] = self.height;
        FuzzySet::from_grades(self.space.clone(), self.algebra.clone(), grades)
    }

    /// Containment of the point in a set: height below the set's grade at
    /// the carrier.
    pub fn in_set(&self, set: &FuzzySet) -> bool {
        self.algebra.leq(self.height, set.grade(self.carrier))
    }
}

impl fmt::Display for FuzzyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}@{}",
            self.space.point(self.carrier),
            self.algebra.display(self.height)
        )
    }
}

/// A crisp total function between point sets, inducing image and preimage
/// on fuzzy sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FuzzyMap {
    source: Arc<Space>,
    target: Arc<Space>,
    assignment: Vec<usize>,
}

impl FuzzyMap {
    pub fn new(source: Arc<Space>, target: Arc<Space>, assignment: Vec<usize>) -> FuzzyMap {
        assert_eq!(assignment.len(), source.len(), "assignment must be total");
        assert!(assignment.iter().all(|&y| y < target.len()), "assignment target out of range");
        FuzzyMap { source, target, assignment }
    }

    pub fn identity(space: Arc<Space>) -> FuzzyMap {
        let assignment = (0..space.len()).collect();
        FuzzyMap { source: space.clone(), target: space, assignment }
    }

    pub fn source(&self) -> &Arc<Space> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Space> {
        &self.target
    }

    pub fn apply(&self, point: usize) -> usize {
        self.assignment[point]
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.target.len()).all(|y| self.assignment.contains(&y))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.assignment.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Forward image: fiberwise join, bottom on empty fibers.
    pub fn image(&self, u: &FuzzySet) -> FuzzySet {
        assert_eq!(u.space().name(), self.source.name(), "image argument lives on the wrong space");
        let alg = u.algebra().clone();
        let mut grades = vec![alg.bottom(); self.target.len()];
        for (x, &y) in self.assignment.iter().enumerate() {
            grades[y] = alg.join(grades[y], u.grade(x));
        }
        FuzzySet::from_grades(self.target.clone(), alg, grades)
    }

    /// Preimage: composition with the point function.
    pub fn preimage(&self, v: &FuzzySet) -> FuzzySet {
        assert_eq!(v.space().name(), self.target.name(), "preimage argument lives on the wrong space");
        let alg = v.algebra().clone();
        let grades = self.assignment.iter().map(|&y| v.grade(y)).collect();
        FuzzySet::from_grades(self.source.clone(), alg, grades)
    }
}

impl fmt::Display for FuzzyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, &y) in self.assignment.iter().enumerate() {
            if x > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}:{}", self.source.point(x), self.target.point(y))?;
        }
        Ok(())
    }
}

/// Total number of fuzzy sets on the space: `|L|^|X|`.
pub fn grid_size(space: &Space, algebra: &Algebra) -> u128 {
    (algebra.len() as u128).pow(space.len() as u32)
}

/// Enumerate every fuzzy set on the space, in ascending mixed-radix order:
/// the first point is the least significant digit and grades ascend in
/// declaration order. The bottom constant comes first, the top constant
/// last. Callers enforce their own grid caps.
pub fn all_sets(
    space: &Arc<Space>,
    algebra: &Arc<Algebra>,
) -> impl Iterator<Item = FuzzySet> {
    let space = space.clone();
    let algebra = algebra.clone();
    let n = algebra.len();
    let points = space.len();
    let mut counters = vec![0usize; points];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let elts: Vec<Elt> = algebra.elements().collect();
        let grades: Vec<Elt> = counters.iter().map(|&c| elts[c]).collect();
        let set = FuzzySet::from_grades(space.clone(), algebra.clone(), grades);
        let mut i = 0;
        loop {
            if i == points {
                done = true;
                break;
            }
            counters[i] += 1;
            if counters[i] < n {
                break;
            }
            counters[i] = 0;
            i += 1;
        }
        Some(set)
    })
}

/// Position of a set in the [`all_sets`] enumeration.
pub fn grid_index(set: &FuzzySet) -> usize {
    let n = set.algebra().len();
    let mut idx = 0usize;
    for &g in set.grades().iter().rev() {
        idx = idx * n + g.index();
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Rational};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn setup() -> (Arc<Algebra>, Arc<Space>, Arc<Space>) {
        let alg = Algebra::chain([rat(1, 2), rat(3, 10), rat(1, 5), rat(1, 4), rat(9, 10), rat(7, 10)]);
        let x = Space::new("X", ["a", "b", "c"]);
        let y = Space::new("Y", ["x", "y", "z"]);
        (alg, x, y)
    }

    fn set(space: &Arc<Space>, alg: &Arc<Algebra>, vals: [Rational; 3]) -> FuzzySet {
        let grades = vals.map(|v| alg.find_rational(v).expect("value in algebra")).to_vec();
        FuzzySet::from_grades(space.clone(), alg.clone(), grades)
    }

    #[test]
    fn complement_is_pointwise_one_minus() {
        let (alg, x, _) = setup();
        let u = set(&x, &alg, [rat(1, 2), rat(3, 10), rat(1, 5)]);
        let expect = set(&x, &alg, [rat(1, 2), rat(7, 10), rat(4, 5)]);
        assert_eq!(u.complement(), expect);
    }

    #[test]
    fn meet_with_top_is_identity_and_bottom_is_least() {
        let (alg, x, _) = setup();
        let u = set(&x, &alg, [rat(1, 2), rat(3, 10), rat(1, 5)]);
        let top = FuzzySet::top(x.clone(), alg.clone());
        let bottom = FuzzySet::bottom(x.clone(), alg.clone());
        assert_eq!(u.meet(&top), u);
        assert!(bottom.leq(&u));
    }

    #[test]
    fn quasi_coincidence_example() {
        let (alg, _, y) = setup();
        let g = set(&y, &alg, [rat(3, 10), rat(1, 5), rat(1, 2)]);
        let v = set(&y, &alg, [rat(9, 10), rat(1, 1), rat(7, 10)]);
        // 3/10 is not below V'(x) = 1/10.
        assert!(g.quasi_coincident(&v));
    }

    #[test]
    fn nothing_is_quasi_coincident_with_bottom() {
        let (alg, x, _) = setup();
        let bottom = FuzzySet::bottom(x.clone(), alg.clone());
        for u in [
            set(&x, &alg, [rat(1, 2), rat(3, 10), rat(1, 5)]),
            FuzzySet::top(x.clone(), alg.clone()),
            bottom.clone(),
        ] {
            assert!(!u.quasi_coincident(&bottom));
        }
    }

    #[test]
    fn top_point_quasi_coincides_exactly_with_nonzero_grades() {
        let (alg, x, _) = setup();
        let u = set(&x, &alg, [rat(1, 2), rat(0, 1), rat(1, 5)]);
        for carrier in 0..3 {
            let p = FuzzyPoint::new(x.clone(), alg.clone(), carrier, alg.top()).unwrap();
            assert_eq!(
                p.as_set().quasi_coincident(&u),
                u.grade(carrier) != alg.bottom()
            );
        }
    }

    #[test]
    fn image_joins_over_fibers() {
        let (alg, x, y) = setup();
        // a -> z, b -> x, c -> y
        let f = FuzzyMap::new(x.clone(), y.clone(), vec![2, 0, 1]);
        let u = set(&x, &alg, [rat(1, 2), rat(3, 10), rat(1, 5)]);
        let expect = set(&y, &alg, [rat(3, 10), rat(1, 5), rat(1, 2)]);
        assert_eq!(f.image(&u), expect);
        assert!(f.is_bijective());
    }

    #[test]
    fn empty_fibers_map_to_bottom() {
        let (alg, x, y) = setup();
        let f = FuzzyMap::new(x.clone(), y.clone(), vec![0, 0, 0]);
        let u = FuzzySet::top(x, alg.clone());
        let img = f.image(&u);
        assert_eq!(img.grade(0), alg.top());
        assert_eq!(img.grade(1), alg.bottom());
        assert_eq!(img.grade(2), alg.bottom());
        assert!(!f.is_surjective());
    }

    #[test]
    fn preimage_of_constant_is_constant() {
        let (alg, x, y) = setup();
        let f = FuzzyMap::new(x, y.clone(), vec![2, 0, 1]);
        let half = alg.find_rational(rat(1, 2)).unwrap();
        let c = FuzzySet::constant(y, alg.clone(), half);
        assert!(f.preimage(&c).is_constant());
        assert_eq!(f.preimage(&c).grade(0), half);
    }

    #[test]
    fn image_preimage_adjunction_inequality() {
        let (alg, x, y) = setup();
        let f = FuzzyMap::new(x.clone(), y, vec![0, 0, 1]);
        let u = set(&x, &alg, [rat(1, 2), rat(3, 10), rat(1, 5)]);
        assert!(u.leq(&f.preimage(&f.image(&u))));
    }

    #[test]
    fn fuzzy_point_height_must_be_coprime() {
        let (alg, x, _) = setup();
        let err = FuzzyPoint::new(x.clone(), alg.clone(), 0, alg.bottom()).unwrap_err();
        assert!(matches!(err, CoreError::HeightNotCoprime { .. }));
        // On the diamond, top is not coprime either.
        let d = Algebra::diamond();
        let s = Space::new("S", ["p"]);
        let err = FuzzyPoint::new(s, d.clone(), 0, d.top()).unwrap_err();
        assert!(matches!(err, CoreError::HeightNotCoprime { .. }));
    }

    #[test]
    #[should_panic(expected = "different spaces")]
    fn mixing_spaces_panics() {
        let (alg, x, y) = setup();
        let u = FuzzySet::top(x, alg.clone());
        let v = FuzzySet::top(y, alg);
        let _ = u.meet(&v);
    }
}
