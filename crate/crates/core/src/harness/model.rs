//! A model bundles everything a theorem needs: one algebra, two spaces with
//! their topologies, and a map between them.

use crate::algebra::Algebra;
use crate::fuzzy::FuzzyMap;
use crate::topology::FuzzyTopology;
use crate::Caps;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Model {
    pub name: String,
    pub algebra: Arc<Algebra>,
    pub t1: FuzzyTopology,
    pub t2: FuzzyTopology,
    pub map: FuzzyMap,
}

impl Model {
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<Algebra>,
        t1: FuzzyTopology,
        t2: FuzzyTopology,
        map: FuzzyMap,
    ) -> Model {
        assert_eq!(map.source().name(), t1.space().name());
        assert_eq!(map.target().name(), t2.space().name());
        assert_eq!(**t1.algebra(), *algebra);
        assert_eq!(**t2.algebra(), *algebra);
        Model { name: name.into(), algebra, t1, t2, map }
    }

    /// Both topologies pass validation.
    pub fn is_valid(&self, caps: &Caps) -> bool {
        self.t1.validate(caps).ok && self.t2.validate(caps).ok
    }
}
