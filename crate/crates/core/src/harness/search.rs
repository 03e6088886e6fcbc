//! Separating-example search over the implication catalogue.
//!
//! Given a strict implication `a => b` from the catalogue, the search looks
//! for a model in `b` but not in `a`: the bundled counterexample models are
//! tried first, then seeded random models, so a hit on the corpus is
//! reproducible and instant. A hit is re-checked through the full
//! classifier before it is returned.

use super::corpus;
use super::generate::{random_model, GenParams};
use super::laws::MAP_IMPLICATIONS;
use super::model::Model;
use crate::mapclass::{self, MapClass};
use crate::{Caps, CoreError};

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub model: Model,
    /// Where the hit came from: the corpus id or the generator seed.
    pub origin: String,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub class_a: MapClass,
    pub class_b: MapClass,
    pub corpus_tried: usize,
    pub random_tried: u64,
    pub hit: Option<SearchHit>,
}

pub fn strictly_implies(a: MapClass, b: MapClass) -> bool {
    MAP_IMPLICATIONS.contains(&(a, b))
}

/// Search for a model in `class_b` but not `class_a`. The pair must be a
/// catalogued strict implication.
pub fn search_separating_example(
    class_a: MapClass,
    class_b: MapClass,
    budget: u64,
    seed: u64,
    params: &GenParams,
    caps: &Caps,
) -> Result<SearchOutcome, CoreError> {
    if !strictly_implies(class_a, class_b) {
        return Err(CoreError::NotAnImplication(class_a.to_string(), class_b.to_string()));
    }

    let mut outcome = SearchOutcome {
        class_a,
        class_b,
        corpus_tried: 0,
        random_tried: 0,
        hit: None,
    };

    for cx in corpus::all() {
        outcome.corpus_tried += 1;
        if separates(&cx.model, class_a, class_b, caps)? {
            outcome.hit = Some(SearchHit { model: cx.model, origin: format!("corpus {}", cx.id) });
            return Ok(outcome);
        }
    }

    for i in 0..budget {
        let model_seed = seed.wrapping_add(i);
        let m = random_model(model_seed, params);
        outcome.random_tried += 1;
        if separates(&m, class_a, class_b, caps)? {
            outcome.hit = Some(SearchHit { model: m, origin: format!("seed {model_seed}") });
            return Ok(outcome);
        }
    }
    Ok(outcome)
}

/// In `b` but not `a`, confirmed twice: by the single-class evaluators and
/// by the full classifier.
fn separates(m: &Model, a: MapClass, b: MapClass, caps: &Caps) -> Result<bool, CoreError> {
    let in_b = mapclass::evaluate(&m.map, &m.t1, &m.t2, b, caps)?.holds;
    if !in_b {
        return Ok(false);
    }
    let in_a = mapclass::evaluate(&m.map, &m.t1, &m.t2, a, caps)?.holds;
    if in_a {
        return Ok(false);
    }
    let full = mapclass::classify(&m.map, &m.t1, &m.t2, caps)?;
    Ok(full.holds(b) && !full.holds(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weakly_open_separator_is_the_first_corpus_model() {
        let outcome = search_separating_example(
            MapClass::WeaklyOpen,
            MapClass::WeaklySemiPreopen,
            10,
            0,
            &GenParams::default(),
            &Caps::default(),
        )
        .unwrap();
        let hit = outcome.hit.expect("the corpus separates this pair");
        assert_eq!(hit.origin, "corpus cx1");
        assert_eq!(outcome.corpus_tried, 1);
        assert_eq!(outcome.random_tried, 0);
    }

    #[test]
    fn identical_classes_are_rejected() {
        let err = search_separating_example(
            MapClass::WeaklyOpen,
            MapClass::WeaklyOpen,
            1,
            0,
            &GenParams::default(),
            &Caps::default(),
        )
        .unwrap_err();
        assert!(matches!(err, CoreError::NotAnImplication(..)));
    }

    #[test]
    fn non_catalogued_pairs_are_rejected() {
        let err = search_separating_example(
            MapClass::Continuous,
            MapClass::WeaklyOpen,
            1,
            0,
            &GenParams::default(),
            &Caps::default(),
        )
        .unwrap_err();
        assert!(matches!(err, CoreError::NotAnImplication(..)));
    }
}
