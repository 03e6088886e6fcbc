//! Command implementations: each one resolves its inputs, runs the
//! corresponding core machinery, and produces a report tree plus a pass or
//! hard-fail verdict. Recoverable input problems (unknown names, values
//! outside the algebra, violated preconditions, exceeded caps) surface as
//! `CliError` and exit with the usage status.

use crate::parse::{self, Registry};
use crate::report::Node;
use lftop_core::algebra::Elt;
use lftop_core::fuzzy::{FuzzyMap, FuzzySet};
use lftop_core::harness::corpus;
use lftop_core::harness::generate::GenParams;
use lftop_core::harness::model::Model;
use lftop_core::harness::search;
use lftop_core::harness::separation::TheoremOutcome;
use lftop_core::harness::suite::{self, SuiteConfig, SuiteOutcome};
use lftop_core::harness::theorems;
use lftop_core::mapclass::{self, ClassVerdict, MapClass, WitnessSide};
use lftop_core::setclass;
use lftop_core::topology::FuzzyTopology;
use lftop_core::{Caps, CoreError};
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Parse(parse::ParseError),
    Io(String, std::io::Error),
    Input(String),
    Core(CoreError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "cannot read `{path}`: {e}"),
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        CliError::Core(e)
    }
}

impl From<parse::ParseError> for CliError {
    fn from(e: parse::ParseError) -> CliError {
        CliError::Parse(e)
    }
}

/// A finished command: the report tree and whether a hard-asserted check
/// failed (exit status 1).
pub struct Outcome {
    pub report: Node,
    pub hard_failure: bool,
}

impl Outcome {
    fn pass(report: Node) -> Outcome {
        Outcome { report, hard_failure: false }
    }
}

pub const CORPUS_IDS: [&str; 3] = ["cx1", "cx2", "cx3"];

pub fn corpus_document(id: &str) -> Option<&'static str> {
    match id {
        "cx1" => Some(include_str!("../corpus/cx1.lft")),
        "cx2" => Some(include_str!("../corpus/cx2.lft")),
        "cx3" => Some(include_str!("../corpus/cx3.lft")),
        _ => None,
    }
}

pub fn load_registry(
    file: Option<&std::path::Path>,
    corpus_id: Option<&str>,
) -> Result<Registry, CliError> {
    let text = match (file, corpus_id) {
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(path.display().to_string(), e))?,
        (None, Some(id)) => corpus_document(id)
            .ok_or_else(|| {
                CliError::Input(format!(
                    "unknown corpus id `{id}` (available: {})",
                    CORPUS_IDS.join(", ")
                ))
            })?
            .to_string(),
        _ => {
            return Err(CliError::Input(
                "exactly one of --file or --corpus selects the input".into(),
            ))
        }
    };
    Ok(parse::parse(&text)?)
}

fn get_topology<'a>(reg: &'a Registry, name: &str) -> Result<&'a FuzzyTopology, CliError> {
    reg.topologies
        .get(name)
        .ok_or_else(|| CliError::Input(format!("unknown topology `{name}`")))
}

fn get_set<'a>(reg: &'a Registry, name: &str) -> Result<&'a FuzzySet, CliError> {
    reg.sets.get(name).ok_or_else(|| CliError::Input(format!("unknown set `{name}`")))
}

fn get_map<'a>(reg: &'a Registry, name: &str) -> Result<&'a FuzzyMap, CliError> {
    reg.maps.get(name).ok_or_else(|| CliError::Input(format!("unknown map `{name}`")))
}

/// Parse a level argument against a topology's algebra; the bottom element
/// is rejected because every operator quantifies over nonzero levels.
fn get_level(top: &FuzzyTopology, text: &str) -> Result<Elt, CliError> {
    let alg = top.algebra();
    let r = parse::parse_rational(text)
        .ok_or_else(|| CliError::Input(format!("`{text}` is not a rational value")))?;
    let e = alg
        .find_rational(r)
        .ok_or_else(|| CliError::Input(format!("level `{text}` is not an element of the algebra")))?;
    if e == alg.bottom() {
        return Err(CliError::Input("levels range over nonzero elements".into()));
    }
    Ok(e)
}

/// Operator commands presuppose the gradation axioms; refuse otherwise.
fn require_valid(top: &FuzzyTopology, name: &str, caps: &Caps) -> Result<(), CliError> {
    let v = top.validate(caps);
    if !v.ok {
        return Err(CliError::Input(format!(
            "topology `{name}` fails validation: {}",
            v.defect.map(|d| d.describe(top.algebra())).unwrap_or_default()
        )));
    }
    Ok(())
}

pub fn validate(reg: &Registry, name: &str, caps: &Caps) -> Result<Outcome, CliError> {
    let top = get_topology(reg, name)?;
    let v = top.validate(caps);
    let mut report = Node::tree();
    report.leaf("topology", name);
    report.leaf(
        "algebra_distributivity",
        if top.algebra().distributivity_checked() { "checked" } else { "assumed" },
    );
    report.leaf(
        "verdict",
        match (v.ok, v.partial) {
            (true, false) => "ok",
            (true, true) => "ok-partial",
            (false, _) => "failed",
        },
    );
    if v.partial {
        report.leaf("note", "table above the subfamily cap; pairwise joins checked only");
    }
    if let Some(defect) = &v.defect {
        report.leaf("defect", defect.describe(top.algebra()));
    }
    Ok(Outcome { report, hard_failure: !v.ok })
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Closure,
    Interior,
    SpInterior,
    SpClosure,
    ThetaClosure,
    ThetaInterior,
}

impl Operator {
    pub fn name(self) -> &'static str {
        match self {
            Operator::Closure => "closure",
            Operator::Interior => "interior",
            Operator::SpInterior => "sp-interior",
            Operator::SpClosure => "sp-closure",
            Operator::ThetaClosure => "theta-closure",
            Operator::ThetaInterior => "theta-interior",
        }
    }
}

pub fn operator(
    reg: &Registry,
    op: Operator,
    topology: &str,
    set: &str,
    level: &str,
    caps: &Caps,
) -> Result<Outcome, CliError> {
    let top = get_topology(reg, topology)?;
    require_valid(top, topology, caps)?;
    let u = get_set(reg, set)?;
    if u.space().name() != top.space().name() {
        return Err(CliError::Input(format!(
            "set `{set}` lives on space `{}`, not the topology's `{}`",
            u.space().name(),
            top.space().name()
        )));
    }
    let r = get_level(top, level)?;
    let result = match op {
        Operator::Closure => top.closure(u, r),
        Operator::Interior => top.interior(u, r),
        Operator::SpInterior => setclass::sp_interior(top, u, r, caps)?,
        Operator::SpClosure => setclass::sp_closure(top, u, r, caps)?,
        Operator::ThetaClosure => setclass::theta_closure(top, u, r),
        Operator::ThetaInterior => setclass::theta_interior(top, u, r),
    };
    let mut report = Node::tree();
    report.leaf("topology", topology);
    report.leaf("set", u);
    report.leaf("level", top.algebra().display(r));
    report.leaf("result", result);
    Ok(Outcome::pass(report))
}

pub fn classify_set(
    reg: &Registry,
    topology: &str,
    set: &str,
    level: &str,
    caps: &Caps,
) -> Result<Outcome, CliError> {
    let top = get_topology(reg, topology)?;
    require_valid(top, topology, caps)?;
    let u = get_set(reg, set)?;
    let r = get_level(top, level)?;
    let c = setclass::classify_set(top, u, r);
    let mut report = Node::tree();
    report.leaf("topology", topology);
    report.leaf("set", u);
    report.leaf("level", top.algebra().display(r));
    let classes = report.child("classes");
    classes.leaf("open", c.open);
    classes.leaf("closed", c.closed);
    classes.leaf("preopen", c.preopen);
    classes.leaf("preclosed", c.preclosed);
    classes.leaf("regular_open", c.regular_open);
    classes.leaf("regular_closed", c.regular_closed);
    classes.leaf("alpha_open", c.alpha_open);
    classes.leaf("alpha_closed", c.alpha_closed);
    classes.leaf("semi_preopen", c.semi_preopen);
    classes.leaf("semi_preclosed", c.semi_preclosed);
    Ok(Outcome::pass(report))
}

fn witness_node(node: &mut Node, verdict: &ClassVerdict) {
    if let Some(w) = &verdict.witness {
        let wn = node.child("witness");
        wn.leaf("set", &w.set);
        if let Some(level) = w.level_label() {
            wn.leaf("level", level);
        }
        let side = |s: &WitnessSide| s.to_string();
        wn.leaf("lhs", side(&w.lhs));
        wn.leaf("rhs", side(&w.rhs));
    }
}

pub fn classify_map(
    reg: &Registry,
    map: &str,
    t1: &str,
    t2: &str,
    caps: &Caps,
) -> Result<Outcome, CliError> {
    let f = get_map(reg, map)?;
    let top1 = get_topology(reg, t1)?;
    let top2 = get_topology(reg, t2)?;
    require_valid(top1, t1, caps)?;
    require_valid(top2, t2, caps)?;
    check_model_shape(f, top1, top2)?;
    let classification = mapclass::classify(f, top1, top2, caps)?;
    let mut report = Node::tree();
    report.leaf("map", map);
    report.leaf("domain", t1);
    report.leaf("codomain", t2);
    let verdicts = report.child("verdicts");
    for v in &classification.verdicts {
        let vn = verdicts.child(v.class.name());
        vn.leaf("holds", v.holds);
        witness_node(vn, v);
    }
    report.leaf("note", CONTRA_READING_NOTE);
    Ok(Outcome::pass(report))
}

/// Standing reinterpretation flag: the printed contra-semi-preopen
/// definition is garbled, so it is evaluated under the symmetric reading.
const CONTRA_READING_NOTE: &str =
    "contra_semi_preopen is read as: images of open sets are semi-preclosed";

fn check_model_shape(
    f: &FuzzyMap,
    t1: &FuzzyTopology,
    t2: &FuzzyTopology,
) -> Result<(), CliError> {
    if f.source().name() != t1.space().name() {
        return Err(CliError::Input(format!(
            "map source `{}` does not match the domain topology's space `{}`",
            f.source().name(),
            t1.space().name()
        )));
    }
    if f.target().name() != t2.space().name() {
        return Err(CliError::Input(format!(
            "map target `{}` does not match the codomain topology's space `{}`",
            f.target().name(),
            t2.space().name()
        )));
    }
    if t1.algebra() != t2.algebra() {
        return Err(CliError::Input("the two topologies use different algebras".into()));
    }
    Ok(())
}

fn theorem_report_node(rep: &theorems::TheoremReport) -> Node {
    let mut node = Node::tree();
    node.leaf("theorem", &rep.id);
    node.leaf("model", &rep.model);
    if let Some(pre) = &rep.precondition_failure {
        node.leaf("precondition", pre);
        return node;
    }
    let conds = node.child("conditions");
    for c in &rep.conditions {
        let cn = conds.child(c.label.replace(' ', "-"));
        cn.leaf("holds", c.holds);
        if let Some(w) = &c.witness {
            cn.leaf("witness", w);
        }
    }
    node.leaf("agreement", rep.agreement);
    if let Some(outcome) = &rep.outcome {
        node.leaf(
            "outcome",
            match outcome {
                TheoremOutcome::Pass => "pass".to_string(),
                TheoremOutcome::Fail(w) => format!("fail ({w})"),
                TheoremOutcome::Vacuous(why) => format!("vacuous ({why})"),
            },
        );
    }
    for n in &rep.notes {
        node.leaf("note", n);
    }
    node
}

pub fn check(
    reg: &Registry,
    theorem: &str,
    map: &str,
    t1: &str,
    t2: &str,
    level: Option<&str>,
    caps: &Caps,
) -> Result<Outcome, CliError> {
    let f = get_map(reg, map)?;
    let top1 = get_topology(reg, t1)?;
    let top2 = get_topology(reg, t2)?;
    check_model_shape(f, top1, top2)?;
    let model = Model::new(
        format!("{map}:{t1}->{t2}"),
        top1.algebra().clone(),
        top1.clone(),
        top2.clone(),
        f.clone(),
    );
    let r = level.map(|l| get_level(top1, l)).transpose()?;
    let rep = theorems::eval_theorem(theorem, &model, r, caps)?;
    let mut report = Node::tree();
    // Theorems are evaluated even over invalid tables (the operators are
    // total); the validation verdicts ride along for the audit.
    let validation = report.child("validation");
    for (side, top, name) in [("domain", top1, t1), ("codomain", top2, t2)] {
        let v = top.validate(caps);
        validation.leaf(
            side,
            if v.ok {
                format!("{name} ok")
            } else {
                format!("{name} failed: {}", v.defect.unwrap().describe(top.algebra()))
            },
        );
    }
    report.add("result", theorem_report_node(&rep));
    Ok(Outcome::pass(report))
}

pub fn corpus_run(caps: &Caps) -> Result<Outcome, CliError> {
    let mut report = Node::tree();
    let mut any_implication_violated = false;
    for cx in corpus::all() {
        let rep = suite::corpus_report(&cx, caps)?;
        let node = report.child(&rep.id);
        let validation = node.child("validation");
        validation.leaf("domain", &rep.t1_validation);
        validation.leaf("codomain", &rep.t2_validation);
        let verdicts = node.child("verdicts");
        for v in &rep.classification.verdicts {
            let vn = verdicts.child(v.class.name());
            vn.leaf("holds", v.holds);
            witness_node(vn, v);
        }
        // The one-directional implications are hard-asserted on the corpus.
        for &(a, b) in lftop_core::harness::laws::MAP_IMPLICATIONS {
            if rep.classification.holds(a) && !rep.classification.holds(b) {
                any_implication_violated = true;
                node.leaf("implication_violation", format!("{a} holds but {b} fails"));
            }
        }
        let trails = node.child("trails");
        for (class, entries) in &rep.trails {
            let tn = trails.child(class.name());
            for e in entries {
                let en = tn.child("case");
                en.leaf("set", &e.set);
                en.leaf("level", e.set.algebra().display(e.level));
                en.leaf("holds", e.holds);
                en.leaf("lhs", e.lhs.to_string());
                en.leaf("rhs", e.rhs.to_string());
            }
        }
        node.leaf("levels_agree", rep.levels_agree);
        node.leaf("note", CONTRA_READING_NOTE);
        let intended = node.child("recorded_intent");
        for &(class, expected) in cx.intended {
            intended.leaf(
                class.name(),
                format!("recorded {expected}, computed {}", rep.classification.holds(class)),
            );
        }
        if !rep.findings.is_empty() {
            let fn_node = node.child("findings");
            for f in &rep.findings {
                fn_node.leaf("finding", f);
            }
        }
    }
    Ok(Outcome { report, hard_failure: any_implication_violated })
}

pub fn search_cmd(
    class_a: &str,
    class_b: &str,
    budget: u64,
    seed: u64,
    caps: &Caps,
) -> Result<Outcome, CliError> {
    let a: MapClass = class_a.parse().map_err(CliError::Input)?;
    let b: MapClass = class_b.parse().map_err(CliError::Input)?;
    let outcome =
        search::search_separating_example(a, b, budget, seed, &GenParams::default(), caps)?;
    let mut report = Node::tree();
    report.leaf("class_a", a.name());
    report.leaf("class_b", b.name());
    report.leaf("budget", budget);
    report.leaf("seed", seed);
    report.leaf("corpus_tried", outcome.corpus_tried);
    report.leaf("random_tried", outcome.random_tried);
    match &outcome.hit {
        None => {
            report.leaf("outcome", "none found in budget");
        }
        Some(hit) => {
            report.leaf("outcome", "found");
            report.leaf("origin", &hit.origin);
            report.leaf("reverified", "true");
            let m = report.child("model");
            let alg = &hit.model.algebra;
            let labels: Vec<String> =
                alg.elements().map(|e| alg.display(e)).collect();
            m.leaf("algebra", labels.join(" "));
            m.leaf(
                "domain",
                format!(
                    "{} points {}",
                    hit.model.t1.space().name(),
                    hit.model.t1.space().points().collect::<Vec<_>>().join(" ")
                ),
            );
            m.leaf(
                "codomain",
                format!(
                    "{} points {}",
                    hit.model.t2.space().name(),
                    hit.model.t2.space().points().collect::<Vec<_>>().join(" ")
                ),
            );
            m.leaf("t1", &hit.model.t1);
            m.leaf("t2", &hit.model.t2);
            m.leaf("map", &hit.model.map);
            // Chain-algebra hits are also emitted as a loadable document.
            if let Some(reg) = Registry::from_model(&hit.model) {
                let doc = report.child("document");
                for line in reg.serialize().lines() {
                    doc.leaf("line", line);
                }
            }
        }
    }
    Ok(Outcome::pass(report))
}

fn batch_node(node: &mut Node, counts: &lftop_core::harness::suite::BatchCounts) {
    node.leaf("cases", counts.cases);
    node.leaf("pass", counts.pass);
    node.leaf("fail", counts.fail);
    node.leaf("vacuous", counts.vacuous);
    for f in &counts.failures {
        node.leaf("failure", f);
    }
}

pub fn suite_node(outcome: &SuiteOutcome) -> Node {
    let mut report = Node::tree();
    report.leaf("seeds", outcome.seeds);
    report.leaf("base_seed", outcome.base_seed);
    report.leaf("separation_models", outcome.separation_models);

    let corpus_node = report.child("corpus");
    for rep in &outcome.corpus {
        let node = corpus_node.child(&rep.id);
        node.leaf("domain_validation", &rep.t1_validation);
        node.leaf("codomain_validation", &rep.t2_validation);
        let verdicts = node.child("verdicts");
        for v in &rep.classification.verdicts {
            verdicts.leaf(v.class.name(), v.holds);
        }
        node.leaf("levels_agree", rep.levels_agree);
    }

    let laws = report.child("laws");
    laws.leaf("models", outcome.law_models);
    laws.leaf("checks", outcome.laws.checks);
    laws.leaf(
        "note",
        "the theta item on preopen regular-closed sets runs under its type-correct reading",
    );
    laws.leaf("failures", outcome.laws.failures.len());
    for f in &outcome.laws.failures {
        laws.leaf("failure", format!("{}: {}", f.law, f.detail));
    }
    for (name, reason) in &outcome.skipped_topologies {
        laws.leaf("skipped", format!("{name}: {reason}"));
    }

    let imps = report.child("implications");
    imps.leaf("checks", outcome.implications.checks);
    imps.leaf("failures", outcome.implications.failures.len());
    for f in &outcome.implications.failures {
        imps.leaf("failure", format!("{}: {}", f.law, f.detail));
    }

    let matrices = report.child("matrices");
    for m in &outcome.matrices {
        let node = matrices.child(&m.id);
        node.leaf("models", m.rows.len());
        node.leaf("agree", m.agreeing);
        node.leaf("diverge", m.divergent);
        node.leaf("precondition_unmet", m.preconditions_unmet);
        if let Some(row) = m.rows.iter().find(|r| !r.notes.is_empty()) {
            for n in &row.notes {
                node.leaf("note", n);
            }
        }
        for row in &m.rows {
            if row.precondition_failure.is_none() && !row.agreement {
                let rn = node.child("divergent");
                rn.leaf("model", &row.model);
                for c in &row.conditions {
                    let cn = rn.child(c.label.replace(' ', "-"));
                    cn.leaf("holds", c.holds);
                    if let Some(w) = &c.witness {
                        cn.leaf("witness", w);
                    }
                }
            }
        }
    }

    let sep = report.child("separation_theorem");
    batch_node(sep, &outcome.separation_batch);
    let conn = report.child("connectedness_theorem");
    batch_node(conn, &outcome.connectedness_batch);

    let fixtures = report.child("fixtures");
    for f in &outcome.fixtures {
        let node = fixtures.child(f.name);
        node.leaf("strongly_separated_atoms", f.strongly_separated_atoms);
        node.leaf("semi_pre_t2", f.semi_pre_t2);
        node.leaf("connected", f.connected);
        if let Some(w) = &f.connectedness_witness {
            node.leaf("witness", w);
        }
        node.leaf("semi_preconnected", f.semi_preconnected);
    }

    let findings = report.child("findings");
    findings.leaf("count", outcome.findings.len());
    for f in &outcome.findings {
        findings.leaf("finding", f);
    }

    let summary = report.child("summary");
    summary.leaf("hard_failures", outcome.hard_failures());
    report
}

pub fn suite_cmd(seeds: u64, seed: u64, caps: &Caps) -> Result<Outcome, CliError> {
    let cfg = SuiteConfig {
        seeds,
        base_seed: seed,
        separation_models: 2 * seeds,
        params: GenParams::default(),
        caps: *caps,
    };
    let outcome = suite::run_suite(&cfg)?;
    let hard_failure = outcome.hard_failures() > 0;
    Ok(Outcome { report: suite_node(&outcome), hard_failure })
}
