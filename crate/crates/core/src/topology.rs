//! Graded topologies as finite degree tables, with the level-indexed
//! closure and interior operators and the crisp level topologies.
//!
//! A [`FuzzyTopology`] assigns an openness degree to finitely many sets; the
//! two constants implicitly carry degree top and every unlisted set degree
//! bottom. Validation checks the three gradation axioms: the constants get
//! degree top, a meet of two sets is at least as open as the meet of their
//! degrees, and a join of any subfamily is at least as open as the meet of
//! the family's degrees. The subfamily axiom is exhaustive up to a table
//! cap and reported as partial above it.
//!
//! `closure(u, r)` is the meet of the r-closed supersets of `u` drawn from
//! the table complements plus the top constant; `interior(u, r)` is the
//! join of the r-open table subsets of `u` plus the bottom constant. Both
//! results are plain fuzzy sets: the operators return infima/suprema of the
//! family, which need not be table members themselves.

use crate::algebra::{Algebra, Elt};
use crate::fuzzy::{FuzzySet, Space};
use crate::Caps;
use std::fmt;
use std::sync::Arc;

/// A finitely-supported degree-of-openness assignment on a space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FuzzyTopology {
    space: Arc<Space>,
    algebra: Arc<Algebra>,
    table: Vec<(FuzzySet, Elt)>,
}

/// Which gradation axiom a table violates, with the offending data.
#[derive(Clone, Debug)]
pub enum TopologyDefect {
    /// A constant set listed with a degree other than top.
    ConstantDegree { set: FuzzySet, degree: Elt },
    /// `degree(u meet v)` is below `degree(u) meet degree(v)`.
    MeetDegree { u: FuzzySet, v: FuzzySet, got: Elt, need: Elt },
    /// `degree(join family)` is below the meet of the family's degrees.
    JoinDegree { family: Vec<FuzzySet>, got: Elt, need: Elt },
}

impl TopologyDefect {
    pub fn describe(&self, alg: &Algebra) -> String {
        match self {
            TopologyDefect::ConstantDegree { set, degree } => format!(
                "constant {} listed with degree {} instead of {}",
                set,
                alg.display(*degree),
                alg.display(alg.top())
            ),
            TopologyDefect::MeetDegree { u, v, got, need } => format!(
                "meet of {} and {} has degree {} but needs at least {}",
                u,
                v,
                alg.display(*got),
                alg.display(*need)
            ),
            TopologyDefect::JoinDegree { family, got, need } => {
                let members: Vec<String> = family.iter().map(|s| s.to_string()).collect();
                format!(
                    "join of [{}] has degree {} but needs at least {}",
                    members.join(", "),
                    alg.display(*got),
                    alg.display(*need)
                )
            }
        }
    }
}

/// Outcome of validation. `partial` marks a table too large for the
/// exhaustive subfamily pass, in which case only pairwise joins were
/// checked.
#[derive(Clone, Debug)]
pub struct TopologyVerdict {
    pub ok: bool,
    pub partial: bool,
    pub defect: Option<TopologyDefect>,
}

impl FuzzyTopology {
    /// Build from table entries. Entries are sorted into canonical order and
    /// must not repeat a set.
    pub fn new(
        space: Arc<Space>,
        algebra: Arc<Algebra>,
        entries: impl IntoIterator<Item = (FuzzySet, Elt)>,
    ) -> FuzzyTopology {
        let mut table: Vec<(FuzzySet, Elt)> = entries.into_iter().collect();
        for (set, _) in &table {
            assert_eq!(set.space().name(), space.name(), "table set on the wrong space");
            assert_eq!(**set.algebra(), *algebra, "table set over the wrong algebra");
        }
        table.sort_by(|a, b| a.0.cmp(&b.0));
        for w in table.windows(2) {
            assert!(w[0].0 != w[1].0, "duplicate table entry for {}", w[0].0);
        }
        FuzzyTopology { space, algebra, table }
    }

    pub fn indiscrete(space: Arc<Space>, algebra: Arc<Algebra>) -> FuzzyTopology {
        FuzzyTopology { space, algebra, table: Vec::new() }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// Table entries in canonical order (constants excluded unless listed).
    pub fn table(&self) -> &[(FuzzySet, Elt)] {
        &self.table
    }

    pub fn bottom_set(&self) -> FuzzySet {
        FuzzySet::bottom(self.space.clone(), self.algebra.clone())
    }

    pub fn top_set(&self) -> FuzzySet {
        FuzzySet::top(self.space.clone(), self.algebra.clone())
    }

    /// Degree of openness: the table entry if listed, top for the two
    /// constants, bottom otherwise.
    pub fn degree(&self, set: &FuzzySet) -> Elt {
        if let Some((_, d)) = self.table.iter().find(|(s, _)| s == set) {
            return *d;
        }
        if set.is_bottom() || set.is_top() {
            self.algebra.top()
        } else {
            self.algebra.bottom()
        }
    }

    /// Degree of closedness: openness of the complement.
    pub fn closed_degree(&self, set: &FuzzySet) -> Elt {
        self.degree(&set.complement())
    }

    /// The r-open family: bottom, top, then table sets of degree at least
    /// `r`, in canonical table order.
    pub fn open_family(&self, r: Elt) -> Vec<FuzzySet> {
        assert!(r != self.algebra.bottom(), "levels range over nonzero elements");
        let mut family = vec![self.bottom_set(), self.top_set()];
        family.extend(
            self.table
                .iter()
                .filter(|(_, d)| self.algebra.leq(r, *d))
                .map(|(s, _)| s.clone()),
        );
        family
    }

    /// The r-closed family: complements of the r-open family.
    pub fn closed_family(&self, r: Elt) -> Vec<FuzzySet> {
        self.open_family(r).iter().map(FuzzySet::complement).collect()
    }

    /// Meet of the r-closed supersets of `u`.
    pub fn closure(&self, u: &FuzzySet, r: Elt) -> FuzzySet {
        let mut acc = self.top_set();
        for v in self.closed_family(r) {
            if u.leq(&v) {
                acc = acc.meet(&v);
            }
        }
        acc
    }

    /// Join of the r-open subsets of `u`.
    pub fn interior(&self, u: &FuzzySet, r: Elt) -> FuzzySet {
        let mut acc = self.bottom_set();
        for v in self.open_family(r) {
            if v.leq(u) {
                acc = acc.join(&v);
            }
        }
        acc
    }

    /// The crisp topology of sets with degree at least `a`.
    pub fn level(&self, a: Elt) -> LevelTopology {
        LevelTopology { level: a, opens: self.open_family(a) }
    }

    /// Check the gradation axioms.
    pub fn validate(&self, caps: &Caps) -> TopologyVerdict {
        let alg = &self.algebra;
        let top = alg.top();

        // Constants must carry degree top; only listed entries can break this.
        for (set, d) in &self.table {
            if (set.is_bottom() || set.is_top()) && *d != top {
                return TopologyVerdict {
                    ok: false,
                    partial: false,
                    defect: Some(TopologyDefect::ConstantDegree { set: set.clone(), degree: *d }),
                };
            }
        }

        // Pairwise meets. Pairs involving an unlisted set need nothing
        // (bottom on the right), and constants are neutral, so table pairs
        // suffice.
        for i in 0..self.table.len() {
            for j in i..self.table.len() {
                let (u, du) = &self.table[i];
                let (v, dv) = &self.table[j];
                let need = alg.meet(*du, *dv);
                let m = u.meet(v);
                let got = self.degree(&m);
                if !alg.leq(need, got) {
                    return TopologyVerdict {
                        ok: false,
                        partial: false,
                        defect: Some(TopologyDefect::MeetDegree {
                            u: u.clone(),
                            v: v.clone(),
                            got,
                            need,
                        }),
                    };
                }
            }
        }

        // Joins of subfamilies. Subfamilies containing a set of degree
        // bottom, or a constant, impose nothing new, so subsets of the table
        // suffice. Exhaustive up to the cap, pairwise beyond it.
        let t = self.table.len();
        if t <= caps.table {
            for mask in 1u64..(1 << t) {
                let mut join: Option<FuzzySet> = None;
                let mut need = top;
                for (i, (s, d)) in self.table.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        join = Some(match join {
                            None => s.clone(),
                            Some(acc) => acc.join(s),
                        });
                        need = alg.meet(need, *d);
                    }
                }
                let join = join.unwrap();
                let got = self.degree(&join);
                if !alg.leq(need, got) {
                    let family: Vec<FuzzySet> = self
                        .table
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, (s, _))| s.clone())
                        .collect();
                    return TopologyVerdict {
                        ok: false,
                        partial: false,
                        defect: Some(TopologyDefect::JoinDegree { family, got, need }),
                    };
                }
            }
            TopologyVerdict { ok: true, partial: false, defect: None }
        } else {
            for i in 0..t {
                for j in i..t {
                    let (u, du) = &self.table[i];
                    let (v, dv) = &self.table[j];
                    let need = alg.meet(*du, *dv);
                    let join = u.join(v);
                    let got = self.degree(&join);
                    if !alg.leq(need, got) {
                        return TopologyVerdict {
                            ok: false,
                            partial: true,
                            defect: Some(TopologyDefect::JoinDegree {
                                family: vec![u.clone(), v.clone()],
                                got,
                                need,
                            }),
                        };
                    }
                }
            }
            TopologyVerdict { ok: true, partial: true, defect: None }
        }
    }
}

impl fmt::Display for FuzzyTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (s, d)) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", s, self.algebra.display(*d))?;
        }
        write!(f, "}}")
    }
}

/// A crisp (level) topology: the family of sets whose degree clears a
/// fixed level. Closure and interior here are computed from the family
/// alone, independent of the degree table.
#[derive(Clone, Debug)]
pub struct LevelTopology {
    level: Elt,
    opens: Vec<FuzzySet>,
}

/// Why a level family fails to be a crisp topology.
#[derive(Clone, Debug)]
pub enum LevelDefect {
    MissingConstant(&'static str),
    MeetEscapes(FuzzySet, FuzzySet),
    JoinEscapes(FuzzySet, FuzzySet),
}

impl fmt::Display for LevelDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelDefect::MissingConstant(which) => write!(f, "missing the {which} constant"),
            LevelDefect::MeetEscapes(u, v) => {
                write!(f, "meet of {u} and {v} leaves the family")
            }
            LevelDefect::JoinEscapes(u, v) => {
                write!(f, "join of {u} and {v} leaves the family")
            }
        }
    }
}

impl LevelTopology {
    pub fn level(&self) -> Elt {
        self.level
    }

    pub fn opens(&self) -> &[FuzzySet] {
        &self.opens
    }

    pub fn contains(&self, set: &FuzzySet) -> bool {
        self.opens.iter().any(|s| s == set)
    }

    /// Crisp topology check: both constants present, closed under pairwise
    /// meets and joins (which covers all finite subfamily bounds).
    pub fn validate(&self) -> Result<(), LevelDefect> {
        if !self.opens.iter().any(|s| s.is_bottom()) {
            return Err(LevelDefect::MissingConstant("bottom"));
        }
        if !self.opens.iter().any(|s| s.is_top()) {
            return Err(LevelDefect::MissingConstant("top"));
        }
        for u in &self.opens {
            for v in &self.opens {
                if !self.contains(&u.meet(v)) {
                    return Err(LevelDefect::MeetEscapes(u.clone(), v.clone()));
                }
                if !self.contains(&u.join(v)) {
                    return Err(LevelDefect::JoinEscapes(u.clone(), v.clone()));
                }
            }
        }
        Ok(())
    }

    /// Meet of the family-closed supersets of `u`.
    pub fn closure(&self, u: &FuzzySet) -> FuzzySet {
        let mut acc = FuzzySet::top(u.space().clone(), u.algebra().clone());
        for open in &self.opens {
            let closed = open.complement();
            if u.leq(&closed) {
                acc = acc.meet(&closed);
            }
        }
        acc
    }

    /// Join of the family members below `u`.
    pub fn interior(&self, u: &FuzzySet) -> FuzzySet {
        let mut acc = FuzzySet::bottom(u.space().clone(), u.algebra().clone());
        for open in &self.opens {
            if open.leq(u) {
                acc = acc.join(open);
            }
        }
        acc
    }

    pub fn is_semi_preopen(&self, u: &FuzzySet) -> bool {
        u.leq(&self.closure(&self.interior(&self.closure(u))))
    }
}
