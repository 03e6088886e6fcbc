//! Finite complete DeMorgan algebras.
//!
//! An [`Algebra`] is a finite bounded lattice carrying an order-reversing
//! involution. All structure lives in explicit tables, so meet, join and
//! complement are exact lookups and the lattice axioms are checked rather
//! than assumed. Element labels are exact rationals in `[0, 1]` for chains
//! and opaque symbols for non-chain algebras; no floating point anywhere.
//!
//! A finite lattice is completely distributive exactly when it is
//! distributive, so the constructor decides complete distributivity by the
//! triple check whenever the algebra is small enough and flags it as assumed
//! otherwise.

use num_rational::Ratio;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Exact rational label. Values used as labels always lie in `[0, 1]`.
pub type Rational = Ratio<i64>;

/// Number of elements above which distributivity is assumed and flagged
/// instead of brute-forced. Chains skip the check entirely.
pub const DISTRIBUTIVITY_CAP: usize = 8;

/// Handle to an element of an [`Algebra`].
///
/// Handles index the algebra that issued them; mixing handles across
/// algebras is a programming error. Derived ordering is declaration order
/// (matching the value order on chains), not the lattice order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elt(u8);

impl Elt {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    fn new(i: usize) -> Elt {
        Elt(u8::try_from(i).expect("algebra element index fits in u8"))
    }
}

/// Element label: an exact rational or an opaque symbol.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    Num(Rational),
    Sym(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Num(r) => write!(f, "{}", format_rational(*r)),
            Label::Sym(s) => write!(f, "{s}"),
        }
    }
}

/// Canonical rendering: integers bare, everything else as `p/q` in lowest
/// terms.
pub fn format_rational(r: Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("algebra needs at least two elements, got {0}")]
    TooSmall(usize),
    #[error("too many elements: {0} (limit 255)")]
    TooLarge(usize),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("no unique {0} element")]
    Unbounded(&'static str),
    #[error("elements {0} and {1} have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("involution is not {0} (at {1})")]
    BadInvolution(&'static str, String),
    #[error("distributivity fails at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("chain labels must lie in [0, 1], got {0}")]
    OutOfRange(String),
}

/// A finite complete DeMorgan algebra: bounded lattice plus order-reversing
/// involution, with coprime and prime element sets precomputed.
#[derive(Debug, PartialEq, Eq)]
pub struct Algebra {
    labels: Vec<Label>,
    n: usize,
    leq: Vec<bool>,  // row-major n*n
    meet: Vec<Elt>,  // row-major n*n
    join: Vec<Elt>,  // row-major n*n
    invol: Vec<Elt>, // length n
    bottom: Elt,
    top: Elt,
    coprimes: Vec<Elt>,
    primes: Vec<Elt>,
    chain: bool,
    distributivity_checked: bool,
}

impl Algebra {
    /// Chain over the given rationals, closed under `v -> 1 - v` and extended
    /// with `0` and `1`. Min/max are meet/join, `1 - v` is the involution.
    /// Chains are completely distributive DeMorgan algebras, so this never
    /// fails once the labels are in range.
    pub fn chain(values: impl IntoIterator<Item = Rational>) -> Arc<Algebra> {
        let mut pool = std::collections::BTreeSet::new();
        pool.insert(Rational::zero());
        pool.insert(Rational::one());
        for v in values {
            assert!(
                v >= Rational::zero() && v <= Rational::one(),
                "chain labels must lie in [0, 1], got {}",
                format_rational(v)
            );
            pool.insert(v);
            pool.insert(Rational::one() - v);
        }
        let sorted: Vec<Rational> = pool.into_iter().collect();
        let n = sorted.len();
        assert!(n <= 255, "chain too large: {n} elements");

        let mut leq = vec![false; n * n];
        let mut meet = vec![Elt(0); n * n];
        let mut join = vec![Elt(0); n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = i <= j;
                meet[i * n + j] = Elt::new(i.min(j));
                join[i * n + j] = Elt::new(i.max(j));
            }
        }
        // Closure under 1-v makes the involution the index reversal.
        let invol: Vec<Elt> = (0..n).map(|i| Elt::new(n - 1 - i)).collect();
        for i in 0..n {
            debug_assert_eq!(sorted[n - 1 - i], Rational::one() - sorted[i]);
        }

        let mut alg = Algebra {
            labels: sorted.into_iter().map(Label::Num).collect(),
            n,
            leq,
            meet,
            join,
            invol,
            bottom: Elt(0),
            top: Elt::new(n - 1),
            coprimes: Vec::new(),
            primes: Vec::new(),
            chain: true,
            distributivity_checked: true,
        };
        alg.compute_irreducibles();
        Arc::new(alg)
    }

    /// General constructor from an explicit order relation and involution.
    /// `leq(i, j)` must already be the full partial order (reflexive,
    /// antisymmetric, transitive); every axiom is verified.
    pub fn from_order(
        labels: Vec<Label>,
        leq_rel: impl Fn(usize, usize) -> bool,
        invol_map: impl Fn(usize) -> usize,
    ) -> Result<Arc<Algebra>, AlgebraError> {
        let n = labels.len();
        if n < 2 {
            return Err(AlgebraError::TooSmall(n));
        }
        if n > 255 {
            return Err(AlgebraError::TooLarge(n));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && labels[i] == labels[j] {
                    return Err(AlgebraError::DuplicateLabel(labels[i].to_string()));
                }
            }
        }

        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = leq_rel(i, j);
            }
        }
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(AlgebraError::NotPartialOrder(format!(
                    "not reflexive at {}",
                    labels[i]
                )));
            }
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(AlgebraError::NotPartialOrder(format!(
                        "not antisymmetric at ({}, {})",
                        labels[i], labels[j]
                    )));
                }
                for k in 0..n {
                    if leq[i * n + j] && leq[j * n + k] && !leq[i * n + k] {
                        return Err(AlgebraError::NotPartialOrder(format!(
                            "not transitive at ({}, {}, {})",
                            labels[i], labels[j], labels[k]
                        )));
                    }
                }
            }
        }

        let bottom = (0..n)
            .find(|&b| (0..n).all(|j| leq[b * n + j]))
            .map(Elt::new)
            .ok_or(AlgebraError::Unbounded("least"))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|j| leq[j * n + t]))
            .map(Elt::new)
            .ok_or(AlgebraError::Unbounded("greatest"))?;

        // Derive meet/join as unique greatest lower / least upper bounds.
        let mut meet = vec![Elt(0); n * n];
        let mut join = vec![Elt(0); n * n];
        for i in 0..n {
            for j in 0..n {
                let lower: Vec<usize> =
                    (0..n).filter(|&k| leq[k * n + i] && leq[k * n + j]).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&k| leq[k * n + g]));
                match glb {
                    Some(g) => meet[i * n + j] = Elt::new(g),
                    None => {
                        return Err(AlgebraError::NotALattice(
                            labels[i].to_string(),
                            labels[j].to_string(),
                            "infimum",
                        ))
                    }
                }
                let upper: Vec<usize> =
                    (0..n).filter(|&k| leq[i * n + k] && leq[j * n + k]).collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&u| upper.iter().all(|&k| leq[u * n + k]));
                match lub {
                    Some(u) => join[i * n + j] = Elt::new(u),
                    None => {
                        return Err(AlgebraError::NotALattice(
                            labels[i].to_string(),
                            labels[j].to_string(),
                            "supremum",
                        ))
                    }
                }
            }
        }

        let invol: Vec<Elt> = (0..n)
            .map(|i| {
                let t = invol_map(i);
                assert!(t < n, "involution image out of range");
                Elt::new(t)
            })
            .collect();
        for i in 0..n {
            if invol[invol[i].index()].index() != i {
                return Err(AlgebraError::BadInvolution(
                    "involutive",
                    labels[i].to_string(),
                ));
            }
            for j in 0..n {
                if leq[i * n + j] && !leq[invol[j].index() * n + invol[i].index()] {
                    return Err(AlgebraError::BadInvolution(
                        "order-reversing",
                        format!("{} <= {}", labels[i], labels[j]),
                    ));
                }
            }
        }

        let distributivity_checked = n <= DISTRIBUTIVITY_CAP;
        if distributivity_checked {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let lhs = meet[a * n + join[b * n + c].index()];
                        let rhs =
                            join[meet[a * n + b].index() * n + meet[a * n + c].index()];
                        if lhs != rhs {
                            return Err(AlgebraError::NotDistributive(
                                labels[a].to_string(),
                                labels[b].to_string(),
                                labels[c].to_string(),
                            ));
                        }
                    }
                }
            }
        }

        let chain = (0..n).all(|i| (0..n).all(|j| leq[i * n + j] || leq[j * n + i]));
        let mut alg = Algebra {
            labels,
            n,
            leq,
            meet,
            join,
            invol,
            bottom,
            top,
            coprimes: Vec::new(),
            primes: Vec::new(),
            chain,
            distributivity_checked,
        };
        alg.compute_irreducibles();
        Ok(Arc::new(alg))
    }

    /// The four-element Boolean algebra `{0, a, b, 1}` with `a' = b`.
    /// Smallest DeMorgan algebra that is not a chain.
    pub fn diamond() -> Arc<Algebra> {
        let labels = vec![
            Label::Num(Rational::zero()),
            Label::Sym("a".into()),
            Label::Sym("b".into()),
            Label::Num(Rational::one()),
        ];
        Algebra::from_order(
            labels,
            |i, j| i == j || i == 0 || j == 3,
            |i| match i {
                0 => 3,
                1 => 2,
                2 => 1,
                _ => 0,
            },
        )
        .expect("diamond is a DeMorgan algebra")
    }

    fn compute_irreducibles(&mut self) {
        // Coprime: nonzero a with a <= b v c implying a <= b or a <= c.
        let n = self.n;
        self.coprimes = (0..n)
            .map(Elt::new)
            .filter(|&a| {
                a != self.bottom
                    && (0..n).all(|b| {
                        (0..n).all(|c| {
                            let bc = self.join[b * n + c].index();
                            !self.leq[a.index() * n + bc]
                                || self.leq[a.index() * n + b]
                                || self.leq[a.index() * n + c]
                        })
                    })
            })
            .collect();
        // Prime: non-unit a with a >= b ^ c implying a >= b or a >= c.
        self.primes = (0..n)
            .map(Elt::new)
            .filter(|&a| {
                a != self.top
                    && (0..n).all(|b| {
                        (0..n).all(|c| {
                            let bc = self.meet[b * n + c].index();
                            !self.leq[bc * n + a.index()]
                                || self.leq[b * n + a.index()]
                                || self.leq[c * n + a.index()]
                        })
                    })
            })
            .collect();
        // The primes are exactly the involution image of the coprimes.
        debug_assert_eq!(
            {
                let mut img: Vec<usize> =
                    self.coprimes.iter().map(|&a| self.invol[a.index()].index()).collect();
                img.sort_unstable();
                img
            },
            self.primes.iter().map(|&a| a.index()).collect::<Vec<_>>()
        );
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_chain(&self) -> bool {
        self.chain
    }

    /// False when the algebra was too large for the distributivity check and
    /// complete distributivity is assumed rather than verified.
    pub fn distributivity_checked(&self) -> bool {
        self.distributivity_checked
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..self.n).map(Elt::new)
    }

    /// All elements except bottom, in declaration order.
    pub fn nonzero(&self) -> impl Iterator<Item = Elt> + '_ {
        let bottom = self.bottom;
        self.elements().filter(move |&e| e != bottom)
    }

    /// All elements except bottom, from the top of the declaration order
    /// down. Canonical order for witness-producing level quantifications.
    pub fn nonzero_descending(&self) -> impl Iterator<Item = Elt> + '_ {
        let bottom = self.bottom;
        (0..self.n).rev().map(Elt::new).filter(move |&e| e != bottom)
    }

    pub fn bottom(&self) -> Elt {
        self.bottom
    }

    pub fn top(&self) -> Elt {
        self.top
    }

    pub fn leq(&self, a: Elt, b: Elt) -> bool {
        self.leq[a.index() * self.n + b.index()]
    }

    pub fn meet(&self, a: Elt, b: Elt) -> Elt {
        self.meet[a.index() * self.n + b.index()]
    }

    pub fn join(&self, a: Elt, b: Elt) -> Elt {
        self.join[a.index() * self.n + b.index()]
    }

    /// The involution (order-reversing complement).
    pub fn complement(&self, a: Elt) -> Elt {
        self.invol[a.index()]
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elt>) -> Elt {
        items.into_iter().fold(self.top, |acc, e| self.meet(acc, e))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elt>) -> Elt {
        items.into_iter().fold(self.bottom, |acc, e| self.join(acc, e))
    }

    /// Nonzero coprime elements `J(L)`, the admissible fuzzy point heights.
    pub fn coprimes(&self) -> &[Elt] {
        &self.coprimes
    }

    /// Non-unit prime elements `P(L)`.
    pub fn primes(&self) -> &[Elt] {
        &self.primes
    }

    pub fn is_coprime(&self, a: Elt) -> bool {
        self.coprimes.contains(&a)
    }

    pub fn label(&self, a: Elt) -> &Label {
        &self.labels[a.index()]
    }

    pub fn display(&self, a: Elt) -> String {
        self.labels[a.index()].to_string()
    }

    pub fn find_label(&self, label: &Label) -> Option<Elt> {
        self.labels.iter().position(|l| l == label).map(Elt::new)
    }

    pub fn find_rational(&self, r: Rational) -> Option<Elt> {
        self.find_label(&Label::Num(r))
    }

    /// Elements below or equal to `a`, in declaration order.
    pub fn down_set(&self, a: Elt) -> Vec<Elt> {
        self.elements().filter(|&e| self.leq(e, a)).collect()
    }

    /// Elements above or equal to `a`, in declaration order.
    pub fn up_set(&self, a: Elt) -> Vec<Elt> {
        self.elements().filter(|&e| self.leq(a, e)).collect()
    }

    /// Elements in the interval `[lo, hi]`, in declaration order.
    pub fn interval(&self, lo: Elt, hi: Elt) -> Vec<Elt> {
        self.elements()
            .filter(|&e| self.leq(lo, e) && self.leq(e, hi))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn boolean_chain_has_two_elements_and_swapping_involution() {
        let alg = Algebra::chain([Rational::zero(), Rational::one()]);
        assert_eq!(alg.len(), 2);
        assert_eq!(alg.complement(alg.bottom()), alg.top());
        assert_eq!(alg.complement(alg.top()), alg.bottom());
    }

    #[test]
    fn chain_closes_under_complements() {
        // Oracle: direct set arithmetic over the labels.
        let input = [rat(1, 2), rat(3, 10), rat(1, 5), rat(1, 4), rat(9, 10), rat(1, 1), rat(7, 10)];
        let mut expect = std::collections::BTreeSet::new();
        expect.insert(rat(0, 1));
        expect.insert(rat(1, 1));
        for v in input {
            expect.insert(v);
            expect.insert(rat(1, 1) - v);
        }
        let expect: Vec<Rational> = expect.into_iter().collect();

        let alg = Algebra::chain(input);
        let got: Vec<Rational> = alg
            .elements()
            .map(|e| match alg.label(e) {
                Label::Num(r) => *r,
                Label::Sym(_) => unreachable!(),
            })
            .collect();
        assert_eq!(got, expect);
        assert_eq!(alg.len(), 11);
        let rendered: Vec<String> = alg.elements().map(|e| alg.display(e)).collect();
        assert_eq!(
            rendered,
            ["0", "1/10", "1/5", "1/4", "3/10", "1/2", "7/10", "3/4", "4/5", "9/10", "1"]
        );
    }

    #[test]
    fn singleton_half_yields_three_chain_with_fixed_point() {
        let alg = Algebra::chain([rat(1, 2)]);
        assert_eq!(alg.len(), 3);
        let half = alg.find_rational(rat(1, 2)).unwrap();
        assert_eq!(alg.complement(half), half);
    }

    /// Brute-force coprimality straight from the definition.
    fn coprime_oracle(alg: &Algebra, a: Elt) -> bool {
        a != alg.bottom()
            && alg.elements().all(|b| {
                alg.elements().all(|c| {
                    !alg.leq(a, alg.join(b, c)) || alg.leq(a, b) || alg.leq(a, c)
                })
            })
    }

    #[test]
    fn chain_coprimes_are_all_nonzero_elements() {
        for alg in [
            Algebra::chain([rat(1, 2)]),
            Algebra::chain([rat(1, 4), rat(1, 3), rat(2, 3)]),
        ] {
            let expect: Vec<Elt> = alg.elements().filter(|&e| coprime_oracle(&alg, e)).collect();
            assert_eq!(alg.coprimes(), expect);
            let nonzero: Vec<Elt> = alg.nonzero().collect();
            assert_eq!(alg.coprimes(), nonzero);
        }
    }

    #[test]
    fn two_chain_coprimes_is_top_only() {
        let alg = Algebra::chain([]);
        assert_eq!(alg.coprimes(), [alg.top()]);
    }

    #[test]
    fn diamond_coprimes_are_the_two_atoms() {
        let alg = Algebra::diamond();
        let expect: Vec<Elt> = alg.elements().filter(|&e| coprime_oracle(&alg, e)).collect();
        assert_eq!(alg.coprimes(), expect);
        let names: Vec<String> = alg.coprimes().iter().map(|&e| alg.display(e)).collect();
        assert_eq!(names, ["a", "b"]);
        assert!(!alg.is_chain());
        assert!(alg.distributivity_checked());
    }

    #[test]
    fn meet_join_tables_agree_with_order_derived_bounds() {
        let alg = Algebra::diamond();
        for a in alg.elements() {
            for b in alg.elements() {
                let m = alg.meet(a, b);
                assert!(alg.leq(m, a) && alg.leq(m, b));
                for c in alg.elements() {
                    if alg.leq(c, a) && alg.leq(c, b) {
                        assert!(alg.leq(c, m));
                    }
                }
                let j = alg.join(a, b);
                assert!(alg.leq(a, j) && alg.leq(b, j));
                for c in alg.elements() {
                    if alg.leq(a, c) && alg.leq(b, c) {
                        assert!(alg.leq(j, c));
                    }
                }
            }
        }
    }

    #[test]
    fn pentagon_is_rejected_as_non_distributive() {
        // N5: 0 < a < b < 1 and 0 < c < 1 with c incomparable to a, b.
        let labels = vec![
            Label::Sym("0".into()),
            Label::Sym("a".into()),
            Label::Sym("b".into()),
            Label::Sym("c".into()),
            Label::Sym("1".into()),
        ];
        let leq = |i: usize, j: usize| {
            i == j || i == 0 || j == 4 || (i == 1 && j == 2)
        };
        // Any involutive order-reversing map; 0<->1, a<->c fails order
        // reversal, so use the unique candidate and expect a failure earlier
        // (distributivity) or at the involution. Swap a<->b reversed by c?
        // There is no order-reversing involution on N5 fixing nothing, so the
        // constructor must reject it one way or another.
        let err = Algebra::from_order(labels, leq, |i| 4 - i).unwrap_err();
        match err {
            AlgebraError::NotDistributive(..) | AlgebraError::BadInvolution(..) => {}
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn broken_involution_is_rejected() {
        let labels = vec![
            Label::Num(rat(0, 1)),
            Label::Num(rat(1, 3)),
            Label::Num(rat(2, 3)),
            Label::Num(rat(1, 1)),
        ];
        // Identity is involutive but not order-reversing on a 4-chain.
        let err = Algebra::from_order(labels, |i, j| i <= j, |i| i).unwrap_err();
        assert!(matches!(err, AlgebraError::BadInvolution("order-reversing", _)));
    }

    #[test]
    fn non_order_is_rejected() {
        let labels = vec![Label::Sym("x".into()), Label::Sym("y".into())];
        let err = Algebra::from_order(labels, |_, _| true, |i| 1 - i).unwrap_err();
        assert!(matches!(err, AlgebraError::NotPartialOrder(_)));
    }

    #[test]
    fn involution_on_chain_is_exactly_one_minus() {
        let alg = Algebra::chain([rat(3, 10)]);
        for e in alg.elements() {
            let (Label::Num(v), Label::Num(w)) = (alg.label(e), alg.label(alg.complement(e)))
            else {
                unreachable!()
            };
            assert_eq!(*w, rat(1, 1) - v);
        }
    }
}
