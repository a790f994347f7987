//! Fibrational properties of functors, checked by exhaustive enumeration.
//!
//! A functor is a discrete opfibration when every `(a, u : f(a) → b)` has
//! exactly one lift with domain `a`; it is an opfibration when an
//! opcartesian lift exists; a lens is a split opfibration when every
//! chosen lift is opcartesian. Discrete fibrations are checked through
//! the opposite functor.

use serde::Serialize;
use std::fmt;

use crate::category::MorId;
use crate::functor::Functor;
use crate::lens::Lens;

/// Why a functor fails to be a discrete opfibration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DopfViolation {
    NoLift {
        at: String,
        over: String,
    },
    MultipleLifts {
        at: String,
        over: String,
        first: String,
        second: String,
    },
}

impl fmt::Display for DopfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DopfViolation::NoLift { at, over } => {
                write!(f, "no lift of {over} with domain {at}")
            }
            DopfViolation::MultipleLifts {
                at,
                over,
                first,
                second,
            } => {
                write!(
                    f,
                    "lifts of {over} at {at} are not unique: {first} and {second}"
                )
            }
        }
    }
}

/// Why a chosen lift fails to be opcartesian.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OpcartesianViolation {
    /// A morphism over a factorisation of the base has no mediating fill.
    NoFill {
        at: String,
        over: String,
        lift: String,
        morphism: String,
        base_factor: String,
    },
    /// Two distinct fills exist.
    MultipleFills {
        at: String,
        over: String,
        lift: String,
        morphism: String,
        first: String,
        second: String,
    },
}

impl fmt::Display for OpcartesianViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpcartesianViolation::NoFill {
                at,
                over,
                lift,
                morphism,
                base_factor,
            } => write!(
                f,
                "lift {lift} of {over} at {at} is not opcartesian: {morphism} over \
                 {over};{base_factor} has no fill through it"
            ),
            OpcartesianViolation::MultipleFills {
                at,
                over,
                lift,
                morphism,
                first,
                second,
            } => {
                write!(
                    f,
                    "lift {lift} of {over} at {at} is not opcartesian: {morphism} fills \
                     through both {first} and {second}"
                )
            }
        }
    }
}

/// Check whether `f` is a discrete opfibration.
pub fn discrete_opfibration_report(f: &Functor) -> Vec<DopfViolation> {
    let a_cat = f.source();
    let b_cat = f.target();
    let mut out = Vec::new();
    for a in a_cat.objects() {
        for u in b_cat.morphisms_from(f.on_object(a)) {
            let mut lifts = a_cat.morphisms_from(a).filter(|&m| f.on_morphism(m) == u);
            match (lifts.next(), lifts.next()) {
                (Some(_), None) => {}
                (None, _) => out.push(DopfViolation::NoLift {
                    at: a_cat.object_name(a).into(),
                    over: b_cat.morphism_name(u).into(),
                }),
                (Some(m1), Some(m2)) => out.push(DopfViolation::MultipleLifts {
                    at: a_cat.object_name(a).into(),
                    over: b_cat.morphism_name(u).into(),
                    first: a_cat.morphism_name(m1).into(),
                    second: a_cat.morphism_name(m2).into(),
                }),
            }
        }
    }
    out
}

/// Check whether `f` is a discrete fibration (unique lifts with given
/// codomain), via the opposite functor.
pub fn discrete_fibration_report(f: &Functor) -> Vec<DopfViolation> {
    discrete_opfibration_report(&f.opposite())
}

/// Is the morphism `lift` (out of `a`, over `u`) opcartesian for `f`?
///
/// For every `w : a → x` and factorisation `f(w) = v ∘ u`, there must be
/// exactly one `h : cod(lift) → x` with `f(h) = v` and `h ∘ lift = w`.
pub fn opcartesian_violations(f: &Functor, lift: MorId, witnesses: &mut Vec<OpcartesianViolation>) {
    let a_cat = f.source();
    let b_cat = f.target();
    let a = a_cat.dom(lift);
    let u = f.on_morphism(lift);
    let mid = a_cat.cod(lift);
    for w in a_cat.morphisms_from(a) {
        let fw = f.on_morphism(w);
        for v in b_cat.morphisms_from(b_cat.cod(u)) {
            if b_cat.compose(u, v) != Some(fw) {
                continue;
            }
            let mut fills = a_cat
                .morphisms_from(mid)
                .filter(|&h| f.on_morphism(h) == v && a_cat.compose(lift, h) == Some(w));
            match (fills.next(), fills.next()) {
                (Some(_), None) => {}
                (None, _) => witnesses.push(OpcartesianViolation::NoFill {
                    at: a_cat.object_name(a).into(),
                    over: b_cat.morphism_name(u).into(),
                    lift: a_cat.morphism_name(lift).into(),
                    morphism: a_cat.morphism_name(w).into(),
                    base_factor: b_cat.morphism_name(v).into(),
                }),
                (Some(h1), Some(h2)) => witnesses.push(OpcartesianViolation::MultipleFills {
                    at: a_cat.object_name(a).into(),
                    over: b_cat.morphism_name(u).into(),
                    lift: a_cat.morphism_name(lift).into(),
                    morphism: a_cat.morphism_name(w).into(),
                    first: a_cat.morphism_name(h1).into(),
                    second: a_cat.morphism_name(h2).into(),
                }),
            }
        }
    }
}

/// Check whether a lens is a split opfibration: every chosen lift must be
/// opcartesian.
pub fn split_opfibration_report(lens: &Lens) -> Vec<OpcartesianViolation> {
    let mut out = Vec::new();
    for (_, _, m) in lens.lifts() {
        opcartesian_violations(lens.functor(), m, &mut out);
    }
    out
}

/// Pairs `(a, u)` admitting no opcartesian lift at all; empty iff `f` is
/// an opfibration (not necessarily split or chosen).
pub fn opfibration_report(f: &Functor) -> Vec<DopfViolation> {
    let a_cat = f.source();
    let b_cat = f.target();
    let mut out = Vec::new();
    for a in a_cat.objects() {
        for u in b_cat.morphisms_from(f.on_object(a)) {
            let found = a_cat
                .morphisms_from(a)
                .filter(|&m| f.on_morphism(m) == u)
                .any(|m| {
                    let mut probe = Vec::new();
                    opcartesian_violations(f, m, &mut probe);
                    probe.is_empty()
                });
            if !found {
                out.push(DopfViolation::NoLift {
                    at: a_cat.object_name(a).into(),
                    over: b_cat.morphism_name(u).into(),
                });
            }
        }
    }
    out
}

/// Summary of all fibrational checks for one functor.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub is_discrete_opfibration: bool,
    pub is_discrete_fibration: bool,
    pub is_opfibration: bool,
    /// `None` when the search space exceeds the enumeration budget.
    pub lens_structure_count: Option<usize>,
}

const LENS_ENUMERATION_BUDGET: u128 = 1_000_000;

pub fn classify(f: &Functor) -> Classification {
    let count = if crate::lens::lens_search_space(f) <= LENS_ENUMERATION_BUDGET {
        Some(crate::lens::enumerate_lens_structures(f).len())
    } else {
        None
    };
    Classification {
        is_discrete_opfibration: discrete_opfibration_report(f).is_empty(),
        is_discrete_fibration: discrete_fibration_report(f).is_empty(),
        is_opfibration: opfibration_report(f).is_empty(),
        lens_structure_count: count,
    }
}
