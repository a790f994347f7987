//! Delta lenses: functors equipped with a functorial choice of lifts.
//!
//! A lens from `A` to `B` is a functor `f : A → B` together with a lift
//! `φ(a, u) : a → p(a, u)` for every object `a` of `A` and morphism
//! `u : f(a) → b` of `B`, subject to three laws:
//!
//! - **L1 (projection)**: `f(φ(a, u)) = u`;
//! - **L2 (identity)**: `φ(a, id_{f a}) = id_a`;
//! - **L3 (composition)**: `φ(a, v∘u) = φ(p(a, u), v) ∘ φ(a, u)`.
//!
//! Equivalently, a lens is a wide subcategory of `A` on which `f`
//! restricts to a discrete opfibration: the subcategory of chosen lifts.
//! Both directions of that correspondence are implemented here and are
//! mutually inverse on the nose.
//!
//! Lens validation assumes the underlying category and functor are valid;
//! run those validators first (the CLI does).

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

use crate::category::{Category, MorId, ObjId, WideSubcategory};
use crate::error::BuildError;
use crate::functor::Functor;
use crate::opfibration::DopfViolation;

/// A delta lens: the functor is the forward direction ("get"), the lift
/// table is the update propagation ("put").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lens {
    functor: Functor,
    lifts: BTreeMap<(ObjId, MorId), MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LensViolation {
    /// No lift is provided for `(a, u : f(a) → b)`.
    MissingLift { at: String, over: String },
    /// A lift is provided for a pair that does not need one.
    SpuriousLift { at: String, over: String },
    /// The lift of `(a, u)` does not start at `a`.
    LiftDomain {
        at: String,
        over: String,
        lift: String,
        actual_dom: String,
    },
    /// L1 fails: the lift of `(a, u)` does not project to `u`.
    LiftProjection {
        at: String,
        over: String,
        lift: String,
        image: String,
    },
    /// L2 fails: the lift of an identity is not an identity.
    IdentityLift { at: String, lift: String },
    /// L3 fails: lifting `v∘u` differs from pasting the lifts of `u` and `v`.
    CompositionLift {
        at: String,
        over_first: String,
        over_then: String,
        lift_of_composite: String,
        pasted: String,
    },
}

impl fmt::Display for LensViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LensViolation::MissingLift { at, over } => {
                write!(f, "no lift of {over} at {at}")
            }
            LensViolation::SpuriousLift { at, over } => {
                write!(f, "lift of {over} at {at} is spurious: {over} does not start at the image of {at}")
            }
            LensViolation::LiftDomain {
                at,
                over,
                lift,
                actual_dom,
            } => {
                write!(
                    f,
                    "lift {lift} of {over} at {at} starts at {actual_dom}, expected {at}"
                )
            }
            LensViolation::LiftProjection {
                at,
                over,
                lift,
                image,
            } => {
                write!(
                    f,
                    "lift {lift} of {over} at {at} projects to {image}, expected {over}"
                )
            }
            LensViolation::IdentityLift { at, lift } => {
                write!(
                    f,
                    "lift of the identity at {at} is {lift}, expected the identity"
                )
            }
            LensViolation::CompositionLift {
                at,
                over_first,
                over_then,
                lift_of_composite,
                pasted,
            } => write!(
                f,
                "lift of {over_first};{over_then} at {at} is {lift_of_composite}, \
                 but pasting the stepwise lifts gives {pasted}"
            ),
        }
    }
}

impl Lens {
    /// Assemble a lens from a functor and a lift table. Only index ranges
    /// are checked here; use [`Lens::validate`] for the laws.
    pub fn new(
        functor: Functor,
        lifts: BTreeMap<(ObjId, MorId), MorId>,
    ) -> Result<Lens, BuildError> {
        let a = functor.source();
        let b = functor.target();
        for (&(obj, over), &lift) in &lifts {
            if obj.index() >= a.object_count()
                || over.index() >= b.morphism_count()
                || lift.index() >= a.morphism_count()
            {
                return Err(BuildError::Invalid("lift table index out of range".into()));
            }
        }
        Ok(Lens { functor, lifts })
    }

    /// The identity lens on a category: every morphism lifts to itself.
    pub fn identity(cat: Category) -> Lens {
        let functor = Functor::identity(cat);
        let mut lifts = BTreeMap::new();
        for a in functor.source().objects() {
            for u in functor.source().morphisms_from(a) {
                lifts.insert((a, u), u);
            }
        }
        Lens { functor, lifts }
    }

    pub fn functor(&self) -> &Functor {
        &self.functor
    }

    pub fn source(&self) -> &Category {
        self.functor.source()
    }

    pub fn target(&self) -> &Category {
        self.functor.target()
    }

    pub fn lift(&self, a: ObjId, u: MorId) -> Option<MorId> {
        self.lifts.get(&(a, u)).copied()
    }

    pub fn lifts(&self) -> impl Iterator<Item = (ObjId, MorId, MorId)> + '_ {
        self.lifts.iter().map(|(&(a, u), &m)| (a, u, m))
    }

    /// Codomain of the lift of `(a, u)`: where the update lands.
    pub fn transport(&self, a: ObjId, u: MorId) -> Option<ObjId> {
        self.lift(a, u).map(|m| self.source().cod(m))
    }

    /// Check the lens laws, one witness per defect.
    pub fn validate(&self) -> Vec<LensViolation> {
        let mut out = Vec::new();
        let a_cat = self.source();
        let b_cat = self.target();
        let name_obj = |o: ObjId| a_cat.object_name(o).to_string();
        let name_am = |m: MorId| a_cat.morphism_name(m).to_string();
        let name_bm = |m: MorId| b_cat.morphism_name(m).to_string();

        for a in a_cat.objects() {
            for u in b_cat.morphisms_from(self.functor.on_object(a)) {
                if self.lift(a, u).is_none() {
                    out.push(LensViolation::MissingLift {
                        at: name_obj(a),
                        over: name_bm(u),
                    });
                }
            }
        }
        for (a, u, m) in self.lifts() {
            if b_cat.dom(u) != self.functor.on_object(a) {
                out.push(LensViolation::SpuriousLift {
                    at: name_obj(a),
                    over: name_bm(u),
                });
                continue;
            }
            if a_cat.dom(m) != a {
                out.push(LensViolation::LiftDomain {
                    at: name_obj(a),
                    over: name_bm(u),
                    lift: name_am(m),
                    actual_dom: name_obj(a_cat.dom(m)),
                });
                continue;
            }
            if self.functor.on_morphism(m) != u {
                out.push(LensViolation::LiftProjection {
                    at: name_obj(a),
                    over: name_bm(u),
                    lift: name_am(m),
                    image: name_bm(self.functor.on_morphism(m)),
                });
            }
            if b_cat.is_identity(u) && !a_cat.is_identity(m) {
                out.push(LensViolation::IdentityLift {
                    at: name_obj(a),
                    lift: name_am(m),
                });
            }
        }
        // L3 over all composable cospans of base morphisms out of each image.
        for a in a_cat.objects() {
            let fa = self.functor.on_object(a);
            for u in b_cat.morphisms_from(fa) {
                let Some(first) = self.lift(a, u) else {
                    continue;
                };
                let mid = a_cat.cod(first);
                for v in b_cat.morphisms_from(b_cat.cod(u)) {
                    let (Some(vu), Some(second)) = (b_cat.compose(u, v), self.lift(mid, v)) else {
                        continue;
                    };
                    let Some(direct) = self.lift(a, vu) else {
                        continue;
                    };
                    match a_cat.compose(first, second) {
                        Some(pasted) if pasted == direct => {}
                        Some(pasted) => out.push(LensViolation::CompositionLift {
                            at: name_obj(a),
                            over_first: name_bm(u),
                            over_then: name_bm(v),
                            lift_of_composite: name_am(direct),
                            pasted: name_am(pasted),
                        }),
                        None => out.push(LensViolation::CompositionLift {
                            at: name_obj(a),
                            over_first: name_bm(u),
                            over_then: name_bm(v),
                            lift_of_composite: name_am(direct),
                            pasted: "(undefined composite)".into(),
                        }),
                    }
                }
            }
        }
        out
    }

    /// Sequential composition: `self : A → B` followed by `other : B → C`.
    ///
    /// The composite lift factors through the middle category: first lift
    /// the base morphism along `other`, then lift the result along `self`.
    pub fn then(&self, other: &Lens) -> Result<Lens, BuildError> {
        if self.target() != other.source() {
            return Err(BuildError::Mismatch {
                context: "lens composition".into(),
                expected: "matching middle category".into(),
                found: "different categories".into(),
            });
        }
        let functor = self.functor.then(&other.functor)?;
        let mut lifts = BTreeMap::new();
        for a in self.source().objects() {
            let fa = self.functor.on_object(a);
            let gfa = functor.on_object(a);
            for u in other.target().morphisms_from(gfa) {
                let mid = other.lift(fa, u).ok_or_else(|| {
                    BuildError::Invalid(format!(
                        "outer lens has no lift of {} at {}",
                        other.target().morphism_name(u),
                        other.source().object_name(fa)
                    ))
                })?;
                let lifted = self.lift(a, mid).ok_or_else(|| {
                    BuildError::Invalid(format!(
                        "inner lens has no lift of {} at {}",
                        self.target().morphism_name(mid),
                        self.source().object_name(a)
                    ))
                })?;
                lifts.insert((a, u), lifted);
            }
        }
        Ok(Lens { functor, lifts })
    }

    /// The wide subcategory of chosen lifts: all morphisms `m` with
    /// `φ(dom m, f m) = m`. By L2/L3 it contains the identities and is
    /// closed under composition, and `f` restricted to it is a discrete
    /// opfibration.
    pub fn lifting_subcategory(&self) -> WideSubcategory {
        let a_cat = self.source();
        WideSubcategory::new(
            a_cat
                .morphisms()
                .filter(|&m| self.lift(a_cat.dom(m), self.functor.on_morphism(m)) == Some(m)),
        )
    }

    /// Reconstruct a lens from a functor and a wide subcategory on which it
    /// is a discrete opfibration; inverse to [`Lens::lifting_subcategory`].
    pub fn from_wide_subcategory(
        functor: Functor,
        sub: &WideSubcategory,
    ) -> Result<Lens, Vec<DopfViolation>> {
        let a_cat = functor.source().clone();
        let b_cat = functor.target().clone();
        let mut violations = Vec::new();
        let mut lifts = BTreeMap::new();
        for a in a_cat.objects() {
            for u in b_cat.morphisms_from(functor.on_object(a)) {
                let mut candidates = a_cat
                    .morphisms_from(a)
                    .filter(|&m| sub.contains(m) && functor.on_morphism(m) == u);
                match (candidates.next(), candidates.next()) {
                    (Some(m), None) => {
                        lifts.insert((a, u), m);
                    }
                    (None, _) => violations.push(DopfViolation::NoLift {
                        at: a_cat.object_name(a).into(),
                        over: b_cat.morphism_name(u).into(),
                    }),
                    (Some(m1), Some(m2)) => violations.push(DopfViolation::MultipleLifts {
                        at: a_cat.object_name(a).into(),
                        over: b_cat.morphism_name(u).into(),
                        first: a_cat.morphism_name(m1).into(),
                        second: a_cat.morphism_name(m2).into(),
                    }),
                }
            }
        }
        if violations.is_empty() {
            Ok(Lens { functor, lifts })
        } else {
            Err(violations)
        }
    }

    /// The unique lens structure on a discrete opfibration.
    pub fn from_discrete_opfibration(functor: Functor) -> Result<Lens, Vec<DopfViolation>> {
        let all = WideSubcategory::new(functor.source().morphisms());
        Lens::from_wide_subcategory(functor, &all)
    }
}

/// Number of raw lift assignments [`enumerate_lens_structures`] would
/// visit, saturating at `u128::MAX`; callers can use it to refuse
/// hopeless searches.
pub fn lens_search_space(functor: &Functor) -> u128 {
    let a_cat = functor.source();
    let b_cat = functor.target();
    let mut space: u128 = 1;
    for a in a_cat.objects() {
        for u in b_cat.morphisms_from(functor.on_object(a)) {
            if b_cat.is_identity(u) {
                continue;
            }
            let candidates = a_cat
                .morphisms_from(a)
                .filter(|&m| functor.on_morphism(m) == u)
                .count() as u128;
            space = space.saturating_mul(candidates);
        }
    }
    space
}

/// Exhaustively enumerate all lens structures on a functor.
///
/// Identity lifts are forced by L2; every other `(a, u)` ranges over the
/// morphisms out of `a` over `u`, and full assignments are filtered by L3.
/// Exponential, but fine for the small categories used in law checks.
pub fn enumerate_lens_structures(functor: &Functor) -> Vec<Lens> {
    let a_cat = functor.source().clone();
    let b_cat = functor.target().clone();
    let mut keys: Vec<(ObjId, MorId)> = Vec::new();
    for a in a_cat.objects() {
        for u in b_cat.morphisms_from(functor.on_object(a)) {
            if !b_cat.is_identity(u) {
                keys.push((a, u));
            }
        }
    }
    let candidates: Vec<Vec<MorId>> = keys
        .iter()
        .map(|&(a, u)| {
            a_cat
                .morphisms_from(a)
                .filter(|&m| functor.on_morphism(m) == u)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice: Vec<MorId> = Vec::new();

    fn go(
        functor: &Functor,
        keys: &[(ObjId, MorId)],
        candidates: &[Vec<MorId>],
        choice: &mut Vec<MorId>,
        out: &mut Vec<Lens>,
    ) {
        if choice.len() == keys.len() {
            let mut lifts = BTreeMap::new();
            for a in functor.source().objects() {
                let id_b = functor.target().identity(functor.on_object(a));
                lifts.insert((a, id_b), functor.source().identity(a));
            }
            for (k, &(a, u)) in keys.iter().enumerate() {
                lifts.insert((a, u), choice[k]);
            }
            let lens = Lens {
                functor: functor.clone(),
                lifts,
            };
            if lens.validate().is_empty() {
                out.push(lens);
            }
            return;
        }
        let idx = choice.len();
        for &m in &candidates[idx] {
            choice.push(m);
            go(functor, keys, candidates, choice, out);
            choice.pop();
        }
    }

    go(functor, &keys, &candidates, &mut choice, &mut out);
    out
}
