//! The free split opfibration monad on `Cat/B` and its algebras.
//!
//! For `f : A → B` the free object is the comma category `f/B`: objects
//! are pairs `(a, u : f a → b)`, morphisms `(a, u) → (a', u')` are pairs
//! `(w : a → a', v : b → b')` with `v ∘ u = u' ∘ f(w)`, and the
//! projection takes `(a, u)` to `cod u`. The unit embeds `a` as
//! `(a, id)`; the multiplication composes the postponed morphisms.
//!
//! Algebras for this monad are exactly split opfibrations: the algebra
//! map sends `(a, u)` to the chosen transport of `a` along `u`, and its
//! functoriality on all comma squares is precisely the opcartesian
//! universal property. The translations both ways and the law checks
//! below make that correspondence computational, dual to the coalgebra
//! story in [`crate::comonad`].

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::category::{Category, MorId, NameGen, ObjId};
use crate::error::BuildError;
use crate::functor::{enumerate_functors_over, Functor};
use crate::lens::Lens;
use crate::opfibration::split_opfibration_report;

/// The monad applied to one functor `f : A → B`.
#[derive(Debug)]
pub struct FreeSplit {
    /// The functor the monad was applied to.
    pub over: Functor,
    /// The comma category `f/B`.
    pub category: Category,
    /// Projection `f/B → B` by the codomain of the postponed morphism.
    pub projection: Functor,
    /// Unit `A → f/B`, embedding along identities.
    pub unit: Functor,
    /// Per comma object, the pair `(a, u)`.
    objects: Vec<(ObjId, MorId)>,
    object_lookup: BTreeMap<(ObjId, MorId), ObjId>,
    /// Per comma morphism, the pair `(w, v)`.
    morphisms: Vec<(MorId, MorId)>,
    morphism_lookup: BTreeMap<(ObjId, ObjId, MorId, MorId), MorId>,
}

impl FreeSplit {
    pub fn carrier_of(&self, o: ObjId) -> (ObjId, MorId) {
        self.objects[o.index()]
    }

    pub fn pair_of(&self, m: MorId) -> (MorId, MorId) {
        self.morphisms[m.index()]
    }

    pub fn find_object(&self, a: ObjId, u: MorId) -> Option<ObjId> {
        self.object_lookup.get(&(a, u)).copied()
    }

    pub fn find_morphism(&self, src: ObjId, tgt: ObjId, w: MorId, v: MorId) -> Option<MorId> {
        self.morphism_lookup.get(&(src, tgt, w, v)).copied()
    }
}

/// Build the comma category `f/B` with its monad structure maps.
/// Assumes a valid functor between valid categories.
pub fn free_split(f: &Functor) -> Result<FreeSplit, BuildError> {
    let a_cat = f.source().clone();
    let b_cat = f.target().clone();
    let mut builder = Category::builder();
    let mut names = NameGen::default();
    let mut objects: Vec<(ObjId, MorId)> = Vec::new();
    let mut object_lookup: BTreeMap<(ObjId, MorId), ObjId> = BTreeMap::new();
    for a in a_cat.objects() {
        for u in b_cat.morphisms_from(f.on_object(a)) {
            let o = builder.add_object(names.claim(format!(
                "{}@{}",
                b_cat.morphism_name(u),
                a_cat.object_name(a)
            )));
            object_lookup.insert((a, u), o);
            objects.push((a, u));
        }
    }

    let mut names = NameGen::default();
    let mut morphisms: Vec<(MorId, MorId)> = Vec::new();
    let mut morphism_lookup: BTreeMap<(ObjId, ObjId, MorId, MorId), MorId> = BTreeMap::new();
    let obj_ids: Vec<ObjId> = (0..objects.len() as u32).map(ObjId).collect();
    for &src in &obj_ids {
        let (a, u) = objects[src.index()];
        for &tgt in &obj_ids {
            let (a2, u2) = objects[tgt.index()];
            for w in a_cat.morphisms() {
                if a_cat.dom(w) != a || a_cat.cod(w) != a2 {
                    continue;
                }
                for v in b_cat.morphisms() {
                    if b_cat.dom(v) != b_cat.cod(u) || b_cat.cod(v) != b_cat.cod(u2) {
                        continue;
                    }
                    // Comma square: v ∘ u = u2 ∘ f(w).
                    if b_cat.compose(u, v) != b_cat.compose(f.on_morphism(w), u2) {
                        continue;
                    }
                    let name = names.claim(format!(
                        "({}|{})@{}",
                        a_cat.morphism_name(w),
                        b_cat.morphism_name(v),
                        builder_name(&objects, &a_cat, &b_cat, src)
                    ));
                    let is_id = src == tgt && a_cat.is_identity(w) && b_cat.is_identity(v);
                    let m = if is_id {
                        builder.add_identity(name, src)
                    } else {
                        builder.add_morphism(name, src, tgt)
                    };
                    morphisms.push((w, v));
                    morphism_lookup.insert((src, tgt, w, v), m);
                }
            }
        }
    }
    for (&(s1, t1, w1, v1), &m1) in &morphism_lookup {
        for (&(s2, t2, w2, v2), &m2) in &morphism_lookup {
            if t1 != s2 {
                continue;
            }
            let (Some(w), Some(v)) = (a_cat.compose(w1, w2), b_cat.compose(v1, v2)) else {
                continue;
            };
            builder.set_composite(m1, m2, morphism_lookup[&(s1, t2, w, v)]);
        }
    }
    let category = builder.finish()?;

    let projection = Functor::new(
        category.clone(),
        b_cat.clone(),
        objects.iter().map(|&(_, u)| b_cat.cod(u)).collect(),
        morphisms.iter().map(|&(_, v)| v).collect(),
    )?;
    let unit_obj: Vec<ObjId> = a_cat
        .objects()
        .map(|a| object_lookup[&(a, b_cat.identity(f.on_object(a)))])
        .collect();
    let unit_mor: Vec<MorId> = a_cat
        .morphisms()
        .map(|w| {
            let src = unit_obj[a_cat.dom(w).index()];
            let tgt = unit_obj[a_cat.cod(w).index()];
            morphism_lookup[&(src, tgt, w, f.on_morphism(w))]
        })
        .collect();
    let unit = Functor::new(a_cat, category.clone(), unit_obj, unit_mor)?;
    Ok(FreeSplit {
        over: f.clone(),
        category,
        projection,
        unit,
        objects,
        object_lookup,
        morphisms,
        morphism_lookup,
    })
}

fn builder_name(
    objects: &[(ObjId, MorId)],
    a_cat: &Category,
    b_cat: &Category,
    src: ObjId,
) -> String {
    let (a, u) = objects[src.index()];
    format!("{}@{}", b_cat.morphism_name(u), a_cat.object_name(a))
}

/// Functoriality of the monad: apply `g : (A, f) → (A', f')` over `B`
/// to the carriers. `src` must be `free_split(f)`, `tgt` `free_split(f')`.
pub fn free_split_map(
    g: &Functor,
    src: &FreeSplit,
    tgt: &FreeSplit,
) -> Result<Functor, BuildError> {
    let obj_map: Vec<ObjId> = src
        .objects
        .iter()
        .map(|&(a, u)| {
            tgt.find_object(g.on_object(a), u)
                .ok_or_else(|| BuildError::Invalid("mapped carrier not in target comma".into()))
        })
        .collect::<Result<_, _>>()?;
    let mor_map: Vec<MorId> = src
        .category
        .morphisms()
        .map(|m| {
            let s = src.category.dom(m);
            let t = src.category.cod(m);
            let (w, v) = src.pair_of(m);
            tgt.find_morphism(obj_map[s.index()], obj_map[t.index()], g.on_morphism(w), v)
                .ok_or_else(|| BuildError::Invalid("mapped square not in target comma".into()))
        })
        .collect::<Result<_, _>>()?;
    Functor::new(src.category.clone(), tgt.category.clone(), obj_map, mor_map)
}

/// The multiplication `(f/B)/B → f/B`, composing postponed morphisms.
/// `free2` must be `free_split(&free1.projection)`.
pub fn multiplication(free1: &FreeSplit, free2: &FreeSplit) -> Result<Functor, BuildError> {
    let b_cat = free1.over.target();
    let obj_map: Vec<ObjId> = free2
        .objects
        .iter()
        .map(|&(e, u2)| {
            let (a, u) = free1.carrier_of(e);
            let composed = b_cat
                .compose(u, u2)
                .ok_or_else(|| BuildError::Invalid("base composite undefined".into()))?;
            free1
                .find_object(a, composed)
                .ok_or_else(|| BuildError::Invalid("composed carrier missing".into()))
        })
        .collect::<Result<_, _>>()?;
    let mor_map: Vec<MorId> = free2
        .category
        .morphisms()
        .map(|m| {
            let s = free2.category.dom(m);
            let t = free2.category.cod(m);
            let (inner, v2) = free2.pair_of(m);
            let (w, _) = free1.pair_of(inner);
            free1
                .find_morphism(obj_map[s.index()], obj_map[t.index()], w, v2)
                .ok_or_else(|| BuildError::Invalid("composed square missing".into()))
        })
        .collect::<Result<_, _>>()?;
    Functor::new(
        free2.category.clone(),
        free1.category.clone(),
        obj_map,
        mor_map,
    )
}

/// The three monad laws, dual to the comonad checks elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonadLaw {
    UnitThenMultiplication,
    MappedUnitThenMultiplication,
    Associativity,
}

impl fmt::Display for MonadLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonadLaw::UnitThenMultiplication => write!(f, "multiplication ∘ unit ≠ id"),
            MonadLaw::MappedUnitThenMultiplication => {
                write!(f, "multiplication ∘ mapped unit ≠ id")
            }
            MonadLaw::Associativity => write!(f, "multiplication is not associative"),
        }
    }
}

/// Check the three monad laws for the comma monad at `f`.
pub fn monad_law_report(f: &Functor) -> Result<Vec<MonadLaw>, BuildError> {
    let t1 = free_split(f)?;
    let t2 = free_split(&t1.projection)?;
    let t3 = free_split(&t2.projection)?;
    let mu1 = multiplication(&t1, &t2)?;
    let id_t1 = Functor::identity(t1.category.clone());
    let mut out = Vec::new();
    // μ ∘ η_T = id: t2.unit is the unit taken at the carrier of T.
    if t2.unit.then(&mu1)? != id_t1 {
        out.push(MonadLaw::UnitThenMultiplication);
    }
    // μ ∘ T(η) = id.
    let mapped_unit = free_split_map(&t1.unit, &t1, &t2)?;
    if mapped_unit.then(&mu1)? != id_t1 {
        out.push(MonadLaw::MappedUnitThenMultiplication);
    }
    // μ ∘ μ_T = μ ∘ T(μ).
    let mu2 = multiplication(&t2, &t3)?;
    let mapped_mu = free_split_map(&mu1, &t3, &t2)?;
    if mu2.then(&mu1)? != mapped_mu.then(&mu1)? {
        out.push(MonadLaw::Associativity);
    }
    Ok(out)
}

/// Violations of the algebra laws for a structure map `k : f/B → A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraViolation {
    /// `f ∘ k ≠ cod`.
    NotOverBase {
        at: String,
    },
    NotOverBaseMorphism {
        morphism: String,
    },
    /// `k ∘ η ≠ id`.
    Unit {
        at: String,
        evaluated: String,
    },
    UnitMorphism {
        morphism: String,
        evaluated: String,
    },
    /// `k ∘ μ ≠ k ∘ T(k)`.
    Multiplication {
        at: String,
    },
    MultiplicationMorphism {
        morphism: String,
    },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraViolation::NotOverBase { at } => {
                write!(f, "structure map does not lie over the base at {at}")
            }
            AlgebraViolation::NotOverBaseMorphism { morphism } => {
                write!(f, "structure map does not lie over the base at {morphism}")
            }
            AlgebraViolation::Unit { at, evaluated } => {
                write!(
                    f,
                    "unit law fails at {at}: carrier evaluates to {evaluated}"
                )
            }
            AlgebraViolation::UnitMorphism {
                morphism,
                evaluated,
            } => {
                write!(f, "unit law fails at {morphism}: image is {evaluated}")
            }
            AlgebraViolation::Multiplication { at } => {
                write!(f, "multiplication law fails at {at}")
            }
            AlgebraViolation::MultiplicationMorphism { morphism } => {
                write!(f, "multiplication law fails at {morphism}")
            }
        }
    }
}

/// Check the algebra laws for `k : f/B → A`. `free1` is `free_split(f)`
/// and `free2` is `free_split(&free1.projection)`.
pub fn algebra_report(
    k: &Functor,
    free1: &FreeSplit,
    free2: &FreeSplit,
) -> Result<Vec<AlgebraViolation>, BuildError> {
    let f = &free1.over;
    let a_cat = f.source();
    let e_cat = &free1.category;
    let mut out = Vec::new();
    let over = k.then(f)?;
    for o in e_cat.objects() {
        if over.on_object(o) != free1.projection.on_object(o) {
            out.push(AlgebraViolation::NotOverBase {
                at: e_cat.object_name(o).into(),
            });
        }
    }
    for m in e_cat.morphisms() {
        if over.on_morphism(m) != free1.projection.on_morphism(m) {
            out.push(AlgebraViolation::NotOverBaseMorphism {
                morphism: e_cat.morphism_name(m).into(),
            });
        }
    }
    let eval = free1.unit.then(k)?;
    for a in a_cat.objects() {
        if eval.on_object(a) != a {
            out.push(AlgebraViolation::Unit {
                at: a_cat.object_name(a).into(),
                evaluated: a_cat.object_name(eval.on_object(a)).into(),
            });
        }
    }
    for m in a_cat.morphisms() {
        if eval.on_morphism(m) != m {
            out.push(AlgebraViolation::UnitMorphism {
                morphism: a_cat.morphism_name(m).into(),
                evaluated: a_cat.morphism_name(eval.on_morphism(m)).into(),
            });
        }
    }
    if out.is_empty() {
        let mu = multiplication(free1, free2)?;
        let t_k = free_split_map(k, free2, free1)?;
        let lhs = mu.then(k)?;
        let rhs = t_k.then(k)?;
        for o in free2.category.objects() {
            if lhs.on_object(o) != rhs.on_object(o) {
                out.push(AlgebraViolation::Multiplication {
                    at: free2.category.object_name(o).into(),
                });
            }
        }
        for m in free2.category.morphisms() {
            if lhs.on_morphism(m) != rhs.on_morphism(m) {
                out.push(AlgebraViolation::MultiplicationMorphism {
                    morphism: free2.category.morphism_name(m).into(),
                });
            }
        }
    }
    Ok(out)
}

/// The algebra structure map of a split opfibration presented as a lens.
///
/// Objects go to transports; a comma square goes to the unique fill
/// through the opcartesian chosen lift. Fails with the opcartesian
/// witnesses when the lens is not split.
pub fn algebra_from_lens(
    lens: &Lens,
    free1: &FreeSplit,
) -> Result<Functor, Vec<crate::opfibration::OpcartesianViolation>> {
    let split_issues = split_opfibration_report(lens);
    if !split_issues.is_empty() {
        return Err(split_issues);
    }
    let a_cat = lens.source().clone();
    let e_cat = &free1.category;
    let obj_map: Vec<ObjId> = free1
        .objects
        .iter()
        .map(|&(a, u)| lens.transport(a, u).expect("lawful lens has all lifts"))
        .collect();
    let mor_map: Vec<MorId> = e_cat
        .morphisms()
        .map(|m| {
            let s = e_cat.dom(m);
            let t = e_cat.cod(m);
            let (w, v) = free1.pair_of(m);
            let (a, u) = free1.carrier_of(s);
            let (a2, u2) = free1.carrier_of(t);
            let lift = lens.lift(a, u).expect("lawful lens");
            let target_lift = lens.lift(a2, u2).expect("lawful lens");
            // Unique fill h over v with h ∘ φ(a,u) = φ(a2,u2) ∘ w.
            let through = a_cat
                .compose(w, target_lift)
                .expect("valid source category");
            a_cat
                .morphisms_from(a_cat.cod(lift))
                .find(|&h| {
                    lens.functor().on_morphism(h) == v && a_cat.compose(lift, h) == Some(through)
                })
                .expect("opcartesian lift has a fill")
        })
        .collect();
    Ok(Functor::new(e_cat.clone(), a_cat, obj_map, mor_map).expect("tables sized"))
}

/// Extract the lens encoded by an algebra structure map: lift `(a, u)`
/// by applying `k` to the unit square `(a, id) → (a, u)`.
pub fn lens_from_algebra(k: &Functor, free1: &FreeSplit) -> Result<Lens, BuildError> {
    let f = free1.over.clone();
    let a_cat = f.source().clone();
    let b_cat = f.target();
    let mut lifts: BTreeMap<(ObjId, MorId), MorId> = BTreeMap::new();
    for a in a_cat.objects() {
        let id_u = b_cat.identity(f.on_object(a));
        let src = free1
            .find_object(a, id_u)
            .ok_or_else(|| BuildError::Invalid("unit carrier missing".into()))?;
        for u in b_cat.morphisms_from(f.on_object(a)) {
            let tgt = free1
                .find_object(a, u)
                .ok_or_else(|| BuildError::Invalid("carrier missing".into()))?;
            let square = free1
                .find_morphism(src, tgt, a_cat.identity(a), u)
                .ok_or_else(|| BuildError::Invalid("unit square missing".into()))?;
            lifts.insert((a, u), k.on_morphism(square));
        }
    }
    Lens::new(f, lifts)
}

/// All lawful algebra structure maps on `f`, by exhaustive enumeration.
pub fn enumerate_algebras(
    free1: &FreeSplit,
    free2: &FreeSplit,
) -> Result<Vec<Functor>, BuildError> {
    let candidates = enumerate_functors_over(&free1.projection, &free1.over)?;
    let mut out = Vec::new();
    for k in candidates {
        if algebra_report(&k, free1, free2)?.is_empty() {
            out.push(k);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copresheaf::elements;
    use crate::lens::enumerate_lens_structures;
    use crate::presets;

    #[test]
    fn comma_category_of_projection() {
        let lens = presets::projection_lens();
        let t = free_split(lens.functor()).unwrap();
        assert!(t.category.validate().is_empty());
        assert!(t.projection.validate().is_empty());
        assert!(t.unit.validate().is_empty());
        // Objects: (a, u) pairs. (*|0) has two base morphisms out, (*|1) one.
        assert_eq!(t.category.object_count(), 3);
    }

    #[test]
    fn monad_laws_hold() {
        let el = elements(&presets::sample_copresheaf()).unwrap();
        let laws = monad_law_report(&el.projection).unwrap();
        assert!(laws.is_empty(), "{laws:?}");
        let laws = monad_law_report(presets::non_split_lens().functor()).unwrap();
        assert!(laws.is_empty(), "{laws:?}");
    }

    #[test]
    fn split_lens_round_trips_through_algebra() {
        let lens = presets::projection_lens();
        let t1 = free_split(lens.functor()).unwrap();
        let t2 = free_split(&t1.projection).unwrap();
        let k = algebra_from_lens(&lens, &t1).unwrap();
        assert!(k.validate().is_empty());
        let report = algebra_report(&k, &t1, &t2).unwrap();
        assert!(report.is_empty(), "{report:?}");
        let back = lens_from_algebra(&k, &t1).unwrap();
        assert_eq!(back, lens);
    }

    #[test]
    fn non_split_lens_has_no_algebra() {
        let lens = presets::non_split_lens();
        let t1 = free_split(lens.functor()).unwrap();
        let err = algebra_from_lens(&lens, &t1).unwrap_err();
        assert!(!err.is_empty());
    }

    #[test]
    fn algebra_count_matches_split_lens_count() {
        // The projection V×B → B admits 2 lens structures, exactly 1 split.
        let lens = presets::projection_lens();
        let f = lens.functor();
        let all = enumerate_lens_structures(f);
        assert_eq!(all.len(), 2);
        let split: Vec<_> = all
            .iter()
            .filter(|l| split_opfibration_report(l).is_empty())
            .collect();
        assert_eq!(split.len(), 1);
        let t1 = free_split(f).unwrap();
        let t2 = free_split(&t1.projection).unwrap();
        let algebras = enumerate_algebras(&t1, &t2).unwrap();
        assert_eq!(algebras.len(), split.len());
        let back = lens_from_algebra(&algebras[0], &t1).unwrap();
        assert_eq!(&back, split[0]);
    }
}
