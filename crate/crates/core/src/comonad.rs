//! The cofree lens comonad on `Cat/B` and its coalgebras.
//!
//! For `f : A → B` the cofree object `K(A, f)` has as objects the pairs
//! `(b, σ)` where `σ : b/B → A` is a functor with `f ∘ σ = cod` — a
//! consistent plan assigning, to every future `u : b → x`, a carrier over
//! `x` and transition morphisms between the carriers. A morphism
//! `(b, σ) → (b', σ')` is any `θ : σ(id_b) → σ'(id_{b'})` in `A`, tracked
//! over `f(θ)`.
//!
//! The counit evaluates a plan at its identity; the comultiplication
//! re-bases a plan at each of its stages. Coalgebras for this comonad are
//! exactly delta lenses into `B`: the coalgebra laws unfold to L1–L3, and
//! the translation in each direction is implemented below together with
//! exhaustive law checks.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::category::{Category, MorId, NameGen, ObjId};
use crate::decalage::{coslice, Coslice};
use crate::error::BuildError;
use crate::functor::{enumerate_functors_over, Functor};
use crate::lens::Lens;

/// The comonad applied to one functor `f : A → B`.
#[derive(Debug)]
pub struct Cofree {
    /// The functor the comonad was applied to.
    pub over: Functor,
    /// The carrier `K(A, f)`.
    pub category: Category,
    /// `p : K(A, f) → B`.
    pub projection: Functor,
    /// `ε : K(A, f) → A`, evaluation at the identity stage.
    pub counit: Functor,
    /// One coslice per object of `B`, indexed by `ObjId`.
    pub coslices: Vec<Coslice>,
    objects: Vec<CofreeObject>,
    object_lookup: BTreeMap<ObjectKey, ObjId>,
    /// Per `K`-morphism, the underlying `θ` in `A`.
    thetas: Vec<MorId>,
    morphism_lookup: BTreeMap<(ObjId, ObjId, MorId), MorId>,
}

#[derive(Debug, Clone)]
struct CofreeObject {
    base: ObjId,
    sigma: Functor,
}

type ObjectKey = (ObjId, Vec<ObjId>, Vec<MorId>);

fn key_of(base: ObjId, sigma: &Functor) -> ObjectKey {
    (
        base,
        sigma
            .source()
            .objects()
            .map(|o| sigma.on_object(o))
            .collect(),
        sigma
            .source()
            .morphisms()
            .map(|m| sigma.on_morphism(m))
            .collect(),
    )
}

impl Cofree {
    pub fn base_of(&self, o: ObjId) -> ObjId {
        self.objects[o.index()].base
    }

    /// The plan functor `σ : base/B → A` of a cofree object.
    pub fn sigma(&self, o: ObjId) -> &Functor {
        &self.objects[o.index()].sigma
    }

    pub fn theta(&self, m: MorId) -> MorId {
        self.thetas[m.index()]
    }

    pub fn objects_over(&self, b: ObjId) -> Vec<ObjId> {
        self.category
            .objects()
            .filter(|&o| self.base_of(o) == b)
            .collect()
    }

    pub fn find_object(&self, base: ObjId, sigma: &Functor) -> Option<ObjId> {
        self.object_lookup.get(&key_of(base, sigma)).copied()
    }

    pub fn find_morphism(&self, src: ObjId, tgt: ObjId, theta: MorId) -> Option<MorId> {
        self.morphism_lookup.get(&(src, tgt, theta)).copied()
    }
}

/// Carriers whose plan count can exceed this are refused outright rather
/// than enumerated.
const COFREE_BUDGET: u128 = 200_000;

/// Upper bound on the number of plans: per base object, the product of
/// the fibre sizes at each coslice stage and of the morphism counts over
/// each non-identity stage transition.
fn plan_bound(f: &Functor) -> u128 {
    let a_cat = f.source();
    let b_cat = f.target();
    let fibre_size = |b: crate::category::ObjId| -> u128 {
        a_cat.objects().filter(|&a| f.on_object(a) == b).count() as u128
    };
    let over_count = |w: MorId| -> u128 {
        a_cat
            .morphisms()
            .filter(|&m| f.on_morphism(m) == w)
            .count() as u128
    };
    let mut total: u128 = 0;
    for b in b_cat.objects() {
        let mut product: u128 = 1;
        for u in b_cat.morphisms_from(b) {
            product = product.saturating_mul(fibre_size(b_cat.cod(u)).max(1));
            // Stage transitions u → w∘u for non-identity w.
            for w in b_cat.morphisms_from(b_cat.cod(u)) {
                if b_cat.is_identity(w) || b_cat.compose(u, w).is_none() {
                    continue;
                }
                product = product.saturating_mul(over_count(w).max(1));
            }
        }
        total = total.saturating_add(product);
    }
    total
}

/// Apply the comonad to `f`. Exponential in the size of the input; meant
/// for the small categories used in law checking, and refused beyond a
/// fixed plan budget.
pub fn cofree(f: &Functor) -> Result<Cofree, BuildError> {
    let bound = plan_bound(f);
    if bound > COFREE_BUDGET {
        return Err(BuildError::Invalid(format!(
            "cofree carrier could have up to {bound} plans; refusing to enumerate"
        )));
    }
    let a_cat = f.source().clone();
    let b_cat = f.target().clone();
    let mut coslices = Vec::with_capacity(b_cat.object_count());
    for b in b_cat.objects() {
        coslices.push(coslice(&b_cat, b)?);
    }

    let mut builder = Category::builder();
    let mut names = NameGen::default();
    let mut objects: Vec<CofreeObject> = Vec::new();
    let mut object_lookup: BTreeMap<ObjectKey, ObjId> = BTreeMap::new();
    for b in b_cat.objects() {
        let cs = &coslices[b.index()];
        let sigmas = enumerate_functors_over(&cs.cod_functor, f)?;
        for sigma in sigmas {
            let o = builder.add_object(names.claim(format!(
                "{}#{}",
                b_cat.object_name(b),
                object_lookup.len()
            )));
            object_lookup.insert(key_of(b, &sigma), o);
            objects.push(CofreeObject { base: b, sigma });
            debug_assert_eq!(o.index() + 1, objects.len());
        }
    }

    // Morphisms: one per (source, target, θ) with θ connecting the
    // identity-stage carriers.
    let mut names = NameGen::default();
    let mut thetas: Vec<MorId> = Vec::new();
    let mut morphism_lookup: BTreeMap<(ObjId, ObjId, MorId), MorId> = BTreeMap::new();
    let eval_at_id = |obj: &CofreeObject, coslices: &[Coslice]| -> ObjId {
        let cs = &coslices[obj.base.index()];
        obj.sigma.on_object(cs.identity_object)
    };
    let obj_ids: Vec<ObjId> = (0..objects.len() as u32).map(ObjId).collect();
    for &src in &obj_ids {
        let src_eval = eval_at_id(&objects[src.index()], &coslices);
        for &tgt in &obj_ids {
            let tgt_eval = eval_at_id(&objects[tgt.index()], &coslices);
            for theta in a_cat.hom(src_eval, tgt_eval) {
                let name = names.claim(format!(
                    "{}@{}>{}",
                    a_cat.morphism_name(theta),
                    src.index(),
                    tgt.index()
                ));
                let is_id = src == tgt && a_cat.is_identity(theta);
                let m = if is_id {
                    builder.add_identity(name, src)
                } else {
                    builder.add_morphism(name, src, tgt)
                };
                thetas.push(theta);
                morphism_lookup.insert((src, tgt, theta), m);
            }
        }
    }
    for (&(s1, t1, th1), &m1) in &morphism_lookup {
        for (&(s2, t2, th2), &m2) in &morphism_lookup {
            if t1 != s2 {
                continue;
            }
            let Some(th) = a_cat.compose(th1, th2) else {
                continue;
            };
            builder.set_composite(m1, m2, morphism_lookup[&(s1, t2, th)]);
        }
    }
    let category = builder.finish()?;

    let projection = Functor::new(
        category.clone(),
        b_cat.clone(),
        objects.iter().map(|o| o.base).collect(),
        thetas.iter().map(|&th| f.on_morphism(th)).collect(),
    )?;
    let counit = Functor::new(
        category.clone(),
        a_cat.clone(),
        objects.iter().map(|o| eval_at_id(o, &coslices)).collect(),
        thetas.clone(),
    )?;
    Ok(Cofree {
        over: f.clone(),
        category,
        projection,
        counit,
        coslices,
        objects,
        object_lookup,
        thetas,
        morphism_lookup,
    })
}

/// Re-base a plan: the object part of the comultiplication at stage `u`.
///
/// Returns the functor `σ ∘ (− ∘ u) : x/B → A` for `u : b → x`.
fn rebase_sigma(
    cofree_f: &Cofree,
    sigma: &Functor,
    b: ObjId,
    u: MorId,
) -> Result<Functor, BuildError> {
    let b_cat = cofree_f.over.target();
    let cs_b = &cofree_f.coslices[b.index()];
    let x = b_cat.cod(u);
    let cs_x = &cofree_f.coslices[x.index()];
    let obj_map: Vec<ObjId> = cs_x
        .object_morphism
        .iter()
        .map(|&u2| {
            let composed = b_cat.compose(u, u2).ok_or_else(|| {
                BuildError::Invalid("base composite undefined while re-basing".into())
            })?;
            Ok(sigma.on_object(cs_b.object_of[&composed]))
        })
        .collect::<Result<_, BuildError>>()?;
    let mor_map: Vec<MorId> = cs_x
        .category
        .morphisms()
        .map(|m| {
            let src = cs_x.category.dom(m);
            let u2 = cs_x.object_morphism[src.index()];
            let w = cs_x.morphism_action[m.index()];
            let composed = b_cat.compose(u, u2).ok_or_else(|| {
                BuildError::Invalid("base composite undefined while re-basing".into())
            })?;
            let src_in_b = cs_b.object_of[&composed];
            Ok(sigma.on_morphism(cs_b.morphism_of[&(src_in_b, w)]))
        })
        .collect::<Result<_, BuildError>>()?;
    Functor::new(
        cs_x.category.clone(),
        cofree_f.over.source().clone(),
        obj_map,
        mor_map,
    )
}

/// The comultiplication `δ : K(A, f) → K(K(A, f), p)`.
///
/// `cofree_p` must be `cofree(&cofree_f.projection)`.
pub fn comultiplication(cofree_f: &Cofree, cofree_p: &Cofree) -> Result<Functor, BuildError> {
    let k_f = &cofree_f.category;
    let b_cat = cofree_f.over.target();
    let mut obj_map: Vec<ObjId> = Vec::with_capacity(k_f.object_count());
    for o in k_f.objects() {
        let b = cofree_f.base_of(o);
        let sigma = cofree_f.sigma(o).clone();
        let cs_b = &cofree_f.coslices[b.index()];
        // τ : b/B → K_f, stage u ↦ the re-based plan.
        let tau_obj: Vec<ObjId> = cs_b
            .object_morphism
            .iter()
            .map(|&u| {
                let rebased = rebase_sigma(cofree_f, &sigma, b, u)?;
                cofree_f
                    .find_object(b_cat.cod(u), &rebased)
                    .ok_or_else(|| BuildError::Invalid("re-based plan not in carrier".into()))
            })
            .collect::<Result<_, BuildError>>()?;
        let tau_mor: Vec<MorId> = cs_b
            .category
            .morphisms()
            .map(|m| {
                let src = cs_b.category.dom(m);
                let tgt = cs_b.category.cod(m);
                let theta = sigma.on_morphism(m);
                cofree_f
                    .find_morphism(tau_obj[src.index()], tau_obj[tgt.index()], theta)
                    .ok_or_else(|| BuildError::Invalid("missing transition in carrier".into()))
            })
            .collect::<Result<_, BuildError>>()?;
        let tau = Functor::new(cs_b.category.clone(), k_f.clone(), tau_obj, tau_mor)?;
        let target_obj = cofree_p
            .find_object(b, &tau)
            .ok_or_else(|| BuildError::Invalid("comultiplied plan not in K²".into()))?;
        obj_map.push(target_obj);
    }
    let mor_map: Vec<MorId> = k_f
        .morphisms()
        .map(|m| {
            let src = k_f.dom(m);
            let tgt = k_f.cod(m);
            cofree_p
                .find_morphism(obj_map[src.index()], obj_map[tgt.index()], m)
                .ok_or_else(|| BuildError::Invalid("missing morphism in K²".into()))
        })
        .collect::<Result<_, BuildError>>()?;
    Functor::new(k_f.clone(), cofree_p.category.clone(), obj_map, mor_map)
}

/// Functoriality of the comonad: apply `g : (A, f) → (A', f')` over `B`
/// to the plans. `src` must be the cofree object of `f`, `tgt` of `f'`.
pub fn cofree_map(g: &Functor, src: &Cofree, tgt: &Cofree) -> Result<Functor, BuildError> {
    let mut obj_map: Vec<ObjId> = Vec::with_capacity(src.category.object_count());
    for o in src.category.objects() {
        let b = src.base_of(o);
        let pushed = src.sigma(o).then(g)?;
        let target = tgt
            .find_object(b, &pushed)
            .ok_or_else(|| BuildError::Invalid("pushed plan not in target carrier".into()))?;
        obj_map.push(target);
    }
    let mor_map: Vec<MorId> = src
        .category
        .morphisms()
        .map(|m| {
            let s = src.category.dom(m);
            let t = src.category.cod(m);
            tgt.find_morphism(
                obj_map[s.index()],
                obj_map[t.index()],
                g.on_morphism(src.theta(m)),
            )
            .ok_or_else(|| BuildError::Invalid("pushed morphism not in target".into()))
        })
        .collect::<Result<_, BuildError>>()?;
    Functor::new(src.category.clone(), tgt.category.clone(), obj_map, mor_map)
}

pub use crate::decalage::ComonadLaw;

/// Check the comonad laws for `K` at `f`, building two further levels.
pub fn comonad_law_report(f: &Functor) -> Result<Vec<ComonadLaw>, BuildError> {
    let k1 = cofree(f)?;
    let k2 = cofree(&k1.projection)?;
    let k3 = cofree(&k2.projection)?;
    let delta1 = comultiplication(&k1, &k2)?;
    let id_k1 = Functor::identity(k1.category.clone());
    let mut out = Vec::new();
    if delta1.then(&k2.counit)? != id_k1 {
        out.push(ComonadLaw::CounitAfterComultiplication);
    }
    let mapped_counit = cofree_map(&k1.counit, &k2, &k1)?;
    if delta1.then(&mapped_counit)? != id_k1 {
        out.push(ComonadLaw::MappedCounitAfterComultiplication);
    }
    let delta2 = comultiplication(&k2, &k3)?;
    let mapped_delta = cofree_map(&delta1, &k2, &k3)?;
    if delta1.then(&delta2)? != delta1.then(&mapped_delta)? {
        out.push(ComonadLaw::Coassociativity);
    }
    Ok(out)
}

/// Violations of the coalgebra laws for a structure map `α : A → K(A, f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoalgebraViolation {
    /// `p ∘ α ≠ f`.
    NotOverBase {
        at: String,
    },
    NotOverBaseMorphism {
        morphism: String,
    },
    /// `ε ∘ α ≠ id`.
    Counit {
        at: String,
        evaluated: String,
    },
    CounitMorphism {
        morphism: String,
        evaluated: String,
    },
    /// `δ ∘ α ≠ K(α) ∘ α`.
    Comultiplication {
        at: String,
    },
    ComultiplicationMorphism {
        morphism: String,
    },
}

impl fmt::Display for CoalgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoalgebraViolation::NotOverBase { at } => {
                write!(f, "structure map does not lie over the base at {at}")
            }
            CoalgebraViolation::NotOverBaseMorphism { morphism } => {
                write!(f, "structure map does not lie over the base at {morphism}")
            }
            CoalgebraViolation::Counit { at, evaluated } => {
                write!(f, "counit law fails at {at}: plan evaluates to {evaluated}")
            }
            CoalgebraViolation::CounitMorphism {
                morphism,
                evaluated,
            } => {
                write!(
                    f,
                    "counit law fails at {morphism}: transition is {evaluated}"
                )
            }
            CoalgebraViolation::Comultiplication { at } => {
                write!(
                    f,
                    "comultiplication law fails at {at}: re-based plan differs"
                )
            }
            CoalgebraViolation::ComultiplicationMorphism { morphism } => {
                write!(f, "comultiplication law fails at {morphism}")
            }
        }
    }
}

/// Check the coalgebra laws for `α`. `cofree_f` is `cofree(f)` and
/// `cofree_p` is `cofree(&cofree_f.projection)`.
pub fn coalgebra_report(
    alpha: &Functor,
    cofree_f: &Cofree,
    cofree_p: &Cofree,
) -> Result<Vec<CoalgebraViolation>, BuildError> {
    let a_cat = cofree_f.over.source();
    let f = &cofree_f.over;
    let mut out = Vec::new();
    let over = alpha.then(&cofree_f.projection)?;
    for a in a_cat.objects() {
        if over.on_object(a) != f.on_object(a) {
            out.push(CoalgebraViolation::NotOverBase {
                at: a_cat.object_name(a).into(),
            });
        }
    }
    for m in a_cat.morphisms() {
        if over.on_morphism(m) != f.on_morphism(m) {
            out.push(CoalgebraViolation::NotOverBaseMorphism {
                morphism: a_cat.morphism_name(m).into(),
            });
        }
    }
    let eval = alpha.then(&cofree_f.counit)?;
    for a in a_cat.objects() {
        if eval.on_object(a) != a {
            out.push(CoalgebraViolation::Counit {
                at: a_cat.object_name(a).into(),
                evaluated: a_cat.object_name(eval.on_object(a)).into(),
            });
        }
    }
    for m in a_cat.morphisms() {
        if eval.on_morphism(m) != m {
            out.push(CoalgebraViolation::CounitMorphism {
                morphism: a_cat.morphism_name(m).into(),
                evaluated: a_cat.morphism_name(eval.on_morphism(m)).into(),
            });
        }
    }
    // Only meaningful when α is over the base; otherwise K(α) is not a map
    // of the right slices and lookups below would fail spuriously.
    if out.is_empty() {
        let delta = comultiplication(cofree_f, cofree_p)?;
        let k_alpha = cofree_map(alpha, cofree_f, cofree_p)?;
        let lhs = alpha.then(&delta)?;
        let rhs = alpha.then(&k_alpha)?;
        for a in a_cat.objects() {
            if lhs.on_object(a) != rhs.on_object(a) {
                out.push(CoalgebraViolation::Comultiplication {
                    at: a_cat.object_name(a).into(),
                });
            }
        }
        for m in a_cat.morphisms() {
            if lhs.on_morphism(m) != rhs.on_morphism(m) {
                out.push(CoalgebraViolation::ComultiplicationMorphism {
                    morphism: a_cat.morphism_name(m).into(),
                });
            }
        }
    }
    Ok(out)
}

/// The structure map of the coalgebra corresponding to a lens.
///
/// Fails if the lens is missing lifts or its plans are not functorial
/// (i.e. the lens violates L3); validate the lens first for witnesses.
pub fn coalgebra_from_lens(lens: &Lens, cofree_f: &Cofree) -> Result<Functor, BuildError> {
    let a_cat = lens.source().clone();
    let b_cat = lens.target();
    let f = lens.functor();
    let mut obj_map: Vec<ObjId> = Vec::with_capacity(a_cat.object_count());
    for a in a_cat.objects() {
        let b = f.on_object(a);
        let cs = &cofree_f.coslices[b.index()];
        let sigma_obj: Vec<ObjId> = cs
            .object_morphism
            .iter()
            .map(|&u| {
                lens.transport(a, u).ok_or_else(|| {
                    BuildError::Invalid(format!(
                        "lens has no lift of {} at {}",
                        b_cat.morphism_name(u),
                        a_cat.object_name(a)
                    ))
                })
            })
            .collect::<Result<_, BuildError>>()?;
        let sigma_mor: Vec<MorId> = cs
            .category
            .morphisms()
            .map(|m| {
                let src = cs.category.dom(m);
                let w = cs.morphism_action[m.index()];
                let mid = sigma_obj[src.index()];
                lens.lift(mid, w).ok_or_else(|| {
                    BuildError::Invalid(format!(
                        "lens has no lift of {} at {}",
                        b_cat.morphism_name(w),
                        a_cat.object_name(mid)
                    ))
                })
            })
            .collect::<Result<_, BuildError>>()?;
        let sigma = Functor::new(cs.category.clone(), a_cat.clone(), sigma_obj, sigma_mor)?;
        let o = cofree_f.find_object(b, &sigma).ok_or_else(|| {
            BuildError::Invalid(format!(
                "plan at {} is not functorial; the lens violates L3",
                a_cat.object_name(a)
            ))
        })?;
        obj_map.push(o);
    }
    let mor_map: Vec<MorId> = a_cat
        .morphisms()
        .map(|m| {
            let src = a_cat.dom(m);
            let tgt = a_cat.cod(m);
            cofree_f
                .find_morphism(obj_map[src.index()], obj_map[tgt.index()], m)
                .ok_or_else(|| BuildError::Invalid("carrier is missing a transition".into()))
        })
        .collect::<Result<_, BuildError>>()?;
    Functor::new(a_cat, cofree_f.category.clone(), obj_map, mor_map)
}

/// Extract the lens encoded by a coalgebra structure map.
pub fn lens_from_coalgebra(alpha: &Functor, cofree_f: &Cofree) -> Result<Lens, BuildError> {
    let f = cofree_f.over.clone();
    let a_cat = f.source().clone();
    let mut lifts: BTreeMap<(ObjId, MorId), MorId> = BTreeMap::new();
    for a in a_cat.objects() {
        let o = alpha.on_object(a);
        let b = cofree_f.base_of(o);
        if b != f.on_object(a) {
            return Err(BuildError::Invalid(format!(
                "structure map is not over the base at {}",
                a_cat.object_name(a)
            )));
        }
        let cs = &cofree_f.coslices[b.index()];
        let sigma = cofree_f.sigma(o);
        for &u in &cs.object_morphism {
            let arrow = cs.morphism_of[&(cs.identity_object, u)];
            lifts.insert((a, u), sigma.on_morphism(arrow));
        }
    }
    Lens::new(f, lifts)
}

/// All lawful coalgebra structure maps on `f`, by exhaustive enumeration.
pub fn enumerate_coalgebras(
    cofree_f: &Cofree,
    cofree_p: &Cofree,
) -> Result<Vec<Functor>, BuildError> {
    let candidates = enumerate_functors_over(&cofree_f.over, &cofree_f.projection)?;
    let mut out = Vec::new();
    for alpha in candidates {
        if coalgebra_report(&alpha, cofree_f, cofree_p)?.is_empty() {
            out.push(alpha);
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
    fn cofree_of_elements_lens() {
        let el = elements(&presets::sample_copresheaf()).unwrap();
        let k = cofree(&el.projection).unwrap();
        assert!(k.category.validate().is_empty());
        assert!(k.projection.validate().is_empty());
        assert!(k.counit.validate().is_empty());
    }

    #[test]
    fn lens_coalgebra_round_trip() {
        let lens = presets::non_split_lens();
        let k = cofree(lens.functor()).unwrap();
        let alpha = coalgebra_from_lens(&lens, &k).unwrap();
        assert!(alpha.validate().is_empty());
        let back = lens_from_coalgebra(&alpha, &k).unwrap();
        assert_eq!(back, lens);
    }

    #[test]
    fn coalgebra_laws_hold_for_lawful_lens() {
        let lens = presets::non_split_lens();
        let k = cofree(lens.functor()).unwrap();
        let k2 = cofree(&k.projection).unwrap();
        let alpha = coalgebra_from_lens(&lens, &k).unwrap();
        let report = coalgebra_report(&alpha, &k, &k2).unwrap();
        assert!(report.is_empty(), "{report:?}");
    }

    #[test]
    fn coalgebra_count_matches_lens_count() {
        let lens = presets::non_split_lens();
        let f = lens.functor();
        let k = cofree(f).unwrap();
        let k2 = cofree(&k.projection).unwrap();
        let lenses = enumerate_lens_structures(f);
        let coalgebras = enumerate_coalgebras(&k, &k2).unwrap();
        assert_eq!(lenses.len(), 2);
        assert_eq!(coalgebras.len(), lenses.len());
    }

    #[test]
    fn oversized_carrier_is_refused() {
        let b = presets::cyclic_monoid(5);
        let a = presets::discrete(20);
        let star = b.objects().next().unwrap();
        let id = b.identity(star);
        let f = Functor::new(
            a.clone(),
            b,
            a.objects().map(|_| star).collect(),
            a.morphisms().map(|_| id).collect(),
        )
        .unwrap();
        let err = cofree(&f).unwrap_err();
        assert!(err.to_string().contains("refusing to enumerate"));
    }

    #[test]
    fn comonad_laws_on_small_functor() {
        let el = elements(&presets::sample_copresheaf()).unwrap();
        let laws = comonad_law_report(&el.projection).unwrap();
        assert!(laws.is_empty(), "{laws:?}");
    }
}
