//! The décalage of a category and its comonad structure.
//!
//! `Dec(B)` is the disjoint union of the coslices `b/B`: objects are the
//! morphisms of `B`, and a morphism from `u : b → x` to `u' : b → x'` is a
//! morphism `w : x → x'` with `w ∘ u = u'`. The counit projects a coslice
//! object to its codomain and is always a discrete opfibration — `Dec(B)`
//! is the category of elements of the coproduct of all representables.
//! The comultiplication re-points each morphism at its own identity.

use crate::category::{Category, MorId, NameGen, ObjId};
use crate::error::BuildError;
use crate::functor::Functor;
use std::collections::BTreeMap;

/// One coslice `b/B`, with enough indexing to navigate it.
#[derive(Debug, Clone)]
pub struct Coslice {
    pub category: Category,
    /// Codomain projection `b/B → B`.
    pub cod_functor: Functor,
    /// For each coslice object, the morphism of `B` it is.
    pub object_morphism: Vec<MorId>,
    /// Inverse of `object_morphism`.
    pub object_of: BTreeMap<MorId, ObjId>,
    /// For each coslice morphism, the acting morphism `w` of `B`.
    pub morphism_action: Vec<MorId>,
    /// Lookup of a coslice morphism from (source object, acting `w`).
    pub morphism_of: BTreeMap<(ObjId, MorId), MorId>,
    /// The object `id_b`.
    pub identity_object: ObjId,
}

/// Build the coslice `b/B` for a valid category.
pub fn coslice(base: &Category, b: ObjId) -> Result<Coslice, BuildError> {
    let mut builder = Category::builder();
    let mut names = NameGen::default();
    let objects: Vec<MorId> = base.morphisms_from(b).collect();
    let mut object_of = BTreeMap::new();
    for &u in &objects {
        let o = builder.add_object(names.claim(base.morphism_name(u).to_string()));
        object_of.insert(u, o);
    }
    let mut names = NameGen::default();
    let mut morphism_action = Vec::new();
    let mut morphism_of = BTreeMap::new();
    for &u in &objects {
        let src = object_of[&u];
        for w in base.morphisms_from(base.cod(u)) {
            let Some(wu) = base.compose(u, w) else {
                continue;
            };
            let tgt = object_of[&wu];
            let name = names.claim(format!(
                "{}@{}",
                base.morphism_name(w),
                base.morphism_name(u)
            ));
            let m = if base.is_identity(w) {
                debug_assert_eq!(src, tgt);
                builder.add_identity(name, src)
            } else {
                builder.add_morphism(name, src, tgt)
            };
            morphism_action.push(w);
            morphism_of.insert((src, w), m);
        }
    }
    // (u, w) then (wu, w') composes to (u, w'∘w).
    for (&(src, w), &m1) in &morphism_of {
        let u = objects[src.index()];
        let Some(wu) = base.compose(u, w) else {
            continue;
        };
        let mid = object_of[&wu];
        for w2 in base.morphisms_from(base.cod(wu)) {
            let Some(&m2) = morphism_of.get(&(mid, w2)) else {
                continue;
            };
            let Some(w21) = base.compose(w, w2) else {
                continue;
            };
            builder.set_composite(m1, m2, morphism_of[&(src, w21)]);
        }
    }
    let category = builder.finish()?;
    let obj_map: Vec<ObjId> = objects.iter().map(|&u| base.cod(u)).collect();
    let mor_map: Vec<MorId> = morphism_action.clone();
    let cod_functor = Functor::new(category.clone(), base.clone(), obj_map, mor_map)?;
    let identity_object = object_of[&base.identity(b)];
    Ok(Coslice {
        category,
        cod_functor,
        object_morphism: objects,
        object_of,
        morphism_action,
        morphism_of,
        identity_object,
    })
}

/// The décalage with its structure functors.
#[derive(Debug, Clone)]
pub struct Decalage {
    pub category: Category,
    /// Codomain projection; the comonad counit. A discrete opfibration.
    pub counit: Functor,
    /// Domain projection, constant on each coslice component.
    pub basepoint: Functor,
    /// Décalage object `i` is morphism `object_morphism[i]` of the base.
    pub object_morphism: Vec<MorId>,
    pub object_of: BTreeMap<MorId, ObjId>,
    /// Décalage morphism `i` acts by base morphism `morphism_action[i]`.
    pub morphism_action: Vec<MorId>,
    pub morphism_of: BTreeMap<(ObjId, MorId), MorId>,
}

/// Build `Dec(B)` for a valid category.
pub fn decalage(base: &Category) -> Result<Decalage, BuildError> {
    let mut builder = Category::builder();
    let mut names = NameGen::default();
    // One object per morphism of B, in morphism order.
    let mut object_of = BTreeMap::new();
    let object_morphism: Vec<MorId> = base.morphisms().collect();
    for &u in &object_morphism {
        let o = builder.add_object(names.claim(base.morphism_name(u).to_string()));
        object_of.insert(u, o);
    }
    let mut names = NameGen::default();
    let mut morphism_action = Vec::new();
    let mut morphism_of = BTreeMap::new();
    for &u in &object_morphism {
        let src = object_of[&u];
        for w in base.morphisms_from(base.cod(u)) {
            let Some(wu) = base.compose(u, w) else {
                continue;
            };
            let name = names.claim(format!(
                "{}@{}",
                base.morphism_name(w),
                base.morphism_name(u)
            ));
            let m = if base.is_identity(w) {
                builder.add_identity(name, src)
            } else {
                builder.add_morphism(name, src, object_of[&wu])
            };
            morphism_action.push(w);
            morphism_of.insert((src, w), m);
        }
    }
    for (&(src, w), &m1) in &morphism_of {
        let u = object_morphism[src.index()];
        let Some(wu) = base.compose(u, w) else {
            continue;
        };
        let mid = object_of[&wu];
        for w2 in base.morphisms_from(base.cod(wu)) {
            let Some(&m2) = morphism_of.get(&(mid, w2)) else {
                continue;
            };
            let Some(w21) = base.compose(w, w2) else {
                continue;
            };
            builder.set_composite(m1, m2, morphism_of[&(src, w21)]);
        }
    }
    let category = builder.finish()?;
    let counit = Functor::new(
        category.clone(),
        base.clone(),
        object_morphism.iter().map(|&u| base.cod(u)).collect(),
        morphism_action.clone(),
    )?;
    let basepoint = Functor::new(
        category.clone(),
        base.clone(),
        object_morphism.iter().map(|&u| base.dom(u)).collect(),
        (0..category.morphism_count() as u32)
            .map(|i| {
                let src = category.dom(MorId(i));
                base.identity(base.dom(object_morphism[src.index()]))
            })
            .collect(),
    )?;
    Ok(Decalage {
        category,
        counit,
        basepoint,
        object_morphism,
        object_of,
        morphism_action,
        morphism_of,
    })
}

/// `Dec` on functors: apply `f` to coslice objects and acting morphisms.
pub fn decalage_map(
    f: &Functor,
    dec_src: &Decalage,
    dec_tgt: &Decalage,
) -> Result<Functor, BuildError> {
    let obj_map: Vec<ObjId> = dec_src
        .object_morphism
        .iter()
        .map(|&u| dec_tgt.object_of[&f.on_morphism(u)])
        .collect();
    let mor_map: Vec<MorId> = dec_src
        .category
        .morphisms()
        .map(|m| {
            let src = dec_src.category.dom(m);
            let w = dec_src.morphism_action[m.index()];
            dec_tgt.morphism_of[&(obj_map[src.index()], f.on_morphism(w))]
        })
        .collect();
    Functor::new(
        dec_src.category.clone(),
        dec_tgt.category.clone(),
        obj_map,
        mor_map,
    )
}

/// The comultiplication `Dec(B) → Dec(Dec(B))`: the object `u` goes to the
/// décalage morphism `id_{dom u} → u`, and the morphism `(u, w)` to itself
/// one level up.
pub fn comultiplication(
    base: &Category,
    dec: &Decalage,
    dec2: &Decalage,
) -> Result<Functor, BuildError> {
    let obj_map: Vec<ObjId> = dec
        .object_morphism
        .iter()
        .map(|&u| {
            let id_obj = dec.object_of[&base.identity(base.dom(u))];
            let as_mor = dec.morphism_of[&(id_obj, u)];
            dec2.object_of[&as_mor]
        })
        .collect();
    let mor_map: Vec<MorId> = dec
        .category
        .morphisms()
        .map(|m| {
            let src = dec.category.dom(m);
            dec2.morphism_of[&(obj_map[src.index()], m)]
        })
        .collect();
    Functor::new(
        dec.category.clone(),
        dec2.category.clone(),
        obj_map,
        mor_map,
    )
}

/// Violations of the comonad laws for `Dec` on a given base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComonadLaw {
    CounitAfterComultiplication,
    MappedCounitAfterComultiplication,
    Coassociativity,
}

impl std::fmt::Display for ComonadLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComonadLaw::CounitAfterComultiplication => {
                write!(f, "counit ∘ comultiplication ≠ id")
            }
            ComonadLaw::MappedCounitAfterComultiplication => {
                write!(f, "Dec(counit) ∘ comultiplication ≠ id")
            }
            ComonadLaw::Coassociativity => write!(f, "comultiplication is not coassociative"),
        }
    }
}

/// Check the three comonad laws for `Dec` at `base` by building three
/// levels of décalage and comparing functors structurally.
pub fn decalage_comonad_laws(base: &Category) -> Result<Vec<ComonadLaw>, BuildError> {
    let dec = decalage(base)?;
    let dec2 = decalage(&dec.category)?;
    let dec3 = decalage(&dec2.category)?;
    let delta = comultiplication(base, &dec, &dec2)?;
    let mut out = Vec::new();

    let id_dec = Functor::identity(dec.category.clone());
    if delta.then(&dec2.counit)? != id_dec {
        out.push(ComonadLaw::CounitAfterComultiplication);
    }
    let dec_counit = decalage_map(&dec.counit, &dec2, &dec)?;
    if delta.then(&dec_counit)? != id_dec {
        out.push(ComonadLaw::MappedCounitAfterComultiplication);
    }
    let delta2 = comultiplication(&dec.category, &dec2, &dec3)?;
    let dec_delta = decalage_map(&delta, &dec2, &dec3)?;
    if delta.then(&delta2)? != delta.then(&dec_delta)? {
        out.push(ComonadLaw::Coassociativity);
    }
    Ok(out)
}
