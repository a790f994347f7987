//! JSON wire formats for categories, functors, lenses, copresheaves and
//! spans.
//!
//! Files are name-based and self-contained: functors and lenses embed
//! their source and target categories. Composition entries are triples
//! `[f, g, h]` meaning "`f` followed by `g` equals `h`" (`h = g ∘ f`).
//! Resolution reports unknown names as errors; law checking is separate,
//! so structurally well-formed but lawless files load fine and can then
//! be diagnosed with witnesses.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::category::{Category, MorId, ObjId};
use crate::copresheaf::Copresheaf;
use crate::error::BuildError;
use crate::functor::Functor;
use crate::lens::Lens;
use crate::span::LensSpan;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    /// Object name → identity morphism name.
    pub identities: BTreeMap<String, String>,
    /// Triples `[f, g, h]` with `h = g ∘ f` (diagrammatic order).
    pub composition: Vec<[String; 3]>,
}

impl CategoryFile {
    pub fn resolve(&self) -> Result<Category, BuildError> {
        let mut builder = Category::builder();
        let mut objs: BTreeMap<&str, ObjId> = BTreeMap::new();
        for name in &self.objects {
            let id = builder.add_object(name.clone());
            objs.insert(name, id);
        }
        let mut mors: BTreeMap<&str, MorId> = BTreeMap::new();
        for entry in &self.morphisms {
            let dom = *objs
                .get(entry.dom.as_str())
                .ok_or_else(|| BuildError::UnknownObject {
                    name: entry.dom.clone(),
                })?;
            let cod = *objs
                .get(entry.cod.as_str())
                .ok_or_else(|| BuildError::UnknownObject {
                    name: entry.cod.clone(),
                })?;
            let id = builder.add_morphism(entry.name.clone(), dom, cod);
            mors.insert(&entry.name, id);
        }
        for (obj, mor) in &self.identities {
            let o = *objs
                .get(obj.as_str())
                .ok_or_else(|| BuildError::UnknownObject { name: obj.clone() })?;
            let m = *mors
                .get(mor.as_str())
                .ok_or_else(|| BuildError::UnknownMorphism { name: mor.clone() })?;
            builder.set_identity(o, m);
        }
        for [f, g, h] in &self.composition {
            let fm = *mors
                .get(f.as_str())
                .ok_or_else(|| BuildError::UnknownMorphism { name: f.clone() })?;
            let gm = *mors
                .get(g.as_str())
                .ok_or_else(|| BuildError::UnknownMorphism { name: g.clone() })?;
            let hm = *mors
                .get(h.as_str())
                .ok_or_else(|| BuildError::UnknownMorphism { name: h.clone() })?;
            builder.set_composite(fm, gm, hm);
        }
        builder.finish()
    }

    pub fn from_category(cat: &Category) -> CategoryFile {
        let mut composition = Vec::new();
        for f in cat.morphisms() {
            for g in cat.morphisms() {
                if let Some(h) = cat.compose(f, g) {
                    composition.push([
                        cat.morphism_name(f).to_string(),
                        cat.morphism_name(g).to_string(),
                        cat.morphism_name(h).to_string(),
                    ]);
                }
            }
        }
        CategoryFile {
            objects: cat
                .objects()
                .map(|o| cat.object_name(o).to_string())
                .collect(),
            morphisms: cat
                .morphisms()
                .map(|m| MorphismEntry {
                    name: cat.morphism_name(m).to_string(),
                    dom: cat.object_name(cat.dom(m)).to_string(),
                    cod: cat.object_name(cat.cod(m)).to_string(),
                })
                .collect(),
            identities: cat
                .objects()
                .map(|o| {
                    (
                        cat.object_name(o).to_string(),
                        cat.morphism_name(cat.identity(o)).to_string(),
                    )
                })
                .collect(),
            composition,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub source: CategoryFile,
    pub target: CategoryFile,
    pub on_objects: BTreeMap<String, String>,
    pub on_morphisms: BTreeMap<String, String>,
}

fn resolve_maps(
    source: &Category,
    target: &Category,
    on_objects: &BTreeMap<String, String>,
    on_morphisms: &BTreeMap<String, String>,
) -> Result<(Vec<ObjId>, Vec<MorId>), BuildError> {
    let mut object_map = Vec::with_capacity(source.object_count());
    for o in source.objects() {
        let name = source.object_name(o);
        let image = on_objects
            .get(name)
            .ok_or_else(|| BuildError::Invalid(format!("object {name} has no image")))?;
        object_map.push(
            target
                .object_named(image)
                .ok_or_else(|| BuildError::UnknownObject {
                    name: image.clone(),
                })?,
        );
    }
    let mut morphism_map = Vec::with_capacity(source.morphism_count());
    for m in source.morphisms() {
        let name = source.morphism_name(m);
        let image = on_morphisms
            .get(name)
            .ok_or_else(|| BuildError::Invalid(format!("morphism {name} has no image")))?;
        morphism_map.push(target.morphism_named(image).ok_or_else(|| {
            BuildError::UnknownMorphism {
                name: image.clone(),
            }
        })?);
    }
    Ok((object_map, morphism_map))
}

impl FunctorFile {
    pub fn resolve(&self) -> Result<Functor, BuildError> {
        let source = self.source.resolve()?;
        let target = self.target.resolve()?;
        let (object_map, morphism_map) =
            resolve_maps(&source, &target, &self.on_objects, &self.on_morphisms)?;
        Functor::new(source, target, object_map, morphism_map)
    }

    pub fn from_functor(f: &Functor) -> FunctorFile {
        FunctorFile {
            source: CategoryFile::from_category(f.source()),
            target: CategoryFile::from_category(f.target()),
            on_objects: f
                .source()
                .objects()
                .map(|o| {
                    (
                        f.source().object_name(o).to_string(),
                        f.target().object_name(f.on_object(o)).to_string(),
                    )
                })
                .collect(),
            on_morphisms: f
                .source()
                .morphisms()
                .map(|m| {
                    (
                        f.source().morphism_name(m).to_string(),
                        f.target().morphism_name(f.on_morphism(m)).to_string(),
                    )
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftEntry {
    /// Source object name (in the lens source).
    pub at: String,
    /// Base morphism name (in the lens target).
    pub over: String,
    /// Chosen lift name (in the lens source).
    pub lift: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LensFile {
    pub functor: FunctorFile,
    pub lifts: Vec<LiftEntry>,
}

fn resolve_lifts(
    source: &Category,
    target: &Category,
    entries: &[LiftEntry],
) -> Result<BTreeMap<(ObjId, MorId), MorId>, BuildError> {
    let mut lifts = BTreeMap::new();
    for e in entries {
        let at = source
            .object_named(&e.at)
            .ok_or_else(|| BuildError::UnknownObject { name: e.at.clone() })?;
        let over = target
            .morphism_named(&e.over)
            .ok_or_else(|| BuildError::UnknownMorphism {
                name: e.over.clone(),
            })?;
        let lift = source
            .morphism_named(&e.lift)
            .ok_or_else(|| BuildError::UnknownMorphism {
                name: e.lift.clone(),
            })?;
        lifts.insert((at, over), lift);
    }
    Ok(lifts)
}

impl LensFile {
    pub fn resolve(&self) -> Result<Lens, BuildError> {
        let functor = self.functor.resolve()?;
        let lifts = resolve_lifts(functor.source(), functor.target(), &self.lifts)?;
        Lens::new(functor, lifts)
    }

    pub fn from_lens(lens: &Lens) -> LensFile {
        let source = lens.source();
        let target = lens.target();
        LensFile {
            functor: FunctorFile::from_functor(lens.functor()),
            lifts: lens
                .lifts()
                .map(|(a, u, m)| LiftEntry {
                    at: source.object_name(a).to_string(),
                    over: target.morphism_name(u).to_string(),
                    lift: source.morphism_name(m).to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CopresheafFile {
    pub base: CategoryFile,
    /// Object name → element names.
    pub sets: BTreeMap<String, Vec<String>>,
    /// Morphism name → (element name → element name).
    pub actions: BTreeMap<String, BTreeMap<String, String>>,
}

impl CopresheafFile {
    pub fn resolve(&self) -> Result<Copresheaf, BuildError> {
        let base = self.base.resolve()?;
        let mut sets: Vec<Vec<String>> = Vec::with_capacity(base.object_count());
        for o in base.objects() {
            sets.push(
                self.sets
                    .get(base.object_name(o))
                    .cloned()
                    .unwrap_or_default(),
            );
        }
        let mut maps: Vec<Vec<usize>> = Vec::with_capacity(base.morphism_count());
        for m in base.morphisms() {
            let name = base.morphism_name(m);
            let table = self
                .actions
                .get(name)
                .ok_or_else(|| BuildError::Invalid(format!("morphism {name} has no action")))?;
            let dom = base.dom(m);
            let cod = base.cod(m);
            let mut map = Vec::with_capacity(sets[dom.index()].len());
            for elem in &sets[dom.index()] {
                let image = table.get(elem).ok_or_else(|| BuildError::UnknownElement {
                    element: elem.clone(),
                    object: base.object_name(dom).to_string(),
                })?;
                let idx = sets[cod.index()]
                    .iter()
                    .position(|e| e == image)
                    .ok_or_else(|| BuildError::UnknownElement {
                        element: image.clone(),
                        object: base.object_name(cod).to_string(),
                    })?;
                map.push(idx);
            }
            maps.push(map);
        }
        Copresheaf::new(base, sets, maps)
    }

    pub fn from_copresheaf(f: &Copresheaf) -> CopresheafFile {
        let base = f.base();
        CopresheafFile {
            base: CategoryFile::from_category(base),
            sets: base
                .objects()
                .map(|o| (base.object_name(o).to_string(), f.set(o).to_vec()))
                .collect(),
            actions: base
                .morphisms()
                .map(|m| {
                    let dom = base.dom(m);
                    let cod = base.cod(m);
                    let table = f
                        .set(dom)
                        .iter()
                        .zip(f.action(m))
                        .map(|(e, &i)| (e.clone(), f.set(cod)[i].clone()))
                        .collect();
                    (base.morphism_name(m).to_string(), table)
                })
                .collect(),
        }
    }
}

/// One leg of a span: maps out of the shared apex plus its lift table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegFile {
    pub target: CategoryFile,
    pub on_objects: BTreeMap<String, String>,
    pub on_morphisms: BTreeMap<String, String>,
    pub lifts: Vec<LiftEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanFile {
    pub apex: CategoryFile,
    pub left: LegFile,
    pub right: LegFile,
}

impl SpanFile {
    pub fn resolve(&self) -> Result<LensSpan, BuildError> {
        let apex = self.apex.resolve()?;
        let resolve_leg = |leg: &LegFile| -> Result<Lens, BuildError> {
            let target = leg.target.resolve()?;
            let (object_map, morphism_map) =
                resolve_maps(&apex, &target, &leg.on_objects, &leg.on_morphisms)?;
            let functor = Functor::new(apex.clone(), target.clone(), object_map, morphism_map)?;
            let lifts = resolve_lifts(&apex, &target, &leg.lifts)?;
            Lens::new(functor, lifts)
        };
        LensSpan::new(resolve_leg(&self.left)?, resolve_leg(&self.right)?)
    }

    pub fn from_span(span: &LensSpan) -> SpanFile {
        let leg = |lens: &Lens| -> LegFile {
            let file = LensFile::from_lens(lens);
            LegFile {
                target: file.functor.target,
                on_objects: file.functor.on_objects,
                on_morphisms: file.functor.on_morphisms,
                lifts: file.lifts,
            }
        };
        SpanFile {
            apex: CategoryFile::from_category(span.apex()),
            left: leg(&span.left),
            right: leg(&span.right),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn category_round_trip() {
        let cat = presets::commutative_square();
        let file = CategoryFile::from_category(&cat);
        let json = serde_json::to_string_pretty(&file).unwrap();
        let parsed: CategoryFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.resolve().unwrap(), cat);
    }

    #[test]
    fn lens_round_trip() {
        let lens = presets::non_split_lens();
        let file = LensFile::from_lens(&lens);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: LensFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.resolve().unwrap(), lens);
    }

    #[test]
    fn copresheaf_round_trip() {
        let f = presets::sample_copresheaf();
        let file = CopresheafFile::from_copresheaf(&f);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: CopresheafFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.resolve().unwrap(), f);
    }

    #[test]
    fn unknown_names_are_reported() {
        let cat = presets::interval();
        let mut file = CategoryFile::from_category(&cat);
        file.morphisms[2].dom = "missing".into();
        assert!(matches!(
            file.resolve(),
            Err(BuildError::UnknownObject { name }) if name == "missing"
        ));
    }
}
