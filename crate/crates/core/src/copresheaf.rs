//! Copresheaves on a finite category and the category of elements.
//!
//! A copresheaf is a functor `F : B → Set` presented by finite element
//! lists and index tables. Its category of elements `el(F)` has pairs
//! `(b, x ∈ F b)` as objects and one morphism `(b, x) → (b', F(u)(x))`
//! for each `u : b → b'`; the projection to `B` is a discrete opfibration
//! and carries a canonical lens. Conversely every discrete opfibration
//! arises this way from its fibres, and the two constructions are inverse
//! up to the isomorphisms built in the tests.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

use crate::category::{Category, MorId, ObjId};
use crate::error::BuildError;
use crate::functor::Functor;
use crate::lens::Lens;
use crate::opfibration::DopfViolation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Copresheaf {
    base: Category,
    /// Element names per object.
    sets: Vec<Vec<String>>,
    /// Per base morphism, the function on element indices.
    maps: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CopresheafViolation {
    MapLength {
        morphism: String,
        expected: usize,
        actual: usize,
    },
    MapRange {
        morphism: String,
        element: String,
        value: usize,
    },
    /// `F(id_b)(x) ≠ x`.
    Identity {
        object: String,
        element: String,
        image: String,
    },
    /// `F(g∘f)(x) ≠ F(g)(F(f)(x))`.
    Composition {
        first: String,
        then: String,
        element: String,
        direct: String,
        pasted: String,
    },
}

impl fmt::Display for CopresheafViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopresheafViolation::MapLength {
                morphism,
                expected,
                actual,
            } => write!(
                f,
                "action of {morphism} has {actual} entries, expected {expected}"
            ),
            CopresheafViolation::MapRange {
                morphism,
                element,
                value,
            } => write!(
                f,
                "action of {morphism} sends {element} to out-of-range index {value}"
            ),
            CopresheafViolation::Identity {
                object,
                element,
                image,
            } => write!(f, "action of id_{object} sends {element} to {image}"),
            CopresheafViolation::Composition {
                first,
                then,
                element,
                direct,
                pasted,
            } => write!(
                f,
                "action of {first};{then} sends {element} to {direct}, \
                 but acting stepwise gives {pasted}"
            ),
        }
    }
}

impl Copresheaf {
    pub fn new(
        base: Category,
        sets: Vec<Vec<String>>,
        maps: Vec<Vec<usize>>,
    ) -> Result<Copresheaf, BuildError> {
        if sets.len() != base.object_count() {
            return Err(BuildError::Mismatch {
                context: "copresheaf sets".into(),
                expected: base.object_count().to_string(),
                found: sets.len().to_string(),
            });
        }
        if maps.len() != base.morphism_count() {
            return Err(BuildError::Mismatch {
                context: "copresheaf actions".into(),
                expected: base.morphism_count().to_string(),
                found: maps.len().to_string(),
            });
        }
        for (o, elems) in sets.iter().enumerate() {
            let mut seen = std::collections::BTreeSet::new();
            for e in elems {
                if !seen.insert(e) {
                    return Err(BuildError::Invalid(format!(
                        "duplicate element {e} at object {}",
                        base.object_name(ObjId(o as u32))
                    )));
                }
            }
        }
        Ok(Copresheaf { base, sets, maps })
    }

    pub fn base(&self) -> &Category {
        &self.base
    }

    pub fn set(&self, o: ObjId) -> &[String] {
        &self.sets[o.index()]
    }

    pub fn action(&self, m: MorId) -> &[usize] {
        &self.maps[m.index()]
    }

    pub fn element_index(&self, o: ObjId, name: &str) -> Option<usize> {
        self.sets[o.index()].iter().position(|e| e == name)
    }

    pub fn total_elements(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn validate(&self) -> Vec<CopresheafViolation> {
        let mut out = Vec::new();
        let base = &self.base;
        for m in base.morphisms() {
            let dom_size = self.sets[base.dom(m).index()].len();
            let cod_size = self.sets[base.cod(m).index()].len();
            let map = &self.maps[m.index()];
            if map.len() != dom_size {
                out.push(CopresheafViolation::MapLength {
                    morphism: base.morphism_name(m).into(),
                    expected: dom_size,
                    actual: map.len(),
                });
                continue;
            }
            for (i, &v) in map.iter().enumerate() {
                if v >= cod_size {
                    out.push(CopresheafViolation::MapRange {
                        morphism: base.morphism_name(m).into(),
                        element: self.sets[base.dom(m).index()][i].clone(),
                        value: v,
                    });
                }
            }
        }
        if !out.is_empty() {
            return out; // shape defects make the law checks meaningless
        }
        for o in base.objects() {
            let id = base.identity(o);
            for (i, elem) in self.sets[o.index()].iter().enumerate() {
                let img = self.maps[id.index()][i];
                if img != i {
                    out.push(CopresheafViolation::Identity {
                        object: base.object_name(o).into(),
                        element: elem.clone(),
                        image: self.sets[o.index()][img].clone(),
                    });
                }
            }
        }
        for f in base.morphisms() {
            for g in base.morphisms() {
                if !base.composable(f, g) {
                    continue;
                }
                let Some(gf) = base.compose(f, g) else {
                    continue;
                };
                for i in 0..self.sets[base.dom(f).index()].len() {
                    let direct = self.maps[gf.index()][i];
                    let pasted = self.maps[g.index()][self.maps[f.index()][i]];
                    if direct != pasted {
                        let cod_set = &self.sets[base.cod(g).index()];
                        out.push(CopresheafViolation::Composition {
                            first: base.morphism_name(f).into(),
                            then: base.morphism_name(g).into(),
                            element: self.sets[base.dom(f).index()][i].clone(),
                            direct: cod_set[direct].clone(),
                            pasted: cod_set[pasted].clone(),
                        });
                    }
                }
            }
        }
        out
    }

    /// Extend a copresheaf defined on the generating edges of a free
    /// category to all paths.
    pub fn from_generators(
        free: &crate::graph::FreeCategory,
        sets: Vec<Vec<String>>,
        edge_maps: Vec<Vec<usize>>,
    ) -> Result<Copresheaf, BuildError> {
        let base = free.category.clone();
        let mut maps: Vec<Vec<usize>> = Vec::with_capacity(base.morphism_count());
        for m in base.morphisms() {
            let path = &free.paths[m.index()];
            let dom_size = sets
                .get(base.dom(m).index())
                .ok_or_else(|| BuildError::Invalid("sets shorter than objects".into()))?
                .len();
            let mut map: Vec<usize> = (0..dom_size).collect();
            for &e in path {
                let step = edge_maps
                    .get(e)
                    .ok_or_else(|| BuildError::Invalid(format!("no action for edge index {e}")))?;
                map = map
                    .iter()
                    .map(|&i| {
                        step.get(i).copied().ok_or_else(|| {
                            BuildError::Invalid(format!("edge action {e} too short"))
                        })
                    })
                    .collect::<Result<_, _>>()?;
            }
            maps.push(map);
        }
        Copresheaf::new(base, sets, maps)
    }
}

/// The category of elements of a copresheaf, with its projection and the
/// canonical lens structure on it.
#[derive(Debug, Clone)]
pub struct Elements {
    pub category: Category,
    pub projection: Functor,
    pub lens: Lens,
    /// `object_ids[b][i]` is the object of `el(F)` for element `i` of `F(b)`.
    pub object_ids: Vec<Vec<ObjId>>,
}

/// Build `el(F)`. Assumes a valid copresheaf on a valid base.
pub fn elements(f: &Copresheaf) -> Result<Elements, BuildError> {
    let base = f.base().clone();
    let mut builder = Category::builder();
    let mut object_ids: Vec<Vec<ObjId>> = Vec::with_capacity(base.object_count());
    for b in base.objects() {
        let mut ids = Vec::new();
        for x in f.set(b) {
            ids.push(builder.add_object(format!("{}@{}", x, base.object_name(b))));
        }
        object_ids.push(ids);
    }
    // One morphism per (element, base morphism out of its object).
    let mut mor_ids: BTreeMap<(ObjId, usize, MorId), MorId> = BTreeMap::new();
    for b in base.objects() {
        for (i, x) in f.set(b).iter().enumerate() {
            for u in base.morphisms_from(b) {
                let dom = object_ids[b.index()][i];
                let cod = object_ids[base.cod(u).index()][f.action(u)[i]];
                let name = format!("{}@{}@{}", base.morphism_name(u), x, base.object_name(b));
                let m = if base.is_identity(u) {
                    builder.add_identity(name, dom)
                } else {
                    builder.add_morphism(name, dom, cod)
                };
                mor_ids.insert((b, i, u), m);
            }
        }
    }
    for (&(b, i, u), &m1) in &mor_ids {
        let bu = base.cod(u);
        let iu = f.action(u)[i];
        for v in base.morphisms_from(bu) {
            let m2 = mor_ids[&(bu, iu, v)];
            let Some(uv) = base.compose(u, v) else {
                continue;
            };
            builder.set_composite(m1, m2, mor_ids[&(b, i, uv)]);
        }
    }
    let category = builder.finish()?;

    let mut obj_map = vec![ObjId(0); category.object_count()];
    for b in base.objects() {
        for &el_obj in &object_ids[b.index()] {
            obj_map[el_obj.index()] = b;
        }
    }
    let mut mor_map = vec![MorId(0); category.morphism_count()];
    let mut lifts: BTreeMap<(ObjId, MorId), MorId> = BTreeMap::new();
    for (&(b, i, u), &m) in &mor_ids {
        mor_map[m.index()] = u;
        lifts.insert((object_ids[b.index()][i], u), m);
    }
    let projection = Functor::new(category.clone(), base, obj_map, mor_map)?;
    let lens = Lens::new(projection.clone(), lifts)?;
    Ok(Elements {
        category,
        projection,
        lens,
        object_ids,
    })
}

/// Recover a copresheaf from a discrete opfibration by taking fibres.
pub fn fibres(f: &Functor) -> Result<Copresheaf, Vec<DopfViolation>> {
    let report = crate::opfibration::discrete_opfibration_report(f);
    if !report.is_empty() {
        return Err(report);
    }
    let a_cat = f.source();
    let base = f.target().clone();
    let mut sets: Vec<Vec<String>> = vec![Vec::new(); base.object_count()];
    let mut fibre_objs: Vec<Vec<ObjId>> = vec![Vec::new(); base.object_count()];
    for a in a_cat.objects() {
        let b = f.on_object(a);
        sets[b.index()].push(a_cat.object_name(a).to_string());
        fibre_objs[b.index()].push(a);
    }
    let index_of = |o: ObjId| -> (usize, usize) {
        let b = f.on_object(o);
        let i = fibre_objs[b.index()]
            .iter()
            .position(|&x| x == o)
            .expect("in fibre");
        (b.index(), i)
    };
    let mut maps: Vec<Vec<usize>> = Vec::with_capacity(base.morphism_count());
    for u in base.morphisms() {
        let b = base.dom(u);
        let mut map = Vec::with_capacity(sets[b.index()].len());
        for &a in &fibre_objs[b.index()] {
            let lift = a_cat
                .morphisms_from(a)
                .find(|&m| f.on_morphism(m) == u)
                .expect("discrete opfibration has a lift");
            let (_, i) = index_of(a_cat.cod(lift));
            map.push(i);
        }
        maps.push(map);
    }
    Ok(Copresheaf { base, sets, maps })
}

/// The representable copresheaf `B(b, −)`.
pub fn representable(base: &Category, b: ObjId) -> Copresheaf {
    let sets: Vec<Vec<String>> = base
        .objects()
        .map(|x| {
            base.hom(b, x)
                .map(|m| base.morphism_name(m).to_string())
                .collect()
        })
        .collect();
    let hom_list: Vec<Vec<MorId>> = base.objects().map(|x| base.hom(b, x).collect()).collect();
    let maps: Vec<Vec<usize>> = base
        .morphisms()
        .map(|u| {
            hom_list[base.dom(u).index()]
                .iter()
                .map(|&m| {
                    let composite = base.compose(m, u).expect("valid base");
                    hom_list[base.cod(u).index()]
                        .iter()
                        .position(|&k| k == composite)
                        .expect("composite is in hom")
                })
                .collect()
        })
        .collect();
    Copresheaf {
        base: base.clone(),
        sets,
        maps,
    }
}

/// The coproduct of all representables, `∐_b B(b, −)`: at `x`, every
/// morphism of `B` with codomain `x`, acted on by postcomposition.
pub fn arrows_copresheaf(base: &Category) -> Copresheaf {
    let into_list: Vec<Vec<MorId>> = base
        .objects()
        .map(|x| base.morphisms_into(x).collect())
        .collect();
    let sets: Vec<Vec<String>> = into_list
        .iter()
        .map(|ms| {
            ms.iter()
                .map(|&m| base.morphism_name(m).to_string())
                .collect()
        })
        .collect();
    let maps: Vec<Vec<usize>> = base
        .morphisms()
        .map(|u| {
            into_list[base.dom(u).index()]
                .iter()
                .map(|&m| {
                    let composite = base.compose(m, u).expect("valid base");
                    into_list[base.cod(u).index()]
                        .iter()
                        .position(|&k| k == composite)
                        .expect("composite lands in codomain")
                })
                .collect()
        })
        .collect();
    Copresheaf {
        base: base.clone(),
        sets,
        maps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opfibration::discrete_opfibration_report;
    use crate::presets;

    #[test]
    fn sample_copresheaf_is_valid() {
        let f = presets::sample_copresheaf();
        assert!(f.validate().is_empty());
    }

    #[test]
    fn elements_projection_is_discrete_opfibration() {
        let f = presets::sample_copresheaf();
        let el = elements(&f).unwrap();
        assert!(el.category.validate().is_empty());
        assert!(el.projection.validate().is_empty());
        assert!(el.lens.validate().is_empty());
        assert!(discrete_opfibration_report(&el.projection).is_empty());
        assert_eq!(el.category.object_count(), f.total_elements());
    }

    #[test]
    fn fibres_of_elements_recovers_sizes_and_actions() {
        let f = presets::sample_copresheaf();
        let el = elements(&f).unwrap();
        let back = fibres(&el.projection).unwrap();
        for b in f.base().objects() {
            assert_eq!(back.set(b).len(), f.set(b).len());
        }
        for u in f.base().morphisms() {
            assert_eq!(back.action(u), f.action(u));
        }
    }

    #[test]
    fn broken_action_is_witnessed() {
        let f = presets::sample_copresheaf();
        let base = f.base().clone();
        let mut maps: Vec<Vec<usize>> = base.morphisms().map(|m| f.action(m).to_vec()).collect();
        // Scramble the identity action at the first nonempty object.
        let o = base
            .objects()
            .find(|&o| f.set(o).len() >= 2)
            .expect("fixture has a 2-element fibre");
        let id = base.identity(o);
        maps[id.index()].swap(0, 1);
        let sets = base.objects().map(|o| f.set(o).to_vec()).collect();
        let broken = Copresheaf::new(base, sets, maps).unwrap();
        assert!(broken
            .validate()
            .iter()
            .any(|v| matches!(v, CopresheafViolation::Identity { .. })));
    }

    #[test]
    fn empty_fibres_are_allowed() {
        // F(0) = ∅ forces el(F) to have objects only over 1; the projection
        // is still a discrete opfibration.
        let base = presets::interval();
        let f = Copresheaf::new(
            base.clone(),
            vec![vec![], vec!["p".into()]],
            vec![vec![], vec![0], vec![]],
        )
        .unwrap();
        assert!(f.validate().is_empty());
        let el = elements(&f).unwrap();
        assert_eq!(el.category.object_count(), 1);
        assert!(discrete_opfibration_report(&el.projection).is_empty());
        let back = fibres(&el.projection).unwrap();
        assert!(back.set(base.object_named("0").unwrap()).is_empty());
    }

    #[test]
    fn representable_at_interval_source() {
        let b = presets::interval();
        let f = representable(&b, ObjId(0));
        assert!(f.validate().is_empty());
        assert_eq!(f.set(ObjId(0)).len(), 1);
        assert_eq!(f.set(ObjId(1)).len(), 1);
    }

    #[test]
    fn arrows_copresheaf_counts() {
        let b = presets::commutative_square();
        let f = arrows_copresheaf(&b);
        assert!(f.validate().is_empty());
        assert_eq!(f.total_elements(), b.morphism_count());
    }
}
