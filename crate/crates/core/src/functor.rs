//! Functors between finite categories, with law checking, composition,
//! strict pullbacks and binary products.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

use crate::category::{Category, MorId, ObjId};
use crate::error::BuildError;

/// A functor presented by its object and morphism tables.
///
/// Owns copies of its source and target; finite categories are small and
/// this keeps every construction self-contained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    source: Category,
    target: Category,
    object_map: Vec<ObjId>,
    morphism_map: Vec<MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctorViolation {
    /// F(f) has the wrong domain.
    Domain {
        morphism: String,
        expected: String,
        actual: String,
    },
    /// F(f) has the wrong codomain.
    Codomain {
        morphism: String,
        expected: String,
        actual: String,
    },
    /// F(id_a) is not the identity of F(a).
    Identity { object: String, image: String },
    /// F(g∘f) ≠ F(g)∘F(f).
    Composition {
        first: String,
        then: String,
        image_of_composite: String,
        composite_of_images: String,
    },
    /// g∘f exists in the source but F(g)∘F(f) is undefined in the target.
    MissingTargetComposite { first: String, then: String },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::Domain {
                morphism,
                expected,
                actual,
            } => {
                write!(f, "F({morphism}) has domain {actual}, expected {expected}")
            }
            FunctorViolation::Codomain {
                morphism,
                expected,
                actual,
            } => {
                write!(
                    f,
                    "F({morphism}) has codomain {actual}, expected {expected}"
                )
            }
            FunctorViolation::Identity { object, image } => {
                write!(
                    f,
                    "F(id_{object}) = {image} is not the identity of F({object})"
                )
            }
            FunctorViolation::Composition {
                first,
                then,
                image_of_composite,
                composite_of_images,
            } => write!(
                f,
                "F({first};{then}) = {image_of_composite} but F({first});F({then}) = \
                 {composite_of_images}"
            ),
            FunctorViolation::MissingTargetComposite { first, then } => write!(
                f,
                "F({first});F({then}) is undefined in the target category"
            ),
        }
    }
}

impl Functor {
    /// Assemble a functor from tables, checking only lengths and ranges.
    pub fn new(
        source: Category,
        target: Category,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Result<Functor, BuildError> {
        if object_map.len() != source.object_count() {
            return Err(BuildError::Mismatch {
                context: "functor object map".into(),
                expected: source.object_count().to_string(),
                found: object_map.len().to_string(),
            });
        }
        if morphism_map.len() != source.morphism_count() {
            return Err(BuildError::Mismatch {
                context: "functor morphism map".into(),
                expected: source.morphism_count().to_string(),
                found: morphism_map.len().to_string(),
            });
        }
        if object_map
            .iter()
            .any(|o| o.index() >= target.object_count())
            || morphism_map
                .iter()
                .any(|m| m.index() >= target.morphism_count())
        {
            return Err(BuildError::Invalid("functor map index out of range".into()));
        }
        Ok(Functor {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    /// The identity functor.
    pub fn identity(cat: Category) -> Functor {
        let object_map = cat.objects().collect();
        let morphism_map = cat.morphisms().collect();
        Functor {
            source: cat.clone(),
            target: cat,
            object_map,
            morphism_map,
        }
    }

    pub fn source(&self) -> &Category {
        &self.source
    }

    pub fn target(&self) -> &Category {
        &self.target
    }

    pub fn on_object(&self, o: ObjId) -> ObjId {
        self.object_map[o.index()]
    }

    pub fn on_morphism(&self, m: MorId) -> MorId {
        self.morphism_map[m.index()]
    }

    /// Check functoriality, one witness per defect.
    pub fn validate(&self) -> Vec<FunctorViolation> {
        let mut out = Vec::new();
        let src = &self.source;
        let tgt = &self.target;
        for m in src.morphisms() {
            let fm = self.on_morphism(m);
            let expected_dom = self.on_object(src.dom(m));
            if tgt.dom(fm) != expected_dom {
                out.push(FunctorViolation::Domain {
                    morphism: src.morphism_name(m).into(),
                    expected: tgt.object_name(expected_dom).into(),
                    actual: tgt.object_name(tgt.dom(fm)).into(),
                });
            }
            let expected_cod = self.on_object(src.cod(m));
            if tgt.cod(fm) != expected_cod {
                out.push(FunctorViolation::Codomain {
                    morphism: src.morphism_name(m).into(),
                    expected: tgt.object_name(expected_cod).into(),
                    actual: tgt.object_name(tgt.cod(fm)).into(),
                });
            }
        }
        for o in src.objects() {
            let image = self.on_morphism(src.identity(o));
            if image != tgt.identity(self.on_object(o)) {
                out.push(FunctorViolation::Identity {
                    object: src.object_name(o).into(),
                    image: tgt.morphism_name(image).into(),
                });
            }
        }
        for f in src.morphisms() {
            for g in src.morphisms() {
                if !src.composable(f, g) {
                    continue;
                }
                let Some(gf) = src.compose(f, g) else {
                    continue;
                };
                match tgt.compose(self.on_morphism(f), self.on_morphism(g)) {
                    None => out.push(FunctorViolation::MissingTargetComposite {
                        first: src.morphism_name(f).into(),
                        then: src.morphism_name(g).into(),
                    }),
                    Some(img) => {
                        if img != self.on_morphism(gf) {
                            out.push(FunctorViolation::Composition {
                                first: src.morphism_name(f).into(),
                                then: src.morphism_name(g).into(),
                                image_of_composite: tgt.morphism_name(self.on_morphism(gf)).into(),
                                composite_of_images: tgt.morphism_name(img).into(),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Functor) -> Result<Functor, BuildError> {
        if self.target != other.source {
            return Err(BuildError::Mismatch {
                context: "functor composition".into(),
                expected: "matching middle category".into(),
                found: "different categories".into(),
            });
        }
        Ok(Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            object_map: self
                .object_map
                .iter()
                .map(|&o| other.on_object(o))
                .collect(),
            morphism_map: self
                .morphism_map
                .iter()
                .map(|&m| other.on_morphism(m))
                .collect(),
        })
    }

    /// Strict isomorphism of categories: bijective on objects and morphisms.
    pub fn is_isomorphism(&self) -> bool {
        let mut obj_seen = vec![false; self.target.object_count()];
        for &o in &self.object_map {
            obj_seen[o.index()] = true;
        }
        let mut mor_seen = vec![false; self.target.morphism_count()];
        for &m in &self.morphism_map {
            mor_seen[m.index()] = true;
        }
        self.object_map.len() == self.target.object_count()
            && self.morphism_map.len() == self.target.morphism_count()
            && obj_seen.into_iter().all(|b| b)
            && mor_seen.into_iter().all(|b| b)
            && self.validate().is_empty()
    }

    /// The same functor between the opposite categories.
    pub fn opposite(&self) -> Functor {
        Functor {
            source: self.source.opposite(),
            target: self.target.opposite(),
            object_map: self.object_map.clone(),
            morphism_map: self.morphism_map.clone(),
        }
    }
}

/// The strict pullback of `f : A → B` along `g : C → B`, with its two
/// projections.
pub struct Pullback {
    pub category: Category,
    pub to_left: Functor,
    pub to_right: Functor,
}

pub fn pullback(f: &Functor, g: &Functor) -> Result<Pullback, BuildError> {
    if f.target() != g.target() {
        return Err(BuildError::Mismatch {
            context: "pullback".into(),
            expected: "functors into a common category".into(),
            found: "different targets".into(),
        });
    }
    let a = f.source();
    let c = g.source();
    let mut builder = Category::builder();
    let mut obj_ids: BTreeMap<(ObjId, ObjId), ObjId> = BTreeMap::new();
    for x in a.objects() {
        for y in c.objects() {
            if f.on_object(x) == g.on_object(y) {
                let id = builder.add_object(format!("({}|{})", a.object_name(x), c.object_name(y)));
                obj_ids.insert((x, y), id);
            }
        }
    }
    let mut mor_ids: BTreeMap<(MorId, MorId), MorId> = BTreeMap::new();
    for m in a.morphisms() {
        for n in c.morphisms() {
            if f.on_morphism(m) != g.on_morphism(n) {
                continue;
            }
            let dom = obj_ids[&(a.dom(m), c.dom(n))];
            let cod = obj_ids[&(a.cod(m), c.cod(n))];
            let name = format!("({}|{})", a.morphism_name(m), c.morphism_name(n));
            let id = if a.is_identity(m) && c.is_identity(n) {
                builder.add_identity(name, dom)
            } else {
                builder.add_morphism(name, dom, cod)
            };
            mor_ids.insert((m, n), id);
        }
    }
    for (&(m1, n1), &p1) in &mor_ids {
        for (&(m2, n2), &p2) in &mor_ids {
            if a.cod(m1) == a.dom(m2) && c.cod(n1) == c.dom(n2) {
                if let (Some(m12), Some(n12)) = (a.compose(m1, m2), c.compose(n1, n2)) {
                    builder.set_composite(p1, p2, mor_ids[&(m12, n12)]);
                }
            }
        }
    }
    let category = builder.finish()?;
    let mut left_obj = vec![ObjId(0); category.object_count()];
    let mut right_obj = vec![ObjId(0); category.object_count()];
    for (&(x, y), &p) in &obj_ids {
        left_obj[p.index()] = x;
        right_obj[p.index()] = y;
    }
    let mut left_mor = vec![MorId(0); category.morphism_count()];
    let mut right_mor = vec![MorId(0); category.morphism_count()];
    for (&(m, n), &p) in &mor_ids {
        left_mor[p.index()] = m;
        right_mor[p.index()] = n;
    }
    let to_left = Functor::new(category.clone(), a.clone(), left_obj, left_mor)?;
    let to_right = Functor::new(category.clone(), c.clone(), right_obj, right_mor)?;
    Ok(Pullback {
        category,
        to_left,
        to_right,
    })
}

/// The binary product `A × B` with its projections; the pullback over the
/// terminal category, spelled out directly.
pub fn product(a: &Category, b: &Category) -> Result<Pullback, BuildError> {
    let mut builder = Category::builder();
    let mut obj_ids: BTreeMap<(ObjId, ObjId), ObjId> = BTreeMap::new();
    for x in a.objects() {
        for y in b.objects() {
            let id = builder.add_object(format!("({}|{})", a.object_name(x), b.object_name(y)));
            obj_ids.insert((x, y), id);
        }
    }
    let mut mor_ids: BTreeMap<(MorId, MorId), MorId> = BTreeMap::new();
    for m in a.morphisms() {
        for n in b.morphisms() {
            let dom = obj_ids[&(a.dom(m), b.dom(n))];
            let name = format!("({}|{})", a.morphism_name(m), b.morphism_name(n));
            let id = if a.is_identity(m) && b.is_identity(n) {
                builder.add_identity(name, dom)
            } else {
                builder.add_morphism(name, dom, obj_ids[&(a.cod(m), b.cod(n))])
            };
            mor_ids.insert((m, n), id);
        }
    }
    for (&(m1, n1), &p1) in &mor_ids {
        for (&(m2, n2), &p2) in &mor_ids {
            if a.cod(m1) == a.dom(m2) && b.cod(n1) == b.dom(n2) {
                if let (Some(m12), Some(n12)) = (a.compose(m1, m2), b.compose(n1, n2)) {
                    builder.set_composite(p1, p2, mor_ids[&(m12, n12)]);
                }
            }
        }
    }
    let category = builder.finish()?;
    let mut left_obj = vec![ObjId(0); category.object_count()];
    let mut right_obj = vec![ObjId(0); category.object_count()];
    for (&(x, y), &p) in &obj_ids {
        left_obj[p.index()] = x;
        right_obj[p.index()] = y;
    }
    let mut left_mor = vec![MorId(0); category.morphism_count()];
    let mut right_mor = vec![MorId(0); category.morphism_count()];
    for (&(m, n), &p) in &mor_ids {
        left_mor[p.index()] = m;
        right_mor[p.index()] = n;
    }
    let to_left = Functor::new(category.clone(), a.clone(), left_obj, left_mor)?;
    let to_right = Functor::new(category.clone(), b.clone(), right_obj, right_mor)?;
    Ok(Pullback {
        category,
        to_left,
        to_right,
    })
}

/// Enumerate all functors `σ : X → A` with `f ∘ σ = g`, for `g : X → B`
/// and `f : A → B`.
///
/// Exhaustive backtracking; intended for the small categories that arise
/// in coslices and law checks. Identity images are forced, which prunes
/// most of the space.
pub fn enumerate_functors_over(g: &Functor, f: &Functor) -> Result<Vec<Functor>, BuildError> {
    if g.target() != f.target() {
        return Err(BuildError::Mismatch {
            context: "functor enumeration".into(),
            expected: "common base category".into(),
            found: "different bases".into(),
        });
    }
    let x = g.source().clone();
    let a = f.source().clone();
    let results = Vec::new();

    // Candidate objects per X-object: the fibre of f over g(x).
    let obj_candidates: Vec<Vec<ObjId>> = x
        .objects()
        .map(|xo| {
            a.objects()
                .filter(|&ao| f.on_object(ao) == g.on_object(xo))
                .collect()
        })
        .collect();
    if obj_candidates.iter().any(|c| c.is_empty()) && x.object_count() > 0 {
        return Ok(results);
    }

    let non_identity: Vec<MorId> = x.morphisms().filter(|&m| !x.is_identity(m)).collect();
    let mut obj_choice: Vec<usize> = vec![0; x.object_count()];

    struct Search<'s> {
        x: &'s Category,
        a: &'s Category,
        f: &'s Functor,
        g: &'s Functor,
        non_identity: &'s [MorId],
        results: Vec<Functor>,
    }

    impl Search<'_> {
        fn assign(
            &mut self,
            object_map: &[ObjId],
            pos: usize,
            morphism_map: &mut Vec<Option<MorId>>,
        ) {
            if pos == self.non_identity.len() {
                // Full functoriality check on the completed assignment.
                let map: Vec<MorId> = (0..self.x.morphism_count())
                    .map(|i| morphism_map[i].expect("assigned"))
                    .collect();
                for p in self.x.morphisms() {
                    for q in self.x.morphisms() {
                        if !self.x.composable(p, q) {
                            continue;
                        }
                        let Some(pq) = self.x.compose(p, q) else { continue };
                        if self.a.compose(map[p.index()], map[q.index()]) != Some(map[pq.index()])
                        {
                            return;
                        }
                    }
                }
                let functor =
                    Functor::new(self.x.clone(), self.a.clone(), object_map.to_vec(), map)
                        .expect("tables sized");
                self.results.push(functor);
                return;
            }
            let m = self.non_identity[pos];
            let dom_img = object_map[self.x.dom(m).index()];
            let cod_img = object_map[self.x.cod(m).index()];
            let over = self.g.on_morphism(m);
            for cand in self.a.morphisms() {
                if self.a.dom(cand) != dom_img || self.a.cod(cand) != cod_img {
                    continue;
                }
                if self.f.on_morphism(cand) != over {
                    continue;
                }
                morphism_map[m.index()] = Some(cand);
                self.assign(object_map, pos + 1, morphism_map);
            }
            morphism_map[m.index()] = None;
        }
    }

    let mut search = Search {
        x: &x,
        a: &a,
        f,
        g,
        non_identity: &non_identity,
        results,
    };

    loop {
        let object_map: Vec<ObjId> = obj_choice
            .iter()
            .enumerate()
            .map(|(i, &c)| obj_candidates[i][c])
            .collect();
        let mut morphism_map: Vec<Option<MorId>> = vec![None; x.morphism_count()];
        for o in x.objects() {
            morphism_map[x.identity(o).index()] = Some(a.identity(object_map[o.index()]));
        }
        search.assign(&object_map, 0, &mut morphism_map);

        // Advance the mixed-radix object choice.
        let mut i = 0;
        loop {
            if i == obj_choice.len() {
                return Ok(search.results);
            }
            obj_choice[i] += 1;
            if obj_choice[i] < obj_candidates[i].len() {
                break;
            }
            obj_choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn identity_functor_is_valid() {
        let f = Functor::identity(presets::commutative_square());
        assert!(f.validate().is_empty());
        assert!(f.is_isomorphism());
    }

    #[test]
    fn broken_functor_is_witnessed() {
        // Map the interval's arrow to an identity but objects apart: domain
        // check must fire.
        let c = presets::interval();
        let o0 = c.object_named("0").unwrap();
        let o1 = c.object_named("1").unwrap();
        let id0 = c.identity(o0);
        let f = Functor::new(
            c.clone(),
            c.clone(),
            vec![o0, o1],
            vec![id0, c.identity(o1), id0],
        )
        .unwrap();
        let violations = f.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, FunctorViolation::Codomain { morphism, .. } if morphism == "t")));
    }

    #[test]
    fn product_of_intervals_is_the_square() {
        let p = product(&presets::interval(), &presets::interval()).unwrap();
        assert_eq!(p.category.object_count(), 4);
        assert_eq!(p.category.morphism_count(), 9);
        assert!(p.category.validate().is_empty());
        assert!(p.to_left.validate().is_empty());
        assert!(p.to_right.validate().is_empty());
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let c = presets::interval();
        let id = Functor::identity(c.clone());
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(pb.category.object_count(), c.object_count());
        assert_eq!(pb.category.morphism_count(), c.morphism_count());
        assert!(pb.category.validate().is_empty());
        assert!(pb.to_left.is_isomorphism());
    }

    #[test]
    fn enumerate_sections_of_projection() {
        // Functors over B from B itself into V×B correspond to functors B→V
        // when V is discrete-ish; count them for V = discrete(2).
        let b = presets::interval();
        let v = presets::discrete(2);
        let prod = product(&v, &b).unwrap();
        let idb = Functor::identity(b.clone());
        let sections = enumerate_functors_over(&idb, &prod.to_right).unwrap();
        // A section picks one of 2 sheets for the whole connected interval.
        assert_eq!(sections.len(), 2);
        for s in sections {
            assert!(s.validate().is_empty());
            assert_eq!(s.then(&prod.to_right).unwrap(), idb);
        }
    }
}
