//! Finite categories with explicit composition tables.
//!
//! A [`Category`] stores its objects, morphisms and composites as plain
//! tables so that every law (totality, endpoints, identities,
//! associativity) can be checked exhaustively and violated instances can
//! be reported as witnesses. Categories built by the constructors in this
//! crate are valid by construction; categories loaded from files may be
//! arbitrarily broken and are only diagnosed, never trusted.

use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::BuildError;

/// Index of an object in its [`Category`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub(crate) u32);

/// Index of a morphism in its [`Category`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub(crate) u32);

impl ObjId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MorphismData {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A finite category: named objects and morphisms, an identity per object
/// and a composition table.
///
/// The table is indexed diagrammatically: `compose(f, g)` is the composite
/// "`f` followed by `g`", written `g ∘ f` in applicative order. Entries may
/// be missing or ill-formed for categories read from untrusted input;
/// [`Category::validate`] reports every defect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Category {
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    identities: Vec<MorId>,
    /// Row-major `[f.index() * n + g.index()]` holding `g ∘ f`.
    table: Vec<Option<MorId>>,
}

/// A single defect found while checking the category axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CategoryViolation {
    /// `g ∘ f` is needed (cod f = dom g) but the table has no entry.
    CompositeUndefined { first: String, then: String },
    /// The table defines a composite for a non-composable pair.
    CompositeNotComposable { first: String, then: String },
    /// `g ∘ f` exists but has the wrong domain or codomain.
    CompositeEndpoints {
        first: String,
        then: String,
        composite: String,
        expected_dom: String,
        expected_cod: String,
        actual_dom: String,
        actual_cod: String,
    },
    /// `f ∘ id_a ≠ f`.
    LeftIdentity {
        morphism: String,
        identity: String,
        got: String,
    },
    /// `id_b ∘ f ≠ f`.
    RightIdentity {
        morphism: String,
        identity: String,
        got: String,
    },
    /// `(h ∘ g) ∘ f ≠ h ∘ (g ∘ f)` for a composable triple.
    Associativity {
        first: String,
        second: String,
        third: String,
        left: String,
        right: String,
    },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryViolation::CompositeUndefined { first, then } => {
                write!(f, "composite of {first} followed by {then} is undefined")
            }
            CategoryViolation::CompositeNotComposable { first, then } => write!(
                f,
                "table defines a composite for {first} followed by {then}, \
                 but cod({first}) != dom({then})"
            ),
            CategoryViolation::CompositeEndpoints {
                first,
                then,
                composite,
                expected_dom,
                expected_cod,
                actual_dom,
                actual_cod,
            } => write!(
                f,
                "composite {composite} of {first};{then} has endpoints \
                 {actual_dom} -> {actual_cod}, expected {expected_dom} -> {expected_cod}"
            ),
            CategoryViolation::LeftIdentity {
                morphism,
                identity,
                got,
            } => {
                write!(
                    f,
                    "{morphism} after {identity} is {got}, expected {morphism}"
                )
            }
            CategoryViolation::RightIdentity {
                morphism,
                identity,
                got,
            } => {
                write!(
                    f,
                    "{identity} after {morphism} is {got}, expected {morphism}"
                )
            }
            CategoryViolation::Associativity {
                first,
                second,
                third,
                left,
                right,
            } => write!(
                f,
                "associativity fails on {first};{second};{third}: \
                 ({first};{second});{third} = {left} but {first};({second};{third}) = {right}"
            ),
        }
    }
}

impl Category {
    pub fn builder() -> CategoryBuilder {
        CategoryBuilder::default()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.index()]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m.index()].name
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.morphisms[m.index()].dom
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.morphisms[m.index()].cod
    }

    /// The identity morphism on `o`.
    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o.index()]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.dom(m).index()] == m
    }

    pub fn object_named(&self, name: &str) -> Option<ObjId> {
        self.objects
            .iter()
            .position(|n| n == name)
            .map(|i| ObjId(i as u32))
    }

    pub fn morphism_named(&self, name: &str) -> Option<MorId> {
        self.morphisms
            .iter()
            .position(|m| m.name == name)
            .map(|i| MorId(i as u32))
    }

    /// Composite of `f` followed by `g` (i.e. `g ∘ f`), if the table has it.
    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.table[f.index() * self.morphisms.len() + g.index()]
    }

    /// Whether `f` followed by `g` is a composable pair.
    pub fn composable(&self, f: MorId, g: MorId) -> bool {
        self.cod(f) == self.dom(g)
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.morphisms()
            .filter(move |&m| self.dom(m) == a && self.cod(m) == b)
    }

    pub fn morphisms_from(&self, a: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.morphisms().filter(move |&m| self.dom(m) == a)
    }

    pub fn morphisms_into(&self, b: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.morphisms().filter(move |&m| self.cod(m) == b)
    }

    /// Check every category axiom, reporting one witness per defect.
    pub fn validate(&self) -> Vec<CategoryViolation> {
        let mut out = Vec::new();
        let n = self.morphisms.len();
        for f in self.morphisms() {
            for g in self.morphisms() {
                let entry = self.table[f.index() * n + g.index()];
                match (self.composable(f, g), entry) {
                    (true, None) => out.push(CategoryViolation::CompositeUndefined {
                        first: self.morphism_name(f).into(),
                        then: self.morphism_name(g).into(),
                    }),
                    (false, Some(_)) => out.push(CategoryViolation::CompositeNotComposable {
                        first: self.morphism_name(f).into(),
                        then: self.morphism_name(g).into(),
                    }),
                    (true, Some(h)) => {
                        if self.dom(h) != self.dom(f) || self.cod(h) != self.cod(g) {
                            out.push(CategoryViolation::CompositeEndpoints {
                                first: self.morphism_name(f).into(),
                                then: self.morphism_name(g).into(),
                                composite: self.morphism_name(h).into(),
                                expected_dom: self.object_name(self.dom(f)).into(),
                                expected_cod: self.object_name(self.cod(g)).into(),
                                actual_dom: self.object_name(self.dom(h)).into(),
                                actual_cod: self.object_name(self.cod(h)).into(),
                            });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in self.morphisms() {
            let id_dom = self.identity(self.dom(f));
            if let Some(h) = self.compose(id_dom, f) {
                if h != f {
                    out.push(CategoryViolation::LeftIdentity {
                        morphism: self.morphism_name(f).into(),
                        identity: self.morphism_name(id_dom).into(),
                        got: self.morphism_name(h).into(),
                    });
                }
            }
            let id_cod = self.identity(self.cod(f));
            if let Some(h) = self.compose(f, id_cod) {
                if h != f {
                    out.push(CategoryViolation::RightIdentity {
                        morphism: self.morphism_name(f).into(),
                        identity: self.morphism_name(id_cod).into(),
                        got: self.morphism_name(h).into(),
                    });
                }
            }
        }
        // Associativity, skipping triples whose pairwise composites are
        // already reported as undefined.
        for f in self.morphisms() {
            for g in self.morphisms() {
                if !self.composable(f, g) {
                    continue;
                }
                for h in self.morphisms() {
                    if !self.composable(g, h) {
                        continue;
                    }
                    let (Some(fg), Some(gh)) = (self.compose(f, g), self.compose(g, h)) else {
                        continue;
                    };
                    let (Some(left), Some(right)) = (self.compose(fg, h), self.compose(f, gh))
                    else {
                        continue;
                    };
                    if left != right {
                        out.push(CategoryViolation::Associativity {
                            first: self.morphism_name(f).into(),
                            second: self.morphism_name(g).into(),
                            third: self.morphism_name(h).into(),
                            left: self.morphism_name(left).into(),
                            right: self.morphism_name(right).into(),
                        });
                    }
                }
            }
        }
        out
    }

    /// The opposite category: same names, domains and codomains swapped.
    pub fn opposite(&self) -> Category {
        let n = self.morphisms.len();
        let mut table = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                table[f * n + g] = self.table[g * n + f];
            }
        }
        Category {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismData {
                    name: m.name.clone(),
                    dom: m.cod,
                    cod: m.dom,
                })
                .collect(),
            identities: self.identities.clone(),
            table,
        }
    }
}

/// Incremental construction of a [`Category`].
///
/// `finish` enforces structural sanity (unique names, an identity per
/// object, table entries within range); it does not check the axioms.
#[derive(Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    identities: BTreeMap<u32, u32>,
    composites: BTreeMap<(u32, u32), u32>,
}

impl CategoryBuilder {
    pub fn add_object(&mut self, name: impl Into<String>) -> ObjId {
        self.objects.push(name.into());
        ObjId(self.objects.len() as u32 - 1)
    }

    pub fn add_morphism(&mut self, name: impl Into<String>, dom: ObjId, cod: ObjId) -> MorId {
        self.morphisms.push(MorphismData {
            name: name.into(),
            dom,
            cod,
        });
        MorId(self.morphisms.len() as u32 - 1)
    }

    /// Add an identity morphism for `o` and register it as such.
    pub fn add_identity(&mut self, name: impl Into<String>, o: ObjId) -> MorId {
        let m = self.add_morphism(name, o, o);
        self.identities.insert(o.0, m.0);
        m
    }

    /// Mark an existing morphism as the identity of its domain.
    pub fn set_identity(&mut self, o: ObjId, m: MorId) {
        self.identities.insert(o.0, m.0);
    }

    /// Record `g ∘ f = h`. Non-composable pairs are recorded as given so the
    /// validator can witness them.
    pub fn set_composite(&mut self, f: MorId, g: MorId, h: MorId) {
        self.composites.insert((f.0, g.0), h.0);
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn finish(self) -> Result<Category, BuildError> {
        let mut seen = BTreeSet::new();
        for name in &self.objects {
            if name.is_empty() {
                return Err(BuildError::EmptyName);
            }
            if !seen.insert(name.clone()) {
                return Err(BuildError::DuplicateObject { name: name.clone() });
            }
        }
        seen.clear();
        for m in &self.morphisms {
            if m.name.is_empty() {
                return Err(BuildError::EmptyName);
            }
            if !seen.insert(m.name.clone()) {
                return Err(BuildError::DuplicateMorphism {
                    name: m.name.clone(),
                });
            }
        }
        let mut identities = Vec::with_capacity(self.objects.len());
        for (i, name) in self.objects.iter().enumerate() {
            let Some(&m) = self.identities.get(&(i as u32)) else {
                return Err(BuildError::MissingIdentity {
                    object: name.clone(),
                });
            };
            let data = &self.morphisms[m as usize];
            if data.dom.0 != i as u32 || data.cod.0 != i as u32 {
                return Err(BuildError::BadIdentity {
                    object: name.clone(),
                    morphism: data.name.clone(),
                });
            }
            identities.push(MorId(m));
        }
        let n = self.morphisms.len();
        let mut table = vec![None; n * n];
        for ((f, g), h) in self.composites {
            table[f as usize * n + g as usize] = Some(MorId(h));
        }
        Ok(Category {
            objects: self.objects,
            morphisms: self.morphisms,
            identities,
            table,
        })
    }
}

/// Allocates display names for generated objects and morphisms, keeping
/// them unique even when user-supplied names already contain the
/// separators used by the constructions.
#[derive(Debug, Default)]
pub(crate) struct NameGen {
    used: BTreeSet<String>,
}

impl NameGen {
    pub fn claim(&mut self, candidate: String) -> String {
        if self.used.insert(candidate.clone()) {
            return candidate;
        }
        let mut k = 2usize;
        loop {
            let alt = format!("{candidate}~{k}");
            if self.used.insert(alt.clone()) {
                return alt;
            }
            k += 1;
        }
    }
}

/// A wide subcategory presented as a set of morphisms.
///
/// Wideness (all identities present) and closure under composition are
/// checked by [`WideSubcategory::validate`], not assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WideSubcategory {
    pub morphisms: BTreeSet<MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubcategoryViolation {
    MissingIdentity {
        object: String,
    },
    NotClosed {
        first: String,
        then: String,
        composite: String,
    },
}

impl fmt::Display for SubcategoryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubcategoryViolation::MissingIdentity { object } => {
                write!(f, "identity on {object} is missing from the subcategory")
            }
            SubcategoryViolation::NotClosed {
                first,
                then,
                composite,
            } => write!(
                f,
                "subcategory contains {first} and {then} but not their composite {composite}"
            ),
        }
    }
}

impl WideSubcategory {
    pub fn new(morphisms: impl IntoIterator<Item = MorId>) -> Self {
        WideSubcategory {
            morphisms: morphisms.into_iter().collect(),
        }
    }

    pub fn contains(&self, m: MorId) -> bool {
        self.morphisms.contains(&m)
    }

    pub fn validate(&self, cat: &Category) -> Vec<SubcategoryViolation> {
        let mut out = Vec::new();
        for o in cat.objects() {
            if !self.contains(cat.identity(o)) {
                out.push(SubcategoryViolation::MissingIdentity {
                    object: cat.object_name(o).into(),
                });
            }
        }
        for &f in &self.morphisms {
            for &g in &self.morphisms {
                if !cat.composable(f, g) {
                    continue;
                }
                if let Some(h) = cat.compose(f, g) {
                    if !self.contains(h) {
                        out.push(SubcategoryViolation::NotClosed {
                            first: cat.morphism_name(f).into(),
                            then: cat.morphism_name(g).into(),
                            composite: cat.morphism_name(h).into(),
                        });
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn interval_is_valid() {
        let c = presets::interval();
        assert_eq!(c.object_count(), 2);
        assert_eq!(c.morphism_count(), 3);
        assert!(c.validate().is_empty());
    }

    #[test]
    fn walking_idempotent_is_valid_and_nonfree() {
        let c = presets::walking_idempotent();
        let e = c.morphism_named("e").unwrap();
        assert_eq!(c.compose(e, e), Some(e));
        assert!(c.validate().is_empty());
    }

    #[test]
    fn cyclic_monoid_associativity() {
        let c = presets::cyclic_monoid(3);
        assert!(c.validate().is_empty());
        let g1 = c.morphism_named("g1").unwrap();
        let g2 = c.morphism_named("g2").unwrap();
        assert_eq!(c.compose(g1, g2), Some(c.identity(ObjId(0))));
    }

    #[test]
    fn missing_composite_is_witnessed() {
        let mut b = Category::builder();
        let a = b.add_object("a");
        let x = b.add_object("x");
        b.add_identity("id_a", a);
        b.add_identity("id_x", x);
        b.add_morphism("f", a, x);
        // No composites recorded at all: id∘id and f∘id etc. all missing.
        let c = b.finish().unwrap();
        let violations = c.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, CategoryViolation::CompositeUndefined { .. })));
    }

    #[test]
    fn broken_identity_is_witnessed() {
        let mut b = Category::builder();
        let a = b.add_object("a");
        b.add_identity("id_a", a);
        let e = b.add_morphism("e", a, a);
        let id = MorId(0);
        b.set_composite(id, id, id);
        // e ∘ id_a = id_a: breaks the left identity law.
        b.set_composite(id, e, id);
        b.set_composite(e, id, e);
        b.set_composite(e, e, e);
        let c = b.finish().unwrap();
        let violations = c.validate();
        assert!(violations.iter().any(|v| matches!(
            v,
            CategoryViolation::LeftIdentity { morphism, .. } if morphism == "e"
        )));
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut b = Category::builder();
        let a = b.add_object("a");
        b.add_object("a");
        b.add_identity("id_a", a);
        assert!(matches!(
            b.finish(),
            Err(BuildError::DuplicateObject { .. })
        ));
    }

    #[test]
    fn opposite_flips_composition() {
        let c = presets::interval();
        let op = c.opposite();
        assert!(op.validate().is_empty());
        let t = op.morphism_named("t").unwrap();
        assert_eq!(op.object_name(op.dom(t)), "1");
        assert_eq!(op.object_name(op.cod(t)), "0");
        assert_eq!(op.opposite(), c);
    }
}
