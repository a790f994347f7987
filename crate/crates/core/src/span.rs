//! Spans of lenses and their composition by pullback.
//!
//! Pulling a lens `f : A → B` back along any functor `g : C → B` puts a
//! canonical lens structure on the projection `A ×_B C → C`: lift a
//! morphism of `C` by pairing it with the `f`-lift of its image. Spans
//! whose legs are both lenses compose by forming the pullback over the
//! middle category and transferring each leg's structure across it.

use std::collections::BTreeMap;

use crate::category::{MorId, ObjId};
use crate::error::BuildError;
use crate::functor::{pullback, Functor, Pullback};
use crate::lens::Lens;

/// A pullback whose `to_right` projection carries the transferred lens.
pub struct PullbackLens {
    pub pullback: Pullback,
    pub lens: Lens,
}

/// Pull `lens : A → B` back along `g : C → B`; the projection to `C`
/// becomes a lens.
pub fn pullback_lens(lens: &Lens, g: &Functor) -> Result<PullbackLens, BuildError> {
    let pb = pullback(lens.functor(), g)?;
    let transferred = transfer_right(&pb, lens, g)?;
    Ok(PullbackLens {
        pullback: pb,
        lens: transferred,
    })
}

fn transfer_right(pb: &Pullback, lens: &Lens, g: &Functor) -> Result<Lens, BuildError> {
    let p_cat = pb.category.clone();
    let c_cat = g.source().clone();
    let mut lifts: BTreeMap<(ObjId, MorId), MorId> = BTreeMap::new();
    for po in p_cat.objects() {
        let a = pb.to_left.on_object(po);
        for u in c_cat.morphisms_from(pb.to_right.on_object(po)) {
            let a_lift = lens.lift(a, g.on_morphism(u)).ok_or_else(|| {
                BuildError::Invalid(format!(
                    "lens has no lift of {} at {}",
                    lens.target().morphism_name(g.on_morphism(u)),
                    lens.source().object_name(a)
                ))
            })?;
            let lifted = p_cat
                .morphisms_from(po)
                .find(|&q| pb.to_left.on_morphism(q) == a_lift && pb.to_right.on_morphism(q) == u)
                .ok_or_else(|| {
                    BuildError::Invalid("pullback is missing a compatible pair".into())
                })?;
            lifts.insert((po, u), lifted);
        }
    }
    Lens::new(pb.to_right.clone(), lifts)
}

fn transfer_left(pb: &Pullback, lens: &Lens, f: &Functor) -> Result<Lens, BuildError> {
    let p_cat = pb.category.clone();
    let s_cat = f.source().clone();
    let mut lifts: BTreeMap<(ObjId, MorId), MorId> = BTreeMap::new();
    for po in p_cat.objects() {
        let t = pb.to_right.on_object(po);
        for u in s_cat.morphisms_from(pb.to_left.on_object(po)) {
            let t_lift = lens.lift(t, f.on_morphism(u)).ok_or_else(|| {
                BuildError::Invalid(format!(
                    "lens has no lift of {} at {}",
                    lens.target().morphism_name(f.on_morphism(u)),
                    lens.source().object_name(t)
                ))
            })?;
            let lifted = p_cat
                .morphisms_from(po)
                .find(|&q| pb.to_right.on_morphism(q) == t_lift && pb.to_left.on_morphism(q) == u)
                .ok_or_else(|| {
                    BuildError::Invalid("pullback is missing a compatible pair".into())
                })?;
            lifts.insert((po, u), lifted);
        }
    }
    Lens::new(pb.to_left.clone(), lifts)
}

/// A span of lenses `A ⇇ S ⇉ B` (a symmetric lens presentation).
#[derive(Debug, Clone)]
pub struct LensSpan {
    pub left: Lens,
    pub right: Lens,
}

impl LensSpan {
    pub fn new(left: Lens, right: Lens) -> Result<LensSpan, BuildError> {
        if left.source() != right.source() {
            return Err(BuildError::Mismatch {
                context: "lens span".into(),
                expected: "legs sharing their apex category".into(),
                found: "different apexes".into(),
            });
        }
        Ok(LensSpan { left, right })
    }

    pub fn apex(&self) -> &crate::category::Category {
        self.left.source()
    }
}

/// Compose `A ⇇ S ⇉ B` with `B ⇇ T ⇉ C` over the shared middle `B` by
/// pulling back and pasting the transferred lenses onto the outer legs.
pub fn compose_spans(first: &LensSpan, second: &LensSpan) -> Result<LensSpan, BuildError> {
    if first.right.target() != second.left.target() {
        return Err(BuildError::Mismatch {
            context: "span composition".into(),
            expected: "spans meeting in a common middle category".into(),
            found: "different middles".into(),
        });
    }
    let pb = pullback(first.right.functor(), second.left.functor())?;
    // S ×_B T → S lifts via the lens on T → B; symmetrically for the right.
    let to_s = transfer_left(&pb, &second.left, first.right.functor())?;
    let to_t = transfer_right(&pb, &first.right, second.left.functor())?;
    let left = to_s.then(&first.left)?;
    let right = to_t.then(&second.right)?;
    LensSpan::new(left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn pullback_of_lens_is_a_lens() {
        let lens = presets::non_split_lens();
        // Pull back along the projection lens' functor into the interval.
        let g = presets::projection_lens().functor().clone();
        let pl = pullback_lens(&lens, &g).unwrap();
        assert!(pl.pullback.category.validate().is_empty());
        assert!(pl.lens.validate().is_empty());
    }

    #[test]
    fn identity_span_composition() {
        let b = presets::interval();
        let idl = Lens::identity(b.clone());
        let span = LensSpan::new(idl.clone(), idl.clone()).unwrap();
        let composite = compose_spans(&span, &span).unwrap();
        assert!(composite.left.validate().is_empty());
        assert!(composite.right.validate().is_empty());
        assert_eq!(composite.apex().object_count(), b.object_count());
    }

    #[test]
    fn span_composition_with_elements_legs() {
        let el = crate::copresheaf::elements(&presets::sample_copresheaf()).unwrap();
        let span1 = LensSpan::new(el.lens.clone(), el.lens.clone()).unwrap();
        let span2 = LensSpan::new(el.lens.clone(), Lens::identity(el.category.clone())).unwrap();
        let composite = compose_spans(&span1, &span2).unwrap();
        assert!(composite.left.validate().is_empty());
        assert!(composite.right.validate().is_empty());
    }
}
