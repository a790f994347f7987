//! Strict factorisation systems and the splitting test for lenses.
//!
//! A strict factorisation system on a category is a pair of wide
//! subcategories `(E, M)` such that every morphism factors **uniquely** as
//! an `E`-morphism followed by an `M`-morphism. For a delta lens the
//! relevant pair is (chosen lifts, vertical morphisms): the lens is a
//! split opfibration exactly when this pair is a strict factorisation
//! system, which gives an independent route to the opcartesian check in
//! [`crate::opfibration`].

use serde::Serialize;
use std::fmt;

use crate::category::{Category, WideSubcategory};
use crate::lens::Lens;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorisationViolation {
    NoFactorisation {
        morphism: String,
    },
    MultipleFactorisations {
        morphism: String,
        first_e: String,
        first_m: String,
        second_e: String,
        second_m: String,
    },
}

impl fmt::Display for FactorisationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorisationViolation::NoFactorisation { morphism } => {
                write!(f, "{morphism} admits no (E, M) factorisation")
            }
            FactorisationViolation::MultipleFactorisations {
                morphism,
                first_e,
                first_m,
                second_e,
                second_m,
            } => write!(
                f,
                "{morphism} factors both as {first_e};{first_m} and as {second_e};{second_m}"
            ),
        }
    }
}

/// Check unique `(E, M)`-factorisation of every morphism. Wideness and
/// closure of the two classes are checked separately by
/// [`WideSubcategory::validate`].
pub fn strict_factorisation_report(
    cat: &Category,
    e_class: &WideSubcategory,
    m_class: &WideSubcategory,
) -> Vec<FactorisationViolation> {
    let mut out = Vec::new();
    for w in cat.morphisms() {
        let mut found: Option<(crate::category::MorId, crate::category::MorId)> = None;
        let mut reported = false;
        for &e in &e_class.morphisms {
            if cat.dom(e) != cat.dom(w) {
                continue;
            }
            for &m in &m_class.morphisms {
                if cat.dom(m) != cat.cod(e) || cat.cod(m) != cat.cod(w) {
                    continue;
                }
                if cat.compose(e, m) != Some(w) {
                    continue;
                }
                match found {
                    None => found = Some((e, m)),
                    Some((e0, m0)) => {
                        if !reported {
                            out.push(FactorisationViolation::MultipleFactorisations {
                                morphism: cat.morphism_name(w).into(),
                                first_e: cat.morphism_name(e0).into(),
                                first_m: cat.morphism_name(m0).into(),
                                second_e: cat.morphism_name(e).into(),
                                second_m: cat.morphism_name(m).into(),
                            });
                            reported = true;
                        }
                    }
                }
            }
        }
        if found.is_none() {
            out.push(FactorisationViolation::NoFactorisation {
                morphism: cat.morphism_name(w).into(),
            });
        }
    }
    out
}

/// The vertical morphisms of a lens: those projecting to an identity.
pub fn vertical_subcategory(lens: &Lens) -> WideSubcategory {
    let a_cat = lens.source();
    WideSubcategory::new(
        a_cat
            .morphisms()
            .filter(|&m| lens.target().is_identity(lens.functor().on_morphism(m))),
    )
}

/// Unique-factorisation check for (chosen lifts, verticals) of a lens.
///
/// Empty exactly when the lens is a split opfibration.
pub fn splitting_factorisation_report(lens: &Lens) -> Vec<FactorisationViolation> {
    strict_factorisation_report(
        lens.source(),
        &lens.lifting_subcategory(),
        &vertical_subcategory(lens),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opfibration::split_opfibration_report;
    use crate::presets;

    #[test]
    fn projection_lens_factorises_strictly() {
        let lens = presets::projection_lens();
        let lifts = lens.lifting_subcategory();
        let verts = vertical_subcategory(&lens);
        assert!(lifts.validate(lens.source()).is_empty());
        assert!(verts.validate(lens.source()).is_empty());
        assert!(splitting_factorisation_report(&lens).is_empty());
        assert!(split_opfibration_report(&lens).is_empty());
    }

    #[test]
    fn non_split_lens_has_unfactorable_morphism() {
        let lens = presets::non_split_lens();
        let report = splitting_factorisation_report(&lens);
        assert!(report.iter().any(
            |v| matches!(v, FactorisationViolation::NoFactorisation { morphism } if morphism == "w")
        ));
        assert!(!split_opfibration_report(&lens).is_empty());
    }

    #[test]
    fn identity_lens_factorisation_is_trivial() {
        let lens = crate::lens::Lens::identity(presets::cyclic_monoid(2));
        // Everything is a chosen lift and only identities are vertical.
        assert!(splitting_factorisation_report(&lens).is_empty());
    }
}
