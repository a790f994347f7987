//! Finite category theory toolkit centred on delta lenses.
//!
//! A delta lens from `A` to `B` is a functor `f : A → B` together with a
//! lifting operation sending each pair `(a, u : f(a) → b)` to a morphism of
//! `A` out of `a`, compatibly with identities and composition. This crate
//! represents categories, functors, lenses and copresheaves as finite
//! tables and checks every law exhaustively, reporting counterexample
//! witnesses rather than booleans.
//!
//! Beyond the validators it implements the structure theory that makes
//! delta lenses pleasant to compute with:
//!
//! - the category of elements of a copresheaf and the equivalence between
//!   copresheaves and discrete opfibrations ([`copresheaf`]);
//! - opcartesian-lift checking, classifying functors as discrete
//!   (op)fibrations or split opfibrations ([`opfibration`]);
//! - the décalage construction and its comonad structure ([`decalage`]);
//! - the cofree-lens comonad on `Cat/B` whose coalgebras are exactly the
//!   delta lenses into `B` ([`comonad`]), and the dual comma monad whose
//!   algebras are exactly the split opfibrations ([`monad`]);
//! - the strict factorisation system (chosen lifts, verticals) that
//!   characterises split opfibrations among lenses ([`factorisation`]);
//! - pullback of lenses along functors and span composition ([`span`]).

pub mod category;
pub mod comonad;
pub mod copresheaf;
pub mod decalage;
pub mod error;
pub mod factorisation;
pub mod functor;
pub mod graph;
pub mod io;
pub mod lens;
pub mod monad;
pub mod opfibration;
pub mod presets;
pub mod span;

pub use category::{Category, CategoryViolation, MorId, ObjId, WideSubcategory};
pub use error::BuildError;
pub use functor::{Functor, FunctorViolation};
pub use lens::{Lens, LensViolation};
