//! Fibrations given by a functor between finite categories.

use std::sync::Arc;

use crate::category::Universe;
use crate::fincat::{FinCategory, FinFunctor, MorId, ObjId};

use super::{FiberedFunctor, Fibration};

#[derive(Clone, Debug)]
pub struct FunctorFibration {
    functor: FinFunctor,
}

impl FunctorFibration {
    pub fn new(functor: FinFunctor) -> Self {
        FunctorFibration { functor }
    }

    pub fn functor(&self) -> &FinFunctor {
        &self.functor
    }
}

/// `id: C → C`.
pub fn identity_fibration(c: FinCategory) -> FunctorFibration {
    FunctorFibration::new(FinFunctor::identity(Arc::new(c)))
}

impl Fibration for FunctorFibration {
    type Base = FinCategory;
    type Total = FinCategory;

    fn name(&self) -> String {
        format!(
            "{} → {}",
            self.functor.source().name(),
            self.functor.target().name()
        )
    }

    fn base(&self) -> &FinCategory {
        self.functor.target()
    }

    fn total(&self) -> &FinCategory {
        self.functor.source()
    }

    fn project_obj(&self, x: &ObjId) -> ObjId {
        self.functor.map_obj(*x)
    }

    fn project_mor(&self, m: &MorId) -> MorId {
        self.functor.map_mor(*m)
    }

    fn objects_over(&self, i: &ObjId, _bound: usize) -> Universe<ObjId> {
        Universe::complete(
            self.total()
                .objects()
                .filter(|x| self.functor.map_obj(*x) == *i)
                .collect(),
        )
    }
}

/// `X ↦ id_{PX}`, `f ↦ Pf`: the projection itself viewed as a fibered
/// functor into the codomain fibration. Faithful exactly when `P` is.
#[derive(Clone, Debug)]
pub struct ProjectionLegs {
    functor: FinFunctor,
}

impl ProjectionLegs {
    pub fn of(p: &FunctorFibration) -> Self {
        ProjectionLegs {
            functor: p.functor.clone(),
        }
    }
}

impl FiberedFunctor<FunctorFibration> for ProjectionLegs {
    fn on_object(&self, x: &ObjId) -> MorId {
        self.functor.target().identity(self.functor.map_obj(*x))
    }

    fn on_morphism(&self, f: &MorId) -> MorId {
        self.functor.map_mor(*f)
    }
}
