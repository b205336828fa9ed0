use std::sync::Arc;

use super::Kernel;
use crate::error::{Error, Result};
use crate::groupoid::{reduce, ArrowId, FiniteGroupoid, UnitSet};
use crate::scalar::Real;

/// The reduction `Ξ_A` of a groupoid together with the arrow embedding, so
/// that restriction (`ρ_A`) and extension by zero (`ι_A`) can move kernels
/// between the two algebras.
#[derive(Debug, Clone)]
pub struct Reduction<T: Real> {
    parent: Arc<FiniteGroupoid<T>>,
    reduced: Arc<FiniteGroupoid<T>>,
    into_reduced: Vec<Option<ArrowId>>,
    into_parent: Vec<ArrowId>,
}

impl<T: Real> Reduction<T> {
    pub fn new(parent: Arc<FiniteGroupoid<T>>, set: &UnitSet) -> Result<Self> {
        let reduced = Arc::new(reduce(&parent, set)?);
        let into_parent: Vec<ArrowId> = reduced
            .arrow_ids()
            .map(|a| parent.arrow_id(&reduced.arrow(a).label).expect("reduction keeps labels"))
            .collect();
        let mut into_reduced = vec![None; parent.arrow_count()];
        for (i, p) in into_parent.iter().enumerate() {
            into_reduced[p.0] = Some(ArrowId(i));
        }
        Ok(Reduction { parent, reduced, into_reduced, into_parent })
    }

    pub fn parent(&self) -> &Arc<FiniteGroupoid<T>> {
        &self.parent
    }

    pub fn reduced(&self) -> &Arc<FiniteGroupoid<T>> {
        &self.reduced
    }

    /// `ρ_A(f) = f|_{Ξ_A}`.
    pub fn restrict(&self, f: &Kernel<T>) -> Result<Kernel<T>> {
        if !self.parent.same_as(f.parent()) {
            return Err(Error::ParentMismatch);
        }
        let vals: Vec<_> = f.iter().filter_map(|(a, v)| self.into_reduced[a.0].map(|b| (b, v.clone()))).collect();
        Ok(Kernel::from_values(self.reduced.clone(), vals))
    }

    /// Extension by zero from `Ξ_A` back to the parent.
    pub fn extend(&self, f: &Kernel<T>) -> Result<Kernel<T>> {
        if !self.reduced.same_as(f.parent()) {
            return Err(Error::ParentMismatch);
        }
        let vals: Vec<_> = f.iter().map(|(a, v)| (self.into_parent[a.0], v.clone())).collect();
        Ok(Kernel::from_values(self.parent.clone(), vals))
    }
}

/// Restricts `f` to the reduction over the invariant set `set`.
pub fn restrict<T: Real>(f: &Kernel<T>, set: &UnitSet) -> Result<Kernel<T>> {
    Reduction::new(f.parent().clone(), set)?.restrict(f)
}
