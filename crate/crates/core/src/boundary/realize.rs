use std::sync::Arc;

use num_complex::Complex;

use super::group_kernel::{element_label, finite_group};
use super::{BandKernel, BoundaryKernel, CompactificationModel, FiberGroup};
use crate::algebra::{restrict, Kernel};
use crate::error::{Error, Result};
use crate::groupoid::{group_fiber, lattice_ball, lattice_ball_fiber, pair_arrows, ArrowId, FiniteGroupoid, GroupoidBuilder, UnitId, UnitSet};
use crate::repr::VectorRepresentation;
use crate::scalar::Real;

/// The truncated translation groupoid of a compactification: the pair
/// groupoid on the window, plus the isotropy group of every boundary
/// point. Lattice isotropy is realized on the ball of radius `L` and
/// flagged as truncated. Counting Haar system throughout.
#[derive(Debug, Clone)]
pub struct Compactified<T: Real> {
    groupoid: Arc<FiniteGroupoid<T>>,
    model: CompactificationModel,
    elements: Vec<Vec<(Vec<i64>, ArrowId)>>,
}

pub fn build_compactified_groupoid<T: Real>(cm: &CompactificationModel) -> Result<Compactified<T>> {
    let mut b = GroupoidBuilder::new();
    let labels: Vec<String> = cm.interior().map(|m| m.to_string()).collect();
    pair_arrows(&mut b, &labels);
    let mut coords = Vec::new();
    for n in cm.boundary() {
        b.unit(n.label.clone());
        let elems = match &n.group {
            FiberGroup::Lattice(d) => {
                lattice_ball_fiber(&mut b, &n.label, *d, cm.radius());
                b.truncated(n.label.clone());
                lattice_ball(*d, cm.radius() as i64)
            }
            group => {
                let (g, elems) = finite_group(group).expect("finite isotropy");
                group_fiber(&mut b, &n.label, &g);
                elems
            }
        };
        coords.push(elems);
    }
    let groupoid = Arc::new(b.build().map_err(|e| Error::BadModel(e.to_string()))?);
    let elements = cm
        .boundary()
        .iter()
        .zip(coords)
        .map(|(n, elems)| {
            elems
                .into_iter()
                .map(|e| {
                    let a = groupoid.arrow_id(&format!("{}:{}", n.label, element_label(&n.group, &e))).expect("isotropy arrow");
                    (e, a)
                })
                .collect()
        })
        .collect();
    Ok(Compactified { groupoid, model: cm.clone(), elements })
}

impl<T: Real> Compactified<T> {
    pub fn groupoid(&self) -> &Arc<FiniteGroupoid<T>> {
        &self.groupoid
    }

    pub fn model(&self) -> &CompactificationModel {
        &self.model
    }

    pub fn interior_unit(&self, m: i64) -> Option<UnitId> {
        self.groupoid.unit_id(&m.to_string())
    }

    pub fn boundary_unit(&self, n: usize) -> UnitId {
        self.groupoid.unit_id(&self.model.boundary()[n].label).expect("boundary unit")
    }

    pub fn interior_set(&self) -> UnitSet {
        self.model.interior().filter_map(|m| self.interior_unit(m)).collect()
    }

    /// Isotropy arrows of the `n`-th boundary point with their group
    /// coordinates.
    pub fn boundary_elements(&self, n: usize) -> &[(Vec<i64>, ArrowId)] {
        &self.elements[n]
    }

    /// `Π_0` on the interior, in the window order.
    pub fn vector_representation(&self) -> Result<VectorRepresentation<T>> {
        VectorRepresentation::new(self.groupoid.clone(), "0")
    }

    /// The groupoid kernel of a band kernel: `a_{m−m'}(m)` on the arrow
    /// `m' → m` and `a_k(n)` on the isotropy element `k` at `n`.
    pub fn band_kernel(&self, bk: &BandKernel) -> Result<Kernel<T>> {
        bk.check_model(&self.model)?;
        let conv = |z: crate::C64| -> Result<Complex<T>> {
            let part = |x: f64| T::from_f64(x).ok_or_else(|| Error::Numerical(format!("{x} is not representable")));
            Ok(Complex::new(part(z.re)?, part(z.im)?))
        };
        let b = bk.bandwidth() as i64;
        let mut f = Kernel::zero(self.groupoid.clone());
        for m in self.model.interior() {
            for mp in self.model.interior() {
                if (m - mp).abs() <= b {
                    let a = self.groupoid.arrow_id(&format!("({m},{mp})")).expect("pair arrow");
                    f.set(a, conv(bk.coefficient(m - mp, m))?);
                }
            }
        }
        for (n, bp) in self.model.boundary().iter().enumerate() {
            for (e, a) in &self.elements[n] {
                if e[0].abs() <= b {
                    f.set(*a, conv(bk.limit(&bp.label, e[0])?)?);
                }
            }
        }
        Ok(f)
    }

    /// `F|_{Σ_n}` computed by reducing the groupoid to `{n}`.
    pub fn restricted_boundary_kernel(&self, f: &Kernel<T>, n: usize) -> Result<BoundaryKernel> {
        let bp = &self.model.boundary()[n];
        let set: UnitSet = [self.boundary_unit(n)].into_iter().collect();
        let r = restrict(f, &set)?;
        let reduced = r.parent();
        let coefficients = self.elements[n]
            .iter()
            .map(|(e, a)| {
                let id = reduced.arrow_id(&self.groupoid.arrow(*a).label).expect("label kept by reduction");
                let v = r.get(id);
                (e.clone(), crate::C64::new(v.re.lossy_f64(), v.im.lossy_f64()))
            })
            .collect();
        BoundaryKernel::new(&bp.label, bp.group.clone(), coefficients)
    }
}
