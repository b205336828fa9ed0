use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, FiniteGroupoid, UnitId};
use crate::scalar::{complex_close, modulus, Real};

/// Absolute tolerance used by [`Kernel::approx_eq`] when none is given.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// A finitely supported function on the arrows of a groupoid. Only nonzero
/// values are stored.
#[derive(Debug, Clone)]
pub struct Kernel<T: Real> {
    parent: Arc<FiniteGroupoid<T>>,
    values: BTreeMap<ArrowId, Complex<T>>,
}

/// A function on the units of a groupoid (an element of `C(X)`).
#[derive(Debug, Clone)]
pub struct UnitFunction<T: Real> {
    parent: Arc<FiniteGroupoid<T>>,
    values: Vec<Complex<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `(ψ∘r) f`
    Left,
    /// `(ψ∘d) f`
    Right,
}

fn check_parent<T: Real>(a: &Arc<FiniteGroupoid<T>>, b: &Arc<FiniteGroupoid<T>>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.same_as(b) {
        Ok(())
    } else {
        Err(Error::ParentMismatch)
    }
}

impl<T: Real> Kernel<T> {
    pub fn zero(parent: Arc<FiniteGroupoid<T>>) -> Self {
        Kernel { parent, values: BTreeMap::new() }
    }

    /// `δ_ξ`
    pub fn delta(parent: Arc<FiniteGroupoid<T>>, a: ArrowId) -> Self {
        let mut k = Kernel::zero(parent);
        k.set(a, Complex::new(T::one(), T::zero()));
        k
    }

    pub fn from_values(
        parent: Arc<FiniteGroupoid<T>>,
        values: impl IntoIterator<Item = (ArrowId, Complex<T>)>,
    ) -> Self {
        let mut k = Kernel::zero(parent);
        for (a, v) in values {
            k.set(a, v);
        }
        k
    }

    /// Builds a kernel by evaluating `f` on every arrow.
    pub fn from_fn(parent: Arc<FiniteGroupoid<T>>, mut f: impl FnMut(ArrowId) -> Complex<T>) -> Self {
        let ids: Vec<ArrowId> = parent.arrow_ids().collect();
        let mut k = Kernel::zero(parent);
        for a in ids {
            let v = f(a);
            k.set(a, v);
        }
        k
    }

    /// The unit of the algebra: `1/λ^x(x)` at every unit arrow, which is
    /// the sum of the unit deltas for counting weights.
    pub fn identity(parent: Arc<FiniteGroupoid<T>>) -> Self {
        let units: Vec<(ArrowId, Complex<T>)> = parent
            .units()
            .filter_map(|x| parent.unit_arrow(x))
            .map(|a| (a, Complex::new(T::one() / parent.left_weight(a).clone(), T::zero())))
            .collect();
        Kernel::from_values(parent, units)
    }

    pub fn parent(&self) -> &Arc<FiniteGroupoid<T>> {
        &self.parent
    }

    pub fn get(&self, a: ArrowId) -> Complex<T> {
        self.values.get(&a).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn set(&mut self, a: ArrowId, v: Complex<T>) {
        assert!(a.0 < self.parent.arrow_count(), "arrow {a:?} is not in the parent groupoid");
        if v.is_zero() {
            self.values.remove(&a);
        } else {
            self.values.insert(a, v);
        }
    }

    pub fn support(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.values.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ArrowId, &Complex<T>)> + '_ {
        self.values.iter().map(|(&a, v)| (a, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &Kernel<T>) -> Result<Kernel<T>> {
        check_parent(&self.parent, &other.parent)?;
        let mut out = self.clone();
        for (a, v) in other.iter() {
            let s = out.get(a) + v.clone();
            out.set(a, s);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Complex<T>) -> Kernel<T> {
        Kernel::from_values(self.parent.clone(), self.iter().map(|(a, v)| (a, v.clone() * c.clone())))
    }

    /// `(f⋆g)(ξ) = Σ_{η ∈ Ξ^{r(ξ)}} f(η) g(η⁻¹ξ) λ^{r(ξ)}(η)`.
    ///
    /// Evaluated as a sum over stored products `ξ = ηζ` with `η ∈ supp f`,
    /// `ζ ∈ supp g`.
    pub fn convolve(&self, other: &Kernel<T>) -> Result<Kernel<T>> {
        check_parent(&self.parent, &other.parent)?;
        let g = &*self.parent;
        let mut acc: BTreeMap<ArrowId, Complex<T>> = BTreeMap::new();
        for (eta, fv) in self.iter() {
            let w = g.left_weight(eta).clone();
            for &zeta in g.range_fiber(g.source(eta)) {
                let Some(gv) = other.values.get(&zeta) else { continue };
                let Some(xi) = g.compose(eta, zeta) else { continue };
                let term = (fv.clone() * gv.clone()).scale(w.clone());
                let slot = acc.entry(xi).or_insert_with(Complex::zero);
                *slot = slot.clone() + term;
            }
        }
        Ok(Kernel::from_values(self.parent.clone(), acc))
    }

    /// `f*(ξ) = conj f(ξ⁻¹)`.
    pub fn involute(&self) -> Kernel<T> {
        let g = self.parent.clone();
        let vals: Vec<_> = self.iter().map(|(a, v)| (g.inverse(a), v.conj())).collect();
        Kernel::from_values(g, vals)
    }

    pub fn approx_eq(&self, other: &Kernel<T>, tol: f64) -> bool {
        if check_parent(&self.parent, &other.parent).is_err() {
            return false;
        }
        let zero = Complex::zero();
        self.support()
            .chain(other.support())
            .all(|a| complex_close(self.values.get(&a).unwrap_or(&zero), other.values.get(&a).unwrap_or(&zero), tol))
    }

    pub fn sup_abs(&self) -> f64 {
        self.iter().map(|(_, v)| modulus(v)).fold(0.0, f64::max)
    }
}

/// `max{ sup_x Σ_{Ξ_x} |f| dλ_x , sup_x Σ_{Ξ_x} |f∘inv| dλ_x }`.
pub fn hahn_norm<T: Real>(f: &Kernel<T>) -> f64 {
    let g = &**f.parent();
    let fiber_sum = |x: UnitId, flip: bool| -> f64 {
        g.source_fiber(x)
            .iter()
            .map(|&a| {
                let at = if flip { g.inverse(a) } else { a };
                modulus(&f.get(at)) * g.weight(a).lossy_f64()
            })
            .sum()
    };
    g.units().map(|x| fiber_sum(x, false).max(fiber_sum(x, true))).fold(0.0, f64::max)
}

/// The action of `C(X)` on kernels by double centralizers.
pub fn cx_action<T: Real>(psi: &UnitFunction<T>, f: &Kernel<T>, side: Side) -> Result<Kernel<T>> {
    check_parent(&psi.parent, &f.parent)?;
    let g = f.parent.clone();
    let vals: Vec<_> = f
        .iter()
        .map(|(a, v)| {
            let x = match side {
                Side::Left => g.range(a),
                Side::Right => g.source(a),
            };
            (a, psi.values[x.0].clone() * v.clone())
        })
        .collect();
    Ok(Kernel::from_values(g, vals))
}

impl<T: Real> UnitFunction<T> {
    pub fn constant(parent: Arc<FiniteGroupoid<T>>, c: Complex<T>) -> Self {
        let values = vec![c; parent.unit_count()];
        UnitFunction { parent, values }
    }

    pub fn from_fn(parent: Arc<FiniteGroupoid<T>>, f: impl FnMut(UnitId) -> Complex<T>) -> Self {
        let values = parent.units().map(f).collect();
        UnitFunction { parent, values }
    }

    pub fn from_values(parent: Arc<FiniteGroupoid<T>>, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != parent.unit_count() {
            return Err(Error::Structure(format!(
                "unit function has {} values for {} units",
                values.len(),
                parent.unit_count()
            )));
        }
        Ok(UnitFunction { parent, values })
    }

    /// Indicator of a unit set.
    pub fn indicator(parent: Arc<FiniteGroupoid<T>>, set: &crate::groupoid::UnitSet) -> Self {
        UnitFunction::from_fn(parent, |x| {
            if set.contains(&x) {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::zero()
            }
        })
    }

    pub fn parent(&self) -> &Arc<FiniteGroupoid<T>> {
        &self.parent
    }

    pub fn get(&self, x: UnitId) -> &Complex<T> {
        &self.values[x.0]
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }
}
