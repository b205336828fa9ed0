//! Finite groupoids with a right Haar system.
//!
//! Arrows and units are stored in insertion order and addressed by dense
//! indices. Composition is a stored table rather than a formula, so arbitrary
//! hand-built structures (including broken ones) can be represented; the
//! axioms are checked separately by [`validate`].
//!
//! Topological conditions (Hausdorff, second countable, amenable) hold
//! vacuously for finite discrete groupoids and are not modelled.

mod builders;
mod io;
mod orbits;
mod reduce;
mod validate;

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use builders::{build_group_bundle, build_pair_groupoid, lattice_ball, pair_groupoid_on, FiberSpec, FiniteGroup};
pub(crate) use builders::{group_fiber, lattice_ball_fiber, pair_arrows};
pub use io::{parse_groupoid, write_groupoid};
pub use orbits::{orbit_decomposition, orbits, OrbitDecomposition};
pub use reduce::reduce;
pub use validate::{validate, Axiom, ValidationReport, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

pub type UnitSet = BTreeSet<UnitId>;

#[derive(Debug, Clone, PartialEq)]
pub struct Arrow<T> {
    pub label: String,
    pub source: UnitId,
    pub range: UnitId,
    pub inverse: ArrowId,
    /// Right Haar weight `λ_{d(ξ)}(ξ)`.
    pub weight: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroupoid<T> {
    units: Vec<String>,
    unit_index: HashMap<String, UnitId>,
    arrows: Vec<Arrow<T>>,
    arrow_index: HashMap<String, ArrowId>,
    compose: HashMap<(ArrowId, ArrowId), ArrowId>,
    truncated: UnitSet,
    source_fibers: Vec<Vec<ArrowId>>,
    range_fibers: Vec<Vec<ArrowId>>,
}

impl<T: Real> FiniteGroupoid<T> {
    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn units(&self) -> impl ExactSizeIterator<Item = UnitId> + '_ {
        (0..self.units.len()).map(UnitId)
    }

    pub fn arrow_ids(&self) -> impl ExactSizeIterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn unit_label(&self, x: UnitId) -> &str {
        &self.units[x.0]
    }

    pub fn unit_id(&self, label: &str) -> Option<UnitId> {
        self.unit_index.get(label).copied()
    }

    /// Resolves a list of unit labels into a unit set.
    pub fn unit_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<UnitSet> {
        labels
            .iter()
            .map(|l| {
                self.unit_id(l.as_ref())
                    .ok_or_else(|| Error::UnknownUnit(l.as_ref().to_string()))
            })
            .collect()
    }

    pub fn all_units(&self) -> UnitSet {
        self.units().collect()
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow<T> {
        &self.arrows[a.0]
    }

    pub fn arrow_id(&self, label: &str) -> Option<ArrowId> {
        self.arrow_index.get(label).copied()
    }

    pub fn source(&self, a: ArrowId) -> UnitId {
        self.arrows[a.0].source
    }

    pub fn range(&self, a: ArrowId) -> UnitId {
        self.arrows[a.0].range
    }

    pub fn inverse(&self, a: ArrowId) -> ArrowId {
        self.arrows[a.0].inverse
    }

    pub fn weight(&self, a: ArrowId) -> &T {
        &self.arrows[a.0].weight
    }

    /// Left Haar weight `λ^{r(ξ)}(ξ) = λ_{d(ξ⁻¹)}(ξ⁻¹)`.
    pub fn left_weight(&self, a: ArrowId) -> &T {
        self.weight(self.inverse(a))
    }

    pub fn compose(&self, left: ArrowId, right: ArrowId) -> Option<ArrowId> {
        self.compose.get(&(left, right)).copied()
    }

    /// Composition table sorted by `(left, right)`.
    pub fn composition_table(&self) -> Vec<(ArrowId, ArrowId, ArrowId)> {
        let mut t: Vec<_> = self.compose.iter().map(|(&(a, b), &c)| (a, b, c)).collect();
        t.sort_unstable();
        t
    }

    /// The fiber `Ξ_x = d⁻¹(x)`, in arrow order.
    pub fn source_fiber(&self, x: UnitId) -> &[ArrowId] {
        &self.source_fibers[x.0]
    }

    /// The fiber `Ξ^x = r⁻¹(x)`, in arrow order.
    pub fn range_fiber(&self, x: UnitId) -> &[ArrowId] {
        &self.range_fibers[x.0]
    }

    /// The isotropy group `Ξ_x^x`.
    pub fn isotropy(&self, x: UnitId) -> Vec<ArrowId> {
        self.source_fiber(x)
            .iter()
            .copied()
            .filter(|&a| self.range(a) == x)
            .collect()
    }

    /// The identity arrow at `x`: the idempotent loop at `x`.
    pub fn unit_arrow(&self, x: UnitId) -> Option<ArrowId> {
        self.source_fiber(x)
            .iter()
            .copied()
            .find(|&a| self.range(a) == x && self.compose(a, a) == Some(a))
    }

    /// Units whose isotropy is a declared truncation of a lattice; closure of
    /// composition is not expected there.
    pub fn truncated_units(&self) -> &UnitSet {
        &self.truncated
    }

    pub fn is_truncated(&self, x: UnitId) -> bool {
        self.truncated.contains(&x)
    }

    pub(crate) fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

/// Label-based constructor. Only referential integrity is enforced here;
/// groupoid axioms are reported by [`validate`].
#[derive(Debug, Clone)]
pub struct GroupoidBuilder<T> {
    units: Vec<String>,
    arrows: Vec<(String, String, String, String, T)>,
    compose: Vec<(String, String, String)>,
    truncated: Vec<String>,
}

impl<T: Real> Default for GroupoidBuilder<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> GroupoidBuilder<T> {
    pub fn new() -> Self {
        GroupoidBuilder { units: Vec::new(), arrows: Vec::new(), compose: Vec::new(), truncated: Vec::new() }
    }

    pub fn unit(&mut self, label: impl Into<String>) -> &mut Self {
        self.units.push(label.into());
        self
    }

    pub fn arrow(
        &mut self,
        label: impl Into<String>,
        source: impl Into<String>,
        range: impl Into<String>,
        inverse: impl Into<String>,
        weight: T,
    ) -> &mut Self {
        self.arrows.push((label.into(), source.into(), range.into(), inverse.into(), weight));
        self
    }

    pub fn compose(
        &mut self,
        left: impl Into<String>,
        right: impl Into<String>,
        result: impl Into<String>,
    ) -> &mut Self {
        self.compose.push((left.into(), right.into(), result.into()));
        self
    }

    pub fn truncated(&mut self, unit: impl Into<String>) -> &mut Self {
        self.truncated.push(unit.into());
        self
    }

    pub fn build(self) -> Result<FiniteGroupoid<T>> {
        let mut unit_index = HashMap::with_capacity(self.units.len());
        for (i, u) in self.units.iter().enumerate() {
            check_label(u)?;
            if unit_index.insert(u.clone(), UnitId(i)).is_some() {
                return Err(Error::Structure(format!("duplicate unit {u}")));
            }
        }
        let mut arrow_index = HashMap::with_capacity(self.arrows.len());
        for (i, a) in self.arrows.iter().enumerate() {
            check_label(&a.0)?;
            if arrow_index.insert(a.0.clone(), ArrowId(i)).is_some() {
                return Err(Error::Structure(format!("duplicate arrow {}", a.0)));
            }
        }
        let unit = |l: &str| {
            unit_index
                .get(l)
                .copied()
                .ok_or_else(|| Error::Structure(format!("unknown unit {l}")))
        };
        let arrow_ref = |l: &str| {
            arrow_index
                .get(l)
                .copied()
                .ok_or_else(|| Error::Structure(format!("unknown arrow {l}")))
        };
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for (label, d, r, inv, w) in self.arrows {
            arrows.push(Arrow { source: unit(&d)?, range: unit(&r)?, inverse: arrow_ref(&inv)?, label, weight: w });
        }
        let mut compose = HashMap::with_capacity(self.compose.len());
        for (l, r, c) in &self.compose {
            let key = (arrow_ref(l)?, arrow_ref(r)?);
            if compose.insert(key, arrow_ref(c)?).is_some() {
                return Err(Error::Structure(format!("composition {l}·{r} given twice")));
            }
        }
        let truncated = self.truncated.iter().map(|u| unit(u)).collect::<Result<UnitSet>>()?;
        Ok(assemble(self.units, unit_index, arrows, arrow_index, compose, truncated))
    }
}

fn check_label(l: &str) -> Result<()> {
    if l.is_empty() || l.chars().any(char::is_whitespace) || l.starts_with('#') {
        return Err(Error::Structure(format!("invalid label {l:?}")));
    }
    Ok(())
}

pub(crate) fn assemble<T: Real>(
    units: Vec<String>,
    unit_index: HashMap<String, UnitId>,
    arrows: Vec<Arrow<T>>,
    arrow_index: HashMap<String, ArrowId>,
    compose: HashMap<(ArrowId, ArrowId), ArrowId>,
    truncated: UnitSet,
) -> FiniteGroupoid<T> {
    let mut source_fibers = vec![Vec::new(); units.len()];
    let mut range_fibers = vec![Vec::new(); units.len()];
    for (i, a) in arrows.iter().enumerate() {
        source_fibers[a.source.0].push(ArrowId(i));
        range_fibers[a.range.0].push(ArrowId(i));
    }
    FiniteGroupoid { units, unit_index, arrows, arrow_index, compose, truncated, source_fibers, range_fibers }
}
