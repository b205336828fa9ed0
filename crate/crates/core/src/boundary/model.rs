use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroup;
use crate::C64;

/// Tolerances at which [`continuity_check`] tests fiber limits.
pub const EPSILON_LADDER: [f64; 3] = [1e-1, 1e-2, 1e-3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Up,
    Down,
}

/// The half-line `{start, start ± 1, ...}` of interior points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ray {
    pub start: i64,
    pub direction: Direction,
}

impl Ray {
    pub fn contains(&self, m: i64) -> bool {
        match self.direction {
            Direction::Up => m >= self.start,
            Direction::Down => m <= self.start,
        }
    }

    fn disjoint(&self, other: &Ray) -> bool {
        match (self.direction, other.direction) {
            (Direction::Up, Direction::Down) => other.start < self.start,
            (Direction::Down, Direction::Up) => self.start < other.start,
            _ => false,
        }
    }
}

/// The isotropy group `Σ_n` of a boundary point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberGroup {
    /// `Z^dim` with `dim ∈ {1, 2}`.
    Lattice(usize),
    /// `∏ Z/n_i`.
    Abelian(Vec<usize>),
    Table(FiniteGroup),
}

impl FiberGroup {
    pub fn is_abelian(&self) -> bool {
        match self {
            FiberGroup::Table(g) => g.is_abelian(),
            _ => true,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            FiberGroup::Lattice(d) if !(1..=2).contains(d) => {
                Err(Error::BadModel(format!("lattice dimension {d} is not 1 or 2")))
            }
            FiberGroup::Abelian(orders) if orders.is_empty() || orders.contains(&0) => {
                Err(Error::BadModel(format!("bad cyclic orders {orders:?}")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryPoint {
    pub label: String,
    pub group: FiberGroup,
    /// The fiber `p⁻¹(n)`, a union of rays.
    pub rays: Vec<Ray>,
}

/// `X = M ⊔ N` with `M = Z ∩ [-L, L]`. Each boundary point `n` owns the
/// interior points on its rays; the remaining points form `M^in`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawModel", into = "RawModel")]
pub struct CompactificationModel {
    radius: usize,
    boundary: Vec<BoundaryPoint>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    radius: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    interior_core: Option<Vec<i64>>,
    boundary: Vec<BoundaryPoint>,
}

impl TryFrom<RawModel> for CompactificationModel {
    type Error = Error;

    fn try_from(raw: RawModel) -> Result<Self> {
        let cm = CompactificationModel::new(raw.radius, raw.boundary)?;
        if let Some(core) = raw.interior_core {
            if core != cm.interior_core() {
                return Err(Error::BadModel(format!(
                    "declared interior core {core:?} differs from {:?}",
                    cm.interior_core()
                )));
            }
        }
        Ok(cm)
    }
}

impl From<CompactificationModel> for RawModel {
    fn from(cm: CompactificationModel) -> Self {
        RawModel { interior_core: Some(cm.interior_core()), radius: cm.radius, boundary: cm.boundary }
    }
}

/// A point of `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Interior(i64),
    /// Index into [`CompactificationModel::boundary`].
    Boundary(usize),
}

impl CompactificationModel {
    /// Fibers must be disjoint, and every fiber must meet `[-r, r]` for all
    /// `1 ≤ r ≤ L`, so that no fiber is exhausted by the window.
    pub fn new(radius: usize, boundary: Vec<BoundaryPoint>) -> Result<Self> {
        if radius == 0 {
            return Err(Error::BadModel("truncation radius must be positive".into()));
        }
        let mut labels = BTreeSet::new();
        for n in &boundary {
            if n.label.is_empty() || n.label.chars().any(char::is_whitespace) || n.label.parse::<i64>().is_ok() {
                return Err(Error::BadModel(format!("invalid boundary label {:?}", n.label)));
            }
            if !labels.insert(n.label.as_str()) {
                return Err(Error::BadModel(format!("duplicate boundary label {}", n.label)));
            }
            if n.rays.is_empty() {
                return Err(Error::BadModel(format!("boundary point {} has an empty fiber", n.label)));
            }
            n.group.validate()?;
            for r in &n.rays {
                let reaches = match r.direction {
                    Direction::Up => r.start <= 1,
                    Direction::Down => r.start >= -1,
                };
                if !reaches {
                    return Err(Error::BadModel(format!("ray from {} of {} misses the unit window", r.start, n.label)));
                }
            }
        }
        let rays: Vec<(&str, &Ray)> = boundary.iter().flat_map(|n| n.rays.iter().map(move |r| (n.label.as_str(), r))).collect();
        for (i, (a, r)) in rays.iter().enumerate() {
            for (b, s) in &rays[i + 1..] {
                if !r.disjoint(s) {
                    return Err(Error::BadModel(format!("fibers of {a} and {b} overlap")));
                }
            }
        }
        Ok(CompactificationModel { radius, boundary })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn with_radius(&self, radius: usize) -> Result<Self> {
        CompactificationModel::new(radius, self.boundary.clone())
    }

    pub fn boundary(&self) -> &[BoundaryPoint] {
        &self.boundary
    }

    pub fn boundary_index(&self, label: &str) -> Option<usize> {
        self.boundary.iter().position(|n| n.label == label)
    }

    pub fn interior(&self) -> std::ops::RangeInclusive<i64> {
        let l = self.radius as i64;
        -l..=l
    }

    pub fn interior_len(&self) -> usize {
        2 * self.radius + 1
    }

    /// The fiber map `p`, `None` on `M^in`.
    pub fn fiber_of(&self, m: i64) -> Option<usize> {
        self.boundary.iter().position(|n| n.rays.iter().any(|r| r.contains(m)))
    }

    /// Realized points of `p⁻¹(n)` in increasing order.
    pub fn fiber(&self, n: usize) -> Vec<i64> {
        self.interior().filter(|&m| self.fiber_of(m) == Some(n)).collect()
    }

    pub fn interior_core(&self) -> Vec<i64> {
        self.interior().filter(|&m| self.fiber_of(m).is_none()).collect()
    }

    /// All realized points of `X`, interior first.
    pub fn points(&self) -> Vec<Point> {
        self.interior().map(Point::Interior).chain((0..self.boundary.len()).map(Point::Boundary)).collect()
    }

    pub fn label(&self, x: Point) -> String {
        match x {
            Point::Interior(m) => m.to_string(),
            Point::Boundary(n) => self.boundary[n].label.clone(),
        }
    }
}

/// A basic set `A_{E,K} = (p⁻¹(E) ∖ K) ⊔ E` with `K` finite.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NeighborhoodSpec {
    pub e: BTreeSet<usize>,
    pub k: BTreeSet<i64>,
}

impl NeighborhoodSpec {
    pub fn new(e: impl IntoIterator<Item = usize>, k: impl IntoIterator<Item = i64>) -> Self {
        NeighborhoodSpec { e: e.into_iter().collect(), k: k.into_iter().collect() }
    }

    /// `A_{E₁,K₁} ∩ A_{E₂,K₂} = A_{E₁∩E₂, K₁∪K₂}`.
    pub fn intersect(&self, other: &NeighborhoodSpec) -> NeighborhoodSpec {
        NeighborhoodSpec { e: &self.e & &other.e, k: &self.k | &other.k }
    }

    pub fn contains(&self, cm: &CompactificationModel, x: Point) -> bool {
        match x {
            Point::Boundary(n) => self.e.contains(&n),
            Point::Interior(m) => cm.fiber_of(m).is_some_and(|n| self.e.contains(&n)) && !self.k.contains(&m),
        }
    }

    /// `A^M_{E,K}` within the window.
    pub fn interior_part(&self, cm: &CompactificationModel) -> Vec<i64> {
        cm.interior().filter(|&m| self.contains(cm, Point::Interior(m))).collect()
    }
}

pub fn membership_neighborhood(cm: &CompactificationModel, spec: &NeighborhoodSpec, x: Point) -> bool {
    spec.contains(cm, x)
}

/// A function on the realized points of `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFunction {
    pub interior: Vec<C64>,
    pub boundary: Vec<C64>,
}

impl PointFunction {
    pub fn from_fn(cm: &CompactificationModel, mut f: impl FnMut(Point) -> C64) -> Self {
        PointFunction {
            interior: cm.interior().map(|m| f(Point::Interior(m))).collect(),
            boundary: (0..cm.boundary().len()).map(|n| f(Point::Boundary(n))).collect(),
        }
    }

    pub fn real(cm: &CompactificationModel, mut f: impl FnMut(Point) -> f64) -> Self {
        Self::from_fn(cm, |x| C64::new(f(x), 0.0))
    }

    pub fn get(&self, cm: &CompactificationModel, x: Point) -> C64 {
        match x {
            Point::Interior(m) => self.interior[(m + cm.radius() as i64) as usize],
            Point::Boundary(n) => self.boundary[n],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub boundary: String,
    pub eps: f64,
    pub point: i64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityReport {
    pub continuous: bool,
    pub witness: Option<Witness>,
    /// `(n, ε, ρ)`: the smallest `ρ` with `|φ(m) − φ(n)| ≤ ε` on the fiber
    /// of `n` outside `[-ρ, ρ]`, when it fits in the window.
    pub scales: Vec<(String, f64, Option<usize>)>,
}

/// Fiber-limit criterion at every boundary point and every ε of the
/// ladder, with `E = {n}` and `K = [-ρ, ρ]`, `ρ ≤ L/2`.
pub fn continuity_check(cm: &CompactificationModel, phi: &PointFunction) -> ContinuityReport {
    let rho_max = cm.radius() / 2;
    let mut report = ContinuityReport { continuous: true, witness: None, scales: Vec::new() };
    for (n, bp) in cm.boundary().iter().enumerate() {
        let limit = phi.get(cm, Point::Boundary(n));
        let deviations: Vec<(i64, f64)> =
            cm.fiber(n).into_iter().map(|m| (m, (phi.get(cm, Point::Interior(m)) - limit).norm())).collect();
        for eps in EPSILON_LADDER {
            let worst = deviations.iter().filter(|(_, d)| *d > eps).max_by_key(|(m, _)| m.unsigned_abs());
            let needed = worst.map_or(0, |(m, _)| m.unsigned_abs() as usize);
            if needed <= rho_max {
                report.scales.push((bp.label.clone(), eps, Some(needed)));
            } else {
                report.scales.push((bp.label.clone(), eps, None));
                if report.continuous {
                    let &(m, d) = worst.expect("a violation exists");
                    report.continuous = false;
                    report.witness = Some(Witness { boundary: bp.label.clone(), eps, point: m, deviation: d });
                }
            }
        }
    }
    report
}
