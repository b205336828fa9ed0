use super::{ArrowId, FiniteGroupoid, UnitId, UnitSet};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Orbit structure of a finite groupoid relative to a designated main orbit.
///
/// Density of the main orbit is a topological statement with no content in
/// a finite discrete model; it is carried by the compactification models
/// instead and is not computed here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    /// Orbits in order of their smallest unit.
    pub orbits: Vec<Vec<UnitId>>,
    /// Index into `orbits` for every unit.
    pub orbit_of: Vec<usize>,
    /// Isotropy group `Ξ_x^x` of every unit.
    pub isotropy: Vec<Vec<ArrowId>>,
    pub main_orbit: usize,
    /// `N = X ∖ M`.
    pub boundary: Vec<UnitId>,
    /// Boundary units with nontrivial isotropy. Expected for group bundles
    /// at the boundary; reported, not rejected.
    pub nontrivial_boundary_isotropy: Vec<UnitId>,
}

impl OrbitDecomposition {
    pub fn main(&self) -> &[UnitId] {
        &self.orbits[self.main_orbit]
    }
}

/// Partitions the units into orbits: `x ~ y` iff some arrow has range `x`
/// and source `y`.
pub fn orbits<T: Real>(g: &FiniteGroupoid<T>) -> Vec<Vec<UnitId>> {
    let mut parent: Vec<usize> = (0..g.unit_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for a in g.arrow_ids() {
        let (s, r) = (find(&mut parent, g.source(a).0), find(&mut parent, g.range(a).0));
        if s != r {
            let (lo, hi) = if s < r { (s, r) } else { (r, s) };
            parent[hi] = lo;
        }
    }
    let mut classes: Vec<Vec<UnitId>> = Vec::new();
    let mut slot = vec![usize::MAX; g.unit_count()];
    for x in 0..g.unit_count() {
        let root = find(&mut parent, x);
        if slot[root] == usize::MAX {
            slot[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[root]].push(UnitId(x));
    }
    classes
}

pub fn orbit_decomposition<T: Real>(g: &FiniteGroupoid<T>, claimed_main: &UnitSet) -> Result<OrbitDecomposition> {
    let Some(&first) = claimed_main.iter().next() else {
        return Err(Error::NotOrbit { units: Vec::new() });
    };
    let orbits = orbits(g);
    let mut orbit_of = vec![0; g.unit_count()];
    for (i, o) in orbits.iter().enumerate() {
        for x in o {
            orbit_of[x.0] = i;
        }
    }
    let main_orbit = orbit_of[first.0];
    let main: UnitSet = orbits[main_orbit].iter().copied().collect();
    if &main != claimed_main {
        return Err(Error::NotOrbit {
            units: claimed_main.iter().map(|&x| g.unit_label(x).to_string()).collect(),
        });
    }
    let isotropy: Vec<Vec<ArrowId>> = g.units().map(|x| g.isotropy(x)).collect();
    for &x in &main {
        if isotropy[x.0].len() > 1 {
            return Err(Error::Isotropy { unit: g.unit_label(x).to_string(), order: isotropy[x.0].len() });
        }
    }
    let boundary: Vec<UnitId> = g.units().filter(|x| !main.contains(x)).collect();
    let nontrivial_boundary_isotropy = boundary.iter().copied().filter(|x| isotropy[x.0].len() > 1).collect();
    Ok(OrbitDecomposition { orbits, orbit_of, isotropy, main_orbit, boundary, nontrivial_boundary_isotropy })
}
