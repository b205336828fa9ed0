use std::collections::VecDeque;

use serde::Serialize;

use super::norms::weighted_rows_norm;
use crate::boundary::{CompactificationModel, Point};
use crate::error::{Error, Result};
use crate::spectral::LowRank;

/// A cutoff `ψ: X → [0, 2]` on the realized points.
#[derive(Debug, Clone, Serialize)]
pub struct Psi {
    /// Values on the window, indexed by `m + L`.
    pub interior: Vec<f64>,
    pub boundary: Vec<f64>,
    /// Truncation radius: `f₀` is `f` compressed to the complement of the
    /// `Q`-fibers beyond `ρ`.
    pub rho: usize,
    /// `‖f − f₀‖` bound `‖Q_ρ f‖ + ‖f Q_ρ‖`.
    pub tail_bound: f64,
    /// Points where `f₀` may be nonzero; `ψ = 0` there.
    pub support_core: Vec<i64>,
}

impl Psi {
    pub fn at(&self, cm: &CompactificationModel, x: Point) -> f64 {
        match x {
            Point::Interior(m) => self.interior[(m + cm.radius() as i64) as usize],
            Point::Boundary(n) => self.boundary[n],
        }
    }
}

fn tail(cm: &CompactificationModel, q: &[usize], rho: usize) -> Vec<bool> {
    cm.interior()
        .map(|m| m.unsigned_abs() as usize > rho && cm.fiber_of(m).is_some_and(|n| q.contains(&n)))
        .collect()
}

/// Discrete Urysohn cutoff separating `Q` from the support of a truncation
/// of `f`.
///
/// The truncation radius `ρ` is the smallest with
/// `‖Q_ρ f‖ + ‖f Q_ρ‖ ≤ ε/4`, found by bisection; it must leave room for
/// interpolation, `ρ ≤ L/2`. Then `ψ = 2 d_S/(d_S + d_A)` for graph
/// distances on `X`, where interior points are joined to their neighbors
/// and each boundary point to its fiber beyond `ρ`.
pub fn construct_psi(cm: &CompactificationModel, eps: f64, q: &[usize], f: &LowRank) -> Result<Psi> {
    if !(eps > 0.0) {
        return Err(Error::Structure(format!("tolerance {eps} must be positive")));
    }
    if f.vectors.nrows() != cm.interior_len() {
        return Err(Error::Structure("operator does not act on the window".into()));
    }
    let tail_bound = |rho: usize| {
        let t = tail(cm, q, rho);
        2.0 * weighted_rows_norm(f, |i| if t[i] { 1.0 } else { 0.0 })
    };
    let (mut lo, mut hi) = (0usize, cm.radius());
    if tail_bound(0) <= eps / 4.0 {
        hi = 0;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if tail_bound(mid) <= eps / 4.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let rho = hi;
    let available = cm.radius() / 2;
    if rho > available {
        return Err(Error::NoSeparation { needed: rho, available });
    }
    let t = tail(cm, q, rho);
    let support_core: Vec<i64> = cm
        .interior()
        .enumerate()
        .filter(|&(i, _)| !t[i] && (0..f.rank()).any(|j| f.vectors[(i, j)] != crate::C64::new(0.0, 0.0)))
        .map(|(_, m)| m)
        .collect();

    let sources_s: Vec<Point> = support_core.iter().map(|&m| Point::Interior(m)).collect();
    let sources_a: Vec<Point> = q.iter().map(|&n| Point::Boundary(n)).collect();
    let d_s = distances(cm, rho, &sources_s);
    let d_a = distances(cm, rho, &sources_a);
    let value = |i: usize| match (d_s[i], d_a[i]) {
        (None, _) => 2.0,
        (_, None) => 0.0,
        (Some(s), Some(a)) => (2.0 * s as f64 / (s + a) as f64).clamp(0.0, 2.0),
    };
    let n_int = cm.interior_len();
    Ok(Psi {
        interior: (0..n_int).map(value).collect(),
        boundary: (0..cm.boundary().len()).map(|n| value(n_int + n)).collect(),
        rho,
        tail_bound: tail_bound(rho),
        support_core,
    })
}

/// Multi-source BFS over the realized points; nodes are the window in
/// order, then the boundary points.
fn distances(cm: &CompactificationModel, rho: usize, sources: &[Point]) -> Vec<Option<usize>> {
    let l = cm.radius() as i64;
    let n_int = cm.interior_len();
    let index = |x: Point| match x {
        Point::Interior(m) => (m + l) as usize,
        Point::Boundary(n) => n_int + n,
    };
    let fibers: Vec<Vec<i64>> =
        (0..cm.boundary().len()).map(|n| cm.fiber(n).into_iter().filter(|m| m.unsigned_abs() as usize > rho).collect()).collect();
    let mut dist = vec![None; n_int + cm.boundary().len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[index(s)] = Some(0);
        queue.push_back(s);
    }
    while let Some(x) = queue.pop_front() {
        let d = dist[index(x)].expect("visited");
        let mut next: Vec<Point> = Vec::new();
        match x {
            Point::Interior(m) => {
                next.extend([m - 1, m + 1].into_iter().filter(|v| v.abs() <= l).map(Point::Interior));
                if let Some(n) = cm.fiber_of(m).filter(|_| m.unsigned_abs() as usize > rho) {
                    next.push(Point::Boundary(n));
                }
            }
            Point::Boundary(n) => next.extend(fibers[n].iter().map(|&m| Point::Interior(m))),
        }
        for y in next {
            let slot = &mut dist[index(y)];
            if slot.is_none() {
                *slot = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}
