use std::fmt;

use super::{ArrowId, FiniteGroupoid};
use crate::scalar::Real;

/// Tolerance for comparing Haar weights in floating point.
const WEIGHT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `ξη` must exist whenever `d(ξ) = r(η)`.
    CompositionClosure,
    /// `ξη` is stored although `d(ξ) ≠ r(η)`.
    CompositionDomain,
    /// `d(ξη) = d(η)` and `r(ξη) = r(ξ)`.
    CompositeEndpoints,
    Associativity,
    UnitArrow,
    UnitNeutral,
    /// `(ξ⁻¹)⁻¹ = ξ`.
    Involution,
    /// `d(ξ⁻¹) = r(ξ)` and `r(ξ⁻¹) = d(ξ)`.
    InverseEndpoints,
    /// `ξ⁻¹ξ` and `ξξ⁻¹` are the unit arrows at `d(ξ)` and `r(ξ)`.
    InverseProduct,
    HaarPositive,
    /// Right translation by `ξ: x → y` maps `Ξ_y` bijectively onto `Ξ_x`
    /// and preserves weights.
    HaarRightInvariance,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    /// Labels of the arrows or units exhibiting the violation.
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// Checks every groupoid and Haar-system axiom by exhaustive enumeration.
///
/// Closure of composition is not required at truncated units, and
/// associativity is only checked on triples whose products are stored.
pub fn validate<T: Real>(g: &FiniteGroupoid<T>) -> ValidationReport {
    let mut out = Vec::new();
    let at = |axiom, ids: &[ArrowId]| Violation { axiom, witness: ids.iter().map(|&a| g.arrow(a).label.clone()).collect() };

    for a in g.arrow_ids() {
        for b in g.arrow_ids() {
            let composable = g.source(a) == g.range(b);
            match g.compose(a, b) {
                None if composable => {
                    let involved = [g.range(a), g.source(a), g.source(b)];
                    if !involved.iter().any(|&x| g.is_truncated(x)) {
                        out.push(at(Axiom::CompositionClosure, &[a, b]));
                    }
                }
                Some(_) if !composable => out.push(at(Axiom::CompositionDomain, &[a, b])),
                Some(c) => {
                    if g.source(c) != g.source(b) || g.range(c) != g.range(a) {
                        out.push(at(Axiom::CompositeEndpoints, &[a, b, c]));
                    }
                }
                None => {}
            }
        }
    }

    for ((a, b), ab) in stored_pairs(g) {
        for &c in g.range_fiber(g.source(b)) {
            let (Some(bc), Some(ab_c)) = (g.compose(b, c), g.compose(ab, c)) else { continue };
            match g.compose(a, bc) {
                Some(a_bc) if a_bc == ab_c => {}
                Some(_) => out.push(at(Axiom::Associativity, &[a, b, c])),
                None => {}
            }
        }
    }

    for x in g.units() {
        let Some(e) = g.unit_arrow(x) else {
            out.push(Violation { axiom: Axiom::UnitArrow, witness: vec![g.unit_label(x).to_string()] });
            continue;
        };
        for &a in g.range_fiber(x) {
            if g.compose(e, a).is_some_and(|c| c != a) {
                out.push(at(Axiom::UnitNeutral, &[e, a]));
            }
        }
        for &a in g.source_fiber(x) {
            if g.compose(a, e).is_some_and(|c| c != a) {
                out.push(at(Axiom::UnitNeutral, &[a, e]));
            }
        }
    }

    for a in g.arrow_ids() {
        let inv = g.inverse(a);
        if g.inverse(inv) != a {
            out.push(at(Axiom::Involution, &[a, inv]));
        }
        if g.source(inv) != g.range(a) || g.range(inv) != g.source(a) {
            out.push(at(Axiom::InverseEndpoints, &[a, inv]));
        }
        let left_ok = g.compose(inv, a).is_some_and(|c| Some(c) == g.unit_arrow(g.source(a)));
        let right_ok = g.compose(a, inv).is_some_and(|c| Some(c) == g.unit_arrow(g.range(a)));
        if !(left_ok && right_ok) {
            out.push(at(Axiom::InverseProduct, &[a, inv]));
        }
        if g.weight(a) <= &T::zero() {
            out.push(at(Axiom::HaarPositive, &[a]));
        }
    }

    for xi in g.arrow_ids() {
        let (x, y) = (g.source(xi), g.range(xi));
        if g.is_truncated(x) || g.is_truncated(y) {
            continue;
        }
        let target = g.source_fiber(x);
        let mut hit = vec![false; target.len()];
        let mut ok = g.source_fiber(y).len() == target.len();
        for &eta in g.source_fiber(y) {
            let Some(prod) = g.compose(eta, xi) else {
                ok = false;
                break;
            };
            match target.iter().position(|&t| t == prod) {
                Some(i) if !hit[i] => hit[i] = true,
                _ => ok = false,
            }
            if !g.weight(prod).close_to(g.weight(eta), WEIGHT_TOL) {
                ok = false;
            }
        }
        if !ok {
            out.push(at(Axiom::HaarRightInvariance, &[xi]));
        }
    }

    ValidationReport { violations: out }
}

fn stored_pairs<T: Real>(g: &FiniteGroupoid<T>) -> Vec<((ArrowId, ArrowId), ArrowId)> {
    g.composition_table().into_iter().map(|(a, b, c)| ((a, b), c)).collect()
}
