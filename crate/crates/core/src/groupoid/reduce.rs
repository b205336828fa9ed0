use std::collections::HashMap;

use super::{assemble, Arrow, ArrowId, FiniteGroupoid, UnitId, UnitSet};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// The reduction `Ξ_A` to an invariant unit set `A`, with the inherited
/// composition, inversion and restricted Haar weights. Labels and relative
/// order are preserved.
pub fn reduce<T: Real>(g: &FiniteGroupoid<T>, set: &UnitSet) -> Result<FiniteGroupoid<T>> {
    for a in g.arrow_ids() {
        if set.contains(&g.source(a)) != set.contains(&g.range(a)) {
            return Err(Error::NotInvariant { arrow: g.arrow(a).label.clone() });
        }
    }
    let mut unit_map = vec![None; g.unit_count()];
    let mut units = Vec::new();
    let mut unit_index = HashMap::new();
    for x in g.units().filter(|x| set.contains(x)) {
        unit_map[x.0] = Some(UnitId(units.len()));
        unit_index.insert(g.unit_label(x).to_string(), UnitId(units.len()));
        units.push(g.unit_label(x).to_string());
    }
    let mut arrow_map = vec![None; g.arrow_count()];
    let kept: Vec<ArrowId> = g.arrow_ids().filter(|&a| set.contains(&g.source(a))).collect();
    for (i, &a) in kept.iter().enumerate() {
        arrow_map[a.0] = Some(ArrowId(i));
    }
    let mut arrows = Vec::with_capacity(kept.len());
    let mut arrow_index = HashMap::with_capacity(kept.len());
    for &a in &kept {
        let src = g.arrow(a);
        // invariance puts the inverse in the reduction as well
        let inverse = arrow_map[src.inverse.0].expect("inverse of a kept arrow is kept");
        arrow_index.insert(src.label.clone(), ArrowId(arrows.len()));
        arrows.push(Arrow {
            label: src.label.clone(),
            source: unit_map[src.source.0].unwrap(),
            range: unit_map[src.range.0].unwrap(),
            inverse,
            weight: src.weight.clone(),
        });
    }
    let mut compose = HashMap::new();
    for (a, b, c) in g.composition_table() {
        if let (Some(a), Some(b), Some(c)) = (arrow_map[a.0], arrow_map[b.0], arrow_map[c.0]) {
            compose.insert((a, b), c);
        }
    }
    let truncated = g.truncated_units().iter().filter_map(|x| unit_map[x.0]).collect();
    Ok(assemble(units, unit_index, arrows, arrow_index, compose, truncated))
}
