use std::fmt::Write;
use std::path::Path;

use gloc::boundary::{fourier_symbol_spectrum, FiberGroup, ModelFile};
use gloc::groupoid::{orbits, parse_groupoid};
use gloc::spectral::DEFAULT_GRID;
use gloc::GroupoidF64;

use crate::error::CliError;

/// Summary of a model file or a groupoid interchange file.
pub fn inspect(path: &Path) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    let fail = |e: gloc::Error| CliError::Model(format!("{}: {e}", path.display()));
    if first.is_some_and(|l| l.starts_with("units:")) {
        let g: GroupoidF64 = parse_groupoid(&text).map_err(fail)?;
        Ok(groupoid_summary(&g))
    } else {
        let m = ModelFile::parse(&text).map_err(fail)?;
        model_summary(&m).map_err(fail)
    }
}

pub fn groupoid_summary(g: &GroupoidF64) -> String {
    let mut s = String::new();
    writeln!(s, "units: {}", g.unit_count()).unwrap();
    writeln!(s, "arrows: {}", g.arrow_count()).unwrap();
    let orbs = orbits(g);
    writeln!(s, "orbits: {}", orbs.len()).unwrap();
    for o in orbs {
        let labels: Vec<&str> = o.iter().map(|&x| g.unit_label(x)).collect();
        let iso = g.isotropy(*o.iter().next().expect("orbits are nonempty")).len();
        let kind = if iso == 1 { "trivial isotropy".to_string() } else { format!("isotropy of order {iso}") };
        writeln!(s, "  {{{}}}: {kind}", labels.join(", ")).unwrap();
    }
    if !g.truncated_units().is_empty() {
        let t: Vec<&str> = g.truncated_units().iter().map(|&x| g.unit_label(x)).collect();
        writeln!(s, "truncated: {}", t.join(", ")).unwrap();
    }
    s
}

fn group_name(g: &FiberGroup) -> String {
    match g {
        FiberGroup::Lattice(d) => format!("Z^{d}"),
        FiberGroup::Abelian(orders) => orders.iter().map(|o| format!("Z/{o}")).collect::<Vec<_>>().join(" x "),
        FiberGroup::Table(t) => format!("table of order {}{}", t.order(), if t.is_abelian() { "" } else { ", non-abelian" }),
    }
}

fn realized_order(g: &FiberGroup, radius: usize) -> usize {
    match g {
        FiberGroup::Lattice(d) => (2 * radius + 1).pow(*d as u32),
        FiberGroup::Abelian(orders) => orders.iter().product(),
        FiberGroup::Table(t) => t.order(),
    }
}

pub fn model_summary(m: &ModelFile) -> Result<String, gloc::Error> {
    let cm = &m.model;
    let l = cm.radius();
    let window = cm.interior_len();
    let boundary_arrows: usize = cm.boundary().iter().map(|n| realized_order(&n.group, l)).sum();
    let mut s = String::new();
    writeln!(s, "truncation radius: {l}").unwrap();
    writeln!(s, "units: {}", window + cm.boundary().len()).unwrap();
    writeln!(s, "arrows: {}", window * window + boundary_arrows).unwrap();
    writeln!(s, "orbits: {}", 1 + cm.boundary().len()).unwrap();
    writeln!(s, "  interior [-{l}, {l}]: trivial isotropy").unwrap();
    writeln!(s, "interior core: {:?}", cm.interior_core()).unwrap();
    writeln!(s, "boundary points: {}", cm.boundary().len()).unwrap();
    for n in cm.boundary() {
        let sp = fourier_symbol_spectrum(&m.band, &n.label, DEFAULT_GRID)?;
        let comps: Vec<String> = sp.components(0.0).iter().map(|(a, b)| format!("[{a:.4}, {b:.4}]")).collect();
        writeln!(s, "  {}: isotropy {}, symbol range {} (grid step {:.2e})", n.label, group_name(&n.group), comps.join(" u "), sp.step())
            .unwrap();
    }
    Ok(s)
}
