//! Plain-text interchange for finite groupoids.
//!
//! ```text
//! units: a b c
//! truncated: c            (optional)
//! arrows:
//! <id> <source> <range> <inverse_id> <weight>
//! compose:
//! <left> <right> <result>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Weights use the
//! scalar's `Display`/`FromStr`, which round-trips exactly for `f64` and
//! rationals.

use std::fmt::Write;

use super::{FiniteGroupoid, GroupoidBuilder};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub fn write_groupoid<T: Real>(g: &FiniteGroupoid<T>) -> String {
    let mut s = String::new();
    let units: Vec<&str> = g.units().map(|x| g.unit_label(x)).collect();
    writeln!(s, "units: {}", units.join(" ")).unwrap();
    if !g.truncated_units().is_empty() {
        let t: Vec<&str> = g.truncated_units().iter().map(|&x| g.unit_label(x)).collect();
        writeln!(s, "truncated: {}", t.join(" ")).unwrap();
    }
    writeln!(s, "arrows:").unwrap();
    for a in g.arrow_ids() {
        let ar = g.arrow(a);
        writeln!(
            s,
            "{} {} {} {} {}",
            ar.label,
            g.unit_label(ar.source),
            g.unit_label(ar.range),
            g.arrow(ar.inverse).label,
            ar.weight
        )
        .unwrap();
    }
    writeln!(s, "compose:").unwrap();
    for (a, b, c) in g.composition_table() {
        writeln!(s, "{} {} {}", g.arrow(a).label, g.arrow(b).label, g.arrow(c).label).unwrap();
    }
    s
}

#[derive(PartialEq)]
enum Section {
    Header,
    Arrows,
    Compose,
}

pub fn parse_groupoid<T: Real>(text: &str) -> Result<FiniteGroupoid<T>> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut b = GroupoidBuilder::new();
    let mut section = Section::Header;
    let mut saw_units = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("units:") {
            if section != Section::Header || saw_units {
                return Err(err(line_no, "unexpected units header".into()));
            }
            rest.split_whitespace().for_each(|u| {
                b.unit(u);
            });
            saw_units = true;
            continue;
        }
        if let Some(rest) = line.strip_prefix("truncated:") {
            if section != Section::Header {
                return Err(err(line_no, "truncated header after arrows".into()));
            }
            rest.split_whitespace().for_each(|u| {
                b.truncated(u);
            });
            continue;
        }
        match line {
            "arrows:" if section == Section::Header && saw_units => {
                section = Section::Arrows;
                continue;
            }
            "compose:" if section == Section::Arrows => {
                section = Section::Compose;
                continue;
            }
            _ => {}
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match section {
            Section::Header => return Err(err(line_no, format!("expected a header, found {line:?}"))),
            Section::Arrows => {
                let [id, d, r, inv, w] = fields[..] else {
                    return Err(err(line_no, format!("arrow line needs 5 fields, found {}", fields.len())));
                };
                let weight = w.parse::<T>().map_err(|_| err(line_no, format!("bad weight {w:?}")))?;
                b.arrow(id, d, r, inv, weight);
            }
            Section::Compose => {
                let [l, r, c] = fields[..] else {
                    return Err(err(line_no, format!("compose line needs 3 fields, found {}", fields.len())));
                };
                b.compose(l, r, c);
            }
        }
    }
    if section != Section::Compose {
        return Err(err(text.lines().count(), "missing arrows: or compose: section".into()));
    }
    b.build()
}
