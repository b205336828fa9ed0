//! Line formats: kernels as `arrow_id re im`, unit functions as
//! `unit_id re im`. Absent arrows are zero; lines starting with `#` are
//! comments.

use std::fmt::Write;
use std::sync::Arc;

use num_complex::Complex;

use super::{Kernel, UnitFunction};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::scalar::Real;

pub fn write_kernel<T: Real>(f: &Kernel<T>) -> String {
    let mut s = String::new();
    for (a, v) in f.iter() {
        writeln!(s, "{} {} {}", f.parent().arrow(a).label, v.re, v.im).unwrap();
    }
    s
}

pub fn write_unit_function<T: Real>(psi: &UnitFunction<T>) -> String {
    let mut s = String::new();
    let g = psi.parent();
    for x in g.units() {
        let v = psi.get(x);
        writeln!(s, "{} {} {}", g.unit_label(x), v.re, v.im).unwrap();
    }
    s
}

fn records(text: &str) -> impl Iterator<Item = Result<(usize, [&str; 3])>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        Some(match fields[..] {
            [a, b, c] => Ok((i + 1, [a, b, c])),
            _ => Err(Error::Parse { line: i + 1, message: format!("expected `id re im`, found {line:?}") }),
        })
    })
}

fn parse_complex<T: Real>(line: usize, re: &str, im: &str) -> Result<Complex<T>> {
    let p = |s: &str| s.parse::<T>().map_err(|_| Error::Parse { line, message: format!("bad number {s:?}") });
    Ok(Complex::new(p(re)?, p(im)?))
}

pub fn parse_kernel<T: Real>(parent: Arc<FiniteGroupoid<T>>, text: &str) -> Result<Kernel<T>> {
    let mut k = Kernel::zero(parent.clone());
    for rec in records(text) {
        let (line, [id, re, im]) = rec?;
        let a = parent
            .arrow_id(id)
            .ok_or_else(|| Error::Parse { line, message: format!("unknown arrow {id:?}") })?;
        k.set(a, parse_complex(line, re, im)?);
    }
    Ok(k)
}

pub fn parse_unit_function<T: Real>(parent: Arc<FiniteGroupoid<T>>, text: &str) -> Result<UnitFunction<T>> {
    let mut values: Vec<Option<Complex<T>>> = vec![None; parent.unit_count()];
    for rec in records(text) {
        let (line, [id, re, im]) = rec?;
        let x = parent
            .unit_id(id)
            .ok_or_else(|| Error::Parse { line, message: format!("unknown unit {id:?}") })?;
        values[x.0] = Some(parse_complex(line, re, im)?);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Structure(format!("no value for unit {}", parent.unit_label(crate::groupoid::UnitId(i))))))
        .collect::<Result<Vec<_>>>()?;
    UnitFunction::from_values(parent, values)
}
