use std::collections::BTreeMap;
use std::f64::consts::PI;

use faer::Mat;
use num_traits::Zero;

use super::FiberGroup;
use crate::error::{Error, Result};
use crate::groupoid::{lattice_ball, FiniteGroup};
use crate::repr::OperatorMatrix;
use crate::spectral::{spectrum, SpectrumSet};
use crate::C64;

/// A finitely supported function on the isotropy group `Σ_n`, acting by
/// convolution `(H_n u)(a) = Σ_b F(ab⁻¹) u(b)` with counting measure.
///
/// Elements are coordinate vectors: integer points for `Z^d`, residues for
/// `∏ Z/n_i`, and a single element index for an explicit table.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryKernel {
    point: String,
    group: FiberGroup,
    coefficients: BTreeMap<Vec<i64>, C64>,
}

impl BoundaryKernel {
    pub fn new(point: &str, group: FiberGroup, coefficients: Vec<(Vec<i64>, C64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (g, v) in coefficients {
            let g = normalize(&group, g)?;
            *map.entry(g).or_insert_with(C64::zero) += v;
        }
        map.retain(|_, v| !v.is_zero());
        Ok(BoundaryKernel { point: point.to_string(), group, coefficients: map })
    }

    pub fn group(&self) -> &FiberGroup {
        &self.group
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<i64>, C64> {
        &self.coefficients
    }

    pub fn get(&self, g: &[i64]) -> C64 {
        self.coefficients.get(g).copied().unwrap_or_else(C64::zero)
    }

    /// `max_k |k|_∞` over the support.
    pub fn reach(&self) -> usize {
        self.coefficients.keys().map(|k| k.iter().map(|c| c.unsigned_abs() as usize).max().unwrap_or(0)).max().unwrap_or(0)
    }

    /// The convolution operator on the group ball `[-R, R]^d` for a lattice,
    /// or on the whole group when it is finite.
    pub fn convolution_matrix(&self, radius: usize) -> Result<OperatorMatrix> {
        let (elements, diff): (Vec<Vec<i64>>, Box<dyn Fn(&[i64], &[i64]) -> Vec<i64>>) = match &self.group {
            FiberGroup::Lattice(d) => {
                if radius < self.reach() {
                    return Err(Error::Radius { radius, bandwidth: self.reach() });
                }
                (lattice_ball(*d, radius as i64), Box::new(|a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x - y).collect()))
            }
            FiberGroup::Abelian(orders) => {
                let orders = orders.clone();
                let elems = residues(&orders);
                (
                    elems,
                    Box::new(move |a: &[i64], b: &[i64]| {
                        a.iter().zip(b).zip(&orders).map(|((x, y), &o)| (x - y).rem_euclid(o as i64)).collect()
                    }),
                )
            }
            FiberGroup::Table(g) => {
                let g = g.clone();
                (
                    (0..g.order() as i64).map(|a| vec![a]).collect(),
                    Box::new(move |a: &[i64], b: &[i64]| vec![g.mul(a[0] as usize, g.inverse(b[0] as usize)) as i64]),
                )
            }
        };
        let n = elements.len();
        let entries = Mat::from_fn(n, n, |i, j| self.get(&diff(&elements[i], &elements[j])));
        let basis = elements.iter().map(|e| element_label(&self.group, e)).collect();
        OperatorMatrix::new(basis, vec![1.0; n], entries)
    }

    /// The closure of the symbol range. Lattices are sampled on a
    /// `grid^d` torus grid whose step is the Lipschitz bound
    /// `Σ_k |F(k)| |k|₁ · 2π/grid`; finite abelian groups give the exact
    /// character values.
    pub fn symbol_spectrum(&self, grid: usize) -> Result<SpectrumSet> {
        match &self.group {
            FiberGroup::Lattice(d) => {
                let grid = grid.max(1);
                let h = 2.0 * PI / grid as f64;
                let angles: Vec<Vec<i64>> = residues(&vec![grid; *d]);
                let points = angles
                    .iter()
                    .map(|t| {
                        self.coefficients
                            .iter()
                            .map(|(k, v)| {
                                let phase: f64 = k.iter().zip(t).map(|(&ki, &ti)| ki as f64 * ti as f64 * h).sum();
                                v * C64::from_polar(1.0, phase)
                            })
                            .sum()
                    })
                    .collect();
                let lipschitz: f64 =
                    self.coefficients.iter().map(|(k, v)| v.norm() * k.iter().map(|c| c.unsigned_abs() as f64).sum::<f64>()).sum();
                Ok(SpectrumSet::sampled(points, lipschitz * h))
            }
            FiberGroup::Abelian(orders) => {
                let points = residues(orders)
                    .iter()
                    .map(|chi| {
                        self.coefficients
                            .iter()
                            .map(|(k, v)| {
                                let phase: f64 =
                                    k.iter().zip(chi).zip(orders).map(|((&ki, &ci), &o)| 2.0 * PI * (ki * ci) as f64 / o as f64).sum();
                                v * C64::from_polar(1.0, phase)
                            })
                            .sum()
                    })
                    .collect();
                Ok(SpectrumSet::exact(points))
            }
            FiberGroup::Table(g) if g.is_abelian() => spectrum(&self.convolution_matrix(0)?),
            FiberGroup::Table(_) => Err(Error::NotAbelian(self.point.clone())),
        }
    }
}

fn normalize(group: &FiberGroup, g: Vec<i64>) -> Result<Vec<i64>> {
    match group {
        FiberGroup::Lattice(d) if g.len() == *d => Ok(g),
        FiberGroup::Abelian(orders) if g.len() == orders.len() => {
            Ok(g.iter().zip(orders).map(|(x, &o)| x.rem_euclid(o as i64)).collect())
        }
        FiberGroup::Table(t) if g.len() == 1 && (0..t.order() as i64).contains(&g[0]) => Ok(g),
        _ => Err(Error::BadModel(format!("{g:?} is not an element of {group:?}"))),
    }
}

/// All residue vectors of `∏ Z/n_i`, lexicographically.
fn residues(orders: &[usize]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &o in orders {
        out = out.into_iter().flat_map(|p| (0..o as i64).map(move |c| [p.as_slice(), &[c]].concat())).collect();
    }
    out
}

pub(crate) fn element_label(group: &FiberGroup, e: &[i64]) -> String {
    match group {
        FiberGroup::Table(g) => g.label(e[0] as usize).to_string(),
        _ => format!("[{}]", e.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")),
    }
}

/// The finite isotropy group with elements labeled by [`element_label`],
/// paired with their coordinates.
pub(crate) fn finite_group(group: &FiberGroup) -> Option<(FiniteGroup, Vec<Vec<i64>>)> {
    match group {
        FiberGroup::Lattice(_) => None,
        FiberGroup::Abelian(orders) => {
            let elems = residues(orders);
            let index = |e: &[i64]| elems.iter().position(|x| x == e).expect("residue");
            let table = elems
                .iter()
                .map(|a| {
                    elems
                        .iter()
                        .map(|b| index(&a.iter().zip(b).zip(orders).map(|((x, y), &o)| (x + y) % o as i64).collect::<Vec<_>>()))
                        .collect()
                })
                .collect();
            let labels = elems.iter().map(|e| element_label(group, e)).collect();
            Some((FiniteGroup::from_table(labels, table).expect("product of cyclic groups"), elems))
        }
        FiberGroup::Table(g) => Some((g.clone(), (0..g.order() as i64).map(|a| vec![a]).collect())),
    }
}
