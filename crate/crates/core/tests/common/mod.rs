//! Random finite groupoids with a known structure, used as oracles.
//!
//! Every finite groupoid is a disjoint union of transitive pieces, and each
//! transitive piece is isomorphic to `orbit × orbit × G` with
//! `(i,g,j)(j,h,k) = (i,gh,k)`. Arrows are labelled `a{i}_{g}_{j}` with
//! global unit indices, so tests can decode them without the stored table.
//! Right-invariant weights are functions of the range: `λ(ξ) = c(r(ξ))`.

#![allow(dead_code)]

pub mod dense;

use std::collections::BTreeMap;
use std::sync::Arc;

use gloc::algebra::{Kernel, UnitFunction};
use gloc::groupoid::{FiniteGroup, FiniteGroupoid, GroupoidBuilder, UnitSet};
use gloc::{Complex, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone)]
pub struct Piece {
    pub units: Vec<usize>,
    pub group: FiniteGroup,
}

#[derive(Debug, Clone)]
pub struct Known<T: Real> {
    pub g: Arc<FiniteGroupoid<T>>,
    pub pieces: Vec<Piece>,
    /// Piece index of every unit.
    pub piece_of: Vec<usize>,
    /// `c(x)`, the weight of every arrow with range `x`.
    pub c: Vec<T>,
}

/// Decoded arrow `(range, group element, source)`.
pub type Triple = (usize, usize, usize);

pub fn arrow_label(t: Triple) -> String {
    format!("a{}_{}_{}", t.0, t.1, t.2)
}

pub fn unit_label(i: usize) -> String {
    format!("u{i}")
}

fn small_group(rng: &mut ChaCha8Rng) -> FiniteGroup {
    match rng.random_range(0..6) {
        0 | 1 => FiniteGroup::cyclic(1),
        2 => FiniteGroup::cyclic(2),
        3 => FiniteGroup::cyclic(3),
        4 => FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)),
        _ => FiniteGroup::symmetric3(),
    }
}

/// A positive weight: `1` when `counting`, else one of a few exact fractions.
fn weight<T: Real>(rng: &mut ChaCha8Rng, counting: bool) -> T {
    if counting {
        return T::one();
    }
    let num = T::from_i64(rng.random_range(1..=7)).unwrap();
    num / T::from_i64(rng.random_range(1..=4)).unwrap()
}

pub fn assemble<T: Real>(pieces: Vec<Piece>, c: Vec<T>) -> Known<T> {
    let n: usize = pieces.iter().map(|p| p.units.len()).sum();
    let mut piece_of = vec![0; n];
    let mut b = GroupoidBuilder::new();
    for i in 0..n {
        b.unit(unit_label(i));
    }
    for (pi, p) in pieces.iter().enumerate() {
        for &i in &p.units {
            piece_of[i] = pi;
        }
        let grp = &p.group;
        for &i in &p.units {
            for g in 0..grp.order() {
                for &j in &p.units {
                    b.arrow(arrow_label((i, g, j)), unit_label(j), unit_label(i), arrow_label((j, grp.inverse(g), i)), c[i].clone());
                }
            }
        }
        for &i in &p.units {
            for g in 0..grp.order() {
                for &j in &p.units {
                    for h in 0..grp.order() {
                        for &k in &p.units {
                            b.compose(arrow_label((i, g, j)), arrow_label((j, h, k)), arrow_label((i, grp.mul(g, h), k)));
                        }
                    }
                }
            }
        }
    }
    let g = Arc::new(b.build().expect("random groupoid labels are valid"));
    Known { g, pieces, piece_of, c }
}

/// At most `max_units` units and `max_arrows` arrows, at least one piece.
pub fn random_groupoid<T: Real>(rng: &mut ChaCha8Rng, max_units: usize, max_arrows: usize, counting: bool) -> Known<T> {
    let mut pieces: Vec<Piece> = Vec::new();
    let (mut units, mut arrows) = (0, 0);
    for attempt in 0..12 {
        let k = rng.random_range(1..=4usize);
        let group = small_group(rng);
        let size = k * k * group.order();
        if units + k > max_units || arrows + size > max_arrows {
            continue;
        }
        pieces.push(Piece { units: (units..units + k).collect(), group });
        units += k;
        arrows += size;
        if attempt > 0 && rng.random_bool(0.3) {
            break;
        }
    }
    if pieces.is_empty() {
        pieces.push(Piece { units: vec![0], group: FiniteGroup::cyclic(1) });
        units = 1;
    }
    let c = (0..units).map(|_| weight(rng, counting)).collect();
    assemble(pieces, c)
}

/// One transitive piece with `2..=max_units` units.
pub fn random_transitive<T: Real>(rng: &mut ChaCha8Rng, max_units: usize, counting: bool) -> Known<T> {
    let k = rng.random_range(2..=max_units);
    let group = if k * k * 6 <= 60 { small_group(rng) } else { FiniteGroup::cyclic(rng.random_range(1..=2)) };
    let c = (0..k).map(|_| weight(rng, counting)).collect();
    assemble(vec![Piece { units: (0..k).collect(), group }], c)
}

pub fn random_complex<T: Real>(rng: &mut ChaCha8Rng) -> Complex<T> {
    let part = |rng: &mut ChaCha8Rng| T::from_i64(rng.random_range(-8..=8)).unwrap() / T::from_i64(4).unwrap();
    Complex::new(part(rng), part(rng))
}

/// A kernel with roughly `density` of the arrows in its support.
pub fn random_kernel<T: Real>(rng: &mut ChaCha8Rng, g: &Arc<FiniteGroupoid<T>>, density: f64) -> Kernel<T> {
    Kernel::from_fn(g.clone(), |_| if rng.random_bool(density) { random_complex(rng) } else { Complex::new(T::zero(), T::zero()) })
}

pub fn random_unit_function<T: Real>(rng: &mut ChaCha8Rng, g: &Arc<FiniteGroupoid<T>>) -> UnitFunction<T> {
    UnitFunction::from_fn(g.clone(), |_| random_complex(rng))
}

/// A random union of pieces, as a unit set.
pub fn random_invariant_set<T: Real>(rng: &mut ChaCha8Rng, k: &Known<T>) -> UnitSet {
    let mut set = UnitSet::new();
    for p in &k.pieces {
        if rng.random_bool(0.5) {
            set.extend(p.units.iter().map(|&i| k.g.unit_id(&unit_label(i)).unwrap()));
        }
    }
    set
}

impl<T: Real> Known<T> {
    pub fn decode(&self, label: &str) -> Triple {
        let parts: Vec<usize> = label[1..].split('_').map(|s| s.parse().unwrap()).collect();
        (parts[0], parts[1], parts[2])
    }

    /// Kernel values keyed by decoded arrow.
    pub fn table(&self, f: &Kernel<T>) -> BTreeMap<Triple, Complex<T>> {
        f.iter().map(|(a, v)| (self.decode(&self.g.arrow(a).label), v.clone())).collect()
    }

    /// `(f⋆h)(i,g,j) = Σ_{k,m} f(i,m,k) h(k,m⁻¹g,j) c(k)`, from the structure
    /// alone: `η = (i,m,k)` has `λ^{i}(η) = λ(η⁻¹) = c(k)`.
    pub fn convolve(&self, f: &Kernel<T>, h: &Kernel<T>) -> BTreeMap<Triple, Complex<T>> {
        let (ft, ht) = (self.table(f), self.table(h));
        let zero = Complex::new(T::zero(), T::zero());
        let mut out = BTreeMap::new();
        for p in &self.pieces {
            let grp = &p.group;
            for &i in &p.units {
                for g in 0..grp.order() {
                    for &j in &p.units {
                        let mut s = zero.clone();
                        for &k in &p.units {
                            for m in 0..grp.order() {
                                let a = ft.get(&(i, m, k)).cloned().unwrap_or_else(|| zero.clone());
                                let b = ht.get(&(k, grp.mul(grp.inverse(m), g), j)).cloned().unwrap_or_else(|| zero.clone());
                                s = s + (a * b).scale(self.c[k].clone());
                            }
                        }
                        if s != zero {
                            out.insert((i, g, j), s);
                        }
                    }
                }
            }
        }
        out
    }
}
