use serde::{Deserialize, Serialize};

use super::{FiniteGroupoid, GroupoidBuilder};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupTable", into = "GroupTable")]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupTable {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl TryFrom<GroupTable> for FiniteGroup {
    type Error = Error;

    fn try_from(t: GroupTable) -> Result<Self> {
        FiniteGroup::from_table(t.labels, t.table)
    }
}

impl From<FiniteGroup> for GroupTable {
    fn from(g: FiniteGroup) -> Self {
        GroupTable { labels: g.labels, table: g.table }
    }
}

impl FiniteGroup {
    /// Checks closure, associativity, identity and inverses.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::BadGroup("empty table".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&c| c >= n)) {
            return Err(Error::BadGroup("table is not closed".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::BadGroup(format!(
                            "({}{}){} differs from {}({}{})",
                            labels[a], labels[b], labels[c], labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::BadGroup("no identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::BadGroup(format!("{} has no inverse", labels[a])))?;
            inverses.push(inv);
        }
        Ok(FiniteGroup { labels, table, identity, inverses })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs positive order");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table((0..n).map(|k| k.to_string()).collect(), table).expect("cyclic table")
    }

    /// Permutations of three letters, the smallest non-abelian group.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        let labels = perms.iter().map(|p| format!("s{}{}{}", p[0], p[1], p[2])).collect();
        FiniteGroup::from_table(labels, table).expect("S3 table")
    }

    /// Direct product; elements are ordered lexicographically.
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order(), other.order());
        let labels = (0..n * m).map(|i| format!("{}.{}", self.labels[i / m], other.labels[i % m])).collect();
        let table = (0..n * m)
            .map(|a| (0..n * m).map(|b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m)).collect())
            .collect();
        FiniteGroup::from_table(labels, table).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

/// Fiber of a group bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberSpec {
    Group(FiniteGroup),
    /// The ball `[-radius, radius]^dim` of `Z^dim`. Not closed under
    /// composition; the resulting unit is flagged as truncated.
    LatticeBall { dim: usize, radius: usize },
}

/// The pair groupoid on `0..n`: arrows `(i,j)` from `j` to `i`,
/// `(i,j)(j,k) = (i,k)`, `(i,j)⁻¹ = (j,i)`, counting weights.
pub fn build_pair_groupoid<T: Real>(n: usize) -> FiniteGroupoid<T> {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    pair_groupoid_on(&labels)
}

/// The pair groupoid over the given unit labels, counting weights.
pub fn pair_groupoid_on<T: Real>(labels: &[String]) -> FiniteGroupoid<T> {
    let mut b = GroupoidBuilder::new();
    pair_arrows(&mut b, labels);
    b.build().expect("pair groupoid labels are valid")
}

pub(crate) fn pair_label(i: &str, j: &str) -> String {
    format!("({i},{j})")
}

pub(crate) fn pair_arrows<T: Real>(b: &mut GroupoidBuilder<T>, labels: &[String]) {
    for u in labels {
        b.unit(u.clone());
    }
    for i in labels {
        for j in labels {
            b.arrow(pair_label(i, j), j.clone(), i.clone(), pair_label(j, i), T::one());
        }
    }
    for i in labels {
        for j in labels {
            for k in labels {
                b.compose(pair_label(i, j), pair_label(j, k), pair_label(i, k));
            }
        }
    }
}

/// A group bundle over `base`: `d = r` on every arrow, counting weights.
/// Arrow labels are `unit:element`.
pub fn build_group_bundle<T: Real>(base: &[&str], fibers: &[FiberSpec]) -> Result<FiniteGroupoid<T>> {
    if base.len() != fibers.len() {
        return Err(Error::Structure(format!("{} base points but {} fibers", base.len(), fibers.len())));
    }
    let mut b = GroupoidBuilder::new();
    for (&x, fiber) in base.iter().zip(fibers) {
        b.unit(x);
        match fiber {
            FiberSpec::Group(grp) => group_fiber(&mut b, x, grp),
            FiberSpec::LatticeBall { dim, radius } => {
                lattice_ball_fiber(&mut b, x, *dim, *radius);
                b.truncated(x);
            }
        }
    }
    b.build()
}

pub(crate) fn group_fiber<T: Real>(b: &mut GroupoidBuilder<T>, unit: &str, grp: &FiniteGroup) {
    let lab = |a: usize| format!("{unit}:{}", grp.label(a));
    for a in 0..grp.order() {
        b.arrow(lab(a), unit, unit, lab(grp.inverse(a)), T::one());
    }
    for a in 0..grp.order() {
        for c in 0..grp.order() {
            b.compose(lab(a), lab(c), lab(grp.mul(a, c)));
        }
    }
}

pub(crate) fn lattice_ball_fiber<T: Real>(b: &mut GroupoidBuilder<T>, unit: &str, dim: usize, radius: usize) {
    let points = lattice_ball(dim, radius as i64);
    let lab = |p: &[i64]| {
        let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        format!("{unit}:[{}]", coords.join(","))
    };
    for p in &points {
        let neg: Vec<i64> = p.iter().map(|c| -c).collect();
        b.arrow(lab(p), unit, unit, lab(&neg), T::one());
    }
    for p in &points {
        for q in &points {
            let s: Vec<i64> = p.iter().zip(q).map(|(a, c)| a + c).collect();
            if s.iter().all(|c| c.unsigned_abs() as usize <= radius) {
                b.compose(lab(p), lab(q), lab(&s));
            }
        }
    }
}

/// Points of `[-r, r]^dim` in lexicographic order.
pub fn lattice_ball(dim: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}
