use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A continuous, compactly supported, piecewise-linear real function.
///
/// The function interpolates its nodes linearly and vanishes outside the
/// first and last abscissa. An empty node list is the zero function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct BumpFunction {
    nodes: Vec<(f64, f64)>,
}

impl BumpFunction {
    pub fn new(nodes: Vec<(f64, f64)>) -> Result<Self> {
        if nodes.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::Structure("bump nodes must be finite".into()));
        }
        if nodes.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Structure("bump abscissae must increase strictly".into()));
        }
        if let (Some(first), Some(last)) = (nodes.first(), nodes.last()) {
            if first.1 != 0.0 || last.1 != 0.0 {
                return Err(Error::Structure("bump must vanish at its first and last node".into()));
            }
        }
        Ok(BumpFunction { nodes })
    }

    pub fn zero() -> Self {
        BumpFunction { nodes: Vec::new() }
    }

    /// The hat of height `height` rising on `[a, b]` and falling on `[b, c]`.
    pub fn hat(a: f64, b: f64, c: f64, height: f64) -> Result<Self> {
        Self::new(vec![(a, 0.0), (b, height), (c, 0.0)])
    }

    /// Equal to `height` on `[b, c]`, linear on `[a, b]` and `[c, d]`.
    pub fn plateau(a: f64, b: f64, c: f64, d: f64, height: f64) -> Result<Self> {
        Self::new(vec![(a, 0.0), (b, height), (c, height), (d, 0.0)])
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = &self.nodes;
        if n.is_empty() || x <= n[0].0 || x >= n[n.len() - 1].0 {
            return 0.0;
        }
        let k = n.partition_point(|p| p.0 <= x);
        let (x0, y0) = n[k - 1];
        let (x1, y1) = n[k];
        if x == x0 {
            return y0;
        }
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Closed support as a sorted union of disjoint intervals.
    pub fn support(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for w in self.nodes.windows(2) {
            let ((a, ya), (b, yb)) = (w[0], w[1]);
            if ya == 0.0 && yb == 0.0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.1 == a => last.1 = b,
                _ => out.push((a, b)),
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.nodes.iter().all(|n| n.1 == 0.0)
    }

    pub fn sup_abs(&self) -> f64 {
        self.nodes.iter().fold(0.0, |m, n| m.max(n.1.abs()))
    }

    /// `max |κ(λ)|` over the given points.
    pub fn sup_on(&self, points: impl IntoIterator<Item = f64>) -> f64 {
        points.into_iter().fold(0.0, |m, x| m.max(self.eval(x).abs()))
    }
}

impl TryFrom<Vec<(f64, f64)>> for BumpFunction {
    type Error = Error;

    fn try_from(nodes: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(nodes)
    }
}

impl From<BumpFunction> for Vec<(f64, f64)> {
    fn from(b: BumpFunction) -> Self {
        b.nodes
    }
}
