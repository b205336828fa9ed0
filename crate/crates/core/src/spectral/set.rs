use std::fmt::Write;

use crate::error::{Error, Result};
use crate::spectral::BumpFunction;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumKind {
    Exact,
    /// A sampled curve; consecutive samples of the underlying set are at
    /// most `step` apart.
    Sampled { step: f64 },
}

/// A finite spectral set, possibly standing in for a continuum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSet {
    points: Vec<C64>,
    kind: SpectrumKind,
}

/// A Hausdorff distance together with the error carried by sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hausdorff {
    pub value: f64,
    pub resolution: f64,
}

impl Hausdorff {
    pub fn within(&self, tol: f64) -> bool {
        self.value <= tol + self.resolution
    }
}

const REAL_AXIS: f64 = 1e-12;

impl SpectrumSet {
    pub fn exact(points: Vec<C64>) -> Self {
        SpectrumSet { points, kind: SpectrumKind::Exact }
    }

    pub fn exact_real(points: impl IntoIterator<Item = f64>) -> Self {
        Self::exact(points.into_iter().map(|x| C64::new(x, 0.0)).collect())
    }

    pub fn sampled(points: Vec<C64>, step: f64) -> Self {
        SpectrumSet { points, kind: SpectrumKind::Sampled { step } }
    }

    /// Samples the real interval `[a, b]` with at most `step` between points.
    pub fn interval(a: f64, b: f64, step: f64) -> Self {
        let n = (((b - a) / step).ceil() as usize).max(1);
        let h = (b - a) / n as f64;
        Self::sampled((0..=n).map(|i| C64::new(a + h * i as f64, 0.0)).collect(), h)
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    /// Grid step; zero for exact sets.
    pub fn step(&self) -> f64 {
        match self.kind {
            SpectrumKind::Exact => 0.0,
            SpectrumKind::Sampled { step } => step,
        }
    }

    pub fn is_real(&self) -> bool {
        let scale = self.points.iter().fold(1.0f64, |m, z| m.max(z.norm()));
        self.points.iter().all(|z| z.im.abs() <= REAL_AXIS * scale)
    }

    /// Real parts in increasing order.
    pub fn sorted_reals(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.points.iter().map(|z| z.re).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn min_re(&self) -> f64 {
        self.points.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
    }

    pub fn max_re(&self) -> f64 {
        self.points.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Connected components of a real set. Points closer than `join` (or
    /// than the grid step, whichever is larger) are joined.
    pub fn components(&self, join: f64) -> Vec<(f64, f64)> {
        let join = join.max(self.step() * (1.0 + 1e-9));
        let mut out: Vec<(f64, f64)> = Vec::new();
        for x in self.sorted_reals() {
            match out.last_mut() {
                Some(last) if x - last.1 <= join => last.1 = x,
                _ => out.push((x, x)),
            }
        }
        out
    }

    /// Distance from `z` to the nearest point of the set.
    pub fn distance_to(&self, z: C64) -> f64 {
        self.points.iter().map(|p| (p - z).norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn hausdorff(&self, other: &SpectrumSet) -> Hausdorff {
        let resolution = (self.step() + other.step()) / 2.0;
        let value = if self.is_empty() && other.is_empty() {
            0.0
        } else if self.is_empty() || other.is_empty() {
            f64::INFINITY
        } else if self.is_real() && other.is_real() {
            let (a, b) = (self.sorted_reals(), other.sorted_reals());
            directed_real(&a, &b).max(directed_real(&b, &a))
        } else {
            let d = |x: &SpectrumSet, y: &SpectrumSet| x.points.iter().map(|&z| y.distance_to(z)).fold(0.0, f64::max);
            d(self, other).max(d(other, self))
        };
        Hausdorff { value, resolution }
    }

    /// CSV dump: a `# kind=...` metadata line, a `re,im` header, then rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        match self.kind {
            SpectrumKind::Exact => writeln!(s, "# kind=exact").unwrap(),
            SpectrumKind::Sampled { step } => writeln!(s, "# kind=sampled,step={step}").unwrap(),
        }
        writeln!(s, "re,im").unwrap();
        for z in &self.points {
            writeln!(s, "{},{}", z.re, z.im).unwrap();
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut kind = None;
        let mut points = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |message: String| Error::Parse { line: i + 1, message };
            if let Some(meta) = line.strip_prefix("# kind=") {
                kind = Some(if meta == "exact" {
                    SpectrumKind::Exact
                } else if let Some(step) = meta.strip_prefix("sampled,step=") {
                    let step = step.parse().map_err(|_| err(format!("bad step {step:?}")))?;
                    SpectrumKind::Sampled { step }
                } else {
                    return Err(err(format!("unknown kind {meta:?}")));
                });
            } else if line.is_empty() || line.starts_with('#') || line == "re,im" {
                continue;
            } else {
                let (re, im) = line.split_once(',').ok_or_else(|| err("expected re,im".into()))?;
                let re = re.trim().parse().map_err(|_| err(format!("bad number {re:?}")))?;
                let im = im.trim().parse().map_err(|_| err(format!("bad number {im:?}")))?;
                points.push(C64::new(re, im));
            }
        }
        let kind = kind.ok_or(Error::Parse { line: 1, message: "missing kind line".into() })?;
        Ok(SpectrumSet { points, kind })
    }
}

fn directed_real(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .map(|&x| {
            let k = b.partition_point(|&y| y < x);
            let right = b.get(k).map_or(f64::INFINITY, |&y| y - x);
            let left = if k > 0 { x - b[k - 1] } else { f64::INFINITY };
            left.min(right)
        })
        .fold(0.0, f64::max)
}

/// Closed union of boundary spectra, with the coarsest input resolution.
pub fn essential_spectrum_union(spectra: &[SpectrumSet]) -> SpectrumSet {
    if let [single] = spectra {
        return single.clone();
    }
    let points = spectra.iter().flat_map(|s| s.points.iter().copied()).collect();
    if spectra.iter().all(|s| s.kind == SpectrumKind::Exact) {
        return SpectrumSet::exact(points);
    }
    let step = spectra.iter().map(SpectrumSet::step).fold(0.0, f64::max);
    SpectrumSet::sampled(points, step)
}

/// Distance between `supp κ` and `S`, reduced by half the grid step of a
/// sampled set. Zero means the support meets the set. An empty support or
/// an empty set gives `∞`.
pub fn support_gap(kappa: &BumpFunction, s: &SpectrumSet) -> f64 {
    let support = kappa.support();
    let raw = s
        .points()
        .iter()
        .map(|z| {
            support
                .iter()
                .map(|&(a, b)| {
                    let dx = if z.re < a { a - z.re } else if z.re > b { z.re - b } else { 0.0 };
                    dx.hypot(z.im)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .fold(f64::INFINITY, f64::min);
    if raw.is_infinite() {
        return raw;
    }
    (raw - s.step() / 2.0).max(0.0)
}
