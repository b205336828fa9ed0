use faer::{Mat, Side};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::spectral::LowRank;
use crate::C64;

/// `‖D f‖` for `f = V C V*` with orthonormal `V` and diagonal `D`, through
/// the smaller Gram matrix of `D V C`. Rows with `d_i = 0` are skipped.
pub fn weighted_rows_norm(f: &LowRank, d: impl Fn(usize) -> f64) -> f64 {
    let rows: Vec<(usize, f64)> = (0..f.vectors.nrows()).map(|i| (i, d(i))).filter(|(_, w)| *w != 0.0).collect();
    let b = scaled_rows(f, &rows);
    largest_singular_value(&b)
}

pub(crate) fn scaled_rows(f: &LowRank, rows: &[(usize, f64)]) -> Mat<C64> {
    Mat::from_fn(rows.len(), f.rank(), |i, j| f.vectors[(rows[i].0, j)] * f.coefficients[j] * rows[i].1)
}

/// `‖B‖` as the square root of the top eigenvalue of the smaller of
/// `B*B` and `BB*`.
pub(crate) fn largest_singular_value(b: &Mat<C64>) -> f64 {
    if b.nrows() == 0 || b.ncols() == 0 {
        return 0.0;
    }
    let g = if b.ncols() <= b.nrows() { b.adjoint() * b } else { b * b.adjoint() };
    let ev = g.self_adjoint_eigenvalues(Side::Lower).expect("Gram eigenvalues");
    ev.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Normalized complex Gaussian vectors from a seeded ChaCha8 stream.
pub fn probe_states(dim: usize, count: usize, seed: u64) -> Vec<Vec<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut u: Vec<C64> = (0..dim)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    C64::new(re, im)
                })
                .collect();
            let norm = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            u.iter_mut().for_each(|z| *z /= norm);
            u
        })
        .collect()
}
