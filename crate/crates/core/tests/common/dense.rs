//! Dense real symmetric linear algebra by cyclic Jacobi rotations, with no
//! shared code with the library solvers.

pub type Dense = Vec<Vec<f64>>;

/// Eigenvalues ascending and the matching orthonormal eigenvectors as
/// columns.
pub fn jacobi(a: &Dense) -> (Vec<f64>, Dense) {
    let n = a.len();
    let mut a = a.clone();
    let mut v: Dense = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for _ in 0..200 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta == 0.0 { 1.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
                let (cs, sn) = (1.0 / (t * t + 1.0).sqrt(), t / (t * t + 1.0).sqrt());
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = cs * akp - sn * akq;
                    a[k][q] = sn * akp + cs * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = cs * apk - sn * aqk;
                    a[q][k] = sn * apk + cs * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = cs * vp - sn * vq;
                    row[q] = sn * vp + cs * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = (0..n).map(|r| order.iter().map(|&c| v[r][c]).collect()).collect();
    (values, vectors)
}

/// `φ(A) = V φ(Λ) Vᵀ`.
pub fn apply(a: &Dense, phi: impl Fn(f64) -> f64) -> Dense {
    let (vals, v) = jacobi(a);
    let n = a.len();
    let d: Vec<f64> = vals.iter().map(|&x| phi(x)).collect();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| v[i][k] * d[k] * v[j][k]).sum()).collect()).collect()
}

/// `‖D A‖` for the diagonal `D` given by `rows`, as `sqrt λ_max(A D² A)`.
pub fn row_restricted_norm(a: &Dense, rows: &[usize]) -> f64 {
    let n = a.len();
    let g: Dense = (0..n).map(|i| (0..n).map(|j| rows.iter().map(|&k| a[k][i] * a[k][j]).sum()).collect()).collect();
    jacobi(&g).0.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// The Jacobi matrix with unit hopping and potential `v` on `[-L, L]`.
pub fn schrodinger(radius: usize, v: impl Fn(i64) -> f64) -> Dense {
    let l = radius as i64;
    let n = 2 * radius + 1;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => v(i as i64 - l),
                    1 => 1.0,
                    _ => 0.0,
                })
                .collect()
        })
        .collect()
}
