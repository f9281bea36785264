//! Dense helpers on top of nalgebra's SVD: singular values, numerical rank
//! and orthonormal kernels.

use alloc::vec::Vec;
use nalgebra::DMatrix;

/// Singular values in non-increasing order.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Number of singular values above `tol · σ_max`; zero for the zero matrix.
pub fn numeric_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    let sv = singular_values(m);
    let max = sv.first().copied().unwrap_or(0.0);
    if max <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}

/// Rank with the threshold `tol · max(σ_max, floor)`.
///
/// Used where the matrix has a natural unit scale, so that round-off noise in
/// an otherwise zero matrix is not promoted to full rank.
pub fn numeric_rank_floored(m: &DMatrix<f64>, tol: f64, floor: f64) -> usize {
    let sv = singular_values(m);
    let max = sv.first().copied().unwrap_or(0.0).max(floor);
    if max <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}

/// Orthonormal basis of the (numerical) kernel, one basis vector per column.
///
/// Singular values `≤ tol · σ_max` count as zero. A matrix with no rows, or
/// the zero matrix, has the whole space as kernel.
pub fn null_space(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = m.ncols();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let rows = m.nrows().max(n);
    let mut padded = DMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let mut cols: Vec<usize> = (0..n)
        .filter(|&i| max <= 0.0 || svd.singular_values[i] <= tol * max)
        .collect();
    cols.sort_unstable();
    let mut basis = DMatrix::zeros(n, cols.len());
    for (c, &i) in cols.iter().enumerate() {
        for r in 0..n {
            basis[(r, c)] = v_t[(i, r)];
        }
    }
    basis
}

/// Largest absolute entry.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// Largest absolute entry of `a − b`; infinite on shape mismatch.
pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

/// Euclidean norm of a slice.
pub fn norm(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_zero_and_identity() {
        assert_eq!(numeric_rank(&DMatrix::zeros(3, 5), 1e-8), 0);
        assert_eq!(numeric_rank(&DMatrix::identity(4, 4), 1e-8), 4);
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let k = null_space(&m, 1e-9);
        assert_eq!(k.ncols(), 2);
        assert!(max_abs(&(&m * &k)) < 1e-12);
        let gram = k.transpose() * &k;
        assert!(max_abs_diff(&gram, &DMatrix::identity(2, 2)) < 1e-12);
    }

    #[test]
    fn null_space_of_empty_rows_is_everything() {
        let k = null_space(&DMatrix::zeros(0, 4), 1e-9);
        assert_eq!(k.ncols(), 4);
    }

    #[test]
    fn floored_rank_ignores_noise() {
        let m = DMatrix::from_element(2, 2, 1e-17);
        assert_eq!(numeric_rank(&m, 1e-8), 1);
        assert_eq!(numeric_rank_floored(&m, 1e-8, 1.0), 0);
    }
}
