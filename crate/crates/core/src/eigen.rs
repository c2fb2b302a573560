//! Dense symmetric eigendecomposition via cyclic Jacobi rotations.
//!
//! Sufficient for the graph Laplacians handled here (a few hundred
//! vertices); converges quadratically and keeps the eigenvector matrix
//! orthogonal by construction.

use crate::scalar::Scalar;

/// Eigendecomposition of a symmetric matrix.
///
/// `values` are sorted ascending; `vectors[k]` is the unit eigenvector for
/// `values[k]`.
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<T>>,
}

/// Decompose the symmetric `n`×`n` matrix given in row-major order.
///
/// Off-diagonal mass is reduced until it falls below `tol` relative to the
/// initial Frobenius norm (floored at machine precision for the scalar).
pub fn symmetric_eigen<T: Scalar>(matrix: &[T], n: usize, tol: T) -> SymmetricEigen<T> {
    assert_eq!(matrix.len(), n * n, "matrix must be n*n");
    let mut a = matrix.to_vec();
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }

    let frobenius = a.iter().map(|&x| x * x).sum::<T>().sqrt();
    let threshold = (tol.max(T::epsilon() * T::from_f64(64.0).unwrap()))
        * frobenius.max(T::one());

    let off = |a: &[T]| -> T {
        let mut sum = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                sum += a[p * n + q] * a[p * n + q];
            }
        }
        (sum + sum).sqrt()
    };

    let max_sweeps = 64;
    for _ in 0..max_sweeps {
        if off(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= threshold / T::from_usize(n * n).unwrap() {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (T::two() * apq);
                let t = {
                    let sign = if theta >= T::zero() { T::one() } else { -T::one() };
                    sign / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[i * n + i].partial_cmp(&a[j * n + j]).unwrap_or(std::cmp::Ordering::Equal)
    });

    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
        .collect();
    SymmetricEigen { values, vectors }
}
