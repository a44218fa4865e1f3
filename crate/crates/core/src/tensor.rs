//! Tensor-product structure: partial traces and rank-one factorization.

use num_complex::Complex;
use num_traits::Zero;

use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{c, Real};

/// Partial trace of a `2^n`-dimensional operator, keeping the listed qubits
/// (0 = most significant tensor factor) in their original order.
pub fn partial_trace<T: Real>(rho: &Matrix<T>, n: usize, keep: &[usize]) -> Result<Matrix<T>> {
    let dim = 1usize << n;
    if rho.dim() != (dim, dim) {
        return Err(Error::Dimension(format!(
            "expected {dim}x{dim}, got {:?}",
            rho.dim()
        )));
    }
    if keep.iter().any(|&q| q >= n) || keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Validation(format!(
            "invalid kept qubits {keep:?} for n = {n}"
        )));
    }
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let bit = |q: usize| 1usize << (n - 1 - q);
    let embed = |kept_bits: usize, traced_bits: usize| {
        let mut idx = 0;
        for (i, &q) in keep.iter().enumerate() {
            if kept_bits >> (keep.len() - 1 - i) & 1 == 1 {
                idx |= bit(q);
            }
        }
        for (i, &q) in traced.iter().enumerate() {
            if traced_bits >> (traced.len() - 1 - i) & 1 == 1 {
                idx |= bit(q);
            }
        }
        idx
    };
    let kd = 1usize << keep.len();
    let td = 1usize << traced.len();
    let mut out = Matrix::zeros(kd, kd);
    for i in 0..kd {
        for j in 0..kd {
            let mut acc = Complex::zero();
            for t in 0..td {
                acc = acc + rho[(embed(i, t), embed(j, t))];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Splits `m` into `A ⊗ B` (A of size `d1`, B of size `d2`) when its
/// realignment has numerical rank one.
///
/// `A` is returned with unit Frobenius norm and its trace real non-negative
/// (or, for traceless `A`, its first nonzero entry real positive).
pub fn factorize_tensor<T: Real>(
    m: &Matrix<T>,
    d1: usize,
    d2: usize,
) -> Option<(Matrix<T>, Matrix<T>)> {
    let d = d1 * d2;
    if m.dim() != (d, d) {
        return None;
    }
    // R[(i1,j1),(i2,j2)] = M[(i1,i2),(j1,j2)], so M = A⊗B iff R = vec(A) vec(B)^T.
    let mut r = Matrix::zeros(d1 * d1, d2 * d2);
    for i1 in 0..d1 {
        for j1 in 0..d1 {
            for i2 in 0..d2 {
                for j2 in 0..d2 {
                    r[(i1 * d1 + j1, i2 * d2 + j2)] = m[(i1 * d2 + i2, j1 * d2 + j2)];
                }
            }
        }
    }
    let gram = &r.adjoint() * &r;
    let (vals, vecs) = hermitian_eigen(&gram).ok()?;
    let top = *vals.last()?;
    if top <= T::zero() {
        return None;
    }
    let w = vecs.column(vecs.cols() - 1);
    let a_vec = r.apply(&w);
    let b_vec: Vec<Complex<T>> = w.iter().map(Complex::conj).collect();

    let mut a = Matrix::from_vec(d1, d1, a_vec).ok()?;
    let mut b = Matrix::from_vec(d2, d2, b_vec).ok()?;
    let norm = a.frobenius_norm();
    let tr = a.trace().ok()?;
    let lead = if tr.norm() > T::tol() * norm {
        tr
    } else {
        *a.as_slice().iter().find(|z| z.norm() > T::tol() * norm)?
    };
    let rot = lead.conj() / c(lead.norm(), T::zero());
    a = a.scale(rot / c(norm, T::zero()));
    b = b.scale(c(norm, T::zero()) / rot);

    (a.kron(&b).max_abs_diff(m) < T::recon_tol()).then_some((a, b))
}
