//! Hermitian eigendecomposition and joint eigenbases of commuting unitaries.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{c, Real};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and column eigenvectors of a Hermitian matrix,
/// by cyclic complex Jacobi rotations.
pub fn hermitian_eigen<T: Real>(a: &Matrix<T>) -> Result<(Vec<T>, Matrix<T>)> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "eigen of non-square {:?}",
            a.dim()
        )));
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let scale = a.frobenius_norm().max(T::min_positive_value());
    let eps = T::epsilon() * scale * T::lit(0.01);

    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= eps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= eps * T::lit(1e-3) {
                    continue;
                }
                let phase = apq / c(r, T::zero());
                let (app, aqq) = (m[(p, p)].re, m[(q, q)].re);
                let tau = (aqq - app) / (T::lit(2.0) * r);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = t * cs;
                // Block U = diag(1, e^{-iφ}) · [[c, s], [-s, c]].
                let e = phase.conj();
                let u = [
                    [c(cs, T::zero()), c(sn, T::zero())],
                    [e * c(-sn, T::zero()), e * c(cs, T::zero())],
                ];
                rotate(&mut m, &mut v, p, q, &u);
                m[(p, q)] = Complex::zero();
                m[(q, p)] = Complex::zero();
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let vals: Vec<T> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| {
        vals[i]
            .partial_cmp(&vals[j])
            .unwrap_or(Ordering::Equal)
            .then(i.cmp(&j))
    });
    let mut vecs = Matrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            vecs[(r, new)] = v[(r, old)];
        }
    }
    Ok((order.iter().map(|&i| vals[i]).collect(), vecs))
}

/// `M ← U† M U`, `V ← V U` for a unitary acting on coordinates `p`, `q`.
fn rotate<T: Real>(
    m: &mut Matrix<T>,
    v: &mut Matrix<T>,
    p: usize,
    q: usize,
    u: &[[Complex<T>; 2]; 2],
) {
    let n = m.rows();
    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = mkp * u[0][0] + mkq * u[1][0];
        m[(k, q)] = mkp * u[0][1] + mkq * u[1][1];
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * u[0][0] + vkq * u[1][0];
        v[(k, q)] = vkp * u[0][1] + vkq * u[1][1];
    }
    for k in 0..n {
        let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = u[0][0].conj() * mpk + u[1][0].conj() * mqk;
        m[(q, k)] = u[0][1].conj() * mpk + u[1][1].conj() * mqk;
    }
}

/// Joint eigenbasis of a family of commuting unitaries.
#[derive(Clone, Debug)]
pub struct JointEigenbasis<T: Real> {
    /// Unit eigenvectors with the first nonzero amplitude real positive.
    pub vectors: Vec<Vec<Complex<T>>>,
    /// Eigenvalue phases in `[0, 2π)`, one tuple per vector, one entry per input operator.
    pub phases: Vec<Vec<T>>,
    pub projectors: Vec<Matrix<T>>,
}

/// Rank-one joint eigenprojectors of commuting unitaries, sorted
/// lexicographically by their eigenvalue-phase tuples.
pub fn joint_eigenprojectors<T: Real>(ops: &[Matrix<T>]) -> Result<Vec<Matrix<T>>> {
    Ok(joint_eigenbasis(ops)?.projectors)
}

pub fn joint_eigenbasis<T: Real>(ops: &[Matrix<T>]) -> Result<JointEigenbasis<T>> {
    let dim = match ops.first() {
        Some(op) if op.is_square() => op.rows(),
        Some(op) => {
            return Err(Error::Dimension(format!(
                "non-square operator {:?}",
                op.dim()
            )))
        }
        None => return Err(Error::Dimension("no operators".into())),
    };
    if ops.iter().any(|op| op.dim() != (dim, dim)) {
        return Err(Error::Dimension("operators of mixed dimension".into()));
    }
    let tol = T::tol();
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            let dev = (a * b).max_abs_diff(&(b * a));
            if dev > tol {
                return Err(Error::NonCommuting(dev.to_f64().unwrap_or(f64::NAN)));
            }
        }
    }

    // Each block is an orthonormal basis (as columns) of a joint eigenspace.
    let mut blocks = vec![Matrix::identity(dim)];
    let half = c(T::lit(0.5), T::zero());
    let minus_half_i = c(T::zero(), T::lit(-0.5));
    for op in ops {
        let adj = op.adjoint();
        let hermitian_parts = [(op + &adj).scale(half), (op - &adj).scale(minus_half_i)];
        for part in &hermitian_parts {
            blocks = blocks
                .into_iter()
                .map(|block| split_block(&block, part))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
        }
    }
    if let Some(b) = blocks.iter().find(|b| b.cols() != 1) {
        return Err(Error::Degenerate(b.cols()));
    }

    let mut entries: Vec<(Vec<T>, Vec<Complex<T>>)> = blocks
        .into_iter()
        .map(|b| {
            let v = fix_phase(b.column(0));
            let phases = ops
                .iter()
                .map(|op| phase_angle(expectation(op, &v)))
                .collect();
            (phases, v)
        })
        .collect();
    entries.sort_by(|a, b| compare_phases(&a.0, &b.0));

    let projectors = entries.iter().map(|(_, v)| Matrix::outer(v, v)).collect();
    let (phases, vectors) = entries.into_iter().unzip();
    Ok(JointEigenbasis {
        vectors,
        phases,
        projectors,
    })
}

/// Splits the span of `block` into eigenspaces of the Hermitian `h` restricted to it.
fn split_block<T: Real>(block: &Matrix<T>, h: &Matrix<T>) -> Result<Vec<Matrix<T>>> {
    if block.cols() == 1 {
        return Ok(vec![block.clone()]);
    }
    let restricted = &(&block.adjoint() * h) * block;
    let (vals, vecs) = hermitian_eigen(&restricted)?;
    let cluster_tol = T::tol().sqrt();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &val) in vals.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if (val - vals[*g.last().unwrap()]).abs() <= cluster_tol => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let mut sub = Matrix::zeros(vecs.rows(), g.len());
            for (col, &i) in g.iter().enumerate() {
                for r in 0..vecs.rows() {
                    sub[(r, col)] = vecs[(r, i)];
                }
            }
            block.matmul(&sub)
        })
        .collect()
}

fn expectation<T: Real>(op: &Matrix<T>, v: &[Complex<T>]) -> Complex<T> {
    op.apply(v)
        .iter()
        .zip(v)
        .fold(Complex::zero(), |acc, (a, b)| acc + b.conj() * a)
}

fn fix_phase<T: Real>(mut v: Vec<Complex<T>>) -> Vec<Complex<T>> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    let lead = v
        .iter()
        .copied()
        .find(|z| z.norm() > T::tol().sqrt())
        .unwrap_or(Complex::zero());
    let rot = if lead.is_zero() {
        c(T::one() / norm, T::zero())
    } else {
        lead.conj() / c(lead.norm() * norm, T::zero())
    };
    for z in &mut v {
        *z = *z * rot;
    }
    v
}

/// Argument of `z` mapped into `[0, 2π)`, with values within tolerance of 2π snapped to 0.
pub fn phase_angle<T: Real>(z: Complex<T>) -> T {
    let tau = T::lit(TAU);
    let mut a = z.arg();
    if a < T::zero() {
        a = a + tau;
    }
    if (tau - a).abs() <= T::tol().sqrt() || a.abs() <= T::tol().sqrt() {
        T::zero()
    } else {
        a
    }
}

fn compare_phases<T: Real>(a: &[T], b: &[T]) -> Ordering {
    let tol = T::tol().sqrt();
    for (x, y) in a.iter().zip(b) {
        if (*x - *y).abs() > tol {
            return x.partial_cmp(y).unwrap_or(Ordering::Equal);
        }
    }
    Ordering::Equal
}
