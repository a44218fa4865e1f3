//! Phase-space translation operators and the eigenbases of each striation.

use num_complex::Complex;

use crate::eigen::joint_eigenbasis;
use crate::error::{Error, Result};
use crate::field::{Basis, Field, FieldElement};
use crate::matrix::Matrix;
use crate::phase_space::{PhaseSpace, Point};
use crate::scalar::Real;

/// `T_(q,p) = X^{q_1} Z^{p_1} ⊗ ... ⊗ X^{q_n} Z^{p_n}` with `q` expanded in the
/// polynomial basis and `p` in the dual basis.
#[derive(Clone, Debug)]
pub struct TranslationOp<T: Real> {
    pub point: Point,
    pub q_bits: Vec<u8>,
    pub p_bits: Vec<u8>,
    pub matrix: Matrix<T>,
}

pub fn translation_op<T: Real>(field: &Field, point: &Point) -> TranslationOp<T> {
    let q_bits = field.expand(point.q, Basis::Primal);
    let p_bits = field.expand(point.p, Basis::Dual);
    let (x, z) = (Matrix::pauli(1), Matrix::pauli(3));
    let matrix = q_bits
        .iter()
        .zip(&p_bits)
        .map(|(&qi, &pi)| match (qi, pi) {
            (0, 0) => Matrix::identity(2),
            (1, 0) => x.clone(),
            (0, 1) => z.clone(),
            _ => &x * &z,
        })
        .reduce(|acc, f| acc.kron(&f))
        .expect("field degree is at least one");
    TranslationOp {
        point: *point,
        q_bits,
        p_bits,
        matrix,
    }
}

/// Pauli word for a Stokes index: digits `j_i ∈ {0,1,2,3}` ↔ `{I, σx, σy, σz}`,
/// first qubit most significant.
pub fn pauli_word<T: Real>(n: usize, index: usize) -> Matrix<T> {
    assert!(
        index < 1 << (2 * n),
        "Pauli index {index} out of range for n = {n}"
    );
    (0..n)
        .map(|i| Matrix::pauli((index >> (2 * (n - 1 - i))) & 3))
        .reduce(|acc, f| acc.kron(&f))
        .expect("n is at least one")
}

/// Digits of a Stokes index, first qubit first.
pub fn pauli_digits(n: usize, index: usize) -> Vec<usize> {
    (0..n).map(|i| (index >> (2 * (n - 1 - i))) & 3).collect()
}

/// The commuting translation group of one striation and its canonical eigenstates.
#[derive(Clone, Debug)]
pub struct StriationEigensystem<T: Real> {
    pub striation: usize,
    /// `T_{s·d}` indexed by `s`.
    pub ops: Vec<Matrix<T>>,
    pub vectors: Vec<Vec<Complex<T>>>,
    pub states: Vec<Matrix<T>>,
}

pub fn striation_eigensystem<T: Real>(
    space: &PhaseSpace,
    striation: usize,
) -> Result<StriationEigensystem<T>> {
    let field = space.field();
    let d = space.striations()[striation].direction;
    let shift = |s: FieldElement| Point::new(field.mul(s, d.q), field.mul(s, d.p));
    let ops: Vec<Matrix<T>> = field
        .elements()
        .map(|s| translation_op(field, &shift(s)).matrix)
        .collect();

    let tol = T::tol();
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            if (a * b).max_abs_diff(&(b * a)) > tol {
                return Err(Error::BasisDuality(striation));
            }
        }
    }

    let generators: Vec<Matrix<T>> = field
        .basis()
        .iter()
        .map(|&s| ops[s.index()].clone())
        .collect();
    let basis = joint_eigenbasis(&generators)?;
    Ok(StriationEigensystem {
        striation,
        ops,
        vectors: basis.vectors,
        states: basis
            .projectors
            .iter()
            .map(|p| snap_to_grid(p, space.order()))
            .collect(),
    })
}

/// Stabilizer projectors have entries in `(1/N)·{0, ±1, ±i, ...}`; rounding
/// residue below tolerance is removed so exact inputs give exact outputs.
fn snap_to_grid<T: Real>(m: &Matrix<T>, order: usize) -> Matrix<T> {
    let n = T::from_usize(order).expect("small order");
    let snap = |x: T| {
        let r = (x * n).round() / n;
        if (x - r).abs() < T::tol() {
            r
        } else {
            x
        }
    };
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m[(i, j)];
            out[(i, j)] = Complex::new(snap(z.re), snap(z.im));
        }
    }
    out
}

/// Eigensystems of every striation, in canonical striation order.
pub fn eigensystems<T: Real>(space: &PhaseSpace) -> Result<Vec<StriationEigensystem<T>>> {
    (0..space.striations().len())
        .map(|s| striation_eigensystem(space, s))
        .collect()
}

/// Finds the point `β` with `T_β = λ·u` for a unimodular `λ`.
pub fn find_translation<T: Real>(field: &Field, u: &Matrix<T>) -> Option<(Point, Complex<T>)> {
    let n = field.order();
    (0..n * n).find_map(|idx| {
        let pt = Point::from_index(idx, n);
        let t = translation_op::<T>(field, &pt).matrix;
        if t.dim() != u.dim() {
            return None;
        }
        let dim = T::from_usize(t.rows())?;
        let lambda = t.trace_product(&u.adjoint()).ok()? / Complex::new(dim, T::zero());
        (lambda.norm() > T::lit(0.5) && t.approx_eq(&u.scale(lambda), T::recon_tol()))
            .then_some((pt, lambda))
    })
}
