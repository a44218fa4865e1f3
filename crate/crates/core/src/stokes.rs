//! Generalized Stokes vectors and their Hadamard relation to Wigner functions.
//!
//! Stokes components are the unnormalized expectations `s_j = Tr(ρ Σ_j)`, so
//! `s_0 = 1` and the net-dependent matrix `H_{jα} = Tr(Σ_j A_α)` has ±1
//! entries with `S = H W` and `W = Hᵀ S / N²`.

use crate::error::{Error, Result};
use crate::field::{Basis, Field};
use crate::matrix::{Matrix, RealMatrix};
use crate::net::{NetId, QuantumNet};
use crate::pauli::pauli_word;
use crate::phase_space::Point;
use crate::scalar::Real;
use crate::wigner::{DensityState, WignerFunction};

#[derive(Clone, Debug, PartialEq)]
pub struct StokesVector<T: Real> {
    qubits: usize,
    s: Vec<T>,
}

impl<T: Real> StokesVector<T> {
    pub fn new(qubits: usize, s: Vec<T>) -> Result<Self> {
        if s.len() != 1 << (2 * qubits) {
            return Err(Error::Validation(format!(
                "Stokes vector for {qubits} qubits needs {} entries, got {}",
                1usize << (2 * qubits),
                s.len()
            )));
        }
        Ok(StokesVector { qubits, s })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn values(&self) -> &[T] {
        &self.s
    }
}

pub fn stokes_from_rho<T: Real>(state: &DensityState<T>) -> StokesVector<T> {
    let n = state.qubits();
    let s = (0..1usize << (2 * n))
        .map(|j| {
            state
                .rho()
                .trace_product(&pauli_word(n, j))
                .expect("matching dimensions")
                .re
        })
        .collect();
    StokesVector { qubits: n, s }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardMatrix {
    net: NetId,
    qubits: usize,
    size: usize,
    entries: Vec<i8>,
}

impl HadamardMatrix {
    pub fn net(&self) -> &NetId {
        &self.net
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    /// Side length `4^n`.
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.size + col]
    }

    pub fn to_real<T: Real>(&self) -> RealMatrix<T> {
        RealMatrix::from_fn(self.size, self.size, |i, j| {
            T::from_i8(self.get(i, j)).expect("±1")
        })
    }

    /// `H Hᵀ` in exact integer arithmetic.
    pub fn gram(&self) -> Vec<i64> {
        let n = self.size;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..n)
                    .map(|k| i64::from(self.get(i, k)) * i64::from(self.get(j, k)))
                    .sum();
            }
        }
        out
    }

    /// `S = H W`.
    pub fn stokes<T: Real>(&self, w: &WignerFunction<T>) -> Result<StokesVector<T>> {
        if w.net() != &self.net {
            return Err(Error::NetMismatch {
                expected: self.net.to_string(),
                found: w.net().to_string(),
            });
        }
        let s = (0..self.size)
            .map(|i| {
                w.values()
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| if self.get(i, j) > 0 { x } else { -x })
                    .sum()
            })
            .collect();
        StokesVector::new(self.qubits, s)
    }

    /// `W = Hᵀ S / N²`.
    pub fn wigner<T: Real>(&self, s: &StokesVector<T>) -> Result<WignerFunction<T>> {
        if s.qubits() != self.qubits {
            return Err(Error::Dimension(format!(
                "{}-qubit Stokes vector with a {}-qubit net",
                s.qubits(),
                self.qubits
            )));
        }
        let inv = T::one() / T::from_usize(self.size).expect("small size");
        let w = (0..self.size)
            .map(|a| {
                s.values()
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| if self.get(j, a) > 0 { x } else { -x })
                    .sum::<T>()
                    * inv
            })
            .collect();
        WignerFunction::new(self.qubits, self.net.clone(), w)
    }
}

pub fn hadamard_matrix<T: Real>(net: &QuantumNet<T>) -> Result<HadamardMatrix> {
    let n = net.qubits();
    let size = 1usize << (2 * n);
    let mut entries = Vec::with_capacity(size * size);
    for j in 0..size {
        let word = pauli_word::<T>(n, j);
        for a in net.point_ops() {
            let t = word.trace_product(a)?;
            let rounded = t.re.round();
            if (t.re - rounded).abs() > T::recon_tol()
                || t.im.abs() > T::recon_tol()
                || rounded.abs() != T::one()
            {
                return Err(Error::NetConstruction(format!(
                    "Hadamard entry ({j}, ·) = {t} is not ±1"
                )));
            }
            entries.push(if rounded > T::zero() { 1 } else { -1 });
        }
    }
    Ok(HadamardMatrix {
        net: net.id().clone(),
        qubits: n,
        size,
        entries,
    })
}

/// Real matrix `M_{βα} = Tr(U Ā_α U† A_β) / N`, so that `M W(ρ) = W(U ρ* U†)`.
fn conjugated_overlap<T: Real>(
    net: &QuantumNet<T>,
    u: Option<&Matrix<T>>,
) -> Result<RealMatrix<T>> {
    let ops = net.point_ops();
    let images: Vec<Matrix<T>> = ops
        .iter()
        .map(|a| match u {
            Some(u) => a.conj().conjugate_by(u),
            None => a.conj(),
        })
        .collect();
    let inv_n = T::one() / T::from_usize(net.order()).expect("small dimension");
    let size = ops.len();
    let mut out = RealMatrix::zeros(size, size);
    for (b, ab) in ops.iter().enumerate() {
        for (a, img) in images.iter().enumerate() {
            let t = img.trace_product(ab)?;
            if t.im.abs() > T::recon_tol() {
                return Err(Error::Internal(format!(
                    "complex overlap {t} in conjugation matrix"
                )));
            }
            out[(b, a)] = t.re * inv_n;
        }
    }
    Ok(out)
}

/// `F` with `F W(ρ) = W(ρ*)`, conjugation in the computational basis.
pub fn conjugation_matrix<T: Real>(net: &QuantumNet<T>) -> Result<RealMatrix<T>> {
    conjugated_overlap(net, None)
}

/// `G` with `G W(ρ) = W(σ_y^{⊗n} ρ* σ_y^{⊗n})`.
pub fn spinflip_matrix<T: Real>(net: &QuantumNet<T>) -> Result<RealMatrix<T>> {
    let u = sigma_y_string::<T>(net.qubits());
    conjugated_overlap(net, Some(&u))
}

pub fn sigma_y_string<T: Real>(qubits: usize) -> Matrix<T> {
    let y = Matrix::pauli(2);
    (1..qubits).fold(y.clone(), |acc, _| acc.kron(&y))
}

/// Phase-space shift whose translation operator is `σ_y^{⊗n}` up to phase:
/// all primal and dual coefficients equal to one.
pub fn spinflip_shift(field: &Field) -> Point {
    let ones = vec![1u8; field.degree() as usize];
    let q = field
        .compose(&ones, Basis::Primal)
        .expect("degree-length coefficients");
    let p = field
        .compose(&ones, Basis::Dual)
        .expect("degree-length coefficients");
    Point::new(q, p)
}
