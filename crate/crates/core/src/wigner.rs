//! Transforms between density matrices and discrete Wigner functions.

use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::net::{NetId, QuantumNet};
use crate::phase_space::Line;
use crate::scalar::Real;

/// Smallest eigenvalue below which a state is reported as not positive.
const PSD_TOL: f64 = -1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct DensityState<T: Real> {
    qubits: usize,
    rho: Matrix<T>,
}

impl<T: Real> DensityState<T> {
    /// Validates hermiticity and unit trace at the default tolerance.
    pub fn new(rho: Matrix<T>) -> Result<Self> {
        Self::with_tolerance(rho, T::tol())
    }

    pub fn with_tolerance(rho: Matrix<T>, tol: T) -> Result<Self> {
        if !rho.is_square() || !rho.rows().is_power_of_two() || rho.rows() < 2 {
            return Err(Error::Validation(format!(
                "density matrix must be 2^n x 2^n, got {:?}",
                rho.dim()
            )));
        }
        let dev = rho.max_abs_diff(&rho.adjoint());
        if dev > tol {
            return Err(Error::NotHermitian(dev.to_f64().unwrap_or(f64::NAN)));
        }
        let tr = rho.trace()?;
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::Validation(format!("trace is {tr}, expected 1")));
        }
        let state = DensityState {
            qubits: rho.rows().trailing_zeros() as usize,
            rho,
        };
        if let Ok(min) = state.min_eigenvalue() {
            if min < T::lit(PSD_TOL) {
                log::warn!(
                    "density matrix is not positive semidefinite (smallest eigenvalue {min})"
                );
            }
        }
        Ok(state)
    }

    /// Pure state `|ψ⟩⟨ψ|` from a normalized amplitude vector.
    pub fn pure(psi: &[num_complex::Complex<T>]) -> Result<Self> {
        Self::new(Matrix::outer(psi, psi))
    }

    pub fn maximally_mixed(qubits: usize) -> Self {
        let n = 1usize << qubits;
        DensityState {
            qubits,
            rho: Matrix::identity(n)
                .scale_real(T::one() / T::from_usize(n).expect("small dimension")),
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn rho(&self) -> &Matrix<T> {
        &self.rho
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.rho
    }

    pub fn purity(&self) -> T {
        self.rho
            .trace_product(&self.rho)
            .map(|z| z.re)
            .unwrap_or_else(|_| T::nan())
    }

    pub fn min_eigenvalue(&self) -> Result<T> {
        let (vals, _) = hermitian_eigen(&self.rho)?;
        Ok(vals[0])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WignerFunction<T: Real> {
    qubits: usize,
    net: NetId,
    w: Vec<T>,
}

impl<T: Real> WignerFunction<T> {
    pub fn new(qubits: usize, net: NetId, w: Vec<T>) -> Result<Self> {
        let n = 1usize << qubits;
        if net.order() != n {
            return Err(Error::NetMismatch {
                expected: format!("a net for N = {n}"),
                found: format!("net for N = {}", net.order()),
            });
        }
        if w.len() != n * n {
            return Err(Error::Validation(format!(
                "DWF for {qubits} qubits needs {} entries, got {}",
                n * n,
                w.len()
            )));
        }
        Ok(WignerFunction { qubits, net, w })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn net(&self) -> &NetId {
        &self.net
    }

    pub fn values(&self) -> &[T] {
        &self.w
    }

    pub fn into_values(self) -> Vec<T> {
        self.w
    }

    pub fn total(&self) -> T {
        self.w.iter().copied().sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.w.len() != other.w.len() {
            return T::infinity();
        }
        self.w
            .iter()
            .zip(&other.w)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max)
    }
}

fn check_net<T: Real>(expected: &NetId, net: &QuantumNet<T>) -> Result<()> {
    if expected != net.id() {
        return Err(Error::NetMismatch {
            expected: expected.to_string(),
            found: net.id().to_string(),
        });
    }
    Ok(())
}

/// `W_α = Tr(ρ A_α) / N`.
pub fn dwf_from_rho<T: Real>(
    state: &DensityState<T>,
    net: &QuantumNet<T>,
) -> Result<WignerFunction<T>> {
    if state.qubits() != net.qubits() {
        return Err(Error::Dimension(format!(
            "{}-qubit state with a {}-qubit net",
            state.qubits(),
            net.qubits()
        )));
    }
    let inv_n = T::one() / T::from_usize(net.order()).expect("small dimension");
    let w = net
        .point_ops()
        .iter()
        .map(|a| {
            let t = state.rho().trace_product(a)?;
            if t.im.abs() * inv_n > T::tol() {
                return Err(Error::NotHermitian(t.im.to_f64().unwrap_or(f64::NAN)));
            }
            Ok(t.re * inv_n)
        })
        .collect::<Result<Vec<_>>>()?;
    WignerFunction::new(state.qubits(), net.id().clone(), w)
}

/// `ρ = Σ_α W_α A_α`.
pub fn rho_from_dwf<T: Real>(
    w: &WignerFunction<T>,
    net: &QuantumNet<T>,
) -> Result<DensityState<T>> {
    check_net(w.net(), net)?;
    let n = net.order();
    let rho = w
        .values()
        .iter()
        .zip(net.point_ops())
        .fold(Matrix::zeros(n, n), |acc, (&wa, a)| {
            &acc + &a.scale_real(wa)
        });
    DensityState::with_tolerance(rho, T::recon_tol())
}

/// Sum of the DWF along a line.
pub fn line_probability<T: Real>(w: &WignerFunction<T>, line: &Line) -> T {
    let n = 1usize << w.qubits();
    line.points.iter().map(|p| w.values()[p.index(n)]).sum()
}

/// `N Σ_α W_α²`, equal to `Tr ρ²`.
pub fn purity_from_dwf<T: Real>(w: &WignerFunction<T>) -> T {
    let n = T::from_usize(1usize << w.qubits()).expect("small dimension");
    n * w.values().iter().map(|&x| x * x).sum::<T>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::NetFactory;
    use crate::scalar::cr;
    use num_complex::Complex;

    type M = Matrix<f64>;

    fn ket0() -> DensityState<f64> {
        DensityState::new(M::from_f64(2, &[(1., 0.), (0., 0.), (0., 0.), (0., 0.)])).unwrap()
    }

    #[test]
    fn rejects_bad_states() {
        assert!(DensityState::new(M::identity(2)).is_err());
        assert!(DensityState::new(M::identity(3).scale(cr(1.0 / 3.0))).is_err());
        let mut m = M::identity(2).scale(cr(0.5));
        m[(0, 1)] = Complex::new(0.1, 0.0);
        assert!(matches!(DensityState::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn maximally_mixed_is_uniform() {
        for qubits in 1..=2 {
            let f = NetFactory::<f64>::new(qubits).unwrap();
            let n2 = (f.order() * f.order()) as f64;
            for idx in [0u128, 3, 7] {
                let net = f.build_index(idx).unwrap();
                let w = dwf_from_rho(&DensityState::maximally_mixed(qubits), &net).unwrap();
                assert!(w.values().iter().all(|&x| (x - 1.0 / n2).abs() < 1e-14));
                let back = rho_from_dwf(&w, &net).unwrap();
                assert!(back.rho().approx_eq(
                    &M::identity(f.order()).scale_real(1.0 / f.order() as f64),
                    1e-14
                ));
            }
        }
    }

    #[test]
    fn vertical_lines_of_ket0() {
        let f = NetFactory::<f64>::new(1).unwrap();
        let net = f.build_index(0).unwrap(); // |0⟩ on the vertical ray
        let w = dwf_from_rho(&ket0(), &net).unwrap();
        let vertical = &f.space().striations()[0];
        assert!((line_probability(&w, f.space().line(vertical.lines[0])) - 1.0).abs() < 1e-14);
        assert!(line_probability(&w, f.space().line(vertical.lines[1])).abs() < 1e-14);
        let back = rho_from_dwf(&w, &net).unwrap();
        assert!(back.rho().approx_eq(ket0().rho(), 1e-14));
    }

    #[test]
    fn purity_values() {
        let f = NetFactory::<f64>::new(1).unwrap();
        let net = f.build_index(5).unwrap();
        let uniform = dwf_from_rho(&DensityState::maximally_mixed(1), &net).unwrap();
        assert!((purity_from_dwf(&uniform) - 0.5).abs() < 1e-14);
        let pure = dwf_from_rho(&ket0(), &net).unwrap();
        assert!((purity_from_dwf(&pure) - 1.0).abs() < 1e-14);
        let f2 = NetFactory::<f64>::new(2).unwrap();
        let w2 = dwf_from_rho(
            &DensityState::maximally_mixed(2),
            &f2.build_index(99).unwrap(),
        )
        .unwrap();
        assert!((purity_from_dwf(&w2) - 0.25).abs() < 1e-14);
    }

    #[test]
    fn net_mismatch_is_reported() {
        let f = NetFactory::<f64>::new(1).unwrap();
        let w = dwf_from_rho(&ket0(), &f.build_index(0).unwrap()).unwrap();
        assert!(matches!(
            rho_from_dwf(&w, &f.build_index(1).unwrap()),
            Err(Error::NetMismatch { .. })
        ));
        assert!(WignerFunction::new(1, NetId::from_index(2, 0).unwrap(), vec![0.25; 3]).is_err());
    }
}
