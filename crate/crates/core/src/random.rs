//! Fixed-seed random states for reproducible checks.
//!
//! Mixed states use the Ginibre construction `ρ = G G† / Tr(G G†)` with
//! standard-normal complex entries; pure states normalize a Gaussian vector.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::Matrix;
use crate::scalar::{c, Real};
use crate::wigner::DensityState;

#[derive(Clone, Debug)]
pub struct StateSampler {
    rng: ChaCha8Rng,
}

impl StateSampler {
    pub fn new(seed: u64) -> Self {
        StateSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn gaussian<T: Real>(&mut self) -> Complex<T> {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        c(T::lit(re), T::lit(im))
    }

    pub fn ginibre<T: Real>(&mut self, qubits: usize) -> DensityState<T> {
        let n = 1usize << qubits;
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.gaussian();
            }
        }
        let rho = &g * &g.adjoint();
        let tr = rho.trace().expect("square").re;
        let rho = rho.scale_real(T::one() / tr);
        // Symmetrize away rounding so the Hermitian check is exact.
        let rho = (&rho + &rho.adjoint()).scale_real(T::lit(0.5));
        DensityState::new(rho).expect("Ginibre matrices are valid states")
    }

    pub fn pure_vector<T: Real>(&mut self, qubits: usize) -> Vec<Complex<T>> {
        let n = 1usize << qubits;
        let v: Vec<Complex<T>> = (0..n).map(|_| self.gaussian()).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        v.into_iter().map(|z| z / c(norm, T::zero())).collect()
    }

    pub fn pure<T: Real>(&mut self, qubits: usize) -> DensityState<T> {
        let psi = self.pure_vector(qubits);
        let rho = Matrix::outer(&psi, &psi);
        let rho = (&rho + &rho.adjoint()).scale_real(T::lit(0.5));
        DensityState::new(rho).expect("pure states are valid")
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random()
    }

    pub fn below(&mut self, bound: u128) -> u128 {
        self.rng.random::<u128>() % bound
    }
}
