//! Discrete Wigner functions for multiqubit systems.
//!
//! Phase space is the `N × N` grid over GF(2^n). A quantum net assigns a
//! pure-state projector to every line; its phase-point operators turn a
//! density matrix into a real quasi-probability grid and back. On top of
//! that the crate provides the Stokes/Hadamard bridge, the conjugation and
//! spin-flip matrices, product-net detection for two qubits, and partial
//! traces computed directly on Wigner functions.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.
//!
//! ```
//! use dwf_core::{dwf_from_rho, DensityState, NetFactory};
//!
//! let nets = NetFactory::<f64>::new(1).unwrap();
//! let net = nets.build_index(0).unwrap();
//! let w = dwf_from_rho(&DensityState::maximally_mixed(1), &net).unwrap();
//! assert!(w.values().iter().all(|&x| (x - 0.25).abs() < 1e-15));
//! ```

pub mod eigen;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod net;
pub mod pauli;
pub mod phase_space;
pub mod product;
pub mod random;
pub mod reduction;
pub mod scalar;
pub mod stokes;
pub mod tensor;
pub mod wigner;

pub use error::{Error, Result};
pub use field::{Basis, Field, FieldElement};
pub use matrix::{Matrix, RealMatrix};
pub use net::{Classification, Enumeration, NetFactory, NetId, NetOrbit, QuantumNet};
pub use phase_space::{Line, PhaseSpace, Point, Striation};
pub use product::{detect_product_structure, ProductDetector, ProductForm, ProductReport};
pub use random::StateSampler;
pub use reduction::{
    concurrence_from_dwf, conversion_map, product_reduce, reduce_dwf, reduction_map, KeepSet,
    ReductionMap, Subsystem,
};
pub use scalar::Real;
pub use stokes::{
    conjugation_matrix, hadamard_matrix, spinflip_matrix, stokes_from_rho, HadamardMatrix,
    StokesVector,
};
pub use wigner::{
    dwf_from_rho, line_probability, purity_from_dwf, rho_from_dwf, DensityState, WignerFunction,
};

pub type CMatrix = Matrix<f64>;
pub type RMatrix = RealMatrix<f64>;
pub type Net = QuantumNet<f64>;
pub type Nets = NetFactory<f64>;
pub type State = DensityState<f64>;
pub type Dwf = WignerFunction<f64>;
pub type Stokes = StokesVector<f64>;
pub type Reduction = ReductionMap<f64>;
pub type Detector = ProductDetector<f64>;
