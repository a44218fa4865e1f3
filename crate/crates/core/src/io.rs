//! JSON documents for states, Wigner functions, Stokes vectors and net atlases.
//!
//! Floats are written in shortest round-trip form, which reproduces every
//! `f64` exactly on parsing.

use std::io::{Read, Write};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::net::NetId;
use crate::product::ProductForm;
use crate::scalar::Real;
use crate::stokes::StokesVector;
use crate::wigner::{DensityState, WignerFunction};

/// Trace tolerance applied to parsed states.
pub const TRACE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub n: usize,
    pub rho: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DwfDoc {
    pub n: usize,
    pub net: u128,
    pub w: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StokesDoc {
    pub n: usize,
    pub s: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub id: u128,
    pub digits: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbit: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub product: Option<ProductForm>,
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn from_f64<T: Real>(x: f64) -> T {
    T::from_f64(x).unwrap_or_else(T::nan)
}

impl StateDoc {
    pub fn from_state<T: Real>(state: &DensityState<T>) -> Self {
        let rho = state.rho();
        StateDoc {
            n: state.qubits(),
            rho: (0..rho.rows())
                .map(|i| {
                    rho.row(i)
                        .iter()
                        .map(|z| [to_f64(z.re), to_f64(z.im)])
                        .collect()
                })
                .collect(),
        }
    }

    /// Checks the shape against `n` and the trace against [`TRACE_TOL`].
    pub fn to_state<T: Real>(&self) -> Result<DensityState<T>> {
        if self.n == 0 || self.n > 6 {
            return Err(Error::Validation(format!(
                "\"n\" must be between 1 and 6, got {}",
                self.n
            )));
        }
        let dim = 1usize << self.n;
        if self.rho.len() != dim {
            return Err(Error::Validation(format!(
                "\"rho\" has {} rows but \"n\" = {} needs {dim}",
                self.rho.len(),
                self.n
            )));
        }
        if let Some((i, row)) = self.rho.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(Error::Validation(format!(
                "\"rho\" is not square: row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
        let data = self
            .rho
            .iter()
            .flatten()
            .map(|&[re, im]| Complex::new(from_f64::<T>(re), from_f64::<T>(im)))
            .collect();
        let m = Matrix::from_vec(dim, dim, data)?;
        let tr = m.trace()?;
        if (to_f64(tr.re) - 1.0).abs() > TRACE_TOL || to_f64(tr.im).abs() > TRACE_TOL {
            return Err(Error::Validation(format!(
                "\"rho\" has trace {tr}, expected 1"
            )));
        }
        let tol = T::tol().max(from_f64(TRACE_TOL));
        DensityState::with_tolerance(m, tol).map_err(|e| match e {
            Error::NotHermitian(d) => {
                Error::Validation(format!("\"rho\" is not Hermitian (deviation {d:e})"))
            }
            other => other,
        })
    }
}

impl DwfDoc {
    pub fn from_dwf<T: Real>(w: &WignerFunction<T>) -> Result<Self> {
        let net = w
            .net()
            .index()
            .ok_or_else(|| Error::Unsupported(format!("net {} has no integer id", w.net())))?;
        Ok(DwfDoc {
            n: w.qubits(),
            net,
            w: w.values().iter().map(|&x| to_f64(x)).collect(),
        })
    }

    pub fn to_dwf<T: Real>(&self) -> Result<WignerFunction<T>> {
        if self.n == 0 || self.n > 6 {
            return Err(Error::Validation(format!(
                "\"n\" must be between 1 and 6, got {}",
                self.n
            )));
        }
        let order = 1usize << self.n;
        let id = NetId::from_index(order, self.net)
            .map_err(|e| Error::Validation(format!("\"net\": {e}")))?;
        if self.w.len() != order * order {
            return Err(Error::Validation(format!(
                "\"w\" has {} entries but \"n\" = {} needs {}",
                self.w.len(),
                self.n,
                order * order
            )));
        }
        WignerFunction::new(self.n, id, self.w.iter().map(|&x| from_f64(x)).collect())
    }
}

impl StokesDoc {
    pub fn from_stokes<T: Real>(s: &StokesVector<T>) -> Self {
        StokesDoc {
            n: s.qubits(),
            s: s.values().iter().map(|&x| to_f64(x)).collect(),
        }
    }

    pub fn to_stokes<T: Real>(&self) -> Result<StokesVector<T>> {
        if self.n == 0 || self.n > 6 {
            return Err(Error::Validation(format!(
                "\"n\" must be between 1 and 6, got {}",
                self.n
            )));
        }
        StokesVector::new(self.n, self.s.iter().map(|&x| from_f64(x)).collect())
            .map_err(|e| Error::Validation(format!("\"s\": {e}")))
    }
}

fn parse<D: for<'de> Deserialize<'de>>(reader: impl Read) -> Result<D> {
    serde_json::from_reader(reader).map_err(|e| Error::Validation(format!("malformed JSON: {e}")))
}

fn write<D: Serialize>(doc: &D, mut writer: impl Write) -> Result<()> {
    serde_json::to_writer(&mut writer, doc)?;
    writer
        .write_all(b"\n")
        .map_err(|e| Error::Internal(format!("write failed: {e}")))
}

pub fn parse_state<T: Real>(reader: impl Read) -> Result<DensityState<T>> {
    parse::<StateDoc>(reader)?.to_state()
}

pub fn write_state<T: Real>(state: &DensityState<T>, writer: impl Write) -> Result<()> {
    write(&StateDoc::from_state(state), writer)
}

pub fn parse_dwf<T: Real>(reader: impl Read) -> Result<WignerFunction<T>> {
    parse::<DwfDoc>(reader)?.to_dwf()
}

pub fn write_dwf<T: Real>(w: &WignerFunction<T>, writer: impl Write) -> Result<()> {
    write(&DwfDoc::from_dwf(w)?, writer)
}

pub fn parse_stokes<T: Real>(reader: impl Read) -> Result<StokesVector<T>> {
    parse::<StokesDoc>(reader)?.to_stokes()
}

pub fn write_stokes<T: Real>(s: &StokesVector<T>, writer: impl Write) -> Result<()> {
    write(&StokesDoc::from_stokes(s), writer)
}

pub fn write_atlas(entries: &[AtlasEntry], writer: impl Write) -> Result<()> {
    write(&entries, writer)
}
