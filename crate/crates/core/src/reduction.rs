//! Partial traces carried out directly on Wigner functions.
//!
//! The reduced Stokes vector of a subsystem is a sub-vector of the full one,
//! so for any source net (Hadamard matrix `H_n`) and any target net (`H_k`)
//! the map `P = H_k⁻¹ T H_n = H_kᵀ T H_n / 4^k` takes the n-qubit Wigner
//! function to the k-qubit one, where `T` selects the Pauli words that are
//! the identity on every traced qubit. No product structure is required.
//!
//! The marginal-sum and parity-kernel formulas valid for product-structured
//! two-qubit nets are provided as an independent route.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::RealMatrix;
use crate::net::{NetFactory, NetId, QuantumNet};
use crate::phase_space::Point;
use crate::product::{subsystem_point, ProductDetector, ProductForm};
use crate::scalar::Real;
use crate::stokes::{hadamard_matrix, HadamardMatrix};
use crate::wigner::{purity_from_dwf, WignerFunction};

/// Purity gate for the pure-state concurrence formula.
pub const PURITY_GATE: f64 = 1e-6;

/// Qubits kept by a reduction, 0-based, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KeepSet {
    qubits: usize,
    keep: Vec<usize>,
}

impl KeepSet {
    pub fn new(qubits: usize, keep: Vec<usize>) -> Result<Self> {
        if keep.is_empty()
            || keep.iter().any(|&q| q >= qubits)
            || keep.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::Validation(format!(
                "keep set {keep:?} must be non-empty, strictly increasing and below {qubits}"
            )));
        }
        Ok(KeepSet { qubits, keep })
    }

    pub fn all(qubits: usize) -> Self {
        KeepSet {
            qubits,
            keep: (0..qubits).collect(),
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn kept(&self) -> &[usize] {
        &self.keep
    }

    pub fn len(&self) -> usize {
        self.keep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keep.is_empty()
    }

    /// Every non-empty keep set for `qubits` qubits, in bit-mask order.
    pub fn enumerate(qubits: usize) -> Vec<KeepSet> {
        (1..1usize << qubits)
            .map(|mask| KeepSet {
                qubits,
                keep: (0..qubits)
                    .filter(|q| mask >> (qubits - 1 - q) & 1 == 1)
                    .collect(),
            })
            .collect()
    }

    /// Full Stokes index of the k-qubit index `r` embedded with identities elsewhere.
    pub fn embed(&self, r: usize) -> usize {
        let k = self.keep.len();
        self.keep.iter().enumerate().fold(0, |acc, (i, &q)| {
            let digit = (r >> (2 * (k - 1 - i))) & 3;
            acc | digit << (2 * (self.qubits - 1 - q))
        })
    }
}

/// 0/1 matrix of size `4^k × 4^n` selecting Pauli words that act trivially
/// on the traced qubits.
pub fn selection_matrix<T: Real>(keep: &KeepSet) -> RealMatrix<T> {
    let rows = 1usize << (2 * keep.len());
    let cols = 1usize << (2 * keep.qubits());
    let mut t = RealMatrix::zeros(rows, cols);
    for r in 0..rows {
        t[(r, keep.embed(r))] = T::one();
    }
    t
}

#[derive(Clone, Debug)]
pub struct ReductionMap<T: Real> {
    keep: KeepSet,
    source: NetId,
    target: NetId,
    p: RealMatrix<T>,
}

impl<T: Real> ReductionMap<T> {
    pub fn from_hadamards(
        keep: KeepSet,
        source: &HadamardMatrix,
        target: &HadamardMatrix,
    ) -> Result<Self> {
        if source.qubits() != keep.qubits() || target.qubits() != keep.len() {
            return Err(Error::Dimension(format!(
                "source net has {} qubits and target {}; keep set expects {} -> {}",
                source.qubits(),
                target.qubits(),
                keep.qubits(),
                keep.len()
            )));
        }
        let rows = target.size();
        let cols = source.size();
        let inv = T::one() / T::from_usize(rows).expect("small size");
        let mut p = RealMatrix::zeros(rows, cols);
        for r in 0..rows {
            let src_row = keep.embed(r);
            for a in 0..rows {
                let h = i32::from(target.get(r, a));
                for alpha in 0..cols {
                    let v = h * i32::from(source.get(src_row, alpha));
                    p[(a, alpha)] = p[(a, alpha)] + T::from_i32(v).expect("±1");
                }
            }
        }
        Ok(ReductionMap {
            keep,
            source: source.net().clone(),
            target: target.net().clone(),
            p: p.scale(inv),
        })
    }

    pub fn keep(&self) -> &KeepSet {
        &self.keep
    }

    pub fn source(&self) -> &NetId {
        &self.source
    }

    pub fn target(&self) -> &NetId {
        &self.target
    }

    pub fn matrix(&self) -> &RealMatrix<T> {
        &self.p
    }
}

pub fn reduction_map<T: Real>(
    source: &QuantumNet<T>,
    target: &QuantumNet<T>,
    keep: &KeepSet,
) -> Result<ReductionMap<T>> {
    ReductionMap::from_hadamards(
        keep.clone(),
        &hadamard_matrix(source)?,
        &hadamard_matrix(target)?,
    )
}

/// Map re-expressing a Wigner function in another net of the same size.
pub fn conversion_map<T: Real>(
    source: &QuantumNet<T>,
    target: &QuantumNet<T>,
) -> Result<ReductionMap<T>> {
    reduction_map(source, target, &KeepSet::all(source.qubits()))
}

pub fn reduce_dwf<T: Real>(
    w: &WignerFunction<T>,
    map: &ReductionMap<T>,
) -> Result<WignerFunction<T>> {
    if w.net() != map.source() || w.qubits() != map.keep.qubits() {
        return Err(Error::NetMismatch {
            expected: map.source().to_string(),
            found: w.net().to_string(),
        });
    }
    let out = map.p.apply(w.values())?;
    WignerFunction::new(map.keep.len(), map.target.clone(), out)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Two-qubit reduction by marginal sums and the parity kernel, valid only on
/// product-structured nets. The result lives in the single-qubit net whose
/// point operators are the unconjugated factor family for that subsystem.
pub fn product_reduce<T: Real>(
    w: &WignerFunction<T>,
    net: &QuantumNet<T>,
    detector: &ProductDetector<T>,
    which: Subsystem,
) -> Result<WignerFunction<T>> {
    if w.net() != net.id() {
        return Err(Error::NetMismatch {
            expected: net.id().to_string(),
            found: w.net().to_string(),
        });
    }
    let report = detector.detect(net)?;
    let (first, second) = match (&report.form, report.factors) {
        (ProductForm::None, _) | (_, None) => return Err(Error::NotProductNet),
        (_, Some(f)) => f,
    };
    let field = Field::new(2)?;
    let qubit = match which {
        Subsystem::A => 0,
        Subsystem::B => 1,
    };
    // The conjugated side needs the parity kernel; the other side is a marginal.
    let conjugated = match report.form {
        ProductForm::SecondConjugated => Subsystem::B,
        _ => Subsystem::A,
    };
    let sub: Vec<usize> = (0..16)
        .map(|i| subsystem_point(&field, &Point::from_index(i, 4), qubit))
        .collect();
    let half = T::lit(0.5);
    let (values, family) = if which == conjugated {
        let values = (0..4usize)
            .map(|beta| {
                let (qb, pb) = (beta >> 1, beta & 1);
                w.values()
                    .iter()
                    .zip(&sub)
                    .map(|(&x, &a)| {
                        let (qa, pa) = (a >> 1, a & 1);
                        if (qa ^ qb) & (pa ^ pb) == 1 {
                            -x
                        } else {
                            x
                        }
                    })
                    .sum::<T>()
                    * half
            })
            .collect::<Vec<T>>();
        let factor = if qubit == 0 { first } else { second };
        (values, factor.iter().map(|m| m.conj()).collect::<Vec<_>>())
    } else {
        let mut values = vec![T::zero(); 4];
        for (&x, &a) in w.values().iter().zip(&sub) {
            values[a] = values[a] + x;
        }
        (values, if qubit == 0 { first } else { second })
    };
    let target = detector
        .match_family(&family)
        .ok_or_else(|| Error::Internal("factor family matches no single-qubit net".into()))?;
    WignerFunction::new(1, NetId::from_index(2, target)?, values)
}

/// Pure-state concurrence `sqrt(2 (1 - Tr ρ_A²))` with `Tr ρ_A² = 2 Σ (W^A)²`.
pub fn concurrence_from_dwf<T: Real>(w: &WignerFunction<T>, source: &QuantumNet<T>) -> Result<T> {
    if w.qubits() != 2 || source.qubits() != 2 {
        return Err(Error::Unsupported(
            "concurrence needs a two-qubit state".into(),
        ));
    }
    let purity = purity_from_dwf(w);
    if (purity - T::one()).abs() > T::lit(PURITY_GATE) {
        return Err(Error::NotPure(purity.to_f64().unwrap_or(f64::NAN)));
    }
    let single = NetFactory::<T>::new(1)?.build_index(0)?;
    let map = reduction_map(source, &single, &KeepSet::new(2, vec![0])?)?;
    let reduced = reduce_dwf(w, &map)?;
    let two = T::lit(2.0);
    let sum_sq: T = reduced.values().iter().map(|&x| x * x).sum();
    let c = (two * (T::one() - two * sum_sq)).max(T::zero()).sqrt();
    Ok(c.min(T::one()))
}
