//! Detection of two-qubit nets whose point operators are tensor products of
//! single-qubit point operators.
//!
//! In a product net `A_(q,p) = B_{α1} ⊗ C_{α2}`, where `α_i = (q_i, p_i)` are
//! the i-th primal coefficient of `q` and the i-th dual coefficient of `p`.
//! The single-qubit nets fall into two translation orbits; the reference
//! orbit is the one containing `(I + σx + σy + σz)/2` at the origin, and the
//! other orbit is its complex conjugate. Product nets come in two forms:
//! first factor in the reference orbit and second conjugated, or the reverse.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Basis, Field};
use crate::matrix::Matrix;
use crate::net::{Classification, NetFactory, QuantumNet};
use crate::phase_space::Point;
use crate::scalar::{cr, Real};
use crate::tensor::factorize_tensor;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProductForm {
    /// `A = B ⊗ C̄` with `B`, `C` in the reference orbit.
    #[serde(rename = "eq6")]
    SecondConjugated,
    /// `A = B̄ ⊗ C` with `B`, `C` in the reference orbit.
    #[serde(rename = "eq7")]
    FirstConjugated,
    #[serde(rename = "none")]
    None,
}

impl ProductForm {
    pub fn label(self) -> &'static str {
        match self {
            ProductForm::SecondConjugated => "eq6",
            ProductForm::FirstConjugated => "eq7",
            ProductForm::None => "none",
        }
    }
}

/// Single-qubit operator families for the first and second qubit.
pub type FactorPair<T> = (Vec<Matrix<T>>, Vec<Matrix<T>>);

#[derive(Clone, Debug)]
pub struct ProductReport<T: Real> {
    pub form: ProductForm,
    /// Single-qubit families `α1 ↦ B_{α1}` and `α2 ↦ C_{α2}`, indexed `q_i·2 + p_i`.
    pub factors: Option<FactorPair<T>>,
    /// Single-qubit net ids whose point operators are the two factor families.
    pub factor_nets: Option<(u128, u128)>,
}

impl<T: Real> ProductReport<T> {
    pub fn is_product(&self) -> bool {
        self.form != ProductForm::None
    }

    fn none() -> Self {
        ProductReport {
            form: ProductForm::None,
            factors: None,
            factor_nets: None,
        }
    }
}

/// Index of the single-qubit point `α_i` for qubit `i` of a two-qubit point.
pub fn subsystem_point(field: &Field, point: &Point, qubit: usize) -> usize {
    let q = (field.expand_bits(point.q, Basis::Primal) >> qubit) & 1;
    let p = (field.expand_bits(point.p, Basis::Dual) >> qubit) & 1;
    (q * 2 + p) as usize
}

/// Holds the eight single-qubit nets and their orbit structure.
#[derive(Clone, Debug)]
pub struct ProductDetector<T: Real> {
    single: Vec<QuantumNet<T>>,
    classes: Classification,
    reference_orbit: usize,
    field: Field,
}

impl<T: Real> ProductDetector<T> {
    pub fn new() -> Result<Self> {
        let factory = NetFactory::<T>::new(1)?;
        let single = (0..8u128)
            .map(|i| factory.build_index(i))
            .collect::<Result<Vec<_>>>()?;
        let classes = factory.classify()?;
        let standard = (0..4)
            .map(Matrix::pauli)
            .fold(Matrix::zeros(2, 2), |acc, p| &acc + &p)
            .scale(cr(0.5));
        let reference = single
            .iter()
            .position(|net| net.point_op(0).approx_eq(&standard, T::recon_tol()))
            .ok_or_else(|| {
                Error::Internal("no single-qubit net has the standard origin operator".into())
            })?;
        let reference_orbit = classes
            .orbit_of(reference as u128)
            .ok_or_else(|| Error::Internal("unclassified single-qubit net".into()))?;
        Ok(ProductDetector {
            single,
            classes,
            reference_orbit,
            field: Field::new(2)?,
        })
    }

    pub fn single_qubit_nets(&self) -> &[QuantumNet<T>] {
        &self.single
    }

    /// Single-qubit net whose point operators equal `family`.
    pub fn match_family(&self, family: &[Matrix<T>]) -> Option<u128> {
        self.single
            .iter()
            .position(|net| {
                net.point_ops()
                    .iter()
                    .zip(family)
                    .all(|(a, b)| a.approx_eq(b, T::recon_tol()))
            })
            .map(|i| i as u128)
    }

    fn in_reference(&self, id: u128) -> bool {
        self.classes.orbit_of(id) == Some(self.reference_orbit)
    }

    pub fn detect(&self, net: &QuantumNet<T>) -> Result<ProductReport<T>> {
        if net.qubits() != 2 {
            return Err(Error::Unsupported(format!(
                "product-structure detection needs a two-qubit net, got {} qubits",
                net.qubits()
            )));
        }
        let mut first: Vec<Option<Matrix<T>>> = vec![None; 4];
        let mut second: Vec<Option<Matrix<T>>> = vec![None; 4];
        for (idx, a) in net.point_ops().iter().enumerate() {
            let Some((b, c)) = factorize_tensor(a, 2, 2) else {
                return Ok(ProductReport::none());
            };
            let tr = b.trace()?;
            if tr.norm() < T::recon_tol() {
                return Ok(ProductReport::none());
            }
            let (b, c) = (b.scale(tr.inv()), c.scale(tr));
            let point = Point::from_index(idx, 4);
            for (slot, m) in [
                (&mut first[subsystem_point(&self.field, &point, 0)], b),
                (&mut second[subsystem_point(&self.field, &point, 1)], c),
            ] {
                match slot {
                    Some(prev) if !prev.approx_eq(&m, T::recon_tol()) => {
                        return Ok(ProductReport::none())
                    }
                    Some(_) => {}
                    None => *slot = Some(m),
                }
            }
        }
        let first: Vec<Matrix<T>> = first
            .into_iter()
            .map(|m| m.expect("every α1 occurs"))
            .collect();
        let second: Vec<Matrix<T>> = second
            .into_iter()
            .map(|m| m.expect("every α2 occurs"))
            .collect();
        let (Some(n1), Some(n2)) = (self.match_family(&first), self.match_family(&second)) else {
            return Ok(ProductReport::none());
        };
        let form = match (self.in_reference(n1), self.in_reference(n2)) {
            (true, false) => ProductForm::SecondConjugated,
            (false, true) => ProductForm::FirstConjugated,
            _ => ProductForm::None,
        };
        if form == ProductForm::None {
            return Ok(ProductReport::none());
        }
        Ok(ProductReport {
            form,
            factors: Some((first, second)),
            factor_nets: Some((n1, n2)),
        })
    }
}

/// Convenience wrapper building a fresh detector.
pub fn detect_product_structure<T: Real>(net: &QuantumNet<T>) -> Result<ProductReport<T>> {
    ProductDetector::new()?.detect(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::NetFactory;

    #[test]
    fn rejects_other_sizes() {
        let f = NetFactory::<f64>::new(1).unwrap();
        assert!(matches!(
            detect_product_structure(&f.build_index(0).unwrap()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn census_of_first_orbit_members() {
        let f = NetFactory::<f64>::new(2).unwrap();
        let det = ProductDetector::<f64>::new().unwrap();
        let mut products = 0;
        for idx in 0..1024u128 {
            let net = f.build_index(idx).unwrap();
            let report = det.detect(&net).unwrap();
            if let Some((a, b)) = &report.factors {
                products += 1;
                for fam in [a, b] {
                    for (i, x) in fam.iter().enumerate() {
                        for (j, y) in fam.iter().enumerate() {
                            let t = x.trace_product(y).unwrap().re;
                            assert!((t - if i == j { 2.0 } else { 0.0 }).abs() < 1e-10);
                        }
                    }
                }
            }
        }
        assert_eq!(products, 32);
    }
}
