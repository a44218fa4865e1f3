//! Arithmetic in GF(2^m) over a fixed polynomial basis.
//!
//! Elements are stored as coefficient bit masks over the polynomial basis
//! `1, ω, ..., ω^{m-1}`, so the integer ordering `0, 1, ω, ω+1, ...` is also
//! the element ordering used for phase-space indexing. Horizontal coordinates
//! expand in the polynomial basis and vertical coordinates in its trace-dual
//! basis; this pairing is what makes translations inside a striation commute.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 5;

/// Defining polynomials, indexed by `m - 1`. Bit `k` is the coefficient of `x^k`.
const POLYNOMIALS: [u32; MAX_DEGREE as usize] = [
    0b10,     // x
    0b111,    // x^2 + x + 1
    0b1011,   // x^3 + x + 1
    0b10011,  // x^4 + x + 1
    0b100101, // x^5 + x^2 + 1
];

#[derive(
    Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Unchecked constructor; use [`Field::element`] for range checking.
    pub const fn from_raw(value: u32) -> Self {
        FieldElement(value)
    }

    #[inline]
    pub const fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Basis {
    Primal,
    Dual,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Arith {
    Add,
    Mul,
    Inv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    m: u32,
    poly: u32,
    basis: Vec<FieldElement>,
    dual: Vec<FieldElement>,
}

impl Field {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::UnsupportedDimension(m));
        }
        let mut field = Field {
            m,
            poly: POLYNOMIALS[m as usize - 1],
            basis: (0..m).map(|i| FieldElement(1 << i)).collect(),
            dual: Vec::new(),
        };
        field.dual = field.solve_dual_basis()?;
        Ok(field)
    }

    /// Extension degree (qubits per axis label).
    #[inline]
    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements, `N = 2^m`.
    #[inline]
    pub fn order(&self) -> usize {
        1 << self.m
    }

    /// Defining polynomial as a coefficient mask.
    #[inline]
    pub fn polynomial(&self) -> u32 {
        self.poly
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn dual_basis(&self) -> &[FieldElement] {
        &self.dual
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if (value as usize) < self.order() {
            Ok(FieldElement(value))
        } else {
            Err(Error::Validation(format!(
                "{value} is not an element of GF({})",
                self.order()
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order() as u32).map(FieldElement)
    }

    /// The class of `x` in `GF(2)[x] / poly`, i.e. the generator ω (or 1 when m = 1).
    pub fn generator(&self) -> FieldElement {
        if self.m == 1 {
            FieldElement::ONE
        } else {
            FieldElement(0b10)
        }
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(x.0 ^ y.0)
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let mut prod: u32 = 0;
        let (mut a, mut b) = (x.0, y.0);
        while b != 0 {
            if b & 1 == 1 {
                prod ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        for deg in (self.m..2 * self.m).rev() {
            if prod & (1 << deg) != 0 {
                prod ^= self.poly << (deg - self.m);
            }
        }
        FieldElement(prod)
    }

    pub fn pow(&self, x: FieldElement, mut e: u32) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::ZeroInverse(self.m));
        }
        // x^(N-2) = x^-1 in the multiplicative group of order N-1.
        Ok(self.pow(x, self.order() as u32 - 2))
    }

    pub fn arith(&self, x: FieldElement, y: FieldElement, kind: Arith) -> Result<FieldElement> {
        match kind {
            Arith::Add => Ok(self.add(x, y)),
            Arith::Mul => Ok(self.mul(x, y)),
            Arith::Inv => self.inv(x),
        }
    }

    /// Absolute trace `x + x^2 + x^4 + ... + x^{2^{m-1}}`, always 0 or 1.
    pub fn trace(&self, x: FieldElement) -> u8 {
        let mut acc = FieldElement::ZERO;
        let mut power = x;
        for _ in 0..self.m {
            acc = self.add(acc, power);
            power = self.mul(power, power);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 as u8
    }

    /// Coefficient mask of `x` over the requested basis; bit `i` is coefficient `i`.
    pub fn expand_bits(&self, x: FieldElement, which: Basis) -> u32 {
        match which {
            Basis::Primal => x.0,
            Basis::Dual => self.basis.iter().enumerate().fold(0, |acc, (i, &b)| {
                acc | (u32::from(self.trace(self.mul(x, b))) << i)
            }),
        }
    }

    pub fn expand(&self, x: FieldElement, which: Basis) -> Vec<u8> {
        let bits = self.expand_bits(x, which);
        (0..self.m).map(|i| ((bits >> i) & 1) as u8).collect()
    }

    pub fn compose(&self, coeffs: &[u8], which: Basis) -> Result<FieldElement> {
        if coeffs.len() != self.m as usize {
            return Err(Error::Dimension(format!(
                "expected {} coefficients, got {}",
                self.m,
                coeffs.len()
            )));
        }
        let basis = match which {
            Basis::Primal => &self.basis,
            Basis::Dual => &self.dual,
        };
        Ok(coeffs
            .iter()
            .zip(basis)
            .filter(|(&c, _)| c & 1 == 1)
            .fold(FieldElement::ZERO, |acc, (_, &b)| self.add(acc, b)))
    }

    fn solve_dual_basis(&self) -> Result<Vec<FieldElement>> {
        let dual = (0..self.m as usize)
            .map(|j| {
                self.elements()
                    .find(|&f| {
                        self.basis
                            .iter()
                            .enumerate()
                            .all(|(i, &b)| self.trace(self.mul(b, f)) == u8::from(i == j))
                    })
                    .ok_or_else(|| Error::Internal(format!("no dual vector for basis element {j}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(dual)
    }
}
