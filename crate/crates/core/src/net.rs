//! Quantum nets: translationally covariant assignments of projectors to lines.
//!
//! A net is identified by one digit per striation, the index of the
//! canonical eigenstate placed on that striation's ray. Every other line
//! receives the ray projector conjugated by the translation to its
//! smallest-index point. The scalar id reads the digits as a base-N number
//! with the vertical striation most significant.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::pauli::{eigensystems, translation_op, StriationEigensystem};
use crate::phase_space::{PhaseSpace, Point};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NetId {
    order: usize,
    digits: Vec<u32>,
}

/// `N^{N+1}`, or `None` when it does not fit in 128 bits.
pub fn net_count(order: usize) -> Option<u128> {
    (order as u128).checked_pow(order as u32 + 1)
}

impl NetId {
    pub fn from_digits(order: usize, digits: Vec<u32>) -> Result<Self> {
        if digits.len() != order + 1 || digits.iter().any(|&d| d as usize >= order) {
            return Err(Error::InvalidNet { digits, order });
        }
        Ok(NetId { order, digits })
    }

    pub fn from_index(order: usize, index: u128) -> Result<Self> {
        let count = net_count(order);
        if count.is_some_and(|c| index >= c) {
            return Err(Error::NetIndexRange {
                index,
                count: count.map_or_else(|| "overflow".into(), |c| c.to_string()),
            });
        }
        let mut digits = vec![0u32; order + 1];
        let mut rest = index;
        for d in digits.iter_mut().rev() {
            *d = (rest % order as u128) as u32;
            rest /= order as u128;
        }
        Ok(NetId { order, digits })
    }

    /// Scalar id; `None` when `N^{N+1}` overflows 128 bits.
    pub fn index(&self) -> Option<u128> {
        net_count(self.order)?;
        Some(
            self.digits
                .iter()
                .fold(0u128, |acc, &d| acc * self.order as u128 + u128::from(d)),
        )
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

impl fmt::Display for NetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index() {
            Some(i) => write!(f, "{i}"),
            None => write!(f, "{:?}", self.digits),
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuantumNet<T: Real> {
    id: NetId,
    qubits: usize,
    projectors: Vec<Matrix<T>>,
    point_ops: Vec<Matrix<T>>,
}

impl<T: Real> QuantumNet<T> {
    pub fn id(&self) -> &NetId {
        &self.id
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    /// Hilbert-space dimension, equal to the grid side `N`.
    pub fn order(&self) -> usize {
        1 << self.qubits
    }

    /// `Q(λ)` indexed by global line index.
    pub fn projectors(&self) -> &[Matrix<T>] {
        &self.projectors
    }

    /// `A_α` indexed by point index.
    pub fn point_ops(&self) -> &[Matrix<T>] {
        &self.point_ops
    }

    pub fn point_op(&self, index: usize) -> &Matrix<T> {
        &self.point_ops[index]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    All,
    /// `count` distinct ids spaced by a fixed odd stride from a seeded offset.
    Sample {
        count: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetOrbit {
    pub representative: u128,
    pub members: Vec<u128>,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub orbits: Vec<NetOrbit>,
    orbit_of: Vec<usize>,
}

impl Classification {
    /// Position (in `orbits`) of the orbit containing `id`.
    pub fn orbit_of(&self, id: u128) -> Option<usize> {
        usize::try_from(id)
            .ok()
            .and_then(|i| self.orbit_of.get(i).copied())
    }
}

/// Net-independent geometry for one qubit count: phase space, striation
/// eigenbases, translation operators and line representatives.
#[derive(Clone, Debug)]
pub struct NetFactory<T: Real> {
    qubits: usize,
    space: PhaseSpace,
    systems: Vec<StriationEigensystem<T>>,
    translations: Vec<Matrix<T>>,
    representatives: Vec<usize>,
}

impl<T: Real> NetFactory<T> {
    pub fn new(qubits: usize) -> Result<Self> {
        let field = Field::new(u32::try_from(qubits).unwrap_or(u32::MAX))?;
        let space = PhaseSpace::new(field);
        let systems = eigensystems(&space)?;
        let translations = space
            .points()
            .map(|p| translation_op(space.field(), &p).matrix)
            .collect();
        let n = space.order();
        let representatives = (0..space.lines().len())
            .map(|l| space.representative(l).index(n))
            .collect();
        Ok(NetFactory {
            qubits,
            space,
            systems,
            translations,
            representatives,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn order(&self) -> usize {
        self.space.order()
    }

    pub fn space(&self) -> &PhaseSpace {
        &self.space
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn eigensystems(&self) -> &[StriationEigensystem<T>] {
        &self.systems
    }

    /// `T_β` indexed by point index.
    pub fn translation(&self, point: usize) -> &Matrix<T> {
        &self.translations[point]
    }

    pub fn net_id(&self, index: u128) -> Result<NetId> {
        NetId::from_index(self.order(), index)
    }

    pub fn build_index(&self, index: u128) -> Result<QuantumNet<T>> {
        self.build(&self.net_id(index)?)
    }

    pub fn build(&self, id: &NetId) -> Result<QuantumNet<T>> {
        let n = self.order();
        if id.order() != n {
            return Err(Error::InvalidNet {
                digits: id.digits().to_vec(),
                order: n,
            });
        }
        let mut projectors = Vec::with_capacity(self.space.lines().len());
        for (s, &digit) in id.digits().iter().enumerate() {
            let ray = &self.systems[s].states[digit as usize];
            for c in 0..n {
                let line = s * n + c;
                let shift = &self.translations[self.representatives[line]];
                projectors.push(if c == 0 {
                    ray.clone()
                } else {
                    ray.conjugate_by(shift)
                });
            }
        }
        let identity = Matrix::identity(n);
        let point_ops = self
            .space
            .points()
            .map(|p| {
                self.space
                    .lines_through(&p)
                    .into_iter()
                    .fold(identity.scale_real(-T::one()), |acc, l| {
                        &acc + &projectors[l]
                    })
            })
            .collect();
        Ok(QuantumNet {
            id: id.clone(),
            qubits: self.qubits,
            projectors,
            point_ops,
        })
    }

    pub fn enumerate(&self, mode: &Enumeration) -> Result<Vec<NetId>> {
        let n = self.order();
        let total = net_count(n);
        match *mode {
            Enumeration::All => {
                if n >= 8 {
                    return Err(Error::EnumerationTooLarge(
                        total.map_or_else(|| format!("{n}^{}", n + 1), |c| c.to_string()),
                    ));
                }
                let total = total.expect("small orders fit");
                (0..total).map(|i| NetId::from_index(n, i)).collect()
            }
            Enumeration::Sample { count, seed } => {
                let total = total.ok_or_else(|| {
                    Error::Unsupported(format!("net ids for N = {n} do not fit in 128 bits"))
                })?;
                if count as u128 > total {
                    return Err(Error::Validation(format!(
                        "cannot sample {count} of {total} nets"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let offset = rng.random::<u128>() % total;
                // N^{N+1} is a power of two, so an odd stride never repeats before `total` steps.
                let stride = ((total / count.max(1) as u128) | 1) % total.max(1);
                let mut ids: Vec<u128> = (0..count as u128)
                    .map(|i| (offset + i * stride) % total)
                    .collect();
                ids.sort_unstable();
                ids.into_iter().map(|i| NetId::from_index(n, i)).collect()
            }
        }
    }

    /// Image of a net under conjugation of every line projector by `T_β`,
    /// re-identified by matching ray projectors against the eigenbases.
    pub fn shift_net(&self, id: &NetId, beta: &Point) -> Result<NetId> {
        let t = &self.translations[beta.index(self.order())];
        let digits = id
            .digits()
            .iter()
            .enumerate()
            .map(|(s, &d)| {
                let image = self.systems[s].states[d as usize].conjugate_by(t);
                self.systems[s]
                    .states
                    .iter()
                    .position(|st| st.approx_eq(&image, T::recon_tol()))
                    .map(|i| i as u32)
                    .ok_or_else(|| {
                        Error::Internal(format!(
                            "shifted ray of striation {s} matches no eigenstate"
                        ))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        NetId::from_digits(self.order(), digits)
    }

    /// Partition of all nets into orbits under the N² translations.
    pub fn classify(&self) -> Result<Classification> {
        let n = self.order();
        if n > 4 {
            return Err(Error::EnumerationTooLarge(
                net_count(n).map_or_else(|| "overflow".into(), |c| c.to_string()),
            ));
        }
        let strs = n + 1;
        // table[β][s][d] = digit of the image of eigenstate d of striation s under T_β.
        let mut table = vec![vec![vec![0u32; n]; strs]; n * n];
        for (b, row) in table.iter_mut().enumerate() {
            let t = &self.translations[b];
            for (s, cell) in row.iter_mut().enumerate() {
                for (d, slot) in cell.iter_mut().enumerate() {
                    let image = self.systems[s].states[d].conjugate_by(t);
                    *slot = self.systems[s]
                        .states
                        .iter()
                        .position(|st| st.approx_eq(&image, T::recon_tol()))
                        .ok_or_else(|| {
                            Error::Internal(format!(
                                "shifted eigenstate {d} of striation {s} unmatched"
                            ))
                        })? as u32;
                }
            }
        }

        let total = net_count(n).expect("n <= 4") as usize;
        let mut orbit_of = vec![usize::MAX; total];
        let mut orbits = Vec::new();
        for start in 0..total {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = NetId::from_index(n, start as u128)?;
            let mut members: Vec<u128> = table
                .iter()
                .map(|row| {
                    let digits = id
                        .digits()
                        .iter()
                        .enumerate()
                        .map(|(s, &d)| row[s][d as usize])
                        .collect();
                    NetId::from_digits(n, digits).map(|m| m.index().expect("small order"))
                })
                .collect::<Result<_>>()?;
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                if orbit_of[m as usize] != usize::MAX {
                    return Err(Error::Internal(format!("net {m} lies in two orbits")));
                }
                orbit_of[m as usize] = orbits.len();
            }
            orbits.push(NetOrbit {
                representative: members[0],
                members,
            });
        }
        Ok(Classification { orbits, orbit_of })
    }
}
