//! Reference implementations that share no code with the library.
#![allow(dead_code)]

use dwf_core::{CMatrix, Net, Nets, State};
use num_complex::Complex64;

/// Irreducible polynomials for GF(2^m), m = 1..5, leading term included.
pub const POLYNOMIALS: [u32; 5] = [0b10, 0b111, 0b1011, 0b10011, 0b100101];

/// Carry-less product followed by long division by the field polynomial.
pub fn gf_mul(m: u32, a: u32, b: u32) -> u32 {
    let poly = POLYNOMIALS[m as usize - 1];
    let mut prod = 0u32;
    for i in 0..m {
        if b >> i & 1 == 1 {
            prod ^= a << i;
        }
    }
    for deg in (m..2 * m).rev() {
        if prod >> deg & 1 == 1 {
            prod ^= poly << (deg - m);
        }
    }
    prod
}

/// Absolute trace, summed as x + x^2 + x^4 + ...
pub fn gf_trace(m: u32, x: u32) -> u32 {
    let mut acc = 0;
    let mut y = x;
    for _ in 0..m {
        acc ^= y;
        y = gf_mul(m, y, y);
    }
    acc
}

/// Partial trace by explicit index summation over the traced qubits.
pub fn partial_trace(rho: &CMatrix, n: usize, keep: &[usize]) -> CMatrix {
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let k = keep.len();
    let bit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
    let mut out = CMatrix::zeros(1 << k, 1 << k);
    for i in 0..1usize << n {
        for j in 0..1usize << n {
            if traced.iter().any(|&q| bit(i, q) != bit(j, q)) {
                continue;
            }
            let r = keep.iter().fold(0, |acc, &q| acc << 1 | bit(i, q));
            let c = keep.iter().fold(0, |acc, &q| acc << 1 | bit(j, q));
            out[(r, c)] += rho[(i, j)];
        }
    }
    out
}

/// `2 |ψ00 ψ11 − ψ01 ψ10|` for a normalized two-qubit vector.
pub fn amplitude_concurrence(psi: &[Complex64]) -> f64 {
    2.0 * (psi[0] * psi[3] - psi[1] * psi[2]).norm()
}

/// `W_α = Tr(ρ A_α) / N` summed entry by entry.
pub fn wigner(rho: &CMatrix, net: &Net) -> Vec<f64> {
    let n = net.order();
    net.point_ops()
        .iter()
        .map(|a| {
            let mut t = Complex64::new(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    t += rho[(i, j)] * a[(j, i)];
                }
            }
            t.re / n as f64
        })
        .collect()
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Seeded net index below `count`.
pub fn pick(rng: &mut dwf_core::StateSampler, nets: &Nets) -> Net {
    let count = dwf_core::net::net_count(nets.order()).expect("small order");
    nets.build_index(rng.below(count)).unwrap()
}

pub fn state_from(rho: CMatrix) -> State {
    State::new(rho).unwrap()
}
