mod common;

use dwf_core::pauli::translation_op;
use dwf_core::stokes::{sigma_y_string, spinflip_shift};
use dwf_core::{
    conjugation_matrix, dwf_from_rho, hadamard_matrix, spinflip_matrix, stokes_from_rho, CMatrix,
    Nets, RMatrix, StateSampler,
};

fn pauli_string(n: usize, j: usize) -> CMatrix {
    let single = [
        CMatrix::from_f64(2, &[(1., 0.), (0., 0.), (0., 0.), (1., 0.)]),
        CMatrix::from_f64(2, &[(0., 0.), (1., 0.), (1., 0.), (0., 0.)]),
        CMatrix::from_f64(2, &[(0., 0.), (0., -1.), (0., 1.), (0., 0.)]),
        CMatrix::from_f64(2, &[(1., 0.), (0., 0.), (0., 0.), (-1., 0.)]),
    ];
    (0..n).fold(CMatrix::identity(1), |acc, q| {
        acc.kron(&single[(j >> (2 * (n - 1 - q))) & 3])
    })
}

#[test]
fn stokes_components_are_pauli_expectations() {
    let mut rng = StateSampler::new(5);
    for n in 1..=3 {
        let state = rng.ginibre::<f64>(n);
        let s = stokes_from_rho(&state);
        for (j, &v) in s.values().iter().enumerate() {
            let expect = state
                .rho()
                .matmul(&pauli_string(n, j))
                .unwrap()
                .trace()
                .unwrap()
                .re;
            assert!((v - expect).abs() < 1e-13);
        }
        assert!((s.values()[0] - 1.0).abs() < 1e-13);
    }
}

#[test]
fn conjugation_and_spin_flip_act_on_states() {
    let mut rng = StateSampler::new(9);
    for n in 1..=3 {
        let f = Nets::new(n).unwrap();
        let y = sigma_y_string::<f64>(n);
        for _ in 0..4 {
            let net = common::pick(&mut rng, &f);
            let state = rng.ginibre::<f64>(n);
            let w = dwf_from_rho(&state, &net).unwrap();
            let conj = common::state_from(state.rho().conj());
            let flip = common::state_from(conj.rho().conjugate_by(&y));
            let fm = conjugation_matrix(&net).unwrap();
            let gm = spinflip_matrix(&net).unwrap();
            let wc = common::wigner(conj.rho(), &net);
            let wf = common::wigner(flip.rho(), &net);
            assert!(common::max_diff(&fm.apply(w.values()).unwrap(), &wc) < 1e-12);
            assert!(common::max_diff(&gm.apply(w.values()).unwrap(), &wf) < 1e-12);
        }
    }
}

#[test]
fn involutions() {
    for n in 1..=3 {
        let f = Nets::new(n).unwrap();
        let net = f.build_index(5).unwrap();
        let size = f.order() * f.order();
        for m in [
            conjugation_matrix(&net).unwrap(),
            spinflip_matrix(&net).unwrap(),
        ] {
            assert!(m.matmul(&m).unwrap().max_abs_diff(&RMatrix::identity(size)) < 1e-12);
            assert!(m.max_abs_diff(&m.transpose()) < 1e-12);
        }
    }
}

#[test]
fn spin_flip_is_a_shifted_conjugation() {
    for n in 1..=3 {
        let f = Nets::new(n).unwrap();
        let gamma = spinflip_shift(f.field());
        let t = translation_op::<f64>(f.field(), &gamma).matrix;
        let y = sigma_y_string::<f64>(n);
        // σ_y^{⊗n} is the translation by γ up to a global phase
        let overlap = t.adjoint().matmul(&y).unwrap();
        let phase = overlap[(0, 0)];
        assert!((phase.norm() - 1.0).abs() < 1e-12);
        assert!(overlap.approx_eq(&CMatrix::identity(f.order()).scale(phase), 1e-12));

        let net = f.build_index(3).unwrap();
        let (fm, gm) = (
            conjugation_matrix(&net).unwrap(),
            spinflip_matrix(&net).unwrap(),
        );
        let order = f.order();
        for b in 0..order * order {
            let pb = dwf_core::Point::from_index(b, order);
            let shifted = f.space().translate_point(&pb, &gamma).index(order);
            assert!(common::max_diff(gm.row(b), fm.row(shifted)) < 1e-12);
        }
    }
}

#[test]
fn hadamard_is_orthogonal_with_pm_one_entries() {
    let f = Nets::new(3).unwrap();
    let net = f.build_index(123_456).unwrap();
    let h = hadamard_matrix(&net).unwrap();
    let size = h.size();
    for r in 0..size {
        for c in 0..size {
            assert_eq!(h.get(r, c).abs(), 1);
        }
    }
    let gram = h.gram();
    for r in 0..size {
        for c in 0..size {
            assert_eq!(gram[r * size + c], if r == c { size as i64 } else { 0 });
        }
    }
}

#[test]
fn prefactor_normalized_stokes_selection() {
    // With s'_j = Tr(ρΣ_j)/2^n the subsystem selection picks up a factor 2^(n-k).
    let mut rng = StateSampler::new(31);
    let state = rng.ginibre::<f64>(3);
    let full: Vec<f64> = stokes_from_rho(&state)
        .values()
        .iter()
        .map(|x| x / 8.0)
        .collect();
    let reduced = common::state_from(common::partial_trace(state.rho(), 3, &[0]));
    let sub: Vec<f64> = stokes_from_rho(&reduced)
        .values()
        .iter()
        .map(|x| x / 2.0)
        .collect();
    for (j, &v) in sub.iter().enumerate() {
        assert!((v - 4.0 * full[j << 4]).abs() < 1e-14);
    }
}
