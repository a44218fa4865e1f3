//! Acceptance report: one line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dwf_core::{
    concurrence_from_dwf, conjugation_matrix, dwf_from_rho, hadamard_matrix, line_probability,
    product_reduce, purity_from_dwf, reduce_dwf, reduction_map, rho_from_dwf, stokes_from_rho,
    CMatrix, Detector, Enumeration, KeepSet, Net, Nets, ProductForm, StateSampler, Subsystem,
};
use num_complex::Complex64;

const ORTHO_TOL: f64 = 1e-9;
const REDUCTION_TOL: f64 = 1e-10;
const PRODUCT_TOL: f64 = 1e-10;
const BRIDGE_TOL: f64 = 1e-10;
const F_GRID: f64 = 1e-12;
const CONCURRENCE_TOL: f64 = 1e-8;
const ROUND_TRIP_TOL: f64 = 1e-10;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn all_nets(f: &Nets) -> Vec<Net> {
    f.enumerate(&Enumeration::All)
        .unwrap()
        .iter()
        .map(|id| f.build(id).unwrap())
        .collect()
}

fn sampled_nets(f: &Nets, count: usize, seed: u64) -> Vec<Net> {
    f.enumerate(&Enumeration::Sample { count, seed })
        .unwrap()
        .iter()
        .map(|id| f.build(id).unwrap())
        .collect()
}

/// Nets at n <= 2 exhaustively plus 100 sampled at n = 3.
fn test_nets() -> Vec<Net> {
    let mut nets = all_nets(&Nets::new(1).unwrap());
    nets.extend(all_nets(&Nets::new(2).unwrap()));
    nets.extend(sampled_nets(&Nets::new(3).unwrap(), 100, 2718));
    nets
}

fn net_counts() -> Outcome {
    let counts: Vec<usize> = [1, 2]
        .iter()
        .map(|&n| {
            Nets::new(n)
                .unwrap()
                .enumerate(&Enumeration::All)
                .unwrap()
                .len()
        })
        .collect();
    outcome(
        counts == [8, 1024],
        format!("n=1: {}, n=2: {}", counts[0], counts[1]),
    )
}

fn trace_orthogonality() -> Outcome {
    let nets = test_nets();
    let mut worst = 0.0f64;
    for net in &nets {
        let n = net.order();
        for (a, x) in net.point_ops().iter().enumerate() {
            for (b, y) in net.point_ops().iter().enumerate() {
                let mut t = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    for j in 0..n {
                        t += x[(i, j)] * y[(j, i)];
                    }
                }
                let expect = if a == b { n as f64 } else { 0.0 };
                worst = worst.max((t - expect).norm());
            }
        }
    }
    outcome(
        worst < ORTHO_TOL,
        format!("{} nets, max deviation {worst:.2e}", nets.len()),
    )
}

fn product_census() -> Outcome {
    let f = Nets::new(2).unwrap();
    let det = Detector::new().unwrap();
    let (mut six, mut seven, mut recon) = (0, 0, 0.0f64);
    let field = f.field().clone();
    for net in all_nets(&f) {
        let report = det.detect(&net).unwrap();
        match report.form {
            ProductForm::SecondConjugated => six += 1,
            ProductForm::FirstConjugated => seven += 1,
            ProductForm::None => continue,
        }
        let (b, c) = report.factors.unwrap();
        for (idx, a) in net.point_ops().iter().enumerate() {
            let p = dwf_core::Point::from_index(idx, 4);
            let i1 = dwf_core::product::subsystem_point(&field, &p, 0);
            let i2 = dwf_core::product::subsystem_point(&field, &p, 1);
            recon = recon.max(b[i1].kron(&c[i2]).max_abs_diff(a));
        }
    }
    outcome(
        six == 16 && seven == 16 && recon < 1e-9,
        format!(
            "{} product nets ({six} + {seven}), factor reconstruction {recon:.2e}",
            six + seven
        ),
    )
}

fn equivalence_classes() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (n, orbits, size) in [(1usize, 2usize, 4usize), (2, 64, 16)] {
        let f = Nets::new(n).unwrap();
        let c = f.classify().unwrap();
        let sizes_ok = c.orbits.len() == orbits && c.orbits.iter().all(|o| o.members.len() == size);
        // every member must be a translate of its orbit representative
        let order = f.order();
        let members_ok = c.orbits.iter().all(|o| {
            let rep = f.build_index(o.representative).unwrap();
            o.members.iter().all(|&m| {
                let net = f.build_index(m).unwrap();
                (0..order * order).any(|b| {
                    let t = f.translation(b);
                    rep.projectors()
                        .iter()
                        .zip(net.projectors())
                        .all(|(q, r)| q.conjugate_by(t).approx_eq(r, 1e-9))
                })
            })
        });
        pass &= sizes_ok && members_ok;
        parts.push(format!(
            "N={order}: {} orbits of size {}",
            c.orbits.len(),
            c.orbits[0].members.len()
        ));
    }
    outcome(pass, parts.join(", "))
}

fn reduction_oracle() -> Outcome {
    let mut rng = StateSampler::new(20_250);
    let mut worst = 0.0f64;
    let mut checks = 0;
    for n in [2usize, 3] {
        let src_nets = Nets::new(n).unwrap();
        let states: Vec<_> = (0..25).map(|_| rng.ginibre::<f64>(n)).collect();
        for keep in KeepSet::enumerate(n) {
            let dst_nets = Nets::new(keep.len()).unwrap();
            let oracles: Vec<CMatrix> = states
                .iter()
                .map(|s| common::partial_trace(s.rho(), n, keep.kept()))
                .collect();
            for _ in 0..10 {
                let src = common::pick(&mut rng, &src_nets);
                let dst = common::pick(&mut rng, &dst_nets);
                let map = reduction_map(&src, &dst, &keep).unwrap();
                for (state, reduced) in states.iter().zip(&oracles) {
                    let got = reduce_dwf(&dwf_from_rho(state, &src).unwrap(), &map).unwrap();
                    worst = worst.max(common::max_diff(
                        got.values(),
                        &common::wigner(reduced, &dst),
                    ));
                    checks += 1;
                }
            }
        }
    }
    outcome(
        worst < REDUCTION_TOL,
        format!("{checks} reductions, max deviation {worst:.2e}"),
    )
}

fn product_formulas() -> Outcome {
    let f2 = Nets::new(2).unwrap();
    let f1 = Nets::new(1).unwrap();
    let det = Detector::new().unwrap();
    let mut rng = StateSampler::new(1313);
    let states: Vec<_> = (0..50).map(|_| rng.ginibre::<f64>(2)).collect();
    let (mut nets, mut worst) = (0, 0.0f64);
    for net in all_nets(&f2) {
        if !det.detect(&net).unwrap().is_product() {
            continue;
        }
        nets += 1;
        for state in &states {
            let w = dwf_from_rho(state, &net).unwrap();
            for (which, keep) in [(Subsystem::A, 0), (Subsystem::B, 1)] {
                let got = product_reduce(&w, &net, &det, which).unwrap();
                let target = f1.build_index(got.net().index().unwrap()).unwrap();
                let map =
                    reduction_map(&net, &target, &KeepSet::new(2, vec![keep]).unwrap()).unwrap();
                let general = reduce_dwf(&w, &map).unwrap();
                worst = worst.max(got.max_abs_diff(&general));
            }
        }
    }
    outcome(
        nets == 32 && worst < PRODUCT_TOL,
        format!("{nets} nets x 50 states x 2 subsystems, max deviation {worst:.2e}"),
    )
}

fn hadamard_bridge() -> Outcome {
    let nets = test_nets();
    let mut rng = StateSampler::new(4242);
    let states: Vec<Vec<_>> = (1..=3)
        .map(|n| (0..50).map(|_| rng.ginibre::<f64>(n)).collect())
        .collect();
    let stokes: Vec<Vec<_>> = states
        .iter()
        .map(|ss| ss.iter().map(stokes_from_rho).collect())
        .collect();
    let (mut entries_ok, mut gram_ok, mut worst) = (true, true, 0.0f64);
    for net in &nets {
        let h = hadamard_matrix(net).unwrap();
        let size = h.size();
        entries_ok &= (0..size).all(|r| (0..size).all(|c| h.get(r, c).abs() == 1));
        let gram = h.gram();
        gram_ok &= (0..size)
            .all(|r| (0..size).all(|c| gram[r * size + c] == if r == c { size as i64 } else { 0 }));
        let k = net.qubits() - 1;
        for (state, s) in states[k].iter().zip(&stokes[k]) {
            let via_w = h.stokes(&dwf_from_rho(state, net).unwrap()).unwrap();
            worst = worst.max(common::max_diff(via_w.values(), s.values()));
        }
    }
    outcome(
        entries_ok && gram_ok && worst < BRIDGE_TOL,
        format!(
            "{} nets: entries ±1 {entries_ok}, H Hᵀ = N² I {gram_ok}, max |S - HW| {worst:.2e}",
            nets.len()
        ),
    )
}

fn f_net_independence() -> Outcome {
    let nets = test_nets();
    let mut reference: [Option<Vec<i64>>; 3] = [None, None, None];
    let mut differing = 0;
    for net in &nets {
        let f = conjugation_matrix(net).unwrap();
        let rounded: Vec<i64> = f
            .as_slice()
            .iter()
            .map(|x| (x / F_GRID).round() as i64)
            .collect();
        match &reference[net.qubits() - 1] {
            None => reference[net.qubits() - 1] = Some(rounded),
            Some(r) if *r != rounded => differing += 1,
            Some(_) => {}
        }
    }
    outcome(
        differing == 0,
        format!(
            "{} nets, {differing} differ from the first of their size",
            nets.len()
        ),
    )
}

fn concurrence() -> Outcome {
    let f2 = Nets::new(2).unwrap();
    let mut rng = StateSampler::new(99);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let psi = rng.pure_vector::<f64>(2);
        let state = common::state_from(CMatrix::outer(&psi, &psi));
        let expect = common::amplitude_concurrence(&psi);
        for _ in 0..5 {
            let net = common::pick(&mut rng, &f2);
            let c = concurrence_from_dwf(&dwf_from_rho(&state, &net).unwrap(), &net).unwrap();
            worst = worst.max((c - expect).abs());
        }
    }
    outcome(
        worst < CONCURRENCE_TOL,
        format!("100 states x 5 nets, max deviation {worst:.2e}"),
    )
}

fn round_trip_and_normalization() -> Outcome {
    let mut rng = StateSampler::new(7);
    let mut nets = all_nets(&Nets::new(1).unwrap());
    nets.extend(all_nets(&Nets::new(2).unwrap()));
    nets.extend(sampled_nets(&Nets::new(3).unwrap(), 100, 31));
    let spaces: Vec<Nets> = (1..=3).map(|n| Nets::new(n).unwrap()).collect();
    let (mut trip, mut norm, mut lines, mut purity) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for net in &nets {
        let space = spaces[net.qubits() - 1].space();
        for _ in 0..3 {
            let state = rng.ginibre::<f64>(net.qubits());
            let w = dwf_from_rho(&state, net).unwrap();
            trip = trip.max(
                rho_from_dwf(&w, net)
                    .unwrap()
                    .rho()
                    .max_abs_diff(state.rho()),
            );
            norm = norm.max((w.total() - 1.0).abs());
            purity = purity.max((purity_from_dwf(&w) - state.purity()).abs());
            for s in space.striations() {
                let probs: Vec<f64> = s
                    .lines
                    .iter()
                    .map(|&l| line_probability(&w, space.line(l)))
                    .collect();
                lines = lines.max((probs.iter().sum::<f64>() - 1.0).abs());
                lines = lines.max(probs.iter().fold(0.0f64, |m, &p| m.max(-p)));
            }
        }
    }
    let worst = trip.max(norm).max(lines).max(purity);
    outcome(
        worst < ROUND_TRIP_TOL,
        format!(
            "{} nets: round trip {trip:.1e}, sum {norm:.1e}, striations {lines:.1e}, purity {purity:.1e}",
            nets.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("net counts", Duration::from_secs(1), net_counts),
        (
            "trace orthogonality",
            Duration::from_secs(120),
            trace_orthogonality,
        ),
        (
            "product-structure census",
            Duration::from_secs(300),
            product_census,
        ),
        (
            "equivalence classes",
            Duration::from_secs(300),
            equivalence_classes,
        ),
        (
            "reduction oracle",
            Duration::from_secs(180),
            reduction_oracle,
        ),
        (
            "product-net reduction formulas",
            Duration::from_secs(120),
            product_formulas,
        ),
        ("Hadamard bridge", Duration::from_secs(120), hadamard_bridge),
        (
            "F net-independence",
            Duration::from_secs(120),
            f_net_independence,
        ),
        ("concurrence", Duration::from_secs(60), concurrence),
        (
            "round trip and normalization",
            Duration::from_secs(60),
            round_trip_and_normalization,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed <= *budget;
        if !pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {} [{:.2}s of {}s]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
