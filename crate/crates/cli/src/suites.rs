//! Invariant suites run by `dwf verify`. The registry below is the only list
//! of suites; `--suite all` runs every entry in order.

use std::io::Write;

use dwf_core::pauli::{eigensystems, translation_op};
use dwf_core::product::subsystem_point;
use dwf_core::tensor::{factorize_tensor, partial_trace};
use dwf_core::{
    concurrence_from_dwf, conjugation_matrix, conversion_map, dwf_from_rho, hadamard_matrix,
    line_probability, product_reduce, purity_from_dwf, reduce_dwf, reduction_map, rho_from_dwf,
    spinflip_matrix, stokes_from_rho, Basis, CMatrix, Detector, Enumeration, Field, KeepSet, Net,
    Nets, Point, ProductForm, RMatrix, StateSampler, Subsystem,
};

use crate::Failure;

const TOL: f64 = 1e-10;
const RECON_TOL: f64 = 1e-9;
const SEED: u64 = 20_170_301;

type SuiteFn = fn(usize, &mut Tally) -> Result<(), Failure>;

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    pub run: SuiteFn,
}

pub const REGISTRY: &[Suite] = &[
    Suite {
        name: "field",
        about: "field axioms, inverses, trace duality, expansion bijection",
        run: field,
    },
    Suite {
        name: "phase-space",
        about: "line incidence, lines per point, translation closure",
        run: phase_space,
    },
    Suite {
        name: "eigen",
        about: "striation projectors and tensor factorization",
        run: eigen,
    },
    Suite {
        name: "pauli",
        about: "commuting striations, unbiased bases, composition up to sign",
        run: pauli,
    },
    Suite {
        name: "nets",
        about: "net counts, trace orthogonality, covariance, line sums",
        run: nets,
    },
    Suite {
        name: "classes",
        about: "translation-orbit partition",
        run: classes,
    },
    Suite {
        name: "wigner",
        about: "normalization, line probabilities, linearity, purity, round trip",
        run: wigner,
    },
    Suite {
        name: "stokes",
        about: "Hadamard matrices, dual path, F and G",
        run: stokes,
    },
    Suite {
        name: "reduction",
        about: "partial-trace oracle, composition, conversion, mixing",
        run: reduction,
    },
    Suite {
        name: "product",
        about: "product-net census, conjugate pairs, marginal formulas",
        run: product,
    },
    Suite {
        name: "concurrence",
        about: "pure-state concurrence against the amplitude formula",
        run: concurrence,
    },
];

#[derive(Default)]
pub struct Tally {
    checks: usize,
    failed: usize,
    /// First few failure descriptions.
    failures: Vec<String>,
    skipped: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }

    fn skip(&mut self, why: &str) {
        self.skipped = Some(why.to_string());
    }
}

pub fn verify(out: &mut dyn Write, suite: &str, n: usize) -> Result<(), Failure> {
    if !(1..=4).contains(&n) {
        return Err(Failure::Validation(format!(
            "--n must be between 1 and 4, got {n}"
        )));
    }
    let selected: Vec<&Suite> = if suite == "all" {
        REGISTRY.iter().collect()
    } else {
        let s = REGISTRY.iter().find(|s| s.name == suite).ok_or_else(|| {
            let names: Vec<_> = REGISTRY.iter().map(|s| s.name).collect();
            Failure::Validation(format!(
                "unknown suite {suite:?}; known: all, {}",
                names.join(", ")
            ))
        })?;
        vec![s]
    };
    let w = |out: &mut dyn Write, line: String| {
        writeln!(out, "{line}").map_err(|e| Failure::Internal(format!("write failed: {e}")))
    };
    let (mut passed, mut failed, mut skipped) = (0, 0, 0);
    for s in selected {
        let mut t = Tally::default();
        (s.run)(n, &mut t)?;
        let bad = t.failed;
        if let Some(why) = &t.skipped {
            skipped += 1;
            w(out, format!("SKIP {} (n={n}): {why}", s.name))?;
            continue;
        }
        let status = if bad == 0 { "PASS" } else { "FAIL" };
        if bad == 0 {
            passed += 1;
        } else {
            failed += 1;
        }
        w(
            out,
            format!(
                "{status} {} (n={n}): {}/{} checks passed; {}",
                s.name,
                t.checks - bad,
                t.checks,
                s.about
            ),
        )?;
        for f in &t.failures {
            w(out, format!("     {f}"))?;
        }
    }
    w(
        out,
        format!("summary: {passed} passed, {failed} failed, {skipped} skipped"),
    )?;
    if failed > 0 {
        return Err(Failure::Internal(format!("{failed} suite(s) failed")));
    }
    Ok(())
}

fn test_nets(factory: &Nets) -> Result<Vec<Net>, Failure> {
    let mode = match factory.qubits() {
        1 | 2 => Enumeration::All,
        3 => Enumeration::Sample {
            count: 100,
            seed: SEED,
        },
        _ => Enumeration::Sample {
            count: 4,
            seed: SEED,
        },
    };
    factory
        .enumerate(&mode)?
        .iter()
        .map(|id| factory.build(id).map_err(Failure::from))
        .collect()
}

fn random_net(rng: &mut StateSampler, factory: &Nets) -> Result<Net, Failure> {
    let count = dwf_core::net::net_count(factory.order()).expect("n <= 4");
    Ok(factory.build_index(rng.below(count))?)
}

fn field(n: usize, t: &mut Tally) -> Result<(), Failure> {
    let f = Field::new(n as u32)?;
    let els: Vec<_> = f.elements().collect();
    for &x in &els {
        if !x.is_zero() {
            let ok = f
                .inv(x)
                .map(|i| f.mul(x, i) == dwf_core::FieldElement::ONE)
                .unwrap_or(false);
            t.check(ok, || format!("{x:?} has no inverse"));
        }
        let bits = f.expand(x, Basis::Dual);
        t.check(f.compose(&bits, Basis::Dual).ok() == Some(x), || {
            format!("dual expansion of {x:?}")
        });
        let bits = f.expand(x, Basis::Primal);
        t.check(f.compose(&bits, Basis::Primal).ok() == Some(x), || {
            format!("primal expansion of {x:?}")
        });
        for &y in &els {
            t.check(
                f.add(x, y) == f.add(y, x) && f.mul(x, y) == f.mul(y, x),
                || format!("{x:?}, {y:?} commute"),
            );
            let dot = (f.expand_bits(x, Basis::Primal) & f.expand_bits(y, Basis::Dual)).count_ones()
                as u8
                & 1;
            t.check(dot == f.trace(f.mul(x, y)), || {
                format!("duality at {x:?}, {y:?}")
            });
            for &z in &els {
                let assoc = f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
                    && f.add(f.add(x, y), z) == f.add(x, f.add(y, z));
                let dist = f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z));
                t.check(assoc && dist, || {
                    format!("associativity/distributivity at {x:?}, {y:?}, {z:?}")
                });
            }
        }
    }
    Ok(())
}

fn phase_space(n: usize, t: &mut Tally) -> Result<(), Failure> {
    let nets = Nets::new(n)?;
    let space = nets.space();
    let order = space.order();
    let lines = space.lines();
    if order <= 8 {
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i + 1..] {
                let shared = a.points.iter().filter(|p| b.contains(p)).count();
                let expect = usize::from(a.striation != b.striation);
                t.check(shared == expect, || {
                    format!(
                        "lines {} and {} share {shared} points",
                        a.line_id(),
                        b.line_id()
                    )
                });
            }
        }
    }
    for p in space.points() {
        t.check(space.lines_through(&p).len() == order + 1, || {
            format!("{p:?} is on the wrong number of lines")
        });
        for l in 0..lines.len() {
            let moved = space.translate_line(l, &p);
            t.check(lines[moved].striation == lines[l].striation, || {
                format!("line {l} moved by {p:?}")
            });
        }
    }
    Ok(())
}

fn eigen(n: usize, t: &mut Tally) -> Result<(), Failure> {
    let nets = Nets::new(n)?;
    let order = nets.order();
    for sys in nets.eigensystems() {
        let sum = sys
            .states
            .iter()
            .fold(CMatrix::zeros(order, order), |acc, p| &acc + p);
        t.check(sum.approx_eq(&CMatrix::identity(order), TOL), || {
            format!("striation {} does not resolve I", sys.striation)
        });
        for (i, p) in sys.states.iter().enumerate() {
            t.check(p.is_hermitian(TOL), || {
                format!("projector {i} not Hermitian")
            });
            t.check((p.trace()?.re - 1.0).abs() < TOL, || {
                format!("projector {i} trace")
            });
            for (j, q) in sys.states.iter().enumerate() {
                let prod = p.matmul(q)?;
                let expect = if i == j {
                    p.clone()
                } else {
                    CMatrix::zeros(order, order)
                };
                t.check(prod.approx_eq(&expect, TOL), || {
                    format!("striation {} projectors {i}, {j}", sys.striation)
                });
            }
        }
    }
    if n >= 2 {
        let mut rng = StateSampler::new(SEED);
        for _ in 0..10 {
            let a = rng.ginibre::<f64>(1).into_matrix();
            let b = rng.ginibre::<f64>(n - 1).into_matrix();
            let m = a.kron(&b);
            let ok = factorize_tensor(&m, 2, order / 2)
                .is_some_and(|(x, y)| x.kron(&y).approx_eq(&m, RECON_TOL));
            t.check(ok, || "factorization round trip".into());
        }
    }
    Ok(())
}

fn pauli(n: usize, t: &mut Tally) -> Result<(), Failure> {
    let nets = Nets::new(n)?;
    let space = nets.space();
    let systems = eigensystems::<f64>(space)?;
    for sys in &systems {
        for (i, a) in sys.ops.iter().enumerate() {
            for b in &sys.ops[i + 1..] {
                t.check((a * b).approx_eq(&(b * a), TOL), || {
                    format!("striation {} ops commute", sys.striation)
                });
            }
            for st in &sys.states {
                t.check(st.conjugate_by(a).approx_eq(st, TOL), || {
                    format!("striation {} state invariance", sys.striation)
                });
            }
        }
    }
    let inv_n = 1.0 / nets.order() as f64;
    for (i, a) in systems.iter().enumerate() {
        for b in &systems[i + 1..] {
            for u in &a.vectors {
                for v in &b.vectors {
                    let overlap: num_complex::Complex64 =
                        u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
                    t.check((overlap.norm_sqr() - inv_n).abs() < TOL, || {
                        "bases not unbiased".into()
                    });
                }
            }
        }
    }
    let field = space.field();
    let pts: Vec<Point> = space.points().collect();
    for a in &pts {
        let ta = translation_op::<f64>(field, a).matrix;
        for b in &pts {
            let tb = translation_op::<f64>(field, b).matrix;
            let tab = translation_op::<f64>(field, &space.translate_point(a, b)).matrix;
            let prod = ta.matmul(&tb)?;
            let ok = prod.approx_eq(&tab, TOL) || prod.approx_eq(&tab.scale_real(-1.0), TOL);
            t.check(ok, || {
                format!("T at {a:?} and {b:?} do not compose up to sign")
            });
        }
    }
    Ok(())
}

fn nets(n: usize, t: &mut Tally) -> Result<(), Failure> {
    let factory = Nets::new(n)?;
    let order = factory.order();
    if n <= 2 {
        let count = factory.enumerate(&Enumeration::All)?.len();
        t.check(count == [8, 1024][n - 1], || {
            format!("{count} nets enumerated")
        });
    }
    let space = factory.space();
    let nf = order as f64;
    for net in test_nets(&factory)? {
        let ops = net.point_ops();
        for (a, x) in ops.iter().enumerate() {
            for (b, y) in ops.iter().enumerate().skip(a) {
                let expect = if a == b { nf } else { 0.0 };
                let tr = x.trace_product(y)?;
                t.check((tr.re - expect).abs() < TOL && tr.im.abs() < TOL, || {
                    format!("net {}: Tr(A{a} A{b})", net.id())
                });
            }
        }
        for (l, line) in space.lines().iter().enumerate() {
            let s = line
                .points
                .iter()
                .fold(CMatrix::zeros(order, order), |acc, p| {
                    &acc + &ops[p.index(order)]
                });
            t.check(
                s.approx_eq(&net.projectors()[l].scale_real(nf), RECON_TOL),
                || format!("net {}: line sum {l}", net.id()),
            );
        }
        for b in (0..order * order).step_by(order.max(1) / 2 + 1) {
            let beta = Point::from_index(b, order);
            let tb = factory.translation(b);
            for l in 0..space.lines().len() {
                let moved = space.translate_line(l, &beta);
                let ok = net.projectors()[l]
                    .conjugate_by(tb)
                    .approx_eq(&net.projectors()[moved], RECON_TOL);
                t.check(ok, || {
                    format!("net {}: covariance of line {l} under {beta:?}", net.id())
                });
            }
        }
    }
    Ok(())
}

fn classes(n: usize, t: &mut Tally) -> Result<(), Failure> {
    if n > 2 {
        t.skip("orbit partition is enumerated for n <= 2");
        return Ok(());
    }
    let c = Nets::new(n)?.classify()?;
    let (orbits, size) = [(2, 4), (64, 16)][n - 1];
    t.check(c.orbits.len() == orbits, || {
        format!("{} orbits", c.orbits.len())
    });
    for o in &c.orbits {
        t.check(o.members.len() == size, || {
            format!(
                "orbit of {} has {} members",
                o.representative,
                o.members.len()
            )
        });
    }
    Ok(())
}

fn wigner(n: usize, t: &mut Tally) -> Result<(), Failure> {
    let factory = Nets::new(n)?;
    let space = factory.space();
    let mut rng = StateSampler::new(SEED);
    for net in test_nets(&factory)?.iter().take(200) {
        let (r1, r2) = (rng.ginibre::<f64>(n), rng.ginibre::<f64>(n));
        let w1 = dwf_from_rho(&r1, net)?;
        t.check((w1.total() - 1.0).abs() < TOL, || {
            format!("net {}: normalization", net.id())
        });
        for s in space.striations() {
            let probs: Vec<f64> = s
                .lines
                .iter()
                .map(|&l| line_probability(&w1, space.line(l)))
                .collect();
            let ok =
                probs.iter().all(|&p| p > -TOL) && (probs.iter().sum::<f64>() - 1.0).abs() < TOL;
            t.check(ok, || {
                format!("net {}: striation {} probabilities", net.id(), s.id)
            });
        }
        t.check((purity_from_dwf(&w1) - r1.purity()).abs() < TOL, || {
            format!("net {}: purity", net.id())
        });
        let back = rho_from_dwf(&w1, net)?;
        t.check(back.rho().approx_eq(r1.rho(), TOL), || {
            format!("net {}: round trip", net.id())
        });
        let a = 0.37;
        let mix = dwf_core::State::new(&r1.rho().scale_real(a) + &r2.rho().scale_real(1.0 - a))?;
        let wm = dwf_from_rho(&mix, net)?;
        let w2 = dwf_from_rho(&r2, net)?;
        let ok = wm
            .values()
            .iter()
            .zip(w1.values().iter().zip(w2.values()))
            .all(|(m, (x, y))| (m - (a * x + (1.0 - a) * y)).abs() < TOL);
        t.check(ok, || format!("net {}: linearity", net.id()));
    }
    Ok(())
}

fn stokes(n: usize, t: &mut Tally) -> Result<(), Failure> {
    let factory = Nets::new(n)?;
    let mut rng = StateSampler::new(SEED);
    let states: Vec<_> = (0..10).map(|_| rng.ginibre::<f64>(n)).collect();
    let mut reference: Option<Vec<i64>> = None;
    for net in test_nets(&factory)? {
        let h = hadamard_matrix(&net)?;
        let size = h.size();
        let gram = h.gram();
        let ok = (0..size)
            .all(|r| (0..size).all(|c| gram[r * size + c] == if r == c { size as i64 } else { 0 }));
        t.check(ok, || format!("net {}: H Hᵀ", net.id()));
        for s in &states {
            let via = h.stokes(&dwf_from_rho(s, &net)?)?;
            let direct = stokes_from_rho(s);
            let ok = via
                .values()
                .iter()
                .zip(direct.values())
                .all(|(a, b)| (a - b).abs() < TOL);
            t.check(ok, || format!("net {}: S = HW", net.id()));
        }
        let f = conjugation_matrix(&net)?;
        let g = spinflip_matrix(&net)?;
        let id = RMatrix::identity(size);
        t.check(f.matmul(&f)?.max_abs_diff(&id) < TOL, || {
            format!("net {}: F² = I", net.id())
        });
        t.check(g.matmul(&g)?.max_abs_diff(&id) < TOL, || {
            format!("net {}: G² = I", net.id())
        });
        let rounded: Vec<i64> = f
            .as_slice()
            .iter()
            .map(|x| (x * 1e12).round() as i64)
            .collect();
        match &reference {
            None => reference = Some(rounded),
            Some(r) => t.check(*r == rounded, || format!("net {}: F differs", net.id())),
        }
    }
    Ok(())
}

fn reduction(n: usize, t: &mut Tally) -> Result<(), Failure> {
    if n < 2 {
        t.skip("needs at least two qubits");
        return Ok(());
    }
    let factory = Nets::new(n)?;
    let mut rng = StateSampler::new(SEED);
    let states: Vec<_> = (0..5).map(|_| rng.ginibre::<f64>(n)).collect();
    for keep in KeepSet::enumerate(n) {
        let sub = Nets::new(keep.len())?;
        for _ in 0..3 {
            let (src, dst) = (random_net(&mut rng, &factory)?, random_net(&mut rng, &sub)?);
            let map = reduction_map(&src, &dst, &keep)?;
            for s in &states {
                let got = reduce_dwf(&dwf_from_rho(s, &src)?, &map)?;
                let oracle = dwf_from_rho(
                    &dwf_core::State::new(partial_trace(s.rho(), n, keep.kept())?)?,
                    &dst,
                )?;
                t.check(got.max_abs_diff(&oracle) < TOL, || {
                    format!("keep {:?}: oracle mismatch", keep.kept())
                });
            }
            let (r1, r2) = (&states[0], &states[1]);
            let a = 0.6;
            let mix =
                dwf_core::State::new(&r1.rho().scale_real(a) + &r2.rho().scale_real(1.0 - a))?;
            let p = |s: &dwf_core::State| -> Result<Vec<f64>, Failure> {
                Ok(reduce_dwf(&dwf_from_rho(s, &src)?, &map)?.into_values())
            };
            let (pm, p1, p2) = (p(&mix)?, p(r1)?, p(r2)?);
            let ok = pm
                .iter()
                .zip(p1.iter().zip(&p2))
                .all(|(m, (x, y))| (m - (a * x + (1.0 - a) * y)).abs() < TOL);
            t.check(ok, || format!("keep {:?}: mixing", keep.kept()));
        }
        if keep.len() >= 2 {
            // drop the first kept qubit in a second step
            let last = KeepSet::new(keep.len(), (1..keep.len()).collect())?;
            let direct_keep = KeepSet::new(n, keep.kept()[1..].to_vec())?;
            let (a, b) = (random_net(&mut rng, &factory)?, random_net(&mut rng, &sub)?);
            let c = random_net(&mut rng, &Nets::new(keep.len() - 1)?)?;
            let two = reduction_map(&b, &c, &last)?
                .matrix()
                .matmul(reduction_map(&a, &b, &keep)?.matrix())?;
            let one = reduction_map(&a, &c, &direct_keep)?;
            t.check(two.max_abs_diff(one.matrix()) < TOL, || {
                format!("keep {:?}: composition", keep.kept())
            });
        }
    }
    for _ in 0..3 {
        let (s, d) = (
            random_net(&mut rng, &factory)?,
            random_net(&mut rng, &factory)?,
        );
        let round = conversion_map(&d, &s)?
            .matrix()
            .matmul(conversion_map(&s, &d)?.matrix())?;
        let size = factory.order() * factory.order();
        t.check(round.max_abs_diff(&RMatrix::identity(size)) < TOL, || {
            "conversion round trip".into()
        });
    }
    Ok(())
}

fn product(n: usize, t: &mut Tally) -> Result<(), Failure> {
    if n != 2 {
        t.skip("product structure is defined for two qubits");
        return Ok(());
    }
    let factory = Nets::new(2)?;
    let sub = Nets::new(1)?;
    let det = Detector::new()?;
    let mut rng = StateSampler::new(SEED);
    let states: Vec<_> = (0..5).map(|_| rng.ginibre::<f64>(2)).collect();
    let mut by_form: [Vec<Net>; 2] = [Vec::new(), Vec::new()];
    for net in test_nets(&factory)? {
        let report = det.detect(&net)?;
        let slot = match report.form {
            ProductForm::SecondConjugated => 0,
            ProductForm::FirstConjugated => 1,
            ProductForm::None => continue,
        };
        let (b, c) = report.factors.as_ref().expect("product nets carry factors");
        let field = factory.field();
        for (idx, a) in net.point_ops().iter().enumerate() {
            let p = Point::from_index(idx, 4);
            let m = b[subsystem_point(field, &p, 0)].kron(&c[subsystem_point(field, &p, 1)]);
            t.check(m.approx_eq(a, RECON_TOL), || {
                format!("net {}: factorization of A{idx}", net.id())
            });
        }
        for s in &states {
            let w = dwf_from_rho(s, &net)?;
            for (which, keep) in [(Subsystem::A, 0), (Subsystem::B, 1)] {
                let got = product_reduce(&w, &net, &det, which)?;
                let target = sub.build(got.net())?;
                let map = reduction_map(&net, &target, &KeepSet::new(2, vec![keep])?)?;
                t.check(got.max_abs_diff(&reduce_dwf(&w, &map)?) < TOL, || {
                    format!("net {}: marginal formula", net.id())
                });
            }
        }
        by_form[slot].push(net);
    }
    t.check(by_form[0].len() == 16 && by_form[1].len() == 16, || {
        format!("census {} + {}", by_form[0].len(), by_form[1].len())
    });
    for a in &by_form[0] {
        let partners = by_form[1]
            .iter()
            .filter(|b| {
                a.projectors()
                    .iter()
                    .zip(b.projectors())
                    .all(|(p, q)| p.conj().approx_eq(q, RECON_TOL))
            })
            .count();
        t.check(partners == 1, || {
            format!("net {} has {partners} conjugate partners", a.id())
        });
    }
    Ok(())
}

fn concurrence(n: usize, t: &mut Tally) -> Result<(), Failure> {
    if n != 2 {
        t.skip("concurrence is defined for two qubits");
        return Ok(());
    }
    let factory = Nets::new(2)?;
    let mut rng = StateSampler::new(SEED);
    for _ in 0..50 {
        let psi = rng.pure_vector::<f64>(2);
        let state = dwf_core::State::new(CMatrix::outer(&psi, &psi))?;
        let expect = 2.0 * (psi[0] * psi[3] - psi[1] * psi[2]).norm();
        for _ in 0..3 {
            let net = random_net(&mut rng, &factory)?;
            let c = concurrence_from_dwf(&dwf_from_rho(&state, &net)?, &net)?;
            t.check((c - expect).abs() < 1e-8, || {
                format!("net {}: concurrence {c} vs {expect}", net.id())
            });
        }
    }
    Ok(())
}
