//! Acceptance suite: one test per top-level guarantee, each printing a
//! single PASS line (visible with `--nocapture`).

mod common;

use std::time::{Duration, Instant};

use common::{random_cubic_multigraph, random_point_coord, random_rat_cyc, random_slot_grid, rng};
use rand::Rng;

use holant_lab::cyclo::{rat, Cyc12, Rat};
use holant_lab::dichotomy::{
    classify, coordinates_equivalence_check, hardness_witness, real_disjunction_scan, CertKind,
    Terminal, Verdict,
};
use holant_lab::eval::{
    holant_eval_graph, holant_eval_grid, holant_via_symmetrize, solve_tractable,
};
use holant_lab::gadgets::{eval_ab, finisher_set, recursion_matrix, verify_identity_suite};
use holant_lab::grid::SymSignature;
use holant_lab::interp::{
    interpolate_unary_reduction, select_independent, vandermonde_solve, IterationFamily,
};
use holant_lab::poly::CMat;

fn pass(n: u32, what: &str, elapsed: Duration) {
    println!("[PASS] criterion {n}: {what} ({:.2}s)", elapsed.as_secs_f64());
}

#[test]
fn criterion_1_identity_catalogue() {
    let t = Instant::now();
    let records = verify_identity_suite();
    for r in &records {
        assert!(
            r.pass,
            "identity {} ({}) failed:\n  lhs = {}\n  rhs = {}",
            r.name, r.anchor, r.lhs, r.rhs
        );
    }
    let elapsed = t.elapsed();
    assert!(elapsed <= Duration::from_secs(10), "took {elapsed:?}");
    pass(1, "symbolic identity catalogue verified exactly", elapsed);
}

#[test]
fn criterion_2_symmetrize_oracle() {
    let t = Instant::now();
    let mut r = rng(0xACC2);
    for trial in 0..50 {
        let n = 2 * r.gen_range(2..=5); // 4..=10 vertices
        let g = random_cubic_multigraph(n, &mut r);
        let p = holant_via_symmetrize_poly_check(&g, &mut r, trial);
        let _ = p;
    }
    let elapsed = t.elapsed();
    assert!(elapsed <= Duration::from_secs(120), "took {elapsed:?}");
    pass(
        2,
        "symmetrized polynomial matches direct evaluation on 50 random graphs x 5 points",
        elapsed,
    );
}

fn holant_via_symmetrize_poly_check(
    g: &holant_lab::grid::EdgeLabeledGraph,
    r: &mut rand_chacha::ChaCha8Rng,
    trial: usize,
) {
    for k in 0..5 {
        let a = random_point_coord(3, r);
        let b = random_point_coord(3, r);
        let sig = SymSignature::new(vec![a.clone(), Cyc12::one(), b.clone()]);
        let direct = holant_eval_graph(g, &sig).unwrap();
        let via = holant_via_symmetrize(g, &a, &b).unwrap();
        assert_eq!(direct, via, "trial {trial}.{k}: a = {a}, b = {b}");
    }
}

#[test]
fn criterion_3_interpolation_end_to_end() {
    let t = Instant::now();
    let mut r = rng(0xACC3);
    let a = Cyc12::from_int(2);
    let b = Cyc12::from_int(3);
    let m4 = eval_ab(&recursion_matrix(4).unwrap(), &a, &b).unwrap();
    let finishers = finisher_set(&a, &b).unwrap().matrices;
    for trial in 0..20 {
        let slots = trial % 4;
        let grid = random_slot_grid(slots, &mut r);
        let n = grid.slot_count();
        let target = loop {
            let t0 = Cyc12::from_int(r.gen_range(-4..=4));
            let t1 = Cyc12::from_int(r.gen_range(-4..=4));
            if !t0.is_zero() || !t1.is_zero() {
                break [t0, t1];
            }
        };
        let direct = holant_eval_grid(&grid.with_slots_filled(&SymSignature::new(vec![
            target[0].clone(),
            target[1].clone(),
        ])))
        .unwrap();

        // Binary-mode family: M4 at (2, 3) with its finishers.
        let fam = IterationFamily {
            m: m4.clone(),
            s: vec![a.clone(), Cyc12::one(), b.clone()],
            finishers: Some(finishers.clone()),
            bound: IterationFamily::default_bound(n),
        };
        let got = interpolate_unary_reduction(&grid, &target, &fam).unwrap();
        assert_eq!(got, direct, "trial {trial} (M4 family, {n} slots)");
        residual_check(&grid, &fam, n);

        // A random diagonalizable unary family with distinct ratios.
        let p = r.gen_range(2..=5);
        let q = loop {
            let q = r.gen_range(2..=5);
            if q != p {
                break q;
            }
        };
        let fam2 = IterationFamily {
            m: CMat::new(
                2,
                2,
                vec![
                    Cyc12::from_int(p),
                    Cyc12::one(),
                    Cyc12::zero(),
                    Cyc12::from_int(q),
                ],
            ),
            // [0, 1] is never an eigenvector of this upper-triangular
            // matrix (its image has first coordinate 1).
            s: vec![Cyc12::zero(), Cyc12::one()],
            finishers: None,
            bound: IterationFamily::default_bound(n),
        };
        let got2 = interpolate_unary_reduction(&grid, &target, &fam2).unwrap();
        assert_eq!(got2, direct, "trial {trial} (random family, {n} slots)");
        residual_check(&grid, &fam2, n);
    }
    let elapsed = t.elapsed();
    assert!(elapsed <= Duration::from_secs(120), "took {elapsed:?}");
    pass(
        3,
        "interpolation equals direct evaluation on 20 random grids with zero residual",
        elapsed,
    );
}

/// Recover the coefficients explicitly and confirm zero residual on
/// every generated point.
fn residual_check(grid: &holant_lab::grid::SignatureGrid, fam: &IterationFamily, n: usize) {
    if n == 0 {
        return;
    }
    let plan = select_independent(fam, n).unwrap();
    let values: Vec<Cyc12> = plan
        .points
        .iter()
        .map(|pt| {
            holant_eval_grid(
                &grid.with_slots_filled(&SymSignature::new(vec![pt[0].clone(), pt[1].clone()])),
            )
            .unwrap()
        })
        .collect();
    let c = vandermonde_solve(&plan.points, &values, n).unwrap();
    for (pt, val) in plan.points.iter().zip(&values) {
        let mut acc = Cyc12::zero();
        for (i, ci) in c.iter().enumerate() {
            acc = &acc + &(ci * &(&pt[0].pow(i as u32) * &pt[1].pow((n - i) as u32)));
        }
        assert_eq!(&acc, val, "nonzero interpolation residual");
    }
}

#[test]
fn criterion_4_classifier_catalogue() {
    let t = Instant::now();
    let c = |v: i64| Cyc12::from_int(v);
    let i = Cyc12::i();
    let cases: Vec<(Cyc12, Cyc12, bool, Verdict)> = vec![
        (c(1), c(1), false, tcase(1)),
        (c(0), c(0), false, tcase(2)),
        (c(1), c(-1), false, tcase(3)),
        (i.clone(), i.clone(), false, tcase(3)),
        (-&i, -&i, false, tcase(3)),
        (c(0), c(1), false, Verdict::Hard),
        (c(2), c(3), false, Verdict::Hard),
        (&c(1) + &i, c(1), false, Verdict::Hard),
        (c(2), c(2), true, Verdict::PlanarTractableGeneralHard),
        (c(2), c(2), false, Verdict::Hard),
        (c(0), c(2), false, Verdict::Hard),
    ];
    for (a, b, planar, expected) in &cases {
        let got = classify(a, b, *planar).verdict;
        let matches = match (&got, expected) {
            (Verdict::Tractable { case: x, .. }, Verdict::Tractable { case: y, .. }) => x == y,
            (g, e) => g == e,
        };
        assert!(matches, "classify({a}, {b}, {planar}) = {got:?}, expected {expected:?}");
    }
    let mut r = rng(0xACC4);
    for _ in 0..1000 {
        let a = random_point_coord(5, &mut r);
        let b = random_point_coord(5, &mut r);
        assert!(
            coordinates_equivalence_check(&a, &b),
            "coordinate formulations disagree at a = {a}, b = {b}"
        );
    }
    let elapsed = t.elapsed();
    pass(
        4,
        "classifier catalogue and 1000-point coordinate equivalence",
        elapsed,
    );
}

fn tcase(case: u8) -> Verdict {
    Verdict::Tractable { case, citation: "" }
}

#[test]
fn criterion_5_witness_completeness() {
    let t = Instant::now();
    let mut r = rng(0xACC5);
    let mut hard = 0usize;
    let mut anomalies = Vec::new();
    while hard < 500 {
        let a = random_point_coord(5, &mut r);
        let b = random_point_coord(5, &mut r);
        if classify(&a, &b, false).verdict != Verdict::Hard {
            continue;
        }
        hard += 1;
        let w = hardness_witness(&a, &b).unwrap();
        if w.terminal.is_anomaly() {
            anomalies.push((a.clone(), b.clone()));
            continue;
        }
        reverify_witness(&w, &a, &b);
    }
    assert!(anomalies.is_empty(), "anomalies at {anomalies:?}");
    let elapsed = t.elapsed();
    pass(
        5,
        "500 random hard points certified with zero anomalies, all inequalities re-verified",
        elapsed,
    );
}

fn reverify_witness(w: &holant_lab::dichotomy::HardnessWitness, a: &Cyc12, b: &Cyc12) {
    let ctx = format!("a = {a}, b = {b}");
    match &w.terminal {
        Terminal::RealBinary {
            cert,
            h_value,
            finisher,
            ..
        } => {
            assert_eq!(cert.kind, CertKind::Distinct3x3, "{ctx}");
            assert_ne!(cert.lhs, cert.rhs, "{ctx}");
            assert!(!h_value.is_zero(), "{ctx}");
            assert!(!finisher.independence_det.is_zero(), "{ctx}");
            assert!(!finisher.reduced_det.is_zero(), "{ctx}");
        }
        Terminal::Unary {
            cert,
            starter,
            starter_choice,
            ..
        } => {
            assert_eq!(cert.kind, CertKind::Distinct2x2, "{ctx}");
            assert_ne!(cert.lhs, cert.rhs, "{ctx}");
            assert!(starter.pairwise_dets.iter().all(|d| !d.is_zero()), "{ctx}");
            assert!(!starter_choice.1.is_zero(), "{ctx}");
        }
        Terminal::Esp { cert, starter, .. } => {
            assert_eq!(cert.kind, CertKind::EspDisjunctive, "{ctx}");
            assert!(
                cert.lhs.conj() != cert.lhs || cert.rhs.conj() != cert.rhs,
                "{ctx}"
            );
            assert!(starter.pairwise_dets.iter().all(|d| !d.is_zero()), "{ctx}");
        }
        Terminal::EqualParam {
            cert, eigen_det, ..
        } => {
            assert_eq!(cert.kind, CertKind::Distinct2x2, "{ctx}");
            assert_ne!(cert.lhs, cert.rhs, "{ctx}");
            assert!(!eigen_det.is_zero(), "{ctx}");
        }
        Terminal::Citation { .. } => {}
        Terminal::Anomaly { detail } => panic!("{ctx}: anomaly: {detail}"),
    }
}

#[test]
fn criterion_6_real_disjunction_scan() {
    let t = Instant::now();
    let ten = rat(10, 1);
    let report = real_disjunction_scan(
        (neg(&ten), ten.clone()),
        (neg(&ten), ten.clone()),
        &rat(1, 10),
    )
    .unwrap();
    assert!(
        report.counterexamples.is_empty(),
        "counterexamples: {:?}",
        report.counterexamples
    );
    assert!(report.points_checked > 40_000, "{report:?}");
    let elapsed = t.elapsed();
    assert!(elapsed <= Duration::from_secs(300), "took {elapsed:?}");
    pass(
        6,
        "real disjunction scan over [-10,10]^2 step 1/10 found no counterexamples",
        elapsed,
    );
}

fn neg(r: &Rat) -> Rat {
    -r.clone()
}

#[test]
fn criterion_7_performance_and_partitioning() {
    let t = Instant::now();
    let mut r = rng(0xACC7);
    let g = random_cubic_multigraph(24, &mut r);
    let sig = SymSignature::from_ints(&[2, 1, 3]);
    let reference = holant_eval_graph(&g, &sig).unwrap();
    let elapsed = t.elapsed();
    assert!(elapsed <= Duration::from_secs(60), "took {elapsed:?}");
    // Partitioned runs must produce byte-identical output.
    let reference_text = reference.to_string();
    for jobs in [1usize, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .unwrap();
        let v = pool.install(|| holant_eval_graph(&g, &sig).unwrap());
        assert_eq!(v.to_string(), reference_text, "jobs = {jobs}");
    }
    pass(
        7,
        "24-vertex evaluation within budget; thread count never changes output",
        t.elapsed(),
    );
}

#[test]
fn criterion_8_tractable_solvers() {
    let t = Instant::now();
    let mut r = rng(0xACC8);
    // X = 1 closed form.
    for _ in 0..20 {
        let n = 2 * r.gen_range(2..=4);
        let g = random_cubic_multigraph(n, &mut r);
        let (a, y) = loop {
            let a = random_rat_cyc(3, &mut r);
            let y = random_rat_cyc(3, &mut r);
            if !a.is_zero() && !y.is_zero() {
                break (a, y);
            }
        };
        let b = a.inv().unwrap();
        let sig = SymSignature::new(vec![&a * &y, y.clone(), &b * &y]);
        check_tractable(&g, &sig, "closed form for X = 1");
    }
    // X = Y = 0: proper 2-colorings.
    for _ in 0..20 {
        let n = 2 * r.gen_range(2..=4);
        let g = random_cubic_multigraph(n, &mut r);
        let y = loop {
            let y = random_rat_cyc(3, &mut r);
            if !y.is_zero() {
                break y;
            }
        };
        let sig = SymSignature::new(vec![Cyc12::zero(), y, Cyc12::zero()]);
        check_tractable(&g, &sig, "proper 2-coloring count");
    }
    // y = 0: component product.
    for _ in 0..20 {
        let n = 2 * r.gen_range(2..=4);
        let g = random_cubic_multigraph(n, &mut r);
        let sig = SymSignature::new(vec![
            random_rat_cyc(3, &mut r),
            Cyc12::zero(),
            random_rat_cyc(3, &mut r),
        ]);
        check_tractable(&g, &sig, "component product (degenerate middle term)");
    }
    let elapsed = t.elapsed();
    pass(
        8,
        "closed-form solvers match brute force on 20 random graphs per family",
        elapsed,
    );
}

fn check_tractable(g: &holant_lab::grid::EdgeLabeledGraph, sig: &SymSignature, method: &str) {
    let fast = solve_tractable(g, sig)
        .unwrap()
        .unwrap_or_else(|| panic!("no closed form claimed for {sig}"));
    assert_eq!(fast.method, method, "{sig}");
    let brute = holant_eval_graph(g, sig).unwrap();
    assert_eq!(fast.value, brute, "{sig} with method {method}");
}
