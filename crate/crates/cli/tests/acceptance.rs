//! Acceptance suite: one test per criterion, each printing a pass
//! line (run with `--nocapture` to see them). Criteria cover exact
//! vs empirical norm agreement for both operator classes, the
//! fundamental inequality at scale, the norm sandwich, the pointwise
//! scalar lemma, the uniform-boundedness experiment, max-plus
//! conjugation, harness falsifiability, and CLI determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use rand::Rng;

use maxkernel::norms::{empirical_lip_seminorm, empirical_op_norm};
use maxkernel::operators::{maxplus_apply, MaxPlusVector};
use maxkernel::sampling::stream_rng;
use maxkernel::verify::doubles::BadOperatorKind;
use maxkernel::verify::{
    check_fundamental_inequality, pointwise_lemma_value, ubp_experiment, FamilyGenerator,
    FamilySpec, PropertyStatus, PropertyWitness, SuiteReport,
};
use maxkernel::{
    ConeOperator, ContinuousKernelSpec, Domain, FiniteKernel, KernelOperator, SampledFunction,
};

const TOL: f64 = 1e-12;

fn pass(criterion: &str, detail: String) {
    println!("PASS {criterion}: {detail}");
}

/// Criterion 1 operators: 200 random finite kernels, m in 2..=8,
/// entries uniform [0, 10), one kernel per seed 0..200.
fn finite_norm_kernels() -> Vec<(u64, FiniteKernel)> {
    (0..200u64)
        .map(|seed| {
            let mut rng = stream_rng(seed, 0);
            let m = rng.gen_range(2..=8);
            let entries: Vec<f64> = (0..m * m).map(|_| 10.0 * rng.gen::<f64>()).collect();
            (seed, FiniteKernel::from_rows_flat(m, entries).unwrap())
        })
        .collect()
}

/// Criterion 2 operators: 50 random continuous specs, n in 5..=33,
/// random admissible intervals, entries uniform [0, 10).
fn continuous_norm_specs() -> Vec<(u64, ContinuousKernelSpec)> {
    (0..50u64)
        .map(|seed| {
            let mut rng = stream_rng(0xC0117157, seed);
            let n = rng.gen_range(5..=33);
            let grid = Domain::grid(n, 1.0).unwrap();
            let mut alpha = Vec::with_capacity(n);
            let mut beta = Vec::with_capacity(n);
            for _ in 0..n {
                let u: f64 = rng.gen();
                let v: f64 = rng.gen();
                alpha.push(u.min(v));
                beta.push(u.max(v));
            }
            let kernel: Vec<f64> = (0..n * n).map(|_| 10.0 * rng.gen::<f64>()).collect();
            let spec = ContinuousKernelSpec::new(
                grid.clone(),
                SampledFunction::new(grid.clone(), alpha).unwrap(),
                SampledFunction::new(grid, beta).unwrap(),
                kernel,
            )
            .unwrap();
            (seed, spec)
        })
        .collect()
}

#[test]
fn criterion_1_norm_formula_equivalence_finite() {
    let start = Instant::now();
    for (seed, kernel) in finite_norm_kernels() {
        let exact = kernel.max_entry();
        let op = empirical_op_norm(&kernel, 200, seed).unwrap().value;
        let lip = empirical_lip_seminorm(&kernel, 200, seed).unwrap().value;
        assert!(
            (op - exact).abs() <= TOL,
            "seed {seed}: op norm {op} vs exact {exact}"
        );
        assert!(
            (lip - exact).abs() <= TOL,
            "seed {seed}: lip seminorm {lip} vs exact {exact}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    pass(
        "criterion 1",
        format!("200 finite kernels: exact = empirical norm = empirical seminorm within 1e-12 ({elapsed:?})"),
    );
}

#[test]
fn criterion_2_norm_formula_equivalence_continuous() {
    let start = Instant::now();
    for (seed, spec) in continuous_norm_specs() {
        let mask = spec.build_mask();
        let exact = spec.masked_max(&mask);
        let op = KernelOperator::continuous(spec);
        let op_norm = empirical_op_norm(&op, 100, seed).unwrap().value;
        let lip = empirical_lip_seminorm(&op, 100, seed).unwrap().value;
        assert!(
            (op_norm - exact).abs() <= TOL,
            "seed {seed}: op norm {op_norm} vs exact {exact}"
        );
        assert!(
            (lip - exact).abs() <= TOL,
            "seed {seed}: lip seminorm {lip} vs exact {exact}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    pass(
        "criterion 2",
        format!("50 continuous specs: exact = empirical norm = empirical seminorm within 1e-12 ({elapsed:?})"),
    );
}

#[test]
fn criterion_3_fundamental_inequality_at_scale() {
    // 10,000 (kernel, f, g) triples: 250 operators of each class,
    // 20 random cone pairs each
    let start = Instant::now();
    let mut triples = 0usize;
    for index in 0..250u64 {
        let mut rng = stream_rng(0xF1, index);
        let m = rng.gen_range(2..=8);
        let entries: Vec<f64> = (0..m * m).map(|_| 10.0 * rng.gen::<f64>()).collect();
        let kernel = FiniteKernel::from_rows_flat(m, entries).unwrap();
        let report = check_fundamental_inequality(&kernel, 20, index).unwrap();
        assert_eq!(report.status, PropertyStatus::Pass, "finite op {index}");
        assert!(report.worst_violation <= TOL);
        triples += 20;
    }
    for index in 0..250u64 {
        let mut rng = stream_rng(0xF2, index);
        let n = rng.gen_range(5..=12);
        let grid = Domain::grid(n, 1.0).unwrap();
        let mut alpha = Vec::with_capacity(n);
        let mut beta = Vec::with_capacity(n);
        for _ in 0..n {
            let u: f64 = rng.gen();
            let v: f64 = rng.gen();
            alpha.push(u.min(v));
            beta.push(u.max(v));
        }
        let kernel: Vec<f64> = (0..n * n).map(|_| 10.0 * rng.gen::<f64>()).collect();
        let spec = ContinuousKernelSpec::new(
            grid.clone(),
            SampledFunction::new(grid.clone(), alpha).unwrap(),
            SampledFunction::new(grid, beta).unwrap(),
            kernel,
        )
        .unwrap();
        let op = KernelOperator::continuous(spec);
        let report = check_fundamental_inequality(&op, 20, index).unwrap();
        assert_eq!(report.status, PropertyStatus::Pass, "continuous op {index}");
        assert!(report.worst_violation <= TOL);
        triples += 20;
    }
    assert_eq!(triples, 10_000);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    pass(
        "criterion 3",
        format!("10000 random triples across both classes: zero violations beyond 1e-12 ({elapsed:?})"),
    );
}

#[test]
fn criterion_4_sandwich_equality() {
    // same operators as criteria 1 and 2; with C = 1 the sandwich
    // forces |op norm - lip seminorm| <= tolerance
    let mut checked = 0usize;
    for (seed, kernel) in finite_norm_kernels() {
        let op = empirical_op_norm(&kernel, 200, seed).unwrap().value;
        let lip = empirical_lip_seminorm(&kernel, 200, seed).unwrap().value;
        assert!((op - lip).abs() <= TOL, "seed {seed}: |{op} - {lip}|");
        checked += 1;
    }
    for (seed, spec) in continuous_norm_specs() {
        let op = KernelOperator::continuous(spec);
        let op_norm = empirical_op_norm(&op, 100, seed).unwrap().value;
        let lip = empirical_lip_seminorm(&op, 100, seed).unwrap().value;
        assert!((op_norm - lip).abs() <= TOL, "seed {seed}");
        checked += 1;
    }
    assert_eq!(checked, 250);
    pass(
        "criterion 4",
        "all 250 operators from criteria 1-2 satisfy |op norm - lip seminorm| <= 1e-12".to_string(),
    );
}

#[test]
fn criterion_5_pointwise_lemma_scan() {
    // 100 grid values (zero plus 99 log-spaced points of [2^-5, 2^5])
    // make exactly 10^4 pairs; then 10^5 random nonnegative pairs
    let mut values: Vec<f64> = vec![0.0];
    values.extend((0..99).map(|i| (-5.0 + 10.0 * i as f64 / 98.0).exp2()));
    assert_eq!(values.len(), 100);
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(110_000);
    for &x in &values {
        for &p in &values {
            pairs.push((x, p));
        }
    }
    assert_eq!(pairs.len(), 10_000);
    for trial in 0..100_000u64 {
        let mut rng = stream_rng(0xEC3, trial);
        pairs.push((100.0 * rng.gen::<f64>(), 100.0 * rng.gen::<f64>()));
    }
    let mut bound_attained = 0usize;
    for &(x, p) in &pairs {
        let value = pointwise_lemma_value(x, p);
        assert!(value <= 3.0 * x, "violation at ({x}, {p}): {value}");
        if value == 3.0 * x {
            // the bound is attained only at x = 0 (which also lies in
            // the x <= p branch since p >= 0)
            assert!(x == 0.0 || x <= p, "unexpected equality at ({x}, {p})");
            assert_eq!(x, 0.0);
            bound_attained += 1;
        }
        if x <= p {
            // first proof branch: the value collapses to x itself, up
            // to rounding of the two chained subtractions
            assert!(
                (value - x).abs() <= 1e-13 * p.max(1.0),
                "branch value at ({x}, {p}): {value}"
            );
        }
    }
    assert!(bound_attained >= 100, "every x = 0 grid pair attains the bound");
    pass(
        "criterion 5",
        format!(
            "110000 pairs scanned, zero violations; bound attained only at x = 0 ({bound_attained} pairs)"
        ),
    );
}

#[test]
fn criterion_6_uniform_boundedness_experiment() {
    let start = Instant::now();
    let family = FamilySpec::new(100, FamilyGenerator::Uniform, 1, 7.0).unwrap();
    let report = ubp_experiment(&family, 1.0).unwrap();
    assert_eq!(report.status, PropertyStatus::Pass);
    let (certified, sup_lip) = match &report.witness {
        PropertyWitness::Family {
            certified_bound,
            sup_lip_seminorm,
            ..
        } => (*certified_bound, *sup_lip_seminorm),
        other => panic!("unexpected witness {other:?}"),
    };
    assert_eq!(certified, 7.0);
    assert_eq!(sup_lip, 7.0);

    let doubled = FamilySpec::new(200, FamilyGenerator::Uniform, 1, 7.0).unwrap();
    let report = ubp_experiment(&doubled, 1.0).unwrap();
    assert_eq!(report.status, PropertyStatus::Pass);
    match &report.witness {
        PropertyWitness::Family {
            certified_bound,
            sup_lip_seminorm,
            ..
        } => {
            assert_eq!(*certified_bound, 7.0);
            assert_eq!(*sup_lip_seminorm, 7.0);
        }
        other => panic!("unexpected witness {other:?}"),
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    pass(
        "criterion 6",
        format!("certified M = 7 = sup Lipschitz seminorm for N = 100 and N = 200 ({elapsed:?})"),
    );
}

#[test]
fn criterion_7_maxplus_conjugation() {
    for index in 0..100u64 {
        let mut rng = stream_rng(0x3A9, index);
        let m = rng.gen_range(2..=8);
        let entries: Vec<f64> = (0..m * m).map(|_| rng.gen_range(0.001..10.0)).collect();
        let kernel = FiniteKernel::from_rows_flat(m, entries).unwrap();
        let values: Vec<f64> = (0..m).map(|_| rng.gen_range(0.001..10.0)).collect();
        let f = SampledFunction::new(Domain::finite(m).unwrap(), values).unwrap();

        let direct = kernel.apply(&f).unwrap();
        let conjugated = maxplus_apply(&kernel, &MaxPlusVector::log_of(&f).unwrap()).unwrap();
        for (&lin, &trop) in direct.values().iter().zip(conjugated.values()) {
            let log_lin = lin.ln();
            let scale = log_lin.abs().max(1.0);
            assert!(
                (log_lin - trop).abs() <= TOL * scale,
                "pair {index}: {log_lin} vs {trop}"
            );
        }
    }
    pass(
        "criterion 7",
        "100 strictly positive pairs: log(apply) = maxplus(log) within relative 1e-12".to_string(),
    );
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_maxkernel"))
}

fn run_cli(dir: &Path, args: &[&str]) -> Output {
    cli().current_dir(dir).args(args).output().expect("binary runs")
}

/// Recompute a reported violation from its witness, independently of
/// the harness internals.
fn replay_violation(op: &dyn ConeOperator, property: &str, witness: &PropertyWitness) -> f64 {
    let excess = |a: &SampledFunction, b: &SampledFunction| -> f64 {
        a.sub(b)
            .unwrap()
            .values()
            .iter()
            .fold(0.0f64, |acc, &v| acc.max(v))
    };
    match (property, witness) {
        ("monotone", PropertyWitness::Pair { lhs, rhs }) => {
            excess(&op.apply(lhs).unwrap(), &op.apply(rhs).unwrap())
        }
        ("subadditive", PropertyWitness::Pair { lhs, rhs }) => {
            let af = op.apply(lhs).unwrap();
            let ag = op.apply(rhs).unwrap();
            let a_sum = op.apply(&lhs.add(rhs).unwrap()).unwrap();
            excess(&a_sum, &af.add(&ag).unwrap()) / 1.0f64.max(af.sup_norm()).max(ag.sup_norm())
        }
        ("positively_homogeneous", PropertyWitness::Scaled { f, t }) => {
            let af = op.apply(f).unwrap();
            let lhs = op.apply(&f.scale(*t)).unwrap();
            lhs.sub(&af.scale(*t)).unwrap().sup_norm() / 1.0f64.max(*t * af.sup_norm())
        }
        ("fundamental_inequality", PropertyWitness::Pair { lhs, rhs }) => {
            let diff = op.apply(lhs).unwrap().sub(&op.apply(rhs).unwrap()).unwrap().abs();
            let dominating = op.apply(&lhs.sub(rhs).unwrap().abs()).unwrap();
            excess(&diff, &dominating)
        }
        other => panic!("unexpected witness shape for {other:?}"),
    }
}

#[test]
fn criterion_8_harness_soundness() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("k.csv"), "1,2\n3,4\n").unwrap();

    // each designated double makes its check fail with a replayable witness
    for (name, kind) in [
        ("monotone", BadOperatorKind::Monotone),
        ("subadditive", BadOperatorKind::Subadditive),
        ("homogeneous", BadOperatorKind::Homogeneous),
        ("fundamental", BadOperatorKind::Fundamental),
    ] {
        let out = run_cli(
            dir.path(),
            &["verify", "--kernel", "k.csv", "--trials", "300", "--seed", "5", "--inject-bad", name],
        );
        assert_eq!(out.status.code(), Some(1), "double {name} must exit 1");
        let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let suite: SuiteReport = serde_json::from_value(json.clone()).unwrap();
        let target = kind.target_property();
        let report = suite
            .reports
            .iter()
            .find(|r| r.property == target)
            .unwrap_or_else(|| panic!("suite lacks {target}"));
        assert_eq!(report.status, PropertyStatus::Fail, "double {name}");
        assert!(report.worst_violation > 0.0);

        // witness validity: replaying it reproduces the violation
        let double = kind.build(2).unwrap();
        let replayed = replay_violation(double.as_ref(), target, &report.witness);
        let scale = report.worst_violation.abs().max(1.0);
        assert!(
            (replayed - report.worst_violation).abs() <= TOL * scale,
            "double {name}: replay {replayed} vs reported {}",
            report.worst_violation
        );
    }

    // and the full suite passes on 20 randomly generated operators
    for i in 0..10u64 {
        let mut rng = stream_rng(0x8E9, i);
        let m = rng.gen_range(2..=6);
        let mut csv = String::new();
        for _row in 0..m {
            let cells: Vec<String> = (0..m)
                .map(|_| format!("{}", 10.0 * rng.gen::<f64>()))
                .collect();
            csv.push_str(&cells.join(","));
            csv.push('\n');
        }
        let path = format!("rand{i}.csv");
        fs::write(dir.path().join(&path), csv).unwrap();
        let out = run_cli(dir.path(), &["verify", "--kernel", &path, "--trials", "200"]);
        assert_eq!(out.status.code(), Some(0), "random finite operator {i}");
    }
    for i in 0..10u64 {
        let spec = format!(
            r#"{{"a": 1.0, "n": {}, "alpha_gen": "const:0",
                "beta_gen": "uniform_random:{}:0:1",
                "kernel_gen": "uniform_random:{}:0:10"}}"#,
            5 + i,
            100 + i,
            200 + i
        );
        let path = format!("rand{i}.json");
        fs::write(dir.path().join(&path), spec).unwrap();
        let out = run_cli(dir.path(), &["verify", "--spec", &path, "--trials", "200"]);
        assert_eq!(out.status.code(), Some(0), "random continuous operator {i}");
    }
    pass(
        "criterion 8",
        "4 doubles fail their designated checks with valid witnesses; 20 random operators pass".to_string(),
    );
}

#[test]
fn criterion_9_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("k.csv"), "1,2\n3,4\n").unwrap();
    fs::write(
        dir.path().join("f.json"),
        r#"{"domain":{"kind":"finite","size":2},"values":[0.25,1.0]}"#,
    )
    .unwrap();
    fs::write(
        dir.path().join("spec.json"),
        r#"{"a": 1.0, "n": 9, "alpha_gen": "linear", "beta_gen": "linear", "kernel_gen": "product"}"#,
    )
    .unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["apply", "--kernel", "k.csv", "--input", "f.json"],
        vec!["norm", "--kernel", "k.csv", "--trials", "123", "--seed", "77"],
        vec!["lipschitz", "--spec", "spec.json", "--trials", "61", "--seed", "3"],
        vec!["verify", "--kernel", "k.csv", "--trials", "100", "--seed", "8"],
        vec!["ubp", "--count", "50", "--bound", "7", "--seed", "1", "--gen", "mixed"],
    ];
    for args in &commands {
        let first = run_cli(dir.path(), args);
        let second = run_cli(dir.path(), args);
        assert!(first.status.success(), "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
        assert_eq!(
            first.stdout, second.stdout,
            "stdout differs for {args:?}"
        );
        assert!(!first.stdout.is_empty());
    }
    pass(
        "criterion 9",
        format!("{} commands re-run byte-identically", commands.len()),
    );
}
