//! One PASS/FAIL line per acceptance criterion.

use std::process::Command;
use std::time::Instant;

use ckq_core::coeffring::JSignature;
use ckq_core::freealg::DEFAULT_STEP_CAP;
use ckq_core::qdual::{self, DualPairing};
use ckq_core::qgroup::{self, build_t, Verdict};
use ckq_core::rmatrix::{contract, contract_matrix, frt_c, frt_r, projector_check, verify_cubic, verify_ybe};
use ckq_core::suites::{classical_limit, classical_suite};

struct Outcome {
    ok: bool,
    note: String,
}

fn outcome(ok: bool, note: impl Into<String>) -> Outcome {
    Outcome { ok, note: note.into() }
}

fn pass(v: Verdict) -> bool {
    v == Verdict::Pass
}

fn r_family(check: impl Fn(&ckq_core::rmatrix::QTensor, &ckq_core::matrix::Matrix) -> bool) -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    let mut bad = Vec::new();
    for dim in 3..=5 {
        let (r, c) = (frt_r(dim).unwrap(), frt_c(dim).unwrap());
        cases += 1;
        if !check(&r, &c) {
            bad.push(format!("N={dim} formal"));
        }
        for j in JSignature::enumerate(dim) {
            cases += 1;
            if !check(&contract(&r, &j).unwrap(), &contract_matrix(&c, &j)) {
                bad.push(format!("N={dim} j={j}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(bad.is_empty() && secs < 60.0, format!("{cases} tensors in {secs:.2}s {bad:?}"))
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let mut checks = 0;
    for dim in 2..=5 {
        for j in JSignature::enumerate(dim) {
            let rep = classical_suite(&j, 100, 2024).unwrap();
            checks += rep.checked;
            if !pass(rep.verdict) {
                bad.push(format!("N={dim} j={j}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{checks} checks {bad:?}"))
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    for dim in [3, 4] {
        for j in JSignature::enumerate(dim) {
            let t = build_t(&j).unwrap();
            let checks = [
                ("coassoc", qgroup::verify_coassociativity(&t).unwrap().verdict),
                ("counit", qgroup::verify_counit(&t).unwrap().verdict),
                ("delta", qgroup::verify_delta_compat(&j).unwrap().verdict),
            ];
            for (name, v) in checks {
                if !pass(v) {
                    bad.push(format!("{name} N={dim} j={j}"));
                }
            }
        }
    }
    for j in JSignature::enumerate(3) {
        let v = qgroup::verify_antipode(&j, DEFAULT_STEP_CAP).unwrap().verdict;
        if !pass(v) {
            bad.push(format!("antipode j={j}: {}", v.label()));
        }
    }
    outcome(bad.is_empty(), format!("{bad:?}"))
}

fn criterion_6() -> Outcome {
    let bad: Vec<String> = JSignature::enumerate(3)
        .into_iter()
        .filter(|j| !qgroup::verify_contraction_commutes(j).unwrap())
        .map(|j| j.to_string())
        .collect();
    outcome(bad.is_empty(), format!("{bad:?}"))
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut checks = 0;
    for j in JSignature::enumerate(3) {
        let p = DualPairing::new(&j).unwrap();
        let (_, rel) = qgroup::relations_for(&j).unwrap();
        let rep = qdual::verify_well_defined(&p, &rel).unwrap();
        checks += rep.checked;
        if !pass(rep.verdict) {
            bad.push(format!("well-defined j={j}"));
        }
    }
    for dim in [3, 4] {
        for j in JSignature::enumerate(dim) {
            let p = DualPairing::new(&j).unwrap();
            let reps = [
                ("ll", qdual::verify_ll(&p, 2)),
                ("ladd", qdual::verify_l_additional(&p, 2).unwrap()),
                ("antipode duality", qdual::verify_l_hopf(&p).unwrap()),
            ];
            for (name, rep) in reps {
                checks += rep.checked;
                if !pass(rep.verdict) {
                    bad.push(format!("{name} N={dim} j={j}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checks} checks {bad:?}"))
}

fn criterion_8() -> Outcome {
    let t = build_t(&"iota,iota".parse().unwrap()).unwrap();
    let pattern = qdual::formal_l_pattern(&t);
    let hit = pattern.iter().find(|e| e.sign == qdual::Sign::Plus && e.row == 1 && e.col == 2);
    match hit {
        Some(e) => outcome(
            e.t_latex == "j_{1}t_{12}+j_{2}\\tilde{t}_{12}"
                && e.l_latex == "j_{1}^{-1}l_{12}+j_{2}^{-1}\\tilde{l}_{12}"
                && e.pairing_defined,
            format!("(T)12 = {}, (L+)12 = {}", e.t_latex, e.l_latex),
        ),
        None => outcome(false, "entry missing"),
    }
}

fn criterion_9() -> Outcome {
    let runs: [&[&str]; 8] = [
        &["relations", "--n", "3", "--j", "1,1", "--format", "json"],
        &["relations", "--n", "3", "--j", "iota,iota", "--format", "latex"],
        &["relations", "--n", "4", "--j", "1,iota,1", "--format", "text"],
        &["verify", "--n", "3", "--j", "iota,1", "--suite", "all", "--format", "json"],
        &["classical", "--n", "5", "--j", "iota,1,iota,1", "--format", "text"],
        &["rmatrix", "--n", "4", "--j", "iota,iota,1", "--format", "json"],
        &["rmatrix", "--n", "3", "--format", "latex"],
        &["dual", "--n", "3", "--j", "1,iota", "--degree", "2", "--format", "json"],
    ];
    let mut bad = Vec::new();
    for args in runs {
        let go = |jobs: &str| Command::new(env!("CARGO_BIN_EXE_ckq")).args(args).env("CKQ_JOBS", jobs).output().unwrap();
        let (a, b) = (go("1"), go("4"));
        if a.stdout != b.stdout || a.stdout.is_empty() || a.status.code() != Some(0) {
            bad.push(args.join(" "));
        }
    }
    outcome(bad.is_empty(), format!("{} commands {bad:?}", runs.len()))
}

fn criterion_10() -> Outcome {
    let mut bad = Vec::new();
    for dim in [3, 4] {
        for j in JSignature::enumerate(dim) {
            let rep = classical_limit(&j, 2, 1).unwrap();
            if !pass(rep.verdict) {
                bad.push(format!("N={dim} j={j}: {:?}", rep.details));
            }
        }
    }
    outcome(bad.is_empty(), format!("{bad:?}"))
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("1 Yang-Baxter", || r_family(|r, _| verify_ybe(r))),
        ("2 spectral identity", || r_family(|r, _| verify_cubic(r))),
        ("3 metric consistency", || r_family(|r, c| projector_check(r, c).unwrap())),
        ("4 classical suite", criterion_4),
        ("5 Hopf axioms", criterion_5),
        ("6 contraction commutes", criterion_6),
        ("7 duality", criterion_7),
        ("8 L-pattern example", criterion_8),
        ("9 determinism", criterion_9),
        ("10 trivial limit", criterion_10),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let start = Instant::now();
        let o = f();
        let label = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {name}: {label} ({:.1}s) {}", start.elapsed().as_secs_f64(), o.note);
        if !o.ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
