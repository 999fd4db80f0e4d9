//! Acceptance run: one pass/fail line per criterion.

use std::process::ExitCode;

use torelli::fgmap::expected_johnson_rank;
use torelli::sample::DEFAULT_SEED;
use verikit::{run_suite, with_threads, Params, Suite, SuiteReport};

struct Outcome {
    ok: bool,
    detail: String,
}

fn params(n: usize, k: usize, samples: usize) -> Params {
    Params { n, k, samples, seed: DEFAULT_SEED }
}

fn run(suite: Suite, p: Params) -> Result<SuiteReport, String> {
    run_suite(suite, p).map_err(|e| format!("{suite}: {e}"))
}

fn summary(r: &SuiteReport) -> String {
    let fails = r.failures().count();
    let mut s = format!("{} n={} k={}: {}/{} cases pass", r.suite, r.params.n, r.params.k, r.cases.len() - fails, r.cases.len());
    if let Some(c) = r.failures().next() {
        s.push_str(&format!("; first failure {}: {}", c.id, c.witness.as_deref().unwrap_or("")));
    }
    s
}

/// All reports must pass and be nonempty.
fn all(reports: Vec<Result<SuiteReport, String>>) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in reports {
        match r {
            Ok(r) => {
                ok &= r.passed();
                parts.push(summary(&r));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("error {e}"));
            }
        }
    }
    Outcome { ok, detail: parts.join(" | ") }
}

fn criterion4() -> Outcome {
    match run(Suite::GammaRel, params(4, 1, 100)) {
        Ok(r) => {
            let table5 = r.cases.iter().filter(|c| c.id.starts_with('R')).count();
            let mut o = all(vec![Ok(r)]);
            o.detail.push_str(&format!("; {table5} Table 5 instances"));
            o
        }
        Err(e) => Outcome { ok: false, detail: e },
    }
}

fn criterion9() -> Outcome {
    let r = run(Suite::Johnson, params(3, 2, 100));
    let mut o = all(vec![r.clone()]);
    let ranks = [(2, 1), (2, 2), (3, 2)].map(|(n, k)| format!("({n},{k})->{}", expected_johnson_rank(n, k)));
    let frozen = expected_johnson_rank(2, 1) == 6 && expected_johnson_rank(2, 2) == 16;
    o.ok &= frozen;
    o.detail.push_str(&format!("; rank formula {}; C rows checked with sign [z']∧[z]", ranks.join(" ")));
    o
}

fn criterion12() -> Outcome {
    let cases = [
        (Suite::Tb3, params(2, 1, 50)),
        (Suite::Extension, params(2, 1, 50)),
        (Suite::LambdaArel, params(3, 1, 50)),
        (Suite::StabPsi, params(3, 1, 100)),
        (Suite::MagnusOracle, params(3, 2, 100)),
        (Suite::Johnson, params(3, 2, 50)),
    ];
    let mut ok = true;
    let mut differing = Vec::new();
    for (s, p) in cases {
        let a = run(s, p).map(|r| r.without_time().to_json());
        let b = run(s, p).map(|r| r.without_time().to_json());
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => {
                ok = false;
                differing.push(s.name());
            }
        }
    }
    let detail = if ok { format!("{} suites produce identical JSON on rerun", cases.len()) } else { format!("differing: {differing:?}") };
    Outcome { ok, detail }
}

fn main() -> ExitCode {
    let result = with_threads(|| {
        // The Magnus oracle runs before the Johnson suite it validates.
        let c11 = all(vec![run(Suite::MagnusOracle, params(3, 2, 200))]);
        let c9 = criterion9();
        vec![
            (1, "Table 1 rows at (3,3)", all(vec![run(Suite::Table1, params(3, 3, 100))])),
            (2, "phi-conjugation exhaustive at n=4", all(vec![run(Suite::PhiConj, params(4, 1, 100))])),
            (3, "phi respects Aut(F_n) at n=4", all(vec![run(Suite::PhiNielsen, params(4, 1, 100)), run(Suite::PhiInverseA, params(4, 1, 100))])),
            (4, "Table 5 relations at n=4", criterion4()),
            (5, "TB1-TB3 for lambda-bar at n=2,3", all(vec![run(Suite::Tb3, params(2, 1, 100)), run(Suite::Tb3, params(3, 1, 100))])),
            (6, "tlambda well-definedness at n=3", all(vec![run(Suite::LambdaZrel, params(3, 1, 100)), run(Suite::LambdaArel, params(3, 1, 100))])),
            (7, "extension group at n=2,3", all(vec![run(Suite::Extension, params(2, 1, 100)), run(Suite::Extension, params(3, 1, 100))])),
            (8, "Jensen-Wahl relators through the extension at n=3", all(vec![run(Suite::JwDelta, params(3, 1, 100))])),
            (9, "Johnson homomorphism at (3,2)", c9),
            (10, "stabilizer decomposition psi", all(vec![run(Suite::StabPsi, params(3, 1, 100))])),
            (11, "Magnus oracle", c11),
            (12, "determinism", criterion12()),
        ]
    });
    let results = match result {
        Ok(r) => r,
        Err(e) => {
            println!("acceptance: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut failed = 0;
    for (i, name, o) in &results {
        println!("criterion {i:>2} {}: {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
