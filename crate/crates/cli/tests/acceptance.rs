//! Runs every acceptance criterion, prints one PASS/FAIL line each, and
//! exits nonzero when any criterion fails or exceeds its runtime budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use casimir_core::QuadratureSettings;
use casimir_iso::validate::{registry, run_all};

struct Criterion {
    number: u8,
    title: &'static str,
    budget: Option<Duration>,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: [Criterion; 10] = [
    Criterion { number: 1, title: "ideal mirrors at 10 K match the T = 0 energy", budget: secs(1) },
    Criterion { number: 2, title: "ideal mirrors at 20 um, both and TM only", budget: secs(1) },
    Criterion { number: 3, title: "synthetic Drude table reproduces analytic Drude", budget: secs(5) },
    Criterion { number: 4, title: "Au-Au plasma without TE0 tracks Drude; plasma above Drude", budget: secs(10) },
    Criterion { number: 5, title: "fig3 plasma/Drude ratios at 3 and 4 um", budget: secs(30) },
    Criterion { number: 6, title: "fig4_5 Drude/plasma ratio with mu0 = 110", budget: secs(10) },
    Criterion { number: 7, title: "fig6bis signs at 0.2, 0.25, 0.3 um", budget: secs(10) },
    Criterion { number: 8, title: "antisymmetry, identical regions, screening, convergence halving", budget: secs(30) },
    Criterion { number: 9, title: "static reflection matches the stack at xi = 1e-8 eV", budget: secs(5) },
    Criterion { number: 10, title: "replay of independently computed reference values", budget: None },
];

/// Returns the report line and whether the criterion passed.
fn evaluate(c: &Criterion) -> (String, bool) {
    let n = c.number;
    let checks: Vec<_> = registry().into_iter().filter(|k| k.criterion == Some(n)).collect();
    let start = Instant::now();
    let results = run_all(&checks, &QuadratureSettings::default());
    let elapsed = start.elapsed();

    let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    let over_budget = c.budget.is_some_and(|b| elapsed > b);
    let passed = !checks.is_empty() && failed.is_empty() && !over_budget;
    let budget_text = c.budget.map_or("none".to_string(), |b| format!("{b:?}"));
    let mut line = format!(
        "criterion {n:>2} {}: {} ({}/{} checks, {:.1} ms, budget {budget_text})",
        if passed { "PASS" } else { "FAIL" },
        c.title,
        results.len() - failed.len(),
        results.len(),
        elapsed.as_secs_f64() * 1e3,
    );
    if over_budget {
        line.push_str("; runtime over budget");
    }
    for r in &failed {
        line.push_str(&format!("; {} measured {:.6e} bound {}", r.id, r.measured, r.bound));
        if let Some(e) = &r.error {
            line.push_str(&format!(" error {e}"));
        }
    }
    (line, passed)
}

fn main() -> ExitCode {
    let mut failures = 0;
    for c in &CRITERIA {
        let (line, passed) = evaluate(c);
        println!("{line}");
        if !passed {
            failures += 1;
        }
    }
    println!("acceptance: {} passed, {failures} failed", CRITERIA.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
