//! Acceptance criteria 1–8, one PASS/FAIL line each. Exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use cubic_indec::bounds;
use cubic_indec::verify::*;

type Check = Box<dyn Fn() -> cubic_indec::Result<CheckReport>>;

fn main() -> ExitCode {
    let nb = |p| bounds::norm_bound(p).value;
    let checks: Vec<(&str, Check)> = vec![
        ("1", Box::new(|| check_simplest_classes(SIMPLEST_CLASS_GRID))),
        ("2", Box::new(move || check_simplest_bounds(SIMPLEST_BOUND_GRID, nb))),
        ("3", Box::new(move || check_ennola(ENNOLA_GRID, nb))),
        ("4", Box::new(|| check_thomas(&THOMAS_GRID, bounds::min_trace_formula_thomas))),
        ("5", Box::new(|| check_witness(WITNESS_GRID))),
        ("6", Box::new(|| check_norm_formulas(NormFormulas::default()))),
        ("7", Box::new(check_lemmas)),
        ("8", Box::new(|| check_positivity(POSITIVITY_SAMPLES, POSITIVITY_SEED))),
    ];
    let mut failed = 0;
    println!("running {} acceptance criteria", checks.len());
    for (id, run) in checks {
        let start = Instant::now();
        match run() {
            Ok(report) => {
                failed += usize::from(!report.passed());
                println!("{report} in {:.2?}", start.elapsed());
            }
            Err(e) => {
                failed += 1;
                println!("FAIL [{id}] aborted: {e}");
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
