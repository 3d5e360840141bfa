//! Acceptance suite: runs the twelve verification checks at the default
//! configuration and prints one PASS/FAIL line per criterion, with every
//! individual assertion shown for any criterion that does not pass. The
//! checks cover, in order:
//!
//!  1. the critical constants and their defining identities;
//!  2. the Steklov spectrum of the second-variation operator;
//!  3. stability of the pinned (Dirichlet) problem;
//!  4. Morse index 4 from per-mode Robin counts;
//!  5. positivity of the second mode with a ground-state certificate;
//!  6. the Legendre-form residual of the band kernel;
//!  7. the Gram matrix of the four classical negative directions;
//!  8. the solvability dichotomy of the boundary-value problem;
//!  9. the Gram lower bound and sampled positivity on the complement;
//! 10. index 1 for the flat unit disk;
//! 11. the first nontrivial Steklov eigenvalue of the Laplacian;
//! 12. quadratic-form identities and brute-force linear-algebra oracles.

use std::time::{Duration, Instant};

use catenoid_cli::checks::{run_suite, suite_exit_code, SuiteConfig};
use catenoid_core::CriticalParams;

#[test]
fn acceptance() {
    // Criterion 1 also budgets the constants computation itself.
    let t_solve = Instant::now();
    let params = CriticalParams::solve(1e-14).expect("critical parameters solve");
    let solve_time = t_solve.elapsed();
    assert!(params.t > 1.0 && params.t < 1.5);

    let cfg = SuiteConfig::default();
    let t_suite = Instant::now();
    let outcomes = run_suite(&cfg);
    let suite_time = t_suite.elapsed();

    assert_eq!(outcomes.len(), 12);
    let mut all_ok = true;
    for o in &outcomes {
        println!("criterion {:2}: {:<13} {}", o.id, o.status(), o.name);
        let ok = o.passed && !o.non_converged;
        if !ok {
            for line in &o.details {
                println!("      {line}");
            }
        }
        all_ok &= ok;
    }
    println!(
        "suite wall time {:.3} s (constants solve {:.3} ms)",
        suite_time.as_secs_f64(),
        solve_time.as_secs_f64() * 1e3
    );

    // Runtime budgets from the slowest-allowed criteria.
    assert!(
        solve_time < Duration::from_millis(1),
        "constants must solve in under 1 ms, took {solve_time:?}"
    );
    assert!(
        outcomes[1].elapsed < Duration::from_secs(1),
        "Steklov spectrum check must finish in under 1 s, took {:?}",
        outcomes[1].elapsed
    );
    assert!(
        outcomes[3].elapsed < Duration::from_secs(5),
        "Morse index check must finish in under 5 s, took {:?}",
        outcomes[3].elapsed
    );
    assert!(
        suite_time < Duration::from_secs(60),
        "full suite must finish in under 60 s, took {suite_time:?}"
    );

    assert!(all_ok, "at least one acceptance criterion did not pass");
    assert_eq!(suite_exit_code(&outcomes), 0);
}
