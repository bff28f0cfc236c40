//! Acceptance suite. Each criterion prints one PASS or FAIL line with its
//! tolerance and time budget; the process exits nonzero if any fails.

mod oracle;
mod transcriptions;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

pub type Check = Result<String, String>;

/// Fails with `message` unless `cond` holds.
pub fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

struct Criterion {
    number: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            number: 1,
            name: "axiom checkers agree with naive loops",
            budget: Duration::from_secs(30),
            run: criteria::axiom_checkers,
        },
        Criterion {
            number: 2,
            name: "differentials square to zero",
            budget: Duration::from_secs(60),
            run: criteria::squares_vanish,
        },
        Criterion {
            number: 3,
            name: "chain map commutes with the differentials",
            budget: Duration::from_secs(60),
            run: criteria::chain_map,
        },
        Criterion {
            number: 4,
            name: "star algebra and derived bimodule",
            budget: Duration::from_secs(60),
            run: criteria::star_and_derived,
        },
        Criterion {
            number: 5,
            name: "A0 Betti numbers",
            budget: Duration::from_secs(1),
            run: criteria::a0_betti,
        },
        Criterion {
            number: 6,
            name: "cone dimensions and long exact sequence",
            budget: Duration::from_secs(60),
            run: criteria::dimensions_and_les,
        },
        Criterion {
            number: 7,
            name: "extension valid iff pair is a 2-cocycle",
            budget: Duration::from_secs(60),
            run: criteria::extension_iff,
        },
        Criterion {
            number: 8,
            name: "extension round trips",
            budget: Duration::from_secs(60),
            run: criteria::extension_round_trips,
        },
        Criterion {
            number: 9,
            name: "deformations",
            budget: Duration::from_secs(60),
            run: criteria::deformations,
        },
        Criterion {
            number: 10,
            name: "two-algebra bijections and transcriptions",
            budget: Duration::from_secs(60),
            run: criteria::two_algebras,
        },
        Criterion {
            number: 11,
            name: "CLI determinism and exit codes",
            budget: Duration::from_secs(30),
            run: criteria::cli_contract,
        },
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let over = elapsed > c.budget;
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over time budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "{status} criterion {} ({}): {detail} [tolerance: exact; {:.2}s of {}s budget]",
            c.number,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    if failures == 0 {
        println!("acceptance: all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of {} criteria fail", criteria.len());
        ExitCode::FAILURE
    }
}
