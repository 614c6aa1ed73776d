//! The thirteen numerical acceptance criteria, each within its time budget.
//!
//! Runs without the libtest harness so every criterion line is printed
//! whether or not it passes. Two criteria cannot hold and are reported like
//! the rest:
//!
//! - 1 asks for a truncation bound of `e^{-σ²}`, but the mass moved to
//!   `t = 0` alone is `P(|s| > σT)`, of order `e^{-σ²/2}`.
//! - 6 asks QMEGS to beat QPE on the TFIM model, whose normalized lowest
//!   level `-π/4` sits on every QPE grid with `d >= 3`, so QPE is exact.
//!
//! The target exits non-zero if any other criterion fails or if one of those
//! outcomes changes.
//! `--only 2,5` restricts the run.

use std::process::ExitCode;

use qmegs_bench::checks::CRITERIA;

const KNOWN_UNATTAINABLE: &[u8] = &[1, 6];

fn selection() -> Option<Vec<u8>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pos = args.iter().position(|a| a == "--only")?;
    Some(args.get(pos + 1)?.split(',').filter_map(|s| s.trim().parse().ok()).collect())
}

fn main() -> ExitCode {
    let only = selection();
    let mut unexpected = Vec::new();
    let (mut passed, mut ran) = (0, 0);
    for c in CRITERIA.iter().filter(|c| only.as_ref().is_none_or(|o| o.contains(&c.id))) {
        let outcome = c.run();
        println!("{outcome}");
        ran += 1;
        if outcome.passed {
            passed += 1;
        }
        if outcome.passed == KNOWN_UNATTAINABLE.contains(&c.id) {
            unexpected.push(outcome.id);
        }
    }
    println!("acceptance: {passed}/{ran} criteria passed; known unattainable {KNOWN_UNATTAINABLE:?}");
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
