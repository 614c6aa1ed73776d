//! Runs a few of the fast acceptance criteria and prints their lines.
//!
//! `cargo run --example acceptance_subset -p qmegs-bench [ids...]`

use qmegs_bench::checks::criterion;

fn main() {
    let ids: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids = if ids.is_empty() { vec![8, 9, 11, 12] } else { ids };
    let mut failed = 0;
    for id in ids {
        match criterion(id) {
            Some(c) => {
                let outcome = c.run();
                failed += usize::from(!outcome.passed);
                println!("{outcome}");
            }
            None => eprintln!("no criterion {id}"),
        }
    }
    std::process::exit(i32::from(failed > 0));
}
