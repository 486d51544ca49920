//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use hypersym::report::Report;
use hypersym::suite;

struct Criterion {
    summary: &'static str,
    budget: Option<Duration>,
    run: fn() -> Report,
}

fn criteria() -> Vec<Criterion> {
    let c = |summary, budget: Option<u64>, run| Criterion { summary, budget: budget.map(Duration::from_secs), run };
    vec![
        c("family soundness, 500 draws per family", Some(1), || suite::family_soundness(500, 1)),
        c("grid completeness, |num| <= 4, den <= 2", Some(30), suite::grid_completeness),
        c("symplectic-equivalence witnesses", None, suite::witnesses),
        c("completeness probes of the canonical connections", None, suite::canonical_probes),
        c("14 construction cases end to end", Some(5), suite::construction_cases),
        c("C2 refutation on a 9x9 grid", None, suite::c2_refutation),
        c("compatible metric space is a line", None, suite::metric_space_dimension),
        c("distinguished curvature entries", None, suite::curvature_entries),
        c("flatness and completeness table", None, suite::table_rows),
        c("headline metrics from catalog entries", None, suite::headline_metrics),
        c("closedness pattern battery, 500 structures", None, || suite::closedness_pattern_battery(500)),
        c("Levi-Civita characterization on the catalog", None, suite::levi_civita_characterization),
    ]
}

fn main() {
    let mut failed = 0;
    for (n, crit) in criteria().iter().enumerate() {
        let start = Instant::now();
        let rep = (crit.run)();
        let took = start.elapsed();
        let over = crit.budget.is_some_and(|b| took > b);
        let ok = rep.passed() && !over;
        if !ok {
            failed += 1;
        }
        let budget = crit.budget.map(|b| format!(" / {}s", b.as_secs())).unwrap_or_default();
        println!(
            "criterion {:>2}: {} {} [{} checks] ({:.2}s{budget})",
            n + 1,
            if ok { "PASS" } else { "FAIL" },
            crit.summary,
            rep.checks.len(),
            took.as_secs_f64()
        );
        for f in rep.failures() {
            println!("    fail {}: {}", f.id, f.witness.as_deref().unwrap_or(""));
        }
        if over {
            println!("    over time budget");
        }
    }
    println!("{} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
