//! The whole reproduction battery, as printed by `hypersym paper-suite`.

fn main() {
    let rep = hypersym::suite::paper_suite();
    print!("{rep}");
    let fails = rep.failures().count();
    println!("\n{} checks, {fails} failing", rep.checks.len());
}
