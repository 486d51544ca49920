//! Reads a structure file and runs the hypersymplectic checks on it.
//!
//! `cargo run --example verify_structure -- path/to/file.json`

use std::path::PathBuf;

use hypersym::cli::cmd_verify;

fn main() -> hypersym::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/structures");
    let paths: Vec<PathBuf> = match std::env::args().nth(1) {
        Some(p) => vec![p.into()],
        None => vec![dir.join("r4_canonical.json"), dir.join("r4_identity_metric.json")],
    };
    for p in paths {
        let rep = cmd_verify(&p)?;
        println!("{} -> {}", p.display(), if rep.passed() { "hypersymplectic" } else { "not hypersymplectic" });
        print!("{rep}");
        println!();
    }
    Ok(())
}
