//! The fourteen matched-pair constructions and the canonical structures they land on.

use hypersym::catalog4d::{all_case_specs, construct_case};

fn main() -> hypersym::Result<()> {
    for cs in all_case_specs() {
        let r = construct_case(&cs)?;
        println!(
            "{:22} -> {:34} basis change {:5} eigenspaces {:5} homothety {}",
            cs.to_string(),
            r.expected.to_string(),
            r.basis_change_ok,
            r.display_ok,
            r.homothety.map_or("none".into(), |l| l.to_string())
        );
    }
    Ok(())
}
