//! Canonical metrics, curvature of the adapted basis, and the flatness/completeness table.

use hypersym::catalog4d::{canonical_metric, curvature_profile, flatness_table, CanonicalCps, Theta};
use hypersym::scalar::q;
use hypersym::signature;

fn main() -> hypersym::Result<()> {
    let t = Theta::half(q(3, 5), q(4, 5))?;
    for spec in [
        CanonicalCps::R4,
        CanonicalCps::G0 { theta: t.clone() },
        CanonicalCps::G1 { theta: t.clone(), d: false },
        CanonicalCps::G1 { theta: t.clone(), d: true },
        CanonicalCps::G1One,
        CanonicalCps::G2 { theta: t.clone(), d: false },
        CanonicalCps::G2 { theta: t, d: true },
        CanonicalCps::G2One,
    ] {
        let hs = canonical_metric(&spec)?;
        let p = curvature_profile(&spec)?;
        println!("{:32} signature {:?} flat {:5} R(U,V)[2,1] = {}", spec.to_string(), signature(hs.g())?, p.flat, p.distinguished_entry);
    }

    println!();
    for row in flatness_table(10.0)? {
        println!(
            "{:16} flat ok {:5} completeness ok {:5} aff factor {:?} {}",
            row.label,
            row.flat_ok(),
            row.complete_ok(),
            row.structural_confirmed,
            row.flat_mismatches.join("; ")
        );
    }
    Ok(())
}
