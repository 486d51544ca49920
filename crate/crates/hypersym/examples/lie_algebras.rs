//! Named algebras, their invariants, and the eigenspace splitting of a canonical `{J, E}`.

use hypersym::catalog4d::{canonical_cps, CanonicalCps, Theta};
use hypersym::cps::split;
use hypersym::liealg::{invariants, is_subalgebra, named_algebra};

fn main() -> hypersym::Result<()> {
    for name in ["R4", "g0h", "g1h", "g2h", "aff"] {
        let l = named_algebra(name)?;
        let inv = invariants(&l);
        println!(
            "{name:4} dim {} jacobi-ok {} derived {:?} lower central {:?} center {} unimodular {}",
            l.dim(),
            l.check_jacobi().is_empty(),
            inv.derived_series_dims,
            inv.lower_central_dims,
            inv.center_dim,
            inv.unimodular
        );
    }

    let cp = canonical_cps(&CanonicalCps::G1 { theta: Theta::zero(), d: true })?;
    let sp = split(&cp)?;
    println!("\ng1h, theta = 0, d = 1");
    println!("  g+ = {:?}  subalgebra {}", sp.plus.vectors(), is_subalgebra(cp.algebra(), &sp.plus));
    println!("  g- = {:?}  subalgebra {}", sp.minus.vectors(), is_subalgebra(cp.algebra(), &sp.minus));
    Ok(())
}
