//! Left-invariant coframes and the catalog metrics written in coordinates `(t, x, y, z)`.

use hypersym::catalog4d::{canonical_metric, coframe, coordinate_match, metric_at_point, CanonicalCps, CoordinateFormula, Group, Theta};

fn main() -> hypersym::Result<()> {
    let p = [0.3, -0.2, 0.5, 1.0];
    for g in [Group::R4, Group::G0h, Group::G1h, Group::G2h] {
        println!("{g:?} coframe Maurer-Cartan defect at {p:?}: {:.1e}", coframe(g).maurer_cartan_defect(p));
    }

    let pts = [[0.0; 4], p, [-0.7, 0.1, 0.9, -0.4]];
    let headlines = [
        ("(i)", CanonicalCps::R4, CoordinateFormula::Neutral),
        ("(ii)", CanonicalCps::G2 { theta: Theta::zero(), d: false }, CoordinateFormula::G2Theta0),
        ("(iii)", CanonicalCps::G1 { theta: Theta::zero(), d: true }, CoordinateFormula::Headline3),
    ];
    for (name, spec, formula) in headlines {
        let hs = canonical_metric(&spec)?;
        let m = coordinate_match(&hs, spec.group(), &formula, &pts, 1e-12)?;
        println!("\n{name} {spec}: match {} (lambda {:?}, residual {:.2e})", m.ok, m.lambda, m.max_residual);
        for row in metric_at_point(&hs, spec.group(), p)? {
            println!("  {:?}", row.map(|x| (x * 1e6).round() / 1e6));
        }
    }
    Ok(())
}
