//! Geodesic probes: the canonical 2-d connections and the Levi-Civita connection of a catalog metric.

use hypersym::catalog4d::{canonical_metric, CanonicalCps, Theta};
use hypersym::classify2d::CanonicalTarget;
use hypersym::connection::geodesic::{geodesic_probe, ProbeConfig};
use hypersym::connection::levi_civita;

fn main() -> hypersym::Result<()> {
    let cfg = ProbeConfig::with_horizon(100.0);
    for t in [CanonicalTarget::Nabla0, CanonicalTarget::Nabla1, CanonicalTarget::Nabla2] {
        let tr = geodesic_probe(&t.connection(), &[1.0, 1.0], &cfg)?;
        println!("{t}: {:?} after {} samples", tr.verdict, tr.samples.len());
    }

    let hs = canonical_metric(&CanonicalCps::G2 { theta: Theta::zero(), d: false })?;
    let lc = levi_civita(hs.algebra(), hs.g())?;
    let tr = geodesic_probe(&lc, &[1.0, 0.0, 0.0, 0.0], &ProbeConfig::with_horizon(10.0))?;
    println!("\ng2h theta-metric from v0: {:?}", tr.verdict);
    let csv = tr.to_csv(hs.algebra().labels());
    for line in csv.lines().take(4) {
        println!("{line}");
    }
    Ok(())
}
