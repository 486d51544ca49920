//! The closedness and Levi-Civita batteries on randomly generated matched pairs.

use hypersym::bicrossproduct::assemble;
use hypersym::hypersymplectic::{closedness_battery, levi_civita_battery};
use hypersym::suite::random_matched_pair;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hypersym::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut closed, mut hyper, n) = (0, 0, 100);
    for _ in 0..n {
        let spec = random_matched_pair(&mut rng);
        let (cp, g) = assemble(&spec)?;
        let c = closedness_battery(&cp, &g)?;
        let l = levi_civita_battery(&cp, &g)?;
        assert!(c.pattern_holds() && l.pattern_holds());
        closed += usize::from(c.d_omega1_zero);
        hyper += usize::from(l.hypersymplectic);
    }
    println!("{n} random matched pairs: {closed} with d omega1 = 0, {hyper} hypersymplectic, all patterns hold");
    Ok(())
}
