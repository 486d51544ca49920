//! Flat symplectic connections on 2-d algebras: families, classification and canonical witnesses.

use hypersym::classify2d::{canonical_witness, classify, make_family, rational_grid, residuals, scan_grid, Algebra2, Coeff2d, FamilyTag};
use hypersym::scalar::{int, q};

fn main() -> hypersym::Result<()> {
    let tags = [
        FamilyTag::R2A { alpha: int(8) },
        FamilyTag::R2B { alpha: q(-1, 27) },
        FamilyTag::R2C { alpha: int(2), beta: int(-8) },
        FamilyTag::R2A { alpha: int(2) },
        FamilyTag::AffA { alpha: q(3, 5) },
        FamilyTag::AffB { alpha: int(-4) },
    ];
    for tag in &tags {
        let (conn, _) = make_family(tag)?;
        let (alg, co) = Coeff2d::from_connection(&conn)?;
        let back = classify(alg, &co)?;
        let (w, target) = canonical_witness(tag)?;
        println!("{tag:28} coeffs {co}  classified as {back}  -> {target} via {w:?}");
    }

    let bad = Coeff2d::from_ints([1, 1, 0, -1, 0, 0]);
    println!("\nnot flat and symplectic: residuals {:?}", residuals(Algebra2::R2, &bad));

    let grid = rational_grid(2, 1);
    for alg in [Algebra2::R2, Algebra2::Aff] {
        let scan = scan_grid(alg, &grid);
        println!("grid scan on {}: {} points, {} solutions, {} unclassified", alg.name(), scan.points, scan.solutions, scan.failures.len());
    }
    Ok(())
}
