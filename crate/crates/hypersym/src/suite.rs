//! The reproduction battery: every catalog claim as a keyed check.
//!
//! Groups are independent and deterministic (fixed seeds), so they run in parallel
//! and the merged report is sorted by id.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bicrossproduct::{assemble, matched_pair_violations, Factor, MatchedPairSpec};
use crate::catalog4d::{
    adapted_basis, all_case_specs, canonical_metric, completeness, construct_case, coordinate_match, curvature_profile,
    flatness_table, CanonicalCps, CoordinateFormula, Theta,
};
use crate::classify2d::{
    canonical_witness, make_family, rational_grid, residuals, scan_grid, Algebra2, CanonicalTarget, Coeff2d, FamilyTag,
    Witness,
};
use crate::connection::geodesic::{geodesic_probe, ProbeConfig};
use crate::connection::{verify_symplectic_equivalence, Connection};
use crate::core_tensor::{BilinearForm, HalfAngle, Matrix};
use crate::cps::compatible_metric_space;
use crate::error::Result;
use crate::hypersymplectic::{closedness_battery, levi_civita_battery, verify_hypersymplectic, ClosednessPattern};
use crate::liealg::named_algebra;
use crate::report::{Report, Status};
use crate::scalar::Scalar;

/// Nonzero `p/q` with `|p| ≤ n`, `1 ≤ q ≤ d`.
pub fn random_nonzero(rng: &mut impl Rng, n: i64, d: i64) -> Scalar {
    loop {
        let p = rng.gen_range(-n..=n);
        if p != 0 {
            return Scalar::frac(p, rng.gen_range(1..=d));
        }
    }
}

/// The five parametrized families of flat symplectic connections.
pub fn random_family_tag(rng: &mut impl Rng, kind: usize) -> FamilyTag {
    let mut r = || random_nonzero(rng, 20, 9);
    match kind % 5 {
        0 => FamilyTag::R2A { alpha: r() },
        1 => FamilyTag::R2B { alpha: r() },
        2 => FamilyTag::R2C { alpha: r(), beta: r() },
        3 => FamilyTag::AffA { alpha: r() },
        _ => FamilyTag::AffB { alpha: r() },
    }
}

fn msg(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Random family draws are flat, torsion-free, `ω`-parallel, with zero residuals.
pub fn family_soundness(draws: usize, seed: u64) -> Report {
    let mut rep = Report::new();
    for kind in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed + kind as u64);
        let mut bad: Option<String> = None;
        for _ in 0..draws {
            let tag = random_family_tag(&mut rng, kind);
            let ok = match (make_family(&tag), tag.coefficients()) {
                (Ok((c, w)), Ok(co)) => {
                    residuals(tag.algebra(), &co).iter().all(Scalar::is_zero)
                        && c.is_torsion_free()
                        && c.is_flat()
                        && c.parallel_form_check(&w)
                }
                _ => false,
            };
            if !ok && bad.is_none() {
                bad = Some(tag.to_string());
            }
        }
        let name = ["R2 (a)", "R2 (b)", "R2 (c)", "aff (a)", "aff (b)"][kind];
        rep.check(format!("families/soundness {name}"), bad.is_none(), || format!("{} after {draws} draws", bad.clone().unwrap_or_default()));
    }
    rep
}

/// Every zero-residual point of the grid `|p| ≤ 4`, `q ≤ 2` classifies and round-trips.
pub fn grid_completeness() -> Report {
    let grid = rational_grid(4, 2);
    let mut rep = Report::new();
    for alg in [Algebra2::R2, Algebra2::Aff] {
        let scan = scan_grid(alg, &grid);
        rep.check(format!("families/grid completeness {}", alg.name()), scan.failures.is_empty() && scan.solutions > 0, || {
            format!("{} of {} solutions fail, first {:?}", scan.failures.len(), scan.solutions, scan.failures.first().map(|c| c.to_string()))
        });
    }
    rep
}

/// Exact witnesses for cube parameters on `ℝ²` and all sampled parameters on `aff(ℝ)`;
/// `∇¹` and `∇²` separated by the dimension of parallel annihilated covectors.
pub fn witnesses() -> Report {
    let mut rep = Report::new();
    let cubes: Vec<Scalar> = [(1, 1), (8, 1), (-27, 1), (1, 8), (27, 64), (-8, 125), (64, 27)].iter().map(|&(p, q)| Scalar::frac(p, q)).collect();
    let mut tags: Vec<FamilyTag> = Vec::new();
    for a in &cubes {
        tags.push(FamilyTag::R2A { alpha: a.clone() });
        tags.push(FamilyTag::R2B { alpha: a.clone() });
        for b in &cubes {
            tags.push(FamilyTag::R2C { alpha: &Scalar::frac(3, 7) * a, beta: b.clone() });
        }
    }
    for a in rational_grid(4, 3) {
        tags.push(FamilyTag::AffA { alpha: a.clone() });
        tags.push(FamilyTag::AffB { alpha: a });
    }
    let bad: Vec<String> = tags
        .par_iter()
        .filter_map(|t| {
            let exact = match canonical_witness(t) {
                Ok((Witness::Exact(m), target)) => make_family(t)
                    .and_then(|(c, w)| verify_symplectic_equivalence(&m, (&c, &w), (&target.connection(), &w)))
                    .unwrap_or(false),
                _ => false,
            };
            (!exact).then(|| t.to_string())
        })
        .collect();
    rep.check("families/exact witnesses", bad.is_empty(), || format!("{} of {} fail: {}", bad.len(), tags.len(), bad.join("; ")));
    let d1 = CanonicalTarget::Nabla1.connection().parallel_annihilator_dim();
    let d2 = CanonicalTarget::Nabla2.connection().parallel_annihilator_dim();
    rep.check("families/nabla1 vs nabla2 invariant", d1 == 1 && d2 == 0, || format!("dims {d1} and {d2}"));
    rep
}

/// Geodesic probes on the three canonical connections.
pub fn canonical_probes() -> Report {
    let mut rep = Report::new();
    let run = |t: CanonicalTarget, x0: &[f64]| geodesic_probe(&t.connection(), x0, &ProbeConfig::with_horizon(100.0));
    let starts: [&[f64]; 5] = [&[1.0, 1.0], &[1.0, 0.0], &[0.0, 1.0], &[-1.0, 0.5], &[0.3, -2.0]];
    let complete: Vec<String> = starts
        .iter()
        .filter_map(|x| match run(CanonicalTarget::Nabla0, x) {
            Ok(tr) if tr.verdict.is_complete() => None,
            Ok(tr) => Some(format!("{x:?}: {:?}", tr.verdict)),
            Err(e) => Some(msg(e)),
        })
        .collect();
    rep.push(
        "probe/nabla0 complete to horizon 100",
        if complete.is_empty() { Status::Heuristic } else { Status::Fail },
        (!complete.is_empty()).then(|| complete.join("; ")),
    );
    match run(CanonicalTarget::Nabla1, &[1.0, 1.0]) {
        Ok(tr) => {
            let t = tr.verdict.blow_up_time();
            rep.push(
                "probe/nabla1 blow-up near t=1",
                if t.is_some_and(|t| (t - 1.0).abs() <= 0.05) { Status::Heuristic } else { Status::Fail },
                Some(format!("blow-up at {t:?}")),
            );
        }
        Err(e) => rep.push("probe/nabla1 blow-up near t=1", Status::Fail, Some(msg(e))),
    }
    let found = starts.iter().find_map(|x| run(CanonicalTarget::Nabla2, x).ok()?.verdict.blow_up_time().map(|t| (x, t)));
    rep.push(
        "probe/nabla2 blow-up",
        if found.is_some() { Status::Heuristic } else { Status::Fail },
        Some(format!("{found:?}")),
    );
    rep
}

/// All construction cases at their samples.
pub fn construction_cases() -> Report {
    let mut checks: Vec<(String, bool, String)> = all_case_specs()
        .par_iter()
        .map(|cs| {
            let id = format!("cases/{cs}");
            match construct_case(cs) {
                Ok(r) => {
                    let hs = &r.bicross.structure;
                    let jac = hs.algebra().check_jacobi().is_empty();
                    let v = verify_hypersymplectic(hs.algebra(), hs.cp().j(), hs.cp().e(), hs.g());
                    let ok = jac && v.passed() && r.passed();
                    let w = format!(
                        "target {} ({}), jacobi {jac}, verify {}, basis change {}, eigenspaces {}, homothety {}",
                        cs.id.target(),
                        r.expected,
                        v.passed(),
                        r.basis_change_ok,
                        r.display_ok,
                        r.homothety.map_or("none".into(), |l| l.to_string())
                    );
                    (id, ok, w)
                }
                Err(e) => (id, false, msg(e)),
            }
        })
        .collect();
    checks.sort();
    let mut rep = Report::new();
    for (id, ok, w) in checks {
        rep.push(id, status(ok), Some(w));
    }
    rep
}

/// The `(∇¹, ∇²)` pair admits no `φ = [[a,0],[b,1/a]]` on a 9×9 grid.
pub fn c2_refutation() -> Report {
    let avals: Vec<Scalar> = [(-3, 1), (-2, 1), (-1, 1), (-1, 2), (1, 3), (1, 2), (1, 1), (2, 1), (3, 1)].iter().map(|&(p, q)| Scalar::frac(p, q)).collect();
    let bvals: Vec<Scalar> = (-4..=4).map(Scalar::int).collect();
    let f = |t: CanonicalTarget| Factor::new(t.connection(), BilinearForm::wedge(2, 0, 1)).expect("2-d");
    let pts: Vec<(Scalar, Scalar)> = avals.iter().flat_map(|a| bvals.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let bad: Vec<String> = pts
        .par_iter()
        .filter_map(|(a, b)| {
            let phi = Matrix::from_rows(vec![vec![a.clone(), Scalar::zero()], vec![b.clone(), a.recip().ok()?]]);
            let spec = MatchedPairSpec::new(f(CanonicalTarget::Nabla1), f(CanonicalTarget::Nabla2), phi).ok()?;
            let v = matched_pair_violations(&spec).ok()?;
            v.is_empty().then(|| format!("a={a} b={b}"))
        })
        .collect();
    let mut rep = Report::new();
    rep.check("cases/C2 has no compatible phi", bad.is_empty(), || format!("matched pair at {}", bad.join(", ")));
    rep
}

fn catalog_specs(t: Theta) -> Vec<CanonicalCps> {
    vec![
        CanonicalCps::G0 { theta: t.clone() },
        CanonicalCps::G1 { theta: t.clone(), d: false },
        CanonicalCps::G1 { theta: t.clone(), d: true },
        CanonicalCps::G2 { theta: t.clone(), d: false },
        CanonicalCps::G2 { theta: t, d: true },
    ]
}

/// Every canonical structure plus the angle-free ones, at `n` half-angle samples.
pub fn catalog_structures(n: usize) -> Vec<CanonicalCps> {
    let mut v = vec![CanonicalCps::R4, CanonicalCps::G1One, CanonicalCps::G2One];
    for h in HalfAngle::samples(n) {
        v.extend(catalog_specs(Theta::Half(h)));
    }
    v
}

/// The compatible metrics of each canonical structure form a line.
pub fn metric_space_dimension() -> Report {
    let specs = catalog_structures(20);
    let bad: Vec<String> = specs
        .par_iter()
        .filter_map(|s| {
            let n = crate::catalog4d::canonical_cps(s).map(|cp| compatible_metric_space(&cp).len());
            (n.as_ref().ok() != Some(&1)).then(|| format!("{s}: {n:?}"))
        })
        .collect();
    let mut rep = Report::new();
    rep.check("catalog/compatible metrics one-dimensional", bad.is_empty(), || bad.join("; "));
    rep
}

/// `R(U, V)` distinguished entries `6c` and `6c²`, everything else zero.
pub fn curvature_entries() -> Report {
    let mut rep = Report::new();
    let samples = [(3, 5, 4, 5), (0, 1, 1, 1), (5, 13, 12, 13)];
    for (cp, cq, sp, sq) in samples {
        let (c, s) = (Scalar::frac(cp, cq), Scalar::frac(sp, sq));
        for (d2, expect) in [(false, &Scalar::int(6) * &c), (true, &Scalar::int(6) * &c.square())] {
            let t = Theta::half(c.clone(), s.clone()).expect("unit");
            let spec = if d2 { CanonicalCps::G2 { theta: t, d: true } } else { CanonicalCps::G1 { theta: t, d: true } };
            let id = format!("catalog/curvature {spec}");
            match curvature_profile(&spec) {
                Ok(p) => {
                    let ok = p.distinguished_entry == expect && p.mirror_entry == expect && p.rest_zero && p.flat == c.is_zero();
                    rep.check(id, ok, || format!("entry {} (expected {expect}), rest zero {}, flat {}", p.distinguished_entry, p.rest_zero, p.flat));
                }
                Err(e) => rep.push(id, Status::Fail, Some(msg(e))),
            }
        }
    }
    rep
}

/// The eight-row flatness and completeness table.
pub fn table_rows() -> Report {
    let mut rep = Report::new();
    let rows = match flatness_table(10.0) {
        Ok(r) => r,
        Err(e) => {
            rep.push("flatness-table/evaluation", Status::Fail, Some(msg(e)));
            return rep;
        }
    };
    for row in &rows {
        let base = format!("flatness-table/{}", row.label);
        rep.check(format!("{base} flatness"), row.flat_ok(), || row.flat_mismatches.join("; "));
        let probe_st = if row.probe_mismatches.is_empty() { Status::Heuristic } else { Status::Fail };
        let claim = if row.complete_claim { "complete" } else { "incomplete" };
        rep.push(format!("{base} {claim} (probe)"), probe_st, (!row.probe_mismatches.is_empty()).then(|| row.probe_mismatches.join("; ")));
        if let Some(s) = row.structural_confirmed {
            rep.check(format!("{base} incomplete (aff factor)"), s, || "no aff(R) factor with incomplete connection".into());
        }
    }
    rep
}

/// Five fixed pseudo-random points in `[-1, 1]⁴`.
pub fn coordinate_points(seed: u64) -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..5).map(|_| std::array::from_fn(|_| rng.gen_range(-1.0..=1.0))).collect()
}

fn headline(id: &str, spec: CanonicalCps, formula: CoordinateFormula, want_flat: bool, want_complete: bool) -> Report {
    let mut rep = Report::new();
    let eval = || -> Result<(bool, bool, crate::catalog4d::CoordinateMatch)> {
        let hs = canonical_metric(&spec)?;
        let flat = crate::connection::levi_civita(hs.algebra(), hs.g())?.is_flat();
        let extra = adapted_basis(&spec).map(|b| b.to_vec()).unwrap_or_default();
        let ev = completeness(&hs, &extra, 10.0)?;
        let complete = ev.probe_complete() && !ev.structurally_incomplete();
        let cm = coordinate_match(&hs, spec.group(), &formula, &coordinate_points(7), 1e-12)?;
        Ok((flat, complete, cm))
    };
    match eval() {
        Ok((flat, complete, cm)) => {
            rep.check(format!("headline/{id} flatness"), flat == want_flat, || format!("flat={flat}"));
            let cs = if complete == want_complete { Status::Heuristic } else { Status::Fail };
            rep.push(format!("headline/{id} completeness"), cs, Some(format!("complete={complete}")));
            rep.check(format!("headline/{id} coordinates"), cm.ok, || format!("lambda {:?}, residual {:.3e}", cm.lambda, cm.max_residual));
        }
        Err(e) => rep.push(format!("headline/{id}"), Status::Fail, Some(msg(e))),
    }
    rep
}

/// The three headline metrics from their catalog entries.
pub fn headline_metrics() -> Report {
    let mut rep = headline("(i)", CanonicalCps::R4, CoordinateFormula::Neutral, true, true);
    rep.extend(headline("(ii)", CanonicalCps::G2 { theta: Theta::zero(), d: false }, CoordinateFormula::G2Theta0, true, false));
    rep.extend(headline("(iii)", CanonicalCps::G1 { theta: Theta::zero(), d: true }, CoordinateFormula::Headline3, false, false));
    rep
}

/// Coordinate formulas of each catalog entry at sampled angles.
pub fn coordinate_formulas() -> Report {
    let mut rep = Report::new();
    let pts = coordinate_points(11);
    let mut specs = vec![CanonicalCps::R4, CanonicalCps::G1One, CanonicalCps::G2One];
    for h in HalfAngle::samples(3) {
        specs.extend(catalog_specs(Theta::Half(h)));
    }
    for spec in specs {
        let id = format!("coordinates/{spec}");
        let r = canonical_metric(&spec).and_then(|hs| coordinate_match(&hs, spec.group(), &CoordinateFormula::for_catalog(&spec), &pts, 1e-12));
        match r {
            Ok(cm) => rep.check(id, cm.ok, || format!("lambda {:?}, residual {:.3e}", cm.lambda, cm.max_residual)),
            Err(e) => rep.push(id, Status::Fail, Some(msg(e))),
        }
    }
    rep.push(
        "coordinates/g0h metrics isometric to the neutral metric",
        Status::AssertedNotVerified,
        Some("no isometry witness constructed".into()),
    );
    rep
}

/// Flat torsion-free connections on 2-d algebras, parallel for `e¹∧e²` or not.
pub fn random_flat_connection(rng: &mut impl Rng) -> Connection {
    let kind = rng.gen_range(0..9);
    if kind < 5 {
        return make_family(&random_family_tag(rng, kind)).expect("family").0;
    }
    let p = random_nonzero(rng, 6, 4);
    let z = Scalar::zero;
    let co = |a: Scalar, b: Scalar, c: Scalar, d: Scalar, g: Scalar, h: Scalar| Coeff2d { a, b, c, d, g, h };
    match kind {
        // ∇_{e1}e1 = p e1
        5 => co(p, z(), z(), z(), z(), z()).to_connection(Algebra2::R2),
        // ∇_{e1} = p Id, ∇_{e2} e1 = p e2
        6 => co(p.clone(), z(), z(), p, z(), z()).to_connection(Algebra2::R2),
        // aff: ∇_{e1} = diag(p, 1), ∇_{e2} = 0
        7 => co(p, z(), z(), Scalar::one(), z(), z()).to_connection(Algebra2::Aff),
        // aff: ∇_{e1} = diag(2, 1), ∇_{e2}e2 = p e1
        _ => co(Scalar::int(2), z(), z(), Scalar::one(), p, z()).to_connection(Algebra2::Aff),
    }
}

fn random_phi(rng: &mut impl Rng) -> Matrix {
    loop {
        let mut e = || Scalar::frac(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let m = Matrix::from_rows(vec![vec![e(), e()], vec![e(), e()]]);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// A matched pair of flat torsion-free factors: one side is the zero connection on `ℝ²`
/// (then the identities hold for every `φ`), or both sides random, kept when the identities hold.
pub fn random_matched_pair(rng: &mut impl Rng) -> MatchedPairSpec {
    let w = || BilinearForm::wedge(2, 0, 1);
    let zero = || Factor::new(Connection::zero(named_algebra("R2").expect("R2")), w()).expect("2-d");
    let mut choices = [0, 1, 2];
    choices.shuffle(rng);
    for _ in 0..50 {
        let u = Factor::new(random_flat_connection(rng), w()).expect("2-d");
        let spec = match choices[0] {
            0 => MatchedPairSpec::new(u, zero(), random_phi(rng)),
            1 => MatchedPairSpec::new(zero(), u, random_phi(rng)),
            _ => MatchedPairSpec::new(u, Factor::new(random_flat_connection(rng), w()).expect("2-d"), random_phi(rng)),
        }
        .expect("dims");
        if matched_pair_violations(&spec).is_ok_and(|v| v.is_empty()) {
            return spec;
        }
    }
    let u = Factor::new(random_flat_connection(rng), w()).expect("2-d");
    MatchedPairSpec::new(u, zero(), random_phi(rng)).expect("dims")
}

/// Closedness patterns of `n` random matched-pair structures.
pub fn random_closedness_patterns(n: usize, seed: u64) -> Vec<Result<ClosednessPattern>> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let spec = random_matched_pair(&mut rng);
            let (cp, g) = assemble(&spec)?;
            closedness_battery(&cp, &g)
        })
        .collect()
}

/// `dω₁ = 0 ⇔ dω₃ = 0 ⇔ ∇±ω± = 0`, all implying `dω₂ = 0`.
pub fn closedness_pattern_battery(n: usize) -> Report {
    let pats = random_closedness_patterns(n, 33);
    let mut errors = 0;
    let mut broken = 0;
    let mut closed = 0;
    for p in &pats {
        match p {
            Ok(p) if p.pattern_holds() => closed += usize::from(p.d_omega1_zero),
            Ok(_) => broken += 1,
            Err(_) => errors += 1,
        }
    }
    let mut rep = Report::new();
    rep.push(
        "batteries/closedness pattern on random matched pairs",
        status(broken == 0 && errors == 0),
        Some(format!("{n} structures, {closed} with d omega1 = 0, {broken} violations, {errors} errors")),
    );
    rep
}

/// Levi-Civita characterization on every catalog structure and on random matched pairs.
pub fn levi_civita_characterization() -> Report {
    let mut rep = Report::new();
    let specs = catalog_structures(6);
    let bad: Vec<String> = specs
        .par_iter()
        .filter_map(|s| {
            let r = canonical_metric(s).and_then(|hs| levi_civita_battery(hs.cp(), hs.g()));
            match r {
                Ok(p) if p.pattern_holds() && p.hypersymplectic => None,
                other => Some(format!("{s}: {other:?}")),
            }
        })
        .collect();
    rep.check("batteries/levi-civita on catalog", bad.is_empty(), || bad.join("; "));
    let random: Vec<bool> = (0..60u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(900 + i);
            let spec = random_matched_pair(&mut rng);
            assemble(&spec).and_then(|(cp, g)| levi_civita_battery(&cp, &g)).is_ok_and(|p| p.pattern_holds())
        })
        .collect();
    let fails = random.iter().filter(|b| !**b).count();
    rep.check("batteries/levi-civita on random matched pairs", fails == 0, || format!("{fails} of {} violate", random.len()));
    rep
}

pub type SuiteGroup = fn() -> Report;

/// Named groups in a fixed order; the paper-suite runs them all.
pub fn groups() -> Vec<(&'static str, SuiteGroup)> {
    vec![
        ("family soundness", || family_soundness(500, 1)),
        ("grid completeness", grid_completeness),
        ("witnesses", witnesses),
        ("canonical probes", canonical_probes),
        ("construction cases", construction_cases),
        ("C2 refutation", c2_refutation),
        ("metric space dimension", metric_space_dimension),
        ("curvature entries", curvature_entries),
        ("flatness table", table_rows),
        ("headline metrics", headline_metrics),
        ("closedness battery", || closedness_pattern_battery(500)),
        ("levi-civita battery", levi_civita_characterization),
        ("coordinate formulas", coordinate_formulas),
    ]
}

/// Runs every group in parallel; the merged report is sorted by id.
pub fn paper_suite() -> Report {
    let parts: Vec<Report> = groups().par_iter().map(|(_, f)| f()).collect();
    let mut rep = Report::new();
    for p in parts {
        rep.extend(p);
    }
    rep.sort_by_id();
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_pairs_satisfy_identities_and_vary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut closed = 0;
        for _ in 0..40 {
            let spec = random_matched_pair(&mut rng);
            assert!(matched_pair_violations(&spec).unwrap().is_empty());
            let (cp, g) = assemble(&spec).unwrap();
            let p = closedness_battery(&cp, &g).unwrap();
            assert!(p.pattern_holds(), "{p:?}");
            closed += usize::from(p.d_omega1_zero);
        }
        assert!(closed > 0 && closed < 40, "{closed}");
    }

    #[test]
    fn small_groups_pass() {
        assert!(family_soundness(20, 3).passed());
        assert!(c2_refutation().passed());
        assert!(witnesses().passed());
    }

    #[test]
    fn coordinate_points_deterministic() {
        assert_eq!(coordinate_points(7), coordinate_points(7));
    }
}
