//! Frozen values and closed-form claims checked exactly.

use hypersym::catalog4d::{
    a4_half_angle_f64, canonical_cps, canonical_metric, construct_case, coordinate_match, curvature_profile, CanonicalCps,
    CaseId, CaseSpec, CoordinateFormula, Group, Theta,
};
use hypersym::classify2d::{make_family, CanonicalTarget, FamilyTag};
use hypersym::connection::geodesic::{geodesic_probe, ProbeConfig};
use hypersym::cps::compatible_metric_space;
use hypersym::hypersymplectic::{d_two_form, kaehler_forms};
use hypersym::liealg::named_algebra;
use hypersym::scalar::{int, q};
use hypersym::suite::coordinate_points;
use hypersym::{HalfAngle, Matrix, Scalar};

fn half(c: Scalar, s: Scalar) -> Theta {
    Theta::half(c, s).unwrap()
}

#[test]
fn curvature_distinguished_entries() {
    let g1 = |c: Scalar, s: Scalar| curvature_profile(&CanonicalCps::G1 { theta: half(c, s), d: true }).unwrap();
    let g2 = |c: Scalar, s: Scalar| curvature_profile(&CanonicalCps::G2 { theta: half(c, s), d: true }).unwrap();
    assert_eq!(g1(q(3, 5), q(4, 5)).distinguished_entry, q(18, 5));
    assert_eq!(g1(q(5, 13), q(12, 13)).distinguished_entry, q(30, 13));
    assert_eq!(g2(q(3, 5), q(4, 5)).distinguished_entry, q(54, 25));
    assert_eq!(g2(q(5, 13), q(12, 13)).distinguished_entry, q(150, 169));
    assert!(g1(int(0), int(1)).flat && g2(int(0), int(1)).flat);
}

/// The two angle-free structures carry curvature, frozen here.
#[test]
fn angle_free_structures_are_curved() {
    let p1 = curvature_profile(&CanonicalCps::G1One).unwrap();
    let p2 = curvature_profile(&CanonicalCps::G2One).unwrap();
    assert!(!p1.flat && !p2.flat);
    assert_eq!(p1.distinguished_entry, int(6));
    assert_eq!(p2.distinguished_entry, int(-6));
    assert!(p1.rest_zero && p2.rest_zero);
}

#[test]
fn r4_canonical_metric_and_forms() {
    let hs = canonical_metric(&CanonicalCps::R4).unwrap();
    let a = Matrix::from_int_rows(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]]);
    assert_eq!(hs.g().matrix(), &a);
    let f = kaehler_forms(&hs).unwrap();
    for w in f.as_array() {
        assert!(d_two_form(hs.algebra(), w).is_zero());
    }
}

#[test]
fn compatible_metrics_form_a_line_at_twenty_angles() {
    for h in HalfAngle::samples(20) {
        for d in [false, true] {
            let t = Theta::Half(h.clone());
            for spec in [CanonicalCps::G1 { theta: t.clone(), d }, CanonicalCps::G2 { theta: t.clone(), d }, CanonicalCps::G0 { theta: t }] {
                assert_eq!(compatible_metric_space(&canonical_cps(&spec).unwrap()).len(), 1, "{spec}");
            }
        }
    }
}

#[test]
fn case_homotheties_frozen() {
    let lam = |id, a: Scalar, b: Scalar| construct_case(&CaseSpec::new(id, a, b).unwrap()).unwrap().homothety.unwrap();
    assert_eq!(lam(CaseId::A1, int(1), int(0)), int(1));
    assert_eq!(lam(CaseId::A4, int(2), int(3)), q(-1, 8));
    assert_eq!(lam(CaseId::B2, int(2), int(3)), q(1, 4));
    assert_eq!(lam(CaseId::B2p, int(2), int(3)), int(-16));
    assert_eq!(lam(CaseId::B4, int(2), int(3)), q(3, 64));
    assert_eq!(lam(CaseId::C1, int(2), int(3)), q(25, 24));
    assert_eq!(lam(CaseId::C3, int(2), int(3)), q(25, 32));
}

#[test]
fn case_angles() {
    let theta = |id, a: i64, b: i64| match CaseSpec::new(id, int(a), int(b)).unwrap().expected().unwrap() {
        CanonicalCps::G0 { theta } | CanonicalCps::G1 { theta, .. } | CanonicalCps::G2 { theta, .. } => theta.trig(),
        other => panic!("{other}"),
    };
    assert_eq!(theta(CaseId::A4, 2, 3), (q(63, 65), q(16, 65)));
    assert_eq!(theta(CaseId::C1, 2, 3), (q(-3, 5), q(-4, 5)));
    assert_eq!(theta(CaseId::C3, 2, 3), (q(-3, 5), q(4, 5)));
    let CanonicalCps::G0 { theta } = CaseSpec::new(CaseId::A4, int(2), int(0)).unwrap().expected().unwrap() else { panic!() };
    let (c, s) = theta.half_f64();
    let (c2, s2) = a4_half_angle_f64(2.0);
    assert!((c - c2).abs() < 1e-12 && (s - s2).abs() < 1e-12);
}

#[test]
fn probe_blow_up_times() {
    let cfg = ProbeConfig::with_horizon(100.0);
    let t1 = geodesic_probe(&CanonicalTarget::Nabla1.connection(), &[1.0, 1.0], &cfg).unwrap().verdict.blow_up_time().unwrap();
    assert!((t1 - 1.0).abs() < 0.05);
    // From (1, 1) under the second connection the blow-up is at t = 2.
    let t2 = geodesic_probe(&CanonicalTarget::Nabla2.connection(), &[1.0, 1.0], &cfg).unwrap().verdict.blow_up_time().unwrap();
    assert!((t2 - 2.0).abs() < 0.1);
    assert!(geodesic_probe(&CanonicalTarget::Nabla0.connection(), &[1.0, 1.0], &cfg).unwrap().verdict.is_complete());
}

#[test]
fn canonical_connections_invariant() {
    assert_eq!(CanonicalTarget::Nabla1.connection().parallel_annihilator_dim(), 1);
    assert_eq!(CanonicalTarget::Nabla2.connection().parallel_annihilator_dim(), 0);
    let (c, _) = make_family(&FamilyTag::AffA { alpha: int(0) }).unwrap();
    assert_eq!(c, CanonicalTarget::Nabla1.connection());
}

#[test]
fn coordinate_formulas_that_agree() {
    let pts = coordinate_points(7);
    let check = |spec: CanonicalCps, f: CoordinateFormula| {
        let hs = canonical_metric(&spec).unwrap();
        coordinate_match(&hs, spec.group(), &f, &pts, 1e-12).unwrap()
    };
    let m = check(CanonicalCps::R4, CoordinateFormula::Neutral);
    assert!(m.ok && m.lambda == Some(1.0));
    let m = check(CanonicalCps::G2 { theta: Theta::zero(), d: false }, CoordinateFormula::G2Theta0);
    assert!(m.ok && m.lambda == Some(-1.0));
    let t = half(q(3, 5), q(4, 5));
    let m = check(CanonicalCps::G1 { theta: t.clone(), d: false }, CoordinateFormula::G1Theta0 { c: 0.6, s: 0.8 });
    assert!(m.ok && m.lambda == Some(1.0));
}

/// The g1h metric with d = 1 at θ = 0 is not homothetic to `e^t dt dz + e^{2t} dz² - dx dy + e^{2t} dy²`.
#[test]
fn third_headline_formula_disagrees() {
    let spec = CanonicalCps::G1 { theta: Theta::zero(), d: true };
    let hs = canonical_metric(&spec).unwrap();
    let m = coordinate_match(&hs, Group::G1h, &CoordinateFormula::Headline3, &coordinate_points(7), 1e-12).unwrap();
    assert!(!m.ok);
    // The computed metric at the origin, frozen.
    let at0 = hypersym::catalog4d::metric_at_point(&hs, Group::G1h, [0.0; 4]).unwrap();
    assert_eq!(at0[0][0], 2.0);
    assert_eq!(at0[1][2], 1.0);
}

#[test]
fn named_algebra_brackets() {
    let g2 = named_algebra("g2h").unwrap();
    assert_eq!(g2.structure_constant(0, 1, 1), &int(2));
    assert_eq!(g2.structure_constant(1, 2, 3), &int(1));
    let g1 = named_algebra("g1h").unwrap();
    assert_eq!(g1.structure_constant(0, 2, 2), &int(-1));
}
