//! Flat torsion-free connections on `ℝ²` and `aff(ℝ)` with `e¹∧e²` parallel.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::connection::{verify_symplectic_equivalence, verify_symplectic_equivalence_f64, Connection};
use crate::core_tensor::{BilinearForm, Matrix, Vector};
use crate::error::{Error, Result};
use crate::liealg::{named_algebra, LieAlgebra};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Algebra2 {
    R2,
    Aff,
}

impl Algebra2 {
    pub fn algebra(self) -> LieAlgebra {
        named_algebra(self.name()).expect("named")
    }

    pub fn name(self) -> &'static str {
        match self {
            Algebra2::R2 => "R2",
            Algebra2::Aff => "aff",
        }
    }

    /// Recognizes `ℝ²` and `aff(ℝ)` in the basis with `[e1,e2] = e2`.
    pub fn detect(l: &LieAlgebra) -> Result<Self> {
        if l.dim() != 2 {
            return Err(Error::Dimension { expected: 2, got: l.dim() });
        }
        if l.is_abelian() {
            Ok(Algebra2::R2)
        } else if *l.basis_bracket(0, 1) == Vector::from_ints(&[0, 1]) {
            Ok(Algebra2::Aff)
        } else {
            Err(Error::NotClassifiable("2-d algebra must be abelian or satisfy [e1,e2] = e2".into()))
        }
    }
}

/// `∇_{e1}e1 = a e1 + b e2`, `∇_{e1}e2 = c e1 + d e2`, `∇_{e2}e2 = g e1 + h e2`;
/// `∇_{e2}e1` is fixed by torsion-freeness.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coeff2d {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub g: Scalar,
    pub h: Scalar,
}

impl Coeff2d {
    pub fn from_ints(v: [i64; 6]) -> Self {
        let s = |i: usize| Scalar::int(v[i]);
        Coeff2d { a: s(0), b: s(1), c: s(2), d: s(3), g: s(4), h: s(5) }
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 6])
    }

    pub fn to_connection(&self, alg: Algebra2) -> Connection {
        let v = |x: &Scalar, y: &Scalar| Vector(vec![x.clone(), y.clone()]);
        let e2e1 = match alg {
            Algebra2::R2 => v(&self.c, &self.d),
            Algebra2::Aff => v(&self.c, &(&self.d - &Scalar::one())),
        };
        let gamma = vec![vec![v(&self.a, &self.b), v(&self.c, &self.d)], vec![e2e1, v(&self.g, &self.h)]];
        Connection::new(alg.algebra(), gamma).expect("2x2 table")
    }

    /// Reads the coefficients of a torsion-free connection.
    pub fn from_connection(conn: &Connection) -> Result<(Algebra2, Self)> {
        let alg = Algebra2::detect(conn.algebra())?;
        if !conn.is_torsion_free() {
            return Err(Error::NotClassifiable("connection has torsion".into()));
        }
        let g = |i: usize, j: usize, k: usize| conn.gamma(i, j, k).clone();
        Ok((alg, Coeff2d { a: g(0, 0, 0), b: g(0, 0, 1), c: g(0, 1, 0), d: g(0, 1, 1), g: g(1, 1, 0), h: g(1, 1, 1) }))
    }
}

impl fmt::Display for Coeff2d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a,b,c,d,g,h) = ({}, {}, {}, {}, {}, {})", self.a, self.b, self.c, self.d, self.g, self.h)
    }
}

/// `(d + a, h + c, bg + ac, a² + bc, c² - ag)`.
pub fn residuals_r2(co: &Coeff2d) -> Vec<Scalar> {
    let Coeff2d { a, b, c, d, g, h } = co;
    vec![d + a, h + c, &(b * g) + &(a * c), &a.square() + &(b * c), &c.square() - &(a * g)]
}

/// `(d + a, h + c, c(a+2) + bg, g(2a-1) - 2c², 2bc + (a+1)(2a+1))`.
pub fn residuals_aff(co: &Coeff2d) -> Vec<Scalar> {
    let Coeff2d { a, b, c, d, g, h } = co;
    let one = Scalar::one();
    let two = Scalar::int(2);
    vec![
        d + a,
        h + c,
        &(c * &(a + &two)) + &(b * g),
        &(g * &(&(&two * a) - &one)) - &(&two * &c.square()),
        &(&two * &(b * c)) + &(&(a + &one) * &(&(&two * a) + &one)),
    ]
}

pub fn residuals(alg: Algebra2, co: &Coeff2d) -> Vec<Scalar> {
    match alg {
        Algebra2::R2 => residuals_r2(co),
        Algebra2::Aff => residuals_aff(co),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family")]
pub enum FamilyTag {
    R2Zero,
    /// `∇_{e1}e1 = α e2`.
    R2A { alpha: Scalar },
    /// `∇_{e2}e2 = α e1`.
    R2B { alpha: Scalar },
    /// `∇_{e1}e1 = αe1 + βe2`, `∇_{e1}e2 = -(α²/β)e1 - αe2`, `∇_{e2}e2 = (α²/β²)(αe1 + βe2)`.
    R2C { alpha: Scalar, beta: Scalar },
    /// `∇_{e1}e1 = -e1 + αe2`, `∇_{e1}e2 = e2`.
    AffA { alpha: Scalar },
    /// `∇_{e1}e1 = -½e1 + αe2`, `∇_{e1}e2 = ½e2`, `∇_{e2}e1 = -½e2`.
    AffB { alpha: Scalar },
}

impl FamilyTag {
    pub fn algebra(&self) -> Algebra2 {
        match self {
            FamilyTag::AffA { .. } | FamilyTag::AffB { .. } => Algebra2::Aff,
            _ => Algebra2::R2,
        }
    }

    pub fn coefficients(&self) -> Result<Coeff2d> {
        let z = Scalar::zero;
        let nonzero = |x: &Scalar, what: &str| {
            if x.is_zero() {
                Err(Error::InvalidArgument(format!("{what} must be nonzero")))
            } else {
                Ok(())
            }
        };
        Ok(match self {
            FamilyTag::R2Zero => Coeff2d::zero(),
            FamilyTag::R2A { alpha } => {
                nonzero(alpha, "alpha")?;
                Coeff2d { b: alpha.clone(), ..Coeff2d::zero() }
            }
            FamilyTag::R2B { alpha } => {
                nonzero(alpha, "alpha")?;
                Coeff2d { g: alpha.clone(), ..Coeff2d::zero() }
            }
            FamilyTag::R2C { alpha, beta } => {
                nonzero(alpha, "alpha")?;
                nonzero(beta, "beta")?;
                let r = &alpha.square() / beta;
                Coeff2d {
                    a: alpha.clone(),
                    b: beta.clone(),
                    c: -&r,
                    d: -alpha,
                    g: &(&r * alpha) / beta,
                    h: r,
                }
            }
            FamilyTag::AffA { alpha } => Coeff2d { a: Scalar::int(-1), b: alpha.clone(), c: z(), d: Scalar::one(), g: z(), h: z() },
            FamilyTag::AffB { alpha } => {
                Coeff2d { a: Scalar::frac(-1, 2), b: alpha.clone(), c: z(), d: Scalar::frac(1, 2), g: z(), h: z() }
            }
        })
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::R2Zero => write!(f, "R2 zero"),
            FamilyTag::R2A { alpha } => write!(f, "R2 (a) alpha={alpha}"),
            FamilyTag::R2B { alpha } => write!(f, "R2 (b) alpha={alpha}"),
            FamilyTag::R2C { alpha, beta } => write!(f, "R2 (c) alpha={alpha} beta={beta}"),
            FamilyTag::AffA { alpha } => write!(f, "aff (a) alpha={alpha}"),
            FamilyTag::AffB { alpha } => write!(f, "aff (b) alpha={alpha}"),
        }
    }
}

/// Family connection with `ω = e¹∧e²`, re-verified to be flat, torsion-free and parallel.
pub fn make_family(tag: &FamilyTag) -> Result<(Connection, BilinearForm)> {
    let co = tag.coefficients()?;
    let conn = co.to_connection(tag.algebra());
    let omega = BilinearForm::wedge(2, 0, 1);
    if !(conn.is_torsion_free() && conn.is_flat() && conn.parallel_form_check(&omega)) {
        return Err(Error::Invariant(format!("{tag} does not give a flat symplectic connection")));
    }
    Ok((conn, omega))
}

/// Decision tree: on `ℝ²` split on `a = 0`; on `aff(ℝ)` the value of `a` is `-1` or `-½`.
pub fn classify(alg: Algebra2, co: &Coeff2d) -> Result<FamilyTag> {
    let res = residuals(alg, co);
    if let Some(i) = res.iter().position(|r| !r.is_zero()) {
        return Err(Error::NotClassifiable(format!("residual {i} is {} for {co}", res[i])));
    }
    let tag = match alg {
        Algebra2::R2 if co.a.is_zero() => match (co.b.is_zero(), co.g.is_zero()) {
            (true, true) => FamilyTag::R2Zero,
            (false, true) => FamilyTag::R2A { alpha: co.b.clone() },
            (true, false) => FamilyTag::R2B { alpha: co.g.clone() },
            (false, false) => return Err(Error::NotClassifiable("b and g both nonzero".into())),
        },
        Algebra2::R2 => FamilyTag::R2C { alpha: co.a.clone(), beta: co.b.clone() },
        Algebra2::Aff if co.a == Scalar::int(-1) => FamilyTag::AffA { alpha: co.b.clone() },
        Algebra2::Aff if co.a == Scalar::frac(-1, 2) => FamilyTag::AffB { alpha: co.b.clone() },
        Algebra2::Aff => return Err(Error::NotClassifiable(format!("a = {} on aff", co.a))),
    };
    if tag.coefficients()? != *co {
        return Err(Error::NotClassifiable(format!("{tag} does not reproduce {co}")));
    }
    Ok(tag)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CanonicalTarget {
    Nabla0,
    Nabla1,
    Nabla2,
}

impl CanonicalTarget {
    pub fn tag(self) -> FamilyTag {
        match self {
            CanonicalTarget::Nabla0 => FamilyTag::R2A { alpha: Scalar::one() },
            CanonicalTarget::Nabla1 => FamilyTag::AffA { alpha: Scalar::zero() },
            CanonicalTarget::Nabla2 => FamilyTag::AffB { alpha: Scalar::zero() },
        }
    }

    pub fn connection(self) -> Connection {
        make_family(&self.tag()).expect("canonical").0
    }
}

impl fmt::Display for CanonicalTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CanonicalTarget::Nabla0 => "nabla0",
            CanonicalTarget::Nabla1 => "nabla1",
            CanonicalTarget::Nabla2 => "nabla2",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Exact(Matrix),
    /// Irrational cube roots; checked to `1e-12`.
    Approx(Vec<Vec<f64>>),
}

impl Witness {
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        match self {
            Witness::Exact(m) => m.to_f64(),
            Witness::Approx(m) => m.clone(),
        }
    }
}

/// `ξ` with `ξ ∇_x y = ∇⁽ᵏ⁾_{ξx} ξy` and `ω(x,y) = ω(ξx, ξy)`, checked before returning.
pub fn canonical_witness(tag: &FamilyTag) -> Result<(Witness, CanonicalTarget)> {
    let (conn, omega) = make_family(tag)?;
    let (w, target) = match tag {
        FamilyTag::R2Zero => return Err(Error::InvalidArgument("the zero connection has no canonical target".into())),
        FamilyTag::R2A { alpha } => (r2_witness(alpha, None, false), CanonicalTarget::Nabla0),
        FamilyTag::R2B { alpha } => (r2_witness(alpha, None, true), CanonicalTarget::Nabla0),
        FamilyTag::R2C { alpha, beta } => (r2_witness(alpha, Some(beta), false), CanonicalTarget::Nabla0),
        FamilyTag::AffA { alpha } => (Witness::Exact(shear(&(alpha * &Scalar::frac(1, 2)))), CanonicalTarget::Nabla1),
        FamilyTag::AffB { alpha } => (Witness::Exact(shear(&(alpha * &Scalar::int(2)))), CanonicalTarget::Nabla2),
    };
    let tconn = target.connection();
    let ok = match &w {
        Witness::Exact(m) => verify_symplectic_equivalence(m, (&conn, &omega), (&tconn, &omega))?,
        Witness::Approx(m) => verify_symplectic_equivalence_f64(m, (&conn, &omega), (&tconn, &omega), 1e-12),
    };
    if !ok {
        return Err(Error::Invariant(format!("witness for {tag} failed verification")));
    }
    Ok((w, target))
}

fn shear(k: &Scalar) -> Matrix {
    Matrix::from_rows(vec![vec![Scalar::one(), Scalar::zero()], vec![k.clone(), Scalar::one()]])
}

// (a): diag(α^⅓, α^-⅓); (b): [[0, -α^⅓], [α^-⅓, 0]]; (c): [[β^⅓, -αβ^-⅔], [0, β^-⅓]].
fn r2_witness(alpha: &Scalar, beta: Option<&Scalar>, swap: bool) -> Witness {
    let root = beta.unwrap_or(alpha);
    if let Some(r) = root.cube_root() {
        let ri = r.recip().expect("nonzero");
        let z = Scalar::zero();
        let rows = match (beta, swap) {
            (Some(_), _) => vec![vec![r.clone(), -&(alpha * &ri.square())], vec![z, ri]],
            (None, true) => vec![vec![z, -&r], vec![ri, Scalar::zero()]],
            (None, false) => vec![vec![r, z.clone()], vec![z, ri]],
        };
        return Witness::Exact(Matrix::from_rows(rows));
    }
    let r = root.to_f64().cbrt();
    let a = alpha.to_f64();
    Witness::Approx(match (beta, swap) {
        (Some(_), _) => vec![vec![r, -a / (r * r)], vec![0.0, 1.0 / r]],
        (None, true) => vec![vec![0.0, -r], vec![1.0 / r, 0.0]],
        (None, false) => vec![vec![r, 0.0], vec![0.0, 1.0 / r]],
    })
}

/// Distinct rationals `p/q` with `|p| ≤ n`, `1 ≤ q ≤ d`, sorted.
pub fn rational_grid(n: i64, d: i64) -> Vec<Scalar> {
    let mut v: Vec<Scalar> = (1..=d).flat_map(|q| (-n..=n).map(move |p| Scalar::frac(p, q))).collect();
    v.sort();
    v.dedup();
    v
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GridScan {
    pub points: usize,
    pub solutions: usize,
    /// Solutions where `classify` failed or `make_family` did not reproduce the input.
    pub failures: Vec<Coeff2d>,
}

/// Scans `(a, b, c, g)` over `grid` with the parallelism constraints `d = -a`, `h = -c` imposed;
/// every zero-residual point must classify and round-trip.
pub fn scan_grid(alg: Algebra2, grid: &[Scalar]) -> GridScan {
    let m = grid.len();
    let results: Vec<(usize, Vec<Coeff2d>)> = (0..m * m)
        .into_par_iter()
        .map(|ab| {
            let (a, b) = (&grid[ab / m], &grid[ab % m]);
            let mut sols = 0;
            let mut bad = Vec::new();
            for c in grid {
                for g in grid {
                    let co = Coeff2d { a: a.clone(), b: b.clone(), c: c.clone(), d: -a, g: g.clone(), h: -c };
                    if residuals(alg, &co).iter().all(Scalar::is_zero) {
                        sols += 1;
                        let ok = classify(alg, &co).and_then(|t| t.coefficients()).is_ok_and(|back| back == co);
                        if !ok {
                            bad.push(co);
                        }
                    }
                }
            }
            (sols, bad)
        })
        .collect();
    let mut out = GridScan { points: m.pow(4), ..GridScan::default() };
    for (s, b) in results {
        out.solutions += s;
        out.failures.extend(b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, q};

    fn co(v: [i64; 6]) -> Coeff2d {
        Coeff2d::from_ints(v)
    }

    fn zeros(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    #[test]
    fn residual_examples() {
        assert!(zeros(&residuals_r2(&co([0, 3, 0, 0, 0, 0]))));
        assert!(zeros(&residuals_r2(&Coeff2d::zero())));
        let r = residuals_r2(&co([1, 1, 0, -1, 0, 0]));
        assert_eq!(r[3], int(1));
        assert!(zeros(&residuals_aff(&co([-1, 5, 0, 1, 0, 0]))));
        let b = Coeff2d { a: q(-1, 2), d: q(1, 2), ..Coeff2d::zero() };
        assert!(zeros(&residuals_aff(&b)));
        let bad = Coeff2d { a: q(1, 2), d: q(-1, 2), g: int(1), ..Coeff2d::zero() };
        assert_eq!(residuals_aff(&bad)[4], int(3));
    }

    #[test]
    fn family_examples() {
        let (c, _) = make_family(&FamilyTag::R2C { alpha: int(1), beta: int(1) }).unwrap();
        assert_eq!(c.on_basis(0, 0), &Vector::from_ints(&[1, 1]));
        assert_eq!(c.on_basis(0, 1), &Vector::from_ints(&[-1, -1]));
        assert_eq!(c.on_basis(1, 1), &Vector::from_ints(&[1, 1]));
        let (c, _) = make_family(&FamilyTag::R2A { alpha: int(1) }).unwrap();
        assert_eq!(c, CanonicalTarget::Nabla0.connection());
        let (c, _) = make_family(&FamilyTag::AffB { alpha: int(2) }).unwrap();
        assert_eq!(c.on_basis(0, 0), &Vector(vec![q(-1, 2), int(2)]));
        assert_eq!(c.on_basis(1, 0), &Vector(vec![int(0), q(-1, 2)]));
        assert!(make_family(&FamilyTag::R2A { alpha: int(0) }).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(Algebra2::R2, &co([0, 0, 0, 0, 7, 0])).unwrap(), FamilyTag::R2B { alpha: int(7) });
        assert_eq!(classify(Algebra2::R2, &Coeff2d::zero()).unwrap(), FamilyTag::R2Zero);
        assert_eq!(
            classify(Algebra2::R2, &co([1, 1, -1, -1, 1, 1])).unwrap(),
            FamilyTag::R2C { alpha: int(1), beta: int(1) }
        );
        assert!(matches!(classify(Algebra2::R2, &co([1, 1, 0, -1, 0, 0])), Err(Error::NotClassifiable(_))));
    }

    #[test]
    fn witness_examples() {
        let (w, t) = canonical_witness(&FamilyTag::R2A { alpha: int(8) }).unwrap();
        assert_eq!(w, Witness::Exact(Matrix::diag(&[int(2), q(1, 2)])));
        assert_eq!(t, CanonicalTarget::Nabla0);
        let (w, t) = canonical_witness(&FamilyTag::AffA { alpha: int(0) }).unwrap();
        assert_eq!((w, t), (Witness::Exact(Matrix::identity(2)), CanonicalTarget::Nabla1));
        let (w, _) = canonical_witness(&FamilyTag::R2C { alpha: int(1), beta: int(8) }).unwrap();
        let expect = Matrix::from_rows(vec![vec![int(2), q(-1, 4)], vec![int(0), q(1, 2)]]);
        assert_eq!(w, Witness::Exact(expect));
        assert!(matches!(canonical_witness(&FamilyTag::R2B { alpha: int(2) }).unwrap().0, Witness::Approx(_)));
        assert!(canonical_witness(&FamilyTag::AffB { alpha: q(-3, 5) }).is_ok());
        assert!(canonical_witness(&FamilyTag::R2Zero).is_err());
    }

    #[test]
    fn annihilator_separates_aff_targets() {
        assert_eq!(CanonicalTarget::Nabla1.connection().parallel_annihilator_dim(), 1);
        assert_eq!(CanonicalTarget::Nabla2.connection().parallel_annihilator_dim(), 0);
    }

    #[test]
    fn full_six_dimensional_scan_small() {
        // No parallelism constraint imposed: residuals decide everything.
        let grid = rational_grid(2, 1);
        for alg in [Algebra2::R2, Algebra2::Aff] {
            let mut hits = 0;
            for a in &grid {
                for b in &grid {
                    for c in &grid {
                        for d in &grid {
                            for g in &grid {
                                for h in &grid {
                                    let x = Coeff2d { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone(), g: g.clone(), h: h.clone() };
                                    let zero_res = zeros(&residuals(alg, &x));
                                    let conn = x.to_connection(alg);
                                    let direct = conn.is_flat() && conn.parallel_form_check(&BilinearForm::wedge(2, 0, 1));
                                    assert_eq!(zero_res, direct, "{x}");
                                    if zero_res {
                                        hits += 1;
                                        assert_eq!(classify(alg, &x).unwrap().coefficients().unwrap(), x);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            assert!(hits > 0);
        }
    }

    #[test]
    fn from_connection_roundtrip() {
        let x = co([1, 1, -1, -1, 1, 1]);
        let (alg, back) = Coeff2d::from_connection(&x.to_connection(Algebra2::R2)).unwrap();
        assert_eq!((alg, back), (Algebra2::R2, x));
        let bad = Connection::zero(named_algebra("aff").unwrap());
        assert!(Coeff2d::from_connection(&bad).is_err());
    }
}
