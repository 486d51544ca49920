//! The four-dimensional catalog: canonical complex product structures, their metrics,
//! curvature, coordinate expressions, completeness evidence and the fourteen
//! bicrossproduct constructions that produce them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bicrossproduct::{build_bicrossproduct, BicrossResult, Factor, MatchedPairSpec};
use crate::classify2d::{classify, Algebra2, CanonicalTarget, Coeff2d};
use crate::connection::geodesic::{geodesic_probe, ProbeConfig};
use crate::connection::{levi_civita, Connection};
use crate::core_tensor::{Angle, BilinearForm, HalfAngle, Matrix, Vector};
use crate::cps::{compatible_metric_space, split, CPStructure, Splitting};
use crate::error::{Error, Result};
use crate::hypersymplectic::{equivalence_scale, factor_algebra, proportionality, HSStructure};
use crate::liealg::{named_algebra, verify_basis_change, LieAlgebra, Subspace};
use crate::scalar::Scalar;

/// Angle parameter: exact half angle where rational, otherwise exact full angle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Theta {
    Half(HalfAngle),
    Full(Angle),
}

impl Theta {
    pub fn zero() -> Self {
        Theta::Half(HalfAngle::new(Scalar::one(), Scalar::zero()).expect("unit"))
    }

    pub fn pi() -> Self {
        Theta::Half(HalfAngle::new(Scalar::zero(), Scalar::one()).expect("unit"))
    }

    pub fn half(c: Scalar, s: Scalar) -> Result<Self> {
        Ok(Theta::Half(HalfAngle::new(c, s)?))
    }

    /// `(cos θ, sin θ)`.
    pub fn trig(&self) -> (Scalar, Scalar) {
        match self {
            Theta::Half(h) => crate::core_tensor::halfangle_trig(h),
            Theta::Full(a) => (a.cos.clone(), a.sin.clone()),
        }
    }

    pub fn half_angle(&self) -> Option<&HalfAngle> {
        match self {
            Theta::Half(h) => Some(h),
            Theta::Full(_) => None,
        }
    }

    /// `(cos θ/2, sin θ/2)` in floating point.
    pub fn half_f64(&self) -> (f64, f64) {
        match self {
            Theta::Half(h) => (h.c().to_f64(), h.s().to_f64()),
            Theta::Full(a) => a.half_f64(),
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Half(h) => write!(f, "(c,s)=({},{})", h.c(), h.s()),
            Theta::Full(a) => write!(f, "(cos,sin)=({},{})", a.cos, a.sin),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalCps {
    R4,
    G0 { theta: Theta },
    G1 { theta: Theta, d: bool },
    G1One,
    G2 { theta: Theta, d: bool },
    G2One,
}

impl CanonicalCps {
    pub fn algebra_name(&self) -> &'static str {
        match self {
            CanonicalCps::R4 => "R4",
            CanonicalCps::G0 { .. } => "g0h",
            CanonicalCps::G1 { .. } | CanonicalCps::G1One => "g1h",
            CanonicalCps::G2 { .. } | CanonicalCps::G2One => "g2h",
        }
    }

    pub fn algebra(&self) -> LieAlgebra {
        named_algebra(self.algebra_name()).expect("named")
    }

    pub fn theta(&self) -> Option<&Theta> {
        match self {
            CanonicalCps::G0 { theta } | CanonicalCps::G1 { theta, .. } | CanonicalCps::G2 { theta, .. } => Some(theta),
            _ => None,
        }
    }

    pub fn group(&self) -> Group {
        match self.algebra_name() {
            "R4" => Group::R4,
            "g0h" => Group::G0h,
            "g1h" => Group::G1h,
            _ => Group::G2h,
        }
    }
}

impl fmt::Display for CanonicalCps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = |b: &bool| u8::from(*b);
        match self {
            CanonicalCps::R4 => write!(f, "R4 canonical"),
            CanonicalCps::G0 { theta } => write!(f, "g0h E0 {theta}"),
            CanonicalCps::G1 { theta, d: dd } => write!(f, "g1h E1 {theta} d={}", d(dd)),
            CanonicalCps::G1One => write!(f, "g1h E1_1"),
            CanonicalCps::G2 { theta, d: dd } => write!(f, "g2h E2 {theta} d={}", d(dd)),
            CanonicalCps::G2One => write!(f, "g2h E2_1"),
        }
    }
}

fn mat(rows: Vec<Vec<Scalar>>) -> Matrix {
    Matrix::from_rows(rows)
}

fn ints(rows: &[&[i64]]) -> Matrix {
    Matrix::from_int_rows(rows)
}

/// `P M Pᵀ` for a matrix given in a permuted basis order.
fn from_listed_order(m: &Matrix, perm: &[usize]) -> Matrix {
    let p = Matrix::permutation(perm);
    &(&p * m) * &p.transpose()
}

// Listed orders: g0h as (v1, v2, v3, v0), g2h as (v0, v2, v1, v3).
const G0_ORDER: [usize; 4] = [1, 2, 3, 0];
const G2_ORDER: [usize; 4] = [0, 2, 1, 3];

/// The canonical `{J, E}` in label order `v0..v3` (or `e1..e4` on `ℝ⁴`).
pub fn canonical_cps(spec: &CanonicalCps) -> Result<CPStructure> {
    let z = Scalar::zero;
    let one = Scalar::one;
    let (j, e) = match spec {
        CanonicalCps::R4 => (
            ints(&[&[0, 0, -1, 0], &[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0]]),
            ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]),
        ),
        CanonicalCps::G0 { theta } => {
            let (co, si) = theta.trig();
            let j = ints(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
            let e = mat(vec![
                vec![one(), z(), z(), z()],
                vec![z(), -one(), z(), z()],
                vec![z(), z(), co.clone(), si.clone()],
                vec![z(), z(), si, -co],
            ]);
            (from_listed_order(&j, &G0_ORDER), from_listed_order(&e, &G0_ORDER))
        }
        CanonicalCps::G1 { theta, d } => {
            let (co, si) = theta.trig();
            let dd = if *d { one() } else { z() };
            let opc = &one() + &co;
            let e = mat(vec![
                vec![co.clone(), si.clone(), z(), z()],
                vec![si.clone(), -&co, z(), z()],
                vec![-&(&dd * &si), &dd * &opc, one(), z()],
                vec![&dd * &opc, &dd * &si, z(), -one()],
            ]);
            (j1(), e)
        }
        CanonicalCps::G1One => (j1(), ints(&[&[-1, 0, 0, 0], &[0, 1, 0, 0], &[-2, 0, 1, 0], &[0, 2, 0, -1]])),
        CanonicalCps::G2 { theta, d } => {
            let (co, si) = theta.trig();
            let dd = if *d { one() } else { z() };
            let opc = &one() + &co;
            let ds = &(&dd * &si) * &opc;
            let dc = &(&dd * &co) * &opc;
            let e = mat(vec![
                vec![co.clone(), si.clone(), z(), z()],
                vec![si.clone(), -&co, z(), z()],
                vec![ds.clone(), -&dc, co.clone(), -&si],
                vec![dc, ds, -&si, -&co],
            ]);
            (j2(), from_listed_order(&e, &G2_ORDER))
        }
        CanonicalCps::G2One => {
            let e = ints(&[&[-1, 0, 0, 0], &[0, 1, 0, 0], &[0, 2, -1, 0], &[-2, 0, 0, 1]]);
            (j2(), from_listed_order(&e, &G2_ORDER))
        }
    };
    CPStructure::new(spec.algebra(), j, e)
}

fn j1() -> Matrix {
    ints(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]])
}

fn j2() -> Matrix {
    from_listed_order(&ints(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]), &G2_ORDER)
}

/// `{U, Ũ, V, Ṽ}` with `U, Ũ` spanning `g₊` and `V = JU`, `Ṽ = JŨ`; needs a half angle.
pub fn adapted_basis(spec: &CanonicalCps) -> Option<[Vector; 4]> {
    let v = |xs: [Scalar; 4]| Vector(xs.to_vec());
    let i = |xs: [i64; 4]| Vector::from_ints(&xs);
    let z = Scalar::zero;
    let half = |t: &Theta| t.half_angle().map(|h| (h.c().clone(), h.s().clone()));
    Some(match spec {
        CanonicalCps::R4 => [i([1, 0, 0, 0]), i([0, 1, 0, 0]), i([0, 0, 1, 0]), i([0, 0, 0, 1])],
        CanonicalCps::G0 { theta } => {
            let (c, s) = half(theta)?;
            [v([s.clone(), z(), z(), c.clone()]), i([0, 1, 0, 0]), v([c, z(), z(), -s]), i([0, 0, 1, 0])]
        }
        CanonicalCps::G1 { theta, d } => {
            let (c, s) = half(theta)?;
            let dc = if *d { c.clone() } else { z() };
            [v([c.clone(), s.clone(), z(), dc.clone()]), i([0, 0, 1, 0]), v([-&s, c, -dc, z()]), i([0, 0, 0, 1])]
        }
        CanonicalCps::G1One => [i([0, 1, 0, 1]), i([0, 0, 1, 0]), i([-1, 0, -1, 0]), i([0, 0, 0, 1])],
        CanonicalCps::G2 { theta, d } => {
            let (c, s) = half(theta)?;
            let dc = if *d { c.clone() } else { z() };
            [
                v([c.clone(), z(), s.clone(), dc.clone()]),
                v([z(), c.clone(), z(), -&s]),
                v([s.clone(), -&dc, -&c, z()]),
                v([z(), s, z(), c]),
            ]
        }
        CanonicalCps::G2One => [i([0, 1, 1, 0]), i([0, 0, 0, 1]), i([1, 0, 0, 1]), i([0, -1, 0, 0])],
    })
}

/// `g₊ = span{U, Ũ}`, `g₋ = span{V, Ṽ}`.
pub fn eigenspace_display(spec: &CanonicalCps) -> Option<Splitting> {
    let [u, u2, v, v2] = adapted_basis(spec)?;
    Some(Splitting { plus: Subspace::new(4, vec![u, u2]).ok()?, minus: Subspace::new(4, vec![v, v2]).ok()? })
}

/// Gram matrix of the metric in the adapted basis.
pub fn adapted_gram() -> Matrix {
    ints(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]])
}

/// The metric with the antidiagonal Gram in the adapted basis; for full-angle
/// parameters, the generator of the compatible space.
pub fn canonical_metric(spec: &CanonicalCps) -> Result<HSStructure> {
    let cp = canonical_cps(spec)?;
    let space = compatible_metric_space(&cp);
    if space.len() != 1 {
        return Err(Error::Invariant(format!("compatible metric space of {spec} has dimension {}", space.len())));
    }
    let g = match adapted_basis(spec) {
        Some(b) => {
            let binv = Matrix::from_cols(&b).inverse()?;
            let g = BilinearForm::symmetric(&(&binv.transpose() * &adapted_gram()) * &binv)?;
            if proportionality(space[0].matrix(), g.matrix()).is_none() {
                return Err(Error::Invariant(format!("adapted metric of {spec} is not compatible")));
            }
            g
        }
        None => space[0].clone(),
    };
    HSStructure::new(cp, g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvatureProfile {
    pub flat: bool,
    /// Entry `(2,1)` (1-based) of `R(U, V)` in the adapted basis.
    pub distinguished_entry: Scalar,
    /// Entry `(4,3)` of the same matrix.
    pub mirror_entry: Scalar,
    /// Every other entry of `R(U,V)` and every other `R(bᵢ, bⱼ)` vanish.
    pub rest_zero: bool,
}

pub fn curvature_profile(spec: &CanonicalCps) -> Result<CurvatureProfile> {
    let b = adapted_basis(spec).ok_or_else(|| Error::InvalidArgument("curvature profile needs a half angle".into()))?;
    let hs = canonical_metric(spec)?;
    let lc = levi_civita(hs.algebra(), hs.g())?;
    let bm = Matrix::from_cols(&b);
    let binv = bm.inverse()?;
    let in_adapted = |x: &Vector, y: &Vector| &(&binv * &lc.curvature(x, y)) * &bm;
    let r = in_adapted(&b[0], &b[2]);
    let mut rest_zero = r.entries().all(|(i, j, x)| x.is_zero() || (i, j) == (1, 0) || (i, j) == (3, 2));
    for i in 0..4 {
        for j in i + 1..4 {
            if (i, j) != (0, 2) && !in_adapted(&b[i], &b[j]).is_zero() {
                rest_zero = false;
            }
        }
    }
    Ok(CurvatureProfile { flat: lc.is_flat(), distinguished_entry: r[(1, 0)].clone(), mirror_entry: r[(3, 2)].clone(), rest_zero })
}

// ---------------------------------------------------------------------------
// Coordinates

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Group {
    R4,
    G0h,
    G1h,
    G2h,
}

impl Group {
    pub fn algebra_name(self) -> &'static str {
        match self {
            Group::R4 => "R4",
            Group::G0h => "g0h",
            Group::G1h => "g1h",
            Group::G2h => "g2h",
        }
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R4" => Ok(Group::R4),
            "g0h" | "h3R" => Ok(Group::G0h),
            "g1h" => Ok(Group::G1h),
            "g2h" => Ok(Group::G2h),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mono {
    One,
    X,
    Y,
}

/// `coeff · e^{k t} · m` with `m ∈ {1, x, y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub exp_t: i64,
    pub mono: Mono,
}

impl Term {
    fn new(coeff: Scalar, exp_t: i64, mono: Mono) -> Self {
        Term { coeff, exp_t, mono }
    }

    pub fn eval(&self, p: [f64; 4]) -> f64 {
        let m = match self.mono {
            Mono::One => 1.0,
            Mono::X => p[1],
            Mono::Y => p[2],
        };
        self.coeff.to_f64() * (self.exp_t as f64 * p[0]).exp() * m
    }

    /// `∂/∂(t, x, y, z)[k]`.
    fn partial(&self, k: usize) -> Option<Term> {
        match (k, self.mono) {
            (0, _) if self.exp_t != 0 => Some(Term::new(&self.coeff * &Scalar::int(self.exp_t), self.exp_t, self.mono)),
            (1, Mono::X) | (2, Mono::Y) => Some(Term::new(self.coeff.clone(), self.exp_t, Mono::One)),
            _ => None,
        }
    }
}

/// Left-invariant coframe `vⁱ = Σₖ fᵢₖ dxᵏ` in coordinates `(t, x, y, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coframe {
    pub group: Group,
    pub rows: Vec<Vec<Vec<Term>>>,
}

impl Coframe {
    pub fn at(&self, p: [f64; 4]) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in self.rows.iter().enumerate() {
            for (k, terms) in row.iter().enumerate() {
                out[i][k] = terms.iter().map(|t| t.eval(p)).sum();
            }
        }
        out
    }

    /// `dvⁱ` as antisymmetric coordinate matrices.
    fn exterior_derivative(&self, p: [f64; 4]) -> Vec<[[f64; 4]; 4]> {
        self.rows
            .iter()
            .map(|row| {
                let mut m = [[0.0; 4]; 4];
                for (k, terms) in row.iter().enumerate() {
                    for l in 0..4 {
                        let d: f64 = terms.iter().filter_map(|t| t.partial(l)).map(|t| t.eval(p)).sum();
                        m[l][k] += d;
                        m[k][l] -= d;
                    }
                }
                m
            })
            .collect()
    }

    /// `max |dvⁱ + Σ_{j<k} cⁱⱼₖ vʲ∧vᵏ|` at `p`; zero for a left-invariant coframe of the group.
    pub fn maurer_cartan_defect(&self, p: [f64; 4]) -> f64 {
        let l = named_algebra(self.group.algebra_name()).expect("named");
        let th = self.at(p);
        let dv = self.exterior_derivative(p);
        let mut worst = 0.0f64;
        for (i, dvi) in dv.iter().enumerate() {
            let mut rhs = [[0.0; 4]; 4];
            for j in 0..4 {
                for k in j + 1..4 {
                    let c = l.structure_constant(j, k, i).to_f64();
                    if c == 0.0 {
                        continue;
                    }
                    for a in 0..4 {
                        for b in 0..4 {
                            rhs[a][b] -= c * (th[j][a] * th[k][b] - th[j][b] * th[k][a]);
                        }
                    }
                }
            }
            for a in 0..4 {
                for b in 0..4 {
                    worst = worst.max((dvi[a][b] - rhs[a][b]).abs());
                }
            }
        }
        worst
    }
}

pub fn coframe(group: Group) -> Coframe {
    let c = |n: i64| vec![Term::new(Scalar::int(n), 0, Mono::One)];
    let q = |p: i64, d: i64| vec![Term::new(Scalar::frac(p, d), 0, Mono::One)];
    let ex = |k: i64| vec![Term::new(Scalar::one(), k, Mono::One)];
    let zero = Vec::new;
    let rows = match group {
        // Constant coframe in which the adapted Gram becomes dt² + dx² - dy² - dz².
        Group::R4 => vec![
            vec![c(-1), zero(), zero(), c(1)],
            vec![zero(), c(1), c(-1), zero()],
            vec![zero(), q(1, 2), q(1, 2), zero()],
            vec![q(1, 2), zero(), zero(), q(1, 2)],
        ],
        Group::G0h => vec![
            vec![c(1), zero(), zero(), zero()],
            vec![zero(), c(1), zero(), zero()],
            vec![zero(), zero(), c(1), zero()],
            vec![zero(), zero(), vec![Term::new(Scalar::int(-1), 0, Mono::X)], c(1)],
        ],
        Group::G1h => vec![
            vec![c(1), zero(), zero(), zero()],
            vec![zero(), ex(-1), zero(), zero()],
            vec![zero(), zero(), ex(1), zero()],
            vec![zero(), zero(), zero(), ex(1)],
        ],
        Group::G2h => vec![
            vec![c(1), zero(), zero(), zero()],
            vec![zero(), ex(-2), zero(), zero()],
            vec![zero(), zero(), ex(1), zero()],
            vec![
                zero(),
                vec![Term::new(Scalar::frac(1, 2), -1, Mono::Y)],
                vec![Term::new(Scalar::frac(-1, 2), -1, Mono::X)],
                ex(-1),
            ],
        ],
    };
    Coframe { group, rows }
}

pub type Mat4 = [[f64; 4]; 4];

/// `Θᵀ G Θ` at a point.
pub fn metric_at_point(hs: &HSStructure, group: Group, p: [f64; 4]) -> Result<Mat4> {
    if p.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("point must be finite".into()));
    }
    let th = coframe(group).at(p);
    let g = hs.g().matrix().to_f64();
    let mut out = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let mut s = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    s += th[i][a] * g[i][j] * th[j][b];
                }
            }
            out[a][b] = s;
        }
    }
    Ok(out)
}

/// Closed-form coordinate metrics, transcribed term by term.
/// A mixed product `dα dβ` is `dα⊗dβ + dβ⊗dα` and a square `dα²` is `dα⊗dα`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoordinateFormula {
    /// `dt² + dx² - dy² - dz²`.
    Neutral,
    G0Theta { c: f64, s: f64 },
    G1Theta0 { c: f64, s: f64 },
    G1Theta1 { c: f64, s: f64 },
    G1One,
    /// Independent of the angle.
    G2Theta0,
    G2Theta1 { c: f64 },
    G2One,
    /// `e^t dt dz + e^{2t} dz² - dx dy + e^{2t} dy²`.
    Headline3,
}

impl CoordinateFormula {
    pub fn for_catalog(spec: &CanonicalCps) -> Self {
        let (c, s) = spec.theta().map(Theta::half_f64).unwrap_or((1.0, 0.0));
        match spec {
            CanonicalCps::R4 => CoordinateFormula::Neutral,
            CanonicalCps::G0 { .. } => CoordinateFormula::G0Theta { c, s },
            CanonicalCps::G1 { d: false, .. } => CoordinateFormula::G1Theta0 { c, s },
            CanonicalCps::G1 { d: true, .. } => CoordinateFormula::G1Theta1 { c, s },
            CanonicalCps::G1One => CoordinateFormula::G1One,
            CanonicalCps::G2 { d: false, .. } => CoordinateFormula::G2Theta0,
            CanonicalCps::G2 { d: true, .. } => CoordinateFormula::G2Theta1 { c },
            CanonicalCps::G2One => CoordinateFormula::G2One,
        }
    }

    pub fn eval(&self, p: [f64; 4]) -> Mat4 {
        let [t, x, y, _] = p;
        let e = |k: f64| (k * t).exp();
        let basis = |i: usize| {
            let mut v = [0.0; 4];
            v[i] = 1.0;
            v
        };
        let (dt, dx, dy, dz) = (basis(0), basis(1), basis(2), basis(3));
        let w = [0.0, 0.5 * y, -0.5 * x, 1.0];
        let mut m = [[0.0; 4]; 4];
        let mut prod = |k: f64, a: [f64; 4], b: [f64; 4]| {
            for i in 0..4 {
                for j in 0..4 {
                    m[i][j] += k * (a[i] * b[j] + b[i] * a[j]);
                }
            }
        };
        // A square contributes once: half of the symmetric product with itself.
        match *self {
            CoordinateFormula::Neutral => {
                prod(0.5, dt, dt);
                prod(0.5, dx, dx);
                prod(-0.5, dy, dy);
                prod(-0.5, dz, dz);
            }
            CoordinateFormula::G0Theta { c, s } => {
                prod(-0.5 * c * x * x, dy, dy);
                prod(c * x, dy, dz);
                prod(-0.5 * c, dz, dz);
                prod(s * x, dt, dy);
                prod(-s, dt, dz);
                prod(s * x, dx, dy);
                prod(-s, dx, dz);
                prod(c, dt, dx);
            }
            CoordinateFormula::G1Theta0 { c, s } => {
                prod(-c * e(1.0), dt, dz);
                prod(-s, dx, dz);
                prod(-s * e(1.0), dt, dy);
                prod(c, dx, dy);
            }
            CoordinateFormula::G1Theta1 { c, s } => {
                prod(c * e(1.0), dt, dz);
                prod(s, dx, dz);
                prod(0.5 * c * e(2.0), dz, dz);
                prod(s * e(1.0), dt, dy);
                prod(-c, dx, dy);
                prod(0.5 * c * e(2.0), dy, dy);
            }
            CoordinateFormula::G1One => {
                prod(1.0, dx, dz);
                prod(0.5 * e(2.0), dz, dz);
                prod(e(1.0), dt, dy);
                prod(0.5 * e(2.0), dy, dy);
            }
            CoordinateFormula::G2Theta0 => {
                prod(e(-1.0), dt, w);
                prod(e(-1.0), dx, dy);
            }
            CoordinateFormula::G2Theta1 { c } => {
                prod(e(-1.0), dt, w);
                prod(e(-1.0), dx, dy);
                prod(0.5 * c * c * e(-4.0), dx, dx);
                prod(0.5 * c * c * e(-2.0), w, w);
            }
            CoordinateFormula::G2One => {
                prod(e(-1.0), dx, dy);
                prod(0.5 * e(-4.0), dx, dx);
                prod(e(-1.0), dt, w);
                prod(0.5 * e(-2.0), w, w);
            }
            CoordinateFormula::Headline3 => {
                prod(e(1.0), dt, dz);
                prod(0.5 * e(2.0), dz, dz);
                prod(-1.0, dx, dy);
                prod(0.5 * e(2.0), dy, dy);
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoordinateMatch {
    /// Homothety constant fixed at the first point, if the first evaluation allows one.
    pub lambda: Option<f64>,
    /// Largest `|formula - λ·computed|` relative to the formula's scale.
    pub max_residual: f64,
    pub ok: bool,
}

/// Compares `formula` with `λ · metric_at_point` at each point, `λ` fitted once.
pub fn coordinate_match(hs: &HSStructure, group: Group, formula: &CoordinateFormula, points: &[[f64; 4]], tol: f64) -> Result<CoordinateMatch> {
    let mut lambda = None;
    let mut worst = 0.0f64;
    for (n, p) in points.iter().enumerate() {
        let m = metric_at_point(hs, group, *p)?;
        let f = formula.eval(*p);
        if n == 0 {
            // Fit on the largest computed entry where the formula is also nonzero.
            lambda = (0..16)
                .map(|k| (k / 4, k % 4))
                .filter(|&(i, j)| m[i][j] != 0.0 && f[i][j] != 0.0)
                .max_by(|a, b| m[a.0][a.1].abs().total_cmp(&m[b.0][b.1].abs()))
                .map(|(i, j)| f[i][j] / m[i][j]);
        }
        let Some(l) = lambda.filter(|l| *l != 0.0) else {
            return Ok(CoordinateMatch { lambda, max_residual: f64::INFINITY, ok: false });
        };
        let scale = f.iter().flatten().fold(1.0f64, |a, x| a.max(x.abs()));
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((f[i][j] - l * m[i][j]).abs() / scale);
            }
        }
    }
    Ok(CoordinateMatch { lambda, max_residual: worst, ok: worst <= tol })
}

// ---------------------------------------------------------------------------
// Completeness

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompletenessEvidence {
    /// Earliest blow-up time over the probe starts, if any.
    pub probe_blow_up: Option<f64>,
    pub probe_horizon: f64,
    /// Eigenspace factors isomorphic to `aff(ℝ)`, with the classified canonical target.
    pub aff_factors: Vec<CanonicalTarget>,
}

impl CompletenessEvidence {
    pub fn probe_complete(&self) -> bool {
        self.probe_blow_up.is_none()
    }

    /// Exact incompleteness: some factor carries a flat symplectic connection on `aff(ℝ)`.
    pub fn structurally_incomplete(&self) -> bool {
        !self.aff_factors.is_empty()
    }
}

/// Probe starts: basis vectors, their negatives and the adapted basis, then a generic vector.
fn probe_starts(n: usize, extra: &[Vector]) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for sgn in [1.0, -1.0] {
            let mut v = vec![0.0; n];
            v[i] = sgn;
            out.push(v);
        }
    }
    for v in extra {
        let f = v.to_f64();
        out.push(f.iter().map(|x| -x).collect());
        out.push(f);
    }
    out.push((0..n).map(|i| 0.3 + 0.17 * i as f64).collect());
    out
}

pub fn completeness(hs: &HSStructure, extra_starts: &[Vector], horizon: f64) -> Result<CompletenessEvidence> {
    let lc = levi_civita(hs.algebra(), hs.g())?;
    let cfg = ProbeConfig::with_horizon(horizon);
    let mut first: Option<f64> = None;
    for x0 in probe_starts(hs.algebra().dim(), extra_starts) {
        let tr = geodesic_probe(&lc, &x0, &cfg)?;
        if let Some(t) = tr.verdict.blow_up_time() {
            first = Some(first.map_or(t, |f: f64| f.min(t)));
        }
    }
    Ok(CompletenessEvidence { probe_blow_up: first, probe_horizon: horizon, aff_factors: aff_factor_targets(hs.cp(), &lc)? })
}

/// Restricts `conn` to each eigenspace of `E`, recognizes `aff(ℝ)` factors and classifies them.
pub fn aff_factor_targets(cp: &CPStructure, conn: &Connection) -> Result<Vec<CanonicalTarget>> {
    let sp = split(cp)?;
    let mut out = Vec::new();
    for sub in [&sp.plus, &sp.minus] {
        if sub.dim() != 2 {
            continue;
        }
        let Some(basis) = aff_basis(cp.algebra(), sub.vectors()) else {
            continue;
        };
        let alg = factor_algebra(cp.algebra(), &basis, &["e1", "e2"])?;
        let Some(restricted) = conn.restrict(&basis, alg) else {
            continue;
        };
        let (kind, co) = Coeff2d::from_connection(&restricted)?;
        if kind != Algebra2::Aff {
            continue;
        }
        let tag = classify(kind, &co)?;
        out.push(crate::classify2d::canonical_witness(&tag)?.1);
    }
    Ok(out)
}

/// A basis `(e1, e2)` of a nonabelian 2-d subalgebra with `[e1, e2] = e2`.
fn aff_basis(l: &LieAlgebra, span: &[Vector]) -> Option<Vec<Vector>> {
    let w = l.bracket(&span[0], &span[1]);
    if w.is_zero() {
        return None;
    }
    let cs = crate::core_tensor::coords_in(span, &w)?;
    // [x, w] = (x₀ β - x₁ α) w for x = x₀ p₀ + x₁ p₁ and w = α p₀ + β p₁.
    let (alpha, beta) = (&cs[0], &cs[1]);
    let e1 = if !beta.is_zero() {
        span[0].scale(&beta.recip().ok()?)
    } else {
        span[1].scale(&-&alpha.recip().ok()?)
    };
    (l.bracket(&e1, &w) == w).then(|| vec![e1, w])
}

// ---------------------------------------------------------------------------
// Construction cases

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseId {
    A1,
    A2,
    A3,
    A4,
    B1,
    B2,
    B3,
    B4,
    B1p,
    B2p,
    B3p,
    B4p,
    C1,
    C3,
}

impl CaseId {
    pub const ALL: [CaseId; 14] = [
        CaseId::A1,
        CaseId::A2,
        CaseId::A3,
        CaseId::A4,
        CaseId::B1,
        CaseId::B2,
        CaseId::B3,
        CaseId::B4,
        CaseId::B1p,
        CaseId::B2p,
        CaseId::B3p,
        CaseId::B4p,
        CaseId::C1,
        CaseId::C3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::A1 => "A1",
            CaseId::A2 => "A2",
            CaseId::A3 => "A3",
            CaseId::A4 => "A4",
            CaseId::B1 => "B1",
            CaseId::B2 => "B2",
            CaseId::B3 => "B3",
            CaseId::B4 => "B4",
            CaseId::B1p => "B1'",
            CaseId::B2p => "B2'",
            CaseId::B3p => "B3'",
            CaseId::B4p => "B4'",
            CaseId::C1 => "C1",
            CaseId::C3 => "C3",
        }
    }

    /// Whether `φ = [[a, 0], [b, 1/a]]` is free; otherwise `φ = Id`.
    pub fn has_params(self) -> bool {
        matches!(self, CaseId::A4 | CaseId::B2 | CaseId::B4 | CaseId::B2p | CaseId::B4p | CaseId::C1 | CaseId::C3)
    }

    pub fn target(self) -> &'static str {
        match self {
            CaseId::A1 => "R4",
            CaseId::A2 | CaseId::A3 | CaseId::A4 => "g0h",
            CaseId::B1 | CaseId::B2 | CaseId::B1p | CaseId::B2p | CaseId::C1 => "g1h",
            _ => "g2h",
        }
    }

    fn factors(self) -> (Factor, Factor) {
        use CanonicalTarget::*;
        let zero = || Factor::new(Connection::zero(named_algebra("R2").expect("R2")), BilinearForm::wedge(2, 0, 1)).expect("2-d");
        let f = |t: CanonicalTarget| Factor::new(t.connection(), BilinearForm::wedge(2, 0, 1)).expect("2-d");
        match self {
            CaseId::A1 => (zero(), zero()),
            CaseId::A2 => (f(Nabla0), zero()),
            CaseId::A3 => (zero(), f(Nabla0)),
            CaseId::A4 => (f(Nabla0), f(Nabla0)),
            CaseId::B1 => (f(Nabla1), zero()),
            CaseId::B2 => (f(Nabla1), f(Nabla0)),
            CaseId::B3 => (f(Nabla2), zero()),
            CaseId::B4 => (f(Nabla2), f(Nabla0)),
            CaseId::B1p => (zero(), f(Nabla1)),
            CaseId::B2p => (f(Nabla0), f(Nabla1)),
            CaseId::B3p => (zero(), f(Nabla2)),
            CaseId::B4p => (f(Nabla0), f(Nabla2)),
            CaseId::C1 => (f(Nabla1), f(Nabla1)),
            CaseId::C3 => (f(Nabla2), f(Nabla2)),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CaseSpec {
    pub id: CaseId,
    pub a: Scalar,
    pub b: Scalar,
}

impl CaseSpec {
    pub fn new(id: CaseId, a: Scalar, b: Scalar) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidArgument("a must be nonzero".into()));
        }
        if !id.has_params() && !(a.is_one() && b.is_zero()) {
            return Err(Error::InvalidArgument(format!("case {id} has no parameters")));
        }
        Ok(CaseSpec { id, a, b })
    }

    pub fn fixed(id: CaseId) -> Self {
        CaseSpec { id, a: Scalar::one(), b: Scalar::zero() }
    }

    pub fn d(&self) -> Scalar {
        self.a.recip().expect("a nonzero")
    }

    pub fn phi(&self) -> Matrix {
        Matrix::from_rows(vec![vec![self.a.clone(), Scalar::zero()], vec![self.b.clone(), self.d()]])
    }

    pub fn matched_pair(&self) -> Result<MatchedPairSpec> {
        let (u, v) = self.id.factors();
        MatchedPairSpec::new(u, v, self.phi())
    }

    /// Three samples for parametrized cases, one otherwise.
    pub fn samples(id: CaseId) -> Vec<CaseSpec> {
        if !id.has_params() {
            return vec![CaseSpec::fixed(id)];
        }
        [(Scalar::int(2), Scalar::int(3)), (Scalar::one(), Scalar::zero()), (Scalar::frac(1, 3), Scalar::int(-1))]
            .into_iter()
            .map(|(a, b)| CaseSpec { id, a, b })
            .collect()
    }

    /// New basis `v0..v3` in `(e1, e2, f1, f2)` coordinates (as columns).
    pub fn basis_change(&self) -> Matrix {
        let (a, b, d) = (self.a.clone(), self.b.clone(), self.d());
        let k = |n: i64| Scalar::int(n);
        let f = |p: i64, q: i64| Scalar::frac(p, q);
        let v = |xs: [Scalar; 4]| Vector(xs.to_vec());
        let z = Scalar::zero;
        let one = Scalar::one;
        let a2 = a.square();
        let a3 = a.pow(3);
        let d2 = d.square();
        let d3 = d.pow(3);
        let cols = match self.id {
            CaseId::A1 => vec![v([one(), z(), z(), z()]), v([z(), one(), z(), z()]), v([z(), z(), one(), z()]), v([z(), z(), z(), one()])],
            CaseId::A2 => vec![v([z(), k(-1), z(), z()]), v([one(), z(), z(), z()]), v([z(), z(), one(), z()]), v([z(), z(), z(), one()])],
            CaseId::A3 => vec![v([z(), z(), z(), k(-1)]), v([one(), z(), z(), z()]), v([z(), z(), one(), z()]), v([z(), k(-1), z(), z()])],
            CaseId::A4 => vec![
                v([z(), -&(&a * &d), z(), -&a2]),
                v([one(), z(), z(), z()]),
                v([z(), z(), a.clone(), b.clone()]),
                v([z(), -&a3, z(), &a * &d2]),
            ],
            CaseId::B1 => vec![v([k(-1), z(), z(), z()]), v([z(), z(), k(-1), z()]), v([z(), one(), z(), z()]), v([z(), z(), z(), one()])],
            CaseId::B2 => vec![
                v([k(-1), z(), z(), &a2 * &f(1, 2)]),
                v([z(), -&(&a3 * &f(1, 2)), -&a, -&b]),
                v([z(), one(), z(), z()]),
                v([z(), z(), z(), d.clone()]),
            ],
            CaseId::B3 => vec![v([k(2), z(), z(), z()]), v([z(), one(), z(), z()]), v([z(), z(), k(-2), z()]), v([z(), z(), z(), one()])],
            CaseId::B4 => vec![
                v([k(2), z(), z(), -&(&a2 * &f(4, 3))]),
                v([z(), one(), z(), z()]),
                v([z(), -&(&a3 * &f(4, 3)), &a * &k(-2), &b * &k(-2)]),
                v([z(), z(), z(), d.clone()]),
            ],
            CaseId::B1p => vec![v([z(), z(), k(-1), z()]), v([one(), z(), z(), z()]), v([z(), one(), z(), z()]), v([z(), z(), z(), one()])],
            CaseId::B2p => vec![
                v([z(), &d2 * &f(1, 2), k(-1), z()]),
                v([d.clone(), -&b, z(), &d3 * &f(1, 2)]),
                v([z(), one(), z(), z()]),
                v([z(), z(), z(), d.clone()]),
            ],
            CaseId::B3p => vec![v([z(), z(), k(2), z()]), v([z(), z(), z(), one()]), v([k(2), z(), z(), z()]), v([z(), k(-1), z(), z()])],
            CaseId::B4p => vec![
                v([z(), -&(&d2 * &f(4, 3)), k(2), z()]),
                v([z(), z(), z(), one()]),
                v([&d * &k(2), &b * &k(-2), z(), &d3 * &f(4, 3)]),
                v([z(), -&a, z(), z()]),
            ],
            CaseId::C1 => {
                let n = &a2 + &one();
                let r = |x: Scalar| &x / &n;
                vec![
                    v([r(k(-1)), z(), r(-&a2), z()]),
                    v([r(a.clone()), r(-&(&a2 * &b)), r(-&a), r(-&b)]),
                    v([z(), a.clone(), z(), z()]),
                    v([z(), z(), z(), one()]),
                ]
            }
            CaseId::C3 => {
                let n = &a2 + &one();
                let two_n = &k(2) / &n;
                let three_n = &k(3) * &n;
                vec![
                    v([
                        two_n.clone(),
                        &two_n * &-&(&(&k(2) * &(&a3 * &b)) / &three_n),
                        &two_n * &a2,
                        &two_n * &(&(&k(2) * &(&a * &b)) / &three_n),
                    ]),
                    v([z(), one(), z(), one()]),
                    v([
                        &two_n * &a,
                        &two_n * &-&(&(&(&a2 * &b) * &(&(&k(3) * &a2) + &one())) / &three_n),
                        &two_n * &-&a,
                        &two_n * &-&(&(&b * &(&a2 + &k(3))) / &three_n),
                    ]),
                    v([z(), -&a, z(), d.clone()]),
                ]
            }
        };
        Matrix::from_cols(&cols)
    }

    /// The displayed `(g₊, g₋)` spanning vectors in the new basis `v0..v3`.
    pub fn eigenspace_display(&self) -> (Vec<Vector>, Vec<Vector>) {
        let (a, b, d) = (self.a.clone(), self.b.clone(), self.d());
        let e = |i: usize| Vector::basis(4, i);
        let lin = |terms: &[(Scalar, usize)]| {
            let mut v = Vector::zeros(4);
            for (c, i) in terms {
                v = &v + &e(*i).scale(c);
            }
            v
        };
        let one = Scalar::one;
        let f = |p: i64, q: i64| Scalar::frac(p, q);
        let a3 = a.pow(3);
        let n = &a.square() + &one();
        match self.id {
            CaseId::A1 => (vec![e(0), e(1)], vec![e(2), e(3)]),
            CaseId::A2 => (vec![e(0), e(1)], vec![e(2), e(3)]),
            CaseId::A3 => (vec![e(1), e(3)], vec![e(0), e(2)]),
            CaseId::A4 => (
                vec![e(1), lin(&[(a3.clone(), 3), (one(), 0)])],
                vec![e(2), lin(&[(-one(), 3), (a3, 0)])],
            ),
            CaseId::B1 => (vec![e(0), e(2)], vec![e(1), e(3)]),
            CaseId::B2 => (
                vec![lin(&[(one(), 0), (-&(&a3 * &f(1, 2)), 3)]), e(2)],
                vec![lin(&[(one(), 1), (&a3 * &f(1, 2), 2)]), e(3)],
            ),
            CaseId::B3 => (vec![e(0), e(1)], vec![e(2), e(3)]),
            CaseId::B4 => (
                vec![lin(&[(one(), 0), (&a3 * &f(4, 3), 3)]), e(1)],
                vec![lin(&[(one(), 2), (&a3 * &f(4, 3), 1)]), e(3)],
            ),
            CaseId::B1p => (vec![e(1), e(2)], vec![e(0), e(3)]),
            CaseId::B2p => {
                let h = &d.square() * &f(1, 2);
                (vec![lin(&[(one(), 1), (-&h, 3)]), e(2)], vec![lin(&[(-one(), 0), (h, 2)]), e(3)])
            }
            CaseId::B3p => (vec![e(2), e(3)], vec![e(0), e(1)]),
            CaseId::B4p => {
                let h = &d.pow(3) * &f(4, 3);
                (vec![lin(&[(-one(), 2), (h.clone(), 1)]), e(3)], vec![lin(&[(one(), 0), (-&h, 3)]), e(1)])
            }
            CaseId::C1 => (
                vec![lin(&[(one(), 0), (-&a, 1), (-&(&(&a * &b) / &n), 3)]), e(2)],
                vec![lin(&[(one(), 0), (d.clone(), 1), (&b / &n, 2)]), e(3)],
            ),
            CaseId::C3 => {
                let three_n = &Scalar::int(3) * &n;
                (
                    vec![
                        lin(&[(one(), 0), (a.clone(), 2), (&(&Scalar::int(2) * &(&a.square() * &b)) / &three_n, 3)]),
                        lin(&[(one(), 1), (-&a, 3)]),
                    ],
                    vec![
                        lin(&[(one(), 0), (-&d, 2), (-&(&(&Scalar::int(2) * &(&a * &b)) / &three_n), 1)]),
                        lin(&[(a.clone(), 1), (one(), 3)]),
                    ],
                )
            }
        }
    }

    /// The canonical structure this case is equivalent to.
    pub fn expected(&self) -> Result<CanonicalCps> {
        let (a, b) = (&self.a, &self.b);
        let n = &a.square() + &Scalar::one();
        let c_full = |sign: i64| -> Result<Theta> {
            let cos = &(&Scalar::one() - &a.square()) / &n;
            let sin = &(&Scalar::int(2 * sign) * a) / &n;
            Ok(Theta::Full(Angle::new(cos, sin)?))
        };
        Ok(match self.id {
            CaseId::A1 => CanonicalCps::R4,
            CaseId::A2 => CanonicalCps::G0 { theta: Theta::pi() },
            CaseId::A3 => CanonicalCps::G0 { theta: Theta::zero() },
            CaseId::A4 => {
                let a6 = a.pow(6);
                let m = &a6 + &Scalar::one();
                let cos = &(&a6 - &Scalar::one()) / &m;
                let sin = &(&Scalar::int(2) * &a.pow(3)) / &m;
                CanonicalCps::G0 { theta: Theta::Full(Angle::new(cos, sin)?) }
            }
            CaseId::B1 => CanonicalCps::G1 { theta: Theta::zero(), d: false },
            CaseId::B2 => CanonicalCps::G1 { theta: Theta::zero(), d: true },
            CaseId::B3 => CanonicalCps::G2 { theta: Theta::zero(), d: false },
            CaseId::B4 => CanonicalCps::G2 { theta: Theta::zero(), d: true },
            CaseId::B1p => CanonicalCps::G1 { theta: Theta::pi(), d: false },
            CaseId::B2p => CanonicalCps::G1One,
            CaseId::B3p => CanonicalCps::G2 { theta: Theta::pi(), d: false },
            CaseId::B4p => CanonicalCps::G2One,
            CaseId::C1 => CanonicalCps::G1 { theta: c_full(-1)?, d: !b.is_zero() },
            CaseId::C3 => CanonicalCps::G2 { theta: c_full(1)?, d: !b.is_zero() },
        })
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.id.has_params() {
            write!(f, "{} a={} b={}", self.id, self.a, self.b)
        } else {
            write!(f, "{}", self.id)
        }
    }
}

/// `(cos θ/2, sin θ/2) = (a³, 1)/√(a⁶+1)` for case A4.
pub fn a4_half_angle_f64(a: f64) -> (f64, f64) {
    let r = (a.powi(6) + 1.0).sqrt();
    (a.powi(3) / r, 1.0 / r)
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub spec: CaseSpec,
    pub bicross: BicrossResult,
    pub basis_change: Matrix,
    pub target: LieAlgebra,
    pub expected: CanonicalCps,
    /// `Q⁻¹` maps the bicrossproduct onto the target algebra.
    pub basis_change_ok: bool,
    pub display_ok: bool,
    /// Diagonal automorphism of the target carrying the transported `{J, E}` to the canonical one.
    pub normalizer: Option<Matrix>,
    /// `λ` with `g_can(ξx, ξy) = λ g(x, y)` for `ξ = N Q⁻¹`.
    pub homothety: Option<Scalar>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.basis_change_ok && self.display_ok && self.homothety.is_some()
    }
}

/// Indices scaled by the one-parameter automorphism family used to normalize each target.
fn normalizer_indices(target: &str) -> &'static [usize] {
    match target {
        "g1h" => &[2, 3],
        "g2h" => &[1, 3],
        _ => &[],
    }
}

/// `k` with `N src N⁻¹ = dst` for `N = diag` scaling `idx` by `k`, if one exists.
fn fit_normalizer(idx: &[usize], src: &CPStructure, dst: &CPStructure) -> Option<Matrix> {
    let n = src.dim();
    let scaled = |i: usize| idx.contains(&i);
    let mut k = Scalar::one();
    'search: for m in [src.e(), src.j()] {
        let dm = if std::ptr::eq(m, src.e()) { dst.e() } else { dst.j() };
        for (i, j, x) in m.entries() {
            if x.is_zero() || scaled(i) == scaled(j) {
                continue;
            }
            let r = &dm[(i, j)] / x;
            k = if scaled(i) { r } else { r.recip().ok()? };
            break 'search;
        }
    }
    if k.is_zero() {
        return None;
    }
    let d: Vec<Scalar> = (0..n).map(|i| if scaled(i) { k.clone() } else { Scalar::one() }).collect();
    let nm = Matrix::diag(&d);
    let inv = nm.inverse().ok()?;
    let ok = &(&nm * src.j()) * &inv == *dst.j() && &(&nm * src.e()) * &inv == *dst.e();
    ok.then_some(nm)
}

/// Builds the case's bicrossproduct and checks it against its canonical form.
pub fn construct_case(cs: &CaseSpec) -> Result<CaseResult> {
    let bicross = build_bicrossproduct(&cs.matched_pair()?)?;
    let q = cs.basis_change();
    let qinv = q.inverse()?;
    let target = named_algebra(cs.id.target())?;
    let basis_change_ok = verify_basis_change(bicross.algebra(), &qinv, &target)?;
    let expected = cs.expected()?;
    let mut out = CaseResult {
        spec: cs.clone(),
        bicross,
        basis_change: q,
        target: target.clone(),
        expected: expected.clone(),
        basis_change_ok,
        display_ok: false,
        normalizer: None,
        homothety: None,
    };
    if !basis_change_ok {
        return Ok(out);
    }
    let moved = out.bicross.structure.transport(&qinv, target)?;
    let (plus, minus) = cs.eigenspace_display();
    let e = moved.cp().e();
    let eig = |vs: &[Vector], sign: i64| {
        crate::core_tensor::rank_of(vs) == 2 && vs.iter().all(|v| e.apply(v) == v.scale(&Scalar::int(sign)))
    };
    out.display_ok = eig(&plus, 1) && eig(&minus, -1);
    let canon = canonical_metric(&expected)?;
    out.normalizer = fit_normalizer(normalizer_indices(cs.id.target()), moved.cp(), canon.cp());
    if let Some(nm) = &out.normalizer {
        let xi = nm * &qinv;
        out.homothety = equivalence_scale(&xi, &out.bicross.structure, &canon)?;
    }
    Ok(out)
}

/// All cases at their parameter samples.
pub fn all_case_specs() -> Vec<CaseSpec> {
    CaseId::ALL.into_iter().flat_map(CaseSpec::samples).collect()
}

// ---------------------------------------------------------------------------
// Flatness and completeness table

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FlatClaim {
    Always,
    IffCZero,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub label: &'static str,
    pub flat_claim: FlatClaim,
    pub complete_claim: bool,
    /// Samples where computed flatness disagrees with the claim.
    pub flat_mismatches: Vec<String>,
    /// Samples where the probe disagrees with the completeness claim.
    pub probe_mismatches: Vec<String>,
    /// For incomplete claims: every sample has an `aff(ℝ)` eigenspace factor.
    pub structural_confirmed: Option<bool>,
}

impl TableRow {
    pub fn flat_ok(&self) -> bool {
        self.flat_mismatches.is_empty()
    }

    pub fn complete_ok(&self) -> bool {
        self.probe_mismatches.is_empty() && self.structural_confirmed != Some(false)
    }
}

fn theta_samples() -> Vec<Theta> {
    let mut v: Vec<Theta> = HalfAngle::samples(3).into_iter().map(Theta::Half).collect();
    v.push(Theta::half(Scalar::frac(3, 5), Scalar::frac(4, 5)).expect("unit"));
    v
}

/// The eight-row flatness/completeness table over a few angle samples.
pub fn flatness_table(horizon: f64) -> Result<Vec<TableRow>> {
    type Make = fn(Theta) -> CanonicalCps;
    let rows: [(&'static str, Make, FlatClaim, bool, bool); 8] = [
        ("R4", |_| CanonicalCps::R4, FlatClaim::Always, true, false),
        ("g0h g_theta", |t| CanonicalCps::G0 { theta: t }, FlatClaim::Always, true, true),
        ("g1h g_theta,0", |t| CanonicalCps::G1 { theta: t, d: false }, FlatClaim::Always, false, true),
        ("g1h g_theta,1", |t| CanonicalCps::G1 { theta: t, d: true }, FlatClaim::IffCZero, false, true),
        ("g1h g_1", |_| CanonicalCps::G1One, FlatClaim::Always, false, false),
        ("g2h g_theta,0", |t| CanonicalCps::G2 { theta: t, d: false }, FlatClaim::Always, false, true),
        ("g2h g_theta,1", |t| CanonicalCps::G2 { theta: t, d: true }, FlatClaim::IffCZero, false, true),
        ("g2h g_1", |_| CanonicalCps::G2One, FlatClaim::Always, false, false),
    ];
    let mut out = Vec::new();
    for (label, make, flat_claim, complete_claim, uses_theta) in rows {
        let samples = if uses_theta { theta_samples() } else { vec![Theta::zero()] };
        let mut row = TableRow { label, flat_claim, complete_claim, flat_mismatches: vec![], probe_mismatches: vec![], structural_confirmed: None };
        let mut structural = true;
        for t in samples {
            let c_zero = t.half_angle().is_some_and(|h| h.c().is_zero());
            let spec = make(t);
            let hs = canonical_metric(&spec)?;
            let flat = levi_civita(hs.algebra(), hs.g())?.is_flat();
            let claim = match flat_claim {
                FlatClaim::Always => true,
                FlatClaim::IffCZero => c_zero,
            };
            if flat != claim {
                row.flat_mismatches.push(format!("{spec}: flat={flat}"));
            }
            let extra = adapted_basis(&spec).map(|b| b.to_vec()).unwrap_or_default();
            let ev = completeness(&hs, &extra, horizon)?;
            if ev.probe_complete() != complete_claim {
                row.probe_mismatches.push(format!("{spec}: probe blow-up {:?}", ev.probe_blow_up));
            }
            structural &= ev.structurally_incomplete();
        }
        if !complete_claim {
            row.structural_confirmed = Some(structural);
        }
        out.push(row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cps::{is_complex_structure, is_product_structure};
    use crate::hypersymplectic::verify_hypersymplectic;
    use crate::scalar::{int, q};

    fn half(c: Scalar, s: Scalar) -> Theta {
        Theta::half(c, s).unwrap()
    }

    fn all_specs(t: Theta) -> Vec<CanonicalCps> {
        vec![
            CanonicalCps::R4,
            CanonicalCps::G0 { theta: t.clone() },
            CanonicalCps::G1 { theta: t.clone(), d: false },
            CanonicalCps::G1 { theta: t.clone(), d: true },
            CanonicalCps::G1One,
            CanonicalCps::G2 { theta: t.clone(), d: false },
            CanonicalCps::G2 { theta: t, d: true },
            CanonicalCps::G2One,
        ]
    }

    #[test]
    fn canonical_structures_valid_and_hypersymplectic() {
        for h in HalfAngle::samples(6) {
            for spec in all_specs(Theta::Half(h)) {
                let cp = canonical_cps(&spec).unwrap();
                assert!(is_complex_structure(cp.algebra(), cp.j()).unwrap(), "{spec}");
                assert!(is_product_structure(cp.algebra(), cp.e()).unwrap(), "{spec}");
                let hs = canonical_metric(&spec).unwrap();
                let rep = verify_hypersymplectic(hs.algebra(), hs.cp().j(), hs.cp().e(), hs.g());
                assert!(rep.passed(), "{spec}\n{rep}");
                assert!(split(&cp).unwrap().same_as(&eigenspace_display(&spec).unwrap()), "{spec}");
            }
        }
    }

    #[test]
    fn g0_theta_zero_matrix() {
        let cp = canonical_cps(&CanonicalCps::G0 { theta: Theta::zero() }).unwrap();
        // On {v3, v0} the block is diag(1, -1).
        assert_eq!(cp.e()[(3, 3)], int(1));
        assert_eq!(cp.e()[(0, 0)], int(-1));
    }

    #[test]
    fn pi_identifies_d() {
        let a = canonical_cps(&CanonicalCps::G1 { theta: Theta::pi(), d: false }).unwrap();
        let b = canonical_cps(&CanonicalCps::G1 { theta: Theta::pi(), d: true }).unwrap();
        assert_eq!(a, b);
        let a = canonical_cps(&CanonicalCps::G2 { theta: Theta::pi(), d: false }).unwrap();
        let b = canonical_cps(&CanonicalCps::G2 { theta: Theta::pi(), d: true }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn g2_theta0_metric_independent_of_theta() {
        let g = |t: Theta| canonical_metric(&CanonicalCps::G2 { theta: t, d: false }).unwrap().g().clone();
        assert_eq!(g(Theta::zero()), g(half(q(3, 5), q(4, 5))));
        assert_eq!(g(Theta::zero()), g(half(q(5, 13), q(-12, 13))));
    }

    #[test]
    fn curvature_examples() {
        let p = curvature_profile(&CanonicalCps::G1 { theta: half(q(3, 5), q(4, 5)), d: true }).unwrap();
        assert!(!p.flat);
        assert_eq!(p.distinguished_entry, q(18, 5));
        assert_eq!(p.mirror_entry, q(18, 5));
        assert!(p.rest_zero);
        let p = curvature_profile(&CanonicalCps::G1 { theta: half(int(0), int(1)), d: true }).unwrap();
        assert!(p.flat && p.distinguished_entry.is_zero());
        let p = curvature_profile(&CanonicalCps::G2 { theta: half(q(5, 13), q(12, 13)), d: true }).unwrap();
        assert_eq!(p.distinguished_entry, q(150, 169));
    }

    #[test]
    fn coframes_are_left_invariant() {
        for g in [Group::R4, Group::G0h, Group::G1h, Group::G2h] {
            for p in [[0.0, 0.0, 0.0, 0.0], [0.3, -0.7, 1.1, 0.2], [-1.2, 0.5, -0.4, 2.0]] {
                assert!(coframe(g).maurer_cartan_defect(p) < 1e-12, "{g:?}");
            }
        }
    }

    #[test]
    fn r4_coordinates_neutral() {
        let hs = canonical_metric(&CanonicalCps::R4).unwrap();
        let m = metric_at_point(&hs, Group::R4, [0.4, -1.0, 2.0, 3.0]).unwrap();
        assert_eq!(m, CoordinateFormula::Neutral.eval([0.0; 4]));
    }

    #[test]
    fn g2_theta0_coordinates_at_origin() {
        let hs = canonical_metric(&CanonicalCps::G2 { theta: Theta::zero(), d: false }).unwrap();
        let cm = coordinate_match(&hs, Group::G2h, &CoordinateFormula::G2Theta0, &[[0.0; 4], [0.3, 0.1, -0.2, 0.5]], 1e-12).unwrap();
        assert!(cm.ok, "{cm:?}");
        assert_eq!(cm.lambda, Some(-1.0));
    }

    #[test]
    fn a4_half_angle_at_one() {
        let cs = CaseSpec::new(CaseId::A4, int(1), int(0)).unwrap();
        let CanonicalCps::G0 { theta } = cs.expected().unwrap() else { panic!() };
        let (c, s) = theta.half_f64();
        let (c2, s2) = a4_half_angle_f64(1.0);
        assert!((c - c2).abs() < 1e-12 && (s - s2).abs() < 1e-12);
        assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn every_case_sample_constructs() {
        for cs in all_case_specs() {
            let r = construct_case(&cs).unwrap();
            assert!(r.basis_change_ok, "{cs}: basis change");
            assert!(r.display_ok, "{cs}: eigenspaces");
            assert!(r.homothety.is_some(), "{cs}: equivalence");
        }
    }

    #[test]
    fn normalizer_examples() {
        let k = |id, a, b| {
            let r = construct_case(&CaseSpec::new(id, a, b).unwrap()).unwrap();
            r.normalizer.unwrap()
        };
        assert_eq!(k(CaseId::B2, int(2), int(3))[(2, 2)], q(-1, 4));
        assert_eq!(k(CaseId::C1, int(2), int(3))[(2, 2)], q(-5, 6));
        assert_eq!(k(CaseId::B4, int(2), int(3))[(1, 1)], q(3, 32));
        assert_eq!(k(CaseId::C3, int(2), int(3))[(1, 1)], q(5, 8));
    }

    #[test]
    fn c1_at_one_targets_quarter_turn() {
        let cs = CaseSpec::new(CaseId::C1, int(1), int(0)).unwrap();
        let CanonicalCps::G1 { theta, d } = cs.expected().unwrap() else { panic!() };
        assert_eq!(theta.trig(), (int(0), int(-1)));
        assert!(!d);
    }

    #[test]
    fn aff_factor_found_for_g1_theta0() {
        let hs = canonical_metric(&CanonicalCps::G1 { theta: Theta::zero(), d: false }).unwrap();
        let lc = levi_civita(hs.algebra(), hs.g()).unwrap();
        assert!(!aff_factor_targets(hs.cp(), &lc).unwrap().is_empty());
        let hs = canonical_metric(&CanonicalCps::G0 { theta: Theta::zero() }).unwrap();
        let lc = levi_civita(hs.algebra(), hs.g()).unwrap();
        assert!(aff_factor_targets(hs.cp(), &lc).unwrap().is_empty());
    }
}
