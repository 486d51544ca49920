//! Hypersymplectic structures glued from two flat symplectic factors along an isomorphism `φ`.

use serde::Serialize;

use crate::connection::{verify_symplectic_equivalence, Connection};
use crate::core_tensor::{BilinearForm, Endomorphism, Matrix, Vector};
use crate::cps::CPStructure;
use crate::error::{Error, Result};
use crate::hypersymplectic::{verify_structure_equivalence, HSStructure};
use crate::liealg::LieAlgebra;

/// A Lie algebra with a connection and a 2-form on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub connection: Connection,
    pub omega: BilinearForm,
}

impl Factor {
    pub fn new(connection: Connection, omega: BilinearForm) -> Result<Self> {
        if omega.dim() != connection.dim() {
            return Err(Error::Dimension { expected: connection.dim(), got: omega.dim() });
        }
        if omega.symmetry() != crate::core_tensor::Symmetry::Antisymmetric {
            return Err(Error::Invariant("factor form must be antisymmetric".into()));
        }
        Ok(Factor { connection, omega })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.connection.algebra()
    }

    pub fn dim(&self) -> usize {
        self.connection.dim()
    }

    /// Unmet hypotheses: torsion-free, flat, `∇ω = 0`, `ω` nondegenerate.
    pub fn defects(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.connection.is_torsion_free() {
            out.push("connection has torsion");
        }
        if !self.connection.is_flat() {
            out.push("connection is not flat");
        }
        if !self.omega.is_nondegenerate() {
            out.push("form is degenerate");
        }
        if !self.connection.parallel_form_check(&self.omega) {
            out.push("form is not parallel");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPairSpec {
    pub u: Factor,
    pub v: Factor,
    /// Linear map `u → v`; column `j` is `φ(e_j)`.
    pub phi: Matrix,
}

impl MatchedPairSpec {
    pub fn new(u: Factor, v: Factor, phi: Matrix) -> Result<Self> {
        if u.dim() != v.dim() || phi.rows() != v.dim() || phi.cols() != u.dim() {
            return Err(Error::Dimension { expected: u.dim(), got: phi.rows() });
        }
        Ok(MatchedPairSpec { u, v, phi })
    }

    /// Unmet hypotheses on the factors and on `ω(x,y) = ω'(φx,φy)`.
    pub fn defects(&self) -> Vec<String> {
        let mut out: Vec<String> = self.u.defects().into_iter().map(|d| format!("u: {d}")).collect();
        out.extend(self.v.defects().into_iter().map(|d| format!("v: {d}")));
        if self.phi.det().is_zero() {
            out.push("phi is singular".into());
        } else if self.v.omega.pullback(&self.phi) != self.u.omega {
            out.push("omega(x,y) != omega'(phi x, phi y)".into());
        }
        out
    }
}

/// `ρ(e_i)` acting on `v` and `μ(f_j)` acting on `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representations {
    pub rho: Vec<Endomorphism>,
    pub mu: Vec<Endomorphism>,
}

impl Representations {
    fn rho_at(&self, x: &Vector) -> Endomorphism {
        combine(&self.rho, x)
    }

    fn mu_at(&self, a: &Vector) -> Endomorphism {
        combine(&self.mu, a)
    }
}

fn combine(ms: &[Matrix], x: &Vector) -> Matrix {
    let n = ms[0].rows();
    let mut acc = Matrix::zeros(n, ms[0].cols());
    for (m, c) in ms.iter().zip(x.iter()) {
        if !c.is_zero() {
            acc = &acc + &m.scale(c);
        }
    }
    acc
}

/// `ρ(x) = φ ∇_x φ⁻¹` and `μ(a) = φ⁻¹ ∇'_a φ`.
pub fn build_representations(spec: &MatchedPairSpec) -> Result<Representations> {
    let inv = spec.phi.inverse()?;
    let n = spec.u.dim();
    let rho = (0..n)
        .map(|i| &(&spec.phi * &spec.u.connection.operator(&Vector::basis(n, i))) * &inv)
        .collect();
    let mu = (0..n)
        .map(|i| &(&inv * &spec.v.connection.operator(&Vector::basis(n, i))) * &spec.phi)
        .collect();
    Ok(Representations { rho, mu })
}

/// One failed instance of the matched-pair identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1: the identity on `v` (`ρ(x)[a,b] - …`), 2: the identity on `u` (`μ(a)[x,y] - …`).
    pub identity: u8,
    pub indices: (usize, usize, usize),
    pub residual: Vector,
}

/// Evaluates both matched-pair identities on all basis triples.
pub fn check_matched_pair(u: &LieAlgebra, v: &LieAlgebra, reps: &Representations) -> Vec<Violation> {
    let (n, m) = (u.dim(), v.dim());
    let mut out = Vec::new();
    for i in 0..n {
        let x = u.basis(i);
        let rx = reps.rho_at(&x);
        for j in 0..m {
            for k in 0..m {
                let (a, b) = (v.basis(j), v.basis(k));
                let r = &(&(&(&rx.apply(&v.bracket(&a, &b)) - &v.bracket(&rx.apply(&a), &b))
                    - &v.bracket(&a, &rx.apply(&b)))
                    + &reps.rho_at(&reps.mu_at(&a).apply(&x)).apply(&b))
                    - &reps.rho_at(&reps.mu_at(&b).apply(&x)).apply(&a);
                if !r.is_zero() {
                    out.push(Violation { identity: 1, indices: (i, j, k), residual: r });
                }
            }
        }
    }
    for j in 0..m {
        let a = v.basis(j);
        let ma = reps.mu_at(&a);
        for i in 0..n {
            for k in 0..n {
                let (x, y) = (u.basis(i), u.basis(k));
                let r = &(&(&(&ma.apply(&u.bracket(&x, &y)) - &u.bracket(&ma.apply(&x), &y))
                    - &u.bracket(&x, &ma.apply(&y)))
                    + &reps.mu_at(&reps.rho_at(&x).apply(&a)).apply(&y))
                    - &reps.mu_at(&reps.rho_at(&y).apply(&a)).apply(&x);
                if !r.is_zero() {
                    out.push(Violation { identity: 2, indices: (j, i, k), residual: r });
                }
            }
        }
    }
    out
}

/// Checks the matched-pair identities for `spec`; empty means pass.
pub fn matched_pair_violations(spec: &MatchedPairSpec) -> Result<Vec<Violation>> {
    let reps = build_representations(spec)?;
    Ok(check_matched_pair(spec.u.algebra(), spec.v.algebra(), &reps))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicrossResult {
    pub structure: HSStructure,
    /// Columns are the images of the `u` basis.
    pub u_embedding: Matrix,
    /// Columns are the images of the `v` basis.
    pub v_embedding: Matrix,
}

impl BicrossResult {
    pub fn algebra(&self) -> &LieAlgebra {
        self.structure.algebra()
    }
}

/// The sum `u ⊕ v` (basis `e_i` then `f_j`) with its bracket, `{J, E}` and `g`.
///
/// Only the matched-pair identities are required, so this also serves
/// inputs where the factor connections are not symplectic.
pub fn assemble(spec: &MatchedPairSpec) -> Result<(CPStructure, BilinearForm)> {
    let reps = build_representations(spec)?;
    let viol = check_matched_pair(spec.u.algebra(), spec.v.algebra(), &reps);
    if !viol.is_empty() {
        return Err(Error::MatchedPair(viol.len()));
    }
    let (u, v) = (spec.u.algebra(), spec.v.algebra());
    let n = u.dim();
    let total = 2 * n;
    let stack = |x: &Vector, a: &Vector| Vector(x.iter().chain(a.iter()).cloned().collect());
    let zu = Vector::zeros(n);
    let mut table = Vec::new();
    for i in 0..total {
        for j in i + 1..total {
            let br = match (i < n, j < n) {
                (true, true) => stack(&u.bracket(&u.basis(i), &u.basis(j)), &zu),
                (false, false) => stack(&zu, &v.bracket(&v.basis(i - n), &v.basis(j - n))),
                _ => {
                    // [(x,0),(0,a)] = (-μ(a)x, ρ(x)a)
                    let (x, a) = (u.basis(i), v.basis(j - n));
                    stack(&-reps.mu_at(&a).apply(&x), &reps.rho_at(&x).apply(&a))
                }
            };
            if !br.is_zero() {
                table.push((i, j, br));
            }
        }
    }
    let labels: Vec<String> = (0..n).map(|i| format!("e{}", i + 1)).chain((0..n).map(|i| format!("f{}", i + 1))).collect();
    let lr: Vec<&str> = labels.iter().map(String::as_str).collect();
    let alg = LieAlgebra::from_brackets(&lr, &table)?;
    let inv = spec.phi.inverse()?;
    let mut j = Matrix::zeros(total, total);
    let mut e = Matrix::zeros(total, total);
    let mut g = Matrix::zeros(total, total);
    // g(x, b) = ω(φ⁻¹b, x), so the u×v block is ωᵀ φ⁻¹.
    let gub = &spec.u.omega.matrix().transpose() * &inv;
    for r in 0..n {
        e[(r, r)] = crate::scalar::Scalar::one();
        e[(n + r, n + r)] = crate::scalar::Scalar::int(-1);
        for c in 0..n {
            j[(r, n + c)] = -&inv[(r, c)];
            j[(n + r, c)] = spec.phi[(r, c)].clone();
            g[(r, n + c)] = gub[(r, c)].clone();
            g[(n + c, r)] = gub[(r, c)].clone();
        }
    }
    let cp = CPStructure::new(alg, j, e)?;
    Ok((cp, BilinearForm::symmetric(g)?))
}

/// Assembles the bicrossproduct and validates it as a hypersymplectic structure.
pub fn build_bicrossproduct(spec: &MatchedPairSpec) -> Result<BicrossResult> {
    let defects = spec.defects();
    if !defects.is_empty() {
        return Err(Error::Invariant(defects.join("; ")));
    }
    let (cp, g) = assemble(spec)?;
    let n = spec.u.dim();
    let u_embedding = Matrix::from_cols(&(0..n).map(|i| Vector::basis(2 * n, i)).collect::<Vec<_>>());
    let v_embedding = Matrix::from_cols(&(0..n).map(|i| Vector::basis(2 * n, n + i)).collect::<Vec<_>>());
    Ok(BicrossResult { structure: HSStructure::new(cp, g)?, u_embedding, v_embedding })
}

/// Block-diagonal `ξ ⊕ ξ'`.
pub fn direct_sum(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.rows(), b.rows());
    let mut out = Matrix::zeros(n + m, n + m);
    for (i, k, x) in a.entries() {
        out[(i, k)] = x.clone();
    }
    for (i, k, x) in b.entries() {
        out[(n + i, n + k)] = x.clone();
    }
    out
}

/// Replaces the factor data by its images under `ξ` and `ξ'`, glued by `ψ = ξ' φ ξ⁻¹`.
/// Returns the new spec and `η = ξ ⊕ ξ'`, checked to be an equivalence of the two bicrossproducts.
pub fn transport_equivalence(xi: &Matrix, xi2: &Matrix, spec: &MatchedPairSpec) -> Result<(MatchedPairSpec, Matrix)> {
    let xi_inv = xi.inverse()?;
    let xi2_inv = xi2.inverse()?;
    let u2 = Factor::new(spec.u.connection.transport(xi, spec.u.algebra().clone())?, spec.u.omega.pullback(&xi_inv))?;
    let v2 = Factor::new(spec.v.connection.transport(xi2, spec.v.algebra().clone())?, spec.v.omega.pullback(&xi2_inv))?;
    if !verify_symplectic_equivalence(xi, (&spec.u.connection, &spec.u.omega), (&u2.connection, &u2.omega))? {
        return Err(Error::Invariant("xi is not a symplectic equivalence of u".into()));
    }
    if !verify_symplectic_equivalence(xi2, (&spec.v.connection, &spec.v.omega), (&v2.connection, &v2.omega))? {
        return Err(Error::Invariant("xi' is not a symplectic equivalence of v".into()));
    }
    let psi = &(xi2 * &spec.phi) * &xi_inv;
    let spec2 = MatchedPairSpec::new(u2, v2, psi)?;
    let a = build_bicrossproduct(spec)?;
    let b = build_bicrossproduct(&spec2)?;
    let eta = direct_sum(xi, xi2);
    if !verify_structure_equivalence(&eta, &a.structure, &b.structure)? {
        return Err(Error::Invariant("eta is not an equivalence".into()));
    }
    Ok((spec2, eta))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::connection::levi_civita;
    use crate::hypersymplectic::verify_hypersymplectic;
    use crate::liealg::named_algebra;
    use crate::scalar::{int, q, Scalar};

    fn e(i: usize) -> Vector {
        Vector::basis(2, i)
    }

    pub(crate) fn factor(alg: &str, entries: &[(usize, usize, Vector)]) -> Factor {
        let c = Connection::from_entries(named_algebra(alg).unwrap(), entries).unwrap();
        Factor::new(c, BilinearForm::wedge(2, 0, 1)).unwrap()
    }

    pub(crate) fn n0() -> Factor {
        factor("R2", &[(0, 0, e(1))])
    }

    pub(crate) fn zero() -> Factor {
        factor("R2", &[])
    }

    pub(crate) fn n1() -> Factor {
        factor("aff", &[(0, 0, -e(0)), (0, 1, e(1))])
    }

    pub(crate) fn n2() -> Factor {
        let h = q(1, 2);
        factor("aff", &[(0, 0, e(0).scale(&-&h)), (0, 1, e(1).scale(&h)), (1, 0, e(1).scale(&-&h))])
    }

    fn lower(a: Scalar, b: Scalar, d: Scalar) -> Matrix {
        Matrix::from_rows(vec![vec![a, int(0)], vec![b, d]])
    }

    #[test]
    fn representations_a2_b1() {
        let s = MatchedPairSpec::new(n0(), zero(), Matrix::identity(2)).unwrap();
        let r = build_representations(&s).unwrap();
        assert_eq!(r.rho[0], Matrix::from_int_rows(&[&[0, 0], &[1, 0]]));
        assert!(r.rho[1].is_zero() && r.mu.iter().all(Matrix::is_zero));
        let s = MatchedPairSpec::new(n1(), zero(), Matrix::identity(2)).unwrap();
        let r = build_representations(&s).unwrap();
        assert_eq!(r.rho[0], Matrix::from_int_rows(&[&[-1, 0], &[0, 1]]));
        assert!(r.mu.iter().all(Matrix::is_zero));
    }

    #[test]
    fn zero_representations_pass() {
        let aff = named_algebra("aff").unwrap();
        let reps = Representations { rho: vec![Matrix::zeros(2, 2); 2], mu: vec![Matrix::zeros(2, 2); 2] };
        assert!(check_matched_pair(&aff, &aff, &reps).is_empty());
    }

    #[test]
    fn a1_is_canonical_r4() {
        let s = MatchedPairSpec::new(zero(), zero(), Matrix::identity(2)).unwrap();
        let r = build_bicrossproduct(&s).unwrap();
        assert!(r.algebra().is_abelian());
        let hs = &r.structure;
        assert!(verify_hypersymplectic(hs.algebra(), hs.cp().j(), hs.cp().e(), hs.g()).passed());
    }

    #[test]
    fn c2_sample_fails() {
        let s = MatchedPairSpec::new(n1(), n2(), lower(int(1), int(0), int(1))).unwrap();
        assert!(!matched_pair_violations(&s).unwrap().is_empty());
        assert!(matches!(build_bicrossproduct(&s), Err(Error::MatchedPair(_))));
    }

    #[test]
    fn b2_end_to_end_and_isotropy() {
        let s = MatchedPairSpec::new(n1(), n0(), lower(int(2), int(3), q(1, 2))).unwrap();
        let r = build_bicrossproduct(&s).unwrap();
        let hs = &r.structure;
        assert!(r.algebra().check_jacobi().is_empty());
        assert!(verify_hypersymplectic(hs.algebra(), hs.cp().j(), hs.cp().e(), hs.g()).passed());
        let g = hs.g();
        for i in 0..2 {
            for k in 0..2 {
                assert!(g.eval(&r.u_embedding.col(i), &r.u_embedding.col(k)).is_zero());
                assert!(g.eval(&r.v_embedding.col(i), &r.v_embedding.col(k)).is_zero());
            }
        }
        // ∇^g restricted to u is ∇¹.
        let lc = levi_civita(hs.algebra(), g).unwrap();
        assert_eq!(lc.nabla(&r.u_embedding.col(0), &r.u_embedding.col(0)), Vector::from_ints(&[-1, 0, 0, 0]));
    }

    #[test]
    fn transport_identity_and_shear() {
        let s = MatchedPairSpec::new(n1(), n0(), lower(int(2), int(3), q(1, 2))).unwrap();
        let (s2, eta) = transport_equivalence(&Matrix::identity(2), &Matrix::identity(2), &s).unwrap();
        assert_eq!(s2, s);
        assert_eq!(eta, Matrix::identity(4));
        let shear = Matrix::from_rows(vec![vec![int(1), int(0)], vec![q(1, 2), int(1)]]);
        assert!(transport_equivalence(&shear, &Matrix::identity(2), &s).is_ok());
    }

    #[test]
    fn transport_rejects_non_automorphism() {
        let s = MatchedPairSpec::new(n1(), n0(), lower(int(2), int(3), q(1, 2))).unwrap();
        let swap = Matrix::permutation(&[1, 0]);
        assert!(transport_equivalence(&swap, &Matrix::identity(2), &s).is_err());
    }
}
