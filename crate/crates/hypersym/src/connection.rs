//! Left-invariant connections on Lie algebras.

use crate::core_tensor::{BilinearForm, Endomorphism, Matrix, Symmetry, Tensor3, Vector};
use crate::error::{Error, Result};
use crate::liealg::{is_homomorphism, LieAlgebra};
use crate::scalar::Scalar;

pub mod geodesic;

pub use geodesic::{geodesic_probe, ProbeConfig, Trajectory, Verdict};

/// `gamma[i][j] = ∇_{e_i} e_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Connection {
    algebra: LieAlgebra,
    gamma: Vec<Vec<Vector>>,
}

impl Connection {
    pub fn new(algebra: LieAlgebra, gamma: Vec<Vec<Vector>>) -> Result<Self> {
        let n = algebra.dim();
        if gamma.len() != n || gamma.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Dimension { expected: n, got: gamma.len() });
        }
        Ok(Connection { algebra, gamma })
    }

    pub fn zero(algebra: LieAlgebra) -> Self {
        let n = algebra.dim();
        Connection { algebra, gamma: vec![vec![Vector::zeros(n); n]; n] }
    }

    /// Build from the nonzero values `∇_{e_i} e_j = v`.
    pub fn from_entries(algebra: LieAlgebra, entries: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut c = Self::zero(algebra);
        let n = c.dim();
        for (i, j, v) in entries {
            if *i >= n || *j >= n || v.len() != n {
                return Err(Error::Dimension { expected: n, got: v.len() });
            }
            c.gamma[*i][*j] = v.clone();
        }
        Ok(c)
    }

    /// Build from the operators `∇_{e_i}`.
    pub fn from_operators(algebra: LieAlgebra, ops: &[Endomorphism]) -> Result<Self> {
        let n = algebra.dim();
        let gamma = ops.iter().map(|m| (0..n).map(|j| m.col(j)).collect()).collect();
        Self::new(algebra, gamma)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `Γ^k_{ij}`.
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.gamma[i][j][k]
    }

    pub fn on_basis(&self, i: usize, j: usize) -> &Vector {
        &self.gamma[i][j]
    }

    pub fn nabla(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim();
        let mut out = Vector::zeros(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let k = &x[i] * &y[j];
                for (o, g) in out.0.iter_mut().zip(&self.gamma[i][j].0) {
                    if !g.is_zero() {
                        *o += &k * g;
                    }
                }
            }
        }
        out
    }

    /// `∇_x` as an endomorphism.
    pub fn operator(&self, x: &Vector) -> Endomorphism {
        let n = self.dim();
        Matrix::from_cols(&(0..n).map(|j| self.nabla(x, &Vector::basis(n, j))).collect::<Vec<_>>())
    }

    /// `T[i][j][k]`: component `k` of `T(e_i, e_j)`.
    pub fn torsion(&self) -> Tensor3 {
        let n = self.dim();
        let mut t = Tensor3::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = &(&self.gamma[i][j] - &self.gamma[j][i]) - self.algebra.basis_bracket(i, j);
                for k in 0..n {
                    t[(i, j, k)] = v[k].clone();
                }
            }
        }
        t
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion().is_zero()
    }

    /// `R(x, y) = ∇_x ∇_y - ∇_y ∇_x - ∇_{[x,y]}`.
    pub fn curvature(&self, x: &Vector, y: &Vector) -> Endomorphism {
        let nx = self.operator(x);
        let ny = self.operator(y);
        &nx.commutator(&ny) - &self.operator(&self.algebra.bracket(x, y))
    }

    /// Basis pairs `(i, j)`, `i < j`, with `R(e_i, e_j) ≠ 0`.
    pub fn curvature_support(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        let ops: Vec<Endomorphism> = (0..n).map(|i| self.operator(&Vector::basis(n, i))).collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut r = ops[i].commutator(&ops[j]);
                let br = self.algebra.basis_bracket(i, j);
                if !br.is_zero() {
                    r = &r - &self.operator(br);
                }
                if !r.is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_flat(&self) -> bool {
        self.curvature_support().is_empty()
    }

    /// `ω(∇_x y, z) = ω(∇_x z, y)` on all basis triples.
    pub fn parallel_form_check(&self, omega: &BilinearForm) -> bool {
        let n = self.dim();
        let m = omega.matrix();
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    let a = m.transpose().apply(&self.gamma[i][j])[k].clone();
                    let b = m.transpose().apply(&self.gamma[i][k])[j].clone();
                    if a != b {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `∇_x` is skew for the bilinear form `b` for every `x`.
    pub fn preserves_form(&self, b: &BilinearForm) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            let a = self.operator(&Vector::basis(n, i));
            let m = b.matrix();
            (&(&a.transpose() * m) + &(m * &a)).is_zero()
        })
    }

    /// `∇_x T = 0` for every `x`, with `T` an endomorphism field.
    pub fn preserves_endomorphism(&self, t: &Endomorphism) -> bool {
        let n = self.dim();
        (0..n).all(|i| self.operator(&Vector::basis(n, i)).commutator(t).is_zero())
    }

    /// `dim {x : ∇_x = 0}`.
    pub fn parallel_annihilator_dim(&self) -> usize {
        let n = self.dim();
        // x ↦ ∇_x, flattened into an n² × n matrix.
        let mut rows = vec![vec![Scalar::zero(); n]; n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    rows[j * n + k][i] = self.gamma[i][j][k].clone();
                }
            }
        }
        Matrix::from_rows(rows).nullspace().len()
    }

    /// Transport by a linear isomorphism `ξ`: `∇'_{ξx} ξy = ξ ∇_x y` on `target`.
    pub fn transport(&self, xi: &Endomorphism, target: LieAlgebra) -> Result<Connection> {
        let inv = xi.inverse()?;
        let n = self.dim();
        let pre: Vec<Vector> = (0..n).map(|i| inv.col(i)).collect();
        let gamma = (0..n)
            .map(|i| (0..n).map(|j| xi.apply(&self.nabla(&pre[i], &pre[j]))).collect())
            .collect();
        Connection::new(target, gamma)
    }

    /// Restriction to a subspace spanned by `basis` that is preserved; `None` otherwise.
    /// The result lives on `sub`, whose basis corresponds to `basis`.
    pub fn restrict(&self, basis: &[Vector], sub: LieAlgebra) -> Option<Connection> {
        let k = basis.len();
        let mut gamma = vec![vec![Vector::zeros(k); k]; k];
        for i in 0..k {
            for j in 0..k {
                let v = self.nabla(&basis[i], &basis[j]);
                gamma[i][j] = Vector(crate::core_tensor::coords_in(basis, &v)?);
            }
        }
        Connection::new(sub, gamma).ok()
    }

    pub fn to_f64(&self) -> Vec<Vec<Vec<f64>>> {
        self.gamma.iter().map(|r| r.iter().map(Vector::to_f64).collect()).collect()
    }
}

/// Levi-Civita connection of a nondegenerate metric, by the Koszul formula.
pub fn levi_civita(l: &LieAlgebra, g: &BilinearForm) -> Result<Connection> {
    if g.symmetry() != Symmetry::Symmetric {
        return Err(Error::Invariant("metric must be symmetric".into()));
    }
    let n = l.dim();
    if g.dim() != n {
        return Err(Error::Dimension { expected: n, got: g.dim() });
    }
    let ginv = g.matrix().inverse().map_err(|_| Error::Degenerate(n - g.matrix().rank()))?;
    let half = Scalar::frac(1, 2);
    let e: Vec<Vector> = (0..n).map(|i| l.basis(i)).collect();
    let mut gamma = vec![vec![Vector::zeros(n); n]; n];
    for i in 0..n {
        for j in 0..n {
            let w = Vector(
                (0..n)
                    .map(|k| {
                        let a = g.eval(l.basis_bracket(i, j), &e[k]);
                        let b = g.eval(l.basis_bracket(j, k), &e[i]);
                        let c = g.eval(l.basis_bracket(k, i), &e[j]);
                        &(&(a - b) + &c) * &half
                    })
                    .collect(),
            );
            gamma[i][j] = ginv.apply(&w);
        }
    }
    Connection::new(l.clone(), gamma)
}

/// `∇_x y = proj_-[x, y]` and `∇_y x = -proj_+[x, y]` for `x ∈ g₊`, `y ∈ g₋`.
pub fn mixed_connection_part(
    l: &LieAlgebra,
    plus: &crate::liealg::Subspace,
    minus: &crate::liealg::Subspace,
    x: &Vector,
    y: &Vector,
) -> Result<(Vector, Vector)> {
    if !plus.contains(x) || !minus.contains(y) {
        return Err(Error::InvalidArgument("vectors not in the stated factors".into()));
    }
    let (p, m) = split_projection(plus, minus, &l.bracket(x, y))?;
    Ok((m, -p))
}

/// Components of `v` along `plus ⊕ minus`.
pub fn split_projection(
    plus: &crate::liealg::Subspace,
    minus: &crate::liealg::Subspace,
    v: &Vector,
) -> Result<(Vector, Vector)> {
    let mut all = plus.vectors().to_vec();
    all.extend_from_slice(minus.vectors());
    let cs = crate::core_tensor::coords_in(&all, v)
        .ok_or_else(|| Error::InvalidArgument("plus and minus do not span the algebra".into()))?;
    let k = plus.dim();
    Ok((
        Vector::combination(&cs[..k], plus.vectors()),
        Vector::combination(&cs[k..], minus.vectors()),
    ))
}

/// `ξ` is a Lie isomorphism with `ξ ∇_x y = ∇'_{ξx} ξy` and `ω(x, y) = ω'(ξx, ξy)`.
pub fn verify_symplectic_equivalence(
    xi: &Endomorphism,
    a: (&Connection, &BilinearForm),
    b: (&Connection, &BilinearForm),
) -> Result<bool> {
    if xi.det().is_zero() {
        return Err(Error::Singular);
    }
    let (ca, wa) = a;
    let (cb, wb) = b;
    if !is_homomorphism(ca.algebra(), xi, cb.algebra()) {
        return Ok(false);
    }
    if wb.pullback(xi) != *wa {
        return Ok(false);
    }
    let n = ca.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = xi.apply(ca.on_basis(i, j));
            let rhs = cb.nabla(&xi.col(i), &xi.col(j));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Float version of [`verify_symplectic_equivalence`] for irrational witnesses.
pub fn verify_symplectic_equivalence_f64(
    xi: &[Vec<f64>],
    a: (&Connection, &BilinearForm),
    b: (&Connection, &BilinearForm),
    tol: f64,
) -> bool {
    let n = a.0.dim();
    let col = |j: usize| -> Vec<f64> { (0..n).map(|i| xi[i][j]).collect() };
    let apply = |v: &[f64]| -> Vec<f64> { (0..n).map(|i| (0..n).map(|j| xi[i][j] * v[j]).sum()).collect() };
    let ga = a.0.to_f64();
    let gb = b.0.to_f64();
    let nab = |g: &Vec<Vec<Vec<f64>>>, x: &[f64], y: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out[k] += x[i] * y[j] * g[i][j][k];
                }
            }
        }
        out
    };
    let br = |l: &LieAlgebra, x: &[f64], y: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out[k] += x[i] * y[j] * l.structure_constant(i, j, k).to_f64();
                }
            }
        }
        out
    };
    let close = |u: &[f64], v: &[f64]| u.iter().zip(v).all(|(p, q)| (p - q).abs() <= tol);
    let wa = a.1.matrix().to_f64();
    let wb = b.1.matrix().to_f64();
    for i in 0..n {
        for j in 0..n {
            let (ci, cj) = (col(i), col(j));
            let e_j: Vec<f64> = (0..n).map(|k| if k == j { 1.0 } else { 0.0 }).collect();
            let e_i: Vec<f64> = (0..n).map(|k| if k == i { 1.0 } else { 0.0 }).collect();
            if !close(&apply(&br(a.0.algebra(), &e_i, &e_j)), &br(b.0.algebra(), &ci, &cj)) {
                return false;
            }
            if !close(&apply(&ga[i][j]), &nab(&gb, &ci, &cj)) {
                return false;
            }
            let w2: f64 = (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).map(|(p, q)| ci[p] * wb[p][q] * cj[q]).sum();
            if (w2 - wa[i][j]).abs() > tol {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::named_algebra;
    use crate::scalar::{int, q};

    fn e(n: usize, i: usize) -> Vector {
        Vector::basis(n, i)
    }

    pub(crate) fn nabla0() -> Connection {
        Connection::from_entries(named_algebra("R2").unwrap(), &[(0, 0, e(2, 1))]).unwrap()
    }

    pub(crate) fn nabla1() -> Connection {
        Connection::from_entries(named_algebra("aff").unwrap(), &[(0, 0, -e(2, 0)), (0, 1, e(2, 1))]).unwrap()
    }

    pub(crate) fn nabla2() -> Connection {
        let h = q(1, 2);
        Connection::from_entries(
            named_algebra("aff").unwrap(),
            &[(0, 0, e(2, 0).scale(&-&h)), (0, 1, e(2, 1).scale(&h)), (1, 0, e(2, 1).scale(&-&h))],
        )
        .unwrap()
    }

    fn w12() -> BilinearForm {
        BilinearForm::wedge(2, 0, 1)
    }

    #[test]
    fn torsion_examples() {
        assert!(nabla0().is_torsion_free());
        assert!(Connection::zero(named_algebra("R4").unwrap()).is_torsion_free());
        let t = Connection::zero(named_algebra("aff").unwrap()).torsion();
        assert_eq!(t[(0, 1, 1)], int(-1));
        assert_eq!(t[(0, 1, 0)], int(0));
    }

    #[test]
    fn curvature_examples() {
        let r2 = named_algebra("R2").unwrap();
        let c = Connection::from_entries(r2, &[(0, 1, e(2, 0)), (1, 0, e(2, 0))]).unwrap();
        let r = c.curvature(&e(2, 0), &e(2, 1));
        assert_eq!(r.apply(&e(2, 1)), -e(2, 0));
        assert!(!c.is_flat());
        for n in [nabla0(), nabla1(), nabla2()] {
            assert!(n.is_flat() && n.is_torsion_free());
        }
    }

    #[test]
    fn parallel_form_examples() {
        assert!(nabla0().parallel_form_check(&w12()));
        assert!(Connection::zero(named_algebra("R2").unwrap()).parallel_form_check(&w12()));
        let fam_a = Connection::from_entries(named_algebra("R2").unwrap(), &[(0, 0, e(2, 1).scale(&int(3)))]).unwrap();
        assert!(fam_a.parallel_form_check(&w12().scale(&int(2))));
        let bent = Connection::from_entries(
            named_algebra("R2").unwrap(),
            &[(0, 0, Vector::from_ints(&[1, 3]))],
        )
        .unwrap();
        assert!(!bent.parallel_form_check(&w12()));
    }

    #[test]
    fn levi_civita_examples() {
        let r4 = named_algebra("R4").unwrap();
        let d = BilinearForm::symmetric(Matrix::diag(&[int(1), int(1), int(-1), int(-1)])).unwrap();
        let lc = levi_civita(&r4, &d).unwrap();
        assert_eq!(lc, Connection::zero(r4));
        let g1 = named_algebra("g1h").unwrap();
        let g = BilinearForm::symmetric(Matrix::diag(&[int(1), int(2), int(-1), int(3)])).unwrap();
        let lc = levi_civita(&g1, &g).unwrap();
        assert!(lc.is_torsion_free());
        assert!(lc.preserves_form(&g));
        let deg = BilinearForm::symmetric(Matrix::diag(&[int(1), int(0), int(1), int(1)])).unwrap();
        assert_eq!(levi_civita(&g1, &deg), Err(Error::Degenerate(1)));
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(nabla1().parallel_annihilator_dim(), 1);
        assert_eq!(nabla2().parallel_annihilator_dim(), 0);
        assert_eq!(Connection::zero(named_algebra("R2").unwrap()).parallel_annihilator_dim(), 2);
    }

    #[test]
    fn symplectic_equivalence_examples() {
        let fam_a = Connection::from_entries(named_algebra("R2").unwrap(), &[(0, 0, e(2, 1).scale(&int(8)))]).unwrap();
        let xi = Matrix::diag(&[int(2), q(1, 2)]);
        assert!(verify_symplectic_equivalence(&xi, (&fam_a, &w12()), (&nabla0(), &w12())).unwrap());
        let id = Matrix::identity(2);
        assert!(verify_symplectic_equivalence(&id, (&nabla1(), &w12()), (&nabla1(), &w12())).unwrap());
        let aff = named_algebra("aff").unwrap();
        let fam = Connection::from_entries(aff, &[(0, 0, Vector::from_ints(&[-1, 2])), (0, 1, e(2, 1))]).unwrap();
        let shear = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(1), int(1)]]);
        assert!(verify_symplectic_equivalence(&shear, (&fam, &w12()), (&nabla1(), &w12())).unwrap());
        assert!(!verify_symplectic_equivalence(&id, (&nabla1(), &w12()), (&nabla2(), &w12())).unwrap());
        assert_eq!(
            verify_symplectic_equivalence(&Matrix::zeros(2, 2), (&nabla1(), &w12()), (&nabla1(), &w12())),
            Err(Error::Singular)
        );
    }

    #[test]
    fn float_equivalence_matches_exact() {
        let fam_a = Connection::from_entries(named_algebra("R2").unwrap(), &[(0, 0, e(2, 1).scale(&int(2)))]).unwrap();
        let r = 2f64.cbrt();
        let xi = vec![vec![r, 0.0], vec![0.0, 1.0 / r]];
        assert!(verify_symplectic_equivalence_f64(&xi, (&fam_a, &w12()), (&nabla0(), &w12()), 1e-12));
        let bad = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(!verify_symplectic_equivalence_f64(&bad, (&fam_a, &w12()), (&nabla0(), &w12()), 1e-12));
    }

    #[test]
    fn mixed_part_examples() {
        use crate::liealg::Subspace;
        // ℝ² ⋈ ℝ² with the only bracket [e1, f1] = f2 (basis e1, e2, f1, f2).
        let l = crate::liealg::LieAlgebra::from_brackets(&["e1", "e2", "f1", "f2"], &[(0, 2, e(4, 3))]).unwrap();
        let plus = Subspace::new(4, vec![e(4, 0), e(4, 1)]).unwrap();
        let minus = Subspace::new(4, vec![e(4, 2), e(4, 3)]).unwrap();
        let (a, b) = mixed_connection_part(&l, &plus, &minus, &e(4, 0), &e(4, 2)).unwrap();
        assert_eq!(a, e(4, 3));
        assert!(b.is_zero());
        let ab = named_algebra("R4").unwrap();
        let (a, b) = mixed_connection_part(&ab, &plus, &minus, &e(4, 1), &e(4, 3)).unwrap();
        assert!(a.is_zero() && b.is_zero());
        assert!(mixed_connection_part(&l, &plus, &minus, &e(4, 2), &e(4, 2)).is_err());
    }
}
