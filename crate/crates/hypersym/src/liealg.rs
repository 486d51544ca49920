//! Lie algebras given by structure constants.

use serde::Serialize;

use crate::core_tensor::{coords_in, rank_of, Endomorphism, Matrix, Vector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `brackets[i][j] = [e_i, e_j]`, stored densely.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    labels: Vec<String>,
    brackets: Vec<Vec<Vector>>,
}

impl LieAlgebra {
    pub fn abelian(labels: &[&str]) -> Self {
        let n = labels.len();
        LieAlgebra {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            brackets: vec![vec![Vector::zeros(n); n]; n],
        }
    }

    /// Build from the brackets `[e_i, e_j] = v` with `i < j`; antisymmetry fills the rest.
    pub fn from_brackets(labels: &[&str], table: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut l = Self::abelian(labels);
        let n = l.dim();
        for (i, j, v) in table {
            if *i >= n || *j >= n || v.len() != n {
                return Err(Error::Dimension { expected: n, got: v.len().max(*i).max(*j) });
            }
            if i == j && !v.is_zero() {
                return Err(Error::Invariant(format!("[e{i}, e{i}] must vanish")));
            }
            l.brackets[*i][*j] = v.clone();
            l.brackets[*j][*i] = -v;
        }
        Ok(l)
    }

    /// Build from a full table, rejecting it unless antisymmetric.
    pub fn from_table(labels: Vec<String>, brackets: Vec<Vec<Vector>>) -> Result<Self> {
        let n = labels.len();
        if brackets.len() != n || brackets.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Dimension { expected: n, got: brackets.len() });
        }
        for i in 0..n {
            for j in 0..n {
                if brackets[i][j] != -&brackets[j][i] {
                    return Err(Error::Invariant(format!("brackets not antisymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(LieAlgebra { labels, brackets })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::basis(self.dim(), i)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.brackets[i][j]
    }

    /// `c^k_{ij}`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.brackets[i][j][k]
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().flatten().all(Vector::is_zero)
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n, "dimension mismatch in bracket");
        let mut out = Vector::zeros(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let b = &self.brackets[i][j];
                if b.is_zero() {
                    continue;
                }
                let k = &x[i] * &y[j];
                for (o, bk) in out.0.iter_mut().zip(&b.0) {
                    if !bk.is_zero() {
                        *o += &k * bk;
                    }
                }
            }
        }
        out
    }

    pub fn try_bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(Error::Dimension { expected: self.dim(), got: v.len() });
            }
        }
        Ok(self.bracket(x, y))
    }

    /// `ad_x`, with column `j` equal to `[x, e_j]`.
    pub fn ad(&self, x: &Vector) -> Endomorphism {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.bracket(x, &self.basis(j))).collect();
        Matrix::from_cols(&cols)
    }

    /// Basis triples where the cyclic Jacobi sum is nonzero.
    pub fn check_jacobi(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let s = &(&self.bracket(&x, &self.bracket(&y, &z)) + &self.bracket(&y, &self.bracket(&z, &x)))
                        + &self.bracket(&z, &self.bracket(&x, &y));
                    if !s.is_zero() {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    /// Same algebra expressed in a new basis: column `j` of `p` is the new `e_j` in old coordinates.
    pub fn change_basis(&self, p: &Matrix, labels: Vec<String>) -> Result<Self> {
        let inv = p.inverse()?;
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| p.col(j)).collect();
        let mut br = vec![vec![Vector::zeros(n); n]; n];
        for i in 0..n {
            for j in 0..n {
                br[i][j] = inv.apply(&self.bracket(&cols[i], &cols[j]));
            }
        }
        LieAlgebra::from_table(labels, br)
    }

    /// Nonzero brackets `(i, j, [e_i, e_j])` with `i < j`.
    pub fn sparse_brackets(&self) -> Vec<(usize, usize, Vector)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.brackets[i][j].is_zero() {
                    out.push((i, j, self.brackets[i][j].clone()));
                }
            }
        }
        out
    }
}

/// `true` iff `p[x, y] = [p x, p y]` on all basis pairs.
pub fn verify_basis_change(src: &LieAlgebra, p: &Endomorphism, dst: &LieAlgebra) -> Result<bool> {
    if src.dim() != dst.dim() || p.rows() != dst.dim() || p.cols() != src.dim() {
        return Err(Error::Dimension { expected: src.dim(), got: dst.dim() });
    }
    if p.det().is_zero() {
        return Err(Error::Singular);
    }
    Ok(is_homomorphism(src, p, dst))
}

pub(crate) fn is_homomorphism(src: &LieAlgebra, p: &Matrix, dst: &LieAlgebra) -> bool {
    let n = src.dim();
    let img: Vec<Vector> = (0..n).map(|j| p.col(j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = p.apply(src.basis_bracket(i, j));
            let rhs = dst.bracket(&img[i], &img[j]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Names accepted by [`named_algebra`].
pub const NAMED_ALGEBRAS: [&str; 6] = ["R2", "R4", "aff", "h3R", "g1h", "g2h"];

/// Catalog algebras. The four-dimensional ones use the basis `v0, v1, v2, v3` in label order.
pub fn named_algebra(name: &str) -> Result<LieAlgebra> {
    let v = |xs: &[i64]| Vector::from_ints(xs);
    let hl = ["v0", "v1", "v2", "v3"];
    match name {
        "R2" => Ok(LieAlgebra::abelian(&["e1", "e2"])),
        "R4" => Ok(LieAlgebra::abelian(&["e1", "e2", "e3", "e4"])),
        "aff" => LieAlgebra::from_brackets(&["e1", "e2"], &[(0, 1, v(&[0, 1]))]),
        "h3R" | "g0h" => LieAlgebra::from_brackets(&hl, &[(1, 2, v(&[0, 0, 0, 1]))]),
        "g1h" => LieAlgebra::from_brackets(
            &hl,
            &[(0, 1, v(&[0, 1, 0, 0])), (0, 2, v(&[0, 0, -1, 0])), (0, 3, v(&[0, 0, 0, -1]))],
        ),
        "g2h" => LieAlgebra::from_brackets(
            &hl,
            &[
                (0, 1, v(&[0, 2, 0, 0])),
                (0, 2, v(&[0, 0, -1, 0])),
                (0, 3, v(&[0, 0, 0, 1])),
                (1, 2, v(&[0, 0, 0, 1])),
            ],
        ),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub center_dim: usize,
    pub unimodular: bool,
}

impl Invariants {
    pub fn is_abelian(&self) -> bool {
        self.derived_series_dims.get(1) == Some(&0) || self.derived_series_dims == [0]
    }

    /// Nilpotency class, if nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        (*self.lower_central_dims.last()? == 0).then(|| self.lower_central_dims.len() - 1)
    }

    /// Derived length, if solvable.
    pub fn solvable_step(&self) -> Option<usize> {
        (*self.derived_series_dims.last()? == 0).then(|| self.derived_series_dims.len() - 1)
    }
}

fn span_basis(vs: Vec<Vector>) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vs {
        if v.is_zero() {
            continue;
        }
        let mut cand = out.clone();
        cand.push(v);
        if rank_of(&cand) == cand.len() {
            out = cand;
        }
    }
    out
}

fn bracket_span(l: &LieAlgebra, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let mut vs = Vec::new();
    for x in a {
        for y in b {
            vs.push(l.bracket(x, y));
        }
    }
    span_basis(vs)
}

pub fn invariants(l: &LieAlgebra) -> Invariants {
    let n = l.dim();
    let full: Vec<Vector> = (0..n).map(|i| l.basis(i)).collect();

    let mut derived = vec![n];
    let mut cur = full.clone();
    loop {
        let next = bracket_span(l, &cur, &cur);
        if next.len() == cur.len() {
            break;
        }
        derived.push(next.len());
        if next.is_empty() {
            break;
        }
        cur = next;
    }

    let mut lower = vec![n];
    let mut cur = full.clone();
    loop {
        let next = bracket_span(l, &full, &cur);
        if next.len() == cur.len() {
            break;
        }
        lower.push(next.len());
        if next.is_empty() {
            break;
        }
        cur = next;
    }

    // Center: x with [x, e_j] = 0 for all j, i.e. the common kernel of the maps x ↦ [x, e_j].
    let mut rows = Vec::new();
    for j in 0..n {
        let m = Matrix::from_cols(&(0..n).map(|i| l.basis_bracket(i, j).clone()).collect::<Vec<_>>());
        rows.extend(m.row_vecs());
    }
    let center_dim = if rows.is_empty() { n } else { Matrix::from_rows(rows).nullspace().len() };

    let unimodular = (0..n).all(|i| l.ad(&l.basis(i)).trace().is_zero());
    Invariants { derived_series_dims: derived, lower_central_dims: lower, center_dim, unimodular }
}

/// A linear subspace given by independent spanning vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    vectors: Vec<Vector>,
    ambient: usize,
}

impl Subspace {
    pub fn new(ambient: usize, vectors: Vec<Vector>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::Dimension { expected: ambient, got: v.len() });
        }
        if rank_of(&vectors) != vectors.len() {
            return Err(Error::Invariant("spanning vectors are linearly dependent".into()));
        }
        Ok(Subspace { vectors, ambient })
    }

    pub fn full(n: usize) -> Self {
        Subspace { vectors: (0..n).map(|i| Vector::basis(n, i)).collect(), ambient: n }
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn contains(&self, v: &Vector) -> bool {
        coords_in(&self.vectors, v).is_some()
    }

    pub fn coords(&self, v: &Vector) -> Option<Vec<Scalar>> {
        coords_in(&self.vectors, v)
    }

    pub fn same_as(&self, o: &Subspace) -> bool {
        self.dim() == o.dim() && o.vectors.iter().all(|v| self.contains(v))
    }
}

pub fn is_subalgebra(l: &LieAlgebra, s: &Subspace) -> bool {
    let vs = s.vectors();
    for (i, x) in vs.iter().enumerate() {
        for y in &vs[i + 1..] {
            if !s.contains(&l.bracket(x, y)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: usize, i: usize) -> Vector {
        Vector::basis(n, i)
    }

    #[test]
    fn bracket_examples() {
        let g0 = named_algebra("h3R").unwrap();
        assert_eq!(g0.bracket(&b(4, 1), &b(4, 2)), b(4, 3));
        let aff = named_algebra("aff").unwrap();
        assert_eq!(aff.bracket(&b(2, 1), &b(2, 0)), -b(2, 1));
        let x = Vector::from_ints(&[3, -1, 2, 5]);
        for name in ["g1h", "g2h", "h3R"] {
            assert!(named_algebra(name).unwrap().bracket(&x, &x).is_zero());
        }
        assert!(g0.try_bracket(&b(3, 0), &b(4, 0)).is_err());
    }

    #[test]
    fn jacobi_examples() {
        for name in NAMED_ALGEBRAS {
            assert!(named_algebra(name).unwrap().check_jacobi().is_empty(), "{name}");
        }
        // [e2,e3] = e1, [e1,e3] = e2, [e1,e2] = e3 is a real form of sl2.
        let sl2 = LieAlgebra::from_brackets(
            &["e1", "e2", "e3"],
            &[(1, 2, b(3, 0)), (0, 2, b(3, 1)), (0, 1, b(3, 2))],
        )
        .unwrap();
        assert!(sl2.check_jacobi().is_empty());
        // [e1,e2] = e3, [e2,e3] = e2: the cyclic sum on (e1,e2,e3) is e3.
        let bad = LieAlgebra::from_brackets(&["e1", "e2", "e3"], &[(0, 1, b(3, 2)), (1, 2, b(3, 1))]).unwrap();
        assert_eq!(bad.check_jacobi(), vec![(0, 1, 2)]);
    }

    #[test]
    fn named_tables() {
        let g1 = named_algebra("g1h").unwrap();
        assert_eq!(g1.bracket(&b(4, 0), &b(4, 1)), b(4, 1));
        assert_eq!(g1.bracket(&b(4, 0), &b(4, 2)), -b(4, 2));
        assert_eq!(g1.bracket(&b(4, 0), &b(4, 3)), -b(4, 3));
        assert!(named_algebra("R4").unwrap().is_abelian());
        let g2 = named_algebra("g2h").unwrap();
        assert_eq!(g2.bracket(&b(4, 0), &b(4, 1)), b(4, 1).scale(&Scalar::int(2)));
        assert_eq!(g2.bracket(&b(4, 1), &b(4, 2)), b(4, 3));
        assert!(named_algebra("sl2").is_err());
    }

    #[test]
    fn basis_change_examples() {
        let g1 = named_algebra("g1h").unwrap();
        assert!(verify_basis_change(&g1, &Matrix::identity(4), &g1).unwrap());
        let swap = Matrix::permutation(&[1, 0, 2, 3]);
        assert!(!verify_basis_change(&g1, &swap, &g1).unwrap());
        let sing = Matrix::zeros(4, 4);
        assert_eq!(verify_basis_change(&g1, &sing, &g1), Err(Error::Singular));
    }

    #[test]
    fn invariants_examples() {
        let i0 = invariants(&named_algebra("h3R").unwrap());
        assert_eq!(i0.nilpotency_class(), Some(2));
        assert!(i0.unimodular);
        assert_eq!(i0.center_dim, 2);
        let i2 = invariants(&named_algebra("g2h").unwrap());
        assert_eq!(i2.solvable_step(), Some(3));
        assert_eq!(i2.nilpotency_class(), None);
        assert!(!i2.unimodular);
        let i1 = invariants(&named_algebra("g1h").unwrap());
        assert_eq!(i1.solvable_step(), Some(2));
        assert!(!i1.unimodular);
        let r4 = invariants(&named_algebra("R4").unwrap());
        assert!(r4.is_abelian() && r4.unimodular && r4.center_dim == 4);
    }

    #[test]
    fn subalgebra_examples() {
        let g0 = named_algebra("h3R").unwrap();
        let s = Subspace::new(4, vec![b(4, 0), b(4, 1)]).unwrap();
        assert!(is_subalgebra(&g0, &s));
        assert!(is_subalgebra(&g0, &Subspace::full(4)));
        let t = Subspace::new(4, vec![b(4, 1), b(4, 2)]).unwrap();
        assert!(!is_subalgebra(&g0, &t));
        assert!(Subspace::new(4, vec![b(4, 1), b(4, 1)]).is_err());
    }
}
