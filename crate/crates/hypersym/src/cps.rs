//! Complex, product and complex product structures.

use crate::core_tensor::{BilinearForm, Endomorphism, Matrix, Vector};
use crate::error::{Error, Result};
use crate::liealg::{is_subalgebra, LieAlgebra, Subspace};
use crate::scalar::Scalar;

fn square_is(m: &Matrix, sign: i64) -> bool {
    let n = m.rows();
    m * m == Matrix::identity(n).scale(&Scalar::int(sign))
}

/// Basis pairs where `J[X,Y] = [JX,Y] + [X,JY] + J[JX,JY]` fails.
pub fn complex_integrability_failures(l: &LieAlgebra, j: &Endomorphism) -> Vec<(usize, usize)> {
    nijenhuis_failures(l, j, 1)
}

/// Basis pairs where `E[X,Y] = [EX,Y] + [X,EY] - E[EX,EY]` fails.
pub fn product_integrability_failures(l: &LieAlgebra, e: &Endomorphism) -> Vec<(usize, usize)> {
    nijenhuis_failures(l, e, -1)
}

fn nijenhuis_failures(l: &LieAlgebra, t: &Endomorphism, sign: i64) -> Vec<(usize, usize)> {
    let n = l.dim();
    let sg = Scalar::int(sign);
    let mut bad = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (x, y) = (l.basis(a), l.basis(b));
            let (tx, ty) = (t.col(a), t.col(b));
            let lhs = t.apply(l.basis_bracket(a, b));
            let rhs = &(&l.bracket(&tx, &y) + &l.bracket(&x, &ty)) + &t.apply(&l.bracket(&tx, &ty)).scale(&sg);
            if lhs != rhs {
                bad.push((a, b));
            }
        }
    }
    bad
}

pub fn is_complex_structure(l: &LieAlgebra, j: &Endomorphism) -> Result<bool> {
    if j.rows() != l.dim() || !j.is_square() {
        return Err(Error::Dimension { expected: l.dim(), got: j.rows() });
    }
    if !square_is(j, -1) {
        return Err(Error::Invariant("J^2 != -Id".into()));
    }
    Ok(complex_integrability_failures(l, j).is_empty())
}

pub fn is_product_structure(l: &LieAlgebra, e: &Endomorphism) -> Result<bool> {
    if e.rows() != l.dim() || !e.is_square() {
        return Err(Error::Dimension { expected: l.dim(), got: e.rows() });
    }
    if !square_is(e, 1) {
        return Err(Error::Invariant("E^2 != Id".into()));
    }
    let n = l.dim();
    if *e == Matrix::identity(n) || *e == -Matrix::identity(n) {
        return Err(Error::Invariant("E = ±Id".into()));
    }
    Ok(product_integrability_failures(l, e).is_empty())
}

/// Basis of the `λ`-eigenspace of `t`.
pub fn eigenspace(t: &Endomorphism, lambda: i64) -> Vec<Vector> {
    let n = t.rows();
    (t - &Matrix::identity(n).scale(&Scalar::int(lambda))).nullspace()
}

/// An algebraic complex product structure `{J, E}`: `J² = -1`, `E² = 1`, `JE = -EJ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CPStructure {
    algebra: LieAlgebra,
    j: Endomorphism,
    e: Endomorphism,
}

impl CPStructure {
    pub fn new(algebra: LieAlgebra, j: Endomorphism, e: Endomorphism) -> Result<Self> {
        let n = algebra.dim();
        for m in [&j, &e] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Dimension { expected: n, got: m.rows() });
            }
        }
        if !square_is(&j, -1) {
            return Err(Error::Invariant("J^2 != -Id".into()));
        }
        if !square_is(&e, 1) {
            return Err(Error::Invariant("E^2 != Id".into()));
        }
        if e == Matrix::identity(n) || e == -Matrix::identity(n) {
            return Err(Error::Invariant("E = ±Id".into()));
        }
        if &j * &e != -(&e * &j) {
            return Err(Error::Invariant("JE != -EJ".into()));
        }
        Ok(CPStructure { algebra, j, e })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn j(&self) -> &Endomorphism {
        &self.j
    }

    pub fn e(&self) -> &Endomorphism {
        &self.e
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn is_integrable(&self) -> bool {
        complex_integrability_failures(&self.algebra, &self.j).is_empty()
            && product_integrability_failures(&self.algebra, &self.e).is_empty()
    }

    /// Same structure in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix, labels: Vec<String>) -> Result<Self> {
        let inv = p.inverse()?;
        let alg = self.algebra.change_basis(p, labels)?;
        CPStructure::new(alg, &(&inv * &self.j) * p, &(&inv * &self.e) * p)
    }

    /// Push forward along an isomorphism `ξ` onto `target`.
    pub fn transport(&self, xi: &Matrix, target: LieAlgebra) -> Result<Self> {
        let inv = xi.inverse()?;
        CPStructure::new(target, &(xi * &self.j) * &inv, &(xi * &self.e) * &inv)
    }
}

/// `g = g₊ ⊕ g₋`, with the `minus` basis equal to `J` applied to the `plus` basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Splitting {
    pub plus: Subspace,
    pub minus: Subspace,
}

impl Splitting {
    pub fn same_as(&self, o: &Splitting) -> bool {
        self.plus.same_as(&o.plus) && self.minus.same_as(&o.minus)
    }

    /// Columns: plus basis then minus basis.
    pub fn adapted_basis(&self) -> Matrix {
        let mut cols = self.plus.vectors().to_vec();
        cols.extend_from_slice(self.minus.vectors());
        Matrix::from_cols(&cols)
    }
}

pub fn split(cp: &CPStructure) -> Result<Splitting> {
    let l = cp.algebra();
    let jf = complex_integrability_failures(l, cp.j());
    if let Some((a, b)) = jf.first() {
        return Err(Error::Integrability(format!("complex structure fails on (e{a}, e{b})")));
    }
    let ef = product_integrability_failures(l, cp.e());
    if let Some((a, b)) = ef.first() {
        return Err(Error::Integrability(format!("product structure fails on (e{a}, e{b})")));
    }
    let n = cp.dim();
    let plus = eigenspace(cp.e(), 1);
    let minus_e = Subspace::new(n, eigenspace(cp.e(), -1))?;
    let minus: Vec<Vector> = plus.iter().map(|v| cp.j().apply(v)).collect();
    let minus = Subspace::new(n, minus)?;
    if !minus.same_as(&minus_e) {
        return Err(Error::Invariant("J(g+) != g-".into()));
    }
    Ok(Splitting { plus: Subspace::new(n, plus)?, minus })
}

/// Subalgebra test on the two eigenspaces of `E`.
pub fn eigenspaces_are_subalgebras(l: &LieAlgebra, e: &Endomorphism) -> Result<(bool, bool)> {
    let n = l.dim();
    let p = Subspace::new(n, eigenspace(e, 1))?;
    let m = Subspace::new(n, eigenspace(e, -1))?;
    Ok((is_subalgebra(l, &p), is_subalgebra(l, &m)))
}

/// Basis of the symmetric `G` with `JᵀGJ = G` and `EᵀGE = -G`.
pub fn compatible_metric_space(cp: &CPStructure) -> Vec<BilinearForm> {
    compatible_metric_space_raw(cp.j(), cp.e())
}

pub(crate) fn compatible_metric_space_raw(j: &Matrix, e: &Matrix) -> Vec<BilinearForm> {
    let n = j.rows();
    let mut unknowns = Vec::new();
    for p in 0..n {
        for q in p..n {
            unknowns.push((p, q));
        }
    }
    let jt = j.transpose();
    let et = e.transpose();
    let mut cols: Vec<Vector> = Vec::with_capacity(unknowns.len());
    for &(p, q) in &unknowns {
        let mut g = Matrix::zeros(n, n);
        g[(p, q)] = Scalar::one();
        g[(q, p)] = Scalar::one();
        let r1 = &(&(&jt * &g) * j) - &g;
        let r2 = &(&(&et * &g) * e) + &g;
        let mut col: Vec<Scalar> = Vec::with_capacity(2 * n * n);
        col.extend(r1.entries().map(|(_, _, x)| x.clone()));
        col.extend(r2.entries().map(|(_, _, x)| x.clone()));
        cols.push(Vector(col));
    }
    let sys = Matrix::from_cols(&cols);
    sys.nullspace()
        .into_iter()
        .map(|v| {
            let mut g = Matrix::zeros(n, n);
            for (k, &(p, q)) in unknowns.iter().enumerate() {
                g[(p, q)] = v[k].clone();
                g[(q, p)] = v[k].clone();
            }
            BilinearForm::symmetric(g).expect("symmetric by construction")
        })
        .collect()
}

pub fn is_compatible(cp: &CPStructure, g: &BilinearForm) -> bool {
    let m = g.matrix();
    &(&cp.j().transpose() * m) * cp.j() == *m && &(&cp.e().transpose() * m) * cp.e() == -m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::named_algebra;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_int_rows(rows)
    }

    fn r4_je() -> (Matrix, Matrix) {
        let j = m(&[&[0, 0, -1, 0], &[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let e = m(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]);
        (j, e)
    }

    #[test]
    fn abelian_any_j() {
        let r4 = named_algebra("R4").unwrap();
        let (j, e) = r4_je();
        assert!(is_complex_structure(&r4, &j).unwrap());
        assert!(is_product_structure(&r4, &e).unwrap());
        let bad = m(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(is_complex_structure(&r4, &bad).is_err());
        assert!(is_product_structure(&r4, &bad).is_err());
    }

    #[test]
    fn j1_shape_on_g2h_fails() {
        let g2 = named_algebra("g2h").unwrap();
        // v0 ↦ v1 ↦ -v0, v2 ↦ v3 ↦ -v2
        let j = m(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        assert!(!is_complex_structure(&g2, &j).unwrap());
        assert!(complex_integrability_failures(&g2, &j).contains(&(0, 2)));
    }

    #[test]
    fn product_structure_witnesses() {
        let g0 = named_algebra("h3R").unwrap();
        // +1 on span{v1, v2}, -1 on span{v0, v3}
        let e = Matrix::diag(&[Scalar::int(-1), Scalar::int(1), Scalar::int(1), Scalar::int(-1)]);
        assert!(!is_product_structure(&g0, &e).unwrap());
        assert_eq!(eigenspaces_are_subalgebras(&g0, &e).unwrap(), (false, true));
        // +1 on span{v0, v1}, -1 on span{v2, v3}
        let e2 = Matrix::diag(&[Scalar::int(1), Scalar::int(1), Scalar::int(-1), Scalar::int(-1)]);
        assert!(is_product_structure(&g0, &e2).unwrap());
        assert_eq!(eigenspaces_are_subalgebras(&g0, &e2).unwrap(), (true, true));
    }

    #[test]
    fn construction_checks_identities() {
        let r4 = named_algebra("R4").unwrap();
        let (j, e) = r4_je();
        assert!(CPStructure::new(r4.clone(), j.clone(), e.clone()).is_ok());
        assert!(CPStructure::new(r4.clone(), e.clone(), e.clone()).is_err());
        assert!(CPStructure::new(r4.clone(), j.clone(), Matrix::identity(4)).is_err());
        let e_comm = m(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]]);
        assert!(matches!(CPStructure::new(r4, j, e_comm), Err(Error::Invariant(s)) if s.contains("JE")));
    }

    #[test]
    fn r4_split_and_metrics() {
        let r4 = named_algebra("R4").unwrap();
        let (j, e) = r4_je();
        let cp = CPStructure::new(r4, j, e).unwrap();
        let sp = split(&cp).unwrap();
        let first_two = Subspace::new(4, vec![Vector::basis(4, 0), Vector::basis(4, 1)]).unwrap();
        assert!(sp.plus.same_as(&first_two));
        let ms = compatible_metric_space(&cp);
        assert_eq!(ms.len(), 1);
        assert!(is_compatible(&cp, &ms[0]));
        let diag = BilinearForm::symmetric(Matrix::diag(&[1, 1, -1, -1].map(Scalar::int))).unwrap();
        assert!(!is_compatible(&cp, &diag));
    }
}
