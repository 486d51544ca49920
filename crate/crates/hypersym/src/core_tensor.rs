//! Vectors, matrices, bilinear and trilinear forms over exact rationals.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![Scalar::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| Scalar::int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, k: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn dot(&self, o: &Vector) -> Scalar {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Scalar::to_f64).collect()
    }

    /// Linear combination `Σ k_i v_i`.
    pub fn combination(coeffs: &[Scalar], vs: &[Vector]) -> Vector {
        let n = vs.first().map_or(0, Vector::len);
        let mut out = Vector::zeros(n);
        for (k, v) in coeffs.iter().zip(vs) {
            if k.is_zero() {
                continue;
            }
            for (o, x) in out.0.iter_mut().zip(&v.0) {
                *o += k * x;
            }
        }
        out
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl<'b> Add<&'b Vector> for &Vector {
    type Output = Vector;
    fn add(self, o: &'b Vector) -> Vector {
        Vector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl<'b> Sub<&'b Vector> for &Vector {
    type Output = Vector;
    fn sub(self, o: &'b Vector) -> Vector {
        Vector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, o: Vector) -> Vector {
        &self + &o
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(self, o: Vector) -> Vector {
        &self - &o
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        -&self
    }
}

/// Dense row-major matrix. As an endomorphism, column `j` is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

pub type Endomorphism = Matrix;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect())
    }

    pub fn from_cols(cols: &[Vector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vector::len);
        let mut m = Self::zeros(r, c);
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), r, "ragged columns");
            for i in 0..r {
                m[(i, j)] = v[i].clone();
            }
        }
        m
    }

    pub fn diag(d: &[Scalar]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    /// Permutation matrix with `P e_k = e_{perm[k]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (k, &p) in perm.iter().enumerate() {
            m[(p, k)] = Scalar::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn col(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).0).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in apply");
        Vector(
            (0..self.rows)
                .map(|i| {
                    let mut acc = Scalar::zero();
                    for j in 0..self.cols {
                        let a = &self[(i, j)];
                        if !a.is_zero() && !v[j].is_zero() {
                            acc += a * &v[j];
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        let c = self.cols;
        self.data.iter().enumerate().map(move |(k, x)| (k / c, k % c, x))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].to_f64()).collect()).collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip().expect("nonzero pivot");
            for j in c..m.cols {
                let x = &m[(r, j)] * &inv;
                m[(r, j)] = x;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let x = &m[(i, j)] - &(&f * &m[(r, j)]);
                    m[(i, j)] = x;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = Vector::zeros(self.cols);
                v[f] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "det of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let x = &m[(i, j)] - &(&f * &m[(c, j)]);
                    m[(i, j)] = x;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, o: &Matrix) -> Matrix {
        &(self * o) - &(o * self)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl<'b> Mul<&'b Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &'b Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        m
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, o: Matrix) -> Matrix {
        &self * &o
    }
}

impl<'b> Add<&'b Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, o: &'b Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'b> Sub<&'b Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &'b Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Add for Matrix {
    type Output = Matrix;
    fn add(self, o: Matrix) -> Matrix {
        &self + &o
    }
}

impl Sub for Matrix {
    type Output = Matrix;
    fn sub(self, o: Matrix) -> Matrix {
        &self - &o
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&Scalar::int(-1))
    }
}

impl Neg for Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        -&self
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// Rank of a list of vectors.
pub fn rank_of(vs: &[Vector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    Matrix::from_cols(vs).rank()
}

/// Coordinates of `v` in the span of `basis` (linearly independent), if it lies there.
pub fn coords_in(basis: &[Vector], v: &Vector) -> Option<Vec<Scalar>> {
    let k = basis.len();
    let mut cols = basis.to_vec();
    cols.push(v.clone());
    let (r, pivots) = Matrix::from_cols(&cols).rref();
    if pivots.contains(&k) {
        return None;
    }
    let mut out = vec![Scalar::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        out[p] = r[(row, k)].clone();
    }
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

/// `M[i][j] = B(e_i, e_j)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm {
    matrix: Matrix,
    symmetry: Symmetry,
}

impl BilinearForm {
    pub fn new(matrix: Matrix, symmetry: Symmetry) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension { expected: matrix.rows(), got: matrix.cols() });
        }
        let t = matrix.transpose();
        let ok = match symmetry {
            Symmetry::Symmetric => t == matrix,
            Symmetry::Antisymmetric => t == -&matrix,
        };
        if !ok {
            return Err(Error::Invariant(format!("matrix is not {symmetry:?}")));
        }
        Ok(BilinearForm { matrix, symmetry })
    }

    pub fn symmetric(matrix: Matrix) -> Result<Self> {
        Self::new(matrix, Symmetry::Symmetric)
    }

    pub fn antisymmetric(matrix: Matrix) -> Result<Self> {
        Self::new(matrix, Symmetry::Antisymmetric)
    }

    /// `e^i ∧ e^j` as an antisymmetric form.
    pub fn wedge(n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        m[(i, j)] = Scalar::one();
        m[(j, i)] = Scalar::int(-1);
        BilinearForm { matrix: m, symmetry: Symmetry::Antisymmetric }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Scalar {
        x.dot(&self.matrix.apply(y))
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.matrix[(i, j)]
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        BilinearForm { matrix: self.matrix.scale(k), symmetry: self.symmetry }
    }

    /// `(x, y) ↦ B(P x, P y)`.
    pub fn pullback(&self, p: &Matrix) -> Self {
        BilinearForm { matrix: &(&p.transpose() * &self.matrix) * p, symmetry: self.symmetry }
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.matrix.det().is_zero()
    }
}

/// Dense `n × n × n` tensor indexed `(i, j, k)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor3 {
    n: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 { n, data: vec![Scalar::zero(); n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn nonzero(&self) -> Vec<((usize, usize, usize), Scalar)> {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| ((k / (n * n), (k / n) % n, k % n), x.clone()))
            .collect()
    }
}

impl Index<(usize, usize, usize)> for Tensor3 {
    type Output = Scalar;
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &Scalar {
        &self.data[(i * self.n + j) * self.n + k]
    }
}

impl IndexMut<(usize, usize, usize)> for Tensor3 {
    fn index_mut(&mut self, (i, j, k): (usize, usize, usize)) -> &mut Scalar {
        &mut self.data[(i * self.n + j) * self.n + k]
    }
}

/// `(cos(θ/2), sin(θ/2))` as an exact point on the unit circle.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub struct HalfAngle {
    c: Scalar,
    s: Scalar,
}

impl HalfAngle {
    pub fn new(c: Scalar, s: Scalar) -> Result<Self> {
        if !(c.square() + s.square()).is_one() {
            return Err(Error::Invariant(format!("c^2 + s^2 != 1 for ({c}, {s})")));
        }
        Ok(HalfAngle { c, s })
    }

    /// Rational point `((1-t²)/(1+t²), 2t/(1+t²))`.
    pub fn from_tangent(t: &Scalar) -> Self {
        let d = Scalar::one() + t.square();
        HalfAngle { c: (Scalar::one() - t.square()) / d.clone(), s: (t * &Scalar::int(2)) / d }
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn s(&self) -> &Scalar {
        &self.s
    }

    pub fn full(&self) -> Angle {
        let (cos, sin) = halfangle_trig(self);
        Angle { cos, sin }
    }

    /// `n` distinct rational half-angles from the tangent map, including θ = 0 and θ = π.
    pub fn samples(n: usize) -> Vec<HalfAngle> {
        let mut out = vec![HalfAngle::new(Scalar::one(), Scalar::zero()).unwrap()];
        if n > 1 {
            out.push(HalfAngle::new(Scalar::zero(), Scalar::one()).unwrap());
        }
        let mut k = 1i64;
        while out.len() < n {
            let t = Scalar::frac(if k % 2 == 0 { -k } else { k }, 7);
            let h = HalfAngle::from_tangent(&t);
            if !out.contains(&h) {
                out.push(h);
            }
            k += 1;
        }
        out
    }
}

pub fn halfangle_trig(h: &HalfAngle) -> (Scalar, Scalar) {
    (h.c.square() - h.s.square(), &(&h.c * &h.s) * &Scalar::int(2))
}

/// `(cos θ, sin θ)` as an exact point on the unit circle.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub struct Angle {
    pub cos: Scalar,
    pub sin: Scalar,
}

impl Angle {
    pub fn new(cos: Scalar, sin: Scalar) -> Result<Self> {
        if !(cos.square() + sin.square()).is_one() {
            return Err(Error::Invariant(format!("cos^2 + sin^2 != 1 for ({cos}, {sin})")));
        }
        Ok(Angle { cos, sin })
    }

    /// Float half angle `(cos(θ/2), sin(θ/2))` with θ ∈ [0, 2π).
    pub fn half_f64(&self) -> (f64, f64) {
        let (co, si) = (self.cos.to_f64(), self.sin.to_f64());
        let c = ((1.0 + co) / 2.0).max(0.0).sqrt();
        let s = ((1.0 - co) / 2.0).max(0.0).sqrt();
        if si < 0.0 {
            (-c, s)
        } else {
            (c, s)
        }
    }
}

/// Signature `(p, q)` by symmetric Gaussian elimination.
pub fn signature(form: &BilinearForm) -> Result<(usize, usize)> {
    if form.symmetry() != Symmetry::Symmetric {
        return Err(Error::Invariant("signature needs a symmetric form".into()));
    }
    let mut m = form.matrix().clone();
    let n = m.rows();
    let (mut p, mut q) = (0, 0);
    let mut k = 0;
    while k < n {
        if m[(k, k)].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !m[(i, i)].is_zero()) {
                m.swap_rows(i, k);
                m.swap_cols(i, k);
            } else {
                let pair = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[(i, j)].is_zero());
                let Some((i, j)) = pair else {
                    return Err(Error::Degenerate(n - k));
                };
                // e_i ← e_i + e_j turns the off-diagonal pivot into 2 m_ij on the diagonal.
                for c in 0..n {
                    let x = &m[(i, c)] + &m[(j, c)];
                    m[(i, c)] = x;
                }
                for r in 0..n {
                    let x = &m[(r, i)] + &m[(r, j)];
                    m[(r, i)] = x;
                }
                m.swap_rows(i, k);
                m.swap_cols(i, k);
            }
        }
        let piv = m[(k, k)].clone();
        for r in k + 1..n {
            if m[(r, k)].is_zero() {
                continue;
            }
            let f = &m[(r, k)] / &piv;
            for c in 0..n {
                let x = &m[(r, c)] - &(&f * &m[(k, c)]);
                m[(r, c)] = x;
            }
            for c in 0..n {
                let x = &m[(c, r)] - &(&f * &m[(c, k)]);
                m[(c, r)] = x;
            }
        }
        if piv.is_positive() {
            p += 1;
        } else {
            q += 1;
        }
        k += 1;
    }
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, q};

    fn sym(rows: &[&[i64]]) -> BilinearForm {
        BilinearForm::symmetric(Matrix::from_int_rows(rows)).unwrap()
    }

    #[test]
    fn signature_examples() {
        let d = sym(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]);
        assert_eq!(signature(&d).unwrap(), (2, 2));
        assert_eq!(signature(&BilinearForm::symmetric(Matrix::identity(4)).unwrap()).unwrap(), (4, 0));
        let a = sym(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]]);
        assert_eq!(signature(&a).unwrap(), (2, 2));
    }

    #[test]
    fn signature_degenerate_names_radical() {
        let d = sym(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(signature(&d), Err(Error::Degenerate(2)));
    }

    #[test]
    fn halfangle_examples() {
        let h = |c, s| HalfAngle::new(c, s).unwrap();
        assert_eq!(halfangle_trig(&h(int(1), int(0))), (int(1), int(0)));
        assert_eq!(halfangle_trig(&h(int(0), int(1))), (int(-1), int(0)));
        assert_eq!(halfangle_trig(&h(q(3, 5), q(4, 5))), (q(-7, 25), q(24, 25)));
        assert!(HalfAngle::new(q(1, 2), q(1, 2)).is_err());
    }

    #[test]
    fn halfangle_samples_distinct() {
        let hs = HalfAngle::samples(20);
        assert_eq!(hs.len(), 20);
        for (i, a) in hs.iter().enumerate() {
            assert!(hs[i + 1..].iter().all(|b| b != a));
        }
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_int_rows(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        assert_eq!(m.det(), int(5));
        let s = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert!(s.det().is_zero());
    }

    #[test]
    fn nullspace_basis() {
        let m = Matrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.apply(v).is_zero());
        }
        assert_eq!(rank_of(&ns), 2);
    }

    #[test]
    fn coords_in_span() {
        let b = vec![Vector::from_ints(&[1, 0, 1]), Vector::from_ints(&[0, 1, 1])];
        assert_eq!(coords_in(&b, &Vector::from_ints(&[2, 3, 5])), Some(vec![int(2), int(3)]));
        assert_eq!(coords_in(&b, &Vector::from_ints(&[0, 0, 1])), None);
    }

    #[test]
    fn permutation_convention() {
        let p = Matrix::permutation(&[1, 2, 3, 0]);
        assert_eq!(p.apply(&Vector::basis(4, 3)), Vector::basis(4, 0));
        assert_eq!(p.apply(&Vector::basis(4, 0)), Vector::basis(4, 1));
    }
}
