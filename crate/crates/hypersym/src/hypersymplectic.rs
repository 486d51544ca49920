//! Hypersymplectic structures: the three 2-forms, closedness and the associated batteries.

use serde::Serialize;

use crate::connection::{levi_civita, split_projection, Connection};
use crate::core_tensor::{BilinearForm, Endomorphism, Matrix, Tensor3, Vector};
use crate::cps::{
    complex_integrability_failures, is_compatible, product_integrability_failures, split, CPStructure, Splitting,
};
use crate::error::{Error, Result};
use crate::liealg::{is_homomorphism, LieAlgebra};
use crate::report::Report;
use crate::scalar::Scalar;

/// `{J, E, g}` with `g` nondegenerate and compatible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HSStructure {
    cp: CPStructure,
    g: BilinearForm,
}

impl HSStructure {
    pub fn new(cp: CPStructure, g: BilinearForm) -> Result<Self> {
        if g.dim() != cp.dim() {
            return Err(Error::Dimension { expected: cp.dim(), got: g.dim() });
        }
        if g.symmetry() != crate::core_tensor::Symmetry::Symmetric {
            return Err(Error::Invariant("metric must be symmetric".into()));
        }
        if !g.is_nondegenerate() {
            return Err(Error::Degenerate(g.dim() - g.matrix().rank()));
        }
        if !is_compatible(&cp, &g) {
            return Err(Error::Invariant("metric is not compatible with {J, E}".into()));
        }
        Ok(HSStructure { cp, g })
    }

    pub fn cp(&self) -> &CPStructure {
        &self.cp
    }

    pub fn g(&self) -> &BilinearForm {
        &self.g
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.cp.algebra()
    }

    pub fn scaled(&self, k: &Scalar) -> Result<Self> {
        HSStructure::new(self.cp.clone(), self.g.scale(k))
    }

    /// Push forward along an isomorphism `ξ` onto `target`.
    pub fn transport(&self, xi: &Matrix, target: LieAlgebra) -> Result<Self> {
        let inv = xi.inverse()?;
        HSStructure::new(self.cp.transport(xi, target)?, self.g.pullback(&inv))
    }

    pub fn is_hypersymplectic(&self) -> bool {
        self.cp.is_integrable() && closed_forms(self.algebra(), &kaehler_forms_raw(&self.cp, &self.g)) == [true; 3]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormTriple {
    pub omega1: BilinearForm,
    pub omega2: BilinearForm,
    pub omega3: BilinearForm,
}

impl FormTriple {
    pub fn as_array(&self) -> [&BilinearForm; 3] {
        [&self.omega1, &self.omega2, &self.omega3]
    }
}

fn form_from(t: &Endomorphism, g: &BilinearForm) -> Result<BilinearForm> {
    BilinearForm::antisymmetric(&t.transpose() * g.matrix())
}

pub(crate) fn kaehler_forms_raw(cp: &CPStructure, g: &BilinearForm) -> FormTriple {
    let [omega1, omega2, omega3] = kaehler_forms_raw_unchecked(cp.j(), cp.e(), g);
    FormTriple { omega1, omega2, omega3 }
}

// For non-compatible inputs the contraction need not be antisymmetric; keep its skew part.
fn raw_antisym(m: Matrix) -> BilinearForm {
    let skew = (&m - &m.transpose()).scale(&Scalar::frac(1, 2));
    BilinearForm::antisymmetric(skew).expect("skew part")
}

/// `ω₁(x,y) = g(Jx,y)`, `ω₂(x,y) = g(Ex,y)`, `ω₃(x,y) = g(JEx,y)`.
pub fn kaehler_forms(hs: &HSStructure) -> Result<FormTriple> {
    let je = hs.cp.j() * hs.cp.e();
    let t = FormTriple {
        omega1: form_from(hs.cp.j(), &hs.g)?,
        omega2: form_from(hs.cp.e(), &hs.g)?,
        omega3: form_from(&je, &hs.g)?,
    };
    for w in t.as_array() {
        if !w.is_nondegenerate() {
            return Err(Error::Degenerate(w.dim() - w.matrix().rank()));
        }
    }
    Ok(t)
}

/// `dω(x,y,z) = -ω([x,y],z) + ω([x,z],y) - ω([y,z],x)`.
pub fn d_two_form(l: &LieAlgebra, omega: &BilinearForm) -> Tensor3 {
    let n = l.dim();
    let mut t = Tensor3::zeros(n);
    if n < 3 {
        return t;
    }
    let e: Vec<Vector> = (0..n).map(|i| l.basis(i)).collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let v = &(&-omega.eval(l.basis_bracket(i, j), &e[k]) + &omega.eval(l.basis_bracket(i, k), &e[j]))
                    - &omega.eval(l.basis_bracket(j, k), &e[i]);
                t[(i, j, k)] = v;
            }
        }
    }
    t
}

pub fn is_closed(l: &LieAlgebra, omega: &BilinearForm) -> bool {
    d_two_form(l, omega).is_zero()
}

fn closed_forms(l: &LieAlgebra, f: &FormTriple) -> [bool; 3] {
    [is_closed(l, &f.omega1), is_closed(l, &f.omega2), is_closed(l, &f.omega3)]
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

/// All algebraic identities relating `ω₁, ω₂, ω₃` with `J`, `E` and the split.
pub fn form_identities_check(cp: &CPStructure, g: &BilinearForm) -> bool {
    let f = kaehler_forms_raw(cp, g);
    let (j, e) = (cp.j(), cp.e());
    let pb = |w: &BilinearForm, t: &Matrix| w.pullback(t);
    let neg = |w: &BilinearForm| w.scale(&Scalar::int(-1));
    let algebraic = pb(&f.omega1, j) == f.omega1
        && pb(&f.omega1, e) == f.omega1
        && pb(&f.omega2, j) == neg(&f.omega2)
        && pb(&f.omega2, e) == neg(&f.omega2)
        && pb(&f.omega3, j) == neg(&f.omega3)
        && pb(&f.omega3, e) == f.omega3;
    if !algebraic {
        return false;
    }
    let Ok(sp) = split(cp) else {
        return false;
    };
    let (p, m) = (sp.plus.vectors(), sp.minus.vectors());
    let k = p.len();
    pairs(k).all(|(a, b)| {
        f.omega1.eval(&p[a], &m[b]).is_zero()
            && f.omega3.eval(&p[a], &m[b]).is_zero()
            && f.omega2.eval(&p[a], &p[b]).is_zero()
            && f.omega2.eval(&m[a], &m[b]).is_zero()
    })
}

/// The expressions of `ω₁, ω₂, ω₃` through `ω₊` on `g₊ ⊕ J g₊`, and `ω₊(x,y) = ω₋(Jx,Jy)`.
pub fn reconstruction_check(cp: &CPStructure, g: &BilinearForm) -> bool {
    let f = kaehler_forms_raw(cp, g);
    let Ok(sp) = split(cp) else {
        return false;
    };
    let j = cp.j();
    let p = sp.plus.vectors();
    let k = p.len();
    let wp = |x: &Vector, y: &Vector| f.omega1.eval(x, y);
    let jp: Vec<Vector> = p.iter().map(|v| j.apply(v)).collect();
    for (a, b) in pairs(k) {
        if wp(&p[a], &p[b]) != f.omega1.eval(&jp[a], &jp[b]) {
            return false;
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for d in 0..k {
                    let (x, y, x2, y2) = (&p[a], &p[b], &p[c], &p[d]);
                    let u = x + &jp[c];
                    let v = y + &jp[d];
                    let e7 = &wp(x, y) + &wp(x2, y2);
                    let e8 = &-wp(x, y2) + &wp(y, x2);
                    let e9 = &wp(x, y) - &wp(x2, y2);
                    if f.omega1.eval(&u, &v) != e7 || f.omega2.eval(&u, &v) != e8 || f.omega3.eval(&u, &v) != e9 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Torsion-free connection with `∇J = ∇E = 0`, computed from the split:
/// mixed terms are projections of brackets, and `∇_x y = -J ∇_x (Jy)` inside each factor.
pub fn split_connection(cp: &CPStructure) -> Result<Connection> {
    let sp = split(cp)?;
    let l = cp.algebra();
    let j = cp.j();
    let n = cp.dim();
    let k = sp.plus.dim();
    let b = sp.adapted_basis();
    let binv = b.inverse()?;
    let basis: Vec<Vector> = (0..n).map(|i| b.col(i)).collect();
    let is_plus = |i: usize| i < k;
    let proj = |v: &Vector| split_projection(&sp.plus, &sp.minus, v);
    // nab[a][c] = ∇_{b_a} b_c
    let mut nab = vec![vec![Vector::zeros(n); n]; n];
    for a in 0..n {
        for c in 0..n {
            let (u, w) = (&basis[a], &basis[c]);
            nab[a][c] = match (is_plus(a), is_plus(c)) {
                (true, false) => proj(&l.bracket(u, w))?.1,
                (false, true) => proj(&l.bracket(u, w))?.0,
                (true, true) => -j.apply(&proj(&l.bracket(u, &j.apply(w)))?.1),
                (false, false) => -j.apply(&proj(&l.bracket(u, &j.apply(w)))?.0),
            };
        }
    }
    let mut gamma = vec![vec![Vector::zeros(n); n]; n];
    for i in 0..n {
        for jj in 0..n {
            let mut acc = Vector::zeros(n);
            for a in 0..n {
                if binv[(a, i)].is_zero() {
                    continue;
                }
                for c in 0..n {
                    if binv[(c, jj)].is_zero() {
                        continue;
                    }
                    acc = &acc + &nab[a][c].scale(&(&binv[(a, i)] * &binv[(c, jj)]));
                }
            }
            gamma[i][jj] = acc;
        }
    }
    Connection::new(l.clone(), gamma)
}

/// Factor algebra on a subalgebra spanned by `basis`.
pub fn factor_algebra(l: &LieAlgebra, basis: &[Vector], labels: &[&str]) -> Result<LieAlgebra> {
    let k = basis.len();
    let mut table = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let br = l.bracket(&basis[a], &basis[b]);
            let cs = crate::core_tensor::coords_in(basis, &br)
                .ok_or_else(|| Error::Invariant("span is not a subalgebra".into()))?;
            table.push((a, b, Vector(cs)));
        }
    }
    LieAlgebra::from_brackets(labels, &table)
}

/// `∇₊` on `g₊` and `∇₋` on `g₋` with the restricted forms `ω₊`, `ω₋` (in the split bases).
pub struct FactorData {
    pub splitting: Splitting,
    pub plus: (Connection, BilinearForm),
    pub minus: (Connection, BilinearForm),
}

pub fn factor_data(cp: &CPStructure, g: &BilinearForm) -> Result<FactorData> {
    let sp = split(cp)?;
    let conn = split_connection(cp)?;
    let f = kaehler_forms_raw(cp, g);
    let make = |basis: &[Vector], tag: &str| -> Result<(Connection, BilinearForm)> {
        let labels: Vec<String> = (0..basis.len()).map(|i| format!("{tag}{}", i + 1)).collect();
        let lr: Vec<&str> = labels.iter().map(String::as_str).collect();
        let alg = factor_algebra(cp.algebra(), basis, &lr)?;
        let c = conn
            .restrict(basis, alg)
            .ok_or_else(|| Error::Invariant("connection does not preserve the factor".into()))?;
        let k = basis.len();
        let mut m = Matrix::zeros(k, k);
        for (a, b) in pairs(k) {
            m[(a, b)] = f.omega1.eval(&basis[a], &basis[b]);
        }
        Ok((c, BilinearForm::antisymmetric(m)?))
    };
    let plus = make(sp.plus.vectors(), "p")?;
    let minus = make(sp.minus.vectors(), "m")?;
    Ok(FactorData { splitting: sp, plus, minus })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosednessPattern {
    pub d_omega1_zero: bool,
    pub d_omega2_zero: bool,
    pub d_omega3_zero: bool,
    pub plus_parallel: bool,
    pub minus_parallel: bool,
}

impl ClosednessPattern {
    /// `dω₁ = 0 ⇔ dω₃ = 0 ⇔ (∇₊ω₊ = 0 ∧ ∇₋ω₋ = 0)`, and these imply `dω₂ = 0`.
    pub fn pattern_holds(&self) -> bool {
        let par = self.plus_parallel && self.minus_parallel;
        self.d_omega1_zero == self.d_omega3_zero && self.d_omega1_zero == par && (!self.d_omega1_zero || self.d_omega2_zero)
    }

    pub fn all_true(&self) -> bool {
        self.d_omega1_zero && self.d_omega2_zero && self.d_omega3_zero && self.plus_parallel && self.minus_parallel
    }
}

/// Requires `{J, E}` integrable and `g` compatible; `g` need not give closed forms.
pub fn closedness_battery(cp: &CPStructure, g: &BilinearForm) -> Result<ClosednessPattern> {
    let l = cp.algebra();
    let f = kaehler_forms_raw(cp, g);
    let fd = factor_data(cp, g)?;
    Ok(ClosednessPattern {
        d_omega1_zero: is_closed(l, &f.omega1),
        d_omega2_zero: is_closed(l, &f.omega2),
        d_omega3_zero: is_closed(l, &f.omega3),
        plus_parallel: fd.plus.0.parallel_form_check(&fd.plus.1),
        minus_parallel: fd.minus.0.parallel_form_check(&fd.minus.1),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LeviCivitaPattern {
    pub hypersymplectic: bool,
    pub lc_parallel_j_e: bool,
    pub lc_parallel_forms: bool,
}

impl LeviCivitaPattern {
    pub fn pattern_holds(&self) -> bool {
        self.hypersymplectic == self.lc_parallel_j_e && self.lc_parallel_j_e == self.lc_parallel_forms
    }
}

pub fn levi_civita_battery(cp: &CPStructure, g: &BilinearForm) -> Result<LeviCivitaPattern> {
    let l = cp.algebra();
    let lc = levi_civita(l, g)?;
    let f = kaehler_forms_raw(cp, g);
    let hyper = cp.is_integrable() && is_compatible(cp, g) && closed_forms(l, &f) == [true; 3];
    Ok(LeviCivitaPattern {
        hypersymplectic: hyper,
        lc_parallel_j_e: lc.preserves_endomorphism(cp.j()) && lc.preserves_endomorphism(cp.e()),
        lc_parallel_forms: f.as_array().iter().all(|w| lc.preserves_form(w)),
    })
}

fn fmt_pair(l: &LieAlgebra, (a, b): (usize, usize)) -> String {
    format!("({}, {})", l.labels()[a], l.labels()[b])
}

/// Full validation of `(L, J, E, g)`, one check per identity.
pub fn verify_hypersymplectic(l: &LieAlgebra, j: &Endomorphism, e: &Endomorphism, g: &BilinearForm) -> Report {
    let mut r = Report::new();
    let n = l.dim();
    let id = Matrix::identity(n);
    let jac = l.check_jacobi();
    r.check("jacobi", jac.is_empty(), || {
        let (a, b, c) = jac[0];
        format!("cyclic sum nonzero on ({}, {}, {})", l.labels()[a], l.labels()[b], l.labels()[c])
    });
    let shapes_ok = [j, e, g.matrix()].iter().all(|m| m.rows() == n && m.cols() == n);
    if !shapes_ok {
        r.check("dimensions", false, || format!("J, E, g must be {n}x{n}"));
        return r;
    }
    let first_diff = |a: &Matrix, b: &Matrix| -> String {
        a.entries()
            .zip(b.entries())
            .find(|(x, y)| x.2 != y.2)
            .map(|((i, k, x), (_, _, y))| format!("entry ({i}, {k}): {x} != {y}"))
            .unwrap_or_default()
    };
    let jj = j * j;
    r.check("J^2 = -Id", jj == -&id, || first_diff(&jj, &-&id));
    let ee = e * e;
    r.check("E^2 = Id", ee == id, || first_diff(&ee, &id));
    r.check("E != ±Id", *e != id && *e != -&id, || "E is a multiple of the identity".into());
    let (je, ej) = (j * e, -(e * j));
    r.check("JE = -EJ", je == ej, || first_diff(&je, &ej));
    let jf = complex_integrability_failures(l, j);
    r.check("J integrable (Nijenhuis)", jf.is_empty(), || format!("fails on {}", fmt_pair(l, jf[0])));
    let ef = product_integrability_failures(l, e);
    r.check("E integrable (eigenspaces are subalgebras)", ef.is_empty(), || format!("fails on {}", fmt_pair(l, ef[0])));
    let gm = g.matrix();
    let c1 = &(&j.transpose() * gm) * j;
    r.check("g(Jx,Jy) = g(x,y)", c1 == *gm, || first_diff(&c1, gm));
    let c2 = &(&e.transpose() * gm) * e;
    r.check("g(Ex,Ey) = -g(x,y)", c2 == -gm, || first_diff(&c2, &-gm));
    let det = gm.det();
    r.check("g nondegenerate", !det.is_zero(), || format!("radical dimension {}", n - gm.rank()));
    let f = kaehler_forms_raw_unchecked(j, e, g);
    for (k, w) in f.iter().enumerate() {
        let d = d_two_form(l, w);
        let nz = d.nonzero();
        r.check(format!("d omega{} = 0", k + 1), nz.is_empty(), || {
            let ((a, b, c), v) = &nz[0];
            format!("d omega{}({}, {}, {}) = {v}", k + 1, l.labels()[*a], l.labels()[*b], l.labels()[*c])
        });
    }
    r
}

fn kaehler_forms_raw_unchecked(j: &Matrix, e: &Matrix, g: &BilinearForm) -> [BilinearForm; 3] {
    let je = j * e;
    [j, e, &je].map(|t| {
        let m = &t.transpose() * g.matrix();
        BilinearForm::antisymmetric(m.clone()).unwrap_or_else(|_| raw_antisym(m))
    })
}

/// `ξ` is a Lie isomorphism intertwining `J`, `E` and an isometry from `a` to `b`.
pub fn verify_structure_equivalence(xi: &Endomorphism, a: &HSStructure, b: &HSStructure) -> Result<bool> {
    Ok(equivalence_scale(xi, a, b)?.is_some_and(|k| k.is_one()))
}

/// Like [`verify_structure_equivalence`] but allowing `g'(ξx, ξy) = λ g(x, y)`; returns `λ`.
pub fn equivalence_scale(xi: &Endomorphism, a: &HSStructure, b: &HSStructure) -> Result<Option<Scalar>> {
    if xi.det().is_zero() {
        return Err(Error::Singular);
    }
    if !is_homomorphism(a.algebra(), xi, b.algebra()) {
        return Ok(None);
    }
    if xi * a.cp.j() != b.cp.j() * xi || xi * a.cp.e() != b.cp.e() * xi {
        return Ok(None);
    }
    let pulled = b.g.pullback(xi);
    let Some(lambda) = proportionality(a.g.matrix(), pulled.matrix()) else {
        return Ok(None);
    };
    let fa = kaehler_forms(a)?;
    let fb = kaehler_forms(b)?;
    for (wa, wb) in fa.as_array().iter().zip(fb.as_array()) {
        if wb.pullback(xi) != wa.scale(&lambda) {
            return Err(Error::Invariant("isometry does not transport the 2-forms".into()));
        }
    }
    Ok(Some(lambda))
}

/// `λ` with `b = λ a`, if any (with `a ≠ 0`).
pub fn proportionality(a: &Matrix, b: &Matrix) -> Option<Scalar> {
    let (_, _, x) = a.entries().find(|(_, _, x)| !x.is_zero())?;
    let (i, k, _) = a.entries().find(|(_, _, x)| !x.is_zero())?;
    let lambda = &b[(i, k)] / x;
    (a.scale(&lambda) == *b && !lambda.is_zero()).then_some(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::named_algebra;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_int_rows(rows)
    }

    fn r4() -> HSStructure {
        let j = m(&[&[0, 0, -1, 0], &[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let e = m(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]);
        let g = m(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]]);
        let cp = CPStructure::new(named_algebra("R4").unwrap(), j, e).unwrap();
        HSStructure::new(cp, BilinearForm::symmetric(g).unwrap()).unwrap()
    }

    #[test]
    fn r4_forms() {
        let hs = r4();
        let f = kaehler_forms(&hs).unwrap();
        let expect = &BilinearForm::wedge(4, 0, 1).matrix().clone() + BilinearForm::wedge(4, 2, 3).matrix();
        assert_eq!(*f.omega1.matrix(), expect);
        let f2 = kaehler_forms(&hs.scaled(&Scalar::int(2)).unwrap()).unwrap();
        for (a, b) in f.as_array().iter().zip(f2.as_array()) {
            assert_eq!(a.scale(&Scalar::int(2)), *b);
        }
    }

    #[test]
    fn d_two_form_examples() {
        let r2 = named_algebra("R2").unwrap();
        assert!(d_two_form(&r2, &BilinearForm::wedge(2, 0, 1)).is_zero());
        let g0 = named_algebra("h3R").unwrap();
        let d = d_two_form(&g0, &BilinearForm::wedge(4, 0, 3));
        assert_eq!(d[(1, 2, 0)], Scalar::int(1));
    }

    #[test]
    fn r4_batteries() {
        let hs = r4();
        assert!(form_identities_check(hs.cp(), hs.g()));
        assert!(reconstruction_check(hs.cp(), hs.g()));
        let p = closedness_battery(hs.cp(), hs.g()).unwrap();
        assert!(p.all_true());
        assert!(levi_civita_battery(hs.cp(), hs.g()).unwrap().pattern_holds());
        assert!(verify_hypersymplectic(hs.algebra(), hs.cp().j(), hs.cp().e(), hs.g()).passed());
    }

    #[test]
    fn corrupted_metric_breaks_identities() {
        let hs = r4();
        let mut g = hs.g().matrix().clone();
        g[(0, 1)] = Scalar::int(1);
        g[(1, 0)] = Scalar::int(1);
        let g = BilinearForm::symmetric(g).unwrap();
        assert!(!form_identities_check(hs.cp(), &g));
        assert!(!reconstruction_check(hs.cp(), &g));
        assert!(HSStructure::new(hs.cp().clone(), g).is_err());
    }

    #[test]
    fn identity_positive_metric_fails_compatibility() {
        let hs = r4();
        let g = BilinearForm::symmetric(Matrix::identity(4)).unwrap();
        let rep = verify_hypersymplectic(hs.algebra(), hs.cp().j(), hs.cp().e(), &g);
        assert!(!rep.passed());
        let fails: Vec<&str> = rep.failures().map(|c| c.id.as_str()).collect();
        assert_eq!(fails, ["g(Ex,Ey) = -g(x,y)"]);
    }

    #[test]
    fn equivalence_identity_and_swap() {
        let hs = r4();
        assert!(verify_structure_equivalence(&Matrix::identity(4), &hs, &hs).unwrap());
        // Swapping e1 and e3 commutes with J up to sign but exchanges the eigenspaces of E.
        let swap = Matrix::permutation(&[2, 1, 0, 3]);
        assert!(!verify_structure_equivalence(&swap, &hs, &hs).unwrap());
    }
}
