//! Finite-dimensional algebras given by structure constants over a scalar
//! field, with quaternion, matrix, product and restriction-of-scalars
//! constructors, element arithmetic, exact linear solving and embeddings.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarField, ValuationHandle};

/// Coordinates with respect to the algebra's basis.
pub type Element = Vec<Scalar>;

/// Declared center: a basis of `Z(A)` and the extensions of the base
/// valuation to it.
#[derive(Clone, Debug)]
pub struct Center {
    pub basis: Vec<Element>,
    pub handles: Vec<ValuationHandle>,
}

/// How an algebra was built; constructors that need the parts read them
/// back from here.
#[derive(Clone, Debug)]
pub enum AlgebraKind {
    Table,
    Field,
    Quaternion { a: Scalar, b: Scalar },
    Matrix { n: usize, inner: Arc<Algebra> },
    Product { parts: Vec<Arc<Algebra>>, offsets: Vec<usize> },
    Restriction { of: Arc<Algebra> },
}

/// An associative algebra with a multiplication table
/// `e_i e_j = Σ_k c_ijk e_k` stored sparsely.
pub struct Algebra {
    pub name: String,
    pub field: ScalarField,
    pub labels: Vec<String>,
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    pub unit: Element,
    pub center: Center,
    pub kind: AlgebraKind,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {} over {:?})", self.name, self.dim(), self.field)
    }
}

impl Algebra {
    /// Builds an algebra from a dense table `table[i][j]` of coordinate
    /// vectors.
    pub fn from_table(
        name: &str,
        field: ScalarField,
        labels: Vec<String>,
        table: Vec<Vec<Element>>,
        unit: Element,
        center: Center,
        kind: AlgebraKind,
    ) -> Algebra {
        let sparse = table
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.into_iter().enumerate().filter(|(_, c)| !field.is_zero(c)).collect()).collect())
            .collect();
        Algebra { name: name.to_string(), field, labels, table: sparse, unit, center, kind }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn zero(&self) -> Element {
        vec![self.field.zero(); self.dim()]
    }

    pub fn one(&self) -> Element {
        self.unit.clone()
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut z = self.zero();
        z[i] = self.field.one();
        z
    }

    pub fn is_zero(&self, z: &Element) -> bool {
        z.iter().all(|c| self.field.is_zero(c))
    }

    pub fn is_exact(&self, z: &Element) -> bool {
        z.iter().all(|c| self.field.is_exact(c))
    }

    pub fn add(&self, z: &Element, w: &Element) -> Element {
        z.iter().zip(w).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, z: &Element, w: &Element) -> Element {
        z.iter().zip(w).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn neg(&self, z: &Element) -> Element {
        z.iter().map(|a| self.field.neg(a)).collect()
    }

    pub fn scale(&self, c: &Scalar, z: &Element) -> Element {
        z.iter().map(|a| self.field.mul(c, a)).collect()
    }

    /// Product of basis elements `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        let mut out = self.zero();
        for (k, c) in &self.table[i][j] {
            out[*k] = c.clone();
        }
        out
    }

    /// Sparse structure constants of `e_i e_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    pub fn mul(&self, z: &Element, w: &Element) -> Element {
        let f = &self.field;
        let mut out = self.zero();
        for (i, zi) in z.iter().enumerate() {
            if f.is_zero(zi) {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if f.is_zero(wj) {
                    continue;
                }
                let zw = f.mul(zi, wj);
                for (k, c) in &self.table[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(&zw, c));
                }
            }
        }
        out
    }

    pub fn pow(&self, z: &Element, e: u32) -> Element {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, z))
    }

    /// Matrix of left multiplication by `z`; column `j` is `z·e_j`.
    pub fn left_matrix(&self, z: &Element) -> Vec<Vec<Scalar>> {
        let cols: Vec<Element> = (0..self.dim()).map(|j| self.mul(z, &self.basis(j))).collect();
        (0..self.dim()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    }

    /// Inverse as a numerator element and a scalar denominator:
    /// `z⁻¹ = w / d`. Requires exact coordinates.
    pub fn inverse(&self, z: &Element) -> Result<(Element, Scalar)> {
        if let AlgebraKind::Quaternion { a, b } = &self.kind {
            // z⁻¹ = z̄ / N(z) with N(z) = z₀² − a z₁² − b z₂² + ab z₃².
            let f = &self.field;
            let sq = |c: &Scalar| f.mul(c, c);
            let ab = f.mul(a, b);
            let n = f.add(&f.sub(&f.sub(&sq(&z[0]), &f.mul(a, &sq(&z[1]))), &f.mul(b, &sq(&z[2]))), &f.mul(&ab, &sq(&z[3])));
            if f.is_zero(&n) {
                return Err(Error::DivisionByZero);
            }
            let conj = vec![z[0].clone(), f.neg(&z[1]), f.neg(&z[2]), f.neg(&z[3])];
            return Ok((conj, n));
        }
        let m = self.left_matrix(z);
        let (x, d) = solve_exact(&self.field, &m, std::slice::from_ref(&self.unit)).map_err(|e| match e {
            Error::SingularBase => Error::DivisionByZero,
            other => other,
        })?;
        Ok((x.into_iter().next().expect("one right-hand side"), d))
    }

    /// Checks associativity on all basis triples.
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let left = self.mul(&ij, &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.basis_product(j, k));
                    if left != right {
                        return Err(Error::Invalid(format!(
                            "not associative on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that the unit and the declared center behave as declared.
    pub fn check_unit_and_center(&self) -> Result<()> {
        for i in 0..self.dim() {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::Invalid(format!("unit fails on {}", self.labels[i])));
            }
            for c in &self.center.basis {
                if self.mul(c, &e) != self.mul(&e, c) {
                    return Err(Error::Invalid(format!("declared center element does not commute with {}", self.labels[i])));
                }
            }
        }
        Ok(())
    }

    pub fn format(&self, z: &Element) -> String {
        let parts: Vec<String> = z
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| format!("({})*{}", self.field.format(c), self.labels[i]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Parses one literal per coordinate.
    pub fn parse_element(&self, coords: &[String]) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::Parse(format!("expected {} coordinates for {}, got {}", self.dim(), self.name, coords.len())));
        }
        coords.iter().map(|s| self.field.parse(s)).collect()
    }

    /// For a restriction of scalars, the underlying algebra over `K`.
    pub fn restriction_of(&self) -> Option<&Arc<Algebra>> {
        match &self.kind {
            AlgebraKind::Restriction { of } => Some(of),
            _ => None,
        }
    }

    /// Coordinates over `F` of an element of the underlying `K`-algebra.
    pub fn restrict_element(&self, z: &Element) -> Result<Element> {
        let of = self.restriction_of().ok_or_else(|| Error::Invalid("not a restriction".into()))?;
        let d = of.dim();
        let mut out = self.zero();
        for (j, c) in z.iter().enumerate() {
            out[j] = self.field.from_series(c.a.clone());
            out[d + j] = self.field.from_series(c.b.clone());
        }
        Ok(out)
    }

    /// Inverse of [`Algebra::restrict_element`].
    pub fn unrestrict_element(&self, z: &Element) -> Result<Element> {
        let of = self.restriction_of().ok_or_else(|| Error::Invalid("not a restriction".into()))?;
        let d = of.dim();
        Ok((0..d).map(|j| of.field.from_parts(z[j].a.clone(), z[d + j].a.clone())).collect())
    }
}

/// Fraction-free elimination: returns `(X, d)` with `M·X = d·B`, where the
/// columns of `B` are the given right-hand sides and `d = ±det M`. All
/// divisions are exact, so exact inputs give exact outputs.
pub fn solve_exact(field: &ScalarField, m: &[Vec<Scalar>], rhs: &[Element]) -> Result<(Vec<Element>, Scalar)> {
    let n = m.len();
    let r = rhs.len();
    if m.iter().chain(rhs.iter()).any(|row| row.iter().any(|c| !field.is_exact(c))) {
        return Err(Error::Unsupported("exact solving needs finitely supported entries".into()));
    }
    let mut a: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();
    let width = n + r;
    let mut prev = field.one();
    for k in 0..n {
        let piv = (k..n).find(|&i| !field.is_zero(&a[i][k])).ok_or(Error::SingularBase)?;
        a.swap(k, piv);
        for i in k + 1..n {
            for j in k + 1..width {
                let num = field.sub(&field.mul(&a[i][j], &a[k][k]), &field.mul(&a[i][k], &a[k][j]));
                a[i][j] = field.div_exact(&num, &prev).ok_or_else(|| Error::Invalid("inexact division in elimination".into()))?;
            }
            a[i][k] = field.zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    let mut sols = vec![vec![field.zero(); n]; r];
    for (c, sol) in sols.iter_mut().enumerate() {
        for i in (0..n).rev() {
            let mut acc = field.mul(&d, &a[i][n + c]);
            for j in i + 1..n {
                acc = field.sub(&acc, &field.mul(&a[i][j], &sol[j]));
            }
            sol[i] = field.div_exact(&acc, &a[i][i]).ok_or_else(|| Error::Invalid("inexact back substitution".into()))?;
        }
    }
    Ok((sols, d))
}

fn unit_vector(field: &ScalarField, n: usize, i: usize) -> Element {
    let mut z = vec![field.zero(); n];
    z[i] = field.one();
    z
}

/// The quaternion algebra `(a, b)` with basis `1, i, j, k`.
pub fn quaternion(field: &ScalarField, a: Scalar, b: Scalar) -> Result<Arc<Algebra>> {
    if field.is_zero(&a) || field.is_zero(&b) {
        return Err(Error::ZeroParameter);
    }
    let f = field;
    let z = f.zero();
    let one = f.one();
    let ab = f.mul(&a, &b);
    let e = |c: [Scalar; 4]| -> Element { c.to_vec() };
    let table = vec![
        vec![
            e([one.clone(), z.clone(), z.clone(), z.clone()]),
            e([z.clone(), one.clone(), z.clone(), z.clone()]),
            e([z.clone(), z.clone(), one.clone(), z.clone()]),
            e([z.clone(), z.clone(), z.clone(), one.clone()]),
        ],
        vec![
            e([z.clone(), one.clone(), z.clone(), z.clone()]),
            e([a.clone(), z.clone(), z.clone(), z.clone()]),
            e([z.clone(), z.clone(), z.clone(), one.clone()]),
            e([z.clone(), z.clone(), a.clone(), z.clone()]),
        ],
        vec![
            e([z.clone(), z.clone(), one.clone(), z.clone()]),
            e([z.clone(), z.clone(), z.clone(), f.neg(&one)]),
            e([b.clone(), z.clone(), z.clone(), z.clone()]),
            e([z.clone(), f.neg(&b), z.clone(), z.clone()]),
        ],
        vec![
            e([z.clone(), z.clone(), z.clone(), one.clone()]),
            e([z.clone(), z.clone(), f.neg(&a), z.clone()]),
            e([z.clone(), b.clone(), z.clone(), z.clone()]),
            e([f.neg(&ab), z.clone(), z.clone(), z.clone()]),
        ],
    ];
    let labels = ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect();
    let unit = unit_vector(f, 4, 0);
    let center = Center { basis: vec![unit.clone()], handles: f.handles() };
    Ok(Arc::new(Algebra::from_table("quaternion", f.clone(), labels, table, unit, center, AlgebraKind::Quaternion { a, b })))
}

/// The field itself as a one-dimensional algebra.
pub fn field_algebra(field: &ScalarField) -> Arc<Algebra> {
    let unit = vec![field.one()];
    let center = Center { basis: vec![unit.clone()], handles: field.handles() };
    Arc::new(Algebra::from_table(
        "field",
        field.clone(),
        vec!["1".into()],
        vec![vec![unit.clone()]],
        unit,
        center,
        AlgebraKind::Field,
    ))
}

/// `𝕄_n(A)` with basis `e_pq ⊗ a_k`, indexed `(p·n + q)·dim A + k`.
pub fn matrix_over(inner: &Arc<Algebra>, n: usize) -> Result<Arc<Algebra>> {
    if n == 0 {
        return Err(Error::Invalid("matrix size must be positive".into()));
    }
    let d = inner.dim();
    let dim = n * n * d;
    let f = &inner.field;
    let idx = |p: usize, q: usize, k: usize| (p * n + q) * d + k;
    let mut table = vec![vec![vec![f.zero(); dim]; dim]; dim];
    for p in 0..n {
        for q in 0..n {
            for s in 0..n {
                for a in 0..d {
                    for b in 0..d {
                        let prod = inner.basis_product(a, b);
                        for (k, c) in prod.into_iter().enumerate() {
                            table[idx(p, q, a)][idx(q, s, b)][idx(p, s, k)] = c;
                        }
                    }
                }
            }
        }
    }
    let labels =
        (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .flat_map(|(p, q)| {
                inner.labels.iter().map(move |l| {
                    if d == 1 {
                        format!("e{}{}", p + 1, q + 1)
                    } else {
                        format!("e{}{}*{}", p + 1, q + 1, l)
                    }
                })
            })
            .collect();
    let diag = |z: &Element| -> Element {
        let mut out = vec![f.zero(); dim];
        for p in 0..n {
            for k in 0..d {
                out[idx(p, p, k)] = z[k].clone();
            }
        }
        out
    };
    let unit = diag(&inner.unit);
    let center = Center { basis: inner.center.basis.iter().map(diag).collect(), handles: inner.center.handles.clone() };
    Ok(Arc::new(Algebra::from_table(
        &format!("M{}({})", n, inner.name),
        f.clone(),
        labels,
        table,
        unit,
        center,
        AlgebraKind::Matrix { n, inner: inner.clone() },
    )))
}

/// `𝕄_n(K)` over a field.
pub fn matrix(field: &ScalarField, n: usize) -> Result<Arc<Algebra>> {
    matrix_over(&field_algebra(field), n)
}

/// Entry `(p, q)` of an element of `𝕄_n(A)`, as an element of `A`.
pub fn matrix_entry(alg: &Algebra, z: &Element, p: usize, q: usize) -> Result<Element> {
    match &alg.kind {
        AlgebraKind::Matrix { n, inner } => {
            let d = inner.dim();
            let start = (p * n + q) * d;
            Ok(z[start..start + d].to_vec())
        }
        _ => Err(Error::Invalid("not a matrix algebra".into())),
    }
}

/// `A₁ × ⋯ × A_m` with block-diagonal structure constants.
pub fn product(parts: &[Arc<Algebra>]) -> Result<Arc<Algebra>> {
    let first = parts.first().ok_or_else(|| Error::Invalid("empty product".into()))?;
    if parts.len() == 1 {
        return Ok(first.clone());
    }
    let f = first.field.clone();
    if parts.iter().any(|p| p.field != f) {
        return Err(Error::FieldMismatch);
    }
    let mut offsets = Vec::new();
    let mut dim = 0;
    for p in parts {
        offsets.push(dim);
        dim += p.dim();
    }
    let mut table = vec![vec![vec![f.zero(); dim]; dim]; dim];
    let mut labels = Vec::new();
    let mut unit = vec![f.zero(); dim];
    let mut center_basis = Vec::new();
    let mut handles = Vec::new();
    for (b, p) in parts.iter().enumerate() {
        let o = offsets[b];
        for i in 0..p.dim() {
            labels.push(format!("{}.{}", b + 1, p.labels[i]));
            unit[o + i] = p.unit[i].clone();
            for j in 0..p.dim() {
                for (k, c) in p.structure(i, j) {
                    table[o + i][o + j][o + k] = c.clone();
                }
            }
        }
        for c in &p.center.basis {
            let mut z = vec![f.zero(); dim];
            z[o..o + p.dim()].clone_from_slice(c);
            center_basis.push(z);
        }
        handles.extend(p.center.handles.iter().cloned());
    }
    let name = parts.iter().map(|p| p.name.clone()).collect::<Vec<_>>().join(" x ");
    Ok(Arc::new(Algebra::from_table(
        &name,
        f,
        labels,
        table,
        unit,
        Center { basis: center_basis, handles },
        AlgebraKind::Product { parts: parts.to_vec(), offsets },
    )))
}

/// Views a `K`-algebra as an `F`-algebra with basis `b_j, t·b_j`. The
/// center is declared as `K` with the extensions of `v` to `K`.
pub fn restrict_scalars(alg: &Arc<Algebra>) -> Result<Arc<Algebra>> {
    let k = alg.field.clone();
    let ext = k.ext().ok_or_else(|| Error::Invalid("restriction needs an extension field".into()))?;
    let f = ScalarField::Base(ext.base.clone());
    let d = alg.dim();
    let dim = 2 * d;
    let t = k.t()?;
    let tpow = [k.one(), t.clone(), k.mul(&t, &t)];
    let mut table = vec![vec![vec![f.zero(); dim]; dim]; dim];
    for p in 0..2 {
        for q in 0..2 {
            for i in 0..d {
                for j in 0..d {
                    for (l, c) in alg.structure(i, j) {
                        let s = k.mul(&tpow[p + q], c);
                        table[p * d + i][q * d + j][*l] = f.from_series(s.a.clone());
                        table[p * d + i][q * d + j][d + *l] = f.from_series(s.b.clone());
                    }
                }
            }
        }
    }
    let labels = alg.labels.iter().cloned().chain(alg.labels.iter().map(|l| format!("{}*{}", ext.name, l))).collect();
    let mut unit = vec![f.zero(); dim];
    for j in 0..d {
        unit[j] = f.from_series(alg.unit[j].a.clone());
        unit[d + j] = f.from_series(alg.unit[j].b.clone());
    }
    let mut t_unit = vec![f.zero(); dim];
    for j in 0..d {
        let s = k.mul(&t, &alg.unit[j]);
        t_unit[j] = f.from_series(s.a.clone());
        t_unit[d + j] = f.from_series(s.b.clone());
    }
    let center = Center { basis: vec![unit.clone(), t_unit], handles: k.handles() };
    Ok(Arc::new(Algebra::from_table(
        &format!("res({})", alg.name),
        f,
        labels,
        table,
        unit,
        center,
        AlgebraKind::Restriction { of: alg.clone() },
    )))
}

/// An algebra homomorphism given by the images of a basis, with the scalars
/// of the source mapped into the target field.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub images: Vec<Element>,
}

impl Embedding {
    /// Builds the embedding of a quaternion algebra from the images of `i`
    /// and `j`, and verifies it on every basis pair.
    pub fn quaternion(source: &Arc<Algebra>, target: &Arc<Algebra>, i_img: Element, j_img: Element) -> Result<Embedding> {
        if !matches!(source.kind, AlgebraKind::Quaternion { .. }) {
            return Err(Error::Invalid("source must be a quaternion algebra".into()));
        }
        let k_img = target.mul(&i_img, &j_img);
        let emb = Embedding { source: source.clone(), target: target.clone(), images: vec![target.one(), i_img, j_img, k_img] };
        emb.verify()?;
        Ok(emb)
    }

    /// Checks `φ(e_a e_b) = φ(e_a) φ(e_b)` on all basis pairs.
    pub fn verify(&self) -> Result<()> {
        let n = self.source.dim();
        for a in 0..n {
            for b in 0..n {
                let lhs = self.apply(&self.source.basis_product(a, b));
                let rhs = self.target.mul(&self.images[a], &self.images[b]);
                if lhs != rhs {
                    return Err(Error::EmbeddingNotMultiplicative(self.source.labels[a].clone(), self.source.labels[b].clone()));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, z: &Element) -> Element {
        let t = &self.target;
        let mut out = t.zero();
        for (m, c) in z.iter().enumerate() {
            if self.source.field.is_zero(c) {
                continue;
            }
            let c = t.field.embed_base(c);
            out = t.add(&out, &t.scale(&c, &self.images[m]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::{BaseField, QuadraticExtension};

    fn setup() -> (ScalarField, ScalarField, Arc<Algebra>) {
        let base = BaseField::rationals(&["x", "y"]);
        let f = ScalarField::Base(base.clone());
        let k = ScalarField::Ext(QuadraticExtension::new(base, f.parse("1 + x").unwrap().a, "t").unwrap());
        let d = quaternion(&f, f.parse("1 + x").unwrap(), f.parse("y").unwrap()).unwrap();
        (f, k, d)
    }

    fn el(alg: &Algebra, c: &[&str]) -> Element {
        alg.parse_element(&c.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn quaternion_relations() {
        let (_, _, d) = setup();
        d.check_associativity().unwrap();
        d.check_unit_and_center().unwrap();
        assert_eq!(d.mul(&d.basis(1), &d.basis(2)), d.basis(3));
        let p = d.mul(&el(&d, &["1", "1", "0", "0"]), &el(&d, &["1", "-1", "0", "0"]));
        assert_eq!(p, el(&d, &["-x", "0", "0", "0"]));
        assert_eq!(d.mul(&d.basis(2), &d.basis(3)), el(&d, &["0", "-y", "0", "0"]));
        let jk = d.mul(&d.basis(2), &el(&d, &["0", "0", "1", "-1"]));
        assert_eq!(jk, el(&d, &["y", "y", "0", "0"]));
    }

    #[test]
    fn solving_in_the_splitting_base() {
        let (f, _, d) = setup();
        let base = [
            el(&d, &["1", "1", "0", "0"]),
            el(&d, &["1", "-1", "0", "0"]),
            el(&d, &["0", "0", "1", "0"]),
            el(&d, &["0", "0", "1", "-1"]),
        ];
        let m: Vec<Vec<Scalar>> = (0..4).map(|i| base.iter().map(|b| b[i].clone()).collect()).collect();
        let (x, den) = solve_exact(&f, &m, &[d.one(), d.basis(3)]).unwrap();
        let scaled = |v: &Element| -> Vec<Scalar> { v.iter().map(|c| f.div_exact(c, &den).unwrap()).collect::<Vec<_>>() };
        let half = f.parse("1/2").unwrap();
        assert_eq!(scaled(&x[0]), vec![half.clone(), half, f.zero(), f.zero()]);
        assert_eq!(scaled(&x[1]), vec![f.zero(), f.zero(), f.one(), f.parse("-1").unwrap()]);
    }

    #[test]
    fn inverse_of_a_quaternion() {
        let (f, _, d) = setup();
        let z = el(&d, &["x", "1", "y", "0"]);
        let (w, den) = d.inverse(&z).unwrap();
        let prod = d.mul(&z, &w);
        assert_eq!(prod, d.scale(&den, &d.one()));
        assert!(!f.is_zero(&den));
    }

    #[test]
    fn matrix_embedding_of_the_quaternions() {
        let (f, k, d) = setup();
        let s = matrix(&k, 2).unwrap();
        s.check_associativity().unwrap();
        let m = |e: [&str; 4]| el(&s, &e);
        let emb = Embedding::quaternion(&d, &s, m(["t", "0", "0", "-t"]), m(["0", "y", "1", "0"])).unwrap();
        assert_eq!(emb.images[3], m(["0", "t*y", "-t", "0"]));
        assert_eq!(emb.apply(&d.one()), s.one());
        let bad = Embedding::quaternion(&d, &s, m(["t", "0", "0", "t"]), m(["0", "y", "1", "0"]));
        assert!(matches!(bad, Err(Error::EmbeddingNotMultiplicative(..))));
        let _ = f;
    }

    #[test]
    fn products_and_restriction() {
        let (f, k, d) = setup();
        let p = product(&[d.clone(), d.clone()]).unwrap();
        assert_eq!(p.dim(), 8);
        let mut e1 = p.zero();
        e1[0] = f.one();
        let mut e2 = p.zero();
        e2[4] = f.one();
        assert!(p.is_zero(&p.mul(&e1, &e2)));
        assert!(Arc::ptr_eq(&product(std::slice::from_ref(&d)).unwrap(), &d));
        let s = matrix(&k, 2).unwrap();
        assert!(matches!(product(&[d.clone(), s.clone()]), Err(Error::FieldMismatch)));
        let r = restrict_scalars(&s).unwrap();
        assert_eq!(r.dim(), 8);
        r.check_associativity().unwrap();
        r.check_unit_and_center().unwrap();
        let z = el(&s, &["1 + t", "x", "t*y", "2"]);
        assert_eq!(r.unrestrict_element(&r.restrict_element(&z).unwrap()).unwrap(), z);
    }
}
