//! The residue fields `k(x₁,…,x_k)` as fractions of Laurent polynomials,
//! and dense linear algebra over them.

use std::fmt;

use num_traits::Zero;

use crate::coeff::{Coeff, CoefficientField};
use crate::error::{Error, Result};
use crate::series::Series;

/// `num / den` with both parts Laurent polynomials of the same rank.
#[derive(Clone, Debug)]
pub struct Frac {
    num: Series,
    den: Series,
}

impl PartialEq for Frac {
    fn eq(&self, other: &Frac) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Frac {
    pub fn new(num: Series, den: Series) -> Result<Frac> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !num.is_exact() || !den.is_exact() {
            return Err(Error::Unsupported("residue entries must be exact".into()));
        }
        if num.rank() != den.rank() {
            return Err(Error::RankMismatch(num.rank(), den.rank()));
        }
        Ok(reduce(num, den))
    }

    pub fn from_series(s: Series) -> Result<Frac> {
        let den = Series::one(s.field(), s.rank());
        Frac::new(s, den)
    }

    pub fn zero(field: CoefficientField, rank: usize) -> Frac {
        Frac { num: Series::zero(field, rank), den: Series::one(field, rank) }
    }

    pub fn one(field: CoefficientField, rank: usize) -> Frac {
        Frac { num: Series::one(field, rank), den: Series::one(field, rank) }
    }

    pub fn constant(field: CoefficientField, rank: usize, c: Coeff) -> Frac {
        Frac { num: Series::constant(field, rank, c), den: Series::one(field, rank) }
    }

    pub fn from_i64(field: CoefficientField, rank: usize, c: i64) -> Frac {
        Frac::constant(field, rank, field.from_i64(c))
    }

    pub fn field(&self) -> CoefficientField {
        self.num.field()
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn num(&self) -> &Series {
        &self.num
    }

    pub fn den(&self) -> &Series {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            return reduce(&self.num + &o.num, self.den.clone());
        }
        reduce(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn neg(&self) -> Frac {
        Frac { num: -self.num.clone(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        if self.is_zero() || o.is_zero() {
            return Frac::zero(self.field(), self.rank());
        }
        reduce(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn inv(&self) -> Result<Frac> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Frac) -> Result<Frac> {
        Ok(self.mul(&o.inv()?))
    }

    /// The value as a Laurent polynomial, when the denominator divides.
    pub fn as_series(&self) -> Option<Series> {
        self.num.div_exact(&self.den)
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        let s = self.as_series()?;
        let terms = s.terms();
        match terms.as_slice() {
            [] => Some(Coeff::zero()),
            [(e, c)] if e.iter().all(|x| *x == 0) => Some(c.clone()),
            _ => None,
        }
    }

    /// Whether the fraction is a square in `k(x₁,…,x_k)`.
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let p = &self.num * &self.den;
        match p.as_constant() {
            Some(c) if p.rank() == 0 => self.field().is_square(c),
            _ => p.exact_sqrt().is_some(),
        }
    }

    pub fn format_with(&self, vars: &[String]) -> String {
        if self.den == Series::one(self.field(), self.rank()) {
            return self.num.format_with(vars);
        }
        format!("({})/({})", self.num.format_with(vars), self.den.format_with(vars))
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (1..=self.rank()).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.format_with(&vars))
    }
}

/// Canonical form: rank 0 has denominator 1, rank 1 is reduced by the
/// polynomial gcd with a monic denominator; higher ranks divide out exact
/// quotients and the leading coefficient of the denominator.
fn reduce(num: Series, den: Series) -> Frac {
    let field = num.field();
    let rank = num.rank();
    if num.is_zero() {
        return Frac::zero(field, rank);
    }
    if let Some(q) = num.div_exact(&den) {
        return Frac { num: q, den: Series::one(field, rank) };
    }
    let (num, den) = if rank == 1 { reduce_univariate(num, den) } else { (num, den) };
    let (_, lc) = den.leading_coefficient().ok().flatten().expect("nonzero denominator");
    let inv = field.inv(&lc).expect("nonzero leading coefficient");
    Frac { num: num.scale(&inv), den: den.scale(&inv) }
}

fn to_poly(s: &Series) -> (i64, Vec<Coeff>) {
    let terms = s.terms();
    let lo = terms.iter().map(|(e, _)| e[0]).min().unwrap_or(0);
    let hi = terms.iter().map(|(e, _)| e[0]).max().unwrap_or(0);
    let mut p = vec![Coeff::zero(); (hi - lo + 1) as usize];
    for (e, c) in terms {
        p[(e[0] - lo) as usize] = c;
    }
    (lo, p)
}

fn from_poly(field: CoefficientField, shift: i64, p: &[Coeff]) -> Series {
    let terms: Vec<(Vec<i64>, Coeff)> =
        p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (vec![i as i64 + shift], c.clone())).collect();
    Series::from_terms(field, 1, &terms)
}

fn trim(p: &mut Vec<Coeff>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Remainder of `a` by `b` over the coefficient field.
pub(crate) fn poly_rem(field: CoefficientField, a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    poly_divmod(field, a, b).1
}

/// Quotient and remainder; `b` must have a nonzero leading coefficient.
pub(crate) fn poly_divmod(field: CoefficientField, a: &[Coeff], b: &[Coeff]) -> (Vec<Coeff>, Vec<Coeff>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = field.inv(&b[db]).expect("nonzero leading coefficient");
    if r.len() < b.len() {
        return (vec![Coeff::zero()], r);
    }
    let mut q = vec![Coeff::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = field.mul(&r[i], &lead_inv);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let idx = i - db + j;
            r[idx] = field.sub(&r[idx], &field.mul(&c, bj));
        }
        q[i - db] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    (q, r)
}

pub(crate) fn poly_is_zero(p: &[Coeff]) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub(crate) fn poly_gcd(field: CoefficientField, a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !poly_is_zero(&b) {
        let r = poly_rem(field, &a, &b);
        a = b;
        b = r;
    }
    let lead = field.inv(a.last().expect("nonempty")).expect("nonzero gcd");
    a.iter().map(|c| field.mul(c, &lead)).collect()
}

fn reduce_univariate(num: Series, den: Series) -> (Series, Series) {
    let field = num.field();
    let (sn, pn) = to_poly(&num);
    let (sd, pd) = to_poly(&den);
    let g = poly_gcd(field, &pn, &pd);
    let (qn, _) = poly_divmod(field, &pn, &g);
    let (qd, _) = poly_divmod(field, &pd, &g);
    (from_poly(field, sn - sd, &qn), from_poly(field, 0, &qd))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Frac>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = f.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn matrix_rank(m: &[Vec<Frac>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

/// A basis of `{x : M x = 0}` for an `r × c` matrix.
pub fn kernel(m: &[Vec<Frac>], cols: usize, field: CoefficientField, rank: usize) -> Vec<Vec<Frac>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Frac::zero(field, rank); cols];
        v[free] = Frac::one(field, rank);
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = a[row][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// A solution of `M x = b`, if one exists.
pub fn solve(m: &[Vec<Frac>], b: &[Frac]) -> Option<Vec<Frac>> {
    let cols = m.first().map_or(0, |r| r.len());
    let field = b.first()?.field();
    let rank = b[0].rank();
    let mut a: Vec<Vec<Frac>> = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Frac::zero(field, rank); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = a[row][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Series {
        Series::parse(CoefficientField::Rationals, &["x".to_string()], s).unwrap()
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let a = Frac::new(q("x^2 - 1"), q("x + 1")).unwrap();
        assert_eq!(a.as_series().unwrap(), q("x - 1"));
        let b = Frac::new(q("x^2 + x"), q("2*x^2 - 2")).unwrap();
        assert_eq!(b.num(), &q("-1/2*x"));
        assert_eq!(b.den(), &q("1 - x"));
        let c = b.mul(&Frac::new(q("x - 1"), q("x")).unwrap());
        assert_eq!(c.as_constant().unwrap(), Coeff::new(1.into(), 2.into()));
    }

    #[test]
    fn squares_in_the_residue_field() {
        assert!(Frac::new(q("x^2 + 2*x + 1"), q("4")).unwrap().is_square());
        assert!(!Frac::from_series(q("1 + x")).unwrap().is_square());
        assert!(Frac::from_i64(CoefficientField::Rationals, 0, 4).is_square());
        assert!(!Frac::from_i64(CoefficientField::Rationals, 0, 2).is_square());
    }

    #[test]
    fn kernel_and_solve() {
        let f = CoefficientField::Rationals;
        let x = Frac::from_series(q("x")).unwrap();
        let one = Frac::one(f, 1);
        let m = vec![vec![one.clone(), x.clone()], vec![x.clone(), x.mul(&x)]];
        let k = kernel(&m, 2, f, 1);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], x.neg());
        assert_eq!(matrix_rank(&m), 1);
        let s = solve(&m, &[one.clone(), x.clone()]).unwrap();
        assert_eq!(s[0], one);
        assert!(solve(&m, &[one.clone(), one.clone()]).is_none());
    }
}
