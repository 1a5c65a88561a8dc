//! Finite-dimensional algebras over a residue field `k(x₁,…,x_k)`: radical
//! by the trace form, center, and the number of simple components.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{Coeff, CoefficientField};
use crate::error::{Error, Result};
use crate::frac::{kernel, matrix_rank, rref, solve, Frac};

/// Seeds tried when searching for a generating central element.
pub const CENTRAL_SEEDS: u64 = 8;

/// An algebra given by dense structure constants `b_i b_j = Σ c_ijk b_k`.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    pub field: CoefficientField,
    pub rank: usize,
    pub labels: Vec<String>,
    table: Vec<Vec<Vec<Frac>>>,
}

pub type Vector = Vec<Frac>;

impl FdAlgebra {
    pub fn new(field: CoefficientField, rank: usize, labels: Vec<String>, table: Vec<Vec<Vec<Frac>>>) -> Result<FdAlgebra> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(Error::Invalid("structure constants do not match the basis".into()));
        }
        Ok(FdAlgebra { field, rank, labels, table })
    }

    /// `𝕄_n(k)` with matrix units `e_pq`.
    pub fn matrix(field: CoefficientField, rank: usize, n: usize) -> FdAlgebra {
        let d = n * n;
        let zero = Frac::zero(field, rank);
        let mut table = vec![vec![vec![zero; d]; d]; d];
        for p in 0..n {
            for q in 0..n {
                for s in 0..n {
                    table[p * n + q][q * n + s][p * n + s] = Frac::one(field, rank);
                }
            }
        }
        let labels = (0..d).map(|i| format!("e{}{}", i / n + 1, i % n + 1)).collect();
        FdAlgebra { field, rank, labels, table }
    }

    /// Upper-triangular `n × n` matrices.
    pub fn upper_triangular(field: CoefficientField, rank: usize, n: usize) -> FdAlgebra {
        let full = FdAlgebra::matrix(field, rank, n);
        let keep: Vec<usize> = (0..n * n).filter(|i| i / n <= i % n).collect();
        full.subalgebra_on(&keep)
    }

    /// `kⁿ` with orthogonal idempotents.
    pub fn split(field: CoefficientField, rank: usize, n: usize) -> FdAlgebra {
        let zero = Frac::zero(field, rank);
        let mut table = vec![vec![vec![zero; n]; n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            row[i][i] = Frac::one(field, rank);
        }
        FdAlgebra { field, rank, labels: (0..n).map(|i| format!("e{}", i + 1)).collect(), table }
    }

    /// Restriction to a subset of basis elements spanning a subalgebra.
    pub fn subalgebra_on(&self, keep: &[usize]) -> FdAlgebra {
        let table = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| keep.iter().map(|&k| self.table[i][j][k].clone()).collect()).collect())
            .collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        FdAlgebra { field: self.field, rank: self.rank, labels, table }
    }

    /// Block product `A × B`.
    pub fn product(parts: &[FdAlgebra]) -> FdAlgebra {
        let first = &parts[0];
        let n: usize = parts.iter().map(|p| p.dim()).sum();
        let zero = Frac::zero(first.field, first.rank);
        let mut table = vec![vec![vec![zero; n]; n]; n];
        let mut labels = Vec::new();
        let mut off = 0;
        for (pi, p) in parts.iter().enumerate() {
            let d = p.dim();
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        table[off + i][off + j][off + k] = p.table[i][j][k].clone();
                    }
                }
            }
            labels.extend(p.labels.iter().map(|l| format!("{}#{}", l, pi + 1)));
            off += d;
        }
        FdAlgebra { field: first.field, rank: first.rank, labels, table }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn zero(&self) -> Vector {
        vec![Frac::zero(self.field, self.rank); self.dim()]
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = Frac::one(self.field, self.rank);
        v
    }

    pub fn structure(&self, i: usize, j: usize) -> &[Frac] {
        &self.table[i][j]
    }

    pub fn add(&self, x: &Vector, y: &Vector) -> Vector {
        x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
    }

    pub fn sub(&self, x: &Vector, y: &Vector) -> Vector {
        x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
    }

    pub fn scale(&self, c: &Frac, x: &Vector) -> Vector {
        x.iter().map(|a| c.mul(a)).collect()
    }

    pub fn is_zero(&self, x: &Vector) -> bool {
        x.iter().all(|a| a.is_zero())
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].add(&ab.mul(c));
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication; column `j` is `x · b_j`.
    pub fn left_matrix(&self, x: &Vector) -> Vec<Vec<Frac>> {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(x, &self.basis(j))).collect();
        (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    }

    pub fn trace(&self, x: &Vector) -> Frac {
        let m = self.left_matrix(x);
        (0..self.dim()).fold(Frac::zero(self.field, self.rank), |acc, i| acc.add(&m[i][i]))
    }

    /// The unit element, if the algebra has one.
    pub fn unit(&self) -> Option<Vector> {
        let n = self.dim();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|a| self.table[a][j][k].clone()).collect());
                rhs.push(if j == k { Frac::one(self.field, self.rank) } else { Frac::zero(self.field, self.rank) });
            }
        }
        let u = solve(&rows, &rhs)?;
        (0..n).all(|j| self.mul(&self.basis(j), &u) == self.basis(j)).then_some(u)
    }

    /// Kernel of the trace form `T(x, y) = tr(L_{xy})`; this is the
    /// Jacobson radical in characteristic 0.
    pub fn radical(&self) -> Result<Vec<Vector>> {
        if self.field.characteristic() != 0 {
            return Err(Error::UnsupportedCharacteristic);
        }
        let n = self.dim();
        let traces: Vec<Frac> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| self.trace(&self.table[a][b].clone())).collect();
        let t: Vec<Vec<Frac>> = (0..n).map(|a| (0..n).map(|b| traces[a * n + b].clone()).collect()).collect();
        Ok(kernel(&t, n, self.field, self.rank))
    }

    pub fn is_semisimple(&self) -> Result<bool> {
        Ok(self.radical()?.is_empty())
    }

    pub fn center(&self) -> Vec<Vector> {
        let n = self.dim();
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|a| self.table[a][j][k].sub(&self.table[j][a][k])).collect());
            }
        }
        kernel(&rows, n, self.field, self.rank)
    }

    /// Quotient by the ideal spanned by `ideal`, on a complement spanned by
    /// standard basis vectors.
    pub fn quotient(&self, ideal: &[Vector]) -> FdAlgebra {
        let n = self.dim();
        let mut m = ideal.to_vec();
        let pivots = rref(&mut m);
        let keep: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let reduce = |v: &Vector| -> Vector {
            let mut v = v.clone();
            for (row, &pc) in pivots.iter().enumerate() {
                if !v[pc].is_zero() {
                    let f = v[pc].clone();
                    for c in 0..n {
                        v[c] = v[c].sub(&f.mul(&m[row][c]));
                    }
                }
            }
            keep.iter().map(|&c| v[c].clone()).collect()
        };
        let table = keep.iter().map(|&i| keep.iter().map(|&j| reduce(&self.table[i][j])).collect()).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        FdAlgebra { field: self.field, rank: self.rank, labels, table }
    }

    /// Number of simple components of a semisimple algebra: the number of
    /// irreducible factors of the minimal polynomial of a generating
    /// element of the center.
    pub fn count_simple_components(&self, seed: u64) -> Result<usize> {
        if !self.radical()?.is_empty() {
            return Err(Error::NotSemisimple);
        }
        let z = self.center();
        if z.len() <= 1 {
            return Ok(z.len());
        }
        let unit = self.unit().ok_or_else(|| Error::Invalid("algebra has no unit".into()))?;
        for attempt in 0..CENTRAL_SEEDS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
            let mut g = self.zero();
            for b in &z {
                let r = Frac::from_i64(self.field, self.rank, rng.gen_range(-3..=3));
                g = self.add(&g, &self.scale(&r, b));
            }
            let poly = self.minimal_polynomial(&unit, &g);
            if poly.len() - 1 < z.len() {
                continue;
            }
            match count_factors(self.field, self.rank, &poly) {
                Ok(c) => return Ok(c),
                Err(Error::Unsupported(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::Unsupported("no generating central element with a factorable minimal polynomial".into()))
    }

    /// Monic minimal polynomial of `g`, lowest coefficient first.
    pub fn minimal_polynomial(&self, unit: &Vector, g: &Vector) -> Vec<Frac> {
        let mut powers = vec![unit.clone()];
        loop {
            let next = self.mul(powers.last().expect("nonempty"), g);
            let cols: Vec<Vec<Frac>> = (0..self.dim()).map(|i| powers.iter().map(|p| p[i].clone()).collect()).collect();
            if let Some(c) = solve(&cols, &next) {
                let mut poly: Vec<Frac> = c.iter().map(|x| x.neg()).collect();
                poly.push(Frac::one(self.field, self.rank));
                return poly;
            }
            powers.push(next);
        }
    }

    pub fn span_dim(&self, vs: &[Vector]) -> usize {
        matrix_rank(vs)
    }
}

/// Number of irreducible factors of a squarefree monic polynomial.
pub fn count_factors(field: CoefficientField, rank: usize, poly: &[Frac]) -> Result<usize> {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return Ok(deg);
    }
    // A polynomial over `k` factors over `k(x₁,…,x_k)` exactly as over `k`,
    // since `k` is algebraically closed in the rational function field.
    let constants: Option<Vec<Coeff>> = poly.iter().map(|c| c.as_constant()).collect();
    if let Some(coeffs) = constants {
        return match field {
            CoefficientField::Rationals => count_rational_factors(coeffs),
            CoefficientField::Prime(p) => count_mod_p_factors(field, p, coeffs),
        };
    }
    if rank == 0 {
        return Err(Error::Invalid("nonconstant coefficient".into()));
    }
    if deg == 2 {
        let disc = poly[1].mul(&poly[1]).sub(&Frac::from_i64(field, rank, 4).mul(&poly[0]));
        return Ok(if disc.is_square() { 2 } else { 1 });
    }
    Err(Error::Unsupported(format!("factoring degree {} over a function field", deg)))
}

fn eval(p: &[Coeff], x: &Coeff) -> Coeff {
    p.iter().rev().fold(Coeff::zero(), |acc, c| acc * x + c)
}

fn deflate(p: &[Coeff], r: &Coeff) -> Vec<Coeff> {
    let d = p.len() - 1;
    let mut q = vec![Coeff::zero(); d];
    let mut carry = Coeff::zero();
    for i in (1..=d).rev() {
        carry = &carry * r + &p[i];
        q[i - 1] = carry.clone();
    }
    q
}

fn leftover_factors(deg: usize) -> Result<usize> {
    match deg {
        0 => Ok(0),
        2 | 3 => Ok(1),
        d => Err(Error::Unsupported(format!("rootless factor of degree {}", d))),
    }
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if d > BigInt::from(1_000_000) {
            return Err(Error::Unsupported("coefficient too large to factor".into()));
        }
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for base in &out {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(base * &pw);
                pw *= &p;
            }
        }
        out = next;
    }
    Ok(out)
}

fn count_rational_factors(mut p: Vec<Coeff>) -> Result<usize> {
    let mut count = 0;
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        count += 1;
    }
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Coeff::from_integer(lcm.clone())).to_integer()).collect();
    if p.len() > 1 {
        let num_divs = divisors(&ints[0])?;
        let den_divs = divisors(ints.last().expect("nonempty"))?;
        'outer: for a in &num_divs {
            for b in &den_divs {
                for sign in [1, -1] {
                    let r = Coeff::new(a * sign, b.clone());
                    while p.len() > 1 && eval(&p, &r).is_zero() {
                        p = deflate(&p, &r);
                        count += 1;
                    }
                    if p.len() <= 1 {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(count + leftover_factors(p.len() - 1)?)
}

fn count_mod_p_factors(field: CoefficientField, prime: u64, mut p: Vec<Coeff>) -> Result<usize> {
    if prime > 100_000 {
        return Err(Error::Unsupported("root search over a large prime field".into()));
    }
    let mut count = 0;
    for r in 0..prime {
        let r = Coeff::from_integer(BigInt::from(r));
        while p.len() > 1 && field.normalize(eval(&p, &r)).is_zero() {
            p = deflate(&p, &r).into_iter().map(|c| field.normalize(c)).collect();
            count += 1;
        }
    }
    Ok(count + leftover_factors(p.len() - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoefficientField = CoefficientField::Rationals;

    #[test]
    fn radical_examples() {
        assert!(FdAlgebra::split(Q, 0, 2).radical().unwrap().is_empty());
        assert!(FdAlgebra::matrix(Q, 0, 2).radical().unwrap().is_empty());
        let t = FdAlgebra::upper_triangular(Q, 0, 2);
        let r = t.radical().unwrap();
        assert_eq!(r.len(), 1);
        let e12 = t.labels.iter().position(|l| l == "e12").unwrap();
        assert!(r[0].iter().enumerate().all(|(i, c)| (i == e12) != c.is_zero()));
        assert!(t.quotient(&r).radical().unwrap().is_empty());
        let gf = FdAlgebra::split(CoefficientField::Prime(5), 0, 2);
        assert!(matches!(gf.radical(), Err(Error::UnsupportedCharacteristic)));
    }

    #[test]
    fn simple_component_counts() {
        assert_eq!(FdAlgebra::split(Q, 0, 2).count_simple_components(42).unwrap(), 2);
        assert_eq!(FdAlgebra::matrix(Q, 0, 2).count_simple_components(42).unwrap(), 1);
        let mixed = FdAlgebra::product(&[FdAlgebra::split(Q, 0, 2), FdAlgebra::matrix(Q, 0, 2)]);
        assert_eq!(mixed.count_simple_components(42).unwrap(), 3);
        assert_eq!(FdAlgebra::split(Q, 1, 3).count_simple_components(7).unwrap(), 3);
        let t = FdAlgebra::upper_triangular(Q, 0, 2);
        assert!(matches!(t.count_simple_components(42), Err(Error::NotSemisimple)));
    }

    #[test]
    fn quadratic_field_is_one_component() {
        // ℚ(√2) with basis 1, s.
        let f = |n| Frac::from_i64(Q, 0, n);
        let table = vec![vec![vec![f(1), f(0)], vec![f(0), f(1)]], vec![vec![f(0), f(1)], vec![f(2), f(0)]]];
        let a = FdAlgebra::new(Q, 0, vec!["1".into(), "s".into()], table).unwrap();
        assert_eq!(a.count_simple_components(42).unwrap(), 1);
        let b = FdAlgebra::product(&[a.clone(), FdAlgebra::split(Q, 0, 1)]);
        assert_eq!(b.count_simple_components(42).unwrap(), 2);
    }
}
