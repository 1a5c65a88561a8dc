//! Exact coefficient fields: `ℚ` and `GF(p)` for odd primes `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficients are stored as rationals; over `GF(p)` they are kept reduced
/// to integers in `[0, p)`.
pub type Coeff = BigRational;

/// The field `k` of coefficients. Characteristic 2 is excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Rationals,
    Prime(u64),
}

impl CoefficientField {
    /// `GF(p)` after checking that `p` is an odd prime.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Invalid(format!("{} is not an odd prime", p)));
        }
        Ok(CoefficientField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::Prime(p) => *p,
        }
    }

    /// Brings an arbitrary rational into canonical form for this field.
    pub fn normalize(&self, c: Coeff) -> Coeff {
        match self {
            CoefficientField::Rationals => c,
            CoefficientField::Prime(p) => {
                let p = BigInt::from(*p);
                let num = c.numer().mod_floor(&p);
                let den = c.denom().mod_floor(&p);
                let inv = mod_inverse(&den, &p).expect("denominator divisible by p");
                BigRational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        self.normalize(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_sum(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_sum(a - b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.reduce_sum(-a)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            CoefficientField::Rationals => a * b,
            CoefficientField::Prime(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer((a.numer() * b.numer()).mod_floor(&p))
            }
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            CoefficientField::Rationals => a.recip(),
            CoefficientField::Prime(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer(mod_inverse(a.numer(), &p).expect("nonzero residue"))
            }
        })
    }

    /// A square root in `k`, if one exists. Over `ℚ` the root is exact; over
    /// `GF(p)` Euler's criterion decides and Tonelli-Shanks computes it.
    pub fn sqrt(&self, a: &Coeff) -> Option<Coeff> {
        if a.is_zero() {
            return Some(a.clone());
        }
        match self {
            CoefficientField::Rationals => {
                if a.is_negative() {
                    return None;
                }
                let n = exact_sqrt(a.numer())?;
                let d = exact_sqrt(a.denom())?;
                Some(BigRational::new(n, d))
            }
            CoefficientField::Prime(p) => {
                let r = a.numer().to_u64()?;
                tonelli_shanks(r % p, *p).map(|s| BigRational::from_integer(BigInt::from(s)))
            }
        }
    }

    pub fn is_square(&self, a: &Coeff) -> bool {
        self.sqrt(a).is_some()
    }

    fn reduce_sum(&self, c: Coeff) -> Coeff {
        match self {
            CoefficientField::Rationals => c,
            CoefficientField::Prime(p) => BigRational::from_integer(c.numer().mod_floor(&BigInt::from(*p))),
        }
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(p).extended_gcd(p);
    e.gcd.is_one().then(|| e.x.mod_floor(p))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut bb = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % m128;
        }
        bb = bb * bb % m128;
        e >>= 1;
    }
    b = r as u64;
    b
}

/// Square root modulo an odd prime.
pub fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 1;
        let mut t2 = mulm(t, t);
        while t2 != 1 {
            t2 = mulm(t2, t2);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r)
}

/// Parses `p` or `p/q` into an exact rational.
pub fn parse_big_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{}'", s));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `binom(1/2, j)`, the coefficients of `(1 + r)^{1/2}`.
pub fn half_binomial(j: u32) -> BigRational {
    let mut acc = BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for i in 0..j {
        let num = &half - BigRational::from_integer(BigInt::from(i));
        acc = acc * num / BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Coeff {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn rational_sqrt_is_exact() {
        let f = CoefficientField::Rationals;
        assert_eq!(f.sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(f.sqrt(&q(2, 1)), None);
        assert_eq!(f.sqrt(&q(-1, 1)), None);
    }

    #[test]
    fn tonelli_shanks_matches_brute_force() {
        for p in [3u64, 5, 7, 11, 13, 17, 97] {
            for a in 0..p {
                let brute = (0..p).any(|x| x * x % p == a);
                let ts = tonelli_shanks(a, p);
                assert_eq!(brute, ts.is_some(), "p={} a={}", p, a);
                if let Some(r) = ts {
                    assert_eq!(r * r % p, a);
                }
            }
        }
    }

    #[test]
    fn prime_field_normalizes_fractions() {
        let f = CoefficientField::prime(7).unwrap();
        let half = f.normalize(q(1, 2));
        assert_eq!(half, q(4, 1));
        assert_eq!(f.mul(&half, &f.from_i64(2)), q(1, 1));
        assert!(CoefficientField::prime(9).is_err());
        assert!(CoefficientField::prime(2).is_err());
    }

    #[test]
    fn half_binomials() {
        assert_eq!(half_binomial(0), q(1, 1));
        assert_eq!(half_binomial(1), q(1, 2));
        assert_eq!(half_binomial(2), q(-1, 8));
        assert_eq!(half_binomial(3), q(1, 16));
    }
}
