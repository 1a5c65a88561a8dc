//! Seeded sample corpora: Laurent monomial combinations with exponents in
//! `[−3, 3]` and coefficients from a small rational pool.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element};
use crate::coeff::Coeff;
use crate::scalar::{Scalar, ScalarField};
use crate::series::Series;

pub const DEFAULT_SEED: u64 = 42;
pub const EXPONENT_RANGE: i64 = 3;

/// `{±1, ±2, ±1/2, 3, 1/3}`.
pub fn coefficient_pool() -> Vec<Coeff> {
    [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (1, 3)]
        .iter()
        .map(|&(p, q)| Coeff::new(BigInt::from(p), BigInt::from(q)))
        .collect()
}

/// A deterministic sampler of scalars and algebra elements.
pub struct Sampler {
    rng: ChaCha8Rng,
    pool: Vec<Coeff>,
    /// Probability that a coordinate is zero.
    pub zero_rate: f64,
    pub max_terms: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), pool: coefficient_pool(), zero_rate: 0.25, max_terms: 3 }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A Laurent polynomial over the base field with 1 to `max_terms` terms.
    pub fn series(&mut self, field: &ScalarField) -> Series {
        let base = field.base_field();
        let n = base.rank();
        let terms = self.rng.gen_range(1..=self.max_terms);
        let mut out = base.zero();
        for _ in 0..terms {
            let exps: Vec<i64> = (0..n).map(|_| self.rng.gen_range(-EXPONENT_RANGE..=EXPONENT_RANGE)).collect();
            let c = self.pool[self.rng.gen_range(0..self.pool.len())].clone();
            out = &out + &Series::monomial(base.coeff, &exps, c);
        }
        out
    }

    /// A nonzero scalar; extension scalars get both parts.
    pub fn scalar(&mut self, field: &ScalarField) -> Scalar {
        let a = self.series(field);
        if field.is_ext() && self.rng.gen_bool(0.5) {
            let b = self.series(field);
            if self.rng.gen_bool(0.3) {
                return field.from_parts(field.base_field().zero(), b);
            }
            return field.from_parts(a, b);
        }
        field.from_series(a)
    }

    /// A random element; never the zero element.
    pub fn element(&mut self, alg: &Algebra) -> Element {
        loop {
            let z: Element = (0..alg.dim())
                .map(|_| if self.rng.gen_bool(self.zero_rate) { alg.field.zero() } else { self.scalar(&alg.field) })
                .collect();
            if !alg.is_zero(&z) {
                return z;
            }
        }
    }

    pub fn elements(&mut self, alg: &Algebra, count: usize) -> Vec<Element> {
        (0..count).map(|_| self.element(alg)).collect()
    }
}

/// `count` seeded elements of `alg`.
pub fn corpus(alg: &Algebra, count: usize, seed: u64) -> Vec<Element> {
    Sampler::new(seed).elements(alg, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quaternion;
    use crate::quadratic::BaseField;

    #[test]
    fn corpora_are_deterministic() {
        let f = ScalarField::Base(BaseField::rationals(&["x", "y"]));
        let d = quaternion(&f, f.parse("1 + x").unwrap(), f.parse("y").unwrap()).unwrap();
        let a = corpus(&d, 20, 7);
        let b = corpus(&d, 20, 7);
        assert_eq!(a, b);
        assert_ne!(a, corpus(&d, 20, 8));
        assert!(a.iter().all(|z| !d.is_zero(z)));
    }
}
