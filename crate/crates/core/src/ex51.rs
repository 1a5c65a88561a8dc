//! The rank-2 quaternion tower: `D = (1 + x, y)` over `F = ℚ(x)(y)`, its
//! gauge `α` for a parameter `0 < γ < 1/2`, the coarsening `β`, the
//! End-gauges `α'`, `β'` on `𝕄₂(K)` for `K = F(√(1 + x))`, and the two
//! Dubrovin rings pulled back from the residue field of `β`.

use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;

use crate::algebra::{field_algebra, matrix_over, quaternion, Algebra, Element, Embedding};
use crate::coeff::CoefficientField;
use crate::error::{Error, Result};
use crate::gauge::{end_gauge_on, valuation_gauge, BaseNorm, GaugeExpr};
use crate::ordered::{ExtendedValue, Value};
use crate::precision::PrecisionPolicy;
use crate::quadratic::{BaseField, QuadraticExtension};
use crate::rings::{evaluate_quotient, MembershipOracle, Quotient};
use crate::sample::corpus;
use crate::scalar::{ScalarField, ValuationHandle};
use crate::series::Series;

pub const DEFAULT_GAMMA: (i64, i64) = (1, 4);
/// The parameters compared in the independence checks.
pub const GAMMAS: [(i64, i64); 3] = [(1, 8), (1, 4), (3, 8)];

/// The full tower for one `γ`.
pub struct Example51 {
    pub gamma: Rational64,
    /// `δ = (γ, 1/2)`.
    pub delta: Value,
    pub f: ScalarField,
    pub k: ScalarField,
    pub d: Arc<Algebra>,
    pub s: Arc<Algebra>,
    pub embedding: Embedding,
    pub v: ValuationHandle,
    pub w: ValuationHandle,
    pub alpha: GaugeExpr,
    pub beta: GaugeExpr,
    pub alpha_p: GaugeExpr,
    pub beta_p: GaugeExpr,
}

impl Example51 {
    pub fn new(gamma: Rational64) -> Result<Example51> {
        if gamma <= Rational64::zero() || gamma >= Rational64::new(1, 2) {
            return Err(Error::GammaOutOfRange);
        }
        let base = BaseField::rationals(&["x", "y"]);
        let f = ScalarField::Base(base.clone());
        let d = quaternion(&f, f.parse("1 + x")?, f.parse("y")?)?;
        let ext = QuadraticExtension::new(base.clone(), base.parse("1 + x")?, "t")?;
        let k = ScalarField::Ext(ext);
        let ka = field_algebra(&k);
        let s = matrix_over(&ka, 2)?;
        let kel = |c: [&str; 4]| -> Result<Element> { c.iter().map(|x| k.parse(x)).collect() };
        let embedding = Embedding::quaternion(&d, &s, kel(["t", "0", "0", "-t"])?, kel(["0", "y", "1", "0"])?)?;

        let half = Rational64::new(1, 2);
        let delta = Value::new(vec![gamma, half]);
        let v = ValuationHandle::new(f.clone(), 1);
        let w = v.coarsened(1);
        let el = |c: [&str; 4]| -> Result<Element> { c.iter().map(|x| f.parse(x)).collect() };
        let base_elems =
            vec![el(["1", "1", "0", "0"])?, el(["1", "-1", "0", "0"])?, el(["0", "0", "1", "0"])?, el(["0", "0", "1", "-1"])?];
        let values = vec![Value::zero(2), Value::zero(2), Value::new(vec![-gamma, half]), delta.clone()];
        let alpha = GaugeExpr::base(BaseNorm::new(d.clone(), base_elems, values, v.clone())?);
        let beta = alpha.coarsen(1);

        let vp = k.handles()[0].clone();
        let alpha_p = end_gauge_on(&s, valuation_gauge(&ka, vp.clone())?, vec![Value::zero(2), delta.clone()])?;
        let beta_p = end_gauge_on(&s, valuation_gauge(&ka, vp.coarsened(1))?, vec![Value::zero(1), Value::new(vec![half])])?;
        Ok(Example51 { gamma, delta, f, k, d, s, embedding, v, w, alpha, beta, alpha_p, beta_p })
    }

    pub fn default_gamma() -> Rational64 {
        Rational64::new(DEFAULT_GAMMA.0, DEFAULT_GAMMA.1)
    }

    /// `a + bi + cj + dk` from four scalar literals.
    pub fn element(&self, c: [&str; 4]) -> Result<Element> {
        c.iter().map(|x| self.f.parse(x)).collect()
    }

    pub fn quotient(&self, c: [&str; 4]) -> Result<Quotient> {
        Ok(Quotient::element(&self.d, self.element(c)?))
    }

    /// `α` computed as `α' ∘ φ` through the matrix embedding.
    pub fn alpha_via_embedding(&self, z: &Element) -> Result<ExtendedValue> {
        self.alpha_p.evaluate(&self.embedding.apply(z))
    }

    /// `v(a) ≥ 0, v(b) ≥ 0, w(c) ≥ 0, w(d) ≥ 0` for `z = a + bi + cj + dk`.
    pub fn direct_membership(&self, q: &Quotient) -> Result<bool> {
        let vd = self.v.valuation(&q.den)?.finite().ok_or(Error::DivisionByZero)?.clone();
        let wd = vd.coarsen(1);
        for (idx, c) in q.num.iter().enumerate() {
            let ok = if idx < 2 {
                self.v.valuation(c)? >= ExtendedValue::Finite(vd.clone())
            } else {
                self.w.valuation(c)? >= ExtendedValue::Finite(wd.clone())
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Membership in `B_ℓ`: the pullback of the valuation ring of the
    /// extension of the `x`-adic valuation to `L(x)(√(1 + x))` in which
    /// `s ↦ (−1)^{ℓ+1} √(1 + x)`.
    pub fn dubrovin_membership(&self, l: u8, q: &Quotient) -> Result<bool> {
        if l != 1 && l != 2 {
            return Err(Error::Invalid("only B_1 and B_2 exist".into()));
        }
        match evaluate_quotient(&self.beta, q)?.signum() {
            std::cmp::Ordering::Less => return Ok(false),
            std::cmp::Ordering::Greater => return Ok(true),
            std::cmp::Ordering::Equal => {}
        }
        let (wd, rd) = self.w.leading(&q.den)?.ok_or(Error::DivisionByZero)?;
        let residue = |c: &crate::scalar::Scalar| -> Result<Series> {
            match self.w.leading(c)? {
                Some((wc, rc)) if wc == wd => Ok(rc),
                _ => Ok(Series::zero(CoefficientField::Rationals, 1)),
            }
        };
        let a = residue(&q.num[0])?;
        let b = residue(&q.num[1])?;
        let sign = Series::from_i64(CoefficientField::Rationals, 1, if l == 1 { 1 } else { -1 });
        let u = Series::parse(CoefficientField::Rationals, &["x".to_string()], "1 + x")?;
        let vden = rd.valuation()?;
        let vden = vden.finite().ok_or(Error::DivisionByZero)?.clone();
        PrecisionPolicy::default_for_rank(1).run(|p| {
            let root = u.sqrt(p)?;
            let image = &a + &(&sign * &(&b * &root));
            let vi = image.valuation()?;
            Ok(vi >= ExtendedValue::Finite(vden.clone()))
        })
    }

    pub fn b_oracle(&self, l: u8) -> MembershipOracle<'_> {
        MembershipOracle {
            name: format!("B{}", l),
            provenance: "pullback of a valuation ring of the residue field".into(),
            test: Box::new(move |q| self.dubrovin_membership(l, q)),
        }
    }

    pub fn direct_oracle(&self) -> MembershipOracle<'_> {
        MembershipOracle {
            name: "V,W description".into(),
            provenance: "coordinatewise description".into(),
            test: Box::new(move |q| self.direct_membership(q)),
        }
    }

    pub fn corpus(&self, count: usize, seed: u64) -> Vec<Element> {
        corpus(&self.d, count, seed)
    }

    /// Fixed hard cases: monomial multiples of basis elements, the
    /// `(1 ± i)/x` family and elements on the boundaries of `V` and `W`.
    pub fn adversarial(&self) -> Result<Vec<Quotient>> {
        let shapes: [[&str; 4]; 8] = [
            ["1", "0", "0", "0"],
            ["0", "1", "0", "0"],
            ["0", "0", "1", "0"],
            ["0", "0", "0", "1"],
            ["0", "0", "1", "-1"],
            ["1", "1", "0", "0"],
            ["1", "-1", "0", "0"],
            ["0", "0", "1", "1"],
        ];
        let monomials = ["1", "x", "x^-1", "y", "y^-1", "x^-1*y", "x*y^-1", "x^-2", "x^3*y^-1"];
        let mut out = Vec::new();
        for m in monomials {
            for sh in shapes {
                let c = sh.map(|s| if s == "0" { "0".to_string() } else { format!("{}*{}", s, m) });
                out.push(self.quotient([c[0].as_str(), c[1].as_str(), c[2].as_str(), c[3].as_str()])?);
            }
        }
        for c in [
            ["x^-1", "x^-1", "0", "0"],
            ["x^-1", "-x^-1", "0", "0"],
            ["1 + 2*x^-1", "2*x^-1", "0", "0"],
            ["1 + 2*x^-1", "-2*x^-1", "0", "0"],
            ["1/2*x^-1", "-1/2*x^-1", "y^-1", "0"],
            ["x^-1", "-x^-1", "0", "x^-1"],
            ["1", "0", "x^-5", "x^7"],
            ["y", "x^-3*y", "x^-3", "0"],
        ] {
            out.push(self.quotient(c)?);
        }
        let d = &self.d;
        for c in [["1", "1", "0", "0"], ["x^-1", "-x^-1", "0", "0"], ["0", "0", "1", "-1"], ["x", "1", "0", "0"]] {
            out.push(Quotient::inverse(d, &self.element(c)?)?);
        }
        Ok(out)
    }
}

/// The three parameters of the independence checks.
pub fn gammas() -> Vec<Rational64> {
    GAMMAS.iter().map(|&(p, q)| Rational64::new(p, q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::GaugeRingVerdict;

    fn ex() -> Example51 {
        Example51::new(Example51::default_gamma()).unwrap()
    }

    #[test]
    fn values_agree_through_the_embedding() {
        let e = ex();
        for c in [
            ["1", "0", "0", "0"],
            ["0", "1", "0", "0"],
            ["0", "0", "1", "0"],
            ["0", "0", "0", "1"],
            ["0", "0", "1", "-1"],
            ["x", "y^-1", "3", "x*y"],
        ] {
            let z = e.element(c).unwrap();
            assert_eq!(e.alpha.evaluate(&z).unwrap(), e.alpha_via_embedding(&z).unwrap(), "{:?}", c);
        }
    }

    #[test]
    fn dubrovin_examples() {
        let e = ex();
        let i = e.quotient(["0", "1", "0", "0"]).unwrap();
        assert!(e.dubrovin_membership(1, &i).unwrap() && e.dubrovin_membership(2, &i).unwrap());
        let z = e.quotient(["x^-1", "-x^-1", "0", "0"]).unwrap();
        assert!(e.dubrovin_membership(1, &z).unwrap());
        assert!(!e.dubrovin_membership(2, &z).unwrap());
        assert_eq!(crate::rings::membership_quotient(&e.alpha, &z).unwrap(), GaugeRingVerdict::NotInRing);
        let j = e.quotient(["0", "0", "1", "0"]).unwrap();
        assert!(e.dubrovin_membership(1, &j).unwrap() && e.dubrovin_membership(2, &j).unwrap());
    }

    #[test]
    fn gamma_range_is_enforced() {
        assert!(matches!(Example51::new(Rational64::new(1, 2)), Err(Error::GammaOutOfRange)));
        assert!(matches!(Example51::new(Rational64::zero()), Err(Error::GammaOutOfRange)));
    }
}
