//! Scalars of an algebra: elements of the base field `F` or of a quadratic
//! extension `K = F(t)`, together with valuation handles that select one
//! extension of the base valuation and, optionally, a coarsening.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::ordered::{ExtendedValue, Value};
use crate::precision::{Precision, PrecisionPolicy};
use crate::quadratic::{BaseField, QuadraticExtension};
use crate::series::{parse_terms, Series};

/// `a + b·t`; over the base field `b` is always zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    pub a: Series,
    pub b: Series,
}

/// The field an algebra is defined over.
#[derive(Clone)]
pub enum ScalarField {
    Base(Arc<BaseField>),
    Ext(Arc<QuadraticExtension>),
}

impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ScalarField::Base(a), ScalarField::Base(b)) => Arc::ptr_eq(a, b),
            (ScalarField::Ext(a), ScalarField::Ext(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Base(b) => write!(f, "F[{}]", b.vars.join(",")),
            ScalarField::Ext(e) => write!(f, "{:?}", e),
        }
    }
}

impl ScalarField {
    pub fn base_field(&self) -> &Arc<BaseField> {
        match self {
            ScalarField::Base(b) => b,
            ScalarField::Ext(e) => &e.base,
        }
    }

    pub fn ext(&self) -> Option<&Arc<QuadraticExtension>> {
        match self {
            ScalarField::Base(_) => None,
            ScalarField::Ext(e) => Some(e),
        }
    }

    pub fn is_ext(&self) -> bool {
        self.ext().is_some()
    }

    pub fn rank(&self) -> usize {
        self.base_field().rank()
    }

    pub fn policy(&self) -> &PrecisionPolicy {
        &self.base_field().policy
    }

    /// Degree over the base field.
    pub fn degree(&self) -> usize {
        if self.is_ext() {
            2
        } else {
            1
        }
    }

    fn series_zero(&self) -> Series {
        self.base_field().zero()
    }

    pub fn zero(&self) -> Scalar {
        Scalar { a: self.series_zero(), b: self.series_zero() }
    }

    pub fn one(&self) -> Scalar {
        self.from_series(self.base_field().one())
    }

    pub fn from_series(&self, a: Series) -> Scalar {
        Scalar { a, b: self.series_zero() }
    }

    pub fn from_parts(&self, a: Series, b: Series) -> Scalar {
        Scalar { a, b }
    }

    pub fn from_i64(&self, c: i64) -> Scalar {
        let f = self.base_field();
        self.from_series(Series::from_i64(f.coeff, f.rank(), c))
    }

    pub fn from_coeff(&self, c: Coeff) -> Scalar {
        let f = self.base_field();
        self.from_series(Series::constant(f.coeff, f.rank(), c))
    }

    /// The generator `t` of an extension.
    pub fn t(&self) -> Result<Scalar> {
        if !self.is_ext() {
            return Err(Error::Invalid("the base field has no generator t".into()));
        }
        Ok(Scalar { a: self.series_zero(), b: self.base_field().one() })
    }

    pub fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        Scalar { a: &x.a + &y.a, b: &x.b + &y.b }
    }

    pub fn sub(&self, x: &Scalar, y: &Scalar) -> Scalar {
        Scalar { a: &x.a - &y.a, b: &x.b - &y.b }
    }

    pub fn neg(&self, x: &Scalar) -> Scalar {
        Scalar { a: -&x.a, b: -&x.b }
    }

    pub fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match self {
            ScalarField::Base(_) => self.from_series(&x.a * &y.a),
            ScalarField::Ext(e) => {
                if x.b.is_zero() {
                    return Scalar { a: &x.a * &y.a, b: &x.a * &y.b };
                }
                if y.b.is_zero() {
                    return Scalar { a: &x.a * &y.a, b: &x.b * &y.a };
                }
                let bd = &x.b * &y.b;
                Scalar { a: &(&x.a * &y.a) + &(&bd * &e.u), b: &(&x.a * &y.b) + &(&x.b * &y.a) }
            }
        }
    }

    pub fn scale_series(&self, x: &Scalar, s: &Series) -> Scalar {
        Scalar { a: &x.a * s, b: &x.b * s }
    }

    pub fn pow(&self, x: &Scalar, e: u32) -> Scalar {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// `a − b·t`.
    pub fn conj(&self, x: &Scalar) -> Scalar {
        Scalar { a: x.a.clone(), b: -&x.b }
    }

    /// Norm down to the base field.
    pub fn norm(&self, x: &Scalar) -> Series {
        match self {
            ScalarField::Base(_) => x.a.clone(),
            ScalarField::Ext(e) => e.norm(&x.a, &x.b),
        }
    }

    pub fn inv(&self, x: &Scalar, p: &Precision) -> Result<Scalar> {
        if self.is_zero(x) {
            return Err(Error::DivisionByZero);
        }
        match self {
            ScalarField::Base(_) => Ok(self.from_series(x.a.inv(p)?)),
            ScalarField::Ext(_) => {
                let n = self.norm(x).inv(p)?;
                Ok(self.scale_series(&self.conj(x), &n))
            }
        }
    }

    /// Exact quotient of polynomial scalars, if it exists.
    pub fn div_exact(&self, x: &Scalar, y: &Scalar) -> Option<Scalar> {
        if self.is_zero(y) {
            return None;
        }
        match self {
            ScalarField::Base(_) => Some(self.from_series(x.a.div_exact(&y.a)?)),
            ScalarField::Ext(_) => {
                if y.b.is_zero() {
                    return Some(Scalar { a: x.a.div_exact(&y.a)?, b: x.b.div_exact(&y.a)? });
                }
                let n = self.norm(y);
                let p = self.mul(x, &self.conj(y));
                Some(Scalar { a: p.a.div_exact(&n)?, b: p.b.div_exact(&n)? })
            }
        }
    }

    pub fn is_zero(&self, x: &Scalar) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }

    pub fn is_exact(&self, x: &Scalar) -> bool {
        x.a.is_exact() && x.b.is_exact()
    }

    /// Variable names usable in literals, including the generator.
    pub fn names(&self) -> Vec<String> {
        let mut v = self.base_field().vars.clone();
        if let Some(e) = self.ext() {
            v.push(e.name.clone());
        }
        v
    }

    /// Parses a literal; over an extension the generator may appear with a
    /// nonnegative exponent.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let names = self.names();
        let n = self.rank();
        let base = self.base_field();
        let mut acc = self.zero();
        for (exps, c) in parse_terms(text, &names)? {
            let mono = Series::monomial(base.coeff, &exps[..n], c);
            let term = match self.ext() {
                None => self.from_series(mono),
                Some(e) => {
                    let te = exps[n];
                    if te < 0 {
                        return Err(Error::Parse(format!("negative power of {} in '{}'", e.name, text)));
                    }
                    let s = &mono * &e.u.pow((te / 2) as u32);
                    if te % 2 == 0 {
                        self.from_series(s)
                    } else {
                        Scalar { a: self.series_zero(), b: s }
                    }
                }
            };
            acc = self.add(&acc, &term);
        }
        Ok(acc)
    }

    pub fn format(&self, x: &Scalar) -> String {
        let base = self.base_field();
        match self.ext() {
            None => base.format(&x.a),
            Some(e) => {
                if x.b.is_zero() {
                    base.format(&x.a)
                } else if x.a.is_zero() {
                    format!("({})*{}", base.format(&x.b), e.name)
                } else {
                    format!("{} + ({})*{}", base.format(&x.a), base.format(&x.b), e.name)
                }
            }
        }
    }

    /// The valuation handles of all extensions of the base valuation.
    pub fn handles(&self) -> Vec<ValuationHandle> {
        match self {
            ScalarField::Base(_) => vec![ValuationHandle::new(self.clone(), 1)],
            ScalarField::Ext(_) => {
                vec![ValuationHandle::new(self.clone(), 1), ValuationHandle::new(self.clone(), -1)]
            }
        }
    }

    /// Maps a scalar of `F` into this field.
    pub fn embed_base(&self, x: &Scalar) -> Scalar {
        Scalar { a: x.a.clone(), b: x.b.clone() }
    }
}

/// A valuation on a scalar field: the base valuation, or the extension to
/// `K` in which `t` maps to `sign · √u`; then composed with the projection
/// modulo `Δ_cut`.
#[derive(Clone, Debug, PartialEq)]
pub struct ValuationHandle {
    pub field: ScalarField,
    pub sign: i8,
    pub cut: usize,
}

impl ValuationHandle {
    pub fn new(field: ScalarField, sign: i8) -> Self {
        ValuationHandle { field, sign, cut: 0 }
    }

    pub fn rank(&self) -> usize {
        self.field.rank()
    }

    /// Rank of the value group after coarsening.
    pub fn value_rank(&self) -> usize {
        self.rank() - self.cut
    }

    /// The coarsening by `Δ_k`, `k` counted from the finest variable.
    pub fn coarsened(&self, k: usize) -> ValuationHandle {
        ValuationHandle { field: self.field.clone(), sign: self.sign, cut: k.min(self.rank()) }
    }

    pub fn label(&self) -> String {
        let mut s = String::from("v");
        if self.field.is_ext() {
            s.push(if self.sign > 0 { '+' } else { '-' });
        }
        if self.cut > 0 {
            s.push_str(&format!("@{}", self.cut));
        }
        s
    }

    /// Image of a scalar in the ambient series field under this embedding.
    pub fn embed_at(&self, x: &Scalar, p: &Precision) -> Result<Series> {
        match self.field.ext() {
            Some(e) if !x.b.is_zero() => {
                let r = e.root(p)?;
                let br = &x.b * &r;
                Ok(if self.sign > 0 { &x.a + &br } else { &x.a - &br })
            }
            _ => Ok(x.a.clone()),
        }
    }

    pub fn valuation_at(&self, x: &Scalar, p: &Precision) -> Result<ExtendedValue> {
        self.embed_at(x, p)?.coarse_valuation(self.cut)
    }

    /// Valuation with automatic precision refinement.
    pub fn valuation(&self, x: &Scalar) -> Result<ExtendedValue> {
        if x.b.is_zero() {
            return x.a.coarse_valuation(self.cut);
        }
        self.field.policy().run(|p| self.valuation_at(x, p))
    }

    /// Leading term: coarse value and residue coefficient of rank `cut`.
    pub fn leading_at(&self, x: &Scalar, p: &Precision) -> Result<Option<(Value, Series)>> {
        self.embed_at(x, p)?.leading(self.cut)
    }

    pub fn leading(&self, x: &Scalar) -> Result<Option<(Value, Series)>> {
        self.field.policy().run(|p| self.leading_at(x, p))
    }

    /// True when both handles are the same valuation after coarsening.
    pub fn same_valuation(&self, other: &ValuationHandle) -> Result<bool> {
        if self.field != other.field || self.cut != other.cut {
            return Ok(false);
        }
        match self.field.ext() {
            None => Ok(true),
            Some(e) => Ok(self.sign == other.sign || e.common_coarsening()? <= self.cut),
        }
    }
}

/// An element `c` of `K` with `v_k(c) = 0`, `v_k(c − 1) > 0` and
/// `v_i(c) > δ_i` for the other extension, in the quadratic case.
///
/// Candidates are `((1 + s_k·t/ρ)/2)^m` for `m ≤ 16`, where `ρ` is the
/// leading monomial of `√u`. Multiplying by a lattice monomial cannot help:
/// `v_k(c) = 0` pins the monomial to `1`.
pub fn approximate(handles: &[ValuationHandle], k: usize, deltas: &[Value]) -> Result<Scalar> {
    let hk = handles.get(k).ok_or_else(|| Error::Invalid("handle index out of range".into()))?;
    let field = &hk.field;
    if handles.len() == 1 {
        return Ok(field.one());
    }
    if handles.len() > 2 {
        return Err(Error::Unsupported("at most two extensions are supported".into()));
    }
    if deltas.len() != handles.len() || !deltas[k].is_zero() {
        return Err(Error::Invalid("deltas must have one entry per handle and vanish at k".into()));
    }
    let e = field.ext().ok_or_else(|| Error::Invalid("two handles need an extension".into()))?;
    let policy = field.policy();
    let (lead_v, lead_c) = policy.run(|p| e.root(p)?.leading_coefficient())?.ok_or(Error::DivisionByZero)?;
    let lead_e = lead_v.to_ints().expect("lattice exponent");
    let base = field.base_field();
    let rho_inv = Series::monomial(base.coeff, &lead_e.iter().map(|x| -x).collect::<Vec<_>>(), base.coeff.inv(&lead_c)?);
    let half = BigRational::new(One::one(), 2.into());
    let sign = Series::from_i64(base.coeff, base.rank(), hk.sign as i64);
    let st = field.scale_series(&field.t()?, &(&sign * &rho_inv));
    let c1 = field.scale_series(&field.add(&field.one(), &st), &Series::constant(base.coeff, base.rank(), half));
    let one = field.one();
    let mut c = one.clone();
    for _ in 1..=16 {
        c = field.mul(&c, &c1);
        let ok = handles.iter().enumerate().try_fold(true, |acc, (i, h)| -> Result<bool> {
            let h0 = ValuationHandle { cut: 0, ..h.clone() };
            if i == k {
                let v0 = h0.valuation(&c)?;
                let v1 = h0.valuation(&field.sub(&c, &one))?;
                Ok(acc && v0 == ExtendedValue::Finite(Value::zero(h0.rank())) && v1.signum().is_gt())
            } else {
                Ok(acc && h0.valuation(&c)? > ExtendedValue::Finite(deltas[i].clone()))
            }
        })?;
        if ok {
            return Ok(c);
        }
    }
    Err(Error::NotReachable)
}

/// `1/2` as a coefficient.
pub fn one_half() -> Coeff {
    BigRational::new(One::one(), 2.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> ScalarField {
        let f = BaseField::rationals(&["x", "y"]);
        let u = f.parse("1 + x").unwrap();
        ScalarField::Ext(QuadraticExtension::new(f, u, "t").unwrap())
    }

    #[test]
    fn extension_valuations_of_t_minus_one() {
        let k = setup();
        let hs = k.handles();
        let t1 = k.parse("t - 1").unwrap();
        assert_eq!(hs[0].valuation(&t1).unwrap(), Value::from_ints(&[1, 0]).into());
        assert_eq!(hs[1].valuation(&t1).unwrap(), Value::from_ints(&[0, 0]).into());
        let tp = k.parse("t + 1").unwrap();
        assert_eq!(hs[0].valuation(&tp).unwrap(), Value::from_ints(&[0, 0]).into());
        assert_eq!(hs[0].valuation(&k.zero()).unwrap(), ExtendedValue::Infinity);
    }

    #[test]
    fn one_minus_t_times_one_plus_t_is_minus_x() {
        let k = setup();
        let p = k.mul(&k.parse("1 - t").unwrap(), &k.parse("1 + t").unwrap());
        assert_eq!(p, k.parse("-x").unwrap());
        assert_eq!(k.parse("t^2").unwrap(), k.parse("1 + x").unwrap());
    }

    #[test]
    fn approximation_elements() {
        let k = setup();
        let hs = k.handles();
        let zero = Value::zero(2);
        let c1 = approximate(&hs, 0, &[zero.clone(), zero.clone()]).unwrap();
        assert_eq!(c1, k.parse("1/2 + 1/2*t").unwrap());
        assert_eq!(hs[1].valuation(&c1).unwrap(), Value::from_ints(&[1, 0]).into());
        let c2 = approximate(&hs, 1, &[zero.clone(), zero.clone()]).unwrap();
        assert_eq!(c2, k.parse("1/2 - 1/2*t").unwrap());
        let far = Value::from_ints(&[0, 1]);
        assert_eq!(approximate(&hs, 0, &[zero, far]), Err(Error::NotReachable));
        assert_eq!(approximate(&hs[..1], 0, &[Value::zero(2)]).unwrap(), k.one());
    }

    #[test]
    fn exact_division_in_the_extension() {
        let k = setup();
        let a = k.parse("x + y*t").unwrap();
        let b = k.parse("1 - x*t").unwrap();
        let p = k.mul(&a, &b);
        assert_eq!(k.div_exact(&p, &b).unwrap(), a);
    }
}
