//! Base fields `F ⊂ k((x₁))…((xₙ))`, quadratic extensions `K = F(t)` with
//! `t² = u`, and the number of extensions of the monomial valuation to `K`.
//!
//! Elements of `F` are the series with finitely many terms; the ambient
//! series field plays the role of the Henselization, so "`u` has a square
//! root in the ambient field but not in `F`" is decidable for polynomial `u`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::coeff::CoefficientField;
use crate::error::{Error, Result};
use crate::precision::{Precision, PrecisionPolicy};
use crate::series::Series;

/// The base field with its variable names and precision policy.
#[derive(Debug)]
pub struct BaseField {
    pub coeff: CoefficientField,
    pub vars: Vec<String>,
    pub policy: PrecisionPolicy,
}

impl BaseField {
    pub fn new(coeff: CoefficientField, vars: Vec<String>, policy: PrecisionPolicy) -> Arc<Self> {
        Arc::new(BaseField { coeff, vars, policy })
    }

    /// `ℚ` with variables `x, y, …` and the default policy.
    pub fn rationals(vars: &[&str]) -> Arc<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let policy = PrecisionPolicy::default_for_rank(vars.len());
        BaseField::new(CoefficientField::Rationals, vars, policy)
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    pub fn parse(&self, text: &str) -> Result<Series> {
        Series::parse(self.coeff, &self.vars, text)
    }

    pub fn format(&self, s: &Series) -> String {
        s.format_with(&self.vars)
    }

    pub fn zero(&self) -> Series {
        Series::zero(self.coeff, self.rank())
    }

    pub fn one(&self) -> Series {
        Series::one(self.coeff, self.rank())
    }
}

/// How a valuation of `F` behaves in `F(√u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionKind {
    /// `u` has a root in the Henselization but not in `F`: two extensions.
    Split,
    /// Unique extension with a quadratic residue field extension.
    Inertial,
    /// Unique extension with ramification index 2.
    Ramified,
    /// `u` is already a square in `F`; `F(t)` is `F × F`.
    Etale,
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExtensionKind::Split => "split",
            ExtensionKind::Inertial => "inertial",
            ExtensionKind::Ramified => "ramified",
            ExtensionKind::Etale => "etale",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionCount {
    pub count: usize,
    pub kind: ExtensionKind,
}

fn check_u(u: &Series) -> Result<()> {
    if u.is_zero() {
        return Err(Error::ZeroParameter);
    }
    if !u.is_exact() {
        return Err(Error::Unsupported("u must have finitely many terms".into()));
    }
    Ok(())
}

/// Number of extensions of the monomial valuation of `F` to `F(√u)`.
///
/// A root in `F` means the algebra is étale; otherwise the Hensel square
/// root decides: success gives two extensions, an odd exponent a ramified
/// one, a nonsquare leading coefficient an inertial one.
pub fn count_extensions_quadratic(base: &BaseField, u: &Series) -> Result<ExtensionCount> {
    check_u(u)?;
    if u.exact_sqrt().is_some() {
        return Ok(ExtensionCount { count: 2, kind: ExtensionKind::Etale });
    }
    base.policy.run(|p| match u.sqrt(p) {
        Ok(_) => Ok(ExtensionCount { count: 2, kind: ExtensionKind::Split }),
        Err(Error::OddExponent) => Ok(ExtensionCount { count: 1, kind: ExtensionKind::Ramified }),
        Err(Error::NonSquareResidue) => Ok(ExtensionCount { count: 1, kind: ExtensionKind::Inertial }),
        Err(e) => Err(e),
    })
}

/// Behaviour of the valuation coarsened by `Δ_k` in `F(√u)`, read off from
/// the coarse exponent and the residue of `u` in `k(x₁,…,x_k)`.
pub fn extension_kind_at_cut(u: &Series, k: usize) -> Result<ExtensionKind> {
    check_u(u)?;
    let (value, residue) = u.leading(k)?.expect("u is nonzero");
    if value.coords().iter().any(|c| c.to_integer() % 2 != 0) {
        return Ok(ExtensionKind::Ramified);
    }
    let square = match residue.as_constant() {
        Some(c) => u.field().is_square(c),
        None => residue.exact_sqrt().is_some(),
    };
    Ok(if square { ExtensionKind::Split } else { ExtensionKind::Inertial })
}

/// `K = F(t)` with `t² = u`.
pub struct QuadraticExtension {
    pub base: Arc<BaseField>,
    pub u: Series,
    pub name: String,
    roots: Mutex<HashMap<Precision, Series>>,
}

impl fmt::Debug for QuadraticExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({}), {}^2 = {}", self.name, self.name, self.base.format(&self.u))
    }
}

impl QuadraticExtension {
    pub fn new(base: Arc<BaseField>, u: Series, name: &str) -> Result<Arc<Self>> {
        check_u(&u)?;
        if u.rank() != base.rank() {
            return Err(Error::RankMismatch(u.rank(), base.rank()));
        }
        if base.vars.iter().any(|v| v == name) {
            return Err(Error::Invalid(format!("generator name '{}' clashes with a variable", name)));
        }
        Ok(Arc::new(QuadraticExtension { base, u, name: name.to_string(), roots: Mutex::new(HashMap::new()) }))
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    /// Square root of `u` in the ambient series field at the given depth.
    pub fn root(&self, p: &Precision) -> Result<Series> {
        if let Some(r) = self.roots.lock().expect("root cache").get(p) {
            return Ok(r.clone());
        }
        let r = self.u.sqrt(p)?;
        self.roots.lock().expect("root cache").insert(p.clone(), r.clone());
        Ok(r)
    }

    pub fn count_extensions(&self) -> Result<ExtensionCount> {
        count_extensions_quadratic(&self.base, &self.u)
    }

    /// Smallest cut `k` at which the coarsened valuation has a unique
    /// extension; the two extensions then share exactly the coarsening by
    /// `Δ_k`. Returns the full rank when they are independent.
    pub fn common_coarsening(&self) -> Result<usize> {
        for k in 0..self.rank() {
            if extension_kind_at_cut(&self.u, k)? != ExtensionKind::Split {
                return Ok(k);
            }
        }
        Ok(self.rank())
    }

    /// `N(a + bt) = a² − b²u`.
    pub fn norm(&self, a: &Series, b: &Series) -> Series {
        &(a * a) - &(&(b * b) * &self.u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> Arc<BaseField> {
        BaseField::rationals(&["x", "y"])
    }

    #[test]
    fn counts_for_the_three_kinds() {
        let f = field();
        let c = |s: &str| count_extensions_quadratic(&f, &f.parse(s).unwrap()).unwrap();
        assert_eq!(c("1 + x"), ExtensionCount { count: 2, kind: ExtensionKind::Split });
        assert_eq!(c("y"), ExtensionCount { count: 1, kind: ExtensionKind::Ramified });
        assert_eq!(c("2"), ExtensionCount { count: 1, kind: ExtensionKind::Inertial });
        assert_eq!(c("4 + 4*x + x^2"), ExtensionCount { count: 2, kind: ExtensionKind::Etale });
        assert!(count_extensions_quadratic(&f, &f.zero()).is_err());
    }

    #[test]
    fn residue_route_agrees_at_the_finest_cut() {
        let f = field();
        for (s, kind) in [
            ("1 + x", ExtensionKind::Split),
            ("y", ExtensionKind::Ramified),
            ("2", ExtensionKind::Inertial),
            ("3*x^2 + y", ExtensionKind::Inertial),
        ] {
            let u = f.parse(s).unwrap();
            assert_eq!(extension_kind_at_cut(&u, 0).unwrap(), kind, "{}", s);
            let hensel = count_extensions_quadratic(&f, &u).unwrap().kind;
            assert_eq!(hensel, kind, "{}", s);
        }
    }

    #[test]
    fn common_coarsening_of_the_quaternion_example() {
        let f = field();
        let k = QuadraticExtension::new(f.clone(), f.parse("1 + x").unwrap(), "t").unwrap();
        assert_eq!(k.common_coarsening().unwrap(), 1);
        let f1 = BaseField::rationals(&["x"]);
        let k1 = QuadraticExtension::new(f1.clone(), f1.parse("1 + x").unwrap(), "t").unwrap();
        assert_eq!(k1.common_coarsening().unwrap(), 1);
        let k2 = QuadraticExtension::new(f.clone(), f.parse("1 + y").unwrap(), "t").unwrap();
        assert_eq!(k2.common_coarsening().unwrap(), 2);
    }
}
