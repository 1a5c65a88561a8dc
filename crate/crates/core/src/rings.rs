//! Ring-level checks: Morandi status, membership oracles for gauge rings
//! and pulled-back Dubrovin rings, the total-ring and intersection checks,
//! minimality reports and lifting of End-gauges along a coarsening.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraKind, Element};
use crate::error::{Error, Result};
use crate::gauge::{end_gauge_on, valuation_gauge, GaugeExpr, GaugeRingVerdict};
use crate::graded::{omega, verify_gauge};
use crate::ordered::{ExtendedValue, Value};
use crate::scalar::{Scalar, ValuationHandle};

/// `num / den` with a nonzero central denominator; inverses of elements
/// are represented this way without leaving exact arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct Quotient {
    pub num: Element,
    pub den: Scalar,
}

impl Quotient {
    pub fn element(alg: &Algebra, z: Element) -> Quotient {
        Quotient { num: z, den: alg.field.one() }
    }

    /// `z⁻¹` computed exactly.
    pub fn inverse(alg: &Algebra, z: &Element) -> Result<Quotient> {
        let (num, den) = alg.inverse(z)?;
        Ok(Quotient { num, den })
    }

    /// The quotient times a central scalar, cleared of denominators.
    pub fn mul(&self, alg: &Algebra, other: &Quotient) -> Quotient {
        Quotient { num: alg.mul(&self.num, &other.num), den: alg.field.mul(&self.den, &other.den) }
    }

    pub fn add(&self, alg: &Algebra, other: &Quotient) -> Quotient {
        let f = &alg.field;
        let a = alg.scale(&other.den, &self.num);
        let b = alg.scale(&self.den, &other.num);
        Quotient { num: alg.add(&a, &b), den: f.mul(&self.den, &other.den) }
    }
}

/// `g(num/den) = g(num) − v(den)`; the denominator is central and `g` a norm.
pub fn evaluate_quotient(g: &GaugeExpr, q: &Quotient) -> Result<ExtendedValue> {
    let num = g.evaluate(&q.num)?;
    let den = g.handle().valuation(&q.den)?;
    let den = den.finite().ok_or(Error::DivisionByZero)?;
    Ok(num.add_value(&-den))
}

pub fn membership_quotient(g: &GaugeExpr, q: &Quotient) -> Result<GaugeRingVerdict> {
    Ok(match evaluate_quotient(g, q)?.signum() {
        std::cmp::Ordering::Greater => GaugeRingVerdict::InRadical,
        std::cmp::Ordering::Equal => GaugeRingVerdict::InRingNotRadical,
        std::cmp::Ordering::Less => GaugeRingVerdict::NotInRing,
    })
}

/// A named predicate on elements with the ring it claims to describe.
pub struct MembershipOracle<'a> {
    pub name: String,
    pub provenance: String,
    pub test: Box<dyn Fn(&Quotient) -> Result<bool> + 'a>,
}

impl<'a> MembershipOracle<'a> {
    pub fn contains(&self, q: &Quotient) -> Result<bool> {
        (self.test)(q)
    }

    /// Membership in the gauge ring `R_g`.
    pub fn gauge_ring(name: &str, g: &'a GaugeExpr) -> MembershipOracle<'a> {
        MembershipOracle {
            name: name.to_string(),
            provenance: "gauge ring".into(),
            test: Box::new(move |q| Ok(membership_quotient(g, q)?.in_ring())),
        }
    }

    /// Membership in the radical `J_g`.
    pub fn gauge_radical(name: &str, g: &'a GaugeExpr) -> MembershipOracle<'a> {
        MembershipOracle {
            name: name.to_string(),
            provenance: "gauge radical".into(),
            test: Box::new(move |q| Ok(membership_quotient(g, q)? == GaugeRingVerdict::InRadical)),
        }
    }
}

/// True iff `g` is a gauge with simple degree-zero algebra.
pub fn morandi_check(g: &GaugeExpr) -> Result<bool> {
    let v = verify_gauge(g, None)?;
    if !v.is_gauge() {
        return Err(Error::Invalid("Morandi status needs a verified gauge".into()));
    }
    Ok(omega(g)? == 1)
}

/// A failing sample with both sides of the comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub element: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TotalRingReport {
    pub oracle: String,
    pub checked: usize,
    pub skipped_noninvertible: usize,
    pub violations: Vec<Counterexample>,
}

impl TotalRingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `d ∈ B` or `d⁻¹ ∈ B` for every nonzero sample.
pub fn total_ring_check(alg: &Algebra, oracle: &MembershipOracle<'_>, samples: &[Element]) -> Result<TotalRingReport> {
    let mut checked = 0;
    let mut skipped = 0;
    let mut violations = Vec::new();
    for z in samples {
        if alg.is_zero(z) {
            continue;
        }
        let inv = match Quotient::inverse(alg, z) {
            Ok(q) => q,
            Err(Error::DivisionByZero) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        checked += 1;
        let d_in = oracle.contains(&Quotient::element(alg, z.clone()))?;
        let inv_in = oracle.contains(&inv)?;
        if !d_in && !inv_in {
            violations.push(Counterexample {
                element: alg.format(z),
                left: format!("d in {}: false", oracle.name),
                right: format!("d^-1 = ({}) / ({}) in {}: false", alg.format(&inv.num), alg.field.format(&inv.den), oracle.name),
            });
        }
    }
    Ok(TotalRingReport { oracle: oracle.name.clone(), checked, skipped_noninvertible: skipped, violations })
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub checked: usize,
    pub agreements: usize,
    pub disagreements: Vec<Counterexample>,
}

impl IntersectionReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares `z ∈ R_g` with `z ∈ B₁ ∩ ⋯ ∩ B_m` on every sample.
pub fn graeter_intersection_check(
    g: &GaugeExpr,
    oracles: &[MembershipOracle<'_>],
    samples: &[Quotient],
) -> Result<IntersectionReport> {
    let alg = g.algebra();
    let mut agreements = 0;
    let mut disagreements = Vec::new();
    for q in samples {
        let left = membership_quotient(g, q)?.in_ring();
        let mut right = true;
        let mut parts = Vec::new();
        for o in oracles {
            let m = o.contains(q)?;
            parts.push(format!("{}: {}", o.name, m));
            right &= m;
        }
        if left == right {
            agreements += 1;
        } else {
            disagreements.push(Counterexample {
                element: format!("({}) / ({})", alg.format(&q.num), alg.field.format(&q.den)),
                left: format!("in gauge ring: {}", left),
                right: parts.join(", "),
            });
        }
    }
    Ok(IntersectionReport { checked: samples.len(), agreements, disagreements })
}

/// Declared extension numbers with provenance notes.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioConstants {
    pub xi: usize,
    pub note: String,
    /// Cut and declared extension number of the coarsened ring.
    pub coarse: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityReport {
    pub omega: usize,
    pub xi: usize,
    pub minimal: bool,
    pub coarse_omega: Option<usize>,
    pub coarse_xi: Option<usize>,
    pub coarse_minimal: Option<bool>,
}

/// `ω` against the declared `ξ`; `ω < ξ` is a hard failure.
pub fn minimality_report(g: &GaugeExpr, constants: &ScenarioConstants) -> Result<MinimalityReport> {
    let w = omega(g)?;
    if w < constants.xi {
        return Err(Error::Invalid(format!("omega = {} is below the declared extension number {}", w, constants.xi)));
    }
    let (coarse_omega, coarse_xi, coarse_minimal) = match constants.coarse {
        Some((cut, xi)) => {
            let cw = omega(&g.coarsen(cut))?;
            if cw < xi {
                return Err(Error::Invalid(format!("coarse omega = {} is below {}", cw, xi)));
            }
            (Some(cw), Some(xi), Some(cw == xi))
        }
        None => (None, None, None),
    };
    Ok(MinimalityReport { omega: w, xi: constants.xi, minimal: w == constants.xi, coarse_omega, coarse_xi, coarse_minimal })
}

/// Lifts an End-gauge over a coarsened valuation to the End-gauge with
/// shifts `μ_j` over the valuation with cut `fine_cut`, requiring
/// `ε(μ_j) = π_j` and `μ_i = μ_j` whenever `π_i = π_j`.
pub fn lift_gauge(coarse: &GaugeExpr, fine_cut: usize, mus: Vec<Value>) -> Result<GaugeExpr> {
    let GaugeExpr::End(end) = coarse else {
        return Err(Error::Invalid("lifting needs an End-gauge".into()));
    };
    let inner_handle = end.inner.handle();
    if fine_cut > inner_handle.cut {
        return Err(Error::Invalid("the lift must refine the coarse valuation".into()));
    }
    let pis = &end.shifts;
    if mus.len() != pis.len() {
        return Err(Error::LiftConstraintViolated(format!("{} choices for {} shifts", mus.len(), pis.len())));
    }
    let drop = inner_handle.cut - fine_cut;
    for (j, (mu, pi)) in mus.iter().zip(pis).enumerate() {
        if mu.rank() != inner_handle.rank() - fine_cut || mu.coarsen(drop) != *pi {
            return Err(Error::LiftConstraintViolated(format!(
                "mu_{} = {} does not coarsen to pi_{} = {}",
                j + 1,
                mu,
                j + 1,
                pi
            )));
        }
    }
    for i in 0..pis.len() {
        for j in i + 1..pis.len() {
            if pis[i] == pis[j] && mus[i] != mus[j] {
                return Err(Error::LiftConstraintViolated(format!(
                    "pi_{} = pi_{} but mu_{} != mu_{}",
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let inner_alg = match &end.algebra.kind {
        AlgebraKind::Matrix { inner, .. } => inner.clone(),
        _ => return Err(Error::Invalid("End-gauge without a matrix algebra".into())),
    };
    if inner_alg.dim() != 1 {
        return Err(Error::Unsupported("lifting over a division algebra of degree > 1".into()));
    }
    let fine = ValuationHandle { cut: fine_cut, ..inner_handle };
    let lifted = end_gauge_on(&end.algebra, valuation_gauge(&inner_alg, fine)?, mus)?;
    let back = lifted.coarsen(end.inner.cut());
    for p in 0..end.algebra.dim() {
        let e = end.algebra.basis(p);
        if back.evaluate(&e)? != coarse.evaluate(&e)? {
            return Err(Error::LiftConstraintViolated(format!("coarsening differs on basis element {}", end.algebra.labels[p])));
        }
    }
    Ok(lifted)
}

/// Checks that the oracle contains 1 and is closed under sums and
/// products of sampled members.
pub fn ring_closure_check(
    alg: &Arc<Algebra>,
    oracle: &MembershipOracle<'_>,
    samples: &[Element],
) -> Result<Option<Counterexample>> {
    if !oracle.contains(&Quotient::element(alg, alg.one()))? {
        return Ok(Some(Counterexample { element: "1".into(), left: "member".into(), right: "false".into() }));
    }
    let members: Vec<Quotient> = samples
        .iter()
        .map(|z| Quotient::element(alg, z.clone()))
        .filter_map(|q| match oracle.contains(&q) {
            Ok(true) => Some(Ok(q)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    for w in members.windows(2) {
        for (op, r) in [("sum", w[0].add(alg, &w[1])), ("product", w[0].mul(alg, &w[1]))] {
            if !oracle.contains(&r)? {
                return Ok(Some(Counterexample {
                    element: format!("{} of {} and {}", op, alg.format(&w[0].num), alg.format(&w[1].num)),
                    left: "both members".into(),
                    right: format!("{} not in {}", op, oracle.name),
                }));
            }
        }
    }
    Ok(None)
}
