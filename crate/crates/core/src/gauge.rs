//! Value functions as expression trees: base norms, End-gauges, products,
//! minima of components over the extensions of `v` to the center,
//! coarsenings and residues. Every node evaluates elements and flattens to
//! an equivalent [`BaseNorm`] with an explicit splitting base.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algebra::{matrix_entry, matrix_over, restrict_scalars, solve_exact, Algebra, AlgebraKind, Element};
use crate::error::{Error, Result};
use crate::ordered::{ExtendedValue, Value};
use crate::scalar::{approximate, Scalar, ValuationHandle};

/// Numerators over a common denominator: `z = Σ (nums_i / den) · base_i`.
#[derive(Clone, Debug)]
pub struct Coordinates {
    pub nums: Vec<Scalar>,
    pub den: Scalar,
}

#[derive(Debug)]
struct Solver {
    standard: bool,
    adj: Vec<Element>,
    det: Scalar,
}

/// A norm `α(Σ d_i x_i) = min(v(d_i) + γ_i)` with splitting base `(x_i)`.
pub struct BaseNorm {
    pub algebra: Arc<Algebra>,
    pub base: Vec<Element>,
    pub values: Vec<Value>,
    pub handle: ValuationHandle,
    solver: Solver,
}

impl fmt::Debug for BaseNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "BaseNorm({:?}, {}, [{}])", self.algebra, self.handle.label(), vals.join(", "))
    }
}

impl BaseNorm {
    /// Builds a norm; rejects singular bases, rank mismatches and
    /// degenerate inputs with `α(1) ≠ 0`.
    pub fn new(algebra: Arc<Algebra>, base: Vec<Element>, values: Vec<Value>, handle: ValuationHandle) -> Result<BaseNorm> {
        let norm = BaseNorm::unchecked(algebra, base, values, handle)?;
        let one = norm.evaluate(&norm.algebra.one())?;
        if one != ExtendedValue::Finite(Value::zero(norm.handle.value_rank())) {
            return Err(Error::Degenerate(format!("alpha(1) = {}", one)));
        }
        Ok(norm)
    }

    /// Like [`BaseNorm::new`] without the `α(1) = 0` check.
    pub fn unchecked(algebra: Arc<Algebra>, base: Vec<Element>, values: Vec<Value>, handle: ValuationHandle) -> Result<BaseNorm> {
        let n = algebra.dim();
        if base.len() != n || values.len() != n {
            return Err(Error::Invalid(format!("a splitting base of {} needs {} elements and values", algebra.name, n)));
        }
        if handle.field != algebra.field {
            return Err(Error::FieldMismatch);
        }
        if let Some(v) = values.iter().find(|v| v.rank() != handle.value_rank()) {
            return Err(Error::RankMismatch(v.rank(), handle.value_rank()));
        }
        let solver = Solver::new(&algebra, &base)?;
        Ok(BaseNorm { algebra, base, values, handle, solver })
    }

    /// Norm with the standard basis as splitting base.
    pub fn standard(algebra: Arc<Algebra>, values: Vec<Value>, handle: ValuationHandle) -> Result<BaseNorm> {
        let base = (0..algebra.dim()).map(|i| algebra.basis(i)).collect();
        BaseNorm::new(algebra, base, values, handle)
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn coordinates(&self, z: &Element) -> Coordinates {
        self.solver.coordinates(&self.algebra, z)
    }

    /// `v(d_i) + γ_i` for each base element.
    pub fn terms(&self, z: &Element) -> Result<Vec<ExtendedValue>> {
        let c = self.coordinates(z);
        let vden = self.handle.valuation(&c.den)?;
        let vden = vden.finite().expect("nonzero denominator").clone();
        c.nums.iter().zip(&self.values).map(|(d, g)| Ok(self.handle.valuation(d)?.add_value(&(g - &vden)))).collect()
    }

    pub fn evaluate(&self, z: &Element) -> Result<ExtendedValue> {
        Ok(self.terms(z)?.into_iter().min().unwrap_or(ExtendedValue::Infinity))
    }

    /// The same base with coarsened values and handle.
    pub fn coarsened(&self, k: usize) -> Result<BaseNorm> {
        let drop = k.saturating_sub(self.handle.cut);
        BaseNorm::unchecked(
            self.algebra.clone(),
            self.base.clone(),
            self.values.iter().map(|v| v.coarsen(drop)).collect(),
            self.handle.coarsened(k),
        )
    }
}

impl Solver {
    fn new(alg: &Algebra, base: &[Element]) -> Result<Solver> {
        let n = alg.dim();
        let standard = base.iter().enumerate().all(|(i, b)| *b == alg.basis(i));
        if standard {
            return Ok(Solver { standard, adj: Vec::new(), det: alg.field.one() });
        }
        let m: Vec<Vec<Scalar>> = (0..n).map(|i| base.iter().map(|b| b[i].clone()).collect()).collect();
        let ids: Vec<Element> = (0..n).map(|j| alg.basis(j)).collect();
        let (adj, det) = solve_exact(&alg.field, &m, &ids)?;
        Ok(Solver { standard, adj, det })
    }

    fn coordinates(&self, alg: &Algebra, z: &Element) -> Coordinates {
        if self.standard {
            return Coordinates { nums: z.clone(), den: self.det.clone() };
        }
        let f = &alg.field;
        let mut nums = vec![f.zero(); z.len()];
        for (j, zj) in z.iter().enumerate() {
            if f.is_zero(zj) {
                continue;
            }
            for (i, a) in self.adj[j].iter().enumerate() {
                if !f.is_zero(a) {
                    nums[i] = f.add(&nums[i], &f.mul(zj, a));
                }
            }
        }
        Coordinates { nums, den: self.det.clone() }
    }
}

/// `End`-gauge on `𝕄_n(A)`: `min_{p,q} (η(z_pq) + γ_p − γ_q)`.
#[derive(Debug)]
pub struct EndGauge {
    pub algebra: Arc<Algebra>,
    pub inner: GaugeExpr,
    pub shifts: Vec<Value>,
}

/// Product gauge on `A₁ × ⋯ × A_m`.
#[derive(Debug)]
pub struct ProductGauge {
    pub algebra: Arc<Algebra>,
    pub components: Vec<GaugeExpr>,
}

/// Certificate that every pair of components agrees after their common
/// coarsening.
#[derive(Clone, Debug, Serialize)]
pub struct PairCertificate {
    pub i: usize,
    pub j: usize,
    /// Cut of the finest common coarsening; the full rank means the two
    /// valuations are independent.
    pub cut: usize,
    pub independent: bool,
    pub base_checks: usize,
}

/// `min(α₁, …, α_r)` for `v_i`-gauges on a `K`-algebra, viewed as a
/// `v`-value function on the underlying `F`-algebra.
pub struct MinGauge {
    pub algebra: Arc<Algebra>,
    pub components: Vec<GaugeExpr>,
    pub handles: Vec<ValuationHandle>,
    pub base_handle: ValuationHandle,
    pub certificate: Vec<PairCertificate>,
    flat: OnceLock<std::result::Result<Arc<BaseNorm>, Error>>,
}

impl fmt::Debug for MinGauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MinGauge({:?}, {} components)", self.algebra, self.components.len())
    }
}

/// A value-function expression.
#[derive(Clone, Debug)]
pub enum GaugeExpr {
    Base(Arc<BaseNorm>),
    End(Arc<EndGauge>),
    Product(Arc<ProductGauge>),
    Min(Arc<MinGauge>),
    Coarsened(Arc<GaugeExpr>, usize),
    Residue(Arc<BaseNorm>, usize),
}

/// Position of an element relative to the gauge ring and its radical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GaugeRingVerdict {
    InRadical,
    InRingNotRadical,
    NotInRing,
}

impl GaugeRingVerdict {
    pub fn in_ring(&self) -> bool {
        !matches!(self, GaugeRingVerdict::NotInRing)
    }
}

impl GaugeExpr {
    pub fn base(norm: BaseNorm) -> GaugeExpr {
        GaugeExpr::Base(Arc::new(norm))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        match self {
            GaugeExpr::Base(n) | GaugeExpr::Residue(n, _) => &n.algebra,
            GaugeExpr::End(e) => &e.algebra,
            GaugeExpr::Product(p) => &p.algebra,
            GaugeExpr::Min(m) => &m.algebra,
            GaugeExpr::Coarsened(g, _) => g.algebra(),
        }
    }

    /// The valuation on the scalars that this value function is a norm for.
    pub fn handle(&self) -> ValuationHandle {
        match self {
            GaugeExpr::Base(n) | GaugeExpr::Residue(n, _) => n.handle.clone(),
            GaugeExpr::End(e) => e.inner.handle(),
            GaugeExpr::Product(p) => p.components[0].handle(),
            GaugeExpr::Min(m) => m.base_handle.clone(),
            GaugeExpr::Coarsened(g, k) => g.handle().coarsened(*k),
        }
    }

    pub fn cut(&self) -> usize {
        self.handle().cut
    }

    pub fn value_rank(&self) -> usize {
        self.handle().value_rank()
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GaugeExpr::Base(_) => "base_norm",
            GaugeExpr::End(_) => "end",
            GaugeExpr::Product(_) => "product",
            GaugeExpr::Min(_) => "min",
            GaugeExpr::Coarsened(..) => "coarsen",
            GaugeExpr::Residue(..) => "residue",
        }
    }

    pub fn evaluate(&self, z: &Element) -> Result<ExtendedValue> {
        match self {
            GaugeExpr::Base(n) | GaugeExpr::Residue(n, _) => n.evaluate(z),
            GaugeExpr::End(e) => {
                let n = e.shifts.len();
                let mut best = ExtendedValue::Infinity;
                for p in 0..n {
                    for q in 0..n {
                        let entry = matrix_entry(&e.algebra, z, p, q)?;
                        let shift = &e.shifts[p] - &e.shifts[q];
                        let v = e.inner.evaluate(&entry)?.add_value(&shift);
                        best = best.min(v);
                    }
                }
                Ok(best)
            }
            GaugeExpr::Product(p) => {
                let offsets = product_offsets(&p.algebra)?;
                let mut best = ExtendedValue::Infinity;
                for (c, o) in p.components.iter().zip(offsets) {
                    let d = c.algebra().dim();
                    best = best.min(c.evaluate(&z[o..o + d].to_vec())?);
                }
                Ok(best)
            }
            GaugeExpr::Min(m) => {
                let zk = m.algebra.unrestrict_element(z)?;
                let mut best = ExtendedValue::Infinity;
                for c in &m.components {
                    best = best.min(c.evaluate(&zk)?);
                }
                Ok(best)
            }
            GaugeExpr::Coarsened(g, k) => Ok(g.evaluate(z)?.coarsen(k.saturating_sub(g.cut()))),
        }
    }

    /// `ε ∘ α` for the convex subgroup `Δ_k` (absolute cut).
    pub fn coarsen(&self, k: usize) -> GaugeExpr {
        if k <= self.cut() {
            return self.clone();
        }
        match self {
            GaugeExpr::Coarsened(g, _) => GaugeExpr::Coarsened(g.clone(), k),
            _ => GaugeExpr::Coarsened(Arc::new(self.clone()), k),
        }
    }

    /// An equivalent norm with an explicit splitting base.
    pub fn flatten(&self) -> Result<Arc<BaseNorm>> {
        match self {
            GaugeExpr::Base(n) | GaugeExpr::Residue(n, _) => Ok(n.clone()),
            GaugeExpr::End(e) => {
                let inner = e.inner.flatten()?;
                let alg = &e.algebra;
                let n = e.shifts.len();
                let d = inner.algebra.dim();
                let mut base = Vec::new();
                let mut values = Vec::new();
                for p in 0..n {
                    for q in 0..n {
                        for (b, beta) in inner.base.iter().zip(&inner.values) {
                            let mut z = alg.zero();
                            let start = (p * n + q) * d;
                            z[start..start + d].clone_from_slice(b);
                            base.push(z);
                            values.push(&(&e.shifts[p] - &e.shifts[q]) + beta);
                        }
                    }
                }
                Ok(Arc::new(BaseNorm::unchecked(alg.clone(), base, values, inner.handle.clone())?))
            }
            GaugeExpr::Product(p) => {
                let offsets = product_offsets(&p.algebra)?;
                let mut base = Vec::new();
                let mut values = Vec::new();
                let mut handle = None;
                for (c, o) in p.components.iter().zip(offsets) {
                    let f = c.flatten()?;
                    for (b, g) in f.base.iter().zip(&f.values) {
                        let mut z = p.algebra.zero();
                        z[o..o + b.len()].clone_from_slice(b);
                        base.push(z);
                        values.push(g.clone());
                    }
                    handle.get_or_insert(f.handle.clone());
                }
                let handle = handle.expect("nonempty product");
                Ok(Arc::new(BaseNorm::unchecked(p.algebra.clone(), base, values, handle)?))
            }
            GaugeExpr::Min(m) => m.flat.get_or_init(|| m.build_flat()).clone(),
            GaugeExpr::Coarsened(g, k) => Ok(Arc::new(g.flatten()?.coarsened(*k)?)),
        }
    }

    /// Position of `z` relative to `R_α` and `J_α`.
    pub fn membership(&self, z: &Element) -> Result<GaugeRingVerdict> {
        Ok(match self.evaluate(z)?.signum() {
            std::cmp::Ordering::Greater => GaugeRingVerdict::InRadical,
            std::cmp::Ordering::Equal => GaugeRingVerdict::InRingNotRadical,
            std::cmp::Ordering::Less => GaugeRingVerdict::NotInRing,
        })
    }

    /// Components of a product or min gauge; a single-element list otherwise.
    pub fn components(&self) -> Vec<GaugeExpr> {
        match self {
            GaugeExpr::Product(p) => p.components.clone(),
            GaugeExpr::Min(m) => m.components.clone(),
            _ => vec![self.clone()],
        }
    }
}

fn product_offsets(alg: &Algebra) -> Result<Vec<usize>> {
    match &alg.kind {
        AlgebraKind::Product { offsets, .. } => Ok(offsets.clone()),
        _ => Ok(vec![0]),
    }
}

/// The gauge `z ↦ v(z)` on the field viewed as a one-dimensional algebra.
pub fn valuation_gauge(field_alg: &Arc<Algebra>, handle: ValuationHandle) -> Result<GaugeExpr> {
    if field_alg.dim() != 1 {
        return Err(Error::Invalid("valuation gauges live on one-dimensional algebras".into()));
    }
    let values = vec![Value::zero(handle.value_rank())];
    Ok(GaugeExpr::base(BaseNorm::standard(field_alg.clone(), values, handle)?))
}

/// `End(η)` on a given matrix algebra over `inner`'s algebra.
pub fn end_gauge_on(matrix: &Arc<Algebra>, inner: GaugeExpr, shifts: Vec<Value>) -> Result<GaugeExpr> {
    match &matrix.kind {
        AlgebraKind::Matrix { n, inner: a } => {
            if !Arc::ptr_eq(a, inner.algebra()) {
                return Err(Error::Invalid("matrix algebra is not over the inner gauge's algebra".into()));
            }
            if *n != shifts.len() {
                return Err(Error::Invalid(format!("{} shifts for {}x{} matrices", shifts.len(), n, n)));
            }
        }
        _ => return Err(Error::Invalid("End-gauges live on matrix algebras".into())),
    }
    if let Some(s) = shifts.iter().find(|s| s.rank() != inner.value_rank()) {
        return Err(Error::RankMismatch(s.rank(), inner.value_rank()));
    }
    Ok(GaugeExpr::End(Arc::new(EndGauge { algebra: matrix.clone(), inner, shifts })))
}

/// `End(η)` on a fresh `𝕄_n(A)`.
pub fn end_gauge(inner: GaugeExpr, shifts: Vec<Value>) -> Result<GaugeExpr> {
    let m = matrix_over(inner.algebra(), shifts.len())?;
    end_gauge_on(&m, inner, shifts)
}

/// Product gauge on the given product algebra.
pub fn product_gauge_on(algebra: &Arc<Algebra>, components: Vec<GaugeExpr>) -> Result<GaugeExpr> {
    if components.len() == 1 {
        return Ok(components.into_iter().next().expect("one component"));
    }
    match &algebra.kind {
        AlgebraKind::Product { parts, .. } => {
            if parts.len() != components.len() || parts.iter().zip(&components).any(|(p, c)| !Arc::ptr_eq(p, c.algebra())) {
                return Err(Error::Invalid("components do not match the product factors".into()));
            }
        }
        _ => return Err(Error::Invalid("not a product algebra".into())),
    }
    let h = components[0].handle();
    if components.iter().any(|c| c.handle().field != h.field || c.value_rank() != h.value_rank()) {
        return Err(Error::FieldMismatch);
    }
    Ok(GaugeExpr::Product(Arc::new(ProductGauge { algebra: algebra.clone(), components })))
}

/// Product gauge on a fresh product algebra.
pub fn product_gauge(components: Vec<GaugeExpr>) -> Result<GaugeExpr> {
    let parts: Vec<Arc<Algebra>> = components.iter().map(|c| c.algebra().clone()).collect();
    let alg = crate::algebra::product(&parts)?;
    product_gauge_on(&alg, components)
}

/// Component `i` of a product gauge.
pub fn restrict_component(g: &GaugeExpr, i: usize) -> Result<GaugeExpr> {
    match g {
        GaugeExpr::Product(p) => {
            p.components.get(i).cloned().ok_or_else(|| Error::Invalid("component index out of range".into()))
        }
        _ if i == 0 => Ok(g.clone()),
        _ => Err(Error::Invalid("not a product gauge".into())),
    }
}

/// `α ≤ η` decided on a splitting base of `α`.
pub fn leq(alpha: &GaugeExpr, eta: &GaugeExpr) -> Result<bool> {
    let flat = alpha.flatten()?;
    for (b, g) in flat.base.iter().zip(&flat.values) {
        if ExtendedValue::Finite(g.clone()) > eta.evaluate(b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pointwise comparison on samples, used to confirm [`leq`].
pub fn leq_on_samples(alpha: &GaugeExpr, eta: &GaugeExpr, samples: &[Element]) -> Result<bool> {
    for z in samples {
        if alpha.evaluate(z)? > eta.evaluate(z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the surmultiplicativity check on a splitting base.
#[derive(Clone, Debug, Serialize)]
pub struct SurmultiplicativityReport {
    pub unit_value_zero: bool,
    pub pairs_checked: usize,
    /// First violating pair `(i, j, α(x_i x_j), γ_i + γ_j)`.
    pub violation: Option<(usize, usize, String, String)>,
}

impl SurmultiplicativityReport {
    pub fn passed(&self) -> bool {
        self.unit_value_zero && self.violation.is_none()
    }
}

/// Checks `α(1) = 0` and `α(x_i x_j) ≥ γ_i + γ_j` on all base pairs. For
/// a norm this suffices: writing `x = Σ c_i x_i`, `y = Σ d_j x_j` with
/// central scalars, `α(xy) ≥ min_{i,j} (v(c_i d_j) + α(x_i x_j))`.
pub fn check_surmultiplicative(norm: &BaseNorm) -> Result<SurmultiplicativityReport> {
    let alg = &norm.algebra;
    let unit = norm.evaluate(&alg.one())? == ExtendedValue::Finite(Value::zero(norm.handle.value_rank()));
    let n = norm.dim();
    let mut checked = 0;
    for i in 0..n {
        for j in 0..n {
            checked += 1;
            let prod = alg.mul(&norm.base[i], &norm.base[j]);
            let lhs = norm.evaluate(&prod)?;
            let rhs = &norm.values[i] + &norm.values[j];
            if lhs < ExtendedValue::Finite(rhs.clone()) {
                return Ok(SurmultiplicativityReport {
                    unit_value_zero: unit,
                    pairs_checked: checked,
                    violation: Some((i, j, lhs.to_string(), rhs.to_string())),
                });
            }
        }
    }
    Ok(SurmultiplicativityReport { unit_value_zero: unit, pairs_checked: checked, violation: None })
}

/// Composes `v_i`-gauges on a `K`-algebra into the `v`-value function
/// `min(α₁, …, α_r)` on the underlying `F`-algebra, after certifying that
/// each pair agrees on its finest common coarsening.
pub fn min_compose(components: Vec<GaugeExpr>) -> Result<GaugeExpr> {
    if components.len() == 1 {
        return Ok(components.into_iter().next().expect("one component"));
    }
    let alg_k = components[0].algebra().clone();
    if components.iter().any(|c| !Arc::ptr_eq(c.algebra(), &alg_k)) {
        return Err(Error::Invalid("components must live on one algebra".into()));
    }
    let ext = alg_k.field.ext().ok_or_else(|| Error::Invalid("components need a quadratic center".into()))?.clone();
    let handles: Vec<ValuationHandle> = components.iter().map(|c| c.handle()).collect();
    if handles.len() != 2 {
        return Err(Error::Unsupported("only quadratic centers are supported".into()));
    }
    if handles.iter().any(|h| h.cut != 0) || handles[0].sign == handles[1].sign {
        return Err(Error::Invalid("components need distinct uncoarsened extensions".into()));
    }
    let cut = ext.common_coarsening()?;
    let rank = ext.rank();
    let mut certificate = Vec::new();
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            let mut checks = 0;
            if cut < rank {
                let ci = components[i].coarsen(cut);
                let cj = components[j].coarsen(cut);
                for (a, b, ia, ib) in [(&ci, &cj, i, j), (&cj, &ci, j, i)] {
                    let flat = a.flatten()?;
                    for (idx, (x, g)) in flat.base.iter().zip(&flat.values).enumerate() {
                        checks += 1;
                        let other = b.evaluate(x)?;
                        if other != ExtendedValue::Finite(g.clone()) {
                            return Err(Error::IncompatibleCoarsenings {
                                i: ia,
                                j: ib,
                                element: format!("base element {} ({})", idx, alg_k.format(x)),
                                left: g.to_string(),
                                right: other.to_string(),
                            });
                        }
                    }
                }
            }
            certificate.push(PairCertificate { i, j, cut, independent: cut >= rank, base_checks: checks });
        }
    }
    let algebra = restrict_scalars(&alg_k)?;
    let base_handle = ValuationHandle::new(algebra.field.clone(), 1);
    Ok(GaugeExpr::Min(Arc::new(MinGauge { algebra, components, handles, base_handle, certificate, flat: OnceLock::new() })))
}

impl MinGauge {
    /// A splitting base over `F`: `c_k · b_{k,j}` where `b_{k,j}` is a
    /// splitting base of `α_k` and `c_k` an approximation element that is
    /// `1` for `v_k` and small enough for the others.
    fn build_flat(&self) -> Result<Arc<BaseNorm>> {
        let k_field = &self.components[0].algebra().field;
        let alg_k = self.components[0].algebra();
        let mut base = Vec::new();
        let mut values = Vec::new();
        for (k, comp) in self.components.iter().enumerate() {
            let flat = comp.flatten()?;
            let mut deltas = vec![Value::zero(self.base_handle.value_rank()); self.components.len()];
            for (i, other) in self.components.iter().enumerate() {
                if i == k {
                    continue;
                }
                for (b, g) in flat.base.iter().zip(&flat.values) {
                    let oi = other.evaluate(b)?;
                    let oi = oi.finite().ok_or_else(|| Error::Invalid("zero base element".into()))?;
                    let need = g - oi;
                    if need > deltas[i] {
                        deltas[i] = need;
                    }
                }
            }
            let c = approximate(&self.handles, k, &deltas)?;
            for (b, g) in flat.base.iter().zip(&flat.values) {
                let cb = alg_k.scale(&c, b);
                base.push(self.algebra.restrict_element(&cb)?);
                values.push(g.clone());
            }
        }
        let _ = k_field;
        Ok(Arc::new(BaseNorm::unchecked(self.algebra.clone(), base, values, self.base_handle.clone())?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{field_algebra, matrix, quaternion};
    use crate::quadratic::{BaseField, QuadraticExtension};
    use crate::scalar::ScalarField;

    fn quaternions() -> (ScalarField, Arc<Algebra>) {
        let base = BaseField::rationals(&["x", "y"]);
        let f = ScalarField::Base(base);
        let d = quaternion(&f, f.parse("1 + x").unwrap(), f.parse("y").unwrap()).unwrap();
        (f, d)
    }

    fn el(alg: &Algebra, c: &[&str]) -> Element {
        alg.parse_element(&c.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap()
    }

    fn alpha(gamma: (i64, i64), raise_j: bool) -> Result<BaseNorm> {
        let (f, d) = quaternions();
        let base = vec![
            el(&d, &["1", "1", "0", "0"]),
            el(&d, &["1", "-1", "0", "0"]),
            el(&d, &["0", "0", "1", "0"]),
            el(&d, &["0", "0", "1", "-1"]),
        ];
        let g = Value::from_fracs(&[(gamma.0, gamma.1), (1, 2)]);
        let mg = Value::from_fracs(&[(-gamma.0, gamma.1), (1, 2)]);
        let values = vec![Value::zero(2), Value::zero(2), if raise_j { g.clone() } else { mg }, g];
        BaseNorm::new(d, base, values, ValuationHandle::new(f, 1))
    }

    #[test]
    fn base_norm_values() {
        let a = alpha((1, 4), false).unwrap();
        let d = a.algebra.clone();
        assert_eq!(a.evaluate(&d.basis(1)).unwrap(), Value::zero(2).into());
        assert_eq!(a.evaluate(&d.basis(2)).unwrap(), Value::from_fracs(&[(-1, 4), (1, 2)]).into());
        assert_eq!(a.evaluate(&el(&d, &["0", "0", "1", "-1"])).unwrap(), Value::from_fracs(&[(1, 4), (1, 2)]).into());
        assert_eq!(a.evaluate(&d.zero()).unwrap(), ExtendedValue::Infinity);
        assert!(check_surmultiplicative(&a).unwrap().passed());
    }

    #[test]
    fn raised_j_is_not_surmultiplicative() {
        let a = alpha((1, 4), true).unwrap();
        let r = check_surmultiplicative(&a).unwrap();
        let (i, j, lhs, rhs) = r.violation.unwrap();
        assert_eq!((i, j), (2, 2));
        assert_eq!(lhs, "(0, 1)");
        assert_eq!(rhs, "(1/2, 1)");
    }

    #[test]
    fn end_gauge_entries() {
        let base = BaseField::rationals(&["x", "y"]);
        let k = ScalarField::Ext(QuadraticExtension::new(base.clone(), base.parse("1 + x").unwrap(), "t").unwrap());
        let fa = field_algebra(&k);
        let h = k.handles()[0].clone();
        let inner = valuation_gauge(&fa, h).unwrap();
        let delta = Value::from_fracs(&[(1, 4), (1, 2)]);
        let g = end_gauge(inner, vec![Value::zero(2), delta.clone()]).unwrap();
        let s = g.algebra().clone();
        assert_eq!(g.evaluate(&s.one()).unwrap(), Value::zero(2).into());
        assert_eq!(g.evaluate(&s.basis(1)).unwrap(), (-&delta).into());
        assert_eq!(g.evaluate(&s.basis(2)).unwrap(), delta.clone().into());
        let flat = g.flatten().unwrap();
        let z = el(&s, &["t - 1", "x*y", "y^-1", "1"]);
        assert_eq!(flat.evaluate(&z).unwrap(), g.evaluate(&z).unwrap());
        let c = g.coarsen(1);
        assert_eq!(c.evaluate(&s.basis(1)).unwrap(), Value::from_fracs(&[(-1, 2)]).into());
        let _ = matrix(&k, 2).unwrap();
    }

    #[test]
    fn degenerate_norms_are_rejected() {
        let (f, d) = quaternions();
        let values = vec![Value::from_ints(&[0, 1]), Value::zero(2), Value::zero(2), Value::zero(2)];
        let r = BaseNorm::standard(d, values, ValuationHandle::new(f, 1));
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }
}
