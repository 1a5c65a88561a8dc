//! Associated graded algebras of norms, their degree-zero parts, graded
//! semisimplicity through the condensed algebra, `ω`, extraction of the
//! components of a min-gauge, residue gauges and the defect ledger.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraKind, Center, Element};
use crate::coeff::CoefficientField;
use crate::error::{Error, Result};
use crate::fdalg::{FdAlgebra, Vector};
use crate::frac::{kernel, matrix_rank, Frac};
use crate::gauge::{check_surmultiplicative, BaseNorm, GaugeExpr, SurmultiplicativityReport};
use crate::ordered::Value;
use crate::precision::PrecisionPolicy;
use crate::quadratic::{BaseField, ExtensionKind};
use crate::scalar::{approximate, Scalar, ScalarField, ValuationHandle};

/// Seed for the central-element search behind `ω`.
pub const DEFAULT_SEED: u64 = 42;

/// `x̃_i x̃_j = Σ coef · X^exp · x̃_target`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedTerm {
    pub target: usize,
    pub coef: Frac,
    pub exp: Vec<i64>,
}

/// A graded algebra, free over `gr(F)` on homogeneous generators.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub field: CoefficientField,
    /// Rank of the residue field `k(x₁,…,x_k)` of the scalars.
    pub res_rank: usize,
    pub value_rank: usize,
    pub labels: Vec<String>,
    pub degrees: Vec<Value>,
    table: Vec<Vec<Vec<GradedTerm>>>,
}

/// `C = gr / (X − 1)`, graded by the cosets of the degrees modulo `ℤⁿ`.
#[derive(Clone, Debug)]
pub struct CondensedAlgebra {
    pub algebra: FdAlgebra,
    pub keys: Vec<Value>,
}

impl CondensedAlgebra {
    /// The homogeneous components `C_g` as index sets.
    pub fn components(&self) -> BTreeMap<Value, Vec<usize>> {
        let mut out: BTreeMap<Value, Vec<usize>> = BTreeMap::new();
        for (i, k) in self.keys.iter().enumerate() {
            out.entry(k.clone()).or_default().push(i);
        }
        out
    }

    /// Dimension of `⊕_g (J ∩ C_g)` for the radical `J`.
    pub fn graded_radical_dim(&self) -> Result<usize> {
        let j = self.algebra.radical()?;
        if j.is_empty() {
            return Ok(0);
        }
        let n = self.algebra.dim();
        let f = self.algebra.field;
        let r = self.algebra.rank;
        let mut total = 0;
        for idx in self.components().values() {
            // combinations Σ λ_m J_m vanishing outside C_g
            let rows: Vec<Vec<Frac>> =
                (0..n).filter(|c| !idx.contains(c)).map(|c| j.iter().map(|v| v[c].clone()).collect()).collect();
            total += if rows.is_empty() { j.len() } else { kernel(&rows, j.len(), f, r).len() };
        }
        Ok(total)
    }
}

/// Serializable form of a graded presentation.
#[derive(Clone, Debug, Serialize)]
pub struct GradedReport {
    pub labels: Vec<String>,
    pub degrees: Vec<Value>,
    /// `(i, j, k, coefficient, exponent)`.
    pub constants: Vec<(usize, usize, usize, String, Vec<i64>)>,
}

impl GradedAlgebra {
    /// Builds a presentation and checks degree homogeneity of every term.
    pub fn new(
        field: CoefficientField,
        res_rank: usize,
        value_rank: usize,
        labels: Vec<String>,
        degrees: Vec<Value>,
        table: Vec<Vec<Vec<GradedTerm>>>,
    ) -> Result<GradedAlgebra> {
        let n = labels.len();
        if degrees.len() != n || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("graded table does not match the basis".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let s = &degrees[i] + &degrees[j];
                for t in &table[i][j] {
                    if t.exp.len() != value_rank || &degrees[t.target] + &Value::from_ints(&t.exp) != s {
                        return Err(Error::Invalid(format!("inhomogeneous term in x{} x{}", i + 1, j + 1)));
                    }
                }
            }
        }
        Ok(GradedAlgebra { field, res_rank, value_rank, labels, degrees, table })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn terms(&self, i: usize, j: usize) -> &[GradedTerm] {
        &self.table[i][j]
    }

    /// Distinct coset keys of the degrees modulo `ℤⁿ`.
    pub fn coset_keys(&self) -> Vec<Value> {
        let mut keys: Vec<Value> = self.degrees.iter().map(|d| d.coset_key()).collect();
        keys.sort();
        keys.dedup();
        keys
    }

    pub fn condensed(&self) -> CondensedAlgebra {
        let n = self.dim();
        let zero = Frac::zero(self.field, self.res_rank);
        let mut table = vec![vec![vec![zero; n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for t in &self.table[i][j] {
                    table[i][j][t.target] = table[i][j][t.target].add(&t.coef);
                }
            }
        }
        let algebra = FdAlgebra::new(self.field, self.res_rank, self.labels.clone(), table).expect("square table");
        CondensedAlgebra { algebra, keys: self.degrees.iter().map(|d| d.coset_key()).collect() }
    }

    /// Indices of the generators of lattice degree.
    pub fn degree_zero_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i].is_lattice()).collect()
    }

    /// The degree-zero algebra on `x̃_i X^{−γ_i}` for lattice `γ_i`.
    pub fn degree_zero(&self) -> FdAlgebra {
        let idx = self.degree_zero_indices();
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let m = idx.len();
        let zero = Frac::zero(self.field, self.res_rank);
        let mut table = vec![vec![vec![zero; m]; m]; m];
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                for t in &self.table[i][j] {
                    let c = pos[&t.target];
                    table[a][b][c] = table[a][b][c].add(&t.coef);
                }
            }
        }
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        FdAlgebra::new(self.field, self.res_rank, labels, table).expect("square table")
    }

    /// True when no nonzero homogeneous ideal is nilpotent.
    pub fn is_graded_semisimple(&self) -> Result<bool> {
        Ok(self.condensed().graded_radical_dim()? == 0)
    }

    /// Number of simple components of the degree-zero algebra.
    pub fn omega(&self, seed: u64) -> Result<usize> {
        self.degree_zero().count_simple_components(seed)
    }

    /// Block product, with the components' grades kept.
    pub fn block_product(parts: &[GradedAlgebra]) -> Result<GradedAlgebra> {
        let first = parts.first().ok_or_else(|| Error::Invalid("empty product".into()))?;
        if parts.iter().any(|p| p.field != first.field || p.res_rank != first.res_rank || p.value_rank != first.value_rank) {
            return Err(Error::FieldMismatch);
        }
        if parts.len() == 1 {
            return Ok(first.clone());
        }
        let n: usize = parts.iter().map(|p| p.dim()).sum();
        let mut table = vec![vec![Vec::new(); n]; n];
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut off = 0;
        for (pi, p) in parts.iter().enumerate() {
            for i in 0..p.dim() {
                for j in 0..p.dim() {
                    table[off + i][off + j] =
                        p.table[i][j].iter().map(|t| GradedTerm { target: t.target + off, ..t.clone() }).collect();
                }
            }
            labels.extend(p.labels.iter().map(|l| format!("{}#{}", l, pi + 1)));
            degrees.extend(p.degrees.iter().cloned());
            off += p.dim();
        }
        GradedAlgebra::new(first.field, first.res_rank, first.value_rank, labels, degrees, table)
    }

    /// The same algebra with generators reordered: new `i` is old `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<GradedAlgebra> {
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let table = perm
            .iter()
            .map(|&i| {
                perm.iter()
                    .map(|&j| self.table[i][j].iter().map(|t| GradedTerm { target: inv[t.target], ..t.clone() }).collect())
                    .collect()
            })
            .collect();
        GradedAlgebra::new(
            self.field,
            self.res_rank,
            self.value_rank,
            perm.iter().map(|&i| self.labels[i].clone()).collect(),
            perm.iter().map(|&i| self.degrees[i].clone()).collect(),
            table,
        )
    }

    /// Generator `i` replaced by `X^{e_i} x̃_i`.
    pub fn shifted(&self, shifts: &[Vec<i64>]) -> Result<GradedAlgebra> {
        let n = self.dim();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.table[i][j]
                            .iter()
                            .map(|t| {
                                let exp = (0..self.value_rank)
                                    .map(|c| t.exp[c] + shifts[i][c] + shifts[j][c] - shifts[t.target][c])
                                    .collect();
                                GradedTerm { exp, ..t.clone() }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let degrees = (0..n).map(|i| &self.degrees[i] + &Value::from_ints(&shifts[i])).collect();
        GradedAlgebra::new(self.field, self.res_rank, self.value_rank, self.labels.clone(), degrees, table)
    }

    pub fn report(&self) -> GradedReport {
        let vars: Vec<String> = (1..=self.res_rank).map(|i| format!("x{}", i)).collect();
        let mut constants = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for t in &self.table[i][j] {
                    constants.push((i, j, t.target, t.coef.format_with(&vars), t.exp.clone()));
                }
            }
        }
        GradedReport { labels: self.labels.clone(), degrees: self.degrees.clone(), constants }
    }
}

/// Leading value and residue coefficient of a nonzero scalar.
fn leading(h: &ValuationHandle, s: &Scalar) -> Result<Option<(Value, Frac)>> {
    match h.leading(s)? {
        None => Ok(None),
        Some((v, r)) => Ok(Some((v, Frac::from_series(r)?))),
    }
}

fn lattice(v: &Value) -> Result<Vec<i64>> {
    v.to_ints().ok_or_else(|| Error::Unsupported(format!("scalar value {} outside the lattice", v)))
}

/// Leading form of `z`: its value and the homogeneous components
/// `(index, coefficient, exponent)` at that value.
pub fn leading_form(norm: &BaseNorm, z: &Element) -> Result<Option<(Value, Vec<(usize, Frac, Vec<i64>)>)>> {
    let c = norm.coordinates(z);
    let (vd, rd) = leading(&norm.handle, &c.den)?.ok_or(Error::DivisionByZero)?;
    let mut items = Vec::new();
    for (l, d) in c.nums.iter().enumerate() {
        if let Some((vn, rn)) = leading(&norm.handle, d)? {
            let e = &vn - &vd;
            items.push((l, &e + &norm.values[l], rn.div(&rd)?, e));
        }
    }
    let Some(min) = items.iter().map(|t| t.1.clone()).min() else { return Ok(None) };
    let mut form = Vec::new();
    for (l, val, coef, e) in items {
        if val == min {
            form.push((l, coef, lattice(&e)?));
        }
    }
    Ok(Some((min, form)))
}

/// The presentation of `gr_α(A)` for a norm. With `forced`, terms below
/// the expected degree are dropped instead of reported.
pub fn gr_of_norm(norm: &BaseNorm, forced: bool) -> Result<GradedAlgebra> {
    let alg = &norm.algebra;
    let h = &norm.handle;
    let n = norm.dim();
    let residue_rank = h.cut;
    let coeff = h.field.base_field().coeff;
    let mut table = vec![vec![Vec::new(); n]; n];
    let den = norm.coordinates(&alg.one()).den;
    let (vd, rd) = leading(h, &den)?.ok_or(Error::DivisionByZero)?;
    for i in 0..n {
        for j in 0..n {
            let prod = alg.mul(&norm.base[i], &norm.base[j]);
            let s = &norm.values[i] + &norm.values[j];
            let c = norm.coordinates(&prod);
            for (k, d) in c.nums.iter().enumerate() {
                let Some((vn, rn)) = leading(h, d)? else { continue };
                let e = &vn - &vd;
                let val = &e + &norm.values[k];
                if val < s {
                    if forced {
                        continue;
                    }
                    return Err(Error::NotSurmultiplicative(format!(
                        "x{} x{} has a term of value {} below {}",
                        i + 1,
                        j + 1,
                        val,
                        s
                    )));
                }
                if val == s {
                    table[i][j].push(GradedTerm { target: k, coef: rn.div(&rd)?, exp: lattice(&e)? });
                }
            }
        }
    }
    let labels = (0..n).map(|i| format!("x{}", i + 1)).collect();
    GradedAlgebra::new(coeff, residue_rank, h.value_rank(), labels, norm.values.clone(), table)
}

fn check_split_component(g: &GaugeExpr) -> Result<()> {
    let h = g.handle();
    if let Some(e) = h.field.ext() {
        if h.cut != 0 || e.count_extensions()?.kind != ExtensionKind::Split {
            return Err(Error::Unsupported("graded algebras over an extension need an uncoarsened split valuation".into()));
        }
    }
    Ok(())
}

/// `gr_g(A)`. Products and minima give block products of their
/// components; everything else goes through a splitting base.
pub fn gr_of(g: &GaugeExpr) -> Result<GradedAlgebra> {
    match g {
        GaugeExpr::Product(p) => {
            let parts: Result<Vec<_>> = p.components.iter().map(gr_of).collect();
            GradedAlgebra::block_product(&parts?)
        }
        GaugeExpr::Min(m) => {
            let mut parts = Vec::new();
            for c in &m.components {
                check_split_component(c)?;
                parts.push(gr_of(c)?);
            }
            GradedAlgebra::block_product(&parts)
        }
        _ => gr_of_norm(&*g.flatten()?, false),
    }
}

/// Semisimplicity verdict; characteristic `p` cannot be decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unverified,
}

/// Aggregated gauge checks.
#[derive(Clone, Debug, Serialize)]
pub struct GaugeVerification {
    pub kind: String,
    pub valuation: String,
    pub is_norm: bool,
    pub surmultiplicative: SurmultiplicativityReport,
    pub graded_semisimple: Verdict,
    pub omega: Option<usize>,
    pub cosets: Vec<Value>,
    pub dim_algebra: usize,
    pub dim_graded: usize,
    pub declared_xi: Option<usize>,
    pub minimal: Option<bool>,
    /// Set when `ω < ξ`, which no gauge can satisfy.
    pub xi_violation: bool,
}

impl GaugeVerification {
    pub fn is_gauge(&self) -> bool {
        self.is_norm && self.surmultiplicative.passed() && self.graded_semisimple == Verdict::True
    }

    pub fn passed(&self) -> bool {
        self.is_gauge() && !self.xi_violation
    }
}

/// Runs the norm, surmultiplicativity and graded-semisimplicity checks and
/// computes `ω`; compares with a declared extension number.
pub fn verify_gauge(g: &GaugeExpr, declared_xi: Option<usize>) -> Result<GaugeVerification> {
    let flat = g.flatten()?;
    let is_norm = flat.dim() == g.algebra().dim();
    let surmult = check_surmultiplicative(&flat)?;
    let (graded_semisimple, omega, dim_graded, cosets) = if surmult.passed() {
        let gr = gr_of(g)?;
        let ss = match gr.is_graded_semisimple() {
            Ok(true) => Verdict::True,
            Ok(false) => Verdict::False,
            Err(Error::UnsupportedCharacteristic) => Verdict::Unverified,
            Err(e) => return Err(e),
        };
        let omega = if ss == Verdict::True { Some(gr.omega(DEFAULT_SEED)?) } else { None };
        (ss, omega, gr.dim(), gr.coset_keys())
    } else {
        let gr = gr_of_norm(&flat, true)?;
        let ss = match gr.is_graded_semisimple() {
            Ok(true) => Verdict::True,
            Ok(false) => Verdict::False,
            Err(_) => Verdict::Unverified,
        };
        (ss, None, gr.dim(), gr.coset_keys())
    };
    let xi_violation = matches!((omega, declared_xi), (Some(w), Some(x)) if w < x);
    let minimal = match (omega, declared_xi) {
        (Some(w), Some(x)) => Some(w == x),
        _ => None,
    };
    Ok(GaugeVerification {
        kind: g.kind().to_string(),
        valuation: g.handle().label(),
        is_norm,
        surmultiplicative: surmult,
        graded_semisimple,
        omega,
        cosets,
        dim_algebra: g.algebra().dim(),
        dim_graded,
        declared_xi,
        minimal,
        xi_violation,
    })
}

/// `ω(g)`; fails when `g` is not a gauge.
pub fn omega(g: &GaugeExpr) -> Result<usize> {
    let gr = gr_of(g)?;
    if !gr.is_graded_semisimple()? {
        return Err(Error::NotSemisimple);
    }
    gr.omega(DEFAULT_SEED)
}

/// Recovers the components `α_i` of a gauge on the restriction of a
/// `K`-algebra. The approximation element `c_i` is `1` at `v_i` and small
/// at the other extension, so its image in `gr` must be the central
/// idempotent of component `i`; lifting a homogeneous base of that
/// component gives a splitting base of `α_i`.
pub fn extract_components(g: &GaugeExpr) -> Result<Vec<GaugeExpr>> {
    let alg = g.algebra().clone();
    let Some(alg_k) = alg.restriction_of().cloned() else { return Ok(vec![g.clone()]) };
    let handles = alg_k.field.handles();
    if g.cut() != 0 {
        return Err(Error::Unsupported("extraction needs an uncoarsened gauge".into()));
    }
    let flat = g.flatten()?;
    let gr = gr_of_norm(&flat, false)?;
    let cond = gr.condensed();
    let c = &cond.algebra;
    let unit = c.unit().ok_or_else(|| Error::MatchAmbiguous("condensed algebra has no unit".into()))?;
    let zeros = vec![Value::zero(g.value_rank()); handles.len()];
    let mut probes = Vec::new();
    let mut idempotents = Vec::new();
    for i in 0..handles.len() {
        let ci = approximate(&handles, i, &zeros)?;
        let lifted = alg.restrict_element(&alg_k.scale(&ci, &alg_k.one()))?;
        let (deg, form) = leading_form(&flat, &lifted)?.ok_or(Error::DivisionByZero)?;
        if !deg.is_zero() {
            return Err(Error::MatchAmbiguous(format!("probe {} has value {}", i + 1, deg)));
        }
        let mut e = c.zero();
        for (l, coef, _) in form {
            e[l] = coef;
        }
        probes.push(ci);
        idempotents.push(e);
    }
    check_central_idempotents(c, &unit, &idempotents)?;
    let dim_k = alg_k.dim();
    let mut out = Vec::new();
    for (i, e) in idempotents.iter().enumerate() {
        let mut chosen = Vec::new();
        for idx in cond.components().values() {
            let mut span: Vec<Vector> = Vec::new();
            for &l in idx {
                let w = c.mul(e, &c.basis(l));
                let mut trial = span.clone();
                trial.push(w);
                if matrix_rank(&trial) > span.len() {
                    span = trial;
                    chosen.push(l);
                }
            }
        }
        if chosen.len() != dim_k {
            return Err(Error::MatchAmbiguous(format!(
                "component {} has {} independent generators, expected {}",
                i + 1,
                chosen.len(),
                dim_k
            )));
        }
        chosen.sort();
        let mut base = Vec::new();
        let mut values = Vec::new();
        for l in chosen {
            let xk = alg.unrestrict_element(&flat.base[l])?;
            base.push(alg_k.scale(&probes[i], &xk));
            values.push(flat.values[l].clone());
        }
        out.push(GaugeExpr::base(BaseNorm::new(alg_k.clone(), base, values, handles[i].clone())?));
    }
    Ok(out)
}

fn check_central_idempotents(c: &FdAlgebra, unit: &Vector, es: &[Vector]) -> Result<()> {
    let mut sum = c.zero();
    for (i, e) in es.iter().enumerate() {
        if c.is_zero(e) || c.mul(e, e) != *e {
            return Err(Error::MatchAmbiguous(format!("probe {} is not a nonzero idempotent", i + 1)));
        }
        for b in 0..c.dim() {
            let x = c.basis(b);
            if c.mul(e, &x) != c.mul(&x, e) {
                return Err(Error::MatchAmbiguous(format!("probe {} is not central", i + 1)));
            }
        }
        for f in &es[i + 1..] {
            if !c.is_zero(&c.mul(e, f)) {
                return Err(Error::MatchAmbiguous("probes are not orthogonal".into()));
            }
        }
        sum = c.add(&sum, e);
    }
    if sum != *unit {
        return Err(Error::MatchAmbiguous("probes do not sum to 1".into()));
    }
    Ok(())
}

/// The residue algebra `A₀` of the coarsening by `Δ_k` together with the
/// residue norm `α₀(x̃) = α(x)` for `β(x) = 0`.
pub fn residue_vf(g: &GaugeExpr, k: usize) -> Result<(Arc<Algebra>, GaugeExpr)> {
    let fine = g.flatten()?;
    let beta = g.coarsen(k).flatten()?;
    let gr = gr_of_norm(&beta, false)?;
    let idx = gr.degree_zero_indices();
    let a0 = gr.degree_zero();
    let base = beta.handle.field.base_field();
    if beta.handle.field.is_ext() && beta.handle.cut > 0 {
        return Err(Error::Unsupported("residues over an extension field".into()));
    }
    let res = BaseField::new(base.coeff, base.vars[..k].to_vec(), PrecisionPolicy::default_for_rank(k));
    let field = ScalarField::Base(res);
    let to_scalar = |f: &Frac| -> Result<Scalar> {
        let s =
            f.as_series().ok_or_else(|| Error::Unsupported("residue structure constant is not a Laurent polynomial".into()))?;
        Ok(field.from_series(s))
    };
    let m = a0.dim();
    let mut table = Vec::with_capacity(m);
    for a in 0..m {
        let mut row = Vec::with_capacity(m);
        for b in 0..m {
            row.push(a0.structure(a, b).iter().map(&to_scalar).collect::<Result<Element>>()?);
        }
        table.push(row);
    }
    let one = beta.algebra.one();
    let (deg, form) = leading_form(&beta, &one)?.ok_or(Error::DivisionByZero)?;
    if !deg.is_zero() {
        return Err(Error::Degenerate(format!("beta(1) = {}", deg)));
    }
    let mut unit = vec![field.zero(); m];
    for (l, coef, _) in form {
        let p = idx.iter().position(|&i| i == l).ok_or_else(|| Error::Invalid("unit outside degree zero".into()))?;
        unit[p] = to_scalar(&coef)?;
    }
    let center_basis = a0
        .center()
        .iter()
        .map(|v| v.iter().map(&to_scalar).collect::<Result<Element>>())
        .collect::<Result<Vec<_>>>()
        .unwrap_or_else(|_| vec![unit.clone()]);
    let handle = ValuationHandle::new(field.clone(), 1);
    let labels = idx.iter().map(|&i| format!("x{}~", i + 1)).collect();
    let algebra = Arc::new(Algebra::from_table(
        &format!("{}_0", g.algebra().name),
        field,
        labels,
        table,
        unit,
        Center { basis: center_basis, handles: vec![handle.clone()] },
        AlgebraKind::Table,
    ));
    let drop = fine.handle.cut;
    let values = idx.iter().map(|&i| fine.values[i].fine(k - drop)).collect();
    let norm = BaseNorm::standard(algebra.clone(), values, handle)?;
    Ok((algebra, GaugeExpr::Residue(Arc::new(norm), k)))
}

/// `[A:F] = [Ā:F̄] · |Γ:Γ_v| · ∂` bookkeeping.
#[derive(Clone, Debug, Serialize)]
pub struct DefectLedger {
    pub dim_algebra: usize,
    pub dim_graded: usize,
    pub residue_dim: usize,
    pub ramification: usize,
    /// `[A:F] / ([Ā:F̄] · |Γ:Γ_v|)` when the gauge is a valuation.
    pub defect: Option<usize>,
    pub defectless: bool,
}

pub fn defect_report(g: &GaugeExpr) -> Result<DefectLedger> {
    let gr = gr_of(g)?;
    let dim_algebra = g.algebra().dim();
    let residue_dim = gr.degree_zero().dim();
    let ramification = gr.coset_keys().len();
    let valuation = omega(g).ok() == Some(1) && residue_dim * ramification == gr.dim();
    let defect = valuation.then(|| dim_algebra / (residue_dim * ramification));
    Ok(DefectLedger { dim_algebra, dim_graded: gr.dim(), residue_dim, ramification, defect, defectless: gr.dim() == dim_algebra })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quaternion;

    fn alpha(raise_j: bool) -> BaseNorm {
        let base = BaseField::rationals(&["x", "y"]);
        let f = ScalarField::Base(base);
        let d = quaternion(&f, f.parse("1 + x").unwrap(), f.parse("y").unwrap()).unwrap();
        let el = |c: [&str; 4]| d.parse_element(&c.map(String::from)).unwrap();
        let b = vec![el(["1", "1", "0", "0"]), el(["1", "-1", "0", "0"]), el(["0", "0", "1", "0"]), el(["0", "0", "1", "-1"])];
        let g = Value::from_fracs(&[(1, 4), (1, 2)]);
        let mg = Value::from_fracs(&[(-1, 4), (1, 2)]);
        let values = vec![Value::zero(2), Value::zero(2), if raise_j { g.clone() } else { mg }, g];
        BaseNorm::new(d.clone(), b, values, ValuationHandle::new(f, 1)).unwrap()
    }

    #[test]
    fn quaternion_gauge_is_graded_simple_with_two_components() {
        let a = alpha(false);
        let gr = gr_of_norm(&a, false).unwrap();
        assert!(gr.terms(2, 2).is_empty());
        let t = gr.terms(2, 3);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].exp, vec![0, 1]);
        assert!(gr.is_graded_semisimple().unwrap());
        assert_eq!(gr.degree_zero().dim(), 2);
        assert_eq!(gr.omega(DEFAULT_SEED).unwrap(), 2);
    }

    #[test]
    fn raised_j_fails_graded_semisimplicity() {
        let a = alpha(true);
        assert!(gr_of_norm(&a, false).is_err());
        let gr = gr_of_norm(&a, true).unwrap();
        assert!(!gr.is_graded_semisimple().unwrap());
        let v = verify_gauge(&GaugeExpr::base(a), Some(2)).unwrap();
        assert!(!v.is_gauge());
        assert_eq!(v.graded_semisimple, Verdict::False);
    }

    #[test]
    fn coarsening_is_a_valuation_without_defect() {
        let a = GaugeExpr::base(alpha(false));
        let b = a.coarsen(1);
        assert_eq!(omega(&b).unwrap(), 1);
        let d = defect_report(&b).unwrap();
        assert_eq!((d.dim_algebra, d.residue_dim, d.ramification, d.defect), (4, 2, 2, Some(1)));
        let (a0, r) = residue_vf(&a, 1).unwrap();
        assert_eq!(a0.dim(), 2);
        let v = verify_gauge(&r, None).unwrap();
        assert!(v.is_gauge());
        assert_eq!(v.omega, Some(2));
    }
}
