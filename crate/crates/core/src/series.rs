//! Truncated iterated Laurent series `k((x₁))…((xₙ))`.
//!
//! A series of rank `n` is a Laurent series in the coarsest variable `xₙ`
//! whose coefficients are series of rank `n-1`, down to constants in `k`.
//! Every level carries its own precision cut: `Σ cₑ xₙᵉ + O(xₙᶜ)`, where
//! the error term stands for an arbitrary element of order `≥ c`. Stored
//! coefficients are always exact at their positions, so any nonzero stored
//! constant certifies that the series is nonzero.
//!
//! The valuation is the monomial valuation: the least exponent vector under
//! right-to-left lexicographic order, with `v(xᵢ)` the `i`-th unit vector.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::{half_binomial, parse_big_rational, Coeff, CoefficientField};
use crate::error::{Error, Result};
use crate::ordered::{ExtendedValue, Value};
use crate::precision::Precision;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Const(Coeff),
    Level { terms: BTreeMap<i64, Node>, cut: Option<i64> },
}

fn zero_node(rank: usize) -> Node {
    if rank == 0 {
        Node::Const(Coeff::zero())
    } else {
        Node::Level { terms: BTreeMap::new(), cut: None }
    }
}

fn monomial_node(exps: &[i64], c: Coeff) -> Node {
    match exps.split_last() {
        None => Node::Const(c),
        Some((&e, rest)) => {
            if c.is_zero() {
                return zero_node(exps.len());
            }
            let mut terms = BTreeMap::new();
            terms.insert(e, monomial_node(rest, c));
            Node::Level { terms, cut: None }
        }
    }
}

fn is_zero(n: &Node) -> bool {
    match n {
        Node::Const(c) => c.is_zero(),
        Node::Level { terms, cut } => terms.is_empty() && cut.is_none(),
    }
}

fn is_exact(n: &Node) -> bool {
    match n {
        Node::Const(_) => true,
        Node::Level { terms, cut } => cut.is_none() && terms.values().all(is_exact),
    }
}

fn certainly_nonzero(n: &Node) -> bool {
    match n {
        Node::Const(c) => !c.is_zero(),
        Node::Level { terms, .. } => terms.values().any(certainly_nonzero),
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn lower_bound(n: &Node) -> Option<i64> {
    match n {
        Node::Const(_) => Some(0),
        Node::Level { terms, cut } => min_opt(terms.keys().next().copied(), *cut),
    }
}

fn combine(f: CoefficientField, a: &Node, b: &Node, negate_b: bool) -> Node {
    match (a, b) {
        (Node::Const(x), Node::Const(y)) => Node::Const(if negate_b { f.sub(x, y) } else { f.add(x, y) }),
        (Node::Level { terms: ta, cut: ca }, Node::Level { terms: tb, cut: cb }) => {
            let cut = min_opt(*ca, *cb);
            let below = |k: &i64| cut.is_none_or(|c| *k < c);
            let mut terms = BTreeMap::new();
            for (k, x) in ta.iter().filter(|(k, _)| below(k)) {
                terms.insert(*k, x.clone());
            }
            for (k, y) in tb.iter().filter(|(k, _)| below(k)) {
                let merged = match terms.remove(k) {
                    Some(x) => combine(f, &x, y, negate_b),
                    None if negate_b => neg_node(f, y),
                    None => y.clone(),
                };
                if !is_zero(&merged) {
                    terms.insert(*k, merged);
                }
            }
            Node::Level { terms, cut }
        }
        _ => panic!("series rank mismatch"),
    }
}

fn neg_node(f: CoefficientField, a: &Node) -> Node {
    match a {
        Node::Const(x) => Node::Const(f.neg(x)),
        Node::Level { terms, cut } => Node::Level { terms: terms.iter().map(|(k, x)| (*k, neg_node(f, x))).collect(), cut: *cut },
    }
}

fn scale_node(f: CoefficientField, a: &Node, c: &Coeff) -> Node {
    match a {
        Node::Const(x) => Node::Const(f.mul(x, c)),
        Node::Level { terms, cut } => {
            if c.is_zero() && cut.is_none() {
                return Node::Level { terms: BTreeMap::new(), cut: None };
            }
            Node::Level {
                terms: terms.iter().map(|(k, x)| (*k, scale_node(f, x, c))).filter(|(_, x)| !is_zero(x)).collect(),
                cut: *cut,
            }
        }
    }
}

fn mul_node(f: CoefficientField, a: &Node, b: &Node) -> Node {
    match (a, b) {
        (Node::Const(x), Node::Const(y)) => Node::Const(f.mul(x, y)),
        (Node::Level { terms: ta, cut: ca }, Node::Level { terms: tb, cut: cb }) => {
            if is_zero(a) || is_zero(b) {
                return Node::Level { terms: BTreeMap::new(), cut: None };
            }
            let lba = lower_bound(a).expect("nonzero");
            let lbb = lower_bound(b).expect("nonzero");
            let cut = min_opt(ca.map(|c| c + lbb), cb.map(|c| c + lba));
            let mut acc: BTreeMap<i64, Node> = BTreeMap::new();
            for (i, x) in ta {
                for (j, y) in tb {
                    let k = i + j;
                    if cut.is_some_and(|c| k >= c) {
                        break;
                    }
                    let p = mul_node(f, x, y);
                    if is_zero(&p) {
                        continue;
                    }
                    let merged = match acc.remove(&k) {
                        Some(old) => combine(f, &old, &p, false),
                        None => p,
                    };
                    acc.insert(k, merged);
                }
            }
            acc.retain(|_, x| !is_zero(x));
            Node::Level { terms: acc, cut }
        }
        _ => panic!("series rank mismatch"),
    }
}

fn truncate_node(n: &Node, c: i64) -> Node {
    match n {
        Node::Const(_) => n.clone(),
        Node::Level { terms, cut } => Node::Level {
            terms: terms.range(..c).map(|(k, x)| (*k, x.clone())).collect(),
            cut: Some(cut.map_or(c, |old| old.min(c))),
        },
    }
}

fn shift_node(n: &Node, e: i64) -> Node {
    match n {
        Node::Const(_) => n.clone(),
        Node::Level { terms, cut } => {
            Node::Level { terms: terms.iter().map(|(k, x)| (k + e, x.clone())).collect(), cut: cut.map(|c| c + e) }
        }
    }
}

fn drop_cuts(n: &Node) -> Node {
    match n {
        Node::Const(_) => n.clone(),
        Node::Level { terms, .. } => {
            Node::Level { terms: terms.iter().map(|(k, x)| (*k, drop_cuts(x))).filter(|(_, x)| !is_zero(x)).collect(), cut: None }
        }
    }
}

/// Leading term over the coarsest `m` variables: the least coarse exponent
/// (ascending coordinate order) together with its coefficient node.
fn coarse_leading(n: &Node, m: usize) -> Result<Option<(Vec<i64>, Node)>> {
    if m == 0 {
        if is_zero(n) {
            return Ok(None);
        }
        if certainly_nonzero(n) {
            return Ok(Some((Vec::new(), n.clone())));
        }
        return Err(Error::InsufficientPrecision);
    }
    match n {
        Node::Const(_) => unreachable!("coarse depth exceeds rank"),
        Node::Level { terms, cut } => match terms.iter().next() {
            Some((k, child)) => match coarse_leading(child, m - 1)? {
                Some((mut e, res)) => {
                    e.push(*k);
                    Ok(Some((e, res)))
                }
                None => unreachable!("stored child is never the exact zero"),
            },
            None if cut.is_none() => Ok(None),
            None => Err(Error::InsufficientPrecision),
        },
    }
}

/// Coefficient node at a coarse exponent (ascending order, coarsest last).
fn coefficient_at(n: &Node, coarse: &[i64], rank: usize) -> Result<Node> {
    match coarse.split_last() {
        None => Ok(n.clone()),
        Some((&e, rest)) => match n {
            Node::Const(_) => unreachable!("coarse depth exceeds rank"),
            Node::Level { terms, cut } => match terms.get(&e) {
                Some(child) => coefficient_at(child, rest, rank - 1),
                None if cut.is_some_and(|c| c <= e) => Err(Error::InsufficientPrecision),
                None => Ok(zero_node(rank - 1 - rest.len())),
            },
        },
    }
}

fn one_node(rank: usize) -> Node {
    monomial_node(&vec![0; rank], Coeff::one())
}

fn wrap_child(child: Node) -> Node {
    let mut terms = BTreeMap::new();
    if !is_zero(&child) {
        terms.insert(0, child);
    }
    Node::Level { terms, cut: None }
}

/// Splits `x^m c_m (1 + r)` into `(m, c_m, q = c_m⁻¹, r)` where `r` has
/// positive order in the top variable.
fn unit_split(f: CoefficientField, n: &Node, level: usize, prec: &Precision) -> Result<(i64, Node, Node, Node)> {
    let (terms, cut) = match n {
        Node::Level { terms, cut } => (terms, cut),
        Node::Const(_) => unreachable!(),
    };
    let (&m, cm) = match terms.iter().next() {
        Some(x) => x,
        None if cut.is_some() => return Err(Error::InsufficientPrecision),
        None => return Err(Error::DivisionByZero),
    };
    let q = inv_node(f, cm, level - 1, prec)?;
    let rest = Node::Level { terms: terms.iter().skip(1).map(|(k, x)| (k - m, x.clone())).collect(), cut: cut.map(|c| c - m) };
    let r = mul_node(f, &wrap_child(q.clone()), &rest);
    Ok((m, cm.clone(), q, r))
}

/// `Σ_{j ≤ N} c_j r^j + O(x^{N+1})` for a top-level `r` of positive order.
fn power_series(f: CoefficientField, r: &Node, level: usize, depth: i64, coeff: impl Fn(u32) -> Coeff) -> Node {
    let mut sum = one_node(level);
    if is_zero(r) {
        return sum;
    }
    let mut pow = one_node(level);
    for j in 1..=depth {
        pow = truncate_node(&mul_node(f, &pow, r), depth + 1);
        if is_zero(&pow) {
            break;
        }
        let c = f.normalize(coeff(j as u32));
        sum = combine(f, &sum, &scale_node(f, &pow, &c), false);
    }
    truncate_node(&sum, depth + 1)
}

fn inv_node(f: CoefficientField, n: &Node, level: usize, prec: &Precision) -> Result<Node> {
    if let Node::Const(c) = n {
        return Ok(Node::Const(f.inv(c)?));
    }
    let (m, _, q, r) = unit_split(f, n, level, prec)?;
    let depth = prec.depth(level) as i64;
    let neg_r = neg_node(f, &r);
    let series = power_series(f, &neg_r, level, depth, |_| Coeff::one());
    Ok(shift_node(&mul_node(f, &wrap_child(q), &series), -m))
}

fn sqrt_node(f: CoefficientField, n: &Node, level: usize, prec: &Precision) -> Result<Node> {
    match n {
        Node::Const(c) => f.sqrt(c).map(Node::Const).ok_or(Error::NonSquareResidue),
        Node::Level { terms, cut } => {
            let (&m, cm) = match terms.iter().next() {
                Some(x) => x,
                None if cut.is_some() => return Err(Error::InsufficientPrecision),
                None => return Ok(n.clone()),
            };
            if !certainly_nonzero(cm) {
                return Err(Error::InsufficientPrecision);
            }
            if m.rem_euclid(2) != 0 {
                return Err(Error::OddExponent);
            }
            let root_c = sqrt_node(f, cm, level - 1, prec)?;
            let (_, _, _, r) = unit_split(f, n, level, prec)?;
            let depth = prec.depth(level) as i64;
            let series = power_series(f, &r, level, depth, half_binomial);
            Ok(shift_node(&mul_node(f, &wrap_child(root_c), &series), m / 2))
        }
    }
}

fn collect_terms(n: &Node, suffix: &mut Vec<i64>, out: &mut Vec<(Vec<i64>, Coeff)>) {
    match n {
        Node::Const(c) => {
            if !c.is_zero() {
                let mut e = suffix.clone();
                e.reverse();
                out.push((e, c.clone()));
            }
        }
        Node::Level { terms, .. } => {
            for (k, x) in terms {
                suffix.push(*k);
                collect_terms(x, suffix, out);
                suffix.pop();
            }
        }
    }
}

fn count_cuts(n: &Node) -> bool {
    !is_exact(n)
}

/// An element of `k((x₁))…((xₙ))` known up to its precision cuts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    field: CoefficientField,
    rank: usize,
    node: Node,
}

impl Series {
    pub fn zero(field: CoefficientField, rank: usize) -> Self {
        Series { field, rank, node: zero_node(rank) }
    }

    pub fn one(field: CoefficientField, rank: usize) -> Self {
        Series::constant(field, rank, Coeff::one())
    }

    pub fn constant(field: CoefficientField, rank: usize, c: Coeff) -> Self {
        Series::monomial(field, &vec![0; rank], c)
    }

    pub fn from_i64(field: CoefficientField, rank: usize, c: i64) -> Self {
        Series::constant(field, rank, BigRational::from_integer(c.into()))
    }

    /// `c · x^exps`; `exps[i]` is the exponent of `x_{i+1}`.
    pub fn monomial(field: CoefficientField, exps: &[i64], c: Coeff) -> Self {
        let c = field.normalize(c);
        Series { field, rank: exps.len(), node: monomial_node(exps, c) }
    }

    /// The variable `x_{i+1}`.
    pub fn var(field: CoefficientField, rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        Series::monomial(field, &e, Coeff::one())
    }

    /// Sum of the given terms.
    pub fn from_terms(field: CoefficientField, rank: usize, terms: &[(Vec<i64>, Coeff)]) -> Self {
        terms.iter().fold(Series::zero(field, rank), |acc, (e, c)| &acc + &Series::monomial(field, e, c.clone()))
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// True only for the exact zero.
    pub fn is_zero(&self) -> bool {
        is_zero(&self.node)
    }

    /// True when no precision cut is present anywhere.
    pub fn is_exact(&self) -> bool {
        is_exact(&self.node)
    }

    /// True when some stored coefficient is nonzero.
    pub fn is_certainly_nonzero(&self) -> bool {
        certainly_nonzero(&self.node)
    }

    /// `true` when the series carries a precision cut somewhere.
    pub fn has_cuts(&self) -> bool {
        count_cuts(&self.node)
    }

    fn wrap(&self, node: Node) -> Series {
        Series { field: self.field, rank: self.rank, node }
    }

    fn check(&self, other: &Series) {
        assert_eq!(self.rank, other.rank, "series rank mismatch");
        assert_eq!(self.field, other.field, "coefficient field mismatch");
    }

    /// The monomial valuation; `∞` only for the exact zero.
    pub fn valuation(&self) -> Result<ExtendedValue> {
        self.coarse_valuation(0)
    }

    /// Valuation composed with the projection modulo `Δ_k`.
    pub fn coarse_valuation(&self, k: usize) -> Result<ExtendedValue> {
        Ok(match self.leading(k)? {
            Some((v, _)) => ExtendedValue::Finite(v),
            None => ExtendedValue::Infinity,
        })
    }

    /// Leading term for the valuation coarsened by `Δ_k`: the coarse value
    /// and the rank-`k` coefficient series sitting at it.
    pub fn leading(&self, k: usize) -> Result<Option<(Value, Series)>> {
        let m = self.rank - k.min(self.rank);
        Ok(coarse_leading(&self.node, m)?
            .map(|(e, node)| (Value::from_ints(&e), Series { field: self.field, rank: self.rank - m, node })))
    }

    /// Leading exponent and coefficient.
    pub fn leading_coefficient(&self) -> Result<Option<(Value, Coeff)>> {
        Ok(self.leading(0)?.map(|(v, s)| match s.node {
            Node::Const(c) => (v, c),
            Node::Level { .. } => unreachable!(),
        }))
    }

    /// The rank-`k` coefficient series at a coarse exponent (coordinates
    /// `k+1..n`).
    pub fn coefficient_at(&self, coarse: &[i64]) -> Result<Series> {
        let node = coefficient_at(&self.node, coarse, self.rank)?;
        Ok(Series { field: self.field, rank: self.rank - coarse.len(), node })
    }

    /// Image in the residue field of the valuation coarsened by `Δ_k`.
    pub fn residue(&self, k: usize) -> Result<Series> {
        let m = self.rank - k.min(self.rank);
        match self.coarse_valuation(k)? {
            ExtendedValue::Finite(v) if v.signum().is_lt() => Err(Error::NegativeValue),
            _ => self.coefficient_at(&vec![0; m]),
        }
    }

    /// Constant value of a rank-0 series.
    pub fn as_constant(&self) -> Option<&Coeff> {
        match &self.node {
            Node::Const(c) => Some(c),
            Node::Level { .. } => None,
        }
    }

    /// Multiplicative inverse, expanded to the given depth.
    pub fn inv(&self, prec: &Precision) -> Result<Series> {
        Ok(self.wrap(inv_node(self.field, &self.node, self.rank, prec)?))
    }

    /// Square root by Hensel lifting: the monomial part is halved, the
    /// leading coefficient's square root is taken in `k`, and the unit part
    /// `1 + r` is lifted through the binomial series of `(1 + r)^{1/2}`.
    pub fn sqrt(&self, prec: &Precision) -> Result<Series> {
        Ok(self.wrap(sqrt_node(self.field, &self.node, self.rank, prec)?))
    }

    pub fn div(&self, other: &Series, prec: &Precision) -> Result<Series> {
        Ok(self * &other.inv(prec)?)
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.field, self.rank);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &Coeff) -> Series {
        let c = self.field.normalize(c.clone());
        self.wrap(scale_node(self.field, &self.node, &c))
    }

    /// Multiplies by the monomial `x^exps`.
    pub fn mul_monomial(&self, exps: &[i64]) -> Series {
        self * &Series::monomial(self.field, exps, Coeff::one())
    }

    /// Drops every precision cut, keeping the stored terms.
    pub fn truncated(&self) -> Series {
        self.wrap(drop_cuts(&self.node))
    }

    /// Stored terms as (exponent vector, coefficient), in storage order.
    pub fn terms(&self) -> Vec<(Vec<i64>, Coeff)> {
        let mut out = Vec::new();
        collect_terms(&self.node, &mut Vec::new(), &mut out);
        out
    }

    pub fn num_terms(&self) -> usize {
        self.terms().len()
    }

    /// Per-variable `(min, max)` exponent of the stored terms.
    pub fn degree_box(&self) -> Option<Vec<(i64, i64)>> {
        let terms = self.terms();
        let first = terms.first()?;
        let mut b: Vec<(i64, i64)> = first.0.iter().map(|&e| (e, e)).collect();
        for (e, _) in &terms {
            for (i, &x) in e.iter().enumerate() {
                b[i].0 = b[i].0.min(x);
                b[i].1 = b[i].1.max(x);
            }
        }
        Some(b)
    }

    /// Embeds a rank-`k` series into rank `n ≥ k` with zero exponents on
    /// the added coarse variables.
    pub fn extend_rank(&self, n: usize) -> Series {
        let mut node = self.node.clone();
        for _ in self.rank..n {
            node = wrap_child(node);
        }
        Series { field: self.field, rank: n.max(self.rank), node }
    }

    /// Exact quotient of Laurent polynomials, when the division is exact.
    pub fn div_exact(&self, d: &Series) -> Option<Series> {
        self.check(d);
        if !self.is_exact() || !d.is_exact() || d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let abox = self.degree_box()?;
        let dbox = d.degree_box()?;
        let (ed, cd) = d.leading_coefficient().ok()??;
        let cd_inv = self.field.inv(&cd).ok()?;
        let ed = ed.to_ints()?;
        let mut q = Series::zero(self.field, self.rank);
        let mut r = self.clone();
        while !r.is_zero() {
            let (er, cr) = r.leading_coefficient().ok()??;
            let er = er.to_ints()?;
            let e: Vec<i64> = er.iter().zip(&ed).map(|(a, b)| a - b).collect();
            for (i, x) in e.iter().enumerate() {
                if *x < abox[i].0 - dbox[i].0 || *x > abox[i].1 - dbox[i].1 {
                    return None;
                }
            }
            let c = self.field.mul(&cr, &cd_inv);
            let m = Series::monomial(self.field, &e, c);
            r = &r - &(&m * d);
            q = &q + &m;
        }
        Some(q)
    }

    /// Square root as a Laurent polynomial, when one exists.
    pub fn exact_sqrt(&self) -> Option<Series> {
        if !self.is_exact() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let b = self.degree_box()?;
        let depths = b.iter().map(|(lo, hi)| ((hi - lo) as u32) + 4).collect();
        let root = self.sqrt(&Precision::new(depths)).ok()?.truncated();
        (&root * &root == *self).then_some(root)
    }

    /// Parses a literal such as `1 + x`, `-1/2*x^-3*y^2`.
    pub fn parse(field: CoefficientField, vars: &[String], text: &str) -> Result<Series> {
        let terms = parse_terms(text, vars)?;
        Ok(Series::from_terms(field, vars.len(), &terms))
    }

    /// Formats with the given variable names.
    pub fn format_with(&self, vars: &[String]) -> String {
        let mut terms = self.terms();
        terms.sort_by(|a, b| Value::from_ints(&a.0).cmp(&Value::from_ints(&b.0)));
        let mut s = String::new();
        for (i, (e, c)) in terms.iter().enumerate() {
            let neg = c < &Coeff::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| {
                    let name = vars.get(j).cloned().unwrap_or_else(|| format!("x{}", j + 1));
                    if x == 1 {
                        name
                    } else {
                        format!("{}^{}", name, x)
                    }
                })
                .collect();
            let coef = if mag.is_integer() { mag.to_integer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) };
            if mono.is_empty() {
                s.push_str(&coef);
            } else if mag.is_one() {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&format!("{}*{}", coef, mono.join("*")));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        if self.has_cuts() {
            s.push_str(" + O(...)");
        }
        s
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (1..=self.rank).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.format_with(&vars))
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.check(rhs);
        self.wrap(combine(self.field, &self.node, &rhs.node, false))
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.check(rhs);
        self.wrap(combine(self.field, &self.node, &rhs.node, true))
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.check(rhs);
        self.wrap(mul_node(self.field, &self.node, &rhs.node))
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.wrap(neg_node(self.field, &self.node))
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        &self + &rhs
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        &self - &rhs
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        &self * &rhs
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

/// Parses a sum of terms `c * v1^e1 * … * vm^em` over the given variable
/// names. Returns `(coefficient, exponent vector)` pairs.
pub fn parse_terms(text: &str, vars: &[String]) -> Result<Vec<(Vec<i64>, Coeff)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let err = |pos: usize, msg: &str| Error::Parse(format!("column {} in '{}': {}", pos + 1, text, msg));
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let read_int = |pos: &mut usize| -> Option<String> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then(|| chars[start..*pos].iter().collect())
    };
    let mut out = Vec::new();
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(err(pos, "empty literal"));
    }
    let mut first = true;
    while pos < chars.len() {
        let mut negative = false;
        skip_ws(&mut pos);
        if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            negative = chars[pos] == '-';
            pos += 1;
        } else if !first {
            return Err(err(pos, "expected '+' or '-'"));
        }
        first = false;
        let mut coef = Coeff::one();
        let mut exps = vec![0i64; vars.len()];
        let mut factors = 0;
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                return Err(err(pos, "expected a factor"));
            }
            let c = chars[pos];
            if c.is_ascii_digit() {
                let num = read_int(&mut pos).expect("digit present");
                let mut lit = num;
                if pos < chars.len() && chars[pos] == '/' {
                    pos += 1;
                    let den = read_int(&mut pos).ok_or_else(|| err(pos, "expected denominator"))?;
                    lit = format!("{}/{}", lit, den);
                }
                let r = parse_big_rational(&lit).map_err(|_| err(pos, "bad rational"))?;
                coef *= r;
            } else if c.is_alphabetic() || c == '_' {
                let start = pos;
                while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
                    pos += 1;
                }
                let name: String = chars[start..pos].iter().collect();
                let idx =
                    vars.iter().position(|v| *v == name).ok_or_else(|| err(start, &format!("unknown variable '{}'", name)))?;
                skip_ws(&mut pos);
                let mut e = 1i64;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let mut sign = 1;
                    if pos < chars.len() && chars[pos] == '-' {
                        sign = -1;
                        pos += 1;
                    }
                    let digits = read_int(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
                    e = sign * digits.parse::<i64>().map_err(|_| err(pos, "exponent overflow"))?;
                }
                exps[idx] += e;
            } else {
                return Err(err(pos, &format!("unexpected '{}'", c)));
            }
            factors += 1;
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        }
        debug_assert!(factors > 0);
        if negative {
            coef = -coef;
        }
        out.push((exps, coef));
        skip_ws(&mut pos);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    const Q: CoefficientField = CoefficientField::Rationals;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn s(t: &str) -> Series {
        Series::parse(Q, &vars(), t).unwrap()
    }

    fn q(p: i64, d: i64) -> Coeff {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    fn p8() -> Precision {
        Precision::uniform(2, 8)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(s("x").valuation().unwrap(), Value::from_ints(&[1, 0]).into());
        assert_eq!(Series::zero(Q, 2).valuation().unwrap(), ExtendedValue::Infinity);
        assert_eq!(s("y + x*y^2").valuation().unwrap(), Value::from_ints(&[0, 1]).into());
        assert_eq!(s("x^5 + y").valuation().unwrap(), Value::from_ints(&[5, 0]).into());
    }

    #[test]
    fn inverse_is_geometric_series() {
        let inv = s("1 + x").inv(&p8()).unwrap();
        let terms = inv.terms();
        assert_eq!(terms.len(), 9);
        for (e, c) in terms {
            let sign = if e[0] % 2 == 0 { 1 } else { -1 };
            assert_eq!(c, q(sign, 1));
            assert_eq!(e[1], 0);
        }
        let back = &inv * &s("1 + x");
        assert_eq!(back.leading_coefficient().unwrap(), Some((Value::zero(2), q(1, 1))));
        assert_eq!(back.terms().len(), 1);
    }

    #[test]
    fn inverse_across_levels() {
        let a = s("x*y^-1 + 2*y + x^2*y^3");
        let inv = a.inv(&p8()).unwrap();
        let prod = &inv * &a;
        assert_eq!(prod.valuation().unwrap(), Value::zero(2).into());
        let lead = prod.leading_coefficient().unwrap().unwrap();
        assert_eq!(lead.1, q(1, 1));
        assert!((&prod - &Series::one(Q, 2)).terms().is_empty());
    }

    #[test]
    fn sqrt_of_one_plus_x_is_binomial() {
        let r = s("1 + x").sqrt(&p8()).unwrap();
        let terms = r.terms();
        for (e, c) in &terms {
            assert_eq!(*c, half_binomial(e[0] as u32));
        }
        assert_eq!(terms[1].1, q(1, 2));
        assert_eq!(terms[2].1, q(-1, 8));
    }

    #[test]
    fn sqrt_errors() {
        assert_eq!(s("y").sqrt(&p8()), Err(Error::OddExponent));
        assert_eq!(s("x*y^2").sqrt(&p8()), Err(Error::OddExponent));
        assert_eq!(s("2").sqrt(&p8()), Err(Error::NonSquareResidue));
        assert_eq!(s("1").sqrt(&p8()).unwrap(), s("1"));
    }

    #[test]
    fn exact_sqrt_and_division() {
        let a = s("1 + 2*x + x^2");
        assert_eq!(a.exact_sqrt().unwrap(), s("1 + x"));
        assert!(s("1 + x").exact_sqrt().is_none());
        let p = s("1 + x*y - y^2");
        let prod = &p * &s("x - y");
        assert_eq!(prod.div_exact(&s("x - y")).unwrap(), p);
        assert!(s("1 + x").div_exact(&s("1 - x")).is_none());
    }

    #[test]
    fn residue_drops_positive_order() {
        let z = s("1 + y*x^-3");
        assert_eq!(z.residue(1).unwrap(), Series::one(Q, 1));
        assert!(s("y").residue(1).unwrap().is_zero());
        assert_eq!(s("y^-1").residue(1), Err(Error::NegativeValue));
    }

    #[test]
    fn parser_rejects_garbage() {
        assert!(Series::parse(Q, &vars(), "1 + z").is_err());
        assert!(Series::parse(Q, &vars(), "").is_err());
        assert!(Series::parse(Q, &vars(), "1 x").is_err());
        assert_eq!(s("-1/2*x^-3*y^2").terms(), vec![(vec![-3, 2], q(-1, 2))]);
    }

    #[test]
    fn precision_cut_blocks_undecidable_valuation() {
        let r = s("1 + x").sqrt(&p8()).unwrap();
        let mut approx = r.truncated();
        approx = &approx - &s("1");
        let diff = &(&r - &s("1")) - &approx;
        assert_eq!(diff.valuation(), Err(Error::InsufficientPrecision));
    }
}
