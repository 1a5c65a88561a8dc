//! Scenario files: a JSON description of a base field, quadratic
//! extensions, algebras, embeddings, gauges and declared constants.
//!
//! Every block is an object keyed by name; later blocks refer to earlier
//! names. Rationals are written as strings `"p/q"`, values as arrays of
//! such strings (finest coordinate first), scalars in the usual polynomial
//! syntax (`"1 + x"`, `"x^-1*y"`, `"2*t"`).

use std::sync::Arc;

use gauge_core::algebra::{field_algebra, matrix_over, product, quaternion, Algebra, AlgebraKind, Element, Embedding};
use gauge_core::coeff::CoefficientField;
use gauge_core::error::{Error, Result};
use gauge_core::gauge::{end_gauge_on, min_compose, product_gauge_on, valuation_gauge, BaseNorm, GaugeExpr};
use gauge_core::ordered::{parse_rational64, Value};
use gauge_core::precision::PrecisionPolicy;
use gauge_core::quadratic::{BaseField, QuadraticExtension};
use gauge_core::rings::ScenarioConstants;
use gauge_core::scalar::{ScalarField, ValuationHandle};
use indexmap::IndexMap;
use serde::Deserialize;

/// The bundled description of the rank-2 quaternion example.
pub const EXAMPLE51: &str = include_str!("../fixtures/example51.json");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default = "default_coefficients")]
    coefficients: String,
    #[serde(default)]
    variables: Vec<String>,
    #[serde(default)]
    precision: Option<RawPrecision>,
    #[serde(default = "default_seed")]
    seed: u64,
    #[serde(default)]
    extensions: IndexMap<String, RawExtension>,
    #[serde(default)]
    algebras: IndexMap<String, RawAlgebra>,
    #[serde(default)]
    embeddings: IndexMap<String, RawEmbedding>,
    #[serde(default)]
    gauges: IndexMap<String, RawGauge>,
    #[serde(default)]
    constants: IndexMap<String, RawConstants>,
}

fn default_coefficients() -> String {
    "Q".into()
}

fn default_seed() -> u64 {
    42
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPrecision {
    initial: Vec<u32>,
    max_refinements: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    u: String,
    #[serde(default = "default_generator")]
    generator: String,
}

fn default_generator() -> String {
    "t".into()
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawAlgebra {
    Quaternion {
        #[serde(default = "base_name")]
        field: String,
        a: String,
        b: String,
    },
    Matrix {
        #[serde(default = "base_name")]
        field: String,
        n: usize,
    },
    Field {
        #[serde(default = "base_name")]
        field: String,
    },
    Product {
        parts: Vec<String>,
    },
}

fn base_name() -> String {
    "F".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEmbedding {
    source: String,
    target: String,
    i: Vec<String>,
    j: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawValuation {
    #[serde(default = "base_name")]
    field: String,
    #[serde(default = "plus")]
    sign: i8,
    #[serde(default)]
    cut: usize,
}

fn plus() -> i8 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawGauge {
    Base { algebra: String, valuation: RawValuation, base: Vec<Vec<String>>, values: Vec<Vec<String>> },
    Standard { algebra: String, valuation: RawValuation, values: Vec<Vec<String>> },
    End { algebra: String, valuation: RawValuation, shifts: Vec<Vec<String>> },
    Product { algebra: String, components: Vec<String> },
    Min { components: Vec<String> },
    Coarsen { of: String, cut: usize },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstants {
    xi: usize,
    note: String,
    #[serde(default)]
    coarse: Option<RawCoarse>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoarse {
    cut: usize,
    xi: usize,
}

/// A resolved extension block.
pub struct ExtensionBlock {
    pub name: String,
    pub u: String,
    pub field: ScalarField,
}

/// A loaded scenario with every reference resolved.
pub struct Scenario {
    pub base: Arc<BaseField>,
    pub seed: u64,
    pub extensions: Vec<ExtensionBlock>,
    pub algebras: IndexMap<String, Arc<Algebra>>,
    pub embeddings: IndexMap<String, Result<Embedding>>,
    pub gauges: IndexMap<String, GaugeExpr>,
    pub constants: IndexMap<String, ScenarioConstants>,
}

/// A syntax error, located by line and column of the JSON text.
fn syntax_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e))
}

fn at<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {}", path, m)),
        Error::UnresolvedReference(m) => Error::UnresolvedReference(m),
        other => Error::Invalid(format!("{}: {}", path, other)),
    })
}

fn value_of(path: &str, coords: &[String]) -> Result<Value> {
    let c = coords.iter().map(|s| parse_rational64(s)).collect::<Result<Vec<_>>>();
    Ok(Value::new(at(path, c)?))
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let raw: RawScenario = serde_json::from_str(text).map_err(syntax_error)?;
        Scenario::resolve(raw)
    }

    pub fn load(path: &std::path::Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {}", path.display(), e)))?;
        Scenario::parse(&text)
    }

    pub fn example51() -> Scenario {
        Scenario::parse(EXAMPLE51).expect("bundled fixture is valid")
    }

    fn resolve(raw: RawScenario) -> Result<Scenario> {
        let coeff = match raw.coefficients.trim() {
            "Q" | "QQ" | "rationals" => CoefficientField::Rationals,
            other => {
                let p = other
                    .strip_prefix("GF(")
                    .and_then(|s| s.strip_suffix(')'))
                    .and_then(|s| s.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("coefficients: unknown field '{}'", other)))?;
                at("coefficients", CoefficientField::prime(p))?
            }
        };
        let rank = raw.variables.len();
        let policy = match &raw.precision {
            Some(p) => PrecisionPolicy::new(p.initial.clone(), p.max_refinements),
            None => PrecisionPolicy::default_for_rank(rank),
        };
        let base = BaseField::new(coeff, raw.variables.clone(), policy);
        let mut fields: IndexMap<String, ScalarField> = IndexMap::new();
        fields.insert("F".into(), ScalarField::Base(base.clone()));

        let mut extensions = Vec::new();
        for (name, e) in &raw.extensions {
            let path = format!("extensions.{}", name);
            let u = at(&format!("{}.u", path), base.parse(&e.u))?;
            let ext = at(&path, QuadraticExtension::new(base.clone(), u, &e.generator))?;
            let field = ScalarField::Ext(ext);
            fields.insert(name.clone(), field.clone());
            extensions.push(ExtensionBlock { name: name.clone(), u: e.u.clone(), field });
        }
        let field_ref = |path: &str, name: &str| -> Result<ScalarField> {
            fields.get(name).cloned().ok_or_else(|| Error::UnresolvedReference(format!("{}: field '{}'", path, name)))
        };

        let mut algebras: IndexMap<String, Arc<Algebra>> = IndexMap::new();
        for (name, a) in &raw.algebras {
            let path = format!("algebras.{}", name);
            let alg = match a {
                RawAlgebra::Quaternion { field, a, b } => {
                    let f = field_ref(&path, field)?;
                    let (a, b) = (at(&format!("{}.a", path), f.parse(a))?, at(&format!("{}.b", path), f.parse(b))?);
                    at(&path, quaternion(&f, a, b))?
                }
                RawAlgebra::Matrix { field, n } => at(&path, matrix_over(&field_algebra(&field_ref(&path, field)?), *n))?,
                RawAlgebra::Field { field } => field_algebra(&field_ref(&path, field)?),
                RawAlgebra::Product { parts } => {
                    let parts = parts
                        .iter()
                        .map(|p| {
                            algebras
                                .get(p)
                                .cloned()
                                .ok_or_else(|| Error::UnresolvedReference(format!("{}: algebra '{}'", path, p)))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    at(&path, product(&parts))?
                }
            };
            algebras.insert(name.clone(), alg);
        }
        let alg_ref = |path: &str, name: &str| -> Result<Arc<Algebra>> {
            algebras.get(name).cloned().ok_or_else(|| Error::UnresolvedReference(format!("{}: algebra '{}'", path, name)))
        };
        let element = |path: &str, alg: &Algebra, coords: &[String]| -> Result<Element> {
            if coords.len() != alg.dim() {
                return Err(Error::Parse(format!("{}: expected {} coordinates, found {}", path, alg.dim(), coords.len())));
            }
            at(path, alg.parse_element(coords))
        };

        let mut embeddings = IndexMap::new();
        for (name, e) in &raw.embeddings {
            let path = format!("embeddings.{}", name);
            let (src, tgt) = (alg_ref(&path, &e.source)?, alg_ref(&path, &e.target)?);
            let i = element(&format!("{}.i", path), &tgt, &e.i)?;
            let j = element(&format!("{}.j", path), &tgt, &e.j)?;
            embeddings.insert(name.clone(), Embedding::quaternion(&src, &tgt, i, j));
        }

        let handle = |path: &str, v: &RawValuation| -> Result<ValuationHandle> {
            let f = field_ref(path, &v.field)?;
            if v.sign != 1 && v.sign != -1 {
                return Err(Error::Parse(format!("{}: sign must be 1 or -1", path)));
            }
            if v.cut > f.rank() {
                return Err(Error::Parse(format!("{}: cut {} exceeds rank {}", path, v.cut, f.rank())));
            }
            Ok(ValuationHandle::new(f, v.sign).coarsened(v.cut))
        };
        let mut gauges: IndexMap<String, GaugeExpr> = IndexMap::new();
        for (name, g) in &raw.gauges {
            let path = format!("gauges.{}", name);
            let gauge_ref = |n: &str| -> Result<GaugeExpr> {
                gauges.get(n).cloned().ok_or_else(|| Error::UnresolvedReference(format!("{}: gauge '{}'", path, n)))
            };
            let values_of = |vs: &[Vec<String>]| -> Result<Vec<Value>> {
                vs.iter().enumerate().map(|(i, v)| value_of(&format!("{}.values[{}]", path, i), v)).collect()
            };
            let expr = match g {
                RawGauge::Base { algebra, valuation, base, values } => {
                    let alg = alg_ref(&path, algebra)?;
                    let h = handle(&path, valuation)?;
                    let b = base
                        .iter()
                        .enumerate()
                        .map(|(i, c)| element(&format!("{}.base[{}]", path, i), &alg, c))
                        .collect::<Result<Vec<_>>>()?;
                    GaugeExpr::base(at(&path, BaseNorm::new(alg, b, values_of(values)?, h))?)
                }
                RawGauge::Standard { algebra, valuation, values } => {
                    let alg = alg_ref(&path, algebra)?;
                    let h = handle(&path, valuation)?;
                    GaugeExpr::base(at(&path, BaseNorm::standard(alg, values_of(values)?, h))?)
                }
                RawGauge::End { algebra, valuation, shifts } => {
                    let alg = alg_ref(&path, algebra)?;
                    let h = handle(&path, valuation)?;
                    let inner = match &alg.kind {
                        AlgebraKind::Matrix { inner, .. } if inner.dim() == 1 && inner.field == h.field => inner.clone(),
                        _ => field_algebra(&h.field),
                    };
                    let shifts = values_of(shifts)?;
                    at(&path, valuation_gauge(&inner, h).and_then(|vg| end_gauge_on(&alg, vg, shifts)))?
                }
                RawGauge::Product { algebra, components } => {
                    let alg = alg_ref(&path, algebra)?;
                    let comps = components.iter().map(|c| gauge_ref(c)).collect::<Result<Vec<_>>>()?;
                    at(&path, product_gauge_on(&alg, comps))?
                }
                RawGauge::Min { components } => {
                    let comps = components.iter().map(|c| gauge_ref(c)).collect::<Result<Vec<_>>>()?;
                    match min_compose(comps) {
                        Err(e @ Error::IncompatibleCoarsenings { .. }) => return Err(e),
                        other => at(&path, other)?,
                    }
                }
                RawGauge::Coarsen { of, cut } => {
                    let g = gauge_ref(of)?;
                    if *cut > g.handle().rank() {
                        return Err(Error::Parse(format!("{}: cut {} exceeds rank {}", path, cut, g.handle().rank())));
                    }
                    g.coarsen(*cut)
                }
            };
            gauges.insert(name.clone(), expr);
        }

        let mut constants = IndexMap::new();
        for (name, c) in raw.constants {
            if !gauges.contains_key(&name) {
                return Err(Error::UnresolvedReference(format!("constants: gauge '{}'", name)));
            }
            if c.note.trim().is_empty() {
                return Err(Error::Parse(format!("constants.{}: a provenance note is required", name)));
            }
            constants.insert(name, ScenarioConstants { xi: c.xi, note: c.note, coarse: c.coarse.map(|k| (k.cut, k.xi)) });
        }
        Ok(Scenario { base, seed: raw.seed, extensions, algebras, embeddings, gauges, constants })
    }
}
