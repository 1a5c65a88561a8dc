//! The acceptance battery. Every criterion prints one line of the form
//! `criterion NN PASS|FAIL name (elapsed / bound) detail` and then asserts.
//! The criteria run one after another so that their timings do not overlap.

use std::time::{Duration, Instant};

use gauge_core::algebra::{field_algebra, matrix_over, Element};
use gauge_core::error::Error;
use gauge_core::ex51::{gammas, Example51};
use gauge_core::gauge::{end_gauge_on, min_compose, valuation_gauge, GaugeExpr};
use gauge_core::graded::{defect_report, extract_components, verify_gauge, Verdict};
use gauge_core::ordered::{ExtendedValue, Value};
use gauge_core::quadratic::{count_extensions_quadratic, BaseField, ExtensionKind, QuadraticExtension};
use gauge_core::rings::{
    graeter_intersection_check, lift_gauge, membership_quotient, total_ring_check, MembershipOracle, Quotient,
};
use gauge_core::sample::{corpus, DEFAULT_SEED};
use gauge_core::scalar::ScalarField;
use num_rational::Rational64;

/// Wall-clock bounds per criterion, in milliseconds.
const BOUND_VALUES: u64 = 1_000;
const BOUND_COSETS: u64 = 2_000;
const BOUND_OMEGA: u64 = 2_000;
const BOUND_RING: u64 = 5_000;
const BOUND_GAMMA: u64 = 10_000;
const BOUND_GRAETER: u64 = 5_000;
const BOUND_TOTAL: u64 = 5_000;
const BOUND_DEFECT: u64 = 2_000;
const BOUND_EXTENSIONS: u64 = 1_000;
const BOUND_COMPOSE: u64 = 10_000;
const BOUND_PROPS: u64 = 60_000;
const BOUND_LIFT: u64 = 1_000;

fn finish(n: usize, name: &str, start: Instant, bound_ms: u64, ok: bool, detail: String) {
    let elapsed = start.elapsed();
    let bound = Duration::from_millis(bound_ms);
    let pass = ok && elapsed <= bound;
    println!(
        "criterion {:02} {} {} ({:.3}s / {:.0}s) {}",
        n,
        if pass { "PASS" } else { "FAIL" },
        name,
        elapsed.as_secs_f64(),
        bound.as_secs_f64(),
        detail
    );
    assert!(ok, "criterion {} failed: {}", n, detail);
    assert!(elapsed <= bound, "criterion {} exceeded its time bound", n);
}

fn v(c: &[(i64, i64)]) -> ExtendedValue {
    ExtendedValue::Finite(Value::from_fracs(c))
}

fn quarter() -> Example51 {
    Example51::new(Example51::default_gamma()).unwrap()
}

fn shared_corpus(e: &Example51, n: usize) -> Vec<Quotient> {
    e.corpus(n, DEFAULT_SEED).into_iter().map(|z| Quotient::element(&e.d, z)).collect()
}

fn criterion_01_value_table() {
    let start = Instant::now();
    let e = quarter();
    let cases: [([&str; 4], ExtendedValue); 5] = [
        (["1", "0", "0", "0"], v(&[(0, 1), (0, 1)])),
        (["0", "1", "0", "0"], v(&[(0, 1), (0, 1)])),
        (["0", "0", "1", "0"], v(&[(-1, 4), (1, 2)])),
        (["0", "0", "0", "1"], v(&[(-1, 4), (1, 2)])),
        (["0", "0", "1", "-1"], v(&[(1, 4), (1, 2)])),
    ];
    let mut bad = Vec::new();
    for (c, want) in &cases {
        let z = e.element(*c).unwrap();
        let direct = e.alpha.evaluate(&z).unwrap();
        let via = e.alpha_via_embedding(&z).unwrap();
        if direct != *want || via != *want {
            bad.push(format!("{:?}: base {} embedding {} expected {}", c, direct, via, want));
        }
    }
    for c in [["0", "0", "1", "0"], ["0", "0", "0", "1"]] {
        let got = e.beta.evaluate(&e.element(c).unwrap()).unwrap();
        if got != v(&[(1, 2)]) {
            bad.push(format!("beta{:?} = {}", c, got));
        }
    }
    let ok = bad.is_empty();
    finish(
        1,
        "value table",
        start,
        BOUND_VALUES,
        ok,
        if ok { "alpha(j) = (-1/4, 1/2), beta(j) = (1/2)".into() } else { bad.join("; ") },
    );
}

fn criterion_02_coset_structure() {
    let start = Instant::now();
    let e = quarter();
    let allowed = [Value::zero(2), Value::from_fracs(&[(1, 4), (1, 2)]), Value::from_fracs(&[(3, 4), (1, 2)])];
    let mut seen = std::collections::BTreeSet::new();
    let mut stray = None;
    let mut points = e.corpus(500, DEFAULT_SEED);
    points.extend(e.adversarial().unwrap().into_iter().map(|q| q.num));
    for z in points {
        let val = e.alpha.evaluate(&z).unwrap();
        let key = val.finite().expect("nonzero sample").coset_key();
        if !allowed.contains(&key) {
            stray = Some(format!("{} has key {}", e.d.format(&z), key));
            break;
        }
        seen.insert(key);
    }
    let ok = stray.is_none() && seen.len() == 3;
    let detail = stray
        .unwrap_or_else(|| format!("{} distinct keys: {:?}", seen.len(), seen.iter().map(|k| k.to_string()).collect::<Vec<_>>()));
    finish(2, "coset keys", start, BOUND_COSETS, ok, detail);
}

fn criterion_03_omega_and_minimality() {
    let start = Instant::now();
    let e = quarter();
    let a = verify_gauge(&e.alpha, Some(2)).unwrap();
    let ap = verify_gauge(&e.alpha_p, None).unwrap();
    let b = verify_gauge(&e.beta, Some(1)).unwrap();
    let ok = a.passed()
        && a.omega == Some(2)
        && a.minimal == Some(true)
        && ap.is_gauge()
        && ap.omega == Some(2)
        && b.passed()
        && b.omega == Some(1)
        && [&a, &ap, &b].iter().all(|r| r.graded_semisimple == Verdict::True);
    let detail = format!("omega alpha {:?}, alpha' {:?}, beta {:?}; alpha minimal {:?}", a.omega, ap.omega, b.omega, a.minimal);
    finish(3, "omega and minimality", start, BOUND_OMEGA, ok, detail);
}

fn criterion_04_gauge_ring_description() {
    let start = Instant::now();
    let e = quarter();
    let mut samples = shared_corpus(&e, 1000);
    samples.extend(e.adversarial().unwrap());
    let mut mismatch = None;
    let mut inside = 0;
    for q in &samples {
        let left = membership_quotient(&e.alpha, q).unwrap().in_ring();
        let right = e.direct_membership(q).unwrap();
        inside += left as usize;
        if left != right {
            mismatch = Some(format!("({}) / ({}): gauge {} direct {}", e.d.format(&q.num), e.f.format(&q.den), left, right));
            break;
        }
    }
    let ok = mismatch.is_none() && inside > 0 && inside < samples.len();
    let detail = mismatch.unwrap_or_else(|| format!("{} samples agree, {} inside", samples.len(), inside));
    finish(4, "gauge ring description", start, BOUND_RING, ok, detail);
}

fn criterion_05_gamma_independence() {
    let start = Instant::now();
    let towers: Vec<Example51> = gammas().into_iter().map(|g| Example51::new(g).unwrap()).collect();
    let samples = shared_corpus(&towers[0], 1000);
    let mut differing = None;
    for q in &samples {
        let verdicts: Vec<_> = towers.iter().map(|t| membership_quotient(&t.alpha, q).unwrap()).collect();
        if verdicts.windows(2).any(|w| w[0] != w[1]) {
            differing = Some(format!("{}: {:?}", towers[0].d.format(&q.num), verdicts));
            break;
        }
    }
    let js: Vec<ExtendedValue> =
        towers.iter().map(|t| t.alpha.evaluate(&t.element(["0", "0", "1", "0"]).unwrap()).unwrap()).collect();
    let distinct = js[0] != js[1] && js[1] != js[2] && js[0] != js[2];
    let expected: Vec<ExtendedValue> =
        gammas().iter().map(|g| ExtendedValue::Finite(Value::new(vec![-g, Rational64::new(1, 2)]))).collect();
    let ok = differing.is_none() && distinct && js == expected;
    let detail = differing.unwrap_or_else(|| {
        format!("identical verdicts on {} samples; alpha(j) = {}, {}, {}", samples.len(), js[0], js[1], js[2])
    });
    finish(5, "gamma independence", start, BOUND_GAMMA, ok, detail);
}

fn criterion_06_intersection_identity() {
    let start = Instant::now();
    let e = quarter();
    let mut samples = shared_corpus(&e, 1000);
    samples.extend(e.adversarial().unwrap());
    samples.push(e.quotient(["x^-1", "x^-1", "0", "0"]).unwrap());
    samples.push(e.quotient(["x^-1", "-x^-1", "0", "0"]).unwrap());
    let oracles = [e.b_oracle(1), e.b_oracle(2)];
    let report = graeter_intersection_check(&e.alpha, &oracles, &samples).unwrap();
    let ok = report.passed();
    let detail = match report.disagreements.first() {
        None => format!("{} samples agree", report.checked),
        Some(c) => format!("{}: {} vs {}", c.element, c.left, c.right),
    };
    finish(6, "intersection of the two Dubrovin rings", start, BOUND_GRAETER, ok, detail);
}

fn criterion_07_total_rings() {
    let start = Instant::now();
    let e = quarter();
    let samples: Vec<Element> =
        e.corpus(260, DEFAULT_SEED + 7).into_iter().filter(|z| e.d.inverse(z).is_ok()).take(200).collect();
    let b1 = total_ring_check(&e.d, &e.b_oracle(1), &samples).unwrap();
    let b2 = total_ring_check(&e.d, &e.b_oracle(2), &samples).unwrap();
    let witness = e.element(["1 + 2*x^-1", "2*x^-1", "0", "0"]).unwrap();
    let mut with_witness = vec![witness];
    with_witness.extend(samples.iter().cloned());
    let ra = total_ring_check(&e.d, &MembershipOracle::gauge_ring("R_alpha", &e.alpha), &with_witness).unwrap();
    let ok = samples.len() == 200 && b1.passed() && b2.passed() && b1.checked == 200 && !ra.passed();
    let detail = format!(
        "B1 {} / B2 {} checked without violation; R_alpha witness {}",
        b1.checked,
        b2.checked,
        ra.violations.first().map(|c| c.element.clone()).unwrap_or_else(|| "missing".into())
    );
    finish(7, "total valuation rings", start, BOUND_TOTAL, ok, detail);
}

fn criterion_08_defect_ledger() {
    let start = Instant::now();
    let e = quarter();
    let b = defect_report(&e.beta).unwrap();
    let a = defect_report(&e.alpha).unwrap();
    let ap = defect_report(&e.alpha_p).unwrap();
    let ok = b.dim_algebra == 4
        && b.residue_dim == 2
        && b.ramification == 2
        && b.defect == Some(1)
        && a.dim_graded == a.dim_algebra
        && ap.dim_graded == ap.dim_algebra;
    let detail = format!(
        "beta: {} = {} * {} * {:?}; [gr:gr F] alpha {} / {}, alpha' {} / {}",
        b.dim_algebra, b.residue_dim, b.ramification, b.defect, a.dim_graded, a.dim_algebra, ap.dim_graded, ap.dim_algebra
    );
    finish(8, "defect ledger", start, BOUND_DEFECT, ok, detail);
}

fn criterion_09_extension_counts() {
    let start = Instant::now();
    let base = BaseField::rationals(&["x", "y"]);
    let count = |u: &str| count_extensions_quadratic(&base, &base.parse(u).unwrap()).unwrap();
    let split = count("1 + x");
    let ram = count("y");
    let inert = count("3");
    let ok = split.count == 2
        && ram.count == 1
        && ram.kind == ExtensionKind::Ramified
        && inert.count == 1
        && inert.kind == ExtensionKind::Inertial;
    let detail = format!(
        "1+x: {} ({:?}), y: {} ({:?}), 3: {} ({:?})",
        split.count, split.kind, ram.count, ram.kind, inert.count, inert.kind
    );
    finish(9, "extension counts", start, BOUND_EXTENSIONS, ok, detail);
}

/// Two Morandi End-gauges on `𝕄₂(K)` for `K = ℚ(x)(√(1 + x))`, one per
/// extension of the `x`-adic valuation.
fn rank_one_pair() -> (std::sync::Arc<gauge_core::algebra::Algebra>, GaugeExpr, GaugeExpr) {
    let base = BaseField::rationals(&["x"]);
    let k = ScalarField::Ext(QuadraticExtension::new(base.clone(), base.parse("1 + x").unwrap(), "t").unwrap());
    let ka = field_algebra(&k);
    let s = matrix_over(&ka, 2).unwrap();
    let hs = k.handles();
    let e1 = end_gauge_on(&s, valuation_gauge(&ka, hs[0].clone()).unwrap(), vec![Value::zero(1), Value::zero(1)]).unwrap();
    let e2 =
        end_gauge_on(&s, valuation_gauge(&ka, hs[1].clone()).unwrap(), vec![Value::zero(1), Value::from_ints(&[1])]).unwrap();
    (s, e1, e2)
}

fn criterion_10_composition_round_trip() {
    let start = Instant::now();
    let (s, e1, e2) = rank_one_pair();
    let composed = min_compose(vec![e1.clone(), e2.clone()]).unwrap();
    let ver = verify_gauge(&composed, Some(2)).unwrap();
    let parts = extract_components(&composed).unwrap();
    let mut points: Vec<Element> = (0..s.dim()).map(|i| s.basis(i)).collect();
    points.extend(corpus(&s, 200, DEFAULT_SEED));
    let matches = |p: &GaugeExpr, q: &GaugeExpr| points.iter().all(|z| p.evaluate(z).unwrap() == q.evaluate(z).unwrap());
    let recovered = parts.len() == 2
        && ((matches(&parts[0], &e1) && matches(&parts[1], &e2)) || (matches(&parts[0], &e2) && matches(&parts[1], &e1)));

    let base2 = BaseField::rationals(&["x", "y"]);
    let k2 = ScalarField::Ext(QuadraticExtension::new(base2.clone(), base2.parse("1 + x").unwrap(), "t").unwrap());
    let ka2 = field_algebra(&k2);
    let s2 = matrix_over(&ka2, 2).unwrap();
    let hs2 = k2.handles();
    let f1 = end_gauge_on(&s2, valuation_gauge(&ka2, hs2[0].clone()).unwrap(), vec![Value::zero(2), Value::zero(2)]).unwrap();
    let f2 = end_gauge_on(&s2, valuation_gauge(&ka2, hs2[1].clone()).unwrap(), vec![Value::zero(2), Value::from_ints(&[0, 1])])
        .unwrap();
    let rejected = match min_compose(vec![f1, f2]) {
        Err(Error::IncompatibleCoarsenings { element, left, right, .. }) => Some(format!("{}: {} vs {}", element, left, right)),
        _ => None,
    };
    let ok = ver.passed() && ver.omega == Some(2) && recovered && rejected.is_some();
    let detail = format!(
        "omega {:?}, {} components recovered on {} points; incompatible witness {}",
        ver.omega,
        parts.len(),
        points.len(),
        rejected.unwrap_or_else(|| "missing".into())
    );
    finish(10, "composition round trip", start, BOUND_COMPOSE, ok, detail);
}

fn criterion_11_invariant_suites() {
    let start = Instant::now();
    let report = gauge_core::props::run_suites(gauge_core::props::Suite::All, DEFAULT_SEED).unwrap();
    let failing: Vec<String> = report.iter().filter(|p| !p.passed).map(|p| format!("{}: {}", p.name, p.detail)).collect();
    let ok = failing.is_empty() && !report.is_empty();
    let detail = if ok {
        format!("{} properties, {} samples", report.len(), report.iter().map(|p| p.samples).sum::<usize>())
    } else {
        failing.join("; ")
    };
    finish(11, "invariant suites", start, BOUND_PROPS, ok, detail);
}

fn criterion_12_lifting() {
    let start = Instant::now();
    let e = quarter();
    let lifted = lift_gauge(&e.beta_p, 0, vec![Value::zero(2), e.delta.clone()]).unwrap();
    let mut bad = Vec::new();
    for p in 0..e.s.dim() {
        let u = e.s.basis(p);
        let (l, a) = (lifted.evaluate(&u).unwrap(), e.alpha_p.evaluate(&u).unwrap());
        if l != a {
            bad.push(format!("{}: lift {} alpha' {}", e.s.labels[p], l, a));
        }
        let (c, b) = (lifted.coarsen(1).evaluate(&u).unwrap(), e.beta_p.evaluate(&u).unwrap());
        if c != b {
            bad.push(format!("{}: coarsened {} beta' {}", e.s.labels[p], c, b));
        }
    }
    let ok = bad.is_empty();
    finish(
        12,
        "lifting",
        start,
        BOUND_LIFT,
        ok,
        if ok { "matrix units agree with alpha' and beta'".into() } else { bad.join("; ") },
    );
}

fn main() {
    let criteria: [fn(); 12] = [
        criterion_01_value_table,
        criterion_02_coset_structure,
        criterion_03_omega_and_minimality,
        criterion_04_gauge_ring_description,
        criterion_05_gamma_independence,
        criterion_06_intersection_identity,
        criterion_07_total_rings,
        criterion_08_defect_ledger,
        criterion_09_extension_counts,
        criterion_10_composition_round_trip,
        criterion_11_invariant_suites,
        criterion_12_lifting,
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("  {}", info)));
    let failed = criteria.iter().filter(|c| std::panic::catch_unwind(**c).is_err()).count();
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
