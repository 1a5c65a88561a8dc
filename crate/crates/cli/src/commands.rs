//! The commands behind the `gauge` binary. Each returns a [`Report`];
//! printing and exit codes are left to the caller.

use std::collections::BTreeSet;

use gauge_core::error::{Error, Result};
use gauge_core::ex51::{gammas, Example51};
use gauge_core::gauge::GaugeExpr;
use gauge_core::graded::{defect_report, gr_of, verify_gauge, Verdict};
use gauge_core::ordered::{ExtendedValue, Value};
use gauge_core::props::{run_suites, Suite};
use gauge_core::quadratic::{count_extensions_quadratic, extension_kind_at_cut};
use gauge_core::rings::{
    graeter_intersection_check, lift_gauge, membership_quotient, minimality_report, ring_closure_check, total_ring_check,
    MembershipOracle, Quotient,
};
use gauge_core::sample::corpus;
use num_rational::Rational64;
use serde_json::json;

use crate::report::{Record, Report, Status};
use crate::scenario::Scenario;

/// Samples per gauge in the ring checks of `report`.
pub const REPORT_SAMPLES: usize = 100;
/// Samples used by the total-ring check of `example51`.
pub const TOTAL_RING_SAMPLES: usize = 200;

fn verification_record(name: &str, g: &GaugeExpr, xi: Option<usize>) -> Result<Record> {
    let v = verify_gauge(g, xi)?;
    let status = if !v.is_norm || !v.surmultiplicative.passed() || v.graded_semisimple == Verdict::False || v.xi_violation {
        Status::Fail
    } else if v.graded_semisimple == Verdict::Unverified {
        Status::Unverified
    } else {
        Status::Pass
    };
    let witness = v
        .surmultiplicative
        .violation
        .as_ref()
        .map(|(i, j, lhs, rhs)| json!({ "pair": [i, j], "value_of_product": lhs, "sum_of_values": rhs }));
    let details = json!({
        "kind": v.kind,
        "valuation": v.valuation,
        "is_norm": v.is_norm,
        "surmultiplicative": v.surmultiplicative.passed(),
        "witness": witness,
        "graded_semisimple": v.graded_semisimple,
        "omega": v.omega,
        "cosets": v.cosets,
        "declared_xi": v.declared_xi,
        "minimal": v.minimal,
    });
    Ok(Record::new(format!("gauge {}", name), status, details))
}

/// `check`: embeddings are verified and every gauge block goes through
/// the full gauge verification.
pub fn check(s: &Scenario) -> Report {
    let mut r = Report::new("check");
    check_into(s, &mut r);
    r
}

fn check_into(s: &Scenario, r: &mut Report) {
    for (name, e) in &s.embeddings {
        r.run(&format!("embedding {}", name), || match e {
            Ok(e) => Ok(Record::new(
                format!("embedding {}", name),
                Status::Pass,
                json!({ "source": e.source.name, "target": e.target.name }),
            )),
            Err(err) => Ok(Record::new(format!("embedding {}", name), Status::Fail, json!({ "error": err.to_string() }))),
        });
    }
    for (name, g) in &s.gauges {
        let xi = s.constants.get(name).map(|c| c.xi);
        r.run(&format!("gauge {}", name), || verification_record(name, g, xi));
    }
}

/// `gr`: the graded presentation of every gauge block.
pub fn gr(s: &Scenario) -> Report {
    let mut r = Report::new("gr");
    for (name, g) in &s.gauges {
        r.run(&format!("gr {}", name), || {
            let gr = gr_of(g)?;
            let rep = gr.report();
            Ok(Record::new(
                format!("gr {}", name),
                Status::Pass,
                json!({ "dim": gr.dim(), "labels": rep.labels, "degrees": rep.degrees, "constants": rep.constants }),
            ))
        });
    }
    r
}

/// `extensions`: number and kind of extensions for every extension block,
/// together with the behaviour of each coarsening.
pub fn extensions(s: &Scenario) -> Report {
    let mut r = Report::new("extensions");
    extensions_into(s, &mut r);
    r
}

fn extensions_into(s: &Scenario, r: &mut Report) {
    for e in &s.extensions {
        r.run(&format!("extensions {}", e.name), || {
            let u = s.base.parse(&e.u)?;
            let c = count_extensions_quadratic(&s.base, &u)?;
            let kinds = (0..s.base.rank())
                .map(|k| extension_kind_at_cut(&u, k).map(|kind| format!("{:?}", kind).to_lowercase()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Record::new(
                format!("extensions {}", e.name),
                Status::Pass,
                json!({ "u": e.u, "count": c.count, "kind": format!("{:?}", c.kind).to_lowercase(), "kind_by_cut": kinds }),
            ))
        });
    }
}

/// `report`: everything in `check` and `extensions`, then minimality,
/// defect bookkeeping and ring closure for each gauge.
pub fn full_report(s: &Scenario) -> Report {
    let mut r = Report::new("report");
    check_into(s, &mut r);
    extensions_into(s, &mut r);
    for (name, c) in &s.constants {
        let g = &s.gauges[name];
        r.run(&format!("minimality {}", name), || {
            let m = minimality_report(g, c)?;
            Ok(Record::new(format!("minimality {}", name), Status::Pass, json!({ "report": m, "note": c.note })))
        });
    }
    for (name, g) in &s.gauges {
        r.run(&format!("defect {}", name), || {
            let d = defect_report(g)?;
            Ok(Record::pass_if(format!("defect {}", name), d.defectless, json!(d)))
        });
        r.run(&format!("ring closure {}", name), || {
            let samples = corpus(g.algebra(), REPORT_SAMPLES, s.seed);
            let oracle = MembershipOracle::gauge_ring(name, g);
            let ce = ring_closure_check(g.algebra(), &oracle, &samples)?;
            Ok(Record::pass_if(
                format!("ring closure {}", name),
                ce.is_none(),
                json!({ "samples": samples.len(), "counterexample": ce }),
            ))
        });
    }
    r
}

fn ev(v: &ExtendedValue) -> String {
    v.to_string()
}

/// `example51`: builds the quaternion tower for `gamma` and runs the whole
/// battery. With `samples = 0` only the deterministic checks run.
pub fn example51(gamma: Rational64, samples: usize, seed: u64) -> Result<Report> {
    let e = Example51::new(gamma)?;
    let mut r = Report::new("example51");
    let half = Rational64::new(1, 2);

    r.run("values", || {
        let cases = [
            ("1", ["1", "0", "0", "0"], Value::zero(2)),
            ("i", ["0", "1", "0", "0"], Value::zero(2)),
            ("j", ["0", "0", "1", "0"], Value::new(vec![-gamma, half])),
            ("k", ["0", "0", "0", "1"], Value::new(vec![-gamma, half])),
            ("j-k", ["0", "0", "1", "-1"], Value::new(vec![gamma, half])),
        ];
        let mut ok = true;
        let mut table = serde_json::Map::new();
        for (label, c, want) in cases {
            let z = e.element(c)?;
            let (a, via) = (e.alpha.evaluate(&z)?, e.alpha_via_embedding(&z)?);
            ok &= a == ExtendedValue::Finite(want.clone()) && via == a;
            table.insert(format!("alpha({})", label), json!(ev(&a)));
        }
        for (label, c) in [("j", ["0", "0", "1", "0"]), ("k", ["0", "0", "0", "1"])] {
            let b = e.beta.evaluate(&e.element(c)?)?;
            ok &= b == ExtendedValue::Finite(Value::new(vec![half]));
            table.insert(format!("beta({})", label), json!(ev(&b)));
        }
        Ok(Record::pass_if("values", ok, serde_json::Value::Object(table)))
    });

    r.run("value cosets", || {
        let want: BTreeSet<Value> = [Value::zero(2), e.delta.coset_key(), (-&e.delta).coset_key()].into_iter().collect();
        let v = verify_gauge(&e.alpha, Some(2))?;
        let mut keys: BTreeSet<Value> = v.cosets.iter().cloned().collect();
        let structural = keys == want;
        if samples > 0 {
            for z in e.corpus(samples, seed) {
                if let Some(val) = e.alpha.evaluate(&z)?.finite() {
                    keys.insert(val.coset_key());
                }
            }
        }
        Ok(Record::pass_if("value cosets", structural && keys == want, json!({ "keys": keys, "samples": samples })))
    });

    r.run("omega", || {
        let a = verify_gauge(&e.alpha, Some(2))?;
        let ap = verify_gauge(&e.alpha_p, Some(1))?;
        let b = verify_gauge(&e.beta, Some(1))?;
        let ok = a.passed() && ap.passed() && b.passed() && a.omega == Some(2) && ap.omega == Some(2) && b.omega == Some(1);
        Ok(Record::pass_if(
            "omega",
            ok,
            json!({ "alpha": a.omega, "alpha_p": ap.omega, "beta": b.omega, "alpha_minimal": a.minimal, "beta_minimal": b.minimal }),
        ))
    });

    r.run("defect", || {
        let d = defect_report(&e.beta)?;
        let ok = d.dim_algebra == 4 && d.residue_dim == 2 && d.ramification == 2 && d.defect == Some(1);
        Ok(Record::pass_if("defect", ok, json!(d)))
    });

    r.run("lifting", || {
        let lifted = lift_gauge(&e.beta_p, 0, vec![Value::zero(2), e.delta.clone()])?;
        let mut ok = true;
        for p in 0..e.s.dim() {
            let u = e.s.basis(p);
            ok &= lifted.evaluate(&u)? == e.alpha_p.evaluate(&u)?;
            ok &= lifted.coarsen(1).evaluate(&u)? == e.beta_p.evaluate(&u)?;
        }
        Ok(Record::pass_if("lifting", ok, json!({ "basis_elements": e.s.dim() })))
    });

    if samples == 0 {
        r.push(Record::new("sampling", Status::Unverified, json!({ "skipped": "samples = 0" })));
        return Ok(r);
    }

    let mut pool: Vec<Quotient> = e.corpus(samples, seed).into_iter().map(|z| Quotient::element(&e.d, z)).collect();
    pool.extend(e.adversarial()?);

    r.run("gauge ring description", || {
        let mut mismatch = None;
        for q in &pool {
            let (a, b) = (membership_quotient(&e.alpha, q)?.in_ring(), e.direct_membership(q)?);
            if a != b {
                mismatch = Some(format!("({}) / ({})", e.d.format(&q.num), e.f.format(&q.den)));
                break;
            }
        }
        Ok(Record::pass_if(
            "gauge ring description",
            mismatch.is_none(),
            json!({ "samples": pool.len(), "counterexample": mismatch }),
        ))
    });

    r.run("intersection of B1 and B2", || {
        let rep = graeter_intersection_check(&e.alpha, &[e.b_oracle(1), e.b_oracle(2)], &pool)?;
        Ok(Record::pass_if("intersection of B1 and B2", rep.passed(), json!(rep)))
    });

    r.run("total rings", || {
        let zs: Vec<_> = e.corpus(samples.min(TOTAL_RING_SAMPLES), seed).into_iter().filter(|z| e.d.inverse(z).is_ok()).collect();
        let b1 = total_ring_check(&e.d, &e.b_oracle(1), &zs)?;
        let b2 = total_ring_check(&e.d, &e.b_oracle(2), &zs)?;
        let mut with_witness = vec![e.element(["1 + 2*x^-1", "2*x^-1", "0", "0"])?];
        with_witness.extend(zs.iter().cloned());
        let ra = total_ring_check(&e.d, &MembershipOracle::gauge_ring("R_alpha", &e.alpha), &with_witness)?;
        let ok = b1.passed() && b2.passed() && !ra.passed();
        Ok(Record::pass_if(
            "total rings",
            ok,
            json!({ "B1": b1.checked, "B2": b2.checked, "R_alpha_witness": ra.violations.first() }),
        ))
    });

    r.run("gamma independence", || {
        let others: Vec<Rational64> = gammas().into_iter().filter(|g| *g != gamma).take(2).collect();
        let towers = others.iter().map(|g| Example51::new(*g)).collect::<Result<Vec<_>>>()?;
        let mut same = true;
        for q in &pool {
            let mine = membership_quotient(&e.alpha, q)?;
            for t in &towers {
                same &= membership_quotient(&t.alpha, q)? == mine;
            }
        }
        let j = e.element(["0", "0", "1", "0"])?;
        let mut js = vec![ev(&e.alpha.evaluate(&j)?)];
        for t in &towers {
            js.push(ev(&t.alpha.evaluate(&j)?));
        }
        let distinct = js.iter().collect::<BTreeSet<_>>().len() == js.len();
        let compared: Vec<String> = others.iter().map(|g| g.to_string()).collect();
        Ok(Record::pass_if(
            "gamma independence",
            same && distinct,
            json!({ "compared_with": compared, "same_ring": same, "alpha_j": js }),
        ))
    });
    Ok(r)
}

/// `props`: the seeded property suites, one record per property.
pub fn props(suite: Suite, seed: u64) -> Result<Report> {
    let mut r = Report::new("props");
    for p in run_suites(suite, seed)? {
        let name = format!("{}: {}", p.suite, p.name);
        let details =
            if p.passed { json!({ "samples": p.samples }) } else { json!({ "samples": p.samples, "counterexample": p.detail }) };
        r.push(Record::pass_if(name, p.passed, details));
    }
    Ok(r)
}

/// Maps a top-level error to the exit status it should produce.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InsufficientPrecision => crate::report::EXIT_PRECISION,
        Error::Parse(_) | Error::UnresolvedReference(_) | Error::GammaOutOfRange => crate::report::EXIT_USAGE,
        _ => crate::report::EXIT_FAIL,
    }
}
