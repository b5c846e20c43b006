use std::fmt::Write as _;

use serde_json::{json, Value};

use bidouble::certificate::canonical_json;
use bidouble::classify::{self, Classification};
use bidouble::cohomology::{deformation_report, report_certificate};
use bidouble::curves::{enumerate_classes, filter_effective_against_nodal, CurveConfiguration};
use bidouble::cover::{self, Fixture};
use bidouble::surface_file;
use bidouble::{Certificate, Error, Result};

use crate::{Emit, Target};

pub struct Output {
    pub text: String,
    pub passed: bool,
}

fn cert_value(cert: &Certificate) -> Value {
    serde_json::from_str(&cert.to_json()).expect("certificate json")
}

enum Loaded {
    Fixture(Box<Fixture>),
    Config(CurveConfiguration),
}

fn load(target: &Target) -> Result<Loaded> {
    match (&target.fixture, &target.file) {
        (Some(name), _) => Ok(Loaded::Fixture(Box::new(cover::fixture(name)?))),
        (None, Some(path)) => {
            let bytes = std::fs::read(path)
                .map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.display())))?;
            let file = surface_file::parse_bytes(&bytes)?;
            Ok(match file.fixture {
                Some(fx) => Loaded::Fixture(Box::new(fx)),
                None => Loaded::Config(file.config),
            })
        }
        (None, None) => Err(Error::Schema("need --fixture or --file".into())),
    }
}

fn triple(v: [i64; 3]) -> String {
    format!("({}, {}, {})", v[0], v[1], v[2])
}

pub fn classify(k2: i64, verbose: bool, emit: Emit) -> Output {
    let c = classify::classify(k2);
    let cert = classify::certificate(&c);
    let text = match emit {
        Emit::Json => canonical_json(&classification_json(&c, &cert, verbose)),
        Emit::Md => classification_md(&c, &cert, verbose),
    };
    Output {
        text,
        passed: cert.passed(),
    }
}

fn classification_json(c: &Classification, cert: &Certificate, verbose: bool) -> Value {
    let cases: Vec<Value> = c
        .cases
        .iter()
        .map(|x| {
            json!({
                "k": x.k,
                "m": x.reported_m(),
                "l": x.l,
                "k_sigma2": x.k_sigma2,
                "det_a": x.det_a,
                "status": x.status,
            })
        })
        .collect();
    let mut out = json!({
        "k2": c.k2,
        "validated": c.validated,
        "k_candidates": c.k_candidates,
        "cases": cases,
        "certificate": cert_value(cert),
    });
    if verbose {
        let rejected: Vec<Value> = c
            .rejected
            .iter()
            .map(|r| json!({"k": r.k, "m": r.m, "filter": r.filter.describe(), "det_a": r.det_a}))
            .collect();
        let k_rejected: Vec<Value> = c
            .k_rejected
            .iter()
            .map(|(k, f)| json!({"k": k, "filter": f.describe()}))
            .collect();
        out["rejected"] = Value::Array(rejected);
        out["k_rejected"] = Value::Array(k_rejected);
    }
    out
}

fn classification_md(c: &Classification, cert: &Certificate, verbose: bool) -> String {
    let mut s = cert.to_markdown();
    s.push_str("\n## Case table\n\n");
    if !c.validated {
        let _ = writeln!(s, "> unvalidated: no reference table for K^2 = {}\n", c.k2);
    }
    s.push_str("| k | (R1R2, R1R3, R2R3) | l | K_Sigma^2 | det A | status |\n");
    s.push_str("|---|---|---|---|---|---|\n");
    for x in &c.cases {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} |",
            triple(x.k),
            triple(x.reported_m()),
            triple(x.l),
            x.k_sigma2,
            x.det_a,
            x.status
        );
    }
    if verbose {
        s.push_str("\n## Rejected k\n\n");
        for (k, f) in &c.k_rejected {
            let _ = writeln!(s, "- {}: {}", triple(*k), f.describe());
        }
        s.push_str("\n## Rejected (k, m)\n\n| k | (R1R2, R1R3, R2R3) | det A | first failing filter |\n|---|---|---|---|\n");
        for r in &c.rejected {
            let _ = writeln!(s, "| {} | {} | {} | {} |", triple(r.k), triple(r.m), r.det_a, r.filter);
        }
    }
    s
}

fn emit_cert(cert: &Certificate, emit: Emit) -> Output {
    Output {
        text: match emit {
            Emit::Json => cert.to_json(),
            Emit::Md => cert.to_markdown(),
        },
        passed: cert.passed(),
    }
}

pub fn verify(target: &Target, emit: Emit) -> Result<Output> {
    match load(target)? {
        Loaded::Fixture(fx) => Ok(emit_cert(&cover::verify_fixture(&fx)?, emit)),
        Loaded::Config(_) => Err(Error::Schema("the surface file has no cover block to verify".into())),
    }
}

pub fn enumerate(target: &Target, selfint: i64, filtered: bool, emit: Emit) -> Result<Output> {
    let config = match load(target)? {
        Loaded::Fixture(fx) => fx.config,
        Loaded::Config(c) => c,
    };
    let surface = config.surface();
    let kd = match selfint {
        -1 => -1,
        -2 => 0,
        _ => return Err(Error::Domain(format!("--selfint must be -1 or -2, got {selfint}"))),
    };
    let mut classes = enumerate_classes(surface, selfint, kd)?;
    if filtered {
        classes = filter_effective_against_nodal(&classes, &config);
    }
    let names: Vec<String> = classes.iter().map(|c| surface.format_class(c)).collect();
    let labels: Vec<Vec<&str>> = classes
        .iter()
        .map(|c| config.curves().iter().filter(|n| n.class == *c).map(|n| n.name.as_str()).collect())
        .collect();
    let text = match emit {
        Emit::Json => canonical_json(&json!({
            "surface": surface.label(),
            "self_intersection": selfint,
            "filtered": filtered,
            "count": classes.len(),
            "classes": names,
            "named": labels,
        })),
        Emit::Md => {
            let mut s = format!(
                "# ({selfint})-classes on {}{}\n\ncount: {}\n\n",
                surface.label(),
                if filtered { ", nodal-filtered" } else { "" },
                classes.len()
            );
            for (n, l) in names.iter().zip(&labels) {
                if l.is_empty() {
                    let _ = writeln!(s, "- {n}");
                } else {
                    let _ = writeln!(s, "- {n} ({})", l.join(", "));
                }
            }
            s
        }
    };
    Ok(Output { text, passed: true })
}

pub fn report(fixture: &str, emit: Emit) -> Result<Output> {
    let report = deformation_report(fixture)?;
    let cert = report_certificate(&report);
    let text = match emit {
        Emit::Json => canonical_json(&json!({
            "report": report,
            "certificate": cert_value(&cert),
        })),
        Emit::Md => {
            let mut s = format!("# Deformation bookkeeping: {}\n\n", report.fixture);
            let _ = writeln!(s, "- chi(Omega^1_W(K_W)) = {}", report.chi_omega1_k);
            let _ = writeln!(s, "- sum chi(O_Delta_i(K_W)) = {}", report.chi_restrictions);
            let _ = writeln!(s, "- log chi = {}", report.chi_log);
            let _ = writeln!(s, "- balance 2K^2 - 10chi = {}", report.balance);
            if let Some(h) = report.h1_inv {
                let _ = writeln!(s, "- h1_inv = {h}");
            }
            if let Some(b) = report.h2_bounds {
                let _ = writeln!(s, "- h2 bounds (inv, chi1, chi2, chi3) = ({}, {}, {}, {})", b[0], b[1], b[2], b[3]);
            }
            if let (Some(h2), Some(h1)) = (report.h2_total_bound, report.h1_total_bound) {
                let _ = writeln!(s, "- h2 total <= {h2}, h1 total <= {h1}");
            }
            s.push('\n');
            s.push_str(&cert.to_markdown());
            s
        }
    };
    Ok(Output {
        text,
        passed: cert.passed(),
    })
}

pub fn export(fixture: &str) -> Result<Output> {
    let fx = cover::fixture(fixture)?;
    Ok(Output {
        text: surface_file::export(&fx),
        passed: true,
    })
}
