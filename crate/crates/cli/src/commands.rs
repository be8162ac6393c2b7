use std::fmt::Write as _;
use std::path::Path;

use clusterweyl::companion::{find_admissible, CompanionError};
use clusterweyl::relations::{
    affine_dn_check, affine_dn_setup, check_weight_ge4_walk, group_order as closure,
    standard_relations, verify_involutions, verify_relation, GroupOrder, RelationError,
    RelationReport, VerificationStatus, VerifyOptions, WalkOptions, WalkReport,
};
use clusterweyl::roots::companion_basis_for;
use clusterweyl::wire::{DiagramDoc, MatrixDoc};
use clusterweyl::{Companion, CompanionTriple, Diagram, RootVec, SkewMatrix};
use clusterweyl_service::ServiceConfig;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::input::{parse_eps, parse_seq, read_json, read_matrix};
use crate::{Chain, Source};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

macro_rules! input_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}
input_errors!(
    clusterweyl::MatrixError,
    clusterweyl::RootError,
    CompanionError,
    RelationError
);

/// A verb's result: JSON for `--json`, text otherwise. `passed` is false
/// when a check came out negative, which exits with status 1.
pub struct Report {
    pub value: Value,
    pub text: String,
    pub passed: bool,
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn matrix_text(rows: &[Vec<i64>]) -> String {
    let mut s = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| format!("{x:>4}")).collect();
        let _ = writeln!(s, "[{}]", cells.join(""));
    }
    s
}

fn roots_text(vs: &[RootVec]) -> String {
    let mut s = String::new();
    for (i, v) in vs.iter().enumerate() {
        let _ = writeln!(s, "β{} = {v}", i + 1);
    }
    s
}

fn triple_for(chain: &Chain) -> Result<CompanionTriple, CliError> {
    let m0 = read_matrix(&chain.source.matrix)?;
    let seq = parse_seq(&chain.seq, m0.n())?;
    let eps = parse_eps(&chain.eps, seq.len())?;
    Ok(companion_basis_for(&m0, &seq, &eps)?)
}

pub fn mutate(source: &Source, at: Option<usize>, seq: Option<&str>) -> Result<Report, CliError> {
    let m = read_matrix(&source.matrix)?;
    let seq = match (at, seq) {
        (Some(k), _) => parse_seq(&k.to_string(), m.n())?,
        (None, Some(s)) => parse_seq(s, m.n())?,
        (None, None) => return Err(CliError::Input("pass --at or --seq".into())),
    };
    let out = m.mutate_along(&seq)?;
    Ok(Report {
        text: matrix_text(out.rows()),
        value: to_value(&MatrixDoc::from(out))?,
        passed: true,
    })
}

pub fn diagram(source: &Source) -> Result<Report, CliError> {
    let m = read_matrix(&source.matrix)?;
    let g = Diagram::of(&m);
    let cycles = g.enumerate_cycles();
    let mut text = String::new();
    for e in g.edges() {
        let _ = writeln!(text, "{} → {}  weight {}", e.tail + 1, e.head + 1, e.weight);
    }
    for c in &cycles {
        let _ = writeln!(
            text,
            "{} cycle {:?}",
            if c.oriented {
                "oriented"
            } else {
                "non-oriented"
            },
            one_based(&c.vertices)
        );
    }
    let _ = writeln!(text, "acyclic: {}", g.is_acyclic());
    let mut value = to_value(&DiagramDoc::from(g.clone()))?;
    value["acyclic"] = json!(g.is_acyclic());
    value["cycles"] = cycles
        .iter()
        .map(|c| json!({ "vertices": one_based(&c.vertices), "oriented": c.oriented }))
        .collect();
    Ok(Report {
        value,
        text,
        passed: true,
    })
}

pub fn admissible(path: &Path) -> Result<Report, CliError> {
    let c: Companion = read_json(path)?;
    let adm = c.admissibility();
    let witness = adm.witness.as_ref().map(|w| one_based(&w.vertices));
    let text = match &witness {
        None => "admissible\n".to_string(),
        Some(w) => format!("not admissible: cycle {w:?} fails the sign condition\n"),
    };
    Ok(Report {
        value: json!({ "admissible": adm.admissible, "witness": witness }),
        text,
        passed: true,
    })
}

pub fn find_companion(source: &Source) -> Result<Report, CliError> {
    let m = read_matrix(&source.matrix)?;
    match find_admissible(&m) {
        Ok(c) => Ok(Report {
            text: matrix_text(c.rows()),
            value: to_value(&c)?,
            passed: true,
        }),
        Err(CompanionError::NoSolution(cycles)) => {
            let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| one_based(c)).collect();
            Ok(Report {
                text: format!("no admissible companion; inconsistent cycles {cycles:?}\n"),
                value: json!({ "found": false, "inconsistent_cycles": cycles }),
                passed: false,
            })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn basis(chain: &Chain) -> Result<Report, CliError> {
    let t = triple_for(chain)?;
    let text = format!(
        "companion\n{}basis\n{}",
        matrix_text(t.companion.rows()),
        roots_text(t.basis.vectors())
    );
    Ok(Report {
        value: to_value(&t)?,
        text,
        passed: true,
    })
}

fn verify_all(
    reports: &[RelationReport],
    t: &CompanionTriple,
    options: VerifyOptions,
) -> Result<Vec<RelationReport>, CliError> {
    reports
        .par_iter()
        .map(|r| match verify_relation(r, t, options) {
            Ok(v) => Ok(v),
            Err(RelationError::VerificationFailed { report, .. }) => Ok(*report),
            Err(e) => Err(e.into()),
        })
        .collect()
}

fn relations_report(
    reports: Vec<RelationReport>,
    involutions: Option<bool>,
) -> Result<Report, CliError> {
    let failed = reports
        .iter()
        .filter(|r| r.verified == VerificationStatus::Failed)
        .count();
    let mut text = String::new();
    if let Some(ok) = involutions {
        let _ = writeln!(text, "involutions: {}", if ok { "ok" } else { "FAILED" });
    }
    for r in &reports {
        let _ = writeln!(text, "{r}");
    }
    let passed = failed == 0 && involutions != Some(false);
    let value = match involutions {
        Some(ok) => json!({ "involutions": ok, "relations": to_value(&reports)? }),
        None => to_value(&reports)?,
    };
    Ok(Report {
        value,
        text,
        passed,
    })
}

pub fn relations(chain: &Chain, verify: bool) -> Result<Report, CliError> {
    let t = triple_for(chain)?;
    let mut reports = standard_relations(&t.companion.diagram())?;
    if verify {
        reports = verify_all(&reports, &t, VerifyOptions::default())?;
    }
    relations_report(reports, None)
}

pub fn verify(
    triple: &Path,
    relations: Option<&Path>,
    power_bound: u32,
) -> Result<Report, CliError> {
    let t: CompanionTriple = read_json(triple)?;
    let reports: Vec<RelationReport> = match relations {
        Some(p) => read_json(p)?,
        None => standard_relations(&t.companion.diagram())?,
    };
    let involutions = match verify_involutions(&t) {
        Ok(()) => true,
        Err(RelationError::VerificationFailed { .. }) => false,
        Err(e) => return Err(e.into()),
    };
    let options = VerifyOptions {
        infinite_power_bound: power_bound,
    };
    relations_report(verify_all(&reports, &t, options)?, Some(involutions))
}

fn walk_value(seed: u64, r: &WalkReport) -> Value {
    json!({
        "seed": seed,
        "steps": r.steps,
        "applied": r.applied,
        "retreats": r.retreats,
        "capped": r.capped,
        "min_weight": r.min_weight,
        "max_entry": r.max_entry,
        "violations": r.violations.iter().map(|v| json!({
            "step": v.step,
            "vertex": v.vertex + 1,
            "tail": v.tail + 1,
            "head": v.head + 1,
            "weight": v.weight,
        })).collect::<Vec<_>>(),
    })
}

pub fn walk_ge4(
    source: &Source,
    steps: usize,
    seed: u64,
    runs: u64,
    cap: i64,
) -> Result<Report, CliError> {
    let m: SkewMatrix = read_matrix(&source.matrix)?;
    let results: Vec<(u64, WalkReport)> = (seed..seed + runs.max(1))
        .into_par_iter()
        .map(|s| {
            let options = WalkOptions {
                steps,
                seed: s,
                entry_cap: cap,
            };
            check_weight_ge4_walk(&m, options).map(|r| (s, r))
        })
        .collect::<Result<_, _>>()?;
    let ok = results.iter().all(|(_, r)| r.ok());
    let min_weight = results.iter().filter_map(|(_, r)| r.min_weight).min();
    let mut text = String::new();
    for (s, r) in &results {
        let _ = writeln!(
            text,
            "seed {s}: {} steps, {} forward, {} retreats at the entry cap, min weight {}, max entry {}, {} violations",
            r.steps,
            r.applied,
            r.retreats,
            r.min_weight.map_or("-".into(), |w| w.to_string()),
            r.max_entry,
            r.violations.len()
        );
    }
    Ok(Report {
        value: json!({
            "ok": ok,
            "min_weight": min_weight,
            "walks": results.iter().map(|(s, r)| walk_value(*s, r)).collect::<Vec<_>>(),
        }),
        text,
        passed: ok,
    })
}

pub fn group_order(chain: &Chain, cap: usize) -> Result<Report, CliError> {
    let t = triple_for(chain)?;
    let gens = t.reflections()?;
    let (value, text) = match closure(&gens, cap) {
        GroupOrder::Finite(n) => (json!({ "order": n }), format!("order {n}\n")),
        GroupOrder::Exceeded(n) => (
            json!({ "order": null, "exceeded": n }),
            format!("more than {n} elements\n"),
        ),
    };
    Ok(Report {
        value,
        text,
        passed: true,
    })
}

pub fn affine_check(from: usize, to: usize) -> Result<Report, CliError> {
    if from < 4 || to < from {
        return Err(CliError::Input("need 4 <= --from <= --to".into()));
    }
    let results: Vec<Value> = (from..=to)
        .into_par_iter()
        .map(|n| {
            let run = || -> Result<Value, RelationError> {
                let setup = affine_dn_setup(n)?;
                let r = affine_dn_check(&setup.triple, &setup.labeling)?;
                Ok(json!({
                    "n": n,
                    "passed": r.passed(),
                    "pairing": r.pairing,
                    "gamma": r.gamma.coords(),
                    "delta": r.delta.coords(),
                    "reflections_match": r.reflections_match,
                    "sequence": setup.sequence.to_one_based(),
                    "labeling": one_based(&setup.labeling),
                    "relation": r.relation,
                }))
            };
            run().unwrap_or_else(|e| json!({ "n": n, "passed": false, "error": e.to_string() }))
        })
        .collect();
    let passed = results.iter().all(|r| r["passed"] == json!(true));
    let mut text = String::new();
    for r in &results {
        match r.get("error") {
            Some(e) => {
                let _ = writeln!(text, "D̃{}: {}", r["n"], e.as_str().unwrap_or_default());
            }
            None => {
                let _ = writeln!(
                    text,
                    "D̃{}: (γ, δ) = {}, relation {}",
                    r["n"],
                    r["pairing"],
                    if r["passed"] == json!(true) {
                        "verified"
                    } else {
                        "FAILED"
                    }
                );
            }
        }
    }
    Ok(Report {
        value: Value::Array(results),
        text,
        passed,
    })
}

pub fn serve(config: Option<&Path>, addr: Option<String>) -> Result<Report, CliError> {
    let mut config = ServiceConfig::load(config).map_err(|e| CliError::Input(e.to_string()))?;
    if let Some(addr) = addr {
        config.addr = addr;
    }
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    runtime
        .block_on(clusterweyl_service::serve(config))
        .map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(Report {
        value: Value::Null,
        text: String::new(),
        passed: true,
    })
}
