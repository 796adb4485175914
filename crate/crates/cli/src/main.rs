//! `proxcheck`: command-line front end.
//!
//! Exit codes: 0 when the property holds (or the suite passes), 1 when it
//! fails, 2 on usage, schema or resource-cap errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use proxcheck::axioms::{check_axioms_with_cap, AxiomReport, Witness, DEFAULT_CAP};
use proxcheck::covering::{is_covering_map_with_cap, CoveringOutcome, DEFAULT_SEARCH_CAP};
use proxcheck::descriptive::{check_descriptive_axioms_with_cap, descriptive_space};
use proxcheck::homotopy::{homotopic_with_cap, HomotopyWitness, DEFAULT_VISIT_CAP};
use proxcheck::io::{parse_map_file, parse_space_file, LoadedMap};
use proxcheck::lifting::{
    catalog_by_names, default_catalog, has_phep_with_caps, has_phlp_with_caps, retract_characterization_with_cap,
    LiftVerdict, DEFAULT_RETRACT_CAP, DEFAULT_STATE_CAP,
};
use proxcheck::maps::{is_isomorphism, is_pc_map, SpaceMap};
use proxcheck::mapspace::DEFAULT_ENUMERATION_CAP;
use proxcheck::suite::run_example_suite;
use proxcheck::{Space, Subset};

#[derive(Parser, Debug)]
#[command(name = "proxcheck", version, about = "Exact checks on finite proximity spaces")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Resource cap for the underlying search (enumeration size, visited
    /// states or backtracking steps, depending on the command).
    #[arg(long, global = true)]
    cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a space file: EF, Čech or not a proximity. With features,
    /// the descriptive axioms are checked as well.
    CheckAxioms { space: PathBuf },
    /// Proximal continuity (and isomorphism) of a map file.
    CheckMap { map: PathBuf },
    /// Search for a homotopy between two maps with the same endpoints.
    CheckHomotopy {
        from: PathBuf,
        to: PathBuf,
        /// Require a homotopy on at most this interval resolution.
        #[arg(long)]
        interval_n: Option<usize>,
    },
    /// Covering certificate search. Optional leading space files must match
    /// the map's domain or codomain.
    CheckCovering {
        #[arg(required = true, num_args = 1..=3)]
        files: Vec<PathBuf>,
    },
    /// Homotopy lifting property over each catalog space.
    CheckFibration {
        map: PathBuf,
        #[arg(long, value_delimiter = ',')]
        catalog: Option<Vec<String>>,
    },
    /// Homotopy extension property over each catalog space, and the
    /// retraction test on `X' × I_n`.
    CheckCofibration {
        map: PathBuf,
        #[arg(long, value_delimiter = ',')]
        catalog: Option<Vec<String>>,
        #[arg(long, default_value_t = 1)]
        interval_n: usize,
    },
    /// Run every bundled example check.
    RunPaperSuite,
}

#[derive(Serialize)]
struct Input {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct Report {
    command: Vec<String>,
    inputs: Vec<Input>,
    holds: bool,
    warnings: Vec<String>,
    result: Value,
    #[serde(skip)]
    text: Vec<String>,
}

/// Failures that map to exit code 2.
#[derive(Debug)]
struct UsageError(anyhow::Error);

fn digest(path: &Path) -> anyhow::Result<Input> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Input { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) })
}

fn names(space: &Space, s: &Subset) -> Vec<String> {
    space.subset_names(s)
}

fn witness_json(space: &Space, w: &Witness) -> Value {
    match w {
        Witness::Pair(e, f) => json!({"E": names(space, e), "F": names(space, f)}),
        Witness::Triple(e, f, g) => json!({"E": names(space, e), "F": names(space, f), "G": names(space, g)}),
    }
}

fn axioms_json(space: &Space, r: &AxiomReport) -> Value {
    let verdicts: Vec<Value> = r
        .verdicts
        .iter()
        .map(|v| {
            json!({
                "axiom": v.axiom.label(),
                "holds": v.holds,
                "counterexample": v.counterexample.as_ref().map(|w| witness_json(space, w)),
            })
        })
        .collect();
    json!({
        "classification": r.classification.label(),
        "separation_method": format!("{:?}", r.separation_method).to_lowercase(),
        "verdicts": verdicts,
    })
}

fn axioms_text(space: &Space, r: &AxiomReport, out: &mut Vec<String>) {
    for v in &r.verdicts {
        let mut line = format!("  {} {}", v.axiom.label(), if v.holds { "holds" } else { "fails" });
        if let Some(w) = &v.counterexample {
            line.push_str(&format!(": {}", witness_json(space, w)));
        }
        out.push(line);
    }
}

fn homotopy_json(w: &HomotopyWitness) -> Value {
    let slices: Vec<Value> = (0..=w.steps())
        .map(|t| {
            let m = w.slice(t);
            Value::Object(m.named_assignment().into_iter().map(|(a, b)| (a, Value::String(b))).collect())
        })
        .collect();
    json!({"steps": w.steps(), "slices": slices})
}

fn lift_json(v: &LiftVerdict) -> Value {
    json!({
        "holds": v.holds,
        "stepwise": v.stepwise,
        "states": v.states,
        "counterexample": v.counterexample.as_ref().map(|c| json!({
            "start": Value::Object(c.start.named_assignment().into_iter().map(|(a, b)| (a, Value::String(b))).collect()),
            "homotopy": homotopy_json(&c.homotopy),
        })),
    })
}

fn load_map(path: &Path, inputs: &mut Vec<Input>, warnings: &mut Vec<String>) -> Result<LoadedMap, UsageError> {
    let m = parse_map_file(path).map_err(|e| UsageError(e.into()))?;
    inputs.push(digest(path).map_err(UsageError)?);
    for r in &m.referenced {
        inputs.push(digest(r).map_err(UsageError)?);
    }
    warnings.extend(m.domain.warnings.iter().cloned());
    warnings.extend(m.codomain.warnings.iter().cloned());
    Ok(m)
}

fn catalog(names: &Option<Vec<String>>) -> Result<Vec<(String, Arc<Space>)>, UsageError> {
    match names {
        None => Ok(default_catalog()),
        Some(n) => catalog_by_names(n).map_err(|e| UsageError(e.into())),
    }
}

fn lift_over_catalog(
    map: &SpaceMap,
    cat: &[(String, Arc<Space>)],
    enum_cap: u128,
    extension: bool,
    text: &mut Vec<String>,
) -> Result<(bool, Value), UsageError> {
    let mut all = true;
    let mut per = serde_json::Map::new();
    for (name, z) in cat {
        let v = if extension {
            has_phep_with_caps(map, z, enum_cap, DEFAULT_STATE_CAP)
        } else {
            has_phlp_with_caps(map, z, enum_cap, DEFAULT_STATE_CAP)
        }
        .map_err(|e| UsageError(e.into()))?;
        all &= v.holds;
        text.push(format!("  {name}: {}", if v.holds { "holds" } else { "fails" }));
        if let Some(c) = &v.counterexample {
            text.push(format!("    start {:?}, homotopy of length {}", c.start, c.homotopy.steps()));
        }
        per.insert(name.clone(), lift_json(&v));
    }
    let label = format!("relative to catalog {{{}}}", cat.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(", "));
    Ok((all, json!({"label": label, "per_space": per})))
}

fn execute(cli: &Cli) -> Result<Report, UsageError> {
    let mut inputs = Vec::new();
    let mut warnings = Vec::new();
    let mut text = Vec::new();
    let enum_cap = cli.cap.map_or(DEFAULT_ENUMERATION_CAP, u128::from);
    let (holds, result) = match &cli.command {
        Command::CheckAxioms { space } => {
            let loaded = parse_space_file(space).map_err(|e| UsageError(e.into()))?;
            inputs.push(digest(space).map_err(UsageError)?);
            warnings.extend(loaded.warnings.iter().cloned());
            let cap = cli.cap.map_or(DEFAULT_CAP, |c| c as usize);
            let r = check_axioms_with_cap(&loaded.space, cap).map_err(|e| UsageError(e.into()))?;
            text.push(format!("{} points: {}", loaded.space.len(), r.classification.label()));
            axioms_text(&loaded.space, &r, &mut text);
            let mut holds = r.all_hold();
            let mut result = json!({"points": loaded.space.len(), "spatial": axioms_json(&loaded.space, &r)});
            if let Some(table) = &loaded.table {
                let dspace = descriptive_space(loaded.space.points().iter().cloned(), table)
                    .map_err(|e| UsageError(e.into()))?;
                let d = check_descriptive_axioms_with_cap(&dspace, table, cap).map_err(|e| UsageError(e.into()))?;
                text.push(format!("descriptive: {}", d.classification.label()));
                axioms_text(&dspace, &d, &mut text);
                holds &= d.all_hold();
                result["descriptive"] = axioms_json(&dspace, &d);
            }
            (holds, result)
        }
        Command::CheckMap { map } => {
            let m = load_map(map, &mut inputs, &mut warnings)?;
            let pc = is_pc_map(&m.map);
            let iso = is_isomorphism(&m.map);
            text.push(format!("pc-map: {}", if pc.holds { "yes" } else { "no" }));
            if let Some(c) = &pc.counterexample {
                text.push(format!("  {c}"));
            }
            text.push(format!("isomorphism: {}", if iso.holds { "yes" } else { "no" }));
            let result = json!({
                "pc": pc.holds,
                "pc_counterexample": pc.counterexample.as_ref().map(|c| c.to_string()),
                "isomorphism": iso.holds,
                "isomorphism_counterexample": iso.counterexample.as_ref().map(|c| c.to_string()),
            });
            (pc.holds, result)
        }
        Command::CheckHomotopy { from, to, interval_n } => {
            let f = load_map(from, &mut inputs, &mut warnings)?;
            let g = load_map(to, &mut inputs, &mut warnings)?;
            let cap = cli.cap.map_or(DEFAULT_VISIT_CAP, |c| c as usize);
            let w = homotopic_with_cap(&f.map, &g.map, cap).map_err(|e| UsageError(e.into()))?;
            let w = match (w, interval_n) {
                (Some(w), Some(n)) if w.steps() > *n => {
                    text.push(format!("shortest homotopy needs {} steps, more than {n}", w.steps()));
                    None
                }
                (Some(w), Some(n)) => Some(w.padded(*n)),
                (w, _) => w,
            };
            match &w {
                Some(w) => {
                    text.push(format!("homotopic in {} steps", w.steps()));
                    for t in 0..=w.steps() {
                        text.push(format!("  t={t}: {:?}", w.slice(t)));
                    }
                }
                None => text.push("not homotopic".into()),
            }
            (w.is_some(), json!({"witness": w.as_ref().map(homotopy_json)}))
        }
        Command::CheckCovering { files } => {
            let (map_path, spaces) = files.split_last().expect("clap requires one file");
            let m = load_map(map_path, &mut inputs, &mut warnings)?;
            for s in spaces {
                let loaded = parse_space_file(s).map_err(|e| UsageError(e.into()))?;
                if loaded.space != **m.map.domain() && loaded.space != **m.map.codomain() {
                    return Err(UsageError(anyhow::anyhow!("{} matches neither end of the map", s.display())));
                }
                inputs.push(digest(s).map_err(UsageError)?);
            }
            let cap = cli.cap.unwrap_or(DEFAULT_SEARCH_CAP);
            let out = is_covering_map_with_cap(&m.map, cap);
            let (up, down) = (m.map.domain(), m.map.codomain());
            match out {
                Ok(CoveringOutcome::Covering(cert)) => {
                    text.push("covering map".into());
                    let entries: Vec<Value> = cert
                        .entries
                        .iter()
                        .map(|e| {
                            let sheets: Vec<Vec<String>> = e.sheets.iter().map(|s| names(up, &s.points)).collect();
                            text.push(format!(
                                "  {}: Y' = {:?}, sheets {:?}",
                                down.name(e.base_point),
                                names(down, &e.neighborhood),
                                sheets
                            ));
                            json!({
                                "base_point": down.name(e.base_point),
                                "neighborhood": names(down, &e.neighborhood),
                                "sheets": e.sheets.iter().map(|s| json!({
                                    "fiber_point": up.name(s.fiber_point),
                                    "points": names(up, &s.points),
                                })).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    (true, json!({"certificate": entries}))
                }
                Ok(CoveringOutcome::Fails { base_point }) => {
                    text.push(format!("not a covering: no sheet decomposition over `{}`", down.name(base_point)));
                    (false, json!({"failing_base_point": down.name(base_point)}))
                }
                Err(e @ (proxcheck::Error::NotSurjective(_) | proxcheck::Error::NotPc)) => {
                    text.push(format!("not a covering: {e}"));
                    (false, json!({"precondition": e.to_string()}))
                }
                Err(e) => return Err(UsageError(e.into())),
            }
        }
        Command::CheckFibration { map, catalog: names } => {
            let m = load_map(map, &mut inputs, &mut warnings)?;
            let cat = catalog(names)?;
            let (holds, result) = lift_over_catalog(&m.map, &cat, enum_cap, false, &mut text)?;
            text.insert(0, format!("fibration {}: {}", result["label"].as_str().unwrap_or(""), if holds { "yes" } else { "no" }));
            (holds, result)
        }
        Command::CheckCofibration { map, catalog: names, interval_n } => {
            let m = load_map(map, &mut inputs, &mut warnings)?;
            let cat = catalog(names)?;
            let (holds, mut result) = lift_over_catalog(&m.map, &cat, enum_cap, true, &mut text)?;
            text.insert(0, format!("cofibration {}: {}", result["label"].as_str().unwrap_or(""), if holds { "yes" } else { "no" }));
            let cap = cli.cap.unwrap_or(DEFAULT_RETRACT_CAP);
            let r = retract_characterization_with_cap(&m.map, *interval_n, cap).map_err(|e| UsageError(e.into()))?;
            text.push(format!("retraction of X' × I_{interval_n}: {}", if r.holds { "exists" } else { "none" }));
            if r.holds != holds {
                text.push("  note: the retraction test and the extension property disagree".into());
            }
            result["retraction"] = json!({
                "interval_n": interval_n,
                "exists": r.holds,
                "map": r.retraction.as_ref().map(|k| Value::Object(
                    k.named_assignment().into_iter().map(|(a, b)| (a, Value::String(b))).collect()
                )),
            });
            (holds, result)
        }
        Command::RunPaperSuite => {
            let r = run_example_suite();
            for c in &r.checks {
                text.push(format!("{} {}{}", if c.passed { "PASS" } else { "FAIL" }, c.name, if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) }));
            }
            for f in &r.findings {
                text.push(format!("FINDING {} ({}): {}", f.name, if f.reproduced { "reproduced" } else { "not reproduced" }, f.detail));
            }
            let passed = r.checks.iter().filter(|c| c.passed).count();
            text.push(format!("{passed}/{} checks passed", r.checks.len()));
            (r.passed(), serde_json::to_value(&r).expect("suite report serializes"))
        }
    };
    let mut seen = std::collections::BTreeSet::new();
    inputs.retain(|i| seen.insert(i.path.clone()));
    let command = std::env::args().skip(1).collect();
    Ok(Report { command, inputs, holds, warnings, result, text })
}

fn emit(cli: &Cli, report: &Report) -> anyhow::Result<()> {
    let json = serde_json::to_string_pretty(report)?;
    if let Some(path) = &cli.report {
        std::fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut out = std::io::stdout().lock();
    let written = match cli.format {
        Format::Json => writeln!(out, "{json}"),
        Format::Text => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            report
                .text
                .iter()
                .try_for_each(|line| writeln!(out, "{line}"))
                .and_then(|()| writeln!(out, "{}", if report.holds { "HOLDS" } else { "FAILS" }))
        }
    };
    match written {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if report.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
