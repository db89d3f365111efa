use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use cohom::catalog_scan::{lookup, scan, HType};
use cohom::diagram::{parse, validate};
use cohom::hitchin::identify_all;
use cohom::obstruct::{run_pipeline, Overall};
use cohom::topology::{invariants, invariants_from_slopes, Family};
use cohom::weyl::{weyl_group, DEFAULT_WEYL_CAP};

#[derive(Parser)]
#[command(name = "cohom", version, about = "Cohomogeneity one diagrams over S3xS3")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a diagram and report fiber dimensions, components and pi1.
    Validate {
        #[arg(long)]
        diagram: String,
    },
    /// Compute the Weyl group.
    Weyl {
        #[arg(long)]
        diagram: String,
    },
    /// Run the obstruction checks.
    Obstruct {
        #[arg(long)]
        diagram: String,
    },
    /// Cohomology from the Mayer-Vietoris matrices.
    Topology {
        #[arg(long, conflicts_with_all = ["family", "slopes"])]
        diagram: Option<String>,
        #[arg(long, requires = "slopes")]
        family: Option<Family>,
        /// p-,q-,p+,q+
        #[arg(long, value_parser = parse_slopes, allow_hyphen_values = true, requires = "family")]
        slopes: Option<[i64; 4]>,
    },
    /// Enumerate slope diagrams up to a bound and filter them.
    Scan {
        #[arg(long)]
        bound: i64,
        #[arg(long = "h-type")]
        h_type: HType,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Konishi slopes for H_k and their identification.
    Hitchin {
        #[arg(long)]
        k: i64,
    },
    /// Instantiate a catalog row.
    Lookup {
        name: String,
        /// Family parameter.
        #[arg(long, alias = "p")]
        k: Option<i64>,
    },
}

/// Outcome of a subcommand: text, JSON, and whether it counts as success.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn parse_slopes(s: &str) -> Result<[i64; 4], String> {
    let v: Vec<i64> = s.split(',').map(|x| x.trim().parse().map_err(|e| format!("{x:?}: {e}"))).collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<i64>| format!("expected 4 slopes, got {}", v.len()))
}

fn to_json<T: ?Sized + Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn run(cmd: Cmd) -> cohom::Result<Output> {
    Ok(match cmd {
        Cmd::Validate { diagram } => {
            let r = validate(&parse(&diagram)?)?;
            let text = format!(
                "l = ({},{})\ncomponents = ({},{})\npi1 = Z_{}\nH = {}\nHbar = {}\neffective = {:?}",
                r.l_minus, r.l_plus, r.components_kminus, r.components_kplus, r.pi1_order, r.h_structure, r.hbar,
                r.effective_group
            );
            Output { text, json: to_json(&r), ok: true }
        }
        Cmd::Weyl { diagram } => {
            let w = weyl_group(&parse(&diagram)?, DEFAULT_WEYL_CAP)?;
            Output { text: w.weyl_type.clone(), json: to_json(&w), ok: true }
        }
        Cmd::Obstruct { diagram } => {
            let r = run_pipeline(&parse(&diagram)?);
            let mut lines: Vec<String> = r
                .verdicts
                .0
                .iter()
                .map(|(name, v)| format!("{name}: {}", serde_json::to_string(v).unwrap_or_default()))
                .collect();
            lines.push(match &r.overall {
                Overall::Survives => "survives".to_string(),
                Overall::Rejected { check, reason } => format!("rejected by {check}: {reason}"),
            });
            Output { text: lines.join("\n"), json: to_json(&r), ok: r.survives() }
        }
        Cmd::Topology { diagram, family, slopes } => {
            let inv = match (diagram, family, slopes) {
                (Some(d), _, _) => invariants(&parse(&d)?)?,
                (None, Some(f), Some(s)) => invariants_from_slopes(f, s)?,
                _ => return Err(cohom::Error::UnknownEntry("give --diagram or --family with --slopes".into())),
            };
            let mut lines = Vec::new();
            if let Some(pi3) = &inv.pi3 {
                lines.push(format!("pi3 = {pi3}"));
            }
            lines.push(format!("H2 = {}\nH3 = {}\nH4 = {}", inv.h2, inv.h3, inv.h4));
            let snf: Vec<String> = inv.snf.iter().map(|d| d.to_string()).collect();
            lines.push(format!("det = {}\nsnf = [{}]", inv.det, snf.join(", ")));
            if let Some(c) = &inv.caveat {
                lines.push(format!("caveat: {c}"));
            }
            Output { text: lines.join("\n"), json: to_json(&inv), ok: true }
        }
        Cmd::Scan { bound, h_type, jobs } => {
            let r = scan(bound, h_type, jobs)?;
            let mut lines = vec![format!("{} candidates, {} survivors", r.candidates_tested, r.survivors.len())];
            lines.extend(r.survivors.iter().map(|s| format!("  {:<8} {}", s.label, s.diagram)));
            lines.push("rejections:".into());
            lines.extend(r.rejection_counts.iter().map(|(c, n)| format!("  {c}: {n}")));
            let ok = r.unmatched().next().is_none();
            Output { text: lines.join("\n"), json: to_json(&r), ok }
        }
        Cmd::Hitchin { k } => {
            let (slopes, ids) = identify_all(k)?;
            let mut lines = vec![
                format!("selfdual     {:?}", slopes.selfdual),
                format!("antiselfdual {:?}", slopes.antiselfdual),
            ];
            let mut idents = Vec::new();
            for (bundle, id) in ids {
                match id {
                    Ok(id) => {
                        lines.push(format!("{bundle}: {} ({})", id.family, id.cover_note));
                        idents.push(to_json(&id));
                    }
                    Err(e) => {
                        lines.push(format!("{bundle}: {e}"));
                        idents.push(json!({"bundle": bundle.to_string(), "error": e.to_string()}));
                    }
                }
            }
            let json = json!({
                "k": k,
                "selfdual": slopes.selfdual,
                "antiselfdual": slopes.antiselfdual,
                "identifications": idents,
            });
            Output { text: lines.join("\n"), json, ok: true }
        }
        Cmd::Lookup { name, k } => {
            let e = lookup(&name, k)?;
            let mut text = format!(
                "{}\n{}\nl = ({},{})\nW = {}\nHbar = {}",
                e.label(),
                e.diagram_text,
                e.expected.l_minus,
                e.expected.l_plus,
                e.expected.weyl_type,
                e.expected.hbar
            );
            if let Some(n) = &e.note {
                text.push_str(&format!("\nnote: {n}"));
            }
            Output { text, json: to_json(&e), ok: true }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli.cmd) {
        Ok(out) => {
            // A closed pipe is not an error worth reporting.
            let _ = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("json values print"))
            } else {
                writeln!(stdout, "{}", out.text)
            };
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(stdout, "{}", json!({"error": e.to_string()}));
            }
            eprintln!("error: {e}");
            // Malformed input is a usage error; a well-formed diagram that
            // fails validation is not.
            match e {
                cohom::Error::Parse { .. } | cohom::Error::UnknownEntry(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
