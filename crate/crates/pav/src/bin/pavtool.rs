//! Thin command-line front end over the pav library.
//!
//! Exit codes: 0 success (for `validate`: no errors, warnings allowed),
//! 1 usage or parse failure, 2 lint errors present. Data goes to standard
//! output or `--out`; diagnostics go to standard error. Setting
//! `PAVTOOL_NO_COLOR` disables ANSI coloring of diagnostics.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use pav::infer::InferenceProfile;
use pav::lint::{self, Severity};
use pav::model::{Dataset, Term};
use pav::query::{self};
use pav::unroll::{self, Family};
use pav::vocab::Registry;
use pav::{dot, infer, ns, turtle};

#[derive(Parser)]
#[command(
    name = "pavtool",
    version,
    about = "Parse, validate, infer over and query PAV provenance metadata",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Turtle,
    TriG,
    NQuads,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "turtle" | "ttl" => Ok(Format::Turtle),
            "trig" => Ok(Format::TriG),
            "nquads" | "nq" => Ok(Format::NQuads),
            other => Err(format!(
                "unknown format {other:?} (expected turtle, trig or nquads)"
            )),
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Input file (.ttl, .trig or .nq)
    input: PathBuf,
    /// Input format override; default is chosen by file extension
    #[arg(long)]
    format: Option<Format>,
    /// Base IRI for resolving relative IRIs
    #[arg(long)]
    base: Option<String>,
}

#[derive(Args)]
struct OutputArg {
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and reserialize it
    Parse {
        #[command(flatten)]
        input: InputArgs,
        /// Pretty Turtle output (named graphs are unioned) instead of N-Quads
        #[arg(long)]
        turtle: bool,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Check PAV usage conventions (rules L1-L9)
    Validate {
        #[command(flatten)]
        input: InputArgs,
        /// Emit findings as a JSON array
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Materialize implied statements as N-Quads
    Infer {
        #[command(flatten)]
        input: InputArgs,
        /// Rule families: all, prov, dcterms or pav
        #[arg(long, default_value = "all")]
        profile: String,
        /// Emit only the inferred triples, not the input
        #[arg(long)]
        only_inferred: bool,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Expand flat PAV statements into PROV-O activity chains
    Unroll {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated families: import,retrieval,source-access
        #[arg(long, default_value = "import,retrieval,source-access")]
        families: String,
        /// Pretty Turtle output instead of N-Quads
        #[arg(long)]
        turtle: bool,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Run a basic graph pattern query; results as TSV
    Query {
        #[command(flatten)]
        input: InputArgs,
        /// File with one "subject predicate object" pattern per line
        #[arg(long)]
        patterns: PathBuf,
        /// Projected variables, e.g. ?api,?when,?agent (default: all)
        #[arg(long)]
        select: Option<String>,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Walk the pav:previousVersion lineage of a resource
    Lineage {
        #[command(flatten)]
        input: InputArgs,
        /// Resource IRI to start from
        #[arg(long)]
        resource: String,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Role-grouped attribution report for a resource
    Report {
        #[command(flatten)]
        input: InputArgs,
        /// Resource IRI to report on
        #[arg(long)]
        resource: String,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Write the SKOS mapping of PAV terms to DC Terms as Turtle
    SkosExport {
        #[command(flatten)]
        output: OutputArg,
    },
    /// Write the PAV term hierarchy as Turtle
    OntologyExport {
        #[command(flatten)]
        output: OutputArg,
    },
    /// Render the union graph as a Graphviz DOT diagram
    Dot {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArg,
    },
}

fn color_enabled() -> bool {
    std::env::var_os("PAVTOOL_NO_COLOR").is_none()
}

fn paint_severity(severity: Severity) -> String {
    if !color_enabled() {
        return severity.to_string();
    }
    let code = match severity {
        Severity::Error => "31",
        Severity::Warning => "33",
        Severity::Info => "36",
    };
    format!("\x1b[{code}m{severity}\x1b[0m")
}

fn fail(message: impl AsRef<str>) -> String {
    if color_enabled() {
        format!("\x1b[31merror\x1b[0m: {}", message.as_ref())
    } else {
        format!("error: {}", message.as_ref())
    }
}

fn load_dataset(args: &InputArgs) -> Result<Dataset, String> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| format!("cannot read {}: {e}", args.input.display()))?;
    let format = args.format.unwrap_or_else(|| detect_format(&args.input));
    let base = args.base.as_deref();
    let parsed = match format {
        Format::Turtle => turtle::parse_turtle(&text, base),
        Format::TriG => turtle::parse_trig(&text, base),
        Format::NQuads => turtle::parse_nquads(&text),
    }
    .map_err(|e| format!("{}:{e}", args.input.display()))?;
    for warning in &parsed.warnings {
        eprintln!("{}:{warning}", args.input.display());
    }
    Ok(parsed.dataset)
}

fn detect_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("trig") => Format::TriG,
        Some("nq") | Some("nt") => Format::NQuads,
        _ => Format::Turtle,
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_resource(iri: &str) -> Result<Term, String> {
    Term::iri(iri.trim_start_matches('<').trim_end_matches('>'))
        .map_err(|e| e.to_string())
}

fn output_prefixes(ds: &Dataset) -> BTreeMap<String, String> {
    let mut prefixes = ns::well_known_prefixes();
    for (p, n) in ds.prefixes() {
        prefixes.insert(p.clone(), n.clone());
    }
    prefixes
}

fn run(cli: Cli) -> Result<u8, String> {
    let registry = Registry::new();
    match cli.command {
        Command::Parse {
            input,
            turtle: pretty,
            output,
        } => {
            let ds = load_dataset(&input)?;
            let content = if pretty {
                let union = ds.union_default();
                turtle::serialize_turtle(&union, &output_prefixes(&union))
            } else {
                turtle::serialize_nquads(&ds)
            };
            write_output(&output.out, &content)?;
            Ok(0)
        }
        Command::Validate {
            input,
            json,
            output,
        } => {
            let ds = load_dataset(&input)?;
            let findings = lint::validate(&ds, &registry);
            let content = if json {
                let mut text = serde_json::to_string_pretty(&lint::findings_to_json(&findings))
                    .expect("findings serialize");
                text.push('\n');
                text
            } else {
                let mut text = String::new();
                for finding in &findings {
                    text.push_str(&format!(
                        "{} {}: {}{}: {}\n",
                        finding.rule,
                        paint_severity(finding.severity),
                        finding.subject,
                        finding
                            .predicate
                            .as_ref()
                            .map(|p| format!(" {p}"))
                            .unwrap_or_default(),
                        finding.message
                    ));
                }
                if findings.is_empty() {
                    text.push_str("no findings\n");
                }
                text
            };
            write_output(&output.out, &content)?;
            let has_errors = findings.iter().any(|f| f.severity == Severity::Error);
            Ok(if has_errors { 2 } else { 0 })
        }
        Command::Infer {
            input,
            profile,
            only_inferred,
            output,
        } => {
            let ds = load_dataset(&input)?;
            let profile = InferenceProfile::from_name(&profile).map_err(|e| e.to_string())?;
            let result = infer::infer(&ds, &registry, profile).map_err(|e| e.to_string())?;
            let graph = if only_inferred {
                result.inferred_only()
            } else {
                result.graph
            };
            write_output(&output.out, &turtle::serialize_nquads(&graph))?;
            Ok(0)
        }
        Command::Unroll {
            input,
            families,
            turtle: pretty,
            output,
        } => {
            let ds = load_dataset(&input)?;
            let families = families
                .split(',')
                .map(|f| Family::from_str(f.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let templates = unroll::templates_for(&families);
            let unrolled = unroll::unroll(&ds, &templates);
            for finding in unroll::ambiguity_report(&ds, &templates) {
                eprintln!("{} {}: {}: {}", finding.rule, paint_severity(finding.severity), finding.subject, finding.message);
            }
            let content = if pretty {
                turtle::serialize_turtle(&unrolled, &output_prefixes(&unrolled))
            } else {
                turtle::serialize_nquads(&unrolled)
            };
            write_output(&output.out, &content)?;
            Ok(0)
        }
        Command::Query {
            input,
            patterns,
            select,
            output,
        } => {
            let ds = load_dataset(&input)?;
            let text = fs::read_to_string(&patterns)
                .map_err(|e| format!("cannot read {}: {e}", patterns.display()))?;
            let parsed = query::parse_patterns(&text, ds.prefixes()).map_err(|e| e.to_string())?;
            let projected: Vec<String> = select
                .map(|s| {
                    s.split(',')
                        .map(|v| v.trim().trim_start_matches('?').to_string())
                        .filter(|v| !v.is_empty())
                        .collect()
                })
                .unwrap_or_default();
            let union = ds.union_default();
            let rows = query::select(&union, &parsed, &projected).map_err(|e| e.to_string())?;
            let header: Vec<String> = if projected.is_empty() {
                rows.first()
                    .map(|r| r.keys().cloned().collect())
                    .unwrap_or_default()
            } else {
                projected.clone()
            };
            let mut content = String::new();
            content.push_str(&header.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join("\t"));
            content.push('\n');
            for row in &rows {
                let cells: Vec<String> = header
                    .iter()
                    .map(|v| row.get(v).map(Term::to_string).unwrap_or_default())
                    .collect();
                content.push_str(&cells.join("\t"));
                content.push('\n');
            }
            write_output(&output.out, &content)?;
            Ok(0)
        }
        Command::Lineage {
            input,
            resource,
            output,
        } => {
            let ds = load_dataset(&input)?;
            let resource = parse_resource(&resource)?;
            match query::version_chain(&ds, &resource) {
                Ok(chain) => {
                    let mut content = String::from("resource\tversion\n");
                    for (term, version) in chain {
                        content.push_str(&format!("{term}\t{}\n", version.unwrap_or_default()));
                    }
                    write_output(&output.out, &content)?;
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("{}", fail(e.to_string()));
                    Ok(2)
                }
            }
        }
        Command::Report {
            input,
            resource,
            json,
            output,
        } => {
            let ds = load_dataset(&input)?;
            let resource = parse_resource(&resource)?;
            let report = query::attribution_report(&ds, &resource);
            let content = if json {
                let mut text = serde_json::to_string_pretty(&report.to_json())
                    .expect("report serializes");
                text.push('\n');
                text
            } else {
                let mut text = format!("resource: {}\n", report.resource);
                for role in query::Role::all() {
                    let attribution = report.role(role);
                    if attribution.agents.is_empty() && attribution.timestamps.is_empty() {
                        continue;
                    }
                    let agents: Vec<String> =
                        attribution.agents.iter().map(Term::to_string).collect();
                    text.push_str(&format!("{}: {}\n", role.label(), agents.join(", ")));
                    if !attribution.timestamps.is_empty() {
                        let stamps: Vec<String> =
                            attribution.timestamps.iter().map(Term::to_string).collect();
                        text.push_str(&format!("  on: {}\n", stamps.join(", ")));
                    }
                }
                text
            };
            write_output(&output.out, &content)?;
            Ok(0)
        }
        Command::SkosExport { output } => {
            let graph = registry.export_skos_mapping();
            write_output(&output.out, &turtle::serialize_turtle(&graph, graph.prefixes()))?;
            Ok(0)
        }
        Command::OntologyExport { output } => {
            let graph = registry.export_ontology();
            write_output(&output.out, &turtle::serialize_turtle(&graph, graph.prefixes()))?;
            Ok(0)
        }
        Command::Dot { input, output } => {
            let ds = load_dataset(&input)?;
            write_output(&output.out, &dot::to_dot(&ds, &registry))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version on stdout with status 0
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("{}", fail(message));
            ExitCode::from(1)
        }
    }
}
