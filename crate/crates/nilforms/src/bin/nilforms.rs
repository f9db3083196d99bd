//! Command-line interface: validation, cohomology tables, harmonic bases,
//! metric-condition checks, pluriclosed obstructions, Massey certificates
//! and their replay, and the formality test.
//!
//! Exit codes report only computational success (0) or input errors (2);
//! mathematical outcomes live in the report.

use clap::{Args, Parser, Subcommand};
use nilforms::cohomology::{self, Kind};
use nilforms::conditions;
use nilforms::formality;
use nilforms::massey::{self, BCClass, MasseyCertificate};
use nilforms::metric::{HermitianMetric, MetricContext};
use nilforms::parse;
use nilforms::report::{self, InputEcho, Report, TaskResult};
use nilforms::structure::StructurePresentation;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nilforms", version, about = "Exact invariant-form calculus on nilmanifolds with complex structure", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Structure-equation file (see README for the grammar).
    #[arg(long, conflicts_with = "catalog")]
    input: Option<String>,
    /// Built-in catalog entry name.
    #[arg(long)]
    catalog: Option<String>,
    /// Catalog parameter assignment k=v; repeatable, comma-separable.
    #[arg(long = "param")]
    params: Vec<String>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the structure equations (d²=0, integrability, filtration).
    Check {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Cohomology dimension tables.
    Cohomology {
        #[command(flatten)]
        input: InputArgs,
        /// derham | dolbeault | bottchern | aeppli | all
        #[arg(long, default_value = "all")]
        kind: String,
    },
    /// Harmonic bases for a metric.
    Harmonic {
        #[command(flatten)]
        input: InputArgs,
        /// dolbeault | bottchern | aeppli
        #[arg(long)]
        kind: String,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        /// id | diag(...) | matrix [...]
        #[arg(long, default_value = "id")]
        metric: String,
    },
    /// Special-metric conditions.
    MetricCheck {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated: kahler, balanced, skt, astheno, gauduchon, k-gauduchon(k)
        #[arg(long)]
        conditions: String,
        #[arg(long, default_value = "id")]
        metric: String,
    },
    /// p-pluriclosed obstruction from a probe form.
    Obstruct {
        #[command(flatten)]
        input: InputArgs,
        /// The probe (2n-2p-2)-form, in the form syntax.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        p: usize,
    },
    /// Triple Aeppli-Bott-Chern-Massey product with certificate.
    Massey {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value = "id")]
        metric: String,
    },
    /// Replay a Massey certificate.
    Verify {
        /// Path to the certificate JSON.
        certificate: String,
        #[arg(long)]
        json: Option<String>,
    },
    /// Geometric Bott-Chern formality of a metric.
    Formal {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "id")]
        metric: String,
    },
    /// List or show catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

struct LoadedInput {
    pres: StructurePresentation,
    file_metric: Option<HermitianMetric>,
    echo_source: String,
    echo_params: Vec<(String, String)>,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn split_params(raw: &[String]) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for chunk in raw {
        for piece in chunk.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (k, v) = piece
                .split_once('=')
                .ok_or_else(|| format!("bad parameter `{piece}`, expected k=v"))?;
            out.push((k.trim().to_string(), v.trim().to_string()));
        }
    }
    Ok(out)
}

fn load_input(args: &InputArgs) -> Result<LoadedInput, String> {
    match (&args.input, &args.catalog) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            let parsed = parse::parse_structure_text(&text).map_err(|e| e.to_string())?;
            Ok(LoadedInput {
                pres: parsed.presentation,
                file_metric: parsed.metric,
                echo_source: format!("file:{path}"),
                echo_params: Vec::new(),
            })
        }
        (None, Some(name)) => {
            let params = split_params(&args.params)?;
            let refs: Vec<(&str, &str)> =
                params.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
            let pres = nilforms::catalog::build(name, &refs).map_err(|e| e.to_string())?;
            let mut echo = params.clone();
            echo.sort();
            Ok(LoadedInput {
                pres,
                file_metric: None,
                echo_source: format!("catalog:{name}"),
                echo_params: echo,
            })
        }
        _ => Err("exactly one of --input FILE or --catalog NAME is required".to_string()),
    }
}

fn make_echo(li: &LoadedInput, metric: Option<&HermitianMetric>) -> InputEcho {
    InputEcho {
        source: li.echo_source.clone(),
        params: li.echo_params.clone(),
        dim: li.pres.dim(),
        structure: li.pres.to_structure_lines(),
        metric: metric.map(|h| {
            h.rows()
                .iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect())
                .collect()
        }),
    }
}

fn resolve_metric(li: &LoadedInput, spec: &str) -> Result<HermitianMetric, String> {
    if spec == "id" {
        if let Some(h) = &li.file_metric {
            return Ok(h.clone());
        }
    }
    parse::parse_metric(li.pres.dim(), spec).map_err(|e| e.to_string())
}

fn emit(report: &Report, json_path: &Option<String>, human: &str) -> Result<(), String> {
    print!("{human}");
    if let Some(path) = json_path {
        std::fs::write(path, report.to_json()).map_err(|e| format!("{path}: {e}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => fail(msg),
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Check { input } => {
            let li = load_input(&input)?;
            let v = li.pres.validate();
            let mut report = Report::new(make_echo(&li, None));
            report.results.push(report::validation_result(&v));
            let human = format!(
                "check {}\n  jacobi_ok: {}\n  integrable: {}\n  salamon_filtration_ok: {}\n  nilpotent: {}\n",
                li.echo_source, v.jacobi_ok, v.integrable, v.salamon_filtration_ok, v.nilpotent
            );
            emit(&report, &input.json, &human)
        }
        Command::Cohomology { input, kind } => {
            let li = load_input(&input)?;
            let kinds: Vec<Kind> = if kind == "all" {
                if li.pres.is_integrable() {
                    vec![Kind::DeRham, Kind::Dolbeault, Kind::BottChern, Kind::Aeppli]
                } else {
                    vec![Kind::DeRham]
                }
            } else {
                vec![Kind::parse(&kind).ok_or_else(|| format!("unknown kind `{kind}`"))?]
            };
            let mut report = Report::new(make_echo(&li, None));
            let mut human = String::new();
            for k in kinds {
                let table = cohomology::cohomology_dims(&li.pres, k).map_err(|e| e.to_string())?;
                human.push_str(&format!("{} (invariant):\n", k.name()));
                for (&(p, q), &d) in &table.dims {
                    if k == Kind::DeRham {
                        human.push_str(&format!("  h^{p} = {d}\n"));
                    } else {
                        human.push_str(&format!("  h^{{{p},{q}}} = {d}\n"));
                    }
                }
                report.results.push(report::cohomology_result(&table));
            }
            emit(&report, &input.json, &human)
        }
        Command::Harmonic { input, kind, p, q, metric } => {
            let li = load_input(&input)?;
            let k = Kind::parse(&kind)
                .filter(|k| *k != Kind::DeRham)
                .ok_or_else(|| format!("unknown harmonic kind `{kind}`"))?;
            let h = resolve_metric(&li, &metric)?;
            let ctx = MetricContext::new(&li.pres, h.clone()).map_err(|e| e.to_string())?;
            let n = li.pres.dim();
            let bidegrees: Vec<(usize, usize)> = match (p, q) {
                (Some(p), Some(q)) => vec![(p, q)],
                (None, None) => (0..=n).flat_map(|p| (0..=n).map(move |q| (p, q))).collect(),
                _ => return Err("--p and --q must be given together".to_string()),
            };
            let mut report = Report::new(make_echo(&li, Some(&h)));
            let mut human = String::new();
            for (p, q) in bidegrees {
                let basis =
                    cohomology::harmonic_basis(&ctx, k, p, q).map_err(|e| e.to_string())?;
                human.push_str(&format!(
                    "{} harmonic ({p},{q}) (invariant): dimension {}\n",
                    k.name(),
                    basis.basis.len()
                ));
                for f in &basis.basis {
                    human.push_str(&format!("  {f}\n"));
                }
                report.results.push(TaskResult::Harmonic {
                    kind: k.name().to_string(),
                    p,
                    q,
                    dimension: basis.basis.len(),
                    basis: basis.basis.iter().map(|f| f.to_string()).collect(),
                });
            }
            emit(&report, &input.json, &human)
        }
        Command::MetricCheck { input, conditions, metric } => {
            let li = load_input(&input)?;
            let h = resolve_metric(&li, &metric)?;
            let ctx = MetricContext::new(&li.pres, h.clone()).map_err(|e| e.to_string())?;
            let n = li.pres.dim();
            let mut reports = Vec::new();
            for cond in conditions.split(',') {
                let cond = cond.trim();
                let r = match cond {
                    "kahler" => conditions::check_kahler(&ctx),
                    "balanced" => conditions::check_balanced(&ctx),
                    "skt" => conditions::check_k_gauduchon(&ctx, 1),
                    "astheno" => {
                        if n < 3 {
                            return Err("astheno needs complex dimension >= 3".to_string());
                        }
                        conditions::check_k_gauduchon(&ctx, n - 2)
                    }
                    "gauduchon" => conditions::check_k_gauduchon(&ctx, n - 1),
                    other => {
                        let k = other
                            .strip_prefix("k-gauduchon(")
                            .and_then(|t| t.strip_suffix(')'))
                            .and_then(|t| t.parse::<usize>().ok())
                            .ok_or_else(|| format!("unknown condition `{other}`"))?;
                        conditions::check_k_gauduchon(&ctx, k)
                    }
                }
                .map_err(|e| e.to_string())?;
                reports.push(r);
            }
            let mut report = Report::new(make_echo(&li, Some(&h)));
            report.results.push(report::conditions_result(&reports));
            let mut human = String::new();
            for r in &reports {
                human.push_str(&format!(
                    "{}: {}\n",
                    r.condition,
                    if r.holds { "holds" } else { "fails" }
                ));
            }
            emit(&report, &input.json, &human)
        }
        Command::Obstruct { input, alpha, p } => {
            let li = load_input(&input)?;
            let n = li.pres.dim();
            let alpha_form = parse::parse_form(n, &alpha).map_err(|e| e.to_string())?;
            let o = conditions::pluriclosed_obstruction(&li.pres, &alpha_form, p)
                .map_err(|e| e.to_string())?;
            let mut report = Report::new(make_echo(&li, None));
            report.results.push(report::obstruction_result(p, &alpha_form, &o));
            let human = match &o {
                conditions::Obstruction::Obstructed { terms, .. } => {
                    let mut s = format!("p-pluriclosed-obstruction({p}): obstructed\n");
                    for (m, c, lambda) in terms {
                        s.push_str(&format!("  psi = {m}: c = {c} (ratio {lambda})\n"));
                    }
                    s
                }
                conditions::Obstruction::Inconclusive { reason, .. } => {
                    format!("p-pluriclosed-obstruction({p}): inconclusive ({reason})\n")
                }
            };
            emit(&report, &input.json, &human)
        }
        Command::Massey { input, a, b, c, metric } => {
            let li = load_input(&input)?;
            let n = li.pres.dim();
            let h = resolve_metric(&li, &metric)?;
            let ctx = MetricContext::new(&li.pres, h.clone()).map_err(|e| e.to_string())?;
            let pa = parse::parse_form(n, &a).map_err(|e| e.to_string())?;
            let pb = parse::parse_form(n, &b).map_err(|e| e.to_string())?;
            let pc = parse::parse_form(n, &c).map_err(|e| e.to_string())?;
            let ca = BCClass::new(&li.pres, pa).map_err(|e| format!("--a: {e}"))?;
            let cb = BCClass::new(&li.pres, pb).map_err(|e| format!("--b: {e}"))?;
            let cc = BCClass::new(&li.pres, pc).map_err(|e| format!("--c: {e}"))?;
            let cert = massey::triple_abc(&ctx, &ca, &cb, &cc).map_err(|e| e.to_string())?;
            let human = format!("massey verdict: {}\n", cert.verdict);
            print!("{human}");
            // The JSON artifact of a massey run is the replayable certificate.
            if let Some(path) = &input.json {
                let mut text = serde_json::to_string_pretty(&cert)
                    .map_err(|e| format!("serialize: {e}"))?;
                text.push('\n');
                std::fs::write(path, text).map_err(|e| format!("{path}: {e}"))?;
            }
            Ok(())
        }
        Command::Verify { certificate, json } => {
            let text =
                std::fs::read_to_string(&certificate).map_err(|e| format!("{certificate}: {e}"))?;
            let cert: MasseyCertificate = parse_certificate(&text)?;
            let outcome = massey::verify_certificate(&cert);
            let mut report = Report::new(InputEcho {
                source: format!("file:{certificate}"),
                params: Vec::new(),
                dim: 0,
                structure: cert.structure.clone(),
                metric: Some(cert.metric.clone()),
            });
            report.results.push(TaskResult::Verify {
                valid: outcome.valid,
                failures: outcome.failures.clone(),
            });
            let mut human = format!(
                "certificate: {}\n",
                if outcome.valid { "valid" } else { "invalid" }
            );
            for f in &outcome.failures {
                human.push_str(&format!("  {f}\n"));
            }
            emit(&report, &json, &human)
        }
        Command::Formal { input, metric } => {
            let li = load_input(&input)?;
            let h = resolve_metric(&li, &metric)?;
            let ctx = MetricContext::new(&li.pres, h.clone()).map_err(|e| e.to_string())?;
            let r = formality::is_geometrically_bc_formal(&ctx).map_err(|e| e.to_string())?;
            let mut report = Report::new(make_echo(&li, Some(&h)));
            report.results.push(report::formality_result(&r));
            let human = if r.formal {
                format!(
                    "geometrically-Bott-Chern-formal: yes ({} pairs checked)\n",
                    r.checked_pairs
                )
            } else {
                "geometrically-Bott-Chern-formal: no\n".to_string()
            };
            emit(&report, &input.json, &human)
        }
        Command::Catalog { action } => {
            match action {
                CatalogAction::List => {
                    for e in nilforms::catalog::entries() {
                        println!("{}: {}", e.name, e.dim_doc);
                    }
                }
                CatalogAction::Show { name } => {
                    let e = nilforms::catalog::entry(&name)
                        .ok_or_else(|| format!("unknown catalog entry `{name}`"))?;
                    println!("{}: {}", e.name, e.dim_doc);
                    println!("{}", e.doc);
                    println!("parameters:");
                    for p in e.params {
                        println!("  {} (default {}): {}", p.name, p.default, p.doc);
                    }
                    let pres =
                        nilforms::catalog::build_with_defaults(&name).map_err(|e| e.to_string())?;
                    println!("structure equations at defaults:");
                    for line in pres.to_structure_lines() {
                        println!("  {line}");
                    }
                }
            }
            Ok(())
        }
    }
}

fn parse_certificate(text: &str) -> Result<MasseyCertificate, String> {
    if let Ok(cert) = serde_json::from_str::<MasseyCertificate>(text) {
        return Ok(cert);
    }
    // Also accept a full report with an embedded certificate.
    match serde_json::from_str::<Report>(text) {
        Ok(report) => report
            .certificate
            .ok_or_else(|| "report contains no certificate".to_string()),
        Err(e) => Err(format!("certificate: {e}")),
    }
}
