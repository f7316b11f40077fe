//! `semiact`: batch verification of presentations and action pairs.

mod specs;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semiact::actionpair::*;
use semiact::fmonoid::{EnumConfig, FmError, DEFAULT_NODE_CAP};
use semiact::indalg::{all_subalgebras, suba_bundle, IaError};
use semiact::presentations::{build_catalog, CatalogFamily, CatalogParams, PresError};
use semiact::wreath::WreathError;
use serde_json::{json, Value};

use specs::Ambient;

/// Environment variable overriding the enumeration node budget.
const NODE_CAP_ENV: &str = "ACTIONPAIR_NODE_CAP";
const SCHEMA: &str = "v1";

#[derive(Parser, Debug)]
#[command(
    name = "semiact",
    version,
    about = "Verify monoid presentations and classify action pairs"
)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Nodes Todd–Coxeter may define (default from ACTIONPAIR_NODE_CAP or 5000000).
    #[arg(long, global = true)]
    node_cap: Option<usize>,
    /// Largest ambient table to enumerate.
    #[arg(long, default_value_t = 200_000, global = true)]
    table_cap: usize,
    /// Seed recorded in the report.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a catalogued presentation against the monoid it presents.
    VerifyPresentation(VerifyArgs),
    /// Classify a pair of subsemigroups of a finite ambient monoid.
    ClassifyPair(PairArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Family name, e.g. Gn, MwrPTn, SubA, LX_truncated.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Base monoid: trivial, c<k>, chain<k>, semilattice2 or a JSON table file.
    #[arg(long)]
    monoid: Option<String>,
    /// Independence algebra for SubA: fl93, set<n>, gf<p>^<d>, free_c<k>^<r> or a JSON file.
    #[arg(long)]
    instance: Option<String>,
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
    #[arg(long, default_value_t = 2)]
    max_len: usize,
    /// Include the relation list in the report.
    #[arg(long)]
    listing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PlusMode {
    /// `s⁺` is the identity on the domain of s.
    Dom,
    /// `s⁺ = 1` for every s.
    One,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Lemma {
    Om1,
    Om2,
    Om3,
    Om5,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// PT<n>, MwrPT<n>, or a JSON file with "table" and optional "plus".
    #[arg(long)]
    ambient: String,
    /// Base monoid for wreath ambients.
    #[arg(long = "M")]
    m: Option<String>,
    /// The subsemigroup U, e.g. E2, SingE, M0n, Mn.
    #[arg(long = "U")]
    u: String,
    /// The subsemigroup S, e.g. T2, Gn, MwrT.
    #[arg(long = "S")]
    s: String,
    #[arg(long, value_enum, default_value_t = PlusMode::Dom)]
    plus: PlusMode,
    /// Generating-set checks for the kernel of (u, s) ↦ us.
    #[arg(long, value_enum)]
    omega: Vec<Lemma>,
    /// Build the proper cover.
    #[arg(long)]
    cover: bool,
    /// Check the embedding of a proper pair.
    #[arg(long)]
    embed: bool,
}

#[derive(Debug)]
pub enum CliError {
    BadInput(String),
    Bound(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::BadInput(_) => 2,
            CliError::Bound(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::BadInput(m) => write!(f, "{m}"),
            CliError::Bound(m) => write!(f, "bound exceeded: {m}"),
        }
    }
}

impl From<FmError> for CliError {
    fn from(e: FmError) -> Self {
        match e {
            FmError::SizeBoundExceeded { .. } | FmError::BoundExceeded { .. } => {
                CliError::Bound(e.to_string())
            }
            e => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<PresError> for CliError {
    fn from(e: PresError) -> Self {
        match e {
            PresError::SizeBoundExceeded(_) => CliError::Bound(e.to_string()),
            PresError::Engine(e) => e.into(),
            PresError::Pair(e) => e.into(),
            e => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<ApError> for CliError {
    fn from(e: ApError) -> Self {
        match e {
            ApError::SizeBoundExceeded(_) => CliError::Bound(e.to_string()),
            ApError::Engine(e) => e.into(),
            e => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<IaError> for CliError {
    fn from(e: IaError) -> Self {
        match e {
            IaError::SizeBoundExceeded { .. } => CliError::Bound(e.to_string()),
            IaError::Pres(e) => e.into(),
            e => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<WreathError> for CliError {
    fn from(e: WreathError) -> Self {
        match e {
            WreathError::Engine(e) => e.into(),
            e => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<semiact::ptrans::PtError> for CliError {
    fn from(e: semiact::ptrans::PtError) -> Self {
        CliError::BadInput(e.to_string())
    }
}

/// The outcome of a command: whether it passed and what to report.
struct Outcome {
    passed: bool,
    status: &'static str,
    result: Value,
    text: Vec<String>,
}

fn node_cap(run: &RunArgs) -> Result<usize, CliError> {
    let cap = match run.node_cap {
        Some(c) => c,
        None => match std::env::var(NODE_CAP_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::BadInput(format!("{NODE_CAP_ENV}={v} is not a number")))?,
            Err(_) => DEFAULT_NODE_CAP,
        },
    };
    if cap == 0 || run.table_cap == 0 {
        return Err(CliError::BadInput("caps must be positive".into()));
    }
    Ok(cap)
}

fn verify_presentation(args: &VerifyArgs, cap: usize) -> Result<Outcome, CliError> {
    let family = CatalogFamily::from_str(&args.family)?;
    let bundle = match family {
        CatalogFamily::SubA | CatalogFamily::SubAEnlarged => {
            let spec = args
                .instance
                .as_deref()
                .ok_or_else(|| CliError::BadInput(format!("{family} needs --instance")))?;
            let alg = specs::algebra(spec)?;
            let lat = all_subalgebras(&alg)?;
            suba_bundle(&alg, &lat, family == CatalogFamily::SubAEnlarged)?
        }
        _ => {
            let monoid = args.monoid.as_deref().map(specs::monoid).transpose()?;
            let params = CatalogParams {
                n: args.n,
                monoid,
                alphabet: args.alphabet,
                max_len: args.max_len,
                ..Default::default()
            };
            build_catalog(family, &params)?
        }
    };
    let (_, check) = bundle.verify(EnumConfig::with_node_cap(cap))?;
    if check.inconclusive {
        return Err(CliError::Bound(format!(
            "{}: enumeration stopped at {cap} nodes",
            bundle.name
        )));
    }
    let status = match (check.passed, check.as_expected) {
        (true, _) => "pass",
        (false, true) => "expected_fail",
        (false, false) => "fail",
    };
    let size = |s: Option<usize>| s.map_or("-".to_string(), |s| s.to_string());
    let text = vec![
        format!("{} [{}]: {status}", bundle.name, bundle.provenance),
        format!("letters {}, relations {}", check.letters, check.relations),
        format!(
            "relations hold: {}, surjective: {}, presented size {} vs target {}",
            check.relations_hold,
            check.surjective.map_or("-".to_string(), |b| b.to_string()),
            size(check.presented_size),
            size(check.target_size)
        ),
    ];
    let mut result = json!({ "check": check, "expectation": bundle.expect });
    if args.listing {
        result["bundle"] = bundle.to_json();
    }
    Ok(Outcome {
        passed: check.as_expected,
        status,
        result,
        text,
    })
}

fn omega_input(ctx: &AmbientContext, lemma: Lemma) -> OmegaInput {
    match lemma {
        Lemma::Om1 => OmegaInput::Om1,
        Lemma::Om2 => OmegaInput::Om2,
        Lemma::Om3 => OmegaInput::Om3 {
            omega: ctx
                .u()
                .iter()
                .map(|&u| {
                    (
                        u,
                        theta_u(ctx, u)
                            .spanning_pairs()
                            .into_iter()
                            .map(|(a, b)| (ctx.s()[a], ctx.s()[b]))
                            .collect(),
                    )
                })
                .collect(),
        },
        Lemma::Om5 => OmegaInput::Om5 {
            gamma: ctx.u().iter().map(|&u| (u, stabilizer(ctx, u))).collect(),
        },
    }
}

fn classify_pair(args: &PairArgs, table_cap: usize) -> Result<Outcome, CliError> {
    let ambient = Ambient::parse(&args.ambient, args.m.as_deref(), table_cap)?;
    let u = ambient.subset(&args.u)?;
    let s = ambient.subset(&args.s)?;
    let ctx = AmbientContext::new(ambient.table(), &u, &s)?;
    let one = ctx.one();
    let ctx = match args.plus {
        PlusMode::Dom if !ambient.has_plus() => {
            return Err(CliError::BadInput(
                "this ambient has no domain ⁺; use --plus one or a \"plus\" list".into(),
            ))
        }
        PlusMode::Dom => ctx.with_plus(|x| ambient.dom_plus(x))?,
        PlusMode::One => ctx.with_plus(|_| one)?,
    };
    let (report, act) = check_pair_from_plus(&ctx)?;
    let report = if report.action {
        classify_proper(&ctx, &act, report)?
    } else {
        report
    };
    let mut passed = report.action;
    let mut text = vec![
        format!(
            "ambient {} ({} elements), |U| = {}, |S| = {}",
            args.ambient,
            ambient.table().size(),
            u.len(),
            s.len()
        ),
        format!(
            "weak: {}, action pair: {}, strong: {}, proper: {}",
            report.weak,
            report.action,
            report.strong,
            report.is_proper()
        ),
    ];
    let mut result = json!({ "pair": report.to_json(&ctx, None), "sizes": { "ambient": ambient.table().size(), "U": u.len(), "S": s.len() } });

    if !args.omega.is_empty() {
        let mut out = BTreeMap::new();
        if report.action {
            let sd = semidirect(&ctx, &act)?;
            for &lemma in &args.omega {
                let name = format!("{lemma:?}").to_lowercase();
                let v = match omega_check(&ctx, &act, &report, &sd, &omega_input(&ctx, lemma)) {
                    Ok(o) => {
                        passed &= o.equals_theta;
                        text.push(format!(
                            "{name}: |Ω| = {}, closure equals θ: {}",
                            o.omega.len(),
                            o.equals_theta
                        ));
                        json!({ "omega_size": o.omega.len(), "classes": o.closure.num_classes(), "equals_theta": o.equals_theta })
                    }
                    Err(ApError::HypothesisFailed(what, w)) => {
                        text.push(format!("{name}: not applicable, hypothesis fails: {what}"));
                        json!({ "hypothesis_failed": what, "witness": w })
                    }
                    Err(e) => return Err(e.into()),
                };
                out.insert(name, v);
            }
        }
        result["omega"] = json!(out);
    }
    if args.cover {
        let c = proper_cover(&ctx, &act, &report)?;
        passed &= c.proper && c.psi_surjective && c.psi_morphism;
        text.push(format!(
            "cover: |M'| = {}, carrier {}, |US| = {}, proper {}, σ trivial {}, ψ onto {}, projection separating {}",
            c.m_prime.size(),
            c.carrier.len(),
            c.target_size,
            c.proper,
            c.sigma_trivial,
            c.psi_surjective,
            c.projection_separating.map_or("-".into(), |b| b.to_string())
        ));
        result["cover"] = json!({
            "m_prime_size": c.m_prime.size(),
            "carrier_size": c.carrier.len(),
            "target_size": c.target_size,
            "u_iso": c.u_iso,
            "s_iso": c.s_iso,
            "sigma_trivial": c.sigma_trivial,
            "proper": c.proper,
            "psi_surjective": c.psi_surjective,
            "psi_morphism": c.psi_morphism,
            "u_restriction_iso": c.u_restriction_iso,
            "left_restriction": c.left_restriction,
            "projection_separating": c.projection_separating,
        });
    }
    if args.embed {
        match embed_central(&ctx, &act, &report) {
            Ok(e) => {
                passed &= e.injective && e.morphism;
                text.push(format!(
                    "embedding: |US| = {}, injective {}, morphism {}",
                    e.us_size, e.injective, e.morphism
                ));
                result["embed"] = json!({
                    "us_size": e.us_size,
                    "num_classes": e.num_classes,
                    "factorisations_ok": e.factorisations_ok,
                    "injective": e.injective,
                    "morphism": e.morphism,
                    "checked_all_pairs": e.checked_all_pairs,
                    "image_semilattice": e.image_semilattice,
                });
            }
            Err(ApError::HypothesisFailed(what, _)) => {
                text.push(format!(
                    "embedding: not applicable, hypothesis fails: {what}"
                ));
                result["embed"] = json!({ "hypothesis_failed": what });
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome {
        passed,
        status: if passed { "pass" } else { "fail" },
        result,
        text,
    })
}

fn config_json(cli: &Cli, cap: Option<usize>) -> Value {
    let command = match &cli.command {
        Command::VerifyPresentation(a) => json!({
            "command": "verify-presentation",
            "family": a.family,
            "n": a.n,
            "monoid": a.monoid,
            "instance": a.instance,
            "alphabet": a.alphabet,
            "max_len": a.max_len,
        }),
        Command::ClassifyPair(a) => json!({
            "command": "classify-pair",
            "ambient": a.ambient,
            "M": a.m,
            "U": a.u,
            "S": a.s,
            "plus": format!("{:?}", a.plus).to_lowercase(),
            "omega": a.omega.iter().map(|l| format!("{l:?}").to_lowercase()).collect::<Vec<_>>(),
            "cover": a.cover,
            "embed": a.embed,
        }),
    };
    json!({ "params": command, "node_cap": cap, "table_cap": cli.run.table_cap, "format": format!("{:?}", cli.run.format).to_lowercase() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let cap = node_cap(&cli.run);
    let outcome = cap
        .as_ref()
        .map_err(|e| CliError::BadInput(e.to_string()))
        .and_then(|&cap| match &cli.command {
            Command::VerifyPresentation(a) => verify_presentation(a, cap),
            Command::ClassifyPair(a) => classify_pair(a, cli.run.table_cap),
        });
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    let config = config_json(&cli, cap.ok());
    let (code, status, result, text) = match outcome {
        Ok(o) => (if o.passed { 0 } else { 1 }, o.status, o.result, o.text),
        Err(e) => {
            let status = if e.code() == 3 {
                "bound_exceeded"
            } else {
                "bad_input"
            };
            (
                e.code(),
                status,
                json!({ "error": e.to_string() }),
                vec![e.to_string()],
            )
        }
    };
    let mut out = std::io::stdout().lock();
    match cli.run.format {
        Format::Json => {
            let report = json!({
                "schema": SCHEMA,
                "status": status,
                "exit_code": code,
                "seed": cli.run.seed,
                "config": config,
                "elapsed_ms": elapsed_ms,
                "result": result,
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
        }
        Format::Text => {
            for line in text {
                let _ = writeln!(out, "{line}");
            }
            let _ = writeln!(
                out,
                "status: {status} (exit {code}, {elapsed_ms:.1} ms, seed {})",
                cli.run.seed
            );
        }
    }
    ExitCode::from(code)
}
