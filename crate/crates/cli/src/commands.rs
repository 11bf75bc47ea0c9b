//! Command-line parsing and the experiment drivers.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, ValueEnum};
use mvlab_core::audit::{simplex_audit, Shape};
use mvlab_core::bezout::{af_spot_check, bezout_gap_general, BezoutEvaluator, Verdict};
use mvlab_core::deform::{cap_cut, direction, projection_preserved, support_drop_set};
use mvlab_core::generate::random_body;
use mvlab_core::mixed::{mixed_volume, mixed_volume_by_measure};
use mvlab_core::search::{counterexample_search_seeded, DEFAULT_SEED};
use mvlab_core::{Error, Polytope, PrimitiveNormal, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::document::{integer_json, ParseError, PolytopeDocument};
use crate::genspec::{self, BadParams};
use crate::report::{exact, integer, InputRecord, Report, Timing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandKind {
    /// Mixed volume of the bodies by two independent algorithms.
    Mv,
    /// Bezout gap; the last body is K, the others are K_1..K_r.
    Bezout,
    /// Facet-move simplex audit of one body.
    Audit,
    /// Counterexample search against one body.
    Search,
    /// Cap-cut construction on one body.
    Strict,
    /// Random Aleksandrov-Fenchel instances.
    AfFuzz,
    /// Writes the canonical document of one body.
    Generate,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Mv => "mv",
            CommandKind::Bezout => "bezout",
            CommandKind::Audit => "audit",
            CommandKind::Search => "search",
            CommandKind::Strict => "strict",
            CommandKind::AfFuzz => "af-fuzz",
            CommandKind::Generate => "generate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "mvlab",
    version,
    about = "Exact mixed volumes and Bezout-inequality experiments"
)]
struct Cli {
    #[arg(value_enum)]
    command: CommandKind,
    /// Polytope document (JSON); repeatable, order is kept.
    #[arg(long = "input", value_name = "FILE")]
    inputs: Vec<PathBuf>,
    /// Generated body, e.g. `cube:3`; repeatable, order is kept.
    #[arg(long = "gen", value_name = "KIND:PARAMS")]
    gens: Vec<String>,
    /// Number of bodies in the Bezout product (default: all but K).
    #[arg(long)]
    r: Option<usize>,
    /// Gap evaluations allowed to `search`.
    #[arg(long, default_value_t = 1000)]
    budget: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Instances for `af-fuzz`.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Dimension for `af-fuzz`.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Cap direction for `strict`, comma-separated (default e1).
    #[arg(long, allow_hyphen_values = true)]
    cap: Option<String>,
    /// Cap depth for `strict` (default 1/10).
    #[arg(long)]
    depth: Option<String>,
    /// Segment direction v for `strict` (default: the cap direction).
    #[arg(long, allow_hyphen_values = true)]
    axis: Option<String>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BodySource {
    File(PathBuf),
    Gen(String),
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub command: CommandKind,
    /// Command line after the program name.
    pub argv: Vec<String>,
    pub bodies: Vec<BodySource>,
    pub r: Option<usize>,
    pub budget: usize,
    pub seed: Option<u64>,
    pub samples: usize,
    pub dim: usize,
    pub cap: Option<String>,
    pub depth: Option<String>,
    pub axis: Option<String>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn ordered_bodies(m: &ArgMatches, cli: &Cli) -> Vec<BodySource> {
    let idx = |id: &str| {
        m.indices_of(id)
            .map(|i| i.collect::<Vec<_>>())
            .unwrap_or_default()
    };
    let mut all: Vec<(usize, BodySource)> = idx("inputs")
        .into_iter()
        .zip(cli.inputs.iter().cloned().map(BodySource::File))
        .chain(
            idx("gens")
                .into_iter()
                .zip(cli.gens.iter().cloned().map(BodySource::Gen)),
        )
        .collect();
    all.sort_by_key(|(i, _)| *i);
    all.into_iter().map(|(_, b)| b).collect()
}

impl ExperimentConfig {
    pub fn from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
        let matches = Cli::command().try_get_matches_from(&args)?;
        let cli = Cli::from_arg_matches(&matches)?;
        Ok(ExperimentConfig {
            command: cli.command,
            argv: args
                .iter()
                .skip(1)
                .map(|a| a.to_string_lossy().into_owned())
                .collect(),
            bodies: ordered_bodies(&matches, &cli),
            r: cli.r,
            budget: cli.budget,
            seed: cli.seed,
            samples: cli.samples,
            dim: cli.dim,
            cap: cli.cap,
            depth: cli.depth,
            axis: cli.axis,
            out: cli.out,
            format: cli.format,
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Document { path: String, source: ParseError },
    #[error(transparent)]
    Gen(#[from] BadParams),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

struct Body {
    polytope: Polytope,
    record: InputRecord,
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn load(source: &BodySource) -> Result<Body, CliError> {
    match source {
        BodySource::File(path) => {
            let shown = path.display().to_string();
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: shown.clone(),
                source,
            })?;
            let polytope = PolytopeDocument::from_json(&text)
                .and_then(|d| d.to_polytope())
                .map_err(|source| CliError::Document {
                    path: shown.clone(),
                    source,
                })?;
            let record = InputRecord {
                source: format!("file:{shown}"),
                sha256: sha256(text.as_bytes()),
            };
            Ok(Body { polytope, record })
        }
        BodySource::Gen(spec) => {
            let polytope = genspec::generate(spec)?;
            let text = PolytopeDocument::from_polytope(&polytope, None).to_json();
            let record = InputRecord {
                source: format!("gen:{spec}"),
                sha256: sha256(text.as_bytes()),
            };
            Ok(Body { polytope, record })
        }
    }
}

struct Outcome {
    results: Value,
    quantities: Vec<(String, Rational)>,
    verdict: String,
    exit: i32,
}

fn status(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn normal_json(z: &PrimitiveNormal) -> Value {
    Value::Array(z.coords().iter().map(integer_json).collect())
}

fn doc(p: &Polytope) -> Value {
    PolytopeDocument::from_polytope(p, None).to_value()
}

fn is_simplex(k: &Polytope) -> bool {
    k.is_full_dimensional() && k.vertices().len() == k.dim() + 1
}

fn one_body<'a>(cmd: &str, bodies: &'a [Polytope]) -> Result<&'a Polytope, CliError> {
    match bodies {
        [k] => Ok(k),
        _ => Err(CliError::Usage(format!(
            "{cmd} takes exactly one body, got {}",
            bodies.len()
        ))),
    }
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, CliError> {
    genspec::parse_rational(s)
        .ok_or_else(|| CliError::Usage(format!("--{name}: bad rational `{s}`")))
}

fn vector_arg(name: &str, s: &str) -> Result<Vec<Rational>, CliError> {
    genspec::parse_rational_list(s)
        .ok_or_else(|| CliError::Usage(format!("--{name}: bad coordinates `{s}`")))
}

fn cmd_mv(bodies: &[Polytope]) -> Result<Outcome, CliError> {
    let Some(last) = bodies.last() else {
        return Err(CliError::Usage("mv needs at least one body".into()));
    };
    let n = last.dim();
    if bodies.len() > n {
        return Err(CliError::Usage(format!(
            "mv takes at most {n} bodies in dimension {n}"
        )));
    }
    // the last body fills the remaining slots
    let mut slots: Vec<&Polytope> = bodies.iter().collect();
    slots.resize(n, last);
    let a = mixed_volume(&slots)?;
    let b = mixed_volume_by_measure(&slots)?;
    let agree = a == b;
    Ok(Outcome {
        results: json!({
            "dim": integer(n),
            "polarization": exact(&a),
            "measure_recursion": exact(&b),
            "agree": agree,
        }),
        quantities: vec![
            ("mixed_volume".into(), a.clone()),
            ("mixed_volume_measure".into(), b),
        ],
        verdict: if agree { "agree" } else { "disagree" }.into(),
        exit: status(agree),
    })
}

fn cmd_bezout(bodies: &[Polytope], r: Option<usize>) -> Result<Outcome, CliError> {
    let Some((k, others)) = bodies.split_last() else {
        return Err(CliError::Usage(
            "bezout needs bodies K_1..K_r followed by K".into(),
        ));
    };
    let r = r.unwrap_or(others.len());
    if r != others.len() {
        return Err(CliError::Usage(format!(
            "--r {r} but {} bodies precede K",
            others.len()
        )));
    }
    let refs: Vec<&Polytope> = others.iter().collect();
    let gap = bezout_gap_general(&refs, k, r)?;
    let eval = BezoutEvaluator::new(k)?;
    let factors: Vec<Rational> = others.iter().map(|b| eval.against_body(b)).collect();
    let simplex = is_simplex(k);
    let verdict = if gap.is_negative() {
        Verdict::Violated
    } else {
        Verdict::Satisfied
    };
    let label = match verdict {
        Verdict::Violated => "violated",
        Verdict::Satisfied if gap.is_zero() => "equality",
        Verdict::Satisfied => "satisfied",
    };
    let mut quantities = vec![
        ("gap".to_string(), gap.clone()),
        ("volume".into(), eval.volume().clone()),
    ];
    quantities.extend(
        factors
            .iter()
            .enumerate()
            .map(|(i, f)| (format!("v_k{}_k", i + 1), f.clone())),
    );
    Ok(Outcome {
        results: json!({
            "r": integer(r),
            "gap": exact(&gap),
            "volume": exact(eval.volume()),
            "factors": factors.iter().map(exact).collect::<Vec<_>>(),
            "k_is_simplex": simplex,
        }),
        quantities,
        verdict: label.into(),
        exit: status(!(simplex && verdict == Verdict::Violated)),
    })
}

fn cmd_audit(bodies: &[Polytope]) -> Result<Outcome, CliError> {
    let k = one_body("audit", bodies)?;
    let rep = simplex_audit(k)?;
    let opt = |x: &Option<Rational>| x.as_ref().map(exact).unwrap_or(Value::Null);
    let records: Vec<Value> = rep
        .records
        .iter()
        .map(|f| {
            json!({
                "facet_index": integer(f.facet_index),
                "normal": normal_json(&f.normal),
                "t": exact(&f.t),
                "lambda": opt(&f.lambda),
                "confirm_lambda": opt(&f.confirm_lambda),
            })
        })
        .collect();
    let shape = match rep.verdict {
        Shape::Simplex => "simplex",
        Shape::NonSimplex => "non_simplex",
    };
    let quantities = rep
        .records
        .iter()
        .filter_map(|f| Some((format!("lambda_facet_{}", f.facet_index), f.lambda.clone()?)))
        .collect();
    Ok(Outcome {
        results: json!({
            "shape": shape,
            "vertex_count": integer(rep.vertex_count),
            "consistent": rep.consistent,
            "facets": records,
        }),
        quantities,
        verdict: shape.into(),
        exit: status(rep.consistent),
    })
}

fn cmd_search(bodies: &[Polytope], budget: usize, seed: u64) -> Result<Outcome, CliError> {
    let k = one_body("search", bodies)?;
    let simplex = is_simplex(k);
    match counterexample_search_seeded(k, budget, seed) {
        Ok(hit) => {
            let c = &hit.certificate;
            Ok(Outcome {
                results: json!({
                    "found": true,
                    "budget": integer(budget),
                    "evaluations": integer(hit.evaluations),
                    "family": hit.family.name(),
                    "gap": exact(&c.gap),
                    "recomputed_gap": exact(&c.recompute()?),
                    "l": doc(&c.l),
                    "m": doc(&c.m),
                    "k_is_simplex": simplex,
                }),
                quantities: vec![("gap".into(), c.gap.clone())],
                verdict: "certificate".into(),
                exit: status(!simplex),
            })
        }
        Err(Error::BudgetExhausted { .. }) => Ok(Outcome {
            results: json!({
                "found": false,
                "budget": integer(budget),
                "evaluations": integer(budget),
                "k_is_simplex": simplex,
            }),
            quantities: vec![],
            verdict: "exhausted".into(),
            exit: status(simplex),
        }),
        Err(e) => Err(e.into()),
    }
}

fn cmd_strict(
    bodies: &[Polytope],
    cap: Option<&str>,
    depth: Option<&str>,
    axis: Option<&str>,
) -> Result<Outcome, CliError> {
    let k = one_body("strict", bodies)?;
    let n = k.dim();
    let cap = match cap {
        Some(s) => direction(&vector_arg("cap", s)?)?,
        None => {
            let mut e1 = vec![0i64; n];
            e1[0] = 1;
            PrimitiveNormal::from_i64(&e1)?
        }
    };
    let depth = match depth {
        Some(s) => rational_arg("depth", s)?,
        None => Rational::new(1.into(), 10.into()),
    };
    let v = match axis {
        Some(s) => vector_arg("axis", s)?,
        None => cap.to_rational(),
    };
    let m = cap_cut(k, &cap, &depth)?;
    let preserved = projection_preserved(k, &m, &v)?;
    let drop = support_drop_set(k, &m);
    let l = Polytope::symmetric_segment(&v)?;
    let eval = BezoutEvaluator::new(k)?;
    let gap = eval.gap(&l, &m);
    let (verdict, ok) = match (preserved, drop.is_empty()) {
        (true, false) if gap.is_negative() => ("violation", true),
        (true, true) if gap.is_zero() => ("evaded", true),
        (false, _) => ("not_applicable", true),
        _ => ("unexpected", false),
    };
    Ok(Outcome {
        results: json!({
            "cap": normal_json(&cap),
            "depth": exact(&depth),
            "axis": v.iter().map(exact).collect::<Vec<_>>(),
            "projection_preserved": preserved,
            "support_drop_set": drop.iter().map(normal_json).collect::<Vec<_>>(),
            "gap": exact(&gap),
            "m": doc(&m),
        }),
        quantities: vec![("gap".into(), gap), ("depth".into(), depth)],
        verdict: verdict.into(),
        exit: status(ok),
    })
}

fn cmd_af_fuzz(
    bodies: &[Polytope],
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<Outcome, CliError> {
    if !bodies.is_empty() {
        return Err(CliError::Usage("af-fuzz generates its own bodies".into()));
    }
    let limit = mvlab_core::dimension_cap();
    if n < 2 || n > limit {
        return Err(CliError::Usage(format!("--dim must be in [2, {limit}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..samples).map(|_| rng.gen()).collect();
    let slacks: Vec<Rational> = seeds
        .par_iter()
        .map(|&s| {
            let mut r = ChaCha8Rng::seed_from_u64(s);
            let bodies: Vec<Polytope> = (0..n).map(|_| random_body(&mut r, n, n + 3)).collect();
            let rest: Vec<&Polytope> = bodies[2..].iter().collect();
            af_spot_check(&bodies[0], &bodies[1], &rest)
        })
        .collect::<mvlab_core::Result<_>>()?;
    let negative: Vec<Value> = slacks
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_negative())
        .map(|(i, _)| integer(i))
        .collect();
    let min = slacks.iter().min().cloned();
    let ok = negative.is_empty();
    Ok(Outcome {
        results: json!({
            "dim": integer(n),
            "samples": integer(samples),
            "min_slack": min.as_ref().map(exact).unwrap_or(Value::Null),
            "negative_instances": negative,
        }),
        quantities: min
            .into_iter()
            .map(|m| ("min_slack".to_string(), m))
            .collect(),
        verdict: if ok { "nonnegative" } else { "negative_slack" }.into(),
        exit: status(ok),
    })
}

fn write_output(out: Option<&PathBuf>, text: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text)
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn generate_document(config: &ExperimentConfig) -> Result<(), CliError> {
    let (source, body) = match config.bodies.as_slice() {
        [s] => (s, load(s)?),
        _ => return Err(CliError::Usage("generate takes exactly one body".into())),
    };
    let name = match source {
        BodySource::Gen(spec) => Some(spec.clone()),
        BodySource::File(_) => None,
    };
    let mut text = PolytopeDocument::from_polytope(&body.polytope, name).to_json();
    text.push('\n');
    write_output(config.out.as_ref(), text.as_bytes())
}

/// Runs one experiment and writes its report; returns the exit status.
pub fn execute(config: &ExperimentConfig) -> i32 {
    if config.command == CommandKind::Generate {
        return match generate_document(config) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        };
    }
    let start = Instant::now();
    let seed = match config.command {
        CommandKind::Search => Some(config.seed.unwrap_or(DEFAULT_SEED)),
        CommandKind::AfFuzz => Some(config.seed.unwrap_or(0)),
        _ => config.seed,
    };
    let mut inputs = Vec::new();
    let outcome = (|| {
        let mut bodies = Vec::new();
        for source in &config.bodies {
            let body = load(source)?;
            inputs.push(body.record);
            bodies.push(body.polytope);
        }
        match config.command {
            CommandKind::Mv => cmd_mv(&bodies),
            CommandKind::Bezout => cmd_bezout(&bodies, config.r),
            CommandKind::Audit => cmd_audit(&bodies),
            CommandKind::Search => cmd_search(&bodies, config.budget, seed.unwrap_or_default()),
            CommandKind::Strict => cmd_strict(
                &bodies,
                config.cap.as_deref(),
                config.depth.as_deref(),
                config.axis.as_deref(),
            ),
            CommandKind::AfFuzz => cmd_af_fuzz(
                &bodies,
                config.dim,
                config.samples,
                seed.unwrap_or_default(),
            ),
            CommandKind::Generate => unreachable!("handled above"),
        }
    })();
    let (outcome, error) = match outcome {
        Ok(o) => (o, None),
        Err(e) => {
            eprintln!("error: {e}");
            let o = Outcome {
                results: Value::Null,
                quantities: vec![],
                verdict: "error".into(),
                exit: 2,
            };
            (o, Some(e.to_string()))
        }
    };
    let report = Report {
        command: config.command.name().into(),
        argv: config.argv.clone(),
        seed,
        inputs,
        results: outcome.results,
        verdict: outcome.verdict,
        exit_status: outcome.exit,
        error,
        quantities: outcome.quantities,
        timing: Timing {
            elapsed_ms: start.elapsed().as_millis(),
        },
    };
    let bytes = match config.format {
        Format::Json => report.to_json().into_bytes(),
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf).expect("writing to memory");
            buf
        }
    };
    match write_output(config.out.as_ref(), &bytes) {
        Ok(()) => outcome.exit,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match ExperimentConfig::from_args(args) {
        Ok(config) => execute(&config),
        Err(e) => {
            let _ = e.print();
            e.exit_code()
        }
    }
}
