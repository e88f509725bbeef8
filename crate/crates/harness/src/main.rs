//! `jacwalk` — walk generators on genus-2 Jacobians and their
//! linear-complexity measurements.
//!
//! Every subcommand reads the same JSON config (see `config::ExperimentConfig`)
//! and may override the seed on the command line. Results go to `--out` or
//! stdout; progress and summaries go to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jacwalk::config::ExperimentConfig;
use jacwalk::experiment::run_experiment;
use jacwalk::export::{write_records, ExportFormat};
use jacwalk::lemmas::verify_lemmas;
use jacwalk::search::{find_curves, CurveSelectionJson};
use jacwalk_core::field::Prime;
use jacwalk_core::generator::{emit_stream, CoordinateTag, WalkConfig};
use jacwalk_core::jacobian::random_divisor;
use jacwalk_core::lincomp::profile;

#[derive(Parser)]
#[command(
    name = "jacwalk",
    version,
    about = "Additive-walk generators on genus-2 Jacobians over small prime fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample nonsingular curves and report maximal-order step elements.
    CurveSearch {
        #[arg(long)]
        config: PathBuf,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit one coordinate stream of the walk as CSV (n,w_n,is_pole).
    Walk {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Coordinate tag (default: first tag in the config).
        #[arg(long)]
        tag: Option<String>,
        /// Stream length (default: min(t, n_max)).
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the linear-complexity profile of a stream as CSV (N,L).
    Profile {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tag: Option<String>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full experiment grid and export the records.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively verify the intersection lemmas over the config primes.
    VerifyLemmas {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_config(path: &Path, seed: Option<u64>) -> anyhow::Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::from_path(path)
        .with_context(|| format!("loading config {}", path.display()))?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn emit(out: Option<PathBuf>, body: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(&path, body)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

/// The walk used by `walk`/`profile`: best curve of the first config prime,
/// with W0 sampled from the seed.
fn single_walk(cfg: &ExperimentConfig) -> anyhow::Result<(Prime, WalkConfig)> {
    let p = Prime::new(cfg.primes[0])?;
    let sel = find_curves(p, 1, cfg.seed)?
        .into_iter()
        .next()
        .context("curve search returned nothing")?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x77616c6b);
    let w0 = random_divisor(&sel.curve, &mut rng);
    eprintln!(
        "curve p={} b={:?} |J|={} t={}",
        p,
        sel.curve.coefficients().map(|c| c.value()),
        sel.group.order,
        sel.t
    );
    Ok((p, WalkConfig::new(sel.d, w0, &sel.group)))
}

fn pick_tag(cfg: &ExperimentConfig, tag: Option<String>) -> anyhow::Result<CoordinateTag> {
    match tag {
        Some(t) => Ok(CoordinateTag::parse(&t)?),
        None => Ok(cfg.parsed_tags()?[0]),
    }
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::CurveSearch { config, seed, out } => {
            let cfg = load_config(&config, seed)?;
            let mut hits = Vec::new();
            for &pv in &cfg.primes {
                let p = Prime::new(pv)?;
                for sel in find_curves(p, cfg.curves_per_prime, cfg.seed)? {
                    hits.push(CurveSelectionJson::from(&sel));
                }
            }
            let mut body = serde_json::to_string_pretty(&hits)?;
            body.push('\n');
            emit(out, &body)?;
        }
        Cmd::Walk {
            config,
            seed,
            tag,
            n,
            out,
        } => {
            let cfg = load_config(&config, seed)?;
            let tag = pick_tag(&cfg, tag)?;
            let (_, walk) = single_walk(&cfg)?;
            let len = n.unwrap_or_else(|| walk.period().min(cfg.n_max));
            let stream = emit_stream(&walk, tag, len);
            let mut buf = Vec::new();
            stream.write_csv(&mut buf)?;
            emit(out, &String::from_utf8(buf)?)?;
        }
        Cmd::Profile {
            config,
            seed,
            tag,
            n,
            out,
        } => {
            let cfg = load_config(&config, seed)?;
            let tag = pick_tag(&cfg, tag)?;
            let (p, walk) = single_walk(&cfg)?;
            let len = n.unwrap_or_else(|| walk.period().min(cfg.n_max));
            let stream = emit_stream(&walk, tag, len);
            let prof = profile(p, &stream.values);
            let mut buf = Vec::new();
            prof.write_csv(&mut buf)?;
            emit(out, &String::from_utf8(buf)?)?;
        }
        Cmd::Experiment {
            config,
            seed,
            format,
            out,
        } => {
            let cfg = load_config(&config, seed)?;
            let format: ExportFormat = format.parse()?;
            let outcome = run_experiment(&cfg)?;
            for f in &outcome.failures {
                eprintln!("warning: {f}");
            }
            eprintln!("{}", outcome.summary());
            if outcome.bound_violations > 0 {
                bail!("{} lower-bound violations", outcome.bound_violations);
            }
            match out {
                Some(path) => write_records(&outcome.records, format, &path)?,
                None => {
                    let body = jacwalk::export::render(&outcome.records, format)?;
                    std::io::stdout().write_all(body.as_bytes())?;
                }
            }
        }
        Cmd::VerifyLemmas { config, seed, out } => {
            let cfg = load_config(&config, seed)?;
            let mut reports = Vec::new();
            for &pv in &cfg.primes {
                let p = Prime::new(pv)?;
                for sel in find_curves(p, cfg.curves_per_prime, cfg.seed)? {
                    let report = verify_lemmas(&sel.curve, cfg.seed, 4)?;
                    eprintln!(
                        "p={} b={:?}: max translate ∩ = {}, max pair zeros = {}",
                        report.p, report.b,
                        report.max_theta_translate_intersection,
                        report.max_pair_common_zeros
                    );
                    reports.push(report);
                }
            }
            let mut body = serde_json::to_string_pretty(&reports)?;
            body.push('\n');
            emit(out, &body)?;
        }
    }
    Ok(())
}
