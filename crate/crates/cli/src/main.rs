mod commands;
mod io;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rsq_core::field::{FieldSpec, PrimeField, Rationals};

use commands::{KoszulArgs, Window};
use io::{read_json, read_quiver, Malformed};

/// Radical-square-zero algebras: coverings, Koszul complexes and Auslander-Reiten data.
#[derive(Parser, Debug)]
#[command(name = "rsq", version)]
struct Cli {
    /// Coefficient field: `q` or `fp:P` (default fp:32003).
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gradability, grading period and shape of a quiver.
    Analyze { quiver: PathBuf },
    /// A window of the minimal gradable covering, as DOT.
    Cover {
        quiver: PathBuf,
        #[arg(long)]
        window: Window,
        #[arg(long)]
        anchor: Option<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Koszul complex of a covering-window representation.
    Koszul {
        quiver: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        /// Push the complex down to the base algebra.
        #[arg(long)]
        pushdown: bool,
        /// Levels added above the representation's support.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(i64).range(1..))]
        depth: i64,
        #[arg(long)]
        anchor: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Splits a complex along the connected components of its support.
    Decompose {
        complex: PathBuf,
        #[arg(long)]
        quiver: Option<PathBuf>,
        /// Cancel contractible parts first.
        #[arg(long)]
        radicalize: bool,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Homology dimension vectors of a complex.
    Homology {
        complex: PathBuf,
        #[arg(long)]
        quiver: Option<PathBuf>,
    },
    /// Dimension of Hom in the homotopy category.
    Hom {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        quiver: Option<PathBuf>,
    },
    /// Auslander-Reiten windows.
    Ar {
        #[command(subcommand)]
        command: ArCommand,
    },
    /// Locates a shifted simple and its irreducible map to shifted simples.
    Simples {
        quiver: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        depth: i64,
    },
    /// Auslander-Reiten components of the derived category.
    Classify {
        quiver: PathBuf,
        #[arg(long)]
        evidence: bool,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
    /// Randomized consistency checks seeded by RSQ_SEED.
    Selfcheck {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ArCommand {
    /// Knits the preinjective component of a covering window.
    Knit {
        quiver: PathBuf,
        #[arg(long)]
        window: Window,
        #[arg(long)]
        anchor: Option<String>,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

/// A complex file with the quiver it lives over.
type LoadedComplex = (PathBuf, rsq_core::quiver::Quiver, serde_json::Value);

/// Loads one or two complex files over a given or inferred quiver.
fn complexes(field: Option<FieldSpec>, paths: &[&Path], quiver: Option<&Path>) -> Result<(FieldSpec, Vec<LoadedComplex>)> {
    let q = quiver.map(read_quiver).transpose()?;
    let mut loaded = Vec::new();
    for &p in paths {
        let v = read_json(p)?;
        let cq = commands::complex_quiver(q.as_ref(), p, &v)?;
        loaded.push((p.to_path_buf(), cq, v));
    }
    if let [(_, a, _), (p, b, _)] = loaded.as_slice() {
        if a != b {
            return Err(io::malformed(p, "the two complexes live over different quivers; pass --quiver"));
        }
    }
    let files: Vec<(&Path, &serde_json::Value)> = loaded.iter().map(|(p, _, v)| (p.as_path(), v)).collect();
    let spec = commands::field_for(field, &files)?;
    Ok((spec, loaded))
}

/// Runs a command, appending its report to `out`; `Ok(false)` signals failed checks.
fn run(cli: Cli, out: &mut String) -> Result<bool> {
    let field = cli.field.unwrap_or_default();
    match cli.command {
        Command::Analyze { quiver } => commands::analyze(out, &read_quiver(&quiver)?)?,
        Command::Cover { quiver, window, anchor, dot } => {
            commands::cover(out, &read_quiver(&quiver)?, window, anchor.as_deref(), dot.as_deref())?
        }
        Command::Koszul {
            quiver,
            rep,
            pushdown,
            depth,
            anchor,
            output,
        } => {
            let q = read_quiver(&quiver)?;
            let args = KoszulArgs {
                rep: &rep,
                pushdown,
                depth,
                anchor: anchor.as_deref(),
                output: output.as_deref(),
            };
            with_field!(field, f => commands::koszul(out, &f, &q, args))?
        }
        Command::Decompose {
            complex,
            quiver,
            radicalize,
            out_dir,
        } => {
            let (spec, loaded) = complexes(cli.field, &[&complex], quiver.as_deref())?;
            let (p, q, v) = &loaded[0];
            with_field!(spec, f => {
                let c = commands::load_complex(&f, q, p, v)?;
                commands::decompose(out, &c, p, radicalize, out_dir.as_deref())
            })?
        }
        Command::Homology { complex, quiver } => {
            let (spec, loaded) = complexes(cli.field, &[&complex], quiver.as_deref())?;
            let (p, q, v) = &loaded[0];
            with_field!(spec, f => {
                let c = commands::load_complex(&f, q, p, v)?;
                commands::homology(out, &c)
            })?
        }
        Command::Hom { source, target, quiver } => {
            let (spec, loaded) = complexes(cli.field, &[&source, &target], quiver.as_deref())?;
            with_field!(spec, f => {
                let x = commands::load_complex(&f, &loaded[0].1, &loaded[0].0, &loaded[0].2)?;
                let y = commands::load_complex(&f, &loaded[0].1, &loaded[1].0, &loaded[1].2)?;
                commands::hom(out, &x, &y)
            })?
        }
        Command::Ar {
            command:
                ArCommand::Knit {
                    quiver,
                    window,
                    anchor,
                    steps,
                    dot,
                },
        } => {
            let q = read_quiver(&quiver)?;
            with_field!(field, f => commands::knit(out, &f, &q, window, anchor.as_deref(), steps, dot.as_deref()))?
        }
        Command::Simples {
            quiver,
            vertex,
            shift,
            depth,
        } => {
            let q = read_quiver(&quiver)?;
            with_field!(field, f => commands::simples(out, &f, &q, &vertex, shift, depth))?
        }
        Command::Classify {
            quiver,
            evidence,
            steps,
            dot_dir,
        } => {
            let q = read_quiver(&quiver)?;
            with_field!(field, f => commands::classify(out, &f, &q, evidence, steps, dot_dir.as_deref()))?
        }
        Command::Selfcheck { count } => {
            let seed = match std::env::var("RSQ_SEED") {
                Ok(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| Malformed(format!("RSQ_SEED must be an unsigned integer, got `{s}`")))?,
                Err(_) => 0,
            };
            return with_field!(field, f => commands::selfcheck(out, &f, seed, count));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(64),
            };
        }
    };
    let mut out = String::new();
    let result = run(cli, &mut out);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let _ = lock.write_all(out.as_bytes());
    let _ = lock.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.chain().any(|c| c.is::<Malformed>()) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
