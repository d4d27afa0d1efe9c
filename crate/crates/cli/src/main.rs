use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use edgeslide::format::{
    parse_bijection, parse_elist, parse_moves_with_lines, write_bijection, write_elist, write_moves,
};
use edgeslide::oracle::{census_table, format_census, MAX_CENSUS_ORDER};
use edgeslide::{
    reachability_census, regularize, replay, transform, transform_euler, CheckLevel, Error, Graph,
    MoveScript, VertexBijection,
};

/// Certified edge-slide transformations of connected simple graphs.
#[derive(Parser)]
#[command(name = "edgeslide", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Slide script turning SOURCE into TARGET under a vertex bijection.
    Transform {
        source: PathBuf,
        target: PathBuf,
        /// `m <src> <dst>` lines; identity when omitted.
        #[arg(long)]
        bijection: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Slide script making all degrees differ by at most one.
    Regularize {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the regularized graph here.
        #[arg(long)]
        result: Option<PathBuf>,
    },
    /// Script resizing SOURCE to TARGET's order and sliding it onto TARGET.
    EulerTransform {
        source: PathBuf,
        target: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the final vertex bijection here.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Replays a script with full checks and optionally compares the result.
    Verify {
        graph: PathBuf,
        script: PathBuf,
        #[arg(long)]
        expect: Option<PathBuf>,
        #[arg(long, requires = "expect")]
        bijection: Option<PathBuf>,
    },
    /// Replays a script and prints the resulting graph.
    Replay {
        graph: PathBuf,
        script: PathBuf,
        /// Check connectivity and Euler bookkeeping after every move.
        #[arg(long)]
        full: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Slide-equivalence census over all small connected graphs.
    Oracle {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Single row for this order (needs --e).
        #[arg(long, requires = "e")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        e: Option<usize>,
    },
    /// Prints order, size, Euler characteristic, energy and degrees.
    Stats { graph: PathBuf },
}

/// Exit status 1: a script or result failed verification.
const VERIFY: u8 = 1;
/// Exit status 2: unreadable or invalid input.
const INPUT: u8 = 2;

struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn input(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: INPUT,
        error: error.into(),
    }
}

fn verify_failed(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: VERIFY,
        error: error.into(),
    }
}

/// Library errors: broken invariants and rejected moves are verification
/// failures, everything else is bad input.
fn classify(error: Error) -> Failure {
    match error {
        Error::Invariant(_) | Error::Rejected(_) => verify_failed(error),
        _ => input(error),
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("edgeslide: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Transform {
            source,
            target,
            bijection,
            output,
        } => {
            let gamma = read_graph(&source)?;
            let sigma = read_graph(&target)?;
            let psi = read_bijection(bijection.as_deref(), sigma.n())?;
            let plan = transform(&gamma, &sigma, &psi).map_err(classify)?;
            check_reaches(&gamma, &plan.script, &sigma, &psi)?;
            emit(output.as_deref(), &write_moves(&plan.script))
        }
        Command::Regularize {
            graph,
            output,
            result,
        } => {
            let g = read_graph(&graph)?;
            let reg = regularize(&g).map_err(classify)?;
            let end = replay(&g, &reg.script, CheckLevel::Full).map_err(verify_failed)?;
            if !edgeslide::is_almost_regular(&end) {
                return Err(verify_failed(anyhow!("result is not almost regular")));
            }
            emit(output.as_deref(), &write_moves(&reg.script))?;
            if let Some(path) = result {
                write_atomic(&path, &write_elist(&end))?;
            }
            Ok(())
        }
        Command::EulerTransform {
            source,
            target,
            output,
            map,
        } => {
            let gamma = read_graph(&source)?;
            let sigma = read_graph(&target)?;
            let (script, psi) = transform_euler(&gamma, &sigma).map_err(classify)?;
            check_reaches(&gamma, &script, &sigma, &psi)?;
            emit(output.as_deref(), &write_moves(&script))?;
            if let Some(path) = map {
                write_atomic(&path, &write_bijection(&psi))?;
            }
            Ok(())
        }
        Command::Verify {
            graph,
            script,
            expect,
            bijection,
        } => {
            let g = read_graph(&graph)?;
            let (lines, s) = read_script(&script)?;
            let end = replay_reporting(&g, &s, &lines, &script, CheckLevel::Full)?;
            if let Some(expect) = expect {
                let sigma = read_graph(&expect)?;
                let psi = read_bijection(bijection.as_deref(), sigma.n())?;
                if psi.len() != end.n() {
                    return Err(verify_failed(anyhow!(
                        "result has {} vertices, expected {}",
                        end.n(),
                        sigma.n()
                    )));
                }
                if !end
                    .is_isomorphic_under(&sigma, &psi)
                    .map_err(verify_failed)?
                {
                    return Err(verify_failed(anyhow!(
                        "result is not isomorphic to {} under the bijection",
                        expect.display()
                    )));
                }
            }
            println!("ok: {} moves, {}", s.len(), end.stats());
            Ok(())
        }
        Command::Replay {
            graph,
            script,
            full,
            output,
        } => {
            let g = read_graph(&graph)?;
            let (lines, s) = read_script(&script)?;
            let level = if full {
                CheckLevel::Full
            } else {
                CheckLevel::Fast
            };
            let end = replay_reporting(&g, &s, &lines, &script, level)?;
            emit(output.as_deref(), &write_elist(&end))
        }
        Command::Oracle { max_n, n, e } => {
            let rows = match (n, e) {
                (Some(n), Some(e)) => vec![reachability_census(n, e).map_err(classify)?],
                _ => {
                    if max_n == 0 || max_n > MAX_CENSUS_ORDER {
                        return Err(input(anyhow!("--max-n must be in 1..={MAX_CENSUS_ORDER}")));
                    }
                    census_table(max_n).map_err(classify)?
                }
            };
            print!("{}", format_census(&rows));
            if let Some(r) = rows.iter().find(|r| r.members > 0 && r.classes != 1) {
                return Err(verify_failed(anyhow!(
                    "n={} e={} splits into {} classes",
                    r.n,
                    r.e,
                    r.classes
                )));
            }
            Ok(())
        }
        Command::Stats { graph } => {
            println!("{}", read_graph(&graph)?.stats());
            Ok(())
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(input)
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let g = parse_elist(&read_text(path)?).map_err(|e| input(anyhow!("{}:{e}", path.display())))?;
    if !g.is_connected() {
        return Err(input(anyhow!("{}: graph is not connected", path.display())));
    }
    Ok(g)
}

fn read_script(path: &Path) -> Result<(Vec<usize>, MoveScript), Failure> {
    let parsed = parse_moves_with_lines(&read_text(path)?)
        .map_err(|e| input(anyhow!("{}:{e}", path.display())))?;
    Ok(parsed.into_iter().unzip())
}

fn read_bijection(path: Option<&Path>, n: usize) -> Result<VertexBijection, Failure> {
    let Some(path) = path else {
        return Ok(VertexBijection::identity(n));
    };
    let psi =
        parse_bijection(&read_text(path)?).map_err(|e| input(anyhow!("{}:{e}", path.display())))?;
    if psi.len() != n {
        return Err(input(anyhow!(
            "{}: bijection covers {} vertices, graph has {n}",
            path.display(),
            psi.len()
        )));
    }
    Ok(psi)
}

/// Replays, naming the script line of a rejected move.
fn replay_reporting(
    g: &Graph,
    s: &MoveScript,
    lines: &[usize],
    path: &Path,
    level: CheckLevel,
) -> Result<Graph, Failure> {
    replay(g, s, level).map_err(|r| {
        verify_failed(anyhow!(
            "{}: line {}: {} rejected: {}",
            path.display(),
            lines[r.index],
            r.mv,
            r.reason
        ))
    })
}

fn check_reaches(g: &Graph, s: &MoveScript, sigma: &Graph, psi: &VertexBijection) -> Outcome {
    let end = replay(g, s, CheckLevel::Full).map_err(verify_failed)?;
    if end.is_isomorphic_under(sigma, psi).map_err(verify_failed)? {
        Ok(())
    } else {
        Err(verify_failed(anyhow!(
            "generated script does not reach the target"
        )))
    }
}

fn emit(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(path) => write_atomic(path, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("cannot write to stdout")
            .map_err(input),
    }
}

fn write_atomic(path: &Path, text: &str) -> Outcome {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let write = || -> anyhow::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(path)?;
        Ok(())
    };
    write()
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(input)
}
