use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toric_newton::io::{
    parse_problem, parse_rational, run_jobs, run_problem, Context, Job, Report, TaskKind,
    VarietySpec,
};
use toric_newton::volume::VolumeConvention;
use toric_newton::Error;

#[derive(Parser)]
#[command(name = "toric-newton", version, about = "Exact singularity invariants from Newton polygons")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Brasselet number B_{f,X}(0) of a function
    Brasselet(Common),
    /// Brasselet number on the complete intersection X^g
    BrasseletCi {
        #[command(flatten)]
        common: Common,
        /// Use the prepolar formula with Eu_X weights
        #[arg(long)]
        prepolar: bool,
    },
    /// Local Euler obstruction Eu_X(0)
    EuOrigin(Common),
    /// Euler obstruction of a function, Eu_{f,X}(0)
    EuF(Common),
    /// Number of Morse points on the regular part of X^g
    Morse(Common),
    /// GSV index of f on X^g
    Gsv(Common),
    /// Milnor number on C^n
    Milnor(Common),
    /// Bruce-Roberts number of f relative to X^g in C^n
    BruceRoberts(Common),
    /// Check that the invariants stay constant along a deformation
    Family {
        #[command(flatten)]
        common: Common,
        /// Deformation added to f with parameter t (repeatable)
        #[arg(long)]
        h: Vec<String>,
        /// Deformation added to g with parameter s (repeatable)
        #[arg(long)]
        l: Vec<String>,
        /// Parameter sample "s,t" (repeatable); defaults to {0,1,-1,2}^2
        #[arg(long = "sample")]
        samples: Vec<String>,
    },
    /// Continued fraction, generators, equations and orbits of a surface
    SurfaceInfo(Common),
    /// Non-degeneracy heuristic, isolatedness and prepolarity
    Check(Common),
    /// Run every task of a problem file
    Run(Common),
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Problem file (TOML)
    #[arg(long)]
    problem: Option<PathBuf>,
    /// Surface parameter p of cone((0,1),(p,-q))
    #[arg(long, allow_hyphen_values = true)]
    p: Option<i64>,
    /// Surface parameter q
    #[arg(long, allow_hyphen_values = true)]
    q: Option<i64>,
    /// Work on C^n
    #[arg(long)]
    n: Option<usize>,
    /// The function f
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// The function g cutting out X^g
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// strict or paper-example
    #[arg(long)]
    mode: Option<VolumeConvention>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random lines per face in the non-degeneracy heuristic
    #[arg(long, default_value_t = 64)]
    trials: u32,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
}

fn hypothesis_error(e: &Error) -> bool {
    matches!(
        e,
        Error::NotPrepolar(_)
            | Error::ConditionViolated(_)
            | Error::CommonComponent(_)
            | Error::NotConstant { .. }
            | Error::GenericityFailure(..)
    )
}

/// Smallest `n >= 2` for which every polynomial parses on `C^n`.
fn infer_affine_dim(polys: &[&str]) -> usize {
    (2..=64)
        .find(|&n| {
            polys
                .iter()
                .all(|p| toric_newton::io::parse_family_polynomial(p, n).is_ok())
        })
        .unwrap_or(2)
}

fn inline_variety(kind: TaskKind, c: &Common) -> Result<VarietySpec, Error> {
    match (c.p, c.q, c.n) {
        (Some(p), Some(q), None) => Ok(VarietySpec::Surface { p, q }),
        (Some(1), None, None) => Ok(VarietySpec::Surface { p: 1, q: 0 }),
        (None, None, Some(n)) => Ok(VarietySpec::Affine { n }),
        (None, None, None) if matches!(kind, TaskKind::Milnor | TaskKind::BruceRoberts) => {
            let polys: Vec<&str> = [&c.f, &c.g].into_iter().flatten().map(String::as_str).collect();
            Ok(VarietySpec::Affine {
                n: infer_affine_dim(&polys),
            })
        }
        _ => Err(Error::InvalidInput(
            "give either --problem, --p and --q, or --n".into(),
        )),
    }
}

fn build_job(kind: TaskKind, c: &Common) -> Job {
    let mut job = Job::new(kind);
    job.f = c.f.clone();
    job.g = c.g.clone();
    job.mode = c.mode;
    job.seed = c.seed;
    job.trials = c.trials;
    job
}

fn execute(kind: Option<TaskKind>, c: &Common, tweak: impl FnOnce(&mut Job) -> Result<(), Error>) -> Result<Report, Error> {
    if let Some(path) = &c.problem {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        let mut problem = parse_problem(&text)?;
        let Some(kind) = kind else {
            return run_problem(&problem);
        };
        problem.tasks.retain(|t| t.kind == kind);
        if !problem.tasks.is_empty() {
            return run_problem(&problem);
        }
        // No matching task: run the command on the file's variety, with the
        // polynomials named f and g unless given on the command line.
        let ctx = Context::new(problem.variety.clone())?;
        let mut job = build_job(kind, c);
        job.f = job.f.or_else(|| problem.polynomials.get("f").cloned());
        job.g = job.g.or_else(|| problem.polynomials.get("g").cloned());
        tweak(&mut job)?;
        return run_jobs(&ctx, &[job]);
    }
    let kind = kind.ok_or_else(|| Error::InvalidInput("run needs --problem".into()))?;
    let ctx = Context::new(inline_variety(kind, c)?)?;
    let mut job = build_job(kind, c);
    tweak(&mut job)?;
    run_jobs(&ctx, &[job])
}

fn parse_sample(s: &str) -> Result<(num_rational::BigRational, num_rational::BigRational), Error> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::InvalidInput(format!("sample {s:?} is not \"s,t\"")))?;
    Ok((parse_rational(a)?, parse_rational(b)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let none = |_: &mut Job| Ok(());
    let (common, result) = match &cli.cmd {
        Cmd::Brasselet(c) => (c, execute(Some(TaskKind::Brasselet), c, none)),
        Cmd::BrasseletCi { common, prepolar } => (
            common,
            execute(Some(TaskKind::BrasseletCi), common, |j| {
                j.prepolar = *prepolar;
                Ok(())
            }),
        ),
        Cmd::EuOrigin(c) => (c, execute(Some(TaskKind::EuOrigin), c, none)),
        Cmd::EuF(c) => (c, execute(Some(TaskKind::EuF), c, none)),
        Cmd::Morse(c) => (c, execute(Some(TaskKind::Morse), c, none)),
        Cmd::Gsv(c) => (c, execute(Some(TaskKind::Gsv), c, none)),
        Cmd::Milnor(c) => (c, execute(Some(TaskKind::Milnor), c, none)),
        Cmd::BruceRoberts(c) => (c, execute(Some(TaskKind::BruceRoberts), c, none)),
        Cmd::Family { common, h, l, samples } => (
            common,
            execute(Some(TaskKind::Family), common, |j| {
                j.h.extend(h.iter().cloned());
                j.l.extend(l.iter().cloned());
                if !samples.is_empty() {
                    j.samples = Some(samples.iter().map(|s| parse_sample(s)).collect::<Result<_, _>>()?);
                }
                Ok(())
            }),
        ),
        Cmd::SurfaceInfo(c) => (c, execute(Some(TaskKind::SurfaceInfo), c, none)),
        Cmd::Check(c) => (c, execute(Some(TaskKind::Check), c, none)),
        Cmd::Run(c) => (c, execute(None, c, none)),
    };
    match result {
        Ok(report) => {
            if common.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.hypothesis_failed() {
                for t in &report.tasks {
                    for f in &t.hypothesis_failures {
                        eprintln!("hypothesis failure: {f}");
                    }
                }
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if hypothesis_error(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
