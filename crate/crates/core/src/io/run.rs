//! Turns task descriptions into reports.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::ambient::AmbientPolynomial;
use crate::error::{Error, Result};
use crate::invariants::{
    brasselet_ci, brasselet_ci_prepolar, brasselet_hypersurface, bruce_roberts, default_samples,
    euler_obstruction_of_function, euler_obstruction_origin, family_constancy_report, gsv_index,
    milnor_number, morse_number, BruceRobertsReport, EuOriginReport, EulerTable, Family,
    FamilyReport, GsvReport, InvariantReport, MilnorReport, MorseReport,
};
use crate::io::parse::{parse_family_polynomial, parse_polynomial};
use crate::io::problem::{ProblemFile, TaskKind, TaskSpec, VarietySpec};
use crate::io::report::{
    CheckDetail, FaceInfo, NamedHeuristic, Report, ResultLine, SurfaceInfo, TaskInputsEcho,
    TaskOutcome, VarietyInfo,
};
use crate::lattice::LatticePoint;
use crate::newton::{CompleteIntersection, LatticePolynomial, ToricVariety};
use crate::nondegeneracy::nondegeneracy_heuristic;
use crate::toric_surface::{
    meets_both_rays, orbit_decomposition, prepolar_verdict, quasimatrix_equations, SurfaceData,
};
use crate::volume::VolumeConvention;

pub const DEFAULT_TRIALS: u32 = 64;

/// A variety ready for computations, with its ambient coordinates.
#[derive(Debug, Clone)]
pub struct Context {
    pub spec: VarietySpec,
    pub x: ToricVariety,
    pub surface: Option<SurfaceData>,
}

impl Context {
    pub fn new(spec: VarietySpec) -> Result<Self> {
        let (x, surface) = match &spec {
            VarietySpec::Surface { p, q } => {
                let s = SurfaceData::new(*p, *q)?;
                (s.variety()?, Some(s))
            }
            VarietySpec::General {
                sigma_rays,
                semigroup_generators,
            } => {
                let rays: Vec<LatticePoint> =
                    sigma_rays.iter().map(|r| LatticePoint::from_i64(r)).collect();
                let gens = semigroup_generators
                    .iter()
                    .map(|g| LatticePoint::from_i64(g))
                    .collect();
                (ToricVariety::new(&rays, gens)?, None)
            }
            VarietySpec::Affine { n } => (ToricVariety::affine_space(*n)?, None),
        };
        Ok(Context { spec, x, surface })
    }

    pub fn nvars(&self) -> usize {
        self.x.generators.len()
    }

    fn info(&self) -> VarietyInfo {
        VarietyInfo {
            spec: self.spec.clone(),
            d: self.x.d,
            ambient_dim: self.nvars(),
            sigma_rays: self.x.sigma.rays.clone(),
            dual_rays: self.x.sigma_dual.rays.clone(),
            generators: self.x.generators.clone(),
            faces: self
                .x
                .faces
                .iter()
                .map(|f| FaceInfo {
                    id: f.id,
                    dim: f.dim,
                    span_rays: f.span_rays.clone(),
                    generator_indices: f.generator_indices.iter().map(|i| i + 1).collect(),
                    smooth_orbit: f.dual_face_is_regular(),
                })
                .collect(),
        }
    }
}

/// One task with its polynomials still in text form.
#[derive(Debug, Clone)]
pub struct Job {
    pub kind: TaskKind,
    pub f: Option<String>,
    pub g: Option<String>,
    /// Deformations added to `f` (multiplied by `t`) and to `g` (by `s`).
    pub h: Vec<String>,
    pub l: Vec<String>,
    pub samples: Option<Vec<(BigRational, BigRational)>>,
    pub mode: Option<VolumeConvention>,
    pub seed: u64,
    pub trials: u32,
    pub prepolar: bool,
    pub euler_table: BTreeMap<usize, BigInt>,
    pub assumptions: Vec<String>,
}

impl Job {
    pub fn new(kind: TaskKind) -> Self {
        Job {
            kind,
            f: None,
            g: None,
            h: Vec::new(),
            l: Vec::new(),
            samples: None,
            mode: None,
            seed: 0,
            trials: DEFAULT_TRIALS,
            prepolar: false,
            euler_table: BTreeMap::new(),
            assumptions: Vec::new(),
        }
    }

    fn from_spec(spec: &TaskSpec, polys: &BTreeMap<String, String>) -> Result<Self> {
        let lookup = |name: &String| {
            polys
                .get(name)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("undeclared polynomial {name:?}")))
        };
        let mut job = Job::new(spec.kind);
        job.f = spec.inputs.f.as_ref().map(lookup).transpose()?;
        job.g = spec.inputs.g.as_ref().map(lookup).transpose()?;
        job.mode = spec.mode.as_deref().map(str::parse).transpose()?;
        job.seed = spec.seed.unwrap_or(0);
        job.trials = spec.trials.unwrap_or(DEFAULT_TRIALS);
        job.prepolar = spec.prepolar;
        job.assumptions = spec.assumptions.clone();
        if let Some(table) = &spec.euler_table {
            for (k, v) in table {
                let id = k
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("euler_table key {k:?} is not a face id")))?;
                job.euler_table.insert(id, BigInt::from(*v));
            }
        }
        if let Some(fam) = &spec.family {
            job.h = fam.deformations.f.iter().map(lookup).collect::<Result<_>>()?;
            job.l = fam.deformations.g.iter().map(lookup).collect::<Result<_>>()?;
            if let Some(samples) = &fam.samples {
                job.samples = Some(
                    samples
                        .iter()
                        .map(|[s, t]| Ok((parse_rational(s)?, parse_rational(t)?)))
                        .collect::<Result<_>>()?,
                );
            }
        }
        Ok(job)
    }
}

/// Parses `"a"` or `"a/b"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("not an exact rational: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn default_mode(kind: TaskKind) -> VolumeConvention {
    match kind {
        TaskKind::BruceRoberts => VolumeConvention::Strict,
        _ => VolumeConvention::PaperExample,
    }
}

struct Inputs {
    f: Option<AmbientPolynomial>,
    g: Option<AmbientPolynomial>,
    h: Vec<AmbientPolynomial>,
    l: Vec<AmbientPolynomial>,
}

fn parse_inputs(ctx: &Context, job: &Job) -> Result<Inputs> {
    let n = ctx.nvars();
    let family = job.kind == TaskKind::Family;
    let mut out = Inputs {
        f: None,
        g: None,
        h: Vec::new(),
        l: Vec::new(),
    };
    // In a family, `f` may carry a `t`-linear part and `g` an `s`-linear part.
    let split = |text: &str, allowed: (u64, u64), name: &str| -> Result<(AmbientPolynomial, Option<AmbientPolynomial>)> {
        if !family {
            return Ok((parse_polynomial(text, n)?, None));
        }
        let parsed = parse_family_polynomial(text, n)?;
        if let Some(bad) = parsed.parts.keys().find(|k| **k != (0, 0) && **k != allowed) {
            return Err(Error::InvalidInput(format!(
                "{name} may only be linear in its own parameter, found degree t^{} s^{}",
                bad.0, bad.1
            )));
        }
        let lin = parsed.part(allowed.0, allowed.1);
        Ok((parsed.part(0, 0), (!lin.is_zero()).then_some(lin)))
    };
    if let Some(text) = &job.f {
        let (base, lin) = split(text, (1, 0), "f")?;
        out.f = Some(base);
        out.h.extend(lin);
    }
    if let Some(text) = &job.g {
        let (base, lin) = split(text, (0, 1), "g")?;
        out.g = Some(base);
        out.l.extend(lin);
    }
    for text in &job.h {
        out.h.push(parse_polynomial(text, n)?);
    }
    for text in &job.l {
        out.l.push(parse_polynomial(text, n)?);
    }
    Ok(out)
}

fn nonzero(p: &AmbientPolynomial, x: &ToricVariety, name: &str) -> Result<LatticePolynomial> {
    let lp = p.to_lattice(x)?;
    if lp.is_zero() {
        return Err(Error::ZeroPolynomial(name.into()));
    }
    Ok(lp)
}

fn required<'a>(p: &'a Option<AmbientPolynomial>, name: &str, kind: TaskKind) -> Result<&'a AmbientPolynomial> {
    p.as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("{kind} needs the polynomial {name}")))
}

fn euler_table(ctx: &Context, job: &Job, assumptions: &mut Vec<String>) -> EulerTable {
    let mut eu = EulerTable::smooth_strata(&ctx.x);
    let singular: Vec<usize> = ctx
        .x
        .faces
        .iter()
        .filter(|f| f.dim > 0 && f.dim < ctx.x.d && !f.dual_face_is_regular())
        .map(|f| f.id)
        .collect();
    if singular.is_empty() {
        assumptions.push("Eu_X = 1 along every positive-dimensional orbit (X is smooth off the origin)".into());
    }
    for (id, v) in &job.euler_table {
        eu.set(*id, v.clone());
    }
    if !job.euler_table.is_empty() {
        assumptions.push(format!(
            "Eu_X supplied for faces {:?}",
            job.euler_table.keys().collect::<Vec<_>>()
        ));
    }
    eu
}

fn run_heuristic(
    ctx: &Context,
    name: &str,
    ci: &CompleteIntersection,
    job: &Job,
    salt: u64,
    heuristics: &mut Vec<NamedHeuristic>,
    failures: &mut Vec<String>,
) -> Result<()> {
    let seed = crate::nondegeneracy::mix_seed(job.seed, &[100, salt]);
    let report = nondegeneracy_heuristic(&ctx.x, ci, job.trials, seed)?;
    if report.is_degenerate() {
        failures.push(format!("DegenerateWitness: {name} is degenerate"));
    }
    heuristics.push(NamedHeuristic {
        name: name.to_string(),
        report,
    });
    Ok(())
}

pub fn run_job(ctx: &Context, job: &Job) -> Result<TaskOutcome> {
    let kind = job.kind;
    let x = &ctx.x;
    let inputs = parse_inputs(ctx, job)?;
    let mode = job.mode.unwrap_or_else(|| default_mode(kind));
    let mut assumptions = job.assumptions.clone();
    let mut heuristics = Vec::new();
    let mut failures = Vec::new();

    let f = if kind.needs_f() {
        Some(nonzero(required(&inputs.f, "f", kind)?, x, "f")?)
    } else {
        None
    };
    let g = if kind.needs_g() || (kind == TaskKind::Family && inputs.g.is_some()) {
        Some(nonzero(required(&inputs.g, "g", kind)?, x, "g")?)
    } else if kind == TaskKind::Check {
        inputs.g.as_ref().map(|g| nonzero(g, x, "g")).transpose()?
    } else {
        None
    };

    if let Some(f) = &f {
        let hyp = CompleteIntersection::hypersurface(f.clone());
        run_heuristic(ctx, "f", &hyp, job, 0, &mut heuristics, &mut failures)?;
        if let Some(g) = &g {
            let pair = CompleteIntersection::pair(g.clone(), f.clone(), true);
            run_heuristic(ctx, "(g, f)", &pair, job, 1, &mut heuristics, &mut failures)?;
        }
    }

    let eu = euler_table(ctx, job, &mut assumptions);
    let int = |name: &str, v: &BigInt| ResultLine::int(name, v);
    let (detail, results) = match kind {
        TaskKind::Brasselet => {
            let r = brasselet_hypersurface(x, f.as_ref().unwrap(), &eu, mode)?;
            let res = vec![int("B", &r.total)];
            (Detail::Invariant(r), res)
        }
        TaskKind::BrasseletCi => {
            let ci = CompleteIntersection::pair(g.clone().unwrap(), f.clone().unwrap(), true);
            let r = if job.prepolar {
                brasselet_ci_prepolar(x, &ci, &eu, mode)?
            } else {
                assumptions.push("Eu_{X^g} = 1 along every positive-dimensional orbit".into());
                brasselet_ci(x, &ci, &EulerTable::ones(x), mode)?
            };
            let res = vec![int("B^g", &r.total)];
            (Detail::Invariant(r), res)
        }
        TaskKind::EuOrigin => {
            let r = euler_obstruction_origin(x, &eu, job.seed)?;
            let res = vec![int("Eu(0)", &r.value)];
            (Detail::EuOrigin(r), res)
        }
        TaskKind::EuF => {
            let b = brasselet_hypersurface(x, f.as_ref().unwrap(), &eu, mode)?;
            let e = euler_obstruction_origin(x, &eu, job.seed)?;
            let value = euler_obstruction_of_function(&e.value, &b);
            let res = vec![int("Eu(0)", &e.value), int("B", &b.total), int("Eu_f(0)", &value)];
            (Detail::EuF { eu_origin: e, brasselet: b }, res)
        }
        TaskKind::Morse => {
            let (g, f) = (g.clone().unwrap(), f.clone().unwrap());
            let on_x = brasselet_hypersurface(x, &f, &eu, mode)?;
            let ci = CompleteIntersection::pair(g, f, true);
            let on_xg = brasselet_ci_prepolar(x, &ci, &eu, mode)?;
            let m = morse_number(&on_x, &on_xg, x.d);
            if let Some(w) = &m.warning {
                failures.push(w.clone());
            }
            let res = vec![int("B", &on_x.total), int("B^g", &on_xg.total), int("n", &m.value)];
            (Detail::Morse { on_x, on_xg, morse: m }, res)
        }
        TaskKind::Gsv => {
            let r = gsv_index(x, g.as_ref().unwrap(), f.as_ref().unwrap(), mode)?;
            let res = vec![int("GSV", &r.value)];
            (Detail::Gsv(r), res)
        }
        TaskKind::Milnor => {
            let r = milnor_number(x, f.as_ref().unwrap())?;
            if !r.convenient {
                assumptions.push("f is not convenient; the count assumes an isolated critical point".into());
            }
            let res = vec![int("mu", &r.mu)];
            (Detail::Milnor(r), res)
        }
        TaskKind::BruceRoberts => {
            let r = bruce_roberts(x, g.as_ref().unwrap(), f.as_ref().unwrap(), mode, job.seed)?;
            assumptions.push("Eu_{X^g} = 1 along every positive-dimensional orbit".into());
            let res = vec![int("mu_BR", &r.value)];
            (Detail::BruceRoberts(r), res)
        }
        TaskKind::Family => {
            let lat = |ps: &[AmbientPolynomial]| -> Result<Vec<LatticePolynomial>> {
                ps.iter().map(|p| p.to_lattice(x)).collect()
            };
            let family = Family {
                g: g.clone(),
                f: f.clone().unwrap(),
                h: lat(&inputs.h)?,
                l: lat(&inputs.l)?,
            };
            let samples = job.samples.clone().unwrap_or_else(default_samples);
            let r = family_constancy_report(x, &family, &eu, &samples, mode, job.seed)?;
            let mut res = Vec::new();
            if let Some(first) = r.samples.first() {
                res.push(int("B", &first.b_x));
                res.push(int("Eu_f(0)", &first.eu_f));
                if let (Some(bg), Some(n), Some(gsv)) = (&first.b_xg, &first.morse, &first.gsv) {
                    res.push(int("B^g", bg));
                    res.push(int("n", n));
                    res.push(int("GSV", gsv));
                }
            }
            (Detail::Family(r), res)
        }
        TaskKind::SurfaceInfo => {
            let s = ctx
                .surface
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("surface-info needs a surface variety".into()))?;
            let info = SurfaceInfo {
                equations: quasimatrix_equations(s)
                    .iter()
                    .map(|b| b.to_polynomial().to_string())
                    .collect(),
                orbits: orbit_decomposition(s)?,
                data: s.clone(),
            };
            let res = vec![
                ResultLine::int("generators", &BigInt::from(s.ambient_dim)),
                ResultLine::text("determinantal", &s.determinantal.to_string()),
            ];
            (Detail::Surface(info), res)
        }
        TaskKind::Check => {
            let mut detail = CheckDetail {
                g_isolated: None,
                prepolar: None,
            };
            let mut res = Vec::new();
            let degenerate = heuristics.iter().any(|h| h.report.is_degenerate());
            res.push(ResultLine::text(
                "nondegeneracy",
                if degenerate { "degenerate_witness" } else { "no_witness_found" },
            ));
            if let (Some(g), true) = (&g, x.d == 2) {
                let iso = meets_both_rays(x, g);
                if !iso {
                    failures.push("g does not have an isolated singularity".into());
                }
                let v = prepolar_verdict(x, g, f.as_ref().unwrap())?;
                if !v.is_prepolar() {
                    failures.push(format!("NotPrepolar: {v:?}"));
                }
                res.push(ResultLine::text("isolated", &iso.to_string()));
                res.push(ResultLine::text("prepolar", &v.is_prepolar().to_string()));
                detail.g_isolated = Some(iso);
                detail.prepolar = Some(v);
            } else if g.is_some() {
                assumptions.push("isolatedness and prepolarity are only decided on surfaces".into());
            }
            (Detail::Check(detail), res)
        }
    };

    Ok(TaskOutcome {
        kind,
        mode,
        seed: job.seed,
        inputs: TaskInputsEcho {
            f: inputs.f.as_ref().map(|p| p.to_string()),
            g: inputs.g.as_ref().map(|p| p.to_string()),
            h: inputs.h.iter().map(|p| p.to_string()).collect(),
            l: inputs.l.iter().map(|p| p.to_string()).collect(),
        },
        assumptions,
        nondegeneracy: heuristics,
        hypothesis_failures: failures,
        detail,
        results,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Detail {
    Invariant(InvariantReport),
    EuOrigin(EuOriginReport),
    EuF {
        eu_origin: EuOriginReport,
        brasselet: InvariantReport,
    },
    Morse {
        on_x: InvariantReport,
        on_xg: InvariantReport,
        morse: MorseReport,
    },
    Gsv(GsvReport),
    Milnor(MilnorReport),
    BruceRoberts(BruceRobertsReport),
    Family(FamilyReport),
    Surface(SurfaceInfo),
    Check(CheckDetail),
}

/// Runs jobs in order on one variety.
pub fn run_jobs(ctx: &Context, jobs: &[Job]) -> Result<Report> {
    let tasks = jobs.iter().map(|j| run_job(ctx, j)).collect::<Result<_>>()?;
    Ok(Report::new(ctx.info(), tasks))
}

pub fn run_problem(problem: &ProblemFile) -> Result<Report> {
    let ctx = Context::new(problem.variety.clone())?;
    let jobs: Vec<Job> = problem
        .tasks
        .iter()
        .map(|t| Job::from_spec(t, &problem.polynomials))
        .collect::<Result<_>>()?;
    run_jobs(&ctx, &jobs)
}
