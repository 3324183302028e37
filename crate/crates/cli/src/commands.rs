//! The six subcommands, each producing a [`RunReport`].

use std::path::PathBuf;
use std::time::Instant;

use hypcone::hyperbolicity::{
    check_hyperbolic, count_components_with, in_cone, line_is_real_rooted, same_component, same_projective_region,
    ComponentParams, ComponentReport, HypVerdict, VerdictKind, DEFAULT_SPHERE_SAMPLES, DEFAULT_TRIALS,
};
use hypcone::planecurve::{
    demonstrate_obstruction, orientation_consistency, tangent_avoidance_check, AvoidanceReport, ConsistencyReport,
    ConsistencyVerdict, Smoothness, WalkthroughReport,
};
use hypcone::realroots::{count_real_roots, default_width, isolate_roots, squarefree_part, Interval};
use hypcone::rng::derive_seed;
use hypcone::scalar::parse_rational;
use hypcone::sections::{
    distinct_pair_representatives, random_plane_through, section_component_count, verify_unique_pair, Irreducibility,
    SectionReport, VerdictClass, CANDIDATE_SECTIONS,
};
use hypcone::{Error, MultiPolyQ, Point, PointQ, Scalar};
use serde_json::{json, Map, Value};
use thiserror::Error as ThisError;

use crate::corpus::{load_default, resolve, CorpusEntry, CorpusError};
use crate::report::{curve_point, line, opt_point, point, rational, RunReport};
use crate::svg::{render_svg, Arrow, Figure};

/// Curve points compared by `orient` unless `--samples` says otherwise.
pub const DEFAULT_ORIENT_POINTS: usize = 100;
/// Lines drawn through `e` by the avoidance check.
pub const AVOIDANCE_LINES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Cone,
    Components,
    Orient,
    Section,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Cone => "cone",
            Command::Components => "components",
            Command::Orient => "orient",
            Command::Section => "section",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunArgs {
    pub poly: String,
    pub e: Option<PointQ>,
    pub x: Option<PointQ>,
    pub samples: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub svg: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "E_USAGE",
            CliError::Corpus(e) => e.code(),
            CliError::Core(e) => e.code(),
            CliError::Output { .. } => "E_OUTPUT",
        }
    }
}

/// Completed runs exit 0 unless something needs a human look.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Expected,
    Review,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Expected => 0,
            Status::Review => 2,
        }
    }

    fn flag_if(cond: bool) -> Status {
        if cond {
            Status::Review
        } else {
            Status::Expected
        }
    }

    fn and(self, other: Status) -> Status {
        Status::flag_if(self == Status::Review || other == Status::Review)
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub status: Status,
    pub svg: Option<String>,
}

/// Parses `a,b,c` with integer or `p/q` coordinates.
pub fn parse_point(text: &str) -> Result<PointQ, CliError> {
    text.split(',')
        .map(|c| parse_rational(c).ok_or_else(|| CliError::Usage(format!("bad coordinate {c:?} in {text:?}"))))
        .collect::<Result<Vec<_>, _>>()
        .map(Point)
}

fn require(p: &Option<PointQ>, flag: &str, entry: &CorpusEntry) -> Result<PointQ, CliError> {
    let p = p
        .clone()
        .ok_or_else(|| CliError::Usage(format!("{flag} is required")))?;
    if p.dim() != entry.nvars {
        return Err(Error::DimensionMismatch {
            expected: entry.nvars,
            found: p.dim(),
        }
        .into());
    }
    if p.is_zero() {
        return Err(CliError::Usage(format!("{flag} must be nonzero")));
    }
    Ok(p)
}

fn require_plane(entry: &CorpusEntry) -> Result<(), CliError> {
    if entry.nvars == 3 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: 3,
            found: entry.nvars,
        }
        .into())
    }
}

fn coords(p: &Option<PointQ>) -> Value {
    match p {
        Some(p) => json!(p
            .coords()
            .iter()
            .map(hypcone::scalar::rational_string)
            .collect::<Vec<_>>()),
        None => Value::Null,
    }
}

fn poly_json(entry: &CorpusEntry) -> Value {
    json!({
        "id": entry.id,
        "nvars": entry.nvars,
        "degree": entry.degree,
        "polynomial": entry.poly.to_string(),
        "irreducible": entry.irreducible.tag(),
        "known_pairs": entry.known_pairs,
    })
}

/// Loads the corpus named by `args` and runs `cmd`.
pub fn run(cmd: Command, args: &RunArgs) -> Result<Outcome, CliError> {
    let (corpus, name) = load_default(args.corpus.as_deref())?;
    run_with_corpus(cmd, args, &corpus, &name)
}

pub fn run_with_corpus(
    cmd: Command,
    args: &RunArgs,
    corpus: &[CorpusEntry],
    corpus_name: &str,
) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let entry = resolve(corpus, &args.poly)?;
    let samples = args.samples.unwrap_or(match cmd {
        Command::Orient => DEFAULT_ORIENT_POINTS,
        _ => DEFAULT_SPHERE_SAMPLES,
    });
    let trials = args.trials.unwrap_or(DEFAULT_TRIALS);
    if samples == 0 || trials == 0 {
        return Err(CliError::Usage("--samples and --trials must be positive".into()));
    }
    let want_svg = args.svg.is_some();
    let ctx = Ctx {
        entry: &entry,
        args,
        samples,
        trials,
        want_svg,
    };
    let (result, status, figure) = match cmd {
        Command::Check => cmd_check(&ctx)?,
        Command::Cone => cmd_cone(&ctx)?,
        Command::Components => cmd_components(&ctx)?,
        Command::Orient => cmd_orient(&ctx)?,
        Command::Section => cmd_section(&ctx)?,
        Command::Verify => cmd_verify(&ctx)?,
    };
    let svg = match figure {
        Some(fig) if want_svg => Some(render_svg(&entry.poly, &fig)?),
        _ => None,
    };
    let mut params = Map::new();
    params.insert("poly".into(), json!(args.poly));
    params.insert("corpus".into(), json!(corpus_name));
    params.insert("e".into(), coords(&args.e));
    params.insert("x".into(), coords(&args.x));
    params.insert("samples".into(), json!(samples));
    params.insert("trials".into(), json!(trials));
    params.insert("seed".into(), json!(args.seed));
    let mut timings = Map::new();
    timings.insert("total_ms".into(), json!(start.elapsed().as_millis() as u64));
    Ok(Outcome {
        report: RunReport {
            command: cmd.name().to_string(),
            params: Value::Object(params),
            seed: args.seed,
            result,
            timings,
        },
        status,
        svg,
    })
}

struct Ctx<'a> {
    entry: &'a CorpusEntry,
    args: &'a RunArgs,
    samples: usize,
    trials: usize,
    want_svg: bool,
}

type Produced = (Value, Status, Option<Figure>);

fn verdict_json(v: &HypVerdict) -> Value {
    let (method, trials) = match &v.kind {
        VerdictKind::CertifiedHyperbolic { method } => (json!(method.tag()), Value::Null),
        VerdictKind::ProbablyHyperbolic { trials } => (Value::Null, json!(trials)),
        VerdictKind::CertifiedNot { .. } => (Value::Null, Value::Null),
    };
    json!({
        "verdict": v.kind_tag(),
        "certified": v.is_certified(),
        "method": method,
        "trials": trials,
        "witness": opt_point(v.witness()),
        "notes": v.notes,
    })
}

/// Re-derives the certificate behind a witness line.
fn witness_check(h: &MultiPolyQ, e: &PointQ, w: &PointQ) -> Result<Value, CliError> {
    let u = h.restrict_line(e, w)?;
    let s = squarefree_part(&u)?;
    let distinct = count_real_roots(&s, &Interval::real_line())?;
    Ok(json!({
        "restriction": u.to_string(),
        "squarefree_part": s.to_string(),
        "squarefree_degree": s.degree(),
        "distinct_real_roots": distinct,
        "reverified": !line_is_real_rooted(h, e, w)?,
    }))
}

fn cmd_check(ctx: &Ctx) -> Result<Produced, CliError> {
    let h = &ctx.entry.poly;
    let e = require(&ctx.args.e, "--e", ctx.entry)?;
    let v = check_hyperbolic(h, &e, ctx.trials, ctx.args.seed)?;
    let mut result = Map::new();
    result.insert("poly".into(), poly_json(ctx.entry));
    result.insert("e".into(), point(&e));
    if let Value::Object(m) = verdict_json(&v) {
        result.extend(m);
    }
    let mut status = Status::Expected;
    let check = match v.witness() {
        Some(w) => {
            let c = witness_check(h, &e, w)?;
            status = Status::flag_if(c["reverified"] != json!(true));
            c
        }
        None => Value::Null,
    };
    result.insert("witness_check".into(), check);
    let figure = (ctx.entry.nvars == 3).then(|| Figure {
        title: format!("{}: check at {e}", ctx.entry.id),
        center: v.accepts().then(|| e.clone()),
        cone_samples: vec![(e.clone(), 0)],
        arrows: Vec::new(),
    });
    Ok((Value::Object(result), status, figure))
}

fn cmd_cone(ctx: &Ctx) -> Result<Produced, CliError> {
    let h = &ctx.entry.poly;
    let e = require(&ctx.args.e, "--e", ctx.entry)?;
    let x = require(&ctx.args.x, "--x", ctx.entry)?;
    let ev = check_hyperbolic(h, &e, ctx.trials, ctx.args.seed)?;
    if let Some(w) = ev.witness() {
        return Err(Error::InvalidDirection {
            base: e,
            witness: w.clone(),
        }
        .into());
    }
    let member = in_cone(h, &e, &x)?;
    let hx = h.evaluate(&x)?;
    let x_verdict = if hx.sign_i8() == 0 {
        None
    } else {
        Some(check_hyperbolic(h, &x, ctx.trials, derive_seed(ctx.args.seed, 1))?)
    };
    let same = match &x_verdict {
        Some(v) if v.accepts() => json!(same_component(h, &e, &x)?),
        Some(_) => json!(false),
        None => Value::Null,
    };
    let u = h.restrict_line(&e, &-&x)?;
    let eigen: Vec<Value> = isolate_roots(&u, &default_width())?
        .iter()
        .map(|r| {
            let (lo, hi) = match &r.exact {
                Some(t) => (t.clone(), t.clone()),
                None => (r.lo.clone(), r.hi.clone()),
            };
            json!({ "lo": rational(&lo), "hi": rational(&hi), "multiplicity": r.multiplicity })
        })
        .collect();
    let result = json!({
        "poly": poly_json(ctx.entry),
        "e": point(&e),
        "x": point(&x),
        "e_verdict": ev.kind_tag(),
        "x_verdict": x_verdict.as_ref().map(HypVerdict::kind_tag),
        "in_cone": member,
        "same_component": same,
        "same_projective_region": same_projective_region(h, &e, &x)?,
        "eigenvalues": eigen,
    });
    let figure = (ctx.entry.nvars == 3).then(|| Figure {
        title: format!("{}: cone of {e}", ctx.entry.id),
        center: Some(e.clone()),
        cone_samples: vec![(e.clone(), 0), (x.clone(), if member { 0 } else { 1 })],
        arrows: Vec::new(),
    });
    Ok((result, Status::Expected, figure))
}

/// Pair index of each component, numbered in order of first appearance.
fn pair_groups(r: &ComponentReport) -> Vec<usize> {
    let mut group = vec![usize::MAX; r.components.len()];
    let mut next = 0;
    for i in 0..r.components.len() {
        if group[i] == usize::MAX {
            group[i] = next;
            group[r.pair_map[i]] = next;
            next += 1;
        }
    }
    group
}

fn components_json(r: &ComponentReport, with_samples: bool) -> Value {
    let groups = pair_groups(r);
    let comps: Vec<Value> = r
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut m = Map::new();
            m.insert("index".into(), json!(i));
            m.insert("representative".into(), point(&c.representative));
            m.insert("size".into(), json!(c.members.len()));
            m.insert("certified".into(), json!(c.certified));
            m.insert("partner".into(), json!(r.pair_map[i]));
            m.insert("pair".into(), json!(groups[i]));
            if with_samples {
                m.insert("members".into(), json!(c.members));
            }
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("sample_count".into(), json!(r.sample_count));
    m.insert("hyperbolic_count".into(), json!(r.hyperbolic_samples.len()));
    m.insert("zero_samples".into(), json!(r.zero_samples));
    m.insert("rejected_samples".into(), json!(r.rejected_samples));
    m.insert("component_count".into(), json!(r.components.len()));
    m.insert("pairs".into(), json!(r.pairs));
    m.insert("components".into(), Value::Array(comps));
    if with_samples {
        m.insert(
            "samples".into(),
            Value::Array(r.hyperbolic_samples.iter().map(point).collect()),
        );
    }
    Value::Object(m)
}

fn component_figure(title: String, r: &ComponentReport) -> Figure {
    let groups = pair_groups(r);
    let mut cone_samples = Vec::new();
    for (i, c) in r.components.iter().enumerate() {
        for &m in &c.members {
            cone_samples.push((r.hyperbolic_samples[m].clone(), groups[i]));
        }
    }
    Figure {
        title,
        center: r.components.first().map(|c| c.representative.clone()),
        cone_samples,
        arrows: Vec::new(),
    }
}

fn component_params(ctx: &Ctx, seed: u64) -> ComponentParams {
    ComponentParams {
        sphere_samples: ctx.samples,
        trials: ctx.trials,
        seed,
        forced: Vec::new(),
    }
}

fn cmd_components(ctx: &Ctx) -> Result<Produced, CliError> {
    let h = &ctx.entry.poly;
    let known = ctx.entry.known_pairs;
    let (body, pairs, figure) = match count_components_with(h, &component_params(ctx, ctx.args.seed)) {
        Ok(r) => {
            let figure = (ctx.entry.nvars == 3).then(|| component_figure(format!("{}: cones", ctx.entry.id), &r));
            (components_json(&r, true), r.pairs, figure)
        }
        Err(Error::NotFoundAtThisResolution { samples }) => {
            let body = json!({
                "sample_count": 2 * samples,
                "hyperbolic_count": 0,
                "component_count": 0,
                "pairs": 0,
                "components": [],
                "note": format!("no hyperbolic direction among {samples} sampled pairs"),
            });
            let figure = (ctx.entry.nvars == 3).then(|| Figure {
                title: format!("{}: no cones found", ctx.entry.id),
                ..Figure::default()
            });
            (body, 0, figure)
        }
        Err(e) => return Err(e.into()),
    };
    let matches = known.map(|k| k == pairs);
    let mut result = Map::new();
    result.insert("poly".into(), poly_json(ctx.entry));
    if let Value::Object(m) = body {
        result.extend(m);
    }
    result.insert("known_pairs".into(), json!(known));
    result.insert("matches_known".into(), json!(matches));
    Ok((Value::Object(result), Status::flag_if(matches == Some(false)), figure))
}

fn consistency_json(r: &ConsistencyReport) -> Value {
    let (verdict, product, positive, negative) = match &r.verdict {
        ConsistencyVerdict::Constant { product } => ("Constant", json!(product), Value::Null, Value::Null),
        ConsistencyVerdict::NonConstant { positive, negative } => (
            "NonConstant",
            Value::Null,
            json!([positive.0, positive.1]),
            json!([negative.0, negative.1]),
        ),
    };
    let samples: Vec<Value> = r
        .samples
        .iter()
        .map(|s| {
            json!({
                "point": curve_point(&s.point),
                "sign1": s.sign1,
                "sign2": s.sign2,
                "product": s.product,
            })
        })
        .collect();
    json!({
        "screen": line(&r.screen),
        "n_angles": r.n_angles,
        "points_examined": r.points_examined,
        "certified_points": r.samples.len(),
        "certified_fraction": r.certified_fraction(),
        "excluded": {
            "singular": r.excluded.singular,
            "inconclusive": r.excluded.inconclusive,
            "ramified": r.excluded.ramified,
            "on_screen": r.excluded.on_screen,
        },
        "verdict": verdict,
        "product": product,
        "positive_at": positive,
        "negative_at": negative,
        "samples": samples,
    })
}

fn walkthrough_json(w: &WalkthroughReport) -> Value {
    json!({
        "outcome": format!("{:?}", w.outcome),
        "failed_step": w.failed_step(),
        "p1": w.p1.as_ref().map(curve_point),
        "t1": w.t1.as_ref().map(|t| json!({ "line": line(&t.line), "exact": t.exact })),
        "g_anchor": opt_point(w.g_anchor.as_ref()),
        "g": w.g.as_ref().map(line),
        "p2": w.p2.as_ref().map(curve_point),
        "t2": w.t2.as_ref().map(|t| json!({ "line": line(&t.line), "exact": t.exact })),
        "signs": w.signs,
        "expectations": w.expectations.iter().map(|x| json!({ "step": x.step, "holds": x.holds })).collect::<Vec<_>>(),
    })
}

fn avoidance_json(r: &AvoidanceReport) -> Value {
    json!({
        "lines_checked": r.lines_checked,
        "pass": r.pass,
        "smooth": r.count(Smoothness::CertifiedSmooth),
        "singular": r.count(Smoothness::CertifiedSingular),
        "inconclusive": r.count(Smoothness::Inconclusive),
        "multiple_roots": r.multiple_roots.iter().map(|m| json!({
            "line_dir": point(&m.line_dir),
            "multiplicity": m.multiplicity,
            "attribution": m.attribution.tag(),
            "approx": m.approx,
        })).collect::<Vec<_>>(),
    })
}

fn error_json(e: &Error) -> Value {
    json!({ "error": { "code": e.code(), "message": e.to_string() } })
}

/// Oriented tangent at each compared point, as induced by `e1`.
fn arrows(c: &MultiPolyQ, r: &ConsistencyReport) -> Vec<Arrow> {
    let cf = c.to_f64();
    let grad = cf.gradient();
    r.samples
        .iter()
        .filter_map(|s| {
            let x = s.point.approx();
            let xp = Point(x.to_vec());
            let g: Vec<f64> = grad.iter().map(|d| d.evaluate(&xp).ok()).collect::<Option<_>>()?;
            let w = [
                x[1] * g[2] - x[2] * g[1],
                x[2] * g[0] - x[0] * g[2],
                x[0] * g[1] - x[1] * g[0],
            ];
            let sgn = s.sign1 as f64;
            Some(Arrow {
                at: x,
                tangent: [sgn * w[0], sgn * w[1], sgn * w[2]],
            })
        })
        .collect()
}

fn cmd_orient(ctx: &Ctx) -> Result<Produced, CliError> {
    require_plane(ctx.entry)?;
    let c = &ctx.entry.poly;
    let e1 = require(&ctx.args.e, "--e", ctx.entry)?;
    let e2 = require(&ctx.args.x, "--x", ctx.entry)?;
    let seed = ctx.args.seed;
    let consistency = orientation_consistency(c, &e1, &e2, ctx.samples, seed)?;
    let walkthrough = match demonstrate_obstruction(c, &e1, &e2, derive_seed(seed, 1)) {
        Ok(w) => walkthrough_json(&w),
        Err(e) => error_json(&e),
    };
    let avoidance = tangent_avoidance_check(c, &e1, AVOIDANCE_LINES, derive_seed(seed, 2))?;
    let non_constant = matches!(consistency.verdict, ConsistencyVerdict::NonConstant { .. });
    let status = Status::flag_if(non_constant && ctx.entry.irreducible == Irreducibility::DeclaredTrue)
        .and(Status::flag_if(!avoidance.pass));
    let figure = ctx.want_svg.then(|| Figure {
        title: format!("{}: orientations from {e1} and {e2}", ctx.entry.id),
        center: Some(e1.clone()),
        cone_samples: vec![(e1.clone(), 0), (e2.clone(), 1)],
        arrows: arrows(c, &consistency),
    });
    let result = json!({
        "poly": poly_json(ctx.entry),
        "e1": point(&e1),
        "e2": point(&e2),
        "consistency": consistency_json(&consistency),
        "walkthrough": walkthrough,
        "avoidance": avoidance_json(&avoidance),
    });
    Ok((result, status, figure))
}

fn section_json(index: usize, seed: u64, r: &SectionReport) -> Value {
    json!({
        "index": index,
        "seed": seed,
        "basis": { "a": point(&r.basis.a), "b": point(&r.basis.b), "c": point(&r.basis.c) },
        "section": r.section.to_string(),
        "component_count": r.components.components.len(),
        "pairs": r.components.pairs,
        "representatives": r.components.components.iter().map(|c| point(&c.representative)).collect::<Vec<_>>(),
        "image_verdicts": r.image_verdicts.iter().map(HypVerdict::kind_tag).collect::<Vec<_>>(),
        "image_components": r.image_components,
        "separates_images": r.separates_images(),
    })
}

/// Default plane spanning directions: representatives of two pairs, or a
/// representative and an independent member of its cone.
fn default_span(ctx: &Ctx) -> Result<(PointQ, PointQ), CliError> {
    let r = count_components_with(&ctx.entry.poly, &component_params(ctx, ctx.args.seed))?;
    if let Some(pair) = distinct_pair_representatives(&r) {
        return Ok(pair);
    }
    let first = &r.components[0];
    let other = first
        .members
        .iter()
        .map(|&m| &r.hyperbolic_samples[m])
        .find(|x| !x.is_parallel(&first.representative))
        .ok_or_else(|| CliError::Usage("no second direction sampled; pass --e and --x".into()))?;
    Ok((first.representative.clone(), other.clone()))
}

fn cmd_section(ctx: &Ctx) -> Result<Produced, CliError> {
    let h = &ctx.entry.poly;
    if ctx.entry.nvars < 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: ctx.entry.nvars,
        }
        .into());
    }
    let (e1, e2) = match (&ctx.args.e, &ctx.args.x) {
        (Some(_), Some(_)) => (
            require(&ctx.args.e, "--e", ctx.entry)?,
            require(&ctx.args.x, "--x", ctx.entry)?,
        ),
        (None, None) => default_span(ctx)?,
        _ => return Err(CliError::Usage("pass both --e and --x, or neither".into())),
    };
    let spanned = if same_component(h, &e1, &e2)? { 1 } else { 2 };
    let mut planes = Vec::new();
    let mut status = Status::Expected;
    for i in 0..CANDIDATE_SECTIONS {
        let seed = derive_seed(ctx.args.seed, i as u64 + 1);
        let basis = random_plane_through(h, &e1, &e2, seed)?;
        let r = section_component_count(h, &basis, ctx.samples, seed)?;
        let occupied = match r.image_components {
            [Some(a), Some(b)] => Some(if a == b { 1 } else { 2 }),
            _ => None,
        };
        status = status.and(Status::flag_if(occupied != Some(spanned)));
        planes.push(section_json(i, seed, &r));
    }
    let result = json!({
        "poly": poly_json(ctx.entry),
        "e1": point(&e1),
        "e2": point(&e2),
        "ambient_components_spanned": spanned,
        "planes": planes,
    });
    Ok((result, status, None))
}

fn cmd_verify(ctx: &Ctx) -> Result<Produced, CliError> {
    let entry = ctx.entry;
    let outcome = verify_unique_pair(&entry.id, &entry.poly, entry.irreducible, ctx.samples, ctx.args.seed);
    let mut result = Map::new();
    result.insert("poly".into(), poly_json(entry));
    let (verdict, figure) = match outcome {
        Ok(v) => {
            let reason = match &v.verdict {
                VerdictClass::NotApplicable(why) => json!(why),
                _ => Value::Null,
            };
            result.insert("ambient".into(), components_json(&v.ambient, false));
            result.insert("ambient_pairs".into(), json!(v.ambient_pairs));
            result.insert("verdict".into(), json!(v.verdict.tag()));
            result.insert("reason".into(), reason);
            result.insert(
                "sections".into(),
                Value::Array(
                    v.section_reports
                        .iter()
                        .enumerate()
                        .map(|(i, r)| section_json(i, derive_seed(ctx.args.seed, i as u64 + 1), r))
                        .collect(),
                ),
            );
            let figure = (entry.nvars == 3).then(|| component_figure(format!("{}: verify", entry.id), &v.ambient));
            (v.verdict, figure)
        }
        Err(Error::NotFoundAtThisResolution { samples }) => {
            result.insert("ambient".into(), Value::Null);
            result.insert("ambient_pairs".into(), json!(0));
            result.insert("verdict".into(), json!(VerdictClass::ConsistentWithTheorem.tag()));
            result.insert(
                "reason".into(),
                json!(format!("no hyperbolic direction among {samples} sampled pairs")),
            );
            result.insert("sections".into(), json!([]));
            (VerdictClass::ConsistentWithTheorem, None)
        }
        Err(e) => return Err(e.into()),
    };
    let status = Status::flag_if(verdict == VerdictClass::ViolationCandidate);
    Ok((Value::Object(result), status, figure))
}
