//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command as Process;
use std::time::{Duration, Instant};

use hypcone::hyperbolicity::{
    check_hyperbolic, count_components, in_cone, same_component, same_projective_region, ComponentReport,
};
use hypcone::planecurve::{orientation_consistency, tangent_avoidance_check, ConsistencyVerdict, Smoothness};
use hypcone::realroots::{cauchy_bound, count_real_roots, squarefree_part, Interval};
use hypcone::rng::stream_rng;
use hypcone::scalar::parse_rational;
use hypcone::{MultiPolyQ, Point, PointQ, Rational, Scalar, UniPolyQ};
use hypcone_cli::corpus::{bundled, CorpusEntry};
use hypcone_cli::{run_with_corpus, Command, RunArgs, Status};
use rand::Rng;
use serde_json::Value;

// Pinned tolerances and budgets.
const QUARTIC_SAMPLES: usize = 512;
const QUARTIC_SEED: u64 = 7;
const QUARTIC_BUDGET: Duration = Duration::from_secs(60);
const ONE_PAIR_SEEDS: [u64; 3] = [1, 2, 3];
const ONE_PAIR_BUDGET: Duration = Duration::from_secs(120);
const ORACLE_POLYS: usize = 200;
const ORACLE_BUDGET: Duration = Duration::from_secs(30);
const CONVEXITY_PAIRS: usize = 100;
const CONVEXITY_SAMPLES: usize = 48;
const ORIENT_PAIRS: usize = 10;
const ORIENT_POINTS: usize = 100;
const MIN_CERTIFIED_FRACTION: f64 = 0.8;
const AVOIDANCE_LINES: usize = 64;
const PARALLEL_TOL: f64 = 1e-6;
const SECTION_SEED: u64 = 5;

struct Outcome {
    pass: bool,
    detail: String,
    /// Everything the criterion computed, for the determinism rerun.
    fingerprint: String,
}

fn outcome(pass: bool, detail: String, fingerprint: String) -> Outcome {
    Outcome {
        pass,
        detail,
        fingerprint,
    }
}

fn entry(id: &str) -> CorpusEntry {
    bundled().into_iter().find(|e| e.id == id).expect("corpus id")
}

fn pt(c: &[i64]) -> PointQ {
    Point::from_ints(c)
}

fn parse_exact(v: &Value) -> PointQ {
    Point(
        v["exact"]
            .as_array()
            .expect("exact coordinates")
            .iter()
            .map(|c| parse_rational(c.as_str().unwrap()).unwrap())
            .collect(),
    )
}

/// Runs the binary; returns exit code and the report without timings.
fn hyp(args: &[&str]) -> (Option<i32>, Value) {
    let out = Process::new(env!("CARGO_BIN_EXE_hyp"))
        .args(args)
        .env_remove("HYP_CORPUS")
        .output()
        .expect("binary runs");
    let mut v: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    if let Some(m) = v.as_object_mut() {
        m.remove("timings");
    }
    (out.status.code(), v)
}

fn library(cmd: Command, id: &str, samples: Option<usize>, seed: u64) -> hypcone_cli::Outcome {
    let args = RunArgs {
        poly: id.into(),
        samples,
        seed,
        ..RunArgs::default()
    };
    run_with_corpus(cmd, &args, &bundled(), "bundled").expect("run completes")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let samples = QUARTIC_SAMPLES.to_string();
    let seed = QUARTIC_SEED.to_string();
    let (code, report) = hyp(&[
        "components",
        "--poly",
        "paper_quartic",
        "--samples",
        &samples,
        "--seed",
        &seed,
    ]);
    let elapsed = start.elapsed();
    let r = &report["result"];
    let h = entry("paper_quartic").poly;
    let reps: Vec<PointQ> = r["components"]
        .as_array()
        .map(|c| c.iter().map(|x| parse_exact(&x["representative"])).collect())
        .unwrap_or_default();
    let targets = [pt(&[1, 0, 1]), pt(&[-1, 0, -1]), pt(&[1, 0, -1]), pt(&[-1, 0, 1])];
    // each target shares a component with exactly one representative
    let matched = targets.iter().all(|t| {
        reps.iter()
            .filter(|rep| same_component(&h, rep, t).unwrap_or(false))
            .count()
            == 1
    });
    let pass = code == Some(0)
        && r["component_count"] == 4
        && r["pairs"] == 2
        && reps.len() == 4
        && matched
        && elapsed < QUARTIC_BUDGET;
    let shown: Vec<String> = reps.iter().map(ToString::to_string).collect();
    outcome(
        pass,
        format!(
            "{} components, {} pairs, representatives {}; targets matched: {matched}",
            r["component_count"],
            r["pairs"],
            shown.join(" ")
        ),
        report.to_string(),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    let mut fp = String::new();
    for id in ["lorentz3", "esym2_3", "det_pencil_quartic"] {
        let mut counts = Vec::new();
        for seed in ONE_PAIR_SEEDS {
            let out = library(Command::Components, id, Some(QUARTIC_SAMPLES), seed);
            let n = out.report.result["component_count"].as_u64().unwrap_or(0);
            ok &= n == 2;
            counts.push(n);
            fp.push_str(&out.report.canonical());
        }
        let v = library(Command::Verify, id, None, 1);
        let verdict = v.report.result["verdict"].as_str().unwrap_or("").to_string();
        ok &= verdict == "ConsistentWithTheorem" && v.status == Status::Expected;
        fp.push_str(&v.report.canonical());
        notes.push(format!("{id} {counts:?} {verdict}"));
    }
    let elapsed = start.elapsed();
    outcome(ok && elapsed < ONE_PAIR_BUDGET, notes.join("; "), fp)
}

fn criterion_3() -> Outcome {
    let e = entry("linear_forms_3");
    let out = library(
        Command::Components,
        "linear_forms_3",
        Some(QUARTIC_SAMPLES),
        QUARTIC_SEED,
    );
    let r = &out.report.result;
    let mut points: Vec<PointQ> = r["samples"]
        .as_array()
        .map(|s| s.iter().map(parse_exact).collect())
        .unwrap_or_default();
    let mut rng = stream_rng(3, 0);
    while points.len() < r["samples"].as_array().map_or(0, Vec::len) + 200 {
        let p: Vec<i64> = (0..3).map(|_| rng.random_range(-10i64..=10)).collect();
        if p.iter().all(|&c| c != 0) {
            points.push(pt(&p));
        }
    }
    let off_planes: Vec<&PointQ> = points
        .iter()
        .filter(|p| p.coords().iter().all(|c| c.sign_i8() != 0))
        .collect();
    let accepted = off_planes
        .iter()
        .enumerate()
        .filter(|(i, p)| check_hyperbolic(&e.poly, p, 64, *i as u64).is_ok_and(|v| v.accepts()))
        .count();
    let pass = r["component_count"] == 8 && r["rejected_samples"] == 0 && accepted == off_planes.len();
    outcome(
        pass,
        format!(
            "{} components, {} rejected samples, {accepted}/{} off-plane points hyperbolic",
            r["component_count"],
            r["rejected_samples"],
            off_planes.len()
        ),
        format!("{}|{accepted}", out.report.canonical()),
    )
}

fn criterion_4() -> Outcome {
    let (code, report) = hyp(&["check", "--poly", "sphere3", "--e", "1,0,0", "--seed", "1"]);
    let r = &report["result"];
    let h = entry("sphere3").poly;
    let e = pt(&[1, 0, 0]);
    let recheck = (!r["witness"].is_null()).then(|| {
        let w = parse_exact(&r["witness"]);
        let u = h.restrict_line(&e, &w).unwrap();
        let s = squarefree_part(&u).unwrap();
        let distinct = count_real_roots(&s, &Interval::real_line()).unwrap();
        (w, distinct, s.degree().unwrap_or(0))
    });
    let pass = code == Some(0)
        && r["verdict"] == "CertifiedNot"
        && recheck.as_ref().is_some_and(|(_, distinct, deg)| distinct < deg);
    let detail = match &recheck {
        Some((w, distinct, deg)) => format!(
            "{} with witness {w}: {distinct} distinct real roots, square-free degree {deg}",
            r["verdict"]
        ),
        None => format!("{} without witness", r["verdict"]),
    };
    outcome(pass, detail, report.to_string())
}

fn abs(x: &Rational) -> Rational {
    if x.sign_i8() < 0 {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Distinct real roots by Taylor-bound exclusion and sign changes on the
/// square-free part; independent of Sturm sequences.
fn oracle_count(u: &UniPolyQ) -> usize {
    let s = squarefree_part(u).unwrap();
    if s.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let b = cauchy_bound(&s);
    let min_width = Rational::new(1.into(), (1u64 << 40).into());
    let mut breaks = vec![-b.clone(), b.clone()];
    let mut stack = vec![(-b.clone(), b)];
    while let Some((a, c)) = stack.pop() {
        let half = (&c - &a) / Rational::from_int(2);
        let m = &a + &half;
        let shifted = s.shift(&m);
        let mut pw = half.clone();
        let mut bound = Rational::from_int(0);
        for coeff in shifted.coeffs().iter().skip(1) {
            bound += abs(coeff) * &pw;
            pw *= &half;
        }
        if abs(&s.eval(&m)) > bound || half < min_width {
            continue;
        }
        breaks.push(m.clone());
        stack.push((a, m.clone()));
        stack.push((m, c));
    }
    breaks.sort();
    let signs: Vec<i8> = breaks.iter().map(|x| s.sign_at(x)).collect();
    let zeros = signs.iter().filter(|&&x| x == 0).count();
    let mut changes = 0;
    let mut last = 0i8;
    let mut zero_between = false;
    for &x in &signs {
        if x == 0 {
            zero_between = true;
            continue;
        }
        if last != 0 && x != last && !zero_between {
            changes += 1;
        }
        last = x;
        zero_between = false;
    }
    zeros + changes
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = stream_rng(2024, 0);
    let mut agree = 0;
    let mut counts = Vec::with_capacity(ORACLE_POLYS);
    for _ in 0..ORACLE_POLYS {
        let u = loop {
            let deg = rng.random_range(1..=8);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.random_range(-20..=20)).collect();
            let u = UniPolyQ::from_ints(&coeffs);
            if u.degree().unwrap_or(0) >= 1 {
                break u;
            }
        };
        let sturm = count_real_roots(&u, &Interval::real_line()).unwrap();
        if sturm == oracle_count(&u) {
            agree += 1;
        }
        counts.push(sturm);
    }
    let elapsed = start.elapsed();
    outcome(
        agree == ORACLE_POLYS && elapsed < ORACLE_BUDGET,
        format!("{agree}/{ORACLE_POLYS} agree"),
        format!("{counts:?}"),
    )
}

fn midpoint(x: &PointQ, y: &PointQ) -> PointQ {
    x.add(y).scale(&Rational::new(1.into(), 2.into()))
}

fn hyperbolic_entries() -> Vec<CorpusEntry> {
    bundled()
        .into_iter()
        .filter(|e| e.known_pairs.unwrap_or(0) > 0)
        .collect()
}

/// Component report at the smallest sample count (doubling from `base`)
/// that finds a hyperbolic direction.
fn sampled_components(h: &MultiPolyQ, base: usize, seed: u64) -> Option<ComponentReport> {
    (0..4).find_map(|k| count_components(h, base << k, seed, 64).ok())
}

fn criterion_6() -> Outcome {
    let mut convexity = (0usize, 0usize);
    let mut symmetry = (0usize, 0usize);
    let mut fp = String::new();
    for e in hyperbolic_entries() {
        let h = &e.poly;
        let Some(r) = sampled_components(h, CONVEXITY_SAMPLES, 6) else {
            fp.push_str(&format!("{}: none;", e.id));
            convexity.1 += 1;
            continue;
        };
        let mut rng = stream_rng(6, 1);
        for comp in &r.components {
            let members: Vec<&PointQ> = comp.members.iter().map(|&m| &r.hyperbolic_samples[m]).collect();
            for _ in 0..CONVEXITY_PAIRS {
                let x = members[rng.random_range(0..members.len())];
                let y = members[rng.random_range(0..members.len())];
                convexity.0 += 1;
                if !in_cone(h, &comp.representative, &midpoint(x, y)).unwrap_or(false) {
                    convexity.1 += 1;
                }
            }
        }
        let s = &r.hyperbolic_samples;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                symmetry.0 += 1;
                if in_cone(h, &s[i], &s[j]).ok() != in_cone(h, &s[j], &s[i]).ok() {
                    symmetry.1 += 1;
                }
            }
        }
        fp.push_str(&format!("{}:{}:{};", e.id, r.components.len(), s.len()));
    }
    outcome(
        convexity.1 == 0 && symmetry.1 == 0,
        format!(
            "{} midpoint checks, {} violations; {} symmetric pairs, {} violations",
            convexity.0, convexity.1, symmetry.0, symmetry.1
        ),
        format!("{fp}{convexity:?}{symmetry:?}"),
    )
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut fp = String::new();
    for id in ["det_pencil_quartic", "lorentz3"] {
        let c = entry(id).poly;
        let Some(r) = sampled_components(&c, 64, 21) else {
            ok = false;
            continue;
        };
        let s = &r.hyperbolic_samples;
        let mut rng = stream_rng(21, 1);
        let (mut constant, mut min_points, mut min_fraction, mut excluded) = (0, usize::MAX, 1.0f64, 0);
        for k in 0..ORIENT_PAIRS {
            let e1 = &s[rng.random_range(0..s.len())];
            let e2 = &s[rng.random_range(0..s.len())];
            let Ok(rep) = orientation_consistency(&c, e1, e2, ORIENT_POINTS, k as u64) else {
                ok = false;
                continue;
            };
            let is_constant = matches!(rep.verdict, ConsistencyVerdict::Constant { .. });
            constant += usize::from(is_constant);
            min_points = min_points.min(rep.samples.len());
            min_fraction = min_fraction.min(rep.certified_fraction());
            excluded += rep.excluded.total();
            ok &=
                is_constant && rep.samples.len() >= ORIENT_POINTS && rep.certified_fraction() >= MIN_CERTIFIED_FRACTION;
            fp.push_str(&format!("{e1}{e2}{:?}{};", rep.verdict, rep.samples.len()));
        }
        notes.push(format!(
            "{id}: {constant}/{ORIENT_PAIRS} constant, >= {min_points} points, certified >= {min_fraction:.2}, {excluded} excluded"
        ));
    }
    outcome(ok, notes.join("; "), fp)
}

fn parallel(a: [f64; 3], b: [f64; 3]) -> bool {
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let norm = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    norm(cross) <= PARALLEL_TOL * norm(a) * norm(b)
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut fp = String::new();
    for e in hyperbolic_entries().into_iter().filter(|e| e.nvars == 3) {
        let c: &MultiPolyQ = &e.poly;
        let Some(r) = sampled_components(c, 64, 8) else {
            ok = false;
            notes.push(format!("{}: no cone sampled", e.id));
            continue;
        };
        let center = r.components[0].representative.clone();
        let r = tangent_avoidance_check(c, &center, AVOIDANCE_LINES, 8).unwrap();
        let smooth = r.count(Smoothness::CertifiedSmooth);
        let singular = r.count(Smoothness::CertifiedSingular);
        ok &= r.pass && smooth == 0 && r.lines_checked == AVOIDANCE_LINES;
        if e.id == "paper_quartic" {
            let crossings = [[1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [-1.0, 1.0, 1.0], [-1.0, -1.0, 1.0]];
            let at_crossing = r
                .multiple_roots
                .iter()
                .filter(|m| m.attribution == Smoothness::CertifiedSingular)
                .filter(|m| crossings.iter().any(|&x| parallel(m.approx, x)))
                .count();
            ok &= at_crossing >= 1;
            notes.push(format!(
                "{}: {singular} singular ({at_crossing} at conic crossings)",
                e.id
            ));
        } else {
            notes.push(format!("{}: {smooth} smooth", e.id));
        }
        fp.push_str(&format!("{}{:?};", e.id, r.multiple_roots));
    }
    outcome(ok, notes.join("; "), fp)
}

fn criterion_9() -> Outcome {
    let seed = SECTION_SEED.to_string();
    let (code, report) = hyp(&["section", "--poly", "paper_quartic", "--seed", &seed]);
    let r = &report["result"];
    let h = entry("paper_quartic").poly;
    let planes = r["planes"].as_array().cloned().unwrap_or_default();
    let separated = planes.iter().filter(|p| p["separates_images"] == true).count();
    let distinct_regions = !r["e1"].is_null()
        && !same_projective_region(&h, &parse_exact(&r["e1"]), &parse_exact(&r["e2"])).unwrap_or(true);
    let pass = code == Some(0) && planes.len() == 3 && separated == 3 && distinct_regions;
    outcome(
        pass,
        format!(
            "{separated}/{} planes separate the images; distinct regions: {distinct_regions}",
            planes.len()
        ),
        report.to_string(),
    )
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "quartic has four cones", criterion_1),
        (2, "irreducible entries have one pair", criterion_2),
        (3, "product of linear forms", criterion_3),
        (4, "non-hyperbolic certificate", criterion_4),
        (5, "Sturm counts match the oracle", criterion_5),
        (6, "cone convexity and symmetry", criterion_6),
        (7, "constant orientation products", criterion_7),
        (8, "tangent avoidance", criterion_8),
        (9, "sections separate the quartic cones", criterion_9),
    ];
    let mut failed = 0;
    let mut prints = Vec::new();
    for (n, title, f) in criteria {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "{} {n:>2} {title}: {} ({secs:.1} s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
        prints.push(o.fingerprint);
    }
    let start = Instant::now();
    let changed: Vec<u32> = criteria
        .iter()
        .zip(&prints)
        .filter(|((_, _, f), fp)| f().fingerprint != **fp)
        .map(|((n, _, _), _)| *n)
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let pass = changed.is_empty();
    println!(
        "{} 10 reruns are identical: {} ({secs:.1} s)",
        if pass { "PASS" } else { "FAIL" },
        if pass {
            "criteria 1-9 reproduced".to_string()
        } else {
            format!("criteria {changed:?} differ")
        }
    );
    failed += usize::from(!pass);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
