//! The nine acceptance criteria, each at its stated tolerance. Prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use proxball::error::Error;
use proxball::geom::{AsymptoticBallFamily, BallOrFamily, ClosedBall, Point, UnitVector, Vec2};
use proxball::oracle::{gamma_tightness_experiment, random_scene, Budget, Oracle, RandomSceneParams};
use proxball::proxcheck::{ball_in_complement, equivalence_triplet};
use proxball::radius::{self, lsc_spot_check};
use proxball::sets::{proximal_normal_cone, sample_boundary, SampleSet, SceneSpec, SetModel};
use proxball::synth::{
    ball_to_cert, case2_inequality_audit, cert_to_ball, synthesize, verify_certificate, verify_witness, CaseTag,
    Certificate, UcbWitness,
};
use proxball::{scenes, ExtReal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const S3: f64 = 1.732_050_807_568_877_2;
const GAMMAS: [f64; 5] = [0.6831, 0.7, 0.8, 0.9, 0.99];
const GRID_TOL: f64 = 2e-3;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn within(elapsed: Duration, secs: u64) -> bool {
    elapsed <= Duration::from_secs(secs)
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let m = SetModel::build(scenes::example_2_2()).unwrap();
    let c1 = Vec2::new(-2.0 / S3, 0.0);
    let oracle = Oracle::new(&m).unwrap();
    let d_c1 = m.distance(c1);
    let d_c1_oracle = oracle.distance(c1);
    let d_0 = m.distance(Vec2::ZERO);
    let (rho0, _, _) = radius::rho(&m, Vec2::ZERO).unwrap();
    let open = oracle.max_inscribed_through(Vec2::ZERO, true, &Budget::default()).unwrap();
    let elapsed = t.elapsed();
    let ok = (d_c1 - 1.0).abs() <= 1e-9
        && (d_c1_oracle - 1.0).abs() <= GRID_TOL
        && (d_0 - 1.0 / S3).abs() <= 1e-9
        && rho0 == ExtReal::Finite(0.5)
        && (open.radius - 0.5774).abs() <= GRID_TOL
        && within(elapsed, 10);
    outcome(
        ok,
        format!(
            "d_S(c1) = {d_c1:.12} (oracle {d_c1_oracle:.6}), d_S(0) = {d_0:.10}, rho(0) = {rho0}, open radius {:.5}, {:.2?}",
            open.radius, elapsed
        ),
    )
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let m = SetModel::build(scenes::example_2_2()).unwrap();
    let rep = gamma_tightness_experiment(&m).unwrap();
    let elapsed = t.elapsed();
    let ok = rep.witness_in_s
        && rep.closed_margin.abs() <= 1e-9
        && rep.shrunk_fits
        && (rep.shrunk_radius - (1.0 / S3) * 0.98).abs() < 1e-12
        && rep.oracle_radius < 1.0 / S3 + GRID_TOL
        && within(elapsed, 30);
    outcome(
        ok,
        format!(
            "witness ({:.10}, 0) in S, margin {:e}, shrunk {:.5} fits = {}, best through origin {:.6}, {:.2?}",
            rep.witness.x, rep.closed_margin, rep.shrunk_radius, rep.shrunk_fits, rep.oracle_radius, elapsed
        ),
    )
}

struct SweepScene {
    spec: SceneSpec,
    points: Vec<Point>,
}

/// Query points at distance at least 0.02 from S, so strict margins clear
/// the 1e-9 threshold by a wide gap.
fn query_points(model: &SetModel, n: usize, seed: u64) -> Vec<Point> {
    let w = model.default_window();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..200_000 {
        if out.len() == n {
            break;
        }
        let p = Vec2::new(rng.gen_range(w.min.x..w.max.x), rng.gen_range(w.min.y..w.max.y));
        if !model.contains(p) && model.distance(p) >= 0.02 {
            out.push(p);
        }
    }
    out
}

fn sweep_scenes() -> Vec<SweepScene> {
    let mut specs = vec![scenes::example_2_1(), scenes::example_2_2(), scenes::disk_complement(2.0), scenes::half_plane()];
    let params = RandomSceneParams::default();
    specs.extend((0..20).map(|seed| random_scene(seed, &params).expect("random scene")));
    specs
        .into_iter()
        .enumerate()
        .map(|(i, spec)| {
            let m = SetModel::build(spec.clone()).unwrap();
            let points = query_points(&m, 50, 1000 + i as u64);
            SweepScene { spec, points }
        })
        .collect()
}

/// One scene and point per case tag.
fn fixtures() -> Vec<(CaseTag, SceneSpec, f64, Point)> {
    vec![
        (CaseTag::C1, scenes::disk_complement(2.0), 0.7, Vec2::ZERO),
        (CaseTag::C2_1_1, scenes::full_line(), 0.7, Vec2::new(0.5, -2.0)),
        (CaseTag::C2_1_2, scenes::segment(10.0), 0.7, Vec2::new(0.0, 1.0)),
        (CaseTag::C2_2_1, scenes::half_plane(), 0.7, Vec2::new(0.0, 1.0)),
        (CaseTag::C2_2_2_1, scenes::disk_complement(2.0), 0.7, Vec2::new(1.0, 0.0)),
        (CaseTag::C2_2_2_2_1, scenes::example_2_2(), 0.69, Vec2::ZERO),
        (CaseTag::C2_2_2_2_2, scenes::disk_complement(2.0), 0.7, Vec2::new(0.0, 1.8)),
    ]
}

#[derive(Default)]
struct SweepStats {
    certificates: usize,
    failures: Vec<String>,
    min_finite_margin: f64,
    max_infinite_margin: f64,
    min_samples: usize,
    dominance_checked: usize,
    dominance_failures: Vec<String>,
    crosscheck_failures: Vec<String>,
    tags: BTreeMap<CaseTag, usize>,
    audits: usize,
    audit_failures: Vec<String>,
    elapsed_certify: Duration,
}

fn crosscheck(m: &SetModel, samples: &SampleSet, cert: &Certificate, passed: bool) -> bool {
    match cert.result {
        BallOrFamily::Ball(b) => ball_in_complement(m, samples, &b, true).map(|r| r.passed == passed).unwrap_or(false),
        BallOrFamily::Family(f) => [0.5, 5.0, 50.0].iter().all(|&d| {
            let ball = f.member(d).unwrap();
            ball_in_complement(m, samples, &ball, false).map(|r| r.passed == passed).unwrap_or(false)
        }),
    }
}

fn run_sweep() -> SweepStats {
    let mut st = SweepStats { min_finite_margin: f64::INFINITY, max_infinite_margin: f64::NEG_INFINITY, min_samples: usize::MAX, ..Default::default() };
    for scene in sweep_scenes() {
        let m = SetModel::build(scene.spec.clone()).unwrap();
        let mut window = m.default_window();
        for p in &scene.points {
            window = window.union(&proxball::geom::Aabb::around(*p, 1.0));
        }
        let samples = SampleSet::build(&m, 10_000, 1_000, window, 7);
        let oracle = Oracle::new(&m).unwrap();
        // Largest ball through each point, shared by every gamma.
        let mut best: Vec<Option<Result<f64, f64>>> = vec![None; scene.points.len()];
        for &gamma in &GAMMAS {
            for (k, &x) in scene.points.iter().enumerate() {
                let t = Instant::now();
                let name = &scene.spec.name;
                let cert = match synthesize(&m, gamma, x) {
                    Ok(c) => c,
                    Err(e) => {
                        st.failures.push(format!("{name} gamma {gamma} at {x:?}: {e}"));
                        continue;
                    }
                };
                let rep = match verify_certificate(&m, &cert, &samples) {
                    Ok(r) => r,
                    Err(e) => {
                        st.failures.push(format!("{name} gamma {gamma} at {x:?}: {e}"));
                        continue;
                    }
                };
                st.elapsed_certify += t.elapsed();
                st.certificates += 1;
                st.min_samples = st.min_samples.min(rep.samples_used);
                *st.tags.entry(cert.case_tag).or_default() += 1;
                match cert.eval.varrho {
                    ExtReal::Finite(_) => {
                        st.min_finite_margin = st.min_finite_margin.min(rep.min_margin);
                        if rep.min_margin <= 1e-9 {
                            st.failures.push(format!("{name} gamma {gamma} at {x:?}: margin {}", rep.min_margin));
                        }
                    }
                    ExtReal::Infinite => {
                        st.max_infinite_margin = st.max_infinite_margin.max(-rep.min_margin);
                        if -rep.min_margin > 1e-9 {
                            st.failures.push(format!("{name} gamma {gamma} at {x:?}: max <zeta, s - x> = {}", -rep.min_margin));
                        }
                    }
                }
                if !crosscheck(&m, &samples, &cert, rep.passed) {
                    st.crosscheck_failures.push(format!("{name} gamma {gamma} at {x:?}"));
                }
                if cert.case_tag.is_case2() && cert.eval.varrho.is_finite() {
                    st.audits += 1;
                    for item in case2_inequality_audit(&cert) {
                        if !item.holds {
                            st.audit_failures.push(format!("{name} gamma {gamma} at {x:?}: {}", item.name));
                        }
                    }
                }
                // Dominance: varrho >= rho always, and no larger than the best ball.
                if cert.eval.varrho < cert.eval.rho {
                    st.dominance_failures.push(format!("{name} gamma {gamma} at {x:?}: varrho < rho"));
                }
                if let ExtReal::Finite(v) = cert.eval.varrho {
                    let b = *best[k].get_or_insert_with(|| match oracle.max_inscribed_through(x, false, &Budget::default()) {
                        Ok(r) => Ok(r.radius),
                        Err(Error::Unbounded { largest_probe }) => Err(largest_probe),
                        Err(e) => panic!("oracle at {x:?} on {name}: {e}"),
                    });
                    st.dominance_checked += 1;
                    if let Ok(best_radius) = b {
                        if v > best_radius + GRID_TOL {
                            st.dominance_failures.push(format!("{name} gamma {gamma} at {x:?}: {v} > oracle {best_radius}"));
                        }
                    }
                }
            }
        }
    }
    st
}

fn criterion_3(st: &SweepStats, elapsed: Duration) -> Outcome {
    let ok = st.failures.is_empty() && st.certificates == 5 * 24 * 50 && st.min_samples >= 10_000 && within(st.elapsed_certify, 60);
    let mut d = format!(
        "{} certificates, min strict margin {:.3e}, max <zeta, s - x> {:.1e}, >= {} samples, certify {:.2?} (sweep {:.2?})",
        st.certificates, st.min_finite_margin, st.max_infinite_margin, st.min_samples, st.elapsed_certify, elapsed
    );
    if let Some(f) = st.failures.first() {
        d.push_str(&format!("; {} failures, first: {f}", st.failures.len()));
    }
    outcome(ok, d)
}

fn criterion_4(st: &SweepStats) -> Outcome {
    let mut d = format!("{} finite certificates compared with brute force", st.dominance_checked);
    if let Some(f) = st.dominance_failures.first() {
        d.push_str(&format!("; {} failures, first: {f}", st.dominance_failures.len()));
    }
    outcome(st.dominance_failures.is_empty() && st.dominance_checked > 0, d)
}

fn criterion_5(st: &SweepStats) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let x = Vec2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let v = rng.gen_range(0.01..10.0);
        let zeta = UnitVector::from_angle(rng.gen_range(0.0..std::f64::consts::TAU));
        // Keep t away from varrho, where the direction is not recoverable.
        let t = v * rng.gen_range(0.0..0.999);
        let ball = cert_to_ball(x, ExtReal::Finite(v), zeta, t).unwrap();
        let (z2, t2) = ball_to_cert(x, &ball, ExtReal::Finite(v)).unwrap();
        worst = worst.max(z2.vec().dist(zeta.vec())).max((t2.unwrap() - t).abs());
    }
    let ok = worst <= 1e-9 && st.crosscheck_failures.is_empty();
    let mut d = format!("1000 round trips, worst error {worst:.2e}; {} certificates cross-checked", st.certificates);
    if let Some(f) = st.crosscheck_failures.first() {
        d.push_str(&format!("; {} disagreements, first: {f}", st.crosscheck_failures.len()));
    }
    outcome(ok, d)
}

fn criterion_6() -> Outcome {
    let m = SetModel::build(scenes::example_2_1()).unwrap();
    let samples = SampleSet::build(&m, 10_000, 0, m.default_window(), 0);
    let up = UnitVector::normalize(Vec2::new(0.0, 1.0)).unwrap();
    let fam = BallOrFamily::Family(AsymptoticBallFamily { anchor: Vec2::ZERO, direction: up });
    let (zeta_x, t_x) = ball_to_cert(Vec2::ZERO, &fam, ExtReal::INF).unwrap();
    let rep = verify_witness(&m, &UcbWitness { x: Vec2::ZERO, varrho: ExtReal::INF, zeta_x, t_x }, &samples).unwrap();
    let a = rep.argmin_point;
    let ok = rep.min_margin == 0.0 && (a.x.abs() - 1.0).abs() <= 1e-9 && a.y.abs() <= 1e-9;
    outcome(ok, format!("max margin {} at ({}, {}), verdict {:?}", -rep.min_margin, a.x, a.y, rep.verdict))
}

fn criterion_7() -> Outcome {
    let mut disagreements = Vec::new();
    let mut holds = 0;
    let mut total = 0;
    let mut trichotomy_checked = 0;
    let mut trichotomy_bad = 0;
    for (si, name) in scenes::NAMES.iter().enumerate() {
        let m = SetModel::build(scenes::by_name(name).unwrap()).unwrap();
        let samples = SampleSet::build(&m, 10_000, 1_000, m.default_window(), 3);
        let boundary = sample_boundary(&m, 100);
        let mut rng = ChaCha8Rng::seed_from_u64(70 + si as u64);
        for k in 0..200 {
            let bp = &boundary[rng.gen_range(0..boundary.len())];
            // Half the witnesses use a proximal normal, half a random direction.
            let zeta = if k % 2 == 0 {
                let fan = proximal_normal_cone(&m, bp).unwrap();
                let mut dirs: Vec<UnitVector> = fan.generators.iter().map(|g| g.zeta).collect();
                if fan.cone {
                    dirs.extend(fan.sweep(8));
                }
                dirs[rng.gen_range(0..dirs.len())]
            } else {
                UnitVector::from_angle(rng.gen_range(0.0..std::f64::consts::TAU))
            };
            let sigma = rng.gen_range(0.05..4.0);
            let rep = equivalence_triplet(&m, &samples, bp.point, zeta, sigma).unwrap();
            total += 1;
            holds += rep.proximal.passed as usize;
            if !rep.agree {
                disagreements.push(format!("{name} at {:?} along {:?}, sigma {sigma}", bp.point, zeta.vec()));
            }
            if k % 20 == 0 {
                let ball = ClosedBall::new(bp.point + zeta.vec() * (0.5 / sigma), 0.5 / sigma).unwrap();
                let (y, z) = ball.opposite_points(UnitVector::from_angle(rng.gen_range(0.0..std::f64::consts::TAU)));
                let r = ball.radius;
                for i in 0..100 {
                    for j in 0..100 {
                        let s = ball.center + Vec2::new(-1.5 * r + 3.0 * r * i as f64 / 99.0, -1.5 * r + 3.0 * r * j as f64 / 99.0);
                        let q = (s - y).dot(s - z);
                        let dist = s.dist(ball.center) - r;
                        let tol = 1e-12 * (1.0 + r * r);
                        let expected = if dist.abs() <= tol { 0 } else { dist.signum() as i32 };
                        let got = if q.abs() <= 4.0 * tol * (1.0 + r) { 0 } else { q.signum() as i32 };
                        trichotomy_checked += 1;
                        if expected != got {
                            trichotomy_bad += 1;
                        }
                    }
                }
            }
        }
    }
    let ok = disagreements.is_empty() && trichotomy_bad == 0;
    let mut d = format!(
        "{total} witnesses ({holds} satisfy the inequality), {} disagreements; trichotomy {trichotomy_bad}/{trichotomy_checked} wrong",
        disagreements.len()
    );
    if let Some(f) = disagreements.first() {
        d.push_str(&format!(", first: {f}"));
    }
    outcome(ok, d)
}

fn criterion_8(st: &SweepStats) -> Outcome {
    let mut seen: BTreeSet<CaseTag> = st.tags.keys().copied().collect();
    let mut fixture_problems = Vec::new();
    for (tag, spec, gamma, x) in fixtures() {
        let m = SetModel::build(spec.clone()).unwrap();
        match synthesize(&m, gamma, x) {
            Ok(c) if c.case_tag == tag => {
                if case2_inequality_audit(&c).iter().any(|a| !a.holds) {
                    fixture_problems.push(format!("{} audit fails", tag.as_str()));
                }
                seen.insert(tag);
            }
            Ok(c) => fixture_problems.push(format!("{} fixture gave {}", tag.as_str(), c.case_tag.as_str())),
            Err(e) => fixture_problems.push(format!("{} fixture: {e}", tag.as_str())),
        }
    }
    let missing: Vec<&str> = CaseTag::ALL.iter().filter(|t| !seen.contains(t)).map(|t| t.as_str()).collect();
    let ok = missing.is_empty() && fixture_problems.is_empty() && st.audit_failures.is_empty();
    let sweep: Vec<String> = st.tags.iter().map(|(t, n)| format!("{}:{n}", t.as_str())).collect();
    let mut d = format!("sweep {}; {} audits, {} failed", sweep.join(" "), st.audits, st.audit_failures.len());
    if !missing.is_empty() {
        d.push_str(&format!("; missing {missing:?}"));
    }
    if let Some(p) = fixture_problems.first() {
        d.push_str(&format!("; {p}"));
    }
    if let Some(p) = st.audit_failures.first() {
        d.push_str(&format!("; first audit failure: {p}"));
    }
    outcome(ok, d)
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    let mut violations = Vec::new();
    for (i, name) in scenes::NAMES.iter().enumerate() {
        let m = SetModel::build(scenes::by_name(name).unwrap()).unwrap();
        for x in query_points(&m, 100, 900 + i as u64) {
            let rep = lsc_spot_check(&m, 0.7, x, 20).unwrap();
            checked += 1;
            if !rep.passed {
                violations.push(format!("{name} at {x:?}"));
            }
        }
    }
    let mut d = format!("{checked} points, three levels each, {} violations", violations.len());
    if let Some(v) = violations.first() {
        d.push_str(&format!(", first: {v}"));
    }
    outcome(violations.is_empty() && checked > 0, d)
}

fn main() {
    let t = Instant::now();
    let st = run_sweep();
    let sweep_elapsed = t.elapsed();
    let results = [
        ("1 example values", criterion_1()),
        ("2 gamma tightness", criterion_2()),
        ("3 soundness sweep", criterion_3(&st, sweep_elapsed)),
        ("4 dominance", criterion_4(&st)),
        ("5 round trip", criterion_5(&st)),
        ("6 non-strictness", criterion_6()),
        ("7 equivalence", criterion_7()),
        ("8 case coverage", criterion_8(&st)),
        ("9 semicontinuity", criterion_9()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("[{}] criterion {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        failed += !o.passed as usize;
    }
    println!("{} of {} criteria passed in {:.2?}", results.len() - failed, results.len(), t.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
