//! The `proxball` command line. Every subcommand prints one JSON record
//! (`"schema": 1`) on stdout; errors are records too. Exit codes: 0 success,
//! 1 a check failed, 2 bad input.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geom::{AsymptoticBallFamily, BallOrFamily, Point, UnitVector, Vec2};
use crate::oracle::{gamma_tightness_experiment, Budget, Oracle};
use crate::proxcheck::eesc_check;
use crate::radius;
use crate::render::render_svg;
use crate::scenes;
use crate::sets::{SampleSet, SceneSpec, SetModel};
use crate::synth::{ball_to_cert, case2_inequality_audit, synthesize, verify_certificate, verify_witness, CaseTag, Certificate, UcbWitness};
use crate::ExtReal;

#[derive(Parser, Debug)]
#[command(name = "proxball", version, about = "Closed-ball coverings of the complement of planar closed sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Points of S used for sampled checks.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON record to this file.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Audit the exterior sphere condition on boundary samples.
    CheckEesc {
        /// Scene file or bundled scene name.
        scene: String,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Build and verify ball certificates at query points.
    Synthesize {
        scene: String,
        #[arg(long)]
        gamma: f64,
        /// Query point `x,y`; repeatable.
        #[arg(long = "at", required = true, allow_hyphen_values = true, value_parser = parse_point)]
        at: Vec<Point>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Re-verify certificates from a file written by `synthesize`.
    Verify {
        scene: String,
        certificate: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force the largest ball through a point.
    Oracle {
        scene: String,
        #[arg(long = "at", required = true, allow_hyphen_values = true, value_parser = parse_point)]
        at: Vec<Point>,
        /// Open balls instead of closed ones.
        #[arg(long)]
        open: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Show that gamma = 1 is not admissible on the three-disk scene.
    Tightness {
        #[arg(default_value = "example-2.2")]
        scene: String,
        #[command(flatten)]
        common: Common,
    },
    /// Draw a scene, optionally with certificates, as SVG.
    Render {
        scene: String,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long = "at", allow_hyphen_values = true, value_parser = parse_point)]
        at: Vec<Point>,
        /// Output file; SVG goes to stdout when absent.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the full pipeline on a bundled example and check its numbers.
    Demo {
        #[arg(value_parser = ["example-2.1", "example-2.2"])]
        example: String,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_point(s: &str) -> std::result::Result<Point, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let p = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    let v = Vec2::new(p(a)?, p(b)?);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite point {s:?}"))
    }
}

/// What a run printed and how it ended.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: e.to_string() };
            }
            let rec = json!({"schema": 1, "error": {"kind": "Usage", "message": e.to_string()}});
            return Outcome { code: 2, stdout: pretty(&rec) };
        }
    };
    match dispatch(cli.command) {
        Ok(Report::Json { value, ok, save }) => {
            let text = pretty(&value);
            if let Some(path) = save {
                if let Err(e) = std::fs::write(&path, &text) {
                    return error_outcome(&Error::Io(e));
                }
            }
            Outcome { code: if ok { 0 } else { 1 }, stdout: text }
        }
        Ok(Report::Raw(text)) => Outcome { code: 0, stdout: text },
        Err(e) => error_outcome(&e),
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let rec = json!({"schema": 1, "error": {"kind": e.kind(), "message": e.to_string()}});
    Outcome { code: if e.is_verification_failure() { 1 } else { 2 }, stdout: pretty(&rec) }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

enum Report {
    Json { value: Value, ok: bool, save: Option<PathBuf> },
    Raw(String),
}

fn record(command: &str, scene: &SceneSpec, body: Value) -> Value {
    let mut v = json!({"schema": 1, "command": command, "scene": scene.name});
    if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
        m.extend(b);
    }
    v
}

/// A path to a scene file, or the name of a bundled scene.
pub fn load_scene(arg: &str) -> Result<SceneSpec> {
    let path = Path::new(arg);
    if path.exists() {
        SceneSpec::load(path)
    } else {
        scenes::by_name(arg.trim_end_matches(".scene"))
            .map_err(|_| Error::InvalidInput(format!("{arg:?} is neither a scene file nor a bundled scene ({})", scenes::NAMES.join(", "))))
    }
}

fn sample_set(model: &SetModel, common: &Common, extra: &[Point]) -> SampleSet {
    let mut window = model.default_window();
    for p in extra {
        window = window.union(&crate::geom::Aabb::around(*p, 1.0));
    }
    SampleSet::build(model, common.samples, common.samples / 10, window, common.seed)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn dispatch(cmd: Command) -> Result<Report> {
    match cmd {
        Command::CheckEesc { scene, points, common } => {
            let spec = load_scene(&scene)?;
            let model = SetModel::build(spec.clone())?;
            let samples = sample_set(&model, &common, &[]);
            let rep = eesc_check(&model, points, &samples);
            let ok = rep.passed;
            let value = record("check-eesc", &spec, json!({"passed": ok, "report": to_value(&rep)}));
            Ok(Report::Json { value, ok, save: common.json })
        }
        Command::Synthesize { scene, gamma, at, svg, common } => {
            let spec = load_scene(&scene)?;
            let model = SetModel::build(spec.clone())?;
            radius::check_gamma(gamma)?;
            let samples = sample_set(&model, &common, &at);
            let mut out = Vec::new();
            let mut certs = Vec::new();
            let mut ok = true;
            for x in at {
                let cert = synthesize(&model, gamma, x)?;
                let rep = verify_certificate(&model, &cert, &samples)?;
                let audit = case2_inequality_audit(&cert);
                ok &= rep.passed && audit.iter().all(|a| a.holds);
                out.push(json!({
                    "case": cert.case_tag.as_str(),
                    "radius": to_value(&cert.eval.varrho),
                    "certificate": to_value(&cert),
                    "verification": to_value(&rep),
                    "audit": to_value(&audit),
                }));
                certs.push(cert);
            }
            if let Some(path) = &svg {
                std::fs::write(path, render_svg(&model, &certs, &[]))?;
            }
            let value = record("synthesize", &spec, json!({"gamma": gamma, "passed": ok, "certificates": out}));
            Ok(Report::Json { value, ok, save: common.json })
        }
        Command::Verify { scene, certificate, common } => {
            let spec = load_scene(&scene)?;
            let model = SetModel::build(spec.clone())?;
            let certs = read_certificates(&certificate)?;
            let samples = sample_set(&model, &common, &certs.iter().map(|c| c.x).collect::<Vec<_>>());
            let mut out = Vec::new();
            let mut ok = true;
            for cert in &certs {
                let rep = verify_certificate(&model, cert, &samples)?;
                ok &= rep.passed;
                out.push(json!({"x": to_value(&cert.x), "case": cert.case_tag.as_str(), "verification": to_value(&rep)}));
            }
            let value = record("verify", &spec, json!({"passed": ok, "results": out}));
            Ok(Report::Json { value, ok, save: common.json })
        }
        Command::Oracle { scene, at, open, common } => {
            let spec = load_scene(&scene)?;
            let model = SetModel::build(spec.clone())?;
            let oracle = Oracle::new(&model)?;
            let mut out = Vec::new();
            for x in at {
                let entry = match oracle.max_inscribed_through(x, open, &Budget::default()) {
                    Ok(res) => json!({"x": to_value(&x), "bounded": true, "result": to_value(&res)}),
                    Err(Error::Unbounded { largest_probe }) => {
                        json!({"x": to_value(&x), "bounded": false, "largest_probe": largest_probe})
                    }
                    Err(e) => return Err(e),
                };
                out.push(entry);
            }
            let value = record("oracle", &spec, json!({"open": open, "results": out}));
            Ok(Report::Json { value, ok: true, save: common.json })
        }
        Command::Tightness { scene, common } => {
            let spec = load_scene(&scene)?;
            let model = SetModel::build(spec.clone())?;
            let rep = gamma_tightness_experiment(&model)?;
            let ok = rep.passed;
            let value = record("tightness", &spec, json!({"passed": ok, "report": to_value(&rep)}));
            Ok(Report::Json { value, ok, save: common.json })
        }
        Command::Render { scene, gamma, at, svg } => {
            let spec = load_scene(&scene)?;
            let model = SetModel::build(spec.clone())?;
            let certs = match gamma {
                Some(g) => at.iter().map(|x| synthesize(&model, g, *x)).collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            let text = render_svg(&model, &certs, if gamma.is_some() { &[] } else { &at });
            match svg {
                Some(path) => {
                    std::fs::write(&path, &text)?;
                    let value = record("render", &spec, json!({"svg": path, "bytes": text.len()}));
                    Ok(Report::Json { value, ok: true, save: None })
                }
                None => Ok(Report::Raw(text)),
            }
        }
        Command::Demo { example, common } => demo(&example, &common),
    }
}

fn read_certificates(path: &Path) -> Result<Vec<Certificate>> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)?;
    let entries = match v.get("certificates") {
        Some(Value::Array(a)) => a.iter().map(|e| e.get("certificate").unwrap_or(e).clone()).collect(),
        _ => vec![v],
    };
    entries.into_iter().map(|e| Ok(serde_json::from_value(e)?)).collect()
}

struct Checks(Vec<Value>);

impl Checks {
    fn near(&mut self, name: &str, value: f64, expected: f64, tol: f64) {
        let passed = (value - expected).abs() <= tol;
        self.0.push(json!({"check": name, "value": value, "expected": expected, "tol": tol, "passed": passed}));
    }

    fn flag(&mut self, name: &str, passed: bool) {
        self.0.push(json!({"check": name, "passed": passed}));
    }

    fn all_passed(&self) -> bool {
        self.0.iter().all(|c| c["passed"] == true)
    }
}

fn demo(example: &str, common: &Common) -> Result<Report> {
    let spec = load_scene(example)?;
    let model = SetModel::build(spec.clone())?;
    let samples = sample_set(&model, common, &[]);
    let oracle = Oracle::new(&model)?;
    let s3 = 3f64.sqrt();
    let mut checks = Checks(Vec::new());
    let mut lines = Vec::new();
    if example == "example-2.2" {
        let c1 = Vec2::new(-2.0 / s3, 0.0);
        let d_c1 = model.distance(c1);
        let d_0 = model.distance(Vec2::ZERO);
        let (rho0, _, _) = radius::rho(&model, Vec2::ZERO)?;
        let open = oracle.max_inscribed_through(Vec2::ZERO, true, &Budget::default())?;
        checks.near("d_S(c1)", d_c1, 1.0, 1e-9);
        checks.near("oracle d_S(c1)", oracle.distance(c1), 1.0, 2e-3);
        checks.near("d_S(0,0)", d_0, 1.0 / s3, 1e-9);
        checks.near("rho(0,0)", rho0.to_f64(), 0.5, 0.0);
        checks.near("oracle open radius through (0,0)", open.radius, 1.0 / s3, 2e-3);
        let cert = synthesize(&model, 0.69, Vec2::ZERO)?;
        let rep = verify_certificate(&model, &cert, &samples)?;
        checks.flag("certificate at (0,0), gamma 0.69, is C2_2_2_2_1", cert.case_tag == CaseTag::C2_2_2_2_1);
        checks.flag("certificate at (0,0) verifies strictly", rep.passed);
        let tight = gamma_tightness_experiment(&model)?;
        checks.flag("gamma = 1 is not admissible", tight.passed);
        lines.push(format!("d_S(c1) = {d_c1:.3}"));
        lines.push(format!("d_S(0,0) = {d_0:.5}"));
        lines.push(format!("rho(0,0) = {}", rho0.to_f64()));
        lines.push(format!("largest open ball through (0,0): {:.5}", open.radius));
        lines.push(format!("varrho_0.69(0,0) = {:.10} ({})", cert.eval.varrho.to_f64(), cert.case_tag.as_str()));
    } else {
        let d_0 = model.distance(Vec2::ZERO);
        let (rho0, _, _) = radius::rho(&model, Vec2::ZERO)?;
        checks.near("d_S(0,0)", d_0, 1.0, 1e-9);
        checks.near("rho(0,0)", rho0.to_f64(), 0.5, 0.0);
        let up = UnitVector::normalize(Vec2::new(0.0, 1.0))?;
        let fam = BallOrFamily::Family(AsymptoticBallFamily { anchor: Vec2::ZERO, direction: up });
        let (zeta_x, t_x) = ball_to_cert(Vec2::ZERO, &fam, ExtReal::INF)?;
        let w = UcbWitness { x: Vec2::ZERO, varrho: ExtReal::INF, zeta_x, t_x };
        let rep = verify_witness(&model, &w, &samples)?;
        checks.near("max <zeta, s - x> of the tangent family at (0,0)", -rep.min_margin, 0.0, 1e-9);
        checks.near("|argmin_1|", rep.argmin_point.x.abs(), 1.0, 1e-9);
        checks.near("argmin_2", rep.argmin_point.y, 0.0, 1e-9);
        let unbounded = matches!(
            oracle.max_inscribed_through(Vec2::ZERO, false, &Budget::default()),
            Err(Error::Unbounded { .. })
        );
        checks.flag("balls through (0,0) grow without bound", unbounded);
        let mut all = true;
        for x in [Vec2::new(0.0, 0.5), Vec2::new(3.0, 0.5), Vec2::new(-2.0, -4.0)] {
            let cert = synthesize(&model, 0.7, x)?;
            all &= verify_certificate(&model, &cert, &samples)?.passed;
        }
        checks.flag("certificates at three points verify", all);
        lines.push(format!("d_S(0,0) = {d_0:.5}"));
        lines.push(format!("rho(0,0) = {}", rho0.to_f64()));
        lines.push(format!(
            "tangent family at (0,0): max margin {:.1e} attained at ({:.3}, {:.3})",
            -rep.min_margin, rep.argmin_point.x, rep.argmin_point.y
        ));
    }
    let ok = checks.all_passed();
    let value = record("demo", &spec, json!({"passed": ok, "report": lines, "checks": checks.0}));
    Ok(Report::Json { value, ok, save: common.json.clone() })
}
