//! Brute-force ground truth: a nearest-neighbour index over densely sampled
//! boundary points, a grid search for the largest ball through a point, the
//! `gamma = 1` tightness experiment, and a generator of random admissible
//! scenes.

use std::f64::consts::TAU;

use kiddo::{ImmutableKdTree, SquaredEuclidean};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Aabb, ClosedBall, Point, Vec2};
use crate::proxcheck::eesc_check;
use crate::radius;
use crate::sets::sampling::dense_boundary;
use crate::sets::{Primitive, RadiusFnSpec, SampleSet, SceneSpec, SetModel};

/// Search schedule for [`Oracle::max_inscribed_through`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    /// Grid points per side of the initial grid.
    pub grid: usize,
    /// Grid points per side around each kept center when refining. Every
    /// level halves the step; refinement stops once the step drops below
    /// the boundary sampling spacing.
    pub refine_grid: usize,
    /// Upper bound on refinement levels after the initial grid.
    pub refinements: usize,
    /// Best centers carried from one level to the next.
    pub keep: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { grid: 64, refine_grid: 9, refinements: 40, keep: 4 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InscribedBallResult {
    pub radius: f64,
    pub center: Point,
    pub open_variant: bool,
    /// Grid spacing of the last level plus the sampling spacing.
    pub resolution: f64,
    /// `d_S(center) >= radius (1 - resolution)`, checked in closed form.
    pub verified: bool,
}

/// Distance oracle built from boundary samples only.
pub struct Oracle<'a> {
    model: &'a SetModel,
    tree: ImmutableKdTree<f64, 2>,
    points: Vec<[f64; 2]>,
    spacing: f64,
}

impl<'a> Oracle<'a> {
    /// Samples the boundary at spacing `grid_tol / 4` over a window wide
    /// enough for O(1) scenes, with geometrically spaced far-field points on
    /// unbounded pieces.
    pub fn new(model: &'a SetModel) -> Result<Self> {
        let spacing = model.tol.grid_tol / 4.0;
        let window = model.default_window().inflate(8.0);
        let points: Vec<[f64; 2]> = dense_boundary(model, &window, spacing).into_iter().map(|p| [p.x, p.y]).collect();
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let tree = ImmutableKdTree::new_from_slice(&points)
            .map_err(|e| Error::InvalidInput(format!("nearest-neighbour index: {e:?}")))?;
        Ok(Oracle { model, tree, points, spacing })
    }

    pub fn model(&self) -> &SetModel {
        self.model
    }

    pub fn sample_count(&self) -> usize {
        self.points.len()
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// `d_S(p)`: zero on S, else the distance to the nearest boundary sample.
    pub fn distance(&self, p: Point) -> f64 {
        if self.model.contains(p) {
            return 0.0;
        }
        self.tree.query(&[p.x, p.y]).nearest_one::<SquaredEuclidean<f64>>().execute().distance.sqrt()
    }

    fn feasible(&self, x: Point, c: Point, open: bool) -> Option<f64> {
        let d = self.distance(c);
        let reach = x.dist(c);
        let ok = if open { reach < d } else { reach <= d };
        (ok && d > 0.0).then_some(d)
    }

    /// Largest ball through `x` inside the complement of S. Centers are
    /// searched on a coarse grid, then on finer grids around the best
    /// candidates; a center `c` is admissible when `|x - c| <= d_S(c)`, and
    /// then `d_S(c)` is the largest admissible radius for it.
    pub fn max_inscribed_through(&self, x: Point, open_variant: bool, budget: &Budget) -> Result<InscribedBallResult> {
        let dx = self.distance(x);
        if dx == 0.0 {
            return Err(Error::NotInComplement(x.into()));
        }
        let largest = self.unbounded_probe(x, open_variant);
        if let Some(largest_probe) = largest {
            return Err(Error::Unbounded { largest_probe });
        }

        let window = self.model.default_window().union(&Aabb::around(x, 0.0)).inflate(2.0 * (dx + 1.0));
        let n = budget.grid.max(2);
        let mut best: Vec<(f64, Point)> = vec![(dx, x)];
        let mut spacing = window.width().max(window.height()) / (n - 1) as f64;
        let coarse = grid(window.min, window.width() / (n - 1) as f64, window.height() / (n - 1) as f64, n);
        self.collect(x, open_variant, coarse, &mut best, budget.keep);
        let m = budget.refine_grid.max(3);
        for _ in 0..budget.refinements {
            if spacing < self.spacing {
                break;
            }
            let step = 4.0 * spacing / (m - 1) as f64;
            let seeds: Vec<Point> = best.iter().map(|b| b.1).collect();
            for c in seeds {
                let origin = c - Vec2::new(2.0 * spacing, 2.0 * spacing);
                let pts = grid(origin, step, step, m);
                self.collect(x, open_variant, pts, &mut best, budget.keep);
            }
            spacing = step;
        }
        let (radius, center) = best[0];
        let resolution = spacing + self.spacing;
        let verified = self.model.distance(center) >= radius * (1.0 - resolution);
        Ok(InscribedBallResult { radius, center, open_variant, resolution, verified })
    }

    fn collect(&self, x: Point, open: bool, pts: impl Iterator<Item = Point>, best: &mut Vec<(f64, Point)>, keep: usize) {
        for c in pts {
            if let Some(d) = self.feasible(x, c, open) {
                best.push((d, c));
            }
        }
        best.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.lex_cmp(b.1, 0.0)));
        best.dedup_by(|a, b| a.1.dist(b.1) < 1e-12);
        best.truncate(keep.max(1));
    }

    /// Balls of radius 10, 100 and 1000 with `x` on their boundary, in 16
    /// directions plus the direction away from the nearest boundary sample.
    /// Returns the largest radius when every level has a feasible ball.
    fn unbounded_probe(&self, x: Point, open: bool) -> Option<f64> {
        let nn = self.tree.query(&[x.x, x.y]).nearest_one::<SquaredEuclidean<f64>>().execute();
        let [px, py] = self.points[nn.item as usize];
        let away = x - Vec2::new(px, py);
        let mut dirs: Vec<Vec2> = (0..16).map(|k| Vec2::from_angle(TAU * k as f64 / 16.0)).collect();
        if away.norm() > 0.0 {
            dirs.push(away * (1.0 / away.norm()));
        }
        let mut largest = None;
        for r in [10.0, 100.0, 1000.0] {
            let hit = dirs.iter().any(|&u| {
                let c = x + u * r;
                self.feasible(x, c, open).is_some_and(|d| d >= r)
            });
            if !hit {
                return None;
            }
            largest = Some(r);
        }
        largest
    }
}

fn grid(origin: Point, hx: f64, hy: f64, n: usize) -> impl Iterator<Item = Point> {
    (0..n).flat_map(move |i| (0..n).map(move |j| origin + Vec2::new(hx * i as f64, hy * j as f64)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub grid_tol: f64,
    /// The radius formula at `gamma = 1`, `x = 0`.
    pub varrho_at_one: f64,
    /// A point of S on the sphere of that radius around the origin.
    pub witness: Point,
    pub witness_in_s: bool,
    /// `d_S(0)^2 - varrho^2`; zero means the closed ball touches S.
    pub closed_margin: f64,
    /// Largest ball through the origin found by brute force.
    pub oracle_radius: f64,
    pub oracle_bound_ok: bool,
    pub shrunk_radius: f64,
    pub shrunk_fits: bool,
    pub passed: bool,
}

/// Shows on the three-disk scene that `gamma` cannot be taken equal to one:
/// the closed ball of radius `varrho_1(0) = 1/sqrt3` around the origin
/// touches S, no larger ball through the origin fits, and slightly smaller
/// ones do.
pub fn gamma_tightness_experiment(model: &SetModel) -> Result<TightnessReport> {
    let grid_tol = model.tol.grid_tol;
    let x = Vec2::ZERO;
    let eval = radius::evaluate_unchecked(model, 1.0, x)?;
    let varrho = eval.varrho.finite().ok_or_else(|| Error::InvalidInput("varrho_1(0) is infinite".into()))?;
    let witness = Vec2::new(varrho, 0.0);
    let witness_in_s = model.contains(witness) && witness.norm() <= varrho + model.tol.eps_geom;
    let d0 = model.distance(x);
    let closed_margin = d0 * d0 - varrho * varrho;

    let oracle = Oracle::new(model)?;
    let found = oracle.max_inscribed_through(x, false, &Budget::default())?;
    let oracle_bound_ok = found.radius <= varrho + grid_tol;

    let shrunk_radius = varrho * (1.0 - 10.0 * grid_tol);
    let shrunk = ClosedBall::new(x, shrunk_radius)?;
    let shrunk_fits = oracle.distance(shrunk.center) > shrunk.radius && model.distance(shrunk.center) > shrunk.radius;

    let passed = witness_in_s && closed_margin.abs() <= model.tol.eps_geom && oracle_bound_ok && shrunk_fits;
    Ok(TightnessReport {
        grid_tol,
        varrho_at_one: varrho,
        witness,
        witness_in_s,
        closed_margin,
        oracle_radius: found.radius,
        oracle_bound_ok,
        shrunk_radius,
        shrunk_fits,
        passed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SceneFamily {
    /// A line or a half-plane, `r = +inf`.
    Line,
    DisjointDisks,
    /// Disks touching in a chain, gaps filled.
    TangentChain,
    OverlappingDisks,
    /// Disjoint disks with isolated points and segments of S inside them.
    DisksWithInclusions,
    /// Two opposite rays with a gap between them.
    SplitLine,
}

impl SceneFamily {
    pub const ALL: [SceneFamily; 6] = [
        SceneFamily::Line,
        SceneFamily::DisjointDisks,
        SceneFamily::TangentChain,
        SceneFamily::OverlappingDisks,
        SceneFamily::DisksWithInclusions,
        SceneFamily::SplitLine,
    ];

    pub fn for_seed(seed: u64) -> Self {
        Self::ALL[(seed % 6) as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomSceneParams {
    /// Family to draw from; by default chosen from the seed.
    pub family: Option<SceneFamily>,
    pub min_disks: usize,
    pub max_disks: usize,
    pub min_radius: f64,
    pub max_radius: f64,
    /// Multiplier on the radius function the family would normally use.
    pub r_scale: f64,
    pub max_attempts: usize,
    /// Boundary points audited by the exterior sphere check.
    pub eesc_points: usize,
}

impl Default for RandomSceneParams {
    fn default() -> Self {
        RandomSceneParams {
            family: None,
            min_disks: 2,
            max_disks: 5,
            min_radius: 0.5,
            max_radius: 1.5,
            r_scale: 1.0,
            max_attempts: 40,
            eesc_points: 120,
        }
    }
}

/// Draws scenes until one passes the exterior sphere audit for its radius
/// function.
pub fn random_scene(seed: u64, params: &RandomSceneParams) -> Result<SceneSpec> {
    if params.min_disks < 1 || params.min_disks > params.max_disks || !(params.min_radius > 0.0 && params.min_radius <= params.max_radius) {
        return Err(Error::InvalidInput(format!("bad random scene parameters: {params:?}")));
    }
    let family = params.family.unwrap_or_else(|| SceneFamily::for_seed(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..params.max_attempts {
        let Some(scene) = draw(&mut rng, family, params) else { continue };
        let Ok(model) = SetModel::build(scene.clone()) else { continue };
        let samples = SampleSet::build(&model, 1500, 150, model.default_window(), rng.gen());
        if eesc_check(&model, params.eesc_points, &samples).passed {
            return Ok(scene);
        }
    }
    Err(Error::GenerationExhausted { attempts: params.max_attempts })
}

fn disk(center: Point, radius: f64) -> Primitive {
    Primitive::DiskComplement { center, radius }
}

/// Radii and centers of `n` disks, each placed relative to the previous one
/// at `gap(r_prev, r_next)` between centers. Rejects chains where
/// non-neighbours come closer than their radii plus 0.2.
fn chain(rng: &mut ChaCha8Rng, p: &RandomSceneParams, n: usize, sep: impl Fn(&mut ChaCha8Rng, f64, f64) -> f64) -> Option<Vec<(Point, f64)>> {
    let mut out: Vec<(Point, f64)> = vec![(Vec2::ZERO, rng.gen_range(p.min_radius..=p.max_radius))];
    let mut heading = rng.gen_range(0.0..TAU);
    for _ in 1..n {
        let r = rng.gen_range(p.min_radius..=p.max_radius);
        let (c, rp) = *out.last().unwrap();
        heading += rng.gen_range(-1.0..1.0);
        let next = c + Vec2::from_angle(heading) * sep(rng, rp, r);
        if out[..out.len() - 1].iter().any(|(q, rq)| q.dist(next) < rq + r + 0.2) {
            return None;
        }
        out.push((next, r));
    }
    Some(out)
}

fn scatter(rng: &mut ChaCha8Rng, p: &RandomSceneParams, n: usize) -> Option<Vec<(Point, f64)>> {
    let mut out: Vec<(Point, f64)> = Vec::new();
    let half = 2.0 * p.max_radius * n as f64;
    for _ in 0..n {
        let r = rng.gen_range(p.min_radius..=p.max_radius);
        let c = Vec2::new(rng.gen_range(-half..half), rng.gen_range(-half..half));
        if out.iter().any(|(q, rq)| q.dist(c) < rq + r + 0.2) {
            return None;
        }
        out.push((c, r));
    }
    Some(out)
}

fn min_radius(disks: &[(Point, f64)]) -> f64 {
    disks.iter().map(|d| d.1).fold(f64::INFINITY, f64::min)
}

fn draw(rng: &mut ChaCha8Rng, family: SceneFamily, p: &RandomSceneParams) -> Option<SceneSpec> {
    let n = rng.gen_range(p.min_disks..=p.max_disks);
    let name = |tag: &str| format!("random-{tag}");
    let scene = match family {
        SceneFamily::Line => {
            let o = Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let u = Vec2::from_angle(rng.gen_range(0.0..TAU));
            let prims = if rng.gen_bool(0.5) {
                vec![Primitive::Ray { origin: o, direction: u }, Primitive::Ray { origin: o, direction: -u }]
            } else {
                vec![Primitive::HalfPlane { normal: u.perp(), offset: u.perp().dot(o) }]
            };
            SceneSpec::new(name("line"), prims, RadiusFnSpec::infinite())
        }
        SceneFamily::DisjointDisks => {
            let d = scatter(rng, p, n)?;
            let r = min_radius(&d) * p.r_scale;
            SceneSpec::new(name("disjoint-disks"), d.iter().map(|&(c, r)| disk(c, r)).collect(), RadiusFnSpec::constant(r))
        }
        SceneFamily::TangentChain => {
            let d = chain(rng, p, n, |_, a, b| a + b)?;
            let r = min_radius(&d) * p.r_scale;
            SceneSpec::new(name("tangent-chain"), d.iter().map(|&(c, r)| disk(c, r)).collect(), RadiusFnSpec::constant(r))
                .with_fill_gaps(true)
        }
        SceneFamily::OverlappingDisks => {
            let d = chain(rng, p, n, |rng, a, b| (a + b) * rng.gen_range(0.4..0.9))?;
            let r = 0.25 * min_radius(&d) * p.r_scale;
            SceneSpec::new(name("overlapping-disks"), d.iter().map(|&(c, r)| disk(c, r)).collect(), RadiusFnSpec::constant(r))
        }
        SceneFamily::DisksWithInclusions => {
            let d = scatter(rng, p, n)?;
            let mut prims: Vec<Primitive> = d.iter().map(|&(c, r)| disk(c, r)).collect();
            let (c0, r0) = d[0];
            let off = Vec2::from_angle(rng.gen_range(0.0..TAU)) * (r0 * rng.gen_range(0.0..0.5));
            prims.push(Primitive::Point { p: c0 + off });
            let mut clearance = r0 - off.norm();
            if let Some(&(c1, r1)) = d.get(1) {
                let u = Vec2::from_angle(rng.gen_range(0.0..TAU)) * (0.2 * r1);
                prims.push(Primitive::Segment { a: c1 - u, b: c1 + u });
                clearance = clearance.min(0.8 * r1);
            }
            let r = 0.2 * clearance.min(min_radius(&d)) * p.r_scale;
            SceneSpec::new(name("disks-with-inclusions"), prims, RadiusFnSpec::constant(r))
        }
        SceneFamily::SplitLine => {
            let g = rng.gen_range(0.5..1.5);
            let e = Vec2::new(1.0, 0.0);
            let prims = vec![
                Primitive::Ray { origin: e * g, direction: e },
                Primitive::Ray { origin: e * -g, direction: -e },
            ];
            let r = g * rng.gen_range(0.5..1.0) * p.r_scale;
            SceneSpec::new(name("split-line"), prims, RadiusFnSpec::constant(r))
        }
    };
    Some(scene)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenes;

    const S3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn distance_agrees_with_model() {
        let m = SetModel::build(scenes::example_2_2()).unwrap();
        let o = Oracle::new(&m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let p = Vec2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            assert!((o.distance(p) - m.distance(p)).abs() < m.tol.grid_tol, "{p:?}");
        }
    }

    #[test]
    fn ball_through_c1() {
        let m = SetModel::build(scenes::example_2_2()).unwrap();
        let o = Oracle::new(&m).unwrap();
        let res = o.max_inscribed_through(Vec2::new(-2.0 / S3, 0.0), false, &Budget::default()).unwrap();
        assert!((res.radius - 1.0).abs() < 2e-3, "{res:?}");
        assert!(res.verified);
    }

    #[test]
    fn ball_through_origin_open() {
        let m = SetModel::build(scenes::example_2_2()).unwrap();
        let o = Oracle::new(&m).unwrap();
        let res = o.max_inscribed_through(Vec2::ZERO, true, &Budget::default()).unwrap();
        assert!((res.radius - 1.0 / S3).abs() < 2e-3, "{res:?}");
        assert!(res.center.norm() < 2e-3);
    }

    #[test]
    fn rays_are_unbounded() {
        let m = SetModel::build(scenes::example_2_1()).unwrap();
        let o = Oracle::new(&m).unwrap();
        match o.max_inscribed_through(Vec2::ZERO, false, &Budget::default()) {
            Err(Error::Unbounded { largest_probe }) => assert_eq!(largest_probe, 1000.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tightness() {
        let m = SetModel::build(scenes::example_2_2()).unwrap();
        let rep = gamma_tightness_experiment(&m).unwrap();
        assert!((rep.varrho_at_one - 1.0 / S3).abs() < 1e-12);
        assert!(rep.witness_in_s);
        assert!(rep.closed_margin.abs() < 1e-12);
        assert!(rep.shrunk_radius >= 0.5658);
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn random_scenes_by_family() {
        let p = RandomSceneParams::default();
        let s1 = random_scene(1, &p).unwrap();
        assert!(s1.name.contains("disjoint"));
        let s2 = random_scene(2, &p).unwrap();
        assert!(s2.fill_gaps && s2.name.contains("tangent"));
        assert_eq!(random_scene(1, &p).unwrap(), s1);
    }

    #[test]
    fn large_radius_on_overlapping_disks_is_exhausted() {
        let p = RandomSceneParams {
            family: Some(SceneFamily::OverlappingDisks),
            r_scale: 20.0,
            max_attempts: 5,
            ..Default::default()
        };
        assert!(matches!(random_scene(3, &p), Err(Error::GenerationExhausted { attempts: 5 })));
    }
}
