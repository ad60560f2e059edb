use proptest::prelude::*;

use proxball::geom::opposite_points;
use proxball::proxcheck::{ball_in_complement, nested_segment_implication};
use proxball::radius::{self, GAMMA_MIN};
use proxball::render::render_svg;
use proxball::sets::{SampleSet, SetModel};
use proxball::synth::{ball_to_cert, cert_to_ball, synthesize, verify_certificate};
use proxball::{scenes, BallOrFamily, ClosedBall, ExtReal, ToleranceConfig, UnitVector, Vec2};

fn model(name: &str) -> SetModel {
    SetModel::build(scenes::by_name(name).unwrap()).unwrap()
}

/// A point of the complement picked from `(u, v)` in the unit square of the
/// scene window, or `None` when it lands in S or hugs the boundary.
fn complement_point(m: &SetModel, u: f64, v: f64) -> Option<Vec2> {
    let w = m.default_window();
    let p = Vec2::new(w.min.x + u * w.width(), w.min.y + v * w.height());
    (!m.contains(p) && m.distance(p) > 1e-3).then_some(p)
}

fn gamma() -> impl Strategy<Value = f64> {
    GAMMA_MIN..0.999
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cert_ball_round_trip(x in (-5.0..5.0, -5.0..5.0), theta in 0.0..std::f64::consts::TAU,
                            varrho in 0.01..10.0, frac in 0.0..0.99) {
        let x = Vec2::new(x.0, x.1);
        let zeta = UnitVector::from_angle(theta);
        let t = frac * varrho;
        let rho = ExtReal::Finite(varrho);
        let ball = cert_to_ball(x, rho, zeta, t).unwrap();
        let (z2, t2) = ball_to_cert(x, &ball, rho).unwrap();
        let t2 = t2.unwrap();
        prop_assert!((t2 - t).abs() <= 1e-9 * (1.0 + varrho));
        if t > 1e-6 {
            prop_assert!((z2.vec() - zeta.vec()).norm() <= 1e-9);
        }
    }

    #[test]
    fn opposite_points_trichotomy(c in (-3.0..3.0, -3.0..3.0), r in 0.1..4.0, theta in 0.0..std::f64::consts::TAU,
                                  s in (-8.0..8.0, -8.0..8.0)) {
        let ball = ClosedBall::new(Vec2::new(c.0, c.1), r).unwrap();
        let (y, z) = opposite_points(&ball, UnitVector::from_angle(theta));
        let s = Vec2::new(s.0, s.1);
        let ip = (s - y).dot(s - z);
        let gap = s.dist(ball.center) - r;
        let scale = 1e-9 * (1.0 + r * r + s.norm_sq());
        if gap < -1e-6 { prop_assert!(ip < 0.0); }
        if gap > 1e-6 { prop_assert!(ip > 0.0); }
        if gap.abs() <= 1e-12 { prop_assert!(ip.abs() <= scale); }
    }

    #[test]
    fn nested_segments_have_no_counterexample(y in (-2.0..2.0, -2.0..2.0), theta in 0.0..std::f64::consts::TAU,
                                              len in 0.5..3.0, a in 0.05..0.45, b in 0.55..0.95, seed in 0u64..1000) {
        let y = Vec2::new(y.0, y.1);
        let z = y + Vec2::from_angle(theta) * len;
        let (yp, zp) = (y.lerp(z, a), y.lerp(z, b));
        let mut rng = seed;
        let mut next = || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (rng >> 11) as f64 / (1u64 << 53) as f64
        };
        let samples: Vec<Vec2> = (0..10_000).map(|_| Vec2::new(next() * 10.0 - 5.0, next() * 10.0 - 5.0)).collect();
        let rep = nested_segment_implication(y, z, yp, zp, &samples, &ToleranceConfig::default()).unwrap();
        prop_assert!(rep.min_margin > 0.0, "{rep:?}");
    }

    #[test]
    fn threshold_forms_agree(g in gamma(), rho_x in 0.01f64..10.0, rho in 0.0f64..10.0) {
        let lhs: f64 = g * rho_x;
        let first = lhs >= 0.5 * (lhs * lhs + 4.0 * rho * rho).sqrt();
        let second = 3.0 * g * g * rho_x * rho_x >= 4.0 * rho * rho;
        let near = (3.0 * g * g * rho_x * rho_x - 4.0 * rho * rho).abs() <= 1e-12 * (1.0 + rho * rho);
        prop_assert!(first == second || near);
    }

    #[test]
    fn varrho_is_monotone_and_dominant(g1 in gamma(), g2 in gamma(), rho_x in 0.01f64..10.0, rho in 0.0f64..10.0) {
        let (lo, hi) = if g1 <= g2 { (g1, g2) } else { (g2, g1) };
        let a = radius::varrho_gamma(lo, rho_x, ExtReal::Finite(rho)).finite().unwrap();
        let b = radius::varrho_gamma(hi, rho_x, ExtReal::Finite(rho)).finite().unwrap();
        prop_assert!(a <= b);
        prop_assert!(a >= rho && a >= lo * rho_x);
        prop_assert_eq!(radius::varrho_gamma(lo, rho_x, ExtReal::INF), ExtReal::INF);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distance_is_one_lipschitz(i in 0usize..scenes::NAMES.len(), p in (0.0..1.0, 0.0..1.0), q in (0.0..1.0, 0.0..1.0)) {
        let m = model(scenes::NAMES[i]);
        let w = m.default_window();
        let at = |u: (f64, f64)| Vec2::new(w.min.x + u.0 * w.width(), w.min.y + u.1 * w.height());
        let (a, b) = (at(p), at(q));
        prop_assert!((m.distance(a) - m.distance(b)).abs() <= a.dist(b) + 1e-9);
    }

    #[test]
    fn synthesized_certificates_verify(i in 0usize..scenes::NAMES.len(), g in gamma(), u in 0.0..1.0, v in 0.0..1.0) {
        let m = model(scenes::NAMES[i]);
        let Some(x) = complement_point(&m, u, v) else { return Ok(()) };
        let cert = synthesize(&m, g, x).unwrap();
        let samples = SampleSet::build(&m, 1500, 150, m.default_window(), 7);
        let rep = verify_certificate(&m, &cert, &samples).unwrap();
        prop_assert!(rep.passed, "{rep:?}");
        let ev = cert.eval;
        prop_assert!(ev.varrho >= ev.rho);
        if let BallOrFamily::Ball(b) = cert.result {
            let reach = x.dist(b.center);
            prop_assert!(reach <= b.radius + 1e-9);
            prop_assert!((reach - (b.radius - cert.t_x.unwrap())).abs() <= 1e-9 * (1.0 + b.radius));
        }
        // A slightly shrunk centered ball always fits.
        let small = ClosedBall::new(x, 0.999 * g * ev.rho_x).unwrap();
        prop_assert!(ball_in_complement(&m, &samples, &small, true).unwrap().passed);
    }

    #[test]
    fn figures_are_deterministic(i in 0usize..scenes::NAMES.len(), u in 0.0..1.0, v in 0.0..1.0) {
        let m = model(scenes::NAMES[i]);
        let Some(x) = complement_point(&m, u, v) else { return Ok(()) };
        let cert = synthesize(&m, 0.8, x).unwrap();
        let a = render_svg(&m, std::slice::from_ref(&cert), &[x]);
        let b = render_svg(&m, &[cert], &[x]);
        prop_assert_eq!(a, b);
    }
}
