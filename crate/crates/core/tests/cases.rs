//! One query point per branch of the case machine. Expected radii and
//! centers are worked out by hand from the scene geometry.

use proxball::sets::{SampleSet, SetModel};
use proxball::synth::{case2_inequality_audit, synthesize, verify_certificate, CaseTag, Certificate};
use proxball::{scenes, BallOrFamily, ClosedBall, ExtReal, Vec2};

const TOL: f64 = 1e-12;

fn certify(scene: proxball::sets::SceneSpec, gamma: f64, x: Vec2) -> (SetModel, Certificate) {
    let m = SetModel::build(scene).unwrap();
    let cert = synthesize(&m, gamma, x).unwrap();
    let samples = SampleSet::build(&m, 4000, 400, m.default_window(), 3);
    assert!(verify_certificate(&m, &cert, &samples).unwrap().passed);
    (m, cert)
}

fn ball(cert: &Certificate) -> ClosedBall {
    match cert.result {
        BallOrFamily::Ball(b) => b,
        BallOrFamily::Family(f) => panic!("expected a ball, got {f:?}"),
    }
}

fn close(a: Vec2, b: Vec2) -> bool {
    a.dist(b) <= TOL
}

#[test]
fn centered_ball() {
    // d = 2, rho = 1, 3 (0.7 * 2)^2 >= 4.
    let (_, c) = certify(scenes::disk_complement(2.0), 0.7, Vec2::ZERO);
    assert_eq!(c.case_tag, CaseTag::C1);
    let b = ball(&c);
    assert!(close(b.center, Vec2::ZERO) && (b.radius - 1.4).abs() < TOL);
    assert!((c.margin - (4.0 - 1.96)).abs() < TOL);
    assert!(case2_inequality_audit(&c).is_empty());
}

#[test]
fn no_interior_infinite_radius() {
    let (_, c) = certify(scenes::full_line(), 0.7, Vec2::new(0.5, -2.0));
    assert_eq!(c.case_tag, CaseTag::C2_1_1);
    assert_eq!(c.eval.varrho, ExtReal::INF);
    match c.result {
        BallOrFamily::Family(f) => {
            assert!(close(f.anchor, Vec2::new(0.5, -2.0)));
            assert!(close(f.direction.vec(), Vec2::new(0.0, -1.0)));
        }
        BallOrFamily::Ball(_) => panic!("expected a family"),
    }
}

#[test]
fn no_interior_finite_radius() {
    // r = 10 so rho = 5; the ball sits on the far side of x from the segment.
    let (_, c) = certify(scenes::segment(10.0), 0.7, Vec2::new(0.0, 1.0));
    assert_eq!(c.case_tag, CaseTag::C2_1_2);
    let varrho = 0.5 * (0.49f64 + 100.0).sqrt();
    let b = ball(&c);
    assert!((b.radius - varrho).abs() < TOL);
    assert!(close(b.center, Vec2::new(0.0, 1.0 + varrho)));
    assert_eq!(c.t_x, Some(0.0));
}

#[test]
fn interior_infinite_radius() {
    let (_, c) = certify(scenes::half_plane(), 0.7, Vec2::new(0.0, 1.0));
    assert_eq!(c.case_tag, CaseTag::C2_2_1);
    match c.result {
        BallOrFamily::Family(f) => assert!(close(f.direction.vec(), Vec2::new(0.0, 1.0))),
        BallOrFamily::Ball(_) => panic!("expected a family"),
    }
}

#[test]
fn exterior_center_within_varrho() {
    // Outside of a radius-2 disk at (1, 0): s_x = (2, 0), y = origin,
    // |y - x| = 1 <= varrho.
    let (_, c) = certify(scenes::disk_complement(2.0), 0.7, Vec2::new(1.0, 0.0));
    assert_eq!(c.case_tag, CaseTag::C2_2_2_1);
    let varrho = 0.5 * (0.49f64 + 4.0).sqrt();
    let b = ball(&c);
    assert!(close(b.center, Vec2::ZERO) && (b.radius - varrho).abs() < TOL);
    assert!((c.t_x.unwrap() - (varrho - 1.0)).abs() < TOL);
}

#[test]
fn exterior_center_beyond_twice_varrho() {
    // Origin of the three-disk scene: y = (-2/sqrt 3, 0), farther than 2 varrho.
    let (_, c) = certify(scenes::example_2_2(), 0.69, Vec2::ZERO);
    assert_eq!(c.case_tag, CaseTag::C2_2_2_2_1);
    let rho_x = 1.0 / 3f64.sqrt();
    let g = 0.69 * rho_x;
    let varrho = 0.5 * (g * g + 1.0).sqrt();
    let y = c.y_center_aux.unwrap();
    assert!(close(y, Vec2::new(-2.0 * rho_x, 0.0)));
    assert!(y.norm() > 2.0 * varrho);
    let b = ball(&c);
    assert!((b.radius - varrho).abs() < TOL);
    assert!(close(b.center, Vec2::new(-varrho, 0.0)));
    assert!(case2_inequality_audit(&c).iter().all(|a| a.holds));
}

#[test]
fn exterior_center_between_varrho_and_twice() {
    // (0, 1.8) against a radius-2 disk: |y - x| = 1.8 in (varrho, 2 varrho].
    let (_, c) = certify(scenes::disk_complement(2.0), 0.7, Vec2::new(0.0, 1.8));
    assert_eq!(c.case_tag, CaseTag::C2_2_2_2_2);
    let rho_x = 0.2f64;
    let varrho = 0.5 * ((0.7 * rho_x).powi(2) + 4.0).sqrt();
    let b = ball(&c);
    assert!((b.radius - varrho).abs() < TOL);
    assert!(close(b.center, Vec2::new(0.0, 1.8 - varrho)));
    assert!(case2_inequality_audit(&c).iter().all(|a| a.holds));
}
