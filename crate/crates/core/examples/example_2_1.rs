//! Two collinear rays with r = 1: the tangent ball family at the origin
//! touches S at both ray endpoints, so the certificate inequality is tight.

use proxball::geom::{AsymptoticBallFamily, BallOrFamily, UnitVector, Vec2};
use proxball::sets::{SampleSet, SetModel};
use proxball::synth::{ball_to_cert, synthesize, verify_witness, UcbWitness};
use proxball::{radius, scenes, ExtReal};

fn main() -> proxball::Result<()> {
    let model = SetModel::build(scenes::example_2_1())?;
    let samples = SampleSet::build(&model, 10_000, 0, model.default_window(), 0);

    let (rho, s_x, d) = radius::rho(&model, Vec2::ZERO)?;
    println!("d_S(0) = {d}, rho(0) = {rho}, projection chosen = ({}, {})", s_x.x, s_x.y);

    let up = UnitVector::normalize(Vec2::new(0.0, 1.0))?;
    let family = BallOrFamily::Family(AsymptoticBallFamily { anchor: Vec2::ZERO, direction: up });
    let (zeta_x, t_x) = ball_to_cert(Vec2::ZERO, &family, ExtReal::INF)?;
    let report = verify_witness(&model, &UcbWitness { x: Vec2::ZERO, varrho: ExtReal::INF, zeta_x, t_x }, &samples)?;
    println!(
        "tangent family along (0,1): max <zeta, s - x> = {} at ({}, {}), verdict {:?}",
        -report.min_margin, report.argmin_point.x, report.argmin_point.y, report.verdict
    );

    for x in [Vec2::new(0.0, 0.5), Vec2::new(3.0, 0.5), Vec2::new(-4.0, -2.0)] {
        let cert = synthesize(&model, 0.7, x)?;
        println!("x = ({}, {}): {} radius {}", x.x, x.y, cert.case_tag.as_str(), cert.varrho());
    }
    Ok(())
}
