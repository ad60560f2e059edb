//! Witness <-> ball conversions and certificate JSON.

use proxball::geom::{UnitVector, Vec2};
use proxball::scenes;
use proxball::sets::SetModel;
use proxball::synth::{ball_to_cert, cert_to_ball, synthesize, Certificate};
use proxball::ExtReal;

fn main() -> proxball::Result<()> {
    let x = Vec2::new(0.3, -0.2);
    let zeta = UnitVector::from_angle(1.0);
    for t in [0.0, 0.4, 1.0] {
        let ball = cert_to_ball(x, ExtReal::Finite(1.0), zeta, t)?;
        let (z, t_back) = ball_to_cert(x, &ball, ExtReal::Finite(1.0))?;
        println!("t = {t}: ball {ball:?} -> zeta {:?}, t {:?}", z.vec(), t_back);
    }

    let model = SetModel::build(scenes::example_2_2())?;
    let cert = synthesize(&model, 0.69, Vec2::ZERO)?;
    let text = cert.to_json();
    println!("{text}");
    assert_eq!(Certificate::from_json(&text)?, cert);
    Ok(())
}
