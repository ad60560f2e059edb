//! Writes the three-disk scene with the certificate at the origin and a few
//! neighbours as SVG.

use proxball::geom::Vec2;
use proxball::render::render_svg;
use proxball::scenes;
use proxball::sets::SetModel;
use proxball::synth::synthesize;

fn main() -> proxball::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "example-2.2.svg".into());
    let model = SetModel::build(scenes::example_2_2())?;
    let certs = [Vec2::ZERO, Vec2::new(-1.2, 0.3), Vec2::new(0.6, 0.8)]
        .into_iter()
        .map(|x| synthesize(&model, 0.69, x))
        .collect::<proxball::Result<Vec<_>>>()?;
    std::fs::write(&path, render_svg(&model, &certs, &[]))?;
    println!("wrote {path}");
    Ok(())
}
