//! Certificates over a grid of query points on every bundled scene, tallied
//! by case.

use std::collections::BTreeMap;

use proxball::geom::Vec2;
use proxball::sets::{SampleSet, SetModel};
use proxball::synth::{synthesize, verify_certificate};
use proxball::scenes;

fn main() -> proxball::Result<()> {
    let gamma = std::env::args().nth(1).map(|g| g.parse().expect("gamma")).unwrap_or(0.7);
    for name in scenes::NAMES {
        let model = SetModel::build(scenes::by_name(name)?)?;
        let window = model.default_window();
        let samples = SampleSet::build(&model, 10_000, 1_000, window, 1);
        let mut tally = BTreeMap::new();
        let mut failed = 0;
        for i in 0..15 {
            for j in 0..15 {
                let x = Vec2::new(
                    window.min.x + window.width() * (i as f64 + 0.5) / 15.0,
                    window.min.y + window.height() * (j as f64 + 0.5) / 15.0,
                );
                if model.distance(x) < 0.02 {
                    continue;
                }
                let cert = synthesize(&model, gamma, x)?;
                if !verify_certificate(&model, &cert, &samples)?.passed {
                    failed += 1;
                }
                *tally.entry(cert.case_tag.as_str()).or_insert(0) += 1;
            }
        }
        println!("{name:<22} {tally:?}  failed: {failed}");
    }
    Ok(())
}
