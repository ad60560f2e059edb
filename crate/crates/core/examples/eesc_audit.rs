//! Exterior sphere audit of the bundled scenes and a few random ones, and a
//! radius that is too large for a disk complement.

use proxball::oracle::{random_scene, RandomSceneParams};
use proxball::proxcheck::eesc_check;
use proxball::sets::{RadiusFnSpec, SampleSet, SceneSpec, SetModel};
use proxball::scenes;

fn audit(scene: SceneSpec) -> proxball::Result<()> {
    let model = SetModel::build(scene)?;
    let samples = SampleSet::build(&model, 5_000, 500, model.default_window(), 0);
    let rep = eesc_check(&model, 200, &samples);
    println!(
        "{:<34} passed: {:<5} failures: {:>3}  worst margin: {:.3e}",
        model.scene.name, rep.passed, rep.failures, rep.worst_margin
    );
    Ok(())
}

fn main() -> proxball::Result<()> {
    for name in scenes::NAMES {
        audit(scenes::by_name(name)?)?;
    }
    for seed in 0..6 {
        audit(random_scene(seed, &RandomSceneParams::default())?)?;
    }
    audit(scenes::disk_complement(2.0).with_radius_fn(RadiusFnSpec::constant(3.0)))?;
    Ok(())
}
