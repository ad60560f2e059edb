//! Why gamma must stay below one: at gamma = 1 the radius formula gives the
//! critical ball at the origin of the three-disk scene, which touches S.

use proxball::oracle::gamma_tightness_experiment;
use proxball::scenes;
use proxball::sets::SetModel;

fn main() -> proxball::Result<()> {
    let model = SetModel::build(scenes::example_2_2())?;
    let rep = gamma_tightness_experiment(&model)?;
    println!("varrho at gamma = 1:       {:.10}", rep.varrho_at_one);
    println!("witness in S:              ({:.6}, {:.6}) -> {}", rep.witness.x, rep.witness.y, rep.witness_in_s);
    println!("d_S(0)^2 - varrho^2:       {:e}", rep.closed_margin);
    println!("best ball through origin:  {:.6} (bound respected: {})", rep.oracle_radius, rep.oracle_bound_ok);
    println!("shrunken ball {:.6} fits:  {}", rep.shrunk_radius, rep.shrunk_fits);
    println!("{}", if rep.passed { "gamma = 1 is not admissible" } else { "experiment inconclusive" });
    Ok(())
}
