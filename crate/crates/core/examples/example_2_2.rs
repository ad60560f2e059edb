//! Three mutually tangent unit disks removed from the plane, the pocket
//! between them filled. Reproduces the distances and radii quoted for this
//! scene and builds the certificate at the origin.

use proxball::geom::Vec2;
use proxball::oracle::{Budget, Oracle};
use proxball::sets::{SampleSet, SetModel};
use proxball::synth::{case2_inequality_audit, synthesize, verify_certificate};
use proxball::{radius, scenes};

fn main() -> proxball::Result<()> {
    let model = SetModel::build(scenes::example_2_2())?;
    let c1 = Vec2::new(-2.0 / 3f64.sqrt(), 0.0);

    println!("d_S(c1)   = {:.12}", model.distance(c1));
    println!("d_S(0,0)  = {:.12}", model.distance(Vec2::ZERO));
    let eval = radius::evaluate(&model, 0.69, Vec2::ZERO)?;
    println!("rho(0,0)  = {}", eval.rho);
    println!("varrho    = {:.12}  (gamma 0.69)", eval.varrho.to_f64());

    let oracle = Oracle::new(&model)?;
    let open = oracle.max_inscribed_through(Vec2::ZERO, true, &Budget::default())?;
    println!("largest open ball through the origin (brute force): {:.5}", open.radius);

    let cert = synthesize(&model, 0.69, Vec2::ZERO)?;
    let samples = SampleSet::build(&model, 10_000, 1_000, model.default_window(), 0);
    let rep = verify_certificate(&model, &cert, &samples)?;
    println!("case {} margin {:.6} ({:?})", cert.case_tag.as_str(), rep.min_margin, rep.verdict);
    for item in case2_inequality_audit(&cert) {
        println!("  {:<48} {:>10.6} vs {:>10.6}  {}", item.name, item.lhs, item.rhs, if item.holds { "ok" } else { "FAIL" });
    }
    Ok(())
}
