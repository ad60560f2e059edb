//! Brute-force largest balls through a few points, next to the radius the
//! certificate guarantees.

use proxball::error::Error;
use proxball::geom::Vec2;
use proxball::oracle::{Budget, Oracle};
use proxball::sets::SetModel;
use proxball::{radius, scenes};

fn main() -> proxball::Result<()> {
    for (name, points) in [
        ("example-2.2", vec![Vec2::ZERO, Vec2::new(-1.2, 0.2), Vec2::new(0.6, -0.9)]),
        ("disk-complement", vec![Vec2::ZERO, Vec2::new(1.0, 0.5)]),
        ("example-2.1", vec![Vec2::ZERO]),
    ] {
        let model = SetModel::build(scenes::by_name(name)?)?;
        let oracle = Oracle::new(&model)?;
        for x in points {
            let guaranteed = radius::evaluate(&model, 0.7, x)?.varrho;
            match oracle.max_inscribed_through(x, false, &Budget::default()) {
                Ok(res) => println!("{name} ({}, {}): best {:.5}, guaranteed {guaranteed}", x.x, x.y, res.radius),
                Err(Error::Unbounded { largest_probe }) => {
                    println!("{name} ({}, {}): unbounded (probed {largest_probe}), guaranteed {guaranteed}", x.x, x.y)
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}
