//! Pedal surfaces, and the second envelope of a family of spheres through a
//! fixed point.

use sphere_envelopes::applications::{pedal_at, verify_pedal};
use sphere_envelopes::fixtures;
use sphere_envelopes::{Result, Vec3};

fn main() -> Result<()> {
    let family = fixtures::family("sphere-through-origin")?;
    let base = Vec3::new(0.2, -0.1, 0.3);
    for (u, v) in [(0.0, 0.0), (0.5, 1.0), (-0.3, 2.0)] {
        let p = pedal_at(&family.surface, base, u, v)?;
        println!("({u}, {v}): support {:+.6}, pedal point {:.6}", p.support, p.point);
    }

    let r = verify_pedal(&family, &fixtures::grid("sphere-through-origin")?)?;
    println!("constant branch {} at {:.6} (spread {:.1e})", r.constant, r.f1, r.spread);
    println!("other branch {} against twice the pedal: max error {:.1e}", r.other.branch, r.max_error);
    println!("passes {}", r.passes());
    Ok(())
}
