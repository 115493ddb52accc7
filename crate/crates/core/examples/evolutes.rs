//! Evolute roots of framed surfaces and the evolute check for one-envelope
//! families.

use sphere_envelopes::applications::{evolute_at, evolute_point, verify_evolute};
use sphere_envelopes::fixtures;
use sphere_envelopes::frame::FramedSurface;
use sphere_envelopes::Result;

fn main() -> Result<()> {
    for name in ["cone-distance", "axis-full", "involute-circle"] {
        let family = fixtures::family(name)?;
        let r = verify_evolute(&family, &fixtures::grid(name)?)?;
        println!("{name}: evolute check max {:.1e} over {} points, passes {}", r.max(), r.points, r.passes());
    }

    let family = fixtures::family("involute-circle")?;
    let (u, v) = (0.4, 0.3);
    let inv = family.surface.frame(u, v)?.invariants(u, v);
    let sol = evolute_at(&family.surface, u, v, family.tol())?;
    println!("involute-circle at ({u}, {v}):");
    for root in sol.roots() {
        let (p, _) = evolute_point(&inv, root);
        println!("  delta {:+.6} theta {:?} double {} -> {:.6}", root.delta, root.theta, root.double, p);
    }
    Ok(())
}
