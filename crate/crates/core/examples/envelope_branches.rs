//! Sample both envelopes of a two-envelope family and check the residuals.

use sphere_envelopes::envelope::{envelope_at, sample_branch, Branch};
use sphere_envelopes::fixtures;
use sphere_envelopes::Result;

fn main() -> Result<()> {
    let name = "parabolic-cylinder";
    let family = fixtures::family(name)?;
    let grid = fixtures::grid(name)?;
    for branch in [Branch::PlusGamma, Branch::MinusGamma] {
        let b = sample_branch(&family, &grid, &branch)?;
        let r = b.report;
        println!(
            "{branch}: {} points, max residuals {:.1e} {:.1e} {:.1e}",
            r.points, r.on_sphere, r.tangency_u, r.tangency_v
        );
    }
    println!("along v = 0:");
    for u in [-0.8, -0.4, 0.0, 0.4, 0.8] {
        let p = envelope_at(&family, u, 0.0, &Branch::PlusGamma)?;
        let m = envelope_at(&family, u, 0.0, &Branch::MinusGamma)?;
        println!(
            "  u {u:+.1}  {:<6}  gamma {:.4}  f+ {:.6}  f- {:.6}",
            p.sigma.name(),
            p.gamma,
            p.f,
            m.f
        );
    }
    Ok(())
}
