//! Basic invariants of a framed surface and the checks that hold them together.

use sphere_envelopes::fixtures;
use sphere_envelopes::frame::{integrability_residuals, FramedSurface};
use sphere_envelopes::Result;

fn main() -> Result<()> {
    let family = fixtures::family("parabolic-cylinder")?;
    for (u, v) in [(-0.5, 0.0), (0.0, 0.0), (0.7, 0.4)] {
        let fr = family.surface.frame(u, v)?;
        let inv = fr.invariants(u, v);
        println!("(u, v) = ({u}, {v})");
        println!("  x = {:.6}  n = {:.6}  s = {:.6}", inv.x.value(), inv.n.value(), inv.s.value());
        println!("  a1 {:+.6} b1 {:+.6} a2 {:+.6} b2 {:+.6}", inv.a1, inv.b1, inv.a2, inv.b2);
        println!("  e1 {:+.6} f1 {:+.6} g1 {:+.6}", inv.e1, inv.f1, inv.g1);
        println!("  e2 {:+.6} f2 {:+.6} g2 {:+.6}", inv.e2, inv.f2, inv.g2);
        let axioms = fr.axiom_residuals().iter().fold(0.0_f64, |m, r| m.max(r.1));
        let integrability = integrability_residuals(&family.surface, u, v)?
            .iter()
            .fold(0.0_f64, |m, r| m.max(r.abs()));
        println!(
            "  det A {:+.3e}  axioms {axioms:.1e}  reconstruction {:.1e}  integrability {integrability:.1e}",
            inv.det_a(),
            inv.reconstruction_residual()
        );
    }
    Ok(())
}
