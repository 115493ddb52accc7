//! Decompose the discriminant set into envelope sheets, circles and spheres,
//! then recover parameters from an emitted point.

use sphere_envelopes::discriminant::{decompose_d, refine_parameters, EnvelopeTag, Part};
use sphere_envelopes::fixtures;
use sphere_envelopes::grid::Grid;
use sphere_envelopes::Result;

fn main() -> Result<()> {
    for name in ["parabolic-cylinder", "unit-sphere", "axis-half", "fixed-sphere"] {
        let family = fixtures::family(name)?;
        let grid = Grid::new(family.domain().clone(), 21, 21)?;
        let d = decompose_d(&family, &grid, 16)?;
        let tally = |p: Part| d.part(p).count();
        println!(
            "{name}: plus {} minus {} unique {} circle {} sphere {} ({} circles, {} spheres), max residual {:.1e}",
            tally(Part::Envelope(EnvelopeTag::Plus)),
            tally(Part::Envelope(EnvelopeTag::Minus)),
            tally(Part::Envelope(EnvelopeTag::Unique)),
            tally(Part::Circle),
            tally(Part::Sphere),
            d.circles,
            d.spheres,
            d.max_residual()
        );
        let (mi, mj) = (grid.nu / 3, grid.nv / 2);
        if let Some(p) = d.points.iter().find(|p| p.part != Part::Sphere && (p.i, p.j) == (mi, mj)) {
            let r = refine_parameters(p.p, &family, p.u + 1e-3, p.v - 1e-3, 1e-12)?;
            println!(
                "  {} at {:.6}: emitted from ({:.6}, {:.6}), refined to ({:.6}, {:.6})",
                p.part, p.p, p.u, p.v, r.u, r.v
            );
        }
    }
    Ok(())
}
