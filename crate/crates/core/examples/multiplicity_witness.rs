//! Two distinct envelopes of a family with uncountably many, built by bumping
//! the branch angle inside a small disc.

use sphere_envelopes::envelope::{envelope_count, multiplicity_witness, AngleField};
use sphere_envelopes::fixtures;
use sphere_envelopes::Result;

fn main() -> Result<()> {
    for (name, center) in [("fixed-sphere", (0.0, 0.0)), ("axis-half", (0.0, 1.5))] {
        let family = fixtures::family(name)?;
        let grid = fixtures::grid(name)?;
        let count = envelope_count(&family, &grid)?;
        println!("{name}: {} envelopes, open witness at {:?}", count.count, count.evidence.open_witness);
        let w = multiplicity_witness(&family, center, 0.5, 0.3, AngleField::constant(0.0), &grid)?;
        println!("  base      {}  max residual {:.1e}", w.base, w.base_report.max());
        println!("  perturbed {}  max residual {:.1e}", w.perturbed, w.perturbed_report.max());
        println!(
            "  separation at centre {:.4}, largest difference outside the disc {:.1e}",
            w.separation, w.outside_difference
        );
    }
    Ok(())
}
