//! Classify every built-in family and count its envelopes.

use sphere_envelopes::creative::Sigma;
use sphere_envelopes::envelope::envelope_count;
use sphere_envelopes::fixtures;
use sphere_envelopes::Result;

fn main() -> Result<()> {
    let labels = [Sigma::S1, Sigma::S2, Sigma::S3, Sigma::S4, Sigma::S5, Sigma::NotCreative];
    print!("{:<22} {:<12}", "family", "count");
    for s in labels {
        print!(" {:>11}", s.name());
    }
    println!();
    for name in fixtures::names() {
        let family = fixtures::family(name)?;
        let ec = envelope_count(&family, &fixtures::grid(name)?)?;
        print!("{name:<22} {:<12}", ec.count.to_string());
        for s in labels {
            print!(" {:>11.3}", ec.evidence.fraction(s));
        }
        println!();
    }
    Ok(())
}
