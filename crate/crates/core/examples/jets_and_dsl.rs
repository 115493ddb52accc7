//! Parse a formula, print it back, and read off its second-order jet.

use sphere_envelopes::dsl::{parse, parse_vec};
use sphere_envelopes::Result;

fn main() -> Result<()> {
    let e = parse("sqrt(1 + u^2) * sin(v) - log(2 + cos(u*v))")?;
    println!("expression  {e}");
    println!("reparsed    {}", parse(&e.to_string())?);

    let j = e.eval_jet(0.3, -0.7)?;
    println!("at (0.3, -0.7):");
    println!("  value {:+.12}", j.val);
    println!("  d/du  {:+.12}   d/dv  {:+.12}", j.du, j.dv);
    println!("  d2/du2 {:+.12}  d2/dudv {:+.12}  d2/dv2 {:+.12}", j.duu, j.duv, j.dvv);

    let x = parse_vec("(cos(u)*cos(v), cos(u)*sin(v), sin(u))")?;
    let xj = x.eval_jet(0.3, -0.7)?;
    println!("x    = {:.12}", xj.value());
    println!("x_u  = {:.12}", xj.du());
    println!("x_v  = {:.12}", xj.dv());
    println!("|x|  = {:.15}", xj.value().norm());

    match parse("log(u)")?.eval_jet(-1.0, 0.0) {
        Ok(_) => println!("log(-1) evaluated"),
        Err(e) => println!("log(-1): {e}"),
    }
    Ok(())
}
