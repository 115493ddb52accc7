//! Describe a family in a config file and run every command on it, as the
//! `envelope-tool` binary does.

use sphere_envelopes::cli::{run, Command, FamilyConfig, Options};
use sphere_envelopes::Result;

const CONFIG: &str = r#"
[surface]
x = "(u, v, 0)"
s = "(1, 0, 0)"
n = "(0, 0, 1)"
[radius]
lambda = "r"
[bindings]
r = 0.5
[domain]
u_min = -1
u_max = 1
v_min = -1
v_max = 1
[grid]
nu = 11
nv = 11
"#;

fn main() -> Result<()> {
    let cfg = FamilyConfig::parse(CONFIG)?;
    let out = std::env::temp_dir().join("sphere-envelopes-config-pipeline");
    let opts = Options::new(&out);
    for cmd in Command::ALL {
        let o = run(cmd, &cfg, &opts);
        println!("== {cmd:?}: exit {} wrote {:?}", o.code, o.files);
        print!("{}", o.report);
    }
    println!("output in {}", out.display());
    Ok(())
}
