//! Batch front end behind the `envelope-tool` binary.
//!
//! Every command reads a [`FamilyConfig`], writes its files into the output
//! directory and returns an [`Outcome`] carrying the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | `verify` ran and the check failed |
//! | 2 | configuration, parse or evaluation error |
//! | 3 | the family is not creative somewhere on the grid |
//! | 4 | the requested branch does not exist at some grid point |
//! | 5 | a theorem's hypothesis does not hold |

pub mod config;
pub mod mesh;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::applications::{evolute_grid, evolute_point, pedal_at, verify_evolute, verify_pedal, EvoluteSolution};
use crate::creative::{classify_grid, Classification, Sigma};
use crate::discriminant::{decompose_d, Part};
use crate::dsl::parse_vec_with_bindings;
use crate::envelope::{count_from_summary, sample_branch, verify_envelope, Branch, Candidate, Count, EnvelopeBranch};
use crate::error::{Error, Result};
use crate::frame::{basic_invariants, FramedSurface, SphereFamily};
use crate::grid::Grid;
use crate::vector::Vec3;

pub use config::FamilyConfig;
use mesh::{num, Mesh, MeshObject, Table};

/// Relative jump of an evolute root between neighbouring samples above which
/// a row break is reported.
pub const ROOT_JUMP: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Classify,
    Envelope,
    Discriminant,
    Evolute,
    Pedal,
    Verify,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Classify,
        Command::Envelope,
        Command::Discriminant,
        Command::Evolute,
        Command::Pedal,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Envelope => "envelope",
            Command::Discriminant => "discriminant",
            Command::Evolute => "evolute",
            Command::Pedal => "pedal",
            Command::Verify => "verify",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config {
                line: 0,
                message: format!("unknown command `{s}`"),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchArg {
    Plus,
    Minus,
    Unique,
    Custom,
}

impl FromStr for BranchArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" => Ok(BranchArg::Plus),
            "minus" => Ok(BranchArg::Minus),
            "unique" => Ok(BranchArg::Unique),
            "custom" => Ok(BranchArg::Custom),
            _ => Err(Error::Config {
                line: 0,
                message: format!("unknown branch `{s}`; expected plus, minus, unique or custom"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub branch: Option<BranchArg>,
    pub out: PathBuf,
    pub point: Option<Vec3>,
}

impl Options {
    pub fn new(out: impl Into<PathBuf>) -> Self {
        Self {
            branch: None,
            out: out.into(),
            point: None,
        }
    }
}

/// Parses `x,y,z`.
pub fn parse_point(s: &str) -> Result<Vec3> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::Config {
        line: 0,
        message: format!("expected a point `x,y,z`, got `{s}`"),
    };
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut c = [0.0; 3];
    for (k, p) in parts.iter().enumerate() {
        c[k] = p.parse().map_err(|_| bad())?;
    }
    Ok(Vec3::from(c))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    /// Files written, relative to the output directory, in write order.
    pub files: Vec<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotCreative { .. } => 3,
        Error::BranchUnavailable { .. } => 4,
        Error::HypothesisNotMet(_) | Error::NoOpenNeighborhood(_) => 5,
        _ => 2,
    }
}

/// Runs `f` on a pool capped by `ENVELOPE_TOOL_THREADS` when it is set.
pub fn with_thread_cap<R: Send>(f: impl FnOnce() -> R + Send) -> Result<R> {
    match std::env::var("ENVELOPE_TOOL_THREADS") {
        Ok(v) => {
            let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| Error::Config {
                line: 0,
                message: format!("ENVELOPE_TOOL_THREADS must be a positive integer, got `{v}`"),
            })?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Io(e.to_string()))?;
            Ok(pool.install(f))
        }
        Err(_) => Ok(f()),
    }
}

/// Runs a command; errors become exit codes with the message as report.
pub fn run(cmd: Command, cfg: &FamilyConfig, opts: &Options) -> Outcome {
    let mut out = Output::new(&opts.out);
    match execute(cmd, cfg, opts, &mut out) {
        Ok((code, report)) => Outcome {
            code,
            report,
            files: out.files,
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            report: format!("error: {e}\n"),
            files: out.files,
        },
    }
}

struct Output {
    dir: PathBuf,
    files: Vec<String>,
}

impl Output {
    fn new(dir: &Path) -> Self {
        Self {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        }
    }

    fn write(&mut self, name: &str, text: &str) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        fs::write(self.dir.join(name), text)?;
        self.files.push(name.to_string());
        Ok(())
    }

    fn table(&mut self, name: &str, t: &Table) -> Result<()> {
        self.write(name, &t.to_csv_string())
    }

    fn mesh(&mut self, name: &str, m: &Mesh) -> Result<()> {
        self.write(name, &m.to_obj_string())
    }
}

fn execute(cmd: Command, cfg: &FamilyConfig, opts: &Options, out: &mut Output) -> Result<(i32, String)> {
    let family = cfg.family()?;
    let grid = cfg.grid()?;
    match cmd {
        Command::Classify => classify(&family, &grid, out),
        Command::Envelope => envelope(cfg, &family, &grid, opts, out),
        Command::Discriminant => discriminant(cfg, &family, &grid, out),
        Command::Evolute => evolute(&family, &grid, out),
        Command::Pedal => pedal(&family, &grid, opts, out),
        Command::Verify => verify(cfg, &family, &grid, out),
    }
}

fn classify(family: &SphereFamily, grid: &Grid, out: &mut Output) -> Result<(i32, String)> {
    let c = classify_grid(family, grid)?;
    let mut t = Table::new(&["u", "v", "sigma", "J_F", "J_a", "J_b", "alpha", "beta"]);
    for p in &c.points {
        let mut row = vec![num(p.point.u), num(p.point.v)];
        match p.solution {
            Some(s) => {
                let j = s.jays;
                row.push(s.sigma.to_string());
                row.extend([j.j_f, j.j_a, j.j_b, s.alpha_beta.0, s.alpha_beta.1].map(num));
            }
            None => {
                row.push("excluded".into());
                row.extend(std::iter::repeat_n(String::new(), 5));
            }
        }
        t.push(row);
    }
    let s = &c.summary;
    let count = count_from_summary(s);
    let mut summary = String::new();
    writeln!(summary, "points={}", s.total).unwrap();
    writeln!(summary, "excluded={}", s.excluded).unwrap();
    for sigma in Sigma::ALL {
        writeln!(summary, "{}={}", sigma, s.count(sigma)).unwrap();
    }
    writeln!(summary, "dense_sigma1={}", s.dense_sigma1).unwrap();
    writeln!(summary, "dense_sigma2={}", s.dense_sigma2).unwrap();
    writeln!(summary, "dense_sigma3={}", s.dense_sigma3).unwrap();
    match s.open_witness {
        Some((i, j)) => writeln!(summary, "open_witness={i},{j}").unwrap(),
        None => writeln!(summary, "open_witness=none").unwrap(),
    }
    writeln!(summary, "count={count}").unwrap();
    out.table("classify.csv", &t)?;
    out.write("classify_summary.txt", &summary)?;
    let code = if s.any_not_creative() { 3 } else { 0 };
    Ok((code, summary))
}

/// The error for the first non-creative point of a classified grid.
fn not_creative(c: &Classification) -> Error {
    let p = c
        .points
        .iter()
        .find(|p| p.sigma() == Some(Sigma::NotCreative))
        .expect("a non-creative point");
    Error::NotCreative {
        u: p.point.u,
        v: p.point.v,
    }
}

fn branches_for(cfg: &FamilyConfig, family: &SphereFamily, grid: &Grid, arg: Option<BranchArg>) -> Result<Vec<Branch>> {
    let custom = || cfg.custom_branch();
    Ok(match arg {
        Some(BranchArg::Plus) => vec![Branch::PlusGamma],
        Some(BranchArg::Minus) => vec![Branch::MinusGamma],
        Some(BranchArg::Unique) => vec![Branch::UniqueGammaZero],
        Some(BranchArg::Custom) => vec![custom()?],
        None => {
            let c = classify_grid(family, grid)?;
            match count_from_summary(&c.summary) {
                Count::Two => vec![Branch::PlusGamma, Branch::MinusGamma],
                Count::One => vec![Branch::UniqueGammaZero],
                Count::Uncountable => vec![custom()?],
                Count::NotCreative => return Err(not_creative(&c)),
                Count::Undetermined => {
                    return Err(Error::HypothesisNotMet(
                        "the number of envelopes is undetermined on this grid; choose one with --branch".into(),
                    ))
                }
            }
        }
    })
}

fn envelope_files(b: &EnvelopeBranch, grid: &Grid, out: &mut Output) -> Result<String> {
    let name = b.branch.name();
    let samples: Vec<Option<Vec3>> = b.samples.iter().map(|s| s.map(|s| s.f)).collect();
    let mut mesh = Mesh::default();
    mesh.push(MeshObject::from_grid(format!("envelope-{name}"), grid, &samples));
    let mut t = Table::new(&[
        "u",
        "v",
        "fx",
        "fy",
        "fz",
        "nux",
        "nuy",
        "nuz",
        "on_sphere",
        "tangency_u",
        "tangency_v",
    ]);
    for s in b.samples.iter().flatten() {
        let mut row = vec![num(s.point.u), num(s.point.v)];
        row.extend(s.f.to_array().map(num));
        row.extend(s.nu.to_array().map(num));
        row.extend(s.residuals.map(num));
        t.push(row);
    }
    let r = &b.report;
    let mut maxima = Table::new(&["branch", "points", "on_sphere_max", "tangency_u_max", "tangency_v_max", "failures"]);
    maxima.push(vec![
        b.branch.to_string(),
        r.points.to_string(),
        num(r.on_sphere),
        num(r.tangency_u),
        num(r.tangency_v),
        r.failures.iter().sum::<usize>().to_string(),
    ]);
    out.mesh(&format!("envelope_{name}.obj"), &mesh)?;
    out.table(&format!("envelope_{name}.csv"), &t)?;
    out.table(&format!("envelope_{name}_residuals.csv"), &maxima)?;
    Ok(format!(
        "{}: points={} max_on_sphere={} max_tangency_u={} max_tangency_v={} {}\n",
        b.branch,
        r.points,
        num(r.on_sphere),
        num(r.tangency_u),
        num(r.tangency_v),
        if r.passes() { "PASS" } else { "FAIL" }
    ))
}

fn envelope(cfg: &FamilyConfig, family: &SphereFamily, grid: &Grid, opts: &Options, out: &mut Output) -> Result<(i32, String)> {
    let mut report = String::new();
    for b in branches_for(cfg, family, grid, opts.branch)? {
        let sampled = sample_branch(family, grid, &b)?;
        report.push_str(&envelope_files(&sampled, grid, out)?);
    }
    Ok((0, report))
}

fn discriminant(cfg: &FamilyConfig, family: &SphereFamily, grid: &Grid, out: &mut Output) -> Result<(i32, String)> {
    let c = classify_grid(family, grid)?;
    if c.summary.any_not_creative() {
        return Err(not_creative(&c));
    }
    let d = decompose_d(family, grid, cfg.samples)?;
    let m = d.m;
    let mut mesh = Mesh::default();

    let mut sheets: BTreeMap<Part, Vec<Option<Vec3>>> = BTreeMap::new();
    let mut rings: BTreeMap<(usize, usize), Vec<Vec3>> = BTreeMap::new();
    let mut spheres: Vec<Vec<Vec3>> = Vec::new();
    let mut current: Option<(usize, usize)> = None;
    for p in &d.points {
        match p.part {
            Part::Envelope(_) => {
                sheets.entry(p.part).or_insert_with(|| vec![None; grid.len()])[grid.index(p.i, p.j)] = Some(p.p);
            }
            Part::Circle => rings.entry((p.i, p.j)).or_default().push(p.p),
            Part::Sphere => {
                if current != Some((p.i, p.j)) {
                    spheres.push(Vec::new());
                    current = Some((p.i, p.j));
                }
                spheres.last_mut().expect("pushed").push(p.p);
            }
        }
    }
    for (part, samples) in &sheets {
        mesh.push(MeshObject::from_grid(part.to_string(), grid, samples));
    }
    if !rings.is_empty() {
        let mut obj = MeshObject::new("circle");
        let mut start = BTreeMap::new();
        for (&(i, j), ring) in &rings {
            start.insert((i, j), obj.push_ring(ring));
        }
        for (&(i, j), &a) in &start {
            for next in [(i + 1, j), (i, j + 1)] {
                if let Some(&b) = start.get(&next) {
                    obj.join_rings(a, b, m);
                }
            }
        }
        mesh.push(obj);
    }
    let mut seen: Vec<Vec<[u64; 3]>> = Vec::new();
    for sphere in spheres {
        let key: Vec<[u64; 3]> = sphere.iter().map(|p| p.to_array().map(f64::to_bits)).collect();
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        let mut obj = MeshObject::new(format!("sphere-{}", seen.len() - 1));
        obj.vertices = sphere;
        mesh.push(obj);
    }

    let mut t = Table::new(&["part", "i", "j", "k", "u", "v", "x", "y", "z", "F", "F_u", "F_v"]);
    for p in &d.points {
        let mut row = vec![p.part.to_string(), p.i.to_string(), p.j.to_string(), p.k.to_string(), num(p.u), num(p.v)];
        row.extend(p.p.to_array().map(num));
        row.extend(p.residuals.map(num));
        t.push(row);
    }
    out.mesh("discriminant.obj", &mesh)?;
    out.table("discriminant.csv", &t)?;
    let report = format!(
        "points={} circles={} spheres={} distinct_spheres={} skipped={} max_residual={} max_scaled_residual={}\n",
        d.points.len(),
        d.circles,
        d.spheres,
        seen.len(),
        d.skipped,
        num(d.max_residual()),
        num(d.max_scaled_residual())
    );
    Ok((0, report))
}

fn evolute(family: &SphereFamily, grid: &Grid, out: &mut Output) -> Result<(i32, String)> {
    let tol = family.tol();
    let eg = evolute_grid(&family.surface, grid, tol, ROOT_JUMP)?;
    let mut t = Table::new(&["u", "v", "root", "delta", "theta", "double", "vanishes", "x", "y", "z"]);
    let mut sheets: [Vec<Option<Vec3>>; 2] = [vec![None; grid.len()], vec![None; grid.len()]];
    let (mut roots, mut degenerate) = (0usize, 0usize);
    for (k, sol) in eg.solutions.iter().enumerate() {
        let Some(sol) = sol else { continue };
        let gp = grid.point(k % grid.nu, k / grid.nu);
        let head = || vec![num(gp.u), num(gp.v)];
        match sol {
            EvoluteSolution::Degenerate => {
                degenerate += 1;
                let mut row = head();
                row.push("degenerate".into());
                row.extend(std::iter::repeat_n(String::new(), 7));
                t.push(row);
            }
            EvoluteSolution::Roots(rs) if rs.is_empty() => {
                let mut row = head();
                row.push("none".into());
                row.extend(std::iter::repeat_n(String::new(), 7));
                t.push(row);
            }
            EvoluteSolution::Roots(rs) => {
                let inv = basic_invariants(&family.surface, gp.u, gp.v, tol)?;
                for (r, root) in rs.iter().enumerate() {
                    roots += 1;
                    let (p, _) = evolute_point(&inv, root);
                    if r < 2 {
                        sheets[r][k] = Some(p);
                    }
                    let mut row = head();
                    row.push(r.to_string());
                    row.push(num(root.delta));
                    row.push(root.theta.map(num).unwrap_or_default());
                    row.push(root.double.to_string());
                    row.push(root.matrix_vanishes().to_string());
                    row.extend(p.to_array().map(num));
                    t.push(row);
                }
            }
        }
    }
    let mut mesh = Mesh::default();
    for (r, sheet) in sheets.iter().enumerate() {
        if sheet.iter().any(Option::is_some) {
            mesh.push(MeshObject::from_grid(format!("root-{r}"), grid, sheet));
        }
    }
    let mut breaks = Table::new(&["i", "j", "u", "v", "before", "after", "jump"]);
    for b in &eg.breaks {
        breaks.push(vec![
            b.i.to_string(),
            b.j.to_string(),
            num(grid.u(b.i)),
            num(grid.v(b.j)),
            b.before.to_string(),
            b.after.to_string(),
            if b.jump.is_nan() { String::new() } else { num(b.jump) },
        ]);
    }
    out.mesh("evolute.obj", &mesh)?;
    out.table("evolute.csv", &t)?;
    out.table("evolute_breaks.csv", &breaks)?;
    Ok((
        0,
        format!("roots={roots} degenerate={degenerate} row_breaks={}\n", eg.breaks.len()),
    ))
}

fn triple(p: Vec3) -> String {
    format!("({}, {}, {})", num(p.x), num(p.y), num(p.z))
}

fn pedal(family: &SphereFamily, grid: &Grid, opts: &Options, out: &mut Output) -> Result<(i32, String)> {
    let base = opts.point.unwrap_or(Vec3::ZERO);
    let pts = grid.map(|p| -> Result<Option<(f64, f64, f64, Vec3)>> {
        if p.excluded {
            return Ok(None);
        }
        let pp = pedal_at(&family.surface, base, p.u, p.v)?;
        Ok(Some((p.u, p.v, pp.support, pp.point)))
    });
    let mut t = Table::new(&["u", "v", "support", "px", "py", "pz"]);
    let mut sheet = Vec::with_capacity(pts.len());
    for p in pts {
        let p = p?;
        if let Some((u, v, support, q)) = p {
            let mut row = vec![num(u), num(v), num(support)];
            row.extend(q.to_array().map(num));
            t.push(row);
        }
        sheet.push(p.map(|p| p.3));
    }
    let mut mesh = Mesh::default();
    mesh.push(MeshObject::from_grid("pedal", grid, &sheet));
    out.mesh("pedal.obj", &mesh)?;
    out.table("pedal.csv", &t)?;
    let mut report = format!("pedal points={} base={}\n", t.rows.len(), triple(base));

    match verify_pedal(family, grid) {
        Ok(r) => {
            let mut th = Table::new(&["u", "v", "f2x", "f2y", "f2z", "ex", "ey", "ez", "error"]);
            for s in r.other.samples.iter().flatten() {
                let fr = family.surface.frame(s.point.u, s.point.v)?;
                let (x, n) = (fr.x.value(), fr.n.value());
                let expected = r.f1 + n * (2.0 * (x - r.f1).dot(n));
                let mut row = vec![num(s.point.u), num(s.point.v)];
                row.extend(s.f.to_array().map(num));
                row.extend(expected.to_array().map(num));
                row.push(num((s.f - expected).norm()));
                th.push(row);
            }
            out.table("pedal_theorem.csv", &th)?;
            writeln!(
                report,
                "constant branch {} at {}; max |f2 - Pe| = {} {}",
                r.constant,
                triple(r.f1),
                num(r.max_error),
                if r.passes() { "PASS" } else { "FAIL" }
            )
            .unwrap();
        }
        Err(Error::HypothesisNotMet(why)) => {
            writeln!(report, "pedal theorem not applicable: {why}").unwrap();
        }
        Err(e) => return Err(e),
    }
    Ok((0, report))
}

fn verify(cfg: &FamilyConfig, family: &SphereFamily, grid: &Grid, out: &mut Output) -> Result<(i32, String)> {
    let mut t = Table::new(&["check", "quantity", "max", "tolerance", "points", "failures"]);
    let pass;
    let mut report = String::new();
    if let Some(src) = &cfg.candidate {
        let f = parse_vec_with_bindings(src, &cfg.bindings)?;
        let (r, ok) = verify_envelope(&Candidate::Expr(f), family, grid)?;
        for (k, (q, v)) in [("on_sphere", r.on_sphere), ("tangency_u", r.tangency_u), ("tangency_v", r.tangency_v)]
            .into_iter()
            .enumerate()
        {
            t.push(vec![
                "envelope".into(),
                q.into(),
                num(v),
                num(r.tolerance),
                r.points.to_string(),
                r.failures[k].to_string(),
            ]);
            writeln!(report, "{q:<12} max={} failures={}/{}", num(v), r.failures[k], r.points).unwrap();
        }
        pass = ok;
    } else {
        let c = classify_grid(family, grid)?;
        match count_from_summary(&c.summary) {
            Count::One => {
                let r = verify_evolute(family, grid)?;
                for (q, v) in [("a_f1 - lambda e_f1", r.row_u), ("a_f2 - lambda e_f2", r.row_v), ("f - lambda nu - x", r.point)] {
                    t.push(vec!["evolute".into(), q.into(), num(v), num(r.tolerance), r.points.to_string(), String::new()]);
                    writeln!(report, "{q:<20} max={}", num(v)).unwrap();
                }
                pass = r.passes();
            }
            Count::Two => {
                let r = verify_pedal(family, grid)?;
                t.push(vec![
                    "pedal".into(),
                    "f2 - Pe".into(),
                    num(r.max_error),
                    num(r.tolerance),
                    r.other.report.points.to_string(),
                    String::new(),
                ]);
                writeln!(report, "f2 - Pe max={}", num(r.max_error)).unwrap();
                pass = r.passes();
            }
            Count::NotCreative => return Err(not_creative(&c)),
            other => {
                return Err(Error::HypothesisNotMet(format!(
                    "no candidate given and no theorem applies to a family with count {other}"
                )))
            }
        }
    }
    out.table("verify.csv", &t)?;
    report.push_str(if pass { "PASS\n" } else { "FAIL\n" });
    Ok((if pass { 0 } else { 1 }, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(name: &str, n: usize) -> FamilyConfig {
        let mut c = FamilyConfig::fixture(name).unwrap();
        c.grid = (n, n);
        c
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let o = Options::new(dir.path());
        assert_eq!(run(Command::Classify, &small("translated-planes", 5), &o).code, 0);
        assert_eq!(run(Command::Classify, &small("concentric", 5), &o).code, 3);
        let mut plus = o.clone();
        plus.branch = Some(BranchArg::Plus);
        assert_eq!(run(Command::Envelope, &small("cone-distance", 5), &plus).code, 4);
        assert_eq!(run(Command::Verify, &small("fixed-sphere", 5), &o).code, 5);
        let mut cand = small("translated-planes", 5);
        cand.candidate = Some("(u + 1, v, 0)".into());
        let r = run(Command::Verify, &cand, &o);
        assert_eq!(r.code, 1, "{}", r.report);
        assert!(r.report.contains("FAIL"));
    }

    #[test]
    fn classify_summary_reports_count() {
        let dir = tempfile::tempdir().unwrap();
        let r = run(Command::Classify, &small("translated-planes", 5), &Options::new(dir.path()));
        assert!(r.report.contains("count=Two"));
        let csv = fs::read_to_string(dir.path().join("classify.csv")).unwrap();
        assert!(csv.starts_with("u,v,sigma,J_F,J_a,J_b,alpha,beta\n"));
        assert_eq!(csv.lines().filter(|l| l.contains(",Sigma1,")).count(), 25);
    }

    #[test]
    fn fixed_sphere_discriminant_is_one_sphere() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = small("fixed-sphere", 4);
        c.samples = 30;
        let r = run(Command::Discriminant, &c, &Options::new(dir.path()));
        assert_eq!(r.code, 0, "{}", r.report);
        let obj = fs::read_to_string(dir.path().join("discriminant.obj")).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("o ")).collect::<Vec<_>>(), vec!["o sphere-0"]);
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 30);
    }

    #[test]
    fn points_parse() {
        assert_eq!(parse_point("1, 2,3").unwrap(), Vec3::new(1.0, 2.0, 3.0));
        assert!(parse_point("1,2").is_err());
    }
}
