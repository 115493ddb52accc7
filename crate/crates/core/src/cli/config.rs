//! The family description file.
//!
//! ```text
//! # comment
//! [family]
//! fixture = "parabolic-cylinder"     # optional; other sections override it
//! [surface]
//! x = "(u^2, u^3, v)"
//! n = "(-3*u/sqrt(9*u^2+4), 2/sqrt(9*u^2+4), 0)"   # optional with s
//! s = "(0, 0, 1)"
//! [radius]
//! lambda = "1"
//! [domain]
//! u_min = -1
//! u_max = 1
//! v_min = -1
//! v_max = 1
//! exclude = "v <= 0"                 # repeatable
//! [grid]
//! nu = 101
//! nv = 101
//! samples = 24                       # points per circle or sphere
//! [tolerances]
//! eps_zero = 1e-9
//! eps_class = 1e-8
//! eps_residual = 1e-8
//! [bindings]
//! k = 0.5                            # constants usable in every expression
//! [branch]
//! theta = "0"                        # custom branch angles
//! phi = "0"
//! [candidate]
//! f = "(u + 1, v, 0)"                # map checked by `verify`
//! ```
//!
//! Values are either double-quoted strings or bare text up to a `#`.
//! Numeric values are constant expressions, so `v_max = 2*pi` is accepted.
//! Each key may appear once, except `exclude`. Unknown sections and keys are
//! errors.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::dsl::{parse_vec_with_bindings, parse_with_bindings, Bindings, Expr, RESERVED};
use crate::envelope::{AngleField, Branch};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::frame::{Domain, Exclusion, FramedSurfaceSpec, Rect, SphereFamily};
use crate::grid::Grid;
use crate::tolerance::Tolerances;

pub const DEFAULT_SAMPLES: usize = 24;

const SECTIONS: [(&str, &[&str]); 9] = [
    ("family", &["fixture"]),
    ("surface", &["x", "n", "s"]),
    ("radius", &["lambda"]),
    ("domain", &["u_min", "u_max", "v_min", "v_max", "exclude"]),
    ("grid", &["nu", "nv", "samples"]),
    ("tolerances", &["eps_zero", "eps_class", "eps_residual"]),
    ("bindings", &[]),
    ("branch", &["theta", "phi"]),
    ("candidate", &["f"]),
];

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyConfig {
    pub fixture: Option<String>,
    pub x: String,
    pub n: Option<String>,
    pub s: Option<String>,
    pub lambda: String,
    pub rect: [f64; 4],
    pub exclude: Vec<String>,
    pub grid: (usize, usize),
    pub samples: usize,
    pub tolerances: Tolerances,
    pub bindings: Bindings,
    pub theta: Option<String>,
    pub phi: Option<String>,
    pub candidate: Option<String>,
}

#[derive(Debug, Clone)]
struct Entry {
    line: usize,
    value: String,
}

type Raw = BTreeMap<(String, String), Vec<Entry>>;

fn config_err(line: usize, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        message: message.into(),
    }
}

fn split_value(line: usize, text: &str) -> Result<String> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix('"') {
        let end = rest
            .find('"')
            .ok_or_else(|| config_err(line, "unterminated string"))?;
        let tail = rest[end + 1..].trim();
        if !(tail.is_empty() || tail.starts_with('#')) {
            return Err(config_err(line, format!("unexpected text after string: {tail}")));
        }
        Ok(rest[..end].to_string())
    } else {
        let bare = text.split('#').next().unwrap_or("").trim();
        if bare.is_empty() {
            return Err(config_err(line, "missing value"));
        }
        Ok(bare.to_string())
    }
}

fn lex(text: &str) -> Result<Raw> {
    let mut raw = Raw::new();
    let mut section: Option<&str> = None;
    for (k, line) in text.lines().enumerate() {
        let no = k + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with(';') {
            continue;
        }
        if let Some(name) = t.strip_prefix('[') {
            let name = name
                .split('#')
                .next()
                .unwrap_or("")
                .trim()
                .strip_suffix(']')
                .ok_or_else(|| config_err(no, "expected `]`"))?
                .trim();
            let known = SECTIONS
                .iter()
                .find(|(s, _)| *s == name)
                .ok_or_else(|| config_err(no, format!("unknown section [{name}]")))?;
            section = Some(known.0);
            continue;
        }
        let sec = section.ok_or_else(|| config_err(no, "key outside of any section"))?;
        let (key, value) = t
            .split_once('=')
            .ok_or_else(|| config_err(no, "expected `key = value`"))?;
        let key = key.trim();
        let allowed = SECTIONS.iter().find(|(s, _)| *s == sec).map(|(_, k)| *k).unwrap_or(&[]);
        if sec == "bindings" {
            let valid = !key.is_empty()
                && key.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || RESERVED.contains(&key) {
                return Err(config_err(no, format!("`{key}` cannot be bound")));
            }
        } else if !allowed.contains(&key) {
            return Err(config_err(no, format!("unknown key `{key}` in [{sec}]")));
        }
        let entries = raw.entry((sec.to_string(), key.to_string())).or_default();
        if !entries.is_empty() && key != "exclude" {
            return Err(config_err(no, format!("duplicate key `{key}` in [{sec}]")));
        }
        entries.push(Entry {
            line: no,
            value: split_value(no, value)?,
        });
    }
    Ok(raw)
}

fn get<'a>(raw: &'a Raw, sec: &str, key: &str) -> Option<&'a Entry> {
    raw.get(&(sec.to_string(), key.to_string())).and_then(|v| v.first())
}

fn constant(e: &Entry, bindings: &Bindings) -> Result<f64> {
    let expr = parse_with_bindings(&e.value, bindings).map_err(|err| config_err(e.line, err.to_string()))?;
    if expr.mentions_variables() {
        return Err(config_err(e.line, format!("`{}` must not depend on u or v", e.value)));
    }
    expr.eval(0.0, 0.0).map_err(|err| config_err(e.line, err.to_string()))
}

fn count(e: &Entry) -> Result<usize> {
    e.value
        .parse()
        .map_err(|_| config_err(e.line, format!("expected a non-negative integer, got `{}`", e.value)))
}

impl FamilyConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let raw = lex(text)?;

        let mut bindings = Bindings::new();
        for ((sec, key), entries) in &raw {
            if sec == "bindings" {
                let e = &entries[0];
                bindings.insert(key.clone(), constant(e, &Bindings::new())?);
            }
        }

        let fixture = get(&raw, "family", "fixture").map(|e| {
            fixtures::definition(&e.value).map(|d| (e.value.clone(), d)).map_err(|_| {
                config_err(e.line, format!("unknown fixture `{}`", e.value))
            })
        });
        let fixture = fixture.transpose()?;
        let base = fixture.as_ref().map(|(_, d)| *d);

        let string = |sec: &str, key: &str, fallback: Option<&str>| -> Option<String> {
            get(&raw, sec, key)
                .map(|e| e.value.clone())
                .or_else(|| fallback.map(str::to_string))
        };
        let x = string("surface", "x", base.map(|d| d.x)).ok_or_else(|| config_err(0, "missing [surface] x"))?;
        let (n, s) = match (get(&raw, "surface", "n"), get(&raw, "surface", "s"), base) {
            (None, None, Some(d)) if get(&raw, "surface", "x").is_none() => {
                (Some(d.n.to_string()), Some(d.s.to_string()))
            }
            (n, s, _) => (n.map(|e| e.value.clone()), s.map(|e| e.value.clone())),
        };
        let lambda =
            string("radius", "lambda", base.map(|d| d.lambda)).ok_or_else(|| config_err(0, "missing [radius] lambda"))?;

        let mut rect = [0.0; 4];
        for (k, key) in ["u_min", "u_max", "v_min", "v_max"].iter().enumerate() {
            rect[k] = match (get(&raw, "domain", key), base) {
                (Some(e), _) => constant(e, &bindings)?,
                (None, Some(d)) => d.rect[k],
                (None, None) => return Err(config_err(0, format!("missing [domain] {key}"))),
            };
        }
        let exclude = match raw.get(&("domain".to_string(), "exclude".to_string())) {
            Some(es) => es.iter().map(|e| e.value.clone()).collect(),
            None => base.map(|d| d.exclude.iter().map(|s| s.to_string()).collect()).unwrap_or_default(),
        };

        let dims = |key: &str, k: usize| -> Result<usize> {
            match (get(&raw, "grid", key), base) {
                (Some(e), _) => count(e),
                (None, Some(d)) => Ok(if k == 0 { d.grid.0 } else { d.grid.1 }),
                (None, None) => Err(config_err(0, format!("missing [grid] {key}"))),
            }
        };
        let grid = (dims("nu", 0)?, dims("nv", 1)?);
        let samples = get(&raw, "grid", "samples").map(count).transpose()?.unwrap_or(DEFAULT_SAMPLES);

        let d = Tolerances::default();
        let tol_value = |key: &str, dflt: f64| -> Result<f64> {
            get(&raw, "tolerances", key).map_or(Ok(dflt), |e| constant(e, &bindings))
        };
        let tolerances = Tolerances::new(
            tol_value("eps_zero", d.eps_zero)?,
            tol_value("eps_class", d.eps_class)?,
            tol_value("eps_residual", d.eps_residual)?,
        )?;

        let cfg = FamilyConfig {
            fixture: fixture.map(|(name, _)| name),
            x,
            n,
            s,
            lambda,
            rect,
            exclude,
            grid,
            samples,
            tolerances,
            bindings,
            theta: string("branch", "theta", None),
            phi: string("branch", "phi", None),
            candidate: string("candidate", "f", None),
        };
        cfg.check(&raw)?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The configuration of a built-in fixture.
    pub fn fixture(name: &str) -> Result<Self> {
        Self::parse(&format!("[family]\nfixture = \"{name}\"\n"))
    }

    /// Parses every expression once so that errors point at a line.
    fn check(&self, raw: &Raw) -> Result<()> {
        let line = |sec: &str, key: &str| get(raw, sec, key).map_or(0, |e| e.line);
        let wrap = |sec: &'static str, key: &'static str| move |e: Error| config_err(line(sec, key), format!("{key}: {e}"));
        let b = &self.bindings;
        parse_vec_with_bindings(&self.x, b).map_err(wrap("surface", "x"))?;
        if let Some(n) = &self.n {
            parse_vec_with_bindings(n, b).map_err(wrap("surface", "n"))?;
        }
        if let Some(s) = &self.s {
            parse_vec_with_bindings(s, b).map_err(wrap("surface", "s"))?;
        }
        parse_with_bindings(&self.lambda, b).map_err(wrap("radius", "lambda"))?;
        for e in &self.exclude {
            Exclusion::parse(e, b).map_err(wrap("domain", "exclude"))?;
        }
        if let Some(t) = &self.theta {
            parse_with_bindings(t, b).map_err(wrap("branch", "theta"))?;
        }
        if let Some(p) = &self.phi {
            parse_with_bindings(p, b).map_err(wrap("branch", "phi"))?;
        }
        if let Some(f) = &self.candidate {
            parse_vec_with_bindings(f, b).map_err(wrap("candidate", "f"))?;
        }
        self.grid_spec().map_err(|e| config_err(line("grid", "nu"), e.to_string()))?;
        if self.samples == 0 {
            return Err(config_err(line("grid", "samples"), "samples must be positive"));
        }
        Ok(())
    }

    pub fn domain(&self) -> Result<Domain> {
        let [a, b, c, d] = self.rect;
        let mut domain = Domain::rect(a, b, c, d);
        for e in &self.exclude {
            domain = domain.excluding(Exclusion::parse(e, &self.bindings)?);
        }
        Ok(domain)
    }

    pub fn family(&self) -> Result<SphereFamily> {
        let b = &self.bindings;
        let opt = |s: &Option<String>| s.as_deref().map(|s| parse_vec_with_bindings(s, b)).transpose();
        let surface = FramedSurfaceSpec::new(parse_vec_with_bindings(&self.x, b)?, opt(&self.n)?, opt(&self.s)?, self.domain()?)
            .with_tolerances(self.tolerances);
        Ok(SphereFamily::new(surface, parse_with_bindings(&self.lambda, b)?))
    }

    fn grid_spec(&self) -> Result<Grid> {
        Grid::new(self.domain()?, self.grid.0, self.grid.1)
    }

    pub fn grid(&self) -> Result<Grid> {
        self.grid_spec()
    }

    pub fn rect(&self) -> Rect {
        let [a, b, c, d] = self.rect;
        Rect::new(a, b, c, d)
    }

    fn angle(&self, given: &Option<String>, binding: &str) -> Result<Option<Expr>> {
        let src = match given {
            Some(s) => s.clone(),
            None if self.bindings.contains_key(binding) => binding.to_string(),
            None => return Ok(None),
        };
        parse_with_bindings(&src, &self.bindings).map(Some)
    }

    /// The custom branch given by `[branch]` or by bindings named `theta`
    /// and `phi`; `θ = 0` when neither is present.
    pub fn custom_branch(&self) -> Result<Branch> {
        let theta = self
            .angle(&self.theta, "theta")?
            .map(AngleField::from_expr)
            .unwrap_or_else(|| AngleField::constant(0.0));
        let phi = self.angle(&self.phi, "phi")?.map(AngleField::from_expr);
        Ok(Branch::Custom { theta, phi })
    }
}

fn quoted(s: &str) -> String {
    format!("\"{s}\"")
}

impl fmt::Display for FamilyConfig {
    /// Canonical form; parsing it gives back an equal configuration.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.fixture {
            writeln!(f, "[family]\nfixture = {}\n", quoted(name))?;
        }
        writeln!(f, "[surface]\nx = {}", quoted(&self.x))?;
        if let Some(n) = &self.n {
            writeln!(f, "n = {}", quoted(n))?;
        }
        if let Some(s) = &self.s {
            writeln!(f, "s = {}", quoted(s))?;
        }
        writeln!(f, "\n[radius]\nlambda = {}\n", quoted(&self.lambda))?;
        writeln!(f, "[domain]")?;
        for (key, x) in ["u_min", "u_max", "v_min", "v_max"].iter().zip(self.rect) {
            writeln!(f, "{key} = {x:?}")?;
        }
        for e in &self.exclude {
            writeln!(f, "exclude = {}", quoted(e))?;
        }
        writeln!(f, "\n[grid]\nnu = {}\nnv = {}\nsamples = {}\n", self.grid.0, self.grid.1, self.samples)?;
        let t = &self.tolerances;
        writeln!(
            f,
            "[tolerances]\neps_zero = {:?}\neps_class = {:?}\neps_residual = {:?}",
            t.eps_zero, t.eps_class, t.eps_residual
        )?;
        if !self.bindings.is_empty() {
            writeln!(f, "\n[bindings]")?;
            for (k, v) in &self.bindings {
                writeln!(f, "{k} = {v:?}")?;
            }
        }
        if self.theta.is_some() || self.phi.is_some() {
            writeln!(f, "\n[branch]")?;
            if let Some(t) = &self.theta {
                writeln!(f, "theta = {}", quoted(t))?;
            }
            if let Some(p) = &self.phi {
                writeln!(f, "phi = {}", quoted(p))?;
            }
        }
        if let Some(c) = &self.candidate {
            writeln!(f, "\n[candidate]\nf = {}", quoted(c))?;
        }
        Ok(())
    }
}
