//! Envelopes `f = x + λν` of sphere families.
//!
//! The creator `ν = α s + β t + γ n` is built as a jet field so that `f_u`
//! and `f_v` come out exactly. Which `(α, β, γ)` is used depends on the
//! branch:
//!
//! * `PlusGamma` / `MinusGamma`: the Cramer solution with `γ = ±√(1−α²−β²)`.
//!   On a rank-one chord the point of the chord closest to the origin is used
//!   instead, which is the limit of the Cramer solution on the cuspidal edge
//!   of the parabolic cylinder.
//! * `UniqueGammaZero`: the unit solution with `γ = 0`.
//! * `Custom`: a point of the chord or of the disk chosen by angle fields.
//!   On a chord `w·(α, β) = c` the creator is
//!   `ν = c w + √(1−c²)(cos θ n + sin θ (w × n))`; on the disk it is
//!   `(α, β, γ) = (cos φ sin θ, sin φ, cos φ cos θ)`.

use std::fmt;
use std::sync::Arc;

use crate::creative::{classify_grid, solve_creator, CreatorSolution, DensitySummary, Sigma, SolutionKind};
use crate::dsl::{eval_with, Expr, VecExpr};
use crate::error::{Error, Result};
use crate::frame::{FrameJets, FramedSurface, SphereFamily, FD_STEP};
use crate::grid::{Grid, GridPoint};
use crate::jet::Jet2;
use crate::vector::{Vec3, Vec3J};

/// An angle field `θ(u, v)` evaluated on coordinate jets.
pub type AngleFn = Arc<dyn Fn(Jet2, Jet2) -> Result<Jet2> + Send + Sync>;

#[derive(Clone)]
pub struct AngleField {
    func: AngleFn,
    label: String,
}

impl AngleField {
    pub fn new(label: impl Into<String>, func: AngleFn) -> Self {
        Self {
            func,
            label: label.into(),
        }
    }

    pub fn constant(theta: f64) -> Self {
        Self::new(format!("{theta}"), Arc::new(move |_, _| Ok(Jet2::constant(theta))))
    }

    pub fn from_expr(e: Expr) -> Self {
        let label = e.to_string();
        Self::new(label, Arc::new(move |u, v| eval_with(&e, u, v)))
    }

    pub fn eval(&self, u: Jet2, v: Jet2) -> Result<Jet2> {
        (self.func)(u, v)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for AngleField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AngleField({})", self.label)
    }
}

#[derive(Clone, Debug)]
pub enum Branch {
    PlusGamma,
    MinusGamma,
    UniqueGammaZero,
    Custom { theta: AngleField, phi: Option<AngleField> },
}

impl Branch {
    pub fn custom(theta: AngleField) -> Self {
        Branch::Custom { theta, phi: None }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Branch::PlusGamma => "plus",
            Branch::MinusGamma => "minus",
            Branch::UniqueGammaZero => "unique",
            Branch::Custom { .. } => "custom",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Custom { theta, phi: None } => write!(f, "custom(theta = {})", theta.label()),
            Branch::Custom { theta, phi: Some(p) } => {
                write!(f, "custom(theta = {}, phi = {})", theta.label(), p.label())
            }
            other => f.write_str(other.name()),
        }
    }
}

/// The creator of one branch at one point, as jets.
#[derive(Debug, Clone, Copy)]
pub struct CreatorField {
    pub solution: CreatorSolution,
    pub frame: FrameJets,
    pub lambda: Jet2,
    pub alpha: Jet2,
    pub beta: Jet2,
    pub gamma: Jet2,
    pub nu: Vec3J,
    pub f: Vec3J,
}

impl CreatorField {
    /// The three envelope residuals `|f−x|² − λ²`, `f_u·(f−x)`, `f_v·(f−x)`.
    pub fn residuals(&self) -> [f64; 3] {
        envelope_residuals(
            self.frame.x.value(),
            self.lambda.val,
            self.f.value(),
            self.f.du(),
            self.f.dv(),
        )
    }
}

pub fn envelope_residuals(x: Vec3, lambda: f64, f: Vec3, f_u: Vec3, f_v: Vec3) -> [f64; 3] {
    let d = f - x;
    [d.norm_sq() - lambda * lambda, f_u.dot(d), f_v.dot(d)]
}

/// Coefficient jets of the creative condition.
struct Rows {
    a1: Jet2,
    b1: Jet2,
    a2: Jet2,
    b2: Jet2,
    lu: Jet2,
    lv: Jet2,
}

impl Rows {
    fn new(frame: &FrameJets, lambda: &Jet2) -> Self {
        let t = frame.t();
        let xu = frame.x.partial_u();
        let xv = frame.x.partial_v();
        Rows {
            a1: xu.dot(&frame.s),
            b1: xu.dot(&t),
            a2: xv.dot(&frame.s),
            b2: xv.dot(&t),
            lu: lambda.partial_u(),
            lv: lambda.partial_v(),
        }
    }

    fn cramer(&self) -> (Jet2, Jet2) {
        let jf = self.a1 * self.b2 - self.a2 * self.b1;
        let ja = self.a1 * self.lv - self.a2 * self.lu;
        let jb = self.b1 * self.lv - self.b2 * self.lu;
        (jb / jf, -ja / jf)
    }

    /// `(w_s, w_t, c)` of the kept equation.
    fn line(&self, row: usize) -> (Jet2, Jet2, Jet2) {
        let (a, b, l) = if row == 0 {
            (self.a1, self.b1, self.lu)
        } else {
            (self.a2, self.b2, self.lv)
        };
        let norm = (a * a + b * b).sqrt();
        (a / norm, b / norm, -l / norm)
    }
}

fn unavailable(branch: &Branch, sol: &CreatorSolution, u: f64, v: f64) -> Error {
    if sol.kind == SolutionKind::Empty {
        Error::NotCreative { u, v }
    } else {
        Error::BranchUnavailable {
            branch: branch.name().to_string(),
            kind: sol.kind.to_string(),
            u,
            v,
        }
    }
}

/// The creator of `branch` at `(u0, v0)`.
pub fn creator_field(family: &SphereFamily, u0: f64, v0: f64, branch: &Branch) -> Result<CreatorField> {
    let frame = family.surface.frame(u0, v0)?;
    frame.check_axioms(u0, v0, family.tol())?;
    let lambda = family.lambda(u0, v0)?;
    let inv = frame.invariants(u0, v0);
    let sol = solve_creator(&inv, &lambda, family.tol());
    if sol.kind == SolutionKind::Empty {
        return Err(Error::NotCreative { u: u0, v: v0 });
    }
    let rows = Rows::new(&frame, &lambda);
    let t = frame.t();
    let one = Jet2::constant(1.0);

    let (alpha, beta, gamma) = match (branch, sol.kind) {
        (Branch::PlusGamma | Branch::MinusGamma, SolutionKind::TwoBranch | SolutionKind::Segment) => {
            let (alpha, beta) = match sol.line {
                Some(line) => {
                    let (ws, wt, c) = rows.line(line.row);
                    (c * ws, c * wt)
                }
                None => rows.cramer(),
            };
            let gamma = (one - alpha * alpha - beta * beta).sqrt();
            let sign = if matches!(branch, Branch::PlusGamma) { 1.0 } else { -1.0 };
            (alpha, beta, gamma * sign)
        }
        (Branch::UniqueGammaZero, SolutionKind::UniqueOnCircle) => {
            let (alpha, beta) = match sol.line {
                Some(line) => {
                    let (ws, wt, c) = rows.line(line.row);
                    let sign = c.val.signum();
                    (ws * sign, wt * sign)
                }
                None => rows.cramer(),
            };
            // renormalise so that γ = 0 stays exact to first order
            let r = (alpha * alpha + beta * beta).sqrt();
            (alpha / r, beta / r, Jet2::zero())
        }
        (Branch::Custom { theta, .. }, SolutionKind::Segment) => {
            let line = sol.line.expect("segment solutions carry their line");
            let (ws, wt, c) = rows.line(line.row);
            let th = theta.eval(Jet2::var_u(u0), Jet2::var_v(v0))?;
            let radius = (one - c * c).sqrt();
            // ν = c w + radius (cos θ n + sin θ (w × n)), w × n = w_t s − w_s t
            let (ct, st) = (th.cos(), th.sin());
            let alpha = c * ws + radius * st * wt;
            let beta = c * wt - radius * st * ws;
            let gamma = radius * ct;
            (alpha, beta, gamma)
        }
        (Branch::Custom { theta, phi }, SolutionKind::Disk) => {
            let (uj, vj) = (Jet2::var_u(u0), Jet2::var_v(v0));
            let th = theta.eval(uj, vj)?;
            let ph = match phi {
                Some(p) => p.eval(uj, vj)?,
                None => Jet2::zero(),
            };
            (ph.cos() * th.sin(), ph.sin(), ph.cos() * th.cos())
        }
        _ => return Err(unavailable(branch, &sol, u0, v0)),
    };

    let nu = frame.s * alpha + t * beta + frame.n * gamma;
    let f = frame.x + nu * lambda;
    Ok(CreatorField {
        solution: sol,
        frame,
        lambda,
        alpha,
        beta,
        gamma,
        nu,
        f,
    })
}

/// One envelope point with its creator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopePoint {
    pub u: f64,
    pub v: f64,
    pub f: Vec3,
    pub nu: Vec3,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub sigma: Sigma,
}

pub fn envelope_at(family: &SphereFamily, u0: f64, v0: f64, branch: &Branch) -> Result<EnvelopePoint> {
    let c = creator_field(family, u0, v0, branch)?;
    Ok(EnvelopePoint {
        u: u0,
        v: v0,
        f: c.f.value(),
        nu: c.nu.value(),
        alpha: c.alpha.val,
        beta: c.beta.val,
        gamma: c.gamma.val,
        sigma: c.solution.sigma,
    })
}

/// Maxima of the three envelope residuals over a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// `max |(|f−x|² − λ²)|`.
    pub on_sphere: f64,
    /// `max |f_u·(f−x)|`.
    pub tangency_u: f64,
    /// `max |f_v·(f−x)|`.
    pub tangency_v: f64,
    /// Points evaluated.
    pub points: usize,
    /// Points failing each condition at the scaled tolerance.
    pub failures: [usize; 3],
    pub tolerance: f64,
}

impl ResidualReport {
    pub fn new(tolerance: f64) -> Self {
        Self {
            on_sphere: 0.0,
            tangency_u: 0.0,
            tangency_v: 0.0,
            points: 0,
            failures: [0; 3],
            tolerance,
        }
    }

    /// Adds one point. Conditions are checked as
    /// `|F| ≤ tol·λ²` and `|f_u·(f−x)| ≤ tol·(1 + |f_u| λ)`.
    pub fn record(&mut self, residuals: [f64; 3], lambda: f64, f_u: Vec3, f_v: Vec3) {
        let [r0, r1, r2] = residuals.map(f64::abs);
        self.points += 1;
        self.on_sphere = self.on_sphere.max(r0);
        self.tangency_u = self.tangency_u.max(r1);
        self.tangency_v = self.tangency_v.max(r2);
        let limits = [
            self.tolerance * lambda * lambda,
            self.tolerance * (1.0 + f_u.norm() * lambda),
            self.tolerance * (1.0 + f_v.norm() * lambda),
        ];
        for (k, (r, lim)) in [r0, r1, r2].iter().zip(limits).enumerate() {
            // NaN counts as a failure
            if !(*r <= lim) {
                self.failures[k] += 1;
            }
        }
    }

    pub fn merge(mut self, o: &ResidualReport) -> Self {
        self.on_sphere = self.on_sphere.max(o.on_sphere);
        self.tangency_u = self.tangency_u.max(o.tangency_u);
        self.tangency_v = self.tangency_v.max(o.tangency_v);
        self.points += o.points;
        for k in 0..3 {
            self.failures[k] += o.failures[k];
        }
        self
    }

    pub fn passes(&self) -> bool {
        self.failures == [0; 3]
    }

    pub fn max(&self) -> f64 {
        self.on_sphere.max(self.tangency_u).max(self.tangency_v)
    }

    /// Fraction of points failing the on-sphere condition.
    pub fn on_sphere_failure_fraction(&self) -> f64 {
        if self.points == 0 {
            0.0
        } else {
            self.failures[0] as f64 / self.points as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeSample {
    pub point: GridPoint,
    pub f: Vec3,
    pub nu: Vec3,
    pub residuals: [f64; 3],
}

/// A branch sampled over a grid; excluded points carry `None`.
#[derive(Debug, Clone)]
pub struct EnvelopeBranch {
    pub branch: Branch,
    pub grid: Grid,
    pub samples: Vec<Option<EnvelopeSample>>,
    pub report: ResidualReport,
}

/// Samples `branch` over every non-excluded point of `grid`. Fails at the
/// first point where the branch does not exist.
pub fn sample_branch(family: &SphereFamily, grid: &Grid, branch: &Branch) -> Result<EnvelopeBranch> {
    let tol = family.tol().eps_residual;
    let rows: Vec<Result<Option<(EnvelopeSample, CreatorField)>>> = grid.map(|p| {
        if p.excluded {
            return Ok(None);
        }
        let c = creator_field(family, p.u, p.v, branch)?;
        Ok(Some((
            EnvelopeSample {
                point: *p,
                f: c.f.value(),
                nu: c.nu.value(),
                residuals: c.residuals(),
            },
            c,
        )))
    });
    let mut report = ResidualReport::new(tol);
    let mut samples = Vec::with_capacity(rows.len());
    for r in rows {
        match r? {
            Some((s, c)) => {
                report.record(s.residuals, c.lambda.val, c.f.du(), c.f.dv());
                samples.push(Some(s));
            }
            None => samples.push(None),
        }
    }
    Ok(EnvelopeBranch {
        branch: branch.clone(),
        grid: grid.clone(),
        samples,
        report,
    })
}

/// A sampled map of `(u, v)`.
pub type PointMap = Arc<dyn Fn(f64, f64) -> Result<Vec3> + Send + Sync>;

/// Something to test against the envelope conditions.
#[derive(Clone)]
pub enum Candidate {
    /// Differentiated exactly through the expression.
    Expr(VecExpr),
    /// Differentiated by central differences; checked at the looser
    /// [`MAP_TOLERANCE`].
    Map(PointMap),
    Branch(Branch),
}

/// Tolerance for candidates whose derivatives come from finite differences.
pub const MAP_TOLERANCE: f64 = 1e-6;

/// Residuals, radius, `f_u` and `f_v` at one point.
type Checked = ([f64; 3], f64, Vec3, Vec3);

/// Checks the envelope conditions for `candidate` at every non-excluded
/// grid point. Points where the family or the candidate cannot be evaluated
/// abort the check.
pub fn verify_envelope(candidate: &Candidate, family: &SphereFamily, grid: &Grid) -> Result<(ResidualReport, bool)> {
    let tol = match candidate {
        Candidate::Map(_) => MAP_TOLERANCE,
        _ => family.tol().eps_residual,
    };
    let per_point: Vec<Result<Option<Checked>>> = grid.map(|p| {
        if p.excluded {
            return Ok(None);
        }
        let (u, v) = (p.u, p.v);
        let x = family.surface.frame(u, v)?.x.value();
        let lambda = family.lambda(u, v)?.val;
        let (f, fu, fv) = match candidate {
            Candidate::Expr(e) => {
                let j = e.eval_jet(u, v)?;
                (j.value(), j.du(), j.dv())
            }
            Candidate::Map(m) => {
                let h = FD_STEP;
                let fu = (m(u + h, v)? - m(u - h, v)?) * (0.5 / h);
                let fv = (m(u, v + h)? - m(u, v - h)?) * (0.5 / h);
                (m(u, v)?, fu, fv)
            }
            Candidate::Branch(b) => {
                let c = creator_field(family, u, v, b)?;
                (c.f.value(), c.f.du(), c.f.dv())
            }
        };
        Ok(Some((envelope_residuals(x, lambda, f, fu, fv), lambda, fu, fv)))
    });
    let mut report = ResidualReport::new(tol);
    for r in per_point {
        if let Some((res, lambda, fu, fv)) = r? {
            report.record(res, lambda, fu, fv);
        }
    }
    let ok = report.passes();
    Ok((report, ok))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    One,
    Two,
    Uncountable,
    NotCreative,
    /// Neither density condition holds on the grid, or both do.
    Undetermined,
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Count::One => "One",
            Count::Two => "Two",
            Count::Uncountable => "Uncountable",
            Count::NotCreative => "NotCreative",
            Count::Undetermined => "Undetermined",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeCount {
    pub count: Count,
    pub evidence: DensitySummary,
}

/// Decides the number of envelopes from grid density evidence.
pub fn count_from_summary(s: &DensitySummary) -> Count {
    if s.any_not_creative() {
        return Count::NotCreative;
    }
    if s.open_witness.is_some() {
        return Count::Uncountable;
    }
    let one = s.dense_sigma2 || s.dense_sigma3;
    match (s.dense_sigma1, one) {
        (true, false) => Count::Two,
        (false, true) => Count::One,
        _ => Count::Undetermined,
    }
}

pub fn envelope_count(family: &SphereFamily, grid: &Grid) -> Result<EnvelopeCount> {
    let c = classify_grid(family, grid)?;
    Ok(EnvelopeCount {
        count: count_from_summary(&c.summary),
        evidence: c.summary,
    })
}

/// Basic invariants of the framed surface `(f, ν, ω)`, frame `{ν, ω, μ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeFrame {
    pub u: f64,
    pub v: f64,
    pub f: Vec3J,
    pub nu: Vec3J,
    pub omega: Vec3J,
    pub mu: Vec3J,
    pub lambda: Jet2,
    pub x: Vec3J,
    /// Invariants with the roles `n → ν`, `s → ω`, `t → μ`.
    pub invariants: crate::frame::InvariantData,
}

impl EnvelopeFrame {
    pub fn frame_jets(&self) -> FrameJets {
        FrameJets {
            x: self.f,
            n: self.nu,
            s: self.omega,
        }
    }
}

/// The envelope of `branch` with its moving frame. `ω = n` on the
/// `UniqueGammaZero` branch, `ω = (−γ s + α n)/√(γ² + α²)` otherwise.
pub fn envelope_frame(family: &SphereFamily, branch: &Branch, u0: f64, v0: f64) -> Result<EnvelopeFrame> {
    let c = creator_field(family, u0, v0, branch)?;
    let omega = match branch {
        Branch::UniqueGammaZero => c.frame.n,
        _ => {
            let q = c.gamma * c.gamma + c.alpha * c.alpha;
            if family.tol().near_zero(q.val, 1.0) {
                return Err(Error::IllDefinedOmega {
                    u: u0,
                    v: v0,
                    value: q.val,
                });
            }
            (c.frame.s * (-c.gamma) + c.frame.n * c.alpha) * q.sqrt().recip()
        }
    };
    let jets = FrameJets {
        x: c.f,
        n: c.nu,
        s: omega,
    };
    Ok(EnvelopeFrame {
        u: u0,
        v: v0,
        f: c.f,
        nu: c.nu,
        omega,
        mu: c.nu.cross(&omega),
        lambda: c.lambda,
        x: c.frame.x,
        invariants: jets.invariants(u0, v0),
    })
}

/// `exp(1 − 1/(1 − q))` for `q < 1`, zero otherwise: a smooth bump in the
/// squared radius `q`, equal to 1 at the centre.
pub fn bump(q: Jet2) -> Jet2 {
    if q.val >= 1.0 {
        return Jet2::zero();
    }
    let one = Jet2::constant(1.0);
    (one - (one - q).recip()).exp()
}

/// Two envelopes differing near a point of an open Σ4 or Σ5 region.
#[derive(Debug, Clone)]
pub struct MultiplicityWitness {
    pub center: (f64, f64),
    pub radius: f64,
    pub epsilon: f64,
    pub base: Branch,
    pub perturbed: Branch,
    pub base_report: ResidualReport,
    pub perturbed_report: ResidualReport,
    /// `|f_ε − f_0|` at the centre.
    pub separation: f64,
    /// Largest `|f_ε − f_0|` over grid points outside the ball.
    pub outside_difference: f64,
}

impl MultiplicityWitness {
    pub fn passes(&self) -> bool {
        self.base_report.passes() && self.perturbed_report.passes()
    }
}

/// Builds `θ_ε = θ_0 + ε·bump(|p − p0|²/r²)` and checks both envelopes on
/// `grid`. The ball of radius `r` must lie in a region labelled uniformly
/// Σ4 or uniformly Σ5 (sampled on a 9x9 lattice).
pub fn multiplicity_witness(
    family: &SphereFamily,
    center: (f64, f64),
    radius: f64,
    epsilon: f64,
    theta0: AngleField,
    grid: &Grid,
) -> Result<MultiplicityWitness> {
    let (u0, v0) = center;
    if !(radius > 0.0) {
        return Err(Error::NoOpenNeighborhood(format!("radius must be positive, got {radius}")));
    }
    let label = crate::creative::solve_at(family, u0, v0)?.sigma;
    if !label.is_uncountable() {
        return Err(Error::NoOpenNeighborhood(format!(
            "({u0}, {v0}) is labelled {label}"
        )));
    }
    const PROBE: usize = 9;
    for i in 0..PROBE {
        for j in 0..PROBE {
            let u = crate::grid::lerp(u0 - radius, u0 + radius, i, PROBE);
            let v = crate::grid::lerp(v0 - radius, v0 + radius, j, PROBE);
            let inside = (u - u0).powi(2) + (v - v0).powi(2) < radius * radius;
            if !inside || !family.domain().contains(u, v) {
                continue;
            }
            let s = crate::creative::solve_at(family, u, v)?.sigma;
            if s != label {
                return Err(Error::NoOpenNeighborhood(format!(
                    "({u}, {v}) within {radius} of ({u0}, {v0}) is labelled {s}, not {label}"
                )));
            }
        }
    }

    let base = Branch::custom(theta0.clone());
    let r2 = radius * radius;
    let t0 = theta0.clone();
    let perturbed_theta = AngleField::new(
        format!("{} + {epsilon}*bump", theta0.label()),
        Arc::new(move |u: Jet2, v: Jet2| {
            let q = ((u - u0) * (u - u0) + (v - v0) * (v - v0)) * (1.0 / r2);
            Ok(t0.eval(u, v)? + bump(q) * epsilon)
        }),
    );
    let perturbed = Branch::custom(perturbed_theta);

    let (base_report, _) = verify_envelope(&Candidate::Branch(base.clone()), family, grid)?;
    let (perturbed_report, _) = verify_envelope(&Candidate::Branch(perturbed.clone()), family, grid)?;

    let f0 = envelope_at(family, u0, v0, &base)?.f;
    let fe = envelope_at(family, u0, v0, &perturbed)?.f;
    let mut outside_difference: f64 = 0.0;
    for p in grid.points() {
        if p.excluded || (p.u - u0).powi(2) + (p.v - v0).powi(2) < r2 {
            continue;
        }
        let a = envelope_at(family, p.u, p.v, &base)?.f;
        let b = envelope_at(family, p.u, p.v, &perturbed)?.f;
        outside_difference = outside_difference.max(a.dist(b));
    }
    Ok(MultiplicityWitness {
        center,
        radius,
        epsilon,
        base,
        perturbed,
        base_report,
        perturbed_report,
        separation: f0.dist(fe),
        outside_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_vec;
    use crate::fixtures;

    fn fam(name: &str) -> SphereFamily {
        fixtures::family(name).unwrap()
    }

    fn near(a: Vec3, b: Vec3, tol: f64) -> bool {
        a.dist(b) <= tol
    }

    #[test]
    fn worked_envelope_points() {
        let cyl = fam("parabolic-cylinder");
        let p = envelope_at(&cyl, 0.0, 5.0, &Branch::PlusGamma).unwrap().f;
        let m = envelope_at(&cyl, 0.0, 5.0, &Branch::MinusGamma).unwrap().f;
        assert!(near(p, Vec3::new(0.0, 1.0, 5.0), 1e-15));
        assert!(near(m, Vec3::new(0.0, -1.0, 5.0), 1e-15));

        let cone = fam("cone-distance");
        let f = envelope_at(&cone, 3.0, 4.0, &Branch::UniqueGammaZero).unwrap().f;
        assert!(f.norm() < 1e-15);

        let planes = fam("translated-planes");
        let f = envelope_at(&planes, 0.25, -0.5, &Branch::MinusGamma).unwrap().f;
        assert_eq!(f, Vec3::new(0.25, -0.5, -1.0));

        let half = fam("axis-half");
        let f = envelope_at(&half, 0.0, 2.0, &Branch::custom(AngleField::constant(0.0))).unwrap().f;
        assert!(near(f, Vec3::new(3.0_f64.sqrt() / 2.0, 0.0, 1.5), 1e-15));
    }

    #[test]
    fn unavailable_branches() {
        let cone = fam("cone-distance");
        assert!(matches!(
            envelope_at(&cone, 0.3, 0.2, &Branch::PlusGamma),
            Err(Error::BranchUnavailable { .. })
        ));
        assert!(matches!(
            envelope_at(&fam("concentric"), 0.3, 0.2, &Branch::UniqueGammaZero),
            Err(Error::NotCreative { .. })
        ));
        assert!(matches!(
            envelope_at(&fam("fixed-sphere"), 0.3, 0.2, &Branch::PlusGamma),
            Err(Error::BranchUnavailable { .. })
        ));
    }

    #[test]
    fn shifted_plane_is_not_an_envelope() {
        let planes = fam("translated-planes");
        let grid = fixtures::grid("translated-planes").unwrap();
        let (r, ok) = verify_envelope(&Candidate::Expr(parse_vec("(u + 1, v, 0)").unwrap()), &planes, &grid).unwrap();
        assert!(!ok);
        assert!(r.on_sphere < 1e-15);
        assert_eq!(r.tangency_u, 1.0);
        let (_, ok) = verify_envelope(&Candidate::Expr(parse_vec("(u, v, 1)").unwrap()), &planes, &grid).unwrap();
        assert!(ok);
    }

    #[test]
    fn frames_of_worked_envelopes() {
        let cone = fam("cone-distance");
        let fr = envelope_frame(&cone, &Branch::UniqueGammaZero, 0.3, 0.4).unwrap();
        assert_eq!(fr.omega.value(), Vec3::new(0.0, 0.0, 1.0));
        let planes = fam("translated-planes");
        let fr = envelope_frame(&planes, &Branch::PlusGamma, 0.3, 0.4).unwrap();
        assert_eq!(fr.omega.value(), Vec3::new(-1.0, 0.0, 0.0));
        assert!(fr.invariants.reconstruction_residual() < 1e-12);
    }

    #[test]
    fn counts() {
        for (name, want) in [
            ("translated-planes", Count::Two),
            ("cone-distance", Count::One),
            ("axis-full", Count::One),
            ("axis-half", Count::Uncountable),
            ("fixed-sphere", Count::Uncountable),
            ("concentric", Count::NotCreative),
        ] {
            let c = envelope_count(&fam(name), &fixtures::grid(name).unwrap()).unwrap();
            assert_eq!(c.count, want, "{name}");
        }
    }

    #[test]
    fn bump_is_flat_outside() {
        let inside = bump(Jet2::constant(0.0));
        assert_eq!(inside.val, 1.0);
        assert_eq!(bump(Jet2::constant(1.0)), Jet2::zero());
        assert!(bump(Jet2::constant(0.999)).val < 1e-300 + 1e-200);
    }

    #[test]
    fn zero_epsilon_gives_identical_branches() {
        let half = fam("axis-half");
        let grid = Grid::over(crate::frame::Rect::new(-0.5, 0.5, 1.5, 2.5), 11, 11).unwrap();
        let w = multiplicity_witness(&half, (0.0, 2.0), 0.4, 0.0, AngleField::constant(0.3), &grid).unwrap();
        assert_eq!(w.separation, 0.0);
        assert_eq!(w.outside_difference, 0.0);
        assert!(matches!(
            multiplicity_witness(&fam("cone-distance"), (0.5, 0.5), 0.1, 0.2, AngleField::constant(0.0), &grid),
            Err(Error::NoOpenNeighborhood(_))
        ));
    }
}
