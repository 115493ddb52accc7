//! Evolutes, pedal surfaces and the relations between them and envelopes.

use crate::creative::classify_grid;
use crate::dsl::VecExpr;
use crate::envelope::{envelope_frame, sample_branch, Branch, EnvelopeBranch};
use crate::error::{Error, Result};
use crate::frame::{FrameJets, FramedSurface, InvariantData, SphereFamily};
use crate::grid::Grid;
use crate::tolerance::Tolerances;
use crate::vector::Vec3;

/// One root `δ` of `det M(δ) = 0` with its direction `θ ∈ [0, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvoluteRoot {
    pub delta: f64,
    /// `None` when `M(δ)` vanishes entirely, so every `θ` works.
    pub theta: Option<f64>,
    /// Double root of the quadratic.
    pub double: bool,
}

impl EvoluteRoot {
    pub fn matrix_vanishes(&self) -> bool {
        self.theta.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvoluteSolution {
    /// Real roots in ascending order; empty when there is no real root.
    Roots(Vec<EvoluteRoot>),
    /// `det M(δ)` vanishes for every `δ`.
    Degenerate,
}

impl EvoluteSolution {
    pub fn roots(&self) -> &[EvoluteRoot] {
        match self {
            EvoluteSolution::Roots(r) => r,
            EvoluteSolution::Degenerate => &[],
        }
    }
}

/// `M(δ) = [[a1 + δ e1, b1 + δ f1], [a2 + δ e2, b2 + δ f2]]`.
pub fn shifted_matrix(inv: &InvariantData, delta: f64) -> [[f64; 2]; 2] {
    [
        [inv.a1 + delta * inv.e1, inv.b1 + delta * inv.f1],
        [inv.a2 + delta * inv.e2, inv.b2 + delta * inv.f2],
    ]
}

/// `|M(δ)(sin θ, cos θ)|`.
pub fn evolute_residual(inv: &InvariantData, delta: f64, theta: f64) -> f64 {
    let m = shifted_matrix(inv, delta);
    let (s, c) = theta.sin_cos();
    (m[0][0] * s + m[0][1] * c).hypot(m[1][0] * s + m[1][1] * c)
}

fn canonical_theta(sin: f64, cos: f64) -> f64 {
    let (s, c) = if sin < 0.0 || (sin == 0.0 && cos < 0.0) { (-sin, -cos) } else { (sin, cos) };
    let th = s.atan2(c);
    if th >= std::f64::consts::PI {
        0.0
    } else {
        th
    }
}

fn null_direction(m: [[f64; 2]; 2], scale: f64, tol: &Tolerances) -> Option<f64> {
    let r0 = m[0][0].hypot(m[0][1]);
    let r1 = m[1][0].hypot(m[1][1]);
    let row = if r0 >= r1 { m[0] } else { m[1] };
    if tol.near_zero(r0.max(r1), scale) {
        return None;
    }
    // row·(sin θ, cos θ) = 0
    Some(canonical_theta(row[1], -row[0]))
}

/// Roots of `(a1 + δe1)(b2 + δf2) − (b1 + δf1)(a2 + δe2) = 0`.
pub fn evolute_of(inv: &InvariantData, tol: &Tolerances) -> EvoluteSolution {
    let qa = inv.e1 * inv.f2 - inv.f1 * inv.e2;
    let qb = inv.a1 * inv.f2 + inv.e1 * inv.b2 - inv.b1 * inv.e2 - inv.f1 * inv.a2;
    let qc = inv.a1 * inv.b2 - inv.b1 * inv.a2;
    let scale = [inv.a1, inv.b1, inv.a2, inv.b2, inv.e1, inv.f1, inv.e2, inv.f2]
        .iter()
        .fold(1.0_f64, |m, x| m.max(x.abs()));
    let s2 = scale * scale;
    let zero = |q: f64| tol.near_zero(q, s2);

    let mut roots: Vec<(f64, bool)> = Vec::new();
    if zero(qa) {
        if zero(qb) {
            if zero(qc) {
                return EvoluteSolution::Degenerate;
            }
        } else {
            roots.push((-qc / qb, false));
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc.abs() <= tol.eps_class * (qb * qb).max(s2 * s2) {
            roots.push((-qb / (2.0 * qa), true));
        } else if disc > 0.0 {
            let q = -0.5 * (qb + qb.signum_nonzero() * disc.sqrt());
            roots.push((q / qa, false));
            roots.push((qc / q, false));
        }
    }
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    EvoluteSolution::Roots(
        roots
            .into_iter()
            .map(|(delta, double)| EvoluteRoot {
                delta,
                theta: null_direction(shifted_matrix(inv, delta), scale, tol),
                double,
            })
            .collect(),
    )
}

trait SignumNonzero {
    fn signum_nonzero(self) -> f64;
}

impl SignumNonzero for f64 {
    fn signum_nonzero(self) -> f64 {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

pub fn evolute_at<S: FramedSurface + ?Sized>(fs: &S, u0: f64, v0: f64, tol: &Tolerances) -> Result<EvoluteSolution> {
    let inv = crate::frame::basic_invariants(fs, u0, v0, tol)?;
    Ok(evolute_of(&inv, tol))
}

/// Evolute point `x + δn` and frame `n̄ = sin θ s + cos θ t`, `s̄ = n`.
pub fn evolute_point(inv: &InvariantData, root: &EvoluteRoot) -> (Vec3, Option<(Vec3, Vec3)>) {
    let (x, n, s, t) = (inv.x.value(), inv.n.value(), inv.s.value(), inv.t.value());
    let frame = root.theta.map(|th| (s * th.sin() + t * th.cos(), n));
    (x + n * root.delta, frame)
}

/// Where the roots of adjacent samples along a grid row cannot be matched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBreak {
    pub i: usize,
    pub j: usize,
    pub before: usize,
    pub after: usize,
    /// Largest jump of matched roots, `NaN` when the counts differ.
    pub jump: f64,
}

/// Evolute roots over a grid with row-wise continuity tracking.
#[derive(Debug, Clone)]
pub struct EvoluteGrid {
    pub grid: Grid,
    /// `None` at excluded points.
    pub solutions: Vec<Option<EvoluteSolution>>,
    pub breaks: Vec<RootBreak>,
}

/// Solves at every grid point. Along each row, consecutive samples whose
/// root counts differ or whose sorted roots move by more than
/// `jump · (1 + |δ|)` are reported as breaks.
pub fn evolute_grid<S: FramedSurface + ?Sized>(fs: &S, grid: &Grid, tol: &Tolerances, jump: f64) -> Result<EvoluteGrid> {
    let solutions: Vec<Option<EvoluteSolution>> = grid
        .map(|p| if p.excluded { Ok(None) } else { evolute_at(fs, p.u, p.v, tol).map(Some) })
        .into_iter()
        .collect::<Result<_>>()?;
    let mut breaks = Vec::new();
    for j in 0..grid.nv {
        let mut prev: Option<&EvoluteSolution> = None;
        for i in 0..grid.nu {
            let Some(cur) = &solutions[grid.index(i, j)] else {
                prev = None;
                continue;
            };
            if let Some(p) = prev {
                let (a, b) = (p.roots(), cur.roots());
                let degenerate_change = matches!(p, EvoluteSolution::Degenerate) != matches!(cur, EvoluteSolution::Degenerate);
                if a.len() != b.len() || degenerate_change {
                    breaks.push(RootBreak {
                        i,
                        j,
                        before: a.len(),
                        after: b.len(),
                        jump: f64::NAN,
                    });
                } else {
                    let worst = a
                        .iter()
                        .zip(b)
                        .map(|(x, y)| (x.delta - y.delta).abs() / (1.0 + x.delta.abs()))
                        .fold(0.0, f64::max);
                    if worst > jump {
                        breaks.push(RootBreak {
                            i,
                            j,
                            before: a.len(),
                            after: b.len(),
                            jump: worst,
                        });
                    }
                }
            }
            prev = Some(cur);
        }
    }
    Ok(EvoluteGrid {
        grid: grid.clone(),
        solutions,
        breaks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PedalPoint {
    pub base: Vec3,
    pub direction: Vec3,
    /// `(x − P)·l`.
    pub support: f64,
    pub point: Vec3,
}

/// `[(x − P)·n] n`.
pub fn pedal_at<S: FramedSurface + ?Sized>(fs: &S, base: Vec3, u0: f64, v0: f64) -> Result<PedalPoint> {
    let fr = fs.frame(u0, v0)?;
    Ok(pedal_point(fr.x.value(), fr.n.value(), base))
}

pub fn pedal_point(x: Vec3, l: Vec3, base: Vec3) -> PedalPoint {
    let support = (x - base).dot(l);
    PedalPoint {
        base,
        direction: l,
        support,
        point: l * support,
    }
}

/// `[(x − P)·l] l` for a unit field `l`.
pub fn l_pedal_at<S: FramedSurface + ?Sized>(
    fs: &S,
    l: &VecExpr,
    base: Vec3,
    u0: f64,
    v0: f64,
    tol: &Tolerances,
) -> Result<PedalPoint> {
    let lv = l.eval(u0, v0)?;
    let norm = lv.norm();
    if (norm - 1.0).abs() > tol.eps_residual {
        return Err(Error::NonUnitDirection { u: u0, v: v0, norm });
    }
    let x = fs.frame(u0, v0)?.x.value();
    Ok(pedal_point(x, lv, base))
}

/// The envelope `(f, ν, ω)` of one branch viewed as a framed surface.
pub struct EnvelopeSurface<'a> {
    pub family: &'a SphereFamily,
    pub branch: Branch,
}

impl FramedSurface for EnvelopeSurface<'_> {
    fn frame(&self, u: f64, v: f64) -> Result<FrameJets> {
        Ok(envelope_frame(self.family, &self.branch, u, v)?.frame_jets())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvoluteReport {
    pub points: usize,
    /// `max |a_f1 − λ' e_f1|`.
    pub row_u: f64,
    /// `max |a_f2 − λ' e_f2|`.
    pub row_v: f64,
    /// `max |f − λ' ν − x|`.
    pub point: f64,
    pub tolerance: f64,
}

impl EvoluteReport {
    pub fn max(&self) -> f64 {
        self.row_u.max(self.row_v).max(self.point)
    }

    pub fn passes(&self) -> bool {
        self.max() <= self.tolerance
    }
}

/// Tolerance of the evolute and corollary checks that involve frame
/// derivatives.
pub const EVOLUTE_TOLERANCE: f64 = 1e-6;

/// Checks that `x` is an evolute of the unique envelope `(f, ν, ω)` with
/// `δ = −λ` and `θ = π/2`.
pub fn verify_evolute(family: &SphereFamily, grid: &Grid) -> Result<EvoluteReport> {
    verify_evolute_with(family, grid, |u, v| Ok(family.lambda(u, v)?.val))
}

/// As [`verify_evolute`] with `δ = −λ'` for a test radius `λ'`, which need
/// not be the radius the envelope was built from.
pub fn verify_evolute_with<L>(family: &SphereFamily, grid: &Grid, test_radius: L) -> Result<EvoluteReport>
where
    L: Fn(f64, f64) -> Result<f64> + Sync,
{
    let c = classify_grid(family, grid)?;
    let s = &c.summary;
    if s.any_not_creative() || !(s.dense_sigma2 || s.dense_sigma3) {
        return Err(Error::HypothesisNotMet(
            "neither the unique-on-circle nor the rank-one unique set is dense on the grid".into(),
        ));
    }
    let per_point = grid.map(|p| -> Result<Option<[f64; 3]>> {
        if p.excluded {
            return Ok(None);
        }
        let fr = envelope_frame(family, &Branch::UniqueGammaZero, p.u, p.v)?;
        let l = test_radius(p.u, p.v)?;
        let inv = &fr.invariants;
        let x = fr.x.value();
        let point = (fr.f.value() - fr.nu.value() * l - x).norm();
        Ok(Some([(inv.a1 - l * inv.e1).abs(), (inv.a2 - l * inv.e2).abs(), point]))
    });
    let mut r = EvoluteReport {
        points: 0,
        row_u: 0.0,
        row_v: 0.0,
        point: 0.0,
        tolerance: EVOLUTE_TOLERANCE,
    };
    for p in per_point {
        if let Some([a, b, d]) = p? {
            r.points += 1;
            r.row_u = r.row_u.max(a);
            r.row_v = r.row_v.max(b);
            r.point = r.point.max(d);
        }
    }
    Ok(r)
}

#[derive(Debug, Clone)]
pub struct PedalReport {
    /// The constant branch.
    pub constant: Branch,
    pub f1: Vec3,
    /// Largest pairwise distance within the constant branch.
    pub spread: f64,
    /// `max |(f₂ − f₁) − 2((x − f₁)·n) n|`.
    pub max_error: f64,
    /// Envelope residuals of the other branch.
    pub other: EnvelopeBranch,
    pub tolerance: f64,
}

impl PedalReport {
    pub fn passes(&self) -> bool {
        self.max_error <= self.tolerance && self.other.report.passes()
    }
}

pub const PEDAL_TOLERANCE: f64 = 1e-8;

/// Largest pairwise distance between points.
pub fn spread(points: &[Vec3]) -> f64 {
    let mut m: f64 = 0.0;
    for (k, a) in points.iter().enumerate() {
        for b in &points[k + 1..] {
            m = m.max(a.dist(*b));
        }
    }
    m
}

/// With `f₁` constant, checks `f₂ − f₁ = 2((x − f₁)·n) n`.
pub fn verify_pedal(family: &SphereFamily, grid: &Grid) -> Result<PedalReport> {
    let c = classify_grid(family, grid)?;
    if c.summary.any_not_creative() || !c.summary.dense_sigma1 {
        return Err(Error::HypothesisNotMet("the two-branch set is not dense on the grid".into()));
    }
    let plus = sample_branch(family, grid, &Branch::PlusGamma)?;
    let minus = sample_branch(family, grid, &Branch::MinusGamma)?;
    let pts = |b: &EnvelopeBranch| -> Vec<Vec3> { b.samples.iter().flatten().map(|s| s.f).collect() };
    let (pp, mp) = (pts(&plus), pts(&minus));
    let scale = |v: &[Vec3]| v.iter().fold(0.0_f64, |m, p| m.max(p.norm()));
    let limit = |v: &[Vec3]| PEDAL_TOLERANCE * (1.0 + scale(v));
    let (sp, sm) = (spread(&pp), spread(&mp));
    let (constant, f1, spread, other) = if sm <= limit(&mp) {
        (Branch::MinusGamma, mp[0], sm, plus)
    } else if sp <= limit(&pp) {
        (Branch::PlusGamma, pp[0], sp, minus)
    } else {
        return Err(Error::HypothesisNotMet(format!(
            "no constant branch: spreads {sp:e} (plus) and {sm:e} (minus)"
        )));
    };
    let mut max_error: f64 = 0.0;
    for s in other.samples.iter().flatten() {
        let fr = family.surface.frame(s.point.u, s.point.v)?;
        let (x, n) = (fr.x.value(), fr.n.value());
        let pedal = pedal_point(x * 2.0 - f1, n, f1).point;
        max_error = max_error.max(((s.f - f1) - pedal).norm());
    }
    Ok(PedalReport {
        constant,
        f1,
        spread,
        max_error,
        other,
        tolerance: PEDAL_TOLERANCE,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryReport {
    /// Points where both sides were compared.
    pub compared: usize,
    /// Points skipped because `(x − P)·n` vanishes.
    pub skipped: usize,
    /// `max |Pe_P[x] − ((f − P)·n) n|`.
    pub max_error: f64,
    /// `max |n·ν|`; zero when `x` lies on the normal lines of `f` with the
    /// matching frame.
    pub normal_mismatch: f64,
    /// `max |x − f − δν|` with `δ = (x − f)·ν`.
    pub off_normal_line: f64,
    /// `max |M_f(δ)(sin θ, cos θ)|` for the `θ` with `n = sin θ ω + cos θ μ`.
    pub evolute_residual: f64,
    /// Fraction of sampled points where `x` is regular.
    pub regular_fraction: f64,
    pub tolerance: f64,
}

impl CorollaryReport {
    pub fn coverage(&self) -> f64 {
        let total = self.compared + self.skipped;
        if total == 0 {
            0.0
        } else {
            self.compared as f64 / total as f64
        }
    }

    pub fn evolute_hypothesis_holds(&self) -> bool {
        self.normal_mismatch <= EVOLUTE_TOLERANCE
            && self.off_normal_line <= EVOLUTE_TOLERANCE
            && self.evolute_residual <= EVOLUTE_TOLERANCE
    }

    pub fn passes(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

pub const COROLLARY_TOLERANCE: f64 = 1e-8;

/// Compares `Pe_P[x]` with `n-Pe_P[f]` over the grid and measures how far
/// `x` is from being an evolute of `(f, ν, ω)`. Hypotheses are measured but
/// not enforced; see [`verify_corollary`].
pub fn corollary_residuals<X, F>(xs: &X, fs: &F, base: Vec3, grid: &Grid, tol: &Tolerances) -> Result<CorollaryReport>
where
    X: FramedSurface + ?Sized,
    F: FramedSurface + ?Sized,
{
    struct Pt {
        skip: bool,
        regular: bool,
        err: f64,
        mismatch: f64,
        off: f64,
        evo: f64,
    }
    let per_point = grid.map(|p| -> Result<Option<Pt>> {
        if p.excluded {
            return Ok(None);
        }
        let xf = xs.frame(p.u, p.v)?;
        let ff = fs.frame(p.u, p.v)?;
        let (x, n) = (xf.x.value(), xf.n.value());
        let (f, nu, omega) = (ff.x.value(), ff.n.value(), ff.s.value());
        let mu = nu.cross(omega);
        let cross = xf.x.du().cross(xf.x.dv()).norm();
        let regular = !tol.near_zero(cross, 1.0 + xf.x.du().norm() * xf.x.dv().norm());
        let support = (x - base).dot(n);
        let skip = tol.near_zero(support, 1.0 + (x - base).norm());
        let lhs = pedal_point(x, n, base).point;
        let rhs = pedal_point(f, n, base).point;
        let delta = (x - f).dot(nu);
        let inv = ff.invariants(p.u, p.v);
        let theta = n.dot(omega).atan2(n.dot(mu));
        Ok(Some(Pt {
            skip,
            regular,
            err: (lhs - rhs).norm(),
            mismatch: n.dot(nu).abs(),
            off: (x - f - nu * delta).norm(),
            evo: evolute_residual(&inv, delta, theta),
        }))
    });
    let mut r = CorollaryReport {
        compared: 0,
        skipped: 0,
        max_error: 0.0,
        normal_mismatch: 0.0,
        off_normal_line: 0.0,
        evolute_residual: 0.0,
        regular_fraction: 0.0,
        tolerance: COROLLARY_TOLERANCE,
    };
    let mut regular = 0usize;
    for p in per_point {
        let Some(p) = p? else { continue };
        regular += usize::from(p.regular);
        r.normal_mismatch = r.normal_mismatch.max(p.mismatch);
        r.off_normal_line = r.off_normal_line.max(p.off);
        r.evolute_residual = r.evolute_residual.max(p.evo);
        if p.skip {
            r.skipped += 1;
        } else {
            r.compared += 1;
            r.max_error = r.max_error.max(p.err);
        }
    }
    let total = r.compared + r.skipped;
    r.regular_fraction = if total == 0 { 0.0 } else { regular as f64 / total as f64 };
    Ok(r)
}

/// Checks `Pe_P[x] = n-Pe_P[f]` after checking the hypotheses: `x` is an
/// evolute of `(f, ν, ω)`, regular points of `x` are present, and `P` is
/// not on `x`. Points with `(x − P)·n = 0` are skipped.
pub fn verify_corollary<X, F>(xs: &X, fs: &F, base: Vec3, grid: &Grid, tol: &Tolerances) -> Result<CorollaryReport>
where
    X: FramedSurface + ?Sized,
    F: FramedSurface + ?Sized,
{
    let nearest = grid
        .map(|p| -> Result<f64> {
            if p.excluded {
                return Ok(f64::INFINITY);
            }
            Ok(xs.frame(p.u, p.v)?.x.value().dist(base))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    if nearest <= tol.eps_residual {
        return Err(Error::HypothesisNotMet(format!("base point {base} lies on the surface")));
    }
    let r = corollary_residuals(xs, fs, base, grid, tol)?;
    if !r.evolute_hypothesis_holds() {
        return Err(Error::HypothesisNotMet(format!(
            "x is not an evolute of (f, nu, omega): max |n.nu| = {:e}, max off-line = {:e}, max evolute residual = {:e}",
            r.normal_mismatch, r.off_normal_line, r.evolute_residual
        )));
    }
    if r.regular_fraction == 0.0 {
        return Err(Error::HypothesisNotMet("x has no regular sampled point".into()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_vec;
    use crate::fixtures;
    use crate::frame::{basic_invariants, Domain, FramedSurfaceSpec, Rect};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn sphere_focal_point_is_centre() {
        let fam = fixtures::family("unit-sphere").unwrap();
        let sol = evolute_at(&fam.surface, 0.3, 1.1, &tol()).unwrap();
        let roots = sol.roots();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].delta + 1.0).abs() < 1e-12);
        assert!(roots[0].double && roots[0].matrix_vanishes());
        let inv = basic_invariants(&fam.surface, 0.3, 1.1, &tol()).unwrap();
        assert!(evolute_point(&inv, &roots[0]).0.norm() < 1e-12);
    }

    #[test]
    fn plane_has_no_evolute() {
        let fam = fixtures::family("translated-planes").unwrap();
        assert_eq!(evolute_at(&fam.surface, 0.1, 0.2, &tol()).unwrap(), EvoluteSolution::Roots(vec![]));
    }

    #[test]
    fn cylinder_root_and_direction() {
        // radius-one cylinder: one principal curvature, focal line at the axis
        let fam = fixtures::family("involute-circle").unwrap();
        let inv = basic_invariants(&fam.surface, 0.4, 0.0, &tol()).unwrap();
        let roots = evolute_of(&inv, &tol());
        let r = roots.roots();
        assert_eq!(r.len(), 1);
        assert!((r[0].delta + 1.0).abs() < 1e-12);
        let th = r[0].theta.unwrap();
        assert!((0.0..std::f64::consts::PI).contains(&th));
        assert!(evolute_residual(&inv, r[0].delta, th) < 1e-12);
    }

    #[test]
    fn theta_canonical_range() {
        assert_eq!(canonical_theta(0.0, 1.0), 0.0);
        assert_eq!(canonical_theta(0.0, -1.0), 0.0);
        assert!((canonical_theta(-1.0, 0.0) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn pedal_examples() {
        let plane = FramedSurfaceSpec::new(
            parse_vec("(u, v, 1)").unwrap(),
            Some(parse_vec("(0, 0, 1)").unwrap()),
            Some(parse_vec("(1, 0, 0)").unwrap()),
            Domain::rect(-1.0, 1.0, -1.0, 1.0),
        );
        assert_eq!(pedal_at(&plane, Vec3::ZERO, 0.3, -0.7).unwrap().point, Vec3::new(0.0, 0.0, 1.0));
        let fam = fixtures::family("sphere-through-origin").unwrap();
        let (u, v) = (0.4, 2.0);
        let p = pedal_at(&fam.surface, Vec3::ZERO, u, v).unwrap();
        assert!((p.support - (1.0 + u.sin())).abs() < 1e-15);
        let n = parse_vec("(cos(u)*cos(v), cos(u)*sin(v), sin(u))").unwrap();
        let l = l_pedal_at(&fam.surface, &n, Vec3::ZERO, u, v, &tol()).unwrap();
        assert_eq!(l.point, p.point);
        let bad = parse_vec("(1, 1, 0)").unwrap();
        assert!(matches!(
            l_pedal_at(&fam.surface, &bad, Vec3::ZERO, u, v, &tol()),
            Err(Error::NonUnitDirection { .. })
        ));
    }

    #[test]
    fn pedal_theorem_on_sphere_through_origin() {
        let fam = fixtures::family("sphere-through-origin").unwrap();
        let grid = Grid::over(Rect::new(-1.2, 1.2, 0.0, 6.0), 9, 9).unwrap();
        let r = verify_pedal(&fam, &grid).unwrap();
        assert!(r.passes(), "{:e}", r.max_error);
        assert!(r.f1.norm() < 1e-12);
        let planes = fixtures::family("translated-planes").unwrap();
        let g = fixtures::grid("translated-planes").unwrap();
        assert!(matches!(verify_pedal(&planes, &g), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn evolute_theorem_on_unique_fixtures() {
        for name in ["cone-distance", "axis-full", "involute-circle"] {
            let fam = fixtures::family(name).unwrap();
            let r = verify_evolute(&fam, &fixtures::grid(name).unwrap()).unwrap();
            assert!(r.passes(), "{name}: {r:?}");
        }
        let planes = fixtures::family("translated-planes").unwrap();
        assert!(verify_evolute(&planes, &fixtures::grid("translated-planes").unwrap()).is_err());
    }

    #[test]
    fn evolute_check_rejects_a_wrong_radius() {
        for name in ["cone-distance", "axis-full", "involute-circle"] {
            let fam = fixtures::family(name).unwrap();
            let g = fixtures::grid(name).unwrap();
            let r = verify_evolute_with(&fam, &g, |u, v| Ok(fam.lambda(u, v)?.val + 0.1)).unwrap();
            assert!(!r.passes(), "{name}: {r:?}");
            assert!((r.point - 0.1).abs() < 1e-12, "{name}: {r:?}");
        }
    }

    #[test]
    fn corollary_on_involute_pair() {
        let fam = fixtures::family("involute-circle").unwrap();
        let grid = fixtures::grid("involute-circle").unwrap();
        let env = EnvelopeSurface {
            family: &fam,
            branch: Branch::UniqueGammaZero,
        };
        let r = verify_corollary(&fam.surface, &env, Vec3::ZERO, &grid, &tol()).unwrap();
        assert!(r.passes() && r.skipped == 0, "{r:?}");
        let on_surface = Vec3::new(1.0, 0.0, 0.0);
        assert!(matches!(
            verify_corollary(&fam.surface, &env, on_surface, &grid, &tol()),
            Err(Error::HypothesisNotMet(_))
        ));
    }
}
