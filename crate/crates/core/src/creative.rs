//! The creative condition and the five-set decomposition of the domain.
//!
//! Writing the creator as `ν = α s + β t + γ n`, a sphere family is creative
//! when at every point
//!
//! ```text
//! a1 α + b1 β + λ_u = 0
//! a2 α + b2 β + λ_v = 0
//! α² + β² + γ² = 1
//! ```
//!
//! has a solution. Depending on the rank of `A = [[a1, b1], [a2, b2]]` the
//! `(α, β)` solution set is a point, a chord of the unit disk, the whole disk
//! or empty, and each point falls in one of
//!
//! | set | condition | solution set |
//! |-----|-----------|--------------|
//! | Σ1 | `J_a² + J_b² < J_F²` | interior point, two values of γ |
//! | Σ2 | `J_a² + J_b² = J_F² ≠ 0` | point on the unit circle, γ = 0 |
//! | Σ3 | rank 1, solution line tangent to the circle | one point, γ = 0 |
//! | Σ4 | rank 1, line crosses the open disk | chord |
//! | Σ5 | rank 0, `λ_u = λ_v = 0` | whole disk |
//!
//! with `J_F = a1 b2 − a2 b1`, `J_a = a1 λ_v − a2 λ_u`, `J_b = b1 λ_v − b2 λ_u`.
//!
//! Grid-level density claims are heuristics on samples, not proofs.

use std::fmt;

use crate::error::{Error, Result};
use crate::frame::{InvariantData, SphereFamily, FD_STEP};
use crate::grid::{Grid, GridPoint};
use crate::jet::Jet2;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jays {
    pub j_f: f64,
    pub j_a: f64,
    pub j_b: f64,
}

pub fn jays(inv: &InvariantData, lambda: &Jet2) -> Jays {
    let (lu, lv) = (lambda.du, lambda.dv);
    Jays {
        j_f: inv.a1 * inv.b2 - inv.a2 * inv.b1,
        j_a: inv.a1 * lv - inv.a2 * lu,
        j_b: inv.b1 * lv - inv.b2 * lu,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolutionKind {
    UniqueOnCircle,
    TwoBranch,
    Segment,
    Disk,
    Empty,
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolutionKind::UniqueOnCircle => "unique-on-circle",
            SolutionKind::TwoBranch => "two-branch",
            SolutionKind::Segment => "segment",
            SolutionKind::Disk => "disk",
            SolutionKind::Empty => "empty",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sigma {
    S1,
    S2,
    S3,
    S4,
    S5,
    NotCreative,
    Ambiguous,
}

impl Sigma {
    pub const ALL: [Sigma; 7] = [
        Sigma::S1,
        Sigma::S2,
        Sigma::S3,
        Sigma::S4,
        Sigma::S5,
        Sigma::NotCreative,
        Sigma::Ambiguous,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Sigma::S1 => "Sigma1",
            Sigma::S2 => "Sigma2",
            Sigma::S3 => "Sigma3",
            Sigma::S4 => "Sigma4",
            Sigma::S5 => "Sigma5",
            Sigma::NotCreative => "NotCreative",
            Sigma::Ambiguous => "Ambiguous",
        }
    }

    pub fn is_uncountable(self) -> bool {
        matches!(self, Sigma::S4 | Sigma::S5)
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The single independent equation of a rank-one system, normalised to
/// `w·(α, β) = c` with `|w| = 1`. `w` is expressed in the `(s, t)` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankOneLine {
    pub w: (f64, f64),
    pub c: f64,
    /// Which equation (0 for the `u` row, 1 for the `v` row) was kept.
    pub row: usize,
}

impl RankOneLine {
    /// Closest point of the line to the origin.
    pub fn foot(&self) -> (f64, f64) {
        (self.c * self.w.0, self.c * self.w.1)
    }

    /// Unit direction along the line.
    pub fn direction(&self) -> (f64, f64) {
        (-self.w.1, self.w.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CreatorSolution {
    pub kind: SolutionKind,
    /// Representative `(α, β)`: the Cramer solution in rank two, the point of
    /// the solution line closest to the origin in rank one, `(0, 0)` otherwise.
    pub alpha_beta: (f64, f64),
    /// Chord endpoints, ordered by β then α, when `kind` is `Segment`.
    pub segment: Option<[(f64, f64); 2]>,
    pub sigma: Sigma,
    pub jays: Jays,
    /// Present for rank-one systems.
    pub line: Option<RankOneLine>,
}

impl CreatorSolution {
    pub fn gamma_squared(&self) -> f64 {
        let (a, b) = self.alpha_beta;
        (1.0 - a * a - b * b).max(0.0)
    }

    pub fn is_creative(&self) -> bool {
        self.kind != SolutionKind::Empty
    }
}

/// Solves the creative condition at one point.
pub fn solve_creator(inv: &InvariantData, lambda: &Jet2, tol: &Tolerances) -> CreatorSolution {
    let j = jays(inv, lambda);
    let scale = inv.a_scale();
    let scale2 = scale * scale;
    let (lu, lv) = (lambda.du, lambda.dv);

    if !tol.near_zero(j.j_f, scale2) {
        let (alpha, beta) = (j.j_b / j.j_f, -j.j_a / j.j_f);
        let r2 = alpha * alpha + beta * beta;
        let (kind, mut sigma) = if (r2 - 1.0).abs() <= tol.eps_class {
            (SolutionKind::UniqueOnCircle, Sigma::S2)
        } else if r2 < 1.0 {
            (SolutionKind::TwoBranch, Sigma::S1)
        } else {
            (SolutionKind::Empty, Sigma::NotCreative)
        };
        // too close to singular to trust the rank-two reading
        if tol.in_class_band(j.j_f, scale2) {
            sigma = Sigma::Ambiguous;
        }
        return CreatorSolution {
            kind,
            alpha_beta: (alpha, beta),
            segment: None,
            sigma,
            jays: j,
            line: None,
        };
    }

    let row1 = (inv.a1, inv.b1);
    let row2 = (inv.a2, inv.b2);
    let n1 = row1.0.hypot(row1.1);
    let n2 = row2.0.hypot(row2.1);

    if tol.near_zero(n1, scale) && tol.near_zero(n2, scale) {
        let creative = tol.near_zero(lu, scale) && tol.near_zero(lv, scale);
        return CreatorSolution {
            kind: if creative { SolutionKind::Disk } else { SolutionKind::Empty },
            alpha_beta: (0.0, 0.0),
            segment: None,
            sigma: if creative { Sigma::S5 } else { Sigma::NotCreative },
            jays: j,
            line: None,
        };
    }

    let (index, row, norm, l_row) = if n1 >= n2 { (0, row1, n1, lu) } else { (1, row2, n2, lv) };
    let line = RankOneLine {
        w: (row.0 / norm, row.1 / norm),
        c: -l_row / norm,
        row: index,
    };
    let grad_scale = scale * lu.abs().max(lv.abs()).max(1.0);
    let consistent = tol.near_zero(j.j_a, grad_scale) && tol.near_zero(j.j_b, grad_scale);
    let d = line.c.abs();

    let (kind, sigma) = if !consistent {
        (SolutionKind::Empty, Sigma::NotCreative)
    } else if (d - 1.0).abs() <= tol.eps_class {
        (SolutionKind::UniqueOnCircle, Sigma::S3)
    } else if d < 1.0 {
        (SolutionKind::Segment, Sigma::S4)
    } else {
        (SolutionKind::Empty, Sigma::NotCreative)
    };

    let sigma = if consistent && sigma != printed_rank_one_sigma(inv, lu, lv, tol) {
        Sigma::Ambiguous
    } else {
        sigma
    };

    let (alpha_beta, segment) = match kind {
        SolutionKind::UniqueOnCircle => (line.w_scaled(line.c.signum()), None),
        SolutionKind::Segment => {
            let (fa, fb) = line.foot();
            let (da, db) = line.direction();
            let h = (1.0 - line.c * line.c).sqrt();
            let mut ends = [(fa - h * da, fb - h * db), (fa + h * da, fb + h * db)];
            ends.sort_by(|p, q| p.1.total_cmp(&q.1).then(p.0.total_cmp(&q.0)));
            ((fa, fb), Some(ends))
        }
        _ => (line.foot(), None),
    };

    CreatorSolution {
        kind,
        alpha_beta,
        segment,
        sigma,
        jays: j,
        line: Some(line),
    }
}

impl RankOneLine {
    fn w_scaled(&self, k: f64) -> (f64, f64) {
        (self.w.0 * k, self.w.1 * k)
    }
}

/// The rank-one sets read off the componentwise conditions
/// `(a1²+b1², a2²+b2²) = (λ_u², λ_v²)` for Σ3 and
/// `a1²+b1² > λ_u²` or `a2²+b2² > λ_v²` for Σ4.
pub fn printed_rank_one_sigma(inv: &InvariantData, lu: f64, lv: f64, tol: &Tolerances) -> Sigma {
    let scale = inv.a_scale();
    let band = tol.eps_class * (1.0 + scale * scale);
    let d1 = inv.a1 * inv.a1 + inv.b1 * inv.b1 - lu * lu;
    let d2 = inv.a2 * inv.a2 + inv.b2 * inv.b2 - lv * lv;
    if d1.abs() <= band && d2.abs() <= band {
        Sigma::S3
    } else if d1 > band || d2 > band {
        Sigma::S4
    } else {
        Sigma::NotCreative
    }
}

/// Solves the creative condition of `family` at `(u0, v0)`.
pub fn solve_at(family: &SphereFamily, u0: f64, v0: f64) -> Result<CreatorSolution> {
    let inv = family.invariants(u0, v0)?;
    let lambda = family.lambda(u0, v0)?;
    Ok(solve_creator(&inv, &lambda, family.tol()))
}

/// Per-point classification of a grid.
#[derive(Debug, Clone)]
pub struct PointClass {
    pub point: GridPoint,
    /// `None` at excluded points.
    pub solution: Option<CreatorSolution>,
}

impl PointClass {
    pub fn sigma(&self) -> Option<Sigma> {
        self.solution.map(|s| s.sigma)
    }
}

/// Label counts and density evidence for a classified grid.
///
/// A label counts as dense when every non-excluded, non-ambiguous sample has
/// that label somewhere in its closed 3x3 neighbourhood. An open-set witness
/// is a Σ4/Σ5 sample whose full 3x3 neighbourhood lies in Σ4 ∪ Σ5.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySummary {
    pub total: usize,
    pub excluded: usize,
    pub counts: [(Sigma, usize); 7],
    pub dense_sigma1: bool,
    pub dense_sigma2: bool,
    pub dense_sigma3: bool,
    /// Grid indices `(i, j)` of the first witness in row-major order.
    pub open_witness: Option<(usize, usize)>,
}

impl DensitySummary {
    pub fn count(&self, s: Sigma) -> usize {
        self.counts.iter().find(|(t, _)| *t == s).map_or(0, |c| c.1)
    }

    pub fn considered(&self) -> usize {
        self.total - self.excluded
    }

    pub fn fraction(&self, s: Sigma) -> f64 {
        match self.considered() {
            0 => 0.0,
            n => self.count(s) as f64 / n as f64,
        }
    }

    pub fn any_not_creative(&self) -> bool {
        self.count(Sigma::NotCreative) > 0
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub grid: Grid,
    pub points: Vec<PointClass>,
    pub summary: DensitySummary,
}

impl Classification {
    pub fn at(&self, i: usize, j: usize) -> &PointClass {
        &self.points[self.grid.index(i, j)]
    }
}

/// Classifies every non-excluded grid point. Evaluation failures (domain
/// errors, axiom violations, non-positive radius) abort with the point.
pub fn classify_grid(family: &SphereFamily, grid: &Grid) -> Result<Classification> {
    let points: Vec<Result<PointClass>> = grid.map(|p| {
        if p.excluded {
            return Ok(PointClass {
                point: *p,
                solution: None,
            });
        }
        Ok(PointClass {
            point: *p,
            solution: Some(solve_at(family, p.u, p.v)?),
        })
    });
    let points = points.into_iter().collect::<Result<Vec<_>>>()?;
    let summary = summarize(grid, &points);
    Ok(Classification {
        grid: grid.clone(),
        points,
        summary,
    })
}

pub fn summarize(grid: &Grid, points: &[PointClass]) -> DensitySummary {
    let labels: Vec<Option<Sigma>> = points.iter().map(PointClass::sigma).collect();
    let counts = Sigma::ALL.map(|s| (s, labels.iter().filter(|l| **l == Some(s)).count()));
    let dense = |target: Sigma| {
        let mut any = false;
        for j in 0..grid.nv {
            for i in 0..grid.nu {
                match labels[grid.index(i, j)] {
                    None | Some(Sigma::Ambiguous) => continue,
                    Some(_) => {}
                }
                any = true;
                if !grid.neighbourhood(i, j).any(|k| labels[k] == Some(target)) {
                    return false;
                }
            }
        }
        any
    };
    let mut open_witness = None;
    'outer: for j in 0..grid.nv {
        for i in 0..grid.nu {
            if !grid.is_interior(i, j) {
                continue;
            }
            let all_uncountable = grid
                .neighbourhood(i, j)
                .all(|k| labels[k].is_some_and(Sigma::is_uncountable));
            if all_uncountable {
                open_witness = Some((i, j));
                break 'outer;
            }
        }
    }
    DensitySummary {
        total: points.len(),
        excluded: labels.iter().filter(|l| l.is_none()).count(),
        counts,
        dense_sigma1: dense(Sigma::S1),
        dense_sigma2: dense(Sigma::S2),
        dense_sigma3: dense(Sigma::S3),
        open_witness,
    }
}

/// Left-hand side of the identity satisfied by any solution of the creative
/// condition,
///
/// ```text
/// α (b1 g2 − b2 g1) + β (g1 a2 − g2 a1) + (a1 α_v − a2 α_u) + (b1 β_v − b2 β_u) = 0,
/// ```
///
/// with α, β from the solver and their derivatives by central differences.
/// Only defined on Σ1 and Σ2, where α and β are smooth.
pub fn prop26_residual(family: &SphereFamily, u0: f64, v0: f64) -> Result<f64> {
    let center = solve_at(family, u0, v0)?;
    if !matches!(center.sigma, Sigma::S1 | Sigma::S2) {
        return Err(Error::NotApplicable {
            u: u0,
            v: v0,
            reason: format!("identity needs a Sigma1 or Sigma2 point, found {}", center.sigma),
        });
    }
    prop26_residual_with(family, u0, v0, |u, v| {
        let s = solve_at(family, u, v)?;
        match s.kind {
            SolutionKind::TwoBranch | SolutionKind::UniqueOnCircle if s.line.is_none() => Ok(s.alpha_beta),
            _ => Err(Error::NotApplicable {
                u,
                v,
                reason: "neighbouring point leaves the rank-two region".into(),
            }),
        }
    })
}

/// Same identity for an arbitrary `(α, β)` field.
pub fn prop26_residual_with<F>(family: &SphereFamily, u0: f64, v0: f64, alpha_beta: F) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<(f64, f64)>,
{
    let inv = family.invariants(u0, v0)?;
    let h = FD_STEP;
    let (al, be) = alpha_beta(u0, v0)?;
    let (up, um) = (alpha_beta(u0 + h, v0)?, alpha_beta(u0 - h, v0)?);
    let (vp, vm) = (alpha_beta(u0, v0 + h)?, alpha_beta(u0, v0 - h)?);
    let al_u = (up.0 - um.0) / (2.0 * h);
    let be_u = (up.1 - um.1) / (2.0 * h);
    let al_v = (vp.0 - vm.0) / (2.0 * h);
    let be_v = (vp.1 - vm.1) / (2.0 * h);
    let (a1, b1, g1, a2, b2, g2) = (inv.a1, inv.b1, inv.g1, inv.a2, inv.b2, inv.g2);
    Ok(al * (b1 * g2 - b2 * g1)
        + be * (g1 * a2 - g2 * a1)
        + (a1 * al_v - a2 * al_u)
        + (b1 * be_v - b2 * be_u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn solve(name: &str, u: f64, v: f64) -> CreatorSolution {
        solve_at(&fixtures::family(name).unwrap(), u, v).unwrap()
    }

    fn close(a: (f64, f64), b: (f64, f64)) -> bool {
        (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12
    }

    #[test]
    fn jays_of_worked_examples() {
        let fam = fixtures::family("parabolic-cylinder").unwrap();
        for u in [-0.5, 0.0, 0.7] {
            let j = jays(&fam.invariants(u, 0.3).unwrap(), &fam.lambda(u, 0.3).unwrap());
            assert_eq!((j.j_a, j.j_b), (0.0, 0.0));
            assert!((j.j_f + u * (9.0 * u * u + 4.0_f64).sqrt()).abs() < 1e-12);
        }
        let cone = fixtures::family("cone-distance").unwrap();
        let j = jays(&cone.invariants(3.0, 4.0).unwrap(), &cone.lambda(3.0, 4.0).unwrap());
        assert_eq!(j.j_f, 1.0);
        assert!((j.j_a - 0.8).abs() < 1e-15 && (j.j_b + 0.6).abs() < 1e-15);
    }

    #[test]
    fn solutions_of_worked_examples() {
        let s = solve("cone-distance", 3.0, 4.0);
        assert_eq!((s.kind, s.sigma), (SolutionKind::UniqueOnCircle, Sigma::S2));
        assert!(close(s.alpha_beta, (-0.6, -0.8)));

        let s = solve("translated-planes", 0.3, -0.4);
        assert_eq!((s.kind, s.sigma, s.alpha_beta), (SolutionKind::TwoBranch, Sigma::S1, (0.0, 0.0)));

        let s = solve("axis-full", 0.0, 1.5);
        assert_eq!((s.kind, s.sigma), (SolutionKind::UniqueOnCircle, Sigma::S3));
        assert!(close(s.alpha_beta, (0.0, -1.0)));

        let s = solve("axis-half", 0.0, 2.0);
        assert_eq!((s.kind, s.sigma), (SolutionKind::Segment, Sigma::S4));
        let h = 3.0_f64.sqrt() / 2.0;
        let [p, q] = s.segment.unwrap();
        assert!(close(p, (-h, -0.5)) && close(q, (h, -0.5)));

        let s = solve("fixed-sphere", 0.2, 0.1);
        assert_eq!((s.kind, s.sigma), (SolutionKind::Disk, Sigma::S5));

        let s = solve("concentric", 0.3, 0.4);
        assert_eq!((s.kind, s.sigma), (SolutionKind::Empty, Sigma::NotCreative));

        let s = solve("parabolic-cylinder", 0.0, 0.5);
        assert_eq!((s.kind, s.sigma), (SolutionKind::Segment, Sigma::S4));
        assert!(close(s.alpha_beta, (0.0, 0.0)));
    }

    #[test]
    fn inconsistent_rank_one_is_not_creative() {
        // x = (0, 0, v) with λ = 1 + u: row 1 vanishes but λ_u = 1
        let fam = crate::frame::SphereFamily::new(
            fixtures::family("axis-full").unwrap().surface,
            crate::dsl::parse("1 + u").unwrap(),
        );
        let s = solve_at(&fam, 0.0, 1.0).unwrap();
        assert_eq!(s.sigma, Sigma::NotCreative);
    }

    #[test]
    fn identity_residuals() {
        let cone = fixtures::family("cone-distance").unwrap();
        assert!(prop26_residual(&cone, 3.0, 4.0).unwrap().abs() <= 1e-6);
        let cyl = fixtures::family("parabolic-cylinder").unwrap();
        assert!(prop26_residual(&cyl, 1.0, 1.0).unwrap().abs() <= 1e-6);
        let wrong = prop26_residual_with(&cone, 3.0, 4.0, |u, v| {
            let s = solve_at(&cone, u, v)?;
            Ok((s.alpha_beta.0, -s.alpha_beta.1))
        })
        .unwrap();
        assert!((wrong - 24.0 / 125.0).abs() < 1e-6);
        assert!(matches!(
            prop26_residual(&cyl, 0.0, 1.0),
            Err(Error::NotApplicable { .. })
        ));
    }
}
