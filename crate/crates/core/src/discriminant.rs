//! The discriminant set `D = {p : F = F_u = F_v = 0 for some (u, v)}` with
//! `F(p, u, v) = |p − x(u, v)|² − λ(u, v)²`.
//!
//! `D` is only ever sampled. Each grid point contributes its envelope points,
//! a circle on its sphere (rank-one chord), or the whole sphere (disk), and
//! every emitted point keeps the parameters that generated it so membership
//! can be rechecked with [`residual_oracle`].

use std::f64::consts::PI;
use std::fmt;

use crate::creative::{solve_creator, CreatorSolution, RankOneLine, Sigma};
use crate::envelope::{envelope_at, Branch};
use crate::error::{Error, Result};
use crate::frame::{FramedSurface, InvariantData, Rect, SphereFamily};
use crate::grid::Grid;
use crate::jet::Jet2;
use crate::vector::{Vec3, Vec3J};

/// `(F, F_u, F_v)` at `p` for the sphere of parameters `(u0, v0)`.
pub fn residual_oracle(p: Vec3, family: &SphereFamily, u0: f64, v0: f64) -> Result<[f64; 3]> {
    let j = f_jet(p, family, u0, v0)?;
    Ok([j.val, j.du, j.dv])
}

/// `F` as a second-order jet in `(u, v)` with `p` held fixed.
pub fn f_jet(p: Vec3, family: &SphereFamily, u0: f64, v0: f64) -> Result<Jet2> {
    let x = family.surface.frame(u0, v0)?.x;
    let lambda = family.lambda(u0, v0)?;
    let d = Vec3J::constant(p) - x;
    Ok(d.dot(&d) - lambda * lambda)
}

/// Scale against which the oracle residuals are compared.
pub fn residual_scale(family: &SphereFamily, u0: f64, v0: f64) -> Result<f64> {
    let x = family.surface.frame(u0, v0)?.x;
    let l = family.lambda(u0, v0)?;
    let speed = x.du().norm().max(x.dv().norm());
    Ok((l.val * l.val).max(l.val * speed).max(1.0))
}

/// The circle `{x + λν : |ν| = 1, ν·w = c}` on one sphere, in the frame of
/// the point, as a function of the angle around the chord.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub u: f64,
    pub v: f64,
    pub center: Vec3,
    pub lambda: f64,
    /// Unit normal of the plane of the circle, `w_s s + w_t t`.
    pub axis: Vec3,
    pub c: f64,
    /// In-plane basis: `n` and `axis × n`.
    pub e1: Vec3,
    pub e2: Vec3,
    pub line: RankOneLine,
}

impl Circle {
    pub fn point(&self, theta: f64) -> Vec3 {
        let r = (1.0 - self.c * self.c).sqrt();
        let nu = self.axis * self.c + (self.e1 * theta.cos() + self.e2 * theta.sin()) * r;
        self.center + nu * self.lambda
    }

    /// `m` equally spaced points starting at angle 0.
    pub fn sample(&self, m: usize) -> Vec<Vec3> {
        (0..m).map(|k| self.point(2.0 * PI * k as f64 / m as f64)).collect()
    }

    /// Distance from `p` to the circle.
    pub fn distance(&self, p: Vec3) -> f64 {
        let q = p - self.center;
        let h = q.dot(self.axis) - self.lambda * self.c;
        let planar = q - self.axis * q.dot(self.axis);
        let radial = planar.norm() - self.lambda * (1.0 - self.c * self.c).sqrt();
        h.hypot(radial)
    }

    /// β-range of the chord `a α + b β + λ_row = 0` of the kept row in the
    /// closed form `(−λ_row b ± |a|√(a² + b² − λ_row²))/(a² + b²)`.
    pub fn printed_beta_interval(inv: &InvariantData, lambda: &Jet2, row: usize) -> (f64, f64) {
        let (a, b, l) = if row == 0 {
            (inv.a1, inv.b1, lambda.du)
        } else {
            (inv.a2, inv.b2, lambda.dv)
        };
        let q = a * a + b * b;
        let root = a.abs() * (q - l * l).max(0.0).sqrt();
        ((-l * b - root) / q, (-l * b + root) / q)
    }
}

fn circle_from(inv: &InvariantData, lambda: f64, line: RankOneLine) -> Circle {
    let (s, t, n) = (inv.s.value(), inv.t.value(), inv.n.value());
    let axis = s * line.w.0 + t * line.w.1;
    Circle {
        u: inv.u,
        v: inv.v,
        center: inv.x.value(),
        lambda,
        axis,
        c: line.c,
        e1: n,
        e2: axis.cross(n),
        line,
    }
}

fn solve(family: &SphereFamily, u0: f64, v0: f64) -> Result<(InvariantData, Jet2, CreatorSolution)> {
    let inv = family.invariants(u0, v0)?;
    let lambda = family.lambda(u0, v0)?;
    let sol = solve_creator(&inv, &lambda, family.tol());
    Ok((inv, lambda, sol))
}

/// The circle `C` of a Σ4 point.
pub fn circle_at(family: &SphereFamily, u0: f64, v0: f64) -> Result<Circle> {
    let (inv, lambda, sol) = solve(family, u0, v0)?;
    let line = match (sol.sigma, sol.line) {
        (Sigma::S4, Some(line)) => line,
        (label, _) => {
            return Err(Error::NotSigma4 {
                u: u0,
                v: v0,
                label: label.to_string(),
            })
        }
    };
    if line.c.abs() > 1.0 {
        return Err(Error::InconsistentConstraint { u: u0, v: v0, c: line.c });
    }
    Ok(circle_from(&inv, lambda.val, line))
}

/// `m` points of the circle of a Σ4 point.
pub fn circle_points(family: &SphereFamily, u0: f64, v0: f64, m: usize) -> Result<Vec<Vec3>> {
    Ok(circle_at(family, u0, v0)?.sample(m))
}

/// Largest gap between the chord's β-range and the closed-form β-interval.
pub fn beta_interval_gap(family: &SphereFamily, u0: f64, v0: f64) -> Result<f64> {
    let (inv, lambda, sol) = solve(family, u0, v0)?;
    let (Some(line), Some([lo, hi])) = (sol.line, sol.segment) else {
        return Err(Error::NotSigma4 {
            u: u0,
            v: v0,
            label: sol.sigma.to_string(),
        });
    };
    let (b0, b1) = Circle::printed_beta_interval(&inv, &lambda, line.row);
    Ok((lo.1 - b0).abs().max((hi.1 - b1).abs()))
}

/// `m` points of a Fibonacci lattice on the unit sphere.
pub fn fibonacci_sphere(m: usize) -> Vec<Vec3> {
    let golden = PI * (3.0 - 5.0_f64.sqrt());
    (0..m)
        .map(|k| {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / m as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * k as f64;
            Vec3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Envelope(EnvelopeTag),
    Circle,
    Sphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnvelopeTag {
    Plus,
    Minus,
    Unique,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::Envelope(EnvelopeTag::Plus) => "envelope-plus",
            Part::Envelope(EnvelopeTag::Minus) => "envelope-minus",
            Part::Envelope(EnvelopeTag::Unique) => "envelope-unique",
            Part::Circle => "circle",
            Part::Sphere => "sphere",
        })
    }
}

/// One sampled point of `D` with the parameters that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DPoint {
    pub part: Part,
    pub i: usize,
    pub j: usize,
    pub u: f64,
    pub v: f64,
    /// Position within a circle or sphere sampling, 0 for envelope points.
    pub k: usize,
    pub p: Vec3,
    pub residuals: [f64; 3],
    pub scale: f64,
}

impl DPoint {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0_f64, |m, r| m.max(r.abs()))
    }
}

#[derive(Debug, Clone)]
pub struct DiscriminantSample {
    pub grid: Grid,
    pub m: usize,
    /// Grid row-major, then by part, then by `k`.
    pub points: Vec<DPoint>,
    pub circles: usize,
    pub spheres: usize,
    /// Non-excluded grid points that produced nothing (not creative or
    /// ambiguous).
    pub skipped: usize,
}

impl DiscriminantSample {
    pub fn max_residual(&self) -> f64 {
        self.points.iter().fold(0.0, |m, p| m.max(p.max_residual()))
    }

    /// Largest residual relative to the per-point scale.
    pub fn max_scaled_residual(&self) -> f64 {
        self.points.iter().fold(0.0, |m, p| m.max(p.max_residual() / p.scale))
    }

    pub fn part(&self, part: Part) -> impl Iterator<Item = &DPoint> {
        self.points.iter().filter(move |p| p.part == part)
    }
}

fn emit(family: &SphereFamily, grid: &Grid, i: usize, j: usize, m: usize) -> Result<Option<Vec<DPoint>>> {
    let gp = grid.point(i, j);
    if gp.excluded {
        return Ok(Some(Vec::new()));
    }
    let (u, v) = (gp.u, gp.v);
    let (inv, lambda, sol) = solve(family, u, v)?;
    let scale = residual_scale(family, u, v)?;
    let mk = |part: Part, k: usize, p: Vec3| -> Result<DPoint> {
        Ok(DPoint {
            part,
            i,
            j,
            u,
            v,
            k,
            p,
            residuals: residual_oracle(p, family, u, v)?,
            scale,
        })
    };
    let out = match sol.sigma {
        Sigma::S1 => vec![
            mk(Part::Envelope(EnvelopeTag::Plus), 0, envelope_at(family, u, v, &Branch::PlusGamma)?.f)?,
            mk(Part::Envelope(EnvelopeTag::Minus), 0, envelope_at(family, u, v, &Branch::MinusGamma)?.f)?,
        ],
        Sigma::S2 | Sigma::S3 => vec![mk(
            Part::Envelope(EnvelopeTag::Unique),
            0,
            envelope_at(family, u, v, &Branch::UniqueGammaZero)?.f,
        )?],
        Sigma::S4 => {
            let circle = circle_from(&inv, lambda.val, sol.line.expect("rank-one"));
            circle
                .sample(m)
                .into_iter()
                .enumerate()
                .map(|(k, p)| mk(Part::Circle, k, p))
                .collect::<Result<_>>()?
        }
        Sigma::S5 => {
            let c = inv.x.value();
            fibonacci_sphere(m)
                .into_iter()
                .enumerate()
                .map(|(k, d)| mk(Part::Sphere, k, c + d * lambda.val))
                .collect::<Result<_>>()?
        }
        Sigma::NotCreative | Sigma::Ambiguous => return Ok(None),
    };
    Ok(Some(out))
}

/// Samples `D` over `grid` with `m` points per circle or sphere.
pub fn decompose_d(family: &SphereFamily, grid: &Grid, m: usize) -> Result<DiscriminantSample> {
    if m == 0 {
        return Err(Error::InvalidGrid("circle and sphere sample count must be positive".into()));
    }
    let per_point = grid.map(|gp| emit(family, grid, gp.i, gp.j, m));
    let mut sample = DiscriminantSample {
        grid: grid.clone(),
        m,
        points: Vec::new(),
        circles: 0,
        spheres: 0,
        skipped: 0,
    };
    for r in per_point {
        match r? {
            None => sample.skipped += 1,
            Some(pts) => {
                match pts.first().map(|p| p.part) {
                    Some(Part::Circle) => sample.circles += 1,
                    Some(Part::Sphere) => sample.spheres += 1,
                    _ => {}
                }
                sample.points.extend(pts);
            }
        }
    }
    Ok(sample)
}

/// Result of a local Newton search for a critical point of `F(p, ·)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    pub u: f64,
    pub v: f64,
    pub iterations: usize,
    /// `(F, F_u, F_v)` at the final parameters.
    pub residuals: [f64; 3],
    pub converged: bool,
}

/// Newton iteration on `(F_u, F_v) = 0` for fixed `p` from `(u, v)`.
/// Singular Hessian directions are dropped (pseudo-inverse), so flat
/// directions of `F` leave the iterate unchanged.
pub fn refine_parameters(p: Vec3, family: &SphereFamily, u: f64, v: f64, tol: f64) -> Result<Refinement> {
    const MAX_ITER: usize = 50;
    let (mut u, mut v) = (u, v);
    for it in 0..MAX_ITER {
        let j = f_jet(p, family, u, v)?;
        if j.du.hypot(j.dv) <= tol {
            return Ok(Refinement {
                u,
                v,
                iterations: it,
                residuals: [j.val, j.du, j.dv],
                converged: true,
            });
        }
        let (du, dv) = pinv_solve(j.duu, j.duv, j.dvv, -j.du, -j.dv);
        if du == 0.0 && dv == 0.0 {
            break;
        }
        u += du;
        v += dv;
        if !near_rect(&family.domain().rect, u, v) {
            break;
        }
    }
    let j = f_jet(p, family, u, v)?;
    Ok(Refinement {
        u,
        v,
        iterations: MAX_ITER,
        residuals: [j.val, j.du, j.dv],
        converged: j.du.hypot(j.dv) <= tol,
    })
}

/// Inside the rectangle widened by 1% of its sides, so that iterates
/// converging to a boundary point may overshoot it slightly.
fn near_rect(r: &Rect, u: f64, v: f64) -> bool {
    let (mu, mv) = (0.01 * (r.u_max - r.u_min), 0.01 * (r.v_max - r.v_min));
    u >= r.u_min - mu && u <= r.u_max + mu && v >= r.v_min - mv && v <= r.v_max + mv
}

/// Minimum-norm least-squares solution of the symmetric system
/// `[[a, b], [b, c]] x = r`.
fn pinv_solve(a: f64, b: f64, c: f64, r0: f64, r1: f64) -> (f64, f64) {
    let mean = 0.5 * (a + c);
    let half = (0.5 * (a - c)).hypot(b);
    let (l1, l2) = (mean + half, mean - half);
    // eigenvector of l1
    let (ex, ey) = if half == 0.0 {
        (1.0, 0.0)
    } else if (a - l2).abs() >= (c - l2).abs() {
        let n = (a - l2).hypot(b);
        ((a - l2) / n, b / n)
    } else {
        let n = b.hypot(c - l2);
        (b / n, (c - l2) / n)
    };
    let cutoff = 1e-12 * l1.abs().max(l2.abs());
    let mut x = (0.0, 0.0);
    for (l, (vx, vy)) in [(l1, (ex, ey)), (l2, (-ey, ex))] {
        if l.abs() > cutoff && l != 0.0 {
            let k = (vx * r0 + vy * r1) / l;
            x.0 += k * vx;
            x.1 += k * vy;
        }
    }
    x
}
