//! Framed surfaces `(x, n, s)` and their basic invariants.
//!
//! With `t = n × s` the moving frame `{n, s, t}` satisfies
//!
//! ```text
//! x_u = a1 s + b1 t          n_u =  e1 s + f1 t      s_u = -e1 n + g1 t
//! x_v = a2 s + b2 t          n_v =  e2 s + f2 t      s_v = -e2 n + g2 t
//! ```
//!
//! and the ten coefficients are the basic invariants. A surface is described
//! by DSL expressions ([`FramedSurfaceSpec`]); `n` and `s` may be omitted and
//! are then derived pointwise at regular points. Parameter changes and frame
//! rotations are recorded symbolically and applied on evaluation.

use std::fmt;

use crate::dsl::{eval_with, Expr, VecExpr};
use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::tolerance::Tolerances;
use crate::vector::{Vec3, Vec3J};

/// Step of the central differences used for derivatives of invariants.
pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl Rect {
    pub fn new(u_min: f64, u_max: f64, v_min: f64, v_max: f64) -> Self {
        Self {
            u_min,
            u_max,
            v_min,
            v_max,
        }
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        (self.u_min..=self.u_max).contains(&u) && (self.v_min..=self.v_max).contains(&v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Cmp {
    fn symbol(self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Gt => ">",
            Cmp::Ge => ">=",
        }
    }
}

/// Points where `expr cmp bound` holds are removed from the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Exclusion {
    pub expr: Expr,
    pub cmp: Cmp,
    pub bound: f64,
}

impl Exclusion {
    pub fn new(expr: Expr, cmp: Cmp, bound: f64) -> Self {
        Self { expr, cmp, bound }
    }

    /// Parses `expr < c`, `expr <= c`, `expr > c` or `expr >= c`.
    pub fn parse(src: &str, bindings: &crate::dsl::Bindings) -> Result<Self> {
        let (at, cmp, len) = ["<=", ">=", "<", ">"]
            .iter()
            .find_map(|op| {
                src.find(op).map(|i| {
                    let cmp = match *op {
                        "<=" => Cmp::Le,
                        ">=" => Cmp::Ge,
                        "<" => Cmp::Lt,
                        _ => Cmp::Gt,
                    };
                    (i, cmp, op.len())
                })
            })
            .ok_or_else(|| Error::Syntax {
                offset: src.len(),
                found: "end of input".into(),
                expected: vec!["`<`".into(), "`>`".into(), "`<=`".into(), "`>=`".into()],
            })?;
        let expr = crate::dsl::parse_with_bindings(&src[..at], bindings)?;
        let rhs = crate::dsl::parse_with_bindings(&src[at + len..], bindings)
            .map_err(|e| shift_offset(e, at + len))?;
        if rhs.mentions_variables() {
            return Err(Error::Syntax {
                offset: at + len,
                found: "bound depending on u or v".into(),
                expected: vec!["constant bound".into()],
            });
        }
        Ok(Self::new(expr, cmp, rhs.eval(0.0, 0.0)?))
    }

    /// Whether `(u, v)` is excluded. Points where the expression itself is
    /// undefined are excluded as well.
    pub fn excludes(&self, u: f64, v: f64) -> bool {
        match self.expr.eval(u, v) {
            Ok(q) => match self.cmp {
                Cmp::Lt => q < self.bound,
                Cmp::Le => q <= self.bound,
                Cmp::Gt => q > self.bound,
                Cmp::Ge => q >= self.bound,
            },
            Err(_) => true,
        }
    }
}

fn shift_offset(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax {
            offset,
            found,
            expected,
        } => Error::Syntax {
            offset: offset + by,
            found,
            expected,
        },
        Error::UnknownIdentifier { name, offset } => Error::UnknownIdentifier {
            name,
            offset: offset + by,
        },
        other => other,
    }
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.expr, self.cmp.symbol(), self.bound)
    }
}

/// Rectangle of parameters minus excluded loci.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub rect: Rect,
    pub exclusions: Vec<Exclusion>,
}

impl Domain {
    pub fn rect(u_min: f64, u_max: f64, v_min: f64, v_max: f64) -> Self {
        Self {
            rect: Rect::new(u_min, u_max, v_min, v_max),
            exclusions: Vec::new(),
        }
    }

    pub fn excluding(mut self, e: Exclusion) -> Self {
        self.exclusions.push(e);
        self
    }

    pub fn is_excluded(&self, u: f64, v: f64) -> bool {
        self.exclusions.iter().any(|e| e.excludes(u, v))
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        self.rect.contains(u, v) && !self.is_excluded(u, v)
    }
}

/// Jets of `x`, `n`, `s` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameJets {
    pub x: Vec3J,
    pub n: Vec3J,
    pub s: Vec3J,
}

impl FrameJets {
    pub fn t(&self) -> Vec3J {
        self.n.cross(&self.s)
    }

    /// Residuals of the framed-surface axioms, each scaled to be comparable
    /// with an absolute tolerance.
    pub fn axiom_residuals(&self) -> [(&'static str, f64); 5] {
        let n = self.n.value();
        let s = self.s.value();
        let (xu, xv) = (self.x.du(), self.x.dv());
        [
            ("|n| = 1", (n.norm() - 1.0).abs()),
            ("|s| = 1", (s.norm() - 1.0).abs()),
            ("n.s = 0", n.dot(s).abs()),
            ("x_u.n = 0", xu.dot(n).abs() / (1.0 + xu.norm())),
            ("x_v.n = 0", xv.dot(n).abs() / (1.0 + xv.norm())),
        ]
    }

    pub fn check_axioms(&self, u: f64, v: f64, tol: &Tolerances) -> Result<()> {
        for (axiom, residual) in self.axiom_residuals() {
            if !(residual <= tol.eps_residual) {
                return Err(Error::FramedAxiom {
                    axiom,
                    u,
                    v,
                    residual,
                });
            }
        }
        Ok(())
    }

    pub fn invariants(&self, u: f64, v: f64) -> InvariantData {
        let t = self.t();
        let (s0, t0) = (self.s.value(), t.value());
        let (xu, xv) = (self.x.du(), self.x.dv());
        let (nu, nv) = (self.n.du(), self.n.dv());
        let (su, sv) = (self.s.du(), self.s.dv());
        InvariantData {
            u,
            v,
            x: self.x,
            n: self.n,
            s: self.s,
            t,
            a1: xu.dot(s0),
            b1: xu.dot(t0),
            a2: xv.dot(s0),
            b2: xv.dot(t0),
            e1: nu.dot(s0),
            f1: nu.dot(t0),
            g1: su.dot(t0),
            e2: nv.dot(s0),
            f2: nv.dot(t0),
            g2: sv.dot(t0),
        }
    }

    /// Rotates `s` and `t` about `n` by the angle field `theta`.
    pub fn rotated(&self, theta: Jet2) -> FrameJets {
        let (c, s) = (theta.cos(), theta.sin());
        let t = self.t();
        FrameJets {
            x: self.x,
            n: self.n,
            s: self.s * c - t * s,
        }
    }

    /// Composes with a parameter change whose coordinate jets are `u`, `v`.
    pub fn compose(&self, u: &Jet2, v: &Jet2) -> FrameJets {
        FrameJets {
            x: self.x.compose(u, v),
            n: self.n.compose(u, v),
            s: self.s.compose(u, v),
        }
    }
}

/// Basic invariants and frame at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantData {
    pub u: f64,
    pub v: f64,
    pub x: Vec3J,
    pub n: Vec3J,
    pub s: Vec3J,
    pub t: Vec3J,
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub b2: f64,
    pub e1: f64,
    pub f1: f64,
    pub g1: f64,
    pub e2: f64,
    pub f2: f64,
    pub g2: f64,
}

impl InvariantData {
    /// `[[a1, b1], [a2, b2]]`.
    pub fn a_matrix(&self) -> [[f64; 2]; 2] {
        [[self.a1, self.b1], [self.a2, self.b2]]
    }

    /// Rows `(e_i, f_i, g_i)`.
    pub fn f_rows(&self) -> [[f64; 3]; 2] {
        [[self.e1, self.f1, self.g1], [self.e2, self.f2, self.g2]]
    }

    pub fn det_a(&self) -> f64 {
        self.a1 * self.b2 - self.a2 * self.b1
    }

    /// `max(|a1|, |b1|, |a2|, |b2|, 1)`, the scale of rank decisions.
    pub fn a_scale(&self) -> f64 {
        self.a1
            .abs()
            .max(self.b1.abs())
            .max(self.a2.abs())
            .max(self.b2.abs())
            .max(1.0)
    }

    /// Largest deviation in the reconstruction of `x_u, x_v, n_u, n_v, s_u, s_v`
    /// from the invariants.
    pub fn reconstruction_residual(&self) -> f64 {
        let (n, s, t) = (self.n.value(), self.s.value(), self.t.value());
        let checks = [
            (self.x.du(), s * self.a1 + t * self.b1),
            (self.x.dv(), s * self.a2 + t * self.b2),
            (self.n.du(), s * self.e1 + t * self.f1),
            (self.n.dv(), s * self.e2 + t * self.f2),
            (self.s.du(), n * -self.e1 + t * self.g1),
            (self.s.dv(), n * -self.e2 + t * self.g2),
            (self.t.du(), n * -self.f1 - s * self.g1),
            (self.t.dv(), n * -self.f2 - s * self.g2),
        ];
        checks
            .iter()
            .map(|(a, b)| (*a - *b).norm() / (1.0 + a.norm()))
            .fold(0.0, f64::max)
    }
}

/// Anything that can produce frame jets at a parameter point.
pub trait FramedSurface: Sync {
    fn frame(&self, u: f64, v: f64) -> Result<FrameJets>;
}

/// `n = (x_u × x_v)/|x_u × x_v|`, `s = x_u/|x_u|` at a regular point.
///
/// The returned jets carry exact first derivatives; their second-order part
/// is unknown because it would need third derivatives of `x`.
pub fn derive_frame_jets(x: &Vec3J, u: f64, v: f64, tol: &Tolerances) -> Result<(Vec3J, Vec3J)> {
    let xu = x.partial_u();
    let xv = x.partial_v();
    let c = xu.cross(&xv);
    let scale = xu.value().norm() * xv.value().norm();
    if tol.near_zero(c.value().norm(), scale) || xu.value().norm() == 0.0 {
        return Err(Error::Singular { u, v });
    }
    Ok((c.normalize(), xu.normalize()))
}

/// Unit normal and tangent derived from `x` alone at `(u0, v0)`.
pub fn derive_frame(x: &VecExpr, u0: f64, v0: f64, tol: &Tolerances) -> Result<(Vec3, Vec3)> {
    let xj = x.eval_jet(u0, v0)?;
    let (n, s) = derive_frame_jets(&xj, u0, v0, tol)?;
    Ok((n.value(), s.value()))
}

/// A framed surface given by expressions, possibly reparametrized and with a
/// rotated frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FramedSurfaceSpec {
    pub x: VecExpr,
    pub n: Option<VecExpr>,
    pub s: Option<VecExpr>,
    /// `(u(p, q), v(p, q))` when the spec has been reparametrized; `x`, `n`,
    /// `s` stay in the original coordinates.
    pub reparam: Option<(Expr, Expr)>,
    /// Rotation angle of `(s, t)` about `n`, in the current coordinates.
    pub rotation: Option<Expr>,
    pub domain: Domain,
    pub tol: Tolerances,
}

impl FramedSurfaceSpec {
    pub fn new(x: VecExpr, n: Option<VecExpr>, s: Option<VecExpr>, domain: Domain) -> Self {
        Self {
            x,
            n,
            s,
            reparam: None,
            rotation: None,
            domain,
            tol: Tolerances::default(),
        }
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    /// Frame in the original coordinates, given the coordinate jets.
    fn base_frame(&self, u: Jet2, v: Jet2) -> Result<FrameJets> {
        match (&self.n, &self.s) {
            (Some(n), Some(s)) => Ok(FrameJets {
                x: self.x.eval_with(u, v)?,
                n: n.eval_with(u, v)?,
                s: s.eval_with(u, v)?,
            }),
            _ => {
                // derive at the base point, then compose with the coordinate jets
                let (u0, v0) = (u.val, v.val);
                let x = self.x.eval_jet(u0, v0)?;
                let (dn, ds) = derive_frame_jets(&x, u0, v0, &self.tol)?;
                let n = match &self.n {
                    Some(n) => n.eval_jet(u0, v0)?,
                    None => dn,
                };
                let s = match &self.s {
                    Some(s) => s.eval_jet(u0, v0)?,
                    None if self.n.is_some() => orthogonal_tangent(&x, &n),
                    None => ds,
                };
                Ok(FrameJets { x, n, s }.compose(&u, &v))
            }
        }
    }

    /// Applies a parameter change `(u, v) = φ(p, q)`; `new_rect` is the
    /// rectangle of `(p, q)`. The Jacobian determinant is checked on a coarse
    /// grid of the new rectangle.
    pub fn reparametrize(&self, phi_u: &Expr, phi_v: &Expr, new_rect: Rect) -> Result<Self> {
        const CHECK: usize = 9;
        for i in 0..CHECK {
            for j in 0..CHECK {
                let p = crate::grid::lerp(new_rect.u_min, new_rect.u_max, i, CHECK);
                let q = crate::grid::lerp(new_rect.v_min, new_rect.v_max, j, CHECK);
                let (uj, vj) = (phi_u.eval_jet(p, q)?, phi_v.eval_jet(p, q)?);
                let det = uj.du * vj.dv - vj.du * uj.dv;
                let scale = uj.du.abs().max(uj.dv.abs()).max(vj.du.abs()).max(vj.dv.abs());
                if self.tol.near_zero(det, scale * scale) {
                    return Err(Error::DegenerateJacobian { p, q, det });
                }
            }
        }
        let (nu, nv) = match &self.reparam {
            Some((ou, ov)) => (ou.substitute(phi_u, phi_v), ov.substitute(phi_u, phi_v)),
            None => (phi_u.clone(), phi_v.clone()),
        };
        let domain = Domain {
            rect: new_rect,
            exclusions: self
                .domain
                .exclusions
                .iter()
                .map(|e| Exclusion::new(e.expr.substitute(phi_u, phi_v), e.cmp, e.bound))
                .collect(),
        };
        Ok(Self {
            reparam: Some((nu, nv)),
            rotation: self.rotation.as_ref().map(|t| t.substitute(phi_u, phi_v)),
            domain,
            ..self.clone()
        })
    }

    /// Rotates the frame by `theta`; successive rotations add.
    pub fn rotate(&self, theta: &Expr) -> Self {
        let rotation = match &self.rotation {
            Some(r) => Expr::bin(crate::dsl::BinOp::Add, r.clone(), theta.clone()),
            None => theta.clone(),
        };
        Self {
            rotation: Some(rotation),
            ..self.clone()
        }
    }

    /// Coordinate jets of the original parameters at the current point.
    pub fn coordinate_jets(&self, u0: f64, v0: f64) -> Result<(Jet2, Jet2)> {
        match &self.reparam {
            Some((pu, pv)) => Ok((pu.eval_jet(u0, v0)?, pv.eval_jet(u0, v0)?)),
            None => Ok((Jet2::var_u(u0), Jet2::var_v(v0))),
        }
    }
}

/// Unit tangent orthogonal to a supplied normal, built from `x_u` (or `x_v`).
fn orthogonal_tangent(x: &Vec3J, n: &Vec3J) -> Vec3J {
    let xu = x.partial_u();
    let pick = if xu.value().norm() > 0.0 { xu } else { x.partial_v() };
    let proj = pick - *n * pick.dot(n);
    proj.normalize()
}

impl FramedSurface for FramedSurfaceSpec {
    fn frame(&self, u0: f64, v0: f64) -> Result<FrameJets> {
        let (uj, vj) = self.coordinate_jets(u0, v0)?;
        let base = self.base_frame(uj, vj)?;
        match &self.rotation {
            Some(theta) => Ok(base.rotated(eval_with(theta, Jet2::var_u(u0), Jet2::var_v(v0))?)),
            None => Ok(base),
        }
    }
}

impl<F> FramedSurface for F
where
    F: Fn(f64, f64) -> Result<FrameJets> + Sync,
{
    fn frame(&self, u: f64, v: f64) -> Result<FrameJets> {
        self(u, v)
    }
}

/// Basic invariants at a point after checking the framed-surface axioms.
pub fn basic_invariants<S: FramedSurface + ?Sized>(
    fs: &S,
    u0: f64,
    v0: f64,
    tol: &Tolerances,
) -> Result<InvariantData> {
    let frame = fs.frame(u0, v0)?;
    frame.check_axioms(u0, v0, tol)?;
    Ok(frame.invariants(u0, v0))
}

/// Invariants at a point and its four axis neighbours at distance `h`.
#[derive(Debug, Clone, Copy)]
pub struct InvariantStencil {
    pub center: InvariantData,
    pub u_plus: InvariantData,
    pub u_minus: InvariantData,
    pub v_plus: InvariantData,
    pub v_minus: InvariantData,
    pub h: f64,
}

impl InvariantStencil {
    pub fn sample<S: FramedSurface + ?Sized>(fs: &S, u0: f64, v0: f64, h: f64) -> Result<Self> {
        let at = |u: f64, v: f64| fs.frame(u, v).map(|f| f.invariants(u, v));
        Ok(Self {
            center: at(u0, v0)?,
            u_plus: at(u0 + h, v0)?,
            u_minus: at(u0 - h, v0)?,
            v_plus: at(u0, v0 + h)?,
            v_minus: at(u0, v0 - h)?,
            h,
        })
    }

    fn d_u(&self, get: impl Fn(&InvariantData) -> f64) -> f64 {
        (get(&self.u_plus) - get(&self.u_minus)) / (2.0 * self.h)
    }

    fn d_v(&self, get: impl Fn(&InvariantData) -> f64) -> f64 {
        (get(&self.v_plus) - get(&self.v_minus)) / (2.0 * self.h)
    }

    /// The six integrability residuals, each written as `lhs - rhs` of
    ///
    /// ```text
    /// a1_v - b1 g2 = a2_u - b2 g1      e1_v - f1 g2 = e2_u - f2 g1
    /// b1_v - a2 g1 = b2_u - a1 g2      f1_v - e2 g1 = f2_u - e1 g2
    /// a1 e2 + b1 f2 = a2 e1 + b2 f1    g1_v - e1 f2 = g2_u - e2 f1
    /// ```
    pub fn residuals(&self) -> [f64; 6] {
        let c = &self.center;
        [
            (self.d_v(|i| i.a1) - c.b1 * c.g2) - (self.d_u(|i| i.a2) - c.b2 * c.g1),
            (self.d_v(|i| i.b1) - c.a2 * c.g1) - (self.d_u(|i| i.b2) - c.a1 * c.g2),
            (c.a1 * c.e2 + c.b1 * c.f2) - (c.a2 * c.e1 + c.b2 * c.f1),
            (self.d_v(|i| i.e1) - c.f1 * c.g2) - (self.d_u(|i| i.e2) - c.f2 * c.g1),
            (self.d_v(|i| i.f1) - c.e2 * c.g1) - (self.d_u(|i| i.f2) - c.e1 * c.g2),
            (self.d_v(|i| i.g1) - c.e1 * c.f2) - (self.d_u(|i| i.g2) - c.e2 * c.f1),
        ]
    }
}

/// Integrability residuals at `(u0, v0)`; derivative terms by central
/// differences with step [`FD_STEP`].
pub fn integrability_residuals<S: FramedSurface + ?Sized>(fs: &S, u0: f64, v0: f64) -> Result<[f64; 6]> {
    Ok(InvariantStencil::sample(fs, u0, v0, FD_STEP)?.residuals())
}

/// A sphere family: centres on a framed surface with radius `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereFamily {
    pub surface: FramedSurfaceSpec,
    /// Radius in the current coordinates of `surface`.
    pub radius: Expr,
}

impl SphereFamily {
    pub fn new(surface: FramedSurfaceSpec, radius: Expr) -> Self {
        Self { surface, radius }
    }

    pub fn tol(&self) -> &Tolerances {
        &self.surface.tol
    }

    pub fn domain(&self) -> &Domain {
        &self.surface.domain
    }

    /// Jet of the radius; fails unless it is positive.
    pub fn lambda(&self, u0: f64, v0: f64) -> Result<Jet2> {
        let l = self.radius.eval_jet(u0, v0)?;
        if !(l.val > 0.0) {
            return Err(Error::NonPositiveRadius {
                u: u0,
                v: v0,
                lambda: l.val,
            });
        }
        Ok(l)
    }

    pub fn invariants(&self, u0: f64, v0: f64) -> Result<InvariantData> {
        basic_invariants(&self.surface, u0, v0, &self.surface.tol)
    }

    pub fn reparametrize(&self, phi_u: &Expr, phi_v: &Expr, new_rect: Rect) -> Result<Self> {
        Ok(Self {
            surface: self.surface.reparametrize(phi_u, phi_v, new_rect)?,
            radius: self.radius.substitute(phi_u, phi_v),
        })
    }

    pub fn rotate(&self, theta: &Expr) -> Self {
        Self {
            surface: self.surface.rotate(theta),
            radius: self.radius.clone(),
        }
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.surface.tol = tol;
        self
    }
}

impl FramedSurface for SphereFamily {
    fn frame(&self, u: f64, v: f64) -> Result<FrameJets> {
        self.surface.frame(u, v)
    }
}
