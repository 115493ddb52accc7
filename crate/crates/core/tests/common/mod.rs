//! Helpers shared by the integration targets.

#![allow(dead_code)]

use rand::Rng;
use sphere_envelopes::dsl::{BinOp, Constant, Expr, Func, Var};
use sphere_envelopes::fixtures;
use sphere_envelopes::frame::SphereFamily;

/// Random expression in `u`, `v` that is smooth on `[-1, 1]²`.
///
/// Every function of the grammar appears, but each is wrapped so that its
/// argument stays away from the singularities: `sqrt(1 + e^2)`,
/// `log(2 + sin(e))`, `tan(atan(e)/2)`, `exp(atan(e))`, and divisions by
/// `1.5 + cos(e)`.
pub fn smooth_expr<R: Rng>(rng: &mut R, depth: usize) -> Expr {
    let one = || Expr::num(1.0);
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..5) {
            0 | 1 => Expr::Var(Var::U),
            2 => Expr::Var(Var::V),
            3 => Expr::Const(Constant::Pi),
            _ => Expr::num((rng.gen_range(0.1..2.0f64) * 8.0).round() / 8.0),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..13) {
        0 => Expr::bin(BinOp::Add, smooth_expr(rng, d), smooth_expr(rng, d)),
        1 => Expr::bin(BinOp::Sub, smooth_expr(rng, d), smooth_expr(rng, d)),
        2 | 3 => Expr::bin(BinOp::Mul, smooth_expr(rng, d), smooth_expr(rng, d)),
        4 => Expr::bin(
            BinOp::Div,
            smooth_expr(rng, d),
            Expr::bin(BinOp::Add, Expr::num(1.5), Expr::call(Func::Cos, smooth_expr(rng, d))),
        ),
        5 => Expr::call(Func::Sin, smooth_expr(rng, d)),
        6 => Expr::call(Func::Cos, smooth_expr(rng, d)),
        7 => Expr::call(Func::Atan, smooth_expr(rng, d)),
        8 => Expr::call(
            Func::Sqrt,
            Expr::bin(BinOp::Add, one(), Expr::Pow(Box::new(smooth_expr(rng, d)), Box::new(Expr::num(2.0)))),
        ),
        9 => Expr::call(
            Func::Log,
            Expr::bin(BinOp::Add, Expr::num(2.0), Expr::call(Func::Sin, smooth_expr(rng, d))),
        ),
        10 => Expr::call(
            Func::Tan,
            Expr::bin(BinOp::Div, Expr::call(Func::Atan, smooth_expr(rng, d)), Expr::num(2.0)),
        ),
        11 => Expr::call(Func::Exp, Expr::call(Func::Atan, smooth_expr(rng, d))),
        _ => {
            let k = rng.gen_range(2..4) as f64;
            Expr::Pow(Box::new(smooth_expr(rng, d)), Box::new(Expr::num(k)))
        }
    }
}

/// A random point of the fixture's rectangle that is not excluded.
pub fn domain_point<R: Rng>(rng: &mut R, family: &SphereFamily) -> (f64, f64) {
    let r = family.domain().rect;
    loop {
        let u = rng.gen_range(r.u_min..=r.u_max);
        let v = rng.gen_range(r.v_min..=r.v_max);
        if family.domain().contains(u, v) {
            return (u, v);
        }
    }
}

pub fn all_families() -> Vec<(&'static str, SphereFamily)> {
    fixtures::names()
        .map(|n| (n, fixtures::family(n).expect("fixture builds")))
        .collect()
}

/// `|a - b| ≤ rel·max(1, |a|, |b|)`.
pub fn close_rel(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * 1f64.max(a.abs()).max(b.abs())
}
