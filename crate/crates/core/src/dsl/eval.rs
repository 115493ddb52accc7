use super::{BinOp, Expr, Func, Var};
use crate::error::{DomainError, Error, Result};
use crate::jet::Jet2;

/// Jet of `e` at `(u0, v0)`.
pub fn eval_jet(e: &Expr, u0: f64, v0: f64) -> Result<Jet2> {
    eval_with(e, Jet2::var_u(u0), Jet2::var_v(v0))
}

/// Plain value of `e` at `(u0, v0)`.
pub fn eval_f64(e: &Expr, u0: f64, v0: f64) -> Result<f64> {
    eval_with(e, Jet2::constant(u0), Jet2::constant(v0)).map(|j| j.val)
}

/// Evaluates `e` with `u` and `v` bound to arbitrary jets, which composes `e`
/// with whatever map those jets describe.
pub fn eval_with(e: &Expr, u: Jet2, v: Jet2) -> Result<Jet2> {
    walk(e, u, v).map_err(|(source, node)| Error::Domain {
        source,
        u: u.val,
        v: v.val,
        location: Some(node.to_string()),
    })
}

type Walk<'e> = std::result::Result<Jet2, (DomainError, &'e Expr)>;

fn walk<'e>(e: &'e Expr, u: Jet2, v: Jet2) -> Walk<'e> {
    let at = |r: std::result::Result<Jet2, DomainError>| r.map_err(|d| (d, e));
    match e {
        Expr::Num(x) => Ok(Jet2::constant(*x)),
        Expr::Const(c) => Ok(Jet2::constant(c.value())),
        Expr::Var(Var::U) => Ok(u),
        Expr::Var(Var::V) => Ok(v),
        Expr::Neg(a) => Ok(-walk(a, u, v)?),
        Expr::Bin(op, a, b) => {
            let x = walk(a, u, v)?;
            let y = walk(b, u, v)?;
            match op {
                BinOp::Add => Ok(x + y),
                BinOp::Sub => Ok(x - y),
                BinOp::Mul => Ok(x * y),
                BinOp::Div => at(x.checked_div(y)),
            }
        }
        Expr::Pow(a, b) => {
            let base = walk(a, u, v)?;
            let k = walk(b, u, v)?.val;
            if k.fract() == 0.0 && k.abs() <= f64::from(i32::MAX) {
                at(base.checked_powi(k as i32))
            } else {
                at(base.checked_powf(k))
            }
        }
        Expr::Call(f, a) => {
            let x = walk(a, u, v)?;
            match f {
                Func::Sin => Ok(x.sin()),
                Func::Cos => Ok(x.cos()),
                Func::Tan => at(x.checked_tan()),
                Func::Sqrt => at(x.checked_sqrt()),
                Func::Exp => Ok(x.exp()),
                Func::Log => at(x.checked_ln()),
                Func::Atan => Ok(x.atan()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    fn jet(src: &str, u: f64, v: f64) -> Jet2 {
        eval_jet(&parse(src).unwrap(), u, v).unwrap()
    }

    #[test]
    fn worked_values() {
        assert_eq!(parse("u^2 + v").unwrap().eval(2.0, 3.0).unwrap(), 7.0);
        assert_eq!(parse("1/sqrt(9*u^2+4)").unwrap().eval(0.0, 0.0).unwrap(), 0.5);
        assert_eq!(jet("u*v", 2.0, 3.0).coefficients(), [6.0, 3.0, 2.0, 0.0, 1.0, 0.0]);
        let half = jet("v/2", 1.0, 2.0);
        assert_eq!((half.val, half.du, half.dv), (1.0, 0.0, 0.5));
        let r = jet("sqrt(u^2+v^2)", 3.0, 4.0);
        assert!((r.du - 0.6).abs() < 1e-15 && (r.dv - 0.8).abs() < 1e-15);
    }

    #[test]
    fn non_integer_exponent_uses_log_form() {
        let a = jet("u^0.5", 4.0, 0.0);
        let b = jet("sqrt(u)", 4.0, 0.0);
        for (x, y) in a.coefficients().iter().zip(b.coefficients()) {
            assert!((x - y).abs() < 1e-14);
        }
        assert!(eval_jet(&parse("u^0.5").unwrap(), -1.0, 0.0).is_err());
        assert_eq!(jet("u^-2", 2.0, 0.0).val, 0.25);
        assert!(eval_jet(&parse("u^-2").unwrap(), 0.0, 0.0).is_err());
        assert_eq!(jet("u^3", -2.0, 0.0).val, -8.0);
    }

    #[test]
    fn domain_errors_name_the_subexpression() {
        let e = parse("1 + log(u - 1)").unwrap();
        match eval_jet(&e, 0.5, 2.0) {
            Err(Error::Domain { source, u, v, location }) => {
                assert_eq!(source.primitive, "log");
                assert_eq!((u, v), (0.5, 2.0));
                assert_eq!(location.as_deref(), Some("log(u - 1)"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(eval_jet(&parse("u/v").unwrap(), 1.0, 0.0).is_err());
        assert!(eval_jet(&parse("sqrt(u)").unwrap(), -1.0, 0.0).is_err());
    }

    #[test]
    fn evaluation_is_bit_reproducible() {
        let e = parse("atan(u*v) + exp(-u^2) * tan(v/3) - log(2 + sin(u))").unwrap();
        let a = eval_jet(&e, 0.37, -1.21).unwrap();
        let b = eval_jet(&e, 0.37, -1.21).unwrap();
        assert_eq!(a.coefficients().map(f64::to_bits), b.coefficients().map(f64::to_bits));
    }

    #[test]
    fn substitution_composes() {
        let e = parse("u^2 * v").unwrap();
        let sub = e.substitute(&parse("u + v").unwrap(), &parse("u * v").unwrap());
        let direct = eval_jet(&sub, 0.3, -1.2).unwrap();
        let uj = Jet2::var_u(0.3) + Jet2::var_v(-1.2);
        let vj = Jet2::var_u(0.3) * Jet2::var_v(-1.2);
        let via = eval_with(&e, uj, vj).unwrap();
        for (x, y) in direct.coefficients().iter().zip(via.coefficients()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
