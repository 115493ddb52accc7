use std::fmt;

use super::{BinOp, Constant, Expr, Var, VecExpr};

// Binding strength of each node; operands weaker than their slot get parentheses.
const ADD: u8 = 1;
const MUL: u8 = 2;
const NEG: u8 = 3;
const ATOM: u8 = 5;

fn strength(e: &Expr) -> u8 {
    match e {
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => ADD,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => MUL,
        Expr::Neg(_) => NEG,
        Expr::Pow(..) => 4,
        _ => ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if strength(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => write!(f, "{x}"),
            Expr::Const(Constant::Pi) => f.write_str("pi"),
            Expr::Const(Constant::E) => f.write_str("e"),
            Expr::Var(Var::U) => f.write_str("u"),
            Expr::Var(Var::V) => f.write_str("v"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_at(f, a, NEG)
            }
            Expr::Bin(op, a, b) => {
                let (sym, lhs, rhs) = match op {
                    BinOp::Add => (" + ", ADD, MUL),
                    BinOp::Sub => (" - ", ADD, MUL),
                    BinOp::Mul => (" * ", MUL, NEG),
                    BinOp::Div => (" / ", MUL, NEG),
                };
                write_at(f, a, lhs)?;
                f.write_str(sym)?;
                write_at(f, b, rhs)
            }
            Expr::Pow(a, b) => {
                write_at(f, a, ATOM)?;
                f.write_str("^")?;
                write_at(f, b, NEG)
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

impl fmt::Display for VecExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.cx, self.cy, self.cz)
    }
}

#[cfg(test)]
mod tests {
    use crate::dsl::parse;

    fn round_trip(src: &str) -> String {
        let once = parse(src).unwrap().to_string();
        let twice = parse(&once).unwrap().to_string();
        assert_eq!(once, twice, "{src}");
        assert_eq!(parse(&once).unwrap(), parse(src).unwrap(), "{src}");
        once
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(round_trip("(u)+((v))"), "u + v");
        assert_eq!(round_trip("u-(v-1)"), "u - (v - 1)");
        assert_eq!(round_trip("(u-v)-1"), "u - v - 1");
        assert_eq!(round_trip("u/(v*2)"), "u / (v * 2)");
        assert_eq!(round_trip("(-u)^2"), "(-u)^2");
        assert_eq!(round_trip("-u^2"), "-u^2");
        assert_eq!(round_trip("(u^2)^3"), "(u^2)^3");
        assert_eq!(round_trip("u^2^3"), "u^2^3");
        assert_eq!(round_trip("u*-v"), "u * -v");
        assert_eq!(round_trip("u - -v"), "u - -v");
        assert_eq!(round_trip("1/sqrt(9*u^2+4)"), "1 / sqrt(9 * u^2 + 4)");
        assert_eq!(round_trip("u^-(1/2)"), "u^-(1 / 2)");
    }

    #[test]
    fn literals_survive() {
        assert_eq!(round_trip("0.1 + 1e-7"), "0.1 + 0.0000001");
        assert_eq!(round_trip("2.5e300").parse::<f64>().unwrap(), 2.5e300);
    }
}
