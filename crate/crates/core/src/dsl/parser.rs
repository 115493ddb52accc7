use super::lexer::{lex, Spanned, Tok};
use super::{BinOp, Bindings, Constant, Expr, Func, Var, VecExpr};
use crate::error::{Error, Result};

pub fn parse(src: &str) -> Result<Expr> {
    parse_with_bindings(src, &Bindings::new())
}

/// Parses `src`, replacing each bound name by its literal value.
pub fn parse_with_bindings(src: &str, bindings: &Bindings) -> Result<Expr> {
    let mut p = Parser::new(src, bindings)?;
    let e = p.expr()?;
    p.expect_end(&["`+`", "`-`", "`*`", "`/`", "`^`", "end of input"])?;
    Ok(e)
}

pub fn parse_vec(src: &str) -> Result<VecExpr> {
    parse_vec_with_bindings(src, &Bindings::new())
}

/// Parses a vector written `(cx, cy, cz)`.
pub fn parse_vec_with_bindings(src: &str, bindings: &Bindings) -> Result<VecExpr> {
    let mut p = Parser::new(src, bindings)?;
    p.eat(Tok::LParen, &["`(`"])?;
    let cx = p.expr()?;
    p.eat(Tok::Comma, &["`,`"])?;
    let cy = p.expr()?;
    p.eat(Tok::Comma, &["`,`"])?;
    let cz = p.expr()?;
    p.eat(Tok::RParen, &["`)`"])?;
    p.expect_end(&["end of input"])?;
    Ok(VecExpr::new(cx, cy, cz))
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    bindings: &'a Bindings,
}

impl<'a> Parser<'a> {
    fn new(src: &str, bindings: &'a Bindings) -> Result<Self> {
        if src.trim().is_empty() {
            return Err(Error::Syntax {
                offset: 0,
                found: "end of input".into(),
                expected: vec!["expression".into()],
            });
        }
        Ok(Self {
            toks: lex(src)?,
            pos: 0,
            bindings,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Syntax {
            offset: self.offset(),
            found: self.peek().describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn eat(&mut self, tok: Tok, expected: &[&str]) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expect_end(&self, expected: &[&str]) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let exponent = self.unary()?;
        if exponent.mentions_variables() {
            return Err(Error::Syntax {
                offset: at,
                found: "exponent depending on u or v".into(),
                expected: vec!["constant exponent".into()],
            });
        }
        Ok(Expr::Pow(Box::new(base), Box::new(exponent)))
    }

    fn primary(&mut self) -> Result<Expr> {
        const START: [&str; 4] = ["number", "identifier", "`(`", "`-`"];
        let (tok, at) = self.bump();
        match tok {
            Tok::Num(x) => Ok(Expr::Num(x)),
            Tok::LParen => {
                let e = self.expr()?;
                self.eat(Tok::RParen, &["`+`", "`-`", "`*`", "`/`", "`^`", "`)`"])?;
                Ok(e)
            }
            Tok::Ident(name) => self.identifier(name, at),
            _ => {
                self.pos -= 1;
                Err(self.error(&START))
            }
        }
    }

    fn identifier(&mut self, name: String, at: usize) -> Result<Expr> {
        match name.as_str() {
            "u" => return Ok(Expr::Var(Var::U)),
            "v" => return Ok(Expr::Var(Var::V)),
            "pi" => return Ok(Expr::Const(Constant::Pi)),
            "e" => return Ok(Expr::Const(Constant::E)),
            _ => {}
        }
        if let Some(f) = Func::from_name(&name) {
            self.eat(Tok::LParen, &["`(`"])?;
            let arg = self.expr()?;
            self.eat(Tok::RParen, &["`+`", "`-`", "`*`", "`/`", "`^`", "`)`"])?;
            return Ok(Expr::call(f, arg));
        }
        if let Some(&x) = self.bindings.get(&name) {
            return Ok(Expr::num(x));
        }
        Err(Error::UnknownIdentifier { name, offset: at })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(
            parse("u^2 + v").unwrap(),
            Expr::bin(
                BinOp::Add,
                Expr::Pow(Box::new(Expr::u()), Box::new(Expr::Num(2.0))),
                Expr::v()
            )
        );
        // unary minus binds looser than ^
        assert_eq!(
            parse("-u^2").unwrap(),
            Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::u()), Box::new(Expr::Num(2.0)))))
        );
        // ^ is right associative
        let e = parse("2^3^2").unwrap();
        assert_eq!(e.eval(0.0, 0.0).unwrap(), 512.0);
        // - and / are left associative
        assert_eq!(parse("8-2-1").unwrap().eval(0.0, 0.0).unwrap(), 5.0);
        assert_eq!(parse("8/2/2").unwrap().eval(0.0, 0.0).unwrap(), 2.0);
    }

    #[test]
    fn implicit_multiplication_is_rejected() {
        match parse("sin(u)cos(v)") {
            Err(Error::Syntax { offset, expected, .. }) => {
                assert_eq!(offset, 6);
                assert!(expected.iter().any(|e| e == "`*`"));
                assert!(expected.iter().any(|e| e == "end of input"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("2u").is_err());
    }

    #[test]
    fn unknown_identifier() {
        assert!(matches!(
            parse("u + w"),
            Err(Error::UnknownIdentifier { ref name, offset: 4 }) if name == "w"
        ));
        assert!(matches!(parse("abs(u)"), Err(Error::UnknownIdentifier { .. })));
    }

    #[test]
    fn bindings_are_substituted() {
        let mut b = Bindings::new();
        b.insert("k".into(), -2.5);
        let e = parse_with_bindings("k*u", &b).unwrap();
        assert_eq!(e.eval(2.0, 0.0).unwrap(), -5.0);
        assert_eq!(e.to_string(), "-2.5 * u");
    }

    #[test]
    fn exponent_must_be_constant() {
        assert!(parse("u^v").is_err());
        assert!(parse("u^(2*pi)").is_ok());
        assert!(parse("u^-1").is_ok());
    }

    #[test]
    fn malformed_inputs() {
        for src in ["", "  ", "u +", "(u", "u)", "sin u", "sin()", "*u", "u,v"] {
            assert!(parse(src).is_err(), "{src:?} should not parse");
        }
    }

    #[test]
    fn vectors() {
        let v = parse_vec("(u^2, u^3, v)").unwrap();
        assert_eq!(v.eval(2.0, 5.0).unwrap().to_array(), [4.0, 8.0, 5.0]);
        assert!(parse_vec("(u, v)").is_err());
        assert!(parse_vec("u, v, 0").is_err());
    }
}
