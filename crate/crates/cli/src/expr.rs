//! Arithmetic expressions over fixed-point residue values.
//!
//! Grammar: `expr = term (('+' | '-') term)*`, `term = unary (('*' | '/')
//! unary)*`, `unary = '-' unary | atom`, `atom = number | '(' expr ')'`.
//! A number is `digits[.digits]`; `digits/digits` written without spaces is
//! a single rational literal, so `1/3 * 3/5` multiplies two literals while
//! `1 / 3` divides in residue arithmetic.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rns_core::{forward_frac, parse_rational, reverse_int, FracSplit, Result, RnsError, RnsFixed, StepCounter};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Lit(BigRational),
    Neg(Box<Expr>),
    Bin(Op, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn parse_error(position: usize, message: impl Into<String>) -> RnsError {
    RnsError::Parse {
        position,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.src.as_bytes().get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.src.as_bytes().get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let op = if c == b'+' { Op::Add } else { Op::Sub };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let op = if c == b'*' { Op::Mul } else { Op::Div };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(parse_error(self.pos, format!("unclosed parenthesis opened at {open}")));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(_) => Err(parse_error(self.pos, "expected a number or '('")),
            None => Err(parse_error(self.pos, "unexpected end of expression")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let bytes = self.src.as_bytes();
        let start = self.pos;
        let digits = |mut i: usize| {
            while bytes.get(i).is_some_and(|b| b.is_ascii_digit() || *b == b'.') {
                i += 1;
            }
            i
        };
        let mut end = digits(start);
        if bytes.get(end) == Some(&b'/') && bytes.get(end + 1).is_some_and(u8::is_ascii_digit) {
            end = digits(end + 1);
        }
        self.pos = end;
        let lit = parse_rational(&self.src[start..end]).map_err(|e| match e {
            RnsError::Parse { position, message } => parse_error(start + position, message),
            other => other,
        })?;
        Ok(Expr::Lit(lit))
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(parse_error(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

/// Residue arithmetic wraps modulo R, so sums and payload products are
/// checked against `(R-1)/2` on the binary side first (uncounted).
fn check_range(x: &RnsFixed<u32>, y: &RnsFixed<u32>, op: Op) -> Result<()> {
    let mut scratch = StepCounter::new();
    let (a, b) = (reverse_int(x.payload(), &mut scratch), reverse_int(y.payload(), &mut scratch));
    let needed = match op {
        Op::Add => a + b,
        Op::Sub => a - b,
        Op::Mul => a * b,
        Op::Div => return Ok(()),
    };
    let bound = x.split().system().signed_bound();
    if needed.magnitude() > bound {
        let f = BigInt::from(x.split().fractional_range().clone());
        let shown = match op {
            Op::Mul => BigRational::new(needed, f.clone() * f),
            _ => BigRational::new(needed, f),
        };
        return Err(RnsError::OutOfRange {
            value: shown.to_string(),
            bound: x.split().max_value().to_string(),
        });
    }
    Ok(())
}

/// Evaluates in residue arithmetic, literals converted with `forward_frac`.
pub fn eval(e: &Expr, split: &Arc<FracSplit<u32>>, steps: &mut StepCounter) -> Result<RnsFixed<u32>> {
    Ok(match e {
        Expr::Lit(v) => forward_frac(v, split, steps)?,
        Expr::Neg(inner) => eval(inner, split, steps)?.neg(steps),
        Expr::Bin(op, a, b) => {
            let (x, y) = (eval(a, split, steps)?, eval(b, split, steps)?);
            check_range(&x, &y, *op)?;
            match op {
                Op::Add => x.add(&y, steps)?,
                Op::Sub => x.sub(&y, steps)?,
                Op::Mul => x.mul(&y, steps)?,
                Op::Div => x.div(&y, steps)?,
            }
        }
    })
}

/// The same expression in exact rational arithmetic.
pub fn eval_exact(e: &Expr) -> Result<BigRational> {
    Ok(match e {
        Expr::Lit(v) => v.clone(),
        Expr::Neg(inner) => -eval_exact(inner)?,
        Expr::Bin(op, a, b) => {
            let (x, y) = (eval_exact(a)?, eval_exact(b)?);
            match op {
                Op::Add => x + y,
                Op::Sub => x - y,
                Op::Mul => x * y,
                Op::Div if y == BigRational::from_integer(0.into()) => {
                    return Err(RnsError::DivisionByZero)
                }
                Op::Div => x / y,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rns_core::{reverse_frac, RnsSystem};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_literals_bind_tightly() {
        let e = parse("1/3 * 3/5").unwrap();
        assert_eq!(
            e,
            Expr::Bin(Op::Mul, Box::new(Expr::Lit(q(1, 3))), Box::new(Expr::Lit(q(3, 5))))
        );
        let e = parse("1 / 3").unwrap();
        assert!(matches!(e, Expr::Bin(Op::Div, _, _)));
    }

    #[test]
    fn precedence_and_grouping() {
        assert_eq!(eval_exact(&parse("1 + 2 * 3").unwrap()).unwrap(), q(7, 1));
        assert_eq!(eval_exact(&parse("(1 + 2) * 3").unwrap()).unwrap(), q(9, 1));
        assert_eq!(eval_exact(&parse("-2 - -3").unwrap()).unwrap(), q(1, 1));
        assert_eq!(eval_exact(&parse("0.5 * 1/4").unwrap()).unwrap(), q(1, 8));
        assert_eq!(eval_exact(&parse("1 - 2 - 3").unwrap()).unwrap(), q(-4, 1));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("1 + "), Err(RnsError::Parse { position: 4, .. })));
        assert!(matches!(parse("(1 + 2"), Err(RnsError::Parse { position: 6, .. })));
        assert!(matches!(parse("1 $ 2"), Err(RnsError::Parse { position: 2, .. })));
        assert!(matches!(parse("2 * 1/0"), Err(RnsError::Parse { position: 6, .. })));
        assert!(matches!(parse("1.2.3"), Err(RnsError::Parse { position: 3, .. })));
        assert_eq!(eval_exact(&parse("1 / 0").unwrap()), Err(RnsError::DivisionByZero));
    }

    #[test]
    fn residue_evaluation() {
        let s = Arc::new(RnsSystem::<u32>::natural(8).unwrap());
        let split = Arc::new(FracSplit::new(&s, &[3, 5]).unwrap());
        let mut st = StepCounter::new();
        let r = eval(&parse("1/3 * 3/5").unwrap(), &split, &mut st).unwrap();
        assert_eq!(reverse_frac(&r, &mut st), q(1, 5));
        let r = eval(&parse("(2 - 1/3) / 5").unwrap(), &split, &mut st).unwrap();
        assert_eq!(reverse_frac(&r, &mut st), q(1, 3));
        assert!(eval(&parse("1 / (1/3 - 1/3)").unwrap(), &split, &mut st).is_err());
        assert!(matches!(
            eval(&parse("1000 * 1000").unwrap(), &split, &mut st),
            Err(RnsError::OutOfRange { .. })
        ));
        // The value 40000 fits but the payload product 3000 * 3000 does not.
        assert!(eval(&parse("200 * 200").unwrap(), &split, &mut st).is_err());
        assert!(eval(&parse("100 * 100").unwrap(), &split, &mut st).is_ok());
        assert!(eval(&parse("200000 + 200000").unwrap(), &split, &mut st).is_err());
    }
}
