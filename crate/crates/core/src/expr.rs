//! Coordinate expressions for integer-indexed point families.
//!
//! ```text
//! expr   = term { ("+" | "-") term }
//! term   = factor { ("*" | "/") factor }
//! factor = ["-"] ( integer | index-variable | "(" expr ")" )
//! ```
//!
//! Evaluation is exact; division by zero is reported, never rounded.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// Nonnegative integer literal.
    Int(BigInt),
    /// Index variable, by position in the family's variable list.
    Var(usize),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprErrorKind {
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownIdentifier(String),
    InvalidCharacter(char),
}

/// Parse failure; `column` is 1-based, counted in characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub kind: ExprErrorKind,
    pub column: usize,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprErrorKind::UnexpectedToken(t) => {
                write!(f, "unexpected `{t}` at column {}", self.column)
            }
            ExprErrorKind::UnexpectedEnd => {
                write!(f, "unexpected end of expression at column {}", self.column)
            }
            ExprErrorKind::UnknownIdentifier(id) => {
                write!(f, "unknown identifier `{id}` at column {}", self.column)
            }
            ExprErrorKind::InvalidCharacter(c) => {
                write!(f, "invalid character `{c}` at column {}", self.column)
            }
        }
    }
}

impl core::error::Error for ExprError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionByZero;

impl fmt::Display for DivisionByZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("division by zero")
    }
}

impl core::error::Error for DivisionByZero {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Int(i) => i.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Op(c) => c.to_string(),
            Tok::LParen => "(".to_string(),
            Tok::RParen => ")".to_string(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("ascii digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            let t = match c {
                '+' | '-' | '*' | '/' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(ExprError {
                        kind: ExprErrorKind::InvalidCharacter(other),
                        column: col,
                    })
                }
            };
            out.push((t, col));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [String],
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn error_here(&self) -> ExprError {
        match self.toks.get(self.pos) {
            Some((t, col)) => ExprError {
                kind: ExprErrorKind::UnexpectedToken(t.text()),
                column: *col,
            },
            None => ExprError {
                kind: ExprErrorKind::UnexpectedEnd,
                column: self.end_col,
            },
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek() {
            let op = if *c == '*' { BinOp::Mul } else { BinOp::Div };
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.primary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let Some((tok, col)) = self.toks.get(self.pos).cloned() else {
            return Err(self.error_here());
        };
        match tok {
            Tok::Int(i) => {
                self.pos += 1;
                Ok(Expr::Int(i))
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(k) => {
                    self.pos += 1;
                    Ok(Expr::Var(k))
                }
                None => Err(ExprError {
                    kind: ExprErrorKind::UnknownIdentifier(name),
                    column: col,
                }),
            },
            Tok::LParen => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.error_here()),
                }
            }
            _ => Err(self.error_here()),
        }
    }
}

impl Expr {
    /// Parses `src` with the given index variable names.
    pub fn parse(src: &str, vars: &[String]) -> Result<Expr, ExprError> {
        let toks = lex(src)?;
        let mut p = Parser {
            toks,
            pos: 0,
            vars,
            end_col: src.chars().count() + 1,
        };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.error_here());
        }
        Ok(e)
    }

    pub fn eval(&self, index: &[BigInt]) -> Result<Scalar, DivisionByZero> {
        Ok(match self {
            Expr::Int(i) => Scalar::from_bigint(i.clone()),
            Expr::Var(k) => Scalar::from_bigint(index[*k].clone()),
            Expr::Neg(e) => -e.eval(index)?,
            Expr::Bin(op, a, b) => {
                let a = a.eval(index)?;
                let b = b.eval(index)?;
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b.is_zero() {
                            return Err(DivisionByZero);
                        }
                        a / b
                    }
                }
            }
        })
    }

    /// Source text that parses back to an identical tree.
    pub fn render(&self, vars: &[String]) -> String {
        let mut s = String::new();
        self.write(&mut s, vars);
        s
    }

    fn write(&self, out: &mut String, vars: &[String]) {
        match self {
            Expr::Int(i) => out.push_str(&i.to_string()),
            Expr::Var(k) => out.push_str(&vars[*k]),
            Expr::Neg(e) => {
                out.push('-');
                match **e {
                    Expr::Int(_) | Expr::Var(_) => e.write(out, vars),
                    _ => {
                        out.push('(');
                        e.write(out, vars);
                        out.push(')');
                    }
                }
            }
            Expr::Bin(op, a, b) => {
                let prec = op.precedence();
                let wrap_left = matches!(**a, Expr::Bin(o, _, _) if o.precedence() < prec);
                let wrap_right = matches!(**b, Expr::Bin(o, _, _) if o.precedence() <= prec);
                if wrap_left {
                    out.push('(');
                }
                a.write(out, vars);
                if wrap_left {
                    out.push(')');
                }
                out.push(' ');
                out.push(op.symbol());
                out.push(' ');
                if wrap_right {
                    out.push('(');
                }
                b.write(out, vars);
                if wrap_right {
                    out.push(')');
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn vars() -> Vec<String> {
        vec!["n".to_string()]
    }

    fn at(src: &str, n: i64) -> Result<Scalar, DivisionByZero> {
        Expr::parse(src, &vars()).unwrap().eval(&[BigInt::from(n)])
    }

    #[test]
    fn evaluates_exactly() {
        assert_eq!(at("1 - 1/n", 2), Ok(Scalar::ratio(1, 2)));
        assert_eq!(at("-n + 1/(n+1)", 1), Ok(Scalar::ratio(-1, 2)));
        assert_eq!(at("2*3-4/2", 0), Ok(Scalar::from_int(4)));
        assert_eq!(at("8/4/2", 0), Ok(Scalar::from_int(1)));
        assert_eq!(at("1 - 1/n", 0), Err(DivisionByZero));
    }

    #[test]
    fn precedence_and_associativity() {
        let e = Expr::parse("1 - 2 - 3", &vars()).unwrap();
        assert_eq!(e.eval(&[BigInt::from(0)]), Ok(Scalar::from_int(-4)));
        let e = Expr::parse("-2 * 3 + 1", &vars()).unwrap();
        assert_eq!(e.eval(&[BigInt::from(0)]), Ok(Scalar::from_int(-5)));
    }

    #[test]
    fn syntax_error_points_at_slash() {
        let err = Expr::parse("1 - / n", &vars()).unwrap_err();
        assert_eq!(err.kind, ExprErrorKind::UnexpectedToken("/".into()));
        assert_eq!(err.column, 5);
    }

    #[test]
    fn other_errors() {
        assert_eq!(
            Expr::parse("1 +", &vars()).unwrap_err().kind,
            ExprErrorKind::UnexpectedEnd
        );
        assert_eq!(
            Expr::parse("m", &vars()).unwrap_err().kind,
            ExprErrorKind::UnknownIdentifier("m".into())
        );
        assert_eq!(
            Expr::parse("1.5", &vars()).unwrap_err().kind,
            ExprErrorKind::InvalidCharacter('.')
        );
        assert_eq!(Expr::parse("--1", &vars()).unwrap_err().column, 2);
        assert!(Expr::parse("(1", &vars()).is_err());
        assert!(Expr::parse("1 2", &vars()).is_err());
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u32..50).prop_map(|i| Expr::Int(BigInt::from(i))),
            Just(Expr::Var(0)),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (
                    prop_oneof![
                        Just(BinOp::Add),
                        Just(BinOp::Sub),
                        Just(BinOp::Mul),
                        Just(BinOp::Div)
                    ],
                    inner.clone(),
                    inner
                )
                    .prop_map(|(op, a, b)| Expr::Bin(op, Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(e in arb_expr()) {
            let text = e.render(&vars());
            let back = Expr::parse(&text, &vars()).unwrap();
            prop_assert_eq!(back, e);
        }
    }
}
