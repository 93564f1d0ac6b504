//! Arithmetic expressions in one variable `x`, used for custom potentials.
//!
//! Precedence, loosest first: `+ -`, `* /`, unary `-`, `^` (right
//! associative). So `-x^2` is `-(x^2)` and `2^3^2` is `2^9`.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Cot,
    Sinh,
    Cosh,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Func {
    const ALL: [(&'static str, Func); 10] = [
        ("sin", Func::Sin),
        ("cos", Func::Cos),
        ("tan", Func::Tan),
        ("cot", Func::Cot),
        ("sinh", Func::Sinh),
        ("cosh", Func::Cosh),
        ("exp", Func::Exp),
        ("log", Func::Log),
        ("sqrt", Func::Sqrt),
        ("abs", Func::Abs),
    ];

    fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().find(|(n, _)| *n == name).map(|&(_, f)| f)
    }

    fn name(self) -> &'static str {
        Func::ALL.iter().find(|(_, f)| *f == self).map(|&(n, _)| n).expect("listed")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Pi,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("syntax error at byte {offset}: expected {}, found {found}", .expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{reason} at x = {x}")]
pub struct EvalError {
    pub x: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(v) => write!(f, "number {v}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Op(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

const OPERAND: &[&str] = &["number", "'x'", "'pi'", "function", "'('", "'-'"];

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            // exponent only when followed by digits, so `2e` stays an error
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &src[start..i];
            let v = text.parse::<f64>().map_err(|_| ParseError {
                offset: start,
                expected: vec!["number"],
                found: format!("'{text}'"),
            })?;
            out.push((start, Tok::Num(v)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if b"+-*/^()".contains(&c) {
            out.push((i, Tok::Op(c as char)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().expect("in bounds");
            return Err(ParseError {
                offset: i,
                expected: OPERAND.to_vec(),
                found: format!("'{ch}'"),
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.peek().to_string(),
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if *self.peek() == Tok::Op(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            // the exponent may carry its own sign: 2^-x
            Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(self.unary()?)))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error(&["')'", "operator"]));
                }
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "x" => {
                    self.pos += 1;
                    Ok(Expr::X)
                }
                "pi" => {
                    self.pos += 1;
                    Ok(Expr::Pi)
                }
                _ => {
                    let Some(f) = Func::from_name(&name) else {
                        return Err(self.error(OPERAND));
                    };
                    self.pos += 1;
                    if !self.eat('(') {
                        return Err(self.error(&["'('"]));
                    }
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return Err(self.error(&["')'", "operator"]));
                    }
                    Ok(Expr::Call(f, Box::new(arg)))
                }
            },
            _ => Err(self.error(OPERAND)),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

impl Expr {
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let fail = |reason: &str| EvalError {
            x,
            reason: reason.to_string(),
        };
        let v = match self {
            Expr::Num(v) => *v,
            Expr::X => x,
            Expr::Pi => PI,
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(x)?, b.eval(x)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div if b == 0.0 => return Err(fail("division by zero")),
                    BinOp::Div => a / b,
                    BinOp::Pow if a < 0.0 && b.fract() != 0.0 => {
                        return Err(fail("negative base with non-integer exponent"))
                    }
                    BinOp::Pow if a == 0.0 && b < 0.0 => return Err(fail("division by zero")),
                    BinOp::Pow => a.powf(b),
                }
            }
            Expr::Call(f, arg) => {
                let a = arg.eval(x)?;
                match f {
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Tan => a.tan(),
                    Func::Cot => {
                        let s = a.sin();
                        if s == 0.0 {
                            return Err(fail("division by zero in cot"));
                        }
                        a.cos() / s
                    }
                    Func::Sinh => a.sinh(),
                    Func::Cosh => a.cosh(),
                    Func::Exp => a.exp(),
                    Func::Log if a <= 0.0 => return Err(fail("log of a nonpositive value")),
                    Func::Log => a.ln(),
                    Func::Sqrt if a < 0.0 => return Err(fail("sqrt of a negative value")),
                    Func::Sqrt => a.sqrt(),
                    Func::Abs => a.abs(),
                }
            }
        };
        if v.is_nan() {
            return Err(fail("undefined value"));
        }
        Ok(v)
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized, so the output re-parses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::X => f.write_str("x"),
            Expr::Pi => f.write_str("pi"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Bin(op, a, b) => {
                let c = match op {
                    BinOp::Add => '+',
                    BinOp::Sub => '-',
                    BinOp::Mul => '*',
                    BinOp::Div => '/',
                    BinOp::Pow => '^',
                };
                write!(f, "({a} {c} {b})")
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}
