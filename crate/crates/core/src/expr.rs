//! Expression grammar shared by polynomials, rational candidate rules and
//! time coefficients.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' exponent)?
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`. Juxtaposition
//! (`2x`, `x y`, `(x)(y)`) is rejected.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{format_rational, LaurentPolynomial, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var {
        name: String,
        line: usize,
        column: usize,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token {
                tok,
                line: l,
                column: col,
            });
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l,
                column: col,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: l,
                column: col,
            });
            continue;
        }
        return Err(Error::Syntax {
            line: l,
            column: col,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, tok: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: tok.line,
            column: tok.column,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    let t = self.peek().clone();
                    return self.error(&t, "implicit multiplication is not allowed; use `*`");
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let parenthesized = self.peek().tok == Tok::LParen;
        if parenthesized {
            self.bump();
        }
        let negative = self.peek().tok == Tok::Minus;
        if negative {
            self.bump();
        }
        let t = self.bump();
        let n = match &t.tok {
            Tok::Int(n) => n.clone(),
            _ => return self.error(&t, "expected an integer exponent"),
        };
        let n: i64 = match i64::try_from(&n) {
            Ok(n) => n,
            Err(_) => return self.error(&t, "exponent too large"),
        };
        if parenthesized {
            let close = self.bump();
            if close.tok != Tok::RParen {
                return self.error(&close, "expected `)`");
            }
        }
        if self.peek().tok == Tok::Caret {
            let t = self.peek().clone();
            return self.error(&t, "chained `^` is ambiguous; add parentheses");
        }
        Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(Expr::Num(Rational::from_integer(n))),
            Tok::Ident(name) => Ok(Expr::Var {
                name,
                line: t.line,
                column: t.column,
            }),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return self.error(&close, "expected `)`");
                }
                Ok(inner)
            }
            Tok::End => self.error(&t, "unexpected end of input"),
            _ => self.error(&t, "expected a number, variable or `(`"),
        }
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser {
            tokens: tokenize(text)?,
            pos: 0,
        };
        let e = p.expr()?;
        let t = p.peek().clone();
        match t.tok {
            Tok::End => Ok(e),
            Tok::RParen => p.error(&t, "unbalanced `)`"),
            _ => p.error(&t, "unexpected token"),
        }
    }

    /// Names of all variables occurring in the expression, in order of
    /// first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var { name, .. } => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Fails with the position of the first variable not in `allowed`.
    pub fn check_variables(&self, allowed: &[&str]) -> Result<()> {
        match self {
            Expr::Num(_) => Ok(()),
            Expr::Var { name, line, column } => {
                if allowed.contains(&name.as_str()) {
                    Ok(())
                } else {
                    Err(Error::UnknownVariable {
                        name: name.clone(),
                        line: *line,
                        column: *column,
                    })
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.check_variables(allowed),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.check_variables(allowed)?;
                b.check_variables(allowed)
            }
        }
    }

    fn var_index(name: &str, line: usize, column: usize, vars: &[String]) -> Result<usize> {
        vars.iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable {
                name: name.to_string(),
                line,
                column,
            })
    }

    /// Interprets the expression as a Laurent polynomial over `vars`.
    /// Division is allowed only by nonzero monomials.
    pub fn to_polynomial(&self, vars: &[String]) -> Result<LaurentPolynomial> {
        let d = vars.len();
        Ok(match self {
            Expr::Num(c) => LaurentPolynomial::constant(d, c.clone()),
            Expr::Var { name, line, column } => {
                LaurentPolynomial::variable(d, Self::var_index(name, *line, *column, vars)?)
            }
            Expr::Neg(a) => -&a.to_polynomial(vars)?,
            Expr::Add(a, b) => &a.to_polynomial(vars)? + &b.to_polynomial(vars)?,
            Expr::Sub(a, b) => &a.to_polynomial(vars)? - &b.to_polynomial(vars)?,
            Expr::Mul(a, b) => &a.to_polynomial(vars)? * &b.to_polynomial(vars)?,
            Expr::Div(a, b) => {
                let den = b.to_polynomial(vars)?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero {
                        context: self.to_string(),
                    });
                }
                let inv = den.pow(-1).map_err(|_| {
                    Error::InvalidArgument(format!(
                        "division by the non-monomial `{b}` is not a polynomial"
                    ))
                })?;
                &a.to_polynomial(vars)? * &inv
            }
            Expr::Pow(a, n) => {
                let base = a.to_polynomial(vars)?;
                if *n < 0 && base.is_zero() {
                    return Err(Error::DivisionByZero {
                        context: self.to_string(),
                    });
                }
                base.pow(*n)?
            }
        })
    }

    /// Interprets the expression as a quotient of Laurent polynomials over
    /// `vars`, without any cancellation.
    pub fn to_fraction(&self, vars: &[String]) -> Result<(LaurentPolynomial, LaurentPolynomial)> {
        let d = vars.len();
        let one = LaurentPolynomial::one(d);
        Ok(match self {
            Expr::Num(_) | Expr::Var { .. } => (self.to_polynomial(vars)?, one),
            Expr::Neg(a) => {
                let (n, m) = a.to_fraction(vars)?;
                (-&n, m)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (n1, d1) = a.to_fraction(vars)?;
                let (n2, d2) = b.to_fraction(vars)?;
                let left = &n1 * &d2;
                let right = &n2 * &d1;
                let num = if matches!(self, Expr::Add(..)) {
                    &left + &right
                } else {
                    &left - &right
                };
                (num, &d1 * &d2)
            }
            Expr::Mul(a, b) => {
                let (n1, d1) = a.to_fraction(vars)?;
                let (n2, d2) = b.to_fraction(vars)?;
                (&n1 * &n2, &d1 * &d2)
            }
            Expr::Div(a, b) => {
                let (n1, d1) = a.to_fraction(vars)?;
                let (n2, d2) = b.to_fraction(vars)?;
                if n2.is_zero() {
                    return Err(Error::DivisionByZero {
                        context: self.to_string(),
                    });
                }
                (&n1 * &d2, &d1 * &n2)
            }
            Expr::Pow(a, k) => {
                let (n, m) = a.to_fraction(vars)?;
                let k = *k;
                if k >= 0 {
                    (n.pow(k)?, m.pow(k)?)
                } else if n.is_zero() {
                    return Err(Error::DivisionByZero {
                        context: self.to_string(),
                    });
                } else {
                    (m.pow(-k)?, n.pow(-k)?)
                }
            }
        })
    }

    /// Exact evaluation with a single bound variable.
    pub fn evaluate_at(&self, var: &str, value: &Rational) -> Result<Rational> {
        Ok(match self {
            Expr::Num(c) => c.clone(),
            Expr::Var { name, line, column } => {
                if name == var {
                    value.clone()
                } else {
                    return Err(Error::UnknownVariable {
                        name: name.clone(),
                        line: *line,
                        column: *column,
                    });
                }
            }
            Expr::Neg(a) => -a.evaluate_at(var, value)?,
            Expr::Add(a, b) => a.evaluate_at(var, value)? + b.evaluate_at(var, value)?,
            Expr::Sub(a, b) => a.evaluate_at(var, value)? - b.evaluate_at(var, value)?,
            Expr::Mul(a, b) => a.evaluate_at(var, value)? * b.evaluate_at(var, value)?,
            Expr::Div(a, b) => {
                let den = b.evaluate_at(var, value)?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero {
                        context: b.to_string(),
                    });
                }
                a.evaluate_at(var, value)? / den
            }
            Expr::Pow(a, n) => {
                let base = a.evaluate_at(var, value)?;
                if *n < 0 && base.is_zero() {
                    return Err(Error::DivisionByZero {
                        context: self.to_string(),
                    });
                }
                if *n == 0 {
                    Rational::one()
                } else {
                    num_traits::pow::Pow::pow(&base, *n as i32)
                }
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(c) if !c.denom().is_one() => 2,
            Expr::Num(c) if c < &Rational::zero() => 3,
            Expr::Num(_) | Expr::Var { .. } => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, min_prec: u8) -> fmt::Result {
    if child.precedence() < min_prec {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => f.write_str(&format_rational(c)),
            Expr::Var { name, .. } => f.write_str(name),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a, 4)
            }
            Expr::Add(a, b) => {
                write_child(f, a, 1)?;
                f.write_str(" + ")?;
                write_child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write_child(f, a, 1)?;
                f.write_str(" - ")?;
                write_child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_child(f, a, 2)?;
                f.write_str("*")?;
                write_child(f, b, 3)
            }
            Expr::Div(a, b) => {
                write_child(f, a, 2)?;
                f.write_str("/")?;
                write_child(f, b, 4)
            }
            Expr::Pow(a, n) => {
                write_child(f, a, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}
