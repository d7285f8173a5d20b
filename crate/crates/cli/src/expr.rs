//! Arithmetic expressions in one variable for user-defined problems.
//!
//! Grammar (usual precedence, `^` binds tightest and associates right):
//!
//! ```text
//! expr   := term  { (+|-) term }
//! term   := unary { (*|/) unary }
//! unary  := '-' unary | power
//! power  := atom [ '^' unary ]
//! atom   := number | 'x' | exp|sin|cos|abs '(' expr ')' | '(' expr ')'
//! ```

use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Abs(Box<Expr>),
}

impl Expr {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Var => x,
            Expr::Neg(a) => -a.eval(x),
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Div(a, b) => a.eval(x) / b.eval(x),
            Expr::Pow(a, b) => a.eval(x).powf(b.eval(x)),
            Expr::Exp(a) => a.eval(x).exp(),
            Expr::Sin(a) => a.eval(x).sin(),
            Expr::Cos(a) => a.eval(x).cos(),
            Expr::Abs(a) => a.eval(x).abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}", self.message, self.pos)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1
            }
            '-' => {
                tokens.push((i, Token::Minus));
                i += 1
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1
            }
            '/' => {
                tokens.push((i, Token::Slash));
                i += 1
            }
            '^' => {
                tokens.push((i, Token::Caret));
                i += 1
            }
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && matches!(bytes[i] as char, '0'..='9' | '.') {
                    i += 1;
                }
                // exponent suffix like 1e-3
                if i < bytes.len()
                    && matches!(bytes[i] as char, 'e' | 'E')
                    && i + 1 < bytes.len()
                    && matches!(bytes[i + 1] as char, '0'..='9' | '+' | '-')
                {
                    i += 2;
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &src[start..i];
                let value = text.parse::<f64>().map_err(|_| ParseError {
                    pos: start,
                    message: format!("malformed number `{text}`"),
                })?;
                tokens.push((start, Token::Num(value)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && matches!(bytes[i] as char, 'a'..='z' | 'A'..='Z' | '0'..='9' | '_')
                {
                    i += 1;
                }
                tokens.push((start, Token::Ident(src[start..i].to_string())));
            }
            other => {
                return Err(ParseError {
                    pos: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.len)
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        match self.next() {
            Some((_, Token::RParen)) => Ok(()),
            Some((p, t)) => Err(ParseError {
                pos: p,
                message: format!("expected `)`, found {t:?}"),
            }),
            None => Err(ParseError {
                pos: self.len,
                message: "expected `)`".into(),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.pos += 1;
            let exponent = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.next() {
            Some((_, Token::Num(v))) => Ok(Expr::Num(v)),
            Some((_, Token::LParen)) => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Some((p, Token::Ident(name))) => match name.as_str() {
                "x" => Ok(Expr::Var),
                "exp" | "sin" | "cos" | "abs" => {
                    match self.next() {
                        Some((_, Token::LParen)) => {}
                        _ => {
                            return Err(ParseError {
                                pos: p,
                                message: format!("function `{name}` needs parentheses"),
                            })
                        }
                    }
                    let arg = Box::new(self.expr()?);
                    self.expect_rparen()?;
                    Ok(match name.as_str() {
                        "exp" => Expr::Exp(arg),
                        "sin" => Expr::Sin(arg),
                        "cos" => Expr::Cos(arg),
                        _ => Expr::Abs(arg),
                    })
                }
                other => Err(ParseError {
                    pos: p,
                    message: format!(
                        "unknown identifier `{other}` (expected x, exp, sin, cos, abs)"
                    ),
                }),
            },
            Some((p, t)) => Err(ParseError {
                pos: p,
                message: format!("unexpected token {t:?}"),
            }),
            None => Err(ParseError {
                pos: self.len,
                message: "unexpected end of expression".into(),
            }),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(src)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        len: src.len(),
    };
    let expr = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(ParseError {
            pos: parser.here(),
            message: "trailing input".into(),
        });
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(src: &str, x: f64) -> f64 {
        parse(src).unwrap().eval(x)
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(eval("1+2*3", 0.0), 7.0);
        assert_eq!(eval("(1+2)*3", 0.0), 9.0);
        assert_eq!(eval("2^3^2", 0.0), 512.0); // right-assoc
        assert_eq!(eval("-2^2", 0.0), -4.0); // -(2^2)
        assert_eq!(eval("6/3/2", 0.0), 1.0); // left-assoc
        assert_eq!(eval("2^-1", 0.0), 0.5);
    }

    #[test]
    fn variable_and_functions() {
        assert!((eval("16*exp(4*x)", 0.25) - 16.0 * 1.0f64.exp()).abs() < 1e-15);
        assert!((eval("sin(x)^2 + cos(x)^2", 0.7) - 1.0).abs() < 1e-15);
        assert_eq!(eval("abs(-x)", 3.0), 3.0);
        assert_eq!(eval("3/0.001", 0.0), 3000.0);
    }

    #[test]
    fn scientific_numbers() {
        assert_eq!(eval("1e-3", 0.0), 1e-3);
        assert_eq!(eval("2.5E2", 0.0), 250.0);
        assert_eq!(eval("1e2 - x", 1.0), 99.0);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse("1 +").is_err());
        assert!(parse("foo(x)").is_err());
        assert!(parse("sin x").is_err());
        assert!(parse("(1+2").is_err());
        assert!(parse("1 2").is_err());
        assert!(parse("y + 1").is_err());
        assert!(parse("1..2").is_err());
    }

    #[test]
    fn error_positions_point_at_offender() {
        let err = parse("1 + foo").unwrap_err();
        assert_eq!(err.pos, 4);
    }
}
