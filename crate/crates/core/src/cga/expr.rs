//! Tiny expression evaluator for inspecting multivectors from the CLI.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '^' | '|') unary)*      geometric, outer, inner
//! unary  := '-' unary | atom
//! atom   := number | basis | call | '(' expr ')'
//! basis  := e1 | e2 | e3 | e0 | einf | ep | em | Ic | Icinv
//! call   := point(x,y,z) | sphere(x,y,z,r) | dual(A) | undual(A) | rev(A) | grade(A,k)
//! ```
//!
//! The three binary products share one precedence level and associate left.

use super::entity::{embed_point, make_sphere};
use super::multivector::Multivector;
use super::CgaError;
use crate::Vec3;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>, CgaError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value = text
                .parse::<f64>()
                .map_err(|_| CgaError::Parse(format!("bad number '{text}'")))?;
            tokens.push(Token::Num(value));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*^|(),".contains(c) {
            tokens.push(Token::Op(c));
            i += 1;
        } else {
            return Err(CgaError::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, op: char) -> Result<(), CgaError> {
        match self.next() {
            Some(Token::Op(c)) if c == op => Ok(()),
            other => Err(CgaError::Parse(format!("expected '{op}', found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Multivector, CgaError> {
        let mut acc = self.term()?;
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Multivector, CgaError> {
        let mut acc = self.unary()?;
        while let Some(Token::Op(c @ ('*' | '^' | '|'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = match c {
                '*' => acc * rhs,
                '^' => acc ^ rhs,
                _ => acc | rhs,
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Multivector, CgaError> {
        if let Some(Token::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn args(&mut self) -> Result<Vec<Multivector>, CgaError> {
        self.expect('(')?;
        let mut args = vec![self.expr()?];
        while let Some(Token::Op(',')) = self.peek() {
            self.pos += 1;
            args.push(self.expr()?);
        }
        self.expect(')')?;
        Ok(args)
    }

    fn scalar_args(&mut self, name: &str, n: usize) -> Result<Vec<f64>, CgaError> {
        let args = self.args()?;
        if args.len() != n {
            return Err(CgaError::Parse(format!("{name} takes {n} arguments")));
        }
        args.iter()
            .map(|a| {
                if a.grades(0.0).iter().all(|&g| g == 0) {
                    Ok(a.scalar_part())
                } else {
                    Err(CgaError::Parse(format!("{name} expects scalar arguments")))
                }
            })
            .collect()
    }

    fn unary_call(&mut self, name: &str) -> Result<Multivector, CgaError> {
        let args = self.args()?;
        match args.as_slice() {
            [a] => Ok(*a),
            _ => Err(CgaError::Parse(format!("{name} takes 1 argument"))),
        }
    }

    fn atom(&mut self) -> Result<Multivector, CgaError> {
        match self.next() {
            Some(Token::Num(v)) => Ok(Multivector::scalar(v)),
            Some(Token::Op('(')) => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "e1" => Ok(Multivector::e1()),
                "e2" => Ok(Multivector::e2()),
                "e3" => Ok(Multivector::e3()),
                "e0" => Ok(Multivector::e0()),
                "einf" => Ok(Multivector::einf()),
                "ep" => Ok(Multivector::e_plus()),
                "em" => Ok(Multivector::e_minus()),
                "Ic" => Ok(Multivector::conformal_pseudoscalar()),
                "Icinv" => Ok(Multivector::inverse_conformal_pseudoscalar()),
                "point" => {
                    let a = self.scalar_args("point", 3)?;
                    Ok(*embed_point(Vec3::new(a[0], a[1], a[2]))?.mv())
                }
                "sphere" => {
                    let a = self.scalar_args("sphere", 4)?;
                    let center = embed_point(Vec3::new(a[0], a[1], a[2]))?;
                    Ok(*make_sphere(&center, a[3])?.mv())
                }
                "dual" => Ok(self.unary_call("dual")?.dual()),
                "undual" => Ok(self.unary_call("undual")?.undual()),
                "rev" => Ok(self.unary_call("rev")?.reverse()),
                "grade" => {
                    let args = self.args()?;
                    match args.as_slice() {
                        [a, k] if k.grades(0.0).iter().all(|&g| g == 0) => {
                            let k = k.scalar_part();
                            if k.fract() != 0.0 || !(0.0..=5.0).contains(&k) {
                                return Err(CgaError::Parse("grade index must be 0..=5".into()));
                            }
                            Ok(a.grade_part(k as u32))
                        }
                        _ => Err(CgaError::Parse("grade takes (A, k)".into())),
                    }
                }
                other => Err(CgaError::Parse(format!("unknown name '{other}'"))),
            },
            other => Err(CgaError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn evaluate(src: &str) -> Result<Multivector, CgaError> {
    let mut parser = Parser {
        tokens: tokenize(src)?,
        pos: 0,
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(CgaError::Parse(format!("trailing input at token {}", parser.pos)));
    }
    Ok(value)
}

/// One `blade_name coefficient` line per nonzero blade, in display order.
/// A zero multivector prints as `1 0`.
pub fn format_terms(mv: &Multivector) -> String {
    let terms = mv.terms(1e-15);
    if terms.is_empty() {
        return "1 0\n".to_string();
    }
    terms.iter().map(|(name, c)| format!("{name} {c}\n")).collect()
}
