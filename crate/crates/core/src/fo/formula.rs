use std::fmt;

use crate::error::{Error, Result};

/// First-order formula over named relations, equality and the built-in
/// strict length order `len_lt`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String, Vec<String>),
    Eq(String, String),
    LenLt(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(body))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(body))
    }

    pub fn atom(name: &str, vars: &[&str]) -> Formula {
        Formula::Atom(
            name.to_string(),
            vars.iter().map(|v| v.to_string()).collect(),
        )
    }

    /// Free variables in order of first textual occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            let mut note = |v: &String, bound: &Vec<String>| {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            };
            match f {
                Formula::Atom(_, vs) => vs.iter().for_each(|v| note(v, bound)),
                Formula::Eq(a, b) | Formula::LenLt(a, b) => {
                    note(a, bound);
                    note(b, bound);
                }
                Formula::Not(g) => walk(g, bound, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                Formula::Exists(v, g) | Formula::Forall(v, g) => {
                    bound.push(v.clone());
                    walk(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Nesting depth of quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::LenLt(..) => 0,
            Formula::Not(g) => g.quantifier_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Exists(_, g) | Formula::Forall(_, g) => 1 + g.quantifier_depth(),
        }
    }
}

/// Prints fully parenthesized text that [`parse_formula`] reads back.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name, vs) => write!(f, "{name}({})", vs.join(",")),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::LenLt(a, b) => write!(f, "len_lt({a},{b})"),
            Formula::Not(g) => write!(f, "!({g})"),
            Formula::And(a, b) => write!(f, "({a}) & ({b})"),
            Formula::Or(a, b) => write!(f, "({a}) | ({b})"),
            Formula::Implies(a, b) => write!(f, "({a}) -> ({b})"),
            Formula::Exists(v, g) => write!(f, "E {v}. ({g})"),
            Formula::Forall(v, g) => write!(f, "A {v}. ({g})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Equals,
    Bang,
    Amp,
    Bar,
    Arrow,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'=' => Tok::Equals,
            b'!' => Tok::Bang,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric()
                        || matches!(bytes[i + 1], b'_' | b'\''))
                {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                return Err(Error::SyntaxError {
                    position: start,
                    message: format!(
                        "unexpected character `{}`",
                        text[start..].chars().next().unwrap()
                    ),
                })
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
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

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].1
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::SyntaxError {
            position: self.toks[self.pos].0,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.pos += 1;
                Ok(name)
            }
            _ => self.error("expected a variable"),
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.pos += 1;
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.pos += 1;
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.pos += 1;
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(q) if (q == "E" || q == "A") && matches!(self.peek_at(1), Tok::Ident(_)) => {
                self.pos += 1;
                let v = self.ident()?;
                self.expect(Tok::Dot, "`.` after the quantified variable")?;
                // the body runs to the end of the enclosing parenthesis
                let body = self.implication()?;
                Ok(if q == "E" {
                    Formula::Exists(v, Box::new(body))
                } else {
                    Formula::Forall(v, Box::new(body))
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::LParen => {
                self.pos += 1;
                let f = self.implication()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                match self.peek() {
                    Tok::LParen => {
                        self.pos += 1;
                        let mut args = vec![self.ident()?];
                        while *self.peek() == Tok::Comma {
                            self.pos += 1;
                            args.push(self.ident()?);
                        }
                        self.expect(Tok::RParen, "`)` closing the argument list")?;
                        if name == "len_lt" {
                            if args.len() != 2 {
                                self.pos -= 1;
                                return self.error("len_lt takes two arguments");
                            }
                            let b = args.pop().unwrap();
                            let a = args.pop().unwrap();
                            return Ok(Formula::LenLt(a, b));
                        }
                        Ok(Formula::Atom(name, args))
                    }
                    Tok::Equals => {
                        self.pos += 1;
                        let rhs = self.ident()?;
                        Ok(Formula::Eq(name, rhs))
                    }
                    _ => self.error("expected `(` or `=`"),
                }
            }
            Tok::End => self.error("unexpected end of formula"),
            _ => self.error("expected a formula"),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let f = p.implication()?;
    if *p.peek() != Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(f)
}
