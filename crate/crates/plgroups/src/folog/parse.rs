//! Text form of formulas: prefix `forall`/`exists` with comma-separated
//! variables and a body extending maximally to the right, infix connectives
//! `& | -> <->` with precedence `! > & > | > -> > <->`, atoms `R(t1, …, tk)`
//! and `t1 = t2`. Implication associates to the right, the other binary
//! connectives to the left. Errors carry a byte offset.

use crate::folog::syntax::{Formula, Term};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    LParen,
    RParen,
    Comma,
    Eq,
    And,
    Or,
    Arrow,
    Iff,
    Not,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '@'
}

fn ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '@' || c == '\''
}

fn lex(text: &str) -> Result<Lexer, Error> {
    let mut toks = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (at, c) = bytes[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                toks.push((at, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((at, Tok::RParen));
                i += 1;
            }
            ',' => {
                toks.push((at, Tok::Comma));
                i += 1;
            }
            '=' => {
                toks.push((at, Tok::Eq));
                i += 1;
            }
            '&' => {
                toks.push((at, Tok::And));
                i += 1;
            }
            '|' => {
                toks.push((at, Tok::Or));
                i += 1;
            }
            '!' | '~' => {
                toks.push((at, Tok::Not));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1).map(|p| p.1) == Some('>') {
                    toks.push((at, Tok::Arrow));
                    i += 2;
                } else {
                    return Err(Error::Parse {
                        pos: at,
                        msg: "expected ->".into(),
                    });
                }
            }
            '<' => {
                if bytes.get(i + 1).map(|p| p.1) == Some('-')
                    && bytes.get(i + 2).map(|p| p.1) == Some('>')
                {
                    toks.push((at, Tok::Iff));
                    i += 3;
                } else {
                    return Err(Error::Parse {
                        pos: at,
                        msg: "expected <->".into(),
                    });
                }
            }
            c if ident_start(c) => {
                let start = i;
                while i < bytes.len() && ident_continue(bytes[i].1) {
                    i += 1;
                }
                let name: String = bytes[start..i].iter().map(|p| p.1).collect();
                let tok = match name.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    _ => Tok::Ident(name),
                };
                toks.push((at, tok));
            }
            other => {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: text.len(),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), Error> {
        let at = self.at();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(Error::Parse {
                pos: at,
                msg: format!("expected {what}"),
            }),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, Error> {
        let at = self.at();
        match self.next() {
            Some(Tok::Ident(name)) => Ok(name),
            _ => Err(Error::Parse {
                pos: at,
                msg: format!("expected {what}"),
            }),
        }
    }
}

/// Parses a formula from its text form.
pub fn parse(text: &str) -> Result<Formula, Error> {
    let mut lx = lex(text)?;
    let f = parse_iff(&mut lx)?;
    if lx.peek().is_some() {
        return Err(Error::Parse {
            pos: lx.at(),
            msg: "trailing input".into(),
        });
    }
    Ok(f)
}

fn parse_iff(lx: &mut Lexer) -> Result<Formula, Error> {
    let mut acc = parse_implies(lx)?;
    while lx.peek() == Some(&Tok::Iff) {
        lx.next();
        let rhs = parse_implies(lx)?;
        acc = Formula::iff(acc, rhs);
    }
    Ok(acc)
}

fn parse_implies(lx: &mut Lexer) -> Result<Formula, Error> {
    let lhs = parse_or(lx)?;
    if lx.peek() == Some(&Tok::Arrow) {
        lx.next();
        let rhs = parse_implies(lx)?;
        return Ok(Formula::implies(lhs, rhs));
    }
    Ok(lhs)
}

fn parse_or(lx: &mut Lexer) -> Result<Formula, Error> {
    let mut acc = parse_and(lx)?;
    while lx.peek() == Some(&Tok::Or) {
        lx.next();
        let rhs = parse_and(lx)?;
        acc = Formula::or(acc, rhs);
    }
    Ok(acc)
}

fn parse_and(lx: &mut Lexer) -> Result<Formula, Error> {
    let mut acc = parse_unary(lx)?;
    while lx.peek() == Some(&Tok::And) {
        lx.next();
        let rhs = parse_unary(lx)?;
        acc = Formula::and(acc, rhs);
    }
    Ok(acc)
}

fn parse_unary(lx: &mut Lexer) -> Result<Formula, Error> {
    match lx.peek() {
        Some(Tok::Not) => {
            lx.next();
            Ok(Formula::negate(parse_unary(lx)?))
        }
        Some(Tok::Forall) | Some(Tok::Exists) => {
            let universal = lx.peek() == Some(&Tok::Forall);
            lx.next();
            let mut vars = vec![lx.ident("a variable after the quantifier")?];
            while lx.peek() == Some(&Tok::Comma) {
                lx.next();
                vars.push(lx.ident("a variable after ','")?);
            }
            // the body extends as far right as possible
            let body = Box::new(parse_iff(lx)?);
            Ok(if universal {
                Formula::Forall(vars, body)
            } else {
                Formula::Exists(vars, body)
            })
        }
        Some(Tok::LParen) => {
            lx.next();
            let inner = parse_iff(lx)?;
            lx.expect(Tok::RParen, ")")?;
            Ok(inner)
        }
        _ => {
            let at = lx.at();
            let lhs = parse_term(lx)?;
            if lx.peek() == Some(&Tok::Eq) {
                lx.next();
                let rhs = parse_term(lx)?;
                return Ok(Formula::Eq(lhs, rhs));
            }
            match lhs {
                Term::App(name, args) => Ok(Formula::Rel(name, args)),
                Term::Var(_) => Err(Error::Parse {
                    pos: at,
                    msg: "a bare variable is not a formula".into(),
                }),
            }
        }
    }
}

fn parse_term(lx: &mut Lexer) -> Result<Term, Error> {
    let name = lx.ident("a term")?;
    if lx.peek() == Some(&Tok::LParen) {
        lx.next();
        let mut args = Vec::new();
        if lx.peek() != Some(&Tok::RParen) {
            args.push(parse_term(lx)?);
            while lx.peek() == Some(&Tok::Comma) {
                lx.next();
                args.push(parse_term(lx)?);
            }
        }
        lx.expect(Tok::RParen, ")")?;
        Ok(Term::App(name, args))
    } else {
        Ok(Term::Var(name))
    }
}
