//! Group expressions: `0`, `Z`, `Z/d`, `Z^r`, joined by `+`.

use num_bigint::BigInt;
use num_traits::One;

use crate::abelian::CanonicalGroup;
use crate::error::{Error, Result};

/// One summand of a group expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupTerm {
    Zero,
    Free(usize),
    Cyclic(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupExpr {
    pub terms: Vec<GroupTerm>,
}

impl GroupExpr {
    pub fn canonical(&self) -> CanonicalGroup {
        let mut rank = 0;
        let mut orders = Vec::new();
        for t in &self.terms {
            match t {
                GroupTerm::Zero => {}
                GroupTerm::Free(r) => rank += r,
                GroupTerm::Cyclic(d) => orders.push(d.clone()),
            }
        }
        CanonicalGroup::from_orders(rank, &orders)
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn term(&mut self) -> Result<GroupTerm> {
        self.skip_ws();
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(GroupTerm::Zero)
            }
            Some('Z') => {
                self.pos += 1;
                if self.eat('/') {
                    let at = self.pos;
                    let d = self.number()?;
                    if d < BigInt::from(2) {
                        return Err(Error::Parse { offset: at, message: format!("cyclic order must be ≥ 2, got {d}") });
                    }
                    Ok(GroupTerm::Cyclic(d))
                } else if self.eat('^') {
                    let at = self.pos;
                    let r = self.number()?;
                    let r = usize::try_from(r).map_err(|_| Error::Parse { offset: at, message: "rank too large".into() })?;
                    Ok(GroupTerm::Free(r))
                } else {
                    Ok(GroupTerm::Free(1))
                }
            }
            Some(c) => self.err(format!("unexpected '{c}', expected 0, Z, Z/d or Z^r")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_group_ast(s: &str) -> Result<GroupExpr> {
    let mut lx = Lexer { src: s, pos: 0 };
    let mut terms = vec![lx.term()?];
    while lx.eat('+') {
        terms.push(lx.term()?);
    }
    lx.skip_ws();
    if lx.pos < s.len() {
        return lx.err("trailing input");
    }
    Ok(GroupExpr { terms })
}

/// Parses and canonicalizes.
pub fn parse_group_expr(s: &str) -> Result<CanonicalGroup> {
    parse_group_ast(s).map(|e| e.canonical())
}

/// Inverse of [`parse_group_expr`] on canonical groups; `Z/1` never appears.
pub fn format_group(g: &CanonicalGroup) -> String {
    debug_assert!(g.torsion.iter().all(|d| !d.is_one()));
    g.to_string()
}
