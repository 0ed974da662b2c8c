// expr := or
// or   := and ('|' and)*
// and  := atom ('&' atom)*
// atom := ['!'] 'x' digits | '(' expr ')'

use super::{Formula, Gate, Literal};
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let f = p.or()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while self.eat(b'|') {
            let rhs = self.and()?;
            f = Formula::Node(Gate::Or, Box::new(f), Box::new(rhs));
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.atom()?;
        while self.eat(b'&') {
            let rhs = self.atom()?;
            f = Formula::Node(Gate::And, Box::new(f), Box::new(rhs));
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.or()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(f)
            }
            Some(b'!') => {
                self.pos += 1;
                self.skip_ws();
                let var = self.variable()?;
                Ok(Formula::Lit(Literal::neg(var)))
            }
            Some(b'x') => Ok(Formula::Lit(Literal::pos(self.variable()?))),
            Some(c) => Err(self.error(format!("expected a literal or `(`, found `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn variable(&mut self) -> Result<usize> {
        if self.src.get(self.pos) != Some(&b'x') {
            return Err(self.error("expected `x<index>`"));
        }
        let start = self.pos;
        self.pos += 1;
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(Error::Parse { pos: start, msg: "variable needs an index".into() });
        }
        let digits = std::str::from_utf8(&self.src[digits_start..self.pos]).expect("ascii digits");
        match digits.parse::<usize>() {
            Ok(0) => Err(Error::Parse { pos: start, msg: "variables are 1-indexed; x0 is invalid".into() }),
            Ok(v) => Ok(v),
            Err(_) => Err(Error::Parse { pos: start, msg: format!("variable index `{digits}` too large") }),
        }
    }
}
