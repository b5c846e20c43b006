//! Class expressions such as `-2K + (L - E0 - E)` or `3*L - 2E1'`.
//!
//! Grammar:
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := [uint ['*']] atom | '0'
//! atom   := symbol | '(' expr ')'
//! symbol := [A-Za-z_][A-Za-z0-9_]* '\''*
//! ```
//!
//! Symbols resolve to `K` (the canonical class), a basis name, or whatever the
//! caller's resolver returns (curve names in surface files).

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceLattice};

const MAX_DEPTH: usize = 32;
pub const MAX_INPUT_LEN: usize = 4096;

pub type Resolver<'a> = dyn Fn(&str) -> Option<DivisorClass> + 'a;

pub fn parse(text: &str, lattice: &SurfaceLattice, resolve: &Resolver<'_>) -> Result<DivisorClass> {
    if text.len() > MAX_INPUT_LEN {
        return Err(Error::Parse {
            offset: MAX_INPUT_LEN,
            message: "expression too long".into(),
        });
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        lattice,
        resolve,
    };
    let value = p.expr(0)?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a, 'r> {
    src: &'a [u8],
    pos: usize,
    lattice: &'a SurfaceLattice,
    resolve: &'a Resolver<'r>,
}

impl Parser<'_, '_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
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

    fn expr(&mut self, depth: usize) -> Result<DivisorClass> {
        if depth > MAX_DEPTH {
            return Err(self.error("expression nested too deeply"));
        }
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term(depth)?.checked_scale(sign)?;
        loop {
            let sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let t = self.term(depth)?;
            acc = acc.checked_add(&t.checked_scale(sign)?)?;
        }
    }

    fn term(&mut self, depth: usize) -> Result<DivisorClass> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(self.uint()?),
            _ => None,
        };
        if coeff.is_some() && self.peek() == Some(b'*') {
            self.pos += 1;
        }
        match (coeff, self.peek()) {
            (Some(0), c) if !starts_atom(c) => Ok(self.lattice.zero()),
            (Some(_), c) if !starts_atom(c) => Err(self.error("integer constant is not a class")),
            (coeff, _) => self.atom(depth)?.checked_scale(coeff.unwrap_or(1)),
        }
    }

    fn uint(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        // the slice is ASCII digits only
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse::<i64>().map_err(|_| Error::Parse {
            offset: start,
            message: "coefficient out of range".into(),
        })
    }

    fn atom(&mut self, depth: usize) -> Result<DivisorClass> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr(depth + 1)?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                while self.pos < self.src.len() && self.src[self.pos] == b'\'' {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii symbol");
                self.symbol(name).ok_or_else(|| Error::UnknownName(name.to_string()))
            }
            _ => Err(self.error("expected a symbol, `(` or coefficient")),
        }
    }

    fn symbol(&self, name: &str) -> Option<DivisorClass> {
        if name == "K" {
            return Some(self.lattice.canonical().clone());
        }
        if let Some(i) = self.lattice.basis_index(name) {
            return Some(self.lattice.basis_class(i));
        }
        (self.resolve)(name)
    }
}

fn starts_atom(c: Option<u8>) -> bool {
    matches!(c, Some(c) if c == b'(' || c == b'_' || c.is_ascii_alphabetic())
}
