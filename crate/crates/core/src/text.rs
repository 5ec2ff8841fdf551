//! Small byte cursor shared by the hand-written parsers.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::Rational;

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// Consumes `tok` if it comes next (after whitespace). Whitespace inside
    /// `tok` is not allowed in the input except between its characters when
    /// `tok` is punctuation.
    pub fn eat(&mut self, tok: &str) -> bool {
        let save = self.pos;
        for &b in tok.as_bytes() {
            if self.peek() != Some(b) {
                self.pos = save;
                return false;
            }
            self.pos += 1;
        }
        true
    }

    /// Consumes a keyword: `word` not followed by an identifier character.
    pub fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let end = self.pos + word.len();
        if self.src.len() >= end
            && &self.src[self.pos..end] == word.as_bytes()
            && !self
                .src
                .get(end)
                .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos = end;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{tok}`")))
        }
    }

    pub fn error(&mut self, message: impl Into<String>) -> Error {
        self.skip_ws();
        Error::parse(self.pos, message)
    }

    pub fn peek_digit(&mut self) -> bool {
        self.peek().is_some_and(|b| b.is_ascii_digit())
    }

    pub fn uint_big(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    pub fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let n = self.uint_big()?;
        u64::try_from(n).map_err(|_| Error::parse(start, "integer out of range"))
    }

    /// Optionally signed machine integer.
    pub fn int(&mut self) -> Result<i64> {
        let neg = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        self.skip_ws();
        let start = self.pos;
        let n = self.uint_big()?;
        let n = if neg { -n } else { n };
        i64::try_from(n).map_err(|_| Error::parse(start, "integer out of range"))
    }

    /// `INT` or `INT '/' INT`, unsigned.
    pub fn rational(&mut self) -> Result<Rational> {
        let num = self.uint_big()?;
        if self.eat("/") {
            self.skip_ws();
            let at = self.pos;
            let den = self.uint_big()?;
            if den == BigInt::from(0) {
                return Err(Error::parse(at, "zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    /// `{a, b, c}` of unsigned integers; empty braces allowed.
    pub fn uint_set(&mut self) -> Result<Vec<u64>> {
        self.expect("{")?;
        let mut out = Vec::new();
        if self.eat("}") {
            return Ok(out);
        }
        loop {
            out.push(self.uint()?);
            if self.eat("}") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}
