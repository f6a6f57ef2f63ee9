//! Recursive-descent parser for rational-function expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('+' | '-') factor | base ('^' uint)?
//! base   := var | 'i' | number 'i'? | '(' expr ')'
//! number := uint ('/' uint)?
//! ```
//!
//! `1/2i` reads as `(1/2)·i`. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{GaussianRational, RatFunc};

/// Default name of the spectral variable in text files.
pub const DEFAULT_VAR: &str = "l";

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    var: &'a str,
    line: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = col0 + k;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            let n = digits.parse::<BigInt>().expect("ascii digits");
            out.push(Token { tok: Tok::Num(n), col });
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') && !chars[k].is_ascii_digit() {
                k += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..k].iter().collect()), col });
        } else if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            k += 1;
        } else {
            return Err(Error::Parse { line, column: col, message: format!("unexpected character {c:?}") });
        }
    }
    out.push(Token { tok: Tok::End, col: col0 + chars.len() });
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let k = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[k].tok
    }

    fn col(&self) -> usize {
        self.toks[self.pos].col
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, column: self.col(), message: message.into() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if *self.peek() == Tok::Sym('/') {
                let (line, column) = (self.line, self.col());
                self.bump();
                let d = self.factor()?;
                if d.is_zero() {
                    return Err(Error::Domain(format!(
                        "division by an expression that is identically zero (line {line}, column {column})"
                    )));
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        if self.eat('+') {
            return self.factor();
        }
        let base = self.base()?;
        if self.eat('^') {
            let Tok::Num(e) = self.peek().clone() else {
                return self.err("expected a non-negative integer exponent after '^'");
            };
            self.bump();
            let e: u32 = match u32::try_from(e) {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => return self.err(format!("exponent exceeds {MAX_EXPONENT}")),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn imaginary_suffix(&mut self, value: GaussianRational) -> GaussianRational {
        if *self.peek() == Tok::Ident("i".into()) {
            self.bump();
            &value * &GaussianRational::i()
        } else {
            value
        }
    }

    fn base(&mut self) -> Result<RatFunc> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                let mut r = BigRational::from_integer(n);
                // A '/' directly followed by an integer belongs to the literal.
                if *self.peek() == Tok::Sym('/') {
                    if let Tok::Num(d) = self.peek_at(1).clone() {
                        if d.is_zero() {
                            self.bump();
                            return self.err("zero denominator in a rational literal");
                        }
                        self.bump();
                        self.bump();
                        r /= BigRational::from_integer(d);
                    }
                }
                let g = self.imaginary_suffix(GaussianRational::real(r));
                Ok(RatFunc::constant(g))
            }
            Tok::Ident(name) if name == self.var => {
                self.bump();
                Ok(RatFunc::lambda())
            }
            Tok::Ident(name) if name == "i" => {
                self.bump();
                Ok(RatFunc::constant(GaussianRational::i()))
            }
            Tok::Ident(name) => self.err(format!("unknown symbol {name:?}; the variable is {:?}", self.var)),
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Tok::Sym(c) => self.err(format!("unexpected {c:?}")),
            Tok::End => self.err("unexpected end of expression"),
        }
    }
}

/// Parses with the default variable `l`.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    parse_ratfunc_with(text, DEFAULT_VAR)
}

/// Parses with a custom variable name.
pub fn parse_ratfunc_with(text: &str, var: &str) -> Result<RatFunc> {
    parse_ratfunc_at(text, var, 1, 1)
}

/// Parses text that starts at the given 1-based line and column of a file,
/// so that error positions refer to the file.
pub fn parse_ratfunc_at(text: &str, var: &str, line: usize, column: usize) -> Result<RatFunc> {
    if var == "i" || var.is_empty() || !var.chars().all(|c| c.is_alphabetic() || c == '_') {
        return Err(Error::Domain(format!("{var:?} cannot be used as the variable name")));
    }
    let toks = lex(text, line, column)?;
    let mut p = Parser { toks, pos: 0, var, line };
    let w = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(w)
}
