//! Text syntax shared by all three term flavors.
//!
//! ```text
//! sum    := prod ('+' prod)*
//! prod   := factor ('*'? factor)*
//! factor := atom ('^' ('-1' | k))*
//! atom   := var | '(' sum ')'
//! var    := ident | 'x[' i (',' i)* ']'
//! ```
//! Juxtaposition and `*` both denote the product; `^-1` is formal
//! inversion; `^k` repeats the factor `k >= 1` times.

use std::str::FromStr;

use super::{Flavor, Literal, SemiringTerm, Term, UnaryTerm, VariableId, Word};
use crate::error::{Error, Result};

/// Syntax tree before a flavor is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(VariableId),
    Times(Box<Expr>, Box<Expr>),
    Plus(Box<Expr>, Box<Expr>),
    Inv(Box<Expr>),
    Pow(Box<Expr>, usize),
}

impl Expr {
    fn has_plus(&self) -> bool {
        match self {
            Expr::Var(_) => false,
            Expr::Plus(..) => true,
            Expr::Times(a, b) => a.has_plus() || b.has_plus(),
            Expr::Inv(a) | Expr::Pow(a, _) => a.has_plus(),
        }
    }

    fn has_inv(&self) -> bool {
        match self {
            Expr::Var(_) => false,
            Expr::Inv(_) => true,
            Expr::Times(a, b) | Expr::Plus(a, b) => a.has_inv() || b.has_inv(),
            Expr::Pow(a, _) => a.has_inv(),
        }
    }

    /// The poorest flavor that can hold this expression.
    pub fn flavor(&self) -> Result<Flavor> {
        match (self.has_plus(), self.has_inv()) {
            (true, true) => Err(Error::FlavorMismatch("a term cannot mix + with ^-1".into())),
            (true, false) => Ok(Flavor::Semiring),
            (false, true) => Ok(Flavor::Unary),
            (false, false) => Ok(Flavor::Word),
        }
    }

    pub fn to_unary(&self) -> Result<UnaryTerm> {
        Ok(match self {
            Expr::Var(v) => UnaryTerm::literal(Literal::plain(v.clone())),
            Expr::Times(a, b) => a.to_unary()?.concat(&b.to_unary()?),
            Expr::Inv(a) => a.to_unary()?.inverse(),
            Expr::Pow(a, k) => a.to_unary()?.pow(*k)?,
            Expr::Plus(..) => {
                return Err(Error::FlavorMismatch("+ in a unary term".into()));
            }
        })
    }

    pub fn to_word(&self) -> Result<Word> {
        if self.has_inv() {
            return Err(Error::FlavorMismatch("^-1 in a plain word".into()));
        }
        Ok(self.to_unary()?.to_word().expect("no inverses"))
    }

    pub fn to_semiring(&self) -> Result<SemiringTerm> {
        Ok(match self {
            Expr::Var(v) => SemiringTerm::Var(v.clone()),
            Expr::Times(a, b) => SemiringTerm::times(a.to_semiring()?, b.to_semiring()?),
            Expr::Plus(a, b) => SemiringTerm::plus(a.to_semiring()?, b.to_semiring()?),
            Expr::Pow(a, k) => a.to_semiring()?.pow(*k)?,
            Expr::Inv(_) => {
                return Err(Error::FlavorMismatch("^-1 in a semiring term".into()));
            }
        })
    }

    pub fn to_term(&self, flavor: Flavor) -> Result<Term> {
        Ok(match flavor {
            Flavor::Word => Term::Word(self.to_word()?),
            Flavor::Unary => Term::Unary(self.to_unary()?),
            Flavor::Semiring => Term::Semiring(self.to_semiring()?),
        })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .or_else(|_| self.err("number out of range"))
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut acc = self.prod()?;
        while self.eat(b'+') {
            acc = Expr::Plus(Box::new(acc), Box::new(self.prod()?));
        }
        Ok(acc)
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == b'(' || c.is_ascii_alphabetic() || c == b'_')
    }

    fn prod(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') || self.starts_atom() {
                acc = Expr::Times(Box::new(acc), Box::new(self.factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut acc = self.atom()?;
        while self.eat(b'^') {
            if self.eat(b'-') {
                if self.number()? != 1 {
                    return self.err("only ^-1 is allowed as a negative exponent");
                }
                acc = Expr::Inv(Box::new(acc));
            } else {
                let k = self.number()?;
                if k == 0 {
                    return self.err("exponent must be positive");
                }
                acc = Expr::Pow(Box::new(acc), k);
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => Ok(Expr::Var(self.variable()?)),
            Some(c) => self.err(format!("unexpected {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn variable(&mut self) -> Result<VariableId> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        // the index bracket must follow the name directly
        if self.src.get(self.pos) != Some(&b'[') {
            return Ok(VariableId::named(name));
        }
        if name != "x" {
            return self.err("only x takes an index tuple");
        }
        self.pos += 1;
        let mut ix = Vec::new();
        loop {
            let i = self.number()?;
            if i == 0 || i > u32::MAX as usize {
                return self.err("indices are positive");
            }
            ix.push(i as u32);
            if self.eat(b']') {
                return Ok(VariableId::Indexed(ix));
            }
            if !self.eat(b',') {
                return self.err("expected ',' or ']'");
            }
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let e = p.sum()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses a term in the poorest flavor that holds it.
pub fn parse_term(s: &str) -> Result<Term> {
    let e = parse_expr(s)?;
    e.to_term(e.flavor()?)
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)?.to_word()
    }
}

impl FromStr for UnaryTerm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)?.to_unary()
    }
}

impl FromStr for SemiringTerm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)?.to_semiring()
    }
}

impl FromStr for Term {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flavors_are_inferred() {
        assert_eq!(parse_term("x x").unwrap().flavor(), Flavor::Word);
        assert_eq!(parse_term("x y^-1").unwrap().flavor(), Flavor::Unary);
        assert_eq!(
            parse_term("(x*y+y*x)^2").unwrap().flavor(),
            Flavor::Semiring
        );
        assert!(matches!(
            parse_term("x^-1 + y"),
            Err(Error::FlavorMismatch(_))
        ));
    }

    #[test]
    fn powers_and_inverses() {
        let u: UnaryTerm = "(x y)^-1 z^2".parse().unwrap();
        assert_eq!(u.to_string(), "y^-1 x^-1 z z");
        let w: Word = "(x[1] x[2])^2".parse().unwrap();
        assert_eq!(w.to_string(), "x[1] x[2] x[1] x[2]");
        assert_eq!("x^-1^-1".parse::<UnaryTerm>().unwrap().to_string(), "x");
    }

    #[test]
    fn semiring_power_expands_to_products() {
        let t: SemiringTerm = "x^3".parse().unwrap();
        assert_eq!(t.to_string(), "x * x * x");
        let s: SemiringTerm = "(x*y+y*x)^2".parse().unwrap();
        assert_eq!(s.to_string(), "(x * y + y * x) * (x * y + y * x)");
        assert_eq!(s.to_string().parse::<SemiringTerm>().unwrap(), s);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            "x )".parse::<Word>().unwrap_err(),
            Error::Parse {
                pos: 2,
                msg: "trailing input".into()
            }
        );
        assert!("x^0".parse::<Word>().is_err());
        assert!("x^-2".parse::<UnaryTerm>().is_err());
        assert!("y[1]".parse::<Word>().is_err());
        assert!("x[0]".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
        assert!("x y^-1".parse::<Word>().is_err());
    }
}
