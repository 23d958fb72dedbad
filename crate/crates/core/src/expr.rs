//! `∪`/`∩` set expressions over the atoms of a frame.
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor ('&' factor)*
//! factor := atom | '(' expr ')' | '0'
//! atom   := 't' digits            (1 ..= n)
//! ```
//!
//! `∩`/`∪` are accepted for `&`/`|` and `θ` for `t`. There is no complement.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::lattice::{render_expr, to_dnf};
use crate::venn::{atom_mask, combine_masks, Frame, MaskOp, VennMask};

/// Parsed expression. Nested intersections (and unions) are flattened, so
/// `Intersect`/`Union` always have at least two children, none of the same kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Empty,
    Atom(usize),
    Intersect(Vec<Expr>),
    Union(Vec<Expr>),
}

impl Expr {
    pub fn intersect(children: Vec<Expr>) -> Expr {
        Self::nary(children, MaskOp::Intersect)
    }

    pub fn union(children: Vec<Expr>) -> Expr {
        Self::nary(children, MaskOp::Union)
    }

    fn nary(children: Vec<Expr>, op: MaskOp) -> Expr {
        let mut flat = Vec::with_capacity(children.len());
        for child in children {
            match (child, op) {
                (Expr::Intersect(inner), MaskOp::Intersect) | (Expr::Union(inner), MaskOp::Union) => {
                    flat.extend(inner)
                }
                (other, _) => flat.push(other),
            }
        }
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        match op {
            MaskOp::Intersect => Expr::Intersect(flat),
            MaskOp::Union => Expr::Union(flat),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Atom(u64),
    And,
    Or,
    Open,
    Close,
    Zero,
    End,
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next token and the byte offset where it starts.
    fn next(&mut self, expected: &[&'static str]) -> core::result::Result<(Token, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut chars = self.text[start..].chars();
        let Some(c) = chars.next() else {
            return Ok((Token::End, start));
        };
        self.pos += c.len_utf8();
        let tok = match c {
            '&' | '∩' => Token::And,
            '|' | '∪' => Token::Or,
            '(' => Token::Open,
            ')' => Token::Close,
            '0' => Token::Zero,
            't' | 'θ' => {
                let digits: &str = {
                    let rest = &self.text[self.pos..];
                    let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                    &rest[..end]
                };
                if digits.is_empty() {
                    return Err(unexpected(self.text, self.pos, &["atom number"]));
                }
                self.pos += digits.len();
                // Saturate absurdly long numbers; they are out of range either way.
                Token::Atom(digits.parse().unwrap_or(u64::MAX))
            }
            _ => return Err(unexpected(self.text, start, expected)),
        };
        Ok((tok, start))
    }
}

fn unexpected(text: &str, offset: usize, expected: &[&'static str]) -> ParseError {
    let found = match text[offset..].chars().next() {
        None => "end of input".into(),
        Some(c) => alloc::format!("{c:?}"),
    };
    ParseError { offset, kind: ParseErrorKind::Unexpected { found, expected: expected.to_vec() } }
}

const FACTOR_START: &[&str] = &["atom", "'('", "'0'"];
const AFTER_FACTOR: &[&str] = &["'&'", "'|'", "')'", "end of input"];

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(Token, usize)>,
    n: u8,
}

impl<'a> Parser<'a> {
    fn peek(&mut self, expected: &[&'static str]) -> core::result::Result<(Token, usize), ParseError> {
        if let Some(t) = self.peeked {
            return Ok(t);
        }
        let t = self.lexer.next(expected)?;
        self.peeked = Some(t);
        Ok(t)
    }

    fn bump(&mut self) {
        self.peeked = None;
    }

    fn expr(&mut self) -> core::result::Result<Expr, ParseError> {
        let mut terms = alloc::vec![self.term()?];
        while let (Token::Or, _) = self.peek(AFTER_FACTOR)? {
            self.bump();
            terms.push(self.term()?);
        }
        Ok(Expr::union(terms))
    }

    fn term(&mut self) -> core::result::Result<Expr, ParseError> {
        let mut factors = alloc::vec![self.factor()?];
        while let (Token::And, _) = self.peek(AFTER_FACTOR)? {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(Expr::intersect(factors))
    }

    fn factor(&mut self) -> core::result::Result<Expr, ParseError> {
        let (tok, offset) = self.peek(FACTOR_START)?;
        self.bump();
        match tok {
            Token::Atom(k) => {
                if k == 0 || k > self.n as u64 {
                    return Err(ParseError {
                        offset,
                        kind: ParseErrorKind::AtomOutOfRange { atom: k, n: self.n },
                    });
                }
                Ok(Expr::Atom(k as usize))
            }
            Token::Zero => Ok(Expr::Empty),
            Token::Open => {
                let inner = self.expr()?;
                match self.peek(&["')'"])? {
                    (Token::Close, _) => {
                        self.bump();
                        Ok(inner)
                    }
                    (_, at) => Err(unexpected(self.lexer.text, at, &["'&'", "'|'", "')'"])),
                }
            }
            _ => Err(unexpected(self.lexer.text, offset, FACTOR_START)),
        }
    }
}

/// Parses `text` against a frame; atoms must lie in `1..=n`.
pub fn parse(text: &str, frame: Frame) -> Result<Expr> {
    let mut p = Parser { lexer: Lexer { text, pos: 0 }, peeked: None, n: frame.n() };
    let e = p.expr()?;
    match p.peek(AFTER_FACTOR)? {
        (Token::End, _) => Ok(e),
        (_, at) => Err(unexpected(text, at, &["'&'", "'|'", "end of input"]).into()),
    }
}

/// Folds the expression into its region mask.
pub fn eval_mask(ast: &Expr, frame: Frame) -> Result<VennMask> {
    match ast {
        Expr::Empty => Ok(VennMask::zero(frame)),
        Expr::Atom(i) => atom_mask(*i, frame),
        Expr::Intersect(children) | Expr::Union(children) => {
            let op = if matches!(ast, Expr::Intersect(_)) { MaskOp::Intersect } else { MaskOp::Union };
            let mut iter = children.iter();
            let first = match iter.next() {
                Some(c) => eval_mask(c, frame)?,
                None => return Err(Error::EmptyInput),
            };
            iter.try_fold(first, |acc, c| combine_masks(&acc, &eval_mask(c, frame)?, op))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub mask: VennMask,
    pub dnf: String,
}

/// Mask and minimal DNF of an expression.
pub fn canonicalize(text: &str, frame: Frame) -> Result<Canonical> {
    let mask = eval_mask(&parse(text, frame)?, frame)?;
    let dnf = render_expr(&to_dnf(&mask)?);
    Ok(Canonical { mask, dnf })
}

/// Whether two expressions denote the same element of `D^Θ`.
pub fn equivalent(e1: &str, e2: &str, frame: Frame) -> Result<bool> {
    Ok(eval_mask(&parse(e1, frame)?, frame)? == eval_mask(&parse(e2, frame)?, frame)?)
}
