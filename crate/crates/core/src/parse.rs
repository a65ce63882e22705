//! Text syntax for differential polynomials and eventually periodic sets.
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := rational | 't' | 'x(' nat ',' nat ')' | '(' poly ')'
//! rational := ['-'] nat ('/' nat)?
//!
//! natset := '{' [nat (',' nat)*] '}' ['+' 'per(' nat ';' nat ';' [nat (',' nat)*] ')']
//! ```
//!
//! Whitespace is allowed between tokens. `per(T;p;r1,…)` denotes
//! `{ n ≥ T : n mod p ∈ {r1,…} }`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::diffalg::{DiffMonomial, DiffPolynomial, Var};
use crate::error::{Error, Result};
use crate::series::{Rational, TruncatedSeries};
use crate::tropical::NatSet;

/// Byte range of a node in the source text. Spans never take part in
/// equality, so re-parsed trees compare equal to the originals.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Root of a parsed expression.
pub type ParsedInput = PolyExpr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExpr {
    pub first: TermExpr,
    pub rest: Vec<(Sign, TermExpr)>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermExpr {
    /// Never empty.
    pub factors: Vec<FactorExpr>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorExpr {
    pub base: BaseExpr,
    pub exponent: Option<u64>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseExpr {
    Rational {
        negative: bool,
        numer: BigUint,
        denom: Option<BigUint>,
        span: Span,
    },
    T(Span),
    Var {
        i: u64,
        j: u64,
        span: Span,
    },
    Paren(Box<PolyExpr>, Span),
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.first)?;
        for (sign, term) in &self.rest {
            let op = match sign {
                Sign::Plus => '+',
                Sign::Minus => '-',
            };
            write!(f, " {op} {term}")?;
        }
        Ok(())
    }
}

impl fmt::Display for TermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl fmt::Display for FactorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if let Some(e) = self.exponent {
            write!(f, "^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Display for BaseExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseExpr::Rational {
                negative,
                numer,
                denom,
                ..
            } => {
                if *negative {
                    write!(f, "-")?;
                }
                write!(f, "{numer}")?;
                if let Some(d) = denom {
                    write!(f, "/{d}")?;
                }
                Ok(())
            }
            BaseExpr::T(_) => write!(f, "t"),
            BaseExpr::Var { i, j, .. } => write!(f, "x({i},{j})"),
            BaseExpr::Paren(p, _) => write!(f, "({p})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = line_col(self.src, pos);
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.error_at(
                self.pos,
                format!("expected '{}', found '{}'", c as char, got as char),
            )),
            None => Err(self.error_at(
                self.pos,
                format!("expected '{}', found end of input", c as char),
            )),
        }
    }

    fn expect_word(&mut self, word: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word) {
            self.pos += word.len();
            Ok(())
        } else {
            Err(self.error_at(self.pos, format!("expected '{word}'")))
        }
    }

    fn nat(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_at(start, "expected a natural number"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn small_nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let n = self.nat()?;
        u64::try_from(n).map_err(|_| self.error_at(start, "number too large"))
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error_at(self.pos, format!("unexpected '{}'", c as char))),
        }
    }

    fn poly(&mut self) -> Result<PolyExpr> {
        self.skip_ws();
        let start = self.pos;
        let first = self.term()?;
        let mut rest = Vec::new();
        loop {
            let sign = match self.peek() {
                Some(b'+') => Sign::Plus,
                Some(b'-') => Sign::Minus,
                _ => break,
            };
            self.pos += 1;
            rest.push((sign, self.term()?));
        }
        Ok(PolyExpr {
            first,
            rest,
            span: Span {
                start,
                end: self.pos,
            },
        })
    }

    fn term(&mut self) -> Result<TermExpr> {
        self.skip_ws();
        let start = self.pos;
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(TermExpr {
            factors,
            span: Span {
                start,
                end: self.pos,
            },
        })
    }

    fn factor(&mut self) -> Result<FactorExpr> {
        self.skip_ws();
        let start = self.pos;
        let base = self.base()?;
        let exponent = if self.peek() == Some(b'^') {
            self.pos += 1;
            Some(self.small_nat()?)
        } else {
            None
        };
        Ok(FactorExpr {
            base,
            exponent,
            span: Span {
                start,
                end: self.pos,
            },
        })
    }

    fn base(&mut self) -> Result<BaseExpr> {
        let start = self.pos;
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(BaseExpr::T(Span {
                    start,
                    end: self.pos,
                }))
            }
            Some(b'x') => {
                self.pos += 1;
                self.expect(b'(')?;
                let i = self.small_nat()?;
                self.expect(b',')?;
                let j = self.small_nat()?;
                self.expect(b')')?;
                Ok(BaseExpr::Var {
                    i,
                    j,
                    span: Span {
                        start,
                        end: self.pos,
                    },
                })
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                self.expect(b')')?;
                Ok(BaseExpr::Paren(
                    Box::new(inner),
                    Span {
                        start,
                        end: self.pos,
                    },
                ))
            }
            Some(b'-') | Some(b'0'..=b'9') => {
                let negative = self.bytes[self.pos] == b'-';
                if negative {
                    self.pos += 1;
                    if !self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        return Err(self.error_at(self.pos, "expected digits after '-'"));
                    }
                }
                let numer = self.nat()?;
                let denom = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.nat()?;
                    if d.is_zero() {
                        return Err(self.error_at(at, "zero denominator"));
                    }
                    Some(d)
                } else {
                    None
                };
                Ok(BaseExpr::Rational {
                    negative,
                    numer,
                    denom,
                    span: Span {
                        start,
                        end: self.pos,
                    },
                })
            }
            Some(c) => Err(self.error_at(self.pos, format!("unexpected '{}'", c as char))),
            None => Err(self.error_at(self.pos, "unexpected end of input")),
        }
    }

    fn nat_list(&mut self, close: u8) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        out.push(self.small_nat()?);
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.small_nat()?);
        }
        Ok(out)
    }

    fn natset(&mut self) -> Result<NatSet> {
        self.expect(b'{')?;
        let finite = self.nat_list(b'}')?;
        self.expect(b'}')?;
        if self.peek() != Some(b'+') {
            self.finish()?;
            return Ok(NatSet::finite(finite));
        }
        self.pos += 1;
        self.expect_word("per")?;
        self.expect(b'(')?;
        let at = self.pos;
        let threshold = self.small_nat()?;
        self.expect(b';')?;
        let period = self.small_nat()?;
        self.expect(b';')?;
        let residues = self.nat_list(b')')?;
        self.expect(b')')?;
        self.finish()?;
        NatSet::new(finite, threshold, period, residues)
            .map_err(|e| self.error_at(at, e.to_string()))
    }
}

fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Parse an expression into its syntax tree.
pub fn parse_expr(text: &str) -> Result<ParsedInput> {
    let mut p = Parser::new(text);
    let tree = p.poly()?;
    p.finish()?;
    Ok(tree)
}

impl PolyExpr {
    /// Largest unknown index `i` among the `x(i,j)`.
    pub fn max_var_index(&self) -> u64 {
        self.terms()
            .flat_map(|t| t.factors.iter())
            .map(|f| match &f.base {
                BaseExpr::Var { i, .. } => *i,
                BaseExpr::Paren(inner, _) => inner.max_var_index(),
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    fn terms(&self) -> impl Iterator<Item = &TermExpr> {
        std::iter::once(&self.first).chain(self.rest.iter().map(|(_, t)| t))
    }

    /// Denoted polynomial in `n_vars` unknowns, coefficients exact.
    pub fn to_polynomial(&self, src: &str, n_vars: usize) -> Result<DiffPolynomial> {
        let mut acc = term_value(&self.first, src, n_vars)?;
        for (sign, term) in &self.rest {
            let v = term_value(term, src, n_vars)?;
            acc = match sign {
                Sign::Plus => acc.add(&v)?,
                Sign::Minus => acc.sub(&v)?,
            };
        }
        Ok(acc)
    }
}

fn term_value(term: &TermExpr, src: &str, n: usize) -> Result<DiffPolynomial> {
    let mut acc = DiffPolynomial::constant(n, TruncatedSeries::one());
    for factor in &term.factors {
        let base = base_value(&factor.base, src, n)?;
        let mut value = DiffPolynomial::constant(n, TruncatedSeries::one());
        for _ in 0..factor.exponent.unwrap_or(1) {
            value = value.mul(&base)?;
        }
        acc = acc.mul(&value)?;
    }
    Ok(acc)
}

fn base_value(base: &BaseExpr, src: &str, n: usize) -> Result<DiffPolynomial> {
    match base {
        BaseExpr::Rational {
            negative,
            numer,
            denom,
            ..
        } => {
            let mut num = BigInt::from(numer.clone());
            if *negative {
                num = -num;
            }
            let den = BigInt::from(denom.clone().unwrap_or_else(|| BigUint::from(1u8)));
            Ok(DiffPolynomial::constant(
                n,
                TruncatedSeries::constant(Rational::new(num, den)),
            ))
        }
        BaseExpr::T(_) => Ok(DiffPolynomial::constant(
            n,
            TruncatedSeries::poly_ints(&[0, 1]),
        )),
        BaseExpr::Var { i, j, span } => {
            if *i < 1 {
                let (line, column) = line_col(src, span.start);
                return Err(Error::VariableIndex {
                    line,
                    column,
                    i: *i,
                    j: *j,
                });
            }
            DiffPolynomial::from_terms(
                n,
                [(
                    DiffMonomial::var(Var::new(*i as usize, *j as usize)),
                    TruncatedSeries::one(),
                )],
            )
        }
        BaseExpr::Paren(inner, _) => inner.to_polynomial(src, n),
    }
}

/// Parse a differential polynomial. The ring has as many unknowns as the
/// largest index used (at least one); coefficients of degree `≥ trunc` in `t`
/// are kept only modulo `t^trunc`.
pub fn parse_poly(text: &str, trunc: usize) -> Result<DiffPolynomial> {
    let tree = parse_expr(text)?;
    let n = (tree.max_var_index() as usize).max(1);
    let exact = tree.to_polynomial(text, n)?;
    apply_truncation(&exact, trunc)
}

/// Truncate oversized exact coefficients to `t^trunc`.
pub fn apply_truncation(p: &DiffPolynomial, trunc: usize) -> Result<DiffPolynomial> {
    p.try_map_coefficients(|_, c| {
        Ok(if c.is_exact() && c.trunc_order() > trunc {
            c.truncate(trunc)
        } else {
            c.clone()
        })
    })
}

/// Parse a power series written as a polynomial in `t` (no variables).
pub fn parse_series(text: &str, trunc: usize) -> Result<TruncatedSeries> {
    let tree = parse_expr(text)?;
    if tree.max_var_index() > 0 {
        return Err(Parser::new(text).error_at(0, "a series may not contain variables"));
    }
    let p = tree.to_polynomial(text, 1)?;
    let c = p
        .coefficient(&DiffMonomial::one())
        .cloned()
        .unwrap_or_else(TruncatedSeries::zero);
    Ok(if c.trunc_order() > trunc {
        c.truncate(trunc)
    } else {
        c
    })
}

/// Parse an eventually periodic set into canonical form.
pub fn parse_natset(text: &str) -> Result<NatSet> {
    Parser::new(text).natset()
}

/// Like [`parse_natset`], also returning a note when the input was not
/// written in canonical form.
pub fn parse_natset_noting(text: &str) -> Result<(NatSet, Option<String>)> {
    let set = parse_natset(text)?;
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let note = (compact != set.to_string())
        .then(|| format!("note: '{text}' is not canonical; using {set}"));
    Ok((set, note))
}
