//! Declarative session language.
//!
//! ```text
//! # comments run to end of line
//! ring S = numerical_semigroup(4, 5, 7);
//! ring R = polynomial_local(2);
//! ideal I1 = [4, 8, 9, 10, 11] in S;
//! ideal M = maximal(R);
//! ideal I = [(1,0), (0,2)] in R;
//! ideal K = (M + I)^2 * I;
//! ```
//!
//! `*` binds tighter than `+`; `^` takes a literal exponent. Names share one
//! namespace. Every error carries a 1-based line and column.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::lattice::{LatticeError, Monomial, MonomialIdeal, Ring};
use crate::rees::{LaurentElement, LaurentTerm};

/// Largest literal exponent accepted after `^`.
pub const MAX_POWER: u32 = 32;
/// Largest number of generator products a `*` or `^` may form before
/// minimalization.
pub const MAX_PRODUCT_TERMS: u64 = 100_000;
const MAX_NESTING: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{span}: expected {}, found {found}", expected.join(" or "))]
    Syntax { span: Span, expected: Vec<String>, found: String },
    #[error("{span}: undeclared ring {name}")]
    UndeclaredRing { span: Span, name: String },
    #[error("{span}: undeclared ideal {name}")]
    UndeclaredIdeal { span: Span, name: String },
    #[error("{span}: {name} is already declared at {first}")]
    DuplicateName { span: Span, name: String, first: Span },
    #[error("{span}: exponent vector has {got} entries, ring {ring} needs {expected}")]
    ArityMismatch { span: Span, ring: String, expected: usize, got: usize },
    #[error("{span}: {message}")]
    Invalid { span: Span, message: String },
    #[error("{span}: {source}")]
    Lattice { span: Span, source: LatticeError },
}

impl DslError {
    pub fn span(&self) -> Span {
        match self {
            DslError::Syntax { span, .. }
            | DslError::UndeclaredRing { span, .. }
            | DslError::UndeclaredIdeal { span, .. }
            | DslError::DuplicateName { span, .. }
            | DslError::ArityMismatch { span, .. }
            | DslError::Invalid { span, .. }
            | DslError::Lattice { span, .. } => *span,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DslError::Syntax { .. } => "SyntaxError",
            DslError::UndeclaredRing { .. } => "UndeclaredRing",
            DslError::UndeclaredIdeal { .. } => "UndeclaredIdeal",
            DslError::DuplicateName { .. } => "DuplicateName",
            DslError::ArityMismatch { .. } => "ArityMismatch",
            DslError::Invalid { .. } => "InvalidInput",
            DslError::Lattice { .. } => "LatticeError",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(String),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Nat(s) => write!(f, "number {s}"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str, symbols: &str) -> Result<Vec<(Tok, Span)>, DslError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let span = Span { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(char::is_ascii_digit) {
                s.push(bump(&mut chars));
            }
            out.push((Tok::Nat(s), span));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_') {
                s.push(bump(&mut chars));
            }
            out.push((Tok::Ident(s), span));
        } else if symbols.contains(c) {
            out.push((Tok::Sym(bump(&mut chars)), span));
        } else {
            return Err(DslError::Syntax {
                span,
                expected: vec!["a token".into()],
                found: format!("character {c:?}"),
            });
        }
    }
    out.push((Tok::Eof, Span { line, column }));
    Ok(out)
}

const KEYWORDS: [&str; 6] = ["ring", "ideal", "in", "polynomial_local", "numerical_semigroup", "maximal"];

struct Cursor {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Cursor {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn advance(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, DslError> {
        Err(DslError::Syntax {
            span: self.span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn sym(&mut self, c: char) -> Result<Span, DslError> {
        if self.is_sym(c) {
            Ok(self.advance().1)
        } else {
            self.error(&[&format!("'{c}'")])
        }
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == k)
    }

    fn keyword(&mut self, k: &str) -> Result<Span, DslError> {
        if self.is_keyword(k) {
            Ok(self.advance().1)
        } else {
            self.error(&[&format!("'{k}'")])
        }
    }

    fn name(&mut self) -> Result<(String, Span), DslError> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let (t, span) = self.advance();
                let Tok::Ident(s) = t else { unreachable!() };
                Ok((s, span))
            }
            _ => self.error(&["a name"]),
        }
    }

    fn nat(&mut self) -> Result<(u32, Span), DslError> {
        match self.peek() {
            Tok::Nat(s) => {
                let span = self.span();
                let v = s.parse::<u32>().map_err(|_| DslError::Invalid {
                    span,
                    message: format!("number {s} exceeds {}", u32::MAX),
                })?;
                self.advance();
                Ok((v, span))
            }
            _ => self.error(&["a natural number"]),
        }
    }

    // NAT {, NAT}
    fn nat_list(&mut self) -> Result<Vec<u32>, DslError> {
        let mut v = vec![self.nat()?.0];
        while self.is_sym(',') {
            self.advance();
            v.push(self.nat()?.0);
        }
        Ok(v)
    }
}

#[derive(Debug, Clone)]
enum Binding {
    Ring(Arc<Ring>),
    Ideal(MonomialIdeal),
}

/// Parsed declarations, in one name space.
#[derive(Debug, Clone, Default)]
pub struct Session {
    bindings: BTreeMap<String, (Binding, Span)>,
    order: Vec<String>,
}

impl Session {
    pub fn ring(&self, name: &str) -> Option<&Arc<Ring>> {
        match self.bindings.get(name) {
            Some((Binding::Ring(r), _)) => Some(r),
            _ => None,
        }
    }

    pub fn ideal(&self, name: &str) -> Option<&MonomialIdeal> {
        match self.bindings.get(name) {
            Some((Binding::Ideal(i), _)) => Some(i),
            _ => None,
        }
    }

    pub fn span(&self, name: &str) -> Option<Span> {
        self.bindings.get(name).map(|(_, s)| *s)
    }

    /// Ring names in declaration order.
    pub fn ring_names(&self) -> Vec<&str> {
        self.names(|b| matches!(b, Binding::Ring(_)))
    }

    /// Ideal names in declaration order.
    pub fn ideal_names(&self) -> Vec<&str> {
        self.names(|b| matches!(b, Binding::Ideal(_)))
    }

    fn names(&self, keep: impl Fn(&Binding) -> bool) -> Vec<&str> {
        self.order.iter().filter(|n| keep(&self.bindings[*n].0)).map(String::as_str).collect()
    }

    fn declare(&mut self, name: String, span: Span, b: Binding) -> Result<(), DslError> {
        if let Some((_, first)) = self.bindings.get(&name) {
            return Err(DslError::DuplicateName { span, name, first: *first });
        }
        self.order.push(name.clone());
        self.bindings.insert(name, (b, span));
        Ok(())
    }
}

/// Parses a whole session.
pub fn parse_session(text: &str) -> Result<Session, DslError> {
    let mut cur = Cursor { toks: lex(text, "=();,[]+*^")?, pos: 0 };
    let mut session = Session::default();
    loop {
        if *cur.peek() == Tok::Eof {
            return Ok(session);
        }
        if cur.is_keyword("ring") {
            cur.advance();
            let (name, span) = cur.name()?;
            cur.sym('=')?;
            let ring = ring_expr(&mut cur)?;
            cur.sym(';')?;
            session.declare(name, span, Binding::Ring(ring))?;
        } else if cur.is_keyword("ideal") {
            cur.advance();
            let (name, span) = cur.name()?;
            cur.sym('=')?;
            let ideal = IdealParser { cur: &mut cur, session: &session, depth: 0 }.sum()?;
            cur.sym(';')?;
            session.declare(name, span, Binding::Ideal(ideal))?;
        } else {
            return cur.error(&["'ring'", "'ideal'"]);
        }
    }
}

fn ring_expr(cur: &mut Cursor) -> Result<Arc<Ring>, DslError> {
    let span = cur.span();
    let lattice = |source| DslError::Lattice { span, source };
    if cur.is_keyword("polynomial_local") {
        cur.advance();
        cur.sym('(')?;
        let (d, _) = cur.nat()?;
        cur.sym(')')?;
        Ring::polynomial_local(d as usize).map_err(lattice)
    } else if cur.is_keyword("numerical_semigroup") {
        cur.advance();
        cur.sym('(')?;
        let gens = cur.nat_list()?;
        cur.sym(')')?;
        Ring::numerical_semigroup(&gens).map_err(lattice)
    } else {
        cur.error(&["'polynomial_local'", "'numerical_semigroup'"])
    }
}

fn guard_terms(span: Span, terms: u64) -> Result<(), DslError> {
    if terms > MAX_PRODUCT_TERMS {
        return Err(DslError::Invalid {
            span,
            message: format!("expression would form {terms} generator products (limit {MAX_PRODUCT_TERMS})"),
        });
    }
    Ok(())
}

struct IdealParser<'a> {
    cur: &'a mut Cursor,
    session: &'a Session,
    depth: usize,
}

impl IdealParser<'_> {
    // term {+ term}
    fn sum(&mut self) -> Result<MonomialIdeal, DslError> {
        let mut acc = self.product()?;
        while self.cur.is_sym('+') {
            let span = self.cur.advance().1;
            let rhs = self.product()?;
            acc = acc.sum(&rhs).map_err(|source| DslError::Lattice { span, source })?;
        }
        Ok(acc)
    }

    // power {* power}
    fn product(&mut self) -> Result<MonomialIdeal, DslError> {
        let mut acc = self.power()?;
        while self.cur.is_sym('*') {
            let span = self.cur.advance().1;
            let rhs = self.power()?;
            guard_terms(span, (acc.mu() as u64).saturating_mul(rhs.mu() as u64))?;
            acc = acc.product(&rhs).map_err(|source| DslError::Lattice { span, source })?;
        }
        Ok(acc)
    }

    // atom [^ NAT]
    fn power(&mut self) -> Result<MonomialIdeal, DslError> {
        let base = self.atom()?;
        if !self.cur.is_sym('^') {
            return Ok(base);
        }
        self.cur.advance();
        let (n, span) = self.cur.nat()?;
        if n == 0 || n > MAX_POWER {
            return Err(DslError::Invalid { span, message: format!("exponent must be in 1..={MAX_POWER}") });
        }
        // multisets of n generators
        let terms = num_integer::binomial(base.mu() as u128 + n as u128 - 1, n as u128);
        guard_terms(span, u64::try_from(terms).unwrap_or(u64::MAX))?;
        base.power(n).map_err(|source| DslError::Lattice { span, source })
    }

    fn atom(&mut self) -> Result<MonomialIdeal, DslError> {
        let span = self.cur.span();
        if self.cur.is_sym('(') {
            if self.depth >= MAX_NESTING {
                return Err(DslError::Invalid { span, message: "expression nested too deeply".into() });
            }
            self.cur.advance();
            self.depth += 1;
            let inner = self.sum()?;
            self.depth -= 1;
            self.cur.sym(')')?;
            return Ok(inner);
        }
        if self.cur.is_sym('[') {
            return self.generators();
        }
        if self.cur.is_keyword("maximal") {
            self.cur.advance();
            self.cur.sym('(')?;
            let ring = self.ring_ref()?;
            self.cur.sym(')')?;
            return Ok(MonomialIdeal::maximal_ideal(&ring));
        }
        match self.cur.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let (name, span) = self.cur.name()?;
                self.session
                    .ideal(&name)
                    .cloned()
                    .ok_or(DslError::UndeclaredIdeal { span, name })
            }
            _ => self.cur.error(&["'['", "'('", "'maximal'", "an ideal name"]),
        }
    }

    fn ring_ref(&mut self) -> Result<Arc<Ring>, DslError> {
        let (name, span) = self.cur.name()?;
        self.session.ring(&name).cloned().ok_or(DslError::UndeclaredRing { span, name })
    }

    // [ GEN {, GEN} ] in NAME
    fn generators(&mut self) -> Result<MonomialIdeal, DslError> {
        self.cur.sym('[')?;
        let mut raw: Vec<(Vec<u32>, bool, Span)> = Vec::new();
        loop {
            let span = self.cur.span();
            if self.cur.is_sym('(') {
                self.cur.advance();
                let v = self.cur.nat_list()?;
                self.cur.sym(')')?;
                raw.push((v, true, span));
            } else if matches!(self.cur.peek(), Tok::Nat(_)) {
                raw.push((vec![self.cur.nat()?.0], false, span));
            } else {
                return self.cur.error(&["a natural number", "'('"]);
            }
            if self.cur.is_sym(',') {
                self.cur.advance();
            } else {
                break;
            }
        }
        self.cur.sym(']')?;
        self.cur.keyword("in")?;
        let ring_span = self.cur.span();
        let ring = self.ring_ref()?;
        let semigroup = ring.semigroup().is_some();
        let mut gens = Vec::with_capacity(raw.len());
        for (v, vector, span) in raw {
            if semigroup && vector {
                return Err(DslError::Invalid {
                    span,
                    message: format!("ring {ring} takes semigroup values, not exponent vectors"),
                });
            }
            if !semigroup && v.len() != ring.arity() {
                return Err(DslError::ArityMismatch {
                    span,
                    ring: ring.to_string(),
                    expected: ring.arity(),
                    got: v.len(),
                });
            }
            gens.push(Monomial::new(v));
        }
        MonomialIdeal::from_gens(&ring, gens).map_err(|source| DslError::Lattice { span: ring_span, source })
    }
}

/// Parses `;`-separated Laurent elements over `g` multidegree variables.
///
/// Terms are joined by `+`; a term is `[c*] (e₁,…,e_k) t^(b₁,…,b_g)` where
/// `c` is an integer or `p/q`, `(e)` the ring monomial (a single value for
/// semigroup rings, omitted for 1) and `t^(b)` the multidegree (omitted for 0).
pub fn parse_laurent(text: &str, ring: &Ring, g: usize) -> Result<Vec<LaurentElement>, DslError> {
    let mut cur = Cursor { toks: lex(text, "();,+*^/-")?, pos: 0 };
    let mut out = Vec::new();
    loop {
        let mut terms = vec![laurent_term(&mut cur, ring, g)?];
        while cur.is_sym('+') {
            cur.advance();
            terms.push(laurent_term(&mut cur, ring, g)?);
        }
        out.push(LaurentElement::new(terms));
        if cur.is_sym(';') {
            cur.advance();
            if *cur.peek() == Tok::Eof {
                return Ok(out);
            }
        } else if *cur.peek() == Tok::Eof {
            return Ok(out);
        } else {
            return cur.error(&["'+'", "';'", "end of input"]);
        }
    }
}

fn signed(cur: &mut Cursor) -> Result<i64, DslError> {
    let neg = cur.is_sym('-');
    if neg {
        cur.advance();
    }
    let (v, _) = cur.nat()?;
    Ok(if neg { -(v as i64) } else { v as i64 })
}

fn laurent_term(cur: &mut Cursor, ring: &Ring, g: usize) -> Result<LaurentTerm, DslError> {
    let start = cur.span();
    let mut coeff = BigRational::from_integer(BigInt::from(1));
    if cur.is_sym('-') || matches!(cur.peek(), Tok::Nat(_)) {
        let num = signed(cur)?;
        let mut c = BigRational::from_integer(BigInt::from(num));
        if cur.is_sym('/') {
            cur.advance();
            let (den, span) = cur.nat()?;
            if den == 0 {
                return Err(DslError::Invalid { span, message: "zero denominator".into() });
            }
            c /= BigRational::from_integer(BigInt::from(den));
        }
        coeff = c;
        cur.sym('*')?;
    }
    let mut exps = vec![0u32; ring.arity()];
    let mut degree = vec![0i64; g];
    let mut seen = false;
    if cur.is_sym('(') {
        let span = cur.advance().1;
        let v = cur.nat_list()?;
        cur.sym(')')?;
        if v.len() != ring.arity() {
            return Err(DslError::ArityMismatch {
                span,
                ring: ring.to_string(),
                expected: ring.arity(),
                got: v.len(),
            });
        }
        exps = v;
        seen = true;
    }
    if cur.is_keyword("t") {
        cur.advance();
        cur.sym('^')?;
        let span = cur.sym('(')?;
        let mut v = vec![signed(cur)?];
        while cur.is_sym(',') {
            cur.advance();
            v.push(signed(cur)?);
        }
        cur.sym(')')?;
        if v.len() != g {
            return Err(DslError::Invalid {
                span,
                message: format!("multidegree needs {g} entries, got {}", v.len()),
            });
        }
        degree = v;
        seen = true;
    }
    if !seen {
        return Err(DslError::Syntax {
            span: start,
            expected: vec!["'('".into(), "'t'".into()],
            found: cur.peek().to_string(),
        });
    }
    Ok(LaurentTerm::new(coeff, Monomial::new(exps), degree))
}
