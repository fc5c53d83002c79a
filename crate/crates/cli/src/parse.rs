//! Ideal expressions such as `ring x1..x4; I = (x1*x2^3 + x3^4, x1 + x2 + x4, x2^3)`.
//!
//! The ring declaration is optional; without it the variables are the
//! identifiers that occur, in natural order (`x2` before `x10`), and each
//! identifier is read as a product of atoms made of one letter and optional
//! digits, so `x1x2` is `x1*x2` and `xy` is `x*y`. With a declaration,
//! juxtaposed names are split into declared variables instead.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use betti_core::{Error as CoreError, GradedIdeal, Monomial, MonomialIdeal, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(&'static str),
    UnknownVariable(String),
    DuplicateVariable(String),
    BadRange,
    ExponentTooLarge,
    NotHomogeneous { index: usize, degrees: Vec<u32> },
    EmptyIdeal,
}

/// A parse failure at a 0-based byte offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: ", self.pos + 1)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable {v:?}"),
            ParseErrorKind::DuplicateVariable(v) => write!(f, "variable {v:?} declared twice"),
            ParseErrorKind::BadRange => write!(f, "a range must look like x1..x4"),
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent too large"),
            ParseErrorKind::NotHomogeneous { index, degrees } => {
                write!(
                    f,
                    "generator {} is not homogeneous (term degrees {degrees:?})",
                    index + 1
                )
            }
            ParseErrorKind::EmptyIdeal => write!(
                f,
                "the ideal is zero; at least one nonzero generator is required"
            ),
        }
    }
}

impl std::error::Error for ParseError {}

/// A parsed ideal with its variable names.
#[derive(Debug, Clone)]
pub struct IdealExpression {
    pub source: String,
    pub names: Vec<String>,
    /// Nonzero generators in source order.
    pub generators: Vec<Polynomial>,
    pub ideal: GradedIdeal,
}

impl PartialEq for IdealExpression {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.generators == other.generators
    }
}

impl IdealExpression {
    pub fn from_ideal(names: Vec<String>, ideal: GradedIdeal) -> Self {
        let generators = ideal.gens().to_vec();
        let mut expr = IdealExpression {
            source: String::new(),
            names,
            generators,
            ideal,
        };
        expr.source = serialize(&expr);
        expr
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn monomial(&self) -> Option<MonomialIdeal> {
        self.ideal.as_monomial_ideal()
    }

    pub fn is_monomial(&self) -> bool {
        self.ideal.is_monomial()
    }

    /// Degrees of the generators in source order.
    pub fn source_degrees(&self) -> Vec<u32> {
        self.generators
            .iter()
            .filter_map(Polynomial::degree)
            .collect()
    }

    pub fn display_polynomial(&self, p: &Polynomial) -> String {
        p.display_with(&self.names)
    }

    pub fn display_ideal(&self, ideal: &GradedIdeal) -> String {
        let parts: Vec<String> = ideal
            .gens()
            .iter()
            .map(|g| g.display_with(&self.names))
            .collect();
        format!("({})", parts.join(", "))
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        m.display_with(&self.names)
    }
}

/// Canonical text that parses back to an equal expression.
pub fn serialize(expr: &IdealExpression) -> String {
    let gens: Vec<String> = expr
        .generators
        .iter()
        .map(|g| g.display_with(&expr.names))
        .collect();
    format!(
        "ring {}; I = ({})",
        ring_declaration(&expr.names),
        gens.join(", ")
    )
}

fn ring_declaration(names: &[String]) -> String {
    if let Some(prefix) = names
        .first()
        .and_then(|n| split_numbered(n))
        .map(|(p, _)| p)
    {
        let consecutive = names
            .iter()
            .enumerate()
            .all(|(i, n)| split_numbered(n) == Some((prefix, i as u64 + 1)));
        if consecutive && names.len() > 1 {
            return format!("{prefix}1..{prefix}{}", names.len());
        }
    }
    names.join(", ")
}

/// `x12` -> `("x", 12)`.
fn split_numbered(name: &str) -> Option<(&str, u64)> {
    let cut = name.find(|c: char| c.is_ascii_digit())?;
    let (prefix, digits) = name.split_at(cut);
    if prefix.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    Some((prefix, digits.parse().ok()?))
}

fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (split_numbered(a), split_numbered(b)) {
        (Some((pa, na)), Some((pb, nb))) => pa.cmp(pb).then(na.cmp(&nb)),
        _ => a.cmp(b),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    DotDot,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut offsets = Vec::with_capacity(bytes.len() + 1);
    let mut acc = 0;
    for c in &bytes {
        offsets.push(acc);
        acc += c.len_utf8();
    }
    offsets.push(acc);
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = offsets[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(bytes[start..i].iter().collect())));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = bytes[start..i].iter().collect();
            out.push((pos, Tok::Int(digits.parse().unwrap())));
        } else if c == '.' && bytes.get(i + 1) == Some(&'.') {
            out.push((pos, Tok::DotDot));
            i += 2;
        } else if "(),;=+-*^".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                pos,
                kind: ParseErrorKind::UnexpectedChar(c),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// A term before variables are resolved: coefficient and `(name, exponent, pos)` factors.
type RawTerm = (BigInt, Vec<(String, u32, usize)>);

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            pos: self.pos(),
            kind,
        }
    }

    fn expected(&self, what: &'static str) -> ParseError {
        if *self.peek() == Tok::End {
            self.error(ParseErrorKind::UnexpectedEnd)
        } else {
            self.error(ParseErrorKind::Expected(what))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.expected(what))
        }
    }

    fn ring(&mut self) -> Result<Option<Vec<String>>, ParseError> {
        if *self.peek() != Tok::Ident("ring".into()) {
            return Ok(None);
        }
        self.bump();
        let mut names: Vec<String> = Vec::new();
        loop {
            let pos = self.pos();
            let Tok::Ident(first) = self.bump() else {
                self.at -= 1;
                return Err(self.expected("a variable name"));
            };
            if *self.peek() == Tok::DotDot {
                self.bump();
                let Tok::Ident(last) = self.bump() else {
                    self.at -= 1;
                    return Err(self.expected("the end of a range"));
                };
                let (Some((p, a)), Some((q, b))) = (split_numbered(&first), split_numbered(&last))
                else {
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::BadRange,
                    });
                };
                if p != q || a > b {
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::BadRange,
                    });
                }
                names.extend((a..=b).map(|k| format!("{p}{k}")));
            } else {
                names.push(first);
            }
            if !self.eat(',') {
                break;
            }
        }
        self.expect(';', "';' after the ring declaration")?;
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(ParseError {
                    pos: 0,
                    kind: ParseErrorKind::DuplicateVariable(n.clone()),
                });
            }
        }
        Ok(Some(names))
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let pos = self.pos();
        match self.bump() {
            Tok::Int(v) => v.to_u32().filter(|&e| e <= 10_000).ok_or(ParseError {
                pos,
                kind: ParseErrorKind::ExponentTooLarge,
            }),
            _ => {
                self.at -= 1;
                Err(self.expected("an exponent"))
            }
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let mut coeff = BigInt::one();
        let mut factors = Vec::new();
        loop {
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Int(v) => {
                    self.bump();
                    let e = self.exponent()?;
                    coeff *= num_traits::pow(v, e as usize);
                }
                Tok::Ident(name) => {
                    self.bump();
                    let e = self.exponent()?;
                    factors.push((name, e, pos));
                }
                _ => return Err(self.expected("a number or a variable")),
            }
            if self.eat('*') {
                continue;
            }
            if !matches!(self.peek(), Tok::Int(_) | Tok::Ident(_)) {
                return Ok((coeff, factors));
            }
        }
    }

    fn polynomial(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            let (c, f) = self.term()?;
            terms.push((if negative { -c } else { c }, f));
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(terms);
            }
        }
    }
}

/// Splits a juxtaposed identifier such as `x1x2` into declared names,
/// preferring longer names first.
fn split_ident(ident: &str, names: &[String]) -> Option<Vec<usize>> {
    if ident.is_empty() {
        return Some(Vec::new());
    }
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(names[i].len()));
    for i in order {
        if let Some(rest) = ident.strip_prefix(names[i].as_str()) {
            if let Some(mut tail) = split_ident(rest, names) {
                tail.insert(0, i);
                return Some(tail);
            }
        }
    }
    None
}

/// `x1y22z` -> `["x1", "y22", "z"]`; leading underscores stay attached to
/// the first atom.
fn atoms(ident: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for ch in ident.chars() {
        match out.last_mut() {
            Some(last)
                if !ch.is_ascii_alphabetic() || !last.chars().any(|c| c.is_ascii_alphabetic()) =>
            {
                last.push(ch)
            }
            _ => out.push(ch.to_string()),
        }
    }
    out
}

pub fn parse_ideal(text: &str) -> Result<IdealExpression, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let declared = p.ring()?;
    if let Tok::Ident(_) = p.peek() {
        if p.toks.get(p.at + 1).map(|t| &t.1) == Some(&Tok::Sym('=')) {
            p.bump();
            p.bump();
        }
    }
    p.expect('(', "'(' opening the generator list")?;
    let mut raw: Vec<(usize, Vec<RawTerm>)> = Vec::new();
    loop {
        let pos = p.pos();
        raw.push((pos, p.polynomial()?));
        if !p.eat(',') {
            break;
        }
    }
    p.expect(')', "',' or ')'")?;
    p.eat(';');
    if *p.peek() != Tok::End {
        return Err(p.error(ParseErrorKind::Expected("end of input")));
    }

    let names = match declared {
        Some(names) => names,
        None => {
            let mut seen: Vec<String> = raw
                .iter()
                .flat_map(|(_, terms)| {
                    terms
                        .iter()
                        .flat_map(|(_, f)| f.iter().flat_map(|(n, _, _)| atoms(n)))
                })
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            seen.sort_by(|a, b| natural_cmp(a, b));
            seen
        }
    };
    let n = names.len();
    let mut generators = Vec::new();
    let mut starts = Vec::new();
    for (pos, terms) in raw {
        let mut poly = Polynomial::zero(n);
        for (c, factors) in terms {
            let mut exps = vec![0u32; n];
            for (name, e, fpos) in factors {
                let indices = match names.iter().position(|v| *v == name) {
                    Some(i) => vec![i],
                    None => split_ident(&name, &names).ok_or(ParseError {
                        pos: fpos,
                        kind: ParseErrorKind::UnknownVariable(name.clone()),
                    })?,
                };
                let last = indices.len() - 1;
                for (k, i) in indices.into_iter().enumerate() {
                    // the exponent binds to the last name of a juxtaposed run
                    exps[i] += if k == last { e } else { 1 };
                }
            }
            poly.add_term(Monomial::new(exps), BigRational::from_integer(c));
        }
        if !poly.is_zero() {
            generators.push(poly);
            starts.push(pos);
        }
    }
    if generators.is_empty() {
        return Err(ParseError {
            pos: 0,
            kind: ParseErrorKind::EmptyIdeal,
        });
    }
    let ideal = GradedIdeal::new(n, generators.clone()).map_err(|e| match e {
        CoreError::NotHomogeneous { index, degrees } => ParseError {
            pos: starts[index],
            kind: ParseErrorKind::NotHomogeneous { index, degrees },
        },
        _ => ParseError {
            pos: 0,
            kind: ParseErrorKind::EmptyIdeal,
        },
    })?;
    Ok(IdealExpression {
        source: text.to_string(),
        names,
        generators,
        ideal,
    })
}
