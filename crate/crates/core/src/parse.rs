//! Text formats for rings, matrices and module documents.
//!
//! ```text
//! ring R = Z/12                  # optional name
//! module M over R presented by [[4,0],[0,6]]
//! matrix A over GF(2)[t] = [[t^2+1, t],[0, t+1]]
//! ```
//!
//! Rows of a presentation are generators, columns are relations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::poly::Poly;
use crate::ring::{Elem, Ring, RingDescriptor};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i128),
    Punct(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                column += 1;
            }
            let v = s.parse().map_err(|_| Error::Syntax { line: l, column: col, message: "integer too large".into() })?;
            out.push(Token { tok: Tok::Int(v), line: l, column: col });
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line: l, column: col });
        } else if "/()[]{},;=+-^*".contains(c) {
            chars.next();
            column += 1;
            out.push(Token { tok: Tok::Punct(c), line: l, column: col });
        } else {
            return Err(Error::Syntax { line: l, column: col, message: format!("unexpected character `{c}`") });
        }
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

/// A presentation matrix bound to a name.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedMatrix {
    pub name: String,
    pub ring: RingDescriptor,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct InputDocument {
    /// Declared rings in order; the unnamed one is keyed by the empty string.
    pub rings: Vec<(String, RingDescriptor)>,
    pub modules: Vec<NamedMatrix>,
    pub matrices: Vec<NamedMatrix>,
}

impl InputDocument {
    /// The first declared ring, if any.
    pub fn ring(&self) -> Option<&RingDescriptor> {
        self.rings.first().map(|(_, r)| r)
    }

    pub fn module(&self, name: &str) -> Result<&NamedMatrix> {
        self.modules.iter().find(|m| m.name == name).ok_or_else(|| Error::UnknownName(name.into()))
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax { line: t.line, column: t.column, message: message.into() }
    }

    /// Attaches the current location to a semantic error.
    fn locate(&self, at: usize, e: Error) -> Error {
        let t = &self.toks[at];
        match e {
            Error::Syntax { .. } | Error::UnknownRingKind(_) | Error::BadMatrixShape(_) | Error::UnknownName(_) => e,
            other => Error::Syntax { line: t.line, column: t.column, message: other.to_string() },
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected `{word}`"))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.bump() {
            Tok::Ident(s) => Ok(s),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("expected a name"))
            }
        }
    }

    fn uint(&mut self) -> Result<u64> {
        match self.peek().clone() {
            Tok::Int(v) if v <= u64::MAX as i128 => {
                self.pos += 1;
                Ok(v as u64)
            }
            _ => Err(self.error("expected a nonnegative integer")),
        }
    }

    fn int(&mut self) -> Result<i128> {
        let neg = self.eat('-');
        match self.bump() {
            Tok::Int(v) => Ok(if neg { -v } else { v }),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("expected an integer"))
            }
        }
    }

    fn ring(&mut self) -> Result<RingDescriptor> {
        let at = self.pos;
        let kind = self.ident()?;
        let desc = match kind.as_str() {
            "Z" if self.eat('/') => RingDescriptor::IntegersMod(self.uint()?),
            "Z" => RingDescriptor::Integers,
            "GF" => {
                self.expect('(')?;
                let p = self.uint()?;
                self.expect(')')?;
                self.expect('[')?;
                self.keyword("t")?;
                self.expect(']')?;
                let modulus = if self.eat('/') {
                    self.expect('(')?;
                    let m = self.poly(p)?;
                    self.expect(')')?;
                    m
                } else {
                    Poly::zero()
                };
                RingDescriptor::PolyQuotient { p, modulus }
            }
            "product" => {
                self.expect('(')?;
                let mut parts = vec![self.ring()?];
                while self.eat(',') {
                    parts.push(self.ring()?);
                }
                self.expect(')')?;
                RingDescriptor::Product(parts)
            }
            "localtable" => {
                self.expect('{')?;
                let mut fields: BTreeMap<String, Vec<Vec<u64>>> = BTreeMap::new();
                loop {
                    let name = self.ident()?;
                    self.expect('=')?;
                    let value = if name == "units" { vec![self.uint_list()?] } else { self.uint_table()? };
                    if !["add", "mul", "units"].contains(&name.as_str()) || fields.insert(name.clone(), value).is_some() {
                        return Err(self.error(format!("unexpected table field `{name}`")));
                    }
                    if !self.eat(';') {
                        break;
                    }
                }
                self.expect('}')?;
                let mut take = |k: &str| fields.remove(k).ok_or_else(|| self.error(format!("missing table field `{k}`")));
                let add = take("add")?;
                let mul = take("mul")?;
                let units = take("units")?.remove(0);
                RingDescriptor::LocalTable { add, mul, units }
            }
            other => return Err(Error::UnknownRingKind(other.into())),
        };
        Ring::new(desc.clone()).map_err(|e| self.locate(at, e))?;
        Ok(desc)
    }

    fn uint_list(&mut self) -> Result<Vec<u64>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if !self.eat(']') {
            loop {
                out.push(self.uint()?);
                if !self.eat(',') {
                    break;
                }
            }
            self.expect(']')?;
        }
        Ok(out)
    }

    fn uint_table(&mut self) -> Result<Vec<Vec<u64>>> {
        self.expect('[')?;
        let mut out = Vec::new();
        loop {
            out.push(self.uint_list()?);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        Ok(out)
    }

    /// A polynomial in `t` with integer coefficients, reduced mod `p`.
    fn poly(&mut self, p: u64) -> Result<Poly> {
        let mut coeffs: Vec<u64> = Vec::new();
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else {
                if !first && !self.eat('+') {
                    break;
                }
                false
            };
            first = false;
            let mut c: u64 = 1;
            let mut has_coeff = false;
            if let Tok::Int(v) = *self.peek() {
                self.pos += 1;
                c = (v % p as i128) as u64;
                has_coeff = true;
                self.eat('*');
            }
            let mut deg = 0;
            if *self.peek() == Tok::Ident("t".into()) {
                self.pos += 1;
                deg = 1;
                if self.eat('^') {
                    deg = self.uint()? as usize;
                    if deg > 4096 {
                        return Err(self.error("exponent too large"));
                    }
                }
            } else if !has_coeff {
                return Err(self.error("expected a polynomial term"));
            }
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            let c = if neg { (p - c) % p } else { c };
            coeffs[deg] = (coeffs[deg] + c) % p;
        }
        Ok(Poly::from_coeffs(coeffs))
    }

    fn elem(&mut self, desc: &RingDescriptor, ring: &Ring) -> Result<Elem> {
        let at = self.pos;
        let e = match desc {
            RingDescriptor::Integers | RingDescriptor::IntegersMod(_) => ring.from_int(self.int()?),
            RingDescriptor::PolyQuotient { p, .. } => ring.canonical(&Elem::Poly(self.poly(*p)?)),
            RingDescriptor::Product(parts) => {
                if !self.eat('(') {
                    return Ok(ring.from_int(self.int()?));
                }
                let comps = ring.components().ok_or_else(|| Error::Invariant("product without components".into()))?;
                let mut out = Vec::new();
                for (i, (d, r)) in parts.iter().zip(&comps).enumerate() {
                    if i > 0 {
                        self.expect(',')?;
                    }
                    out.push(self.elem(d, r)?);
                }
                self.expect(')')?;
                Elem::Tuple(out)
            }
            RingDescriptor::LocalTable { add, .. } => {
                let i = self.uint()?;
                if i as usize >= add.len() {
                    self.pos = at;
                    return Err(self.error(format!("table element {i} out of range")));
                }
                Elem::Idx(i as u16)
            }
        };
        Ok(e)
    }

    fn matrix(&mut self, desc: &RingDescriptor) -> Result<Matrix> {
        let ring = Ring::new(desc.clone())?;
        let at = self.pos;
        self.expect('[')?;
        let mut rows = Vec::new();
        if !self.eat(']') {
            loop {
                self.expect('[')?;
                let mut row = Vec::new();
                if !self.eat(']') {
                    loop {
                        row.push(self.elem(desc, &ring)?);
                        if !self.eat(',') {
                            break;
                        }
                    }
                    self.expect(']')?;
                }
                rows.push(row);
                if !self.eat(',') {
                    break;
                }
            }
            self.expect(']')?;
        }
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            let t = &self.toks[at];
            return Err(Error::BadMatrixShape(format!("rows differ in length (matrix at {}:{})", t.line, t.column)));
        }
        Matrix::from_rows(&ring, rows, cols)
    }

    fn ring_ref(&mut self, doc: &InputDocument) -> Result<RingDescriptor> {
        if let Tok::Ident(name) = self.peek().clone() {
            if !matches!(name.as_str(), "Z" | "GF" | "product" | "localtable") {
                self.pos += 1;
                return doc
                    .rings
                    .iter()
                    .find(|(n, _)| *n == name)
                    .map(|(_, r)| r.clone())
                    .ok_or(Error::UnknownName(name));
            }
        }
        self.ring()
    }

    fn document(&mut self) -> Result<InputDocument> {
        let mut doc = InputDocument::default();
        loop {
            match self.peek().clone() {
                Tok::End => return Ok(doc),
                Tok::Ident(w) if w == "ring" => {
                    self.pos += 1;
                    let named = matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::Punct('=');
                    let name = if named {
                        let n = self.ident()?;
                        self.expect('=')?;
                        n
                    } else {
                        String::new()
                    };
                    if doc.rings.iter().any(|(n, _)| *n == name) {
                        return Err(self.error(format!("ring `{name}` declared twice")));
                    }
                    let r = self.ring()?;
                    doc.rings.push((name, r));
                }
                Tok::Ident(w) if w == "module" => {
                    self.pos += 1;
                    let name = match self.peek() {
                        Tok::Ident(s) if s != "over" => self.ident()?,
                        _ => format!("M{}", doc.modules.len() + 1),
                    };
                    self.keyword("over")?;
                    let ring = self.ring_ref(&doc)?;
                    self.keyword("presented")?;
                    self.keyword("by")?;
                    let matrix = self.matrix(&ring)?;
                    if doc.modules.iter().any(|m| m.name == name) {
                        return Err(self.error(format!("module `{name}` declared twice")));
                    }
                    doc.modules.push(NamedMatrix { name, ring, matrix });
                }
                Tok::Ident(w) if w == "matrix" => {
                    self.pos += 1;
                    let name = self.ident()?;
                    self.keyword("over")?;
                    let ring = self.ring_ref(&doc)?;
                    self.expect('=')?;
                    let matrix = self.matrix(&ring)?;
                    doc.matrices.push(NamedMatrix { name, ring, matrix });
                }
                _ => return Err(self.error("expected `ring`, `module` or `matrix`")),
            }
        }
    }
}

fn finish<T>(p: &mut Parser, v: T) -> Result<T> {
    if *p.peek() != Tok::End {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

pub fn parse_ring(text: &str) -> Result<RingDescriptor> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let r = p.ring()?;
    finish(&mut p, r)
}

pub fn parse_matrix(desc: &RingDescriptor, text: &str) -> Result<Matrix> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let m = p.matrix(desc)?;
    finish(&mut p, m)
}

pub fn parse_document(text: &str) -> Result<InputDocument> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    p.document()
}

pub fn print_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m.display_rows().into_iter().map(|r| format!("[{}]", r.join(","))).collect();
    format!("[{}]", rows.join(","))
}

pub fn print_document(doc: &InputDocument) -> String {
    let mut out = String::new();
    for (name, r) in &doc.rings {
        if name.is_empty() {
            let _ = writeln!(out, "ring {r}");
        } else {
            let _ = writeln!(out, "ring {name} = {r}");
        }
    }
    for m in &doc.modules {
        let _ = writeln!(out, "module {} over {} presented by {}", m.name, m.ring, print_matrix(&m.matrix));
    }
    for m in &doc.matrices {
        let _ = writeln!(out, "matrix {} over {} = {}", m.name, m.ring, print_matrix(&m.matrix));
    }
    out
}
