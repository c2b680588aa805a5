//! Quiver descriptions, the expression language and canonical rendering.
//!
//! Quiver files are line based:
//!
//! ```text
//! # the Jordan quiver
//! vertices: 1
//! arrow a: 1 -> 1 weight 0
//! hat
//! double weight 2
//! ```
//!
//! `hat` appends a weight-1 arrow `a^` beside every arrow; `double weight N`
//! appends the reversed arrows `a*`. Directives apply in the order written.
//!
//! Expressions are sums of products of rational literals, arrow names,
//! trivial paths `e<i>`, `d(..)`, `D(arrow)` and parenthesized groups. A
//! group `(u | v)` or `(u | v | w)` is a pure tensor. Arrow names may carry
//! `*` and `^` suffixes, or be written `a.star` and `a.hat`. In a run of `*`
//! after a name, the last `*` is the product operator when the next non-space
//! character starts a factor.

use crate::algebra::{Elem, Kind, Letter, Tensor, Q};
use crate::error::{Error, Result};
use crate::forms::univ_d;
use crate::quiver::{Arrow, GradedQuiver};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Column (1-based) of `tok` inside `line`, searching from `from`.
fn col_of(line: &str, tok: &str, from: usize) -> usize {
    line[from.min(line.len())..].find(tok).map(|i| i + from + 1).unwrap_or(from + 1)
}

fn parse_vertex(tok: &str, ln: usize, col: usize) -> Result<u32> {
    tok.parse::<u32>().map_err(|_| perr(ln, col, format!("`{tok}` is not a vertex number")))
}

pub fn parse_quiver(text: &str) -> Result<GradedQuiver> {
    let mut vertices: Option<Vec<u32>> = None;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut names = BTreeSet::new();
    let mut ops: Vec<(usize, Option<i64>)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let ln = k + 1;
        let line = raw.split('#').next().unwrap_or("");
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let start = line.len() - line.trim_start().len();
        if let Some(rest) = t.strip_prefix("vertices:") {
            if vertices.is_some() {
                return Err(perr(ln, start + 1, "vertices declared twice"));
            }
            let mut vs = Vec::new();
            let mut from = start + "vertices:".len();
            for tok in rest.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
                let col = col_of(line, tok, from);
                from = col + tok.len() - 1;
                let v = parse_vertex(tok, ln, col)?;
                if vs.contains(&v) {
                    return Err(perr(ln, col, format!("duplicate vertex {v}")));
                }
                vs.push(v);
            }
            vertices = Some(vs);
        } else if let Some(rest) = t.strip_prefix("arrow ") {
            if !ops.is_empty() {
                return Err(perr(ln, start + 1, "arrows must precede `hat` and `double`"));
            }
            let vs = vertices.as_ref().ok_or_else(|| perr(ln, start + 1, "arrow before `vertices:`"))?;
            let (name, ends) = rest.split_once(':').ok_or_else(|| perr(ln, start + 1, "expected `arrow NAME: TAIL -> HEAD [weight W]`"))?;
            let name = name.trim();
            let name_col = col_of(line, name, start + 5);
            if !names.insert(name.to_string()) {
                return Err(perr(ln, name_col, format!("duplicate arrow `{name}`")));
            }
            let toks: Vec<&str> = ends.split_whitespace().collect();
            let spec_from = line.find(':').unwrap_or(0) + 1;
            let (tail, head, weight) = match toks.as_slice() {
                [t, "->", h] => (*t, *h, None),
                [t, "->", h, "weight", w] => (*t, *h, Some(*w)),
                _ => return Err(perr(ln, spec_from + 1, "expected `TAIL -> HEAD [weight W]`")),
            };
            let tcol = col_of(line, tail, spec_from);
            let hcol = col_of(line, head, tcol + tail.len());
            let tv = parse_vertex(tail, ln, tcol)?;
            let hv = parse_vertex(head, ln, hcol)?;
            for (v, c) in [(tv, tcol), (hv, hcol)] {
                if !vs.contains(&v) {
                    return Err(perr(ln, c, format!("undeclared vertex {v}")));
                }
            }
            let w = match weight {
                None => 0,
                Some(w) => {
                    let c = col_of(line, w, hcol + head.len());
                    w.parse::<i64>().ok().filter(|w| *w >= 0).ok_or_else(|| perr(ln, c, format!("`{w}` is not a weight")))?
                }
            };
            let probe = GradedQuiver::new(vec![tv], vec![Arrow::new(name, tv, tv, 0)]);
            if probe.is_err() || name.ends_with(['*', '^']) {
                return Err(perr(ln, name_col, format!("invalid arrow name `{name}`")));
            }
            arrows.push(Arrow::new(name, tv, hv, w));
        } else if t == "hat" {
            ops.push((ln, None));
        } else if let Some(rest) = t.strip_prefix("double weight") {
            let w = rest.trim();
            let c = col_of(line, w, start + "double weight".len());
            let n = w.parse::<i64>().map_err(|_| perr(ln, c, format!("`{w}` is not a weight")))?;
            ops.push((ln, Some(n)));
        } else {
            return Err(perr(ln, start + 1, format!("unrecognized line `{t}`")));
        }
    }
    let vs = vertices.ok_or_else(|| perr(1, 1, "missing `vertices:` line"))?;
    let mut q = GradedQuiver::new(vs, arrows).map_err(|e| perr(1, 1, e.to_string()))?;
    for (ln, op) in ops {
        q = match op {
            None => q.hat_extend(),
            Some(n) => q.double(n),
        }
        .map_err(|e| perr(ln, 1, e.to_string()))?;
    }
    Ok(q)
}

/// A parsed expression: an element of the path, form or polyvector algebra, or a tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Elem(Elem),
    Tensor(Tensor),
}

impl Value {
    pub fn render(&self) -> String {
        match self {
            Value::Elem(e) => e.render(),
            Value::Tensor(t) => t.render(),
        }
    }

    /// Product of elements; an element times a tensor acts on the outer bimodule structure.
    pub fn mul(&self, o: &Value) -> Result<Value> {
        match (self, o) {
            (Value::Elem(x), Value::Elem(y)) => Ok(Value::Elem(x.mul(y)?)),
            (Value::Elem(x), Value::Tensor(t)) => Ok(Value::Tensor(t.lmul(x))),
            (Value::Tensor(t), Value::Elem(y)) => Ok(Value::Tensor(t.rmul(y))),
            _ => Err(Error::InvalidInput("cannot multiply two tensors".into())),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Elem(e) => match e.kind() {
                Kind::Alg => "path",
                Kind::Form => "form",
                Kind::PolyVec => "polyvector",
                Kind::Mixed => "mixed",
            },
            Value::Tensor(_) => "tensor",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn render(v: &Value) -> String {
    v.render()
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    q: &'a Arc<GradedQuiver>,
}

fn starts_factor(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'('
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        perr(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.add(acc, t, false)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.add(acc, t, true)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn add(&self, a: Value, b: Value, neg: bool) -> Result<Value> {
        match (a, b) {
            (Value::Elem(x), Value::Elem(y)) => Ok(Value::Elem(if neg { x.sub(&y) } else { x.add(&y) })),
            (Value::Tensor(x), Value::Tensor(y)) if x.arity() == y.arity() => Ok(Value::Tensor(if neg { x.sub(&y) } else { x.add(&y) })),
            (Value::Tensor(x), Value::Elem(y)) | (Value::Elem(y), Value::Tensor(x)) if y.is_zero() => {
                let t = if neg { x.neg() } else { x };
                Ok(Value::Tensor(t))
            }
            _ => Err(self.err("cannot add an element and a tensor")),
        }
    }

    fn term(&mut self) -> Result<Value> {
        let neg = self.eat(b'-');
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = self.mul(acc, f)?;
        }
        if neg {
            acc = match acc {
                Value::Elem(e) => Value::Elem(e.neg()),
                Value::Tensor(t) => Value::Tensor(t.neg()),
            };
        }
        Ok(acc)
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        a.mul(&b).map_err(|e| match e {
            Error::InvalidInput(m) => self.err(m),
            e => e,
        })
    }

    fn number(&mut self) -> Result<Q> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let num: BigInt = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("bad number"))?;
        if self.pos < self.s.len() && self.s[self.pos] == b'/' {
            self.pos += 1;
            let ds = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let den: BigInt = std::str::from_utf8(&self.s[ds..self.pos]).unwrap().parse().map_err(|_| self.err("bad denominator"))?;
            if den == BigInt::from(0) {
                return Err(perr(1, ds + 1, "zero denominator"));
            }
            return Ok(Q::new(num, den));
        }
        Ok(Q::from_integer(num))
    }

    /// An identifier with its `*`/`^` suffix run resolved.
    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        let mut end = self.pos;
        while end < self.s.len() && (self.s[end] == b'*' || self.s[end] == b'^') {
            end += 1;
        }
        if end > self.pos && self.s[end - 1] == b'*' {
            let mut k = end;
            while k < self.s.len() && self.s[k].is_ascii_whitespace() {
                k += 1;
            }
            if k < self.s.len() && starts_factor(self.s[k]) {
                end -= 1;
            }
        }
        self.pos = end;
        String::from_utf8_lossy(&self.s[start..end]).into_owned()
    }

    fn arrow_named(&mut self, at: usize) -> Result<usize> {
        let name = self.ident();
        let mut i = self.q.find(&name).ok_or_else(|| perr(1, at + 1, format!("unknown identifier `{name}`")))?;
        while self.s.get(self.pos) == Some(&b'.') {
            let dot = self.pos;
            self.pos += 1;
            let suffix = self.ident();
            let next = match suffix.as_str() {
                "star" => self.q.star(i),
                "hat" => self.q.hat(i),
                _ => return Err(perr(1, dot + 1, format!("unknown suffix `.{suffix}`"))),
            };
            i = next.ok_or_else(|| perr(1, dot + 1, format!("`{}` has no `.{suffix}` partner", self.q.arrow(i).name)))?;
        }
        Ok(i)
    }

    fn factor(&mut self) -> Result<Value> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        let at = self.pos;
        if c.is_ascii_digit() {
            let k = self.number()?;
            return Ok(Value::Elem(Elem::one(self.q).scale(&k)));
        }
        if c == b'(' {
            self.pos += 1;
            let first = self.expr()?;
            if self.eat(b'|') {
                let mut parts = vec![first];
                parts.push(self.expr()?);
                if self.eat(b'|') {
                    parts.push(self.expr()?);
                }
                self.expect(b')')?;
                let elems: Vec<Elem> = parts
                    .into_iter()
                    .map(|p| match p {
                        Value::Elem(e) => Ok(e),
                        Value::Tensor(_) => Err(perr(1, at + 1, "nested tensor")),
                    })
                    .collect::<Result<_>>()?;
                let refs: Vec<&Elem> = elems.iter().collect();
                return Ok(Value::Tensor(Tensor::product(&refs)));
            }
            self.expect(b')')?;
            return Ok(first);
        }
        if !(c.is_ascii_alphabetic() || c == b'_') {
            return Err(self.err(format!("unexpected `{}`", c as char)));
        }
        let save = self.pos;
        let mut end = self.pos;
        while end < self.s.len() && (self.s[end].is_ascii_alphanumeric() || self.s[end] == b'_') {
            end += 1;
        }
        let word = &self.s[save..end];
        let call = self.s.get(end) == Some(&b'(');
        if call && word == b"d" {
            self.pos = end + 1;
            let inner = self.expr()?;
            self.expect(b')')?;
            return match inner {
                Value::Elem(e) if e.kind() != Kind::PolyVec && e.kind() != Kind::Mixed => Ok(Value::Elem(univ_d(&e))),
                _ => Err(perr(1, at + 1, "d(..) applies to paths and forms")),
            };
        }
        if call && word == b"D" {
            self.pos = end + 1;
            self.skip_ws();
            let name_at = self.pos;
            let i = self.arrow_named(name_at)?;
            self.expect(b')')?;
            return Ok(Value::Elem(Elem::letter(self.q, Letter::Del(i))));
        }
        if word.len() > 1 && word[0] == b'e' && word[1..].iter().all(|c| c.is_ascii_digit()) && self.s.get(end) != Some(&b'.') {
            let v: u32 = std::str::from_utf8(&word[1..]).unwrap().parse().map_err(|_| self.err("bad vertex"))?;
            if !self.q.has_vertex(v) {
                return Err(perr(1, at + 1, format!("unknown vertex {v}")));
            }
            self.pos = end;
            return Ok(Value::Elem(Elem::idem(self.q, v)));
        }
        let i = self.arrow_named(at)?;
        Ok(Value::Elem(Elem::arrow(self.q, i)))
    }
}

/// Parses an expression over `q`; rejects elements mixing `d` and `D` letters.
pub fn parse_expr(text: &str, q: &Arc<GradedQuiver>) -> Result<Value> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, q };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    let mixed = match &v {
        Value::Elem(e) => e.kind() == Kind::Mixed,
        Value::Tensor(t) => {
            let kinds: Vec<Kind> = t.terms().keys().flatten().map(|w| Elem::word(q, w.clone()).kind()).collect();
            kinds.contains(&Kind::Mixed) || (kinds.contains(&Kind::Form) && kinds.contains(&Kind::PolyVec))
        }
    };
    if mixed {
        return Err(perr(1, 1, "form letters d(..) and polyvector letters D(..) cannot be mixed"));
    }
    Ok(v)
}

/// Parses an expression that must denote an element, not a tensor.
pub fn parse_elem(text: &str, q: &Arc<GradedQuiver>) -> Result<Elem> {
    match parse_expr(text, q)? {
        Value::Elem(e) => Ok(e),
        Value::Tensor(_) => Err(perr(1, 1, "expected an element, found a tensor")),
    }
}

/// The scalar `c` if `e` equals `c` times the unit.
pub fn as_scalar(e: &Elem) -> Option<Q> {
    let c = e.terms().values().next().cloned().unwrap_or_else(Q::zero);
    Elem::one(e.quiver()).scale(&c).eq(e).then_some(c)
}
