//! Sparse exact elements of the graded path algebra, its forms and polyvectors,
//! and tensors of arity 2 and 3.
//!
//! One word type serves all three kinds of element. A word is a composable
//! sequence of letters written left to right (`a3*a2*a1` means a1 first); a
//! letter is an arrow, the differential `d(a)` of an arrow, or the coordinate
//! derivation `D(a)`, which behaves like a reversed arrow of weight `-|a|`.

use crate::error::{Error, Result};
use crate::quiver::GradedQuiver;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Arrow(usize),
    D(usize),
    Del(usize),
}

impl Letter {
    pub fn arrow(self) -> usize {
        match self {
            Letter::Arrow(i) | Letter::D(i) | Letter::Del(i) => i,
        }
    }

    pub fn head(self, q: &GradedQuiver) -> u32 {
        let a = q.arrow(self.arrow());
        match self {
            Letter::Del(_) => a.tail,
            _ => a.head,
        }
    }

    pub fn tail(self, q: &GradedQuiver) -> u32 {
        let a = q.arrow(self.arrow());
        match self {
            Letter::Del(_) => a.head,
            _ => a.tail,
        }
    }

    pub fn deg(self, q: &GradedQuiver) -> Deg {
        let w = q.arrow(self.arrow()).weight;
        match self {
            Letter::Arrow(_) => Deg { weight: w, form: 0, pv: 0 },
            Letter::D(_) => Deg { weight: w, form: 1, pv: 0 },
            Letter::Del(_) => Deg { weight: -w, form: 0, pv: 1 },
        }
    }
}

/// Weight, form degree and polyvector degree of a homogeneous word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Deg {
    pub weight: i64,
    pub form: i64,
    pub pv: i64,
}

impl Deg {
    /// Degree entering signs in bracket computations: weight plus polyvector degree.
    pub fn total(self) -> i64 {
        self.weight + self.pv
    }

    pub fn add(self, o: Deg) -> Deg {
        Deg { weight: self.weight + o.weight, form: self.form + o.form, pv: self.pv + o.pv }
    }

    pub fn sub(self, o: Deg) -> Deg {
        Deg { weight: self.weight - o.weight, form: self.form - o.form, pv: self.pv - o.pv }
    }
}

/// Parity of the Koszul exponent for swapping two homogeneous factors.
///
/// Forms use weight and form degree separately; polyvectors use the total
/// degree. The two never mix, so one rule covers both.
pub fn koszul(a: Deg, b: Deg) -> bool {
    (a.total() * b.total() + a.form * b.form).rem_euclid(2) == 1
}

pub fn sign(odd: bool) -> Q {
    if odd {
        -Q::one()
    } else {
        Q::one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    /// Tail vertex; for an empty word this is the vertex of the idempotent.
    vertex: u32,
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&o.letters.len())
            .then_with(|| self.letters.cmp(&o.letters))
            .then_with(|| self.vertex.cmp(&o.vertex))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Word {
    pub fn idem(v: u32) -> Word {
        Word { letters: vec![], vertex: v }
    }

    /// Builds a word from letters written left to right; `None` if not composable.
    pub fn from_letters(q: &GradedQuiver, letters: Vec<Letter>) -> Option<Word> {
        let last = *letters.last()?;
        for w in letters.windows(2) {
            if w[0].tail(q) != w[1].head(q) {
                return None;
            }
        }
        Some(Word { vertex: last.tail(q), letters })
    }

    pub fn letter(q: &GradedQuiver, l: Letter) -> Word {
        Word { letters: vec![l], vertex: l.tail(q) }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn tail(&self) -> u32 {
        self.vertex
    }

    pub fn head(&self, q: &GradedQuiver) -> u32 {
        match self.letters.first() {
            Some(l) => l.head(q),
            None => self.vertex,
        }
    }

    pub fn is_loop(&self, q: &GradedQuiver) -> bool {
        self.head(q) == self.tail()
    }

    pub fn deg(&self, q: &GradedQuiver) -> Deg {
        self.letters.iter().fold(Deg::default(), |acc, l| acc.add(l.deg(q)))
    }

    pub fn mul(&self, o: &Word, q: &GradedQuiver) -> Option<Word> {
        if self.vertex != o.head(q) {
            return None;
        }
        if o.letters.is_empty() {
            return Some(self.clone());
        }
        let mut letters = Vec::with_capacity(self.letters.len() + o.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&o.letters);
        Some(Word { letters, vertex: o.vertex })
    }

    /// Subword of letters `i..j`; empty ranges give the idempotent at the junction.
    pub fn slice(&self, q: &GradedQuiver, i: usize, j: usize) -> Word {
        if i >= j {
            let v = if i < self.letters.len() { self.letters[i].head(q) } else { self.vertex };
            return Word::idem(v);
        }
        Word { letters: self.letters[i..j].to_vec(), vertex: self.letters[j - 1].tail(q) }
    }

    pub fn map_letters(&self, q: &GradedQuiver, f: impl Fn(Letter) -> Letter) -> Option<Word> {
        if self.letters.is_empty() {
            return Some(self.clone());
        }
        Word::from_letters(q, self.letters.iter().map(|&l| f(l)).collect())
    }

    pub fn render(&self, q: &GradedQuiver) -> String {
        if self.letters.is_empty() {
            return format!("e{}", self.vertex);
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                let name = &q.arrow(l.arrow()).name;
                match l {
                    Letter::Arrow(_) => name.clone(),
                    Letter::D(_) => format!("d({name})"),
                    Letter::Del(_) => format!("D({name})"),
                }
            })
            .collect();
        parts.join("*")
    }
}

/// Which kind of element a word or element is, by its letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Alg,
    Form,
    PolyVec,
    Mixed,
}

fn word_kind(w: &Word) -> Kind {
    let d = w.letters.iter().any(|l| matches!(l, Letter::D(_)));
    let p = w.letters.iter().any(|l| matches!(l, Letter::Del(_)));
    match (d, p) {
        (false, false) => Kind::Alg,
        (true, false) => Kind::Form,
        (false, true) => Kind::PolyVec,
        (true, true) => Kind::Mixed,
    }
}

fn same_quiver(a: &Arc<GradedQuiver>, b: &Arc<GradedQuiver>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn add_into<K: Ord>(m: &mut BTreeMap<K, Q>, k: K, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match m.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// A sparse rational combination of words: path algebra element, form or polyvector.
#[derive(Clone, Debug)]
pub struct Elem {
    q: Arc<GradedQuiver>,
    terms: BTreeMap<Word, Q>,
}

pub type AlgElem = Elem;
pub type FormElem = Elem;
pub type PolyVec = Elem;

impl PartialEq for Elem {
    fn eq(&self, o: &Self) -> bool {
        same_quiver(&self.q, &o.q) && self.terms == o.terms
    }
}

impl Eq for Elem {}

impl Elem {
    pub fn zero(q: &Arc<GradedQuiver>) -> Elem {
        Elem { q: q.clone(), terms: BTreeMap::new() }
    }

    /// The unit: the sum of all vertex idempotents.
    pub fn one(q: &Arc<GradedQuiver>) -> Elem {
        let mut e = Elem::zero(q);
        for &v in q.vertices() {
            e.add_term(Word::idem(v), Q::one());
        }
        e
    }

    pub fn idem(q: &Arc<GradedQuiver>, v: u32) -> Elem {
        Elem::word(q, Word::idem(v))
    }

    pub fn word(q: &Arc<GradedQuiver>, w: Word) -> Elem {
        Elem::term(q, w, Q::one())
    }

    pub fn term(q: &Arc<GradedQuiver>, w: Word, c: Q) -> Elem {
        let mut e = Elem::zero(q);
        e.add_term(w, c);
        e
    }

    pub fn letter(q: &Arc<GradedQuiver>, l: Letter) -> Elem {
        Elem::word(q, Word::letter(q, l))
    }

    pub fn arrow(q: &Arc<GradedQuiver>, i: usize) -> Elem {
        Elem::letter(q, Letter::Arrow(i))
    }

    /// Arrow by name; panics if absent. Convenience for tests and examples.
    pub fn named(q: &Arc<GradedQuiver>, name: &str) -> Elem {
        let i = q.find(name).unwrap_or_else(|| panic!("no arrow `{name}`"));
        Elem::arrow(q, i)
    }

    pub fn from_terms(q: &Arc<GradedQuiver>, terms: impl IntoIterator<Item = (Word, Q)>) -> Elem {
        let mut e = Elem::zero(q);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.q
    }

    pub fn terms(&self) -> &BTreeMap<Word, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, Q> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        add_into(&mut self.terms, w, c);
    }

    pub fn add_assign(&mut self, o: &Elem) {
        for (w, c) in &o.terms {
            add_into(&mut self.terms, w.clone(), c.clone());
        }
    }

    pub fn add(&self, o: &Elem) -> Elem {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &Elem) -> Elem {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Elem {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Elem {
        if c.is_zero() {
            return Elem::zero(&self.q);
        }
        Elem { q: self.q.clone(), terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect() }
    }

    pub fn kind(&self) -> Kind {
        let mut kind = Kind::Alg;
        for w in self.terms.keys() {
            kind = match (kind, word_kind(w)) {
                (k, Kind::Alg) => k,
                (Kind::Alg, k) => k,
                (a, b) if a == b => a,
                _ => Kind::Mixed,
            };
        }
        kind
    }

    /// The degree, if every term has the same one.
    pub fn homogeneous_deg(&self) -> Option<Deg> {
        let mut it = self.terms.keys().map(|w| w.deg(&self.q));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn components(&self) -> BTreeMap<Deg, Elem> {
        let mut m: BTreeMap<Deg, Elem> = BTreeMap::new();
        for (w, c) in &self.terms {
            m.entry(w.deg(&self.q)).or_insert_with(|| Elem::zero(&self.q)).add_term(w.clone(), c.clone());
        }
        m
    }

    pub fn weight_component(&self, weight: i64) -> Elem {
        let terms = self.terms.iter().filter(|(w, _)| w.deg(&self.q).weight == weight).map(|(w, c)| (w.clone(), c.clone()));
        Elem::from_terms(&self.q, terms)
    }

    pub fn mul(&self, o: &Elem) -> Result<Elem> {
        if !same_quiver(&self.q, &o.q) {
            return Err(Error::IncompatibleQuiver);
        }
        Ok(self.mul_(o))
    }

    /// Product without the quiver check, for operands known to share a quiver.
    pub(crate) fn mul_(&self, o: &Elem) -> Elem {
        let mut r = Elem::zero(&self.q);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                if let Some(w) = w1.mul(w2, &self.q) {
                    r.add_term(w, c1 * c2);
                }
            }
        }
        r
    }

    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(w, c)| (w.render(&self.q), c)))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn render_coeff(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_terms<'a>(terms: impl Iterator<Item = (String, &'a Q)>) -> String {
    let mut out = String::new();
    for (i, (body, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if a.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&render_coeff(&a));
            out.push('*');
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Left or right end for the jump operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Sparse combination of 2- or 3-tuples of words.
#[derive(Clone, Debug)]
pub struct Tensor {
    q: Arc<GradedQuiver>,
    arity: usize,
    terms: BTreeMap<Vec<Word>, Q>,
}

impl PartialEq for Tensor {
    fn eq(&self, o: &Self) -> bool {
        same_quiver(&self.q, &o.q) && self.arity == o.arity && self.terms == o.terms
    }
}

impl Eq for Tensor {}

impl Tensor {
    pub fn zero(q: &Arc<GradedQuiver>, arity: usize) -> Tensor {
        Tensor { q: q.clone(), arity, terms: BTreeMap::new() }
    }

    pub fn pure(q: &Arc<GradedQuiver>, words: Vec<Word>, c: Q) -> Tensor {
        let mut t = Tensor::zero(q, words.len());
        t.add_term(words, c);
        t
    }

    /// `e_i ⊗ e_j`.
    pub fn idems(q: &Arc<GradedQuiver>, i: u32, j: u32) -> Tensor {
        Tensor::pure(q, vec![Word::idem(i), Word::idem(j)], Q::one())
    }

    /// Tensor product of elements.
    pub fn product(factors: &[&Elem]) -> Tensor {
        let q = factors[0].q.clone();
        let mut acc: Vec<(Vec<Word>, Q)> = vec![(vec![], Q::one())];
        for f in factors {
            let mut next = Vec::new();
            for (ws, c) in &acc {
                for (w, k) in &f.terms {
                    let mut v = ws.clone();
                    v.push(w.clone());
                    next.push((v, c * k));
                }
            }
            acc = next;
        }
        let mut t = Tensor::zero(&q, factors.len());
        for (ws, c) in acc {
            t.add_term(ws, c);
        }
        t
    }

    pub fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.q
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, ws: Vec<Word>, c: Q) {
        debug_assert_eq!(ws.len(), self.arity);
        add_into(&mut self.terms, ws, c);
    }

    pub fn add_assign(&mut self, o: &Tensor) {
        debug_assert_eq!(self.arity, o.arity);
        for (w, c) in &o.terms {
            add_into(&mut self.terms, w.clone(), c.clone());
        }
    }

    pub fn add(&self, o: &Tensor) -> Tensor {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &Tensor) -> Tensor {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Tensor {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Tensor {
        if c.is_zero() {
            return Tensor::zero(&self.q, self.arity);
        }
        Tensor { q: self.q.clone(), arity: self.arity, terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect() }
    }

    /// Applies a signed word-level map to every factor tuple.
    pub fn map_terms(&self, arity: usize, mut f: impl FnMut(&[Word], &Q, &mut Tensor)) -> Tensor {
        let mut r = Tensor::zero(&self.q, arity);
        for (ws, c) in &self.terms {
            f(ws, c, &mut r);
        }
        r
    }

    /// Multiplies factor `slot` by `b` from the given side; `jump` gives the
    /// summed degree of the factors `b` moves past.
    fn act_slot(&self, slot: usize, side: Side, b: &Elem, jump: impl Fn(&[Word]) -> Deg) -> Tensor {
        let q = self.q.clone();
        self.map_terms(self.arity, |ws, c, out| {
            let jd = jump(ws);
            for (bw, bc) in &b.terms {
                let prod = match side {
                    Side::Left => bw.mul(&ws[slot], &q),
                    Side::Right => ws[slot].mul(bw, &q),
                };
                if let Some(p) = prod {
                    let mut v = ws.to_vec();
                    v[slot] = p;
                    let s = sign(koszul(bw.deg(&q), jd));
                    out.add_term(v, c * bc * s);
                }
            }
        })
    }

    /// The i-jump actions: `b *_i (v1⊗…⊗vn) = ±v1⊗…⊗vi⊗b·v(i+1)⊗…` and the mirror
    /// image from the right end. `i = 0` is the outer structure.
    pub fn bimodule_act(&self, i: usize, side: Side, b: &Elem) -> Result<Tensor> {
        if i >= self.arity {
            return Err(Error::IndexOutOfRange(format!("jump {i} on a tensor of arity {}", self.arity)));
        }
        if !same_quiver(&self.q, &b.q) {
            return Err(Error::IncompatibleQuiver);
        }
        let q = self.q.clone();
        Ok(match side {
            Side::Left => self.act_slot(i, side, b, |ws| sum_deg(&q, &ws[..i])),
            Side::Right => {
                let slot = self.arity - 1 - i;
                self.act_slot(slot, side, b, |ws| sum_deg(&q, &ws[slot + 1..]))
            }
        })
    }

    /// Outer left action `b·(u⊗…) = bu⊗…`.
    pub fn lmul(&self, b: &Elem) -> Tensor {
        self.act_slot(0, Side::Left, b, |_| Deg::default())
    }

    /// Outer right action `(…⊗v)·b = …⊗vb`.
    pub fn rmul(&self, b: &Elem) -> Tensor {
        self.act_slot(self.arity - 1, Side::Right, b, |_| Deg::default())
    }

    /// Inserts `u` after `i` jumps from the given end, with the Koszul sign of the jumped factors.
    pub fn insert(&self, i: usize, side: Side, u: &Elem) -> Result<Tensor> {
        if self.arity + 1 > 3 {
            return Err(Error::ArityOverflow);
        }
        if i > self.arity {
            return Err(Error::IndexOutOfRange(format!("jump {i} on a tensor of arity {}", self.arity)));
        }
        let pos = match side {
            Side::Left => i,
            Side::Right => self.arity - i,
        };
        let q = self.q.clone();
        Ok(self.map_terms(self.arity + 1, |ws, c, out| {
            let jumped = match side {
                Side::Left => sum_deg(&q, &ws[..pos]),
                Side::Right => sum_deg(&q, &ws[pos..]),
            };
            for (uw, uc) in &u.terms {
                let mut v = ws.to_vec();
                v.insert(pos, uw.clone());
                out.add_term(v, c * uc * sign(koszul(uw.deg(&q), jumped)));
            }
        }))
    }

    /// `σ_s(b1⊗…⊗bn) = ±b(s⁻¹(1))⊗…⊗b(s⁻¹(n))`; `s[i]` is the image of position `i` (0-based).
    pub fn permute(&self, s: &[usize]) -> Result<Tensor> {
        if s.len() != self.arity {
            return Err(Error::SizeMismatch(format!("permutation of size {} on arity {}", s.len(), self.arity)));
        }
        let mut inv = vec![usize::MAX; s.len()];
        for (i, &j) in s.iter().enumerate() {
            if j >= s.len() || inv[j] != usize::MAX {
                return Err(Error::SizeMismatch("not a permutation".into()));
            }
            inv[j] = i;
        }
        let q = self.q.clone();
        Ok(self.map_terms(self.arity, |ws, c, out| {
            let degs: Vec<Deg> = ws.iter().map(|w| w.deg(&q)).collect();
            let mut odd = false;
            for i in 0..inv.len() {
                for j in i + 1..inv.len() {
                    if inv[i] > inv[j] {
                        odd ^= koszul(degs[inv[i]], degs[inv[j]]);
                    }
                }
            }
            let v = inv.iter().map(|&k| ws[k].clone()).collect();
            out.add_term(v, c * sign(odd));
        }))
    }

    /// The flip `σ_(12)` on arity-2 tensors.
    pub fn flip(&self) -> Tensor {
        self.permute(&[1, 0]).expect("flip needs arity 2")
    }

    /// `σ_(123)(b1⊗b2⊗b3) = ±b3⊗b1⊗b2`.
    pub fn cyc123(&self) -> Tensor {
        self.permute(&[1, 2, 0]).expect("arity 3")
    }

    /// `σ_(132)(b1⊗b2⊗b3) = ±b2⊗b3⊗b1`.
    pub fn cyc132(&self) -> Tensor {
        self.permute(&[2, 0, 1]).expect("arity 3")
    }

    /// Signed multiply-back `°(u⊗v) = (-1)^{κ(u,v)} vu`.
    pub fn circ(&self) -> Elem {
        assert_eq!(self.arity, 2, "circ needs arity 2");
        let mut r = Elem::zero(&self.q);
        for (ws, c) in &self.terms {
            if let Some(w) = ws[1].mul(&ws[0], &self.q) {
                r.add_term(w, c * sign(koszul(ws[0].deg(&self.q), ws[1].deg(&self.q))));
            }
        }
        r
    }

    /// Plain multiplication `m(u⊗v) = uv`.
    pub fn multiply(&self) -> Elem {
        assert_eq!(self.arity, 2, "multiply needs arity 2");
        let mut r = Elem::zero(&self.q);
        for (ws, c) in &self.terms {
            if let Some(w) = ws[0].mul(&ws[1], &self.q) {
                r.add_term(w, c.clone());
            }
        }
        r
    }

    /// Terms whose factor tuple satisfies the predicate.
    pub fn filter(&self, mut keep: impl FnMut(&[Word]) -> bool) -> Tensor {
        self.map_terms(self.arity, |ws, c, out| {
            if keep(ws) {
                out.add_term(ws.to_vec(), c.clone());
            }
        })
    }

    pub fn render(&self) -> String {
        let q = &self.q;
        render_terms(
            self.terms.iter().map(|(ws, c)| {
                let inner: Vec<String> = ws.iter().map(|w| w.render(q)).collect();
                (format!("({})", inner.join(" | ")), c)
            }),
        )
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn sum_deg(q: &GradedQuiver, ws: &[Word]) -> Deg {
    ws.iter().fold(Deg::default(), |acc, w| acc.add(w.deg(q)))
}

/// Minimal cyclic rotation of a loop word with its sign; `None` if the class vanishes.
///
/// Moving the last letter `x` of `u·x` to the front costs `(-1)^{κ(u,x)}`.
pub fn cyclic_word(q: &GradedQuiver, w: &Word) -> Option<(Word, bool)> {
    if w.is_empty() {
        return Some((w.clone(), false));
    }
    if !w.is_loop(q) {
        return None;
    }
    let n = w.len();
    let mut cur = w.letters.clone();
    let mut odd = false;
    let mut best: (Vec<Letter>, bool) = (cur.clone(), false);
    let mut clash = false;
    for _ in 1..n {
        let x = cur.pop().unwrap();
        let xd = x.deg(q);
        let ud = cur.iter().fold(Deg::default(), |acc, l| acc.add(l.deg(q)));
        odd ^= koszul(ud, xd);
        cur.insert(0, x);
        match cur.cmp(&best.0) {
            std::cmp::Ordering::Less => {
                best = (cur.clone(), odd);
                clash = false;
            }
            std::cmp::Ordering::Equal => {
                if odd != best.1 {
                    clash = true;
                }
            }
            std::cmp::Ordering::Greater => {}
        }
    }
    if clash {
        return None;
    }
    let word = Word::from_letters(q, best.0).expect("rotation of a loop is composable");
    Some((word, best.1))
}

/// Canonical representative modulo graded commutators.
pub fn cyclic_normalize(x: &Elem) -> Elem {
    let mut r = Elem::zero(&x.q);
    for (w, c) in &x.terms {
        if let Some((v, odd)) = cyclic_word(&x.q, w) {
            r.add_term(v, c * sign(odd));
        }
    }
    r
}

/// The class of `x` in `A/[A,A]`; non-loop paths vanish.
pub fn cyclic_project(x: &AlgElem) -> AlgElem {
    cyclic_normalize(x)
}

/// Graded commutator `xy - (-1)^{κ(x,y)} yx` for homogeneous operands.
pub fn graded_commutator(x: &Elem, y: &Elem) -> Elem {
    let mut r = x.mul_(y);
    for (w1, c1) in &x.terms {
        for (w2, c2) in &y.terms {
            if let Some(w) = w2.mul(w1, &x.q) {
                let s = sign(!koszul(w1.deg(&x.q), w2.deg(&x.q)));
                r.add_term(w, c1 * c2 * s);
            }
        }
    }
    r
}

/// All composable words over `alphabet` with length at most `max_len` and
/// weight at most `max_weight`, including idempotents, in canonical order.
pub fn monomials(q: &GradedQuiver, alphabet: &[Letter], max_len: usize, max_weight: i64) -> Vec<Word> {
    let mut out: Vec<Word> = q.vertices().iter().map(|&v| Word::idem(v)).collect();
    let mut frontier: Vec<Word> = alphabet.iter().map(|&l| Word::letter(q, l)).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in frontier {
            for &l in alphabet {
                if let Some(v) = w.mul(&Word::letter(q, l), q) {
                    next.push(v);
                }
            }
            if w.deg(q).weight <= max_weight {
                out.push(w);
            }
        }
        frontier = next;
    }
    out.sort();
    out.dedup();
    out
}

pub fn arrow_letters(q: &GradedQuiver) -> Vec<Letter> {
    (0..q.num_arrows()).map(Letter::Arrow).collect()
}
