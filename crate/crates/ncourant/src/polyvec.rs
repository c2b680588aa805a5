//! Polyvector fields, double brackets, the double Schouten–Nijenhuis bracket,
//! the map from 2-polyvectors to double brackets, and the double Poisson checks.
//!
//! All brackets share one extension engine. A bracket is fixed by its values
//! on pairs of letters and its weight shift `N`; it is extended to words by
//! the Leibniz rule in the second argument (outer structure) and by graded
//! skew-symmetry in the first. Signs use the total degree `|u|` of words and
//! the shifted degree `|u|_N = |u| + N`.

use crate::algebra::{sign, Elem, Letter, PolyVec, Tensor, Word, Q};
use crate::doubleder::DoubleDer;
use crate::error::{Error, Result};
use crate::quiver::GradedQuiver;
use crate::report::CheckReport;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

pub trait DoubleBracket {
    fn quiver(&self) -> &Arc<GradedQuiver>;
    /// Weight shift: `weight(⟨⟨x,y⟩⟩) = |x| + |y| + weight()`.
    fn weight(&self) -> i64;
    /// Value on a pair of single letters.
    fn on_letters(&self, x: Letter, y: Letter) -> Tensor;
}

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

fn tdeg(q: &GradedQuiver, w: &Word) -> i64 {
    w.deg(q).total()
}

/// Extends a bracket from letters to all words, memoizing word pairs.
pub struct Engine<'a> {
    db: &'a dyn DoubleBracket,
    cache: RefCell<HashMap<(Word, Word), Tensor>>,
}

impl<'a> Engine<'a> {
    pub fn new(db: &'a dyn DoubleBracket) -> Engine<'a> {
        Engine { db, cache: RefCell::new(HashMap::new()) }
    }

    pub fn bracket_weight(&self) -> i64 {
        self.db.weight()
    }

    fn q(&self) -> &Arc<GradedQuiver> {
        self.db.quiver()
    }

    /// `|u|_N`.
    pub fn ndeg(&self, w: &Word) -> i64 {
        tdeg(self.q(), w) + self.db.weight()
    }

    pub fn words(&self, u: &Word, v: &Word) -> Tensor {
        if u.is_empty() || v.is_empty() {
            return Tensor::zero(self.q(), 2);
        }
        let key = (u.clone(), v.clone());
        if let Some(t) = self.cache.borrow().get(&key) {
            return t.clone();
        }
        let t = self.compute(u, v);
        self.cache.borrow_mut().insert(key, t.clone());
        t
    }

    fn compute(&self, u: &Word, v: &Word) -> Tensor {
        let q = self.q().clone();
        if v.len() > 1 {
            let un = self.ndeg(u);
            let n = v.len();
            let mut r = Tensor::zero(&q, 2);
            let mut pre = 0i64;
            for k in 0..n {
                let y = Word::letter(&q, v.letters()[k]);
                let inner = self.words(u, &y);
                if !inner.is_zero() {
                    let p = v.slice(&q, 0, k);
                    let s = v.slice(&q, k + 1, n);
                    let sg = sign(odd(un * pre));
                    for (ws, c) in inner.terms() {
                        if let (Some(a), Some(b)) = (p.mul(&ws[0], &q), ws[1].mul(&s, &q)) {
                            r.add_term(vec![a, b], c * &sg);
                        }
                    }
                }
                pre += tdeg(&q, &y);
            }
            return r;
        }
        if u.len() == 1 {
            return self.db.on_letters(u.letters()[0], v.letters()[0]);
        }
        // ⟨⟨u,y⟩⟩ = -(-1)^{|u|_N |y|_N} ⟨⟨y,u⟩⟩°
        let s = sign(!odd(self.ndeg(u) * self.ndeg(v)));
        self.words(v, u).flip().scale(&s)
    }

    pub fn bracket(&self, x: &Elem, y: &Elem) -> Tensor {
        let mut r = Tensor::zero(self.q(), 2);
        for (u, c) in x.terms() {
            for (v, k) in y.terms() {
                let t = self.words(u, v);
                if !t.is_zero() {
                    r.add_assign(&t.scale(&(c * k)));
                }
            }
        }
        r
    }

    /// `{x,y} = m⟨⟨x,y⟩⟩`.
    pub fn assoc(&self, x: &Elem, y: &Elem) -> Elem {
        self.bracket(x, y).multiply()
    }

    /// `⟨⟨a, u⊗v⟩⟩_L = ⟨⟨a,u⟩⟩⊗v`.
    pub fn left(&self, a: &Elem, t: &Tensor) -> Tensor {
        let q = self.q().clone();
        let mut r = Tensor::zero(&q, t.arity() + 1);
        for (ws, c) in t.terms() {
            let inner = self.bracket(a, &Elem::word(&q, ws[0].clone()));
            for (vs, k) in inner.terms() {
                let mut out = vs.clone();
                out.extend(ws[1..].iter().cloned());
                r.add_term(out, c * k);
            }
        }
        r
    }

    /// `⟨⟨a, u⊗v⟩⟩_R = (-1)^{|a|_N |u|} u⊗⟨⟨a,v⟩⟩` on homogeneous `a`.
    pub fn right(&self, a: &Elem, t: &Tensor) -> Tensor {
        let q = self.q().clone();
        let mut r = Tensor::zero(&q, t.arity() + 1);
        for (aw, ac) in a.terms() {
            let an = self.ndeg(aw);
            for (ws, c) in t.terms() {
                let n = ws.len();
                let pre: i64 = ws[..n - 1].iter().map(|w| tdeg(&q, w)).sum();
                let inner = self.words(aw, &ws[n - 1]);
                let s = sign(odd(an * pre));
                for (vs, k) in inner.terms() {
                    let mut out = ws[..n - 1].to_vec();
                    out.extend(vs.iter().cloned());
                    r.add_term(out, ac * c * k * &s);
                }
            }
        }
        r
    }

    /// `⟨⟨u⊗v, c⟩⟩_L = (-1)^{|v|(|c|_N + |y|)} x⊗v⊗y` where `⟨⟨u,c⟩⟩ = x⊗y`.
    pub fn first_left(&self, t: &Tensor, c: &Elem) -> Tensor {
        let q = self.q().clone();
        let mut r = Tensor::zero(&q, 3);
        for (ws, k) in t.terms() {
            let vd = tdeg(&q, &ws[1]);
            for (cw, cc) in c.terms() {
                let cn = self.ndeg(cw);
                let inner = self.words(&ws[0], cw);
                for (xs, m) in inner.terms() {
                    let s = sign(odd(vd * (cn + tdeg(&q, &xs[1]))));
                    r.add_term(vec![xs[0].clone(), ws[1].clone(), xs[1].clone()], k * cc * m * &s);
                }
            }
        }
        r
    }

    /// `{a, u⊗…} = {a,u}⊗… + (-1)^{|a|_N |u|} u⊗{a,…} + …`.
    pub fn assoc_on_tensor(&self, a: &Elem, t: &Tensor) -> Tensor {
        let q = self.q().clone();
        let mut r = Tensor::zero(&q, t.arity());
        for (aw, ac) in a.terms() {
            let an = self.ndeg(aw);
            let single = Elem::word(&q, aw.clone());
            for (ws, c) in t.terms() {
                let mut pre = 0i64;
                for j in 0..ws.len() {
                    let img = self.assoc(&single, &Elem::word(&q, ws[j].clone()));
                    let s = sign(odd(an * pre));
                    for (w, k) in img.terms() {
                        let mut out = ws.clone();
                        out[j] = w.clone();
                        r.add_term(out, ac * c * k * &s);
                    }
                    pre += tdeg(&q, &ws[j]);
                }
            }
        }
        r
    }

    /// `⟨⟨a,⟨⟨b,c⟩⟩⟩⟩_L + s σ_(123)⟨⟨b,⟨⟨c,a⟩⟩⟩⟩_L + s' σ_(132)⟨⟨c,⟨⟨a,b⟩⟩⟩⟩_L`
    /// on single words, with `s = (-1)^{|a|_N(|b|_N+|c|_N)}`, `s' = (-1)^{|c|_N(|a|_N+|b|_N)}`.
    pub fn jacobiator(&self, a: &Word, b: &Word, c: &Word) -> Tensor {
        let q = self.q().clone();
        let (an, bn, cn) = (self.ndeg(a), self.ndeg(b), self.ndeg(c));
        let e = |w: &Word| Elem::word(&q, w.clone());
        let t1 = self.left(&e(a), &self.words(b, c));
        let t2 = self.left(&e(b), &self.words(c, a)).cyc123().scale(&sign(odd(an * (bn + cn))));
        let t3 = self.left(&e(c), &self.words(a, b)).cyc132().scale(&sign(odd(cn * (an + bn))));
        t1.add(&t2).add(&t3)
    }
}

pub fn bracket(db: &dyn DoubleBracket, x: &Elem, y: &Elem) -> Tensor {
    Engine::new(db).bracket(x, y)
}

/// `{x,y} = m∘⟨⟨x,y⟩⟩`.
pub fn assoc_bracket(db: &dyn DoubleBracket, x: &Elem, y: &Elem) -> Elem {
    Engine::new(db).assoc(x, y)
}

/// A bracket given by an explicit table on letter pairs.
#[derive(Debug, Clone)]
pub struct TableBracket {
    q: Arc<GradedQuiver>,
    weight: i64,
    table: BTreeMap<(Letter, Letter), Tensor>,
}

impl TableBracket {
    pub fn new(q: &Arc<GradedQuiver>, weight: i64, table: BTreeMap<(Letter, Letter), Tensor>) -> TableBracket {
        TableBracket { q: q.clone(), weight, table }
    }

    pub fn table(&self) -> &BTreeMap<(Letter, Letter), Tensor> {
        &self.table
    }
}

impl DoubleBracket for TableBracket {
    fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.q
    }
    fn weight(&self) -> i64 {
        self.weight
    }
    fn on_letters(&self, x: Letter, y: Letter) -> Tensor {
        self.table.get(&(x, y)).cloned().unwrap_or_else(|| Tensor::zero(&self.q, 2))
    }
}

#[derive(Debug, Clone)]
pub struct ZeroBracket {
    q: Arc<GradedQuiver>,
    weight: i64,
}

impl ZeroBracket {
    pub fn new(q: &Arc<GradedQuiver>, weight: i64) -> ZeroBracket {
        ZeroBracket { q: q.clone(), weight }
    }
}

impl DoubleBracket for ZeroBracket {
    fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.q
    }
    fn weight(&self) -> i64 {
        self.weight
    }
    fn on_letters(&self, _: Letter, _: Letter) -> Tensor {
        Tensor::zero(&self.q, 2)
    }
}

/// Negates the wrapped bracket on letter pairs `(x, y)` with `x < y`; used to
/// confirm that the checks detect broken skew-symmetry.
pub struct SignFlip<'a>(pub &'a dyn DoubleBracket);

impl DoubleBracket for SignFlip<'_> {
    fn quiver(&self) -> &Arc<GradedQuiver> {
        self.0.quiver()
    }
    fn weight(&self) -> i64 {
        self.0.weight()
    }
    fn on_letters(&self, x: Letter, y: Letter) -> Tensor {
        let t = self.0.on_letters(x, y);
        if x < y {
            t.neg()
        } else {
            t
        }
    }
}

/// The double Schouten–Nijenhuis bracket on polyvectors (weight shift -1).
#[derive(Debug, Clone)]
pub struct SnBracket {
    q: Arc<GradedQuiver>,
}

impl SnBracket {
    pub fn new(q: &Arc<GradedQuiver>) -> SnBracket {
        SnBracket { q: q.clone() }
    }
}

impl DoubleBracket for SnBracket {
    fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.q
    }
    fn weight(&self) -> i64 {
        -1
    }
    fn on_letters(&self, x: Letter, y: Letter) -> Tensor {
        match (x, y) {
            (Letter::Del(i), Letter::Arrow(j)) if i == j => {
                let a = self.q.arrow(i);
                Tensor::idems(&self.q, a.head, a.tail)
            }
            (Letter::Arrow(i), Letter::Del(j)) if i == j => {
                let a = self.q.arrow(i);
                Tensor::idems(&self.q, a.tail, a.head).neg()
            }
            _ => Tensor::zero(&self.q, 2),
        }
    }
}

pub fn sn_bracket(x: &PolyVec, y: &PolyVec) -> Result<Tensor> {
    if x.quiver() != y.quiver() {
        return Err(Error::IncompatibleQuiver);
    }
    Ok(bracket(&SnBracket::new(x.quiver()), x, y))
}

/// Splits a polyvector of tensor degree 1 into homogeneous double derivations.
///
/// The word `p·D(x)·q` sends `x` to `(-1)^{|q||x|+|q|+|p||q|} q⊗p`, which makes
/// evaluation agree with the Schouten–Nijenhuis bracket against `x`.
pub fn to_derivations(pv: &PolyVec) -> Result<Vec<DoubleDer>> {
    let q = pv.quiver().clone();
    let mut by_weight: BTreeMap<i64, BTreeMap<usize, Tensor>> = BTreeMap::new();
    for (w, c) in pv.terms() {
        let dels: Vec<usize> = w.letters().iter().enumerate().filter(|(_, l)| matches!(l, Letter::Del(_))).map(|(k, _)| k).collect();
        if dels.len() != 1 || w.letters().iter().any(|l| matches!(l, Letter::D(_))) {
            return Err(Error::InvalidPolyvectorDegree(format!("{} is not a sum of derivation words", pv)));
        }
        let k = dels[0];
        let x = w.letters()[k].arrow();
        let p = w.slice(&q, 0, k);
        let r = w.slice(&q, k + 1, w.len());
        let (pw, rw, xw) = (p.deg(&q).weight, r.deg(&q).weight, q.arrow(x).weight);
        let s = sign(odd(rw * xw + pw * rw + rw));
        let weight = w.deg(&q).weight;
        let t = by_weight.entry(weight).or_default().entry(x).or_insert_with(|| Tensor::zero(&q, 2));
        t.add_term(vec![r, p], c * s);
    }
    by_weight.into_iter().map(|(wt, vals)| DoubleDer::new(&q, wt, vals)).collect()
}

/// Evaluates a degree-1 polyvector on an algebra element.
pub fn eval(pv: &PolyVec, z: &Elem) -> Result<Tensor> {
    let mut r = Tensor::zero(pv.quiver(), 2);
    for d in to_derivations(pv)? {
        r.add_assign(&d.apply(z));
    }
    Ok(r)
}

/// The derivation word `(-1)^{|u||b|+|u|+|u||v|} v·D(b)·u` whose value on `b` is `u⊗v`.
pub fn word_for_value(q: &Arc<GradedQuiver>, b: usize, t: &Tensor) -> PolyVec {
    let mut r = Elem::zero(q);
    let bw = q.arrow(b).weight;
    for (ws, c) in t.terms() {
        let (uw, vw) = (ws[0].deg(q).weight, ws[1].deg(q).weight);
        let del = Word::letter(q, Letter::Del(b));
        if let Some(w) = ws[1].mul(&del, q).and_then(|x| x.mul(&ws[0], q)) {
            r.add_term(w, c * sign(odd(uw * bw + uw * vw + uw)));
        }
    }
    r
}

/// The polyvector of `b ↦ ⟨⟨x,b⟩⟩`.
pub fn hamiltonian_of(db: &dyn DoubleBracket, x: &Elem) -> PolyVec {
    let q = db.quiver().clone();
    let eng = Engine::new(db);
    let mut r = Elem::zero(&q);
    for b in 0..q.num_arrows() {
        let t = eng.bracket(x, &Elem::arrow(&q, b));
        r.add_assign(&word_for_value(&q, b, &t));
    }
    r
}

/// The double bracket of a 2-polyvector.
#[derive(Debug, Clone)]
pub struct MuBracket {
    q: Arc<GradedQuiver>,
    p: PolyVec,
    weight: i64,
    table: BTreeMap<(Letter, Letter), Tensor>,
}

struct Split {
    coeff: Q,
    theta: PolyVec,
    delta: PolyVec,
    theta_w: i64,
    delta_w: i64,
}

fn split_words(p: &PolyVec) -> Result<Vec<Split>> {
    let q = p.quiver().clone();
    let mut out = Vec::new();
    for (w, c) in p.terms() {
        let dels: Vec<usize> = w.letters().iter().enumerate().filter(|(_, l)| matches!(l, Letter::Del(_))).map(|(k, _)| k).collect();
        if dels.len() != 2 || w.letters().iter().any(|l| matches!(l, Letter::D(_))) {
            return Err(Error::InvalidPolyvectorDegree(format!("term {} has {} derivation letters", w.render(&q), dels.len())));
        }
        let cut = dels[1];
        let theta = w.slice(&q, 0, cut);
        let delta = w.slice(&q, cut, w.len());
        out.push(Split {
            coeff: c.clone(),
            theta_w: theta.deg(&q).weight,
            delta_w: delta.deg(&q).weight,
            theta: Elem::word(&q, theta),
            delta: Elem::word(&q, delta),
        });
    }
    Ok(out)
}

/// `(-1)^{|c''|(|X|+1)} c'·X·c''` for every term `c'⊗c''` of `t`.
fn sandwich(t: &Tensor, x: &PolyVec, xw: i64) -> PolyVec {
    let q = x.quiver().clone();
    let mut r = Elem::zero(&q);
    for (ws, c) in t.terms() {
        let l = Elem::word(&q, ws[0].clone());
        let rr = Elem::word(&q, ws[1].clone());
        let s = sign(odd(ws[1].deg(&q).weight * (xw + 1)));
        r.add_assign(&l.mul_(x).mul_(&rr).scale(&(c * s)));
    }
    r
}

/// `⟨⟨a,b⟩⟩_P = Σ (-1)^{|Δ||a|} (Θ'(a)·Δ·Θ''(a))(b) - (-1)^{|Θ||Δ|+|Θ||a|} (Δ'(a)·Θ·Δ''(a))(b)`
/// for `P = Σ ΘΔ`, homogeneous `a`.
pub fn mu_direct(p: &PolyVec, a: &Elem, b: &Elem) -> Result<Tensor> {
    let q = p.quiver().clone();
    let mut r = Tensor::zero(&q, 2);
    for s in split_words(p)? {
        for (aw, ac) in a.terms() {
            let ae = Elem::word(&q, aw.clone());
            let awt = aw.deg(&q).weight;
            let th_a = eval(&s.theta, &ae)?;
            let de_a = eval(&s.delta, &ae)?;
            let first = eval(&sandwich(&th_a, &s.delta, s.delta_w), b)?.scale(&sign(odd(s.delta_w * awt)));
            let second = eval(&sandwich(&de_a, &s.theta, s.theta_w), b)?.scale(&sign(odd(s.theta_w * s.delta_w + s.theta_w * awt)));
            r.add_assign(&first.sub(&second).scale(&(&s.coeff * ac)));
        }
    }
    Ok(r)
}

pub fn mu(p: &PolyVec) -> Result<MuBracket> {
    let q = p.quiver().clone();
    split_words(p)?;
    let weights: Vec<i64> = p.terms().keys().map(|w| w.deg(&q).weight).collect();
    let weight = weights.first().copied().unwrap_or(0);
    if weights.iter().any(|&w| w != weight) {
        return Err(Error::InvalidWeight("the 2-polyvector must be homogeneous".into()));
    }
    let mut table = BTreeMap::new();
    for i in 0..q.num_arrows() {
        for j in 0..q.num_arrows() {
            let t = mu_direct(p, &Elem::arrow(&q, i), &Elem::arrow(&q, j))?;
            if !t.is_zero() {
                table.insert((Letter::Arrow(i), Letter::Arrow(j)), t);
            }
        }
    }
    Ok(MuBracket { q, p: p.clone(), weight, table })
}

impl MuBracket {
    pub fn polyvector(&self) -> &PolyVec {
        &self.p
    }

    pub fn table(&self) -> &BTreeMap<(Letter, Letter), Tensor> {
        &self.table
    }
}

impl DoubleBracket for MuBracket {
    fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.q
    }
    fn weight(&self) -> i64 {
        self.weight
    }
    fn on_letters(&self, x: Letter, y: Letter) -> Tensor {
        self.table.get(&(x, y)).cloned().unwrap_or_else(|| Tensor::zero(&self.q, 2))
    }
}

/// Homogeneous monomials over the arrows with weight and length at most `bound`.
pub fn arrow_monomials(q: &GradedQuiver, bound: i64) -> Vec<Word> {
    let letters = crate::algebra::arrow_letters(q);
    crate::algebra::monomials(q, &letters, bound.max(0) as usize, bound)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect()
}

/// Leibniz, skew-symmetry, double Jacobi, and the compatibility of the
/// associated bracket with the double bracket, over generators and monomials
/// of weight and length at most `bound`.
pub fn check_double_poisson(db: &dyn DoubleBracket, bound: i64) -> CheckReport {
    check_double_poisson_on(db, &arrow_monomials(db.quiver(), bound), "double-poisson")
}

pub fn check_double_poisson_on(db: &dyn DoubleBracket, mons: &[Word], suite: &str) -> CheckReport {
    let q = db.quiver().clone();
    let eng = Engine::new(db);
    let e = |w: &Word| Elem::word(&q, w.clone());
    let r = |w: &Word| w.render(&q);

    let mut leib = CheckReport::new("leibniz");
    for a in mons {
        let an = eng.ndeg(a);
        for w in mons {
            for k in 1..w.len() {
                let b = w.slice(&q, 0, k);
                let c = w.slice(&q, k, w.len());
                let lhs = eng.words(a, w);
                let rhs = eng
                    .bracket(&e(a), &e(&b))
                    .rmul(&e(&c))
                    .add(&eng.bracket(&e(a), &e(&c)).lmul(&e(&b)).scale(&sign(odd(an * tdeg(&q, &b)))));
                leib.expect_eq(|| vec![r(a), r(&b), r(&c)], &lhs, &rhs);
            }
        }
    }

    let mut skew = CheckReport::new("skew-symmetry");
    for a in mons {
        for b in mons {
            let lhs = eng.words(a, b);
            let s = sign(!odd(eng.ndeg(a) * eng.ndeg(b)));
            let rhs = eng.words(b, a).flip().scale(&s);
            skew.expect_eq(|| vec![r(a), r(b)], &lhs, &rhs);
        }
    }

    let mut jac = CheckReport::new("double-jacobi");
    for a in mons {
        for b in mons {
            for c in mons {
                let t = eng.jacobiator(a, b, c);
                jac.expect_eq(|| vec![r(a), r(b), r(c)], &t, &Tensor::zero(&q, 3));
            }
        }
    }

    let mut mix = CheckReport::new("associated-compatibility");
    for a in mons {
        for b in mons {
            for c in mons {
                let an = eng.ndeg(a);
                let lhs = eng.assoc_on_tensor(&e(a), &eng.words(b, c));
                let ab = eng.assoc(&e(a), &e(b));
                let ac = eng.assoc(&e(a), &e(c));
                let rhs = eng.bracket(&ab, &e(c)).add(&eng.bracket(&e(b), &ac).scale(&sign(odd(an * eng.ndeg(b)))));
                mix.expect_eq(|| vec![r(a), r(b), r(c)], &lhs, &rhs);
            }
        }
    }
    CheckReport::merge(suite, vec![leib, skew, jac, mix])
}

/// Compares the engine's extension of a 2-polyvector bracket with the closed formula on monomial pairs.
pub fn check_mu_extension(mb: &MuBracket, bound: i64) -> CheckReport {
    let q = mb.quiver().clone();
    let eng = Engine::new(mb);
    let mons = arrow_monomials(&q, bound);
    let mut rep = CheckReport::new("mu-extension");
    for a in &mons {
        for b in &mons {
            let (x, y) = (Elem::word(&q, a.clone()), Elem::word(&q, b.clone()));
            let lhs = eng.words(a, b);
            let rhs = mu_direct(mb.polyvector(), &x, &y).expect("validated polyvector");
            rep.expect_eq(|| vec![a.render(&q), b.render(&q)], &lhs, &rhs);
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclic_project;
    use crate::bisymplectic::{canonical_omega, poisson_polyvector};
    use crate::frontend::parse_elem;

    fn parse(q: &Arc<GradedQuiver>, s: &str) -> Elem {
        parse_elem(s, q).unwrap()
    }

    fn pure(q: &Arc<GradedQuiver>, u: &str, v: &str) -> Tensor {
        Tensor::product(&[&parse(q, u), &parse(q, v)])
    }

    fn std_jordan() -> Arc<GradedQuiver> {
        Arc::new(GradedQuiver::jordan().hat_extend().unwrap().double(2).unwrap())
    }

    #[test]
    fn sn_on_generators() {
        let q = Arc::new(GradedQuiver::kronecker().double(0).unwrap());
        let da = parse(&q, "D(a)");
        assert_eq!(sn_bracket(&da, &parse(&q, "a")).unwrap(), Tensor::idems(&q, 2, 1));
        assert!(sn_bracket(&da, &parse(&q, "b")).unwrap().is_zero());
        assert!(sn_bracket(&da, &parse(&q, "D(b)")).unwrap().is_zero());
        assert!(sn_bracket(&parse(&q, "a"), &parse(&q, "b")).unwrap().is_zero());
    }

    #[test]
    fn sn_leibniz_on_products() {
        let q = Arc::new(GradedQuiver::kronecker().double(0).unwrap());
        let da = parse(&q, "D(a)");
        // ⟨⟨D(a), a*·a⟩⟩ = a*·(e2⊗e1) and ⟨⟨D(a), a·a*⟩⟩ = (e2⊗e1)·a*
        assert_eq!(sn_bracket(&da, &parse(&q, "a* * a")).unwrap(), pure(&q, "a*", "e1"));
        assert_eq!(sn_bracket(&da, &parse(&q, "a * a*")).unwrap(), pure(&q, "e2", "a*"));
        let k = Arc::new(GradedQuiver::kronecker());
        assert!(sn_bracket(&da, &parse(&k, "a")).is_err());
    }

    #[test]
    fn sn_is_double_gerstenhaber_on_generators() {
        let q = Arc::new(GradedQuiver::kronecker().double(2).unwrap());
        let mut gens: Vec<Word> = (0..q.num_arrows()).map(|i| Word::letter(&q, Letter::Arrow(i))).collect();
        gens.extend((0..q.num_arrows()).map(|i| Word::letter(&q, Letter::Del(i))));
        let rep = check_double_poisson_on(&SnBracket::new(&q), &gens, "sn");
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn mu_examples() {
        let q = Arc::new(GradedQuiver::jordan().double(0).unwrap());
        let mb = mu(&parse(&q, "D(a)*D(a*)")).unwrap();
        let eng = Engine::new(&mb);
        assert_eq!(eng.bracket(&parse(&q, "a"), &parse(&q, "a*")), Tensor::idems(&q, 1, 1));
        assert!(eng.bracket(&parse(&q, "a"), &parse(&q, "a")).is_zero());
        assert_eq!(eng.assoc(&parse(&q, "a"), &parse(&q, "a*")), parse(&q, "e1"));
        assert!(eng.assoc(&parse(&q, "e1"), &parse(&q, "a*")).is_zero());
        assert!(matches!(mu(&parse(&q, "D(a)")), Err(Error::InvalidPolyvectorDegree(_))));
    }

    #[test]
    fn omega_bracket_on_hat_arrows() {
        let q = std_jordan();
        let bs = canonical_omega(&q).unwrap();
        let eng = bs.engine();
        assert_eq!(eng.bracket(&parse(&q, "a^"), &parse(&q, "a^*")), Tensor::idems(&q, 1, 1));
        // {S₀, â*} = a*
        assert_eq!(eng.assoc(&parse(&q, "a* * a^"), &parse(&q, "a^*")), parse(&q, "a*"));
    }

    #[test]
    fn double_poisson_suites() {
        let q = std_jordan();
        let bs = canonical_omega(&q).unwrap();
        assert!(check_double_poisson(bs.bracket(), 2).passed);
        assert!(check_double_poisson(&ZeroBracket::new(&q, -2), 2).passed);
        let flipped = SignFlip(bs.bracket());
        let rep = check_double_poisson(&flipped, 1);
        assert!(!rep.passed);
        assert!(rep.counterexamples.iter().any(|c| c.inputs[0] == "skew-symmetry"), "{rep}");
    }

    #[test]
    fn engine_agrees_with_closed_formula() {
        let q = Arc::new(GradedQuiver::kronecker().double(2).unwrap());
        let mb = mu(&poisson_polyvector(&q)).unwrap();
        assert!(check_mu_extension(&mb, 3).passed);
    }

    #[test]
    fn ddp_condition_modulo_commutators() {
        let q = std_jordan();
        let p = poisson_polyvector(&q);
        let pp = sn_bracket(&p, &p).unwrap().multiply();
        assert!(cyclic_project(&pp).is_zero());
    }

    #[test]
    fn hamiltonian_words_round_trip() {
        let q = Arc::new(GradedQuiver::jordan().double(2).unwrap());
        let bs = canonical_omega(&q).unwrap();
        let h = hamiltonian_of(bs.bracket(), &parse(&q, "a"));
        assert!(!h.is_zero());
        assert!(h.terms().keys().all(|w| w.letters().contains(&Letter::Del(q.find("a*").unwrap()))));
        assert!(hamiltonian_of(bs.bracket(), &parse(&q, "e1")).is_zero());
        for x in ["a", "a*", "a*a*", "a * a*"] {
            let x = parse(&q, x);
            let h = hamiltonian_of(bs.bracket(), &x);
            for b in ["a", "a*"] {
                let b = parse(&q, b);
                assert_eq!(eval(&h, &b).unwrap(), bs.engine().bracket(&x, &b));
                assert_eq!(sn_bracket(&h, &b).unwrap(), bs.engine().bracket(&x, &b));
            }
        }
    }
}
