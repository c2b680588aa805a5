//! The canonical bi-symplectic form of a doubled quiver, its Hamiltonian
//! double derivations and bracket, the weight-1 pairing with its flat and
//! sharp maps, and the adjoint checks for endomorphisms of the weight-1 arrows.

use crate::algebra::{q as qn, Elem, FormElem, Letter, PolyVec, Tensor, Word, Q};
use crate::doubleder::DoubleDer;
use crate::error::{Error, Result};
use crate::forms::{dr_normalize, univ_d};
use crate::polyvec::{arrow_monomials, hamiltonian_of, mu, sn_bracket, to_derivations, Engine, MuBracket};
use crate::quiver::GradedQuiver;
use crate::report::CheckReport;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct BiSympl {
    q: Arc<GradedQuiver>,
    omega: FormElem,
    bracket: MuBracket,
}

/// `Σ d(a)·d(a*)` over the original arrows.
pub fn omega_of(q: &Arc<GradedQuiver>) -> FormElem {
    let mut w = Elem::zero(q);
    for i in q.originals() {
        let s = q.star(i).expect("doubled");
        w.add_assign(&Elem::letter(q, Letter::D(i)).mul_(&Elem::letter(q, Letter::D(s))));
    }
    w
}

/// The 2-polyvector whose bracket is the one of `omega_of(q)`.
pub fn poisson_polyvector(q: &Arc<GradedQuiver>) -> PolyVec {
    let mut p = Elem::zero(q);
    for i in q.originals() {
        let s = q.star(i).expect("doubled");
        let w = Word::from_letters(q, vec![Letter::Del(i), Letter::Del(s)]).expect("a* runs backwards");
        p.add_term(w, qn(-1));
    }
    p
}

/// `ι_Θ` of a form, summed over the homogeneous parts of a degree-1 polyvector.
pub fn contract_pv(pv: &PolyVec, form: &FormElem) -> Result<FormElem> {
    let mut r = Elem::zero(form.quiver());
    for d in to_derivations(pv)? {
        r.add_assign(&d.reduced_contract(form));
    }
    Ok(r)
}

pub fn canonical_omega(q: &Arc<GradedQuiver>) -> Result<BiSympl> {
    if !q.is_doubled() {
        return Err(Error::InvalidQuiver("the canonical form needs a doubled quiver".into()));
    }
    let omega = omega_of(q);
    if !univ_d(&omega).is_zero() {
        return Err(Error::InvalidQuiver("omega is not closed".into()));
    }
    let bracket = mu(&poisson_polyvector(q))?;
    let bs = BiSympl { q: q.clone(), omega, bracket };
    for i in 0..q.num_arrows() {
        if !bs.is_hamiltonian_for(&Elem::arrow(q, i)) {
            return Err(Error::InvalidQuiver(format!("Hamiltonian property fails on `{}`", q.arrow(i).name)));
        }
    }
    Ok(bs)
}

impl BiSympl {
    pub fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.q
    }

    pub fn weight(&self) -> i64 {
        self.q.doubling_weight().unwrap_or(0)
    }

    pub fn omega(&self) -> &FormElem {
        &self.omega
    }

    pub fn bracket(&self) -> &MuBracket {
        &self.bracket
    }

    pub fn engine(&self) -> Engine<'_> {
        Engine::new(&self.bracket)
    }

    /// `H_x = ⟨⟨x,-⟩⟩_ω` as a polyvector of degree 1.
    pub fn hamiltonian(&self, x: &Elem) -> PolyVec {
        hamiltonian_of(&self.bracket, x)
    }

    /// `H_{u⊗v} = (-1)^{|v|} H_u⊗v + u⊗H_v`.
    pub fn hamiltonian_tensor(&self, t: &Tensor) -> Tensor {
        let q = &self.q;
        let mut r = Tensor::zero(q, 2);
        for (ws, c) in t.terms() {
            let (u, v) = (Elem::word(q, ws[0].clone()), Elem::word(q, ws[1].clone()));
            let s = crate::algebra::sign(ws[1].deg(q).total().rem_euclid(2) == 1);
            r.add_assign(&Tensor::product(&[&self.hamiltonian(&u), &v]).scale(&(c * s)));
            r.add_assign(&Tensor::product(&[&u, &self.hamiltonian(&v)]).scale(c));
        }
        r
    }

    /// Checks `ι_{H_x} ω = dx`.
    pub fn is_hamiltonian_for(&self, x: &Elem) -> bool {
        contract_pv(&self.hamiltonian(x), &self.omega).map(|f| f == univ_d(x)).unwrap_or(false)
    }

    fn weight_one(&self) -> Vec<usize> {
        self.q.arrows_of_weight(1)
    }

    /// `⟨p,q⟩`: `e_{h(q)}⊗e_{t(q)}` when `q = p*`, else zero.
    pub fn pairing(&self, p: usize, q: usize) -> Result<Tensor> {
        if self.q.doubling_weight() != Some(2) {
            return Err(Error::InvalidContext("the pairing needs a quiver doubled at weight 2".into()));
        }
        for i in [p, q] {
            if i >= self.q.num_arrows() {
                return Err(Error::IndexOutOfRange(format!("arrow #{i}")));
            }
            if self.q.arrow(i).weight != 1 {
                return Err(Error::InvalidArrowWeight(format!("`{}` has weight {}", self.q.arrow(i).name, self.q.arrow(i).weight)));
            }
        }
        Ok(pairing_table(&self.q, p, q))
    }

    /// `⟨x, Σ u⊗v⟩_L = Σ ⟨x,u⟩⊗v` over the terms whose first factor lies in E.
    pub fn pairing_left(&self, x: usize, t: &Tensor) -> Tensor {
        pair_left_with(&self.q, x, t, &|p, q| pairing_table(&self.q, p, q))
    }
}

fn pairing_table(q: &Arc<GradedQuiver>, p: usize, r: usize) -> Tensor {
    if q.star(p) == Some(r) {
        Tensor::idems(q, q.arrow(r).head, q.arrow(r).tail)
    } else {
        Tensor::zero(q, 2)
    }
}

/// The position of the unique weight-1 letter of a weight-1 path.
fn split_e(q: &GradedQuiver, w: &Word) -> Option<usize> {
    let ks: Vec<usize> = (0..w.len()).filter(|&k| w.letters()[k].deg(q).weight == 1).collect();
    (ks.len() == 1 && w.deg(q).weight == 1).then(|| ks[0])
}

/// `⟨x, b₁eb₂⟩ = b₁⟨x,e⟩b₂` on the outer structure.
fn pair_word(q: &Arc<GradedQuiver>, x: usize, w: &Word, pair: &dyn Fn(usize, usize) -> Tensor) -> Tensor {
    let Some(k) = split_e(q, w) else { return Tensor::zero(q, 2) };
    let e = w.letters()[k].arrow();
    let (b1, b2) = (Elem::word(q, w.slice(q, 0, k)), Elem::word(q, w.slice(q, k + 1, w.len())));
    pair(x, e).lmul(&b1).rmul(&b2)
}

fn pair_left_with(q: &Arc<GradedQuiver>, x: usize, t: &Tensor, pair: &dyn Fn(usize, usize) -> Tensor) -> Tensor {
    let mut r = Tensor::zero(q, 3);
    for (ws, c) in t.terms() {
        if ws[0].deg(q).weight != 1 {
            continue;
        }
        for (vs, k) in pair_word(q, x, &ws[0], pair).terms() {
            r.add_term(vec![vs[0].clone(), vs[1].clone(), ws[1].clone()], c * k);
        }
    }
    r
}

fn idem_coeff(t: &Tensor) -> Option<Q> {
    match t.terms().len() {
        0 => Some(Q::zero()),
        1 => {
            let (ws, c) = t.terms().iter().next().unwrap();
            ws.iter().all(|w| w.is_empty()).then(|| c.clone())
        }
        _ => None,
    }
}

/// `(ιω)₁` on the dual basis: `c~ ↦ x` where `ι_{∂/∂c} ω = dx`.
fn sharp_matrix(bs: &BiSympl) -> Option<BTreeMap<(usize, usize), Q>> {
    let q = &bs.q;
    let mut m = BTreeMap::new();
    for c in bs.weight_one() {
        let f = DoubleDer::coord(q, c).reduced_contract(&bs.omega);
        for (w, k) in f.terms() {
            match w.letters() {
                [Letter::D(x)] => {
                    m.insert((c, *x), k.clone());
                }
                _ => return None,
            }
        }
    }
    Some(m)
}

/// The flat map `b ↦ Σ_c ⟨b,c⟩ c~` for the given pairing.
fn flat_matrix(bs: &BiSympl, pair: &dyn Fn(usize, usize) -> Tensor) -> Option<BTreeMap<(usize, usize), Q>> {
    let mut m = BTreeMap::new();
    for b in bs.weight_one() {
        for c in bs.weight_one() {
            let k = idem_coeff(&pair(b, c))?;
            if !k.is_zero() {
                m.insert((b, c), k);
            }
        }
    }
    Some(m)
}

fn compose_is_identity(basis: &[usize], f: &BTreeMap<(usize, usize), Q>, g: &BTreeMap<(usize, usize), Q>, rep: &mut CheckReport, q: &GradedQuiver, label: &str) {
    for &i in basis {
        for &j in basis {
            let mut s = Q::zero();
            for &k in basis {
                if let (Some(x), Some(y)) = (f.get(&(i, k)), g.get(&(k, j))) {
                    s += x * y;
                }
            }
            let want = if i == j { Q::one() } else { Q::zero() };
            rep.expect(s == want, || vec![label.to_string(), q.arrow(i).name.clone(), q.arrow(j).name.clone()], || s.to_string(), || want.to_string());
        }
    }
}

pub fn flat_sharp_check(bs: &BiSympl) -> CheckReport {
    flat_sharp_check_with(bs, &|p, q| pairing_table(&bs.q, p, q))
}

/// Flat followed by sharp, and sharp followed by flat, on the weight-1 arrow basis.
pub fn flat_sharp_check_with(bs: &BiSympl, pair: &dyn Fn(usize, usize) -> Tensor) -> CheckReport {
    let mut rep = CheckReport::new("flat-sharp");
    let basis = bs.weight_one();
    let (Some(sh), Some(fl)) = (sharp_matrix(bs), flat_matrix(bs, pair)) else {
        rep.expect(false, Vec::new, || "not diagonal on the arrow basis".into(), String::new);
        return rep;
    };
    compose_is_identity(&basis, &fl, &sh, &mut rep, &bs.q, "sharp after flat");
    compose_is_identity(&basis, &sh, &fl, &mut rep, &bs.q, "flat after sharp");
    rep
}

/// `eval(Σ a⊗ã)(b) = Σ ã(b)'·a·ã(b)'' = b` for every arrow `b`.
pub fn casimir_check(q: &Arc<GradedQuiver>) -> CheckReport {
    let mut rep = CheckReport::new("casimir");
    for b in 0..q.num_arrows() {
        let be = Elem::arrow(q, b);
        let mut sum = Elem::zero(q);
        for a in 0..q.num_arrows() {
            let ae = Elem::arrow(q, a);
            for (ws, c) in DoubleDer::coord(q, a).apply(&be).terms() {
                let t = Elem::word(q, ws[0].clone()).mul_(&ae).mul_(&Elem::word(q, ws[1].clone()));
                sum.add_assign(&t.scale(c));
            }
        }
        rep.expect_eq(|| vec![q.arrow(b).name.clone()], &sum, &be);
    }
    rep
}

/// An endomorphism of the weight-1 arrows with values in `E⊗B ⊕ B⊗E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoTable {
    q: Arc<GradedQuiver>,
    values: BTreeMap<usize, Tensor>,
}

impl EndoTable {
    pub fn new(q: &Arc<GradedQuiver>, values: BTreeMap<usize, Tensor>) -> Result<EndoTable> {
        for (&c, t) in &values {
            if c >= q.num_arrows() || q.arrow(c).weight != 1 {
                return Err(Error::IllTypedTable(format!("arrow #{c} is not of weight 1")));
            }
            let a = q.arrow(c);
            for ws in t.terms().keys() {
                let shape = (ws[0].deg(q).weight, ws[1].deg(q).weight);
                if t.arity() != 2 || ws[0].head(q) != a.head || ws[1].tail() != a.tail || !(shape == (1, 0) || shape == (0, 1)) {
                    return Err(Error::IllTypedTable(format!("value on `{}` is not in E⊗B ⊕ B⊗E", a.name)));
                }
            }
        }
        let values = values.into_iter().filter(|(_, t)| !t.is_zero()).collect();
        Ok(EndoTable { q: q.clone(), values })
    }

    pub fn zero(q: &Arc<GradedQuiver>) -> EndoTable {
        EndoTable { q: q.clone(), values: BTreeMap::new() }
    }

    pub fn value(&self, c: usize) -> Tensor {
        self.values.get(&c).cloned().unwrap_or_else(|| Tensor::zero(&self.q, 2))
    }

    pub fn values(&self) -> &BTreeMap<usize, Tensor> {
        &self.values
    }

    /// The part of `f(c)` in `E⊗B`.
    pub fn left_part(&self, c: usize) -> Tensor {
        self.value(c).filter(|ws| ws[0].deg(&self.q).weight == 1)
    }

    /// The part of `f(c)` in `B⊗E`.
    pub fn right_part(&self, c: usize) -> Tensor {
        self.value(c).filter(|ws| ws[1].deg(&self.q).weight == 1)
    }

    pub fn add(&self, o: &EndoTable) -> EndoTable {
        let mut values = self.values.clone();
        for (c, t) in &o.values {
            values.entry(*c).or_insert_with(|| Tensor::zero(&self.q, 2)).add_assign(t);
        }
        EndoTable { q: self.q.clone(), values: values.into_iter().filter(|(_, t)| !t.is_zero()).collect() }
    }

    pub fn scale(&self, k: &Q) -> EndoTable {
        let values = self.values.iter().map(|(c, t)| (*c, t.scale(k))).filter(|(_, t)| !t.is_zero()).collect();
        EndoTable { q: self.q.clone(), values }
    }

    pub fn render(&self) -> String {
        if self.values.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.values.iter().map(|(c, t)| format!("{} -> {}", self.q.arrow(*c).name, t)).collect();
        parts.join("; ")
    }
}

impl std::fmt::Display for EndoTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

/// Paths `r, q, p` of weight 0 and weight-1 arrows `a, b` forming `r·a*·q·b·p`.
#[derive(Debug, Clone)]
pub struct AdjointWord {
    pub r: Word,
    pub q: Word,
    pub p: Word,
    pub a: usize,
    pub b: usize,
}

impl AdjointWord {
    fn check(&self, qv: &GradedQuiver) -> Result<usize> {
        for w in [&self.r, &self.q, &self.p] {
            if w.deg(qv).weight != 0 || w.deg(qv).form != 0 || w.deg(qv).pv != 0 {
                return Err(Error::InvalidInput("r, q, p must be paths of weight 0".into()));
            }
        }
        for i in [self.a, self.b] {
            if i >= qv.num_arrows() || qv.arrow(i).weight != 1 {
                return Err(Error::InvalidArrowWeight("a and b must be arrows of weight 1".into()));
            }
        }
        let astar = qv.star(self.a).ok_or_else(|| Error::InvalidQuiver("quiver is not doubled".into()))?;
        let (a, b) = (qv.arrow(self.a), qv.arrow(self.b));
        let ok = self.p.head(qv) == b.tail && b.head == self.q.tail() && self.q.head(qv) == a.head && a.tail == self.r.tail();
        if !ok {
            return Err(Error::NotComposable(format!("r·{}*·q·{}·p", a.name, b.name)));
        }
        Ok(astar)
    }

    /// The path `r·a*·q·b·p`.
    pub fn word(&self, qv: &GradedQuiver) -> Result<Word> {
        let astar = self.check(qv)?;
        let la = Word::letter(qv, Letter::Arrow(astar));
        let lb = Word::letter(qv, Letter::Arrow(self.b));
        let w = self.r.mul(&la, qv).and_then(|x| x.mul(&self.q, qv)).and_then(|x| x.mul(&lb, qv)).and_then(|x| x.mul(&self.p, qv));
        w.ok_or_else(|| Error::NotComposable("r·a*·q·b·p".into()))
    }
}

/// `[r a* q b p]₁`: `a ↦ qbp⊗r`, zero elsewhere.
pub fn basis_first(qv: &Arc<GradedQuiver>, w: &AdjointWord) -> Result<EndoTable> {
    w.check(qv)?;
    let lb = Word::letter(qv, Letter::Arrow(w.b));
    let qbp = w.q.mul(&lb, qv).and_then(|x| x.mul(&w.p, qv)).expect("checked");
    let mut values = BTreeMap::new();
    values.insert(w.a, Tensor::pure(qv, vec![qbp, w.r.clone()], Q::one()));
    EndoTable::new(qv, values)
}

/// `[r a* q b p]₂`: `b* ↦ p⊗ra*q`, zero elsewhere.
pub fn basis_second(qv: &Arc<GradedQuiver>, w: &AdjointWord) -> Result<EndoTable> {
    let astar = w.check(qv)?;
    let bstar = qv.star(w.b).expect("doubled");
    let la = Word::letter(qv, Letter::Arrow(astar));
    let raq = w.r.mul(&la, qv).and_then(|x| x.mul(&w.q, qv)).expect("checked");
    let mut values = BTreeMap::new();
    values.insert(bstar, Tensor::pure(qv, vec![w.p.clone(), raq], Q::one()));
    EndoTable::new(qv, values)
}

/// `c ↦ ⟨⟨r a* q b p, c⟩⟩_ω` on the weight-1 arrows.
pub fn psi_on_basis(bs: &BiSympl, w: &AdjointWord) -> Result<EndoTable> {
    let q = bs.quiver();
    let x = Elem::word(q, w.word(q)?);
    let eng = bs.engine();
    let values = bs.weight_one().into_iter().map(|c| (c, eng.bracket(&x, &Elem::arrow(q, c)))).collect();
    EndoTable::new(q, values)
}

/// `⟨x, f(y)⟩_L = -σ_(132)⟨y, f(x)°⟩_L` over all weight-1 arrow pairs.
pub fn adjoint_membership(f: &EndoTable, bs: &BiSympl) -> CheckReport {
    let mut rep = CheckReport::new("adjoint-membership");
    let q = bs.quiver();
    for x in bs.weight_one() {
        for y in bs.weight_one() {
            let lhs = bs.pairing_left(x, &f.value(y));
            let rhs = bs.pairing_left(y, &f.value(x).flip()).cyc132().neg();
            rep.expect_eq(|| vec![q.arrow(x).name.clone(), q.arrow(y).name.clone()], &lhs, &rhs);
        }
    }
    rep
}

/// Weight-0 paths of length at most `max_len`, idempotents included.
pub fn weight_zero_paths(q: &GradedQuiver, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = q.arrows_of_weight(0).into_iter().map(Letter::Arrow).collect();
    crate::algebra::monomials(q, &letters, max_len, 0)
}

/// Every composable `r a* q b p` with paths of length at most `max_len`.
pub fn adjoint_words(q: &GradedQuiver, max_len: usize) -> Vec<AdjointWord> {
    let paths = weight_zero_paths(q, max_len);
    let ones = q.arrows_of_weight(1);
    let mut out = Vec::new();
    for &a in &ones {
        for &b in &ones {
            for r in &paths {
                for qq in &paths {
                    for p in &paths {
                        let w = AdjointWord { r: r.clone(), q: qq.clone(), p: p.clone(), a, b };
                        if w.check(q).is_ok() {
                            out.push(w);
                        }
                    }
                }
            }
        }
    }
    out
}

/// For each basis word: the ε-combination lies in the adjoint bimodule, and
/// the bracket with the word reproduces it.
pub fn adjoint_basis_check(bs: &BiSympl, max_len: usize) -> CheckReport {
    let q = bs.quiver();
    let mut member = CheckReport::new("membership");
    let mut psi = CheckReport::new("psi");
    for w in adjoint_words(q, max_len) {
        let name = || vec![w.word(q).map(|x| x.render(q)).unwrap_or_default()];
        let combo = basis_second(q, &w).and_then(|s| Ok(s.add(&basis_first(q, &w)?.scale(&qn(-1)))));
        let combo = match combo {
            Ok(c) => c,
            Err(e) => {
                member.expect(false, name, || e.to_string(), String::new);
                continue;
            }
        };
        let m = adjoint_membership(&combo, bs);
        member.expect(m.passed, name, || combo.render(), || "membership".into());
        match psi_on_basis(bs, &w) {
            Ok(t) => {
                psi.expect_eq(name, &t, &combo);
            }
            Err(e) => {
                psi.expect(false, name, || e.to_string(), String::new);
            }
        }
    }
    CheckReport::merge("adjoint-basis", vec![member, psi])
}

/// `X_a(⟨e₁,e₂⟩) = σ_(123)⟨e₁,𝔻_a(e₂)°⟩_L + σ_(132)⟨e₂,𝔻_a(e₁)⟩_L` for weight-2 monomials `a`.
pub fn preservation_check(bs: &BiSympl, bound: i64) -> CheckReport {
    let q = bs.quiver();
    let eng = bs.engine();
    let mut rep = CheckReport::new("pairing-preservation");
    let ones = bs.weight_one();
    for a in arrow_monomials(q, bound).into_iter().filter(|w| w.deg(q).weight == 2) {
        let ae = Elem::word(q, a.clone());
        for &e1 in &ones {
            for &e2 in &ones {
                let lhs = eng.left(&ae, &pairing_table(q, e1, e2));
                let d2 = eng.bracket(&ae, &Elem::arrow(q, e2));
                let d1 = eng.bracket(&ae, &Elem::arrow(q, e1));
                let rhs = bs.pairing_left(e1, &d2.flip()).cyc123().add(&bs.pairing_left(e2, &d1).cyc132());
                rep.expect_eq(|| vec![a.render(q), q.arrow(e1).name.clone(), q.arrow(e2).name.clone()], &lhs, &rhs);
            }
        }
    }
    rep
}

/// `weight ⟨⟨x,y⟩⟩ = |x| + |y| - N` on monomials of weight at most 2.
pub fn weight_relations_check(bs: &BiSympl, bound: i64) -> CheckReport {
    let q = bs.quiver();
    let eng = bs.engine();
    let n = bs.weight();
    let mons: Vec<Word> = arrow_monomials(q, bound).into_iter().filter(|w| w.deg(q).weight <= 2).collect();
    let mut rep = CheckReport::new("weight-relations");
    for x in &mons {
        for y in &mons {
            let t = eng.words(x, y);
            let want = x.deg(q).weight + y.deg(q).weight - n;
            let ok = t.terms().keys().all(|ws| ws[0].deg(q).weight + ws[1].deg(q).weight == want);
            rep.expect(ok, || vec![x.render(q), y.render(q)], || t.render(), || format!("weight {want}"));
        }
    }
    rep
}

/// `⟨⟨H_a,H_b⟩⟩_SN = H_{⟨⟨a,b⟩⟩_ω}`.
pub fn exchange_check(bs: &BiSympl, bound: i64) -> CheckReport {
    let q = bs.quiver();
    let eng = bs.engine();
    let mons = arrow_monomials(q, bound);
    let hams: Vec<PolyVec> = mons.iter().map(|m| bs.hamiltonian(&Elem::word(q, m.clone()))).collect();
    let mut rep = CheckReport::new("hamiltonian-exchange");
    for (i, a) in mons.iter().enumerate() {
        for (j, b) in mons.iter().enumerate() {
            let lhs = sn_bracket(&hams[i], &hams[j]).expect("same quiver");
            let rhs = bs.hamiltonian_tensor(&eng.words(a, b));
            rep.expect_eq(|| vec![a.render(q), b.render(q)], &lhs, &rhs);
        }
    }
    rep
}

/// The full suite for the canonical form of a doubled quiver.
pub fn check_bisymplectic(bs: &BiSympl, bound: i64) -> CheckReport {
    let q = bs.quiver().clone();
    let mut parts = Vec::new();

    let mut closed = CheckReport::new("closed");
    closed.expect_eq(Vec::new, &univ_d(bs.omega()), &Elem::zero(&q));
    parts.push(closed);

    let mut ham = CheckReport::new("hamiltonian");
    for m in arrow_monomials(&q, bound) {
        let x = Elem::word(&q, m.clone());
        let lhs = contract_pv(&bs.hamiltonian(&x), bs.omega()).expect("degree-1 polyvector");
        ham.expect_eq(|| vec![m.render(&q)], &lhs, &univ_d(&x));
    }
    parts.push(ham);

    let mut euler = CheckReport::new("euler");
    let eu = DoubleDer::euler(&q);
    let lie = eu.reduced_lie(bs.omega());
    let scaled = bs.omega().scale(&qn(bs.weight()));
    euler.expect_eq(|| vec!["[L_Eu omega]".into()], &dr_normalize(&lie), &dr_normalize(&scaled));
    euler.expect_eq(|| vec!["d i_Eu omega".into()], &univ_d(&eu.reduced_contract(bs.omega())), &lie);
    parts.push(euler);

    parts.push(weight_relations_check(bs, bound));
    parts.push(exchange_check(bs, bound.min(2)));
    parts.push(casimir_check(&q));

    if q.doubling_weight() == Some(2) {
        let mut agree = CheckReport::new("pairing-agreement");
        let eng = bs.engine();
        for p in bs.weight_one() {
            for r in bs.weight_one() {
                let lhs = eng.bracket(&Elem::arrow(&q, p), &Elem::arrow(&q, r));
                let rhs = bs.pairing(p, r).expect("weight-1 arrows");
                agree.expect_eq(|| vec![q.arrow(p).name.clone(), q.arrow(r).name.clone()], &lhs, &rhs);
            }
        }
        parts.push(agree);
        let mut sym = CheckReport::new("pairing-symmetry");
        for p in bs.weight_one() {
            for r in bs.weight_one() {
                let (x, y) = (bs.pairing(p, r).expect("weight 1"), bs.pairing(r, p).expect("weight 1"));
                sym.expect_eq(|| vec![q.arrow(p).name.clone(), q.arrow(r).name.clone()], &x, &y.flip());
            }
        }
        parts.push(sym);
        parts.push(flat_sharp_check(bs));
        parts.push(preservation_check(bs, bound));
        parts.push(adjoint_basis_check(bs, 1));
    }
    CheckReport::merge("bisymplectic", parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_elem;
    use crate::polyvec::eval;

    fn std_jordan() -> Arc<GradedQuiver> {
        Arc::new(GradedQuiver::jordan().hat_extend().unwrap().double(2).unwrap())
    }

    fn std_kronecker() -> Arc<GradedQuiver> {
        Arc::new(GradedQuiver::kronecker().hat_extend().unwrap().double(2).unwrap())
    }

    fn parse(q: &Arc<GradedQuiver>, s: &str) -> Elem {
        parse_elem(s, q).unwrap()
    }

    fn idx(q: &GradedQuiver, s: &str) -> usize {
        q.find(s).unwrap()
    }

    #[test]
    fn canonical_form_examples() {
        let q = std_jordan();
        let bs = canonical_omega(&q).unwrap();
        assert_eq!(bs.omega(), &parse(&q, "d(a)*d(a*) + d(a^)*d(a^*)"));
        assert!(univ_d(bs.omega()).is_zero());
        let empty = Arc::new(GradedQuiver::arrowless(vec![1, 2]).unwrap().double(2).unwrap());
        assert!(canonical_omega(&empty).unwrap().omega().is_zero());
        let plain = Arc::new(GradedQuiver::jordan());
        assert!(matches!(canonical_omega(&plain), Err(Error::InvalidQuiver(_))));
    }

    #[test]
    fn hamiltonian_examples() {
        let q = std_jordan();
        let bs = canonical_omega(&q).unwrap();
        let ha = bs.hamiltonian(&parse(&q, "a"));
        let astar = idx(&q, "a*");
        assert!(ha.terms().keys().all(|w| w.letters() == [Letter::Del(astar)]));
        assert!(bs.hamiltonian(&parse(&q, "e1")).is_zero());
        // Q₀ = H_{S₀} with Q₀(a) = â⊗e, Q₀(â*) = e⊗a*, zero on a* and â
        let qv = bs.hamiltonian(&parse(&q, "a* * a^"));
        let val = |x: &str| eval(&qv, &parse(&q, x)).unwrap();
        assert_eq!(val("a"), Tensor::product(&[&parse(&q, "a^"), &parse(&q, "e1")]));
        assert_eq!(val("a^*"), Tensor::product(&[&parse(&q, "e1"), &parse(&q, "a*")]));
        assert!(val("a*").is_zero() && val("a^").is_zero());
        for x in ["a", "a^*", "a * a^", "a* * a^ * a"] {
            assert!(bs.is_hamiltonian_for(&parse(&q, x)), "{x}");
        }
    }

    #[test]
    fn pairing_examples() {
        let q = std_jordan();
        let bs = canonical_omega(&q).unwrap();
        let (h, hs) = (idx(&q, "a^"), idx(&q, "a^*"));
        let ee = Tensor::idems(&q, 1, 1);
        assert_eq!(bs.pairing(h, hs).unwrap(), ee);
        assert_eq!(bs.pairing(hs, h).unwrap(), ee);
        assert!(bs.pairing(h, h).unwrap().is_zero());
        assert!(matches!(bs.pairing(idx(&q, "a"), hs), Err(Error::InvalidArrowWeight(_))));
        assert!(matches!(bs.pairing(99, hs), Err(Error::IndexOutOfRange(_))));
        let q0 = Arc::new(GradedQuiver::jordan().double(0).unwrap());
        assert!(matches!(canonical_omega(&q0).unwrap().pairing(0, 1), Err(Error::InvalidContext(_))));
    }

    #[test]
    fn pairing_matches_bracket_on_weight_one() {
        for q in [std_jordan(), std_kronecker()] {
            let bs = canonical_omega(&q).unwrap();
            let ones = q.arrows_of_weight(1);
            for &x in &ones {
                for &y in &ones {
                    let br = bs.engine().bracket(&Elem::arrow(&q, x), &Elem::arrow(&q, y));
                    assert_eq!(bs.pairing(x, y).unwrap(), br);
                    assert_eq!(bs.pairing(x, y).unwrap(), bs.pairing(y, x).unwrap().flip());
                }
            }
        }
    }

    #[test]
    fn flat_and_sharp() {
        for q in [std_jordan(), std_kronecker()] {
            let bs = canonical_omega(&q).unwrap();
            assert!(flat_sharp_check(&bs).passed);
            let flipped = |p: usize, r: usize| pairing_table(&q, p, r).scale(&qn(q.epsilon(p)));
            assert!(!flat_sharp_check_with(&bs, &flipped).passed);
        }
    }

    #[test]
    fn casimir_examples() {
        assert!(casimir_check(&Arc::new(GradedQuiver::jordan())).passed);
        let empty = casimir_check(&Arc::new(GradedQuiver::arrowless(vec![1]).unwrap()));
        assert!(empty.passed && empty.checked == 0);
        let rep = casimir_check(&std_kronecker());
        assert!(rep.passed && rep.checked == 8);
    }

    #[test]
    fn adjoint_examples() {
        let q = std_jordan();
        let bs = canonical_omega(&q).unwrap();
        let (h, e) = (idx(&q, "a^"), Word::idem(1));
        let w = AdjointWord { r: e.clone(), q: e.clone(), p: e.clone(), a: h, b: h };
        assert_eq!(w.word(&q).unwrap().render(&q), "a^**a^");
        let first = basis_first(&q, &w).unwrap();
        let combo = basis_second(&q, &w).unwrap().add(&first.scale(&qn(-1)));
        assert!(adjoint_membership(&combo, &bs).passed);
        assert_eq!(psi_on_basis(&bs, &w).unwrap(), combo);
        assert!(adjoint_membership(&EndoTable::zero(&q), &bs).passed);
        assert!(!adjoint_membership(&first, &bs).passed);
        let bad = AdjointWord { r: Word::letter(&q, Letter::Arrow(idx(&q, "a^"))), ..w };
        assert!(bad.word(&q).is_err());
    }

    #[test]
    fn adjoint_basis_on_kronecker() {
        let q = std_kronecker();
        let bs = canonical_omega(&q).unwrap();
        let rep = adjoint_basis_check(&bs, 1);
        assert!(rep.passed && rep.checked > 0, "{rep}");
    }

    #[test]
    fn endo_tables_are_typed() {
        let q = std_jordan();
        let mut vals = BTreeMap::new();
        vals.insert(idx(&q, "a^"), Tensor::idems(&q, 1, 1));
        assert!(matches!(EndoTable::new(&q, vals), Err(Error::IllTypedTable(_))));
    }

    #[test]
    fn full_suite_on_standard_quivers() {
        for q in [std_jordan(), std_kronecker()] {
            let rep = check_bisymplectic(&canonical_omega(&q).unwrap(), 2);
            assert!(rep.passed, "{rep}");
        }
    }
}
