//! Derived Courant brackets from a cubic Hamiltonian on a weight-2 doubled
//! quiver, axiom checkers for double Courant algebroids and twisted double
//! Lie–Rinehart algebras, the standard construction and its twists by 3-forms.

use crate::algebra::{cyclic_project, q as qn, Elem, FormElem, Letter, PolyVec, Tensor, Word};
use crate::bisymplectic::{canonical_omega, contract_pv, BiSympl};
use crate::error::{Error, Result};
use crate::forms::{dr_d, dr_normalize, lambda_inject, univ_d};
use crate::polyvec::{eval, sn_bracket, Engine};
use crate::quiver::GradedQuiver;
use crate::report::CheckReport;
use std::sync::Arc;

/// Outcome of twisting by a 3-form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistVerdict {
    pub form: FormElem,
    /// `d_DR[φ] = 0`.
    pub closed: bool,
    /// `[{S,S}_ω] = 0` modulo graded commutators.
    pub master: bool,
}

#[derive(Debug, Clone)]
pub struct CourantData {
    bs: BiSympl,
    s: Elem,
    twist: Option<TwistVerdict>,
}

/// `Σ a*·â` over the weight-0 arrows of a standard quiver.
pub fn standard_hamiltonian(q: &Arc<GradedQuiver>) -> Elem {
    let mut s = Elem::zero(q);
    for i in q.base_arrows() {
        if let (Some(st), Some(h)) = (q.star(i), q.hat(i)) {
            s.add_assign(&Elem::arrow(q, st).mul_(&Elem::arrow(q, h)));
        }
    }
    s
}

fn weight_of(x: &Elem) -> Option<i64> {
    let q = x.quiver();
    let mut ws = x.terms().keys().map(|w| w.deg(q).weight);
    let first = ws.next()?;
    ws.all(|w| w == first).then_some(first)
}

fn is_in_b(q: &GradedQuiver, x: &Elem) -> bool {
    x.terms().keys().all(|w| w.letters().iter().all(|l| matches!(l, Letter::Arrow(i) if q.arrow(*i).weight == 0)))
}

fn require_weight(x: &Elem, w: i64, what: &str) -> Result<()> {
    match weight_of(x) {
        None if x.is_zero() => Ok(()),
        Some(k) if k == w => Ok(()),
        _ => Err(Error::InvalidWeight(format!("{what} must be homogeneous of weight {w}"))),
    }
}

/// Hat-extends and doubles `qz`, with `S₀ = Σ a*â`; checks `ι_{Q₀}ω₀ = dS₀`,
/// `⟨⟨Q₀,Q₀⟩⟩ = 0` and `{S₀,S₀}_ω = 0`.
pub fn build_standard(qz: &GradedQuiver) -> Result<CourantData> {
    let q = Arc::new(qz.hat_extend()?.double(2)?);
    let bs = canonical_omega(&q)?;
    let s = standard_hamiltonian(&q);
    let cd = CourantData { bs, s, twist: None };
    let rep = cd.standard_checks();
    if !rep.passed {
        return Err(Error::InvalidContext(format!("standard data fails its own checks:\n{rep}")));
    }
    Ok(cd)
}

impl CourantData {
    /// Data for an arbitrary cubic Hamiltonian.
    pub fn new(bs: BiSympl, s: Elem) -> Result<CourantData> {
        if bs.quiver().doubling_weight() != Some(2) {
            return Err(Error::InvalidQuiver("Courant data needs a quiver doubled at weight 2".into()));
        }
        if s.quiver() != bs.quiver() {
            return Err(Error::IncompatibleQuiver);
        }
        if s.kind() != crate::algebra::Kind::Alg {
            return Err(Error::InvalidInput("the Hamiltonian must be a path combination".into()));
        }
        require_weight(&s, 3, "the Hamiltonian")?;
        Ok(CourantData { bs, s, twist: None })
    }

    pub fn quiver(&self) -> &Arc<GradedQuiver> {
        self.bs.quiver()
    }

    pub fn bisympl(&self) -> &BiSympl {
        &self.bs
    }

    /// The cubic Hamiltonian `S`.
    pub fn hamiltonian(&self) -> &Elem {
        &self.s
    }

    /// `Q = ⟨⟨S,-⟩⟩_ω`.
    pub fn q_vector(&self) -> PolyVec {
        self.bs.hamiltonian(&self.s)
    }

    pub fn twist_verdict(&self) -> Option<&TwistVerdict> {
        self.twist.as_ref()
    }

    fn engine(&self) -> Engine<'_> {
        self.bs.engine()
    }

    /// `{S,x}_ω`.
    pub fn lift(&self, x: &Elem) -> Elem {
        self.engine().assoc(&self.s, x)
    }

    /// `ρ(e)(b) = ⟨⟨{S,e}_ω, b⟩⟩_ω`.
    pub fn derived_anchor(&self, e: &Elem, b: &Elem) -> Result<Tensor> {
        require_weight(e, 1, "the section")?;
        if !is_in_b(self.quiver(), b) {
            return Err(Error::InvalidWeight("the function must lie in the weight-0 subalgebra".into()));
        }
        Ok(self.engine().bracket(&self.lift(e), b))
    }

    /// `[[e₁,e₂]] = ⟨⟨{S,e₁}_ω, e₂⟩⟩_ω`.
    pub fn derived_dorfman(&self, e1: &Elem, e2: &Elem) -> Result<Tensor> {
        require_weight(e1, 1, "the first section")?;
        require_weight(e2, 1, "the second section")?;
        Ok(self.engine().bracket(&self.lift(e1), e2))
    }

    /// `ρ(e)` as a polyvector over the weight-0 arrows.
    pub fn anchor_polyvector(&self, e: &Elem) -> PolyVec {
        restrict_to_b(&self.bs.hamiltonian(&self.lift(e)))
    }

    /// `ι_Qω = dS`, `⟨⟨Q,Q⟩⟩ = 0` and `{S,S}_ω = 0`.
    pub fn standard_checks(&self) -> CheckReport {
        let q = self.quiver().clone();
        let eng = self.engine();
        let qv = self.q_vector();
        let mut iota = CheckReport::new("iota-q-omega");
        let lhs = contract_pv(&qv, self.bs.omega()).expect("degree-1 polyvector");
        iota.expect_eq(|| vec!["S".into()], &lhs, &univ_d(&self.s));
        let mut qq = CheckReport::new("homological");
        qq.expect_eq(|| vec!["Q".into()], &sn_bracket(&qv, &qv).expect("same quiver"), &Tensor::zero(&q, 2));
        let mut ss = CheckReport::new("master");
        ss.expect_eq(|| vec!["S".into()], &eng.assoc(&self.s, &self.s), &Elem::zero(&q));
        CheckReport::merge("standard", vec![iota, qq, ss])
    }

    /// Twists standard data by a 3-form over the weight-0 subalgebra: `S = S₀ + λ(φ)`.
    pub fn twist(&self, phi: &FormElem) -> Result<CourantData> {
        if !self.quiver().is_standard() {
            return Err(Error::InvalidContext("twisting needs standard data".into()));
        }
        if phi.quiver() != self.quiver() {
            return Err(Error::IncompatibleQuiver);
        }
        if phi.terms().keys().any(|w| w.deg(self.quiver()).form != 3) {
            return Err(Error::InvalidFormDegree("the twisting form must have degree 3".into()));
        }
        let q = self.quiver();
        if phi.terms().keys().any(|w| w.letters().iter().any(|l| q.arrow(l.arrow()).weight != 0)) {
            return Err(Error::InvalidContext("the twisting form must live over the weight-0 arrows".into()));
        }
        let s = standard_hamiltonian(q).add(&lambda_inject(phi)?);
        let closed = dr_d(&dr_normalize(phi)).is_zero();
        let master = cyclic_project(&self.engine().assoc(&s, &s)).is_zero();
        Ok(CourantData { bs: self.bs.clone(), s, twist: Some(TwistVerdict { form: phi.clone(), closed, master }) })
    }
}

/// Keeps the terms of a polyvector whose derivation letter is a weight-0 arrow.
pub fn restrict_to_b(pv: &PolyVec) -> PolyVec {
    let q = pv.quiver().clone();
    let keep = pv.terms().iter().filter(|(w, _)| {
        w.letters().iter().all(|l| match l {
            Letter::Del(i) | Letter::Arrow(i) => q.arrow(*i).weight == 0,
            Letter::D(_) => false,
        })
    });
    Elem::from_terms(&q, keep.map(|(w, c)| (w.clone(), c.clone())))
}

/// The weight-1 arrows as sections.
pub fn weight_one_generators(q: &Arc<GradedQuiver>) -> Vec<Elem> {
    q.arrows_of_weight(1).into_iter().map(|i| Elem::arrow(q, i)).collect()
}

/// Weight-0 monomials of length at most `bound`, idempotents included.
pub fn b_monomials(q: &Arc<GradedQuiver>, bound: i64) -> Vec<Elem> {
    crate::bisymplectic::weight_zero_paths(q, bound.max(0) as usize).into_iter().map(|w| Elem::word(q, w)).collect()
}

fn pair_right(bs: &BiSympl, x: usize, t: &Tensor) -> Tensor {
    let q = bs.quiver();
    let flipped = t.flip();
    // ⟨x, b⊗e⟩_R = b⊗⟨x,e⟩
    let left = bs.pairing_left(x, &flipped);
    let mut r = Tensor::zero(q, 3);
    for (ws, c) in left.terms() {
        r.add_term(vec![ws[2].clone(), ws[0].clone(), ws[1].clone()], c.clone());
    }
    r
}

/// `⟨t, e⟩_L`: `⟨e₁⊗b, e⟩_L = ⟨e₁,e⟩⊗₁b`, zero on `B⊗E`.
fn pair_first_left(bs: &BiSympl, t: &Tensor, e: usize) -> Tensor {
    let q = bs.quiver();
    let mut r = Tensor::zero(q, 3);
    for (ws, c) in t.terms() {
        if ws[0].deg(q).weight != 1 {
            continue;
        }
        // ⟨u,e⟩ = σ⟨e,u⟩ for the symmetric pairing
        let one = Tensor::pure(q, vec![ws[0].clone(), Word::idem(ws[0].tail())], c.clone());
        let pe = bs.pairing_left(e, &one);
        for (vs, k) in pe.terms() {
            r.add_term(vec![vs[1].clone(), ws[1].clone(), vs[0].clone()], k.clone());
        }
    }
    r
}

fn arrow_index(x: &Elem) -> Option<usize> {
    let (w, c) = x.terms().iter().next()?;
    match (x.num_terms(), w.letters()) {
        (1, [Letter::Arrow(i)]) if *c == qn(1) => Some(*i),
        _ => None,
    }
}

/// Axioms of a double Courant algebroid for the derived brackets: both
/// Leibniz rules over weight-0 monomials up to `bound`, the symmetrization
/// identity in its pairing-contracted polarized form, invariance of the
/// pairing in polarized form, and the double Jacobi identity.
pub fn check_courant(cd: &CourantData, gens: &[Elem], bound: i64) -> CheckReport {
    let q = cd.quiver().clone();
    let bs = cd.bisympl();
    let eng = cd.engine();
    let bs_list = b_monomials(&q, bound);
    let lifts: Vec<Elem> = gens.iter().map(|e| cd.lift(e)).collect();
    let dorf = |i: usize, e: &Elem| eng.bracket(&lifts[i], e);

    let mut left = CheckReport::new("left-leibniz");
    let mut right = CheckReport::new("right-leibniz");
    for (i, e1) in gens.iter().enumerate() {
        for e2 in gens {
            let base = dorf(i, e2);
            for b in &bs_list {
                let rho = eng.bracket(&lifts[i], b);
                let lhs = dorf(i, &b.mul_(e2));
                let rhs = rho.rmul(e2).add(&base.lmul(b));
                left.expect_eq(|| vec![e1.render(), b.render(), e2.render()], &lhs, &rhs);
                let lhs = dorf(i, &e2.mul_(b));
                let rhs = rho.lmul(e2).add(&base.rmul(b));
                right.expect_eq(|| vec![e1.render(), e2.render(), b.render()], &lhs, &rhs);
            }
        }
    }

    // Arrow generators only: the pairing is tabulated on arrows.
    let arrows: Vec<(usize, usize)> = gens.iter().enumerate().filter_map(|(k, e)| arrow_index(e).map(|i| (k, i))).collect();
    let mut sym = CheckReport::new("symmetrization");
    let mut inv = CheckReport::new("pairing-invariance");
    for &(k1, a1) in &arrows {
        for &(k2, a2) in &arrows {
            for &(k3, a3) in &arrows {
                let p23 = bs.pairing(a2, a3).expect("weight-1 arrows");
                let rho_l = eng.left(&lifts[k1], &p23);
                let rho_r = eng.right(&lifts[k1], &p23);
                let d23 = dorf(k2, &gens[k3]);
                let d32 = dorf(k3, &gens[k2]);
                let s = d23.add(&d32.flip());
                let names = || vec![gens[k1].render(), gens[k2].render(), gens[k3].render()];
                sym.expect_eq(|| [names(), vec!["L".into()]].concat(), &rho_l, &bs.pairing_left(a1, &s));
                sym.expect_eq(|| [names(), vec!["R".into()]].concat(), &rho_r, &pair_right(bs, a1, &s));
                let rhs = pair_first_left(bs, &dorf(k1, &gens[k2]), a3).add(&pair_right(bs, a2, &dorf(k1, &gens[k3])));
                inv.expect_eq(names, &rho_l, &rhs);
            }
        }
    }

    let mut jac = CheckReport::new("double-jacobi");
    for (i, e1) in gens.iter().enumerate() {
        for (j, e2) in gens.iter().enumerate() {
            for e3 in gens {
                let lhs = eng.left(&lifts[i], &dorf(j, e3));
                let d12 = dorf(i, e2);
                let rhs = eng.right(&lifts[j], &dorf(i, e3)).add(&eng.first_left(&eng.assoc_on_tensor(&cd.s, &d12), e3));
                jac.expect_eq(|| vec![e1.render(), e2.render(), e3.render()], &lhs, &rhs);
            }
        }
    }
    CheckReport::merge("courant", vec![left, right, sym, inv, jac])
}

/// The Loday identity `{a,{b,c}} = {{a,b},c} + (-1)^{|a|_N|b|_N}{b,{a,c}}` on the given triples.
pub fn check_loday(bs: &BiSympl, triples: &[(Elem, Elem, Elem)]) -> CheckReport {
    let eng = bs.engine();
    let mut rep = CheckReport::new("loday");
    for (a, b, c) in triples {
        let sh = |x: &Elem| x.homogeneous_deg().map(|d| d.total() - bs.weight()).unwrap_or(0);
        let s = crate::algebra::sign((sh(a) * sh(b)).rem_euclid(2) == 1);
        let lhs = eng.assoc(a, &eng.assoc(b, c));
        let rhs = eng.assoc(&eng.assoc(a, b), c).add(&eng.assoc(b, &eng.assoc(a, c)).scale(&s));
        rep.expect_eq(|| vec![a.render(), b.render(), c.render()], &lhs, &rhs);
    }
    rep
}

/// `λ(dφ) = m(Q₀(λ(φ)))` on the given forms over the weight-0 arrows, and `⟨⟨â,b̂⟩⟩_ω = 0`.
pub fn check_lambda(cd: &CourantData, forms: &[FormElem]) -> CheckReport {
    let q = cd.quiver().clone();
    let eng = cd.engine();
    let mut rep = CheckReport::new("lambda");
    let qv = cd.q_vector();
    for phi in forms {
        match (lambda_inject(&univ_d(phi)), lambda_inject(phi)) {
            (Ok(lhs), Ok(l)) => {
                let rhs = eval(&qv, &l).expect("degree-1 polyvector").multiply();
                rep.expect_eq(|| vec![phi.render()], &lhs, &rhs);
            }
            (Err(e), _) | (_, Err(e)) => {
                rep.expect(false, || vec![phi.render()], || e.to_string(), String::new);
            }
        }
    }
    let hats: Vec<usize> = q.base_arrows().into_iter().filter_map(|i| q.hat(i)).collect();
    for &x in &hats {
        for &y in &hats {
            let t = eng.bracket(&Elem::arrow(&q, x), &Elem::arrow(&q, y));
            rep.expect_eq(|| vec![q.arrow(x).name.clone(), q.arrow(y).name.clone()], &t, &Tensor::zero(&q, 2));
        }
    }
    rep
}

/// `{S,S}_ω = 0` for untwisted data; for twisted data, agreement of the
/// closedness and master-equation verdicts.
pub fn check_master(cd: &CourantData) -> CheckReport {
    let mut rep = CheckReport::new("master-equation");
    let ss = cd.engine().assoc(&cd.s, &cd.s);
    match &cd.twist {
        None => {
            rep.expect_eq(|| vec![cd.s.render()], &ss, &Elem::zero(cd.quiver()));
            let qv = cd.q_vector();
            rep.expect_eq(|| vec!["<<Q,Q>>".into()], &sn_bracket(&qv, &qv).expect("same quiver"), &Tensor::zero(cd.quiver(), 2));
        }
        Some(v) => {
            rep.note(format!("d_DR[phi] = 0: {}; [{{S,S}}] = 0: {}", v.closed, v.master));
            rep.expect(v.closed == v.master, || vec![v.form.render()], || format!("closed = {}", v.closed), || format!("master = {}", v.master));
            rep.expect(v.master, || vec![v.form.render()], || dr_normalize(&cyclic_project(&ss)).to_string(), || "0".into());
        }
    }
    rep
}

/// Where a factor of a bracket value lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Base,
    Module,
    Twist,
    Other,
}

/// A bilinear bracket and an anchor on a bimodule `N` of sections inside the ambient algebra.
pub struct DlrRules<'a> {
    pub quiver: Arc<GradedQuiver>,
    pub bracket: &'a dyn Fn(&Elem, &Elem) -> Tensor,
    /// `ρ(n)` as a polyvector over the weight-0 arrows.
    pub anchor: &'a dyn Fn(&Elem) -> PolyVec,
    pub slot: &'a dyn Fn(&Word) -> Slot,
}

impl DlrRules<'_> {
    fn rho_on(&self, n: &Elem, b: &Elem) -> Tensor {
        eval(&(self.anchor)(n), b).expect("degree-1 polyvector")
    }

    /// `⟨⟨n, u⊗v⟩⟩_L`: `ρ(n)(u)⊗v` for `u ∈ B`, `⟨⟨n,u⟩⟩⊗v` otherwise.
    fn left(&self, n: &Elem, t: &Tensor) -> Tensor {
        let q = &self.quiver;
        let mut r = Tensor::zero(q, t.arity() + 1);
        for (ws, c) in t.terms() {
            let u = Elem::word(q, ws[0].clone());
            let inner = if (self.slot)(&ws[0]) == Slot::Base { self.rho_on(n, &u) } else { (self.bracket)(n, &u) };
            for (vs, k) in inner.terms() {
                let mut out = vs.clone();
                out.extend(ws[1..].iter().cloned());
                r.add_term(out, c * k);
            }
        }
        r
    }

    /// `ρ` on a tensor by the Leibniz rule, zero on `B` factors.
    fn rho_tensor(&self, t: &Tensor) -> Tensor {
        let q = &self.quiver;
        let mut r = Tensor::zero(q, 2);
        for (ws, c) in t.terms() {
            let (u, v) = (Elem::word(q, ws[0].clone()), Elem::word(q, ws[1].clone()));
            if (self.slot)(&ws[0]) != Slot::Base {
                r.add_assign(&Tensor::product(&[&(self.anchor)(&u), &v]).scale(c));
            }
            if (self.slot)(&ws[1]) != Slot::Base {
                r.add_assign(&Tensor::product(&[&u, &(self.anchor)(&v)]).scale(c));
            }
        }
        r
    }
}

/// Items (a)–(e) of a twisted double Lie–Rinehart algebra, plus the typing of bracket values.
pub fn check_twisted_dlr(rules: &DlrRules, gens: &[Elem], coeffs: &[Elem]) -> CheckReport {
    let q = rules.quiver.clone();
    let br = |x: &Elem, y: &Elem| (rules.bracket)(x, y);
    let mut typing = CheckReport::new("typing");
    let mut skew = CheckReport::new("skew-symmetry");
    let mut lb = CheckReport::new("left-leibniz");
    let mut rb = CheckReport::new("right-leibniz");
    let mut jac = CheckReport::new("double-jacobi");
    let mut anc = CheckReport::new("anchor");
    for n1 in gens {
        for n2 in gens {
            let t = br(n1, n2);
            let ok = t.terms().keys().all(|ws| {
                let s = ((rules.slot)(&ws[0]), (rules.slot)(&ws[1]));
                matches!(s, (Slot::Module, Slot::Base) | (Slot::Base, Slot::Module) | (Slot::Twist, Slot::Twist) | (Slot::Twist, Slot::Base) | (Slot::Base, Slot::Twist))
            });
            typing.expect(ok, || vec![n1.render(), n2.render()], || t.render(), || "N⊗B ⊕ B⊗N ⊕ twisting part".into());
            skew.expect_eq(|| vec![n1.render(), n2.render()], &t, &br(n2, n1).flip().neg());
            for b in coeffs {
                let rho = rules.rho_on(n1, b);
                let lhs = br(n1, &b.mul_(n2));
                lb.expect_eq(|| vec![n1.render(), b.render(), n2.render()], &lhs, &t.lmul(b).add(&rho.rmul(n2)));
                let lhs = br(n1, &n2.mul_(b));
                rb.expect_eq(|| vec![n1.render(), n2.render(), b.render()], &lhs, &t.rmul(b).add(&rho.lmul(n2)));
            }
            let lhs = rules.rho_tensor(&t);
            let rhs = sn_bracket(&(rules.anchor)(n1), &(rules.anchor)(n2)).expect("same quiver");
            anc.expect_eq(|| vec![n1.render(), n2.render()], &lhs, &rhs);
            for n3 in gens {
                let j = rules
                    .left(n1, &br(n2, n3))
                    .add(&rules.left(n2, &br(n3, n1)).cyc123())
                    .add(&rules.left(n3, &br(n1, n2)).cyc132());
                jac.expect_eq(|| vec![n1.render(), n2.render(), n3.render()], &j, &Tensor::zero(&q, 3));
            }
        }
    }
    CheckReport::merge("twisted-dlr", vec![typing, skew, lb, rb, jac, anc])
}

/// Slot of a word for `A²` with twisting part `E₁`.
pub fn weight_slot(q: &GradedQuiver, w: &Word) -> Slot {
    match w.deg(q).weight {
        0 if w.deg(q).form == 0 && w.deg(q).pv == 0 => Slot::Base,
        1 => Slot::Twist,
        2 => Slot::Module,
        _ => Slot::Other,
    }
}

/// Slot of a polyvector word for `DDer B`: one derivation letter over weight-0 arrows.
pub fn dder_slot(q: &GradedQuiver, w: &Word) -> Slot {
    let dels = w.letters().iter().filter(|l| matches!(l, Letter::Del(_))).count();
    let over_b = w.letters().iter().all(|l| !matches!(l, Letter::D(_)) && q.arrow(l.arrow()).weight == 0);
    match (over_b, dels) {
        (true, 0) => Slot::Base,
        (true, 1) => Slot::Module,
        _ => Slot::Other,
    }
}

/// `A²` with the restricted ω-bracket and anchor `a ↦ ⟨⟨a,-⟩⟩|_B`; `anchor_scale`
/// multiplies the anchor for mutation tests.
pub fn check_a2_dlr(bs: &BiSympl, bound: i64, anchor_scale: i64) -> CheckReport {
    let q = bs.quiver().clone();
    let eng = bs.engine();
    let gens: Vec<Elem> = crate::polyvec::arrow_monomials(&q, bound).into_iter().filter(|w| w.deg(&q).weight == 2).map(|w| Elem::word(&q, w)).collect();
    let coeffs = b_monomials(&q, 1);
    let bracket = |x: &Elem, y: &Elem| eng.bracket(x, y);
    let anchor = |n: &Elem| restrict_to_b(&bs.hamiltonian(n)).scale(&qn(anchor_scale));
    let slot = |w: &Word| weight_slot(&q, w);
    let rules = DlrRules { quiver: q.clone(), bracket: &bracket, anchor: &anchor, slot: &slot };
    check_twisted_dlr(&rules, &gens, &coeffs)
}

/// Double derivations of the weight-0 subalgebra with the Schouten–Nijenhuis
/// bracket and the identity anchor (scaled by `anchor_scale`).
pub fn check_dder_dlr(q: &Arc<GradedQuiver>, bound: i64, anchor_scale: i64) -> CheckReport {
    let base: Vec<usize> = q.arrows_of_weight(0);
    let mut alphabet: Vec<Letter> = base.iter().map(|&i| Letter::Arrow(i)).collect();
    alphabet.extend(base.iter().map(|&i| Letter::Del(i)));
    let gens: Vec<Elem> = crate::algebra::monomials(q, &alphabet, bound.max(1) as usize, 0)
        .into_iter()
        .filter(|w| dder_slot(q, w) == Slot::Module)
        .map(|w| Elem::word(q, w))
        .collect();
    let coeffs = b_monomials(q, 1);
    let bracket = |x: &Elem, y: &Elem| sn_bracket(x, y).expect("same quiver");
    let anchor = |n: &Elem| n.scale(&qn(anchor_scale));
    let slot = |w: &Word| dder_slot(q, w);
    let rules = DlrRules { quiver: q.clone(), bracket: &bracket, anchor: &anchor, slot: &slot };
    check_twisted_dlr(&rules, &gens, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_elem;
    use crate::quiver::Arrow;

    fn parse(q: &Arc<GradedQuiver>, s: &str) -> Elem {
        parse_elem(s, q).unwrap()
    }

    fn two_loops() -> GradedQuiver {
        GradedQuiver::new(vec![1], vec![Arrow::new("x", 1, 1, 0), Arrow::new("y", 1, 1, 0)]).unwrap()
    }

    fn suite_passed(rep: &CheckReport, name: &str) -> bool {
        let tag = format!("{name}: pass");
        rep.notes.iter().any(|n| n.starts_with(&tag))
    }

    #[test]
    fn standard_examples() {
        let cd = build_standard(&GradedQuiver::jordan()).unwrap();
        let q = cd.quiver().clone();
        assert_eq!(cd.hamiltonian(), &parse(&q, "a* * a^"));
        let k = build_standard(&GradedQuiver::kronecker()).unwrap();
        assert_eq!(k.hamiltonian().num_terms(), 2);
        let empty = build_standard(&GradedQuiver::arrowless(vec![1]).unwrap()).unwrap();
        assert!(empty.hamiltonian().is_zero());
        assert!(empty.standard_checks().passed);
        let weighted = GradedQuiver::new(vec![1], vec![Arrow::new("a", 1, 1, 1)]).unwrap();
        assert!(build_standard(&weighted).is_err());
    }

    #[test]
    fn anchor_examples() {
        let cd = build_standard(&GradedQuiver::jordan()).unwrap();
        let q = cd.quiver().clone();
        let a = parse(&q, "a");
        assert!(cd.derived_anchor(&parse(&q, "a^"), &a).unwrap().is_zero());
        assert_eq!(cd.derived_anchor(&parse(&q, "a^*"), &a).unwrap(), Tensor::idems(&q, 1, 1));
        assert!(cd.derived_anchor(&parse(&q, "a^*"), &parse(&q, "e1")).unwrap().is_zero());
        assert!(matches!(cd.derived_anchor(&a, &a), Err(Error::InvalidWeight(_))));
        assert!(matches!(cd.derived_anchor(&parse(&q, "a^"), &parse(&q, "a^")), Err(Error::InvalidWeight(_))));
    }

    #[test]
    fn dorfman_examples() {
        let cd = build_standard(&GradedQuiver::jordan()).unwrap();
        let q = cd.quiver().clone();
        let (h, hs) = (parse(&q, "a^"), parse(&q, "a^*"));
        assert!(cd.derived_dorfman(&hs, &hs).unwrap().is_zero());
        assert!(cd.derived_dorfman(&h, &hs).unwrap().is_zero());
        assert!(cd.derived_dorfman(&hs, &h).unwrap().is_zero());
        let twisted = build_standard(&two_loops()).unwrap();
        let t = twisted.quiver().clone();
        assert!(!twisted.derived_dorfman(&parse(&t, "x^*"), &parse(&t, "x * y^")).unwrap().is_zero());
        assert!(matches!(cd.derived_dorfman(&parse(&q, "a"), &h), Err(Error::InvalidWeight(_))));
    }

    #[test]
    fn courant_suites() {
        for base in [GradedQuiver::jordan(), GradedQuiver::kronecker()] {
            let cd = build_standard(&base).unwrap();
            let rep = check_courant(&cd, &weight_one_generators(cd.quiver()), 2);
            assert!(rep.passed, "{rep}");
        }
        let std = build_standard(&GradedQuiver::jordan()).unwrap();
        let zero = CourantData::new(std.bisympl().clone(), Elem::zero(std.quiver())).unwrap();
        assert!(check_courant(&zero, &weight_one_generators(zero.quiver()), 2).passed);
    }

    #[test]
    fn twists() {
        let cd = build_standard(&two_loops()).unwrap();
        let q = cd.quiver().clone();
        let open = cd.twist(&parse(&q, "x*d(x)*d(y)*d(y)")).unwrap();
        let v = open.twist_verdict().unwrap();
        assert!(!v.closed && !v.master);
        let rep = check_courant(&open, &weight_one_generators(&q), 2);
        assert!(!suite_passed(&rep, "double-jacobi"), "{rep}");
        let psi = parse(&q, "x*d(x)*d(y)");
        let exact = cd.twist(&univ_d(&psi)).unwrap();
        assert!(exact.twist_verdict().unwrap().master);
        assert!(check_master(&exact).passed);
        let rep = check_courant(&exact, &weight_one_generators(&q), 2);
        assert!(rep.passed && suite_passed(&rep, "double-jacobi"));
        let none = cd.twist(&Elem::zero(&q)).unwrap();
        assert_eq!(none.hamiltonian(), cd.hamiltonian());
        assert!(matches!(cd.twist(&parse(&q, "d(x)*d(y)")), Err(Error::InvalidFormDegree(_))));
        assert!(matches!(cd.twist(&parse(&q, "d(x^)*d(y)*d(y)")), Err(Error::InvalidContext(_))));
    }

    #[test]
    fn dlr_examples() {
        let cd = build_standard(&GradedQuiver::jordan()).unwrap();
        assert!(check_a2_dlr(cd.bisympl(), 2, 1).passed);
        let good = check_dder_dlr(cd.quiver(), 2, 1);
        assert!(good.passed && suite_passed(&good, "anchor"));
        let mutated = check_dder_dlr(cd.quiver(), 2, 2);
        assert!(!mutated.passed && !suite_passed(&mutated, "anchor"), "{mutated}");
        assert!(!check_a2_dlr(cd.bisympl(), 2, -1).passed);
    }

    #[test]
    fn lambda_loday_master() {
        let cd = build_standard(&GradedQuiver::kronecker()).unwrap();
        let q = cd.quiver().clone();
        let forms: Vec<Elem> = ["a", "d(a)", "a*d(b)", "d(b)*d(a)"].iter().map(|s| parse(&q, s)).collect();
        assert!(check_lambda(&cd, &forms).passed);
        assert!(check_master(&cd).passed);
        let gens: Vec<Elem> = ["a", "a^", "b^*", "a*", "a^* * a"].iter().map(|s| parse(&q, s)).collect();
        let mut triples = vec![];
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    triples.push((x.clone(), y.clone(), z.clone()));
                }
            }
        }
        assert!(check_loday(cd.bisympl(), &triples).passed);
    }
}
