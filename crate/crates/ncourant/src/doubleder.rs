//! Double derivations, contraction and Lie operators on forms, and their
//! multiply-back (reduced) versions.

use crate::algebra::{koszul, sign, Deg, Elem, FormElem, Letter, Tensor, Word, Q};
use crate::error::{Error, Result};
use crate::forms::univ_d;
use crate::quiver::GradedQuiver;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A derivation `A -> A⊗A` for the outer bimodule structure, stored by its arrow values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleDer {
    q: Arc<GradedQuiver>,
    weight: i64,
    values: BTreeMap<usize, Tensor>,
}

impl DoubleDer {
    pub fn new(q: &Arc<GradedQuiver>, weight: i64, values: BTreeMap<usize, Tensor>) -> Result<DoubleDer> {
        for (&i, t) in &values {
            if i >= q.num_arrows() {
                return Err(Error::UnknownArrow(format!("#{i}")));
            }
            if t.arity() != 2 {
                return Err(Error::IllTypedTable("values must be 2-tensors".into()));
            }
            let a = q.arrow(i);
            for ws in t.terms().keys() {
                let w = ws[0].deg(q).weight + ws[1].deg(q).weight;
                if ws[0].head(q) != a.head || ws[1].tail() != a.tail || w != a.weight + weight {
                    return Err(Error::IllTypedTable(format!("value on `{}` is not of the expected type", a.name)));
                }
            }
        }
        let values = values.into_iter().filter(|(_, t)| !t.is_zero()).collect();
        Ok(DoubleDer { q: q.clone(), weight, values })
    }

    pub fn zero(q: &Arc<GradedQuiver>, weight: i64) -> DoubleDer {
        DoubleDer { q: q.clone(), weight, values: BTreeMap::new() }
    }

    /// `∂/∂a`: weight `-|a|`, value `e_{h(a)}⊗e_{t(a)}` on `a` and zero elsewhere.
    pub fn coord(q: &Arc<GradedQuiver>, i: usize) -> DoubleDer {
        let a = q.arrow(i);
        let mut values = BTreeMap::new();
        values.insert(i, Tensor::idems(q, a.head, a.tail));
        DoubleDer { q: q.clone(), weight: -a.weight, values }
    }

    /// Weight Euler derivation `a -> |a| e_{h(a)}⊗a`.
    pub fn euler(q: &Arc<GradedQuiver>) -> DoubleDer {
        let mut values = BTreeMap::new();
        for i in 0..q.num_arrows() {
            let a = q.arrow(i);
            if a.weight != 0 {
                let t = Tensor::pure(q, vec![Word::idem(a.head), Word::letter(q, Letter::Arrow(i))], crate::algebra::q(a.weight));
                values.insert(i, t);
            }
        }
        DoubleDer { q: q.clone(), weight: 0, values }
    }

    pub fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.q
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn values(&self) -> &BTreeMap<usize, Tensor> {
        &self.values
    }

    pub fn value(&self, i: usize) -> Tensor {
        self.values.get(&i).cloned().unwrap_or_else(|| Tensor::zero(&self.q, 2))
    }

    pub fn add(&self, o: &DoubleDer) -> Result<DoubleDer> {
        if self.weight != o.weight && !self.values.is_empty() && !o.values.is_empty() {
            return Err(Error::InvalidWeight("sum of double derivations of different weights".into()));
        }
        let weight = if self.values.is_empty() { o.weight } else { self.weight };
        let mut values = self.values.clone();
        for (i, t) in &o.values {
            let e = values.entry(*i).or_insert_with(|| Tensor::zero(&self.q, 2));
            e.add_assign(t);
        }
        DoubleDer::new(&self.q, weight, values)
    }

    pub fn scale(&self, c: &Q) -> DoubleDer {
        let values = self.values.iter().map(|(i, t)| (*i, t.scale(c))).filter(|(_, t)| !t.is_zero()).collect();
        DoubleDer { q: self.q.clone(), weight: self.weight, values }
    }

    fn deg(&self, form: i64) -> Deg {
        Deg { weight: self.weight, form, pv: 0 }
    }

    /// Graded Leibniz extension: `Θ(xy) = Θ(x)y + (-1)^{|Θ||x|} xΘ(y)`, outer actions.
    pub fn apply(&self, x: &Elem) -> Tensor {
        expand(x, self.deg(0), |l| match l {
            Letter::Arrow(i) => self.values.get(&i).cloned(),
            _ => None,
        })
    }

    /// `i_Θ`: bidegree `(|Θ|, -1)`, `i_Θ(a) = 0`, `i_Θ(da) = Θ(a)`.
    pub fn contract(&self, a: &FormElem) -> Tensor {
        expand(a, self.deg(-1), |l| match l {
            Letter::D(i) => self.values.get(&i).cloned(),
            _ => None,
        })
    }

    /// `i_Θ` on a tensor of forms, acting factor by factor with Koszul signs.
    pub fn contract_tensor(&self, t: &Tensor) -> Tensor {
        extend_over(t, self.deg(-1), |e| self.contract(e))
    }

    /// `ι_Θ = ° ∘ i_Θ`.
    pub fn reduced_contract(&self, a: &FormElem) -> FormElem {
        self.contract(a).circ()
    }

    /// `L_Θ`: bidegree `(|Θ|, 0)`, `L_Θ(a) = Θ(a)`, `L_Θ(da) = dΘ(a)`.
    pub fn lie(&self, a: &FormElem) -> Tensor {
        expand(a, self.deg(0), |l| match l {
            Letter::Arrow(i) => self.values.get(&i).cloned(),
            Letter::D(i) => self.values.get(&i).map(d_tensor),
            Letter::Del(_) => None,
        })
    }

    /// `𝓛_Θ = ° ∘ L_Θ`.
    pub fn reduced_lie(&self, a: &FormElem) -> FormElem {
        self.lie(a).circ()
    }
}

pub fn coord_der(q: &Arc<GradedQuiver>, name: &str) -> Result<DoubleDer> {
    let i = q.find(name).ok_or_else(|| Error::UnknownArrow(name.to_string()))?;
    Ok(DoubleDer::coord(q, i))
}

/// Sums `± prefix·f(letter)·suffix` over letter positions, the sign being the
/// Koszul sign of moving an operator of degree `op` past the prefix.
pub(crate) fn expand(x: &Elem, op: Deg, mut f: impl FnMut(Letter) -> Option<Tensor>) -> Tensor {
    let q = x.quiver().clone();
    let mut r = Tensor::zero(&q, 2);
    let mut cache: BTreeMap<Letter, Option<Tensor>> = BTreeMap::new();
    for (w, c) in x.terms() {
        let n = w.len();
        let mut pre_deg = Deg::default();
        for k in 0..n {
            let l = w.letters()[k];
            let val = cache.entry(l).or_insert_with(|| f(l)).clone();
            if let Some(val) = val {
                let pre = w.slice(&q, 0, k);
                let suf = w.slice(&q, k + 1, n);
                let s = sign(koszul(op, pre_deg));
                for (ws, vc) in val.terms() {
                    if let (Some(u), Some(v)) = (pre.mul(&ws[0], &q), ws[1].mul(&suf, &q)) {
                        r.add_term(vec![u, v], c * vc * &s);
                    }
                }
            }
            pre_deg = pre_deg.add(l.deg(&q));
        }
    }
    r
}

/// Extends a map `Ω -> Ω⊗Ω` of degree `op` to tensors of forms by the Koszul rule.
pub(crate) fn extend_over(t: &Tensor, op: Deg, f: impl Fn(&Elem) -> Tensor) -> Tensor {
    let q = t.quiver().clone();
    let n = t.arity();
    let mut r = Tensor::zero(&q, n + 1);
    for (ws, c) in t.terms() {
        let mut pre = Deg::default();
        for j in 0..n {
            let img = f(&Elem::word(&q, ws[j].clone()));
            let s = sign(koszul(op, pre));
            for (vs, vc) in img.terms() {
                let mut out: Vec<Word> = ws[..j].to_vec();
                out.extend(vs.iter().cloned());
                out.extend(ws[j + 1..].iter().cloned());
                r.add_term(out, c * vc * &s);
            }
            pre = pre.add(ws[j].deg(&q));
        }
    }
    r
}

/// `d` on a tensor of forms: `d(u⊗v) = du⊗v + (-1)^{‖u‖} u⊗dv`, any arity.
pub fn d_tensor(t: &Tensor) -> Tensor {
    let q = t.quiver().clone();
    let op = Deg { weight: 0, form: 1, pv: 0 };
    let mut r = Tensor::zero(&q, t.arity());
    for (ws, c) in t.terms() {
        let mut pre = Deg::default();
        for j in 0..ws.len() {
            let dj = univ_d(&Elem::word(&q, ws[j].clone()));
            let s = sign(koszul(op, pre));
            for (w, k) in dj.terms() {
                let mut out = ws.clone();
                out[j] = w.clone();
                r.add_term(out, c * k * &s);
            }
            pre = pre.add(ws[j].deg(&q));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std_jordan() -> Arc<GradedQuiver> {
        Arc::new(GradedQuiver::jordan().hat_extend().unwrap().double(2).unwrap())
    }

    fn dl(q: &Arc<GradedQuiver>, name: &str) -> Elem {
        Elem::letter(q, Letter::D(q.find(name).unwrap()))
    }

    #[test]
    fn coordinate_values() {
        let q = Arc::new(GradedQuiver::kronecker());
        let da = coord_der(&q, "a").unwrap();
        let a = Elem::named(&q, "a");
        let b = Elem::named(&q, "b");
        assert_eq!(da.apply(&a), Tensor::idems(&q, 2, 1));
        assert!(da.apply(&b).is_zero());
        assert!(da.apply(&Elem::one(&q)).is_zero());
        assert!(matches!(coord_der(&q, "zz"), Err(Error::UnknownArrow(_))));
    }

    #[test]
    fn apply_on_square() {
        let q = Arc::new(GradedQuiver::jordan());
        let a = Elem::named(&q, "a");
        let e = Elem::idem(&q, 1);
        let got = coord_der(&q, "a").unwrap().apply(&a.mul(&a).unwrap());
        // oracle: two-term Leibniz expansion
        let expect = Tensor::product(&[&e, &a]).add(&Tensor::product(&[&a, &e]));
        assert_eq!(got, expect);
    }

    #[test]
    fn apply_with_weights() {
        let q = std_jordan();
        let x = Elem::named(&q, "a*").mul(&Elem::named(&q, "a^")).unwrap();
        let got = coord_der(&q, "a^").unwrap().apply(&x);
        // (-1)^{(-1)·2} = +1
        assert_eq!(got, Tensor::product(&[&Elem::named(&q, "a*"), &Elem::idem(&q, 1)]));
    }

    #[test]
    fn contract_examples() {
        let q = Arc::new(GradedQuiver::jordan());
        let da = dl(&q, "a");
        let e = Elem::idem(&q, 1);
        let del = coord_der(&q, "a").unwrap();
        assert_eq!(del.contract(&da), Tensor::product(&[&e, &e]));
        assert!(del.contract(&Elem::named(&q, "a")).is_zero());
        let s = std_jordan();
        let dels = coord_der(&s, "a").unwrap();
        let w = dl(&s, "a").mul(&dl(&s, "a*")).unwrap();
        // k = 0 term only: e ⊗ d(a*)
        let es = Elem::idem(&s, 1);
        assert_eq!(dels.contract(&w), Tensor::product(&[&es, &dl(&s, "a*")]));
        assert_eq!(dels.reduced_contract(&w), dl(&s, "a*"));
        assert!(dels.reduced_contract(&Elem::named(&s, "a")).is_zero());
    }

    #[test]
    fn lie_on_arrow_is_value() {
        let q = std_jordan();
        let th = coord_der(&q, "a^").unwrap().add(&DoubleDer::zero(&q, -1)).unwrap();
        let x = Elem::named(&q, "a^");
        assert_eq!(th.lie(&x), th.apply(&x));
    }

    #[test]
    fn d_tensor_squares_to_zero() {
        let q = std_jordan();
        let t = Tensor::product(&[&Elem::named(&q, "a").mul(&Elem::named(&q, "a^")).unwrap(), &Elem::named(&q, "a*")]);
        assert!(d_tensor(&d_tensor(&t)).is_zero());
    }
}
