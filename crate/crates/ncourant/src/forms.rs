//! Non-commutative differential forms, the Karoubi–de Rham quotient and the
//! substitution of forms over the weight-0 part into the standard algebra.

use crate::algebra::{cyclic_normalize, sign, Elem, FormElem, Letter, Word};
use crate::error::{Error, Result};
use std::fmt;

/// The universal differential: an arrow letter becomes its d-letter, with the
/// sign `(-1)` per d-letter already to its left. Idempotents and d-letters
/// are killed.
pub fn univ_d(x: &Elem) -> FormElem {
    let q = x.quiver().clone();
    let mut r = Elem::zero(&q);
    for (w, c) in x.terms() {
        let mut odd = false;
        for (k, l) in w.letters().iter().enumerate() {
            match l {
                Letter::Arrow(i) => {
                    let mut letters = w.letters().to_vec();
                    letters[k] = Letter::D(*i);
                    let v = Word::from_letters(&q, letters).expect("same endpoints");
                    r.add_term(v, c * sign(odd));
                }
                Letter::D(_) => odd = !odd,
                Letter::Del(_) => {}
            }
        }
    }
    r
}

pub fn form_mul(a: &FormElem, b: &FormElem) -> Result<FormElem> {
    a.mul(b)
}

/// A form in cyclic normal form: a class in the Karoubi–de Rham complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrClass(Elem);

impl DrClass {
    pub fn rep(&self) -> &Elem {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for DrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

pub fn dr_normalize(a: &FormElem) -> DrClass {
    DrClass(cyclic_normalize(a))
}

pub fn dr_d(c: &DrClass) -> DrClass {
    dr_normalize(&univ_d(&c.0))
}

/// Substitutes `d(a) -> a^` in a form over the weight-0 arrows of a standard quiver.
pub fn lambda_inject(phi: &FormElem) -> Result<Elem> {
    let q = phi.quiver().clone();
    let mut r = Elem::zero(&q);
    for (w, c) in phi.terms() {
        let mut letters = Vec::with_capacity(w.len());
        for &l in w.letters() {
            let i = l.arrow();
            let hat = q.hat(i).ok_or_else(|| {
                Error::InvalidContext(format!("arrow `{}` has no hat partner", q.arrow(i).name))
            })?;
            letters.push(match l {
                Letter::Arrow(_) => Letter::Arrow(i),
                Letter::D(_) => Letter::Arrow(hat),
                Letter::Del(_) => return Err(Error::InvalidContext("polyvector letter in a form".into())),
            });
        }
        let v = if letters.is_empty() { w.clone() } else { Word::from_letters(&q, letters).expect("hats share endpoints") };
        r.add_term(v, c.clone());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Arrow, GradedQuiver};
    use std::sync::Arc;

    fn std_jordan() -> Arc<GradedQuiver> {
        Arc::new(GradedQuiver::jordan().hat_extend().unwrap().double(2).unwrap())
    }

    fn dl(q: &Arc<GradedQuiver>, name: &str) -> Elem {
        Elem::letter(q, Letter::D(q.find(name).unwrap()))
    }

    #[test]
    fn d_of_idempotent() {
        let q = std_jordan();
        assert!(univ_d(&Elem::idem(&q, 1)).is_zero());
    }

    #[test]
    fn leibniz_on_weight_zero() {
        let q = Arc::new(GradedQuiver::kronecker().double(0).unwrap());
        let a = Elem::named(&q, "a");
        let b = Elem::named(&q, "b*");
        let ab = a.mul(&b).unwrap();
        let rhs = univ_d(&a).mul(&b).unwrap().add(&a.mul(&univ_d(&b)).unwrap());
        assert_eq!(univ_d(&ab), rhs);
    }

    #[test]
    fn d_of_a_da() {
        let q = Arc::new(GradedQuiver::jordan());
        let a = Elem::named(&q, "a");
        let x = a.mul(&univ_d(&a)).unwrap();
        let da = dl(&q, "a");
        assert_eq!(univ_d(&x), da.mul(&da).unwrap());
    }

    #[test]
    fn form_mul_examples() {
        let q = std_jordan();
        let w = form_mul(&dl(&q, "a"), &dl(&q, "a*")).unwrap();
        assert_eq!(w.render(), "d(a)*d(a*)");
        assert_eq!(form_mul(&w, &Elem::one(&q)).unwrap(), w);
        let b = Elem::named(&q, "a^");
        let m = form_mul(&form_mul(&dl(&q, "a"), &b).unwrap(), &dl(&q, "a")).unwrap();
        assert_eq!(m.render(), "d(a)*a^*d(a)");
    }

    #[test]
    fn dr_examples() {
        let q = std_jordan();
        let h = Elem::named(&q, "a^");
        let s = Elem::named(&q, "a*");
        let x = h.mul(&s).unwrap().sub(&s.mul(&h).unwrap());
        assert!(dr_normalize(&x).is_zero());
        let k = Arc::new(GradedQuiver::kronecker());
        let da = dl(&k, "a");
        assert!(dr_normalize(&da).is_zero());
        let e = Elem::idem(&q, 1);
        assert_eq!(dr_normalize(&e).rep(), &e);
        assert!(dr_d(&dr_normalize(&e)).is_zero());
    }

    #[test]
    fn lambda_examples() {
        let q = std_jordan();
        assert_eq!(lambda_inject(&dl(&q, "a")).unwrap(), Elem::named(&q, "a^"));
        let e = Elem::idem(&q, 1);
        assert_eq!(lambda_inject(&e).unwrap(), e);
        let plain = Arc::new(GradedQuiver::jordan().double(2).unwrap());
        assert!(matches!(lambda_inject(&dl(&plain, "a")), Err(Error::InvalidContext(_))));
    }

    #[test]
    fn lambda_of_long_word() {
        // s dc r db q da p on a three-loop quiver, with s=r=q=p the first loop
        let b = GradedQuiver::new(
            vec![1],
            vec![Arrow::new("x", 1, 1, 0), Arrow::new("y", 1, 1, 0), Arrow::new("z", 1, 1, 0)],
        )
        .unwrap();
        let q = Arc::new(b.hat_extend().unwrap().double(2).unwrap());
        let x = Elem::named(&q, "x");
        let word = [x.clone(), dl(&q, "z"), x.clone(), dl(&q, "y"), x.clone(), dl(&q, "x"), x.clone()];
        let phi = word.iter().skip(1).fold(word[0].clone(), |acc, f| acc.mul(f).unwrap());
        let hats = ["x", "z^", "x", "y^", "x", "x^", "x"].map(|n| Elem::named(&q, n));
        let expect = hats.iter().skip(1).fold(hats[0].clone(), |acc, f| acc.mul(f).unwrap());
        assert_eq!(lambda_inject(&phi).unwrap(), expect);
    }
}
