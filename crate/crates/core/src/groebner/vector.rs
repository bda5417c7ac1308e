//! Sparse vectors of a free module `R^r` in sorted-term form, the working
//! representation of the Gröbner engine.

use std::cmp::Ordering;

use crate::ring::{Monomial, MonomialOrder, Polynomial, RingRef, Scalar};

use super::ModuleElement;

/// Position-over-term: `e_0 > e_1 > ...`, ties broken by the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ModOrder(pub MonomialOrder);

impl ModOrder {
    #[inline]
    pub fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        b.0.cmp(&a.0).then_with(|| self.0.cmp(a.1, b.1))
    }
}

pub(crate) type Term = (usize, Monomial, Scalar);

/// Terms in strictly decreasing module order, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct SVec {
    pub terms: Vec<Term>,
}

impl SVec {
    pub fn zero() -> SVec {
        SVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn unit(pos: usize, nvars: usize, one: Scalar) -> SVec {
        SVec {
            terms: vec![(pos, Monomial::one(nvars), one)],
        }
    }

    pub fn from_terms(mut terms: Vec<Term>, ord: ModOrder) -> SVec {
        terms.sort_by(|a, b| ord.cmp((b.0, &b.1), (a.0, &a.1)));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.0 == t.0 && l.1 == t.1 => l.2 = &l.2 + &t.2,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.2.is_zero());
        SVec { terms: out }
    }

    pub fn from_element(v: &ModuleElement, ord: ModOrder) -> SVec {
        let terms = v
            .coords()
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().iter().map(move |(m, c)| (i, m.clone(), c.clone())))
            .collect();
        SVec::from_terms(terms, ord)
    }

    pub fn to_element(&self, ring: &RingRef, rank: usize) -> ModuleElement {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for (p, m, c) in &self.terms {
            buckets[*p].push((m.clone(), c.clone()));
        }
        ModuleElement::new(
            ring,
            buckets.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> SVec {
        SVec {
            terms: self.terms.iter().map(|(p, m, a)| (*p, m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> SVec {
        SVec {
            terms: self.terms.iter().map(|(p, t, a)| (*p, t.mul(m), a * c)).collect(),
        }
    }

    /// `self - c * m * other`.
    pub fn sub_scaled(&self, c: &Scalar, m: &Monomial, other: &SVec, ord: ModOrder) -> SVec {
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let bj = |j: usize| {
            let (p, t, x) = &b[j];
            (*p, t.mul(m), x * c)
        };
        let mut pending = if j < b.len() { Some(bj(j)) } else { None };
        while i < a.len() {
            let Some(t) = pending.as_ref() else { break };
            match ord.cmp((a[i].0, &a[i].1), (t.0, &t.1)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let t = pending.take().expect("pending term");
                    out.push((t.0, t.1, -&t.2));
                    j += 1;
                    pending = if j < b.len() { Some(bj(j)) } else { None };
                }
                Ordering::Equal => {
                    let d = &a[i].2 - &t.2;
                    if !d.is_zero() {
                        out.push((a[i].0, a[i].1.clone(), d));
                    }
                    i += 1;
                    j += 1;
                    pending = if j < b.len() { Some(bj(j)) } else { None };
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        if let Some(t) = pending {
            out.push((t.0, t.1, -&t.2));
            j += 1;
            while j < b.len() {
                let t = bj(j);
                out.push((t.0, t.1, -&t.2));
                j += 1;
            }
        }
        SVec { terms: out }
    }

    pub fn add(&self, other: &SVec, ord: ModOrder, one: &Scalar, nvars: usize) -> SVec {
        self.sub_scaled(&-one, &Monomial::one(nvars), other, ord)
    }

    /// Maximal total degree of a term plus the degree of its basis element.
    pub fn sugar(&self, shifts: Option<&[i32]>) -> u32 {
        self.terms
            .iter()
            .map(|(p, m, _)| {
                let s = shifts.map_or(0, |s| s[*p]);
                (m.degree() as i64 + s as i64).max(0) as u32
            })
            .max()
            .unwrap_or(0)
    }
}
