//! Gröbner bases of submodules of free modules `R^r` (ideals are the rank one
//! case), normal forms, syzygies and dimension theory of ideals.
//!
//! Module terms are ordered position-over-term: `e_0 > e_1 > ...`, then the
//! monomial order of the ring (or an explicitly requested one).

mod dimension;
pub(crate) mod engine;
mod ideal;
pub(crate) mod vector;

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{same_ring, Monomial, MonomialOrder, Polynomial, RingRef};

pub use dimension::{independent_sets_dimension, max_independent_set};
pub use ideal::{height, krull_dimension, membership, Ideal};

use engine::{Ctx, Elem};
use vector::{ModOrder, SVec};

/// An element of the free module `R^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    ring: RingRef,
    coords: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn new(ring: &RingRef, coords: Vec<Polynomial>) -> ModuleElement {
        debug_assert!(coords.iter().all(|c| same_ring(c.ring(), ring)));
        ModuleElement {
            ring: ring.clone(),
            coords,
        }
    }

    pub fn zero(ring: &RingRef, rank: usize) -> ModuleElement {
        ModuleElement::new(ring, vec![Polynomial::zero(ring); rank])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(ring: &RingRef, rank: usize, i: usize) -> ModuleElement {
        let mut v = ModuleElement::zero(ring, rank);
        v.coords[i] = Polynomial::one(ring);
        v
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Polynomial> {
        self.coords
    }

    pub fn coord(&self, i: usize) -> &Polynomial {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        ModuleElement::new(
            &self.ring,
            self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        ModuleElement::new(
            &self.ring,
            self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn mul_poly(&self, f: &Polynomial) -> ModuleElement {
        ModuleElement::new(&self.ring, self.coords.iter().map(|a| a * f).collect())
    }

    /// The degree of a homogeneous element when basis vector `i` has degree
    /// `shifts[i]`. `None` for the zero element or inhomogeneous elements.
    pub fn degree(&self, shifts: &[i32]) -> Option<i32> {
        let mut deg = None;
        for (c, s) in self.coords.iter().zip(shifts) {
            if c.is_zero() {
                continue;
            }
            if !c.is_homogeneous() {
                return None;
            }
            let d = c.total_degree().expect("nonzero") as i32 + s;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A reduced Gröbner basis of a submodule of `R^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: RingRef,
    rank: usize,
    order: MonomialOrder,
    shifts: Option<Vec<i32>>,
    elems: Vec<Elem>,
    ninputs: usize,
}

fn check_gens(ring: &RingRef, rank: usize, gens: &[ModuleElement]) -> Result<()> {
    for g in gens {
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
        if !same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    Ok(())
}

impl GroebnerBasis {
    fn ctx(&self) -> Ctx<'_> {
        Ctx {
            ord: ModOrder(self.order),
            field: self.ring.field(),
            nvars: self.ring.nvars(),
            shifts: self.shifts.as_deref(),
            rank_one: self.rank == 1,
        }
    }

    fn build(
        ring: &RingRef,
        rank: usize,
        gens: &[ModuleElement],
        order: MonomialOrder,
        shifts: Option<Vec<i32>>,
        traced: bool,
    ) -> Result<GroebnerBasis> {
        check_gens(ring, rank, gens)?;
        let mut gb = GroebnerBasis {
            ring: ring.clone(),
            rank,
            order,
            shifts,
            elems: Vec::new(),
            ninputs: gens.len(),
        };
        let ord = ModOrder(order);
        let svecs: Vec<SVec> = gens.iter().map(|g| SVec::from_element(g, ord)).collect();
        gb.elems = engine::groebner(&gb.ctx(), &svecs, traced);
        Ok(gb)
    }

    /// Reduced Gröbner basis of the span of `gens` under the ring's order.
    pub fn compute(ring: &RingRef, rank: usize, gens: &[ModuleElement]) -> Result<GroebnerBasis> {
        Self::build(ring, rank, gens, ring.order(), None, false)
    }

    pub fn compute_with_order(
        ring: &RingRef,
        rank: usize,
        gens: &[ModuleElement],
        order: MonomialOrder,
    ) -> Result<GroebnerBasis> {
        Self::build(ring, rank, gens, order, None, false)
    }

    /// As [`GroebnerBasis::compute`], recording for every basis element its
    /// coefficients in terms of `gens` so that [`GroebnerBasis::lift`] works.
    pub fn compute_traced(ring: &RingRef, rank: usize, gens: &[ModuleElement]) -> Result<GroebnerBasis> {
        Self::build(ring, rank, gens, ring.order(), None, true)
    }

    /// Degree shifts of the basis vectors only steer pair selection.
    pub fn compute_graded(
        ring: &RingRef,
        rank: usize,
        gens: &[ModuleElement],
        shifts: Option<&[i32]>,
        traced: bool,
    ) -> Result<GroebnerBasis> {
        Self::build(ring, rank, gens, ring.order(), shifts.map(<[i32]>::to_vec), traced)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> Vec<ModuleElement> {
        self.elems
            .iter()
            .map(|e| e.v.to_element(&self.ring, self.rank))
            .collect()
    }

    /// Leading (position, monomial) pairs, in basis order.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems
            .iter()
            .map(|e| {
                let (p, m, _) = e.v.lead().expect("nonzero");
                (*p, m.clone())
            })
            .collect()
    }

    /// Coefficients of each basis element in terms of the input generators.
    pub fn trace(&self) -> Option<Vec<ModuleElement>> {
        self.elems
            .iter()
            .map(|e| e.trace.as_ref().map(|t| t.to_element(&self.ring, self.ninputs)))
            .collect()
    }

    pub fn normal_form(&self, v: &ModuleElement) -> Result<ModuleElement> {
        check_gens(&self.ring, self.rank, std::slice::from_ref(v))?;
        let ctx = self.ctx();
        let (_, r) = engine::divide(&ctx, &SVec::from_element(v, ctx.ord), &self.elems);
        Ok(r.to_element(&self.ring, self.rank))
    }

    pub fn reduces_to_zero(&self, v: &ModuleElement) -> bool {
        self.normal_form(v).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Quotients of `v` with respect to the basis elements and the remainder.
    pub fn divide(&self, v: &ModuleElement) -> Result<(Vec<Polynomial>, ModuleElement)> {
        check_gens(&self.ring, self.rank, std::slice::from_ref(v))?;
        let ctx = self.ctx();
        let (qs, r) = engine::divide(&ctx, &SVec::from_element(v, ctx.ord), &self.elems);
        let qs = qs.into_iter().map(|q| Polynomial::from_terms(&self.ring, q)).collect();
        Ok((qs, r.to_element(&self.ring, self.rank)))
    }

    /// Coefficients `c` with `v = sum c_i gens_i`, when `v` lies in the span.
    /// Requires a traced basis.
    pub fn lift(&self, v: &ModuleElement) -> Option<Vec<Polynomial>> {
        let ctx = self.ctx();
        let (qs, r) = engine::divide(&ctx, &SVec::from_element(v, ctx.ord), &self.elems);
        if !r.is_zero() {
            return None;
        }
        let traces: Option<Vec<&SVec>> = self.elems.iter().map(|e| e.trace.as_ref()).collect();
        let c = engine::combine(&ctx, &qs, &traces?);
        Some(c.to_element(&self.ring, self.ninputs).into_coords())
    }

    /// True when every basis vector `e_i` lies in the submodule.
    pub fn is_whole_module(&self) -> bool {
        let mut hit = vec![false; self.rank];
        for e in &self.elems {
            let (p, m, _) = e.v.lead().expect("nonzero");
            if m.is_one() {
                hit[*p] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    /// Buchberger's criterion: every S-vector of two basis elements with
    /// leads in the same position reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let ctx = self.ctx();
        for j in 0..self.elems.len() {
            for i in 0..j {
                let (pi, li, ci) = self.elems[i].v.lead().expect("nonzero");
                let (pj, lj, cj) = self.elems[j].v.lead().expect("nonzero");
                if pi != pj {
                    continue;
                }
                let l = li.lcm(lj);
                let s = self.elems[i]
                    .v
                    .mul_term(&l.div(li).expect("lcm"), &cj.clone())
                    .sub_scaled(ci, &l.div(lj).expect("lcm"), &self.elems[j].v, ctx.ord);
                let (_, r) = engine::divide(&ctx, &s, &self.elems);
                if !r.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced basis property: leading coefficients are one and no leading
    /// term divides a term of another element in the same position.
    pub fn is_reduced(&self) -> bool {
        let leads = self.leading_terms();
        self.elems.iter().enumerate().all(|(i, e)| {
            e.v.lead().is_some_and(|t| t.2.is_one())
                && e.v.terms.iter().all(|(p, m, _)| {
                    leads
                        .iter()
                        .enumerate()
                        .all(|(k, (lp, lm))| k == i || lp != p || !lm.divides(m))
                })
        })
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens` in `R^rank`.
pub fn buchberger(ring: &RingRef, gens: &[ModuleElement], rank: usize, order: MonomialOrder) -> Result<GroebnerBasis> {
    GroebnerBasis::compute_with_order(ring, rank, gens, order)
}

/// Remainder of `v` on division by a Gröbner basis.
pub fn normal_form(v: &ModuleElement, basis: &GroebnerBasis) -> Result<ModuleElement> {
    basis.normal_form(v)
}

/// Generators of the module of relations `{c : sum c_i gens_i = 0}` inside
/// `R^{gens.len()}`, returned as a reduced Gröbner basis of that module.
pub fn syzygies(ring: &RingRef, rank: usize, gens: &[ModuleElement]) -> Result<Vec<ModuleElement>> {
    syzygies_graded(ring, rank, gens, None)
}

/// As [`syzygies`]; `shifts` are the degrees of the generators, used only to
/// guide the computation.
pub fn syzygies_graded(
    ring: &RingRef,
    rank: usize,
    gens: &[ModuleElement],
    shifts: Option<&[i32]>,
) -> Result<Vec<ModuleElement>> {
    check_gens(ring, rank, gens)?;
    let ord = ModOrder(ring.order());
    let svecs: Vec<SVec> = gens.iter().map(|g| SVec::from_element(g, ord)).collect();
    let ambient_shifts: Option<Vec<i32>> = None;
    let ctx = Ctx {
        ord,
        field: ring.field(),
        nvars: ring.nvars(),
        shifts: ambient_shifts.as_deref(),
        rank_one: rank == 1,
    };
    let raw = engine::syzygies(&ctx, &svecs);
    let ctx2 = Ctx {
        ord,
        field: ring.field(),
        nvars: ring.nvars(),
        shifts,
        rank_one: gens.len() == 1,
    };
    let reduced = engine::groebner(&ctx2, &raw, false);
    Ok(reduced.iter().map(|e| e.v.to_element(ring, gens.len())).collect())
}
