//! Buchberger's algorithm over free modules with optional cofactor tracing,
//! plus the division algorithm and Schreyer syzygies built on top of it.

use std::collections::{BTreeSet, HashSet};

use crate::ring::{Field, Monomial, Scalar};

use super::vector::{ModOrder, SVec};

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub v: SVec,
    pub sugar: u32,
    /// Coefficients expressing `v` in terms of the engine's inputs.
    pub trace: Option<SVec>,
}

pub(crate) struct Ctx<'a> {
    pub ord: ModOrder,
    pub field: Field,
    pub nvars: usize,
    pub shifts: Option<&'a [i32]>,
    /// Coprime leads imply a zero S-vector only for ideals (rank one).
    pub rank_one: bool,
}

impl Ctx<'_> {
    fn term_degree(&self, pos: usize, m: &Monomial) -> u32 {
        let s = self.shifts.map_or(0, |s| s[pos]) as i64;
        (m.degree() as i64 + s).max(0) as u32
    }

    fn find_divisor(&self, basis: &[Elem], alive: Option<&[bool]>, pos: usize, m: &Monomial) -> Option<usize> {
        basis.iter().enumerate().position(|(k, b)| {
            alive.is_none_or(|a| a[k]) && {
                let (p, lm, _) = b.v.lead().expect("basis elements are nonzero");
                *p == pos && lm.divides(m)
            }
        })
    }

    /// Reduces `e` by `basis`. With `full` every term is reduced, otherwise
    /// only the leading term. Quotients, when requested, are accumulated per
    /// basis index as polynomial terms.
    pub fn reduce(
        &self,
        e: Elem,
        basis: &[Elem],
        alive: Option<&[bool]>,
        full: bool,
        mut quotients: Option<&mut Vec<Vec<(Monomial, Scalar)>>>,
    ) -> Elem {
        let Elem {
            v,
            mut sugar,
            mut trace,
        } = e;
        let mut done: Vec<_> = Vec::new();
        let mut active = v;
        while let Some((pos, m, c)) = active.lead().cloned() {
            match self.find_divisor(basis, alive, pos, &m) {
                Some(k) => {
                    let b = &basis[k];
                    let (_, lm, lc) = b.v.lead().expect("nonzero");
                    let q = m.div(lm).expect("divisor");
                    let coef = c.div(lc);
                    active = active.sub_scaled(&coef, &q, &b.v, self.ord);
                    if let (Some(t), Some(bt)) = (trace.as_mut(), b.trace.as_ref()) {
                        *t = t.sub_scaled(&coef, &q, bt, self.ord);
                    }
                    sugar = sugar.max(q.degree() + b.sugar);
                    if let Some(qs) = quotients.as_deref_mut() {
                        qs[k].push((q, coef));
                    }
                }
                None if full => {
                    done.push(active.terms.remove(0));
                }
                None => break,
            }
        }
        done.extend(active.terms);
        Elem {
            v: SVec { terms: done },
            sugar,
            trace,
        }
    }

    fn make_monic(&self, e: Elem) -> Elem {
        let lc = e.v.lead().expect("nonzero").2.clone();
        if lc.is_one() {
            return e;
        }
        let inv = lc.inv().expect("field element");
        Elem {
            v: e.v.scale(&inv),
            sugar: e.sugar,
            trace: e.trace.map(|t| t.scale(&inv)),
        }
    }

    /// S-vector of two monic elements with leads at the same position.
    fn s_vector(&self, a: &Elem, b: &Elem) -> (Elem, Monomial, Monomial) {
        let (_, la, _) = a.v.lead().expect("nonzero");
        let (_, lb, _) = b.v.lead().expect("nonzero");
        let l = la.lcm(lb);
        let ma = l.div(la).expect("lcm");
        let mb = l.div(lb).expect("lcm");
        let one = self.field.one();
        let v = a.v.mul_term(&ma, &one).sub_scaled(&one, &mb, &b.v, self.ord);
        let trace = match (&a.trace, &b.trace) {
            (Some(ta), Some(tb)) => Some(ta.mul_term(&ma, &one).sub_scaled(&one, &mb, tb, self.ord)),
            _ => None,
        };
        let sugar = (a.sugar + ma.degree()).max(b.sugar + mb.degree());
        (Elem { v, sugar, trace }, ma, mb)
    }
}

/// Computes the reduced Gröbner basis of the span of `gens`, sorted by
/// decreasing leading term. With `traced`, each element records its
/// expression in terms of `gens`.
pub(crate) fn groebner(ctx: &Ctx<'_>, gens: &[SVec], traced: bool) -> Vec<Elem> {
    let mut basis: Vec<Elem> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    // (sugar, lcm degree, j, i) with i < j
    let mut queue: BTreeSet<(u32, u32, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let insert =
        |h: Elem, basis: &mut Vec<Elem>, alive: &mut Vec<bool>, queue: &mut BTreeSet<_>, pending: &mut HashSet<_>| {
            let h = ctx.make_monic(h);
            let n = basis.len();
            let (hp, hm, _) = h.v.lead().cloned().expect("nonzero");
            for (i, b) in basis.iter().enumerate() {
                let (bp, bm, _) = b.v.lead().expect("nonzero");
                if *bp != hp || !alive[i] {
                    continue;
                }
                // coprime leads: the S-vector reduces to zero
                if ctx.rank_one && bm.is_coprime(&hm) {
                    continue;
                }
                let l = bm.lcm(&hm);
                let sugar = (b.sugar + l.degree() - bm.degree()).max(h.sugar + l.degree() - hm.degree());
                queue.insert((sugar, ctx.term_degree(hp, &l), n, i));
                pending.insert((i, n));
            }
            basis.push(h);
            alive.push(true);
        };

    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let e = Elem {
            v: g.clone(),
            sugar: g.sugar(ctx.shifts),
            trace: traced.then(|| SVec::unit(i, ctx.nvars, ctx.field.one())),
        };
        let r = ctx.reduce(e, &basis, Some(&alive), false, None);
        if !r.v.is_zero() {
            insert(r, &mut basis, &mut alive, &mut queue, &mut pending);
        }
    }

    while let Some(key) = queue.pop_first() {
        let (_, _, j, i) = key;
        pending.remove(&(i, j));
        if !alive[i] || !alive[j] {
            continue;
        }
        let (pos, li, _) = basis[i].v.lead().expect("nonzero");
        let (_, lj, _) = basis[j].v.lead().expect("nonzero");
        let l = li.lcm(lj);
        let pair = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = basis.iter().enumerate().any(|(k, b)| {
            if k == i || k == j || !alive[k] {
                return false;
            }
            let (bp, bm, _) = b.v.lead().expect("nonzero");
            *bp == *pos && bm.divides(&l) && !pending.contains(&pair(i, k)) && !pending.contains(&pair(j, k))
        });
        if chain {
            continue;
        }
        let (s, _, _) = ctx.s_vector(&basis[i], &basis[j]);
        let r = ctx.reduce(s, &basis, Some(&alive), false, None);
        if !r.v.is_zero() {
            insert(r, &mut basis, &mut alive, &mut queue, &mut pending);
        }
    }

    // minimalize: drop elements whose lead is divisible by another lead
    let n = basis.len();
    for i in 0..n {
        let (pi, mi, _) = basis[i].v.lead().cloned().expect("nonzero");
        let redundant = (0..n).any(|k| {
            if k == i || !alive[k] {
                return false;
            }
            let (pk, mk, _) = basis[k].v.lead().expect("nonzero");
            *pk == pi && mk.divides(&mi) && (*mk != mi || k < i)
        });
        if redundant {
            alive[i] = false;
        }
    }
    let minimal: Vec<Elem> = basis
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(e, _)| e)
        .collect();

    // interreduce tails; leads are untouched since no lead divides another
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let (lead, tail) = split_lead(&minimal[i]);
        let others: Vec<Elem> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, e)| e.clone())
            .collect();
        let r = ctx.reduce(tail, &others, None, true, None);
        let mut v = vec![lead];
        v.extend(r.v.terms);
        let trace = match (minimal[i].trace.as_ref(), r.trace) {
            (Some(t0), Some(tr)) => {
                // r.trace started from zero and accumulated -(quotients * others.trace);
                // the full element is lead + reduced tail = e - sum q_k g_k
                Some(t0.add(&tr, ctx.ord, &ctx.field.one(), ctx.nvars))
            }
            _ => None,
        };
        reduced.push(Elem {
            v: SVec { terms: v },
            sugar: minimal[i].sugar,
            trace,
        });
    }
    reduced.sort_by(|a, b| {
        let (pa, ma, _) = a.v.lead().expect("nonzero");
        let (pb, mb, _) = b.v.lead().expect("nonzero");
        ctx.ord.cmp((*pb, mb), (*pa, ma))
    });
    reduced
}

fn split_lead(e: &Elem) -> (super::vector::Term, Elem) {
    let lead = e.v.terms[0].clone();
    let tail = SVec {
        terms: e.v.terms[1..].to_vec(),
    };
    // the tail's trace starts at zero; the caller adds the element's own trace
    (
        lead,
        Elem {
            v: tail,
            sugar: e.sugar,
            trace: e.trace.as_ref().map(|_| SVec::zero()),
        },
    )
}

/// Division by a Gröbner basis: quotient polynomials (as term lists) per
/// basis element and the fully reduced remainder.
pub(crate) fn divide(ctx: &Ctx<'_>, v: &SVec, basis: &[Elem]) -> (Vec<Vec<(Monomial, Scalar)>>, SVec) {
    let mut qs = vec![Vec::new(); basis.len()];
    let e = Elem {
        v: v.clone(),
        sugar: 0,
        trace: None,
    };
    let r = ctx.reduce(e, basis, None, true, Some(&mut qs));
    (qs, r.v)
}

/// `sum_k q_k * rows[k]` where `q_k` are polynomial term lists.
pub(crate) fn combine(ctx: &Ctx<'_>, qs: &[Vec<(Monomial, Scalar)>], rows: &[&SVec]) -> SVec {
    let mut terms = Vec::new();
    for (q, row) in qs.iter().zip(rows) {
        for (m, c) in q {
            terms.extend(row.mul_term(m, c).terms);
        }
    }
    SVec::from_terms(terms, ctx.ord)
}

/// Generators of the relations among `gens` via Schreyer's theorem: the
/// S-vector relations of a traced Gröbner basis, pulled back through the
/// trace, together with `e_i - (division of gens_i) * trace`.
///
/// Positions of the returned vectors index `gens`.
pub(crate) fn syzygies(ctx: &Ctx<'_>, gens: &[SVec]) -> Vec<SVec> {
    let gb = groebner(ctx, gens, true);
    let traces: Vec<&SVec> = gb.iter().map(|e| e.trace.as_ref().expect("traced")).collect();
    let one = ctx.field.one();
    let mut out = Vec::new();

    for j in 0..gb.len() {
        for i in 0..j {
            let (pi, li, _) = gb[i].v.lead().expect("nonzero");
            let (pj, lj, _) = gb[j].v.lead().expect("nonzero");
            if pi != pj {
                continue;
            }
            let l = li.lcm(lj);
            let mi = l.div(li).expect("lcm");
            let mj = l.div(lj).expect("lcm");
            let s = gb[i].v.mul_term(&mi, &one).sub_scaled(&one, &mj, &gb[j].v, ctx.ord);
            let (mut qs, r) = divide(ctx, &s, &gb);
            debug_assert!(r.is_zero(), "S-vector of a Gröbner basis must reduce to zero");
            // sigma = mi e_i - mj e_j - sum q_k e_k, as a relation among gb
            for q in qs.iter_mut() {
                for t in q.iter_mut() {
                    t.1 = -&t.1;
                }
            }
            qs[i].push((mi, one.clone()));
            qs[j].push((mj, -&one));
            let syz = combine(ctx, &qs, &traces);
            if !syz.is_zero() {
                out.push(syz);
            }
        }
    }

    for (i, g) in gens.iter().enumerate() {
        let (qs, r) = divide(ctx, g, &gb);
        debug_assert!(r.is_zero());
        let back = combine(ctx, &qs, &traces);
        let row = SVec::unit(i, ctx.nvars, one.clone()).sub_scaled(&one, &Monomial::one(ctx.nvars), &back, ctx.ord);
        if !row.is_zero() {
            out.push(row);
        }
    }
    out
}
