use crate::error::{Error, Result};
use crate::groebner::{syzygies_graded, GroebnerBasis, Ideal, ModuleElement};
use crate::ring::{Polynomial, RingRef};

use super::{FPModule, FreeModule, FreeModuleMap};

fn relation_map(ring: &RingRef, target: FreeModule, columns: Vec<ModuleElement>) -> FreeModuleMap {
    let columns: Vec<ModuleElement> = columns.into_iter().filter(|c| !c.is_zero()).collect();
    let map = FreeModuleMap::from_columns(ring, target.clone(), columns.clone()).expect("consistent ranks");
    if map.source().degrees().is_none() && target.degrees().is_some() {
        // an inhomogeneous relation makes the whole presentation ungraded
        let target = FreeModule::new(target.rank(), None);
        return FreeModuleMap::from_columns(ring, target, columns).expect("consistent ranks");
    }
    map
}

fn syz(ring: &RingRef, rank: usize, gens: &[ModuleElement], degrees: Option<&[i32]>) -> Vec<ModuleElement> {
    let shifts: Option<Vec<i32>> = degrees.and_then(|d| {
        gens.iter()
            .map(|g| if g.is_zero() { Some(0) } else { g.degree(d) })
            .collect()
    });
    syzygies_graded(ring, rank, gens, shifts.as_deref()).expect("generators share rank and ring")
}

/// Kernel of a map of free modules. Generators are the syzygies of the
/// columns (embedded in the source), relations the second syzygies.
pub fn kernel(f: &FreeModuleMap) -> Result<FPModule> {
    let ring = f.ring();
    let gens = syz(ring, f.nrows(), f.columns(), f.target().degrees());
    let gens: Vec<ModuleElement> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    Ok(span_module(ring, f.source(), gens))
}

/// The submodule of `ambient` generated by `gens`, presented by the
/// relations among the generators.
fn span_module(ring: &RingRef, ambient: &FreeModule, gens: Vec<ModuleElement>) -> FPModule {
    let degrees: Option<Vec<i32>> = ambient.degrees().and_then(|d| {
        gens.iter()
            .map(|g| if g.is_zero() { Some(0) } else { g.degree(d) })
            .collect()
    });
    let target = FreeModule::new(gens.len(), degrees);
    let rels = syz(ring, ambient.rank(), &gens, ambient.degrees());
    FPModule::new(relation_map(ring, target, rels)).with_embedding(gens)
}

/// `span(ker_gens) / span(im_gens)` inside a free module `ambient`.
///
/// Fails when some image generator is not in the span of the kernel
/// generators, which for homology means `d ∘ d ≠ 0` upstream.
pub fn subquotient(
    ring: &RingRef,
    ambient: &FreeModule,
    ker_gens: &[ModuleElement],
    im_gens: &[ModuleElement],
) -> Result<FPModule> {
    let gb = GroebnerBasis::compute_graded(ring, ambient.rank(), ker_gens, ambient.degrees(), true)?;
    let mut rels = Vec::with_capacity(im_gens.len());
    for (k, m) in im_gens.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        let lift = gb
            .lift(m)
            .ok_or_else(|| Error::NotSubmodule(format!("image generator {k} = {m} is not in the kernel span")))?;
        rels.push(ModuleElement::new(ring, lift));
    }
    let degrees: Option<Vec<i32>> = ambient.degrees().and_then(|d| {
        ker_gens
            .iter()
            .map(|g| if g.is_zero() { Some(0) } else { g.degree(d) })
            .collect()
    });
    rels.extend(syz(ring, ambient.rank(), ker_gens, ambient.degrees()));
    let target = FreeModule::new(ker_gens.len(), degrees);
    let m = FPModule::new(relation_map(ring, target, rels)).with_embedding(ker_gens.to_vec());
    Ok(prune(&m))
}

/// `M ⊗ N` presented by `P_M ⊗ F_N ⊕ F_M ⊗ P_N -> F_M ⊗ F_N`.
pub fn tensor_modules(m: &FPModule, n: &FPModule) -> FPModule {
    let p = m.presentation();
    let q = n.presentation();
    let a = p.tensor_identity(q.target());
    let b = q.identity_tensor(p.target());
    let pres = a.hstack(&b).expect("same target");
    let ann = match (m.annihilator(), n.annihilator()) {
        (Some(i), Some(j)) => Some(i.sum(j)),
        (Some(i), None) | (None, Some(i)) => Some(i.clone()),
        (None, None) => None,
    };
    let out = FPModule::new(pres);
    match ann {
        Some(j) => out.with_annihilator_unchecked(j),
        None => out,
    }
}

/// `M ⊗ R/J`, recorded as an `R/J`-module.
pub fn restrict_to(m: &FPModule, j: &Ideal) -> FPModule {
    let ring = m.ring();
    let p = m.presentation();
    let n = p.nrows();
    let mut columns = p.columns().to_vec();
    for g in j.gens() {
        for i in 0..n {
            columns.push(ModuleElement::unit(ring, n, i).mul_poly(g));
        }
    }
    let ann = match m.annihilator() {
        Some(a) => a.sum(j),
        None => j.clone(),
    };
    let pres = relation_map(ring, p.target().clone(), columns);
    let mut out = FPModule::new(pres).with_annihilator_unchecked(ann);
    if let Some(e) = m.embedding() {
        out = out.with_embedding(e.to_vec());
    }
    out
}

pub(super) fn ideal_module(ideal: &Ideal) -> FPModule {
    let ring = ideal.ring();
    let gens: Vec<ModuleElement> = ideal
        .gens()
        .iter()
        .map(|g| ModuleElement::new(ring, vec![g.clone()]))
        .collect();
    span_module(ring, &FreeModule::standard(1), gens)
}

/// `I / (I J)` as an `R/J`-module, generated by the generators of `I`.
pub fn conormal(i: &Ideal, j: &Ideal) -> Result<FPModule> {
    if let Some(g) = i.gens().iter().find(|g| !j.contains(g)) {
        return Err(Error::NotContained(format!(
            "generator {g} is not in the ambient ideal"
        )));
    }
    let ring = i.ring();
    let base = ideal_module(i);
    let n = base.num_generators();
    let mut columns = base.presentation().columns().to_vec();
    // f_i * g_k lifts to g_k e_i
    for g in j.gens() {
        for k in 0..n {
            columns.push(ModuleElement::unit(ring, n, k).mul_poly(g));
        }
    }
    let pres = relation_map(ring, base.presentation().target().clone(), columns);
    let embedding = base.embedding().map(<[ModuleElement]>::to_vec).unwrap_or_default();
    Ok(FPModule::new(pres)
        .with_annihilator_unchecked(j.clone())
        .with_embedding(embedding))
}

pub fn is_zero_module(m: &FPModule) -> bool {
    m.num_generators() == 0 || m.presentation().image_basis().is_whole_module()
}

pub fn direct_sum(a: &FPModule, b: &FPModule) -> FPModule {
    let ring = a.ring();
    let pa = a.presentation();
    let pb = b.presentation();
    let (na, nb) = (pa.nrows(), pb.nrows());
    let pad = |v: &ModuleElement, before: usize, after: usize| {
        let mut coords = vec![Polynomial::zero(ring); before];
        coords.extend(v.coords().iter().cloned());
        coords.extend(std::iter::repeat_n(Polynomial::zero(ring), after));
        ModuleElement::new(ring, coords)
    };
    let columns: Vec<ModuleElement> = pa
        .columns()
        .iter()
        .map(|c| pad(c, 0, nb))
        .chain(pb.columns().iter().map(|c| pad(c, na, 0)))
        .collect();
    let pres = FreeModuleMap::new(
        ring,
        pa.source().sum(pb.source()),
        pa.target().sum(pb.target()),
        columns,
    )
    .expect("block diagonal");
    let out = FPModule::new(pres);
    match (a.annihilator(), b.annihilator()) {
        (Some(i), Some(j)) if i.same_ideal(j) => out.with_annihilator_unchecked(i.clone()),
        _ => out,
    }
}

/// Kernel of the map `M -> N` induced by `phi: F_0(M) -> F_0(N)`.
pub fn induced_kernel(m: &FPModule, n: &FPModule, phi: &FreeModuleMap) -> Result<FPModule> {
    let ring = m.ring();
    if phi.ncols() != m.num_generators() || phi.nrows() != n.num_generators() {
        return Err(Error::RankMismatch {
            expected: m.num_generators(),
            found: phi.ncols(),
        });
    }
    let stacked = phi.hstack(n.presentation())?;
    let k = m.num_generators();
    let rels = syz(ring, stacked.nrows(), stacked.columns(), stacked.target().degrees());
    let gens: Vec<ModuleElement> = rels
        .into_iter()
        .map(|s| ModuleElement::new(ring, s.into_coords().into_iter().take(k).collect()))
        .filter(|g| !g.is_zero())
        .collect();
    let ambient = m.presentation().target();
    let out = subquotient(ring, ambient, &gens, m.presentation().columns())?;
    Ok(match m.annihilator() {
        Some(j) => out.with_annihilator_unchecked(j.clone()),
        None => out,
    })
}

/// Cokernel of the map `M -> N` induced by `phi`.
pub fn cokernel_of_map(n: &FPModule, phi: &FreeModuleMap) -> Result<FPModule> {
    let pres = phi.hstack(n.presentation())?;
    let ring = n.ring();
    let out = FPModule::new(relation_map(ring, pres.target().clone(), pres.columns().to_vec()));
    Ok(match n.annihilator() {
        Some(j) => out.with_annihilator_unchecked(j.clone()),
        None => out,
    })
}

/// Generators of `span(a) ∩ span(b)` in a common free module.
pub fn intersect_submodules(
    ring: &RingRef,
    ambient: &FreeModule,
    a: &[ModuleElement],
    b: &[ModuleElement],
) -> Vec<ModuleElement> {
    let all: Vec<ModuleElement> = a.iter().chain(b).cloned().collect();
    let rels = syz(ring, ambient.rank(), &all, ambient.degrees());
    let mut out: Vec<ModuleElement> = Vec::new();
    for r in rels {
        let mut acc = ModuleElement::zero(ring, ambient.rank());
        for (c, g) in r.coords().iter().zip(a) {
            if !c.is_zero() {
                acc = acc.add(&g.mul_poly(c));
            }
        }
        if !acc.is_zero() && !out.contains(&acc) {
            out.push(acc);
        }
    }
    out
}

pub(super) fn prune(m: &FPModule) -> FPModule {
    let ring = m.ring().clone();
    let pres = m.presentation();
    let mut gens_alive: Vec<usize> = (0..pres.nrows()).collect();
    let mut cols: Vec<Vec<Polynomial>> = pres
        .columns()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.coords().to_vec())
        .collect();
    loop {
        // first relation with a unit entry, first such entry
        let pivot = cols
            .iter()
            .enumerate()
            .find_map(|(j, c)| c.iter().position(|p| p.as_nonzero_constant().is_some()).map(|i| (j, i)));
        let Some((j, i)) = pivot else { break };
        let col = cols.swap_remove(j);
        let u = col[i].as_nonzero_constant().expect("unit").clone();
        let uinv = u.inv().expect("nonzero");
        for c in cols.iter_mut() {
            if c[i].is_zero() {
                continue;
            }
            let factor = c[i].scale(&uinv);
            for (k, p) in c.iter_mut().enumerate() {
                if !col[k].is_zero() {
                    *p = &*p - &(&col[k] * &factor);
                }
            }
            debug_assert!(c[i].is_zero());
        }
        for c in cols.iter_mut() {
            c.remove(i);
        }
        gens_alive.remove(i);
        cols.retain(|c| c.iter().any(|p| !p.is_zero()));
    }
    let degrees = pres
        .target()
        .degrees()
        .map(|d| gens_alive.iter().map(|&i| d[i]).collect::<Vec<i32>>());
    let target = FreeModule::new(gens_alive.len(), degrees);
    let columns = cols.into_iter().map(|c| ModuleElement::new(&ring, c)).collect();
    let mut out = FPModule::new(relation_map(&ring, target, columns));
    if let Some(e) = m.embedding() {
        out = out.with_embedding(gens_alive.iter().map(|&i| e[i].clone()).collect());
    }
    if let Some(a) = m.annihilator() {
        out = out.with_annihilator_unchecked(a.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{hilbert_function, FreeModuleMap};
    use crate::ring::{parse_polynomial, PolyRing};

    fn p(r: &RingRef, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| p(r, g)))
    }

    fn hf(m: &FPModule, d: usize) -> Vec<u64> {
        hilbert_function(m, d).unwrap().values().to_vec()
    }

    #[test]
    fn kernel_of_linear_form() {
        let r = PolyRing::rational(&["x", "y"]);
        let f = FreeModuleMap::from_rows(
            &r,
            FreeModule::graded(vec![1, 1]),
            FreeModule::standard(1),
            vec![vec![p(&r, "x"), p(&r, "y")]],
        )
        .unwrap();
        let k = kernel(&f).unwrap();
        assert_eq!(k.num_generators(), 1);
        assert_eq!(k.num_relations(), 0);
        let g = &k.embedding().unwrap()[0];
        assert_eq!(g.coords(), &[p(&r, "y"), p(&r, "-x")]);
        assert!(f.apply(g).is_zero());
        assert_eq!(k.generator_degrees(), Some(&[2][..]));
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let r = PolyRing::rational(&["x", "y"]);
        let id = FreeModuleMap::identity(&r, FreeModule::standard(3));
        assert!(is_zero_module(&kernel(&id).unwrap()));
        let z = FreeModuleMap::zero(&r, FreeModule::standard(2), FreeModule::standard(1));
        let k = kernel(&z).unwrap();
        assert_eq!((k.num_generators(), k.num_relations()), (2, 0));
    }

    #[test]
    fn subquotient_examples() {
        let r = PolyRing::rational(&["x", "y"]);
        let amb = FreeModule::standard(2);
        let e = |a: &str, b: &str| ModuleElement::new(&r, vec![p(&r, a), p(&r, b)]);
        let m = subquotient(&r, &amb, &[e("1", "-1")], &[e("x", "-x")]).unwrap();
        assert_eq!((m.num_generators(), m.num_relations()), (1, 1));
        assert_eq!(hf(&m, 3), hf(&FPModule::quotient_ring(&ideal(&r, &["x"])), 3));
        let k = [e("1", "0"), e("0", "1")];
        assert!(is_zero_module(&subquotient(&r, &amb, &k, &k).unwrap()));
        let free = subquotient(&r, &amb, &k, &[]).unwrap();
        assert_eq!(hf(&free, 2), vec![2, 4, 6]);
        assert!(matches!(
            subquotient(&r, &amb, &[e("x", "0")], &[e("y", "0")]),
            Err(Error::NotSubmodule(_))
        ));
    }

    #[test]
    fn tensor_examples() {
        let r = PolyRing::rational(&["x", "y"]);
        let rx = FPModule::quotient_ring(&ideal(&r, &["x"]));
        let ry = FPModule::quotient_ring(&ideal(&r, &["y"]));
        let point = FPModule::quotient_ring(&ideal(&r, &["x", "y"]));
        assert_eq!(hf(&tensor_modules(&rx, &ry), 4), hf(&point, 4));
        let unit = FPModule::free(&r, FreeModule::standard(1));
        assert_eq!(hf(&tensor_modules(&rx, &unit), 4), hf(&rx, 4));
        assert_eq!(hf(&tensor_modules(&rx, &rx), 4), hf(&rx, 4));
    }

    #[test]
    fn restriction_examples() {
        let r = PolyRing::rational(&["x", "y"]);
        let rx = FPModule::quotient_ring(&ideal(&r, &["x"]));
        let m = ideal(&r, &["x", "y"]);
        let point = FPModule::quotient_ring(&m);
        assert_eq!(hf(&restrict_to(&rx, &m), 4), hf(&point, 4));
        let free2 = FPModule::free(&r, FreeModule::standard(2));
        assert_eq!(hf(&restrict_to(&free2, &m), 3), vec![2, 0, 0, 0]);
        let cx = conormal(&ideal(&r, &["x"]), &ideal(&r, &["x"])).unwrap();
        let res = restrict_to(&cx, &ideal(&r, &["x"]));
        assert_eq!(hf(&res, 5), hf(&cx, 5));
        assert!(res.annihilator().unwrap().same_ideal(&ideal(&r, &["x"])));
    }

    #[test]
    fn conormal_examples() {
        let r = PolyRing::rational(&["x", "y"]);
        let c = conormal(&ideal(&r, &["x"]), &ideal(&r, &["x"])).unwrap();
        assert_eq!(hf(&c, 4), vec![0, 1, 1, 1, 1]);
        let m = ideal(&r, &["x", "y"]);
        let c = conormal(&m, &m).unwrap();
        assert_eq!(hf(&c, 3), vec![0, 2, 0, 0]);
        let c = conormal(&ideal(&r, &["x"]), &m).unwrap();
        assert_eq!(hf(&c, 3), vec![0, 1, 0, 0]);
        assert!(matches!(conormal(&m, &ideal(&r, &["x"])), Err(Error::NotContained(_))));
    }

    #[test]
    fn zero_module_checks() {
        let r = PolyRing::rational(&["x", "y"]);
        let id = FPModule::new(FreeModuleMap::identity(&r, FreeModule::standard(2)));
        assert!(is_zero_module(&id));
        assert!(!is_zero_module(&FPModule::quotient_ring(&ideal(&r, &["x"]))));
        let m = FPModule::new(
            FreeModuleMap::from_rows(
                &r,
                FreeModule::new(2, None),
                FreeModule::new(1, None),
                vec![vec![p(&r, "x"), p(&r, "1-x")]],
            )
            .unwrap(),
        );
        assert!(is_zero_module(&m));
    }

    #[test]
    fn prune_keeps_module() {
        let r = PolyRing::rational(&["x", "y"]);
        // generators a, b with b = x a: module ≅ R
        let pres = FreeModuleMap::from_rows(
            &r,
            FreeModule::graded(vec![1]),
            FreeModule::graded(vec![0, 1]),
            vec![vec![p(&r, "x")], vec![p(&r, "-1")]],
        )
        .unwrap();
        let m = FPModule::new(pres);
        let pm = m.pruned();
        assert_eq!(pm.num_generators(), 1);
        assert_eq!(hf(&pm, 4), hf(&m, 4));
    }

    #[test]
    fn annihilator_is_checked() {
        let r = PolyRing::rational(&["x", "y"]);
        let rx = FPModule::quotient_ring(&ideal(&r, &["x"]));
        assert!(rx.clone().with_annihilator(ideal(&r, &["x^2"])).is_ok());
        assert!(rx.with_annihilator(ideal(&r, &["y"])).is_err());
    }

    #[test]
    fn submodule_intersection() {
        let r = PolyRing::rational(&["x", "y"]);
        let amb = FreeModule::standard(1);
        let e = |a: &str| ModuleElement::new(&r, vec![p(&r, a)]);
        let out = intersect_submodules(&r, &amb, &[e("x")], &[e("y")]);
        let gb = GroebnerBasis::compute(&r, 1, &out).unwrap();
        assert_eq!(gb.elements(), vec![e("x*y")]);
    }
}
