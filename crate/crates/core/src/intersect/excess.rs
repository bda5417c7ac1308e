use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, Ideal, ModuleElement};
use crate::modules::{cokernel_of_map, conormal, direct_sum, induced_kernel, is_zero_module, FPModule, FreeModuleMap};
use crate::ring::{Polynomial, RingRef};

use super::IntersectionInstance;

fn homogeneous_part(f: &Polynomial, degree: i64) -> Polynomial {
    let terms: Vec<_> = f
        .terms()
        .iter()
        .filter(|(m, _)| m.degree() as i64 == degree)
        .cloned()
        .collect();
    Polynomial::from_terms(f.ring(), terms)
}

/// Writes `f = Σ a_j g_j`; for homogeneous data each `a_j` is cut down to
/// degree `deg f - deg g_j`.
fn rewrite(ring: &RingRef, gb: &GroebnerBasis, f: &Polynomial, gs: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let a = gb
        .lift(&ModuleElement::new(ring, vec![f.clone()]))
        .ok_or_else(|| Error::NotContained(format!("{f} is not in I_W")))?;
    if !f.is_homogeneous() || !gs.iter().all(Polynomial::is_homogeneous) {
        return Ok(a);
    }
    let d = f.total_degree().map_or(0, i64::from);
    Ok(a.iter()
        .zip(gs)
        .map(|(aj, g)| homogeneous_part(aj, d - g.total_degree().map_or(0, i64::from)))
        .collect())
}

/// The map `⊕_i I_i/(I_i I_W) -> I_W/I_W²` on generators, together with
/// its source and target modules.
pub fn excess_map(inst: &IntersectionInstance) -> Result<(FPModule, FPModule, FreeModuleMap)> {
    let w = inst
        .w()
        .ok_or_else(|| Error::UnitIdeal(format!("{}: the intersection is empty", inst.name())))?;
    let ring = inst.ring();
    let gs = w.generators();
    let iw = Ideal::new(ring, gs.to_vec());
    let target = conormal(&iw, &iw)?;
    let mut source: Option<FPModule> = None;
    for y in inst.varieties() {
        let c = conormal(y.ideal(), &iw)?;
        source = Some(match source {
            None => c,
            Some(s) => direct_sum(&s, &c),
        });
    }
    let source = source
        .ok_or(Error::EmptySequence)?
        .with_annihilator_unchecked(iw.clone());
    let gens: Vec<ModuleElement> = gs.iter().map(|g| ModuleElement::new(ring, vec![g.clone()])).collect();
    let gb = GroebnerBasis::compute_traced(ring, 1, &gens)?;
    let columns = inst
        .varieties()
        .iter()
        .flat_map(|y| y.ideal().gens().iter())
        .map(|f| rewrite(ring, &gb, f, gs).map(|a| ModuleElement::new(ring, a)))
        .collect::<Result<Vec<_>>>()?;
    let phi = FreeModuleMap::new(
        ring,
        source.presentation().target().clone(),
        target.presentation().target().clone(),
        columns,
    )?;
    Ok((source, target, phi))
}

/// `E_W = ker(⊕_i I_i/(I_i I_W) -> I_W/I_W²)` as an `R/I_W`-module.
pub fn excess_module(inst: &IntersectionInstance) -> Result<FPModule> {
    let (source, target, phi) = excess_map(inst)?;
    if !is_zero_module(&cokernel_of_map(&target, &phi)?) {
        return Err(Error::NotSurjective(format!(
            "{}: the conormal map onto I_W/I_W² is not surjective",
            inst.name()
        )));
    }
    let k = induced_kernel(&source, &target, &phi)?;
    let iw = inst.w().expect("checked above").ideal().clone();
    Ok(k.with_annihilator_unchecked(iw).pruned())
}
