use crate::error::{Error, Result};
use crate::groebner::{syzygies_graded, ModuleElement};
use crate::modules::{hilbert_function, subquotient, FPModule, FreeModule, FreeModuleMap, HilbertFunction};

use super::ChainComplex;

/// A complex `C` together with relation maps `P_q : G_q -> C_q` commuting
/// with the differential, standing for the complex of modules
/// `coker P_q`. `C ⊗ M` for `M = coker(F_1 -> F_0)` is `C ⊗ F_0` with
/// `P_q = id ⊗ (F_1 -> F_0)`.
#[derive(Clone, Debug)]
pub struct PresentedComplex {
    complex: ChainComplex,
    relations: Vec<FreeModuleMap>,
    module: FPModule,
}

/// `C ⊗ M`; for `M = R/J` the differentials are unchanged and `J` is
/// recorded as annihilator of every homology module.
pub fn tensor_with_module(c: &ChainComplex, m: &FPModule) -> Result<PresentedComplex> {
    let ring = c.ring();
    let f0 = m.presentation().target().clone();
    let unit = ChainComplex::concentrated(ring, f0, 0);
    let complex = super::tensor_complexes(c, &unit)?;
    let relations = (c.lo()..=c.hi())
        .map(|q| m.presentation().identity_tensor(&c.module(q)))
        .collect();
    Ok(PresentedComplex {
        complex,
        relations,
        module: m.clone(),
    })
}

impl PresentedComplex {
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }

    /// `P_q`, zero outside the range of the complex.
    pub fn relations(&self, q: i64) -> FreeModuleMap {
        let c = &self.complex;
        if q < c.lo() || q > c.hi() {
            let g = FreeModule::standard(0);
            return FreeModuleMap::zero(c.ring(), g, c.module(q));
        }
        self.relations[(q - c.lo()) as usize].clone()
    }

    /// `H_q = {x ∈ C_q : d x ∈ im P_{q-1}} / (im d_{q+1} + im P_q)`.
    pub fn homology(&self, q: i64) -> Result<FPModule> {
        let c = &self.complex;
        let ring = c.ring();
        let cq = c.module(q);
        if cq.rank() == 0 {
            return Ok(FPModule::free(ring, cq));
        }
        let stacked = c.differential(q).hstack(&self.relations(q - 1))?;
        let n = cq.rank();
        let ker: Vec<ModuleElement> = if stacked.nrows() == 0 {
            (0..n).map(|i| ModuleElement::unit(ring, n, i)).collect()
        } else {
            let shifts = stacked.source().degrees().map(<[i32]>::to_vec);
            syzygies_graded(ring, stacked.nrows(), stacked.columns(), shifts.as_deref())?
                .into_iter()
                .map(|s| ModuleElement::new(ring, s.into_coords().into_iter().take(n).collect()))
                .filter(|g| !g.is_zero())
                .collect()
        };
        let im: Vec<ModuleElement> = c
            .differential(q + 1)
            .columns()
            .iter()
            .chain(self.relations(q).columns())
            .cloned()
            .collect();
        let h = subquotient(ring, &cq, &ker, &im).map_err(|e| match e {
            Error::NotSubmodule(msg) => Error::BrokenComplex(msg),
            other => other,
        })?;
        Ok(match self.module.annihilator() {
            Some(j) => h.with_annihilator_unchecked(j.clone()),
            None => h,
        })
    }

    /// `HF(H_q)` from cokernels only:
    /// `HF(coker[d_{q+1}|P_q]) - HF(coker P_{q-1}) + HF(coker[d_q|P_{q-1}])`.
    pub fn homology_hilbert(&self, q: i64, bound: usize) -> Result<HilbertFunction> {
        let c = &self.complex;
        let coker = |m: FreeModuleMap| hilbert_function(&FPModule::new(m), bound);
        let a = coker(c.differential(q + 1).hstack(&self.relations(q))?)?;
        let b = coker(self.relations(q - 1))?;
        let d = coker(c.differential(q).hstack(&self.relations(q - 1))?)?;
        a.add(&d)
            .checked_sub(&b)
            .ok_or_else(|| Error::BrokenComplex(format!("negative homology dimension in degree {q}")))
    }
}
