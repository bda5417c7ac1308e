//! Bounded chain complexes of free modules, Koszul complexes and their
//! tensor products, and homology.

mod koszul;
mod presented;

use crate::error::{Error, Result};
use crate::groebner::ModuleElement;
use crate::modules::{hilbert_function, subquotient, FPModule, FreeModule, FreeModuleMap, HilbertFunction};
use crate::ring::{Polynomial, RingRef};

pub use koszul::{
    is_chain_map, is_signed_permutation, koszul_complex, koszul_complex_with_degrees, koszul_tensor_iso, KoszulData,
};
pub use presented::{tensor_with_module, PresentedComplex};

/// `C_lo <- C_{lo+1} <- ... <- C_hi`, homological indexing.
///
/// `diffs[k]` is `d_{lo+k+1} : C_{lo+k+1} -> C_{lo+k}`; all other
/// differentials are zero.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: RingRef,
    lo: i64,
    modules: Vec<FreeModule>,
    diffs: Vec<FreeModuleMap>,
}

impl ChainComplex {
    /// Checks shapes and `d ∘ d = 0`.
    pub fn new(ring: &RingRef, lo: i64, modules: Vec<FreeModule>, diffs: Vec<FreeModuleMap>) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::BrokenComplex("a complex needs at least one module".into()));
        }
        if diffs.len() + 1 != modules.len() {
            return Err(Error::BrokenComplex(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ncols() != modules[k + 1].rank() || d.nrows() != modules[k].rank() {
                return Err(Error::BrokenComplex(format!(
                    "d_{} has shape {}x{}, expected {}x{}",
                    lo + k as i64 + 1,
                    d.nrows(),
                    d.ncols(),
                    modules[k].rank(),
                    modules[k + 1].rank()
                )));
            }
        }
        let c = ChainComplex {
            ring: ring.clone(),
            lo,
            modules,
            diffs,
        };
        c.check_square_zero()?;
        Ok(c)
    }

    /// The complex with `F` in degree `q` and zero elsewhere.
    pub fn concentrated(ring: &RingRef, module: FreeModule, q: i64) -> ChainComplex {
        ChainComplex {
            ring: ring.clone(),
            lo: q,
            modules: vec![module],
            diffs: Vec::new(),
        }
    }

    fn check_square_zero(&self) -> Result<()> {
        for q in self.lo + 2..=self.hi() {
            let dd = self.differential(q - 1).compose(&self.differential(q))?;
            if !dd.is_zero() {
                return Err(Error::BrokenComplex(format!("d_{} ∘ d_{} is not zero", q - 1, q)));
            }
        }
        Ok(())
    }

    /// Re-runs the exact `d ∘ d = 0` check over every degree.
    pub fn is_complex(&self) -> bool {
        self.check_square_zero().is_ok()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    pub fn is_graded(&self) -> bool {
        self.modules.iter().all(|m| m.degrees().is_some())
    }

    /// `C_q`, the zero module outside `[lo, hi]`.
    pub fn module(&self, q: i64) -> FreeModule {
        if q < self.lo || q > self.hi() {
            return FreeModule::standard(0);
        }
        self.modules[(q - self.lo) as usize].clone()
    }

    pub fn rank(&self, q: i64) -> usize {
        self.module(q).rank()
    }

    /// `d_q : C_q -> C_{q-1}`.
    pub fn differential(&self, q: i64) -> FreeModuleMap {
        if q > self.lo && q <= self.hi() {
            return self.diffs[(q - self.lo - 1) as usize].clone();
        }
        FreeModuleMap::zero(&self.ring, self.module(q), self.module(q - 1))
    }

    /// `H_q = ker d_q / im d_{q+1}`, generator degrees inherited from `C_q`.
    pub fn homology(&self, q: i64) -> Result<FPModule> {
        homology(self, q)
    }
}

fn kernel_generators(ring: &RingRef, d: &FreeModuleMap) -> Vec<ModuleElement> {
    let n = d.ncols();
    if d.is_zero() {
        return (0..n).map(|i| ModuleElement::unit(ring, n, i)).collect();
    }
    match crate::modules::kernel(d) {
        Ok(k) => k.embedding().map(<[ModuleElement]>::to_vec).unwrap_or_default(),
        Err(_) => unreachable!("kernel of a free map always exists"),
    }
}

/// `H_q(C)` as a subquotient of `C_q`.
pub fn homology(c: &ChainComplex, q: i64) -> Result<FPModule> {
    let ring = c.ring();
    let cq = c.module(q);
    if cq.rank() == 0 {
        return Ok(FPModule::free(ring, cq));
    }
    let ker = kernel_generators(ring, &c.differential(q));
    let im: Vec<ModuleElement> = c.differential(q + 1).columns().to_vec();
    subquotient(ring, &cq, &ker, &im).map_err(|e| match e {
        Error::NotSubmodule(msg) => Error::BrokenComplex(msg),
        other => other,
    })
}

fn free_hf(f: &FreeModule, ring: &RingRef, bound: usize) -> Result<HilbertFunction> {
    hilbert_function(&FPModule::free(ring, f.clone()), bound)
}

fn coker_hf(d: &FreeModuleMap, bound: usize) -> Result<HilbertFunction> {
    hilbert_function(&FPModule::new(d.clone()), bound)
}

/// `HF(H_q)` from ranks alone:
/// `HF(coker d_q) + HF(coker d_{q+1}) - HF(C_{q-1})`.
///
/// Independent of the kernel/subquotient route used by [`homology`].
pub fn homology_hilbert(c: &ChainComplex, q: i64, bound: usize) -> Result<HilbertFunction> {
    if !c.is_graded() {
        return Err(Error::NotHomogeneous("complex is not graded".into()));
    }
    let a = coker_hf(&c.differential(q), bound)?;
    let b = coker_hf(&c.differential(q + 1), bound)?;
    let f = free_hf(&c.module(q - 1), c.ring(), bound)?;
    a.add(&b)
        .checked_sub(&f)
        .ok_or_else(|| Error::BrokenComplex(format!("negative homology dimension in degree {q}")))
}

/// `Σ_q (-1)^q HF(C_q)` as signed integers.
pub fn euler_characteristic(c: &ChainComplex, bound: usize) -> Result<Vec<i64>> {
    let mut acc = vec![0i64; bound + 1];
    for q in c.lo()..=c.hi() {
        let hf = free_hf(&c.module(q), c.ring(), bound)?;
        let sign = if q.rem_euclid(2) == 0 { 1 } else { -1 };
        for (a, v) in acc.iter_mut().zip(hf.values()) {
            *a += sign * *v as i64;
        }
    }
    Ok(acc)
}

/// Places the columns of a block map into a larger matrix.
struct BlockMatrix {
    rows: usize,
    cols: Vec<Vec<Polynomial>>,
}

impl BlockMatrix {
    fn new(ring: &RingRef, rows: usize, ncols: usize) -> BlockMatrix {
        BlockMatrix {
            rows,
            cols: vec![vec![Polynomial::zero(ring); rows]; ncols],
        }
    }

    fn put(&mut self, row0: usize, col0: usize, m: &FreeModuleMap, sign: bool) {
        for (j, c) in m.columns().iter().enumerate() {
            for (i, p) in c.coords().iter().enumerate() {
                if !p.is_zero() {
                    self.cols[col0 + j][row0 + i] = if sign { -p } else { p.clone() };
                }
            }
        }
    }

    fn finish(self, ring: &RingRef, source: FreeModule, target: FreeModule) -> FreeModuleMap {
        debug_assert_eq!(self.rows, target.rank());
        let cols = self.cols.into_iter().map(|c| ModuleElement::new(ring, c)).collect();
        FreeModuleMap::new(ring, source, target, cols).expect("block shapes")
    }
}

/// Blocks of `(C ⊗ D)_n`: `(p, offset)` for `p` ascending.
fn tensor_blocks(c: &ChainComplex, d: &ChainComplex, n: i64) -> (Vec<(i64, usize)>, FreeModule) {
    let mut blocks = Vec::new();
    let mut module = FreeModule::standard(0);
    for p in c.lo()..=c.hi() {
        let q = n - p;
        if q < d.lo() || q > d.hi() {
            continue;
        }
        blocks.push((p, module.rank()));
        module = module.sum(&c.module(p).tensor(&d.module(q)));
    }
    (blocks, module)
}

/// `(C ⊗ D)_n = ⊕_{p+q=n} C_p ⊗ D_q`, blocks ordered by `p` ascending and
/// `x_i ⊗ y_j` at offset `i * rank(D_q) + j`;
/// `d(x ⊗ y) = d x ⊗ y + (-1)^p x ⊗ d y`.
pub fn tensor_complexes(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    if !crate::ring::same_ring(c.ring(), d.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = c.ring();
    let lo = c.lo() + d.lo();
    let hi = c.hi() + d.hi();
    let layout: Vec<(Vec<(i64, usize)>, FreeModule)> = (lo..=hi).map(|n| tensor_blocks(c, d, n)).collect();
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let (src_blocks, src) = &layout[(n - lo) as usize];
        let (tgt_blocks, tgt) = &layout[(n - lo - 1) as usize];
        let offset_of = |p: i64| tgt_blocks.iter().find(|b| b.0 == p).map(|b| b.1);
        let mut m = BlockMatrix::new(ring, tgt.rank(), src.rank());
        for &(p, col0) in src_blocks {
            let q = n - p;
            if let Some(row0) = offset_of(p - 1) {
                m.put(row0, col0, &c.differential(p).tensor_identity(&d.module(q)), false);
            }
            if let Some(row0) = offset_of(p) {
                m.put(
                    row0,
                    col0,
                    &d.differential(q).identity_tensor(&c.module(p)),
                    p.rem_euclid(2) == 1,
                );
            }
        }
        diffs.push(m.finish(ring, src.clone(), tgt.clone()));
    }
    let modules = layout.into_iter().map(|(_, m)| m).collect();
    ChainComplex::new(ring, lo, modules, diffs)
}

/// `((C_1 ⊗ C_2) ⊗ C_3) ⊗ ...`.
pub fn tensor_all(cs: &[ChainComplex]) -> Result<ChainComplex> {
    let (first, rest) = cs.split_first().ok_or(Error::EmptySequence)?;
    rest.iter().try_fold(first.clone(), |acc, c| tensor_complexes(&acc, c))
}

/// A free resolution of `R/I` truncated after `length` steps:
/// `F_0 = R`, `d_1 = (gens of I)`, each further step the syzygies of the
/// previous columns. Exact in degrees `1..length`.
pub fn free_resolution(ideal: &crate::groebner::Ideal, length: usize) -> Result<ChainComplex> {
    let ring = ideal.ring();
    let mut modules = vec![FreeModule::standard(1)];
    let mut diffs: Vec<FreeModuleMap> = Vec::new();
    let mut cols: Vec<ModuleElement> = ideal
        .gens()
        .iter()
        .map(|g| ModuleElement::new(ring, vec![g.clone()]))
        .collect();
    while diffs.len() < length && !cols.is_empty() {
        let target = modules.last().expect("nonempty").clone();
        let d = FreeModuleMap::from_columns(ring, target, cols)?;
        let shifts = d.source().degrees().map(<[i32]>::to_vec);
        let next = crate::groebner::syzygies_graded(ring, d.nrows(), d.columns(), shifts.as_deref())?;
        modules.push(d.source().clone());
        diffs.push(d);
        cols = next.into_iter().filter(|c| !c.is_zero()).collect();
    }
    ChainComplex::new(ring, 0, modules, diffs)
}
