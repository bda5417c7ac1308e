use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::ModuleElement;
use crate::modules::{subsets, FreeModule, FreeModuleMap};
use crate::ring::{same_ring, Polynomial, RingRef};

use super::{tensor_complexes, ChainComplex};

/// A sequence `f_1..f_n` with the degrees used for its Koszul complex.
///
/// Degree `q` has basis `e_S`, `S` running over the `q`-subsets of
/// `0..n` in lexicographic order, and
/// `d(e_S) = Σ_{i∈S} (-1)^{pos(i,S)+1} f_i e_{S∖i}` with `pos` 1-based.
#[derive(Clone, Debug)]
pub struct KoszulData {
    ring: RingRef,
    fs: Vec<Polynomial>,
    degrees: Option<Vec<i32>>,
}

impl KoszulData {
    /// Degrees are taken from the elements when they are all homogeneous;
    /// a zero element counts as degree zero.
    pub fn new(ring: &RingRef, fs: Vec<Polynomial>) -> Result<KoszulData> {
        if fs.iter().any(|f| !same_ring(f.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let degrees = fs
            .iter()
            .map(|f| match f.total_degree() {
                None => Some(0),
                Some(d) if f.is_homogeneous() => Some(d as i32),
                Some(_) => None,
            })
            .collect();
        Ok(KoszulData {
            ring: ring.clone(),
            fs,
            degrees,
        })
    }

    /// Explicit degrees, checked against every nonzero element.
    pub fn with_degrees(ring: &RingRef, fs: Vec<Polynomial>, degrees: Vec<i32>) -> Result<KoszulData> {
        if degrees.len() != fs.len() {
            return Err(Error::RankMismatch {
                expected: fs.len(),
                found: degrees.len(),
            });
        }
        for (f, d) in fs.iter().zip(&degrees) {
            if !same_ring(f.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if let Some(td) = f.total_degree() {
                if !f.is_homogeneous() || td as i32 != *d {
                    return Err(Error::NotHomogeneous(format!("{f} is not homogeneous of degree {d}")));
                }
            }
        }
        Ok(KoszulData {
            ring: ring.clone(),
            fs,
            degrees: Some(degrees),
        })
    }

    pub fn sequence(&self) -> &[Polynomial] {
        &self.fs
    }

    pub fn degrees(&self) -> Option<&[i32]> {
        self.degrees.as_deref()
    }

    pub fn len(&self) -> usize {
        self.fs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fs.is_empty()
    }

    fn component(&self, q: usize) -> FreeModule {
        let basis = subsets(self.fs.len(), q);
        let degrees = self
            .degrees
            .as_ref()
            .map(|d| basis.iter().map(|s| s.iter().map(|&i| d[i]).sum()).collect());
        FreeModule::new(basis.len(), degrees)
    }

    /// The complex; an empty sequence gives `R` in degree zero.
    pub fn complex(&self) -> ChainComplex {
        let ring = &self.ring;
        let n = self.fs.len();
        let modules: Vec<FreeModule> = (0..=n).map(|q| self.component(q)).collect();
        let mut diffs = Vec::with_capacity(n);
        for q in 1..=n {
            let lower: HashMap<Vec<usize>, usize> =
                subsets(n, q - 1).into_iter().enumerate().map(|(i, s)| (s, i)).collect();
            let columns = subsets(n, q)
                .into_iter()
                .map(|s| {
                    let mut coords = vec![Polynomial::zero(ring); lower.len()];
                    for (k, &i) in s.iter().enumerate() {
                        let mut rest = s.clone();
                        rest.remove(k);
                        // pos = k + 1, sign (-1)^{k+2} = (-1)^k
                        coords[lower[&rest]] = if k % 2 == 0 { self.fs[i].clone() } else { -&self.fs[i] };
                    }
                    ModuleElement::new(ring, coords)
                })
                .collect();
            let d =
                FreeModuleMap::new(ring, modules[q].clone(), modules[q - 1].clone(), columns).expect("subset shapes");
            diffs.push(d);
        }
        ChainComplex::new(ring, 0, modules, diffs).expect("Koszul differentials square to zero")
    }
}

/// The Koszul complex of a nonempty sequence.
pub fn koszul_complex(fs: &[Polynomial]) -> Result<ChainComplex> {
    let first = fs.first().ok_or(Error::EmptySequence)?;
    Ok(KoszulData::new(first.ring(), fs.to_vec())?.complex())
}

/// The Koszul complex with prescribed degrees, for sequences containing
/// zeros that should sit in a positive degree.
pub fn koszul_complex_with_degrees(fs: &[Polynomial], degrees: &[i32]) -> Result<ChainComplex> {
    let first = fs.first().ok_or(Error::EmptySequence)?;
    Ok(KoszulData::with_degrees(first.ring(), fs.to_vec(), degrees.to_vec())?.complex())
}

fn permutation_sign(v: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// `φ_n : (K(fs) ⊗ K(gs))_n -> K(fs ∥ gs)_n`, `e_S ⊗ e_T ↦ ± e_{S ∪ (T + |fs|)}`
/// with the sign of the shuffle sorting `S ∥ (T + |fs|)`. Returns the maps
/// for `n = 0..=|fs|+|gs|`, each checked to be a chain map component.
pub fn koszul_tensor_iso(ring: &RingRef, fs: &[Polynomial], gs: &[Polynomial]) -> Result<Vec<FreeModuleMap>> {
    let kf = KoszulData::new(ring, fs.to_vec())?;
    let kg = KoszulData::new(ring, gs.to_vec())?;
    let both = KoszulData::new(ring, fs.iter().chain(gs).cloned().collect())?;
    let (a, b) = (fs.len(), gs.len());
    let source = tensor_complexes(&kf.complex(), &kg.complex())?;
    let target = both.complex();
    let mut maps = Vec::with_capacity(a + b + 1);
    for n in 0..=a + b {
        let index: HashMap<Vec<usize>, usize> =
            subsets(a + b, n).into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut columns = Vec::with_capacity(index.len());
        for p in 0..=n.min(a) {
            let q = n - p;
            if q > b {
                continue;
            }
            for s in subsets(a, p) {
                for t in subsets(b, q) {
                    let joined: Vec<usize> = s.iter().copied().chain(t.iter().map(|j| j + a)).collect();
                    let negative = permutation_sign(&joined);
                    let mut sorted = joined;
                    sorted.sort_unstable();
                    let mut coords = vec![Polynomial::zero(ring); index.len()];
                    let one = Polynomial::one(ring);
                    coords[index[&sorted]] = if negative { -&one } else { one };
                    columns.push(ModuleElement::new(ring, coords));
                }
            }
        }
        let m = FreeModuleMap::new(ring, source.module(n as i64), target.module(n as i64), columns)?;
        maps.push(m);
    }
    if !is_chain_map(&maps, &source, &target)? {
        return Err(Error::BrokenComplex(
            "Koszul tensor identification does not commute with d".into(),
        ));
    }
    Ok(maps)
}

/// `d ∘ φ_n = φ_{n-1} ∘ d` for every `n`, with `phi[k]` in degree `src.lo() + k`.
pub fn is_chain_map(phi: &[FreeModuleMap], src: &ChainComplex, tgt: &ChainComplex) -> Result<bool> {
    let lo = src.lo();
    for (k, f) in phi.iter().enumerate() {
        let n = lo + k as i64;
        let left = tgt.differential(n).compose(f)?;
        let right = if k == 0 {
            FreeModuleMap::zero(src.ring(), src.module(n), tgt.module(n - 1))
        } else {
            phi[k - 1].compose(&src.differential(n))?
        };
        if left.columns() != right.columns() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Each column has exactly one nonzero entry, a unit constant, and no two
/// columns share a row.
pub fn is_signed_permutation(m: &FreeModuleMap) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    let mut seen = vec![false; m.nrows()];
    m.columns().iter().all(|c| {
        let nz: Vec<usize> = (0..c.rank()).filter(|&i| !c.coord(i).is_zero()).collect();
        match nz.as_slice() {
            [i] => {
                let ok = !seen[*i]
                    && c.coord(*i)
                        .as_nonzero_constant()
                        .is_some_and(|s| s.is_one() || (-s).is_one());
                seen[*i] = true;
                ok
            }
            _ => false,
        }
    })
}
