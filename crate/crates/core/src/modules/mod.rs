//! Finitely presented modules over a polynomial ring, given as cokernels of
//! maps of graded free modules.

mod exterior;
mod hilbert;
mod ops;

use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, Ideal, ModuleElement};
use crate::ring::{same_ring, Polynomial, RingRef};

pub use exterior::{exterior_power, subsets};
pub(crate) use hilbert::monomials_of_degree;
pub use hilbert::{hilbert_function, HilbertFunction};
pub use ops::{
    cokernel_of_map, conormal, direct_sum, induced_kernel, intersect_submodules, is_zero_module, kernel, restrict_to,
    subquotient, tensor_modules,
};

/// Default degree bound for Hilbert function comparisons.
pub const DEFAULT_DEGREE_BOUND: usize = 12;

/// A free module `⊕ R(-d_i)`; `degrees` holds the generator degrees `d_i`
/// when the module is graded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModule {
    rank: usize,
    degrees: Option<Vec<i32>>,
}

impl FreeModule {
    pub fn new(rank: usize, degrees: Option<Vec<i32>>) -> FreeModule {
        if let Some(d) = &degrees {
            assert_eq!(d.len(), rank, "one degree per basis element");
        }
        FreeModule { rank, degrees }
    }

    pub fn graded(degrees: Vec<i32>) -> FreeModule {
        FreeModule {
            rank: degrees.len(),
            degrees: Some(degrees),
        }
    }

    /// Rank `n`, all generators in degree zero.
    pub fn standard(rank: usize) -> FreeModule {
        FreeModule::graded(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degrees(&self) -> Option<&[i32]> {
        self.degrees.as_deref()
    }

    /// Basis `(i, j) -> i * other.rank + j`, degrees added.
    pub fn tensor(&self, other: &FreeModule) -> FreeModule {
        let degrees = match (&self.degrees, &other.degrees) {
            (Some(a), Some(b)) => Some(a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()),
            _ => None,
        };
        FreeModule::new(self.rank * other.rank, degrees)
    }

    pub fn sum(&self, other: &FreeModule) -> FreeModule {
        let degrees = match (&self.degrees, &other.degrees) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        FreeModule::new(self.rank + other.rank, degrees)
    }

    pub fn shifted(&self, by: i32) -> FreeModule {
        FreeModule::new(
            self.rank,
            self.degrees.as_ref().map(|d| d.iter().map(|x| x + by).collect()),
        )
    }
}

/// A matrix of polynomials mapping `source` to `target`, stored by columns
/// (column `j` is the image of the `j`-th source basis vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleMap {
    ring: RingRef,
    source: FreeModule,
    target: FreeModule,
    columns: Vec<ModuleElement>,
}

impl FreeModuleMap {
    pub fn new(ring: &RingRef, source: FreeModule, target: FreeModule, columns: Vec<ModuleElement>) -> Result<Self> {
        if columns.len() != source.rank() {
            return Err(Error::RankMismatch {
                expected: source.rank(),
                found: columns.len(),
            });
        }
        for c in &columns {
            if c.rank() != target.rank() {
                return Err(Error::RankMismatch {
                    expected: target.rank(),
                    found: c.rank(),
                });
            }
            if !same_ring(c.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(FreeModuleMap {
            ring: ring.clone(),
            source,
            target,
            columns,
        })
    }

    /// Builds a map from `rows[i][j]` (target row `i`, source column `j`).
    pub fn from_rows(
        ring: &RingRef,
        source: FreeModule,
        target: FreeModule,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if rows.len() != target.rank() {
            return Err(Error::RankMismatch {
                expected: target.rank(),
                found: rows.len(),
            });
        }
        let mut columns = vec![Vec::with_capacity(rows.len()); source.rank()];
        for row in rows {
            if row.len() != source.rank() {
                return Err(Error::RankMismatch {
                    expected: source.rank(),
                    found: row.len(),
                });
            }
            for (j, p) in row.into_iter().enumerate() {
                columns[j].push(p);
            }
        }
        let columns = columns.into_iter().map(|c| ModuleElement::new(ring, c)).collect();
        FreeModuleMap::new(ring, source, target, columns)
    }

    /// Columns with source degrees inferred from the target grading; the
    /// source is ungraded when some column is not homogeneous. Zero columns
    /// are kept and get degree zero.
    pub fn from_columns(ring: &RingRef, target: FreeModule, columns: Vec<ModuleElement>) -> Result<Self> {
        let degrees = target.degrees().and_then(|t| {
            columns
                .iter()
                .map(|c| if c.is_zero() { Some(0) } else { c.degree(t) })
                .collect::<Option<Vec<i32>>>()
        });
        let source = FreeModule::new(columns.len(), degrees);
        FreeModuleMap::new(ring, source, target, columns)
    }

    pub fn zero(ring: &RingRef, source: FreeModule, target: FreeModule) -> Self {
        let columns = vec![ModuleElement::zero(ring, target.rank()); source.rank()];
        FreeModuleMap {
            ring: ring.clone(),
            source,
            target,
            columns,
        }
    }

    pub fn identity(ring: &RingRef, module: FreeModule) -> Self {
        let columns = (0..module.rank())
            .map(|i| ModuleElement::unit(ring, module.rank(), i))
            .collect();
        FreeModuleMap {
            ring: ring.clone(),
            source: module.clone(),
            target: module,
            columns,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn columns(&self) -> &[ModuleElement] {
        &self.columns
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        self.columns[j].coord(i)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(ModuleElement::is_zero)
    }

    /// Both sides graded and entry `(i, j)` homogeneous of degree
    /// `source[j] - target[i]` whenever nonzero.
    pub fn is_graded(&self) -> bool {
        let (Some(s), Some(t)) = (self.source.degrees(), self.target.degrees()) else {
            return false;
        };
        self.columns.iter().enumerate().all(|(j, c)| {
            c.coords().iter().enumerate().all(|(i, p)| {
                p.is_zero() || (p.is_homogeneous() && p.total_degree().expect("nonzero") as i32 == s[j] - t[i])
            })
        })
    }

    pub fn apply(&self, v: &ModuleElement) -> ModuleElement {
        assert_eq!(v.rank(), self.ncols(), "rank mismatch");
        let mut acc = ModuleElement::zero(&self.ring, self.nrows());
        for (c, x) in self.columns.iter().zip(v.coords()) {
            if !x.is_zero() {
                acc = acc.add(&c.mul_poly(x));
            }
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeModuleMap) -> Result<FreeModuleMap> {
        if other.nrows() != self.ncols() {
            return Err(Error::RankMismatch {
                expected: self.ncols(),
                found: other.nrows(),
            });
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        FreeModuleMap::new(&self.ring, other.source.clone(), self.target.clone(), columns)
    }

    /// Juxtaposes the columns of two maps with the same target.
    pub fn hstack(&self, other: &FreeModuleMap) -> Result<FreeModuleMap> {
        if self.nrows() != other.nrows() {
            return Err(Error::RankMismatch {
                expected: self.nrows(),
                found: other.nrows(),
            });
        }
        let columns = self.columns.iter().chain(&other.columns).cloned().collect();
        FreeModuleMap::new(&self.ring, self.source.sum(&other.source), self.target.clone(), columns)
    }

    /// `self ⊗ id_F`: basis `(i, j)` of `X ⊗ F` at index `i * rank(F) + j`.
    pub fn tensor_identity(&self, f: &FreeModule) -> FreeModuleMap {
        let n = f.rank();
        let mut columns = Vec::with_capacity(self.ncols() * n);
        for c in &self.columns {
            for j in 0..n {
                let mut coords = vec![Polynomial::zero(&self.ring); self.nrows() * n];
                for (i, p) in c.coords().iter().enumerate() {
                    coords[i * n + j] = p.clone();
                }
                columns.push(ModuleElement::new(&self.ring, coords));
            }
        }
        FreeModuleMap {
            ring: self.ring.clone(),
            source: self.source.tensor(f),
            target: self.target.tensor(f),
            columns,
        }
    }

    /// `id_F ⊗ self`: basis `(j, i)` of `F ⊗ X` at index `j * rank(X) + i`.
    pub fn identity_tensor(&self, f: &FreeModule) -> FreeModuleMap {
        let m = self.nrows();
        let mut columns = Vec::with_capacity(self.ncols() * f.rank());
        for j in 0..f.rank() {
            for c in &self.columns {
                let mut coords = vec![Polynomial::zero(&self.ring); f.rank() * m];
                for (i, p) in c.coords().iter().enumerate() {
                    coords[j * m + i] = p.clone();
                }
                columns.push(ModuleElement::new(&self.ring, coords));
            }
        }
        FreeModuleMap {
            ring: self.ring.clone(),
            source: f.tensor(&self.source),
            target: f.tensor(&self.target),
            columns,
        }
    }

    /// Multiplies every entry by `c`.
    pub fn scaled(&self, c: &Polynomial) -> FreeModuleMap {
        FreeModuleMap {
            columns: self.columns.iter().map(|v| v.mul_poly(c)).collect(),
            ..self.clone()
        }
    }

    /// Gröbner basis of the column span inside the target.
    pub fn image_basis(&self) -> GroebnerBasis {
        GroebnerBasis::compute_graded(&self.ring, self.nrows(), &self.columns, self.target.degrees(), false)
            .expect("columns live in the target")
    }
}

impl fmt::Display for FreeModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows() {
            write!(f, "[")?;
            for j in 0..self.ncols() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// The cokernel of `presentation: F_1 -> F_0`.
///
/// `embedding`, when present, gives for each generator its image in some
/// ambient free module (kernels and subquotients remember where they came
/// from). `annihilator`, when present, declares the module as an `R/J`-module.
#[derive(Clone, Debug)]
pub struct FPModule {
    presentation: FreeModuleMap,
    annihilator: Option<Ideal>,
    embedding: Option<Vec<ModuleElement>>,
}

impl FPModule {
    pub fn new(presentation: FreeModuleMap) -> FPModule {
        FPModule {
            presentation,
            annihilator: None,
            embedding: None,
        }
    }

    pub fn zero(ring: &RingRef) -> FPModule {
        FPModule::free(ring, FreeModule::standard(0))
    }

    pub fn free(ring: &RingRef, module: FreeModule) -> FPModule {
        FPModule::new(FreeModuleMap::zero(ring, FreeModule::standard(0), module))
    }

    /// `R/J` with its generator in degree zero.
    pub fn quotient_ring(ideal: &Ideal) -> FPModule {
        let ring = ideal.ring();
        let target = FreeModule::standard(1);
        let columns = ideal
            .gens()
            .iter()
            .map(|g| ModuleElement::new(ring, vec![g.clone()]))
            .collect();
        let pres = FreeModuleMap::from_columns(ring, target, columns).expect("rank one");
        FPModule::new(pres).with_annihilator_unchecked(ideal.clone())
    }

    /// The ideal `J` as a module: generators `g_i` in degree `deg g_i`,
    /// relations their syzygies.
    pub fn from_ideal(ideal: &Ideal) -> FPModule {
        ops::ideal_module(ideal)
    }

    /// Declares `J` as annihilator after checking `J * F_0 ⊆ image`.
    pub fn with_annihilator(self, ideal: Ideal) -> Result<FPModule> {
        let gb = self.presentation.image_basis();
        let ring = self.ring().clone();
        let n = self.num_generators();
        for g in ideal.gens() {
            for i in 0..n {
                let v = ModuleElement::unit(&ring, n, i).mul_poly(g);
                if !gb.reduces_to_zero(&v) {
                    return Err(Error::Invalid(format!("{g} does not annihilate generator {i}")));
                }
            }
        }
        Ok(self.with_annihilator_unchecked(ideal))
    }

    pub(crate) fn with_annihilator_unchecked(mut self, ideal: Ideal) -> FPModule {
        self.annihilator = Some(ideal);
        self
    }

    pub(crate) fn with_embedding(mut self, gens: Vec<ModuleElement>) -> FPModule {
        debug_assert_eq!(gens.len(), self.num_generators());
        self.embedding = Some(gens);
        self
    }

    pub fn ring(&self) -> &RingRef {
        self.presentation.ring()
    }

    pub fn presentation(&self) -> &FreeModuleMap {
        &self.presentation
    }

    pub fn annihilator(&self) -> Option<&Ideal> {
        self.annihilator.as_ref()
    }

    pub fn embedding(&self) -> Option<&[ModuleElement]> {
        self.embedding.as_deref()
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.nrows()
    }

    pub fn num_relations(&self) -> usize {
        self.presentation.ncols()
    }

    pub fn generator_degrees(&self) -> Option<&[i32]> {
        self.presentation.target().degrees()
    }

    pub fn is_graded(&self) -> bool {
        self.presentation.is_graded()
    }

    /// Removes generators made redundant by relations with a unit entry,
    /// and zero relations. The module is unchanged up to isomorphism.
    pub fn pruned(&self) -> FPModule {
        ops::prune(self)
    }

    /// All relations lie in `J * F_0`, i.e. the module is free of rank
    /// `num_generators` over `R/J`.
    pub fn is_free_over(&self, ideal: &Ideal) -> bool {
        self.presentation
            .columns()
            .iter()
            .all(|c| c.coords().iter().all(|p| ideal.contains(p)))
    }
}

impl fmt::Display for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coker of a {}x{} matrix",
            self.num_generators(),
            self.num_relations()
        )?;
        if let Some(d) = self.generator_degrees() {
            write!(f, ", generator degrees {d:?}")?;
        }
        Ok(())
    }
}
