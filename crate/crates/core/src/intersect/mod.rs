//! Complete intersections on one affine chart, their multitors and excess
//! modules, and checks of the self-intersection and excess formulas.

mod excess;
mod verdict;

use serde::Serialize;

use crate::complexes::{free_resolution, homology, koszul_complex, tensor_all, tensor_with_module};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::modules::{is_zero_module, FPModule};
use crate::ring::{same_ring, Polynomial, RingRef};

pub use excess::{excess_map, excess_module};
pub use verdict::{les_verify, verify_excess_formula, verify_self_intersection, Check, Verdict, VerdictRow};

/// Outcome of the two regularity tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    /// `H_q(K(fs)) = 0` for every `q > 0`; the answer that is acted upon.
    pub koszul: bool,
    /// `ht(fs) == |fs|`, only for homogeneous sequences.
    pub height: Option<bool>,
    pub height_value: Option<i64>,
    /// Degrees `q > 0` with nonzero Koszul homology.
    pub nonvanishing: Vec<i64>,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.koszul
    }

    /// Both oracles ran and gave the same answer, or only one applied.
    pub fn oracles_agree(&self) -> bool {
        self.height.is_none_or(|h| h == self.koszul)
    }
}

/// Regularity of `fs` by Koszul vanishing, with the height test alongside
/// when the sequence is homogeneous.
pub fn is_regular_sequence(fs: &[Polynomial]) -> Result<RegularityReport> {
    let first = fs.first().ok_or(Error::EmptySequence)?;
    let ring = first.ring();
    if fs.iter().any(|f| !same_ring(f.ring(), ring)) {
        return Err(Error::RingMismatch);
    }
    if fs.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let ideal = Ideal::new(ring, fs.to_vec());
    if ideal.is_unit() {
        return Err(Error::UnitIdeal(
            "a regular sequence must generate a proper ideal".into(),
        ));
    }
    let k = koszul_complex(fs)?;
    let mut nonvanishing = Vec::new();
    for q in 1..=fs.len() as i64 {
        if !is_zero_module(&homology(&k, q)?) {
            nonvanishing.push(q);
        }
    }
    let (height, height_value) = if fs.iter().all(Polynomial::is_homogeneous) {
        let h = ideal.height()?;
        (Some(h == fs.len() as i64), Some(h))
    } else {
        (None, None)
    };
    Ok(RegularityReport {
        koszul: nonvanishing.is_empty(),
        height,
        height_value,
        nonvanishing,
    })
}

/// `V(f_1..f_c)` with `f` certified regular, so `K(f)` resolves `R/I`.
#[derive(Clone, Debug)]
pub struct CIVariety {
    name: String,
    ring: RingRef,
    gens: Vec<Polynomial>,
    ideal: Ideal,
    report: Option<RegularityReport>,
}

impl CIVariety {
    /// Certifies the generators; fails with a certification error naming
    /// the variety when the sequence is not regular.
    pub fn new(name: &str, ring: &RingRef, gens: Vec<Polynomial>) -> Result<CIVariety> {
        if gens.is_empty() {
            return Ok(CIVariety::ambient(name, ring));
        }
        let report = is_regular_sequence(&gens).map_err(|e| match e {
            Error::UnitIdeal(_) => Error::Certification(format!("{name}: the generators give the unit ideal")),
            Error::ZeroPolynomial => Error::Certification(format!("{name}: a designated generator is zero")),
            other => other,
        })?;
        if !report.is_regular() {
            let seq: Vec<String> = gens.iter().map(ToString::to_string).collect();
            return Err(Error::Certification(format!(
                "{name}: ({}) is not a regular sequence (Koszul homology in degrees {:?})",
                seq.join(", "),
                report.nonvanishing
            )));
        }
        Ok(CIVariety {
            name: name.to_string(),
            ring: ring.clone(),
            ideal: Ideal::new(ring, gens.clone()),
            gens,
            report: Some(report),
        })
    }

    /// The whole chart, codimension zero.
    pub fn ambient(name: &str, ring: &RingRef) -> CIVariety {
        CIVariety {
            name: name.to_string(),
            ring: ring.clone(),
            gens: Vec::new(),
            ideal: Ideal::zero(ring),
            report: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn codim(&self) -> usize {
        self.gens.len()
    }

    pub fn regularity(&self) -> Option<&RegularityReport> {
        self.report.as_ref()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }
}

/// `Y_1, ..., Y_n` with `I_W = Σ I_i`. When `I_W` is proper, `W` carries
/// certified regular generators.
#[derive(Clone, Debug)]
pub struct IntersectionInstance {
    name: String,
    ring: RingRef,
    varieties: Vec<CIVariety>,
    w_ideal: Ideal,
    w: Option<CIVariety>,
}

impl IntersectionInstance {
    /// `w_gens` designates generators of `I_W`; without them the reduced
    /// Gröbner basis of `Σ I_i` is tried.
    pub fn new(name: &str, varieties: Vec<CIVariety>, w_gens: Option<Vec<Polynomial>>) -> Result<Self> {
        let first = varieties.first().ok_or(Error::EmptySequence)?;
        let ring = first.ring().clone();
        if varieties.iter().any(|y| !same_ring(y.ring(), &ring)) {
            return Err(Error::RingMismatch);
        }
        let all: Vec<Polynomial> = varieties.iter().flat_map(|y| y.generators().iter().cloned()).collect();
        let w_ideal = Ideal::new(&ring, all);
        if w_ideal.is_unit() {
            return Ok(IntersectionInstance {
                name: name.to_string(),
                ring,
                varieties,
                w_ideal,
                w: None,
            });
        }
        let gens = match w_gens {
            Some(g) => {
                let designated = Ideal::new(&ring, g.clone());
                if !designated.same_ideal(&w_ideal) {
                    return Err(Error::Certification(format!(
                        "{name}: the designated generators of W do not generate the sum of the ideals"
                    )));
                }
                g
            }
            None => w_ideal.basis(),
        };
        let w = CIVariety::new(&format!("{name}.W"), &ring, gens)?;
        let total: usize = varieties.iter().map(CIVariety::codim).sum();
        if total < w.codim() {
            return Err(Error::Certification(format!(
                "{name}: codim W = {} exceeds the sum of codimensions {total}",
                w.codim()
            )));
        }
        Ok(IntersectionInstance {
            name: name.to_string(),
            ring,
            varieties,
            w_ideal,
            w: Some(w),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn varieties(&self) -> &[CIVariety] {
        &self.varieties
    }

    pub fn w_ideal(&self) -> &Ideal {
        &self.w_ideal
    }

    /// `None` when the intersection is empty.
    pub fn w(&self) -> Option<&CIVariety> {
        self.w.as_ref()
    }

    pub fn is_empty_intersection(&self) -> bool {
        self.w.is_none()
    }

    /// `Σ codim Y_i - codim W`, `None` for an empty intersection.
    pub fn excess(&self) -> Option<usize> {
        let total: usize = self.varieties.iter().map(CIVariety::codim).sum();
        self.w.as_ref().map(|w| total - w.codim())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.varieties.iter().all(CIVariety::is_homogeneous) && self.w.as_ref().is_none_or(CIVariety::is_homogeneous)
    }
}

fn concatenated(ys: &[CIVariety]) -> Result<Vec<Polynomial>> {
    if ys.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(ys.iter().flat_map(|y| y.generators().iter().cloned()).collect())
}

/// `Tor_q(O_{Y_1}, ..., O_{Y_n})` as `H_q` of the Koszul complex of all
/// generator sequences concatenated.
pub fn multitor(ys: &[CIVariety], q: i64) -> Result<FPModule> {
    let fs = concatenated(ys)?;
    let ring = ys[0].ring();
    if fs.is_empty() {
        return Ok(if q == 0 {
            FPModule::free(ring, crate::modules::FreeModule::standard(1))
        } else {
            FPModule::zero(ring)
        });
    }
    let h = homology(&koszul_complex(&fs)?, q)?;
    Ok(h.with_annihilator_unchecked(Ideal::new(ring, fs)))
}

/// The same multitor through the left-associated tensor product of the
/// individual Koszul complexes.
pub fn multitor_via_tensor(ys: &[CIVariety], q: i64) -> Result<FPModule> {
    concatenated(ys)?;
    let ring = ys[0].ring();
    let cs: Vec<_> = ys
        .iter()
        .map(|y| crate::complexes::KoszulData::new(ring, y.generators().to_vec()).map(|k| k.complex()))
        .collect::<Result<_>>()?;
    homology(&tensor_all(&cs)?, q)
}

/// One side of a Tor-independence question.
#[derive(Clone, Debug)]
pub enum TorFactor {
    Variety(CIVariety),
    /// `R/J` for an arbitrary ideal; the zero ideal gives the flat module `R`.
    Ideal(Ideal),
}

impl TorFactor {
    fn ring(&self) -> &RingRef {
        match self {
            TorFactor::Variety(y) => y.ring(),
            TorFactor::Ideal(i) => i.ring(),
        }
    }
}

/// `Tor_q(R/A, R/B) = 0` for all `q ≥ 1` up to the length of the
/// resolution used.
pub fn is_tor_independent(a: &TorFactor, b: &TorFactor) -> Result<bool> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    match (a, b) {
        (TorFactor::Variety(x), TorFactor::Variety(y)) => {
            let pair = [x.clone(), y.clone()];
            for q in 1..=(x.codim() + y.codim()) as i64 {
                if !is_zero_module(&multitor(&pair, q)?) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (TorFactor::Variety(y), TorFactor::Ideal(j)) | (TorFactor::Ideal(j), TorFactor::Variety(y)) => {
            if y.codim() == 0 {
                return Ok(true);
            }
            let k = koszul_complex(y.generators())?;
            tor_vanishes(&k, j, y.codim())
        }
        (TorFactor::Ideal(i), TorFactor::Ideal(j)) => {
            let n = i.ring().nvars();
            let f = free_resolution(i, n + 1)?;
            tor_vanishes(&f, j, n)
        }
    }
}

fn tor_vanishes(res: &crate::complexes::ChainComplex, j: &Ideal, top: usize) -> Result<bool> {
    let t = tensor_with_module(res, &FPModule::quotient_ring(j))?;
    for q in 1..=top as i64 {
        if !is_zero_module(&t.homology(q)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
