use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ring::{same_ring, Monomial, MonomialOrder, Polynomial, RingRef};

use super::dimension::independent_sets_dimension;
use super::{GroebnerBasis, ModuleElement};

/// An ideal given by generators, with a lazily computed Gröbner basis under
/// the ring's default order.
#[derive(Debug)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &RingRef, gens: impl IntoIterator<Item = Polynomial>) -> Ideal {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        debug_assert!(gens.iter().all(|g| same_ring(g.ring(), ring)));
        Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal::new(ring, [])
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal::new(ring, [Polynomial::one(ring)])
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            let gens: Vec<ModuleElement> = self
                .gens
                .iter()
                .map(|g| ModuleElement::new(&self.ring, vec![g.clone()]))
                .collect();
            GroebnerBasis::compute(&self.ring, 1, &gens).expect("generators share the ring")
        })
    }

    /// The reduced Gröbner basis as polynomials.
    pub fn basis(&self) -> Vec<Polynomial> {
        self.groebner()
            .elements()
            .into_iter()
            .map(|e| e.into_coords().pop().expect("rank one"))
            .collect()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        let v = ModuleElement::new(&self.ring, vec![f.clone()]);
        self.groebner().reduces_to_zero(&v)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_whole_module()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        Ideal::new(
            &self.ring,
            self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a * b)),
        )
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner().leading_terms().into_iter().map(|(_, m)| m).collect()
    }

    /// Dimension of `R/I` read off the leading term ideal; `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> i64 {
        independent_sets_dimension(&self.leading_monomials(), self.ring.nvars())
    }

    pub fn krull_dimension_with_order(&self, order: MonomialOrder) -> i64 {
        if order == self.ring.order() {
            return self.krull_dimension();
        }
        let ring = self.ring.with_order(order);
        let gens: Vec<ModuleElement> = self
            .gens
            .iter()
            .map(|g| ModuleElement::new(&ring, vec![g.in_ring(&ring).expect("same variables")]))
            .collect();
        let gb = GroebnerBasis::compute(&ring, 1, &gens).expect("generators share the ring");
        let leads: Vec<Monomial> = gb.leading_terms().into_iter().map(|(_, m)| m).collect();
        independent_sets_dimension(&leads, ring.nvars())
    }

    /// `nvars - dim(R/I)`, valid for proper ideals of a polynomial ring.
    pub fn height(&self) -> Result<i64> {
        let d = self.krull_dimension();
        if d < 0 {
            return Err(Error::UnitIdeal("height of the unit ideal is undefined".into()));
        }
        Ok(self.ring.nvars() as i64 - d)
    }
}

pub fn membership(f: &Polynomial, ideal: &Ideal) -> bool {
    ideal.contains(f)
}

pub fn krull_dimension(ideal: &Ideal) -> i64 {
    ideal.krull_dimension()
}

pub fn height(ideal: &Ideal) -> Result<i64> {
    ideal.height()
}
