use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Monomial;

use super::FPModule;

/// Dimensions over the coefficient field of the graded pieces in degrees
/// `0..=D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertFunction {
    values: Vec<u64>,
}

impl HilbertFunction {
    pub fn new(values: Vec<u64>) -> HilbertFunction {
        HilbertFunction { values }
    }

    pub fn zero(bound: usize) -> HilbertFunction {
        HilbertFunction::new(vec![0; bound + 1])
    }

    pub fn degree_bound(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &HilbertFunction) -> HilbertFunction {
        HilbertFunction::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    /// Pointwise difference, `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &HilbertFunction) -> Option<HilbertFunction> {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u64>>>()
            .map(HilbertFunction::new)
    }

    pub fn scaled(&self, c: u64) -> HilbertFunction {
        HilbertFunction::new(self.values.iter().map(|a| a * c).collect())
    }

    /// `d -> self(d - s)`, filling with zeros below the shift.
    pub fn shifted(&self, s: i32) -> HilbertFunction {
        let n = self.values.len() as i64;
        HilbertFunction::new(
            (0..n)
                .map(|d| {
                    let e = d - s as i64;
                    if (0..n).contains(&e) {
                        self.values[e as usize]
                    } else {
                        0
                    }
                })
                .collect(),
        )
    }

    /// A nonzero `s` with `self(d) = other(d - s)` wherever both sides are
    /// inside the window, if the two functions differ only by such a shift.
    pub fn uniform_shift(&self, other: &HilbertFunction) -> Option<i32> {
        if self == other || self.is_zero() || other.is_zero() {
            return None;
        }
        let n = self.values.len() as i32;
        (-(n - 1)..n).filter(|s| *s != 0).find(|&s| {
            let mut overlap_nonzero = false;
            let ok = (0..n).all(|d| {
                let e = d - s;
                if !(0..n).contains(&e) {
                    return true;
                }
                let (a, b) = (self.values[d as usize], other.values[e as usize]);
                overlap_nonzero |= a != 0;
                a == b
            });
            ok && overlap_nonzero
        })
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// All exponent vectors of total degree `d` in `n` variables.
pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::from_exponents(&[]));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Hilbert function of a graded module up to degree `bound`, by counting
/// standard monomials of the leading module of the relations.
pub fn hilbert_function(m: &FPModule, bound: usize) -> Result<HilbertFunction> {
    if !m.is_graded() {
        return Err(Error::NotHomogeneous(
            "Hilbert functions need a homogeneous presentation with degree shifts".into(),
        ));
    }
    let degrees = m.generator_degrees().expect("graded");
    let nvars = m.ring().nvars();
    let leads = m.presentation().image_basis().leading_terms();
    let mut per_pos: Vec<Vec<Monomial>> = vec![Vec::new(); degrees.len()];
    for (p, lm) in leads {
        per_pos[p].push(lm);
    }
    let mut values = vec![0u64; bound + 1];
    let mut cache: Vec<Option<Vec<Monomial>>> = vec![None; bound + 1];
    for (pos, &shift) in degrees.iter().enumerate() {
        for (d, v) in values.iter_mut().enumerate() {
            let k = d as i64 - shift as i64;
            if k < 0 || k > bound as i64 {
                continue;
            }
            let monos = cache[k as usize].get_or_insert_with(|| monomials_of_degree(nvars, k as u32));
            *v += monos
                .iter()
                .filter(|mono| !per_pos[pos].iter().any(|l| l.divides(mono)))
                .count() as u64;
        }
    }
    Ok(HilbertFunction::new(values))
}
