use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::ModuleElement;
use crate::ring::Polynomial;

use super::{FPModule, FreeModule, FreeModuleMap};

/// The `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// `∧^q M` for `M = coker(F_1 -> F_0)`: the cokernel of
/// `∧^{q-1} F_0 ⊗ F_1 -> ∧^q F_0`, `e_S ⊗ r ↦ e_S ∧ r`.
/// `∧^0 M` is `R/J` for a declared annihilator `J`, else `R`.
pub fn exterior_power(m: &FPModule, q: i64) -> Result<FPModule> {
    if q < 0 {
        return Err(Error::NegativeExponent(q));
    }
    let ring = m.ring();
    let q = q as usize;
    if q == 0 {
        return Ok(match m.annihilator() {
            Some(j) => FPModule::quotient_ring(j),
            None => FPModule::free(ring, FreeModule::standard(1)),
        });
    }
    if q == 1 {
        return Ok(m.clone());
    }
    let pres = m.presentation();
    let n = pres.nrows();
    let top = subsets(n, q);
    let index: HashMap<&[usize], usize> = top.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let degrees = pres
        .target()
        .degrees()
        .map(|d| top.iter().map(|s| s.iter().map(|&i| d[i]).sum()).collect::<Vec<i32>>());
    let target = FreeModule::new(top.len(), degrees);

    let mut columns = Vec::new();
    for s in subsets(n, q - 1) {
        for rel in pres.columns() {
            let mut coords = vec![Polynomial::zero(ring); top.len()];
            for (i, c) in rel.coords().iter().enumerate() {
                if c.is_zero() || s.contains(&i) {
                    continue;
                }
                // e_S ∧ e_i = (-1)^{#{s in S : s > i}} e_{S ∪ {i}}
                let above = s.iter().filter(|&&x| x > i).count();
                let mut u = s.clone();
                u.push(i);
                u.sort_unstable();
                let slot = index[u.as_slice()];
                coords[slot] = if above % 2 == 0 {
                    &coords[slot] + c
                } else {
                    &coords[slot] - c
                };
            }
            let v = ModuleElement::new(ring, coords);
            if !v.is_zero() {
                columns.push(v);
            }
        }
    }
    let pres = FreeModuleMap::from_columns(ring, target, columns)?;
    let out = FPModule::new(pres);
    Ok(match m.annihilator() {
        Some(j) => out.with_annihilator_unchecked(j.clone()),
        None => out,
    })
}
