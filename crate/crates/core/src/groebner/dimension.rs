use crate::ring::Monomial;

/// A largest set of variables `U` such that no monomial in `leads` is
/// supported inside `U`, i.e. `k[U]` meets the monomial ideal only in zero.
/// `None` when the monomial ideal contains `1`.
pub fn max_independent_set(leads: &[Monomial], nvars: usize) -> Option<Vec<usize>> {
    if leads.iter().any(Monomial::is_one) {
        return None;
    }
    let supports: Vec<u64> = leads
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    assert!(nvars < 64, "too many variables for subset search");
    let mut best: u64 = 0;
    let mut best_size = 0;
    // exhaustive search; desk-scale variable counts only
    for set in 0u64..(1u64 << nvars) {
        let size = set.count_ones();
        if size <= best_size && !(size == 0 && best_size == 0) {
            continue;
        }
        if supports.iter().all(|s| s & !set != 0) {
            best = set;
            best_size = size;
        }
    }
    Some((0..nvars).filter(|i| best & (1 << i) != 0).collect())
}

/// Krull dimension of `k[x]/(leads)`; `-1` for the unit ideal.
pub fn independent_sets_dimension(leads: &[Monomial], nvars: usize) -> i64 {
    max_independent_set(leads, nvars).map_or(-1, |s| s.len() as i64)
}
