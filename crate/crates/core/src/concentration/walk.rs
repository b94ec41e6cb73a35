//! Sign-pattern walks in Gray-code order: consecutive patterns differ in one
//! sign, so each step costs one vector update.

use alloc::vec::Vec;

use hashbrown::HashMap;

use super::lattice::Coord;

/// Visits `Σ εᵢvᵢ` for all `2ⁿ` patterns, starting from `offset`.
pub(crate) fn walk_sums<C: Coord>(vectors: &[Vec<C>], offset: &[C], mut visit: impl FnMut(&[C])) {
    let n = vectors.len();
    assert!(n < 64, "pattern index must fit in u64");
    let mut sum: Vec<C> = offset.to_vec();
    for v in vectors {
        for (s, c) in sum.iter_mut().zip(v) {
            s.sub_assign(c);
        }
    }
    let doubles: Vec<Vec<C>> = vectors.iter().map(|v| v.iter().map(Coord::double).collect()).collect();
    let mut state: u64 = 0;
    visit(&sum);
    for g in 1..(1u64 << n) {
        let i = g.trailing_zeros() as usize;
        let bit = 1u64 << i;
        if state & bit == 0 {
            for (s, c) in sum.iter_mut().zip(&doubles[i]) {
                s.add_assign(c);
            }
        } else {
            for (s, c) in sum.iter_mut().zip(&doubles[i]) {
                s.sub_assign(c);
            }
        }
        state ^= bit;
        visit(&sum);
    }
}

/// Number of patterns with `Σ εᵢvᵢ = target`, by full enumeration.
pub(crate) fn count_naive<C: Coord>(vectors: &[Vec<C>], target: &[C]) -> u64 {
    let zero = alloc::vec![C::zero(); target.len()];
    let mut hits = 0u64;
    walk_sums(vectors, &zero, |s| {
        if s == target {
            hits += 1;
        }
    });
    hits
}

/// Occurrence counts of every sum over the patterns of `vectors`, shifted by `offset`.
pub(crate) fn tabulate<C: Coord>(vectors: &[Vec<C>], offset: &[C]) -> HashMap<Vec<C>, u64> {
    let mut table: HashMap<Vec<C>, u64> = HashMap::new();
    walk_sums(vectors, offset, |s| {
        if let Some(c) = table.get_mut(s) {
            *c += 1;
        } else {
            table.insert(s.to_vec(), 1);
        }
    });
    table
}

/// Number of patterns with `Σ εᵢvᵢ = target`: tabulate the first half, then
/// walk the second half probing `target - right` in the table.
pub(crate) fn count_meet_in_the_middle<C: Coord>(vectors: &[Vec<C>], target: &[C]) -> u64 {
    let half = vectors.len() / 2;
    let (left, right) = vectors.split_at(half);
    let zero = alloc::vec![C::zero(); target.len()];
    let table = tabulate(left, &zero);
    let mut hits = 0u64;
    let mut need: Vec<C> = target.to_vec();
    walk_sums(right, &zero, |s| {
        for ((n, t), r) in need.iter_mut().zip(target).zip(s) {
            *n = t.clone();
            n.sub_assign(r);
        }
        if let Some(c) = table.get(need.as_slice()) {
            hits += c;
        }
    });
    hits
}
