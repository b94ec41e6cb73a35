//! Multi-threaded sum tables: the sign-pattern space is split by the signs
//! of the last few vectors, each part is tabulated on its own thread, and
//! the parts are merged by count addition.

use littlewood_core::{Instance, RVector, Rational, SumTable};

use crate::error::Result;

/// Full sum table built with up to `workers` threads.
pub fn sum_table_parallel(vectors: &[RVector], workers: usize) -> Result<SumTable> {
    let n = vectors.len();
    let workers = workers.max(1);
    // 2^fixed parts, at least one per worker
    let fixed = (usize::BITS - (workers - 1).leading_zeros()).min(n as u32);
    let parts: Vec<u64> = (0..1u64 << fixed).collect();
    let per_thread = parts.len().div_ceil(workers);
    let tables: Vec<Result<SumTable>> = std::thread::scope(|scope| {
        let handles: Vec<_> = parts
            .chunks(per_thread)
            .map(|chunk| {
                scope.spawn(move || -> Result<SumTable> {
                    let mut acc: Option<SumTable> = None;
                    for &prefix in chunk {
                        let t = SumTable::build_partition(vectors, fixed, prefix)?;
                        match acc.as_mut() {
                            Some(a) => a.merge(t)?,
                            None => acc = Some(t),
                        }
                    }
                    Ok(acc.expect("chunks are non-empty"))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("table worker panicked")).collect()
    });
    let mut merged: Option<SumTable> = None;
    for t in tables {
        let t = t?;
        match merged.as_mut() {
            Some(m) => m.merge(t)?,
            None => merged = Some(t),
        }
    }
    Ok(merged.expect("at least one part"))
}

/// `sup_x P(Σ εᵢvᵢ = x)` using a parallel sum table; same tie-break as the
/// sequential version.
pub fn max_atom_parallel(instance: &Instance, workers: usize) -> Result<(RVector, Rational)> {
    let table = sum_table_parallel(instance.vectors(), workers)?;
    let (x, count) = table.argmax().expect("non-empty table");
    let p = Rational::from(count as i64) * Rational::inverse_power_of_two(instance.n() as u32);
    Ok((x, p))
}
