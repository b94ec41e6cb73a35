//! Instance generators: extremal configurations, seeded random instances,
//! and the exhaustive grid stream.

use std::cmp::Ordering;

use littlewood_core::exactnum::sqrt_upper_bound;
use littlewood_core::{
    delta, norm_eval, Instance, NormSpec, NormValue, RVector, Rational, SignPattern, SumTable,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest number of draws per vector before a random generator gives up.
pub const MAX_DRAWS: usize = 10_000;

/// The equality configuration: `vᵢ = c·u`, `x = value·u` with `u` the unit
/// vector along the first axis and `c = value / (k + δ(n, k))`.
///
/// Then `P(Σ εᵢvᵢ = x) = P(R_n = k + δ)`, the bound itself.
pub fn gen_extremal(n: usize, norm: &NormSpec, norm_value: &Rational, dim: usize) -> Result<Instance> {
    if n == 0 {
        return Err(Error::Core(littlewood_core::Error::InvalidInput("n must be positive".into())));
    }
    if !norm_value.is_positive() || norm_value > &Rational::from(n as i64) {
        return Err(Error::Core(littlewood_core::Error::InvalidInput(format!(
            "extremal norm value must lie in (0, {}], got {}",
            n, norm_value
        ))));
    }
    let dim = norm.dim().unwrap_or(dim);
    if dim == 0 {
        return Err(Error::Core(littlewood_core::Error::InvalidInput("dimension must be positive".into())));
    }
    let axis = RVector::basis(dim, 0);
    let axis_norm = match norm_eval(norm, &axis)? {
        NormValue::Exact(r) => r,
        // ‖e₁‖₂ = ‖e₁‖_p = 1
        NormValue::Squared(_) | NormValue::Float(_) => Rational::one(),
    };
    let k = u64::try_from(norm_value.ceil()).expect("positive and at most n");
    let step = k + u64::from(delta(n as u64, k).value());
    let c = norm_value / &Rational::from(step as i64);
    let unit = axis.scale(&axis_norm.recip()?);
    let vectors = vec![unit.scale(&c); n];
    Ok(Instance::new(vectors, unit.scale(norm_value), norm.clone())?)
}

fn draw_grid_vector(rng: &mut ChaCha8Rng, dim: usize, grid_denominator: u64) -> RVector {
    let g = grid_denominator as i64;
    let coords = (0..dim).map(|_| Rational::ratio(rng.gen_range(-g..=g), g)).collect();
    RVector::new(coords).expect("dim >= 1")
}

/// Pulls a nonzero vector into the unit ball: exact division by the norm
/// where it is rational, by a rational upper bound of `√⟨v,v⟩` for ℓ2, and
/// `None` (reject) for float-mode norms.
fn into_unit_ball(norm: &NormSpec, v: RVector) -> Result<Option<RVector>> {
    let value = norm_eval(norm, &v)?;
    if value.cmp_rational(&Rational::one()) != Some(Ordering::Greater) {
        return Ok(match value {
            NormValue::Float(f) if f > 1.0 => None,
            _ => Some(v),
        });
    }
    Ok(match value {
        NormValue::Exact(r) => Some(v.scale(&r.recip()?)),
        NormValue::Squared(sq) => Some(v.scale(&sqrt_upper_bound(&sq)?.recip()?)),
        NormValue::Float(_) => None,
    })
}

/// Deterministic random instance: `n` nonzero grid vectors pulled into the
/// unit ball, and a target that is a reachable sum with probability 1/2 and
/// a random grid point otherwise.
pub fn gen_random(seed: u64, n: usize, dim: usize, norm: &NormSpec, grid_denominator: u64) -> Result<Instance> {
    if grid_denominator == 0 || n == 0 || dim == 0 {
        return Err(Error::Core(littlewood_core::Error::InvalidInput(
            "n, dimension and grid_denominator must be positive".into(),
        )));
    }
    let dim = norm.dim().unwrap_or(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = Vec::with_capacity(n);
    for i in 0..n {
        let mut accepted = None;
        for _ in 0..MAX_DRAWS {
            let v = draw_grid_vector(&mut rng, dim, grid_denominator);
            if v.is_zero() {
                continue;
            }
            if let Some(v) = into_unit_ball(norm, v)? {
                accepted = Some(v);
                break;
            }
        }
        let v = accepted.ok_or_else(|| {
            Error::Core(littlewood_core::Error::InvalidInput(format!(
                "no admissible vector {} for {} after {} draws",
                i, norm, MAX_DRAWS
            )))
        })?;
        vectors.push(v);
    }
    let target = if rng.gen_bool(0.5) {
        SignPattern::new(rng.gen(), n as u32).apply(&vectors)?
    } else {
        let reach = (grid_denominator * n as u64) as i64;
        let g = grid_denominator as i64;
        RVector::new((0..dim).map(|_| Rational::ratio(rng.gen_range(-reach..=reach), g)).collect())?
    };
    Ok(Instance::new(vectors, target, norm.clone())?)
}

/// Grid points of `grid^dim` that are nonzero and lie in the unit ball of `norm`.
pub fn unit_ball_points(grid: &[Rational], dim: usize, norm: &NormSpec) -> Result<Vec<RVector>> {
    let mut points = Vec::new();
    let mut index = vec![0usize; dim];
    loop {
        let v = RVector::new(index.iter().map(|&i| grid[i].clone()).collect())?;
        if !v.is_zero() && norm_eval(norm, &v)?.cmp_rational(&Rational::one()) != Some(Ordering::Greater) {
            points.push(v);
        }
        // odometer increment, last coordinate fastest
        let mut pos = dim;
        loop {
            if pos == 0 {
                return Ok(points);
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < grid.len() {
                break;
            }
            index[pos] = 0;
        }
    }
}

/// Non-decreasing index tuples of length `n` over `0..count`, in lexicographic order.
pub(crate) struct Multisets {
    count: usize,
    current: Option<Vec<usize>>,
}

impl Multisets {
    pub fn new(count: usize, n: usize) -> Self {
        Multisets { count, current: (count > 0).then(|| vec![0; n]) }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        match (0..cur.len()).rev().find(|&i| cur[i] + 1 < self.count) {
            Some(i) => {
                let v = cur[i] + 1;
                for c in &mut cur[i..] {
                    *c = v;
                }
            }
            None => self.current = None,
        }
        Some(out)
    }
}

/// Every multiset of unit-ball grid points, paired with each of its reachable
/// sums, for every dimension, norm, and `n` in range (in that nesting order).
pub(crate) fn exhaustive_grid(
    grid: Vec<Rational>,
    dims: Vec<usize>,
    norms_by_dim: Vec<Vec<NormSpec>>,
    n_values: Vec<usize>,
) -> impl Iterator<Item = Result<Instance>> {
    dims.into_iter().zip(norms_by_dim).flat_map(move |(dim, norms)| {
        let grid = grid.clone();
        let n_values = n_values.clone();
        norms.into_iter().flat_map(move |norm| {
            let points = unit_ball_points(&grid, dim, &norm);
            let n_values = n_values.clone();
            let per_norm: Box<dyn Iterator<Item = Result<Instance>>> = match points {
                Err(e) => Box::new(std::iter::once(Err(e))),
                Ok(points) => Box::new(n_values.into_iter().flat_map(move |n| {
                    let points = points.clone();
                    let norm = norm.clone();
                    Multisets::new(points.len(), n).flat_map(move |idx| {
                        let vectors: Vec<RVector> = idx.iter().map(|&i| points[i].clone()).collect();
                        instances_for_all_targets(vectors, &norm)
                    })
                })),
            };
            per_norm
        })
    })
}

fn instances_for_all_targets(vectors: Vec<RVector>, norm: &NormSpec) -> Vec<Result<Instance>> {
    let base = match Instance::new(vectors.clone(), RVector::zeros(vectors[0].dim()), norm.clone()) {
        Ok(b) => b,
        Err(e) => return vec![Err(e.into())],
    };
    match SumTable::build(&vectors) {
        Ok(table) => table
            .entries()
            .into_iter()
            .map(|(target, _)| base.with_target(target).map_err(Error::from))
            .collect(),
        Err(e) => vec![Err(e.into())],
    }
}

/// Stream seed for instance `index` of a campaign seeded with `seed`.
pub(crate) fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use littlewood_core::verify_instance;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn extremal_examples() {
        let inst = gen_extremal(3, &NormSpec::L2, &q("1"), 2).unwrap();
        assert_eq!(inst.vectors(), vec![RVector::from_ints(&[1, 0]); 3].as_slice());
        assert_eq!(inst.target(), &RVector::from_ints(&[1, 0]));
        let r = verify_instance(&inst).unwrap();
        assert!(r.tight);
        assert_eq!(r.bound, q("3/8"));

        let inst = gen_extremal(4, &NormSpec::L2, &q("2"), 2).unwrap();
        assert_eq!(inst.vectors()[0], RVector::from_ints(&[1, 0]));
        let r = verify_instance(&inst).unwrap();
        assert!(r.tight);
        assert_eq!(r.bound, q("1/4"));

        let inst = gen_extremal(2, &NormSpec::L1, &q("3/2"), 2).unwrap();
        assert_eq!(inst.vectors()[0], "3/4,0".parse().unwrap());
        assert_eq!(inst.target(), &"3/2,0".parse().unwrap());
        let r = verify_instance(&inst).unwrap();
        assert_eq!((r.p_exact.clone(), r.bound.clone()), (q("1/4"), q("1/4")));
    }

    #[test]
    fn extremal_under_polyhedral_norm_rescales_the_axis() {
        let norm: NormSpec = "poly:[2,0;0,1]".parse().unwrap();
        let inst = gen_extremal(5, &norm, &q("3"), 2).unwrap();
        assert_eq!(inst.target(), &"3/2,0".parse().unwrap());
        assert!(verify_instance(&inst).unwrap().tight);
    }

    #[test]
    fn extremal_rejects_out_of_range() {
        assert!(gen_extremal(3, &NormSpec::L2, &q("0"), 2).is_err());
        assert!(gen_extremal(3, &NormSpec::L2, &q("7/2"), 2).is_err());
        assert!(gen_extremal(0, &NormSpec::L2, &q("1"), 2).is_err());
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        for norm in [NormSpec::L1, NormSpec::L2, NormSpec::Linf, NormSpec::lp(q("3")).unwrap()] {
            let a = gen_random(42, 6, 3, &norm, 4).unwrap();
            let b = gen_random(42, 6, 3, &norm, 4).unwrap();
            assert_eq!(a, b);
            assert!(a.vectors().iter().all(|v| !v.is_zero()));
        }
        assert_ne!(gen_random(1, 6, 3, &NormSpec::L2, 4).unwrap(), gen_random(2, 6, 3, &NormSpec::L2, 4).unwrap());
    }

    #[test]
    fn unit_grid_is_pure_rademacher() {
        for seed in 0..40 {
            let inst = gen_random(seed, 5, 1, &NormSpec::L2, 1).unwrap();
            assert!(inst.vectors().iter().all(|v| v[0].abs() == Rational::one()));
            let r = verify_instance(&inst).unwrap();
            let k = r.k as i64;
            let reachable = k + r.delta.value() as i64;
            if r.p_exact.is_positive() && inst.target()[0].abs() == Rational::from(reachable) {
                assert!(r.tight, "seed {seed}");
            }
            assert!(r.chain_holds);
        }
    }

    #[test]
    fn multisets_count() {
        // C(4 + 3 - 1, 3) = 20
        assert_eq!(Multisets::new(4, 3).count(), 20);
        assert_eq!(Multisets::new(1, 5).count(), 1);
        assert_eq!(Multisets::new(0, 2).count(), 0);
        let all: Vec<_> = Multisets::new(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn unit_ball_filtering() {
        let grid: Vec<Rational> = ["-1", "-1/2", "1/2", "1"].iter().map(|s| q(s)).collect();
        assert_eq!(unit_ball_points(&grid, 2, &NormSpec::Linf).unwrap().len(), 16);
        assert_eq!(unit_ball_points(&grid, 2, &NormSpec::L1).unwrap().len(), 4);
        assert_eq!(unit_ball_points(&grid, 2, &NormSpec::L2).unwrap().len(), 4);
    }
}
