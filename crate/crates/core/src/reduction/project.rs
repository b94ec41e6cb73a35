//! Projection of an instance onto a dual-optimal direction.
//!
//! With `y = w / s` in the dual unit ball and `⟨x, y⟩ = ‖x‖`, the event
//! `Σ εᵢvᵢ = x` implies `Σ εᵢ⟨vᵢ, y⟩ = ‖x‖`, a one-dimensional event with
//! coefficients bounded by 1. Everything is carried unscaled (`aᵢ′ = ⟨vᵢ, w⟩`,
//! `t′ = ⟨x, w⟩`) with `s` kept symbolically, since `s` may be irrational.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::instance::Instance;
use crate::error::{Error, Result};
use crate::exactnum::{sqrt_lower_bound, sqrt_upper_bound, Rational};
use crate::norms::{ceil_norm_u64, dual_eval, dual_witness, NormSpec, NormValue, RVector, Scale, Witness};

/// The one-dimensional image of an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedInstance {
    /// Unscaled coefficients `aᵢ′ = ⟨vᵢ, w⟩`, all nonzero.
    pub coefficients: Vec<Rational>,
    /// Unscaled target `t′ = ⟨x, w⟩`.
    pub target_value: Rational,
    pub scale: Scale,
    /// `⌈‖x‖⌉ = ⌈t′ / s⌉`.
    pub k: u64,
    /// Direction actually used (after any perturbation).
    pub witness: Witness,
    pub perturbed: bool,
}

// η = 2^-3, 2^-6, ..., 2^-30
const ETA_STEPS: u32 = 10;

fn projections(instance: &Instance, w: &RVector) -> Result<Vec<Rational>> {
    instance.vectors().iter().map(|v| v.dot(w)).collect()
}

/// The three exact acceptance checks for a direction: nonzero coefficients,
/// `|aᵢ′| ≤ s`, and `⌈t′ / s⌉ = k`.
fn check_direction(instance: &Instance, witness: &Witness, k: u64) -> Result<Option<ProjectedInstance>> {
    let coefficients = projections(instance, &witness.direction)?;
    if coefficients.iter().any(Rational::is_zero) {
        return Ok(None);
    }
    if !coefficients.iter().all(|a| witness.scale.bounds(a)) {
        return Ok(None);
    }
    let target_value = instance.target().dot(&witness.direction)?;
    if witness.scale.ceil_ratio(&target_value) != BigInt::from(k) {
        return Ok(None);
    }
    Ok(Some(ProjectedInstance {
        coefficients,
        target_value,
        scale: witness.scale.clone(),
        k,
        witness: witness.clone(),
        perturbed: false,
    }))
}

fn base_witness(instance: &Instance) -> Result<Witness> {
    let x = instance.target();
    if x.is_zero() {
        // any dual-ball direction gives t′ = 0; use the witness of e₁
        dual_witness(instance.norm(), &RVector::basis(x.dim(), 0))
    } else {
        dual_witness(instance.norm(), x)
    }
}

/// Project `instance` to one dimension along its dual witness, perturbing
/// the witness if some `⟨vᵢ, w⟩` vanishes.
pub fn project(instance: &Instance) -> Result<ProjectedInstance> {
    instance.norm().require_exact("project")?;
    let k = ceil_norm_u64(instance.norm(), instance.target())?;
    let witness = base_witness(instance)?;
    let zero_projection = projections(instance, &witness.direction)?.iter().any(Rational::is_zero);
    let (witness, perturbed) = if zero_projection {
        (perturb_witness(instance, &witness)?, true)
    } else {
        (witness, false)
    };
    match check_direction(instance, &witness, k)? {
        Some(mut p) => {
            p.perturbed = perturbed;
            Ok(p)
        }
        None => Err(Error::InvalidInput(format!(
            "dual witness {} (scale {:?}) fails the exact projection checks for target {}",
            witness.direction,
            witness.scale,
            instance.target()
        ))),
    }
}

/// Scales `z` so that `z / s` lies in the dual unit ball, for norms with a
/// closed-form dual. Returns `None` for the zero vector.
fn into_dual_ball(norm: &NormSpec, scale: &Scale, z: &RVector) -> Result<Option<RVector>> {
    if z.is_zero() {
        return Ok(None);
    }
    // z' = z · (lower bound of s) / (upper bound of ‖z‖_*)
    let s_low = match scale {
        Scale::Rational(s) => s.clone(),
        Scale::SqrtRational(sq) => sqrt_lower_bound(sq)?,
    };
    let dual_high = match dual_eval(norm, z)? {
        NormValue::Exact(v) => v,
        NormValue::Squared(sq) => sqrt_upper_bound(&sq)?,
        NormValue::Float(_) => return Ok(None),
    };
    Ok(Some(z.scale(&(&s_low / &dual_high))))
}

/// Candidate perturbation directions, in search order.
///
/// First `±e₁, …, ±e_d` and `±v₁, …, ±vₙ`, then points on a moment curve
/// `Σ_j t^j g_j` over the generators `g_j` (basis vectors, or the
/// functionals of a facet-form norm). A nonzero vector is orthogonal to the
/// curve for at most `m - 1` values of `t`, so `|Z|·(m - 1) + 1` curve points
/// include one not orthogonal to any of the `|Z|` zero-projection vectors.
/// For closed-form duals each candidate is first scaled into the dual ball;
/// for a facet-form norm the curve points are convex combinations of the
/// `f_j` and so lie in the dual ball already.
fn candidate_directions(instance: &Instance, witness: &Witness, zero_count: usize) -> Result<Vec<RVector>> {
    let norm = instance.norm();
    let dim = instance.dim();
    let mut raw: Vec<RVector> = Vec::new();
    for j in 0..dim {
        let e = RVector::basis(dim, j);
        raw.push(e.clone());
        raw.push(e.neg());
    }
    for v in instance.vectors() {
        raw.push(v.clone());
        raw.push(v.neg());
    }

    let generators: Vec<RVector> = match norm {
        NormSpec::MaxFunctional(fs) => fs.as_slice().to_vec(),
        _ => (0..dim).map(|j| RVector::basis(dim, j)).collect(),
    };
    let m = generators.len();
    let curve_points = zero_count * (m - 1) + 1;
    let mut curve: Vec<RVector> = Vec::new();
    for t in 1..=curve_points {
        let t = Rational::from(t as i64);
        let mut power = Rational::one();
        let mut weight = Rational::zero();
        let mut z = RVector::zeros(dim);
        for g in &generators {
            z = z.add(&g.scale(&power))?;
            weight += &power;
            power = &power * &t;
        }
        curve.push(z.scale(&weight.recip()?));
    }

    let mut out = Vec::new();
    match norm {
        NormSpec::MaxFunctional(_) => {
            // raw candidates are only screened by the exact checks
            out.extend(raw);
            for f in &generators {
                out.push(f.clone());
                out.push(f.neg());
            }
            out.extend(curve);
        }
        _ => {
            for z in raw.iter().chain(&curve) {
                if let Some(scaled) = into_dual_ball(norm, &witness.scale, z)? {
                    out.push(scaled);
                }
            }
        }
    }
    Ok(out)
}

/// Deterministic perturbation `w′ = (1 - η)w + ηz` making every `⟨vᵢ, w′⟩`
/// nonzero while keeping `|aᵢ′| ≤ s` and `⌈t′ / s⌉ = ⌈‖x‖⌉`.
///
/// η runs over `2⁻³, 2⁻⁶, …, 2⁻³⁰`; for each η the candidate directions are
/// tried in order and the first passing all three exact checks is returned.
/// The witness is returned unchanged when no projection vanishes.
pub fn perturb_witness(instance: &Instance, witness: &Witness) -> Result<Witness> {
    instance.norm().require_exact("perturb_witness")?;
    let zero_count = projections(instance, &witness.direction)?.iter().filter(|a| a.is_zero()).count();
    if zero_count == 0 {
        return Ok(witness.clone());
    }
    let k = ceil_norm_u64(instance.norm(), instance.target())?;
    let directions = candidate_directions(instance, witness, zero_count)?;
    for step in 1..=ETA_STEPS {
        let eta = Rational::inverse_power_of_two(3 * step);
        let keep = &Rational::one() - &eta;
        let base = witness.direction.scale(&keep);
        for z in &directions {
            let candidate = Witness { direction: base.add(&z.scale(&eta))?, scale: witness.scale.clone() };
            if check_direction(instance, &candidate, k)?.is_some() {
                return Ok(candidate);
            }
        }
    }
    Err(Error::PerturbationFailed(format!(
        "no candidate among {} directions and η down to 2^-{} cleared {} zero projections (target {}, k = {})",
        directions.len(),
        3 * ETA_STEPS,
        zero_count,
        instance.target(),
        k
    )))
}
