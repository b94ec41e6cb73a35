use std::time::Instant;

use littlewood_core::{
    binomial, max_atom, verify_float_mode, verify_instance, Instance, NormSpec, Rational,
};
use rand::Rng;

use super::config::{CampaignConfig, Mode};
use super::generate::{exhaustive_grid, gen_extremal, gen_random, instance_rng};
use super::report::{CampaignReport, Outcome};
use crate::error::Result;

type Stream = Box<dyn Iterator<Item = Result<Instance>>>;

/// Instances handed to the worker pool per round, per worker.
const BATCH_PER_WORKER: usize = 512;

fn random_stream(config: &CampaignConfig, kleitman: bool) -> Stream {
    let config = config.clone();
    let budget = config.budget.unwrap_or(0);
    Box::new((0..budget).map(move |i| {
        let mut rng = instance_rng(config.seed, i);
        let norm = if kleitman {
            NormSpec::L2
        } else {
            config.norms[rng.gen_range(0..config.norms.len())].clone()
        };
        let n = rng.gen_range(config.n_range.clone());
        let d = rng.gen_range(config.d_range.clone());
        let seed: u64 = rng.gen();
        gen_random(seed, n, d, &norm, config.grid_denominator)
    }))
}

fn extremal_stream(config: &CampaignConfig) -> Stream {
    let mut params = Vec::new();
    for d in config.d_range.clone() {
        for norm in config.norms_for(d) {
            for n in config.n_range.clone() {
                for k in 1..=n as i64 {
                    for value in [Rational::from(k), Rational::ratio(2 * k - 1, 2)] {
                        params.push((n, norm.clone(), value, d));
                    }
                }
            }
        }
    }
    Box::new(params.into_iter().map(|(n, norm, value, d)| gen_extremal(n, &norm, &value, d)))
}

fn instance_stream(config: &CampaignConfig) -> Stream {
    match config.mode {
        Mode::Random => random_stream(config, false),
        Mode::UniformKleitman => random_stream(config, true),
        Mode::Extremal => extremal_stream(config),
        Mode::ExhaustiveGrid => {
            let dims: Vec<usize> = config.d_range.clone().collect();
            let norms = dims.iter().map(|&d| config.norms_for(d)).collect();
            Box::new(exhaustive_grid(config.grid.clone(), dims, norms, config.n_range.clone().collect()))
        }
    }
}

fn uniform_outcome(instance: &Instance) -> littlewood_core::Result<(Instance, Outcome)> {
    let (argmax, probability) = max_atom(instance.vectors())?;
    let n = instance.n() as u64;
    let bound = Rational::from(binomial(n, (n / 2) as i64)) * Rational::inverse_power_of_two(n as u32);
    let instance = instance.with_target(argmax.clone())?;
    Ok((instance, Outcome::Uniform { argmax, probability, bound }))
}

/// Runs the check appropriate to the mode and norm on one instance.
pub fn evaluate(mode: Mode, instance: Instance) -> (Instance, littlewood_core::Result<Outcome>) {
    if mode == Mode::UniformKleitman {
        return match uniform_outcome(&instance) {
            Ok((inst, outcome)) => (inst, Ok(outcome)),
            Err(e) => (instance, Err(e)),
        };
    }
    let outcome = if instance.norm().is_exact() {
        verify_instance(&instance).map(Outcome::Exact)
    } else {
        verify_float_mode(&instance).map(Outcome::Float)
    };
    (instance, outcome)
}

fn evaluate_batch(mode: Mode, batch: Vec<Instance>, workers: usize) -> Vec<(Instance, littlewood_core::Result<Outcome>)> {
    if workers <= 1 || batch.len() <= 1 {
        return batch.into_iter().map(|inst| evaluate(mode, inst)).collect();
    }
    let chunk = batch.len().div_ceil(workers);
    let mut chunks: Vec<Vec<Instance>> = Vec::new();
    let mut iter = batch.into_iter().peekable();
    while iter.peek().is_some() {
        chunks.push(iter.by_ref().take(chunk).collect());
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|c| scope.spawn(move || c.into_iter().map(|inst| evaluate(mode, inst)).collect::<Vec<_>>()))
            .collect();
        // joined in spawn order, so results stay in instance order
        handles.into_iter().flat_map(|h| h.join().expect("campaign worker panicked")).collect()
    })
}

/// Runs a campaign with `config.workers` threads.
///
/// Results are aggregated strictly in instance order, so the report does not
/// depend on the number of workers or on scheduling.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    let started = Instant::now();
    let mut report = CampaignReport::empty(config.mode, config.seed);
    let workers = config.workers.max(1);
    let budget = config.budget.unwrap_or(u64::MAX);
    let mut stream = instance_stream(config).take(usize::try_from(budget).unwrap_or(usize::MAX));
    let mut next_index = 0u64;
    loop {
        let items: Vec<Result<Instance>> = stream.by_ref().take(BATCH_PER_WORKER * workers).collect();
        if items.is_empty() {
            break;
        }
        let mut indices = Vec::new();
        let mut batch = Vec::new();
        for item in items {
            let index = next_index;
            next_index += 1;
            match item {
                Ok(inst) => {
                    indices.push(index);
                    batch.push(inst);
                }
                Err(e) => {
                    // flush pending work first so records stay in index order
                    flush(config.mode, &mut report, std::mem::take(&mut indices), std::mem::take(&mut batch), workers);
                    report.record_generation_error(index, &e);
                }
            }
        }
        flush(config.mode, &mut report, indices, batch, workers);
    }
    report.wall_time = started.elapsed();
    Ok(report)
}

fn flush(mode: Mode, report: &mut CampaignReport, indices: Vec<u64>, batch: Vec<Instance>, workers: usize) {
    for (index, (instance, outcome)) in indices.into_iter().zip(evaluate_batch(mode, batch, workers)) {
        report.record(index, instance, outcome);
    }
}
