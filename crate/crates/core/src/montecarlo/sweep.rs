use serde::Serialize;

use super::{run, ExperimentKind, ExperimentSpec, MonteCarloError};
use crate::capacity::{noise_free_capacity, noisy_capacity, region_boundary, tradeoff_point};
use crate::channel::{ChannelParams, SamplingSpec};
use crate::codec::{CodecConfig, InnerCodeSpec};
use crate::rng::derive_seed;

/// Fraction of the infinite-depth capacity reached at Poisson depth
/// `lambda`, i.e. `C(e^-lambda, beta) / C(0, beta)`.
pub fn coverage_fraction(lambda: f64, beta: f64) -> Result<f64, MonteCarloError> {
    if !(lambda > 0.0) || !(beta > 1.0) {
        return Err(MonteCarloError::Invalid(format!(
            "coverage fraction needs lambda > 0 and beta > 1 (lambda={lambda}, beta={beta})"
        )));
    }
    let finite = noise_free_capacity((-lambda).exp(), beta)?.value;
    let limit = noise_free_capacity(0.0, beta)?.value;
    Ok(finite / limit)
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepAxis {
    /// Poisson coverage depth; erasure probability `e^-lambda`.
    Lambda(Vec<f64>),
    /// Bernoulli erasure probability.
    Q(Vec<f64>),
    /// BSC crossover.
    P(Vec<f64>),
}

impl SweepAxis {
    fn len(&self) -> usize {
        match self {
            SweepAxis::Lambda(v) | SweepAxis::Q(v) | SweepAxis::P(v) => v.len(),
        }
    }
}

/// A codec family swept along one channel parameter.
///
/// The fixed `q` and `p` apply to whichever quantity the axis does not vary.
/// With `trials == 0` no simulation runs and `success_rate` stays empty.
#[derive(Debug, Clone, PartialEq)]
pub struct RateSweep {
    pub axis: SweepAxis,
    pub m: usize,
    pub l: usize,
    pub inner: InnerCodeSpec,
    pub outer_k: usize,
    pub q: f64,
    pub p: f64,
    pub trials: u64,
    pub base_seed: u64,
}

/// One CSV row of a rate sweep. `beta` is the effective `L / log2 M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub lambda: Option<f64>,
    pub beta: f64,
    pub p: f64,
    pub q: f64,
    pub capacity: f64,
    pub achieved_rate: f64,
    pub success_rate: Option<f64>,
}

/// Analytic capacity, codec rate and (optionally) simulated decode success
/// at every grid point. Grid point `i` simulates with base seed
/// `derive_seed(base_seed, i)`.
pub fn rate_vs_capacity_sweep(sweep: &RateSweep) -> Result<Vec<SweepRow>, MonteCarloError> {
    if sweep.axis.len() == 0 {
        return Err(MonteCarloError::Invalid("sweep grid is empty".into()));
    }
    let cfg = CodecConfig::new(sweep.m, sweep.l, sweep.inner, sweep.outer_k)?;
    let points: Vec<(Option<f64>, f64, f64, SamplingSpec)> = match &sweep.axis {
        SweepAxis::Lambda(v) => v
            .iter()
            .map(|&lambda| Ok((Some(lambda), (-lambda).exp(), sweep.p, SamplingSpec::poisson(lambda)?)))
            .collect::<Result<_, MonteCarloError>>()?,
        SweepAxis::Q(v) => v
            .iter()
            .map(|&q| Ok((None, q, sweep.p, SamplingSpec::bernoulli(q)?)))
            .collect::<Result<_, MonteCarloError>>()?,
        SweepAxis::P(v) => {
            let sampling = SamplingSpec::bernoulli(sweep.q)?;
            v.iter().map(|&p| (None, sweep.q, p, sampling.clone())).collect()
        }
    };
    points
        .into_iter()
        .enumerate()
        .map(|(i, (lambda, q, p, sampling))| {
            let channel = ChannelParams::with_length(sweep.m, sweep.l, p, sampling)?;
            let beta = channel.beta_eff();
            let capacity = noisy_capacity(q, p, beta)?.value;
            let success_rate = if sweep.trials > 0 {
                let kind = ExperimentKind::DecodeSuccess {
                    codec: cfg.clone(),
                    channel,
                };
                let spec = ExperimentSpec::new(kind, sweep.trials, derive_seed(sweep.base_seed, i as u64));
                Some(run(&spec)?.summary.mean)
            } else {
                None
            };
            Ok(SweepRow {
                lambda,
                beta,
                p,
                q,
                capacity,
                achieved_rate: cfg.achieved_rate(),
                success_rate,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TradeoffRow {
    pub lambda: f64,
    pub beta: f64,
    pub rs_max: f64,
    pub rr_max: f64,
}

/// Boundary of the achievable (storage rate, recovery rate) region at fixed
/// `beta`, one row per depth.
pub fn tradeoff_sweep(beta: f64, lambdas: &[f64]) -> Result<Vec<TradeoffRow>, MonteCarloError> {
    lambdas
        .iter()
        .map(|&lambda| {
            let t = tradeoff_point(lambda, beta)?;
            Ok(TradeoffRow {
                lambda,
                beta,
                rs_max: t.rs_max,
                rr_max: t.rr_max,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionRow {
    pub p: f64,
    pub beta_min: f64,
}

/// Minimum `beta` for which the noisy capacity is characterized, sorted by
/// `p`. Grid points with `p >= 1/4` (or outside `[0, 1/2)`) come back in
/// the second list instead.
pub fn region_sweep(ps: &[f64]) -> (Vec<RegionRow>, Vec<f64>) {
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &p in ps {
        match region_boundary(p) {
            Ok(beta_min) => rows.push(RegionRow { p, beta_min }),
            Err(_) => skipped.push(p),
        }
    }
    rows.sort_by(|a, b| a.p.total_cmp(&b.p));
    (rows, skipped)
}
