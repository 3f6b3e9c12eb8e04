use serde::Serialize;

use super::{run, ExperimentKind, ExperimentSpec, MonteCarloError};
use crate::capacity::{chernoff_read_error_bound, coupon_tail_bound};
use crate::channel::ChannelParams;
use crate::codec::CodecConfig;

/// Empirical tail frequency against an analytic upper bound.
///
/// `pass` is one-sided: it fails only when `empirical > bound + 3 stderr`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundVerdict {
    pub empirical: f64,
    pub bound: f64,
    pub stderr: f64,
    pub trials: u64,
    pub pass: bool,
}

impl BoundVerdict {
    fn new(empirical: f64, bound: f64, stderr: f64, trials: u64) -> Self {
        Self {
            empirical,
            bound,
            stderr,
            trials,
            pass: empirical <= bound + 3.0 * stderr,
        }
    }
}

/// Sends `reads` all-zero reads of length `l` through BSC(`p`) and counts
/// those with at least `delta * l` flips.
pub fn verify_chernoff(l: usize, p: f64, delta: f64, reads: u64, seed: u64) -> Result<BoundVerdict, MonteCarloError> {
    let bound = chernoff_read_error_bound(l as u64, p, delta)?;
    let spec = ExperimentSpec::new(ExperimentKind::BoundCheck { l, p, delta }, reads, seed);
    let s = run(&spec)?.summary;
    Ok(BoundVerdict::new(s.mean, bound, s.stderr, reads))
}

/// Draws `lambda * m` coupons with replacement per trial and counts trials
/// with at least `(1 - e^-lambda + delta) m` distinct coupons.
pub fn verify_coupon_tail(
    m: usize,
    lambda: f64,
    delta: f64,
    trials: u64,
    seed: u64,
) -> Result<BoundVerdict, MonteCarloError> {
    let bound = coupon_tail_bound(m as u64, lambda, delta)?;
    let spec = ExperimentSpec::new(ExperimentKind::CouponTail { m, lambda, delta }, trials, seed);
    let s = run(&spec)?.summary;
    Ok(BoundVerdict::new(s.mean, bound, s.stderr, trials))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UndetectedReport {
    pub trials: u64,
    /// Trials the decoder reported as successful.
    pub reported_success: u64,
    /// Reported successes whose message was wrong.
    pub undetected: u64,
    pub frequency: f64,
    pub stderr: f64,
}

/// Frequency of trials where decoding reports success but returns a message
/// other than the one encoded.
pub fn measure_undetected_swaps(
    cfg: &CodecConfig,
    channel: &ChannelParams,
    trials: u64,
    seed: u64,
) -> Result<UndetectedReport, MonteCarloError> {
    let kind = ExperimentKind::DecodeSuccess {
        codec: cfg.clone(),
        channel: channel.clone(),
    };
    let res = run(&ExperimentSpec::new(kind, trials, seed))?;
    let reported_success = res.records.iter().filter(|r| r.decode_success == Some(true)).count() as u64;
    let undetected = res.summary.undetected_errors.unwrap_or(0);
    let frequency = undetected as f64 / trials as f64;
    Ok(UndetectedReport {
        trials,
        reported_success,
        undetected,
        frequency,
        stderr: (frequency * (1.0 - frequency) / trials as f64).sqrt(),
    })
}
