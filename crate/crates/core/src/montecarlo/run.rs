use rayon::prelude::*;
use serde::Serialize;

use super::{ExperimentKind, ExperimentSpec, MonteCarloError, TrialRecord};
use crate::bits::BitString;
use crate::channel::{apply_noise, transmit_traced, ChannelParams, CodewordSet};
use crate::codec::{short_molecule_decode, short_molecule_encode, Codec, Message};
use crate::rng::{derive_seed, rng_from_seed, substream, StreamRng};
use rand::Rng;

/// Aggregate of the per-trial metric named by [`ExperimentKind::metric`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub kind: &'static str,
    pub metric: &'static str,
    pub trials: u64,
    pub mean: f64,
    pub stderr: f64,
    pub ci95: [f64; 2],
    /// Trials whose pipeline returned an error.
    pub errors: u64,
    /// Decode experiments: reported success with a wrong message.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub undetected_errors: Option<u64>,
    /// Decode experiments: fraction of trials returning the right message.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correct_rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

struct Outcome {
    record: TrialRecord,
    metric: f64,
    correct: Option<bool>,
}

/// Shared, read-only state built once per batch.
enum Context {
    Q0 { set: CodewordSet, channel: ChannelParams },
    Decode { codec: Codec, channel: ChannelParams },
    Bound { l: usize, p: f64, threshold: f64 },
    Coupon { m: usize, draws: usize, threshold: f64 },
    Short { channel: ChannelParams },
}

impl Context {
    fn build(spec: &ExperimentSpec) -> Result<Self, MonteCarloError> {
        Ok(match &spec.kind {
            ExperimentKind::EstimateQ0 { channel } => {
                let mut rng = substream(spec.base_seed, u64::MAX);
                let l = channel.l();
                let molecules = (0..channel.m())
                    .map(|_| BitString::from_bools((0..l).map(|_| rng.gen::<bool>())))
                    .collect();
                Context::Q0 {
                    set: CodewordSet::new(l, molecules)?,
                    channel: channel.clone(),
                }
            }
            ExperimentKind::DecodeSuccess { codec, channel } => Context::Decode {
                codec: Codec::new(codec.clone())?,
                channel: channel.clone(),
            },
            ExperimentKind::BoundCheck { l, p, delta } => Context::Bound {
                l: *l,
                p: *p,
                threshold: delta * *l as f64,
            },
            ExperimentKind::CouponTail { m, lambda, delta } => Context::Coupon {
                m: *m,
                draws: (lambda * *m as f64).round() as usize,
                threshold: (1.0 - (-lambda).exp() + delta) * *m as f64,
            },
            ExperimentKind::ShortMolecule { channel } => Context::Short {
                channel: channel.clone(),
            },
        })
    }

    fn trial(&self, trial: u64, seed: u64) -> Outcome {
        let mut rng = rng_from_seed(seed);
        let blank = TrialRecord {
            trial,
            seed,
            n: 0,
            distinct_seen: 0,
            decode_success: None,
            erasures: None,
            collisions: None,
            flip_rate: None,
            error: None,
        };
        match self.run_one(blank.clone(), &mut rng) {
            Ok(outcome) => outcome,
            Err(e) => Outcome {
                record: TrialRecord {
                    error: Some(e.to_string()),
                    ..blank
                },
                metric: 0.0,
                correct: Some(false),
            },
        }
    }

    fn run_one(&self, mut rec: TrialRecord, rng: &mut StreamRng) -> Result<Outcome, MonteCarloError> {
        let flip_rate = |flips: usize, n: usize, l: usize| (n > 0).then(|| flips as f64 / (n * l) as f64);
        Ok(match self {
            Context::Q0 { set, channel } => {
                let (out, trace) = transmit_traced(set, channel, rng)?;
                rec.n = out.n();
                rec.distinct_seen = trace.distinct_seen();
                rec.flip_rate = flip_rate(trace.flips, out.n(), channel.l());
                let metric = 1.0 - rec.distinct_seen as f64 / channel.m() as f64;
                Outcome {
                    record: rec,
                    metric,
                    correct: None,
                }
            }
            Context::Decode { codec, channel } => {
                let msg = Message::random(codec.config(), rng);
                let set = codec.encode(&msg)?;
                let (out, trace) = transmit_traced(&set, channel, rng)?;
                let report = codec.decode(&out)?;
                rec.n = out.n();
                rec.distinct_seen = trace.distinct_seen();
                rec.decode_success = Some(report.success());
                rec.erasures = Some(report.erasures);
                rec.collisions = Some(report.collisions);
                rec.flip_rate = flip_rate(trace.flips, out.n(), channel.l());
                let correct = report.message.as_ref() == Some(&msg);
                Outcome {
                    record: rec,
                    metric: f64::from(u8::from(report.success())),
                    correct: Some(correct),
                }
            }
            Context::Bound { l, p, threshold } => {
                let mut read = [BitString::zeros(*l)];
                let flips = apply_noise(&mut read, *p, rng);
                rec.n = 1;
                rec.distinct_seen = 1;
                rec.flip_rate = Some(flips as f64 / *l as f64);
                let hit = flips as f64 >= *threshold;
                Outcome {
                    record: rec,
                    metric: f64::from(u8::from(hit)),
                    correct: None,
                }
            }
            Context::Coupon { m, draws, threshold } => {
                let mut seen = vec![false; *m];
                for _ in 0..*draws {
                    seen[rng.gen_range(0..*m)] = true;
                }
                rec.n = *draws;
                rec.distinct_seen = seen.iter().filter(|&&s| s).count();
                let hit = rec.distinct_seen as f64 >= *threshold;
                Outcome {
                    record: rec,
                    metric: f64::from(u8::from(hit)),
                    correct: None,
                }
            }
            Context::Short { channel } => {
                let l = channel.l();
                let bits = BitString::from_bools((0..1usize << (l - 1)).map(|_| rng.gen::<bool>()));
                let set = short_molecule_encode(&bits, channel.m(), l)?;
                let (out, trace) = transmit_traced(&set, channel, rng)?;
                let decoded = short_molecule_decode(&out, l)?;
                let ok = decoded.recovered().as_ref() == Some(&bits);
                rec.n = out.n();
                rec.distinct_seen = trace.distinct_seen();
                rec.decode_success = Some(ok);
                rec.erasures = Some(decoded.bits.len() - decoded.decided());
                rec.flip_rate = flip_rate(trace.flips, out.n(), l);
                Outcome {
                    record: rec,
                    metric: f64::from(u8::from(ok)),
                    correct: Some(ok),
                }
            }
        })
    }
}

/// Runs every trial on the current rayon pool.
pub fn run(spec: &ExperimentSpec) -> Result<ExperimentResult, MonteCarloError> {
    spec.validate()?;
    let ctx = Context::build(spec)?;
    let outcomes: Vec<Outcome> = (0..spec.trials)
        .into_par_iter()
        .map(|t| ctx.trial(t, derive_seed(spec.base_seed, t)))
        .collect();
    Ok(summarize(spec, outcomes))
}

/// [`run`] on a dedicated pool of `threads` workers.
pub fn run_with_threads(spec: &ExperimentSpec, threads: usize) -> Result<ExperimentResult, MonteCarloError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| MonteCarloError::Pool(e.to_string()))?;
    pool.install(|| run(spec))
}

fn summarize(spec: &ExperimentSpec, outcomes: Vec<Outcome>) -> ExperimentResult {
    let t = outcomes.len() as f64;
    let mean = outcomes.iter().map(|o| o.metric).sum::<f64>() / t;
    let var = if outcomes.len() > 1 {
        outcomes.iter().map(|o| (o.metric - mean).powi(2)).sum::<f64>() / (t - 1.0)
    } else {
        0.0
    };
    let stderr = (var / t).sqrt();
    let errors = outcomes.iter().filter(|o| o.record.error.is_some()).count() as u64;
    let is_decode = matches!(spec.kind, ExperimentKind::DecodeSuccess { .. });
    let (undetected_errors, correct_rate) = if is_decode {
        let undetected = outcomes
            .iter()
            .filter(|o| o.record.decode_success == Some(true) && o.correct == Some(false))
            .count() as u64;
        let correct = outcomes.iter().filter(|o| o.correct == Some(true)).count() as f64 / t;
        (Some(undetected), Some(correct))
    } else {
        (None, None)
    };
    let summary = Summary {
        kind: spec.kind.name(),
        metric: spec.kind.metric(),
        trials: spec.trials,
        mean,
        stderr,
        ci95: [mean - 1.96 * stderr, mean + 1.96 * stderr],
        errors,
        undetected_errors,
        correct_rate,
    };
    ExperimentResult {
        records: outcomes.into_iter().map(|o| o.record).collect(),
        summary,
    }
}
