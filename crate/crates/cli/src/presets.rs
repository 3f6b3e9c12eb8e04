//! Named experiment bundles, each with the verdict it is expected to meet.

use anyhow::Result;
use clap::ValueEnum;
use dnastore_core::capacity::{chernoff_read_error_bound, coupon_tail_bound};
use dnastore_core::channel::{ChannelParams, SamplingSpec};
use dnastore_core::codec::{CodecConfig, InnerCodeSpec};
use dnastore_core::montecarlo::{ExperimentKind, Summary};
use num_rational::Ratio;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Unseen fraction under Poisson(1) sampling, M = 100000.
    Q0Poisson1,
    /// Unseen fraction under Bernoulli(0.3) sampling, M = 10000.
    Q0Bernoulli03,
    /// M = 16, L = 8, identity inner code, outer k = 12, perfect channel.
    M16Clean,
    /// M = 256, L = 16, identity inner code, outer k = 230, Bernoulli q = 0.05.
    M256Erasure,
    /// M = 16, L = 24, repetition-3 inner code, outer k = 12, BSC p = 0.02.
    M16Rep3Noisy,
    /// Repetition-index scheme, L = 4, M = 64, Poisson(1).
    ShortMolecule,
    /// Reads of 64 bits with at least 15% flips under BSC(0.05).
    ChernoffL64,
    /// At least (1 - 1/e + 0.1) M distinct coupons in M draws, M = 1000.
    CouponM1000,
}

pub struct PresetRun {
    pub kind: ExperimentKind,
    pub trials: u64,
    target: Target,
}

enum Target {
    Near {
        value: f64,
        tol: f64,
    },
    AtLeast(f64),
    /// Mean at most `bound + 3 stderr`.
    Below(f64),
    AtLeastWithRate {
        min: f64,
        rate: Ratio<u64>,
    },
}

pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

impl Preset {
    pub fn build(self) -> Result<PresetRun> {
        let clean = || SamplingSpec::bernoulli(0.0);
        let (kind, trials, target) = match self {
            Preset::Q0Poisson1 => (
                ExperimentKind::EstimateQ0 {
                    channel: ChannelParams::new(100_000, 2.0, 0.0, SamplingSpec::poisson(1.0)?)?,
                },
                20,
                Target::Near {
                    value: (-1.0f64).exp(),
                    tol: 0.005,
                },
            ),
            Preset::Q0Bernoulli03 => (
                ExperimentKind::EstimateQ0 {
                    channel: ChannelParams::new(10_000, 2.0, 0.0, SamplingSpec::bernoulli(0.3)?)?,
                },
                20,
                Target::Near { value: 0.3, tol: 0.015 },
            ),
            Preset::M16Clean => (
                ExperimentKind::DecodeSuccess {
                    codec: CodecConfig::new(16, 8, InnerCodeSpec::Identity, 12)?,
                    channel: ChannelParams::with_length(16, 8, 0.0, clean()?)?,
                },
                100,
                Target::AtLeast(1.0),
            ),
            Preset::M256Erasure => (
                ExperimentKind::DecodeSuccess {
                    codec: CodecConfig::new(256, 16, InnerCodeSpec::Identity, 230)?,
                    channel: ChannelParams::with_length(256, 16, 0.0, SamplingSpec::bernoulli(0.05)?)?,
                },
                1000,
                Target::AtLeast(0.99),
            ),
            Preset::M16Rep3Noisy => (
                ExperimentKind::DecodeSuccess {
                    codec: CodecConfig::new(16, 24, InnerCodeSpec::Repetition { r: 3 }, 12)?,
                    channel: ChannelParams::with_length(16, 24, 0.02, clean()?)?,
                },
                1000,
                Target::AtLeastWithRate {
                    min: 0.95,
                    rate: Ratio::new(1, 8),
                },
            ),
            Preset::ShortMolecule => (
                ExperimentKind::ShortMolecule {
                    channel: ChannelParams::with_length(64, 4, 0.0, SamplingSpec::poisson(1.0)?)?,
                },
                10_000,
                Target::AtLeast(0.99),
            ),
            Preset::ChernoffL64 => (
                ExperimentKind::BoundCheck {
                    l: 64,
                    p: 0.05,
                    delta: 0.15,
                },
                100_000,
                Target::Below(chernoff_read_error_bound(64, 0.05, 0.15)?),
            ),
            Preset::CouponM1000 => (
                ExperimentKind::CouponTail {
                    m: 1000,
                    lambda: 1.0,
                    delta: 0.1,
                },
                10_000,
                Target::Below(coupon_tail_bound(1000, 1.0, 0.1)?),
            ),
        };
        Ok(PresetRun { kind, trials, target })
    }

    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }

    pub fn is_decode(self) -> bool {
        matches!(
            self,
            Preset::M16Clean | Preset::M256Erasure | Preset::M16Rep3Noisy | Preset::ShortMolecule
        )
    }
}

impl PresetRun {
    pub fn judge(&self, s: &Summary, fmt: impl Fn(f64) -> String) -> Verdict {
        match self.target {
            Target::Near { value, tol } => Verdict {
                pass: (s.mean - value).abs() <= tol,
                detail: format!("|mean - {}| <= {}", fmt(value), fmt(tol)),
            },
            Target::AtLeast(min) => Verdict {
                pass: s.mean >= min,
                detail: format!("mean >= {}", fmt(min)),
            },
            Target::Below(bound) => Verdict {
                pass: s.mean <= bound + 3.0 * s.stderr,
                detail: format!("mean <= bound {} + 3 stderr", fmt(bound)),
            },
            Target::AtLeastWithRate { min, rate } => {
                let actual = match &self.kind {
                    ExperimentKind::DecodeSuccess { codec, .. } => codec.achieved_rate_exact(),
                    _ => Ratio::from_integer(0),
                };
                Verdict {
                    pass: s.mean >= min && actual == rate,
                    detail: format!("mean >= {} and achieved rate {actual} == {rate}", fmt(min)),
                }
            }
        }
    }
}
