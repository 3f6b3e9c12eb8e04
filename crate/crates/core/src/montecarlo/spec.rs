use serde::Serialize;

use super::MonteCarloError;
use crate::channel::ChannelParams;
use crate::codec::{CodecConfig, MAX_SHORT_LEN};

/// What one batch of trials measures.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExperimentKind {
    /// Fraction of molecules never drawn.
    EstimateQ0 { channel: ChannelParams },
    /// Random message through encode, channel, decode.
    DecodeSuccess { codec: CodecConfig, channel: ChannelParams },
    /// One BSC read per trial; event = at least `delta * l` flips.
    BoundCheck { l: usize, p: f64, delta: f64 },
    /// `lambda * m` draws with replacement from `m` coupons; event = at least
    /// `(1 - e^-lambda + delta) m` distinct.
    CouponTail { m: usize, lambda: f64, delta: f64 },
    /// Repetition-index scheme on `channel.m()` molecules of `channel.l()`
    /// bits; success = every bit decided correctly.
    ShortMolecule { channel: ChannelParams },
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::EstimateQ0 { .. } => "estimate_q0",
            ExperimentKind::DecodeSuccess { .. } => "decode_success",
            ExperimentKind::BoundCheck { .. } => "bound_check",
            ExperimentKind::CouponTail { .. } => "coupon_tail",
            ExperimentKind::ShortMolecule { .. } => "short_molecule",
        }
    }

    /// Name of the per-trial quantity the summary averages.
    pub fn metric(&self) -> &'static str {
        match self {
            ExperimentKind::EstimateQ0 { .. } => "unseen_fraction",
            ExperimentKind::DecodeSuccess { .. } => "success_rate",
            ExperimentKind::BoundCheck { .. } | ExperimentKind::CouponTail { .. } => "tail_frequency",
            ExperimentKind::ShortMolecule { .. } => "full_recovery_rate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSpec {
    #[serde(flatten)]
    pub kind: ExperimentKind,
    pub trials: u64,
    pub base_seed: u64,
}

impl ExperimentSpec {
    pub fn new(kind: ExperimentKind, trials: u64, base_seed: u64) -> Self {
        Self {
            kind,
            trials,
            base_seed,
        }
    }

    pub fn validate(&self) -> Result<(), MonteCarloError> {
        let bad = |s: String| Err(MonteCarloError::Invalid(s));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        match &self.kind {
            ExperimentKind::EstimateQ0 { .. } => Ok(()),
            ExperimentKind::DecodeSuccess { codec, channel } => {
                if codec.m() != channel.m() || codec.l() != channel.l() {
                    return bad(format!(
                        "codec is M={} L={} but channel is M={} L={}",
                        codec.m(),
                        codec.l(),
                        channel.m(),
                        channel.l()
                    ));
                }
                Ok(())
            }
            ExperimentKind::BoundCheck { l, p, delta } => {
                if *l == 0 || !(0.0..0.5).contains(p) || !(delta > p && *delta <= 1.0) {
                    return bad(format!(
                        "bound check needs L >= 1, 0 <= p < 1/2, p < delta <= 1 (L={l}, p={p}, delta={delta})"
                    ));
                }
                Ok(())
            }
            ExperimentKind::CouponTail { m, lambda, delta } => {
                if *m == 0 || !(*lambda > 0.0) || !(*delta > 0.0) {
                    return bad(format!(
                        "coupon tail needs M >= 1, lambda > 0, delta > 0 (M={m}, lambda={lambda}, delta={delta})"
                    ));
                }
                Ok(())
            }
            ExperimentKind::ShortMolecule { channel } => {
                let l = channel.l();
                if !(2..=MAX_SHORT_LEN).contains(&l) || channel.m() < 1 << (l - 1) {
                    return bad(format!(
                        "short-molecule scheme needs 2 <= L <= {MAX_SHORT_LEN} and M >= 2^(L-1)"
                    ));
                }
                Ok(())
            }
        }
    }
}

/// One line of the JSON-lines output.
///
/// Fields that a kind does not produce are `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    /// `derive_seed(base_seed, trial)`.
    pub seed: u64,
    #[serde(rename = "N")]
    pub n: usize,
    pub distinct_seen: usize,
    pub decode_success: Option<bool>,
    pub erasures: Option<usize>,
    pub collisions: Option<usize>,
    pub flip_rate: Option<f64>,
    /// Set only when the trial itself failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}
