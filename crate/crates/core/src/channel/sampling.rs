use rand::Rng;
use serde::Serialize;

use super::{invalid, ChannelError};

/// Cumulative mass at which an unbounded custom pmf is cut off.
pub const TRUNCATION_MASS: f64 = 1.0 - 1e-12;

const PMF_SUM_TOL: f64 = 1e-12;

/// The per-molecule draw-count distribution `Q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum SamplingSpec {
    /// Each molecule is read once with probability `1 - q`, never otherwise.
    Bernoulli {
        q: f64,
    },
    Poisson {
        lambda: f64,
    },
    /// Poisson(`alpha`) PCR copies, then Poisson sequencing at depth
    /// `lambda / alpha` per copy.
    PoissonPcr {
        lambda: f64,
        alpha: f64,
    },
    Custom(CustomPmf),
}

/// Explicit count distribution with finite support `0..pmf.len()`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CustomPmf {
    pmf: Vec<f64>,
    #[serde(skip)]
    cdf: Vec<f64>,
    truncated: bool,
}

impl CustomPmf {
    /// Builds from a full table. Mass beyond [`TRUNCATION_MASS`] is dropped and
    /// the pmf is flagged as truncated.
    pub fn new(pmf: Vec<f64>) -> Result<Self, ChannelError> {
        if pmf.is_empty() {
            return Err(ChannelError::Pmf("empty table".into()));
        }
        if let Some((k, &p)) = pmf.iter().enumerate().find(|(_, p)| !(0.0..=1.0).contains(*p)) {
            return Err(ChannelError::Pmf(format!("entry {k} = {p} is not a probability")));
        }
        let total: f64 = pmf.iter().sum();
        if (total - 1.0).abs() > PMF_SUM_TOL {
            return Err(ChannelError::Pmf(format!("entries sum to {total}, not 1")));
        }
        Ok(Self::from_table(pmf))
    }

    /// Tabulates `f(0), f(1), ...` until the cumulative mass reaches
    /// [`TRUNCATION_MASS`]; fails if that takes more than `max_support` terms.
    pub fn from_fn<F: Fn(usize) -> f64>(f: F, max_support: usize) -> Result<Self, ChannelError> {
        let mut pmf = Vec::new();
        let mut total = 0.0;
        for k in 0..max_support {
            let p = f(k);
            if !(0.0..=1.0).contains(&p) {
                return Err(ChannelError::Pmf(format!("f({k}) = {p} is not a probability")));
            }
            pmf.push(p);
            total += p;
            if total >= TRUNCATION_MASS {
                let mut out = Self::from_table(pmf);
                out.truncated = true;
                return Ok(out);
            }
        }
        Err(ChannelError::Pmf(format!(
            "mass {total} after {max_support} terms never reaches the truncation threshold"
        )))
    }

    fn from_table(mut pmf: Vec<f64>) -> Self {
        let mut cdf = Vec::with_capacity(pmf.len());
        let mut acc = 0.0;
        let mut truncated = false;
        for (k, &p) in pmf.iter().enumerate() {
            acc += p;
            cdf.push(acc);
            if acc >= TRUNCATION_MASS && k + 1 < pmf.len() {
                truncated = pmf[k + 1..].iter().any(|&p| p > 0.0);
                break;
            }
        }
        pmf.truncate(cdf.len());
        Self { pmf, cdf, truncated }
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    /// True when tail mass was dropped.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.gen();
        let k = self.cdf.partition_point(|&c| c <= u);
        k.min(self.pmf.len() - 1) as u32
    }
}

impl SamplingSpec {
    pub fn bernoulli(q: f64) -> Result<Self, ChannelError> {
        let s = SamplingSpec::Bernoulli { q };
        s.validate()?;
        Ok(s)
    }

    pub fn poisson(lambda: f64) -> Result<Self, ChannelError> {
        let s = SamplingSpec::Poisson { lambda };
        s.validate()?;
        Ok(s)
    }

    pub fn poisson_pcr(lambda: f64, alpha: f64) -> Result<Self, ChannelError> {
        let s = SamplingSpec::PoissonPcr { lambda, alpha };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        let positive = |name, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(invalid(name, v, "must be finite and positive"))
            }
        };
        match *self {
            SamplingSpec::Bernoulli { q } if !(0.0..=1.0).contains(&q) => Err(invalid("q", q, "must lie in [0, 1]")),
            SamplingSpec::Bernoulli { .. } | SamplingSpec::Custom(_) => Ok(()),
            SamplingSpec::Poisson { lambda } => positive("lambda", lambda),
            SamplingSpec::PoissonPcr { lambda, alpha } => {
                positive("lambda", lambda)?;
                positive("alpha", alpha)
            }
        }
    }

    /// Expected number of draws per molecule.
    pub fn mean(&self) -> f64 {
        match self {
            SamplingSpec::Bernoulli { q } => 1.0 - q,
            SamplingSpec::Poisson { lambda } | SamplingSpec::PoissonPcr { lambda, .. } => *lambda,
            SamplingSpec::Custom(c) => c.pmf.iter().enumerate().map(|(k, p)| k as f64 * p).sum(),
        }
    }

    /// Draws one `N_i`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        match self {
            SamplingSpec::Bernoulli { q } => u32::from(rng.gen::<f64>() >= *q),
            SamplingSpec::Poisson { lambda } => poisson(*lambda, rng) as u32,
            SamplingSpec::PoissonPcr { lambda, alpha } => {
                let copies = poisson(*alpha, rng);
                if copies == 0 {
                    0
                } else {
                    poisson(lambda * copies as f64 / alpha, rng) as u32
                }
            }
            SamplingSpec::Custom(c) => c.sample(rng),
        }
    }
}

/// Probability that a molecule is never drawn.
pub fn q0_of(spec: &SamplingSpec) -> f64 {
    match spec {
        SamplingSpec::Bernoulli { q } => *q,
        SamplingSpec::Poisson { lambda } => (-lambda).exp(),
        // E[exp(-lambda A / alpha)] for A ~ Poisson(alpha)
        SamplingSpec::PoissonPcr { lambda, alpha } => {
            let seen_per_copy = -(-lambda / alpha).exp_m1();
            (-alpha * seen_per_copy).exp()
        }
        SamplingSpec::Custom(c) => c.pmf[0],
    }
}

/// Draws `N_1..N_M` i.i.d. from `spec`.
pub fn sample_counts<R: Rng + ?Sized>(spec: &SamplingSpec, m: usize, rng: &mut R) -> Vec<u32> {
    (0..m).map(|_| spec.sample(rng)).collect()
}

const INVERSION_MAX_LAMBDA: f64 = 10.0;

/// Poisson variate: sequential-search inversion for `lambda <= 10`,
/// Hörmann's PTRS transformed rejection above.
pub fn poisson<R: Rng + ?Sized>(lambda: f64, rng: &mut R) -> u64 {
    if lambda <= 0.0 {
        return 0;
    }
    if lambda <= INVERSION_MAX_LAMBDA {
        poisson_inversion(lambda, rng)
    } else {
        poisson_ptrs(lambda, rng)
    }
}

fn poisson_inversion<R: Rng + ?Sized>(lambda: f64, rng: &mut R) -> u64 {
    let u: f64 = rng.gen();
    let mut k = 0u64;
    let mut term = (-lambda).exp();
    let mut cdf = term;
    // the cap only bites when u lands in the last ~1e-16 of mass
    while u > cdf && k < 1000 {
        k += 1;
        term *= lambda / k as f64;
        cdf += term;
    }
    k
}

fn poisson_ptrs<R: Rng + ?Sized>(lambda: f64, rng: &mut R) -> u64 {
    let slam = lambda.sqrt();
    let loglam = lambda.ln();
    let b = 0.931 + 2.53 * slam;
    let a = -0.059 + 0.02483 * b;
    let invalpha = 1.1239 + 1.1328 / (b - 3.4);
    let vr = 0.9277 - 3.6224 / (b - 2.0);
    loop {
        let u = rng.gen::<f64>() - 0.5;
        let v: f64 = rng.gen();
        let us = 0.5 - u.abs();
        let k = ((2.0 * a / us + b) * u + lambda + 0.43).floor();
        if us >= 0.07 && v <= vr {
            return k as u64;
        }
        if k < 0.0 || (us < 0.013 && v > us) {
            continue;
        }
        let lhs = v.ln() + invalpha.ln() - (a / (us * us) + b).ln();
        let rhs = -lambda + k * loglam - libm::lgamma(k + 1.0);
        if lhs <= rhs {
            return k as u64;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn q0_bernoulli_is_q() {
        assert_eq!(q0_of(&SamplingSpec::bernoulli(0.1).unwrap()), 0.1);
    }

    #[test]
    fn q0_poisson_and_pcr_match_high_precision_values() {
        // exp(-1) and exp(-2 (1 - exp(-1))) evaluated to 20 digits with mpmath
        let e1 = 0.367_879_441_171_442_32;
        let pcr = 0.282_453_563_850_540_3;
        assert!((q0_of(&SamplingSpec::poisson(1.0).unwrap()) - e1).abs() < 1e-15);
        assert!((q0_of(&SamplingSpec::poisson_pcr(2.0, 2.0).unwrap()) - pcr).abs() < 1e-15);
    }

    #[test]
    fn pcr_tends_to_poisson_for_large_alpha() {
        let pcr = q0_of(&SamplingSpec::poisson_pcr(1.5, 1e8).unwrap());
        assert!((pcr - (-1.5f64).exp()).abs() < 1e-7);
    }

    #[test]
    fn degenerate_bernoulli_counts() {
        let mut rng = rng_from_seed(1);
        assert_eq!(
            sample_counts(&SamplingSpec::bernoulli(1.0).unwrap(), 5, &mut rng),
            vec![0; 5]
        );
        assert_eq!(
            sample_counts(&SamplingSpec::bernoulli(0.0).unwrap(), 5, &mut rng),
            vec![1; 5]
        );
    }

    #[test]
    fn poisson_mean_law_of_large_numbers() {
        let mut rng = rng_from_seed(2024);
        let counts = sample_counts(&SamplingSpec::poisson(2.0).unwrap(), 100_000, &mut rng);
        let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / counts.len() as f64;
        assert!((1.98..=2.02).contains(&mean), "mean {mean}");
    }

    #[test]
    fn ptrs_branch_has_correct_moments() {
        let mut rng = rng_from_seed(99);
        let n = 200_000;
        let lambda = 37.5;
        let xs: Vec<f64> = (0..n).map(|_| poisson(lambda, &mut rng) as f64).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        // stderr of the mean is sqrt(37.5 / 2e5) = 0.0137
        assert!((mean - lambda).abs() < 0.06, "mean {mean}");
        assert!((var - lambda).abs() < 0.6, "var {var}");
    }

    #[test]
    fn poisson_is_reproducible() {
        let a: Vec<u64> = {
            let mut r = rng_from_seed(5);
            (0..100).map(|i| poisson(0.5 + i as f64 * 0.3, &mut r)).collect()
        };
        let b: Vec<u64> = {
            let mut r = rng_from_seed(5);
            (0..100).map(|i| poisson(0.5 + i as f64 * 0.3, &mut r)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn custom_pmf_validation_and_truncation() {
        assert!(CustomPmf::new(vec![0.5, 0.4]).is_err());
        assert!(CustomPmf::new(vec![1.5, -0.5]).is_err());
        let c = CustomPmf::new(vec![0.25, 0.75]).unwrap();
        assert!(!c.truncated());
        assert_eq!(q0_of(&SamplingSpec::Custom(c)), 0.25);

        let lambda: f64 = 3.0;
        let c = CustomPmf::from_fn(
            |k| (-lambda + k as f64 * lambda.ln() - libm::lgamma(k as f64 + 1.0)).exp(),
            200,
        )
        .unwrap();
        assert!(c.truncated());
        assert!(c.pmf().iter().sum::<f64>() >= TRUNCATION_MASS);
        assert!((SamplingSpec::Custom(c).mean() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn custom_pmf_sampling_frequencies() {
        let spec = SamplingSpec::Custom(CustomPmf::new(vec![0.2, 0.0, 0.8]).unwrap());
        let mut rng = rng_from_seed(3);
        let counts = sample_counts(&spec, 50_000, &mut rng);
        assert!(counts.iter().all(|&c| c == 0 || c == 2));
        let zeros = counts.iter().filter(|&&c| c == 0).count() as f64 / 50_000.0;
        assert!((zeros - 0.2).abs() < 0.01);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(SamplingSpec::bernoulli(1.2).is_err());
        assert!(SamplingSpec::poisson(0.0).is_err());
        assert!(SamplingSpec::poisson_pcr(1.0, -1.0).is_err());
    }
}
