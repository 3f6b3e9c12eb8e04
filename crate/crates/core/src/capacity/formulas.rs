use serde::Serialize;

use super::{binary_entropy, domain, CapacityError};
use crate::scalar::{clamp_nonnegative, Rate, Real};

/// A capacity value together with the hypothesis under which it is proven.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityResult<T> {
    /// Bits per stored base, never negative.
    pub value: T,
    /// Whether the formula is a proven capacity at these parameters.
    pub valid: bool,
    /// `1 - H(2p) - 2/beta` for the noisy channel.
    pub condition_margin: Option<T>,
    /// The raw formula was negative and `value` was clamped to zero.
    pub clamped: bool,
}

fn check_unit<T: Rate>(name: &'static str, x: T) -> Result<(), CapacityError> {
    if x >= T::zero() && x <= T::one() {
        Ok(())
    } else {
        Err(domain(name, x, "must lie in [0, 1]"))
    }
}

fn check_positive<T: Rate>(name: &'static str, x: T) -> Result<(), CapacityError> {
    if x > T::zero() {
        Ok(())
    } else {
        Err(domain(name, x, "must be positive"))
    }
}

fn check_crossover<F: Real>(p: F) -> Result<(), CapacityError> {
    if p >= F::zero() && p < F::lit(0.5) {
        Ok(())
    } else {
        Err(domain("p", p, "must lie in [0, 1/2)"))
    }
}

/// `(1 - q0)(1 - 1/beta)` for `beta > 1`, zero otherwise.
///
/// Depends on the sampling distribution only through `q0`. Exact when `T` is
/// a rational type.
pub fn noise_free_capacity<T: Rate>(q0: T, beta: T) -> Result<CapacityResult<T>, CapacityError> {
    check_unit("q0", q0)?;
    check_positive("beta", beta)?;
    let value = if beta <= T::one() {
        T::zero()
    } else {
        (T::one() - q0) * (T::one() - T::one() / beta)
    };
    Ok(CapacityResult {
        value,
        valid: true,
        condition_margin: None,
        clamped: false,
    })
}

/// `1 - H(2p) - 2/beta`.
pub fn region_margin<F: Real>(p: F, beta: F) -> Result<F, CapacityError> {
    check_crossover(p)?;
    check_positive("beta", beta)?;
    Ok(F::one() - binary_entropy(p + p)? - F::lit(2.0) / beta)
}

/// `p < 1/4` and `1 - H(2p) - 2/beta > 0`.
pub fn in_capacity_region<F: Real>(p: F, beta: F) -> Result<bool, CapacityError> {
    Ok(p < F::lit(0.25) && region_margin(p, beta)? > F::zero())
}

/// Smallest `beta` with `(p, beta)` in the region: `2 / (1 - H(2p))`.
pub fn region_boundary<F: Real>(p: F) -> Result<F, CapacityError> {
    check_crossover(p)?;
    if p >= F::lit(0.25) {
        return Err(domain("p", p, "region boundary exists only for p < 1/4"));
    }
    Ok(F::lit(2.0) / (F::one() - binary_entropy(p + p)?))
}

/// `(1 - q)(1 - H(p) - 1/beta)`, evaluated everywhere and flagged valid only
/// inside the proven region.
pub fn noisy_capacity<F: Real>(q: F, p: F, beta: F) -> Result<CapacityResult<F>, CapacityError> {
    check_unit("q", q)?;
    check_crossover(p)?;
    check_positive("beta", beta)?;
    let margin = region_margin(p, beta)?;
    let (value, clamped) = clamp_nonnegative((F::one() - q) * (F::one() - binary_entropy(p)? - beta.recip()));
    Ok(CapacityResult {
        value,
        valid: p < F::lit(0.25) && margin > F::zero(),
        condition_margin: Some(margin),
        clamped,
    })
}

/// `(1 - q) min(1 - H(p), 1 - 1/beta)`, clamped at zero.
pub fn capacity_upper_bound<F: Real>(q: F, p: F, beta: F) -> Result<F, CapacityError> {
    check_unit("q", q)?;
    check_crossover(p)?;
    check_positive("beta", beta)?;
    let bsc = F::one() - binary_entropy(p)?;
    let index = F::one() - beta.recip();
    Ok(clamp_nonnegative((F::one() - q) * bsc.min(index)).0)
}

/// Achievable storage/recovery rates at Poisson coverage depth `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TradeoffPoint<F> {
    pub lambda: F,
    pub rs_max: F,
    pub rr_max: F,
}

/// `rs_max = (1 - e^-lambda)(1 - 1/beta)` and `rr_max = rs_max / lambda`.
pub fn tradeoff_point<F: Real>(lambda: F, beta: F) -> Result<TradeoffPoint<F>, CapacityError> {
    check_positive("lambda", lambda)?;
    if !(beta > F::one()) {
        return Err(domain("beta", beta, "must exceed 1"));
    }
    let seen = -(-lambda).exp_m1();
    let rs_max = seen * (F::one() - beta.recip());
    Ok(TradeoffPoint {
        lambda,
        rs_max,
        rr_max: rs_max / lambda,
    })
}

/// Coverage depth minimising the cost `(q + lambda) / (1 - e^-lambda)` when
/// synthesis costs `cost_ratio` times as much as sequencing per base.
///
/// The stationarity condition is `e^lambda = cost_ratio + lambda + 1`; it is
/// solved by Newton's method safeguarded with bisection.
pub fn optimal_lambda<F: Real>(cost_ratio: F) -> Result<F, CapacityError> {
    check_positive("cost_ratio", cost_ratio)?;
    if !cost_ratio.is_finite() {
        return Err(domain("cost_ratio", cost_ratio, "must be finite"));
    }
    let g = |l: F| l.exp() - l - F::one() - cost_ratio;
    let dg = |l: F| l.exp_m1();
    let tol = F::lit(1e-10);

    // g(0) = -q < 0 and g is convex and increasing on (0, inf)
    let mut lo = F::zero();
    let mut hi = F::one();
    while g(hi) <= F::zero() {
        lo = hi;
        hi = hi + hi;
    }
    let mut x = hi;
    for _ in 0..200 {
        let gx = g(x);
        if gx.abs() < tol {
            break;
        }
        if gx > F::zero() {
            hi = x;
        } else {
            lo = x;
        }
        let newton = x - gx / dg(x);
        let next = if newton > lo && newton < hi {
            newton
        } else {
            (lo + hi) / F::lit(2.0)
        };
        if next == x {
            break;
        }
        x = next;
    }
    Ok(x)
}

/// Upper bound `1/beta - 1` on the short-molecule rate, for `0 < beta < 1`.
pub fn short_molecule_bound<T: Rate>(beta: T) -> Result<T, CapacityError> {
    if !(beta > T::zero() && beta < T::one()) {
        return Err(domain("beta", beta, "short-molecule regime needs 0 < beta < 1"));
    }
    Ok(T::one() / beta - T::one())
}

/// Rate of the index-based scheme, `(1 - q)(r_inner - 1/beta)`, clamped at zero.
pub fn scheme_rate<T: Rate>(q: T, r_inner: T, beta: T) -> Result<T, CapacityError> {
    check_unit("q", q)?;
    if !(r_inner > T::zero() && r_inner <= T::one()) {
        return Err(domain("r_inner", r_inner, "must lie in (0, 1]"));
    }
    if !(beta > T::one()) {
        return Err(domain("beta", beta, "must exceed 1"));
    }
    Ok(clamp_nonnegative((T::one() - q) * (r_inner - T::one() / beta)).0)
}
