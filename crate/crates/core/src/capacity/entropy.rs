use super::{domain, CapacityError};
use crate::scalar::Real;

/// `H(x) = -x log2 x - (1-x) log2 (1-x)`, with `0 log 0 = 0`.
pub fn binary_entropy<F: Real>(x: F) -> Result<F, CapacityError> {
    if !(x >= F::zero() && x <= F::one()) {
        return Err(domain("x", x, "must lie in [0, 1]"));
    }
    Ok(-xlog2x(x) - xlog2x(F::one() - x))
}

#[inline]
fn xlog2x<F: Real>(x: F) -> F {
    if x == F::zero() {
        F::zero()
    } else {
        x * x.log2()
    }
}

/// Binary KL divergence `D(delta || p)` in bits. Infinite when the support of
/// `delta` is not covered by `p`.
pub fn kl_binary<F: Real>(delta: F, p: F) -> Result<F, CapacityError> {
    let unit = |v: F| v >= F::zero() && v <= F::one();
    if !unit(delta) {
        return Err(domain("delta", delta, "must lie in [0, 1]"));
    }
    if !unit(p) {
        return Err(domain("p", p, "must lie in [0, 1]"));
    }
    let term = |a: F, b: F| {
        if a == F::zero() {
            F::zero()
        } else if b == F::zero() {
            F::infinity()
        } else {
            a * (a / b).log2()
        }
    };
    let d = term(delta, p) + term(F::one() - delta, F::one() - p);
    // rounding can leave a tiny negative value near delta == p
    Ok(d.max(F::zero()))
}
