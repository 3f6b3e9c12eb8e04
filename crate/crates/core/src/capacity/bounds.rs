use super::{domain, kl_binary, CapacityError};
use crate::scalar::Real;

/// `exp(-2 M delta^2)`: Hoeffding bound on the seen fraction exceeding its
/// mean by `delta`.
pub fn hoeffding_seen_fraction_bound<F: Real>(m: u64, delta: F) -> Result<F, CapacityError> {
    if m == 0 {
        return Err(domain("M", m, "must be at least 1"));
    }
    if !(delta >= F::zero()) {
        return Err(domain("delta", delta, "must be nonnegative"));
    }
    Ok((-F::lit(2.0) * F::from_count(m) * delta * delta).exp())
}

/// Chebyshev bound on drawing at least `(1 - e^-lambda + delta) M` distinct
/// coupons in `lambda M` draws with replacement:
///
/// `(1/M) 2 e^{2 lambda} / (xi - e^lambda / M)^2`, `xi = ln(e^-lambda / (e^-lambda - delta))`.
///
/// Needs `0 < delta <= e^-lambda / 2` and `xi > e^lambda / M`. The value may
/// exceed 1.
pub fn coupon_tail_bound<F: Real>(m: u64, lambda: F, delta: F) -> Result<F, CapacityError> {
    if m == 0 {
        return Err(domain("M", m, "must be at least 1"));
    }
    if !(lambda > F::zero()) {
        return Err(domain("lambda", lambda, "must be positive"));
    }
    let unseen = (-lambda).exp();
    if !(delta > F::zero() && delta <= unseen / F::lit(2.0)) {
        return Err(domain("delta", delta, "must lie in (0, e^-lambda / 2]"));
    }
    let mf = F::from_count(m);
    let xi = -(-delta / unseen).ln_1p();
    let threshold = lambda.exp() / mf;
    if !(xi > threshold) {
        return Err(CapacityError::VacuousRegime {
            xi: xi.to_f64().unwrap_or(f64::NAN),
            threshold: threshold.to_f64().unwrap_or(f64::NAN),
        });
    }
    let gap = xi - threshold;
    Ok(F::lit(2.0) * (lambda + lambda).exp() / (mf * gap * gap))
}

/// `2^{-L D(delta || p)}`: probability that a length-`L` read crossing BSC(`p`)
/// collects at least `delta L` flips.
pub fn chernoff_read_error_bound<F: Real>(l: u64, p: F, delta: F) -> Result<F, CapacityError> {
    if !(delta > p) {
        return Err(domain("delta", delta, "must exceed p"));
    }
    let d = kl_binary(delta, p)?;
    Ok((-F::from_count(l) * d).exp2())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    // Expected values from mpmath at 30 digits.

    #[test]
    fn hoeffding_examples() {
        assert_eq!(hoeffding_seen_fraction_bound(10, 0.0).unwrap(), 1.0);
        let b = hoeffding_seen_fraction_bound(100, 0.1).unwrap();
        assert!(close(b, 0.135_335_283_236_612_7, 1e-15));
        let b: f64 = hoeffding_seen_fraction_bound(10_000, 0.05).unwrap();
        assert!(close(b / 1.928_749_847_963_917_8e-22, 1.0, 1e-12));
        assert!(hoeffding_seen_fraction_bound(0, 0.1).is_err());
        assert!(hoeffding_seen_fraction_bound(5, -0.1).is_err());
    }

    #[test]
    fn coupon_examples() {
        let b = coupon_tail_bound(1000, 1.0, 0.1).unwrap();
        assert!(close(b, 0.149_409_343_920_773_85, 1e-14));
        let b = coupon_tail_bound(1_000_000, 1.0, 0.1).unwrap();
        assert!(close(b / 1.468_622_182_056_339_3e-4, 1.0, 1e-12));
    }

    #[test]
    fn coupon_vacuous_limit() {
        let mut last = 0.0;
        for delta in [1e-2, 1e-3, 1e-4] {
            let b = coupon_tail_bound(1_000_000, 1.0, delta).unwrap();
            assert!(b > last);
            last = b;
        }
        assert!(last > 1.0);
        assert!(matches!(
            coupon_tail_bound(100, 1.0, 1e-3),
            Err(CapacityError::VacuousRegime { .. })
        ));
    }

    #[test]
    fn coupon_preconditions() {
        assert!(coupon_tail_bound(1000, 1.0, 0.0).is_err());
        assert!(coupon_tail_bound(1000, 1.0, 0.19).is_err());
        assert!(coupon_tail_bound(1000, 0.0, 0.1).is_err());
    }

    #[test]
    fn chernoff_examples() {
        let b = chernoff_read_error_bound(64, 0.05, 0.15).unwrap();
        assert!(close(b, 0.011_153_483_356_422_779, 1e-15));
        let near = chernoff_read_error_bound(64, 0.05, 0.05 + 1e-9).unwrap();
        assert!(near > 0.999_999);
        assert!(chernoff_read_error_bound(64, 0.05, 0.05).is_err());
        assert!(chernoff_read_error_bound(64, 0.05, 0.01).is_err());
    }

    #[test]
    fn chernoff_squares_when_length_doubles() {
        for (l, p, d) in [(64, 0.05, 0.15), (20, 0.1, 0.3), (7, 0.01, 0.5)] {
            let once: f64 = chernoff_read_error_bound(l, p, d).unwrap();
            let twice: f64 = chernoff_read_error_bound(2 * l, p, d).unwrap();
            assert!(close(twice / (once * once), 1.0, 1e-12));
        }
    }
}
