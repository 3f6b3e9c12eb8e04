use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::scalar::Real;

/// Number of vectors in `Z_+^a` with l1 norm `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingQuery {
    pub a: u64,
    pub b: u64,
}

impl CountingQuery {
    pub fn new(a: u64, b: u64) -> Self {
        assert!(a >= 1, "need at least one coordinate");
        Self { a, b }
    }

    pub fn exact(&self) -> BigUint {
        counting_t(self.a, self.b)
    }

    pub fn log2(&self) -> f64 {
        counting_t_log2(self.a, self.b)
    }

    pub fn log2_upper(&self) -> f64 {
        counting_t_log_upper(self.a, self.b)
    }
}

/// `T[a, b] = C(a + b - 1, b)`, exactly.
pub fn counting_t(a: u64, b: u64) -> BigUint {
    assert!(a >= 1, "need at least one coordinate");
    let n = a - 1 + b;
    let k = b.min(a - 1);
    // running prefix C(n - k + i, i) stays integral at every step
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

const EXACT_LOG_LIMIT: u64 = 1_000_000;

/// `log2 T[a, b]`. Exact big-integer evaluation while `min(b, a - 1)` is at
/// most 10^6, log-gamma beyond.
pub fn counting_t_log2(a: u64, b: u64) -> f64 {
    assert!(a >= 1, "need at least one coordinate");
    if b.min(a - 1) <= EXACT_LOG_LIMIT {
        log2_biguint(&counting_t(a, b))
    } else {
        let (n, k) = ((a - 1 + b) as f64, b as f64);
        (libm::lgamma(n + 1.0) - libm::lgamma(k + 1.0) - libm::lgamma(n - k + 1.0)) / std::f64::consts::LN_2
    }
}

fn log2_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().expect("fits in f64").log2()
    } else {
        let shift = bits - 64;
        (n >> shift).to_f64().expect("fits in f64").log2() + shift as f64
    }
}

/// `b log2(e (a + b - 1) / b)`, the standard upper bound on `log2 T[a, b]`.
pub fn counting_t_log_upper<F: Real>(a: u64, b: u64) -> F {
    assert!(a >= 1, "need at least one coordinate");
    if b == 0 {
        return F::zero();
    }
    let bf = F::from_count(b);
    bf * (F::E() * F::from_count(a + b - 1) / bf).log2()
}
