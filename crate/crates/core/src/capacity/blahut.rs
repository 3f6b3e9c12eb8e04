use std::str::FromStr;

use super::{domain, CapacityError, CapacityResult};
use crate::scalar::{clamp_nonnegative, Real};

pub const DEFAULT_BA_TOL: f64 = 1e-9;
pub const DEFAULT_BA_MAX_ITER: usize = 100_000;

const ROW_SUM_TOL: f64 = 1e-12;

/// Row-stochastic channel matrix `W[x][y] = P(y | x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix<F> {
    rows: Vec<Vec<F>>,
}

impl<F: Real> TransitionMatrix<F> {
    pub fn new(rows: Vec<Vec<F>>) -> Result<Self, CapacityError> {
        let width = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || width == 0 {
            return Err(CapacityError::Malformed("empty matrix".into()));
        }
        // single precision cannot resolve 1e-12
        let tol = F::lit(ROW_SUM_TOL).max(F::epsilon() * F::from_count(4 * width as u64));
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(CapacityError::Malformed(format!(
                    "row {i} has {} entries, expected {width}",
                    row.len()
                )));
            }
            if row.iter().any(|&w| !(w >= F::zero() && w <= F::one())) {
                return Err(CapacityError::Malformed(format!("row {i} has an entry outside [0, 1]")));
            }
            let sum = row.iter().fold(F::zero(), |a, &b| a + b);
            if (sum - F::one()).abs() > tol {
                return Err(CapacityError::NotStochastic {
                    row: i,
                    sum: sum.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self { rows })
    }

    /// Binary symmetric channel with crossover `p`.
    pub fn bsc(p: F) -> Result<Self, CapacityError> {
        Self::new(vec![vec![F::one() - p, p], vec![p, F::one() - p]])
    }

    /// Binary erasure channel; the erasure symbol is output column 2.
    pub fn bec(eps: F) -> Result<Self, CapacityError> {
        let keep = F::one() - eps;
        Self::new(vec![vec![keep, F::zero(), eps], vec![F::zero(), keep, eps]])
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
            .collect();
        Self { rows }
    }

    pub fn inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn outputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// Symmetric in Gallager's sense: the output columns split into groups
    /// where, inside each group, rows are permutations of one another and
    /// columns are permutations of one another. Columns are grouped by their
    /// sorted entries, so this can miss partitions finer than that grouping.
    pub fn is_symmetric(&self) -> bool {
        let sorted = |mut v: Vec<F>| {
            v.sort_by(|a, b| a.partial_cmp(b).expect("entries are finite"));
            v
        };
        let column = |y: usize| sorted(self.rows.iter().map(|r| r[y]).collect());
        let mut groups: Vec<(Vec<F>, Vec<usize>)> = Vec::new();
        for y in 0..self.outputs() {
            let key = column(y);
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, members)) => members.push(y),
                None => groups.push((key, vec![y])),
            }
        }
        groups.iter().all(|(_, cols)| {
            let sub = |r: &Vec<F>| sorted(cols.iter().map(|&y| r[y]).collect());
            let first = sub(&self.rows[0]);
            self.rows.iter().all(|r| sub(r) == first)
        })
    }
}

impl FromStr for TransitionMatrix<f64> {
    type Err = CapacityError;

    /// Whitespace-separated entries, one row per non-empty line.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows = s
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|e| CapacityError::Malformed(format!("{t:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }
}

/// Converged Blahut–Arimoto state.
#[derive(Debug, Clone, PartialEq)]
pub struct BaOutcome<F> {
    /// Lower end of the final bracket, in bits per channel use.
    pub capacity: F,
    /// Width of the certified bracket `max_x D(W_x || q) - lower`.
    pub gap: F,
    pub input_distribution: Vec<F>,
    pub iterations: usize,
}

/// Capacity of a discrete memoryless channel by alternating maximisation.
///
/// Each iteration brackets the capacity between
/// `log2 sum_x r(x) 2^{D_x}` and `max_x D_x`, where `D_x` is the divergence of
/// row `x` from the current output distribution. Stops once the bracket is
/// narrower than `tol`.
pub fn dmc_capacity_ba<F: Real>(
    matrix: &TransitionMatrix<F>,
    tol: F,
    max_iter: usize,
) -> Result<BaOutcome<F>, CapacityError> {
    if !(tol > F::zero()) {
        return Err(domain("tol", tol, "must be positive"));
    }
    let nx = matrix.inputs();
    let ny = matrix.outputs();
    let w = matrix.rows();
    let mut r = vec![F::one() / F::from_count(nx as u64); nx];
    let mut divergence = vec![F::zero(); nx];
    let mut gap = F::infinity();

    for iteration in 1..=max_iter {
        let out: Vec<F> = (0..ny)
            .map(|y| (0..nx).fold(F::zero(), |acc, x| acc + r[x] * w[x][y]))
            .collect();
        for x in 0..nx {
            divergence[x] = (0..ny).fold(F::zero(), |acc, y| {
                let wxy = w[x][y];
                if wxy > F::zero() {
                    acc + wxy * (wxy / out[y]).log2()
                } else {
                    acc
                }
            });
        }
        let upper = divergence.iter().copied().fold(F::neg_infinity(), F::max);
        // shift by the max before exponentiating
        let weights: Vec<F> = (0..nx).map(|x| r[x] * (divergence[x] - upper).exp2()).collect();
        let z = weights.iter().fold(F::zero(), |a, &b| a + b);
        let lower = upper + z.log2();
        gap = upper - lower;
        if gap < tol {
            return Ok(BaOutcome {
                capacity: lower.max(F::zero()),
                gap,
                input_distribution: r,
                iterations: iteration,
            });
        }
        for x in 0..nx {
            r[x] = weights[x] / z;
        }
    }
    Err(CapacityError::NoConvergence {
        iterations: max_iter,
        gap: gap.to_f64().unwrap_or(f64::NAN),
    })
}

/// `(1 - q) max(0, C_W - 1/beta)` for a symmetric channel `W`.
///
/// `valid` is advisory: it requires `W` to be symmetric and the index
/// overhead to leave a positive rate, but the true threshold on `beta` has no
/// closed form.
pub fn sdmc_capacity<F: Real>(matrix: &TransitionMatrix<F>, q: F, beta: F) -> Result<CapacityResult<F>, CapacityError> {
    if !(q >= F::zero() && q <= F::one()) {
        return Err(domain("q", q, "must lie in [0, 1]"));
    }
    if !(beta > F::zero()) {
        return Err(domain("beta", beta, "must be positive"));
    }
    let tol = F::lit(DEFAULT_BA_TOL).max(F::epsilon() * F::lit(16.0));
    let c = dmc_capacity_ba(matrix, tol, DEFAULT_BA_MAX_ITER)?.capacity;
    let excess = c - beta.recip();
    let (value, clamped) = clamp_nonnegative((F::one() - q) * excess);
    Ok(CapacityResult {
        value,
        valid: matrix.is_symmetric() && excess > F::zero(),
        condition_margin: None,
        clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }
    use crate::capacity::binary_entropy;

    fn ba(m: &TransitionMatrix<f64>) -> f64 {
        dmc_capacity_ba(m, DEFAULT_BA_TOL, DEFAULT_BA_MAX_ITER)
            .unwrap()
            .capacity
    }

    #[test]
    fn bsc_matches_closed_form() {
        for p in [0.0, 0.01, 0.11, 0.25, 0.4, 0.5] {
            let c = ba(&TransitionMatrix::bsc(p).unwrap());
            let expect = 1.0 - binary_entropy(p).unwrap();
            assert!((c - expect).abs() < 1e-6, "p = {p}: {c} vs {expect}");
        }
        assert!(close(
            ba(&TransitionMatrix::bsc(0.11).unwrap()),
            0.500_084_041_835_472,
            1e-9
        ));
    }

    #[test]
    fn identity_and_erasure() {
        assert!(close(ba(&TransitionMatrix::identity(2)), 1.0, 1e-12));
        assert!(close(ba(&TransitionMatrix::identity(4)), 2.0, 1e-12));
        assert!(close(ba(&TransitionMatrix::bec(0.3).unwrap()), 0.7, 1e-9));
    }

    #[test]
    fn asymmetric_z_channel() {
        // Z channel with P(0 | 1) = 1/2: capacity log2(5/4) at P(X = 1) = 2/5
        let z = TransitionMatrix::new(vec![vec![1.0, 0.0], vec![0.5, 0.5]]).unwrap();
        let out = dmc_capacity_ba(&z, 1e-10, DEFAULT_BA_MAX_ITER).unwrap();
        assert!(close(out.capacity, 1.25f64.log2(), 1e-9));
        assert!(close(out.input_distribution[1], 0.4, 1e-4));
        assert!(!z.is_symmetric());
    }

    #[test]
    fn symmetry_detection() {
        assert!(TransitionMatrix::bsc(0.2).unwrap().is_symmetric());
        assert!(TransitionMatrix::bec(0.2).unwrap().is_symmetric());
        assert!(TransitionMatrix::<f64>::identity(3).is_symmetric());
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(
            TransitionMatrix::new(vec![vec![0.5, 0.4], vec![0.5, 0.5]]),
            Err(CapacityError::NotStochastic { row: 0, .. })
        ));
        assert!(TransitionMatrix::new(vec![vec![1.0], vec![0.5, 0.5]]).is_err());
        assert!(TransitionMatrix::<f64>::new(vec![]).is_err());
        assert!("0.9 0.1\n0.1 x".parse::<TransitionMatrix<f64>>().is_err());
    }

    #[test]
    fn non_convergence_is_reported() {
        let z = TransitionMatrix::new(vec![vec![1.0, 0.0], vec![0.5, 0.5]]).unwrap();
        assert!(matches!(
            dmc_capacity_ba(&z, 1e-15, 3),
            Err(CapacityError::NoConvergence { iterations: 3, .. })
        ));
    }

    #[test]
    fn parses_text_matrix() {
        let m: TransitionMatrix<f64> = "0.9 0.1\n\n0.1 0.9\n".parse().unwrap();
        assert_eq!(m, TransitionMatrix::bsc(0.1).unwrap());
    }

    #[test]
    fn sdmc_examples() {
        let c = sdmc_capacity(&TransitionMatrix::bsc(0.11).unwrap(), 0.1, 8.0).unwrap();
        assert!(close(c.value, 0.337_575_637_651_924_8, 1e-9));
        assert!(c.valid);
        let c = sdmc_capacity(&TransitionMatrix::bsc(0.11).unwrap(), 0.1, 1.5).unwrap();
        assert_eq!(c.value, 0.0);
        assert!(c.clamped && !c.valid);
    }

    #[test]
    fn single_precision_ba() {
        let c = dmc_capacity_ba(&TransitionMatrix::bsc(0.11f32).unwrap(), 1e-6, 1000).unwrap();
        assert!(close(c.capacity as f64, 0.500_084, 1e-5));
    }
}
