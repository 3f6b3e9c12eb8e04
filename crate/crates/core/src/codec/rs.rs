//! Systematic Reed–Solomon erasure code over GF(2^w).
//!
//! Symbol `i` of a codeword is the value at `x = i` of the unique polynomial
//! of degree `< k` through the data points `(0, d_0) .. (k-1, d_{k-1})`, so
//! the first `k` symbols are the data. Any `k` surviving symbols determine
//! the polynomial again by Lagrange interpolation.

use super::gf::GaloisField;
use super::CodecError;

#[derive(Debug, Clone)]
pub struct ReedSolomon {
    field: &'static GaloisField,
    n: usize,
    k: usize,
    /// `parity[i][j]` = `L_j(k + i)` for the data-point Lagrange basis.
    parity: Vec<Vec<u16>>,
}

impl ReedSolomon {
    pub fn new(n: usize, k: usize, width: u32) -> Result<Self, CodecError> {
        let field = GaloisField::get(width);
        if k == 0 || k > n {
            return Err(CodecError::Config(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
        }
        if n > field.size() {
            return Err(CodecError::Config(format!(
                "n = {n} exceeds the {} evaluation points of GF(2^{width})",
                field.size()
            )));
        }
        let points: Vec<u16> = (0..k as u16).collect();
        let weights = barycentric_weights(field, &points);
        let parity = (k..n)
            .map(|t| lagrange_row(field, &points, &weights, t as u16))
            .collect();
        Ok(Self { field, n, k, parity })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn width(&self) -> u32 {
        self.field.width()
    }

    pub fn encode(&self, data: &[u16]) -> Vec<u16> {
        assert_eq!(data.len(), self.k, "expected {} data symbols", self.k);
        let f = self.field;
        let mut out = data.to_vec();
        for row in &self.parity {
            out.push(row.iter().zip(data).fold(0, |acc, (&c, &d)| f.add(acc, f.mul(c, d))));
        }
        out
    }

    /// Recovers the `k` data symbols from a word with `None` at erased
    /// positions.
    pub fn decode(&self, received: &[Option<u16>]) -> Result<Vec<u16>, CodecError> {
        assert_eq!(received.len(), self.n, "expected {} symbols", self.n);
        let known: Vec<(u16, u16)> = received
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|v| (i as u16, v)))
            .take(self.k)
            .collect();
        if known.len() < self.k {
            return Err(CodecError::TooManyErasures {
                erasures: self.n - received.iter().filter(|s| s.is_some()).count(),
                max: self.n - self.k,
            });
        }
        let missing: Vec<usize> = (0..self.k).filter(|&i| received[i].is_none()).collect();
        let mut data: Vec<u16> = received[..self.k].iter().map(|s| s.unwrap_or(0)).collect();
        if missing.is_empty() {
            return Ok(data);
        }
        let f = self.field;
        let points: Vec<u16> = known.iter().map(|&(x, _)| x).collect();
        let weights = barycentric_weights(f, &points);
        for t in missing {
            let basis = lagrange_row(f, &points, &weights, t as u16);
            data[t] = basis
                .iter()
                .zip(&known)
                .fold(0, |acc, (&c, &(_, y))| f.add(acc, f.mul(c, y)));
        }
        Ok(data)
    }
}

/// `w_j = 1 / prod_{m != j} (x_j - x_m)`.
fn barycentric_weights(f: &GaloisField, points: &[u16]) -> Vec<u16> {
    points
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let denom = points
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != j)
                .fold(1, |acc, (_, &xm)| f.mul(acc, f.add(xj, xm)));
            f.inv(denom)
        })
        .collect()
}

/// Lagrange basis values `L_j(t)` for a `t` outside `points`.
fn lagrange_row(f: &GaloisField, points: &[u16], weights: &[u16], t: u16) -> Vec<u16> {
    let ell = points.iter().fold(1, |acc, &xm| f.mul(acc, f.add(t, xm)));
    points
        .iter()
        .zip(weights)
        .map(|(&xj, &wj)| f.div(f.mul(ell, wj), f.add(t, xj)))
        .collect()
}
