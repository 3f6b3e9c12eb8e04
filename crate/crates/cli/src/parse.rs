//! Value parsers for the compact flag syntaxes.

use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use dnastore_core::channel::SamplingSpec;
use dnastore_core::codec::InnerCodeSpec;
use dnastore_core::TransitionMatrix;

/// `a:b:step` (inclusive of `b` up to rounding) or a comma list.
pub fn grid(text: &str) -> Result<Vec<f64>> {
    let values = if text.contains(':') {
        let parts: Vec<f64> = text
            .split(':')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("bad grid {text:?}"))?;
        let [start, stop, step] = parts[..] else {
            bail!("grid {text:?} must be start:stop:step");
        };
        if !step.is_finite() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
            bail!("grid {text:?} needs step > 0 and stop >= start");
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        (0..=n).map(|i| round12(start + i as f64 * step)).collect()
    } else {
        text.split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .with_context(|| format!("bad grid {text:?}"))?
    };
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        bail!("grid {text:?} must hold finite numbers");
    }
    Ok(values)
}

// Strips the accumulated representation error of `start + i * step`.
fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// `bernoulli:<q>`, `poisson:<lambda>` or `pcr:<lambda>,<alpha>`.
pub fn sampling(text: &str) -> Result<SamplingSpec> {
    let (model, args) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("sampling {text:?} must be model:params"))?;
    let nums: Vec<f64> = args
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad sampling parameters in {text:?}"))?;
    Ok(match (model, nums.as_slice()) {
        ("bernoulli", [q]) => SamplingSpec::bernoulli(*q)?,
        ("poisson", [lambda]) => SamplingSpec::poisson(*lambda)?,
        ("pcr", [lambda, alpha]) => SamplingSpec::poisson_pcr(*lambda, *alpha)?,
        _ => bail!("unknown sampling {text:?}; use bernoulli:<q>, poisson:<lambda> or pcr:<lambda>,<alpha>"),
    })
}

/// `identity`, `rep:<r>` or `table:<k>[:<seed>]`.
pub fn inner(text: &str) -> Result<InnerCodeSpec> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| {
        s.parse::<u64>()
            .with_context(|| format!("bad number in inner code {text:?}"))
    };
    Ok(match parts.as_slice() {
        ["identity"] => InnerCodeSpec::Identity,
        ["rep", r] => InnerCodeSpec::Repetition { r: num(r)? as usize },
        ["table", k] => InnerCodeSpec::TableMl {
            k_info: num(k)? as usize,
            seed: 0,
        },
        ["table", k, seed] => InnerCodeSpec::TableMl {
            k_info: num(k)? as usize,
            seed: num(seed)?,
        },
        _ => bail!("unknown inner code {text:?}; use identity, rep:<r> or table:<k>[:<seed>]"),
    })
}

/// `bsc:<p>` or `file:<path>` holding whitespace-separated rows.
pub fn matrix(text: &str) -> Result<TransitionMatrix> {
    if let Some(p) = text.strip_prefix("bsc:") {
        let p: f64 = p.parse().with_context(|| format!("bad crossover in {text:?}"))?;
        return Ok(TransitionMatrix::bsc(p)?);
    }
    if let Some(path) = text.strip_prefix("file:") {
        let body = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        return Ok(body.parse()?);
    }
    bail!("matrix {text:?} must be bsc:<p> or file:<path>")
}
