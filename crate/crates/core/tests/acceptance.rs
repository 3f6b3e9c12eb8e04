//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::error::Error;
use std::time::Instant;

use dnastore_core::capacity::{
    binary_entropy, counting_t, counting_t_log2, counting_t_log_upper, coupon_tail_bound, dmc_capacity_ba,
    in_capacity_region, optimal_lambda, region_margin, tradeoff_point, TransitionMatrix, DEFAULT_BA_MAX_ITER,
    DEFAULT_BA_TOL,
};
use dnastore_core::channel::{ChannelOutput, ChannelParams, SamplingSpec};
use dnastore_core::codec::{short_molecule_decode, short_molecule_encode, Codec, CodecConfig, InnerCodeSpec, Message};
use dnastore_core::montecarlo::{
    coverage_fraction, records_to_jsonl, run_with_threads, verify_chernoff, verify_coupon_tail, ExperimentKind,
    ExperimentSpec,
};
use dnastore_core::rng::rng_from_seed;
use dnastore_core::BitString;
use num_bigint::BigUint;
use num_rational::Ratio;
use rand::seq::index::sample;
use rand::Rng;

type Outcome = Result<(bool, String), Box<dyn Error>>;
type Criterion = (&'static str, fn() -> Outcome);

// Tolerances and thresholds, one block per criterion.
const AC1_TOL: f64 = 1e-4;
const AC1_TARGETS: [(f64, f64); 3] = [(1.0, 0.6321), (2.0, 0.8647), (3.0, 0.9502)];
const AC2_RANGE: (f64, f64) = (9.16, 9.26);
const AC2_REL_RESIDUAL: f64 = 1e-6;
const AC3_POISSON_TOL: f64 = 0.005;
const AC3_BERNOULLI_TOL: f64 = 0.015;
const AC4_BRUTE_MAX: u64 = 6;
const AC4_BOUND_MAX: u64 = 50;
const AC5_RANDOM_FIVE: usize = 1000;
const AC6_MIN_SUCCESS: f64 = 0.99;
const AC7_MIN_SUCCESS: f64 = 0.95;
const AC8_LITERAL_BOUND: f64 = 0.01114;
const AC9_LITERAL_BOUND: f64 = 0.14941;
const AC10_TOL: f64 = 1e-6;
const AC11_MARGIN: (f64, f64) = (0.0075, 1e-4);
const AC12_POINTS: usize = 100;
const AC13_MIN_SUCCESS: f64 = 0.99;

const THREADS: usize = 8;

fn ac1() -> Outcome {
    let mut pass = true;
    let mut got = Vec::new();
    for (lambda, want) in AC1_TARGETS {
        let f = coverage_fraction(lambda, 5.0)?;
        pass &= (f - want).abs() < AC1_TOL;
        got.push(format!("{f:.6}"));
    }
    Ok((pass, format!("fractions {}", got.join(", "))))
}

fn ac2() -> Outcome {
    let q = 10_000.0;
    let l: f64 = optimal_lambda(q)?;
    let residual = (l.exp() - l - 1.0 - q).abs();
    let pass = (AC2_RANGE.0..=AC2_RANGE.1).contains(&l) && residual < AC2_REL_RESIDUAL * q;
    Ok((pass, format!("lambda* = {l:.10}, residual = {residual:.3e}")))
}

fn unseen_mean(channel: ChannelParams, trials: u64, seed: u64) -> Result<f64, Box<dyn Error>> {
    let spec = ExperimentSpec::new(ExperimentKind::EstimateQ0 { channel }, trials, seed);
    Ok(run_with_threads(&spec, THREADS)?.summary.mean)
}

fn ac3() -> Outcome {
    let poisson = ChannelParams::new(100_000, 2.0, 0.0, SamplingSpec::poisson(1.0)?)?;
    let bern = ChannelParams::new(10_000, 2.0, 0.0, SamplingSpec::bernoulli(0.3)?)?;
    let a = unseen_mean(poisson, 20, 301)?;
    let b = unseen_mean(bern, 20, 302)?;
    let e1 = (-1.0f64).exp();
    let pass = (a - e1).abs() <= AC3_POISSON_TOL && (b - 0.3).abs() <= AC3_BERNOULLI_TOL;
    Ok((
        pass,
        format!("poisson miss {a:.5} (target {e1:.5}), bernoulli miss {b:.5} (target 0.3)"),
    ))
}

fn enumerate(a: u64, b: u64) -> u64 {
    // Every vector in {0..=b}^a, counted when its entries sum to b.
    let base = b + 1;
    (0..base.pow(a as u32))
        .filter(|&code| {
            let mut c = code;
            let mut sum = 0;
            for _ in 0..a {
                sum += c % base;
                c /= base;
            }
            sum == b
        })
        .count() as u64
}

fn ac4() -> Outcome {
    let mut mismatches = 0;
    for a in 1..=AC4_BRUTE_MAX {
        for b in 1..=AC4_BRUTE_MAX {
            if counting_t(a, b) != BigUint::from(enumerate(a, b)) {
                mismatches += 1;
            }
        }
    }
    let mut violations = 0;
    for a in 1..=AC4_BOUND_MAX {
        for b in 1..=AC4_BOUND_MAX {
            if counting_t_log2(a, b) > counting_t_log_upper::<f64>(a, b) + 1e-9 {
                violations += 1;
            }
        }
    }
    Ok((
        mismatches == 0 && violations == 0,
        format!("{mismatches} enumeration mismatches, {violations} bound violations"),
    ))
}

fn ac5() -> Outcome {
    let cfg = CodecConfig::new(16, 8, InnerCodeSpec::Identity, 12)?;
    let codec = Codec::new(cfg.clone())?;
    let mut rng = rng_from_seed(505);
    let msg = Message::random(&cfg, &mut rng);
    let molecules = codec.encode(&msg)?.into_molecules();
    let decode_without = |drop: &[usize]| -> Result<Option<Message>, Box<dyn Error>> {
        let reads: Vec<BitString> = molecules
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, m)| m.clone())
            .collect();
        Ok(codec.decode(&ChannelOutput::new(8, reads)?)?.message)
    };
    let mut four = 0;
    let mut four_ok = 0;
    for mask in 0u32..1 << 16 {
        if mask.count_ones() != 4 {
            continue;
        }
        let drop: Vec<usize> = (0..16).filter(|i| mask >> i & 1 == 1).collect();
        four += 1;
        if decode_without(&drop)?.as_ref() == Some(&msg) {
            four_ok += 1;
        }
    }
    let mut five_failed = 0;
    for _ in 0..AC5_RANDOM_FIVE {
        let drop = sample(&mut rng, 16, 5).into_vec();
        if decode_without(&drop)?.is_none() {
            five_failed += 1;
        }
    }
    let pass = four == 1820 && four_ok == four && five_failed == AC5_RANDOM_FIVE;
    Ok((
        pass,
        format!("{four_ok}/{four} four-erasure patterns recovered, {five_failed}/{AC5_RANDOM_FIVE} five-erasure patterns failed"),
    ))
}

fn ac6_spec() -> Result<ExperimentSpec, Box<dyn Error>> {
    let codec = CodecConfig::new(256, 16, InnerCodeSpec::Identity, 230)?;
    let channel = ChannelParams::new(256, 2.0, 0.0, SamplingSpec::bernoulli(0.05)?)?;
    Ok(ExperimentSpec::new(
        ExperimentKind::DecodeSuccess { codec, channel },
        1000,
        606,
    ))
}

fn ac6() -> Outcome {
    let s = run_with_threads(&ac6_spec()?, THREADS)?.summary;
    let pass = s.mean >= AC6_MIN_SUCCESS && s.errors == 0;
    Ok((pass, format!("success {:.4} over {} trials", s.mean, s.trials)))
}

fn ac7_spec() -> Result<ExperimentSpec, Box<dyn Error>> {
    let codec = CodecConfig::new(16, 24, InnerCodeSpec::Repetition { r: 3 }, 12)?;
    let channel = ChannelParams::with_length(16, 24, 0.02, SamplingSpec::bernoulli(0.0)?)?;
    Ok(ExperimentSpec::new(
        ExperimentKind::DecodeSuccess { codec, channel },
        1000,
        707,
    ))
}

fn ac7() -> Outcome {
    let spec = ac7_spec()?;
    let ExperimentKind::DecodeSuccess { codec, .. } = &spec.kind else {
        unreachable!()
    };
    let rate = codec.achieved_rate_exact();
    let s = run_with_threads(&spec, THREADS)?.summary;
    let pass = s.mean >= AC7_MIN_SUCCESS && rate == Ratio::new(1, 8) && s.errors == 0;
    Ok((
        pass,
        format!(
            "reported success {:.4}, correct message {:.4}, undetected {}, rate {rate}",
            s.mean,
            s.correct_rate.unwrap_or(f64::NAN),
            s.undetected_errors.unwrap_or(0)
        ),
    ))
}

fn ac8() -> Outcome {
    let v = verify_chernoff(64, 0.05, 0.15, 100_000, 808)?;
    let pass = v.pass && v.empirical <= AC8_LITERAL_BOUND + 3.0 * v.stderr;
    Ok((
        pass,
        format!("empirical {:.5} +/- {:.5}, bound {:.6}", v.empirical, v.stderr, v.bound),
    ))
}

fn ac9() -> Outcome {
    let v = verify_coupon_tail(1000, 1.0, 0.1, 10_000, 909)?;
    let bound: f64 = coupon_tail_bound(1000, 1.0, 0.1)?;
    let pass = v.empirical <= AC9_LITERAL_BOUND && (bound - AC9_LITERAL_BOUND).abs() < 1e-5;
    Ok((pass, format!("empirical {:.5}, bound {bound:.6}", v.empirical)))
}

fn ac10() -> Outcome {
    let mut worst = 0.0f64;
    for p in [0.01, 0.11, 0.25] {
        let ba = dmc_capacity_ba(&TransitionMatrix::bsc(p)?, DEFAULT_BA_TOL, DEFAULT_BA_MAX_ITER)?;
        worst = worst.max((ba.capacity - (1.0 - binary_entropy(p)?)).abs());
    }
    Ok((worst < AC10_TOL, format!("max deviation {worst:.3e}")))
}

fn ac11() -> Outcome {
    let m1: f64 = region_margin(0.01, 2.35)?;
    let in1 = in_capacity_region(0.01, 2.35)?;
    let in2 = in_capacity_region(0.3, 100.0)?;
    let m3: f64 = region_margin(0.1, 6.4)?;
    let in3 = in_capacity_region(0.1, 6.4)?;
    let pass = in1 && (m1 - AC11_MARGIN.0).abs() < AC11_MARGIN.1 && !in2 && m3 < 0.0 && !in3;
    Ok((
        pass,
        format!("(0.01, 2.35) margin {m1:.6}; (0.3, 100) in region {in2}; (0.1, 6.4) margin {m3:.6} (outside)"),
    ))
}

fn ac12() -> Outcome {
    let mut rng = rng_from_seed(1212);
    let mut bad = 0;
    for _ in 0..AC12_POINTS {
        let lambda: f64 = rng.gen_range(0.01..20.0);
        let beta: f64 = rng.gen_range(1.001..50.0);
        let t = tradeoff_point(lambda, beta)?;
        let ulp = f64::EPSILON * t.rs_max.abs();
        if (t.rs_max - lambda * t.rr_max).abs() > ulp || t.rs_max >= 1.0 - 1.0 / beta {
            bad += 1;
        }
    }
    Ok((
        bad == 0,
        format!("{bad}/{AC12_POINTS} points violate the identity or bound"),
    ))
}

fn ac13_spec() -> Result<ExperimentSpec, Box<dyn Error>> {
    let channel = ChannelParams::with_length(64, 4, 0.0, SamplingSpec::poisson(1.0)?)?;
    Ok(ExperimentSpec::new(
        ExperimentKind::ShortMolecule { channel },
        10_000,
        1313,
    ))
}

fn ac13() -> Outcome {
    let s = run_with_threads(&ac13_spec()?, THREADS)?.summary;
    let bits = BitString::from_bools((0..8).map(|i| i % 3 == 0));
    let set = short_molecule_encode(&bits, 64, 4)?;
    let out = ChannelOutput::new(4, set.into_molecules())?;
    let payload = short_molecule_decode(&out, 4)?.bits.len();
    let pass = s.mean >= AC13_MIN_SUCCESS && payload == 8 && s.errors == 0;
    Ok((pass, format!("full recovery {:.4}, payload {payload} bits", s.mean)))
}

fn ac14() -> Outcome {
    let mut mismatched = Vec::new();
    for (name, spec) in [("ac6", ac6_spec()?), ("ac7", ac7_spec()?), ("ac13", ac13_spec()?)] {
        let one = records_to_jsonl(&run_with_threads(&spec, 1)?.records);
        let many = records_to_jsonl(&run_with_threads(&spec, THREADS)?.records);
        if one != many {
            mismatched.push(name);
        }
    }
    Ok((
        mismatched.is_empty(),
        format!("JSON-lines at 1 vs {THREADS} threads; mismatched runs: {mismatched:?}"),
    ))
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("coverage fractions", ac1),
        ("cost-optimal coverage", ac2),
        ("unseen-fraction concentration", ac3),
        ("counting oracle", ac4),
        ("MDS erasure exhaustive", ac5),
        ("end-to-end erasure channel", ac6),
        ("end-to-end noisy channel", ac7),
        ("Chernoff read-error bound", ac8),
        ("coupon tail bound", ac9),
        ("Blahut-Arimoto agreement", ac10),
        ("region checks", ac11),
        ("tradeoff identity", ac12),
        ("short-molecule scheme", ac13),
        ("reproducibility across thread counts", ac14),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        let secs = start.elapsed().as_secs_f64();
        println!(
            "AC{:02} {:<38} {}  {detail} [{secs:.2}s]",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" }
        );
        if !pass {
            failed += 1;
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
