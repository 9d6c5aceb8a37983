//! Parametric source families, the unrestricted `(k+1)`-ary Huffman baseline
//! and a deterministic comparison table over many trials.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{self, Refinement, SpaceTerm};
use crate::format::round_sig;
use crate::oracle::Oracle;
use crate::radix::optimal_lengths;
use crate::source_model::SourceDistribution;
use crate::space_code::build_space_code;
use crate::{Error, Result};

/// Column order of the CSV table.
pub const CSV_HEADER: [&str; 19] = [
    "trial",
    "family",
    "param",
    "n",
    "k",
    "H_k",
    "L_plus",
    "L_eps",
    "L_space",
    "oracle_opt",
    "huffman_kplus1",
    "lb_space",
    "th_lb_plain",
    "th_lb_p1",
    "ub_th_plain_exact",
    "ub_th_plain_loose",
    "ub_th_p1",
    "remark_gap",
    "gap_cert",
];

/// Significant digits written to CSV cells.
pub const CSV_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `p_i ∝ i^(-param)`, `param >= 0`.
    Zipf,
    /// `p_i ∝ (1 - param) param^(i-1)`, `0 < param < 1`.
    Geometric,
    /// `p_i = 1/n`; the parameter is ignored.
    Uniform,
    /// Fixed weights, e.g. loaded from a distribution file.
    Custom(Vec<f64>),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Zipf => "zipf",
            Family::Geometric => "geometric",
            Family::Uniform => "uniform",
            Family::Custom(_) => "custom",
        }
    }
}

/// Unnormalized weights of a family.
pub fn family_weights(family: &Family, n: usize, param: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidSpec("n must be at least 1".into()));
    }
    match family {
        Family::Zipf => {
            if !(param >= 0.0 && param.is_finite()) {
                return Err(Error::InvalidSpec(format!(
                    "zipf parameter {param} must be >= 0"
                )));
            }
            Ok((1..=n).map(|i| (i as f64).powf(-param)).collect())
        }
        Family::Geometric => {
            if !(param > 0.0 && param < 1.0) {
                return Err(Error::InvalidSpec(format!(
                    "geometric parameter {param} must lie in (0, 1)"
                )));
            }
            Ok((0..n)
                .map(|i| (1.0 - param) * param.powi(i as i32))
                .collect())
        }
        Family::Uniform => Ok(vec![1.0; n]),
        Family::Custom(weights) if weights.len() == n => Ok(weights.clone()),
        Family::Custom(weights) => Err(Error::InvalidSpec(format!(
            "custom distribution has {} weights but n = {n}",
            weights.len()
        ))),
    }
}

/// Normalized distribution of a family. The seed only matters once a
/// perturbation is applied, see [`perturb`].
pub fn generate(family: &Family, n: usize, k: u32, param: f64) -> Result<SourceDistribution> {
    let weights = family_weights(family, n, param)?;
    SourceDistribution::normalize(&weights, k).map_err(|e| underflow(e, family))
}

/// Multiplies each weight by an independent factor in `[1 - amount, 1 + amount)`
/// drawn from a ChaCha stream seeded with `seed`.
pub fn perturb(weights: &mut [f64], amount: f64, seed: u64) -> Result<()> {
    if !(0.0..1.0).contains(&amount) {
        return Err(Error::InvalidSpec(format!(
            "perturbation {amount} must lie in [0, 1)"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for w in weights {
        *w *= 1.0 + amount * rng.random_range(-1.0..1.0);
    }
    Ok(())
}

fn underflow(e: Error, family: &Family) -> Error {
    match e {
        Error::InvalidProbability(_) | Error::InvalidDistribution(_) => {
            Error::InvalidSpec(format!(
                "{} weights are not a valid distribution: {e}",
                family.name()
            ))
        }
        other => other,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Weight(u64);

impl Weight {
    /// Order-preserving key for non-negative finite weights.
    fn new(w: f64) -> Self {
        Weight(w.to_bits())
    }

    fn get(self) -> f64 {
        f64::from_bits(self.0)
    }
}

/// Average length of an optimal unrestricted prefix code over `k + 1`
/// letters. Zero-weight dummies are added until `(n - 1) mod k == 0`; each
/// step merges the `k + 1` lightest nodes, earliest-created first on ties.
/// A single symbol gets one codeword of length 1.
pub fn huffman_kplus1(dist: &SourceDistribution) -> f64 {
    let n = dist.len();
    let k = dist.k() as usize;
    if n == 1 {
        return 1.0;
    }
    let dummies = (k - (n - 1) % k) % k;
    let mut heap: BinaryHeap<Reverse<(Weight, usize)>> = std::iter::repeat_n(0.0, dummies)
        .chain(dist.probs().iter().copied())
        .enumerate()
        .map(|(id, w)| Reverse((Weight::new(w), id)))
        .collect();
    let mut next_id = heap.len();
    let mut total = 0.0;
    while heap.len() > 1 {
        let merged: f64 = (0..=k)
            .filter_map(|_| heap.pop())
            .map(|Reverse((w, _))| w.get())
            .sum();
        total += merged;
        heap.push(Reverse((Weight::new(merged), next_id)));
        next_id += 1;
    }
    total
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    pub family: Family,
    pub n: usize,
    pub k: u32,
    pub param: f64,
    pub seed: u64,
    pub trials: usize,
    /// Relative multiplicative noise per weight; 0 disables it and makes all
    /// trials identical.
    pub perturbation: f64,
    /// The oracle runs only for `n` up to this size.
    pub oracle_max_n: usize,
    pub oracle_budget: u64,
}

impl Default for BenchSpec {
    fn default() -> Self {
        Self {
            family: Family::Zipf,
            n: 10,
            k: 2,
            param: 1.0,
            seed: 0,
            trials: 1,
            perturbation: 0.0,
            oracle_max_n: 8,
            oracle_budget: crate::oracle::DEFAULT_NODE_BUDGET,
        }
    }
}

impl BenchSpec {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidSpec("trials must be at least 1".into()));
        }
        if !(2..=crate::source_model::MAX_ALPHABET).contains(&self.k) {
            return Err(Error::InvalidAlphabet(self.k));
        }
        family_weights(&self.family, self.n, self.param)?;
        Ok(())
    }

    /// Distribution of trial `trial`.
    pub fn distribution(&self, trial: usize) -> Result<SourceDistribution> {
        if self.perturbation == 0.0 {
            return generate(&self.family, self.n, self.k, self.param);
        }
        let mut weights = family_weights(&self.family, self.n, self.param)?;
        perturb(
            &mut weights,
            self.perturbation,
            self.seed.wrapping_add(trial as u64),
        )?;
        SourceDistribution::normalize(&weights, self.k).map_err(|e| underflow(e, &self.family))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub trial: usize,
    pub family: &'static str,
    pub param: f64,
    pub n: usize,
    pub k: u32,
    pub h_k: f64,
    pub l_plus: f64,
    pub l_eps: f64,
    pub l_space: f64,
    pub spaces: usize,
    pub oracle_opt: Option<f64>,
    pub huffman_kplus1: f64,
    pub lb_space: f64,
    pub th_lb_plain: f64,
    pub th_lb_p1: f64,
    pub ub_th_plain_exact: f64,
    pub ub_th_plain_loose: f64,
    pub ub_th_p1: f64,
    pub remark_gap: f64,
    /// `L_space - oracle_opt` when the oracle ran.
    pub gap_cert: Option<f64>,
}

impl BenchRow {
    /// `L_space - huffman_kplus1`, the measured cost of the space restriction.
    pub fn space_overhead(&self) -> f64 {
        self.l_space - self.huffman_kplus1
    }

    fn csv_record(&self) -> Vec<String> {
        let num = |x: f64| round_sig(x, CSV_DIGITS).to_string();
        let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
        vec![
            self.trial.to_string(),
            self.family.to_string(),
            num(self.param),
            self.n.to_string(),
            self.k.to_string(),
            num(self.h_k),
            num(self.l_plus),
            num(self.l_eps),
            num(self.l_space),
            opt(self.oracle_opt),
            num(self.huffman_kplus1),
            num(self.lb_space),
            num(self.th_lb_plain),
            num(self.th_lb_p1),
            num(self.ub_th_plain_exact),
            num(self.ub_th_plain_loose),
            num(self.ub_th_p1),
            num(self.remark_gap),
            opt(self.gap_cert),
        ]
    }
}

/// Runs every stage for one distribution.
pub fn evaluate(dist: &SourceDistribution, spec: &BenchSpec, trial: usize) -> Result<BenchRow> {
    let code = build_space_code(dist);
    let l_space = code.average_length(dist)?;
    let (l_plus, l_eps) = optimal_lengths(dist);
    let oracle_opt = if dist.len() <= spec.oracle_max_n {
        Some(
            Oracle::default()
                .budget(spec.oracle_budget)
                .run(dist)?
                .optimal_length,
        )
    } else {
        None
    };
    Ok(BenchRow {
        trial,
        family: spec.family.name(),
        param: spec.param,
        n: dist.len(),
        k: dist.k(),
        h_k: dist.entropy_k(),
        l_plus,
        l_eps,
        l_space,
        spaces: code.space_count(),
        oracle_opt,
        huffman_kplus1: huffman_kplus1(dist),
        lb_space: bounds::lb_space(dist, l_plus),
        th_lb_plain: bounds::theorem_lb_space(dist, Refinement::Plain),
        th_lb_p1: bounds::theorem_lb_space(dist, Refinement::MaxMass),
        ub_th_plain_exact: bounds::theorem_ub_space(dist, Refinement::Plain, SpaceTerm::Exact),
        ub_th_plain_loose: bounds::theorem_ub_space(dist, Refinement::Plain, SpaceTerm::Loose),
        ub_th_p1: bounds::theorem_ub_space(dist, Refinement::MaxMass, SpaceTerm::Loose),
        remark_gap: bounds::remark_gap_bound(dist),
        gap_cert: oracle_opt.map(|opt| l_space - opt),
    })
}

/// Runs all trials in parallel; rows come back in trial order.
pub fn run(spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    spec.validate()?;
    (0..spec.trials)
        .into_par_iter()
        .map(|trial| evaluate(&spec.distribution(trial)?, spec, trial))
        .collect()
}

/// Writes the header and one line per row.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    writer.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        writer.write_record(row.csv_record()).map_err(io)?;
    }
    writer.flush().map_err(|e| Error::Io(e.to_string()))
}
