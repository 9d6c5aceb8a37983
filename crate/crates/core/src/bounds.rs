//! Entropy bounds on the optimal one-to-one lengths `L_eps` and `L_plus` and
//! on the optimal space-terminated length `L(C)`, collected into a
//! [`BoundsReport`].
//!
//! Every bound is evaluated numerically in the base of the code alphabet.
//! Degenerate inputs (a point mass, `p1 = 1`) use the continuous limit of
//! each expression so that no bound is ever `NaN`.

use std::fmt;

use serde::Serialize;

use crate::radix::{epsilon_gap_exact, epsilon_gap_printed, optimal_lengths};
use crate::source_model::{binary_entropy_unchecked, log_k, total, SourceDistribution};
use crate::space_code::{build_space_code, internal_node_count};

/// Which upper bound on `L_eps` (and lower bound derived from it) to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refinement {
    /// Entropy and alphabet size only.
    Plain,
    /// Also uses the largest probability `p1`.
    MaxMass,
}

/// How the space term of an upper bound on `L(C)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceTerm {
    /// Probabilities of the symbols the construction actually marks.
    Exact,
    /// The `ceil(n/k) - 1` largest probabilities.
    Loose,
}

/// `f(a) = H - a log_k(1 + 1/a) - log_k(a + 1)`, the shared shape of the
/// lower bounds on `L_eps`; `a` is an upper bound on `L_eps`.
fn lower_from_upper(h: f64, a: f64, k: u32) -> f64 {
    if a <= 0.0 {
        // a log(1 + 1/a) -> 0 and log(a + 1) -> 0 as a -> 0.
        return h;
    }
    h - a * log_k(1.0 + 1.0 / a, k) - log_k(a + 1.0, k)
}

/// Strict lower bound on `L_eps` from the entropy alone.
///
/// `h` is the entropy in base `k`. At `h = 0, k = 2` the expression is an
/// indeterminate limit and the true value `L_eps = 0` is returned.
pub fn lb_eps_plain(h: f64, k: u32) -> f64 {
    let a = h + log_k(f64::from(k - 1), k);
    if a <= 0.0 {
        return 0.0;
    }
    lower_from_upper(h, a, k)
}

/// Lower bound on `L_eps` using `p1`; branch `p1 <= 0.5` or `p1 > 0.5`.
pub fn lb_eps_p1(dist: &SourceDistribution) -> f64 {
    let p1 = dist.p1();
    if p1 >= 1.0 {
        return 0.0;
    }
    let k = dist.k();
    let h = dist.entropy_k();
    let log_k1 = log_k(f64::from(k - 1), k);
    let a = if p1 <= 0.5 {
        h - p1 * log_k(1.0 / p1, k) + (1.0 - p1) * log_k1
    } else {
        h - binary_entropy_unchecked(p1, k) + (1.0 - p1) * (1.0 + log_k1)
    };
    let kn = f64::from(k) * dist.len() as f64;
    let tail = (1.0 / kn).powf(log_k(1.0 + 1.0 / (1.0 - p1), k));
    lower_from_upper(h, a, k) - log_k(1.0 - tail, k)
}

/// `H + log_k(k - 1)`, an upper bound on `L_eps`.
pub fn ub_eps_plain(h: f64, k: u32) -> f64 {
    h + log_k(f64::from(k - 1), k)
}

/// Upper bound on `L_eps` using `p1`.
pub fn ub_eps_p1(dist: &SourceDistribution) -> f64 {
    let p1 = dist.p1();
    let k = dist.k();
    let h = dist.entropy_k();
    if p1 <= 0.5 {
        h - p1 * log_k(1.0 / p1, k) + (1.0 - p1) * log_k(f64::from(k - 1), k)
    } else {
        h - binary_entropy_unchecked(p1, k) + (1.0 - p1) * log_k(2.0 * f64::from(k - 1), k)
    }
}

fn smallest_sum(dist: &SourceDistribution, count: usize) -> f64 {
    total(dist.probs().iter().rev().take(count))
}

fn largest_sum(dist: &SourceDistribution, count: usize) -> f64 {
    total(dist.probs().iter().take(count))
}

/// `L_plus + sum of the ceil(n/k) - 1 smallest probabilities`, a lower bound
/// on the optimal space-terminated length.
pub fn lb_space(dist: &SourceDistribution, l_plus: f64) -> f64 {
    l_plus + smallest_sum(dist, internal_node_count(dist.len(), dist.k()))
}

/// Entropy lower bound on the optimal space-terminated length.
pub fn theorem_lb_space(dist: &SourceDistribution, refinement: Refinement) -> f64 {
    let lb_eps = match refinement {
        Refinement::Plain => lb_eps_plain(dist.entropy_k(), dist.k()),
        Refinement::MaxMass => lb_eps_p1(dist),
    };
    lb_eps + smallest_sum(dist, internal_node_count(dist.len(), dist.k())) + epsilon_gap_exact(dist)
}

/// Entropy upper bound on the optimal space-terminated length.
pub fn theorem_ub_space(dist: &SourceDistribution, refinement: Refinement, term: SpaceTerm) -> f64 {
    let ub_eps = match refinement {
        Refinement::Plain => ub_eps_plain(dist.entropy_k(), dist.k()),
        Refinement::MaxMass => ub_eps_p1(dist),
    };
    let spaces = match term {
        SpaceTerm::Exact => marked_sum(dist),
        SpaceTerm::Loose => largest_sum(dist, internal_node_count(dist.len(), dist.k())),
    };
    ub_eps + epsilon_gap_exact(dist) + spaces
}

fn marked_sum(dist: &SourceDistribution) -> f64 {
    total(
        build_space_code(dist)
            .entries()
            .iter()
            .zip(dist.probs())
            .filter(|(c, _)| c.has_space)
            .map(|(_, p)| p),
    )
}

/// Upper bound on how much longer the optimal space-terminated code is than
/// an unrestricted optimal code over `k + 1` letters:
/// `H_k (1 - 1/log_k(k + 1)) + 1`.
pub fn remark_gap_bound(dist: &SourceDistribution) -> f64 {
    let k = dist.k();
    dist.entropy_k() * (1.0 - 1.0 / log_k(f64::from(k + 1), k)) + 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormulaId {
    #[serde(rename = "lb_eps_plain")]
    LbEpsPlain,
    #[serde(rename = "lb_eps_p1")]
    LbEpsP1,
    #[serde(rename = "ub_eps_plain")]
    UbEpsPlain,
    #[serde(rename = "ub_eps_p1")]
    UbEpsP1,
    #[serde(rename = "lb_space")]
    LbSpace,
    #[serde(rename = "th_lb_plain")]
    ThLbPlain,
    #[serde(rename = "th_lb_p1")]
    ThLbP1,
    #[serde(rename = "th_ub_plain_exact")]
    ThUbPlainExact,
    #[serde(rename = "th_ub_plain_loose")]
    ThUbPlainLoose,
    #[serde(rename = "th_ub_p1")]
    ThUbP1,
    #[serde(rename = "remark_gap")]
    RemarkGap,
    #[serde(rename = "L_plus")]
    LPlus,
    #[serde(rename = "L_eps")]
    LEps,
    #[serde(rename = "L_space_constructed")]
    LSpaceConstructed,
    #[serde(rename = "eps_gap_exact")]
    EpsGapExact,
    #[serde(rename = "eps_gap_printed")]
    EpsGapPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
    /// A computed length, not a bound.
    Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Target {
    #[serde(rename = "L_eps")]
    LEps,
    #[serde(rename = "L_plus")]
    LPlus,
    #[serde(rename = "L_space")]
    LSpace,
    /// `L(C_space) - L(C_unrestricted)`.
    #[serde(rename = "space_overhead")]
    SpaceOverhead,
    /// `L_plus - L_eps`.
    #[serde(rename = "eps_gap")]
    EpsGap,
}

/// Displays a unit variant by its serialized name.
fn serialized_name<T: Serialize>(value: &T, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => f.write_str(&s),
        _ => Err(fmt::Error),
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        serialized_name(self, f)
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        serialized_name(self, f)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        serialized_name(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundRecord {
    pub formula_id: FormulaId,
    pub kind: BoundKind,
    pub target: Target,
    pub value: f64,
    /// Whether the printed inequality is strict.
    pub strict: bool,
}

/// Every bound and reference length for one distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub k: u32,
    pub entropy: f64,
    pub p1: f64,
    pub records: Vec<BoundRecord>,
    /// The closed-form and exact `L_plus - L_eps` differ.
    pub eps_gap_disagreement: bool,
}

impl BoundsReport {
    pub fn get(&self, id: FormulaId) -> f64 {
        self.records
            .iter()
            .find(|r| r.formula_id == id)
            .map(|r| r.value)
            .expect("every formula is present in a full report")
    }

    /// Pairs `(lower, upper)` on the same target with `lower > upper + tol`,
    /// treating computed values as both.
    pub fn sandwich_violations(&self, tol: f64) -> Vec<(FormulaId, FormulaId)> {
        let mut out = Vec::new();
        for lo in self.records.iter().filter(|r| r.kind != BoundKind::Upper) {
            for hi in self.records.iter().filter(|r| r.kind != BoundKind::Lower) {
                if lo.target == hi.target
                    && !(lo.kind == BoundKind::Value && hi.kind == BoundKind::Value)
                    && lo.value > hi.value + tol
                {
                    out.push((lo.formula_id, hi.formula_id));
                }
            }
        }
        out
    }
}

/// Evaluates every bound for `dist`.
pub fn full_report(dist: &SourceDistribution) -> BoundsReport {
    use BoundKind::*;
    use FormulaId::*;

    let k = dist.k();
    let h = dist.entropy_k();
    let (l_plus, l_eps) = optimal_lengths(dist);
    let l_space = build_space_code(dist)
        .average_length(dist)
        .expect("constructed code matches its distribution");
    let gap_exact = epsilon_gap_exact(dist);
    let gap_printed = epsilon_gap_printed(dist);

    let rec = |formula_id, kind, target, value, strict| BoundRecord {
        formula_id,
        kind,
        target,
        value,
        strict,
    };
    let records = vec![
        rec(LbEpsPlain, Lower, Target::LEps, lb_eps_plain(h, k), true),
        rec(LbEpsP1, Lower, Target::LEps, lb_eps_p1(dist), false),
        rec(UbEpsPlain, Upper, Target::LEps, ub_eps_plain(h, k), false),
        rec(UbEpsP1, Upper, Target::LEps, ub_eps_p1(dist), false),
        rec(
            LbSpace,
            Lower,
            Target::LSpace,
            lb_space(dist, l_plus),
            false,
        ),
        rec(
            ThLbPlain,
            Lower,
            Target::LSpace,
            theorem_lb_space(dist, Refinement::Plain),
            true,
        ),
        rec(
            ThLbP1,
            Lower,
            Target::LSpace,
            theorem_lb_space(dist, Refinement::MaxMass),
            false,
        ),
        rec(
            ThUbPlainExact,
            Upper,
            Target::LSpace,
            theorem_ub_space(dist, Refinement::Plain, SpaceTerm::Exact),
            false,
        ),
        rec(
            ThUbPlainLoose,
            Upper,
            Target::LSpace,
            theorem_ub_space(dist, Refinement::Plain, SpaceTerm::Loose),
            false,
        ),
        rec(
            ThUbP1,
            Upper,
            Target::LSpace,
            theorem_ub_space(dist, Refinement::MaxMass, SpaceTerm::Loose),
            false,
        ),
        rec(
            RemarkGap,
            Upper,
            Target::SpaceOverhead,
            remark_gap_bound(dist),
            true,
        ),
        rec(LPlus, Value, Target::LPlus, l_plus, false),
        rec(LEps, Value, Target::LEps, l_eps, false),
        rec(LSpaceConstructed, Value, Target::LSpace, l_space, false),
        rec(EpsGapExact, Value, Target::EpsGap, gap_exact, false),
        rec(EpsGapPrinted, Value, Target::EpsGap, gap_printed, false),
    ];
    BoundsReport {
        n: dist.len(),
        k,
        entropy: h,
        p1: dist.p1(),
        records,
        eps_gap_disagreement: (gap_exact - gap_printed).abs() > 1e-12,
    }
}
