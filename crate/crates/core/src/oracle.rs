//! Exhaustive search for the optimal space-terminated code on small inputs.
//!
//! A candidate code is a set `W` of `n` distinct non-empty k-ary strings of
//! length at most `max_len`. A string of `W` carries a space exactly when it
//! is a proper prefix of another member: dropping a forced space breaks the
//! prefix condition and adding an unforced one only costs length. The best
//! assignment of a set pairs its sorted total lengths with the sorted
//! probabilities, so only sets are enumerated, never permutations.
//!
//! Sets are visited in lexicographic order of their heap indices with a
//! branch-and-bound cutoff, so the first optimum found (the reported witness)
//! is the lexicographically smallest one and results do not depend on timing.

use std::collections::HashSet;

use crate::radix::{level_of, level_start, HeapIndex};
use crate::source_model::SourceDistribution;
use crate::space_code::{build_space_code, SpaceCodebook, SpaceCodeword};
use crate::{Error, Result};

/// Node budget used when none is given.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;

/// Improvements smaller than this are treated as ties.
const TIE_TOLERANCE: f64 = 1e-12;

/// Which string sets the search visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchSpace {
    /// Every set of distinct strings.
    #[default]
    AllSets,
    /// Only prefix-closed sets, where every proper non-empty prefix of a
    /// member is itself a member (and therefore carries a space).
    PrefixClosed,
}

/// Search configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub max_len: Option<u32>,
    pub node_budget: u64,
    pub space: SearchSpace,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            max_len: None,
            node_budget: DEFAULT_NODE_BUDGET,
            space: SearchSpace::AllSets,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub optimal_length: f64,
    pub witness: SpaceCodebook,
    /// Complete candidate sets that were scored.
    pub instances_searched: u64,
    pub nodes_visited: u64,
    pub max_len: u32,
}

/// Default length cap: one more than the longest optimal one-to-one codeword.
pub fn default_max_len(n: usize, k: u32) -> u32 {
    level_of(n as u64, k) + 1
}

impl Oracle {
    pub fn max_len(mut self, max_len: u32) -> Self {
        self.max_len = Some(max_len);
        self
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }

    pub fn search(mut self, space: SearchSpace) -> Self {
        self.space = space;
        self
    }

    pub fn run(&self, dist: &SourceDistribution) -> Result<OracleResult> {
        let n = dist.len();
        let k = dist.k();
        let max_len = self.max_len.unwrap_or_else(|| default_max_len(n, k));
        if max_len < level_of(n as u64, k) {
            return Err(Error::InvalidSpec(format!(
                "max_len {max_len} leaves fewer than {n} strings"
            )));
        }
        let candidates = level_start(max_len + 1, k) - 1;
        if candidates > u64::from(u32::MAX) {
            return Err(Error::BudgetExceeded { searched: 0 });
        }
        let mut search = Search::new(dist.probs(), k, candidates as usize, self);
        search.dfs(1)?;

        let mut strings: Vec<(u32, usize)> = search
            .best_set
            .iter()
            .map(|&(x, marked)| (search.level[x] + u32::from(marked), x))
            .collect();
        strings.sort_unstable();
        let marked: HashSet<usize> = search
            .best_set
            .iter()
            .filter(|(_, m)| *m)
            .map(|(x, _)| *x)
            .collect();
        let entries = strings
            .iter()
            .map(|&(_, x)| SpaceCodeword {
                digits: HeapIndex(x as u64).to_word(k),
                has_space: marked.contains(&x),
            })
            .collect();
        let witness = SpaceCodebook::new(entries, k)?;
        let optimal_length = witness.average_length(dist)?;
        Ok(OracleResult {
            optimal_length,
            witness,
            instances_searched: search.leaves,
            nodes_visited: search.nodes,
            max_len,
        })
    }
}

struct Search<'a> {
    probs: &'a [f64],
    k: usize,
    n: usize,
    candidates: usize,
    closed: bool,
    budget: u64,
    /// Indexed by heap index, `0..=candidates`.
    level: Vec<u32>,
    chosen: Vec<bool>,
    marked: Vec<bool>,
    picked: Vec<usize>,
    /// Chosen strings per current total length.
    count_by_len: Vec<usize>,
    best: f64,
    best_set: Vec<(usize, bool)>,
    nodes: u64,
    leaves: u64,
}

impl<'a> Search<'a> {
    fn new(probs: &'a [f64], k: u32, candidates: usize, cfg: &Oracle) -> Self {
        let level: Vec<u32> = (0..=candidates as u64).map(|x| level_of(x, k)).collect();
        let max_total = level[candidates] as usize + 2;
        Self {
            probs,
            k: k as usize,
            n: probs.len(),
            candidates,
            closed: cfg.space == SearchSpace::PrefixClosed,
            budget: cfg.node_budget,
            level,
            chosen: vec![false; candidates + 1],
            marked: vec![false; candidates + 1],
            picked: Vec::with_capacity(probs.len()),
            count_by_len: vec![0; max_total + 1],
            best: f64::INFINITY,
            best_set: Vec::new(),
            nodes: 0,
            leaves: 0,
        }
    }

    fn parent(&self, x: usize) -> usize {
        (x - 1) / self.k
    }

    /// Cost of pairing the current lengths, plus `extra` strings filled in
    /// radix order from `next`, with the probabilities in descending order.
    fn paired_cost(&self, next: usize, extra: usize) -> f64 {
        let mut counts = self.count_by_len.clone();
        let mut left = extra;
        let mut pos = next;
        while left > 0 {
            let lvl = self.level[pos];
            let level_end = (level_start(lvl + 1, self.k as u32) - 1) as usize;
            let take = left.min(level_end - pos + 1);
            counts[lvl as usize] += take;
            left -= take;
            pos = level_end + 1;
        }
        let mut cost = 0.0;
        let mut lengths = counts
            .iter()
            .enumerate()
            .flat_map(|(len, &c)| std::iter::repeat_n(len, c));
        for p in self.probs {
            cost += p * lengths.next().expect("exactly n lengths") as f64;
        }
        cost
    }

    fn choose(&mut self, x: usize) -> Vec<usize> {
        self.chosen[x] = true;
        self.picked.push(x);
        self.count_by_len[self.level[x] as usize] += 1;
        let mut newly_marked = Vec::new();
        let mut a = x;
        while a > 0 {
            a = self.parent(a);
            if a > 0 && self.chosen[a] && !self.marked[a] {
                self.marked[a] = true;
                let l = self.level[a] as usize;
                self.count_by_len[l] -= 1;
                self.count_by_len[l + 1] += 1;
                newly_marked.push(a);
            }
        }
        newly_marked
    }

    fn unchoose(&mut self, x: usize, newly_marked: Vec<usize>) {
        for a in newly_marked {
            self.marked[a] = false;
            let l = self.level[a] as usize;
            self.count_by_len[l + 1] -= 1;
            self.count_by_len[l] += 1;
        }
        self.count_by_len[self.level[x] as usize] -= 1;
        self.picked.pop();
        self.chosen[x] = false;
    }

    fn dfs(&mut self, next: usize) -> Result<()> {
        let remaining = self.n - self.picked.len();
        if remaining == 0 {
            self.leaves += 1;
            let cost = self.paired_cost(next, 0);
            if cost < self.best - TIE_TOLERANCE {
                self.best = cost;
                self.best_set = self.picked.iter().map(|&x| (x, self.marked[x])).collect();
            }
            return Ok(());
        }
        if next > self.candidates || self.candidates - next + 1 < remaining {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                searched: self.nodes,
            });
        }
        if self.paired_cost(next, remaining) >= self.best - TIE_TOLERANCE {
            return Ok(());
        }
        let parent = self.parent(next);
        if !self.closed || parent == 0 || self.chosen[parent] {
            let newly_marked = self.choose(next);
            let res = self.dfs(next + 1);
            self.unchoose(next, newly_marked);
            res?;
        }
        self.dfs(next + 1)
    }
}

/// Optimal space-terminated code over all string sets with lengths up to
/// `max_len` (default: longest one-to-one codeword plus one).
pub fn exact_optimum(dist: &SourceDistribution, max_len: Option<u32>) -> Result<OracleResult> {
    Oracle {
        max_len,
        ..Oracle::default()
    }
    .run(dist)
}

/// Average length of the linear-time construction minus the exact optimum.
pub fn gap_certificate(dist: &SourceDistribution) -> Result<f64> {
    let constructed = build_space_code(dist).average_length(dist)?;
    Ok(constructed - exact_optimum(dist, None)?.optimal_length)
}

/// True when the spaced codewords are exactly the proper non-empty prefixes
/// of codewords: every internal node of the code tree carries `w_` and no
/// space is attached to a leaf.
pub fn verify_lemma2_closure(code: &SpaceCodebook) -> bool {
    let mut prefixes = HashSet::new();
    for entry in code.entries() {
        let digits = entry.digits.digits();
        for end in 1..digits.len() {
            prefixes.insert(&digits[..end]);
        }
    }
    let spaced: HashSet<&[u8]> = code
        .entries()
        .iter()
        .filter(|c| c.has_space)
        .map(|c| c.digits.digits())
        .collect();
    spaced == prefixes
}
