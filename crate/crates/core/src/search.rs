// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Exact values of `f_k(n, H)` for tiny `n` by branch and bound.
//!
//! Edges are coloured in lexicographic order. The edges at vertex 0 are
//! pre-coloured `0..n-1` and a colour id may only be introduced once every
//! smaller id is in use, which removes colour relabellings. Every copy of
//! `H` is registered with the edge that completes it; when that edge is
//! coloured the copy joins the bucket of its packed colour signature, and
//! the branch dies if the bucket then holds `k` pairwise disjoint copies.
//!
//! The top of the tree is expanded into a frontier that rayon explores in
//! parallel. A witness is reported from the earliest frontier item that has
//! one, so the witness is the lexicographically least colouring whatever
//! the thread count.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::colouring::{pair_index, EdgeColouring};
use crate::constructors::additive_colouring;
use crate::error::{Error, Result};
use crate::graph::{PatternGraph, PreparedPattern};
use crate::packing::NodeBudget;
use crate::verifier::enumerate::all_copies;
use crate::verifier::{check_proper, find_repeats, DetectionMode};

/// Largest host handled by the exact search.
pub const SEARCH_MAX_HOST: usize = 10;
/// Largest pattern handled by the exact search.
pub const SEARCH_MAX_PATTERN: usize = 5;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Total node budget; `None` for unlimited.
    pub node_budget: Option<u64>,
    /// Worker threads; `0` uses the global rayon pool.
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Avoidability {
    /// A proper colouring with exactly the requested number of colours and
    /// no `k`-repeat.
    Witness(EdgeColouring),
    /// The whole search space was refuted.
    Refuted,
    /// The node budget ran out first.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidResult {
    pub outcome: Avoidability,
    pub nodes: u64,
}

struct CopyInfo {
    edges: Vec<usize>,
    mask: u16,
}

struct Problem<'a> {
    n: usize,
    k: usize,
    target: usize,
    edges: Vec<(usize, usize)>,
    prep: &'a PreparedPattern,
    /// Copies indexed by the lexicographically last of their edges.
    completes: Vec<Vec<CopyInfo>>,
    budget: &'a NodeBudget,
}

#[derive(Clone)]
struct Node {
    colours: Vec<u8>,
    at_vertex: Vec<u64>,
    used: usize,
    buckets: HashMap<u64, Vec<u16>>,
}

enum Step {
    Found(Vec<u8>),
    Exhausted,
    OutOfBudget,
    Abandoned,
}

impl Problem<'_> {
    fn new<'a>(n: usize, prep: &'a PreparedPattern, k: usize, target: usize, budget: &'a NodeBudget) -> Problem<'a> {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut completes: Vec<Vec<CopyInfo>> = (0..edges.len()).map(|_| Vec::new()).collect();
        for emb in all_copies(prep, n) {
            let idx: Vec<usize> = prep
                .pattern()
                .edges()
                .iter()
                .map(|&(a, b)| pair_index(n, emb[a], emb[b]))
                .collect();
            let last = *idx.iter().max().unwrap();
            let mask = emb.iter().fold(0u16, |m, &x| m | 1 << x);
            completes[last].push(CopyInfo { edges: idx, mask });
        }
        Problem {
            n,
            k,
            target,
            edges,
            prep,
            completes,
            budget,
        }
    }

    fn root(&self) -> Node {
        Node {
            colours: Vec::with_capacity(self.edges.len()),
            at_vertex: vec![0; self.n],
            used: 0,
            buckets: HashMap::new(),
        }
    }

    /// `k - 1` pairwise disjoint masks in `bucket`, all disjoint from `mask`.
    fn packs(bucket: &[u16], mask: u16, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        bucket
            .iter()
            .enumerate()
            .any(|(i, &m)| m & mask == 0 && Self::packs(&bucket[i + 1..], mask | m, need - 1))
    }

    /// Colours edge `e` with `c`, registering completed copies. Returns the
    /// bucket keys touched, or `None` (with nothing changed) on a repeat.
    fn assign(&self, node: &mut Node, c: u8) -> Option<Vec<u64>> {
        let e = node.colours.len();
        let (u, v) = self.edges[e];
        let bit = 1u64 << c;
        if node.at_vertex[u] & bit != 0 || node.at_vertex[v] & bit != 0 {
            return None;
        }
        node.colours.push(c);
        let mut keys = Vec::new();
        let mut tuple = vec![0u32; self.prep.pattern().edge_count()];
        for copy in &self.completes[e] {
            for (slot, &i) in tuple.iter_mut().zip(&copy.edges) {
                *slot = node.colours[i] as u32;
            }
            let key = self
                .prep
                .signature(&tuple)
                .iter()
                .fold(0u64, |acc, &x| acc << 6 | x as u64);
            let bucket = node.buckets.entry(key).or_default();
            if Self::packs(bucket, copy.mask, self.k - 1) {
                self.undo(node, &keys);
                node.colours.pop();
                return None;
            }
            bucket.push(copy.mask);
            keys.push(key);
        }
        node.at_vertex[u] |= bit;
        node.at_vertex[v] |= bit;
        if c as usize == node.used {
            node.used += 1;
        }
        Some(keys)
    }

    fn undo(&self, node: &mut Node, keys: &[u64]) {
        for key in keys.iter().rev() {
            node.buckets.get_mut(key).unwrap().pop();
        }
    }

    fn unassign(&self, node: &mut Node, keys: &[u64], was_used: usize) {
        let e = node.colours.len() - 1;
        let (u, v) = self.edges[e];
        let c = node.colours.pop().unwrap();
        node.at_vertex[u] &= !(1u64 << c);
        node.at_vertex[v] &= !(1u64 << c);
        node.used = was_used;
        self.undo(node, keys);
    }

    /// Colours admissible for the next edge, in increasing order.
    fn choices(&self, node: &Node) -> std::ops::Range<u8> {
        let e = node.colours.len();
        if e < self.n - 1 {
            return e as u8..e as u8 + 1;
        }
        let remaining = self.edges.len() - e;
        let missing = self.target - node.used;
        if missing > remaining {
            return 0..0;
        }
        if missing == remaining {
            // every remaining edge must open a new colour
            return node.used as u8..node.used as u8 + 1;
        }
        0..(node.used + 1).min(self.target) as u8
    }

    fn dfs(&self, node: &mut Node, me: usize, best: &AtomicUsize) -> Step {
        if node.colours.len() == self.edges.len() {
            return if node.used == self.target {
                Step::Found(node.colours.clone())
            } else {
                Step::Exhausted
            };
        }
        if !self.budget.charge(1) {
            return Step::OutOfBudget;
        }
        if best.load(Ordering::Relaxed) < me {
            return Step::Abandoned;
        }
        for c in self.choices(node) {
            let was_used = node.used;
            let Some(keys) = self.assign(node, c) else { continue };
            let step = self.dfs(node, me, best);
            self.unassign(node, &keys, was_used);
            if !matches!(step, Step::Exhausted) {
                return step;
            }
        }
        Step::Exhausted
    }

    fn frontier(&self, depth: usize) -> Vec<Node> {
        let mut out = Vec::new();
        let mut node = self.root();
        self.expand(&mut node, depth.min(self.edges.len()), &mut out);
        out
    }

    fn expand(&self, node: &mut Node, depth: usize, out: &mut Vec<Node>) {
        // the frontier is always built in full; its nodes still count
        self.budget.charge(1);
        if node.colours.len() == depth {
            out.push(node.clone());
            return;
        }
        for c in self.choices(node) {
            let was_used = node.used;
            if let Some(keys) = self.assign(node, c) {
                self.expand(node, depth, out);
                self.unassign(node, &keys, was_used);
            }
        }
    }
}

fn check_instance(n: usize, h: &PatternGraph, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    if !(2..=SEARCH_MAX_HOST).contains(&n) {
        return Err(Error::InstanceTooLarge(format!(
            "exact search needs 2 <= n <= {SEARCH_MAX_HOST}, got {n}"
        )));
    }
    if h.vertex_count() > SEARCH_MAX_PATTERN {
        return Err(Error::PatternTooLarge {
            vertices: h.vertex_count(),
            limit: SEARCH_MAX_PATTERN,
        });
    }
    Ok(())
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn avoid_with(n: usize, prep: &PreparedPattern, k: usize, target: usize, budget: &NodeBudget) -> Avoidability {
    let edges = n * (n - 1) / 2;
    if target + 1 < n || target > edges {
        return Avoidability::Refuted;
    }
    let problem = Problem::new(n, prep, k, target, budget);
    let frontier = problem.frontier(n - 1 + 3);
    let best = AtomicUsize::new(usize::MAX);
    let steps: Vec<Step> = frontier
        .into_par_iter()
        .enumerate()
        .map(|(i, mut node)| {
            let step = problem.dfs(&mut node, i, &best);
            if matches!(step, Step::Found(_)) {
                best.fetch_min(i, Ordering::Relaxed);
            }
            step
        })
        .collect();
    let mut out_of_budget = false;
    for step in steps {
        match step {
            Step::Found(colours) => {
                let labels: Vec<u64> = colours.iter().map(|&c| c as u64).collect();
                return Avoidability::Witness(EdgeColouring::from_raw_labels(n, &labels));
            }
            Step::OutOfBudget => out_of_budget = true,
            Step::Exhausted | Step::Abandoned => {}
        }
    }
    if out_of_budget {
        Avoidability::Unknown
    } else {
        Avoidability::Refuted
    }
}

/// Decides whether some proper colouring of `K_n` with exactly `colours`
/// colours has no `k` vertex-disjoint colour-isomorphic copies of `h`.
pub fn is_avoidable(n: usize, h: &PatternGraph, k: usize, colours: usize, opts: &SearchOptions) -> Result<AvoidResult> {
    check_instance(n, h, k)?;
    let prep = PreparedPattern::new(h)?;
    let budget = NodeBudget::new(opts.node_budget);
    let outcome = in_pool(opts.threads, || avoid_with(n, &prep, k, colours, &budget))?;
    Ok(AvoidResult {
        outcome,
        nodes: budget.used(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub pattern: PatternGraph,
    /// The exact value when it was pinned down.
    pub value: Option<usize>,
    pub lo: usize,
    pub hi: usize,
    /// A colouring with exactly `hi` colours and no `k`-repeat.
    pub witness: Option<EdgeColouring>,
    /// The search at `value - 1` was refuted completely.
    pub exhaustive: bool,
    pub nodes: u64,
    /// Why the search stopped short, when it did.
    pub note: Option<String>,
}

impl SearchResult {
    pub fn table_header() -> &'static str {
        "n k pattern value lo hi exhaustive nodes"
    }

    pub fn table_row(&self) -> String {
        let value = self.value.map_or_else(|| "-".to_string(), |v| v.to_string());
        format!(
            "{} {} {} {} {} {} {} {}",
            self.n,
            self.k,
            self.pattern.label(),
            value,
            self.lo,
            self.hi,
            self.exhaustive,
            self.nodes
        )
    }
}

/// Renders results as the whitespace-separated results table.
pub fn results_table(results: &[SearchResult]) -> String {
    let mut out = String::new();
    writeln!(out, "{}", SearchResult::table_header()).unwrap();
    for r in results {
        writeln!(out, "{}", r.table_row()).unwrap();
    }
    out
}

/// Lower bounds that hold for every proper colouring: the chromatic index
/// of `K_n`, and for a single edge the pigeonhole bound.
pub fn seeded_lower_bound(n: usize, h: &PatternGraph, k: usize) -> usize {
    let chromatic = if n % 2 == 1 { n } else { n - 1 };
    if h.vertex_count() == 2 && h.edge_count() == 1 {
        let edges = n * (n - 1) / 2;
        chromatic.max(edges.div_ceil(k - 1))
    } else {
        chromatic
    }
}

/// The cheapest verified construction: the additive colouring if it has no
/// `k`-repeat, else the rainbow colouring.
fn seeded_upper_bound(n: usize, h: &PatternGraph, k: usize) -> Result<EdgeColouring> {
    if n >= 3 {
        let add = additive_colouring(n)?;
        if find_repeats(&add, h, k, DetectionMode::Exact)?.is_absent() {
            return Ok(add);
        }
    }
    Ok(EdgeColouring::rainbow(n))
}

fn certify(witness: &EdgeColouring, h: &PatternGraph, k: usize) -> Result<()> {
    debug_assert!(check_proper(witness).proper);
    debug_assert!(find_repeats(witness, h, k, DetectionMode::Exact)?.is_absent());
    Ok(())
}

/// Computes `f_k(n, h)` exactly, or the best interval the budget allows.
///
/// The predicate "some proper `C`-colouring avoids `k`-repeats" is monotone
/// in `C` (split an edge off a large class into a new colour), so the scan
/// walks upwards from the seeded lower bound and the first `C` with a
/// witness is the value once `C - 1` is refuted.
pub fn exact_f(n: usize, h: &PatternGraph, k: usize, opts: &SearchOptions) -> Result<SearchResult> {
    check_instance(n, h, k)?;
    let prep = PreparedPattern::new(h)?;
    let budget = NodeBudget::new(opts.node_budget);
    let lower = seeded_lower_bound(n, h, k);
    let upper = seeded_upper_bound(n, h, k)?;
    let mut result = SearchResult {
        n,
        k,
        pattern: h.clone(),
        value: None,
        lo: lower,
        hi: upper.num_colours(),
        witness: Some(upper),
        exhaustive: false,
        nodes: 0,
        note: None,
    };
    in_pool(opts.threads, || -> Result<()> {
        let mut c = lower;
        let mut refuted_below = false;
        while c < result.hi {
            match avoid_with(n, &prep, k, c, &budget) {
                Avoidability::Witness(w) => {
                    certify(&w, h, k)?;
                    result.hi = c;
                    result.witness = Some(w);
                    break;
                }
                Avoidability::Refuted => {
                    refuted_below = true;
                    result.lo = c + 1;
                    c += 1;
                }
                Avoidability::Unknown => {
                    result.note = Some(format!("node budget exhausted while deciding C={c}"));
                    return Ok(());
                }
            }
        }
        // the seeded lower bound is a theorem, but the value is only called
        // exhaustive once C = hi - 1 has been refuted by the search itself
        if !refuted_below {
            match avoid_with(n, &prep, k, result.hi - 1, &budget) {
                Avoidability::Refuted => result.lo = result.hi,
                Avoidability::Witness(_) => {
                    return Err(Error::InvalidParameter(format!(
                        "C={} is avoidable below the seeded lower bound {lower}",
                        result.hi - 1
                    )))
                }
                Avoidability::Unknown => {
                    result.note = Some(format!("node budget exhausted while refuting C={}", result.hi - 1));
                    return Ok(());
                }
            }
        }
        result.value = Some(result.hi);
        result.exhaustive = true;
        Ok(())
    })??;
    result.nodes = budget.used();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_pattern;

    fn k2() -> PatternGraph {
        parse_pattern("K2").unwrap()
    }

    #[test]
    fn avoidability_examples() {
        let opts = SearchOptions::default();
        let r = is_avoidable(3, &k2(), 2, 3, &opts).unwrap();
        assert!(matches!(r.outcome, Avoidability::Witness(_)));
        let r = is_avoidable(4, &k2(), 2, 5, &opts).unwrap();
        assert_eq!(r.outcome, Avoidability::Refuted);
        let r = is_avoidable(5, &k2(), 3, 5, &opts).unwrap();
        let Avoidability::Witness(w) = r.outcome else {
            panic!("expected witness")
        };
        assert!(w.class_sizes().iter().all(|&s| s == 2));
    }

    #[test]
    fn small_values() {
        let opts = SearchOptions::default();
        for (n, k, want) in [(3, 2, 3), (4, 2, 6), (5, 3, 5)] {
            let r = exact_f(n, &k2(), k, &opts).unwrap();
            assert_eq!(r.value, Some(want), "f_{k}({n}, K2)");
            assert!(r.exhaustive);
            assert_eq!(r.witness.as_ref().unwrap().num_colours(), want);
        }
    }

    #[test]
    fn budget_gives_interval() {
        let opts = SearchOptions {
            node_budget: Some(5),
            threads: 1,
        };
        let r = exact_f(6, &parse_pattern("S2").unwrap(), 2, &opts).unwrap();
        assert_eq!(r.value, None);
        assert!(r.lo <= r.hi);
        assert!(r.note.is_some());
    }

    #[test]
    fn table_format() {
        let r = exact_f(3, &k2(), 2, &SearchOptions::default()).unwrap();
        let t = results_table(&[r]);
        let mut lines = t.lines();
        assert_eq!(lines.next(), Some("n k pattern value lo hi exhaustive nodes"));
        assert!(lines.next().unwrap().starts_with("3 2 K2 3 3 3 true "));
    }

    #[test]
    fn rejects_large_instances() {
        assert!(exact_f(11, &k2(), 2, &SearchOptions::default()).is_err());
        assert!(exact_f(8, &parse_pattern("C6").unwrap(), 2, &SearchOptions::default()).is_err());
    }
}
