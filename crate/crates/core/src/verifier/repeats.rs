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

//! Exact detection of `k` vertex-disjoint colour-isomorphic copies.
//!
//! Copies are grouped by their smallest colour `c`: every copy whose minimum
//! colour is `c` contains an edge of colour `c`, and that edge is the image
//! of one of the edge-orbit representatives of the pattern. Anchoring each
//! representative on each edge of colour `c` and extending through edges of
//! colour `>= c` therefore reaches every such copy. Signatures never span two
//! groups, so each group is bucketed and packed on its own and memory stays
//! proportional to one group.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::enumerate::{extend_anchor, AnchorPlan};
use super::RepeatCertificate;
use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::{PatternGraph, PreparedPattern, Signature};
use crate::packing::{find_disjoint, max_disjoint, NodeBudget};

/// Exact mode refuses patterns above this many vertices.
pub const EXACT_MAX_PATTERN_VERTICES: usize = 8;
/// Exact mode refuses hosts above this many vertices.
pub const EXACT_MAX_HOST_VERTICES: usize = 60;
/// Default node budget for budgeted mode.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetectionMode {
    /// Complete enumeration within the exact-mode size limits.
    Exact,
    /// No size limits; gives up with [`RepeatOutcome::Unknown`] after
    /// `node_budget` search nodes.
    Budgeted { node_budget: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepeatOutcome {
    Found(RepeatCertificate),
    /// The search finished: no `k`-repeat exists.
    Absent,
    Unknown {
        nodes: u64,
    },
}

impl RepeatOutcome {
    pub fn certificate(&self) -> Option<&RepeatCertificate> {
        match self {
            RepeatOutcome::Found(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, RepeatOutcome::Absent)
    }
}

fn check_limits(col: &EdgeColouring, h: &PatternGraph, mode: DetectionMode) -> Result<Option<u64>> {
    match mode {
        DetectionMode::Exact => {
            if h.vertex_count() > EXACT_MAX_PATTERN_VERTICES {
                return Err(Error::PatternTooLarge {
                    vertices: h.vertex_count(),
                    limit: EXACT_MAX_PATTERN_VERTICES,
                });
            }
            if col.n() > EXACT_MAX_HOST_VERTICES {
                return Err(Error::InstanceTooLarge(format!(
                    "host has {} vertices, exact mode allows {EXACT_MAX_HOST_VERTICES}",
                    col.n()
                )));
            }
            Ok(None)
        }
        DetectionMode::Budgeted { node_budget } => Ok(Some(node_budget)),
    }
}

/// The buckets of one minimum-colour group: signature to the canonical
/// embeddings realising it.
type Group = BTreeMap<Signature, BTreeSet<Vec<usize>>>;

fn collect_group(
    prep: &PreparedPattern,
    plans: &[AnchorPlan],
    col: &EdgeColouring,
    class: &[(usize, usize)],
    c: u32,
    budget: &NodeBudget,
) -> Option<Group> {
    let h = prep.pattern();
    let n = col.n();
    let mut group = Group::new();
    let edge_ok = |u: usize, v: usize| col.colour(u, v) >= c;
    let mut colours = vec![0u32; h.edge_count()];
    for &(x, y) in class {
        for plan in plans {
            for (s, t) in [(x, y), (y, x)] {
                let complete = extend_anchor(plan, n, s, t, &edge_ok, budget, &mut |emb| {
                    for (slot, &(a, b)) in colours.iter_mut().zip(h.edges()) {
                        *slot = col.colour(emb[a], emb[b]);
                    }
                    let (sig, cemb) = prep.canonical(emb, &colours);
                    group.entry(sig).or_default().insert(cemb);
                });
                if !complete {
                    return None;
                }
            }
        }
    }
    Some(group)
}

fn vertex_sets(copies: &BTreeSet<Vec<usize>>) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let embs: Vec<Vec<usize>> = copies.iter().cloned().collect();
    let sets = embs
        .iter()
        .map(|e| {
            let mut s = e.clone();
            s.sort_unstable();
            s
        })
        .collect();
    (embs, sets)
}

enum GroupResult {
    Found(RepeatCertificate),
    Clear,
    OutOfBudget,
}

fn search_group(
    prep: &PreparedPattern,
    plans: &[AnchorPlan],
    col: &EdgeColouring,
    class: &[(usize, usize)],
    c: u32,
    k: usize,
    budget: &NodeBudget,
) -> GroupResult {
    let Some(group) = collect_group(prep, plans, col, class, c, budget) else {
        return GroupResult::OutOfBudget;
    };
    let mut buckets: Vec<(&Signature, &BTreeSet<Vec<usize>>)> =
        group.iter().filter(|(_, copies)| copies.len() >= k).collect();
    // largest bucket first; ties by signature
    buckets.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.0.cmp(b.0)));
    for (sig, copies) in buckets {
        let (embs, sets) = vertex_sets(copies);
        if let Some(idx) = find_disjoint(&sets, k, budget) {
            return GroupResult::Found(RepeatCertificate {
                pattern: prep.pattern().clone(),
                k,
                copies: idx.into_iter().map(|i| embs[i].clone()).collect(),
                signature: sig.clone(),
            });
        }
        if budget.is_exhausted() {
            return GroupResult::OutOfBudget;
        }
    }
    GroupResult::Clear
}

fn anchor_plans(prep: &PreparedPattern) -> Vec<AnchorPlan> {
    prep.edge_orbit_reps()
        .iter()
        .map(|&e| AnchorPlan::new(prep.pattern(), e))
        .collect()
}

/// Looks for `k` vertex-disjoint colour-isomorphic copies of `h` in `col`.
///
/// The colouring need not be proper. Groups are examined in increasing order
/// of their minimum colour, so the returned certificate does not depend on
/// the size of the rayon thread pool.
pub fn find_repeats(col: &EdgeColouring, h: &PatternGraph, k: usize, mode: DetectionMode) -> Result<RepeatOutcome> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    let limit = check_limits(col, h, mode)?;
    if k * h.vertex_count() > col.n() {
        return Ok(RepeatOutcome::Absent);
    }
    let prep = PreparedPattern::new(h)?;
    let plans = anchor_plans(&prep);
    let classes = col.classes();
    let budget = NodeBudget::new(limit);
    let chunk = rayon::current_num_threads().max(1) * 4;
    for start in (0..classes.len()).step_by(chunk) {
        let end = (start + chunk).min(classes.len());
        let results: Vec<GroupResult> = (start..end)
            .into_par_iter()
            .map(|c| search_group(&prep, &plans, col, &classes[c], c as u32, k, &budget))
            .collect();
        let mut out_of_budget = false;
        for r in results {
            match r {
                GroupResult::Found(cert) => return Ok(RepeatOutcome::Found(cert)),
                GroupResult::OutOfBudget => out_of_budget = true,
                GroupResult::Clear => {}
            }
        }
        if out_of_budget {
            return Ok(RepeatOutcome::Unknown { nodes: budget.used() });
        }
    }
    Ok(RepeatOutcome::Absent)
}

/// Aggregate statistics over every signature bucket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepeatCensus {
    /// Copies of the pattern in `K_n`.
    pub copies: u64,
    pub buckets: u64,
    /// Largest number of colour-isomorphic copies (overlapping allowed).
    pub max_bucket: usize,
    /// Largest number of pairwise vertex-disjoint colour-isomorphic copies.
    pub max_disjoint: usize,
    /// Signature attaining `max_disjoint` (first in group order).
    pub max_disjoint_signature: Option<Signature>,
}

/// Per colour group: copies, buckets, largest bucket, largest packing and
/// the signature attaining it.
type GroupCensus = (u64, u64, usize, usize, Option<Signature>);

/// Enumerates every copy of `h`, buckets by signature and reports the
/// largest bucket and the largest disjoint packing within any bucket.
///
/// Returns `Ok(None)` when the budget runs out.
pub fn repeat_census(col: &EdgeColouring, h: &PatternGraph, mode: DetectionMode) -> Result<Option<RepeatCensus>> {
    let limit = check_limits(col, h, mode)?;
    let prep = PreparedPattern::new(h)?;
    let plans = anchor_plans(&prep);
    let classes = col.classes();
    let budget = NodeBudget::new(limit);
    let per_group: Vec<Option<GroupCensus>> = (0..classes.len())
        .into_par_iter()
        .map(|c| {
            let group = collect_group(&prep, &plans, col, &classes[c], c as u32, &budget)?;
            let copies = group.values().map(|s| s.len() as u64).sum();
            let max_bucket = group.values().map(BTreeSet::len).max().unwrap_or(0);
            let mut best = (0usize, None);
            for (sig, copies) in &group {
                if copies.len() <= best.0 {
                    continue;
                }
                let (_, sets) = vertex_sets(copies);
                let packed = max_disjoint(&sets, &budget)?;
                if packed.len() > best.0 {
                    best = (packed.len(), Some(sig.clone()));
                }
            }
            Some((copies, group.len() as u64, max_bucket, best.0, best.1))
        })
        .collect();
    let mut census = RepeatCensus {
        copies: 0,
        buckets: 0,
        max_bucket: 0,
        max_disjoint: 0,
        max_disjoint_signature: None,
    };
    for g in per_group {
        let Some((copies, buckets, max_bucket, packed, sig)) = g else {
            return Ok(None);
        };
        census.copies += copies;
        census.buckets += buckets;
        census.max_bucket = census.max_bucket.max(max_bucket);
        if packed > census.max_disjoint {
            census.max_disjoint = packed;
            census.max_disjoint_signature = sig;
        }
    }
    Ok(Some(census))
}
