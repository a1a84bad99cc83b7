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

//! Backtracking enumeration of (non-induced) embeddings of a pattern into
//! `K_n`.

use crate::graph::{PatternGraph, PreparedPattern};
use crate::packing::NodeBudget;

/// Extension order for embeddings that start from a fixed pattern edge.
#[derive(Clone, Debug)]
pub(crate) struct AnchorPlan {
    pub a: usize,
    pub b: usize,
    /// Remaining pattern vertices, each listed with its already-placed
    /// pattern neighbours.
    pub steps: Vec<(usize, Vec<usize>)>,
}

impl AnchorPlan {
    pub fn new(h: &PatternGraph, edge: usize) -> Self {
        let (a, b) = h.edges()[edge];
        let v = h.vertex_count();
        let mut placed = vec![false; v];
        placed[a] = true;
        placed[b] = true;
        let mut order = vec![a, b];
        while order.len() < v {
            // most placed neighbours first, then smallest label
            let next = (0..v)
                .filter(|&x| !placed[x])
                .max_by_key(|&x| {
                    let k = order.iter().filter(|&&y| h.has_edge(x, y)).count();
                    (k, std::cmp::Reverse(x))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let steps = order[2..]
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let back = order[..i + 2].iter().copied().filter(|&y| h.has_edge(x, y)).collect();
                (x, back)
            })
            .collect();
        AnchorPlan { a, b, steps }
    }
}

/// Calls `visit` with every embedding `φ` (indexed by pattern vertex) such
/// that `φ(a) = x`, `φ(b) = y` and every other pattern edge lands on a host
/// pair accepted by `edge_ok`. Returns `false` if the budget ran out.
pub(crate) fn extend_anchor(
    plan: &AnchorPlan,
    n: usize,
    x: usize,
    y: usize,
    edge_ok: &impl Fn(usize, usize) -> bool,
    budget: &NodeBudget,
    visit: &mut impl FnMut(&[usize]),
) -> bool {
    let v = plan.steps.len() + 2;
    let mut emb = vec![usize::MAX; v];
    emb[plan.a] = x;
    emb[plan.b] = y;
    let mut used = vec![false; n];
    used[x] = true;
    used[y] = true;
    rec(plan, 0, n, &mut emb, &mut used, edge_ok, budget, visit)
}

#[allow(clippy::too_many_arguments)]
fn rec(
    plan: &AnchorPlan,
    depth: usize,
    n: usize,
    emb: &mut [usize],
    used: &mut [bool],
    edge_ok: &impl Fn(usize, usize) -> bool,
    budget: &NodeBudget,
    visit: &mut impl FnMut(&[usize]),
) -> bool {
    if depth == plan.steps.len() {
        visit(emb);
        return true;
    }
    if !budget.charge(1) {
        return false;
    }
    let (x, back) = &plan.steps[depth];
    for w in 0..n {
        if used[w] || !back.iter().all(|&y| edge_ok(emb[y], w)) {
            continue;
        }
        emb[*x] = w;
        used[w] = true;
        let ok = rec(plan, depth + 1, n, emb, used, edge_ok, budget, visit);
        used[w] = false;
        emb[*x] = usize::MAX;
        if !ok {
            return false;
        }
    }
    true
}

/// Every copy of the pattern in `K_n`, once each, as its lexicographically
/// least embedding over the automorphism group.
pub(crate) fn all_copies(prep: &PreparedPattern, n: usize) -> Vec<Vec<usize>> {
    let h = prep.pattern();
    let v = h.vertex_count();
    let mut out = Vec::new();
    if v > n {
        return out;
    }
    let perms = prep.vertex_perms();
    let mut emb = Vec::with_capacity(v);
    let mut used = vec![false; n];
    fn rec(
        h: &PatternGraph,
        perms: &[Vec<usize>],
        n: usize,
        emb: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = h.vertex_count();
        if emb.len() == v {
            let minimal = perms.iter().all(|p| {
                for (x, &px) in p.iter().enumerate() {
                    match emb[px].cmp(&emb[x]) {
                        std::cmp::Ordering::Less => return false,
                        std::cmp::Ordering::Greater => return true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
                true
            });
            if minimal {
                out.push(emb.clone());
            }
            return;
        }
        for w in 0..n {
            if !used[w] {
                used[w] = true;
                emb.push(w);
                rec(h, perms, n, emb, used, out);
                emb.pop();
                used[w] = false;
            }
        }
    }
    rec(h, perms, n, &mut emb, &mut used, &mut out);
    out
}

/// Number of copies of a pattern in `K_n`: `n!/(n-v)! / |Aut|`.
pub fn copy_count(h: &PatternGraph, aut_order: u64, n: usize) -> u128 {
    let v = h.vertex_count();
    if v > n {
        return 0;
    }
    let falling: u128 = (0..v).map(|i| (n - i) as u128).product();
    falling / aut_order as u128
}
