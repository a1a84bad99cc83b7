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

//! Branch-and-bound set packing over small vertex sets, plus the node budget
//! shared by the exhaustive searches.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

/// Node counter shared between threads. `limit == None` means unbounded.
#[derive(Debug, Default)]
pub struct NodeBudget {
    used: AtomicU64,
    limit: Option<u64>,
    exhausted: AtomicBool,
}

impl NodeBudget {
    pub fn new(limit: Option<u64>) -> Self {
        NodeBudget {
            used: AtomicU64::new(0),
            limit,
            exhausted: AtomicBool::new(false),
        }
    }

    pub fn unlimited() -> Self {
        Self::new(None)
    }

    /// Charges `nodes`; returns `false` once the limit is passed.
    #[inline]
    pub fn charge(&self, nodes: u64) -> bool {
        let total = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        match self.limit {
            Some(l) if total > l => {
                self.exhausted.store(true, Ordering::Relaxed);
                false
            }
            _ => true,
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }
}

#[inline]
pub(crate) fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

/// Indices of `k` pairwise disjoint sets, the lexicographically first such
/// choice in input order. `None` if none exists or the budget runs out
/// (check [`NodeBudget::is_exhausted`]).
pub fn find_disjoint(sets: &[Vec<usize>], k: usize, budget: &NodeBudget) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    if sets.len() < k {
        return None;
    }
    let mut chosen = Vec::with_capacity(k);
    let candidates: Vec<usize> = (0..sets.len()).collect();
    if extend(sets, k, &candidates, &mut chosen, budget) {
        Some(chosen)
    } else {
        None
    }
}

fn extend(sets: &[Vec<usize>], k: usize, candidates: &[usize], chosen: &mut Vec<usize>, budget: &NodeBudget) -> bool {
    if chosen.len() == k {
        return true;
    }
    if !budget.charge(1) {
        return false;
    }
    let need = k - chosen.len();
    if candidates.len() < need || union_bound(sets, candidates) < need {
        return false;
    }
    for (pos, &i) in candidates.iter().enumerate() {
        if candidates.len() - pos < need {
            break;
        }
        let rest: Vec<usize> = candidates[pos + 1..]
            .iter()
            .copied()
            .filter(|&j| disjoint(&sets[i], &sets[j]))
            .collect();
        chosen.push(i);
        if extend(sets, k, &rest, chosen, budget) {
            return true;
        }
        chosen.pop();
        if budget.is_exhausted() {
            return false;
        }
    }
    false
}

/// Upper bound on how many disjoint sets `candidates` can still supply.
fn union_bound(sets: &[Vec<usize>], candidates: &[usize]) -> usize {
    let min_size = candidates.iter().map(|&i| sets[i].len()).min().unwrap_or(1).max(1);
    let mut verts: Vec<usize> = candidates.iter().flat_map(|&i| sets[i].iter().copied()).collect();
    verts.sort_unstable();
    verts.dedup();
    verts.len() / min_size
}

fn greedy(sets: &[Vec<usize>]) -> Vec<usize> {
    let mut picked: Vec<usize> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        if picked.iter().all(|&j| disjoint(s, &sets[j])) {
            picked.push(i);
        }
    }
    picked
}

/// A maximum collection of pairwise disjoint sets (indices). The greedy
/// packing seeds the lower bound. `None` if the budget runs out.
pub fn max_disjoint(sets: &[Vec<usize>], budget: &NodeBudget) -> Option<Vec<usize>> {
    let mut best = greedy(sets);
    loop {
        match find_disjoint(sets, best.len() + 1, budget) {
            Some(better) => best = better,
            None if budget.is_exhausted() => return None,
            None => return Some(best),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_max(sets: &[Vec<usize>]) -> usize {
        let n = sets.len();
        (0u32..1 << n)
            .filter(|mask| {
                let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                idx.iter()
                    .enumerate()
                    .all(|(a, &i)| idx[a + 1..].iter().all(|&j| disjoint(&sets[i], &sets[j])))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn finds_packings() {
        let sets = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]];
        let b = NodeBudget::unlimited();
        assert_eq!(find_disjoint(&sets, 2, &b), Some(vec![0, 2]));
        assert_eq!(find_disjoint(&sets, 3, &b), None);
        assert_eq!(max_disjoint(&sets, &b).unwrap().len(), 2);
    }

    #[test]
    fn matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n_sets = rng.gen_range(1..12);
            let sets: Vec<Vec<usize>> = (0..n_sets)
                .map(|_| {
                    let mut s: Vec<usize> = (0..3).map(|_| rng.gen_range(0..10)).collect();
                    s.sort_unstable();
                    s.dedup();
                    s
                })
                .collect();
            let b = NodeBudget::unlimited();
            let got = max_disjoint(&sets, &b).unwrap();
            assert_eq!(got.len(), brute_max(&sets));
            for (a, &i) in got.iter().enumerate() {
                for &j in &got[a + 1..] {
                    assert!(disjoint(&sets[i], &sets[j]));
                }
            }
        }
    }

    #[test]
    fn budget_exhaustion_reports() {
        let sets: Vec<Vec<usize>> = (0..12).flat_map(|i| (i + 1..12).map(move |j| vec![i, j])).collect();
        let b = NodeBudget::new(Some(3));
        assert!(find_disjoint(&sets, 6, &b).is_none());
        assert!(b.is_exhausted());
    }
}
