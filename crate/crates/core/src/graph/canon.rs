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

//! Canonical relabelling: the labelling whose sorted edge list is
//! lexicographically minimal.
//!
//! Labels are assigned one at a time. After `j` labels are placed, every row
//! `a < j` of the sorted edge list has a fixed length, its known entries are
//! the neighbours already labelled, and the remaining entries are at least
//! `j, j+1, ...`. That row-wise lower bound prunes any branch whose prefix is
//! already larger than the best complete list. Unlabelled twins (vertices
//! with equal neighbourhoods up to each other) are interchangeable, so only
//! one of them is tried per node.

use super::bits;

pub(super) fn canonical_order(adj: &[u64]) -> Vec<usize> {
    let v = adj.len();
    let mut state = Canon {
        adj,
        order: Vec::with_capacity(v),
        label: vec![usize::MAX; v],
        best: None,
        best_order: Vec::new(),
    };
    state.search();
    state.best_order
}

struct Canon<'a> {
    adj: &'a [u64],
    order: Vec<usize>,
    label: Vec<usize>,
    best: Option<Vec<(usize, usize)>>,
    best_order: Vec<usize>,
}

impl Canon<'_> {
    fn prefix_lower_bound(&self) -> Vec<(usize, usize)> {
        let j = self.order.len();
        let mut out = Vec::new();
        for (a, &orig) in self.order.iter().enumerate() {
            let mut known = Vec::new();
            let mut unknown = 0;
            for y in bits(self.adj[orig]) {
                match self.label[y] {
                    usize::MAX => unknown += 1,
                    l if l > a => known.push(l),
                    _ => {}
                }
            }
            known.sort_unstable();
            out.extend(known.into_iter().map(|b| (a, b)));
            out.extend((j..j + unknown).map(|b| (a, b)));
        }
        out
    }

    fn search(&mut self) {
        let v = self.adj.len();
        let j = self.order.len();
        if j == v {
            let mut list: Vec<(usize, usize)> = Vec::new();
            for (a, &orig) in self.order.iter().enumerate() {
                for y in bits(self.adj[orig]) {
                    let b = self.label[y];
                    if b > a {
                        list.push((a, b));
                    }
                }
            }
            list.sort_unstable();
            if self.best.as_ref().is_none_or(|b| list < *b) {
                self.best = Some(list);
                self.best_order = self.order.clone();
            }
            return;
        }
        if let Some(best) = &self.best {
            let lb = self.prefix_lower_bound();
            if lb.as_slice() > &best[..lb.len()] {
                return;
            }
        }
        let mut candidates: Vec<usize> = (0..v).filter(|&x| self.label[x] == usize::MAX).collect();
        // High-degree vertices first tends to reach the minimum early.
        candidates.sort_by_key(|&x| std::cmp::Reverse(self.adj[x].count_ones()));
        let mut tried: Vec<usize> = Vec::new();
        for x in candidates {
            if tried
                .iter()
                .any(|&u| self.adj[u] & !(1u64 << x) == self.adj[x] & !(1u64 << u))
            {
                continue;
            }
            tried.push(x);
            self.label[x] = j;
            self.order.push(x);
            self.search();
            self.order.pop();
            self.label[x] = usize::MAX;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj_of(v: usize, edges: &[(usize, usize)]) -> Vec<u64> {
        let mut adj = vec![0u64; v];
        for &(a, b) in edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    fn relabelled(adj: &[u64], order: &[usize]) -> Vec<(usize, usize)> {
        let mut label = vec![0; adj.len()];
        for (l, &o) in order.iter().enumerate() {
            label[o] = l;
        }
        let mut out = Vec::new();
        for x in 0..adj.len() {
            for y in bits(adj[x]) {
                if x < y {
                    let (a, b) = (label[x], label[y]);
                    out.push((a.min(b), a.max(b)));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn brute_force_min(adj: &[u64]) -> Vec<(usize, usize)> {
        let v = adj.len();
        let mut perm: Vec<usize> = (0..v).collect();
        let mut best = relabelled(adj, &perm);
        // Heap's algorithm
        let mut c = vec![0; v];
        let mut i = 0;
        while i < v {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                best = best.min(relabelled(adj, &perm));
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        best
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]),
            (5, vec![(0, 1), (1, 2), (2, 3), (3, 4)]),
            (6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]),
            (6, vec![(0, 3), (0, 4), (1, 4), (2, 5), (1, 5)]),
            (7, vec![(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 3)]),
        ];
        for (v, edges) in cases {
            let adj = adj_of(v, &edges);
            let order = canonical_order(&adj);
            assert_eq!(relabelled(&adj, &order), brute_force_min(&adj), "{edges:?}");
        }
    }

    #[test]
    fn cycle_four_canonical_form() {
        let adj = adj_of(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let order = canonical_order(&adj);
        assert_eq!(relabelled(&adj, &order), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }
}
