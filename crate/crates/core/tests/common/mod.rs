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

//! Independent oracles and generators shared by the integration tests. None
//! of this reuses the library's enumeration or signature machinery.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use repcol::colouring::pair_index;
use repcol::{EdgeColouring, PatternGraph};

/// A random proper colouring of `K_n` with exactly `c` colours, or `None`
/// if none was found (for example `c < n - 1`).
pub fn random_proper_colouring(n: usize, c: usize, rng: &mut impl Rng) -> Option<EdgeColouring> {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if c > edges.len() {
        return None;
    }
    // greedy random assignment from a palette of exactly c colours
    for _ in 0..400 {
        let mut order = edges.clone();
        order.shuffle(rng);
        let mut at = vec![vec![false; c]; n];
        let mut labels = vec![0u64; edges.len()];
        let mut ok = true;
        for &(u, v) in &order {
            let free: Vec<usize> = (0..c).filter(|&x| !at[u][x] && !at[v][x]).collect();
            let Some(&x) = free.choose(rng) else {
                ok = false;
                break;
            };
            at[u][x] = true;
            at[v][x] = true;
            labels[pair_index(n, u, v)] = x as u64;
        }
        let col = EdgeColouring::from_raw_labels(n, &labels);
        if ok && col.num_colours() == c {
            return Some(col);
        }
    }
    // fallback: a relabelled round-robin colouring split up to c colours
    let base = if n % 2 == 1 { n } else { n - 1 };
    if c < base {
        return None;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut labels = vec![0u64; edges.len()];
    for &(u, v) in &edges {
        let (a, b) = (perm[u], perm[v]);
        labels[pair_index(n, u, v)] = if n % 2 == 1 {
            ((a + b) % n) as u64
        } else if a == n - 1 || b == n - 1 {
            // the last vertex takes the colour missing at its partner
            let x = if a == n - 1 { b } else { a };
            ((2 * x) % (n - 1)) as u64
        } else {
            ((a + b) % (n - 1)) as u64
        };
    }
    let mut next = base as u64;
    while (next as usize) < c {
        let col = EdgeColouring::from_raw_labels(n, &labels);
        let sizes = col.class_sizes();
        let big: Vec<usize> = (0..edges.len())
            .filter(|&i| sizes[col.colours()[i] as usize] >= 2)
            .collect();
        let i = *big.choose(rng)?;
        labels[i] = next;
        next += 1;
    }
    Some(EdgeColouring::from_raw_labels(n, &labels))
}

/// A copy of a pattern as a host subgraph: its vertex set and coloured edges.
#[derive(Clone, Debug)]
pub struct NaiveCopy {
    pub vertices: BTreeSet<usize>,
    pub edges: Vec<(usize, usize, u32)>,
}

/// Every subgraph of `K_n` isomorphic to `h`, found by trying all injective
/// vertex maps and deduplicating edge sets.
pub fn naive_copies(h: &PatternGraph, col: &EdgeColouring) -> Vec<NaiveCopy> {
    let n = col.n();
    let v = h.vertex_count();
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut map = Vec::new();
    fn rec(
        h: &PatternGraph,
        col: &EdgeColouring,
        n: usize,
        v: usize,
        map: &mut Vec<usize>,
        seen: &mut BTreeSet<Vec<(usize, usize)>>,
        out: &mut Vec<NaiveCopy>,
    ) {
        if map.len() == v {
            let mut es: Vec<(usize, usize)> = h
                .edges()
                .iter()
                .map(|&(a, b)| (map[a].min(map[b]), map[a].max(map[b])))
                .collect();
            es.sort_unstable();
            if seen.insert(es.clone()) {
                out.push(NaiveCopy {
                    vertices: map.iter().copied().collect(),
                    edges: es.iter().map(|&(a, b)| (a, b, col.colour(a, b))).collect(),
                });
            }
            return;
        }
        for x in 0..n {
            if !map.contains(&x) {
                map.push(x);
                rec(h, col, n, v, map, seen, out);
                map.pop();
            }
        }
    }
    rec(h, col, n, v, &mut map, &mut seen, &mut out);
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Whether some bijection between the vertex sets maps the edges of `a`
/// onto the edges of `b` with equal colours.
pub fn colour_isomorphic(a: &NaiveCopy, b: &NaiveCopy) -> bool {
    if a.edges.len() != b.edges.len() || a.vertices.len() != b.vertices.len() {
        return false;
    }
    let av: Vec<usize> = a.vertices.iter().copied().collect();
    let bv: Vec<usize> = b.vertices.iter().copied().collect();
    let target: BTreeSet<(usize, usize, u32)> = b.edges.iter().copied().collect();
    permutations(&bv).into_iter().any(|img| {
        let f = |x: usize| img[av.iter().position(|&y| y == x).unwrap()];
        a.edges.iter().all(|&(x, y, c)| {
            let (p, q) = (f(x), f(y));
            target.contains(&(p.min(q), p.max(q), c))
        })
    })
}

/// Searches all `k`-tuples of copies for pairwise disjoint, pairwise
/// colour-isomorphic ones.
pub fn naive_has_repeat(h: &PatternGraph, col: &EdgeColouring, k: usize) -> bool {
    let copies = naive_copies(h, col);
    fn rec(copies: &[NaiveCopy], chosen: &mut Vec<usize>, start: usize, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        for i in start..copies.len() {
            let ok = chosen.iter().all(|&j| {
                copies[i].vertices.is_disjoint(&copies[j].vertices) && colour_isomorphic(&copies[j], &copies[i])
            });
            if ok {
                chosen.push(i);
                if rec(copies, chosen, i + 1, k) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(&copies, &mut Vec::new(), 0, k)
}

/// Whether every colour class of `fine` lies inside one class of `coarse`.
pub fn refines(fine: &EdgeColouring, coarse: &EdgeColouring) -> bool {
    let mut map = vec![None; fine.num_colours()];
    fine.colours().iter().zip(coarse.colours()).all(|(&f, &c)| {
        let slot: &mut Option<u32> = &mut map[f as usize];
        *slot.get_or_insert(c) == c
    })
}

/// Properness checked edge pair by edge pair.
pub fn naive_proper(col: &EdgeColouring) -> bool {
    let n = col.n();
    (0..n).all(|x| {
        let cs: Vec<u32> = (0..n).filter(|&y| y != x).map(|y| col.colour(x, y)).collect();
        let set: BTreeSet<u32> = cs.iter().copied().collect();
        set.len() == cs.len()
    })
}
