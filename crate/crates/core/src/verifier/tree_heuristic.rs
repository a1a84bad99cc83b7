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

//! Heuristic search for `k`-repeats of a tree through the auxiliary graph on
//! `k`-subsets of the host.
//!
//! `F` has one vertex per `k`-subset of the host vertices; `U` and `W` are
//! adjacent when they are disjoint and joined by a monochromatic perfect
//! matching. After peeling `F` down to a subgraph of minimum degree at least
//! half its average degree, the tree is embedded into `F` leaf by leaf with
//! pairwise disjoint `k`-sets. Such an embedding unfolds into `k` disjoint
//! colour-isomorphic copies of the tree.

use std::collections::{HashMap, VecDeque};

use super::{verify_certificate, RepeatCertificate};
use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::{PatternGraph, PreparedPattern};

pub const HEURISTIC_MAX_K: usize = 3;
pub const HEURISTIC_MAX_HOST: usize = 40;
const MAX_F_EDGES: usize = 20_000_000;

/// One monochromatic perfect matching between two disjoint `k`-sets.
#[derive(Clone, Debug)]
struct Link {
    /// `(u, w)` pairs with `u` in the smaller-indexed set.
    pairs: Vec<(usize, usize)>,
}

struct Auxiliary {
    sets: Vec<Vec<usize>>,
    adj: Vec<Vec<usize>>,
    links: HashMap<(usize, usize), Link>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn build_auxiliary(col: &EdgeColouring, k: usize) -> Result<Auxiliary> {
    let sets = combinations(col.n(), k);
    let index: HashMap<Vec<usize>, usize> = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut links: HashMap<(usize, usize), Link> = HashMap::new();
    for class in col.classes().iter() {
        for pick in combinations(class.len(), k) {
            let edges: Vec<(usize, usize)> = pick.iter().map(|&i| class[i]).collect();
            let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
            verts.sort_unstable();
            verts.dedup();
            if verts.len() != 2 * k {
                continue;
            }
            // first edge fixed, the other k-1 edges flip: 2^(k-1) splits
            for flips in 0..1usize << (k - 1) {
                let oriented: Vec<(usize, usize)> = edges
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b))| {
                        if i > 0 && flips >> (i - 1) & 1 == 1 {
                            (b, a)
                        } else {
                            (a, b)
                        }
                    })
                    .collect();
                let mut u: Vec<usize> = oriented.iter().map(|p| p.0).collect();
                let mut w: Vec<usize> = oriented.iter().map(|p| p.1).collect();
                u.sort_unstable();
                w.sort_unstable();
                let (iu, iw) = (index[&u], index[&w]);
                let (key, pairs) = if iu < iw {
                    ((iu, iw), oriented)
                } else {
                    ((iw, iu), oriented.iter().map(|&(a, b)| (b, a)).collect())
                };
                links.entry(key).or_insert(Link { pairs });
                if links.len() > MAX_F_EDGES {
                    return Err(Error::InvalidParameter(format!(
                        "auxiliary graph exceeds {MAX_F_EDGES} edges"
                    )));
                }
            }
        }
    }
    let mut adj = vec![Vec::new(); sets.len()];
    for &(a, b) in links.keys() {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj.iter_mut().for_each(|l| l.sort_unstable());
    Ok(Auxiliary { sets, adj, links })
}

/// Repeatedly deletes vertices of degree below half the original average
/// degree. What survives has minimum degree at least that threshold.
fn peel(adj: &[Vec<usize>]) -> Vec<bool> {
    let nv = adj.len();
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let threshold = edges as f64 / nv as f64; // half of 2e/|F|
    let mut alive = vec![true; nv];
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..nv).filter(|&x| (deg[x] as f64) < threshold).collect();
    while let Some(x) = queue.pop_front() {
        if !alive[x] {
            continue;
        }
        alive[x] = false;
        for &y in &adj[x] {
            if alive[y] {
                deg[y] -= 1;
                if (deg[y] as f64) < threshold {
                    queue.push_back(y);
                }
            }
        }
    }
    alive
}

/// Greedy colouring of the intersection graph of `cands`; classes come back
/// largest first, each a family of pairwise disjoint sets.
fn greedy_matchings(cands: &[usize], sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &c in cands {
        let slot = classes
            .iter()
            .position(|cls| cls.iter().all(|&d| !sets[d].iter().any(|x| sets[c].contains(x))));
        match slot {
            Some(i) => classes[i].push(c),
            None => classes.push(vec![c]),
        }
    }
    classes.sort_by_key(|cls| std::cmp::Reverse(cls.len()));
    classes
}

/// Searches for `k` vertex-disjoint colour-isomorphic copies of the tree `t`.
/// A returned certificate is sound; `None` proves nothing.
pub fn tree_repeat_heuristic(col: &EdgeColouring, t: &PatternGraph, k: usize) -> Result<Option<RepeatCertificate>> {
    if !t.is_forest() || !t.is_connected() {
        return Err(Error::InvalidParameter("pattern must be a tree".into()));
    }
    if !(2..=HEURISTIC_MAX_K).contains(&k) {
        return Err(Error::InvalidParameter(format!("k must lie in 2..={HEURISTIC_MAX_K}")));
    }
    if col.n() > HEURISTIC_MAX_HOST {
        return Err(Error::InstanceTooLarge(format!(
            "host has {} vertices, the heuristic allows {HEURISTIC_MAX_HOST}",
            col.n()
        )));
    }
    if k * t.vertex_count() > col.n() {
        return Ok(None);
    }
    let aux = build_auxiliary(col, k)?;
    if aux.links.is_empty() {
        return Ok(None);
    }
    let alive = peel(&aux.adj);

    // leaf-by-leaf order: BFS from vertex 0
    let m = t.vertex_count();
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; m];
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for y in 0..m {
            if !seen[y] && t.has_edge(x, y) {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }

    for root in (0..aux.sets.len()).filter(|&r| alive[r]) {
        let mut phi = vec![usize::MAX; m];
        phi[order[0]] = root;
        let mut used: Vec<usize> = aux.sets[root].clone();
        let mut ok = true;
        for &x in &order[1..] {
            let anchor = phi[parent[x]];
            let cands: Vec<usize> = aux.adj[anchor].iter().copied().filter(|&y| alive[y]).collect();
            let pick = greedy_matchings(&cands, &aux.sets)
                .into_iter()
                .flatten()
                .find(|&y| !aux.sets[y].iter().any(|v| used.contains(v)));
            match pick {
                Some(y) => {
                    phi[x] = y;
                    used.extend_from_slice(&aux.sets[y]);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let cert = unfold(col, t, k, &aux, &order, &parent, &phi)?;
            debug_assert!(verify_certificate(&cert, col).is_accept());
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

fn unfold(
    col: &EdgeColouring,
    t: &PatternGraph,
    k: usize,
    aux: &Auxiliary,
    order: &[usize],
    parent: &[usize],
    phi: &[usize],
) -> Result<RepeatCertificate> {
    let m = t.vertex_count();
    let mut copies = vec![vec![usize::MAX; m]; k];
    for (r, copy) in copies.iter_mut().enumerate() {
        copy[order[0]] = aux.sets[phi[order[0]]][r];
    }
    for &x in &order[1..] {
        let (p, q) = (phi[parent[x]], phi[x]);
        let link = &aux.links[&(p.min(q), p.max(q))];
        for copy in copies.iter_mut() {
            let from = copy[parent[x]];
            let to = link
                .pairs
                .iter()
                .find_map(|&(a, b)| {
                    if a == from {
                        Some(b)
                    } else if b == from {
                        Some(a)
                    } else {
                        None
                    }
                })
                .expect("matching covers the k-set");
            copy[x] = to;
        }
    }
    let direct: Vec<u32> = t
        .edges()
        .iter()
        .map(|&(a, b)| col.colour(copies[0][a], copies[0][b]))
        .collect();
    let signature = PreparedPattern::new(t)?.signature(&direct);
    Ok(RepeatCertificate {
        pattern: t.clone(),
        k,
        copies,
        signature,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_pattern;
    use crate::verifier::{find_repeats, DetectionMode};

    #[test]
    fn rainbow_has_empty_auxiliary_graph() {
        let col = EdgeColouring::rainbow(10);
        let p3 = parse_pattern("P3").unwrap();
        assert_eq!(tree_repeat_heuristic(&col, &p3, 2).unwrap(), None);
    }

    #[test]
    fn dense_three_colouring_yields_certificate() {
        let col = EdgeColouring::from_fn(12, |u, v| ((u + v) % 3) as u64);
        let p3 = parse_pattern("P3").unwrap();
        let cert = tree_repeat_heuristic(&col, &p3, 2)
            .unwrap()
            .expect("dense monochromatic matchings");
        assert!(verify_certificate(&cert, &col).is_accept());
        let exact = find_repeats(&col, &p3, 2, DetectionMode::Exact).unwrap();
        assert!(exact.certificate().is_some());
    }

    #[test]
    fn rejects_non_trees_and_bad_k() {
        let col = EdgeColouring::rainbow(8);
        assert!(tree_repeat_heuristic(&col, &parse_pattern("C4").unwrap(), 2).is_err());
        assert!(tree_repeat_heuristic(&col, &parse_pattern("P3").unwrap(), 4).is_err());
        assert!(tree_repeat_heuristic(&EdgeColouring::rainbow(41), &parse_pattern("P3").unwrap(), 2).is_err());
    }

    #[test]
    fn peeling_keeps_min_degree() {
        // a triangle with a pendant path
        let adj = vec![vec![1, 2], vec![0, 2], vec![0, 1, 3], vec![2, 4], vec![3]];
        let alive = peel(&adj);
        let thr = 5.0 / 5.0;
        for x in 0..5 {
            if alive[x] {
                let d = adj[x].iter().filter(|&&y| alive[y]).count();
                assert!(d as f64 >= thr);
            }
        }
        assert!(alive.iter().any(|&a| a));
    }
}
