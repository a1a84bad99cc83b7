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

//! Colouring constructions. Each returns an [`EdgeColouring`] whose `meta`
//! records the family and its parameters.

mod algebraic;
mod lll;
mod vizing;

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::colouring::{pair_index, EdgeColouring};
use crate::error::{Error, Result};
use crate::field::{is_prime, solve_vandermonde3, PrimeField};

pub use self::algebraic::{
    algebraic_cycle_with, random_algebraic_cycle_colouring, random_algebraic_tree_colouring, DEFAULT_MAX_RETRIES,
};
pub use self::lll::{lll_colour_budget, lll_colouring, LllParams};
pub use self::vizing::vizing_refine;

/// `c(a, b) = a + b mod n` on `Z_n` for odd `n`; for even `n` the restriction
/// of the colouring of `K_{n+1}`.
pub fn additive_colouring(n: usize) -> Result<EdgeColouring> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("n must be at least 3, got {n}")));
    }
    let modulus = if n % 2 == 1 { n } else { n + 1 };
    let mut col = EdgeColouring::from_fn(n, |a, b| ((a + b) % modulus) as u64);
    col.set_meta("family", "additive");
    col.set_meta("n", n);
    col.set_meta("modulus", modulus);
    Ok(col)
}

/// The colour of the edge between `u = (a, b)` and `v = (c, d)` in the
/// quadratic colouring: the coefficients of the parabola
/// `x1 + x2 X + x3 X^2` through both points with `x1 + x2 + x3 = a + c`.
/// `None` marks a degenerate edge (`a = c`, `a = 1` or `c = 1`).
pub fn quadratic_edge_colour(field: &PrimeField, u: (u32, u32), v: (u32, u32)) -> Result<Option<(u32, u32, u32)>> {
    let ((a, b), (c, d)) = (u, v);
    if a == c || a == 1 || c == 1 {
        return Ok(None);
    }
    solve_vandermonde3(a, b, c, d, field).map(Some)
}

/// The quadratic colouring on the first `n` points of `F_q^2`, `q` the least
/// prime with `q^2 >= n`. Degenerate edges get fresh colours.
pub fn quadratic_colouring(n: usize) -> Result<EdgeColouring> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("n must be at least 4, got {n}")));
    }
    let mut q = 2u64;
    while q * q < n as u64 || !is_prime(q) {
        q += 1;
    }
    let field = PrimeField::new(q as u32)?;
    let point = |i: usize| ((i as u64 / q) as u32, (i as u64 % q) as u32);
    let mut labels = Vec::with_capacity(n * (n - 1) / 2);
    let mut degenerate = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            let label = match quadratic_edge_colour(&field, point(i), point(j))? {
                Some((x1, x2, x3)) => (x1 as u64 * q + x2 as u64) * q + x3 as u64,
                None => {
                    degenerate += 1;
                    q * q * q + pair_index(n, i, j) as u64
                }
            };
            labels.push(label);
        }
    }
    let mut col = EdgeColouring::from_raw_labels(n, &labels);
    col.set_meta("family", "quadratic");
    col.set_meta("n", n);
    col.set_meta("q", q);
    col.set_meta("degenerate_edges", degenerate);
    Ok(col)
}

/// Greedy edge-disjoint packing of `K_{2m+1}` copies, each split into `2m+1`
/// near-perfect matchings by the round-robin rule; every edge outside the
/// packing gets its own colour.
pub fn clique_matching_colouring(n: usize, m: usize) -> Result<EdgeColouring> {
    if m < 2 || n < 2 * m + 1 {
        return Err(Error::InvalidParameter(format!(
            "need m >= 2 and n >= 2m+1, got n={n}, m={m}"
        )));
    }
    let s = 2 * m + 1;
    let mut used = vec![false; n * (n - 1) / 2];
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    // Sets are visited in lexicographic order and packed as soon as all of
    // their pairs are free; `used` only grows, so pruning stays sound.
    fn grow(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, used: &mut [bool], cliques: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            for (i, &a) in cur.iter().enumerate() {
                for &b in &cur[i + 1..] {
                    used[pair_index(n, a, b)] = true;
                }
            }
            cliques.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < s - cur.len() {
                break;
            }
            if cur.iter().all(|&a| !used[pair_index(n, a, x)]) {
                cur.push(x);
                grow(x + 1, n, s, cur, used, cliques);
                cur.pop();
            }
        }
    }
    grow(0, n, s, &mut Vec::new(), &mut used, &mut cliques);
    let mut labels: Vec<u64> = (0..used.len()).map(|e| (cliques.len() * s + e) as u64).collect();
    for (ci, clique) in cliques.iter().enumerate() {
        for i in 0..s {
            for j in i + 1..s {
                labels[pair_index(n, clique[i], clique[j])] = (ci * s + (i + j) % s) as u64;
            }
        }
    }
    let mut col = EdgeColouring::from_raw_labels(n, &labels);
    col.set_meta("family", "clique-matching");
    col.set_meta("n", n);
    col.set_meta("m", m);
    col.set_meta("cliques", cliques.len());
    col.set_meta("leftover_edges", used.iter().filter(|&&u| !u).count());
    Ok(col)
}

/// Raises the colour count to exactly `target` by moving single edges out of
/// the largest classes into fresh colours. Properness is preserved and every
/// original class keeps at least one edge.
pub fn pad_colours(col: &EdgeColouring, target: usize) -> Result<EdgeColouring> {
    let (c, edges) = (col.num_colours(), col.num_edges());
    if target < c || target > edges {
        return Err(Error::InvalidParameter(format!(
            "target {target} outside {c}..={edges} colours"
        )));
    }
    let n = col.n();
    let mut classes = col.classes();
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = classes
        .iter()
        .enumerate()
        .map(|(i, cl)| (cl.len(), Reverse(i)))
        .collect();
    let mut labels: Vec<u64> = col.colours().iter().map(|&c| c as u64).collect();
    for fresh in c..target {
        let (size, Reverse(i)) = heap.pop().expect("classes remain");
        debug_assert!(size >= 2);
        let (x, y) = classes[i].pop().unwrap();
        labels[pair_index(n, x, y)] = fresh as u64;
        heap.push((size - 1, Reverse(i)));
    }
    let mut out = EdgeColouring::from_raw_labels(n, &labels);
    for (key, value) in col.meta() {
        out.set_meta(key.clone(), value);
    }
    out.set_meta("padded_from", c);
    Ok(out)
}

/// A random `b`-bounded (usually improper) colouring, built by giving each
/// edge, in random order, a random existing colour that keeps both
/// endpoints within degree `b`, or a fresh colour.
pub fn random_bounded_colouring(n: usize, b: usize, rng: &mut impl Rng) -> EdgeColouring {
    let mut order: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    order.shuffle(rng);
    let mut labels = vec![0u64; order.len()];
    let mut deg: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut palette = 0usize;
    for (x, y) in order {
        let mut pick = None;
        for _ in 0..8 {
            let c = rng.gen_range(0..=palette);
            if c == palette || (deg[x][c] < b && deg[y][c] < b) {
                pick = Some(c);
                break;
            }
        }
        let c = pick.unwrap_or(palette);
        if c == palette {
            palette += 1;
            deg.iter_mut().for_each(|d| d.push(0));
        }
        deg[x][c] += 1;
        deg[y][c] += 1;
        labels[pair_index(n, x, y)] = c as u64;
    }
    EdgeColouring::from_raw_labels(n, &labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::seeded_rng;
    use crate::graph::parse_pattern;
    use crate::verifier::{check_proper, find_repeats, star_incidence_check, DetectionMode};

    #[test]
    fn additive_examples() {
        let c5 = additive_colouring(5).unwrap();
        assert_eq!(c5.colour(1, 2), 3);
        assert_eq!(c5.colour(3, 4), 2);
        assert_eq!(c5.num_colours(), 5);
        let c6 = additive_colouring(6).unwrap();
        assert!(check_proper(&c6).proper);
        assert!(c6.num_colours() <= 7);
    }

    #[test]
    fn quadratic_examples() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(quadratic_edge_colour(&f3, (0, 1), (2, 2)).unwrap(), Some((1, 0, 1)));
        assert_eq!(quadratic_edge_colour(&f3, (1, 0), (2, 2)).unwrap(), None);
        for n in [9, 25] {
            let col = quadratic_colouring(n).unwrap();
            assert!(check_proper(&col).proper);
            assert_eq!(star_incidence_check(&col), None);
            let q: usize = col.meta_value("q").unwrap().parse().unwrap();
            let deg: usize = col.meta_value("degenerate_edges").unwrap().parse().unwrap();
            assert!(col.num_colours() <= q * q * q + deg);
        }
    }

    #[test]
    fn quadratic_uses_first_points() {
        // n = 10 needs q = 5: vertices (0,0)..(1,4)
        let col = quadratic_colouring(10).unwrap();
        assert_eq!(col.meta_value("q"), Some("5"));
        assert!(check_proper(&col).proper);
    }

    #[test]
    fn single_clique_is_round_robin() {
        let col = clique_matching_colouring(5, 2).unwrap();
        assert_eq!(col.num_colours(), 5);
        assert!(col.class_sizes().iter().all(|&s| s == 2));
        assert!(check_proper(&col).proper);
    }

    #[test]
    fn clique_matching_avoids_path_repeats() {
        for (n, m) in [(5, 2), (9, 2), (12, 2), (7, 3), (15, 3)] {
            let col = clique_matching_colouring(n, m).unwrap();
            assert!(check_proper(&col).proper);
            let path = parse_pattern(&format!("P{}", m + 1)).unwrap();
            assert!(find_repeats(&col, &path, 2, DetectionMode::Exact).unwrap().is_absent());
        }
    }

    #[test]
    fn padding() {
        let base = additive_colouring(5).unwrap();
        assert_eq!(pad_colours(&base, 5).unwrap().colours(), base.colours());
        let padded = pad_colours(&base, 7).unwrap();
        assert_eq!(padded.num_colours(), 7);
        assert!(check_proper(&padded).proper);
        // fresh colours sort after the originals, so surviving classes keep their ids
        for c in 0..5u32 {
            assert!(padded
                .colours()
                .iter()
                .zip(base.colours())
                .any(|(&p, &b)| p == c && b == c));
        }
        let rainbow = pad_colours(&base, 10).unwrap();
        assert!(rainbow.class_sizes().iter().all(|&s| s == 1));
        assert!(pad_colours(&base, 11).is_err());
        assert!(pad_colours(&base, 4).is_err());
    }

    #[test]
    fn bounded_generator_respects_bound() {
        let mut rng = seeded_rng(1);
        for b in 1..=4 {
            let col = random_bounded_colouring(12, b, &mut rng);
            assert!(check_proper(&col).max_class_degree <= b);
        }
    }
}
