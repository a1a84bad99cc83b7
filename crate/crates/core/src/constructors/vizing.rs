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

//! Refinement of a `b`-bounded colouring into a proper one.
//!
//! Every colour class is a graph of maximum degree at most `b`; the
//! Misra–Gries fan/alternating-path algorithm edge-colours it properly with
//! at most `b + 1` colours. New colours are numbered by `(old colour,
//! subclass)` so the output does not depend on how classes are scheduled.

use rayon::prelude::*;

use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};

/// Proper edge-colouring of a simple graph with at most `Δ + 1` colours.
struct MisraGries {
    /// `at[x][c]`: the neighbour joined to `x` by an edge of colour `c`.
    at: Vec<Vec<Option<usize>>>,
}

impl MisraGries {
    fn new(vertices: usize, palette: usize) -> Self {
        MisraGries {
            at: vec![vec![None; palette]; vertices],
        }
    }

    fn colour_of(&self, x: usize, y: usize) -> Option<usize> {
        self.at[x].iter().position(|&z| z == Some(y))
    }

    fn free(&self, x: usize) -> usize {
        self.at[x]
            .iter()
            .position(Option::is_none)
            .expect("palette exceeds degree")
    }

    fn is_free(&self, x: usize, c: usize) -> bool {
        self.at[x][c].is_none()
    }

    fn set(&mut self, x: usize, y: usize, c: usize) {
        self.at[x][c] = Some(y);
        self.at[y][c] = Some(x);
    }

    fn clear(&mut self, x: usize, y: usize, c: usize) {
        self.at[x][c] = None;
        self.at[y][c] = None;
    }

    fn colour_edge(&mut self, u: usize, v: usize, adj: &[Vec<usize>]) {
        // maximal fan of u starting at v
        let mut fan = vec![v];
        let mut in_fan = vec![false; self.at.len()];
        in_fan[v] = true;
        loop {
            let last = *fan.last().unwrap();
            let next = adj[u]
                .iter()
                .copied()
                .find(|&w| !in_fan[w] && self.colour_of(u, w).is_some_and(|c| self.is_free(last, c)));
            match next {
                Some(w) => {
                    in_fan[w] = true;
                    fan.push(w);
                }
                None => break,
            }
        }
        let c = self.free(u);
        let d = self.free(*fan.last().unwrap());

        // invert the cd-path starting at u
        if c != d {
            let mut path = Vec::new();
            let (mut x, mut cur) = (u, d);
            while let Some(y) = self.at[x][cur] {
                path.push((x, y, cur));
                x = y;
                cur = if cur == c { d } else { c };
            }
            for &(x, y, col) in &path {
                self.clear(x, y, col);
            }
            for &(x, y, col) in &path {
                self.set(x, y, if col == c { d } else { c });
            }
        }

        // the first fan prefix ending at a vertex where d is free
        let mut end = 0;
        for i in 0..fan.len() {
            if i > 0 {
                let ok = self
                    .colour_of(u, fan[i])
                    .is_some_and(|col| self.is_free(fan[i - 1], col));
                if !ok {
                    break;
                }
            }
            if self.is_free(fan[i], d) {
                end = i;
                break;
            }
        }
        // rotate the prefix and colour the last fan edge with d
        for i in 0..end {
            let col = self.colour_of(u, fan[i + 1]).unwrap();
            self.clear(u, fan[i + 1], col);
            self.set(u, fan[i], col);
        }
        self.set(u, fan[end], d);
    }
}

/// Colours the edges of one class properly; returns the subclass index of
/// each edge, in input order.
fn split_class(edges: &[(usize, usize)], n: usize, b: usize) -> Vec<usize> {
    let mut local = vec![usize::MAX; n];
    let mut verts = 0;
    for &(x, y) in edges {
        for z in [x, y] {
            if local[z] == usize::MAX {
                local[z] = verts;
                verts += 1;
            }
        }
    }
    let mut adj = vec![Vec::new(); verts];
    for &(x, y) in edges {
        adj[local[x]].push(local[y]);
        adj[local[y]].push(local[x]);
    }
    let mut mg = MisraGries::new(verts, b + 1);
    for &(x, y) in edges {
        mg.colour_edge(local[x], local[y], &adj);
    }
    edges
        .iter()
        .map(|&(x, y)| mg.colour_of(local[x], local[y]).unwrap())
        .collect()
}

/// Refines a `b`-bounded colouring into a proper one with at most
/// `(b + 1) * C` colours. Every new class is contained in an old class.
pub fn vizing_refine(col: &EdgeColouring, b: usize) -> Result<EdgeColouring> {
    let n = col.n();
    let classes = col.classes();
    for (c, class) in classes.iter().enumerate() {
        let mut deg = vec![0usize; n];
        for &(x, y) in class {
            deg[x] += 1;
            deg[y] += 1;
        }
        if let Some((vertex, &degree)) = deg.iter().enumerate().find(|(_, &d)| d > b) {
            return Err(Error::DegreeBoundViolated {
                colour: c as u32,
                vertex,
                degree,
                bound: b,
            });
        }
    }
    let splits: Vec<Vec<usize>> = classes.par_iter().map(|class| split_class(class, n, b)).collect();
    let mut labels = vec![0u64; col.num_edges()];
    let stride = b as u64 + 1;
    for (c, (class, split)) in classes.iter().zip(&splits).enumerate() {
        for (&(x, y), &s) in class.iter().zip(split) {
            labels[crate::colouring::pair_index(n, x, y)] = c as u64 * stride + s as u64;
        }
    }
    let mut out = EdgeColouring::from_raw_labels(n, &labels);
    for (key, value) in col.meta() {
        out.set_meta(key.clone(), value);
    }
    out.set_meta("refine_b", b);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::seeded_rng;
    use crate::verifier::check_proper;
    use rand::Rng;

    fn refines(fine: &EdgeColouring, coarse: &EdgeColouring) -> bool {
        let mut map = vec![None; fine.num_colours()];
        fine.edges().zip(coarse.colours()).all(|((_, _, f), &c)| {
            let slot = &mut map[f as usize];
            *slot.get_or_insert(c) == c
        })
    }

    #[test]
    fn proper_input_keeps_its_classes() {
        let col = EdgeColouring::from_fn(7, |u, v| ((u + v) % 7) as u64);
        let out = vizing_refine(&col, 1).unwrap();
        assert_eq!(out.num_colours(), 7);
        assert_eq!(out.colours(), col.colours());
    }

    #[test]
    fn path_class_splits_in_two() {
        // edges 01 and 12 share colour 0; all others distinct
        let col = EdgeColouring::from_fn(4, |u, v| {
            if (u, v) == (0, 1) || (u, v) == (1, 2) {
                0
            } else {
                (u * 4 + v) as u64
            }
        });
        let out = vizing_refine(&col, 2).unwrap();
        assert!(check_proper(&out).proper);
        assert_eq!(out.num_colours(), col.num_colours() + 1);
        assert!(refines(&out, &col));
    }

    #[test]
    fn rejects_degree_above_bound() {
        let col = EdgeColouring::from_fn(5, |_, _| 0);
        assert!(matches!(
            vizing_refine(&col, 3),
            Err(Error::DegreeBoundViolated { degree: 4, .. })
        ));
    }

    #[test]
    fn random_bounded_colourings() {
        let mut rng = seeded_rng(3);
        for _ in 0..50 {
            let n = rng.gen_range(4..=10);
            let b = rng.gen_range(1..=4);
            let col = crate::constructors::random_bounded_colouring(n, b, &mut rng);
            assert!(check_proper(&col).max_class_degree <= b);
            let out = vizing_refine(&col, b).unwrap();
            assert!(check_proper(&out).proper);
            assert!(out.num_colours() <= (b + 1) * col.num_colours());
            assert!(refines(&out, &col));
        }
    }
}
