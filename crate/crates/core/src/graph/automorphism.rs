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

use super::PatternGraph;
use crate::error::{Error, Result};

/// Largest pattern accepted by [`automorphisms`].
pub const MAX_AUTOMORPHISM_VERTICES: usize = 12;

/// Automorphism group of a pattern, stored as a stabilizer chain.
///
/// Level `i` of the chain holds one permutation for every image of vertex `i`
/// under the pointwise stabilizer of `0..i`. Every group element factors
/// uniquely as `t_0 ∘ t_1 ∘ … ∘ t_{v-1}` with `t_i` taken from level `i`.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    v: usize,
    transversals: Vec<Vec<Vec<usize>>>,
    order: u64,
}

impl AutomorphismGroup {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.v
    }

    /// Non-identity coset representatives; together they generate the group.
    pub fn generators(&self) -> Vec<Vec<usize>> {
        let id: Vec<usize> = (0..self.v).collect();
        self.transversals
            .iter()
            .flatten()
            .filter(|p| **p != id)
            .cloned()
            .collect()
    }

    /// Every group element, identity first. Fails when the group is larger
    /// than `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Vec<usize>>> {
        if self.order > cap {
            return Err(Error::InvalidParameter(format!(
                "automorphism group of order {} exceeds the element cap {cap}",
                self.order
            )));
        }
        let mut elems: Vec<Vec<usize>> = vec![(0..self.v).collect()];
        for level in self.transversals.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.len());
            for t in level {
                for e in &elems {
                    next.push(e.iter().map(|&x| t[x]).collect());
                }
            }
            elems = next;
        }
        Ok(elems)
    }
}

fn is_partial_automorphism(h: &PatternGraph, perm: &[usize], upto: usize) -> bool {
    let x = upto;
    (0..x).all(|y| h.has_edge(x, y) == h.has_edge(perm[x], perm[y]))
}

fn extend(h: &PatternGraph, perm: &mut Vec<usize>, used: &mut u64) -> bool {
    let x = perm.len();
    if x == h.vertex_count() {
        return true;
    }
    for img in 0..h.vertex_count() {
        if *used >> img & 1 == 1 || h.degree(img) != h.degree(x) {
            continue;
        }
        perm.push(img);
        if is_partial_automorphism(h, perm, x) {
            *used |= 1 << img;
            if extend(h, perm, used) {
                return true;
            }
            *used &= !(1u64 << img);
        }
        perm.pop();
    }
    false
}

/// Exact automorphism group of `h` by backtracking over vertex permutations
/// that preserve adjacency. Patterns above
/// [`MAX_AUTOMORPHISM_VERTICES`] vertices are rejected.
pub fn automorphisms(h: &PatternGraph) -> Result<AutomorphismGroup> {
    let v = h.vertex_count();
    if v > MAX_AUTOMORPHISM_VERTICES {
        return Err(Error::PatternTooLarge {
            vertices: v,
            limit: MAX_AUTOMORPHISM_VERTICES,
        });
    }
    let mut transversals = Vec::with_capacity(v);
    let mut order = 1u64;
    for i in 0..v {
        let mut level = Vec::new();
        for w in i..v {
            let mut perm: Vec<usize> = (0..i).collect();
            perm.push(w);
            if !is_partial_automorphism(h, &perm, i) || h.degree(w) != h.degree(i) {
                continue;
            }
            let mut used = perm.iter().fold(0u64, |m, &x| m | 1 << x);
            if extend(h, &mut perm, &mut used) {
                level.push(perm);
            }
        }
        order *= level.len() as u64;
        transversals.push(level);
    }
    Ok(AutomorphismGroup { v, transversals, order })
}
