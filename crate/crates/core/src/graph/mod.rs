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

//! Pattern graphs `H`, their automorphisms, and colour signatures of copies
//! of `H` inside a coloured complete graph.

mod automorphism;
mod canon;
mod parse;
mod signature;

use std::fmt;

pub use self::automorphism::{automorphisms, AutomorphismGroup, MAX_AUTOMORPHISM_VERTICES};
pub use self::parse::parse_pattern;
pub use self::signature::{colour_signature, ColouredCopy, PreparedPattern, Signature};

use crate::error::{Error, Result};

/// Largest vertex count accepted for a pattern graph.
pub const MAX_PATTERN_VERTICES: usize = 64;

/// A small simple graph used as the forbidden pattern.
///
/// Vertices are `0..v`. Construction always relabels the vertices so that the
/// sorted edge list is lexicographically minimal over all relabellings, so two
/// isomorphic patterns compare equal.
#[derive(Clone, Debug)]
pub struct PatternGraph {
    v: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
    name: Option<String>,
}

/// Equality is structural: the display name does not take part.
impl PartialEq for PatternGraph {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.edges == other.edges
    }
}

impl Eq for PatternGraph {}

impl std::hash::Hash for PatternGraph {
    fn hash<S: std::hash::Hasher>(&self, state: &mut S) {
        self.v.hash(state);
        self.edges.hash(state);
    }
}

impl PatternGraph {
    /// Builds a pattern from an edge list, validating and canonically
    /// relabelling it.
    pub fn new(v: usize, edges: &[(usize, usize)], name: Option<String>) -> Result<Self> {
        if v > MAX_PATTERN_VERTICES {
            return Err(Error::PatternTooLarge {
                vertices: v,
                limit: MAX_PATTERN_VERTICES,
            });
        }
        if edges.is_empty() {
            return Err(Error::InvalidPattern("empty edge list".into()));
        }
        let mut adj = vec![0u64; v];
        for &(a, b) in edges {
            if a >= v || b >= v {
                return Err(Error::InvalidPattern(format!(
                    "edge {a}-{b} has an endpoint outside 0..{v}"
                )));
            }
            if a == b {
                return Err(Error::InvalidPattern(format!("self-loop at {a}")));
            }
            if adj[a] >> b & 1 == 1 {
                return Err(Error::InvalidPattern(format!("duplicate edge {a}-{b}")));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        let order = canon::canonical_order(&adj);
        let mut label = vec![0usize; v];
        for (l, &orig) in order.iter().enumerate() {
            label[orig] = l;
        }
        let mut canon_edges: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (label[a], label[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        canon_edges.sort_unstable();
        let mut canon_adj = vec![0u64; v];
        for &(a, b) in &canon_edges {
            canon_adj[a] |= 1 << b;
            canon_adj[b] |= 1 << a;
        }
        Ok(PatternGraph {
            v,
            edges: canon_edges,
            adj: canon_adj,
            name,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, sorted, each pair with `a < b`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.v && b < self.v && self.adj[a] >> b & 1 == 1
    }

    /// Neighbourhood bitmask of `a`.
    pub fn neighbours(&self, a: usize) -> u64 {
        self.adj[a]
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj[a].count_ones() as usize
    }

    /// Index of edge `{a, b}` in [`edges`](Self::edges).
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    /// Serializes to the `edges:` form of the pattern grammar.
    pub fn to_spec(&self) -> String {
        let body: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        format!("edges:{}", body.join(","))
    }

    /// Family tag if present, otherwise the `edges:` form. Contains no
    /// whitespace.
    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => self.to_spec(),
        }
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.v {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let x = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[x] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            seen |= comp;
            out.push(bits(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Two-colours each component by BFS; `None` when an odd cycle exists.
    pub fn two_colouring(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.v];
        for s in 0..self.v {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in bits(self.adj[x]) {
                    if side[y] == u8::MAX {
                        side[y] = 1 - side[x];
                        queue.push_back(y);
                    } else if side[y] == side[x] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components().len() == self.v
    }

    pub fn contains_cycle(&self) -> bool {
        !self.is_forest()
    }

    /// The pattern induced on `vertices`, keeping only pairs inside the set.
    /// Returns `None` when no edge survives.
    pub fn induced(&self, vertices: &[usize]) -> Option<PatternGraph> {
        let mut edges = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    edges.push((i, j));
                }
            }
        }
        PatternGraph::new(vertices.len(), &edges, None).ok()
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub(crate) fn bits(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Structural class of a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternClass {
    Forest,
    BipartiteWithCycle,
    NonBipartite,
}

impl fmt::Display for PatternClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternClass::Forest => "forest",
            PatternClass::BipartiteWithCycle => "bipartite_with_cycle",
            PatternClass::NonBipartite => "non_bipartite",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentInfo {
    pub vertices: Vec<usize>,
    pub edge_count: usize,
}

impl ComponentInfo {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: PatternClass,
    pub components: Vec<ComponentInfo>,
}

/// Places `h` in the forest / bipartite-with-cycle / non-bipartite trichotomy
/// and lists its connected components.
pub fn classify(h: &PatternGraph) -> Classification {
    let class = if !h.is_bipartite() {
        PatternClass::NonBipartite
    } else if h.is_forest() {
        PatternClass::Forest
    } else {
        PatternClass::BipartiteWithCycle
    };
    let components = h
        .components()
        .into_iter()
        .map(|vertices| {
            let mask = vertices.iter().fold(0u64, |m, &x| m | 1 << x);
            let twice: u32 = vertices.iter().map(|&x| (h.adj[x] & mask).count_ones()).sum();
            ComponentInfo {
                vertices,
                edge_count: twice as usize / 2,
            }
        })
        .collect();
    Classification { class, components }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(PatternGraph::new(3, &[(0, 0)], None).is_err());
        assert!(PatternGraph::new(3, &[(0, 1), (1, 0)], None).is_err());
        assert!(PatternGraph::new(3, &[(0, 3)], None).is_err());
        assert!(PatternGraph::new(3, &[], None).is_err());
    }

    #[test]
    fn classify_examples() {
        let p4 = parse_pattern("P4").unwrap();
        let c6 = parse_pattern("C6").unwrap();
        let c5 = parse_pattern("C5").unwrap();
        assert_eq!(classify(&p4).class, PatternClass::Forest);
        assert_eq!(classify(&c6).class, PatternClass::BipartiteWithCycle);
        assert_eq!(classify(&c5).class, PatternClass::NonBipartite);
    }

    #[test]
    fn components_of_disjoint_union() {
        let h = parse_pattern("edges:0-1,2-3,3-4,4-2").unwrap();
        let c = classify(&h);
        assert_eq!(c.class, PatternClass::NonBipartite);
        let mut sizes: Vec<(usize, usize)> = c
            .components
            .iter()
            .map(|ci| (ci.vertex_count(), ci.edge_count))
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![(2, 1), (3, 3)]);
    }

    #[test]
    fn canonical_relabelling_identifies_isomorphic_inputs() {
        let a = PatternGraph::new(4, &[(0, 1), (1, 2), (2, 3)], None).unwrap();
        let b = PatternGraph::new(4, &[(3, 0), (0, 2), (2, 1)], None).unwrap();
        assert_eq!(a.edges(), b.edges());
    }
}
