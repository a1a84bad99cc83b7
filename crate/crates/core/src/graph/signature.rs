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

use std::cmp::Ordering;

use super::{automorphisms, AutomorphismGroup, PatternGraph};
use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};

/// Canonical colour tuple of a copy, indexed by pattern edge.
pub type Signature = Vec<u32>;

/// Largest automorphism group whose elements are materialised.
const ELEMENT_CAP: u64 = 1 << 20;

/// A copy of a pattern inside a coloured `K_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouredCopy {
    /// `embedding[x]` is the host vertex of pattern vertex `x`.
    pub embedding: Vec<usize>,
    /// `colours[i]` is the host colour of pattern edge `i`.
    pub colours: Vec<u32>,
}

impl ColouredCopy {
    pub fn from_host(h: &PatternGraph, embedding: &[usize], col: &EdgeColouring) -> Result<Self> {
        if embedding.len() != h.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: h.vertex_count(),
                actual: embedding.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for &x in embedding {
            if x >= col.n() || !seen.insert(x) {
                return Err(Error::InvalidParameter(format!(
                    "embedding {embedding:?} is not injective into 0..{}",
                    col.n()
                )));
            }
        }
        let colours = h
            .edges()
            .iter()
            .map(|&(a, b)| col.colour(embedding[a], embedding[b]))
            .collect();
        Ok(ColouredCopy {
            embedding: embedding.to_vec(),
            colours,
        })
    }
}

/// Lexicographically minimal colour tuple of `copy` over all automorphism
/// images. Two copies of `h` are colour-isomorphic exactly when their
/// signatures agree.
pub fn colour_signature(h: &PatternGraph, copy: &ColouredCopy, aut: &AutomorphismGroup) -> Result<Signature> {
    let perms = aut.elements(ELEMENT_CAP)?;
    let edge_perms = edge_permutations(h, &perms);
    Ok(edge_perms
        .iter()
        .map(|ep| ep.iter().map(|&j| copy.colours[j]).collect::<Signature>())
        .min()
        .expect("group contains the identity"))
}

fn edge_permutations(h: &PatternGraph, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    perms
        .iter()
        .map(|p| {
            h.edges()
                .iter()
                .map(|&(a, b)| h.edge_index(p[a], p[b]).expect("automorphism maps edges to edges"))
                .collect()
        })
        .collect()
}

/// A pattern together with its materialised automorphism group, ready for
/// repeated signature computations.
#[derive(Clone, Debug)]
pub struct PreparedPattern {
    pattern: PatternGraph,
    group: AutomorphismGroup,
    vertex_perms: Vec<Vec<usize>>,
    edge_perms: Vec<Vec<usize>>,
    edge_orbit_reps: Vec<usize>,
}

impl PreparedPattern {
    pub fn new(pattern: &PatternGraph) -> Result<Self> {
        let group = automorphisms(pattern)?;
        let vertex_perms = group.elements(ELEMENT_CAP)?;
        let edge_perms = edge_permutations(pattern, &vertex_perms);
        let mut covered = vec![false; pattern.edge_count()];
        let mut edge_orbit_reps = Vec::new();
        for i in 0..pattern.edge_count() {
            if covered[i] {
                continue;
            }
            edge_orbit_reps.push(i);
            for ep in &edge_perms {
                covered[ep[i]] = true;
            }
        }
        Ok(PreparedPattern {
            pattern: pattern.clone(),
            group,
            vertex_perms,
            edge_perms,
            edge_orbit_reps,
        })
    }

    pub fn pattern(&self) -> &PatternGraph {
        &self.pattern
    }

    pub fn group(&self) -> &AutomorphismGroup {
        &self.group
    }

    /// Every automorphism as a vertex permutation, identity first.
    pub fn vertex_perms(&self) -> &[Vec<usize>] {
        &self.vertex_perms
    }

    /// `edge_perms()[s][i]` is the index of the image of edge `i` under
    /// automorphism `s`.
    pub fn edge_perms(&self) -> &[Vec<usize>] {
        &self.edge_perms
    }

    /// One pattern edge per orbit of the automorphism group on edges.
    pub fn edge_orbit_reps(&self) -> &[usize] {
        &self.edge_orbit_reps
    }

    /// Signature of a colour tuple indexed by pattern edge.
    pub fn signature(&self, colours: &[u32]) -> Signature {
        let best = self.best_image(colours, None);
        self.edge_perms[best].iter().map(|&j| colours[j]).collect()
    }

    /// Canonical representative of a copy: the automorphism image minimising
    /// `(colour tuple, embedding)`. Returns the signature and the
    /// corresponding embedding, whose direct colour tuple is the signature.
    pub fn canonical(&self, embedding: &[usize], colours: &[u32]) -> (Signature, Vec<usize>) {
        let best = self.best_image(colours, Some(embedding));
        let sig = self.edge_perms[best].iter().map(|&j| colours[j]).collect();
        let emb = self.vertex_perms[best].iter().map(|&x| embedding[x]).collect();
        (sig, emb)
    }

    fn best_image(&self, colours: &[u32], embedding: Option<&[usize]>) -> usize {
        let mut best = 0;
        for s in 1..self.edge_perms.len() {
            let (ep, bp) = (&self.edge_perms[s], &self.edge_perms[best]);
            let mut ord = ep
                .iter()
                .zip(bp)
                .map(|(&i, &j)| colours[i].cmp(&colours[j]))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal);
            if ord == Ordering::Equal {
                if let Some(emb) = embedding {
                    let (vp, bv) = (&self.vertex_perms[s], &self.vertex_perms[best]);
                    ord = vp
                        .iter()
                        .zip(bv)
                        .map(|(&x, &y)| emb[x].cmp(&emb[y]))
                        .find(|o| *o != Ordering::Equal)
                        .unwrap_or(Ordering::Equal);
                }
            }
            if ord == Ordering::Less {
                best = s;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_pattern;

    fn copy(colours: &[u32]) -> ColouredCopy {
        ColouredCopy {
            embedding: Vec::new(),
            colours: colours.to_vec(),
        }
    }

    #[test]
    fn single_edge() {
        let k2 = parse_pattern("K2").unwrap();
        let aut = automorphisms(&k2).unwrap();
        assert_eq!(colour_signature(&k2, &copy(&[7]), &aut).unwrap(), vec![7]);
    }

    #[test]
    fn star_leaf_swap() {
        let s2 = parse_pattern("S2").unwrap();
        let aut = automorphisms(&s2).unwrap();
        assert_eq!(colour_signature(&s2, &copy(&[5, 3]), &aut).unwrap(), vec![3, 5]);
    }

    #[test]
    fn rotated_four_cycles_agree() {
        let c4 = parse_pattern("C4").unwrap();
        let aut = automorphisms(&c4).unwrap();
        // canonical C4 edges: 01, 02, 13, 23; cyclic order 0-1-3-2-0
        let along_cycle = |c: [u32; 4]| -> Vec<u32> {
            // c lists colours of 01, 13, 32, 20
            vec![c[0], c[3], c[1], c[2]]
        };
        let a = along_cycle([1, 2, 3, 4]);
        let b = along_cycle([2, 3, 4, 1]);
        let c = along_cycle([1, 3, 2, 4]);
        let sa = colour_signature(&c4, &copy(&a), &aut).unwrap();
        let sb = colour_signature(&c4, &copy(&b), &aut).unwrap();
        let sc = colour_signature(&c4, &copy(&c), &aut).unwrap();
        assert_eq!(sa, sb);
        assert_ne!(sa, sc);
        // the signature is the minimum over all 8 images
        let prep = PreparedPattern::new(&c4).unwrap();
        assert_eq!(prep.edge_perms.len(), 8);
        let brute = prep
            .edge_perms
            .iter()
            .map(|ep| ep.iter().map(|&j| a[j]).collect::<Vec<u32>>())
            .min()
            .unwrap();
        assert_eq!(sa, brute);
        assert_eq!(prep.signature(&a), sa);
    }

    #[test]
    fn canonical_embedding_realises_signature() {
        let p4 = parse_pattern("P4").unwrap();
        let prep = PreparedPattern::new(&p4).unwrap();
        let colours = [9, 1, 4];
        let emb = [10, 11, 12, 13];
        let (sig, cemb) = prep.canonical(&emb, &colours);
        assert_eq!(sig, prep.signature(&colours));
        let direct: Vec<u32> = p4
            .edges()
            .iter()
            .map(|&(a, b)| {
                let i = p4.edge_index(a, b).unwrap();
                let mut src = None;
                for &(x, y) in p4.edges() {
                    let (hx, hy) = (emb[x], emb[y]);
                    let (ca, cb) = (cemb[a], cemb[b]);
                    if (hx == ca && hy == cb) || (hx == cb && hy == ca) {
                        src = Some(colours[p4.edge_index(x, y).unwrap()]);
                    }
                }
                let _ = i;
                src.unwrap()
            })
            .collect();
        assert_eq!(direct, sig);
    }

    #[test]
    fn edge_orbits() {
        let p4 = PreparedPattern::new(&parse_pattern("P4").unwrap()).unwrap();
        assert_eq!(p4.edge_orbit_reps().len(), 2);
        let c5 = PreparedPattern::new(&parse_pattern("C5").unwrap()).unwrap();
        assert_eq!(c5.edge_orbit_reps().len(), 1);
    }
}
