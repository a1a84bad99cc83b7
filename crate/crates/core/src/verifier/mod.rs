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

//! Properness and boundedness checks, exact repeat detection, certificate
//! validation and the tree-repeat heuristic.

mod certificate;
pub(crate) mod enumerate;
mod repeats;
mod tree_heuristic;

use std::collections::HashMap;

pub use self::certificate::{verify_certificate, CertificateVerdict, RepeatCertificate};
pub use self::enumerate::copy_count;
pub use self::repeats::{
    find_repeats, repeat_census, DetectionMode, RepeatCensus, RepeatOutcome, DEFAULT_NODE_BUDGET,
    EXACT_MAX_HOST_VERTICES, EXACT_MAX_PATTERN_VERTICES,
};
pub use self::tree_heuristic::{tree_repeat_heuristic, HEURISTIC_MAX_HOST, HEURISTIC_MAX_K};

use crate::colouring::EdgeColouring;

/// Two like-coloured edges meeting at `vertex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperViolation {
    pub vertex: usize,
    pub colour: u32,
    pub edges: [(usize, usize); 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropernessReport {
    pub proper: bool,
    pub violation: Option<ProperViolation>,
    /// Largest degree of any colour class. The colouring is `b`-bounded
    /// exactly for `b >= max_class_degree`.
    pub max_class_degree: usize,
}

/// Checks that no two edges sharing a vertex have the same colour and
/// measures the maximum colour-class degree.
pub fn check_proper(col: &EdgeColouring) -> PropernessReport {
    let n = col.n();
    let mut count = vec![0usize; col.num_colours()];
    let mut first = vec![usize::MAX; col.num_colours()];
    let mut violation = None;
    let mut max_class_degree = 0;
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let c = col.colour(x, y) as usize;
            if count[c] == 0 {
                first[c] = y;
            }
            count[c] += 1;
            max_class_degree = max_class_degree.max(count[c]);
            if count[c] == 2 && violation.is_none() {
                let e = |a: usize, b: usize| (a.min(b), a.max(b));
                violation = Some(ProperViolation {
                    vertex: x,
                    colour: c as u32,
                    edges: [e(x, first[c]), e(x, y)],
                });
            }
        }
        for y in (0..n).filter(|&y| y != x) {
            count[col.colour(x, y) as usize] = 0;
        }
    }
    PropernessReport {
        proper: violation.is_none(),
        violation,
        max_class_degree,
    }
}

/// Three vertices each incident to both colours of a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarViolation {
    pub vertices: [usize; 3],
    pub colours: (u32, u32),
}

/// Finds three vertices incident to the same two colours, scanning vertices
/// in increasing order. `None` rules out three vertex-disjoint
/// colour-isomorphic two-edge stars, and with them 3-repeats of every tree
/// with at least two edges.
pub fn star_incidence_check(col: &EdgeColouring) -> Option<StarViolation> {
    let n = col.n();
    let mut seen: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
    for x in 0..n {
        let mut incident: Vec<u32> = (0..n).filter(|&y| y != x).map(|y| col.colour(x, y)).collect();
        incident.sort_unstable();
        incident.dedup();
        for (i, &a) in incident.iter().enumerate() {
            for &b in &incident[i + 1..] {
                let at = seen.entry((a, b)).or_default();
                at.push(x);
                if at.len() == 3 {
                    return Some(StarViolation {
                        vertices: [at[0], at[1], at[2]],
                        colours: (a, b),
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_pattern;

    /// K_4 split into its three perfect matchings.
    pub(crate) fn one_factorized_k4() -> EdgeColouring {
        EdgeColouring::from_fn(4, |u, v| match (u, v) {
            (0, 1) | (2, 3) => 0,
            (0, 2) | (1, 3) => 1,
            _ => 2,
        })
    }

    /// Round-robin 1-factorization of K_6: vertex 5 is the hub.
    fn one_factorized_k6() -> EdgeColouring {
        EdgeColouring::from_fn(6, |u, v| {
            if v == 5 {
                (2 * u % 5) as u64
            } else {
                ((u + v) % 5) as u64
            }
        })
    }

    #[test]
    fn properness_examples() {
        let r = check_proper(&EdgeColouring::rainbow(4));
        assert!(r.proper);
        assert_eq!(r.max_class_degree, 1);
        let bad = EdgeColouring::from_fn(3, |u, v| if (u, v) == (1, 2) { 1 } else { 0 });
        let r = check_proper(&bad);
        assert!(!r.proper);
        let v = r.violation.unwrap();
        assert_eq!(v.vertex, 0);
        assert_eq!(v.edges, [(0, 1), (0, 2)]);
        assert_eq!(r.max_class_degree, 2);
        assert!(check_proper(&one_factorized_k6()).proper);
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_incidence_check(&EdgeColouring::rainbow(7)), None);
        let v = star_incidence_check(&one_factorized_k6()).expect("two perfect matchings meet all six vertices");
        let col = one_factorized_k6();
        for &x in &v.vertices {
            let inc: Vec<u32> = (0..6).filter(|&y| y != x).map(|y| col.colour(x, y)).collect();
            assert!(inc.contains(&v.colours.0) && inc.contains(&v.colours.1));
        }
    }

    #[test]
    fn one_factorization_has_single_edge_repeat() {
        let col = one_factorized_k4();
        let k2 = parse_pattern("K2").unwrap();
        let out = find_repeats(&col, &k2, 2, DetectionMode::Exact).unwrap();
        let cert = out.certificate().expect("two edges of a colour class");
        assert_eq!(cert.signature, vec![0]);
        assert!(verify_certificate(cert, &col).is_accept());
        let mut copies = cert.copies.clone();
        copies.iter_mut().for_each(|c| c.sort());
        copies.sort();
        assert_eq!(copies, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn rainbow_has_no_repeats() {
        let col = EdgeColouring::rainbow(8);
        for spec in ["K2", "P3", "C4"] {
            let h = parse_pattern(spec).unwrap();
            assert!(find_repeats(&col, &h, 2, DetectionMode::Exact).unwrap().is_absent());
        }
    }

    #[test]
    fn certificate_rejections() {
        let col = one_factorized_k4();
        let k2 = parse_pattern("K2").unwrap();
        let cert = find_repeats(&col, &k2, 2, DetectionMode::Exact)
            .unwrap()
            .certificate()
            .unwrap()
            .clone();
        let mut overlap = cert.clone();
        overlap.copies[1] = vec![overlap.copies[0][1], 3 - overlap.copies[0][1] % 3];
        assert!(!verify_certificate(&overlap, &col).is_accept());
        let recoloured = EdgeColouring::from_fn(4, |u, v| match (u, v) {
            (0, 1) => 3,
            (2, 3) => 0,
            (0, 2) | (1, 3) => 1,
            _ => 2,
        });
        assert!(!verify_certificate(&cert, &recoloured).is_accept());
        let text = cert.to_text();
        assert_eq!(RepeatCertificate::from_text(&text).unwrap(), cert);
    }

    #[test]
    fn limits_are_enforced() {
        let col = EdgeColouring::rainbow(61);
        let k2 = parse_pattern("K2").unwrap();
        assert!(find_repeats(&col, &k2, 2, DetectionMode::Exact).is_err());
        let big = parse_pattern("C9").unwrap();
        assert!(find_repeats(&EdgeColouring::rainbow(20), &big, 2, DetectionMode::Exact).is_err());
        assert!(
            find_repeats(&col, &k2, 2, DetectionMode::Budgeted { node_budget: 1 << 30 })
                .unwrap()
                .is_absent()
        );
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let col = EdgeColouring::from_fn(12, |u, v| ((u + v) % 3) as u64);
        let c4 = parse_pattern("C4").unwrap();
        let out = find_repeats(&col, &c4, 3, DetectionMode::Budgeted { node_budget: 10 }).unwrap();
        assert!(matches!(out, RepeatOutcome::Unknown { .. }));
    }
}
