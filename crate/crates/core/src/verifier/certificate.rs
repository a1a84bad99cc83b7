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

use std::fmt::Write as _;

use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::{parse_pattern, PatternGraph, Signature};

/// `k` vertex-disjoint copies of a pattern sharing one colour signature.
///
/// Text form:
///
/// ```text
/// pattern edges:0-1,0-2
/// k 2
/// 3 0 5
/// 4 1 2
/// signature 7 9
/// ```
///
/// with one line per copy listing host vertices in pattern-vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepeatCertificate {
    pub pattern: PatternGraph,
    pub k: usize,
    pub copies: Vec<Vec<usize>>,
    pub signature: Signature,
}

impl RepeatCertificate {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "pattern {}", self.pattern.to_spec());
        let _ = writeln!(s, "k {}", self.k);
        for copy in &self.copies {
            let line: Vec<String> = copy.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        let sig: Vec<String> = self.signature.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "signature {}", sig.join(" "));
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |line: usize, reason: String| Error::MalformedCertificate { line, reason };
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        if lines.len() < 3 {
            return Err(bad(lines.len() + 1, "too few lines".into()));
        }
        let spec = lines[0]
            .strip_prefix("pattern ")
            .ok_or_else(|| bad(1, "expected `pattern <spec>`".into()))?;
        let pattern = parse_pattern(spec).map_err(|e| bad(1, e.to_string()))?;
        let k: usize = lines[1]
            .strip_prefix("k ")
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| bad(2, "expected `k <int>`".into()))?;
        let last = lines.len() - 1;
        let signature = lines[last]
            .strip_prefix("signature")
            .ok_or_else(|| bad(last + 1, "expected `signature ...` last".into()))?
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| bad(last + 1, format!("bad colour `{t}`"))))
            .collect::<Result<Vec<u32>>>()?;
        let copies = lines[2..last]
            .iter()
            .enumerate()
            .map(|(i, l)| {
                l.split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| bad(i + 3, format!("bad vertex `{t}`"))))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RepeatCertificate {
            pattern,
            k,
            copies,
            signature,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    Accept,
    Reject(String),
}

impl CertificateVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, CertificateVerdict::Accept)
    }
}

/// Re-checks a certificate against a colouring from scratch: copy count,
/// injectivity, pairwise disjointness, and that every copy realises the
/// signature under some automorphism of the pattern. The automorphism is
/// searched for directly here rather than taken from the pattern module.
pub fn verify_certificate(cert: &RepeatCertificate, col: &EdgeColouring) -> CertificateVerdict {
    let h = &cert.pattern;
    let reject = |s: String| CertificateVerdict::Reject(s);
    if cert.k < 2 || cert.copies.len() != cert.k {
        return reject(format!(
            "expected k = {} >= 2 copies, found {}",
            cert.k,
            cert.copies.len()
        ));
    }
    if cert.signature.len() != h.edge_count() {
        return reject(format!(
            "signature has {} colours, pattern has {} edges",
            cert.signature.len(),
            h.edge_count()
        ));
    }
    for (i, copy) in cert.copies.iter().enumerate() {
        if copy.len() != h.vertex_count() {
            return reject(format!(
                "copy {i} has {} vertices, pattern has {}",
                copy.len(),
                h.vertex_count()
            ));
        }
        if let Some(&x) = copy.iter().find(|&&x| x >= col.n()) {
            return reject(format!("copy {i} uses vertex {x} outside 0..{}", col.n()));
        }
        let mut sorted = copy.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return reject(format!("copy {i} is not injective"));
        }
    }
    for i in 0..cert.copies.len() {
        for j in i + 1..cert.copies.len() {
            if cert.copies[i].iter().any(|x| cert.copies[j].contains(x)) {
                return reject(format!("copies {i} and {j} share a vertex"));
            }
        }
    }
    for (i, copy) in cert.copies.iter().enumerate() {
        if !realises(h, copy, &cert.signature, col) {
            return reject(format!("copy {i} does not realise the signature"));
        }
    }
    CertificateVerdict::Accept
}

/// Is there a permutation `p` of the pattern vertices, mapping edges to
/// edges, with `colour(copy[p(a)], copy[p(b)]) == signature[i]` for every
/// pattern edge `i = {a, b}`?
fn realises(h: &PatternGraph, copy: &[usize], signature: &[u32], col: &EdgeColouring) -> bool {
    fn rec(
        h: &PatternGraph,
        copy: &[usize],
        sig: &[u32],
        col: &EdgeColouring,
        p: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let x = p.len();
        let v = h.vertex_count();
        if x == v {
            return true;
        }
        for img in 0..v {
            if used[img] {
                continue;
            }
            let ok = (0..x).all(|y| {
                if !h.has_edge(x, y) {
                    return !h.has_edge(img, p[y]);
                }
                if !h.has_edge(img, p[y]) {
                    return false;
                }
                let i = h
                    .edges()
                    .iter()
                    .position(|&(a, b)| (a, b) == (y.min(x), y.max(x)))
                    .unwrap();
                col.colour(copy[img], copy[p[y]]) == sig[i]
            });
            if ok {
                used[img] = true;
                p.push(img);
                if rec(h, copy, sig, col, p, used) {
                    return true;
                }
                p.pop();
                used[img] = false;
            }
        }
        false
    }
    rec(
        h,
        copy,
        signature,
        col,
        &mut Vec::new(),
        &mut vec![false; h.vertex_count()],
    )
}
