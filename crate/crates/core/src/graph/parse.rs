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

fn spec_err(spec: &str, reason: impl Into<String>) -> Error {
    Error::PatternSpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn parse_count(spec: &str, digits: &str) -> Result<usize> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(spec_err(spec, format!("expected a number, found `{digits}`")));
    }
    digits
        .parse()
        .map_err(|_| spec_err(spec, format!("number `{digits}` out of range")))
}

fn complete_edges(t: usize) -> Vec<(usize, usize)> {
    (0..t).flat_map(|a| (a + 1..t).map(move |b| (a, b))).collect()
}

/// Parses a pattern spec:
/// `K<t> | C<k> | P<t> | S<m> | theta:3:<l> | subdiv:K<t> | edges:<u>-<v>[,...]`.
///
/// `P<t>` is the path on `t` vertices and `S<m>` the star with `m` edges.
/// The result is canonically relabelled and tagged with the family name
/// (`edges:` specs carry no tag).
pub fn parse_pattern(spec: &str) -> Result<PatternGraph> {
    let s = spec.trim();
    if let Some(rest) = s.strip_prefix("edges:") {
        // Vertex ids are compressed to the endpoints actually used, so the
        // `edges:` form never carries isolated vertices.
        let mut edges = Vec::new();
        for tok in rest.split(',') {
            let (a, b) = tok
                .split_once('-')
                .ok_or_else(|| spec_err(spec, format!("edge `{tok}` is not of the form u-v")))?;
            let a = parse_count(spec, a.trim())?;
            let b = parse_count(spec, b.trim())?;
            edges.push((a, b));
        }
        let mut ids: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        ids.sort_unstable();
        ids.dedup();
        let local = |x: usize| ids.binary_search(&x).unwrap();
        let edges: Vec<_> = edges.iter().map(|&(a, b)| (local(a), local(b))).collect();
        return PatternGraph::new(ids.len(), &edges, None);
    }
    if let Some(rest) = s.strip_prefix("theta:") {
        let (len, paths) = rest
            .split_once(':')
            .ok_or_else(|| spec_err(spec, "expected theta:3:<l>"))?;
        if len != "3" {
            return Err(spec_err(spec, "only theta graphs with paths of length 3 are supported"));
        }
        let l = parse_count(spec, paths)?;
        if l == 0 {
            return Err(spec_err(spec, "theta graph needs at least one path"));
        }
        // endpoints 0 and 1, path i runs 0 - (2+2i) - (3+2i) - 1
        let mut edges = Vec::with_capacity(3 * l);
        for i in 0..l {
            let (x, y) = (2 + 2 * i, 3 + 2 * i);
            edges.extend([(0, x), (x, y), (y, 1)]);
        }
        return PatternGraph::new(2 + 2 * l, &edges, Some(format!("theta:3:{l}")));
    }
    if let Some(rest) = s.strip_prefix("subdiv:K") {
        let t = parse_count(spec, rest)?;
        if t < 2 {
            return Err(spec_err(spec, "subdivided clique needs t >= 2"));
        }
        let mut edges = Vec::new();
        for (i, (a, b)) in complete_edges(t).into_iter().enumerate() {
            let mid = t + i;
            edges.push((a, mid));
            edges.push((mid, b));
        }
        let v = t + t * (t - 1) / 2;
        return PatternGraph::new(v, &edges, Some(format!("subdiv:K{t}")));
    }
    let mut chars = s.chars();
    let family = chars.next().ok_or_else(|| spec_err(spec, "empty pattern spec"))?;
    let t = parse_count(spec, chars.as_str())?;
    let name = Some(format!("{family}{t}"));
    match family {
        'K' => {
            if t < 2 {
                return Err(spec_err(spec, "K<t> needs t >= 2"));
            }
            PatternGraph::new(t, &complete_edges(t), name)
        }
        'C' => {
            if t < 3 {
                return Err(spec_err(spec, "C<k> needs k >= 3"));
            }
            let edges: Vec<_> = (0..t).map(|i| (i, (i + 1) % t)).collect();
            PatternGraph::new(t, &edges, name)
        }
        'P' => {
            if t < 2 {
                return Err(spec_err(spec, "P<t> needs t >= 2 vertices"));
            }
            let edges: Vec<_> = (0..t - 1).map(|i| (i, i + 1)).collect();
            PatternGraph::new(t, &edges, name)
        }
        'S' => {
            if t < 1 {
                return Err(spec_err(spec, "S<m> needs m >= 1 edges"));
            }
            let edges: Vec<_> = (1..=t).map(|i| (0, i)).collect();
            PatternGraph::new(t + 1, &edges, name)
        }
        _ => Err(spec_err(spec, format!("unknown family `{family}`"))),
    }
}
