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

//! Edge-colourings of `K_n` and the `rfc v1` text format.
//!
//! ```text
//! rfc v1
//! n=<int> colours=<int>
//! u v c            one line per edge, u < v, lexicographic order
//! # key=value      trailing metadata, keys sorted
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Index of the unordered pair `{u, v}` of `K_n` in lexicographic order.
#[inline]
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    debug_assert!(b < n && a != b);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// A total colouring of the edges of `K_n` with colour ids `0..C`, every id
/// in use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColouring {
    n: usize,
    colours: Vec<u32>,
    num_colours: usize,
    meta: BTreeMap<String, String>,
}

impl EdgeColouring {
    /// Builds a colouring from arbitrary raw labels, one per edge in
    /// lexicographic order. Labels are compacted to `0..C` preserving their
    /// relative order.
    pub fn from_raw_labels(n: usize, labels: &[u64]) -> Self {
        assert_eq!(labels.len(), n * n.saturating_sub(1) / 2, "one label per edge");
        let mut distinct: Vec<u64> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let colours = labels
            .iter()
            .map(|l| distinct.binary_search(l).unwrap() as u32)
            .collect();
        EdgeColouring {
            n,
            colours,
            num_colours: distinct.len(),
            meta: BTreeMap::new(),
        }
    }

    /// Colours edge `{u, v}` (u < v) with `f(u, v)` and compacts.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut labels = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                labels.push(f(u, v));
            }
        }
        Self::from_raw_labels(n, &labels)
    }

    /// Every edge in its own colour.
    pub fn rainbow(n: usize) -> Self {
        let mut col = Self::from_fn(n, |u, v| pair_index(n, u, v) as u64);
        col.set_meta("family", "rainbow");
        col
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_colours(&self) -> usize {
        self.num_colours
    }

    pub fn num_edges(&self) -> usize {
        self.colours.len()
    }

    #[inline]
    pub fn colour(&self, u: usize, v: usize) -> u32 {
        self.colours[pair_index(self.n, u, v)]
    }

    /// Colours of all edges in lexicographic order.
    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    /// Edges `(u, v, c)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .zip(self.colours.iter())
            .map(|((u, v), &c)| (u, v, c))
    }

    /// Edge lists of every colour class.
    pub fn classes(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.num_colours];
        for (u, v, c) in self.edges() {
            out[c as usize].push((u, v));
        }
        out
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_colours];
        for &c in &self.colours {
            out[c as usize] += 1;
        }
        out
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.get(key).map(String::as_str)
    }

    pub fn set_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.meta.insert(key.into(), value.to_string());
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.set_meta(key, value);
        self
    }

    /// Restriction to the vertices `0..m`, recompacted. Metadata is kept.
    pub fn restrict(&self, m: usize) -> Self {
        assert!(m <= self.n);
        let mut out = Self::from_fn(m, |u, v| self.colour(u, v) as u64);
        out.meta = self.meta.clone();
        out
    }

    /// Renders the colouring in `rfc v1` format.
    pub fn to_rfc(&self) -> String {
        let mut s = String::with_capacity(16 + self.colours.len() * 12);
        s.push_str("rfc v1\n");
        let _ = writeln!(s, "n={} colours={}", self.n, self.num_colours);
        for (u, v, c) in self.edges() {
            let _ = writeln!(s, "{u} {v} {c}");
        }
        for (k, v) in &self.meta {
            let _ = writeln!(s, "# {k}={v}");
        }
        s
    }

    /// Parses an `rfc v1` document. Edge lines must be complete, sorted and
    /// use every colour in `0..colours`.
    pub fn from_rfc(text: &str) -> Result<Self> {
        let bad = |line: usize, reason: String| Error::MalformedColouring { line, reason };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, "rfc v1")) => {}
            Some((i, other)) => return Err(bad(i, format!("expected `rfc v1`, found `{other}`"))),
            None => return Err(bad(1, "empty input".into())),
        }
        let (hl, header) = lines.next().ok_or_else(|| bad(2, "missing header".into()))?;
        let (n, num_colours) = parse_header(header).ok_or_else(|| bad(hl, format!("bad header `{header}`")))?;
        let expected = n * n.saturating_sub(1) / 2;
        let mut colours = Vec::with_capacity(expected);
        let mut meta = BTreeMap::new();
        let mut next = (0usize, 1usize);
        for (i, line) in lines {
            if let Some(rest) = line.strip_prefix('#') {
                let (k, v) = rest
                    .trim_start()
                    .split_once('=')
                    .ok_or_else(|| bad(i, format!("metadata line without `=`: `{line}`")))?;
                meta.insert(k.to_string(), v.to_string());
                continue;
            }
            if !meta.is_empty() {
                return Err(bad(i, "edge line after metadata".into()));
            }
            let nums: Vec<&str> = line.split(' ').collect();
            let parsed: Option<Vec<usize>> = if nums.len() == 3 {
                nums.iter().map(|t| t.parse().ok()).collect()
            } else {
                None
            };
            let p = parsed.ok_or_else(|| bad(i, format!("expected `u v c`, found `{line}`")))?;
            if colours.len() >= expected || (p[0], p[1]) != next {
                return Err(bad(i, format!("edge {} {} out of order", p[0], p[1])));
            }
            if p[2] >= num_colours {
                return Err(bad(i, format!("colour {} not below {num_colours}", p[2])));
            }
            colours.push(p[2] as u32);
            next = if next.1 + 1 < n {
                (next.0, next.1 + 1)
            } else {
                (next.0 + 1, next.0 + 2)
            };
        }
        if colours.len() != expected {
            return Err(bad(0, format!("expected {expected} edges, found {}", colours.len())));
        }
        let mut used = vec![false; num_colours];
        for &c in &colours {
            used[c as usize] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(bad(0, format!("colour {c} is never used")));
        }
        Ok(EdgeColouring {
            n,
            colours,
            num_colours,
            meta,
        })
    }
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let (a, b) = line.split_once(' ')?;
    let n = a.strip_prefix("n=")?.parse().ok()?;
    let c = b.strip_prefix("colours=")?.parse().ok()?;
    Some((n, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_is_lexicographic() {
        let n = 6;
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                assert_eq!(pair_index(n, u, v), i);
                assert_eq!(pair_index(n, v, u), i);
                i += 1;
            }
        }
    }

    #[test]
    fn compaction_preserves_order() {
        let col = EdgeColouring::from_raw_labels(3, &[50, 7, 50]);
        assert_eq!(col.colours(), &[1, 0, 1]);
        assert_eq!(col.num_colours(), 2);
    }

    #[test]
    fn rfc_layout() {
        let col = EdgeColouring::from_raw_labels(3, &[0, 1, 2]).with_meta("family", "test");
        assert_eq!(
            col.to_rfc(),
            "rfc v1\nn=3 colours=3\n0 1 0\n0 2 1\n1 2 2\n# family=test\n"
        );
        assert_eq!(EdgeColouring::from_rfc(&col.to_rfc()).unwrap(), col);
    }

    #[test]
    fn rfc_rejects_malformed() {
        let good = "rfc v1\nn=3 colours=2\n0 1 0\n0 2 1\n1 2 0\n";
        assert!(EdgeColouring::from_rfc(good).is_ok());
        for bad in [
            "rfc v2\nn=3 colours=2\n0 1 0\n0 2 1\n1 2 0\n",
            "rfc v1\nn=3 colours=2\n0 2 1\n0 1 0\n1 2 0\n",
            "rfc v1\nn=3 colours=2\n0 1 0\n0 2 1\n",
            "rfc v1\nn=3 colours=3\n0 1 0\n0 2 1\n1 2 0\n",
            "rfc v1\nn=3 colours=2\n0 1 0\n0 2 2\n1 2 0\n",
            "rfc v1\nn=3 colours=2\n0 1 0\n# a=b\n0 2 1\n1 2 0\n",
            "rfc v1\nn=3\n0 1 0\n0 2 1\n1 2 0\n",
        ] {
            assert!(EdgeColouring::from_rfc(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn restriction_recompacts() {
        let col = EdgeColouring::from_fn(4, |u, v| (u + v) as u64);
        let r = col.restrict(3);
        assert_eq!(r.n(), 3);
        assert_eq!(r.colours(), &[0, 1, 2]);
    }
}
