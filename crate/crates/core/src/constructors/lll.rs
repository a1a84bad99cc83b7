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

//! Random colourings repaired by Moser–Tardos resampling, then refined.
//!
//! Every edge receives a uniform colour from `N = floor(1/p)` colours with
//! `p = γ·min(1/n, n^{-(ℓ-1)/((k-1)e)})` and `ℓ = kv - 1`. Two kinds of bad
//! events are repaired by resampling their edges: `k` vertex-disjoint
//! colour-isomorphic copies of `H` (whatever their colouring), and a
//! monochromatic star with `ℓ` edges. When no bad event is left the colouring
//! is `(kv-2)`-bounded and refinement makes it proper without creating
//! repeats.
//!
//! Event checks are localised by colour. Every copy in a bad event of the
//! first kind carries the same multiset of colours, so a new event always
//! contains a freshly resampled colour. The loop keeps a set of dirty
//! colours and only re-examines copies through edges of those colours.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use super::vizing_refine;
use crate::colouring::{pair_index, EdgeColouring};
use crate::error::{Error, Result};
use crate::field::{seeded_rng, SeededRng};
use crate::graph::{PatternGraph, PreparedPattern, Signature};
use crate::packing::{find_disjoint, NodeBudget};
use crate::verifier::enumerate::{extend_anchor, AnchorPlan};

/// Tunables of the resampling loop.
#[derive(Clone, Debug, PartialEq)]
pub struct LllParams {
    /// The constant `γ` in the colour budget.
    pub gamma: f64,
    /// Resamplings allowed per attempt.
    pub max_resamples: u64,
    /// Attempts; each failed attempt doubles the number of colours.
    pub max_attempts: u32,
}

impl Default for LllParams {
    fn default() -> Self {
        LllParams {
            gamma: 0.25,
            max_resamples: 20_000,
            max_attempts: 4,
        }
    }
}

/// The number of raw colours `floor(1/p)` before any back-off.
pub fn lll_colour_budget(n: usize, h: &PatternGraph, k: usize, gamma: f64) -> u64 {
    let (v, e) = (h.vertex_count() as f64, h.edge_count() as f64);
    let ell = k as f64 * v - 1.0;
    let nf = n as f64;
    let p = gamma * (1.0 / nf).min(nf.powf(-(ell - 1.0) / ((k as f64 - 1.0) * e)));
    (1.0 / p).floor().max(1.0) as u64
}

enum Event {
    Star {
        colour: u32,
        edges: Vec<(usize, usize)>,
    },
    Repeat {
        signature: Signature,
        edges: Vec<(usize, usize)>,
    },
}

impl Event {
    fn edges(&self) -> &[(usize, usize)] {
        match self {
            Event::Star { edges, .. } | Event::Repeat { edges, .. } => edges,
        }
    }

    fn describe(&self) -> String {
        match self {
            Event::Star { colour, edges } => {
                format!("monochromatic star of colour {colour} with {} edges", edges.len())
            }
            Event::Repeat { signature, .. } => format!("repeat with colour signature {signature:?}"),
        }
    }
}

struct State<'a> {
    n: usize,
    k: usize,
    ell: usize,
    prep: &'a PreparedPattern,
    plans: Vec<AnchorPlan>,
    colours: Vec<u32>,
    classes: BTreeMap<u32, BTreeSet<(usize, usize)>>,
}

impl State<'_> {
    fn colour(&self, x: usize, y: usize) -> u32 {
        self.colours[pair_index(self.n, x, y)]
    }

    fn recolour(&mut self, x: usize, y: usize, c: u32) {
        let e = (x.min(y), x.max(y));
        let idx = pair_index(self.n, x, y);
        let old = self.colours[idx];
        if let Some(set) = self.classes.get_mut(&old) {
            set.remove(&e);
            if set.is_empty() {
                self.classes.remove(&old);
            }
        }
        self.colours[idx] = c;
        self.classes.entry(c).or_default().insert(e);
    }

    fn star_event(&self, c: u32) -> Option<Event> {
        let class = self.classes.get(&c)?;
        let mut deg = vec![0usize; self.n];
        for &(x, y) in class {
            deg[x] += 1;
            deg[y] += 1;
        }
        let hub = (0..self.n).find(|&x| deg[x] >= self.ell)?;
        let edges = class
            .iter()
            .copied()
            .filter(|&(x, y)| x == hub || y == hub)
            .take(self.ell)
            .collect();
        Some(Event::Star { colour: c, edges })
    }

    /// The first bad repeat whose colours include `c`.
    fn repeat_event(&self, c: u32) -> Option<Event> {
        let class = self.classes.get(&c)?;
        let h = self.prep.pattern();
        let mut buckets: BTreeMap<Signature, BTreeSet<Vec<usize>>> = BTreeMap::new();
        let mut cols = vec![0u32; h.edge_count()];
        let budget = NodeBudget::unlimited();
        for &(x, y) in class {
            for plan in &self.plans {
                for (s, t) in [(x, y), (y, x)] {
                    extend_anchor(plan, self.n, s, t, &|_, _| true, &budget, &mut |emb| {
                        for (slot, &(a, b)) in cols.iter_mut().zip(h.edges()) {
                            *slot = self.colour(emb[a], emb[b]);
                        }
                        let (sig, cemb) = self.prep.canonical(emb, &cols);
                        buckets.entry(sig).or_default().insert(cemb);
                    });
                }
            }
        }
        for (sig, copies) in buckets.into_iter().filter(|(_, c)| c.len() >= self.k) {
            let embs: Vec<Vec<usize>> = copies.into_iter().collect();
            let sets: Vec<Vec<usize>> = embs
                .iter()
                .map(|e| {
                    let mut s = e.clone();
                    s.sort_unstable();
                    s
                })
                .collect();
            if let Some(idx) = find_disjoint(&sets, self.k, &budget) {
                let edges = idx
                    .iter()
                    .flat_map(|&i| h.edges().iter().map(move |&(a, b)| (a, b, i)))
                    .map(|(a, b, i)| (embs[i][a].min(embs[i][b]), embs[i][a].max(embs[i][b])))
                    .collect();
                return Some(Event::Repeat { signature: sig, edges });
            }
        }
        None
    }
}

fn attempt(
    n: usize,
    prep: &PreparedPattern,
    k: usize,
    palette: u64,
    max_resamples: u64,
    rng: &mut SeededRng,
) -> std::result::Result<(Vec<u32>, u64), (u64, String)> {
    let h = prep.pattern();
    let mut state = State {
        n,
        k,
        ell: k * h.vertex_count() - 1,
        prep,
        plans: prep.edge_orbit_reps().iter().map(|&e| AnchorPlan::new(h, e)).collect(),
        colours: Vec::with_capacity(n * (n - 1) / 2),
        classes: BTreeMap::new(),
    };
    for x in 0..n {
        for y in x + 1..n {
            let c = rng.gen_range(0..palette) as u32;
            state.colours.push(c);
            state.classes.entry(c).or_default().insert((x, y));
        }
    }
    let mut dirty: BTreeSet<u32> = state.classes.keys().copied().collect();
    let mut resamples = 0u64;
    while let Some(&c) = dirty.iter().next() {
        let event = state.star_event(c).or_else(|| state.repeat_event(c));
        let Some(event) = event else {
            dirty.remove(&c);
            continue;
        };
        if resamples == max_resamples {
            return Err((resamples, event.describe()));
        }
        resamples += 1;
        for &(x, y) in event.edges() {
            let fresh = rng.gen_range(0..palette) as u32;
            state.recolour(x, y, fresh);
            dirty.insert(fresh);
        }
    }
    Ok((state.colours, resamples))
}

/// A proper colouring of `K_n` without `k` vertex-disjoint colour-isomorphic
/// copies of `h`, from resampled uniform colours followed by refinement.
pub fn lll_colouring(n: usize, h: &PatternGraph, k: usize, seed: u64, params: &LllParams) -> Result<EdgeColouring> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    if !(params.gamma > 0.0 && params.gamma <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma must lie in (0, 1], got {}",
            params.gamma
        )));
    }
    let prep = PreparedPattern::new(h)?;
    let mut rng = seeded_rng(seed);
    let base = lll_colour_budget(n, h, k, params.gamma);
    let mut failure = (0, String::new());
    for attempt_no in 0..params.max_attempts {
        let palette = base.saturating_mul(1 << attempt_no).min(u32::MAX as u64);
        match attempt(n, &prep, k, palette, params.max_resamples, &mut rng) {
            Ok((colours, resamples)) => {
                let labels: Vec<u64> = colours.iter().map(|&c| c as u64).collect();
                let raw = EdgeColouring::from_raw_labels(n, &labels);
                let b = k * h.vertex_count() - 2;
                let mut col = vizing_refine(&raw, b)?;
                col.set_meta("family", "lll");
                col.set_meta("pattern", h.to_spec());
                col.set_meta("k", k);
                col.set_meta("seed", seed);
                col.set_meta("gamma", params.gamma);
                col.set_meta("palette", palette);
                col.set_meta("attempts", attempt_no + 1);
                col.set_meta("resamples", resamples);
                col.set_meta("raw_colours", raw.num_colours());
                return Ok(col);
            }
            Err(f) => failure = f,
        }
    }
    Err(Error::ResampleBudgetExhausted {
        resamples: failure.0,
        last_event: failure.1,
    })
}
