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

//! Closed-form upper and lower bounds on `f_k(n, H)`.
//!
//! Every formula is listed with the condition under which it applies,
//! re-evaluated from the pattern itself. Asymptotic statements carry only
//! their exponent (and a constant when the statement has one); bounds whose
//! constants are explicit are also evaluated at `n`, together with whether
//! `n` is large enough for the argument behind them to go through.

use std::fmt::{self, Write as _};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::graph::{classify, parse_pattern, PatternClass, PatternGraph};

pub type Exponent = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        })
    }
}

/// A leading constant: exact when rational, otherwise a float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Constant {
    Exact(Ratio<i64>),
    Approx(f64),
}

impl Constant {
    pub fn to_f64(&self) -> f64 {
        match self {
            Constant::Exact(r) => r.to_f64().unwrap(),
            Constant::Approx(x) => *x,
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Exact(r) => write!(f, "{r}"),
            Constant::Approx(x) => write!(f, "{x:.6}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    /// Growth exponent of `n`.
    pub exponent: Option<Exponent>,
    pub constant: Option<Constant>,
    /// Value at `n`, for formulas that are not purely asymptotic.
    pub value: Option<f64>,
    pub applicable: bool,
    pub condition: String,
    /// An `O`/`Ω` statement without an explicit constant.
    pub asymptotic: bool,
    /// For bounds that need `n` sufficiently large: whether this `n` is.
    pub valid_at_n: Option<bool>,
    /// Holds only up to a constant factor (disconnected patterns).
    pub up_to_theta: bool,
    pub anchor: String,
}

impl BoundEntry {
    fn new(name: impl Into<String>, kind: BoundKind, anchor: &str) -> Self {
        BoundEntry {
            name: name.into(),
            kind,
            exponent: None,
            constant: None,
            value: None,
            applicable: true,
            condition: "always".into(),
            asymptotic: false,
            valid_at_n: None,
            up_to_theta: false,
            anchor: anchor.into(),
        }
    }

    fn exponent(mut self, e: Exponent) -> Self {
        self.exponent = Some(e);
        self
    }

    fn constant(mut self, c: Constant) -> Self {
        self.constant = Some(c);
        self
    }

    fn value(mut self, v: f64) -> Self {
        self.value = Some(v);
        self
    }

    fn asymptotic(mut self) -> Self {
        self.asymptotic = true;
        self
    }

    fn when(mut self, applicable: bool, condition: impl Into<String>) -> Self {
        self.applicable = applicable;
        self.condition = condition.into();
        if !applicable {
            self.value = None;
        }
        self
    }

    fn valid(mut self, ok: bool) -> Self {
        self.valid_at_n = Some(ok);
        self
    }

    /// Usable as a numeric bound at this `n`.
    fn numeric(&self) -> Option<f64> {
        if self.applicable && !self.up_to_theta && self.valid_at_n != Some(false) {
            self.value
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub pattern: PatternGraph,
    pub class: PatternClass,
    pub v: usize,
    pub e: usize,
    /// Edge count when the pattern is a tree.
    pub m: Option<usize>,
    pub entries: Vec<BoundEntry>,
    /// Largest numeric lower bound valid at this `n` (rounded up).
    pub best_lower: u64,
    /// Smallest numeric upper bound valid at this `n`.
    pub best_upper: u64,
    /// Largest applicable lower growth exponent.
    pub lower_exponent: Exponent,
    /// Smallest applicable upper growth exponent.
    pub upper_exponent: Exponent,
    pub smallest_k_linear: Option<usize>,
    /// Existence results and open questions; never computed claims.
    pub annotations: Vec<String>,
}

fn ratio(a: i64, b: i64) -> Exponent {
    Ratio::new(a, b)
}

fn binom(n: usize, r: usize) -> u64 {
    (0..r).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// `x choose r` for real `x`.
fn binom_real(x: f64, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (x - i as f64) / (i as f64 + 1.0))
}

/// Exponent of the resampling bound: `max(1, (kv-2)/((k-1)e))`.
pub fn lll_exponent(v: usize, e: usize, k: usize) -> Exponent {
    let x = ratio((k * v) as i64 - 2, ((k - 1) * e) as i64);
    x.max(Ratio::from_integer(1))
}

/// The constant `q = (4k(km+1)(k^2-k+1))^{1/(k-1)}` of the tree lower bound.
pub fn tree_embedding_q(k: usize, m: usize) -> Constant {
    let base = (4 * k * (k * m + 1) * (k * k - k + 1)) as i64;
    if k == 2 {
        Constant::Exact(Ratio::from_integer(base))
    } else {
        Constant::Approx((base as f64).powf(1.0 / (k as f64 - 1.0)))
    }
}

/// The leading constant `1/q` of the tree lower bound `n^{k/(k-1)}/q`.
pub fn tree_embedding_constant(k: usize, m: usize) -> Constant {
    match tree_embedding_q(k, m) {
        Constant::Exact(q) => Constant::Exact(q.recip()),
        Constant::Approx(q) => Constant::Approx(1.0 / q),
    }
}

/// Whether the counting behind the tree lower bound goes through at `n`:
/// with `C = n^{k/(k-1)}/q` colours the auxiliary graph on `k`-sets must
/// have a subgraph whose greedy neighbourhood matchings reach `km+1`.
pub fn tree_embedding_valid(n: usize, k: usize, m: usize) -> bool {
    let c = (n as f64).powf(k as f64 / (k as f64 - 1.0)) * tree_embedding_constant(k, m).to_f64();
    if c < 1.0 || n < k {
        return false;
    }
    let pairs = (n * (n - 1) / 2) as f64;
    let d_avg = 2f64.powi(k as i32) * c * binom_real(pairs / c, k) / (k as f64 * binom(n, k) as f64);
    d_avg / 2.0 / (k * k - k + 1) as f64 >= (k * m + 1) as f64
}

/// The `k` from the resampling bound beyond which `f_k(n, H) = O(n)`:
/// `ceil((e-2)/(e-v))` for connected `H` with `e > v`.
pub fn smallest_k_linear(h: &PatternGraph) -> Option<usize> {
    let (v, e) = (h.vertex_count(), h.edge_count());
    if !h.is_connected() || e <= v {
        return None;
    }
    Some((e - 2).div_ceil(e - v))
}

fn strip_isolated(h: &PatternGraph) -> PatternGraph {
    let keep: Vec<usize> = (0..h.vertex_count()).filter(|&x| h.degree(x) > 0).collect();
    if keep.len() == h.vertex_count() {
        return h.clone();
    }
    h.induced(&keep).expect("pattern has an edge")
}

/// Bounds for a connected pattern; `prefix` tags entries coming from one
/// component of a larger pattern.
fn connected_entries(n: usize, h: &PatternGraph, k: usize, prefix: &str) -> Vec<BoundEntry> {
    let (v, e) = (h.vertex_count(), h.edge_count());
    let tree = h.is_forest();
    let m = e;
    let nf = n as f64;
    let name = |s: &str| format!("{prefix}{s}");
    let mut out = Vec::new();

    let tree_cond = format!("tree (v={v}, e={e})");
    let tree_lll = ratio((k * (m + 1)) as i64 - 2, ((k - 1) * m) as i64);
    out.push(
        BoundEntry::new(
            name("tree-resampling"),
            BoundKind::Upper,
            "resampling bound applied to a tree",
        )
        .exponent(tree_lll)
        .asymptotic()
        .when(tree, tree_cond.clone()),
    );

    let q = tree_embedding_constant(k, m);
    let valid = tree_embedding_valid(n, k, m);
    out.push(
        BoundEntry::new(
            name("tree-embedding"),
            BoundKind::Lower,
            "n^{k/(k-1)}/q for n sufficiently large",
        )
        .exponent(ratio(k as i64, k as i64 - 1))
        .constant(q)
        .value(nf.powf(k as f64 / (k as f64 - 1.0)) * q.to_f64())
        .valid(valid)
        .when(tree, tree_cond.clone()),
    );
    let pairs_const = Constant::Exact(ratio(1, 24 * (2 * m as i64 + 1)));
    out.push(
        BoundEntry::new(
            name("tree-pairs"),
            BoundKind::Lower,
            "n^2/(24(2m+1)) for n sufficiently large",
        )
        .exponent(ratio(2, 1))
        .constant(pairs_const)
        .value(nf * nf * pairs_const.to_f64())
        .valid(tree_embedding_valid(n, 2, m))
        .when(tree && k == 2, format!("{tree_cond}, k=2")),
    );
    out.push(
        BoundEntry::new(name("clique-matching"), BoundKind::Upper, "(1+o(1)) n^2/(2m)")
            .exponent(ratio(2, 1))
            .constant(Constant::Exact(ratio(1, 2 * m.max(1) as i64)))
            .asymptotic()
            .when(tree && k == 2 && m >= 2, format!("{tree_cond}, k=2, m>=2")),
    );
    out.push(
        BoundEntry::new(
            name("quadratic-three-repeat"),
            BoundKind::Upper,
            "f_3(n,T) = O(n^{3/2})",
        )
        .exponent(ratio(3, 2))
        .asymptotic()
        .when(tree && k >= 3 && m >= 2, format!("{tree_cond}, k>=3, m>=2")),
    );
    out.push(
        BoundEntry::new(name("tree-k-sets"), BoundKind::Lower, "Ω(n^{k/(k-1)})")
            .exponent(ratio(k as i64, k as i64 - 1))
            .asymptotic()
            .when(tree, tree_cond.clone()),
    );
    out.push(
        BoundEntry::new(
            name("tree-tuples"),
            BoundKind::Lower,
            "Ω(n^{(m+1)/m}) by pigeonhole on colour tuples",
        )
        .exponent(ratio(m as i64 + 1, m as i64))
        .asymptotic()
        .when(tree, tree_cond),
    );
    let c6 = parse_pattern("C6").expect("C6 parses");
    out.push(
        BoundEntry::new(name("c6-theta"), BoundKind::Lower, "f_2(n,C_6) = Ω(n^{4/3})")
            .exponent(ratio(4, 3))
            .asymptotic()
            .when(*h == c6 && k == 2, "H = C6, k=2"),
    );
    out
}

/// Evaluates every bound on `f_k(n, h)`.
pub fn bound_report(n: usize, h: &PatternGraph, k: usize) -> BoundReport {
    assert!(k >= 2, "k must be at least 2");
    let core = strip_isolated(h);
    let cls = classify(&core);
    let (v, e) = (core.vertex_count(), core.edge_count());
    let nf = n as f64;
    let pairs = (n * n.saturating_sub(1) / 2) as u64;
    let mut entries = Vec::new();

    entries.push(
        BoundEntry::new(
            "trivial-lower",
            BoundKind::Lower,
            "f >= n-1: a proper colouring needs n-1 colours",
        )
        .exponent(ratio(1, 1))
        .value(n.saturating_sub(1) as f64),
    );
    entries.push(
        BoundEntry::new(
            "trivial-upper",
            BoundKind::Upper,
            "f <= binom(n,2): the rainbow colouring",
        )
        .exponent(ratio(2, 1))
        .value(pairs as f64),
    );
    let is_edge = v == 2 && e == 1;
    entries.push(
        BoundEntry::new("pigeonhole", BoundKind::Lower, "f_k(n,K_2) >= ceil(binom(n,2)/(k-1))")
            .exponent(ratio(2, 1))
            .constant(Constant::Exact(ratio(1, 2 * (k as i64 - 1))))
            .value(pairs.div_ceil(k as u64 - 1) as f64)
            .when(is_edge, "H = K2"),
    );
    let odd = cls.class == PatternClass::NonBipartite;
    entries.push(
        BoundEntry::new(
            "odd-cycle-additive",
            BoundKind::Upper,
            "f <= n+1, and f <= n for odd n, via a+b mod n",
        )
        .exponent(ratio(1, 1))
        .value(if n % 2 == 1 { nf } else { nf + 1.0 })
        .when(odd, "H non-bipartite"),
    );
    entries.push(
        BoundEntry::new("resampling", BoundKind::Upper, "O(max{n, n^{(kv-2)/((k-1)e)}})")
            .exponent(lll_exponent(v, e, k))
            .asymptotic()
            .when(true, format!("v={v}, e={e}")),
    );
    let linear = (k - 1) * e + 2 >= k * v;
    entries.push(
        BoundEntry::new(
            "resampling-linear",
            BoundKind::Upper,
            "Θ(n) when e >= k/(k-1) v - 2/(k-1)",
        )
        .exponent(ratio(1, 1))
        .asymptotic()
        .when(
            linear && cls.class != PatternClass::NonBipartite,
            format!("bipartite, (k-1)e >= kv-2: {}*{e} vs {}", k - 1, k * v - 2),
        ),
    );

    let components: Vec<PatternGraph> = cls
        .components
        .iter()
        .filter(|c| c.edge_count > 0)
        .map(|c| core.induced(&c.vertices).expect("component has an edge"))
        .collect();
    let connected = components.len() == 1;
    if connected {
        entries.extend(connected_entries(n, &core, k, ""));
    } else {
        // each component is a subgraph, so its upper bounds hold as stated;
        // lower bounds transfer only up to a constant factor
        let mut lower_by_component = Vec::new();
        for (i, comp) in components.iter().enumerate() {
            let comp_entries = connected_entries(n, comp, k, &format!("component{i}:"));
            let best = comp_entries
                .iter()
                .filter(|x| x.applicable && x.kind == BoundKind::Lower)
                .filter_map(|x| x.exponent)
                .fold(ratio(1, 1), Exponent::max);
            lower_by_component.push(best);
            entries.extend(comp_entries.into_iter().map(|mut x| {
                if x.kind == BoundKind::Lower {
                    x.up_to_theta = true;
                }
                x
            }));
        }
        let mut combined = BoundEntry::new("components-lower", BoundKind::Lower, "f(H) = Θ(min_i f(H_i))")
            .exponent(lower_by_component.into_iter().min().unwrap_or(ratio(1, 1)))
            .asymptotic()
            .when(true, format!("{} components", components.len()));
        combined.up_to_theta = true;
        entries.push(combined);
    }

    let applicable = |kind: BoundKind| entries.iter().filter(move |x| x.applicable && x.kind == kind);
    let best_lower = applicable(BoundKind::Lower)
        .filter_map(BoundEntry::numeric)
        .fold(0.0, f64::max)
        .ceil() as u64;
    let best_upper = applicable(BoundKind::Upper)
        .filter_map(BoundEntry::numeric)
        .fold(f64::INFINITY, f64::min)
        .floor() as u64;
    let lower_exponent = applicable(BoundKind::Lower)
        .filter(|x| !x.up_to_theta || x.name == "components-lower")
        .filter_map(|x| x.exponent)
        .fold(Exponent::zero(), Exponent::max);
    let upper_exponent = applicable(BoundKind::Upper)
        .filter_map(|x| x.exponent)
        .fold(ratio(2, 1), Exponent::min);

    let mut annotations = Vec::new();
    let tree = connected && cls.class == PatternClass::Forest;
    if cls.class == PatternClass::BipartiteWithCycle {
        annotations
            .push("existence only: some k gives f_k(n,H) = O(n) (random algebraic colouring); no explicit k".into());
    }
    if tree {
        annotations.push(format!(
            "existence only: some k' gives f_k'(n,T) = O(n^{{{}/{}}}) (random algebraic colouring)",
            e + 1,
            e
        ));
        annotations.push(format!("open: the least such k' is suspected to be m+1 = {}", e + 1));
    }
    if k == 2 && core == parse_pattern("C4").expect("C4 parses") {
        annotations.push("open: whether f_2(n,C4) = Θ(n)".into());
    }
    if k == 2 && core == parse_pattern("C6").expect("C6 parses") {
        annotations.push("open: the exponent of f_2(n,C6) lies somewhere in [4/3, 5/3]".into());
    }
    if odd && n.is_multiple_of(2) {
        annotations.push("open: for even n the value lies in [n-1, n+1]; the exact value is undetermined".into());
    }

    BoundReport {
        n,
        k,
        pattern: h.clone(),
        class: cls.class,
        v,
        e,
        m: tree.then_some(e),
        entries,
        best_lower,
        best_upper,
        lower_exponent,
        upper_exponent,
        smallest_k_linear: smallest_k_linear(&core),
        annotations,
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl BoundReport {
    /// Human-readable table.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "pattern {}  n={} k={}  class={} v={} e={}{}",
            self.pattern.label(),
            self.n,
            self.k,
            self.class,
            self.v,
            self.e,
            self.m.map_or(String::new(), |m| format!(" m={m}"))
        )
        .unwrap();
        writeln!(
            out,
            "{:<34} {:<6} {:<9} {:<12} {:>14} {:<10} {:<6} anchor",
            "name", "kind", "exponent", "constant", "value", "applicable", "valid"
        )
        .unwrap();
        for x in &self.entries {
            let value = x.value.map_or("-".to_string(), |v| format!("{v:.3}"));
            let valid = match (x.valid_at_n, x.up_to_theta) {
                (_, true) => "theta".to_string(),
                (Some(b), _) => b.to_string(),
                (None, _) if x.asymptotic => "asym".to_string(),
                (None, _) => "true".to_string(),
            };
            writeln!(
                out,
                "{:<34} {:<6} {:<9} {:<12} {:>14} {:<10} {:<6} {}",
                x.name,
                x.kind,
                opt(x.exponent),
                opt(x.constant),
                value,
                x.applicable,
                valid,
                x.anchor
            )
            .unwrap();
        }
        writeln!(out, "best_lower {}", self.best_lower).unwrap();
        writeln!(out, "best_upper {}", self.best_upper).unwrap();
        writeln!(out, "lower_exponent {}", self.lower_exponent).unwrap();
        writeln!(out, "upper_exponent {}", self.upper_exponent).unwrap();
        writeln!(out, "smallest_k_linear {}", opt(self.smallest_k_linear)).unwrap();
        for a in &self.annotations {
            writeln!(out, "note {a}").unwrap();
        }
        out
    }

    /// One tab-separated record per entry: name, kind, exponent, constant,
    /// applicable, anchor.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for x in &self.entries {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                x.name,
                x.kind,
                opt(x.exponent),
                opt(x.constant),
                x.applicable,
                x.anchor
            )
            .unwrap();
        }
        out
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|x| x.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(spec: &str, n: usize, k: usize) -> BoundReport {
        bound_report(n, &parse_pattern(spec).unwrap(), k)
    }

    #[test]
    fn embedding_constant_for_single_edge() {
        assert_eq!(tree_embedding_q(2, 1), Constant::Exact(Ratio::from_integer(72)));
        let r = report("K2", 100, 2);
        assert_eq!(
            r.entry("tree-embedding").unwrap().constant,
            Some(Constant::Exact(ratio(1, 72)))
        );
        assert_eq!(
            r.entry("tree-pairs").unwrap().constant,
            Some(Constant::Exact(ratio(1, 72)))
        );
    }

    #[test]
    fn cycle_exponents() {
        let r = report("C4", 1000, 2);
        assert_eq!(r.entry("resampling").unwrap().exponent, Some(ratio(3, 2)));
        let r = report("C6", 1000, 2);
        assert_eq!(r.upper_exponent, ratio(5, 3));
        assert_eq!(r.lower_exponent, ratio(4, 3));
        assert!(r.entry("c6-theta").unwrap().applicable);
    }

    #[test]
    fn smallest_k_examples() {
        assert_eq!(smallest_k_linear(&parse_pattern("K4").unwrap()), Some(2));
        assert_eq!(smallest_k_linear(&parse_pattern("C4").unwrap()), None);
        assert_eq!(smallest_k_linear(&parse_pattern("theta:3:3").unwrap()), Some(7));
    }

    #[test]
    fn forest_lower_exponents() {
        for spec in ["K2", "P3", "P5", "S3"] {
            assert_eq!(report(spec, 50, 2).lower_exponent, ratio(2, 1), "{spec}");
        }
        // P4: m = 3, k = 3: max(3/2, 4/3)
        assert_eq!(report("P4", 50, 3).lower_exponent, ratio(3, 2));
        // P3: m = 2, k = 4: max(4/3, 3/2)
        assert_eq!(report("P3", 50, 4).lower_exponent, ratio(3, 2));
    }

    #[test]
    fn non_bipartite_upper() {
        let r = report("C5", 9, 2);
        assert_eq!(r.best_upper, 9);
        let r = report("K3", 10, 2);
        assert_eq!(r.best_upper, 11);
        assert_eq!(r.best_lower, 9);
    }

    #[test]
    fn pigeonhole_for_edges() {
        let r = report("K2", 5, 3);
        assert_eq!(r.best_lower, 5);
        assert_eq!(r.best_upper, 10);
    }

    #[test]
    fn validity_threshold() {
        // n^2/72 < 1 colour: nothing to count
        assert!(!tree_embedding_valid(8, 2, 1));
        assert!(tree_embedding_valid(100, 2, 1));
        assert!(tree_embedding_valid(100_000, 3, 4));
        let r = report("P3", 20, 2);
        assert_eq!(r.entry("tree-pairs").unwrap().valid_at_n, Some(true));
        // n^2/120 is far below the trivial bound here
        assert_eq!(r.best_lower, 19);
    }

    #[test]
    fn disconnected_patterns() {
        let two_edges = parse_pattern("edges:0-1,2-3").unwrap();
        let r = bound_report(30, &two_edges, 2);
        assert!(r.entries.iter().any(|x| x.name == "components-lower" && x.up_to_theta));
        assert_eq!(r.lower_exponent, ratio(2, 1));
        assert!(r.smallest_k_linear.is_none());
    }

    #[test]
    fn records_have_six_fields() {
        let r = report("C4", 100, 2);
        for line in r.to_records().lines() {
            assert_eq!(line.split('\t').count(), 6);
        }
        assert!(r.to_table().contains("open: whether f_2(n,C4)"));
    }
}
