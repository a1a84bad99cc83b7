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

//! Throughput of exact repeat detection, construction and exact search.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use repcol::constructors::{lll_colouring, random_algebraic_cycle_colouring, LllParams};
use repcol::graph::parse_pattern;
use repcol::search::{exact_f, SearchOptions};
use repcol::verifier::{find_repeats, DetectionMode};
use repcol_bench::detection_fixtures;

fn detection(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_repeats");
    group.sample_size(10);
    for fx in detection_fixtures().expect("fixtures build") {
        group.bench_function(&fx.name, |b| {
            b.iter(|| find_repeats(black_box(&fx.colouring), &fx.pattern, fx.k, DetectionMode::Exact).unwrap())
        });
    }
    group.finish();
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    group.sample_size(10);
    let c4 = parse_pattern("C4").unwrap();
    group.bench_function("lll-30/C4", |b| {
        b.iter(|| lll_colouring(black_box(30), &c4, 2, 1, &LllParams::default()).unwrap())
    });
    group.bench_function("alg-cycle-101/d4", |b| {
        b.iter(|| random_algebraic_cycle_colouring(black_box(101), 4, 1).unwrap())
    });
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_f");
    group.sample_size(10);
    let k2 = parse_pattern("K2").unwrap();
    let s2 = parse_pattern("S2").unwrap();
    group.bench_function("f2(5,K2)", |b| {
        b.iter(|| exact_f(black_box(5), &k2, 2, &SearchOptions::default()).unwrap())
    });
    group.bench_function("f2(6,S2)", |b| {
        b.iter(|| exact_f(black_box(6), &s2, 2, &SearchOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, detection, construction, search);
criterion_main!(benches);
