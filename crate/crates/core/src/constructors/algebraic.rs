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

//! Random algebraic colourings: edge colours are values of random
//! low-degree polynomials over a prime field.
//!
//! The raw colourings are only `b`-bounded for small `b` with high
//! probability, so the class degree is measured, polynomials are resampled
//! when it is too large, and the result is refined to a proper colouring.

use super::vizing_refine;
use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::field::{next_prime_at_least, sample_poly, seeded_rng, MultiPoly, PrimeField, SeededRng};
use crate::verifier::check_proper;

/// Polynomial draws allowed before giving up.
pub const DEFAULT_MAX_RETRIES: u32 = 20;

/// Colours edge `{i, j}` (`i < j`) of `K_n` with `g(i, j)` for a random `g`
/// of total degree at most `d` over `F_q`, `q` the least prime `>= n`.
pub fn random_algebraic_cycle_colouring(n: usize, d: usize, seed: u64) -> Result<EdgeColouring> {
    algebraic_cycle_with(n, d, seed, DEFAULT_MAX_RETRIES, &mut |field, rng| {
        sample_poly(2, d, field, rng)
    })
}

/// As [`random_algebraic_cycle_colouring`] with an explicit polynomial
/// source and retry budget. A draw is accepted when its colouring is
/// `2d`-bounded.
pub fn algebraic_cycle_with(
    n: usize,
    d: usize,
    seed: u64,
    max_retries: u32,
    draw: &mut dyn FnMut(PrimeField, &mut SeededRng) -> Result<MultiPoly>,
) -> Result<EdgeColouring> {
    if n < 3 || d < 2 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 3 and d >= 2, got n={n}, d={d}"
        )));
    }
    let q = next_prime_at_least(n as u64)?;
    let field = PrimeField::new(q)?;
    let mut rng = seeded_rng(seed);
    let mut last_degree = 0;
    for attempt in 0..=max_retries {
        let g = draw(field, &mut rng)?;
        let mut labels = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                labels.push(g.eval(&[i as u32, j as u32])? as u64);
            }
        }
        let raw = EdgeColouring::from_raw_labels(n, &labels);
        let b = check_proper(&raw).max_class_degree;
        last_degree = b;
        if b > 2 * d {
            continue;
        }
        let mut col = vizing_refine(&raw, b)?;
        col.set_meta("family", "alg-cycle");
        col.set_meta("n", n);
        col.set_meta("d", d);
        col.set_meta("q", q);
        col.set_meta("seed", seed);
        col.set_meta("b_star", b);
        col.set_meta("retries", attempt);
        return Ok(col);
    }
    Err(Error::RetryBudgetExhausted {
        attempts: max_retries + 1,
        last_degree,
    })
}

/// Smallest integer `r` with `r^m >= n`.
fn ceil_root(n: usize, m: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / m as f64).floor().max(1.0) as u64;
    while r > 1 && (r - 1).checked_pow(m).is_some_and(|p| p >= n as u64) {
        r -= 1;
    }
    while r.checked_pow(m).is_some_and(|p| p < n as u64) {
        r += 1;
    }
    r
}

/// Colours `K_n` on the first `n` points of `F_q^m` (lexicographic order)
/// with the tuple `(g_1(i, j), ..., g_{m+1}(i, j))` of random polynomials in
/// `2m` variables, `q` the least prime `>= ceil(n^{1/m})`, then refines.
///
/// With `max_degree = Some(t)` draws whose class degree exceeds `t` are
/// rejected, up to [`DEFAULT_MAX_RETRIES`] times.
pub fn random_algebraic_tree_colouring(
    n: usize,
    m: usize,
    d: usize,
    seed: u64,
    max_degree: Option<usize>,
) -> Result<EdgeColouring> {
    if n < 2 || m < 1 || d < 2 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 2, m >= 1 and d >= 2, got n={n}, m={m}, d={d}"
        )));
    }
    let q = next_prime_at_least(ceil_root(n, m as u32).max(2))?;
    let field = PrimeField::new(q)?;
    (q as u64)
        .checked_pow(m as u32 + 1)
        .ok_or_else(|| Error::InvalidParameter(format!("q^(m+1) = {q}^{} overflows the colour space", m + 1)))?;
    let point = |i: usize| -> Vec<u32> {
        let mut digits = vec![0u32; m];
        let mut x = i as u64;
        for slot in digits.iter_mut().rev() {
            *slot = (x % q as u64) as u32;
            x /= q as u64;
        }
        digits
    };
    let points: Vec<Vec<u32>> = (0..n).map(point).collect();
    let mut rng = seeded_rng(seed);
    let mut last_degree = 0;
    for attempt in 0..=DEFAULT_MAX_RETRIES {
        let polys = (0..=m)
            .map(|_| sample_poly(2 * m, d, field, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        let mut labels = Vec::with_capacity(n * (n - 1) / 2);
        let mut arg = vec![0u32; 2 * m];
        for (i, pi) in points.iter().enumerate() {
            arg[..m].copy_from_slice(pi);
            for pj in &points[i + 1..] {
                arg[m..].copy_from_slice(pj);
                let mut key = 0u64;
                for g in &polys {
                    key = key * q as u64 + g.eval(&arg)? as u64;
                }
                labels.push(key);
            }
        }
        let raw = EdgeColouring::from_raw_labels(n, &labels);
        let b = check_proper(&raw).max_class_degree;
        last_degree = b;
        if max_degree.is_some_and(|t| b > t) {
            continue;
        }
        let mut col = vizing_refine(&raw, b)?;
        col.set_meta("family", "alg-tree");
        col.set_meta("n", n);
        col.set_meta("m", m);
        col.set_meta("d", d);
        col.set_meta("q", q);
        col.set_meta("seed", seed);
        col.set_meta("k_prime", b);
        col.set_meta("retries", attempt);
        return Ok(col);
    }
    Err(Error::RetryBudgetExhausted {
        attempts: DEFAULT_MAX_RETRIES + 1,
        last_degree,
    })
}
