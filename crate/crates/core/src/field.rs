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

//! Prime-field arithmetic, dense multivariate polynomials and the 3x3
//! Vandermonde solver.
//!
//! Randomness comes from ChaCha8 seeded with a `u64`, so a seed reproduces the
//! same coefficients on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// The generator used for every randomized construction.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic primality by trial division up to `sqrt(x)`.
pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x.is_multiple_of(2) {
        return x == 2;
    }
    let mut d = 3u64;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `>= x`, restricted to 32-bit moduli.
pub fn next_prime_at_least(x: u64) -> Result<u32> {
    if x < 2 {
        return Err(Error::InvalidParameter(format!(
            "next_prime_at_least needs x >= 2, got {x}"
        )));
    }
    let mut p = x;
    while p <= u32::MAX as u64 {
        if is_prime(p) {
            return Ok(p as u32);
        }
        p += 1;
    }
    Err(Error::PrimeOverflow(x))
}

/// Arithmetic modulo a prime `q < 2^32`. Elements are canonical
/// representatives in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::NotPrime(q as u64));
        }
        Ok(PrimeField { q })
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u32 {
        (x % self.q as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        let a = a % self.q;
        (a != 0).then(|| self.pow(a, self.q as u64 - 2))
    }
}

/// Exponent vectors `(d_1, …, d_t)` with `Σ d_i <= d`, lexicographic order.
fn monomials(t: usize, d: usize) -> Vec<Vec<u8>> {
    fn rec(t: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e as u8);
            rec(t, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, d, &mut Vec::with_capacity(t), &mut out);
    out
}

/// Dense polynomial in `t` variables of total degree at most `d` over a
/// prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: PrimeField,
    t: usize,
    d: usize,
    exponents: Vec<Vec<u8>>,
    coeffs: Vec<u32>,
}

impl MultiPoly {
    /// Builds a polynomial from `(exponent vector, coefficient)` terms; every
    /// other coefficient is zero.
    pub fn from_terms(field: PrimeField, t: usize, d: usize, terms: &[(Vec<u8>, u32)]) -> Result<Self> {
        if t == 0 || d == 0 {
            return Err(Error::InvalidParameter("polynomials need t >= 1 and d >= 1".into()));
        }
        let exponents = monomials(t, d);
        let mut coeffs = vec![0; exponents.len()];
        for (exp, c) in terms {
            if exp.len() != t {
                return Err(Error::DimensionMismatch {
                    expected: t,
                    actual: exp.len(),
                });
            }
            let pos = exponents
                .binary_search(exp)
                .map_err(|_| Error::InvalidParameter(format!("monomial {exp:?} exceeds total degree {d}")))?;
            coeffs[pos] = field.reduce(*c as u64);
        }
        Ok(MultiPoly {
            field,
            t,
            d,
            exponents,
            coeffs,
        })
    }

    pub fn constant(field: PrimeField, t: usize, d: usize, c: u32) -> Result<Self> {
        Self::from_terms(field, t, d, &[(vec![0; t], c)])
    }

    /// Uniformly random polynomial: one independent uniform coefficient per
    /// monomial, drawn in lexicographic monomial order.
    pub fn sample(t: usize, d: usize, field: PrimeField, rng: &mut impl Rng) -> Result<Self> {
        let mut p = Self::from_terms(field, t, d, &[])?;
        for c in p.coeffs.iter_mut() {
            *c = rng.gen_range(0..field.modulus());
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.t
    }

    pub fn degree_bound(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// `(exponent vector, coefficient)` pairs in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8], u32)> {
        self.exponents
            .iter()
            .map(Vec::as_slice)
            .zip(self.coeffs.iter().copied())
    }

    pub fn coefficient(&self, exp: &[u8]) -> Option<u32> {
        self.exponents
            .binary_search_by(|e| e.as_slice().cmp(exp))
            .ok()
            .map(|i| self.coeffs[i])
    }

    /// Value at `point`, with every coordinate reduced mod `q` first.
    pub fn eval(&self, point: &[u32]) -> Result<u32> {
        if point.len() != self.t {
            return Err(Error::DimensionMismatch {
                expected: self.t,
                actual: point.len(),
            });
        }
        let f = self.field;
        let powers: Vec<Vec<u32>> = point
            .iter()
            .map(|&x| {
                let x = f.reduce(x as u64);
                let mut row = Vec::with_capacity(self.d + 1);
                let mut acc = 1 % f.modulus();
                for _ in 0..=self.d {
                    row.push(acc);
                    acc = f.mul(acc, x);
                }
                row
            })
            .collect();
        let mut total = 0u64;
        let q = f.modulus() as u64;
        for (exp, &c) in self.exponents.iter().zip(&self.coeffs) {
            if c == 0 {
                continue;
            }
            let mut term = c as u64;
            for (i, &e) in exp.iter().enumerate() {
                term = term * powers[i][e as usize] as u64 % q;
            }
            total += term;
        }
        Ok((total % q) as u32)
    }
}

/// Free-function form of [`MultiPoly::sample`].
pub fn sample_poly(t: usize, d: usize, field: PrimeField, rng: &mut impl Rng) -> Result<MultiPoly> {
    MultiPoly::sample(t, d, field, rng)
}

/// Free-function form of [`MultiPoly::eval`].
pub fn eval_poly(p: &MultiPoly, point: &[u32]) -> Result<u32> {
    p.eval(point)
}

/// Coefficients `(x1, x2, x3)` of the unique quadratic `x1 + x2 X + x3 X^2`
/// through `(a, b)`, `(c, d)` and `(1, a + c)`.
///
/// Requires `a`, `c` and `1` to be pairwise distinct; otherwise the
/// Vandermonde matrix is singular.
pub fn solve_vandermonde3(a: u32, b: u32, c: u32, d: u32, f: &PrimeField) -> Result<(u32, u32, u32)> {
    let (a, b, c, d) = (
        f.reduce(a as u64),
        f.reduce(b as u64),
        f.reduce(c as u64),
        f.reduce(d as u64),
    );
    let one = 1 % f.modulus();
    if a == c || a == one || c == one {
        return Err(Error::SingularSystem(format!(
            "nodes a={a}, c={c}, 1 are not pairwise distinct mod {}",
            f.modulus()
        )));
    }
    let nodes = [a, c, one];
    let values = [b, d, f.add(a, c)];
    let mut coeffs = [0u32; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let denom = f.mul(f.sub(nodes[i], nodes[j]), f.sub(nodes[i], nodes[k]));
        let scale = f.mul(values[i], f.inv(denom).expect("distinct nodes"));
        // (X - x_j)(X - x_k) = x_j x_k - (x_j + x_k) X + X^2
        let basis = [f.mul(nodes[j], nodes[k]), f.neg(f.add(nodes[j], nodes[k])), one];
        for (acc, &bcoef) in coeffs.iter_mut().zip(&basis) {
            *acc = f.add(*acc, f.mul(scale, bcoef));
        }
    }
    Ok((coeffs[0], coeffs[1], coeffs[2]))
}
