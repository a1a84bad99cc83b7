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

use thiserror::Error;

/// Errors produced by the pattern, colouring, and search routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid pattern spec `{spec}`: {reason}")]
    PatternSpec { spec: String, reason: String },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("pattern with {vertices} vertices exceeds the limit of {limit}")]
    PatternTooLarge { vertices: usize, limit: usize },
    #[error("instance too large for exact mode: {0}; use budgeted mode")]
    InstanceTooLarge(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no prime >= {0} fits in 32 bits")]
    PrimeOverflow(u64),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("singular Vandermonde system: {0}")]
    SingularSystem(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("colour class {colour} has degree {degree} at vertex {vertex}, above the bound {bound}")]
    DegreeBoundViolated {
        colour: u32,
        vertex: usize,
        degree: usize,
        bound: usize,
    },
    #[error("colouring is not proper at vertex {vertex} (colour {colour})")]
    NotProper { vertex: usize, colour: u32 },
    #[error("resample budget exhausted after {resamples} resamplings: {last_event}")]
    ResampleBudgetExhausted { resamples: u64, last_event: String },
    #[error("retry budget exhausted after {attempts} attempts (last max class degree {last_degree})")]
    RetryBudgetExhausted { attempts: u32, last_degree: usize },
    #[error("malformed colouring file, line {line}: {reason}")]
    MalformedColouring { line: usize, reason: String },
    #[error("malformed certificate, line {line}: {reason}")]
    MalformedCertificate { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
