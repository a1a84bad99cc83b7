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

//! Proper edge-colourings of complete graphs that avoid `k` vertex-disjoint
//! colour-isomorphic copies ("repeats") of a fixed pattern graph.
//!
//! The crate is organised around a handful of modules:
//!
//! * [`graph`]: pattern graphs, their automorphism groups and the canonical
//!   colour signature used to decide colour isomorphism between copies.
//! * [`field`]: prime-field arithmetic, random multivariate polynomials and
//!   the 3x3 Vandermonde solver.
//! * [`colouring`]: the [`EdgeColouring`] type and the `rfc v1` text format.
//! * [`constructors`]: algebraic, probabilistic and combinatorial colourings,
//!   together with Vizing-style refinement and colour padding.
//! * [`verifier`]: properness checks, exact repeat detection, certificates.
//! * [`search`]: exact extremal values for tiny instances.
//! * [`bounds`]: closed-form upper and lower bounds.

pub mod bounds;
pub mod colouring;
pub mod constructors;
mod error;
pub mod field;
pub mod graph;
pub mod packing;
pub mod search;
pub mod verifier;

pub use crate::colouring::EdgeColouring;
pub use crate::error::{Error, Result};
pub use crate::graph::{AutomorphismGroup, ColouredCopy, PatternGraph};
pub use crate::verifier::{RepeatCertificate, RepeatOutcome};
