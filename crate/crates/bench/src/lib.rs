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

//! Shared fixtures for the benchmarks: named colourings with the patterns
//! they are meant to be checked against.

use repcol::constructors::{additive_colouring, lll_colouring, quadratic_colouring, LllParams};
use repcol::graph::parse_pattern;
use repcol::{EdgeColouring, PatternGraph, Result};

/// A colouring together with the pattern and repeat size to detect.
pub struct Fixture {
    pub name: String,
    pub colouring: EdgeColouring,
    pub pattern: PatternGraph,
    pub k: usize,
}

impl Fixture {
    fn new(name: &str, colouring: EdgeColouring, pattern: &str, k: usize) -> Result<Self> {
        Ok(Fixture {
            name: name.to_string(),
            colouring,
            pattern: parse_pattern(pattern)?,
            k,
        })
    }
}

/// Detection workloads of increasing size, all repeat-free so the verifier
/// has to exhaust its search.
pub fn detection_fixtures() -> Result<Vec<Fixture>> {
    let c4 = parse_pattern("C4")?;
    Ok(vec![
        Fixture::new("additive-13/C5", additive_colouring(13)?, "C5", 2)?,
        Fixture::new("additive-31/C3", additive_colouring(31)?, "C3", 2)?,
        Fixture::new("quadratic-25/S2", quadratic_colouring(25)?, "S2", 3)?,
        Fixture::new(
            "lll-30/C4",
            lll_colouring(30, &c4, 2, 0, &LllParams::default())?,
            "C4",
            2,
        )?,
    ])
}
