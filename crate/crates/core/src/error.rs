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

use crate::hamilton::Infeasibility;
use crate::multigraph::VertexId;

/// Errors raised by graph operations, colorings, the detachment engine and
/// the decomposition generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} does not belong to the graph")]
    UnknownVertex(VertexId),

    #[error("vertex {0} appears in both vertex sets")]
    OverlappingSets(VertexId),

    #[error("vertex {vertex} has degree {degree}, which exceeds the {colors} available colors")]
    DegreeExceedsColors {
        vertex: String,
        degree: u64,
        colors: usize,
    },

    #[error("vertex {vertex} has odd degree {degree}")]
    OddDegree { vertex: VertexId, degree: u64 },

    #[error("graph is not regular: vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: VertexId,
        degree: u64,
        expected: u64,
    },

    #[error("graph has {loops} loop(s) at vertex {vertex}")]
    UnexpectedLoops { vertex: VertexId, loops: u64 },

    #[error("vertex {vertex} has amalgamation number 1 but carries {loops} loop(s)")]
    EtaGuard { vertex: VertexId, loops: u64 },

    #[error("vertex {vertex} has amalgamation number {eta}; at least 2 is required to detach it")]
    EtaTooSmall { vertex: VertexId, eta: u64 },

    #[error("amalgamation numbers must be positive (vertex {0} has 0)")]
    EtaZero(VertexId),

    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(Infeasibility),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
