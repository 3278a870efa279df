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

//! Fair detachments of edge-colored multigraphs and the Hamiltonian
//! decompositions they yield.
//!
//! A vertex `w` of an amalgamated graph `H` with amalgamation number `η(w)`
//! is split into `η(w)` vertices so that degrees, loop counts and pair
//! multiplicities are shared out as evenly as possible, overall and within
//! every color class, and so that evenly spread colors stay connected.
//! [`engine::detach_all`] performs the split; [`verify`] checks the result
//! without trusting the engine.

pub mod bee;
pub mod document;
pub mod engine;
pub mod error;
pub mod evencolor;
pub mod export;
pub mod gen;
pub mod hamilton;
pub mod multigraph;
mod trail;
pub mod verify;

pub use engine::{detach_all, detach_step, Detachment};
pub use error::{Error, Result};
pub use hamilton::{
    gdd_feasible, ham_decompose_gdd, ham_decompose_lambda_kn, walecki_odd, Feasibility, GddParams,
    HamDecomposition, InfeasibleReason, Infeasibility,
};
pub use multigraph::{
    approx, AmalgamationSpec, ColoredMultigraph, DetachmentMap, Multigraph, Rational, VertexId,
};
pub use verify::{verify_detachment, verify_ham_decomposition, DetachmentReport};
