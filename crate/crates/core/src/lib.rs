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

//! Enumeration, counting and bound verification for K4-subdivisions.
//!
//! The library counts K4-subdivisions exactly by backtracking over branch
//! path systems, checks the classical cycle and subdivision lower bounds
//! against those exact counts, and builds the two counting reductions from
//! s-t path counting together with their recovery arithmetic.

pub mod bounds;
pub mod connectivity;
pub mod cycles;
pub mod ears;
pub mod error;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod k4;
pub mod reductions;

pub use connectivity::is_k_connected;
pub use error::{Error, Result};
pub use graph::{parse_graph, Edge, Graph, Vertex};
