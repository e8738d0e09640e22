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

use crate::graph::Vertex;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("graph is not 2-connected: {0}")]
    NotBiconnected(Obstruction),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),
}

/// Witness that a graph is not 2-connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    TooFewVertices(usize),
    Disconnected { u: Vertex, v: Vertex },
    CutVertex(Vertex),
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::TooFewVertices(n) => write!(f, "only {n} vertices"),
            Obstruction::Disconnected { u, v } => {
                write!(f, "no path between {u} and {v}")
            }
            Obstruction::CutVertex(v) => write!(f, "{v} is a cut vertex"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
