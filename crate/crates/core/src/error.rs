// Copyright 2026 The agtsim Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Error type shared by every module of the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A Pauli label contained something other than `I`, `X`, `Y` or `Z`.
    /// `position` is 1-based.
    #[error("invalid Pauli letter {found:?} at position {position}")]
    Parse { position: usize, found: char },

    /// Shapes or qubit counts that do not fit together.
    #[error("structural error: {0}")]
    Structural(String),

    /// A numeric argument outside its allowed range.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("qubit index error: {0}")]
    Index(String),

    #[error("unsupported gate {gate}: {reason}")]
    UnsupportedGate { gate: String, reason: String },

    #[error("compile error: {0}")]
    Compile(String),

    /// The requested simulation exceeds the dense-simulation qubit budget.
    #[error("resource error: {0}")]
    Resource(String),

    /// A result that should be impossible for valid input, e.g. a complex
    /// Pauli coefficient after conjugating a Hermitian operator.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    /// Malformed command-line input.
    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Structural(_) => "structural",
            Error::Domain(_) => "domain",
            Error::Index(_) => "index",
            Error::UnsupportedGate { .. } => "unsupported_gate",
            Error::Compile(_) => "compile",
            Error::Resource(_) => "resource",
            Error::Consistency(_) => "consistency",
            Error::Usage(_) => "usage",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}
