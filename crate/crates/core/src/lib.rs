// Copyright 2026 The liedeco Authors
// SPDX-License-Identifier: Apache-2.0

pub mod error;
pub mod liealg;
pub mod matcore;
pub mod lindblad;
pub mod repanalysis;
pub mod channel;

pub use error::{Error, Result};
