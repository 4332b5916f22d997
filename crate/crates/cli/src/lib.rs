// SPDX-License-Identifier: Apache-2.0

//! Command-line front end for dual curves. Every command writes a CSV sample
//! table except `plot`, which renders one to SVG.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod svg;
pub mod table;
