// SPDX-License-Identifier: Apache-2.0

pub mod bounds;
pub mod circuit;
pub mod cli;
pub mod cliffsynth;
pub mod gf2;
pub mod linsynth;
pub mod prefixsynth;
pub mod program;
