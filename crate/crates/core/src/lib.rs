#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord, clippy::large_enum_variant)]

pub mod arrangement;
pub mod cli;
pub mod concepts;
pub mod datagen;
pub mod dp;
pub mod error;
pub mod formats;
pub mod geom;
pub mod learners;
pub mod oracles;
pub mod rng;
pub mod selectors;
pub mod setcover;
