#![allow(clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod abelian;
pub mod series;
pub mod symfunc;
pub mod lambdaring;
pub mod filtration;
pub mod models;
pub mod milnor;
pub mod cli;
