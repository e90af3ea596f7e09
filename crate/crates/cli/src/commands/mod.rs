//! One module per subcommand; each exposes its clap argument struct and
//! a `run` function returning a structured summary.

pub mod compare;
pub mod evaluate;
pub mod gen_synthetic;
pub mod predict;
pub mod prepare;
pub mod report;
pub mod train;
