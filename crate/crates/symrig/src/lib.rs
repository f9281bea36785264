//! File formats, reports and the command line for `symrig-core`.
//!
//! A problem is a JSON file (see [`problem`]) naming a graph, a point group,
//! a type and optionally coordinates. The `symrig` binary reads one and
//! prints a JSON report (or an SVG figure) on standard output.

pub mod cli;
pub mod problem;
pub mod report;
pub mod svg;

pub use cli::run;
pub use problem::{parse_problem, Problem, ProblemFile, ResolvedType, TypeMode, TypeSpec};
pub use svg::{render_svg, SvgError, SvgOptions};

/// Problems with a problem file.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("cannot parse problem: {0}")]
    Parse(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("bad permutation: {0}")]
    BadPermutation(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
}

impl InputError {
    pub fn kind(&self) -> &'static str {
        match self {
            InputError::Parse(_) => "parse_error",
            InputError::UnknownGroup(_) => "unknown_group",
            InputError::BadPermutation(_) => "bad_permutation",
            InputError::SelfLoop(_) => "self_loop",
        }
    }
}
