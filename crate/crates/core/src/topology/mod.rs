//! Symbolic manifolds and the derivation of chain and polygon spaces.

mod diffeo;
mod engine;
mod euler;
mod expr;
mod normalize;
mod render;

pub use diffeo::{equivalent, known_diffeos};
pub use engine::{
    coverage, coverage_with, describe, engine, path_independence, sum_euler_checks, sum_summand, table_order,
    ChamberTable, Derivation, Description, Engine, PathCheck, SpaceQuery, SumEulerCheck, SumStep, COVERAGE_BOUND,
    UNREACHABLE,
};
pub use euler::{euler_char, euler_char_with, standard_quotient_chi};
pub use expr::{Dim, SpaceExpr};
pub use normalize::{instantiate, normalize};
pub use render::{dim_text, parse, parse_dim, render, Style};
