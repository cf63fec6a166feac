//! Layout LP construction and an exact phase-1 simplex to decide it.

mod guided;
mod layout;
mod model;
mod simplex;

pub use guided::solve_exact;
pub use layout::{build_layout_lp, LayoutLp, PairData};
pub use model::{Constraint, LpModel, Relation};
pub use simplex::{solve_feasibility, Engine, LpOutcome, LpStatus, SolveOptions};

pub(crate) use layout::check_eps;
