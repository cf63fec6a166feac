use thiserror::Error;

use crate::model::RectId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("instance has no rectangles")]
    EmptyInstance,
    #[error("duplicate rectangle id {0}")]
    DuplicateId(RectId),
    #[error("rectangle {0} must have width and height >= 1")]
    NonPositiveDimension(RectId),
    #[error("rectangles {0} and {1} share the same initial center")]
    CoincidentCenters(RectId, RectId),
    #[error("layout has no coordinates for rectangle {0}")]
    MissingRect(RectId),
    #[error("layouts place different rectangle id sets")]
    MismatchedIds,

    #[error("eps must lie strictly between 0 and 1, got {0}")]
    InvalidEps(String),
    #[error("cell ({w}, {h}) cannot hold the widest/tallest rectangle ({w_max}, {h_max})")]
    CellTooSmall { w: u64, h: u64, w_max: u64, h_max: u64 },
    #[error("simplex gave up after {pivots} pivots")]
    SolverIterationLimit { pivots: usize },
    #[error("floating-point simplex lost feasibility after {pivots} pivots")]
    NumericalFailure { pivots: usize },
    #[error("LP constraint references undeclared variable {0}")]
    UnknownVariable(usize),
    #[error("no grid cell in the schedule admitted a feasible layout")]
    NoFeasibleCell,
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("layout is not disjoint: {0} overlaps {1}")]
    NotDisjoint(RectId, RectId),
    #[error("final layout failed verification: {0}")]
    VerificationFailed(String),

    #[error("point set must not be empty")]
    EmptyPointSet,
    #[error("point set contains duplicate point #{0} and #{1}")]
    DuplicatePoint(usize, usize),
    #[error("line passes through point #{0}")]
    LineThroughPoint(usize),
    #[error("line set does not separate points #{0} and #{1}")]
    NotSeparating(usize, usize),
    #[error("{points} points exceed the exact-solve cap of {cap}")]
    ExactCapExceeded { points: usize, cap: usize },
    #[error("layout precondition violated: {0}")]
    Precondition(String),

    #[error("formula has no clauses")]
    EmptyFormula,
    #[error("clause {clause} repeats a variable")]
    RepeatedVariable { clause: usize },
    #[error("clause {clause} has {len} literals, expected 3")]
    ClauseWidth { clause: usize, len: usize },
    #[error("literal {literal} in clause {clause} is outside 1..={n}")]
    LiteralOutOfRange { clause: usize, literal: i64, n: usize },
    #[error("variable x{var} occurs in {count} clauses, expected exactly 5")]
    Occurrence { var: usize, count: usize },
    #[error("3m = 5n fails for n = {n}, m = {m}")]
    ClauseCountMismatch { n: usize, m: usize },
    #[error("assignment leaves clause {clause} unsatisfied")]
    UnsatisfiedClause { clause: usize },
    #[error("assignment has {got} values for {expected} variables")]
    AssignmentLength { got: usize, expected: usize },
    #[error("DIMACS parse error: {0}")]
    Dimacs(String),
}
