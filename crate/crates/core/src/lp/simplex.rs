//! Dense phase-1 simplex with Bland's rule.
//!
//! The phase-1 objective is the sum of artificial variables. Rows can be appended
//! to a live tableau: a new row is reduced against the current basis and enters
//! with its slack basic when the current point satisfies it, or with a fresh
//! artificial otherwise. This gives exact row generation without restarting.

use crate::error::{Error, Result};
use crate::lp::model::{Constraint, LpModel, Relation};
use crate::scalar::Scalar;

/// Smallest pivot magnitude accepted by float tableaux.
const FLOAT_PIVOT_TOL: f64 = 1e-7;
/// Float tableaux are rebuilt from the loaded rows after this many pivots.
const FLOAT_REINVERT_EVERY: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Column {
    Structural,
    Slack,
    Artificial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Feasible,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpOutcome<T> {
    pub status: LpStatus,
    /// Present iff feasible; one value per model variable.
    pub assignment: Option<Vec<T>>,
    pub pivots: usize,
    /// Rows that made it into the working set.
    pub rows_used: usize,
}

impl<T> LpOutcome<T> {
    pub fn is_feasible(&self) -> bool {
        self.status == LpStatus::Feasible
    }
}

/// How exact models are decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    /// Rational simplex throughout.
    Exact,
    /// Floating-point simplex first, its answer certified in rationals; falls
    /// back to [`Engine::Exact`] whenever the certificate does not check.
    #[default]
    FloatGuided,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub max_pivots: usize,
    /// Start from the non-lazy rows and add violated lazy rows in batches of this
    /// size. `None` loads every row up front.
    pub row_batch: Option<usize>,
    /// Used by [`crate::lp::solve_exact`]; the generic solver ignores it.
    pub engine: Engine,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_pivots: 200_000, row_batch: Some(16), engine: Engine::default() }
    }
}

impl SolveOptions {
    pub fn all_rows() -> Self {
        SolveOptions { row_batch: None, ..Self::default() }
    }
}

/// A loaded row over all tableau columns (structural, slack, artificial).
#[derive(Clone, Debug)]
struct OriginRow<T> {
    terms: Vec<(usize, T)>,
    rhs: T,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    columns: Vec<Column>,
    /// Artificial columns that left the basis never come back.
    dead: Vec<bool>,
    is_basic: Vec<bool>,
    /// Slack column of each row, if the row has one.
    row_slack: Vec<Option<usize>>,
    /// Each row as loaded, before reduction against the basis.
    origin: Vec<OriginRow<T>>,
    /// Reduced costs of the phase-1 objective.
    cost: Vec<T>,
    objective: T,
    num_structural: usize,
    pivots: usize,
}

impl<T: Scalar> Tableau<T> {
    fn new(num_structural: usize) -> Self {
        Tableau {
            rows: Vec::new(),
            rhs: Vec::new(),
            basis: Vec::new(),
            columns: vec![Column::Structural; num_structural],
            dead: vec![false; num_structural],
            is_basic: vec![false; num_structural],
            row_slack: Vec::new(),
            origin: Vec::new(),
            cost: vec![T::zero(); num_structural],
            objective: T::zero(),
            num_structural,
            pivots: 0,
        }
    }

    fn push_column(&mut self, kind: Column) -> usize {
        for row in &mut self.rows {
            row.push(T::zero());
        }
        self.columns.push(kind);
        self.dead.push(false);
        self.is_basic.push(false);
        self.cost.push(T::zero());
        self.columns.len() - 1
    }

    fn add_row(&mut self, constraint: &Constraint<T>) {
        let width = self.columns.len();
        let mut row = vec![T::zero(); width];
        for (var, coef) in &constraint.terms {
            row[*var] = row[*var].clone() + coef.clone();
        }
        let mut rhs = constraint.rhs.clone();
        // Express the row in terms of the current nonbasic columns.
        for (i, &b) in self.basis.iter().enumerate() {
            let factor = row[b].clone();
            if factor.is_zero_tol() {
                continue;
            }
            for (j, value) in self.rows[i].iter().enumerate() {
                if !value.is_zero_tol() {
                    row[j] = row[j].clone() - factor.clone() * value.clone();
                }
            }
            row[b] = T::zero();
            rhs = rhs - factor * self.rhs[i].clone();
        }

        let slack_sign = match constraint.relation {
            Relation::Le => Some(T::one()),
            Relation::Ge => Some(-T::one()),
            Relation::Eq => None,
        };
        let slack = slack_sign.map(|sign| {
            let col = self.push_column(Column::Slack);
            row.push(sign);
            col
        });
        // Prefer a basic slack: flip `-s = 0` rows as well as negative right-hand sides.
        let flip = rhs.is_neg() || (rhs.is_zero_tol() && slack.is_some_and(|c| row[c].is_neg()));
        let sign = if flip { -T::one() } else { T::one() };
        let mut origin_terms: Vec<(usize, T)> =
            constraint.terms.iter().map(|(v, c)| (*v, c.clone() * sign.clone())).collect();
        if let Some(col) = slack {
            origin_terms.push((col, row[col].clone() * sign.clone()));
        }
        let origin_rhs = constraint.rhs.clone() * sign;
        if flip {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            rhs = -rhs;
        }
        // Slack can be basic iff its coefficient is now +1.
        let basic = match slack {
            Some(col) if row[col] == T::one() => col,
            _ => {
                let col = self.push_column(Column::Artificial);
                row.push(T::one());
                origin_terms.push((col, T::one()));
                for (j, value) in row.iter().enumerate() {
                    if self.columns[j] != Column::Artificial && !value.is_zero_tol() {
                        self.cost[j] = self.cost[j].clone() - value.clone();
                    }
                }
                self.objective = self.objective.clone() + rhs.clone();
                col
            }
        };
        self.rows.push(row);
        self.row_slack.push(slack);
        self.origin.push(OriginRow { terms: origin_terms, rhs: origin_rhs });
        self.rhs.push(rhs);
        self.basis.push(basic);
        self.is_basic[basic] = true;
    }

    fn entering(&self) -> Option<usize> {
        (0..self.columns.len()).find(|&j| {
            self.columns[j] != Column::Artificial && !self.is_basic[j] && self.cost[j].is_neg()
        })
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        if !T::EXACT {
            return self.leaving_harris(col);
        }
        let mut best: Option<(usize, T)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[col].is_pos() {
                continue;
            }
            let ratio = self.rhs[i].clone() / row[col].clone();
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    let better = ratio < br
                        || ((ratio.clone() - br.clone()).is_zero_tol() && self.basis[i] < self.basis[bi]);
                    if better {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    /// Two-pass ratio test for float tableaux: bound the step with a small
    /// feasibility allowance, then take the largest pivot within that bound.
    fn leaving_harris(&self, col: usize) -> Option<usize> {
        let pivot_tol = T::from_f64(FLOAT_PIVOT_TOL).expect("tolerance fits scalar");
        let slack = T::tolerance();
        let level = |i: usize| if self.rhs[i].is_neg() { T::zero() } else { self.rhs[i].clone() };
        let candidates: Vec<usize> = (0..self.rows.len()).filter(|&i| self.rows[i][col] > pivot_tol).collect();
        let bound = candidates
            .iter()
            .map(|&i| (level(i) + slack.clone()) / self.rows[i][col].clone())
            .reduce(|a, b| if b < a { b } else { a })?;
        candidates
            .into_iter()
            .filter(|&i| level(i) / self.rows[i][col].clone() <= bound)
            .reduce(|a, b| {
                let (pa, pb) = (&self.rows[a][col], &self.rows[b][col]);
                if pb > pa || (pb == pa && self.basis[b] < self.basis[a]) {
                    b
                } else {
                    a
                }
            })
    }

    /// Rebuilds every row, right-hand side and reduced cost from the loaded rows
    /// and the current basis. Used on float tableaux to discard rounding drift.
    fn reinvert(&mut self) -> Result<()> {
        let width = self.columns.len();
        let m = self.rows.len();
        let mut rows: Vec<Vec<T>> = Vec::with_capacity(m);
        let mut rhs: Vec<T> = Vec::with_capacity(m);
        for origin in &self.origin {
            let mut row = vec![T::zero(); width];
            for (col, coef) in &origin.terms {
                row[*col] = row[*col].clone() + coef.clone();
            }
            rows.push(row);
            rhs.push(origin.rhs.clone());
        }
        for k in 0..m {
            let col = self.basis[k];
            let p = (k..m)
                .max_by(|&a, &b| {
                    rows[a][col].abs().partial_cmp(&rows[b][col].abs()).unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("nonempty range");
            if rows[p][col].abs() <= T::tolerance() {
                return Err(Error::NumericalFailure { pivots: self.pivots });
            }
            rows.swap(k, p);
            rhs.swap(k, p);
            let pivot = rows[k][col].clone();
            for v in rows[k].iter_mut() {
                *v = v.clone() / pivot.clone();
            }
            rhs[k] = rhs[k].clone() / pivot;
            let (head, tail) = rows.split_at_mut(k);
            let (pivot_row, tail) = tail.split_first_mut().expect("row k exists");
            for (i, target) in head.iter_mut().chain(tail.iter_mut()).enumerate() {
                let i = if i < k { i } else { i + 1 };
                let factor = target[col].clone();
                if factor == T::zero() {
                    continue;
                }
                for (j, v) in pivot_row.iter().enumerate() {
                    if *v != T::zero() {
                        target[j] = target[j].clone() - factor.clone() * v.clone();
                    }
                }
                target[col] = T::zero();
                rhs[i] = rhs[i].clone() - factor * rhs[k].clone();
            }
        }
        let mut cost = vec![T::zero(); width];
        for (j, kind) in self.columns.iter().enumerate() {
            if *kind == Column::Artificial && !self.dead[j] {
                cost[j] = T::one();
            }
        }
        let mut objective = T::zero();
        for k in 0..m {
            if self.columns[self.basis[k]] != Column::Artificial {
                continue;
            }
            objective = objective + rhs[k].clone();
            for (j, v) in rows[k].iter().enumerate() {
                if self.columns[j] != Column::Artificial {
                    cost[j] = cost[j].clone() - v.clone();
                }
            }
        }
        for k in 0..m {
            cost[self.basis[k]] = T::zero();
        }
        self.rows = rows;
        self.rhs = rhs;
        self.cost = cost;
        self.objective = objective;
        Ok(())
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            if !v.is_zero_tol() {
                *v = v.clone() / pivot.clone();
            }
        }
        self.rhs[row] = self.rhs[row].clone() / pivot;
        let support: Vec<usize> = self.rows[row]
            .iter()
            .enumerate()
            .filter(|(j, v)| !self.dead[*j] && !v.is_zero_tol())
            .map(|(j, _)| j)
            .collect();
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col].clone();
            if factor.is_zero_tol() {
                continue;
            }
            let target = &mut self.rows[i];
            for &j in &support {
                target[j] = target[j].clone() - factor.clone() * pivot_row[j].clone();
            }
            target[col] = T::zero();
            self.rhs[i] = self.rhs[i].clone() - factor * pivot_rhs.clone();
        }
        let factor = self.cost[col].clone();
        if !factor.is_zero_tol() {
            for &j in &support {
                if self.columns[j] != Column::Artificial {
                    self.cost[j] = self.cost[j].clone() - factor.clone() * pivot_row[j].clone();
                }
            }
            self.cost[col] = T::zero();
            self.objective = self.objective.clone() + factor * pivot_rhs;
        }
        let leaving = self.basis[row];
        if self.columns[leaving] == Column::Artificial {
            self.dead[leaving] = true;
        }
        self.is_basic[leaving] = false;
        self.is_basic[col] = true;
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Runs phase 1 to optimality. Returns whether the objective reached zero.
    fn optimize(&mut self, max_pivots: usize) -> Result<bool> {
        loop {
            self.run_pivots(max_pivots)?;
            if T::EXACT {
                break;
            }
            // Confirm optimality on a freshly rebuilt float tableau.
            self.reinvert()?;
            if self.entering().is_none() {
                break;
            }
        }
        Ok(!self.objective.is_pos())
    }

    fn run_pivots(&mut self, max_pivots: usize) -> Result<()> {
        let mut since_reinvert = 0;
        while let Some(col) = self.entering() {
            if self.pivots >= max_pivots {
                return Err(Error::SolverIterationLimit { pivots: self.pivots });
            }
            if !T::EXACT && since_reinvert >= FLOAT_REINVERT_EVERY {
                self.reinvert()?;
                since_reinvert = 0;
                continue;
            }
            since_reinvert += 1;
            // Phase-1 is bounded below by zero, so an entering column with
            // negative reduced cost always has a positive entry somewhere.
            // Only rounding drift in float tableaux can break this.
            let Some(row) = self.leaving(col) else {
                assert!(!T::EXACT, "phase-1 objective is bounded");
                return Err(Error::NumericalFailure { pivots: self.pivots });
            };
            self.pivot(row, col);
        }
        Ok(())
    }

    /// Rows with a nonzero optimal dual. The dual of a row equals the reduced
    /// cost of its slack up to sign; rows without a slack are always included.
    fn dual_support(&self) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| match self.row_slack[i] {
                Some(col) => !self.cost[col].is_zero_tol(),
                None => true,
            })
            .collect()
    }

    fn solution(&self) -> Vec<T> {
        let mut values = vec![T::zero(); self.num_structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.num_structural {
                values[b] = self.rhs[i].clone();
            }
        }
        values
    }
}

/// Result of a phase-1 run together with the rows an infeasibility proof needs.
pub(crate) struct Phase1<T> {
    pub outcome: LpOutcome<T>,
    /// Model row indices with a nonzero dual at the final basis. When the run
    /// is infeasible, these rows alone are already infeasible.
    pub dual_support: Vec<usize>,
}

pub(crate) fn phase1<T: Scalar>(model: &LpModel<T>, options: &SolveOptions) -> Result<Phase1<T>> {
    model.validate()?;
    let mut tableau = Tableau::new(model.num_vars());
    let mut loaded: Vec<usize> = Vec::new();
    let mut used = vec![false; model.constraints.len()];
    for (i, row) in model.constraints.iter().enumerate() {
        if options.row_batch.is_none() || !row.lazy {
            tableau.add_row(row);
            loaded.push(i);
            used[i] = true;
        }
    }
    loop {
        if !tableau.optimize(options.max_pivots)? {
            let dual_support = tableau.dual_support().into_iter().map(|r| loaded[r]).collect();
            return Ok(Phase1 {
                outcome: LpOutcome {
                    status: LpStatus::Infeasible,
                    assignment: None,
                    pivots: tableau.pivots,
                    rows_used: loaded.len(),
                },
                dual_support,
            });
        }
        let values = tableau.solution();
        let mut violated: Vec<(usize, T)> = model
            .constraints
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .filter_map(|(i, row)| {
                let v = row.violation(&values);
                v.is_pos().then_some((i, v))
            })
            .collect();
        if violated.is_empty() {
            debug_assert!(model.first_violation(&values).is_none() || !T::EXACT);
            return Ok(Phase1 {
                outcome: LpOutcome {
                    status: LpStatus::Feasible,
                    assignment: Some(values),
                    pivots: tableau.pivots,
                    rows_used: loaded.len(),
                },
                dual_support: Vec::new(),
            });
        }
        violated.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal).then(a.0.cmp(&b.0)));
        let batch = options.row_batch.unwrap_or(usize::MAX);
        for (i, _) in violated.into_iter().take(batch) {
            tableau.add_row(&model.constraints[i]);
            loaded.push(i);
            used[i] = true;
        }
    }
}

/// Decides feasibility of `model` (all variables nonnegative) with the simplex
/// over `T` itself.
///
/// For exact `T` a feasible outcome carries an assignment satisfying every row,
/// and an infeasible outcome means phase 1 stopped with a positive objective on a
/// subset of the rows.
pub fn solve_feasibility<T: Scalar>(model: &LpModel<T>, options: &SolveOptions) -> Result<LpOutcome<T>> {
    phase1(model, options).map(|run| run.outcome)
}
