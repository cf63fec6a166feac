//! Float-guided exact feasibility.
//!
//! The model is first solved in `f64` with every inequality tightened by a small
//! margin. A feasible float point is rounded to nearby simple rationals, or
//! failing that snapped to a dyadic grid, and rechecked against every row in
//! rationals. A float infeasibility verdict is confirmed by
//! running the rational simplex on the rows carrying nonzero duals only. Any
//! answer that fails its certificate is recomputed with the rational simplex on
//! the whole model, so the outcome never depends on rounding.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::lp::model::{LpModel, Relation};
use crate::lp::simplex::{phase1, solve_feasibility, Engine, LpOutcome, LpStatus, SolveOptions};
use crate::Rational;

/// Tightening applied to every float row.
const MARGIN: f64 = 1e-7;
/// Fallback snapping grid for float solutions.
const GRID_BITS: u32 = 32;

fn float_model(model: &LpModel<Rational>) -> LpModel<f64> {
    let mut out = LpModel::new();
    for name in &model.var_names {
        out.add_var(name.clone());
    }
    for row in &model.constraints {
        let terms = row.terms.iter().map(|(v, c)| (*v, c.to_f64().unwrap_or(f64::NAN))).collect();
        let rhs = row.rhs.to_f64().unwrap_or(f64::NAN);
        let rhs = match row.relation {
            Relation::Le => rhs - MARGIN,
            Relation::Ge => rhs + MARGIN,
            Relation::Eq => rhs,
        };
        out.add_constraint(terms, row.relation, rhs, row.tag.clone(), row.lazy);
    }
    out
}

fn snap(value: f64) -> Option<Rational> {
    let scale = (1u64 << GRID_BITS) as f64;
    let scaled = (value.max(0.0) * scale).round();
    if !scaled.is_finite() || scaled.abs() >= 9.0e18 {
        return None;
    }
    Some(Rational::new(BigInt::from(scaled as i64), BigInt::from(1u64 << GRID_BITS)))
}

/// Simplest rational within relative distance `rel` of `value`, clamped at zero.
fn simplest_near(value: f64, rel: f64) -> Option<Rational> {
    let value = value.max(0.0);
    let tol = rel * value.max(1.0);
    let lo = Rational::from_float((value - tol).max(0.0))?;
    let hi = Rational::from_float(value + tol)?;
    Some(simplest_between(&lo, &hi))
}

/// Simplest rational in `[lo, hi]`, `0 <= lo <= hi`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let floor = lo.floor();
    if floor == *lo {
        return floor;
    }
    let next = floor.clone() + Rational::one();
    if next <= *hi {
        return next;
    }
    let inner = simplest_between(&(hi.clone() - floor.clone()).recip(), &(lo.clone() - floor.clone()).recip());
    floor + inner.recip()
}

fn restrict(model: &LpModel<Rational>, rows: &[usize]) -> LpModel<Rational> {
    LpModel {
        var_names: model.var_names.clone(),
        constraints: rows.iter().map(|&i| model.constraints[i].clone()).collect(),
    }
}

/// Decides an exact model with the engine chosen in `options`.
pub fn solve_exact(model: &LpModel<Rational>, options: &SolveOptions) -> Result<LpOutcome<Rational>> {
    if options.engine == Engine::Exact {
        return solve_feasibility(model, options);
    }
    model.validate()?;
    match phase1(&float_model(model), options) {
        Ok(run) if run.outcome.is_feasible() => {
            let floats = run.outcome.assignment.as_deref().unwrap_or_default();
            let rounders: [&dyn Fn(f64) -> Option<Rational>; 3] =
                [&|v| simplest_near(v, 1e-6), &|v| simplest_near(v, 1e-9), &snap];
            for round in rounders {
                let Some(values) = floats.iter().map(|v| round(*v)).collect::<Option<Vec<Rational>>>() else {
                    continue;
                };
                if model.first_violation(&values).is_none() {
                    return Ok(LpOutcome {
                        status: LpStatus::Feasible,
                        assignment: Some(values),
                        pivots: run.outcome.pivots,
                        rows_used: run.outcome.rows_used,
                    });
                }
            }
        }
        Ok(run) => {
            let core = restrict(model, &run.dual_support);
            let check = solve_feasibility(&core, &SolveOptions::all_rows())?;
            if !check.is_feasible() {
                return Ok(LpOutcome {
                    status: LpStatus::Infeasible,
                    assignment: None,
                    pivots: run.outcome.pivots + check.pivots,
                    rows_used: run.dual_support.len(),
                });
            }
        }
        Err(Error::NumericalFailure { .. }) | Err(Error::SolverIterationLimit { .. }) => {}
        Err(e) => return Err(e),
    }
    solve_feasibility(model, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn model(rows: &[(&[(usize, i64)], Relation, Rational)], vars: usize) -> LpModel<Rational> {
        let mut m = LpModel::new();
        for v in 0..vars {
            m.add_var(format!("v{v}"));
        }
        for (terms, rel, rhs) in rows {
            let terms = terms.iter().map(|(v, c)| (*v, int(*c))).collect();
            m.add_constraint(terms, *rel, rhs.clone(), "t", true);
        }
        m
    }

    #[test]
    fn guided_feasible_answer_checks_exactly() {
        let m = model(
            &[
                (&[(0, 1), (1, 1)], Relation::Ge, ratio(3, 2)),
                (&[(0, 1)], Relation::Le, int(1)),
                (&[(1, 1)], Relation::Le, int(1)),
            ],
            2,
        );
        let out = solve_exact(&m, &SolveOptions::default()).unwrap();
        assert!(m.first_violation(out.assignment.as_ref().unwrap()).is_none());
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&ratio(3, 10), &ratio(4, 10)), ratio(1, 3));
        assert_eq!(simplest_between(&ratio(1, 2), &ratio(1, 2)), ratio(1, 2));
        assert_eq!(simplest_between(&int(0), &ratio(1, 7)), int(0));
        assert_eq!(simplest_near(2.0 / 3.0, 1e-9), Some(ratio(2, 3)));
        assert_eq!(simplest_near(-1e-12, 1e-9), Some(int(0)));
        assert_eq!(simplest_near(1.95 + 3e-7, 1e-6), Some(ratio(39, 20)));
    }

    #[test]
    fn guided_infeasible_uses_small_core() {
        let m = model(
            &[
                (&[(0, 1)], Relation::Le, int(5)),
                (&[(0, 1), (1, 1)], Relation::Ge, int(3)),
                (&[(2, 1)], Relation::Le, int(7)),
                (&[(0, 1)], Relation::Le, int(1)),
                (&[(1, 1)], Relation::Le, int(1)),
            ],
            3,
        );
        let out = solve_exact(&m, &SolveOptions::default()).unwrap();
        assert_eq!(out.status, LpStatus::Infeasible);
        assert!(out.rows_used <= 3);
    }

    #[test]
    fn boundary_case_falls_back_to_exact() {
        // Feasible only at the single point x = 1/3, which the tightened float
        // model excludes.
        let m = model(
            &[(&[(0, 3)], Relation::Ge, int(1)), (&[(0, 3)], Relation::Le, int(1))],
            1,
        );
        let out = solve_exact(&m, &SolveOptions::default()).unwrap();
        assert_eq!(out.assignment, Some(vec![ratio(1, 3)]));
    }

    #[test]
    fn engines_agree_on_random_systems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let vars = rng.gen_range(1..5);
            let mut m = LpModel::new();
            for v in 0..vars {
                m.add_var(format!("v{v}"));
            }
            for _ in 0..rng.gen_range(1..8) {
                let terms = (0..vars).map(|v| (v, int(rng.gen_range(-3..=3)))).collect();
                let rel = [Relation::Le, Relation::Ge][rng.gen_range(0..2)];
                m.add_constraint(terms, rel, ratio(rng.gen_range(-6..=6), rng.gen_range(1..4)), "r", rng.gen());
            }
            let exact = solve_exact(&m, &SolveOptions { engine: Engine::Exact, ..Default::default() }).unwrap();
            let guided = solve_exact(&m, &SolveOptions::default()).unwrap();
            assert_eq!(exact.status, guided.status);
            if let Some(values) = guided.assignment {
                assert!(m.first_violation(&values).is_none());
            }
        }
    }
}
