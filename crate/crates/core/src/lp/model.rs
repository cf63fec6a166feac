use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

/// `sum(coef * var) relation rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<T> {
    pub terms: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
    /// Short tag naming the family the row belongs to, used in dumps.
    pub tag: String,
    /// Rows marked lazy may be left out of the working set until violated.
    pub lazy: bool,
}

impl<T: Scalar> Constraint<T> {
    pub fn lhs(&self, values: &[T]) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, (v, c)| acc + c.clone() * values[*v].clone())
    }

    /// Amount by which `values` violates the row; zero or negative when satisfied.
    pub fn violation(&self, values: &[T]) -> T {
        let lhs = self.lhs(values);
        match self.relation {
            Relation::Le => lhs - self.rhs.clone(),
            Relation::Ge => self.rhs.clone() - lhs,
            Relation::Eq => (lhs - self.rhs.clone()).abs(),
        }
    }

    pub fn is_satisfied(&self, values: &[T]) -> bool {
        !self.violation(values).is_pos()
    }
}

/// A feasibility LP over nonnegative variables.
#[derive(Clone, Debug, PartialEq)]
pub struct LpModel<T> {
    pub var_names: Vec<String>,
    pub constraints: Vec<Constraint<T>>,
}

impl<T> Default for LpModel<T> {
    fn default() -> Self {
        LpModel { var_names: Vec::new(), constraints: Vec::new() }
    }
}

impl<T: Scalar> LpModel<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, name: impl Into<String>) -> usize {
        self.var_names.push(name.into());
        self.var_names.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn add_constraint(
        &mut self,
        terms: Vec<(usize, T)>,
        relation: Relation,
        rhs: T,
        tag: impl Into<String>,
        lazy: bool,
    ) {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero_tol()).collect();
        self.constraints.push(Constraint { terms, relation, rhs, tag: tag.into(), lazy });
    }

    pub fn validate(&self) -> Result<()> {
        for row in &self.constraints {
            if let Some((v, _)) = row.terms.iter().find(|(v, _)| *v >= self.num_vars()) {
                return Err(Error::UnknownVariable(*v));
            }
        }
        Ok(())
    }

    /// First violated row, if any.
    pub fn first_violation(&self, values: &[T]) -> Option<usize> {
        self.constraints.iter().position(|c| !c.is_satisfied(values))
    }

    /// Human-readable listing, one constraint per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {} variables (all >= 0)\n", self.num_vars()));
        for (i, name) in self.var_names.iter().enumerate() {
            out.push_str(&format!("var {i} {name}\n"));
        }
        for (i, row) in self.constraints.iter().enumerate() {
            let lhs: Vec<String> = row
                .terms
                .iter()
                .map(|(v, c)| format!("{c}*{}", self.var_names[*v]))
                .collect();
            let lhs = if lhs.is_empty() { "0".to_string() } else { lhs.join(" + ") };
            out.push_str(&format!("c{i} [{}] {lhs} {} {}\n", row.tag, row.relation, row.rhs));
        }
        out
    }
}
