//! Point-set gadgets built from 3-CNF formulas.
//!
//! Each variable contributes a shifted copy of the six-point template `I`, whose
//! three-line optimal separations come in two kinds, told apart by a horizontal
//! line in the upper band (value 1) or the lower band (value 0). Each clause
//! contributes ten points that two extra vertical lines separate exactly when a
//! literal's band line is present. Auxiliary four-point groups force the
//! remaining structure. A satisfying assignment yields a separating set of
//! `k = 5n + 8m - 4` lines, and such a line set can be read back as an assignment.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hitting::{line_hits_segment, LineSet, PointSet};
use crate::model::Point;
use crate::scalar::{int, ratio};
use crate::Rational;

/// A signed variable reference, variables numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn from_dimacs(value: i64) -> Self {
        Literal { var: value.unsigned_abs() as usize, negated: value < 0 }
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn is_satisfied(self, assignment: &Assignment) -> bool {
        assignment.value(self.var) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    pub n: usize,
    pub clauses: Vec<[Literal; 3]>,
    /// Set when the exactly-five-occurrences rule was not enforced.
    pub relaxed: bool,
}

impl Formula {
    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.first_unsatisfied(assignment).is_none()
    }

    /// 1-based index of the first clause the assignment falsifies.
    pub fn first_unsatisfied(&self, assignment: &Assignment) -> Option<usize> {
        self.clauses.iter().position(|c| !c.iter().any(|l| l.is_satisfied(assignment))).map(|j| j + 1)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n, self.m());
        for clause in &self.clauses {
            let lits: Vec<String> = clause.iter().map(|l| l.to_dimacs().to_string()).collect();
            out.push_str(&format!("{} 0\n", lits.join(" ")));
        }
        out
    }
}

/// Truth values for variables `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all(n: usize, value: bool) -> Self {
        Assignment { values: vec![value; n] }
    }

    /// Reads a string of `0`/`1` characters, variable 1 first.
    pub fn parse_bits(bits: &str) -> Result<Self> {
        bits.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Dimacs(format!("assignment character {other:?} is not 0 or 1"))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(Assignment::new)
    }

    pub fn value(&self, var: usize) -> bool {
        self.values[var - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.values {
            f.write_str(if *v { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Checks the structural rules and returns the formula with clause 1 reordered
/// so that its first literal does not use variable 1.
///
/// With `relaxed` set, the exactly-five-occurrences rule and `3m = 5n` are not
/// enforced.
pub fn validate_formula(n: usize, raw: &[Vec<i64>], relaxed: bool) -> Result<Formula> {
    if raw.is_empty() || n == 0 {
        return Err(Error::EmptyFormula);
    }
    let mut clauses = Vec::with_capacity(raw.len());
    for (j, clause) in raw.iter().enumerate() {
        let number = j + 1;
        if clause.len() != 3 {
            return Err(Error::ClauseWidth { clause: number, len: clause.len() });
        }
        for &lit in clause {
            if lit == 0 || lit.unsigned_abs() as usize > n {
                return Err(Error::LiteralOutOfRange { clause: number, literal: lit, n });
            }
        }
        let lits = [Literal::from_dimacs(clause[0]), Literal::from_dimacs(clause[1]), Literal::from_dimacs(clause[2])];
        if lits[0].var == lits[1].var || lits[0].var == lits[2].var || lits[1].var == lits[2].var {
            return Err(Error::RepeatedVariable { clause: number });
        }
        clauses.push(lits);
    }
    if !relaxed {
        if 3 * clauses.len() != 5 * n {
            return Err(Error::ClauseCountMismatch { n, m: clauses.len() });
        }
        let mut count = vec![0usize; n + 1];
        for lit in clauses.iter().flatten() {
            count[lit.var] += 1;
        }
        if let Some(var) = (1..=n).find(|&v| count[v] != 5) {
            return Err(Error::Occurrence { var, count: count[var] });
        }
    }
    if clauses[0][0].var == 1 {
        clauses[0].swap(0, 1);
    }
    Ok(Formula { n, clauses, relaxed })
}

/// Parses DIMACS CNF text. Every clause must have exactly three literals.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i64>>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(Error::Dimacs(format!("bad problem line {line:?}")));
            }
            let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::Dimacs(format!("bad count {s:?}")));
            header = Some((parse(parts[2])?, parse(parts[3])?));
            continue;
        }
        if header.is_none() {
            return Err(Error::Dimacs("clause before the problem line".into()));
        }
        for token in line.split_whitespace() {
            let lit: i64 = token.parse().map_err(|_| Error::Dimacs(format!("bad literal {token:?}")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let (n, m) = header.ok_or_else(|| Error::Dimacs("missing problem line".into()))?;
    if clauses.len() != m {
        return Err(Error::Dimacs(format!("header announces {m} clauses, found {}", clauses.len())));
    }
    Ok((n, clauses))
}

/// A random formula in which every variable occurs in exactly five clauses.
/// `n` must be a positive multiple of 3.
pub fn random_five_occurrence<R: Rng>(n: usize, rng: &mut R) -> Result<Formula> {
    if n == 0 || n % 3 != 0 {
        return Err(Error::ClauseCountMismatch { n, m: 5 * n / 3 });
    }
    let mut slots: Vec<usize> = (1..=n).flat_map(|v| std::iter::repeat(v).take(5)).collect();
    loop {
        slots.shuffle(rng);
        if slots.chunks(3).all(|c| c[0] != c[1] && c[0] != c[2] && c[1] != c[2]) {
            break;
        }
    }
    let raw: Vec<Vec<i64>> = slots
        .chunks(3)
        .map(|c| c.iter().map(|&v| if rng.gen() { v as i64 } else { -(v as i64) }).collect())
        .collect();
    validate_formula(n, &raw, false)
}

/// Which part of the construction a point belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    /// Variable block `V_i`.
    Variable(usize),
    /// Clause points fixed by the clause index: pair 1 or 2 of `T^1_j`.
    ClauseFixed { clause: usize, pair: usize },
    /// Literal pair `t` (1..=3) of clause `j`.
    ClauseLiteral { clause: usize, literal: usize },
    A1(usize),
    A2(usize),
    A3(usize),
    A4(usize),
    A5,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Variable(i) => write!(f, "V{i}"),
            Group::ClauseFixed { clause, pair } => write!(f, "T1_{clause}.{pair}"),
            Group::ClauseLiteral { clause, literal } => write!(f, "T2_{clause}.{literal}"),
            Group::A1(j) => write!(f, "A1_{j}"),
            Group::A2(j) => write!(f, "A2_{j}"),
            Group::A3(j) => write!(f, "A3_{j}"),
            Group::A4(j) => write!(f, "A4_{j}"),
            Group::A5 => write!(f, "A5"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GadgetInstance {
    pub formula: Formula,
    pub points: PointSet<Rational>,
    /// Group of each point, parallel to `points`.
    pub groups: Vec<Group>,
    pub k: usize,
    pub epsilon: Rational,
}

impl GadgetInstance {
    pub fn n(&self) -> usize {
        self.formula.n
    }

    pub fn m(&self) -> usize {
        self.formula.m()
    }

    pub fn indices_of(&self, pred: impl Fn(&Group) -> bool) -> Vec<usize> {
        (0..self.groups.len()).filter(|&i| pred(&self.groups[i])).collect()
    }

    pub fn subset(&self, indices: &[usize]) -> PointSet<Rational> {
        PointSet::new(indices.iter().map(|&i| self.points.points()[i].clone()).collect())
            .expect("subset of distinct points")
    }
}

/// `1 / (100 m)`.
pub fn default_epsilon(m: usize) -> Rational {
    ratio(1, 100 * m as i64)
}

/// The six-point variable template.
pub fn template_i() -> Vec<(i64, i64)> {
    vec![(1, 4), (2, 2), (3, 6), (4, 1), (5, 5), (6, 3)]
}

/// The four-point clause template.
pub fn template_j() -> Vec<(i64, i64)> {
    vec![(2, -1), (5, -2), (6, -3), (9, -4)]
}

fn template_f(e: &Rational) -> Vec<Point<Rational>> {
    vec![
        Point::new(int(0), -e.clone()),
        Point::new(int(-1), int(-1) + e.clone()),
        Point::new(int(-2), -(e.clone() * int(2))),
        Point::new(int(-3), int(-1) + e.clone() * int(2)),
    ]
}

fn template_h(e: &Rational) -> Vec<Point<Rational>> {
    vec![
        Point::new(-e.clone(), int(0)),
        Point::new(int(-1) + e.clone(), int(-1)),
        Point::new(-(e.clone() * int(2)), int(-2)),
        Point::new(int(-1) + e.clone() * int(2), int(-3)),
    ]
}

fn shifted(points: &[Point<Rational>], dx: i64, dy: i64) -> impl Iterator<Item = Point<Rational>> + '_ {
    points.iter().map(move |p| Point::new(p.x.clone() + int(dx), p.y.clone() + int(dy)))
}

/// Translation of `F` for `A^1_j`.
fn a1_offset(m: i64, j: i64) -> (i64, i64) {
    (-4 * m + 3 + 4 * (j - 1), -4 * m + 2 + 4 * (j - 1))
}

fn a2_offset(m: i64, l: i64) -> (i64, i64) {
    (-4 * m + 4 * l, -8 * m + 7 + 4 * (l - 1))
}

fn a3_offset(m: i64, l: i64) -> (i64, i64) {
    (-4 * m - 1 - 4 * (l - 1), 7 + 6 * (l - 1))
}

/// Translation of `H` for `A^4_j`: the x offset places the group between the
/// clause blocks `j` and `j + 1`, the y offset below `A^2`.
fn a4_offset(n: i64, m: i64, j: i64) -> (i64, i64) {
    (6 * n + 2 + 10 * j, -8 * m + 3 - 4 * (j - 1))
}

/// Left edge of clause block `j`.
fn clause_x(n: i64, j: i64) -> i64 {
    6 * n + 1 + 10 * (j - 1)
}

/// x offsets of the literal pairs within a clause block.
const LITERAL_X: [(i64, i64); 3] = [(1, 3), (4, 7), (8, 10)];

/// Builds the gadget with the default `epsilon`.
pub fn build_gadget(formula: &Formula) -> GadgetInstance {
    build_gadget_with(formula, &default_epsilon(formula.m()))
}

/// Builds the gadget. `epsilon` must satisfy `0 < epsilon * m < 1/2`.
pub fn build_gadget_with(formula: &Formula, epsilon: &Rational) -> GadgetInstance {
    let (n, m) = (formula.n as i64, formula.m() as i64);
    let e = epsilon.clone();
    let mut points: Vec<Point<Rational>> = Vec::new();
    let mut groups = Vec::new();
    let mut push = |p: Point<Rational>, g: Group| {
        points.push(p);
        groups.push(g);
    };

    for i in 1..=n {
        for (x, y) in template_i() {
            push(Point::new(int(x + 6 * (i - 1)), int(y + 6 * (i - 1))), Group::Variable(i as usize));
        }
    }
    for (j, clause) in formula.clauses.iter().enumerate() {
        let j = j as i64 + 1;
        let x0 = clause_x(n, j);
        for (t, (x, y)) in template_j().into_iter().enumerate() {
            let pair = t / 2 + 1;
            push(Point::new(int(x + x0), int(y + 4 * (j - m))), Group::ClauseFixed { clause: j as usize, pair });
        }
        let ej = e.clone() * int(j);
        for (t, lit) in clause.iter().enumerate() {
            let base = int(6 * (lit.var as i64 - 1));
            let (hi, lo) = if lit.negated {
                (base.clone() + int(4) - ej.clone(), base + int(3) + ej.clone())
            } else {
                (base.clone() + int(5) - ej.clone(), base + int(4) + ej.clone())
            };
            let (xa, xb) = LITERAL_X[t];
            let g = Group::ClauseLiteral { clause: j as usize, literal: t + 1 };
            push(Point::new(int(x0 + xa), hi), g.clone());
            push(Point::new(int(x0 + xb), lo), g);
        }
    }
    let f = template_f(&e);
    let h = template_h(&e);
    for j in 1..=m {
        let (dx, dy) = a1_offset(m, j);
        shifted(&f, dx, dy).for_each(|p| push(p, Group::A1(j as usize)));
    }
    for l in 1..m {
        let (dx, dy) = a2_offset(m, l);
        shifted(&h, dx, dy).for_each(|p| push(p, Group::A2(l as usize)));
    }
    for l in 1..n {
        let (dx, dy) = a3_offset(m, l);
        shifted(&f, dx, dy).for_each(|p| push(p, Group::A3(l as usize)));
    }
    for j in 1..m {
        let (dx, dy) = a4_offset(n, m, j);
        shifted(&h, dx, dy).for_each(|p| push(p, Group::A4(j as usize)));
    }
    for (dx, dy) in [(1, 1), (1, -1), (3, 1), (3, -1)] {
        push(Point::new(int(6 * n) + ratio(dx, 2), ratio(dy, 2)), Group::A5);
    }

    GadgetInstance {
        formula: formula.clone(),
        points: PointSet::new(points).expect("gadget points are distinct"),
        groups,
        k: (5 * n + 8 * m - 4) as usize,
        epsilon: e,
    }
}

/// Closed-form point count.
pub fn expected_point_count(n: usize, m: usize) -> usize {
    6 * n + 10 * m + 4 * m + 4 * (m - 1) + 4 * (n - 1) + 4 * (m - 1) + 4
}

fn half(v: i64) -> Rational {
    ratio(v, 2)
}

/// The separating set of a satisfying assignment: two lines through the centre
/// of `A^5`, one horizontal and one vertical line per auxiliary group, the
/// three-line configuration of each variable block chosen by its value, and two
/// vertical lines per clause placed around its first satisfied literal.
pub fn assignment_to_hitting_set(gadget: &GadgetInstance, assignment: &Assignment) -> Result<LineSet<Rational>> {
    let formula = &gadget.formula;
    if assignment.len() != formula.n {
        return Err(Error::AssignmentLength { got: assignment.len(), expected: formula.n });
    }
    if let Some(clause) = formula.first_unsatisfied(assignment) {
        return Err(Error::UnsatisfiedClause { clause });
    }
    let (n, m) = (formula.n as i64, formula.m() as i64);
    let mut h: Vec<Rational> = vec![int(0)];
    let mut v: Vec<Rational> = vec![int(6 * n + 1)];
    // F-shaped groups split at y = Y - 1/2, x = X - 3/2; H-shaped at y = Y - 3/2, x = X - 1/2.
    let f_lines = |(dx, dy): (i64, i64), h: &mut Vec<Rational>, v: &mut Vec<Rational>| {
        h.push(half(2 * dy - 1));
        v.push(half(2 * dx - 3));
    };
    for j in 1..=m {
        f_lines(a1_offset(m, j), &mut h, &mut v);
    }
    for l in 1..n {
        f_lines(a3_offset(m, l), &mut h, &mut v);
    }
    let h_lines = |(dx, dy): (i64, i64), h: &mut Vec<Rational>, v: &mut Vec<Rational>| {
        h.push(half(2 * dy - 3));
        v.push(half(2 * dx - 1));
    };
    for l in 1..m {
        h_lines(a2_offset(m, l), &mut h, &mut v);
    }
    for j in 1..m {
        h_lines(a4_offset(n, m, j), &mut h, &mut v);
    }
    for i in 1..=n {
        let s = 12 * (i - 1);
        if assignment.value(i as usize) {
            h.extend([half(s + 9), half(s + 5)]);
            v.push(half(s + 7));
        } else {
            h.push(half(s + 7));
            v.extend([half(s + 5), half(s + 9)]);
        }
    }
    for (j, clause) in formula.clauses.iter().enumerate() {
        let x0 = clause_x(n, j as i64 + 1);
        let t = clause.iter().position(|l| l.is_satisfied(assignment)).expect("clause is satisfied");
        let (a, b) = [(9, 17), (5, 17), (5, 13)][t];
        v.extend([half(2 * x0 + a), half(2 * x0 + b)]);
    }
    Ok(LineSet::new(h, v))
}

/// Reads an assignment off a separating set: a variable whose block is hit by
/// exactly three lines takes 1 if one of them lies in the upper band, 0 if one
/// lies in the lower band; every other variable takes 0.
pub fn hitting_set_to_assignment(gadget: &GadgetInstance, lines: &LineSet<Rational>) -> Result<Assignment> {
    if let Some((a, b)) = lines.first_unhit(&gadget.points)? {
        return Err(Error::NotSeparating(a, b));
    }
    let pts = gadget.points.points();
    let mut values = Vec::with_capacity(gadget.n());
    for i in 1..=gadget.n() {
        let block = gadget.indices_of(|g| *g == Group::Variable(i));
        let used: Vec<_> = lines
            .lines()
            .filter(|line| {
                block.iter().enumerate().any(|(s, &a)| {
                    block[s + 1..].iter().any(|&b| line_hits_segment(line, &pts[a], &pts[b]))
                })
            })
            .collect();
        let base = int(6 * (i as i64 - 1));
        let in_band = |lo: i64| {
            let (lo, hi) = (base.clone() + int(lo), base.clone() + int(lo + 1));
            lines.horizontals.iter().any(|y| *y > lo && *y < hi)
        };
        values.push(used.len() == 3 && in_band(4));
    }
    Ok(Assignment::new(values))
}

/// Closed x- and y-extent of a group of points.
pub fn spans(points: &[&Point<Rational>]) -> ((Rational, Rational), (Rational, Rational)) {
    let xs = points.iter().map(|p| p.x.clone());
    let ys = points.iter().map(|p| p.y.clone());
    let lo_hi = |it: &mut dyn Iterator<Item = Rational>| {
        let first = it.next().expect("nonempty group");
        it.fold((first.clone(), first), |(lo, hi), v| (if v < lo { v.clone() } else { lo }, if v > hi { v } else { hi }))
    };
    (lo_hi(&mut xs.into_iter()), lo_hi(&mut ys.into_iter()))
}

/// The groups whose x-spans and y-spans are claimed pairwise disjoint: every
/// auxiliary group, the variable blocks but the last, and both pairs of each
/// fixed clause group.
pub fn disjoint_span_collection(gadget: &GadgetInstance) -> Vec<(Group, Vec<usize>)> {
    let mut keys: Vec<Group> = Vec::new();
    for g in &gadget.groups {
        let wanted = match g {
            Group::Variable(i) => *i < gadget.n(),
            Group::ClauseLiteral { .. } => false,
            _ => true,
        };
        if wanted && !keys.contains(g) {
            keys.push(g.clone());
        }
    }
    keys.into_iter()
        .map(|k| {
            let members = gadget.indices_of(|g| *g == k);
            (k, members)
        })
        .collect()
}

/// First pair of groups in [`disjoint_span_collection`] whose x-spans or
/// y-spans intersect.
pub fn first_span_overlap(gadget: &GadgetInstance) -> Option<(Group, Group)> {
    let pts = gadget.points.points();
    let collection = disjoint_span_collection(gadget);
    let extents: Vec<_> = collection
        .iter()
        .map(|(_, members)| spans(&members.iter().map(|&i| &pts[i]).collect::<Vec<_>>()))
        .collect();
    let apart = |a: &(Rational, Rational), b: &(Rational, Rational)| a.1 < b.0 || b.1 < a.0;
    for a in 0..collection.len() {
        for b in a + 1..collection.len() {
            let ((xa, ya), (xb, yb)) = (&extents[a], &extents[b]);
            if !apart(xa, xb) || !apart(ya, yb) {
                return Some((collection[a].0.clone(), collection[b].0.clone()));
            }
        }
    }
    None
}
