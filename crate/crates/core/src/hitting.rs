//! Axis-parallel lines hitting the segments induced by a point set.
//!
//! A set of lines hits every segment between two points exactly when it puts
//! each point in its own cell, so "hitting" and "separating" are used
//! interchangeably. Small instances are solved exactly by branch and bound over
//! canonical candidate lines: one midpoint between each pair of consecutive
//! distinct coordinates per axis.

use std::cmp::Ordering;

use crate::approx::verify_solution;
use crate::error::{Error, Result};
use crate::model::{bounding_box, cmp, first_overlap, Axis, Instance, Layout, Point, RectId};
use crate::scalar::Scalar;

/// Default point-count limit for the exact solvers.
pub const DEFAULT_EXACT_CAP: usize = 12;

/// Pairwise distinct points.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet<T> {
    points: Vec<Point<T>>,
}

impl<T: Scalar> PointSet<T> {
    pub fn new(points: Vec<Point<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        for (i, p) in points.iter().enumerate() {
            if let Some(j) = points[..i].iter().position(|q| same_point(p, q)) {
                return Err(Error::DuplicatePoint(j, i));
            }
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The points as centers of unit squares with ids `"0"`, `"1"`, ...
    pub fn as_layout(&self) -> Layout<T> {
        self.points.iter().enumerate().map(|(i, p)| (RectId::new(i.to_string()), p.clone())).collect()
    }

    pub fn unit_square_instance(&self) -> Instance<T> {
        Instance::unit_squares(&self.points).expect("distinct points form a valid instance")
    }
}

fn same_point<T: Scalar>(p: &Point<T>, q: &Point<T>) -> bool {
    cmp(&p.x, &q.x).is_eq() && cmp(&p.y, &q.y).is_eq()
}

/// Unordered pairs of point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentSet {
    pub segments: Vec<(usize, usize)>,
}

impl SegmentSet {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

pub fn induced_segments<T: Scalar>(points: &PointSet<T>) -> SegmentSet {
    let n = points.len();
    let segments = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    SegmentSet { segments }
}

/// An axis-parallel line: `Horizontal(y)` or `Vertical(x)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Line<T> {
    Horizontal(T),
    Vertical(T),
}

impl<T: Scalar> Line<T> {
    /// Axis of the coordinate the line fixes.
    pub fn axis(&self) -> Axis {
        match self {
            Line::Horizontal(_) => Axis::Y,
            Line::Vertical(_) => Axis::X,
        }
    }

    pub fn value(&self) -> &T {
        match self {
            Line::Horizontal(v) | Line::Vertical(v) => v,
        }
    }

    pub fn passes_through(&self, p: &Point<T>) -> bool {
        cmp(p.coord(self.axis()), self.value()).is_eq()
    }
}

/// Whether `line` meets the relative interior of segment `pq` and neither
/// endpoint. A horizontal line never hits a horizontal segment, and likewise for
/// vertical ones.
pub fn line_hits_segment<T: Scalar>(line: &Line<T>, p: &Point<T>, q: &Point<T>) -> bool {
    let axis = line.axis();
    let (a, b, v) = (p.coord(axis), q.coord(axis), line.value());
    (cmp(a, v).is_lt() && cmp(v, b).is_lt()) || (cmp(b, v).is_lt() && cmp(v, a).is_lt())
}

/// Horizontal line y-values and vertical line x-values, each sorted ascending
/// without repeats.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSet<T> {
    pub horizontals: Vec<T>,
    pub verticals: Vec<T>,
}

impl<T: Scalar> Default for LineSet<T> {
    fn default() -> Self {
        LineSet::empty()
    }
}

fn sorted_unique<T: Scalar>(mut values: Vec<T>) -> Vec<T> {
    values.sort_by(cmp);
    values.dedup_by(|a, b| cmp(a, b).is_eq());
    values
}

impl<T: Scalar> LineSet<T> {
    pub fn new(horizontals: Vec<T>, verticals: Vec<T>) -> Self {
        LineSet { horizontals: sorted_unique(horizontals), verticals: sorted_unique(verticals) }
    }

    pub fn empty() -> Self {
        LineSet { horizontals: Vec::new(), verticals: Vec::new() }
    }

    /// Number of horizontal lines.
    pub fn r(&self) -> usize {
        self.horizontals.len()
    }

    /// Number of vertical lines.
    pub fn c(&self) -> usize {
        self.verticals.len()
    }

    pub fn len(&self) -> usize {
        self.r() + self.c()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lines(&self) -> impl Iterator<Item = Line<T>> + '_ {
        self.horizontals
            .iter()
            .map(|y| Line::Horizontal(y.clone()))
            .chain(self.verticals.iter().map(|x| Line::Vertical(x.clone())))
    }

    /// Lines translated by `(dx, dy)`.
    pub fn translated(&self, dx: &T, dy: &T) -> Self {
        LineSet {
            horizontals: self.horizontals.iter().map(|y| y.clone() + dy.clone()).collect(),
            verticals: self.verticals.iter().map(|x| x.clone() + dx.clone()).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut h = self.horizontals.clone();
        h.extend(other.horizontals.iter().cloned());
        let mut v = self.verticals.clone();
        v.extend(other.verticals.iter().cloned());
        LineSet::new(h, v)
    }

    /// `(verticals left of p, horizontals below p)`, or `None` if a line passes
    /// through `p`.
    fn cell_of(&self, p: &Point<T>) -> Option<(usize, usize)> {
        let locate = |sorted: &[T], v: &T| {
            let below = sorted.partition_point(|line| cmp(line, v).is_lt());
            match sorted.get(below) {
                Some(line) if cmp(line, v).is_eq() => None,
                _ => Some(below),
            }
        };
        Some((locate(&self.verticals, &p.x)?, locate(&self.horizontals, &p.y)?))
    }

    /// Lexicographically first segment of `points` hit by none of the lines.
    /// Two points are left unseparated exactly when they share a cell of the
    /// line arrangement.
    pub fn first_unhit(&self, points: &PointSet<T>) -> Result<Option<(usize, usize)>> {
        let mut cells = Vec::with_capacity(points.len());
        for (i, p) in points.points().iter().enumerate() {
            cells.push((self.cell_of(p).ok_or(Error::LineThroughPoint(i))?, i));
        }
        cells.sort_unstable();
        Ok(cells.windows(2).filter(|w| w[0].0 == w[1].0).map(|w| (w[0].1, w[1].1)).min())
    }
}

pub fn is_separating<T: Scalar>(lines: &LineSet<T>, points: &PointSet<T>) -> Result<bool> {
    Ok(lines.first_unhit(points)?.is_none())
}

/// Canonical candidates: midpoints between consecutive distinct coordinates,
/// as `(horizontal y-values, vertical x-values)`.
pub fn candidate_lines<T: Scalar>(points: &PointSet<T>) -> (Vec<T>, Vec<T>) {
    let mids = |axis: Axis| {
        let values = sorted_unique(points.points().iter().map(|p| p.coord(axis).clone()).collect());
        values.windows(2).map(|w| (w[0].clone() + w[1].clone()) * T::half()).collect::<Vec<T>>()
    };
    (mids(Axis::Y), mids(Axis::X))
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(k, w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b))
    }
}

#[derive(Clone, Copy)]
struct Budget {
    total: usize,
    horizontal: usize,
    vertical: usize,
}

/// Set-cover search over the candidate lines of one point set.
struct Cover<T> {
    horizontals: Vec<T>,
    verticals: Vec<T>,
    /// Segments hit by each candidate (horizontals first).
    hits: Vec<Bits>,
    /// Candidates hitting each segment.
    hitters: Vec<Vec<usize>>,
    segments: usize,
}

enum Sink {
    First(Option<Vec<usize>>),
    All(Vec<Vec<usize>>),
}

impl<T: Scalar> Cover<T> {
    fn new(points: &PointSet<T>, cap: usize) -> Result<Self> {
        if points.len() > cap {
            return Err(Error::ExactCapExceeded { points: points.len(), cap });
        }
        let (horizontals, verticals) = candidate_lines(points);
        let segs = induced_segments(points).segments;
        let pts = points.points();
        let lines: Vec<Line<T>> = horizontals
            .iter()
            .map(|y| Line::Horizontal(y.clone()))
            .chain(verticals.iter().map(|x| Line::Vertical(x.clone())))
            .collect();
        let mut hits = vec![Bits::new(segs.len()); lines.len()];
        let mut hitters = vec![Vec::new(); segs.len()];
        for (k, line) in lines.iter().enumerate() {
            for (s, &(a, b)) in segs.iter().enumerate() {
                if line_hits_segment(line, &pts[a], &pts[b]) {
                    hits[k].set(s);
                    hitters[s].push(k);
                }
            }
        }
        Ok(Cover { horizontals, verticals, hits, hitters, segments: segs.len() })
    }

    fn is_horizontal(&self, k: usize) -> bool {
        k < self.horizontals.len()
    }

    fn allowed(&self, k: usize, excluded: &Bits, budget: Budget) -> bool {
        !excluded.get(k)
            && if self.is_horizontal(k) {
                budget.horizontal > 0
            } else {
                budget.vertical > 0
            }
    }

    fn all_uncovered(&self) -> Bits {
        let mut bits = Bits::new(self.segments);
        for s in 0..self.segments {
            bits.set(s);
        }
        bits
    }

    fn line_set(&self, chosen: &[usize]) -> LineSet<T> {
        let h = chosen.iter().filter(|&&k| self.is_horizontal(k)).map(|&k| self.horizontals[k].clone());
        let v = chosen
            .iter()
            .filter(|&&k| !self.is_horizontal(k))
            .map(|&k| self.verticals[k - self.horizontals.len()].clone());
        LineSet::new(h.collect(), v.collect())
    }

    /// Branches on the uncovered segment with fewest usable candidates; the
    /// `i`-th branch takes candidate `i` and excludes candidates `0..i`, so every
    /// cover is produced once.
    fn search(&self, uncovered: &Bits, excluded: &mut Bits, chosen: &mut Vec<usize>, budget: Budget, sink: &mut Sink) {
        if uncovered.is_empty() {
            match sink {
                Sink::First(found) => *found = Some(chosen.clone()),
                Sink::All(found) => found.push(chosen.clone()),
            }
            return;
        }
        if budget.total == 0 {
            return;
        }
        // Segments with pairwise disjoint usable candidates each need their own line.
        let mut used = Bits::new(self.hits.len());
        let mut bound = 0;
        let mut branch: Option<(usize, Vec<usize>)> = None;
        for s in uncovered.ones() {
            let options: Vec<usize> =
                self.hitters[s].iter().copied().filter(|&k| self.allowed(k, excluded, budget)).collect();
            if options.is_empty() {
                return;
            }
            if options.iter().all(|&k| !used.get(k)) {
                bound += 1;
                for &k in &options {
                    used.set(k);
                }
            }
            if branch.as_ref().is_none_or(|(_, best)| options.len() < best.len()) {
                branch = Some((s, options));
            }
        }
        if bound > budget.total {
            return;
        }
        let (_, options) = branch.expect("some segment is uncovered");
        let mut newly_excluded = Vec::new();
        for &k in &options {
            let mut next = budget;
            next.total -= 1;
            if self.is_horizontal(k) {
                next.horizontal -= 1;
            } else {
                next.vertical -= 1;
            }
            chosen.push(k);
            self.search(&uncovered.and_not(&self.hits[k]), excluded, chosen, next, sink);
            chosen.pop();
            if matches!(sink, Sink::First(Some(_))) {
                break;
            }
            excluded.set(k);
            newly_excluded.push(k);
        }
        for k in newly_excluded {
            excluded.0[k / 64] &= !(1 << (k % 64));
        }
    }

    fn run(&self, budget: Budget, mut sink: Sink) -> Sink {
        let mut excluded = Bits::new(self.hits.len());
        self.search(&self.all_uncovered(), &mut excluded, &mut Vec::new(), budget, &mut sink);
        sink
    }

    fn first(&self, budget: Budget) -> Option<LineSet<T>> {
        match self.run(budget, Sink::First(None)) {
            Sink::First(found) => found.map(|c| self.line_set(&c)),
            Sink::All(_) => unreachable!(),
        }
    }

    fn minimum_size(&self) -> usize {
        let n = self.hits.len();
        (0..=n)
            .find(|&k| self.first(Budget { total: k, horizontal: k, vertical: k }).is_some())
            .expect("all candidates together separate distinct points")
    }
}

/// A minimum-cardinality separating line set over the canonical candidates.
pub fn exact_uhs<T: Scalar>(points: &PointSet<T>, cap: usize) -> Result<LineSet<T>> {
    let cover = Cover::new(points, cap)?;
    let k = cover.minimum_size();
    Ok(cover.first(Budget { total: k, horizontal: k, vertical: k }).expect("size k is attainable"))
}

/// Every minimum-cardinality separating set over the canonical candidates, in
/// search order.
pub fn all_minimum_hitting_sets<T: Scalar>(points: &PointSet<T>, cap: usize) -> Result<Vec<LineSet<T>>> {
    let cover = Cover::new(points, cap)?;
    let k = cover.minimum_size();
    match cover.run(Budget { total: k, horizontal: k, vertical: k }, Sink::All(Vec::new())) {
        Sink::All(found) => Ok(found.iter().map(|c| cover.line_set(c)).collect()),
        Sink::First(_) => unreachable!(),
    }
}

/// A separating set with at most `r` horizontal and `c` vertical lines, if any.
pub fn cuhs_witness<T: Scalar>(points: &PointSet<T>, r: usize, c: usize, cap: usize) -> Result<Option<LineSet<T>>> {
    let cover = Cover::new(points, cap)?;
    Ok(cover.first(Budget { total: r + c, horizontal: r, vertical: c }))
}

pub fn cuhs_decide<T: Scalar>(points: &PointSet<T>, r: usize, c: usize, cap: usize) -> Result<bool> {
    Ok(cuhs_witness(points, r, c, cap)?.is_some())
}

/// Least `(r, c)`-cost over separating sets, with a witness.
#[derive(Clone, Debug, PartialEq)]
pub struct LadsOptimum<T> {
    pub value: u64,
    pub r: usize,
    pub c: usize,
    pub lines: LineSet<T>,
}

/// For every `r`, the fewest vertical lines that complete a separating set.
fn pareto<T: Scalar>(points: &PointSet<T>, cap: usize) -> Result<Vec<(usize, usize, LineSet<T>)>> {
    let cover = Cover::new(points, cap)?;
    let (nh, nv) = (cover.horizontals.len(), cover.verticals.len());
    let mut front = Vec::new();
    for r in 0..=nh {
        for c in 0..=nv {
            if let Some(lines) = cover.first(Budget { total: r + c, horizontal: r, vertical: c }) {
                front.push((r, c, lines));
                break;
            }
        }
    }
    Ok(front)
}

fn optimum_by<T: Scalar>(points: &PointSet<T>, cap: usize, cost: impl Fn(u64, u64) -> u64) -> Result<LadsOptimum<T>> {
    pareto(points, cap)?
        .into_iter()
        .map(|(r, c, lines)| LadsOptimum { value: cost(r as u64 + 1, c as u64 + 1), r, c, lines })
        .min_by(|a, b| a.value.cmp(&b.value).then((a.r, a.c).cmp(&(b.r, b.c))))
        .ok_or(Error::EmptyPointSet)
}

/// `min (r + 1)(c + 1)` over separating sets: the optimal unit-square layout area
/// up to the slack `eps`.
pub fn optimal_lads_area<T: Scalar>(points: &PointSet<T>, cap: usize) -> Result<LadsOptimum<T>> {
    optimum_by(points, cap, |h, w| h * w)
}

/// `min 2((r + 1) + (c + 1))` over separating sets.
pub fn optimal_lads_perimeter<T: Scalar>(points: &PointSet<T>, cap: usize) -> Result<LadsOptimum<T>> {
    optimum_by(points, cap, |h, w| 2 * (h + w))
}

/// Cell coordinates and in-cell ranks of each point with respect to a line set.
#[derive(Clone, Debug, PartialEq)]
pub struct HitMap<T> {
    /// `(verticals left of p, horizontals below p)`.
    pub rho: Vec<(usize, usize)>,
    /// 1-based rank of `p.x` among the distinct x-values of its column.
    pub alpha: Vec<usize>,
    /// 1-based rank of `p.y` among the distinct y-values of its row.
    pub beta: Vec<usize>,
    pub delta: T,
}

fn count_below<T: Scalar>(sorted: &[T], v: &T) -> usize {
    sorted.iter().take_while(|line| cmp(*line, v) == Ordering::Less).count()
}

fn dense_rank<T: Scalar>(values: &[&T], v: &T) -> usize {
    let mut distinct: Vec<&T> = values.iter().copied().filter(|u| cmp(*u, v).is_lt()).collect();
    distinct.sort_by(|a, b| cmp(*a, *b));
    distinct.dedup_by(|a, b| cmp(*a, *b).is_eq());
    distinct.len() + 1
}

pub fn hit_map<T: Scalar>(points: &PointSet<T>, lines: &LineSet<T>, eps: &T) -> Result<HitMap<T>> {
    if !eps.is_pos() {
        return Err(Error::InvalidEps(eps.to_string()));
    }
    if let Some((a, b)) = lines.first_unhit(points)? {
        return Err(Error::NotSeparating(a, b));
    }
    let pts = points.points();
    let rho: Vec<(usize, usize)> =
        pts.iter().map(|p| (count_below(&lines.verticals, &p.x), count_below(&lines.horizontals, &p.y))).collect();
    let rank = |i: usize, axis: Axis, same: &dyn Fn(usize) -> bool| {
        let peers: Vec<&T> = (0..pts.len()).filter(|&j| same(j)).map(|j| pts[j].coord(axis)).collect();
        dense_rank(&peers, pts[i].coord(axis))
    };
    let alpha = (0..pts.len()).map(|i| rank(i, Axis::X, &|j| rho[j].0 == rho[i].0)).collect();
    let beta = (0..pts.len()).map(|i| rank(i, Axis::Y, &|j| rho[j].1 == rho[i].1)).collect();
    let delta = eps.clone() / T::from_usize(pts.len()).expect("count fits scalar");
    Ok(HitMap { rho, alpha, beta, delta })
}

/// Unit-square layout from a separating set: the point in cell `(i, j)` goes to
/// `(i(1 + d) + 1/2 + d * alpha / n, j(1 + d) + 1/2 + d * beta / n)` with
/// `d = eps / n`. The result is disjoint, keeps the point order, and fits in
/// `(c + 1 + eps) x (r + 1 + eps)`.
pub fn hitting_to_layout<T: Scalar>(points: &PointSet<T>, lines: &LineSet<T>, eps: &T) -> Result<Layout<T>> {
    let map = hit_map(points, lines, eps)?;
    let n = T::from_usize(points.len()).expect("count fits scalar");
    let d = map.delta.clone();
    let coord = |cell: usize, rank: usize| {
        let cell = T::from_usize(cell).expect("index fits scalar");
        let rank = T::from_usize(rank).expect("index fits scalar");
        cell * (T::one() + d.clone()) + T::half() + d.clone() * rank / n.clone()
    };
    Ok((0..points.len())
        .map(|i| {
            let (ci, cj) = map.rho[i];
            (RectId::new(i.to_string()), Point::new(coord(ci, map.alpha[i]), coord(cj, map.beta[i])))
        })
        .collect())
}

/// Separating lines from a disjoint unit-square layout of width at most `w + e`
/// and height at most `h + e` with `e < 1/2`.
///
/// With the bounding box moved to the origin, the lines are `x = i + 1/2 - d`
/// for `i = 1..w-1` and `y = j + 1/2 - d` for `j = 1..h-1`, where `d` starts at
/// `1/4` and is halved until no line meets a center. Lines are returned in the
/// layout's own frame.
pub fn layout_to_hitting<T: Scalar>(instance: &Instance<T>, layout: &Layout<T>, w: u64, h: u64) -> Result<LineSet<T>> {
    if !instance.is_unit_squares() {
        return Err(Error::Precondition("layout_to_hitting needs unit squares".into()));
    }
    instance.check_layout(layout)?;
    if let Some((a, b)) = first_overlap(instance, layout)? {
        return Err(Error::NotDisjoint(a, b));
    }
    let bbox = bounding_box(instance, layout)?;
    let slack_ok = |extent: T, cap: u64| (T::half() + T::from_u64(cap).expect("fits") - extent).is_pos();
    if !slack_ok(bbox.width(), w) || !slack_ok(bbox.height(), h) {
        return Err(Error::Precondition(format!(
            "bounding box {} x {} exceeds ({w} + 1/2) x ({h} + 1/2)",
            bbox.width(),
            bbox.height()
        )));
    }
    let centers: Vec<Point<T>> = layout
        .iter()
        .map(|(_, p)| Point::new(p.x.clone() - bbox.left.clone(), p.y.clone() - bbox.bottom.clone()))
        .collect();
    let grid = |count: u64, d: &T| -> Vec<T> {
        (1..count).map(|i| T::from_u64(i).expect("fits") + T::half() - d.clone()).collect()
    };
    let mut d = T::from_ratio(1, 4);
    loop {
        let lines = LineSet::new(grid(h, &d), grid(w, &d));
        if lines.lines().all(|l| centers.iter().all(|p| !l.passes_through(p))) {
            return Ok(lines.translated(&bbox.left, &bbox.bottom));
        }
        d = d * T::half();
    }
}

/// Checks a layout produced by [`hitting_to_layout`] against its bounds.
pub fn check_lemma_layout<T: Scalar>(points: &PointSet<T>, layout: &Layout<T>, lines: &LineSet<T>, eps: &T) -> Result<bool> {
    let instance = points.unit_square_instance();
    let report = verify_solution(&instance, layout)?;
    let w_cap = T::from_usize(lines.c() + 1).expect("fits") + eps.clone();
    let h_cap = T::from_usize(lines.r() + 1).expect("fits") + eps.clone();
    Ok(report.is_valid() && report.bbox.width() <= w_cap && report.bbox.height() <= h_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use crate::Rational;

    fn pts(coords: &[(i64, i64)]) -> PointSet<Rational> {
        PointSet::new(coords.iter().map(|&(x, y)| Point::new(int(x), int(y))).collect()).unwrap()
    }

    fn template_i() -> PointSet<Rational> {
        pts(&[(1, 4), (2, 2), (3, 6), (4, 1), (5, 5), (6, 3)])
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> (Point<Rational>, Point<Rational>) {
        (Point::new(int(a.0), int(a.1)), Point::new(int(b.0), int(b.1)))
    }

    #[test]
    fn segment_counts() {
        assert_eq!(induced_segments(&pts(&[(0, 0)])).len(), 0);
        assert_eq!(induced_segments(&pts(&[(0, 0), (1, 1)])).len(), 1);
        assert_eq!(induced_segments(&template_i()).len(), 15);
    }

    #[test]
    fn point_set_validation() {
        assert_eq!(PointSet::<Rational>::new(vec![]).unwrap_err(), Error::EmptyPointSet);
        let dup = vec![Point::new(int(1), int(1)), Point::new(int(0), int(0)), Point::new(int(1), int(1))];
        assert_eq!(PointSet::new(dup).unwrap_err(), Error::DuplicatePoint(0, 2));
    }

    #[test]
    fn hit_predicate() {
        let (p, q) = seg((0, 0), (1, 1));
        assert!(line_hits_segment(&Line::Vertical(ratio(1, 2)), &p, &q));
        assert!(!line_hits_segment(&Line::Vertical(int(0)), &p, &q));
        let (p, q) = seg((0, 0), (2, 0));
        assert!(!line_hits_segment(&Line::Horizontal(int(0)), &p, &q));
        assert!(line_hits_segment(&Line::Vertical(int(1)), &p, &q));
    }

    #[test]
    fn separation() {
        let two = pts(&[(0, 0), (1, 1)]);
        assert!(is_separating(&LineSet::new(vec![], vec![ratio(1, 2)]), &two).unwrap());
        assert!(!is_separating(&LineSet::new(vec![int(-5)], vec![]), &two).unwrap());
        assert_eq!(
            is_separating(&LineSet::new(vec![], vec![int(1)]), &two).unwrap_err(),
            Error::LineThroughPoint(1)
        );
        let type1 = LineSet::new(vec![ratio(9, 2), ratio(5, 2)], vec![ratio(7, 2)]);
        assert!(is_separating(&type1, &template_i()).unwrap());
    }

    #[test]
    fn exact_optima() {
        assert_eq!(exact_uhs(&pts(&[(0, 0), (1, 1)]), 12).unwrap().len(), 1);
        assert_eq!(exact_uhs(&template_i(), 12).unwrap().len(), 3);
        let line = exact_uhs(&pts(&[(0, 0), (1, 0), (2, 0)]), 12).unwrap();
        assert_eq!((line.r(), line.c()), (0, 2));
    }

    #[test]
    fn cap_is_enforced() {
        let many: Vec<(i64, i64)> = (0..13).map(|i| (i, 2 * i)).collect();
        assert_eq!(exact_uhs(&pts(&many), 12).unwrap_err(), Error::ExactCapExceeded { points: 13, cap: 12 });
        assert!(exact_uhs(&pts(&many), 13).is_ok());
    }

    #[test]
    fn constrained_decisions_on_template() {
        let i = template_i();
        assert!(cuhs_decide(&i, 1, 2, 12).unwrap());
        assert!(!cuhs_decide(&i, 3, 0, 12).unwrap());
        assert!(!cuhs_decide(&i, 0, 2, 12).unwrap());
        assert!(cuhs_decide(&i, 0, 5, 12).unwrap());
        assert!(!cuhs_decide(&i, 0, 4, 12).unwrap());
    }

    #[test]
    fn both_optimal_types_on_template() {
        let all = all_minimum_hitting_sets(&template_i(), 12).unwrap();
        let type1 = LineSet::new(vec![ratio(5, 2), ratio(9, 2)], vec![ratio(7, 2)]);
        let type0 = LineSet::new(vec![ratio(7, 2)], vec![ratio(5, 2), ratio(9, 2)]);
        assert!(all.contains(&type1));
        assert!(all.contains(&type0));
        assert!(all.iter().all(|l| l.len() == 3 && is_separating(l, &template_i()).unwrap()));
    }

    #[test]
    fn lads_optima() {
        assert_eq!(optimal_lads_area(&pts(&[(3, 4)]), 12).unwrap().value, 1);
        let two = optimal_lads_area(&pts(&[(0, 0), (1, 1)]), 12).unwrap();
        assert_eq!(two.value, 2);
        let i = optimal_lads_area(&template_i(), 12).unwrap();
        // three lines split 1 + 2 give a 2 x 3 grid
        assert_eq!(i.value, 6);
        assert_eq!(optimal_lads_perimeter(&pts(&[(0, 0), (1, 1)]), 12).unwrap().value, 6);
    }

    #[test]
    fn hitting_to_layout_two_points() {
        let two = pts(&[(0, 0), (1, 1)]);
        let lines = LineSet::new(vec![], vec![ratio(1, 2)]);
        let eps = ratio(1, 10);
        let layout = hitting_to_layout(&two, &lines, &eps).unwrap();
        assert!(check_lemma_layout(&two, &layout, &lines, &eps).unwrap());
        let bbox = bounding_box(&two.unit_square_instance(), &layout).unwrap();
        assert!(bbox.width() <= ratio(21, 10) && bbox.height() <= ratio(11, 10));
    }

    #[test]
    fn hitting_to_layout_single_point() {
        let one = pts(&[(4, 4)]);
        let layout = hitting_to_layout(&one, &LineSet::empty(), &ratio(1, 10)).unwrap();
        let bbox = bounding_box(&one.unit_square_instance(), &layout).unwrap();
        assert_eq!((bbox.width(), bbox.height()), (int(1), int(1)));
    }

    #[test]
    fn hitting_to_layout_rejects_non_separating() {
        let two = pts(&[(0, 0), (1, 1)]);
        assert_eq!(
            hitting_to_layout(&two, &LineSet::empty(), &ratio(1, 10)).unwrap_err(),
            Error::NotSeparating(0, 1)
        );
    }

    #[test]
    fn layout_to_hitting_example() {
        let p = PointSet::new(vec![Point::new(ratio(1, 2), ratio(1, 2)), Point::new(ratio(8, 5), ratio(1, 2))]).unwrap();
        let inst = p.unit_square_instance();
        let lines = layout_to_hitting(&inst, inst.initial(), 2, 1).unwrap();
        assert_eq!((lines.c(), lines.r()), (1, 0));
        assert!(is_separating(&lines, &p).unwrap());
        let single = pts(&[(0, 0)]).unit_square_instance();
        assert!(layout_to_hitting(&single, single.initial(), 1, 1).unwrap().is_empty());
    }

    #[test]
    fn layout_to_hitting_preconditions() {
        let p = pts(&[(0, 0), (3, 0)]);
        let inst = p.unit_square_instance();
        assert!(matches!(layout_to_hitting(&inst, inst.initial(), 3, 1), Err(Error::Precondition(_))));
        assert!(layout_to_hitting(&inst, inst.initial(), 4, 1).is_ok());
        let overlapping = PointSet::new(vec![Point::new(int(0), int(0)), Point::new(ratio(1, 2), ratio(1, 2))]).unwrap();
        let inst = overlapping.unit_square_instance();
        assert!(matches!(layout_to_hitting(&inst, inst.initial(), 2, 2), Err(Error::NotDisjoint(..))));
    }

    #[test]
    fn template_round_trip() {
        let i = template_i();
        let eps = ratio(1, 10);
        for lines in all_minimum_hitting_sets(&i, 12).unwrap() {
            let layout = hitting_to_layout(&i, &lines, &eps).unwrap();
            assert!(check_lemma_layout(&i, &layout, &lines, &eps).unwrap());
            let back = layout_to_hitting(&i.unit_square_instance(), &layout, lines.c() as u64 + 1, lines.r() as u64 + 1)
                .unwrap();
            assert!(back.c() <= lines.c() && back.r() <= lines.r());
            let centers = PointSet::new(layout.iter().map(|(_, p)| p.clone()).collect()).unwrap();
            assert!(is_separating(&back, &centers).unwrap());
        }
    }

    #[test]
    fn float_points_share_the_solver() {
        let p = PointSet::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 1.0), Point::new(2.0, 0.5)]).unwrap();
        let lines = exact_uhs(&p, 12).unwrap();
        assert!(is_separating(&lines, &p).unwrap());
    }
}
