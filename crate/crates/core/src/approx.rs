//! Grid search over bounding-box cells with 2x rounding.
//!
//! Each cell `(w, h)` of a schedule is decided by the layout LP; the feasible LP
//! layout of least area (or perimeter) is kept and every center coordinate is
//! doubled. Doubling turns the relaxed separation row into true disjointness.

use std::cmp::Ordering;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lp::{build_layout_lp, check_eps, solve_exact, SolveOptions};
use crate::model::{
    bounding_box, cmp, first_order_violation, first_overlap, overlap_1d, rigidity_classes, Axis, BBox, Instance,
    Layout, Point, RectId,
};
use crate::scalar::{ceil_u64, int, Scalar};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum ScheduleMode {
    /// Every integer in `[W_max, W_R]` and `[H_max, H_R]`.
    Exact,
    /// Values growing by a factor of `1 + mu`, rounded up and capped.
    Geometric(Rational),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSchedule {
    pub widths: Vec<u64>,
    pub heights: Vec<u64>,
    /// Zero for the exact schedule.
    pub ratio: Rational,
}

impl GridSchedule {
    pub fn len(&self) -> usize {
        self.widths.len() * self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks the schedule against the instance ranges.
    pub fn validate<T: Scalar>(&self, instance: &Instance<T>) -> Result<()> {
        let check = |values: &[u64], lo: u64, hi: u64, axis: &str| {
            if values.is_empty() {
                return Err(Error::InvalidSchedule(format!("no {axis} values")));
            }
            if values.windows(2).any(|p| p[0] >= p[1]) {
                return Err(Error::InvalidSchedule(format!("{axis} values not strictly ascending")));
            }
            if values[0] < lo || values[values.len() - 1] > hi {
                return Err(Error::InvalidSchedule(format!("{axis} values outside [{lo}, {hi}]")));
            }
            Ok(())
        };
        check(&self.widths, instance.w_max(), instance.w_sum(), "width")?;
        check(&self.heights, instance.h_max(), instance.h_sum(), "height")
    }
}

/// `1 / ceil(log2(1 + W_R + H_R))`.
pub fn default_mu<T: Scalar>(instance: &Instance<T>) -> Rational {
    let total = 1 + instance.w_sum() + instance.h_sum();
    let bits = 64 - (total - 1).leading_zeros() as i64;
    Rational::new(1.into(), bits.max(1).into())
}

fn axis_values(lo: u64, hi: u64, mode: &ScheduleMode) -> Result<Vec<u64>> {
    match mode {
        ScheduleMode::Exact => Ok((lo..=hi).collect()),
        ScheduleMode::Geometric(mu) => {
            if !mu.is_pos() {
                return Err(Error::InvalidSchedule(format!("mu must be positive, got {mu}")));
            }
            let factor = Rational::one() + mu.clone();
            let mut values = vec![lo];
            let mut scale = Rational::one();
            while *values.last().unwrap() < hi {
                scale = scale * factor.clone();
                let next = ceil_u64(&(int(lo as i64) * scale.clone())).unwrap_or(u64::MAX).min(hi);
                if next > *values.last().unwrap() {
                    values.push(next);
                }
            }
            Ok(values)
        }
    }
}

pub fn make_schedule<T: Scalar>(instance: &Instance<T>, mode: &ScheduleMode) -> Result<GridSchedule> {
    let ratio = match mode {
        ScheduleMode::Exact => Rational::zero(),
        ScheduleMode::Geometric(mu) => mu.clone(),
    };
    Ok(GridSchedule {
        widths: axis_values(instance.w_max(), instance.w_sum(), mode)?,
        heights: axis_values(instance.h_max(), instance.h_sum(), mode)?,
        ratio,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Objective {
    #[default]
    Area,
    Perimeter,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Sweep {
    /// Solve every cell of the schedule.
    Full,
    /// Walk the staircase of least feasible heights per width. Relies on
    /// feasibility being monotone in `w` and `h`, and probes at most
    /// `|widths| + |heights|` cells.
    #[default]
    Frontier,
}

#[derive(Clone, Debug, Default)]
pub struct ApproxOptions {
    pub objective: Objective,
    pub sweep: Sweep,
    pub solver: SolveOptions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellRecord {
    pub w: u64,
    pub h: u64,
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxResult {
    /// Final layout, twice the winning LP layout.
    pub layout: Layout<Rational>,
    pub bbox: BBox<Rational>,
    pub chosen_wh: (u64, u64),
    /// The winning LP layout before doubling.
    pub lp_layout: Layout<Rational>,
    pub trace: Vec<CellRecord>,
}

struct Candidate {
    key: Rational,
    wh: (u64, u64),
    layout: Layout<Rational>,
}

fn objective_value(bbox: &BBox<Rational>, objective: Objective) -> Rational {
    match objective {
        Objective::Area => bbox.area(),
        Objective::Perimeter => bbox.perimeter(),
    }
}

struct Search<'a> {
    instance: &'a Instance<Rational>,
    eps: &'a Rational,
    options: &'a ApproxOptions,
    trace: Vec<CellRecord>,
    best: Option<Candidate>,
}

impl Search<'_> {
    fn probe(&mut self, w: u64, h: u64) -> Result<bool> {
        let lp = build_layout_lp(self.instance, w, h, self.eps)?;
        let outcome = solve_exact(&lp.model, &self.options.solver)?;
        self.trace.push(CellRecord { w, h, feasible: outcome.is_feasible() });
        let Some(values) = outcome.assignment else {
            return Ok(false);
        };
        let layout = lp.layout(self.instance, &values);
        let key = objective_value(&bounding_box(self.instance, &layout)?, self.options.objective);
        let better = match &self.best {
            None => true,
            Some(best) => match key.cmp(&best.key) {
                Ordering::Less => true,
                Ordering::Equal => (w, h) < best.wh,
                Ordering::Greater => false,
            },
        };
        if better {
            self.best = Some(Candidate { key, wh: (w, h), layout });
        }
        Ok(true)
    }
}

/// Area objective with the given options' sweep.
pub fn approx_ladr(instance: &Instance<Rational>, eps: &Rational, schedule: &GridSchedule) -> Result<ApproxResult> {
    approx_with(instance, eps, schedule, &ApproxOptions::default())
}

pub fn approx_perimeter(
    instance: &Instance<Rational>,
    eps: &Rational,
    schedule: &GridSchedule,
) -> Result<ApproxResult> {
    let options = ApproxOptions { objective: Objective::Perimeter, ..ApproxOptions::default() };
    approx_with(instance, eps, schedule, &options)
}

pub fn approx_with(
    instance: &Instance<Rational>,
    eps: &Rational,
    schedule: &GridSchedule,
    options: &ApproxOptions,
) -> Result<ApproxResult> {
    check_eps(eps)?;
    schedule.validate(instance)?;
    let mut search = Search { instance, eps, options, trace: Vec::new(), best: None };
    match options.sweep {
        Sweep::Full => {
            for &w in &schedule.widths {
                for &h in &schedule.heights {
                    search.probe(w, h)?;
                }
            }
        }
        Sweep::Frontier => {
            // Least feasible height is nonincreasing in w; `top` bounds it.
            let mut top = schedule.heights.len();
            for &w in &schedule.widths {
                while top > 0 && search.probe(w, schedule.heights[top - 1])? {
                    top -= 1;
                }
                if top == 0 {
                    break;
                }
            }
        }
    }
    let best = search.best.ok_or(Error::NoFeasibleCell)?;
    let layout = best.layout.scaled(&int(2));
    let report = verify_solution(instance, &layout)?;
    if !report.is_valid() {
        return Err(Error::VerificationFailed(report.describe()));
    }
    Ok(ApproxResult { layout, bbox: report.bbox, chosen_wh: best.wh, lp_layout: best.layout, trace: search.trace })
}

/// Disjointness and order check of a candidate layout.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport<T> {
    pub disjoint: bool,
    pub order_preserved: bool,
    pub bbox: BBox<T>,
    pub overlapping_pair: Option<(RectId, RectId)>,
    pub order_violating_pair: Option<(RectId, RectId)>,
}

impl<T: Scalar> VerifyReport<T> {
    pub fn is_valid(&self) -> bool {
        self.disjoint && self.order_preserved
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some((a, b)) = &self.overlapping_pair {
            parts.push(format!("rectangles {a} and {b} overlap"));
        }
        if let Some((a, b)) = &self.order_violating_pair {
            parts.push(format!("order of {a} and {b} changed"));
        }
        if parts.is_empty() {
            "ok".to_string()
        } else {
            parts.join("; ")
        }
    }
}

pub fn verify_solution<T: Scalar>(instance: &Instance<T>, layout: &Layout<T>) -> Result<VerifyReport<T>> {
    instance.check_layout(layout)?;
    let overlapping_pair = first_overlap(instance, layout)?;
    let order_violating_pair = first_order_violation(instance.initial(), layout);
    Ok(VerifyReport {
        disjoint: overlapping_pair.is_none(),
        order_preserved: order_violating_pair.is_none(),
        bbox: bounding_box(instance, layout)?,
        overlapping_pair,
        order_violating_pair,
    })
}

/// Pushes x-rigidity groups left while keeping disjointness and order.
///
/// Groups are placed in ascending order. The first keeps its x; every later group
/// sits at the larger of `previous + delta` and the first contact with any earlier
/// group whose rectangles overlap it vertically, with
/// `delta = min(eps / n, least gap between consecutive groups)`. For unit squares
/// the width ends up within `eps` of an integer. The y coordinates are untouched.
pub fn compress_width<T: Scalar>(instance: &Instance<T>, layout: &Layout<T>, eps: &T) -> Result<Layout<T>> {
    if !eps.is_pos() {
        return Err(Error::InvalidEps(eps.to_string()));
    }
    instance.check_layout(layout)?;
    if let Some((a, b)) = first_overlap(instance, layout)? {
        return Err(Error::NotDisjoint(a, b));
    }
    let rects = instance.rects();
    let centers: Vec<&Point<T>> = rects.iter().map(|r| layout.get(&r.id).expect("checked")).collect();
    let values: Vec<(usize, &T)> = centers.iter().enumerate().map(|(i, p)| (i, p.coord(Axis::X))).collect();
    let groups = rigidity_classes(&values);

    let mut delta = eps.clone() / T::from_usize(rects.len()).expect("count fits scalar");
    for pair in groups.windows(2) {
        let gap = centers[pair[1][0]].x.clone() - centers[pair[0][0]].x.clone();
        if gap < delta {
            delta = gap;
        }
    }

    let mut placed: Vec<T> = Vec::with_capacity(groups.len());
    for (g, group) in groups.iter().enumerate() {
        let x = if g == 0 {
            centers[group[0]].x.clone()
        } else {
            let mut x = placed[g - 1].clone() + delta.clone();
            for (earlier, members) in groups[..g].iter().enumerate() {
                for &r in group {
                    for &q in members {
                        if overlap_1d(&centers[r].y, &centers[q].y, rects[r].h + rects[q].h) {
                            let contact = placed[earlier].clone() + T::from_ratio((rects[r].w + rects[q].w) as i64, 2);
                            if cmp(&contact, &x).is_gt() {
                                x = contact;
                            }
                        }
                    }
                }
            }
            x
        };
        placed.push(x);
    }

    let mut out = Layout::new();
    for (g, group) in groups.iter().enumerate() {
        for &r in group {
            out.insert(rects[r].id.clone(), Point::new(placed[g].clone(), centers[r].y.clone()));
        }
    }
    Ok(out)
}

/// Distance from `value` to the nearest integer.
pub fn distance_to_integer(value: &Rational) -> Rational {
    let below = value.floor();
    let up = below.clone() + Rational::one() - value.clone();
    let down = value.clone() - below;
    if up < down {
        up
    } else {
        down
    }
}

/// Approximate `f64` for summaries.
pub fn to_f64(value: &Rational) -> f64 {
    ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
}
