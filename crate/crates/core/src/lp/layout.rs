//! The per-cell layout LP.
//!
//! For a target cell `(w, h)` the LP asks for centers that keep the initial
//! orthogonal order, fit in `(w + eps) x (h + eps)`, and satisfy the relaxed
//! separation row `x_diff / w(r,r') + y_diff / h(r,r') >= 1` for every pair.
//! Rectangles sharing an initial coordinate share one variable, and each strict
//! order inequality becomes a gap of at least `gamma = eps / (2n)`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lp::model::{LpModel, Relation};
use crate::model::{cmp, rigidity_classes, Axis, Instance, Layout, Point};
use crate::scalar::Scalar;

/// Separation data for one unordered rectangle pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PairData<T> {
    pub a: usize,
    pub b: usize,
    /// `(w_a + w_b) / 2`
    pub w_sep: T,
    /// `(h_a + h_b) / 2`
    pub h_sep: T,
    /// Initial order of `a` relative to `b` on each axis.
    pub x_order: Ordering,
    pub y_order: Ordering,
}

#[derive(Clone, Debug)]
pub struct LayoutLp<T> {
    pub model: LpModel<T>,
    pub w: u64,
    pub h: u64,
    pub eps: T,
    pub gamma: T,
    /// Rectangle index (instance order) to its x / y variable.
    pub x_var: Vec<usize>,
    pub y_var: Vec<usize>,
    pub pairs: Vec<PairData<T>>,
}

pub(crate) fn check_eps<T: Scalar>(eps: &T) -> Result<()> {
    if !eps.is_pos() || !(T::one() - eps.clone()).is_pos() {
        return Err(Error::InvalidEps(eps.to_string()));
    }
    Ok(())
}

struct AxisClasses {
    /// Rectangle index to class index.
    class_of: Vec<usize>,
    /// Largest extent (width or height) within each class.
    max_extent: Vec<u64>,
}

fn classes<T: Scalar>(instance: &Instance<T>, axis: Axis) -> AxisClasses {
    let centers = instance.initial_centers();
    let values: Vec<(usize, &T)> = centers.iter().enumerate().map(|(i, p)| (i, p.coord(axis))).collect();
    let groups = rigidity_classes(&values);
    let mut class_of = vec![0; centers.len()];
    let mut max_extent = vec![0; groups.len()];
    for (k, group) in groups.iter().enumerate() {
        for &i in group {
            class_of[i] = k;
            let rect = &instance.rects()[i];
            let extent = match axis {
                Axis::X => rect.w,
                Axis::Y => rect.h,
            };
            max_extent[k] = max_extent[k].max(extent);
        }
    }
    AxisClasses { class_of, max_extent }
}

fn scalar<T: Scalar>(value: u64) -> T {
    T::from_u64(value).expect("integer fits scalar")
}

pub fn build_layout_lp<T: Scalar>(instance: &Instance<T>, w: u64, h: u64, eps: &T) -> Result<LayoutLp<T>> {
    check_eps(eps)?;
    let (w_max, h_max) = (instance.w_max(), instance.h_max());
    if w < w_max || h < h_max {
        return Err(Error::CellTooSmall { w, h, w_max, h_max });
    }
    let n = instance.len();
    let gamma = eps.clone() / scalar::<T>(2 * n as u64);
    let mut model = LpModel::new();

    let xs = classes(instance, Axis::X);
    let ys = classes(instance, Axis::Y);
    let x_base = model.num_vars();
    for k in 0..xs.max_extent.len() {
        model.add_var(format!("x{k}"));
    }
    let y_base = model.num_vars();
    for k in 0..ys.max_extent.len() {
        model.add_var(format!("y{k}"));
    }

    for (base, axis, cap, tag) in [(x_base, &xs, w, "x"), (y_base, &ys, h, "y")] {
        let k = axis.max_extent.len();
        for c in 0..k.saturating_sub(1) {
            model.add_constraint(
                vec![(base + c + 1, T::one()), (base + c, -T::one())],
                Relation::Ge,
                gamma.clone(),
                format!("order-{tag}"),
                false,
            );
        }
        // Extent cap: right edge of class b minus left edge of class a.
        let limit = scalar::<T>(cap) + eps.clone();
        for a in 0..k {
            for b in a + 1..k {
                let reach = T::from_ratio((axis.max_extent[a] + axis.max_extent[b]) as i64, 2);
                model.add_constraint(
                    vec![(base + b, T::one()), (base + a, -T::one())],
                    Relation::Le,
                    limit.clone() - reach,
                    format!("cap-{tag}"),
                    true,
                );
            }
        }
    }

    let centers = instance.initial_centers();
    let rects = instance.rects();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            let x_order = cmp(&centers[a].x, &centers[b].x);
            let y_order = cmp(&centers[a].y, &centers[b].y);
            let (wa, wb) = (rects[a].w, rects[b].w);
            let (ha, hb) = (rects[a].h, rects[b].h);
            // (h_a + h_b) x_diff + (w_a + w_b) y_diff >= (w_a + w_b)(h_a + h_b) / 2
            let mut terms = Vec::with_capacity(4);
            let mut diff = |order: Ordering, base: usize, class_of: &[usize], weight: u64| {
                let (lo, hi) = match order {
                    Ordering::Less => (a, b),
                    Ordering::Greater => (b, a),
                    Ordering::Equal => return,
                };
                terms.push((base + class_of[hi], scalar::<T>(weight)));
                terms.push((base + class_of[lo], -scalar::<T>(weight)));
            };
            diff(x_order, x_base, &xs.class_of, ha + hb);
            diff(y_order, y_base, &ys.class_of, wa + wb);
            model.add_constraint(
                terms,
                Relation::Ge,
                T::from_ratio(((wa + wb) * (ha + hb)) as i64, 2),
                "disjoint",
                true,
            );
            pairs.push(PairData {
                a,
                b,
                w_sep: T::from_ratio((wa + wb) as i64, 2),
                h_sep: T::from_ratio((ha + hb) as i64, 2),
                x_order,
                y_order,
            });
        }
    }

    let x_var = xs.class_of.iter().map(|c| x_base + c).collect();
    let y_var = ys.class_of.iter().map(|c| y_base + c).collect();
    Ok(LayoutLp { model, w, h, eps: eps.clone(), gamma, x_var, y_var, pairs })
}

impl<T: Scalar> LayoutLp<T> {
    /// Reads an LP assignment back as a layout of `instance`.
    pub fn layout(&self, instance: &Instance<T>, values: &[T]) -> Layout<T> {
        instance
            .rects()
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let p = Point::new(values[self.x_var[i]].clone(), values[self.y_var[i]].clone());
                (r.id.clone(), p)
            })
            .collect()
    }

    /// Variable vector for a layout of `instance`, translated so every value is
    /// nonnegative. Returns `None` when the layout puts two rectangles of one
    /// rigidity class at different coordinates.
    pub fn values_of(&self, instance: &Instance<T>, layout: &Layout<T>) -> Option<Vec<T>> {
        let mut values: Vec<Option<T>> = vec![None; self.model.num_vars()];
        let mut min_x: Option<T> = None;
        let mut min_y: Option<T> = None;
        for (i, rect) in instance.rects().iter().enumerate() {
            let p = layout.get(&rect.id)?;
            for (var, v, min) in [(self.x_var[i], &p.x, &mut min_x), (self.y_var[i], &p.y, &mut min_y)] {
                match &values[var] {
                    Some(existing) if !cmp(existing, v).is_eq() => return None,
                    _ => values[var] = Some(v.clone()),
                }
                if min.as_ref().is_none_or(|m| v < m) {
                    *min = Some(v.clone());
                }
            }
        }
        let (min_x, min_y) = (min_x?, min_y?);
        let y_start = self.y_var.iter().min().copied().unwrap_or(0);
        values
            .into_iter()
            .enumerate()
            .map(|(var, v)| {
                let shift = if var < y_start { &min_x } else { &min_y };
                v.map(|v| v - shift.clone())
            })
            .collect()
    }
}
