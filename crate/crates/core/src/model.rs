//! Rectangles, layouts and the order/overlap predicates everything else builds on.
//!
//! A layout assigns a center to every rectangle id. Two layouts share an orthogonal
//! order when every pairwise x- and y-difference has the same sign (`<`, `=`, `>`)
//! in both. Two rectangles intersect only when both center gaps are strictly below
//! the half-sums of their extents, so touching edges count as disjoint.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RectId(pub String);

impl RectId {
    pub fn new(id: impl Into<String>) -> Self {
        RectId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for RectId {
    fn from(id: &str) -> Self {
        RectId(id.to_string())
    }
}

/// Axis-parallel rectangle dimensions. Rotation is never allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub id: RectId,
    pub w: u64,
    pub h: u64,
}

impl Rect {
    pub fn new(id: impl Into<String>, w: u64, h: u64) -> Self {
        Rect { id: RectId(id.into()), w, h }
    }

    pub fn unit(id: impl Into<String>) -> Self {
        Rect::new(id, 1, 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

impl<T: Scalar> Point<T> {
    pub fn coord(&self, axis: Axis) -> &T {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
}

/// Center coordinates keyed by rectangle id.
#[derive(Clone, Debug, PartialEq)]
pub struct Layout<T> {
    coords: BTreeMap<RectId, Point<T>>,
}

impl<T> Default for Layout<T> {
    fn default() -> Self {
        Layout { coords: BTreeMap::new() }
    }
}

impl<T: Scalar> Layout<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: RectId, center: Point<T>) -> Option<Point<T>> {
        self.coords.insert(id, center)
    }

    pub fn get(&self, id: &RectId) -> Option<&Point<T>> {
        self.coords.get(id)
    }

    pub fn center(&self, id: &RectId) -> Result<&Point<T>> {
        self.coords.get(id).ok_or_else(|| Error::MissingRect(id.clone()))
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RectId, &Point<T>)> {
        self.coords.iter()
    }

    pub fn ids(&self) -> impl Iterator<Item = &RectId> {
        self.coords.keys()
    }

    /// Applies `fx` to every x and `fy` to every y coordinate.
    pub fn map_coords<U: Scalar>(&self, fx: impl Fn(&T) -> U, fy: impl Fn(&T) -> U) -> Layout<U> {
        Layout {
            coords: self
                .coords
                .iter()
                .map(|(id, p)| (id.clone(), Point::new(fx(&p.x), fy(&p.y))))
                .collect(),
        }
    }

    pub fn scaled(&self, factor: &T) -> Layout<T> {
        self.map_coords(|x| x.clone() * factor.clone(), |y| y.clone() * factor.clone())
    }

    pub fn translated(&self, dx: &T, dy: &T) -> Layout<T> {
        self.map_coords(|x| x.clone() + dx.clone(), |y| y.clone() + dy.clone())
    }
}

impl<T: Scalar> FromIterator<(RectId, Point<T>)> for Layout<T> {
    fn from_iter<I: IntoIterator<Item = (RectId, Point<T>)>>(iter: I) -> Self {
        Layout { coords: iter.into_iter().collect() }
    }
}

/// Rectangles plus an injective initial placement.
#[derive(Clone, Debug)]
pub struct Instance<T = Rational> {
    rects: Vec<Rect>,
    initial: Layout<T>,
    index: BTreeMap<RectId, usize>,
}

impl<T: Scalar> Instance<T> {
    pub fn new(rects: Vec<Rect>, initial: Layout<T>) -> Result<Self> {
        if rects.is_empty() {
            return Err(Error::EmptyInstance);
        }
        let mut index = BTreeMap::new();
        for (i, rect) in rects.iter().enumerate() {
            if rect.w == 0 || rect.h == 0 {
                return Err(Error::NonPositiveDimension(rect.id.clone()));
            }
            if index.insert(rect.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(rect.id.clone()));
            }
            initial.center(&rect.id)?;
        }
        if initial.len() != rects.len() {
            return Err(Error::MismatchedIds);
        }
        let mut order: Vec<&RectId> = index.keys().collect();
        order.sort_by(|a, b| {
            let (pa, pb) = (&initial.coords[*a], &initial.coords[*b]);
            cmp(&pa.x, &pb.x).then_with(|| cmp(&pa.y, &pb.y))
        });
        for pair in order.windows(2) {
            let (pa, pb) = (&initial.coords[pair[0]], &initial.coords[pair[1]]);
            if cmp(&pa.x, &pb.x).is_eq() && cmp(&pa.y, &pb.y).is_eq() {
                return Err(Error::CoincidentCenters(pair[0].clone(), pair[1].clone()));
            }
        }
        Ok(Instance { rects, initial, index })
    }

    /// Unit squares centered on the given points, ids `"0"`, `"1"`, ...
    pub fn unit_squares(points: &[Point<T>]) -> Result<Self> {
        let rects: Vec<Rect> = (0..points.len()).map(|i| Rect::unit(i.to_string())).collect();
        let initial = rects
            .iter()
            .zip(points)
            .map(|(r, p)| (r.id.clone(), p.clone()))
            .collect();
        Instance::new(rects, initial)
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn initial(&self) -> &Layout<T> {
        &self.initial
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn rect(&self, id: &RectId) -> Option<&Rect> {
        self.index.get(id).map(|&i| &self.rects[i])
    }

    pub fn index_of(&self, id: &RectId) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Initial centers in rectangle order.
    pub fn initial_centers(&self) -> Vec<&Point<T>> {
        self.rects.iter().map(|r| &self.initial.coords[&r.id]).collect()
    }

    pub fn w_max(&self) -> u64 {
        self.rects.iter().map(|r| r.w).max().unwrap_or(0)
    }

    pub fn h_max(&self) -> u64 {
        self.rects.iter().map(|r| r.h).max().unwrap_or(0)
    }

    pub fn w_sum(&self) -> u64 {
        self.rects.iter().map(|r| r.w).sum()
    }

    pub fn h_sum(&self) -> u64 {
        self.rects.iter().map(|r| r.h).sum()
    }

    pub fn is_unit_squares(&self) -> bool {
        self.rects.iter().all(|r| r.w == 1 && r.h == 1)
    }

    /// Checks that `layout` places exactly this instance's ids.
    pub fn check_layout(&self, layout: &Layout<T>) -> Result<()> {
        for rect in &self.rects {
            layout.center(&rect.id)?;
        }
        if layout.len() != self.rects.len() {
            return Err(Error::MismatchedIds);
        }
        Ok(())
    }
}

/// Bounding box of a placed instance.
#[derive(Clone, Debug, PartialEq)]
pub struct BBox<T> {
    pub left: T,
    pub right: T,
    pub bottom: T,
    pub top: T,
}

impl<T: Scalar> BBox<T> {
    pub fn width(&self) -> T {
        self.right.clone() - self.left.clone()
    }

    pub fn height(&self) -> T {
        self.top.clone() - self.bottom.clone()
    }

    pub fn area(&self) -> T {
        self.width() * self.height()
    }

    pub fn perimeter(&self) -> T {
        (self.width() + self.height()) * T::from_ratio(2, 1)
    }
}

/// Rigidity classes (maximal groups sharing a coordinate) and 1-based ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoOrder {
    pub x_rigidities: Vec<Vec<RectId>>,
    pub y_rigidities: Vec<Vec<RectId>>,
    pub x_rank: BTreeMap<RectId, usize>,
    pub y_rank: BTreeMap<RectId, usize>,
}

pub(crate) fn cmp<T: Scalar>(a: &T, b: &T) -> Ordering {
    if (a.clone() - b.clone()).is_zero_tol() {
        Ordering::Equal
    } else {
        a.partial_cmp(b).unwrap_or(Ordering::Equal)
    }
}

/// Groups `values` (index, coordinate) into ascending classes of equal coordinate.
pub(crate) fn rigidity_classes<T: Scalar>(values: &[(usize, &T)]) -> Vec<Vec<usize>> {
    let mut sorted: Vec<(usize, &T)> = values.to_vec();
    sorted.sort_by(|a, b| cmp(a.1, b.1).then(a.0.cmp(&b.0)));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut last: Option<&T> = None;
    for (i, v) in sorted {
        match last {
            Some(prev) if cmp(prev, v).is_eq() => classes.last_mut().unwrap().push(i),
            _ => classes.push(vec![i]),
        }
        last = Some(v);
    }
    classes
}

/// Strict-inequality overlap test: touching rectangles do not intersect.
pub fn intersects<T: Scalar>(a: &Rect, b: &Rect, layout: &Layout<T>) -> Result<bool> {
    let pa = layout.center(&a.id)?;
    let pb = layout.center(&b.id)?;
    Ok(overlap_1d(&pa.x, &pb.x, a.w + b.w) && overlap_1d(&pa.y, &pb.y, a.h + b.h))
}

/// `|p - q| < extent_sum / 2`.
pub(crate) fn overlap_1d<T: Scalar>(p: &T, q: &T, extent_sum: u64) -> bool {
    let gap = (p.clone() - q.clone()).abs() * T::from_ratio(2, 1);
    let need = T::from_u64(extent_sum).expect("extent fits scalar");
    (need - gap).is_pos()
}

pub fn compute_order<T: Scalar>(layout: &Layout<T>) -> OrthoOrder {
    let ids: Vec<&RectId> = layout.ids().collect();
    let axis = |axis: Axis| {
        let values: Vec<(usize, &T)> = layout
            .coords
            .values()
            .enumerate()
            .map(|(i, p)| (i, p.coord(axis)))
            .collect();
        let classes = rigidity_classes(&values);
        let mut rank = BTreeMap::new();
        let named: Vec<Vec<RectId>> = classes
            .iter()
            .enumerate()
            .map(|(k, class)| {
                class
                    .iter()
                    .map(|&i| {
                        rank.insert(ids[i].clone(), k + 1);
                        ids[i].clone()
                    })
                    .collect()
            })
            .collect();
        (named, rank)
    };
    let (x_rigidities, x_rank) = axis(Axis::X);
    let (y_rigidities, y_rank) = axis(Axis::Y);
    OrthoOrder { x_rigidities, y_rigidities, x_rank, y_rank }
}

/// Equal rank maps on both axes is equivalent to agreeing on every pairwise sign.
pub fn same_orthogonal_order<T: Scalar>(a: &Layout<T>, b: &Layout<T>) -> Result<bool> {
    let ids_a: BTreeSet<&RectId> = a.ids().collect();
    let ids_b: BTreeSet<&RectId> = b.ids().collect();
    if ids_a != ids_b {
        return Err(Error::MismatchedIds);
    }
    let (oa, ob) = (compute_order(a), compute_order(b));
    Ok(oa.x_rank == ob.x_rank && oa.y_rank == ob.y_rank)
}

/// First pair (in id order) whose pairwise sign differs between the layouts.
pub fn first_order_violation<T: Scalar>(a: &Layout<T>, b: &Layout<T>) -> Option<(RectId, RectId)> {
    let entries: Vec<(&RectId, &Point<T>)> = a.iter().collect();
    for (i, (id_i, pa_i)) in entries.iter().enumerate() {
        let pb_i = b.get(id_i)?;
        for (id_j, pa_j) in &entries[i + 1..] {
            let pb_j = b.get(id_j)?;
            if cmp(&pa_i.x, &pa_j.x) != cmp(&pb_i.x, &pb_j.x)
                || cmp(&pa_i.y, &pa_j.y) != cmp(&pb_i.y, &pb_j.y)
            {
                return Some(((*id_i).clone(), (*id_j).clone()));
            }
        }
    }
    None
}

pub fn bounding_box<T: Scalar>(instance: &Instance<T>, layout: &Layout<T>) -> Result<BBox<T>> {
    bbox_of(instance.rects(), layout)
}

pub(crate) fn bbox_of<T: Scalar>(rects: &[Rect], layout: &Layout<T>) -> Result<BBox<T>> {
    let mut bbox: Option<BBox<T>> = None;
    for rect in rects {
        let p = layout.center(&rect.id)?;
        let hw = T::from_ratio(rect.w as i64, 2);
        let hh = T::from_ratio(rect.h as i64, 2);
        let (l, r) = (p.x.clone() - hw.clone(), p.x.clone() + hw);
        let (b, t) = (p.y.clone() - hh.clone(), p.y.clone() + hh);
        bbox = Some(match bbox {
            None => BBox { left: l, right: r, bottom: b, top: t },
            Some(bb) => BBox {
                left: min(bb.left, l),
                right: max(bb.right, r),
                bottom: min(bb.bottom, b),
                top: max(bb.top, t),
            },
        });
    }
    bbox.ok_or(Error::EmptyInstance)
}

fn min<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

fn max<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// First intersecting pair in rectangle order, if any.
pub fn first_overlap<T: Scalar>(
    instance: &Instance<T>,
    layout: &Layout<T>,
) -> Result<Option<(RectId, RectId)>> {
    let rects = instance.rects();
    for (i, a) in rects.iter().enumerate() {
        for b in &rects[i + 1..] {
            if intersects(a, b, layout)? {
                return Ok(Some((a.id.clone(), b.id.clone())));
            }
        }
    }
    Ok(None)
}
