use std::collections::BTreeSet;

use ladr::hitting::{exact_uhs, hitting_to_layout, PointSet};
use ladr::lp::{build_layout_lp, solve_exact, Engine, LpStatus, SolveOptions};
use ladr::model::{bounding_box, same_orthogonal_order, Instance, Layout, Point, Rect, RectId};
use ladr::scalar::{int, ratio};
use ladr::Rational;
use proptest::prelude::*;

fn instance(coords: &[(i64, i64)], sizes: &[(u64, u64)]) -> Instance<Rational> {
    let rects = coords.iter().zip(sizes).enumerate().map(|(i, (_, &(w, h)))| Rect::new(i.to_string(), w, h)).collect();
    let layout: Layout<Rational> =
        coords.iter().enumerate().map(|(i, &(x, y))| (RectId::new(i.to_string()), Point::new(int(x), int(y)))).collect();
    Instance::new(rects, layout).unwrap()
}

fn feasible(inst: &Instance<Rational>, w: u64, h: u64, options: &SolveOptions) -> bool {
    let lp = build_layout_lp(inst, w, h, &ratio(1, 10)).unwrap();
    solve_exact(&lp.model, options).unwrap().is_feasible()
}

fn small_instance() -> impl Strategy<Value = Instance<Rational>> {
    (prop::collection::btree_set((0i64..8, 0i64..8), 2..=4), prop::collection::vec((1u64..3, 1u64..3), 4))
        .prop_map(|(pts, sizes)| instance(&pts.into_iter().collect::<Vec<_>>(), &sizes))
}

/// Shifts the k-th distinct x (and y) value by `k * gamma`.
fn spread(layout: &Layout<Rational>, gamma: &Rational) -> Layout<Rational> {
    let xs: BTreeSet<Rational> = layout.iter().map(|(_, p)| p.x.clone()).collect();
    let ys: BTreeSet<Rational> = layout.iter().map(|(_, p)| p.y.clone()).collect();
    let rank = |set: &BTreeSet<Rational>, v: &Rational| int(set.range(..v.clone()).count() as i64);
    layout
        .iter()
        .map(|(id, p)| {
            let x = p.x.clone() + gamma.clone() * rank(&xs, &p.x);
            let y = p.y.clone() + gamma.clone() * rank(&ys, &p.y);
            (id.clone(), Point::new(x, y))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn feasibility_is_monotone(inst in small_instance()) {
        let options = SolveOptions::default();
        let (ws, hs) = (inst.w_max()..=inst.w_sum(), inst.h_max()..=inst.h_sum());
        let grid: Vec<Vec<bool>> = ws.clone().map(|w| hs.clone().map(|h| feasible(&inst, w, h, &options)).collect()).collect();
        for (i, row) in grid.iter().enumerate() {
            for (j, &f) in row.iter().enumerate() {
                if f && i + 1 < grid.len() {
                    prop_assert!(grid[i + 1][j]);
                }
                if f && j + 1 < row.len() {
                    prop_assert!(row[j + 1]);
                }
            }
        }
        prop_assert!(grid.last().unwrap().last().copied().unwrap());
    }

    #[test]
    fn feasible_points_are_sound(inst in small_instance(), dw in 0u64..3, dh in 0u64..3) {
        let (w, h) = (inst.w_max() + dw, inst.h_max() + dh);
        let eps = ratio(1, 10);
        let lp = build_layout_lp(&inst, w, h, &eps).unwrap();
        let out = solve_exact(&lp.model, &SolveOptions::default()).unwrap();
        if let Some(values) = out.assignment {
            prop_assert!(lp.model.first_violation(&values).is_none());
            let layout = lp.layout(&inst, &values);
            prop_assert!(same_orthogonal_order(inst.initial(), &layout).unwrap());
            let b = bounding_box(&inst, &layout).unwrap();
            prop_assert!(b.width() <= int(w as i64) + eps.clone());
            prop_assert!(b.height() <= int(h as i64) + eps);
        }
    }

    #[test]
    fn engines_agree_and_are_deterministic(inst in small_instance(), dw in 0u64..3, dh in 0u64..3) {
        let (w, h) = (inst.w_max() + dw, inst.h_max() + dh);
        let lp = build_layout_lp(&inst, w, h, &ratio(1, 10)).unwrap();
        let guided = solve_exact(&lp.model, &SolveOptions::default()).unwrap();
        let again = solve_exact(&lp.model, &SolveOptions::default()).unwrap();
        let exact = solve_exact(&lp.model, &SolveOptions { engine: Engine::Exact, ..SolveOptions::default() }).unwrap();
        prop_assert_eq!(&guided, &again);
        prop_assert_eq!(guided.status, exact.status);
    }

    #[test]
    fn oracle_layouts_satisfy_the_model(pts in prop::collection::btree_set((0i64..10, 0i64..10), 2..=6)) {
        let points = PointSet::new(pts.into_iter().map(|(x, y)| Point::new(int(x), int(y))).collect()).unwrap();
        let lines = exact_uhs(&points, 12).unwrap();
        let inst = points.unit_square_instance();
        let eps = ratio(1, 10);
        let n = points.len() as i64;
        let gamma = eps.clone() / int(2 * n);
        let layout = spread(&hitting_to_layout(&points, &lines, &(eps.clone() / int(2))).unwrap(), &gamma);
        let (w, h) = (lines.c() as u64 + 1, lines.r() as u64 + 1);
        let lp = build_layout_lp(&inst, w, h, &eps).unwrap();
        let values = lp.values_of(&inst, &layout).expect("rigidity classes kept");
        prop_assert_eq!(lp.model.first_violation(&values), None);
        let out = solve_exact(&lp.model, &SolveOptions::default()).unwrap();
        prop_assert_eq!(out.status, LpStatus::Feasible);
    }
}
