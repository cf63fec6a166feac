use ladr::approx::{
    approx_ladr, approx_perimeter, compress_width, distance_to_integer, make_schedule, verify_solution, ScheduleMode,
};
use ladr::hitting::{optimal_lads_area, PointSet};
use ladr::model::{bounding_box, same_orthogonal_order, Instance, Layout, Point, Rect, RectId};
use ladr::scalar::{int, ratio};
use ladr::Rational;
use proptest::prelude::*;

fn instance(coords: &[(i64, i64)], sizes: &[(u64, u64)]) -> Instance<Rational> {
    let rects = (0..coords.len()).map(|i| Rect::new(i.to_string(), sizes[i].0, sizes[i].1)).collect();
    let layout: Layout<Rational> =
        coords.iter().enumerate().map(|(i, &(x, y))| (RectId::new(i.to_string()), Point::new(int(x), int(y)))).collect();
    Instance::new(rects, layout).unwrap()
}

fn lattice(max_n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::btree_set((0i64..=12, 0i64..=12), 2..=max_n).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn results_verify_and_doubling_at_most_doubles(coords in lattice(6), sizes in prop::collection::vec((1u64..4, 1u64..4), 6)) {
        let inst = instance(&coords, &sizes);
        let schedule = make_schedule(&inst, &ScheduleMode::Exact).unwrap();
        let eps = ratio(1, 10);
        for result in [approx_ladr(&inst, &eps, &schedule).unwrap(), approx_perimeter(&inst, &eps, &schedule).unwrap()] {
            prop_assert!(verify_solution(&inst, &result.layout).unwrap().is_valid());
            let lp_box = bounding_box(&inst, &result.lp_layout).unwrap();
            prop_assert!(result.bbox.width() <= lp_box.width() * int(2));
            prop_assert!(result.bbox.height() <= lp_box.height() * int(2));
        }
    }

    #[test]
    fn unit_square_area_within_bound(coords in lattice(5)) {
        let inst = instance(&coords, &[(1, 1); 5]);
        let eps = ratio(1, 10);
        let result = approx_ladr(&inst, &eps, &make_schedule(&inst, &ScheduleMode::Exact).unwrap()).unwrap();
        let points = PointSet::new(coords.iter().map(|&(x, y)| Point::new(int(x), int(y))).collect()).unwrap();
        let oracle = optimal_lads_area(&points, 12).unwrap().value;
        let one_eps = int(1) + eps;
        prop_assert!(result.bbox.area() <= int(4) * one_eps.clone() * one_eps * int(oracle as i64));
    }

    #[test]
    fn geometric_within_factor_of_exact(coords in lattice(5), sizes in prop::collection::vec((1u64..4, 1u64..4), 5)) {
        let inst = instance(&coords, &sizes);
        let eps = ratio(1, 10);
        let mu = ratio(1, 2);
        let exact = approx_ladr(&inst, &eps, &make_schedule(&inst, &ScheduleMode::Exact).unwrap()).unwrap();
        let geo = approx_ladr(&inst, &eps, &make_schedule(&inst, &ScheduleMode::Geometric(mu.clone())).unwrap()).unwrap();
        let factor = (int(1) + mu.clone()) * (int(1) + mu);
        prop_assert!(geo.bbox.area() <= factor * exact.bbox.area(), "geo {} exact {}", geo.bbox.area(), exact.bbox.area());
    }

    #[test]
    fn compression_keeps_invariants(coords in lattice(7), sizes in prop::collection::vec((1u64..4, 1u64..4), 7), unit in any::<bool>()) {
        let sizes = if unit { vec![(1, 1); 7] } else { sizes };
        let inst = instance(&coords, &sizes);
        // spread the lattice so the input is disjoint
        let layout = inst.initial().scaled(&int(3));
        prop_assume!(verify_solution(&inst, &layout).unwrap().disjoint);
        let eps = ratio(1, 10);
        let out = compress_width(&inst, &layout, &eps).unwrap();
        let before = bounding_box(&inst, &layout).unwrap();
        let report = verify_solution(&inst, &out).unwrap();
        prop_assert!(report.is_valid());
        prop_assert!(same_orthogonal_order(&layout, &out).unwrap());
        prop_assert!(report.bbox.width() <= before.width());
        prop_assert_eq!(report.bbox.height(), before.height());
        for (id, p) in out.iter() {
            prop_assert_eq!(&p.y, &layout.center(id).unwrap().y);
        }
        if unit {
            prop_assert!(distance_to_integer(&report.bbox.width()) <= eps);
        }
    }
}
