use ladr::model::{bounding_box, compute_order, intersects, same_orthogonal_order, Instance, Layout, Point, Rect, RectId};
use ladr::scalar::{int, ratio};
use ladr::Rational;
use proptest::prelude::*;

fn layout_from(coords: &[(i64, i64)], den: i64) -> Layout<Rational> {
    coords
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| (RectId::new(format!("r{i}")), Point::new(ratio(x, den), ratio(y, den))))
        .collect()
}

fn rects(sizes: &[(u64, u64)]) -> Vec<Rect> {
    sizes.iter().enumerate().map(|(i, &(w, h))| Rect::new(format!("r{i}"), w, h)).collect()
}

fn monotone_a(v: &Rational) -> Rational {
    v * int(3) + ratio(1, 7)
}

fn monotone_b(v: &Rational) -> Rational {
    v * v * v + v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn intersects_is_symmetric(
        coords in prop::collection::vec((-12i64..12, -12i64..12), 2),
        sizes in prop::collection::vec((1u64..5, 1u64..5), 2),
    ) {
        let layout = layout_from(&coords, 2);
        let r = rects(&sizes);
        prop_assert_eq!(intersects(&r[0], &r[1], &layout).unwrap(), intersects(&r[1], &r[0], &layout).unwrap());
    }

    #[test]
    fn order_survives_monotone_maps(coords in prop::collection::vec((-6i64..6, -6i64..6), 1..7)) {
        let layout = layout_from(&coords, 1);
        let mapped = layout.map_coords(monotone_a, monotone_b);
        prop_assert!(same_orthogonal_order(&layout, &layout).unwrap());
        prop_assert!(same_orthogonal_order(&layout, &mapped).unwrap());
        prop_assert!(same_orthogonal_order(&mapped, &layout).unwrap());
        let twice = mapped.map_coords(monotone_b, monotone_a);
        prop_assert!(same_orthogonal_order(&layout, &twice).unwrap());
    }

    #[test]
    fn order_is_transitive(
        a in prop::collection::vec((-3i64..3, -3i64..3), 4),
        b in prop::collection::vec((-3i64..3, -3i64..3), 4),
        c in prop::collection::vec((-3i64..3, -3i64..3), 4),
    ) {
        let (la, lb, lc) = (layout_from(&a, 1), layout_from(&b, 1), layout_from(&c, 1));
        let ab = same_orthogonal_order(&la, &lb).unwrap();
        let bc = same_orthogonal_order(&lb, &lc).unwrap();
        prop_assert_eq!(ab, same_orthogonal_order(&lb, &la).unwrap());
        if ab && bc {
            prop_assert!(same_orthogonal_order(&la, &lc).unwrap());
        }
    }

    #[test]
    fn bbox_area_is_translation_invariant(
        pts in prop::collection::btree_set((-10i64..10, -10i64..10), 1..6),
        sizes in prop::collection::vec((1u64..4, 1u64..4), 6),
        shift in (-20i64..20, -20i64..20, 1i64..5),
    ) {
        let coords: Vec<_> = pts.into_iter().collect();
        let layout = layout_from(&coords, 1);
        let instance = Instance::new(rects(&sizes[..coords.len()]), layout.clone()).unwrap();
        let moved = layout.translated(&ratio(shift.0, shift.2), &ratio(shift.1, shift.2));
        let a = bounding_box(&instance, &layout).unwrap();
        let b = bounding_box(&instance, &moved).unwrap();
        prop_assert_eq!(a.area(), b.area());
        prop_assert_eq!(a.perimeter(), b.perimeter());
    }

    #[test]
    fn ranks_unchanged_by_doubling(coords in prop::collection::vec((-8i64..8, -8i64..8), 1..8)) {
        let layout = layout_from(&coords, 3);
        prop_assert_eq!(compute_order(&layout), compute_order(&layout.scaled(&int(2))));
    }
}
