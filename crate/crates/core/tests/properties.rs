use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use morita::context::{ContextRing, Grade};
use morita::finalg::SearchOptions;
use morita::fixtures;
use morita::isoclasses::{enumerate_iso0, realize, RingMap};

fn rings() -> &'static [Arc<ContextRing>] {
    static RINGS: OnceLock<Vec<Arc<ContextRing>>> = OnceLock::new();
    RINGS.get_or_init(|| fixtures::standard().into_iter().map(|f| f.ring).collect())
}

fn zero_f3_maps() -> &'static [RingMap] {
    static MAPS: OnceLock<Vec<RingMap>> = OnceLock::new();
    MAPS.get_or_init(|| {
        let t = fixtures::by_name("zero-f3").unwrap().ring;
        let (c0, c1) = enumerate_iso0(&t, &t, SearchOptions::default()).unwrap();
        c0.iter().chain(&c1).map(|x| realize(x).unwrap()).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_matches_matrix_formula(which in 0usize..10, x in any::<usize>(), y in any::<usize>()) {
        let t = &rings()[which];
        let (x, y) = (x % t.order(), y % t.order());
        prop_assert_eq!(t.ring().mul(x, y), t.formula_mul(x, y));
    }

    #[test]
    fn split_join_round_trip(which in 0usize..10, x in any::<usize>()) {
        let t = &rings()[which];
        let x = x % t.order();
        let (r, m, n, s) = t.split(x);
        prop_assert_eq!(t.join(r, m, n, s), x);
    }

    #[test]
    fn grading_law(which in 0usize..10, i in 0usize..3, j in 0usize..3, a in any::<usize>(), b in any::<usize>()) {
        let t = &rings()[which];
        let grades = [Grade::Minus, Grade::Zero, Grade::Plus];
        let (ci, cj) = (t.component(grades[i]), t.component(grades[j]));
        let (x, y) = (ci[a % ci.len()], cj[b % cj.len()]);
        let p = t.ring().mul(x, y);
        match grades[i].sum(grades[j]) {
            Some(g) => prop_assert!(t.in_component(p, g)),
            None => prop_assert_eq!(p, 0),
        }
    }

    #[test]
    fn realized_tuples_preserve_products(pick in any::<usize>(), x in 0usize..81, y in 0usize..81) {
        let maps = zero_f3_maps();
        let phi = &maps[pick % maps.len()];
        let r = phi.source().ring();
        prop_assert_eq!(phi.apply(r.mul(x, y)), r.mul(phi.apply(x), phi.apply(y)));
        prop_assert_eq!(phi.apply(r.add(x, y)), r.add(phi.apply(x), phi.apply(y)));
    }
}
