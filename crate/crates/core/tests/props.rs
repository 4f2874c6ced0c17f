//! Randomized invariants over the stock quantales.
//!
//! These complement the exhaustive sweeps: instead of enumerating every
//! instance at one fixed size, proptest shakes the same laws with random
//! value tables, random maps and random subbases, shrinking any
//! counterexample it finds.

use std::sync::Arc;

use proptest::prelude::*;

use qsober_core::cotopology::{Cotopology, Mode};
use qsober_core::fuzzy::{self, FuzzySet, PointMap, PointSet};
use qsober_core::{Quantale, StandardKind};

fn nth_quantale(i: usize) -> Quantale {
    match i {
        0 => Quantale::standard(StandardKind::Boolean4, 0).unwrap(),
        1 => Quantale::standard(StandardKind::Godel, 2).unwrap(),
        2 => Quantale::standard(StandardKind::Godel, 4).unwrap(),
        3 => Quantale::standard(StandardKind::Lukasiewicz, 3).unwrap(),
        4 => Quantale::standard(StandardKind::Lukasiewicz, 5).unwrap(),
        5 => Quantale::standard(StandardKind::NilpotentMin, 4).unwrap(),
        _ => Quantale::standard(StandardKind::NilpotentMin, 6).unwrap(),
    }
}

fn space(n: usize) -> Arc<PointSet> {
    let pool = ["x", "y", "z"];
    PointSet::new(pool[..n].iter().map(|s| s.to_string()).collect()).unwrap()
}

proptest! {
    #[test]
    fn residuation_is_adjoint_to_tensor(qi in 0usize..7, seed in proptest::collection::vec(0usize..1000, 3)) {
        let q = nth_quantale(qi);
        let (p, r, s) = (seed[0] % q.size(), seed[1] % q.size(), seed[2] % q.size());
        prop_assert_eq!(q.leq(q.tensor(p, r), s), q.leq(r, q.res(p, s)));
    }

    #[test]
    fn sub_triangle_inequality(qi in 0usize..7, n in 1usize..=3, seed in proptest::collection::vec(0usize..1000, 9)) {
        let q = nth_quantale(qi);
        let xs = space(n);
        let take = |off: usize| -> Vec<usize> {
            (0..n).map(|i| seed[off + i] % q.size()).collect()
        };
        let a = FuzzySet::new(&xs, take(0), &q).unwrap();
        let b = FuzzySet::new(&xs, take(3), &q).unwrap();
        let c = FuzzySet::new(&xs, take(6), &q).unwrap();
        let lhs = q.tensor(fuzzy::sub(&q, &b, &c).unwrap(), fuzzy::sub(&q, &a, &b).unwrap());
        prop_assert!(q.leq(lhs, fuzzy::sub(&q, &a, &c).unwrap()));
        prop_assert_eq!(fuzzy::sub(&q, &a, &a).unwrap(), q.top());
    }

    #[test]
    fn image_is_left_adjoint_to_preimage(
        qi in 0usize..7,
        nx in 1usize..=3,
        ny in 1usize..=3,
        seed in proptest::collection::vec(0usize..1000, 9),
    ) {
        let q = nth_quantale(qi);
        let xs = space(nx);
        let ys = space(ny);
        let f = PointMap::new(&xs, &ys, (0..nx).map(|i| seed[i] % ny).collect()).unwrap();
        let a = FuzzySet::new(&xs, (0..nx).map(|i| seed[3 + i] % q.size()).collect(), &q).unwrap();
        let b = FuzzySet::new(&ys, (0..ny).map(|i| seed[6 + i] % q.size()).collect(), &q).unwrap();
        prop_assert_eq!(
            fuzzy::sub(&q, &fuzzy::image(&q, &f, &a).unwrap(), &b).unwrap(),
            fuzzy::sub(&q, &a, &fuzzy::preimage(&f, &b).unwrap()).unwrap()
        );
    }

    #[test]
    fn canonical_families_are_sorted_deduplicated_and_indexable(
        qi in 0usize..7,
        n in 1usize..=2,
        rows in proptest::collection::vec(proptest::collection::vec(0usize..4, 2), 0..8),
    ) {
        let q = nth_quantale(qi);
        let xs = space(n);
        let family: Vec<FuzzySet> = rows
            .iter()
            .map(|row| {
                let vals: Vec<usize> = (0..n).map(|i| row[i] % q.size()).collect();
                FuzzySet::new(&xs, vals, &q).unwrap()
            })
            .collect();
        let canon = fuzzy::canonicalize(family.clone());
        for w in canon.windows(2) {
            prop_assert!(w[0].values() < w[1].values());
        }
        for a in &family {
            let i = fuzzy::position(&canon, a).unwrap();
            prop_assert_eq!(&canon[i], a);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_spaces_close_and_validate(
        qi in 0usize..7,
        mode_ix in 0usize..4,
        rows in proptest::collection::vec(proptest::collection::vec(0usize..6, 2), 0..3),
    ) {
        let q = nth_quantale(qi);
        let xs = space(2);
        let subbasis: Vec<FuzzySet> = rows
            .iter()
            .map(|row| {
                let vals: Vec<usize> = row.iter().map(|&v| v % q.size()).collect();
                FuzzySet::new(&xs, vals, &q).unwrap()
            })
            .collect();
        let mode = [Mode::Plain, Mode::Stratified, Mode::Costratified, Mode::Strong][mode_ix];
        let tau = Cotopology::generate(&q, &xs, &subbasis, mode, 20_000).unwrap();
        // The validator inside `generate` has already re-checked the
        // axioms; spot-check closure laws on the subbasis elements.
        for a in &subbasis {
            prop_assert!(tau.contains(&tau.closure(&q, a).unwrap()));
            let cl = tau.closure(&q, a).unwrap();
            prop_assert!(a.leq(&cl, &q).unwrap());
            prop_assert_eq!(tau.closure(&q, &cl).unwrap(), cl);
        }
        // Generation is monotone in the mode lattice.
        let plain = Cotopology::generate(&q, &xs, &subbasis, Mode::Plain, 20_000).unwrap();
        prop_assert!(plain.len() <= tau.len());
        for a in plain.closed() {
            prop_assert!(tau.contains(a));
        }
    }
}
