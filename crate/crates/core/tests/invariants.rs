//! Property tests for structural invariants.

use std::sync::Arc;

use proptest::prelude::*;

use segal_core::bisset::box_product;
use segal_core::ez::{insert, is_normal, normalize};
use segal_core::fincat::{
    count_functors, enumerate_functors, groupoid_interval, interval_category, is_isomorphic, product_category,
    walking_idempotent, FinCat,
};
use segal_core::sset::{j_space, nerve, nerve_map, product, standard_simplex, tau1, TruncSSet};

fn category(i: usize) -> FinCat {
    match i {
        0..=3 => interval_category(i),
        4 | 5 => groupoid_interval(i - 4),
        6 => walking_idempotent(),
        _ => product_category(&interval_category(1), &groupoid_interval(1)),
    }
}

fn simplicial(i: usize, d: usize) -> TruncSSet {
    match i {
        0..=2 => standard_simplex(i, d),
        3 | 4 => j_space(i - 3, d),
        _ => nerve(&category(i - 5), d),
    }
}

fn assert_identities(x: &TruncSSet) {
    for k in 1..=x.dim() {
        for c in 0..x.count(k) as u32 {
            for j in 0..=k {
                for i in 0..j {
                    // d_i d_j = d_{j-1} d_i
                    if k >= 2 {
                        let a = x.face(k - 1, x.face(k, c, j), i);
                        let b = x.face(k - 1, x.face(k, c, i), j - 1);
                        assert_eq!(a, b, "d{i} d{j} at level {k}");
                    }
                }
            }
        }
    }
    for k in 0..x.dim() {
        for c in 0..x.count(k) as u32 {
            for j in 0..=k {
                let s = x.degen(k, c, j);
                assert_eq!(x.face(k + 1, s, j), c);
                assert_eq!(x.face(k + 1, s, j + 1), c);
                for i in 0..=k + 1 {
                    let expect = if i < j {
                        Some(x.degen(k - 1, x.face(k, c, i), j - 1))
                    } else if i > j + 1 {
                        Some(x.degen(k - 1, x.face(k, c, i - 1), j))
                    } else {
                        None
                    };
                    if let Some(e) = expect {
                        assert_eq!(x.face(k + 1, s, i), e, "d{i} s{j} at level {k}");
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn normal_forms_are_stable(word in prop::collection::vec(0u8..5, 0..6)) {
        let n = normalize(&word);
        prop_assert!(is_normal(&n));
        prop_assert_eq!(normalize(&n), n.clone());
        prop_assert_eq!(n.len(), word.len());
        if let Some((&first, rest)) = word.split_first() {
            prop_assert_eq!(insert(&normalize(rest), first), n);
        }
    }

    #[test]
    fn products_satisfy_the_simplicial_identities(a in 0usize..8, b in 0usize..5) {
        let x = product(&simplicial(a, 2), &simplicial(b, 2)).unwrap();
        assert_identities(&x);
        for k in 0..=2 {
            prop_assert_eq!(x.count(k), simplicial(a, 2).count(k) * simplicial(b, 2).count(k));
        }
    }

    #[test]
    fn nerves_satisfy_the_simplicial_identities(i in 0usize..8) {
        assert_identities(&nerve(&category(i), 3));
    }

    #[test]
    fn box_products_count_pairs(a in 0usize..8, b in 0usize..8) {
        let (x, y) = (simplicial(a, 2), simplicial(b, 2));
        let bx = box_product(&x, &y);
        for ((n, m), k) in bx.counts() {
            prop_assert_eq!(k, x.count(n) * y.count(m));
        }
    }

    #[test]
    fn counting_agrees_with_enumeration(a in 0usize..8, b in 0usize..8) {
        let (c, d) = (Arc::new(category(a)), Arc::new(category(b)));
        prop_assert_eq!(count_functors(&c, &d), enumerate_functors(&c, &d).len());
    }

    #[test]
    fn nerve_is_functorial(a in 0usize..7, b in 0usize..7, c in 0usize..7, pick in any::<prop::sample::Index>()) {
        let cats: Vec<_> = [a, b, c].iter().map(|&i| Arc::new(category(i))).collect();
        let fs = enumerate_functors(&cats[0], &cats[1]);
        let gs = enumerate_functors(&cats[1], &cats[2]);
        prop_assume!(!fs.is_empty() && !gs.is_empty());
        let (f, g) = (pick.get(&fs), pick.get(&gs));
        let whole = nerve_map(&f.then(g), 2).unwrap();
        let parts = nerve_map(f, 2).unwrap().then(&nerve_map(g, 2).unwrap());
        prop_assert_eq!(whole.levels(), parts.levels());
    }

    #[test]
    fn fundamental_category_of_a_nerve(i in 0usize..8) {
        let c = category(i);
        prop_assert!(is_isomorphic(&tau1(&nerve(&c, 2)).unwrap().cat, &c));
    }
}
