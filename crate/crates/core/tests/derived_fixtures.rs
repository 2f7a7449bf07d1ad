//! Values produced by the brute-force oracle in `oracles/` and frozen in
//! `fixtures/derived.json`, recomputed with the library.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::Value;

use segal_core::bicat::{hom_category_css, hom_category_qcat};
use segal_core::bisset::{
    box_product, classifying_diagram, equivalences, is_complete_1trunc, mv, CompletenessFailure, Window,
};
use segal_core::corpus;
use segal_core::fincat::{
    count_functors, enumerate_nat_trans, functor_category, groupoid_interval, interval_category,
    iso_subcategory, product_category, tau0, walking_idempotent, Functor,
};
use segal_core::sset::{
    count_maps, is_kan, j_space, nerve, pi0, point, product, spine, standard_simplex, tau1, WheFailure,
};
use segal_core::totalize::{adjunction_count_check, t_upper};
use segal_core::Verdict;

fn fixtures() -> Value {
    serde_json::from_str(include_str!("fixtures/derived.json")).expect("fixture file is JSON")
}

fn usize_at(v: &Value, key: &str) -> usize {
    v[key].as_u64().unwrap_or_else(|| panic!("fixture `{key}`")) as usize
}

fn list(v: &Value) -> Vec<usize> {
    v.as_array().expect("array").iter().map(|x| x.as_u64().unwrap() as usize).collect()
}

fn sizes(c: &segal_core::fincat::FinCat) -> Vec<usize> {
    vec![c.num_objects(), c.num_morphisms()]
}

#[test]
pub fn finite_categories() {
    let f = fixtures();
    assert_eq!(sizes(&interval_category(3)), list(&f["ordinal_3"]));
    assert_eq!(sizes(&groupoid_interval(2)), list(&f["free_groupoid_2"]));
    assert_eq!(
        iso_subcategory(&walking_idempotent()).num_morphisms(),
        usize_at(&f, "iso_idempotent_morphisms")
    );
    let c1 = Arc::new(interval_category(1));
    assert_eq!(sizes(&functor_category(&c1, &c1)), list(&f["fun_1_1"]));
    let i1 = Arc::new(groupoid_interval(1));
    let square = Arc::new(product_category(&c1, &i1));
    assert_eq!(functor_category(&square, &i1).num_objects(), usize_at(&f, "fun_1xI1_I1_objects"));
    assert_eq!(sizes(&functor_category(&c1, &i1)), list(&f["fun_1_I1"]));
    assert_eq!(tau0(&square).len(), usize_at(&f, "tau0_1xI1"));
    assert_eq!(count_functors(&c1, &interval_category(2)), usize_at(&f, "functors_1_2"));
    let constant = |o: usize| Functor::new(c1.clone(), c1.clone(), vec![o, o], vec![c1.identity(o); 3]).unwrap();
    assert_eq!(
        enumerate_nat_trans(&constant(0), &constant(1)).len(),
        usize_at(&f, "nat_trans_const0_const1")
    );
}

#[test]
pub fn simplicial_sets() {
    let f = fixtures();
    assert_eq!(j_space(1, 1).generator_counts(), list(&f["j1_dim1_nondegenerate"]));
    assert_eq!(j_space(1, 2).count(2), usize_at(&f, "j1_dim2_total_2simplices"));
    assert_eq!(j_space(1, 2).generator_counts(), list(&f["j1_dim2_nondegenerate"]));
    assert_eq!(nerve(&groupoid_interval(1), 3).generator_counts(), list(&f["nerve_I1_generators"]));
    let square = product(&standard_simplex(1, 2), &standard_simplex(1, 2)).unwrap();
    assert_eq!(square.generator_counts(), list(&f["square_nondegenerate"]));
    assert_eq!(pi0(&j_space(1, 1)).len(), usize_at(&f, "pi0_j1"));
    let kan = is_kan(&nerve(&interval_category(1), 2), 2).unwrap().holds();
    assert_eq!(kan, f["nerve_1_kan"].as_bool().unwrap());
    let n1 = nerve(&interval_category(1), 2);
    assert_eq!(count_maps(&standard_simplex(1, 1), &j_space(1, 1)).unwrap(), usize_at(&f, "maps_d1_j1"));
    assert_eq!(count_maps(&spine(2, 2), &n1).unwrap(), usize_at(&f, "maps_spine2_nerve1"));
    assert_eq!(count_maps(&standard_simplex(1, 2), &n1).unwrap(), usize_at(&f, "maps_d1_nerve1"));
    assert_eq!(count_maps(&square, &n1).unwrap(), usize_at(&f, "maps_square_nerve1"));
}

#[test]
pub fn adjunction_suite_counts() {
    let f = fixtures();
    for (key, expected) in f["adjunction_maps"].as_object().unwrap() {
        let (x, c) = key.split_once('|').unwrap();
        let x = corpus::simplicial(x, 3).unwrap();
        let c = corpus::category(c).unwrap();
        let expected = expected.as_u64().unwrap() as usize;
        assert_eq!(count_maps(&x, &nerve(&c, 3)).unwrap(), expected, "maps {key}");
        assert_eq!(count_functors(&tau1(&x).unwrap().cat, &c), expected, "functors {key}");
    }
}

#[test]
pub fn fundamental_categories_of_products() {
    let f = fixtures();
    for (key, expected) in f["tau1_product_sizes"].as_object().unwrap() {
        let (n, m) = key.split_once('|').unwrap();
        let (n, m): (usize, usize) = (n.parse().unwrap(), m.parse().unwrap());
        let x = product(&standard_simplex(n, 2), &standard_simplex(m, 2)).unwrap();
        assert_eq!(sizes(&tau1(&x).unwrap().cat), list(expected), "{key}");
    }
}

#[test]
pub fn classifying_diagrams() {
    let f = fixtures();
    for (id, table) in f["classifying_counts_2_2"].as_object().unwrap() {
        let x = classifying_diagram(&corpus::category(id).unwrap(), Window::new(2, 2));
        for (n, row) in table.as_array().unwrap().iter().enumerate() {
            for (m, k) in list(row).into_iter().enumerate() {
                assert_eq!(x.count(n, m), k, "{id} ({n},{m})");
            }
        }
    }
    let x = classifying_diagram(&groupoid_interval(1), Window::new(1, 1));
    assert_eq!(x.count(1, 1), usize_at(&f, "classifying_I1_1_1"));
    let z = classifying_diagram(&interval_category(2), Window::new(2, 2));
    assert_eq!(mv(&spine(2, 2), &z).unwrap().count(0), usize_at(&f, "mv_spine2_classifying_2"));
    for (id, expected) in f["equivalence_vertices"].as_object().unwrap() {
        let x = classifying_diagram(&corpus::category(id).unwrap(), Window::new(2, 2));
        let eq = equivalences(&x).unwrap();
        assert_eq!(eq.carrier.count(0), expected.as_u64().unwrap() as usize, "{id}");
    }
}

#[test]
pub fn completeness_witness() {
    let f = fixtures();
    let b = box_product(&nerve(&groupoid_interval(1), 2), &point(2));
    let v = is_complete_1trunc(&b).unwrap();
    let Verdict::Fails(CompletenessFailure {
        failure: WheFailure::Components { source, target, image },
        ..
    }) = v
    else {
        panic!("expected a components witness, got {v:?}");
    };
    assert_eq!(vec![source, target, image], list(&f["completeness_witness"]));
}

#[test]
pub fn totalization() {
    let f = fixtures();
    let u = t_upper(&nerve(&interval_category(1), 3), Window::new(1, 1)).unwrap();
    let counts: HashMap<(usize, usize), usize> = u.counts().into_iter().collect();
    for (key, expected) in f["t_upper_nerve1_1_1"].as_object().unwrap() {
        let (n, m) = key.split_once('|').unwrap();
        let at = (n.parse().unwrap(), m.parse().unwrap());
        assert_eq!(counts[&at], expected.as_u64().unwrap() as usize, "{key}");
    }
    let x = nerve(&interval_category(1), 2);
    let expected = list(&f["transposition_counts"]);
    let pairs = [
        box_product(&standard_simplex(1, 2), &point(2)),
        box_product(&point(2), &standard_simplex(1, 2)),
    ];
    for (y, e) in pairs.iter().zip(expected) {
        let r = adjunction_count_check(y, &x).unwrap();
        assert_eq!((r.left, r.right), (e, e));
    }
}

#[test]
pub fn hom_categories() {
    let f = fixtures();
    let h = hom_category_qcat(&standard_simplex(1, 2), &nerve(&interval_category(1), 3)).unwrap();
    assert_eq!(sizes(&h.carrier), list(&f["fun_1_1"]));
    let b = box_product(&standard_simplex(1, 2), &point(2));
    let iso = classifying_diagram(&groupoid_interval(1), Window::new(2, 2));
    let h = hom_category_css(&b, &iso, Window::total2()).unwrap();
    assert_eq!(sizes(&h.carrier), list(&f["fun_1_I1"]));
}
