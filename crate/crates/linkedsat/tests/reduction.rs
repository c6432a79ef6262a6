use linkedsat::formula::{Formula, Semantics};
use linkedsat::gadgets::Variant;
use linkedsat::layout::{grid_embed, parity_scale};
use linkedsat::planarity::{build_incidence_graph, union_planar};
use linkedsat::reduction::{kappa_cycle, parse_linked_instance, reduce, reduce_formula, reduce_side, LinkedInstance, Method, ReductionError};
use linkedsat::satisfiers::{brute_count, exact_count};
use linkedsat::verify::{check_side_separation, gen_instance, parse_order_comment, verify_linked, GenClass, Verdict};
use num_bigint::BigUint;
use proptest::prelude::*;

fn f(nv: u32, cl: &[&[i64]]) -> Formula {
    Formula::from_dimacs_clauses(nv, cl).unwrap()
}

fn linked_ok(li: &LinkedInstance) -> bool {
    let g = build_incidence_graph(&li.formula).unwrap();
    union_planar(&g.graph, &[kappa_cycle(li).vertices]).unwrap().is_planar()
}

#[test]
fn basic_two_literal_clause() {
    let x = f(2, &[&[1, 2]]);
    let li = reduce_formula(&x, Variant::Basic).unwrap();
    assert!(linked_ok(&li));
    assert_eq!(exact_count(&li.formula, Semantics::Cnf), 3u32.into());
}

#[test]
fn side_small() {
    let x = f(4, &[&[1, 2, 3], &[-2, -3, -4], &[2, 3]]);
    let li = reduce_side(&x, &[1, 2, 3, 4]).unwrap();
    assert!(linked_ok(&li));
    assert!(li.formula.classify().max_occurrence <= 3);
    assert_eq!(exact_count(&li.formula, Semantics::Cnf), exact_count(&x, Semantics::Cnf));
    assert_eq!(check_side_separation(&li), Ok(()));
}

fn corpus(class: GenClass, method: Method, vars: usize, seeds: u64) {
    for seed in 0..seeds {
        let g = gen_instance(class, vars, 10, seed).unwrap();
        let li = match method {
            Method::Connector(v) => reduce_formula(&g.formula, v),
            Method::Side => reduce_side(&g.formula, &g.order),
        }
        .unwrap_or_else(|e| panic!("{class} {method} seed {seed}: {e}"));
        let r = verify_linked(&li, &g.formula, method);
        assert!(r.passed(), "{class} {method} seed {seed}:\n{r}");
        for name in ["kappa_order", "union_planar", "equisatisfiable"] {
            assert_eq!(r.get(name).unwrap().verdict, Verdict::Pass, "{name}");
        }
    }
}

#[test]
fn corpus_basic() {
    corpus(GenClass::Planar3Sat, Method::Connector(Variant::Basic), 9, 6);
}

#[test]
fn corpus_one_in_three() {
    corpus(GenClass::Positive1in3, Method::Connector(Variant::OneInThree), 8, 4);
}

#[test]
fn corpus_three_distinct() {
    corpus(GenClass::Planar3Sat, Method::Connector(Variant::ThreeDistinct), 6, 3);
}

#[test]
fn corpus_monotone() {
    corpus(GenClass::Monotone, Method::Connector(Variant::Monotone), 8, 4);
}

#[test]
fn corpus_side() {
    corpus(GenClass::Monotone, Method::Side, 9, 6);
}

#[test]
fn parity_scaled_drawings_reduce_directly() {
    for seed in 0..4 {
        let g = gen_instance(GenClass::Planar3Sat, 7, 7, seed).unwrap();
        let d = grid_embed(&build_incidence_graph(&g.formula).unwrap()).unwrap();
        let li = reduce(&g.formula, &parity_scale(&d).drawing, Variant::Basic).unwrap();
        let m = Method::Connector(Variant::Basic);
        let r = verify_linked(&li, &g.formula, m);
        assert!(r.passed(), "seed {seed}:\n{r}");
    }
}

#[test]
fn unscaled_drawings_are_rejected() {
    let x = f(3, &[&[1, -2, 3]]);
    let mut d = grid_embed(&build_incidence_graph(&x).unwrap()).unwrap();
    d.pos[0].0 = 1;
    assert!(reduce(&x, &d, Variant::Basic).is_err());
}

#[test]
fn three_distinct_multiplies_by_sixteen_per_gadget() {
    let x = f(3, &[&[1, -2, 3]]);
    let li = reduce_formula(&x, Variant::ThreeDistinct).unwrap();
    let before = brute_count(&x, Semantics::Cnf).unwrap();
    let g = li.provenance.gadgets as u32;
    assert!(g > 0);
    assert_eq!(exact_count(&li.formula, Semantics::Cnf), BigUint::from(before) * BigUint::from(16u32).pow(g));
}

#[test]
fn mixed_sign_clauses_are_rejected_by_side() {
    let x = f(3, &[&[1, -2, 3]]);
    assert!(matches!(reduce_side(&x, &[1, 2, 3]), Err(ReductionError::ClassMismatch { .. })));
}

#[test]
fn basic_output_is_not_side_separated() {
    // Connector outputs place negated occurrences on both sides of their clauses.
    let g = gen_instance(GenClass::Planar3Sat, 8, 8, 3).unwrap();
    let li = reduce_formula(&g.formula, Variant::Basic).unwrap();
    assert!(check_side_separation(&li).is_err());
}

#[test]
fn planted_side_violation_is_reported() {
    let x = f(3, &[&[1, 2, 3], &[-1, -3]]);
    let mut li = reduce_side(&x, &[1, 2, 3]).unwrap();
    // Flip the sign of one occurrence; its edge now points the wrong way.
    let mut clauses = li.formula.clauses().to_vec();
    let j = clauses.iter().position(|c| c.len() == 3).unwrap();
    clauses[j][0] = clauses[j][0].negate();
    li.formula = Formula::from_clauses(li.formula.num_vars(), clauses).unwrap();
    let v = check_side_separation(&li).unwrap_err();
    assert_eq!(v.clause, j);
    let r = verify_linked(&li, &x, Method::Side);
    assert_eq!(r.get("side_separation").unwrap().verdict, Verdict::Fail);
}

#[test]
fn text_round_trip() {
    let g = gen_instance(GenClass::Monotone, 6, 6, 1).unwrap();
    for li in [reduce_formula(&g.formula, Variant::Basic).unwrap(), reduce_side(&g.formula, &g.order).unwrap()] {
        let text = li.to_text();
        let back = parse_linked_instance(&text).unwrap();
        assert_eq!(back, li);
        assert_eq!(back.to_text(), text);
    }
}

#[test]
fn unknown_section_is_rejected() {
    let li = reduce_formula(&f(2, &[&[1, 2]]), Variant::Basic).unwrap();
    let text = li.to_text().replace("[columns]", "[colums]");
    let e = parse_linked_instance(&text).unwrap_err();
    assert!(matches!(e, ReductionError::Format { .. }), "{e}");
    assert!(e.to_string().contains("unknown section"));
}

#[test]
fn truncated_instance_is_rejected() {
    let li = reduce_formula(&f(2, &[&[1, 2]]), Variant::Basic).unwrap();
    let text = li.to_text();
    let cut = &text[..text.find("[provenance]").unwrap()];
    assert!(parse_linked_instance(cut).is_err());
}

#[test]
fn generated_order_survives_text() {
    let g = gen_instance(GenClass::Monotone, 7, 6, 4).unwrap();
    assert_eq!(parse_order_comment(&g.to_text()), Some(g.order.clone()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generator_is_deterministic_and_in_class(class_i in 0..5usize, vars in 5..10usize, clauses in 1..10usize, seed in any::<u64>()) {
        let class = GenClass::ALL[class_i];
        let a = gen_instance(class, vars, clauses, seed).unwrap();
        let b = gen_instance(class, vars, clauses, seed).unwrap();
        prop_assert_eq!(a.to_text(), b.to_text());
        prop_assert!(class.certify(&a.formula));
        prop_assert!(a.formula.num_clauses() <= clauses);
        prop_assert!(a.drawing.is_crossing_free());
    }

    #[test]
    fn side_reduction_preserves_counts(vars in 4..8usize, seed in any::<u64>()) {
        let g = gen_instance(GenClass::Monotone, vars, 6, seed).unwrap();
        let li = reduce_side(&g.formula, &g.order).unwrap();
        prop_assert_eq!(check_side_separation(&li), Ok(()));
        prop_assert!(li.formula.classify().max_occurrence <= 3);
        prop_assert_eq!(exact_count(&li.formula, Semantics::Cnf), BigUint::from(brute_count(&g.formula, Semantics::Cnf).unwrap()));
    }
}
