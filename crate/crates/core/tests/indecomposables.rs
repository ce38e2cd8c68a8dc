use std::ops::ControlFlow;

use cubic_indec::codifferent::{delta_v, delta_w, is_totally_positive_codiff, min_trace, pairing_trace};
use cubic_indec::embeddings::EmbeddedOrder;
use cubic_indec::indecomposable::*;
use cubic_indec::interval::RationalInterval;
use cubic_indec::verify::{check_simplest_min_traces, check_thomas_bounds};
use cubic_indec::{OrderElement, OrderParams};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Totally positive elements with every conjugate below `cap`, found by a
/// plain box scan.
fn bounded_totally_positive(p: OrderParams, cap: i64) -> Vec<OrderElement> {
    let eo = EmbeddedOrder::new(p).unwrap();
    let t = RationalInterval::from_integers(0, cap).unwrap();
    let mut out = Vec::new();
    eo.scan_rows::<()>(&[t.clone(), t.clone(), t], |row| {
        let mut x1 = row.x1_lo.clone();
        while x1 <= row.x1_hi {
            let e = OrderElement::new(p, [x1.clone(), row.x2.clone(), row.x3.clone()]);
            if e.is_totally_positive() {
                out.push(e);
            }
            x1 += 1;
        }
        ControlFlow::Continue(())
    });
    out
}

#[test]
fn every_small_indecomposable_is_a_unit_multiple_of_a_closed_form() {
    for (p, cap) in [
        (OrderParams::thomas(2, 4), 12),
        (OrderParams::thomas(3, 6), 12),
        (OrderParams::ennola(4), 12),
        (OrderParams::simplest(2), 14),
        (OrderParams::simplest(3), 14),
    ] {
        let p = p.unwrap();
        let forms = closed_form_indecomposables(p);
        let elems = bounded_totally_positive(p, cap);
        assert!(elems.len() > 20, "{p}: only {} elements", elems.len());
        let mut indecomposables = 0;
        for e in &elems {
            if is_indecomposable(e).unwrap() {
                indecomposables += 1;
                assert!(match_closed_form(e, &forms).unwrap().is_some(), "{p}: {e} is outside every class");
            }
        }
        assert!(indecomposables > 0, "{p}");
    }
}

#[test]
fn simplest_min_traces_on_maximal_orders() {
    let r = check_simplest_min_traces(-1..=6).unwrap();
    assert!(r.passed() && r.checks > 0, "{r}");
}

#[test]
fn thomas_bounds_on_wider_grid() {
    let grid: Vec<(i64, i64)> = (2..=6).flat_map(|a| (a + 2..=a + 9).map(move |b| (a, b))).collect();
    let r = check_thomas_bounds(&grid).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn thomas_classes_beyond_the_acceptance_grid() {
    for (a, b) in [(2, 9), (3, 9), (5, 8), (5, 12), (6, 9)] {
        let p = OrderParams::thomas(a, b).unwrap();
        let classes = indecomposable_classes(p).unwrap();
        assert_eq!(classes.len() as i64, (b - a) * a, "({a},{b})");
    }
}

#[test]
fn named_codifferent_elements_bound_min_trace() {
    let p = OrderParams::thomas(3, 7).unwrap();
    let (dv, dw) = (delta_v(p).unwrap(), delta_w(p).unwrap());
    assert!(is_totally_positive_codiff(&dv) && is_totally_positive_codiff(&dw));
    for d in closed_form_indecomposables(p) {
        let e = d.to_element();
        let t = BigInt::from(min_trace(&e, 10).unwrap());
        assert!(t <= pairing_trace(&dv, &e).unwrap() && t <= pairing_trace(&dw, &e).unwrap(), "{d}");
    }
}

fn simplest_descriptor() -> impl Strategy<Value = IndecDescriptor> {
    (0i64..12)
        .prop_flat_map(|a| (Just(a), 0..=a))
        .prop_flat_map(|(a, v)| (Just(a), Just(v), 0..=a - v))
        .prop_map(|(a, v, cap_w)| IndecDescriptor::simplest_vw_cap(OrderParams::simplest(a).unwrap(), v, cap_w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_maps_preserve_norm_and_class_structure(d in simplest_descriptor()) {
        let n = d.to_element().norm();
        let x = t1(&d).unwrap();
        prop_assert_eq!(x.to_element().norm(), n.clone());
        prop_assert_eq!(t2(&d).unwrap().to_element().norm(), n);
        prop_assert_eq!(t1(&x).unwrap(), t2(&d).unwrap());
    }

    #[test]
    fn unit_multiples_share_a_class(d in simplest_descriptor(), i in 0u32..3, j in 0u32..3) {
        let p = *d.params();
        let pair = standard_unit_pair(p).unwrap();
        let u = pair.first().pow(i).try_mul(&pair.second().pow(j)).unwrap();
        let e = d.to_element();
        let moved = e.try_mul(&u).unwrap();
        prop_assert!(same_unit_class(&e, &moved).unwrap());
        prop_assert_eq!(dedup_up_to_units(&[e, moved], p).unwrap().len(), 1);
    }
}
