mod common;

use common::{rng, CASES};
use lbkit::diagrams::Color;
use lbkit::homology::AbelianGroup;
use lbkit::homotopy::{
    classify, concat, crossed_class, cycle_validate, lightbulb_check, rho, rho_chain, Cycle, HomotopyMove, HomotopyTrace,
};
use lbkit::obstruction::{
    assemble_link, clasp_side, claim1_check, concordance_obstruction, core_term, eq1_evaluate, obstruct, ConcordanceSlice,
    End,
};
use lbkit::Error;
use rand::Rng;

/// A trace over `Z/2 ⊕ Z/4`, consistent in its extremum counts.
fn random_trace(r: &mut impl Rng) -> HomotopyTrace {
    let group = AbelianGroup::from_diagonal(2, &[2, 4]);
    let mut t = HomotopyTrace::empty(group);
    for _ in 0..r.gen_range(0..6) {
        let element = vec![r.gen_range(0..2), 2 * r.gen_range(0..2)];
        t.moves.push(HomotopyMove::Finger { element: element.clone() });
        t.moves.push(HomotopyMove::Whitney { element: element.clone() });
        t.cycles.push(Cycle { crossed: r.gen(), element, minima: 2, maxima: 2 });
    }
    t
}

#[test]
fn crossed_class_is_additive() {
    let mut r = rng(30);
    for _ in 0..CASES {
        let (a, b) = (random_trace(&mut r), random_trace(&mut r));
        assert!(cycle_validate(&a) && cycle_validate(&b));
        let ab = concat(&a, &b).unwrap();
        assert_eq!(crossed_class(&ab), crossed_class(&a).add(&crossed_class(&b)).unwrap());
        assert_eq!(crossed_class(&ab).parity.len(), 3);
    }
}

#[test]
fn traces_over_different_groups_do_not_concatenate() {
    let a = HomotopyTrace::empty(AbelianGroup::cyclic(2));
    let b = HomotopyTrace::empty(AbelianGroup::cyclic(4));
    assert!(matches!(concat(&a, &b), Err(Error::GroupMismatch)));
}

#[test]
fn inconsistent_traces_are_rejected() {
    let mut t = rho(0);
    t.cycles[0].minima = 1;
    assert!(matches!(lightbulb_check(&t, true, true), Err(Error::InvalidTrace(_))));
    let mut t = HomotopyTrace::empty(AbelianGroup::cyclic(4));
    t.moves = vec![HomotopyMove::Finger { element: vec![1] }, HomotopyMove::Whitney { element: vec![1] }];
    t.cycles = vec![Cycle { crossed: true, element: vec![1], minima: 2, maxima: 2 }];
    assert!(!cycle_validate(&t));
}

#[test]
fn lightbulb_needs_the_dual_hypotheses() {
    let t = rho_chain(0, 4).unwrap();
    assert!(lightbulb_check(&t, true, true).unwrap());
    assert!(!lightbulb_check(&t, false, true).unwrap());
    assert!(!lightbulb_check(&t, true, false).unwrap());
    assert!(matches!(rho_chain(0, 3), Err(Error::NotHomotopic { .. })));
}

#[test]
fn classification_is_symmetric_and_ordered() {
    for closed in [false, true] {
        for i in -8..=8 {
            for j in -8..=8 {
                let a = classify(i, j, closed);
                let b = classify(j, i, closed);
                assert_eq!(
                    (a.equivalent, a.homotopic, a.topologically_concordant, a.smoothly_isotopic),
                    (b.equivalent, b.homotopic, b.topologically_concordant, b.smoothly_isotopic)
                );
                assert!(!a.smoothly_isotopic || a.topologically_concordant);
                assert!(!a.topologically_concordant || a.homotopic);
                if a.homotopic {
                    let bit = concordance_obstruction(i, j, closed).unwrap();
                    assert_eq!(a.topologically_concordant, bit == 0);
                }
            }
        }
    }
}

#[test]
fn relation_json_carries_evidence() {
    let v = serde_json::to_value(classify(0, 2, false)).unwrap();
    assert_eq!(v["topologically_concordant"], false);
    assert_eq!(v["homotopic"], true);
    for key in ["equivalent", "homotopic", "topologically_concordant", "smoothly_isotopic"] {
        assert!(v["evidence"][key].as_str().is_some_and(|s| !s.is_empty()), "{key}");
    }
}

#[test]
fn eq1_tracks_side_tangles() {
    let mut r = rng(31);
    for _ in 0..CASES / 3 {
        let (i, j) = (r.gen_range(-6..=6i64), r.gen_range(-3..=3i64));
        let j = i + 2 * j;
        let mut s = ConcordanceSlice::model(i, j).unwrap();
        let mut sides = 0;
        for end in [End::Plus, End::Minus] {
            for c in [Color::Red, Color::Blue] {
                let w = r.gen_range(-3..=3);
                sides += w;
                s = s.with_side(end, c, clasp_side(c, c.swapped(), w)).unwrap();
            }
        }
        let lk = lbkit::diagrams::bicolored_linking(&assemble_link(&s).unwrap()).unwrap();
        assert_eq!(eq1_evaluate(&s).unwrap(), lk);
        assert_eq!(lk, core_term(&s).unwrap() + sides);
        assert_eq!(core_term(&s).unwrap().rem_euclid(2), ((i - j) / 2).rem_euclid(2));
        let _ = claim1_check(&s).unwrap();
    }
}

#[test]
fn obstruction_requires_homotopic_spheres() {
    assert!(matches!(obstruct(0, 1, false), Err(Error::NotHomotopic { i: 0, j: 1 })));
    let rep = obstruct(0, 2, true).unwrap();
    assert_eq!(rep.parity, 1);
    assert!(rep.claim1 && rep.claim2);
}
