mod common;

use princlift::congruence::CongruenceIndex;
use princlift::fixtures::{bounded_quasiorders, chain, diamond, two_cycle_quasiorders};
use princlift::io::{ColorsDoc, PairsDoc};
use princlift::nlattice::{
    build_big, build_big_with_steps, build_lhnu, default_mnh, selfduality_map, verify_mnh, zeta_iso, BuildError,
    ColorUniverse,
};
use princlift::order::QuasiOrder;
use princlift::quasicolor::{princ_color_iso, theta_quotient, validate_quasicoloring};
use proptest::prelude::*;

#[test]
fn frame_lattice_contract() {
    let m = default_mnh();
    assert_eq!(m.lattice.len(), 16);
    let r = verify_mnh(&m);
    assert!(r.passed(), "{r}");
    assert_eq!(common::congruences_by_covers(&m.lattice).len(), 2);
    assert_eq!(common::length(m.lattice.poset()), 5);
}

#[test]
fn two_chain_sizes() {
    let b = build_lhnu(chain(2).as_quasiorder()).unwrap();
    assert_eq!(b.lattice().len(), 51);
    assert_eq!(common::length(b.lattice().poset()), 5);
    let b = build_lhnu(chain(3).as_quasiorder()).unwrap();
    assert_eq!(b.lattice().len(), 85);
}

fn check_lhnu(name: &str, h: &QuasiOrder) {
    let b = build_lhnu(h).unwrap_or_else(|e| panic!("{name}: {e}"));
    let l = b.lattice();
    assert_eq!(l.length(), 5, "{name}");
    assert!(selfduality_map(l, &default_mnh()).is_some(), "{name}");
    zeta_iso(&b).unwrap_or_else(|e| panic!("{name}: {e}"));
    // every principal congruence is an anchor congruence
    let anchor_ids: std::collections::BTreeSet<usize> = b.anchors.iter().map(|&(a, c)| b.index.id(a, c)).collect();
    assert_eq!(anchor_ids.len(), b.index.congruences().len(), "{name}");
    assert!(validate_quasicoloring(&b.colored, &b.index).is_valid(), "{name}");
}

#[test]
fn small_posets_and_cycles() {
    for p in [chain(2), chain(3), chain(4), diamond()] {
        check_lhnu(&p.to_string(), p.as_quasiorder());
    }
    for (name, q) in two_cycle_quasiorders() {
        check_lhnu(&name, &q);
    }
}

#[test]
fn two_chain_lattice_is_simple() {
    // Princ ≅ 2-chain means the only principal congruences are Δ and ∇
    let b = build_lhnu(chain(2).as_quasiorder()).unwrap();
    assert_eq!(common::congruences_by_covers(b.lattice()).len(), 2);
    assert_eq!(b.index.congruences().len(), 2);
}

#[test]
fn three_chain_congruences_form_a_chain() {
    let b = build_lhnu(chain(3).as_quasiorder()).unwrap();
    let cons = common::congruences_by_covers(b.lattice());
    assert_eq!(cons.len(), 3);
    for x in &cons {
        for y in &cons {
            assert!(common::refines(x, y) || common::refines(y, x));
        }
    }
}

#[test]
fn sweep_all_small_quasiorders() {
    let mut built = 0;
    for n in 2..=4 {
        for q in bounded_quasiorders(n) {
            if theta_quotient(&q).classes.len() < 2 {
                assert!(build_lhnu(&q).is_err());
                continue;
            }
            check_lhnu(&format!("{:?}", q.pairs()), &q);
            built += 1;
        }
    }
    assert_eq!(built, 12);
}

#[test]
fn enumeration_counts() {
    // bounded quasiorders up to isomorphism
    assert_eq!(bounded_quasiorders(2).len(), 2);
    assert_eq!(bounded_quasiorders(3).len(), 4);
}

fn universe() -> ColorUniverse {
    common::glue_universe()
}

#[test]
fn step_order_does_not_matter() {
    let u = universe();
    let base = build_big(&u).unwrap();
    let mut steps = u.steps();
    steps.reverse();
    let other = build_big_with_steps(&u, &steps).unwrap();
    assert_eq!(base.lattice(), other.lattice());
    steps.rotate_left(1);
    let third = build_big_with_steps(&u, &steps).unwrap();
    assert_eq!(base.lattice(), third.lattice());
}

#[test]
fn build_n_from_documents() {
    let colors = ColorsDoc {
        elements: vec!["z".into(), "p".into(), "u".into()],
        z: vec!["z".into()],
        u: vec!["u".into()],
    };
    let i: PairsDoc = vec![("z".into(), "p".into())];
    let j: PairsDoc = vec![];
    let u = ColorUniverse::from_docs(&colors, &i, &j).unwrap();
    let b = build_big(&u).unwrap();
    let idx = CongruenceIndex::new(b.lattice());
    princ_color_iso(&b.colored, &idx).unwrap();
}

#[test]
fn bad_universes_rejected() {
    let mut u = universe();
    u.u.insert("z1".into());
    assert!(matches!(build_big(&u), Err(BuildError::Universe(_))));
    let mut u = universe();
    u.i.insert(("p".into(), "z1".into()));
    assert!(build_big(&u).is_err());
    let mut u = universe();
    u.colors.push("a<b".into());
    assert!(build_big(&u).is_err());
    let total = QuasiOrder::closure(&["x", "y"], &[("x", "y"), ("y", "x")]).unwrap();
    assert!(build_lhnu(&total).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn shuffled_steps_give_the_same_lattice(steps in Just(universe().steps()).prop_shuffle()) {
        let u = universe();
        let base = build_big(&u).unwrap();
        let other = build_big_with_steps(&u, &steps).unwrap();
        prop_assert_eq!(base.lattice(), other.lattice());
    }
}
