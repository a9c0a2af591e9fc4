mod common;

use princlift::fixtures::{chain, diamond};
use princlift::order::{
    automorphisms, is_order_iso, is_selfdual, lattice_witness, order_iso, Lattice, Missing, OrderError, Poset,
    QuasiOrder,
};
use proptest::prelude::*;

#[test]
fn closure_adds_transitive_pairs() {
    let q = QuasiOrder::closure(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
    assert!(q.le(q.index("a").unwrap(), q.index("c").unwrap()));
    assert!(!q.le(q.index("c").unwrap(), q.index("a").unwrap()));
}

#[test]
fn cycle_is_not_a_poset() {
    let q = QuasiOrder::closure(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
    assert!(q.antisymmetry_witness().is_some());
    assert!(matches!(q.into_poset(), Err(OrderError::NotAntisymmetric(..))));
}

#[test]
fn unknown_and_duplicate_labels() {
    assert!(matches!(
        Poset::new(&["a"], &[("a", "z")]),
        Err(OrderError::UnknownElement(z)) if z == "z"
    ));
    assert!(matches!(Poset::new(&["a", "a"], &[]), Err(OrderError::DuplicateElement(_))));
}

#[test]
fn chains_and_diamond() {
    for n in 2..=6 {
        let c = chain(n);
        assert_eq!(c.len(), n);
        assert_eq!(c.length(), n - 1);
        assert_eq!(common::length(&c), n - 1);
        assert!(c.is_bounded());
    }
    let d = diamond();
    assert_eq!(d.covers().len(), 4);
    assert_eq!(d.length(), 2);
}

#[test]
fn non_lattice_has_witness() {
    // two incomparable elements with two minimal upper bounds
    let p = Poset::new(
        &["0", "a", "b", "c", "d", "1"],
        &[("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")],
    )
    .unwrap();
    let (x, y, m) = lattice_witness(&p).expect("not a lattice");
    assert!(common::lub(&p, x, y).is_none() || common::glb(&p, x, y).is_none());
    assert!(matches!(m, Missing::Join | Missing::Meet));
    assert!(Lattice::from_poset(p).is_err());
}

#[test]
fn m3_and_n5_tables_match_oracle() {
    for l in [common::m3(), common::n5()] {
        let (j, m) = common::tables(l.poset());
        for x in 0..l.len() {
            for y in 0..l.len() {
                assert_eq!(l.join(x, y), j[x][y]);
                assert_eq!(l.meet(x, y), m[x][y]);
            }
        }
    }
}

#[test]
fn automorphism_counts() {
    assert_eq!(automorphisms(&chain(4)).unwrap().len(), 1);
    assert_eq!(automorphisms(&diamond()).unwrap().len(), 2);
    assert_eq!(automorphisms(common::m3().poset()).unwrap().len(), 6);
    assert!(is_selfdual(common::n5().poset()).unwrap());
    let vee = Poset::new(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap();
    assert!(!is_selfdual(&vee).unwrap());
}

#[test]
fn iso_between_relabelings() {
    let p = diamond();
    let q = p.relabel(|s| format!("{s}'")).unwrap();
    let m = order_iso(&p, &q).unwrap().unwrap();
    assert!(is_order_iso(&p, &q, &m));
    assert!(order_iso(&p, &chain(4)).unwrap().is_none());
}

#[test]
fn dual_reverses() {
    let n5 = common::n5();
    let d = n5.dual();
    for x in 0..n5.len() {
        for y in 0..n5.len() {
            let (dx, dy) = (d.index(n5.label(x)).unwrap(), d.index(n5.label(y)).unwrap());
            assert_eq!(n5.le(x, y), d.le(dy, dx));
            assert_eq!(d.join(dx, dy), d.index(n5.label(n5.meet(x, y))).unwrap());
        }
    }
}

#[test]
fn sublattice_check() {
    let l = common::set_lattice(&[1, 2, 4, 8]);
    let keep: Vec<usize> = ["s0", "s1", "s3", "s15"].iter().map(|s| l.index(s).unwrap()).collect();
    let mut set = fixedbitset_of(l.len(), &keep);
    assert!(l.is_01_sublattice(&set));
    // s2 ∨ s4 = s6 is missing
    set.set(l.index("s2").unwrap(), true);
    set.set(l.index("s4").unwrap(), true);
    assert!(!l.is_01_sublattice(&set));
}

fn fixedbitset_of(n: usize, ones: &[usize]) -> fixedbitset::FixedBitSet {
    let mut s = fixedbitset::FixedBitSet::with_capacity(n);
    for &i in ones {
        s.insert(i);
    }
    s
}

proptest! {
    #[test]
    fn generated_lattices_agree_with_oracle(gens in proptest::collection::vec(0u8..16, 0..6)) {
        let l = common::set_lattice(&gens);
        let (j, m) = common::tables(l.poset());
        for x in 0..l.len() {
            for y in 0..l.len() {
                prop_assert_eq!(l.join(x, y), j[x][y]);
                prop_assert_eq!(l.meet(x, y), m[x][y]);
            }
        }
        prop_assert_eq!(l.length(), common::length(l.poset()));
    }

    #[test]
    fn double_dual_is_identity(gens in proptest::collection::vec(0u8..16, 0..6)) {
        let l = common::set_lattice(&gens);
        prop_assert_eq!(l.dual().dual(), l);
    }

    #[test]
    fn closure_is_transitive(seed in proptest::collection::vec((0usize..6, 0usize..6), 0..12)) {
        let labels: Vec<String> = (0..6).map(|i| format!("x{i}")).collect();
        let pairs: Vec<(String, String)> =
            seed.iter().map(|&(a, b)| (labels[a].clone(), labels[b].clone())).collect();
        let q = QuasiOrder::closure(&labels, &pairs).unwrap();
        for &(a, b) in &seed {
            prop_assert!(q.le(a, b));
        }
        for a in 0..6 {
            prop_assert!(q.le(a, a));
            for b in 0..6 {
                for c in 0..6 {
                    prop_assert!(!(q.le(a, b) && q.le(b, c)) || q.le(a, c));
                }
            }
        }
    }
}
