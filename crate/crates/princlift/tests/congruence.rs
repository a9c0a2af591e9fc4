mod common;

use princlift::congruence::{
    check_homomorphism, con_lattice, is_simple, principal_congruence, princ_map, princ_poset, quotient_lattice,
    Congruence, CongruenceIndex,
};
use princlift::fixtures::{chain, diamond};
use princlift::order::Lattice;
use proptest::prelude::*;

fn as_blocks(c: &Congruence) -> Vec<usize> {
    (0..c.len()).map(|i| c.rep(i)).collect()
}

fn same_partition(a: &[usize], b: &[usize]) -> bool {
    common::refines(a, b) && common::refines(b, a)
}

fn small_lattices() -> Vec<(&'static str, Lattice)> {
    vec![
        ("chain4", Lattice::from_poset(chain(4)).unwrap()),
        ("diamond", Lattice::from_poset(diamond()).unwrap()),
        ("m3", common::m3()),
        ("n5", common::n5()),
        ("2x3", common::set_lattice(&[1, 2, 6])),
        ("boolean8", common::set_lattice(&[1, 2, 4])),
    ]
}

fn check_against_oracle(l: &Lattice) {
    let brute = common::congruences(l);
    let con = con_lattice(l).unwrap();
    assert_eq!(con.len(), brute.len(), "number of congruences");
    for c in &con {
        let b = as_blocks(c);
        assert!(brute.iter().any(|o| same_partition(o, &b)));
    }
    let idx = CongruenceIndex::new(l);
    for x in 0..l.len() {
        for y in 0..l.len() {
            let want = common::principal(&brute, x, y);
            assert!(same_partition(&as_blocks(&principal_congruence(l, x, y)), &want));
            if l.le(x, y) {
                assert!(same_partition(&as_blocks(idx.cg(x, y)), &want));
            }
        }
    }
}

#[test]
fn small_lattices_match_partition_oracle() {
    for (name, l) in small_lattices() {
        eprintln!("{name}");
        check_against_oracle(&l);
    }
}

#[test]
fn known_congruence_counts() {
    assert_eq!(con_lattice(&common::m3()).unwrap().len(), 2);
    assert_eq!(con_lattice(&common::n5()).unwrap().len(), 5);
    assert_eq!(con_lattice(&Lattice::from_poset(chain(4)).unwrap()).unwrap().len(), 8);
    assert!(is_simple(&common::m3()));
    assert!(!is_simple(&common::n5()));
}

#[test]
fn n5_principal_poset() {
    // Δ, cg(a,b), cg(0,a), cg(0,c) and ∇
    assert_eq!(princ_poset(&common::n5()).len(), 5);
}

#[test]
fn quotient_by_principal() {
    let l = common::n5();
    let (a, b) = (l.index("a").unwrap(), l.index("b").unwrap());
    let theta = principal_congruence(&l, a, b);
    let (q, proj) = quotient_lattice(&l, &theta).unwrap();
    assert_eq!(q.len(), 4);
    // blocks are named by their least element
    assert_eq!(q.label(proj[b]), "a");
    check_homomorphism(&l, &q, &proj).unwrap();
}

#[test]
fn non_congruence_rejected() {
    let l = common::n5();
    let (a, c) = (l.index("a").unwrap(), l.index("c").unwrap());
    let bad = Congruence::from_blocks(l.len(), &[vec![a, c]]);
    assert!(bad.check_compatible(&l).is_err());
    assert!(quotient_lattice(&l, &bad).is_err());
}

#[test]
fn homomorphism_check_and_princ_map() {
    // 3-chain onto the left side of the diamond
    let c3 = Lattice::from_poset(chain(3)).unwrap();
    let d = Lattice::from_poset(diamond()).unwrap();
    let map: Vec<usize> = (0..c3.len())
        .map(|x| {
            let to = match c3.label(x) {
                "m" => "a",
                s => s,
            };
            d.index(to).unwrap()
        })
        .collect();
    check_homomorphism(&c3, &d, &map).unwrap();
    let (i1, i2) = (CongruenceIndex::new(&c3), CongruenceIndex::new(&d));
    let pm = princ_map(&c3, &i1, &i2, &map).unwrap();
    let z = c3.bottom();
    assert!(i2.congruences()[pm[i1.id(z, z)]].is_delta());
    assert!(check_homomorphism(&c3, &d, &[d.bottom(); 3]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn generated_lattices_match_oracle(gens in proptest::collection::vec(0u8..16, 0..4)) {
        let l = common::set_lattice(&gens);
        prop_assume!(l.len() <= 9);
        check_against_oracle(&l);
    }

    #[test]
    fn index_matches_saturation(gens in proptest::collection::vec(0u8..16, 0..8)) {
        let l = common::set_lattice(&gens);
        let idx = CongruenceIndex::new(&l);
        for x in 0..l.len() {
            for y in l.up_set(x).ones() {
                prop_assert_eq!(idx.cg(x, y), &principal_congruence(&l, x, y));
            }
        }
    }

    #[test]
    fn congruence_join_meet_are_bounds(gens in proptest::collection::vec(0u8..16, 0..6), i in 0usize..64, j in 0usize..64) {
        let l = common::set_lattice(&gens);
        let con = con_lattice(&l).unwrap();
        let (a, b) = (&con[i % con.len()], &con[j % con.len()]);
        let (jn, mt) = (a.join(b), a.meet(b));
        prop_assert!(a.le(&jn) && b.le(&jn));
        prop_assert!(mt.le(a) && mt.le(b));
        prop_assert!(jn.check_compatible(&l).is_ok());
    }
}
