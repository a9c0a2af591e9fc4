//! Small named inputs shared by the suite, the tests and the CLI.

use std::collections::BTreeSet;

use crate::cometic::{build_example_category, Category, Morphism, Object};
use crate::lift::PosetFunctor;
use crate::order::{Poset, QuasiOrder};

fn poset(elements: &[&str], le: &[(&str, &str)]) -> Poset {
    Poset::new(elements, le).expect("fixture is a poset")
}

fn quasiorder(elements: &[&str], le: &[(&str, &str)]) -> QuasiOrder {
    QuasiOrder::closure(elements, le).expect("fixture is a quasiorder")
}

/// `0 < 1`, `0 < m < 1`, `0 < m1 < m2 < 1`, ...
pub fn chain(n: usize) -> Poset {
    assert!(n >= 1);
    let mut els: Vec<String> = vec!["0".into()];
    match n {
        1 => {}
        2 => els.push("1".into()),
        3 => els.extend(["m".into(), "1".into()]),
        _ => {
            els.extend((1..n - 1).map(|i| format!("m{i}")));
            els.push("1".into());
        }
    }
    let le: Vec<(String, String)> = els.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    Poset::new(&els, &le).expect("chain")
}

/// `2 × 2`: `0 < a, b < 1`.
pub fn diamond() -> Poset {
    poset(
        &["0", "a", "b", "1"],
        &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )
}

/// One representative of each bounded poset with 2 to 4 elements.
pub fn small_bounded_posets() -> Vec<(String, Poset)> {
    vec![
        ("chain2".into(), chain(2)),
        ("chain3".into(), chain(3)),
        ("chain4".into(), chain(4)),
        ("diamond".into(), diamond()),
    ]
}

/// Bounded quasiorders that are not posets.
pub fn two_cycle_quasiorders() -> Vec<(String, QuasiOrder)> {
    vec![
        (
            "middle-pair".into(),
            quasiorder(
                &["0", "a", "b", "1"],
                &[("0", "a"), ("a", "b"), ("b", "a"), ("b", "1")],
            ),
        ),
        (
            "pair-beside-point".into(),
            quasiorder(
                &["0", "a", "b", "c", "1"],
                &[("0", "a"), ("a", "b"), ("b", "a"), ("b", "1"), ("0", "c"), ("c", "1")],
            ),
        ),
        (
            "two-tops".into(),
            quasiorder(&["0", "m", "1", "t"], &[("0", "m"), ("m", "1"), ("1", "t"), ("t", "1")]),
        ),
        (
            "two-bottoms".into(),
            quasiorder(&["0", "z", "m", "1"], &[("0", "z"), ("z", "0"), ("0", "m"), ("m", "1")]),
        ),
    ]
}

fn object(name: &str, els: &[&str]) -> Object {
    Object::new(name, els.iter().map(|s| s.to_string()).collect()).expect("fixture object")
}

fn morphism(name: &str, src: usize, dst: usize, map: &[usize]) -> Morphism {
    Morphism {
        name: name.into(),
        src,
        dst,
        map: map.to_vec(),
    }
}

/// Two objects and their identities.
pub fn discrete_category() -> Category {
    Category::new(
        vec![object("X", &["x1", "x2"]), object("Y", &["y"])],
        vec![morphism("1_X", 0, 0, &[0, 1]), morphism("1_Y", 1, 1, &[0])],
    )
    .expect("fixture")
}

/// `f: X → Y` collapses X, yet is mono since nothing else reaches X.
pub fn non_injective_mono_category() -> Category {
    Category::new(
        vec![object("X", &["x1", "x2"]), object("Y", &["y"])],
        vec![
            morphism("1_X", 0, 0, &[0, 1]),
            morphism("1_Y", 1, 1, &[0]),
            morphism("f", 0, 1, &[0, 0]),
        ],
    )
    .expect("fixture")
}

/// All maps among a 2-element and a 3-element set.
pub fn full_map_category() -> Category {
    let sizes = [("S", 2usize), ("T", 3usize)];
    let objects = sizes
        .iter()
        .map(|&(n, k)| {
            Object::new(n, (0..k).map(|i| format!("{}{i}", n.to_lowercase())).collect()).expect("fixture")
        })
        .collect();
    let mut morphisms = Vec::new();
    for (i, &(ni, ki)) in sizes.iter().enumerate() {
        for (j, &(nj, kj)) in sizes.iter().enumerate() {
            let total = kj.pow(ki as u32);
            for code in 0..total {
                let map: Vec<usize> = (0..ki).map(|x| code / kj.pow(x as u32) % kj).collect();
                let identity = i == j && map.iter().enumerate().all(|(x, &y)| x == y);
                let name = if identity { format!("1_{ni}") } else { format!("{ni}->{nj}#{code}") };
                morphisms.push(morphism(&name, i, j, &map));
            }
        }
    }
    Category::new(objects, morphisms).expect("fixture")
}

/// D1 = {2-chain}, D2 = {3-chain}: the two maps 3 → 2 are non-injective monos.
pub fn example_category() -> Category {
    build_example_category(&[("two".into(), chain(2))], &[("three".into(), chain(3))])
        .expect("fixture")
}

pub fn example_functor() -> (Category, PosetFunctor) {
    let c = example_category();
    let f = PosetFunctor::inclusion(&c, vec![chain(2), chain(3)]);
    (c, f)
}

/// The automorphism group of the diamond.
pub fn automorphism_category() -> Category {
    build_example_category(&[("D".into(), diamond())], &[]).expect("fixture")
}

pub fn automorphism_functor() -> (Category, PosetFunctor) {
    let c = automorphism_category();
    let f = PosetFunctor::inclusion(&c, vec![diamond()]);
    (c, f)
}

/// The chain A ≤ B ≤ C as a category, each object being its down-set.
pub fn categorified_chain() -> Category {
    Category::new(
        vec![
            object("A", &["A"]),
            object("B", &["A", "B"]),
            object("C", &["A", "B", "C"]),
        ],
        vec![
            morphism("1_A", 0, 0, &[0]),
            morphism("1_B", 1, 1, &[0, 1]),
            morphism("1_C", 2, 2, &[0, 1, 2]),
            morphism("A<B", 0, 1, &[0]),
            morphism("B<C", 1, 2, &[0, 1]),
            morphism("A<C", 0, 2, &[0]),
        ],
    )
    .expect("fixture")
}

/// A ↦ 2-chain, B ↦ 3-chain, C ↦ 4-chain with the evident embeddings.
pub fn categorified_chain_functor() -> (Category, PosetFunctor) {
    let c = categorified_chain();
    let posets = vec![chain(2), chain(3), chain(4)];
    let maps = vec![
        vec![0, 1],
        vec![0, 1, 2],
        vec![0, 1, 2, 3],
        vec![0, 2],
        vec![0, 1, 3],
        vec![0, 3],
    ];
    (c, PosetFunctor { posets, maps })
}

/// The single-object category with its identity, over the 2-chain.
pub fn trivial_functor() -> (Category, PosetFunctor) {
    let c = Category::new(vec![object("X", &["0", "1"])], vec![morphism("1_X", 0, 0, &[0, 1])])
        .expect("fixture");
    let f = PosetFunctor::inclusion(&c, vec![chain(2)]);
    (c, f)
}

/// Named categories for the cometic checks.
pub fn cometic_categories() -> Vec<(String, Category)> {
    vec![
        ("discrete".into(), discrete_category()),
        ("non-injective-mono".into(), non_injective_mono_category()),
        ("full-maps".into(), full_map_category()),
        ("example".into(), example_category()),
        ("automorphisms".into(), automorphism_category()),
        ("categorified-chain".into(), categorified_chain()),
    ]
}

/// Named categories with poset functors for the lifting checks.
pub fn lifting_inputs() -> Vec<(String, Category, PosetFunctor)> {
    [
        ("categorified-chain", categorified_chain_functor()),
        ("automorphisms", automorphism_functor()),
        ("example", example_functor()),
    ]
    .into_iter()
    .map(|(n, (c, f))| (n.to_string(), c, f))
    .collect()
}

/// Every bounded quasiorder on `n` elements, one per isomorphism class,
/// on the labels `h0..h{n-1}`. Meant for n ≤ 4.
pub fn bounded_quasiorders(n: usize) -> Vec<QuasiOrder> {
    let labels: Vec<String> = (0..n).map(|i| format!("h{i}")).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|(a, b)| a != b)
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0u64..(1 << pairs.len()) {
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for (k, &(a, b)) in pairs.iter().enumerate() {
            le[a][b] = bits >> k & 1 == 1;
        }
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le[a][b] && le[b][c]) || le[a][c])));
        let bounded = (0..n).any(|z| (0..n).all(|y| le[z][y])) && (0..n).any(|u| (0..n).all(|y| le[y][u]));
        if !transitive || !bounded {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut rel: Vec<(usize, usize)> = pairs
                    .iter()
                    .filter(|&&(a, b)| le[a][b])
                    .map(|&(a, b)| (p[a], p[b]))
                    .collect();
                rel.sort();
                rel
            })
            .min()
            .expect("at least one permutation");
        if !seen.insert(canon) {
            continue;
        }
        let seed: Vec<(String, String)> = pairs
            .iter()
            .filter(|&&(a, b)| le[a][b])
            .map(|&(a, b)| (labels[a].clone(), labels[b].clone()))
            .collect();
        out.push(QuasiOrder::closure(&labels, &seed).expect("closed relation"));
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
