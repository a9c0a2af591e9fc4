//! Brute-force oracles. They only read the order relation `le` and never
//! call the library's own join/meet tables or congruence machinery.
#![allow(dead_code)]

use princlift::order::{Lattice, Poset};

/// Least upper bound by scanning all upper bounds.
pub fn lub(p: &Poset, x: usize, y: usize) -> Option<usize> {
    let ub: Vec<usize> = (0..p.len()).filter(|&u| p.le(x, u) && p.le(y, u)).collect();
    ub.iter().copied().find(|&u| ub.iter().all(|&v| p.le(u, v)))
}

pub fn glb(p: &Poset, x: usize, y: usize) -> Option<usize> {
    let lb: Vec<usize> = (0..p.len()).filter(|&u| p.le(u, x) && p.le(u, y)).collect();
    lb.iter().copied().find(|&u| lb.iter().all(|&v| p.le(v, u)))
}

/// Longest chain minus one, by dynamic programming over `le`.
pub fn length(p: &Poset) -> usize {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (0..n).filter(|&y| p.le(y, x)).count());
    let mut best = vec![0usize; n];
    for (k, &x) in order.iter().enumerate() {
        for &y in &order[..k] {
            if y != x && p.le(y, x) {
                best[x] = best[x].max(best[y] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Tables of join and meet from the order alone.
pub fn tables(p: &Poset) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = p.len();
    let j = (0..n).map(|x| (0..n).map(|y| lub(p, x, y).expect("lub")).collect()).collect();
    let m = (0..n).map(|x| (0..n).map(|y| glb(p, x, y).expect("glb")).collect()).collect();
    (j, m)
}

/// Every partition of `0..n`, as block index per element.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            rec(i + 1, n, cur, max.max(b), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![vec![]];
    }
    let mut cur = vec![0];
    rec(1, n, &mut cur, 0, &mut out);
    out
}

/// All congruences of `l` as block-index vectors, found by testing every
/// partition for substitution with joins and meets.
pub fn congruences(l: &Lattice) -> Vec<Vec<usize>> {
    let (j, m) = tables(l.poset());
    let n = l.len();
    partitions(n)
        .into_iter()
        .filter(|b| {
            (0..n).all(|x| {
                (0..n).all(|y| {
                    b[x] != b[y] || (0..n).all(|z| b[j[x][z]] == b[j[y][z]] && b[m[x][z]] == b[m[y][z]])
                })
            })
        })
        .collect()
}

/// Whether partition `a` refines `b`.
pub fn refines(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|x| (0..a.len()).all(|y| a[x] != a[y] || b[x] == b[y]))
}

/// Smallest congruence collapsing `x` and `y`.
pub fn principal(congs: &[Vec<usize>], x: usize, y: usize) -> Vec<usize> {
    let holding: Vec<&Vec<usize>> = congs.iter().filter(|b| b[x] == b[y]).collect();
    holding
        .iter()
        .find(|b| holding.iter().all(|c| refines(b, c)))
        .map(|b| b.to_vec())
        .expect("congruences are closed under intersection")
}

/// Lattice of subsets of a 4-element set generated by `gens`, with ∅ and
/// the full set added. Labels are the bitmasks.
pub fn set_lattice(gens: &[u8]) -> Lattice {
    let mut set: std::collections::BTreeSet<u8> = gens.iter().map(|g| g & 15).collect();
    set.insert(0);
    set.insert(15);
    loop {
        let v: Vec<u8> = set.iter().copied().collect();
        let before = set.len();
        for &a in &v {
            for &b in &v {
                set.insert(a | b);
                set.insert(a & b);
            }
        }
        if set.len() == before {
            break;
        }
    }
    let labels: Vec<String> = set.iter().map(|s| format!("s{s}")).collect();
    let v: Vec<u8> = set.iter().copied().collect();
    let mut le = Vec::new();
    for &a in &v {
        for &b in &v {
            if a != b && a & b == a {
                le.push((format!("s{a}"), format!("s{b}")));
            }
        }
    }
    Lattice::from_poset(Poset::new(&labels, &le).unwrap()).unwrap()
}

/// Same labeled lattice from a list of covers.
pub fn lattice(elements: &[&str], covers: &[(&str, &str)]) -> Lattice {
    Lattice::from_covers(elements, covers).unwrap()
}

pub fn m3() -> Lattice {
    lattice(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
}

pub fn n5() -> Lattice {
    lattice(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
}

use princlift::gadget::{build_gadget, glue_unverified, rename_boundary, Gadget, Orientation};
use princlift::labels::{anchor_a, anchor_b, ONE_PRIME};
use princlift::nlattice::{build_frame_minus, default_mnh, ColorUniverse};

/// Colors z1, z2 (in Z), p, q, u (in U) with one gadget of each rank.
pub fn glue_universe() -> ColorUniverse {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let pair = |a: &str, b: &str| (a.to_string(), b.to_string());
    ColorUniverse {
        colors: s(&["z1", "z2", "p", "q", "u"]),
        z: s(&["z1", "z2"]).into_iter().collect(),
        u: s(&["u"]).into_iter().collect(),
        i: [pair("p", "q"), pair("z1", "p"), pair("z1", "z2")].into_iter().collect(),
        j: [pair("p", "q")].into_iter().collect(),
    }
}

/// Every gluing step of the construction for [`glue_universe`]: the host
/// before the step and the gadget glued in.
pub fn glue_fixtures() -> Vec<(String, Lattice, Gadget)> {
    let u = glue_universe();
    let mnh = default_mnh();
    let mut host = build_frame_minus(&u, &mnh).unwrap().lattice;
    let rename = [
        (anchor_a(ONE_PRIME), mnh.lattice.label(mnh.a1).to_string()),
        (anchor_b(ONE_PRIME), mnh.lattice.label(mnh.b1).to_string()),
    ]
    .into_iter()
    .collect();
    let mut gadgets = Vec::new();
    for o in [Orientation::Up, Orientation::Dn] {
        gadgets.push((format!("U gadget {o}"), rename_boundary(&build_gadget(2, o, ONE_PRIME, "u").unwrap(), &rename)));
    }
    for ((p, q), o) in u.steps() {
        let rank = u.rank(&p, &q);
        gadgets.push((format!("({p},{q}) rank {rank} {o}"), build_gadget(rank, o, &p, &q).unwrap()));
    }
    let mut out = Vec::new();
    for (name, g) in gadgets {
        let next = glue_unverified(&host, &g).unwrap().lattice;
        out.push((name, host, g));
        host = next;
    }
    out
}

/// Element `<a,p>` / `<b,p>` indices of a color, for tests.
pub fn anchors(l: &Lattice, p: &str) -> (usize, usize) {
    let a = l.index(&anchor_a(p)).unwrap();
    (a, l.index(&anchor_b(p)).unwrap_or(a))
}

fn merge(b: &mut [usize], x: usize, y: usize) -> bool {
    let (from, to) = (b[x].max(b[y]), b[x].min(b[y]));
    if from == to {
        return false;
    }
    for v in b.iter_mut() {
        if *v == from {
            *v = to;
        }
    }
    true
}

/// Congruence generated by the given pairs, by saturating a partition until
/// it is stable under joining and meeting with every element. Blocks are
/// labeled by their least member.
pub fn saturate(p: &Poset, tables: &(Vec<Vec<usize>>, Vec<Vec<usize>>), pairs: &[(usize, usize)]) -> Vec<usize> {
    let n = p.len();
    let (j, m) = tables;
    let mut b: Vec<usize> = (0..n).collect();
    for &(x, y) in pairs {
        merge(&mut b, x, y);
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in x + 1..n {
                if b[x] != b[y] {
                    continue;
                }
                for z in 0..n {
                    changed |= merge(&mut b, j[x][z], j[y][z]);
                    changed |= merge(&mut b, m[x][z], m[y][z]);
                }
            }
        }
        if !changed {
            return b;
        }
    }
}

/// All congruences as joins of the cover congruences; works for lattices
/// too large for partition enumeration.
pub fn congruences_by_covers(l: &Lattice) -> Vec<Vec<usize>> {
    let p = l.poset();
    let t = tables(p);
    let mut cover_congs: Vec<Vec<usize>> = p.covers().into_iter().map(|(a, b)| saturate(p, &t, &[(a, b)])).collect();
    cover_congs.sort();
    cover_congs.dedup();
    let delta: Vec<usize> = (0..l.len()).collect();
    let mut all = std::collections::BTreeSet::from([delta]);
    let mut frontier: Vec<Vec<usize>> = all.iter().cloned().collect();
    while let Some(c) = frontier.pop() {
        for k in &cover_congs {
            let mut joined = c.clone();
            for x in 0..l.len() {
                merge(&mut joined, x, k[x]);
            }
            // re-close transitively under the merged labels
            let pairs: Vec<(usize, usize)> = (0..l.len()).map(|x| (x, joined[x])).collect();
            let closed = saturate(p, &t, &pairs);
            if all.insert(closed.clone()) {
                frontier.push(closed);
            }
        }
    }
    all.into_iter().collect()
}
