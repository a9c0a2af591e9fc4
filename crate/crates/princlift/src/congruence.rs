//! Lattice congruences: generation, Con(L), Princ(L) and quotients.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::caps;
use crate::order::{Lattice, OrderError, Poset, QuasiOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("partition is not compatible: `{x}` ≡ `{y}` but not under the {op} with `{z}`")]
    Incompatible {
        x: String,
        y: String,
        z: String,
        op: &'static str,
    },
    #[error("partition covers {got} elements, lattice has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("map is not a {{0,1}}-lattice homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("princ map is not well defined: cg(`{0}`,`{1}`) and cg(`{2}`,`{3}`) agree but their images differ")]
    NotWellDefined(String, String, String, String),
}

/// A partition of `0..n`, stored as the least member of each element's block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    class: Vec<u32>,
}

impl Congruence {
    pub fn delta(n: usize) -> Self {
        Congruence {
            class: (0..n as u32).collect(),
        }
    }

    pub fn nabla(n: usize) -> Self {
        Congruence { class: vec![0; n] }
    }

    pub(crate) fn from_union_find(uf: &UnionFind<u32>, n: usize) -> Self {
        let mut least: HashMap<u32, u32> = HashMap::new();
        let mut class = Vec::with_capacity(n);
        for i in 0..n as u32 {
            let r = uf.find(i);
            class.push(*least.entry(r).or_insert(i));
        }
        Congruence { class }
    }

    /// Partition from explicit blocks; elements not mentioned are singletons.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut uf = UnionFind::new(n);
        for b in blocks {
            for w in b.windows(2) {
                uf.union(w[0] as u32, w[1] as u32);
            }
        }
        Self::from_union_find(&uf, n)
    }

    pub fn len(&self) -> usize {
        self.class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class.is_empty()
    }

    #[inline]
    pub fn same(&self, i: usize, j: usize) -> bool {
        self.class[i] == self.class[j]
    }

    /// Least index of the block containing `i`.
    pub fn rep(&self, i: usize) -> usize {
        self.class[i] as usize
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut by_rep: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (i, &r) in self.class.iter().enumerate() {
            by_rep[r as usize].push(i);
        }
        by_rep.into_iter().filter(|b| !b.is_empty()).collect()
    }

    pub fn block_count(&self) -> usize {
        self.class
            .iter()
            .enumerate()
            .filter(|&(i, &r)| i as u32 == r)
            .count()
    }

    pub fn is_delta(&self) -> bool {
        self.block_count() == self.len()
    }

    pub fn is_nabla(&self) -> bool {
        self.class.iter().all(|&r| r == 0)
    }

    /// Refinement: every block of `self` lies inside a block of `other`.
    pub fn le(&self, other: &Congruence) -> bool {
        self.class
            .iter()
            .enumerate()
            .all(|(i, &r)| other.same(i, r as usize))
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for i in 0..n {
            uf.union(i as u32, self.class[i]);
            uf.union(i as u32, other.class[i]);
        }
        Self::from_union_find(&uf, n)
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let class = (0..self.len())
            .map(|i| *ids.entry((self.class[i], other.class[i])).or_insert(i as u32))
            .collect();
        Congruence { class }
    }

    /// Checks compatibility with join and meet of `l`.
    pub fn check_compatible(&self, l: &Lattice) -> Result<(), CongruenceError> {
        if self.len() != l.len() {
            return Err(CongruenceError::SizeMismatch {
                expected: l.len(),
                got: self.len(),
            });
        }
        for x in 0..l.len() {
            let y = self.rep(x);
            if x == y {
                continue;
            }
            for z in 0..l.len() {
                for (op, u, v) in [
                    ("join", l.join(x, z), l.join(y, z)),
                    ("meet", l.meet(x, z), l.meet(y, z)),
                ] {
                    if !self.same(u, v) {
                        return Err(CongruenceError::Incompatible {
                            x: l.label(x).into(),
                            y: l.label(y).into(),
                            z: l.label(z).into(),
                            op,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Blocks as sorted label lists, sorted.
    pub fn label_blocks(&self, l: &QuasiOrder) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .blocks()
            .into_iter()
            .map(|b| {
                let mut v: Vec<String> = b.into_iter().map(|i| l.label(i).to_string()).collect();
                v.sort();
                v
            })
            .collect();
        out.sort();
        out
    }
}

/// Smallest congruence collapsing `a` and `b`, by union-find saturation.
pub fn principal_congruence(l: &Lattice, a: usize, b: usize) -> Congruence {
    generated_congruence(l, &[(a, b)])
}

/// Smallest congruence collapsing every given pair.
pub fn generated_congruence(l: &Lattice, pairs: &[(usize, usize)]) -> Congruence {
    let n = l.len();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a as u32, b as u32) {
            work.push((a, b));
        }
    }
    while let Some((x, y)) = work.pop() {
        for z in 0..n {
            for (u, v) in [(l.join(x, z), l.join(y, z)), (l.meet(x, z), l.meet(y, z))] {
                if uf.union(u as u32, v as u32) {
                    work.push((u, v));
                }
            }
        }
    }
    Congruence::from_union_find(&uf, n)
}

/// The covering pairs along one maximal chain from `p` up to `q`.
pub fn chain_covers(l: &Poset, p: usize, q: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut cur = p;
    while cur != q {
        let next = *l
            .upper_covers(cur)
            .iter()
            .find(|&&c| l.le(c, q))
            .expect("q is above cur");
        out.push((cur, next));
        cur = next;
    }
    out
}

/// Principal congruences of every pair, computed once.
///
/// A cover `a ≺ b` forces, for every `z`, the covers of one maximal chain in
/// `[a∨z, b∨z]` and in `[a∧z, b∧z]`. The covers reachable from `a ≺ b` in that
/// forcing graph generate cg(a,b), and cg(x,y) is the join of the cover
/// congruences along any maximal chain of `[x∧y, x∨y]`.
#[derive(Clone, Debug)]
pub struct CongruenceIndex {
    n: usize,
    congs: Vec<Congruence>,
    pair: Vec<u32>,
    witness: Vec<(usize, usize)>,
}

impl CongruenceIndex {
    pub fn new(l: &Lattice) -> Self {
        let n = l.len();
        let covers = l.covers();
        let cover_id: HashMap<(usize, usize), usize> =
            covers.iter().enumerate().map(|(k, &c)| (c, k)).collect();

        let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(covers.len(), 0);
        let nodes: Vec<_> = covers.iter().map(|_| graph.add_node(())).collect();
        let mut seen = FixedBitSet::with_capacity(covers.len());
        for (k, &(a, b)) in covers.iter().enumerate() {
            seen.clear();
            for z in 0..n {
                for (p, q) in [(l.join(a, z), l.join(b, z)), (l.meet(a, z), l.meet(b, z))] {
                    if p == q {
                        continue;
                    }
                    for c in chain_covers(l, p, q) {
                        let t = cover_id[&c];
                        if t != k && !seen.put(t) {
                            graph.add_edge(nodes[k], nodes[t], ());
                        }
                    }
                }
            }
        }

        // tarjan_scc yields components in reverse topological order
        let sccs = tarjan_scc(&graph);
        let mut scc_of = vec![0usize; covers.len()];
        for (s, comp) in sccs.iter().enumerate() {
            for v in comp {
                scc_of[v.index()] = s;
            }
        }
        let mut reach: Vec<FixedBitSet> = Vec::with_capacity(sccs.len());
        for comp in &sccs {
            let mut r = FixedBitSet::with_capacity(covers.len());
            for v in comp {
                r.insert(v.index());
                for w in graph.neighbors(*v) {
                    let s = scc_of[w.index()];
                    if s < reach.len() {
                        r.union_with(&reach[s]);
                    }
                }
            }
            reach.push(r);
        }

        let mut congs = vec![Congruence::delta(n)];
        let mut lookup: HashMap<Congruence, u32> = HashMap::new();
        lookup.insert(congs[0].clone(), 0);
        let mut intern = |c: Congruence, congs: &mut Vec<Congruence>| -> u32 {
            *lookup.entry(c).or_insert_with_key(|c| {
                congs.push(c.clone());
                (congs.len() - 1) as u32
            })
        };
        let mut scc_cong = vec![0u32; sccs.len()];
        for (s, r) in reach.iter().enumerate() {
            let mut uf = UnionFind::new(n);
            for k in r.ones() {
                uf.union(covers[k].0 as u32, covers[k].1 as u32);
            }
            scc_cong[s] = intern(Congruence::from_union_find(&uf, n), &mut congs);
        }
        let cover_cong: Vec<u32> = (0..covers.len()).map(|k| scc_cong[scc_of[k]]).collect();

        let mut memo: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut pair = vec![0u32; n * n];
        for x in 0..n {
            for y in x..n {
                let (p, q) = (l.meet(x, y), l.join(x, y));
                let id = if p == q {
                    0
                } else {
                    let mut key: Vec<u32> = chain_covers(l, p, q)
                        .into_iter()
                        .map(|c| cover_cong[cover_id[&c]])
                        .collect();
                    key.sort_unstable();
                    key.dedup();
                    if key.len() == 1 {
                        key[0]
                    } else if let Some(&id) = memo.get(&key) {
                        id
                    } else {
                        let mut acc = congs[key[0] as usize].clone();
                        for &k in &key[1..] {
                            acc = acc.join(&congs[k as usize]);
                        }
                        let id = intern(acc, &mut congs);
                        memo.insert(key, id);
                        id
                    }
                };
                pair[x * n + y] = id;
                pair[y * n + x] = id;
            }
        }

        // witness: lexicographically least label pair x ≤ y per congruence
        let mut witness: Vec<Option<(usize, usize)>> = vec![None; congs.len()];
        for x in 0..n {
            for y in l.up_set(x).ones() {
                let id = pair[x * n + y] as usize;
                let better = match witness[id] {
                    None => true,
                    Some((a, b)) => (l.label(x), l.label(y)) < (l.label(a), l.label(b)),
                };
                if better {
                    witness[id] = Some((x, y));
                }
            }
        }
        CongruenceIndex {
            n,
            congs,
            pair,
            witness: witness.into_iter().map(|w| w.expect("every class has a pair")).collect(),
        }
    }

    /// Id of cg(x, y) among [`Self::congruences`].
    #[inline]
    pub fn id(&self, x: usize, y: usize) -> usize {
        self.pair[x * self.n + y] as usize
    }

    pub fn cg(&self, x: usize, y: usize) -> &Congruence {
        &self.congs[self.id(x, y)]
    }

    /// The distinct principal congruences; index 0 is Δ.
    pub fn congruences(&self) -> &[Congruence] {
        &self.congs
    }

    /// A generating pair of each principal congruence.
    pub fn witness(&self, id: usize) -> (usize, usize) {
        self.witness[id]
    }

    /// Id of a congruence if it is principal.
    pub fn find(&self, c: &Congruence) -> Option<usize> {
        self.congs.iter().position(|d| d == c)
    }
}

/// Principal congruences ordered by inclusion.
#[derive(Clone, Debug)]
pub struct PrincPoset {
    pub congruences: Vec<Congruence>,
    pub witnesses: Vec<(usize, usize)>,
    /// labels are `cg(x,y)` over a witness pair
    pub order: Poset,
}

impl PrincPoset {
    pub fn from_index(l: &Lattice, idx: &CongruenceIndex) -> Self {
        let congs = idx.congruences().to_vec();
        let witnesses: Vec<_> = (0..congs.len()).map(|i| idx.witness(i)).collect();
        let labels: Vec<String> = witnesses
            .iter()
            .map(|&(x, y)| format!("cg({},{})", l.label(x), l.label(y)))
            .collect();
        let mut seed = Vec::new();
        for (i, a) in congs.iter().enumerate() {
            for (j, b) in congs.iter().enumerate() {
                if i != j && a.le(b) {
                    seed.push((labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let order = Poset::new(&labels, &seed).expect("inclusion is a partial order");
        PrincPoset {
            congruences: congs,
            witnesses,
            order,
        }
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }
}

pub fn princ_poset(l: &Lattice) -> PrincPoset {
    PrincPoset::from_index(l, &CongruenceIndex::new(l))
}

/// Every congruence of `l`: Δ plus the join-closure of the cover congruences.
pub fn con_lattice(l: &Lattice) -> Result<Vec<Congruence>, CongruenceError> {
    let cap = caps::con_cap();
    if l.len() > cap {
        return Err(OrderError::TooLarge {
            what: "congruence lattice input",
            size: l.len(),
            cap,
        }
        .into());
    }
    let mut all = vec![Congruence::delta(l.len())];
    for (a, b) in l.covers() {
        let c = principal_congruence(l, a, b);
        if !all.contains(&c) {
            all.push(c);
        }
    }
    let mut i = 0;
    while i < all.len() {
        for j in 0..i {
            let c = all[i].join(&all[j]);
            if !all.contains(&c) {
                all.push(c);
            }
        }
        i += 1;
    }
    all.sort();
    Ok(all)
}

pub fn is_simple(l: &Lattice) -> bool {
    l.covers()
        .into_iter()
        .all(|(a, b)| principal_congruence(l, a, b).is_nabla())
}

/// Quotient lattice and projection; each block is named by its least element.
pub fn quotient_lattice(
    l: &Lattice,
    theta: &Congruence,
) -> Result<(Lattice, Vec<usize>), CongruenceError> {
    theta.check_compatible(l)?;
    let blocks = theta.blocks();
    let least: Vec<usize> = blocks
        .iter()
        .map(|b| b.iter().copied().fold(b[0], |m, x| l.meet(m, x)))
        .collect();
    let mut block_of = vec![0usize; l.len()];
    for (k, b) in blocks.iter().enumerate() {
        for &x in b {
            block_of[x] = k;
        }
    }
    let labels: Vec<String> = least.iter().map(|&x| l.label(x).to_string()).collect();
    let mut seed = Vec::new();
    for (i, &x) in least.iter().enumerate() {
        for (j, &y) in least.iter().enumerate() {
            if i != j && theta.same(l.meet(x, y), x) {
                seed.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    let q = Lattice::from_poset(Poset::new(&labels, &seed)?)?;
    let proj = block_of
        .into_iter()
        .map(|k| q.index(&labels[k]).expect("label present"))
        .collect();
    Ok((q, proj))
}

/// Checks that `map` is a {0,1}-preserving lattice homomorphism `l1 → l2`.
pub fn check_homomorphism(l1: &Lattice, l2: &Lattice, map: &[usize]) -> Result<(), CongruenceError> {
    let bad = |m: String| Err(CongruenceError::NotHomomorphism(m));
    if map.len() != l1.len() || map.iter().any(|&y| y >= l2.len()) {
        return bad("map does not send every element into the codomain".into());
    }
    if map[l1.bottom()] != l2.bottom() {
        return bad("0 is not preserved".into());
    }
    if map[l1.top()] != l2.top() {
        return bad("1 is not preserved".into());
    }
    for x in 0..l1.len() {
        for y in x + 1..l1.len() {
            if map[l1.join(x, y)] != l2.join(map[x], map[y]) {
                return bad(format!("join of `{}` and `{}`", l1.label(x), l1.label(y)));
            }
            if map[l1.meet(x, y)] != l2.meet(map[x], map[y]) {
                return bad(format!("meet of `{}` and `{}`", l1.label(x), l1.label(y)));
            }
        }
    }
    Ok(())
}

/// Princ(f): cg(x,y) ↦ cg(f(x),f(y)), as a map between congruence ids.
///
/// Well-definedness is checked on every comparable pair.
pub fn princ_map(
    l1: &Lattice,
    idx1: &CongruenceIndex,
    idx2: &CongruenceIndex,
    map: &[usize],
) -> Result<Vec<usize>, CongruenceError> {
    let k = idx1.congruences().len();
    let mut out: Vec<Option<(usize, (usize, usize))>> = vec![None; k];
    for x in 0..l1.len() {
        for y in l1.up_set(x).ones() {
            let a = idx1.id(x, y);
            let b = idx2.id(map[x], map[y]);
            match out[a] {
                None => out[a] = Some((b, (x, y))),
                Some((b0, (x0, y0))) if b0 != b => {
                    return Err(CongruenceError::NotWellDefined(
                        l1.label(x0).into(),
                        l1.label(y0).into(),
                        l1.label(x).into(),
                        l1.label(y).into(),
                    ))
                }
                _ => {}
            }
        }
    }
    Ok(out.into_iter().map(|o| o.expect("principal").0).collect())
}
