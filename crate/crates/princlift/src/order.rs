//! Quasiorders, posets and finite lattices over labeled carriers.
//!
//! Relations are stored as one up-set bitset per element (plus the mirrored
//! down-sets), so closure and most relational queries run in O(n²/w).

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::caps;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("relation is not antisymmetric: `{0}` and `{1}` are mutually related")]
    NotAntisymmetric(String, String),
    #[error("`{0}` and `{1}` have no least upper bound")]
    NoJoin(String, String),
    #[error("`{0}` and `{1}` have no greatest lower bound")]
    NoMeet(String, String),
    #[error("order is not bounded with 0 != 1")]
    NotBounded,
    #[error("{what} has {size} elements, above the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>, OrderError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(OrderError::DuplicateElement(l.clone()));
        }
    }
    Ok(index)
}

/// Warshall closure on up-set rows; reflexivity is added first.
fn close(up: &mut [FixedBitSet]) {
    let n = up.len();
    for (i, row) in up.iter_mut().enumerate() {
        row.insert(i);
    }
    for k in 0..n {
        let row_k = up[k].clone();
        for row in up.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
}

fn transpose(up: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = up.len();
    let mut down = vec![FixedBitSet::with_capacity(n); n];
    for (i, row) in up.iter().enumerate() {
        for j in row.ones() {
            down[j].insert(i);
        }
    }
    down
}

/// A reflexive, transitive relation on a labeled carrier.
#[derive(Clone, Debug)]
pub struct QuasiOrder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl PartialEq for QuasiOrder {
    fn eq(&self, other: &Self) -> bool {
        self.labels.len() == other.labels.len()
            && self.labels.iter().enumerate().all(|(i, l)| match other.index(l) {
                None => false,
                Some(oi) => self.up[i]
                    .ones()
                    .all(|j| other.le(oi, other.index(&self.labels[j]).unwrap()))
                    && self.up[i].count_ones(..) == other.up[oi].count_ones(..),
            })
    }
}

impl Eq for QuasiOrder {}

impl QuasiOrder {
    /// The least quasiorder on `carrier` containing `seed`.
    pub fn closure<S: AsRef<str>>(carrier: &[S], seed: &[(S, S)]) -> Result<Self, OrderError> {
        let labels: Vec<String> = carrier.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (a, b) in seed {
            let i = *index
                .get(a.as_ref())
                .ok_or_else(|| OrderError::UnknownElement(a.as_ref().into()))?;
            let j = *index
                .get(b.as_ref())
                .ok_or_else(|| OrderError::UnknownElement(b.as_ref().into()))?;
            up[i].insert(j);
        }
        Ok(Self::from_rows(labels, index, up))
    }

    /// Closes the given up-set rows.
    pub fn from_up_sets(labels: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self, OrderError> {
        let index = index_labels(&labels)?;
        Ok(Self::from_rows(labels, index, up))
    }

    fn from_rows(labels: Vec<String>, index: HashMap<String, usize>, mut up: Vec<FixedBitSet>) -> Self {
        let n = labels.len();
        for row in up.iter_mut() {
            row.grow(n);
        }
        close(&mut up);
        let down = transpose(&up);
        QuasiOrder {
            labels,
            index,
            up,
            down,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize, OrderError> {
        self.index(label)
            .ok_or_else(|| OrderError::UnknownElement(label.to_string()))
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    /// All related pairs `(i, j)` with `i ≤ j`, in index order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.up[i].ones().map(move |j| (i, j)))
            .collect()
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.le(i, j) && self.le(j, i)
    }

    /// First mutually related pair of distinct elements, if any.
    pub fn antisymmetry_witness(&self) -> Option<(usize, usize)> {
        (0..self.len()).find_map(|i| {
            self.up[i]
                .ones()
                .find(|&j| j != i && self.le(j, i))
                .map(|j| (i, j))
        })
    }

    /// Elements below everything.
    pub fn least_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.up[i].count_ones(..) == self.len())
            .collect()
    }

    /// Elements above everything.
    pub fn greatest_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.down[i].count_ones(..) == self.len())
            .collect()
    }

    /// Restriction to the elements in `keep` (in the given order).
    pub fn restrict(&self, keep: &[usize]) -> QuasiOrder {
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let n = keep.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.le(i, j) {
                    up[a].insert(b);
                }
            }
        }
        let index = index_labels(&labels).expect("restriction keeps labels unique");
        QuasiOrder::from_rows(labels, index, up)
    }

    /// The same carrier with every label passed through `f`.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<QuasiOrder, OrderError> {
        let labels: Vec<String> = self.labels.iter().map(|l| f(l)).collect();
        let index = index_labels(&labels)?;
        Ok(QuasiOrder {
            labels,
            index,
            up: self.up.clone(),
            down: self.down.clone(),
        })
    }

    pub fn into_poset(self) -> Result<Poset, OrderError> {
        if let Some((i, j)) = self.antisymmetry_witness() {
            return Err(OrderError::NotAntisymmetric(
                self.labels[i].clone(),
                self.labels[j].clone(),
            ));
        }
        Ok(Poset::from_quasiorder(self))
    }
}

/// Antisymmetric quasiorder, with precomputed covers and heights.
#[derive(Clone, Debug)]
pub struct Poset {
    q: QuasiOrder,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    // longest chain ending at the element
    height: Vec<usize>,
}

// label-level equality, independent of element positions
impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for Poset {}

impl std::ops::Deref for Poset {
    type Target = QuasiOrder;
    fn deref(&self) -> &QuasiOrder {
        &self.q
    }
}

impl Poset {
    pub fn new<S: AsRef<str>>(carrier: &[S], seed: &[(S, S)]) -> Result<Self, OrderError> {
        QuasiOrder::closure(carrier, seed)?.into_poset()
    }

    fn from_quasiorder(q: QuasiOrder) -> Self {
        let n = q.len();
        let mut by_size: Vec<usize> = (0..n).collect();
        by_size.sort_by_key(|&i| q.down[i].count_ones(..));
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        let mut height = vec![0; n];
        for &j in &by_size {
            // lower covers of j: maximal elements strictly below j
            let mut strict = q.down[j].clone();
            strict.set(j, false);
            let mut covered = FixedBitSet::with_capacity(n);
            let mut cands: Vec<usize> = strict.ones().collect();
            cands.sort_by_key(|&i| std::cmp::Reverse(q.down[i].count_ones(..)));
            for i in cands {
                if covered.contains(i) {
                    continue;
                }
                lower[j].push(i);
                upper[i].push(j);
                covered.union_with(&q.down[i]);
                height[j] = height[j].max(height[i] + 1);
            }
        }
        for v in lower.iter_mut().chain(upper.iter_mut()) {
            v.sort_unstable();
        }
        Poset {
            q,
            upper,
            lower,
            height,
        }
    }

    pub fn as_quasiorder(&self) -> &QuasiOrder {
        &self.q
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    /// Covering pairs `(lo, hi)` in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.upper[i].iter().map(move |&j| (i, j)))
            .collect()
    }

    pub fn height(&self, i: usize) -> usize {
        self.height[i]
    }

    pub fn bottom(&self) -> Option<usize> {
        self.q.least_elements().first().copied()
    }

    pub fn top(&self) -> Option<usize> {
        self.q.greatest_elements().first().copied()
    }

    pub fn is_bounded(&self) -> bool {
        self.len() >= 2 && self.bottom().is_some() && self.top().is_some()
    }

    /// Length of the longest chain in `[a, b]` (0 if `a = b`).
    ///
    /// Panics if `a ≰ b`.
    pub fn interval_length(&self, a: usize, b: usize) -> usize {
        assert!(self.le(a, b), "interval_length on incomparable pair");
        let mut inside: Vec<usize> = self.q.up[a].ones().filter(|&x| self.le(x, b)).collect();
        inside.sort_by_key(|&x| self.height[x]);
        let mut best: HashMap<usize, usize> = HashMap::with_capacity(inside.len());
        for &x in &inside {
            let d = self.lower[x]
                .iter()
                .filter_map(|y| best.get(y).map(|d| d + 1))
                .max()
                .unwrap_or(0);
            best.insert(x, if x == a { 0 } else { d });
        }
        best[&b]
    }

    /// Longest chain length of the whole poset.
    pub fn length(&self) -> usize {
        self.height.iter().copied().max().unwrap_or(0)
    }

    pub fn dual(&self) -> Poset {
        let q = QuasiOrder {
            labels: self.q.labels.clone(),
            index: self.q.index.clone(),
            up: self.q.down.clone(),
            down: self.q.up.clone(),
        };
        Poset::from_quasiorder(q)
    }

    pub fn restrict(&self, keep: &[usize]) -> Poset {
        Poset::from_quasiorder(self.q.restrict(keep))
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Poset, OrderError> {
        Ok(Poset {
            q: self.q.relabel(f)?,
            upper: self.upper.clone(),
            lower: self.lower.clone(),
            height: self.height.clone(),
        })
    }
}

/// Which bound is missing for a witness pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Missing {
    Join,
    Meet,
}

/// Least element of `set` w.r.t. `rows` (up-sets), if it exists.
fn least_in(set: &FixedBitSet, rows: &[FixedBitSet], sizes: &[usize]) -> Option<usize> {
    let best = set.ones().max_by_key(|&k| sizes[k])?;
    set.is_subset(&rows[best]).then_some(best)
}

/// `None` if `p` is a lattice order, otherwise a pair without join or meet.
pub fn lattice_witness(p: &Poset) -> Option<(usize, usize, Missing)> {
    tables(p).err()
}

#[allow(clippy::type_complexity)]
fn tables(p: &Poset) -> Result<(Vec<u32>, Vec<u32>), (usize, usize, Missing)> {
    let n = p.len();
    let up_sizes: Vec<usize> = (0..n).map(|i| p.q.up[i].count_ones(..)).collect();
    let down_sizes: Vec<usize> = (0..n).map(|i| p.q.down[i].count_ones(..)).collect();
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    let mut buf = FixedBitSet::with_capacity(n);
    for i in 0..n {
        for j in i..n {
            let (jn, mt) = if p.le(i, j) {
                (j, i)
            } else if p.le(j, i) {
                (i, j)
            } else {
                buf.clone_from(&p.q.up[i]);
                buf.intersect_with(&p.q.up[j]);
                let jn = least_in(&buf, &p.q.up, &up_sizes).ok_or((i, j, Missing::Join))?;
                buf.clone_from(&p.q.down[i]);
                buf.intersect_with(&p.q.down[j]);
                let mt = least_in(&buf, &p.q.down, &down_sizes).ok_or((i, j, Missing::Meet))?;
                (jn, mt)
            };
            join[i * n + j] = jn as u32;
            join[j * n + i] = jn as u32;
            meet[i * n + j] = mt as u32;
            meet[j * n + i] = mt as u32;
        }
    }
    Ok((join, meet))
}

/// A finite bounded lattice with join/meet tables.
#[derive(Clone, Debug)]
pub struct Lattice {
    order: Poset,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for Lattice {}

impl std::ops::Deref for Lattice {
    type Target = Poset;
    fn deref(&self) -> &Poset {
        &self.order
    }
}

impl Lattice {
    /// Computes join/meet tables by scanning bounds; fails with a witness pair.
    pub fn from_poset(p: Poset) -> Result<Self, OrderError> {
        if !p.is_bounded() {
            return Err(OrderError::NotBounded);
        }
        let cap = caps::max_elements();
        if p.len() > cap {
            return Err(OrderError::TooLarge {
                what: "lattice",
                size: p.len(),
                cap,
            });
        }
        let (join, meet) = tables(&p).map_err(|(i, j, m)| {
            let (a, b) = (p.label(i).to_string(), p.label(j).to_string());
            match m {
                Missing::Join => OrderError::NoJoin(a, b),
                Missing::Meet => OrderError::NoMeet(a, b),
            }
        })?;
        Ok(Self::assemble(p, join, meet))
    }

    /// Builds from tables the caller vouches for (used by gluing, which
    /// verifies the tables separately).
    pub(crate) fn from_trusted_tables(p: Poset, join: Vec<u32>, meet: Vec<u32>) -> Self {
        Self::assemble(p, join, meet)
    }

    fn assemble(p: Poset, join: Vec<u32>, meet: Vec<u32>) -> Self {
        let bottom = p.bottom().expect("bounded");
        let top = p.top().expect("bounded");
        Lattice {
            order: p,
            join,
            meet,
            bottom,
            top,
        }
    }

    /// Lattice from an element list and any generating set of the order.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], le: &[(S, S)]) -> Result<Self, OrderError> {
        Self::from_poset(Poset::new(elements, le)?)
    }

    pub fn poset(&self) -> &Poset {
        &self.order
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j] as usize
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub(crate) fn join_table(&self) -> &[u32] {
        &self.join
    }

    pub(crate) fn meet_table(&self) -> &[u32] {
        &self.meet
    }

    pub fn dual(&self) -> Lattice {
        Lattice {
            order: self.order.dual(),
            join: self.meet.clone(),
            meet: self.join.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Lattice, OrderError> {
        Ok(Lattice {
            order: self.order.relabel(f)?,
            join: self.join.clone(),
            meet: self.meet.clone(),
            bottom: self.bottom,
            top: self.top,
        })
    }

    /// True iff `set` contains 0, 1 and is closed under join and meet.
    pub fn is_01_sublattice(&self, set: &FixedBitSet) -> bool {
        set.contains(self.bottom)
            && set.contains(self.top)
            && set.ones().all(|i| {
                set.ones()
                    .all(|j| set.contains(self.join(i, j)) && set.contains(self.meet(i, j)))
            })
    }
}

/// Checks that `map` is an order isomorphism from `p` onto `q`.
pub fn is_order_iso(p: &Poset, q: &Poset, map: &[usize]) -> bool {
    if p.len() != q.len() || map.len() != p.len() {
        return false;
    }
    let mut hit = FixedBitSet::with_capacity(q.len());
    for &m in map {
        if m >= q.len() || hit.put(m) {
            return false;
        }
    }
    (0..p.len()).all(|i| (0..p.len()).all(|j| p.le(i, j) == q.le(map[i], map[j])))
}

/// Order isomorphisms from `p` to `q`, at most `limit` of them.
///
/// Backtracking over a linear extension of `p`, pruned by height and
/// up/down-set sizes. Guarded by the iso size cap.
pub fn order_isos(p: &Poset, q: &Poset, limit: usize) -> Result<Vec<Vec<usize>>, OrderError> {
    let cap = caps::iso_cap();
    if p.len() > cap {
        return Err(OrderError::TooLarge {
            what: "isomorphism search input",
            size: p.len(),
            cap,
        });
    }
    let n = p.len();
    if n != q.len() {
        return Ok(Vec::new());
    }
    let sig = |o: &Poset, i: usize| {
        (
            o.height(i),
            o.up_set(i).count_ones(..),
            o.down_set(i).count_ones(..),
            o.upper_covers(i).len(),
            o.lower_covers(i).len(),
        )
    };
    let sig_p: Vec<_> = (0..n).map(|i| sig(p, i)).collect();
    let sig_q: Vec<_> = (0..n).map(|i| sig(q, i)).collect();
    let mut sp = sig_p.clone();
    sp.sort();
    let mut sq = sig_q.clone();
    sq.sort();
    if sp != sq {
        return Ok(Vec::new());
    }
    let mut seq: Vec<usize> = (0..n).collect();
    seq.sort_by_key(|&i| (p.height(i), i));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    type Sig = (usize, usize, usize, usize, usize);
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        seq: &[usize],
        p: &Poset,
        q: &Poset,
        sig_p: &[Sig],
        sig_q: &[Sig],
        map: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == seq.len() {
            out.push(map.to_vec());
            return;
        }
        let x = seq[k];
        for y in 0..q.len() {
            if used[y] || sig_p[x] != sig_q[y] {
                continue;
            }
            let ok = seq[..k]
                .iter()
                .all(|&w| p.le(w, x) == q.le(map[w], y) && p.le(x, w) == q.le(y, map[w]));
            if !ok {
                continue;
            }
            map[x] = y;
            used[y] = true;
            go(k + 1, seq, p, q, sig_p, sig_q, map, used, out, limit);
            used[y] = false;
            map[x] = usize::MAX;
        }
    }
    go(
        0, &seq, p, q, &sig_p, &sig_q, &mut map, &mut used, &mut out, limit,
    );
    Ok(out)
}

/// Some order isomorphism `p → q`, if one exists.
pub fn order_iso(p: &Poset, q: &Poset) -> Result<Option<Vec<usize>>, OrderError> {
    Ok(order_isos(p, q, 1)?.pop())
}

/// All automorphisms of `p` (size-capped like [`order_iso`]).
pub fn automorphisms(p: &Poset) -> Result<Vec<Vec<usize>>, OrderError> {
    order_isos(p, p, usize::MAX)
}

pub fn is_selfdual(p: &Poset) -> Result<bool, OrderError> {
    Ok(order_iso(p, &p.dual())?.is_some())
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.label(a), self.label(b)))
            .collect();
        write!(f, "{{{}}}", covers.join(", "))
    }
}
