//! Gadgets of rank 0/1/2 and gluing them into a host lattice.
//!
//! The rank-2 upward gadget is shipped as data; lower ranks are its
//! quotients, downward gadgets are duals and a double gadget is the union of
//! both over the shared boundary `{0, a_p, b_p, a_q, b_q, 1}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::congruence::{con_lattice, principal_congruence, quotient_lattice, CongruenceError};
use crate::io::BlueprintDoc;
use crate::labels;
use crate::order::{is_selfdual, Lattice, OrderError, Poset, QuasiOrder};

const SHIPPED_UP2: &str = include_str!("../data/gadget_up2.json");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("gadget colors must differ, got `{0}` twice")]
    SameColors(String),
    #[error("rank must be 0, 1 or 2, got {0}")]
    BadRank(u8),
    #[error("boundary element `{0}` is missing")]
    MissingBoundary(String),
    #[error("gluing preconditions fail: {0}")]
    Preconditions(String),
    #[error("glued operation mismatch on (`{x}`, `{y}`): formula gives `{formula}`, order gives `{order}`")]
    FormulaMismatch {
        x: String,
        y: String,
        formula: String,
        order: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Up,
    Dn,
    Double,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Up => "up",
            Orientation::Dn => "dn",
            Orientation::Double => "double",
        })
    }
}

/// Positions of the boundary elements inside a gadget lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub a_p: usize,
    pub b_p: usize,
    pub a_q: usize,
    pub b_q: usize,
}

impl Boundary {
    fn resolve(l: &Lattice, names: [&str; 4]) -> Result<Self, GadgetError> {
        let get = |s: &str| l.index(s).ok_or_else(|| GadgetError::MissingBoundary(s.into()));
        Ok(Boundary {
            a_p: get(names[0])?,
            b_p: get(names[1])?,
            a_q: get(names[2])?,
            b_q: get(names[3])?,
        })
    }

    /// `{0, a_p, b_p, a_q, b_q, 1}` as a bitset.
    pub fn set(&self, l: &Lattice) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(l.len());
        for i in [l.bottom(), l.top(), self.a_p, self.b_p, self.a_q, self.b_q] {
            s.insert(i);
        }
        s
    }
}

/// A gadget lattice with its boundary.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub lattice: Lattice,
    pub boundary: Boundary,
    pub rank: u8,
    pub orientation: Orientation,
    /// colors for instantiated gadgets
    pub colors: Option<(String, String)>,
}

impl Gadget {
    pub fn from_doc(doc: &BlueprintDoc) -> Result<Self, GadgetError> {
        let lattice = doc.lattice.to_lattice()?;
        let name = |k: &str| {
            doc.boundary
                .get(k)
                .cloned()
                .ok_or_else(|| GadgetError::MissingBoundary(k.into()))
        };
        let names = [name("a_p")?, name("b_p")?, name("a_q")?, name("b_q")?];
        let boundary = Boundary::resolve(&lattice, [&names[0], &names[1], &names[2], &names[3]])?;
        Ok(Gadget {
            lattice,
            boundary,
            rank: doc.rank,
            orientation: doc.orientation,
            colors: None,
        })
    }

    pub fn to_doc(&self) -> BlueprintDoc {
        let l = &self.lattice;
        let b = &self.boundary;
        BlueprintDoc {
            lattice: crate::io::PosetDoc::from_poset(l),
            boundary: [("a_p", b.a_p), ("b_p", b.b_p), ("a_q", b.a_q), ("b_q", b.b_q)]
                .into_iter()
                .map(|(k, i)| (k.to_string(), l.label(i).to_string()))
                .collect(),
            rank: self.rank,
            orientation: self.orientation,
        }
    }

    /// The shipped rank-2 upward blueprint, with generic labels.
    pub fn shipped() -> Self {
        let doc: BlueprintDoc = serde_json::from_str(SHIPPED_UP2).expect("shipped blueprint parses");
        Gadget::from_doc(&doc).expect("shipped blueprint is a lattice")
    }

    /// Elements outside the boundary.
    pub fn interior(&self) -> Vec<usize> {
        let b = self.boundary.set(&self.lattice);
        (0..self.lattice.len()).filter(|&i| !b.contains(i)).collect()
    }
}

/// Rank of a pair of colors: 0 if both lie in Z, 1 if only `p` does, else 2.
pub fn rank_of(p_in_z: bool, q_in_z: bool) -> u8 {
    match (p_in_z, q_in_z) {
        (true, true) => 0,
        (true, false) => 1,
        _ => 2,
    }
}

/// Generic rank-j upward gadget: the shipped one, or its quotient.
pub fn generic_up(rank: u8) -> Result<Gadget, GadgetError> {
    Ok(generic_projection(rank)?.0)
}

/// Generic rank-j gadget with the projection from the rank-2 one.
pub fn generic_projection(rank: u8) -> Result<(Gadget, Vec<usize>), GadgetError> {
    project(Gadget::shipped(), rank)
}

/// The rank-j quotient of a rank-2 upward gadget, with the projection.
pub fn project(g: Gadget, rank: u8) -> Result<(Gadget, Vec<usize>), GadgetError> {
    let b = g.boundary;
    let theta = match rank {
        2 => {
            let id = (0..g.lattice.len()).collect();
            return Ok((g, id));
        }
        1 => principal_congruence(&g.lattice, b.a_p, b.b_p),
        0 => principal_congruence(&g.lattice, b.a_q, b.b_q),
        r => return Err(GadgetError::BadRank(r)),
    };
    let (q, proj) = quotient_lattice(&g.lattice, &theta)?;
    let gadget = Gadget {
        boundary: Boundary {
            a_p: proj[b.a_p],
            b_p: proj[b.b_p],
            a_q: proj[b.a_q],
            b_q: proj[b.b_q],
        },
        lattice: q,
        rank,
        orientation: Orientation::Up,
        colors: None,
    };
    Ok((gadget, proj))
}

/// Generic label → instantiated label for colors `p`, `q`.
pub(crate) fn instantiate_label(base: &str, dual: bool, p: &str, q: &str, rank: u8) -> String {
    match base {
        "0" => if dual { "1" } else { "0" }.to_string(),
        "1" => if dual { "0" } else { "1" }.to_string(),
        "a_p" | "b_p" | "a_q" | "b_q" => {
            let color = if base.ends_with('p') { p } else { q };
            let merged = if base.ends_with('p') { rank <= 1 } else { rank == 0 };
            let is_a = base.starts_with('a');
            if merged || is_a != dual {
                labels::anchor_a(color)
            } else {
                labels::anchor_b(color)
            }
        }
        _ => labels::gadget(base, dual, p, q, rank),
    }
}

/// G_j^{orientation}(p, q) with structured labels.
pub fn build_gadget(rank: u8, orientation: Orientation, p: &str, q: &str) -> Result<Gadget, GadgetError> {
    build_gadget_from(&Gadget::shipped(), rank, orientation, p, q)
}

/// As [`build_gadget`], starting from another rank-2 upward blueprint.
pub fn build_gadget_from(
    base: &Gadget,
    rank: u8,
    orientation: Orientation,
    p: &str,
    q: &str,
) -> Result<Gadget, GadgetError> {
    if p == q {
        return Err(GadgetError::SameColors(p.into()));
    }
    if orientation == Orientation::Double {
        let up = build_gadget_from(base, rank, Orientation::Up, p, q)?;
        let dn = build_gadget_from(base, rank, Orientation::Dn, p, q)?;
        let lattice = union_over_shared(&up.lattice, &dn.lattice)?;
        let boundary = relocate(&up, &lattice);
        return Ok(Gadget {
            lattice,
            boundary,
            rank,
            orientation,
            colors: Some((p.into(), q.into())),
        });
    }
    let g = project(base.clone(), rank)?.0;
    let dual = orientation == Orientation::Dn;
    let base = if dual { g.lattice.dual() } else { g.lattice.clone() };
    let lattice = base.relabel(|s| instantiate_label(s, dual, p, q, rank))?;
    let b = g.boundary;
    let boundary = if dual {
        // in the dual the roles of a and b swap
        Boundary {
            a_p: b.b_p,
            b_p: b.a_p,
            a_q: b.b_q,
            b_q: b.a_q,
        }
    } else {
        b
    };
    Ok(Gadget {
        lattice,
        boundary,
        rank,
        orientation,
        colors: Some((p.into(), q.into())),
    })
}

fn relocate(g: &Gadget, into: &Lattice) -> Boundary {
    let at = |i: usize| into.index(g.lattice.label(i)).expect("boundary kept");
    Boundary {
        a_p: at(g.boundary.a_p),
        b_p: at(g.boundary.b_p),
        a_q: at(g.boundary.a_q),
        b_q: at(g.boundary.b_q),
    }
}

/// Lattice on the union of two labeled lattices, ordered by the closure of
/// both orders (shared labels are identified).
pub fn union_over_shared(l: &Lattice, g: &Lattice) -> Result<Lattice, GadgetError> {
    let mut labels: Vec<String> = l.labels().to_vec();
    for s in g.labels() {
        if l.index(s).is_none() {
            labels.push(s.clone());
        }
    }
    let mut seed = Vec::new();
    for (a, b) in l.covers() {
        seed.push((l.label(a).to_string(), l.label(b).to_string()));
    }
    for (a, b) in g.covers() {
        seed.push((g.label(a).to_string(), g.label(b).to_string()));
    }
    let q = QuasiOrder::closure(&labels, &seed)?;
    Ok(Lattice::from_poset(q.into_poset()?)?)
}

/// One named check of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, passed, detail));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{mark} {}", c.name)?;
            } else {
                writeln!(f, "{mark} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

/// Least element of `b ∩ ↑x` and greatest of `b ∩ ↓x`.
fn hat_check(l: &Poset, b: &FixedBitSet, x: usize) -> (Option<usize>, Option<usize>) {
    let above: Vec<usize> = b.ones().filter(|&u| l.le(x, u)).collect();
    let below: Vec<usize> = b.ones().filter(|&u| l.le(u, x)).collect();
    let least = above
        .iter()
        .copied()
        .find(|&u| above.iter().all(|&v| l.le(u, v)));
    let greatest = below
        .iter()
        .copied()
        .find(|&u| below.iter().all(|&v| l.le(v, u)));
    (least, greatest)
}

/// Checks the gadget contract.
pub fn verify_gadget(g: &Gadget) -> Report {
    let mut r = Report::default();
    let l = &g.lattice;
    let b = g.boundary;
    let (zero, one) = (l.bottom(), l.top());

    let ordered = |a: usize, c: usize| l.le(a, c) && zero != a && c != one;
    let bounds_ok = ordered(b.a_p, b.b_p) && ordered(b.a_q, b.b_q);
    r.push("boundary order", bounds_ok, "");
    if !bounds_ok {
        return r;
    }

    let lp = l.interval_length(b.a_p, b.b_p);
    let lq = l.interval_length(b.a_q, b.b_q);
    r.push(
        "rank",
        lp + lq == g.rank as usize && lp <= lq && lq <= 1,
        format!("length[a_p,b_p] = {lp}, length[a_q,b_q] = {lq}, rank {}", g.rank),
    );

    let bset = b.set(l);
    r.push(
        "boundary sublattice",
        l.is_01_sublattice(&bset) && l.join(b.a_p, b.a_q) == one && l.meet(b.b_p, b.b_q) == zero,
        "",
    );

    let narrow: Vec<&str> = (0..l.len())
        .filter(|&x| {
            let (h, c) = hat_check(l, &bset, x);
            h.is_none() || c.is_none()
        })
        .map(|x| l.label(x))
        .collect();
    r.push("width", narrow.is_empty(), narrow.join(" "));

    let want_len = match (g.rank, g.orientation) {
        (2, _) | (1, Orientation::Double) => Some(5),
        _ => None,
    };
    let len = l.length();
    r.push(
        "length",
        want_len.map_or(len <= 5, |w| len == w),
        format!("length {len}"),
    );

    match con_lattice(l) {
        Err(e) => r.push("congruences", false, e.to_string()),
        Ok(con) => {
            let cp = principal_congruence(l, b.a_p, b.b_p);
            let cq = principal_congruence(l, b.a_q, b.b_q);
            let (ok, detail) = match g.rank {
                2 => (
                    con.len() == 4
                        && !cp.is_delta()
                        && !cq.is_nabla()
                        && cp.le(&cq)
                        && cp != cq,
                    format!("{} congruences, cg(a_p,b_p) < cg(a_q,b_q): {}", con.len(), cp.le(&cq) && cp != cq),
                ),
                1 => (
                    con.len() == 3 && !cq.is_delta() && !cq.is_nabla(),
                    format!("{} congruences", con.len()),
                ),
                _ => (con.len() == 2, format!("{} congruences", con.len())),
            };
            r.push("congruences", ok, detail);
        }
    }

    if g.orientation == Orientation::Double {
        match is_selfdual(l) {
            Ok(s) => r.push("selfdual", s, ""),
            Err(e) => r.push("selfdual", false, e.to_string()),
        }
    } else {
        // what the gluing formulas rely on: interiors sit beside the upper
        // anchors (up) / lower anchors (dn) and meet/join into the boundary
        let view = if g.orientation == Orientation::Up {
            l.clone()
        } else {
            l.dual()
        };
        let bad: Vec<&str> = g
            .interior()
            .into_iter()
            .filter(|&y| {
                let (h, _) = hat_check(&view, &bset, y);
                h != Some(view.top())
                    || bset
                        .ones()
                        .any(|u| u != view.top() && !bset.contains(view.meet(u, y)))
            })
            .map(|y| l.label(y))
            .collect();
        r.push("gluing shape", bad.is_empty(), bad.join(" "));
    }
    r
}

/// Hypotheses for gluing a rank-`j` gadget over the given anchors of `l`.
pub fn glue_preconditions(l: &Lattice, g: &Gadget) -> Report {
    let mut r = Report::default();
    let gl = &g.lattice;
    let b = g.boundary;
    let names = [b.a_p, b.b_p, b.a_q, b.b_q].map(|i| gl.label(i).to_string());
    let host: Vec<Option<usize>> = names.iter().map(|s| l.index(s)).collect();
    if host.iter().any(Option::is_none) {
        r.push("anchors present", false, names.join(" "));
        return r;
    }
    let [ap, bp, aq, bq] = [host[0].unwrap(), host[1].unwrap(), host[2].unwrap(), host[3].unwrap()];
    let (zero, one) = (l.bottom(), l.top());
    r.push(
        "anchor order",
        zero != ap && l.le(ap, bp) && bp != one && zero != aq && l.le(aq, bq) && bq != one,
        "",
    );
    if !r.passed() {
        return r;
    }
    let lp = l.interval_length(ap, bp);
    let lq = l.interval_length(aq, bq);
    r.push(
        "rank",
        lp + lq == g.rank as usize && lp <= lq && lq <= 1,
        format!("length[a_p,b_p] = {lp}, length[a_q,b_q] = {lq}"),
    );
    r.push("a_p ∨ a_q = 1", l.join(ap, aq) == one, "");
    r.push("b_p ∧ b_q = 0", l.meet(bp, bq) == zero, "");
    let short = [
        ("length[0,a_p] ≤ 2", l.interval_length(zero, ap)),
        ("length[b_p,1] ≤ 2", l.interval_length(bp, one)),
        ("length[0,a_q] ≤ 2", l.interval_length(zero, aq)),
        ("length[b_q,1] ≤ 2", l.interval_length(bq, one)),
    ];
    for (name, len) in short {
        r.push(name, len <= 2, format!("{len}"));
    }
    let boundary: BTreeSet<&str> = names
        .iter()
        .map(String::as_str)
        .chain([gl.label(gl.bottom()), gl.label(gl.top())])
        .collect();
    let shared: BTreeSet<&str> = gl
        .labels()
        .iter()
        .map(String::as_str)
        .filter(|s| l.index(s).is_some())
        .collect();
    let extra: Vec<&str> = shared.difference(&boundary).copied().collect();
    r.push("shared elements are the boundary", extra.is_empty(), extra.join(" "));
    let same_order = [b.a_p, b.b_p, b.a_q, b.b_q, gl.bottom(), gl.top()]
        .iter()
        .all(|&x| {
            [b.a_p, b.b_p, b.a_q, b.b_q, gl.bottom(), gl.top()].iter().all(|&y| {
                gl.le(x, y) == l.le(l.index(gl.label(x)).unwrap(), l.index(gl.label(y)).unwrap())
            })
        });
    r.push("boundary ordered alike", same_order, "");
    r
}

/// Result of gluing a gadget into a host.
#[derive(Clone, Debug)]
pub struct GlueResult {
    pub lattice: Lattice,
    /// host index ↦ glued index
    pub host_embedding: Vec<usize>,
    /// gadget index ↦ glued index
    pub gadget_embedding: Vec<usize>,
}

/// Glues `g` into `l`, then checks the formula tables against the bounds
/// computed from the closed order on every pair.
pub fn glue(l: &Lattice, g: &Gadget) -> Result<GlueResult, GadgetError> {
    let out = glue_unverified(l, g)?;
    verify_tables(&out.lattice)?;
    Ok(out)
}

/// Compares the lattice's tables with a from-scratch bound scan.
pub fn verify_tables(l: &Lattice) -> Result<(), GadgetError> {
    let brute = Lattice::from_poset(l.poset().clone())?;
    for x in 0..l.len() {
        for y in x + 1..l.len() {
            for (f, o) in [(l.join(x, y), brute.join(x, y)), (l.meet(x, y), brute.meet(x, y))] {
                if f != o {
                    return Err(GadgetError::FormulaMismatch {
                        x: l.label(x).into(),
                        y: l.label(y).into(),
                        formula: l.label(f).into(),
                        order: l.label(o).into(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Gluing by the hat/check formulas only; callers verify the tables.
pub fn glue_unverified(l: &Lattice, g: &Gadget) -> Result<GlueResult, GadgetError> {
    if g.orientation == Orientation::Double {
        let (p, q) = g
            .colors
            .clone()
            .ok_or_else(|| GadgetError::Preconditions("double gadget without colors".into()))?;
        let up = build_gadget(g.rank, Orientation::Up, &p, &q)?;
        let dn = build_gadget(g.rank, Orientation::Dn, &p, &q)?;
        let up = relabel_like(&up, g);
        let dn = relabel_like(&dn, g);
        let first = glue_unverified(l, &up)?;
        let second = glue_unverified(&first.lattice, &dn)?;
        let at = |s: &str| second.lattice.index(s).expect("glued label");
        return Ok(GlueResult {
            host_embedding: first.host_embedding.iter().map(|&i| second.host_embedding[i]).collect(),
            gadget_embedding: (0..g.lattice.len()).map(|i| at(g.lattice.label(i))).collect(),
            lattice: second.lattice,
        });
    }
    let pre = glue_preconditions(l, g);
    if !pre.passed() {
        let why: Vec<String> = pre
            .failures()
            .iter()
            .map(|c| format!("{} {}", c.name, c.detail).trim().to_string())
            .collect();
        return Err(GadgetError::Preconditions(why.join("; ")));
    }
    let gl = &g.lattice;
    let n1 = l.len();
    let interior = g.interior();
    let n = n1 + interior.len();

    // gadget index -> glued index
    let mut gmap = vec![0usize; gl.len()];
    let mut labels: Vec<String> = l.labels().to_vec();
    let bset = g.boundary.set(gl);
    for y in 0..gl.len() {
        if bset.contains(y) {
            gmap[y] = l.index(gl.label(y)).expect("checked by preconditions");
        }
    }
    for (k, &y) in interior.iter().enumerate() {
        gmap[y] = n1 + k;
        labels.push(gl.label(y).to_string());
    }
    let boundary: Vec<usize> = bset.ones().collect();
    let host_b: Vec<usize> = boundary.iter().map(|&y| gmap[y]).collect();
    // glued index of a boundary element -> gadget index
    let to_g: HashMap<usize, usize> = boundary.iter().map(|&y| (gmap[y], y)).collect();

    // per host element: least boundary element above, greatest below
    let mut hat = vec![0usize; n1];
    let mut ahat = vec![0usize; n1];
    for x in 0..n1 {
        let above = host_b.iter().copied().filter(|&u| l.le(x, u));
        let below = host_b.iter().copied().filter(|&u| l.le(u, x));
        let h = above.clone().find(|&u| above.clone().all(|v| l.le(u, v)));
        let a = below.clone().find(|&u| below.clone().all(|v| l.le(v, u)));
        match (h, a) {
            (Some(h), Some(a)) => {
                hat[x] = to_g[&h];
                ahat[x] = to_g[&a];
            }
            _ => {
                return Err(GadgetError::Preconditions(format!(
                    "host element `{}` has no boundary hull",
                    l.label(x)
                )))
            }
        }
    }
    // per gadget interior element: least boundary above, greatest below
    let mut fcs = HashMap::new();
    let mut acs = HashMap::new();
    for &y in &interior {
        match hat_check(gl, &bset, y) {
            (Some(h), Some(a)) => {
                fcs.insert(y, gmap[h]);
                acs.insert(y, gmap[a]);
            }
            _ => {
                return Err(GadgetError::Preconditions(format!(
                    "gadget element `{}` has no boundary hull",
                    gl.label(y)
                )))
            }
        }
    }

    // order
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    for x in 0..n1 {
        for z in l.up_set(x).ones() {
            up[x].insert(z);
        }
    }
    for y in 0..gl.len() {
        for z in gl.up_set(y).ones() {
            up[gmap[y]].insert(gmap[z]);
        }
    }
    for x in 0..n1 {
        for &y in &interior {
            if l.le(x, acs[&y]) {
                up[x].insert(gmap[y]);
            }
            if l.le(fcs[&y], x) {
                up[gmap[y]].insert(x);
            }
        }
    }
    let poset = QuasiOrder::from_up_sets(labels, up)?.into_poset()?;

    // tables
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    let (lj, lm) = (l.join_table(), l.meet_table());
    for x in 0..n1 {
        join[x * n..x * n + n1].copy_from_slice(&lj[x * n1..x * n1 + n1]);
        meet[x * n..x * n + n1].copy_from_slice(&lm[x * n1..x * n1 + n1]);
    }
    let mut set = |x: usize, y: usize, j: usize, m: usize| {
        join[x * n + y] = j as u32;
        join[y * n + x] = j as u32;
        meet[x * n + y] = m as u32;
        meet[y * n + x] = m as u32;
    };
    for y in 0..gl.len() {
        for z in 0..gl.len() {
            set(gmap[y], gmap[z], gmap[gl.join(y, z)], gmap[gl.meet(y, z)]);
        }
    }
    let up_orientation = g.orientation == Orientation::Up;
    for x in 0..n1 {
        if bset_contains_host(&to_g, x) {
            continue;
        }
        for &y in &interior {
            let (j, m) = if up_orientation {
                (gmap[gl.join(hat[x], y)], l.meet(x, acs[&y]))
            } else {
                (l.join(x, fcs[&y]), gmap[gl.meet(ahat[x], y)])
            };
            set(x, gmap[y], j, m);
        }
    }
    let lattice = Lattice::from_trusted_tables(poset, join, meet);
    Ok(GlueResult {
        lattice,
        host_embedding: (0..n1).collect(),
        gadget_embedding: gmap,
    })
}

fn bset_contains_host(to_g: &HashMap<usize, usize>, x: usize) -> bool {
    to_g.contains_key(&x)
}

/// Applies the boundary renaming of `like` (which may differ from the
/// canonical anchors, e.g. anchors inside the frame) to `g`.
fn relabel_like(g: &Gadget, like: &Gadget) -> Gadget {
    let rename: HashMap<String, String> = [
        (g.boundary.a_p, like.boundary.a_p),
        (g.boundary.b_p, like.boundary.b_p),
        (g.boundary.a_q, like.boundary.a_q),
        (g.boundary.b_q, like.boundary.b_q),
    ]
    .into_iter()
    .map(|(i, j)| (g.lattice.label(i).to_string(), like.lattice.label(j).to_string()))
    .collect();
    let lattice = g
        .lattice
        .relabel(|s| rename.get(s).cloned().unwrap_or_else(|| s.to_string()))
        .expect("renaming anchors keeps labels distinct");
    Gadget {
        lattice,
        ..g.clone()
    }
}

/// Renames boundary labels, e.g. to place the `1'` anchors inside the frame.
pub fn rename_boundary(g: &Gadget, rename: &HashMap<String, String>) -> Gadget {
    let lattice = g
        .lattice
        .relabel(|s| rename.get(s).cloned().unwrap_or_else(|| s.to_string()))
        .expect("renaming anchors keeps labels distinct");
    Gadget {
        lattice,
        ..g.clone()
    }
}
