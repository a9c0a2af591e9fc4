//! Quasi-colored lattices: validation of the two coloring axioms, the
//! canonical coloring from anchor pairs, and Princ(L) ≅ H/Θν.

use std::collections::HashMap;

use thiserror::Error;

use crate::congruence::CongruenceIndex;
use crate::order::{Lattice, OrderError, Poset, QuasiOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("cg(`{0}`,`{1}`) is not the congruence of any anchor pair")]
    NoAnchor(String, String),
    #[error("pair (`{0}`,`{1}`) has no color")]
    Uncolored(String, String),
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    #[error("invalid quasi-coloring: {0}")]
    Invalid(String),
}

/// H/Θν where Θν = ν ∩ ν⁻¹.
#[derive(Clone, Debug)]
pub struct ThetaQuotient {
    /// classes in order of their least member index
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// each class is labeled by its lexicographically smallest member
    pub poset: Poset,
}

pub fn theta_quotient(q: &QuasiOrder) -> ThetaQuotient {
    let n = q.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (i..n).filter(|&j| q.equivalent(i, j)).collect();
        for &j in &members {
            class_of[j] = classes.len();
        }
        classes.push(members);
    }
    let labels: Vec<String> = classes
        .iter()
        .map(|c| c.iter().map(|&i| q.label(i)).min().unwrap().to_string())
        .collect();
    let mut seed = Vec::new();
    for (a, ca) in classes.iter().enumerate() {
        for (b, cb) in classes.iter().enumerate() {
            if a != b && q.le(ca[0], cb[0]) {
                seed.push((labels[a].clone(), labels[b].clone()));
            }
        }
    }
    let poset = Poset::new(&labels, &seed).expect("quotient of a quasiorder is a poset");
    ThetaQuotient {
        classes,
        class_of,
        poset,
    }
}

/// A lattice with a color on every comparable pair.
#[derive(Clone, Debug)]
pub struct QuasiColoredLattice {
    pub lattice: Lattice,
    pub colors: QuasiOrder,
    gamma: HashMap<(u32, u32), u32>,
}

impl QuasiColoredLattice {
    /// Colors given as `(lo, hi, color)` labels; every pair `lo ≤ hi` must be colored.
    pub fn new(
        lattice: Lattice,
        colors: QuasiOrder,
        gamma: &[(String, String, String)],
    ) -> Result<Self, ColoringError> {
        let mut map = HashMap::with_capacity(gamma.len());
        for (x, y, c) in gamma {
            let xi = lattice.require(x)?;
            let yi = lattice.require(y)?;
            let ci = colors
                .index(c)
                .ok_or_else(|| ColoringError::UnknownColor(c.clone()))?;
            map.insert((xi as u32, yi as u32), ci as u32);
        }
        for (x, y) in lattice.pairs() {
            if !map.contains_key(&(x as u32, y as u32)) {
                return Err(ColoringError::Uncolored(
                    lattice.label(x).into(),
                    lattice.label(y).into(),
                ));
            }
        }
        Ok(QuasiColoredLattice {
            lattice,
            colors,
            gamma: map,
        })
    }

    /// Color index of the comparable pair `x ≤ y`.
    pub fn gamma(&self, x: usize, y: usize) -> usize {
        self.gamma[&(x as u32, y as u32)] as usize
    }

    /// `(lo, hi, color)` label triples, sorted.
    pub fn gamma_labels(&self) -> Vec<(String, String, String)> {
        let l = &self.lattice;
        let mut out: Vec<_> = self
            .gamma
            .iter()
            .map(|(&(x, y), &c)| {
                (
                    l.label(x as usize).to_string(),
                    l.label(y as usize).to_string(),
                    self.colors.label(c as usize).to_string(),
                )
            })
            .collect();
        out.sort();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// color order implies congruence inclusion
    C1,
    /// congruence inclusion implies color order
    C2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub first: (String, String),
    pub second: (String, String),
}

#[derive(Clone, Debug, Default)]
pub struct ColoringReport {
    pub missing_colors: Vec<String>,
    pub violations: Vec<Violation>,
    pub has_least_color: bool,
    pub has_greatest_color: bool,
}

impl ColoringReport {
    pub fn is_valid(&self) -> bool {
        self.missing_colors.is_empty()
            && self.violations.is_empty()
            && self.has_least_color
            && self.has_greatest_color
    }
}

/// Checks surjectivity and both axioms.
///
/// Pairs of pairs are compared through their distinct (color, congruence)
/// combinations, which is equivalent to comparing all pairs of pairs.
pub fn validate_quasicoloring(q: &QuasiColoredLattice, idx: &CongruenceIndex) -> ColoringReport {
    let l = &q.lattice;
    let mut combos: Vec<(usize, usize, (usize, usize))> = Vec::new();
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    for (x, y) in l.pairs() {
        let key = (q.gamma(x, y), idx.id(x, y));
        if seen.insert(key, ()).is_none() {
            combos.push((key.0, key.1, (x, y)));
        }
    }
    let mut used = vec![false; q.colors.len()];
    for &(c, _, _) in &combos {
        used[c] = true;
    }
    let congs = idx.congruences();
    let names = |(x, y): (usize, usize)| (l.label(x).to_string(), l.label(y).to_string());
    let mut violations = Vec::new();
    for &(c1, t1, w1) in &combos {
        for &(c2, t2, w2) in &combos {
            let color_le = q.colors.le(c1, c2);
            let cong_le = congs[t1].le(&congs[t2]);
            if color_le && !cong_le {
                violations.push(Violation {
                    axiom: Axiom::C1,
                    first: names(w1),
                    second: names(w2),
                });
            }
            if cong_le && !color_le {
                violations.push(Violation {
                    axiom: Axiom::C2,
                    first: names(w1),
                    second: names(w2),
                });
            }
        }
    }
    ColoringReport {
        missing_colors: (0..q.colors.len())
            .filter(|&c| !used[c])
            .map(|c| q.colors.label(c).to_string())
            .collect(),
        violations,
        has_least_color: !q.colors.least_elements().is_empty(),
        has_greatest_color: !q.colors.greatest_elements().is_empty(),
    }
}

/// Colors each anchor pair by its own color and every other pair by the
/// smallest-labeled color whose anchor pair generates the same principal
/// congruence.
///
/// `anchors[c]` is the anchor pair `(a_c, b_c)` of color index `c`.
pub fn derive_canonical_coloring(
    lattice: Lattice,
    colors: QuasiOrder,
    anchors: &[(usize, usize)],
    idx: &CongruenceIndex,
) -> Result<QuasiColoredLattice, ColoringError> {
    let mut by_cong: HashMap<usize, usize> = HashMap::new();
    for (c, &(a, b)) in anchors.iter().enumerate() {
        let t = idx.id(a, b);
        by_cong
            .entry(t)
            .and_modify(|best| {
                if colors.label(c) < colors.label(*best) {
                    *best = c;
                }
            })
            .or_insert(c);
    }
    let mut gamma = HashMap::new();
    for (x, y) in lattice.pairs() {
        let c = by_cong.get(&idx.id(x, y)).ok_or_else(|| {
            ColoringError::NoAnchor(lattice.label(x).into(), lattice.label(y).into())
        })?;
        gamma.insert((x as u32, y as u32), *c as u32);
    }
    // each anchor pair keeps its own color, so the coloring stays onto H
    // even when several colors are Θν-equivalent
    for (c, &(a, b)) in anchors.iter().enumerate() {
        gamma.insert((a as u32, b as u32), c as u32);
    }
    Ok(QuasiColoredLattice {
        lattice,
        colors,
        gamma,
    })
}

/// Princ(L) → H/Θν, cg(x,y) ↦ γ(x,y)/Θν, as congruence id ↦ class index.
///
/// Fails unless the map is well defined, bijective and monotone both ways.
pub fn princ_color_iso(
    q: &QuasiColoredLattice,
    idx: &CongruenceIndex,
) -> Result<Vec<usize>, ColoringError> {
    let tq = theta_quotient(&q.colors);
    let k = idx.congruences().len();
    let mut map: Vec<Option<usize>> = vec![None; k];
    let l = &q.lattice;
    for (x, y) in l.pairs() {
        let class = tq.class_of[q.gamma(x, y)];
        let t = idx.id(x, y);
        match map[t] {
            None => map[t] = Some(class),
            Some(c) if c != class => {
                return Err(ColoringError::Invalid(format!(
                    "cg(`{}`,`{}`) receives two color classes",
                    l.label(x),
                    l.label(y)
                )))
            }
            _ => {}
        }
    }
    let map: Vec<usize> = map.into_iter().map(|m| m.expect("principal")).collect();
    let mut hit = vec![false; tq.classes.len()];
    for &c in &map {
        if std::mem::replace(&mut hit[c], true) {
            return Err(ColoringError::Invalid("two congruences share a color class".into()));
        }
    }
    if hit.iter().any(|h| !h) {
        return Err(ColoringError::Invalid("some color class is not attained".into()));
    }
    let congs = idx.congruences();
    for a in 0..k {
        for b in 0..k {
            let cl = tq.poset.le(map[a], map[b]);
            if congs[a].le(&congs[b]) != cl {
                return Err(ColoringError::Invalid(format!(
                    "order not preserved between cg({}) and cg({})",
                    pair_name(l, idx.witness(a)),
                    pair_name(l, idx.witness(b))
                )));
            }
        }
    }
    Ok(map)
}

fn pair_name(l: &Lattice, (x, y): (usize, usize)) -> String {
    format!("{},{}", l.label(x), l.label(y))
}
