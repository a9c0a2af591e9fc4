//! The frame lattice and the big lattices N(H,Z,U;I,J) and L(H,ν).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::congruence::{is_simple, CongruenceIndex};
use crate::gadget::{
    build_gadget, glue_unverified, rank_of, rename_boundary, verify_tables, GadgetError,
    Orientation, Report,
};
use crate::io::{ColorsDoc, MnhDoc, PairsDoc};
use crate::labels::{self, LabelError, Parsed, ONE_PRIME};
use crate::order::{automorphisms, order_isos, Lattice, OrderError, QuasiOrder};
use crate::quasicolor::{
    derive_canonical_coloring, princ_color_iso, theta_quotient, validate_quasicoloring,
    ColoringError, QuasiColoredLattice,
};

const SHIPPED_MNH: &str = include_str!("../data/mnh.json");

#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("invalid color universe: {0}")]
    Universe(String),
    #[error("gluing {orientation} gadget for ({p},{q}) failed: {source}")]
    Step {
        p: String,
        q: String,
        orientation: Orientation,
        source: Box<GadgetError>,
    },
    #[error("verification failed: {0}")]
    Verification(String),
}

/// Colors H with the sets Z, U and the gadget pairs I (up) and J (down).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorUniverse {
    pub colors: Vec<String>,
    pub z: BTreeSet<String>,
    pub u: BTreeSet<String>,
    pub i: BTreeSet<(String, String)>,
    pub j: BTreeSet<(String, String)>,
}

impl ColorUniverse {
    pub fn from_docs(colors: &ColorsDoc, i: &PairsDoc, j: &PairsDoc) -> Result<Self, BuildError> {
        let u = ColorUniverse {
            colors: colors.elements.clone(),
            z: colors.z.iter().cloned().collect(),
            u: colors.u.iter().cloned().collect(),
            i: i.iter().cloned().collect(),
            j: j.iter().cloned().collect(),
        };
        u.validate()?;
        Ok(u)
    }

    pub fn validate(&self) -> Result<(), BuildError> {
        let bad = |m: String| Err(BuildError::Universe(m));
        let mut seen = BTreeSet::new();
        for c in &self.colors {
            labels::check_color(c)?;
            if !seen.insert(c) {
                return bad(format!("color `{c}` listed twice"));
            }
        }
        for (name, set) in [("Z", &self.z), ("U", &self.u)] {
            if set.is_empty() {
                return bad(format!("{name} is empty"));
            }
            if let Some(c) = set.iter().find(|c| !seen.contains(c)) {
                return bad(format!("{name} contains unknown color `{c}`"));
            }
        }
        if let Some(c) = self.z.intersection(&self.u).next() {
            return bad(format!("`{c}` lies in both Z and U"));
        }
        for (p, q) in self.i.iter().chain(&self.j) {
            if !seen.contains(p) || !seen.contains(q) {
                return bad(format!("pair ({p},{q}) uses an unknown color"));
            }
            if p == q {
                return bad(format!("pair ({p},{q}) repeats a color"));
            }
            if self.z.contains(q) && !self.z.contains(p) {
                return bad(format!("pair ({p},{q}) has q in Z but p outside Z"));
            }
        }
        Ok(())
    }

    pub fn rank(&self, p: &str, q: &str) -> u8 {
        rank_of(self.z.contains(p), self.z.contains(q))
    }

    /// ν = closure of (Z×H) ∪ (H×U) ∪ I ∪ J on the colors.
    pub fn nu(&self) -> QuasiOrder {
        let mut seed: Vec<(String, String)> = Vec::new();
        for c in &self.colors {
            for z in &self.z {
                seed.push((z.clone(), c.clone()));
            }
            for u in &self.u {
                seed.push((c.clone(), u.clone()));
            }
        }
        seed.extend(self.i.iter().cloned());
        seed.extend(self.j.iter().cloned());
        QuasiOrder::closure(&self.colors, &seed).expect("validated colors")
    }

    /// Gluing steps in lexicographic order of (pair, orientation).
    pub fn steps(&self) -> Vec<((String, String), Orientation)> {
        let mut steps: Vec<_> = self
            .i
            .iter()
            .map(|pq| (pq.clone(), Orientation::Up))
            .chain(self.j.iter().map(|pq| (pq.clone(), Orientation::Dn)))
            .collect();
        steps.sort();
        steps
    }
}

/// The simple selfdual frame lattice with its inner anchor pair.
#[derive(Clone, Debug)]
pub struct Mnh {
    /// labels are `<m,name>` apart from 0 and 1
    pub lattice: Lattice,
    pub a1: usize,
    pub b1: usize,
    pub marked: Vec<usize>,
}

impl Mnh {
    pub fn from_doc(doc: &MnhDoc) -> Result<Self, OrderError> {
        let wrap = |s: &str| match s {
            "0" | "1" => s.to_string(),
            _ => labels::frame(s),
        };
        let lattice = doc.lattice.to_lattice()?.relabel(wrap)?;
        let at = |s: &str| lattice.require(&wrap(s));
        Ok(Mnh {
            a1: at(&doc.anchor.a)?,
            b1: at(&doc.anchor.b)?,
            marked: doc.marked.iter().map(|m| at(m)).collect::<Result<_, _>>()?,
            lattice,
        })
    }
}

pub fn default_mnh() -> Mnh {
    let doc: MnhDoc = serde_json::from_str(SHIPPED_MNH).expect("shipped frame parses");
    Mnh::from_doc(&doc).expect("shipped frame is a lattice")
}

/// Doubly irreducible atoms and coatoms of a lattice.
fn doubly_irreducible_extremes(l: &Lattice) -> (Vec<usize>, Vec<usize>) {
    let atoms = (0..l.len())
        .filter(|&x| l.lower_covers(x) == [l.bottom()] && l.upper_covers(x).len() == 1)
        .collect();
    let coatoms = (0..l.len())
        .filter(|&x| l.upper_covers(x) == [l.top()] && l.lower_covers(x).len() == 1)
        .collect();
    (atoms, coatoms)
}

/// Checks the frame contract.
pub fn verify_mnh(m: &Mnh) -> Report {
    let mut r = Report::default();
    let l = &m.lattice;
    let mut push = |name: &str, ok: bool, detail: String| {
        r.checks.push(crate::gadget::Check {
            name: name.into(),
            passed: ok,
            detail,
        })
    };
    push("simple", is_simple(l), String::new());
    push("length", l.length() == 5, format!("length {}", l.length()));
    let anti = order_isos(l, &l.dual(), usize::MAX).unwrap_or_default();
    push(
        "selfdual",
        anti.iter().any(|d| d[m.a1] == m.b1),
        format!("{} dual isomorphisms", anti.len()),
    );
    push(
        "anchor pair",
        l.upper_covers(m.a1).contains(&m.b1)
            && l.interval_length(l.bottom(), m.a1) <= 2
            && l.interval_length(m.b1, l.top()) <= 2,
        String::new(),
    );
    let (atoms, coatoms) = doubly_irreducible_extremes(l);
    push(
        "two doubly irreducible atoms and coatoms",
        atoms.len() == 2 && coatoms.len() == 2,
        format!("{} atoms, {} coatoms", atoms.len(), coatoms.len()),
    );
    let autos = automorphisms(l).unwrap_or_default();
    let moved: BTreeSet<usize> = autos
        .iter()
        .flat_map(|a| (0..l.len()).filter(move |&x| a[x] != x))
        .collect();
    let extremes: BTreeSet<usize> = atoms.iter().chain(&coatoms).copied().collect();
    push(
        "automorphisms move only the extremes",
        moved == extremes,
        format!("{} automorphisms", autos.len()),
    );
    let rigid = autos
        .iter()
        .filter(|a| m.marked.iter().all(|&x| a[x] == x))
        .count()
        == 1;
    push("marked elements make it rigid", rigid, String::new());
    r
}

/// A lattice with anchor pairs `(a_p, b_p)` for each color.
#[derive(Clone, Debug)]
pub struct Frame {
    pub lattice: Lattice,
    pub anchors: BTreeMap<String, (usize, usize)>,
}

fn anchors_of(l: &Lattice, u: &ColorUniverse) -> BTreeMap<String, (usize, usize)> {
    u.colors
        .iter()
        .map(|p| {
            let a = l.index(&labels::anchor_a(p)).expect("anchor present");
            let b = if u.z.contains(p) {
                a
            } else {
                l.index(&labels::anchor_b(p)).expect("anchor present")
            };
            (p.clone(), (a, b))
        })
        .collect()
}

/// N⁻: the frame with a private chain `0 < a_p (< b_p) < 1` per color.
pub fn build_frame_minus(u: &ColorUniverse, mnh: &Mnh) -> Result<Frame, BuildError> {
    u.validate()?;
    let m = &mnh.lattice;
    let mut elements: Vec<String> = m.labels().to_vec();
    let mut le: Vec<(String, String)> = m
        .covers()
        .into_iter()
        .map(|(a, b)| (m.label(a).to_string(), m.label(b).to_string()))
        .collect();
    for p in &u.colors {
        let a = labels::anchor_a(p);
        elements.push(a.clone());
        le.push(("0".into(), a.clone()));
        if u.z.contains(p) {
            le.push((a, "1".into()));
        } else {
            let b = labels::anchor_b(p);
            elements.push(b.clone());
            le.push((a, b.clone()));
            le.push((b, "1".into()));
        }
    }
    let lattice = Lattice::from_covers(&elements, &le)?;
    let anchors = anchors_of(&lattice, u);
    Ok(Frame { lattice, anchors })
}

/// N⁻ plus, for each r ∈ U, a rank-2 double gadget from the frame's inner
/// anchor pair to (a_r, b_r).
pub fn build_frame(u: &ColorUniverse) -> Result<Frame, BuildError> {
    let mnh = default_mnh();
    let minus = build_frame_minus(u, &mnh)?;
    let lattice = glue_u_gadgets(minus.lattice, u, &mnh)?;
    verify_tables(&lattice)?;
    let anchors = anchors_of(&lattice, u);
    Ok(Frame { lattice, anchors })
}

fn glue_u_gadgets(mut l: Lattice, u: &ColorUniverse, mnh: &Mnh) -> Result<Lattice, BuildError> {
    let rename: HashMap<String, String> = [
        (labels::anchor_a(ONE_PRIME), mnh.lattice.label(mnh.a1).to_string()),
        (labels::anchor_b(ONE_PRIME), mnh.lattice.label(mnh.b1).to_string()),
    ]
    .into_iter()
    .collect();
    for r in &u.u {
        for orientation in [Orientation::Up, Orientation::Dn] {
            let g = rename_boundary(&build_gadget(2, orientation, ONE_PRIME, r)?, &rename);
            l = glue_unverified(&l, &g)
                .map_err(|source| BuildError::Step {
                    p: ONE_PRIME.into(),
                    q: r.clone(),
                    orientation,
                    source: Box::new(source),
                })?
                .lattice;
        }
    }
    Ok(l)
}

/// N(H,Z,U;I,J) with its canonical coloring.
#[derive(Clone, Debug)]
pub struct BigLattice {
    pub colored: QuasiColoredLattice,
    pub universe: ColorUniverse,
    /// anchor pair of each color, indexed like `colored.colors`
    pub anchors: Vec<(usize, usize)>,
    pub index: CongruenceIndex,
}

impl BigLattice {
    pub fn lattice(&self) -> &Lattice {
        &self.colored.lattice
    }

    pub fn nu(&self) -> &QuasiOrder {
        &self.colored.colors
    }

    /// Anchor pair of a color by name.
    pub fn anchor(&self, color: &str) -> Option<(usize, usize)> {
        self.nu().index(color).map(|c| self.anchors[c])
    }
}

pub fn build_big(u: &ColorUniverse) -> Result<BigLattice, BuildError> {
    build_big_with_steps(u, &u.steps())
}

/// As [`build_big`], gluing the I/J gadgets in the given order.
pub fn build_big_with_steps(
    u: &ColorUniverse,
    steps: &[((String, String), Orientation)],
) -> Result<BigLattice, BuildError> {
    let mnh = default_mnh();
    let minus = build_frame_minus(u, &mnh)?;
    let mut l = glue_u_gadgets(minus.lattice, u, &mnh)?;
    for ((p, q), orientation) in steps {
        let g = build_gadget(u.rank(p, q), *orientation, p, q)?;
        l = glue_unverified(&l, &g)
            .map_err(|source| BuildError::Step {
                p: p.clone(),
                q: q.clone(),
                orientation: *orientation,
                source: Box::new(source),
            })?
            .lattice;
    }
    verify_tables(&l)?;
    if l.length() != 5 {
        return Err(BuildError::Verification(format!("length is {}", l.length())));
    }
    let nu = u.nu();
    let by_name = anchors_of(&l, u);
    let anchors: Vec<(usize, usize)> = nu.labels().iter().map(|c| by_name[c]).collect();
    let index = CongruenceIndex::new(&l);
    let colored = derive_canonical_coloring(l, nu, &anchors, &index)?;
    let report = validate_quasicoloring(&colored, &index);
    if !report.is_valid() {
        return Err(BuildError::Verification(format!(
            "coloring invalid: {} violations, missing colors {:?}",
            report.violations.len(),
            report.missing_colors
        )));
    }
    princ_color_iso(&colored, &index)?;
    Ok(BigLattice {
        colored,
        universe: u.clone(),
        anchors,
        index,
    })
}

/// L(H,ν) = N(H, Z(H), U(H); ν, ν).
pub fn build_lhnu(h: &QuasiOrder) -> Result<BigLattice, BuildError> {
    let least: BTreeSet<String> = h.least_elements().into_iter().map(|i| h.label(i).to_string()).collect();
    let greatest: BTreeSet<String> =
        h.greatest_elements().into_iter().map(|i| h.label(i).to_string()).collect();
    if least.is_empty() || greatest.is_empty() {
        return Err(BuildError::Universe("quasiorder needs least and greatest elements".into()));
    }
    if !least.is_disjoint(&greatest) {
        return Err(BuildError::Universe(
            "least and greatest elements coincide (0 = 1)".into(),
        ));
    }
    let pairs: BTreeSet<(String, String)> = h
        .pairs()
        .into_iter()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (h.label(a).to_string(), h.label(b).to_string()))
        .collect();
    let u = ColorUniverse {
        colors: h.labels().to_vec(),
        z: least,
        u: greatest,
        i: pairs.clone(),
        j: pairs,
    };
    u.validate()?;
    let big = build_big(&u)?;
    if big.nu() != h {
        return Err(BuildError::Verification("ν of the construction differs from H".into()));
    }
    Ok(big)
}

/// ζ: H/Θν → Princ, p/Θν ↦ cg(a_p, b_p), as class index ↦ congruence id.
pub fn zeta_iso(b: &BigLattice) -> Result<Vec<usize>, BuildError> {
    let tq = theta_quotient(b.nu());
    let idx = &b.index;
    let congs = idx.congruences();
    let mut map = Vec::with_capacity(tq.classes.len());
    for class in &tq.classes {
        let ids: BTreeSet<usize> = class
            .iter()
            .map(|&c| idx.id(b.anchors[c].0, b.anchors[c].1))
            .collect();
        if ids.len() != 1 {
            return Err(BuildError::Verification(format!(
                "Θν-equivalent colors of `{}` have different anchor congruences",
                b.nu().label(class[0])
            )));
        }
        map.push(*ids.iter().next().unwrap());
    }
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if distinct.len() != map.len() || distinct.len() != congs.len() {
        return Err(BuildError::Verification("ζ is not a bijection onto Princ".into()));
    }
    for x in 0..map.len() {
        for y in 0..map.len() {
            if tq.poset.le(x, y) != congs[map[x]].le(&congs[map[y]]) {
                return Err(BuildError::Verification(format!(
                    "ζ does not preserve the order between `{}` and `{}`",
                    tq.poset.label(x),
                    tq.poset.label(y)
                )));
            }
        }
    }
    Ok(map)
}

/// Candidate dual automorphism of a big lattice built with I = J: swaps the
/// anchors of each pair, every gadget with its downward copy, and acts on
/// the frame by its anchor-reversing dual automorphism. Verified before it
/// is returned.
pub fn selfduality_map(l: &Lattice, mnh: &Mnh) -> Option<Vec<usize>> {
    let m = &mnh.lattice;
    let delta = order_isos(m, &m.dual(), usize::MAX)
        .ok()?
        .into_iter()
        .find(|d| d[mnh.a1] == mnh.b1)?;
    let frame_dual: HashMap<&str, &str> = (0..m.len())
        .map(|x| (m.label(x), m.label(delta[x])))
        .collect();
    let image = |s: &str| -> Option<String> {
        Some(match labels::parse(s)? {
            Parsed::Bottom => "1".into(),
            Parsed::Top => "0".into(),
            Parsed::AnchorA(p) => {
                let b = labels::anchor_b(p);
                if l.index(&b).is_some() {
                    b
                } else {
                    s.to_string()
                }
            }
            Parsed::AnchorB(p) => labels::anchor_a(p),
            Parsed::Frame(_) => frame_dual.get(s)?.to_string(),
            Parsed::Gadget { .. } => {
                let (head, rest) = s.split_once(',')?;
                match head.strip_suffix('*') {
                    Some(h) => format!("{h},{rest}"),
                    None => format!("{head}*,{rest}"),
                }
            }
        })
    };
    let map: Vec<usize> = (0..l.len())
        .map(|x| image(l.label(x)).and_then(|t| l.index(&t)))
        .collect::<Option<_>>()?;
    let n = l.len();
    let mut hit = vec![false; n];
    for &y in &map {
        if std::mem::replace(&mut hit[y], true) {
            return None;
        }
    }
    let reverses = (0..n).all(|x| (0..n).all(|y| l.le(x, y) == l.le(map[y], map[x])));
    reverses.then_some(map)
}
