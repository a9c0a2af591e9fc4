//! Lifting a faithful functor into bounded posets through Princ.
//!
//! The pipeline: tag each poset so equal carriers of different posets stay
//! apart, take the image category C of the tagged maps, apply the cometic
//! functor, order each Φ(X) by the order of its projections, build
//! L(Φ(X), ν_X), and lift every Φ(f) to a lattice homomorphism.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;
use std::sync::OnceLock;

use thiserror::Error;

use crate::cometic::{
    cometic_morphism, cometic_object, is_injective, is_monomorphism, triplet_label, Category,
    CategoryError, Morphism, Object,
};
use crate::congruence::{check_homomorphism, princ_map, CongruenceError, CongruenceIndex};
use crate::gadget::{generic_projection, instantiate_label, Check, Report};
use crate::io::{
    read_json, to_canonical_json, write_json, CategoryDoc, FunctorDoc, HomDoc, IoError, PosetDoc,
    QuasiColoredDoc,
};
use crate::labels::{self, Parsed, ONE_PRIME};
use crate::nlattice::{build_lhnu, default_mnh, selfduality_map, BigLattice, BuildError};
use crate::order::{Lattice, OrderError, Poset, QuasiOrder};
use crate::quasicolor::{princ_color_iso, validate_quasicoloring, QuasiColoredLattice};

#[derive(Debug, Error)]
pub enum LiftError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("functor: {0}")]
    Functor(String),
    #[error("`{0}` is not a monomorphism")]
    NotMonomorphism(String),
    #[error("color map: {0}")]
    ColorMap(String),
    #[error("lifted data: {0}")]
    Data(String),
}

/// A functor into bounded posets: a poset per object, a map per morphism.
#[derive(Clone, Debug)]
pub struct PosetFunctor {
    pub posets: Vec<Poset>,
    pub maps: Vec<Vec<usize>>,
}

impl PosetFunctor {
    pub fn from_doc(a: &Category, doc: &FunctorDoc) -> Result<Self, LiftError> {
        let mut posets = Vec::with_capacity(a.objects.len());
        for o in &a.objects {
            let d = doc
                .objects
                .get(&o.name)
                .ok_or_else(|| LiftError::Functor(format!("no poset for object `{}`", o.name)))?;
            posets.push(d.to_poset()?);
        }
        let mut maps = Vec::with_capacity(a.morphisms.len());
        for m in &a.morphisms {
            let d = doc
                .morphisms
                .get(&m.name)
                .ok_or_else(|| LiftError::Functor(format!("no map for morphism `{}`", m.name)))?;
            let (p, q) = (&posets[m.src], &posets[m.dst]);
            if d.len() != p.len() {
                return Err(LiftError::Functor(format!("map of `{}` is not total", m.name)));
            }
            let mut map = vec![0; p.len()];
            for (x, y) in d {
                map[p.require(x)?] = q.require(y)?;
            }
            maps.push(map);
        }
        Ok(PosetFunctor { posets, maps })
    }

    pub fn to_doc(&self, a: &Category) -> FunctorDoc {
        let objects = a
            .objects
            .iter()
            .zip(&self.posets)
            .map(|(o, p)| (o.name.clone(), PosetDoc::from_poset(p)))
            .collect();
        let morphisms = a
            .morphisms
            .iter()
            .zip(&self.maps)
            .map(|(m, map)| {
                let (p, q) = (&self.posets[m.src], &self.posets[m.dst]);
                let pairs = map
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| (p.label(x).to_string(), q.label(y).to_string()))
                    .collect();
                (m.name.clone(), pairs)
            })
            .collect();
        FunctorDoc { objects, morphisms }
    }

    /// The inclusion of a category whose objects are the given posets.
    pub fn inclusion(a: &Category, posets: Vec<Poset>) -> Self {
        let maps = a
            .morphisms
            .iter()
            .map(|m| {
                let (s, d) = (&a.objects[m.src], &a.objects[m.dst]);
                let (p, q) = (&posets[m.src], &posets[m.dst]);
                (0..p.len())
                    .map(|x| {
                        let e = &d.elements[m.map[s.index(p.label(x)).expect("same carrier")]];
                        q.index(e).expect("same carrier")
                    })
                    .collect()
            })
            .collect();
        PosetFunctor { posets, maps }
    }

    /// Faithful and injective on objects.
    pub fn is_totally_faithful(&self, a: &Category) -> bool {
        let n = a.objects.len();
        let distinct = (0..n).all(|x| (x + 1..n).all(|y| self.posets[x] != self.posets[y]));
        distinct && faithful_maps(a, &self.maps)
    }
}

fn faithful_maps(a: &Category, maps: &[Vec<usize>]) -> bool {
    let mut seen = BTreeSet::new();
    a.morphisms
        .iter()
        .zip(maps)
        .all(|(m, map)| seen.insert((m.src, m.dst, map.clone())))
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

/// Input requirements: every morphism of `a` is mono, and `f` is a faithful
/// functor into bounded posets with 0 ≠ 1 and {0,1}-preserving monotone maps.
pub fn validate_poset_functor(a: &Category, f: &PosetFunctor) -> Report {
    let mut r = crate::cometic::validate_category(a);
    let not_mono: Vec<&str> = (0..a.morphisms.len())
        .filter(|&k| !is_monomorphism(a, k))
        .map(|k| a.morphisms[k].name.as_str())
        .collect();
    r.checks.push(check("all morphisms mono", not_mono.is_empty(), not_mono.join(" ")));
    let trivial: Vec<&str> = (0..a.objects.len())
        .filter(|&x| !f.posets[x].is_bounded() || f.posets[x].len() < 2)
        .map(|x| a.objects[x].name.as_str())
        .collect();
    r.checks.push(check("bounded posets with 0 ≠ 1", trivial.is_empty(), trivial.join(" ")));
    let bad: Vec<&str> = a
        .morphisms
        .iter()
        .zip(&f.maps)
        .filter(|(m, map)| {
            let (p, q) = (&f.posets[m.src], &f.posets[m.dst]);
            let mono = (0..p.len()).all(|x| p.up_set(x).ones().all(|y| q.le(map[x], map[y])));
            let ends = p.bottom().map(|b| Some(map[b]) == q.bottom()).unwrap_or(false)
                && p.top().map(|t| Some(map[t]) == q.top()).unwrap_or(false);
            !(mono && ends)
        })
        .map(|(m, _)| m.name.as_str())
        .collect();
    r.checks.push(check("{0,1}-preserving monotone maps", bad.is_empty(), bad.join(" ")));
    let ids: Vec<&str> = (0..a.objects.len())
        .filter(|&x| match a.identity(x) {
            Some(i) => f.maps[i].iter().enumerate().any(|(e, &y)| e != y),
            None => true,
        })
        .map(|x| a.objects[x].name.as_str())
        .collect();
    r.checks.push(check("preserves identities", ids.is_empty(), ids.join(" ")));
    let mut broken = Vec::new();
    for g in 0..a.morphisms.len() {
        for h in 0..a.morphisms.len() {
            if a.morphisms[h].dst != a.morphisms[g].src {
                continue;
            }
            let ok = match a.compose(g, h) {
                Ok(gh) => f.maps[h].iter().map(|&y| f.maps[g][y]).eq(f.maps[gh].iter().copied()),
                Err(_) => false,
            };
            if !ok {
                broken.push(format!("{}∘{}", a.morphisms[g].name, a.morphisms[h].name));
            }
        }
    }
    r.checks.push(check("preserves composition", broken.is_empty(), broken.join(" ")));
    r.checks.push(check("faithful", faithful_maps(a, &f.maps), String::new()));
    r
}

/// Distinct posets of a functor, sorted by canonical document; the tag of
/// the k-th is `P{k}`.
pub fn poset_tags(f: &PosetFunctor) -> (Vec<String>, Vec<usize>) {
    let keys: Vec<String> = f
        .posets
        .iter()
        .map(|p| to_canonical_json(&PosetDoc::from_poset(p)))
        .collect();
    let distinct: BTreeSet<&String> = keys.iter().collect();
    let pos: HashMap<&String, usize> = distinct.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let tags = (0..distinct.len()).map(|i| format!("P{i}")).collect();
    let object_tag = keys.iter().map(|k| pos[k]).collect();
    (tags, object_tag)
}

pub fn tagged(x: &str, tag: &str) -> String {
    format!("{x}@{tag}")
}

/// The category of tagged carriers and tagged maps, closed under composition.
///
/// Returns C and, for each morphism of `a`, its image in C.
pub fn image_category(
    a: &Category,
    f: &PosetFunctor,
    tags: &[String],
    object_tag: &[usize],
) -> Result<(Category, Vec<usize>), LiftError> {
    let mut rep: Vec<&Poset> = vec![&f.posets[0]; tags.len()];
    for (x, &t) in object_tag.iter().enumerate() {
        rep[t] = &f.posets[x];
    }
    let objects: Vec<Object> = tags
        .iter()
        .zip(&rep)
        .map(|(t, p)| Object::new(t, p.labels().iter().map(|x| tagged(x, t)).collect()))
        .collect::<Result<_, _>>()?;
    let mut keys: BTreeSet<(usize, usize, Vec<usize>)> = a
        .morphisms
        .iter()
        .zip(&f.maps)
        .map(|(m, map)| (object_tag[m.src], object_tag[m.dst], map.clone()))
        .collect();
    // distinct objects of A may share a poset; their maps then compose in C
    // even when the corresponding morphisms do not compose in A
    loop {
        let mut added = Vec::new();
        for (gs, gd, gm) in &keys {
            for (hs, hd, hm) in &keys {
                if hd == gs {
                    let key = (*hs, *gd, hm.iter().map(|&y| gm[y]).collect::<Vec<_>>());
                    if !keys.contains(&key) {
                        added.push(key);
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        keys.extend(added);
    }
    // canonical names keep user spelling out of the triplet colors
    let mut counter: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let morphisms: Vec<Morphism> = keys
        .into_iter()
        .map(|(src, dst, map)| {
            let identity = src == dst && map.iter().enumerate().all(|(x, &y)| x == y);
            let name = if identity {
                format!("1_{}", tags[src])
            } else {
                let k = counter.entry((src, dst)).or_insert(0);
                *k += 1;
                format!("{}~{}#{}", tags[src], tags[dst], *k - 1)
            };
            Morphism { name, src, dst, map }
        })
        .collect();
    let c = Category::new(objects, morphisms)?;
    let g = a
        .morphisms
        .iter()
        .zip(&f.maps)
        .map(|(m, map)| {
            c.find(object_tag[m.src], object_tag[m.dst], map)
                .expect("image morphism present")
        })
        .collect();
    Ok((c, g))
}

/// ν on Φ(X): triplets ordered by the order of their third components.
pub fn triplet_quasiorder(c: &Category, x: usize, p: &Poset) -> Result<QuasiOrder, LiftError> {
    let phi = cometic_object(c, x);
    let labels: Vec<String> = phi.iter().map(|&t| triplet_label(c, t)).collect();
    let mut seed = Vec::new();
    for (i, s) in phi.iter().enumerate() {
        for (j, t) in phi.iter().enumerate() {
            if p.le(s.y, t.y) {
                seed.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Ok(QuasiOrder::closure(&labels, &seed)?)
}

struct Projections {
    /// generic rank-2 gadget labels
    g2: Lattice,
    /// rank → label of the image of each rank-2 element
    image: [Vec<String>; 3],
}

fn projections() -> &'static Projections {
    static P: OnceLock<Projections> = OnceLock::new();
    P.get_or_init(|| {
        let image = [0u8, 1, 2].map(|j| {
            let (g, proj) = generic_projection(j).expect("shipped gadget");
            proj.iter().map(|&k| g.lattice.label(k).to_string()).collect()
        });
        Projections {
            g2: generic_projection(2).expect("shipped gadget").0.lattice,
            image,
        }
    })
}

/// Checks that `f` (color index map) is injective, monotone, and keeps Z and U.
fn check_color_map(n1: &BigLattice, n2: &BigLattice, f: &[usize]) -> Result<(), LiftError> {
    let (h1, h2) = (n1.nu(), n2.nu());
    if f.len() != h1.len() || f.iter().any(|&y| y >= h2.len()) {
        return Err(LiftError::ColorMap("map is not total into the colors".into()));
    }
    if !is_injective(f) {
        return Err(LiftError::ColorMap("map is not injective".into()));
    }
    for (x, y) in h1.pairs() {
        if !h2.le(f[x], f[y]) {
            return Err(LiftError::ColorMap(format!(
                "map is not monotone at `{}` ≤ `{}`",
                h1.label(x),
                h1.label(y)
            )));
        }
    }
    for p in 0..h1.len() {
        let (s, t) = (h1.label(p), h2.label(f[p]));
        if n1.universe.z.contains(s) && !n2.universe.z.contains(t) {
            return Err(LiftError::ColorMap(format!("`{s}` is least but `{t}` is not")));
        }
        if n1.universe.u.contains(s) && !n2.universe.u.contains(t) {
            return Err(LiftError::ColorMap(format!("`{s}` is greatest but `{t}` is not")));
        }
    }
    Ok(())
}

/// The {0,1}-homomorphism `L(H1,ν1) → L(H2,ν2)` with `a_p ↦ a_f(p)` and
/// `b_p ↦ b_f(p)`, for an injective monotone color map keeping Z and U.
///
/// The frame is fixed, anchors follow `f`, and each gadget goes to the
/// gadget of the image pair through the projection between ranks.
pub fn hom_lift(n1: &BigLattice, n2: &BigLattice, f: &[usize]) -> Result<Vec<usize>, LiftError> {
    check_color_map(n1, n2, f)?;
    let (h1, h2) = (n1.nu(), n2.nu());
    let color = |p: &str| -> Result<String, LiftError> {
        let i = h1
            .index(p)
            .ok_or_else(|| LiftError::Data(format!("unknown color `{p}`")))?;
        Ok(h2.label(f[i]).to_string())
    };
    let pr = projections();
    let (l1, l2) = (n1.lattice(), n2.lattice());
    let mut map = Vec::with_capacity(l1.len());
    for s in l1.labels() {
        let parsed =
            labels::parse(s).ok_or_else(|| LiftError::Data(format!("unstructured label `{s}`")))?;
        let target = match parsed {
            Parsed::Bottom | Parsed::Top | Parsed::Frame(_) => s.clone(),
            Parsed::AnchorA(p) => labels::anchor_a(&color(p)?),
            Parsed::AnchorB(p) => {
                let fp = color(p)?;
                if n2.universe.z.contains(&fp) {
                    labels::anchor_a(&fp)
                } else {
                    labels::anchor_b(&fp)
                }
            }
            Parsed::Gadget {
                kind,
                dual,
                p,
                q,
                idx,
                rank,
            } => {
                let base = format!("{kind}{}", idx.unwrap_or(""));
                let fq = color(q)?;
                if p == ONE_PRIME {
                    labels::gadget(&base, dual, p, &fq, 2)
                } else {
                    let fp = color(p)?;
                    let j2 = n2.universe.rank(&fp, &fq);
                    let k = pr
                        .g2
                        .index(&base)
                        .ok_or_else(|| LiftError::Data(format!("`{s}` has rank {rank}")))?;
                    instantiate_label(&pr.image[j2 as usize][k], dual, &fp, &fq, j2)
                }
            }
        };
        let y = l2
            .index(&target)
            .ok_or_else(|| LiftError::Data(format!("image `{target}` of `{s}` is missing")))?;
        map.push(y);
    }
    check_homomorphism(l1, l2, &map)?;
    Ok(map)
}

/// All {0,1}-homomorphisms `l1 → l2` agreeing with `fixed`, up to `limit`.
///
/// Backtracking in order of height; every join and meet among assigned
/// elements is checked as soon as its three elements are assigned.
pub fn constrained_homomorphisms(
    l1: &Lattice,
    l2: &Lattice,
    fixed: &[(usize, usize)],
    limit: usize,
) -> Vec<Vec<usize>> {
    let n = l1.len();
    let mut forced = vec![None; n];
    forced[l1.bottom()] = Some(l2.bottom());
    forced[l1.top()] = Some(l2.top());
    for &(x, y) in fixed {
        forced[x] = Some(y);
    }
    let mut seq: Vec<usize> = (0..n).collect();
    seq.sort_by_key(|&x| (forced[x].is_none(), l1.height(x), x));
    let mut pos = vec![0; n];
    for (k, &x) in seq.iter().enumerate() {
        pos[x] = k;
    }
    // pairs whose join or meet is x, to check when the last of the three lands
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    struct Ctx<'a> {
        l1: &'a Lattice,
        l2: &'a Lattice,
        seq: &'a [usize],
        pos: &'a [usize],
        forced: &'a [Option<usize>],
        limit: usize,
    }
    fn consistent(c: &Ctx, map: &[usize], k: usize) -> bool {
        let x = c.seq[k];
        let y = map[x];
        for &w in &c.seq[..k] {
            let v = map[w];
            if c.l1.le(w, x) && !c.l2.le(v, y) || c.l1.le(x, w) && !c.l2.le(y, v) {
                return false;
            }
            let j = c.l1.join(x, w);
            if c.pos[j] <= k && map[j] != c.l2.join(y, v) {
                return false;
            }
            let m = c.l1.meet(x, w);
            if c.pos[m] <= k && map[m] != c.l2.meet(y, v) {
                return false;
            }
        }
        for (i, &w1) in c.seq[..k].iter().enumerate() {
            for &w2 in &c.seq[i + 1..k] {
                if c.l1.join(w1, w2) == x && c.l2.join(map[w1], map[w2]) != y {
                    return false;
                }
                if c.l1.meet(w1, w2) == x && c.l2.meet(map[w1], map[w2]) != y {
                    return false;
                }
            }
        }
        true
    }
    fn go(c: &Ctx, k: usize, map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if out.len() >= c.limit {
            return;
        }
        if k == c.seq.len() {
            out.push(map.clone());
            return;
        }
        let x = c.seq[k];
        let cands: Vec<usize> = match c.forced[x] {
            Some(y) => vec![y],
            None => (0..c.l2.len()).collect(),
        };
        for y in cands {
            map[x] = y;
            if consistent(c, map, k) {
                go(c, k + 1, map, out);
            }
            map[x] = usize::MAX;
        }
    }
    let ctx = Ctx {
        l1,
        l2,
        seq: &seq,
        pos: &pos,
        forced: &forced,
        limit,
    };
    go(&ctx, 0, &mut map, &mut out);
    out
}

/// The constraints that pin a lifted homomorphism: anchors follow the color
/// map and the marked frame elements stay put.
pub fn lift_constraints(n1: &BigLattice, n2: &BigLattice, f: &[usize]) -> Vec<(usize, usize)> {
    let mut fixed = Vec::new();
    for (p, &(a, b)) in n1.anchors.iter().enumerate() {
        let (a2, b2) = n2.anchors[f[p]];
        fixed.push((a, a2));
        fixed.push((b, b2));
    }
    let mnh = default_mnh();
    let (l1, l2) = (n1.lattice(), n2.lattice());
    for &m in &mnh.marked {
        let s = mnh.lattice.label(m);
        if let (Some(x), Some(y)) = (l1.index(s), l2.index(s)) {
            fixed.push((x, y));
        }
    }
    fixed
}

/// The lifted functor together with everything needed to check it.
#[derive(Clone, Debug)]
pub struct Lifted {
    pub category: Category,
    pub functor: PosetFunctor,
    /// one lattice per tag
    pub tags: Vec<String>,
    pub lattices: Vec<QuasiColoredLattice>,
    pub indexes: Vec<CongruenceIndex>,
    pub object_lattice: Vec<usize>,
    /// L(f) per morphism of the category
    pub homs: Vec<Vec<usize>>,
    /// τ_X: element of F(X) ↦ congruence id of its lattice
    pub tau: Vec<Vec<usize>>,
    /// the image category, when built in memory
    pub image: Option<Category>,
}

pub fn lift_functor(a: &Category, f: &PosetFunctor) -> Result<Lifted, LiftError> {
    let report = validate_poset_functor(a, f);
    if !report.passed() {
        let why: Vec<String> = report
            .failures()
            .iter()
            .map(|c| format!("{} {}", c.name, c.detail))
            .collect();
        return Err(LiftError::Functor(why.join("; ")));
    }
    let (tags, object_tag) = poset_tags(f);
    let (c, g) = image_category(a, f, &tags, &object_tag)?;
    if let Some(k) = (0..c.morphisms.len()).find(|&k| !is_monomorphism(&c, k)) {
        return Err(LiftError::NotMonomorphism(c.morphisms[k].name.clone()));
    }
    let mut rep = vec![0; tags.len()];
    for (x, &t) in object_tag.iter().enumerate() {
        rep[t] = x;
    }
    let mut bigs = Vec::with_capacity(tags.len());
    for (t, &x) in rep.iter().enumerate() {
        let nu = triplet_quasiorder(&c, t, &f.posets[x])?;
        bigs.push(build_lhnu(&nu)?);
    }
    let mut homs = Vec::with_capacity(a.morphisms.len());
    for (k, m) in a.morphisms.iter().enumerate() {
        let (s, d) = (object_tag[m.src], object_tag[m.dst]);
        let phi = cometic_morphism(&c, g[k])?;
        // Φ positions → color indices, by label
        let src_phi = cometic_object(&c, s);
        let dst_phi = cometic_object(&c, d);
        let (h1, h2) = (bigs[s].nu(), bigs[d].nu());
        let mut colors = vec![0; h1.len()];
        for (i, &t) in src_phi.iter().enumerate() {
            let from = h1.index(&triplet_label(&c, t)).expect("triplet color");
            let to = h2.index(&triplet_label(&c, dst_phi[phi[i]])).expect("triplet color");
            colors[from] = to;
        }
        homs.push(hom_lift(&bigs[s], &bigs[d], &colors)?);
    }
    let mut tau = Vec::with_capacity(a.objects.len());
    for (x, &t) in object_tag.iter().enumerate() {
        let id = c.identity(t).expect("identities in the image");
        let big = &bigs[t];
        let p = &f.posets[x];
        let comp = (0..p.len())
            .map(|e| {
                let e_t = c.objects[t].index(&tagged(p.label(e), &tags[t])).expect("tagged");
                let label = triplet_label(
                    &c,
                    crate::cometic::Triplet {
                        f: id,
                        x: e_t,
                        y: e_t,
                    },
                );
                let (a_, b_) = big.anchor(&label).expect("anchor of every color");
                big.index.id(a_, b_)
            })
            .collect();
        tau.push(comp);
    }
    let (lattices, indexes) = bigs.into_iter().map(|b| (b.colored, b.index)).unzip();
    Ok(Lifted {
        category: a.clone(),
        functor: f.clone(),
        tags,
        lattices,
        indexes,
        object_lattice: object_tag,
        homs,
        tau,
        image: Some(c),
    })
}

/// Every property the lifted functor must have.
pub fn verify_lifting(l: &Lifted) -> Report {
    let a = &l.category;
    let mut r = validate_poset_functor(a, &l.functor);
    let mnh = default_mnh();
    for (t, (q, idx)) in l.tags.iter().zip(l.lattices.iter().zip(&l.indexes)) {
        let lat = &q.lattice;
        let coloring = validate_quasicoloring(q, idx);
        r.checks.push(check(
            &format!("L({t}) quasi-coloring"),
            coloring.is_valid(),
            format!("{} violations", coloring.violations.len()),
        ));
        r.checks.push(check(
            &format!("L({t}) length 5"),
            lat.length() == 5,
            format!("length {}", lat.length()),
        ));
        r.checks.push(check(
            &format!("L({t}) selfdual"),
            selfduality_map(lat, &mnh).is_some(),
            String::new(),
        ));
        let iso = princ_color_iso(q, idx);
        r.checks.push(check(
            &format!("L({t}) Princ ≅ colors/Θ"),
            iso.is_ok(),
            iso.err().map(|e| e.to_string()).unwrap_or_default(),
        ));
    }
    let lat_of = |x: usize| &l.lattices[l.object_lattice[x]].lattice;
    let not_hom: Vec<String> = a
        .morphisms
        .iter()
        .zip(&l.homs)
        .filter(|(m, h)| check_homomorphism(lat_of(m.src), lat_of(m.dst), h).is_err())
        .map(|(m, _)| m.name.clone())
        .collect();
    r.checks.push(check("L(f) are {0,1}-homomorphisms", not_hom.is_empty(), not_hom.join(" ")));
    if !not_hom.is_empty() {
        return r;
    }
    let ids: Vec<&str> = (0..a.objects.len())
        .filter(|&x| match a.identity(x) {
            Some(i) => l.homs[i].iter().enumerate().any(|(e, &y)| e != y),
            None => true,
        })
        .map(|x| a.objects[x].name.as_str())
        .collect();
    r.checks.push(check("L preserves identities", ids.is_empty(), ids.join(" ")));
    let mut broken = Vec::new();
    for g in 0..a.morphisms.len() {
        for h in 0..a.morphisms.len() {
            if a.morphisms[h].dst != a.morphisms[g].src {
                continue;
            }
            let ok = a.compose(g, h).is_ok_and(|gh| {
                l.homs[h].iter().map(|&y| l.homs[g][y]).eq(l.homs[gh].iter().copied())
            });
            if !ok {
                broken.push(format!("{}∘{}", a.morphisms[g].name, a.morphisms[h].name));
            }
        }
    }
    r.checks.push(check("L preserves composition", broken.is_empty(), broken.join(" ")));
    let mut not_iso = Vec::new();
    for (x, o) in a.objects.iter().enumerate() {
        let p = &l.functor.posets[x];
        let congs = l.indexes[l.object_lattice[x]].congruences();
        let t = &l.tau[x];
        let onto = t.len() == congs.len() && is_injective(t);
        let bimonotone = (0..p.len()).all(|u| (0..p.len()).all(|v| p.le(u, v) == congs[t[u]].le(&congs[t[v]])));
        if !(onto && bimonotone) {
            not_iso.push(o.name.clone());
        }
    }
    r.checks.push(check("τ components are order isomorphisms", not_iso.is_empty(), not_iso.join(" ")));
    let mut unnatural = Vec::new();
    for (k, m) in a.morphisms.iter().enumerate() {
        let (s, d) = (l.object_lattice[m.src], l.object_lattice[m.dst]);
        let ok = match princ_map(&l.lattices[s].lattice, &l.indexes[s], &l.indexes[d], &l.homs[k]) {
            Ok(h) => (0..l.functor.posets[m.src].len())
                .all(|p| l.tau[m.dst][l.functor.maps[k][p]] == h[l.tau[m.src][p]]),
            Err(_) => false,
        };
        if !ok {
            unnatural.push(m.name.clone());
        }
    }
    r.checks.push(check("τ natural", unnatural.is_empty(), unnatural.join(" ")));
    let keys: Vec<(usize, usize, &Vec<usize>)> = a
        .morphisms
        .iter()
        .zip(&l.homs)
        .map(|(m, h)| (l.object_lattice[m.src], l.object_lattice[m.dst], h))
        .collect();
    let mut faithful = true;
    let mut total = true;
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if keys[i] == keys[j] {
                total = false;
                let (mi, mj) = (&a.morphisms[i], &a.morphisms[j]);
                if mi.src == mj.src && mi.dst == mj.dst {
                    faithful = false;
                }
            }
        }
    }
    let objs: BTreeSet<usize> = l.object_lattice.iter().copied().collect();
    total &= objs.len() == a.objects.len();
    r.checks.push(check("L faithful", faithful, String::new()));
    let needed = l.functor.is_totally_faithful(a);
    r.checks.push(check(
        "L totally faithful when F is",
        !needed || total,
        format!("F totally faithful: {needed}, L totally faithful: {total}"),
    ));
    r
}

/// `lifted.json`: everything but the lattices and homomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct LiftedDoc {
    pub category: CategoryDoc,
    pub functor: FunctorDoc,
    /// object ↦ tag of its lattice
    pub objects: BTreeMap<String, String>,
    /// object ↦ element ↦ a pair generating τ(element)
    pub tau: BTreeMap<String, BTreeMap<String, (String, String)>>,
}

const MANIFEST: &str = "lifted.json";
const IMAGE: &str = "image.json";
const LATTICES: &str = "lattices";
const HOMS: &str = "homs";

/// File name for an object or morphism name; `/` and `%` are escaped.
pub fn file_name(name: &str) -> String {
    let mut s = String::with_capacity(name.len() + 5);
    for ch in name.chars() {
        match ch {
            '%' => s.push_str("%25"),
            '/' => s.push_str("%2F"),
            '\\' => s.push_str("%5C"),
            c => s.push(c),
        }
    }
    s.push_str(".json");
    s
}

/// `dir/lifted.json`, `dir/image.json`, `dir/lattices/<object>.json` and
/// `dir/homs/<morphism>.json`.
pub fn write_lifted(dir: &Path, l: &Lifted) -> Result<(), LiftError> {
    let a = &l.category;
    let objects = a
        .objects
        .iter()
        .zip(&l.object_lattice)
        .map(|(o, &t)| (o.name.clone(), l.tags[t].clone()))
        .collect();
    let tau = a
        .objects
        .iter()
        .enumerate()
        .map(|(x, o)| {
            let t = l.object_lattice[x];
            let (lat, idx) = (&l.lattices[t].lattice, &l.indexes[t]);
            let p = &l.functor.posets[x];
            let comp = (0..p.len())
                .map(|e| {
                    let (u, v) = idx.witness(l.tau[x][e]);
                    (p.label(e).to_string(), (lat.label(u).to_string(), lat.label(v).to_string()))
                })
                .collect();
            (o.name.clone(), comp)
        })
        .collect();
    let doc = LiftedDoc {
        category: a.to_doc(),
        functor: l.functor.to_doc(a),
        objects,
        tau,
    };
    write_json(&dir.join(MANIFEST), &doc)?;
    if let Some(c) = &l.image {
        write_json(&dir.join(IMAGE), &c.to_doc())?;
    }
    for (o, &t) in a.objects.iter().zip(&l.object_lattice) {
        let q = &l.lattices[t];
        let doc = QuasiColoredDoc {
            lattice: PosetDoc::from_poset(&q.lattice),
            colors: PosetDoc::from_quasiorder(&q.colors),
            gamma: q.gamma_labels(),
        };
        write_json(&dir.join(LATTICES).join(file_name(&o.name)), &doc)?;
    }
    for (m, h) in a.morphisms.iter().zip(&l.homs) {
        let (ls, ld) = (
            &l.lattices[l.object_lattice[m.src]].lattice,
            &l.lattices[l.object_lattice[m.dst]].lattice,
        );
        let doc = HomDoc {
            src: a.objects[m.src].name.clone(),
            dst: a.objects[m.dst].name.clone(),
            map: h
                .iter()
                .enumerate()
                .map(|(x, &y)| (ls.label(x).to_string(), ld.label(y).to_string()))
                .collect(),
        };
        write_json(&dir.join(HOMS).join(file_name(&m.name)), &doc)?;
    }
    Ok(())
}

pub fn read_lifted(dir: &Path) -> Result<Lifted, LiftError> {
    let doc: LiftedDoc = read_json(&dir.join(MANIFEST))?;
    let a = Category::from_doc(&doc.category)?;
    let functor = PosetFunctor::from_doc(&a, &doc.functor)?;
    let tags: Vec<String> = doc
        .objects
        .values()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let object_lattice = a
        .objects
        .iter()
        .map(|o| {
            let t = doc
                .objects
                .get(&o.name)
                .ok_or_else(|| LiftError::Data(format!("no lattice for `{}`", o.name)))?;
            Ok(tags.iter().position(|s| s == t).expect("tag collected above"))
        })
        .collect::<Result<Vec<_>, LiftError>>()?;
    let mut lattices: Vec<Option<QuasiColoredLattice>> = vec![None; tags.len()];
    for (o, &t) in a.objects.iter().zip(&object_lattice) {
        let q: QuasiColoredDoc = read_json(&dir.join(LATTICES).join(file_name(&o.name)))?;
        let lat = q.lattice.to_lattice()?;
        let colors = q.colors.to_quasiorder()?;
        let colored = QuasiColoredLattice::new(lat, colors, &q.gamma)
            .map_err(|e| LiftError::Data(e.to_string()))?;
        match &lattices[t] {
            None => lattices[t] = Some(colored),
            Some(prev) => {
                if prev.lattice != colored.lattice || prev.gamma_labels() != colored.gamma_labels() {
                    return Err(LiftError::Data(format!(
                        "objects tagged `{}` have different lattices",
                        tags[t]
                    )));
                }
            }
        }
    }
    let lattices: Vec<QuasiColoredLattice> = lattices.into_iter().map(|q| q.expect("every tag used")).collect();
    let indexes: Vec<CongruenceIndex> = lattices.iter().map(|q| CongruenceIndex::new(&q.lattice)).collect();
    let mut homs = Vec::with_capacity(a.morphisms.len());
    for m in &a.morphisms {
        let h: HomDoc = read_json(&dir.join(HOMS).join(file_name(&m.name)))?;
        if h.src != a.objects[m.src].name || h.dst != a.objects[m.dst].name {
            return Err(LiftError::Data(format!("`{}` has the wrong endpoints", m.name)));
        }
        let (s, d) = (object_lattice[m.src], object_lattice[m.dst]);
        let (ls, ld) = (&lattices[s].lattice, &lattices[d].lattice);
        if h.map.len() != ls.len() {
            return Err(LiftError::Data(format!("`{}` is not total", m.name)));
        }
        let mut map = vec![0; ls.len()];
        for (x, y) in &h.map {
            map[ls.require(x)?] = ld.require(y)?;
        }
        homs.push(map);
    }
    let mut tau = Vec::with_capacity(a.objects.len());
    for (x, o) in a.objects.iter().enumerate() {
        let comp = doc
            .tau
            .get(&o.name)
            .ok_or_else(|| LiftError::Data(format!("no τ component for `{}`", o.name)))?;
        let t = object_lattice[x];
        let (lat, idx) = (&lattices[t].lattice, &indexes[t]);
        let p = &functor.posets[x];
        let mut ids = vec![0; p.len()];
        if comp.len() != p.len() {
            return Err(LiftError::Data(format!("τ component of `{}` is not total", o.name)));
        }
        for (e, (u, v)) in comp {
            let (u, v) = (lat.require(u)?, lat.require(v)?);
            ids[p.require(e)?] = idx.id(u, v);
        }
        tau.push(ids);
    }
    let image_path = dir.join(IMAGE);
    let image = if image_path.exists() {
        Some(Category::from_doc(&read_json(&image_path)?)?)
    } else {
        None
    };
    Ok(Lifted {
        category: a,
        functor,
        tags,
        lattices,
        indexes,
        object_lattice,
        homs,
        tau,
        image,
    })
}
