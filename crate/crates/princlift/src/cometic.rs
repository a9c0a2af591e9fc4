//! Small concrete categories, functors between them, and the cometic
//! functor Φ with its projection π.
//!
//! Φ(Y) is the set of eligible triplets `[f;x;y]` (a morphism `f` into `Y`,
//! an element `x` of its domain, `y = f(x)`), and Φ(g) sends `[f;x;y]` to
//! `[g∘f;x;g(y)]`.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::gadget::{Check, Report};
use crate::io::{CategoryDoc, MorphismDoc};
use crate::order::Poset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism name `{0}`")]
    DuplicateMorphism(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("morphism `{name}`: {msg}")]
    BadMap { name: String, msg: String },
    #[error("composite `{g}` ∘ `{f}` is not a morphism of the category")]
    NotClosed { g: String, f: String },
    #[error("`{g}` ∘ `{f}` is not composable")]
    NotComposable { g: String, f: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Object {
    pub name: String,
    pub elements: Vec<String>,
    index: HashMap<String, usize>,
}

impl Object {
    pub fn new(name: &str, elements: Vec<String>) -> Result<Self, CategoryError> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(CategoryError::BadMap {
                    name: name.into(),
                    msg: format!("element `{e}` listed twice"),
                });
            }
        }
        Ok(Object {
            name: name.into(),
            elements,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index(&self, e: &str) -> Option<usize> {
        self.index.get(e).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub dst: usize,
    /// element index of `src` ↦ element index of `dst`
    pub map: Vec<usize>,
}

/// Objects are finite sets, morphisms are named maps; a morphism is
/// identified by its homset and its map.
#[derive(Clone, Debug)]
pub struct Category {
    pub objects: Vec<Object>,
    pub morphisms: Vec<Morphism>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
    by_map: HashMap<(usize, usize, Vec<usize>), usize>,
}

impl Category {
    pub fn new(objects: Vec<Object>, morphisms: Vec<Morphism>) -> Result<Self, CategoryError> {
        let mut object_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.name.clone(), i).is_some() {
                return Err(CategoryError::DuplicateObject(o.name.clone()));
            }
        }
        let mut morphism_index = HashMap::new();
        let mut by_map = HashMap::new();
        for (k, m) in morphisms.iter().enumerate() {
            if morphism_index.insert(m.name.clone(), k).is_some() {
                return Err(CategoryError::DuplicateMorphism(m.name.clone()));
            }
            let (s, d) = (&objects[m.src], &objects[m.dst]);
            if m.map.len() != s.len() || m.map.iter().any(|&y| y >= d.len()) {
                return Err(CategoryError::BadMap {
                    name: m.name.clone(),
                    msg: "map is not total into the target".into(),
                });
            }
            // a second name for the same map in the same homset is kept out
            // of the lookup; validation reports it
            by_map.entry((m.src, m.dst, m.map.clone())).or_insert(k);
        }
        Ok(Category {
            objects,
            morphisms,
            object_index,
            morphism_index,
            by_map,
        })
    }

    pub fn from_doc(doc: &CategoryDoc) -> Result<Self, CategoryError> {
        let objects: Vec<Object> = doc
            .objects
            .iter()
            .map(|(n, els)| Object::new(n, els.clone()))
            .collect::<Result<_, _>>()?;
        let at: HashMap<&str, usize> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.name.as_str(), i))
            .collect();
        let mut morphisms = Vec::new();
        for m in &doc.morphisms {
            let src = *at
                .get(m.src.as_str())
                .ok_or_else(|| CategoryError::UnknownObject(m.src.clone()))?;
            let dst = *at
                .get(m.dst.as_str())
                .ok_or_else(|| CategoryError::UnknownObject(m.dst.clone()))?;
            let (s, d) = (&objects[src], &objects[dst]);
            let bad = |msg: String| CategoryError::BadMap {
                name: m.name.clone(),
                msg,
            };
            if m.map.len() != s.len() {
                return Err(bad(format!("map covers {} of {} elements", m.map.len(), s.len())));
            }
            let mut map = vec![0; s.len()];
            for (x, y) in &m.map {
                let xi = s.index(x).ok_or_else(|| bad(format!("`{x}` is not in `{}`", s.name)))?;
                let yi = d.index(y).ok_or_else(|| bad(format!("`{y}` is not in `{}`", d.name)))?;
                map[xi] = yi;
            }
            morphisms.push(Morphism {
                name: m.name.clone(),
                src,
                dst,
                map,
            });
        }
        Category::new(objects, morphisms)
    }

    pub fn to_doc(&self) -> CategoryDoc {
        let objects = self
            .objects
            .iter()
            .map(|o| {
                let mut els = o.elements.clone();
                els.sort();
                (o.name.clone(), els)
            })
            .collect();
        let mut morphisms: Vec<MorphismDoc> = self
            .morphisms
            .iter()
            .map(|m| {
                let (s, d) = (&self.objects[m.src], &self.objects[m.dst]);
                MorphismDoc {
                    name: m.name.clone(),
                    src: s.name.clone(),
                    dst: d.name.clone(),
                    map: m
                        .map
                        .iter()
                        .enumerate()
                        .map(|(x, &y)| (s.elements[x].clone(), d.elements[y].clone()))
                        .collect(),
                }
            })
            .collect();
        morphisms.sort_by(|a, b| a.name.cmp(&b.name));
        CategoryDoc { objects, morphisms }
    }

    pub fn object(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn morphism(&self, name: &str) -> Option<usize> {
        self.morphism_index.get(name).copied()
    }

    /// Morphisms `x → y`, in declaration order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&k| self.morphisms[k].src == x && self.morphisms[k].dst == y)
            .collect()
    }

    /// The morphism with the given homset and map, if named.
    pub fn find(&self, src: usize, dst: usize, map: &[usize]) -> Option<usize> {
        self.by_map.get(&(src, dst, map.to_vec())).copied()
    }

    pub fn identity(&self, x: usize) -> Option<usize> {
        let id: Vec<usize> = (0..self.objects[x].len()).collect();
        self.find(x, x, &id)
    }

    /// `g ∘ f` (first `f`, then `g`).
    pub fn compose(&self, g: usize, f: usize) -> Result<usize, CategoryError> {
        let (mg, mf) = (&self.morphisms[g], &self.morphisms[f]);
        if mf.dst != mg.src {
            return Err(CategoryError::NotComposable {
                g: mg.name.clone(),
                f: mf.name.clone(),
            });
        }
        let map: Vec<usize> = mf.map.iter().map(|&y| mg.map[y]).collect();
        self.find(mf.src, mg.dst, &map)
            .ok_or_else(|| CategoryError::NotClosed {
                g: mg.name.clone(),
                f: mf.name.clone(),
            })
    }

    fn map_name(&self, k: usize) -> &str {
        &self.morphisms[k].name
    }
}

/// Identities, closure under composition, one name per map in each homset.
pub fn validate_category(c: &Category) -> Report {
    let mut r = Report::default();
    let missing: Vec<&str> = (0..c.objects.len())
        .filter(|&x| c.identity(x).is_none())
        .map(|x| c.objects[x].name.as_str())
        .collect();
    r.checks.push(check("identities", missing.is_empty(), missing.join(" ")));
    let mut open = Vec::new();
    for g in 0..c.morphisms.len() {
        for f in 0..c.morphisms.len() {
            if c.morphisms[f].dst == c.morphisms[g].src && c.compose(g, f).is_err() {
                open.push(format!("{}∘{}", c.map_name(g), c.map_name(f)));
            }
        }
    }
    r.checks.push(check("closed under composition", open.is_empty(), open.join(" ")));
    let dup: Vec<&str> = (0..c.morphisms.len())
        .filter(|&k| {
            let m = &c.morphisms[k];
            c.find(m.src, m.dst, &m.map) != Some(k)
        })
        .map(|k| c.map_name(k))
        .collect();
    r.checks.push(check("one name per map", dup.is_empty(), dup.join(" ")));
    r
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

/// Left-cancellable: `f∘g1 = f∘g2` implies `g1 = g2`, over all of Mor.
pub fn is_monomorphism(c: &Category, f: usize) -> bool {
    let mf = &c.morphisms[f];
    let into: Vec<usize> = (0..c.morphisms.len())
        .filter(|&g| c.morphisms[g].dst == mf.src)
        .collect();
    let after = |g: usize| -> Vec<usize> { c.morphisms[g].map.iter().map(|&y| mf.map[y]).collect() };
    into.iter().all(|&g1| {
        into.iter().all(|&g2| {
            g1 == g2 || c.morphisms[g1].src != c.morphisms[g2].src || after(g1) != after(g2)
        })
    })
}

/// Right-cancellable: `g1∘f = g2∘f` implies `g1 = g2`.
pub fn is_epimorphism(c: &Category, f: usize) -> bool {
    let mf = &c.morphisms[f];
    let from: Vec<usize> = (0..c.morphisms.len())
        .filter(|&g| c.morphisms[g].src == mf.dst)
        .collect();
    let before = |g: usize| -> Vec<usize> { mf.map.iter().map(|&y| c.morphisms[g].map[y]).collect() };
    from.iter().all(|&g1| {
        from.iter().all(|&g2| {
            g1 == g2 || c.morphisms[g1].dst != c.morphisms[g2].dst || before(g1) != before(g2)
        })
    })
}

pub fn is_injective(map: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    map.iter().all(|y| seen.insert(*y))
}

pub fn is_surjective(map: &[usize], codomain: usize) -> bool {
    let mut hit = vec![false; codomain];
    for &y in map {
        hit[y] = true;
    }
    hit.into_iter().all(|h| h)
}

/// An eligible triplet `⟨f, x, f(x)⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triplet {
    pub f: usize,
    pub x: usize,
    pub y: usize,
}

pub fn triplet_label(c: &Category, t: Triplet) -> String {
    let m = &c.morphisms[t.f];
    format!(
        "[{};{};{}]",
        m.name, c.objects[m.src].elements[t.x], c.objects[m.dst].elements[t.y]
    )
}

/// Φ(Y): triplets whose morphism ends in `Y`, sorted.
pub fn cometic_object(c: &Category, y: usize) -> Vec<Triplet> {
    let mut out: Vec<Triplet> = (0..c.morphisms.len())
        .filter(|&f| c.morphisms[f].dst == y)
        .flat_map(|f| {
            c.morphisms[f]
                .map
                .iter()
                .enumerate()
                .map(move |(x, &fx)| Triplet { f, x, y: fx })
        })
        .collect();
    out.sort();
    out
}

/// Φ(g) as a map between the positions of [`cometic_object`] listings.
pub fn cometic_morphism(c: &Category, g: usize) -> Result<Vec<usize>, CategoryError> {
    let mg = &c.morphisms[g];
    let src = cometic_object(c, mg.src);
    let dst = cometic_object(c, mg.dst);
    let pos: HashMap<Triplet, usize> = dst.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    src.iter()
        .map(|t| {
            let gf = c.compose(g, t.f)?;
            Ok(pos[&Triplet {
                f: gf,
                x: t.x,
                y: mg.map[t.y],
            }])
        })
        .collect()
}

/// π_X: Φ(X) → X, the third component.
pub fn projection_component(c: &Category, x: usize) -> Vec<usize> {
    cometic_object(c, x).into_iter().map(|t| t.y).collect()
}

/// ι_X: X → Φ(X), `x ↦ ⟨1_X, x, x⟩`.
pub fn iota(c: &Category, x: usize) -> Option<Vec<usize>> {
    let id = c.identity(x)?;
    let phi = cometic_object(c, x);
    let pos: HashMap<Triplet, usize> = phi.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    Some(
        (0..c.objects[x].len())
            .map(|e| pos[&Triplet { f: id, x: e, y: e }])
            .collect(),
    )
}

/// Φ(C) with Φ(f) named like `f`; the functor is index-preserving.
pub fn cometic_image(c: &Category) -> Result<Category, CategoryError> {
    let objects: Vec<Object> = (0..c.objects.len())
        .map(|y| {
            let els = cometic_object(c, y)
                .into_iter()
                .map(|t| triplet_label(c, t))
                .collect();
            Object::new(&c.objects[y].name, els)
        })
        .collect::<Result<_, _>>()?;
    let morphisms = (0..c.morphisms.len())
        .map(|g| {
            Ok(Morphism {
                name: c.morphisms[g].name.clone(),
                src: c.morphisms[g].src,
                dst: c.morphisms[g].dst,
                map: cometic_morphism(c, g)?,
            })
        })
        .collect::<Result<_, CategoryError>>()?;
    Category::new(objects, morphisms)
}

/// A functor between concrete categories, by indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &Category) -> Self {
        Functor {
            objects: (0..c.objects.len()).collect(),
            morphisms: (0..c.morphisms.len()).collect(),
        }
    }
}

/// Preservation of sources, targets, identities and composition.
pub fn validate_functor(a: &Category, b: &Category, f: &Functor) -> Report {
    let mut r = Report::default();
    let ends: Vec<&str> = (0..a.morphisms.len())
        .filter(|&k| {
            let (m, fm) = (&a.morphisms[k], &b.morphisms[f.morphisms[k]]);
            fm.src != f.objects[m.src] || fm.dst != f.objects[m.dst]
        })
        .map(|k| a.map_name(k))
        .collect();
    r.checks.push(check("sources and targets", ends.is_empty(), ends.join(" ")));
    let ids: Vec<&str> = (0..a.objects.len())
        .filter(|&x| match (a.identity(x), b.identity(f.objects[x])) {
            (Some(i), Some(j)) => f.morphisms[i] != j,
            _ => true,
        })
        .map(|x| a.objects[x].name.as_str())
        .collect();
    r.checks.push(check("identities", ids.is_empty(), ids.join(" ")));
    let mut bad = Vec::new();
    for g in 0..a.morphisms.len() {
        for h in 0..a.morphisms.len() {
            if a.morphisms[h].dst != a.morphisms[g].src {
                continue;
            }
            let ok = match (a.compose(g, h), b.compose(f.morphisms[g], f.morphisms[h])) {
                (Ok(gh), Ok(img)) => f.morphisms[gh] == img,
                _ => false,
            };
            if !ok {
                bad.push(format!("{}∘{}", a.map_name(g), a.map_name(h)));
            }
        }
    }
    r.checks.push(check("composition", bad.is_empty(), bad.join(" ")));
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Faithfulness {
    pub faithful: bool,
    pub totally_faithful: bool,
    pub injective_on_objects: bool,
}

/// Faithful: injective on each homset; totally faithful: injective on Mor.
pub fn check_faithfulness(a: &Category, f: &Functor) -> Faithfulness {
    let n = a.morphisms.len();
    let mut faithful = true;
    let mut total = true;
    for g in 0..n {
        for h in g + 1..n {
            if f.morphisms[g] == f.morphisms[h] {
                total = false;
                let (mg, mh) = (&a.morphisms[g], &a.morphisms[h]);
                if mg.src == mh.src && mg.dst == mh.dst {
                    faithful = false;
                }
            }
        }
    }
    let mut objs = f.objects.clone();
    objs.sort();
    objs.dedup();
    let injective_on_objects = objs.len() == f.objects.len();
    Faithfulness {
        faithful,
        totally_faithful: total && injective_on_objects,
        injective_on_objects,
    }
}

/// Per-morphism outcome of the cometic checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismVerdict {
    pub name: String,
    pub mono: bool,
    pub phi_injective: bool,
}

#[derive(Clone, Debug)]
pub struct CometicReport {
    pub report: Report,
    pub verdicts: Vec<MorphismVerdict>,
}

/// Mono ⇔ Φ(f) injective for every morphism, π natural with surjective
/// components, Φ a totally faithful functor, and `f = π_Y ∘ Φ(f) ∘ ι_X`.
pub fn verify_cometic(c: &Category) -> Result<CometicReport, CategoryError> {
    let mut r = validate_category(c);
    let image = cometic_image(c)?;
    let phi = Functor::identity(c);
    r.checks.extend(
        validate_functor(c, &image, &phi)
            .checks
            .into_iter()
            .map(|mut ch| {
                ch.name = format!("Φ preserves {}", ch.name);
                ch
            }),
    );
    let faith = check_faithfulness_concrete(c, &image);
    r.checks.push(check("Φ totally faithful", faith.totally_faithful, String::new()));

    let mut verdicts = Vec::new();
    let mut mismatched = Vec::new();
    let mut unnatural = Vec::new();
    let mut unfactored = Vec::new();
    for f in 0..c.morphisms.len() {
        let m = &c.morphisms[f];
        let phi_f = &image.morphisms[f].map;
        let v = MorphismVerdict {
            name: m.name.clone(),
            mono: is_monomorphism(c, f),
            phi_injective: is_injective(phi_f),
        };
        if v.mono != v.phi_injective {
            mismatched.push(m.name.clone());
        }
        verdicts.push(v);
        let pi_x = projection_component(c, m.src);
        let pi_y = projection_component(c, m.dst);
        if (0..pi_x.len()).any(|t| pi_y[phi_f[t]] != m.map[pi_x[t]]) {
            unnatural.push(m.name.clone());
        }
        if let Some(iota_x) = iota(c, m.src) {
            if (0..m.map.len()).any(|x| pi_y[phi_f[iota_x[x]]] != m.map[x]) {
                unfactored.push(m.name.clone());
            }
        }
    }
    r.checks.push(check("mono ⇔ Φ(f) injective", mismatched.is_empty(), mismatched.join(" ")));
    r.checks.push(check("π natural", unnatural.is_empty(), unnatural.join(" ")));
    r.checks.push(check("f = π∘Φ(f)∘ι", unfactored.is_empty(), unfactored.join(" ")));
    let not_onto: Vec<&str> = (0..c.objects.len())
        .filter(|&x| !is_surjective(&projection_component(c, x), c.objects[x].len()))
        .map(|x| c.objects[x].name.as_str())
        .collect();
    r.checks.push(check("π surjective", not_onto.is_empty(), not_onto.join(" ")));
    Ok(CometicReport { report: r, verdicts })
}

/// Faithfulness of an index-preserving functor into a concrete category,
/// comparing image objects by their element sets and image morphisms by
/// their labeled graphs.
fn check_faithfulness_concrete(c: &Category, image: &Category) -> Faithfulness {
    let carrier = |x: usize| -> Vec<String> {
        let mut els = image.objects[x].elements.clone();
        els.sort();
        els
    };
    let key = |k: usize| {
        let m = &image.morphisms[k];
        let (s, d) = (&image.objects[m.src], &image.objects[m.dst]);
        let mut graph: Vec<(String, String)> = m
            .map
            .iter()
            .enumerate()
            .map(|(x, &y)| (s.elements[x].clone(), d.elements[y].clone()))
            .collect();
        graph.sort();
        (carrier(m.src), carrier(m.dst), graph)
    };
    let mut obj_ids = BTreeMap::new();
    let objects = (0..c.objects.len())
        .map(|x| {
            let n = obj_ids.len();
            *obj_ids.entry(carrier(x)).or_insert(n)
        })
        .collect();
    let mut ids = BTreeMap::new();
    let morphisms = (0..c.morphisms.len())
        .map(|k| {
            let n = ids.len();
            *ids.entry(key(k)).or_insert(n)
        })
        .collect();
    check_faithfulness(c, &Functor { objects, morphisms })
}

/// All monotone maps `p → q` sending 0 to 0 and 1 to 1.
pub fn monotone_01_maps(p: &Poset, q: &Poset) -> Vec<Vec<usize>> {
    let (Some(p0), Some(p1), Some(q0), Some(q1)) = (p.bottom(), p.top(), q.bottom(), q.top()) else {
        return Vec::new();
    };
    if p0 == p1 && q0 != q1 {
        return Vec::new();
    }
    let mut seq: Vec<usize> = (0..p.len()).collect();
    seq.sort_by_key(|&i| (p.height(i), i));
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; p.len()];
    fn go(
        k: usize,
        seq: &[usize],
        p: &Poset,
        q: &Poset,
        fixed: &[(usize, usize)],
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == seq.len() {
            out.push(map.clone());
            return;
        }
        let x = seq[k];
        let cands: Vec<usize> = match fixed.iter().find(|(a, _)| *a == x) {
            Some(&(_, y)) => vec![y],
            None => (0..q.len()).collect(),
        };
        for y in cands {
            let ok = seq[..k].iter().all(|&w| {
                (!p.le(w, x) || q.le(map[w], y)) && (!p.le(x, w) || q.le(y, map[w]))
            });
            if ok {
                map[x] = y;
                go(k + 1, seq, p, q, fixed, map, out);
                map[x] = usize::MAX;
            }
        }
    }
    go(0, &seq, p, q, &[(p0, q0), (p1, q1)], &mut map, &mut out);
    out
}

/// Concrete category on named bounded posets: injective monotone {0,1}-maps
/// among `d1`, every monotone {0,1}-map from `d2` into `d1`, and identities.
pub fn build_example_category(
    d1: &[(String, Poset)],
    d2: &[(String, Poset)],
) -> Result<Category, CategoryError> {
    let all: Vec<&(String, Poset)> = d1.iter().chain(d2).collect();
    let objects: Vec<Object> = all
        .iter()
        .map(|(n, p)| Object::new(n, p.labels().to_vec()))
        .collect::<Result<_, _>>()?;
    let mut morphisms = Vec::new();
    for (i, (ni, pi)) in all.iter().enumerate() {
        for (j, (nj, pj)) in all.iter().enumerate() {
            let src_d1 = i < d1.len();
            let dst_d1 = j < d1.len();
            let maps: Vec<Vec<usize>> = match (src_d1, dst_d1) {
                (true, true) => monotone_01_maps(pi, pj)
                    .into_iter()
                    .filter(|m| is_injective(m))
                    .collect(),
                (false, true) => monotone_01_maps(pi, pj),
                (false, false) if i == j => vec![(0..pi.len()).collect()],
                _ => Vec::new(),
            };
            for (k, map) in maps.into_iter().enumerate() {
                let identity = i == j && map.iter().enumerate().all(|(x, &y)| x == y);
                let name = if identity {
                    format!("1_{ni}")
                } else {
                    format!("{ni}->{nj}#{k}")
                };
                morphisms.push(Morphism {
                    name,
                    src: i,
                    dst: j,
                    map,
                });
            }
        }
    }
    Category::new(objects, morphisms)
}

/// Every monotone {0,1}-map between the given posets.
pub fn build_full_category(posets: &[(String, Poset)]) -> Result<Category, CategoryError> {
    let objects: Vec<Object> = posets
        .iter()
        .map(|(n, p)| Object::new(n, p.labels().to_vec()))
        .collect::<Result<_, _>>()?;
    let mut morphisms = Vec::new();
    for (i, (ni, pi)) in posets.iter().enumerate() {
        for (j, (nj, pj)) in posets.iter().enumerate() {
            for (k, map) in monotone_01_maps(pi, pj).into_iter().enumerate() {
                let identity = i == j && map.iter().enumerate().all(|(x, &y)| x == y);
                morphisms.push(Morphism {
                    name: if identity { format!("1_{ni}") } else { format!("{ni}->{nj}#{k}") },
                    src: i,
                    dst: j,
                    map,
                });
            }
        }
    }
    Category::new(objects, morphisms)
}
