//! One line per acceptance criterion, each run against the brute-force
//! oracles in `common` and timed against its budget.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use princlift::cometic::{
    build_full_category, cometic_morphism, cometic_object, is_epimorphism, is_injective, is_monomorphism,
    is_surjective, monotone_01_maps, projection_component, verify_cometic, Category,
};
use princlift::congruence::princ_map;
use princlift::fixtures::{self, bounded_quasiorders, chain, diamond, small_bounded_posets, two_cycle_quasiorders};
use princlift::gadget::{build_gadget, generic_projection, glue_unverified, verify_gadget, Gadget, Orientation};
use princlift::lift::{constrained_homomorphisms, hom_lift, lift_constraints, lift_functor, verify_lifting, Lifted};
use princlift::nlattice::{build_lhnu, default_mnh, selfduality_map, BigLattice};
use princlift::order::{is_order_iso, order_iso, Lattice, Poset, QuasiOrder};
use princlift::quasicolor::theta_quotient;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&y| g[y]).collect()
}

/// Left cancellation over the listed morphisms.
fn mono_oracle(c: &Category, f: usize) -> bool {
    let mf = &c.morphisms[f];
    let into: Vec<_> = c.morphisms.iter().filter(|g| g.dst == mf.src).collect();
    !into.iter().any(|g1| {
        into.iter()
            .any(|g2| g1.src == g2.src && g1.map != g2.map && compose(&mf.map, &g1.map) == compose(&mf.map, &g2.map))
    })
}

/// Right cancellation over the listed morphisms.
fn epi_oracle(c: &Category, f: usize) -> bool {
    let mf = &c.morphisms[f];
    let out: Vec<_> = c.morphisms.iter().filter(|g| g.src == mf.dst).collect();
    !out.iter().any(|g1| {
        out.iter()
            .any(|g2| g1.dst == g2.dst && g1.map != g2.map && compose(&g1.map, &mf.map) == compose(&g2.map, &mf.map))
    })
}

fn injective(m: &[usize]) -> bool {
    m.iter().collect::<BTreeSet<_>>().len() == m.len()
}

fn surjective(m: &[usize], n: usize) -> bool {
    m.iter().collect::<BTreeSet<_>>().len() == n
}

fn criterion1() -> Outcome {
    let cats = fixtures::cometic_categories();
    ensure!(cats.len() >= 5, "only {} categories", cats.len());
    let mut morphisms = 0;
    for (name, c) in &cats {
        let r = verify_cometic(c).map_err(|e| format!("{name}: {e}"))?;
        ensure!(r.report.passed(), "{name}: {}", r.report);
        let phis: Vec<Vec<usize>> = (0..c.morphisms.len()).map(|k| cometic_morphism(c, k).unwrap()).collect();
        for (k, m) in c.morphisms.iter().enumerate() {
            morphisms += 1;
            ensure!(mono_oracle(c, k) == injective(&phis[k]), "{name}/{}: mono vs Φ injective", m.name);
            // π_Y ∘ Φ(f) = f ∘ π_X
            let (px, py) = (projection_component(c, m.src), projection_component(c, m.dst));
            ensure!(compose(&py, &phis[k]) == compose(&m.map, &px), "{name}/{}: naturality", m.name);
        }
        for x in 0..c.objects.len() {
            let p = projection_component(c, x);
            ensure!(surjective(&p, c.objects[x].len()), "{name}: π not onto {}", c.objects[x].name);
        }
        // totally faithful: distinct morphisms have distinct images
        let sizes: Vec<usize> = (0..c.objects.len()).map(|x| cometic_object(c, x).len()).collect();
        let keys: BTreeSet<_> =
            c.morphisms.iter().zip(&phis).map(|(m, phi)| (m.src, m.dst, sizes[m.src], phi.clone())).collect();
        ensure!(keys.len() == c.morphisms.len(), "{name}: Φ not faithful");
        let objs: BTreeSet<Vec<String>> = (0..c.objects.len())
            .map(|x| {
                cometic_object(c, x)
                    .iter()
                    .map(|t| format!("{}:{}:{}", t.f, t.x, t.y))
                    .collect()
            })
            .collect();
        ensure!(objs.len() == c.objects.len(), "{name}: Φ not injective on objects");
    }
    Ok(format!("{} categories, {morphisms} morphisms", cats.len()))
}

fn cong_count(l: &Lattice) -> usize {
    common::congruences_by_covers(l).len()
}

fn criterion2() -> Outcome {
    let g = Gadget::shipped();
    ensure!(common::length(&g.lattice) == 5, "length {}", common::length(&g.lattice));
    ensure!(cong_count(&g.lattice) == 4, "|Con| = {}", cong_count(&g.lattice));
    let p = g.lattice.poset();
    let t = common::tables(p);
    let b = g.boundary;
    let cp = common::saturate(p, &t, &[(b.a_p, b.b_p)]);
    let cq = common::saturate(p, &t, &[(b.a_q, b.b_q)]);
    ensure!(common::refines(&cp, &cq) && cp != cq, "cg(a_p,b_p) < cg(a_q,b_q) fails");
    for (rank, nontrivial) in [(1u8, 1usize), (0, 0)] {
        let (q, _) = generic_projection(rank).map_err(|e| e.to_string())?;
        let n = cong_count(&q.lattice);
        ensure!(n == nontrivial + 2, "rank {rank}: {n} congruences");
    }
    for rank in [2u8, 1, 0] {
        let d = build_gadget(rank, Orientation::Double, "p", "q").map_err(|e| e.to_string())?;
        let dual = d.lattice.dual();
        let m = order_iso(&d.lattice, &dual).map_err(|e| e.to_string())?;
        ensure!(m.is_some_and(|m| is_order_iso(&d.lattice, &dual, &m)), "rank {rank} double not selfdual");
        ensure!(verify_gadget(&d).passed(), "rank {rank} double fails verification");
    }
    Ok("length 5, |Con| = 4, quotients 1/0, doubles selfdual".into())
}

fn criterion3() -> Outcome {
    let fixtures = common::glue_fixtures();
    ensure!(fixtures.len() >= 3, "only {} fixtures", fixtures.len());
    let mut slowest = Duration::ZERO;
    for (name, host, g) in &fixtures {
        let start = Instant::now();
        let out = glue_unverified(host, g).map_err(|e| format!("{name}: {e}"))?;
        let l = &out.lattice;
        let (j, m) = common::tables(l.poset());
        for x in 0..l.len() {
            for y in 0..l.len() {
                ensure!(l.join(x, y) == j[x][y] && l.meet(x, y) == m[x][y], "{name}: tables differ at {x},{y}");
            }
        }
        ensure!(common::length(l.poset()) == 5, "{name}: length");
        for emb in [&out.host_embedding, &out.gadget_embedding] {
            let set: BTreeSet<usize> = emb.iter().copied().collect();
            ensure!(set.contains(&l.bottom()) && set.contains(&l.top()), "{name}: bounds");
            for &a in &set {
                for &b in &set {
                    ensure!(set.contains(&j[a][b]) && set.contains(&m[a][b]), "{name}: not a sublattice");
                }
            }
        }
        let took = start.elapsed();
        ensure!(took < Duration::from_secs(30), "{name}: {took:.1?}");
        slowest = slowest.max(took);
    }
    Ok(format!("{} fixtures, slowest {slowest:.2?}", fixtures.len()))
}

/// Princ(L) ≅ H/Θ via p ↦ cg(a_p,b_p), checked on oracle congruences.
fn check_keylemma(name: &str, h: &QuasiOrder) -> Result<usize, String> {
    let b = build_lhnu(h).map_err(|e| format!("{name}: {e}"))?;
    let l = b.lattice();
    let congs = common::congruences_by_covers(l);
    let mut princ = BTreeSet::new();
    for x in 0..l.len() {
        for y in l.up_set(x).ones() {
            princ.insert(common::principal(&congs, x, y));
        }
    }
    let nu = b.nu();
    let anchor: Vec<Vec<usize>> = (0..nu.len())
        .map(|p| {
            let (a, c) = common::anchors(l, nu.label(p));
            common::principal(&congs, a, c)
        })
        .collect();
    for p in 0..nu.len() {
        for q in 0..nu.len() {
            ensure!(nu.le(p, q) == common::refines(&anchor[p], &anchor[q]), "{name}: order at {p},{q}");
        }
    }
    let anchored: BTreeSet<Vec<usize>> = anchor.into_iter().collect();
    ensure!(anchored == princ, "{name}: {} anchor congruences, {} principal", anchored.len(), princ.len());
    ensure!(common::length(l.poset()) == 5, "{name}: length");
    let dual = l.dual();
    let m = selfduality_map(l, &default_mnh());
    ensure!(m.is_some_and(|m| is_order_iso(l, &dual, &m)), "{name}: not selfdual");
    Ok(l.len())
}

fn criterion4() -> Outcome {
    let mut inputs: Vec<(String, QuasiOrder)> = Vec::new();
    for (name, p) in small_bounded_posets() {
        inputs.push((name, p.as_quasiorder().clone()));
    }
    let cycles = two_cycle_quasiorders();
    ensure!(cycles.len() >= 3, "only {} cyclic quasiorders", cycles.len());
    inputs.extend(cycles);
    for n in 2..=4 {
        for (k, q) in bounded_quasiorders(n).into_iter().enumerate() {
            if theta_quotient(&q).classes.len() >= 2 {
                inputs.push((format!("size {n} #{k}"), q));
            }
        }
    }
    let mut largest = 0;
    for (name, q) in &inputs {
        largest = largest.max(check_keylemma(name, q)?);
    }
    Ok(format!("{} quasiorders, largest lattice {largest}", inputs.len()))
}

/// name, source, target, color moves
type Case<'a> = (&'a str, &'a BigLattice, &'a BigLattice, Vec<(&'a str, &'a str)>);

fn color_map(n1: &BigLattice, n2: &BigLattice, moves: &[(&str, &str)]) -> Vec<usize> {
    let (nu1, nu2) = (n1.nu(), n2.nu());
    (0..nu1.len())
        .map(|i| {
            let s = nu1.label(i);
            let t = moves.iter().find(|(a, _)| *a == s).map_or(s, |(_, b)| b);
            nu2.index(t).unwrap()
        })
        .collect()
}

fn check_lift(n1: &BigLattice, n2: &BigLattice, f: &[usize], g: &[usize]) -> Result<(), String> {
    let (l1, l2) = (n1.lattice(), n2.lattice());
    let (j1, m1) = common::tables(l1.poset());
    let (j2, m2) = common::tables(l2.poset());
    for x in 0..l1.len() {
        for y in 0..l1.len() {
            ensure!(g[j1[x][y]] == j2[g[x]][g[y]], "join at {x},{y}");
            ensure!(g[m1[x][y]] == m2[g[x]][g[y]], "meet at {x},{y}");
        }
    }
    ensure!(g[l1.bottom()] == l2.bottom() && g[l1.top()] == l2.top(), "bounds");
    let (nu1, nu2) = (n1.nu(), n2.nu());
    for p in 0..nu1.len() {
        let (a, b) = common::anchors(l1, nu1.label(p));
        let (a2, b2) = common::anchors(l2, nu2.label(f[p]));
        ensure!((g[a], g[b]) == (a2, b2), "anchor of {}", nu1.label(p));
    }
    Ok(())
}

fn criterion5() -> Outcome {
    let big = |q: &QuasiOrder| build_lhnu(q).map_err(|e| e.to_string());
    let c2 = big(chain(2).as_quasiorder())?;
    let c3 = big(chain(3).as_quasiorder())?;
    let c4 = big(chain(4).as_quasiorder())?;
    let d = big(diamond().as_quasiorder())?;
    let mp = two_cycle_quasiorders().into_iter().find(|(n, _)| n == "middle-pair").unwrap().1;
    let mp = big(&mp)?;
    let cases: Vec<Case> = vec![
        ("identity", &c2, &c2, vec![]),
        ("2-chain into 3-chain", &c2, &c3, vec![]),
        ("3-chain into 4-chain", &c3, &c4, vec![("m", "m1")]),
        ("diamond swap", &d, &d, vec![("a", "b"), ("b", "a")]),
        ("3-chain into middle pair", &c3, &mp, vec![("m", "a")]),
    ];
    for (name, n1, n2, moves) in &cases {
        let f = color_map(n1, n2, moves);
        let g = hom_lift(n1, n2, &f).map_err(|e| format!("{name}: {e}"))?;
        check_lift(n1, n2, &f, &g).map_err(|e| format!("{name}: {e}"))?;
    }
    let squash = color_map(&c3, &c2, &[("m", "0")]);
    ensure!(hom_lift(&c3, &c2, &squash).is_err(), "non-injective color map accepted");
    let id = color_map(&c2, &c2, &[]);
    let g = hom_lift(&c2, &c2, &id).map_err(|e| e.to_string())?;
    let all = constrained_homomorphisms(c2.lattice(), c2.lattice(), &lift_constraints(&c2, &c2, &id), 10);
    ensure!(all == vec![g], "{} homomorphisms on the smallest fixture", all.len());
    Ok(format!("{} fixtures, unique on the smallest", cases.len()))
}

type Tables = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// Oracle principal congruence of each congruence id, saturated from its
/// witness pair.
fn oracle_princ(l: &Lifted, k: usize, t: &Tables) -> Vec<Vec<usize>> {
    let p = l.lattices[k].lattice.poset();
    let idx = &l.indexes[k];
    (0..idx.congruences().len())
        .map(|i| common::saturate(p, t, &[idx.witness(i)]))
        .collect()
}

struct Checked {
    name: String,
    lifted: Lifted,
    tables: Vec<Tables>,
    princ: Vec<Vec<Vec<usize>>>,
}

fn lifted_inputs() -> Result<Vec<Checked>, String> {
    fixtures::lifting_inputs()
        .into_iter()
        .map(|(name, a, f)| {
            let lifted = lift_functor(&a, &f).map_err(|e| format!("{name}: {e}"))?;
            let tables: Vec<Tables> = lifted.lattices.iter().map(|q| common::tables(q.lattice.poset())).collect();
            let princ = (0..lifted.lattices.len()).map(|k| oracle_princ(&lifted, k, &tables[k])).collect();
            Ok(Checked {
                name,
                lifted,
                tables,
                princ,
            })
        })
        .collect()
}

fn criterion6(inputs: &[Checked]) -> Outcome {
    let names: Vec<&str> = inputs.iter().map(|c| c.name.as_str()).collect();
    for want in ["categorified-chain", "automorphisms", "example"] {
        ensure!(names.contains(&want), "missing input {want}");
    }
    let example = &fixtures::example_category();
    ensure!(
        (0..example.morphisms.len()).any(|k| is_monomorphism(example, k) && !is_injective(&example.morphisms[k].map)),
        "example has no non-injective monomorphism"
    );
    for Checked {
        name,
        lifted: l,
        tables,
        princ,
    } in inputs
    {
        let r = verify_lifting(l);
        ensure!(r.passed(), "{name}:\n{r}");
        let a = &l.category;
        for x in 0..a.objects.len() {
            let p = &l.functor.posets[x];
            let k = l.object_lattice[x];
            let img: Vec<&Vec<usize>> = l.tau[x].iter().map(|&i| &princ[k][i]).collect();
            let distinct: BTreeSet<&Vec<usize>> = img.iter().copied().collect();
            let all: BTreeSet<&Vec<usize>> = princ[k].iter().collect();
            ensure!(distinct.len() == p.len() && distinct == all, "{name}: τ_{} not bijective", a.objects[x].name);
            for u in 0..p.len() {
                for v in 0..p.len() {
                    ensure!(p.le(u, v) == common::refines(img[u], img[v]), "{name}: τ_{} order", a.objects[x].name);
                }
            }
        }
        for (m, mor) in a.morphisms.iter().enumerate() {
            let (s, d) = (l.object_lattice[mor.src], l.object_lattice[mor.dst]);
            let lat = &l.lattices[s].lattice;
            let (j1, m1) = &tables[s];
            let (j2, m2) = &tables[d];
            let g = &l.homs[m];
            for x in 0..lat.len() {
                for y in 0..lat.len() {
                    ensure!(
                        g[j1[x][y]] == j2[g[x]][g[y]] && g[m1[x][y]] == m2[g[x]][g[y]],
                        "{name}: L({}) not a homomorphism",
                        mor.name
                    );
                }
            }
            // the square: Princ(L(f)) ∘ τ_X = τ_Y ∘ F(f), on oracle congruences
            let target = l.lattices[d].lattice.poset();
            for u in 0..l.functor.posets[mor.src].len() {
                let (x, y) = l.indexes[s].witness(l.tau[mor.src][u]);
                let moved = common::saturate(target, &tables[d], &[(g[x], g[y])]);
                let want = &princ[d][l.tau[mor.dst][l.functor.maps[m][u]]];
                ensure!(&moved == want, "{name}: square of {} fails at {u}", mor.name);
            }
        }
        let keys: Vec<_> = a
            .morphisms
            .iter()
            .zip(&l.homs)
            .map(|(m, h)| (m.src, m.dst, l.object_lattice[m.src], l.object_lattice[m.dst], h))
            .collect();
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                let same_hom = keys[i].0 == keys[j].0 && keys[i].1 == keys[j].1;
                ensure!(!(same_hom && keys[i].4 == keys[j].4), "{name}: L not faithful");
            }
        }
        if l.functor.is_totally_faithful(a) {
            let distinct: BTreeSet<_> = keys.iter().map(|k| (k.2, k.3, k.4)).collect();
            ensure!(distinct.len() == keys.len(), "{name}: L not totally faithful");
        }
    }
    Ok(format!("{} inputs lifted", inputs.len()))
}

/// Every monotone {0,1}-map by enumerating all functions.
fn all_01_maps(p: &Poset, q: &Poset) -> BTreeSet<Vec<usize>> {
    let (n, m) = (p.len(), q.len());
    let mut out = BTreeSet::new();
    let total = m.pow(n as u32);
    for code in 0..total {
        let f: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
        let monotone = (0..n).all(|a| (0..n).all(|b| !p.le(a, b) || q.le(f[a], f[b])));
        let bounds = f[p.bottom().unwrap()] == q.bottom().unwrap() && f[p.top().unwrap()] == q.top().unwrap();
        if monotone && bounds {
            out.insert(f);
        }
    }
    out
}

fn criterion7(inputs: &[Checked]) -> Outcome {
    let mut maps = 0;
    for Checked {
        name,
        lifted: l,
        princ,
        ..
    } in inputs
    {
        for (m, mor) in l.category.morphisms.iter().enumerate() {
            let (s, d) = (l.object_lattice[mor.src], l.object_lattice[mor.dst]);
            let h = princ_map(&l.lattices[s].lattice, &l.indexes[s], &l.indexes[d], &l.homs[m])
                .map_err(|e| format!("{name}/{}: {e}", mor.name))?;
            let delta: Vec<usize> = (0..l.lattices[d].lattice.len()).collect();
            for i in 0..h.len() {
                if princ[s][i] == (0..l.lattices[s].lattice.len()).collect::<Vec<_>>() {
                    ensure!(princ[d][h[i]] == delta, "{name}/{}: Δ not preserved", mor.name);
                }
                for j in 0..h.len() {
                    if common::refines(&princ[s][i], &princ[s][j]) {
                        ensure!(common::refines(&princ[d][h[i]], &princ[d][h[j]]), "{name}/{}: not monotone", mor.name);
                    }
                }
            }
            maps += 1;
        }
    }
    let mut posets: Vec<(String, Poset)> = vec![("chain1".into(), chain(1))];
    posets.extend(small_bounded_posets());
    for (_, p) in &posets {
        for (_, q) in &posets {
            let lib: BTreeSet<Vec<usize>> = monotone_01_maps(p, q).into_iter().collect();
            ensure!(lib == all_01_maps(p, q), "{{0,1}}-maps {p} → {q} differ");
        }
    }
    let c = build_full_category(&posets).map_err(|e| e.to_string())?;
    for (k, m) in c.morphisms.iter().enumerate() {
        let n = c.objects[m.dst].len();
        ensure!(mono_oracle(&c, k) == injective(&m.map), "{}: mono vs injective", m.name);
        ensure!(epi_oracle(&c, k) == surjective(&m.map, n), "{}: epi vs surjective", m.name);
        ensure!(is_monomorphism(&c, k) == mono_oracle(&c, k), "{}: library mono", m.name);
        ensure!(is_epimorphism(&c, k) == epi_oracle(&c, k), "{}: library epi", m.name);
        ensure!(is_surjective(&m.map, n) == surjective(&m.map, n), "{}: library onto", m.name);
    }
    Ok(format!("{maps} lifted morphisms, {} poset maps", c.morphisms.len()))
}

fn report(n: usize, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let took = start.elapsed();
    let outcome = match outcome {
        Ok(_) if took >= budget => Err(format!("over budget ({budget:?})")),
        o => o,
    };
    let ok = outcome.is_ok();
    let (mark, detail) = match outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("criterion {n}: {mark} in {took:.2?} (budget {budget:?}): {detail}");
    ok
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= report(1, Duration::from_secs(10), criterion1);
    ok &= report(2, Duration::from_secs(5), criterion2);
    ok &= report(3, Duration::from_secs(30 * common::glue_fixtures().len() as u64), criterion3);
    ok &= report(4, Duration::from_secs(300), criterion4);
    ok &= report(5, Duration::from_secs(120), criterion5);
    let mut lifted = Vec::new();
    ok &= report(6, Duration::from_secs(600), || {
        lifted = lifted_inputs()?;
        criterion6(&lifted)
    });
    ok &= report(7, Duration::from_secs(60), || criterion7(&lifted));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
