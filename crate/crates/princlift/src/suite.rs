//! Named checks run from a manifest, under a wall-clock budget.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::cometic::{verify_cometic, Category};
use crate::fixtures;
use crate::gadget::{build_gadget_from, verify_gadget, Gadget, Orientation};
use crate::io::{read_json, BlueprintDoc, CategoryDoc, FunctorDoc, PosetDoc};
use crate::lift::{lift_functor, verify_lifting, PosetFunctor};
use crate::nlattice::{build_lhnu, default_mnh, selfduality_map, zeta_iso};
use crate::order::QuasiOrder;
use crate::quasicolor::theta_quotient;

fn yes() -> bool {
    true
}

fn four() -> usize {
    4
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftInput {
    pub category: PathBuf,
    pub functor: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CheckKind {
    /// A rank-2 blueprint (the shipped one when absent) and everything
    /// derived from it.
    Gadget {
        #[serde(default)]
        blueprint: Option<PathBuf>,
    },
    /// Princ(N(H,ν)) ≅ H/Θν for the listed quasiorders, plus every bounded
    /// quasiorder with 2..=`max_size` elements when `builtin`.
    Keylemma {
        #[serde(default)]
        quasiorders: Vec<PathBuf>,
        #[serde(default = "yes")]
        builtin: bool,
        #[serde(default = "four")]
        max_size: usize,
    },
    /// The cometic functor on the listed categories (and the built-in ones).
    Thmcat {
        #[serde(default)]
        categories: Vec<PathBuf>,
        #[serde(default = "yes")]
        builtin: bool,
    },
    /// End-to-end lifting of the listed functors (and the built-in ones).
    Lifting {
        #[serde(default)]
        inputs: Vec<LiftInput>,
        #[serde(default = "yes")]
        builtin: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: CheckKind,
    /// `false` when the check is expected to find a failure
    #[serde(default = "yes")]
    pub expect_pass: bool,
}

/// Paths inside a manifest are relative to the manifest's directory.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureManifest {
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

impl FixtureManifest {
    /// The four oracles on their built-in inputs.
    pub fn shipped() -> Self {
        let spec = |name: &str, kind| CheckSpec {
            name: name.into(),
            kind,
            expect_pass: true,
        };
        FixtureManifest {
            checks: vec![
                spec("gadget", CheckKind::Gadget { blueprint: None }),
                spec(
                    "keylemma",
                    CheckKind::Keylemma {
                        quasiorders: Vec::new(),
                        builtin: true,
                        max_size: 4,
                    },
                ),
                spec(
                    "thmcat",
                    CheckKind::Thmcat {
                        categories: Vec::new(),
                        builtin: true,
                    },
                ),
                spec(
                    "lifting",
                    CheckKind::Lifting {
                        inputs: Vec::new(),
                        builtin: true,
                    },
                ),
            ],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Timeout,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub status: Status,
    /// inputs examined
    pub items: usize,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<Entry>,
    pub warnings: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        for e in &self.entries {
            let mark = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Timeout => "TIMEOUT",
                Status::Skipped => "SKIP",
            };
            writeln!(f, "{mark} {} ({} inputs, {:.2?})", e.name, e.items, e.elapsed)?;
            for n in &e.notes {
                writeln!(f, "    {n}")?;
            }
        }
        Ok(())
    }
}

struct Run {
    deadline: Option<Instant>,
    items: usize,
    failures: Vec<String>,
    notes: Vec<String>,
    timed_out: bool,
}

impl Run {
    /// False once the budget is spent.
    fn tick(&mut self) -> bool {
        if self.deadline.is_some_and(|d| Instant::now() > d) {
            self.timed_out = true;
            return false;
        }
        self.items += 1;
        true
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.failures.push(what.into());
    }
}

fn load<T: serde::de::DeserializeOwned>(base: &Path, p: &Path) -> Result<T, String> {
    read_json(&base.join(p)).map_err(|e| e.to_string())
}

fn gadget_check(run: &mut Run, base: &Path, blueprint: &Option<PathBuf>) {
    let g = match blueprint {
        None => Gadget::shipped(),
        Some(p) => match load::<BlueprintDoc>(base, p).and_then(|d| Gadget::from_doc(&d).map_err(|e| e.to_string())) {
            Ok(g) => g,
            Err(e) => return run.fail(e),
        },
    };
    for rank in [2u8, 1, 0] {
        for o in [Orientation::Up, Orientation::Dn, Orientation::Double] {
            if !run.tick() {
                return;
            }
            match build_gadget_from(&g, rank, o, "p", "q") {
                Ok(built) => {
                    for c in verify_gadget(&built).failures() {
                        run.fail(format!("rank {rank} {o}: {} {}", c.name, c.detail));
                    }
                }
                Err(e) => run.fail(format!("rank {rank} {o}: {e}")),
            }
        }
    }
}

fn keylemma_one(run: &mut Run, name: &str, q: &QuasiOrder) {
    if theta_quotient(q).classes.len() < 2 {
        run.notes.push(format!("{name}: single Θ class, not a valid color universe"));
        return;
    }
    match build_lhnu(q) {
        Err(e) => run.fail(format!("{name}: {e}")),
        Ok(b) => {
            if let Err(e) = zeta_iso(&b) {
                run.fail(format!("{name}: {e}"));
            }
            if b.lattice().length() != 5 {
                run.fail(format!("{name}: length {}", b.lattice().length()));
            }
            if selfduality_map(b.lattice(), &default_mnh()).is_none() {
                run.fail(format!("{name}: not selfdual"));
            }
        }
    }
}

fn keylemma_check(run: &mut Run, base: &Path, files: &[PathBuf], builtin: bool, max_size: usize) {
    for p in files {
        if !run.tick() {
            return;
        }
        match load::<PosetDoc>(base, p).and_then(|d| d.to_quasiorder().map_err(|e| e.to_string())) {
            Ok(q) => keylemma_one(run, &p.display().to_string(), &q),
            Err(e) => run.fail(e),
        }
    }
    if builtin {
        for n in 2..=max_size {
            for (k, q) in fixtures::bounded_quasiorders(n).iter().enumerate() {
                if !run.tick() {
                    return;
                }
                keylemma_one(run, &format!("size {n} #{k}"), q);
            }
        }
    }
}

fn thmcat_one(run: &mut Run, name: &str, c: &Category) {
    match verify_cometic(c) {
        Ok(r) => {
            for f in r.report.failures() {
                run.fail(format!("{name}: {} {}", f.name, f.detail));
            }
        }
        Err(e) => run.fail(format!("{name}: {e}")),
    }
}

fn thmcat_check(run: &mut Run, base: &Path, files: &[PathBuf], builtin: bool) {
    for p in files {
        if !run.tick() {
            return;
        }
        match load::<CategoryDoc>(base, p).and_then(|d| Category::from_doc(&d).map_err(|e| e.to_string())) {
            Ok(c) => thmcat_one(run, &p.display().to_string(), &c),
            Err(e) => run.fail(e),
        }
    }
    if builtin {
        for (name, c) in fixtures::cometic_categories() {
            if !run.tick() {
                return;
            }
            thmcat_one(run, &name, &c);
        }
    }
}

fn lifting_one(run: &mut Run, name: &str, a: &Category, f: &PosetFunctor) {
    match lift_functor(a, f) {
        Ok(l) => {
            for c in verify_lifting(&l).failures() {
                run.fail(format!("{name}: {} {}", c.name, c.detail));
            }
        }
        Err(e) => run.fail(format!("{name}: {e}")),
    }
}

fn lifting_check(run: &mut Run, base: &Path, inputs: &[LiftInput], builtin: bool) {
    for i in inputs {
        if !run.tick() {
            return;
        }
        let loaded = load::<CategoryDoc>(base, &i.category)
            .and_then(|d| Category::from_doc(&d).map_err(|e| e.to_string()))
            .and_then(|a| {
                let fd = load::<FunctorDoc>(base, &i.functor)?;
                let f = PosetFunctor::from_doc(&a, &fd).map_err(|e| e.to_string())?;
                Ok((a, f))
            });
        match loaded {
            Ok((a, f)) => lifting_one(run, &i.functor.display().to_string(), &a, &f),
            Err(e) => run.fail(e),
        }
    }
    if builtin {
        for (name, a, f) in fixtures::lifting_inputs() {
            if !run.tick() {
                return;
            }
            lifting_one(run, &name, &a, &f);
        }
    }
}

/// Runs the checks in manifest order. Once the budget is spent the running
/// check times out and the rest are skipped.
pub fn run_suite(manifest: &FixtureManifest, base: &Path, budget: Option<Duration>) -> SuiteReport {
    let start = Instant::now();
    let deadline = budget.map(|b| start + b);
    let mut report = SuiteReport::default();
    if manifest.checks.is_empty() {
        report.warnings.push("manifest has no checks".into());
    }
    let mut out_of_time = false;
    for spec in &manifest.checks {
        if out_of_time {
            report.entries.push(Entry {
                name: spec.name.clone(),
                status: Status::Skipped,
                items: 0,
                notes: vec!["budget exhausted".into()],
                elapsed: Duration::ZERO,
            });
            continue;
        }
        let t = Instant::now();
        let mut run = Run {
            deadline,
            items: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            timed_out: false,
        };
        match &spec.kind {
            CheckKind::Gadget { blueprint } => gadget_check(&mut run, base, blueprint),
            CheckKind::Keylemma {
                quasiorders,
                builtin,
                max_size,
            } => keylemma_check(&mut run, base, quasiorders, *builtin, *max_size),
            CheckKind::Thmcat { categories, builtin } => thmcat_check(&mut run, base, categories, *builtin),
            CheckKind::Lifting { inputs, builtin } => lifting_check(&mut run, base, inputs, *builtin),
        }
        let found_failure = !run.failures.is_empty();
        let status = if run.timed_out {
            out_of_time = true;
            Status::Timeout
        } else if found_failure != spec.expect_pass {
            Status::Pass
        } else {
            Status::Fail
        };
        let mut notes = run.failures;
        if !spec.expect_pass {
            notes.insert(0, "expected to fail".into());
        }
        notes.extend(run.notes);
        report.entries.push(Entry {
            name: spec.name.clone(),
            status,
            items: run.items,
            notes,
            elapsed: t.elapsed(),
        });
    }
    report
}
