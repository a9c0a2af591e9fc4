use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use princlift::cometic::{cometic_image, validate_category, verify_cometic, Category};
use princlift::congruence::{princ_poset, CongruenceIndex};
use princlift::dot::{export_dot, export_princ_dot};
use princlift::gadget::{verify_gadget, Gadget, Report};
use princlift::io::{
    read_json, to_canonical_json, write_json, BlueprintDoc, CategoryDoc, ColorsDoc, FunctorDoc, PairsDoc,
    PosetDoc, QuasiColoredDoc,
};
use princlift::lift::{lift_functor, read_lifted, validate_poset_functor, verify_lifting, write_lifted, PosetFunctor};
use princlift::nlattice::{build_big, build_lhnu, BigLattice, ColorUniverse};
use princlift::quasicolor::{validate_quasicoloring, QuasiColoredLattice};
use princlift::suite::{run_suite, FixtureManifest};

type Res<T> = Result<T, Box<dyn Error>>;

/// Principal congruences of finite lattices and functor lifting.
///
/// Size caps: PRINCLIFT_MAX_ELEMENTS, PRINCLIFT_CON_CAP, PRINCLIFT_ISO_CAP.
#[derive(Parser)]
#[command(name = "princlift", version)]
struct Cli {
    /// Abort (exit 124) once this many seconds have passed; the suite
    /// instead reports a timeout with its partial results.
    #[arg(long, global = true, env = "PRINCLIFT_BUDGET_SECONDS")]
    budget_seconds: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Poset,
    Quasiorder,
    Lattice,
    Colored,
    Blueprint,
    Category,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and check a document.
    Validate {
        file: PathBuf,
        #[arg(long = "as", value_enum, default_value = "lattice")]
        kind: Kind,
        /// functor document to check against the category
        #[arg(long)]
        functor: Option<PathBuf>,
    },
    /// Print the poset of principal congruences.
    Princ { lattice: PathBuf },
    #[command(subcommand)]
    Gadget(GadgetCmd),
    /// Build N(H,Z,U;I,J).
    BuildN {
        #[arg(long)]
        colors: PathBuf,
        #[arg(long = "I")]
        i: PathBuf,
        #[arg(long = "J")]
        j: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build L(H,ν) for a bounded quasiorder.
    BuildL {
        #[arg(long)]
        quasiorder: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    #[command(subcommand)]
    Cometic(CometicCmd),
    /// Lift a poset-valued functor, or verify a lifted directory.
    Lift {
        #[command(subcommand)]
        verify: Option<LiftCmd>,
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long)]
        functor: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cover graph of a poset or lattice document in DOT.
    ExportDot {
        file: PathBuf,
        /// draw the principal congruences instead
        #[arg(long)]
        princ: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a check manifest (the built-in one when none is given).
    Suite {
        manifest: Option<PathBuf>,
        /// also write the report as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GadgetCmd {
    Verify { blueprint: PathBuf },
}

#[derive(Subcommand)]
enum CometicCmd {
    Verify {
        category: PathBuf,
    },
    Image {
        category: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LiftCmd {
    Verify { dir: PathBuf },
}

fn emit(text: &str, output: Option<&Path>) -> Res<()> {
    match output {
        Some(p) => {
            if let Some(d) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(d)?;
            }
            fs::write(p, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn print_report(r: &Report) -> u8 {
    print!("{r}");
    u8::from(!r.passed())
}

fn colored_doc(b: &BigLattice) -> QuasiColoredDoc {
    let q = &b.colored;
    QuasiColoredDoc {
        lattice: PosetDoc::from_poset(&q.lattice),
        colors: PosetDoc::from_quasiorder(&q.colors),
        gamma: q.gamma_labels(),
    }
}

fn validate(file: &Path, kind: Kind, functor: Option<&Path>) -> Res<u8> {
    match kind {
        Kind::Poset => {
            let p = read_json::<PosetDoc>(file)?.to_poset()?;
            println!("poset: {} elements, length {}", p.len(), p.length());
        }
        Kind::Quasiorder => {
            let q = read_json::<PosetDoc>(file)?.to_quasiorder()?;
            println!("quasiorder: {} elements", q.len());
        }
        Kind::Lattice => {
            let l = read_json::<PosetDoc>(file)?.to_lattice()?;
            println!("lattice: {} elements, length {}", l.len(), l.length());
        }
        Kind::Colored => {
            let d: QuasiColoredDoc = read_json(file)?;
            let q = QuasiColoredLattice::new(d.lattice.to_lattice()?, d.colors.to_quasiorder()?, &d.gamma)?;
            let r = validate_quasicoloring(&q, &CongruenceIndex::new(&q.lattice));
            for c in &r.missing_colors {
                println!("color `{c}` is not used");
            }
            for v in &r.violations {
                println!("{:?}: ({},{}) vs ({},{})", v.axiom, v.first.0, v.first.1, v.second.0, v.second.1);
            }
            if !r.has_least_color || !r.has_greatest_color {
                println!("colors are not bounded");
            }
            println!("quasi-coloring {}", if r.is_valid() { "valid" } else { "invalid" });
            return Ok(u8::from(!r.is_valid()));
        }
        Kind::Blueprint => {
            Gadget::from_doc(&read_json::<BlueprintDoc>(file)?)?;
            println!("blueprint parses");
        }
        Kind::Category => {
            let c = Category::from_doc(&read_json::<CategoryDoc>(file)?)?;
            let mut r = validate_category(&c);
            if let Some(f) = functor {
                let f = PosetFunctor::from_doc(&c, &read_json::<FunctorDoc>(f)?)?;
                r.checks.extend(validate_poset_functor(&c, &f).checks);
            }
            return Ok(print_report(&r));
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Res<u8> {
    let budget = cli
        .budget_seconds
        .map(Duration::try_from_secs_f64)
        .transpose()
        .map_err(|_| "budget must be a non-negative number of seconds")?;
    if let (Some(b), false) = (budget, matches!(cli.cmd, Cmd::Suite { .. })) {
        // a zero budget is spent before any work starts
        if b.is_zero() {
            eprintln!("error: budget of 0s exceeded");
            std::process::exit(124);
        }
        std::thread::spawn(move || {
            std::thread::sleep(b);
            eprintln!("error: budget of {:.1}s exceeded", b.as_secs_f64());
            std::process::exit(124);
        });
    }
    match cli.cmd {
        Cmd::Validate { file, kind, functor } => validate(&file, kind, functor.as_deref()),
        Cmd::Princ { lattice } => {
            let l = read_json::<PosetDoc>(&lattice)?.to_lattice()?;
            print!("{}", to_canonical_json(&PosetDoc::from_poset(&princ_poset(&l).order)));
            Ok(0)
        }
        Cmd::Gadget(GadgetCmd::Verify { blueprint }) => {
            let g = Gadget::from_doc(&read_json::<BlueprintDoc>(&blueprint)?)?;
            Ok(print_report(&verify_gadget(&g)))
        }
        Cmd::BuildN { colors, i, j, output } => {
            let c: ColorsDoc = read_json(&colors)?;
            let (i, j): (PairsDoc, PairsDoc) = (read_json(&i)?, read_json(&j)?);
            let b = build_big(&ColorUniverse::from_docs(&c, &i, &j)?)?;
            emit(&to_canonical_json(&colored_doc(&b)), output.as_deref())?;
            Ok(0)
        }
        Cmd::BuildL { quasiorder, output } => {
            let h = read_json::<PosetDoc>(&quasiorder)?.to_quasiorder()?;
            let b = build_lhnu(&h)?;
            emit(&to_canonical_json(&colored_doc(&b)), output.as_deref())?;
            Ok(0)
        }
        Cmd::Cometic(CometicCmd::Verify { category }) => {
            let c = Category::from_doc(&read_json(&category)?)?;
            let r = verify_cometic(&c)?;
            for v in &r.verdicts {
                println!("{}: mono {}, Φ injective {}", v.name, v.mono, v.phi_injective);
            }
            Ok(print_report(&r.report))
        }
        Cmd::Cometic(CometicCmd::Image { category, output }) => {
            let c = Category::from_doc(&read_json(&category)?)?;
            emit(&to_canonical_json(&cometic_image(&c)?.to_doc()), output.as_deref())?;
            Ok(0)
        }
        Cmd::Lift {
            verify: Some(LiftCmd::Verify { dir }),
            ..
        } => Ok(print_report(&verify_lifting(&read_lifted(&dir)?))),
        Cmd::Lift {
            verify: None,
            category,
            functor,
            output,
        } => {
            let (Some(category), Some(functor), Some(output)) = (category, functor, output) else {
                return Err("lift needs --category, --functor and -o".into());
            };
            let a = Category::from_doc(&read_json(&category)?)?;
            let f = PosetFunctor::from_doc(&a, &read_json(&functor)?)?;
            let lifted = lift_functor(&a, &f)?;
            write_lifted(&output, &lifted)?;
            let r = verify_lifting(&lifted);
            write_json(&output.join("report.json"), &r)?;
            Ok(print_report(&r))
        }
        Cmd::ExportDot { file, princ, output } => {
            let doc: PosetDoc = read_json(&file)?;
            let text = if princ {
                export_princ_dot(&princ_poset(&doc.to_lattice()?))
            } else {
                export_dot(&doc.to_poset()?)
            };
            emit(&text, output.as_deref())?;
            Ok(0)
        }
        Cmd::Suite { manifest, report } => {
            let (m, base) = match manifest {
                Some(p) => {
                    let base = p.parent().map(Path::to_path_buf).unwrap_or_default();
                    (read_json::<FixtureManifest>(&p)?, base)
                }
                None => (FixtureManifest::shipped(), PathBuf::from(".")),
            };
            let r = run_suite(&m, &base, budget);
            print!("{r}");
            if let Some(p) = report {
                write_json(&p, &r)?;
            }
            Ok(r.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
