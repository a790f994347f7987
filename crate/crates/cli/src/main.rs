//! Command-line validator for finite categories, functors, delta lenses,
//! copresheaves and spans, with counterexample witnesses.
//!
//! Exit codes: 0 = valid / success, 1 = law violations found (witnesses
//! printed), 2 = usage or file errors.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use lenscat::comonad::{coalgebra_from_lens, coalgebra_report, cofree, lens_from_coalgebra};
use lenscat::copresheaf::{elements, fibres};
use lenscat::decalage::{decalage, decalage_comonad_laws};
use lenscat::factorisation::{splitting_factorisation_report, vertical_subcategory};
use lenscat::functor::pullback;
use lenscat::io::{CategoryFile, CopresheafFile, FunctorFile, LensFile, SpanFile};
use lenscat::lens::Lens;
use lenscat::opfibration::{
    classify, discrete_fibration_report, discrete_opfibration_report, opfibration_report,
    split_opfibration_report,
};
use lenscat::presets;
use lenscat::span::{compose_spans, pullback_lens};

#[derive(Parser)]
#[command(
    name = "lenscat",
    version,
    about = "Finite category and delta lens validator"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Category,
    Functor,
    Lens,
    Copresheaf,
    Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    /// Unique lifts with a given domain.
    DiscreteOpfibration,
    /// Unique lifts with a given codomain.
    DiscreteFibration,
    /// Some opcartesian lift exists for every arrow out of an image.
    Opfibration,
    /// Every chosen lift of the lens is opcartesian.
    SplitOpfibration,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of an object read from a file.
    Validate {
        #[arg(value_enum)]
        kind: Kind,
        file: PathBuf,
    },
    /// Check a fibrational property of a functor (or lens).
    Check {
        #[arg(value_enum)]
        property: Property,
        file: PathBuf,
    },
    /// Run every fibrational check on a functor and summarise.
    Classify { file: PathBuf },
    /// Build the category of elements of a copresheaf; writes the
    /// canonical lens on the projection.
    Elements {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Recover the copresheaf of fibres of a discrete opfibration.
    Fibres {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build the décalage of a category; writes the counit projection.
    Decalage {
        file: PathBuf,
        /// Also verify the comonad laws (builds three levels).
        #[arg(long)]
        laws: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Apply the cofree lens comonad to a functor; writes the projection.
    Cofree {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Translate a lens to a coalgebra for the cofree comonad, check the
    /// coalgebra laws and round-trip back.
    Coalgebra { file: PathBuf },
    /// Translate a split opfibration (as a lens) to an algebra for the
    /// comma monad, check the algebra laws and round-trip back.
    Algebra { file: PathBuf },
    /// Compose two lenses (the first's target must be the second's source).
    Compose {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Strict pullback of two functors into a common category.
    Pullback {
        first: PathBuf,
        second: PathBuf,
        /// Directory for pullback.json, to_left.json, to_right.json.
        #[arg(short, long)]
        out_dir: Option<PathBuf>,
    },
    /// Pull a lens back along a functor into the same base.
    PullbackLens {
        lens: PathBuf,
        along: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Compose two spans of lenses over their shared middle category.
    SpanCompose {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Factorise a lens into (chosen lifts, verticals) and report whether
    /// that is a strict factorisation system (= split opfibration).
    Factorise { file: PathBuf },
    /// Write a stock object to a file, or list the available names.
    Preset {
        name: Option<String>,
        #[command(flatten)]
        out: OutArg,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct OutArg {
    /// Output file (JSON). Printed to stdout when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Report {
    command: String,
    valid: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violations: Vec<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    details: Option<serde_json::Value>,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            command: command.into(),
            valid: true,
            violations: Vec::new(),
            details: None,
        }
    }

    fn witness<T: Serialize + Display>(&mut self, items: &[T]) {
        for item in items {
            self.violations.push(json!({
                "witness": item.to_string(),
                "data": item,
            }));
        }
        if !items.is_empty() {
            self.valid = false;
        }
    }

    fn finish(self, json_mode: bool) -> ExitCode {
        if json_mode {
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::to_value(&self).unwrap()).unwrap()
            );
        } else {
            if let Some(details) = &self.details {
                if let Some(text) = details.get("summary").and_then(|v| v.as_str()) {
                    println!("{text}");
                }
            }
            if self.valid {
                println!("ok: {} passed", self.command);
            } else {
                println!("INVALID: {} violation(s)", self.violations.len());
                for v in &self.violations {
                    if let Some(w) = v.get("witness").and_then(|w| w.as_str()) {
                        println!("  witness: {w}");
                    }
                }
            }
        }
        if self.valid {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        fs::read_to_string(path).with_context(|| format!("failed to read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("invalid JSON in {}", path.display()))
}

fn write_json<T: Serialize>(out: &OutArg, value: &T, what: &str) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match &out.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("failed to write {}", path.display()))?;
            eprintln!("wrote {what} to {}", path.display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn load_category(path: &Path) -> Result<lenscat::Category> {
    let file: CategoryFile = read_json(path)?;
    file.resolve()
        .with_context(|| format!("cannot resolve category in {}", path.display()))
}

/// Functor commands also accept lens files, using the underlying functor.
fn load_functor(path: &Path) -> Result<lenscat::Functor> {
    let text =
        fs::read_to_string(path).with_context(|| format!("failed to read {}", path.display()))?;
    if let Ok(file) = serde_json::from_str::<FunctorFile>(&text) {
        return file
            .resolve()
            .with_context(|| format!("cannot resolve functor in {}", path.display()));
    }
    let file: LensFile = serde_json::from_str(&text)
        .with_context(|| format!("{} is neither a functor nor a lens file", path.display()))?;
    file.functor
        .resolve()
        .with_context(|| format!("cannot resolve functor in {}", path.display()))
}

fn load_lens(path: &Path) -> Result<Lens> {
    let file: LensFile = read_json(path)?;
    file.resolve()
        .with_context(|| format!("cannot resolve lens in {}", path.display()))
}

fn validate_cmd(kind: Kind, path: &Path) -> Result<Report> {
    let mut report = Report::new(&format!("validate {kind:?}").to_lowercase());
    match kind {
        Kind::Category => {
            let cat = load_category(path)?;
            report.details = Some(json!({
                "objects": cat.object_count(),
                "morphisms": cat.morphism_count(),
                "summary": format!("category: {} objects, {} morphisms", cat.object_count(), cat.morphism_count()),
            }));
            report.witness(&cat.validate());
        }
        Kind::Functor => {
            let f = load_functor(path)?;
            let mut source_issues = f.source().validate();
            source_issues.extend(f.target().validate());
            if !source_issues.is_empty() {
                report.witness(&source_issues);
            }
            report.witness(&f.validate());
        }
        Kind::Lens => {
            let lens = load_lens(path)?;
            report.details = Some(json!({
                "source_objects": lens.source().object_count(),
                "target_objects": lens.target().object_count(),
                "lifts": lens.lifts().count(),
                "summary": format!(
                    "lens: {} source objects over {} target objects, {} lifts",
                    lens.source().object_count(),
                    lens.target().object_count(),
                    lens.lifts().count()
                ),
            }));
            let mut cat_issues = lens.source().validate();
            cat_issues.extend(lens.target().validate());
            if !cat_issues.is_empty() {
                report.witness(&cat_issues);
            }
            report.witness(&lens.functor().validate());
            report.witness(&lens.validate());
        }
        Kind::Copresheaf => {
            let file: CopresheafFile = read_json(path)?;
            let cop = file.resolve()?;
            report.witness(&cop.base().validate());
            report.witness(&cop.validate());
        }
        Kind::Span => {
            let file: SpanFile = read_json(path)?;
            let span = file.resolve()?;
            report.witness(&span.apex().validate());
            report.witness(&span.left.functor().validate());
            report.witness(&span.right.functor().validate());
            report.witness(&span.left.validate());
            report.witness(&span.right.validate());
        }
    }
    Ok(report)
}

fn check_cmd(property: Property, path: &Path) -> Result<Report> {
    let label = match property {
        Property::DiscreteOpfibration => "discrete-opfibration",
        Property::DiscreteFibration => "discrete-fibration",
        Property::Opfibration => "opfibration",
        Property::SplitOpfibration => "split-opfibration",
    };
    let mut report = Report::new(&format!("check {label}"));
    match property {
        Property::DiscreteOpfibration => {
            let f = load_functor(path)?;
            report.witness(&discrete_opfibration_report(&f));
        }
        Property::DiscreteFibration => {
            let f = load_functor(path)?;
            report.witness(&discrete_fibration_report(&f));
        }
        Property::Opfibration => {
            let f = load_functor(path)?;
            report.witness(&opfibration_report(&f));
        }
        Property::SplitOpfibration => {
            let lens = load_lens(path)?;
            report.witness(&split_opfibration_report(&lens));
        }
    }
    Ok(report)
}

fn classify_cmd(path: &Path) -> Result<Report> {
    let f = load_functor(path)?;
    let c = classify(&f);
    let mut report = Report::new("classify");
    report.details = Some(json!({
        "is_discrete_opfibration": c.is_discrete_opfibration,
        "is_discrete_fibration": c.is_discrete_fibration,
        "is_opfibration": c.is_opfibration,
        "lens_structure_count": c.lens_structure_count,
        "summary": format!(
            "discrete opfibration: {}\ndiscrete fibration: {}\nopfibration: {}\nlens structures: {}",
            c.is_discrete_opfibration, c.is_discrete_fibration, c.is_opfibration,
            match c.lens_structure_count {
                Some(n) => n.to_string(),
                None => "not computed (search space too large)".into(),
            }
        ),
    }));
    Ok(report)
}

fn coalgebra_cmd(path: &Path) -> Result<Report> {
    let lens = load_lens(path)?;
    let mut report = Report::new("coalgebra");
    let lens_issues = lens.validate();
    if !lens_issues.is_empty() {
        report.witness(&lens_issues);
        return Ok(report);
    }
    let k = cofree(lens.functor())?;
    let k2 = cofree(&k.projection)?;
    let alpha = coalgebra_from_lens(&lens, &k)?;
    let violations = coalgebra_report(&alpha, &k, &k2)?;
    report.witness(&violations);
    let back = lens_from_coalgebra(&alpha, &k)?;
    let round_trip = back == lens;
    if !round_trip {
        report.valid = false;
    }
    report.details = Some(json!({
        "carrier_objects": k.category.object_count(),
        "carrier_morphisms": k.category.morphism_count(),
        "round_trip_identity": round_trip,
        "summary": format!(
            "cofree carrier: {} objects, {} morphisms; round trip identity: {}",
            k.category.object_count(), k.category.morphism_count(), round_trip
        ),
    }));
    Ok(report)
}

fn algebra_cmd(path: &Path) -> Result<Report> {
    use lenscat::monad::{algebra_from_lens, algebra_report, free_split, lens_from_algebra};
    let lens = load_lens(path)?;
    let mut report = Report::new("algebra");
    let lens_issues = lens.validate();
    if !lens_issues.is_empty() {
        report.witness(&lens_issues);
        return Ok(report);
    }
    let t1 = free_split(lens.functor())?;
    let k = match algebra_from_lens(&lens, &t1) {
        Ok(k) => k,
        Err(opcartesian) => {
            report.witness(&opcartesian);
            return Ok(report);
        }
    };
    let t2 = free_split(&t1.projection)?;
    let violations = algebra_report(&k, &t1, &t2)?;
    report.witness(&violations);
    let back = lens_from_algebra(&k, &t1)?;
    let round_trip = back == lens;
    if !round_trip {
        report.valid = false;
    }
    report.details = Some(json!({
        "carrier_objects": t1.category.object_count(),
        "carrier_morphisms": t1.category.morphism_count(),
        "round_trip_identity": round_trip,
        "summary": format!(
            "comma carrier: {} objects, {} morphisms; round trip identity: {}",
            t1.category.object_count(),
            t1.category.morphism_count(),
            round_trip
        ),
    }));
    Ok(report)
}

fn factorise_cmd(path: &Path) -> Result<Report> {
    let lens = load_lens(path)?;
    let mut report = Report::new("factorise");
    let lens_issues = lens.validate();
    if !lens_issues.is_empty() {
        report.witness(&lens_issues);
        return Ok(report);
    }
    let lifts = lens.lifting_subcategory();
    let verts = vertical_subcategory(&lens);
    report.witness(&lifts.validate(lens.source()));
    report.witness(&verts.validate(lens.source()));
    let strict = splitting_factorisation_report(&lens);
    let split = split_opfibration_report(&lens);
    let agree = strict.is_empty() == split.is_empty();
    report.witness(&strict);
    report.witness(&split);
    report.details = Some(json!({
        "chosen_lifts": lifts.morphisms.len(),
        "verticals": verts.morphisms.len(),
        "strict_factorisation": strict.is_empty(),
        "split_opfibration": split.is_empty(),
        "routes_agree": agree,
        "summary": format!(
            "chosen lifts: {}, verticals: {}\nstrict factorisation: {}\nsplit opfibration (opcartesian route): {}",
            lifts.morphisms.len(), verts.morphisms.len(), strict.is_empty(), split.is_empty()
        ),
    }));
    if !agree {
        bail!("internal error: factorisation and opcartesian routes disagree");
    }
    Ok(report)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json_mode = cli.json;
    match cli.command {
        Command::Validate { kind, file } => Ok(validate_cmd(kind, &file)?.finish(json_mode)),
        Command::Check { property, file } => Ok(check_cmd(property, &file)?.finish(json_mode)),
        Command::Classify { file } => Ok(classify_cmd(&file)?.finish(json_mode)),
        Command::Elements { file, out } => {
            let cop_file: CopresheafFile = read_json(&file)?;
            let cop = cop_file.resolve()?;
            let base_issues = cop.base().validate();
            let issues = cop.validate();
            if !base_issues.is_empty() || !issues.is_empty() {
                let mut report = Report::new("elements");
                report.witness(&base_issues);
                report.witness(&issues);
                return Ok(report.finish(json_mode));
            }
            let el = elements(&cop)?;
            write_json(
                &out,
                &LensFile::from_lens(&el.lens),
                "the canonical lens on el(F)",
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fibres { file, out } => {
            let f = load_functor(&file)?;
            match fibres(&f) {
                Ok(cop) => {
                    write_json(
                        &out,
                        &CopresheafFile::from_copresheaf(&cop),
                        "the fibre copresheaf",
                    )?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(violations) => {
                    let mut report = Report::new("fibres");
                    report.witness(&violations);
                    Ok(report.finish(json_mode))
                }
            }
        }
        Command::Decalage { file, laws, out } => {
            let cat = load_category(&file)?;
            let issues = cat.validate();
            if !issues.is_empty() {
                let mut report = Report::new("decalage");
                report.witness(&issues);
                return Ok(report.finish(json_mode));
            }
            let dec = decalage(&cat)?;
            if laws {
                let broken = decalage_comonad_laws(&cat)?;
                if !broken.is_empty() {
                    for law in &broken {
                        eprintln!("comonad law failed: {law}");
                    }
                    bail!("décalage comonad laws failed");
                }
                eprintln!("comonad laws verified (counit, mapped counit, coassociativity)");
            }
            write_json(
                &out,
                &FunctorFile::from_functor(&dec.counit),
                "the décalage counit",
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cofree { file, out } => {
            let f = load_functor(&file)?;
            let mut issues = f.source().validate();
            issues.extend(f.target().validate());
            if !issues.is_empty() || !f.validate().is_empty() {
                let mut report = Report::new("cofree");
                report.witness(&issues);
                report.witness(&f.validate());
                return Ok(report.finish(json_mode));
            }
            let k = cofree(&f)?;
            eprintln!(
                "cofree carrier: {} objects, {} morphisms",
                k.category.object_count(),
                k.category.morphism_count()
            );
            write_json(
                &out,
                &FunctorFile::from_functor(&k.projection),
                "the cofree projection",
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Coalgebra { file } => Ok(coalgebra_cmd(&file)?.finish(json_mode)),
        Command::Algebra { file } => Ok(algebra_cmd(&file)?.finish(json_mode)),
        Command::Compose { first, second, out } => {
            let lens1 = load_lens(&first)?;
            let lens2 = load_lens(&second)?;
            let composite = lens1.then(&lens2)?;
            write_json(&out, &LensFile::from_lens(&composite), "the composite lens")?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Pullback {
            first,
            second,
            out_dir,
        } => {
            let f = load_functor(&first)?;
            let g = load_functor(&second)?;
            let pb = pullback(&f, &g)?;
            eprintln!(
                "pullback: {} objects, {} morphisms",
                pb.category.object_count(),
                pb.category.morphism_count()
            );
            if let Some(dir) = out_dir {
                fs::create_dir_all(&dir)?;
                let write = |name: &str, value: serde_json::Value| -> Result<()> {
                    let path = dir.join(name);
                    fs::write(&path, serde_json::to_string_pretty(&value)?)?;
                    eprintln!("wrote {}", path.display());
                    Ok(())
                };
                write(
                    "pullback.json",
                    serde_json::to_value(CategoryFile::from_category(&pb.category))?,
                )?;
                write(
                    "to_left.json",
                    serde_json::to_value(FunctorFile::from_functor(&pb.to_left))?,
                )?;
                write(
                    "to_right.json",
                    serde_json::to_value(FunctorFile::from_functor(&pb.to_right))?,
                )?;
            } else {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&CategoryFile::from_category(&pb.category))?
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::PullbackLens { lens, along, out } => {
            let l = load_lens(&lens)?;
            let g = load_functor(&along)?;
            let pl = pullback_lens(&l, &g)?;
            write_json(&out, &LensFile::from_lens(&pl.lens), "the pulled-back lens")?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SpanCompose { first, second, out } => {
            let s1: SpanFile = read_json(&first)?;
            let s2: SpanFile = read_json(&second)?;
            let composite = compose_spans(&s1.resolve()?, &s2.resolve()?)?;
            write_json(&out, &SpanFile::from_span(&composite), "the composite span")?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Factorise { file } => Ok(factorise_cmd(&file)?.finish(json_mode)),
        Command::Preset { name, out, list } => {
            let cats = presets::category_presets();
            if list || name.is_none() {
                println!("categories:");
                for (n, _) in &cats {
                    println!("  {n}");
                }
                println!(
                    "other: sample-copresheaf, projection-lens, non-split-lens, elements-lens"
                );
                return Ok(ExitCode::SUCCESS);
            }
            let name = name.unwrap();
            let value = if let Some((_, cat)) = cats.iter().find(|(n, _)| *n == name) {
                serde_json::to_value(CategoryFile::from_category(cat))?
            } else {
                match name.as_str() {
                    "sample-copresheaf" => serde_json::to_value(CopresheafFile::from_copresheaf(
                        &presets::sample_copresheaf(),
                    ))?,
                    "projection-lens" => {
                        serde_json::to_value(LensFile::from_lens(&presets::projection_lens()))?
                    }
                    "non-split-lens" => {
                        serde_json::to_value(LensFile::from_lens(&presets::non_split_lens()))?
                    }
                    "elements-lens" => {
                        let el = elements(&presets::sample_copresheaf())?;
                        serde_json::to_value(LensFile::from_lens(&el.lens))?
                    }
                    other => bail!("unknown preset: {other} (try --list)"),
                }
            };
            write_json(&out, &value, &format!("preset {name}"))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
