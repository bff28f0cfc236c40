//! Argument parsing and dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rbprelie::complexes::{cochain_keys, Complexes, Preimage};
use rbprelie::deformations::{
    check_deformation, infinitesimal, solve_next_order, trivialize, NextOrderOutcome, Trivialization,
    TruncatedDeformation,
};
use rbprelie::exactla::{format_rational, is_zero_vector, Echelon};
use rbprelie::extensions::{build_extension, check_extension, extract_cocycle, CocyclePair};
use rbprelie::prelie::{
    check_bimodule, check_pre_lie, check_rb_bimodule, check_rb_operator, derived_bimodule, star_algebra,
};
use rbprelie::twoalg::{
    check_crossed_module, check_prelie_2alg, check_rb_2alg, check_rb_2alg_literal, cocycle_to_skeletal,
    crossed_to_strict, skeletal_to_cocycle, strict_to_crossed,
};
use rbprelie::{Cochain, ComplexKind, RBBimodule, RBPreLieAlgebra, Rational, TwoAlgebra, Validation, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{
    parse, to_text, AlgebraFile, CochainFile, CrossedModuleFile, DeformationFile, ExtensionFile, GaugeFile, ModuleFile,
    ParsedCochain, ShapeError, TwoAlgebraFile,
};
use crate::report::{error_report, rationals, verdict, Report};

#[derive(Debug, Parser)]
#[command(
    name = "rbprelie",
    version,
    about = "Exact computations with Rota-Baxter pre-Lie algebras"
)]
pub struct Cli {
    /// Maximum number of violation witnesses listed per verdict.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_witnesses: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Algebra file.
    pub algebra: PathBuf,
    /// Module file; overrides a module block in the algebra file.
    #[arg(long)]
    pub module: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexChoice {
    Pla,
    Rbo,
    Rba,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the pre-Lie, Rota-Baxter and module axioms.
    Check(Input),
    /// Cohomology dimensions of the three complexes.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ComplexChoice::All)]
        complex: ComplexChoice,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Exactness of the long exact sequence relating the three complexes.
    Les {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// The descendent algebra, and the derived module when a module is given.
    Star {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Apply the differential to a cochain and classify it.
    Cocycle {
        #[command(flatten)]
        input: Input,
        cochain: PathBuf,
    },
    /// Build the abelian extension of a degree-2 pair.
    Extend {
        #[command(flatten)]
        input: Input,
        pair: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Read the module and pair off an extension.
    Extract {
        extension: PathBuf,
        /// Where to write the pair.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Where to write the base algebra with the module.
        #[arg(long)]
        algebra_output: Option<PathBuf>,
    },
    /// Formal deformations.
    #[command(subcommand)]
    Deform(DeformCommand),
    /// Two-term algebras.
    #[command(subcommand)]
    Twoalg(TwoalgCommand),
}

#[derive(Debug, Subcommand)]
pub enum DeformCommand {
    /// Check the deformation equations order by order.
    Check { algebra: PathBuf, deformation: PathBuf },
    /// Extend by one order or report the obstruction class.
    Solve {
        algebra: PathBuf,
        deformation: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Find a gauge to the trivial deformation or report the obstruction.
    Trivialize {
        algebra: PathBuf,
        deformation: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TwoalgCommand {
    /// Check the pre-Lie and Rota-Baxter two-term axioms.
    Check {
        file: PathBuf,
        /// Also report the coherence condition exactly as printed.
        #[arg(long)]
        literal: bool,
    },
    /// Skeletal algebra of a degree-3 cocycle.
    FromCocycle {
        #[command(flatten)]
        input: Input,
        cochain: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Degree-3 cocycle of a skeletal algebra.
    ToCocycle {
        file: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        algebra_output: Option<PathBuf>,
    },
    /// Crossed module of a strict algebra.
    ToCrossed {
        file: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Strict algebra of a crossed module.
    FromCrossed {
        file: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check(_) => "check",
            Command::Cohomology { .. } => "cohomology",
            Command::Les { .. } => "les",
            Command::Star { .. } => "star",
            Command::Cocycle { .. } => "cocycle",
            Command::Extend { .. } => "extend",
            Command::Extract { .. } => "extract",
            Command::Deform(DeformCommand::Check { .. }) => "deform check",
            Command::Deform(DeformCommand::Solve { .. }) => "deform solve",
            Command::Deform(DeformCommand::Trivialize { .. }) => "deform trivialize",
            Command::Twoalg(TwoalgCommand::Check { .. }) => "twoalg check",
            Command::Twoalg(TwoalgCommand::FromCocycle { .. }) => "twoalg from-cocycle",
            Command::Twoalg(TwoalgCommand::ToCocycle { .. }) => "twoalg to-cocycle",
            Command::Twoalg(TwoalgCommand::ToCrossed { .. }) => "twoalg to-crossed",
            Command::Twoalg(TwoalgCommand::FromCrossed { .. }) => "twoalg from-crossed",
        }
    }
}

/// What a run prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

/// Runs the command line `args`, whose first item is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let argv: Vec<String> = args.iter().skip(1).cloned().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if !e.use_stderr() {
                return Outcome {
                    stdout: text,
                    stderr: String::new(),
                    exit_code: 0,
                };
            }
            let first_line = text.lines().next().unwrap_or_default().to_string();
            return Outcome {
                stdout: error_report("", &argv, "usage", &first_line, 2),
                stderr: text,
                exit_code: 2,
            };
        }
    };
    let name = cli.command.name();
    match dispatch(&cli, Report::new(name, &argv, cli.max_witnesses)) {
        Ok(report) => {
            let exit_code = report.exit_code();
            Outcome {
                stdout: report.finish(),
                stderr: String::new(),
                exit_code,
            }
        }
        Err(e) => {
            let message = e.to_string();
            Outcome {
                stdout: error_report(name, &argv, e.kind(), &message, e.exit_code()),
                stderr: format!("error: {message}\n"),
                exit_code: e.exit_code(),
            }
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    parse(&read(path)?, &path.display().to_string())
}

fn shaped<T>(path: &Path, r: Result<T, ShapeError>) -> Result<T, CliError> {
    r.map_err(|error| CliError::Shape {
        path: path.display().to_string(),
        error,
    })
}

fn write_artifact<T: Serialize>(path: Option<&PathBuf>, value: &T) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, to_text(value)).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        })?;
    }
    Ok(())
}

fn artifact<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("file types serialize")
}

/// Algebra and module given on the command line; `None` when neither file
/// carries a module.
fn load_input(input: &Input) -> Result<(RBPreLieAlgebra, Option<RBBimodule>), CliError> {
    let file: AlgebraFile = load(&input.algebra)?;
    let r = shaped(&input.algebra, file.algebra())?;
    let m = match &input.module {
        Some(path) => {
            let mf: ModuleFile = load(path)?;
            Some(shaped(path, mf.to_module(r.dim(), "module"))?)
        }
        None => shaped(&input.algebra, file.module())?,
    };
    Ok((r, m))
}

fn load_algebra(path: &Path) -> Result<RBPreLieAlgebra, CliError> {
    let file: AlgebraFile = load(path)?;
    shaped(path, file.algebra_only("algebra"))
}

fn axioms(r: &RBPreLieAlgebra, m: Option<&RBBimodule>) -> Result<Verdict, CliError> {
    let mut v = check_pre_lie(&r.algebra);
    v.merge(check_rb_operator(r));
    if let Some(m) = m {
        let mut laws = check_bimodule(&r.algebra, &m.bimodule)?;
        laws.merge(check_rb_bimodule(r, m)?);
        laws.flags.clear();
        v.merge(laws);
    }
    Ok(v)
}

/// Loads the algebra with its module, the regular one by default, and
/// records the input axioms. `None` when they fail.
fn valid_pair(input: &Input, report: &mut Report) -> Result<Option<(RBPreLieAlgebra, RBBimodule)>, CliError> {
    let (r, m) = load_input(input)?;
    report.insert("module", json!(if m.is_some() { "given" } else { "regular" }));
    let m = m.unwrap_or_else(|| RBBimodule::regular(&r));
    let v = axioms(&r, Some(&m))?;
    report.verdict("input", &v);
    Ok(v.is_ok().then_some((r, m)))
}

fn dispatch(cli: &Cli, mut report: Report) -> Result<Report, CliError> {
    match &cli.command {
        Command::Check(input) => {
            let (r, m) = load_input(input)?;
            report.insert("dimension", json!(r.dim()));
            report.insert("weight", json!(format_rational(&r.weight)));
            report.verdict("pre_lie", &check_pre_lie(&r.algebra));
            report.verdict("rota_baxter", &check_rb_operator(&r));
            if let Some(m) = &m {
                report.verdict("bimodule", &check_bimodule(&r.algebra, &m.bimodule)?);
                let mut rb = check_rb_bimodule(&r, m)?;
                rb.flags.clear();
                report.verdict("rota_baxter_bimodule", &rb);
            }
        }
        Command::Cohomology {
            input,
            complex,
            max_degree,
        } => {
            if let Some((r, m)) = valid_pair(input, &mut report)? {
                let cx = Complexes::new(&r, &m, Validation::Trusted)?;
                let kinds: Vec<ComplexKind> = match complex {
                    ComplexChoice::Pla => vec![ComplexKind::Pla],
                    ComplexChoice::Rbo => vec![ComplexKind::Rbo],
                    ComplexChoice::Rba => vec![ComplexKind::Rba],
                    ComplexChoice::All => ComplexKind::ALL.to_vec(),
                };
                let tables: Vec<Value> = kinds
                    .iter()
                    .map(|&k| {
                        json!({
                            "complex": k.name(),
                            "cochain_dimensions": (0..=*max_degree).map(|n| cx.space_dim(k, n)).collect::<Vec<_>>(),
                            "dimensions": cx.cohomology_dims(k, *max_degree),
                        })
                    })
                    .collect();
                report.insert("max_degree", json!(max_degree));
                report.insert("cohomology", Value::Array(tables));
            }
        }
        Command::Les { input, max_degree } => {
            if let Some((r, m)) = valid_pair(input, &mut report)? {
                let les = Complexes::new(&r, &m, Validation::Trusted)?.les_check(*max_degree);
                let positions: Vec<Value> = les
                    .positions
                    .iter()
                    .map(|p| {
                        json!({
                            "label": p.label,
                            "cohomology_dimension": p.cohomology_dim,
                            "image_dimension": p.image_dim,
                            "kernel_dimension": p.kernel_dim,
                            "exact": p.exact,
                        })
                    })
                    .collect();
                let maps: Vec<Value> = les
                    .maps
                    .iter()
                    .map(|m| json!({ "name": m.name, "well_defined": m.well_defined }))
                    .collect();
                report.insert("max_degree", json!(max_degree));
                report.insert("positions", Value::Array(positions));
                report.insert("maps", Value::Array(maps));
                report.insert("alternating_sum", json!(les.alternating_sum));
                report.insert("final_rank", json!(les.final_rank));
                report.require("exact", les.is_exact());
                report.require("dimensions_balance", les.dimensions_balance());
            }
        }
        Command::Star { input, output } => {
            let (r, m) = load_input(input)?;
            let v = axioms(&r, m.as_ref())?;
            report.verdict("input", &v);
            if v.is_ok() {
                let star = star_algebra(&r, Validation::Trusted)?;
                let mut sv = check_pre_lie(&star.algebra);
                sv.merge(check_rb_operator(&star));
                report.verdict("star", &sv);
                let derived = m
                    .as_ref()
                    .map(|m| derived_bimodule(&r, m, Validation::Trusted))
                    .transpose()?;
                if let Some(dm) = &derived {
                    report.verdict("derived_module", &axioms(&star, Some(dm))?);
                }
                let file = AlgebraFile::from_structures(&star, derived.as_ref());
                write_artifact(output.as_ref(), &file)?;
                report.insert("artifact", artifact(&file));
            }
        }
        Command::Cocycle { input, cochain } => {
            if let Some((r, m)) = valid_pair(input, &mut report)? {
                let file: CochainFile = load(cochain)?;
                let c = shaped(cochain, file.to_cochain(r.dim(), m.mod_dim()))?;
                cocycle_report(&mut report, &r, &m, &c)?;
            }
        }
        Command::Extend { input, pair, output } => {
            if let Some((r, m)) = valid_pair(input, &mut report)? {
                let file: CochainFile = load(pair)?;
                let c = shaped(pair, file.to_cone(r.dim(), m.mod_dim(), 2))?;
                let built = build_extension(&r, &m, &CocyclePair::from_cochain(&c)?)?;
                report.insert("pair_is_cocycle", json!(built.is_cocycle));
                report.verdict("total_space", &built.axioms);
                let out = ExtensionFile::from_extension(&built.extension);
                write_artifact(output.as_ref(), &out)?;
                report.insert("artifact", artifact(&out));
            }
        }
        Command::Extract {
            extension,
            output,
            algebra_output,
        } => {
            let file: ExtensionFile = load(extension)?;
            let e = shaped(extension, file.to_extension())?;
            let v = check_extension(&e);
            report.verdict("extension", &v);
            if v.is_ok() {
                let x = extract_cocycle(&e, &e.canonical_section())?;
                report.require("is_cocycle", x.is_cocycle);
                let algebra = AlgebraFile::from_structures(&e.base, Some(&x.module));
                let pair = CochainFile::from_cone(&x.pair.to_cochain());
                write_artifact(output.as_ref(), &pair)?;
                write_artifact(algebra_output.as_ref(), &algebra)?;
                report.insert("algebra", artifact(&algebra));
                report.insert("cocycle", artifact(&pair));
            }
        }
        Command::Deform(cmd) => deform(cmd, &mut report)?,
        Command::Twoalg(cmd) => twoalg(cmd, &mut report)?,
    }
    Ok(report)
}

fn nonzero_entries(law: &'static str, c: &Cochain, v: &mut Verdict) {
    let m = c.mod_dim();
    let keys = if c.degree() == 0 {
        vec![Vec::new()]
    } else {
        cochain_keys(c.degree(), c.base_dim())
    };
    for (slot, key) in keys.into_iter().enumerate() {
        v.check(law, key, c.values()[slot * m..(slot + 1) * m].to_vec());
    }
}

fn class_value(p: &Preimage) -> Value {
    match p {
        Preimage::Found(_) => Value::Null,
        Preimage::Class { complement, coords } => json!({
            "complement": complement.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "coordinates": rationals(coords),
        }),
    }
}

/// Degree-0 values must lie in the nucleus to belong to the complexes.
fn in_nucleus(cx: &Complexes, c: &Cochain) -> bool {
    c.degree() > 0 || Echelon::of_span(cx.nucleus(), c.mod_dim()).contains(c.values())
}

fn cocycle_report(report: &mut Report, r: &RBPreLieAlgebra, m: &RBBimodule, c: &ParsedCochain) -> Result<(), CliError> {
    let cx = Complexes::new(r, m, Validation::Trusted)?;
    let (kind, degree, pieces) = match c {
        ParsedCochain::Single(k, f) => (*k, f.degree(), vec![f]),
        ParsedCochain::Cone(c) => (
            ComplexKind::Rba,
            c.degree(),
            std::iter::once(&c.pla_part).chain(&c.rbo_part).collect(),
        ),
    };
    report.insert("complex", json!(kind.name()));
    report.insert("degree", json!(degree));
    let inside = pieces.iter().all(|f| in_nucleus(&cx, f));
    report.require("in_complex", inside);
    if !inside {
        return Ok(());
    }
    let mut v = Verdict::ok();
    let (differential, coords) = match c {
        ParsedCochain::Single(ComplexKind::Pla, f) => {
            let d = cx.pla(f)?;
            nonzero_entries("differential", &d, &mut v);
            (CochainFile::from_single(kind, &d), f.values().to_vec())
        }
        ParsedCochain::Single(_, g) => {
            let d = cx.rbo(g)?;
            nonzero_entries("differential", &d, &mut v);
            (CochainFile::from_single(kind, &d), g.values().to_vec())
        }
        ParsedCochain::Cone(c) => {
            let d = cx.rba(c)?;
            nonzero_entries("differential", &d.pla_part, &mut v);
            if let Some(g) = &d.rbo_part {
                nonzero_entries("differential, operator part", g, &mut v);
            }
            (CochainFile::from_cone(&d), cx.cone_to_coords(c))
        }
    };
    report.verdict("cocycle", &v);
    report.insert("differential", artifact(&differential));
    if v.is_ok() {
        let exact = if degree == 0 {
            let zero = is_zero_vector(&coords);
            report.insert("coboundary", json!(zero));
            return Ok(());
        } else {
            cx.solve_coboundary(kind, degree - 1, &coords)?
        };
        report.insert("coboundary", json!(exact.is_found()));
        report.insert("class", class_value(&exact));
    }
    Ok(())
}

fn order_verdicts(report: &mut Report, r: &RBPreLieAlgebra, def: &TruncatedDeformation) -> Result<bool, CliError> {
    let check = check_deformation(r, def)?;
    let orders: Vec<Value> = check
        .orders
        .iter()
        .enumerate()
        .map(|(n, v)| json!({ "order": n, "verdict": verdict(v, report.limit()) }))
        .collect();
    if !check.is_ok() {
        report.fail();
    }
    report.insert("order", json!(def.order()));
    report.insert("orders", Value::Array(orders));
    Ok(check.is_ok())
}

fn load_deformation(algebra: &Path, deformation: &Path) -> Result<(RBPreLieAlgebra, TruncatedDeformation), CliError> {
    let r = load_algebra(algebra)?;
    let file: DeformationFile = load(deformation)?;
    let def = shaped(deformation, file.to_deformation(&r))?;
    Ok((r, def))
}

fn deform(cmd: &DeformCommand, report: &mut Report) -> Result<(), CliError> {
    match cmd {
        DeformCommand::Check { algebra, deformation } => {
            let (r, def) = load_deformation(algebra, deformation)?;
            order_verdicts(report, &r, &def)?;
            if def.order() >= 1 && check_deformation(&r, &def)?.ok_through(1) {
                let inf = infinitesimal(&r, &def)?;
                report.require("infinitesimal_is_cocycle", inf.is_cocycle);
                report.insert("infinitesimal", artifact(&CochainFile::from_cone(&inf.cochain)));
            }
        }
        DeformCommand::Solve {
            algebra,
            deformation,
            output,
        } => {
            let (r, def) = load_deformation(algebra, deformation)?;
            if order_verdicts(report, &r, &def)? {
                let next = solve_next_order(&r, &def)?;
                report.insert("next_order", json!(next.order));
                report.insert("obstruction", artifact(&CochainFile::from_cone(&next.obstruction)));
                report.require("obstruction_is_cocycle", next.obstruction_is_cocycle);
                report.require("solved", next.is_solved());
                match &next.outcome {
                    NextOrderOutcome::Solved { .. } => {
                        let extended = next.extend(&def).expect("solved");
                        let file = DeformationFile::from_deformation(&extended);
                        write_artifact(output.as_ref(), &file)?;
                        report.insert("artifact", artifact(&file));
                    }
                    NextOrderOutcome::Obstructed { complement, class } => {
                        report.insert(
                            "class",
                            class_value(&Preimage::Class {
                                complement: complement.clone(),
                                coords: class.clone(),
                            }),
                        );
                    }
                }
            }
        }
        DeformCommand::Trivialize {
            algebra,
            deformation,
            output,
        } => {
            let (r, def) = load_deformation(algebra, deformation)?;
            if order_verdicts(report, &r, &def)? {
                match trivialize(&r, &def)? {
                    Trivialization::Trivial { gauge } => {
                        report.require("trivial", true);
                        let file = GaugeFile::from_gauge(&gauge);
                        write_artifact(output.as_ref(), &file)?;
                        report.insert("artifact", artifact(&file));
                    }
                    Trivialization::Obstructed {
                        order,
                        leading,
                        complement,
                        class,
                    } => {
                        report.require("trivial", false);
                        report.insert("obstructed_at_order", json!(order));
                        report.insert("leading", artifact(&CochainFile::from_cone(&leading)));
                        report.insert(
                            "class",
                            class_value(&Preimage::Class {
                                complement,
                                coords: class,
                            }),
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

fn load_two_algebra(path: &Path) -> Result<(TwoAlgebra, Rational), CliError> {
    let file: TwoAlgebraFile = load(path)?;
    shaped(path, file.to_two_algebra())
}

fn two_algebra_axioms(report: &mut Report, t: &TwoAlgebra, weight: &Rational) -> Result<bool, CliError> {
    let pre = check_prelie_2alg(t)?;
    let rb = check_rb_2alg(t, weight)?;
    report.verdict("pre_lie", &pre);
    report.verdict("rota_baxter", &rb);
    Ok(pre.is_ok() && rb.is_ok())
}

fn twoalg(cmd: &TwoalgCommand, report: &mut Report) -> Result<(), CliError> {
    match cmd {
        TwoalgCommand::Check { file, literal } => {
            let (t, weight) = load_two_algebra(file)?;
            report.insert("skeletal", json!(t.is_skeletal()));
            report.insert("strict", json!(t.is_strict()));
            two_algebra_axioms(report, &t, &weight)?;
            if *literal {
                let v = check_rb_2alg_literal(&t, &weight)?;
                report.insert("rota_baxter_as_printed", verdict(&v, report.limit()));
            }
        }
        TwoalgCommand::FromCocycle { input, cochain, output } => {
            if let Some((r, m)) = valid_pair(input, report)? {
                let file: CochainFile = load(cochain)?;
                let c = shaped(cochain, file.to_cone(r.dim(), m.mod_dim(), 3))?;
                let cx = Complexes::new(&r, &m, Validation::Trusted)?;
                let d = cx.rba(&c)?;
                let mut v = Verdict::ok();
                nonzero_entries("differential", &d.pla_part, &mut v);
                nonzero_entries(
                    "differential, operator part",
                    d.rbo_part.as_ref().expect("degree 4"),
                    &mut v,
                );
                report.verdict("cocycle", &v);
                if v.is_ok() {
                    let t = cocycle_to_skeletal(&r, &m, &c)?;
                    two_algebra_axioms(report, &t, &r.weight)?;
                    let out = TwoAlgebraFile::from_two_algebra(&t, &r.weight);
                    write_artifact(output.as_ref(), &out)?;
                    report.insert("artifact", artifact(&out));
                }
            }
        }
        TwoalgCommand::ToCocycle {
            file,
            output,
            algebra_output,
        } => {
            let (t, weight) = load_two_algebra(file)?;
            report.require("skeletal", t.is_skeletal());
            if t.is_skeletal() {
                let sc = skeletal_to_cocycle(&t, &weight)?;
                report.require("is_cocycle", sc.is_cocycle);
                let algebra = AlgebraFile::from_structures(&sc.algebra, Some(&sc.module));
                let cocycle = CochainFile::from_cone(&sc.cocycle);
                write_artifact(output.as_ref(), &cocycle)?;
                write_artifact(algebra_output.as_ref(), &algebra)?;
                report.insert("algebra", artifact(&algebra));
                report.insert("cocycle", artifact(&cocycle));
            }
        }
        TwoalgCommand::ToCrossed { file, output } => {
            let (t, weight) = load_two_algebra(file)?;
            report.require("strict", t.is_strict());
            if t.is_strict() && two_algebra_axioms(report, &t, &weight)? {
                let cm = strict_to_crossed(&t, &weight)?;
                report.verdict("crossed_module", &check_crossed_module(&cm)?);
                let out = CrossedModuleFile::from_crossed(&cm);
                write_artifact(output.as_ref(), &out)?;
                report.insert("artifact", artifact(&out));
            }
        }
        TwoalgCommand::FromCrossed { file, output } => {
            let cf: CrossedModuleFile = load(file)?;
            let cm = shaped(file, cf.to_crossed())?;
            let v = check_crossed_module(&cm)?;
            report.verdict("crossed_module", &v);
            if v.is_ok() {
                let t = crossed_to_strict(&cm)?;
                two_algebra_axioms(report, &t, &cm.g0.weight)?;
                let out = TwoAlgebraFile::from_two_algebra(&t, &cm.g0.weight);
                write_artifact(output.as_ref(), &out)?;
                report.insert("artifact", artifact(&out));
            }
        }
    }
    Ok(())
}
