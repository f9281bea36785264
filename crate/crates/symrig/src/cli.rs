//! Command dispatch.
//!
//! Exit codes: 0 on success, 2 for usage and problem-file errors, 3 for
//! domain errors (an empty class when a sample is needed, coordinates that
//! are not in the class, …). Errors are printed to standard error as
//! `{"error": message, "kind": kind}`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};
use symrig_core::generic::{max_residual, seeded_rng};
use symrig_core::oracle::{brute_force_type_search, exhaustive_generic_check, kernel_oracle};
use symrig_core::{
    class_is_empty, config_space_basis, enumerate_types, find_homomorphic_type, is_homomorphism,
    rigidity_verdict, sample_config, sym_generic_verdict, type_catalog, verify_type, Framework,
    Placement, SymGenericOptions, TypeAssignment, DEFAULT_AUTOMORPHISM_CAP,
};

use crate::problem::{parse_problem, Problem, ResolvedType, TypeMode};
use crate::report::{
    coordinates_json, edge_names, type_json, AnalyzeJson, BasisJson, ClassJson, EmptyJson,
    FrameworkJson, OracleCheck, OracleJson, SampleJson, TypeEntryJson, TypesJson,
};
use crate::svg::{render_svg, SvgOptions};
use crate::InputError;

const DEFAULT_TRIALS: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "symrig",
    version,
    about = "Types, symmetric configuration spaces and symmetry-generic rigidity of symmetric frameworks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Overrides the seed of the problem file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of samples (analyze: 20, sample: 1).
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Relative singular-value threshold for rank decisions.
    #[arg(long = "tol-rank", global = true)]
    tol_rank: Option<f64>,
    /// Absolute tolerance for coordinate comparisons.
    #[arg(long = "tol-geom", global = true)]
    tol_geom: Option<f64>,
    /// Only types with Φ(Id) = id.
    #[arg(long, global = true)]
    normalized: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rigidity of the given framework and symmetry-generic verdicts of its class.
    Analyze { file: PathBuf },
    /// Random members of the class.
    Sample { file: PathBuf },
    /// All types of the given framework.
    Types { file: PathBuf },
    /// Orthonormal basis of the symmetric configuration space.
    Basis { file: PathBuf },
    /// Whether the class contains no framework at all.
    EmptyCheck { file: PathBuf },
    /// SVG figure of the given framework, or of a sample of the class.
    Svg { file: PathBuf },
    /// Brute-force cross-checks of types, kernel dimension and genericity.
    Oracle { file: PathBuf },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(InputError),
    Domain(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Input(e) => (e.kind(), e.to_string()),
            CliError::Domain(m) => ("domain", m.clone()),
        };
        json!({"error": message, "kind": kind})
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

impl From<symrig_core::Error> for CliError {
    fn from(e: symrig_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let err = CliError::Usage(e.render().to_string().trim().to_string());
            let _ = writeln!(stderr, "{}", err.to_json());
            return err.code();
        }
    };
    match dispatch(&cli).and_then(|text| emit(&cli, &text, stdout)) {
        Ok(()) => 0,
        Err(err) => {
            let _ = writeln!(stderr, "{}", err.to_json());
            err.code()
        }
    }
}

fn emit(cli: &Cli, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    }
}

fn to_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

fn load(cli: &Cli, path: &Path) -> CliResult<Problem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut problem = parse_problem(&text)?.resolve()?;
    if let Some(seed) = cli.seed {
        problem.seed = seed;
    }
    if let Some(t) = cli.tol_rank {
        problem.tolerances.rank = t;
    }
    if let Some(t) = cli.tol_geom {
        problem.tolerances.geom = t;
    }
    for t in [problem.tolerances.rank, problem.tolerances.geom] {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage("tolerances must be positive".into()));
        }
    }
    Ok(problem)
}

fn dispatch(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Analyze { file } => analyze(cli, &load(cli, file)?),
        Command::Sample { file } => sample(cli, &load(cli, file)?),
        Command::Types { file } => types(cli, &load(cli, file)?),
        Command::Basis { file } => basis(&load(cli, file)?),
        Command::EmptyCheck { file } => empty_check(&load(cli, file)?),
        Command::Svg { file } => svg(&load(cli, file)?),
        Command::Oracle { file } => oracle(cli, &load(cli, file)?),
    }
}

fn coordinates(problem: &Problem) -> CliResult<&Placement> {
    problem
        .placement
        .as_ref()
        .ok_or_else(|| CliError::Input(InputError::Parse("this needs coordinates".into())))
}

/// The homomorphic type of the coordinates if there is one, else the first.
fn auto_type(problem: &Problem) -> CliResult<TypeAssignment> {
    let p = problem.placement.as_ref().ok_or_else(|| {
        CliError::Input(InputError::Parse(
            "type \"auto\" needs coordinates; give an explicit type instead".into(),
        ))
    })?;
    let tol = problem.tolerances.geom;
    let cap = DEFAULT_AUTOMORPHISM_CAP;
    if let Ok(Some(phi)) = find_homomorphic_type(&problem.graph, p, &problem.group, tol, cap) {
        return Ok(phi);
    }
    Ok(type_catalog(&problem.graph, p, &problem.group, tol, cap)?
        .base()
        .clone())
}

fn single_type(problem: &Problem) -> CliResult<TypeAssignment> {
    match &problem.type_spec {
        ResolvedType::Explicit(phi) => Ok(phi.clone()),
        ResolvedType::Mode(TypeMode::Auto) => auto_type(problem),
        ResolvedType::Mode(TypeMode::Enumerate) => Err(CliError::Usage(
            "this command needs a single type; give an explicit map or \"auto\"".into(),
        )),
    }
}

fn class_types(problem: &Problem, normalized: bool) -> CliResult<Vec<TypeAssignment>> {
    match &problem.type_spec {
        ResolvedType::Mode(TypeMode::Enumerate) => {
            let p = coordinates(problem)?;
            let (_, list) = enumerate_types(
                &problem.graph,
                p,
                &problem.group,
                problem.tolerances.geom,
                normalized,
                DEFAULT_AUTOMORPHISM_CAP,
            )?;
            Ok(list)
        }
        _ => Ok(vec![single_type(problem)?]),
    }
}

fn options(problem: &Problem, trials: usize) -> SymGenericOptions {
    SymGenericOptions {
        trials,
        seed: problem.seed,
        rank_tol: problem.tolerances.rank,
        geom_tol: problem.tolerances.geom,
        ..Default::default()
    }
}

fn analyze(cli: &Cli, problem: &Problem) -> CliResult<String> {
    let (g, group) = (&problem.graph, &problem.group);
    let trials = cli.trials.unwrap_or(DEFAULT_TRIALS);
    let types = class_types(problem, cli.normalized)?;
    let framework = match &problem.placement {
        Some(p) => {
            let f = Framework::new(g.clone(), p.clone(), problem.tolerances.geom)?;
            let in_class = types
                .iter()
                .all(|phi| verify_type(g, p, group, phi, problem.tolerances.geom).unwrap_or(false));
            Some(FrameworkJson {
                in_class,
                rigidity: (&rigidity_verdict(&f, problem.tolerances.rank)).into(),
            })
        }
        None => None,
    };
    let opts = options(problem, trials);
    let classes = types
        .iter()
        .map(|phi| {
            let rep = sym_generic_verdict(g, group, phi, &opts)?;
            Ok(ClassJson::new(g, group, phi, &rep, trials))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(to_text(&AnalyzeJson {
        group: group_name(problem),
        group_order: group.order(),
        dimension: group.dim(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        seed: problem.seed,
        framework,
        classes,
    }))
}

fn group_name(problem: &Problem) -> String {
    let labels: Vec<&str> = problem.group.elements().iter().map(|e| e.label()).collect();
    format!("{{{}}}", labels.join(", "))
}

fn sample(cli: &Cli, problem: &Problem) -> CliResult<String> {
    let phi = single_type(problem)?;
    let g = &problem.graph;
    let basis = config_space_basis(g, &problem.group, &phi)?;
    let emptiness = class_is_empty(g, &basis, problem.tolerances.geom);
    if emptiness.empty {
        let edges: Vec<String> = edge_names(g, &emptiness.edges)
            .iter()
            .map(|[a, b]| format!("{{{a}, {b}}}"))
            .collect();
        return Err(CliError::Domain(format!(
            "the class is empty: every configuration collapses {}",
            edges.join(", ")
        )));
    }
    let mut rng = seeded_rng(problem.seed);
    let samples = (0..cli.trials.unwrap_or(1))
        .map(|_| {
            let p = sample_config(g, &basis, &mut rng, 100, problem.tolerances.geom)?;
            Ok(coordinates_json(g, &p))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(to_text(&SampleJson {
        type_map: type_json(g, &problem.group, &phi),
        k: basis.k(),
        seed: problem.seed,
        samples,
    }))
}

fn types(cli: &Cli, problem: &Problem) -> CliResult<String> {
    let p = coordinates(problem)?;
    let (g, group) = (&problem.graph, &problem.group);
    let (catalog, list) = enumerate_types(
        g,
        p,
        group,
        problem.tolerances.geom,
        cli.normalized,
        DEFAULT_AUTOMORPHISM_CAP,
    )?;
    let homomorphic = find_homomorphic_type(
        g,
        p,
        group,
        problem.tolerances.geom,
        DEFAULT_AUTOMORPHISM_CAP,
    )?;
    let entries: Vec<TypeEntryJson> = list
        .iter()
        .map(|phi| TypeEntryJson {
            type_map: type_json(g, group, phi),
            homomorphism: is_homomorphism(group, phi),
        })
        .collect();
    Ok(to_text(&TypesJson {
        coincidence_group: catalog
            .coincidence_group()
            .iter()
            .map(|a| g.cycle_string(a))
            .collect(),
        coincidence_order: catalog.coincidence_group().len(),
        normalized: cli.normalized,
        count: entries.len(),
        types: entries,
        homomorphic_type_exists: homomorphic.is_some(),
    }))
}

fn basis(problem: &Problem) -> CliResult<String> {
    let phi = single_type(problem)?;
    let g = &problem.graph;
    let b = config_space_basis(g, &problem.group, &phi)?;
    let vectors = (0..b.k())
        .map(|j| {
            let p = Placement::new(b.dim(), b.vector(j)).expect("d divides dn");
            coordinates_json(g, &p)
        })
        .collect();
    Ok(to_text(&BasisJson {
        type_map: type_json(g, &problem.group, &phi),
        k: b.k(),
        residual: max_residual(&problem.group, &phi, b.matrix()),
        basis: vectors,
    }))
}

fn empty_check(problem: &Problem) -> CliResult<String> {
    let phi = single_type(problem)?;
    let g = &problem.graph;
    let b = config_space_basis(g, &problem.group, &phi)?;
    let e = class_is_empty(g, &b, problem.tolerances.geom);
    Ok(to_text(&EmptyJson {
        empty: e.empty,
        edges: edge_names(g, &e.edges),
    }))
}

fn svg(problem: &Problem) -> CliResult<String> {
    let g = &problem.graph;
    let placement = match &problem.placement {
        Some(p) => p.clone(),
        None => {
            let phi = single_type(problem)?;
            let b = config_space_basis(g, &problem.group, &phi)?;
            if class_is_empty(g, &b, problem.tolerances.geom).empty {
                return Err(CliError::Domain(
                    "the class is empty; nothing to draw".into(),
                ));
            }
            sample_config(
                g,
                &b,
                &mut seeded_rng(problem.seed),
                100,
                problem.tolerances.geom,
            )?
        }
    };
    let f = Framework::new(g.clone(), placement, problem.tolerances.geom)?;
    let options = SvgOptions {
        coincidence_tol: problem.tolerances.geom,
        ..Default::default()
    };
    render_svg(&f, Some(&problem.group), &options).map_err(|e| CliError::Domain(e.to_string()))
}

fn details(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn oracle(cli: &Cli, problem: &Problem) -> CliResult<String> {
    let (g, group) = (&problem.graph, &problem.group);
    let tol = problem.tolerances.geom;
    let types_check = match &problem.placement {
        None => OracleCheck::skipped("no coordinates"),
        Some(p) => match brute_force_type_search(g, p, group, tol) {
            Err(e) => OracleCheck::skipped(e.to_string()),
            Ok(mut brute) => {
                brute.retain(|t| !cli.normalized || t.is_normalized());
                let mine =
                    enumerate_types(g, p, group, tol, cli.normalized, DEFAULT_AUTOMORPHISM_CAP)
                        .map(|(_, l)| l)
                        .unwrap_or_default();
                let mut a: Vec<_> = brute.iter().map(|t| t.images().to_vec()).collect();
                let mut b: Vec<_> = mine.iter().map(|t| t.images().to_vec()).collect();
                a.sort();
                b.sort();
                OracleCheck::ran(
                    Some(a == b),
                    details(&[
                        ("brute_force_count", json!(a.len())),
                        ("enumerated_count", json!(b.len())),
                    ]),
                )
            }
        },
    };
    let phi = single_type(problem).ok();
    let exact_group = group
        .elements()
        .iter()
        .all(|e| e.matrix().iter().all(|&x| x == 0.0 || x.abs() == 1.0));
    let kernel_check = match &phi {
        None => OracleCheck::skipped("no single type"),
        Some(_) if !exact_group => OracleCheck::skipped("group matrices are not all 0 and ±1"),
        Some(phi) => {
            let m = symrig_core::generic::constraint_matrix(group, phi);
            match kernel_oracle(&m) {
                Err(e) => OracleCheck::skipped(e.to_string()),
                Ok(exact) => {
                    let k = config_space_basis(g, group, phi)?.k();
                    OracleCheck::ran(
                        Some(exact == k),
                        details(&[("exact_k", json!(exact)), ("svd_k", json!(k))]),
                    )
                }
            }
        }
    };
    let generic_check = match (&phi, &problem.placement) {
        (Some(phi), Some(p)) => {
            match exhaustive_generic_check(p, group, phi, 8, 1e-9, problem.seed) {
                Err(e) => OracleCheck::skipped(e.to_string()),
                Ok(generic) => OracleCheck::ran(None, details(&[("generic", json!(generic))])),
            }
        }
        _ => OracleCheck::skipped("needs coordinates and a single type"),
    };
    Ok(to_text(&OracleJson {
        types: types_check,
        kernel: kernel_check,
        generic: generic_check,
    }))
}
