#![allow(dead_code)]

use std::path::PathBuf;

use symrig::{parse_problem, Problem, ResolvedType};
use symrig_core::{enumerate_types, TypeAssignment, DEFAULT_AUTOMORPHISM_CAP};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_path(name: &str) -> PathBuf {
    fixture_dir().join(format!("{name}.json"))
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn fixture(name: &str) -> Problem {
    parse_problem(&fixture_text(name))
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .resolve()
        .unwrap()
}

/// Every fixture name, sorted.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .filter_map(|e| {
            let path = e.ok()?.path();
            (path.extension()? == "json").then(|| path.file_stem()?.to_str().map(String::from))?
        })
        .collect();
    names.sort();
    names
}

/// The explicit type, or every type of the coordinates.
pub fn fixture_types(problem: &Problem) -> Vec<TypeAssignment> {
    match &problem.type_spec {
        ResolvedType::Explicit(phi) => vec![phi.clone()],
        ResolvedType::Mode(_) => {
            let p = problem.placement.as_ref().expect("typed by coordinates");
            enumerate_types(
                &problem.graph,
                p,
                &problem.group,
                problem.tolerances.geom,
                false,
                DEFAULT_AUTOMORPHISM_CAP,
            )
            .unwrap()
            .1
        }
    }
}

/// Runs the command line in-process; returns (exit code, stdout, stderr).
pub fn run_cli(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("symrig").chain(args.iter().copied());
    let code = symrig::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}
