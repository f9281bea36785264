mod common;

use common::{fixture_names, fixture_text};
use symrig::{parse_problem, InputError, ProblemFile, ResolvedType, TypeMode, TypeSpec};

const MINIMAL: &str = r#"{
    "graph": {"vertices": ["v1", "v2"], "edges": [["v1", "v2"]]},
    "dimension": 2,
    "group": {"schoenflies": "C2"}
}"#;

#[test]
fn minimal_problem_is_valid() {
    let file = parse_problem(MINIMAL).unwrap();
    assert_eq!(file.type_spec, TypeSpec::Mode(TypeMode::Auto));
    let problem = file.resolve().unwrap();
    assert_eq!(problem.group.order(), 2);
    assert_eq!(problem.graph.edge_count(), 1);
    assert!(problem.placement.is_none());
}

#[test]
fn self_loop_is_rejected() {
    let text = MINIMAL.replace(r#"[["v1", "v2"]]"#, r#"[["v1", "v1"]]"#);
    assert_eq!(parse_problem(&text), Err(InputError::SelfLoop("v1".into())));
}

#[test]
fn unknown_group_is_rejected() {
    let text = MINIMAL.replace("\"C2\"", "\"C0\"");
    assert_eq!(
        parse_problem(&text),
        Err(InputError::UnknownGroup("C0".into()))
    );
    let text = MINIMAL.replace("\"C2\"", "\"Q7\"");
    assert!(matches!(
        parse_problem(&text),
        Err(InputError::UnknownGroup(_))
    ));
}

#[test]
fn bad_permutations_are_rejected() {
    for ty in [
        r#"{"C2": "(v1 v3)"}"#,
        r#"{"C2": "(v1 v2"}"#,
        r#"{"C3": "(v1 v2)"}"#,
        r#"{"Id": "id"}"#,
    ] {
        let text = MINIMAL.replace(
            r#""group": {"schoenflies": "C2"}"#,
            &format!(r#""group": {{"schoenflies": "C2"}}, "type": {ty}"#),
        );
        assert!(
            matches!(parse_problem(&text), Err(InputError::BadPermutation(_))),
            "{ty}"
        );
    }
}

#[test]
fn non_automorphism_is_a_bad_permutation() {
    let text = r#"{
        "graph": {"vertices": ["v1", "v2", "v3"], "edges": [["v1", "v2"], ["v2", "v3"]]},
        "dimension": 2,
        "group": {"schoenflies": "C2"},
        "type": {"C2": "(v1 v2)"}
    }"#;
    assert!(matches!(
        parse_problem(text),
        Err(InputError::BadPermutation(_))
    ));
}

#[test]
fn unknown_fields_and_malformed_input_are_parse_errors() {
    let text = MINIMAL.replace("\"dimension\"", "\"colour\": 1, \"dimension\"");
    assert!(matches!(parse_problem(&text), Err(InputError::Parse(_))));
    assert!(matches!(parse_problem("{"), Err(InputError::Parse(_))));
    let text = MINIMAL.replace(r#"[["v1", "v2"]]"#, r#"[["v1", "v9"]]"#);
    assert!(matches!(parse_problem(&text), Err(InputError::Parse(_))));
    let text = MINIMAL.replace(r#"[["v1", "v2"]]"#, r#"[["v1", "v2"], ["v2", "v1"]]"#);
    assert!(matches!(parse_problem(&text), Err(InputError::Parse(_))));
    let text = MINIMAL.replace(
        "\"dimension\": 2,",
        r#""dimension": 2, "coordinates": {"v1": [0, 1]},"#,
    );
    assert!(matches!(parse_problem(&text), Err(InputError::Parse(_))));
}

#[test]
fn groups_from_generators() {
    let text = r#"{
        "graph": {"vertices": ["a", "b", "c", "d"], "edges": [["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]]},
        "dimension": 2,
        "group": {"generators": [{"matrix": [[0, -1], [1, 0]], "label": "r"}]},
        "type": {"r": "(a b c d)", "r.2": "(a c)(b d)"}
    }"#;
    let err = parse_problem(text);
    // Only the generator keeps its own label; the others get geometric ones.
    assert!(matches!(err, Err(InputError::BadPermutation(_))));
    let text = text.replace(
        r#""r.2": "(a c)(b d)""#,
        r#""C2": "(a c)(b d)", "C4^3": "(a d c b)""#,
    );
    let problem = parse_problem(&text).unwrap().resolve().unwrap();
    assert_eq!(problem.group.order(), 4);
    let labels: Vec<&str> = problem.group.elements().iter().map(|e| e.label()).collect();
    assert!(labels.contains(&"r") && labels.contains(&"C2"));
    let ResolvedType::Explicit(phi) = &problem.type_spec else {
        panic!("explicit type expected")
    };
    assert!(symrig_core::is_homomorphism(&problem.group, phi));
}

#[test]
fn every_fixture_round_trips() {
    let names = fixture_names();
    assert!(names.len() >= 15);
    for name in names {
        let file = parse_problem(&fixture_text(&name)).unwrap();
        let again: ProblemFile = parse_problem(&file.to_json()).unwrap();
        assert_eq!(file, again, "{name}");
        let value: serde_json::Value = serde_json::from_str(&fixture_text(&name)).unwrap();
        assert!(value.get("seed").is_some(), "{name} must carry a seed");
    }
}
