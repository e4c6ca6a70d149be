use std::path::PathBuf;

use kstab_core::ratpoly::rat;
use kstab_core::series::{
    builtin_series, conic_p2, load_series, parse_series_document, to_document, validate,
    BUILTIN_NAMES,
};
use kstab_core::Error;

fn shipped(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

#[test]
fn shipped_files_match_the_catalog() {
    assert_eq!(
        load_series(shipped("mm2_28.toml")).unwrap(),
        builtin_series("MM2.28").unwrap()
    );
    assert_eq!(
        load_series(shipped("mm2_23b.toml")).unwrap(),
        builtin_series("MM2.23b").unwrap()
    );
    assert_eq!(
        load_series(shipped("conic_p2.toml")).unwrap(),
        conic_p2(&rat(1, 2))
    );
}

#[test]
fn catalog_round_trips_through_documents() {
    for name in BUILTIN_NAMES {
        let Ok(s) = builtin_series(name) else {
            continue;
        };
        let text = to_document(&s);
        assert_eq!(parse_series_document(&text).unwrap(), s, "{name}");
    }
}

#[test]
fn negative_mobile_part_is_rejected_by_clause() {
    let text = std::fs::read_to_string(shipped("mm2_28.toml"))
        .unwrap()
        .replace("f = [\"3\", \"-1\"]", "f = [\"3\", \"-2\"]");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, text).unwrap();
    match load_series(&path) {
        Err(Error::Validation(clauses)) => {
            assert!(clauses.iter().any(|c| c.contains("f ≥ 0")), "{clauses:?}");
        }
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn malformed_documents_are_parse_errors() {
    assert!(matches!(
        parse_series_document("[series]\nname = 3"),
        Err(Error::Parse(_))
    ));
    let unknown_target = std::fs::read_to_string(shipped("mm2_28.toml"))
        .unwrap()
        .replace("proj-plane", "proj-space");
    assert!(matches!(
        parse_series_document(&unknown_target),
        Err(Error::Parse(_))
    ));
}

#[test]
fn builtins_validate() {
    for name in BUILTIN_NAMES {
        if let Ok(s) = builtin_series(name) {
            assert!(validate(&s).is_empty(), "{name}");
        }
    }
}
