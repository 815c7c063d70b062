use knot_core::io::*;
use knot_core::KnotError;

#[test]
fn parse_errors_carry_positions() {
    let err = InputDocument::parse("{\n  \"group\": [1, 2,\n}").unwrap_err();
    let KnotError::InvalidInput(msg) = err else { panic!("wrong error kind") };
    assert!(msg.starts_with("line 3 column"), "{msg}");
    assert!(InputDocument::parse(r#"{"group": {"name": "C9"}, "extra": 1}"#).is_err());
}

#[test]
fn canonical_hash_ignores_formatting() {
    let a = InputDocument::parse(r#"{"group": {"name": "P'2", "p": 3}}"#).unwrap();
    let b = InputDocument::parse("{ \"stabilizer_point\": 0,\n  \"group\": { \"p\": 3, \"name\": \"P'2\" } }").unwrap();
    assert_eq!(a.canonical_hash(), b.canonical_hash());
    let c = InputDocument::parse(r#"{"group": {"name": "P'2", "p": 3}, "stabilizer_point": 1}"#).unwrap();
    assert_ne!(a.canonical_hash(), c.canonical_hash());
}

#[test]
fn documents_prepare_groups() {
    let doc = InputDocument::parse(
        r#"{"group": {"name": "semidirect-std", "p": 3, "matrices": [[[1,1],[0,1]],[[0,-1],[1,0]]]},
            "stabilizer_point": 4,
            "decomposition_groups": [[[1,2,0,4,5,3,7,8,6]]]}"#,
    )
    .unwrap();
    let prep = doc.prepare().unwrap();
    assert_eq!(prep.group.order(), 216);
    assert_eq!(prep.stabilizer.order(), 24);
    assert_eq!(prep.decomposition_groups[0].order(), 3);

    let outside = InputDocument::parse(r#"{"group": {"name": "C9"}, "decomposition_groups": [[[1,0,2,3,4,5,6,7,8]]]}"#)
        .unwrap();
    assert!(matches!(outside.prepare(), Err(KnotError::InvalidInput(_))));
    let short = InputDocument::parse(r#"{"group": {"name": "C9"}, "decomposition_groups": [[[1,0]]]}"#).unwrap();
    assert!(short.prepare().is_err());
}

#[test]
fn named_constructions() {
    let build = |name: &str, p: Option<usize>, n: Option<usize>| {
        NamedConstruction {
            name: name.into(),
            p,
            n,
            matrices: vec![],
        }
        .build()
    };
    assert_eq!(build("P", Some(3), Some(2)).unwrap().group.order(), 27);
    assert_eq!(build("E3", Some(3), None).unwrap().group.order(), 27);
    assert_eq!(build("H2", Some(5), None).unwrap().group.order(), 5);
    assert!(build("P2", None, None).is_err());
    assert!(build("C0", None, None).is_err());
    let cover = NamedConstruction {
        name: "heisenberg-cover".into(),
        p: Some(3),
        n: None,
        matrices: vec![[[1, 1], [0, 1]], [[0, -1], [1, 0]]],
    }
    .build()
    .unwrap();
    assert_eq!(cover.group.order(), 27 * 24);
    assert_eq!(cover.distinguished.unwrap().order(), 3);
}

#[test]
fn literals_round_trip() {
    let g = NamedConstruction {
        name: "P'1".into(),
        p: Some(3),
        n: None,
        matrices: vec![],
    }
    .build()
    .unwrap()
    .group;
    let lit = GroupLiteral::of(&g);
    let text = serde_json::to_string(&lit).unwrap();
    let back: GroupLiteral = serde_json::from_str(&text).unwrap();
    assert_eq!(back.build().unwrap(), g);
}
