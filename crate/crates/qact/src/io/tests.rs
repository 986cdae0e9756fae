use super::*;
use crate::action::verify_coaction;
use crate::hopf::{function_algebra, structure_distance, verify_hopf, GroupTable};
use crate::numlin::Tolerance;
use crate::products::verify_module;
use crate::twist::verify_cocycle;

#[test]
fn hopf_file_round_trip() {
    let h = function_algebra(&GroupTable::symmetric3());
    let f = AlgebraFile::from_hopf(&h);
    let json = serde_json::to_string(&f).unwrap();
    let back: AlgebraFile = serde_json::from_str(&json).unwrap();
    assert_eq!(back, f);
    assert_eq!(structure_distance(&back.to_hopf().unwrap(), &h), 0.0);
}

#[test]
fn catalog_loads_and_verifies() {
    let tol = Tolerance::default();
    for (name, doc) in catalog() {
        let mut ws = Workspace::new();
        ws.load_str(name, &serde_json::to_string(&doc).unwrap()).unwrap();
        assert!(verify_hopf(&ws.hopf(None).unwrap(), &tol).pass(), "{name}");
        for c in ws.coaction_names() {
            assert!(verify_coaction(&ws.coaction(Some(&c)).unwrap(), &tol).pass(), "{name}: {c}");
        }
        if !doc.modules.is_empty() {
            assert!(verify_module(&ws.module(None).unwrap(), &tol).pass(), "{name}");
        }
        if !doc.cocycles.is_empty() {
            assert!(verify_cocycle(&ws.cocycle(None).unwrap(), &tol).pass(), "{name}");
        }
        if !doc.corepresentations.is_empty() {
            let (u, h) = ws.corep(None).unwrap();
            assert!(crate::corep::verify_corep(&u, &h, &tol).unwrap().pass());
        }
    }
}

#[test]
fn conflicting_names_are_rejected() {
    let h = function_algebra(&GroupTable::cyclic(2));
    let mut a = AlgebraFile::from_hopf(&h);
    let mut ws = Workspace::new();
    ws.add(Document { algebras: vec![a.clone()], ..Document::default() }).unwrap();
    ws.add(Document { algebras: vec![a.clone()], ..Document::default() }).unwrap();
    a.unit[0] = [2.0, 0.0];
    assert!(matches!(ws.add(Document { algebras: vec![a], ..Document::default() }), Err(IoError::Duplicate { .. })));
    assert!(matches!(ws.coaction(None), Err(IoError::Empty(_))));
    assert!(matches!(ws.hopf(Some("nope")), Err(IoError::Missing { .. })));
}

#[test]
fn hashes_ignore_formatting() {
    let a: serde_json::Value = serde_json::from_str(r#"{"b": 1, "a": [1.5, 2]}"#).unwrap();
    let b: serde_json::Value = serde_json::from_str("{\"a\":[1.5,2],\n \"b\":1}").unwrap();
    assert_eq!(content_hash(&a), content_hash(&b));
    assert_eq!(content_hash(&a).len(), 64);
}

#[test]
fn malformed_shapes_are_errors() {
    let mut ws = Workspace::new();
    assert!(matches!(ws.load_str("x", "{not json"), Err(IoError::Parse { .. })));
    let h = function_algebra(&GroupTable::cyclic(2));
    let mut f = AlgebraFile::from_hopf(&h);
    f.mult.pop();
    assert!(f.to_algebra().is_err());
}
