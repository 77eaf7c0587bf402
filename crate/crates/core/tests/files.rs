use std::path::PathBuf;

use noether::group::iso::identify;
use noether::group::{FiniteGroup, GroupForm};
use noether::modular::{FiniteLattice, ModularLatticeForm};
use noether::verify::{verify_all, DEFAULT_BUDGET};
use noether::{Error, Form, ObjectId};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

#[test]
fn a4_from_file() {
    let g = FiniteGroup::load(data("groups/a4.json")).unwrap();
    assert_eq!(g.order(), 12);
    assert_eq!(identify(&g).as_deref(), Some("A4"));
    let form = GroupForm::new([g.clone()]).unwrap();
    let fiber = form.fiber(ObjectId(0)).unwrap();
    assert_eq!(fiber.size(), 10);
    // A4 has no subgroup of order 6
    assert!(form.subgroups(ObjectId(0)).unwrap().iter().all(|h| h.count() != 6));
    assert!(verify_all(&form, &[], DEFAULT_BUDGET).unwrap().iter().all(|r| r.passed()));
    let again = FiniteGroup::from_json(&serde_json::to_string(&g.to_file()).unwrap()).unwrap();
    assert_eq!(again, g);
}

#[test]
fn m3_loads_and_n5_is_rejected() {
    let m3 = FiniteLattice::load(data("lattices/m3.json")).unwrap();
    assert_eq!(m3.size(), 5);
    let form = ModularLatticeForm::new([m3]).unwrap();
    assert!(verify_all(&form, &[], DEFAULT_BUDGET).unwrap().iter().all(|r| r.passed()));
    match FiniteLattice::load(data("lattices/n5.json")) {
        Err(Error::Validation(msg)) => assert!(msg.contains("not modular"), "{msg}"),
        other => panic!("N5 accepted: {other:?}"),
    }
}

#[test]
fn missing_and_malformed_files() {
    assert!(matches!(FiniteGroup::load(data("groups/none.json")), Err(Error::Io(_))));
    let err = FiniteGroup::from_json(r#"{"name":"x","order":2,"table":[[0,1],[1,1]]}"#).unwrap_err();
    assert!(matches!(err, Error::Validation(_)), "{err}");
}
