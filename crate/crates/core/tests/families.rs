//! Builds, link chains and persistence of family members.

use agcy::families::{build, expected, family4_determinantal};
use agcy::groebner::Budget;
use agcy::io::IdealFile;
use agcy::random::Rng;
use agcy::resolution::{artinian_betti, free_resolution};

const P: u32 = 32003;

#[test]
fn builds_are_deterministic() {
    let a = build(5, 3, P).unwrap();
    let b = build(5, 3, P).unwrap();
    assert_eq!(a.ideal.gens(), b.ideal.gens());
    assert_eq!(a.transcript, b.transcript);
    let c = build(5, 4, P).unwrap();
    assert_ne!(a.ideal.gens(), c.ideal.gens());
}

#[test]
fn other_characteristic() {
    let x = build(3, 1, 101).unwrap();
    assert_eq!(x.ideal.ring().characteristic(), 101);
    assert_eq!((x.ideal.projective_dimension().unwrap(), x.ideal.degree().unwrap()), (3, 16));
    assert!(build(3, 1, 100).is_err());
    assert!(build(12, 1, P).is_err());
}

#[test]
fn determinantal_family_four_matches_bilinked_table() {
    let x = family4_determinantal(1, P).unwrap();
    let b = Budget::unlimited();
    let table = free_resolution(&x.ideal, &mut Rng::new(2), &b).unwrap().betti().clone();
    assert!(table.same_entries(expected(4).unwrap().betti.as_ref().unwrap()), "{}", table.summary());
    let mut degs = x.ideal.minimal_generators().unwrap().degrees();
    degs.sort_unstable();
    assert_eq!(degs, vec![2, 2, 2, 3, 3, 3, 3]);
}

#[test]
fn schreyer_and_koszul_tables_agree() {
    let b = Budget::unlimited();
    for id in [2, 6] {
        let x = build(id, 1, P).unwrap();
        let s = free_resolution(&x.ideal, &mut Rng::new(3), &b).unwrap();
        let k = artinian_betti(&x.ideal, &mut Rng::new(4), &b).unwrap();
        assert!(s.betti().same_entries(&k), "family {id}: {} vs {}", s.betti().summary(), k.summary());
    }
}

#[test]
fn bilinkage_steps_add_up() {
    let x = build(8, 1, P).unwrap();
    let bl = x.bilinkage.as_ref().unwrap();
    assert_eq!((bl.first.degrees.ambient, bl.first.degrees.input, bl.first.degrees.residual), (24, 6, 18));
    assert_eq!((bl.second.degrees.ambient, bl.second.degrees.input, bl.second.degrees.residual), (36, 18, 18));
    assert!(bl.result().equals(&x.ideal).unwrap());
}

#[test]
fn ideal_file_round_trip() {
    let x = build(9, 2, P).unwrap();
    let file = IdealFile::from_instance(&x);
    let back = IdealFile::from_json(&file.to_json()).unwrap();
    assert_eq!(back.meta.family, Some(9));
    assert_eq!(back.meta.seed, Some(2));
    assert_eq!(back.to_ideal().unwrap().gens(), x.ideal.gens());
}
