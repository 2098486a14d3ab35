mod common;

use std::collections::BTreeMap;

use multitl::diagrams::ColorSequence;
use multitl::hecke::{kl_basis, standard_to_kl, CoxeterWord, HeckeElement};
use multitl::jones_wenzl::{DecompositionResult, JonesWenzl};
use multitl::tl_category::TLMorphism;

use common::*;

/// Multiplicities of `b_y` in `b_{x_1} ... b_{x_n}`, counted at `v = 1`.
fn bott_samelson_multiplicities(x: &ColorSequence) -> BTreeMap<CoxeterWord, usize> {
    let product = x
        .colors()
        .iter()
        .fold(HeckeElement::one(), |acc, s| acc.mult_bs(s));
    standard_to_kl(&product)
        .terms()
        .iter()
        .map(|(y, p)| {
            let at_one: i64 = p.terms().values().sum();
            (y.clone(), usize::try_from(at_one).unwrap())
        })
        .filter(|(_, n)| *n > 0)
        .collect()
}

fn check_decomposition(jw: &JonesWenzl, x: &ColorSequence) {
    let tl = jw.tl();
    let DecompositionResult::Complete(d) = jw.decompose_identity(x).unwrap() else {
        panic!("{x} obstructed over {}", jw.ring());
    };
    let sum = d
        .parts
        .iter()
        .try_fold(TLMorphism::zero(x.clone(), x.clone()), |acc, p| acc.add(&p.idempotent))
        .unwrap();
    assert_eq!(sum, tl.identity(x), "{x}: idempotents do not sum to the identity");
    for (i, p) in d.parts.iter().enumerate() {
        assert_eq!(tl.compose(&p.inclusion, &p.projection).unwrap(), p.idempotent);
        let top = jw.recursive(&p.label).unwrap().morphism.unwrap();
        assert_eq!(tl.compose(&p.projection, &p.inclusion).unwrap(), top, "{x} part {}", p.label);
        for (j, q) in d.parts.iter().enumerate() {
            let pq = tl.compose(&p.idempotent, &q.idempotent).unwrap();
            if i == j {
                assert_eq!(pq, p.idempotent);
            } else {
                assert!(pq.is_zero(), "{x}: parts {i} and {j} are not orthogonal");
            }
        }
    }
    let got: BTreeMap<CoxeterWord, usize> = d
        .multiplicities()
        .into_iter()
        .map(|(y, n)| (CoxeterWord::from(y.colors().to_vec()), n))
        .collect();
    assert_eq!(got, bott_samelson_multiplicities(x), "{x}");
}

#[test]
fn generic_decompositions_are_complete_and_orthogonal() {
    let jw = symmetric("rbg");
    for x in reduced_words(&rbg(), 5) {
        check_decomposition(&jw, &x);
    }
}

#[test]
fn modular_decompositions_where_idempotents_exist() {
    let jw = crystallographic("rbg", 5);
    for x in reduced_words(&rbg(), 5) {
        check_decomposition(&jw, &x);
    }
}

#[test]
fn obstructed_decomposition_names_the_missing_idempotent() {
    let jw = crystallographic("rbg", 2);
    match jw.decompose_identity(&seq("grbr")).unwrap() {
        DecompositionResult::Obstructed(o) => assert_eq!(o.k, 2),
        DecompositionResult::Complete(d) => panic!("unexpected {:?}", d.multiplicities()),
    }
}

#[test]
fn kl_basis_is_positive_and_unitriangular() {
    for x in reduced_words(&rbg(), 7) {
        let w = CoxeterWord::from(x.colors().to_vec());
        let b = kl_basis(&w);
        assert_eq!(b.coeff(&w), multitl::hecke::LaurentPoly::one());
        for (y, p) in b.terms() {
            assert!(p.is_positive());
            assert!(y.len() <= w.len());
            if y != &w {
                assert!(p.terms().keys().all(|&e| e > 0), "b_{w} at {y}: {p}");
            }
        }
    }
}
