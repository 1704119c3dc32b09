//! Compares the Sweedler-algebra constants against the values derived by
//! `scripts/derive_sweedler.py`, which rebuilds the algebra from its
//! presentation in sympy and solves for each quantity independently.
//!
//! The constant family `C(H₄, Z/2)` must reproduce the same values in both
//! components.

use std::fs;
use std::path::PathBuf;

use serde_json::Value;

use hopfpi::crossed::{drinfeld_u, ell_element, find_twists, h_element, Crossing, RMatrix};
use hopfpi::field::{Field, Scalar};
use hopfpi::hopf::HopfPiData;
use hopfpi::instances::{constant_sweedler_z2, sweedler, sweedler_r};
use hopfpi::integrals::{distinguished, is_cosemisimple, is_semisimple, is_unimodular};
use hopfpi::linalg::LinearMap;

fn oracle() -> Value {
    let path =
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/oracle/sweedler.json");
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

fn text(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_text).collect()
}

/// Scales so the first nonzero coordinate is 1.
fn normalized(v: &[Scalar]) -> Vec<String> {
    let lead = v
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero vector")
        .inv()
        .unwrap();
    v.iter()
        .map(|c| (c.clone() * lead.clone()).to_text())
        .collect()
}

fn q() -> Field {
    Field::Rational
}

fn components(h: &HopfPiData) -> Vec<usize> {
    (0..h.order()).collect()
}

fn check_integrals(h: &HopfPiData, o: &Value) {
    let d = distinguished(h).unwrap();
    assert_eq!(
        normalized(&d.big_lambda_left),
        strings(&o["big_lambda_left"])
    );
    assert_eq!(
        normalized(&d.big_lambda_right),
        strings(&o["big_lambda_right"])
    );
    assert_eq!(text(&d.nu), strings(&o["nu"]));
    for a in components(h) {
        assert_eq!(
            normalized(&d.lambda_left[a]),
            strings(&o["lambda_left"]),
            "λ_left at {a}"
        );
        assert_eq!(
            normalized(&d.lambda_right[a]),
            strings(&o["lambda_right"]),
            "λ_right at {a}"
        );
        assert_eq!(text(&d.g[a]), strings(&o["g"]), "g at {a}");
    }
    assert_eq!(
        is_semisimple(h).unwrap(),
        o["semisimple"].as_bool().unwrap()
    );
    assert_eq!(
        is_cosemisimple(h).unwrap(),
        o["cosemisimple"].as_bool().unwrap()
    );
    assert_eq!(is_unimodular(h, &d), o["unimodular"].as_bool().unwrap());
}

#[test]
fn sweedler_integrals_match_oracle() {
    check_integrals(&sweedler(q()).unwrap(), &oracle());
}

#[test]
fn constant_family_integrals_match_oracle() {
    check_integrals(&constant_sweedler_z2(q()).unwrap().0, &oracle());
}

#[test]
fn antipode_order_matches_oracle() {
    let h = sweedler(q()).unwrap();
    let s = h.antipode(0);
    let id = LinearMap::identity(q(), 4);
    let order = (1..=16u64).find(|&k| s.pow(k) == id).unwrap();
    assert_eq!(order, oracle()["antipode_order"].as_u64().unwrap());
}

fn check_rmatrices(h: &HopfPiData, phi: &Crossing) {
    let o = oracle();
    let d = distinguished(h).unwrap();
    for entry in o["rmatrices"].as_array().unwrap() {
        let lambda = q().parse(entry["lambda"].as_str().unwrap()).unwrap();
        let r0 = sweedler_r(q(), &lambda).unwrap();
        assert_eq!(text(&r0), strings(&entry["r"]), "R at λ = {lambda}");
        let r = RMatrix::constant(h, &r0).unwrap();
        let dr = drinfeld_u(h, phi, &r);
        let ell = ell_element(h, &dr).unwrap();
        let hh = h_element(h, &r, &d.nu);
        for a in components(h) {
            assert_eq!(text(&dr.u[a]), strings(&entry["u"]), "u at λ = {lambda}");
            assert_eq!(
                text(&dr.u_inv[a]),
                strings(&entry["u_inv"]),
                "u⁻¹ at λ = {lambda}"
            );
            assert_eq!(text(&ell[a]), strings(&entry["ell"]), "ℓ at λ = {lambda}");
            assert_eq!(text(&hh[a]), strings(&entry["h"]), "h at λ = {lambda}");
        }
        let expected: Vec<Vec<String>> = entry["twists"]
            .as_array()
            .unwrap()
            .iter()
            .map(strings)
            .collect();
        // Over Z/2 the family also has twists such as θ = (1, -1); only the
        // constant ones restrict to twists of H₄ itself.
        let mut found: Vec<Vec<String>> = find_twists(h, phi, &r, 1)
            .unwrap()
            .iter()
            .filter(|t| t.iter().all(|c| c == &t[0]))
            .map(|t| text(&t[0]))
            .collect();
        found.sort();
        assert_eq!(found, expected, "twists at λ = {lambda}");
    }
}

#[test]
fn sweedler_r_matrix_elements_match_oracle() {
    let h = sweedler(q()).unwrap();
    let phi = Crossing::trivial(&h).unwrap();
    check_rmatrices(&h, &phi);
}

#[test]
fn constant_family_r_matrix_elements_match_oracle() {
    let (h, phi) = constant_sweedler_z2(q()).unwrap();
    check_rmatrices(&h, &phi);
}
