mod common;

use common::CASES;

#[test]
fn nrd_multiplicative() {
    common::nrd_multiplicative(CASES).unwrap();
}

#[test]
fn involution_laws() {
    common::involution_laws(CASES).unwrap();
}

#[test]
fn ideal_norm_squared_is_index() {
    common::ideal_norm_squared_is_index(CASES).unwrap();
}

#[test]
fn hnf_round_trips() {
    common::hnf_round_trips(CASES).unwrap();
}

#[test]
fn hilbert_product_formula() {
    common::hilbert_product_formula(CASES).unwrap();
}

#[test]
fn modpoly_symmetry_and_congruence() {
    common::modpoly_symmetry_and_congruence(CASES).unwrap();
}
