//! Acceptance suite: every release criterion at full trial counts, one
//! pass/fail line per criterion.
//!
//! Run with `cargo test -p bornmc --test acceptance -- --nocapture` to see
//! the lines for passing criteria as well.

use bornmc::rng::DEFAULT_SEED;
use bornmc::verify::{self, CriterionResult};

fn report(n: u32, result: &CriterionResult) {
    println!(
        "criterion {n:2} [{}] {} — {}",
        result.id,
        if result.passed { "PASS" } else { "FAIL" },
        result.detail
    );
}

fn assert_criterion(n: u32, result: CriterionResult) {
    report(n, &result);
    assert!(result.passed, "criterion {n} [{}]: {}", result.id, result.detail);
}

#[test]
fn criterion_01_volume_ratio_law() {
    assert_criterion(1, verify::criterion_volume_ratio(DEFAULT_SEED, false));
}

#[test]
fn criterion_02_equal_amplitude_maximizer() {
    assert_criterion(
        2,
        verify::criterion_equal_amplitude_maximizer(DEFAULT_SEED, false),
    );
}

#[test]
fn criterion_03_fluctuation_width_expansion() {
    assert_criterion(3, verify::criterion_fluctuation_width(DEFAULT_SEED, false));
}

#[test]
fn criterion_04_born_partition_argmax() {
    assert_criterion(4, verify::criterion_born_partition());
}

#[test]
fn criterion_05_selectivity_oracle_agreement() {
    assert_criterion(5, verify::criterion_selectivity_oracle(DEFAULT_SEED, false));
}

#[test]
fn criterion_06_two_state_tanh_identity() {
    assert_criterion(6, verify::criterion_tanh_identity());
}

#[test]
fn criterion_07_selectivity_factor_two_bound() {
    assert_criterion(7, verify::criterion_factor_two_bound());
}

#[test]
fn criterion_08_grid_cell_asymptote() {
    assert_criterion(8, verify::criterion_grid_asymptote(DEFAULT_SEED, false));
}

#[test]
fn criterion_09_born_frequency_endtoend() {
    assert_criterion(9, verify::criterion_born_end_to_end(DEFAULT_SEED, false));
}

#[test]
fn criterion_10_verify_reproducibility() {
    assert_criterion(10, verify::criterion_reproducibility(DEFAULT_SEED));
}
