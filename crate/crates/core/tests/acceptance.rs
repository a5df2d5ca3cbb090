//! One test per acceptance criterion; `--nocapture` also shows the check counts.

use qwedge::verify::{criterion, Check, Config};
use std::time::Instant;

const TITLES: [&str; 13] = [
    "closed two-point gammas",
    "gamma_n(0) = n",
    "two-point recurrences",
    "omega closed forms",
    "omega = phi * theta",
    "algebra and boson relations",
    "vacuum kernel and divided powers",
    "straightening confluence",
    "crystal limits",
    "characters and root strings",
    "Young wall transport",
    "D2(2) R-matrix and q-KZ",
    "base relations in N",
];

fn run(k: u32) -> Vec<Check> {
    let t = Instant::now();
    let checks = criterion(k, &Config::default()).unwrap_or_else(|e| panic!("criterion {k}: {e}"));
    let bad: Vec<&Check> = checks.iter().filter(|c| !c.ok).collect();
    let status = if bad.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {k:>2} {status}  {} ({} checks, {:.1}s)",
        TITLES[k as usize - 1],
        checks.len(),
        t.elapsed().as_secs_f64()
    );
    for c in &bad {
        println!("    {}: computed {} expected {}", c.name, c.computed, c.expected);
    }
    checks
}

fn check(k: u32) {
    let bad: Vec<String> = run(k).into_iter().filter(|c| !c.ok).map(|c| c.name).collect();
    assert!(bad.is_empty(), "criterion {k} failing: {bad:?}");
}

#[test]
fn c01_gamma_closed_forms() {
    check(1);
}

#[test]
fn c02_gamma_at_zero() {
    check(2);
}

#[test]
fn c03_twopoint_recurrences() {
    check(3);
}

#[test]
fn c04_omega_closed_forms() {
    check(4);
}

#[test]
fn c05_factorization() {
    check(5);
}

#[test]
fn c06_algebra_relations() {
    check(6);
}

#[test]
fn c07_vacuum_kernel_and_divided_powers() {
    check(7);
}

#[test]
fn c08_straightening_confluence() {
    check(8);
}

#[test]
fn c09_crystal_limits() {
    check(9);
}

#[test]
fn c10_characters() {
    check(10);
}

#[test]
fn c11_young_model() {
    check(11);
}

#[test]
fn c12_dtwo_identities() {
    check(12);
}

#[test]
fn c13_relations_in_n() {
    check(13);
}
