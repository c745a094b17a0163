mod common;

use susyqm::airy::{linear_spectrum, Parity};

#[test]
fn spectrum_matches_shooting_solver() {
    let table = linear_spectrum(7).unwrap();
    let oracle = common::numerov_spectrum(7);
    for (entry, reference) in table.entries().iter().zip(&oracle) {
        assert!(
            (entry.lambda - reference).abs() <= 1e-6,
            "n = {}: {} vs {}",
            entry.n,
            entry.lambda,
            reference
        );
    }
}

#[test]
fn parity_follows_index() {
    let table = linear_spectrum(7).unwrap();
    for e in table.entries() {
        let expect = if e.n % 2 == 0 { Parity::Even } else { Parity::Odd };
        assert_eq!(e.parity, expect);
    }
    assert_eq!(table.entries()[0].shifted, 0.0);
}
