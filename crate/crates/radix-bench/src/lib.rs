//! Benchmark fixtures.

use radix_core::FieldSpec;

/// `(n, a)` pairs covering each local construction.
pub const FIXTURES: [(usize, i64); 6] = [(2, 5), (4, 12), (8, 17), (9, 10), (12, 18), (16, 3)];

/// The fixture fields.
pub fn fixture_specs() -> Vec<FieldSpec> {
    FIXTURES
        .iter()
        .map(|&(n, a)| FieldSpec::new(n, a).expect("fixture is irreducible"))
        .collect()
}
