//! Long-running checks; run with `cargo test --release -- --ignored`.

use fqg_core::reproduce::sekine_nilpotent;

#[test]
#[ignore = "several minutes: algebra of dimension 450"]
fn sekine_fifteen_is_nilpotent() {
    assert!(sekine_nilpotent(15).unwrap());
}
